//! Largest rainbows on `{0, ..., n}`: closed form against exhaustive search.

use transfer_systems::rainbow::{
    brute_force_max_rainbow, canonical_max_rainbows, square_free_complexity_lower, BRUTE_FORCE_MAX_N,
};

fn main() {
    for n in 1..=20 {
        let size = square_free_complexity_lower(n);
        let shape: Vec<String> = canonical_max_rainbows(n).iter().map(|r| r.to_string()).collect();
        print!("{n:>3} {size:>14}  {}", shape.join(" | "));
        if n <= BRUTE_FORCE_MAX_N {
            let m = brute_force_max_rainbow(n).unwrap();
            let agrees = m.size == size && m.argmax == canonical_max_rainbows(n);
            print!("  search {}", if agrees { "agrees" } else { "DISAGREES" });
        }
        println!();
    }
}
