//! Complexity and number of complexity realizers of C_{p^i q^j}.
//!
//! Run with `cargo run --release --example complexity_table -- 3`.

use std::time::Instant;

use transfer_systems::closure::ArrowTables;
use transfer_systems::invariants::complexity;
use transfer_systems::lattice::build_chain_product;

fn main() {
    let max: u32 = std::env::args().nth(1).and_then(|s| s.parse().ok()).unwrap_or(3);
    println!("{:>3} {:>3} {:>10} {:>10} {:>9} {:>8}", "i", "j", "|Tr(G)|", "c(G)", "realizers", "secs");
    for i in 1..=max {
        for j in i..=max {
            let start = Instant::now();
            let tables = ArrowTables::new(build_chain_product(&[i, j], None).expect("valid exponents"));
            let c = complexity(&tables, 0).expect("enumeration fits in memory");
            println!(
                "{i:>3} {j:>3} {:>10} {:>10} {:>9} {:>8.2}",
                c.total_count,
                c.value,
                c.realizers.len(),
                start.elapsed().as_secs_f64()
            );
            if !c.stratum_mismatches.is_empty() {
                println!("    {} systems found at a layer other than their basis size", c.stratum_mismatches.len());
            }
        }
    }
}
