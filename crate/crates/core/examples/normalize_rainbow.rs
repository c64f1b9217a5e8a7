//! Moving a rainbow with room to spare into a composable position.
//!
//! `cargo run --example normalize_rainbow -- 9 0-8 1-7 3-6 4-5`

use transfer_systems::rainbow::{normalize_to_composable, Rainbow};

fn main() {
    let args: Vec<String> = std::env::args().skip(1).collect();
    let (n, pairs) = match args.split_first() {
        Some((n, rest)) => {
            let pairs: Vec<(u32, u32)> = rest
                .iter()
                .map(|a| {
                    let (x, y) = a.split_once('-').expect("arcs look like x-y");
                    (x.parse().unwrap(), y.parse().unwrap())
                })
                .collect();
            (n.parse().unwrap(), pairs)
        }
        None => (9, vec![(0, 8), (1, 7), (3, 6), (4, 5)]),
    };
    let r = Rainbow::from_pairs(n, &pairs).expect("nested arcs");
    println!("start   {r}  size {}", r.size());
    match normalize_to_composable(&r) {
        Ok(out) => {
            for step in &out.ops_used {
                println!(
                    "{:<22} on arcs {}..{}: {}  size {}",
                    step.op.name(),
                    step.block.start,
                    step.block.end,
                    step.result,
                    step.result.size()
                );
            }
            let free: Vec<String> = out.result.composable_arcs().iter().map(|a| a.to_string()).collect();
            println!("composable by {}", free.join(", "));
        }
        Err(e) => println!("{e}"),
    }
}
