//! Every transfer system of a cyclic group, layer by layer, written as CSV.
//!
//! `cargo run --release --example enumerate_cyclic -- 2 1`

use transfer_systems::closure::ArrowTables;
use transfer_systems::enumerate::{enumerate, write_distribution_csv, EnumerateOptions};
use transfer_systems::lattice::build_chain_product;

fn main() {
    let exps: Vec<u32> = std::env::args().skip(1).filter_map(|s| s.parse().ok()).collect();
    let exps = if exps.is_empty() { vec![1, 1] } else { exps };
    let lattice = build_chain_product(&exps, None).expect("valid exponents");
    println!("{}: {} subgroups, {} arrows", lattice.name(), lattice.len(), lattice.arrow_count());

    let tables = ArrowTables::new(lattice);
    let r = enumerate(&tables, &EnumerateOptions::stored(0)).expect("fits in memory");
    println!("{} transfer systems", r.total_count);
    write_distribution_csv(&r.stratum_counts, std::io::stdout()).unwrap();

    for (t, layer) in r.systems.unwrap().iter().take(12) {
        let l = tables.lattice();
        let arrows: Vec<String> = tables
            .arrows_of(t.arrows())
            .iter()
            .map(|a| format!("{}->{}", l.element(a.source).label, l.element(a.target).label))
            .collect();
        println!("  layer {layer}: {{{}}}", arrows.join(", "));
    }
}
