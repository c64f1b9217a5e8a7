//! Minimal bases of a transfer system: all of them have the same size and the
//! same number of arrows starting at each rank.

use transfer_systems::basis::{all_minimal_bases, level_profile, minimal_basis, width};
use transfer_systems::closure::ArrowTables;
use transfer_systems::lattice::build_chain_product;

fn main() {
    let tables = ArrowTables::new(build_chain_product(&[2, 2], None).unwrap());
    let l = tables.lattice();
    let complete = tables.complete();
    let b = minimal_basis(&tables, &complete);
    println!("{}: complete system has {} arrows", l.name(), complete.len());
    println!("  basis via {:?}, size {} (width {})", b.path, b.len(), width(l));

    let all = all_minimal_bases(&tables, &complete, 10_000).expect("small enough to list");
    println!("  {} minimal bases", all.len());
    for basis in all.iter().take(5) {
        let arrows = tables.arrows_of(basis);
        let labels: Vec<String> = arrows
            .iter()
            .map(|a| format!("{}->{}", l.element(a.source).label, l.element(a.target).label))
            .collect();
        println!("    {:?} {}", level_profile(l, &arrows), labels.join(" "));
    }
}
