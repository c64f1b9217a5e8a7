//! Closing a set of arrows under conjugation, restriction and composition.

use transfer_systems::closure::ArrowTables;
use transfer_systems::lattice::perm::{permutation_group_lattice, symmetric_group_generators};
use transfer_systems::lattice::{build_chain_product, Arrow, GroupLattice};

fn show(l: &GroupLattice, arrows: &[Arrow]) -> String {
    let parts: Vec<String> = arrows
        .iter()
        .map(|a| format!("{}->{}", l.element(a.source).label, l.element(a.target).label))
        .collect();
    format!("{{{}}}", parts.join(", "))
}

fn close(l: GroupLattice, seed: &[(&str, &str)]) {
    let tables = ArrowTables::new(l);
    let l = tables.lattice();
    let seed: Vec<Arrow> = seed
        .iter()
        .map(|(s, t)| Arrow::new(l.find(s).expect("label"), l.find(t).expect("label")))
        .collect();
    let t = tables.closure(&seed).expect("arrows of this lattice");
    println!("{}: {}", l.name(), show(l, &seed));
    println!("  closes to {} arrows: {}", t.len(), show(l, &tables.arrows_of(t.arrows())));
}

fn main() {
    close(build_chain_product(&[1, 1], None).unwrap(), &[("1", "p*q")]);
    close(build_chain_product(&[2, 1], None).unwrap(), &[("1", "p"), ("p", "p^2*q")]);
    // One arrow out of a non-normal subgroup drags in its conjugates.
    close(
        permutation_group_lattice("S3", 3, &symmetric_group_generators(3)).unwrap(),
        &[("1", "o2_1")],
    );
}
