//! Writes a permutation group's subgroup lattice in the JSON interchange format.
//!
//! `cargo run --example export_lattice -- s4.json`

use transfer_systems::lattice::interchange::to_json;
use transfer_systems::lattice::perm::{affine_f8_generators, permutation_group_lattice, symmetric_group_generators};

fn main() {
    let out = std::env::args().nth(1);
    let s4 = permutation_group_lattice("S4", 4, &symmetric_group_generators(4)).unwrap();
    let f8 = permutation_group_lattice("F8", 8, &affine_f8_generators()).unwrap();
    for l in [&s4, &f8] {
        println!(
            "{}: {} subgroups in {} conjugacy classes, width {}",
            l.name(),
            l.len(),
            l.element_orbits().len(),
            l.meet_irreducible_classes().len()
        );
    }
    match out {
        Some(path) => {
            std::fs::write(&path, to_json(&s4)).unwrap();
            println!("wrote {path}");
        }
        None => println!("{}", &to_json(&s4)[..400]),
    }
}
