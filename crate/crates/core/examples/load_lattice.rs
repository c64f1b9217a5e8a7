//! Reading a lattice from a JSON document and counting its transfer systems.
//!
//! `cargo run --release --example load_lattice -- s4.json`

use transfer_systems::closure::ArrowTables;
use transfer_systems::enumerate::distribution;
use transfer_systems::invariants::width_against_complete;
use transfer_systems::lattice::interchange::{load_lattice, load_lattice_file};

const C_P2: &str = r#"{
    "format_version": 1,
    "group_name": "C4",
    "elements": [
        {"label": "1", "order": 1, "order_factorization": []},
        {"label": "C2", "order": 2, "order_factorization": [[2, 1]]},
        {"label": "C4", "order": 4, "order_factorization": [[2, 2]]}
    ],
    "covers": [[0, 1], [1, 2]]
}"#;

fn main() {
    let lattice = match std::env::args().nth(1) {
        Some(path) => load_lattice_file(path.as_ref()),
        None => load_lattice(C_P2),
    };
    let lattice = match lattice {
        Ok(l) => l,
        Err(e) => {
            eprintln!("{e}");
            std::process::exit(1);
        }
    };
    let tables = ArrowTables::new(lattice);
    let (w, m) = width_against_complete(&tables);
    let strata = distribution(&tables, 0).unwrap();
    println!("{}: width {w}, complete system needs {m} generators", tables.lattice().name());
    println!("{} transfer systems, by basis size {strata:?}", strata.iter().sum::<u64>());
}
