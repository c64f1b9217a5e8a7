//! SR and DR numbers of `[n] x [m]`, with the conjectured complexity of `C_{p^n q^m}`.

use transfer_systems::rainbow::{conjectured_cpnqm_complexity, double_rainbow_augmented, dr_number, sr_number};

fn main() {
    let max = 11;
    println!("SR(n, m)");
    for n in 1..=max {
        let row: Vec<String> = (1..=max).map(|m| format!("{:>4}", sr_number(n, m).unwrap())).collect();
        println!("{n:>3} {}", row.join(""));
    }
    println!("DR(n, m), n + m even");
    for n in 2..=max {
        let row: Vec<String> = (2..=max)
            .map(|m| match dr_number(n, m) {
                Ok(v) => format!("{v:>4}"),
                Err(_) => "   .".to_string(),
            })
            .collect();
        println!("{n:>3} {}", row.join(""));
    }
    for (n, m) in [(2, 2), (4, 2), (6, 2), (3, 3), (5, 3)] {
        let aug = double_rainbow_augmented(n, m).map(|s| s.len().to_string()).unwrap_or_else(|_| "-".into());
        println!(
            "[{n}] x [{m}]: conjectured complexity {} (augmented double rainbow: {aug} arrows)",
            conjectured_cpnqm_complexity(n, m).unwrap()
        );
    }
}
