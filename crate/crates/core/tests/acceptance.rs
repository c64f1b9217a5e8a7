//! One PASS/FAIL line per acceptance criterion. Runs without the libtest harness.

mod common;

use std::time::Instant;

use num_bigint::BigUint;
use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};
use serde_json::Value;

use common::props::{self, Check};
use common::{catalan, chain, Naive};
use transfer_systems::basis::width;
use transfer_systems::cli::run_cli;
use transfer_systems::closure::ArrowTables;
use transfer_systems::enumerate::count;
use transfer_systems::invariants::{complexity, width_against_complete};
use transfer_systems::rainbow::{
    self, brute_force_max_rainbow, canonical_max_rainbows, normalize_to_composable, square_free_complexity_lower,
    Arc, Rainbow,
};

const SR_TABLE: [[u64; 10]; 10] = [
    [6, 10, 12, 16, 18, 22, 24, 28, 30, 34],
    [10, 14, 20, 24, 30, 34, 40, 44, 50, 54],
    [12, 20, 26, 35, 41, 50, 56, 65, 71, 80],
    [16, 24, 35, 44, 56, 65, 77, 86, 98, 107],
    [18, 30, 41, 56, 68, 84, 96, 112, 124, 140],
    [22, 34, 50, 65, 84, 100, 120, 136, 156, 172],
    [24, 40, 56, 77, 96, 120, 140, 165, 185, 210],
    [28, 44, 65, 86, 112, 136, 165, 190, 220, 245],
    [30, 50, 71, 98, 124, 156, 185, 220, 250, 286],
    [34, 54, 80, 107, 140, 172, 210, 245, 286, 322],
];

/// Rows n = 2..=11, columns m = 2..=11; 0 where n + m is odd.
/// (7, 11) is 168, the same as its transpose (11, 7).
const DR_TABLE: [[u64; 10]; 10] = [
    [5, 0, 11, 0, 17, 0, 23, 0, 29, 0],
    [0, 12, 0, 22, 0, 32, 0, 42, 0, 52],
    [11, 0, 24, 0, 39, 0, 54, 0, 69, 0],
    [0, 22, 0, 41, 0, 62, 0, 83, 0, 104],
    [17, 0, 39, 0, 65, 0, 93, 0, 121, 0],
    [0, 32, 0, 62, 0, 96, 0, 132, 0, 168],
    [23, 0, 54, 0, 93, 0, 136, 0, 181, 0],
    [0, 42, 0, 83, 0, 132, 0, 185, 0, 240],
    [29, 0, 69, 0, 121, 0, 181, 0, 245, 0],
    [0, 52, 0, 104, 0, 168, 0, 240, 0, 316],
];

fn cpq_via_cli() -> Check {
    let mut out = Vec::new();
    let mut err = Vec::new();
    let code = run_cli(["transfer-systems", "--json", "--quiet", "enumerate", "cyclic:p*q"], &mut out, &mut err);
    if code != 0 {
        return Err(format!("exit {code}: {}", String::from_utf8_lossy(&err)));
    }
    let report: Value = serde_json::from_slice(&out).map_err(|e| e.to_string())?;
    let total = &report["results"]["total"];
    if *total != 10 {
        return Err(format!("total {total}"));
    }
    Ok(format!("total 10, strata {}", report["results"]["strata"]))
}

fn chains_are_catalan() -> Check {
    let mut seen = Vec::new();
    for n in 1..=5u32 {
        let l = chain(&[n]);
        let want = catalan(u64::from(n) + 1);
        let got = count(&ArrowTables::new(l.clone()), 0).map_err(|e| e.to_string())?;
        if got != want {
            return Err(format!("[{n}]: {got} systems, Catalan gives {want}"));
        }
        if n <= 4 {
            let oracle = Naive::new(&l).all_systems().len() as u64;
            if oracle != got {
                return Err(format!("[{n}]: oracle counts {oracle}, enumeration {got}"));
            }
        }
        seen.push(got);
    }
    Ok(format!("{seen:?}, oracle agrees for n <= 4"))
}

fn width_complexity_pairs() -> Check {
    let t = ArrowTables::new(chain(&[2, 1]));
    let (w, m) = width_against_complete(&t);
    let c = complexity(&t, 0).map_err(|e| e.to_string())?.value;
    if (w, c) != (3, 4) || m != w {
        return Err(format!("C_p2q: width {w}, m(complete) {m}, complexity {c}"));
    }
    for n in 1..=6u32 {
        let l = chain(&vec![1; n as usize]);
        if width(&l) != n as usize {
            return Err(format!("[1]^{n}: width {}", width(&l)));
        }
        if n <= 5 {
            let (w, m) = width_against_complete(&ArrowTables::new(l));
            if w != m {
                return Err(format!("[1]^{n}: width {w}, m(complete) {m}"));
            }
        }
    }
    Ok("C_p2q (3, 4); [1]^n width n for n <= 6".into())
}

fn cpnq_complexity() -> Check {
    let mut seen = Vec::new();
    for n in 1..=5u32 {
        let c = complexity(&ArrowTables::new(chain(&[n, 1])), 0).map_err(|e| e.to_string())?;
        let want = rainbow::cpnq_complexity(n);
        if c.value as u64 != want {
            return Err(format!("n = {n}: enumerated {}, formula {want}", c.value));
        }
        seen.push((c.value, c.total_count));
    }
    Ok(format!("(complexity, |Tr|) for n = 1..5: {seen:?}"))
}

fn realizer_counts() -> Check {
    let mut seen = Vec::new();
    for (e, want_c, want_r) in [([2, 2], 7, 1), ([1, 1], 2, 4), ([1, 3], 5, 14)] {
        let c = complexity(&ArrowTables::new(chain(&e)), 0).map_err(|e| e.to_string())?;
        if (c.value, c.realizers.len()) != (want_c, want_r) {
            return Err(format!("{e:?}: complexity {}, {} realizers", c.value, c.realizers.len()));
        }
        seen.push(format!("{e:?} -> {} x{}", c.value, c.realizers.len()));
    }
    Ok(seen.join(", "))
}

fn rainbow_suite() -> Check {
    for n in 0..=12 {
        let brute = brute_force_max_rainbow(n).map_err(|e| e.to_string())?;
        let formula = square_free_complexity_lower(n);
        if brute.size != formula {
            return Err(format!("n = {n}: search {}, formula {formula}", brute.size));
        }
        if brute.argmax != canonical_max_rainbows(n) {
            return Err(format!("n = {n}: {} maximizers differ from the closed form", brute.argmax.len()));
        }
    }
    let small: Vec<BigUint> = (2..=6).map(square_free_complexity_lower).collect();
    let want: Vec<BigUint> = [2u32, 7, 16, 51, 126].into_iter().map(BigUint::from).collect();
    if small != want {
        return Err(format!("n = 2..6 gives {small:?}"));
    }
    Ok("n <= 12; 2, 7, 16, 51, 126 for n = 2..6".into())
}

/// A uniform rainbow with `k` arcs: `2k` distinct points, paired outside in.
fn random_rainbow(rng: &mut StdRng, n: u32, k: usize) -> Rainbow {
    let points = rand::seq::index::sample(rng, n as usize + 1, 2 * k).into_vec();
    let mut points: Vec<u32> = points.into_iter().map(|p| p as u32).collect();
    points.sort_unstable();
    let arcs = (0..k).map(|i| Arc::new(points[i], points[2 * k - 1 - i])).collect();
    Rainbow::new(n, arcs).expect("nested")
}

fn normalization() -> Check {
    let mut rng = StdRng::seed_from_u64(0x7261_696e);
    let mut most = 0;
    let mut runs = 0;
    for n in 1..=12u32 {
        let limit = n.div_ceil(2) as usize;
        for _ in 0..10_000 {
            let k = rng.gen_range(0..limit);
            let r = random_rainbow(&mut rng, n, k);
            let out = normalize_to_composable(&r).map_err(|e| format!("{r}: {e}"))?;
            if out.ops_used.len() > 4 {
                return Err(format!("{r}: {} operations", out.ops_used.len()));
            }
            let mut prev = r.size();
            for step in &out.ops_used {
                if step.result.size() < prev {
                    return Err(format!("{r}: {} shrank the rainbow", step.op.name()));
                }
                prev = step.result.size();
            }
            if !out.result.is_composable() {
                return Err(format!("{r}: ended at {}", out.result));
            }
            most = most.max(out.ops_used.len());
            runs += 1;
        }
    }
    Ok(format!("{runs} rainbows, at most {most} operations"))
}

fn sr_dr_tables() -> Check {
    for n in 1..=11u32 {
        for m in 1..=n {
            let sr = rainbow::sr_number(n, m).map_err(|e| e.to_string())?;
            if m == 1 && sr != rainbow::cpnq_complexity(n) {
                return Err(format!("SR({n}, 1) = {sr}, C_p^nq complexity {}", rainbow::cpnq_complexity(n)));
            }
            if (n + m) % 2 == 0 {
                let counted = rainbow::midpoint_family(n, m, n + m).len() as u64;
                if rainbow::dr_closed_form(n, m) != counted {
                    return Err(format!("DR({n}, {m}): closed form {}, counted {counted}", rainbow::dr_closed_form(n, m)));
                }
            }
        }
    }
    for n in 2..=11u32 {
        for m in 2..=11u32 {
            let (i, j) = ((n - 2) as usize, (m - 2) as usize);
            let sr = rainbow::sr_number(n, m).map_err(|e| e.to_string())?;
            if sr != SR_TABLE[i][j] {
                return Err(format!("SR({n}, {m}) = {sr}, table {}", SR_TABLE[i][j]));
            }
            if (n + m) % 2 == 0 {
                let dr = rainbow::dr_number(n, m).map_err(|e| e.to_string())?;
                if dr != DR_TABLE[i][j] {
                    return Err(format!("DR({n}, {m}) = {dr}, table {}", DR_TABLE[i][j]));
                }
            }
        }
    }
    Ok("both 10 x 10 panels, m = 1 column, midpoint counts agree; DR(7, 11) read as 168".into())
}

fn property_suites() -> Check {
    let parts = [
        ("closure laws", props::closure_laws(300, 1)),
        ("oracle", props::oracle_equivalence(200, 2)),
        ("bases", props::bases_and_strata(16)),
        ("width", props::width_is_complete_basis_size()),
        ("2^c bound", props::complexity_bound()),
    ];
    let mut lines = Vec::new();
    for (name, r) in parts {
        match r {
            Ok(s) => lines.push(format!("{name}: {s}")),
            Err(e) => return Err(format!("{name}: {e}")),
        }
    }
    Ok(lines.join("; "))
}

fn main() {
    let criteria: [(&str, fn() -> Check); 9] = [
        ("cpq_enumerates_to_10_via_cli", cpq_via_cli),
        ("chains_are_catalan_with_oracle", chains_are_catalan),
        ("width_complexity_pairs", width_complexity_pairs),
        ("cpnq_complexity_n_le_5", cpnq_complexity),
        ("realizer_counts", realizer_counts),
        ("rainbow_maxima_n_le_12", rainbow_suite),
        ("normalization_random_n_le_12", normalization),
        ("sr_dr_tables", sr_dr_tables),
        ("property_suites", property_suites),
    ];
    let mut failed = 0;
    for (name, f) in criteria {
        let start = Instant::now();
        let r = f();
        let secs = start.elapsed().as_secs_f64();
        match r {
            Ok(detail) => println!("PASS {name} ({secs:.2}s): {detail}"),
            Err(detail) => {
                failed += 1;
                println!("FAIL {name} ({secs:.2}s): {detail}");
            }
        }
    }
    if failed > 0 {
        std::process::exit(1);
    }
}
