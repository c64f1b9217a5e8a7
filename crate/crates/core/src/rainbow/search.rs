//! Exhaustive search for the largest rainbows.

use num_bigint::BigUint;
use serde::Serialize;

use super::{Arc, Rainbow, RainbowError};

/// Largest `n` accepted by [`brute_force_max_rainbow`]; there are `2^n` rainbows.
pub const BRUTE_FORCE_MAX_N: u32 = 14;

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct MaxRainbows {
    #[serde(serialize_with = "super::numbers::serialize_decimal")]
    pub size: BigUint,
    /// Every rainbow of maximal size, sorted.
    pub argmax: Vec<Rainbow>,
}

/// Every rainbow on `{0, ..., n}`, outermost arc chosen first.
pub fn all_rainbows(n: u32) -> Vec<Rainbow> {
    fn inside(lo: u32, hi: u32, prefix: &mut Vec<Arc>, out: &mut Vec<Vec<Arc>>) {
        out.push(prefix.clone());
        for x in lo..=hi {
            for y in x + 1..=hi {
                prefix.push(Arc::new(x, y));
                inside(x + 1, y - 1, prefix, out);
                prefix.pop();
            }
        }
    }
    let mut out = Vec::new();
    inside(0, n, &mut Vec::new(), &mut out);
    out.into_iter()
        .map(|arcs| Rainbow::new(n, arcs).expect("nested by construction"))
        .collect()
}

fn pascal(n: u32) -> Vec<Vec<u128>> {
    let mut rows: Vec<Vec<u128>> = vec![vec![1]];
    for i in 1..=n as usize {
        let prev = &rows[i - 1];
        let mut row = vec![1u128; i + 1];
        for k in 1..i {
            row[k] = prev[k - 1] + prev[k];
        }
        rows.push(row);
    }
    rows
}

/// Exhaustive maximum of the rainbow size over all rainbows on `{0, ..., n}`.
pub fn brute_force_max_rainbow(n: u32) -> Result<MaxRainbows, RainbowError> {
    if n > BRUTE_FORCE_MAX_N {
        return Err(RainbowError::GuardExceeded {
            n,
            max: BRUTE_FORCE_MAX_N,
        });
    }
    let c = pascal(n);
    let weight = |a: &Arc| c[n as usize][a.x as usize] * c[(n - a.x) as usize][(a.y - a.x) as usize];
    let mut best = 0u128;
    let mut argmax = Vec::new();
    for r in all_rainbows(n) {
        let s: u128 = r.arcs().iter().map(weight).sum();
        if s > best {
            best = s;
            argmax.clear();
        }
        if s == best {
            argmax.push(r);
        }
    }
    argmax.sort();
    Ok(MaxRainbows {
        size: BigUint::from(best),
        argmax,
    })
}

/// The maximizers predicted in closed form: the complete rainbow for odd `n`,
/// `R[0]` and `R[n]` for `n` in `{2, 4, 6}`, and `R[n/2]` for even `n >= 8`.
pub fn canonical_max_rainbows(n: u32) -> Vec<Rainbow> {
    let mut out = match n {
        _ if n % 2 == 1 => vec![Rainbow::complete(n)],
        0 => vec![Rainbow::empty(0)],
        2 | 4 | 6 => vec![
            Rainbow::excluding(n, 0).expect("even n"),
            Rainbow::excluding(n, n).expect("even n"),
        ],
        _ => vec![Rainbow::excluding(n, n / 2).expect("even n")],
    };
    out.sort();
    out
}
