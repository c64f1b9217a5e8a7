//! Partial rainbows on the grid lattices `[n] x [m]` of `C_{p^n q^m}`.
//!
//! An interval `(a, x; b, y)` runs from `p^a q^x` up to `p^b q^y`; its
//! midpoint is `(a + x + b + y) / 2`. `R_M` collects every interval with
//! midpoint `M` and projects onto a rainbow of rank arcs.

use std::collections::BTreeSet;
use std::sync::Arc as Shared;

use super::{Arc, Rainbow, RainbowError};
use crate::lattice::{build_chain_product, monomial_label, Arrow, GroupLattice};

/// Arrows on a lattice, together with the lattice.
#[derive(Debug, Clone)]
pub struct GeneratingSet {
    pub lattice: Shared<GroupLattice>,
    pub arrows: Vec<Arrow>,
}

impl GeneratingSet {
    pub fn len(&self) -> usize {
        self.arrows.len()
    }

    pub fn is_empty(&self) -> bool {
        self.arrows.is_empty()
    }
}

/// `(a, x, b, y)` with `a <= b <= n`, `x <= y <= m`, not an identity, and `a + x + b + y = sum`.
pub fn midpoint_family(n: u32, m: u32, sum: u32) -> Vec<(u32, u32, u32, u32)> {
    let mut out = Vec::new();
    for a in 0..=n {
        for x in 0..=m {
            for b in a..=n {
                for y in x..=m {
                    if (a, x) != (b, y) && a + x + b + y == sum {
                        out.push((a, x, b, y));
                    }
                }
            }
        }
    }
    out
}

fn binom(n: u32, k: u32) -> u64 {
    super::numbers::binomial(n, k).try_into().expect("small binomial")
}

fn floor_ceil_half(v: u32) -> u64 {
    u64::from(v / 2) * u64::from(v.div_ceil(2))
}

/// `SR(n, m)` from the closed forms.
pub fn sr_closed_form(n: u32, m: u32) -> u64 {
    let (n, m) = (n.max(m), n.min(m));
    if (n + m) % 2 == 1 {
        binom(m + 3, 3) + u64::from((n - m - 1) / 2) * binom(m + 2, 2)
    } else {
        binom(m + 3, 3) - floor_ceil_half(m + 2) + u64::from((n - m) / 2) * binom(m + 2, 2)
    }
}

/// `DR(n, m)` from the closed form; needs `n + m` even.
pub fn dr_closed_form(n: u32, m: u32) -> u64 {
    let (n, m) = (n.max(m), n.min(m));
    binom(m + 2, 3) + floor_ceil_half(m) + u64::from((n - m) / 2) * binom(m + 2, 2)
}

fn sr_sum(n: u32, m: u32) -> u32 {
    if (n + m) % 2 == 1 {
        n + m
    } else {
        n + m - 1
    }
}

/// Size of a simple maximal partial rainbow on `[n] x [m]`, checked against the midpoint family.
pub fn sr_number(n: u32, m: u32) -> Result<u64, RainbowError> {
    if n < 1 || m < 1 {
        return Err(RainbowError::Domain(format!("SR needs n, m >= 1, got ({n}, {m})")));
    }
    let counted = midpoint_family(n, m, sr_sum(n, m)).len() as u64;
    let closed = sr_closed_form(n, m);
    if counted != closed {
        return Err(RainbowError::FormulaMismatch { n, m, closed, counted });
    }
    Ok(closed)
}

fn check_dr_domain(n: u32, m: u32) -> Result<(), RainbowError> {
    if n < 2 || m < 2 || (n + m) % 2 == 1 {
        return Err(RainbowError::Domain(format!("DR needs n, m >= 2 and n + m even, got ({n}, {m})")));
    }
    Ok(())
}

/// Size of the double maximal partial rainbow on `[n] x [m]`, checked against the midpoint family.
pub fn dr_number(n: u32, m: u32) -> Result<u64, RainbowError> {
    check_dr_domain(n, m)?;
    let counted = midpoint_family(n, m, n + m).len() as u64;
    let closed = dr_closed_form(n, m);
    if counted != closed {
        return Err(RainbowError::FormulaMismatch { n, m, closed, counted });
    }
    Ok(closed)
}

fn grid(n: u32, m: u32) -> Result<Shared<GroupLattice>, RainbowError> {
    build_chain_product(&[n, m], None)
        .map(Shared::new)
        .map_err(|e| RainbowError::Domain(e.to_string()))
}

fn point(l: &GroupLattice, a: u32, x: u32) -> usize {
    l.find(&monomial_label(&[a, x])).expect("grid point")
}

fn interval(l: &GroupLattice, (a, x, b, y): (u32, u32, u32, u32)) -> Arrow {
    Arrow::new(point(l, a, x), point(l, b, y))
}

/// `R_M` with `2M = sum`, as arrows on `[n] x [m]`.
pub fn midpoint_rainbow(n: u32, m: u32, sum: u32) -> Result<GeneratingSet, RainbowError> {
    let lattice = grid(n, m)?;
    let mut arrows: Vec<Arrow> = midpoint_family(n, m, sum)
        .into_iter()
        .map(|t| interval(&lattice, t))
        .collect();
    arrows.sort();
    Ok(GeneratingSet { lattice, arrows })
}

/// The partial rainbow on `[n] x [1]` of size `cpnq_complexity(n)`: the preimage of
/// the rank arcs `(i, n+1-i)` for `n` even, or `(i, n+2-i)` from `i = 1` for `n` odd.
pub fn cpnq_witness_rainbow(n: u32) -> Result<GeneratingSet, RainbowError> {
    let lattice = grid(n, 1)?;
    let arcs: BTreeSet<(u32, u32)> = if n.is_multiple_of(2) {
        (0..=n / 2).map(|i| (i, n + 1 - i)).collect()
    } else {
        (1..=n.div_ceil(2)).map(|i| (i, n + 2 - i)).collect()
    };
    let mut arrows: Vec<Arrow> = lattice
        .nontrivial_intervals()
        .iter()
        .copied()
        .filter(|a| arcs.contains(&(lattice.rank(a.source), lattice.rank(a.target))))
        .collect();
    arrows.sort();
    Ok(GeneratingSet { lattice, arrows })
}

/// Whether the rank arcs of `arrows` form a rainbow and no two arrows are conjugate.
pub fn is_partial_rainbow(lattice: &GroupLattice, arrows: &[Arrow]) -> bool {
    let mut arcs = BTreeSet::new();
    for a in arrows {
        if a.source >= lattice.len() || a.target >= lattice.len() || lattice.arrow_id(a.source, a.target).is_none() {
            return false;
        }
        arcs.insert(Arc::new(lattice.rank(a.source), lattice.rank(a.target)));
    }
    if Rainbow::new(lattice.rank(lattice.top()), arcs.into_iter().collect()).is_err() {
        return false;
    }
    let chosen: BTreeSet<Arrow> = arrows.iter().copied().collect();
    chosen
        .iter()
        .all(|&a| lattice.arrow_orbit(a).iter().all(|b| *b == a || !chosen.contains(b)))
}

/// `S ∪ N` for `n >= m >= 2`, `n + m` even: the double rainbow with the edges through
/// `A = ((n-m)/2, m)` and `B = ((n+m)/2, 0)` swapped for the length-one edges at `A` and `B`.
pub fn double_rainbow_augmented(n: u32, m: u32) -> Result<GeneratingSet, RainbowError> {
    if m > n {
        return Err(RainbowError::Domain(format!("augmentation needs n >= m, got ({n}, {m})")));
    }
    check_dr_domain(n, m)?;
    let lattice = grid(n, m)?;
    let marks = [point(&lattice, (n - m) / 2, m), point(&lattice, (n + m) / 2, 0)];

    let mut edges = BTreeSet::new();
    for &p in &marks {
        for &q in lattice.lower_covers(p) {
            edges.insert(Arrow::new(q, p));
        }
        for &q in lattice.upper_covers(p) {
            edges.insert(Arrow::new(p, q));
        }
    }
    let through: BTreeSet<Arrow> = edges
        .iter()
        .flat_map(|e| edges.iter().filter(move |f| e.target == f.source).map(move |f| Arrow::new(e.source, f.target)))
        .collect();

    let mut arrows: Vec<Arrow> = midpoint_family(n, m, n + m)
        .into_iter()
        .map(|t| interval(&lattice, t))
        .filter(|a| !through.contains(a))
        .chain(edges)
        .collect();
    arrows.sort();
    Ok(GeneratingSet { lattice, arrows })
}

/// The conjectured complexity of `C_{p^n q^m}`, valid as a lower bound:
/// `DR + 2` when the smaller side is 2 and the larger even, otherwise `SR`.
pub fn conjectured_cpnqm_complexity(n: u32, m: u32) -> Result<u64, RainbowError> {
    let (n, m) = (n.max(m), n.min(m));
    if m < 2 {
        return Err(RainbowError::Domain(format!("needs both sides >= 2, got ({n}, {m})")));
    }
    if m == 2 && n % 2 == 0 {
        Ok(dr_number(n, m)? + 2)
    } else {
        sr_number(n, m)
    }
}
