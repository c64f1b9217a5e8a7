//! Minimal generating sets, width and level profiles.

use std::collections::BTreeMap;

use thiserror::Error;

use crate::arrowset::ArrowSet;
use crate::closure::{ArrowTables, TransferSystem};
use crate::lattice::{Arrow, GroupLattice};

pub const DEFAULT_BASIS_CAP: usize = 20;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum BasisError {
    #[error("arrow set is not a transfer system")]
    NotClosed,
    #[error("transfer system has {arrows} arrows, brute-force cap is {cap}")]
    CapExceeded { arrows: usize, cap: usize },
}

/// Which route produced a minimal basis.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum BasisPath {
    /// The three reverse-Rubin reductions gave a minimal generating set directly.
    ReverseRubin,
    /// Reverse Rubin failed verification; greedy elimination was used instead.
    GreedyFallback,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MinimalBasis {
    pub arrows: ArrowSet,
    pub path: BasisPath,
}

impl MinimalBasis {
    pub fn len(&self) -> usize {
        self.arrows.count()
    }

    pub fn is_empty(&self) -> bool {
        self.arrows.is_empty()
    }
}

/// Arrows of `t` that are composites `(K, M), (M, H)` of two other arrows of `t`.
fn composites(tables: &ArrowTables, t: &ArrowSet) -> ArrowSet {
    let l = tables.lattice();
    let mut out = tables.empty_set();
    for id in t.iter() {
        let a = l.arrow(id);
        let is_composite = l.above(a.source).any(|m| {
            m != a.source
                && m != a.target
                && l.leq(m, a.target)
                && t.contains(l.arrow_id(a.source, m).expect("interval"))
                && t.contains(l.arrow_id(m, a.target).expect("interval"))
        });
        if is_composite {
            out.insert(id);
        }
    }
    out
}

/// Runs the reverse-Rubin reductions on a closed set and returns the candidate basis.
pub fn reverse_rubin(tables: &ArrowTables, t: &ArrowSet) -> ArrowSet {
    let l = tables.lattice();

    let mut t1 = t.clone();
    t1.difference_with(&composites(tables, t));

    // drop proper restrictions (K, H) = (H ∧ K', H) of other survivors (K', H')
    let survivors: Vec<Arrow> = tables.arrows_of(&t1);
    let mut t2 = t1.clone();
    for (i, a) in survivors.iter().enumerate() {
        let restricted = survivors.iter().enumerate().any(|(j, b)| {
            i != j && l.leq(a.target, b.target) && a.source == l.meet(a.target, b.source)
        });
        if restricted {
            t2.remove(l.arrow_id(a.source, a.target).expect("interval"));
        }
    }

    // least arrow of each orbit
    let mut t3 = tables.empty_set();
    for id in t2.iter() {
        if tables.orbit(id).all(|o| o >= id || !t2.contains(o)) {
            t3.insert(id);
        }
    }
    t3
}

/// Whether no arrow of `s` lies in the closure of the others.
pub fn is_minimal_generating(tables: &ArrowTables, s: &ArrowSet, t: &ArrowSet) -> bool {
    if tables.close(s).arrows() != t {
        return false;
    }
    s.iter().all(|id| {
        let mut rest = s.clone();
        rest.remove(id);
        !tables.close(&rest).arrows().contains(id)
    })
}

/// Removes arrows one at a time, largest id first, while the closure stays `t`.
fn greedy_eliminate(tables: &ArrowTables, start: &ArrowSet, t: &ArrowSet) -> ArrowSet {
    let mut s = start.clone();
    let ids: Vec<usize> = s.iter().collect();
    for &id in ids.iter().rev() {
        s.remove(id);
        if tables.close(&s).arrows() != t {
            s.insert(id);
        }
    }
    s
}

/// A minimal generating set of the transfer system `t`.
pub fn minimal_basis(tables: &ArrowTables, t: &TransferSystem) -> MinimalBasis {
    let t = t.arrows();
    let candidate = reverse_rubin(tables, t);
    if is_minimal_generating(tables, &candidate, t) {
        return MinimalBasis {
            arrows: candidate,
            path: BasisPath::ReverseRubin,
        };
    }
    let start = if tables.close(&candidate).arrows() == t { &candidate } else { t };
    MinimalBasis {
        arrows: greedy_eliminate(tables, start, t),
        path: BasisPath::GreedyFallback,
    }
}

/// Like [`minimal_basis`], for a raw arrow set that must first be checked for closure.
pub fn minimal_basis_of_set(tables: &ArrowTables, t: &ArrowSet) -> Result<MinimalBasis, BasisError> {
    let system = tables.system(t.clone()).ok_or(BasisError::NotClosed)?;
    Ok(minimal_basis(tables, &system))
}

/// `m(T)`, the size of any minimal generating set.
pub fn basis_size(tables: &ArrowTables, t: &TransferSystem) -> usize {
    minimal_basis(tables, t).len()
}

/// Every inclusion-minimal generating set of `t`, in lexicographic order of arrow ids.
pub fn all_minimal_bases(tables: &ArrowTables, t: &TransferSystem, cap: usize) -> Result<Vec<ArrowSet>, BasisError> {
    let target = t.arrows();
    let arrows: Vec<usize> = target.iter().collect();
    if arrows.len() > cap {
        return Err(BasisError::CapExceeded {
            arrows: arrows.len(),
            cap,
        });
    }
    let mut out = Vec::new();
    let mut chosen = tables.empty_set();
    search(tables, target, &arrows, 0, &mut chosen, &mut out);
    out.sort();
    Ok(out)
}

fn search(
    tables: &ArrowTables,
    target: &ArrowSet,
    arrows: &[usize],
    next: usize,
    chosen: &mut ArrowSet,
    out: &mut Vec<ArrowSet>,
) {
    // a redundant chosen arrow stays redundant in every superset
    for id in chosen.iter() {
        let mut rest = chosen.clone();
        rest.remove(id);
        if tables.close(&rest).arrows().contains(id) {
            return;
        }
    }
    if tables.close(chosen).arrows() == target {
        out.push(chosen.clone());
        return;
    }
    if next == arrows.len() {
        return;
    }
    let mut optimistic = chosen.clone();
    for &id in &arrows[next..] {
        optimistic.insert(id);
    }
    if tables.close(&optimistic).arrows() != target {
        return;
    }
    let id = arrows[next];
    chosen.insert(id);
    search(tables, target, arrows, next + 1, chosen, out);
    chosen.remove(id);
    search(tables, target, arrows, next + 1, chosen, out);
}

/// Number of basis arrows per source rank.
pub fn level_profile(lattice: &GroupLattice, basis: &[Arrow]) -> BTreeMap<u32, usize> {
    let mut profile = BTreeMap::new();
    for a in basis {
        *profile.entry(lattice.rank(a.source)).or_insert(0) += 1;
    }
    profile
}

/// `ɯ(G)`: the number of conjugacy classes of meet-irreducible subgroups.
pub fn width(lattice: &GroupLattice) -> usize {
    lattice.meet_irreducible_classes().len()
}
