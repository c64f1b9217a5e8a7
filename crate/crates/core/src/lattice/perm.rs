//! Subgroup lattices of small permutation groups.
//!
//! Stands in for a computer algebra export: the group is closed from its
//! generators, every subgroup is reached by adjoining one element at a time
//! to a smaller subgroup, and conjugation by each generator becomes a
//! permutation of the subgroups.

use std::collections::VecDeque;

use rustc_hash::FxHashMap;

use super::{GroupLattice, LatticeError, RawElement, Relation};
use crate::arrowset::ArrowSet;

/// Largest group order accepted.
pub const MAX_GROUP_ORDER: usize = 2048;

struct Group {
    mul: Vec<u16>,
    inv: Vec<u16>,
    order: usize,
}

impl Group {
    fn from_generators(degree: usize, generators: &[Vec<usize>]) -> Result<(Self, Vec<usize>), LatticeError> {
        for (i, g) in generators.iter().enumerate() {
            let mut seen = vec![false; degree];
            if g.len() != degree || g.iter().any(|&p| p >= degree || std::mem::replace(&mut seen[p], true)) {
                return Err(LatticeError::NotAPermutation { index: i });
            }
        }
        let identity: Vec<usize> = (0..degree).collect();
        let compose = |a: &[usize], b: &[usize]| -> Vec<usize> { b.iter().map(|&i| a[i]).collect() };

        let mut elems = vec![identity.clone()];
        let mut index: FxHashMap<Vec<usize>, usize> = FxHashMap::default();
        index.insert(identity, 0);
        let mut i = 0;
        while i < elems.len() {
            for g in generators {
                let p = compose(&elems[i], g);
                if !index.contains_key(&p) {
                    if elems.len() == MAX_GROUP_ORDER {
                        return Err(LatticeError::TooManyElements(MAX_GROUP_ORDER + 1));
                    }
                    index.insert(p.clone(), elems.len());
                    elems.push(p);
                }
            }
            i += 1;
        }

        let order = elems.len();
        let mut mul = vec![0u16; order * order];
        for (a, pa) in elems.iter().enumerate() {
            for (b, pb) in elems.iter().enumerate() {
                mul[a * order + b] = index[&compose(pa, pb)] as u16;
            }
        }
        let mut inv = vec![0u16; order];
        for a in 0..order {
            inv[a] = (0..order).find(|&b| mul[a * order + b] == 0).expect("group") as u16;
        }
        let gens = generators.iter().map(|g| index[g]).collect();
        Ok((Group { mul, inv, order }, gens))
    }

    fn mul(&self, a: usize, b: usize) -> usize {
        self.mul[a * self.order + b] as usize
    }

    /// The subgroup generated by `gens`.
    fn closure(&self, gens: &[usize]) -> ArrowSet {
        let mut set = ArrowSet::empty(self.order);
        set.insert(0);
        let mut queue = VecDeque::from([0usize]);
        while let Some(x) = queue.pop_front() {
            for &g in gens {
                let y = self.mul(x, g);
                if set.insert(y) {
                    queue.push_back(y);
                }
            }
        }
        set
    }

    fn conjugate(&self, h: &ArrowSet, g: usize) -> ArrowSet {
        let gi = self.inv[g] as usize;
        ArrowSet::from_ids(self.order, h.iter().map(|x| self.mul(self.mul(g, x), gi)))
    }
}

fn factorize(mut n: u64) -> Vec<(u64, u32)> {
    let mut out = Vec::new();
    let mut p = 2;
    while p * p <= n {
        let mut e = 0;
        while n.is_multiple_of(p) {
            n /= p;
            e += 1;
        }
        if e > 0 {
            out.push((p, e));
        }
        p += 1;
    }
    if n > 1 {
        out.push((n, 1));
    }
    out
}

/// Subgroup lattice of the permutation group on `0..degree` generated by `generators`
/// (each given as its list of images).
///
/// The trivial subgroup is labelled `1`, the whole group `name`, and every
/// other subgroup `o<order>_<k>` with `k` counting subgroups of that order.
pub fn permutation_group_lattice(
    name: &str,
    degree: usize,
    generators: &[Vec<usize>],
) -> Result<GroupLattice, LatticeError> {
    let (group, gens) = Group::from_generators(degree, generators)?;

    let mut subgroups: Vec<(ArrowSet, Vec<usize>)> = vec![(group.closure(&[]), vec![])];
    let mut seen: FxHashMap<ArrowSet, usize> = FxHashMap::default();
    seen.insert(subgroups[0].0.clone(), 0);
    let mut i = 0;
    while i < subgroups.len() {
        let (h, hgens) = subgroups[i].clone();
        for g in 0..group.order {
            if h.contains(g) {
                continue;
            }
            let mut kgens = hgens.clone();
            kgens.push(g);
            let k = group.closure(&kgens);
            if !seen.contains_key(&k) {
                if seen.len() == super::MAX_ELEMENTS {
                    return Err(LatticeError::TooManyElements(super::MAX_ELEMENTS + 1));
                }
                seen.insert(k.clone(), subgroups.len());
                subgroups.push((k, kgens));
            }
        }
        i += 1;
    }

    let mut order_of: Vec<usize> = (0..subgroups.len()).collect();
    order_of.sort_by(|&a, &b| {
        let (sa, sb) = (&subgroups[a].0, &subgroups[b].0);
        (sa.count(), sa).cmp(&(sb.count(), sb))
    });
    let sets: Vec<ArrowSet> = order_of.iter().map(|&i| subgroups[i].0.clone()).collect();
    let position: FxHashMap<&ArrowSet, usize> = sets.iter().enumerate().map(|(i, s)| (s, i)).collect();

    let mut raw = Vec::with_capacity(sets.len());
    let mut per_order: FxHashMap<usize, usize> = FxHashMap::default();
    for s in &sets {
        let order = s.count();
        let label = if order == 1 {
            "1".to_string()
        } else if order == group.order {
            name.to_string()
        } else {
            let k = per_order.entry(order).or_insert(0);
            *k += 1;
            format!("o{order}_{k}")
        };
        raw.push(RawElement {
            label,
            order_factorization: factorize(order as u64),
        });
    }

    let mut leq = Vec::new();
    for (a, sa) in sets.iter().enumerate() {
        for (b, sb) in sets.iter().enumerate() {
            if a != b && sa.count() < sb.count() && sa.is_subset(sb) {
                leq.push((a, b));
            }
        }
    }
    let conj = gens
        .iter()
        .map(|&g| sets.iter().map(|s| position[&group.conjugate(s, g)]).collect())
        .collect();
    GroupLattice::from_parts(name, raw, Relation::LeqPairs(leq), conj)
}

/// `(0 1)` and `(0 1 ... n-1)`.
pub fn symmetric_group_generators(n: usize) -> Vec<Vec<usize>> {
    let mut swap: Vec<usize> = (0..n).collect();
    if n >= 2 {
        swap.swap(0, 1);
    }
    let cycle = (0..n).map(|i| (i + 1) % n).collect();
    vec![swap, cycle]
}

/// The affine group of the field with eight elements, acting on its points:
/// `x -> x + 1` and `x -> a x` with `a^3 = a + 1`.
pub fn affine_f8_generators() -> Vec<Vec<usize>> {
    let times_a = |x: usize| {
        let y = x << 1;
        if y & 0b1000 != 0 {
            (y ^ 0b1011) & 0b111
        } else {
            y
        }
    };
    vec![(0..8).map(|x| x ^ 1).collect(), (0..8).map(times_a).collect()]
}
