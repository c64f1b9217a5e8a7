//! Brute-force references built only from `leq` and the conjugation generators.

#![allow(dead_code)]

pub mod props;

use std::collections::{BTreeMap, HashMap};

use transfer_systems::closure::{ArrowTables, TransferSystem};
use transfer_systems::lattice::perm::{permutation_group_lattice, symmetric_group_generators};
use transfer_systems::lattice::{build_chain_product, build_subspace_lattice, Arrow, GroupLattice};

pub fn chain(e: &[u32]) -> GroupLattice {
    build_chain_product(e, None).unwrap()
}

/// Lattices with at most eight elements and at most 26 arrows.
pub fn small_lattices() -> Vec<GroupLattice> {
    vec![
        chain(&[0]),
        chain(&[1]),
        chain(&[2]),
        chain(&[3]),
        chain(&[4]),
        chain(&[1, 1]),
        chain(&[1, 2]),
        chain(&[1, 1, 1]),
        build_subspace_lattice(2, 2).unwrap(),
        build_subspace_lattice(3, 2).unwrap(),
        permutation_group_lattice("S3", 3, &symmetric_group_generators(3)).unwrap(),
    ]
}

/// A transfer system as a bitmask over [`Naive::pairs`].
pub type Mask = u64;

pub struct Naive {
    pub pairs: Vec<(usize, usize)>,
    index: HashMap<(usize, usize), usize>,
    ranks: Vec<u32>,
    conj: Vec<Vec<usize>>,
    restr: Vec<Vec<usize>>,
    comp: Vec<Vec<(usize, usize)>>,
}

impl Naive {
    pub fn new(l: &GroupLattice) -> Self {
        let n = l.len();
        let leq = |a: usize, b: usize| l.leq(a, b);
        let meet = |a: usize, b: usize| {
            let lower: Vec<usize> = (0..n).filter(|&m| leq(m, a) && leq(m, b)).collect();
            *lower.iter().find(|&&m| lower.iter().all(|&o| leq(o, m))).unwrap()
        };
        let mut pairs = Vec::new();
        for a in 0..n {
            for b in 0..n {
                if a != b && leq(a, b) {
                    pairs.push((a, b));
                }
            }
        }
        assert!(pairs.len() <= 64, "naive oracle takes at most 64 arrows");
        let index: HashMap<(usize, usize), usize> = pairs.iter().enumerate().map(|(i, &p)| (p, i)).collect();
        let conj = pairs
            .iter()
            .map(|&(a, b)| l.conj_generators().iter().map(|g| index[&(g[a], g[b])]).collect())
            .collect();
        let restr = pairs
            .iter()
            .map(|&(a, b)| {
                (0..n)
                    .filter(|&c| leq(c, b))
                    .filter_map(|c| {
                        let k = meet(a, c);
                        (k != c).then(|| index[&(k, c)])
                    })
                    .collect()
            })
            .collect();
        let comp = pairs
            .iter()
            .map(|&(a, b)| {
                pairs
                    .iter()
                    .enumerate()
                    .filter(|(_, &(c, _))| c == b)
                    .map(|(j, &(_, d))| (j, index[&(a, d)]))
                    .collect()
            })
            .collect();
        let ranks = (0..n).map(|i| l.rank(i)).collect();
        Naive {
            pairs,
            index,
            ranks,
            conj,
            restr,
            comp,
        }
    }

    fn implied(&self, mask: Mask, i: usize) -> Mask {
        let mut out = 0;
        for &j in self.conj[i].iter().chain(&self.restr[i]) {
            out |= 1 << j;
        }
        for &(j, k) in &self.comp[i] {
            if mask >> j & 1 == 1 {
                out |= 1 << k;
            }
        }
        out
    }

    pub fn is_closed(&self, mask: Mask) -> bool {
        bits(mask).all(|i| self.implied(mask, i) & !mask == 0)
    }

    pub fn close(&self, mut mask: Mask) -> Mask {
        loop {
            let next = bits(mask).fold(mask, |acc, i| acc | self.implied(mask, i));
            if next == mask {
                return mask;
            }
            mask = next;
        }
    }

    pub fn all_systems(&self) -> Vec<Mask> {
        let k = self.pairs.len();
        assert!(k <= 26, "2^{k} subsets is too many");
        (0..1u64 << k).filter(|&m| self.is_closed(m)).collect()
    }

    /// Every inclusion-minimal generating subset of `t`.
    pub fn minimal_bases(&self, t: Mask) -> Vec<Mask> {
        let mut out = Vec::new();
        let mut s = t;
        loop {
            if self.close(s) == t && bits(s).all(|i| self.close(s & !(1 << i)) != t) {
                out.push(s);
            }
            if s == 0 {
                break;
            }
            s = (s - 1) & t;
        }
        out
    }

    pub fn profile(&self, mask: Mask) -> BTreeMap<u32, usize> {
        let mut p = BTreeMap::new();
        for i in bits(mask) {
            *p.entry(self.ranks[self.pairs[i].0]).or_insert(0) += 1;
        }
        p
    }

    pub fn mask_of(&self, arrows: &[Arrow]) -> Mask {
        arrows.iter().fold(0, |m, a| m | 1 << self.index[&(a.source, a.target)])
    }

    pub fn arrows_of(&self, mask: Mask) -> Vec<Arrow> {
        bits(mask).map(|i| Arrow::new(self.pairs[i].0, self.pairs[i].1)).collect()
    }

    pub fn system_mask(&self, tables: &ArrowTables, t: &TransferSystem) -> Mask {
        self.mask_of(&tables.arrows_of(t.arrows()))
    }
}

pub fn bits(mask: Mask) -> impl Iterator<Item = usize> {
    (0..64).filter(move |i| mask >> i & 1 == 1)
}

pub fn catalan(n: u64) -> u64 {
    (0..n).fold(1, |c, i| c * 2 * (2 * i + 1) / (i + 2))
}
