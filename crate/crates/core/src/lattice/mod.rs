//! Finite subgroup lattices with a conjugation action.
//!
//! A [`GroupLattice`] is immutable once built. Every constructor funnels
//! through [`GroupLattice::from_parts`], which checks the partial order, the
//! existence of all pairwise meets and that each conjugation generator is a
//! lattice automorphism. Elements are re-indexed by `(rank, label)`, so the
//! same lattice always gets the same indices no matter how it was described.

mod build;
pub mod interchange;
pub mod perm;

use std::collections::{BTreeMap, BTreeSet};

use thiserror::Error;

pub use build::{build_chain_product, build_subspace_lattice, gaussian_binomial_u128};
pub(crate) use build::monomial_label;

/// Maximum number of lattice elements.
pub const MAX_ELEMENTS: usize = 1 << 16;
/// Maximum number of nontrivial arrows.
pub const MAX_ARROWS: usize = 1 << 20;

const NO_ARROW: u32 = u32::MAX;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum LatticeError {
    #[error("lattice must have at least one element")]
    Empty,
    #[error("lattice has {0} elements, limit is {MAX_ELEMENTS}")]
    TooManyElements(usize),
    #[error("lattice has {0} nontrivial arrows, limit is {MAX_ARROWS}")]
    TooManyArrows(usize),
    #[error("exponent list is empty")]
    NoExponents,
    #[error("prime {0} is listed more than once")]
    DuplicatePrime(u64),
    #[error("{0} is not a prime")]
    NotPrime(u64),
    #[error("expected {expected} primes, got {got}")]
    PrimeCountMismatch { expected: usize, got: usize },
    #[error("group order overflows 64 bits")]
    OrderOverflow,
    #[error("subspace lattice over F_{p}^{n} is too large ({count} subspaces)")]
    SubspaceGuard { p: u64, n: u32, count: u128 },
    #[error("duplicate label {0:?}")]
    DuplicateLabel(String),
    #[error("element {label:?}: order {order} does not match its factorization")]
    OrderMismatch { label: String, order: u64 },
    #[error("element {label:?}: bad factorization ({reason})")]
    BadFactorization { label: String, reason: String },
    #[error("relation refers to element index {0}, which does not exist")]
    IndexOutOfRange(usize),
    #[error("relation {lower:?} <= {upper:?} is not compatible with subgroup orders")]
    OrderNotMonotone { lower: String, upper: String },
    #[error("no least element")]
    NoBottom,
    #[error("no greatest element")]
    NoTop,
    #[error("elements {a:?} and {b:?} have no unique meet")]
    NotALattice { a: String, b: String },
    #[error("conjugation generator {index} is not a permutation of the elements")]
    NotAPermutation { index: usize },
    #[error("conjugation generator {index} maps {from:?} to {to:?}, which changes {what}")]
    NotAnAutomorphism {
        index: usize,
        from: String,
        to: String,
        what: &'static str,
    },
    #[error("malformed lattice document: {0}")]
    Malformed(String),
    #[error("unsupported format_version {0}")]
    UnsupportedVersion(u32),
}

/// One subgroup (lattice element).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LatticeElement {
    pub index: usize,
    pub label: String,
    /// `(prime, exponent)` pairs, sorted by prime, exponents positive.
    pub order_factorization: Vec<(u64, u32)>,
    /// Sum of the exponents of the order.
    pub rank: u32,
}

impl LatticeElement {
    pub fn order(&self) -> u64 {
        self.order_factorization
            .iter()
            .map(|&(p, e)| p.pow(e))
            .product()
    }
}

/// A nontrivial interval `(source, target)` with `source < target`.
///
/// Ordering is lexicographic by `(source, target)`, which is the canonical
/// arrow order.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Arrow {
    pub source: usize,
    pub target: usize,
}

impl Arrow {
    pub fn new(source: usize, target: usize) -> Self {
        Arrow { source, target }
    }
}

/// How the order relation is given to [`GroupLattice::from_parts`].
#[derive(Debug, Clone)]
pub enum Relation {
    /// Cover pairs `(lower, upper)`; the order is their reflexive-transitive closure.
    Covers(Vec<(usize, usize)>),
    /// Pairs `(a, b)` meaning `a <= b`; closed the same way.
    LeqPairs(Vec<(usize, usize)>),
}

impl Relation {
    fn pairs(&self) -> &[(usize, usize)] {
        match self {
            Relation::Covers(p) | Relation::LeqPairs(p) => p,
        }
    }
}

/// Unvalidated element description.
#[derive(Debug, Clone)]
pub struct RawElement {
    pub label: String,
    pub order_factorization: Vec<(u64, u32)>,
}

#[derive(Clone, PartialEq, Eq)]
struct BitRows {
    width_words: usize,
    data: Vec<u64>,
}

impl BitRows {
    fn new(rows: usize, cols: usize) -> Self {
        let width_words = cols.div_ceil(64);
        BitRows {
            width_words,
            data: vec![0; rows * width_words],
        }
    }
    fn row(&self, r: usize) -> &[u64] {
        &self.data[r * self.width_words..(r + 1) * self.width_words]
    }
    fn row_mut(&mut self, r: usize) -> &mut [u64] {
        &mut self.data[r * self.width_words..(r + 1) * self.width_words]
    }
    fn get(&self, r: usize, c: usize) -> bool {
        self.data[r * self.width_words + c / 64] >> (c % 64) & 1 == 1
    }
    fn set(&mut self, r: usize, c: usize) {
        self.data[r * self.width_words + c / 64] |= 1 << (c % 64);
    }
    fn ones(&self, r: usize) -> impl Iterator<Item = usize> + '_ {
        self.row(r).iter().enumerate().flat_map(|(wi, &w)| {
            let mut w = w;
            std::iter::from_fn(move || {
                if w == 0 {
                    None
                } else {
                    let b = w.trailing_zeros() as usize;
                    w &= w - 1;
                    Some(wi * 64 + b)
                }
            })
        })
    }
}

/// The subgroup lattice of a finite group, with its conjugation action.
#[derive(Clone, PartialEq, Eq)]
pub struct GroupLattice {
    name: String,
    elements: Vec<LatticeElement>,
    /// `up.get(a, b)` iff `a <= b`.
    up: BitRows,
    /// `down.get(b, a)` iff `a <= b`.
    down: BitRows,
    upper_covers: Vec<Vec<usize>>,
    lower_covers: Vec<Vec<usize>>,
    conj_generators: Vec<Vec<usize>>,
    meet: Vec<u32>,
    bottom: usize,
    top: usize,
    arrows: Vec<Arrow>,
    arrow_index: Vec<u32>,
}

impl std::fmt::Debug for GroupLattice {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("GroupLattice")
            .field("name", &self.name)
            .field("elements", &self.elements.len())
            .field("arrows", &self.arrows.len())
            .field("conj_generators", &self.conj_generators.len())
            .finish()
    }
}

fn is_prime(p: u64) -> bool {
    if p < 2 {
        return false;
    }
    let mut d = 2u64;
    while d.saturating_mul(d) <= p {
        if p.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

fn normalize_factorization(label: &str, f: &[(u64, u32)]) -> Result<Vec<(u64, u32)>, LatticeError> {
    let mut out: BTreeMap<u64, u32> = BTreeMap::new();
    for &(p, e) in f {
        if !is_prime(p) {
            return Err(LatticeError::BadFactorization {
                label: label.to_string(),
                reason: format!("{p} is not prime"),
            });
        }
        if e == 0 {
            continue;
        }
        if out.insert(p, e).is_some() {
            return Err(LatticeError::BadFactorization {
                label: label.to_string(),
                reason: format!("prime {p} repeated"),
            });
        }
    }
    let v: Vec<_> = out.into_iter().collect();
    let mut order: u64 = 1;
    for &(p, e) in &v {
        order = p
            .checked_pow(e)
            .and_then(|pe| order.checked_mul(pe))
            .ok_or(LatticeError::OrderOverflow)?;
    }
    Ok(v)
}

fn divides(a: &[(u64, u32)], b: &[(u64, u32)]) -> bool {
    let bm: BTreeMap<u64, u32> = b.iter().copied().collect();
    a.iter().all(|(p, e)| bm.get(p).is_some_and(|f| f >= e))
}

impl GroupLattice {
    /// Validates and builds a lattice from raw parts.
    ///
    /// Element indices in `relation` and `conj_generators` refer to positions
    /// in `raw`. The result is re-indexed by `(rank, label)`.
    pub fn from_parts(
        name: impl Into<String>,
        raw: Vec<RawElement>,
        relation: Relation,
        conj_generators: Vec<Vec<usize>>,
    ) -> Result<Self, LatticeError> {
        let n = raw.len();
        if n == 0 {
            return Err(LatticeError::Empty);
        }
        if n > MAX_ELEMENTS {
            return Err(LatticeError::TooManyElements(n));
        }
        let mut seen = BTreeSet::new();
        for e in &raw {
            if !seen.insert(e.label.as_str()) {
                return Err(LatticeError::DuplicateLabel(e.label.clone()));
            }
        }

        let mut elems = Vec::with_capacity(n);
        for e in &raw {
            let f = normalize_factorization(&e.label, &e.order_factorization)?;
            let rank = f.iter().map(|&(_, e)| e).sum();
            elems.push((rank, e.label.clone(), f));
        }

        // canonical order: (rank, label)
        let mut perm: Vec<usize> = (0..n).collect();
        perm.sort_by(|&a, &b| (elems[a].0, &elems[a].1).cmp(&(elems[b].0, &elems[b].1)));
        let mut new_of_old = vec![0usize; n];
        for (new, &old) in perm.iter().enumerate() {
            new_of_old[old] = new;
        }
        let elements: Vec<LatticeElement> = perm
            .iter()
            .enumerate()
            .map(|(i, &old)| LatticeElement {
                index: i,
                label: elems[old].1.clone(),
                order_factorization: elems[old].2.clone(),
                rank: elems[old].0,
            })
            .collect();

        // direct relations, strictly increasing in rank
        let mut direct: Vec<Vec<usize>> = vec![Vec::new(); n];
        for &(a, b) in relation.pairs() {
            if a >= n {
                return Err(LatticeError::IndexOutOfRange(a));
            }
            if b >= n {
                return Err(LatticeError::IndexOutOfRange(b));
            }
            if a == b {
                continue;
            }
            let (na, nb) = (new_of_old[a], new_of_old[b]);
            let (ea, eb) = (&elements[na], &elements[nb]);
            if ea.rank >= eb.rank || !divides(&ea.order_factorization, &eb.order_factorization) {
                return Err(LatticeError::OrderNotMonotone {
                    lower: ea.label.clone(),
                    upper: eb.label.clone(),
                });
            }
            direct[na].push(nb);
        }

        // reflexive-transitive closure; indices increase with rank so a reverse
        // sweep sees every successor first
        let mut up = BitRows::new(n, n);
        for a in (0..n).rev() {
            up.set(a, a);
            let succ = std::mem::take(&mut direct[a]);
            for &b in &succ {
                let row_b = up.row(b).to_vec();
                for (x, y) in up.row_mut(a).iter_mut().zip(row_b) {
                    *x |= y;
                }
            }
            direct[a] = succ;
        }
        let mut down = BitRows::new(n, n);
        for a in 0..n {
            for b in up.ones(a).collect::<Vec<_>>() {
                down.set(b, a);
            }
        }

        let count = |rows: &BitRows, r: usize| rows.row(r).iter().map(|w| w.count_ones() as usize).sum::<usize>();
        let bottom = (0..n).find(|&a| count(&up, a) == n).ok_or(LatticeError::NoBottom)?;
        let top = (0..n).find(|&a| count(&down, a) == n).ok_or(LatticeError::NoTop)?;

        // covers: b covers a iff the interval [a, b] has exactly two elements
        let mut upper_covers = vec![Vec::new(); n];
        let mut lower_covers = vec![Vec::new(); n];
        for a in 0..n {
            for b in up.ones(a) {
                if b == a {
                    continue;
                }
                let between: u32 = up
                    .row(a)
                    .iter()
                    .zip(down.row(b))
                    .map(|(x, y)| (x & y).count_ones())
                    .sum();
                if between == 2 {
                    upper_covers[a].push(b);
                    lower_covers[b].push(a);
                }
            }
        }

        // meets by dynamic programming over lower covers
        let mut meet = vec![u32::MAX; n * n];
        for b in 0..n {
            for a in 0..n {
                let m = if up.get(a, b) {
                    a
                } else if up.get(b, a) {
                    b
                } else {
                    // meet(a, b) is the greatest of meet(a, c) over lower covers c of b;
                    // lower covers have smaller rank, hence smaller index
                    let mut best: Option<usize> = None;
                    for &c in &lower_covers[b] {
                        let cand = meet[a * n + c] as usize;
                        best = match best {
                            None => Some(cand),
                            Some(m) if up.get(m, cand) => Some(cand),
                            Some(m) => Some(m),
                        };
                    }
                    let m = best.expect("non-bottom element has a lower cover");
                    let ok = lower_covers[b].iter().all(|&c| up.get(meet[a * n + c] as usize, m));
                    if !ok {
                        return Err(LatticeError::NotALattice {
                            a: elements[a].label.clone(),
                            b: elements[b].label.clone(),
                        });
                    }
                    m
                };
                meet[a * n + b] = m as u32;
            }
        }
        // meet must be symmetric in a lattice; asymmetry exposes a non-lattice poset
        for a in 0..n {
            for b in (a + 1)..n {
                if meet[a * n + b] != meet[b * n + a] {
                    return Err(LatticeError::NotALattice {
                        a: elements[a].label.clone(),
                        b: elements[b].label.clone(),
                    });
                }
            }
        }

        // conjugation generators, re-indexed and checked
        let mut gens = Vec::with_capacity(conj_generators.len());
        for (gi, g) in conj_generators.iter().enumerate() {
            if g.len() != n {
                return Err(LatticeError::NotAPermutation { index: gi });
            }
            let mut img = vec![usize::MAX; n];
            let mut hit = vec![false; n];
            for (old, &old_img) in g.iter().enumerate() {
                if old_img >= n || hit[old_img] {
                    return Err(LatticeError::NotAPermutation { index: gi });
                }
                hit[old_img] = true;
                img[new_of_old[old]] = new_of_old[old_img];
            }
            for a in 0..n {
                let (ea, eg) = (&elements[a], &elements[img[a]]);
                let what = if ea.rank != eg.rank {
                    Some("rank")
                } else if ea.order_factorization != eg.order_factorization {
                    Some("order")
                } else {
                    None
                };
                if let Some(what) = what {
                    return Err(LatticeError::NotAnAutomorphism {
                        index: gi,
                        from: ea.label.clone(),
                        to: eg.label.clone(),
                        what,
                    });
                }
                for b in up.ones(a) {
                    if !up.get(img[a], img[b]) {
                        return Err(LatticeError::NotAnAutomorphism {
                            index: gi,
                            from: ea.label.clone(),
                            to: eg.label.clone(),
                            what: "the order relation",
                        });
                    }
                }
            }
            gens.push(img);
        }

        // canonical arrows
        let mut arrows = Vec::new();
        for a in 0..n {
            for b in up.ones(a) {
                if b != a {
                    arrows.push(Arrow::new(a, b));
                }
            }
        }
        if arrows.len() > MAX_ARROWS {
            return Err(LatticeError::TooManyArrows(arrows.len()));
        }
        let mut arrow_index = vec![NO_ARROW; n * n];
        for (i, ar) in arrows.iter().enumerate() {
            arrow_index[ar.source * n + ar.target] = i as u32;
        }

        Ok(GroupLattice {
            name: name.into(),
            elements,
            up,
            down,
            upper_covers,
            lower_covers,
            conj_generators: gens,
            meet,
            bottom,
            top,
            arrows,
            arrow_index,
        })
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    pub fn elements(&self) -> &[LatticeElement] {
        &self.elements
    }

    pub fn element(&self, i: usize) -> &LatticeElement {
        &self.elements[i]
    }

    pub fn find(&self, label: &str) -> Option<usize> {
        self.elements.iter().position(|e| e.label == label)
    }

    pub fn bottom(&self) -> usize {
        self.bottom
    }

    pub fn top(&self) -> usize {
        self.top
    }

    pub fn rank(&self, i: usize) -> u32 {
        self.elements[i].rank
    }

    #[inline]
    pub fn leq(&self, a: usize, b: usize) -> bool {
        self.up.get(a, b)
    }

    #[inline]
    pub fn meet(&self, a: usize, b: usize) -> usize {
        self.meet[a * self.len() + b] as usize
    }

    /// All `b` with `a <= b`, including `a`.
    pub fn above(&self, a: usize) -> impl Iterator<Item = usize> + '_ {
        self.up.ones(a)
    }

    /// All `b` with `b <= a`, including `a`.
    pub fn below(&self, a: usize) -> impl Iterator<Item = usize> + '_ {
        self.down.ones(a)
    }

    pub fn upper_covers(&self, a: usize) -> &[usize] {
        &self.upper_covers[a]
    }

    pub fn lower_covers(&self, a: usize) -> &[usize] {
        &self.lower_covers[a]
    }

    /// Cover pairs `(lower, upper)` in canonical order.
    pub fn cover_pairs(&self) -> Vec<(usize, usize)> {
        let mut v: Vec<_> = (0..self.len())
            .flat_map(|a| self.upper_covers[a].iter().map(move |&b| (a, b)))
            .collect();
        v.sort_unstable();
        v
    }

    pub fn conj_generators(&self) -> &[Vec<usize>] {
        &self.conj_generators
    }

    /// All nontrivial intervals, sorted by `(source, target)`.
    pub fn nontrivial_intervals(&self) -> &[Arrow] {
        &self.arrows
    }

    pub fn arrow_count(&self) -> usize {
        self.arrows.len()
    }

    pub fn arrow(&self, id: usize) -> Arrow {
        self.arrows[id]
    }

    /// Canonical id of the arrow `(source, target)`, if it is a nontrivial interval.
    #[inline]
    pub fn arrow_id(&self, source: usize, target: usize) -> Option<usize> {
        let n = self.len();
        if source >= n || target >= n {
            return None;
        }
        match self.arrow_index[source * n + target] {
            NO_ARROW => None,
            i => Some(i as usize),
        }
    }

    /// Orbit of an element under the group generated by the conjugation generators.
    pub fn element_orbit(&self, a: usize) -> BTreeSet<usize> {
        let mut orbit = BTreeSet::from([a]);
        let mut stack = vec![a];
        while let Some(x) = stack.pop() {
            for g in &self.conj_generators {
                if orbit.insert(g[x]) {
                    stack.push(g[x]);
                }
            }
        }
        orbit
    }

    /// Orbit of an arrow under componentwise conjugation.
    pub fn arrow_orbit(&self, a: Arrow) -> BTreeSet<Arrow> {
        let mut orbit = BTreeSet::from([a]);
        let mut stack = vec![a];
        while let Some(x) = stack.pop() {
            for g in &self.conj_generators {
                let y = Arrow::new(g[x.source], g[x.target]);
                if orbit.insert(y) {
                    stack.push(y);
                }
            }
        }
        orbit
    }

    /// Partition of all elements into conjugation orbits, each sorted, ordered by least member.
    pub fn element_orbits(&self) -> Vec<Vec<usize>> {
        let mut seen = vec![false; self.len()];
        let mut out = Vec::new();
        for a in 0..self.len() {
            if !seen[a] {
                let orb: Vec<usize> = self.element_orbit(a).into_iter().collect();
                for &x in &orb {
                    seen[x] = true;
                }
                out.push(orb);
            }
        }
        out
    }

    /// An element is meet-irreducible iff it has exactly one upper cover.
    pub fn is_meet_irreducible(&self, a: usize) -> bool {
        self.upper_covers[a].len() == 1
    }

    /// One representative (the least index) per conjugation orbit of
    /// meet-irreducible elements.
    pub fn meet_irreducible_classes(&self) -> Vec<usize> {
        self.element_orbits()
            .into_iter()
            .filter(|orb| self.is_meet_irreducible(orb[0]))
            .map(|orb| orb[0])
            .collect()
    }

    pub fn is_abelian_action(&self) -> bool {
        self.conj_generators
            .iter()
            .all(|g| g.iter().enumerate().all(|(i, &j)| i == j))
    }
}
