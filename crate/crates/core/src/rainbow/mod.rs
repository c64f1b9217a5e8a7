//! Rainbows: strictly nested arcs on `{0, ..., n}`.
//!
//! An arc `x -> y` stands for every interval of the square-free cyclic
//! lattice `[1]^n` whose ends have ranks `x` and `y`; there are
//! `trinomial(n, x, y)` of them. The operations in [`ops`] move arcs
//! without shrinking that total, and [`normalize`] chains them until a
//! further arc fits.

pub mod grid;
pub mod normalize;
pub mod numbers;
pub mod ops;
pub mod search;

use std::fmt;

use num_bigint::BigUint;
use serde::Serialize;
use thiserror::Error;

pub use grid::{
    conjectured_cpnqm_complexity, cpnq_witness_rainbow, double_rainbow_augmented, dr_closed_form, dr_number,
    is_partial_rainbow, midpoint_family, sr_closed_form, sr_number, GeneratingSet,
};
pub use normalize::{normalize_to_composable, AppliedOp, Normalization};
pub use numbers::{
    ap3_count, binomial, cpnq_complexity, elementary_abelian_lower, gaussian_binomial, multinomial3, riordan,
    riordan_sums, square_free_complexity_lower, trinomial,
};
pub use ops::{apply_arc_op, apply_block_op, ArcOp, BlockOp};
pub use search::{brute_force_max_rainbow, canonical_max_rainbows, MaxRainbows, BRUTE_FORCE_MAX_N};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum RainbowError {
    #[error("arc {x} -> {y} is not inside 0..={n} with x < y")]
    ArcOutOfRange { x: u32, y: u32, n: u32 },
    #[error("arcs {outer} and {inner} are not strictly nested")]
    NotNested { outer: Arc, inner: Arc },
    #[error("class {class} is already an endpoint")]
    EndpointOccupied { class: u32 },
    #[error("{op}: requires {condition}")]
    ConditionFailed { op: &'static str, condition: &'static str },
    #[error("no block to operate on")]
    NoBlock,
    #[error("block {start}..{end} is not inside a rainbow of {len} arcs")]
    BadBlock { start: usize, end: usize, len: usize },
    #[error("rainbow has {arcs} arcs, normalization needs fewer than {limit}")]
    TooManyArcs { arcs: usize, limit: usize },
    #[error("normalization did not reach a composable rainbow within {steps} passes")]
    DidNotConverge { steps: usize },
    #[error("normalization stopped at a rainbow that is not composable: {0}")]
    NotComposable(Rainbow),
    #[error("n = {n} is past the brute-force guard {max}")]
    GuardExceeded { n: u32, max: u32 },
    #[error("{0}")]
    Domain(String),
    #[error("closed form gives {closed}, midpoint enumeration gives {counted} for ({n}, {m})")]
    FormulaMismatch { n: u32, m: u32, closed: u64, counted: u64 },
}

/// The arc `x -> y`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub struct Arc {
    pub x: u32,
    pub y: u32,
}

impl Arc {
    pub fn new(x: u32, y: u32) -> Self {
        Arc { x, y }
    }

    pub fn len(&self) -> u32 {
        self.y - self.x
    }

    pub fn is_empty(&self) -> bool {
        self.x == self.y
    }

    fn nests(&self, inner: &Arc) -> bool {
        self.x < inner.x && inner.y < self.y
    }
}

impl fmt::Display for Arc {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}->{}", self.x, self.y)
    }
}

/// A consecutive run of arcs, `start..end` in outermost-first order.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct Block {
    pub start: usize,
    pub end: usize,
}

impl Block {
    pub fn new(start: usize, end: usize) -> Self {
        Block { start, end }
    }

    pub fn len(&self) -> usize {
        self.end.saturating_sub(self.start)
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn contains(&self, i: usize) -> bool {
        self.start <= i && i < self.end
    }
}

/// Strictly nested arcs on `{0, ..., n}`, outermost first.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub struct Rainbow {
    n: u32,
    arcs: Vec<Arc>,
}

impl Rainbow {
    /// Sorts `arcs` by source and checks the nesting.
    pub fn new(n: u32, mut arcs: Vec<Arc>) -> Result<Self, RainbowError> {
        for a in &arcs {
            if a.x >= a.y || a.y > n {
                return Err(RainbowError::ArcOutOfRange { x: a.x, y: a.y, n });
            }
        }
        arcs.sort();
        for w in arcs.windows(2) {
            if !w[0].nests(&w[1]) {
                return Err(RainbowError::NotNested {
                    outer: w[0],
                    inner: w[1],
                });
            }
        }
        Ok(Rainbow { n, arcs })
    }

    pub fn from_pairs(n: u32, pairs: &[(u32, u32)]) -> Result<Self, RainbowError> {
        Rainbow::new(n, pairs.iter().map(|&(x, y)| Arc::new(x, y)).collect())
    }

    pub fn empty(n: u32) -> Self {
        Rainbow { n, arcs: Vec::new() }
    }

    /// Arcs `i -> n - i` for every `i < n - i`.
    pub fn complete(n: u32) -> Self {
        let arcs = (0..).take_while(|&i| i < n - i).map(|i| Arc::new(i, n - i)).collect();
        Rainbow { n, arcs }
    }

    /// `R[x]`: every class except `x` used as an endpoint, paired outermost first.
    pub fn excluding(n: u32, x: u32) -> Result<Self, RainbowError> {
        if x > n || n % 2 == 1 {
            return Err(RainbowError::Domain(format!("R[{x}] needs even n and x <= n, got n = {n}")));
        }
        let classes: Vec<u32> = (0..=n).filter(|&c| c != x).collect();
        let k = classes.len();
        let arcs = (0..k / 2).map(|i| Arc::new(classes[i], classes[k - 1 - i])).collect();
        Ok(Rainbow { n, arcs })
    }

    pub fn n(&self) -> u32 {
        self.n
    }

    pub fn arcs(&self) -> &[Arc] {
        &self.arcs
    }

    pub fn len(&self) -> usize {
        self.arcs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.arcs.is_empty()
    }

    /// Whether `class` is in range and no arc ends there.
    pub fn is_available(&self, class: u32) -> bool {
        class <= self.n && self.arcs.iter().all(|a| a.x != class && a.y != class)
    }

    /// Whether `class` is an endpoint of some arc.
    pub fn contains_class(&self, class: u32) -> bool {
        self.arcs.iter().any(|a| a.x == class || a.y == class)
    }

    /// `true` at every class that is an endpoint.
    pub fn occupancy(&self) -> Vec<bool> {
        let mut occ = vec![false; self.n as usize + 1];
        for a in &self.arcs {
            occ[a.x as usize] = true;
            occ[a.y as usize] = true;
        }
        occ
    }

    /// Total number of lattice intervals over the arcs.
    pub fn size(&self) -> BigUint {
        self.arcs
            .iter()
            .map(|a| trinomial(self.n, a.x, a.y).expect("valid arc"))
            .sum()
    }

    /// `B_l`: the longest prefix that is full on the left.
    pub fn left_block(&self) -> Block {
        let len = match self.arcs.first() {
            None => 0,
            Some(first) => self
                .arcs
                .iter()
                .enumerate()
                .take_while(|(i, a)| a.x == first.x + *i as u32)
                .count(),
        };
        Block::new(0, len)
    }

    /// `B_r`: the longest prefix that is full on the right.
    pub fn right_block(&self) -> Block {
        let len = match self.arcs.first() {
            None => 0,
            Some(first) => self
                .arcs
                .iter()
                .enumerate()
                .take_while(|(i, a)| a.y + *i as u32 == first.y)
                .count(),
        };
        Block::new(0, len)
    }

    /// `B_O = B_l ∩ B_r`.
    pub fn outer_block(&self) -> Block {
        Block::new(0, self.left_block().end.min(self.right_block().end))
    }

    /// Every arc that could be added while keeping the nesting.
    pub fn composable_arcs(&self) -> Vec<Arc> {
        let occ = self.occupancy();
        let mut out = Vec::new();
        for x in 0..self.n {
            for y in x + 1..=self.n {
                if occ[x as usize] || occ[y as usize] {
                    continue;
                }
                let a = Arc::new(x, y);
                if self.arcs.iter().all(|b| b.nests(&a) || a.nests(b)) {
                    out.push(a);
                }
            }
        }
        out
    }

    /// Whether some arc can be added.
    pub fn is_composable(&self) -> bool {
        !self.composable_arcs().is_empty()
    }

    /// `{n - y -> n - x}` for every arc.
    pub fn reflected(&self) -> Rainbow {
        let arcs = self.arcs.iter().map(|a| Arc::new(self.n - a.y, self.n - a.x)).collect();
        Rainbow { n: self.n, arcs }
    }

    pub(crate) fn with_arcs(&self, arcs: Vec<Arc>) -> Result<Rainbow, RainbowError> {
        Rainbow::new(self.n, arcs)
    }
}

impl fmt::Display for Rainbow {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "n={} {{", self.n)?;
        for (i, a) in self.arcs.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{a}")?;
        }
        write!(f, "}}")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn validation() {
        assert!(Rainbow::from_pairs(5, &[(1, 4), (0, 5)]).is_ok());
        assert_eq!(
            Rainbow::from_pairs(5, &[(0, 3), (1, 4)]),
            Err(RainbowError::NotNested {
                outer: Arc::new(0, 3),
                inner: Arc::new(1, 4)
            })
        );
        assert!(matches!(
            Rainbow::from_pairs(5, &[(0, 3), (0, 2)]),
            Err(RainbowError::NotNested { .. })
        ));
        assert!(matches!(
            Rainbow::from_pairs(5, &[(2, 6)]),
            Err(RainbowError::ArcOutOfRange { .. })
        ));
        assert!(matches!(
            Rainbow::from_pairs(5, &[(2, 2)]),
            Err(RainbowError::ArcOutOfRange { .. })
        ));
    }

    #[test]
    fn canonical_shapes() {
        assert_eq!(Rainbow::complete(7), Rainbow::from_pairs(7, &[(0, 7), (1, 6), (2, 5), (3, 4)]).unwrap());
        assert_eq!(
            Rainbow::excluding(8, 4).unwrap(),
            Rainbow::from_pairs(8, &[(0, 8), (1, 7), (2, 6), (3, 5)]).unwrap()
        );
        assert_eq!(Rainbow::excluding(4, 0).unwrap(), Rainbow::from_pairs(4, &[(1, 4), (2, 3)]).unwrap());
        assert_eq!(Rainbow::excluding(4, 0).unwrap().size(), BigUint::from(16u32));
        assert_eq!(Rainbow::excluding(4, 2).unwrap().size(), BigUint::from(13u32));
        assert_eq!(Rainbow::excluding(6, 0).unwrap().size(), BigUint::from(126u32));
        assert_eq!(Rainbow::complete(7).size(), BigUint::from(393u32));
        assert_eq!(Rainbow::empty(3).size(), BigUint::from(0u32));
    }

    #[test]
    fn blocks() {
        // B_l is the two outer arcs, B_r the four outer arcs
        let r = Rainbow::from_pairs(12, &[(0, 12), (1, 11), (3, 10), (5, 9), (6, 7)]).unwrap();
        assert_eq!(r.left_block(), Block::new(0, 2));
        assert_eq!(r.right_block(), Block::new(0, 4));
        assert_eq!(r.outer_block(), Block::new(0, 2));
        assert!(Rainbow::empty(4).outer_block().is_empty());
    }

    #[test]
    fn composability_and_reflection() {
        assert!(Rainbow::empty(1).is_composable());
        assert!(!Rainbow::complete(5).is_composable());
        assert!(!Rainbow::excluding(6, 3).unwrap().is_composable());
        let r = Rainbow::from_pairs(9, &[(0, 8), (1, 7), (3, 6), (4, 5)]).unwrap();
        assert!(!r.is_composable());
        assert!(Rainbow::from_pairs(9, &[(0, 8), (1, 7), (4, 5)]).unwrap().is_composable());
        assert_eq!(r.reflected().reflected(), r);
        assert_eq!(r.reflected().size(), r.size());
    }
}
