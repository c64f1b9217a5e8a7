//! Rubin's closure operator on arrow sets.
//!
//! [`ArrowTables`] precomputes, for each nontrivial arrow, its conjugation
//! orbit and its restrictions, and for each element the arrows entering and
//! leaving it. With these, [`ArrowTables::close`] runs a worklist: every
//! newly added arrow is pushed once, and when popped it contributes its
//! orbit, its restrictions and its composites with arrows already present.

use std::sync::Arc;

use thiserror::Error;

use crate::arrowset::ArrowSet;
use crate::lattice::{Arrow, GroupLattice};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ClosureError {
    #[error("({lower}, {upper}) is not a nontrivial interval of this lattice")]
    ForeignArrow { lower: usize, upper: usize },
    #[error("arrow set has width {got}, lattice has {expected} arrows")]
    WidthMismatch { expected: usize, got: usize },
}

/// A set of arrows closed under conjugation, restriction and composition.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct TransferSystem {
    arrows: ArrowSet,
}

impl TransferSystem {
    /// Wraps a set already known to be closed.
    pub(crate) fn from_closed(arrows: ArrowSet) -> Self {
        TransferSystem { arrows }
    }

    pub fn arrows(&self) -> &ArrowSet {
        &self.arrows
    }

    pub fn into_arrows(self) -> ArrowSet {
        self.arrows
    }

    pub fn len(&self) -> usize {
        self.arrows.count()
    }

    pub fn is_empty(&self) -> bool {
        self.arrows.is_empty()
    }
}

impl std::fmt::Debug for TransferSystem {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "TransferSystem{:?}", self.arrows)
    }
}

/// Precomputed lookup data for closing arrow sets on one lattice.
#[derive(Debug, Clone)]
pub struct ArrowTables {
    lattice: Arc<GroupLattice>,
    /// Orbit of each arrow other than the arrow itself; empty for abelian lattices.
    orbits: Vec<Box<[u32]>>,
    /// `(L ∧ K, L)` for every `L <= H`, identities dropped, for each arrow `(K, H)`.
    restrictions: Vec<Box<[u32]>>,
    /// `(source, arrow id)` for every arrow ending at each element.
    incoming: Vec<Box<[(u32, u32)]>>,
    /// `(target, arrow id)` for every arrow starting at each element.
    outgoing: Vec<Box<[(u32, u32)]>>,
}

impl ArrowTables {
    pub fn new(lattice: impl Into<Arc<GroupLattice>>) -> Self {
        let lattice = lattice.into();
        let l = &*lattice;
        let n = l.len();
        let arrows = l.nontrivial_intervals();

        let orbits = arrows
            .iter()
            .map(|&a| {
                l.arrow_orbit(a)
                    .into_iter()
                    .filter(|&b| b != a)
                    .map(|b| l.arrow_id(b.source, b.target).expect("orbit stays in lattice") as u32)
                    .collect()
            })
            .collect();

        let restrictions = arrows
            .iter()
            .map(|a| {
                let mut v: Vec<u32> = l
                    .below(a.target)
                    .filter_map(|lo| l.arrow_id(l.meet(lo, a.source), lo))
                    .map(|id| id as u32)
                    .collect();
                v.sort_unstable();
                v.dedup();
                v.into_boxed_slice()
            })
            .collect();

        let mut incoming = vec![Vec::new(); n];
        let mut outgoing = vec![Vec::new(); n];
        for (id, a) in arrows.iter().enumerate() {
            incoming[a.target].push((a.source as u32, id as u32));
            outgoing[a.source].push((a.target as u32, id as u32));
        }

        ArrowTables {
            lattice,
            orbits,
            restrictions,
            incoming: incoming.into_iter().map(Vec::into_boxed_slice).collect(),
            outgoing: outgoing.into_iter().map(Vec::into_boxed_slice).collect(),
        }
    }

    pub fn lattice(&self) -> &GroupLattice {
        &self.lattice
    }

    pub fn shared_lattice(&self) -> Arc<GroupLattice> {
        Arc::clone(&self.lattice)
    }

    pub fn arrow_count(&self) -> usize {
        self.lattice.arrow_count()
    }

    /// The full orbit of arrow `id`, including `id`.
    pub fn orbit(&self, id: usize) -> impl Iterator<Item = usize> + '_ {
        std::iter::once(id).chain(self.orbits[id].iter().map(|&x| x as usize))
    }

    pub fn restrictions(&self, id: usize) -> impl Iterator<Item = usize> + '_ {
        self.restrictions[id].iter().map(|&x| x as usize)
    }

    /// Id of the composite of `first` followed by `second`, when `first` ends where `second` starts.
    pub fn compose(&self, first: usize, second: usize) -> Option<usize> {
        let (a, b) = (self.lattice.arrow(first), self.lattice.arrow(second));
        if a.target != b.source {
            return None;
        }
        self.lattice.arrow_id(a.source, b.target)
    }

    pub fn empty_set(&self) -> ArrowSet {
        ArrowSet::empty(self.arrow_count())
    }

    pub fn full_set(&self) -> ArrowSet {
        ArrowSet::full(self.arrow_count())
    }

    /// The complete transfer system (every nontrivial arrow).
    pub fn complete(&self) -> TransferSystem {
        TransferSystem::from_closed(self.full_set())
    }

    pub fn ids_of(&self, arrows: &[Arrow]) -> Result<ArrowSet, ClosureError> {
        let mut set = self.empty_set();
        for a in arrows {
            let id = self
                .lattice
                .arrow_id(a.source, a.target)
                .ok_or(ClosureError::ForeignArrow {
                    lower: a.source,
                    upper: a.target,
                })?;
            set.insert(id);
        }
        Ok(set)
    }

    pub fn arrows_of(&self, set: &ArrowSet) -> Vec<Arrow> {
        set.iter().map(|id| self.lattice.arrow(id)).collect()
    }

    fn check_width(&self, set: &ArrowSet) -> Result<(), ClosureError> {
        if set.universe() == self.arrow_count() {
            Ok(())
        } else {
            Err(ClosureError::WidthMismatch {
                expected: self.arrow_count(),
                got: set.universe(),
            })
        }
    }

    /// Smallest transfer system containing `arrows`.
    pub fn closure(&self, arrows: &[Arrow]) -> Result<TransferSystem, ClosureError> {
        Ok(self.close(&self.ids_of(arrows)?))
    }

    /// Smallest transfer system containing the arrow ids in `seed`.
    pub fn close(&self, seed: &ArrowSet) -> TransferSystem {
        assert_eq!(seed.universe(), self.arrow_count(), "arrow set from another lattice");
        let mut set = self.empty_set();
        let mut stack = Vec::with_capacity(seed.count());
        for id in seed.iter() {
            set.insert(id);
            stack.push(id as u32);
        }
        self.saturate(&mut set, stack);
        TransferSystem::from_closed(set)
    }

    /// `closure(T ∪ {id})` for a system `T` that is already closed.
    ///
    /// Returns `None` if `id` is already in `T`.
    pub fn extend(&self, system: &TransferSystem, id: usize) -> Option<TransferSystem> {
        if system.arrows.contains(id) {
            return None;
        }
        let mut set = system.arrows.clone();
        set.insert(id);
        self.saturate(&mut set, vec![id as u32]);
        Some(TransferSystem::from_closed(set))
    }

    fn saturate(&self, set: &mut ArrowSet, mut stack: Vec<u32>) {
        let l = &*self.lattice;
        let push = |set: &mut ArrowSet, stack: &mut Vec<u32>, id: usize| {
            if set.insert(id) {
                stack.push(id as u32);
            }
        };
        while let Some(x) = stack.pop() {
            let x = x as usize;
            for &y in self.orbits[x].iter() {
                push(set, &mut stack, y as usize);
            }
            for &y in self.restrictions[x].iter() {
                push(set, &mut stack, y as usize);
            }
            let a = l.arrow(x);
            for &(k, kid) in self.incoming[a.source].iter() {
                if set.contains(kid as usize) {
                    let c = l.arrow_id(k as usize, a.target).expect("composite of arrows");
                    push(set, &mut stack, c);
                }
            }
            for &(u, uid) in self.outgoing[a.target].iter() {
                if set.contains(uid as usize) {
                    let c = l.arrow_id(a.source, u as usize).expect("composite of arrows");
                    push(set, &mut stack, c);
                }
            }
        }
    }

    /// The staged construction: conjugates, then restrictions, then a
    /// composition fixpoint, repeated until nothing changes.
    pub fn close_staged(&self, seed: &ArrowSet) -> TransferSystem {
        let mut set = seed.clone();
        loop {
            let before = set.clone();
            for id in set.clone().iter() {
                for y in self.orbit(id) {
                    set.insert(y);
                }
            }
            for id in set.clone().iter() {
                for y in self.restrictions(id) {
                    set.insert(y);
                }
            }
            loop {
                let mut grew = false;
                let ids: Vec<usize> = set.iter().collect();
                for &a in &ids {
                    let ta = self.lattice.arrow(a).target;
                    for &(_, b) in self.outgoing[ta].iter() {
                        if set.contains(b as usize) {
                            let c = self.compose(a, b as usize).expect("adjacent arrows compose");
                            grew |= set.insert(c);
                        }
                    }
                }
                if !grew {
                    break;
                }
            }
            if set == before {
                return TransferSystem::from_closed(set);
            }
        }
    }

    /// Whether `set` satisfies the conjugation, restriction and composition axioms.
    pub fn is_closed(&self, set: &ArrowSet) -> Result<bool, ClosureError> {
        self.check_width(set)?;
        let l = &*self.lattice;
        for x in set.iter() {
            if !self.orbit(x).all(|y| set.contains(y)) || !self.restrictions(x).all(|y| set.contains(y)) {
                return Ok(false);
            }
            let a = l.arrow(x);
            for &(u, uid) in self.outgoing[a.target].iter() {
                if set.contains(uid as usize) && !set.contains(l.arrow_id(a.source, u as usize).expect("composite")) {
                    return Ok(false);
                }
            }
        }
        Ok(true)
    }

    /// Wraps `set` as a transfer system after checking it is closed.
    pub fn system(&self, set: ArrowSet) -> Option<TransferSystem> {
        matches!(self.is_closed(&set), Ok(true)).then(|| TransferSystem::from_closed(set))
    }
}
