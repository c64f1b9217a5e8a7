//! Complexity and the layer-versus-basis-size cross-check.

use rayon::prelude::*;

use crate::basis::{minimal_basis, width, BasisPath, MinimalBasis};
use crate::closure::{ArrowTables, TransferSystem};
use crate::enumerate::{build_pool, enumerate, EnumerateOptions, EnumerationError};

/// A system whose enumeration layer differs from its basis size.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct StratumMismatch {
    pub system: TransferSystem,
    pub layer: usize,
    pub basis_size: usize,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Complexity {
    /// `c(G)`, the largest basis size over `Tr(G)`.
    pub value: usize,
    /// Every system attaining `value`, sorted.
    pub realizers: Vec<TransferSystem>,
    /// A minimal basis of the first realizer.
    pub example_basis: MinimalBasis,
    pub total_count: u64,
    pub stratum_counts: Vec<u64>,
    pub stratum_mismatches: Vec<StratumMismatch>,
    /// How many bases needed the greedy fallback.
    pub greedy_fallbacks: usize,
}

/// Enumerates `Tr(G)` and computes a minimal basis of every system.
pub fn complexity(tables: &ArrowTables, jobs: usize) -> Result<Complexity, EnumerationError> {
    let result = enumerate(tables, &EnumerateOptions::stored(jobs))?;
    let systems = result.systems.expect("stored run");
    let pool = build_pool(jobs)?;
    let bases: Vec<MinimalBasis> = pool.install(|| systems.par_iter().map(|(t, _)| minimal_basis(tables, t)).collect());

    let value = bases.iter().map(MinimalBasis::len).max().unwrap_or(0);
    let mut realizers = Vec::new();
    let mut example_basis = None;
    let mut stratum_mismatches = Vec::new();
    let mut greedy_fallbacks = 0;
    for ((t, layer), b) in systems.into_iter().zip(bases) {
        if b.path == BasisPath::GreedyFallback {
            greedy_fallbacks += 1;
        }
        if b.len() != layer {
            stratum_mismatches.push(StratumMismatch {
                system: t.clone(),
                layer,
                basis_size: b.len(),
            });
        }
        if b.len() == value {
            example_basis.get_or_insert(b);
            realizers.push(t);
        }
    }
    realizers.sort();
    Ok(Complexity {
        value,
        realizers,
        example_basis: example_basis.expect("the empty system always exists"),
        total_count: result.total_count,
        stratum_counts: result.stratum_counts,
        stratum_mismatches,
        greedy_fallbacks,
    })
}

/// `(ɯ(G), m(complete system))`; the two agree on every lattice.
pub fn width_against_complete(tables: &ArrowTables) -> (usize, usize) {
    (width(tables.lattice()), minimal_basis(tables, &tables.complete()).len())
}
