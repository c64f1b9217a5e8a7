//! Breadth-first enumeration of all transfer systems of a lattice.
//!
//! Layer 0 holds the empty system. Layer `i + 1` is every `closure(T ∪ {a})`
//! with `T` in layer `i`, minus everything seen before. A system's layer is
//! therefore the length of the shortest chain of single-arrow extensions
//! reaching it, which on every lattice we can check equals `m(T)`.
//!
//! Each layer's frontier is split into `jobs` slices that are extended in
//! parallel; the merged candidates are deduplicated against a global set and
//! sorted, so the output does not depend on `jobs`.

mod spill;

use std::path::PathBuf;
use std::sync::Arc;

use rayon::prelude::*;
use rustc_hash::FxHashMap;
use thiserror::Error;

use crate::arrowset::{words_for, ArrowSet};
use crate::closure::{ArrowTables, TransferSystem};

pub use spill::SpillOptions;

#[derive(Debug, Error)]
pub enum EnumerationError {
    #[error(
        "memory budget of {budget} bytes exceeded while building layer {layer} \
         ({total_so_far} systems so far, strata {stratum_counts:?})"
    )]
    MemoryBudget {
        budget: usize,
        layer: usize,
        total_so_far: u64,
        stratum_counts: Vec<u64>,
    },
    #[error("spill i/o: {0}")]
    Io(#[from] std::io::Error),
    #[error("could not start worker pool: {0}")]
    Pool(String),
}

/// Status line emitted before each layer is expanded.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct LayerProgress {
    pub layer: usize,
    pub frontier: u64,
    pub total: u64,
    pub spilled: bool,
}

pub type ProgressFn = Arc<dyn Fn(&LayerProgress) + Send + Sync>;

#[derive(Clone, Default)]
pub struct EnumerateOptions {
    /// Keep every system in the result.
    pub store: bool,
    /// Worker threads; 0 means one per core.
    pub jobs: usize,
    /// Approximate cap on bytes held by the in-memory dedup set.
    pub memory_budget: Option<usize>,
    /// Move to sorted on-disk layer files once the in-memory set grows past a threshold.
    pub spill: Option<SpillOptions>,
    pub progress: Option<ProgressFn>,
}

impl EnumerateOptions {
    pub fn jobs(jobs: usize) -> Self {
        EnumerateOptions {
            jobs,
            ..Default::default()
        }
    }

    pub fn stored(jobs: usize) -> Self {
        EnumerateOptions {
            store: true,
            jobs,
            ..Default::default()
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EnumerationResult {
    pub total_count: u64,
    /// Number of systems first found in each layer.
    pub stratum_counts: Vec<u64>,
    /// `(system, layer)`, ordered by layer and then by arrow set.
    pub systems: Option<Vec<(TransferSystem, usize)>>,
    /// Whether the run moved to on-disk layers.
    pub spilled: bool,
}

impl EnumerationResult {
    /// Largest layer index, i.e. the complexity when layers equal basis sizes.
    pub fn max_stratum(&self) -> usize {
        self.stratum_counts.len().saturating_sub(1)
    }
}

fn bytes_per_entry(arrow_count: usize) -> usize {
    // boxed words, the set's length, the layer tag and hash-table slack
    words_for(arrow_count) * 8 + 48
}

/// Every single-arrow extension of the systems in `slice`, deduplicated locally.
fn extend_slice(tables: &ArrowTables, slice: &[ArrowSet], skip: impl Fn(&ArrowSet) -> bool) -> Vec<ArrowSet> {
    let mut local = rustc_hash::FxHashSet::default();
    let n = tables.arrow_count();
    for set in slice {
        let t = TransferSystem::from_closed(set.clone());
        for id in 0..n {
            if let Some(ext) = tables.extend(&t, id) {
                let ext = ext.into_arrows();
                if !skip(&ext) {
                    local.insert(ext);
                }
            }
        }
    }
    local.into_iter().collect()
}

pub(crate) fn slices(len: usize, jobs: usize) -> usize {
    len.div_ceil(jobs.max(1)).max(1)
}

pub(crate) fn build_pool(jobs: usize) -> Result<rayon::ThreadPool, EnumerationError> {
    rayon::ThreadPoolBuilder::new()
        .num_threads(jobs)
        .build()
        .map_err(|e| EnumerationError::Pool(e.to_string()))
}

/// Enumerates `Tr(G)` by breadth-first single-arrow extension.
pub fn enumerate(tables: &ArrowTables, opts: &EnumerateOptions) -> Result<EnumerationResult, EnumerationError> {
    let pool = build_pool(opts.jobs)?;
    let jobs = pool.current_num_threads();
    let empty = tables.empty_set();

    let mut seen: FxHashMap<ArrowSet, u32> = FxHashMap::default();
    seen.insert(empty.clone(), 0);
    let mut strata = vec![1u64];
    let mut frontier = vec![empty];
    let entry_bytes = bytes_per_entry(tables.arrow_count());

    loop {
        let layer = strata.len() - 1;
        if let Some(p) = &opts.progress {
            p(&LayerProgress {
                layer,
                frontier: frontier.len() as u64,
                total: seen.len() as u64,
                spilled: false,
            });
        }
        if let Some(sp) = &opts.spill {
            if seen.len() > sp.threshold {
                return spill::continue_on_disk(tables, opts, sp, &pool, seen, strata);
            }
        }

        let chunk = slices(frontier.len(), jobs);
        let candidates: Vec<Vec<ArrowSet>> = pool.install(|| {
            frontier
                .par_chunks(chunk)
                .map(|slice| extend_slice(tables, slice, |s| seen.contains_key(s)))
                .collect()
        });

        let mut next = Vec::new();
        for batch in candidates {
            for s in batch {
                if let std::collections::hash_map::Entry::Vacant(v) = seen.entry(s) {
                    next.push(v.key().clone());
                    v.insert(layer as u32 + 1);
                }
            }
        }
        if next.is_empty() {
            break;
        }
        next.sort_unstable();
        strata.push(next.len() as u64);

        if let Some(budget) = opts.memory_budget {
            if (seen.len() + next.len()) * entry_bytes > budget {
                return Err(EnumerationError::MemoryBudget {
                    budget,
                    layer: layer + 1,
                    total_so_far: seen.len() as u64,
                    stratum_counts: strata,
                });
            }
        }
        frontier = next;
    }

    let total_count = seen.len() as u64;
    let systems = opts.store.then(|| {
        let mut all: Vec<(TransferSystem, usize)> = seen
            .into_iter()
            .map(|(s, layer)| (TransferSystem::from_closed(s), layer as usize))
            .collect();
        all.sort_unstable_by(|a, b| (a.1, &a.0).cmp(&(b.1, &b.0)));
        all
    });
    Ok(EnumerationResult {
        total_count,
        stratum_counts: strata,
        systems,
        spilled: false,
    })
}

/// `|Tr(G)|` without keeping the systems.
pub fn count(tables: &ArrowTables, jobs: usize) -> Result<u64, EnumerationError> {
    Ok(enumerate(tables, &EnumerateOptions::jobs(jobs))?.total_count)
}

/// Number of systems per layer.
pub fn distribution(tables: &ArrowTables, jobs: usize) -> Result<Vec<u64>, EnumerationError> {
    Ok(enumerate(tables, &EnumerateOptions::jobs(jobs))?.stratum_counts)
}

/// Writes `stratum,count` rows with a header.
pub fn write_distribution_csv<W: std::io::Write>(strata: &[u64], out: W) -> csv::Result<()> {
    let mut w = csv::Writer::from_writer(out);
    w.write_record(["stratum", "count"])?;
    for (i, c) in strata.iter().enumerate() {
        w.write_record([i.to_string(), c.to_string()])?;
    }
    w.flush()?;
    Ok(())
}

/// Default spill directory under the system temp dir.
pub fn default_spill_dir() -> PathBuf {
    std::env::temp_dir().join(format!("transfer-systems-spill-{}", std::process::id()))
}
