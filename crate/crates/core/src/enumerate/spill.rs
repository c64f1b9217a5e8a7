//! On-disk continuation of the breadth-first enumeration.
//!
//! Every layer lives in its own file of fixed-width little-endian records
//! (the raw words of each arrow set), sorted and duplicate-free. A new layer
//! is built by extending the frontier in batches, writing each batch as a
//! sorted run, then merging the runs while subtracting every earlier layer
//! file. Only a batch of candidates and one record per open file is held in
//! memory at a time.

use std::cmp::Reverse;
use std::collections::BinaryHeap;
use std::fs::{self, File};
use std::io::{self, BufReader, BufWriter, Read, Write};
use std::path::{Path, PathBuf};

use rayon::prelude::*;
use rustc_hash::FxHashMap;

use super::{extend_slice, slices, EnumerateOptions, EnumerationError, EnumerationResult, LayerProgress};
use crate::arrowset::{words_for, ArrowSet};
use crate::closure::{ArrowTables, TransferSystem};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SpillOptions {
    pub dir: PathBuf,
    /// Systems kept in memory before moving to disk.
    pub threshold: usize,
    /// Frontier systems extended per sorted run.
    pub batch: usize,
    /// Leave layer files in `dir` after the run.
    pub keep_files: bool,
}

impl SpillOptions {
    pub fn new(dir: impl Into<PathBuf>) -> Self {
        SpillOptions {
            dir: dir.into(),
            threshold: 1 << 22,
            batch: 1 << 14,
            keep_files: false,
        }
    }
}

struct RecordWriter {
    out: BufWriter<File>,
    count: u64,
}

impl RecordWriter {
    fn create(path: &Path) -> io::Result<Self> {
        Ok(RecordWriter {
            out: BufWriter::new(File::create(path)?),
            count: 0,
        })
    }

    fn push(&mut self, set: &ArrowSet) -> io::Result<()> {
        if set.words().is_empty() {
            self.out.write_all(&[0])?;
        }
        for w in set.words() {
            self.out.write_all(&w.to_le_bytes())?;
        }
        self.count += 1;
        Ok(())
    }

    fn finish(mut self) -> io::Result<u64> {
        self.out.flush()?;
        Ok(self.count)
    }
}

struct RecordReader {
    input: BufReader<File>,
    len: usize,
    buf: Vec<u8>,
}

impl RecordReader {
    fn open(path: &Path, len: usize) -> io::Result<Self> {
        Ok(RecordReader {
            input: BufReader::new(File::open(path)?),
            len,
            buf: vec![0; words_for(len) * 8],
        })
    }

    fn next_record(&mut self) -> io::Result<Option<ArrowSet>> {
        if self.buf.is_empty() {
            // zero arrows: each file holds at most the empty set, stored as a marker byte
            let mut b = [0u8; 1];
            return match self.input.read(&mut b)? {
                0 => Ok(None),
                _ => Ok(Some(ArrowSet::empty(self.len))),
            };
        }
        match self.input.read_exact(&mut self.buf) {
            Ok(()) => {}
            Err(e) if e.kind() == io::ErrorKind::UnexpectedEof => return Ok(None),
            Err(e) => return Err(e),
        }
        let words = self
            .buf
            .chunks_exact(8)
            .map(|c| u64::from_le_bytes(c.try_into().expect("8-byte chunk")))
            .collect();
        ArrowSet::from_words(self.len, words)
            .map(Some)
            .ok_or_else(|| io::Error::new(io::ErrorKind::InvalidData, "record has bits past the arrow count"))
    }
}

/// A sorted reader with one record of lookahead.
struct Cursor {
    reader: RecordReader,
    head: Option<ArrowSet>,
}

impl Cursor {
    fn open(path: &Path, len: usize) -> io::Result<Self> {
        let mut reader = RecordReader::open(path, len)?;
        let head = reader.next_record()?;
        Ok(Cursor { reader, head })
    }

    /// Advances past everything below `x`; reports whether `x` itself is present.
    fn holds(&mut self, x: &ArrowSet) -> io::Result<bool> {
        while let Some(h) = &self.head {
            match h.cmp(x) {
                std::cmp::Ordering::Less => self.head = self.reader.next_record()?,
                std::cmp::Ordering::Equal => return Ok(true),
                std::cmp::Ordering::Greater => return Ok(false),
            }
        }
        Ok(false)
    }
}

fn layer_path(dir: &Path, layer: usize) -> PathBuf {
    dir.join(format!("layer-{layer:04}.bin"))
}

fn run_path(dir: &Path, run: usize) -> PathBuf {
    dir.join(format!("run-{run:06}.bin"))
}

fn write_sorted(path: &Path, sets: &[ArrowSet]) -> io::Result<u64> {
    let mut w = RecordWriter::create(path)?;
    for s in sets {
        w.push(s)?;
    }
    w.finish()
}

/// Moves an in-memory enumeration to disk and finishes it there.
pub(super) fn continue_on_disk(
    tables: &ArrowTables,
    opts: &EnumerateOptions,
    sp: &SpillOptions,
    pool: &rayon::ThreadPool,
    seen: FxHashMap<ArrowSet, u32>,
    mut strata: Vec<u64>,
) -> Result<EnumerationResult, EnumerationError> {
    let dir = &sp.dir;
    fs::create_dir_all(dir)?;
    let len = tables.arrow_count();
    let jobs = pool.current_num_threads();

    let mut by_layer: Vec<Vec<ArrowSet>> = vec![Vec::new(); strata.len()];
    for (s, layer) in seen {
        by_layer[layer as usize].push(s);
    }
    for (layer, mut sets) in by_layer.into_iter().enumerate() {
        sets.sort_unstable();
        write_sorted(&layer_path(dir, layer), &sets)?;
    }

    loop {
        let layer = strata.len() - 1;
        let total: u64 = strata.iter().sum();
        if let Some(p) = &opts.progress {
            p(&LayerProgress {
                layer,
                frontier: strata[layer],
                total,
                spilled: true,
            });
        }

        // sorted runs of candidates
        let mut runs = Vec::new();
        let mut frontier = RecordReader::open(&layer_path(dir, layer), len)?;
        loop {
            let mut batch = Vec::with_capacity(sp.batch.min(strata[layer] as usize));
            while batch.len() < sp.batch.max(1) {
                match frontier.next_record()? {
                    Some(s) => batch.push(s),
                    None => break,
                }
            }
            if batch.is_empty() {
                break;
            }
            let chunk = slices(batch.len(), jobs);
            let mut cands: Vec<ArrowSet> = pool.install(|| {
                batch
                    .par_chunks(chunk)
                    .map(|slice| extend_slice(tables, slice, |_| false))
                    .collect::<Vec<_>>()
                    .concat()
            });
            cands.par_sort_unstable();
            cands.dedup();
            let path = run_path(dir, runs.len());
            write_sorted(&path, &cands)?;
            runs.push(path);
        }

        // merge runs, dropping anything already in an earlier layer
        let mut heads = Vec::with_capacity(runs.len());
        let mut heap = BinaryHeap::new();
        for (i, path) in runs.iter().enumerate() {
            let mut r = RecordReader::open(path, len)?;
            if let Some(s) = r.next_record()? {
                heap.push(Reverse((s, i)));
            }
            heads.push(r);
        }
        let mut earlier = (0..=layer)
            .map(|l| Cursor::open(&layer_path(dir, l), len))
            .collect::<io::Result<Vec<_>>>()?;
        let next_path = layer_path(dir, layer + 1);
        let mut out = RecordWriter::create(&next_path)?;
        let mut last: Option<ArrowSet> = None;
        while let Some(Reverse((s, i))) = heap.pop() {
            if let Some(t) = heads[i].next_record()? {
                heap.push(Reverse((t, i)));
            }
            if last.as_ref() == Some(&s) {
                continue;
            }
            let mut old = false;
            for c in earlier.iter_mut() {
                old |= c.holds(&s)?;
            }
            if !old {
                out.push(&s)?;
            }
            last = Some(s);
        }
        let added = out.finish()?;
        drop(heads);
        for r in &runs {
            fs::remove_file(r)?;
        }
        if added == 0 {
            fs::remove_file(&next_path)?;
            break;
        }
        strata.push(added);
    }

    let systems = if opts.store {
        let mut all = Vec::new();
        for layer in 0..strata.len() {
            let mut r = RecordReader::open(&layer_path(dir, layer), len)?;
            while let Some(s) = r.next_record()? {
                all.push((TransferSystem::from_closed(s), layer));
            }
        }
        Some(all)
    } else {
        None
    };
    if !sp.keep_files {
        for layer in 0..strata.len() {
            fs::remove_file(layer_path(dir, layer))?;
        }
    }
    Ok(EnumerationResult {
        total_count: strata.iter().sum(),
        stratum_counts: strata,
        systems,
        spilled: true,
    })
}
