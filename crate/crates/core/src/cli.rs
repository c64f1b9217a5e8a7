//! Command-line front end. The binary only forwards to [`run_cli`].

use std::ffi::OsString;
use std::io::Write;
use std::path::PathBuf;
use std::sync::Arc;
use std::time::Instant;

use clap::{Args, Parser, Subcommand};
use serde::Serialize;
use serde_json::{json, Value};
use thiserror::Error;

use crate::basis::width;
use crate::closure::ArrowTables;
use crate::enumerate::{
    default_spill_dir, enumerate, write_distribution_csv, EnumerateOptions, EnumerationError, ProgressFn, SpillOptions,
};
use crate::invariants::{complexity, width_against_complete};
use crate::lattice::interchange::{load_lattice_file, to_json};
use crate::lattice::perm::{affine_f8_generators, permutation_group_lattice, symmetric_group_generators};
use crate::lattice::{build_chain_product, build_subspace_lattice, GroupLattice, LatticeError};
use crate::rainbow::{self, RainbowError};

/// Lattices with more arrows than this need `--long-run`.
pub const LONG_RUN_ARROWS: usize = 1024;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("cannot parse lattice source {source_text:?}: {reason}")]
    Source { source_text: String, reason: String },
    #[error(transparent)]
    Lattice(#[from] LatticeError),
    #[error(transparent)]
    Enumeration(#[from] EnumerationError),
    #[error(transparent)]
    Rainbow(#[from] RainbowError),
    #[error("{0}")]
    Io(#[from] std::io::Error),
    #[error("csv: {0}")]
    Csv(#[from] csv::Error),
    #[error("{arrows} arrows is past the desk-scale limit of {limit}; pass --long-run (spills to disk)")]
    NeedsLongRun { arrows: usize, limit: usize },
    #[error("check failed: {name}: {detail}")]
    Check { name: &'static str, detail: String },
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Check { .. } => 1,
            _ => 2,
        }
    }
}

#[derive(Debug, Parser)]
#[command(name = "transfer-systems", version, about = "Transfer systems on finite subgroup lattices")]
pub struct Cli {
    /// Print the full run report as JSON instead of text.
    #[arg(long, global = true)]
    pub json: bool,
    /// Silence progress lines on stderr.
    #[arg(long, short, global = true)]
    pub quiet: bool,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Args)]
pub struct SourceArgs {
    /// cyclic:p^2*q, boolean:k, subspace:p=2,n=3, symmetric:n, affine-f8 or trivial.
    #[arg(required_unless_present = "file", conflicts_with = "file")]
    pub source: Option<String>,
    /// A lattice in the JSON interchange format.
    #[arg(long)]
    pub file: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct RunArgs {
    /// Worker threads, 0 for one per core.
    #[arg(long, short, default_value_t = 0)]
    pub jobs: usize,
    /// Fail once the in-memory set would pass this many bytes.
    #[arg(long)]
    pub memory_budget: Option<usize>,
    /// Continue on disk under this directory once the in-memory set is large.
    #[arg(long)]
    pub spill: Option<PathBuf>,
    /// Allow lattices past the desk-scale arrow limit; implies spilling.
    #[arg(long)]
    pub long_run: bool,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Count all transfer systems and their strata.
    Enumerate {
        #[command(flatten)]
        source: SourceArgs,
        #[command(flatten)]
        run: RunArgs,
        /// Keep and report every system.
        #[arg(long)]
        store: bool,
        /// Write the stratum CSV here.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Width, complexity, realizers and one realizing basis.
    Invariants {
        #[command(flatten)]
        source: SourceArgs,
        #[arg(long, short, default_value_t = 0)]
        jobs: usize,
    },
    /// Stratum sizes as CSV.
    Distribution {
        #[command(flatten)]
        source: SourceArgs,
        #[command(flatten)]
        run: RunArgs,
        /// Write the CSV here instead of stdout.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Maximal rainbows of [1]^n, or SR/DR numbers of [n] x [m].
    Rainbow {
        #[arg(long, conflicts_with = "grid", required_unless_present = "grid")]
        square_free: Option<u32>,
        /// `n,m`
        #[arg(long, value_parser = parse_pair)]
        grid: Option<(u32, u32)>,
    },
    /// Validate a lattice and summarize it.
    Inspect {
        #[command(flatten)]
        source: SourceArgs,
    },
    /// Write a lattice in the JSON interchange format.
    Export {
        /// Any builtin source, e.g. symmetric:4.
        #[arg(long)]
        group: String,
        #[arg(long)]
        out: PathBuf,
    },
}

fn parse_pair(s: &str) -> Result<(u32, u32), String> {
    let (a, b) = s.split_once(',').ok_or("expected n,m")?;
    let n = a.trim().parse().map_err(|e| format!("{a}: {e}"))?;
    let m = b.trim().parse().map_err(|e| format!("{b}: {e}"))?;
    Ok((n, m))
}

#[derive(Debug, Clone, Serialize)]
pub struct LatticeSummary {
    pub name: String,
    pub elements: usize,
    pub arrows: usize,
    pub conjugacy_classes: usize,
}

impl LatticeSummary {
    fn of(l: &GroupLattice) -> Self {
        LatticeSummary {
            name: l.name().to_string(),
            elements: l.len(),
            arrows: l.arrow_count(),
            conjugacy_classes: l.element_orbits().len(),
        }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct RunReport {
    pub command: String,
    pub lattice: Option<LatticeSummary>,
    pub results: Value,
    pub wall_time: f64,
    pub jobs: usize,
}

const SYMBOLS: [char; 8] = ['p', 'q', 'r', 's', 't', 'u', 'v', 'w'];

fn source_error(text: &str, reason: impl Into<String>) -> CliError {
    CliError::Source {
        source_text: text.to_string(),
        reason: reason.into(),
    }
}

/// Exponent vector of a product like `p^2*q`; `1` is the trivial group.
fn parse_cyclic(text: &str, body: &str) -> Result<Vec<u32>, CliError> {
    let body = body.trim();
    if body == "1" {
        return Ok(vec![0]);
    }
    let mut exps: Vec<u32> = Vec::new();
    for factor in body.split('*') {
        let factor = factor.trim();
        let (sym, exp) = match factor.split_once('^') {
            Some((s, e)) => (
                s.trim(),
                e.trim().parse::<u32>().map_err(|e| source_error(text, format!("exponent in {factor:?}: {e}")))?,
            ),
            None => (factor, 1),
        };
        let mut chars = sym.chars();
        let pos = match (chars.next(), chars.next()) {
            (Some(c), None) => SYMBOLS.iter().position(|&s| s == c),
            _ => None,
        }
        .ok_or_else(|| source_error(text, format!("unknown prime symbol {sym:?}, use p, q, r, ...")))?;
        if exps.len() <= pos {
            exps.resize(pos + 1, 0);
        }
        if exps[pos] != 0 {
            return Err(source_error(text, format!("prime {sym} appears twice")));
        }
        if exp == 0 {
            return Err(source_error(text, format!("zero exponent in {factor:?}")));
        }
        exps[pos] = exp;
    }
    Ok(exps)
}

/// Builds a lattice from a builtin source string.
pub fn parse_source(text: &str) -> Result<GroupLattice, CliError> {
    let (kind, body) = text.split_once(':').unwrap_or((text, ""));
    let number = |s: &str| -> Result<u64, CliError> {
        s.trim().parse().map_err(|e| source_error(text, format!("{s:?}: {e}")))
    };
    match kind.trim() {
        "trivial" => Ok(build_chain_product(&[0], None)?),
        "cyclic" => Ok(build_chain_product(&parse_cyclic(text, body)?, None)?),
        "boolean" => {
            let k = number(body)? as usize;
            if k == 0 {
                return Ok(build_chain_product(&[0], None)?);
            }
            Ok(build_chain_product(&vec![1; k], None)?)
        }
        "subspace" => {
            let mut p = None;
            let mut n = None;
            for part in body.split(',') {
                match part.split_once('=') {
                    Some(("p", v)) => p = Some(number(v)?),
                    Some(("n", v)) => n = Some(number(v)?),
                    _ => return Err(source_error(text, format!("expected p=<prime>,n=<dim>, got {part:?}"))),
                }
            }
            let (p, n) = p.zip(n).ok_or_else(|| source_error(text, "both p and n are needed"))?;
            Ok(build_subspace_lattice(p, n as u32)?)
        }
        "symmetric" => {
            let n = number(body)? as usize;
            if !(1..=6).contains(&n) {
                return Err(source_error(text, "symmetric groups are supported for 1 <= n <= 6"));
            }
            Ok(permutation_group_lattice(&format!("S{n}"), n, &symmetric_group_generators(n))?)
        }
        "affine-f8" => Ok(permutation_group_lattice("F8", 8, &affine_f8_generators())?),
        _ => Err(source_error(
            text,
            "expected cyclic:, boolean:, subspace:, symmetric:, affine-f8 or trivial",
        )),
    }
}

fn load(source: &SourceArgs) -> Result<GroupLattice, CliError> {
    match (&source.source, &source.file) {
        (_, Some(path)) => Ok(load_lattice_file(path)?),
        (Some(text), None) => parse_source(text),
        (None, None) => Err(source_error("", "no lattice given")),
    }
}

fn resolved_jobs(jobs: usize) -> usize {
    if jobs > 0 {
        jobs
    } else {
        std::thread::available_parallelism().map_or(1, |n| n.get())
    }
}

fn enumerate_options(
    l: &GroupLattice,
    run: &RunArgs,
    store: bool,
    progress: Option<ProgressFn>,
) -> Result<EnumerateOptions, CliError> {
    if l.arrow_count() > LONG_RUN_ARROWS && !run.long_run {
        return Err(CliError::NeedsLongRun {
            arrows: l.arrow_count(),
            limit: LONG_RUN_ARROWS,
        });
    }
    let spill = match (&run.spill, run.long_run) {
        (Some(dir), _) => Some(SpillOptions::new(dir)),
        (None, true) => Some(SpillOptions::new(default_spill_dir())),
        (None, false) => None,
    };
    Ok(EnumerateOptions {
        store,
        jobs: run.jobs,
        memory_budget: run.memory_budget,
        spill,
        progress,
    })
}

fn arrow_labels(l: &GroupLattice, arrows: &[crate::lattice::Arrow]) -> Vec<[String; 2]> {
    arrows
        .iter()
        .map(|a| [l.element(a.source).label.clone(), l.element(a.target).label.clone()])
        .collect()
}

fn csv_string(strata: &[u64]) -> Result<String, CliError> {
    let mut buf = Vec::new();
    write_distribution_csv(strata, &mut buf)?;
    Ok(String::from_utf8(buf).expect("ascii csv"))
}

/// A finished command: the report plus the text shown without `--json`.
struct Outcome {
    report: RunReport,
    text: String,
}

fn run_command(cli: &Cli, err: &mut dyn Write) -> Result<Outcome, CliError> {
    let started = Instant::now();
    let progress: Option<ProgressFn> = (!cli.quiet).then(|| {
        Arc::new(|p: &crate::enumerate::LayerProgress| {
            eprintln!(
                "layer {}: frontier {}, total {}{}",
                p.layer,
                p.frontier,
                p.total,
                if p.spilled { " (on disk)" } else { "" }
            );
        }) as ProgressFn
    });
    let mut text = String::new();
    let (command, lattice, results, jobs) = match &cli.command {
        Command::Enumerate { source, run, store, out } => {
            let l = load(source)?;
            let summary = LatticeSummary::of(&l);
            let opts = enumerate_options(&l, run, *store, progress)?;
            let tables = ArrowTables::new(l);
            let r = enumerate(&tables, &opts)?;
            if let Some(path) = out {
                std::fs::write(path, csv_string(&r.stratum_counts)?)?;
            }
            text.push_str(&format!("lattice: {} ({} elements, {} arrows)\n", summary.name, summary.elements, summary.arrows));
            text.push_str(&format!("total: {}\n", r.total_count));
            text.push_str(&format!("strata: {:?}\n", r.stratum_counts));
            let mut results = json!({
                "total": r.total_count,
                "strata": r.stratum_counts,
                "spilled": r.spilled,
            });
            if let Some(systems) = &r.systems {
                let listed: Vec<Value> = systems
                    .iter()
                    .map(|(t, layer)| {
                        let arrows = arrow_labels(tables.lattice(), &tables.arrows_of(t.arrows()));
                        json!({ "layer": layer, "arrows": arrows })
                    })
                    .collect();
                for s in &listed {
                    text.push_str(&format!("{s}\n"));
                }
                results["systems"] = Value::Array(listed);
            }
            ("enumerate", Some(summary), results, resolved_jobs(run.jobs))
        }
        Command::Distribution { source, run, out } => {
            let l = load(source)?;
            let summary = LatticeSummary::of(&l);
            let opts = enumerate_options(&l, run, false, progress)?;
            let r = enumerate(&ArrowTables::new(l), &opts)?;
            let csv = csv_string(&r.stratum_counts)?;
            match out {
                Some(path) => std::fs::write(path, &csv)?,
                None => text.push_str(&csv),
            }
            let results = json!({ "total": r.total_count, "strata": r.stratum_counts });
            ("distribution", Some(summary), results, resolved_jobs(run.jobs))
        }
        Command::Invariants { source, jobs } => {
            let l = load(source)?;
            let summary = LatticeSummary::of(&l);
            if l.arrow_count() > LONG_RUN_ARROWS {
                return Err(CliError::NeedsLongRun {
                    arrows: l.arrow_count(),
                    limit: LONG_RUN_ARROWS,
                });
            }
            let tables = ArrowTables::new(l);
            let (w, complete_basis) = width_against_complete(&tables);
            let c = complexity(&tables, *jobs)?;
            let basis = arrow_labels(tables.lattice(), &tables.arrows_of(&c.example_basis.arrows));
            text.push_str(&format!("lattice: {} ({} elements, {} arrows)\n", summary.name, summary.elements, summary.arrows));
            text.push_str(&format!("width: {w}\n"));
            text.push_str(&format!("complexity: {}\n", c.value));
            text.push_str(&format!("realizers: {}\n", c.realizers.len()));
            text.push_str(&format!("total: {}\n", c.total_count));
            text.push_str(&format!("strata: {:?}\n", c.stratum_counts));
            text.push_str("basis:");
            for [s, t] in &basis {
                text.push_str(&format!(" ({s}, {t})"));
            }
            text.push('\n');
            let results = json!({
                "width": w,
                "complete_basis_size": complete_basis,
                "complexity": c.value,
                "realizers": c.realizers.len(),
                "example_basis": basis,
                "total": c.total_count,
                "strata": c.stratum_counts,
                "greedy_fallbacks": c.greedy_fallbacks,
                "stratum_mismatches": c.stratum_mismatches.len(),
            });
            if w != complete_basis {
                return Err(CliError::Check {
                    name: "width-vs-complete-basis",
                    detail: format!("width {w}, complete system basis {complete_basis}"),
                });
            }
            if !c.stratum_mismatches.is_empty() {
                return Err(CliError::Check {
                    name: "stratum-vs-basis-size",
                    detail: format!("{} systems sit in a layer other than their basis size", c.stratum_mismatches.len()),
                });
            }
            ("invariants", Some(summary), results, resolved_jobs(*jobs))
        }
        Command::Rainbow { square_free, grid } => {
            let results = match (square_free, grid) {
                (Some(n), _) => rainbow_square_free(*n, &mut text)?,
                (None, Some((n, m))) => rainbow_grid(*n, *m, &mut text)?,
                (None, None) => unreachable!("clap requires one of the two"),
            };
            ("rainbow", None, results, 1)
        }
        Command::Inspect { source } => {
            let l = load(source)?;
            let summary = LatticeSummary::of(&l);
            let w = width(&l);
            text.push_str(&format!(
                "lattice: {} ({} elements, {} arrows, {} conjugacy classes)\n",
                summary.name, summary.elements, summary.arrows, summary.conjugacy_classes
            ));
            text.push_str(&format!("meet-irreducible classes: {w}\n"));
            let results = json!({ "meet_irreducible_classes": w, "abelian_action": l.is_abelian_action() });
            ("inspect", Some(summary), results, 1)
        }
        Command::Export { group, out } => {
            let l = parse_source(group)?;
            let summary = LatticeSummary::of(&l);
            std::fs::write(out, to_json(&l))?;
            text.push_str(&format!("wrote {} ({} subgroups) to {}\n", summary.name, summary.elements, out.display()));
            ("export", Some(summary), json!({ "path": out }), 1)
        }
    };
    let _ = err.flush();
    Ok(Outcome {
        report: RunReport {
            command: command.to_string(),
            lattice,
            results,
            wall_time: started.elapsed().as_secs_f64(),
            jobs,
        },
        text,
    })
}

fn rainbow_square_free(n: u32, text: &mut String) -> Result<Value, CliError> {
    let formula = rainbow::square_free_complexity_lower(n);
    let canonical = rainbow::canonical_max_rainbows(n);
    text.push_str(&format!("n = {n}: largest rainbow size {formula}\n"));
    for r in &canonical {
        text.push_str(&format!("  maximizer {r} with {} arcs\n", r.len()));
    }
    let mut results = json!({
        "n": n,
        "size": formula.to_string(),
        "maximizers": canonical,
    });
    if n <= rainbow::BRUTE_FORCE_MAX_N {
        let brute = rainbow::brute_force_max_rainbow(n)?;
        text.push_str(&format!("  exhaustive search: size {}, {} maximizers\n", brute.size, brute.argmax.len()));
        results["brute_force"] = json!({ "size": brute.size.to_string(), "maximizers": brute.argmax.len() });
        if brute.size != formula {
            return Err(CliError::Check {
                name: "max-rainbow-vs-formula",
                detail: format!("search found {}, formula gives {formula}", brute.size),
            });
        }
        if brute.argmax != canonical {
            return Err(CliError::Check {
                name: "maximizers-vs-canonical",
                detail: format!("search found {} maximizers", brute.argmax.len()),
            });
        }
    } else {
        text.push_str("  exhaustive search skipped past the guard\n");
    }
    Ok(results)
}

fn rainbow_grid(n: u32, m: u32, text: &mut String) -> Result<Value, CliError> {
    let named = |name: &'static str, e: RainbowError| match e {
        RainbowError::FormulaMismatch { .. } => CliError::Check {
            name,
            detail: e.to_string(),
        },
        other => CliError::Rainbow(other),
    };
    let sr = rainbow::sr_number(n, m).map_err(|e| named("sr-closed-form-vs-enumeration", e))?;
    text.push_str(&format!("SR({n}, {m}) = {sr}\n"));
    let mut results = json!({ "n": n, "m": m, "sr": sr });
    let (big, small) = (n.max(m), n.min(m));
    if small >= 2 && (n + m).is_multiple_of(2) {
        let dr = rainbow::dr_number(n, m).map_err(|e| named("dr-closed-form-vs-enumeration", e))?;
        let augmented = rainbow::double_rainbow_augmented(big, small)?.len() as u64;
        text.push_str(&format!("DR({n}, {m}) = {dr}\n"));
        text.push_str(&format!("augmented double rainbow: {augmented} arrows\n"));
        results["dr"] = json!(dr);
        results["augmented"] = json!(augmented);
        if augmented != dr + 2 {
            return Err(CliError::Check {
                name: "augmented-size",
                detail: format!("{augmented} arrows, expected DR + 2 = {}", dr + 2),
            });
        }
    }
    if small >= 2 {
        let lower = rainbow::conjectured_cpnqm_complexity(n, m)?;
        text.push_str(&format!("complexity lower bound (conjectured value): {lower}\n"));
        results["complexity_lower_bound"] = json!(lower);
    }
    if small == 1 {
        let c = rainbow::cpnq_complexity(big);
        text.push_str(&format!("complexity: {c}\n"));
        results["complexity"] = json!(c);
    }
    Ok(results)
}

/// Parses `args`, runs the command and writes to `out` and `err`. Returns the exit code.
pub fn run_cli<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = e.exit_code();
            let rendered = e.render().to_string();
            let _ = if code == 0 { out.write_all(rendered.as_bytes()) } else { err.write_all(rendered.as_bytes()) };
            return code;
        }
    };
    match run_command(&cli, err) {
        Ok(outcome) => {
            let written = if cli.json {
                writeln!(out, "{}", serde_json::to_string_pretty(&outcome.report).expect("report serializes"))
            } else {
                out.write_all(outcome.text.as_bytes())
            };
            match written {
                Ok(()) => 0,
                Err(e) => {
                    let _ = writeln!(err, "error: {e}");
                    2
                }
            }
        }
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            e.exit_code()
        }
    }
}
