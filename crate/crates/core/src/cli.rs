//! Command-line front end.

use clap::{Args, Parser, Subcommand, ValueEnum};
use std::io::Write;
use std::path::PathBuf;
use std::time::Duration;

use crate::bounds::{propagate, base_facts, computed_facts, BoundsTable};
use crate::chirotope::Chirotope;
use crate::encoder::{add_forbid_shortcut, emit_dimacs, encode_gp_axioms, encode_instance, parse_dimacs, EncodingManifest, VarIndex};
use crate::pathcomplex::{enumerate_candidates, io, CandidateSpec, FilterFlags, PivotSequence};
use crate::prover::{check_model, run_case, BackendConfig, Mode, RunConfig, SolveOutcome};
use crate::shortcuts::for_each_shortcut_candidate;
use crate::{Error, Result};

#[derive(Parser, Debug)]
#[command(name = "facetpath", version, about = "Refute long geodesic facet paths in matroid polytopes")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// List candidate pivot sequences after all filters.
    Enumerate(EnumerateArgs),
    /// Write the CNF instance of one candidate (or the bare axioms).
    Encode(EncodeArgs),
    /// Refute every candidate of a case.
    Prove(ProveArgs),
    /// Print the bounds table for Δ(d, n).
    Bounds(BoundsArgs),
    /// Re-check a chirotope against a pivot sequence.
    Verify(VerifyArgs),
    /// Solve a DIMACS file with the embedded solver (competition output).
    Solve(SolveArgs),
}

#[derive(Args, Debug, Clone)]
pub struct CaseArgs {
    #[arg(long)]
    pub d: usize,
    #[arg(long)]
    pub n: usize,
    /// Number of pivots of the paths to refute.
    #[arg(long)]
    pub length: usize,
    /// Revisit counts: `1`, `0..3` (inclusive) or `0,2`.
    #[arg(long, default_value = "0..3")]
    pub revisits: IndexList,
    /// Also prune revisiting sequences with the unique-end-column rule.
    #[arg(long)]
    pub not_uniq_on_revisits: bool,
    /// Disable the unique-end-column rule entirely.
    #[arg(long)]
    pub no_not_uniq: bool,
}

impl CaseArgs {
    fn flags(&self) -> FilterFlags {
        FilterFlags {
            not_uniq: !self.no_not_uniq,
            not_uniq_on_revisits: self.not_uniq_on_revisits,
            ..FilterFlags::default()
        }
    }

    fn spec(&self) -> CandidateSpec {
        let mut s = CandidateSpec::new(self.d, self.n, self.length, self.revisits.0.clone());
        s.flags = self.flags();
        s
    }
}

/// `a..b` (inclusive), `a`, or a comma list.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IndexList(pub Vec<usize>);

impl std::str::FromStr for IndexList {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, String> {
        parse_range(s).map(IndexList)
    }
}

pub fn parse_range(s: &str) -> std::result::Result<Vec<usize>, String> {
    let bad = |e: std::num::ParseIntError| format!("{s:?}: {e}");
    if let Some((a, b)) = s.split_once("..") {
        let b = b.strip_prefix('=').unwrap_or(b);
        let (a, b): (usize, usize) = (a.trim().parse().map_err(bad)?, b.trim().parse().map_err(bad)?);
        if a > b {
            return Err(format!("empty range {s:?}"));
        }
        return Ok((a..=b).collect());
    }
    s.split(',').map(|t| t.trim().parse().map_err(bad)).collect()
}

#[derive(Args, Debug)]
pub struct EnumerateArgs {
    #[command(flatten)]
    pub case: CaseArgs,
    /// Candidate list destination (stdout if omitted).
    #[arg(long)]
    pub out: Option<PathBuf>,
    /// JSON manifest destination.
    #[arg(long)]
    pub manifest: Option<PathBuf>,
}

#[derive(Args, Debug)]
pub struct EncodeArgs {
    /// Bare chirotope axioms on `--n` elements of rank `--r`.
    #[arg(long, conflicts_with_all = ["d", "pivots", "index"])]
    pub axioms_only: bool,
    #[arg(long, requires = "axioms_only")]
    pub r: Option<usize>,
    #[arg(long)]
    pub d: Option<usize>,
    #[arg(long)]
    pub n: usize,
    /// Pivot line `(l,e) (l,e) ...`.
    #[arg(long, conflicts_with = "index")]
    pub pivots: Option<String>,
    /// 1-based index into the enumerated candidates of `--d --n --length --revisits`.
    #[arg(long, requires_all = ["length"])]
    pub index: Option<usize>,
    #[arg(long)]
    pub length: Option<usize>,
    #[arg(long, default_value = "0..3")]
    pub revisits: IndexList,
    /// Include every eager shortcut-forbidding pair.
    #[arg(long)]
    pub shortcuts: bool,
    #[arg(long)]
    pub out: Option<PathBuf>,
    #[arg(long)]
    pub manifest: Option<PathBuf>,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
pub enum BackendKind {
    Embedded,
    External,
}

#[derive(Args, Debug)]
pub struct ProveArgs {
    #[command(flatten)]
    pub case: CaseArgs,
    #[arg(long, value_enum, default_value = "lazy")]
    pub mode: Mode,
    #[arg(long, value_enum, default_value = "embedded", env = "FACETPATH_BACKEND")]
    pub backend: BackendKind,
    /// External solver executable.
    #[arg(long, env = "FACETPATH_SOLVER")]
    pub solver: Option<PathBuf>,
    /// Arguments for the external solver; `{input}` and `{seed}` are substituted.
    #[arg(long, env = "FACETPATH_SOLVER_ARGS", default_value = "{input}", allow_hyphen_values = true)]
    pub solver_args: String,
    /// Per-instance wall-clock limit in seconds.
    #[arg(long, env = "FACETPATH_TIME_LIMIT", default_value_t = 7200.0)]
    pub time_limit: f64,
    #[arg(long)]
    pub max_cuts: Option<usize>,
    /// Shortest realized shortcuts cut per lazy round.
    #[arg(long, default_value_t = 64)]
    pub cuts_per_model: usize,
    #[arg(long, default_value_t = 1)]
    pub workers: usize,
    #[arg(long)]
    pub out_dir: Option<PathBuf>,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    /// Only these 1-based instance indices (`3`, `1..4`, `1,5`).
    #[arg(long)]
    pub only: Option<IndexList>,
    /// Skip writing per-instance DIMACS files.
    #[arg(long)]
    pub no_dimacs: bool,
    /// Solve even when the bounds table already settles the case.
    #[arg(long)]
    pub ignore_known_bounds: bool,
}

impl ProveArgs {
    pub fn run_config(&self) -> Result<RunConfig> {
        let mut cfg = RunConfig::new(self.case.d, self.case.n, self.case.length, self.case.revisits.0.clone());
        cfg.flags = self.case.flags();
        cfg.mode = self.mode;
        cfg.backend = match self.backend {
            BackendKind::Embedded => BackendConfig::Embedded,
            BackendKind::External => {
                let program = self
                    .solver
                    .clone()
                    .ok_or_else(|| Error::Usage("external backend needs --solver".into()))?;
                BackendConfig::External {
                    program,
                    args: self.solver_args.split_whitespace().map(String::from).collect(),
                }
            }
        };
        if self.time_limit.is_nan() || self.time_limit <= 0.0 {
            return Err(Error::Usage("time limit must be positive".into()));
        }
        cfg.time_limit = Some(Duration::from_secs_f64(self.time_limit));
        cfg.max_cuts = self.max_cuts;
        cfg.cuts_per_model = self.cuts_per_model.max(1);
        cfg.workers = self.workers;
        cfg.out_dir = self.out_dir.clone();
        cfg.seed = self.seed;
        cfg.only = self.only.as_ref().map(|l| l.0.clone());
        cfg.write_dimacs = !self.no_dimacs;
        cfg.use_known_bounds = !self.ignore_known_bounds;
        Ok(cfg)
    }
}

#[derive(Args, Debug)]
pub struct BoundsArgs {
    /// Include the computed values Δ(6,12) = 6 and Δ(4,11) = 6.
    #[arg(long)]
    pub computed: bool,
    #[arg(long, default_value = "4..7")]
    pub dims: IndexList,
    /// Values of n - d.
    #[arg(long, default_value = "4..7")]
    pub slack: IndexList,
    #[arg(long)]
    pub json: bool,
}

#[derive(Args, Debug)]
pub struct VerifyArgs {
    /// Chirotope file (`n r` header, one sign per basis).
    #[arg(long)]
    pub model: PathBuf,
    #[arg(long)]
    pub d: usize,
    /// Pivot line of the instance; omit to check the axioms only.
    #[arg(long)]
    pub pivots: Option<String>,
}

#[derive(Args, Debug)]
pub struct SolveArgs {
    pub input: PathBuf,
    #[arg(long)]
    pub time_limit: Option<f64>,
}

fn write_out(path: &Option<PathBuf>, text: &str) -> Result<()> {
    match path {
        Some(p) => std::fs::write(p, text)?,
        None => {
            let mut out = std::io::stdout().lock();
            out.write_all(text.as_bytes())?;
        }
    }
    Ok(())
}

/// Runs a parsed command and returns the process exit code.
pub fn run(cli: Cli) -> Result<i32> {
    match cli.command {
        Command::Enumerate(a) => cmd_enumerate(&a),
        Command::Encode(a) => cmd_encode(&a),
        Command::Prove(a) => cmd_prove(&a),
        Command::Bounds(a) => cmd_bounds(&a),
        Command::Verify(a) => cmd_verify(&a),
        Command::Solve(a) => cmd_solve(&a),
    }
}

pub fn cmd_enumerate(a: &EnumerateArgs) -> Result<i32> {
    let set = enumerate_candidates(&a.case.spec(), &BoundsTable::known())?;
    for c in &set.classes {
        log::info!("revisits={} raw={} kept={}", c.revisits, c.raw_count, c.sequences.len());
    }
    write_out(&a.out, &io::render_candidates(&set))?;
    if let Some(m) = &a.manifest {
        std::fs::write(m, serde_json::to_string_pretty(&io::CandidateManifest::from(&set))?)?;
    }
    Ok(0)
}

fn selected_sequence(a: &EncodeArgs, d: usize) -> Result<PivotSequence> {
    if let Some(line) = &a.pivots {
        return PivotSequence::from_pivots(d, io::parse_pivot_line(line)?);
    }
    let (Some(index), Some(length)) = (a.index, a.length) else {
        return Err(Error::Usage("give --pivots or --index with --length".into()));
    };
    let spec = CandidateSpec::new(d, a.n, length, a.revisits.0.clone());
    let set = enumerate_candidates(&spec, &BoundsTable::known())?;
    let found = set.sequences().nth(index.wrapping_sub(1)).cloned();
    found.ok_or_else(|| Error::Usage(format!("instance {index} out of range 1..={}", set.count())))
}

pub fn cmd_encode(a: &EncodeArgs) -> Result<i32> {
    let (f, vars, path, shortcuts) = if a.axioms_only {
        let r = a.r.ok_or_else(|| Error::Usage("--axioms-only needs --r".into()))?;
        (encode_gp_axioms(a.n, r), VarIndex::new(a.n, r), Vec::new(), Vec::new())
    } else {
        let d = a.d.ok_or_else(|| Error::Usage("--d is required".into()))?;
        let seq = selected_sequence(a, d)?;
        let pc = seq.to_path_complex(a.n)?;
        let (mut f, vars) = encode_instance(&pc)?;
        let mut shortcuts = Vec::new();
        if a.shortcuts {
            let mut failure = None;
            for_each_shortcut_candidate(&pc, |sc| {
                shortcuts.push(sc.to_vec());
                std::ops::ControlFlow::Continue(())
            });
            for sc in &shortcuts {
                if let Err(e) = add_forbid_shortcut(&mut f, sc, &vars) {
                    failure = Some(e);
                    break;
                }
            }
            if let Some(e) = failure {
                return Err(e);
            }
        }
        (f, vars, pc.facets().to_vec(), shortcuts)
    };
    let expected = 16
        * crate::combinatorics::binomial(vars.n(), vars.r().saturating_sub(2))
        * crate::combinatorics::binomial((vars.n() + 2).saturating_sub(vars.r()), 4);
    let counts = f.counts();
    let expected = if vars.r() >= 2 && vars.n() >= vars.r() + 2 { expected } else { 0 };
    log::info!(
        "{} variables, {} clauses (gp {}, expected {expected}; path units {}; shortcut {})",
        f.num_vars(),
        f.len(),
        counts.gp,
        counts.path_units,
        counts.shortcut
    );
    if counts.gp as u64 != expected {
        return Err(Error::Backend(format!("GP clause count {} differs from {expected}", counts.gp)));
    }
    match &a.out {
        Some(p) => emit_dimacs(&f, Some(&vars), std::fs::File::create(p)?)?,
        None => emit_dimacs(&f, Some(&vars), std::io::stdout().lock())?,
    }
    if let Some(m) = &a.manifest {
        let manifest = EncodingManifest::new(&f, &vars, &path, &shortcuts);
        std::fs::write(m, serde_json::to_string_pretty(&manifest)?)?;
    }
    Ok(0)
}

pub fn cmd_prove(a: &ProveArgs) -> Result<i32> {
    let cfg = a.run_config()?;
    let report = run_case(&cfg)?;
    println!("{}", serde_json::to_string_pretty(&report)?);
    Ok(report.exit_code())
}

pub fn cmd_bounds(a: &BoundsArgs) -> Result<i32> {
    let computed = if a.computed { computed_facts() } else { Vec::new() };
    let d_max = a.dims.0.iter().chain(&a.slack.0).copied().max().unwrap_or(0).max(8);
    let table = propagate(&base_facts(), &computed, d_max, d_max)?;
    if a.json {
        let entries: Vec<_> = table
            .entries()
            .filter(|e| a.dims.0.contains(&e.d) && a.slack.0.contains(&(e.n - e.d)))
            .collect();
        println!("{}", serde_json::to_string_pretty(&entries)?);
    } else {
        let lo_d = *a.dims.0.iter().min().unwrap_or(&1);
        let hi_d = *a.dims.0.iter().max().unwrap_or(&1);
        let lo_s = *a.slack.0.iter().min().unwrap_or(&1);
        let hi_s = *a.slack.0.iter().max().unwrap_or(&1);
        print!("{}", table.render(lo_d..=hi_d, lo_s..=hi_s));
    }
    Ok(0)
}

pub fn cmd_verify(a: &VerifyArgs) -> Result<i32> {
    let chi = Chirotope::from_text(&std::fs::read_to_string(&a.model)?)?;
    if chi.r() != a.d + 1 {
        return Err(Error::Usage(format!("model has rank {}, expected {}", chi.r(), a.d + 1)));
    }
    let (passed, json) = match &a.pivots {
        Some(line) => {
            let seq = PivotSequence::from_pivots(a.d, io::parse_pivot_line(line)?)?;
            let pc = seq.to_path_complex(chi.n())?;
            let check = check_model(&chi, &pc);
            (check.passed(), serde_json::to_value(&check)?)
        }
        None => {
            let w = chi.axiom_violation();
            (w.is_none(), serde_json::json!({ "axioms_hold": w.is_none(), "axiom_witness": w }))
        }
    };
    println!("{}", serde_json::to_string_pretty(&json)?);
    Ok(if passed { 0 } else { 1 })
}

/// Exit codes follow the SAT competition: 10 satisfiable, 20 unsatisfiable.
pub fn cmd_solve(a: &SolveArgs) -> Result<i32> {
    let f = parse_dimacs(&std::fs::read_to_string(&a.input)?)?;
    let backend = BackendConfig::Embedded;
    let mut s = backend.session(f.num_vars(), 0);
    for c in f.clauses() {
        s.add_clause(c);
    }
    let deadline = a.time_limit.map(|t| std::time::Instant::now() + Duration::from_secs_f64(t));
    let mut out = std::io::stdout().lock();
    Ok(match s.solve(deadline)? {
        SolveOutcome::Sat => {
            writeln!(out, "s SATISFIABLE")?;
            let mut line = String::from("v");
            for (i, v) in s.model().iter().enumerate() {
                let lit = if v.unwrap_or(false) { i as i64 + 1 } else { -(i as i64 + 1) };
                line.push_str(&format!(" {lit}"));
            }
            writeln!(out, "{line} 0")?;
            10
        }
        SolveOutcome::Unsat => {
            writeln!(out, "s UNSATISFIABLE")?;
            20
        }
        SolveOutcome::Interrupted => {
            writeln!(out, "s UNKNOWN")?;
            0
        }
    })
}
