//! Whole-case runs: enumerate, prove every instance in a worker pool,
//! persist per-instance artifacts and a resumable ledger.

use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use std::collections::BTreeMap;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::sync::atomic::{AtomicBool, Ordering};
use std::sync::Mutex;
use std::time::{Duration, Instant};

use super::{decode_assignment, prove_instance, BackendConfig, Limits, Mode, SolveVerdict, Status};
use crate::bounds::BoundsTable;
use crate::encoder::{encode_instance, write_dimacs_file};
use crate::pathcomplex::{enumerate_candidates, io::sequence_digest, CandidateSpec, FilterFlags, PivotSequence};
use crate::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RunConfig {
    pub d: usize,
    pub n: usize,
    pub target_length: usize,
    pub revisits: Vec<usize>,
    pub mode: Mode,
    pub backend: BackendConfig,
    pub time_limit: Option<Duration>,
    pub max_cuts: Option<usize>,
    pub cuts_per_model: usize,
    pub workers: usize,
    pub out_dir: Option<PathBuf>,
    pub seed: u64,
    pub flags: FilterFlags,
    /// 1-based instance indices to run; all when `None`.
    pub only: Option<Vec<usize>>,
    /// Write each instance's base DIMACS file.
    pub write_dimacs: bool,
    /// Settle the case from the bounds table when it already decides it.
    pub use_known_bounds: bool,
}

impl RunConfig {
    pub fn new(d: usize, n: usize, target_length: usize, revisits: Vec<usize>) -> Self {
        RunConfig {
            d,
            n,
            target_length,
            revisits,
            mode: Mode::Lazy,
            backend: BackendConfig::Embedded,
            time_limit: Some(Duration::from_secs(2 * 3600)),
            max_cuts: None,
            cuts_per_model: 64,
            workers: 1,
            out_dir: None,
            seed: 0,
            flags: FilterFlags::default(),
            only: None,
            write_dimacs: true,
            use_known_bounds: true,
        }
    }

    pub fn validate(&self) -> Result<()> {
        if self.workers == 0 {
            return Err(Error::Usage("worker count must be at least 1".into()));
        }
        if self.target_length == 0 {
            return Err(Error::Usage("target length must be positive".into()));
        }
        Ok(())
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct InstanceRecord {
    pub index: usize,
    pub revisits: usize,
    pub digest: String,
    pub pivots: String,
    /// `None` when the run stopped before reaching the instance.
    pub status: Option<Status>,
    pub added_cuts: usize,
    pub solver_calls: usize,
    pub shortcut_candidates: usize,
    pub num_vars: usize,
    pub num_clauses: usize,
    pub model_path: Option<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ReductionCheck {
    /// Instances may leave ground-set elements off the boundary; deleting
    /// them gives a smaller polytope, ruled out when Δ(d,k) < L for k < n.
    pub requirement: String,
    pub holds: bool,
    pub upper_bounds: BTreeMap<usize, Option<usize>>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum CaseConclusion {
    /// Every candidate refuted.
    Refuted { statement: String },
    /// Settled by known bounds without solving.
    Immediate { statement: String },
    Counterexample { index: usize, digest: String },
    Incomplete { missing: Vec<usize> },
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CaseReport {
    pub d: usize,
    pub n: usize,
    pub target_length: usize,
    pub revisits: Vec<usize>,
    pub mode: Mode,
    pub backend: String,
    pub class_counts: BTreeMap<usize, usize>,
    pub instances: Vec<InstanceRecord>,
    pub reduction: Option<ReductionCheck>,
    pub conclusion: CaseConclusion,
    /// Wall-clock seconds; kept apart so the rest is reproducible.
    pub timing: Timing,
}

#[derive(Clone, Debug, Default, PartialEq, Serialize, Deserialize)]
pub struct Timing {
    pub total_seconds: f64,
    pub instance_seconds: BTreeMap<usize, f64>,
}

impl CaseReport {
    /// 0 concluded, 10 counterexample found, 20 incomplete.
    pub fn exit_code(&self) -> i32 {
        match self.conclusion {
            CaseConclusion::Refuted { .. } | CaseConclusion::Immediate { .. } => 0,
            CaseConclusion::Counterexample { .. } => 10,
            CaseConclusion::Incomplete { .. } => 20,
        }
    }
}

#[derive(Clone, Debug, Serialize, Deserialize)]
struct LedgerEntry {
    digest: String,
    record: InstanceRecord,
    seconds: f64,
}

fn read_ledger(path: &Path) -> Result<BTreeMap<String, LedgerEntry>> {
    let mut done = BTreeMap::new();
    let Ok(text) = std::fs::read_to_string(path) else {
        return Ok(done);
    };
    for line in text.lines().filter(|l| !l.trim().is_empty()) {
        // a torn final line from an interrupted run is ignored
        if let Ok(e) = serde_json::from_str::<LedgerEntry>(line) {
            if matches!(e.record.status, Some(Status::Sat | Status::Unsat)) {
                done.insert(e.digest.clone(), e);
            }
        }
    }
    Ok(done)
}

fn reduction_check(cfg: &RunConfig, bounds: &BoundsTable) -> Option<ReductionCheck> {
    if cfg.n <= 2 * cfg.d {
        return None;
    }
    let upper_bounds: BTreeMap<usize, Option<usize>> =
        (cfg.d + 1..cfg.n).map(|k| (k, bounds.upper(cfg.d, k))).collect();
    let holds = upper_bounds.values().all(|h| h.is_some_and(|h| h < cfg.target_length));
    Some(ReductionCheck {
        requirement: format!("Δ({},k) < {} for all k < {}", cfg.d, cfg.target_length, cfg.n),
        holds,
        upper_bounds,
    })
}

fn diameter_statement(cfg: &RunConfig, bounds: &BoundsTable) -> String {
    let hi = cfg.target_length - 1;
    match bounds.lower(cfg.d, cfg.n) {
        Some(lo) if lo >= hi => format!("Δ({},{}) = {hi}", cfg.d, cfg.n),
        _ => format!("Δ({},{}) ≤ {hi}", cfg.d, cfg.n),
    }
}

pub fn run_case(cfg: &RunConfig) -> Result<CaseReport> {
    cfg.validate()?;
    let started = Instant::now();
    let bounds = BoundsTable::known();
    let mut report = CaseReport {
        d: cfg.d,
        n: cfg.n,
        target_length: cfg.target_length,
        revisits: cfg.revisits.clone(),
        mode: cfg.mode,
        backend: cfg.backend.name(),
        class_counts: BTreeMap::new(),
        instances: Vec::new(),
        reduction: None,
        conclusion: CaseConclusion::Incomplete { missing: Vec::new() },
        timing: Timing::default(),
    };
    let decided = |v: Option<usize>| v.filter(|_| cfg.use_known_bounds);
    if let Some(lo) = decided(bounds.lower(cfg.d, cfg.n)).filter(|&lo| lo >= cfg.target_length) {
        report.conclusion = CaseConclusion::Immediate {
            statement: format!("Δ({},{}) ≥ {lo} is known; length {} is attained", cfg.d, cfg.n, cfg.target_length),
        };
        return finish(cfg, report, started);
    }
    if let Some(hi) = decided(bounds.upper(cfg.d, cfg.n)).filter(|&hi| hi < cfg.target_length) {
        report.conclusion = CaseConclusion::Immediate {
            statement: format!("Δ({},{}) ≤ {hi} is known; no path of length {} exists", cfg.d, cfg.n, cfg.target_length),
        };
        return finish(cfg, report, started);
    }
    let mut spec = CandidateSpec::new(cfg.d, cfg.n, cfg.target_length, cfg.revisits.clone());
    spec.flags = cfg.flags;
    let set = enumerate_candidates(&spec, &bounds)?;
    for c in &set.classes {
        report.class_counts.insert(c.revisits, c.sequences.len());
    }
    report.reduction = reduction_check(cfg, &bounds);

    let all: Vec<(usize, usize, &PivotSequence)> = set
        .classes
        .iter()
        .flat_map(|c| c.sequences.iter().map(move |s| (c.revisits, s)))
        .enumerate()
        .map(|(i, (r, s))| (i + 1, r, s))
        .collect();
    if let Some(bad) = cfg.only.iter().flatten().find(|&&i| i == 0 || i > all.len()) {
        return Err(Error::Usage(format!("instance {bad} out of range 1..={}", all.len())));
    }
    let selected: Vec<&(usize, usize, &PivotSequence)> = all
        .iter()
        .filter(|(i, _, _)| cfg.only.as_ref().is_none_or(|o| o.contains(i)))
        .collect();

    if let Some(dir) = &cfg.out_dir {
        std::fs::create_dir_all(dir)?;
    }
    let ledger_path = cfg.out_dir.as_ref().map(|d| d.join("ledger.jsonl"));
    let done = match &ledger_path {
        Some(p) => read_ledger(p)?,
        None => BTreeMap::new(),
    };
    let ledger = Mutex::new(match &ledger_path {
        Some(p) => Some(std::fs::OpenOptions::new().create(true).append(true).open(p)?),
        None => None,
    });
    let stop = AtomicBool::new(false);
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(cfg.workers)
        .build()
        .map_err(|e| Error::Backend(format!("worker pool: {e}")))?;
    let limits = Limits {
        time_limit: cfg.time_limit,
        max_cuts: cfg.max_cuts,
        cuts_per_model: cfg.cuts_per_model,
        seed: cfg.seed,
    };

    let results: Vec<Result<(InstanceRecord, f64)>> = pool.install(|| {
        selected
            .par_iter()
            .map(|&&(index, revisits, seq)| {
                let digest = sequence_digest(seq);
                if let Some(e) = done.get(&digest) {
                    let mut rec = e.record.clone();
                    rec.index = index;
                    return Ok((rec, e.seconds));
                }
                let mut rec = InstanceRecord {
                    index,
                    revisits,
                    digest: digest.clone(),
                    pivots: seq.to_line(),
                    status: None,
                    added_cuts: 0,
                    solver_calls: 0,
                    shortcut_candidates: 0,
                    num_vars: 0,
                    num_clauses: 0,
                    model_path: None,
                };
                if stop.load(Ordering::SeqCst) {
                    return Ok((rec, 0.0));
                }
                let pc = seq.to_path_complex(cfg.n)?;
                let dir = cfg.out_dir.as_ref().map(|d| d.join(&digest));
                if let Some(dir) = &dir {
                    std::fs::create_dir_all(dir)?;
                    std::fs::write(dir.join("pivots.txt"), format!("{}\n", rec.pivots))?;
                    if cfg.write_dimacs {
                        let (f, vars) = encode_instance(&pc)?;
                        write_dimacs_file(&f, &vars, &dir.join("instance.cnf"))?;
                    }
                }
                let verdict = prove_instance(&pc, cfg.mode, &cfg.backend, &limits)?;
                log::info!(
                    "instance {index} [{digest}] {:?} after {} cuts in {:.1}s",
                    verdict.status,
                    verdict.added_cuts,
                    verdict.wall_time
                );
                fill(&mut rec, &verdict);
                if let Some(dir) = &dir {
                    if let Some(model) = &verdict.model {
                        let chi = decode_assignment(model, pc.n(), pc.d() + 1)?;
                        let path = dir.join("counterexample.chirotope");
                        std::fs::write(&path, chi.to_text())?;
                        rec.model_path = Some(path.to_string_lossy().into_owned());
                    }
                    let mut v = serde_json::to_value(&verdict)?;
                    if let Some(obj) = v.as_object_mut() {
                        obj.remove("model");
                        obj.insert("model_path".into(), serde_json::to_value(&rec.model_path)?);
                    }
                    std::fs::write(dir.join("verdict.json"), serde_json::to_string_pretty(&v)?)?;
                }
                if verdict.status == Status::Sat {
                    stop.store(true, Ordering::SeqCst);
                }
                if let Some(file) = ledger.lock().unwrap().as_mut() {
                    let entry = LedgerEntry { digest, record: rec.clone(), seconds: verdict.wall_time };
                    writeln!(file, "{}", serde_json::to_string(&entry)?)?;
                    file.flush()?;
                }
                Ok((rec, verdict.wall_time))
            })
            .collect()
    });
    for r in results {
        let (rec, secs) = r?;
        report.timing.instance_seconds.insert(rec.index, secs);
        report.instances.push(rec);
    }
    report.instances.sort_by_key(|r| r.index);

    report.conclusion = if let Some(r) = report.instances.iter().find(|r| r.status == Some(Status::Sat)) {
        CaseConclusion::Counterexample { index: r.index, digest: r.digest.clone() }
    } else {
        let missing: Vec<usize> = all
            .iter()
            .map(|(i, _, _)| *i)
            .filter(|i| !report.instances.iter().any(|r| r.index == *i && r.status == Some(Status::Unsat)))
            .collect();
        let reduction_ok = report.reduction.as_ref().is_none_or(|c| c.holds);
        if missing.is_empty() && reduction_ok {
            CaseConclusion::Refuted { statement: diameter_statement(cfg, &bounds) }
        } else {
            CaseConclusion::Incomplete { missing }
        }
    };
    finish(cfg, report, started)
}

fn fill(rec: &mut InstanceRecord, v: &SolveVerdict) {
    rec.status = Some(v.status);
    rec.added_cuts = v.added_cuts;
    rec.solver_calls = v.solver_calls;
    rec.shortcut_candidates = v.shortcut_candidates;
    rec.num_vars = v.num_vars;
    rec.num_clauses = v.num_clauses;
}

fn finish(cfg: &RunConfig, mut report: CaseReport, started: Instant) -> Result<CaseReport> {
    report.timing.total_seconds = started.elapsed().as_secs_f64();
    if let Some(dir) = &cfg.out_dir {
        std::fs::create_dir_all(dir)?;
        std::fs::write(dir.join("report.json"), serde_json::to_string_pretty(&report)?)?;
    }
    Ok(report)
}
