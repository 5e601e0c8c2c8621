//! Per-instance refutation and case orchestration.

mod backend;
mod case;

pub use backend::{parse_solver_output, BackendConfig, SatSession, SolveOutcome};
pub use case::{run_case, CaseConclusion, CaseReport, InstanceRecord, ReductionCheck, RunConfig};

use serde::{Deserialize, Serialize};
use std::ops::ControlFlow;
use std::time::{Duration, Instant};

use crate::chirotope::Chirotope;
use crate::encoder::{
    clause_satisfied, compute_path_signs, encode_forbid_shortcut, encode_instance, CnfFormula, VarIndex,
};
use crate::pathcomplex::PathComplex;
use crate::shortcuts::{find_realized_shortcuts, for_each_shortcut_candidate};
use crate::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize, clap::ValueEnum)]
#[serde(rename_all = "lowercase")]
pub enum Mode {
    /// All inclusion-minimal shortcut candidates up front.
    Eager,
    /// Cut off the shortest shortcuts realized by each candidate model, then re-solve.
    Lazy,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "UPPERCASE")]
pub enum Status {
    Sat,
    Unsat,
    Timeout,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Limits {
    pub time_limit: Option<Duration>,
    /// Stop the lazy loop after this many cuts (reported as a timeout).
    pub max_cuts: Option<usize>,
    /// Shortest realized shortcuts cut per lazy round (at least 1).
    pub cuts_per_model: usize,
    pub seed: u64,
}

impl Default for Limits {
    fn default() -> Self {
        Limits { time_limit: None, max_cuts: None, cuts_per_model: 64, seed: 0 }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SolveVerdict {
    pub status: Status,
    /// `model[v-1]` is the value of variable v; present iff SAT.
    pub model: Option<Vec<bool>>,
    pub added_cuts: usize,
    pub solver_calls: usize,
    /// Forbid-clause pairs emitted up front (eager mode).
    pub shortcut_candidates: usize,
    pub num_vars: usize,
    pub num_clauses: usize,
    pub wall_time: f64,
}

/// Reads a chirotope from a total assignment (`true` ⇔ sign +).
pub fn decode_model(model: &[Option<bool>], n: usize, r: usize) -> Result<Chirotope> {
    let vars = VarIndex::new(n, r);
    if model.len() < vars.num_vars() {
        return Err(Error::PartialAssignment(model.len() + 1));
    }
    let mut signs = Vec::with_capacity(vars.num_vars());
    for (i, v) in model[..vars.num_vars()].iter().enumerate() {
        match v {
            Some(true) => signs.push(1),
            Some(false) => signs.push(-1),
            None => return Err(Error::PartialAssignment(i + 1)),
        }
    }
    Chirotope::new(n, r, signs)
}

/// [`decode_model`] for an assignment known to be total.
pub fn decode_assignment(model: &[bool], n: usize, r: usize) -> Result<Chirotope> {
    let vars = VarIndex::new(n, r);
    if model.len() < vars.num_vars() {
        return Err(Error::PartialAssignment(model.len() + 1));
    }
    Chirotope::new(n, r, model[..vars.num_vars()].iter().map(|&b| if b { 1 } else { -1 }).collect())
}

/// Independent checks of a claimed counterexample.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ModelCheck {
    pub axioms_hold: bool,
    pub axiom_witness: Option<crate::chirotope::AxiomWitness>,
    /// Every facet of the path is a facet of the chirotope, oriented as σ.
    pub path_on_boundary: bool,
    pub boundary_distance: Option<usize>,
    pub geodesic: bool,
    /// Elements on no facet; non-empty means the model is not a matroid
    /// polytope on the full ground set.
    pub uncovered: Vec<u32>,
}

impl ModelCheck {
    pub fn passed(&self) -> bool {
        self.axioms_hold && self.path_on_boundary && self.geodesic
    }
}

pub fn check_model(chi: &Chirotope, pc: &PathComplex) -> ModelCheck {
    let witness = chi.axiom_violation();
    let signs = compute_path_signs(pc.facets());
    let path_on_boundary = pc.facets().iter().zip(&signs.sigma).all(|(f, &s)| {
        crate::combinatorics::complement(f, chi.n())
            .into_iter()
            .all(|x| chi.extension_sign(f, x) == s)
    });
    let report = chi.facets_of();
    let distance = if report.contains(pc.first()) && report.contains(pc.last()) {
        crate::chirotope::shortest_facet_path(&report.facets, pc.first(), pc.last()).map(|p| p.len() - 1)
    } else {
        None
    };
    ModelCheck {
        axioms_hold: witness.is_none(),
        axiom_witness: witness,
        path_on_boundary,
        boundary_distance: distance,
        geodesic: distance.is_some_and(|d| d >= pc.length()),
        uncovered: report.uncovered,
    }
}

fn gp_and_path(pc: &PathComplex) -> Result<(CnfFormula, VarIndex)> {
    if pc.facets().is_empty() {
        return Err(Error::Usage("empty path complex".into()));
    }
    encode_instance(pc)
}

/// Refutes (UNSAT) or realizes (SAT, re-verified) `pc` as a geodesic
/// boundary path of a uniform chirotope of rank d+1 on `pc.n()` elements.
pub fn prove_instance(pc: &PathComplex, mode: Mode, backend: &BackendConfig, limits: &Limits) -> Result<SolveVerdict> {
    let start = Instant::now();
    let deadline = limits.time_limit.map(|t| start + t);
    let (base, vars) = gp_and_path(pc)?;
    let mut session = backend.session(vars.num_vars(), limits.seed);
    for c in base.clauses() {
        session.add_clause(c);
    }
    let mut verdict = SolveVerdict {
        status: Status::Timeout,
        model: None,
        added_cuts: 0,
        solver_calls: 0,
        shortcut_candidates: 0,
        num_vars: vars.num_vars(),
        num_clauses: base.len(),
        wall_time: 0.0,
    };
    let mut cuts: Vec<Vec<i32>> = Vec::new();
    if mode == Mode::Eager {
        let mut failure = None;
        verdict.shortcut_candidates = for_each_shortcut_candidate(pc, |sc| match encode_forbid_shortcut(sc, &vars) {
            Ok(pair) => {
                session.add_clause(&pair[0]);
                session.add_clause(&pair[1]);
                ControlFlow::Continue(())
            }
            Err(e) => {
                failure = Some(e);
                ControlFlow::Break(())
            }
        });
        if let Some(e) = failure {
            return Err(e);
        }
        verdict.num_clauses += 2 * verdict.shortcut_candidates;
    }
    loop {
        if deadline.is_some_and(|d| Instant::now() >= d) {
            break;
        }
        verdict.solver_calls += 1;
        match session.solve(deadline)? {
            SolveOutcome::Unsat => {
                verdict.status = Status::Unsat;
                break;
            }
            SolveOutcome::Interrupted => break,
            SolveOutcome::Sat => {
                let raw = session.model();
                // unconstrained variables may be left unreported
                let model: Vec<bool> = raw.iter().map(|v| v.unwrap_or(false)).collect();
                let chi = decode_assignment(&model, vars.n(), vars.r())?;
                let shortcuts = match mode {
                    Mode::Eager => Vec::new(),
                    Mode::Lazy => find_realized_shortcuts(&chi, pc, limits.cuts_per_model.max(1))?,
                };
                if shortcuts.is_empty() {
                    recheck_sat(pc, mode, &base, &cuts, &vars, &model, &chi)?;
                    verdict.status = Status::Sat;
                    verdict.model = Some(model);
                    break;
                }
                for sc in &shortcuts {
                    let pair = encode_forbid_shortcut(&sc.facets, &vars)?;
                    // the model triggering a cut must violate it
                    if pair.iter().all(|c| clause_satisfied(c, &model)) {
                        return Err(Error::Backend(format!(
                            "shortcut {:?} does not cut off the current model",
                            sc.facets
                        )));
                    }
                    for c in &pair {
                        session.add_clause(c);
                    }
                    cuts.extend(pair);
                    verdict.added_cuts += 1;
                    verdict.num_clauses += 2;
                }
                log::debug!("round {}: {} cuts in total", verdict.solver_calls, verdict.added_cuts);
                if limits.max_cuts.is_some_and(|m| verdict.added_cuts >= m) {
                    break;
                }
            }
        }
    }
    verdict.wall_time = start.elapsed().as_secs_f64();
    Ok(verdict)
}

fn recheck_sat(
    pc: &PathComplex,
    mode: Mode,
    base: &CnfFormula,
    cuts: &[Vec<i32>],
    vars: &VarIndex,
    model: &[bool],
    chi: &Chirotope,
) -> Result<()> {
    if let Some(i) = base.first_falsified(model) {
        return Err(Error::Backend(format!("model falsifies clause {:?}", base.clauses()[i])));
    }
    if let Some(c) = cuts.iter().find(|c| !clause_satisfied(c, model)) {
        return Err(Error::Backend(format!("model falsifies cut {c:?}")));
    }
    if mode == Mode::Eager {
        let mut bad = None;
        for_each_shortcut_candidate(pc, |sc| {
            let pair = encode_forbid_shortcut(sc, vars).expect("encoded before");
            if pair.iter().any(|c| !clause_satisfied(c, model)) {
                bad = Some(sc.to_vec());
                return ControlFlow::Break(());
            }
            ControlFlow::Continue(())
        });
        if let Some(sc) = bad {
            return Err(Error::Backend(format!("model falsifies forbid pair of {sc:?}")));
        }
    }
    let check = check_model(chi, pc);
    if !check.passed() {
        return Err(Error::Backend(format!("SAT model failed re-verification: {check:?}")));
    }
    Ok(())
}
