//! SAT backends: the embedded CaDiCaL library or any DIMACS-reading
//! executable that prints `s SATISFIABLE` / `s UNSATISFIABLE` and `v` lines.

use serde::{Deserialize, Serialize};
use std::io::{Read, Write};
use std::path::PathBuf;
use std::process::{Command, Stdio};
use std::time::{Duration, Instant};

use crate::encoder::Literal;
use crate::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SolveOutcome {
    Sat,
    Unsat,
    Interrupted,
}

/// One incremental solving context over variables `1..=num_vars`.
pub trait SatSession: Send {
    fn add_clause(&mut self, clause: &[Literal]);

    fn solve(&mut self, deadline: Option<Instant>) -> Result<SolveOutcome>;

    /// Value per variable after a `Sat` outcome; `None` if unreported.
    fn model(&self) -> Vec<Option<bool>>;
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "lowercase")]
#[derive(Default)]
pub enum BackendConfig {
    /// CaDiCaL linked into the binary; supports incremental clause addition.
    #[default]
    Embedded,
    /// `args` may contain `{input}` (DIMACS path) and `{seed}`.
    External { program: PathBuf, args: Vec<String> },
}


impl BackendConfig {
    pub fn external(program: impl Into<PathBuf>) -> Self {
        BackendConfig::External { program: program.into(), args: vec!["{input}".into()] }
    }

    pub fn name(&self) -> String {
        match self {
            BackendConfig::Embedded => "cadical (embedded)".into(),
            BackendConfig::External { program, .. } => format!("external: {}", program.display()),
        }
    }

    pub fn incremental(&self) -> bool {
        matches!(self, BackendConfig::Embedded)
    }

    pub fn session(&self, num_vars: usize, seed: u64) -> Box<dyn SatSession> {
        match self {
            BackendConfig::Embedded => Box::new(CadicalSession::new(num_vars)),
            BackendConfig::External { program, args } => Box::new(ExternalSession {
                program: program.clone(),
                args: args.clone(),
                seed,
                num_vars,
                clauses: Vec::new(),
                model: Vec::new(),
            }),
        }
    }
}

struct Deadline(Option<Instant>);

impl cadical::Callbacks for Deadline {
    fn terminate(&mut self) -> bool {
        self.0.is_some_and(|d| Instant::now() >= d)
    }
}

struct CadicalSession {
    solver: cadical::Solver<Deadline>,
    num_vars: usize,
}

impl CadicalSession {
    fn new(num_vars: usize) -> Self {
        let mut solver = cadical::Solver::new();
        solver.reserve(num_vars as i32);
        CadicalSession { solver, num_vars }
    }
}

impl SatSession for CadicalSession {
    fn add_clause(&mut self, clause: &[Literal]) {
        self.solver.add_clause(clause.iter().copied());
    }

    fn solve(&mut self, deadline: Option<Instant>) -> Result<SolveOutcome> {
        self.solver.set_callbacks(Some(Deadline(deadline)));
        Ok(match self.solver.solve() {
            Some(true) => SolveOutcome::Sat,
            Some(false) => SolveOutcome::Unsat,
            None => SolveOutcome::Interrupted,
        })
    }

    fn model(&self) -> Vec<Option<bool>> {
        (1..=self.num_vars as i32).map(|v| self.solver.value(v)).collect()
    }
}

/// Non-incremental: every solve writes the accumulated clauses and runs the
/// program from scratch.
struct ExternalSession {
    program: PathBuf,
    args: Vec<String>,
    seed: u64,
    num_vars: usize,
    clauses: Vec<Vec<Literal>>,
    model: Vec<Option<bool>>,
}

impl SatSession for ExternalSession {
    fn add_clause(&mut self, clause: &[Literal]) {
        self.clauses.push(clause.to_vec());
    }

    fn solve(&mut self, deadline: Option<Instant>) -> Result<SolveOutcome> {
        let input = tempfile::Builder::new().prefix("facetpath-").suffix(".cnf").tempfile()?;
        {
            let mut w = std::io::BufWriter::new(input.as_file());
            writeln!(w, "p cnf {} {}", self.num_vars, self.clauses.len())?;
            for c in &self.clauses {
                for l in c {
                    write!(w, "{l} ")?;
                }
                writeln!(w, "0")?;
            }
            w.flush()?;
        }
        let args: Vec<String> = self
            .args
            .iter()
            .map(|a| {
                a.replace("{input}", &input.path().to_string_lossy())
                    .replace("{seed}", &self.seed.to_string())
            })
            .collect();
        let mut child = Command::new(&self.program)
            .args(&args)
            .stdin(Stdio::null())
            .stdout(Stdio::piped())
            .stderr(Stdio::null())
            .spawn()
            .map_err(|e| Error::Backend(format!("cannot start {}: {e}", self.program.display())))?;
        let mut stdout = child.stdout.take().expect("piped stdout");
        let reader = std::thread::spawn(move || {
            let mut s = String::new();
            stdout.read_to_string(&mut s).map(|_| s)
        });
        loop {
            if child.try_wait()?.is_some() {
                break;
            }
            if deadline.is_some_and(|d| Instant::now() >= d) {
                let _ = child.kill();
                let _ = child.wait();
                let _ = reader.join();
                return Ok(SolveOutcome::Interrupted);
            }
            std::thread::sleep(Duration::from_millis(5));
        }
        let text = reader
            .join()
            .map_err(|_| Error::Backend("output reader panicked".into()))??;
        drop(input);
        let (outcome, model) = parse_solver_output(&text, self.num_vars)?;
        self.model = model;
        Ok(outcome)
    }

    fn model(&self) -> Vec<Option<bool>> {
        self.model.clone()
    }
}


/// Reads the `s` status line and `v` literals of a competition-format
/// solver transcript.
pub fn parse_solver_output(text: &str, num_vars: usize) -> Result<(SolveOutcome, Vec<Option<bool>>)> {
    let mut status = None;
    let mut model = vec![None; num_vars];
    for line in text.lines() {
        let line = line.trim();
        if let Some(rest) = line.strip_prefix("s ") {
            status = Some(match rest.trim() {
                "SATISFIABLE" => SolveOutcome::Sat,
                "UNSATISFIABLE" => SolveOutcome::Unsat,
                "UNKNOWN" => SolveOutcome::Interrupted,
                other => return Err(Error::Backend(format!("unknown status {other:?}"))),
            });
        } else if let Some(rest) = line.strip_prefix("v ") {
            for tok in rest.split_whitespace() {
                let l: i64 = tok
                    .parse()
                    .map_err(|_| Error::Backend(format!("bad model literal {tok:?}")))?;
                let v = l.unsigned_abs() as usize;
                if v == 0 {
                    continue;
                }
                if v > num_vars {
                    return Err(Error::Backend(format!("model literal {l} out of range")));
                }
                model[v - 1] = Some(l > 0);
            }
        }
    }
    let status = status.ok_or_else(|| Error::Backend("no status line in solver output".into()))?;
    Ok((status, model))
}
