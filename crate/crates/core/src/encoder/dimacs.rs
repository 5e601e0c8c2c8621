//! DIMACS CNF output and input, plus the JSON sidecar.

use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};
use std::io::{BufWriter, Write};
use std::path::Path;

use super::{validate_clause, CnfFormula, FragmentCounts, FragmentKind, VarIndex};
use crate::{Error, Result};

/// Writes `c` comments (one per variable: `c var <id> <basis>`) before the
/// `p cnf` header, then one zero-terminated clause per line.
pub fn emit_dimacs<W: Write>(f: &CnfFormula, vars: Option<&VarIndex>, out: W) -> Result<()> {
    let mut w = BufWriter::new(out);
    if let Some(vars) = vars {
        writeln!(w, "c chirotope n={} r={}", vars.n(), vars.r())?;
        for v in 1..=vars.num_vars() as i32 {
            let b = vars.basis(v);
            let b: Vec<String> = b.iter().map(u32::to_string).collect();
            writeln!(w, "c var {v} {}", b.join(" "))?;
        }
    }
    writeln!(w, "p cnf {} {}", f.num_vars(), f.len())?;
    let mut line = String::new();
    for c in f.clauses() {
        line.clear();
        for l in c {
            line.push_str(&l.to_string());
            line.push(' ');
        }
        line.push('0');
        writeln!(w, "{line}")?;
    }
    w.flush()?;
    Ok(())
}

pub fn write_dimacs_file(f: &CnfFormula, vars: &VarIndex, path: &Path) -> Result<()> {
    let file = std::fs::File::create(path)?;
    emit_dimacs(f, Some(vars), file)
}

/// Parses DIMACS CNF. Clauses may span lines; comments are skipped.
pub fn parse_dimacs(text: &str) -> Result<CnfFormula> {
    let mut header: Option<(usize, usize)> = None;
    let mut f = CnfFormula::new(0);
    let mut current = Vec::new();
    for (i, raw) in text.lines().enumerate() {
        let line = raw.trim();
        let ln = i + 1;
        if line.is_empty() || line.starts_with('c') || line.starts_with('%') {
            continue;
        }
        if line.starts_with('p') {
            let parts: Vec<&str> = line.split_whitespace().collect();
            if parts.len() != 4 || parts[1] != "cnf" {
                return Err(Error::Parse { line: ln, msg: format!("bad header {line:?}") });
            }
            let nv = parts[2].parse().map_err(|e| Error::Parse { line: ln, msg: format!("{e}") })?;
            let nc = parts[3].parse().map_err(|e| Error::Parse { line: ln, msg: format!("{e}") })?;
            header = Some((nv, nc));
            f = CnfFormula::new(nv);
            continue;
        }
        let Some((nv, _)) = header else {
            return Err(Error::Parse { line: ln, msg: "clause before header".into() });
        };
        for tok in line.split_whitespace() {
            let l: i32 = tok.parse().map_err(|e| Error::Parse { line: ln, msg: format!("{tok:?}: {e}") })?;
            if l == 0 {
                validate_clause(&current, nv).map_err(|e| Error::Parse { line: ln, msg: e.to_string() })?;
                f.push_unchecked(std::mem::take(&mut current), FragmentKind::Gp);
            } else {
                current.push(l);
            }
        }
    }
    let Some((_, nc)) = header else {
        return Err(Error::Parse { line: 1, msg: "missing header".into() });
    };
    if !current.is_empty() {
        return Err(Error::Parse { line: text.lines().count(), msg: "unterminated clause".into() });
    }
    if f.len() != nc {
        return Err(Error::Parse {
            line: 1,
            msg: format!("header announces {nc} clauses, found {}", f.len()),
        });
    }
    // fragment provenance is not stored in DIMACS
    f.counts = FragmentCounts::default();
    Ok(f)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct EncodingManifest {
    pub n: usize,
    pub r: usize,
    pub num_vars: usize,
    pub num_clauses: usize,
    pub counts: FragmentCounts,
    pub path: Vec<Vec<u32>>,
    pub shortcuts: usize,
    pub shortcut_digest: String,
}

impl EncodingManifest {
    pub fn new(f: &CnfFormula, vars: &VarIndex, path: &[Vec<u32>], shortcuts: &[Vec<Vec<u32>>]) -> Self {
        let mut h = Sha256::new();
        for sc in shortcuts {
            for facet in sc {
                for x in facet {
                    h.update(x.to_le_bytes());
                }
                h.update(b",");
            }
            h.update(b"\n");
        }
        EncodingManifest {
            n: vars.n(),
            r: vars.r(),
            num_vars: f.num_vars(),
            num_clauses: f.len(),
            counts: f.counts(),
            path: path.to_vec(),
            shortcuts: shortcuts.len(),
            shortcut_digest: hex::encode(h.finalize()),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn render(f: &CnfFormula) -> String {
        let mut buf = Vec::new();
        emit_dimacs(f, None, &mut buf).unwrap();
        String::from_utf8(buf).unwrap()
    }

    #[test]
    fn empty_formula() {
        assert_eq!(render(&CnfFormula::new(0)), "p cnf 0 0\n");
    }

    #[test]
    fn unit_clause() {
        let mut f = CnfFormula::new(1);
        f.push(vec![1], FragmentKind::PathUnits).unwrap();
        assert_eq!(render(&f), "p cnf 1 1\n1 0\n");
    }

    #[test]
    fn parse_round_trip_and_errors() {
        let mut f = CnfFormula::new(3);
        f.push(vec![1, -2], FragmentKind::Gp).unwrap();
        f.push(vec![3], FragmentKind::Gp).unwrap();
        let g = parse_dimacs(&render(&f)).unwrap();
        assert_eq!(g.clauses(), f.clauses());
        assert!(parse_dimacs("1 0\n").is_err());
        assert!(parse_dimacs("p cnf 2 1\n1 -1 0\n").is_err());
        assert!(parse_dimacs("p cnf 2 2\n1 0\n").is_err());
        assert!(parse_dimacs("p cnf 2 1\n1 2\n").is_err());
    }

    #[test]
    fn mapping_comments() {
        let vars = VarIndex::new(4, 3);
        let mut buf = Vec::new();
        emit_dimacs(&CnfFormula::new(4), Some(&vars), &mut buf).unwrap();
        let s = String::from_utf8(buf).unwrap();
        assert!(s.contains("c var 1 1 2 3\n"));
        assert!(s.contains("c var 4 2 3 4\n"));
        assert!(s.ends_with("p cnf 4 0\n"));
    }
}
