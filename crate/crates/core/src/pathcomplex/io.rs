//! Line-oriented and JSON forms of candidate sets.

use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use super::{CandidateSet, FilterFlags, Pivot, PivotSequence};
use crate::{Error, Result};

/// Parse one line of `(l,e)` pairs separated by whitespace.
pub fn parse_pivot_line(line: &str) -> Result<Vec<Pivot>> {
    line.split_whitespace()
        .map(|tok| {
            let inner = tok
                .strip_prefix('(')
                .and_then(|t| t.strip_suffix(')'))
                .ok_or_else(|| Error::Parse {
                    line: 0,
                    msg: format!("expected (l,e), got {tok:?}"),
                })?;
            let (l, e) = inner.split_once(',').ok_or_else(|| Error::Parse {
                line: 0,
                msg: format!("missing comma in {tok:?}"),
            })?;
            let parse = |s: &str| {
                s.trim().parse::<u32>().map_err(|e| Error::Parse {
                    line: 0,
                    msg: format!("{s:?}: {e}"),
                })
            };
            Ok(Pivot::new(parse(l)?, parse(e)?))
        })
        .collect()
}

/// Parse a candidate file: one pivot sequence per line, `#` comments.
pub fn parse_candidates(text: &str, d: usize) -> Result<Vec<PivotSequence>> {
    text.lines()
        .enumerate()
        .filter(|(_, l)| {
            let t = l.trim();
            !t.is_empty() && !t.starts_with('#')
        })
        .map(|(i, l)| {
            let with_line = |e: Error| match e {
                Error::Parse { msg, .. } => Error::Parse { line: i + 1, msg },
                other => other,
            };
            let pivots = parse_pivot_line(l).map_err(with_line)?;
            PivotSequence::from_pivots(d, pivots)
        })
        .collect()
}

pub fn render_candidates(set: &CandidateSet) -> String {
    let mut out = String::new();
    for class in &set.classes {
        out.push_str(&format!(
            "# revisits={} count={}\n",
            class.revisits,
            class.sequences.len()
        ));
        for s in &class.sequences {
            out.push_str(&s.to_line());
            out.push('\n');
        }
    }
    out
}

/// Short stable name for an instance, derived from its pivot line.
pub fn sequence_digest(p: &PivotSequence) -> String {
    let mut h = Sha256::new();
    h.update(p.d().to_le_bytes());
    h.update(p.to_line().as_bytes());
    hex::encode(&h.finalize()[..8])
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ClassManifest {
    pub revisits: usize,
    pub raw_count: usize,
    pub count: usize,
    pub sequences: Vec<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CandidateManifest {
    pub d: usize,
    pub n: usize,
    pub length: usize,
    pub revisits: Vec<usize>,
    pub filters: FilterFlags,
    pub count: usize,
    pub classes: Vec<ClassManifest>,
}

impl From<&CandidateSet> for CandidateManifest {
    fn from(set: &CandidateSet) -> Self {
        CandidateManifest {
            d: set.spec.d,
            n: set.spec.n,
            length: set.spec.length,
            revisits: set.spec.revisits.clone(),
            filters: set.spec.flags,
            count: set.count(),
            classes: set
                .classes
                .iter()
                .map(|c| ClassManifest {
                    revisits: c.revisits,
                    raw_count: c.raw_count,
                    count: c.sequences.len(),
                    sequences: c.sequences.iter().map(|s| s.to_line()).collect(),
                })
                .collect(),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_line() {
        let p = parse_pivot_line("(1,7) (2,8)  (7,9)").unwrap();
        assert_eq!(p, vec![Pivot::new(1, 7), Pivot::new(2, 8), Pivot::new(7, 9)]);
        assert!(parse_pivot_line("(1;7)").is_err());
        assert!(parse_pivot_line("1,7").is_err());
    }

    #[test]
    fn parse_file_with_comments() {
        let text = "# header\n(1,4) (2,5) (3,6)\n\n(1,4) (2,5) (4,6) (3,7)\n";
        let seqs = parse_candidates(text, 3).unwrap();
        assert_eq!(seqs.len(), 2);
        assert_eq!(seqs[1].loops().len(), 0);
        let bad = "(1,4)\n(9,5)\n";
        match parse_candidates(bad, 3) {
            Err(Error::InvalidPivots(_)) => {}
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn digest_is_stable_and_distinct() {
        let a = PivotSequence::from_pivots(3, parse_pivot_line("(1,4) (2,5) (3,6)").unwrap()).unwrap();
        let b = PivotSequence::from_pivots(3, parse_pivot_line("(1,4) (2,5) (4,6) (3,7)").unwrap()).unwrap();
        assert_eq!(sequence_digest(&a), sequence_digest(&a.clone()));
        assert_ne!(sequence_digest(&a), sequence_digest(&b));
        assert_eq!(sequence_digest(&a).len(), 16);
    }
}
