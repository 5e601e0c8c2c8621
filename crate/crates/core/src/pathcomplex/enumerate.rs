use serde::{Deserialize, Serialize};

use super::filters::{filter_late_revisit, filter_lemma_4243, filter_not_uniq};
use super::{enumerate_rgs, ColumnPivotSequence, Loop, PivotSequence};
use crate::bounds::BoundsTable;
use crate::{Error, Result};

/// Which pruning rules an enumeration applies. Structural validity
/// (ridge condition, end-disjointness) is always enforced.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FilterFlags {
    /// keep the lexicographically smaller of a non-revisiting sequence and its reverse
    pub direction_lexmin: bool,
    pub lemma_4243: bool,
    /// applied to single-revisit sequences only
    pub late_revisit: bool,
    pub not_uniq: bool,
    /// also apply `not_uniq` to sequences with revisits
    pub not_uniq_on_revisits: bool,
}

impl Default for FilterFlags {
    fn default() -> Self {
        FilterFlags {
            direction_lexmin: true,
            lemma_4243: true,
            late_revisit: true,
            not_uniq: true,
            not_uniq_on_revisits: false,
        }
    }
}

/// All canonical column sequences of `length` pivots that move every one of
/// the `d` columns, in lexicographic order.
fn directed_columns(d: usize, length: usize) -> impl Iterator<Item = ColumnPivotSequence> {
    let rgs_len = length.saturating_sub(1);
    let (l, k) = if d >= 2 && length >= 1 {
        (rgs_len, d - 1)
    } else {
        (0, 1)
    };
    enumerate_rgs(l, k).map(move |s| ColumnPivotSequence::from_rgs(&s, d).expect("rgs alphabet fits"))
}

/// One representative per undirected non-revisiting path type.
pub fn enumerate_nonrevisiting(d: usize, length: usize) -> impl Iterator<Item = PivotSequence> {
    directed_columns(d, length).filter_map(|c| {
        if c <= c.reversed() {
            Some(PivotSequence::from_columns(c, Vec::new()).expect("no loops"))
        } else {
            None
        }
    })
}

fn structurally_valid(p: &PivotSequence) -> bool {
    p.to_path_complex(p.num_vertices()).is_ok()
}

fn loop_sets(k: usize, r: usize) -> Vec<Vec<Loop>> {
    let pairs: Vec<Loop> = (0..k)
        .flat_map(|start| (start + 1..k).map(move |end| Loop { start, end }))
        .collect();
    let mut out = Vec::new();
    let mut chosen = Vec::with_capacity(r);
    fn rec(pairs: &[Loop], from: usize, r: usize, chosen: &mut Vec<Loop>, out: &mut Vec<Vec<Loop>>) {
        if chosen.len() == r {
            out.push(chosen.clone());
            return;
        }
        for i in from..pairs.len() {
            let l = pairs[i];
            if chosen.iter().any(|c| c.start == l.start || c.end == l.end) {
                continue;
            }
            chosen.push(l);
            rec(pairs, i + 1, r, chosen, out);
            chosen.pop();
        }
    }
    rec(&pairs, 0, r, &mut chosen, &mut out);
    out
}

fn with_revisits(d: usize, length: usize, revisits: usize, flags: &FilterFlags) -> Vec<PivotSequence> {
    if revisits == 0 {
        let all: Box<dyn Iterator<Item = PivotSequence>> = if flags.direction_lexmin {
            Box::new(enumerate_nonrevisiting(d, length))
        } else {
            Box::new(
                directed_columns(d, length)
                    .map(|c| PivotSequence::from_columns(c, Vec::new()).expect("no loops")),
            )
        };
        return all.filter(structurally_valid).collect();
    }
    let sets = loop_sets(length, revisits);
    let mut out = Vec::new();
    for cols in directed_columns(d, length) {
        for loops in &sets {
            let Ok(p) = PivotSequence::from_columns(cols.clone(), loops.clone()) else {
                continue;
            };
            if flags.lemma_4243 && !filter_lemma_4243(&p) {
                continue;
            }
            if revisits == 1 && flags.late_revisit && !filter_late_revisit(&p) {
                continue;
            }
            if structurally_valid(&p) {
                out.push(p);
            }
        }
    }
    out
}

/// Sequences with exactly `revisits` loops, after the loop conditions and
/// (for a single revisit) the late-revisit symmetry rule. Two or three
/// revisits get no direction symmetry reduction.
pub fn enumerate_with_revisits(d: usize, length: usize, revisits: usize) -> Vec<PivotSequence> {
    with_revisits(d, length, revisits, &FilterFlags::default())
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CandidateSpec {
    pub d: usize,
    pub n: usize,
    pub length: usize,
    pub revisits: Vec<usize>,
    pub flags: FilterFlags,
}

impl CandidateSpec {
    pub fn new(d: usize, n: usize, length: usize, revisits: Vec<usize>) -> Self {
        CandidateSpec {
            d,
            n,
            length,
            revisits,
            flags: FilterFlags::default(),
        }
    }

    pub fn validate(&self) -> Result<()> {
        if self.d < 2 {
            return Err(Error::Usage("d must be at least 2".into()));
        }
        if self.length == 0 {
            return Err(Error::Usage("length must be positive".into()));
        }
        if self.n <= self.d {
            return Err(Error::Usage("n must exceed d".into()));
        }
        if let Some(r) = self.revisits.iter().find(|&&r| r > 3) {
            return Err(Error::Usage(format!("{r} revisits requested; at most 3 supported")));
        }
        Ok(())
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CandidateClass {
    pub revisits: usize,
    /// count before Lemma not-uniq style pruning
    pub raw_count: usize,
    pub sequences: Vec<PivotSequence>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CandidateSet {
    pub spec: CandidateSpec,
    pub classes: Vec<CandidateClass>,
}

impl CandidateSet {
    pub fn count(&self) -> usize {
        self.classes.iter().map(|c| c.sequences.len()).sum()
    }

    pub fn sequences(&self) -> impl Iterator<Item = &PivotSequence> {
        self.classes.iter().flat_map(|c| c.sequences.iter())
    }

    pub fn class(&self, revisits: usize) -> Option<&CandidateClass> {
        self.classes.iter().find(|c| c.revisits == revisits)
    }
}

/// Full candidate pipeline for one `(d, n, length)` case.
pub fn enumerate_candidates(spec: &CandidateSpec, bounds: &BoundsTable) -> Result<CandidateSet> {
    spec.validate()?;
    let mut classes = Vec::new();
    for &r in &spec.revisits {
        let uses = spec.d + spec.length;
        if r > uses || uses - r > spec.n {
            classes.push(CandidateClass {
                revisits: r,
                raw_count: 0,
                sequences: Vec::new(),
            });
            continue;
        }
        let mut seqs = with_revisits(spec.d, spec.length, r, &spec.flags);
        seqs.sort_by(|a, b| (a.columns(), a.loops()).cmp(&(b.columns(), b.loops())));
        let raw_count = seqs.len();
        let prune = spec.flags.not_uniq && (r == 0 || spec.flags.not_uniq_on_revisits);
        if prune {
            seqs.retain(|p| filter_not_uniq(p, bounds, spec.n));
        }
        classes.push(CandidateClass {
            revisits: r,
            raw_count,
            sequences: seqs,
        });
    }
    Ok(CandidateSet {
        spec: spec.clone(),
        classes,
    })
}
