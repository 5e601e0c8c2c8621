//! Interval bounds on Δ(d, n), the maximal facet-path diameter of a
//! simplicial d-polytope with n vertices (equivalently the edge diameter of
//! a simple d-polytope with n facets).
//!
//! Literature relations are applied as interval updates until nothing
//! tightens.

use serde::{Deserialize, Serialize};
use std::collections::BTreeMap;
use std::fmt::Write as _;

use crate::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum Fact {
    Exact { d: usize, n: usize, value: usize, source: String },
    Upper { d: usize, n: usize, value: usize, source: String },
    Lower { d: usize, n: usize, value: usize, source: String },
}

impl Fact {
    pub fn exact(d: usize, n: usize, value: usize, source: &str) -> Self {
        Fact::Exact { d, n, value, source: source.into() }
    }

    pub fn upper(d: usize, n: usize, value: usize, source: &str) -> Self {
        Fact::Upper { d, n, value, source: source.into() }
    }

    pub fn lower(d: usize, n: usize, value: usize, source: &str) -> Self {
        Fact::Lower { d, n, value, source: source.into() }
    }
}

/// Data facts that feed the relations. The Δ(3,n) formula and the
/// recursions are rules inside [`propagate`], not facts.
pub fn base_facts() -> Vec<Fact> {
    vec![
        Fact::exact(4, 8, 4, "Klee-Walkup: d-step for d<=5"),
        Fact::exact(5, 10, 5, "Klee-Walkup: d-step for d<=5"),
        Fact::exact(4, 9, 5, "Klee-Walkup"),
        Fact::exact(4, 10, 5, "Goodey"),
        Fact::exact(5, 11, 6, "Goodey"),
        Fact::upper(6, 13, 9, "Goodey"),
        Fact::upper(7, 14, 10, "Goodey"),
        Fact::lower(4, 11, 6, "prior construction"),
        Fact::lower(5, 12, 7, "prior construction"),
        Fact::lower(6, 13, 7, "prior construction"),
    ]
}

/// Results established by refuting every length-7 candidate.
pub fn computed_facts() -> Vec<Fact> {
    vec![
        Fact::exact(6, 12, 6, "no geodesic 7-path in a (6,12) matroid polytope"),
        Fact::exact(4, 11, 6, "no geodesic 7-path in a (4,11) matroid polytope"),
    ]
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Interval {
    pub lo: usize,
    /// `None` means no upper bound is known.
    pub hi: Option<usize>,
}

impl Interval {
    fn unknown() -> Self {
        Interval { lo: 0, hi: None }
    }

    pub fn is_exact(&self) -> bool {
        self.hi == Some(self.lo)
    }

    /// `5`, `{6,7}` (two candidates), `[7,9]`, or `[7,∞)`.
    pub fn notation(&self) -> String {
        match self.hi {
            Some(h) if h == self.lo => format!("{h}"),
            Some(h) if h == self.lo + 1 => format!("{{{},{h}}}", self.lo),
            Some(h) => format!("[{},{h}]", self.lo),
            None if self.lo == 0 => "?".into(),
            None => format!("[{},∞)", self.lo),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BoundsEntry {
    pub d: usize,
    pub n: usize,
    pub interval: Interval,
    pub provenance: Vec<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BoundsTable {
    d_max: usize,
    slack_max: usize,
    entries: BTreeMap<(usize, usize), BoundsEntry>,
}

impl BoundsTable {
    /// Table with no information: every lookup is unknown.
    pub fn empty() -> Self {
        BoundsTable { d_max: 0, slack_max: 0, entries: BTreeMap::new() }
    }

    /// Bounds known before the computations (base facts only).
    pub fn known() -> Self {
        propagate(&base_facts(), &[], 8, 8).expect("base facts are consistent")
    }

    /// Bounds after adding the computed diameters.
    pub fn with_computed() -> Self {
        propagate(&base_facts(), &computed_facts(), 8, 8).expect("computed facts are consistent")
    }

    pub fn get(&self, d: usize, n: usize) -> Option<&BoundsEntry> {
        self.entries.get(&(d, n))
    }

    pub fn interval(&self, d: usize, n: usize) -> Option<&Interval> {
        self.get(d, n).map(|e| &e.interval)
    }

    pub fn upper(&self, d: usize, n: usize) -> Option<usize> {
        self.interval(d, n).and_then(|i| i.hi)
    }

    pub fn lower(&self, d: usize, n: usize) -> Option<usize> {
        self.interval(d, n).map(|i| i.lo).filter(|&lo| lo > 0)
    }

    pub fn entries(&self) -> impl Iterator<Item = &BoundsEntry> {
        self.entries.values()
    }

    /// Text grid with rows `d` and columns `n - d`.
    pub fn render(&self, ds: std::ops::RangeInclusive<usize>, slacks: std::ops::RangeInclusive<usize>) -> String {
        let mut out = String::new();
        let _ = write!(out, "{:>4}", "d\\s");
        for s in slacks.clone() {
            let _ = write!(out, " {s:>7}");
        }
        out.push('\n');
        for d in ds {
            let _ = write!(out, "{d:>4}");
            for s in slacks.clone() {
                let cell = self
                    .interval(d, d + s)
                    .map(|i| i.notation())
                    .unwrap_or_else(|| "?".into());
                let _ = write!(out, " {cell:>7}");
            }
            out.push('\n');
        }
        out
    }

    fn cell(&mut self, d: usize, n: usize) -> &mut BoundsEntry {
        self.entries.entry((d, n)).or_insert_with(|| BoundsEntry {
            d,
            n,
            interval: Interval::unknown(),
            provenance: Vec::new(),
        })
    }

    fn in_grid(&self, d: usize, n: usize) -> bool {
        d >= 1 && d <= self.d_max && n > d && n - d <= self.slack_max
    }

    fn tighten_upper(&mut self, d: usize, n: usize, value: usize, why: String) -> Result<bool> {
        if !self.in_grid(d, n) {
            return Ok(false);
        }
        let e = self.cell(d, n);
        if e.interval.hi.is_none_or(|h| value < h) {
            e.interval.hi = Some(value);
            e.provenance.push(format!("<= {value}: {why}"));
            check(e, &why)?;
            return Ok(true);
        }
        Ok(false)
    }

    fn tighten_lower(&mut self, d: usize, n: usize, value: usize, why: String) -> Result<bool> {
        if !self.in_grid(d, n) {
            return Ok(false);
        }
        let e = self.cell(d, n);
        if value > e.interval.lo {
            e.interval.lo = value;
            e.provenance.push(format!(">= {value}: {why}"));
            check(e, &why)?;
            return Ok(true);
        }
        Ok(false)
    }

    fn apply(&mut self, fact: &Fact) -> Result<bool> {
        Ok(match fact {
            Fact::Exact { d, n, value, source } => {
                let a = self.tighten_upper(*d, *n, *value, source.clone())?;
                let b = self.tighten_lower(*d, *n, *value, source.clone())?;
                a | b
            }
            Fact::Upper { d, n, value, source } => self.tighten_upper(*d, *n, *value, source.clone())?,
            Fact::Lower { d, n, value, source } => self.tighten_lower(*d, *n, *value, source.clone())?,
        })
    }
}

fn check(e: &BoundsEntry, rule: &str) -> Result<()> {
    if let Some(h) = e.interval.hi {
        if e.interval.lo > h {
            return Err(Error::ContradictoryBounds {
                d: e.d,
                n: e.n,
                lo: e.interval.lo,
                hi: h,
                rule: format!("{rule}; history: {}", e.provenance.join(" | ")),
            });
        }
    }
    Ok(())
}

/// Fixpoint of the diameter relations over `d ≤ d_max`, `n - d ≤ slack_max`:
///
/// 1. Δ(3,n) = ⌊2n/3⌋ - 1; polygons give Δ(2,n) = ⌊n/2⌋ and Δ(1,2) = 1
/// 2. Δ(d,2d+k) ≤ Δ(d-1,2d+k-1) + ⌊k/2⌋ + 1 for k = 0..3
/// 3. Δ(d,n) ≤ Δ(n-d, 2(n-d))
/// 4. Δ(d,n) = Δ(n-d, 2(n-d)) when n ≤ 2d
/// 5. Δ(d,n) ≥ n - d when n > d ≥ 7
pub fn propagate(
    base_facts: &[Fact],
    computed_facts: &[Fact],
    d_max: usize,
    slack_max: usize,
) -> Result<BoundsTable> {
    let mut t = BoundsTable { d_max, slack_max, entries: BTreeMap::new() };
    for d in 1..=d_max {
        for n in d + 1..=d + slack_max {
            t.cell(d, n);
        }
    }
    // (1) and the trivial low-dimensional cases are exact
    if d_max >= 1 {
        t.tighten_upper(1, 2, 1, "segment".into())?;
        t.tighten_lower(1, 2, 1, "segment".into())?;
    }
    for n in 3..=2 + slack_max {
        t.tighten_upper(2, n, n / 2, "polygon".into())?;
        t.tighten_lower(2, n, n / 2, "polygon".into())?;
    }
    for n in 4..=3 + slack_max {
        let v = 2 * n / 3 - 1;
        t.tighten_upper(3, n, v, "rule (1)".into())?;
        t.tighten_lower(3, n, v, "rule (1)".into())?;
    }
    for f in base_facts.iter().chain(computed_facts) {
        t.apply(f)?;
    }
    loop {
        let mut changed = false;
        let keys: Vec<(usize, usize)> = t.entries.keys().copied().collect();
        for (d, n) in keys {
            let s = n - d;
            // (2)
            if n >= 2 * d && n - 2 * d <= 3 && d >= 2 {
                let k = n - 2 * d;
                if let Some(h) = t.upper(d - 1, n - 1) {
                    changed |= t.tighten_upper(d, n, h + k / 2 + 1, format!("rule (2) from Δ({},{})", d - 1, n - 1))?;
                }
            }
            // (3)
            if s != d {
                if let Some(h) = t.upper(s, 2 * s) {
                    changed |= t.tighten_upper(d, n, h, format!("rule (3) from Δ({s},{})", 2 * s))?;
                }
            }
            // (4)
            if n <= 2 * d && s != d {
                if let Some(lo) = t.interval(s, 2 * s).map(|i| i.lo) {
                    changed |= t.tighten_lower(d, n, lo, format!("rule (4) from Δ({s},{})", 2 * s))?;
                }
                if let Some(lo) = t.interval(d, n).map(|i| i.lo) {
                    changed |= t.tighten_lower(s, 2 * s, lo, format!("rule (4) from Δ({d},{n})"))?;
                }
                if let Some(h) = t.upper(d, n) {
                    changed |= t.tighten_upper(s, 2 * s, h, format!("rule (4) from Δ({d},{n})"))?;
                }
            }
            // (5)
            if d >= 7 {
                changed |= t.tighten_lower(d, n, s, "rule (5)".into())?;
            }
        }
        if !changed {
            break;
        }
    }
    Ok(t)
}
