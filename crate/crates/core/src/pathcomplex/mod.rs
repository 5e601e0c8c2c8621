//! Path complexes and their pivot-sequence encodings.
//!
//! A path complex on facets `F_0..F_k` is stored as a table with one column
//! per vertex slot of `F_0 = {1..d}`: pivot `j` replaces the vertex in one
//! column. The column indices form a [`ColumnPivotSequence`]; adding vertex
//! labels (and revisit loops) gives a [`PivotSequence`].

mod enumerate;
mod filters;
pub mod io;
mod rgs;

pub use enumerate::{
    enumerate_candidates, enumerate_nonrevisiting,
    enumerate_with_revisits, CandidateClass, CandidateSet, CandidateSpec, FilterFlags,
};
pub use filters::{filter_late_revisit, filter_lemma_4243, filter_not_uniq};
pub use rgs::{enumerate_rgs, RestrictedGrowthString, RgsIter};

use serde::{Deserialize, Serialize};
use std::collections::BTreeSet;
use std::fmt;

use crate::{Error, Result};

/// Column (slot) indices of successive pivots, 1-based.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct ColumnPivotSequence {
    columns: Vec<u32>,
    d: u32,
}

impl ColumnPivotSequence {
    pub fn new(columns: Vec<u32>, d: usize) -> Result<Self> {
        if let Some(&c) = columns.iter().find(|&&c| c == 0 || c as usize > d) {
            return Err(Error::InvalidPivots(format!("column {c} outside 1..={d}")));
        }
        if let Some(w) = columns.windows(2).position(|w| w[0] == w[1]) {
            return Err(Error::InvalidPivots(format!(
                "pivots {} and {} use the same column",
                w + 1,
                w + 2
            )));
        }
        Ok(ColumnPivotSequence {
            columns,
            d: d as u32,
        })
    }

    pub fn columns(&self) -> &[u32] {
        &self.columns
    }

    pub fn d(&self) -> usize {
        self.d as usize
    }

    pub fn len(&self) -> usize {
        self.columns.len()
    }

    pub fn is_empty(&self) -> bool {
        self.columns.is_empty()
    }

    /// First occurrences of columns appear in increasing order.
    pub fn is_canonical(&self) -> bool {
        let mut max = 0;
        for &c in &self.columns {
            if c > max + 1 {
                return false;
            }
            max = max.max(c);
        }
        true
    }

    /// Relabel columns by order of first occurrence.
    pub fn canonical(&self) -> Self {
        let mut map = vec![0u32; self.d as usize + 1];
        let mut next = 1;
        let columns = self
            .columns
            .iter()
            .map(|&c| {
                if map[c as usize] == 0 {
                    map[c as usize] = next;
                    next += 1;
                }
                map[c as usize]
            })
            .collect();
        ColumnPivotSequence { columns, d: self.d }
    }

    /// Canonical form of the sequence read backwards.
    pub fn reversed(&self) -> Self {
        let mut rev = self.clone();
        rev.columns.reverse();
        rev.canonical()
    }

    /// Forward map of the Stirling bijection: `s_j` is the rank of `p_{j+1}`
    /// in `{1..d} \ {p_j}`. Requires a canonical sequence.
    pub fn to_rgs(&self) -> Result<RestrictedGrowthString> {
        if !self.is_canonical() {
            return Err(Error::InvalidRgs(format!("{:?} is not canonical", self.columns)));
        }
        let symbols = self
            .columns
            .windows(2)
            .map(|w| if w[1] < w[0] { w[1] } else { w[1] - 1 })
            .collect();
        RestrictedGrowthString::new(symbols)
    }

    /// Inverse of [`to_rgs`](Self::to_rgs): `p_1 = 1`, and `p_{j+1}` is the
    /// `s_j`-th element of `{1..d} \ {p_j}`.
    pub fn from_rgs(s: &RestrictedGrowthString, d: usize) -> Result<Self> {
        if let Some(&bad) = s.symbols().iter().find(|&&x| x as usize >= d) {
            return Err(Error::InvalidRgs(format!(
                "symbol {bad} needs more than {} columns",
                d
            )));
        }
        let mut columns = Vec::with_capacity(s.len() + 1);
        columns.push(1u32);
        for &sym in s.symbols() {
            let prev = *columns.last().unwrap();
            columns.push(if sym < prev { sym } else { sym + 1 });
        }
        ColumnPivotSequence::new(columns, d)
    }
}

pub fn rgs_to_pivot_columns(s: &RestrictedGrowthString, d: usize) -> Result<ColumnPivotSequence> {
    ColumnPivotSequence::from_rgs(s, d)
}

pub fn columns_to_rgs(c: &ColumnPivotSequence) -> Result<RestrictedGrowthString> {
    c.to_rgs()
}

/// One exchange `F_j = F_{j-1} \ {leaving} ∪ {entering}`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct Pivot {
    pub leaving: u32,
    pub entering: u32,
}

impl Pivot {
    pub fn new(leaving: u32, entering: u32) -> Self {
        Pivot { leaving, entering }
    }
}

impl fmt::Display for Pivot {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{})", self.leaving, self.entering)
    }
}

/// A revisit: the vertex leaving at pivot `start` re-enters at pivot `end`
/// (0-based pivot positions, `start < end`).
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct Loop {
    pub start: usize,
    pub end: usize,
}

/// Column sequence plus revisit loops, with vertex labels materialized:
/// `F_0 = {1..d}`, fresh entering vertices are numbered `d+1, d+2, ...` in
/// order of first appearance and a revisit re-uses the departed label.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct PivotSequence {
    columns: ColumnPivotSequence,
    loops: Vec<Loop>,
    pivots: Vec<Pivot>,
}

impl PivotSequence {
    pub fn from_columns(columns: ColumnPivotSequence, mut loops: Vec<Loop>) -> Result<Self> {
        let k = columns.len();
        loops.sort();
        let mut return_of = vec![None; k];
        let mut seen_start = vec![false; k];
        for l in &loops {
            if l.start >= l.end || l.end >= k {
                return Err(Error::InvalidPivots(format!(
                    "loop {}..{} outside a sequence of {k} pivots",
                    l.start, l.end
                )));
            }
            if seen_start[l.start] || return_of[l.end].is_some() {
                return Err(Error::InvalidPivots("loops share an endpoint".into()));
            }
            seen_start[l.start] = true;
            return_of[l.end] = Some(l.start);
        }
        let d = columns.d();
        let mut slots: Vec<u32> = (1..=d as u32).collect();
        let mut left = Vec::with_capacity(k);
        let mut pivots = Vec::with_capacity(k);
        let mut fresh = d as u32 + 1;
        for (i, &c) in columns.columns().iter().enumerate() {
            let leaving = slots[c as usize - 1];
            left.push(leaving);
            let entering = match return_of[i] {
                Some(j) => {
                    let v = left[j];
                    if slots.contains(&v) {
                        return Err(Error::InvalidPivots(format!(
                            "vertex {v} re-enters at pivot {} while still present",
                            i + 1
                        )));
                    }
                    v
                }
                None => {
                    fresh += 1;
                    fresh - 1
                }
            };
            slots[c as usize - 1] = entering;
            pivots.push(Pivot { leaving, entering });
        }
        Ok(PivotSequence {
            columns,
            loops,
            pivots,
        })
    }

    /// Derive columns and loops from explicit pivots starting at `{1..d}`.
    /// Labels are not required to be canonical.
    pub fn from_pivots(d: usize, pivots: Vec<Pivot>) -> Result<Self> {
        let mut slots: Vec<u32> = (1..=d as u32).collect();
        let mut seen: BTreeSet<u32> = slots.iter().copied().collect();
        let mut last_left = std::collections::HashMap::new();
        let mut columns = Vec::with_capacity(pivots.len());
        let mut loops = Vec::new();
        for (i, p) in pivots.iter().enumerate() {
            let col = slots.iter().position(|&v| v == p.leaving).ok_or_else(|| {
                Error::InvalidPivots(format!(
                    "pivot {} removes {} which is not in the current facet",
                    i + 1,
                    p.leaving
                ))
            })?;
            if slots.contains(&p.entering) {
                return Err(Error::InvalidPivots(format!(
                    "pivot {} adds {} which is already in the current facet",
                    i + 1,
                    p.entering
                )));
            }
            if seen.contains(&p.entering) {
                let start = *last_left.get(&p.entering).expect("seen vertex has left");
                loops.push(Loop { start, end: i });
            }
            last_left.insert(p.leaving, i);
            seen.insert(p.entering);
            slots[col] = p.entering;
            columns.push(col as u32 + 1);
        }
        Ok(PivotSequence {
            columns: ColumnPivotSequence::new(columns, d)?,
            loops,
            pivots,
        })
    }

    pub fn d(&self) -> usize {
        self.columns.d()
    }

    pub fn len(&self) -> usize {
        self.pivots.len()
    }

    pub fn is_empty(&self) -> bool {
        self.pivots.is_empty()
    }

    pub fn columns(&self) -> &ColumnPivotSequence {
        &self.columns
    }

    pub fn loops(&self) -> &[Loop] {
        &self.loops
    }

    pub fn revisits(&self) -> usize {
        self.loops.len()
    }

    pub fn pivots(&self) -> &[Pivot] {
        &self.pivots
    }

    /// Vertex identified by a loop (the one that leaves and comes back).
    pub fn revisited_vertex(&self, l: &Loop) -> u32 {
        self.pivots[l.start].leaving
    }

    pub fn num_vertices(&self) -> usize {
        self.d() + self.len() - self.revisits()
    }

    pub fn facets(&self) -> Vec<Vec<u32>> {
        facets_from_pivots(self.d(), &self.pivots).expect("pivots validated at construction")
    }

    pub fn to_path_complex(&self, n: usize) -> Result<PathComplex> {
        expand_to_facets(self.d(), &self.pivots, n)
    }

    /// The same path traversed from `F_k` to `F_0`, relabeled canonically.
    pub fn reversed(&self) -> Result<Self> {
        let facets = self.facets();
        let start = facets.last().cloned().unwrap_or_default();
        let rev: Vec<Pivot> = self
            .pivots
            .iter()
            .rev()
            .map(|p| Pivot::new(p.entering, p.leaving))
            .collect();
        let relabeled = canonical_labels(self.d(), &start, &rev);
        PivotSequence::from_pivots(self.d(), relabeled)
    }

    pub fn to_line(&self) -> String {
        self.pivots
            .iter()
            .map(|p| p.to_string())
            .collect::<Vec<_>>()
            .join(" ")
    }
}

impl fmt::Display for PivotSequence {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_line())
    }
}

/// Relabel a pivot list starting from facet `start` so that the start facet
/// becomes `{1..d}` (numbered in order of departure) and other vertices are
/// numbered `d+1..` in order of first entry.
fn canonical_labels(d: usize, start: &[u32], pivots: &[Pivot]) -> Vec<Pivot> {
    let mut order: Vec<u32> = Vec::with_capacity(d);
    for p in pivots {
        if start.contains(&p.leaving) && !order.contains(&p.leaving) {
            order.push(p.leaving);
        }
    }
    for &v in start {
        if !order.contains(&v) {
            order.push(v);
        }
    }
    let mut label = std::collections::HashMap::new();
    for (i, &v) in order.iter().enumerate() {
        label.insert(v, i as u32 + 1);
    }
    let mut next = d as u32 + 1;
    for p in pivots {
        label.entry(p.entering).or_insert_with(|| {
            next += 1;
            next - 1
        });
    }
    pivots
        .iter()
        .map(|p| Pivot::new(label[&p.leaving], label[&p.entering]))
        .collect()
}

fn facets_from_pivots(d: usize, pivots: &[Pivot]) -> Result<Vec<Vec<u32>>> {
    let mut current: Vec<u32> = (1..=d as u32).collect();
    let mut facets = vec![current.clone()];
    for (i, p) in pivots.iter().enumerate() {
        let pos = current.binary_search(&p.leaving).map_err(|_| {
            Error::InvalidPivots(format!(
                "pivot {} removes {} which is not in F_{i}",
                i + 1,
                p.leaving
            ))
        })?;
        if current.binary_search(&p.entering).is_ok() {
            return Err(Error::InvalidPivots(format!(
                "pivot {} adds {} which is already in F_{i}",
                i + 1,
                p.entering
            )));
        }
        current.remove(pos);
        let at = current.binary_search(&p.entering).unwrap_err();
        current.insert(at, p.entering);
        facets.push(current.clone());
    }
    Ok(facets)
}

/// Apply pivots to `F_0 = {1..d}` and validate the result as a path complex
/// on `{1..n}`.
pub fn expand_to_facets(d: usize, pivots: &[Pivot], n: usize) -> Result<PathComplex> {
    let facets = facets_from_pivots(d, pivots)?;
    PathComplex::new(d, n, facets)
}

/// Facets `F_0..F_k` (sorted d-subsets) whose dual graph is a path with
/// vertex-disjoint end facets.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct PathComplex {
    d: usize,
    n: usize,
    facets: Vec<Vec<u32>>,
}

fn intersection_size(a: &[u32], b: &[u32]) -> usize {
    a.iter().filter(|x| b.binary_search(x).is_ok()).count()
}

impl PathComplex {
    pub fn new(d: usize, n: usize, mut facets: Vec<Vec<u32>>) -> Result<Self> {
        for f in &mut facets {
            f.sort_unstable();
            if f.len() != d {
                return Err(Error::TupleLength {
                    got: f.len(),
                    expected: d,
                });
            }
            if let Some(w) = f.windows(2).find(|w| w[0] == w[1]) {
                return Err(Error::DegenerateTuple(w[0]));
            }
            if let Some(&x) = f.iter().find(|&&x| x == 0 || x as usize > n) {
                return Err(Error::ElementOutOfRange { element: x, n });
            }
        }
        for i in 1..facets.len() {
            if intersection_size(&facets[i - 1], &facets[i]) + 1 != d {
                return Err(Error::InvalidPivots(format!(
                    "F_{} and F_{i} do not differ by a single pivot",
                    i - 1
                )));
            }
        }
        for a in 0..facets.len() {
            for b in a + 2..facets.len() {
                if intersection_size(&facets[a], &facets[b]) + 1 >= d {
                    return Err(Error::RidgeViolation(a, b));
                }
            }
        }
        if facets.len() > 1 {
            let first = &facets[0];
            let last = facets.last().unwrap();
            let shared: Vec<u32> = first
                .iter()
                .copied()
                .filter(|x| last.binary_search(x).is_ok())
                .collect();
            if !shared.is_empty() {
                return Err(Error::NotEndDisjoint(shared));
            }
        }
        Ok(PathComplex { d, n, facets })
    }

    pub fn d(&self) -> usize {
        self.d
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn facets(&self) -> &[Vec<u32>] {
        &self.facets
    }

    /// Number of pivots.
    pub fn length(&self) -> usize {
        self.facets.len().saturating_sub(1)
    }

    pub fn first(&self) -> &[u32] {
        &self.facets[0]
    }

    pub fn last(&self) -> &[u32] {
        self.facets.last().unwrap()
    }

    pub fn vertices(&self) -> Vec<u32> {
        let set: BTreeSet<u32> = self.facets.iter().flatten().copied().collect();
        set.into_iter().collect()
    }

    /// The same complex on the ground set of its own vertices, relabeled
    /// to `1..=|V|` if needed.
    pub fn restricted_to_vertices(&self) -> PathComplex {
        let verts = self.vertices();
        let facets = self
            .facets
            .iter()
            .map(|f| {
                f.iter()
                    .map(|x| verts.binary_search(x).unwrap() as u32 + 1)
                    .collect()
            })
            .collect();
        PathComplex {
            d: self.d,
            n: verts.len(),
            facets,
        }
    }

    /// Pivots `(l_j, e_j)` between consecutive facets.
    pub fn pivots(&self) -> Vec<Pivot> {
        self.facets
            .windows(2)
            .map(|w| {
                let l = *w[0].iter().find(|x| w[1].binary_search(x).is_err()).unwrap();
                let e = *w[1].iter().find(|x| w[0].binary_search(x).is_err()).unwrap();
                Pivot::new(l, e)
            })
            .collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn pivots(v: &[(u32, u32)]) -> Vec<Pivot> {
        v.iter().map(|&(l, e)| Pivot::new(l, e)).collect()
    }

    #[test]
    fn staircase_expansion() {
        let pc = expand_to_facets(3, &pivots(&[(1, 4), (2, 5), (3, 6)]), 6).unwrap();
        assert_eq!(
            pc.facets(),
            &[vec![1, 2, 3], vec![2, 3, 4], vec![3, 4, 5], vec![4, 5, 6]]
        );
        assert_eq!(pc.length(), 3);
    }

    #[test]
    fn absent_leaving_vertex_is_rejected() {
        let err = expand_to_facets(3, &pivots(&[(1, 4), (1, 5)]), 6).unwrap_err();
        assert!(matches!(err, Error::InvalidPivots(_)));
    }

    #[test]
    fn ridge_violation_names_the_pair() {
        // 1 leaves and comes straight back two pivots later: F_0 and F_2 share a ridge.
        let err = expand_to_facets(3, &pivots(&[(1, 4), (4, 1)]), 6).unwrap_err();
        assert!(matches!(err, Error::InvalidPivots(_) | Error::RidgeViolation(..)));
        let err = expand_to_facets(3, &pivots(&[(1, 4), (2, 5), (5, 2)]), 6).unwrap_err();
        // F_3 = F_1, and F_0 already shares a ridge with F_3
        assert!(matches!(err, Error::RidgeViolation(0, 3)), "{err}");
    }

    #[test]
    fn table_row_one_of_the_six_twelve_case() {
        let p = pivots(&[(1, 7), (2, 8), (7, 9), (3, 10), (4, 7), (5, 11), (6, 12)]);
        let pc = expand_to_facets(6, &p, 12).unwrap();
        assert_eq!(pc.facets().len(), 8);
        assert_eq!(pc.first(), &[1, 2, 3, 4, 5, 6]);
        assert_eq!(pc.last(), &[7, 8, 9, 10, 11, 12]);
        let seq = PivotSequence::from_pivots(6, p).unwrap();
        assert_eq!(seq.columns().columns(), &[1, 2, 1, 3, 4, 5, 6]);
        assert_eq!(seq.loops(), &[Loop { start: 2, end: 4 }]);
        assert_eq!(seq.num_vertices(), 12);
    }

    #[test]
    fn rgs_column_examples() {
        let s = RestrictedGrowthString::new(vec![1]).unwrap();
        assert_eq!(rgs_to_pivot_columns(&s, 3).unwrap().columns(), &[1, 2]);
        let s = RestrictedGrowthString::new(vec![1, 2]).unwrap();
        assert_eq!(rgs_to_pivot_columns(&s, 3).unwrap().columns(), &[1, 2, 3]);
        let s = RestrictedGrowthString::new(vec![1, 2, 3]).unwrap();
        assert!(rgs_to_pivot_columns(&s, 3).is_err());
    }

    #[test]
    fn non_canonical_columns_have_no_rgs() {
        let c = ColumnPivotSequence::new(vec![2, 1, 3], 3).unwrap();
        assert!(!c.is_canonical());
        assert!(c.to_rgs().is_err());
        assert_eq!(c.canonical().columns(), &[1, 2, 3]);
    }

    #[test]
    fn adjacent_repeated_columns_rejected() {
        assert!(ColumnPivotSequence::new(vec![1, 1], 2).is_err());
        assert!(ColumnPivotSequence::new(vec![1, 3], 2).is_err());
    }

    #[test]
    fn columns_and_loops_label_vertices() {
        let cols = ColumnPivotSequence::new(vec![1, 2, 1, 3, 4, 5, 6], 6).unwrap();
        let seq = PivotSequence::from_columns(cols, vec![Loop { start: 2, end: 4 }]).unwrap();
        assert_eq!(
            seq.to_line(),
            "(1,7) (2,8) (7,9) (3,10) (4,7) (5,11) (6,12)"
        );
        assert_eq!(seq.revisited_vertex(&seq.loops()[0]), 7);
    }

    #[test]
    fn reversal_is_an_involution_up_to_labels() {
        let cols = ColumnPivotSequence::new(vec![1, 2, 1, 3, 4, 5, 6], 6).unwrap();
        let seq = PivotSequence::from_columns(cols, vec![Loop { start: 2, end: 4 }]).unwrap();
        let back = seq.reversed().unwrap().reversed().unwrap();
        assert_eq!(back.pivots(), seq.pivots());
        assert!(seq.reversed().unwrap().columns().is_canonical());
    }

    #[test]
    fn restricting_relabels_densely() {
        let pc = PathComplex::new(2, 9, vec![vec![1, 2], vec![2, 7], vec![7, 9]]).unwrap();
        let r = pc.restricted_to_vertices();
        assert_eq!(r.n(), 4);
        assert_eq!(r.facets(), &[vec![1, 2], vec![2, 3], vec![3, 4]]);
    }
}
