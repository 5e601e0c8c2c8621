use super::{Loop, PivotSequence};
use crate::bounds::BoundsTable;

fn loop_ok(p: &PivotSequence, l: &Loop) -> bool {
    let cols = p.columns().columns();
    let body = &cols[l.start..=l.end];
    let mut distinct: Vec<u32> = body.to_vec();
    distinct.sort_unstable();
    distinct.dedup();
    if distinct.len() < 3 {
        return false;
    }
    let first_in_prefix = cols[..l.start].contains(&cols[l.start]);
    let last_in_suffix = cols[l.end + 1..].contains(&cols[l.end]);
    first_in_prefix || last_in_suffix
}

/// Necessary conditions on each revisit loop: its columns contain at least
/// three distinct symbols, and either its first column occurs in the prefix
/// or its last column occurs in the suffix.
pub fn filter_lemma_4243(p: &PivotSequence) -> bool {
    p.loops().iter().all(|l| loop_ok(p, l))
}

/// Symmetry rule for the choice of initial facet on revisiting paths: no
/// revisited vertex belongs to `F_0`.
pub fn filter_late_revisit(p: &PivotSequence) -> bool {
    let d = p.d() as u32;
    p.loops().iter().all(|l| p.revisited_vertex(l) > d)
}

/// Rejects sequences whose first column changes only once (at the start) or
/// whose last column `d` changes only once (at the end) when the vertex
/// figure bound `Δ(d-1, n-1)` is below `length - 1`. Without a bound the
/// candidate is kept.
pub fn filter_not_uniq(p: &PivotSequence, bounds: &BoundsTable, n: usize) -> bool {
    let d = p.d();
    let len = p.len();
    if d < 2 || n < 2 || len < 2 {
        return true;
    }
    let Some(hi) = bounds.upper(d - 1, n - 1) else {
        return true;
    };
    if hi + 1 >= len {
        return true;
    }
    let cols = p.columns().columns();
    let count = |c: u32| cols.iter().filter(|&&x| x == c).count();
    let unique_first = cols[0] == 1 && count(1) == 1;
    let unique_last = cols[len - 1] == d as u32 && count(d as u32) == 1;
    !(unique_first || unique_last)
}
