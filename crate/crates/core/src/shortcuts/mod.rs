//! Shorter facet paths between the end facets of a path complex.
//!
//! Eager mode enumerates every inclusion-minimal path of the pivot graph
//! that could serve as a shortcut; lazy mode looks for one in a concrete
//! candidate chirotope.

mod graph;

pub use graph::{enumerate_inclusion_minimal, for_each_inclusion_minimal, Graph, PivotGraph};

use serde::{Deserialize, Serialize};
use std::ops::ControlFlow;

use crate::chirotope::{shortest_facet_paths, Chirotope};
use crate::pathcomplex::PathComplex;
use crate::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Shortcut {
    pub facets: Vec<Vec<u32>>,
}

impl Shortcut {
    /// Number of pivots.
    pub fn length(&self) -> usize {
        self.facets.len().saturating_sub(1)
    }

    /// Facets separated by spaces, elements by commas.
    pub fn to_line(&self) -> String {
        self.facets
            .iter()
            .map(|f| f.iter().map(u32::to_string).collect::<Vec<_>>().join(","))
            .collect::<Vec<_>>()
            .join(" ")
    }
}

/// Streams the inclusion-minimal F_0–F_k paths of length ≤ k-1 in the
/// pivot graph on the vertex set of `pc`. Returns the number visited.
pub fn for_each_shortcut_candidate(
    pc: &PathComplex,
    mut visit: impl FnMut(&[Vec<u32>]) -> ControlFlow<()>,
) -> usize {
    let k = pc.length();
    if k <= 1 {
        return 0;
    }
    let g = PivotGraph::new(pc.d(), pc.n());
    let (s, t) = (g.node(pc.first()), g.node(pc.last()));
    let mut count = 0;
    let mut facets = Vec::with_capacity(k);
    for_each_inclusion_minimal(&g, s, t, k - 1, |path| {
        count += 1;
        facets.clear();
        facets.extend(path.iter().map(|&v| g.facet(v)));
        visit(&facets)
    });
    count
}

pub fn shortcut_candidates(pc: &PathComplex) -> Vec<Shortcut> {
    let mut out = Vec::new();
    for_each_shortcut_candidate(pc, |f| {
        out.push(Shortcut { facets: f.to_vec() });
        ControlFlow::Continue(())
    });
    out
}

/// A shortest boundary path of `chi` between the end facets of `pc`, if it
/// is shorter than `pc`. Ties go to the lexicographically smallest facet
/// sequence.
pub fn find_realized_shortcut(chi: &Chirotope, pc: &PathComplex) -> Result<Option<Shortcut>> {
    Ok(find_realized_shortcuts(chi, pc, 1)?.into_iter().next())
}

/// Up to `limit` shortest realized shortcuts, lexicographically first.
pub fn find_realized_shortcuts(chi: &Chirotope, pc: &PathComplex, limit: usize) -> Result<Vec<Shortcut>> {
    let report = chi.facets_of();
    for f in [pc.first(), pc.last()] {
        if !report.contains(f) {
            return Err(Error::NotAFacet(f.to_vec()));
        }
    }
    let paths = shortest_facet_paths(&report.facets, pc.first(), pc.last(), limit.max(1));
    let Some(first) = paths.first() else {
        return Err(Error::Disconnected(pc.first().to_vec(), pc.last().to_vec()));
    };
    if first.len() > pc.length() {
        return Ok(Vec::new());
    }
    Ok(paths.into_iter().take(limit).map(|facets| Shortcut { facets }).collect())
}
