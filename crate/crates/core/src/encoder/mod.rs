//! CNF encoding of "a uniform chirotope of rank d+1 whose boundary carries
//! the path complex geodesically".
//!
//! Variable `[b]` for each sorted basis `b` is true iff χ(b) = +. Its id is
//! the colex rank of `b` plus one.

mod dimacs;

pub use dimacs::{emit_dimacs, parse_dimacs, write_dimacs_file, EncodingManifest};

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::chirotope::{append_parity, tau, Chirotope};
use crate::combinatorics::{complement, subsets, SubsetIndex};
use crate::pathcomplex::PathComplex;
use crate::{Error, Result};

pub type Literal = i32;
pub type Clause = Vec<Literal>;

/// Sorted basis ↔ variable id.
#[derive(Clone, Debug)]
pub struct VarIndex {
    index: SubsetIndex,
}

impl VarIndex {
    pub fn new(n: usize, r: usize) -> Self {
        VarIndex { index: SubsetIndex::new(n, r) }
    }

    pub fn n(&self) -> usize {
        self.index.n()
    }

    pub fn r(&self) -> usize {
        self.index.k()
    }

    pub fn num_vars(&self) -> usize {
        self.index.len()
    }

    #[inline]
    pub fn var(&self, sorted: &[u32]) -> Literal {
        self.index.rank(sorted) as Literal + 1
    }

    pub fn basis(&self, var: Literal) -> Vec<u32> {
        self.index.unrank(var.unsigned_abs() as usize - 1)
    }
}

/// Literal of `sorted(t)` with polarity τ(t).
pub fn literal_for(t: &[u32], vars: &VarIndex) -> Result<Literal> {
    if t.len() != vars.r() {
        return Err(Error::TupleLength { got: t.len(), expected: vars.r() });
    }
    if let Some(&x) = t.iter().find(|&&x| x == 0 || x as usize > vars.n()) {
        return Err(Error::ElementOutOfRange { element: x, n: vars.n() });
    }
    let sign = tau(t)?;
    let mut s = t.to_vec();
    s.sort_unstable();
    Ok(sign as Literal * vars.var(&s))
}

/// Literal of `(F, x)` for a sorted facet F and x ∉ F.
#[inline]
fn extension_literal(sorted_facet: &[u32], x: u32, vars: &VarIndex) -> Literal {
    let mut b = Vec::with_capacity(sorted_facet.len() + 1);
    b.extend_from_slice(sorted_facet);
    b.insert(b.partition_point(|&y| y < x), x);
    append_parity(sorted_facet, x) as Literal * vars.var(&b)
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct FragmentCounts {
    pub gp: usize,
    pub facet: usize,
    pub path_units: usize,
    pub shortcut: usize,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum FragmentKind {
    Gp,
    Facet,
    PathUnits,
    Shortcut,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CnfFormula {
    num_vars: usize,
    clauses: Vec<Clause>,
    counts: FragmentCounts,
}

impl CnfFormula {
    pub fn new(num_vars: usize) -> Self {
        CnfFormula { num_vars, clauses: Vec::new(), counts: FragmentCounts::default() }
    }

    pub fn num_vars(&self) -> usize {
        self.num_vars
    }

    pub fn clauses(&self) -> &[Clause] {
        &self.clauses
    }

    pub fn len(&self) -> usize {
        self.clauses.len()
    }

    pub fn is_empty(&self) -> bool {
        self.clauses.is_empty()
    }

    pub fn counts(&self) -> FragmentCounts {
        self.counts
    }

    /// Adds a validated clause: non-empty, in range, not tautological.
    pub fn push(&mut self, clause: Clause, kind: FragmentKind) -> Result<()> {
        validate_clause(&clause, self.num_vars)?;
        self.push_unchecked(clause, kind);
        Ok(())
    }

    fn push_unchecked(&mut self, clause: Clause, kind: FragmentKind) {
        self.clauses.push(clause);
        let c = &mut self.counts;
        match kind {
            FragmentKind::Gp => c.gp += 1,
            FragmentKind::Facet => c.facet += 1,
            FragmentKind::PathUnits => c.path_units += 1,
            FragmentKind::Shortcut => c.shortcut += 1,
        }
    }

    pub fn append(&mut self, other: CnfFormula) {
        self.num_vars = self.num_vars.max(other.num_vars);
        self.clauses.extend(other.clauses);
        self.counts.gp += other.counts.gp;
        self.counts.facet += other.counts.facet;
        self.counts.path_units += other.counts.path_units;
        self.counts.shortcut += other.counts.shortcut;
    }

    /// Index of the first clause falsified by `model` (`model[v-1]` is the
    /// value of variable v).
    pub fn first_falsified(&self, model: &[bool]) -> Option<usize> {
        self.clauses.iter().position(|c| !clause_satisfied(c, model))
    }

    /// Removes repeated clauses (literal order ignored), keeping first
    /// occurrences. Off by default so counts stay comparable.
    pub fn dedup_clauses(&mut self) {
        let mut seen = std::collections::HashSet::new();
        self.clauses.retain(|c| {
            let mut key = c.clone();
            key.sort_unstable();
            seen.insert(key)
        });
    }
}

pub fn validate_clause(clause: &[Literal], num_vars: usize) -> Result<()> {
    if clause.is_empty() {
        return Err(Error::Usage("empty clause".into()));
    }
    for &l in clause {
        if l == 0 || l.unsigned_abs() as usize > num_vars {
            return Err(Error::Usage(format!("literal {l} out of range 1..={num_vars}")));
        }
        if clause.contains(&-l) {
            return Err(Error::TautologicalClause(clause.to_vec()));
        }
    }
    Ok(())
}

#[inline]
pub fn clause_satisfied(clause: &[Literal], model: &[bool]) -> bool {
    clause.iter().any(|&l| model[l.unsigned_abs() as usize - 1] == (l > 0))
}

/// `[b]` true iff χ(b) = +.
pub fn assignment_of(chi: &Chirotope) -> Vec<bool> {
    chi.signs().iter().map(|&s| s > 0).collect()
}

/// GP clauses for a single σ, in quadruple colex order.
fn gp_block(sigma: &[u32], vars: &VarIndex) -> Vec<Clause> {
    let n = vars.n();
    let rest = complement(sigma, n);
    let mut out = Vec::new();
    for q in subsets(rest.len(), 4) {
        let x: Vec<u32> = q.iter().map(|&i| rest[i as usize - 1]).collect();
        let lit = |a: usize, b: usize| -> Literal {
            let mut t = sigma.to_vec();
            t.push(x[a]);
            t.push(x[b]);
            let p = append_parity(sigma, x[a]) * append_parity(sigma, x[b]);
            t.sort_unstable();
            p as Literal * vars.var(&t)
        };
        // pairs of the three products χ(σ,x1x2)χ(σ,x3x4), χ(σ,x1x3)χ(σ,x2x4), χ(σ,x1x4)χ(σ,x2x3)
        let pairs = [[lit(0, 1), lit(2, 3)], [lit(0, 2), lit(1, 3)], [lit(0, 3), lit(1, 2)]];
        for v in [1i8, -1] {
            // forbidden: p1 = v, p2 = -v, p3 = v
            let targets = [v, -v, v];
            for mask in 0..8u32 {
                let mut clause = Vec::with_capacity(6);
                for (k, pair) in pairs.iter().enumerate() {
                    let first: i8 = if mask >> k & 1 == 0 { 1 } else { -1 };
                    let second = first * targets[k];
                    // the clause excludes exactly this sign assignment
                    clause.push(if first > 0 { -pair[0] } else { pair[0] });
                    clause.push(if second > 0 { -pair[1] } else { pair[1] });
                }
                out.push(clause);
            }
        }
    }
    out
}

/// 16 six-literal clauses per (σ, x1<x2<x3<x4), blocks in σ colex order.
pub fn encode_gp_axioms(n: usize, r: usize) -> CnfFormula {
    let vars = VarIndex::new(n, r);
    let mut f = CnfFormula::new(vars.num_vars());
    if r < 2 || n < r + 2 {
        return f;
    }
    let sigmas: Vec<Vec<u32>> = subsets(n, r - 2).collect();
    let blocks: Vec<Vec<Clause>> = sigmas.par_iter().map(|s| gp_block(s, &vars)).collect();
    for block in blocks {
        for c in block {
            f.push_unchecked(c, FragmentKind::Gp);
        }
    }
    f
}

/// Equality chain over the ascending complement of F: all χ(F, x) equal.
pub fn encode_facet(facet: &[u32], vars: &VarIndex) -> Result<CnfFormula> {
    if facet.len() + 1 != vars.r() {
        return Err(Error::TupleLength { got: facet.len(), expected: vars.r() - 1 });
    }
    let mut sorted = facet.to_vec();
    sorted.sort_unstable();
    if let Some(w) = sorted.windows(2).find(|w| w[0] == w[1]) {
        return Err(Error::DegenerateTuple(w[0]));
    }
    if let Some(&x) = sorted.iter().find(|&&x| x == 0 || x as usize > vars.n()) {
        return Err(Error::ElementOutOfRange { element: x, n: vars.n() });
    }
    let z: Vec<Literal> = complement(&sorted, vars.n())
        .into_iter()
        .map(|x| extension_literal(&sorted, x, vars))
        .collect();
    let mut f = CnfFormula::new(vars.num_vars());
    for w in z.windows(2) {
        f.push(vec![w[0], -w[1]], FragmentKind::Facet)?;
        f.push(vec![-w[0], w[1]], FragmentKind::Facet)?;
    }
    Ok(f)
}

/// σ_0 = +1, σ_i = τ(F_{i-1}, e_i) · τ(F_i, l_i) · σ_{i-1} on sorted facets.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PathSigns {
    pub sigma: Vec<i8>,
}

pub fn compute_path_signs(facets: &[Vec<u32>]) -> PathSigns {
    let mut sigma = Vec::with_capacity(facets.len());
    if facets.is_empty() {
        return PathSigns { sigma };
    }
    sigma.push(1i8);
    for i in 1..facets.len() {
        let (prev, cur) = (&facets[i - 1], &facets[i]);
        let e = *cur.iter().find(|x| prev.binary_search(x).is_err()).expect("pivot");
        let l = *prev.iter().find(|x| cur.binary_search(x).is_err()).expect("pivot");
        let s = append_parity(prev, e) * append_parity(cur, l) * sigma[i - 1];
        sigma.push(s);
    }
    PathSigns { sigma }
}

/// Units fixing χ(F_i, x) = σ_i for every facet of the path and x ∉ F_i.
pub fn encode_path_on_boundary(pc: &PathComplex, vars: &VarIndex) -> Result<CnfFormula> {
    check_ground(pc, vars)?;
    let signs = compute_path_signs(pc.facets());
    let mut f = CnfFormula::new(vars.num_vars());
    for (facet, &s) in pc.facets().iter().zip(&signs.sigma) {
        for x in complement(facet, vars.n()) {
            f.push(vec![s as Literal * extension_literal(facet, x, vars)], FragmentKind::PathUnits)?;
        }
    }
    Ok(f)
}

fn check_ground(pc: &PathComplex, vars: &VarIndex) -> Result<()> {
    if pc.d() + 1 != vars.r() || pc.n() != vars.n() {
        return Err(Error::Usage(format!(
            "path complex on ({}, {}) does not match variables of rank {} on {} elements",
            pc.d(),
            pc.n(),
            vars.r(),
            vars.n()
        )));
    }
    Ok(())
}

/// The pair (⋁ z_i(x)), (⋁ ¬z_i(x)) over interior facets of `shortcut`,
/// z_i(x) = σ_i · [F_i, x] with σ computed along the shortcut.
pub fn encode_forbid_shortcut(shortcut: &[Vec<u32>], vars: &VarIndex) -> Result<[Clause; 2]> {
    if shortcut.len() <= 2 {
        return Err(Error::ShortcutWithoutInterior);
    }
    let signs = compute_path_signs(shortcut);
    let mut pos = Vec::new();
    let last = shortcut.len() - 1;
    for (facet, &sigma) in shortcut[1..last].iter().zip(&signs.sigma[1..last]) {
        let s = sigma as Literal;
        for x in complement(facet, vars.n()) {
            pos.push(s * extension_literal(facet, x, vars));
        }
    }
    let neg: Clause = pos.iter().map(|l| -l).collect();
    validate_clause(&pos, vars.num_vars())?;
    Ok([pos, neg])
}

/// GP axioms plus the boundary units of `pc`.
pub fn encode_instance(pc: &PathComplex) -> Result<(CnfFormula, VarIndex)> {
    let vars = VarIndex::new(pc.n(), pc.d() + 1);
    let mut f = encode_gp_axioms(pc.n(), pc.d() + 1);
    f.append(encode_path_on_boundary(pc, &vars)?);
    Ok((f, vars))
}

pub fn add_forbid_shortcut(f: &mut CnfFormula, shortcut: &[Vec<u32>], vars: &VarIndex) -> Result<[Clause; 2]> {
    let pair = encode_forbid_shortcut(shortcut, vars)?;
    for c in &pair {
        f.push_unchecked(c.clone(), FragmentKind::Shortcut);
    }
    Ok(pair)
}
