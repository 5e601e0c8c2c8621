//! Uniform chirotopes stored as one sign per sorted basis.

mod points;

pub use points::{chirotope_from_points, determinant_sign, homogenize};

use serde::{Deserialize, Serialize};
use std::collections::{HashMap, VecDeque};

use crate::combinatorics::{complement, subsets, SubsetIndex};
use crate::{Error, Result};

/// Parity of the permutation that sorts `y`: +1 if even, -1 if odd.
pub fn tau(y: &[u32]) -> Result<i8> {
    let mut inversions = 0usize;
    for i in 0..y.len() {
        for j in i + 1..y.len() {
            if y[i] == y[j] {
                return Err(Error::DegenerateTuple(y[i]));
            }
            if y[i] > y[j] {
                inversions += 1;
            }
        }
    }
    Ok(if inversions.is_multiple_of(2) { 1 } else { -1 })
}

/// Sign of `(facet, e)` relative to `sorted(facet ∪ {e})` for a sorted facet.
#[inline]
pub(crate) fn append_parity(sorted_facet: &[u32], e: u32) -> i8 {
    let above = sorted_facet.iter().filter(|&&x| x > e).count();
    if above % 2 == 0 {
        1
    } else {
        -1
    }
}

/// A GP violation: `sigma` and the quadruple `x1 < x2 < x3 < x4`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct AxiomWitness {
    pub sigma: Vec<u32>,
    pub quad: [u32; 4],
}

impl AxiomWitness {
    /// The six bases involved in the violated relation.
    pub fn bases(&self) -> Vec<Vec<u32>> {
        let q = self.quad;
        [(0, 1), (2, 3), (0, 2), (1, 3), (0, 3), (1, 2)]
            .iter()
            .map(|&(a, b)| {
                let mut v = self.sigma.clone();
                v.push(q[a]);
                v.push(q[b]);
                v.sort_unstable();
                v
            })
            .collect()
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Default, Serialize, Deserialize)]
pub struct FacetReport {
    /// Sorted (r-1)-subsets, in colex order.
    pub facets: Vec<Vec<u32>>,
    /// Elements that lie on no facet.
    pub uncovered: Vec<u32>,
}

impl FacetReport {
    pub fn is_matroid_polytope(&self) -> bool {
        self.uncovered.is_empty()
    }

    pub fn contains(&self, f: &[u32]) -> bool {
        self.facets.iter().any(|g| g == f)
    }
}

#[derive(Clone, Debug)]
pub struct Chirotope {
    n: usize,
    r: usize,
    index: SubsetIndex,
    signs: Vec<i8>,
}

impl PartialEq for Chirotope {
    fn eq(&self, other: &Self) -> bool {
        self.n == other.n && self.r == other.r && self.signs == other.signs
    }
}

impl Eq for Chirotope {}

impl Chirotope {
    /// `signs` is indexed by colex rank of the sorted basis.
    pub fn new(n: usize, r: usize, signs: Vec<i8>) -> Result<Self> {
        let index = SubsetIndex::new(n, r);
        if signs.len() != index.len() {
            return Err(Error::TupleLength { got: signs.len(), expected: index.len() });
        }
        if let Some(pos) = signs.iter().position(|&s| s != 1 && s != -1) {
            return Err(Error::Usage(format!(
                "sign of basis {:?} is {}, expected ±1",
                index.unrank(pos),
                signs[pos]
            )));
        }
        Ok(Chirotope { n, r, index, signs })
    }

    pub fn from_fn(n: usize, r: usize, mut f: impl FnMut(&[u32]) -> i8) -> Result<Self> {
        let signs = subsets(n, r).map(|b| f(&b)).collect();
        Self::new(n, r, signs)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn r(&self) -> usize {
        self.r
    }

    pub fn signs(&self) -> &[i8] {
        &self.signs
    }

    pub fn index(&self) -> &SubsetIndex {
        &self.index
    }

    /// Sign of a sorted basis, no checks.
    #[inline]
    pub fn sign_sorted(&self, sorted: &[u32]) -> i8 {
        self.signs[self.index.rank(sorted)]
    }

    /// Alternating extension: τ(Y) · χ(sorted(Y)).
    pub fn evaluate(&self, y: &[u32]) -> Result<i8> {
        if y.len() != self.r {
            return Err(Error::TupleLength { got: y.len(), expected: self.r });
        }
        for &e in y {
            if e == 0 || e as usize > self.n {
                return Err(Error::ElementOutOfRange { element: e, n: self.n });
            }
        }
        let t = tau(y)?;
        let mut s = y.to_vec();
        s.sort_unstable();
        Ok(t * self.sign_sorted(&s))
    }

    /// χ(F, e) for a sorted (r-1)-set F and e ∉ F.
    #[inline]
    pub fn extension_sign(&self, sorted_facet: &[u32], e: u32) -> i8 {
        let mut b = Vec::with_capacity(self.r);
        b.extend_from_slice(sorted_facet);
        let pos = b.partition_point(|&x| x < e);
        b.insert(pos, e);
        append_parity(sorted_facet, e) * self.sign_sorted(&b)
    }

    pub fn negate(&self) -> Self {
        Chirotope { signs: self.signs.iter().map(|s| -s).collect(), ..self.clone() }
    }

    pub fn verify_axioms(&self) -> bool {
        self.axiom_violation().is_none()
    }

    /// First (σ, quadruple) in colex order whose three GP products all agree.
    pub fn axiom_violation(&self) -> Option<AxiomWitness> {
        if self.r < 2 || self.n < self.r + 2 {
            return None;
        }
        let mut buf = Vec::with_capacity(self.r);
        for sigma in subsets(self.n, self.r - 2) {
            let rest = complement(&sigma, self.n);
            for q in subsets(rest.len(), 4) {
                let x: Vec<u32> = q.iter().map(|&i| rest[i as usize - 1]).collect();
                let mut chi = |a: u32, b: u32| {
                    buf.clear();
                    buf.extend_from_slice(&sigma);
                    buf.push(a);
                    buf.push(b);
                    // σ sorted, a < b and both outside σ
                    let p = append_parity(&sigma, a) * append_parity(&sigma, b);
                    buf.sort_unstable();
                    p * self.sign_sorted(&buf)
                };
                let p1 = chi(x[0], x[1]) * chi(x[2], x[3]);
                let p2 = -chi(x[0], x[2]) * chi(x[1], x[3]);
                let p3 = chi(x[0], x[3]) * chi(x[1], x[2]);
                if p1 == p2 && p2 == p3 {
                    return Some(AxiomWitness {
                        sigma: sigma.clone(),
                        quad: [x[0], x[1], x[2], x[3]],
                    });
                }
            }
        }
        None
    }

    /// (r-1)-sets F with χ(F, e) constant over e ∉ F, plus uncovered elements.
    pub fn facets_of(&self) -> FacetReport {
        let mut report = FacetReport::default();
        if self.r == 0 {
            return report;
        }
        let mut covered = vec![false; self.n + 1];
        for f in subsets(self.n, self.r - 1) {
            if self.is_facet(&f) {
                for &v in &f {
                    covered[v as usize] = true;
                }
                report.facets.push(f);
            }
        }
        report.uncovered = (1..=self.n as u32).filter(|&v| !covered[v as usize]).collect();
        report
    }

    pub fn is_facet(&self, sorted_facet: &[u32]) -> bool {
        let mut sign = 0i8;
        for e in complement(sorted_facet, self.n) {
            let s = self.extension_sign(sorted_facet, e);
            if sign == 0 {
                sign = s;
            } else if s != sign {
                return false;
            }
        }
        true
    }

    /// Shortest path length between two facets in the boundary's dual graph.
    pub fn dual_graph_distance(&self, a: &[u32], b: &[u32]) -> Result<usize> {
        let report = self.facets_of();
        for f in [a, b] {
            if !report.contains(f) {
                return Err(Error::NotAFacet(f.to_vec()));
            }
        }
        shortest_facet_path(&report.facets, a, b)
            .map(|p| p.len() - 1)
            .ok_or_else(|| Error::Disconnected(a.to_vec(), b.to_vec()))
    }

    /// Header `n r`, then one `+`/`-` per sorted basis in colex order.
    pub fn to_text(&self) -> String {
        let mut out = format!("{} {}\n", self.n, self.r);
        for &s in &self.signs {
            out.push(if s > 0 { '+' } else { '-' });
            out.push('\n');
        }
        out
    }

    pub fn from_text(text: &str) -> Result<Self> {
        let mut lines = text
            .lines()
            .enumerate()
            .map(|(i, l)| (i + 1, l.trim()))
            .filter(|(_, l)| !l.is_empty());
        let (hl, header) = lines
            .next()
            .ok_or(Error::Parse { line: 1, msg: "missing header".into() })?;
        let nums: Vec<usize> = header
            .split_whitespace()
            .map(|t| t.parse())
            .collect::<std::result::Result<_, _>>()
            .map_err(|e| Error::Parse { line: hl, msg: format!("bad header: {e}") })?;
        let [n, r] = nums[..] else {
            return Err(Error::Parse { line: hl, msg: "header must be `n r`".into() });
        };
        let mut signs = Vec::new();
        for (ln, l) in lines {
            signs.push(match l {
                "+" => 1,
                "-" => -1,
                _ => return Err(Error::Parse { line: ln, msg: format!("expected + or -, got {l:?}") }),
            });
        }
        Self::new(n, r, signs)
    }
}

fn share_ridge(a: &[u32], b: &[u32]) -> bool {
    let common = a.iter().filter(|x| b.binary_search(x).is_ok()).count();
    common + 1 == a.len()
}

/// Lexicographically smallest among the shortest ridge-adjacent paths from
/// `a` to `b` over `facets` (all sorted).
pub fn shortest_facet_path(facets: &[Vec<u32>], a: &[u32], b: &[u32]) -> Option<Vec<Vec<u32>>> {
    shortest_facet_paths(facets, a, b, 1).into_iter().next()
}

/// Up to `limit` shortest paths from `a` to `b` in the dual graph of
/// `facets`, in lexicographic order of their facet sequences.
pub fn shortest_facet_paths(facets: &[Vec<u32>], a: &[u32], b: &[u32], limit: usize) -> Vec<Vec<Vec<u32>>> {
    let pos: HashMap<&[u32], usize> = facets.iter().enumerate().map(|(i, f)| (f.as_slice(), i)).collect();
    let (Some(&ia), Some(&ib)) = (pos.get(a), pos.get(b)) else {
        return Vec::new();
    };
    // adjacency via ridge buckets
    let mut by_ridge: HashMap<Vec<u32>, Vec<usize>> = HashMap::new();
    for (i, f) in facets.iter().enumerate() {
        for skip in 0..f.len() {
            let ridge: Vec<u32> = f.iter().enumerate().filter(|&(j, _)| j != skip).map(|(_, &x)| x).collect();
            by_ridge.entry(ridge).or_default().push(i);
        }
    }
    let mut adj = vec![Vec::new(); facets.len()];
    for members in by_ridge.values() {
        for &x in members {
            for &y in members {
                if x != y {
                    adj[x].push(y);
                }
            }
        }
    }
    for list in &mut adj {
        list.sort_by(|&x, &y| facets[x].cmp(&facets[y]));
        list.dedup();
    }
    // distances to the target, then lexicographic descent
    let mut dist = vec![usize::MAX; facets.len()];
    dist[ib] = 0;
    let mut queue = VecDeque::from([ib]);
    while let Some(u) = queue.pop_front() {
        for &v in &adj[u] {
            if dist[v] == usize::MAX {
                dist[v] = dist[u] + 1;
                queue.push_back(v);
            }
        }
    }
    let mut out = Vec::new();
    if dist[ia] == usize::MAX || limit == 0 {
        return out;
    }
    fn descend(
        cur: usize,
        adj: &[Vec<usize>],
        dist: &[usize],
        path: &mut Vec<usize>,
        out: &mut Vec<Vec<usize>>,
        limit: usize,
    ) {
        if dist[cur] == 0 {
            out.push(path.clone());
            return;
        }
        for &v in &adj[cur] {
            if dist[v] + 1 == dist[cur] {
                path.push(v);
                descend(v, adj, dist, path, out, limit);
                path.pop();
                if out.len() >= limit {
                    return;
                }
            }
        }
    }
    let mut idx = Vec::new();
    descend(ia, &adj, &dist, &mut vec![ia], &mut idx, limit);
    for p in idx {
        let path: Vec<Vec<u32>> = p.iter().map(|&i| facets[i].clone()).collect();
        debug_assert!(path.windows(2).all(|w| share_ridge(&w[0], &w[1])));
        out.push(path);
    }
    out
}
