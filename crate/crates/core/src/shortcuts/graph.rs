use std::ops::ControlFlow;

/// Finite undirected graph with deterministic neighbor order.
pub trait Graph {
    type Node: Copy + Eq;

    fn neighbors(&self, v: Self::Node) -> Vec<Self::Node>;

    fn adjacent(&self, a: Self::Node, b: Self::Node) -> bool;

    /// Admissible lower bound on the distance from `a` to `b`.
    fn distance_lower_bound(&self, _a: Self::Node, _b: Self::Node) -> usize {
        0
    }
}

/// Streams each inclusion-minimal `s`–`t` path with at most `max_len`
/// edges, in DFS order over sorted neighbor lists.
///
/// A path grows from `s` only by nodes adjacent to its current end and to no
/// earlier node, so every prefix is itself inclusion-minimal.
pub fn for_each_inclusion_minimal<G: Graph>(
    g: &G,
    s: G::Node,
    t: G::Node,
    max_len: usize,
    mut visit: impl FnMut(&[G::Node]) -> ControlFlow<()>,
) {
    if s == t {
        return;
    }
    let mut path = vec![s];
    let _ = extend(g, t, max_len, &mut path, &mut visit);
}

fn extend<G: Graph>(
    g: &G,
    t: G::Node,
    max_len: usize,
    path: &mut Vec<G::Node>,
    visit: &mut impl FnMut(&[G::Node]) -> ControlFlow<()>,
) -> ControlFlow<()> {
    let end = *path.last().unwrap();
    let used = path.len() - 1;
    if g.adjacent(end, t) {
        // any other continuation would later meet t with a chord from `end`
        path.push(t);
        let flow = visit(path);
        path.pop();
        return flow;
    }
    if used + 1 >= max_len {
        return ControlFlow::Continue(());
    }
    for w in g.neighbors(end) {
        if used + 1 + g.distance_lower_bound(w, t) > max_len {
            continue;
        }
        if path.contains(&w) || path[..path.len() - 1].iter().any(|&u| g.adjacent(u, w)) {
            continue;
        }
        path.push(w);
        let flow = extend(g, t, max_len, path, visit);
        path.pop();
        flow?;
    }
    ControlFlow::Continue(())
}

pub fn enumerate_inclusion_minimal<G: Graph>(g: &G, s: G::Node, t: G::Node, max_len: usize) -> Vec<Vec<G::Node>> {
    let mut out = Vec::new();
    for_each_inclusion_minimal(g, s, t, max_len, |p| {
        out.push(p.to_vec());
        ControlFlow::Continue(())
    });
    out
}

/// d-subsets of `{1..n}` as bitmasks (bit i-1 for element i), adjacent when
/// they differ by one exchange. Nodes are produced on demand.
#[derive(Clone, Copy, Debug)]
pub struct PivotGraph {
    d: usize,
    n: usize,
}

impl PivotGraph {
    pub fn new(d: usize, n: usize) -> Self {
        assert!(n <= 64, "pivot graph supports at most 64 elements");
        PivotGraph { d, n }
    }

    pub fn d(&self) -> usize {
        self.d
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn degree(&self) -> usize {
        self.d * (self.n - self.d)
    }

    pub fn node(&self, facet: &[u32]) -> u64 {
        facet.iter().fold(0u64, |m, &x| m | 1 << (x - 1))
    }

    pub fn facet(&self, node: u64) -> Vec<u32> {
        (0..self.n as u32).filter(|i| node >> i & 1 == 1).map(|i| i + 1).collect()
    }
}

impl Graph for PivotGraph {
    type Node = u64;

    /// Sorted ascending by the facet's element list.
    fn neighbors(&self, v: u64) -> Vec<u64> {
        let full = if self.n == 64 { u64::MAX } else { (1u64 << self.n) - 1 };
        let mut out = Vec::with_capacity(self.degree());
        let mut inside = v;
        while inside != 0 {
            let x = inside & inside.wrapping_neg();
            inside ^= x;
            let mut outside = full & !v;
            while outside != 0 {
                let y = outside & outside.wrapping_neg();
                outside ^= y;
                out.push(v ^ x | y);
            }
        }
        out.sort_by_key(|&w| self.facet(w));
        out
    }

    fn adjacent(&self, a: u64, b: u64) -> bool {
        (a ^ b).count_ones() == 2
    }

    fn distance_lower_bound(&self, a: u64, b: u64) -> usize {
        (a & !b).count_ones() as usize
    }
}
