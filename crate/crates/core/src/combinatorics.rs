//! Binomials, colexicographic subset ranking and subset iteration.
//!
//! Subsets are sorted slices of 1-based element labels. The colex rank of
//! `{c_1 < ... < c_k}` is `sum_i C(c_i - 1, i)`, so every k-subset of
//! `{1..n}` maps densely onto `0..C(n, k)`.

pub fn binomial(n: usize, k: usize) -> u64 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    let mut acc: u64 = 1;
    for i in 0..k {
        acc = acc * (n - i) as u64 / (i + 1) as u64;
    }
    acc
}

/// Dense index of the k-subsets of `{1..n}` in colex order.
#[derive(Clone, Debug)]
pub struct SubsetIndex {
    n: usize,
    k: usize,
    // table[m][i] = C(m, i)
    table: Vec<Vec<u64>>,
}

impl SubsetIndex {
    pub fn new(n: usize, k: usize) -> Self {
        let table = (0..=n)
            .map(|m| (0..=k).map(|i| binomial(m, i)).collect())
            .collect();
        SubsetIndex { n, k, table }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn len(&self) -> usize {
        binomial(self.n, self.k) as usize
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    /// Colex rank of a sorted subset. The caller guarantees sortedness,
    /// distinctness and range.
    #[inline]
    pub fn rank(&self, sorted: &[u32]) -> usize {
        debug_assert_eq!(sorted.len(), self.k);
        debug_assert!(sorted.windows(2).all(|w| w[0] < w[1]));
        let mut r = 0u64;
        for (i, &c) in sorted.iter().enumerate() {
            r += self.table[(c - 1) as usize][i + 1];
        }
        r as usize
    }

    pub fn unrank(&self, mut rank: usize) -> Vec<u32> {
        let mut out = vec![0u32; self.k];
        let mut m = self.n;
        for i in (1..=self.k).rev() {
            // largest m with C(m, i) <= rank
            while self.table[m][i] as usize > rank {
                m -= 1;
            }
            rank -= self.table[m][i] as usize;
            out[i - 1] = m as u32 + 1;
        }
        out
    }
}

/// Iterator over the k-subsets of `{1..n}` in colex order.
pub struct Subsets {
    n: u32,
    current: Option<Vec<u32>>,
}

pub fn subsets(n: usize, k: usize) -> Subsets {
    let current = if k <= n {
        Some((1..=k as u32).collect())
    } else {
        None
    };
    Subsets {
        n: n as u32,
        current,
    }
}

impl Iterator for Subsets {
    type Item = Vec<u32>;

    fn next(&mut self) -> Option<Vec<u32>> {
        let cur = self.current.take()?;
        let k = cur.len();
        let mut next = cur.clone();
        let mut advanced = false;
        for i in 0..k {
            let limit = if i + 1 < k { next[i + 1] } else { self.n + 1 };
            if next[i] + 1 < limit {
                next[i] += 1;
                for (j, slot) in next.iter_mut().enumerate().take(i) {
                    *slot = j as u32 + 1;
                }
                advanced = true;
                break;
            }
        }
        if advanced {
            self.current = Some(next);
        }
        Some(cur)
    }
}

/// Elements of `{1..n}` not in `set`, ascending.
pub fn complement(set: &[u32], n: usize) -> Vec<u32> {
    (1..=n as u32).filter(|x| !set.contains(x)).collect()
}

/// Sorted union of a sorted set with extra elements.
pub fn sorted_with(set: &[u32], extra: &[u32]) -> Vec<u32> {
    let mut v: Vec<u32> = set.iter().chain(extra).copied().collect();
    v.sort_unstable();
    v
}

/// Stirling number of the second kind by the standard recurrence.
pub fn stirling2(n: usize, k: usize) -> u64 {
    let mut row = vec![0u64; k + 1];
    row[0] = 1;
    for _ in 0..n {
        for j in (1..=k).rev() {
            row[j] = j as u64 * row[j] + row[j - 1];
        }
        row[0] = 0;
    }
    row[k]
}
