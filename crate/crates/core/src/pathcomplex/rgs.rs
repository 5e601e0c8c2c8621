use serde::{Deserialize, Serialize};
use std::fmt;

use crate::{Error, Result};

/// A sequence `s_1..s_L` with `s_1 = 1` where every symbol exceeds the
/// running maximum by at most one, using every symbol `1..=alphabet_size`.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct RestrictedGrowthString {
    symbols: Vec<u32>,
    alphabet_size: u32,
}

impl RestrictedGrowthString {
    pub fn new(symbols: Vec<u32>) -> Result<Self> {
        let mut max = 0;
        for (i, &s) in symbols.iter().enumerate() {
            if s == 0 || s > max + 1 {
                return Err(Error::InvalidRgs(format!(
                    "symbol {s} at position {} exceeds running maximum {max} by more than one",
                    i + 1
                )));
            }
            max = max.max(s);
        }
        Ok(RestrictedGrowthString {
            symbols,
            alphabet_size: max,
        })
    }

    pub fn symbols(&self) -> &[u32] {
        &self.symbols
    }

    pub fn alphabet_size(&self) -> u32 {
        self.alphabet_size
    }

    pub fn len(&self) -> usize {
        self.symbols.len()
    }

    pub fn is_empty(&self) -> bool {
        self.symbols.is_empty()
    }

    /// Set partition of `{1..len}` whose blocks are ordered by minimum.
    pub fn to_partition(&self) -> Vec<Vec<usize>> {
        let mut blocks = vec![Vec::new(); self.alphabet_size as usize];
        for (i, &s) in self.symbols.iter().enumerate() {
            blocks[s as usize - 1].push(i + 1);
        }
        blocks
    }
}

impl fmt::Display for RestrictedGrowthString {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for s in &self.symbols {
            write!(f, "{s}")?;
        }
        Ok(())
    }
}

/// Lexicographic stream of restricted growth strings of a fixed length
/// using exactly `alphabet_size` symbols.
pub struct RgsIter {
    current: Option<Vec<u32>>,
    alphabet: u32,
}

pub fn enumerate_rgs(length: usize, alphabet_size: usize) -> RgsIter {
    let current = if alphabet_size >= 1 && length >= alphabet_size {
        let mut first = vec![1u32; length - alphabet_size + 1];
        first.extend(2..=alphabet_size as u32);
        Some(first)
    } else {
        None
    };
    RgsIter {
        current,
        alphabet: alphabet_size as u32,
    }
}

impl Iterator for RgsIter {
    type Item = RestrictedGrowthString;

    fn next(&mut self) -> Option<RestrictedGrowthString> {
        let cur = self.current.take()?;
        self.current = successor(&cur, self.alphabet);
        Some(RestrictedGrowthString {
            symbols: cur,
            alphabet_size: self.alphabet,
        })
    }
}

fn successor(s: &[u32], k: u32) -> Option<Vec<u32>> {
    let len = s.len();
    // prefix_max[i] = max(s[0..i])
    let mut prefix_max = vec![0u32; len + 1];
    for i in 0..len {
        prefix_max[i + 1] = prefix_max[i].max(s[i]);
    }
    for i in (1..len).rev() {
        let bumped = s[i] + 1;
        if bumped > prefix_max[i] + 1 || bumped > k {
            continue;
        }
        let m = prefix_max[i].max(bumped);
        let tail = len - i - 1;
        let missing = (k - m) as usize;
        if missing > tail {
            continue;
        }
        let mut next = s[..i].to_vec();
        next.push(bumped);
        next.extend(std::iter::repeat_n(1, tail - missing));
        next.extend(m + 1..=k);
        return Some(next);
    }
    None
}
