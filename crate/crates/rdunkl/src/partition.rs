//! Partitions: weakly decreasing tuples of positive integers, ordered
//! reverse-lexicographically (largest first part wins).

use std::fmt;

use serde::Serialize;

use crate::error::{Error, Result};

/// A partition with trailing zeros dropped. The empty partition is allowed.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize)]
pub struct Partition {
    parts: Vec<u32>,
}

impl Partition {
    /// Builds a partition, validating weak decrease and positivity.
    /// Trailing zeros are stripped.
    pub fn new(mut parts: Vec<u32>) -> Result<Self> {
        while parts.last() == Some(&0) {
            parts.pop();
        }
        if !parts.windows(2).all(|w| w[0] >= w[1]) {
            return Err(Error::InvalidArgument(format!(
                "partition parts must be weakly decreasing, got {parts:?}"
            )));
        }
        if parts.iter().any(|&p| p == 0) {
            return Err(Error::InvalidArgument(format!(
                "interior zero part in {parts:?}"
            )));
        }
        Ok(Partition { parts })
    }

    pub fn empty() -> Self {
        Partition { parts: Vec::new() }
    }

    /// `(1, 1, ..., 1)` with `ones` parts.
    pub fn ones(ones: usize) -> Self {
        Partition {
            parts: vec![1; ones],
        }
    }

    /// Single-row partition `(m)`; the empty partition for `m = 0`.
    pub fn row(m: u32) -> Self {
        if m == 0 {
            Partition::empty()
        } else {
            Partition { parts: vec![m] }
        }
    }

    pub fn parts(&self) -> &[u32] {
        &self.parts
    }

    pub fn part(&self, i: usize) -> u32 {
        self.parts.get(i).copied().unwrap_or(0)
    }

    /// Weight |lambda|.
    pub fn weight(&self) -> u32 {
        self.parts.iter().sum()
    }

    /// Length l(lambda).
    pub fn length(&self) -> usize {
        self.parts.len()
    }

    pub fn is_empty(&self) -> bool {
        self.parts.is_empty()
    }

    /// Exponent vector padded to `n` slots. Errors if the partition needs
    /// more than `n` variables.
    pub fn to_exponents(&self, n: usize) -> Result<Vec<u32>> {
        if self.length() > n {
            return Err(Error::InvalidArgument(format!(
                "partition {self} has length {} > ambient {n}",
                self.length()
            )));
        }
        let mut e = self.parts.clone();
        e.resize(n, 0);
        Ok(e)
    }

    /// Dominance order: self >= other, comparable only at equal weight.
    pub fn dominates(&self, other: &Partition) -> bool {
        if self.weight() != other.weight() {
            return false;
        }
        let len = self.length().max(other.length());
        let mut a = 0u64;
        let mut b = 0u64;
        for i in 0..len {
            a += u64::from(self.part(i));
            b += u64::from(other.part(i));
            if a < b {
                return false;
            }
        }
        true
    }
}

impl PartialOrd for Partition {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

/// Reverse-lexicographic comparison: the first differing part decides, with
/// missing parts read as zero. Refines dominance on equal-weight partitions.
impl Ord for Partition {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        let len = self.length().max(other.length());
        for i in 0..len {
            match self.part(i).cmp(&other.part(i)) {
                std::cmp::Ordering::Equal => continue,
                ord => return ord,
            }
        }
        std::cmp::Ordering::Equal
    }
}

impl fmt::Display for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, p) in self.parts.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{p}")?;
        }
        write!(f, ")")
    }
}

/// All partitions of weight `m` with at most `max_len` parts, in
/// reverse-lexicographic order (largest first).
pub fn enumerate_partitions(m: u32, max_len: usize) -> Vec<Partition> {
    let mut out = Vec::new();
    let mut prefix = Vec::new();
    descend(m, m, max_len, &mut prefix, &mut out);
    out
}

fn descend(remaining: u32, max_part: u32, slots: usize, prefix: &mut Vec<u32>, out: &mut Vec<Partition>) {
    if remaining == 0 {
        out.push(Partition {
            parts: prefix.clone(),
        });
        return;
    }
    if slots == 0 {
        return;
    }
    let hi = remaining.min(max_part);
    // Largest next part first keeps the output in reverse-lex order.
    for p in (1..=hi).rev() {
        prefix.push(p);
        descend(remaining - p, p, slots - 1, prefix, out);
        prefix.pop();
    }
}

/// Partitions of every weight `0..=max_weight` with at most `max_len` parts,
/// grouped by weight.
pub fn partitions_up_to(max_weight: u32, max_len: usize) -> Vec<Vec<Partition>> {
    (0..=max_weight)
        .map(|m| enumerate_partitions(m, max_len))
        .collect()
}
