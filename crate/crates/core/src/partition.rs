//! Integer partitions in canonical non-increasing form.

use std::cmp::Ordering;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{HdcError, Result};

pub const MAX_PARTITION_N: usize = 64;

/// Class sizes `k_1 >= k_2 >= ... >= k_m`, all positive.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "Vec<usize>", into = "Vec<usize>")]
pub struct Partition {
    parts: Vec<usize>,
}

impl Partition {
    /// Sorts `parts` into canonical order; rejects empty input and zeros.
    pub fn new(mut parts: Vec<usize>) -> Result<Self> {
        if parts.is_empty() {
            return Err(HdcError::EmptyInput("a partition needs at least one part"));
        }
        if parts.contains(&0) {
            return Err(HdcError::InvalidConfig("partition parts must be positive".into()));
        }
        parts.sort_unstable_by(|a, b| b.cmp(a));
        Ok(Self { parts })
    }

    pub fn parts(&self) -> &[usize] {
        &self.parts
    }

    pub fn total(&self) -> usize {
        self.parts.iter().sum()
    }

    /// Number of classes `m`.
    pub fn len(&self) -> usize {
        self.parts.len()
    }

    pub fn is_empty(&self) -> bool {
        self.parts.is_empty()
    }
}

impl TryFrom<Vec<usize>> for Partition {
    type Error = HdcError;
    fn try_from(parts: Vec<usize>) -> Result<Self> {
        Self::new(parts)
    }
}

impl From<Partition> for Vec<usize> {
    fn from(p: Partition) -> Self {
        p.parts
    }
}

/// Reverse-lexicographic: `[3] < [2, 1] < [1, 1, 1]`, i.e. enumeration order.
impl Ord for Partition {
    fn cmp(&self, other: &Self) -> Ordering {
        other.parts.cmp(&self.parts)
    }
}

impl PartialOrd for Partition {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Dash-joined parts, e.g. `3-2-1`.
impl fmt::Display for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, p) in self.parts.iter().enumerate() {
            if i > 0 {
                f.write_str("-")?;
            }
            write!(f, "{p}")?;
        }
        Ok(())
    }
}

impl FromStr for Partition {
    type Err = HdcError;
    fn from_str(s: &str) -> Result<Self> {
        let parts = s
            .split('-')
            .map(|p| {
                p.trim().parse::<usize>().map_err(|e| HdcError::InvalidConfig(format!("bad partition {s:?}: {e}")))
            })
            .collect::<Result<Vec<_>>>()?;
        let canonical = Self::new(parts.clone())?;
        if canonical.parts != parts {
            return Err(HdcError::InvalidConfig(format!("partition {s:?} is not non-increasing")));
        }
        Ok(canonical)
    }
}

/// Lazily walks the partitions of `n` in reverse-lexicographic order,
/// starting from `[n]` and ending at `[1, 1, ..., 1]`.
#[derive(Debug, Clone)]
pub struct Partitions {
    current: Option<Vec<usize>>,
}

impl Partitions {
    pub fn new(n: usize) -> Result<Self> {
        if !(1..=MAX_PARTITION_N).contains(&n) {
            return Err(HdcError::PartitionOutOfRange(n));
        }
        Ok(Self { current: Some(vec![n]) })
    }
}

impl Iterator for Partitions {
    type Item = Partition;

    fn next(&mut self) -> Option<Partition> {
        let out = self.current.take()?;
        // Successor: lower the rightmost part above one and redistribute
        // everything to its right greedily.
        if let Some(i) = out.iter().rposition(|&p| p > 1) {
            let mut next = out[..i].to_vec();
            let cap = out[i] - 1;
            let mut rest = out.len() - i;
            next.push(cap);
            while rest > cap {
                next.push(cap);
                rest -= cap;
            }
            if rest > 0 {
                next.push(rest);
            }
            self.current = Some(next);
        }
        Some(Partition { parts: out })
    }
}

/// All partitions of `n`, `1 <= n <= 64`.
pub fn partitions(n: usize) -> Result<Vec<Partition>> {
    Ok(Partitions::new(n)?.collect())
}

/// `p(n)` via Euler's pentagonal-number recurrence.
pub fn partition_count(n: usize) -> u64 {
    let mut p = vec![0u64; n + 1];
    p[0] = 1;
    for m in 1..=n {
        let mut total: i128 = 0;
        for k in 1.. {
            let g1 = k * (3 * k - 1) / 2;
            if g1 > m {
                break;
            }
            let sign: i128 = if k % 2 == 1 { 1 } else { -1 };
            total += sign * p[m - g1] as i128;
            let g2 = k * (3 * k + 1) / 2;
            if g2 <= m {
                total += sign * p[m - g2] as i128;
            }
        }
        p[m] = total as u64;
    }
    p[n]
}
