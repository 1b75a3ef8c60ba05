//! Integer partitions: the index set of every symmetric-function basis.
//!
//! A [`Partition`] stores its positive parts in weakly decreasing order.
//! Trailing zeros are never stored, so structural equality and hashing are
//! unambiguous. Enumeration is reverse-lexicographic, which is a linear
//! extension of dominance order: if `mu` dominates `lambda` then `mu` is
//! listed before `lambda`.

use std::cmp::Ordering;
use std::fmt;

use num_bigint::BigUint;
use num_traits::One;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Default, Serialize, Deserialize)]
#[serde(try_from = "Vec<u32>", into = "Vec<u32>")]
pub struct Partition {
    parts: Vec<u32>,
}

impl Partition {
    /// Builds a partition from weakly decreasing parts. Zero parts are
    /// accepted only as a trailing run and are dropped.
    pub fn new(parts: Vec<u32>) -> Result<Self> {
        if parts.windows(2).any(|w| w[0] < w[1]) {
            return Err(Error::Domain(format!("parts {parts:?} are not weakly decreasing")));
        }
        let mut parts = parts;
        while parts.last() == Some(&0) {
            parts.pop();
        }
        Ok(Self { parts })
    }

    /// Sorts arbitrary non-negative parts into a partition.
    pub fn from_unsorted(mut parts: Vec<u32>) -> Self {
        parts.sort_unstable_by(|a, b| b.cmp(a));
        while parts.last() == Some(&0) {
            parts.pop();
        }
        Self { parts }
    }

    pub fn empty() -> Self {
        Self::default()
    }

    pub fn parts(&self) -> &[u32] {
        &self.parts
    }

    /// Part `i` (0-based), with implicit trailing zeros.
    pub fn part(&self, i: usize) -> u32 {
        self.parts.get(i).copied().unwrap_or(0)
    }

    /// Number of non-zero parts, l(tau).
    pub fn len(&self) -> usize {
        self.parts.len()
    }

    pub fn is_empty(&self) -> bool {
        self.parts.is_empty()
    }

    /// |tau|, the sum of the parts.
    pub fn modulus(&self) -> u32 {
        self.parts.iter().sum()
    }

    /// Parts padded with zeros to `n` entries.
    pub fn padded(&self, n: usize) -> Vec<u32> {
        let mut v = self.parts.clone();
        v.resize(n.max(v.len()), 0);
        v
    }

    /// Cells (i, j) of the Young diagram, 0-based.
    pub fn cells(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.parts
            .iter()
            .enumerate()
            .flat_map(|(i, &p)| (0..p as usize).map(move |j| (i, j)))
    }

    /// Conjugate partition: part j is the number of parts >= j.
    pub fn conjugate(&self) -> Self {
        let first = self.part(0);
        let parts = (1..=first)
            .map(|j| self.parts.iter().take_while(|&&p| p >= j).count() as u32)
            .collect();
        Self { parts }
    }

    /// tau! = product of the factorials of the parts.
    pub fn factorial(&self) -> BigUint {
        self.parts
            .iter()
            .map(|&p| factorial(p))
            .fold(BigUint::one(), |acc, f| acc * f)
    }

    /// Sum over parts of (i-1) * tau_i, the statistic n(tau).
    pub fn weighted_sum(&self) -> u64 {
        self.parts.iter().enumerate().map(|(i, &p)| i as u64 * p as u64).sum()
    }

    /// Dominance comparison at equal modulus.
    pub fn dominance(&self, other: &Partition) -> Result<Dominance> {
        if self.modulus() != other.modulus() {
            return Err(Error::ModulusMismatch {
                left: self.clone(),
                right: other.clone(),
            });
        }
        Ok(self.dominance_unchecked(other))
    }

    pub(crate) fn dominance_unchecked(&self, other: &Partition) -> Dominance {
        if self == other {
            return Dominance::Equal;
        }
        let len = self.len().max(other.len());
        let (mut a, mut b) = (0u32, 0u32);
        let (mut le, mut ge) = (true, true);
        for i in 0..len {
            a += self.part(i);
            b += other.part(i);
            le &= a <= b;
            ge &= a >= b;
        }
        match (le, ge) {
            (true, _) => Dominance::Less,
            (_, true) => Dominance::Greater,
            _ => Dominance::Incomparable,
        }
    }

    /// True if `self` <= `other` in dominance order (equality included).
    pub fn is_dominated_by(&self, other: &Partition) -> bool {
        self.modulus() == other.modulus()
            && matches!(self.dominance_unchecked(other), Dominance::Less | Dominance::Equal)
    }

    /// Number of distinct permutations of the parts padded to `n_vars`,
    /// i.e. `N! / (l_1! ... l_P!)` over the multiplicities of distinct values
    /// (zeros included).
    pub fn multiplicity_count(&self, n_vars: usize) -> Result<BigUint> {
        self.check_len(n_vars)?;
        let padded = self.padded(n_vars);
        let mut num = factorial(n_vars as u32);
        let mut i = 0;
        while i < padded.len() {
            let run = padded[i..].iter().take_while(|&&p| p == padded[i]).count();
            num /= factorial(run as u32);
            i += run;
        }
        Ok(num)
    }

    pub(crate) fn check_len(&self, n_vars: usize) -> Result<()> {
        if self.len() > n_vars {
            return Err(Error::TooManyParts {
                partition: self.clone(),
                len: self.len(),
                n_vars,
            });
        }
        Ok(())
    }
}

impl TryFrom<Vec<u32>> for Partition {
    type Error = Error;
    fn try_from(v: Vec<u32>) -> Result<Self> {
        Partition::new(v)
    }
}

impl From<Partition> for Vec<u32> {
    fn from(p: Partition) -> Self {
        p.parts
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

impl fmt::Debug for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl std::str::FromStr for Partition {
    type Err = Error;

    /// Parses "4,4,2" (whitespace tolerated). An empty string or "0" is the
    /// empty partition.
    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim().trim_start_matches('(').trim_end_matches(')');
        if s.is_empty() {
            return Ok(Partition::empty());
        }
        let parts = s
            .split(',')
            .map(|t| {
                t.trim()
                    .parse::<u32>()
                    .map_err(|e| Error::Domain(format!("bad part {t:?}: {e}")))
            })
            .collect::<Result<Vec<_>>>()?;
        Partition::new(parts)
    }
}

/// Outcome of a dominance comparison.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Dominance {
    Less,
    Equal,
    Greater,
    Incomparable,
}

impl Dominance {
    pub fn reverse(self) -> Self {
        match self {
            Dominance::Less => Dominance::Greater,
            Dominance::Greater => Dominance::Less,
            d => d,
        }
    }

    pub fn as_ordering(self) -> Option<Ordering> {
        match self {
            Dominance::Less => Some(Ordering::Less),
            Dominance::Equal => Some(Ordering::Equal),
            Dominance::Greater => Some(Ordering::Greater),
            Dominance::Incomparable => None,
        }
    }
}

/// All partitions of `n` with at most `max_len` parts, in reverse
/// lexicographic order: (n), (n-1,1), (n-2,2), (n-2,1,1), ...
pub fn enumerate_partitions(n: u32, max_len: usize) -> Vec<Partition> {
    let mut out = Vec::new();
    let mut current = Vec::new();
    fill(n, n, max_len, &mut current, &mut out);
    out
}

fn fill(remaining: u32, cap: u32, slots: usize, current: &mut Vec<u32>, out: &mut Vec<Partition>) {
    if remaining == 0 {
        out.push(Partition { parts: current.clone() });
        return;
    }
    if slots == 0 {
        return;
    }
    for p in (1..=cap.min(remaining)).rev() {
        // the remaining slots must be able to absorb what is left
        if (p as u64) * (slots as u64) < remaining as u64 {
            break;
        }
        current.push(p);
        fill(remaining - p, p, slots - 1, current, out);
        current.pop();
    }
}

pub fn factorial(n: u32) -> BigUint {
    (2..=n).fold(BigUint::one(), |acc, k| acc * k)
}
