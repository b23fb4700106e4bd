//! Finite permutations used as avoidance targets.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PatternError {
    #[error("{0:?} is not a permutation of 1..=m")]
    NotAPermutation(Vec<usize>),
    #[error("pattern {0} contains 321, so it has infinitely many affine avoiders")]
    Not321Avoiding(Pattern),
    #[error("bound for pattern {0} overflows 64 bits")]
    Overflow(Pattern),
    #[error("parse error: {0}")]
    Parse(String),
}

/// A permutation `p_1 … p_m` of `1..=m` in one-line notation.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "String", into = "String")]
pub struct Pattern {
    entries: Vec<usize>,
}

/// Whether `p` has infinitely many avoiders in every rank.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum Finiteness {
    Finite,
    Infinite,
}

/// Left-to-right maxima of a pattern and the complementary subsequence.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MaximaSplit {
    pub maxima: Vec<usize>,
    pub rest: Vec<usize>,
}

impl MaximaSplit {
    /// Number of left-to-right maxima.
    pub fn len(&self) -> usize {
        self.maxima.len()
    }

    pub fn is_empty(&self) -> bool {
        self.maxima.is_empty()
    }

    pub fn rest_is_increasing(&self) -> bool {
        self.rest.windows(2).all(|w| w[0] < w[1])
    }
}

impl Pattern {
    pub fn new(entries: Vec<usize>) -> Result<Self, PatternError> {
        let m = entries.len();
        let mut seen = vec![false; m + 1];
        for &e in &entries {
            if e == 0 || e > m || seen[e] {
                return Err(PatternError::NotAPermutation(entries));
            }
            seen[e] = true;
        }
        Ok(Self { entries })
    }

    pub fn identity(m: usize) -> Self {
        Self {
            entries: (1..=m).collect(),
        }
    }

    /// Every pattern of size `m` in lexicographic order.
    pub fn all(m: usize) -> Vec<Self> {
        let mut out = Vec::new();
        let mut current = Vec::with_capacity(m);
        let mut used = vec![false; m + 1];
        fn rec(m: usize, current: &mut Vec<usize>, used: &mut [bool], out: &mut Vec<Pattern>) {
            if current.len() == m {
                out.push(Pattern {
                    entries: current.clone(),
                });
                return;
            }
            for v in 1..=m {
                if !used[v] {
                    used[v] = true;
                    current.push(v);
                    rec(m, current, used, out);
                    current.pop();
                    used[v] = false;
                }
            }
        }
        rec(m, &mut current, &mut used, &mut out);
        out
    }

    pub fn size(&self) -> usize {
        self.entries.len()
    }

    pub fn entries(&self) -> &[usize] {
        &self.entries
    }

    pub fn inverse(&self) -> Self {
        let mut entries = vec![0; self.size()];
        for (pos, &v) in self.entries.iter().enumerate() {
            entries[v - 1] = pos + 1;
        }
        Self { entries }
    }

    /// Positions (0-based) of the values `1, 2, …, m`.
    pub fn positions_by_rank(&self) -> Vec<usize> {
        self.inverse().entries.iter().map(|p| p - 1).collect()
    }

    /// Classical containment: some subsequence of `self` is order-isomorphic
    /// to `other`.
    pub fn contains_pattern(&self, other: &Pattern) -> bool {
        fn extend(p: &[usize], q: &[usize], start: usize, chosen: &mut Vec<usize>) -> bool {
            let k = chosen.len();
            if k == q.len() {
                return true;
            }
            for idx in start..p.len() {
                let v = p[idx];
                let consistent = chosen
                    .iter()
                    .zip(q)
                    .all(|(&u, &qu)| (u < v) == (qu < q[k]));
                if consistent {
                    chosen.push(v);
                    if extend(p, q, idx + 1, chosen) {
                        return true;
                    }
                    chosen.pop();
                }
            }
            false
        }
        other.size() <= self.size()
            && extend(&self.entries, &other.entries, 0, &mut Vec::with_capacity(other.size()))
    }

    pub fn avoids_321(&self) -> bool {
        !self.contains_pattern(&Pattern {
            entries: vec![3, 2, 1],
        })
    }

    /// Some proper prefix `p_1 … p_j` is a permutation of `1..=j`.
    pub fn is_decomposable(&self) -> bool {
        let mut max = 0;
        for (j, &v) in self.entries.iter().enumerate().take(self.size().saturating_sub(1)) {
            max = max.max(v);
            if max == j + 1 {
                return true;
            }
        }
        false
    }

    pub fn maxima_split(&self) -> MaximaSplit {
        let mut maxima = Vec::new();
        let mut rest = Vec::new();
        let mut best = 0;
        for &v in &self.entries {
            if v > best {
                best = v;
                maxima.push(v);
            } else {
                rest.push(v);
            }
        }
        MaximaSplit { maxima, rest }
    }

    pub fn finiteness(&self) -> Finiteness {
        if self.avoids_321() {
            Finiteness::Finite
        } else {
            Finiteness::Infinite
        }
    }

    /// `m^{ℓ+1} + 1`, where `ℓ` counts left-to-right maxima. Every avoider
    /// `w` of rank `n` has `⌊|w_β − w_α| / n⌋` at most this for all window
    /// positions `α < β`.
    pub fn spread_bound(&self) -> Result<u64, PatternError> {
        if !self.avoids_321() {
            return Err(PatternError::Not321Avoiding(self.clone()));
        }
        let m = self.size() as u64;
        let exp = self.maxima_split().len() as u32 + 1;
        m.checked_pow(exp)
            .and_then(|v| v.checked_add(1))
            .ok_or_else(|| PatternError::Overflow(self.clone()))
    }

    /// `(m^{ℓ+1} + 2)·n(n−1)/2`, an upper bound on the length of any avoider
    /// of rank `n`.
    pub fn length_bound(&self, n: usize) -> Result<u64, PatternError> {
        let per_pair = self
            .spread_bound()?
            .checked_add(1)
            .ok_or_else(|| PatternError::Overflow(self.clone()))?;
        let pairs = (n as u64) * (n as u64).saturating_sub(1) / 2;
        per_pair
            .checked_mul(pairs)
            .ok_or_else(|| PatternError::Overflow(self.clone()))
    }
}

impl fmt::Display for Pattern {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.size() <= 9 {
            for v in &self.entries {
                write!(f, "{v}")?;
            }
            Ok(())
        } else {
            let parts: Vec<String> = self.entries.iter().map(usize::to_string).collect();
            write!(f, "{}", parts.join(","))
        }
    }
}

impl FromStr for Pattern {
    type Err = PatternError;

    /// Digit string (`4231`) for `m <= 9`, comma-separated otherwise.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let s = s.trim();
        let entries = if s.contains(',') {
            s.split(',')
                .map(|tok| {
                    tok.trim()
                        .parse::<usize>()
                        .map_err(|e| PatternError::Parse(format!("bad entry {tok:?}: {e}")))
                })
                .collect::<Result<Vec<_>, _>>()?
        } else {
            if s.len() > 9 {
                return Err(PatternError::Parse(format!(
                    "digit string {s:?} is ambiguous beyond 9 entries; use comma form, e.g. 10,2,..."
                )));
            }
            s.chars()
                .map(|c| {
                    c.to_digit(10)
                        .map(|d| d as usize)
                        .ok_or_else(|| PatternError::Parse(format!("bad digit {c:?} in {s:?}")))
                })
                .collect::<Result<Vec<_>, _>>()?
        };
        if entries.is_empty() {
            return Err(PatternError::Parse("empty pattern".into()));
        }
        Self::new(entries)
    }
}

impl TryFrom<String> for Pattern {
    type Error = PatternError;

    fn try_from(s: String) -> Result<Self, Self::Error> {
        s.parse()
    }
}

impl From<Pattern> for String {
    fn from(p: Pattern) -> Self {
        p.to_string()
    }
}
