//! Elements of the affine symmetric group stored by their base window.
//!
//! An affine permutation of rank `n` is a bijection `w: Z -> Z` with
//! `w(i + n) = w(i) + n` whose base window `[w(1), ..., w(n)]` sums to
//! `n(n+1)/2`. The window determines the whole bijection, so it is the only
//! thing stored; every index computation is derived from it.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};
use thiserror::Error;

/// Largest absolute window entry accepted by the validating constructors.
pub const MAX_ENTRY: i64 = 1 << 40;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum AffineError {
    #[error("rank {0} is too small (need n >= 2)")]
    RankTooSmall(usize),
    #[error("window has {found} entries but rank is {expected}")]
    WrongLength { expected: usize, found: usize },
    #[error("entries {a} and {b} are congruent mod {n}")]
    ResidueClash { a: i64, b: i64, n: usize },
    #[error("window sums to {sum}, expected {expected}")]
    BadSum { sum: i64, expected: i64 },
    #[error("entry {0} exceeds the supported magnitude 2^40")]
    EntryOutOfRange(i64),
    #[error("rank mismatch: {left} vs {right}")]
    RankMismatch { left: usize, right: usize },
    #[error("bad transposition indices ({i}, {j}) for rank {n}")]
    BadIndices { n: usize, i: i64, j: i64 },
    #[error("generator index {letter} out of range for rank {n}")]
    LetterOutOfRange { letter: usize, n: usize },
    #[error("inversion table has no zero entry")]
    NoZeroEntry,
    #[error("parse error: {0}")]
    Parse(String),
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "Vec<i64>", into = "Vec<i64>")]
pub struct AffinePermutation {
    window: Vec<i64>,
}

impl TryFrom<Vec<i64>> for AffinePermutation {
    type Error = AffineError;

    fn try_from(window: Vec<i64>) -> Result<Self, Self::Error> {
        Self::from_window(window.len(), &window)
    }
}

impl From<AffinePermutation> for Vec<i64> {
    fn from(w: AffinePermutation) -> Self {
        w.window
    }
}

fn triangular(n: usize) -> i64 {
    let n = n as i64;
    n * (n + 1) / 2
}

impl AffinePermutation {
    /// Validates `values` as the base window of an element of rank `n`.
    pub fn from_window(n: usize, values: &[i64]) -> Result<Self, AffineError> {
        if n < 2 {
            return Err(AffineError::RankTooSmall(n));
        }
        if values.len() != n {
            return Err(AffineError::WrongLength {
                expected: n,
                found: values.len(),
            });
        }
        if let Some(&v) = values.iter().find(|v| v.abs() > MAX_ENTRY) {
            return Err(AffineError::EntryOutOfRange(v));
        }
        let ni = n as i64;
        let mut seen: Vec<Option<i64>> = vec![None; n];
        for &v in values {
            let r = v.rem_euclid(ni) as usize;
            if let Some(prev) = seen[r] {
                return Err(AffineError::ResidueClash { a: prev, b: v, n });
            }
            seen[r] = Some(v);
        }
        let sum: i64 = values.iter().sum();
        if sum != triangular(n) {
            return Err(AffineError::BadSum {
                sum,
                expected: triangular(n),
            });
        }
        Ok(Self {
            window: values.to_vec(),
        })
    }

    /// Caller guarantees the window is valid.
    pub(crate) fn from_window_unchecked(window: Vec<i64>) -> Self {
        debug_assert!(Self::from_window(window.len(), &window).is_ok(), "{window:?}");
        Self { window }
    }

    pub fn identity(n: usize) -> Self {
        assert!(n >= 2, "rank must be at least 2");
        Self {
            window: (1..=n as i64).collect(),
        }
    }

    pub fn rank(&self) -> usize {
        self.window.len()
    }

    pub fn window(&self) -> &[i64] {
        &self.window
    }

    pub fn is_identity(&self) -> bool {
        self.window.iter().zip(1..).all(|(&v, i)| v == i)
    }

    /// `w(i)` for any integer `i`, extended periodically from the window.
    #[inline]
    pub fn apply(&self, i: i64) -> i64 {
        let n = self.window.len() as i64;
        let q = (i - 1).div_euclid(n);
        let r = (i - 1).rem_euclid(n);
        self.window[r as usize] + n * q
    }

    /// The product `self ∘ other`, i.e. `i ↦ self(other(i))`.
    pub fn compose(&self, other: &Self) -> Result<Self, AffineError> {
        if self.rank() != other.rank() {
            return Err(AffineError::RankMismatch {
                left: self.rank(),
                right: other.rank(),
            });
        }
        let window = other.window.iter().map(|&v| self.apply(v)).collect();
        Ok(Self::from_window_unchecked(window))
    }

    pub fn inverse(&self) -> Self {
        let n = self.rank() as i64;
        let mut window = vec![0; self.rank()];
        for (i, &v) in (1..).zip(&self.window) {
            // w(i) = v = r + q n  =>  w^{-1}(r) = i - q n
            let q = (v - 1).div_euclid(n);
            let r = (v - 1).rem_euclid(n);
            window[r as usize] = i - q * n;
        }
        Self::from_window_unchecked(window)
    }

    /// The affine transposition exchanging `i + mn` and `j + mn` for every `m`.
    ///
    /// Indices are first translated by a common multiple of `n` so that
    /// `1 <= i <= n`.
    pub fn transposition(n: usize, i: i64, j: i64) -> Result<Self, AffineError> {
        if n < 2 {
            return Err(AffineError::RankTooSmall(n));
        }
        let ni = n as i64;
        if i >= j || (j - i).rem_euclid(ni) == 0 {
            return Err(AffineError::BadIndices { n, i, j });
        }
        let shift = (i - 1).div_euclid(ni) * ni;
        let (i, j) = (i - shift, j - shift);
        let mut window: Vec<i64> = (1..=ni).collect();
        window[(i - 1) as usize] = j;
        let rj = (j - 1).rem_euclid(ni);
        let qj = (j - 1).div_euclid(ni);
        window[rj as usize] = i - qj * ni;
        Self::from_window(n, &window)
    }

    /// The simple reflection `s_i`, `0 <= i < n`.
    pub fn generator(n: usize, i: usize) -> Result<Self, AffineError> {
        if n < 2 {
            return Err(AffineError::RankTooSmall(n));
        }
        if i >= n {
            return Err(AffineError::LetterOutOfRange { letter: i, n });
        }
        Ok(Self::identity(n).right_multiply(i))
    }

    /// `self · s_i`: swaps window positions `i` and `i+1`; for `i = 0` the
    /// swap straddles the window boundary (positions 0 and 1).
    ///
    /// Panics if `i >= n`.
    pub fn right_multiply(&self, i: usize) -> Self {
        let n = self.rank();
        assert!(i < n, "generator index {i} out of range for rank {n}");
        let mut window = self.window.clone();
        if i == 0 {
            let ni = n as i64;
            let first = window[0];
            window[0] = window[n - 1] - ni;
            window[n - 1] = first + ni;
        } else {
            window.swap(i - 1, i);
        }
        Self::from_window_unchecked(window)
    }

    /// Whether `ℓ(self · s_i) < ℓ(self)`, i.e. `w(i) > w(i+1)`.
    pub fn has_right_descent(&self, i: usize) -> bool {
        let i = i as i64;
        self.apply(i) > self.apply(i + 1)
    }

    /// Product of the word's generators in the order written.
    pub fn from_reduced_word(n: usize, word: &ReducedWord) -> Result<Self, AffineError> {
        if n < 2 {
            return Err(AffineError::RankTooSmall(n));
        }
        if let Some(&letter) = word.letters().iter().find(|&&l| l >= n) {
            return Err(AffineError::LetterOutOfRange { letter, n });
        }
        Ok(word
            .letters()
            .iter()
            .fold(Self::identity(n), |w, &s| w.right_multiply(s)))
    }

    /// Coxeter length, `Σ_{i<j} |⌊(w_j − w_i)/n⌋|` over the window.
    pub fn length(&self) -> u64 {
        let n = self.rank() as i64;
        let w = &self.window;
        let mut total = 0u64;
        for i in 0..w.len() {
            for j in i + 1..w.len() {
                total += (w[j] - w[i]).div_euclid(n).unsigned_abs();
            }
        }
        total
    }

    /// `Inv_i = #{ j > i : w(i) > w(j) }` for `i = 1..n`, counted per residue
    /// class in closed form.
    pub fn inversion_table(&self) -> InversionTable {
        let n = self.rank() as i64;
        let w = &self.window;
        let entries = (1..=n)
            .map(|i| {
                let wi = w[(i - 1) as usize];
                (1..=n)
                    .map(|r| {
                        let wr = w[(r - 1) as usize];
                        // j = r + t n with j > i and wr + t n < wi
                        let t_min = (i - r).div_euclid(n) + 1;
                        let t_max = (wi - wr - 1).div_euclid(n);
                        (t_max - t_min + 1).max(0) as u64
                    })
                    .sum()
            })
            .collect();
        InversionTable { entries }
    }

    /// `σ_r(w)(i) = w(i − 1) + 1`.
    pub fn shift_right(&self) -> Self {
        let window = (1..=self.rank() as i64)
            .map(|i| self.apply(i - 1) + 1)
            .collect();
        Self::from_window_unchecked(window)
    }

    /// `σ_ℓ(w)(i) = w(i + 1) − 1`, the inverse of [`Self::shift_right`].
    pub fn shift_left(&self) -> Self {
        let window = (1..=self.rank() as i64)
            .map(|i| self.apply(i + 1) - 1)
            .collect();
        Self::from_window_unchecked(window)
    }

    /// Whether the values on positions `i..=i+n-1` fill an interval
    /// `[w_j, w_j + n)` for some `j` in that range.
    ///
    /// This is membership in the stabiliser of the window starting at `i`,
    /// the parabolic subgroup generated by every simple reflection except
    /// `s_{(i-1) mod n}`.
    pub fn is_in_parabolic(&self, i: i64) -> bool {
        let n = self.rank() as i64;
        let values: Vec<i64> = (i..i + n).map(|k| self.apply(k)).collect();
        values
            .iter()
            .any(|&base| values.iter().all(|&v| base <= v && v < base + n))
    }

    /// `[1−k, 2−k, …, n−1−k, n+k(n−1)]`, a 321-avoiding element of length
    /// `k(n−1)`.
    pub fn spiral(n: usize, k: u64) -> Result<Self, AffineError> {
        if n < 2 {
            return Err(AffineError::RankTooSmall(n));
        }
        let k = i64::try_from(k).map_err(|_| AffineError::EntryOutOfRange(i64::MAX))?;
        let ni = n as i64;
        let mut window: Vec<i64> = (1..ni).map(|i| i - k).collect();
        window.push(ni + k * (ni - 1));
        Self::from_window(n, &window)
    }

    /// Flattens the one-line notation restricted to the positions congruent to
    /// `residues` (distinct values in `1..=n`) into an element of rank
    /// `residues.len()`. Every occurrence of a pattern in the result is an
    /// occurrence in `self`.
    pub fn restrict(&self, residues: &[usize]) -> Result<Self, AffineError> {
        let n = self.rank();
        let k = residues.len();
        if k < 2 {
            return Err(AffineError::RankTooSmall(k));
        }
        let mut positions = residues.to_vec();
        positions.sort_unstable();
        positions.dedup();
        if positions.len() != k || positions[0] == 0 || positions[k - 1] > n {
            return Err(AffineError::Parse(format!(
                "residues {residues:?} are not distinct values in 1..={n}"
            )));
        }
        let ni = n as i64;
        let ki = k as i64;
        let values: Vec<i64> = positions.iter().map(|&r| self.window[r - 1]).collect();
        let mut classes: Vec<i64> = values.iter().map(|v| v.rem_euclid(ni)).collect();
        classes.sort_unstable();
        let mut window: Vec<i64> = values
            .iter()
            .map(|&v| {
                let c = v.rem_euclid(ni);
                let s = v.div_euclid(ni);
                let a = classes.binary_search(&c).expect("class present") as i64 + 1;
                a + s * ki
            })
            .collect();
        let offset = (triangular(k) - window.iter().sum::<i64>()) / ki;
        window.iter_mut().for_each(|v| *v += offset);
        Self::from_window(k, &window)
    }

    /// `max_{α<β} ⌊|w_β − w_α| / n⌋` over the window.
    pub fn spread(&self) -> u64 {
        let n = self.rank() as i64;
        let w = &self.window;
        let mut best = 0;
        for i in 0..w.len() {
            for j in i + 1..w.len() {
                best = best.max(((w[j] - w[i]).abs() / n) as u64);
            }
        }
        best
    }

    /// `⌊(w_β − w_α)/n⌋` for window positions `α < β`; the restriction to
    /// those two residues is `[1 − q, 2 + q]` of rank 2.
    pub fn pair_class(&self, alpha: usize, beta: usize) -> i64 {
        let n = self.rank() as i64;
        (self.window[beta - 1] - self.window[alpha - 1]).div_euclid(n)
    }
}

impl fmt::Display for AffinePermutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for (idx, v) in self.window.iter().enumerate() {
            if idx > 0 {
                write!(f, ",")?;
            }
            write!(f, "{v}")?;
        }
        write!(f, "]")
    }
}

impl FromStr for AffinePermutation {
    type Err = AffineError;

    /// Parses `[a,b,...]`; whitespace is ignored and the rank is the length.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let compact: String = s.chars().filter(|c| !c.is_whitespace()).collect();
        let inner = compact
            .strip_prefix('[')
            .and_then(|rest| rest.strip_suffix(']'))
            .ok_or_else(|| AffineError::Parse(format!("expected [a,b,...], got {s:?}")))?;
        let values = inner
            .split(',')
            .map(|tok| {
                tok.parse::<i64>()
                    .map_err(|e| AffineError::Parse(format!("bad entry {tok:?}: {e}")))
            })
            .collect::<Result<Vec<_>, _>>()?;
        Self::from_window(values.len(), &values)
    }
}

/// The affine inversion table `(Inv_1, …, Inv_n)`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct InversionTable {
    entries: Vec<u64>,
}

impl InversionTable {
    pub fn new(entries: Vec<u64>) -> Result<Self, AffineError> {
        if !entries.contains(&0) {
            return Err(AffineError::NoZeroEntry);
        }
        Ok(Self { entries })
    }

    pub fn entries(&self) -> &[u64] {
        &self.entries
    }

    pub fn total(&self) -> u64 {
        self.entries.iter().sum()
    }

    pub fn has_zero(&self) -> bool {
        self.entries.contains(&0)
    }

    /// Barrel shift one place to the right (last entry wraps to the front).
    pub fn rotate_right(&self) -> Self {
        let mut entries = self.entries.clone();
        entries.rotate_right(1);
        Self { entries }
    }

    pub fn rotate_left(&self) -> Self {
        let mut entries = self.entries.clone();
        entries.rotate_left(1);
        Self { entries }
    }
}

impl fmt::Display for InversionTable {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.entries.iter().map(u64::to_string).collect();
        write!(f, "({})", parts.join(","))
    }
}

/// A word in the simple reflections `s_0, …, s_{n−1}`. Not required to be
/// reduced.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default, Serialize, Deserialize)]
pub struct ReducedWord {
    letters: Vec<usize>,
}

impl ReducedWord {
    pub fn new(letters: Vec<usize>) -> Self {
        Self { letters }
    }

    pub fn letters(&self) -> &[usize] {
        &self.letters
    }

    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }
}

impl FromStr for ReducedWord {
    type Err = AffineError;

    /// Space-separated generator indices, e.g. `2 1 0`.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let letters = s
            .split_whitespace()
            .map(|tok| {
                tok.parse::<usize>()
                    .map_err(|e| AffineError::Parse(format!("bad letter {tok:?}: {e}")))
            })
            .collect::<Result<Vec<_>, _>>()?;
        Ok(Self { letters })
    }
}

impl fmt::Display for ReducedWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.letters.iter().map(usize::to_string).collect();
        write!(f, "{}", parts.join(" "))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn w(values: &[i64]) -> AffinePermutation {
        AffinePermutation::from_window(values.len(), values).unwrap()
    }

    fn word(s: &str) -> ReducedWord {
        s.parse().unwrap()
    }

    /// Inv_i by scanning indices i+1 ..= i + n(2 + window spread), which is
    /// past the last index whose value can still be below w(i).
    fn naive_inversion_table(w: &AffinePermutation) -> Vec<u64> {
        let n = w.rank() as i64;
        let spread = w.window().iter().max().unwrap() - w.window().iter().min().unwrap();
        (1..=n)
            .map(|i| {
                let horizon = i + n * (2 + spread);
                (i + 1..=horizon)
                    .filter(|&j| w.apply(i) > w.apply(j))
                    .count() as u64
            })
            .collect()
    }

    #[test]
    fn constructor_validation() {
        assert!(w(&[1, 2, 3, 4]).is_identity());
        assert!(AffinePermutation::from_window(6, &[8, 1, 3, 5, 4, 0]).is_ok());
        assert!(matches!(
            AffinePermutation::from_window(4, &[1, 5, 3, 4]),
            Err(AffineError::ResidueClash { .. })
        ));
        assert!(matches!(
            AffinePermutation::from_window(1, &[1]),
            Err(AffineError::RankTooSmall(1))
        ));
        assert!(matches!(
            AffinePermutation::from_window(3, &[1, 2, 6]),
            Err(AffineError::BadSum { sum: 9, expected: 6 })
        ));
        assert!(matches!(
            AffinePermutation::from_window(3, &[1, 2]),
            Err(AffineError::WrongLength { .. })
        ));
        let big = MAX_ENTRY + 2;
        assert!(matches!(
            AffinePermutation::from_window(2, &[3 - big, big]),
            Err(AffineError::EntryOutOfRange(_))
        ));
    }

    #[test]
    fn apply_extends_periodically() {
        let x = w(&[8, 1, 3, 5, 4, 0]);
        assert_eq!(x.apply(8), 7);
        assert_eq!(x.apply(-5), 2);
        assert_eq!(x.apply(0), -6);
        assert_eq!(AffinePermutation::identity(4).apply(13), 13);
    }

    #[test]
    fn inverse_examples() {
        let id = AffinePermutation::identity(3);
        assert_eq!(id.inverse(), id);
        let s0 = w(&[0, 3]);
        assert_eq!(s0.inverse(), s0);
        // brute force: find w^{-1}(k) by scanning w over a wide index range
        let x = w(&[0, 1, 2, 7]);
        let brute: Vec<i64> = (1..=4)
            .map(|k| (-20..=20).find(|&i| x.apply(i) == k).unwrap())
            .collect();
        assert_eq!(brute, vec![2, 3, 0, 5]);
        assert_eq!(x.inverse().window(), &[2, 3, 0, 5]);
        assert_eq!(x.inverse(), AffinePermutation::from_reduced_word(4, &word("0 1 2")).unwrap());
        assert!(x.compose(&x.inverse()).unwrap().is_identity());
    }

    #[test]
    fn compose_laws() {
        let x = w(&[8, 1, 3, 5, 4, 0]);
        let id = AffinePermutation::identity(6);
        assert_eq!(id.compose(&x).unwrap(), x);
        assert_eq!(x.compose(&id).unwrap(), x);
        let t = AffinePermutation::transposition(3, 1, 2).unwrap();
        assert!(t.compose(&t).unwrap().is_identity());
        assert!(matches!(
            x.compose(&AffinePermutation::identity(3)),
            Err(AffineError::RankMismatch { left: 6, right: 3 })
        ));
    }

    #[test]
    fn transpositions() {
        assert_eq!(AffinePermutation::transposition(3, 1, 2).unwrap().window(), &[2, 1, 3]);
        // t_{2,4} in rank 3: 2 <-> 4 and 1 = 4 - 3 <-> -1
        let t = AffinePermutation::transposition(3, 2, 4).unwrap();
        assert_eq!(t.window(), &[-1, 4, 3]);
        assert_eq!(t.apply(4), 2);
        assert!(t.compose(&t).unwrap().is_identity());
        // translating both indices by n gives the same element
        assert_eq!(AffinePermutation::transposition(3, 5, 7).unwrap(), t);
        assert_eq!(AffinePermutation::transposition(3, -1, 1).unwrap(), t);
        assert_eq!(AffinePermutation::transposition(2, 1, 2).unwrap().window(), &[2, 1]);
        for (n, i, j) in [(2, 1, 3), (3, 2, 5), (3, 2, 2), (3, 3, 1)] {
            assert!(matches!(
                AffinePermutation::transposition(n, i, j),
                Err(AffineError::BadIndices { .. })
            ));
        }
    }

    #[test]
    fn reduced_words_match_spiral_windows() {
        let cases = [
            ("2 1 0", vec![0, 1, 2, 7]),
            ("1 0 3 2 1 0", vec![-1, 0, 1, 10]),
            ("0 3 2 1 0 3 2 1 0", vec![-2, -1, 0, 13]),
        ];
        for (letters, window) in cases {
            let x = AffinePermutation::from_reduced_word(4, &word(letters)).unwrap();
            assert_eq!(x.window(), window.as_slice());
            assert_eq!(x.length() as usize, word(letters).len());
        }
        assert_eq!(
            AffinePermutation::from_reduced_word(2, &word("0")).unwrap().window(),
            &[0, 3]
        );
        assert_eq!(AffinePermutation::from_reduced_word(3, &word("0 0")).unwrap().length(), 0);
        assert!(matches!(
            AffinePermutation::from_reduced_word(3, &word("0 3")),
            Err(AffineError::LetterOutOfRange { letter: 3, n: 3 })
        ));
    }

    #[test]
    fn lengths() {
        assert_eq!(w(&[0, 1, 2, 7]).length(), 3);
        assert_eq!(AffinePermutation::identity(5).length(), 0);
        // inv(5,-4,6,3) = 3 plus floors |d|/4: 2 + 0 + 0 + 2 + 1 + 0 = 5
        assert_eq!(w(&[5, -4, 6, 3]).length(), 8);
    }

    #[test]
    fn inversion_table_examples() {
        let x = w(&[5, -4, 6, 3]);
        assert_eq!(x.inversion_table().entries(), &[4, 0, 3, 1]);
        assert_eq!(w(&[0, 6, -3, 7]).inversion_table().entries(), &[1, 4, 0, 3]);
        assert_eq!(AffinePermutation::identity(4).inversion_table().entries(), &[0, 0, 0, 0]);
        for x in [x, w(&[8, 1, 3, 5, 4, 0]), w(&[-2, -1, 0, 13])] {
            let table = x.inversion_table();
            assert_eq!(table.entries(), naive_inversion_table(&x).as_slice());
            assert_eq!(table.total(), x.length());
            assert!(table.has_zero());
        }
    }

    #[test]
    fn shifts() {
        let x = w(&[5, -4, 6, 3]);
        let y = x.shift_right();
        assert_eq!(y.window(), &[0, 6, -3, 7]);
        assert_eq!(y.shift_left(), x);
        assert_eq!(y.inversion_table(), x.inversion_table().rotate_right());
        let id = AffinePermutation::identity(4);
        assert_eq!(id.shift_right(), id);
        let mut z = x.clone();
        for _ in 0..4 {
            z = z.shift_right();
        }
        assert_eq!(z, x);
    }

    #[test]
    fn parabolic_membership() {
        assert!(w(&[2, 1, 3]).is_in_parabolic(1));
        for i in -3..6 {
            assert!(AffinePermutation::identity(4).is_in_parabolic(i));
        }
        assert!(!w(&[0, 1, 2, 7]).is_in_parabolic(1));
        // the window starting at 2 excludes s_1: it sees values 1,3,5
        let s1 = AffinePermutation::generator(3, 1).unwrap();
        assert!(s1.is_in_parabolic(1));
        assert!(!s1.is_in_parabolic(2));
    }

    #[test]
    fn spirals() {
        assert_eq!(AffinePermutation::spiral(4, 1).unwrap().window(), &[0, 1, 2, 7]);
        assert_eq!(AffinePermutation::spiral(4, 3).unwrap().window(), &[-2, -1, 0, 13]);
        let x = AffinePermutation::spiral(2, 5).unwrap();
        assert_eq!(x.window(), &[-4, 7]);
        assert_eq!(x.length(), 5);
        for n in 2..8 {
            for k in 1..20 {
                let x = AffinePermutation::spiral(n, k).unwrap();
                assert_eq!(x.length(), k * (n as u64 - 1));
            }
        }
    }

    #[test]
    fn restriction_to_pairs() {
        let x = w(&[8, 1, 3, 5, 4, 0]);
        for a in 1..=6 {
            for b in a + 1..=6 {
                let q = x.pair_class(a, b);
                let r = x.restrict(&[a, b]).unwrap();
                assert_eq!(r.window(), &[1 - q, 2 + q], "pair {a},{b}");
            }
        }
        assert_eq!(x.restrict(&[1, 2, 3, 4, 5, 6]).unwrap(), x);
        assert!(x.restrict(&[1]).is_err());
        assert!(x.restrict(&[1, 7]).is_err());
    }

    #[test]
    fn text_formats() {
        let x: AffinePermutation = " [ 8, 1,3 ,5,4, 0 ] ".parse().unwrap();
        assert_eq!(x.to_string(), "[8,1,3,5,4,0]");
        assert_eq!(x.to_string().parse::<AffinePermutation>().unwrap(), x);
        assert!("8,1,3".parse::<AffinePermutation>().is_err());
        assert!("[1,x]".parse::<AffinePermutation>().is_err());
        assert_eq!(word("2 1 0").to_string(), "2 1 0");
        let json = serde_json::to_string(&x).unwrap();
        assert_eq!(json, "[8,1,3,5,4,0]");
        assert!(serde_json::from_str::<AffinePermutation>("[1,1]").is_err());
    }

    #[test]
    fn inversion_table_requires_zero() {
        assert!(InversionTable::new(vec![1, 2]).is_err());
        assert_eq!(InversionTable::new(vec![0, 2]).unwrap().to_string(), "(0,2)");
    }
}
