//! Exact evaluation of the closed forms and conjectured formulas that the
//! enumerator is checked against. No floating point anywhere.

use std::fmt;

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SequenceError {
    #[error("{sequence} at n = {n} evaluates to the non-integer {value}")]
    NonInteger {
        sequence: SequenceSource,
        n: u64,
        value: String,
    },
    #[error("{sequence} at n = {n} evaluates to the negative value {value}")]
    Negative {
        sequence: SequenceSource,
        n: u64,
        value: String,
    },
    #[error("{sequence} is undefined at n = {n}")]
    OutOfDomain { sequence: SequenceSource, n: u64 },
    #[error("malformed sequence data: {0}")]
    Data(String),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum SequenceSource {
    Catalan,
    /// `binom(2n−1, n)`, the avoider count for 231 and 312.
    Thm41,
    /// Same closed form for 1342, 1423, 2314, 3124.
    Thm51,
    Conj3142,
    Conj3412,
    GesselU3,
}

impl fmt::Display for SequenceSource {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let name = match self {
            Self::Catalan => "CATALAN",
            Self::Thm41 => "THM_4_1",
            Self::Thm51 => "THM_5_1",
            Self::Conj3142 => "CONJ_3142",
            Self::Conj3412 => "CONJ_3412",
            Self::GesselU3 => "GESSEL_U3",
        };
        f.write_str(name)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SequenceValue {
    pub n: u64,
    pub value: BigUint,
    pub source: SequenceSource,
}

impl SequenceValue {
    pub fn evaluate(source: SequenceSource, n: u64) -> Result<Self, SequenceError> {
        let value = match source {
            SequenceSource::Catalan => catalan(n),
            SequenceSource::Thm41 | SequenceSource::Thm51 => {
                if n == 0 {
                    return Err(SequenceError::OutOfDomain { sequence: source, n });
                }
                f231_closed_form(n)
            }
            SequenceSource::Conj3142 => conjecture_3142(n)?,
            SequenceSource::Conj3412 => conjecture_3412(n)?,
            SequenceSource::GesselU3 => gessel_u3(n)?,
        };
        Ok(Self { n, value, source })
    }
}

pub fn binomial(n: u64, k: u64) -> BigUint {
    if k > n {
        return BigUint::zero();
    }
    let k = k.min(n - k);
    let mut acc = BigUint::one();
    for i in 0..k {
        acc = acc * BigUint::from(n - i) / BigUint::from(i + 1);
    }
    acc
}

/// `C_n = binom(2n, n) / (n + 1)`.
pub fn catalan(n: u64) -> BigUint {
    binomial(2 * n, n) / BigUint::from(n + 1)
}

/// `binom(2n − 1, n)` for `n >= 1`.
pub fn f231_closed_form(n: u64) -> BigUint {
    assert!(n >= 1, "closed form defined for n >= 1");
    binomial(2 * n - 1, n)
}

/// `Σ_{i=0}^{α−1} C_i · C_{n−1−i}`, for `1 <= α <= n`.
pub fn partial_sum_231(n: u64, alpha: u64) -> BigUint {
    assert!((1..=n).contains(&alpha), "need 1 <= alpha <= n");
    (0..alpha).map(|i| catalan(i) * catalan(n - 1 - i)).sum()
}

fn to_natural(source: SequenceSource, n: u64, q: BigRational) -> Result<BigUint, SequenceError> {
    if !q.is_integer() {
        return Err(SequenceError::NonInteger {
            sequence: source,
            n,
            value: q.to_string(),
        });
    }
    let z = q.to_integer();
    if z.is_negative() {
        return Err(SequenceError::Negative {
            sequence: source,
            n,
            value: z.to_string(),
        });
    }
    Ok(z.to_biguint().expect("non-negative"))
}

fn big(v: BigUint) -> BigInt {
    BigInt::from(v)
}

/// `Σ_{k=0}^{n−1} ((n−k)/n)·binom(n−1+k, k)·2^k`, for `n >= 1`.
pub fn conjecture_3142(n: u64) -> Result<BigUint, SequenceError> {
    let source = SequenceSource::Conj3142;
    if n == 0 {
        return Err(SequenceError::OutOfDomain { sequence: source, n });
    }
    let sum: BigRational = (0..n)
        .map(|k| {
            let coeff = BigRational::new(BigInt::from(n - k), BigInt::from(n));
            let term = big(binomial(n - 1 + k, k)) << k;
            coeff * BigRational::from_integer(term)
        })
        .sum();
    to_natural(source, n, sum)
}

/// `(1/3)·Σ_{k=0}^{n} binom(n,k)²·binom(2k,k)`, for `n >= 1`.
pub fn conjecture_3412(n: u64) -> Result<BigUint, SequenceError> {
    let source = SequenceSource::Conj3412;
    if n == 0 {
        return Err(SequenceError::OutOfDomain { sequence: source, n });
    }
    let sum: BigUint = (0..=n)
        .map(|k| {
            let b = binomial(n, k);
            &b * &b * binomial(2 * k, k)
        })
        .sum();
    to_natural(
        source,
        n,
        BigRational::new(big(sum), BigInt::from(3)),
    )
}

/// `2·Σ_{k=0}^{n} binom(n,k)²·binom(2k,k)·(3k²+2k+1−n−2kn) / ((k+1)²(k+2)(n−k+1))`,
/// the number of 3412-avoiding permutations of `1..=n`.
pub fn gessel_u3(n: u64) -> Result<BigUint, SequenceError> {
    let source = SequenceSource::GesselU3;
    let ni = BigInt::from(n);
    let sum: BigRational = (0..=n)
        .map(|k| {
            let ki = BigInt::from(k);
            let b = big(binomial(n, k));
            let numer = &b * &b
                * big(binomial(2 * k, k))
                * (BigInt::from(3) * &ki * &ki + BigInt::from(2) * &ki + 1 - &ni
                    - BigInt::from(2) * &ki * &ni);
            let k1 = &ki + 1;
            let denom = &k1 * &k1 * (&ki + 2) * (&ni - &ki + 1);
            BigRational::new(numer, denom)
        })
        .sum();
    to_natural(source, n, sum * BigRational::from_integer(BigInt::from(2)))
}

/// An integer sequence prefix with its first index.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SequencePrefix {
    pub name: String,
    pub offset: i64,
    pub terms: Vec<BigUint>,
}

impl SequencePrefix {
    /// One integer per line; `#` lines are comments, and a comment of the form
    /// `# offset: k` sets the index of the first term (default 0).
    pub fn parse(name: &str, text: &str) -> Result<Self, SequenceError> {
        let mut offset = 0;
        let mut terms = Vec::new();
        for line in text.lines().map(str::trim).filter(|l| !l.is_empty()) {
            if let Some(comment) = line.strip_prefix('#') {
                if let Some(v) = comment.trim().strip_prefix("offset:") {
                    offset = v
                        .trim()
                        .parse()
                        .map_err(|e| SequenceError::Data(format!("{name}: bad offset: {e}")))?;
                }
                continue;
            }
            let term = line
                .parse::<BigUint>()
                .map_err(|e| SequenceError::Data(format!("{name}: bad term {line:?}: {e}")))?;
            terms.push(term);
        }
        Ok(Self {
            name: name.to_string(),
            offset,
            terms,
        })
    }

    pub fn get(&self, index: i64) -> Option<&BigUint> {
        let pos = index.checked_sub(self.offset)?;
        usize::try_from(pos).ok().and_then(|p| self.terms.get(p))
    }

    /// Indices covered by the prefix.
    pub fn indices(&self) -> std::ops::Range<i64> {
        self.offset..self.offset + self.terms.len() as i64
    }

    /// The shifts `s` (within `±max_shift`) for which `self[n + s] = values[n]`
    /// holds at every `n` in `values` with `n + s` covered by the prefix, and
    /// at least `min_overlap` such `n` exist. The unshifted alignment comes
    /// first if it qualifies; shifts are otherwise ordered by magnitude.
    pub fn alignments(
        &self,
        values: &[(i64, BigUint)],
        max_shift: i64,
        min_overlap: usize,
    ) -> Vec<i64> {
        let mut shifts: Vec<i64> = (-max_shift..=max_shift).collect();
        shifts.sort_by_key(|s| (s.abs(), *s));
        shifts
            .into_iter()
            .filter(|&s| {
                let mut overlap = 0;
                for (n, v) in values {
                    match self.get(n + s) {
                        Some(term) if term == v => overlap += 1,
                        Some(_) => return false,
                        None => {}
                    }
                }
                overlap >= min_overlap
            })
            .collect()
    }
}

const A064062: &str = include_str!("../data/oeis_a064062.txt");
const A087457: &str = include_str!("../data/oeis_a087457.txt");

/// Vendored prefix of OEIS A064062 (the 3142 conjecture's sequence).
pub fn oeis_a064062() -> SequencePrefix {
    SequencePrefix::parse("A064062", A064062).expect("vendored data is well formed")
}

/// Vendored prefix of OEIS A087457 (the 3412 / 4123 conjecture's sequence).
pub fn oeis_a087457() -> SequencePrefix {
    SequencePrefix::parse("A087457", A087457).expect("vendored data is well formed")
}

pub fn to_u64(v: &BigUint) -> Option<u64> {
    v.to_u64()
}

pub fn is_divisible(a: &BigUint, b: &BigUint) -> bool {
    a.is_multiple_of(b)
}
