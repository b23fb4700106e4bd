#![allow(dead_code)]

use affine_avoid::{AffinePermutation, Pattern};

/// A radius at which `naive_contains` is complete for `w` and patterns of
/// size `m`.
///
/// If consecutive indices of an occurrence are at least `(s + 3)·n + 1`
/// apart, where `s` is the spread of `w`, every value after the gap exceeds
/// every value before it by more than `n`. Moving the tail down by `n` then
/// keeps an occurrence, so some occurrence has all gaps at most `(s + 3)·n`
/// and can be translated to start in `1..=n`.
pub fn complete_radius(w: &AffinePermutation, m: usize) -> u64 {
    1 + (m as u64 - 1) * (w.spread() + 3)
}

pub fn patterns_3_and_4() -> Vec<Pattern> {
    Pattern::all(3).into_iter().chain(Pattern::all(4)).collect()
}

/// 3412-avoiders in `S_n`, by scanning every index quadruple of every
/// permutation.
pub fn finite_3412_avoiders(n: usize) -> u64 {
    let has_3412 = |q: &[usize]| {
        let len = q.len();
        (0..len).any(|a| {
            (a + 1..len).any(|b| {
                (b + 1..len).any(|c| (c + 1..len).any(|d| q[c] < q[d] && q[d] < q[a] && q[a] < q[b]))
            })
        })
    };
    Pattern::all(n).iter().filter(|q| !has_3412(q.entries())).count() as u64
}
