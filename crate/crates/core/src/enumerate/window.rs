//! Window-space search.
//!
//! A window is written `w_i = π_i + n·k_i` with `π ∈ S_n` and `Σ k_i = 0`,
//! which makes the residues distinct and the sum `n(n+1)/2` automatically.
//! The search fixes `π`, walks the offsets relative to position 1, and only
//! keeps a window if every pair of positions passes a filter on its class
//! `q = ⌊(w_β − w_α)/n⌋`. The pair filter is where the spread cap lives.

use std::ops::ControlFlow;

use crate::affine::AffinePermutation;
use crate::containment::avoids;
use crate::pattern::Pattern;

/// `⌊|d| / n⌋` for a pair whose class is `q = ⌊d / n⌋` (`d ≢ 0 mod n`).
#[inline]
pub fn class_spread(q: i64) -> u64 {
    if q >= 0 {
        q as u64
    } else {
        (-q - 1) as u64
    }
}

/// Allowed pair classes among `q ∈ [−(cap+1), cap]`, i.e. spread at most `cap`.
#[derive(Debug, Clone)]
pub struct PairFilter {
    lo: i64,
    allowed: Vec<bool>,
}

impl PairFilter {
    pub fn new(cap: u64, mut keep: impl FnMut(i64) -> bool) -> Self {
        let cap = cap as i64;
        let lo = -(cap + 1);
        let allowed = (lo..=cap).map(&mut keep).collect();
        Self { lo, allowed }
    }

    pub fn spread_only(cap: u64) -> Self {
        Self::new(cap, |_| true)
    }

    /// Classes whose two-residue restriction `[1 − q, 2 + q]` avoids `p`.
    pub fn avoiding(cap: u64, p: &Pattern) -> Self {
        Self::new(cap, |q| {
            let pair = AffinePermutation::from_window_unchecked(vec![1 - q, 2 + q]);
            avoids(&pair, p)
        })
    }

    #[inline]
    pub fn allows(&self, q: i64) -> bool {
        let idx = q - self.lo;
        idx >= 0 && (idx as usize) < self.allowed.len() && self.allowed[idx as usize]
    }

    pub fn classes(&self) -> Vec<i64> {
        (self.lo..)
            .zip(&self.allowed)
            .filter_map(|(q, &ok)| ok.then_some(q))
            .collect()
    }
}

/// Residue permutations `π ∈ S_n` in lexicographic order.
pub fn residue_permutations(n: usize) -> Vec<Vec<i64>> {
    Pattern::all(n)
        .into_iter()
        .map(|p| p.entries().iter().map(|&v| v as i64).collect())
        .collect()
}

struct Walk<'a, F> {
    n: usize,
    pi: &'a [i64],
    filter: &'a PairFilter,
    classes: Vec<i64>,
    offsets: Vec<i64>,
    visit: F,
}

impl<F> Walk<'_, F>
where
    F: FnMut(AffinePermutation) -> ControlFlow<()>,
{
    fn floor_gap(&self, a: usize, b: usize) -> i64 {
        // ⌊(π_b − π_a)/n⌋ ∈ {−1, 0}
        if self.pi[b] < self.pi[a] {
            -1
        } else {
            0
        }
    }

    fn run(&mut self, pos: usize) -> ControlFlow<()> {
        let n = self.n;
        if pos == n {
            let sum: i64 = self.offsets.iter().sum();
            let ni = n as i64;
            if sum.rem_euclid(ni) != 0 {
                return ControlFlow::Continue(());
            }
            let k1 = -sum / ni;
            let window = self
                .pi
                .iter()
                .zip(&self.offsets)
                .map(|(&p, &e)| p + ni * (e + k1))
                .collect();
            return (self.visit)(AffinePermutation::from_window_unchecked(window));
        }
        for idx in 0..self.classes.len() {
            let q = self.classes[idx];
            let e = q - self.floor_gap(0, pos);
            let ok = (1..pos).all(|j| {
                let qj = e - self.offsets[j] + self.floor_gap(j, pos);
                self.filter.allows(qj)
            });
            if ok {
                self.offsets[pos] = e;
                self.run(pos + 1)?;
            }
        }
        ControlFlow::Continue(())
    }
}

/// Visits every window with residue permutation `pi` whose pair classes all
/// pass `filter`. Stops early if `visit` breaks.
pub fn walk_partition<F>(pi: &[i64], filter: &PairFilter, visit: F) -> ControlFlow<()>
where
    F: FnMut(AffinePermutation) -> ControlFlow<()>,
{
    let n = pi.len();
    let mut walk = Walk {
        n,
        pi,
        filter,
        classes: filter.classes(),
        offsets: vec![0; n],
        visit,
    };
    walk.run(1)
}

/// Every element of rank `n` whose pair classes all pass `filter`, sorted.
pub fn windows(n: usize, filter: &PairFilter) -> Vec<AffinePermutation> {
    let mut out = Vec::new();
    for pi in residue_permutations(n) {
        let _ = walk_partition(&pi, filter, |w| {
            out.push(w);
            ControlFlow::Continue(())
        });
    }
    out.sort();
    out
}

/// Every element of rank `n` and length exactly `m`, found without any
/// generator arithmetic. A length-`m` element has every pair spread at
/// most `m`.
pub fn elements_of_length(n: usize, m: u64) -> Vec<AffinePermutation> {
    let filter = PairFilter::spread_only(m);
    windows(n, &filter)
        .into_iter()
        .filter(|w| w.length() == m)
        .collect()
}
