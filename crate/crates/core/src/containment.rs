//! Exact pattern containment in affine permutations.
//!
//! An occurrence of `p ∈ S_m` in `w` is a choice of indices `i_1 < … < i_m`
//! with `w(i_1) … w(i_m)` order-isomorphic to `p`. Writing each index as
//! `i_s = r_s + n·t_s` with residue `r_s ∈ 1..=n`, the value is
//! `w_{r_s} + n·t_s`, so once the residues are fixed every required strict
//! inequality is linear in the offsets `t`. Index order gives one constraint
//! per adjacent pair of positions and value order one per adjacent pair of
//! ranks; both have the form `A + n(t_a − t_b) < 0`, i.e. a difference
//! constraint on the offsets. The search walks residue assignments in
//! lexicographic order, prunes any prefix whose constraint subsystem is
//! already infeasible, and reads a witness off the shortest-path solution
//! with `t_1 = 0`.

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::affine::AffinePermutation;
use crate::constraints::{strict_upper_bound, DifferenceSystem};
use crate::pattern::Pattern;

/// Largest number of index subsets [`naive_contains`] agrees to examine.
pub const NAIVE_SUBSET_CAP: u128 = 1 << 42;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ContainmentError {
    #[error("radius {radius} gives {subsets} index subsets, above the cap {cap}")]
    RadiusOverflow {
        radius: u64,
        subsets: u128,
        cap: u128,
    },
    #[error("radius must be positive")]
    ZeroRadius,
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct OccurrenceWitness {
    pub indices: Vec<i64>,
    pub values: Vec<i64>,
    pub residues: Vec<usize>,
    pub offsets: Vec<i64>,
}

impl OccurrenceWitness {
    pub fn from_indices(w: &AffinePermutation, indices: Vec<i64>) -> Self {
        let n = w.rank() as i64;
        let values = indices.iter().map(|&i| w.apply(i)).collect();
        let residues = indices
            .iter()
            .map(|&i| ((i - 1).rem_euclid(n) + 1) as usize)
            .collect();
        let offsets = indices.iter().map(|&i| (i - 1).div_euclid(n)).collect();
        Self {
            indices,
            values,
            residues,
            offsets,
        }
    }

    /// Re-checks the witness against `w` and `p` from scratch.
    pub fn is_valid_for(&self, w: &AffinePermutation, p: &Pattern) -> bool {
        let m = p.size();
        let n = w.rank() as i64;
        if [self.values.len(), self.residues.len(), self.offsets.len()]
            .iter()
            .any(|&len| len != m)
            || self.indices.len() != m
        {
            return false;
        }
        let decomposed = self.indices.iter().enumerate().all(|(s, &i)| {
            self.residues[s] >= 1
                && self.residues[s] as i64 <= n
                && i == self.residues[s] as i64 + n * self.offsets[s]
                && self.values[s] == w.apply(i)
        });
        let increasing = self.indices.windows(2).all(|pair| pair[0] < pair[1]);
        let entries = p.entries();
        let order_iso = (0..m).all(|a| {
            (0..m).all(|b| (entries[a] < entries[b]) == (self.values[a] < self.values[b]))
        });
        decomposed && increasing && order_iso
    }
}

struct Search<'a> {
    window: &'a [i64],
    n: i64,
    m: usize,
    /// position (0-based) holding the value of each rank
    by_rank: Vec<usize>,
    residues: Vec<usize>,
}

impl Search<'_> {
    /// Constraint system over the first `k` positions using the residues
    /// already fixed for them.
    fn system(&self, k: usize) -> DifferenceSystem {
        let mut sys = DifferenceSystem::new(k);
        let value = |pos: usize| self.window[self.residues[pos] - 1];
        for s in 1..k {
            // i_{s-1} < i_s: (r_{s-1} - r_s) + n (t_{s-1} - t_s) < 0
            let a = self.residues[s - 1] as i64 - self.residues[s] as i64;
            sys.add_constraint(s - 1, s, strict_upper_bound(a, self.n));
        }
        for rank in 0..self.m - 1 {
            let (lo, hi) = (self.by_rank[rank], self.by_rank[rank + 1]);
            if lo < k && hi < k {
                // w(i_lo) < w(i_hi): (w_{r_lo} - w_{r_hi}) + n (t_lo - t_hi) < 0
                let a = value(lo) - value(hi);
                sys.add_constraint(lo, hi, strict_upper_bound(a, self.n));
            }
        }
        sys
    }

    fn run(&mut self, depth: usize) -> Option<Vec<i64>> {
        if depth == self.m {
            let offsets = self.system(self.m).solve()?;
            let base = offsets[0];
            return Some(offsets.iter().map(|t| t - base).collect());
        }
        for r in 1..=self.n as usize {
            self.residues[depth] = r;
            let k = depth + 1;
            // a single position carries no constraints
            if (2..self.m).contains(&k) && !self.system(k).is_feasible() {
                continue;
            }
            if let Some(found) = self.run(depth + 1) {
                return Some(found);
            }
        }
        None
    }
}

/// An occurrence of `p` in `w`, or `None` when `w` avoids `p`.
///
/// Exact for every input: no bound on how far apart the indices may lie is
/// assumed. The witness is the one found for the lexicographically smallest
/// feasible residue assignment, normalised so that its first offset is 0.
pub fn contains(w: &AffinePermutation, p: &Pattern) -> Option<OccurrenceWitness> {
    let m = p.size();
    let by_rank = p.positions_by_rank();
    let mut search = Search {
        window: w.window(),
        n: w.rank() as i64,
        m,
        by_rank,
        residues: vec![0; m],
    };
    let offsets = search.run(0)?;
    let n = w.rank() as i64;
    let indices = search
        .residues
        .iter()
        .zip(&offsets)
        .map(|(&r, &t)| r as i64 + n * t)
        .collect();
    let witness = OccurrenceWitness::from_indices(w, indices);
    debug_assert!(witness.is_valid_for(w, p));
    Some(witness)
}

pub fn avoids(w: &AffinePermutation, p: &Pattern) -> bool {
    contains(w, p).is_none()
}

/// Exhaustive search over index subsets of `[1 − radius·n, radius·n]`.
///
/// Sound for any radius, complete only once the radius is large enough.
/// Kept independent of [`contains`] so the two can check each other.
pub fn naive_contains(
    w: &AffinePermutation,
    p: &Pattern,
    radius: u64,
) -> Result<Option<OccurrenceWitness>, ContainmentError> {
    if radius == 0 {
        return Err(ContainmentError::ZeroRadius);
    }
    let n = w.rank() as i64;
    let lo = 1 - radius as i64 * n;
    let hi = radius as i64 * n;
    let span = (hi - lo + 1) as u128;
    let subsets = binomial_u128(span, p.size() as u128);
    if subsets > NAIVE_SUBSET_CAP {
        return Err(ContainmentError::RadiusOverflow {
            radius,
            subsets,
            cap: NAIVE_SUBSET_CAP,
        });
    }
    let values: Vec<i64> = (lo..=hi).map(|i| w.apply(i)).collect();
    let entries = p.entries();
    let mut chosen: Vec<usize> = Vec::with_capacity(p.size());

    fn extend(values: &[i64], entries: &[usize], start: usize, chosen: &mut Vec<usize>) -> bool {
        let k = chosen.len();
        if k == entries.len() {
            return true;
        }
        for idx in start..values.len() {
            let v = values[idx];
            let ok = chosen
                .iter()
                .zip(entries)
                .all(|(&c, &e)| (values[c] < v) == (e < entries[k]));
            if ok {
                chosen.push(idx);
                if extend(values, entries, idx + 1, chosen) {
                    return true;
                }
                chosen.pop();
            }
        }
        false
    }

    if extend(&values, entries, 0, &mut chosen) {
        let indices = chosen.iter().map(|&idx| lo + idx as i64).collect();
        Ok(Some(OccurrenceWitness::from_indices(w, indices)))
    } else {
        Ok(None)
    }
}

/// `max(2, spread_bound(p) + 2)` for 321-avoiding `p`; `None` otherwise, in
/// which case the caller must choose.
pub fn default_naive_radius(p: &Pattern) -> Option<u64> {
    p.spread_bound().ok().map(|b| (b + 2).max(2))
}

fn binomial_u128(n: u128, k: u128) -> u128 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    let mut acc: u128 = 1;
    for i in 0..k {
        acc = acc.saturating_mul(n - i) / (i + 1);
    }
    acc
}
