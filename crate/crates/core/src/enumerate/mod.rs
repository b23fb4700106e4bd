//! Length-graded enumeration and exact avoider counts.
//!
//! Two routes to the same tables:
//!
//! - [`Mode::BfsWeakOrder`] walks the weak order grade by grade up to the
//!   length horizon `(m^{ℓ+1} + 2)·binom(n, 2)`. Natural for `g`-tables, slow
//!   for totals once `n >= 4`.
//! - [`Mode::WindowSpace`] walks windows whose pair spreads stay under the
//!   proven cap `m^{ℓ+1} + 1`. Every avoider also avoids `p` in each of its
//!   two-residue restrictions, so the pair filter keeps only classes whose
//!   rank-2 restriction avoids `p`; the survivors are then checked exactly.

pub mod bfs;
pub mod checkpoint;
pub mod table;
pub mod window;

use std::collections::BTreeMap;
use std::ops::ControlFlow;
use std::path::PathBuf;
use std::sync::atomic::{AtomicBool, AtomicU64, Ordering};

use log::{debug, info};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::affine::{AffineError, AffinePermutation};
use crate::containment::avoids;
use crate::pattern::{Finiteness, Pattern, PatternError};

pub use bfs::{elements_up_to_length, Grade, WeakOrderGrades};
pub use checkpoint::Checkpoint;
pub use table::{GradedCountTable, Total};
pub use window::{elements_of_length, PairFilter};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum EnumerationError {
    #[error("budget exceeded: {reason}")]
    BudgetExceeded {
        reason: String,
        partial: Option<Box<GradedCountTable>>,
    },
    #[error("invalid budget: {0}")]
    InvalidBudget(String),
    #[error("the tighter length horizon is only available for 3412, not {0}")]
    TightBoundNotApplicable(Pattern),
    #[error("checkpoint: {0}")]
    Checkpoint(String),
    #[error("table format: {0}")]
    Format(String),
    #[error(transparent)]
    Pattern(#[from] PatternError),
    #[error(transparent)]
    Affine(#[from] AffineError),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum Mode {
    BfsWeakOrder,
    WindowSpace,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct EnumerationBudget {
    /// Deepest grade the BFS may reach.
    pub max_length: u64,
    /// Elements generated (BFS) or windows checked exactly (window space).
    pub max_elements: u64,
    /// Largest pair spread the window search may be asked to cover.
    pub spread_cap: u64,
    pub mode: Mode,
}

impl Default for EnumerationBudget {
    fn default() -> Self {
        Self {
            max_length: 10_000,
            max_elements: 200_000_000,
            spread_cap: 100_000,
            mode: Mode::WindowSpace,
        }
    }
}

impl EnumerationBudget {
    pub fn with_mode(mode: Mode) -> Self {
        Self {
            mode,
            ..Self::default()
        }
    }

    pub fn validate(&self) -> Result<(), EnumerationError> {
        if self.max_length == 0 || self.max_elements == 0 || self.spread_cap == 0 {
            return Err(EnumerationError::InvalidBudget(
                "max_length, max_elements and spread_cap must be positive".into(),
            ));
        }
        Ok(())
    }
}

#[derive(Debug, Clone, Default)]
pub struct CountOptions {
    /// Worker threads for the window search; 0 uses rayon's default pool.
    pub workers: usize,
    pub checkpoint: Option<PathBuf>,
    /// Use `3·binom(n,2)` as the BFS horizon for 3412.
    pub assume_tight_bound: bool,
}

fn tight_3412_horizon(n: usize) -> u64 {
    3 * (n as u64 * (n as u64 - 1) / 2)
}

fn is_3412(p: &Pattern) -> bool {
    p.entries() == [3, 4, 1, 2]
}

fn counts_from(avoiders: &[AffinePermutation]) -> BTreeMap<u64, u64> {
    let mut counts = BTreeMap::new();
    for w in avoiders {
        *counts.entry(w.length()).or_insert(0) += 1;
    }
    if let Some(&top) = counts.keys().next_back() {
        for m in 0..top {
            counts.entry(m).or_insert(0);
        }
    }
    counts
}

fn infinite_table(n: usize, p: &Pattern) -> GradedCountTable {
    GradedCountTable {
        pattern: p.clone(),
        n,
        counts: BTreeMap::new(),
        max_length: 0,
        total: Total::Infinite,
        assumes_tight_bound: false,
    }
}

/// `g^p_{m,n}` for `m <= max_length`, by weak-order BFS.
///
/// The total is exact only when the horizon covers the proven length bound.
pub fn graded_avoider_counts(
    n: usize,
    p: &Pattern,
    max_length: u64,
    max_elements: u64,
) -> Result<GradedCountTable, EnumerationError> {
    if n < 2 {
        return Err(AffineError::RankTooSmall(n).into());
    }
    let mut counts = BTreeMap::new();
    for grade in elements_up_to_length(n, max_length, max_elements) {
        let grade = match grade {
            Ok(g) => g,
            Err(EnumerationError::BudgetExceeded { reason, .. }) => {
                let partial = GradedCountTable {
                    pattern: p.clone(),
                    n,
                    max_length: counts.keys().next_back().copied().unwrap_or(0),
                    counts,
                    total: Total::Undetermined,
                    assumes_tight_bound: false,
                };
                return Err(EnumerationError::BudgetExceeded {
                    reason,
                    partial: Some(Box::new(partial)),
                });
            }
            Err(e) => return Err(e),
        };
        let avoiding = grade.elements.par_iter().filter(|w| avoids(w, p)).count() as u64;
        counts.insert(grade.length, avoiding);
    }
    let total = match p.finiteness() {
        Finiteness::Infinite => Total::Infinite,
        Finiteness::Finite if max_length >= p.length_bound(n)? => Total::Exact(counts.values().sum()),
        Finiteness::Finite => Total::Undetermined,
    };
    Ok(GradedCountTable {
        pattern: p.clone(),
        n,
        counts,
        max_length,
        total,
        assumes_tight_bound: false,
    })
}

/// `f^p_n` with its length grading; `INFINITE` immediately when `p`
/// contains 321.
pub fn count_avoiders(
    n: usize,
    p: &Pattern,
    budget: &EnumerationBudget,
) -> Result<GradedCountTable, EnumerationError> {
    count_avoiders_with(n, p, budget, &CountOptions::default())
}

pub fn count_avoiders_with(
    n: usize,
    p: &Pattern,
    budget: &EnumerationBudget,
    options: &CountOptions,
) -> Result<GradedCountTable, EnumerationError> {
    if n < 2 {
        return Err(AffineError::RankTooSmall(n).into());
    }
    budget.validate()?;
    if p.finiteness() == Finiteness::Infinite {
        return Ok(infinite_table(n, p));
    }
    if options.assume_tight_bound && !is_3412(p) {
        return Err(EnumerationError::TightBoundNotApplicable(p.clone()));
    }
    match budget.mode {
        Mode::BfsWeakOrder => count_bfs(n, p, budget, options),
        Mode::WindowSpace => {
            let avoiders = avoiders_window_space_with(n, p, budget, options)?;
            let counts = counts_from(&avoiders);
            Ok(GradedCountTable {
                pattern: p.clone(),
                n,
                max_length: counts.keys().next_back().copied().unwrap_or(0),
                total: Total::Exact(avoiders.len() as u64),
                counts,
                assumes_tight_bound: false,
            })
        }
    }
}

fn count_bfs(
    n: usize,
    p: &Pattern,
    budget: &EnumerationBudget,
    options: &CountOptions,
) -> Result<GradedCountTable, EnumerationError> {
    let tight = options.assume_tight_bound;
    let horizon = if tight {
        tight_3412_horizon(n)
    } else {
        p.length_bound(n)?
    };
    let limit = horizon.min(budget.max_length);

    let mut counts = BTreeMap::new();
    let mut grades = match checkpoint::load_for(options.checkpoint.as_deref(), n, p, Mode::BfsWeakOrder, tight)? {
        Some(cp) if cp.last_completed_grade.is_some() => {
            let last = cp.last_completed_grade.unwrap_or(0);
            info!("resuming BFS for {p} in rank {n} after grade {last}");
            counts = cp.counts.clone();
            WeakOrderGrades::resume(
                n,
                limit,
                budget.max_elements,
                Grade {
                    length: last,
                    elements: cp.frontier.clone(),
                },
                cp.elements_seen,
            )
        }
        _ => elements_up_to_length(n, limit, budget.max_elements),
    };

    let partial = |counts: &BTreeMap<u64, u64>| GradedCountTable {
        pattern: p.clone(),
        n,
        max_length: counts.keys().next_back().copied().unwrap_or(0),
        counts: counts.clone(),
        total: Total::Undetermined,
        assumes_tight_bound: tight,
    };

    while let Some(grade) = grades.next() {
        let grade = match grade {
            Ok(g) => g,
            Err(EnumerationError::BudgetExceeded { reason, .. }) => {
                return Err(EnumerationError::BudgetExceeded {
                    reason,
                    partial: Some(Box::new(partial(&counts))),
                })
            }
            Err(e) => return Err(e),
        };
        let avoiding = grade.elements.par_iter().filter(|w| avoids(w, p)).count() as u64;
        debug!("grade {}: {} elements, {} avoid {p}", grade.length, grade.elements.len(), avoiding);
        counts.insert(grade.length, avoiding);
        if let Some(path) = &options.checkpoint {
            Checkpoint {
                version: checkpoint::VERSION,
                pattern: p.clone(),
                n,
                mode: Mode::BfsWeakOrder,
                budget: *budget,
                assumes_tight_bound: tight,
                last_completed_grade: Some(grade.length),
                counts: counts.clone(),
                elements_seen: grades.produced(),
                frontier: grade.elements,
                spread_cap: None,
                completed_partitions: Vec::new(),
                avoiders: Vec::new(),
            }
            .save(path)?;
        }
    }
    if limit < horizon {
        return Err(EnumerationError::BudgetExceeded {
            reason: format!("length horizon {horizon} exceeds max_length {}", budget.max_length),
            partial: Some(Box::new(partial(&counts))),
        });
    }
    Ok(GradedCountTable {
        pattern: p.clone(),
        n,
        max_length: limit,
        total: Total::Exact(counts.values().sum()),
        counts,
        assumes_tight_bound: tight,
    })
}

/// Every avoider of a 321-avoiding `p` in rank `n`, sorted.
pub fn avoiders_window_space(
    n: usize,
    p: &Pattern,
    budget: &EnumerationBudget,
) -> Result<Vec<AffinePermutation>, EnumerationError> {
    avoiders_window_space_with(n, p, budget, &CountOptions::default())
}

pub fn avoiders_window_space_with(
    n: usize,
    p: &Pattern,
    budget: &EnumerationBudget,
    options: &CountOptions,
) -> Result<Vec<AffinePermutation>, EnumerationError> {
    if n < 2 {
        return Err(AffineError::RankTooSmall(n).into());
    }
    budget.validate()?;
    let mut cap = p.spread_bound()?;
    loop {
        if cap > budget.spread_cap {
            let partial = GradedCountTable {
                pattern: p.clone(),
                n,
                counts: BTreeMap::new(),
                max_length: 0,
                total: Total::Undetermined,
                assumes_tight_bound: false,
            };
            return Err(EnumerationError::BudgetExceeded {
                reason: format!("spread cap {cap} exceeds budget {}", budget.spread_cap),
                partial: Some(Box::new(partial)),
            });
        }
        let avoiders = avoiders_with_cap(n, p, cap, budget, options)?;
        // an avoider on the boundary would mean the cap might be too small
        let widest = avoiders.iter().map(AffinePermutation::spread).max().unwrap_or(0);
        if widest < cap {
            return Ok(avoiders);
        }
        info!("avoider of {p} reaches spread {widest} = cap; raising the cap");
        cap += 1;
    }
}

fn avoiders_with_cap(
    n: usize,
    p: &Pattern,
    cap: u64,
    budget: &EnumerationBudget,
    options: &CountOptions,
) -> Result<Vec<AffinePermutation>, EnumerationError> {
    let filter = PairFilter::avoiding(cap, p);
    debug!("pattern {p}, rank {n}: cap {cap}, pair classes {:?}", filter.classes());
    let partitions = window::residue_permutations(n);

    let mut done: Vec<Option<Vec<AffinePermutation>>> = vec![None; partitions.len()];
    let mut checked = 0u64;
    if let Some(cp) = checkpoint::load_for(options.checkpoint.as_deref(), n, p, Mode::WindowSpace, false)? {
        if cp.spread_cap == Some(cap) {
            for &idx in &cp.completed_partitions {
                if idx < done.len() {
                    done[idx] = Some(Vec::new());
                }
            }
            for w in cp.avoiders {
                let idx = partitions
                    .iter()
                    .position(|pi| {
                        pi.iter()
                            .zip(w.window())
                            .all(|(&r, &v)| (v - r).rem_euclid(n as i64) == 0)
                    })
                    .ok_or_else(|| EnumerationError::Checkpoint("avoider matches no partition".into()))?;
                done[idx].get_or_insert_with(Vec::new).push(w);
            }
            checked = cp.elements_seen;
            info!("resuming window search with {} partitions done", cp.completed_partitions.len());
        }
    }

    let counter = AtomicU64::new(checked);
    let exceeded = AtomicBool::new(false);
    let run_partition = |pi: &Vec<i64>| -> Vec<AffinePermutation> {
        let mut found = Vec::new();
        let _ = window::walk_partition(pi, &filter, |w| {
            if counter.fetch_add(1, Ordering::Relaxed) >= budget.max_elements {
                exceeded.store(true, Ordering::Relaxed);
                return ControlFlow::Break(());
            }
            if avoids(&w, p) {
                found.push(w);
            }
            ControlFlow::Continue(())
        });
        found
    };

    let pending: Vec<usize> = (0..partitions.len()).filter(|&i| done[i].is_none()).collect();
    let chunk = if options.checkpoint.is_some() {
        pending.len().div_ceil(16).max(1)
    } else {
        pending.len().max(1)
    };
    let pool = if options.workers > 0 {
        Some(
            rayon::ThreadPoolBuilder::new()
                .num_threads(options.workers)
                .build()
                .map_err(|e| EnumerationError::InvalidBudget(e.to_string()))?,
        )
    } else {
        None
    };
    for batch in pending.chunks(chunk) {
        let work = || -> Vec<(usize, Vec<AffinePermutation>)> {
            batch
                .par_iter()
                .map(|&idx| (idx, run_partition(&partitions[idx])))
                .collect()
        };
        let results = match &pool {
            Some(pool) => pool.install(work),
            None => work(),
        };
        if exceeded.load(Ordering::Relaxed) {
            let mut so_far: Vec<AffinePermutation> = done.iter().flatten().flatten().cloned().collect();
            so_far.sort();
            let partial = GradedCountTable {
                pattern: p.clone(),
                n,
                max_length: 0,
                counts: counts_from(&so_far),
                total: Total::Undetermined,
                assumes_tight_bound: false,
            };
            return Err(EnumerationError::BudgetExceeded {
                reason: format!("more than {} candidate windows", budget.max_elements),
                partial: Some(Box::new(partial)),
            });
        }
        for (idx, found) in results {
            done[idx] = Some(found);
        }
        if let Some(path) = &options.checkpoint {
            let completed: Vec<usize> = (0..done.len()).filter(|&i| done[i].is_some()).collect();
            let avoiders: Vec<AffinePermutation> = done.iter().flatten().flatten().cloned().collect();
            Checkpoint {
                version: checkpoint::VERSION,
                pattern: p.clone(),
                n,
                mode: Mode::WindowSpace,
                budget: *budget,
                assumes_tight_bound: false,
                last_completed_grade: None,
                counts: counts_from(&avoiders),
                elements_seen: counter.load(Ordering::Relaxed),
                frontier: Vec::new(),
                spread_cap: Some(cap),
                completed_partitions: completed,
                avoiders,
            }
            .save(path)?;
        }
    }
    let mut avoiders: Vec<AffinePermutation> = done.into_iter().flatten().flatten().collect();
    avoiders.sort();
    Ok(avoiders)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(s: &str) -> Pattern {
        s.parse().unwrap()
    }

    #[test]
    fn small_totals() {
        let budget = EnumerationBudget::default();
        assert_eq!(count_avoiders(2, &p("231"), &budget).unwrap().total, Total::Exact(3));
        assert_eq!(count_avoiders(4, &p("231"), &budget).unwrap().total, Total::Exact(35));
        assert_eq!(count_avoiders(3, &p("321"), &budget).unwrap().total, Total::Infinite);
        assert_eq!(count_avoiders(3, &p("132"), &budget).unwrap().total, Total::Exact(1));
        assert_eq!(count_avoiders(3, &p("123"), &budget).unwrap().total, Total::Exact(0));
    }

    #[test]
    fn bfs_agrees_with_window_space_in_rank_two() {
        let bfs = EnumerationBudget::with_mode(Mode::BfsWeakOrder);
        let win = EnumerationBudget::default();
        for q in ["12", "21", "123", "132", "231", "312", "3412", "3142"] {
            let a = count_avoiders(2, &p(q), &bfs).unwrap();
            let b = count_avoiders(2, &p(q), &win).unwrap();
            assert_eq!(a.total, b.total, "{q}");
            for (m, c) in &b.counts {
                assert_eq!(a.count_at(*m), *c, "{q} length {m}");
            }
        }
    }

    #[test]
    fn graded_counts() {
        let t = graded_avoider_counts(3, &p("132"), 7, u64::MAX).unwrap();
        assert_eq!(t.count_at(0), 1);
        assert_eq!(t.counted_sum(), 1);
        let t = graded_avoider_counts(2, &p("123"), 5, u64::MAX).unwrap();
        assert_eq!(t.counted_sum(), 0);
        let t = graded_avoider_counts(3, &p("321"), 6, u64::MAX).unwrap();
        assert_eq!(t.total, Total::Infinite);
        assert!((0..=6).all(|m| t.count_at(m) > 0), "{:?}", t.counts);
    }

    #[test]
    fn budget_errors_carry_partial_tables() {
        let tiny = EnumerationBudget {
            max_elements: 3,
            ..EnumerationBudget::default()
        };
        match count_avoiders(3, &p("231"), &tiny) {
            Err(EnumerationError::BudgetExceeded { partial: Some(t), .. }) => {
                assert_eq!(t.total, Total::Undetermined)
            }
            other => panic!("{other:?}"),
        }
        let shallow = EnumerationBudget {
            max_length: 4,
            ..EnumerationBudget::with_mode(Mode::BfsWeakOrder)
        };
        match count_avoiders(3, &p("231"), &shallow) {
            Err(EnumerationError::BudgetExceeded { partial: Some(t), .. }) => {
                assert_eq!(t.total, Total::Undetermined);
                assert_eq!(t.max_length, 4);
            }
            other => panic!("{other:?}"),
        }
        let narrow = EnumerationBudget {
            spread_cap: 10,
            ..EnumerationBudget::default()
        };
        assert!(matches!(
            count_avoiders(3, &p("231"), &narrow),
            Err(EnumerationError::BudgetExceeded { .. })
        ));
        let zero = EnumerationBudget {
            max_length: 0,
            ..EnumerationBudget::default()
        };
        assert!(matches!(
            count_avoiders(3, &p("231"), &zero),
            Err(EnumerationError::InvalidBudget(_))
        ));
    }

    #[test]
    fn tight_bound_is_opt_in_and_3412_only() {
        let bfs = EnumerationBudget::with_mode(Mode::BfsWeakOrder);
        let opts = CountOptions {
            assume_tight_bound: true,
            ..CountOptions::default()
        };
        assert!(matches!(
            count_avoiders_with(3, &p("231"), &bfs, &opts),
            Err(EnumerationError::TightBoundNotApplicable(_))
        ));
        let t = count_avoiders_with(2, &p("3412"), &bfs, &opts).unwrap();
        assert!(t.assumes_tight_bound);
        assert_eq!(t.max_length, 3);
        assert_eq!(t.total, Total::Exact(5));
    }

    #[test]
    fn worker_count_does_not_change_results() {
        let budget = EnumerationBudget::default();
        let one = count_avoiders_with(3, &p("3412"), &budget, &CountOptions { workers: 1, ..Default::default() }).unwrap();
        let four = count_avoiders_with(3, &p("3412"), &budget, &CountOptions { workers: 4, ..Default::default() }).unwrap();
        assert_eq!(one, four);
    }
}
