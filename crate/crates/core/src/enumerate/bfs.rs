//! Length-graded generation by ascending right multiplication.

use std::collections::HashSet;

use crate::affine::AffinePermutation;

use super::EnumerationError;

/// All elements of one length.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Grade {
    pub length: u64,
    pub elements: Vec<AffinePermutation>,
}

/// Iterator over the grades `0..=max_length` of the weak order.
///
/// Grade `m + 1` is `{ w·s_i : ℓ(w) = m, w(i) < w(i+1) }`. Multiplying by a
/// generator changes the length by exactly one, so deduplicating within the
/// next grade is enough and only one grade is kept in memory.
#[derive(Debug, Clone)]
pub struct WeakOrderGrades {
    n: usize,
    max_length: u64,
    max_elements: u64,
    next_length: u64,
    frontier: Vec<AffinePermutation>,
    produced: u64,
    finished: bool,
}

impl WeakOrderGrades {
    pub fn new(n: usize, max_length: u64, max_elements: u64) -> Self {
        Self {
            n,
            max_length,
            max_elements,
            next_length: 0,
            frontier: Vec::new(),
            produced: 0,
            finished: false,
        }
    }

    /// Continue from a grade that was already produced (e.g. a checkpoint).
    pub fn resume(
        n: usize,
        max_length: u64,
        max_elements: u64,
        completed: Grade,
        produced: u64,
    ) -> Self {
        Self {
            n,
            max_length,
            max_elements,
            next_length: completed.length + 1,
            frontier: completed.elements,
            produced,
            finished: false,
        }
    }

    pub fn produced(&self) -> u64 {
        self.produced
    }

    fn successors(&self) -> Vec<AffinePermutation> {
        let mut next = HashSet::with_capacity(self.frontier.len() * 2);
        for w in &self.frontier {
            for i in 0..self.n {
                if !w.has_right_descent(i) {
                    next.insert(w.right_multiply(i));
                }
            }
        }
        let mut next: Vec<_> = next.into_iter().collect();
        next.sort_unstable();
        next
    }
}

impl Iterator for WeakOrderGrades {
    type Item = Result<Grade, EnumerationError>;

    fn next(&mut self) -> Option<Self::Item> {
        if self.finished || self.next_length > self.max_length {
            return None;
        }
        let elements = if self.next_length == 0 {
            vec![AffinePermutation::identity(self.n)]
        } else {
            self.successors()
        };
        self.produced += elements.len() as u64;
        if self.produced > self.max_elements {
            self.finished = true;
            return Some(Err(EnumerationError::BudgetExceeded {
                reason: format!(
                    "more than {} elements by length {}",
                    self.max_elements, self.next_length
                ),
                partial: None,
            }));
        }
        self.frontier = elements.clone();
        let length = self.next_length;
        self.next_length += 1;
        Some(Ok(Grade { length, elements }))
    }
}

/// Every element of rank `n` with length at most `max_length`, grade by
/// grade.
pub fn elements_up_to_length(n: usize, max_length: u64, max_elements: u64) -> WeakOrderGrades {
    WeakOrderGrades::new(n, max_length, max_elements)
}
