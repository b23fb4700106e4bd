mod common;

use std::collections::BTreeSet;

use affine_avoid::containment::naive_contains;
use affine_avoid::enumerate::{
    avoiders_window_space, count_avoiders, graded_avoider_counts, EnumerationBudget, Mode, Total,
};
use affine_avoid::{avoids, contains, AffinePermutation, Finiteness, Pattern};
use proptest::prelude::*;

use common::{complete_radius, patterns_3_and_4};

fn element() -> impl Strategy<Value = AffinePermutation> {
    (2usize..=5).prop_flat_map(|n| {
        proptest::collection::vec(0..n, 0..=10).prop_map(move |word| {
            word.into_iter()
                .fold(AffinePermutation::identity(n), |w, s| w.right_multiply(s))
        })
    })
}

fn pattern() -> impl Strategy<Value = Pattern> {
    let all = patterns_3_and_4();
    (0..all.len()).prop_map(move |i| all[i].clone())
}

fn finite_patterns() -> Vec<Pattern> {
    patterns_3_and_4()
        .into_iter()
        .filter(|p| p.finiteness() == Finiteness::Finite)
        .collect()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(300))]

    #[test]
    fn exact_and_exhaustive_containment_agree(w in element(), p in pattern()) {
        let exact = contains(&w, &p);
        let naive = naive_contains(&w, &p, complete_radius(&w, p.size())).unwrap();
        prop_assert_eq!(exact.is_some(), naive.is_some());
        if let Some(occ) = exact {
            prop_assert!(occ.is_valid_for(&w, &p));
            prop_assert_eq!(occ.offsets[0], 0);
        }
    }

    #[test]
    fn inverse_symmetry(w in element(), p in pattern()) {
        prop_assert_eq!(avoids(&w, &p), avoids(&w.inverse(), &p.inverse()));
        prop_assert_eq!(w.inverse().inverse(), w.clone());
        prop_assert_eq!(w.inverse().length(), w.length());
    }

    #[test]
    fn shifts_preserve_avoidance_and_length(w in element(), p in pattern()) {
        let r = w.shift_right();
        let l = w.shift_left();
        prop_assert_eq!(avoids(&r, &p), avoids(&w, &p));
        prop_assert_eq!(avoids(&l, &p), avoids(&w, &p));
        prop_assert_eq!(r.length(), w.length());
        prop_assert_eq!(r.shift_left(), w.clone());
        prop_assert_eq!(r.inversion_table(), w.inversion_table().rotate_right());
        prop_assert_eq!(l.inversion_table(), w.inversion_table().rotate_left());
    }

    #[test]
    fn length_is_the_inversion_table_sum(w in element()) {
        let table = w.inversion_table();
        prop_assert_eq!(table.total(), w.length());
        prop_assert!(table.has_zero());
    }

    #[test]
    fn length_counts_inversions_directly(w in element()) {
        // pairs i in 1..=n, j > i with w(i) > w(j); beyond the spread no
        // further inversions are possible
        let n = w.rank() as i64;
        let reach = n * (w.spread() as i64 + 2);
        let direct: u64 = (1..=n)
            .map(|i| ((i + 1)..=(i + reach)).filter(|&j| w.apply(i) > w.apply(j)).count() as u64)
            .sum();
        prop_assert_eq!(direct, w.length());
    }

    #[test]
    fn descents_match_length_changes(w in element()) {
        for i in 0..w.rank() {
            let next = w.right_multiply(i);
            let expected = if w.has_right_descent(i) { w.length() - 1 } else { w.length() + 1 };
            prop_assert_eq!(next.length(), expected);
            prop_assert_eq!(next.right_multiply(i), w.clone());
        }
    }

    #[test]
    fn composition_is_pointwise(a in element(), word in proptest::collection::vec(0usize..8, 0..8)) {
        let n = a.rank();
        let b = word.into_iter().fold(AffinePermutation::identity(n), |w, s| w.right_multiply(s % n));
        let ab = a.compose(&b).unwrap();
        for i in -12..=12 {
            prop_assert_eq!(ab.apply(i), a.apply(b.apply(i)));
        }
        prop_assert!(ab.length() <= a.length() + b.length());
    }

    #[test]
    fn words_missing_a_letter_stay_parabolic(
        n in 2usize..=5,
        missing in 0usize..5,
        raw in proptest::collection::vec(0usize..5, 0..12),
        t in -2i64..=2,
    ) {
        let missing = missing % n;
        let letters: Vec<usize> = raw.into_iter().map(|s| s % n).filter(|&s| s != missing).collect();
        let w = letters.iter().fold(AffinePermutation::identity(n), |w, &s| w.right_multiply(s));
        prop_assert!(w.is_in_parabolic(missing as i64 + 1 + t * n as i64));
    }

    #[test]
    fn text_round_trip(w in element()) {
        prop_assert_eq!(w.to_string().parse::<AffinePermutation>().unwrap(), w.clone());
        let json = serde_json::to_string(&w).unwrap();
        prop_assert_eq!(serde_json::from_str::<AffinePermutation>(&json).unwrap(), w);
    }
}

#[test]
fn spirals_avoid_321() {
    let p321: Pattern = "321".parse().unwrap();
    for n in 2..=8 {
        for k in 0..=50 {
            let s = AffinePermutation::spiral(n, k).unwrap();
            assert!(avoids(&s, &p321), "spiral({n},{k}) = {s}");
            assert_eq!(s.length(), k * (n as u64 - 1));
        }
    }
}

#[test]
fn avoider_sets_are_closed_under_shifts() {
    let budget = EnumerationBudget::default();
    for p in finite_patterns() {
        for n in 2..=4 {
            let set: BTreeSet<AffinePermutation> = avoiders_window_space(n, &p, &budget).unwrap().into_iter().collect();
            for w in &set {
                assert!(set.contains(&w.shift_right()), "{p} n={n}: {w}");
                assert!(set.contains(&w.shift_left()), "{p} n={n}: {w}");
            }
        }
    }
}

#[test]
fn avoiders_respect_the_bounds() {
    let budget = EnumerationBudget::default();
    for p in finite_patterns() {
        for n in 2..=4 {
            let spread = p.spread_bound().unwrap();
            let length = p.length_bound(n).unwrap();
            for w in avoiders_window_space(n, &p, &budget).unwrap() {
                assert!(w.spread() <= spread, "{p} n={n}: {w}");
                assert!(w.length() <= length, "{p} n={n}: {w}");
            }
        }
    }
}

#[test]
fn avoiders_of_3412_are_short() {
    let budget = EnumerationBudget::default();
    let p: Pattern = "3412".parse().unwrap();
    for n in 2..=5usize {
        let horizon = 3 * (n * (n - 1) / 2) as u64;
        let longest = avoiders_window_space(n, &p, &budget).unwrap().iter().map(AffinePermutation::length).max();
        assert!(longest.unwrap() <= horizon, "n={n}: {longest:?} > {horizon}");
    }
}

#[test]
fn containing_a_smaller_pattern_is_monotone() {
    let budget = EnumerationBudget::default();
    for n in 2..=3 {
        for small in Pattern::all(3).into_iter().filter(|p| p.finiteness() == Finiteness::Finite) {
            let a: BTreeSet<_> = avoiders_window_space(n, &small, &budget).unwrap().into_iter().collect();
            for big in finite_patterns().into_iter().filter(|q| q.size() == 4 && q.contains_pattern(&small)) {
                let b: BTreeSet<_> = avoiders_window_space(n, &big, &budget).unwrap().into_iter().collect();
                assert!(a.is_subset(&b), "{small} vs {big} at n={n}");
            }
        }
    }
}

#[test]
fn inverse_patterns_have_equal_counts() {
    let budget = EnumerationBudget::default();
    for p in finite_patterns() {
        for n in 2..=4 {
            let a = count_avoiders(n, &p, &budget).unwrap().total;
            let b = count_avoiders(n, &p.inverse(), &budget).unwrap().total;
            assert_eq!(a, b, "{p} n={n}");
        }
    }
    for n in 2..=4 {
        assert_eq!(
            count_avoiders(n, &"231".parse().unwrap(), &budget).unwrap().total,
            count_avoiders(n, &"312".parse().unwrap(), &budget).unwrap().total
        );
    }
}

#[test]
fn both_modes_give_the_same_tables() {
    let window = EnumerationBudget::default();
    let bfs = EnumerationBudget::with_mode(Mode::BfsWeakOrder);
    for p in finite_patterns() {
        let a = count_avoiders(3, &p, &window).unwrap();
        let b = count_avoiders(3, &p, &bfs).unwrap();
        assert_eq!(a.total, b.total, "{p}");
        assert_eq!(a.total, Total::Exact(b.counted_sum()), "{p}");
        for (m, c) in &b.counts {
            assert_eq!(a.count_at(*m), *c, "{p} length {m}");
        }
    }
}

#[test]
fn graded_counts_match_window_tables_for_rank_four() {
    let budget = EnumerationBudget::default();
    for q in ["231", "3412", "3142"] {
        let p: Pattern = q.parse().unwrap();
        let full = count_avoiders(4, &p, &budget).unwrap();
        let graded = graded_avoider_counts(4, &p, 10, u64::MAX).unwrap();
        for m in 0..=10 {
            assert_eq!(graded.count_at(m), full.count_at(m), "{q} length {m}");
        }
    }
}
