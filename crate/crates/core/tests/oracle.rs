use std::collections::HashSet;

use num_rational::BigRational;
use thompson_fp::fordham::Position;
use thompson_fp::oracle::{
    bfs_group_ball, bfs_positive_monoid, enumerate_positive_by_weight, enumerate_subtrees_by_weight,
    verify_suite, Profile, Status,
};
use thompson_fp::series::{positive_growth_series, solve_m, solve_mi};
use thompson_fp::{evaluate, normal_forms, Word};

fn ints(s: &thompson_fp::PowerSeries, n: usize) -> Vec<u64> {
    (0..n).map(|k| s.coeff(k).to_integer().try_into().unwrap()).collect()
}

#[test]
fn verify_small_profile() {
    for p in 2..=5 {
        let report = verify_suite(p, Profile::Small).unwrap();
        for c in &report.checks {
            assert_eq!(c.status, Status::Pass, "p={p} {}: {}", c.check_name, c.details);
        }
    }
}

#[test]
fn verify_full_profile() {
    for p in 2..=3 {
        let report = verify_suite(p, Profile::Full).unwrap();
        for c in &report.checks {
            assert_eq!(c.status, Status::Pass, "p={p} {}: {}", c.check_name, c.details);
        }
    }
}

#[test]
fn census_matches_series_p3() {
    let census = enumerate_positive_by_weight(3, 6).unwrap();
    let s = positive_growth_series(3, 7).unwrap().s;
    assert_eq!(census.counts, ints(&s, 7));
}

#[test]
fn middle_subtrees_count_mi() {
    for p in 2..=4 {
        for i in 1..p {
            let counts = enumerate_subtrees_by_weight(p, Position::Middle(i), 6).unwrap();
            let mi = solve_mi(p, i, 7).unwrap();
            assert_eq!(counts, ints(&mi, 7), "p={p} i={i}");
        }
    }
}

#[test]
fn left_subtrees_count_l() {
    for p in 2..=4 {
        let counts = enumerate_subtrees_by_weight(p, Position::Left, 6).unwrap();
        let l = positive_growth_series(p, 7).unwrap().l;
        assert_eq!(counts, ints(&l, 7), "p={p}");
        // L = 1/(1 - xM)
        let m = solve_m(p, 7).unwrap();
        let x = thompson_fp::PowerSeries::monomial(1, 1, 7);
        let one = thompson_fp::PowerSeries::one(7);
        assert_eq!((&one - &(&x * &m)).reciprocal().unwrap(), l);
    }
}

#[test]
fn monoid_box_is_injective() {
    for p in 2..=3 {
        let words = bfs_positive_monoid(p, 4, 6);
        let keys: HashSet<String> = words.iter().map(|w| evaluate(p, w).canonical()).collect();
        assert_eq!(keys.len(), words.len(), "p={p}");
        assert!(words.iter().all(|w| normal_forms::is_infinite_nf(p, w)));
    }
}

#[test]
fn ball_spheres_start_with_generators() {
    for p in 2..=3 {
        let b = bfs_group_ball(p, 3).unwrap();
        assert_eq!(&b.sphere_sizes[..2], &[1, 2 * p as u64]);
        let total: u64 = b.sphere_sizes.iter().sum();
        assert_eq!(*b.ball_sizes.last().unwrap(), total);
        assert_eq!(b.elements.len() as u64, total);
    }
}

#[test]
fn x2_has_length_three() {
    // x2 = x0^-1 x1 x0 for p = 2
    let b = bfs_group_ball(2, 3).unwrap();
    let w: Word = "x2".parse().unwrap();
    assert_eq!(b.distance(&evaluate(2, &w)), Some(3));
    assert_eq!(thompson_fp::fordham::positive_length_of_word(2, &w).unwrap(), 3);
}

#[test]
fn growth_ratio_approaches_zeta() {
    let tol = BigRational::new(1.into(), 1_000_000_000.into());
    for p in 2..=3 {
        let s = positive_growth_series(p, 27).unwrap().s;
        let ratio = s.coeff(25) / s.coeff(26);
        let ratio = thompson_fp::rates::to_f64(&ratio);
        let z = thompson_fp::zeta(p, &tol).unwrap();
        assert!((ratio - 1.0 / z.to_f64()).abs() < 1e-3, "p={p}: {ratio}");
    }
}
