//! Checks against values computed independently of the library code paths.

use topolaw::*;

fn simpson(f: &dyn Fn(f64) -> f64, a: f64, b: f64) -> f64 {
    let m = 0.5 * (a + b);
    (b - a) / 6.0 * (f(a) + 4.0 * f(m) + f(b))
}

fn adaptive(f: &dyn Fn(f64) -> f64, a: f64, b: f64, whole: f64, tol: f64, depth: u32) -> f64 {
    let m = 0.5 * (a + b);
    let left = simpson(f, a, m);
    let right = simpson(f, m, b);
    let diff = left + right - whole;
    if depth == 0 || diff.abs() <= 15.0 * tol {
        return left + right + diff / 15.0;
    }
    adaptive(f, a, m, left, 0.5 * tol, depth - 1) + adaptive(f, m, b, right, 0.5 * tol, depth - 1)
}

/// Adaptive Simpson over log-spaced panels.
fn quad(f: &dyn Fn(f64) -> f64, a: f64, b: f64) -> f64 {
    let panels = 64;
    let ratio = (b / a).powf(1.0 / panels as f64);
    let mut lo = a;
    let mut total = 0.0;
    for i in 0..panels {
        let hi = if i + 1 == panels { b } else { lo * ratio };
        let whole = simpson(f, lo, hi);
        total += adaptive(f, lo, hi, whole, 1e-15 * whole.abs().max(1e-300), 40);
        lo = hi;
    }
    total
}

#[test]
fn rank_integral_matches_quadrature() {
    let mut worst: f64 = 0.0;
    for c2 in [0.5, 3.0, 2000.0, 8.0e6] {
        for i in 0..=8 {
            let o = -3.5 + 0.25 * i as f64;
            for d in [1.1, 2.0, 7.5, 33.0, 250.0, 1.0e3, 1.0e4] {
                let law = DensityLaw { c2, o };
                let expected = quad(&|s| s * law.density(s), 1.0, d);
                let got = rank_integral(&law, d).unwrap();
                let rel = (got - expected).abs() / expected.abs();
                worst = worst.max(rel);
                assert!(rel < 1e-8, "C2={c2} O={o} d={d}: {got} vs {expected}");
            }
        }
    }
    println!("worst relative deviation from quadrature: {worst:.3e}");
}

#[test]
fn rank_integral_reference_points() {
    let law = DensityLaw { c2: 2000.0, o: -2.0 };
    assert!((rank_integral(&law, 2.0).unwrap() - 1000.0).abs() < 1e-9);
    let far = rank_integral(&law, 1e9).unwrap();
    assert!((far - 2000.0).abs() / 2000.0 < 1e-6);
    assert!(rank_integral(&law, 1.0).is_err());
    assert!(rank_integral(&law, 0.5).is_err());
}

#[test]
fn frequency_constant_matches_rank_law_derivative() {
    // the rank law inverted is r(d) = (d/C1)^(1/R); its negative slope in d
    // is the frequency law, so C2 = -dr/dd / d^O at any d
    for &(c1, r) in &[(2000.0, -0.5), (1000.0, -1.0), (37.0, -0.81), (5.0, -1.8)] {
        let law = RankLaw::new(c1, r).unwrap();
        let o = 1.0 / r - 1.0;
        for d in [0.7, 1.3, 4.0, 19.0] {
            let h = 1e-5 * d;
            let inv = |x: f64| (x / c1).powf(1.0 / r);
            let slope = (inv(d + h) - inv(d - h)) / (2.0 * h);
            let expected = -slope / d.powf(o);
            let got = rank_to_freq_constant(&law).unwrap();
            assert!(
                (got - expected).abs() / expected.abs() < 1e-7,
                "C1={c1} R={r} d={d}: {got} vs {expected}"
            );
        }
    }
    let c2 = rank_to_freq_constant(&RankLaw::new(2000.0, -0.5).unwrap()).unwrap();
    assert!((c2 - 8.0e6).abs() < 1e-3);
}

#[test]
fn rank_exponents_from_frequency_exponents() {
    for (o, r) in [(-2.0, -1.0), (-3.0, -0.5), (-1.5, -2.0), (0.0, 1.0), (-5.0, -0.25)] {
        let got = freq_to_rank_exponent(o).unwrap();
        assert!((got - r).abs() < 1e-15, "O={o}");
        let back = rank_to_freq_exponent(r).unwrap();
        assert!((back - o).abs() < 1e-15, "R={r}");
    }
    assert!(rank_to_freq_exponent(0.0).is_err());
    assert!(freq_to_rank_exponent(-1.0).is_err());
}

/// Integer-only reference for nearest rounding of `c1 / r` with `c1` integral.
fn nearest_reciprocal(c1: u64, r: u64) -> u64 {
    // floor(c1/r + 1/2) == floor((2*c1 + r) / (2*r))
    (2 * c1 + r) / (2 * r)
}

#[test]
fn reciprocal_table_matches_integer_enumeration() {
    for (n, c1) in [(2000usize, 2000u64), (2000, 1000), (500, 250), (37, 19)] {
        let cfg = SynthConfig { n, c1: c1 as f64, r: -1.0, rounding: Rounding::Nearest };
        let table = generate_rank_degree(&cfg).unwrap();
        let expected: Vec<u64> = (1..=n as u64).map(|r| nearest_reciprocal(c1, r).max(1)).collect();
        assert_eq!(table.degrees(), &expected[..], "n={n} C1={c1}");
    }
}

#[test]
fn degree_one_group_for_the_pinned_reference() {
    let cfg = SynthConfig { n: 2000, c1: 2000.0, r: -1.0, rounding: Rounding::Nearest };
    let table = generate_rank_degree(&cfg).unwrap();
    let ones: Vec<u64> = table.entries().filter(|e| e.1 == 1).map(|e| e.0).collect();
    // 2000/r < 1.5 exactly when r > 1333.33
    assert_eq!(ones.first(), Some(&1334));
    assert_eq!(ones.last(), Some(&2000));
    assert_eq!(ones.len(), 667);
}

#[test]
fn floor_table_matches_integer_division() {
    let cfg = SynthConfig { n: 2000, c1: 1000.0, r: -1.0, rounding: Rounding::Floor };
    let table = generate_rank_degree(&cfg).unwrap();
    let expected: Vec<u64> = (1..=2000u64).map(|r| (1000 / r).max(1)).collect();
    assert_eq!(table.degrees(), &expected[..]);
}

#[test]
fn frequency_table_of_reciprocal_law_by_counting() {
    let cfg = SynthConfig { n: 2000, c1: 1000.0, r: -1.0, rounding: Rounding::Nearest };
    let freqs = frequency_from_ranks(&generate_rank_degree(&cfg).unwrap());
    // brute force count of ranks mapping to each degree
    let mut counts = std::collections::BTreeMap::new();
    for r in 1..=2000u64 {
        *counts.entry(nearest_reciprocal(1000, r).max(1)).or_insert(0u64) += 1;
    }
    let expected: Vec<(u64, u64)> = counts.into_iter().collect();
    assert_eq!(freqs.entries(), &expected[..]);
}

#[test]
fn error_sim_orders_and_scales() {
    for seed in [1u64, 2, 3, 42] {
        let at = |n| {
            let cfg = ErrorSimConfig { seed, n_degrees: n, ..Default::default() };
            error_propagation_experiment(&cfg).unwrap()
        };
        let small = at(50);
        let large = at(100);
        assert!(small.rank_path_wins() && large.rank_path_wins(), "seed {seed}");
        assert!(
            large.mean_abs_error_r_from_o > small.mean_abs_error_r_from_o,
            "seed {seed}: frequency path should grow"
        );
        assert!(
            large.mean_abs_error_o_from_r < 2.0 * small.mean_abs_error_o_from_r,
            "seed {seed}: rank path should stay flat"
        );
    }
}

#[test]
fn error_sim_without_noise_is_exact() {
    let cfg = ErrorSimConfig { epsilon: 0.0, eta: 0.0, trials: 10, ..Default::default() };
    let report = error_propagation_experiment(&cfg).unwrap();
    assert!(report.mean_abs_error_o_from_r < 1e-12);
    assert!(report.mean_abs_error_r_from_o < 1e-12);
    assert_eq!(report.rejected_trials, 0);
}
