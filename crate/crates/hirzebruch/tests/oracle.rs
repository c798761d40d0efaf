//! Independent oracles for the exact machinery.
//!
//! The root counter is checked two ways: against polynomials assembled
//! from known factors (exact ground truth) and against companion-matrix
//! eigenvalues (an unrelated numeric method). The positivity certifier
//! is checked against a dense float sampling of the curvature quadratic
//! on randomly generated admissible profiles.

mod common;

use hirzebruch::exactpoly::{rat, rational_to_f64, sturm_count, Rational, RationalPoly};
use nalgebra::DMatrix;
use num_traits::One;
use rand::Rng;

fn linear_factor(root: &Rational) -> RationalPoly {
    // x - root
    RationalPoly::from_coeffs(vec![-root.clone(), Rational::one()])
}

#[test]
fn sturm_count_matches_constructed_roots() {
    let mut rng = common::seeded_rng(101);
    let mut checked = 0;
    while checked < 400 {
        // distinct rational roots, some with multiplicity, plus a few
        // irreducible quadratic factors to pad the degree
        let n_roots = rng.gen_range(0..=5usize);
        let mut roots: Vec<Rational> = vec![];
        let mut poly = RationalPoly::constant(rat(rng.gen_range(1..=3), 1));
        if rng.gen_range(0..2) == 0 {
            poly = poly.neg();
        }
        for _ in 0..n_roots {
            let r = rat(rng.gen_range(-12..=12), rng.gen_range(1..=4));
            let multiplicity = rng.gen_range(1..=2usize);
            for _ in 0..multiplicity {
                poly = poly.mul(&linear_factor(&r));
            }
            if !roots.contains(&r) {
                roots.push(r);
            }
        }
        for _ in 0..rng.gen_range(0..=2usize) {
            // x^2 + px + q with p^2 < 4q has no real roots
            let p = rat(rng.gen_range(-3..=3), 1);
            let q = &(&p * &p) / rat(4, 1) + rat(rng.gen_range(1..=4), 2);
            poly = poly.mul(&RationalPoly::from_coeffs(vec![q, p, Rational::one()]));
        }
        if poly.degree().map_or(true, |d| d > 12) {
            continue;
        }

        let lo = rat(rng.gen_range(-8..=-1), rng.gen_range(1..=3));
        let hi = rat(rng.gen_range(0..=8), rng.gen_range(1..=3));
        let expected = roots.iter().filter(|r| **r >= lo && **r <= hi).count();
        let got = sturm_count(&poly, &lo, &hi).expect("countable");
        assert_eq!(
            got, expected,
            "degree {:?} roots {:?} on [{:?}, {:?}]",
            poly.degree(),
            roots,
            lo,
            hi
        );
        checked += 1;
    }
}

#[test]
fn sturm_count_matches_companion_matrix() {
    let mut rng = common::seeded_rng(202);
    let mut accepted = 0;
    let mut attempted = 0;
    while accepted < 300 && attempted < 5000 {
        attempted += 1;
        let degree = rng.gen_range(3..=10usize);
        let coeffs: Vec<Rational> = (0..=degree)
            .map(|i| {
                if i == degree {
                    rat(rng.gen_range(1..=4), 1)
                } else {
                    rat(rng.gen_range(-6..=6), rng.gen_range(1..=3))
                }
            })
            .collect();
        let poly = RationalPoly::from_coeffs(coeffs);
        let Some(d) = poly.degree() else { continue };
        if d < 3 {
            continue;
        }

        // monic companion matrix of the float image
        let cf: Vec<f64> = poly.coeffs().iter().map(rational_to_f64).collect();
        let lead = cf[d];
        let mut m = DMatrix::<f64>::zeros(d, d);
        for i in 1..d {
            m[(i, i - 1)] = 1.0;
        }
        for i in 0..d {
            m[(i, d - 1)] = -cf[i] / lead;
        }
        let eigen = m.complex_eigenvalues();

        let lo = -3.0;
        let hi = 3.0;
        // only score draws where the float picture is unambiguous:
        // eigenvalues clearly real or clearly complex, away from the
        // endpoints, and pairwise separated
        let clear = eigen.iter().all(|z| {
            (z.im.abs() < 1e-9 || z.im.abs() > 1e-4)
                && (z.re - lo).abs() > 1e-4
                && (z.re - hi).abs() > 1e-4
        });
        let mut separated = true;
        for i in 0..d {
            for j in (i + 1)..d {
                if (eigen[i] - eigen[j]).norm() < 1e-5 {
                    separated = false;
                }
            }
        }
        if !clear || !separated {
            continue;
        }
        let numeric = eigen
            .iter()
            .filter(|z| z.im.abs() < 1e-9 && z.re > lo && z.re < hi)
            .count();
        let exact = sturm_count(&poly, &rat(-3, 1), &rat(3, 1)).expect("countable");
        assert_eq!(
            exact, numeric,
            "coeffs {:?} eigenvalues {:?}",
            poly.coeffs(),
            eigen
        );
        accepted += 1;
    }
    assert!(
        accepted >= 300,
        "only {accepted} of {attempted} draws were scoreable"
    );
}

#[test]
fn certifier_agrees_with_dense_sampling() {
    let (positives, negatives) = common::certifier_vs_dense_oracle(7, 100);
    assert_eq!(positives + negatives, 100);
    assert!(
        positives >= 5 && negatives >= 5,
        "generator coverage too one-sided: {positives} positive, {negatives} negative"
    );
}
