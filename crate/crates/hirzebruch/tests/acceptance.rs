//! Acceptance gate: twelve end-to-end checks, one test per criterion.
//! Each prints a single pass/fail line (visible with --nocapture) and
//! enforces its own wall-clock budget.

mod common;

use std::time::{Duration, Instant};

use hirzebruch::curvature::{
    certify_positive, local_pinching, Method, Verdict,
};
use hirzebruch::exactpoly::{rat, rational_to_f64, Rational};
use hirzebruch::intersect::{negative_class_witness, total_scalar_closed_form, total_scalar_coefficient};
use hirzebruch::pointcurv::{flag_tensor, h_extrema, induced_curvature_at, orthogonal_bisectional_min};
use hirzebruch::profile::{
    construct_positive_profile, hitchin_profile, path_between, quartic_profile,
};
use hirzebruch::soliton::{
    compact_alpha, compact_alpha_shooting, conjecture_sweep, soliton_h_positive, SolitonKind,
};
use num_complex::Complex64;
use num_traits::Zero;
use rand::Rng;

fn criterion(
    number: u32,
    budget: Duration,
    label: &str,
    body: impl FnOnce() -> Result<String, String>,
) {
    let started = Instant::now();
    let mut outcome = body();
    let elapsed = started.elapsed();
    if outcome.is_ok() && elapsed > budget {
        outcome = Err(format!("overran the {budget:?} budget: took {elapsed:.2?}"));
    }
    match &outcome {
        Ok(detail) => println!(
            "criterion {number:2}: PASS  {label}  ({elapsed:.2?} of {budget:?})  [{detail}]"
        ),
        Err(why) => println!("criterion {number:2}: FAIL  {label}  ({elapsed:.2?})  [{why}]"),
    }
    if let Err(why) = outcome {
        panic!("criterion {number} failed: {why}");
    }
}

fn is_positive_at(n: u32, k: u32, c: &Rational) -> Result<bool, String> {
    let profile = hitchin_profile(n, k, c).map_err(|e| e.to_string())?;
    Ok(certify_positive(&profile).is_positive())
}

/// Certified bisection of the positivity boundary in c for the
/// quadratic family; lo must certify positive and hi must not.
fn bisect_threshold(n: u32, k: u32, mut lo: Rational, mut hi: Rational) -> Result<f64, String> {
    if !is_positive_at(n, k, &lo)? {
        return Err(format!("bracket start is not positive at (n,k)=({n},{k})"));
    }
    if is_positive_at(n, k, &hi)? {
        return Err(format!("bracket end is positive at (n,k)=({n},{k})"));
    }
    while rational_to_f64(&(&hi - &lo)) > 2e-7 {
        let mid = (&lo + &hi) / rat(2, 1);
        if is_positive_at(n, k, &mid)? {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    Ok(rational_to_f64(&((&lo + &hi) / rat(2, 1))))
}

fn check(ok: bool, why: String) -> Result<(), String> {
    if ok {
        Ok(())
    } else {
        Err(why)
    }
}

#[test]
fn criterion_01_quadratic_family_threshold() {
    criterion(1, Duration::from_secs(5), "quadratic family threshold on (2,1)", || {
        for c in [rat(1, 10), rat(1, 3), rat(1, 2), rat(33, 50)] {
            check(is_positive_at(2, 1, &c)?, format!("expected positive at c = {c}"))?;
        }
        for c in [rat(2, 3), rat(7, 10), rat(1, 1)] {
            check(!is_positive_at(2, 1, &c)?, format!("expected not positive at c = {c}"))?;
        }
        let boundary = bisect_threshold(2, 1, rat(1, 2), rat(1, 1))?;
        let err = (boundary - 2.0 / 3.0).abs();
        check(err <= 1e-6, format!("boundary {boundary:.8} is {err:.2e} from 2/3"))?;
        Ok(format!("boundary localized to {boundary:.7}"))
    });
}

#[test]
fn criterion_02_general_quadratic_threshold() {
    criterion(2, Duration::from_secs(30), "quadratic thresholds match n/(k(2k+1))", || {
        let mut worst: f64 = 0.0;
        for (n, k) in [(2u32, 1u32), (3, 1), (3, 2), (5, 2), (7, 2)] {
            let expected = rat(n as i64, (k * (2 * k + 1)) as i64);
            let lo = &expected / rat(2, 1);
            let hi = (&expected + rat(n as i64, k as i64)) / rat(2, 1);
            let boundary = bisect_threshold(n, k, lo, hi)?;
            let err = (boundary - rational_to_f64(&expected)).abs();
            check(
                err <= 1e-6,
                format!("(n,k)=({n},{k}): boundary {boundary:.8} is {err:.2e} from n/(k(2k+1))"),
            )?;
            worst = worst.max(err);
        }
        Ok(format!("five thresholds, worst gap {worst:.2e}"))
    });
}

#[test]
fn criterion_03_optimal_pinching_of_quadratic_family() {
    criterion(3, Duration::from_secs(30), "local pinching 1/(2k+1)^2 at the optimal class", || {
        let mut worst: f64 = 0.0;
        for (n, k, tol, need) in [
            (2u32, 1u32, 1e-10, 1e-9),
            (3, 1, 1e-8, 1e-6),
            (3, 2, 1e-8, 1e-6),
            (5, 2, 1e-8, 1e-6),
            (7, 2, 1e-8, 1e-6),
        ] {
            let c = rat(n as i64, (4 * k * k + 3 * k) as i64);
            let profile = hitchin_profile(n, k, &c).map_err(|e| e.to_string())?;
            let rep = local_pinching(&profile, tol).map_err(|e| e.to_string())?;
            let expected = 1.0 / ((2 * k + 1) as f64).powi(2);
            let err = (rep.local_constant - expected).abs();
            check(
                err <= need,
                format!("(n,k)=({n},{k}): local {} is {err:.2e} from {expected}", rep.local_constant),
            )?;
            worst = worst.max(err);
        }
        Ok(format!("five optima, worst gap {worst:.2e}"))
    });
}

#[test]
fn criterion_04_construction_in_prescribed_classes() {
    criterion(4, Duration::from_secs(480), "certified construction at 0.9 n/k and 0.5 n/k", || {
        let mut degrees = vec![];
        for (n, k) in [(2u32, 1u32), (3, 1), (3, 2), (4, 3)] {
            for c in [rat(9 * n as i64, 10 * k as i64), rat(n as i64, 2 * k as i64)] {
                let run = Instant::now();
                let (profile, cert) =
                    construct_positive_profile(n, k, &c).map_err(|e| {
                        format!("(n,k)=({n},{k}), c={c}: {e}")
                    })?;
                let took = run.elapsed();
                check(
                    cert.is_positive() && cert.method == Method::ExactSturm,
                    format!("(n,k)=({n},{k}), c={c}: certificate not exact-positive"),
                )?;
                check(
                    took < Duration::from_secs(60),
                    format!("(n,k)=({n},{k}), c={c}: run took {took:.2?}"),
                )?;
                degrees.push(profile.phi.degree().unwrap_or(0));
            }
        }
        Ok(format!("eight constructions, degrees {degrees:?}"))
    });
}

#[test]
fn criterion_05_quartic_local_vs_global_pinching() {
    criterion(5, Duration::from_secs(10), "quartic family separates local from global pinching", || {
        let c = rat(1, 1);
        let mu = rat(501, 1000);
        let profile = quartic_profile(&c, &mu).map_err(|e| e.to_string())?;
        check(certify_positive(&profile).is_positive(), "expected positive".into())?;
        let rep = local_pinching(&profile, 1e-9).map_err(|e| e.to_string())?;
        // closed forms at mu: 4(2mu-1)/(4-mu) locally, (2mu-1)/(5-4mu) globally
        let muf = 0.501;
        let expect_local = 4.0 * (2.0 * muf - 1.0) / (4.0 - muf);
        let expect_global = (2.0 * muf - 1.0) / (5.0 - 4.0 * muf);
        let e1 = (rep.local_constant - expect_local).abs();
        let e2 = (rep.global_constant - expect_global).abs();
        check(e1 <= 1e-6, format!("local {} is {e1:.2e} from {expect_local}", rep.local_constant))?;
        check(e2 <= 1e-6, format!("global {} is {e2:.2e} from {expect_global}", rep.global_constant))?;
        check(
            (rep.local_constant - rep.global_constant).abs() > 1e-3,
            "local and global coincide".into(),
        )?;
        Ok(format!(
            "local {:.7} vs global {:.7}",
            rep.local_constant, rep.global_constant
        ))
    });
}

#[test]
fn criterion_06_soliton_alpha_regression() {
    criterion(6, Duration::from_secs(10), "soliton coefficients match regression values", || {
        for (n, k, expected, need) in [
            (2u32, 1u32, 0.5276195199, 1e-6),
            (3, 1, 0.6820161326, 1e-6),
            (7, 2, 1.742423694, 1e-5),
        ] {
            let alpha = compact_alpha(n, k, 1e-12).map_err(|e| e.to_string())?;
            let err = (alpha - expected).abs();
            check(err <= need, format!("(n,k)=({n},{k}): alpha {alpha:.10} is {err:.2e} off"))?;
        }
        let mut worst: f64 = 0.0;
        for (n, k) in [(2u32, 1u32), (3, 1)] {
            let closed = compact_alpha(n, k, 1e-12).map_err(|e| e.to_string())?;
            let shot = compact_alpha_shooting(n, k, 1e-9).map_err(|e| e.to_string())?;
            let gap = (closed - shot).abs();
            check(gap <= 1e-6, format!("(n,k)=({n},{k}): shooting gap {gap:.2e}"))?;
            worst = worst.max(gap);
        }
        Ok(format!("three regressions, shooting gap <= {worst:.2e}"))
    });
}

#[test]
fn criterion_07_soliton_curvature_verdicts() {
    criterion(7, Duration::from_secs(10), "soliton H verdicts and the (3,1) pinching value", || {
        let r21 = soliton_h_positive(2, 1, SolitonKind::Compact).map_err(|e| e.to_string())?;
        check(
            r21.certificate.verdict == Verdict::NotPositive,
            format!("(2,1) verdict {:?}", r21.certificate.verdict),
        )?;

        let r31 = soliton_h_positive(3, 1, SolitonKind::Compact).map_err(|e| e.to_string())?;
        check(r31.certificate.is_positive(), format!("(3,1) verdict {:?}", r31.certificate.verdict))?;
        let alpha = r31.alpha;
        let expected = (1.0 - alpha) / ((2.0 - alpha) * (5.0 - alpha));
        let local = r31
            .pinching
            .as_ref()
            .ok_or("(3,1) positive but no pinching report")?
            .local_constant;
        let err = (local - expected).abs();
        check(err <= 1e-3, format!("(3,1) pinching {local:.6} is {err:.2e} from {expected:.6}"))?;

        let r72 = soliton_h_positive(7, 2, SolitonKind::Compact).map_err(|e| e.to_string())?;
        check(r72.certificate.is_positive(), format!("(7,2) verdict {:?}", r72.certificate.verdict))?;
        Ok(format!("(3,1) pinching {local:.6} vs closed form {expected:.6}"))
    });
}

#[test]
fn criterion_08_alpha_window_sweep() {
    criterion(8, Duration::from_secs(60), "alpha sits in (alpha0, k+1) and above k on the sweep grid", || {
        let rows = conjecture_sweep(50, 10).map_err(|e| e.to_string())?;
        let mut proved_range = 0;
        for row in &rows {
            check(
                row.holds,
                format!("window fails at (n,k)=({},{}), alpha={}", row.n, row.k, row.alpha),
            )?;
            check(
                row.alpha_gt_k,
                format!("alpha <= k at (n,k)=({},{})", row.n, row.k),
            )?;
            if row.k <= 6 && row.n <= row.k * row.k + 2 * row.k {
                proved_range += 1;
            }
        }
        check(proved_range >= 90, format!("only {proved_range} rows in the k <= 6 range"))?;
        Ok(format!("{} rows checked, {proved_range} in the proved range", rows.len()))
    });
}

#[test]
fn criterion_09_pointwise_curvature_of_flag_and_hypersurfaces() {
    criterion(9, Duration::from_secs(60), "flag three-fold tensor, extrema, and induced checks", || {
        let flag = flag_tensor();
        for a in 0..3 {
            for b in 0..3 {
                let want = if a == b { 2.0 } else { 0.0 };
                let got = flag.ricci(a, b);
                check(
                    got == Complex64::new(want, 0.0),
                    format!("Ricci({a},{b}) = {got}"),
                )?;
            }
        }

        let ext = h_extrema(&flag, 20_000, 300, 42);
        check((ext.min - 0.5).abs() <= 1e-6, format!("min {}", ext.min))?;
        check((ext.max - 2.0).abs() <= 1e-6, format!("max {}", ext.max))?;

        let origin = [Complex64::zero(); 3];
        let induced = induced_curvature_at(2, 2, 1, &origin, 1e-3).map_err(|e| e.to_string())?;
        let mut worst: f64 = 0.0;
        for a in 0..3 {
            for b in 0..3 {
                for c in 0..3 {
                    for d in 0..3 {
                        let gap = (induced.get(a, b, c, d) - flag.get(a, b, c, d)).norm();
                        worst = worst.max(gap);
                    }
                }
            }
        }
        check(worst <= 1e-5, format!("worst induced component gap {worst:.2e}"))?;

        let quadric = induced_curvature_at(2, 2, 2, &origin, 1e-3).map_err(|e| e.to_string())?;
        let r1111 = quadric.get(0, 0, 0, 0);
        check(
            (r1111 - Complex64::new(-2.0, 0.0)).norm() <= 1e-5,
            format!("degree-2 first component {r1111}"),
        )?;

        let obm = orthogonal_bisectional_min(&flag, 4000, 42);
        check(obm <= -0.5 + 1e-6, format!("orthogonal bisectional min {obm}"))?;
        Ok(format!(
            "extrema ({:.6}, {:.6}), induced gap {worst:.1e}",
            ext.min, ext.max
        ))
    });
}

#[test]
fn criterion_10_intersection_ring_obstruction() {
    criterion(10, Duration::from_secs(10), "generic expansion equals closed form; witness iff p > r+1", || {
        let mut rng = common::seeded_rng(10);
        let mut cells = 0;
        for r in 2usize..=6 {
            for s in 2usize..=6 {
                for p in 1u32..=10 {
                    for _ in 0..3 {
                        let a = rat(rng.gen_range(1..=40), rng.gen_range(1..=8));
                        let b = rat(rng.gen_range(1..=40), rng.gen_range(1..=8));
                        let generic =
                            total_scalar_coefficient(r, s, p, &a, &b).map_err(|e| e.to_string())?;
                        let closed =
                            total_scalar_closed_form(r, s, p, &a, &b).map_err(|e| e.to_string())?;
                        check(
                            generic == closed,
                            format!("mismatch at (r,s,p)=({r},{s},{p}), a={a}, b={b}"),
                        )?;
                    }
                    let witness = negative_class_witness(r, s, p).map_err(|e| e.to_string())?;
                    check(
                        witness.is_some() == (p as usize > r + 1),
                        format!("witness rule fails at (r,s,p)=({r},{s},{p})"),
                    )?;
                    if let Some((a, b)) = witness {
                        let value =
                            total_scalar_coefficient(r, s, p, &a, &b).map_err(|e| e.to_string())?;
                        check(
                            value < Rational::zero(),
                            format!("witness at ({r},{s},{p}) gives nonnegative value"),
                        )?;
                    }
                    cells += 1;
                }
            }
        }
        Ok(format!("{cells} grid cells, three random classes each"))
    });
}

#[test]
fn criterion_11_certifier_matches_sampling_oracle() {
    criterion(11, Duration::from_secs(120), "exact certifier agrees with the dense float oracle", || {
        let (positives, negatives) = common::certifier_vs_dense_oracle(7, 100);
        check(
            positives + negatives == 100,
            format!("scored {}", positives + negatives),
        )?;
        Ok(format!("100 profiles, {positives} positive / {negatives} not, zero disagreements"))
    });
}

#[test]
fn criterion_12_path_between_families() {
    criterion(12, Duration::from_secs(120), "certified path from the quadratic to the quartic family", || {
        let from = hitchin_profile(2, 1, &rat(1, 4)).map_err(|e| e.to_string())?;
        let to = quartic_profile(&rat(1, 1), &rat(51, 100)).map_err(|e| e.to_string())?;
        let chain = path_between(&from, &to, 8).map_err(|e| e.to_string())?;
        check(chain.len() >= 8, format!("only {} steps", chain.len()))?;
        for (i, (_, cert)) in chain.iter().enumerate() {
            check(
                cert.is_positive() && cert.method == Method::ExactSturm,
                format!("step {i} is not exactly certified"),
            )?;
        }
        Ok(format!("{} exactly certified steps", chain.len()))
    });
}
