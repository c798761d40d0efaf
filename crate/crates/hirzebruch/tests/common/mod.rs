//! Helpers shared by the integration suites: a seeded generator of
//! admissible profiles and a float sampling oracle for the sectional
//! curvature quadratic. The oracle recomputes everything from the raw
//! polynomial with plain f64 arithmetic so that it shares no code with
//! the exact certification path it is checking.

#![allow(dead_code)]

use hirzebruch::exactpoly::{rat, rational_to_f64, Rational, RationalPoly};
use hirzebruch::profile::{validate_profile, GeneratingProfile};
use num_traits::One;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub fn seeded_rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

fn small_rat(rng: &mut ChaCha8Rng, num_range: i64, den_max: i64) -> Rational {
    let num = rng.gen_range(-num_range..=num_range);
    let den = rng.gen_range(1..=den_max);
    rat(num, den)
}

/// One admissible profile drawn at random, or None when the draw lands
/// outside the constraints. The construction starts from the parabola
/// through the boundary conditions (value 0, slopes +2/-2) and adds a
/// perturbation damped by the squared boundary factor, which leaves
/// values and slopes at the ends untouched:
///
///   phi = 2 (U - a)(b - U)/(b - a) + ((U - a)(U - b))^2 q(U)
///
/// with q random of degree <= max_q_degree, so deg phi <= 4 + deg q.
pub fn random_profile_draw(rng: &mut ChaCha8Rng, max_q_degree: usize) -> Option<GeneratingProfile> {
    let n: u32 = rng.gen_range(2..=5);
    let k: u32 = rng.gen_range(1..=(n - 1).min(3));

    // interval [a, b]: random width and center, kept inside s > 0
    let width = rat(rng.gen_range(2..=8), 4); // 1/2 ..= 2
    let center = small_rat(rng, 2, 4);
    let a = &center - &width / rat(2, 1);
    let b = &center + &width / rat(2, 1);
    if a <= rat(-(n as i64), k as i64) + rat(1, 4) {
        return None;
    }

    let base = RationalPoly::from_coeffs(vec![-&a * &b, &a + &b, -Rational::one()])
        .scale(&(rat(2, 1) / &width));
    let bump = RationalPoly::from_coeffs(vec![&a * &b, -(&a + &b), Rational::one()]);
    let bump2 = bump.mul(&bump);

    let mut q = RationalPoly::zero();
    for d in 0..=max_q_degree {
        let coeff = small_rat(rng, 2, 8) / rat(8, 1);
        q = q.add(&RationalPoly::monomial(coeff, d));
    }
    let phi = base.add(&bump2.mul(&q));

    let profile = GeneratingProfile::from_parts(n, k, a, b, phi);
    if validate_profile(&profile).ok {
        Some(profile)
    } else {
        None
    }
}

/// Draws until a profile validates. Panics after far too many misses so
/// a broken generator fails loudly instead of spinning.
pub fn random_profile(rng: &mut ChaCha8Rng, max_q_degree: usize) -> GeneratingProfile {
    for _ in 0..10_000 {
        if let Some(p) = random_profile_draw(rng, max_q_degree) {
            return p;
        }
    }
    panic!("profile generator failed 10000 consecutive draws");
}

/// Runs the exact certifier against the dense float oracle on `want`
/// random admissible profiles whose H range is decisively away from
/// zero, panicking on any disagreement. Returns the (positive,
/// not-positive) split of the scored profiles.
pub fn certifier_vs_dense_oracle(seed: u64, want: usize) -> (usize, usize) {
    use hirzebruch::curvature::{certify_positive, Verdict};

    let mut rng = seeded_rng(seed);
    let mut positives = 0;
    let mut negatives = 0;
    let mut scored = 0;
    let mut draws = 0;
    while scored < want {
        draws += 1;
        assert!(draws < 200_000, "generator starved: {scored} of {want}");
        let Some(profile) = random_profile_draw(&mut rng, 4) else {
            continue;
        };
        let (min_h, _) = dense_h_range(&profile, 2000);
        if min_h.abs() <= 1e-6 {
            continue; // borderline draw: both methods would be at noise level
        }
        let cert = certify_positive(&profile);
        assert_ne!(
            cert.verdict,
            Verdict::Inconclusive,
            "exact certification must decide rational profiles"
        );
        let oracle_positive = min_h > 0.0;
        assert_eq!(
            cert.is_positive(),
            oracle_positive,
            "disagreement on profile {:?} (oracle min {min_h:e})",
            profile
        );
        if oracle_positive {
            positives += 1;
        } else {
            negatives += 1;
        }
        scored += 1;
    }
    (positives, negatives)
}

fn horner(c: &[f64], x: f64) -> f64 {
    c.iter().rev().fold(0.0, |acc, v| acc * x + v)
}

fn deriv(c: &[f64]) -> Vec<f64> {
    c.iter()
        .enumerate()
        .skip(1)
        .map(|(i, v)| v * i as f64)
        .collect()
}

/// min and max over t in [0, 1] of the curvature quadratic
/// (A + C - 4B) t^2 + (4B - 2C) t + C, straight from the definition.
fn quad_range(a: f64, b: f64, c: f64) -> (f64, f64) {
    let q2 = a + c - 4.0 * b;
    let q1 = 4.0 * b - 2.0 * c;
    let mut lo = c.min(a); // t = 0 gives C, t = 1 gives A
    let mut hi = c.max(a);
    if q2.abs() > 0.0 {
        let t = -q1 / (2.0 * q2);
        if t > 0.0 && t < 1.0 {
            let v = (q2 * t + q1) * t + c;
            lo = lo.min(v);
            hi = hi.max(v);
        }
    }
    (lo, hi)
}

/// Sampling oracle: the range of H over a dense u-grid, refined around
/// the worst cells by interval subdivision. Returns (min, max).
pub fn dense_h_range(profile: &GeneratingProfile, u_samples: usize) -> (f64, f64) {
    let c0: Vec<f64> = profile.phi.coeffs().iter().map(rational_to_f64).collect();
    let c1 = deriv(&c0);
    let c2 = deriv(&c1);
    let n = profile.n as f64;
    let k = profile.k as f64;
    let lo_u = rational_to_f64(&profile.u_min);
    let hi_u = rational_to_f64(&profile.u_max);

    let range_at = |u: f64| {
        let s = n + k * u;
        let phi = horner(&c0, u);
        let dphi = horner(&c1, u);
        let ddphi = horner(&c2, u);
        let a = -ddphi / 2.0;
        let b = (k * k * phi - k * s * dphi) / (2.0 * s * s);
        let c = (2.0 * s - k * k * phi) / (s * s);
        quad_range(a, b, c)
    };

    let mut min = f64::INFINITY;
    let mut max = f64::NEG_INFINITY;
    let mut argmin = lo_u;
    let mut argmax = lo_u;
    for i in 0..=u_samples {
        let u = lo_u + (hi_u - lo_u) * (i as f64) / (u_samples as f64);
        let (l, h) = range_at(u);
        if l < min {
            min = l;
            argmin = u;
        }
        if h > max {
            max = h;
            argmax = u;
        }
    }

    // refine each extremum inside its bracketing cell
    let du = (hi_u - lo_u) / (u_samples as f64);
    let refine = |mut lo: f64, mut hi: f64, want_min: bool| {
        let val = |u: f64| {
            let (l, h) = range_at(u);
            if want_min {
                l
            } else {
                -h
            }
        };
        for _ in 0..80 {
            let m1 = lo + (hi - lo) / 3.0;
            let m2 = hi - (hi - lo) / 3.0;
            if val(m1) < val(m2) {
                hi = m2;
            } else {
                lo = m1;
            }
        }
        val((lo + hi) / 2.0)
    };
    min = min.min(refine(
        (argmin - du).max(lo_u),
        (argmin + du).min(hi_u),
        true,
    ));
    max = max.max(-refine(
        (argmax - du).max(lo_u),
        (argmax + du).min(hi_u),
        false,
    ));
    (min, max)
}
