//! Curvature data of a generating profile and everything built on it:
//! the A/B/C components, holomorphic sectional curvature over directions,
//! exact positivity certification, numeric certification for
//! transcendental profiles, and pinching constants.
//!
//! For a profile phi on [u_min, u_max] with s = n + kU:
//!   A = -phi''/2,  B = (k^2 phi - k s phi') / (2 s^2),  C = (2s - k^2 phi) / s^2.
//! H along a unit direction with squared fiber component t in [0,1] is
//!   H(t) = (A + C - 4B) t^2 + (4B - 2C) t + C.
//! H > 0 on the manifold iff A > 0, C > 0, and T = P + s^2 sqrt(AC) > 0,
//! where P = 2 s^2 B is polynomial. T > 0 fails at u iff P(u) <= 0 and
//! W(u) <= 0 with W = s^2 a c - P^2 (a = A, c = C s^2 both polynomial),
//! which is what the exact pipeline decides with Sturm chains.

use crate::exactpoly::{
    format_rational, isolate_roots, rat, rational_to_f64, sign_on_interval,
    simplest_rational_between, Rational, RationalPoly, SignKind,
};
use crate::profile::GeneratingProfile;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};
use std::cmp::Ordering;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum CurvatureError {
    #[error("u = {0} lies outside the profile domain")]
    OutsideDomain(String),
    #[error("profile is not certified positive; {0}")]
    NotPositive(String),
}

/// Exact numerators of the curvature components. A is a_num itself;
/// B = b_num / (2 s^2) and C = c_num / s^2 with s = n + kU.
#[derive(Debug, Clone)]
pub struct CurvatureTriple {
    pub n: u32,
    pub k: u32,
    pub u_min: Rational,
    pub u_max: Rational,
    pub a_num: RationalPoly,
    pub b_num: RationalPoly,
    pub c_num: RationalPoly,
}

/// s = n + kU as a polynomial.
fn s_poly(n: u32, k: u32) -> RationalPoly {
    RationalPoly::from_coeffs(vec![rat(n as i64, 1), rat(k as i64, 1)])
}

pub fn curvature_triple(profile: &GeneratingProfile) -> CurvatureTriple {
    let n = profile.n;
    let k = profile.k;
    let s = s_poly(n, k);
    let phi = &profile.phi;
    let dphi = phi.derivative();
    let ddphi = dphi.derivative();
    let k2 = rat((k as i64) * (k as i64), 1);

    let a_num = ddphi.scale(&rat(-1, 2));
    let b_num = phi.scale(&k2).sub(&s.mul(&dphi).scale(&rat(k as i64, 1)));
    let c_num = s.scale(&rat(2, 1)).sub(&phi.scale(&k2));

    CurvatureTriple {
        n,
        k,
        u_min: profile.u_min.clone(),
        u_max: profile.u_max.clone(),
        a_num,
        b_num,
        c_num,
    }
}

impl CurvatureTriple {
    pub fn contains(&self, u: &Rational) -> bool {
        &self.u_min <= u && u <= &self.u_max
    }

    fn s_at(&self, u: &Rational) -> Rational {
        rat(self.n as i64, 1) + rat(self.k as i64, 1) * u
    }

    /// Exact (A, B, C) at a rational point of the domain.
    pub fn abc_at(&self, u: &Rational) -> Result<(Rational, Rational, Rational), CurvatureError> {
        if !self.contains(u) {
            return Err(CurvatureError::OutsideDomain(format_rational(u)));
        }
        let s2 = {
            let s = self.s_at(u);
            &s * &s
        };
        let a = self.a_num.eval(u);
        let b = self.b_num.eval(u) / (&s2 * rat(2, 1));
        let c = self.c_num.eval(u) / s2;
        Ok((a, b, c))
    }

    /// Floating (A, B, C) for numeric sweeps; u is clamped to the domain
    /// by the callers that iterate grids.
    pub fn abc_f64(&self, u: f64) -> (f64, f64, f64) {
        let s = self.n as f64 + self.k as f64 * u;
        let s2 = s * s;
        let a = self.a_num.eval_f64(u);
        let b = self.b_num.eval_f64(u) / (2.0 * s2);
        let c = self.c_num.eval_f64(u) / s2;
        (a, b, c)
    }
}

/// H(t) = (A+C-4B) t^2 + (4B-2C) t + C for t in [0,1].
pub fn h_value(triple: &CurvatureTriple, u: &Rational, t: f64) -> Result<f64, CurvatureError> {
    let (a, b, c) = triple.abc_at(u)?;
    let (a, b, c) = (rational_to_f64(&a), rational_to_f64(&b), rational_to_f64(&c));
    Ok(h_of_t(a, b, c, t))
}

pub(crate) fn h_of_t(a: f64, b: f64, c: f64, t: f64) -> f64 {
    (a + c - 4.0 * b) * t * t + (4.0 * b - 2.0 * c) * t + c
}

/// Exact extrema of the direction quadratic at a point.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HExtrema {
    pub min: Rational,
    pub max: Rational,
    pub argmin_t: Rational,
    pub argmax_t: Rational,
}

pub fn h_extrema_at(triple: &CurvatureTriple, u: &Rational) -> Result<HExtrema, CurvatureError> {
    let (a, b, c) = triple.abc_at(u)?;
    Ok(quadratic_extrema(&a, &b, &c))
}

/// Extremes of H(t) on [0,1] given exact A, B, C. H(1) = A, H(0) = C;
/// an interior stationary point exists at t* = (C-2B)/(A+C-4B) when the
/// quadratic coefficient is nonzero, a minimum for A+C-4B > 0 and a
/// maximum for A+C-4B < 0, with value (AC-4B^2)/(A+C-4B).
pub(crate) fn quadratic_extrema(a: &Rational, b: &Rational, c: &Rational) -> HExtrema {
    let q2 = a + c - rat(4, 1) * b;
    let zero = Rational::zero();
    let one = Rational::one();

    let (end_min, end_argmin) = if a < c {
        (a.clone(), one.clone())
    } else {
        (c.clone(), zero.clone())
    };
    let (end_max, end_argmax) = if a > c {
        (a.clone(), one.clone())
    } else {
        (c.clone(), zero.clone())
    };

    if q2.is_zero() {
        return HExtrema {
            min: end_min,
            max: end_max,
            argmin_t: end_argmin,
            argmax_t: end_argmax,
        };
    }

    let t_star = (c - rat(2, 1) * b) / &q2;
    let interior = t_star > zero && t_star < one;
    let station_val = if interior {
        Some((a * c - rat(4, 1) * b * b) / &q2)
    } else {
        None
    };

    if q2 > zero {
        if let Some(v) = station_val {
            return HExtrema {
                min: v,
                max: end_max,
                argmin_t: t_star,
                argmax_t: end_argmax,
            };
        }
    } else if let Some(v) = station_val {
        return HExtrema {
            min: end_min,
            max: v,
            argmin_t: end_argmin,
            argmax_t: t_star,
        };
    }
    HExtrema {
        min: end_min,
        max: end_max,
        argmin_t: end_argmin,
        argmax_t: end_argmax,
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Verdict {
    Positive,
    NotPositive,
    Inconclusive,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Method {
    ExactSturm,
    NumericSampling,
}

/// One certified subinterval and the sign facts proven on it.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct CertPiece {
    pub interval: [String; 2],
    pub facts: Vec<String>,
}

/// A point (u, t) with the H value there; exact certificates carry exact
/// rational strings, numeric ones carry floats rendered the same way.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct HWitness {
    pub u: String,
    pub t: String,
    pub h: String,
}

/// Outcome of H>0 certification. With method exact-sturm and verdict
/// positive, the pieces cover [u_min, u_max] and every fact is an exact
/// Sturm sign certificate. With verdict not-positive the witness marks a
/// direction with H <= 0 (exact when the failure point is rational).
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct PositivityCertificate {
    pub verdict: Verdict,
    pub method: Method,
    pub pieces: Vec<CertPiece>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<HWitness>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub margin: Option<f64>,
}

impl PositivityCertificate {
    pub fn is_positive(&self) -> bool {
        self.verdict == Verdict::Positive
    }

    fn not_positive_exact(witness: HWitness) -> Self {
        PositivityCertificate {
            verdict: Verdict::NotPositive,
            method: Method::ExactSturm,
            pieces: vec![],
            witness: Some(witness),
            margin: None,
        }
    }
}

/// Exact witness assembly: at a rational u in the domain, pick the H
/// minimizing direction and report the exact value there.
fn witness_at(triple: &CurvatureTriple, u: &Rational) -> HWitness {
    let ext = h_extrema_at(triple, u).expect("witness point inside domain");
    HWitness {
        u: format_rational(u),
        t: format_rational(&ext.argmin_t),
        h: format_rational(&ext.min),
    }
}

/// Finds a rational point of [lo, hi] where p <= 0, exactly. Returns
/// None when p >= 0 everywhere with only irrational touching zeros.
fn find_nonpositive_point(p: &RationalPoly, lo: &Rational, hi: &Rational) -> Option<Rational> {
    let zero = Rational::zero();
    for cand in [lo, hi] {
        if p.eval(cand) <= zero {
            return Some(cand.clone());
        }
    }
    let verdict = sign_on_interval(p, lo, hi).ok()?;
    match verdict.kind {
        SignKind::StrictlyPositive => None,
        SignKind::StrictlyNegative => Some((lo + hi) / rat(2, 1)),
        SignKind::HasZero | SignKind::MixedSign => {
            if let Some(w) = &verdict.witness {
                if p.eval(w) <= zero {
                    return Some(w.clone());
                }
            }
            // walk the isolated roots; recover exact rational roots and
            // sample between intervals for a negative region
            let intervals = isolate_roots(p, lo, hi, None).ok()?;
            for (a, b) in &intervals {
                let cand = if a == b {
                    a.clone()
                } else {
                    simplest_rational_between(a, b)
                };
                if p.eval(&cand) <= zero {
                    return Some(cand);
                }
            }
            let mut samples = vec![];
            for w in intervals.windows(2) {
                samples.push((&w[0].1 + &w[1].0) / rat(2, 1));
            }
            samples.into_iter().find(|s| p.eval(s) <= zero)
        }
    }
}

/// The exact positivity pipeline. A > 0 and C > 0 are certified on the
/// whole interval; the sign of P = b_num splits the interval into pieces
/// and W = s^2 a_num c_num - P^2 is certified positive wherever P <= 0
/// can occur. Root-isolation margins are refined a few rounds before a
/// W failure is treated as genuine.
pub fn certify_positive(profile: &GeneratingProfile) -> PositivityCertificate {
    let triple = curvature_triple(profile);
    let (lo, hi) = (triple.u_min.clone(), triple.u_max.clone());
    let base_facts = ["A>0".to_string(), "C>0".to_string()];

    for (poly, _label) in [(&triple.a_num, "A"), (&triple.c_num, "C")] {
        let ok = matches!(
            sign_on_interval(poly, &lo, &hi).map(|v| v.kind),
            Ok(SignKind::StrictlyPositive)
        );
        if !ok {
            let u0 = find_nonpositive_point(poly, &lo, &hi)
                .unwrap_or_else(|| (&lo + &hi) / rat(2, 1));
            return PositivityCertificate::not_positive_exact(witness_at(&triple, &u0));
        }
    }

    let s = s_poly(triple.n, triple.k);
    let s2 = s.mul(&s);
    let p_poly = triple.b_num.clone();
    let w_poly = s2
        .mul(&triple.a_num)
        .mul(&triple.c_num)
        .sub(&p_poly.mul(&p_poly));

    if p_poly.is_zero() {
        return match sign_on_interval(&w_poly, &lo, &hi).map(|v| v.kind) {
            Ok(SignKind::StrictlyPositive) => PositivityCertificate {
                verdict: Verdict::Positive,
                method: Method::ExactSturm,
                pieces: vec![CertPiece {
                    interval: [format_rational(&lo), format_rational(&hi)],
                    facts: base_facts.iter().cloned().chain(["W>0".to_string()]).collect(),
                }],
                witness: None,
                margin: None,
            },
            _ => {
                let u0 = find_nonpositive_point(&w_poly, &lo, &hi)
                    .unwrap_or_else(|| (&lo + &hi) / rat(2, 1));
                PositivityCertificate::not_positive_exact(witness_at(&triple, &u0))
            }
        };
    }

    // segment layout driven by the roots of P, refined when a W check
    // fails only because an isolating margin strays into P > 0 land
    let width = &hi - &lo;
    let mut precision = &width / Rational::from(num_bigint::BigInt::one() << 40);
    for _round in 0..6 {
        match try_certify_pieces(&p_poly, &w_poly, &lo, &hi, &precision, &base_facts) {
            PieceOutcome::Certified(pieces) => {
                return PositivityCertificate {
                    verdict: Verdict::Positive,
                    method: Method::ExactSturm,
                    pieces,
                    witness: None,
                    margin: None,
                }
            }
            PieceOutcome::NeedsRefinement => {
                precision = precision / Rational::from(num_bigint::BigInt::one() << 10);
            }
            PieceOutcome::Failed => break,
        }
    }

    // genuine failure: find u with P <= 0 and W <= 0, preferring an
    // exact rational point
    let witness_u = failure_point(&p_poly, &w_poly, &lo, &hi);
    PositivityCertificate::not_positive_exact(witness_at(&triple, &witness_u))
}

enum PieceOutcome {
    Certified(Vec<CertPiece>),
    NeedsRefinement,
    Failed,
}

/// One attempt at the piece decomposition at a given root-isolation
/// precision.
fn try_certify_pieces(
    p_poly: &RationalPoly,
    w_poly: &RationalPoly,
    lo: &Rational,
    hi: &Rational,
    precision: &Rational,
    base_facts: &[String; 2],
) -> PieceOutcome {
    let roots = match isolate_roots(p_poly, lo, hi, Some(precision)) {
        Ok(r) => r,
        Err(_) => return PieceOutcome::Failed,
    };

    // cut the interval at isolating-interval ends; classify each segment
    let mut cuts: Vec<Rational> = vec![lo.clone()];
    for (a, b) in &roots {
        cuts.push(a.clone());
        cuts.push(b.clone());
    }
    cuts.push(hi.clone());
    cuts.sort();
    cuts.dedup();

    #[derive(PartialEq, Clone, Copy)]
    enum Seg {
        PosGap,
        Suspect, // negative gap or root-isolating span: P <= 0 possible
    }
    let mut segments: Vec<(Rational, Rational, Seg)> = vec![];
    for w in cuts.windows(2) {
        let (a, b) = (&w[0], &w[1]);
        let is_root_span = roots.iter().any(|(ra, rb)| ra == a && rb == b && ra < rb);
        if is_root_span {
            segments.push((a.clone(), b.clone(), Seg::Suspect));
            continue;
        }
        let mid = (a + b) / rat(2, 1);
        let sign = p_poly.eval(&mid);
        if sign > Rational::zero() {
            segments.push((a.clone(), b.clone(), Seg::PosGap));
        } else {
            segments.push((a.clone(), b.clone(), Seg::Suspect));
        }
    }

    let mut pieces: Vec<CertPiece> = vec![];
    let zero = Rational::zero();

    // exact point roots of P are safe iff W > 0 there; record them as
    // degenerate pieces
    for (a, b) in &roots {
        if a == b {
            if w_poly.eval(a) <= zero {
                return PieceOutcome::Failed;
            }
            pieces.push(CertPiece {
                interval: [format_rational(a), format_rational(a)],
                facts: base_facts.iter().cloned().chain(["W>0".to_string()]).collect(),
            });
        }
    }

    // merge consecutive suspect segments into maximal runs
    let mut i = 0;
    while i < segments.len() {
        let (a, _, kind) = segments[i].clone();
        if kind == Seg::PosGap {
            let b = segments[i].1.clone();
            match sign_on_interval(p_poly, &a, &b).map(|v| v.kind) {
                Ok(SignKind::StrictlyPositive) => {}
                Ok(SignKind::HasZero) => {
                    // zeros can only sit at cut endpoints that are exact
                    // point roots, already covered by their own piece
                    if !(p_poly.eval(&a).is_zero() || p_poly.eval(&b).is_zero()) {
                        return PieceOutcome::NeedsRefinement;
                    }
                }
                _ => return PieceOutcome::NeedsRefinement,
            }
            pieces.push(CertPiece {
                interval: [format_rational(&a), format_rational(&b)],
                facts: base_facts.iter().cloned().chain(["P>0".to_string()]).collect(),
            });
            i += 1;
            continue;
        }
        let mut b = segments[i].1.clone();
        let mut j = i + 1;
        while j < segments.len() && segments[j].2 == Seg::Suspect {
            b = segments[j].1.clone();
            j += 1;
        }
        match sign_on_interval(w_poly, &a, &b).map(|v| v.kind) {
            Ok(SignKind::StrictlyPositive) => {
                pieces.push(CertPiece {
                    interval: [format_rational(&a), format_rational(&b)],
                    facts: base_facts.iter().cloned().chain(["W>0".to_string()]).collect(),
                });
            }
            _ => {
                // does W actually fail inside certified P <= 0 land, or
                // only in the isolating margin? decide after refinement
                return if find_failure_in_run(p_poly, w_poly, &a, &b).is_some() {
                    PieceOutcome::Failed
                } else {
                    PieceOutcome::NeedsRefinement
                };
            }
        }
        i = j;
    }

    PieceOutcome::Certified(pieces)
}

/// Looks for an exact rational u in [a, b] with P(u) <= 0 and W(u) <= 0.
fn find_failure_in_run(
    p_poly: &RationalPoly,
    w_poly: &RationalPoly,
    a: &Rational,
    b: &Rational,
) -> Option<Rational> {
    let zero = Rational::zero();
    let both_nonpos = |u: &Rational| p_poly.eval(u) <= zero && w_poly.eval(u) <= zero;
    for cand in [a, b] {
        if both_nonpos(cand) {
            return Some(cand.clone());
        }
    }
    // sample, then descend around W's roots in the run
    let n_samples = 64;
    for i in 1..n_samples {
        let u = a + (b - a) * rat(i, 1) / rat(n_samples, 1);
        if both_nonpos(&u) {
            return Some(u);
        }
    }
    if let Ok(roots) = isolate_roots(w_poly, a, b, None) {
        for (ra, rb) in roots {
            let cand = if ra == rb {
                ra.clone()
            } else {
                simplest_rational_between(&ra, &rb)
            };
            if both_nonpos(&cand) {
                return Some(cand);
            }
            for c in [&ra, &rb] {
                if both_nonpos(c) {
                    return Some(c.clone());
                }
            }
        }
    }
    None
}

/// Best-effort exact failure point for the not-positive verdict.
fn failure_point(
    p_poly: &RationalPoly,
    w_poly: &RationalPoly,
    lo: &Rational,
    hi: &Rational,
) -> Rational {
    if let Some(u) = find_failure_in_run(p_poly, w_poly, lo, hi) {
        return u;
    }
    // fall back to the location of W's worst touching zero inside the
    // P <= 0 region; H there is zero in the limit
    if let Ok(roots) = isolate_roots(w_poly, lo, hi, None) {
        for (ra, rb) in roots {
            let mid = (&ra + &rb) / rat(2, 1);
            if p_poly.eval(&mid) <= Rational::zero() {
                return mid;
            }
        }
    }
    (lo + hi) / rat(2, 1)
}

/// Profile evaluators for the numeric certification pathway
/// (transcendental soliton profiles, cross-checks of exact results).
pub trait ProfileEvaluator {
    fn phi(&self, u: f64) -> f64;
    fn dphi(&self, u: f64) -> f64;
    fn ddphi(&self, u: f64) -> f64;
}

/// Numeric (A, B, C) from an evaluator at a point.
pub fn abc_numeric(eval: &dyn ProfileEvaluator, n: u32, k: u32, u: f64) -> (f64, f64, f64) {
    let s = n as f64 + k as f64 * u;
    let s2 = s * s;
    let kf = k as f64;
    let a = -eval.ddphi(u) / 2.0;
    let b = (kf * kf * eval.phi(u) - kf * s * eval.dphi(u)) / (2.0 * s2);
    let c = (2.0 * s - kf * kf * eval.phi(u)) / s2;
    (a, b, c)
}

/// Numeric H>0 verdict on a sampled grid. The margin rule is
/// conservative: positive only when every sampled A, C, and
/// T = P + s^2 sqrt(AC) clears four times the per-cell variation
/// estimate; a sample below the negative of that band is a confident
/// witness; anything in between is inconclusive.
pub fn certify_positive_numeric(
    eval: &dyn ProfileEvaluator,
    n: u32,
    k: u32,
    domain: (f64, f64),
    samples: usize,
) -> PositivityCertificate {
    let samples = samples.max(16);
    let (lo, hi) = domain;
    let mut us: Vec<f64> = (0..samples)
        .map(|i| lo + (hi - lo) * i as f64 / (samples - 1) as f64)
        .collect();

    let values = |u: f64| -> (f64, f64, f64) {
        let (a, b, c) = abc_numeric(eval, n, k, u);
        let s = n as f64 + k as f64 * u;
        let s2 = s * s;
        let p = 2.0 * s2 * b;
        let t = if a > 0.0 && c > 0.0 {
            p + s2 * (a * c).sqrt()
        } else {
            // T is meaningless when A or C dies; report the worse of them
            a.min(c)
        };
        (a, c, t)
    };

    // adaptive refinement: split cells whose |T| is small relative to
    // the local variation, a few passes
    for _pass in 0..3 {
        let vals: Vec<(f64, f64, f64)> = us.iter().map(|&u| values(u)).collect();
        let mut refined = Vec::with_capacity(us.len() * 2);
        let mut any = false;
        for i in 0..us.len() - 1 {
            refined.push(us[i]);
            let var = (vals[i + 1].2 - vals[i].2).abs()
                + (vals[i + 1].0 - vals[i].0).abs()
                + (vals[i + 1].1 - vals[i].1).abs();
            let worst = vals[i].2.min(vals[i + 1].2).min(vals[i].0.min(vals[i].1));
            if worst < 2.0 * var {
                for j in 1..8 {
                    refined.push(us[i] + (us[i + 1] - us[i]) * j as f64 / 8.0);
                    any = true;
                }
            }
        }
        refined.push(*us.last().unwrap());
        us = refined;
        if !any {
            break;
        }
    }

    let vals: Vec<(f64, f64, f64)> = us.iter().map(|&u| values(u)).collect();
    let mut min_val = f64::INFINITY;
    let mut min_idx = 0;
    let mut max_step_var = 0.0_f64;
    for i in 0..us.len() {
        let worst = vals[i].0.min(vals[i].1).min(vals[i].2);
        if worst < min_val {
            min_val = worst;
            min_idx = i;
        }
        if i + 1 < us.len() {
            for f in [
                (vals[i + 1].0 - vals[i].0).abs(),
                (vals[i + 1].1 - vals[i].1).abs(),
                (vals[i + 1].2 - vals[i].2).abs(),
            ] {
                max_step_var = max_step_var.max(f);
            }
        }
    }

    let band = 4.0 * max_step_var.max(1e-12);
    let u_worst = us[min_idx];
    let (a, b, c) = abc_numeric(eval, n, k, u_worst);
    let (h_min, t_min) = numeric_h_min(a, b, c);
    let witness = HWitness {
        u: format!("{u_worst}"),
        t: format!("{t_min}"),
        h: format!("{h_min}"),
    };
    let piece = CertPiece {
        interval: [format!("{lo}"), format!("{hi}")],
        facts: vec!["A>0".into(), "C>0".into(), "T>0".into()],
    };

    if min_val > band {
        PositivityCertificate {
            verdict: Verdict::Positive,
            method: Method::NumericSampling,
            pieces: vec![piece],
            witness: None,
            margin: Some(min_val),
        }
    } else if min_val < -band.max(1e-9) {
        PositivityCertificate {
            verdict: Verdict::NotPositive,
            method: Method::NumericSampling,
            pieces: vec![],
            witness: Some(witness),
            margin: Some(min_val),
        }
    } else {
        PositivityCertificate {
            verdict: Verdict::Inconclusive,
            method: Method::NumericSampling,
            pieces: vec![],
            witness: Some(witness),
            margin: Some(min_val),
        }
    }
}

/// Float minimum of the direction quadratic on [0,1] with its argmin.
pub(crate) fn numeric_h_min(a: f64, b: f64, c: f64) -> (f64, f64) {
    let q2 = a + c - 4.0 * b;
    if q2 > 0.0 {
        let t_star = (c - 2.0 * b) / q2;
        if 0.0 < t_star && t_star < 1.0 {
            return ((a * c - 4.0 * b * b) / q2, t_star);
        }
    }
    if a < c {
        (a, 1.0)
    } else {
        (c, 0.0)
    }
}

pub(crate) fn numeric_h_max(a: f64, b: f64, c: f64) -> (f64, f64) {
    let q2 = a + c - 4.0 * b;
    if q2 < 0.0 {
        let t_star = (c - 2.0 * b) / q2;
        if 0.0 < t_star && t_star < 1.0 {
            return ((a * c - 4.0 * b * b) / q2, t_star);
        }
    }
    if a > c {
        (a, 1.0)
    } else {
        (c, 0.0)
    }
}

#[derive(Debug, Clone, Copy, Serialize, Deserialize)]
pub struct HPoint {
    pub u: f64,
    pub t: f64,
    pub value: f64,
}

/// Local and global pinching data of a certified-positive metric.
/// Local: min over u of min_t H / max_t H at the same u. Global: min of
/// H over (u, t) divided by its max. Always 0 < global <= local <= 1.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct PinchingReport {
    pub local_constant: f64,
    pub global_constant: f64,
    pub local_argmin_u: f64,
    pub global_min: HPoint,
    pub global_max: HPoint,
    pub tolerance: f64,
}

const PINCH_GRID: usize = 1024;

/// Grid + golden-section minimizer for piecewise-smooth objectives;
/// returns (argmin, min).
fn grid_golden_min(f: &dyn Fn(f64) -> f64, lo: f64, hi: f64, tol: f64) -> (f64, f64) {
    let n = PINCH_GRID;
    let mut best = (lo, f(lo));
    let xs: Vec<f64> = (0..=n)
        .map(|i| lo + (hi - lo) * i as f64 / n as f64)
        .collect();
    let ys: Vec<f64> = xs.iter().map(|&x| f(x)).collect();
    let mut candidates: Vec<usize> = vec![];
    for i in 0..=n {
        if ys[i] < best.1 {
            best = (xs[i], ys[i]);
        }
        let left_ok = i == 0 || ys[i] <= ys[i - 1];
        let right_ok = i == n || ys[i] <= ys[i + 1];
        if left_ok && right_ok {
            candidates.push(i);
        }
    }
    let width_tol = (tol.max(1e-15) * (hi - lo)).max(f64::EPSILON * (hi - lo).abs());
    let inv_phi = 0.618_033_988_749_894_9_f64;
    for idx in candidates {
        let mut a = if idx == 0 { lo } else { xs[idx - 1] };
        let mut b = if idx == n { hi } else { xs[idx + 1] };
        let mut c = b - inv_phi * (b - a);
        let mut d = a + inv_phi * (b - a);
        let mut fc = f(c);
        let mut fd = f(d);
        while (b - a) > width_tol {
            if fc < fd {
                b = d;
                d = c;
                fd = fc;
                c = b - inv_phi * (b - a);
                fc = f(c);
            } else {
                a = c;
                c = d;
                fc = fd;
                d = a + inv_phi * (b - a);
                fd = f(d);
            }
        }
        let m = (a + b) / 2.0;
        let fm = f(m);
        if fm < best.1 {
            best = (m, fm);
        }
    }
    best
}

/// Shared pinching engine over numeric (A, B, C) evaluators.
pub(crate) fn pinching_from_abc(
    abc: &dyn Fn(f64) -> (f64, f64, f64),
    lo: f64,
    hi: f64,
    tol: f64,
) -> PinchingReport {
    let ratio = |u: f64| {
        let (a, b, c) = abc(u);
        let (mn, _) = numeric_h_min(a, b, c);
        let (mx, _) = numeric_h_max(a, b, c);
        mn / mx
    };
    let min_h = |u: f64| numeric_h_min(abc(u).0, abc(u).1, abc(u).2).0;
    let neg_max_h = |u: f64| -numeric_h_max(abc(u).0, abc(u).1, abc(u).2).0;

    let (arg_local, local) = grid_golden_min(&ratio, lo, hi, tol);
    let (arg_gmin, gmin) = grid_golden_min(&min_h, lo, hi, tol);
    let (arg_gmax, neg_gmax) = grid_golden_min(&neg_max_h, lo, hi, tol);
    let gmax = -neg_gmax;

    let (a, b, c) = abc(arg_gmin);
    let (_, t_min) = numeric_h_min(a, b, c);
    let (a, b, c) = abc(arg_gmax);
    let (_, t_max) = numeric_h_max(a, b, c);

    PinchingReport {
        local_constant: local,
        global_constant: gmin / gmax,
        local_argmin_u: arg_local,
        global_min: HPoint {
            u: arg_gmin,
            t: t_min,
            value: gmin,
        },
        global_max: HPoint {
            u: arg_gmax,
            t: t_max,
            value: gmax,
        },
        tolerance: tol,
    }
}

/// Local pinching constant of a certified-positive profile.
pub fn local_pinching(
    profile: &GeneratingProfile,
    tol: f64,
) -> Result<PinchingReport, CurvatureError> {
    pinching_with_certificate(profile, tol).map(|(r, _)| r)
}

/// Global pinching constant of a certified-positive profile (the report
/// carries both constants; this entry point exists for symmetry).
pub fn global_pinching(
    profile: &GeneratingProfile,
    tol: f64,
) -> Result<PinchingReport, CurvatureError> {
    pinching_with_certificate(profile, tol).map(|(r, _)| r)
}

/// Certifies first, then measures. Exposed so callers can keep the
/// certificate alongside the report.
pub fn pinching_with_certificate(
    profile: &GeneratingProfile,
    tol: f64,
) -> Result<(PinchingReport, PositivityCertificate), CurvatureError> {
    let cert = certify_positive(profile);
    if !cert.is_positive() {
        return Err(CurvatureError::NotPositive(format!(
            "verdict {:?}",
            cert.verdict
        )));
    }
    let triple = curvature_triple(profile);
    let lo = rational_to_f64(&profile.u_min);
    let hi = rational_to_f64(&profile.u_max);
    let abc = |u: f64| triple.abc_f64(u.clamp(lo, hi));
    Ok((pinching_from_abc(&abc, lo, hi, tol), cert))
}

/// Exact evaluation hook used by tests and witnesses: H at (u, t) with
/// everything rational.
pub fn h_value_exact(
    triple: &CurvatureTriple,
    u: &Rational,
    t: &Rational,
) -> Result<Rational, CurvatureError> {
    let (a, b, c) = triple.abc_at(u)?;
    let q2 = &a + &c - rat(4, 1) * &b;
    let q1 = rat(4, 1) * &b - rat(2, 1) * &c;
    Ok(q2 * t * t + q1 * t + c)
}

/// Convenience: certificate witness checked exactly, used in tests.
pub fn witness_h_is_nonpositive(profile: &GeneratingProfile, cert: &PositivityCertificate) -> bool {
    let triple = curvature_triple(profile);
    let Some(w) = &cert.witness else {
        return false;
    };
    let (Ok(u), Ok(t)) = (
        crate::exactpoly::parse_rational(&w.u),
        crate::exactpoly::parse_rational(&w.t),
    ) else {
        return false;
    };
    match h_value_exact(&triple, &u, &t) {
        Ok(h) => h.cmp(&Rational::zero()) != Ordering::Greater,
        Err(_) => false,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::profile::{hitchin_profile, quartic_profile};

    fn hitchin(n: u32, k: u32, c: (i64, i64)) -> GeneratingProfile {
        hitchin_profile(n, k, &rat(c.0, c.1)).unwrap()
    }

    #[test]
    fn triple_matches_hitchin_formulas() {
        // A = 1/c constant; n=2,k=1: c_num = U^2/c + 2U + 4 - c
        let p = hitchin(2, 1, (1, 2));
        let t = curvature_triple(&p);
        assert_eq!(t.a_num, RationalPoly::constant(rat(2, 1)));
        let expect_c = RationalPoly::from_coeffs(vec![rat(7, 2), rat(2, 1), rat(2, 1)]);
        assert_eq!(t.c_num, expect_c);

        let p = hitchin(5, 2, (3, 7));
        let t = curvature_triple(&p);
        assert_eq!(t.a_num, RationalPoly::constant(rat(7, 3)));
    }

    #[test]
    fn triple_spot_identity() {
        // B * 2 s^2 + k s phi' = k^2 phi as polynomials
        let p = quartic_profile(&rat(1, 1), &rat(51, 100)).unwrap();
        let t = curvature_triple(&p);
        let s = s_poly(2, 1);
        let lhs = t
            .b_num
            .add(&s.mul(&p.phi.derivative()).scale(&rat(1, 1)));
        assert_eq!(lhs, p.phi.scale(&rat(1, 1)));
    }

    #[test]
    fn quartic_a_component() {
        // c=1: A(U) = 6(1-mu) U^2 + (2mu - 1)
        let mu = rat(51, 100);
        let p = quartic_profile(&rat(1, 1), &mu).unwrap();
        let t = curvature_triple(&p);
        let six = rat(6, 1) * (Rational::one() - &mu);
        let expect = RationalPoly::from_coeffs(vec![rat(2, 1) * &mu - rat(1, 1), rat(0, 1), six]);
        assert_eq!(t.a_num, expect);
    }

    #[test]
    fn h_endpoint_directions() {
        let p = hitchin(2, 1, (2, 7));
        let t = curvature_triple(&p);
        let u = rat(1, 10);
        let (a, _, c) = t.abc_at(&u).unwrap();
        let h1 = h_value(&t, &u, 1.0).unwrap();
        let h0 = h_value(&t, &u, 0.0).unwrap();
        assert!((h1 - rational_to_f64(&a)).abs() < 1e-14);
        assert!((h0 - rational_to_f64(&c)).abs() < 1e-14);
        assert!(h_value(&t, &rat(5, 1), 0.5).is_err());
    }

    #[test]
    fn h_extrema_degenerate_constant() {
        // A=C=1, B=1/2 gives H identically 1
        let e = quadratic_extrema(&rat(1, 1), &rat(1, 2), &rat(1, 1));
        assert_eq!(e.min, rat(1, 1));
        assert_eq!(e.max, rat(1, 1));
    }

    #[test]
    fn h_extrema_quartic_at_minus_one() {
        // min = (6-8mu)/(11-4mu), max = A(-1) = 5-4mu
        let mu = rat(51, 100);
        let p = quartic_profile(&rat(1, 1), &mu).unwrap();
        let t = curvature_triple(&p);
        let e = h_extrema_at(&t, &rat(-1, 1)).unwrap();
        let expect_min =
            (rat(6, 1) - rat(8, 1) * &mu) / (rat(11, 1) - rat(4, 1) * &mu);
        let expect_max = rat(5, 1) - rat(4, 1) * &mu;
        assert_eq!(e.min, expect_min);
        assert_eq!(e.max, expect_max);
        assert_eq!(e.argmax_t, rat(1, 1));
    }

    #[test]
    fn certify_hitchin_verdicts() {
        // threshold c < n/(k(2k+1)): (2,1) -> 2/3
        let cert = certify_positive(&hitchin(2, 1, (1, 2)));
        assert!(cert.is_positive(), "c=1/2 must be positive: {cert:?}");
        assert_eq!(cert.method, Method::ExactSturm);
        assert!(!cert.pieces.is_empty());

        let cert = certify_positive(&hitchin(2, 1, (2, 3)));
        assert_eq!(cert.verdict, Verdict::NotPositive);
        let w = cert.witness.as_ref().unwrap();
        assert_eq!(w.u, "-2/3");
        assert_eq!(w.h, "0");

        let cert = certify_positive(&hitchin(2, 1, (1, 1)));
        assert_eq!(cert.verdict, Verdict::NotPositive);
        assert!(witness_h_is_nonpositive(&hitchin(2, 1, (1, 1)), &cert));
    }

    #[test]
    fn certify_hitchin_31_threshold() {
        let cert = certify_positive(&hitchin(3, 1, (999, 1000)));
        assert!(cert.is_positive());
        let cert = certify_positive(&hitchin(3, 1, (1, 1)));
        assert_eq!(cert.verdict, Verdict::NotPositive);
    }

    #[test]
    fn certificate_pieces_cover_domain() {
        let p = hitchin(2, 1, (1, 2));
        let cert = certify_positive(&p);
        let mut hi_seen = p.u_min.clone();
        for piece in &cert.pieces {
            let a = crate::exactpoly::parse_rational(&piece.interval[0]).unwrap();
            let b = crate::exactpoly::parse_rational(&piece.interval[1]).unwrap();
            if a == b {
                continue; // point piece
            }
            assert!(a <= hi_seen, "gap before {a}");
            if b > hi_seen {
                hi_seen = b;
            }
        }
        assert_eq!(hi_seen, p.u_max);
    }

    #[test]
    fn quartic_certifies_positive() {
        let p = quartic_profile(&rat(1, 1), &rat(51, 100)).unwrap();
        let cert = certify_positive(&p);
        assert!(cert.is_positive(), "{cert:?}");
    }

    #[test]
    fn pinching_hitchin_optimal() {
        let p = hitchin(2, 1, (2, 7));
        let rep = local_pinching(&p, 1e-9).unwrap();
        assert!((rep.local_constant - 1.0 / 9.0).abs() < 1e-9, "{rep:?}");
        assert!((rep.local_argmin_u + 2.0 / 7.0).abs() < 1e-6);
        // local = global for Hitchin at the optimum
        assert!((rep.global_constant - 1.0 / 9.0).abs() < 1e-9);
        assert!(rep.global_constant <= rep.local_constant + 1e-12);
    }

    #[test]
    fn pinching_quartic_formulas() {
        // the closed-form local constant 4(2mu-1)/(4-mu) is the u = 0
        // branch value A(0)/C(0); the true ratio minimum drifts to
        // u* = O(2mu-1) left of 0 because C'(0) != 0 while A'(0) = 0,
        // so the formula is only O((2mu-1)^2)-accurate. Near mu = 1/2
        // the drift is negligible; at mu = 0.51 it is ~7e-6.
        for (mu_num, tol_local) in [(5010i64, 1e-6), (5100, 1.0e-5)] {
            let mu = mu_num as f64 / 1e4;
            let p = quartic_profile(&rat(1, 1), &rat(mu_num, 10_000)).unwrap();
            let rep = global_pinching(&p, 1e-9).unwrap();
            let local_expect = 4.0 * (2.0 * mu - 1.0) / (4.0 - mu);
            let global_expect = (2.0 * mu - 1.0) / (5.0 - 4.0 * mu);
            assert!(
                (rep.local_constant - local_expect).abs() < tol_local,
                "mu = {mu}: {rep:?}"
            );
            assert!(
                (rep.global_constant - global_expect).abs() < 1e-6,
                "mu = {mu}: {rep:?}"
            );
            assert!(rep.global_constant < rep.local_constant);
            // the true minimum never exceeds the branch value
            assert!(rep.local_constant <= local_expect + 1e-12);
        }
    }

    #[test]
    fn pinching_requires_positive() {
        let p = hitchin(2, 1, (9, 10));
        assert!(matches!(
            local_pinching(&p, 1e-9),
            Err(CurvatureError::NotPositive(_))
        ));
    }

    #[test]
    fn numeric_certifier_agrees_on_polynomials() {
        struct PolyEval(RationalPoly, RationalPoly, RationalPoly);
        impl ProfileEvaluator for PolyEval {
            fn phi(&self, u: f64) -> f64 {
                self.0.eval_f64(u)
            }
            fn dphi(&self, u: f64) -> f64 {
                self.1.eval_f64(u)
            }
            fn ddphi(&self, u: f64) -> f64 {
                self.2.eval_f64(u)
            }
        }
        for (c, expect_positive) in [((2, 7), true), ((1, 2), true), ((9, 10), false)] {
            let p = hitchin(2, 1, c);
            let d = p.phi.derivative();
            let dd = d.derivative();
            let eval = PolyEval(p.phi.clone(), d, dd);
            let lo = rational_to_f64(&p.u_min);
            let hi = rational_to_f64(&p.u_max);
            let cert = certify_positive_numeric(&eval, 2, 1, (lo, hi), 4096);
            if expect_positive {
                assert_eq!(cert.verdict, Verdict::Positive, "c={c:?}: {cert:?}");
            } else {
                assert_eq!(cert.verdict, Verdict::NotPositive, "c={c:?}: {cert:?}");
            }
            assert_eq!(cert.method, Method::NumericSampling);
        }
    }

    #[test]
    fn certificate_json_shape() {
        let cert = certify_positive(&hitchin(2, 1, (2, 7)));
        let js = serde_json::to_value(&cert).unwrap();
        assert_eq!(js["verdict"], "positive");
        assert_eq!(js["method"], "exact-sturm");
        assert!(js["pieces"].as_array().unwrap().len() >= 1);
        let piece = &js["pieces"][0];
        assert!(piece["interval"].as_array().unwrap().len() == 2);
        assert!(piece["facts"]
            .as_array()
            .unwrap()
            .iter()
            .any(|f| f == "A>0"));
    }
}
