//! Shrinking Kahler-Ricci solitons in the rotation-invariant ansatz:
//! compact ones on M_{n,k} and noncompact cone-like ones on the total
//! space of H^(-k) over CP^(n-1).
//!
//! With Q(U) = (1 + kU/n)^(n-1) and soliton potential -alpha U, the
//! soliton equation for the profile is the linear first-order ODE
//!   phi' + k(n-1) phi/(n+kU) + 2U - alpha phi = 0,
//! solved in closed form by phi Q = 2 eta(U, alpha) - 2 e^(alpha(U+1))
//! eta(-1, alpha), where eta is the polynomial-in-(U, 1/alpha) antiderivative
//! with d/dU[-e^(-alpha U) eta] = U e^(-alpha U) Q(U). The compact case
//! pins alpha by phi(1) = 0; the noncompact case pins it by
//! eta(-1, alpha) = 0, which kills the growing exponential mode and
//! leaves the linear asymptote phi ~ 2U/alpha.

use crate::curvature::{
    abc_numeric, certify_positive_numeric, pinching_from_abc, PinchingReport,
    PositivityCertificate, ProfileEvaluator, Verdict,
};
use crate::exactpoly::{format_rational, rat, rational_to_f64, Rational, RationalPoly};
use num_bigint::BigInt;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum SolitonError {
    #[error("parameters out of range: {0}")]
    OutOfRange(String),
    #[error("failed to bracket the boundary-equation root: {0}")]
    Bracketing(String),
    #[error("alpha = {alpha} is inconsistent: {what} = {value:e} exceeds 1e-8")]
    Inconsistent { alpha: f64, what: String, value: f64 },
}

fn check_nk(n: u32, k: u32) -> Result<(), SolitonError> {
    if k >= 1 && k < n {
        Ok(())
    } else {
        Err(SolitonError::OutOfRange(format!(
            "need 1 <= k < n, got n = {n}, k = {k}"
        )))
    }
}

fn factorial(m: u32) -> Rational {
    let mut acc = BigInt::one();
    for i in 2..=m as u64 {
        acc *= i;
    }
    Rational::from(acc)
}

fn pow_rat(x: &Rational, e: u32) -> Rational {
    let mut acc = Rational::one();
    for _ in 0..e {
        acc = acc * x;
    }
    acc
}

/// alpha^(n+1) eta(U, alpha), stored as exact polynomials in U indexed
/// by the power of alpha:
///   (k/n)^(n-1) [ sum_{l=1..n} (n!/l!) (n+kU)^(l-1) (n+kU-l) / k^l * alpha^l + n! ].
#[derive(Debug, Clone)]
pub struct EtaPolynomial {
    pub n: u32,
    pub k: u32,
    /// coefficient of alpha^l, l = 0..=n
    pub coeffs: Vec<RationalPoly>,
}

/// Closed form of the antiderivative object; defined by the identity
/// alpha*eta - d eta/dU = U Q(U), which the constructor's output
/// satisfies exactly (see tests).
pub fn eta_polynomial(n: u32, k: u32) -> Result<EtaPolynomial, SolitonError> {
    check_nk(n, k)?;
    let s = RationalPoly::from_coeffs(vec![rat(n as i64, 1), rat(k as i64, 1)]);
    let front = pow_rat(&rat(k as i64, n as i64), n - 1);
    let nfact = factorial(n);
    let mut coeffs = vec![RationalPoly::constant(&front * &nfact)];
    let mut s_pow = RationalPoly::one(); // (n+kU)^(l-1)
    let mut k_pow = Rational::one();
    let mut l_fact = Rational::one();
    for l in 1..=n {
        k_pow = k_pow * rat(k as i64, 1);
        l_fact = l_fact * rat(l as i64, 1);
        let shifted = s.sub(&RationalPoly::constant(rat(l as i64, 1))); // n+kU-l
        let scale = &front * &nfact / (&l_fact * &k_pow);
        coeffs.push(s_pow.mul(&shifted).scale(&scale));
        s_pow = s_pow.mul(&s);
    }
    Ok(EtaPolynomial { n, k, coeffs })
}

impl EtaPolynomial {
    /// The polynomial in alpha obtained by fixing U.
    pub fn at_u(&self, u: &Rational) -> RationalPoly {
        RationalPoly::from_coeffs(self.coeffs.iter().map(|p| p.eval(u)).collect())
    }

    /// eta(u, alpha) as a float (divides out alpha^(n+1)).
    pub fn eta(&self, u: f64, alpha: f64) -> f64 {
        self.eval_scaled(&self.coeffs, u, alpha)
    }

    fn eval_scaled(&self, polys: &[RationalPoly], u: f64, alpha: f64) -> f64 {
        // Horner in alpha, then divide by alpha^(n+1)
        let mut acc = 0.0;
        for p in polys.iter().rev() {
            acc = acc * alpha + p.eval_f64(u);
        }
        acc / alpha.powi(self.n as i32 + 1)
    }

    fn d_coeffs(&self) -> Vec<RationalPoly> {
        self.coeffs.iter().map(|p| p.derivative()).collect()
    }
}

/// Q(U) = (1 + kU/n)^(n-1) as an exact polynomial.
pub fn base_volume_poly(n: u32, k: u32) -> RationalPoly {
    let lin = RationalPoly::from_coeffs(vec![Rational::one(), rat(k as i64, n as i64)]);
    let mut acc = RationalPoly::one();
    for _ in 0..n - 1 {
        acc = acc.mul(&lin);
    }
    acc
}

/// chi(alpha) = sum_{l=1..n} (n!/l!) (n-k)^(l-1) (n-k-l)/k^l alpha^l + n!,
/// the boundary polynomial of the noncompact case: its unique positive
/// root is the alpha that kills the growing mode. Equals
/// alpha^(n+1) eta(-1, alpha) / (k/n)^(n-1).
pub fn chi_polynomial(n: u32, k: u32) -> Result<RationalPoly, SolitonError> {
    check_nk(n, k)?;
    let eta = eta_polynomial(n, k)?;
    let front = pow_rat(&rat(k as i64, n as i64), n - 1);
    Ok(eta.at_u(&rat(-1, 1)).scale(&(Rational::one() / front)))
}

/// (n-2k)(k+1)/(n-k): the alpha threshold below which the curvature
/// component combination 2B + sqrt(AC) stays positive along the zero
/// section U = -1; a necessary condition for H > 0.
pub fn critical_alpha0(n: u32, k: u32) -> Result<Rational, SolitonError> {
    check_nk(n, k)?;
    Ok(rat(
        (n as i64 - 2 * k as i64) * (k as i64 + 1),
        n as i64 - k as i64,
    ))
}

/// The compact boundary equation F(alpha) = E(1, alpha) - e^(2 alpha) E(-1, alpha)
/// where E = alpha^(n+1) eta. F(0) = 0 is a spurious root; the metric
/// alpha is the unique positive root, bracketed from (1e-6, 8) and up.
fn compact_boundary(eta: &EtaPolynomial) -> (RationalPoly, RationalPoly) {
    (eta.at_u(&rat(1, 1)), eta.at_u(&rat(-1, 1)))
}

/// alpha of the compact shrinking soliton on M_{n,k}, to absolute
/// accuracy tol, by bisection on the closed-form boundary equation.
///
/// F vanishes to order n+1 at alpha = 0 (integrating the defining
/// identity over [-1,1] gives F = -alpha^(n+1) e^alpha int U e^(-alpha U) Q dU),
/// so evaluations at tiny alpha are pure rounding noise. The bracket is
/// therefore taken from a log-spaced scan, keeping the rightmost
/// negative-to-positive transition: F is negative below the metric root
/// and positive above, and spurious flips only occur in the noise
/// region near 0.
pub fn compact_alpha(n: u32, k: u32, tol: f64) -> Result<f64, SolitonError> {
    check_nk(n, k)?;
    let eta = eta_polynomial(n, k)?;
    let (e_top, e_bot) = compact_boundary(&eta);
    let f = |a: f64| e_top.eval_f64(a) - (2.0 * a).exp() * e_bot.eval_f64(a);

    let mut top = 32.0_f64;
    let mut grow = 0;
    while f(top) <= 0.0 {
        top *= 2.0;
        grow += 1;
        if grow > 12 {
            return Err(SolitonError::Bracketing(format!(
                "no upper bracket for (n,k) = ({n},{k})"
            )));
        }
    }
    let bottom = 0.02_f64;
    let cells = 512;
    let step = (top / bottom).ln() / cells as f64;
    let mut bracket = None;
    for i in 0..cells {
        let a = bottom * (step * i as f64).exp();
        let b = bottom * (step * (i + 1) as f64).exp();
        if f(a) < 0.0 && f(b) >= 0.0 {
            bracket = Some((a, b));
        }
    }
    let (mut lo, mut hi) = bracket.ok_or_else(|| {
        SolitonError::Bracketing(format!(
            "no sign change above alpha = 0 for (n,k) = ({n},{k})"
        ))
    })?;
    let tol = tol.max(1e-14);
    while hi - lo > tol {
        let mid = 0.5 * (lo + hi);
        if f(mid) < 0.0 {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    Ok(0.5 * (lo + hi))
}

/// alpha of the noncompact shrinking soliton: the unique positive root
/// of chi, by bisection.
///
/// Uniqueness comes for free from the coefficient signs: chi's alpha^l
/// coefficient carries the factor n-k-l, positive for l < n-k and
/// negative beyond, so the sequence has exactly one sign change and
/// Descartes' rule gives exactly one positive root. That pattern is
/// asserted here; Sturm counts confirm it independently in tests.
pub fn fik_alpha(n: u32, k: u32, tol: f64) -> Result<f64, SolitonError> {
    check_nk(n, k)?;
    let chi = chi_polynomial(n, k)?;
    let mut changes = 0;
    let mut prev = 1i8; // constant term n! > 0
    for c in chi.coeffs().iter().skip(1) {
        let sgn = if c.is_zero() {
            continue;
        } else if *c > Rational::zero() {
            1i8
        } else {
            -1i8
        };
        if sgn != prev {
            changes += 1;
            prev = sgn;
        }
    }
    if changes != 1 {
        return Err(SolitonError::Bracketing(format!(
            "unexpected chi sign pattern for (n,k) = ({n},{k})"
        )));
    }
    let cf: Vec<f64> = chi.coeffs().iter().map(rational_to_f64).collect();
    let f = |a: f64| cf.iter().rev().fold(0.0, |acc, c| acc * a + c);
    let mut hi = k as f64 + 1.0;
    let mut grow = 0;
    while f(hi) > 0.0 {
        hi *= 2.0;
        grow += 1;
        if grow > 64 {
            return Err(SolitonError::Bracketing(format!(
                "chi stays positive for (n,k) = ({n},{k})"
            )));
        }
    }
    let mut lo = 0.0;
    let tol = tol.max(1e-14);
    while hi - lo > tol {
        let mid = 0.5 * (lo + hi);
        if f(mid) > 0.0 {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    Ok(0.5 * (lo + hi))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum SolitonKind {
    Compact,
    Fik,
}

/// A constructed soliton: alpha, the closed-form profile evaluator, and
/// the measured ODE residual. Domain [-1, 1] for compact, [-1, inf)
/// noncompact.
#[derive(Debug, Clone)]
pub struct SolitonSolution {
    pub kind: SolitonKind,
    pub n: u32,
    pub k: u32,
    pub alpha: f64,
    /// absolute error bound carried from the root solve (0 = unspecified)
    pub alpha_err: f64,
    /// sup of the ODE defect over the check grid
    pub residual: f64,
    // f64 coefficient tables (exact rationals rounded once, at build):
    // e[l] holds the U-coefficients of the alpha^l part of alpha^(n+1) eta
    e: Vec<Vec<f64>>,
    de: Vec<Vec<f64>>,
    dde: Vec<Vec<f64>>,
    q: Vec<f64>,
    dq: Vec<f64>,
    ddq: Vec<f64>,
    /// eta(-1, alpha); exactly 0 for the noncompact kind, where the
    /// growing mode is removed by the choice of alpha
    eta_minus: f64,
}

fn horner(c: &[f64], x: f64) -> f64 {
    c.iter().rev().fold(0.0, |acc, v| acc * x + v)
}

fn to_f64_table(polys: &[RationalPoly]) -> Vec<Vec<f64>> {
    polys
        .iter()
        .map(|p| p.coeffs().iter().map(rational_to_f64).collect())
        .collect()
}

const SOLITON_CHECK_TOL: f64 = 1e-8;

/// Builds the soliton profile for a given alpha and verifies the
/// construction: ODE residual and the kind's boundary conditions must
/// hold to 1e-8, otherwise the alpha is rejected as inconsistent.
pub fn soliton_profile(
    n: u32,
    k: u32,
    alpha: f64,
    kind: SolitonKind,
) -> Result<SolitonSolution, SolitonError> {
    check_nk(n, k)?;
    if !(alpha > 0.0) {
        return Err(SolitonError::OutOfRange(format!("alpha = {alpha}")));
    }
    let etap = eta_polynomial(n, k)?;
    let q = base_volume_poly(n, k);
    let dq = q.derivative();
    let ddq = dq.derivative();
    let de = etap.d_coeffs();
    let dde: Vec<RationalPoly> = de.iter().map(|p| p.derivative()).collect();
    let eta_minus = match kind {
        SolitonKind::Compact => etap.eta(-1.0, alpha),
        // the defining alpha makes this zero; pruning it exactly keeps
        // the evaluator finite at large U (e^(alpha U) would overflow)
        SolitonKind::Fik => 0.0,
    };
    let mut sol = SolitonSolution {
        kind,
        n,
        k,
        alpha,
        alpha_err: 0.0,
        residual: 0.0,
        e: to_f64_table(&etap.coeffs),
        de: to_f64_table(&de),
        dde: to_f64_table(&dde),
        q: q.coeffs().iter().map(rational_to_f64).collect(),
        dq: dq.coeffs().iter().map(rational_to_f64).collect(),
        ddq: ddq.coeffs().iter().map(rational_to_f64).collect(),
        eta_minus,
    };

    let hi = match kind {
        SolitonKind::Compact => 1.0,
        SolitonKind::Fik => 1000.0,
    };
    let mut residual = 0.0_f64;
    let grid = 4096;
    for i in 0..=grid {
        let u = -1.0 + (hi + 1.0) * i as f64 / grid as f64;
        let s = n as f64 + k as f64 * u;
        let defect =
            sol.dphi(u) + k as f64 * (n as f64 - 1.0) * sol.phi(u) / s + 2.0 * u
                - alpha * sol.phi(u);
        // scale-relative at large U where phi grows linearly
        let scale = 1.0 + sol.phi(u).abs();
        let rel = defect.abs() / scale;
        if !rel.is_finite() {
            return Err(SolitonError::Inconsistent {
                alpha,
                what: format!("ODE defect at U = {u}"),
                value: rel,
            });
        }
        residual = residual.max(rel);
    }
    sol.residual = residual;
    if residual > SOLITON_CHECK_TOL {
        return Err(SolitonError::Inconsistent {
            alpha,
            what: "ODE residual".into(),
            value: residual,
        });
    }

    let checks: Vec<(&str, f64, f64)> = match kind {
        SolitonKind::Compact => vec![
            ("phi(-1)", sol.phi(-1.0), SOLITON_CHECK_TOL),
            ("phi(1)", sol.phi(1.0), SOLITON_CHECK_TOL),
            ("phi'(-1) - 2", sol.dphi(-1.0) - 2.0, SOLITON_CHECK_TOL),
        ],
        SolitonKind::Fik => vec![
            ("phi(-1)", sol.phi(-1.0), SOLITON_CHECK_TOL),
            ("phi'(-1) - 2", sol.dphi(-1.0) - 2.0, SOLITON_CHECK_TOL),
            // linear asymptote phi ~ 2U/alpha, checked loosely far out
            (
                "asymptote defect",
                sol.phi(1e4) * alpha / (2.0 * 1e4) - 1.0,
                0.01,
            ),
        ],
    };
    for (what, value, tol) in checks {
        // written so that NaN also trips the error
        if !(value.abs() <= tol) {
            return Err(SolitonError::Inconsistent {
                alpha,
                what: what.into(),
                value,
            });
        }
    }
    Ok(sol)
}

/// Convenience: solve for alpha, then build.
pub fn compact_soliton(n: u32, k: u32) -> Result<SolitonSolution, SolitonError> {
    let alpha = compact_alpha(n, k, 1e-12)?;
    let mut sol = soliton_profile(n, k, alpha, SolitonKind::Compact)?;
    sol.alpha_err = 1e-12;
    Ok(sol)
}

pub fn fik_soliton(n: u32, k: u32) -> Result<SolitonSolution, SolitonError> {
    let alpha = fik_alpha(n, k, 1e-12)?;
    let mut sol = soliton_profile(n, k, alpha, SolitonKind::Fik)?;
    sol.alpha_err = 1e-12;
    Ok(sol)
}

impl SolitonSolution {
    fn eval_scaled(&self, polys: &[Vec<f64>], u: f64) -> f64 {
        let mut acc = 0.0;
        for p in polys.iter().rev() {
            acc = acc * self.alpha + horner(p, u);
        }
        acc / self.alpha.powi(self.n as i32 + 1)
    }

    fn nqq(&self, u: f64) -> (f64, f64, f64, f64, f64, f64) {
        let a = self.alpha;
        let eta = self.eval_scaled(&self.e, u);
        let deta = self.eval_scaled(&self.de, u);
        let ddeta = self.eval_scaled(&self.dde, u);
        // guard the pruned mode: exp overflows at large U and inf * 0 is NaN
        let ex = if self.eta_minus == 0.0 {
            0.0
        } else {
            (a * (u + 1.0)).exp() * self.eta_minus
        };
        let n0 = 2.0 * eta - 2.0 * ex;
        let n1 = 2.0 * deta - 2.0 * a * ex;
        let n2 = 2.0 * ddeta - 2.0 * a * a * ex;
        (n0, n1, n2, horner(&self.q, u), horner(&self.dq, u), horner(&self.ddq, u))
    }

    pub fn domain_hi(&self) -> f64 {
        match self.kind {
            SolitonKind::Compact => 1.0,
            SolitonKind::Fik => f64::INFINITY,
        }
    }

    /// Curvature components from the profile alone: the soliton
    /// equation eliminates phi' and phi'', leaving
    ///   A = -1/2 [alpha^2 - 2 alpha k(n-1)/s + k^2 n(n-1)/s^2] phi
    ///       + (alpha - k(n-1)/s) U + 1
    ///   B = ([k^2 n - k s alpha] phi + 2 k s U) / (2 s^2)
    ///   C = (2 s - k^2 phi) / s^2,            s = n + kU.
    /// The sign of the k^2 n(n-1)/s^2 term is forced: differentiating
    /// k(n-1)phi/s in the ODE produces +k^2(n-1)phi/s^2, which joins
    /// the (k(n-1)/s)^2 phi term as k^2 n(n-1) phi/s^2 inside the
    /// bracket (see tests, which pin this against -phi''/2).
    pub fn curvature_abc(&self, u: f64) -> (f64, f64, f64) {
        let (nf, kf) = (self.n as f64, self.k as f64);
        let a = self.alpha;
        let s = nf + kf * u;
        let phi = self.phi(u);
        let r = kf * (nf - 1.0) / s;
        let big_a = -0.5 * (a * a - 2.0 * a * r + kf * kf * nf * (nf - 1.0) / (s * s)) * phi
            + (a - r) * u
            + 1.0;
        let big_b = ((kf * kf * nf - kf * s * a) * phi + 2.0 * kf * s * u) / (2.0 * s * s);
        let big_c = (2.0 * s - kf * kf * phi) / (s * s);
        (big_a, big_b, big_c)
    }
}

impl ProfileEvaluator for SolitonSolution {
    fn phi(&self, u: f64) -> f64 {
        let (n0, _, _, q, _, _) = self.nqq(u);
        n0 / q
    }
    fn dphi(&self, u: f64) -> f64 {
        let (n0, n1, _, q, dq, _) = self.nqq(u);
        n1 / q - n0 * dq / (q * q)
    }
    fn ddphi(&self, u: f64) -> f64 {
        let (n0, n1, n2, q, dq, ddq) = self.nqq(u);
        n2 / q - 2.0 * n1 * dq / (q * q) - n0 * ddq / (q * q)
            + 2.0 * n0 * dq * dq / (q * q * q)
    }
}

/// Free-function form of the curvature evaluator, mirroring the other
/// per-object operations.
pub fn soliton_curvature(sol: &SolitonSolution) -> impl Fn(f64) -> (f64, f64, f64) + '_ {
    move |u| sol.curvature_abc(u)
}

/// H>0 verdict and pinching data for a soliton.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct SolitonHReport {
    pub n: u32,
    pub k: u32,
    pub kind: SolitonKind,
    pub alpha: f64,
    pub certificate: PositivityCertificate,
    pub pinching: Option<PinchingReport>,
    /// the solution of 2B = C in the domain, where the minimizing
    /// direction would leave the interior branch: the pointwise ratio
    /// min_t H / max_t H is (AC-4B^2)/(A(A+C-4B)) below it and C/A at
    /// and beyond it. For compact k = 1 solitons this sits exactly at
    /// the right endpoint (phi = 0 there makes C - 2B = 2(1-kU)/s), so
    /// the interior formula governs the whole open interval
    pub branch_crossover_u: Option<f64>,
}

/// Numeric H>0 verdict for the (n, k) soliton of the given kind, with
/// pinching data when positive. Certification is sampling-based and
/// never claims exactness (the profile is transcendental).
pub fn soliton_h_positive(
    n: u32,
    k: u32,
    kind: SolitonKind,
) -> Result<SolitonHReport, SolitonError> {
    let sol = match kind {
        SolitonKind::Compact => compact_soliton(n, k)?,
        SolitonKind::Fik => fik_soliton(n, k)?,
    };
    let hi = match kind {
        SolitonKind::Compact => 1.0,
        SolitonKind::Fik => 1000.0,
    };
    let certificate = certify_positive_numeric(&sol, n, k, (-1.0, hi), 4096);
    let (pinching, crossover) = if certificate.verdict == Verdict::Positive {
        let abc = |u: f64| abc_numeric(&sol, n, k, u);
        let pinch = pinching_from_abc(&abc, -1.0, hi, 1e-9);
        (Some(pinch), branch_crossover(&sol, -1.0, hi))
    } else {
        (None, None)
    };
    Ok(SolitonHReport {
        n,
        k,
        kind,
        alpha: sol.alpha,
        certificate,
        pinching,
        branch_crossover_u: crossover,
    })
}

/// Root of C - 2B on the closed domain, if any: the point where the
/// minimizing t reaches the t = 0 boundary. An interior sign change is
/// bisected; a zero at the right endpoint (exact for compact k = 1,
/// where phi vanishes there) is reported as the endpoint itself.
fn branch_crossover(sol: &SolitonSolution, lo: f64, hi: f64) -> Option<f64> {
    let g = |u: f64| {
        let (_, b, c) = sol.curvature_abc(u);
        c - 2.0 * b
    };
    let grid = 4096;
    let mut prev = g(lo);
    let mut scale = prev.abs();
    for i in 1..=grid {
        let u = lo + (hi - lo) * i as f64 / grid as f64;
        let cur = g(u);
        scale = scale.max(cur.abs());
        if prev > 0.0 && cur < 0.0 {
            let (mut a, mut b) = (u - (hi - lo) / grid as f64, u);
            for _ in 0..80 {
                let m = 0.5 * (a + b);
                if g(m) > 0.0 {
                    a = m;
                } else {
                    b = m;
                }
            }
            return Some(0.5 * (a + b));
        }
        prev = cur;
    }
    if g(hi).abs() <= 1e-9 * scale.max(1.0) {
        return Some(hi);
    }
    None
}

/// One row of the alpha-threshold sweep.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct SweepRow {
    pub n: u32,
    pub k: u32,
    pub alpha: f64,
    /// exact threshold (n-2k)(k+1)/(n-k), as a rational string
    pub alpha0: String,
    pub kplus1: u32,
    /// alpha0 < alpha < k+1, decided by exact sign evaluations of chi
    pub holds: bool,
    /// alpha > k, same exactness
    pub alpha_gt_k: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub h_positive: Option<bool>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub pinching: Option<f64>,
}

/// Exhaustive table over 1 <= k <= k_max, k < n <= n_max. The window
/// booleans come from exact rational evaluations of chi (chi is
/// positive strictly below its unique positive root and negative
/// strictly above), so they do not depend on the float alpha.
pub fn conjecture_sweep(n_max: u32, k_max: u32) -> Result<Vec<SweepRow>, SolitonError> {
    let mut rows = vec![];
    for k in 1..=k_max {
        for n in (k + 1)..=n_max {
            let chi = chi_polynomial(n, k)?;
            let alpha0 = critical_alpha0(n, k)?;
            let alpha = fik_alpha(n, k, 1e-9)?;
            let above_alpha0 = if alpha0 <= Rational::zero() {
                true
            } else {
                chi.eval(&alpha0) > Rational::zero()
            };
            let below_kplus1 = chi.eval(&rat(k as i64 + 1, 1)) < Rational::zero();
            let above_k = chi.eval(&rat(k as i64, 1)) > Rational::zero();
            rows.push(SweepRow {
                n,
                k,
                alpha,
                alpha0: format_rational(&alpha0),
                kplus1: k + 1,
                holds: above_alpha0 && below_kplus1,
                alpha_gt_k: above_k,
                h_positive: None,
                pinching: None,
            });
        }
    }
    Ok(rows)
}

/// Independent route to the compact alpha: shoot the ODE
/// phi' = alpha phi - 2U - k(n-1) phi/(n+kU) from phi(-1) = 0 with a
/// classical fourth-order integrator and bisect alpha on phi(1).
pub fn compact_alpha_shooting(n: u32, k: u32, tol: f64) -> Result<f64, SolitonError> {
    check_nk(n, k)?;
    let (nf, kf) = (n as f64, k as f64);
    let rhs = |u: f64, phi: f64, a: f64| a * phi - 2.0 * u - kf * (nf - 1.0) * phi / (nf + kf * u);
    let phi_at_1 = |a: f64| -> f64 {
        let steps = 4000;
        let h = 2.0 / steps as f64;
        let mut u = -1.0;
        let mut phi = 0.0;
        for _ in 0..steps {
            let k1 = rhs(u, phi, a);
            let k2 = rhs(u + 0.5 * h, phi + 0.5 * h * k1, a);
            let k3 = rhs(u + 0.5 * h, phi + 0.5 * h * k2, a);
            let k4 = rhs(u + h, phi + h * k3, a);
            phi += h / 6.0 * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
            u += h;
        }
        phi
    };
    // phi(1) rises through zero as alpha passes the soliton value: at
    // alpha -> 0, phi(1) Q(1) -> -2 int_{-1}^{1} U Q dU < 0, while large
    // alpha inflates phi exponentially
    let mut lo = 0.05;
    let mut hi = 8.0;
    if phi_at_1(lo) >= 0.0 {
        return Err(SolitonError::Bracketing("shooting lower bracket".into()));
    }
    let mut grow = 0;
    while phi_at_1(hi) <= 0.0 {
        hi *= 2.0;
        grow += 1;
        if grow > 16 {
            return Err(SolitonError::Bracketing("shooting upper bracket".into()));
        }
    }
    let tol = tol.max(1e-13);
    while hi - lo > tol {
        let mid = 0.5 * (lo + hi);
        if phi_at_1(mid) < 0.0 {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    Ok(0.5 * (lo + hi))
}
