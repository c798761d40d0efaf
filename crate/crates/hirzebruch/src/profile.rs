//! Generating profiles phi(U) for U(n)-invariant Kahler metrics on the
//! projectivization M_{n,k} of H^k + 1 over CP^(n-1).
//!
//! A profile is a polynomial phi on [u_min, u_max] that vanishes at both
//! ends with slopes +2 / -2 and stays positive between them; those are
//! exactly the conditions for the associated metric to compactify along
//! the zero and infinity sections. This module owns validation, the
//! Kahler-class ray of a profile, the concrete metric families, convex
//! combination, path construction between certified-positive metrics,
//! and arclength/completeness measurements.

use crate::curvature::{certify_positive, PositivityCertificate};
use crate::exactpoly::{
    format_rational, parse_rational, rat, rational_to_f64, sign_on_interval, Rational,
    RationalPoly, SignKind,
};
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use serde::de::Error as _;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum ProfileError {
    #[error("invalid profile: {0}")]
    Invalid(String),
    #[error("parameter out of range: {0}")]
    OutOfRange(String),
    #[error("profiles have mismatched domains")]
    MismatchedDomains,
    #[error("combination weight {0} is outside [0, 1]")]
    BadWeight(String),
    #[error("search exhausted at p = {0} without finding a certified profile")]
    SearchExhausted(u32),
    #[error("phi <= 0 inside the domain near u = {0}")]
    NonPositiveInterior(String),
    #[error("certification failed where theory predicts success: {0}")]
    CertificationFailed(String),
    #[error("unsupported: {0}")]
    Unsupported(String),
}

/// The generating data of a metric: dimension n, twist k, the moment
/// interval, and the profile polynomial.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GeneratingProfile {
    pub n: u32,
    pub k: u32,
    pub u_min: Rational,
    pub u_max: Rational,
    pub phi: RationalPoly,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
struct ProfileJson {
    n: u32,
    k: u32,
    umin: String,
    umax: String,
    coeffs: Vec<String>,
}

impl Serialize for GeneratingProfile {
    fn serialize<S: Serializer>(&self, ser: S) -> Result<S::Ok, S::Error> {
        ProfileJson {
            n: self.n,
            k: self.k,
            umin: format_rational(&self.u_min),
            umax: format_rational(&self.u_max),
            coeffs: self.phi.to_strings(),
        }
        .serialize(ser)
    }
}

impl<'de> Deserialize<'de> for GeneratingProfile {
    fn deserialize<D: Deserializer<'de>>(de: D) -> Result<Self, D::Error> {
        let js = ProfileJson::deserialize(de)?;
        let u_min = parse_rational(&js.umin).map_err(D::Error::custom)?;
        let u_max = parse_rational(&js.umax).map_err(D::Error::custom)?;
        let phi = RationalPoly::from_strings(&js.coeffs).map_err(D::Error::custom)?;
        Ok(GeneratingProfile {
            n: js.n,
            k: js.k,
            u_min,
            u_max,
            phi,
        })
    }
}

impl GeneratingProfile {
    /// Builds without validating; validate_profile accepts broken data
    /// on purpose, so this must exist.
    pub fn from_parts(n: u32, k: u32, u_min: Rational, u_max: Rational, phi: RationalPoly) -> Self {
        GeneratingProfile {
            n,
            k,
            u_min,
            u_max,
            phi,
        }
    }

    /// Builds and validates.
    pub fn new(
        n: u32,
        k: u32,
        u_min: Rational,
        u_max: Rational,
        phi: RationalPoly,
    ) -> Result<Self, ProfileError> {
        let p = Self::from_parts(n, k, u_min, u_max, phi);
        let report = validate_profile(&p);
        if report.ok {
            Ok(p)
        } else {
            Err(ProfileError::Invalid(report.summary()))
        }
    }

    pub fn domain_width(&self) -> Rational {
        &self.u_max - &self.u_min
    }
}

/// One failed validity condition with the value that broke it.
#[derive(Debug, Clone, Serialize, Deserialize, PartialEq, Eq)]
pub struct Violation {
    pub condition: String,
    pub witness: String,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct ValidationReport {
    pub ok: bool,
    pub violations: Vec<Violation>,
}

impl ValidationReport {
    pub fn summary(&self) -> String {
        if self.ok {
            "ok".to_string()
        } else {
            self.violations
                .iter()
                .map(|v| format!("{} (witness {})", v.condition, v.witness))
                .collect::<Vec<_>>()
                .join("; ")
        }
    }
}

/// Checks every compactification condition exactly. Failures are data,
/// not errors: each one names the condition and a witness value.
pub fn validate_profile(profile: &GeneratingProfile) -> ValidationReport {
    let mut violations = vec![];
    let mut push = |condition: &str, witness: String| {
        violations.push(Violation {
            condition: condition.to_string(),
            witness,
        })
    };

    if profile.n < 2 {
        push("n >= 2", profile.n.to_string());
    }
    if profile.k < 1 {
        push("k >= 1", profile.k.to_string());
    }
    if profile.u_min >= profile.u_max {
        push(
            "u_min < u_max",
            format!(
                "u_min = {}, u_max = {}",
                format_rational(&profile.u_min),
                format_rational(&profile.u_max)
            ),
        );
    }
    let base = rat(profile.n as i64, 1) + rat(profile.k as i64, 1) * &profile.u_min;
    if base <= Rational::zero() {
        push("n + k*u_min > 0", format_rational(&base));
    }

    let phi = &profile.phi;
    let dphi = phi.derivative();
    let two = rat(2, 1);
    let mut boundary_ok = true;
    for (cond, value, expect) in [
        ("phi(u_min) = 0", phi.eval(&profile.u_min), Rational::zero()),
        ("phi(u_max) = 0", phi.eval(&profile.u_max), Rational::zero()),
        ("phi'(u_min) = 2", dphi.eval(&profile.u_min), two.clone()),
        ("phi'(u_max) = -2", dphi.eval(&profile.u_max), -two.clone()),
    ] {
        if value != expect {
            boundary_ok = false;
            push(cond, format_rational(&value));
        }
    }

    // interior positivity, only meaningful once the simple endpoint
    // roots are in place
    if boundary_ok && profile.u_min < profile.u_max {
        let inner = phi.deflate(&profile.u_min).deflate(&profile.u_max);
        // phi = (U - u_min)(U - u_max) * inner, so phi > 0 inside means
        // inner < 0 on the closed interval
        match sign_on_interval(&inner.neg(), &profile.u_min, &profile.u_max) {
            Ok(v) if v.kind == SignKind::StrictlyPositive => {}
            Ok(v) => {
                let w = v
                    .witness
                    .map(|w| format_rational(&w))
                    .unwrap_or_else(|| "interior".to_string());
                push("phi > 0 on (u_min, u_max)", w);
            }
            Err(e) => push("phi > 0 on (u_min, u_max)", e.to_string()),
        }
    }

    ValidationReport {
        ok: violations.is_empty(),
        violations,
    }
}

/// The Kahler class of a profile, as the pair (a, b) of pairings with
/// the zero and infinity sections. Only the ray (b : a) is geometric;
/// the normalization a = n + k*u_min, b = n + k*u_max is a convention.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct KahlerClassRatio {
    pub a: Rational,
    pub b: Rational,
}

impl KahlerClassRatio {
    pub fn ratio(&self) -> Rational {
        &self.b / &self.a
    }

    pub const NORMALIZATION_NOTE: &'static str =
        "only the ray (b : a) is determined by the metric; a = n + k*u_min, b = n + k*u_max";
}

impl Serialize for KahlerClassRatio {
    fn serialize<S: Serializer>(&self, ser: S) -> Result<S::Ok, S::Error> {
        use serde::ser::SerializeStruct;
        let mut st = ser.serialize_struct("KahlerClassRatio", 4)?;
        st.serialize_field("a", &format_rational(&self.a))?;
        st.serialize_field("b", &format_rational(&self.b))?;
        st.serialize_field("ratio", &format_rational(&self.ratio()))?;
        st.serialize_field("note", KahlerClassRatio::NORMALIZATION_NOTE)?;
        st.end()
    }
}

/// Class ray of the anti-canonical polarization, b/a = (n+k)/(n-k).
pub fn anticanonical_ratio(n: u32, k: u32) -> Option<Rational> {
    if n > k {
        Some(rat((n + k) as i64, (n - k) as i64))
    } else {
        None
    }
}

pub fn kahler_class_of(profile: &GeneratingProfile) -> Result<KahlerClassRatio, ProfileError> {
    let report = validate_profile(profile);
    if !report.ok {
        return Err(ProfileError::Invalid(report.summary()));
    }
    let n = rat(profile.n as i64, 1);
    let k = rat(profile.k as i64, 1);
    Ok(KahlerClassRatio {
        a: &n + &k * &profile.u_min,
        b: &n + &k * &profile.u_max,
    })
}

/// phi_c(U) = c - U^2/c on [-c, c]. Valid for 0 < c < n/k; positivity
/// of H is a separate question settled by certify_positive.
pub fn hitchin_profile(n: u32, k: u32, c: &Rational) -> Result<GeneratingProfile, ProfileError> {
    if n < 2 || k < 1 {
        return Err(ProfileError::OutOfRange(format!("n = {n}, k = {k}")));
    }
    if *c <= Rational::zero() || c >= &rat(n as i64, k as i64) {
        return Err(ProfileError::OutOfRange(format!(
            "c = {} not in (0, {}/{})",
            format_rational(c),
            n,
            k
        )));
    }
    let phi = RationalPoly::from_coeffs(vec![
        c.clone(),
        Rational::zero(),
        -Rational::one() / c,
    ]);
    GeneratingProfile::new(n, k, -c.clone(), c.clone(), phi)
}

/// The quartic family on M_{2,1}:
/// phi_{c,mu}(U) = mu - (1/c^3 - mu/c^4) U^4 - (2mu/c^2 - 1/c) U^2
/// on [-c, c], for 0 < c < 6/5 and c/2 <= mu < c. The boundary value
/// mu = c/2 (vanishing quadratic coefficient) is the limiting profile
/// and is accepted.
pub fn quartic_profile(c: &Rational, mu: &Rational) -> Result<GeneratingProfile, ProfileError> {
    if *c <= Rational::zero() || c >= &rat(6, 5) {
        return Err(ProfileError::OutOfRange(format!(
            "c = {} not in (0, 6/5)",
            format_rational(c)
        )));
    }
    let half_c = c / rat(2, 1);
    if mu < &half_c || mu >= c {
        return Err(ProfileError::OutOfRange(format!(
            "mu = {} not in [c/2, c) = [{}, {})",
            format_rational(mu),
            format_rational(&half_c),
            format_rational(c)
        )));
    }
    let c2 = c * c;
    let c3 = &c2 * c;
    let c4 = &c2 * &c2;
    let alpha4 = Rational::one() / &c3 - mu / &c4;
    let alpha2 = rat(2, 1) * mu / &c2 - Rational::one() / c;
    let phi = RationalPoly::from_coeffs(vec![
        mu.clone(),
        Rational::zero(),
        -alpha2,
        Rational::zero(),
        -alpha4,
    ]);
    GeneratingProfile::new(2, 1, -c.clone(), c.clone(), phi)
}

/// Parameters of the even profile
/// phi = mu - alpha2 U^2 - alpha_{2p-2} U^{2p-2} - alpha_{2p} U^{2p}
/// on [-c, c] with mu = c/p + delta2. The alphas are forced by the
/// boundary conditions; the deltas are free within the inequalities
/// checked by `violations`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct AnyClassParams {
    pub p: u32,
    #[serde(with = "rational_string")]
    pub delta1: Rational,
    #[serde(with = "rational_string")]
    pub delta2: Rational,
    #[serde(with = "rational_string")]
    pub alpha2: Rational,
    #[serde(with = "rational_string")]
    pub mu: Rational,
    #[serde(with = "rational_string")]
    pub alpha_2p_minus_2: Rational,
    #[serde(with = "rational_string")]
    pub alpha_2p: Rational,
    #[serde(with = "rational_string")]
    pub epsilon_p: Rational,
}

mod rational_string {
    use super::*;
    pub fn serialize<S: Serializer>(r: &Rational, ser: S) -> Result<S::Ok, S::Error> {
        ser.serialize_str(&format_rational(r))
    }
    pub fn deserialize<'de, D: Deserializer<'de>>(de: D) -> Result<Rational, D::Error> {
        let s = String::deserialize(de)?;
        parse_rational(&s).map_err(D::Error::custom)
    }
}

impl AnyClassParams {
    /// Pure arithmetic: derives mu, epsilon_p and the forced alphas
    /// from the free parameters. Performs no admissibility checks (see
    /// `violations`), so limiting cases can be computed.
    pub fn derive(
        n: u32,
        k: u32,
        c: &Rational,
        p: u32,
        delta1: &Rational,
        delta2: &Rational,
        alpha2: &Rational,
    ) -> Result<AnyClassParams, ProfileError> {
        if p < 2 {
            return Err(ProfileError::OutOfRange(format!("p = {p} < 2")));
        }
        if c.is_zero() {
            return Err(ProfileError::OutOfRange("c = 0".into()));
        }
        let pr = rat(p as i64, 1);
        let mu = c / &pr + delta2;
        let epsilon_p = rat(2 * n as i64, (2 * p + 2 * k - 1) as i64);
        let c2 = c * c;
        let c_2p_minus_2 = pow_rat(c, 2 * p as usize - 2);
        let c_2p = &c_2p_minus_2 * &c2;
        let pm1 = rat(p as i64 - 1, 1);
        let pm2 = rat(p as i64 - 2, 1);
        let alpha_2p_minus_2 = (&pr * &mu - c - &pm1 * alpha2 * &c2) / &c_2p_minus_2;
        let alpha_2p = (c - &pm1 * &mu + &pm2 * alpha2 * &c2) / &c_2p;
        Ok(AnyClassParams {
            p,
            delta1: delta1.clone(),
            delta2: delta2.clone(),
            alpha2: alpha2.clone(),
            mu,
            alpha_2p_minus_2,
            alpha_2p,
            epsilon_p,
        })
    }

    /// Admissibility inequalities for (n, k, c). Empty means the
    /// profile built from these parameters is in the certified family.
    pub fn violations(&self, n: u32, k: u32, c: &Rational) -> Vec<Violation> {
        let mut out = vec![];
        let mut push = |cond: &str, wit: String| {
            out.push(Violation {
                condition: cond.to_string(),
                witness: wit,
            })
        };
        let p = self.p as i64;
        let nk = rat(n as i64, k as i64);
        if *c <= Rational::zero() || c >= &nk {
            push("0 < c < n/k", format_rational(c));
            return out;
        }
        if self.delta1 <= Rational::zero() {
            push("delta1 > 0", format_rational(&self.delta1));
        }
        if self.delta2 <= Rational::zero() {
            push("delta2 > 0", format_rational(&self.delta2));
        }
        if self.alpha2 < Rational::zero() {
            push("alpha2 >= 0", format_rational(&self.alpha2));
        }
        // condition (1): delta2 < c/(p(p-1)) and (p-1) delta1 c^2 < p delta2
        if self.delta2 >= c / rat(p * (p - 1), 1) {
            push("condition (1): delta2 < c/(p(p-1))", format_rational(&self.delta2));
        }
        let c2 = c * c;
        if rat(p - 1, 1) * &self.delta1 * &c2 >= rat(p, 1) * &self.delta2 {
            push(
                "condition (1): (p-1) delta1 c^2 < p delta2",
                format_rational(&(rat(p - 1, 1) * &self.delta1 * &c2)),
            );
        }
        // condition (2): delta2 < n(2p+2k+1)/(kp(2p+2k-1))
        let bound2 = rat(
            n as i64 * (2 * p + 2 * k as i64 + 1),
            k as i64 * p * (2 * p + 2 * k as i64 - 1),
        );
        if self.delta2 >= bound2 {
            push(
                "condition (2): delta2 < n(2p+2k+1)/(kp(2p+2k-1))",
                format_rational(&self.delta2),
            );
        }
        // condition (4): [k(2p-1)+2k^2]/(n-kc) * [n/k - eps_p - c] > 2p(p-1) delta2 / c
        let ki = k as i64;
        let lhs = rat(ki * (2 * p - 1) + 2 * ki * ki, 1)
            / (rat(n as i64, 1) - rat(ki, 1) * c)
            * (&nk - &self.epsilon_p - c);
        let rhs = rat(2 * p * (p - 1), 1) * &self.delta2 / c;
        if lhs <= rhs {
            push(
                "condition (4): curvature headroom exceeds 2p(p-1) delta2/c",
                format!("lhs = {}, rhs = {}", format_rational(&lhs), format_rational(&rhs)),
            );
        }
        if self.alpha_2p_minus_2 <= Rational::zero() {
            push(
                "alpha_{2p-2} > 0",
                format_rational(&self.alpha_2p_minus_2),
            );
        }
        if self.alpha_2p <= Rational::zero() {
            push("alpha_{2p} > 0", format_rational(&self.alpha_2p));
        }
        out
    }
}

fn pow_rat(c: &Rational, e: usize) -> Rational {
    let mut acc = Rational::one();
    for _ in 0..e {
        acc = acc * c;
    }
    acc
}

/// The even polynomial profile of AnyClassParams on [-c, c]. The
/// boundary identities hold for any parameters; admissibility is
/// checked and violations are reported as errors.
pub fn anyclass_profile(
    n: u32,
    k: u32,
    c: &Rational,
    params: &AnyClassParams,
) -> Result<GeneratingProfile, ProfileError> {
    let bad = params.violations(n, k, c);
    if !bad.is_empty() {
        let msg = bad
            .iter()
            .map(|v| format!("{} (witness {})", v.condition, v.witness))
            .collect::<Vec<_>>()
            .join("; ");
        return Err(ProfileError::Invalid(msg));
    }
    let phi = anyclass_poly(params);
    GeneratingProfile::new(n, k, -c.clone(), c.clone(), phi)
}

/// Builds mu - alpha2 U^2 - alpha_{2p-2} U^{2p-2} - alpha_{2p} U^{2p}
/// by accumulation, so the p = 2 index collision (2p-2 = 2) sums the
/// two quadratic contributions instead of overwriting one.
pub fn anyclass_poly(params: &AnyClassParams) -> RationalPoly {
    let p = params.p as usize;
    let mut coeffs = vec![Rational::zero(); 2 * p + 1];
    coeffs[0] = params.mu.clone();
    coeffs[2] = &coeffs[2] - &params.alpha2;
    coeffs[2 * p - 2] = &coeffs[2 * p - 2] - &params.alpha_2p_minus_2;
    coeffs[2 * p] = &coeffs[2 * p] - &params.alpha_2p;
    RationalPoly::from_coeffs(coeffs)
}

/// Smallest p respecting c <= n/k - 2 eps_p, the entry point of the
/// search in construct_positive_profile.
fn p_start(n: u32, k: u32, c: &Rational) -> u32 {
    // 2p + 2k - 1 >= 4nk/(n - kc)
    let need = rat(4 * (n as i64) * (k as i64), 1)
        / (rat(n as i64, 1) - rat(k as i64, 1) * c);
    let bound = (need + rat(1, 1) - rat(2 * k as i64, 1)) / rat(2, 1);
    let ceil = bound.numer().div_ceil(bound.denom());
    let p = if ceil.is_positive() {
        u32::try_from(ceil).unwrap_or(u32::MAX)
    } else {
        2
    };
    p.max(2)
}

const SEARCH_CAP: u32 = 4096;

/// Finds a certified H>0 profile in the Kahler class of [-c, c] by
/// walking p upward: at each p, delta2 is half the tightest of its
/// three bounds, delta1 is half its own bound, alpha2 = delta1, and the
/// resulting profile is certified exactly. Returns the first success.
pub fn construct_positive_profile(
    n: u32,
    k: u32,
    c: &Rational,
) -> Result<(GeneratingProfile, PositivityCertificate), ProfileError> {
    construct_with_p(n, k, c).map(|(prof, cert, _p)| (prof, cert))
}

pub(crate) fn construct_with_p(
    n: u32,
    k: u32,
    c: &Rational,
) -> Result<(GeneratingProfile, PositivityCertificate, u32), ProfileError> {
    if n < 2 || k < 1 {
        return Err(ProfileError::OutOfRange(format!("n = {n}, k = {k}")));
    }
    if *c <= Rational::zero() || c >= &rat(n as i64, k as i64) {
        return Err(ProfileError::OutOfRange(format!(
            "c = {} not in (0, n/k)",
            format_rational(c)
        )));
    }
    for p in p_start(n, k, c)..=SEARCH_CAP {
        let params = candidate_params(n, k, c, p)?;
        if !params.violations(n, k, c).is_empty() {
            continue;
        }
        let profile = anyclass_profile(n, k, c, &params)?;
        let cert = certify_positive(&profile);
        if cert.is_positive() {
            return Ok((profile, cert, p));
        }
    }
    Err(ProfileError::SearchExhausted(SEARCH_CAP))
}

/// The deterministic (delta1, delta2, alpha2) choice at a given p:
/// halves of the binding bounds.
pub(crate) fn candidate_params(n: u32, k: u32, c: &Rational, p: u32) -> Result<AnyClassParams, ProfileError> {
    let pi = p as i64;
    let ki = k as i64;
    let ni = n as i64;
    let epsilon_p = rat(2 * ni, 2 * pi + 2 * ki - 1);
    let bound1 = c / rat(pi * (pi - 1), 1);
    let bound2 = rat(ni * (2 * pi + 2 * ki + 1), ki * pi * (2 * pi + 2 * ki - 1));
    let nk = rat(ni, ki);
    let headroom = &nk - &epsilon_p - c;
    if !headroom.is_positive() {
        // p too small for condition (4) to have room; caller advances p
        return AnyClassParams::derive(n, k, c, p, &rat(1, 1), &rat(-1, 1), &rat(0, 1));
    }
    let lhs_factor = rat(ki * (2 * pi - 1) + 2 * ki * ki, 1) / (rat(ni, 1) - rat(ki, 1) * c);
    let bound4 = &lhs_factor * &headroom * c / rat(2 * pi * (pi - 1), 1);
    let mut delta2 = bound1.clone().min(bound2).min(bound4);
    delta2 = delta2 / rat(2, 1);
    let c2 = c * c;
    let delta1 = rat(pi, 1) * &delta2 / (rat(2 * (pi - 1), 1) * &c2);
    let alpha2 = delta1.clone();
    AnyClassParams::derive(n, k, c, p, &delta1, &delta2, &alpha2)
}

/// t*p1 + (1-t)*p2. Boundary conditions are preserved by linearity.
pub fn convex_combine(
    p1: &GeneratingProfile,
    p2: &GeneratingProfile,
    t: &Rational,
) -> Result<GeneratingProfile, ProfileError> {
    if p1.n != p2.n || p1.k != p2.k || p1.u_min != p2.u_min || p1.u_max != p2.u_max {
        return Err(ProfileError::MismatchedDomains);
    }
    if t < &Rational::zero() || t > &Rational::one() {
        return Err(ProfileError::BadWeight(format_rational(t)));
    }
    if t.is_zero() {
        return Ok(p2.clone());
    }
    if t.is_one() {
        return Ok(p1.clone());
    }
    let phi = p1
        .phi
        .scale(t)
        .add(&p2.phi.scale(&(Rational::one() - t)));
    Ok(GeneratingProfile::from_parts(
        p1.n,
        p1.k,
        p1.u_min.clone(),
        p1.u_max.clone(),
        phi,
    ))
}

/// Convex combination of two certified-positive profiles, re-certified.
/// Failure to re-certify is a bug signal (convexity of the certified
/// cone), reported as CertificationFailed.
pub fn convex_combine_certified(
    p1: &GeneratingProfile,
    p2: &GeneratingProfile,
    t: &Rational,
) -> Result<(GeneratingProfile, PositivityCertificate), ProfileError> {
    let combined = convex_combine(p1, p2, t)?;
    let cert = certify_positive(&combined);
    if !cert.is_positive() {
        return Err(ProfileError::CertificationFailed(format!(
            "convex combination at t = {}",
            format_rational(t)
        )));
    }
    Ok((combined, cert))
}

/// A discrete path of certified-positive profiles from p1 to p2:
/// convex leg onto the even family at p1's class, a parameter leg
/// moving the class [-c1, c1] -> [-c2, c2] at a fixed p, then a convex
/// leg to p2. Requires symmetric domains (every family constructor in
/// this module produces them).
pub fn path_between(
    p1: &GeneratingProfile,
    p2: &GeneratingProfile,
    steps: u32,
) -> Result<Vec<(GeneratingProfile, PositivityCertificate)>, ProfileError> {
    if p1.n != p2.n || p1.k != p2.k {
        return Err(ProfileError::MismatchedDomains);
    }
    let cert1 = certify_positive(p1);
    if !cert1.is_positive() {
        return Err(ProfileError::CertificationFailed("left endpoint".into()));
    }
    if p1 == p2 {
        return Ok(vec![(p1.clone(), cert1)]);
    }
    let cert2 = certify_positive(p2);
    if !cert2.is_positive() {
        return Err(ProfileError::CertificationFailed("right endpoint".into()));
    }
    for p in [p1, p2] {
        if p.u_min != -p.u_max.clone() {
            return Err(ProfileError::Unsupported(
                "path construction needs symmetric domains [-c, c]".into(),
            ));
        }
    }
    let steps = steps.max(1);
    let (n, k) = (p1.n, p1.k);
    let c1 = p1.u_max.clone();
    let c2 = p2.u_max.clone();

    // fixed p for the parameter leg: the larger of the two the search
    // settles on at the endpoints
    let (_, _, pa) = construct_with_p(n, k, &c1)?;
    let (_, _, pb) = construct_with_p(n, k, &c2)?;
    let p_leg = pa.max(pb);
    let family_at = |c: &Rational| -> Result<(GeneratingProfile, PositivityCertificate), ProfileError> {
        let params = candidate_params(n, k, c, p_leg)?;
        let bad = params.violations(n, k, c);
        if !bad.is_empty() {
            return Err(ProfileError::CertificationFailed(format!(
                "family parameters inadmissible at c = {}",
                format_rational(c)
            )));
        }
        let prof = anyclass_profile(n, k, c, &params)?;
        let cert = certify_positive(&prof);
        if !cert.is_positive() {
            return Err(ProfileError::CertificationFailed(format!(
                "family profile at c = {}",
                format_rational(c)
            )));
        }
        Ok((prof, cert))
    };

    let m_param = if c1 == c2 { 0 } else { (steps / 2).max(1) };
    let m_convex = ((steps.saturating_sub(m_param)) / 2).max(1);

    let mut path: Vec<(GeneratingProfile, PositivityCertificate)> = vec![(p1.clone(), cert1)];
    let push_unique =
        |path: &mut Vec<(GeneratingProfile, PositivityCertificate)>,
         item: (GeneratingProfile, PositivityCertificate)| {
            if path.last().map(|(q, _)| q) != Some(&item.0) {
                path.push(item);
            }
        };

    let (q1, q1_cert) = family_at(&c1)?;
    for i in 1..=m_convex {
        // walk p1 -> q1
        let t = Rational::one() - rat(i as i64, m_convex as i64);
        if t.is_zero() {
            push_unique(&mut path, (q1.clone(), q1_cert.clone()));
        } else {
            push_unique(&mut path, convex_combine_certified(p1, &q1, &t)?);
        }
    }

    if m_param > 0 {
        for j in 1..=m_param {
            let c = &c1 + (&c2 - &c1) * rat(j as i64, m_param as i64);
            push_unique(&mut path, family_at(&c)?);
        }
    }

    let (q2, q2_cert) = family_at(&c2)?;
    push_unique(&mut path, (q2.clone(), q2_cert));
    for i in 1..=m_convex {
        // walk q2 -> p2
        let t = Rational::one() - rat(i as i64, m_convex as i64);
        if t.is_zero() {
            push_unique(&mut path, (p2.clone(), cert2.clone()));
        } else {
            push_unique(&mut path, convex_combine_certified(&q2, p2, &t)?);
        }
    }
    push_unique(&mut path, (p2.clone(), cert2));

    Ok(path)
}

/// Metric rescaling by lambda > 0. The moment coordinate maps by
/// U -> lambda U + n(lambda-1)/k so that n + kU scales uniformly; the
/// profile scales by lambda. Curvature components divide by lambda and
/// the class ray is unchanged.
pub fn rescale(profile: &GeneratingProfile, lambda: &Rational) -> Result<GeneratingProfile, ProfileError> {
    if !lambda.is_positive() {
        return Err(ProfileError::OutOfRange(format!(
            "lambda = {} must be positive",
            format_rational(lambda)
        )));
    }
    let sigma =
        rat(profile.n as i64, profile.k as i64) * (lambda - Rational::one());
    // phi_new(V) = lambda * phi((V - sigma)/lambda)
    let inner = RationalPoly::from_coeffs(vec![
        -&sigma / lambda,
        Rational::one() / lambda,
    ]);
    let phi = profile.phi.compose(&inner).scale(lambda);
    GeneratingProfile::new(
        profile.n,
        profile.k,
        lambda * &profile.u_min + &sigma,
        lambda * &profile.u_max + &sigma,
        phi,
    )
}

#[derive(Debug, Clone, Copy, Serialize, Deserialize)]
pub struct ArcSample {
    /// moment coordinate
    pub u: f64,
    /// fiberwise geodesic arclength from the anchor, t = int dU/sqrt(phi)
    pub t: f64,
    /// fiber circle radius sqrt(phi)
    pub radius: f64,
}

/// Arclength picture of a profile: samples of (u, t, sqrt(phi)),
/// finiteness of each end, and (for unbounded domains) whether the
/// metric is complete at infinity.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct ArclengthReport {
    pub samples: Vec<ArcSample>,
    pub total_length: Option<f64>,
    pub lower_end_finite: bool,
    pub upper_end_finite: bool,
    pub complete_at_infinity: Option<bool>,
    /// the u where t = 0 (the lower end when it is finite)
    pub anchor_u: f64,
}

const ARC_REL_TOL: f64 = 1e-8;
const ARC_NODES: usize = 65;

/// Arclength data of a polynomial profile on its compact domain. The
/// only precondition is phi > 0 on the open interval; endpoint behavior
/// is classified exactly by root multiplicity (simple roots integrate,
/// higher ones diverge).
pub fn arclength_data(profile: &GeneratingProfile) -> Result<ArclengthReport, ProfileError> {
    let lo = &profile.u_min;
    let hi = &profile.u_max;
    if lo >= hi {
        return Err(ProfileError::OutOfRange("u_min >= u_max".into()));
    }
    if profile.phi.is_zero() {
        return Err(ProfileError::NonPositiveInterior(format_rational(lo)));
    }
    // strip endpoint roots, tracking multiplicity
    let mut inner = profile.phi.clone();
    let mut m_lo = 0usize;
    let mut m_hi = 0usize;
    while inner.eval(lo).is_zero() {
        inner = inner.deflate(lo);
        m_lo += 1;
    }
    while inner.eval(hi).is_zero() {
        inner = inner.deflate(hi);
        m_hi += 1;
    }
    // phi = (U-lo)^m_lo (U-hi)^m_hi inner; interior positivity needs
    // (-1)^m_hi inner > 0 on the closed interval
    let check = if m_hi % 2 == 1 { inner.neg() } else { inner.clone() };
    match sign_on_interval(&check, lo, hi) {
        Ok(v) if v.kind == SignKind::StrictlyPositive => {}
        Ok(v) => {
            let w = v.witness.map(|w| format_rational(&w)).unwrap_or_default();
            return Err(ProfileError::NonPositiveInterior(w));
        }
        Err(e) => return Err(ProfileError::NonPositiveInterior(e.to_string())),
    }

    let lower_end_finite = m_lo <= 1;
    let upper_end_finite = m_hi <= 1;
    let lo_f = rational_to_f64(lo);
    let hi_f = rational_to_f64(hi);
    let phi_f = |u: f64| profile.phi.eval_f64(u).max(0.0);

    // sample nodes; singular (divergent) ends are excluded from the
    // node list because t blows up there
    let mut nodes: Vec<f64> = (0..ARC_NODES)
        .map(|i| lo_f + (hi_f - lo_f) * i as f64 / (ARC_NODES - 1) as f64)
        .collect();
    if !lower_end_finite {
        nodes.remove(0);
    }
    if !upper_end_finite {
        nodes.pop();
    }

    let mut ts = vec![0.0_f64; nodes.len()];
    for i in 1..nodes.len() {
        let (a, b) = (nodes[i - 1], nodes[i]);
        let piece = if i == 1 && lower_end_finite && m_lo == 1 {
            // substitute U = lo + s^2 to flatten the sqrt singularity
            let s_max = (b - lo_f).sqrt();
            adaptive_simpson(
                &|s: f64| {
                    let phi = phi_f(lo_f + s * s);
                    if phi <= 0.0 {
                        0.0
                    } else {
                        2.0 * s / phi.sqrt()
                    }
                },
                0.0,
                s_max,
                ARC_REL_TOL,
            )
        } else if i == nodes.len() - 1 && upper_end_finite && m_hi == 1 {
            let s_max = (b - a).sqrt();
            adaptive_simpson(
                &|s: f64| {
                    let phi = phi_f(hi_f - s * s);
                    if phi <= 0.0 {
                        0.0
                    } else {
                        2.0 * s / phi.sqrt()
                    }
                },
                0.0,
                s_max,
                ARC_REL_TOL,
            )
        } else {
            adaptive_simpson(&|u: f64| 1.0 / phi_f(u).sqrt(), a, b, ARC_REL_TOL)
        };
        ts[i] = ts[i - 1] + piece;
    }

    let samples: Vec<ArcSample> = nodes
        .iter()
        .zip(&ts)
        .map(|(&u, &t)| ArcSample {
            u,
            t,
            radius: phi_f(u).sqrt(),
        })
        .collect();
    let total_length = if lower_end_finite && upper_end_finite {
        Some(*ts.last().unwrap())
    } else {
        None
    };
    Ok(ArclengthReport {
        anchor_u: nodes[0],
        samples,
        total_length,
        lower_end_finite,
        upper_end_finite,
        complete_at_infinity: None,
    })
}

/// Arclength data for a profile given as an evaluator on the unbounded
/// domain [u_min, infinity), with phi(u_min) = 0 a simple root.
/// Integrates out to probe_to and classifies completeness at infinity
/// from the asymptotic log-slope rho of sqrt(phi): the length integral
/// of U^(-rho) diverges iff rho <= 1.
pub fn arclength_data_unbounded(
    phi: &dyn Fn(f64) -> f64,
    u_min: f64,
    probe_to: f64,
) -> Result<ArclengthReport, ProfileError> {
    if !(probe_to > u_min) {
        return Err(ProfileError::OutOfRange("probe_to <= u_min".into()));
    }
    let n_nodes = 129;
    let nodes: Vec<f64> = (0..n_nodes)
        .map(|i| u_min + (probe_to - u_min) * i as f64 / (n_nodes - 1) as f64)
        .collect();
    for &u in &nodes[1..] {
        if phi(u) <= 0.0 {
            return Err(ProfileError::NonPositiveInterior(format!("{u}")));
        }
    }
    let mut ts = vec![0.0_f64; n_nodes];
    for i in 1..n_nodes {
        let (a, b) = (nodes[i - 1], nodes[i]);
        let piece = if i == 1 {
            let s_max = (b - u_min).sqrt();
            adaptive_simpson(
                &|s: f64| {
                    let v = phi(u_min + s * s);
                    if v <= 0.0 {
                        0.0
                    } else {
                        2.0 * s / v.sqrt()
                    }
                },
                0.0,
                s_max,
                ARC_REL_TOL,
            )
        } else {
            adaptive_simpson(&|u: f64| 1.0 / phi(u).max(1e-300).sqrt(), a, b, ARC_REL_TOL)
        };
        ts[i] = ts[i - 1] + piece;
    }
    let samples: Vec<ArcSample> = nodes
        .iter()
        .zip(&ts)
        .map(|(&u, &t)| ArcSample {
            u,
            t,
            radius: phi(u).max(0.0).sqrt(),
        })
        .collect();

    // asymptotic slope of log sqrt(phi) against log U at the far end
    let u1 = u_min.max(0.0).max(probe_to / 2.0).max(1e-6);
    let u2 = probe_to;
    let rho = 0.5 * (phi(u2).ln() - phi(u1).ln()) / (u2.ln() - u1.ln());
    let complete = rho <= 1.02;

    Ok(ArclengthReport {
        anchor_u: u_min,
        samples,
        total_length: None,
        lower_end_finite: true,
        upper_end_finite: true,
        complete_at_infinity: Some(complete),
    })
}

/// Adaptive Simpson quadrature with relative tolerance.
pub(crate) fn adaptive_simpson(f: &dyn Fn(f64) -> f64, a: f64, b: f64, rel_tol: f64) -> f64 {
    fn simpson(fa: f64, fm: f64, fb: f64, h: f64) -> f64 {
        h / 6.0 * (fa + 4.0 * fm + fb)
    }
    fn rec(
        f: &dyn Fn(f64) -> f64,
        a: f64,
        b: f64,
        fa: f64,
        fm: f64,
        fb: f64,
        whole: f64,
        tol: f64,
        depth: u32,
    ) -> f64 {
        let m = 0.5 * (a + b);
        let lm = 0.5 * (a + m);
        let rm = 0.5 * (m + b);
        let flm = f(lm);
        let frm = f(rm);
        let left = simpson(fa, flm, fm, m - a);
        let right = simpson(fm, frm, fb, b - m);
        let delta = left + right - whole;
        if depth == 0 || delta.abs() <= 15.0 * tol {
            left + right + delta / 15.0
        } else {
            rec(f, a, m, fa, flm, fm, left, tol / 2.0, depth - 1)
                + rec(f, m, b, fm, frm, fb, right, tol / 2.0, depth - 1)
        }
    }
    if a == b {
        return 0.0;
    }
    let m = 0.5 * (a + b);
    let (fa, fm, fb) = (f(a), f(m), f(b));
    let whole = simpson(fa, fm, fb, b - a);
    let scale = whole.abs().max(1e-12);
    rec(f, a, b, fa, fm, fb, whole, rel_tol * scale, 40)
}
