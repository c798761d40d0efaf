//! Intersection theory of bidegree (p,1) hypersurfaces M in
//! CP^r x CP^s, n = dim M = r + s - 1. With H1, H2 the restricted
//! hyperplane classes, the ambient relations H1^{r+1} = 0,
//! H2^{s+1} = 0 and the divisor class of M give the top intersection
//! numbers on M, the first Chern class c1 = (r+1-p) H1 + s H2, and
//! the exact total-scalar-curvature coefficient c1 . [a H1 + b H2]^{n-1}.
//! When p > r+1 the b^2 coefficient of that quadratic is negative, so
//! classes with b >> a have negative total scalar curvature.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::exactpoly::format_rational;

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum IntersectError {
    #[error("parameters out of range: {0}")]
    OutOfRange(String),
}

fn check_rsp(r: usize, s: usize, p: u32) -> Result<(), IntersectError> {
    if r < 2 || s < 2 || p < 1 {
        return Err(IntersectError::OutOfRange(format!(
            "need r, s >= 2 and p >= 1, got r = {r}, s = {s}, p = {p}"
        )));
    }
    Ok(())
}

/// Truncated polynomial in the ambient cohomology of CP^r x CP^s:
/// coefficient grid over monomials H1^i H2^j with i <= r, j <= s.
struct AmbientPoly {
    r: usize,
    s: usize,
    c: Vec<Vec<BigInt>>,
}

impl AmbientPoly {
    fn monomial(r: usize, s: usize, i: usize, j: usize) -> Self {
        let mut c = vec![vec![BigInt::zero(); s + 1]; r + 1];
        if i <= r && j <= s {
            c[i][j] = BigInt::one();
        }
        AmbientPoly { r, s, c }
    }

    /// Multiplies by pa H1 + pb H2, truncating vanishing powers.
    fn mul_linear(&self, pa: &BigInt, pb: &BigInt) -> Self {
        let mut c = vec![vec![BigInt::zero(); self.s + 1]; self.r + 1];
        for i in 0..=self.r {
            for j in 0..=self.s {
                if self.c[i][j].is_zero() {
                    continue;
                }
                if i + 1 <= self.r {
                    c[i + 1][j] += pa * &self.c[i][j];
                }
                if j + 1 <= self.s {
                    c[i][j + 1] += pb * &self.c[i][j];
                }
            }
        }
        AmbientPoly { r: self.r, s: self.s, c }
    }

    /// Coefficient of the top class H1^r H2^s, the ambient degree.
    fn top(&self) -> BigInt {
        self.c[self.r][self.s].clone()
    }
}

/// Intersection ring data of the hypersurface: the top intersection
/// numbers H1^i H2^{n-i} for i = 0..=n, and c1 = (r+1-p) H1 + s H2.
#[derive(Debug, Clone, PartialEq)]
pub struct HypersurfaceRing {
    pub r: usize,
    pub s: usize,
    pub p: u32,
    values: Vec<BigInt>,
}

impl HypersurfaceRing {
    pub fn n(&self) -> usize {
        self.r + self.s - 1
    }

    /// H1^i H2^{n-i} evaluated on the hypersurface.
    pub fn intersection_number(&self, i: usize) -> BigInt {
        self.values.get(i).cloned().unwrap_or_else(BigInt::zero)
    }

    /// Coefficients (x, y) of c1 = x H1 + y H2.
    pub fn c1_coefficients(&self) -> (BigInt, BigInt) {
        (
            BigInt::from(self.r as i64 + 1 - i64::from(self.p)),
            BigInt::from(self.s),
        )
    }

    /// c1 . (a H1 + b H2)^{n-1}, expanded monomial by monomial and
    /// evaluated against the stored intersection numbers.
    pub fn total_scalar_coefficient(&self, a: &BigRational, b: &BigRational) -> BigRational {
        let n = self.n();
        // omega^{n-1} as a dense bivariate polynomial in (H1, H2)
        let mut pow = vec![vec![BigRational::zero(); n + 1]; n + 1];
        pow[0][0] = BigRational::one();
        for _ in 0..n - 1 {
            let mut next = vec![vec![BigRational::zero(); n + 1]; n + 1];
            for i in 0..n {
                for j in 0..n {
                    if pow[i][j].is_zero() {
                        continue;
                    }
                    let t = &pow[i][j] * a;
                    next[i + 1][j] += t;
                    let t = &pow[i][j] * b;
                    next[i][j + 1] += t;
                }
            }
            pow = next;
        }
        let (c1a, c1b) = self.c1_coefficients();
        let (c1a, c1b) = (
            BigRational::from_integer(c1a),
            BigRational::from_integer(c1b),
        );
        let mut total = BigRational::zero();
        for i in 0..n {
            let j = n - 1 - i;
            if pow[i][j].is_zero() {
                continue;
            }
            // c1 lifts the monomial to degree n in two ways
            let pushed = &c1a * BigRational::from_integer(self.intersection_number(i + 1))
                + &c1b * BigRational::from_integer(self.intersection_number(i));
            total += &pow[i][j] * pushed;
        }
        total
    }
}

/// Builds the intersection ring by pushing each degree-n monomial
/// into the ambient ring against the divisor class p H1 + H2.
pub fn intersection_numbers(r: usize, s: usize, p: u32) -> Result<HypersurfaceRing, IntersectError> {
    check_rsp(r, s, p)?;
    let n = r + s - 1;
    let pa = BigInt::from(p);
    let pb = BigInt::one();
    let values = (0..=n)
        .map(|i| AmbientPoly::monomial(r, s, i, n - i).mul_linear(&pa, &pb).top())
        .collect();
    Ok(HypersurfaceRing { r, s, p, values })
}

/// Exact total-scalar coefficient through the generic expansion.
pub fn total_scalar_coefficient(
    r: usize,
    s: usize,
    p: u32,
    a: &BigRational,
    b: &BigRational,
) -> Result<BigRational, IntersectError> {
    Ok(intersection_numbers(r, s, p)?.total_scalar_coefficient(a, b))
}

fn binomial(n: usize, k: usize) -> BigInt {
    if k > n {
        return BigInt::zero();
    }
    let mut acc = BigInt::one();
    for i in 0..k.min(n - k) {
        acc = acc * BigInt::from(n - i) / BigInt::from(i + 1);
    }
    acc
}

/// The three quadratic coefficients (A, B, C) of the closed form
/// c1 . omega^{n-1} = a^{r-2} b^{s-2} (A a^2 + B ab + C b^2):
///   A = C(n-1, r) s,
///   B = C(n-1, r-1) (r + 1 - p + s p),
///   C = C(n-1, r-2) (r + 1 - p) p.
/// The b^2 coefficient carries the factor p because the a^{r-2} b^s
/// monomial is pushed through H1^{r-1} H2^s = p; its sign is still
/// the sign of r + 1 - p, so negativity for b >> a happens exactly
/// when p > r + 1.
pub fn closed_form_coefficients(r: usize, s: usize, p: u32) -> Result<[BigInt; 3], IntersectError> {
    check_rsp(r, s, p)?;
    let n = r + s - 1;
    let pi = BigInt::from(p);
    let rp1 = BigInt::from(r as i64 + 1);
    let a2 = binomial(n - 1, r) * BigInt::from(s);
    let ab = binomial(n - 1, r - 1) * (&rp1 - &pi + BigInt::from(s) * &pi);
    let b2 = binomial(n - 1, r - 2) * (&rp1 - &pi) * &pi;
    Ok([a2, ab, b2])
}

/// Closed-form counterpart of [`total_scalar_coefficient`]; the two
/// must agree exactly for all valid parameters.
pub fn total_scalar_closed_form(
    r: usize,
    s: usize,
    p: u32,
    a: &BigRational,
    b: &BigRational,
) -> Result<BigRational, IntersectError> {
    let [ca, cab, cb] = closed_form_coefficients(r, s, p)?;
    let quad = BigRational::from_integer(ca) * a * a
        + BigRational::from_integer(cab) * a * b
        + BigRational::from_integer(cb) * b * b;
    let mut scale = BigRational::one();
    for _ in 0..r - 2 {
        scale *= a;
    }
    for _ in 0..s - 2 {
        scale *= b;
    }
    Ok(scale * quad)
}

/// Searches for a Kahler class a H1 + b H2 with negative total scalar
/// coefficient. For p > r+1 the b^2 coefficient is negative and
/// doubling b from 1 with a = 1 terminates; for p <= r+1 all quadratic
/// coefficients are nonnegative (with the a^2 one positive), so no
/// class is negative and the result is none. If sign inspection were
/// ever violated the quadratic is minimized exactly as a fallback.
pub fn negative_class_witness(
    r: usize,
    s: usize,
    p: u32,
) -> Result<Option<(BigRational, BigRational)>, IntersectError> {
    let ring = intersection_numbers(r, s, p)?;
    let one = BigRational::one();
    if u64::from(p) > r as u64 + 1 {
        let mut b = BigRational::one();
        for _ in 0..64 {
            if ring.total_scalar_coefficient(&one, &b).is_negative() {
                return Ok(Some((one, b)));
            }
            b *= BigRational::from_integer(BigInt::from(2));
        }
        unreachable!("negative b^2 coefficient forces a sign change before b = 2^64");
    }
    let [ca, cab, cb] = closed_form_coefficients(r, s, p)?;
    if !ca.is_positive() || cab.is_negative() || cb.is_negative() {
        // exact minimization of A x^2 + B x + C over x = a/b > 0
        let (a2, ab, b2) = (
            BigRational::from_integer(ca),
            BigRational::from_integer(cab),
            BigRational::from_integer(cb),
        );
        let xstar = -&ab / (BigRational::from_integer(BigInt::from(2)) * &a2);
        if xstar.is_positive() {
            let min = &a2 * &xstar * &xstar + &ab * &xstar + &b2;
            if min.is_negative() {
                return Ok(Some((xstar, BigRational::one())));
            }
        }
    }
    Ok(None)
}

/// JSON row for one parameter triple: the witness class and its value
/// when total scalar curvature can be made negative.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct ConeReport {
    pub r: usize,
    pub s: usize,
    pub p: u32,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<WitnessClass>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub value: Option<String>,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct WitnessClass {
    pub a: String,
    pub b: String,
}

pub fn cone_report(r: usize, s: usize, p: u32) -> Result<ConeReport, IntersectError> {
    let witness = negative_class_witness(r, s, p)?;
    let value = witness
        .as_ref()
        .map(|(a, b)| format_rational(&total_scalar_coefficient(r, s, p, a, b).unwrap()));
    Ok(ConeReport {
        r,
        s,
        p,
        witness: witness.map(|(a, b)| WitnessClass {
            a: format_rational(&a),
            b: format_rational(&b),
        }),
        value,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactpoly::rat;

    fn big(v: i64) -> BigRational {
        BigRational::from_integer(BigInt::from(v))
    }

    #[test]
    fn intersection_number_tables() {
        // nonzero exactly at i = r-1 (value p) and i = r (value 1)
        let ring = intersection_numbers(2, 2, 1).unwrap();
        assert_eq!(
            (0..=3).map(|i| ring.intersection_number(i)).collect::<Vec<_>>(),
            vec![BigInt::from(0), BigInt::from(1), BigInt::from(1), BigInt::from(0)]
        );
        let ring = intersection_numbers(2, 2, 4).unwrap();
        assert_eq!(
            (0..=3).map(|i| ring.intersection_number(i)).collect::<Vec<_>>(),
            vec![BigInt::from(0), BigInt::from(4), BigInt::from(1), BigInt::from(0)]
        );
        let ring = intersection_numbers(3, 2, 2).unwrap();
        assert_eq!(
            (0..=4).map(|i| ring.intersection_number(i)).collect::<Vec<_>>(),
            vec![
                BigInt::from(0),
                BigInt::from(0),
                BigInt::from(2),
                BigInt::from(1),
                BigInt::from(0)
            ]
        );
        assert!(intersection_numbers(1, 2, 1).is_err());
        assert!(intersection_numbers(2, 2, 0).is_err());
    }

    #[test]
    fn worked_values() {
        // (2,2,4): 2 a^2 + 14 ab - 4 b^2; the b^2 coefficient is
        // (r+1-p) * p = -4, the H1^{r-1} H2^s = p factor included
        let v = total_scalar_coefficient(2, 2, 4, &big(1), &big(100)).unwrap();
        assert_eq!(v, big(2 + 1400 - 40_000));
        let v = total_scalar_coefficient(2, 2, 4, &big(1), &big(1)).unwrap();
        assert_eq!(v, big(12));
        // p = 1: every coefficient positive, sample values positive
        for (a, b) in [(1, 1), (1, 100), (100, 1), (3, 7)] {
            let v = total_scalar_coefficient(2, 2, 1, &big(a), &big(b)).unwrap();
            assert!(v.is_positive(), "({a},{b}) -> {v}");
        }
    }

    #[test]
    fn generic_matches_closed_form_exactly() {
        let mut state = 0x9e37_79b9_7f4a_7c15_u64;
        let mut next = || {
            state ^= state << 13;
            state ^= state >> 7;
            state ^= state << 17;
            state
        };
        for r in 2..=6 {
            for s in 2..=6 {
                for p in 1..=10 {
                    let ring = intersection_numbers(r, s, p).unwrap();
                    for _ in 0..20 {
                        let a = big((next() % 50 + 1) as i64) / big((next() % 9 + 1) as i64);
                        let b = big((next() % 50 + 1) as i64) / big((next() % 9 + 1) as i64);
                        let generic = ring.total_scalar_coefficient(&a, &b);
                        let closed = total_scalar_closed_form(r, s, p, &a, &b).unwrap();
                        assert_eq!(generic, closed, "(r,s,p) = ({r},{s},{p})");
                    }
                }
            }
        }
    }

    #[test]
    fn homogeneity() {
        let lambda = rat(7, 3);
        for (r, s, p) in [(2, 2, 4), (3, 4, 10), (4, 3, 2)] {
            let ring = intersection_numbers(r, s, p).unwrap();
            let (a, b) = (rat(5, 2), rat(1, 3));
            let lhs = ring.total_scalar_coefficient(&(&lambda * &a), &(&lambda * &b));
            let mut scale = BigRational::one();
            for _ in 0..ring.n() - 1 {
                scale *= &lambda;
            }
            assert_eq!(lhs, scale * ring.total_scalar_coefficient(&a, &b));
        }
    }

    #[test]
    fn witness_exactly_when_p_exceeds_r_plus_1() {
        for r in 2..=5 {
            for s in 2..=5 {
                for p in 1..=9 {
                    let w = negative_class_witness(r, s, p).unwrap();
                    if u64::from(p) > r as u64 + 1 {
                        let (a, b) = w.expect("witness must exist");
                        let v = total_scalar_coefficient(r, s, p, &a, &b).unwrap();
                        assert!(v.is_negative(), "({r},{s},{p}): {v}");
                    } else {
                        assert!(w.is_none(), "({r},{s},{p})");
                    }
                }
            }
        }
    }

    #[test]
    fn report_serialization() {
        let rep = cone_report(2, 2, 4).unwrap();
        let json = serde_json::to_string(&rep).unwrap();
        assert!(json.contains("\"witness\""));
        let back: ConeReport = serde_json::from_str(&json).unwrap();
        assert_eq!(back.p, 4);
        assert!(back.value.unwrap().starts_with('-'));

        let rep = cone_report(2, 2, 3).unwrap();
        let json = serde_json::to_string(&rep).unwrap();
        assert!(!json.contains("witness"));
    }
}
