//! Exact univariate polynomial arithmetic over the rationals, with
//! Sturm-chain root counting, root isolation, and certified sign
//! determination on closed intervals.
//!
//! Everything here is exact: coefficients are arbitrary-precision
//! rationals and no operation rounds. Sign certificates produced by
//! [`sign_on_interval`] are therefore proofs, not estimates. Sturm chains
//! are computed over primitive integer polynomials (pseudo-remainders
//! reduced by content) so coefficient growth stays near the minimum the
//! subresultant theory allows.

use num_bigint::{BigInt, Sign};
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Zero};
use std::cmp::Ordering;
use std::fmt;

pub type Rational = BigRational;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum ExactPolyError {
    #[error("root count of the zero polynomial is indeterminate")]
    Indeterminate,
    #[error("empty interval: lo = {lo} exceeds hi = {hi}")]
    EmptyInterval { lo: String, hi: String },
    #[error("precision must be positive, got {0}")]
    BadPrecision(String),
    #[error("cannot parse {0:?} as an exact rational")]
    BadRational(String),
}

/// Convenience constructor for small rationals.
pub fn rat(num: i64, den: i64) -> Rational {
    Rational::new(BigInt::from(num), BigInt::from(den))
}

/// Parses "num/den", a plain integer, or an exact decimal string such as
/// "-0.51" (which becomes -51/100). No rounding: decimals convert exactly.
pub fn parse_rational(s: &str) -> Result<Rational, ExactPolyError> {
    let t = s.trim();
    let bad = || ExactPolyError::BadRational(s.to_string());
    if let Some((n, d)) = t.split_once('/') {
        let num: BigInt = n.trim().parse().map_err(|_| bad())?;
        let den: BigInt = d.trim().parse().map_err(|_| bad())?;
        if den.is_zero() {
            return Err(bad());
        }
        return Ok(Rational::new(num, den));
    }
    if let Some((int_part, frac_part)) = t.split_once('.') {
        let neg = int_part.starts_with('-');
        let int_digits = int_part.trim_start_matches(['+', '-']);
        if frac_part.is_empty() || !frac_part.bytes().all(|b| b.is_ascii_digit()) {
            return Err(bad());
        }
        if !int_digits.is_empty() && !int_digits.bytes().all(|b| b.is_ascii_digit()) {
            return Err(bad());
        }
        let int_val: BigInt = if int_digits.is_empty() {
            BigInt::zero()
        } else {
            int_digits.parse().map_err(|_| bad())?
        };
        let frac_val: BigInt = frac_part.parse().map_err(|_| bad())?;
        let scale = BigInt::from(10u32).pow(frac_part.len() as u32);
        let mut v = Rational::new(int_val * &scale + frac_val, scale);
        if neg {
            v = -v;
        }
        return Ok(v);
    }
    let num: BigInt = t.parse().map_err(|_| bad())?;
    Ok(Rational::from(num))
}

/// Formats in lowest terms: integers without a denominator, otherwise
/// "num/den".
pub fn format_rational(r: &Rational) -> String {
    if r.denom().is_one() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

/// A polynomial with exact rational coefficients in ascending degree
/// order. The zero polynomial stores an empty coefficient vector.
#[derive(Clone, PartialEq, Eq)]
pub struct RationalPoly {
    coeffs: Vec<Rational>,
}

impl fmt::Debug for RationalPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.coeffs.is_empty() {
            return write!(f, "0");
        }
        let terms: Vec<String> = self
            .coeffs
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(|(i, c)| match i {
                0 => format_rational(c),
                1 => format!("{}*U", format_rational(c)),
                _ => format!("{}*U^{}", format_rational(c), i),
            })
            .collect();
        write!(f, "{}", terms.join(" + "))
    }
}

impl RationalPoly {
    pub fn zero() -> Self {
        RationalPoly { coeffs: vec![] }
    }

    pub fn constant(c: Rational) -> Self {
        Self::from_coeffs(vec![c])
    }

    pub fn one() -> Self {
        Self::constant(Rational::one())
    }

    /// The monomial coeff * U^degree.
    pub fn monomial(coeff: Rational, degree: usize) -> Self {
        if coeff.is_zero() {
            return Self::zero();
        }
        let mut coeffs = vec![Rational::zero(); degree + 1];
        coeffs[degree] = coeff;
        RationalPoly { coeffs }
    }

    /// U itself.
    pub fn var() -> Self {
        Self::monomial(Rational::one(), 1)
    }

    pub fn from_coeffs(mut coeffs: Vec<Rational>) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        RationalPoly { coeffs }
    }

    pub fn coeffs(&self) -> &[Rational] {
        &self.coeffs
    }

    /// Coefficient of U^i (zero beyond the stored degree).
    pub fn coeff(&self, i: usize) -> Rational {
        self.coeffs.get(i).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// None for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn eval(&self, x: &Rational) -> Rational {
        let mut acc = Rational::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc * x + c;
        }
        acc
    }

    pub fn eval_f64(&self, x: f64) -> f64 {
        let mut acc = 0.0;
        for c in self.coeffs.iter().rev() {
            acc = acc * x + rational_to_f64(c);
        }
        acc
    }

    pub fn derivative(&self) -> RationalPoly {
        if self.coeffs.len() <= 1 {
            return Self::zero();
        }
        let coeffs = self
            .coeffs
            .iter()
            .enumerate()
            .skip(1)
            .map(|(i, c)| c * Rational::from(BigInt::from(i)))
            .collect();
        Self::from_coeffs(coeffs)
    }

    pub fn scale(&self, k: &Rational) -> RationalPoly {
        if k.is_zero() {
            return Self::zero();
        }
        RationalPoly {
            coeffs: self.coeffs.iter().map(|c| c * k).collect(),
        }
    }

    pub fn add(&self, other: &RationalPoly) -> RationalPoly {
        let n = self.coeffs.len().max(other.coeffs.len());
        let coeffs = (0..n).map(|i| self.coeff(i) + other.coeff(i)).collect();
        Self::from_coeffs(coeffs)
    }

    pub fn sub(&self, other: &RationalPoly) -> RationalPoly {
        let n = self.coeffs.len().max(other.coeffs.len());
        let coeffs = (0..n).map(|i| self.coeff(i) - other.coeff(i)).collect();
        Self::from_coeffs(coeffs)
    }

    pub fn neg(&self) -> RationalPoly {
        RationalPoly {
            coeffs: self.coeffs.iter().map(|c| -c).collect(),
        }
    }

    pub fn mul(&self, other: &RationalPoly) -> RationalPoly {
        if self.is_zero() || other.is_zero() {
            return Self::zero();
        }
        let mut coeffs = vec![Rational::zero(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                coeffs[i + j] += a * b;
            }
        }
        Self::from_coeffs(coeffs)
    }

    /// Substitutes `inner` for U.
    pub fn compose(&self, inner: &RationalPoly) -> RationalPoly {
        let mut acc = RationalPoly::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc.mul(inner).add(&RationalPoly::constant(c.clone()));
        }
        acc
    }

    /// Euclidean division: self = q * d + r with deg r < deg d.
    pub fn divrem(&self, d: &RationalPoly) -> (RationalPoly, RationalPoly) {
        assert!(!d.is_zero(), "division by the zero polynomial");
        let dd = d.degree().unwrap();
        let lead = d.coeffs.last().unwrap().clone();
        let mut r = self.coeffs.clone();
        let mut q = vec![Rational::zero(); self.coeffs.len().saturating_sub(dd)];
        while r.len() > dd {
            let k = r.len() - 1 - dd;
            let factor = r.last().unwrap() / &lead;
            if !factor.is_zero() {
                for (i, c) in d.coeffs.iter().enumerate() {
                    let idx = k + i;
                    let sub = c * &factor;
                    r[idx] -= sub;
                }
                q[k] = factor;
            }
            r.pop();
            while r.last().is_some_and(|c| c.is_zero()) {
                r.pop();
            }
            if r.len() <= dd {
                break;
            }
        }
        (Self::from_coeffs(q), Self::from_coeffs(r))
    }

    /// Removes a known rational root once: self / (U - root). Panics if
    /// root is not actually a root.
    pub fn deflate(&self, root: &Rational) -> RationalPoly {
        let divisor = RationalPoly::from_coeffs(vec![-root.clone(), Rational::one()]);
        let (q, r) = self.divrem(&divisor);
        assert!(r.is_zero(), "deflate called with a non-root");
        q
    }

    /// Monic gcd with `other`, computed over primitive integer
    /// polynomials so coefficients stay small at high degree.
    pub fn gcd(&self, other: &RationalPoly) -> RationalPoly {
        fn monic(p: IntPoly) -> RationalPoly {
            let lead = Rational::from(p.leading().clone());
            let coeffs = p.coeffs.iter().map(|c| Rational::from(c.clone())).collect();
            RationalPoly::from_coeffs(coeffs).scale(&(Rational::one() / lead))
        }
        let a = IntPoly::from_rational(self);
        let b = IntPoly::from_rational(other);
        if a.is_zero() && b.is_zero() {
            return RationalPoly::zero();
        }
        if a.is_zero() {
            return monic(b);
        }
        if b.is_zero() {
            return monic(a);
        }
        monic(int_gcd(a, b))
    }

    /// self / gcd(self, self'): same roots, all simple.
    pub fn squarefree_part(&self) -> RationalPoly {
        if self.is_zero() || self.degree() == Some(0) {
            return self.clone();
        }
        let g = self.gcd(&self.derivative());
        if g.degree() == Some(0) {
            return self.clone();
        }
        let (q, _) = self.divrem(&g);
        q
    }

    pub fn to_strings(&self) -> Vec<String> {
        self.coeffs.iter().map(format_rational).collect()
    }

    pub fn from_strings<S: AsRef<str>>(strs: &[S]) -> Result<Self, ExactPolyError> {
        let coeffs = strs
            .iter()
            .map(|s| parse_rational(s.as_ref()))
            .collect::<Result<Vec<_>, _>>()?;
        Ok(Self::from_coeffs(coeffs))
    }
}

/// Exact conversion of a big rational to the nearest f64. Good to a ulp
/// for the magnitudes this crate touches; used only on numeric pathways.
pub fn rational_to_f64(r: &Rational) -> f64 {
    num_traits::ToPrimitive::to_f64(r).unwrap_or(f64::NAN)
}

/// Exact conversion of a finite f64 into a rational (binary expansion).
pub fn f64_to_rational(x: f64) -> Rational {
    num_rational::BigRational::from_float(x).expect("finite float")
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, serde::Serialize, serde::Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum SignKind {
    StrictlyPositive,
    StrictlyNegative,
    HasZero,
    MixedSign,
}

/// Outcome of certified sign determination on a closed interval. The
/// witness locates the deciding zero or minority sign; for an irrational
/// touching zero it is the midpoint of that root's isolating interval.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SignVerdict {
    pub kind: SignKind,
    pub witness: Option<Rational>,
}

impl SignVerdict {
    fn strict(sign: Ordering) -> Self {
        let kind = match sign {
            Ordering::Greater => SignKind::StrictlyPositive,
            Ordering::Less => SignKind::StrictlyNegative,
            Ordering::Equal => unreachable!("strict verdict from zero sign"),
        };
        SignVerdict { kind, witness: None }
    }

    pub fn is_strictly_positive(&self) -> bool {
        self.kind == SignKind::StrictlyPositive
    }
}

/// Primitive integer polynomial: ascending coefficients, content 1,
/// trailing coefficient nonzero. Shares roots and pointwise signs with
/// the rational polynomial it came from (positive rescaling only).
#[derive(Debug, Clone, PartialEq, Eq)]
struct IntPoly {
    coeffs: Vec<BigInt>,
}

impl IntPoly {
    fn from_rational(p: &RationalPoly) -> Self {
        if p.is_zero() {
            return IntPoly { coeffs: vec![] };
        }
        let mut lcm = BigInt::one();
        for c in p.coeffs() {
            lcm = lcm.lcm(c.denom());
        }
        let ints: Vec<BigInt> = p
            .coeffs()
            .iter()
            .map(|c| c.numer() * (&lcm / c.denom()))
            .collect();
        IntPoly { coeffs: ints }.into_primitive()
    }

    fn into_primitive(mut self) -> Self {
        let mut content = BigInt::zero();
        for c in &self.coeffs {
            content = content.gcd(c);
            if content.is_one() {
                break;
            }
        }
        if !content.is_zero() && !content.is_one() {
            for c in &mut self.coeffs {
                *c /= &content;
            }
        }
        while self.coeffs.last().is_some_and(|c| c.is_zero()) {
            self.coeffs.pop();
        }
        self
    }

    fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    fn degree(&self) -> usize {
        self.coeffs.len().saturating_sub(1)
    }

    fn leading(&self) -> &BigInt {
        self.coeffs.last().expect("nonzero polynomial")
    }

    fn derivative(&self) -> IntPoly {
        if self.coeffs.len() <= 1 {
            return IntPoly { coeffs: vec![] };
        }
        let coeffs = self
            .coeffs
            .iter()
            .enumerate()
            .skip(1)
            .map(|(i, c)| c * BigInt::from(i))
            .collect();
        IntPoly { coeffs }.into_primitive()
    }

    /// Sign of the value at a/b with b > 0, via homogeneous Horner.
    fn sign_at(&self, num: &BigInt, den: &BigInt) -> Ordering {
        if self.is_zero() {
            return Ordering::Equal;
        }
        let mut acc = BigInt::zero();
        let mut den_pow = BigInt::one();
        // sum c_i * num^i * den^(d-i), built from the top down
        for c in self.coeffs.iter().rev() {
            acc = acc * num + c * &den_pow;
            den_pow *= den;
        }
        // the last den_pow update overshoots by one factor; harmless for sign
        match acc.sign() {
            Sign::Plus => Ordering::Greater,
            Sign::Minus => Ordering::Less,
            Sign::NoSign => Ordering::Equal,
        }
    }

    fn sign_at_rational(&self, x: &Rational) -> Ordering {
        self.sign_at(x.numer(), x.denom())
    }
}

/// Pseudo-remainder with positive-scaling bookkeeping: returns r and a
/// flag telling whether r equals (a mod b) times a POSITIVE constant.
fn pseudo_rem(a: &IntPoly, b: &IntPoly) -> (IntPoly, bool) {
    let d = b.degree();
    let lb = b.leading().clone();
    let mut r = a.coeffs.clone();
    let mut iterations: u32 = 0;
    while r.len() > d && !r.is_empty() {
        let lr = r.last().unwrap().clone();
        let k = r.len() - 1 - d;
        if !lr.is_zero() {
            for c in r.iter_mut() {
                *c *= &lb;
            }
            for (i, bc) in b.coeffs.iter().enumerate() {
                r[k + i] -= bc * &lr;
            }
            iterations += 1;
        }
        r.pop();
        while r.last().is_some_and(|c| c.is_zero()) {
            r.pop();
        }
    }
    let positive_multiplier = lb.sign() != Sign::Minus || iterations % 2 == 0;
    (IntPoly { coeffs: r }.into_primitive(), positive_multiplier)
}

/// Primitive gcd of two nonzero integer polynomials via primitive PRS.
fn int_gcd(mut a: IntPoly, mut b: IntPoly) -> IntPoly {
    if a.degree() < b.degree() {
        std::mem::swap(&mut a, &mut b);
    }
    loop {
        let (r, _) = pseudo_rem(&a, &b);
        if r.is_zero() {
            return b;
        }
        if r.degree() == 0 {
            return IntPoly {
                coeffs: vec![BigInt::one()],
            };
        }
        a = b;
        b = r;
    }
}

/// Sturm chain of a primitive integer polynomial (primitive PRS).
fn sturm_chain(p: &IntPoly) -> Vec<IntPoly> {
    let mut chain = vec![p.clone()];
    if p.degree() == 0 {
        return chain;
    }
    chain.push(p.derivative());
    loop {
        let n = chain.len();
        let a = &chain[n - 2];
        let b = &chain[n - 1];
        if b.is_zero() {
            chain.pop();
            break;
        }
        if b.degree() == 0 {
            break;
        }
        let (rem, positive) = pseudo_rem(a, b);
        if rem.is_zero() {
            break;
        }
        let next = if positive {
            IntPoly {
                coeffs: rem.coeffs.iter().map(|c| -c).collect(),
            }
        } else {
            rem
        };
        chain.push(next);
    }
    chain
}

/// Sign variations of the chain at x, ignoring zeros.
fn variations_at(chain: &[IntPoly], x: &Rational) -> usize {
    let mut count = 0;
    let mut last: Option<Ordering> = None;
    for p in chain {
        let s = p.sign_at_rational(x);
        if s == Ordering::Equal {
            continue;
        }
        if let Some(prev) = last {
            if prev != s {
                count += 1;
            }
        }
        last = Some(s);
    }
    count
}

/// Interior machinery shared by the public operations: a squarefree
/// primitive polynomial with its Sturm chain, supporting exact root
/// counting on intervals whose endpoints are not roots.
struct SturmContext {
    poly: IntPoly,
    chain: Vec<IntPoly>,
}

impl SturmContext {
    fn new(q: &RationalPoly) -> Self {
        let poly = IntPoly::from_rational(q);
        let chain = sturm_chain(&poly);
        SturmContext { poly, chain }
    }

    /// Roots in open (lo, hi); requires poly(lo) != 0 != poly(hi).
    fn count_open(&self, lo: &Rational, hi: &Rational) -> usize {
        variations_at(&self.chain, lo).saturating_sub(variations_at(&self.chain, hi))
    }

    fn sign_at(&self, x: &Rational) -> Ordering {
        self.poly.sign_at_rational(x)
    }
}

/// Number of distinct real roots of p in the closed interval [lo, hi].
///
/// Endpoint roots are found by exact evaluation and deflated out; the
/// interior is counted by the generalized Sturm (signed pseudo-remainder)
/// chain, which counts distinct roots even for non-squarefree input.
pub fn sturm_count(
    p: &RationalPoly,
    lo: &Rational,
    hi: &Rational,
) -> Result<usize, ExactPolyError> {
    if p.is_zero() {
        return Err(ExactPolyError::Indeterminate);
    }
    if lo >= hi {
        return Err(ExactPolyError::EmptyInterval {
            lo: format_rational(lo),
            hi: format_rational(hi),
        });
    }
    let mut q = p.clone();
    let mut endpoint_roots = 0;
    for e in [lo, hi] {
        if !q.eval(e).is_zero() {
            continue;
        }
        endpoint_roots += 1;
        while q.eval(e).is_zero() {
            q = q.deflate(e);
        }
    }
    if q.degree().map_or(true, |d| d == 0) {
        return Ok(endpoint_roots);
    }
    let ctx = SturmContext::new(&q);
    Ok(endpoint_roots + ctx.count_open(lo, hi))
}

/// Isolates the distinct real roots of p in [lo, hi]: returns disjoint
/// closed intervals, one root each, sorted, each of width at most
/// `precision` (default 2^-40 of the interval length). Point intervals
/// mark exact rational roots.
pub fn isolate_roots(
    p: &RationalPoly,
    lo: &Rational,
    hi: &Rational,
    precision: Option<&Rational>,
) -> Result<Vec<(Rational, Rational)>, ExactPolyError> {
    if p.is_zero() {
        return Err(ExactPolyError::Indeterminate);
    }
    if lo >= hi {
        return Err(ExactPolyError::EmptyInterval {
            lo: format_rational(lo),
            hi: format_rational(hi),
        });
    }
    let eps = match precision {
        Some(e) => {
            if e <= &Rational::zero() {
                return Err(ExactPolyError::BadPrecision(format_rational(e)));
            }
            e.clone()
        }
        None => (hi - lo) / Rational::from(BigInt::one() << 40),
    };

    let mut q = p.squarefree_part();
    let mut roots: Vec<(Rational, Rational)> = vec![];
    for e in [lo, hi] {
        if q.eval(e).is_zero() {
            roots.push((e.clone(), e.clone()));
            q = q.deflate(e);
        }
    }

    if q.degree().map_or(false, |d| d >= 1) {
        let mut ctx = SturmContext::new(&q);
        let mut stack: Vec<(Rational, Rational)> = vec![(lo.clone(), hi.clone())];
        while let Some((a, b)) = stack.pop() {
            let n = ctx.count_open(&a, &b);
            if n == 0 {
                continue;
            }
            if n == 1 {
                roots.push(refine_single_root(&ctx, a, b, &eps));
                continue;
            }
            let mid = (&a + &b) / rat(2, 1);
            if ctx.sign_at(&mid) == Ordering::Equal {
                roots.push((mid.clone(), mid.clone()));
                q = q.deflate(&mid);
                if q.degree().map_or(true, |d| d == 0) {
                    continue;
                }
                ctx = SturmContext::new(&q);
            }
            stack.push((a, mid.clone()));
            stack.push((mid, b));
        }
    }

    roots.sort_by(|x, y| x.0.cmp(&y.0));
    Ok(roots)
}

/// Plain sign bisection once an interval is known to hold exactly one
/// simple root strictly inside.
fn refine_single_root(
    ctx: &SturmContext,
    mut a: Rational,
    mut b: Rational,
    eps: &Rational,
) -> (Rational, Rational) {
    let sa = ctx.sign_at(&a);
    debug_assert_ne!(sa, Ordering::Equal);
    debug_assert_ne!(ctx.sign_at(&b), Ordering::Equal);
    debug_assert_ne!(sa, ctx.sign_at(&b), "single simple root must flip sign");
    while &(&b - &a) > eps {
        let mid = (&a + &b) / rat(2, 1);
        match ctx.sign_at(&mid) {
            Ordering::Equal => return (mid.clone(), mid),
            s if s == sa => a = mid,
            _ => b = mid,
        }
    }
    (a, b)
}

/// Certified sign classification of p on the closed interval [lo, hi].
pub fn sign_on_interval(
    p: &RationalPoly,
    lo: &Rational,
    hi: &Rational,
) -> Result<SignVerdict, ExactPolyError> {
    if p.is_zero() {
        return Ok(SignVerdict {
            kind: SignKind::HasZero,
            witness: Some(lo.clone()),
        });
    }
    if lo > hi {
        return Err(ExactPolyError::EmptyInterval {
            lo: format_rational(lo),
            hi: format_rational(hi),
        });
    }
    if lo == hi {
        let v = p.eval(lo);
        return Ok(match v.cmp(&Rational::zero()) {
            Ordering::Equal => SignVerdict {
                kind: SignKind::HasZero,
                witness: Some(lo.clone()),
            },
            s => SignVerdict::strict(s),
        });
    }

    let count = sturm_count(p, lo, hi)?;
    if count == 0 {
        let mid = (lo + hi) / rat(2, 1);
        let s_lo = p.eval(lo).cmp(&Rational::zero());
        let s_mid = p.eval(&mid).cmp(&Rational::zero());
        let s_hi = p.eval(hi).cmp(&Rational::zero());
        assert!(
            s_lo == s_mid && s_mid == s_hi && s_lo != Ordering::Equal,
            "zero roots must force one strict sign"
        );
        return Ok(SignVerdict::strict(s_lo));
    }

    // p vanishes somewhere: sample strict signs between and around the
    // isolated roots to decide touching versus crossing.
    let intervals = isolate_roots(p, lo, hi, None)?;
    let mut samples: Vec<Rational> = vec![];
    if p.eval(lo) != Rational::zero() {
        samples.push(lo.clone());
    }
    if p.eval(hi) != Rational::zero() {
        samples.push(hi.clone());
    }
    for w in intervals.windows(2) {
        samples.push((&w[0].1 + &w[1].0) / rat(2, 1));
    }
    let mut pos: Option<Rational> = None;
    let mut neg: Option<Rational> = None;
    for s in samples {
        match p.eval(&s).cmp(&Rational::zero()) {
            Ordering::Greater => pos.get_or_insert(s),
            Ordering::Less => neg.get_or_insert(s),
            Ordering::Equal => continue,
        };
    }
    if let (Some(_), Some(n)) = (&pos, &neg) {
        return Ok(SignVerdict {
            kind: SignKind::MixedSign,
            witness: Some(n.clone()),
        });
    }
    // touching zeros only: witness the first root, exactly if rational
    let (a, b) = &intervals[0];
    let witness = if a == b {
        a.clone()
    } else {
        let candidate = simplest_rational_between(a, b);
        if p.eval(&candidate).is_zero() {
            candidate
        } else {
            (a + b) / rat(2, 1)
        }
    };
    Ok(SignVerdict {
        kind: SignKind::HasZero,
        witness: Some(witness),
    })
}

/// The rational with the smallest denominator (then smallest numerator
/// magnitude) in the closed interval [lo, hi]. Used to recover an exact
/// rational root from a tight isolating interval.
pub fn simplest_rational_between(lo: &Rational, hi: &Rational) -> Rational {
    assert!(lo <= hi);
    let zero = Rational::zero();
    if lo <= &zero && &zero <= hi {
        return zero;
    }
    if hi < &zero {
        return -simplest_rational_between(&-hi.clone(), &-lo.clone());
    }
    // 0 < lo <= hi
    let fl = lo.floor();
    let ceil_lo = lo.ceil();
    if &ceil_lo <= &hi.floor() {
        return ceil_lo;
    }
    if lo == hi {
        return lo.clone();
    }
    // strictly inside one integer gap: recurse on the inverted fractional parts
    let frac_lo = lo - &fl;
    let frac_hi = hi - &fl;
    let inner = simplest_rational_between(
        &(Rational::one() / frac_hi),
        &(Rational::one() / frac_lo),
    );
    fl + Rational::one() / inner
}
