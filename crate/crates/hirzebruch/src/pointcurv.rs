//! Pointwise Kahler curvature: dense curvature tensors with their index
//! symmetries, holomorphic sectional curvature along directions and its
//! extrema over the unit sphere, orthogonal bisectional minima, the
//! classical pinching bounds (Berger, Bishop-Goldberg, products), the
//! flag three-fold tensor, and numerically induced curvature of
//! bidegree (p,1) hypersurfaces in CP^r x CP^s.
//!
//! Directions are complex vectors x in C^m; the sectional value along x
//! is H(x) = sum R_{a b-bar c d-bar} x_a conj(x_b) x_c conj(x_d) / |x|^4.
//! For a pair (x, y) the bisectional value B(x, y) = sum R x xbar y ybar
//! is invariant under separate phases of x and y, so it depends on the
//! pair only through |<x, y>| = cos(theta); Hermitian-orthogonal pairs
//! are the theta = pi/2 slice.

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::de::Error as _;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

type C = Complex64;

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum PointCurvError {
    #[error("direction must be nonzero")]
    ZeroVector,
    #[error("parameters out of range: {0}")]
    OutOfRange(String),
    #[error("metric is singular or not positive definite at the point")]
    SingularMetric,
    #[error("finite differences disagree across step halving: max gap {0:e}")]
    StepCheckFailed(f64),
}

/// Kahler curvature tensor at a point, stored densely over all of
/// (a, b, c, d) in [0, m)^4 so lookups need no orbit logic. Writers go
/// through [`KahlerCurvatureTensor::set_sym`], which fills the full
/// symmetry orbit: R_{ab̄cd̄} = R_{cb̄ad̄} = R_{ad̄cb̄} = R_{cd̄ab̄} and
/// R_{ab̄cd̄} = conj(R_{bādc̄}).
#[derive(Debug, Clone, PartialEq)]
pub struct KahlerCurvatureTensor {
    dim: usize,
    comp: Vec<C>,
}

impl KahlerCurvatureTensor {
    pub fn new(dim: usize) -> Self {
        KahlerCurvatureTensor {
            dim,
            comp: vec![C::new(0.0, 0.0); dim * dim * dim * dim],
        }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    #[inline]
    fn at(&self, a: usize, b: usize, c: usize, d: usize) -> usize {
        ((a * self.dim + b) * self.dim + c) * self.dim + d
    }

    /// R_{a b-bar c d-bar}, zero-indexed.
    #[inline]
    pub fn get(&self, a: usize, b: usize, c: usize, d: usize) -> C {
        self.comp[self.at(a, b, c, d)]
    }

    /// Writes the value and its seven symmetry images. Entries whose
    /// conjugation image falls inside their own linear orbit are forced
    /// real (the tensor of a Kahler metric has no freedom there); the
    /// imaginary part is dropped in that case.
    pub fn set_sym(&mut self, a: usize, b: usize, c: usize, d: usize, v: C) {
        let linear = [(a, b, c, d), (c, b, a, d), (a, d, c, b), (c, d, a, b)];
        let conjed = [(b, a, d, c), (d, a, b, c), (b, c, d, a), (d, c, b, a)];
        let v = if conjed.iter().any(|i| linear.contains(i)) {
            C::new(v.re, 0.0)
        } else {
            v
        };
        for &(a, b, c, d) in &linear {
            let i = self.at(a, b, c, d);
            self.comp[i] = v;
        }
        let vc = v.conj();
        for &(a, b, c, d) in &conjed {
            let i = self.at(a, b, c, d);
            self.comp[i] = vc;
        }
    }

    /// Ricci component R_{a b-bar} = sum_c R_{a b-bar c c-bar}.
    pub fn ricci(&self, a: usize, b: usize) -> C {
        (0..self.dim).map(|c| self.get(a, b, c, c)).sum()
    }

    /// H along x (see module docs). Errors on the zero vector.
    pub fn h_of_direction(&self, x: &[C]) -> Result<f64, PointCurvError> {
        let norm2: f64 = x.iter().map(|z| z.norm_sqr()).sum();
        if !(norm2 > 0.0) {
            return Err(PointCurvError::ZeroVector);
        }
        Ok(self.quartic(x) / (norm2 * norm2))
    }

    /// The (real) numerator sum R x xbar x xbar.
    fn quartic(&self, x: &[C]) -> f64 {
        let m = self.dim;
        let mut acc = C::new(0.0, 0.0);
        for a in 0..m {
            for b in 0..m {
                let xa_xb = x[a] * x[b].conj();
                for c in 0..m {
                    for d in 0..m {
                        acc += self.get(a, b, c, d) * xa_xb * x[c] * x[d].conj();
                    }
                }
            }
        }
        acc.re
    }

    /// Bisectional numerator sum R x xbar y ybar (real by symmetry).
    fn bisectional(&self, x: &[C], y: &[C]) -> f64 {
        let m = self.dim;
        let mut acc = C::new(0.0, 0.0);
        for a in 0..m {
            for b in 0..m {
                let xa_xb = x[a] * x[b].conj();
                for c in 0..m {
                    for d in 0..m {
                        acc += self.get(a, b, c, d) * xa_xb * y[c] * y[d].conj();
                    }
                }
            }
        }
        acc.re
    }

    /// Gradient of the quartic against conj(x): 2 sum R_{a q-bar c d-bar}
    /// x_a x_c conj(x_d); the Wirtinger gradient of H's numerator.
    fn quartic_grad(&self, x: &[C]) -> Vec<C> {
        let m = self.dim;
        let mut g = vec![C::new(0.0, 0.0); m];
        for q in 0..m {
            let mut acc = C::new(0.0, 0.0);
            for a in 0..m {
                for c in 0..m {
                    let xa_xc = x[a] * x[c];
                    for d in 0..m {
                        acc += self.get(a, q, c, d) * xa_xc * x[d].conj();
                    }
                }
            }
            g[q] = 2.0 * acc;
        }
        g
    }
}

/// One canonical nonzero component for serialization, 1-indexed.
#[derive(Debug, Clone, Serialize, Deserialize)]
struct TensorComponent {
    idx: [usize; 4],
    re: f64,
    im: f64,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
struct TensorJson {
    dim: usize,
    components: Vec<TensorComponent>,
}

impl Serialize for KahlerCurvatureTensor {
    fn serialize<S: Serializer>(&self, ser: S) -> Result<S::Ok, S::Error> {
        let m = self.dim;
        let mut components = vec![];
        for a in 0..m {
            for b in 0..m {
                for c in 0..m {
                    for d in 0..m {
                        let orbit = [
                            (a, b, c, d),
                            (c, b, a, d),
                            (a, d, c, b),
                            (c, d, a, b),
                            (b, a, d, c),
                            (d, a, b, c),
                            (b, c, d, a),
                            (d, c, b, a),
                        ];
                        if orbit.iter().min() != Some(&(a, b, c, d)) {
                            continue;
                        }
                        let v = self.get(a, b, c, d);
                        if v.norm_sqr() == 0.0 {
                            continue;
                        }
                        components.push(TensorComponent {
                            idx: [a + 1, b + 1, c + 1, d + 1],
                            re: v.re,
                            im: v.im,
                        });
                    }
                }
            }
        }
        TensorJson {
            dim: m,
            components,
        }
        .serialize(ser)
    }
}

impl<'de> Deserialize<'de> for KahlerCurvatureTensor {
    fn deserialize<D: Deserializer<'de>>(de: D) -> Result<Self, D::Error> {
        let raw = TensorJson::deserialize(de)?;
        let mut t = KahlerCurvatureTensor::new(raw.dim);
        for comp in raw.components {
            for (i, v) in comp.idx.iter().enumerate() {
                if *v == 0 || *v > raw.dim {
                    return Err(D::Error::custom(format!(
                        "index {} of component {i} out of range",
                        v
                    )));
                }
            }
            let [a, b, c, d] = comp.idx;
            t.set_sym(a - 1, b - 1, c - 1, d - 1, C::new(comp.re, comp.im));
        }
        Ok(t)
    }
}

/// Curvature of the flag three-fold, the bidegree (1,1) hypersurface in
/// CP^2 x CP^2, in its natural unitary frame: R_{11̄11̄} = 1,
/// R_{22̄22̄} = R_{33̄33̄} = 2, R_{11̄22̄} = R_{11̄33̄} = 1/2,
/// R_{22̄33̄} = -1/2. Kahler-Einstein with Ricci = 2 id; H ranges over
/// [1/2, 2].
pub fn flag_tensor() -> KahlerCurvatureTensor {
    let mut t = KahlerCurvatureTensor::new(3);
    let r = |v: f64| C::new(v, 0.0);
    t.set_sym(0, 0, 0, 0, r(1.0));
    t.set_sym(1, 1, 1, 1, r(2.0));
    t.set_sym(2, 2, 2, 2, r(2.0));
    t.set_sym(0, 0, 1, 1, r(0.5));
    t.set_sym(0, 0, 2, 2, r(0.5));
    t.set_sym(1, 1, 2, 2, r(-0.5));
    t
}

/// Fubini-Study-type tensor with constant H = h_max:
/// R_{ab̄cd̄} = (h_max/2)(delta_ab delta_cd + delta_ad delta_cb).
pub fn fs_tensor(dim: usize, h_max: f64) -> KahlerCurvatureTensor {
    let mut t = KahlerCurvatureTensor::new(dim);
    let c = h_max / 2.0;
    for a in 0..dim {
        for b in 0..dim {
            let v = if a == b { 2.0 * c } else { c };
            t.set_sym(a, a, b, b, C::new(v, 0.0));
        }
    }
    t
}

/// Product metric: block sums, all mixed components zero.
pub fn product_tensor(
    t1: &KahlerCurvatureTensor,
    t2: &KahlerCurvatureTensor,
) -> KahlerCurvatureTensor {
    let (m1, m2) = (t1.dim, t2.dim);
    let mut t = KahlerCurvatureTensor::new(m1 + m2);
    for a in 0..m1 {
        for b in 0..m1 {
            for c in 0..m1 {
                for d in 0..m1 {
                    let v = t1.get(a, b, c, d);
                    if v.norm_sqr() != 0.0 {
                        let i = t.at(a, b, c, d);
                        t.comp[i] = v;
                    }
                }
            }
        }
    }
    for a in 0..m2 {
        for b in 0..m2 {
            for c in 0..m2 {
                for d in 0..m2 {
                    let v = t2.get(a, b, c, d);
                    if v.norm_sqr() != 0.0 {
                        let i = t.at(m1 + a, m1 + b, m1 + c, m1 + d);
                        t.comp[i] = v;
                    }
                }
            }
        }
    }
    t
}

/// Extrema of H over the unit sphere with the witnesses that attain them.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct DirectionExtrema {
    pub min: f64,
    pub max: f64,
    pub argmin: Vec<(f64, f64)>,
    pub argmax: Vec<(f64, f64)>,
}

fn random_unit(rng: &mut ChaCha8Rng, m: usize) -> Vec<C> {
    loop {
        let v: Vec<C> = (0..m)
            .map(|_| C::new(rng.gen::<f64>() - 0.5, rng.gen::<f64>() - 0.5))
            .collect();
        let n: f64 = v.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
        if n > 1e-3 {
            return v.iter().map(|z| z / n).collect();
        }
    }
}

fn normalize(x: &mut [C]) -> bool {
    let n: f64 = x.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
    if n <= 1e-12 {
        return false;
    }
    for z in x.iter_mut() {
        *z /= n;
    }
    true
}

/// Projected-gradient polish of H from x0, sign = +1 for ascent,
/// -1 for descent. Backtracking step control, at most iters rounds.
fn refine_direction(
    t: &KahlerCurvatureTensor,
    x0: &[C],
    sign: f64,
    iters: usize,
) -> (f64, Vec<C>) {
    let mut x = x0.to_vec();
    let mut val = t.quartic(&x);
    let mut eta = 0.05;
    for _ in 0..iters {
        let g = t.quartic_grad(&x);
        // remove the radial component; the phase direction carries no
        // gradient because <g, x> is real (it equals 2 * quartic)
        let gx: f64 = g
            .iter()
            .zip(x.iter())
            .map(|(gq, xq)| (gq * xq.conj()).re)
            .sum();
        let proj: Vec<C> = g.iter().zip(x.iter()).map(|(gq, xq)| gq - gx * xq).collect();
        let gnorm: f64 = proj.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
        if gnorm < 1e-14 {
            break;
        }
        let mut improved = false;
        while eta > 1e-15 {
            let mut cand: Vec<C> = x
                .iter()
                .zip(proj.iter())
                .map(|(xq, pq)| xq + sign * eta * pq)
                .collect();
            if !normalize(&mut cand) {
                eta *= 0.5;
                continue;
            }
            let cv = t.quartic(&cand);
            if sign * (cv - val) > 0.0 {
                x = cand;
                val = cv;
                improved = true;
                eta *= 1.5;
                break;
            }
            eta *= 0.5;
        }
        if !improved {
            break;
        }
    }
    (val, x)
}

/// Extrema of H by seeded unit-sphere sampling followed by projected
/// gradient from the best candidates. Deterministic for a fixed seed.
pub fn h_extrema(
    t: &KahlerCurvatureTensor,
    samples: usize,
    refine_iters: usize,
    seed: u64,
) -> DirectionExtrema {
    let m = t.dim;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut best_min = (f64::INFINITY, vec![C::new(0.0, 0.0); m]);
    let mut best_max = (f64::NEG_INFINITY, vec![C::new(0.0, 0.0); m]);
    // coordinate axes first: exact critical points in the tests' tensors
    let mut candidates: Vec<Vec<C>> = (0..m)
        .map(|i| {
            let mut e = vec![C::new(0.0, 0.0); m];
            e[i] = C::new(1.0, 0.0);
            e
        })
        .collect();
    candidates.extend((0..samples.max(1)).map(|_| random_unit(&mut rng, m)));
    for x in &candidates {
        let v = t.quartic(x);
        if v < best_min.0 {
            best_min = (v, x.clone());
        }
        if v > best_max.0 {
            best_max = (v, x.clone());
        }
    }
    let (min, argmin) = refine_direction(t, &best_min.1, -1.0, refine_iters);
    let (max, argmax) = refine_direction(t, &best_max.1, 1.0, refine_iters);
    DirectionExtrema {
        min,
        max,
        argmin: argmin.iter().map(|z| (z.re, z.im)).collect(),
        argmax: argmax.iter().map(|z| (z.re, z.im)).collect(),
    }
}

/// Minimum of the bisectional value over Hermitian-orthogonal unit
/// pairs, by seeded sampling with local pairwise descent.
pub fn orthogonal_bisectional_min(
    t: &KahlerCurvatureTensor,
    samples: usize,
    seed: u64,
) -> f64 {
    let m = t.dim;
    assert!(m >= 2, "needs at least two complex dimensions");
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let orthogonalize = |x: &[C], y: &mut Vec<C>| -> bool {
        let inner: C = y.iter().zip(x.iter()).map(|(yq, xq)| yq * xq.conj()).sum();
        for (yq, xq) in y.iter_mut().zip(x.iter()) {
            *yq -= inner * xq;
        }
        normalize(y)
    };
    let mut best = (f64::INFINITY, vec![], vec![]);
    for i in 0..samples.max(1) + m * (m - 1) {
        let (x, mut y) = if i < m * (m - 1) {
            // axis pairs first
            let a = i / (m - 1);
            let mut b = i % (m - 1);
            if b >= a {
                b += 1;
            }
            let mut ex = vec![C::new(0.0, 0.0); m];
            ex[a] = C::new(1.0, 0.0);
            let mut ey = vec![C::new(0.0, 0.0); m];
            ey[b] = C::new(1.0, 0.0);
            (ex, ey)
        } else {
            (random_unit(&mut rng, m), random_unit(&mut rng, m))
        };
        if !orthogonalize(&x, &mut y) {
            continue;
        }
        let v = t.bisectional(&x, &y);
        if v < best.0 {
            best = (v, x, y);
        }
    }
    // local descent: random small perturbations of the best pair
    let (mut val, mut x, mut y) = best;
    let mut radius = 0.1;
    for _ in 0..200 {
        let mut improved = false;
        for _ in 0..16 {
            let mut xc: Vec<C> = x
                .iter()
                .map(|z| {
                    z + radius * C::new(rng.gen::<f64>() - 0.5, rng.gen::<f64>() - 0.5)
                })
                .collect();
            let mut yc: Vec<C> = y
                .iter()
                .map(|z| {
                    z + radius * C::new(rng.gen::<f64>() - 0.5, rng.gen::<f64>() - 0.5)
                })
                .collect();
            if !normalize(&mut xc) || !orthogonalize(&xc, &mut yc) {
                continue;
            }
            let v = t.bisectional(&xc, &yc);
            if v < val {
                val = v;
                x = xc;
                y = yc;
                improved = true;
            }
        }
        if !improved {
            radius *= 0.5;
            if radius < 1e-9 {
                break;
            }
        }
    }
    val
}

/// Berger's bisectional window for lambda-pinched H normalized to
/// max H = 1: lambda - 1/2 + (lambda/2) cos^2 theta <= R(X,JX,JY,Y)
/// <= 1 - lambda/2 + (1/2) cos^2 theta.
pub fn berger_bounds(lambda: f64, cos_theta: f64) -> (f64, f64) {
    let c2 = cos_theta * cos_theta;
    (
        lambda - 0.5 + 0.5 * lambda * c2,
        1.0 - 0.5 * lambda + 0.5 * c2,
    )
}

/// Classical sectional-curvature consequences of lambda-pinched H.
#[derive(Debug, Clone, Copy, Serialize, Deserialize)]
pub struct RiemannianBounds {
    /// [(7 lambda - 5)/8, (4 - lambda)/3]
    pub berger: (f64, f64),
    /// [(3 lambda - 2)/4, 1 - (3/4) lambda]
    pub bishop_goldberg: (f64, f64),
}

pub fn riemannian_bounds(lambda: f64) -> RiemannianBounds {
    RiemannianBounds {
        berger: ((7.0 * lambda - 5.0) / 8.0, (4.0 - lambda) / 3.0),
        bishop_goldberg: ((3.0 * lambda - 2.0) / 4.0, 1.0 - 0.75 * lambda),
    }
}

/// Pinching constant of a product of two metrics with pinchings
/// lambda_1, lambda_2 (each normalized to max H = 1):
/// lambda_1 lambda_2 / (lambda_1 + lambda_2). Equals 1/2 only at
/// lambda_1 = lambda_2 = 1.
pub fn product_pinching(lambda1: f64, lambda2: f64) -> f64 {
    lambda1 * lambda2 / (lambda1 + lambda2)
}

// ---- induced curvature of bidegree (p,1) hypersurfaces ----

/// Holomorphic chart data for the Fermat-type bidegree (p,1)
/// hypersurface sum_{i=0..s} z_i^p w_i = 0 in CP^r x CP^s, solved for
/// w_0 on the chart z_0 = 1, w_1 = 1:
///   z = (1, t_1, ..., t_r), w = (w_0, 1, t_{r+1}, ..., t_{r+s-1}),
///   w_0 = -(t_1^p + sum_{j=2..s} t_j^p t_{r+j-1}).
struct Chart {
    r: usize,
    s: usize,
    p: u32,
}

impl Chart {
    fn n(&self) -> usize {
        self.r + self.s - 1
    }

    /// w-vector and its holomorphic Jacobian d w_0 / d t_k.
    fn w_and_grad(&self, t: &[C]) -> (Vec<C>, Vec<C>) {
        let (r, s, p) = (self.r, self.s, self.p);
        let pf = p as f64;
        let mut w0 = -t[0].powu(p);
        for j in 2..=s {
            w0 -= t[j - 1].powu(p) * t[r + j - 2];
        }
        let mut w = vec![w0, C::new(1.0, 0.0)];
        w.extend((2..=s).map(|j| t[r + j - 2]));
        let mut grad = vec![C::new(0.0, 0.0); self.n()];
        grad[0] = -pf * t[0].powu(p - 1);
        for j in 2..=s {
            grad[j - 1] = -pf * t[j - 1].powu(p - 1) * t[r + j - 2];
            grad[r + j - 2] = -t[j - 1].powu(p);
        }
        (w, grad)
    }

    /// Pulled-back metric g_{k l-bar} of the product Fubini-Study
    /// potential log(1 + |z'|^2) + log(|w|^2) at chart point t.
    fn metric(&self, t: &[C]) -> Vec<Vec<C>> {
        let (r, n) = (self.r, self.n());
        let mut g = vec![vec![C::new(0.0, 0.0); n]; n];
        let a: f64 = 1.0 + t[..r].iter().map(|z| z.norm_sqr()).sum::<f64>();
        for k in 0..r {
            for l in 0..r {
                let delta = if k == l { 1.0 / a } else { 0.0 };
                g[k][l] = delta - t[k].conj() * t[l] / (a * a);
            }
        }
        let (w, grad) = self.w_and_grad(t);
        let b: f64 = w.iter().map(|z| z.norm_sqr()).sum();
        // dW_m/dt_k: m = 0 is grad; m = 1 constant; m >= 2 are chart coords
        let dw = |k: usize, m: usize| -> C {
            if m == 0 {
                grad[k]
            } else if m >= 2 && k == r + m - 2 {
                C::new(1.0, 0.0)
            } else {
                C::new(0.0, 0.0)
            }
        };
        let db: Vec<C> = (0..n)
            .map(|k| (0..w.len()).map(|m| dw(k, m) * w[m].conj()).sum())
            .collect();
        for k in 0..n {
            for l in 0..n {
                let hess: C = (0..w.len()).map(|m| dw(k, m) * dw(l, m).conj()).sum();
                g[k][l] += hess / b - db[k] * db[l].conj() / (b * b);
            }
        }
        g
    }
}

fn mat_mul(a: &[Vec<C>], b: &[Vec<C>]) -> Vec<Vec<C>> {
    let n = a.len();
    let mut out = vec![vec![C::new(0.0, 0.0); n]; n];
    for i in 0..n {
        for j in 0..n {
            let mut acc = C::new(0.0, 0.0);
            for k in 0..n {
                acc += a[i][k] * b[k][j];
            }
            out[i][j] = acc;
        }
    }
    out
}

/// Gauss-Jordan inverse with partial pivoting; None when singular.
fn mat_inv(a: &[Vec<C>]) -> Option<Vec<Vec<C>>> {
    let n = a.len();
    let mut m: Vec<Vec<C>> = a.to_vec();
    let mut inv = vec![vec![C::new(0.0, 0.0); n]; n];
    for (i, row) in inv.iter_mut().enumerate() {
        row[i] = C::new(1.0, 0.0);
    }
    for col in 0..n {
        let pivot = (col..n).max_by(|&i, &j| {
            m[i][col]
                .norm_sqr()
                .partial_cmp(&m[j][col].norm_sqr())
                .unwrap()
        })?;
        if m[pivot][col].norm_sqr() < 1e-24 {
            return None;
        }
        m.swap(col, pivot);
        inv.swap(col, pivot);
        let d = m[col][col];
        for j in 0..n {
            m[col][j] /= d;
            inv[col][j] /= d;
        }
        for i in 0..n {
            if i == col {
                continue;
            }
            let f = m[i][col];
            if f.norm_sqr() == 0.0 {
                continue;
            }
            for j in 0..n {
                let mj = m[col][j];
                let ij = inv[col][j];
                m[i][j] -= f * mj;
                inv[i][j] -= f * ij;
            }
        }
    }
    Some(inv)
}

/// Cholesky factor L (lower) of a Hermitian positive-definite matrix.
fn cholesky(a: &[Vec<C>]) -> Option<Vec<Vec<C>>> {
    let n = a.len();
    let mut l = vec![vec![C::new(0.0, 0.0); n]; n];
    for i in 0..n {
        for j in 0..=i {
            let mut sum = a[i][j];
            for k in 0..j {
                sum -= l[i][k] * l[j][k].conj();
            }
            if i == j {
                if sum.re <= 0.0 {
                    return None;
                }
                l[i][j] = C::new(sum.re.sqrt(), 0.0);
            } else {
                l[i][j] = sum / l[j][j];
            }
        }
    }
    Some(l)
}

/// Lower-triangular inverse.
fn lower_inv(l: &[Vec<C>]) -> Vec<Vec<C>> {
    let n = l.len();
    let mut inv = vec![vec![C::new(0.0, 0.0); n]; n];
    for i in 0..n {
        inv[i][i] = C::new(1.0, 0.0) / l[i][i];
        for j in 0..i {
            let mut acc = C::new(0.0, 0.0);
            for k in j..i {
                acc += l[i][k] * inv[k][j];
            }
            inv[i][j] = -acc / l[i][i];
        }
    }
    inv
}

const FD_OFFSETS: [(f64, f64); 4] = [(-2.0, 1.0), (-1.0, -8.0), (1.0, 8.0), (2.0, -1.0)];

/// Assembles the curvature tensor at one step size; the public entry
/// runs it twice and compares.
fn induced_at_step(
    chart: &Chart,
    point: &[C],
    h: f64,
) -> Result<KahlerCurvatureTensor, PointCurvError> {
    let n = chart.n();
    // real coordinate axes: axis 2k is Re t_k, axis 2k+1 is Im t_k
    let eval = |deltas: &[(usize, f64)]| -> Vec<Vec<C>> {
        let mut t = point.to_vec();
        for &(axis, d) in deltas {
            if axis % 2 == 0 {
                t[axis / 2] += C::new(d, 0.0);
            } else {
                t[axis / 2] += C::new(0.0, d);
            }
        }
        chart.metric(&t)
    };

    // 4th-order central first derivatives along each real axis
    let d1 = |axis: usize| -> Vec<Vec<C>> {
        let mut acc = vec![vec![C::new(0.0, 0.0); n]; n];
        for &(off, wgt) in &FD_OFFSETS {
            let g = eval(&[(axis, off * h)]);
            for k in 0..n {
                for l in 0..n {
                    acc[k][l] += wgt / (12.0 * h) * g[k][l];
                }
            }
        }
        acc
    };
    // mixed second derivatives d^2/daxis_a daxis_b
    let d2 = |ax_a: usize, ax_b: usize| -> Vec<Vec<C>> {
        let mut acc = vec![vec![C::new(0.0, 0.0); n]; n];
        if ax_a == ax_b {
            let center = eval(&[]);
            let pairs = [(-2.0, -1.0), (-1.0, 16.0), (1.0, 16.0), (2.0, -1.0)];
            for &(off, wgt) in &pairs {
                let g = eval(&[(ax_a, off * h)]);
                for k in 0..n {
                    for l in 0..n {
                        acc[k][l] += wgt / (12.0 * h * h) * g[k][l];
                    }
                }
            }
            for k in 0..n {
                for l in 0..n {
                    acc[k][l] -= 30.0 / (12.0 * h * h) * center[k][l];
                }
            }
        } else {
            for &(oa, wa) in &FD_OFFSETS {
                for &(ob, wb) in &FD_OFFSETS {
                    let g = eval(&[(ax_a, oa * h), (ax_b, ob * h)]);
                    let w = wa * wb / (144.0 * h * h);
                    for k in 0..n {
                        for l in 0..n {
                            acc[k][l] += w * g[k][l];
                        }
                    }
                }
            }
        }
        acc
    };

    let dreal: Vec<Vec<Vec<C>>> = (0..2 * n).map(d1).collect();
    // Wirtinger first derivatives: d/dt_i = (d/dx_i - i d/dy_i)/2,
    // packaged as matrices DG[i][k][l] = d g_{k l-bar} / d t_i
    let i_unit = C::new(0.0, 1.0);
    let dg: Vec<Vec<Vec<C>>> = (0..n)
        .map(|i| {
            let mut out = vec![vec![C::new(0.0, 0.0); n]; n];
            for k in 0..n {
                for l in 0..n {
                    out[k][l] =
                        0.5 * (dreal[2 * i][k][l] - i_unit * dreal[2 * i + 1][k][l]);
                }
            }
            out
        })
        .collect();
    // mixed Wirtinger second derivatives d^2 g / dt_i dtbar_j =
    // (dxx + dyy + i(dxy - dyx))/4; real partials commute so dxy = dyx
    let mut hess = vec![vec![vec![vec![C::new(0.0, 0.0); n]; n]; n]; n];
    for i in 0..n {
        for j in 0..n {
            let dxx = d2(2 * i, 2 * j);
            let dyy = d2(2 * i + 1, 2 * j + 1);
            let dxy = d2(2 * i, 2 * j + 1);
            let dyx = d2(2 * i + 1, 2 * j);
            for k in 0..n {
                for l in 0..n {
                    hess[i][j][k][l] = 0.25
                        * (dxx[k][l] + dyy[k][l]
                            + i_unit * (dxy[k][l] - dyx[k][l]));
                }
            }
        }
    }

    let g0 = chart.metric(point);
    let ginv = mat_inv(&g0).ok_or(PointCurvError::SingularMetric)?;

    // R_{i j-bar k l-bar} = -d^2 g_{k l-bar}/dt_i dtbar_j
    //                       + sum g^{q-bar p} (d_i g_{k q-bar})(dbar_j g_{p l-bar});
    // the correction contracts as (D_i G) G^{-1} (D_j G)^H
    let mut raw = vec![vec![vec![vec![C::new(0.0, 0.0); n]; n]; n]; n];
    for i in 0..n {
        for j in 0..n {
            // (D_j G)^H
            let mut djh = vec![vec![C::new(0.0, 0.0); n]; n];
            for p in 0..n {
                for l in 0..n {
                    djh[p][l] = dg[j][l][p].conj();
                }
            }
            let corr = mat_mul(&mat_mul(&dg[i], &ginv), &djh);
            for k in 0..n {
                for l in 0..n {
                    raw[i][j][k][l] = -hess[i][j][k][l] + corr[k][l];
                }
            }
        }
    }

    // orthonormal frame from the Cholesky factor of g(point): the
    // norm is sum g_{k l-bar} X_k conj(X_l) = X^H (G^T) X, so the
    // frame must satisfy F^H G^T F = I; with G = L L^H that is
    // F = transpose of L^{-1}, without conjugation
    let lmat = cholesky(&g0).ok_or(PointCurvError::SingularMetric)?;
    let linv = lower_inv(&lmat);
    let frame = |col: usize, row: usize| -> C { linv[col][row] };

    let mut t = KahlerCurvatureTensor::new(n);
    for a in 0..n {
        for b in 0..n {
            for c in 0..n {
                for d in 0..n {
                    let mut acc = C::new(0.0, 0.0);
                    for i in 0..n {
                        for j in 0..n {
                            for k in 0..n {
                                for l in 0..n {
                                    acc += raw[i][j][k][l]
                                        * frame(a, i)
                                        * frame(b, j).conj()
                                        * frame(c, k)
                                        * frame(d, l).conj();
                                }
                            }
                        }
                    }
                    let idx = t.at(a, b, c, d);
                    t.comp[idx] = acc;
                }
            }
        }
    }
    Ok(t)
}

/// Curvature tensor of the Fermat bidegree (p,1) hypersurface in
/// CP^r x CP^s with the induced product Fubini-Study metric, at the
/// chart point, expressed in a g-orthonormal frame. Fourth-order finite
/// differences on the analytic pulled-back metric; the computation is
/// repeated at step/2 and must agree to 1e-4 componentwise.
pub fn induced_curvature_at(
    r: usize,
    s: usize,
    p: u32,
    point: &[C],
    step: f64,
) -> Result<KahlerCurvatureTensor, PointCurvError> {
    if s < 1 || r < s || p < 1 {
        return Err(PointCurvError::OutOfRange(format!(
            "need 1 <= s <= r and p >= 1, got r = {r}, s = {s}, p = {p}"
        )));
    }
    if !(1e-4..=1e-2).contains(&step) {
        return Err(PointCurvError::OutOfRange(format!(
            "step {step} outside [1e-4, 1e-2]"
        )));
    }
    let chart = Chart { r, s, p };
    if point.len() != chart.n() {
        return Err(PointCurvError::OutOfRange(format!(
            "point has {} coordinates, chart needs {}",
            point.len(),
            chart.n()
        )));
    }
    let coarse = induced_at_step(&chart, point, step)?;
    let fine = induced_at_step(&chart, point, step / 2.0)?;
    let mut gap = 0.0_f64;
    for i in 0..coarse.comp.len() {
        gap = gap.max((coarse.comp[i] - fine.comp[i]).norm());
    }
    if gap > 1e-4 {
        return Err(PointCurvError::StepCheckFailed(gap));
    }
    Ok(fine)
}
