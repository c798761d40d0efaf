//! Curvature analysis for U(n)-invariant Kahler metrics on Hirzebruch
//! manifolds M_{n,k} = P(H^k + 1) over CP^{n-1}.
//!
//! A metric in this family is encoded by a generating profile: a polynomial
//! (or transcendental evaluator, for solitons) phi on an interval
//! [u_min, u_max] with phi > 0 inside, phi = 0 at the ends, and slopes
//! +2 / -2 there. The holomorphic sectional curvature along any tangent
//! direction reduces to a quadratic in one real variable with coefficients
//! A, B, C that are rational functions of phi, phi', phi''. Everything the
//! crate certifies (positivity, pinching, thresholds) flows through that
//! reduction.
//!
//! Module map:
//! - [`exactpoly`]: exact rational polynomials, Sturm chains, certified
//!   sign determination on intervals.
//! - [`profile`]: generating profiles, the concrete metric families
//!   (Hitchin, quartic, general-class), profile construction and paths.
//! - [`curvature`]: the A/B/C curvature data, exact positivity
//!   certificates, numeric certification, pinching reports.
//! - [`soliton`]: shrinking Kahler-Ricci solitons on the closed manifold
//!   and the open bundle, the alpha-threshold sweep.
//! - [`pointcurv`]: pointwise curvature tensors (flag three-fold,
//!   bidegree hypersurfaces), direction extrema, classical pinching bounds.
//! - [`intersect`]: intersection rings of bidegree (p,1) hypersurfaces and
//!   total-scalar-curvature sign witnesses.
//! - [`cli`]: the command-line front end (JSON reports, stable exit codes).

pub mod cli;
pub mod curvature;
pub mod exactpoly;
pub mod intersect;
pub mod pointcurv;
pub mod profile;
pub mod soliton;

pub use curvature::{
    certify_positive, certify_positive_numeric, curvature_triple, global_pinching,
    local_pinching, CurvatureTriple, PinchingReport, PositivityCertificate, Verdict,
};
pub use exactpoly::{RationalPoly, SignKind, SignVerdict};
pub use intersect::{
    cone_report, intersection_numbers, negative_class_witness, total_scalar_closed_form,
    total_scalar_coefficient, ConeReport, HypersurfaceRing,
};
pub use pointcurv::{
    berger_bounds, flag_tensor, fs_tensor, h_extrema, induced_curvature_at,
    orthogonal_bisectional_min, product_pinching, product_tensor, riemannian_bounds,
    DirectionExtrema, KahlerCurvatureTensor, RiemannianBounds,
};
pub use profile::{
    anyclass_profile, construct_positive_profile, convex_combine, hitchin_profile,
    kahler_class_of, path_between, quartic_profile, validate_profile, GeneratingProfile,
    KahlerClassRatio,
};
pub use soliton::{
    compact_alpha, compact_soliton, conjecture_sweep, critical_alpha0, fik_alpha,
    fik_soliton, soliton_h_positive, soliton_profile, SolitonKind, SolitonSolution,
};
