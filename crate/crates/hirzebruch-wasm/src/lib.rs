//! Thin wasm-bindgen layer over the hirzebruch crate for the browser
//! demo. Each export takes plain numbers and rational strings, runs one
//! library operation, and returns a JSON string: either a report or
//! {"error": "..."} when the inputs are out of range. The heavy lifting
//! (exact certification, pinching scans, soliton solves) is the same
//! code the CLI runs; this module only adds plot sampling.

use hirzebruch::curvature::{
    certify_positive, curvature_triple, pinching_with_certificate, ProfileEvaluator,
};
use hirzebruch::exactpoly::{format_rational, parse_rational, rat, rational_to_f64};
use hirzebruch::profile::{hitchin_profile, kahler_class_of, quartic_profile, GeneratingProfile};
use hirzebruch::soliton::{
    compact_soliton, critical_alpha0, fik_soliton, soliton_h_positive, SolitonKind,
};
use serde_json::{json, Value};
use wasm_bindgen::prelude::*;

const PLOT_SAMPLES: usize = 240;

fn err_json(message: impl std::fmt::Display) -> String {
    json!({ "error": message.to_string() }).to_string()
}

/// min and max over t in [0, 1] of (A + C - 4B) t^2 + (4B - 2C) t + C.
fn quad_range(a: f64, b: f64, c: f64) -> (f64, f64) {
    let q2 = a + c - 4.0 * b;
    let q1 = 4.0 * b - 2.0 * c;
    let mut lo = c.min(a);
    let mut hi = c.max(a);
    if q2 != 0.0 {
        let t = -q1 / (2.0 * q2);
        if t > 0.0 && t < 1.0 {
            let v = (q2 * t + q1) * t + c;
            lo = lo.min(v);
            hi = hi.max(v);
        }
    }
    (lo, hi)
}

/// Plot arrays for a polynomial profile: u grid, phi, and the pointwise
/// range of the curvature quadratic.
fn sample_profile(profile: &GeneratingProfile) -> Value {
    let triple = curvature_triple(profile);
    let lo = rational_to_f64(&profile.u_min);
    let hi = rational_to_f64(&profile.u_max);
    let mut us = Vec::with_capacity(PLOT_SAMPLES + 1);
    let mut phis = Vec::with_capacity(PLOT_SAMPLES + 1);
    let mut hmin = Vec::with_capacity(PLOT_SAMPLES + 1);
    let mut hmax = Vec::with_capacity(PLOT_SAMPLES + 1);
    for i in 0..=PLOT_SAMPLES {
        let u = lo + (hi - lo) * (i as f64) / (PLOT_SAMPLES as f64);
        let (a, b, c) = triple.abc_f64(u);
        let (l, h) = quad_range(a, b, c);
        us.push(u);
        phis.push(profile.phi.eval_f64(u));
        hmin.push(l);
        hmax.push(h);
    }
    json!({ "u": us, "phi": phis, "h_min": hmin, "h_max": hmax })
}

fn profile_report(profile: &GeneratingProfile, family: &str, inputs: Value) -> String {
    let cert = certify_positive(profile);
    let pinching = if cert.is_positive() {
        pinching_with_certificate(profile, 1e-8)
            .ok()
            .map(|(rep, _)| {
                json!({
                    "local": rep.local_constant,
                    "global": rep.global_constant,
                    "argmin_u": rep.local_argmin_u,
                })
            })
    } else {
        None
    };
    let class = kahler_class_of(profile)
        .map(|cl| format_rational(&cl.ratio()))
        .unwrap_or_else(|_| "undefined".into());
    json!({
        "family": family,
        "inputs": inputs,
        "n": profile.n,
        "k": profile.k,
        "u_min": rational_to_f64(&profile.u_min),
        "u_max": rational_to_f64(&profile.u_max),
        "verdict": serde_json::to_value(cert.verdict).expect("verdict serializes"),
        "witness": serde_json::to_value(&cert.witness).expect("witness serializes"),
        "margin": cert.margin,
        "kahler_ratio": class,
        "pinching": pinching,
        "samples": sample_profile(profile),
    })
    .to_string()
}

/// Certifies the quadratic-profile metric phi = c - U^2/c on M_{n,k}
/// and reports pinching plus plot data. c is a rational string such as
/// "2/7" or "0.3".
#[wasm_bindgen]
pub fn hitchin_report(n: u32, k: u32, c: &str) -> String {
    let cr = match parse_rational(c) {
        Ok(v) => v,
        Err(e) => return err_json(e),
    };
    let profile = match hitchin_profile(n, k, &cr) {
        Ok(p) => p,
        Err(e) => return err_json(e),
    };
    let threshold = rat(n as i64, (k * (2 * k + 1)) as i64);
    let mut report: Value =
        serde_json::from_str(&profile_report(&profile, "hitchin", json!({ "c": c })))
            .expect("own report parses");
    report["positivity_threshold"] = json!(format_rational(&threshold));
    report.to_string()
}

/// Certifies the degree-4 profile on M_{2,1} with parameters c and mu
/// (rational strings) and reports both pinching constants alongside
/// their closed forms 4(2mu-1)/(4-mu) and (2mu-1)/(5-4mu) at c = 1.
#[wasm_bindgen]
pub fn quartic_report(c: &str, mu: &str) -> String {
    let (cr, mur) = match (parse_rational(c), parse_rational(mu)) {
        (Ok(a), Ok(b)) => (a, b),
        (Err(e), _) | (_, Err(e)) => return err_json(e),
    };
    let profile = match quartic_profile(&cr, &mur) {
        Ok(p) => p,
        Err(e) => return err_json(e),
    };
    let mut report: Value = serde_json::from_str(&profile_report(
        &profile,
        "quartic",
        json!({ "c": c, "mu": mu }),
    ))
    .expect("own report parses");
    let muf = rational_to_f64(&mur);
    report["closed_form"] = json!({
        "local": 4.0 * (2.0 * muf - 1.0) / (4.0 - muf),
        "global": (2.0 * muf - 1.0) / (5.0 - 4.0 * muf),
        "note": "valid at c = 1",
    });
    report.to_string()
}

/// Solves both shrinking solitons on (n, k): the compact one on the
/// closed manifold and the complete one on the open bundle. Reports the
/// coefficients, the exact window bounds, the H verdict of the compact
/// soliton, and plot data for its profile.
#[wasm_bindgen]
pub fn soliton_report(n: u32, k: u32) -> String {
    let compact = match compact_soliton(n, k) {
        Ok(s) => s,
        Err(e) => return err_json(e),
    };
    let fik = match fik_soliton(n, k) {
        Ok(s) => s,
        Err(e) => return err_json(e),
    };
    let alpha0 = match critical_alpha0(n, k) {
        Ok(a) => format_rational(&a),
        Err(e) => return err_json(e),
    };
    let h = match soliton_h_positive(n, k, SolitonKind::Compact) {
        Ok(r) => r,
        Err(e) => return err_json(e),
    };

    let mut us = Vec::with_capacity(PLOT_SAMPLES + 1);
    let mut phis = Vec::with_capacity(PLOT_SAMPLES + 1);
    let mut hmin = Vec::with_capacity(PLOT_SAMPLES + 1);
    let mut hmax = Vec::with_capacity(PLOT_SAMPLES + 1);
    for i in 0..=PLOT_SAMPLES {
        let u = -1.0 + 2.0 * (i as f64) / (PLOT_SAMPLES as f64);
        let (a, b, c) = compact.curvature_abc(u);
        let (l, hrange) = quad_range(a, b, c);
        us.push(u);
        phis.push(compact.phi(u));
        hmin.push(l);
        hmax.push(hrange);
    }

    json!({
        "n": n,
        "k": k,
        "compact": {
            "alpha": compact.alpha,
            "ode_residual": compact.residual,
            "h_verdict": serde_json::to_value(h.certificate.verdict).expect("serializes"),
            "pinching": h.pinching.as_ref().map(|p| p.local_constant),
        },
        "fik": {
            "alpha": fik.alpha,
            "ode_residual": fik.residual,
            "window": { "alpha0": alpha0, "upper": k + 1 },
        },
        "samples": { "u": us, "phi": phis, "h_min": hmin, "h_max": hmax },
    })
    .to_string()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn parse(s: &str) -> Value {
        serde_json::from_str(s).expect("valid JSON")
    }

    #[test]
    fn hitchin_report_round_trips() {
        let rep = parse(&hitchin_report(2, 1, "2/7"));
        assert_eq!(rep["verdict"], json!("positive"));
        assert_eq!(rep["positivity_threshold"], json!("2/3"));
        let local = rep["pinching"]["local"].as_f64().unwrap();
        assert!((local - 1.0 / 9.0).abs() < 1e-6, "local = {local}");
        assert_eq!(rep["samples"]["u"].as_array().unwrap().len(), 241);

        let rep = parse(&hitchin_report(2, 1, "1"));
        assert_eq!(rep["verdict"], json!("not-positive"));
        assert!(rep["witness"].is_object());

        let rep = parse(&hitchin_report(2, 1, "7/2"));
        assert!(rep["error"].is_string());
    }

    #[test]
    fn quartic_report_matches_closed_forms() {
        let rep = parse(&quartic_report("1", "501/1000"));
        assert_eq!(rep["verdict"], json!("positive"));
        let local = rep["pinching"]["local"].as_f64().unwrap();
        let expect = rep["closed_form"]["local"].as_f64().unwrap();
        assert!((local - expect).abs() < 1e-6, "{local} vs {expect}");
    }

    #[test]
    fn soliton_report_has_both_solitons() {
        let rep = parse(&soliton_report(2, 1));
        let alpha = rep["compact"]["alpha"].as_f64().unwrap();
        assert!((alpha - 0.5276195199).abs() < 1e-6);
        assert_eq!(rep["compact"]["h_verdict"], json!("not-positive"));
        assert_eq!(rep["fik"]["window"]["upper"], json!(2));

        let rep = parse(&soliton_report(1, 1));
        assert!(rep["error"].is_string());
    }
}
