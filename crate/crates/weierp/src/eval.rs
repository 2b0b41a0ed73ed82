//! Numerical evaluation of ℘, ℘′, higher derivatives, and σ.
//!
//! ℘ is evaluated from its Laurent expansion at the origin,
//!
//!   ℘(z) = z⁻² + Σ_{k≥2} cₖ z^{2k−2},   c₂ = g₂/20,  c₃ = g₃/28,
//!   cₖ = 3 Σ_{m=2}^{k−2} cₘ c_{k−m} / ((2k+1)(k−3))   for k ≥ 4,
//!
//! after halving the (reduced) argument until it sits well inside the
//! convergence disk, then walking back up with the duplication relation.
//! The pair (℘, ℘′) is carried through the chain; ℘′ is updated by the
//! differentiated duplication relation rather than by a square root of the
//! cubic, which would need a sign choice.

use num::complex::Complex64;

use crate::error::{Error, Result};
use crate::lattice::{Lattice, POLE_THRESHOLD};
use crate::symbolic::derivative_form;

const ZERO: Complex64 = Complex64::new(0.0, 0.0);
const SERIES_CAP: usize = 64;
/// |z|/2ᵏ is brought below this fraction of the estimated convergence radius.
const HALVING_FRACTION: f64 = 0.4;
/// σ product truncation radius in units of the shortest lattice vector.
const SIGMA_RADIUS_FACTOR: f64 = 30.0;

/// Cached Laurent coefficients c₂..c₆₄ and the convergence-radius estimate
/// from the coefficient root test.
#[derive(Debug, Clone)]
pub struct LaurentTable {
    c: Vec<Complex64>,
    pub(crate) radius: f64,
}

pub(crate) fn laurent_table(g2: Complex64, g3: Complex64) -> LaurentTable {
    let mut c = vec![ZERO; SERIES_CAP + 1];
    c[2] = g2 / 20.0;
    c[3] = g3 / 28.0;
    for k in 4..=SERIES_CAP {
        let mut s = ZERO;
        for m in 2..=k - 2 {
            s += c[m] * c[k - m];
        }
        c[k] = 3.0 * s / ((2 * k + 1) as f64 * (k - 3) as f64);
    }
    // root test on the tail: |c_k|^(1/(2k-2)) -> 1/radius
    let mut inv_radius: f64 = 0.0;
    for k in SERIES_CAP / 2..=SERIES_CAP {
        let norm = c[k].norm();
        if norm > 0.0 {
            inv_radius = inv_radius.max(norm.powf(1.0 / (2 * k - 2) as f64));
        }
    }
    let radius = if inv_radius > 0.0 { 1.0 / inv_radius } else { f64::INFINITY };
    LaurentTable { c, radius }
}

/// (℘, ℘′) from the series, plus a convergence verdict. Terms are added
/// until three consecutive ones are negligible; zero coefficients of
/// symmetric lattices come in runs of at most two, so a shorter streak
/// would truncate early. Exhausting the table with the terms still large
/// means z sits outside the true convergence disk (possible in
/// invariants-only mode, where the radius is only estimated).
fn series_pair(z: Complex64, table: &LaurentTable) -> (Complex64, Complex64, bool) {
    let z2 = z * z;
    let mut p = 1.0 / z2;
    let mut dp = -2.0 / (z2 * z);
    let mut zpow = z2; // z^(2k-2) at k = 2
    let mut streak = 0;
    let mut converged = false;
    for k in 2..table.c.len() {
        let ck = table.c[k];
        let term = ck * zpow;
        p += term;
        dp += (2 * k - 2) as f64 * ck * zpow / z;
        if term.norm() <= 1e-17 * (1.0 + p.norm()) {
            streak += 1;
            if streak >= 3 && k >= 12 {
                converged = true;
                break;
            }
        } else {
            streak = 0;
        }
        zpow *= z2;
    }
    (p, dp, converged)
}

/// One duplication step: (℘(z), ℘′(z)) → (℘(2z), ℘′(2z)), using
/// ℘(2z) = ¼(℘″/℘′)² − 2℘ and its z-derivative with ℘″ = 6℘² − g₂/2,
/// ℘‴ = 12℘℘′ substituted.
fn dup_pair(u: Complex64, v: Complex64, g2: Complex64) -> (Complex64, Complex64) {
    let a = 6.0 * u * u - g2 / 2.0; // wp''
    let b = 12.0 * u * v; // wp'''
    let u2 = -2.0 * u + (a / (2.0 * v)).powu(2);
    let v2 = -v + a * (b * v - a * a) / (4.0 * v.powu(3));
    (u2, v2)
}

fn wp_pair_unreduced(z: Complex64, lat: &Lattice) -> Result<(Complex64, Complex64)> {
    let target = HALVING_FRACTION * lat.laurent.radius;
    let mut base_depth = 0i32;
    while z.norm() / 2f64.powi(base_depth) > target {
        base_depth += 1;
    }
    // extra halving re-centers the rare exact hit of wp' = 0 inside the
    // chain and rescues a too-optimistic radius estimate
    'retry: for extra in 0..5 {
        let depth = base_depth + extra;
        let (mut u, mut v, converged) = series_pair(z / 2f64.powi(depth), &lat.laurent);
        if !converged {
            continue 'retry;
        }
        for _ in 0..depth {
            if !u.is_finite() || !v.is_finite() || v == ZERO {
                continue 'retry;
            }
            (u, v) = dup_pair(u, v, lat.g2());
        }
        if u.is_finite() && v.is_finite() {
            return Ok((u, v));
        }
    }
    Err(Error::Numeric(format!(
        "series-plus-duplication evaluation failed to converge at z = {z}"
    )))
}

/// (℘(z), ℘′(z)). With periods the argument is reduced first; in
/// invariants-only mode z is used as given and only z ≈ 0 is rejected.
pub fn wp_pair(z: Complex64, lat: &Lattice) -> Result<(Complex64, Complex64)> {
    if lat.has_periods() {
        let (zr, _) = lat.reduce_argument(z)?;
        wp_pair_unreduced(zr, lat)
    } else {
        if z.norm() < POLE_THRESHOLD * lat.laurent.radius {
            return Err(Error::Pole { z, lattice_point: ZERO });
        }
        wp_pair_unreduced(z, lat)
    }
}

/// ℘(z; Λ).
pub fn wp(z: Complex64, lat: &Lattice) -> Result<Complex64> {
    wp_pair(z, lat).map(|(u, _)| u)
}

/// ℘⁽ⁿ⁾(z; Λ) for n ∈ {−2, 0, 1, 2, …}; n = −2 denotes the constant
/// function 1. Orders n ≥ 2 evaluate the exact derivative form at
/// (℘, ℘′, g₂, g₃).
pub fn wp_deriv(z: Complex64, n: i64, lat: &Lattice) -> Result<Complex64> {
    if n == -2 {
        return Ok(Complex64::new(1.0, 0.0));
    }
    if n < 0 {
        return Err(Error::InvalidOrder(n));
    }
    let (u, v) = wp_pair(z, lat)?;
    match n {
        0 => Ok(u),
        1 => Ok(v),
        _ => Ok(derivative_form(n)?.eval(u, v, lat.g2(), lat.g3())),
    }
}

/// Per-lattice σ data: the truncated product ring plus the analytically
/// known weight-4/6 tails of the log expansion.
#[derive(Debug, Clone)]
pub(crate) struct SigmaContext {
    ring: Vec<Complex64>,
    s1: Complex64,
    s2: Complex64,
    t4: Complex64,
    t6: Complex64,
}

fn build_sigma_context(lat: &Lattice) -> SigmaContext {
    let shortest = lat
        .shortest_vector_length()
        .expect("sigma context needs periods");
    let ring = lat
        .points_in_disk(SIGMA_RADIUS_FACTOR * shortest)
        .expect("periods checked by caller");
    let mut s1 = ZERO;
    let mut s2 = ZERO;
    let mut s4 = ZERO;
    let mut s6 = ZERO;
    for &w in &ring {
        let inv = 1.0 / w;
        let inv2 = inv * inv;
        s1 += inv;
        s2 += inv2;
        s4 += inv2 * inv2;
        s6 += inv2 * inv2 * inv2;
    }
    SigmaContext {
        ring,
        s1,
        s2,
        t4: lat.g2() / 60.0 - s4,
        t6: lat.g3() / 140.0 - s6,
    }
}

/// σ(z; Λ) by the truncated Weierstrass product over |ω| ≤ 30·(shortest
/// vector). The exponential factors are regrouped into a single exp, and the
/// truncated weight-4/6 terms of log σ are restored from g₂/60 and g₃/140;
/// the remaining error is O(z⁸) in the weight-8 tail (see the σ error model
/// in the guide). Requires periods.
pub fn sigma(z: Complex64, lat: &Lattice) -> Result<Complex64> {
    lat.periods()?;
    let ctx = lat.sigma_ctx.get_or_init(|| build_sigma_context(lat));
    if z == ZERO {
        return Ok(ZERO);
    }
    let mut prod = Complex64::new(1.0, 0.0);
    for &w in &ctx.ring {
        prod *= 1.0 - z / w;
    }
    let z2 = z * z;
    let z4 = z2 * z2;
    let log_corr = z * ctx.s1 + z2 * ctx.s2 / 2.0 - z4 * ctx.t4 / 4.0 - z4 * z2 * ctx.t6 / 6.0;
    Ok(z * prod * log_corr.exp())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    fn square() -> Lattice {
        Lattice::from_half_periods(c(1.0, 0.0), c(0.0, 1.0)).unwrap()
    }

    fn generic() -> Lattice {
        Lattice::from_half_periods(c(1.0, 0.0), c(0.3, 1.1)).unwrap()
    }

    #[test]
    fn matches_frozen_theta_references() {
        let lat = square();
        // frozen from a high-precision theta-function evaluation
        let want1 = c(2.0274586559087119217, -2.411068258980493858);
        assert!((wp(c(0.5, 0.25), &lat).unwrap() - want1).norm() < 1e-12 * want1.norm());
        let want2 = c(2.9878860447320550556, -7.0297859528410247235);
        assert!((wp(c(0.3, 0.2), &lat).unwrap() - want2).norm() < 1e-12 * want2.norm());
    }

    #[test]
    fn evenness_and_periodicity() {
        let lat = generic();
        let z = c(0.37, 0.22);
        let p = wp(z, &lat).unwrap();
        assert!((wp(-z, &lat).unwrap() - p).norm() <= 1e-12 * (1.0 + p.norm()));
        let shifted = z + 2.0 * lat.omega1().unwrap();
        assert!((wp(shifted, &lat).unwrap() - p).norm() <= 1e-10 * (1.0 + p.norm()));
        let shifted2 = z + 2.0 * lat.omega2().unwrap() - 4.0 * lat.omega1().unwrap();
        assert!((wp(shifted2, &lat).unwrap() - p).norm() <= 1e-10 * (1.0 + p.norm()));
    }

    #[test]
    fn square_lattice_center_value_is_e3() {
        let lat = square();
        let w3 = lat.omega1().unwrap() + lat.omega2().unwrap();
        let p = wp(w3, &lat).unwrap();
        let (_, _, e3) = lat.half_period_values();
        assert!((p - e3).norm() < 1e-10);
        assert!(p.norm() < 1e-10); // e3 = 0 on the square lattice
    }

    #[test]
    fn differential_equation_residual() {
        for lat in [square(), generic()] {
            for (re, im) in [(0.31, 0.17), (-0.92, 0.55), (0.05, -0.83), (0.66, 0.91)] {
                let z = c(re, im);
                let (u, v) = wp_pair(z, &lat).unwrap();
                let resid = (v * v - (4.0 * u.powu(3) - lat.g2() * u - lat.g3())).norm();
                assert!(
                    resid <= 1e-9 * (1.0 + u.norm()).powi(3),
                    "DE residual {resid:e} at z = {z}"
                );
            }
        }
    }

    #[test]
    fn derivative_conventions() {
        let lat = generic();
        let z = c(0.4, 0.3);
        assert_eq!(wp_deriv(z, -2, &lat).unwrap(), c(1.0, 0.0));
        assert!(matches!(wp_deriv(z, -1, &lat), Err(Error::InvalidOrder(-1))));
        assert!(matches!(wp_deriv(z, -3, &lat), Err(Error::InvalidOrder(-3))));
        // second derivative against its closed form
        let (u, v) = wp_pair(z, &lat).unwrap();
        let want = 6.0 * u * u - lat.g2() / 2.0;
        assert!((wp_deriv(z, 2, &lat).unwrap() - want).norm() <= 1e-12 * (1.0 + want.norm()));
        let _ = v;
    }

    #[test]
    fn wp_prime_vanishes_at_half_periods() {
        let lat = generic();
        let w1 = lat.omega1().unwrap();
        let d = wp_deriv(w1, 1, &lat).unwrap();
        assert!(d.norm() < 1e-8, "wp'({w1}) = {d}");
    }

    #[test]
    fn pole_is_rejected() {
        let lat = square();
        assert!(matches!(wp(c(2.0, 2.0), &lat), Err(Error::Pole { .. })));
        assert!(matches!(wp(c(0.0, 0.0), &lat), Err(Error::Pole { .. })));
    }

    #[test]
    fn invariants_only_agrees_with_period_mode() {
        let full = generic();
        let inv_only = Lattice::from_invariants(full.g2(), full.g3()).unwrap();
        for (re, im) in [(0.3, 0.2), (0.51, -0.33), (0.1, 0.62)] {
            let z = c(re, im);
            let a = wp(z, &full).unwrap();
            let b = wp(z, &inv_only).unwrap();
            assert!((a - b).norm() <= 1e-10 * (1.0 + a.norm()));
        }
        assert!(matches!(sigma(c(0.3, 0.2), &inv_only), Err(Error::InvariantsOnly)));
    }

    #[test]
    fn sigma_basics() {
        let lat = generic();
        // leading factor z
        let tiny = c(1e-6, 0.0);
        let ratio = sigma(tiny, &lat).unwrap() / tiny;
        assert!((ratio - c(1.0, 0.0)).norm() < 1e-10);
        assert_eq!(sigma(ZERO, &lat).unwrap(), ZERO);
        // oddness
        let z = c(0.41, 0.27);
        let s = sigma(z, &lat).unwrap();
        assert!((sigma(-z, &lat).unwrap() + s).norm() <= 1e-12 * s.norm());
    }

    #[test]
    fn sigma_reproduces_wp_difference() {
        // wp(z) - wp(w) = sigma(w+z) sigma(w-z) / (sigma(w)^2 sigma(z)^2)
        let lat = square();
        let z = c(0.31, 0.17);
        let w = c(-0.12, 0.44);
        let lhs = wp(z, &lat).unwrap() - wp(w, &lat).unwrap();
        let rhs = sigma(w + z, &lat).unwrap() * sigma(w - z, &lat).unwrap()
            / (sigma(w, &lat).unwrap().powu(2) * sigma(z, &lat).unwrap().powu(2));
        assert!((lhs - rhs).norm() <= 1e-6 * (1.0 + rhs.norm()), "lhs {lhs} rhs {rhs}");
    }
}
