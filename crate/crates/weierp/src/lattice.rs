//! Period lattices, invariants g₂/g₃, and half-period values.
//!
//! A lattice Λ = 2ω₁ℤ + 2ω₂ℤ with Im(ω₂/ω₁) > 0 carries the Weierstrassian
//! invariants g₂ = 60 Σ′ ω⁻⁴ and g₃ = 140 Σ′ ω⁻⁶. The production path
//! computes them through the weight-4/6 Eisenstein series in the nome
//! q = exp(iπτ) after moving τ into the standard fundamental domain, which
//! bounds |q²| ≤ exp(−π√3) and makes the series converge geometrically.
//! The direct lattice sums remain available as an oracle in [`crate::oracle`].

use num::complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::eval::{self, LaurentTable};

const IM_TAU_CONDITIONING: f64 = 1e-9;
/// |z − ω| below this multiple of the shortest vector counts as a pole.
pub const POLE_THRESHOLD: f64 = 1e-12;

/// Immutable lattice data. Built either from half-periods or from invariants
/// alone; the latter supports only series-based evaluation (no argument
/// reduction, no σ).
#[derive(Debug, Clone)]
pub struct Lattice {
    periods: Option<Periods>,
    g2: Complex64,
    g3: Complex64,
    e_values: [Complex64; 3],
    pub(crate) laurent: LaurentTable,
    /// Lazily built σ product ring; write-once, read-many.
    pub(crate) sigma_ctx: std::sync::OnceLock<eval::SigmaContext>,
}

#[derive(Debug, Clone)]
pub(crate) struct Periods {
    pub omega1: Complex64,
    pub omega2: Complex64,
    pub tau: Complex64,
    /// Gauss-reduced basis of the full-period lattice, |b1| ≤ |b2|.
    pub b1: Complex64,
    pub b2: Complex64,
    pub shortest: f64,
}

impl Lattice {
    /// Constructs from half-periods ω₁, ω₂ (the lattice is 2ω₁ℤ + 2ω₂ℤ).
    pub fn from_half_periods(omega1: Complex64, omega2: Complex64) -> Result<Self> {
        let (g2, g3) = invariants_from_periods(omega1, omega2)?;
        let tau = omega2 / omega1;
        let (b1, b2) = gauss_reduce(2.0 * omega1, 2.0 * omega2);
        let shortest = b1.norm();
        let laurent = eval::laurent_table(g2, g3);
        let mut lat = Lattice {
            periods: Some(Periods { omega1, omega2, tau, b1, b2, shortest }),
            g2,
            g3,
            e_values: [Complex64::new(0.0, 0.0); 3],
            laurent,
            sigma_ctx: std::sync::OnceLock::new(),
        };
        lat.e_values = lat.label_half_period_values()?;
        Ok(lat)
    }

    /// Constructs from invariants only. Argument reduction and σ are
    /// unavailable; evaluation uses the series-plus-duplication path with an
    /// estimated convergence radius.
    pub fn from_invariants(g2: Complex64, g3: Complex64) -> Result<Self> {
        let disc = g2 * g2 * g2 - 27.0 * g3 * g3;
        let scale = g2.norm().powi(3) + 27.0 * g3.norm().powi(2);
        if disc.norm() <= 1e-16 * scale || scale == 0.0 {
            return Err(Error::ZeroDiscriminant);
        }
        let laurent = eval::laurent_table(g2, g3);
        let mut roots = solve_wp_cubic(g2, g3);
        // no half-periods to match against: order by (Re, Im) descending
        roots.sort_by(|a, b| {
            (b.re, b.im)
                .partial_cmp(&(a.re, a.im))
                .expect("cubic roots are finite")
        });
        Ok(Lattice {
            periods: None,
            g2,
            g3,
            e_values: [roots[0], roots[1], roots[2]],
            laurent,
            sigma_ctx: std::sync::OnceLock::new(),
        })
    }

    pub fn g2(&self) -> Complex64 {
        self.g2
    }

    pub fn g3(&self) -> Complex64 {
        self.g3
    }

    /// g₂³ − 27g₃².
    pub fn discriminant(&self) -> Complex64 {
        self.g2.powu(3) - 27.0 * self.g3 * self.g3
    }

    /// (e₁, e₂, e₃) = (℘(ω₁), ℘(ω₂), ℘(ω₁+ω₂)), the roots of 4t³ − g₂t − g₃.
    pub fn half_period_values(&self) -> (Complex64, Complex64, Complex64) {
        (self.e_values[0], self.e_values[1], self.e_values[2])
    }

    pub fn e_values(&self) -> [Complex64; 3] {
        self.e_values
    }

    pub fn has_periods(&self) -> bool {
        self.periods.is_some()
    }

    pub fn omega1(&self) -> Option<Complex64> {
        self.periods.as_ref().map(|p| p.omega1)
    }

    pub fn omega2(&self) -> Option<Complex64> {
        self.periods.as_ref().map(|p| p.omega2)
    }

    pub fn tau(&self) -> Option<Complex64> {
        self.periods.as_ref().map(|p| p.tau)
    }

    /// Length of the shortest nonzero lattice vector (periods mode only).
    pub fn shortest_vector_length(&self) -> Option<f64> {
        self.periods.as_ref().map(|p| p.shortest)
    }

    pub(crate) fn periods(&self) -> Result<&Periods> {
        self.periods.as_ref().ok_or(Error::InvariantsOnly)
    }

    /// Nearest-lattice-point reduction: returns (z mod Λ nearest to 0, the
    /// subtracted lattice vector). Arguments within the pole threshold of a
    /// lattice point raise [`Error::Pole`] carrying that point.
    pub fn reduce_argument(&self, z: Complex64) -> Result<(Complex64, Complex64)> {
        let p = self.periods()?;
        let shift = nearest_lattice_point(z, p.b1, p.b2);
        let reduced = z - shift;
        if reduced.norm() < POLE_THRESHOLD * p.shortest {
            return Err(Error::Pole { z, lattice_point: shift });
        }
        Ok((reduced, shift))
    }

    /// Distance from z to the nearest lattice point.
    pub fn pole_distance(&self, z: Complex64) -> Result<f64> {
        let p = self.periods()?;
        Ok((z - nearest_lattice_point(z, p.b1, p.b2)).norm())
    }

    /// All lattice points 0 < |ω| ≤ radius, sorted by decreasing |ω| so sums
    /// accumulate the smallest terms first.
    pub(crate) fn points_in_disk(&self, radius: f64) -> Result<Vec<Complex64>> {
        let p = self.periods()?;
        let area = (p.b1.conj() * p.b2).im.abs();
        let row_height = area / p.b1.norm();
        let k1 = (radius / p.b1.norm()).ceil() as i64 + 2;
        let k2 = (radius / row_height).ceil() as i64 + 2;
        let mut pts = Vec::new();
        for m in -k1..=k1 {
            for n in -k2..=k2 {
                if m == 0 && n == 0 {
                    continue;
                }
                let w = (m as f64) * p.b1 + (n as f64) * p.b2;
                if w.norm() <= radius {
                    pts.push(w);
                }
            }
        }
        pts.sort_by(|a, b| b.norm().partial_cmp(&a.norm()).expect("finite norms"));
        Ok(pts)
    }

    fn label_half_period_values(&self) -> Result<[Complex64; 3]> {
        let p = self.periods()?;
        let roots = solve_wp_cubic(self.g2, self.g3);
        let halves = [p.omega1, p.omega2, p.omega1 + p.omega2];
        let mut direct = [Complex64::new(0.0, 0.0); 3];
        for (slot, &h) in direct.iter_mut().zip(halves.iter()) {
            *slot = eval::wp(h, self)?;
        }
        // best bijective assignment over the six permutations of three roots
        let perms = [[0, 1, 2], [0, 2, 1], [1, 0, 2], [1, 2, 0], [2, 0, 1], [2, 1, 0]];
        let mut best: Option<([usize; 3], f64)> = None;
        for perm in perms {
            let total: f64 = (0..3).map(|i| (direct[i] - roots[perm[i]]).norm()).sum();
            if best.is_none_or(|(_, t)| total < t) {
                best = Some((perm, total));
            }
        }
        let (perm, total) = best.expect("six permutations considered");
        let scale = roots.iter().map(|r| r.norm()).fold(1.0, f64::max);
        if total > 1e-6 * scale {
            return Err(Error::Consistency(format!(
                "half-period values do not match cubic roots: mismatch {total:e}"
            )));
        }
        Ok([roots[perm[0]], roots[perm[1]], roots[perm[2]]])
    }
}

/// Invariants of the lattice 2ω₁ℤ + 2ω₂ℤ through the q-series of the
/// weight-4 and weight-6 Eisenstein series.
pub fn invariants_from_periods(omega1: Complex64, omega2: Complex64) -> Result<(Complex64, Complex64)> {
    if !omega1.is_finite() || !omega2.is_finite() || omega1.norm() == 0.0 {
        return Err(Error::InvalidInput("half-periods must be finite and omega1 nonzero".into()));
    }
    let tau = omega2 / omega1;
    if !(tau.im > 0.0) {
        return Err(Error::NonPositiveImTau(tau.im));
    }
    if tau.im < IM_TAU_CONDITIONING {
        return Err(Error::NearDegenerateLattice(tau.im));
    }
    let (wa, _wb) = reduce_tau(omega1, omega2);
    let tau_red = _wb / wa;
    if !(tau_red.re.abs() <= 0.51 && tau_red.norm() >= 0.99) {
        return Err(Error::Numeric(format!(
            "fundamental-domain reduction did not converge (tau = {tau})"
        )));
    }
    // x = q^2 = exp(2 pi i tau); fundamental domain gives |x| <= exp(-pi sqrt(3))
    let x = (Complex64::new(0.0, 2.0 * std::f64::consts::PI) * tau_red).exp();
    let (e4, e6) = eisenstein_4_6(x);
    let quarter = std::f64::consts::PI / (2.0 * wa);
    let g2 = quarter.powu(4) * (4.0 / 3.0) * e4;
    let g3 = quarter.powu(6) * (8.0 / 27.0) * e6;
    Ok((g2, g3))
}

/// Lambert-series forms E₄ = 1 + 240 Σ n³xⁿ/(1−xⁿ), E₆ = 1 − 504 Σ n⁵xⁿ/(1−xⁿ).
fn eisenstein_4_6(x: Complex64) -> (Complex64, Complex64) {
    let mut s4 = Complex64::new(0.0, 0.0);
    let mut s6 = Complex64::new(0.0, 0.0);
    let mut xn = x;
    for n in 1..=64u32 {
        let nf = n as f64;
        let denom = Complex64::new(1.0, 0.0) - xn;
        let base = xn / denom;
        let n3 = nf * nf * nf;
        s4 += n3 * base;
        s6 += n3 * nf * nf * base;
        if (n3 * nf * nf) * xn.norm() < 1e-20 {
            break;
        }
        xn *= x;
    }
    (
        Complex64::new(1.0, 0.0) + 240.0 * s4,
        Complex64::new(1.0, 0.0) - 504.0 * s6,
    )
}

/// Moves τ = ω₂/ω₁ into the fundamental domain |Re τ| ≤ 1/2, |τ| ≥ 1 by the
/// unimodular substitutions τ → τ+1 and τ → −1/τ, applied to the half-period
/// pair. The lattice is unchanged.
fn reduce_tau(omega1: Complex64, omega2: Complex64) -> (Complex64, Complex64) {
    let mut w1 = omega1;
    let mut w2 = omega2;
    for _ in 0..10_000 {
        let tau = w2 / w1;
        let shift = tau.re.round();
        if shift != 0.0 {
            w2 -= shift * w1;
        }
        if (w2 / w1).norm() < 1.0 - 1e-14 {
            let t = w1;
            w1 = w2;
            w2 = -t;
        } else {
            break;
        }
    }
    (w1, w2)
}

/// Gauss (Lagrange) reduction of a rank-2 basis: afterwards |b1| ≤ |b2| and
/// |Re(b2 conj(b1))| ≤ |b1|²/2, so b1 is a shortest nonzero vector.
fn gauss_reduce(mut b1: Complex64, mut b2: Complex64) -> (Complex64, Complex64) {
    for _ in 0..10_000 {
        if b2.norm_sqr() < b1.norm_sqr() {
            std::mem::swap(&mut b1, &mut b2);
        }
        let mu = ((b2 * b1.conj()).re / b1.norm_sqr()).round();
        if mu == 0.0 {
            break;
        }
        b2 -= mu * b1;
    }
    if b2.norm_sqr() < b1.norm_sqr() {
        std::mem::swap(&mut b1, &mut b2);
    }
    (b1, b2)
}

/// Nearest lattice point to z in the lattice spanned by the reduced basis.
fn nearest_lattice_point(z: Complex64, b1: Complex64, b2: Complex64) -> Complex64 {
    // real coordinates of z in the (b1, b2) frame
    let det = b1.re * b2.im - b1.im * b2.re;
    let x = (z.re * b2.im - z.im * b2.re) / det;
    let y = (b1.re * z.im - b1.im * z.re) / det;
    let (m0, n0) = (x.round(), y.round());
    let mut best = m0 * b1 + n0 * b2;
    let mut best_d = (z - best).norm_sqr();
    for dm in -1..=1 {
        for dn in -1..=1 {
            let cand = (m0 + dm as f64) * b1 + (n0 + dn as f64) * b2;
            let d = (z - cand).norm_sqr();
            if d < best_d {
                best = cand;
                best_d = d;
            }
        }
    }
    best
}

/// Roots of 4t³ − g₂t − g₃ by Cardano with one Newton polish step per root.
pub(crate) fn solve_wp_cubic(g2: Complex64, g3: Complex64) -> [Complex64; 3] {
    // monic depressed form t^3 + p t + q
    let p = -g2 / 4.0;
    let q = -g3 / 4.0;
    let half_q = q / 2.0;
    let disc = half_q * half_q + (p / 3.0).powu(3);
    let mut s = disc.sqrt();
    // pick the branch that avoids cancellation in -q/2 + s
    if (-half_q + s).norm() < (-half_q - s).norm() {
        s = -s;
    }
    let u = (-half_q + s).cbrt();
    let roots: [Complex64; 3] = if u.norm() == 0.0 {
        let r = (-q).cbrt();
        [r, r * CUBE_ROOT_UNITY, r * CUBE_ROOT_UNITY * CUBE_ROOT_UNITY]
    } else {
        let mut out = [Complex64::new(0.0, 0.0); 3];
        let mut uk = u;
        for slot in &mut out {
            *slot = uk - p / (3.0 * uk);
            uk *= CUBE_ROOT_UNITY;
        }
        out
    };
    let mut polished = roots;
    for r in &mut polished {
        // one Newton step on f(t) = 4t^3 - g2 t - g3
        let f = 4.0 * r.powu(3) - g2 * *r - g3;
        let df = 12.0 * *r * *r - g2;
        if df.norm() > 0.0 {
            *r -= f / df;
        }
    }
    polished
}

const CUBE_ROOT_UNITY: Complex64 = Complex64::new(-0.5, 0.866_025_403_784_438_6);

/// JSON lattice specification shared by the CLI and config files. Complex
/// numbers serialize as `[re, im]`; `periods` holds the full periods 2ω₁, 2ω₂.
#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct LatticeSpec {
    #[serde(skip_serializing_if = "Option::is_none")]
    pub periods: Option<[[f64; 2]; 2]>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub invariants: Option<InvariantsSpec>,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct InvariantsSpec {
    pub g2: [f64; 2],
    pub g3: [f64; 2],
}

impl LatticeSpec {
    pub fn from_half_periods(omega1: Complex64, omega2: Complex64) -> Self {
        LatticeSpec {
            periods: Some([
                [2.0 * omega1.re, 2.0 * omega1.im],
                [2.0 * omega2.re, 2.0 * omega2.im],
            ]),
            invariants: None,
        }
    }

    pub fn from_json(s: &str) -> Result<Self> {
        serde_json::from_str(s).map_err(|e| Error::InvalidInput(format!("bad lattice spec: {e}")))
    }

    pub fn build(&self) -> Result<Lattice> {
        match (&self.periods, &self.invariants) {
            (Some(p), None) => {
                let w1 = Complex64::new(p[0][0], p[0][1]) / 2.0;
                let w2 = Complex64::new(p[1][0], p[1][1]) / 2.0;
                Lattice::from_half_periods(w1, w2)
            }
            (None, Some(inv)) => Lattice::from_invariants(
                Complex64::new(inv.g2[0], inv.g2[1]),
                Complex64::new(inv.g3[0], inv.g3[1]),
            ),
            _ => Err(Error::InvalidInput(
                "lattice spec needs exactly one of `periods` or `invariants`".into(),
            )),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    // frozen from a high-precision theta-function evaluation
    const SQUARE_G2: f64 = 11.817045008077115768;
    const TALL_G2: f64 = 8.1242184430530170907;
    const TALL_G3: f64 = 4.4430520449459499906;
    const GENERIC_G2: (f64, f64) = (7.5036200698762396509, 1.8356379629589732226);
    const GENERIC_G3: (f64, f64) = (5.2004851707015091549, -2.0819641389771609923);

    #[test]
    fn square_lattice_invariants() {
        let (g2, g3) = invariants_from_periods(c(1.0, 0.0), c(0.0, 1.0)).unwrap();
        assert!((g2.re - SQUARE_G2).abs() < 1e-12 * SQUARE_G2);
        assert!(g2.im.abs() < 1e-12 * SQUARE_G2);
        // multiplication by i fixes the lattice and flips the weight-6 sum
        assert!(g3.norm() < 1e-12 * g2.norm());
    }

    #[test]
    fn hexagonal_lattice_invariants() {
        let w2 = c((std::f64::consts::PI / 3.0).cos(), (std::f64::consts::PI / 3.0).sin());
        let (g2, g3) = invariants_from_periods(c(1.0, 0.0), w2).unwrap();
        assert!(g2.norm() < 1e-12 * g3.norm());
        assert!(g3.norm() > 1.0);
    }

    #[test]
    fn tall_lattice_matches_reference() {
        let (g2, g3) = invariants_from_periods(c(1.0, 0.0), c(0.0, 2.0)).unwrap();
        assert!((g2.re - TALL_G2).abs() < 1e-12 * TALL_G2);
        assert!((g3.re - TALL_G3).abs() < 1e-12 * TALL_G3);
        assert!(g2.im.abs() < 1e-12 && g3.im.abs() < 1e-12);
    }

    #[test]
    fn generic_lattice_matches_reference() {
        let (g2, g3) = invariants_from_periods(c(1.0, 0.0), c(0.3, 1.1)).unwrap();
        assert!((g2 - c(GENERIC_G2.0, GENERIC_G2.1)).norm() < 1e-12 * g2.norm());
        assert!((g3 - c(GENERIC_G3.0, GENERIC_G3.1)).norm() < 1e-12 * g3.norm());
    }

    #[test]
    fn homogeneity_under_complex_scaling() {
        let (g2, g3) = invariants_from_periods(c(1.0, 0.0), c(0.3, 1.1)).unwrap();
        let s = c(0.7, 0.4);
        let (g2s, g3s) = invariants_from_periods(s, s * c(0.3, 1.1)).unwrap();
        assert!((g2s - g2 / s.powu(4)).norm() <= 1e-10 * g2s.norm());
        assert!((g3s - g3 / s.powu(6)).norm() <= 1e-10 * g3s.norm());
    }

    #[test]
    fn rejects_bad_tau() {
        assert!(matches!(
            invariants_from_periods(c(1.0, 0.0), c(2.0, 0.0)),
            Err(Error::NonPositiveImTau(_))
        ));
        assert!(matches!(
            invariants_from_periods(c(1.0, 0.0), c(1.0, -0.5)),
            Err(Error::NonPositiveImTau(_))
        ));
        assert!(matches!(
            invariants_from_periods(c(1.0, 0.0), c(1.0, 1e-12)),
            Err(Error::NearDegenerateLattice(_))
        ));
        assert!(invariants_from_periods(c(1.0, 0.0), c(f64::NAN, 1.0)).is_err());
        assert!(invariants_from_periods(c(f64::INFINITY, 0.0), c(0.0, 1.0)).is_err());
        assert!(invariants_from_periods(c(0.0, 0.0), c(0.0, 1.0)).is_err());
    }

    #[test]
    fn e_values_of_square_lattice() {
        let lat = Lattice::from_half_periods(c(1.0, 0.0), c(0.0, 1.0)).unwrap();
        let (e1, e2, e3) = lat.half_period_values();
        assert!((e1.re - 1.71879645450509321).abs() < 1e-12);
        assert!((e2 + e1).norm() < 1e-12);
        assert!(e3.norm() < 1e-12);
    }

    #[test]
    fn e_symmetric_functions_match_invariants() {
        for (w1, w2) in [(c(1.0, 0.0), c(0.3, 1.1)), (c(0.8, 0.1), c(-0.2, 0.9))] {
            let lat = Lattice::from_half_periods(w1, w2).unwrap();
            let [e1, e2, e3] = lat.e_values();
            let scale = 1.0 + lat.g2().norm() + lat.g3().norm();
            assert!((e1 + e2 + e3).norm() < 1e-10 * scale);
            assert!((e1 * e2 + e2 * e3 + e3 * e1 + lat.g2() / 4.0).norm() < 1e-10 * scale);
            assert!((e1 * e2 * e3 - lat.g3() / 4.0).norm() < 1e-10 * scale);
        }
    }

    #[test]
    fn cubic_roots_satisfy_cubic() {
        let g2 = c(3.0, 1.5);
        let g3 = c(-0.5, 2.0);
        for r in solve_wp_cubic(g2, g3) {
            let f = 4.0 * r.powu(3) - g2 * r - g3;
            assert!(f.norm() < 1e-12 * (1.0 + r.norm().powi(3)));
        }
    }

    #[test]
    fn reduce_argument_examples() {
        // square lattice with full period 2: half-periods (1, i)
        let lat = Lattice::from_half_periods(c(1.0, 0.0), c(0.0, 1.0)).unwrap();
        let (zr, shift) = lat.reduce_argument(c(0.3, 0.2)).unwrap();
        assert!((zr - c(0.3, 0.2)).norm() < 1e-15);
        assert_eq!(shift, c(0.0, 0.0));

        let (zr, shift) = lat.reduce_argument(c(2.3, 0.2)).unwrap();
        assert!((zr - c(0.3, 0.2)).norm() < 1e-12);
        assert!((shift - c(2.0, 0.0)).norm() < 1e-12);

        match lat.reduce_argument(c(2.0, 2.0)) {
            Err(Error::Pole { lattice_point, .. }) => {
                assert!((lattice_point - c(2.0, 2.0)).norm() < 1e-12)
            }
            other => panic!("expected pole, got {other:?}"),
        }
    }

    #[test]
    fn shortest_vector_of_sheared_basis() {
        // basis (2, 2 + i) reduces to (i, 2): shortest vector length 1
        let lat = Lattice::from_half_periods(c(1.0, 0.0), c(1.0, 0.5)).unwrap();
        assert!((lat.shortest_vector_length().unwrap() - 1.0).abs() < 1e-14);
        // an extreme shear collapses e2 and e3 beyond f64 separation; the
        // constructor reports it instead of mislabeling
        assert!(Lattice::from_half_periods(c(1.0, 0.0), c(1.0, 0.01)).is_err());
    }

    #[test]
    fn invariants_only_mode() {
        let lat = Lattice::from_invariants(c(8.0, 0.0), c(4.0, 0.0)).unwrap();
        assert!(!lat.has_periods());
        assert!(lat.reduce_argument(c(0.5, 0.5)).is_err());
        let [e1, e2, e3] = lat.e_values();
        assert!((e1 + e2 + e3).norm() < 1e-10);
        assert!(Lattice::from_invariants(c(12.0, 0.0), c(8.0, 0.0)).is_err()); // disc = 0
    }

    #[test]
    fn lattice_spec_roundtrip() {
        let spec = LatticeSpec::from_json(r#"{"periods": [[2.0, 0.0], [0.0, 2.0]]}"#).unwrap();
        let lat = spec.build().unwrap();
        assert!((lat.g2().re - SQUARE_G2).abs() < 1e-10);

        let spec = LatticeSpec::from_json(r#"{"invariants": {"g2": [8.0, 0.0], "g3": [4.0, 0.0]}}"#)
            .unwrap();
        assert!(!spec.build().unwrap().has_periods());

        assert!(LatticeSpec::from_json(r#"{"nope": 1}"#).is_err());
        assert!(LatticeSpec::from_json(r#"{}"#).unwrap().build().is_err());
    }
}
