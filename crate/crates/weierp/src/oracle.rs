//! Independent reference evaluations by the defining lattice sums.
//!
//! These routes share nothing with the production paths (q-series invariants,
//! Laurent-plus-duplication ℘) beyond the lattice itself, and back the
//! cross-validation suites.

use num::complex::Complex64;

use crate::error::Result;
use crate::eval;
use crate::lattice::Lattice;

const ZERO: Complex64 = Complex64::new(0.0, 0.0);

/// Kahan-compensated complex accumulator.
#[derive(Default)]
struct Kahan {
    sum: Complex64,
    comp: Complex64,
}

impl Kahan {
    fn add(&mut self, x: Complex64) {
        let y = x - self.comp;
        let t = self.sum + y;
        self.comp = (t - self.sum) - y;
        self.sum = t;
    }
}

/// Invariants by the truncated defining double sums
/// g₂ = 60 Σ′ ω⁻⁴, g₃ = 140 Σ′ ω⁻⁶ over ω = 2mω₁ + 2nω₂ with |m|,|n| ≤
/// `index_bound`, accumulated in shells of increasing |ω|. Documented
/// agreement with the q-series path: 1e−4 relative (weight 4 dominates the
/// square-cutoff tail).
pub fn invariants_direct_sum(
    omega1: Complex64,
    omega2: Complex64,
    index_bound: i64,
) -> (Complex64, Complex64) {
    let p1 = 2.0 * omega1;
    let p2 = 2.0 * omega2;
    let mut points: Vec<Complex64> = Vec::with_capacity(((2 * index_bound + 1).pow(2) - 1) as usize);
    for m in -index_bound..=index_bound {
        for n in -index_bound..=index_bound {
            if m == 0 && n == 0 {
                continue;
            }
            points.push(m as f64 * p1 + n as f64 * p2);
        }
    }
    points.sort_by(|a, b| a.norm_sqr().partial_cmp(&b.norm_sqr()).expect("finite norms"));
    let mut s4 = Kahan::default();
    let mut s6 = Kahan::default();
    for w in points {
        let inv2 = 1.0 / (w * w);
        let inv4 = inv2 * inv2;
        s4.add(inv4);
        s6.add(inv4 * inv2);
    }
    (60.0 * s4.sum, 140.0 * s6.sum)
}

/// ℘ by the truncated defining sum
/// z⁻² + Σ [ (z−ω)⁻² − ω⁻² ] over 0 < |ω| ≤ `shells`·(shortest vector),
/// with the analytically known weight-4/6 tails restored:
/// the omitted terms expand to 3z²T₄ + 5z⁴T₆ + O(z⁶T₈), T₂ⱼ = Σ_{|ω|>R} ω⁻²ʲ,
/// and T₄, T₆ follow from g₂/60, g₃/140 minus the partial sums. Requires
/// periods.
pub fn wp_direct_sum(z: Complex64, lat: &Lattice, shells: f64) -> Result<Complex64> {
    let shortest = lat
        .shortest_vector_length()
        .ok_or(crate::error::Error::InvariantsOnly)?;
    lat.reduce_argument(z)?; // pole check only; the sum uses z as given
    let ring = lat.points_in_disk(shells * shortest)?;
    let mut acc = Kahan::default();
    let mut s4 = Kahan::default();
    let mut s6 = Kahan::default();
    for &w in &ring {
        let inv2 = 1.0 / (w * w);
        let d = z - w;
        acc.add(1.0 / (d * d) - inv2);
        let inv4 = inv2 * inv2;
        s4.add(inv4);
        s6.add(inv4 * inv2);
    }
    let t4 = lat.g2() / 60.0 - s4.sum;
    let t6 = lat.g3() / 140.0 - s6.sum;
    let z2 = z * z;
    Ok(1.0 / z2 + acc.sum + 3.0 * z2 * t4 + 5.0 * z2 * z2 * t6)
}

/// n-th derivative of the production ℘ by a circular difference stencil:
/// the trapezoid discretization of the Cauchy integral over a ring of
/// `samples` points with radius `radius_fraction` times the distance from z
/// to the nearest lattice point. Spectrally accurate and free of the
/// cancellation that breaks iterated central stencils in double precision
/// for n ≳ 4.
pub fn wp_deriv_ring_stencil(
    z: Complex64,
    n: u32,
    lat: &Lattice,
    radius_fraction: f64,
    samples: usize,
) -> Result<Complex64> {
    let d = lat.pole_distance(z)?;
    let r = radius_fraction * d;
    let mut acc = ZERO;
    for j in 0..samples {
        let theta = 2.0 * std::f64::consts::PI * j as f64 / samples as f64;
        let rot = Complex64::new(0.0, theta).exp();
        let f = eval::wp(z + r * rot, lat)?;
        acc += f * Complex64::new(0.0, -theta * n as f64).exp();
    }
    let mut factorial = 1.0f64;
    for k in 2..=n as u64 {
        factorial *= k as f64;
    }
    Ok(acc * factorial / (samples as f64 * Complex64::new(r, 0.0).powu(n)))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn direct_invariants_match_production_on_tall_lattice() {
        // (1, 2i): nonzero g2 and g3
        let (g2o, g3o) = invariants_direct_sum(c(1.0, 0.0), c(0.0, 2.0), 200);
        let (g2, g3) = crate::lattice::invariants_from_periods(c(1.0, 0.0), c(0.0, 2.0)).unwrap();
        assert!((g2 - g2o).norm() <= 1e-4 * g2.norm(), "g2 {g2} vs oracle {g2o}");
        assert!((g3 - g3o).norm() <= 1e-4 * g3.norm(), "g3 {g3} vs oracle {g3o}");
        // reference magnitudes for the same pair, frozen from the oracle run
        assert!((g2o.re - 8.124218).abs() < 1e-4);
        assert!((g3o.re - 4.443052).abs() < 1e-4);
    }

    #[test]
    fn wp_direct_sum_matches_production() {
        let lat = Lattice::from_half_periods(c(1.0, 0.0), c(0.3, 1.1)).unwrap();
        for (re, im) in [(0.31, 0.4), (-0.6, 0.9), (0.85, -0.2)] {
            let z = c(re, im);
            let direct = wp_direct_sum(z, &lat, 60.0).unwrap();
            let prod = eval::wp(z, &lat).unwrap();
            assert!(
                (direct - prod).norm() <= 1e-6 * (1.0 + prod.norm()),
                "oracle {direct} production {prod}"
            );
        }
    }

    #[test]
    fn ring_stencil_matches_symbolic_forms_low_order() {
        let lat = Lattice::from_half_periods(c(1.0, 0.0), c(0.3, 1.1)).unwrap();
        let z = c(0.45, 0.3);
        for n in [1u32, 2, 3] {
            let fd = wp_deriv_ring_stencil(z, n, &lat, 0.35, 48).unwrap();
            let exact = eval::wp_deriv(z, n as i64, &lat).unwrap();
            assert!(
                (fd - exact).norm() <= 1e-9 * (1.0 + exact.norm()),
                "n = {n}: stencil {fd} exact {exact}"
            );
        }
    }
}
