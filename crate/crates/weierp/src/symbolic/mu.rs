//! The φ polynomial and its μ coefficients.
//!
//! For a configuration {(nᵢ, γᵢ)}, {kᵢ} and solved multipliers λᵢ, the
//! function
//!
//!   φ(s) = (Σ_{odd nᵢ} γᵢ℘⁽ⁿⁱ⁾(s) − Σ_{odd kᵢ} λᵢ℘⁽ᵏⁱ⁾(s))²
//!        − (Σ_{even nᵢ} γᵢ℘⁽ⁿⁱ⁾(s) − Σ_{even kᵢ} λᵢ℘⁽ᵏⁱ⁾(s))²
//!
//! collapses to a polynomial of degree ≤ ℓ+1 in ℘(s): the odd group is ℘′
//! times a polynomial in ℘ and squaring substitutes ℘′² = 4℘³ − g₂℘ − g₃.
//! μ(0..ℓ+1) are φ's coefficients.

use num::complex::Complex64;
use num::rational::BigRational;

use super::derivative::derivative_form;
use super::sym_poly::{SymPoly, Var};
use crate::engine::AdditionConfig;
use crate::error::{Error, Result};

/// Coefficients μ(0), …, μ(ℓ+1) of φ as a polynomial in ℘ (numeric path).
#[derive(Debug, Clone)]
pub struct MuTable {
    pub ell: usize,
    pub mu: Vec<Complex64>,
}

impl MuTable {
    /// φ evaluated at a numeric ℘ value.
    pub fn eval_phi(&self, x: Complex64) -> Complex64 {
        let mut acc = Complex64::new(0.0, 0.0);
        for &m in self.mu.iter().rev() {
            acc = acc * x + m;
        }
        acc
    }

    /// μ(ℓ+1), the leading coefficient.
    pub fn leading(&self) -> Complex64 {
        self.mu[self.ell + 1]
    }

    /// Largest |μ(r)|, the natural scale for degeneracy checks.
    pub fn scale(&self) -> f64 {
        self.mu.iter().map(|m| m.norm()).fold(0.0, f64::max)
    }
}

// dense complex polynomial helpers (local: lengths stay tiny)
fn cp_add_scaled(acc: &mut Vec<Complex64>, p: &[Complex64], s: Complex64) {
    if acc.len() < p.len() {
        acc.resize(p.len(), Complex64::new(0.0, 0.0));
    }
    for (a, &b) in acc.iter_mut().zip(p.iter()) {
        *a += s * b;
    }
}

fn cp_mul(a: &[Complex64], b: &[Complex64]) -> Vec<Complex64> {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![Complex64::new(0.0, 0.0); a.len() + b.len() - 1];
    for (i, &x) in a.iter().enumerate() {
        for (j, &y) in b.iter().enumerate() {
            out[i + j] += x * y;
        }
    }
    out
}

/// Builds the MuTable for a configuration with solved λ values.
pub fn phi_mu(
    config: &AdditionConfig,
    lambdas: &[Complex64],
    g2: Complex64,
    g3: Complex64,
) -> Result<MuTable> {
    let ell = config.ell();
    if lambdas.len() != ell {
        return Err(Error::InvalidInput(format!(
            "expected {ell} lambdas, got {}",
            lambdas.len()
        )));
    }
    let mut c_odd: Vec<Complex64> = Vec::new();
    let mut c_even: Vec<Complex64> = Vec::new();
    for &(n, gamma) in config.gamma_terms() {
        let form = derivative_form(n)?;
        if n >= 0 && n % 2 == 1 {
            cp_add_scaled(&mut c_odd, &form.odd_part.eval_coeffs(g2, g3), gamma);
        } else {
            cp_add_scaled(&mut c_even, &form.even_part.eval_coeffs(g2, g3), gamma);
        }
    }
    for (&k, &lambda) in config.k_orders().iter().zip(lambdas.iter()) {
        let form = derivative_form(k)?;
        if k >= 0 && k % 2 == 1 {
            cp_add_scaled(&mut c_odd, &form.odd_part.eval_coeffs(g2, g3), -lambda);
        } else {
            cp_add_scaled(&mut c_even, &form.even_part.eval_coeffs(g2, g3), -lambda);
        }
    }

    let cubic = [
        -g3,
        -g2,
        Complex64::new(0.0, 0.0),
        Complex64::new(4.0, 0.0),
    ];
    let mut phi = cp_mul(&cubic, &cp_mul(&c_odd, &c_odd));
    let even_sq = cp_mul(&c_even, &c_even);
    cp_add_scaled(&mut phi, &even_sq, Complex64::new(-1.0, 0.0));

    let mut mu = phi;
    if mu.len() > ell + 2 {
        // degree never exceeds ell+1; anything above is rounding noise
        let tail_scale: f64 = mu.iter().map(|c| c.norm()).fold(0.0, f64::max);
        for extra in mu.drain(ell + 2..) {
            if extra.norm() > 1e-10 * tail_scale {
                return Err(Error::Consistency(format!(
                    "phi degree exceeded ell+1 with coefficient {extra}"
                )));
            }
        }
    }
    mu.resize(ell + 2, Complex64::new(0.0, 0.0));
    Ok(MuTable { ell, mu })
}

/// μ coefficients with λᵢ as formal generators (exact path, ℓ ≤ 3). γ values
/// must be rational.
#[derive(Debug, Clone)]
pub struct ExactMuTable {
    pub ell: usize,
    pub mu: Vec<SymPoly>,
}

const LAMBDA_VARS: [Var; 3] = [Var::Lambda1, Var::Lambda2, Var::Lambda3];

fn invariant_to_sym(p: &super::invariant_poly::InvariantPoly) -> SymPoly {
    let mut out = SymPoly::zero();
    for (&(a, b), c) in p.terms() {
        let mut term = SymPoly::constant(c.clone());
        for _ in 0..a {
            term = term.mul(&SymPoly::var(Var::G2));
        }
        for _ in 0..b {
            term = term.mul(&SymPoly::var(Var::G3));
        }
        out = out.add(&term);
    }
    out
}

fn wp_poly_to_sym(p: &super::wp_poly::WpPoly) -> Vec<SymPoly> {
    p.coeffs().iter().map(invariant_to_sym).collect()
}

fn sp_add_scaled(acc: &mut Vec<SymPoly>, p: &[SymPoly], s: &SymPoly) {
    if acc.len() < p.len() {
        acc.resize(p.len(), SymPoly::zero());
    }
    for (a, b) in acc.iter_mut().zip(p.iter()) {
        *a = a.add(&s.mul(b));
    }
}

fn sp_mul(a: &[SymPoly], b: &[SymPoly]) -> Vec<SymPoly> {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![SymPoly::zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        for (j, y) in b.iter().enumerate() {
            out[i + j] = out[i + j].add(&x.mul(y));
        }
    }
    out
}

/// Exact μ table with formal λ generators.
pub fn phi_mu_exact(
    gamma_terms: &[(i64, BigRational)],
    k_orders: &[i64],
) -> Result<ExactMuTable> {
    let max_order = gamma_terms
        .iter()
        .map(|&(n, _)| n)
        .chain(k_orders.iter().copied())
        .max()
        .ok_or_else(|| Error::InvalidConfig("empty configuration".into()))?;
    if max_order < 0 {
        return Err(Error::InvalidConfig(
            "maximal order must be >= 0 so that ell >= 1".into(),
        ));
    }
    let ell = (max_order + 1) as usize;
    if k_orders.len() != ell {
        return Err(Error::InvalidConfig(format!(
            "expected {ell} k-orders, got {}",
            k_orders.len()
        )));
    }
    if ell > 3 {
        return Err(Error::InvalidConfig(
            "exact path supports ell <= 3 (three lambda generators)".into(),
        ));
    }

    let mut c_odd: Vec<SymPoly> = Vec::new();
    let mut c_even: Vec<SymPoly> = Vec::new();
    for (n, gamma) in gamma_terms {
        let form = derivative_form(*n)?;
        let scale = SymPoly::constant(gamma.clone());
        if *n >= 0 && *n % 2 == 1 {
            sp_add_scaled(&mut c_odd, &wp_poly_to_sym(&form.odd_part), &scale);
        } else {
            sp_add_scaled(&mut c_even, &wp_poly_to_sym(&form.even_part), &scale);
        }
    }
    for (i, &k) in k_orders.iter().enumerate() {
        let form = derivative_form(k)?;
        let scale = SymPoly::var(LAMBDA_VARS[i]).neg();
        if k >= 0 && k % 2 == 1 {
            sp_add_scaled(&mut c_odd, &wp_poly_to_sym(&form.odd_part), &scale);
        } else {
            sp_add_scaled(&mut c_even, &wp_poly_to_sym(&form.even_part), &scale);
        }
    }

    let cubic = [
        SymPoly::var(Var::G3).neg(),
        SymPoly::var(Var::G2).neg(),
        SymPoly::zero(),
        SymPoly::from_i64(4),
    ];
    let mut phi = sp_mul(&cubic, &sp_mul(&c_odd, &c_odd));
    let even_sq = sp_mul(&c_even, &c_even);
    if phi.len() < even_sq.len() {
        phi.resize(even_sq.len(), SymPoly::zero());
    }
    for (a, b) in phi.iter_mut().zip(even_sq.iter()) {
        *a = a.sub(b);
    }

    while phi.len() > ell + 2 {
        let top = phi.pop().expect("non-empty");
        if !top.is_zero() {
            return Err(Error::Consistency(
                "exact phi degree exceeded ell+1".into(),
            ));
        }
    }
    phi.resize(ell + 2, SymPoly::zero());
    Ok(ExactMuTable { ell, mu: phi })
}

#[cfg(test)]
mod tests {
    use super::*;
    use num::BigInt;

    fn r(n: i64) -> BigRational {
        BigRational::from_integer(BigInt::from(n))
    }

    fn lam(i: usize) -> SymPoly {
        SymPoly::var(LAMBDA_VARS[i])
    }

    fn g2() -> SymPoly {
        SymPoly::var(Var::G2)
    }

    fn g3() -> SymPoly {
        SymPoly::var(Var::G3)
    }

    #[test]
    fn two_point_mu_table_closed_forms() {
        // n1 = 1, gamma1 = 1, k = (0, -2):
        //   mu(0) = -lambda2^2 - g3, mu(1) = -2 lambda1 lambda2 - g2,
        //   mu(2) = -lambda1^2, mu(3) = 4
        let table = phi_mu_exact(&[(1, r(1))], &[0, -2]).unwrap();
        assert_eq!(table.ell, 2);
        assert_eq!(table.mu[0], lam(1).square().neg().sub(&g3()));
        assert_eq!(table.mu[1], lam(0).mul(&lam(1)).scale(&r(-2)).sub(&g2()));
        assert_eq!(table.mu[2], lam(0).square().neg());
        assert_eq!(table.mu[3], SymPoly::from_i64(4));
    }

    #[test]
    fn three_point_mu_table_closed_forms() {
        // n1 = 2, gamma1 = 1, k = (1, 0, -2):
        //   mu(0) = -lambda1^2 g3 - lambda3^2 - lambda3 g2 - g2^2/4
        //   mu(1) = -lambda1^2 g2 - 2 lambda2 lambda3 - lambda2 g2
        //   mu(2) = -lambda2^2 + 12 lambda3 + 6 g2
        //   mu(3) = 4 lambda1^2 + 12 lambda2
        //   mu(4) = -36
        let table = phi_mu_exact(&[(2, r(1))], &[1, 0, -2]).unwrap();
        assert_eq!(table.ell, 3);
        let mu0 = lam(0)
            .square()
            .mul(&g3())
            .neg()
            .sub(&lam(2).square())
            .sub(&lam(2).mul(&g2()))
            .sub(&g2().square().scale(&BigRational::new(BigInt::from(1), BigInt::from(4))));
        assert_eq!(table.mu[0], mu0);
        let mu1 = lam(0)
            .square()
            .mul(&g2())
            .neg()
            .sub(&lam(1).mul(&lam(2)).scale(&r(2)))
            .sub(&lam(1).mul(&g2()));
        assert_eq!(table.mu[1], mu1);
        let mu2 = lam(1).square().neg().add(&lam(2).scale(&r(12))).add(&g2().scale(&r(6)));
        assert_eq!(table.mu[2], mu2);
        let mu3 = lam(0).square().scale(&r(4)).add(&lam(1).scale(&r(12)));
        assert_eq!(table.mu[3], mu3);
        assert_eq!(table.mu[4], SymPoly::from_i64(-36));
    }

    #[test]
    fn identical_sums_cancel() {
        // gamma pairing with n_i = k_i termwise and lambda = gamma would give
        // phi == 0; with formal lambdas the check is at matched evaluation.
        let table = phi_mu_exact(&[(1, r(1)), (0, r(2))], &[1, 0]).unwrap();
        // evaluate each mu at lambda = (1, 2, _): all must vanish
        let vals = [r(1), r(2), r(0), r(7), r(-3)];
        for m in &table.mu {
            assert!(m.eval(&vals).eq(&r(0)));
        }
    }
}
