//! Dense polynomials in the formal variable X (standing for ℘) with
//! coefficients in ℚ[g₂, g₃].

use std::fmt;

use num::complex::Complex64;

use super::invariant_poly::{push_signed_term, InvariantPoly};

/// Polynomial Σ aᵢ(g₂,g₃) Xⁱ. Trailing zero coefficients are trimmed, so the
/// stored length tracks the degree exactly.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct WpPoly {
    coeffs: Vec<InvariantPoly>,
}

impl WpPoly {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn constant(c: InvariantPoly) -> Self {
        let mut p = Self { coeffs: vec![c] };
        p.trim();
        p
    }

    pub fn one() -> Self {
        Self::constant(InvariantPoly::one())
    }

    /// The monomial X.
    pub fn x() -> Self {
        Self::from_coeffs(vec![InvariantPoly::zero(), InvariantPoly::one()])
    }

    pub fn from_coeffs(coeffs: Vec<InvariantPoly>) -> Self {
        let mut p = Self { coeffs };
        p.trim();
        p
    }

    fn trim(&mut self) {
        while matches!(self.coeffs.last(), Some(c) if c.is_zero()) {
            self.coeffs.pop();
        }
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Degree, or None for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn coeff(&self, i: usize) -> InvariantPoly {
        self.coeffs.get(i).cloned().unwrap_or_default()
    }

    pub fn coeffs(&self) -> &[InvariantPoly] {
        &self.coeffs
    }

    pub fn add(&self, other: &Self) -> Self {
        let n = self.coeffs.len().max(other.coeffs.len());
        let mut out = Vec::with_capacity(n);
        for i in 0..n {
            out.push(self.coeff(i).add(&other.coeff(i)));
        }
        Self::from_coeffs(out)
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> Self {
        Self {
            coeffs: self.coeffs.iter().map(InvariantPoly::neg).collect(),
        }
    }

    pub fn mul(&self, other: &Self) -> Self {
        if self.is_zero() || other.is_zero() {
            return Self::zero();
        }
        let mut out = vec![InvariantPoly::zero(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                out[i + j] = out[i + j].add(&a.mul(b));
            }
        }
        Self::from_coeffs(out)
    }

    pub fn scale(&self, c: &InvariantPoly) -> Self {
        Self::from_coeffs(self.coeffs.iter().map(|a| a.mul(c)).collect())
    }

    /// d/dX.
    pub fn derivative_x(&self) -> Self {
        if self.coeffs.len() <= 1 {
            return Self::zero();
        }
        let mut out = Vec::with_capacity(self.coeffs.len() - 1);
        for (i, a) in self.coeffs.iter().enumerate().skip(1) {
            out.push(a.scale(&num::rational::BigRational::from_integer(num::BigInt::from(i))));
        }
        Self::from_coeffs(out)
    }

    /// The cubic 4X³ − g₂X − g₃ from the differential equation.
    pub fn wp_cubic() -> Self {
        Self::from_coeffs(vec![
            InvariantPoly::g3().neg(),
            InvariantPoly::g2().neg(),
            InvariantPoly::zero(),
            InvariantPoly::from_i64(4),
        ])
    }

    /// Horner evaluation at a numeric ℘ value and numeric invariants.
    pub fn eval(&self, x: Complex64, g2: Complex64, g3: Complex64) -> Complex64 {
        let mut acc = Complex64::new(0.0, 0.0);
        for a in self.coeffs.iter().rev() {
            acc = acc * x + a.eval(g2, g3);
        }
        acc
    }

    /// Coefficients evaluated at numeric invariants (for building numeric
    /// polynomials in ℘).
    pub fn eval_coeffs(&self, g2: Complex64, g3: Complex64) -> Vec<Complex64> {
        self.coeffs.iter().map(|a| a.eval(g2, g3)).collect()
    }

    /// Renders with terms sorted by descending X power, then descending g2
    /// and g3 powers inside each coefficient: `"6 X^2 - 1/2 g2"`.
    pub fn render(&self) -> String {
        if self.is_zero() {
            return "0".into();
        }
        let mut out = String::new();
        let mut first = true;
        for i in (0..self.coeffs.len()).rev() {
            let coeff = &self.coeffs[i];
            if coeff.is_zero() {
                continue;
            }
            let x_str = match i {
                0 => String::new(),
                1 => "X".to_string(),
                _ => format!("X^{i}"),
            };
            let mut keys: Vec<(u32, u32)> = coeff.terms().map(|(k, _)| *k).collect();
            keys.sort_by(|a, b| b.cmp(a));
            for key in keys {
                let c = coeff
                    .terms()
                    .find(|(k, _)| **k == key)
                    .map(|(_, c)| c.clone())
                    .unwrap();
                let mono = join_monomial(key, &x_str);
                push_signed_term(&mut out, first, &c, &mono);
                first = false;
            }
        }
        out
    }
}

fn join_monomial(key: (u32, u32), x_str: &str) -> String {
    let mut parts = Vec::new();
    if key.0 > 0 {
        parts.push(if key.0 == 1 { "g2".to_string() } else { format!("g2^{}", key.0) });
    }
    if key.1 > 0 {
        parts.push(if key.1 == 1 { "g3".to_string() } else { format!("g3^{}", key.1) });
    }
    if !x_str.is_empty() {
        parts.push(x_str.to_string());
    }
    parts.join(" ")
}

impl fmt::Display for WpPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.render())
    }
}
