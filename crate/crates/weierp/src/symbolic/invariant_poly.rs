//! Sparse polynomials in the invariants g₂, g₃ with exact rational
//! coefficients.

use std::collections::BTreeMap;
use std::fmt;

use num::complex::Complex64;
use num::rational::BigRational;
use num::traits::{One, Signed, ToPrimitive, Zero};
use num::BigInt;

/// Element of ℚ[g₂, g₃]. Keys are `(power of g2, power of g3)`; zero
/// coefficients are never stored and rationals are kept reduced (num handles
/// canonical form).
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct InvariantPoly {
    terms: BTreeMap<(u32, u32), BigRational>,
}

impl InvariantPoly {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::constant(BigRational::one())
    }

    pub fn constant(c: BigRational) -> Self {
        let mut p = Self::default();
        if !c.is_zero() {
            p.terms.insert((0, 0), c);
        }
        p
    }

    pub fn from_i64(n: i64) -> Self {
        Self::constant(BigRational::from_integer(BigInt::from(n)))
    }

    /// p/q as a constant.
    pub fn from_ratio(p: i64, q: i64) -> Self {
        Self::constant(BigRational::new(BigInt::from(p), BigInt::from(q)))
    }

    pub fn g2() -> Self {
        Self::monomial(1, 0, BigRational::one())
    }

    pub fn g3() -> Self {
        Self::monomial(0, 1, BigRational::one())
    }

    pub fn monomial(g2_pow: u32, g3_pow: u32, c: BigRational) -> Self {
        let mut p = Self::default();
        if !c.is_zero() {
            p.terms.insert((g2_pow, g3_pow), c);
        }
        p
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&(u32, u32), &BigRational)> {
        self.terms.iter()
    }

    pub fn add_term(&mut self, key: (u32, u32), c: &BigRational) {
        if c.is_zero() {
            return;
        }
        let entry = self.terms.entry(key).or_insert_with(BigRational::zero);
        *entry += c;
        if entry.is_zero() {
            self.terms.remove(&key);
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (k, c) in &other.terms {
            out.add_term(*k, c);
        }
        out
    }

    pub fn sub(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (k, c) in &other.terms {
            out.add_term(*k, &(-c.clone()));
        }
        out
    }

    pub fn neg(&self) -> Self {
        let mut out = Self::default();
        for (k, c) in &self.terms {
            out.terms.insert(*k, -c.clone());
        }
        out
    }

    pub fn mul(&self, other: &Self) -> Self {
        let mut out = Self::default();
        for (ka, ca) in &self.terms {
            for (kb, cb) in &other.terms {
                out.add_term((ka.0 + kb.0, ka.1 + kb.1), &(ca * cb));
            }
        }
        out
    }

    pub fn scale(&self, c: &BigRational) -> Self {
        if c.is_zero() {
            return Self::default();
        }
        let mut out = Self::default();
        for (k, v) in &self.terms {
            out.terms.insert(*k, v * c);
        }
        out
    }

    /// Numeric evaluation at complex invariants.
    pub fn eval(&self, g2: Complex64, g3: Complex64) -> Complex64 {
        let mut acc = Complex64::new(0.0, 0.0);
        for (&(a, b), c) in &self.terms {
            let coeff = rational_to_f64(c);
            acc += coeff * g2.powu(a) * g3.powu(b);
        }
        acc
    }

    /// Exact evaluation at rational invariants.
    pub fn eval_rational(&self, g2: &BigRational, g3: &BigRational) -> BigRational {
        let mut acc = BigRational::zero();
        for (&(a, b), c) in &self.terms {
            let mut term = c.clone();
            for _ in 0..a {
                term *= g2;
            }
            for _ in 0..b {
                term *= g3;
            }
            acc += term;
        }
        acc
    }

    /// Renders per the textual interface: terms sorted by descending g2 power
    /// then g3 power, coefficients as `p/q`, monomials as `g2^a g3^b`.
    pub fn render(&self) -> String {
        if self.terms.is_empty() {
            return "0".into();
        }
        let mut keys: Vec<&(u32, u32)> = self.terms.keys().collect();
        keys.sort_by(|a, b| b.cmp(a));
        let mut out = String::new();
        for (i, key) in keys.iter().enumerate() {
            let c = &self.terms[*key];
            push_signed_term(&mut out, i == 0, c, &monomial_str(key.0, key.1));
        }
        out
    }
}

pub(crate) fn rational_to_f64(c: &BigRational) -> f64 {
    c.to_f64().unwrap_or_else(|| {
        // fall back through a quotient of f64-rounded parts
        let n = c.numer().to_f64().unwrap_or(f64::NAN);
        let d = c.denom().to_f64().unwrap_or(f64::NAN);
        n / d
    })
}

fn monomial_str(a: u32, b: u32) -> String {
    let mut s = String::new();
    if a > 0 {
        s.push_str("g2");
        if a > 1 {
            s.push_str(&format!("^{a}"));
        }
    }
    if b > 0 {
        if !s.is_empty() {
            s.push(' ');
        }
        s.push_str("g3");
        if b > 1 {
            s.push_str(&format!("^{b}"));
        }
    }
    s
}

/// Shared rendering helper: appends `+/- coeff monomial` with unit
/// coefficients elided when a monomial is present.
pub(crate) fn push_signed_term(out: &mut String, first: bool, c: &BigRational, monomial: &str) {
    let neg = c.is_negative();
    let mag = c.abs();
    if first {
        if neg {
            out.push('-');
        }
    } else if neg {
        out.push_str(" - ");
    } else {
        out.push_str(" + ");
    }
    let coeff = format_rational(&mag);
    if monomial.is_empty() {
        out.push_str(&coeff);
    } else if mag.is_one() {
        out.push_str(monomial);
    } else {
        out.push_str(&coeff);
        out.push(' ');
        out.push_str(monomial);
    }
}

pub(crate) fn format_rational(c: &BigRational) -> String {
    if c.denom().is_one() {
        format!("{}", c.numer())
    } else {
        format!("{}/{}", c.numer(), c.denom())
    }
}

impl fmt::Display for InvariantPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.render())
    }
}
