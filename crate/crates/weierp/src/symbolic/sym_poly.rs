//! Exact multivariate polynomials in λ₁, λ₂, λ₃, g₂, g₃ over ℚ.
//!
//! This is the exact path for regressing μ tables against hand-expanded closed
//! forms with the λᵢ kept as formal generators. Only configurations with
//! ℓ ≤ 3 need it, so the generator set is fixed at five variables.

use std::collections::BTreeMap;

use num::rational::BigRational;
use num::traits::{One, Zero};
use num::BigInt;

pub const NVARS: usize = 5;

/// Generator indices.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Var {
    Lambda1 = 0,
    Lambda2 = 1,
    Lambda3 = 2,
    G2 = 3,
    G3 = 4,
}

/// Sparse polynomial in ℚ[λ₁, λ₂, λ₃, g₂, g₃].
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct SymPoly {
    terms: BTreeMap<[u16; NVARS], BigRational>,
}

impl SymPoly {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn constant(c: BigRational) -> Self {
        let mut p = Self::default();
        if !c.is_zero() {
            p.terms.insert([0; NVARS], c);
        }
        p
    }

    pub fn from_i64(n: i64) -> Self {
        Self::constant(BigRational::from_integer(BigInt::from(n)))
    }

    pub fn from_ratio(p: i64, q: i64) -> Self {
        Self::constant(BigRational::new(BigInt::from(p), BigInt::from(q)))
    }

    pub fn var(v: Var) -> Self {
        let mut exps = [0u16; NVARS];
        exps[v as usize] = 1;
        let mut p = Self::default();
        p.terms.insert(exps, BigRational::one());
        p
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    fn add_term(&mut self, key: [u16; NVARS], c: &BigRational) {
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
                let mut key = [0u16; NVARS];
                for i in 0..NVARS {
                    key[i] = ka[i] + kb[i];
                }
                out.add_term(key, &(ca * cb));
            }
        }
        out
    }

    pub fn scale(&self, c: &BigRational) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        let mut out = Self::default();
        for (k, v) in &self.terms {
            out.terms.insert(*k, v * c);
        }
        out
    }

    pub fn square(&self) -> Self {
        self.mul(self)
    }

    /// Exact evaluation at rational generator values.
    pub fn eval(&self, vals: &[BigRational; NVARS]) -> BigRational {
        let mut acc = BigRational::zero();
        for (key, c) in &self.terms {
            let mut term = c.clone();
            for (i, &e) in key.iter().enumerate() {
                for _ in 0..e {
                    term *= &vals[i];
                }
            }
            acc += term;
        }
        acc
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn r(n: i64) -> BigRational {
        BigRational::from_integer(BigInt::from(n))
    }

    #[test]
    fn polynomial_identity_square_of_sum() {
        // (λ1 + g2)^2 = λ1^2 + 2 λ1 g2 + g2^2
        let lhs = SymPoly::var(Var::Lambda1).add(&SymPoly::var(Var::G2)).square();
        let rhs = SymPoly::var(Var::Lambda1)
            .square()
            .add(&SymPoly::var(Var::Lambda1).mul(&SymPoly::var(Var::G2)).scale(&r(2)))
            .add(&SymPoly::var(Var::G2).square());
        assert_eq!(lhs, rhs);
    }

    #[test]
    fn evaluation_matches_by_hand() {
        // p = 3 λ2 g3 - 1/2 at λ2 = 2/3, g3 = 5
        let p = SymPoly::var(Var::Lambda2)
            .mul(&SymPoly::var(Var::G3))
            .scale(&r(3))
            .add(&SymPoly::from_ratio(-1, 2));
        let vals = [r(0), BigRational::new(BigInt::from(2), BigInt::from(3)), r(0), r(0), r(5)];
        assert_eq!(p.eval(&vals), BigRational::new(BigInt::from(19), BigInt::from(2)));
    }
}
