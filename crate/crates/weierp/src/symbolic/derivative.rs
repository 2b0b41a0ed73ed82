//! Exact reduction of ℘⁽ⁿ⁾ to polynomials in ℘.
//!
//! Every derivative of ℘ splits by parity: even orders are polynomials in ℘,
//! odd orders are ℘′ times a polynomial in ℘, with coefficients in ℚ\[g₂,g₃\].
//! The split is computed by repeated differentiation using
//!
//!   d/dz P(℘)        = ℘′ · P′(℘)
//!   d/dz [℘′ · P(℘)] = (6X² − g₂/2) P + (4X³ − g₂X − g₃) P′   evaluated at X = ℘,
//!
//! where the second line substitutes ℘″ = 6℘² − g₂/2 and ℘′² = 4℘³ − g₂℘ − g₃.

use std::fmt;
use std::sync::{Arc, Mutex, OnceLock};

use num::complex::Complex64;

use super::wp_poly::WpPoly;
use crate::error::{Error, Result};

/// ℘⁽ⁿ⁾ = E(℘) + ℘′·O(℘). Exactly one part is nonzero: `even_part` for even n
/// (and n = −2, the constant function 1), `odd_part` for odd n.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DerivativeForm {
    pub n: i64,
    pub even_part: WpPoly,
    pub odd_part: WpPoly,
}

impl DerivativeForm {
    /// Evaluates at numeric (℘(z), ℘′(z), g₂, g₃).
    pub fn eval(&self, wp: Complex64, wp1: Complex64, g2: Complex64, g3: Complex64) -> Complex64 {
        self.even_part.eval(wp, g2, g3) + wp1 * self.odd_part.eval(wp, g2, g3)
    }

    /// Textual rendering: even forms as a plain polynomial, odd forms as
    /// `P' * (...)`.
    pub fn render(&self) -> String {
        match (self.even_part.is_zero(), self.odd_part.is_zero()) {
            (_, true) => self.even_part.render(),
            (true, false) => format!("P' * ({})", self.odd_part.render()),
            (false, false) => {
                format!("{} + P' * ({})", self.even_part.render(), self.odd_part.render())
            }
        }
    }
}

impl fmt::Display for DerivativeForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.render())
    }
}

fn differentiate(form: &DerivativeForm) -> DerivativeForm {
    let wp2 = WpPoly::from_coeffs(vec![
        super::invariant_poly::InvariantPoly::from_ratio(-1, 2)
            .mul(&super::invariant_poly::InvariantPoly::g2()),
        super::invariant_poly::InvariantPoly::zero(),
        super::invariant_poly::InvariantPoly::from_i64(6),
    ]);
    let cubic = WpPoly::wp_cubic();
    let even = wp2
        .mul(&form.odd_part)
        .add(&cubic.mul(&form.odd_part.derivative_x()));
    let odd = form.even_part.derivative_x();
    DerivativeForm { n: form.n + 1, even_part: even, odd_part: odd }
}

fn constant_one() -> DerivativeForm {
    DerivativeForm { n: -2, even_part: WpPoly::one(), odd_part: WpPoly::zero() }
}

/// Exact form of ℘⁽ⁿ⁾ for n ∈ {−2, 0, 1, 2, …}. Memoized; forms are tiny and
/// the cache is kept for the process lifetime.
pub fn derivative_form(n: i64) -> Result<Arc<DerivativeForm>> {
    if n == -2 {
        static CONST_ONE: OnceLock<Arc<DerivativeForm>> = OnceLock::new();
        return Ok(CONST_ONE.get_or_init(|| Arc::new(constant_one())).clone());
    }
    if n < 0 {
        return Err(Error::InvalidOrder(n));
    }
    static CACHE: Mutex<Vec<Arc<DerivativeForm>>> = Mutex::new(Vec::new());
    let mut cache = CACHE.lock().expect("derivative form cache poisoned");
    if cache.is_empty() {
        cache.push(Arc::new(DerivativeForm {
            n: 0,
            even_part: WpPoly::x(),
            odd_part: WpPoly::zero(),
        }));
    }
    while (cache.len() as i64) <= n {
        let next = differentiate(cache.last().expect("cache is non-empty"));
        cache.push(Arc::new(next));
    }
    Ok(cache[n as usize].clone())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn low_order_forms() {
        assert_eq!(derivative_form(-2).unwrap().render(), "1");
        assert_eq!(derivative_form(0).unwrap().render(), "X");
        assert_eq!(derivative_form(1).unwrap().render(), "P' * (1)");
        assert_eq!(derivative_form(2).unwrap().render(), "6 X^2 - 1/2 g2");
        assert_eq!(derivative_form(3).unwrap().render(), "P' * (12 X)");
        assert_eq!(derivative_form(4).unwrap().render(), "120 X^3 - 18 g2 X - 12 g3");
    }

    #[test]
    fn rejects_invalid_orders() {
        assert!(matches!(derivative_form(-1), Err(Error::InvalidOrder(-1))));
        assert!(matches!(derivative_form(-3), Err(Error::InvalidOrder(-3))));
    }

    #[test]
    fn parity_split_is_exact() {
        for n in 0..=20 {
            let form = derivative_form(n).unwrap();
            if n % 2 == 0 {
                assert!(form.odd_part.is_zero(), "n={n} should be even-only");
                assert_eq!(form.even_part.degree(), Some(n as usize / 2 + 1));
            } else {
                assert!(form.even_part.is_zero(), "n={n} should be odd-only");
                assert_eq!(form.odd_part.degree(), Some((n as usize - 1) / 2));
            }
        }
    }
}
