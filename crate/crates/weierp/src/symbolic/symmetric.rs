//! Elementary symmetric polynomials of numeric values.

use num::complex::Complex64;

use crate::error::{Error, Result};

/// All S₀..Sₙ of the given values, via the stable coefficient-update scheme:
/// accumulate the coefficients of ∏(t + xᵢ), whose tᶰ⁻ʳ coefficient is Sᵣ.
pub fn elementary_symmetric_all(values: &[Complex64]) -> Vec<Complex64> {
    let mut s = vec![Complex64::new(0.0, 0.0); values.len() + 1];
    s[0] = Complex64::new(1.0, 0.0);
    for (count, &x) in values.iter().enumerate() {
        // downward update keeps each S_r a sum over the first `count+1` values
        for r in (1..=count + 1).rev() {
            let lower = s[r - 1];
            s[r] += x * lower;
        }
    }
    s
}

/// Sᵣ(x₁,…,xₙ): the sum of all r-fold products of distinct arguments.
/// S₀ = 1 by the empty-product convention.
pub fn elementary_symmetric(values: &[Complex64], r: usize) -> Result<Complex64> {
    if r > values.len() {
        return Err(Error::InvalidInput(format!(
            "symmetric index r = {r} out of range 0..={}",
            values.len()
        )));
    }
    Ok(elementary_symmetric_all(values)[r])
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn conventions() {
        assert_eq!(elementary_symmetric(&[], 0).unwrap(), c(1.0, 0.0));
        let xs = [c(1.0, 1.0), c(2.0, -1.0), c(0.5, 0.0)];
        assert_eq!(elementary_symmetric(&xs, 0).unwrap(), c(1.0, 0.0));
        let s1 = elementary_symmetric(&xs, 1).unwrap();
        assert!((s1 - (xs[0] + xs[1] + xs[2])).norm() < 1e-15);
        let s3 = elementary_symmetric(&xs, 3).unwrap();
        assert!((s3 - xs[0] * xs[1] * xs[2]).norm() < 1e-15);
        assert!(elementary_symmetric(&xs, 4).is_err());
    }

    #[test]
    fn append_recurrence() {
        // S_r(x_1..x_n, y) = y * S_{r-1}(x_1..x_n) + S_r(x_1..x_n)
        let xs = [c(1.2, 0.3), c(-0.7, 1.1), c(0.4, -2.0)];
        let y = c(0.9, 0.25);
        let base = elementary_symmetric_all(&xs);
        let mut extended = xs.to_vec();
        extended.push(y);
        let ext = elementary_symmetric_all(&extended);
        for r in 1..=3 {
            let want = y * base[r - 1] + base[r];
            assert!((ext[r] - want).norm() < 1e-14);
        }
    }

    #[test]
    fn brute_force_oracle_small_sets() {
        // enumerate all r-subsets directly and compare
        let xs = [c(0.3, 0.8), c(-1.1, 0.2), c(2.0, -0.5), c(0.6, 0.6)];
        let n = xs.len();
        for r in 0..=n {
            let mut acc = c(0.0, 0.0);
            for mask in 0u32..(1 << n) {
                if mask.count_ones() as usize != r {
                    continue;
                }
                let mut prod = c(1.0, 0.0);
                for (i, &x) in xs.iter().enumerate() {
                    if mask & (1 << i) != 0 {
                        prod *= x;
                    }
                }
                acc += prod;
            }
            let got = elementary_symmetric(&xs, r).unwrap();
            assert!((got - acc).norm() <= 1e-13 * (1.0 + acc.norm()));
        }
    }
}
