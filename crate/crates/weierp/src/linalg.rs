//! Small dense complex linear algebra: LU with partial pivoting, determinants,
//! and Cramer's rule.
//!
//! The addition-theorem systems are tiny (ℓ ≤ 8 in practice), so everything
//! here is a plain O(n³) routine on `Vec<Vec<Complex64>>` rows.

use num::complex::Complex64;

use crate::error::{Error, Result};

/// LU factorization with partial pivoting, in place. Returns the determinant
/// and the pivot permutation.
fn lu_factor(a: &mut [Vec<Complex64>]) -> (Complex64, Vec<usize>) {
    let n = a.len();
    let mut perm: Vec<usize> = (0..n).collect();
    let mut det = Complex64::new(1.0, 0.0);
    for col in 0..n {
        let mut best = col;
        let mut best_mag = a[col][col].norm_sqr();
        for row in col + 1..n {
            let mag = a[row][col].norm_sqr();
            if mag > best_mag {
                best = row;
                best_mag = mag;
            }
        }
        if best != col {
            a.swap(col, best);
            perm.swap(col, best);
            det = -det;
        }
        let pivot = a[col][col];
        det *= pivot;
        if pivot == Complex64::new(0.0, 0.0) {
            continue; // singular; det is exactly 0 from here on
        }
        for row in col + 1..n {
            let factor = a[row][col] / pivot;
            a[row][col] = factor;
            for k in col + 1..n {
                let sub = factor * a[col][k];
                a[row][k] -= sub;
            }
        }
    }
    (det, perm)
}

fn lu_solve_one(lu: &[Vec<Complex64>], perm: &[usize], b: &[Complex64]) -> Vec<Complex64> {
    let n = lu.len();
    let mut x: Vec<Complex64> = perm.iter().map(|&p| b[p]).collect();
    for i in 0..n {
        for k in 0..i {
            let sub = lu[i][k] * x[k];
            x[i] -= sub;
        }
    }
    for i in (0..n).rev() {
        for k in i + 1..n {
            let sub = lu[i][k] * x[k];
            x[i] -= sub;
        }
        x[i] /= lu[i][i];
    }
    x
}

/// Determinant of a square matrix (non-destructive).
pub fn determinant(a: &[Vec<Complex64>]) -> Complex64 {
    let mut work: Vec<Vec<Complex64>> = a.to_vec();
    lu_factor(&mut work).0
}

/// Euclidean norms of the rows; their product scales the degeneracy test.
pub fn row_norm_product(a: &[Vec<Complex64>]) -> f64 {
    a.iter()
        .map(|row| row.iter().map(|c| c.norm_sqr()).sum::<f64>().sqrt())
        .product()
}

#[derive(Debug)]
pub struct LuSolution {
    pub solution: Vec<Complex64>,
    pub det: Complex64,
    /// Frobenius-norm condition estimate ||A||_F ||A^-1||_F.
    pub condition: f64,
}

/// Solve A x = b by LU with partial pivoting. Errors when the determinant
/// falls below `det_threshold` times the product of row norms.
pub fn lu_solve(a: &[Vec<Complex64>], b: &[Complex64], det_threshold: f64) -> Result<LuSolution> {
    let n = a.len();
    if n == 0 || a.iter().any(|row| row.len() != n) || b.len() != n {
        return Err(Error::InvalidInput("system is not square".into()));
    }
    let scale = row_norm_product(a);
    let mut work = a.to_vec();
    let (det, perm) = lu_factor(&mut work);
    if det.norm() <= det_threshold * scale {
        return Err(Error::DegenerateSystem { det: det.norm() });
    }
    let solution = lu_solve_one(&work, &perm, b);

    let norm_a = a
        .iter()
        .flat_map(|row| row.iter())
        .map(|c| c.norm_sqr())
        .sum::<f64>()
        .sqrt();
    let mut norm_inv_sq = 0.0;
    for j in 0..n {
        let mut e = vec![Complex64::new(0.0, 0.0); n];
        e[j] = Complex64::new(1.0, 0.0);
        let col = lu_solve_one(&work, &perm, &e);
        norm_inv_sq += col.iter().map(|c| c.norm_sqr()).sum::<f64>();
    }
    let condition = norm_a * norm_inv_sq.sqrt();

    Ok(LuSolution { solution, det, condition })
}

/// Cramer's rule: x_j = det(A with column j replaced by b) / det(A).
pub fn solve_cramer(a: &[Vec<Complex64>], b: &[Complex64]) -> Result<Vec<Complex64>> {
    let n = a.len();
    let det = determinant(a);
    if det.norm() == 0.0 {
        return Err(Error::DegenerateSystem { det: 0.0 });
    }
    let mut out = Vec::with_capacity(n);
    for j in 0..n {
        let mut replaced = a.to_vec();
        for (row, &bv) in replaced.iter_mut().zip(b.iter()) {
            row[j] = bv;
        }
        out.push(determinant(&replaced) / det);
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn solves_known_system() {
        // [[2, 1], [1, 3i]] x = [5, 1+6i]  with x = [2, 1] gives b = [5, 2+3i]
        let a = vec![vec![c(2.0, 0.0), c(1.0, 0.0)], vec![c(1.0, 0.0), c(0.0, 3.0)]];
        let x_true = [c(2.0, 0.0), c(1.0, 0.0)];
        let b: Vec<Complex64> = (0..2)
            .map(|i| a[i][0] * x_true[0] + a[i][1] * x_true[1])
            .collect();
        let sol = lu_solve(&a, &b, 1e-14).unwrap();
        for (got, want) in sol.solution.iter().zip(x_true.iter()) {
            assert!((got - want).norm() < 1e-12);
        }
        let cram = solve_cramer(&a, &b).unwrap();
        for (got, want) in cram.iter().zip(x_true.iter()) {
            assert!((got - want).norm() < 1e-12);
        }
    }

    #[test]
    fn determinant_of_permutation_like_matrix() {
        let a = vec![
            vec![c(0.0, 0.0), c(1.0, 0.0)],
            vec![c(1.0, 0.0), c(0.0, 0.0)],
        ];
        assert!((determinant(&a) - c(-1.0, 0.0)).norm() < 1e-15);
    }

    #[test]
    fn repeated_row_is_degenerate() {
        let a = vec![
            vec![c(1.0, 2.0), c(3.0, -1.0)],
            vec![c(1.0, 2.0), c(3.0, -1.0)],
        ];
        let b = vec![c(1.0, 0.0), c(1.0, 0.0)];
        match lu_solve(&a, &b, 1e-10) {
            Err(Error::DegenerateSystem { .. }) => {}
            other => panic!("expected degenerate system, got {other:?}"),
        }
    }

    #[test]
    fn cramer_agrees_with_lu_on_random_3x3() {
        let mut seed = 0x243f6a8885a308d3u64;
        let mut next = || {
            seed = seed.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
            (seed >> 11) as f64 / (1u64 << 53) as f64 - 0.5
        };
        for _ in 0..20 {
            let a: Vec<Vec<Complex64>> = (0..3)
                .map(|_| (0..3).map(|_| c(next(), next())).collect())
                .collect();
            let b: Vec<Complex64> = (0..3).map(|_| c(next(), next())).collect();
            let lu = lu_solve(&a, &b, 1e-13);
            let cr = solve_cramer(&a, &b);
            if let (Ok(lu), Ok(cr)) = (lu, cr) {
                for (x, y) in lu.solution.iter().zip(cr.iter()) {
                    assert!((x - y).norm() <= 1e-8 * (1.0 + y.norm()));
                }
            }
        }
    }
}
