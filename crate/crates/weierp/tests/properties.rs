//! Property tests: structural invariants under randomized inputs.

use num::complex::Complex64;
use proptest::prelude::*;

use weierp::eval::{wp, wp_deriv, wp_pair};
use weierp::symbolic::{derivative_form, elementary_symmetric_all, InvariantPoly, WpPoly};
use weierp::{invariants_from_periods, Lattice};

fn c(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
}

fn generic_lattice() -> Lattice {
    Lattice::from_half_periods(c(1.0, 0.0), c(0.3, 1.1)).expect("valid lattice")
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn wp_is_even_and_periodic((a, b) in cell_point_strategy(), m in -2i32..=2, n in -2i32..=2) {
        let lat = generic_lattice();
        let w1 = 2.0 * lat.omega1().unwrap();
        let w2 = 2.0 * lat.omega2().unwrap();
        let z = a * w1 + b * w2;
        prop_assume!(lat.pole_distance(z).unwrap() > 0.05 * lat.shortest_vector_length().unwrap());
        let p = wp(z, &lat).unwrap();
        let even = wp(-z, &lat).unwrap();
        prop_assert!((even - p).norm() <= 1e-10 * (1.0 + p.norm()));
        let shifted = wp(z + m as f64 * w1 + n as f64 * w2, &lat).unwrap();
        prop_assert!((shifted - p).norm() <= 1e-10 * (1.0 + p.norm()));
    }

    #[test]
    fn reduction_is_transparent_to_wp((a, b) in cell_point_strategy()) {
        let lat = generic_lattice();
        let w1 = 2.0 * lat.omega1().unwrap();
        let w2 = 2.0 * lat.omega2().unwrap();
        // far outside the fundamental cell
        let z = (a + 3.0) * w1 + (b - 2.0) * w2;
        prop_assume!(lat.pole_distance(z).unwrap() > 0.05 * lat.shortest_vector_length().unwrap());
        let (reduced, shift) = lat.reduce_argument(z).unwrap();
        prop_assert!((z - shift - reduced).norm() <= 1e-12);
        let direct = wp(z, &lat).unwrap();
        let via_reduced = wp(reduced, &lat).unwrap();
        prop_assert!((direct - via_reduced).norm() <= 1e-10 * (1.0 + direct.norm()));
    }

    #[test]
    fn invariants_are_homogeneous(re in 0.4f64..1.6, im in -0.9f64..0.9) {
        let s = c(re, im);
        prop_assume!(s.norm() > 0.3);
        let (g2, g3) = invariants_from_periods(c(1.0, 0.0), c(0.3, 1.1)).unwrap();
        let (g2s, g3s) = invariants_from_periods(s, s * c(0.3, 1.1)).unwrap();
        prop_assert!((g2s - g2 / s.powu(4)).norm() <= 1e-10 * (1.0 + g2s.norm()));
        prop_assert!((g3s - g3 / s.powu(6)).norm() <= 1e-10 * (1.0 + g3s.norm()));
    }

    #[test]
    fn derivative_forms_have_exact_parity_and_degree(n in 0i64..=20) {
        let form = derivative_form(n).unwrap();
        if n % 2 == 0 {
            prop_assert!(form.odd_part.is_zero());
            prop_assert_eq!(form.even_part.degree(), Some(n as usize / 2 + 1));
        } else {
            prop_assert!(form.even_part.is_zero());
            prop_assert_eq!(form.odd_part.degree(), Some((n as usize - 1) / 2));
        }
    }

    #[test]
    fn derivative_parity_numerically((a, b) in cell_point_strategy(), n in 0i64..=6) {
        let lat = generic_lattice();
        let w1 = 2.0 * lat.omega1().unwrap();
        let w2 = 2.0 * lat.omega2().unwrap();
        let z = a * w1 + b * w2;
        prop_assume!(lat.pole_distance(z).unwrap() > 0.05 * lat.shortest_vector_length().unwrap());
        let plus = wp_deriv(z, n, &lat).unwrap();
        let minus = wp_deriv(-z, n, &lat).unwrap();
        let sign = if n % 2 == 0 { 1.0 } else { -1.0 };
        prop_assert!((minus - sign * plus).norm() <= 1e-9 * (1.0 + plus.norm()));
    }

    #[test]
    fn differential_equation_everywhere((a, b) in cell_point_strategy()) {
        let lat = generic_lattice();
        let w1 = 2.0 * lat.omega1().unwrap();
        let w2 = 2.0 * lat.omega2().unwrap();
        let z = a * w1 + b * w2;
        prop_assume!(lat.pole_distance(z).unwrap() > 0.05 * lat.shortest_vector_length().unwrap());
        let (u, v) = wp_pair(z, &lat).unwrap();
        let resid = (v * v - (4.0 * u.powu(3) - lat.g2() * u - lat.g3())).norm();
        prop_assert!(resid <= 1e-9 * (1.0 + u.norm()).powi(3));
    }

    #[test]
    fn symmetric_functions_satisfy_append_recurrence(
        values in prop::collection::vec((-2.0f64..2.0, -2.0f64..2.0), 1..6),
        extra in (-2.0f64..2.0, -2.0f64..2.0),
    ) {
        let xs: Vec<Complex64> = values.iter().map(|&(re, im)| c(re, im)).collect();
        let y = c(extra.0, extra.1);
        let base = elementary_symmetric_all(&xs);
        let mut appended = xs.clone();
        appended.push(y);
        let ext = elementary_symmetric_all(&appended);
        for r in 1..=xs.len() {
            let want = y * base[r - 1] + base[r];
            prop_assert!((ext[r] - want).norm() <= 1e-12 * (1.0 + want.norm()));
        }
    }

    #[test]
    fn invariant_poly_ring_laws(
        a in poly_strategy(),
        b in poly_strategy(),
        d in poly_strategy(),
    ) {
        // exact arithmetic: equalities hold on the nose
        prop_assert_eq!(a.add(&b), b.add(&a));
        prop_assert_eq!(a.mul(&b), b.mul(&a));
        prop_assert_eq!(a.mul(&b.add(&d)), a.mul(&b).add(&a.mul(&d)));
        prop_assert_eq!(a.sub(&a), InvariantPoly::zero());
    }

    #[test]
    fn wp_poly_degree_under_multiplication(a in poly_strategy(), b in poly_strategy()) {
        let pa = WpPoly::from_coeffs(vec![a.clone(), InvariantPoly::one()]);
        let pb = WpPoly::from_coeffs(vec![b.clone(), InvariantPoly::from_i64(2)]);
        let prod = pa.mul(&pb);
        prop_assert_eq!(prod.degree(), Some(2));
        let g2 = c(1.3, -0.4);
        let g3 = c(0.2, 0.9);
        let x = c(0.7, 0.1);
        let want = pa.eval(x, g2, g3) * pb.eval(x, g2, g3);
        prop_assert!((prod.eval(x, g2, g3) - want).norm() <= 1e-12 * (1.0 + want.norm()));
    }
}

prop_compose! {
    fn cell_point_strategy()(a in -0.45f64..0.45, b in -0.45f64..0.45) -> (f64, f64) {
        (a, b)
    }
}

prop_compose! {
    fn poly_strategy()(
        c00 in -6i64..=6,
        c10 in -6i64..=6,
        c01 in -6i64..=6,
    ) -> InvariantPoly {
        InvariantPoly::from_i64(c00)
            .add(&InvariantPoly::g2().mul(&InvariantPoly::from_i64(c10)))
            .add(&InvariantPoly::g3().mul(&InvariantPoly::from_i64(c01)))
    }
}
