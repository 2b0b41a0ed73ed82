//! Closed-form identity catalog.
//!
//! Every identity lives in exactly one function, its closed form kept in
//! the conventional grouping (no algebraic simplification before testing),
//! and is evaluated against direct evaluation of the left-hand side.
//! Denominators carry guards at 1e−8 times their natural scale; randomized
//! suites resample guarded inputs instead of failing.

use num::complex::Complex64;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::eval::{sigma, wp, wp_deriv, wp_pair};
use crate::lattice::Lattice;

/// One identity evaluation: the formula value, the directly evaluated value,
/// and |formula − direct| / (1 + |direct|). The triplication family scores
/// against the largest formula term instead when that is bigger (its forms
/// sum terms of order ℘(z)⁻³ that legitimately cancel).
#[derive(Debug, Clone, Serialize)]
pub struct IdentityReport {
    pub identity_id: String,
    #[serde(with = "crate::sample::complex_vec")]
    pub inputs: Vec<Complex64>,
    #[serde(with = "crate::sample::complex_pair")]
    pub formula_value: Complex64,
    #[serde(with = "crate::sample::complex_pair")]
    pub direct_value: Complex64,
    pub relative_residual: f64,
}

fn report(
    id: &str,
    inputs: &[Complex64],
    formula: Complex64,
    direct: Complex64,
) -> IdentityReport {
    IdentityReport {
        identity_id: id.to_string(),
        inputs: inputs.to_vec(),
        formula_value: formula,
        direct_value: direct,
        relative_residual: (formula - direct).norm() / (1.0 + direct.norm()),
    }
}

const GUARD: f64 = 1e-8;

fn guard(value: Complex64, scale: f64, name: &'static str) -> Result<Complex64> {
    if value.norm() <= GUARD * scale.max(f64::MIN_POSITIVE) {
        return Err(Error::GuardedInput(name));
    }
    Ok(value)
}

/// Stable identity ids accepted by the CLI verify/report machinery.
pub const IDENTITY_IDS: &[&str] = &[
    "thm1.1",
    "cor3.1.v1",
    "cor3.1.v2",
    "cor3.1.v3",
    "dup.classic",
    "dup.new1",
    "dup.new2",
    "dup.rat1",
    "dup.rat2",
    "cor3.2.g2",
    "cor3.2.g3",
    "3term.v1",
    "3term.v2",
    "3term.v3",
    "3term.v4",
    "trip.main",
    "trip.alt1",
    "trip.alt2",
    "trip.alt3",
    "trip.poly",
    "fs.n1",
    "fs.n2",
    "det.thm1.1",
    "det.thm2.1",
];

/// Two-point addition: variant 1 is the classical formula; variants 2 and 3
/// divide by ℘(z)+℘(w) and ℘(z)℘(w) respectively.
pub fn classical_addition(
    variant: u8,
    z: Complex64,
    w: Complex64,
    lat: &Lattice,
) -> Result<IdentityReport> {
    let direct = wp(z + w, lat)?;
    let (pz, dpz) = wp_pair(z, lat)?;
    let (pw, dpw) = wp_pair(w, lat)?;
    let scale = pz.norm().max(pw.norm()).max(1.0);
    let diff = guard(pz - pw, scale, "wp(z) - wp(w)")?;
    let g2 = lat.g2();
    let g3 = lat.g3();
    let (id, formula) = match variant {
        1 => (
            "cor3.1.v1",
            0.25 * ((dpz - dpw) / diff).powu(2) - pz - pw,
        ),
        2 => {
            let sum = guard(pz + pw, scale, "wp(z) + wp(w)")?;
            (
                "cor3.1.v2",
                -((dpz - dpw) * (pz * dpw - pw * dpz)) / (2.0 * sum * diff * diff)
                    - (pz * pw) / sum
                    - g2 / (4.0 * sum),
            )
        }
        3 => {
            let prod = guard(pz * pw, scale * scale, "wp(z) wp(w)")?;
            (
                "cor3.1.v3",
                ((pz * dpw - pw * dpz) / diff).powu(2) / (4.0 * prod) + g3 / (4.0 * prod),
            )
        }
        v => return Err(Error::InvalidInput(format!("classical addition variant {v} not in 1..=3"))),
    };
    Ok(report(id, &[z, w], formula, direct))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum DuplicationVariant {
    Classic,
    New1,
    New2,
    Rational1,
    Rational2,
}

impl DuplicationVariant {
    pub fn id(self) -> &'static str {
        match self {
            DuplicationVariant::Classic => "dup.classic",
            DuplicationVariant::New1 => "dup.new1",
            DuplicationVariant::New2 => "dup.new2",
            DuplicationVariant::Rational1 => "dup.rat1",
            DuplicationVariant::Rational2 => "dup.rat2",
        }
    }

    pub const ALL: [DuplicationVariant; 5] = [
        DuplicationVariant::Classic,
        DuplicationVariant::New1,
        DuplicationVariant::New2,
        DuplicationVariant::Rational1,
        DuplicationVariant::Rational2,
    ];
}

/// ℘(2z) in five closed forms. The rational forms divide by
/// 4℘³ − g₂℘ − g₃ = ℘′² and stay meaningful near half-periods where the
/// ℘′-dividing forms are guarded.
pub fn duplication(
    variant: DuplicationVariant,
    z: Complex64,
    lat: &Lattice,
) -> Result<IdentityReport> {
    let direct = wp(2.0 * z, lat)?;
    let (p, p1) = wp_pair(z, lat)?;
    let g2 = lat.g2();
    let g3 = lat.g3();
    let p2 = 6.0 * p * p - g2 / 2.0;
    let scale = p.norm().max(1.0);
    let dp_scale = p.norm().powi(3).max(g2.norm() * p.norm()).max(g3.norm()).max(1.0);
    use DuplicationVariant::*;
    let formula = match variant {
        Classic => {
            guard(p1, dp_scale.sqrt(), "wp'(z)")?;
            0.25 * (p2 / p1).powu(2) - 2.0 * p
        }
        New1 => {
            guard(p, scale, "wp(z)")?;
            guard(p1, dp_scale.sqrt(), "wp'(z)")?;
            -(p2 * (p1 * p1 - p * p2)) / (4.0 * p * p1 * p1) - p / 2.0 - g2 / (8.0 * p)
        }
        New2 => {
            guard(p, scale, "wp(z)")?;
            guard(p1, dp_scale.sqrt(), "wp'(z)")?;
            0.25 * ((p1 * p1 - p * p2) / (p * p1)).powu(2) + g3 / (4.0 * p * p)
        }
        Rational1 => {
            let cubic = 4.0 * p.powu(3) - g2 * p - g3;
            (16.0 * p.powu(4) + 8.0 * g2 * p * p + 32.0 * g3 * p + g2 * g2) / (16.0 * cubic)
        }
        Rational2 => {
            guard(p, scale, "wp(z)")?;
            let cubic = 4.0 * p.powu(3) - g2 * p - g3;
            (4.0 * p.powu(3) + g2 * p + 2.0 * g3).powu(2) / (16.0 * p * p * cubic)
                + g3 / (4.0 * p * p)
        }
    };
    Ok(report(variant.id(), &[z], formula, direct))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum InvariantKind {
    G2,
    G3,
}

/// Recovers g₂ or g₃ from ℘, ℘′ at two points.
pub fn invariant_identity(
    which: InvariantKind,
    z: Complex64,
    w: Complex64,
    lat: &Lattice,
) -> Result<IdentityReport> {
    let (pz, dpz) = wp_pair(z, lat)?;
    let (pw, dpw) = wp_pair(w, lat)?;
    let scale = pz.norm().max(pw.norm()).max(1.0);
    let diff = guard(pz - pw, scale, "wp(z) - wp(w)")?;
    let slope = (dpz - dpw) / diff;
    let cross = (dpz - dpw) * (pz * dpw - pw * dpz) / (diff * diff);
    let (id, formula, direct) = match which {
        InvariantKind::G2 => (
            "cor3.2.g2",
            4.0 * (pz + pw).powu(2) - 4.0 * pz * pw - (pz + pw) * slope.powu(2) - 2.0 * cross,
            lat.g2(),
        ),
        InvariantKind::G3 => (
            "cor3.2.g3",
            pz * pw * slope.powu(2)
                - 4.0 * pz * pw * (pz + pw)
                - ((pz * dpw - pw * dpz) / diff).powu(2),
            lat.g3(),
        ),
    };
    Ok(report(id, &[z, w], formula, direct))
}

/// The cyclically-symmetric multipliers of the three-point system
/// ℘″(·) = λ₁℘′(·) + λ₂℘(·) + λ₃, by Cramer's rule in cyclic form.
/// Errors with [`Error::DegeneratePoints`] when the [1, ℘, ℘′] determinant
/// vanishes (points not distinct mod Λ or u+v+w ∈ Λ).
pub fn three_term_lambdas(
    u: Complex64,
    v: Complex64,
    w: Complex64,
    lat: &Lattice,
) -> Result<[Complex64; 3]> {
    let vals: Vec<(Complex64, Complex64, Complex64)> = [u, v, w]
        .iter()
        .map(|&t| -> Result<_> {
            let (p, p1) = wp_pair(t, lat)?;
            Ok((p, p1, 6.0 * p * p - lat.g2() / 2.0))
        })
        .collect::<Result<_>>()?;
    let cyc = |f: &dyn Fn(usize, usize, usize) -> Complex64| f(0, 1, 2) + f(1, 2, 0) + f(2, 0, 1);
    let den = cyc(&|a, b, _| vals[a].1 * vals[b].0 - vals[a].0 * vals[b].1);
    let scale: f64 = vals
        .iter()
        .map(|(p, p1, _)| p.norm() * p1.norm())
        .fold(1.0, f64::max);
    if den.norm() <= GUARD * scale {
        return Err(Error::DegeneratePoints(
            "the [1, wp, wp'] determinant vanishes (points coincide mod the lattice or sum to a period)"
                .into(),
        ));
    }
    let l1 = cyc(&|a, b, _| vals[a].2 * vals[b].0 - vals[a].0 * vals[b].2) / den;
    let l2 = cyc(&|a, b, _| vals[a].1 * vals[b].2 - vals[a].2 * vals[b].1) / den;
    let l3 = cyc(&|a, b, c| vals[a].0 * (vals[b].2 * vals[c].1 - vals[b].1 * vals[c].2)) / den;
    Ok([l1, l2, l3])
}

/// Three-point addition ℘(u+v+w) in its four closed forms.
pub fn three_term_addition(
    variant: u8,
    u: Complex64,
    v: Complex64,
    w: Complex64,
    lat: &Lattice,
) -> Result<IdentityReport> {
    let direct = wp(u + v + w, lat)?;
    let [l1, l2, l3] = three_term_lambdas(u, v, w, lat)?;
    let pu = wp(u, lat)?;
    let pv = wp(v, lat)?;
    let pw = wp(w, lat)?;
    let s1 = pu + pv + pw;
    let s2 = pu * pv + pv * pw + pw * pu;
    let s3 = pu * pv * pw;
    let g2 = lat.g2();
    let g3 = lat.g3();
    let scale = pu.norm().max(pv.norm()).max(pw.norm()).max(1.0);
    let (id, formula) = match variant {
        1 => ("3term.v1", l1 * l1 / 9.0 + l2 / 3.0 - s1),
        2 => {
            guard(s1, scale, "wp(u) + wp(v) + wp(w)")?;
            (
                "3term.v2",
                (l2 * l2 - 12.0 * l3 - 6.0 * g2) / (36.0 * s1) - s2 / s1,
            )
        }
        3 => {
            guard(s2, scale * scale, "pairwise wp products")?;
            (
                "3term.v3",
                -(l1 * l1 * g2 + 2.0 * l2 * l3 + l2 * g2) / (36.0 * s2) - s3 / s2,
            )
        }
        4 => {
            guard(s3, scale * scale * scale, "wp(u) wp(v) wp(w)")?;
            (
                "3term.v4",
                (4.0 * l1 * l1 * g3 + 4.0 * l3 * l3 + 4.0 * l3 * g2 + g2 * g2) / (144.0 * s3),
            )
        }
        n => return Err(Error::InvalidInput(format!("three-term variant {n} not in 1..=4"))),
    };
    Ok(report(id, &[u, v, w], formula, direct))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum TriplicationVariant {
    Main,
    Alt1,
    Alt2,
    Alt3,
    Polynomial,
}

impl TriplicationVariant {
    pub fn id(self) -> &'static str {
        match self {
            TriplicationVariant::Main => "trip.main",
            TriplicationVariant::Alt1 => "trip.alt1",
            TriplicationVariant::Alt2 => "trip.alt2",
            TriplicationVariant::Alt3 => "trip.alt3",
            TriplicationVariant::Polynomial => "trip.poly",
        }
    }

    pub const ALL: [TriplicationVariant; 5] = [
        TriplicationVariant::Main,
        TriplicationVariant::Alt1,
        TriplicationVariant::Alt2,
        TriplicationVariant::Alt3,
        TriplicationVariant::Polynomial,
    ];
}

/// Confluent limits of the three-point multipliers at a single point, by two
/// routes: ratios of ℘ derivatives, and the ℘-only closed forms obtained by
/// substituting ℘‴ = 12℘℘′ and ℘⁽⁴⁾ = 120℘³ − 18g₂℘ − 12g₃.
pub fn triplication_lambda_limits(
    z: Complex64,
    lat: &Lattice,
) -> Result<([Complex64; 3], [Complex64; 3])> {
    let (p, p1) = wp_pair(z, lat)?;
    let g2 = lat.g2();
    let g3 = lat.g3();
    let p2 = wp_deriv(z, 2, lat)?;
    let p3 = wp_deriv(z, 3, lat)?;
    let p4 = wp_deriv(z, 4, lat)?;
    let den = p2 * p2 - p1 * p3;
    let den_scale = p2.norm().powi(2).max(p1.norm() * p3.norm()).max(1.0);
    guard(den, den_scale, "wp''^2 - wp' wp'''")?;
    let by_derivatives = [
        (p2 * p3 - p1 * p4) / den,
        (p2 * p4 - p3 * p3) / den,
        (p * p3 * p3 + p1 * p1 * p4 + p2.powu(3) - p * p2 * p4 - 2.0 * p1 * p2 * p3) / den,
    ];

    let denq = 48.0 * p.powu(4) - 24.0 * g2 * p * p - 48.0 * g3 * p - g2 * g2;
    let denq_scale = (48.0 * p.norm().powi(4)).max(g2.norm().powi(2)).max(1.0);
    guard(denq, denq_scale, "48 wp^4 - 24 g2 wp^2 - 48 g3 wp - g2^2")?;
    let cubic = 4.0 * p.powu(3) - g2 * p - g3;
    let by_wp_only = [
        48.0 * p1 * cubic / denq,
        -(576.0 * p.powu(5) - 96.0 * g2 * p.powu(3) + 288.0 * g3 * p * p
            + 36.0 * g2 * g2 * p
            + 24.0 * g2 * g3)
            / denq,
        (192.0 * p.powu(6) + 240.0 * g2 * p.powu(4) + 768.0 * g3 * p.powu(3)
            - 12.0 * g2 * g2 * p * p
            - 96.0 * g2 * g3 * p
            - 96.0 * g3 * g3
            + g2.powu(3))
            / (2.0 * denq),
    ];
    Ok((by_derivatives, by_wp_only))
}

/// ℘(3z) in five forms: the main confluent-limit formula, the three longer
/// variants dividing by powers of ℘, and the pure polynomial identity.
/// `Alt1` is the r = 2 confluence of the three-point family, so its leading
/// term squares the λ₂ limit (squaring the λ₁ limit instead does not
/// reproduce ℘(3z); the residual is O(1)).
pub fn triplication(
    variant: TriplicationVariant,
    z: Complex64,
    lat: &Lattice,
) -> Result<IdentityReport> {
    let direct = wp(3.0 * z, lat)?;
    let (p, _) = wp_pair(z, lat)?;
    let g2 = lat.g2();
    let g3 = lat.g3();
    let scale = p.norm().max(1.0);
    use TriplicationVariant::*;
    if variant == Polynomial {
        let denq = 48.0 * p.powu(4) - 24.0 * g2 * p * p - 48.0 * g3 * p - g2 * g2;
        let terms = [
            256.0 * p.powu(9),
            768.0 * g2 * p.powu(7),
            6144.0 * g3 * p.powu(6),
            480.0 * g2 * g2 * p.powu(5),
            -384.0 * g2 * g3 * p.powu(4),
            (768.0 * g3 * g3 - 144.0 * g2.powu(3)) * p.powu(3),
            -192.0 * g2 * g2 * g3 * p * p,
            (9.0 * g2.powu(4) - 384.0 * g2 * g3 * g3) * p,
            8.0 * g2.powu(3) * g3 - 256.0 * g3.powu(3),
        ];
        let rhs: Complex64 = terms.iter().sum();
        let lhs = denq * denq * direct;
        let dominant = terms
            .iter()
            .map(|t| t.norm())
            .fold(lhs.norm(), f64::max)
            .max(f64::MIN_POSITIVE);
        let mut rep = report("trip.poly", &[z], rhs, lhs);
        rep.relative_residual = (lhs - rhs).norm() / dominant;
        return Ok(rep);
    }

    let (lam, _) = triplication_lambda_limits(z, lat)?;
    let [l1, l2, l3] = lam;
    // the alternates sum large terms that cancel down to wp(3z) when wp(z)
    // is small, so they are scored relative to their dominant term, like the
    // polynomial identity
    let terms: Vec<Complex64> = match variant {
        Main => vec![l1 * l1 / 9.0, l2 / 3.0, -3.0 * p],
        Alt1 => {
            guard(p, scale, "wp(z)")?;
            vec![
                l2 * l2 / (108.0 * p),
                -g2 / (18.0 * p),
                -p,
                -l3 / (9.0 * p),
            ]
        }
        Alt2 => {
            guard(p, scale, "wp(z)")?;
            vec![
                -p / 3.0,
                -g2 * l1 * l1 / (108.0 * p * p),
                -l2 * (g2 + 2.0 * l3) / (108.0 * p * p),
            ]
        }
        Alt3 => {
            guard(p, scale, "wp(z)")?;
            vec![
                g2 * g2 / (144.0 * p.powu(3)),
                g3 * l1 * l1 / (36.0 * p.powu(3)),
                g2 * l3 / (36.0 * p.powu(3)),
                l3 * l3 / (36.0 * p.powu(3)),
            ]
        }
        Polynomial => unreachable!("handled above"),
    };
    let formula: Complex64 = terms.iter().sum();
    let mut rep = report(variant.id(), &[z], formula, direct);
    let dominant = terms
        .iter()
        .map(|t| t.norm())
        .fold(1.0 + direct.norm(), f64::max);
    rep.relative_residual = (formula - direct).norm() / dominant;
    Ok(rep)
}

/// σ-quotient determinant identities: n = 1 is the two-point difference
/// formula, n = 2 the 3×3 [1, ℘, ℘′] determinant against
/// 2σ(u+v+w)σ(u−v)σ(v−w)σ(w−u)/(σ(u)σ(v)σ(w))³. Needs periods for σ.
pub fn fs_identity(n: u8, points: &[Complex64], lat: &Lattice) -> Result<IdentityReport> {
    match (n, points) {
        (1, [z, w]) => {
            let (z, w) = (*z, *w);
            let lhs = wp(z, lat)? - wp(w, lat)?;
            let rhs = sigma(w + z, lat)? * sigma(w - z, lat)?
                / (sigma(w, lat)?.powu(2) * sigma(z, lat)?.powu(2));
            Ok(report("fs.n1", &[z, w], rhs, lhs))
        }
        (2, [u, v, w]) => {
            let (u, v, w) = (*u, *v, *w);
            let (pu, du) = wp_pair(u, lat)?;
            let (pv, dv) = wp_pair(v, lat)?;
            let (pw, dw) = wp_pair(w, lat)?;
            // cofactor expansion along the ones column; antisymmetric under
            // an adjacent row swap bit for bit (pivoted LU is not, since the
            // equal leading entries tie)
            let m0 = pv * dw - dv * pw;
            let m1 = pu * dw - du * pw;
            let m2 = pu * dv - du * pv;
            let lhs = (m0 - m1) + m2;
            let rhs = 2.0 * sigma(u + v + w, lat)? * sigma(u - v, lat)? * sigma(v - w, lat)?
                * sigma(w - u, lat)?
                / (sigma(u, lat)? * sigma(v, lat)? * sigma(w, lat)?).powu(3);
            Ok(report("fs.n2", &[u, v, w], rhs, lhs))
        }
        _ => Err(Error::InvalidInput(format!(
            "fs identity supports n = 1 with 2 points or n = 2 with 3 points, got n = {n} with {}",
            points.len()
        ))),
    }
}

/// |det| of the classical addition determinant with rows
/// (1, ℘(z), ℘′(z)), (1, ℘(w), ℘′(w)), (1, ℘(z+w), −℘′(z+w)),
/// normalized by the row-norm product. Zero up to rounding.
pub fn classical_determinant(z: Complex64, w: Complex64, lat: &Lattice) -> Result<f64> {
    let (pz, dpz) = wp_pair(z, lat)?;
    let (pw, dpw) = wp_pair(w, lat)?;
    let (ps, dps) = wp_pair(z + w, lat)?;
    let rows = vec![
        vec![Complex64::new(1.0, 0.0), pz, dpz],
        vec![Complex64::new(1.0, 0.0), pw, dpw],
        vec![Complex64::new(1.0, 0.0), ps, -dps],
    ];
    let det = crate::linalg::determinant(&rows);
    Ok(det.norm() / crate::linalg::row_norm_product(&rows))
}
