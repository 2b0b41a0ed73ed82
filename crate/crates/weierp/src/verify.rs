//! Seeded, deterministic verification suites.
//!
//! Each suite evaluates a batch of identities over the default lattice
//! battery (square, hexagonal, generic) at randomized points drawn from a
//! ChaCha8 stream keyed by the run seed, records max residuals per identity
//! id, and compares them against the pinned tolerances. Identical options
//! reproduce identical reports byte for byte: iteration order is fixed,
//! sub-seeds are derived by a stable hash, and aggregation is max/count
//! only.

use num::complex::Complex64;
use num::rational::BigRational;
use num::BigInt;
use rand::seq::SliceRandom;
use rand::Rng;
use serde::Serialize;

use crate::engine::{
    self, det_theorem_residual, solve_for_config, wp_of_sum, AdditionConfig, RChoice,
};
use crate::error::{Error, Result};
use crate::eval::{sigma, wp, wp_deriv, wp_pair};
use crate::identities::{
    classical_addition, classical_determinant, duplication, fs_identity, invariant_identity,
    three_term_addition, three_term_lambdas, triplication, triplication_lambda_limits,
    DuplicationVariant, InvariantKind, TriplicationVariant,
};
use crate::lattice::Lattice;
use crate::oracle;
use crate::sample::PointSampler;
use crate::symbolic::{derivative_form, phi_mu, phi_mu_exact, SymPoly};

pub const SUITE_NAMES: &[&str] = &[
    "classical",
    "threeterm",
    "triplication",
    "invariants",
    "fs",
    "engine",
    "symbolic",
];

#[derive(Debug, Clone)]
pub struct VerifyOptions {
    pub seed: u64,
    pub trials: usize,
    /// Replaces every identity tolerance when set.
    pub tol_override: Option<f64>,
}

impl Default for VerifyOptions {
    fn default() -> Self {
        VerifyOptions { seed: 42, trials: 100, tol_override: None }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct IdentityOutcome {
    pub id: String,
    pub trials: usize,
    pub max_residual: f64,
    pub tolerance: f64,
    pub pass: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub note: Option<String>,
}

#[derive(Debug, Clone, Serialize)]
pub struct SuiteReport {
    pub suite: String,
    pub outcomes: Vec<IdentityOutcome>,
    pub pass: bool,
}

#[derive(Debug, Clone, Serialize)]
pub struct VerifyReport {
    pub seed: u64,
    pub trials: usize,
    pub lattices: Vec<String>,
    pub suites: Vec<SuiteReport>,
    pub pass: bool,
}

/// Pinned per-identity tolerances. These are the acceptance thresholds; the
/// CLI `--tol` flag can override them uniformly (e.g. to force a failure).
pub fn tolerance(id: &str) -> f64 {
    match id {
        "eq1.de" => 1e-9,
        "wp.oracle" => 1e-6,
        "invariants.oracle" => 1e-4,
        "e.relations" => 1e-10,
        "det.thm1.1" => 1e-9,
        "thm1.1" | "cor3.1.v1" | "cor3.1.v2" | "cor3.1.v3" => 1e-8,
        "cor3.1.cross" => 1e-7,
        "dup.classic" | "dup.new1" | "dup.new2" | "dup.rat1" | "dup.rat2" => 1e-8,
        "dup.cross" => 1e-7,
        "cor3.2.g2" | "cor3.2.g3" => 1e-8,
        "cor3.2.halfperiod" => 1e-10,
        "3term.v1" | "3term.v2" | "3term.v3" | "3term.v4" => 1e-7,
        "3term.lambda" => 1e-9,
        "3term.cross" => 1e-7,
        "3term.sym" => 1e-9,
        "trip.main" => 1e-7,
        "trip.alt1" | "trip.alt2" | "trip.alt3" => 1e-6,
        "trip.poly" => 1e-6,
        "trip.lambda" => 1e-8,
        "fs.n1" => 1e-4,
        "fs.n2" => 1e-3,
        "sigma.log" => 1e-4,
        "det.thm2.1" => 1e-8,
        "det.thm2.1.vanishing" => 0.5,
        "thm2.4" | "thm2.5" | "cor2.6" | "r.indep" => 1e-7,
        "psi" | "phi.root" => 1e-8,
        "gamma.scale" => 1e-9,
        "ladder.l4" => 1e-6,
        "mu.exact" => 0.5,
        "mu.float" => 1e-12,
        "lemma2.2.degrees" | "lemma2.2.parity" => 0.5,
        "deriv.fd" => 1e-4,
        "deriv.parity" => 1e-10,
        "wp2.fd" => 1e-5,
        _ => 1e-8,
    }
}

/// The default lattice battery: g₃ = 0, g₂ = 0, and a no-symmetry case.
pub fn battery() -> Vec<(String, Lattice)> {
    let c = Complex64::new;
    let hex = c((std::f64::consts::PI / 3.0).cos(), (std::f64::consts::PI / 3.0).sin());
    vec![
        (
            "square(1,i)".to_string(),
            Lattice::from_half_periods(c(1.0, 0.0), c(0.0, 1.0)).expect("valid lattice"),
        ),
        (
            "hexagonal(1,e^{ipi/3})".to_string(),
            Lattice::from_half_periods(c(1.0, 0.0), hex).expect("valid lattice"),
        ),
        (
            "generic(1,0.3+1.1i)".to_string(),
            Lattice::from_half_periods(c(1.0, 0.0), c(0.3, 1.1)).expect("valid lattice"),
        ),
    ]
}

#[derive(Default)]
struct Collector {
    rows: Vec<(String, usize, f64, Option<String>)>,
}

impl Collector {
    fn record(&mut self, id: &str, residual: f64) {
        if let Some(row) = self.rows.iter_mut().find(|(rid, ..)| rid == id) {
            row.1 += 1;
            row.2 = row.2.max(residual);
        } else {
            self.rows.push((id.to_string(), 1, residual, None));
        }
    }

    fn note(&mut self, id: &str, note: String) {
        if let Some(row) = self.rows.iter_mut().find(|(rid, ..)| rid == id) {
            row.3 = Some(note);
        } else {
            self.rows.push((id.to_string(), 0, 0.0, Some(note)));
        }
    }

    fn finish(self, tol_override: Option<f64>) -> (Vec<IdentityOutcome>, bool) {
        let mut pass = true;
        let outcomes: Vec<IdentityOutcome> = self
            .rows
            .into_iter()
            .map(|(id, trials, max_residual, note)| {
                let tolerance = tol_override.unwrap_or_else(|| tolerance(&id));
                let ok = max_residual <= tolerance;
                pass &= ok;
                IdentityOutcome { id, trials, max_residual, tolerance, pass: ok, note }
            })
            .collect();
        (outcomes, pass)
    }
}

fn mix_seed(seed: u64, tag: &str, idx: u64) -> u64 {
    let mut h = 0xcbf29ce484222325u64;
    let mut eat = |b: u8| h = (h ^ b as u64).wrapping_mul(0x100000001b3);
    for b in seed.to_le_bytes() {
        eat(b);
    }
    for b in tag.bytes() {
        eat(b);
    }
    for b in idx.to_le_bytes() {
        eat(b);
    }
    h
}

/// Retries `f` on fresh samples whenever a guard or degeneracy trips.
fn resampled<T>(
    sampler: &mut PointSampler,
    n_points: usize,
    mut f: impl FnMut(&[Complex64], &mut PointSampler) -> Result<T>,
) -> Result<T> {
    for _ in 0..200 {
        let pts = sampler.points(n_points)?;
        match f(&pts, sampler) {
            Ok(v) => return Ok(v),
            Err(
                Error::GuardedInput(_)
                | Error::DegeneratePoints(_)
                | Error::Pole { .. }
                | Error::DegenerateSystem { .. }
                | Error::PhiDegenerate { .. }
                | Error::NoUsableR
                | Error::LeadingClash,
            ) => continue,
            Err(e) => return Err(e),
        }
    }
    Err(Error::Numeric("resampling exhausted 200 attempts".into()))
}

fn rel(a: Complex64, b: Complex64) -> f64 {
    (a - b).norm() / (1.0 + b.norm())
}

fn suite_classical(
    lat: &Lattice,
    sampler: &mut PointSampler,
    trials: usize,
    col: &mut Collector,
) -> Result<()> {
    for _ in 0..trials {
        let det = resampled(sampler, 2, |p, _| classical_determinant(p[0], p[1], lat))?;
        col.record("det.thm1.1", det);

        let reports = resampled(sampler, 2, |p, _| {
            let mut out = Vec::with_capacity(3);
            for v in 1..=3 {
                out.push(classical_addition(v, p[0], p[1], lat)?);
            }
            Ok(out)
        })?;
        col.record("thm1.1", reports[0].relative_residual);
        for rep in &reports {
            col.record(&rep.identity_id, rep.relative_residual);
        }
        for i in 0..3 {
            for j in i + 1..3 {
                col.record("cor3.1.cross", rel(reports[i].formula_value, reports[j].formula_value));
            }
        }

        let dups = resampled(sampler, 1, |p, _| {
            let mut out = Vec::with_capacity(5);
            for v in DuplicationVariant::ALL {
                out.push(duplication(v, p[0], lat)?);
            }
            Ok(out)
        })?;
        for rep in &dups {
            col.record(&rep.identity_id, rep.relative_residual);
        }
        for i in 0..5 {
            for j in i + 1..5 {
                col.record("dup.cross", rel(dups[i].formula_value, dups[j].formula_value));
            }
        }
    }
    Ok(())
}

fn suite_threeterm(
    lat: &Lattice,
    sampler: &mut PointSampler,
    trials: usize,
    col: &mut Collector,
) -> Result<()> {
    for _ in 0..trials {
        let (pts, reports) = resampled(sampler, 3, |p, _| {
            let mut out = Vec::with_capacity(4);
            for v in 1..=4 {
                out.push(three_term_addition(v, p[0], p[1], p[2], lat)?);
            }
            Ok((p.to_vec(), out))
        })?;
        for rep in &reports {
            col.record(&rep.identity_id, rep.relative_residual);
        }
        for i in 0..4 {
            for j in i + 1..4 {
                col.record("3term.cross", rel(reports[i].formula_value, reports[j].formula_value));
            }
        }

        let [l1, l2, l3] = three_term_lambdas(pts[0], pts[1], pts[2], lat)?;
        for &t in &pts {
            let (p, p1) = wp_pair(t, lat)?;
            let p2 = wp_deriv(t, 2, lat)?;
            col.record("3term.lambda", (p2 - (l1 * p1 + l2 * p + l3)).norm() / (1.0 + p2.norm()));
        }
        // permutation invariance of the lambdas
        let perm = three_term_lambdas(pts[1], pts[2], pts[0], lat)?;
        let swap = three_term_lambdas(pts[1], pts[0], pts[2], lat)?;
        for other in [perm, swap] {
            for (a, b) in [l1, l2, l3].iter().zip(other.iter()) {
                col.record("3term.sym", (a - b).norm() / (1.0 + b.norm()));
            }
        }
    }
    Ok(())
}

fn suite_triplication(
    lat: &Lattice,
    sampler: &mut PointSampler,
    trials: usize,
    col: &mut Collector,
) -> Result<()> {
    for _ in 0..trials {
        let reports = resampled(sampler, 1, |p, _| {
            let mut out = Vec::with_capacity(5);
            for v in TriplicationVariant::ALL {
                out.push(triplication(v, p[0], lat)?);
            }
            Ok(out)
        })?;
        for rep in &reports {
            col.record(&rep.identity_id, rep.relative_residual);
        }
        let (by_deriv, by_wp) = resampled(sampler, 1, |p, _| triplication_lambda_limits(p[0], lat))?;
        for (a, b) in by_deriv.iter().zip(by_wp.iter()) {
            col.record("trip.lambda", (a - b).norm() / (1.0 + b.norm()));
        }
    }
    Ok(())
}

fn suite_invariants(
    lat: &Lattice,
    sampler: &mut PointSampler,
    trials: usize,
    col: &mut Collector,
) -> Result<()> {
    // once per lattice: oracle agreement and the e-value relations
    let (w1, w2) = (lat.omega1().expect("battery has periods"), lat.omega2().expect("battery has periods"));
    let (g2o, g3o) = oracle::invariants_direct_sum(w1, w2, 200);
    let g2_scale = lat.g2().norm().max(lat.g3().norm().powf(2.0 / 3.0)).max(1.0);
    let g3_scale = lat.g3().norm().max(lat.g2().norm().powf(1.5)).max(1.0);
    col.record("invariants.oracle", (lat.g2() - g2o).norm() / g2_scale);
    col.record("invariants.oracle", (lat.g3() - g3o).norm() / g3_scale);

    let [e1, e2, e3] = lat.e_values();
    let scale = 1.0 + lat.g2().norm() + lat.g3().norm();
    col.record("e.relations", (e1 + e2 + e3).norm() / scale);
    col.record("e.relations", (e1 * e2 + e2 * e3 + e3 * e1 + lat.g2() / 4.0).norm() / scale);
    col.record("e.relations", (e1 * e2 * e3 - lat.g3() / 4.0).norm() / scale);

    let g2_half = invariant_identity(InvariantKind::G2, w1, w2, lat)?;
    let classic_g2 = -4.0 * (e1 * e2 + e2 * e3 + e3 * e1);
    col.record("cor3.2.halfperiod", rel(g2_half.formula_value, classic_g2));
    let g3_half = invariant_identity(InvariantKind::G3, w1, w2, lat)?;
    let classic_g3 = 4.0 * e1 * e2 * e3;
    col.record("cor3.2.halfperiod", rel(g3_half.formula_value, classic_g3));

    for _ in 0..trials {
        let z = sampler.point()?;
        let (u, v) = wp_pair(z, lat)?;
        let de = (v * v - (4.0 * u.powu(3) - lat.g2() * u - lat.g3())).norm()
            / (1.0 + u.norm()).powi(3);
        col.record("eq1.de", de);

        let reps = resampled(sampler, 2, |p, _| {
            Ok((
                invariant_identity(InvariantKind::G2, p[0], p[1], lat)?,
                invariant_identity(InvariantKind::G3, p[0], p[1], lat)?,
            ))
        })?;
        col.record("cor3.2.g2", reps.0.relative_residual);
        col.record("cor3.2.g3", reps.1.relative_residual);
    }

    for _ in 0..trials.min(50) {
        let z = sampler.point()?;
        let direct = oracle::wp_direct_sum(z, lat, 60.0)?;
        col.record("wp.oracle", rel(wp(z, lat)?, direct));
    }
    Ok(())
}

fn suite_fs(
    lat: &Lattice,
    sampler: &mut PointSampler,
    trials: usize,
    col: &mut Collector,
) -> Result<()> {
    let shortest = lat.shortest_vector_length().expect("battery has periods");
    let h = 5e-4 * shortest;
    for _ in 0..trials {
        let rep = resampled(sampler, 2, |p, _| fs_identity(1, p, lat))?;
        col.record("fs.n1", rep.relative_residual);
        let rep = resampled(sampler, 3, |p, _| fs_identity(2, p, lat))?;
        col.record("fs.n2", rep.relative_residual);

        // (log sigma)'' = -wp by a second difference of the sigma ratio;
        // interior points keep the h^2 |wp''| truncation term small
        let z =
            sampler.point_where(|z| lat.pole_distance(z).is_ok_and(|d| d >= 0.15 * shortest))?;
        let ratio = sigma(z + h, lat)? * sigma(z - h, lat)? / sigma(z, lat)?.powu(2);
        let log_second = ratio.ln() / (h * h);
        let p = wp(z, lat)?;
        col.record("sigma.log", (log_second + p).norm() / (1.0 + p.norm()));
    }
    Ok(())
}

fn random_config(rng: &mut rand_chacha::ChaCha8Rng, ell: usize) -> AdditionConfig {
    let pool: Vec<i64> = std::iter::once(-2).chain(0..ell as i64).collect();
    loop {
        let mut ks = pool.clone();
        ks.shuffle(rng);
        let ks: Vec<i64> = ks[..ell].to_vec();
        let mut ns = pool.clone();
        ns.shuffle(rng);
        let n_count = rng.gen_range(1..=2usize);
        let gamma_terms: Vec<(i64, Complex64)> = ns[..n_count]
            .iter()
            .map(|&n| {
                let mag = rng.gen_range(0.5..1.5);
                let angle = rng.gen_range(0.0..std::f64::consts::TAU);
                (n, mag * Complex64::new(0.0, angle).exp())
            })
            .collect();
        let max_order = gamma_terms
            .iter()
            .map(|&(n, _)| n)
            .chain(ks.iter().copied())
            .max()
            .expect("non-empty");
        if max_order != ell as i64 - 1 {
            continue;
        }
        // n fully inside the k-set solves to the termwise cancellation and
        // phi vanishes identically; keep at least one order outside
        if gamma_terms.iter().all(|&(n, _)| ks.contains(&n)) {
            continue;
        }
        if let Ok(config) = AdditionConfig::new(gamma_terms, ks) {
            return config;
        }
    }
}

fn suite_engine(
    lat: &Lattice,
    sampler: &mut PointSampler,
    trials: usize,
    col: &mut Collector,
) -> Result<()> {
    // determinant theorem for the classical config and random ell = 2 configs
    let classical = AdditionConfig::classical_two_point();
    for _ in 0..trials.min(20) {
        let (res, _) = resampled(sampler, 2, |p, _| det_theorem_residual(&classical, p, lat))?;
        col.record("det.thm2.1", res);
    }
    for _ in 0..10 {
        let config = random_config(sampler.rng(), 2);
        let (res, _) = resampled(sampler, 2, |p, _| {
            solve_for_config(&config, p, lat)?; // admissibility
            det_theorem_residual(&config, p, lat)
        })?;
        col.record("det.thm2.1", res);
    }
    // the three-point config's determinant identity is vacuous (an FS
    // instance); report the detection, not a residual pass
    let three = AdditionConfig::three_point();
    let (_, vanishing) = resampled(sampler, 3, |p, _| det_theorem_residual(&three, p, lat))?;
    col.record("det.thm2.1.vanishing", if vanishing { 0.0 } else { 1.0 });
    col.note(
        "det.thm2.1.vanishing",
        "degenerate determinant (theorem vacuous for this config)".to_string(),
    );

    // randomized configurations, ell in {2, 3}
    let n_configs = (trials / 5).clamp(2, 20);
    let n_sets = (trials / 5).clamp(2, 20);
    for ci in 0..n_configs {
        let ell = 2 + (ci % 2);
        let config = random_config(sampler.rng(), ell);
        for _ in 0..n_sets {
            let outcome = resampled(sampler, ell, |p, _| {
                let report = solve_for_config(&config, p, lat)?;
                let sym = engine::symmetric_relations(&config, &report, p, lat)?;
                let sum = wp_of_sum(&config, &report, p, lat, RChoice::Auto)?;
                let c26 = engine::corollary_identity_residual(&config, &report, p, lat, 1, ell + 1)?;
                // phi vanishes at wp of every input point and of the sum
                let table = engine::mu_table(&config, &report, lat)?;
                let z_total: Complex64 = p.iter().sum();
                let mut phi_root: f64 = 0.0;
                for &pt in p.iter().chain(std::iter::once(&z_total)) {
                    let x = wp(pt, lat)?;
                    let scale = table.scale() * (1.0 + x.norm()).powi(ell as i32 + 1);
                    phi_root = phi_root.max(table.eval_phi(x).norm() / scale);
                }
                // r-independence over all usable r
                let mut values = Vec::new();
                for r in 1..=ell + 1 {
                    match wp_of_sum(&config, &report, p, lat, RChoice::Fixed(r)) {
                        Ok(res) => values.push(res.wp_sum_by_formula),
                        Err(Error::NoUsableR) => continue,
                        Err(e) => return Err(e),
                    }
                }
                let mut r_indep: f64 = 0.0;
                for i in 0..values.len() {
                    for j in i + 1..values.len() {
                        r_indep = r_indep.max(rel(values[i], values[j]));
                    }
                }
                // psi vanishes at each input and at -z
                let z_sum: Complex64 = p.iter().sum();
                let mut psi: f64 = 0.0;
                for &s in p.iter() {
                    psi = psi.max(engine::psi_residual(&config, &report, s, lat)?);
                }
                psi = psi.max(engine::psi_residual(&config, &report, -z_sum, lat)?);
                Ok((sym, sum, c26, r_indep, psi, phi_root))
            })?;
            let (sym, sum, c26, r_indep, psi, phi_root) = outcome;
            col.record("thm2.4", sym.into_iter().fold(0.0, f64::max));
            col.record("thm2.5", sum.residuals["thm2.5"]);
            col.record("cor2.6", c26);
            col.record("r.indep", r_indep);
            col.record("psi", psi);
            col.record("phi.root", phi_root);
        }
    }

    // gamma scaling invariance on the classical config
    for _ in 0..trials.min(20) {
        let factor = Complex64::new(1.3, -0.7);
        let scaled = AdditionConfig::new(vec![(1, factor)], vec![0, -2])?;
        let residual = resampled(sampler, 2, |p, _| {
            let base_rep = solve_for_config(&classical, p, lat)?;
            let scaled_rep = solve_for_config(&scaled, p, lat)?;
            let a = wp_of_sum(&classical, &base_rep, p, lat, RChoice::Fixed(1))?;
            let b = wp_of_sum(&scaled, &scaled_rep, p, lat, RChoice::Fixed(1))?;
            Ok(rel(a.wp_sum_by_formula, b.wp_sum_by_formula))
        })?;
        col.record("gamma.scale", residual);
    }

    // the generic ell = 4 ladder
    let ladder = AdditionConfig::generic_ladder(4)?;
    for _ in 0..trials.min(20) {
        let residual = resampled(sampler, 4, |p, _| {
            let report = solve_for_config(&ladder, p, lat)?;
            let sum = wp_of_sum(&ladder, &report, p, lat, RChoice::Auto)?;
            Ok(sum.residuals["thm2.5"])
        })?;
        col.record("ladder.l4", residual);
    }
    Ok(())
}

fn reference_mu_two_point(vals: &[BigRational; 5]) -> [BigRational; 4] {
    let (l1, l2, g2, g3) = (&vals[0], &vals[1], &vals[3], &vals[4]);
    [
        -(l2 * l2) - g3,
        -(BigRational::from_integer(BigInt::from(2)) * l1 * l2) - g2,
        -(l1 * l1),
        BigRational::from_integer(BigInt::from(4)),
    ]
}

fn reference_mu_three_point(vals: &[BigRational; 5]) -> [BigRational; 5] {
    let (l1, l2, l3, g2, g3) = (&vals[0], &vals[1], &vals[2], &vals[3], &vals[4]);
    let two = BigRational::from_integer(BigInt::from(2));
    let four = BigRational::from_integer(BigInt::from(4));
    let six = BigRational::from_integer(BigInt::from(6));
    let twelve = BigRational::from_integer(BigInt::from(12));
    [
        -(l1 * l1 * g3) - l3 * l3 - l3 * g2 - g2 * g2 / four.clone(),
        -(l1 * l1 * g2) - two * l2 * l3 - l2 * g2,
        -(l2 * l2) + twelve.clone() * l3 + six * g2,
        four * l1 * l1 + twelve * l2,
        BigRational::from_integer(BigInt::from(-36)),
    ]
}

fn reference_mu_two_point_f64(l: &[Complex64], g2: Complex64, g3: Complex64) -> [Complex64; 4] {
    [
        -(l[1] * l[1]) - g3,
        -2.0 * l[0] * l[1] - g2,
        -(l[0] * l[0]),
        Complex64::new(4.0, 0.0),
    ]
}

fn reference_mu_three_point_f64(l: &[Complex64], g2: Complex64, g3: Complex64) -> [Complex64; 5] {
    [
        -(l[0] * l[0] * g3) - l[2] * l[2] - l[2] * g2 - g2 * g2 / 4.0,
        -(l[0] * l[0] * g2) - 2.0 * l[1] * l[2] - l[1] * g2,
        -(l[1] * l[1]) + 12.0 * l[2] + 6.0 * g2,
        4.0 * l[0] * l[0] + 12.0 * l[1],
        Complex64::new(-36.0, 0.0),
    ]
}

/// Lattice-independent symbolic checks (μ tables, degrees, parity).
fn suite_symbolic_global(seed: u64, trials: usize, col: &mut Collector) -> Result<()> {
    use rand::SeedableRng;
    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(mix_seed(seed, "symbolic-global", 0));

    // exact path with formal lambdas, evaluated at random rationals
    let one = BigRational::from_integer(BigInt::from(1));
    let two_pt = phi_mu_exact(&[(1, one.clone())], &[0, -2])?;
    let three_pt = phi_mu_exact(&[(2, one)], &[1, 0, -2])?;
    let mut exact_ok = true;
    for _ in 0..trials.min(20) {
        let mut draw = || {
            BigRational::new(
                BigInt::from(rng.gen_range(-20i64..=20)),
                BigInt::from(rng.gen_range(1i64..=12)),
            )
        };
        let vals = [draw(), draw(), draw(), draw(), draw()];
        let want2 = reference_mu_two_point(&vals);
        for (mu, want) in two_pt.mu.iter().zip(want2.iter()) {
            exact_ok &= mu.eval(&vals) == *want;
        }
        let want3 = reference_mu_three_point(&vals);
        for (mu, want) in three_pt.mu.iter().zip(want3.iter()) {
            exact_ok &= mu.eval(&vals) == *want;
        }
    }
    // and as polynomials: mu(3) = 4, mu(4) = -36 on the nose
    exact_ok &= two_pt.mu[3] == SymPoly::from_i64(4);
    exact_ok &= three_pt.mu[4] == SymPoly::from_i64(-36);
    col.record("mu.exact", if exact_ok { 0.0 } else { 1.0 });

    // exact degree and parity facts for n <= 20
    let mut degrees_ok = true;
    let mut parity_ok = true;
    for n in 0..=20i64 {
        let form = derivative_form(n)?;
        if n % 2 == 0 {
            degrees_ok &= form.even_part.degree() == Some(n as usize / 2 + 1);
            parity_ok &= form.odd_part.is_zero() && !form.even_part.is_zero();
        } else {
            degrees_ok &= form.odd_part.degree() == Some((n as usize - 1) / 2);
            parity_ok &= form.even_part.is_zero() && !form.odd_part.is_zero();
        }
    }
    let constant = derivative_form(-2)?;
    parity_ok &= constant.odd_part.is_zero() && constant.even_part.degree() == Some(0);
    col.record("lemma2.2.degrees", if degrees_ok { 0.0 } else { 1.0 });
    col.record("lemma2.2.parity", if parity_ok { 0.0 } else { 1.0 });
    Ok(())
}

fn suite_symbolic_lattice(
    lat: &Lattice,
    sampler: &mut PointSampler,
    trials: usize,
    col: &mut Collector,
) -> Result<()> {
    // float-path mu tables against the hand-expanded closed forms at solved lambdas
    let two = AdditionConfig::classical_two_point();
    let three = AdditionConfig::three_point();
    for _ in 0..trials.min(20) {
        let residual = resampled(sampler, 2, |p, _| {
            let rep = solve_for_config(&two, p, lat)?;
            let table = phi_mu(&two, &rep.lambdas, lat.g2(), lat.g3())?;
            let want = reference_mu_two_point_f64(&rep.lambdas, lat.g2(), lat.g3());
            let scale = table.scale().max(1.0);
            Ok(table
                .mu
                .iter()
                .zip(want.iter())
                .map(|(a, b)| (a - b).norm() / scale)
                .fold(0.0, f64::max))
        })?;
        col.record("mu.float", residual);
        let residual = resampled(sampler, 3, |p, _| {
            let rep = solve_for_config(&three, p, lat)?;
            let table = phi_mu(&three, &rep.lambdas, lat.g2(), lat.g3())?;
            let want = reference_mu_three_point_f64(&rep.lambdas, lat.g2(), lat.g3());
            let scale = table.scale().max(1.0);
            Ok(table
                .mu
                .iter()
                .zip(want.iter())
                .map(|(a, b)| (a - b).norm() / scale)
                .fold(0.0, f64::max))
        })?;
        col.record("mu.float", residual);
    }

    // derivative forms against the ring-stencil numerical derivatives
    let clearance = 0.3 * lat.shortest_vector_length().expect("battery has periods");
    for _ in 0..trials.clamp(2, 10) {
        let z = sampler.point_where(|z| lat.pole_distance(z).is_ok_and(|d| d >= clearance))?;
        for n in 0..=10u32 {
            let exact = wp_deriv(z, n as i64, lat)?;
            let fd = oracle::wp_deriv_ring_stencil(z, n, lat, 0.35, 48)?;
            col.record("deriv.fd", (fd - exact).norm() / (1.0 + exact.norm()));
        }
    }

    // parity of derivatives and the wp'' finite-difference cross-check
    for _ in 0..trials.min(20) {
        let z = sampler.point()?;
        for n in 0..=6i64 {
            let a = wp_deriv(z, n, lat)?;
            let b = wp_deriv(-z, n, lat)?;
            let sign = if n % 2 == 0 { 1.0 } else { -1.0 };
            col.record("deriv.parity", (b - sign * a).norm() / (1.0 + a.norm()));
        }
        let h = 1e-5;
        let fd = (wp_deriv(z + h, 1, lat)? - wp_deriv(z - h, 1, lat)?) / (2.0 * h);
        let exact = wp_deriv(z, 2, lat)?;
        col.record("wp2.fd", (fd - exact).norm() / (1.0 + exact.norm()));
    }
    Ok(())
}

fn run_suite_on_lattice(
    suite: &str,
    lat: &Lattice,
    sampler: &mut PointSampler,
    trials: usize,
    col: &mut Collector,
) -> Result<()> {
    match suite {
        "classical" => suite_classical(lat, sampler, trials, col),
        "threeterm" => suite_threeterm(lat, sampler, trials, col),
        "triplication" => suite_triplication(lat, sampler, trials, col),
        "invariants" => suite_invariants(lat, sampler, trials, col),
        "fs" => suite_fs(lat, sampler, trials, col),
        "engine" => suite_engine(lat, sampler, trials, col),
        "symbolic" => suite_symbolic_lattice(lat, sampler, trials, col),
        other => Err(Error::InvalidInput(format!("unknown suite '{other}'"))),
    }
}

/// Runs one suite (or "all") over the default battery.
pub fn run(suite: &str, opts: &VerifyOptions) -> Result<VerifyReport> {
    if opts.trials == 0 {
        return Err(Error::InvalidInput("trials must be >= 1".into()));
    }
    let names: Vec<&str> = if suite == "all" {
        SUITE_NAMES.to_vec()
    } else if SUITE_NAMES.contains(&suite) {
        vec![suite]
    } else {
        return Err(Error::InvalidInput(format!(
            "unknown suite '{suite}' (expected one of {SUITE_NAMES:?} or 'all')"
        )));
    };

    let battery = battery();
    let mut suites = Vec::with_capacity(names.len());
    let mut pass = true;
    for name in names {
        let mut col = Collector::default();
        if name == "symbolic" {
            suite_symbolic_global(opts.seed, opts.trials, &mut col)?;
        }
        for (idx, (_, lat)) in battery.iter().enumerate() {
            let mut sampler = PointSampler::new(lat, mix_seed(opts.seed, name, idx as u64));
            run_suite_on_lattice(name, lat, &mut sampler, opts.trials, &mut col)?;
        }
        let (outcomes, suite_pass) = col.finish(opts.tol_override);
        pass &= suite_pass;
        suites.push(SuiteReport { suite: name.to_string(), outcomes, pass: suite_pass });
    }
    Ok(VerifyReport {
        seed: opts.seed,
        trials: opts.trials,
        lattices: battery.into_iter().map(|(n, _)| n).collect(),
        suites,
        pass,
    })
}
