//! Error type shared across the crate.

use num::complex::Complex64;
use thiserror::Error;

#[derive(Debug, Clone, Error)]
pub enum Error {
    /// The half-period ratio must lie in the upper half plane.
    #[error("Im(omega2/omega1) must be positive, got {0:e}")]
    NonPositiveImTau(f64),

    /// Im(tau) is positive but below the conditioning threshold.
    #[error("near-degenerate lattice: Im(tau) = {0:e} below threshold")]
    NearDegenerateLattice(f64),

    /// The cubic 4t^3 - g2 t - g3 has a repeated root.
    #[error("degenerate invariants: discriminant g2^3 - 27 g3^2 vanishes")]
    ZeroDiscriminant,

    /// Argument is within the pole threshold of a lattice point.
    #[error("pole: {z} is within tolerance of lattice point {lattice_point}")]
    Pole { z: Complex64, lattice_point: Complex64 },

    /// Series or iteration failed to converge.
    #[error("numeric failure: {0}")]
    Numeric(String),

    /// Operation needs periods but the lattice was built from invariants only.
    #[error("operation requires a lattice constructed from periods")]
    InvariantsOnly,

    /// Derivative order outside {-2, 0, 1, 2, ...}.
    #[error("derivative order {0} not in {{-2, 0, 1, 2, ...}}")]
    InvalidOrder(i64),

    #[error("invalid configuration: {0}")]
    InvalidConfig(String),

    #[error("invalid input: {0}")]
    InvalidInput(String),

    /// The linear system of the addition pipeline is (near-)singular.
    #[error("degenerate system: |det| = {det:e} below threshold (distinctness condition violated)")]
    DegenerateSystem { det: f64 },

    /// n_a = k_b together with gamma_a = lambda_b.
    #[error("leading-order clash: n_a = k_b and gamma_a = lambda_b hold simultaneously")]
    LeadingClash,

    /// Leading phi coefficient vanished; the polynomial degenerates.
    #[error("phi is degenerate: |mu({idx})| = {magnitude:e}")]
    PhiDegenerate { idx: usize, magnitude: f64 },

    /// Every S_(r-1) fell below the usability threshold.
    #[error("no usable r: all S_(r-1) below threshold")]
    NoUsableR,

    /// A guarded denominator of a closed-form identity vanished.
    #[error("guarded input: denominator '{0}' vanishes at the given inputs")]
    GuardedInput(&'static str),

    /// Input points fail a distinctness condition.
    #[error("degenerate points: {0}")]
    DegeneratePoints(String),

    /// Cross-checked computations disagree beyond tolerance.
    #[error("consistency check failed: {0}")]
    Consistency(String),
}

pub type Result<T> = std::result::Result<T, Error>;

impl Error {
    /// Process exit code used by the CLI: 2 invalid input, 3 pole/domain,
    /// 4 degeneracy.
    pub fn exit_code(&self) -> i32 {
        use Error::*;
        match self {
            NonPositiveImTau(_) | NearDegenerateLattice(_) | ZeroDiscriminant
            | InvalidOrder(_) | InvalidConfig(_) | InvalidInput(_) => 2,
            Pole { .. } | Numeric(_) | InvariantsOnly | Consistency(_) => 3,
            DegenerateSystem { .. } | LeadingClash | PhiDegenerate { .. } | NoUsableR
            | GuardedInput(_) | DegeneratePoints(_) => 4,
        }
    }
}
