//! Weierstrass elliptic functions with a general addition-theorem engine.
//!
//! The crate evaluates ℘, ℘′, ℘⁽ⁿ⁾ and σ over a period lattice, reduces
//! derivatives of ℘ to exact polynomials in ℘ over ℚ\[g₂,g₃\], and implements
//! the linear-system recipe that turns a choice of derivative orders and
//! weights into an addition theorem for ℘(z₁ + ⋯ + z_ℓ): solve for the
//! multipliers λ, read off the φ-polynomial coefficients μ, and extract
//! ℘ at the sum through elementary symmetric functions. A catalog of
//! closed-form identities (addition, duplication, triplication,
//! three-term, invariant recovery, determinant and σ-quotient forms) is
//! numerically verifiable against direct evaluation, seeded and
//! deterministic.
//!
//! ```
//! use num::complex::Complex64;
//! use weierp::{Lattice, eval};
//!
//! let lat = Lattice::from_half_periods(
//!     Complex64::new(1.0, 0.0),
//!     Complex64::new(0.0, 1.0),
//! )?;
//! let z = Complex64::new(0.31, 0.17);
//! let w = Complex64::new(-0.12, 0.44);
//! let (p_z, dp_z) = eval::wp_pair(z, &lat)?;
//! let (p_w, dp_w) = eval::wp_pair(w, &lat)?;
//!
//! // the classical two-point addition formula
//! let formula = 0.25 * ((dp_z - dp_w) / (p_z - p_w)).powu(2) - p_z - p_w;
//! let direct = eval::wp(z + w, &lat)?;
//! assert!((formula - direct).norm() < 1e-9);
//! # Ok::<(), weierp::Error>(())
//! ```

pub mod engine;
pub mod error;
pub mod eval;
pub mod identities;
pub mod lattice;
pub mod linalg;
pub mod oracle;
pub mod sample;
pub mod symbolic;
pub mod verify;

pub use engine::{AdditionConfig, SolveReport, SumResult};
pub use error::{Error, Result};
pub use identities::IdentityReport;
pub use lattice::{invariants_from_periods, Lattice, LatticeSpec};
pub use symbolic::{derivative_form, DerivativeForm, MuTable};

// The guide chapters double as doctests so the book stays in sync with the
// API (mdBook itself does not run snippets).
#[cfg(doctest)]
mod book {
    macro_rules! chapter {
        ($name:ident, $path:literal) => {
            #[doc = include_str!($path)]
            pub mod $name {}
        };
    }

    chapter!(introduction, "../../../book/src/introduction.md");
    chapter!(lattices, "../../../book/src/lattices.md");
    chapter!(evaluation, "../../../book/src/evaluation.md");
    chapter!(derivative_forms, "../../../book/src/derivative-forms.md");
    chapter!(addition_engine, "../../../book/src/addition-engine.md");
    chapter!(identity_catalog, "../../../book/src/identity-catalog.md");
    chapter!(verification, "../../../book/src/verification.md");
}
