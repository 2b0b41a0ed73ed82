//! Exact algebra: polynomials in ℘ over ℚ\[g₂,g₃\], the parity-split reduction
//! of ℘⁽ⁿ⁾, φ-polynomial μ coefficients, and elementary symmetric functions.

pub mod derivative;
pub mod invariant_poly;
pub mod mu;
pub mod sym_poly;
pub mod symmetric;
pub mod wp_poly;

pub use derivative::{derivative_form, DerivativeForm};
pub use invariant_poly::InvariantPoly;
pub use mu::{phi_mu, phi_mu_exact, ExactMuTable, MuTable};
pub use sym_poly::{SymPoly, Var};
pub use symmetric::{elementary_symmetric, elementary_symmetric_all};
pub use wp_poly::WpPoly;
