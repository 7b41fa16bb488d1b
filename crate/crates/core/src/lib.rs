//! Chow-group bookkeeping and Poincaré polynomials along the flip tower
//! `P^{m-1} = M0 ~> M1 ~> ... ~> Mw -> N` for the moduli space `N` of stable
//! rank-2 bundles with fixed odd-degree determinant on a genus `g` curve.
//!
//! - [`params`]: validated `(g, d)` and the dimensions of all spaces involved.
//! - [`poly`], [`poincare`]: exact integer polynomials, symmetric powers of a
//!   curve, and the closed-form `P_t(N)`.
//! - [`formal`]: the split exact sequences and the resolution of `A^l(N)` as
//!   multisets of Chow-group atoms.
//! - [`coeffs`]: the symbolic coefficients `C_r^s`.
//! - [`engine`]: the same recursion run on Poincaré polynomials, with checks.

pub mod coeffs;
pub mod engine;
pub mod error;
pub mod exec;
pub mod formal;
pub mod params;
pub mod poincare;
pub mod poly;

pub use coeffs::{coeff_c, ClassKind, CoeffExpression, FormalClassSymbol, Monomial};
pub use engine::{
    poincare_m, poincare_n, verify, verify_batch, verify_with, CheckResult, FlipTower, FlipTrace,
    StepRecord,
};
pub use error::{Error, Result};
pub use exec::Execution;
pub use formal::{
    final_sequence, resolution, star_sequence, summed_sequence, theorem_sequence, Atom, AtomSpace,
    ExactSequenceSpec, FormalDecomposition, Resolution, SequenceKind,
};
pub use params::{dim_of, validate_params, ModuliParams, SpaceId};
pub use poincare::{closed_form_oracle_n, sym_power_betti, sym_power_table};
pub use poly::{exact_div, IntPolynomial};
