//! Spectral bounds and numerics for polynomial central potentials.
//!
//! For the operator -Delta + sum_i a_i r^{q_i} in d spatial dimensions this
//! crate provides:
//!
//! * a numerically exact radial eigensolver ([`radial`]), used both as the
//!   source of P-numbers and as the verification reference;
//! * the P-number machinery ([`pnumbers`]): the potential-independent
//!   constants that encode a pure-power spectrum, obtained in closed form,
//!   numerically with a persistent cache, or from explicit Gamma-function
//!   approximations;
//! * the semiclassical bound engine ([`envelope`]): minimize
//!   1/r^2 + sum_i a_i (P_i r)^{q_i} with the P assignment deciding whether
//!   the result is a certified lower bound, a certified upper bound, or a
//!   per-term mixed approximation;
//! * closed-form machinery for the anharmonic oscillator
//!   r^2 + lambda r^{2m} ([`anharmonic`]): the lambda <-> E algebra, the
//!   (omega, a, b) scaling reduction and two published comparison formulas;
//! * embedded reference tables ([`tables`]) reproduced by the CLI.

pub mod anharmonic;
pub mod envelope;
pub mod error;
pub mod pnumbers;
pub mod radial;
pub mod roots;
pub mod special;
pub mod tables;
pub mod types;

pub use error::{Error, Result};
pub use types::{
    Extensions, GridPolicy, PotentialSpec, PotentialSpecFile, PotentialTerm, RMaxPolicy,
    SolverConfig, StateIndex,
};
