//! Entanglement transfer between two non-interacting multi-qubit sites.
//!
//! Each site evolves under its own qubit-number-conserving Hamiltonian, so a
//! two-qubit Bell seed on `(a_1, b_1)` stays inside a small sector of the full
//! register: the one-excitation sector for the anti-correlated (`Psi`) seed,
//! and the {two-excitation, vacuum} sector for the correlated (`Phi`) seed.
//!
//! The crate is split into:
//!
//! - [`linalg`]: a small dense complex matrix kernel (Kronecker products,
//!   matrix exponential, eigenvalues).
//! - [`sector`]: sector state types and Bell-seed constructors.
//! - [`dynamics`]: local propagators (Jaynes-Cummings and arbitrary Hermitian
//!   generators), sector evolution and the damping envelope.
//! - [`entanglement`]: reduced two-qubit density matrices and concurrences,
//!   both closed-form and via the Wootters spin-flip formula.
//! - [`rules`]: evaluators for the pairwise and one-sided sum rules.
//! - [`oracle`]: the full `2^(N+M)` register path used for cross-checking.
//! - [`scenario`]: time sweeps and CSV emission shared by the CLI and the
//!   browser demo.

pub mod dynamics;
pub mod entanglement;
pub mod error;
pub mod linalg;
pub mod oracle;
pub mod rules;
pub mod scenario;
pub mod sector;

pub use error::{Error, Result};
pub use linalg::{CMatrix, C64};

/// Default absolute tolerance for numerical predicates and rule checks.
pub const DEFAULT_TOL: f64 = 1e-10;
