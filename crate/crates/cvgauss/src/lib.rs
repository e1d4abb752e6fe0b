//! Toolkit for the two-parameter family of two-mode Gaussian "isotropic"
//! states, the convex mixture
//!
//! ```text
//! gamma_GI(r, p) = p * gamma_TMS(r) + (1 - p) * gamma_TMT(r)
//! ```
//!
//! of a two-mode squeezed vacuum and a pair of identical thermal modes that
//! share its local statistics. Squeezing r >= 0 and mixing probability
//! p in [0, 1] control the state; everything else in the crate is a closed
//! form in (r, p).
//!
//! Modules, bottom up:
//!
//! * [`symplectic`]: covariance matrices, the symplectic form, physicality,
//!   partial transposition, symplectic spectra, the two-mode standard form.
//! * [`states`]: constructors for the three state families and their scalar
//!   properties (symplectic eigenvalues, purity, entropies).
//! * [`criteria`]: PPT, steering, and realignment (CCNR) tests with
//!   quantitative margins.
//! * [`measures`]: entanglement of formation, Gaussian discord, mutual
//!   information.
//! * [`channel`]: the single-mode Gaussian channel isomorphic to the state
//!   under the Choi correspondence.
//! * [`fock`]: a truncated Fock-space engine that rebuilds the same states
//!   numerically and serves as an independent oracle for every closed form
//!   above.
//!
//! Conventions: hbar = 1, quadrature ordering (x1, p1, x2, p2), vacuum
//! covariance matrix = identity. All displacements are identically zero.

pub mod channel;
pub mod criteria;
pub mod fock;
pub mod measures;
pub mod states;
pub mod symplectic;

/// Error type shared by the whole crate. Display output is a single line.
#[derive(Debug, thiserror::Error)]
pub enum Error {
    /// Parameter outside its mathematical domain.
    #[error("domain: {0}")]
    Domain(String),

    /// Matrix of the wrong size for the requested operation.
    #[error("dimension: {0}")]
    Dimension(String),

    /// Matrix does not match the required sparsity or symmetry pattern.
    #[error("shape: {0}")]
    Shape(String),

    /// A numerical guard tripped (singular system, tolerance exceeded).
    #[error("numerical: {0}")]
    Numerical(String),

    /// Truncated tail mass above the allowed bound for the requested cutoff.
    #[error("tail: {0}")]
    Tail(String),

    /// Fock extraction failed its re-synthesis residual validation.
    #[error("extraction: {0}")]
    Extraction(String),

    /// Operator is not an acceptable quantum state for the operation.
    #[error("state: {0}")]
    State(String),

    #[error("io: {0}")]
    Io(#[from] std::io::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
