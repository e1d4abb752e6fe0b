//! Covariance-matrix core: the symplectic form, physicality, symplectic
//! spectra, partial transposition, and the two-mode standard form.
//!
//! A covariance matrix gamma collects the symmetrized second moments
//! gamma_kl = <R_k R_l + R_l R_k> - 2 <R_k> <R_l> of the quadrature vector
//! R = (x1, p1, ..., xN, pN). A real symmetric gamma describes a quantum
//! state exactly when gamma + i*Omega >= 0, where Omega is the symplectic
//! form returned by [`omega`].

use nalgebra::{DMatrix, DVector};

use crate::{Error, Result};

/// Relative tolerance for the symmetry check on construction.
const SYMMETRY_RTOL: f64 = 1e-12;

/// Covariance matrix of an n-mode Gaussian state, ordering (x1, p1, ..., xN, pN).
///
/// The displacement vector is carried explicitly to keep signatures honest,
/// but every state this crate constructs has it identically zero.
#[derive(Debug, Clone, PartialEq)]
pub struct CovarianceMatrix {
    n_modes: usize,
    entries: DMatrix<f64>,
    displacement: DVector<f64>,
}

impl CovarianceMatrix {
    /// Wraps a 2n x 2n real symmetric matrix with zero displacement.
    ///
    /// # Errors
    ///
    /// `Dimension` if the matrix is not square of size 2 * n_modes;
    /// `Shape` if it is asymmetric beyond 1e-12 relative to its largest entry.
    pub fn new(n_modes: usize, entries: DMatrix<f64>) -> Result<Self> {
        if n_modes == 0 {
            return Err(Error::Dimension("n_modes must be at least 1".into()));
        }
        let dim = 2 * n_modes;
        if entries.nrows() != dim || entries.ncols() != dim {
            return Err(Error::Dimension(format!(
                "expected a {dim}x{dim} matrix for {n_modes} mode(s), got {}x{}",
                entries.nrows(),
                entries.ncols()
            )));
        }
        let scale = entries.amax().max(1.0);
        for i in 0..dim {
            for j in (i + 1)..dim {
                if (entries[(i, j)] - entries[(j, i)]).abs() > SYMMETRY_RTOL * scale {
                    return Err(Error::Shape(format!(
                        "asymmetric at ({i},{j}): {} vs {}",
                        entries[(i, j)],
                        entries[(j, i)]
                    )));
                }
            }
        }
        Ok(Self {
            n_modes,
            entries,
            displacement: DVector::zeros(dim),
        })
    }

    pub fn n_modes(&self) -> usize {
        self.n_modes
    }

    /// Side length 2 * n_modes.
    pub fn dim(&self) -> usize {
        2 * self.n_modes
    }

    pub fn entries(&self) -> &DMatrix<f64> {
        &self.entries
    }

    /// Always the zero vector for states built by this crate.
    pub fn displacement(&self) -> &DVector<f64> {
        &self.displacement
    }

    /// Physicality test: true iff the minimum eigenvalue of gamma + i*Omega
    /// is at least -tol. The eigenvalue itself is returned as the margin, so
    /// boundary states (vacuum, pure squeezed states) report a margin near 0.
    pub fn is_physical(&self, tol: f64) -> (bool, f64) {
        let margin = min_eigenvalue_hermitian(&self.entries, &omega(self.n_modes));
        (margin >= -tol, margin)
    }
}

/// The symplectic form: block-diagonal with n copies of [[0, 1], [-1, 0]].
///
/// Satisfies Omega^2 = -I and Omega^T Omega = I.
pub fn omega(n_modes: usize) -> DMatrix<f64> {
    let mut m = DMatrix::zeros(2 * n_modes, 2 * n_modes);
    for k in 0..n_modes {
        m[(2 * k, 2 * k + 1)] = 1.0;
        m[(2 * k + 1, 2 * k)] = -1.0;
    }
    m
}

/// Minimum eigenvalue of the Hermitian matrix S + i*K, with S symmetric and
/// K antisymmetric, computed on the real symmetric embedding
/// [[S, -K], [K, S]] whose spectrum is that of S + i*K doubled.
pub(crate) fn min_eigenvalue_hermitian(sym: &DMatrix<f64>, antisym: &DMatrix<f64>) -> f64 {
    let d = sym.nrows();
    let mut embed = DMatrix::zeros(2 * d, 2 * d);
    for i in 0..d {
        for j in 0..d {
            embed[(i, j)] = sym[(i, j)];
            embed[(d + i, d + j)] = sym[(i, j)];
            embed[(i, d + j)] = -antisym[(i, j)];
            embed[(d + i, j)] = antisym[(i, j)];
        }
    }
    embed
        .symmetric_eigenvalues()
        .iter()
        .copied()
        .fold(f64::INFINITY, f64::min)
}

/// Symplectic eigenvalues of a covariance matrix, sorted ascending.
///
/// For a physical state every value is >= 1, with equality exactly for pure
/// states (per mode). Computed from the moduli of the eigenvalues of the real
/// matrix Omega * gamma, whose spectrum is the paired set {+-i nu_k}; the
/// pairs are deduplicated by sorting and each reported value is the mean of
/// its pair, which cancels the eigensolver's tiny asymmetry.
#[derive(Debug, Clone, PartialEq)]
pub struct SymplecticSpectrum {
    values: Vec<f64>,
}

impl SymplecticSpectrum {
    pub fn values(&self) -> &[f64] {
        &self.values
    }

    pub fn min(&self) -> f64 {
        self.values[0]
    }
}

pub fn symplectic_eigenvalues(gamma: &CovarianceMatrix) -> SymplecticSpectrum {
    let m = omega(gamma.n_modes()) * gamma.entries();
    let mut moduli: Vec<f64> = m.complex_eigenvalues().iter().map(|z| z.norm()).collect();
    moduli.sort_by(|a, b| a.total_cmp(b));
    let values = moduli.chunks_exact(2).map(|pair| (pair[0] + pair[1]) / 2.0).collect();
    SymplecticSpectrum { values }
}

/// Partial transposition at the covariance-matrix level: conjugation that
/// flips the momentum quadrature of the chosen mode (0 = A, 1 = B, ...).
/// Involutive; acts trivially on product states.
pub fn partial_transpose(gamma: &CovarianceMatrix, mode: usize) -> Result<CovarianceMatrix> {
    if mode >= gamma.n_modes() {
        return Err(Error::Dimension(format!(
            "mode index {mode} out of range for {} mode(s)",
            gamma.n_modes()
        )));
    }
    let flip = 2 * mode + 1;
    let mut entries = gamma.entries().clone();
    let dim = gamma.dim();
    for j in 0..dim {
        entries[(flip, j)] = -entries[(flip, j)];
    }
    for i in 0..dim {
        entries[(i, flip)] = -entries[(i, flip)];
    }
    CovarianceMatrix::new(gamma.n_modes(), entries)
}

/// The two-mode standard form: diagonal blocks a*I and b*I with off-diagonal
/// block diag(c1, c2).
///
/// Round trip is exact: `to_matrix` followed by [`standard_form`] reproduces
/// the quadruple bit for bit, because both directions only move f64 values.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TwoModeStandardForm {
    pub a: f64,
    pub b: f64,
    pub c1: f64,
    pub c2: f64,
}

impl TwoModeStandardForm {
    pub fn to_matrix(self) -> CovarianceMatrix {
        let mut m = DMatrix::zeros(4, 4);
        m[(0, 0)] = self.a;
        m[(1, 1)] = self.a;
        m[(2, 2)] = self.b;
        m[(3, 3)] = self.b;
        m[(0, 2)] = self.c1;
        m[(2, 0)] = self.c1;
        m[(1, 3)] = self.c2;
        m[(3, 1)] = self.c2;
        CovarianceMatrix::new(2, m).expect("standard-form matrix is symmetric by construction")
    }
}

/// Reads (a, b, c1, c2) off a two-mode covariance matrix already in standard
/// form. General symplectic reduction is out of scope: states outside the
/// standard-form sparsity pattern are rejected, not reduced.
///
/// # Errors
///
/// `Dimension` unless gamma has exactly two modes; `Shape` if any entry
/// outside the standard-form pattern exceeds 1e-12 relative to the largest
/// entry, or the paired diagonal entries disagree.
pub fn standard_form(gamma: &CovarianceMatrix) -> Result<TwoModeStandardForm> {
    if gamma.n_modes() != 2 {
        return Err(Error::Dimension(format!(
            "standard form is defined for 2 modes, got {}",
            gamma.n_modes()
        )));
    }
    let g = gamma.entries();
    let tol = SYMMETRY_RTOL * g.amax().max(1.0);
    let zero_positions = [(0usize, 1usize), (0, 3), (1, 2), (2, 3)];
    for (i, j) in zero_positions {
        if g[(i, j)].abs() > tol {
            return Err(Error::Shape(format!(
                "entry ({i},{j}) = {} outside the standard-form pattern",
                g[(i, j)]
            )));
        }
    }
    if (g[(0, 0)] - g[(1, 1)]).abs() > tol || (g[(2, 2)] - g[(3, 3)]).abs() > tol {
        return Err(Error::Shape(
            "diagonal blocks are not multiples of the identity".into(),
        ));
    }
    Ok(TwoModeStandardForm {
        a: g[(0, 0)],
        b: g[(2, 2)],
        c1: g[(0, 2)],
        c2: g[(1, 3)],
    })
}
