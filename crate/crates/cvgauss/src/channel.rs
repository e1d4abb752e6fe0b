//! The single-mode Gaussian channel isomorphic to the state under the Choi
//! correspondence.
//!
//! A two-mode covariance matrix Gamma defines a completely positive map on
//! single-mode Gaussian states through the blocks of its partial transpose
//! Gamma~:
//!
//! ```text
//! gamma' = Gamma~_11 - Gamma~_12 (Gamma~_22 + gamma)^-1 Gamma~_12^T
//! ```
//!
//! The map acts on covariance matrices only; displacements stay fixed at
//! zero throughout the crate, so how the channel would transport them is
//! deliberately out of scope.

use nalgebra::{DMatrix, Matrix2};

use crate::states::{self, GiParams};
use crate::symplectic::{partial_transpose, CovarianceMatrix};
use crate::{Error, Result};

/// Determinants below this are treated as singular in the 2x2 inversion.
const SINGULAR_TOL: f64 = 1e-14;

/// A Gaussian channel defined by a physical two-mode Choi state.
#[derive(Debug, Clone, PartialEq)]
pub struct ChoiChannel {
    gamma_big: CovarianceMatrix,
    t11: Matrix2<f64>,
    t12: Matrix2<f64>,
    t22: Matrix2<f64>,
}

impl ChoiChannel {
    /// Builds the channel from its Choi state.
    ///
    /// # Errors
    ///
    /// `Dimension` unless gamma has two modes; `State` if it is unphysical.
    pub fn new(gamma: CovarianceMatrix) -> Result<Self> {
        if gamma.n_modes() != 2 {
            return Err(Error::Dimension(format!(
                "a Choi state for a single-mode channel has 2 modes, got {}",
                gamma.n_modes()
            )));
        }
        let (physical, margin) = gamma.is_physical(1e-9);
        if !physical {
            return Err(Error::State(format!(
                "Choi state is not physical (eigenvalue margin {margin:e})"
            )));
        }
        let tilde = partial_transpose(&gamma, 1)?;
        let block = |i, j| tilde.entries().fixed_view::<2, 2>(i, j).into_owned();
        Ok(Self {
            t11: block(0, 0),
            t12: block(0, 2),
            t22: block(2, 2),
            gamma_big: gamma,
        })
    }

    /// Channel of the isotropic family: Gamma~_11 = Gamma~_22 = cosh(2r) I,
    /// Gamma~_12 = p sinh(2r) I.
    pub fn from_params(params: GiParams) -> Self {
        Self::new(states::gamma_gi(params)).expect("gamma_gi is physical on its whole domain")
    }

    pub fn choi_state(&self) -> &CovarianceMatrix {
        &self.gamma_big
    }

    /// Applies the channel to a single-mode covariance matrix.
    ///
    /// # Errors
    ///
    /// `Dimension` for non-single-mode input; `State` for unphysical input;
    /// `Numerical` if (Gamma~_22 + gamma) is singular or the contracted
    /// output fails the physicality check (neither occurs for physical
    /// inputs of this family).
    pub fn apply(&self, gamma_in: &CovarianceMatrix) -> Result<CovarianceMatrix> {
        if gamma_in.n_modes() != 1 {
            return Err(Error::Dimension(format!(
                "channel input must be a single mode, got {}",
                gamma_in.n_modes()
            )));
        }
        let (physical, margin) = gamma_in.is_physical(1e-9);
        if !physical {
            return Err(Error::State(format!(
                "channel input is not physical (eigenvalue margin {margin:e})"
            )));
        }
        let g = gamma_in.entries().fixed_view::<2, 2>(0, 0).into_owned();
        let m = self.t22 + g;
        let det = m[(0, 0)] * m[(1, 1)] - m[(0, 1)] * m[(1, 0)];
        if det.abs() < SINGULAR_TOL {
            return Err(Error::Numerical(format!(
                "Gamma~_22 + gamma is singular (det {det:e})"
            )));
        }
        let m_inv = Matrix2::new(m[(1, 1)], -m[(0, 1)], -m[(1, 0)], m[(0, 0)]) / det;
        let out = self.t11 - self.t12 * m_inv * self.t12.transpose();
        // Exact symmetry can be lost to rounding in the triple product.
        let out = DMatrix::from_row_slice(
            2,
            2,
            &[
                out[(0, 0)],
                (out[(0, 1)] + out[(1, 0)]) / 2.0,
                (out[(0, 1)] + out[(1, 0)]) / 2.0,
                out[(1, 1)],
            ],
        );
        let out = CovarianceMatrix::new(1, out)?;
        let (physical, margin) = out.is_physical(1e-9);
        if !physical {
            return Err(Error::Numerical(format!(
                "channel output failed the physicality check (margin {margin:e})"
            )));
        }
        Ok(out)
    }
}

/// Closed form for a coherent-state input (identity CM):
/// (p^2 + (1 - p^2) cosh 2r) I. Identity at p = 1, full thermalization
/// cosh(2r) I at p = 0.
pub fn coherent_output(params: GiParams) -> CovarianceMatrix {
    let p_sq = params.p() * params.p();
    let v = p_sq + (1.0 - p_sq) * (2.0 * params.r()).cosh();
    CovarianceMatrix::new(1, DMatrix::identity(2, 2) * v)
        .expect("scaled identity is a valid covariance matrix")
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;

    fn at(r: f64, p: f64) -> GiParams {
        GiParams::new(r, p).unwrap()
    }

    fn single_mode(v: f64) -> CovarianceMatrix {
        CovarianceMatrix::new(1, DMatrix::identity(2, 2) * v).unwrap()
    }

    fn max_diff(a: &CovarianceMatrix, b: &CovarianceMatrix) -> f64 {
        (a.entries() - b.entries()).amax()
    }

    #[test]
    fn blocks_come_from_the_partial_transpose() {
        let ch = ChoiChannel::from_params(at(0.7, 0.3));
        let cosh = 1.4_f64.cosh();
        let c = 0.3 * 1.4_f64.sinh();
        for i in 0..2 {
            assert_abs_diff_eq!(ch.t11[(i, i)], cosh, epsilon = 1e-15);
            assert_abs_diff_eq!(ch.t22[(i, i)], cosh, epsilon = 1e-15);
            // PT flips the p-p correlation, making the block a multiple of I.
            assert_abs_diff_eq!(ch.t12[(i, i)], c, epsilon = 1e-15);
        }
        assert_eq!(ch.t12[(0, 1)], 0.0);
        assert_eq!(ch.choi_state(), &states::gamma_gi(at(0.7, 0.3)));
    }

    #[test]
    fn coherent_input_matches_closed_form() {
        let out = ChoiChannel::from_params(at(1.0, 0.5)).apply(&single_mode(1.0)).unwrap();
        assert_abs_diff_eq!(out.entries()[(0, 0)], 3.0716467683127236, epsilon = 1e-13);
        assert_abs_diff_eq!(out.entries()[(1, 1)], 3.0716467683127236, epsilon = 1e-13);
        assert!(out.entries()[(0, 1)].abs() < 1e-15);
        assert!(max_diff(&out, &coherent_output(at(1.0, 0.5))) < 1e-12);
    }

    #[test]
    fn endpoints_are_identity_and_thermalization() {
        let id_out = ChoiChannel::from_params(at(1.0, 1.0)).apply(&single_mode(1.0)).unwrap();
        assert!(max_diff(&id_out, &single_mode(1.0)) < 1e-12);

        let th_out = ChoiChannel::from_params(at(1.0, 0.0)).apply(&single_mode(1.0)).unwrap();
        assert!(max_diff(&th_out, &single_mode(2.0_f64.cosh())) < 1e-12);
    }

    #[test]
    fn thermal_input_can_come_out_less_noisy() {
        // Mean occupation 2 -> CM 5 I; at r=0.1, p=1 the output drops to ~1.013.
        let out = ChoiChannel::from_params(at(0.1, 1.0)).apply(&single_mode(5.0)).unwrap();
        assert_abs_diff_eq!(out.entries()[(0, 0)], 1.0133332445859314, epsilon = 1e-12);
        assert!(out.entries()[(0, 0)] < 5.0);
    }

    #[test]
    fn output_is_physical_for_squeezed_input() {
        let g = CovarianceMatrix::new(
            1,
            DMatrix::from_row_slice(2, 2, &[3.0 * 1.0_f64.exp(), 0.0, 0.0, 3.0 * (-1.0_f64).exp()]),
        )
        .unwrap();
        let out = ChoiChannel::from_params(at(0.9, 0.6)).apply(&g).unwrap();
        assert!(out.is_physical(1e-9).0);
    }

    #[test]
    fn rejects_bad_inputs() {
        let chl = ChoiChannel::from_params(at(1.0, 0.5));
        assert!(matches!(
            chl.apply(&states::gamma_gi(at(1.0, 0.5))),
            Err(Error::Dimension(_))
        ));
        assert!(matches!(chl.apply(&single_mode(0.5)), Err(Error::State(_))));
        assert!(matches!(
            ChoiChannel::new(single_mode(1.0)),
            Err(Error::Dimension(_))
        ));
        assert!(matches!(
            ChoiChannel::new(
                CovarianceMatrix::new(2, DMatrix::identity(4, 4) * 0.5).unwrap()
            ),
            Err(Error::State(_))
        ));
    }
}
