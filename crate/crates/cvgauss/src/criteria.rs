//! Entanglement, steering, and realignment tests with quantitative margins.
//!
//! All three criteria reduce to closed forms in (r, p) for this family:
//!
//! * PPT: entangled iff p > tanh r, equivalently iff the partial transpose's
//!   smallest symplectic eigenvalue nu_tilde = cosh 2r - p sinh 2r drops
//!   below 1. Necessary and sufficient here.
//! * Steering (either direction, the state is symmetric): the matrix test
//!   gamma + i(0_A + Omega_B) >= 0 reduces by a Schur complement to
//!   nu^2 >= cosh 2r, so the state is steerable iff p exceeds
//!   1/sqrt(1 + 1/cosh 2r).
//! * CCNR / realignment: the realigned trace norm is 1/(2 nu_tilde);
//!   detection (norm > 1) happens iff p > (cosh 2r - 1/2)/sinh 2r, which
//!   equals (coth r + 3 tanh r)/4. Mind the grouping: the superficially
//!   similar reading "coth(r)/4 + 3 tanh r" exceeds 1 for every r > 0 and
//!   would never detect anything.
//!
//! Boundary convention: a margin within +-1e-12 of the threshold classifies
//! as NOT entangled / NOT steerable / NOT detected, matching the non-strict
//! separability inequalities.

use crate::states::{self, GiParams};
use crate::symplectic::{self, CovarianceMatrix};

/// Margins within this band of a threshold count as the separable side.
const BOUNDARY_TOL: f64 = 1e-12;

/// Eigenvalue slack for the steering matrix test, mirroring
/// [`CovarianceMatrix::is_physical`].
const MATRIX_TOL: f64 = 1e-9;

/// All three criteria at one point of the family.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CriteriaReport {
    pub ppt_entangled: bool,
    /// tanh r - p; negative inside the entangled region (for r > 0).
    pub ppt_margin: f64,
    pub steerable: bool,
    /// Mixing probability beyond which the state is steerable, 1/sqrt(1 + 1/cosh 2r).
    pub steering_threshold: f64,
    pub ccnr_detects: bool,
    /// Trace norm of the realigned density matrix, 1/(2 nu_tilde).
    pub realigned_norm: f64,
}

pub fn report(params: GiParams) -> CriteriaReport {
    let (ppt_entangled, ppt_margin) = ppt(params);
    let (steerable, steering_threshold) = steerable(params);
    let (ccnr_detects, realigned_norm) = ccnr(params);
    CriteriaReport {
        ppt_entangled,
        ppt_margin,
        steerable,
        steering_threshold,
        ccnr_detects,
        realigned_norm,
    }
}

/// PPT test. Returns (entangled, tanh r - p).
///
/// The verdict is taken from 1 - nu_tilde, which is exact at r = 0 where the
/// state is a product of vacua for every p; the margin in tanh-r form is
/// reported alongside. The two forms are related by
/// 1 - nu_tilde = sinh(2r) (p - tanh r) and are cross-checked on every call.
pub fn ppt(params: GiParams) -> (bool, f64) {
    let pr = states::properties(params);
    let sh = (2.0 * params.r()).sinh();
    let margin = params.r().tanh() - params.p();
    let gap = 1.0 - pr.nu_tilde;
    let residual = (gap + sh * margin).abs();
    assert!(
        residual <= 1e-12 * (2.0 * params.r()).cosh().max(1.0),
        "PPT margin forms disagree at r={}, p={}: residual {residual}",
        params.r(),
        params.p()
    );
    (gap > BOUNDARY_TOL, margin)
}

/// Mixing probability above which gamma_gi(r, p) is steerable.
pub fn steering_threshold(r: f64) -> f64 {
    1.0 / (1.0 + 1.0 / (2.0 * r).cosh()).sqrt()
}

/// Steering test (A steers B; B steers A coincides by symmetry).
/// Returns (steerable, threshold).
///
/// The verdict comes from the Schur-reduced form nu^2 < cosh 2r, which is
/// exact at r = 0 where the closed threshold alone would be misleading
/// (it tends to 1/sqrt(2) < 1 although a product state steers nothing).
/// The defining matrix test is evaluated on every call and the two verdicts
/// are asserted to agree away from the threshold.
pub fn steerable(params: GiParams) -> (bool, f64) {
    let ch = (2.0 * params.r()).cosh();
    let sh = (2.0 * params.r()).sinh();
    let p = params.p();
    let threshold = steering_threshold(params.r());
    let nu_sq = ch * ch - p * p * sh * sh;
    let verdict = ch - nu_sq > BOUNDARY_TOL;

    let (matrix_verdict, _) = steering_matrix_test(&states::gamma_gi(params));
    // The matrix test's -1e-9 eigenvalue slack shifts its flip point by
    // about 1e-9 cosh 2r / (2p (cosh 2r - 1)); only assert outside that band.
    let window = 1e-7 + 1e-8 * ch / (ch - 1.0);
    if (p - threshold).abs() > window {
        assert_eq!(
            verdict,
            matrix_verdict,
            "steering forms disagree at r={}, p={} (threshold {threshold})",
            params.r(),
            p
        );
    }
    (verdict, threshold)
}

/// The defining steering test on a two-mode CM: gamma + i(0_A + Omega_B) is
/// positive semidefinite exactly when A cannot steer B. Returns
/// (steerable, margin) with margin the minimum eigenvalue of that Hermitian
/// matrix; steerable means margin < -1e-9.
pub fn steering_matrix_test(gamma: &CovarianceMatrix) -> (bool, f64) {
    assert_eq!(gamma.n_modes(), 2, "steering test is defined for two modes");
    let mut half_omega = nalgebra::DMatrix::zeros(4, 4);
    half_omega[(2, 3)] = 1.0;
    half_omega[(3, 2)] = -1.0;
    let margin = symplectic::min_eigenvalue_hermitian(gamma.entries(), &half_omega);
    (margin < -MATRIX_TOL, margin)
}

/// Detection threshold of the realignment criterion,
/// (cosh 2r - 1/2)/sinh 2r = (coth r + 3 tanh r)/4; +infinity at r = 0,
/// where the norm is 1/2 regardless of p.
pub fn ccnr_threshold(r: f64) -> f64 {
    let sh = (2.0 * r).sinh();
    if sh == 0.0 {
        return f64::INFINITY;
    }
    ((2.0 * r).cosh() - 0.5) / sh
}

/// Realignment (CCNR) test. Returns (detects, trace norm 1/(2 nu_tilde)).
pub fn ccnr(params: GiParams) -> (bool, f64) {
    let pr = states::properties(params);
    let norm = 1.0 / (2.0 * pr.nu_tilde);
    (norm - 1.0 > BOUNDARY_TOL, norm)
}
