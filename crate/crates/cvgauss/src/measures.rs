//! Correlation measures: entanglement of formation, Gaussian quantum
//! discord, and mutual information, all in nats.
//!
//! The closed EOF form below is the symmetric-state expression and applies
//! because gamma_gi always has equal diagonal blocks (a = b); it is not the
//! general two-mode formula. The discord is the Gaussian discord: the
//! measurement optimization is restricted to Gaussian measurements by
//! definition of the measure, not as a configuration choice.

use crate::states::{self, entropy_f, GiParams};

/// EOF's x = 1 guard and the half-mutual-information comparison both treat
/// values within 1e-12 of the boundary as the degenerate side.
const BOUNDARY_TOL: f64 = 1e-12;

/// The three measures and the auxiliary EOF variable at one point.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MeasureReport {
    pub eof: f64,
    pub discord: f64,
    pub mutual_information: f64,
    /// min(1, nu_tilde); the EOF vanishes exactly when x = 1.
    pub x: f64,
}

pub fn report(params: GiParams) -> MeasureReport {
    MeasureReport {
        eof: eof(params),
        discord: gaussian_discord(params),
        mutual_information: mutual_information(params),
        x: states::properties(params).nu_tilde.min(1.0),
    }
}

/// Entanglement of formation. With x = min(1, nu_tilde) and
/// g(y) = (1 + y)^2 / 4x evaluated at y = +-x:
///
/// ```text
/// E_F = g(x) ln g(x) - g(-x) ln g(-x)
/// ```
///
/// Returns exactly 0 for x = 1 (separable states), guarding the 0 ln 0 limit
/// at |1 - x| < 1e-12.
pub fn eof(params: GiParams) -> f64 {
    let x = states::properties(params).nu_tilde.min(1.0);
    if 1.0 - x < BOUNDARY_TOL {
        return 0.0;
    }
    let g_plus = (1.0 + x) * (1.0 + x) / (4.0 * x);
    let g_minus = (1.0 - x) * (1.0 - x) / (4.0 * x);
    g_plus * g_plus.ln() - g_minus * g_minus.ln()
}

/// Gaussian quantum discord,
///
/// ```text
/// D_G = f(cosh 2r) + f(p^2 + (1 - p^2) cosh 2r) - 2 f(nu)
/// ```
///
/// Zero exactly on the r = 0 and p = 0 boundaries; tiny negative rounding
/// residues (below 1e-12) are clamped to 0 so the measure's nonnegativity
/// survives the two cancelling f-terms at p = 0.
pub fn gaussian_discord(params: GiParams) -> f64 {
    let pr = states::properties(params);
    let ch = (2.0 * params.r()).cosh();
    let p_sq = params.p() * params.p();
    let d = entropy_f(ch) + entropy_f(p_sq + (1.0 - p_sq) * ch) - 2.0 * entropy_f(pr.nu);
    if d < 0.0 && d > -BOUNDARY_TOL {
        return 0.0;
    }
    d
}

/// Mutual information I_M = S_A + S_B - S = 2 f(cosh 2r) - 2 f(nu).
/// Clamped to 0 against rounding residue at the product-state boundary.
pub fn mutual_information(params: GiParams) -> f64 {
    let pr = states::properties(params);
    let ch = (2.0 * params.r()).cosh();
    let i_m = 2.0 * (entropy_f(ch) - entropy_f(pr.nu));
    if i_m < 0.0 && i_m > -BOUNDARY_TOL {
        return 0.0;
    }
    i_m
}

/// True iff the EOF strictly exceeds half the mutual information. Equality
/// within 1e-12 (exact at the pure endpoint p = 1, where both sides are the
/// local entropy) classifies as false.
pub fn eof_exceeds_half_mi(params: GiParams) -> bool {
    eof(params) > mutual_information(params) / 2.0 + BOUNDARY_TOL
}
