//! Constructors for the three state families and their scalar properties.
//!
//! The family interpolates between a two-mode squeezed vacuum (p = 1) and a
//! product of two identical thermal modes (p = 0) that carries the same
//! local statistics; the reduced state of either mode is cosh(2r)/2 * I in
//! natural units for every p.

use crate::symplectic::{CovarianceMatrix, TwoModeStandardForm};
use crate::{Error, Result};

/// Squeezing r >= 0 and mixing probability p in [0, 1].
///
/// Construction validates both ranges; negative r is rejected rather than
/// folded by |r| since that would silently flip the sign convention of the
/// off-diagonal correlations.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GiParams {
    r: f64,
    p: f64,
}

impl GiParams {
    pub fn new(r: f64, p: f64) -> Result<Self> {
        if !(r >= 0.0 && r.is_finite()) {
            return Err(Error::Domain(format!(
                "squeezing parameter r must be finite and >= 0, got {r}"
            )));
        }
        if !(0.0..=1.0).contains(&p) {
            return Err(Error::Domain(format!(
                "mixing probability p must lie in [0, 1], got {p}"
            )));
        }
        Ok(Self { r, p })
    }

    pub fn r(self) -> f64 {
        self.r
    }

    pub fn p(self) -> f64 {
        self.p
    }
}

/// Two-mode squeezed vacuum: a = b = cosh 2r, c1 = -c2 = sinh 2r. Pure.
pub fn gamma_tms(r: f64) -> Result<CovarianceMatrix> {
    let params = GiParams::new(r, 1.0)?;
    Ok(gamma_gi(params))
}

/// Two identical thermal modes with mean occupation sinh^2 r: cosh(2r) * I.
pub fn gamma_tmt(r: f64) -> Result<CovarianceMatrix> {
    let params = GiParams::new(r, 0.0)?;
    Ok(gamma_gi(params))
}

/// The mixture CM p * gamma_tms(r) + (1 - p) * gamma_tmt(r): diagonal
/// cosh 2r, off-diagonal block diag(p sinh 2r, -p sinh 2r).
pub fn gamma_gi(params: GiParams) -> CovarianceMatrix {
    let ch = (2.0 * params.r).cosh();
    let c = params.p * (2.0 * params.r).sinh();
    TwoModeStandardForm { a: ch, b: ch, c1: c, c2: -c }.to_matrix()
}

/// Single-mode entropy contribution of a symplectic eigenvalue, in nats:
///
/// ```text
/// f(nu) = (nu+1)/2 ln((nu+1)/2) - (nu-1)/2 ln((nu-1)/2)
/// ```
///
/// The whole expression has a removable zero at nu = 1; values within 1e-12
/// of it (including eigenvalues that round to just below 1) collapse to an
/// exact 0 so pure states report entropy 0 rather than rounding noise.
pub fn entropy_f(nu: f64) -> f64 {
    if nu - 1.0 < 1e-12 {
        return 0.0;
    }
    let hi = (nu + 1.0) / 2.0;
    let lo = (nu - 1.0) / 2.0;
    hi * hi.ln() - lo * lo.ln()
}

/// Scalar properties of gamma_gi(r, p). All entropies are in nats.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct StateProperties {
    /// Doubly degenerate symplectic eigenvalue sqrt(cosh^2 2r - p^2 sinh^2 2r).
    pub nu: f64,
    /// Smallest symplectic eigenvalue of the partial transpose, cosh 2r - p sinh 2r.
    pub nu_tilde: f64,
    /// 1 / nu^2.
    pub purity: f64,
    /// Von Neumann entropy 2 f(nu).
    pub von_neumann: f64,
    /// Entropy of either reduced mode, f(cosh 2r); independent of p.
    pub local_entropy: f64,
}

impl StateProperties {
    /// Renyi entropy of order alpha > 0:
    ///
    /// ```text
    /// S_alpha = 2 ln[((nu+1)/2)^alpha - ((nu-1)/2)^alpha] / (alpha - 1)
    /// ```
    ///
    /// alpha = 1 is routed to the von Neumann value (its continuous limit);
    /// alpha = 2 reduces to 2 ln nu = -ln Tr[rho^2].
    pub fn renyi(&self, alpha: f64) -> Result<f64> {
        if !(alpha > 0.0) {
            return Err(Error::Domain(format!(
                "Renyi order alpha must be > 0, got {alpha}"
            )));
        }
        if (alpha - 1.0).abs() < 1e-12 {
            return Ok(self.von_neumann);
        }
        let hi = (self.nu + 1.0) / 2.0;
        let lo = ((self.nu - 1.0) / 2.0).max(0.0);
        let f_alpha = hi.powf(alpha) - lo.powf(alpha);
        Ok(2.0 * f_alpha.ln() / (alpha - 1.0))
    }
}

pub fn properties(params: GiParams) -> StateProperties {
    let ch = (2.0 * params.r).cosh();
    let sh = (2.0 * params.r).sinh();
    let nu = (ch * ch - params.p * params.p * sh * sh).sqrt();
    StateProperties {
        nu,
        nu_tilde: ch - params.p * sh,
        purity: 1.0 / (nu * nu),
        von_neumann: 2.0 * entropy_f(nu),
        local_entropy: entropy_f(ch),
    }
}
