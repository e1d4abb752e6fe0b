//! Truncated Fock-space engine: an independent numerical oracle for every
//! closed form in the crate.
//!
//! The density matrix of the isotropic state is recovered from its
//! coherent-basis matrix elements. Stripping the Gaussian envelope from
//! `coherent_element` leaves an entire generating function of the four
//! labels (u, v, w, z) = (mu*, nu*, kappa, tau),
//!
//! ```text
//! G = exp(A (uw + vz) + D (uv + wz)) / (C q)
//! A = 1 - 1/q,   D = p tanh(r) / q,
//! C = cosh^2 r,  q = C - p^2 sinh^2 r = C (1 - p^2 tanh^2 r)
//! ```
//!
//! whose Taylor coefficient at u^m v^n w^k z^l is exactly
//! rho[(m,n),(k,l)] / sqrt(m! n! k! l!). Expanding the two exponentials
//! gives the coefficient as a single sum of nonnegative terms (A, D >= 0 on
//! the whole parameter domain), so the summation is cancellation-free and
//! accurate to machine precision; every constructed operator is re-validated
//! by synthesizing `coherent_element` back at held-out label points.
//!
//! Cutoff rule: the per-mode thermal tail mass lambda^N / (1 - lambda) with
//! lambda = tanh^2 r must stay below 1e-8, which caps r at about 1.05 for
//! the default cutoff 40.

use std::io::{Read, Write};

use nalgebra::DMatrix;
use num_complex::Complex64;

use crate::states::GiParams;
use crate::symplectic::{self, CovarianceMatrix};
use crate::{Error, Result};

/// Hard cap on the per-mode dimension; the operator is dense N^2 x N^2.
pub const MAX_CUTOFF: usize = 64;

/// Maximum truncated single-mode tail mass lambda^N / (1 - lambda).
const TAIL_BOUND: f64 = 1e-8;

/// Absolute Hermiticity tolerance accepted by [`FockOperator::from_entries`].
const HERMITICITY_TOL: f64 = 1e-10;

/// Largest re-synthesis residual tolerated when validating a constructed
/// operator against `coherent_element`.
const RESYNTH_TOL: f64 = 1e-6;

/// Held-out coherent labels for re-synthesis validation, as
/// (Re mu, Im mu, Re nu, Im nu, Re kappa, Im kappa, Re tau, Im tau).
/// Moduli stay below 0.5 so the truncated series tail is negligible.
const HELD_OUT: [[f64; 8]; 3] = [
    [0.3, 0.1, 0.0, -0.2, 0.1, 0.0, 0.25, -0.15],
    [0.5, 0.0, 0.0, 0.5, -0.5, 0.0, 0.0, -0.5],
    [0.2, -0.4, 0.1, 0.3, -0.3, 0.2, 0.4, 0.0],
];

/// Dense two-mode operator on the truncated Fock space, indexed by
/// |m,n><k,l| at (m*N + n, k*N + l).
#[derive(Debug, Clone, PartialEq)]
pub struct FockOperator {
    cutoff: usize,
    entries: DMatrix<Complex64>,
}

/// Coherent-state labels of a matrix element <mu nu| rho |kappa tau>.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CoherentPoint {
    pub mu: Complex64,
    pub nu: Complex64,
    pub kappa: Complex64,
    pub tau: Complex64,
}

impl CoherentPoint {
    fn half_norm(&self) -> f64 {
        0.5 * (self.mu.norm_sqr() + self.nu.norm_sqr() + self.kappa.norm_sqr() + self.tau.norm_sqr())
    }
}

impl FockOperator {
    /// Wraps explicit entries after checking the cutoff range, the
    /// N^2 x N^2 dimensions, and Hermiticity to 1e-10.
    pub fn from_entries(cutoff: usize, entries: DMatrix<Complex64>) -> Result<Self> {
        check_cutoff_range(cutoff)?;
        let dim = cutoff * cutoff;
        if entries.nrows() != dim || entries.ncols() != dim {
            return Err(Error::Dimension(format!(
                "cutoff {cutoff} needs a {dim}x{dim} matrix, got {}x{}",
                entries.nrows(),
                entries.ncols()
            )));
        }
        for i in 0..dim {
            for j in i..dim {
                let dev = (entries[(i, j)] - entries[(j, i)].conj()).norm();
                if dev > HERMITICITY_TOL {
                    return Err(Error::Shape(format!(
                        "not Hermitian at ({i},{j}): deviation {dev:e}"
                    )));
                }
            }
        }
        Ok(Self { cutoff, entries })
    }

    /// Per-mode dimension N.
    pub fn cutoff(&self) -> usize {
        self.cutoff
    }

    pub fn entries(&self) -> &DMatrix<Complex64> {
        &self.entries
    }

    /// <m,n| rho |k,l>.
    pub fn element(&self, m: usize, n: usize, k: usize, l: usize) -> Complex64 {
        let nn = self.cutoff;
        self.entries[(m * nn + n, k * nn + l)]
    }

    /// Trace; real because the operator is Hermitian.
    pub fn trace(&self) -> f64 {
        (0..self.entries.nrows()).map(|i| self.entries[(i, i)].re).sum()
    }

    /// Tr[rho^2] = sum of squared entry moduli, by Hermiticity.
    pub fn purity(&self) -> f64 {
        self.entries.iter().map(|z| z.norm_sqr()).sum()
    }

    /// Convex combination weight * a + (1 - weight) * b.
    pub fn mix(a: &Self, b: &Self, weight: f64) -> Result<Self> {
        if !(0.0..=1.0).contains(&weight) {
            return Err(Error::Domain(format!(
                "mixture weight must lie in [0, 1], got {weight}"
            )));
        }
        if a.cutoff != b.cutoff {
            return Err(Error::Dimension(format!(
                "mixture cutoffs differ: {} vs {}",
                a.cutoff, b.cutoff
            )));
        }
        Ok(Self {
            cutoff: a.cutoff,
            entries: &a.entries * Complex64::new(weight, 0.0)
                + &b.entries * Complex64::new(1.0 - weight, 0.0),
        })
    }

    /// Element-wise partial transpose of mode B:
    /// pt[(m,n),(k,l)] = rho[(m,l),(k,n)]. Hermitian whenever rho is.
    pub fn partial_transpose_b(&self) -> Self {
        let nn = self.cutoff;
        let mut entries = DMatrix::from_element(nn * nn, nn * nn, Complex64::new(0.0, 0.0));
        for m in 0..nn {
            for n in 0..nn {
                for k in 0..nn {
                    for l in 0..nn {
                        entries[(m * nn + n, k * nn + l)] = self.entries[(m * nn + l, k * nn + n)];
                    }
                }
            }
        }
        Self { cutoff: nn, entries }
    }

    /// Minimum eigenvalue of the (Hermitian) operator.
    ///
    /// Entries with imaginary parts at numerical zero (max |Im| <= 1e-12,
    /// the case for this entire state family) take the real symmetric path;
    /// otherwise the Hermitian problem is embedded as a doubled real
    /// symmetric one.
    pub fn min_eigenvalue(&self) -> f64 {
        let dim = self.entries.nrows();
        let max_imag = self.entries.iter().map(|z| z.im.abs()).fold(0.0, f64::max);
        if max_imag <= 1e-12 {
            let re = DMatrix::from_fn(dim, dim, |i, j| {
                (self.entries[(i, j)].re + self.entries[(j, i)].re) / 2.0
            });
            return re.symmetric_eigenvalues().iter().copied().fold(f64::INFINITY, f64::min);
        }
        let sym = DMatrix::from_fn(dim, dim, |i, j| {
            (self.entries[(i, j)].re + self.entries[(j, i)].re) / 2.0
        });
        let antisym = DMatrix::from_fn(dim, dim, |i, j| {
            (self.entries[(i, j)].im - self.entries[(j, i)].im) / 2.0
        });
        symplectic::min_eigenvalue_hermitian(&sym, &antisym)
    }

    /// Binary dump: u64 LE cutoff, u64 LE mode count (2), then row-major
    /// (Re, Im) f64 LE pairs. Wrap the writer in a buffer for large cutoffs.
    pub fn dump<W: Write>(&self, mut w: W) -> Result<()> {
        w.write_all(&(self.cutoff as u64).to_le_bytes())?;
        w.write_all(&2u64.to_le_bytes())?;
        for i in 0..self.entries.nrows() {
            for j in 0..self.entries.ncols() {
                let z = self.entries[(i, j)];
                let mut buf = [0u8; 16];
                buf[..8].copy_from_slice(&z.re.to_le_bytes());
                buf[8..].copy_from_slice(&z.im.to_le_bytes());
                w.write_all(&buf)?;
            }
        }
        Ok(())
    }

    /// Reads a [`dump`](Self::dump) stream back, re-validating the header
    /// and Hermiticity.
    pub fn load<R: Read>(mut r: R) -> Result<Self> {
        let mut word = [0u8; 8];
        r.read_exact(&mut word)?;
        let cutoff = u64::from_le_bytes(word);
        if cutoff < 1 || cutoff > MAX_CUTOFF as u64 {
            return Err(Error::Dimension(format!(
                "dump header cutoff {cutoff} outside 1..={MAX_CUTOFF}"
            )));
        }
        r.read_exact(&mut word)?;
        let n_modes = u64::from_le_bytes(word);
        if n_modes != 2 {
            return Err(Error::Shape(format!(
                "dump header declares {n_modes} modes, expected 2"
            )));
        }
        let cutoff = cutoff as usize;
        let dim = cutoff * cutoff;
        let mut entries = DMatrix::from_element(dim, dim, Complex64::new(0.0, 0.0));
        let mut buf = [0u8; 16];
        for i in 0..dim {
            for j in 0..dim {
                r.read_exact(&mut buf)?;
                entries[(i, j)] = Complex64::new(
                    f64::from_le_bytes(buf[..8].try_into().unwrap()),
                    f64::from_le_bytes(buf[8..].try_into().unwrap()),
                );
            }
        }
        Self::from_entries(cutoff, entries)
    }
}

fn check_cutoff_range(cutoff: usize) -> Result<()> {
    if cutoff < 1 || cutoff > MAX_CUTOFF {
        return Err(Error::Dimension(format!(
            "cutoff must lie in 1..={MAX_CUTOFF}, got {cutoff}"
        )));
    }
    Ok(())
}

/// Tail rule shared by every constructor.
fn check_cutoff(r: f64, cutoff: usize) -> Result<()> {
    check_cutoff_range(cutoff)?;
    let lambda = r.tanh() * r.tanh();
    let tail = lambda.powi(cutoff as i32) / (1.0 - lambda);
    if !(tail < TAIL_BOUND) {
        return Err(Error::Tail(format!(
            "thermal tail mass {tail:.3e} at cutoff {cutoff} (r = {r}) is not below {TAIL_BOUND:.0e}; raise the cutoff or lower r"
        )));
    }
    Ok(())
}

/// Characteristic function chi(alpha, beta) = Tr[rho D_A(alpha) D_B(beta)]:
///
/// ```text
/// exp(-(|alpha|^2 + |beta|^2) cosh(2r)/2 + p Re(alpha beta) sinh 2r)
/// ```
///
/// Real and positive for this family.
pub fn chi(params: GiParams, alpha: Complex64, beta: Complex64) -> f64 {
    let ch = (2.0 * params.r()).cosh();
    let sh = (2.0 * params.r()).sinh();
    (-0.5 * (alpha.norm_sqr() + beta.norm_sqr()) * ch + params.p() * (alpha * beta).re * sh).exp()
}

/// Closed form of <mu nu| rho |kappa tau>:
///
/// ```text
/// exp[-(|mu|^2+|nu|^2+|kappa|^2+|tau|^2)/2 + mu* kappa + nu* tau
///     - mu* kappa / C - (nu* - p t kappa)(tau - p t mu*) / q] / (C q)
/// ```
///
/// with C = cosh^2 r, t = tanh r, q = C - p^2 sinh^2 r. At p = 0 this
/// factorizes into two single-mode thermal elements; at p = 1 it is the
/// two-mode squeezed vacuum projector's element.
pub fn coherent_element(params: GiParams, pt: &CoherentPoint) -> Complex64 {
    let r = params.r();
    let p = params.p();
    let c = r.cosh() * r.cosh();
    let q = c - p * p * r.sinh() * r.sinh();
    let pt_scale = p * r.tanh();
    let u = pt.mu.conj();
    let v = pt.nu.conj();
    let w = pt.kappa;
    let z = pt.tau;
    let exponent =
        u * w + v * z - u * w / c - (v - w * pt_scale) * (z - u * pt_scale) / q - pt.half_norm();
    exponent.exp() / (c * q)
}

/// Product of two identical truncated thermal modes:
/// diagonal (1 - lambda)^2 lambda^(m+n), lambda = tanh^2 r.
pub fn fock_tmt(r: f64, cutoff: usize) -> Result<FockOperator> {
    GiParams::new(r, 0.0)?;
    check_cutoff(r, cutoff)?;
    let lambda = r.tanh() * r.tanh();
    let norm = (1.0 - lambda) * (1.0 - lambda);
    let dim = cutoff * cutoff;
    let mut entries = DMatrix::from_element(dim, dim, Complex64::new(0.0, 0.0));
    for m in 0..cutoff {
        for n in 0..cutoff {
            let i = m * cutoff + n;
            entries[(i, i)] = Complex64::new(norm * lambda.powi((m + n) as i32), 0.0);
        }
    }
    Ok(FockOperator { cutoff, entries })
}

/// Truncated two-mode squeezed vacuum projector:
/// (1 - lambda) tanh(r)^(m+n) at |m,m><n,n|.
pub fn fock_tms(r: f64, cutoff: usize) -> Result<FockOperator> {
    GiParams::new(r, 1.0)?;
    check_cutoff(r, cutoff)?;
    let t = r.tanh();
    let norm = 1.0 - t * t;
    let dim = cutoff * cutoff;
    let mut entries = DMatrix::from_element(dim, dim, Complex64::new(0.0, 0.0));
    for m in 0..cutoff {
        for n in 0..cutoff {
            entries[(m * cutoff + m, n * cutoff + n)] =
                Complex64::new(norm * t.powi((m + n) as i32), 0.0);
        }
    }
    Ok(FockOperator { cutoff, entries })
}

/// Truncated density matrix of the isotropic state, by cancellation-free
/// summation of the generating-function coefficients (module docs). The
/// selection rule m - k = n - l makes everything off the diagonal bands
/// exactly zero, and every entry is real and nonnegative.
///
/// # Errors
///
/// `Tail` if the cutoff is too small for r; `Extraction` if re-synthesis of
/// `coherent_element` at held-out points misses by more than 1e-6.
pub fn fock_gi(params: GiParams, cutoff: usize) -> Result<FockOperator> {
    check_cutoff(params.r(), cutoff)?;
    let r = params.r();
    let p = params.p();
    let c = r.cosh() * r.cosh();
    let q = c - p * p * r.sinh() * r.sinh();
    let a = 1.0 - 1.0 / q;
    let d = p * r.tanh() / q;
    let pref = 1.0 / (c * q);

    // ca[i] = a^i / i!, cd[i] = d^i / i!, sf[i] = sqrt(i!).
    let n = cutoff;
    let mut ca = vec![0.0; n];
    let mut cd = vec![0.0; 2 * n];
    let mut sf = vec![0.0; n];
    ca[0] = 1.0;
    cd[0] = 1.0;
    sf[0] = 1.0;
    for i in 1..n {
        ca[i] = ca[i - 1] * a / i as f64;
        sf[i] = sf[i - 1] * (i as f64).sqrt();
    }
    for i in 1..2 * n {
        cd[i] = cd[i - 1] * d / i as f64;
    }

    let dim = n * n;
    let mut entries = DMatrix::from_element(dim, dim, Complex64::new(0.0, 0.0));
    for m in 0..n {
        for k in 0..=m {
            let s = m - k;
            for row_n in s..n {
                let l = row_n - s;
                let mut acc = 0.0;
                for dd in 0..=k.min(l) {
                    acc += ca[k - dd] * ca[l - dd] * cd[dd + s] * cd[dd];
                }
                let value = Complex64::new(pref * sf[m] * sf[row_n] * sf[k] * sf[l] * acc, 0.0);
                entries[(m * n + row_n, k * n + l)] = value;
                entries[(k * n + l, m * n + row_n)] = value;
            }
        }
    }
    let op = FockOperator { cutoff, entries };
    validate_resynthesis(params, &op)?;
    Ok(op)
}

/// Synthesizes <mu nu| rho |kappa tau> from the truncated entries.
fn synthesize(op: &FockOperator, pt: &CoherentPoint) -> Complex64 {
    let n = op.cutoff;
    let scaled_powers = |x: Complex64| {
        let mut out = vec![Complex64::new(1.0, 0.0); n];
        for i in 1..n {
            out[i] = out[i - 1] * x / (i as f64).sqrt();
        }
        out
    };
    let up = scaled_powers(pt.mu.conj());
    let vp = scaled_powers(pt.nu.conj());
    let wp = scaled_powers(pt.kappa);
    let zp = scaled_powers(pt.tau);
    let mut total = Complex64::new(0.0, 0.0);
    for m in 0..n {
        for row_n in 0..n {
            let mut acc = Complex64::new(0.0, 0.0);
            for k in 0..n {
                for l in 0..n {
                    acc += op.entries[(m * n + row_n, k * n + l)] * wp[k] * zp[l];
                }
            }
            total += up[m] * vp[row_n] * acc;
        }
    }
    total * (-pt.half_norm()).exp()
}

fn validate_resynthesis(params: GiParams, op: &FockOperator) -> Result<()> {
    let mut worst = 0.0_f64;
    for c in HELD_OUT {
        let pt = CoherentPoint {
            mu: Complex64::new(c[0], c[1]),
            nu: Complex64::new(c[2], c[3]),
            kappa: Complex64::new(c[4], c[5]),
            tau: Complex64::new(c[6], c[7]),
        };
        let residual = (synthesize(op, &pt) - coherent_element(params, &pt)).norm();
        worst = worst.max(residual);
    }
    if worst > RESYNTH_TOL {
        return Err(Error::Extraction(format!(
            "re-synthesis residual {worst:.3e} exceeds {RESYNTH_TOL:.0e} at cutoff {}",
            op.cutoff
        )));
    }
    Ok(())
}

/// Second moments of a truncated two-mode state, contracted directly
/// against the one- and two-step bands of the ladder operators (the full
/// operator products are never materialized):
///
/// ```text
/// gamma_kl = <R_k R_l + R_l R_k> - 2 <R_k> <R_l>
/// ```
///
/// # Errors
///
/// `State` if the trace deviates from 1 by more than 1e-6.
pub fn cm_from_fock(op: &FockOperator) -> Result<CovarianceMatrix> {
    let trace = op.trace();
    if (trace - 1.0).abs() > 1e-6 {
        return Err(Error::State(format!(
            "operator trace {trace} is not 1 within 1e-6; not a truncated state"
        )));
    }
    let n = op.cutoff;
    let e = &op.entries;
    let idx = |m: usize, k: usize| m * n + k;

    let mut n1 = 0.0;
    let mut n2 = 0.0;
    for m in 0..n {
        for k in 0..n {
            let d = e[(idx(m, k), idx(m, k))].re;
            n1 += m as f64 * d;
            n2 += k as f64 * d;
        }
    }
    let zero = Complex64::new(0.0, 0.0);
    // <a1^2>, <a2^2>, <a1 a2>, <a1 a2^dag>, <a1>, <a2>
    let mut a1sq = zero;
    let mut a2sq = zero;
    let mut c12 = zero;
    let mut e12 = zero;
    let mut a1m = zero;
    let mut a2m = zero;
    for m in 0..n {
        for k in 0..n {
            let mf = m as f64;
            let kf = k as f64;
            if m >= 2 {
                a1sq += e[(idx(m - 2, k), idx(m, k))] * (mf * (mf - 1.0)).sqrt();
            }
            if k >= 2 {
                a2sq += e[(idx(m, k - 2), idx(m, k))] * (kf * (kf - 1.0)).sqrt();
            }
            if m >= 1 && k >= 1 {
                c12 += e[(idx(m - 1, k - 1), idx(m, k))] * (mf * kf).sqrt();
            }
            if m >= 1 && k + 1 < n {
                e12 += e[(idx(m - 1, k + 1), idx(m, k))] * (mf * (kf + 1.0)).sqrt();
            }
            if m >= 1 {
                a1m += e[(idx(m - 1, k), idx(m, k))] * mf.sqrt();
            }
            if k >= 1 {
                a2m += e[(idx(m, k - 1), idx(m, k))] * kf.sqrt();
            }
        }
    }

    let mut g = DMatrix::zeros(4, 4);
    g[(0, 0)] = 2.0 * a1sq.re + 1.0 + 2.0 * n1;
    g[(1, 1)] = -2.0 * a1sq.re + 1.0 + 2.0 * n1;
    g[(0, 1)] = 2.0 * a1sq.im;
    g[(2, 2)] = 2.0 * a2sq.re + 1.0 + 2.0 * n2;
    g[(3, 3)] = -2.0 * a2sq.re + 1.0 + 2.0 * n2;
    g[(2, 3)] = 2.0 * a2sq.im;
    g[(0, 2)] = 2.0 * (c12.re + e12.re);
    g[(1, 3)] = 2.0 * (e12.re - c12.re);
    g[(0, 3)] = 2.0 * (c12.im - e12.im);
    g[(1, 2)] = 2.0 * (c12.im + e12.im);
    for i in 0..4 {
        for j in (i + 1)..4 {
            g[(j, i)] = g[(i, j)];
        }
    }
    // Subtract 2 <R><R>^T; identically zero for the zero-displacement family,
    // kept so the moments match their definition for any loaded operator.
    let rbar = [
        std::f64::consts::SQRT_2 * a1m.re,
        std::f64::consts::SQRT_2 * a1m.im,
        std::f64::consts::SQRT_2 * a2m.re,
        std::f64::consts::SQRT_2 * a2m.im,
    ];
    for i in 0..4 {
        for j in 0..4 {
            g[(i, j)] -= 2.0 * rbar[i] * rbar[j];
        }
    }
    CovarianceMatrix::new(2, g)
}

/// Minimum eigenvalue of the partial transpose of the truncated isotropic
/// state; strictly negative values witness entanglement.
pub fn negativity_oracle(params: GiParams, cutoff: usize) -> Result<f64> {
    Ok(fock_gi(params, cutoff)?.partial_transpose_b().min_eigenvalue())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::states;
    use approx::assert_abs_diff_eq;

    fn at(r: f64, p: f64) -> GiParams {
        GiParams::new(r, p).unwrap()
    }

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    fn max_entry_diff(a: &FockOperator, b: &FockOperator) -> f64 {
        (a.entries() - b.entries()).iter().map(|z| z.norm()).fold(0.0, f64::max)
    }

    #[test]
    fn coherent_element_at_the_origin() {
        let v = coherent_element(at(1.0, 0.5), &CoherentPoint {
            mu: c(0.0, 0.0),
            nu: c(0.0, 0.0),
            kappa: c(0.0, 0.0),
            tau: c(0.0, 0.0),
        });
        assert_abs_diff_eq!(v.re, 0.20629212970164501, epsilon = 1e-15);
        assert_eq!(v.im, 0.0);
    }

    #[test]
    fn coherent_element_reference_value() {
        let pt = CoherentPoint {
            mu: c(0.3, 0.1),
            nu: c(0.0, -0.2),
            kappa: c(0.1, 0.0),
            tau: c(0.25, -0.15),
        };
        let v = coherent_element(at(1.0, 0.5), &pt);
        assert_abs_diff_eq!(v.re, 0.19062810690490349, epsilon = 1e-15);
        assert_abs_diff_eq!(v.im, 0.005485712342915007, epsilon = 1e-15);
    }

    #[test]
    fn coherent_element_is_hermitian() {
        for p in [0.0, 0.4, 1.0] {
            let params = at(0.9, p);
            let pt = CoherentPoint {
                mu: c(0.6, -0.3),
                nu: c(-0.2, 0.5),
                kappa: c(0.1, 0.8),
                tau: c(-0.7, -0.4),
            };
            let swapped = CoherentPoint { mu: pt.kappa, nu: pt.tau, kappa: pt.mu, tau: pt.nu };
            let lhs = coherent_element(params, &pt);
            let rhs = coherent_element(params, &swapped).conj();
            assert_abs_diff_eq!(lhs.re, rhs.re, epsilon = 1e-14);
            assert_abs_diff_eq!(lhs.im, rhs.im, epsilon = 1e-14);
        }
    }

    #[test]
    fn coherent_element_factorizes_at_p_zero() {
        let r = 0.9_f64;
        let lambda = r.tanh() * r.tanh();
        let thermal = |bra: Complex64, ket: Complex64| {
            (1.0 - lambda)
                * (Complex64::new(-0.5 * (bra.norm_sqr() + ket.norm_sqr()), 0.0)
                    + bra.conj() * ket * lambda)
                    .exp()
        };
        let pt = CoherentPoint { mu: c(0.6, -0.3), nu: c(-0.2, 0.5), kappa: c(0.1, 0.8), tau: c(-0.7, -0.4) };
        let whole = coherent_element(at(r, 0.0), &pt);
        let split = thermal(pt.mu, pt.kappa) * thermal(pt.nu, pt.tau);
        assert_abs_diff_eq!(whole.re, split.re, epsilon = 1e-14);
        assert_abs_diff_eq!(whole.im, split.im, epsilon = 1e-14);
    }

    #[test]
    fn chi_at_the_origin_is_one() {
        assert_eq!(chi(at(1.0, 0.5), c(0.0, 0.0), c(0.0, 0.0)), 1.0);
        // Correlated displacements raise chi above the uncorrelated value.
        let a = c(0.3, 0.0);
        let uncorr = chi(at(1.0, 0.0), a, a);
        let corr = chi(at(1.0, 1.0), a, a);
        assert!(corr > uncorr);
    }

    #[test]
    fn tail_rule_gates_the_cutoff() {
        assert!(matches!(fock_gi(at(1.0, 0.5), 30), Err(Error::Tail(_))));
        assert!(matches!(fock_gi(at(1.2, 0.5), 40), Err(Error::Tail(_))));
        assert!(fock_gi(at(1.05, 0.5), 40).is_ok());
        assert!(matches!(fock_gi(at(1.0, 0.5), 0), Err(Error::Dimension(_))));
        assert!(matches!(fock_gi(at(1.0, 0.5), 65), Err(Error::Dimension(_))));
    }

    #[test]
    fn thermal_operator_matches_geometric_form() {
        let op = fock_tmt(1.0, 40).unwrap();
        let lambda = 1.0_f64.tanh().powi(2);
        assert_abs_diff_eq!(op.element(0, 0, 0, 0).re, 0.17637844761413467, epsilon = 1e-15);
        assert_abs_diff_eq!(
            op.element(1, 2, 1, 2).re,
            0.17637844761413467 * lambda.powi(3),
            epsilon = 1e-15
        );
        assert_eq!(op.element(0, 1, 1, 0), c(0.0, 0.0));
        assert_abs_diff_eq!(op.trace(), 1.0, epsilon = 1e-8);

        let vac = fock_tmt(0.0, 2).unwrap();
        assert_eq!(vac.element(0, 0, 0, 0), c(1.0, 0.0));
        assert_eq!(vac.trace(), 1.0);
    }

    #[test]
    fn squeezed_vacuum_operator_is_pure() {
        let op = fock_tms(1.0, 40).unwrap();
        assert_abs_diff_eq!(op.element(0, 0, 0, 0).re, 0.41997434161402607, epsilon = 1e-15);
        assert_abs_diff_eq!(op.trace(), 1.0, epsilon = 1e-8);
        assert_abs_diff_eq!(op.purity(), 1.0, epsilon = 1e-8);
        // Support only on |m,m><n,n|.
        assert_eq!(op.element(0, 1, 1, 1), c(0.0, 0.0));
    }

    #[test]
    fn gi_operator_interpolates_and_validates() {
        let params = at(0.8, 0.5);
        let op = fock_gi(params, 24).unwrap();
        assert_abs_diff_eq!(op.trace(), 1.0, epsilon = 1e-6);
        assert_abs_diff_eq!(op.purity(), 0.19111351490821787, epsilon = 1e-4);

        // Endpoints coincide with the dedicated constructors.
        let p0 = fock_gi(at(0.8, 0.0), 24).unwrap();
        assert!(max_entry_diff(&p0, &fock_tmt(0.8, 24).unwrap()) < 1e-8);
        let p1 = fock_gi(at(0.8, 1.0), 24).unwrap();
        assert!(max_entry_diff(&p1, &fock_tms(0.8, 24).unwrap()) < 1e-8);

        // Selection rule: m - k = n - l bands only.
        assert_eq!(op.element(1, 0, 0, 1), c(0.0, 0.0));
        assert!(op.element(2, 1, 1, 0).re > 0.0);
    }

    #[test]
    fn moments_recover_the_covariance_matrix() {
        let op = fock_tms(1.0, 40).unwrap();
        let cm = cm_from_fock(&op).unwrap();
        let closed = states::gamma_tms(1.0).unwrap();
        assert!((cm.entries() - closed.entries()).amax() < 1e-6);

        let vac = fock_tmt(0.0, 3).unwrap();
        let cm = cm_from_fock(&vac).unwrap();
        assert!((cm.entries() - DMatrix::identity(4, 4)).amax() < 1e-12);
    }

    #[test]
    fn moments_reject_non_states() {
        let half = FockOperator::from_entries(
            2,
            DMatrix::from_fn(4, 4, |i, j| if i == 0 && j == 0 { c(0.5, 0.0) } else { c(0.0, 0.0) }),
        )
        .unwrap();
        assert!(matches!(cm_from_fock(&half), Err(Error::State(_))));
    }

    #[test]
    fn negativity_sign_tracks_the_ppt_verdict() {
        // tanh(0.8) = 0.664: p = 0.9 is entangled, p = 0.3 is separable.
        assert!(negativity_oracle(at(0.8, 0.9), 24).unwrap() < -1e-8);
        assert!(negativity_oracle(at(0.8, 0.3), 24).unwrap() >= -1e-8);
        assert!(negativity_oracle(at(0.8, 0.0), 24).unwrap() >= -1e-10);
    }

    #[test]
    fn mixing_validates_weights_and_cutoffs() {
        let a = fock_tms(0.8, 24).unwrap();
        let b = fock_tmt(0.8, 24).unwrap();
        let mixed = FockOperator::mix(&a, &b, 0.25).unwrap();
        assert_abs_diff_eq!(mixed.trace(), 1.0, epsilon = 1e-7);
        assert!(matches!(FockOperator::mix(&a, &b, 1.5), Err(Error::Domain(_))));
        let other = fock_tmt(0.8, 25).unwrap();
        assert!(matches!(FockOperator::mix(&a, &other, 0.5), Err(Error::Dimension(_))));
    }

    #[test]
    fn hermiticity_is_enforced() {
        let mut bad = DMatrix::from_element(4, 4, c(0.0, 0.0));
        bad[(0, 0)] = c(1.0, 0.0);
        bad[(0, 1)] = c(0.1, 0.0);
        bad[(1, 0)] = c(0.2, 0.0);
        assert!(matches!(FockOperator::from_entries(2, bad), Err(Error::Shape(_))));
        assert!(matches!(
            FockOperator::from_entries(2, DMatrix::from_element(3, 3, c(0.0, 0.0))),
            Err(Error::Dimension(_))
        ));
    }

    #[test]
    fn min_eigenvalue_handles_complex_entries() {
        // Hermitian with a genuinely imaginary off-diagonal pair: the
        // 2x2 block [[0.25, 0.1 i], [-0.1 i, 0.25]] has eigenvalues 0.15, 0.35.
        let mut m = DMatrix::from_element(4, 4, c(0.0, 0.0));
        m[(0, 0)] = c(0.25, 0.0);
        m[(1, 1)] = c(0.25, 0.0);
        m[(2, 2)] = c(0.3, 0.0);
        m[(3, 3)] = c(0.2, 0.0);
        m[(0, 1)] = c(0.0, 0.1);
        m[(1, 0)] = c(0.0, -0.1);
        let op = FockOperator::from_entries(2, m).unwrap();
        assert_abs_diff_eq!(op.min_eigenvalue(), 0.15, epsilon = 1e-12);
    }

    #[test]
    fn dump_and_load_round_trip_exactly() {
        let op = fock_gi(at(0.5, 0.5), 16).unwrap();
        let mut bytes = Vec::new();
        op.dump(&mut bytes).unwrap();
        assert_eq!(bytes.len(), 16 + 16 * 256 * 256);
        let back = FockOperator::load(bytes.as_slice()).unwrap();
        assert_eq!(back.cutoff(), 16);
        assert_eq!(back.entries(), op.entries());

        let mut header = 70u64.to_le_bytes().to_vec();
        header.extend_from_slice(&2u64.to_le_bytes());
        assert!(matches!(FockOperator::load(header.as_slice()), Err(Error::Dimension(_))));
        let mut header = 2u64.to_le_bytes().to_vec();
        header.extend_from_slice(&1u64.to_le_bytes());
        assert!(matches!(FockOperator::load(header.as_slice()), Err(Error::Shape(_))));
    }
}
