//! Generalized coherent states on truncated Fock spaces.
//!
//! States are built from the eigenvalue relation `h(N) K- |z> = z |z>`,
//! whose amplitudes obey the one-term recurrence
//!
//! ```text
//! C_{n+1} h(n) sqrt(f(n+1)) = z C_n
//! ```
//!
//! All factorial-like products run through log-Gamma, so "(b + n)!" with a
//! fractional b (the cylindrical wells) is read as Gamma(b + n + 1). The
//! closed forms — Poisson for the oscillator, Bessel-normalized for the
//! h = 1 families, binomial for the Perelomov-type families — are kept as
//! an independent route for cross-validation against the recurrence.

use num_complex::Complex64;
use statrs::function::gamma::ln_gamma;

use crate::algebra::{Kind, Realization, TruncatedMode};
use crate::error::{Error, Result};

/// Default ceiling on the probability mass allowed beyond the truncation.
pub const DEFAULT_TAIL_TOLERANCE: f64 = 1e-10;

/// Default `max_prob` target of the automatic displacement rule. Safely
/// below the 0.45 precondition margin: at 0.45 the early, diabatic probes
/// of the halting loop can transiently concentrate past 1/2 on a state
/// that is not the ground state.
pub const DEFAULT_AUTO_Z_MARGIN: f64 = 0.30;

/// Largest truncation considered by the automatic dimension rule.
pub const DEFAULT_AUTO_DIM_CAP: usize = 256;

/// Modified Bessel function of the first kind, real order nu >= 0, x >= 0.
///
/// Series sum_m (x/2)^(2m+nu) / (m! Gamma(m+nu+1)), accumulated in log
/// space until the relative term drops below 1e-15.
pub fn bessel_i(nu: f64, x: f64) -> f64 {
    ln_bessel_i(nu, x).exp()
}

/// ln I_nu(x); -inf when I_nu(x) = 0 (x = 0, nu > 0).
pub fn ln_bessel_i(nu: f64, x: f64) -> f64 {
    assert!(nu >= 0.0 && x >= 0.0, "bessel_i domain: nu >= 0, x >= 0");
    if x == 0.0 {
        return if nu == 0.0 { 0.0 } else { f64::NEG_INFINITY };
    }
    let lx = (x / 2.0).ln();
    // ln of term m; advance by ln t_{m+1} - ln t_m = 2 ln(x/2) - ln(m+1) - ln(m+nu+1)
    let mut ln_t = nu * lx - ln_gamma(nu + 1.0);
    // running ln-sum-exp: sum = exp(scale) * acc
    let mut scale = ln_t;
    let mut acc = 1.0f64;
    let mut m = 0.0f64;
    loop {
        ln_t += 2.0 * lx - (m + 1.0).ln() - (m + nu + 1.0).ln();
        m += 1.0;
        if ln_t > scale {
            acc = acc * (scale - ln_t).exp() + 1.0;
            scale = ln_t;
        } else {
            let rel = (ln_t - scale).exp() / acc;
            acc += (ln_t - scale).exp();
            // terms decay monotonically once m exceeds the series peak ~ x/2
            if rel < 1e-15 && m > x / 2.0 {
                break;
            }
        }
        if m > 1e7 {
            break;
        }
    }
    scale + acc.ln()
}

/// Amplitudes of a generalized coherent state on |0> .. |dim-1>, with the
/// estimated probability mass lost to truncation.
#[derive(Clone, Debug)]
pub struct CoherentState {
    realization: Realization,
    z: Complex64,
    amplitudes: Vec<Complex64>,
    tail_mass: f64,
}

impl CoherentState {
    /// Build by the amplitude recurrence, in log-magnitude/phase form.
    ///
    /// Fails when the geometric tail estimate exceeds `tail_tolerance`
    /// (the truncation is too small for this |z|). `z = 0` gives |0>.
    pub fn by_recurrence(
        realization: Realization,
        z: Complex64,
        dim: usize,
        tail_tolerance: f64,
    ) -> Result<Self> {
        if dim < 2 {
            return Err(Error::DimTooSmall(dim));
        }
        if realization.is_perelomov() && z.norm() >= 1.0 {
            return Err(Error::PerelomovDomain(z.norm()));
        }
        let r = z.norm();
        if r == 0.0 {
            let mut amplitudes = vec![Complex64::new(0.0, 0.0); dim];
            amplitudes[0] = Complex64::new(1.0, 0.0);
            return Ok(CoherentState {
                realization,
                z,
                amplitudes,
                tail_mass: 0.0,
            });
        }
        let phase = z.arg();
        let ln_r = r.ln();

        // ln |C_n / C_0|
        let mut ln_rel = Vec::with_capacity(dim);
        ln_rel.push(0.0f64);
        for n in 1..dim {
            let prev = ln_rel[n - 1];
            let step = ln_r
                - realization.char_h(n - 1).ln()
                - 0.5 * realization.char_f(n).ln();
            ln_rel.push(prev + step);
        }

        // geometric bound on the omitted mass from the boundary ratio
        let boundary_ratio = r / (realization.char_h(dim - 1) * realization.char_f(dim).sqrt());
        let rho = boundary_ratio * boundary_ratio;
        if !(rho < 1.0) {
            return Err(Error::TailDiverges { dim, z_abs: r });
        }

        let top = ln_rel.iter().cloned().fold(f64::NEG_INFINITY, f64::max);
        let weights: Vec<f64> = ln_rel.iter().map(|l| (2.0 * (l - top)).exp()).collect();
        let body: f64 = weights.iter().sum();
        let tail_weight = weights[dim - 1] * rho / (1.0 - rho);
        let total = body + tail_weight;
        let tail_mass = tail_weight / total;
        if tail_mass > tail_tolerance {
            return Err(Error::TailTolerance {
                tail: tail_mass,
                tolerance: tail_tolerance,
                dim,
                z_abs: r,
            });
        }

        let log_norm = top + 0.5 * total.ln();
        let amplitudes = ln_rel
            .iter()
            .enumerate()
            .map(|(n, l)| Complex64::from_polar((l - log_norm).exp(), phase * n as f64))
            .collect();
        Ok(CoherentState {
            realization,
            z,
            amplitudes,
            tail_mass,
        })
    }

    pub fn realization(&self) -> &Realization {
        &self.realization
    }

    pub fn z(&self) -> Complex64 {
        self.z
    }

    pub fn dim(&self) -> usize {
        self.amplitudes.len()
    }

    pub fn amplitudes(&self) -> &[Complex64] {
        &self.amplitudes
    }

    pub fn tail_mass(&self) -> f64 {
        self.tail_mass
    }

    /// Number-basis probabilities P_n = |C_n|^2 with the location of the
    /// maximum; ties break toward the smallest index.
    pub fn density(&self) -> DensityReport {
        let probabilities: Vec<f64> = self.amplitudes.iter().map(|c| c.norm_sqr()).collect();
        let (max_index, max_prob) = probabilities
            .iter()
            .enumerate()
            .fold((0usize, f64::NEG_INFINITY), |(bi, bp), (i, &p)| {
                if p > bp {
                    (i, p)
                } else {
                    (bi, bp)
                }
            });
        DensityReport {
            dominant: max_prob > 0.5,
            probabilities,
            max_index,
            max_prob,
        }
    }

    /// Halting-criterion precondition: no number component may carry more
    /// than half the probability. The tail cannot hide a violation as long
    /// as it is below 1/2, which the construction tolerance guarantees.
    pub fn check_halting_precondition(&self) -> (bool, DensityReport) {
        let report = self.density();
        (!report.dominant, report)
    }

    /// Residual norm of (h(N) K- - z) applied to the state; zero for the
    /// untruncated eigenstate, so this measures truncation damage.
    pub fn eigenstate_residual(&self) -> Result<f64> {
        let mode = TruncatedMode::new(self.realization, self.dim())?;
        let op = mode
            .h_diag()
            .mul(&mode.lowering())
            .shift_diagonal(-self.z);
        let v = op.apply(&self.amplitudes);
        Ok(v.iter().map(|c| c.norm_sqr()).sum::<f64>().sqrt())
    }
}

/// Probability table attached to precondition checks and reports.
#[derive(Clone, Debug)]
pub struct DensityReport {
    pub probabilities: Vec<f64>,
    pub max_index: usize,
    pub max_prob: f64,
    pub dominant: bool,
}

/// n-th amplitude from the closed form of the coherent state, for
/// cross-validation against the recurrence.
///
/// * SHO: Poisson, `exp(-|z|^2/2) z^n / sqrt(n!)`.
/// * h = 1 and f(n) = n(n+b): `|z|^(b/2) / sqrt(I_b(2|z|)) * z^n /
///   sqrt(n! Gamma(n+b+1))`.
/// * Perelomov-type (HP and flagged su(1,1)): `(1-|z|^2)^k binom(2k+n-1, n)^(1/2) z^n`,
///   defined for |z| < 1 only.
pub fn closed_form_bg(r: &Realization, z: Complex64, n: usize) -> Result<Complex64> {
    let zr = z.norm();
    if zr == 0.0 {
        return Ok(if n == 0 {
            Complex64::new(1.0, 0.0)
        } else {
            Complex64::new(0.0, 0.0)
        });
    }
    let phase = z.arg() * n as f64;
    let nf = n as f64;
    let ln_mag = match r.kind() {
        Kind::Sho => -0.5 * zr * zr + nf * zr.ln() - 0.5 * ln_gamma(nf + 1.0),
        Kind::Hp { bargmann_k: k } | Kind::GenericSu11 { bargmann_k: k, perelomov: true } => {
            if zr >= 1.0 {
                return Err(Error::PerelomovDomain(zr));
            }
            k * (1.0 - zr * zr).ln()
                + 0.5 * (ln_gamma(2.0 * k + nf) - ln_gamma(2.0 * k) - ln_gamma(nf + 1.0))
                + nf * zr.ln()
        }
        kind => {
            let b = match kind {
                Kind::Isw => 2.0,
                Kind::Icw => crate::algebra::ICW_B,
                Kind::Pcw => crate::algebra::PCW_B,
                // f(n) = n(n + 2 eta - 1), so b = lambda + kappa
                Kind::Ptp { lambda, kappa } => lambda + kappa,
                Kind::Laguerre { alpha } => alpha,
                Kind::GenericSu11 { bargmann_k, .. } => 2.0 * bargmann_k - 1.0,
                Kind::Sho | Kind::Hp { .. } => unreachable!(),
            };
            0.5 * b * zr.ln() - 0.5 * ln_bessel_i(b, 2.0 * zr) + nf * zr.ln()
                - 0.5 * (ln_gamma(nf + 1.0) + ln_gamma(nf + b + 1.0))
        }
    };
    Ok(Complex64::from_polar(ln_mag.exp(), phase))
}

/// Hard ceiling on the initial peak probability; the automatic rule never
/// returns a displacement whose state carries more than this anywhere.
pub const PRECONDITION_MARGIN: f64 = 0.45;

/// Positive displacement with zero-mode probability `P_0 = margin`, found
/// by scan plus fixed-depth bisection (deterministic).
///
/// P_0 is strictly decreasing in |z|, so the target pins |z| uniquely.
/// The interior components can top P_0 for larger |z| (for the square well
/// `P_1/P_0 = |z|^2 / 3`), so the full peak is then verified against
/// [`PRECONDITION_MARGIN`] and |z| is pushed further if needed. The probe
/// truncation grows until its tail is negligible, so the result is a
/// property of the realization alone.
pub fn auto_displacement(r: &Realization, margin: f64) -> Result<f64> {
    if !(0.0 < margin && margin < 1.0) {
        return Err(Error::Config(format!(
            "displacement margin must be in (0, 1), got {margin}"
        )));
    }
    let (scan_step, scan_max) = if r.is_perelomov() {
        (0.05, 0.9999)
    } else {
        (0.5, 64.0)
    };
    let mut lo = 0.0f64;
    let mut hi = scan_step;
    while probe_density(r, hi)?.probabilities[0] > margin {
        lo = hi;
        hi += scan_step;
        if hi > scan_max {
            return Err(Error::NoDisplacement { margin });
        }
    }
    for _ in 0..60 {
        let mid = 0.5 * (lo + hi);
        if probe_density(r, mid)?.probabilities[0] > margin {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    // guard the full precondition, not just the zero mode
    let mut z = hi;
    for _ in 0..200 {
        if probe_density(r, z)?.max_prob <= PRECONDITION_MARGIN {
            return Ok(z);
        }
        z = if r.is_perelomov() {
            z + 0.02 * (1.0 - z)
        } else {
            z * 1.05
        };
    }
    Err(Error::NoDisplacement { margin })
}

/// Smallest power-of-two truncation holding |z> within the tail tolerance.
pub fn auto_dim(r: &Realization, z: Complex64, tail_tolerance: f64, cap: usize) -> Result<usize> {
    let mut dim = 2;
    loop {
        match CoherentState::by_recurrence(*r, z, dim, tail_tolerance) {
            Ok(_) => return Ok(dim),
            Err(e) => {
                if dim >= cap {
                    return Err(e);
                }
                dim *= 2;
            }
        }
    }
}

fn probe_density(r: &Realization, z_abs: f64) -> Result<DensityReport> {
    let z = Complex64::new(z_abs, 0.0);
    // grow the probe truncation until the state fits comfortably
    let mut dim = 32;
    loop {
        match CoherentState::by_recurrence(*r, z, dim, 1e-9) {
            Ok(state) => return Ok(state.density()),
            Err(Error::TailTolerance { .. }) | Err(Error::TailDiverges { .. }) if dim < 8192 => {
                dim *= 2;
            }
            Err(e) => return Err(e),
        }
    }
}
