//! Schrödinger evolution under the adiabatic blend and the halting loop.
//!
//! Integration uses the implicit-midpoint (Cayley) step
//!
//! ```text
//! (Id + i dt/2 H_mid) psi_new = (Id - i dt/2 H_mid) psi_old
//! ```
//!
//! with `H_mid = H_A(t + dt/2)`. The step is unitary for any dt, so time
//! discretization shows up as phase error only — the halting criterion
//! reads probabilities, and norm leakage is the failure mode that would
//! corrupt it. dt is chosen from `(dt * spectral_bound)^3 <= step_control`
//! with the max row-sum norm as the bound.
//!
//! The halting loop runs the evolution for a geometrically growing interval
//! T and stops once the largest number-state probability exceeds the
//! threshold; the verdict then comes from the exact integer value of D^2
//! at the measured argmax, never from floats.

use num_bigint::BigUint;
use num_complex::Complex64;
use num_traits::Zero;

use crate::encode::{coherent_modes, Hamiltonian, SparseHermitian, TensorSpace};
use crate::error::{Error, Result};

/// Largest flat dimension for which gap/coupling diagnostics are computed.
pub const DIAGNOSTICS_DIM_CAP: usize = 1024;

/// Probability margin under which a degenerate ground level downgrades the
/// verdict: if the top two number-state probabilities are this close, no
/// single tuple can honestly be called "the" ground state.
pub const DEGENERACY_PROB_MARGIN: f64 = 0.05;

/// Tolerated nonmonotonicity of P(T) along the schedule before the run is
/// flagged (flagged only; the adiabatic theorem is not constructive).
pub const MONOTONICITY_NOISE: f64 = 0.02;

#[derive(Clone, Debug)]
pub struct EvolveConfig {
    /// First probed evolution interval.
    pub t_initial: f64,
    /// Cap on the probed interval; the loop gives up past it.
    pub t_max: f64,
    /// Geometric growth factor of the schedule, > 1.
    pub t_growth: f64,
    /// Target local unitarity error per step.
    pub step_control: f64,
    /// Halting when P(T) exceeds this.
    pub halting_threshold: f64,
    /// Interior samples for gap/coupling diagnostics.
    pub diagnostics_samples: usize,
}

impl Default for EvolveConfig {
    fn default() -> Self {
        EvolveConfig {
            t_initial: 1.0,
            t_max: 1e4,
            t_growth: 2.0,
            step_control: 1e-9,
            halting_threshold: 0.5,
            diagnostics_samples: 32,
        }
    }
}

impl EvolveConfig {
    pub fn validate(&self) -> Result<()> {
        let ok = self.t_initial.is_finite()
            && self.t_initial > 0.0
            && self.t_max.is_finite()
            && self.t_initial <= self.t_max
            && self.t_growth.is_finite()
            && self.t_growth > 1.0
            && self.step_control > 0.0
            && self.step_control <= 1.0
            && self.halting_threshold > 0.0
            && self.halting_threshold < 1.0
            && self.diagnostics_samples >= 1;
        if ok {
            Ok(())
        } else {
            Err(Error::Config(format!("invalid evolve configuration: {self:?}")))
        }
    }
}

/// Final state of one evolution interval plus its bookkeeping.
pub struct IntegrateOutcome {
    pub psi: Vec<Complex64>,
    /// |norm(psi(T)) - 1| at the end of the run.
    pub norm_drift: f64,
    pub steps: u64,
}

/// Integrate i d/dt psi = H_A(t) psi from t = 0 to t = T.
pub fn integrate(
    ham: &Hamiltonian,
    psi0: &[Complex64],
    big_t: f64,
    cfg: &EvolveConfig,
) -> Result<IntegrateOutcome> {
    let dim = ham.space().total_dim();
    if psi0.len() != dim {
        return Err(Error::ArityMismatch {
            expected: dim,
            found: psi0.len(),
        });
    }
    let norm0 = norm(psi0);
    if (norm0 - 1.0).abs() > 1e-10 {
        return Err(Error::NotNormalized { norm: norm0 });
    }
    if big_t < 0.0 || !big_t.is_finite() {
        return Err(Error::TimeOutOfRange { t: big_t, big_t });
    }
    let mut psi = psi0.to_vec();
    if big_t == 0.0 {
        return Ok(IntegrateOutcome {
            psi,
            norm_drift: (norm0 - 1.0).abs(),
            steps: 0,
        });
    }

    let h_i = ham.h_i();
    let h_d = ham.h_d();
    let rs_i = h_i.max_row_abs_sum();
    let rs_d = h_d.iter().fold(0.0f64, |m, &d| m.max(d.abs()));
    let bound = |s: f64| (1.0 - s) * rs_i + s * rs_d;
    let dt_scale = cfg.step_control.cbrt();

    let mut hv = vec![Complex64::zero(); dim];
    let mut rhs = vec![Complex64::zero(); dim];
    let mut x = vec![Complex64::zero(); dim];

    let mut t = 0.0f64;
    let mut steps: u64 = 0;
    while t < big_t {
        let remaining = big_t - t;
        if remaining <= big_t * 1e-14 {
            break;
        }
        // pick dt from the bound of H at mid-step; the row sums vary slowly,
        // so one refinement is enough
        let b_now = bound(t / big_t);
        let dt0 = if b_now > 0.0 {
            (dt_scale / b_now).min(remaining)
        } else {
            remaining
        };
        let b_mid = bound((t + 0.5 * dt0) / big_t).max(b_now);
        let dt = if b_mid > 0.0 {
            (dt_scale / b_mid).min(remaining)
        } else {
            remaining
        };
        let s_mid = (t + 0.5 * dt) / big_t;
        let alpha = 0.5 * dt;

        apply_blend(h_i, h_d, s_mid, &psi, &mut hv);
        for j in 0..dim {
            rhs[j] = psi[j] - Complex64::i() * alpha * hv[j];
        }
        // fixed-point solve of (Id + i alpha H) x = rhs; contraction factor
        // alpha * bound <= (step_control)^(1/3) / 2, far below 1
        x.copy_from_slice(&rhs);
        let mut delta = f64::INFINITY;
        for _ in 0..20 {
            apply_blend(h_i, h_d, s_mid, &x, &mut hv);
            let mut d2 = 0.0f64;
            for j in 0..dim {
                let next = rhs[j] - Complex64::i() * alpha * hv[j];
                d2 += (next - x[j]).norm_sqr();
                x[j] = next;
            }
            delta = d2.sqrt();
            if delta <= 1e-14 {
                break;
            }
        }
        if !(delta <= 1e-10) {
            return Err(Error::SolveFailure { t, residual: delta });
        }
        psi.copy_from_slice(&x);
        t += dt;
        steps += 1;
        if steps % 8192 == 0 {
            let drift = (norm(&psi) - 1.0).abs();
            if drift > 1e-6 {
                return Err(Error::NormDrift { t, drift });
            }
        }
    }
    let norm_drift = (norm(&psi) - 1.0).abs();
    if norm_drift > 1e-6 {
        return Err(Error::NormDrift { t: big_t, drift: norm_drift });
    }
    Ok(IntegrateOutcome {
        psi,
        norm_drift,
        steps,
    })
}

/// y = (1 - s) H_I v + s diag(h_d) v, fused over CSR rows.
fn apply_blend(
    h_i: &SparseHermitian,
    h_d: &[f64],
    s: f64,
    v: &[Complex64],
    out: &mut [Complex64],
) {
    let oms = 1.0 - s;
    for r in 0..v.len() {
        let (cols, vals) = h_i.row(r);
        let mut acc = Complex64::zero();
        for (c, a) in cols.iter().zip(vals) {
            acc += a * v[*c];
        }
        out[r] = oms * acc + s * h_d[r] * v[r];
    }
}

fn norm(v: &[Complex64]) -> f64 {
    v.iter().map(|c| c.norm_sqr()).sum::<f64>().sqrt()
}

/// Largest number-state probability and its tuple; ties break toward the
/// lexicographically smallest tuple.
pub fn measure_max(psi: &[Complex64], space: &TensorSpace) -> Result<(f64, Vec<usize>)> {
    let (p1, tuple, _) = measure_top2(psi, space)?;
    Ok((p1, tuple))
}

/// As `measure_max`, also returning the second-largest probability.
fn measure_top2(psi: &[Complex64], space: &TensorSpace) -> Result<(f64, Vec<usize>, f64)> {
    let n = norm(psi);
    if (n - 1.0).abs() > 1e-6 {
        return Err(Error::NotNormalized { norm: n });
    }
    let mut best_p = f64::NEG_INFINITY;
    let mut best_flat = 0usize;
    let mut second = f64::NEG_INFINITY;
    for (flat, c) in psi.iter().enumerate() {
        let p = c.norm_sqr();
        if p > best_p {
            second = best_p;
            best_p = p;
            best_flat = flat;
        } else if p == best_p && space.decode(flat) < space.decode(best_flat) {
            // exact tie: keep the lexicographically smaller tuple
            second = second.max(p);
            best_flat = flat;
        } else if p > second {
            second = p;
        }
    }
    Ok((best_p, space.decode(best_flat), second.max(0.0)))
}

/// Halting outcome of the T-doubling loop.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Verdict {
    /// Halted on a tuple with D = 0 exactly: the equation has a solution.
    SolutionFound,
    /// Halted on a tuple with D != 0: no solution inside the truncated box.
    NoSolutionWithinTruncation,
    /// Did not halt by t_max, or halted but the claim is unsupportable
    /// (degenerate ground level or an argmax on the truncation boundary).
    Inconclusive,
}

impl Verdict {
    pub fn as_str(&self) -> &'static str {
        match self {
            Verdict::SolutionFound => "solution_found",
            Verdict::NoSolutionWithinTruncation => "no_solution_within_truncation",
            Verdict::Inconclusive => "inconclusive",
        }
    }
}

/// One probe of the halting schedule.
#[derive(Clone, Debug)]
pub struct ScheduleEntry {
    pub t: f64,
    pub p_t: f64,
    pub argmax: Vec<usize>,
    pub norm_drift: f64,
    pub steps: u64,
}

#[derive(Clone, Debug)]
pub struct RunResult {
    pub halted: bool,
    pub t_final: f64,
    /// P(T) of the last run.
    pub p_t: f64,
    pub argmax_tuple: Vec<usize>,
    /// Exact D^2 at the argmax.
    pub hd_value_at_argmax: BigUint,
    pub verdict: Verdict,
    /// Norm drift of the last run.
    pub norm_drift: f64,
    /// Smallest sampled gap of H_A between ground and first excited level;
    /// absent when the dimension exceeds the diagnostics cap.
    pub min_gap: Option<f64>,
    /// Smallest sampled |<e| H_D - H_I |g>|; absent as for `min_gap`.
    pub min_coupling: Option<f64>,
    pub degenerate_ground: bool,
    /// Set when the argmax touches the truncation boundary of any mode:
    /// the result may be an artifact and larger dims are advisable.
    pub truncation_warning: bool,
    /// Set when P(T) decreased by more than [`MONOTONICITY_NOISE`] along
    /// the schedule after exceeding 0.2.
    pub monotonicity_flagged: bool,
    /// Largest per-mode initial number-state probability (precondition).
    pub precondition_max_prob: f64,
    pub schedule: Vec<ScheduleEntry>,
}

/// The adiabatic search end to end: precondition check, encoding, the
/// T-doubling loop, verdict, and diagnostics.
pub fn run_khqa(
    p: &crate::diophantine::Polynomial,
    space: &TensorSpace,
    z: &[Complex64],
    cfg: &EvolveConfig,
    tail_tolerance: f64,
) -> Result<RunResult> {
    cfg.validate()?;
    let states = coherent_modes(space, z, tail_tolerance)?;
    let mut precondition_max_prob = 0.0f64;
    for (i, s) in states.iter().enumerate() {
        let (ok, report) = s.check_halting_precondition();
        if !ok {
            return Err(Error::PreconditionViolated {
                mode: i,
                n: report.max_index,
                p_n: report.max_prob,
            });
        }
        precondition_max_prob = precondition_max_prob.max(report.max_prob);
    }

    let ham = Hamiltonian::build(p, space.clone(), z)?;
    let psi0 = crate::encode::tensor_state(&states);

    let mut schedule: Vec<ScheduleEntry> = Vec::new();
    let mut big_t = cfg.t_initial;
    let (halted, p_t, argmax, second_p, norm_drift) = loop {
        let out = integrate(&ham, &psi0, big_t, cfg)?;
        let (p1, tuple, p2) = measure_top2(&out.psi, space)?;
        schedule.push(ScheduleEntry {
            t: big_t,
            p_t: p1,
            argmax: tuple.clone(),
            norm_drift: out.norm_drift,
            steps: out.steps,
        });
        if p1 > cfg.halting_threshold {
            break (true, p1, tuple, p2, out.norm_drift);
        }
        if big_t >= cfg.t_max {
            break (false, p1, tuple, p2, out.norm_drift);
        }
        big_t = (big_t * cfg.t_growth).min(cfg.t_max);
    };

    let hd_value_at_argmax = ham.exact_hd_at(&argmax)?;
    let degenerate_ground = ham.degenerate_ground();
    let on_boundary = space.on_boundary(&argmax);
    let truncation_warning = halted && on_boundary;
    let verdict = if !halted {
        Verdict::Inconclusive
    } else if degenerate_ground && (p_t - second_p) < DEGENERACY_PROB_MARGIN {
        // the measured peak is not meaningfully ahead of the runner-up
        Verdict::Inconclusive
    } else if hd_value_at_argmax.is_zero() {
        Verdict::SolutionFound
    } else if on_boundary {
        // an unsolvability claim from the edge of the box is unsupportable
        Verdict::Inconclusive
    } else {
        Verdict::NoSolutionWithinTruncation
    };

    let monotonicity_flagged = {
        let mut flagged = false;
        let mut prev: Option<f64> = None;
        for e in &schedule {
            if let Some(pv) = prev {
                if pv > 0.2 && e.p_t < pv - MONOTONICITY_NOISE {
                    flagged = true;
                }
            }
            prev = Some(e.p_t);
        }
        flagged
    };

    let (min_gap, min_coupling) = if space.total_dim() <= DIAGNOSTICS_DIM_CAP {
        let d = diagnostics(&ham, cfg)?;
        (Some(d.min_gap), Some(d.min_coupling))
    } else {
        (None, None)
    };

    Ok(RunResult {
        halted,
        t_final: schedule.last().map(|e| e.t).unwrap_or(cfg.t_initial),
        p_t,
        argmax_tuple: argmax,
        hd_value_at_argmax,
        verdict,
        norm_drift,
        min_gap,
        min_coupling,
        degenerate_ground,
        truncation_warning,
        monotonicity_flagged,
        precondition_max_prob,
        schedule,
    })
}

/// Product state from per-mode amplitudes, renormalized to unit norm.
fn tensor_state(states: &[crate::coherent::CoherentState]) -> Vec<Complex64> {
    let mut v = vec![Complex64::new(1.0, 0.0)];
    for s in states {
        let amps = s.amplitudes();
        let mut next = Vec::with_capacity(v.len() * amps.len());
        for &a in amps {
            for &x in &v {
                next.push(a * x);
            }
        }
        v = next;
    }
    let n = norm(&v);
    for c in &mut v {
        *c /= n;
    }
    v
}

/// Sampled spectral diagnostics of the adiabatic path.
#[derive(Clone, Copy, Debug)]
pub struct Diagnostics {
    /// min over samples of E_1(s) - E_0(s).
    pub min_gap: f64,
    /// min over samples of |<e(s)| H_D - H_I |g(s)>|.
    pub min_coupling: f64,
    pub degenerate_ground: bool,
}

/// Two lowest eigenpairs of H_A at `diagnostics_samples` interior times,
/// independent of T (the blend depends on t/T only).
pub fn diagnostics(ham: &Hamiltonian, cfg: &EvolveConfig) -> Result<Diagnostics> {
    cfg.validate()?;
    let dim = ham.space().total_dim();
    if dim > DIAGNOSTICS_DIM_CAP {
        return Err(Error::DiagnosticsCap {
            dim,
            cap: DIAGNOSTICS_DIM_CAP,
        });
    }
    let dense_hi = ham.h_i().to_dense();
    let h_d = ham.h_d();
    let samples = cfg.diagnostics_samples;
    let mut min_gap = f64::INFINITY;
    let mut min_coupling = f64::INFINITY;
    for j in 1..=samples {
        let s = j as f64 / (samples as f64 + 1.0);
        let mut m = dense_hi.map(|v| v * (1.0 - s));
        for (i, &d) in h_d.iter().enumerate() {
            m[(i, i)] += Complex64::new(s * d, 0.0);
        }
        let eig = nalgebra::SymmetricEigen::try_new(m, 1e-13, 0)
            .ok_or(Error::EigenFailure { sample: j, s })?;
        let mut order: Vec<usize> = (0..dim).collect();
        order.sort_by(|&a, &b| eig.eigenvalues[a].total_cmp(&eig.eigenvalues[b]));
        let (i_g, i_e) = (order[0], order[1]);
        let gap = eig.eigenvalues[i_e] - eig.eigenvalues[i_g];
        min_gap = min_gap.min(gap);

        let g: Vec<Complex64> = eig.eigenvectors.column(i_g).iter().copied().collect();
        let e: Vec<Complex64> = eig.eigenvectors.column(i_e).iter().copied().collect();
        // (H_D - H_I) g, using the sparse H_I
        let mut w = vec![Complex64::zero(); dim];
        ham.h_i().apply(&g, &mut w);
        for (i, wi) in w.iter_mut().enumerate() {
            *wi = Complex64::new(h_d[i], 0.0) * g[i] - *wi;
        }
        let coupling: Complex64 = e.iter().zip(&w).map(|(ei, wi)| ei.conj() * wi).sum();
        min_coupling = min_coupling.min(coupling.norm());
    }
    Ok(Diagnostics {
        min_gap,
        min_coupling,
        degenerate_ground: ham.degenerate_ground(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{Kind, Realization, TruncatedMode};
    use crate::coherent::auto_displacement;
    use crate::diophantine::Polynomial;
    use crate::encode::SparseHermitian;

    fn isw_space(dims: &[usize]) -> TensorSpace {
        let r = Realization::new(Kind::Isw).unwrap();
        TensorSpace::new(
            dims.iter()
                .map(|&d| TruncatedMode::new(r, d).unwrap())
                .collect(),
        )
        .unwrap()
    }

    fn sho_space(dim: usize) -> TensorSpace {
        let r = Realization::new(Kind::Sho).unwrap();
        TensorSpace::new(vec![TruncatedMode::new(r, dim).unwrap()]).unwrap()
    }

    /// xorshift64 for reproducible pseudo-random test data.
    struct Rng(u64);
    impl Rng {
        fn next_f64(&mut self) -> f64 {
            self.0 ^= self.0 << 13;
            self.0 ^= self.0 >> 7;
            self.0 ^= self.0 << 17;
            (self.0 >> 11) as f64 / (1u64 << 53) as f64
        }
    }

    /// Constant-diagonal Hamiltonian: h_i = diag(d) so H_A(t) = diag(d).
    fn constant_diag_ham(d: &[f64]) -> Hamiltonian {
        let space = sho_space(d.len());
        let poly = Polynomial::parse("x1").unwrap();
        let triplets = d
            .iter()
            .enumerate()
            .map(|(i, &v)| (i, i, Complex64::new(v, 0.0)))
            .collect();
        let h_i = SparseHermitian::from_triplets(d.len(), triplets);
        Hamiltonian::from_parts(space, poly, d.to_vec(), h_i, vec![Complex64::zero()])
            .unwrap()
    }

    #[test]
    fn integrate_constant_diagonal_phases() {
        let mut rng = Rng(0x9e3779b97f4a7c15);
        let dim = 64;
        let d: Vec<f64> = (0..dim).map(|_| rng.next_f64()).collect();
        let ham = constant_diag_ham(&d);
        let amp = 1.0 / (dim as f64).sqrt();
        let psi0 = vec![Complex64::new(amp, 0.0); dim];
        let big_t = 10.0;
        let out = integrate(&ham, &psi0, big_t, &EvolveConfig::default()).unwrap();
        for n in 0..dim {
            let expect = Complex64::from_polar(amp, -d[n] * big_t);
            let err = (out.psi[n] - expect).norm();
            assert!(err < 1e-6 * amp, "component {n}: phase error {err}");
        }
        assert!(out.norm_drift <= 1e-8);
    }

    #[test]
    fn integrate_zero_time_is_identity() {
        let d: Vec<f64> = (0..8).map(|n| n as f64).collect();
        let ham = constant_diag_ham(&d);
        let amp = 1.0 / 8.0f64.sqrt();
        let psi0 = vec![Complex64::new(amp, 0.0); 8];
        let out = integrate(&ham, &psi0, 0.0, &EvolveConfig::default()).unwrap();
        assert_eq!(out.psi, psi0);
        assert_eq!(out.steps, 0);
    }

    #[test]
    fn integrate_rejects_unnormalized() {
        let d = vec![0.0, 1.0];
        let ham = constant_diag_ham(&d);
        let psi0 = vec![Complex64::new(1.0, 0.0), Complex64::new(1.0, 0.0)];
        assert!(matches!(
            integrate(&ham, &psi0, 1.0, &EvolveConfig::default()),
            Err(Error::NotNormalized { .. })
        ));
    }

    #[test]
    fn integrate_random_hermitian_preserves_norm() {
        // dense pseudo-random Hermitian, scaled to keep the test fast
        let mut rng = Rng(42);
        let dim = 64;
        let scale = 0.03;
        let mut triplets = Vec::new();
        for r in 0..dim {
            for c in r..dim {
                let re = scale * (2.0 * rng.next_f64() - 1.0);
                let im = if c == r {
                    0.0
                } else {
                    scale * (2.0 * rng.next_f64() - 1.0)
                };
                triplets.push((r, c, Complex64::new(re, im)));
                if c != r {
                    triplets.push((c, r, Complex64::new(re, -im)));
                }
            }
        }
        let h_i = SparseHermitian::from_triplets(dim, triplets);
        assert!(h_i.hermiticity_defect() < 1e-15);
        let space = sho_space(dim);
        let poly = Polynomial::parse("0").unwrap().pad_vars(1).unwrap();
        let ham =
            Hamiltonian::from_parts(space, poly, vec![0.0; dim], h_i, vec![Complex64::zero()])
                .unwrap();
        let mut psi0: Vec<Complex64> = (0..dim)
            .map(|_| Complex64::new(rng.next_f64() - 0.5, rng.next_f64() - 0.5))
            .collect();
        let n = norm(&psi0);
        psi0.iter_mut().for_each(|c| *c /= n);
        let out = integrate(&ham, &psi0, 10.0, &EvolveConfig::default()).unwrap();
        assert!(
            out.norm_drift <= 1e-8,
            "norm drift {} after {} steps",
            out.norm_drift,
            out.steps
        );
    }

    #[test]
    fn measure_max_examples() {
        let space = isw_space(&[8]);
        let mut psi = vec![Complex64::zero(); 8];
        psi[3] = Complex64::new(1.0, 0.0);
        let (p, tuple) = measure_max(&psi, &space).unwrap();
        assert_eq!((p, tuple), (1.0, vec![3]));

        let space = isw_space(&[4]);
        let psi = vec![Complex64::new(0.5, 0.0); 4];
        let (p, tuple) = measure_max(&psi, &space).unwrap();
        assert_eq!((p, tuple), (0.25, vec![0]));

        // coherent ISW state: monotone dominance puts the argmax at 0
        let space = isw_space(&[32]);
        let z = [Complex64::new(1.0, 0.0)];
        let psi = crate::encode::initial_state(&space, &z, 1e-10).unwrap();
        let (_, tuple) = measure_max(&psi, &space).unwrap();
        assert_eq!(tuple, vec![0]);
    }

    #[test]
    fn measure_max_lexicographic_tie() {
        let space = isw_space(&[2, 2]);
        // equal weight on flat 1 = (1, 0) and flat 2 = (0, 1)
        let a = Complex64::new(std::f64::consts::FRAC_1_SQRT_2, 0.0);
        let psi = vec![Complex64::zero(), a, a, Complex64::zero()];
        let (_, tuple) = measure_max(&psi, &space).unwrap();
        assert_eq!(tuple, vec![0, 1]);
    }

    #[test]
    fn run_solvable_linear() {
        let space = isw_space(&[8]);
        let z_abs = auto_displacement(space.modes()[0].realization(), 0.30).unwrap();
        let z = vec![Complex64::new(z_abs, 0.0); 1];
        let p = Polynomial::parse("x1 - 1").unwrap();
        let cfg = EvolveConfig {
            t_max: 64.0,
            ..EvolveConfig::default()
        };
        let res = run_khqa(&p, &space, &z, &cfg, 1e-6).unwrap();
        assert!(res.halted);
        assert_eq!(res.verdict, Verdict::SolutionFound);
        assert_eq!(res.argmax_tuple, vec![1]);
        assert!(res.hd_value_at_argmax.is_zero());
        assert!(res.p_t > 0.5);
        // verdict soundness: the tuple is an exact root
        let point: Vec<u64> = res.argmax_tuple.iter().map(|&n| n as u64).collect();
        assert!(p.evaluate(&point).unwrap().is_zero());
        // and the oracle confirms solvability in the box
        let oracle = p.oracle_search(7).unwrap();
        assert!(oracle.solvable_in_box);
        assert!(!res.degenerate_ground);
        assert!(!res.truncation_warning);
        assert!(res.min_gap.unwrap() > 0.0);
        assert!(res.min_coupling.unwrap() > 0.0);
    }

    #[test]
    fn run_zero_polynomial_is_inconclusive() {
        // H_D = 0: every state is a ground state; the initial state is
        // stationary, so the loop cannot halt
        let space = isw_space(&[8]);
        let z = vec![Complex64::new(2.0, 0.0)];
        let p = Polynomial::parse("0").unwrap().pad_vars(1).unwrap();
        let cfg = EvolveConfig {
            t_initial: 0.5,
            t_max: 2.0,
            ..EvolveConfig::default()
        };
        let res = run_khqa(&p, &space, &z, &cfg, 1e-6).unwrap();
        assert!(!res.halted);
        assert_eq!(res.verdict, Verdict::Inconclusive);
        assert!(res.degenerate_ground);
        assert!(res.hd_value_at_argmax.is_zero());
    }

    #[test]
    fn run_rejects_dominant_initial_component() {
        let space = isw_space(&[8]);
        let p = Polynomial::parse("x1 - 1").unwrap();
        let cfg = EvolveConfig::default();
        // z = 0: P_0 = 1
        match run_khqa(
            &p,
            &space,
            &[Complex64::zero()],
            &cfg,
            1e-6,
        ) {
            Err(Error::PreconditionViolated { n: 0, p_n, .. }) => assert_eq!(p_n, 1.0),
            other => panic!("expected precondition violation, got {other:?}"),
        }
        // SHO alpha = 0.1: P_0 = e^{-0.01} > 1/2
        let sho = sho_space(8);
        match run_khqa(&p, &sho, &[Complex64::new(0.1, 0.0)], &cfg, 1e-6) {
            Err(Error::PreconditionViolated { n: 0, p_n, .. }) => {
                assert!((p_n - (-0.01f64).exp()).abs() < 1e-12)
            }
            other => panic!("expected precondition violation, got {other:?}"),
        }
    }

    #[test]
    fn diagnostics_diagonal_endpoint() {
        // h_i = diag(h_d) makes H_A constant: the gap equals the difference
        // of the two smallest distinct D^2 values and the coupling vanishes
        let d = [9.0, 4.0, 1.0, 0.0, 1.0, 4.0, 9.0, 16.0];
        let ham = constant_diag_ham(&d);
        let cfg = EvolveConfig::default();
        let diag = diagnostics(&ham, &cfg).unwrap();
        assert!((diag.min_gap - 1.0).abs() < 1e-9);
        assert!(diag.min_coupling < 1e-9);
    }

    #[test]
    fn diagnostics_solvable_instance_positive() {
        let space = isw_space(&[8]);
        let z = vec![Complex64::new(2.0, 0.0)];
        let p = Polynomial::parse("x1 - 1").unwrap();
        let ham = Hamiltonian::build(&p, space, &z).unwrap();
        let diag = diagnostics(&ham, &EvolveConfig::default()).unwrap();
        assert!(diag.min_gap > 0.0);
        assert!(diag.min_coupling > 0.0);
        assert!(!diag.degenerate_ground);
    }

    #[test]
    fn config_validation() {
        let mut cfg = EvolveConfig::default();
        cfg.t_growth = 1.0;
        assert!(cfg.validate().is_err());
        let mut cfg = EvolveConfig::default();
        cfg.halting_threshold = 1.0;
        assert!(cfg.validate().is_err());
        let mut cfg = EvolveConfig::default();
        cfg.t_initial = 100.0;
        cfg.t_max = 10.0;
        assert!(cfg.validate().is_err());
        assert!(EvolveConfig::default().validate().is_ok());
    }
}
