//! Self-check suite behind the `check` command: runs the operator and
//! coherent-state invariants for one realization at one truncation and
//! reports pass/fail per check.

use num_complex::Complex64;

use crate::algebra::{Realization, TruncatedMode};
use crate::coherent::{closed_form_bg, CoherentState};
use crate::error::Result;
use crate::report::{CheckLine, CheckReport, RealizationInfo, SCHEMA_VERSION};

pub fn check_suite(r: &Realization, dim: usize) -> Result<CheckReport> {
    let mode = TruncatedMode::new(*r, dim)?;
    let mut checks = Vec::new();

    // commutator closure below the truncation boundary
    {
        let km = mode.lowering();
        let kp = mode.raising();
        let comm = km.mul(&kp).sub(&kp.mul(&km));
        let mut worst = 0.0f64;
        let mut off_diag = false;
        for (row, col, v) in comm.iter() {
            if row != col {
                off_diag = true;
            } else if row + 2 <= dim {
                let g = r.char_g(row);
                worst = worst.max((v.re - g).abs() / g.abs().max(1.0));
            }
        }
        checks.push(CheckLine {
            name: "commutator_closure".into(),
            pass: !off_diag && worst <= 1e-12,
            detail: format!("max relative defect {worst:.3e} for n <= dim-2"),
        });
    }

    // factorized Hamiltonian diagonal
    {
        let h = mode.raising().mul(&mode.lowering());
        let mut worst = 0.0f64;
        for n in 0..dim {
            let f = r.char_f(n);
            worst = worst.max((h.get(n, n).re - f).abs() / f.abs().max(1.0));
        }
        checks.push(CheckLine {
            name: "ladder_factorization".into(),
            pass: worst <= 1e-12,
            detail: format!("max relative defect {worst:.3e}"),
        });
    }

    // adjointness of the ladder pair on the truncated grid
    {
        let pass = mode.raising() == mode.lowering().dagger();
        checks.push(CheckLine {
            name: "raising_is_adjoint".into(),
            pass,
            detail: String::from("K+ equals the conjugate transpose of K-"),
        });
    }

    // quadraticity of f
    {
        let d2 = |n: usize| r.char_f(n + 2) - 2.0 * r.char_f(n + 1) + r.char_f(n);
        let first = d2(0);
        let mut worst = 0.0f64;
        for n in 1..dim {
            worst = worst.max((d2(n) - first).abs());
        }
        checks.push(CheckLine {
            name: "quadratic_second_difference".into(),
            pass: worst <= 1e-9,
            detail: format!("constant {first}, max deviation {worst:.3e}"),
        });
    }

    // coherent state: recurrence vs closed form, and the eigenstate residual
    let z_probe = if r.is_perelomov() { 0.5 } else { 1.0 };
    match CoherentState::by_recurrence(*r, Complex64::new(z_probe, 0.0), dim, 1e-6) {
        Ok(state) => {
            let mut worst = 0.0f64;
            let mut compared = 0usize;
            for n in 0..dim {
                let cf = closed_form_bg(r, Complex64::new(z_probe, 0.0), n)?;
                if cf.norm_sqr() > 1e-14 {
                    worst = worst.max((state.amplitudes()[n] - cf).norm() / cf.norm());
                    compared += 1;
                }
            }
            checks.push(CheckLine {
                name: "recurrence_vs_closed_form".into(),
                pass: worst <= 1e-10,
                detail: format!(
                    "z = {z_probe}, {compared} amplitudes compared, max relative error {worst:.3e}"
                ),
            });
            let residual = state.eigenstate_residual()?;
            let bound = 1e-8f64.max(3.0 * state.tail_mass());
            checks.push(CheckLine {
                name: "eigenstate_residual".into(),
                pass: residual <= bound,
                detail: format!("residual {residual:.3e}, bound {bound:.3e}"),
            });
        }
        Err(e) => {
            checks.push(CheckLine {
                name: "coherent_construction".into(),
                pass: false,
                detail: format!("z = {z_probe}: {e}"),
            });
        }
    }

    let all_pass = checks.iter().all(|c| c.pass);
    Ok(CheckReport {
        schema: SCHEMA_VERSION,
        command: "check",
        realization: RealizationInfo::of(r),
        dim,
        all_pass,
        checks,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::Kind;

    #[test]
    fn suite_passes_for_reference_systems() {
        for kind in [
            Kind::Isw,
            Kind::Hp { bargmann_k: 0.5 },
            Kind::Ptp {
                lambda: 2.0,
                kappa: 2.0,
            },
        ] {
            let r = Realization::new(kind).unwrap();
            let report = check_suite(&r, 32).unwrap();
            assert!(
                report.all_pass,
                "{}: {:?}",
                r,
                report
                    .checks
                    .iter()
                    .filter(|c| !c.pass)
                    .map(|c| (&c.name, &c.detail))
                    .collect::<Vec<_>>()
            );
        }
    }
}
