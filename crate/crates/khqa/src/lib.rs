//! Adiabatic quantum search over Diophantine Hamiltonians on su(1,1) Fock
//! spaces.
//!
//! A Diophantine equation D(x1, .., xk) = 0 is encoded as the diagonal
//! Hamiltonian H_D = D(N_1, .., N_k)^2 over the number operators of k
//! truncated modes of a concrete quantum system (infinite square well,
//! cylindrical wells, Poschl-Teller, Holstein-Primakoff, Laguerre
//! oscillator, or the abstract positive discrete series). The system starts
//! in a product of generalized coherent states — the ground state of a
//! factorized initial Hamiltonian — and evolves under the linear blend
//! H_A(t) = (1 - t/T) H_I + (t/T) H_D for geometrically growing intervals
//! T until some number state carries more than half the probability. The
//! measured tuple is then tested exactly: D = 0 there means the equation
//! has a solution; otherwise no solution exists inside the truncated box.
//!
//! Truncation makes this a finite simulation: every verdict is relative to
//! the searched box, and a bounded brute-force oracle is available to
//! cross-check any run.

pub mod algebra;
pub mod checks;
pub mod coherent;
pub mod config;
pub mod diophantine;
pub mod encode;
pub mod error;
pub mod evolve;
pub mod report;

pub use algebra::{Kind, ModeOperator, Realization, TruncatedMode};
pub use coherent::{bessel_i, closed_form_bg, CoherentState, DensityReport};
pub use config::{DimsSpec, RunSpec, ZSpec};
pub use diophantine::{OracleVerdict, Polynomial};
pub use encode::{encode_hd, encode_hi, h_at, initial_state, Hamiltonian, TensorSpace};
pub use error::{Error, Result};
pub use evolve::{
    diagnostics, integrate, measure_max, run_khqa, Diagnostics, EvolveConfig, RunResult,
    Verdict,
};
