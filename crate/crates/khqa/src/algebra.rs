//! su(1,1) realizations and their ladder operators on truncated Fock spaces.
//!
//! Every supported quantum system is described by two characteristic
//! functions on occupation numbers:
//!
//! * `f(n)` — the squared ladder amplitude, `K- |n> = sqrt(f(n)) |n-1>` and
//!   `K+ |n> = sqrt(f(n+1)) |n+1>`, so `K+ K- |n> = f(n) |n>`. For all
//!   systems here `f` is (at most) quadratic in `n`, `f(0) = 0`, and
//!   `f(n) > 0` for `n >= 1`.
//! * `h(n)` — the nonlinearity entering the deformed lowering operator
//!   `h(N) K-` whose eigenstates are the generalized coherent states.
//!   `h = 1` gives the Barut-Girardello family; `h(n) = 1/(n + 2k)` gives
//!   the Perelomov/nonlinear family of the Holstein-Primakoff system.
//!
//! The diagonal generator is `K3 |n> = g(n) |n>` with `g(n) = f(n+1) - f(n)`,
//! which closes the algebra `[K-, K+] = K3` entrywise below the truncation
//! boundary.
//!
//! Characteristic functions per system:
//!
//! | system    | f(n)              | h(n)        |
//! |-----------|-------------------|-------------|
//! | SHO       | n                 | 1           |
//! | ISW       | n(n + 2)          | 1           |
//! | ICW       | n(n + 1.54)       | 1           |
//! | PCW       | n(n + 2.43)       | 1           |
//! | PTP(λ,κ)  | n(n + λ + κ)      | 1           |
//! | HP(k)     | n(n + 2k - 1)     | 1/(n + 2k)  |
//! | Laguerre  | n(n + α)          | 1           |
//! | su(1,1) k | n(n + 2k - 1)     | 1 or 1/(n + 2k) |
//!
//! The ICW/PCW spectra use the linear interpolations of the Bessel-function
//! zeros, alpha_n = 3.115 n + 2.405 (J0) and alpha_n = 3.14 n + 3.83 (J1);
//! the constants 1.54 and 2.43 below are the interpolated values, kept as
//! decimal literals rather than recomputed from true zeros.

use std::collections::BTreeMap;
use std::fmt;

use num_complex::Complex64;

use crate::error::{Error, Result};

/// Spectral offset of the infinite cylindrical well, from the J0-zero
/// interpolation.
pub const ICW_B: f64 = 1.54;
/// Spectral offset of the perturbed cylindrical well, from the J1-zero
/// interpolation.
pub const PCW_B: f64 = 2.43;

/// A concrete su(1,1) (or Weyl-Heisenberg, for `Sho`) system.
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum Kind {
    /// Simple harmonic oscillator, f(n) = n.
    Sho,
    /// Infinite square well, f(n) = n(n + 2).
    Isw,
    /// Infinite cylindrical well, f(n) = n(n + 1.54).
    Icw,
    /// Perturbed cylindrical well, f(n) = n(n + 2.43).
    Pcw,
    /// Poschl-Teller potential, f(n) = n(n + 2*eta - 1) with
    /// eta = (lambda + kappa + 1)/2; requires lambda, kappa > 1.
    Ptp { lambda: f64, kappa: f64 },
    /// Density-dependent Holstein-Primakoff system with Bargmann index k;
    /// carries the nonlinearity h(n) = 1/(n + 2k).
    Hp { bargmann_k: f64 },
    /// Laguerre oscillator, f(n) = n(n + alpha); requires alpha > -1.
    Laguerre { alpha: f64 },
    /// Positive discrete series with Bargmann index k, f(n) = n(2k + n - 1).
    /// `perelomov` switches h between 1 and 1/(n + 2k).
    GenericSu11 { bargmann_k: f64, perelomov: bool },
}

/// A validated su(1,1) realization together with its frequency scale.
///
/// `omega` rescales the physical energies `E_n = omega * f(n)`; it does not
/// enter the (dimensionless) adiabatic search and defaults to 1.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Realization {
    kind: Kind,
    omega: f64,
}

impl Realization {
    pub fn new(kind: Kind) -> Result<Self> {
        Self::with_omega(kind, 1.0)
    }

    pub fn with_omega(kind: Kind, omega: f64) -> Result<Self> {
        if !(omega.is_finite() && omega > 0.0) {
            return Err(Error::InvalidRealization(format!(
                "omega must be positive and finite, got {omega}"
            )));
        }
        match kind {
            Kind::Ptp { lambda, kappa } => {
                if !(lambda.is_finite() && kappa.is_finite() && lambda > 1.0 && kappa > 1.0) {
                    return Err(Error::InvalidRealization(format!(
                        "PTP requires lambda > 1 and kappa > 1, got lambda = {lambda}, kappa = {kappa}"
                    )));
                }
            }
            Kind::Hp { bargmann_k } | Kind::GenericSu11 { bargmann_k, .. } => {
                if !(bargmann_k.is_finite() && bargmann_k >= 0.5) {
                    return Err(Error::InvalidRealization(format!(
                        "Bargmann index must be >= 1/2, got {bargmann_k}"
                    )));
                }
            }
            Kind::Laguerre { alpha } => {
                if !(alpha.is_finite() && alpha > -1.0) {
                    return Err(Error::InvalidRealization(format!(
                        "Laguerre requires alpha > -1, got {alpha}"
                    )));
                }
            }
            Kind::Sho | Kind::Isw | Kind::Icw | Kind::Pcw => {}
        }
        Ok(Realization { kind, omega })
    }

    pub fn kind(&self) -> Kind {
        self.kind
    }

    pub fn omega(&self) -> f64 {
        self.omega
    }

    /// Squared ladder amplitude f(n); f(0) = 0 for every system.
    pub fn char_f(&self, n: usize) -> f64 {
        let n = n as f64;
        match self.kind {
            Kind::Sho => n,
            Kind::Isw => n * (n + 2.0),
            Kind::Icw => n * (n + ICW_B),
            Kind::Pcw => n * (n + PCW_B),
            // 2*eta - 1 with eta = (lambda + kappa + 1)/2
            Kind::Ptp { lambda, kappa } => n * (n + lambda + kappa),
            Kind::Hp { bargmann_k } | Kind::GenericSu11 { bargmann_k, .. } => {
                n * (n + 2.0 * bargmann_k - 1.0)
            }
            Kind::Laguerre { alpha } => n * (n + alpha),
        }
    }

    /// Coherent-state nonlinearity h(n); identity except for the
    /// Perelomov-type families.
    pub fn char_h(&self, n: usize) -> f64 {
        match self.kind {
            Kind::Hp { bargmann_k } => 1.0 / (n as f64 + 2.0 * bargmann_k),
            Kind::GenericSu11 {
                bargmann_k,
                perelomov: true,
            } => 1.0 / (n as f64 + 2.0 * bargmann_k),
            _ => 1.0,
        }
    }

    /// Diagonal of K3: g(n) = f(n+1) - f(n).
    pub fn char_g(&self, n: usize) -> f64 {
        self.char_f(n + 1) - self.char_f(n)
    }

    /// True for the coherent-state families defined only on the unit disk.
    pub fn is_perelomov(&self) -> bool {
        matches!(
            self.kind,
            Kind::Hp { .. } | Kind::GenericSu11 { perelomov: true, .. }
        )
    }

    /// Short lowercase label used in reports and CLI output.
    pub fn label(&self) -> String {
        match self.kind {
            Kind::Sho => "sho".into(),
            Kind::Isw => "isw".into(),
            Kind::Icw => "icw".into(),
            Kind::Pcw => "pcw".into(),
            Kind::Ptp { lambda, kappa } => format!("ptp(lambda={lambda}, kappa={kappa})"),
            Kind::Hp { bargmann_k } => format!("hp(k={bargmann_k})"),
            Kind::Laguerre { alpha } => format!("laguerre(alpha={alpha})"),
            Kind::GenericSu11 {
                bargmann_k,
                perelomov,
            } => format!("su11(k={bargmann_k}, perelomov={perelomov})"),
        }
    }
}

impl fmt::Display for Realization {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.label())
    }
}

/// A single mode truncated to the basis |0> .. |dim-1>.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct TruncatedMode {
    realization: Realization,
    dim: usize,
}

impl TruncatedMode {
    pub fn new(realization: Realization, dim: usize) -> Result<Self> {
        if dim < 2 {
            return Err(Error::DimTooSmall(dim));
        }
        Ok(TruncatedMode { realization, dim })
    }

    pub fn realization(&self) -> &Realization {
        &self.realization
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    /// Lowering operator K-: entry (n-1, n) = sqrt(f(n)) for 1 <= n < dim.
    /// Column 0 is empty since K- annihilates |0>.
    pub fn lowering(&self) -> ModeOperator {
        let mut op = ModeOperator::zeros(self.dim);
        for n in 1..self.dim {
            op.insert(n - 1, n, Complex64::new(self.realization.char_f(n).sqrt(), 0.0));
        }
        op
    }

    /// Raising operator K+: entry (n+1, n) = sqrt(f(n+1)) for n < dim-1.
    /// The outflow from the top basis state is dropped, so K+ equals the
    /// conjugate transpose of K- on the truncated grid.
    pub fn raising(&self) -> ModeOperator {
        let mut op = ModeOperator::zeros(self.dim);
        for n in 0..self.dim - 1 {
            op.insert(n + 1, n, Complex64::new(self.realization.char_f(n + 1).sqrt(), 0.0));
        }
        op
    }

    /// Number operator, diag(0, 1, .., dim-1).
    pub fn number(&self) -> ModeOperator {
        ModeOperator::diagonal(
            (0..self.dim)
                .map(|n| Complex64::new(n as f64, 0.0))
                .collect(),
        )
    }

    /// Diagonal generator K3 = diag(g(n)).
    pub fn k3(&self) -> ModeOperator {
        ModeOperator::diagonal(
            (0..self.dim)
                .map(|n| Complex64::new(self.realization.char_g(n), 0.0))
                .collect(),
        )
    }

    /// Nonlinearity as a diagonal operator, diag(h(n)).
    pub fn h_diag(&self) -> ModeOperator {
        ModeOperator::diagonal(
            (0..self.dim)
                .map(|n| Complex64::new(self.realization.char_h(n), 0.0))
                .collect(),
        )
    }
}

/// Sparse operator on a single truncated mode, keyed by (row, col).
///
/// All construction here yields real entries, but downstream evolution
/// multiplies by complex phases, so entries are stored complex throughout.
#[derive(Clone, Debug, PartialEq)]
pub struct ModeOperator {
    dim: usize,
    entries: BTreeMap<(usize, usize), Complex64>,
}

impl ModeOperator {
    pub fn zeros(dim: usize) -> Self {
        ModeOperator {
            dim,
            entries: BTreeMap::new(),
        }
    }

    pub fn diagonal(diag: Vec<Complex64>) -> Self {
        let dim = diag.len();
        let mut op = ModeOperator::zeros(dim);
        for (n, v) in diag.into_iter().enumerate() {
            op.insert(n, n, v);
        }
        op
    }

    pub fn identity(dim: usize) -> Self {
        Self::diagonal(vec![Complex64::new(1.0, 0.0); dim])
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    /// Insert an entry, dropping exact zeros. Panics if out of range.
    pub fn insert(&mut self, row: usize, col: usize, value: Complex64) {
        assert!(row < self.dim && col < self.dim, "operator index out of range");
        if value == Complex64::new(0.0, 0.0) {
            self.entries.remove(&(row, col));
        } else {
            self.entries.insert((row, col), value);
        }
    }

    pub fn get(&self, row: usize, col: usize) -> Complex64 {
        self.entries
            .get(&(row, col))
            .copied()
            .unwrap_or(Complex64::new(0.0, 0.0))
    }

    pub fn iter(&self) -> impl Iterator<Item = (usize, usize, Complex64)> + '_ {
        self.entries.iter().map(|(&(r, c), &v)| (r, c, v))
    }

    pub fn num_entries(&self) -> usize {
        self.entries.len()
    }

    /// Matrix-vector product.
    pub fn apply(&self, v: &[Complex64]) -> Vec<Complex64> {
        assert_eq!(v.len(), self.dim);
        let mut out = vec![Complex64::new(0.0, 0.0); self.dim];
        for (&(r, c), &a) in &self.entries {
            out[r] += a * v[c];
        }
        out
    }

    /// Conjugate transpose.
    pub fn dagger(&self) -> Self {
        let mut out = ModeOperator::zeros(self.dim);
        for (&(r, c), &a) in &self.entries {
            out.insert(c, r, a.conj());
        }
        out
    }

    /// Sparse product self * rhs.
    pub fn mul(&self, rhs: &Self) -> Self {
        assert_eq!(self.dim, rhs.dim);
        let mut rows_of_rhs: Vec<Vec<(usize, Complex64)>> = vec![Vec::new(); self.dim];
        for (&(r, c), &b) in &rhs.entries {
            rows_of_rhs[r].push((c, b));
        }
        let mut acc: BTreeMap<(usize, usize), Complex64> = BTreeMap::new();
        for (&(r, k), &a) in &self.entries {
            for &(c, b) in &rows_of_rhs[k] {
                *acc.entry((r, c)).or_insert(Complex64::new(0.0, 0.0)) += a * b;
            }
        }
        let mut out = ModeOperator::zeros(self.dim);
        for ((r, c), v) in acc {
            out.insert(r, c, v);
        }
        out
    }

    /// self - rhs.
    pub fn sub(&self, rhs: &Self) -> Self {
        assert_eq!(self.dim, rhs.dim);
        let mut out = self.clone();
        for (&(r, c), &b) in &rhs.entries {
            out.insert(r, c, out.get(r, c) - b);
        }
        out
    }

    /// self + c * I.
    pub fn shift_diagonal(&self, c: Complex64) -> Self {
        let mut out = self.clone();
        for n in 0..self.dim {
            out.insert(n, n, out.get(n, n) + c);
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn iswr() -> Realization {
        Realization::new(Kind::Isw).unwrap()
    }

    fn all_realizations() -> Vec<Realization> {
        vec![
            Realization::new(Kind::Sho).unwrap(),
            iswr(),
            Realization::new(Kind::Icw).unwrap(),
            Realization::new(Kind::Pcw).unwrap(),
            Realization::new(Kind::Ptp {
                lambda: 2.0,
                kappa: 2.0,
            })
            .unwrap(),
            Realization::new(Kind::Hp { bargmann_k: 0.5 }).unwrap(),
            Realization::new(Kind::Hp { bargmann_k: 1.0 }).unwrap(),
            Realization::new(Kind::Laguerre { alpha: 2.0 }).unwrap(),
            Realization::new(Kind::GenericSu11 {
                bargmann_k: 1.5,
                perelomov: false,
            })
            .unwrap(),
            Realization::new(Kind::GenericSu11 {
                bargmann_k: 1.0,
                perelomov: true,
            })
            .unwrap(),
        ]
    }

    #[test]
    fn char_f_values() {
        assert_eq!(iswr().char_f(3), 15.0);
        for r in all_realizations() {
            assert_eq!(r.char_f(0), 0.0, "{}: lowest state not annihilated", r);
        }
        // PTP lambda = kappa = 2: eta = 2.5, f(1) = 1 * (1 + 4)
        let ptp = Realization::new(Kind::Ptp {
            lambda: 2.0,
            kappa: 2.0,
        })
        .unwrap();
        assert_eq!(ptp.char_f(1), 5.0);
        // HP k = 1: f(2) = 2 * (2k + 2 - 1) = 2 * 3
        let hp = Realization::new(Kind::Hp { bargmann_k: 1.0 }).unwrap();
        assert_eq!(hp.char_f(2), 6.0);
    }

    #[test]
    fn char_f_positive_above_zero() {
        for r in all_realizations() {
            for n in 1..64 {
                assert!(r.char_f(n) > 0.0, "{}: f({n}) not positive", r);
            }
        }
    }

    #[test]
    fn char_h_values() {
        assert_eq!(iswr().char_h(7), 1.0);
        let hp1 = Realization::new(Kind::Hp { bargmann_k: 1.0 }).unwrap();
        assert_eq!(hp1.char_h(0), 0.5);
        let hp_half = Realization::new(Kind::Hp { bargmann_k: 0.5 }).unwrap();
        assert_eq!(hp_half.char_h(3), 0.25);
        for r in all_realizations() {
            for n in 0..32 {
                assert!(r.char_h(n) > 0.0);
            }
        }
    }

    #[test]
    fn char_g_values() {
        // ISW: g(n) = 2n + 3
        assert_eq!(iswr().char_g(5), 13.0);
        let sho = Realization::new(Kind::Sho).unwrap();
        for n in 0..20 {
            assert_eq!(sho.char_g(n), 1.0);
        }
        // Laguerre alpha = 2: f(5) - f(4) = 35 - 24
        let lag = Realization::new(Kind::Laguerre { alpha: 2.0 }).unwrap();
        assert_eq!(lag.char_g(4), 11.0);
    }

    #[test]
    fn parameter_validation() {
        assert!(Realization::new(Kind::Ptp {
            lambda: 1.0,
            kappa: 2.0
        })
        .is_err());
        assert!(Realization::new(Kind::Ptp {
            lambda: 2.0,
            kappa: 0.5
        })
        .is_err());
        assert!(Realization::new(Kind::Hp { bargmann_k: 0.4 }).is_err());
        assert!(Realization::new(Kind::Laguerre { alpha: -1.0 }).is_err());
        assert!(Realization::with_omega(Kind::Isw, 0.0).is_err());
        assert!(Realization::with_omega(Kind::Isw, f64::NAN).is_err());
        assert!(TruncatedMode::new(iswr(), 1).is_err());
    }

    #[test]
    fn lowering_matrix_isw() {
        let m = TruncatedMode::new(iswr(), 3).unwrap();
        let km = m.lowering();
        assert_eq!(km.num_entries(), 2);
        assert!((km.get(0, 1).re - 3.0_f64.sqrt()).abs() < 1e-15);
        assert!((km.get(1, 2).re - 8.0_f64.sqrt()).abs() < 1e-15);
    }

    #[test]
    fn lowering_matrix_sho() {
        let sho = Realization::new(Kind::Sho).unwrap();
        let m = TruncatedMode::new(sho, 2).unwrap();
        let km = m.lowering();
        assert_eq!(km.num_entries(), 1);
        assert_eq!(km.get(0, 1), Complex64::new(1.0, 0.0));
    }

    #[test]
    fn lowering_annihilates_ground() {
        for r in all_realizations() {
            let m = TruncatedMode::new(r, 8).unwrap();
            let km = m.lowering();
            for row in 0..8 {
                assert_eq!(km.get(row, 0), Complex64::new(0.0, 0.0));
            }
        }
    }

    #[test]
    fn raising_matrix() {
        let m = TruncatedMode::new(iswr(), 3).unwrap();
        let kp = m.raising();
        assert!((kp.get(1, 0).re - 3.0_f64.sqrt()).abs() < 1e-15);
        assert!((kp.get(2, 1).re - 8.0_f64.sqrt()).abs() < 1e-15);
        let sho = Realization::new(Kind::Sho).unwrap();
        let kp2 = TruncatedMode::new(sho, 2).unwrap().raising();
        assert_eq!(kp2.get(1, 0), Complex64::new(1.0, 0.0));
    }

    #[test]
    fn raising_is_adjoint_of_lowering() {
        for r in all_realizations() {
            let m = TruncatedMode::new(r, 16).unwrap();
            assert_eq!(m.raising(), m.lowering().dagger());
        }
    }

    #[test]
    fn number_operator() {
        let m = TruncatedMode::new(iswr(), 4).unwrap();
        let n_op = m.number();
        for n in 0..4 {
            assert_eq!(n_op.get(n, n), Complex64::new(n as f64, 0.0));
        }
        // ISW: N = (1/2)(K3 - 3)
        let m = TruncatedMode::new(iswr(), 12).unwrap();
        let k3 = m.k3();
        for n in 0..12 {
            let via_k3 = 0.5 * (k3.get(n, n).re - 3.0);
            assert!((via_k3 - n as f64).abs() < 1e-12);
        }
        // ICW: N = (1/2)(K3 - (b + 1)) with b = 1.54
        let icw = Realization::new(Kind::Icw).unwrap();
        let m = TruncatedMode::new(icw, 12).unwrap();
        let k3 = m.k3();
        for n in 0..12 {
            let via_k3 = 0.5 * (k3.get(n, n).re - (ICW_B + 1.0));
            assert!((via_k3 - n as f64).abs() < 1e-12);
        }
    }

    #[test]
    fn commutator_closure() {
        // [K-, K+] = K3 entrywise for n <= dim - 2; the top diagonal entry
        // is a truncation artifact and excluded.
        for r in all_realizations() {
            let dim = 16;
            let m = TruncatedMode::new(r, dim).unwrap();
            let km = m.lowering();
            let kp = m.raising();
            let comm = km.mul(&kp).sub(&kp.mul(&km));
            for (row, col, v) in comm.iter() {
                if row == col && row <= dim - 2 {
                    let g = r.char_g(row);
                    assert!(
                        (v.re - g).abs() <= 1e-12 * g.abs().max(1.0),
                        "{}: commutator diag {row}: {} vs g = {g}",
                        r,
                        v.re
                    );
                    assert_eq!(v.im, 0.0);
                } else if row != col {
                    panic!("{}: off-diagonal commutator entry at ({row}, {col})", r);
                }
            }
        }
    }

    #[test]
    fn factorized_hamiltonian_diagonal() {
        // K+ K- |n> = f(n) |n> for every n below the truncation, including
        // the top state.
        for r in all_realizations() {
            let dim = 16;
            let m = TruncatedMode::new(r, dim).unwrap();
            let h = m.raising().mul(&m.lowering());
            for n in 0..dim {
                let f = r.char_f(n);
                assert!(
                    (h.get(n, n).re - f).abs() <= 1e-12 * f.abs().max(1.0),
                    "{}: K+K- diag {n}",
                    r
                );
            }
        }
    }

    #[test]
    fn sho_degenerates_to_annihilation() {
        let sho = Realization::new(Kind::Sho).unwrap();
        let m = TruncatedMode::new(sho, 10).unwrap();
        let km = m.lowering();
        for n in 1..10 {
            assert!((km.get(n - 1, n).re - (n as f64).sqrt()).abs() < 1e-15);
        }
    }

    #[test]
    fn quadratic_second_difference_constant() {
        for r in all_realizations() {
            let d2 = |n: usize| r.char_f(n + 2) - 2.0 * r.char_f(n + 1) + r.char_f(n);
            let first = d2(0);
            for n in 1..40 {
                assert!(
                    (d2(n) - first).abs() < 1e-9,
                    "{}: second difference not constant at n = {n}",
                    r
                );
            }
        }
    }

    #[test]
    fn mode_operator_algebra() {
        let mut a = ModeOperator::zeros(3);
        a.insert(0, 1, Complex64::new(2.0, 1.0));
        let ad = a.dagger();
        assert_eq!(ad.get(1, 0), Complex64::new(2.0, -1.0));
        let v = vec![
            Complex64::new(0.0, 0.0),
            Complex64::new(1.0, 0.0),
            Complex64::new(0.0, 0.0),
        ];
        let av = a.apply(&v);
        assert_eq!(av[0], Complex64::new(2.0, 1.0));
        let shifted = a.shift_diagonal(Complex64::new(-1.0, 0.0));
        assert_eq!(shifted.get(2, 2), Complex64::new(-1.0, 0.0));
        assert_eq!(shifted.get(0, 1), Complex64::new(2.0, 1.0));
    }
}
