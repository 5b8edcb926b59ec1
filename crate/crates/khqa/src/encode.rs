//! Problem encoding on the k-mode tensor-product Fock space.
//!
//! The Diophantine polynomial becomes the diagonal problem Hamiltonian
//! `H_D = D(N_1, .., N_k)^2`, so its ground energy is zero exactly when the
//! equation has a nonnegative-integer solution inside the truncated box.
//! The initial Hamiltonian is the factorized sum
//!
//! ```text
//! H_I = sum_i (K+_i h(N_i) - conj(z_i)) (h(N_i) K-_i - z_i)
//! ```
//!
//! whose zero-eigenvalue ground state is the product of the per-mode
//! coherent states. The adiabatic generator is the linear blend
//! `H_A(t) = (1 - t/T) H_I + (t/T) H_D`.
//!
//! Diagonal values of H_D are computed in exact integer arithmetic and then
//! converted (with a finiteness check) to floats for evolution; ground-level
//! degeneracy is decided on the exact values.

use num_bigint::BigUint;
use num_complex::Complex64;
use num_traits::{ToPrimitive, Zero};

use crate::algebra::TruncatedMode;
use crate::coherent::CoherentState;
use crate::diophantine::Polynomial;
use crate::error::{Error, Result};

/// Cap on the flat dimension of a tensor space.
pub const MAX_TOTAL_DIM: usize = 1 << 22;

/// Truncated k-mode tensor space with a mixed-radix index codec.
///
/// Mode 0 is the fastest index: `flat = n_1 + dim_1 * (n_2 + dim_2 * ..)`.
#[derive(Clone, Debug)]
pub struct TensorSpace {
    modes: Vec<TruncatedMode>,
    strides: Vec<usize>,
    total_dim: usize,
}

impl TensorSpace {
    pub fn new(modes: Vec<TruncatedMode>) -> Result<Self> {
        if modes.is_empty() {
            return Err(Error::Config("tensor space needs at least one mode".into()));
        }
        let mut strides = Vec::with_capacity(modes.len());
        let mut total: u128 = 1;
        for m in &modes {
            strides.push(total as usize);
            total *= m.dim() as u128;
            if total > MAX_TOTAL_DIM as u128 {
                return Err(Error::SpaceTooLarge {
                    total,
                    cap: MAX_TOTAL_DIM as u128,
                });
            }
        }
        Ok(TensorSpace {
            modes,
            strides,
            total_dim: total as usize,
        })
    }

    pub fn modes(&self) -> &[TruncatedMode] {
        &self.modes
    }

    pub fn num_modes(&self) -> usize {
        self.modes.len()
    }

    pub fn dims(&self) -> Vec<usize> {
        self.modes.iter().map(|m| m.dim()).collect()
    }

    pub fn total_dim(&self) -> usize {
        self.total_dim
    }

    pub fn flat_index(&self, tuple: &[usize]) -> usize {
        debug_assert_eq!(tuple.len(), self.modes.len());
        tuple
            .iter()
            .zip(&self.strides)
            .map(|(&n, &s)| n * s)
            .sum()
    }

    pub fn decode(&self, flat: usize) -> Vec<usize> {
        debug_assert!(flat < self.total_dim);
        let mut rest = flat;
        self.modes
            .iter()
            .map(|m| {
                let n = rest % m.dim();
                rest /= m.dim();
                n
            })
            .collect()
    }

    /// True if any coordinate sits on the last basis state of its mode.
    pub fn on_boundary(&self, tuple: &[usize]) -> bool {
        tuple
            .iter()
            .zip(&self.modes)
            .any(|(&n, m)| n + 1 == m.dim())
    }
}

/// Sparse Hermitian matrix in CSR form over the flat tensor index.
#[derive(Clone, Debug)]
pub struct SparseHermitian {
    dim: usize,
    row_ptr: Vec<usize>,
    col_idx: Vec<usize>,
    values: Vec<Complex64>,
}

impl SparseHermitian {
    pub fn from_triplets(dim: usize, triplets: Vec<(usize, usize, Complex64)>) -> Self {
        let mut triplets = triplets;
        triplets.sort_by_key(|&(r, c, _)| (r, c));
        let mut row_ptr = Vec::with_capacity(dim + 1);
        let mut col_idx = Vec::new();
        let mut values = Vec::new();
        row_ptr.push(0);
        let mut row = 0;
        for (r, c, v) in triplets {
            assert!(r < dim && c < dim, "triplet index out of range");
            while row < r {
                row_ptr.push(col_idx.len());
                row += 1;
            }
            if col_idx.len() > row_ptr[row] && *col_idx.last().unwrap() == c {
                *values.last_mut().unwrap() += v;
            } else {
                col_idx.push(c);
                values.push(v);
            }
        }
        while row < dim {
            row_ptr.push(col_idx.len());
            row += 1;
        }
        SparseHermitian {
            dim,
            row_ptr,
            col_idx,
            values,
        }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn num_entries(&self) -> usize {
        self.values.len()
    }

    pub fn entry(&self, row: usize, col: usize) -> Complex64 {
        let lo = self.row_ptr[row];
        let hi = self.row_ptr[row + 1];
        match self.col_idx[lo..hi].binary_search(&col) {
            Ok(i) => self.values[lo + i],
            Err(_) => Complex64::new(0.0, 0.0),
        }
    }

    pub fn iter(&self) -> impl Iterator<Item = (usize, usize, Complex64)> + '_ {
        (0..self.dim).flat_map(move |r| {
            (self.row_ptr[r]..self.row_ptr[r + 1]).map(move |i| (r, self.col_idx[i], self.values[i]))
        })
    }

    /// Column indices and values of one row.
    pub fn row(&self, r: usize) -> (&[usize], &[Complex64]) {
        let lo = self.row_ptr[r];
        let hi = self.row_ptr[r + 1];
        (&self.col_idx[lo..hi], &self.values[lo..hi])
    }

    /// out = self * v.
    pub fn apply(&self, v: &[Complex64], out: &mut [Complex64]) {
        debug_assert_eq!(v.len(), self.dim);
        debug_assert_eq!(out.len(), self.dim);
        for r in 0..self.dim {
            let mut acc = Complex64::new(0.0, 0.0);
            for i in self.row_ptr[r]..self.row_ptr[r + 1] {
                acc += self.values[i] * v[self.col_idx[i]];
            }
            out[r] = acc;
        }
    }

    /// Largest row sum of absolute values; an upper estimate of the
    /// spectral norm for Hermitian matrices.
    pub fn max_row_abs_sum(&self) -> f64 {
        (0..self.dim)
            .map(|r| {
                (self.row_ptr[r]..self.row_ptr[r + 1])
                    .map(|i| self.values[i].norm())
                    .sum::<f64>()
            })
            .fold(0.0, f64::max)
    }

    /// Largest entrywise deviation from self-adjointness.
    pub fn hermiticity_defect(&self) -> f64 {
        let mut worst = 0.0f64;
        for (r, c, v) in self.iter() {
            let d = (v - self.entry(c, r).conj()).norm();
            worst = worst.max(d);
        }
        worst
    }

    pub fn to_dense(&self) -> nalgebra::DMatrix<Complex64> {
        let mut m = nalgebra::DMatrix::zeros(self.dim, self.dim);
        for (r, c, v) in self.iter() {
            m[(r, c)] = v;
        }
        m
    }
}

/// Exact diagonal of H_D together with its float image.
pub struct HdDiagonal {
    pub values: Vec<f64>,
    pub min_exact: BigUint,
    pub min_count: usize,
    pub min_first_flat: usize,
}

/// Diagonal of H_D: entry at the flat index of (n_1, .., n_k) is
/// D(n_1, .., n_k)^2, computed exactly and converted with a finiteness check.
pub fn encode_hd(p: &Polynomial, space: &TensorSpace) -> Result<HdDiagonal> {
    if p.num_vars() != space.num_modes() {
        return Err(Error::ArityMismatch {
            expected: space.num_modes(),
            found: p.num_vars(),
        });
    }
    let total = space.total_dim();
    let mut values = Vec::with_capacity(total);
    let mut min_exact: Option<BigUint> = None;
    let mut min_count = 0usize;
    let mut min_first = 0usize;
    for flat in 0..total {
        let tuple = space.decode(flat);
        let point: Vec<u64> = tuple.iter().map(|&n| n as u64).collect();
        let exact = p.evaluate_squared(&point)?;
        let as_f64 = exact.to_f64().filter(|v| v.is_finite()).ok_or_else(|| {
            Error::DiagonalOverflow {
                value: exact.to_string(),
                tuple: tuple.clone(),
            }
        })?;
        match &min_exact {
            Some(m) if exact > *m => {}
            Some(m) if exact == *m => min_count += 1,
            _ => {
                min_exact = Some(exact.clone());
                min_count = 1;
                min_first = flat;
            }
        }
        values.push(as_f64);
    }
    Ok(HdDiagonal {
        values,
        min_exact: min_exact.unwrap_or_else(BigUint::zero),
        min_count,
        min_first_flat: min_first,
    })
}

/// Sparse H_I on the tensor space: each mode contributes the lift of
/// `A_i^dag A_i` with `A_i = h(N) K- - z_i`, a tridiagonal single-mode block.
pub fn encode_hi(space: &TensorSpace, z: &[Complex64]) -> Result<SparseHermitian> {
    if z.len() != space.num_modes() {
        return Err(Error::ArityMismatch {
            expected: space.num_modes(),
            found: z.len(),
        });
    }
    let total = space.total_dim();
    let mut triplets = Vec::new();
    for (i, mode) in space.modes().iter().enumerate() {
        let a = mode
            .h_diag()
            .mul(&mode.lowering())
            .shift_diagonal(-z[i]);
        let m = a.dagger().mul(&a);
        let dim_i = mode.dim();
        let stride = space.strides[i];
        let outer = total / dim_i;
        for (r, c, v) in m.iter() {
            for o in 0..outer {
                let low = o % stride;
                let high = o / stride;
                let base = high * stride * dim_i + low;
                triplets.push((base + r * stride, base + c * stride, v));
            }
        }
    }
    Ok(SparseHermitian::from_triplets(total, triplets))
}

/// The adiabatic Hamiltonian at time t, materialized sparsely:
/// `(1 - t/T) H_I + (t/T) diag(H_D)`.
pub fn h_at(ham: &Hamiltonian, t: f64, big_t: f64) -> Result<SparseHermitian> {
    if !(big_t > 0.0) || !(0.0..=big_t).contains(&t) {
        return Err(Error::TimeOutOfRange { t, big_t });
    }
    let s = t / big_t;
    let mut triplets: Vec<(usize, usize, Complex64)> = ham
        .h_i
        .iter()
        .map(|(r, c, v)| (r, c, v * (1.0 - s)))
        .collect();
    for (j, &d) in ham.h_d.iter().enumerate() {
        triplets.push((j, j, Complex64::new(s * d, 0.0)));
    }
    Ok(SparseHermitian::from_triplets(ham.h_i.dim(), triplets))
}

/// Tensor product of the per-mode coherent states, renormalized to unit
/// norm on the truncated grid.
pub fn initial_state(
    space: &TensorSpace,
    z: &[Complex64],
    tail_tolerance: f64,
) -> Result<Vec<Complex64>> {
    let states = coherent_modes(space, z, tail_tolerance)?;
    Ok(tensor_state(&states))
}

/// Product state from per-mode amplitudes (mode 0 fastest), unit norm.
pub fn tensor_state(states: &[CoherentState]) -> Vec<Complex64> {
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
    let norm = v.iter().map(|c| c.norm_sqr()).sum::<f64>().sqrt();
    for c in &mut v {
        *c /= norm;
    }
    v
}

/// Per-mode coherent states for a displacement list.
pub fn coherent_modes(
    space: &TensorSpace,
    z: &[Complex64],
    tail_tolerance: f64,
) -> Result<Vec<CoherentState>> {
    if z.len() != space.num_modes() {
        return Err(Error::ArityMismatch {
            expected: space.num_modes(),
            found: z.len(),
        });
    }
    space
        .modes()
        .iter()
        .zip(z)
        .map(|(m, &zi)| CoherentState::by_recurrence(*m.realization(), zi, m.dim(), tail_tolerance))
        .collect()
}

/// Problem + initial Hamiltonian pair on a tensor space.
pub struct Hamiltonian {
    space: TensorSpace,
    polynomial: Polynomial,
    h_d: Vec<f64>,
    h_i: SparseHermitian,
    z: Vec<Complex64>,
    hd_min_exact: BigUint,
    hd_min_count: usize,
    hd_min_first_flat: usize,
}

impl Hamiltonian {
    pub fn build(p: &Polynomial, space: TensorSpace, z: &[Complex64]) -> Result<Self> {
        let hd = encode_hd(p, &space)?;
        let h_i = encode_hi(&space, z)?;
        Ok(Hamiltonian {
            space,
            polynomial: p.clone(),
            h_d: hd.values,
            h_i,
            z: z.to_vec(),
            hd_min_exact: hd.min_exact,
            hd_min_count: hd.min_count,
            hd_min_first_flat: hd.min_first_flat,
        })
    }

    /// Assemble from parts. Exact ground-level bookkeeping is recomputed
    /// from `polynomial`, which must describe `h_d`.
    pub fn from_parts(
        space: TensorSpace,
        polynomial: Polynomial,
        h_d: Vec<f64>,
        h_i: SparseHermitian,
        z: Vec<Complex64>,
    ) -> Result<Self> {
        if h_d.len() != space.total_dim() || h_i.dim() != space.total_dim() {
            return Err(Error::Config(
                "Hamiltonian parts disagree on the flat dimension".into(),
            ));
        }
        let hd = encode_hd(&polynomial, &space)?;
        Ok(Hamiltonian {
            space,
            polynomial,
            h_d,
            h_i,
            z,
            hd_min_exact: hd.min_exact,
            hd_min_count: hd.min_count,
            hd_min_first_flat: hd.min_first_flat,
        })
    }

    pub fn space(&self) -> &TensorSpace {
        &self.space
    }

    pub fn polynomial(&self) -> &Polynomial {
        &self.polynomial
    }

    pub fn h_d(&self) -> &[f64] {
        &self.h_d
    }

    pub fn h_i(&self) -> &SparseHermitian {
        &self.h_i
    }

    pub fn z(&self) -> &[Complex64] {
        &self.z
    }

    /// True when the exact minimum of the H_D diagonal is attained at more
    /// than one flat index; the halting criterion presumes a nondegenerate
    /// ground level.
    pub fn degenerate_ground(&self) -> bool {
        self.hd_min_count > 1
    }

    pub fn hd_min_exact(&self) -> &BigUint {
        &self.hd_min_exact
    }

    pub fn hd_min_count(&self) -> usize {
        self.hd_min_count
    }

    pub fn hd_min_tuple(&self) -> Vec<usize> {
        self.space.decode(self.hd_min_first_flat)
    }

    /// Exact D(tuple)^2.
    pub fn exact_hd_at(&self, tuple: &[usize]) -> Result<BigUint> {
        let point: Vec<u64> = tuple.iter().map(|&n| n as u64).collect();
        self.polynomial.evaluate_squared(&point)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{Kind, Realization};

    fn isw_space(dims: &[usize]) -> TensorSpace {
        let r = Realization::new(Kind::Isw).unwrap();
        TensorSpace::new(
            dims.iter()
                .map(|&d| TruncatedMode::new(r, d).unwrap())
                .collect(),
        )
        .unwrap()
    }

    #[test]
    fn codec_round_trip() {
        let space = isw_space(&[3, 4, 5]);
        assert_eq!(space.total_dim(), 60);
        for flat in 0..space.total_dim() {
            let tuple = space.decode(flat);
            assert_eq!(space.flat_index(&tuple), flat);
            assert!(tuple.iter().zip(space.dims()).all(|(&n, d)| n < d));
        }
    }

    #[test]
    fn hd_linear_example() {
        let p = Polynomial::parse("x1 - 3").unwrap();
        let space = isw_space(&[8]);
        let hd = encode_hd(&p, &space).unwrap();
        assert_eq!(hd.values, vec![9.0, 4.0, 1.0, 0.0, 1.0, 4.0, 9.0, 16.0]);
        assert_eq!(hd.min_count, 1);
        assert_eq!(hd.min_first_flat, 3);
        assert!(hd.min_exact.is_zero());
    }

    #[test]
    fn hd_zero_polynomial() {
        let p = Polynomial::parse("0").unwrap().pad_vars(1).unwrap();
        let space = isw_space(&[6]);
        let hd = encode_hd(&p, &space).unwrap();
        assert_eq!(hd.values, vec![0.0; 6]);
        assert_eq!(hd.min_count, 6);
    }

    #[test]
    fn hd_quadratic_example() {
        let p = Polynomial::parse("x1^2 + 1").unwrap();
        let space = isw_space(&[4]);
        let hd = encode_hd(&p, &space).unwrap();
        assert_eq!(hd.values, vec![1.0, 4.0, 25.0, 100.0]);
    }

    #[test]
    fn hi_single_mode_zero_displacement() {
        // z = 0: H_I = (h K-)^dag (h K-), diagonal h(n-1)^2 f(n) at |n>
        let space = isw_space(&[6]);
        let hi = encode_hi(&space, &[Complex64::new(0.0, 0.0)]).unwrap();
        let r = Realization::new(Kind::Isw).unwrap();
        for n in 0..6 {
            let expect = if n == 0 {
                0.0
            } else {
                let h = r.char_h(n - 1);
                h * h * r.char_f(n)
            };
            assert!((hi.entry(n, n).re - expect).abs() < 1e-12);
            for m in 0..6 {
                if m != n {
                    assert_eq!(hi.entry(n, m), Complex64::new(0.0, 0.0));
                }
            }
        }
    }

    #[test]
    fn hi_matches_shifted_oscillator() {
        // SHO: H_I = (a^dag - conj(alpha))(a - alpha), built densely from the
        // ladder matrices as an independent route.
        let r = Realization::new(Kind::Sho).unwrap();
        let mode = TruncatedMode::new(r, 8).unwrap();
        let space = TensorSpace::new(vec![mode]).unwrap();
        let alpha = Complex64::new(0.7, -0.3);
        let hi = encode_hi(&space, &[alpha]).unwrap();
        let a = mode.lowering().shift_diagonal(-alpha);
        let expect = a.dagger().mul(&a);
        for rix in 0..8 {
            for c in 0..8 {
                assert!((hi.entry(rix, c) - expect.get(rix, c)).norm() < 1e-12);
            }
        }
    }

    #[test]
    fn hi_is_hermitian() {
        let space = isw_space(&[5, 4]);
        let hi = encode_hi(
            &space,
            &[Complex64::new(1.0, 0.5), Complex64::new(0.3, -1.1)],
        )
        .unwrap();
        assert!(hi.hermiticity_defect() < 1e-12);
    }

    #[test]
    fn hi_positive_semidefinite() {
        let space = isw_space(&[5, 4]);
        let hi = encode_hi(
            &space,
            &[Complex64::new(1.0, 0.5), Complex64::new(0.3, -1.1)],
        )
        .unwrap();
        let dense = hi.to_dense();
        let eig = dense.symmetric_eigen();
        for &ev in eig.eigenvalues.iter() {
            assert!(ev > -1e-10, "negative eigenvalue {ev}");
        }
    }

    #[test]
    fn hi_annihilates_initial_state() {
        let space = isw_space(&[24, 24]);
        let z = [Complex64::new(1.2, 0.4), Complex64::new(0.9, -0.2)];
        let psi = initial_state(&space, &z, 1e-10).unwrap();
        let states = coherent_modes(&space, &z, 1e-10).unwrap();
        let max_tail = states
            .iter()
            .map(|s| s.tail_mass())
            .fold(0.0f64, f64::max);
        let hi = encode_hi(&space, &z).unwrap();
        let mut out = vec![Complex64::new(0.0, 0.0); space.total_dim()];
        hi.apply(&psi, &mut out);
        let norm = out.iter().map(|c| c.norm_sqr()).sum::<f64>().sqrt();
        let bound = 1e-8f64.max(3.0 * max_tail);
        assert!(norm <= bound, "H_I psi0 norm {norm} > {bound}");
    }

    #[test]
    fn initial_state_examples() {
        // k = 1 reduces to the single-mode coherent vector
        let space = isw_space(&[16]);
        let z = [Complex64::new(1.1, 0.0)];
        let psi = initial_state(&space, &z, 1e-10).unwrap();
        let s = CoherentState::by_recurrence(
            *space.modes()[0].realization(),
            z[0],
            16,
            1e-10,
        )
        .unwrap();
        let scale = (1.0 - s.tail_mass()).sqrt();
        for n in 0..16 {
            assert!((psi[n] - s.amplitudes()[n] / scale).norm() < 1e-12);
        }
        // k = 2 with z = 0 gives |0, 0>
        let space = isw_space(&[4, 4]);
        let psi = initial_state(
            &space,
            &[Complex64::new(0.0, 0.0), Complex64::new(0.0, 0.0)],
            1e-10,
        )
        .unwrap();
        assert_eq!(psi[0], Complex64::new(1.0, 0.0));
        assert!(psi[1..].iter().all(|c| c.norm() == 0.0));
        // unit norm
        let space = isw_space(&[8, 8]);
        let psi = initial_state(
            &space,
            &[Complex64::new(1.5, 0.2), Complex64::new(1.5, 0.2)],
            1e-4,
        )
        .unwrap();
        let norm: f64 = psi.iter().map(|c| c.norm_sqr()).sum();
        assert!((norm - 1.0).abs() < 1e-12);
    }

    #[test]
    fn h_at_endpoints_and_midpoint() {
        let p = Polynomial::parse("x1 - 1").unwrap();
        let space = isw_space(&[5]);
        let z = [Complex64::new(1.3, 0.0)];
        let ham = Hamiltonian::build(&p, space, &z).unwrap();
        let big_t = 7.0;
        let at0 = h_at(&ham, 0.0, big_t).unwrap();
        for (r, c, v) in at0.iter() {
            assert!((v - ham.h_i().entry(r, c)).norm() < 1e-15);
        }
        let at_t = h_at(&ham, big_t, big_t).unwrap();
        for r in 0..5 {
            for c in 0..5 {
                let expect = if r == c {
                    Complex64::new(ham.h_d()[r], 0.0)
                } else {
                    Complex64::new(0.0, 0.0)
                };
                assert!((at_t.entry(r, c) - expect).norm() < 1e-12);
            }
        }
        let mid = h_at(&ham, big_t / 2.0, big_t).unwrap();
        for r in 0..5 {
            for c in 0..5 {
                let expect = 0.5
                    * (ham.h_i().entry(r, c)
                        + if r == c {
                            Complex64::new(ham.h_d()[r], 0.0)
                        } else {
                            Complex64::new(0.0, 0.0)
                        });
                assert!((mid.entry(r, c) - expect).norm() < 1e-12);
            }
        }
        assert!(h_at(&ham, -0.1, big_t).is_err());
        assert!(h_at(&ham, 7.1, big_t).is_err());
    }

    #[test]
    fn hd_spectrum_matches_oracle_box() {
        // multiset of H_D diagonal values == multiset of D^2 over the box
        let p = Polynomial::parse("(x1 - 1)^2 + (x2 - 2)^2").unwrap();
        let space = isw_space(&[4, 4]);
        let hd = encode_hd(&p, &space).unwrap();
        let mut from_hd = hd.values.clone();
        let mut from_box = Vec::new();
        for n2 in 0..4u64 {
            for n1 in 0..4u64 {
                let v = p.evaluate(&[n1, n2]).unwrap();
                let v = (&v * &v).to_string().parse::<f64>().unwrap();
                from_box.push(v);
            }
        }
        from_hd.sort_by(f64::total_cmp);
        from_box.sort_by(f64::total_cmp);
        assert_eq!(from_hd, from_box);
        // and the oracle agrees on the minimum
        let verdict = p.oracle_search(3).unwrap();
        assert_eq!(
            verdict.min_value.to_string().parse::<f64>().unwrap(),
            from_hd[0]
        );
    }

    #[test]
    fn degeneracy_flag() {
        let p = Polynomial::parse("x1 + x2 - 3").unwrap();
        let space = isw_space(&[4, 4]);
        let z = [Complex64::new(2.0, 0.0), Complex64::new(2.0, 0.0)];
        let ham = Hamiltonian::build(&p, space, &z).unwrap();
        assert!(ham.degenerate_ground());
        assert_eq!(ham.hd_min_count(), 4);
        let q = Polynomial::parse("x1 - 3").unwrap();
        let ham2 = Hamiltonian::build(&q, isw_space(&[8]), &z[..1]).unwrap();
        assert!(!ham2.degenerate_ground());
        assert_eq!(ham2.hd_min_tuple(), vec![3]);
    }

    #[test]
    fn diagonal_overflow_reports_tuple() {
        let p = Polynomial::parse("x1^600 + 1").unwrap();
        let space = isw_space(&[32]);
        match encode_hd(&p, &space) {
            // (2^600)^2 is far past f64::MAX; 1^600 + 1 is not
            Err(Error::DiagonalOverflow { tuple, .. }) => assert_eq!(tuple, vec![2]),
            Err(other) => panic!("expected overflow, got {other:?}"),
            Ok(_) => panic!("expected overflow, got values"),
        }
    }
}
