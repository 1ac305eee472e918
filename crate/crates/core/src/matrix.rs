//! Dense complex matrices and the Hermitian eigensolver.
//!
//! Two-qubit operators use the ordering system ⊗ ancilla, with the left
//! Kronecker factor acting on the system. Single-qubit rows are listed
//! `|1⟩, |0⟩`, so the joint basis rows are `|11⟩, |10⟩, |01⟩, |00⟩`; see
//! [`crate::basis`] for the index map.

use std::fmt;
use std::ops::{Add, Index, IndexMut, Mul, Sub};

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::tol;

pub type C64 = Complex64;

pub const ZERO: C64 = C64::new(0.0, 0.0);
pub const ONE: C64 = C64::new(1.0, 0.0);
pub const I: C64 = C64::new(0.0, 1.0);

/// Selects which factor of a system ⊗ ancilla operator survives a partial trace.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Subsystem {
    /// The main system S (left Kronecker factor).
    System,
    /// The ancilla A (right Kronecker factor).
    Ancilla,
}

/// Square, dense, row-major complex matrix.
#[derive(Clone, PartialEq)]
pub struct ComplexMatrix {
    dim: usize,
    data: Vec<C64>,
}

impl ComplexMatrix {
    /// Builds a matrix from row-major entries, checking length and finiteness.
    pub fn new(dim: usize, data: Vec<C64>) -> Result<Self> {
        if dim == 0 {
            return Err(Error::EmptyMatrix);
        }
        if data.len() != dim * dim {
            return Err(Error::InvalidLength {
                dim,
                len: data.len(),
            });
        }
        if let Some(k) = data.iter().position(|z| !z.re.is_finite() || !z.im.is_finite()) {
            return Err(Error::NonFinite {
                row: k / dim,
                col: k % dim,
            });
        }
        Ok(Self { dim, data })
    }

    /// Builds a matrix from separate real and imaginary row arrays.
    pub fn from_parts(re: &[Vec<f64>], im: &[Vec<f64>]) -> Result<Self> {
        let dim = re.len();
        if im.len() != dim {
            return Err(Error::DimensionMismatch {
                expected: dim,
                found: im.len(),
            });
        }
        let mut data = Vec::with_capacity(dim * dim);
        for (r, i) in re.iter().zip(im) {
            if r.len() != dim || i.len() != dim {
                return Err(Error::InvalidLength {
                    dim,
                    len: r.len().max(i.len()) * dim,
                });
            }
            data.extend(r.iter().zip(i).map(|(&a, &b)| C64::new(a, b)));
        }
        Self::new(dim, data)
    }

    pub fn from_real_rows(rows: &[&[f64]]) -> Result<Self> {
        let dim = rows.len();
        let mut data = Vec::with_capacity(dim * dim);
        for row in rows {
            if row.len() != dim {
                return Err(Error::InvalidLength {
                    dim,
                    len: row.len() * dim,
                });
            }
            data.extend(row.iter().map(|&x| C64::new(x, 0.0)));
        }
        Self::new(dim, data)
    }

    pub fn from_fn(dim: usize, mut f: impl FnMut(usize, usize) -> C64) -> Self {
        let mut data = Vec::with_capacity(dim * dim);
        for i in 0..dim {
            for j in 0..dim {
                data.push(f(i, j));
            }
        }
        Self { dim, data }
    }

    pub fn zeros(dim: usize) -> Self {
        Self {
            dim,
            data: vec![ZERO; dim * dim],
        }
    }

    pub fn identity(dim: usize) -> Self {
        Self::from_fn(dim, |i, j| if i == j { ONE } else { ZERO })
    }

    pub fn diag(entries: &[C64]) -> Self {
        Self::from_fn(entries.len(), |i, j| if i == j { entries[i] } else { ZERO })
    }

    pub fn real_diag(entries: &[f64]) -> Self {
        Self::from_fn(entries.len(), |i, j| {
            if i == j {
                C64::new(entries[i], 0.0)
            } else {
                ZERO
            }
        })
    }

    /// `|ket⟩⟨bra|`.
    pub fn outer(ket: &[C64], bra: &[C64]) -> Result<Self> {
        if ket.len() != bra.len() {
            return Err(Error::DimensionMismatch {
                expected: ket.len(),
                found: bra.len(),
            });
        }
        Ok(Self::from_fn(ket.len(), |i, j| ket[i] * bra[j].conj()))
    }

    /// Rank-one projector `|v⟩⟨v|` (no normalization).
    pub fn projector(v: &[C64]) -> Self {
        Self::from_fn(v.len(), |i, j| v[i] * v[j].conj())
    }

    /// Matrix whose columns are the given vectors.
    pub fn from_columns(columns: &[Vec<C64>]) -> Result<Self> {
        let dim = columns.len();
        if let Some(bad) = columns.iter().find(|c| c.len() != dim) {
            return Err(Error::DimensionMismatch {
                expected: dim,
                found: bad.len(),
            });
        }
        Ok(Self::from_fn(dim, |i, j| columns[j][i]))
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn entries(&self) -> &[C64] {
        &self.data
    }

    pub fn get(&self, row: usize, col: usize) -> C64 {
        self.data[row * self.dim + col]
    }

    pub fn column(&self, col: usize) -> Vec<C64> {
        (0..self.dim).map(|i| self.get(i, col)).collect()
    }

    pub fn diagonal(&self) -> Vec<C64> {
        (0..self.dim).map(|i| self.get(i, i)).collect()
    }

    fn check_same_dim(&self, other: &Self) -> Result<()> {
        if self.dim != other.dim {
            return Err(Error::DimensionMismatch {
                expected: self.dim,
                found: other.dim,
            });
        }
        Ok(())
    }

    /// Standard matrix product `self · other`.
    pub fn multiply(&self, other: &Self) -> Result<Self> {
        self.check_same_dim(other)?;
        Ok(self.mul_unchecked(other))
    }

    fn mul_unchecked(&self, other: &Self) -> Self {
        let n = self.dim;
        let mut out = vec![ZERO; n * n];
        for i in 0..n {
            for k in 0..n {
                let a = self.data[i * n + k];
                if a == ZERO {
                    continue;
                }
                for j in 0..n {
                    out[i * n + j] += a * other.data[k * n + j];
                }
            }
        }
        Self { dim: n, data: out }
    }

    /// Conjugate transpose.
    pub fn adjoint(&self) -> Self {
        Self::from_fn(self.dim, |i, j| self.get(j, i).conj())
    }

    pub fn trace(&self) -> C64 {
        (0..self.dim).map(|i| self.get(i, i)).sum()
    }

    pub fn scale(&self, k: C64) -> Self {
        Self {
            dim: self.dim,
            data: self.data.iter().map(|&z| z * k).collect(),
        }
    }

    pub fn scale_real(&self, k: f64) -> Self {
        self.scale(C64::new(k, 0.0))
    }

    /// Kronecker product; `self` is the left (system) factor.
    pub fn kron(&self, other: &Self) -> Self {
        let (m, n) = (self.dim, other.dim);
        Self::from_fn(m * n, |r, c| {
            self.get(r / n, c / n) * other.get(r % n, c % n)
        })
    }

    /// Partial trace of a two-qubit operator, keeping `keep`.
    pub fn partial_trace(&self, keep: Subsystem) -> Result<Self> {
        if self.dim != 4 {
            return Err(Error::DimensionMismatch {
                expected: 4,
                found: self.dim,
            });
        }
        Ok(self.partial_trace_dims(2, 2, keep))
    }

    /// Partial trace for a `dim_s · dim_a` operator.
    pub fn partial_trace_dims(&self, dim_s: usize, dim_a: usize, keep: Subsystem) -> Self {
        debug_assert_eq!(self.dim, dim_s * dim_a);
        match keep {
            Subsystem::System => Self::from_fn(dim_s, |i, j| {
                (0..dim_a)
                    .map(|k| self.get(i * dim_a + k, j * dim_a + k))
                    .sum()
            }),
            Subsystem::Ancilla => Self::from_fn(dim_a, |k, l| {
                (0..dim_s)
                    .map(|i| self.get(i * dim_a + k, i * dim_a + l))
                    .sum()
            }),
        }
    }

    /// `A B - B A`.
    pub fn commutator(&self, other: &Self) -> Result<Self> {
        Ok(&self.multiply(other)? - &other.multiply(self)?)
    }

    /// `U A U†`.
    pub fn conjugate_by(&self, u: &Self) -> Result<Self> {
        u.multiply(self)?.multiply(&u.adjoint())
    }

    /// Largest entry-wise modulus.
    pub fn max_abs(&self) -> f64 {
        self.data.iter().map(|z| z.norm()).fold(0.0, f64::max)
    }

    /// Largest entry-wise modulus of `self - other`.
    pub fn max_abs_diff(&self, other: &Self) -> f64 {
        assert_eq!(self.dim, other.dim, "max_abs_diff on mismatched dimensions");
        self.data
            .iter()
            .zip(&other.data)
            .map(|(a, b)| (a - b).norm())
            .fold(0.0, f64::max)
    }

    pub fn frobenius_norm(&self) -> f64 {
        self.data.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt()
    }

    pub fn hermiticity_residual(&self) -> f64 {
        let mut worst = 0.0_f64;
        for i in 0..self.dim {
            for j in i..self.dim {
                worst = worst.max((self.get(i, j) - self.get(j, i).conj()).norm());
            }
        }
        worst
    }

    /// Max-norm deviation of `U†U` from the identity.
    pub fn unitarity_residual(&self) -> f64 {
        self.adjoint()
            .mul_unchecked(self)
            .max_abs_diff(&Self::identity(self.dim))
    }

    /// `(A + A†)/2`.
    pub fn hermitian_part(&self) -> Self {
        Self::from_fn(self.dim, |i, j| (self.get(i, j) + self.get(j, i).conj()) * 0.5)
    }

    /// `⟨v|A|v⟩`.
    pub fn expectation(&self, v: &[C64]) -> C64 {
        let mut acc = ZERO;
        for i in 0..self.dim {
            for j in 0..self.dim {
                acc += v[i].conj() * self.get(i, j) * v[j];
            }
        }
        acc
    }

    /// Full eigendecomposition of a Hermitian matrix by cyclic Jacobi rotations.
    pub fn eig_hermitian(&self) -> Result<HermitianEigenSystem> {
        let residual = self.hermiticity_residual();
        if residual > tol::VALIDATION {
            return Err(Error::NotHermitian { residual });
        }
        jacobi_eigen(self)
    }
}

impl Index<(usize, usize)> for ComplexMatrix {
    type Output = C64;
    fn index(&self, (i, j): (usize, usize)) -> &C64 {
        &self.data[i * self.dim + j]
    }
}

impl IndexMut<(usize, usize)> for ComplexMatrix {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut C64 {
        &mut self.data[i * self.dim + j]
    }
}

/// Panics on mismatched dimensions; use [`ComplexMatrix::multiply`] for the checked form.
impl Mul for &ComplexMatrix {
    type Output = ComplexMatrix;
    fn mul(self, rhs: &ComplexMatrix) -> ComplexMatrix {
        assert_eq!(self.dim, rhs.dim, "matrix product dimension mismatch");
        self.mul_unchecked(rhs)
    }
}

impl Add for &ComplexMatrix {
    type Output = ComplexMatrix;
    fn add(self, rhs: &ComplexMatrix) -> ComplexMatrix {
        assert_eq!(self.dim, rhs.dim, "matrix sum dimension mismatch");
        ComplexMatrix {
            dim: self.dim,
            data: self.data.iter().zip(&rhs.data).map(|(a, b)| a + b).collect(),
        }
    }
}

impl Sub for &ComplexMatrix {
    type Output = ComplexMatrix;
    fn sub(self, rhs: &ComplexMatrix) -> ComplexMatrix {
        assert_eq!(self.dim, rhs.dim, "matrix difference dimension mismatch");
        ComplexMatrix {
            dim: self.dim,
            data: self.data.iter().zip(&rhs.data).map(|(a, b)| a - b).collect(),
        }
    }
}

impl fmt::Debug for ComplexMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "ComplexMatrix({}x{}) [", self.dim, self.dim)?;
        for i in 0..self.dim {
            write!(f, "  ")?;
            for j in 0..self.dim {
                let z = self.get(i, j);
                write!(f, "{:+.6}{:+.6}i  ", z.re, z.im)?;
            }
            writeln!(f)?;
        }
        write!(f, "]")
    }
}

/// Pauli matrices in the `|1⟩, |0⟩` row ordering, so that `σ_z|1⟩ = +|1⟩`.
pub mod pauli {
    use super::{ComplexMatrix, I, ONE, ZERO};

    pub fn x() -> ComplexMatrix {
        ComplexMatrix::new(2, vec![ZERO, ONE, ONE, ZERO]).unwrap()
    }

    pub fn y() -> ComplexMatrix {
        ComplexMatrix::new(2, vec![ZERO, -I, I, ZERO]).unwrap()
    }

    pub fn z() -> ComplexMatrix {
        ComplexMatrix::real_diag(&[1.0, -1.0])
    }

    /// `[σ_x, σ_y, σ_z]`.
    pub fn all() -> [ComplexMatrix; 3] {
        [x(), y(), z()]
    }
}

/// Eigenvalues (ascending) and the unitary whose columns are the eigenvectors.
#[derive(Debug, Clone, PartialEq)]
pub struct HermitianEigenSystem {
    pub eigenvalues: Vec<f64>,
    pub eigenvectors: ComplexMatrix,
}

impl HermitianEigenSystem {
    pub fn dim(&self) -> usize {
        self.eigenvalues.len()
    }

    pub fn eigenvector(&self, k: usize) -> Vec<C64> {
        self.eigenvectors.column(k)
    }

    /// `V Λ V†`.
    pub fn reconstruct(&self) -> ComplexMatrix {
        let lambda = ComplexMatrix::real_diag(&self.eigenvalues);
        &(&self.eigenvectors * &lambda) * &self.eigenvectors.adjoint()
    }
}

fn off_diagonal_max(a: &ComplexMatrix) -> f64 {
    let n = a.dim();
    let mut worst = 0.0_f64;
    for p in 0..n {
        for q in (p + 1)..n {
            worst = worst.max(a.get(p, q).norm());
        }
    }
    worst
}

fn jacobi_eigen(input: &ComplexMatrix) -> Result<HermitianEigenSystem> {
    let n = input.dim();
    let mut a = input.hermitian_part();
    let mut v = ComplexMatrix::identity(n);
    let threshold = tol::JACOBI_OFF_DIAGONAL * input.max_abs().max(1.0);

    let mut sweeps = 0;
    while off_diagonal_max(&a) >= threshold {
        if sweeps == tol::JACOBI_MAX_SWEEPS {
            return Err(Error::NoConvergence {
                sweeps,
                residual: off_diagonal_max(&a),
            });
        }
        for p in 0..n {
            for q in (p + 1)..n {
                rotate(&mut a, &mut v, p, q);
            }
        }
        sweeps += 1;
    }

    let mut order: Vec<usize> = (0..n).collect();
    let diag: Vec<f64> = (0..n).map(|i| a.get(i, i).re).collect();
    // stable: degenerate eigenvalues keep the Jacobi output order
    order.sort_by(|&i, &j| diag[i].total_cmp(&diag[j]));

    let eigenvalues = order.iter().map(|&i| diag[i]).collect();
    let columns: Vec<Vec<C64>> = order
        .iter()
        .map(|&k| fix_phase(v.column(k)))
        .collect();
    let eigenvectors = ComplexMatrix::from_columns(&columns)?;
    Ok(HermitianEigenSystem {
        eigenvalues,
        eigenvectors,
    })
}

/// Annihilates `a[p][q]` with a complex Givens rotation and accumulates it into `v`.
fn rotate(a: &mut ComplexMatrix, v: &mut ComplexMatrix, p: usize, q: usize) {
    let apq = a.get(p, q);
    let mag = apq.norm();
    if mag == 0.0 {
        return;
    }
    let phase = apq / mag;
    let app = a.get(p, p).re;
    let aqq = a.get(q, q).re;

    // After removing the phase of a[p][q] the 2x2 block is real symmetric.
    let tau = (aqq - app) / (2.0 * mag);
    let t = if tau >= 0.0 {
        1.0 / (tau + (1.0 + tau * tau).sqrt())
    } else {
        -1.0 / (-tau + (1.0 + tau * tau).sqrt())
    };
    let c = 1.0 / (1.0 + t * t).sqrt();
    let s = t * c;

    // Rotation G restricted to (p, q): [[c, s], [-s e^{-iφ}, c e^{-iφ}]].
    let g_pp = C64::new(c, 0.0);
    let g_pq = C64::new(s, 0.0);
    let g_qp = phase.conj() * (-s);
    let g_qq = phase.conj() * c;

    let n = a.dim();
    // A <- A G (columns p, q)
    for k in 0..n {
        let akp = a.get(k, p);
        let akq = a.get(k, q);
        a[(k, p)] = akp * g_pp + akq * g_qp;
        a[(k, q)] = akp * g_pq + akq * g_qq;
    }
    // A <- G† A (rows p, q)
    for k in 0..n {
        let apk = a.get(p, k);
        let aqk = a.get(q, k);
        a[(p, k)] = g_pp.conj() * apk + g_qp.conj() * aqk;
        a[(q, k)] = g_pq.conj() * apk + g_qq.conj() * aqk;
    }
    a[(p, q)] = ZERO;
    a[(q, p)] = ZERO;
    a[(p, p)] = C64::new(a.get(p, p).re, 0.0);
    a[(q, q)] = C64::new(a.get(q, q).re, 0.0);

    for k in 0..n {
        let vkp = v.get(k, p);
        let vkq = v.get(k, q);
        v[(k, p)] = vkp * g_pp + vkq * g_qp;
        v[(k, q)] = vkp * g_pq + vkq * g_qq;
    }
}

/// Rotates the global phase so the first significant component is real and positive.
fn fix_phase(mut column: Vec<C64>) -> Vec<C64> {
    if let Some(pivot) = column.iter().find(|z| z.norm() > tol::PHASE_PIVOT).copied() {
        let rot = pivot.conj() / pivot.norm();
        for z in column.iter_mut() {
            *z *= rot;
        }
    }
    column
}
