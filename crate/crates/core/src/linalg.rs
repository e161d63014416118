//! Dense complex linear algebra for matrices of dimension 2, 3 and 4.
//!
//! Everything here is stored by value in a fixed 16-element buffer, so matrices
//! are `Copy` and never allocate. The eigensolver is a cyclic complex Jacobi
//! iteration, which is robust and accurate at these sizes.

use std::fmt;
use std::ops::{Add, AddAssign, Index, IndexMut, Mul, Neg, Sub};

use num_complex::Complex64;

use crate::error::{Error, Result};

/// Default convergence threshold on the off-diagonal Frobenius mass (relative
/// to `max(1, ‖H‖_max)`).
pub const DEFAULT_EIGEN_TOL: f64 = 1e-12;

/// Sweep budget of the Jacobi iteration.
pub const MAX_SWEEPS: usize = 50;

/// Hermiticity check applied before diagonalization.
pub const HERMITIAN_TOL: f64 = 1e-12;

const MAX_DIM: usize = 4;

pub(crate) const ZERO: Complex64 = Complex64::new(0.0, 0.0);
pub(crate) const ONE: Complex64 = Complex64::new(1.0, 0.0);
pub(crate) const I: Complex64 = Complex64::new(0.0, 1.0);

/// Which qubit of the two-qubit register an operation acts on.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Subsystem {
    /// Qubit 1, the parity (F) degree of freedom.
    First,
    /// Qubit 2, the spin (M) degree of freedom.
    Second,
}

impl Subsystem {
    pub fn index(self) -> usize {
        match self {
            Subsystem::First => 1,
            Subsystem::Second => 2,
        }
    }
}

impl TryFrom<u8> for Subsystem {
    type Error = Error;

    fn try_from(value: u8) -> Result<Self> {
        match value {
            1 => Ok(Subsystem::First),
            2 => Ok(Subsystem::Second),
            other => Err(Error::InvalidParams(format!(
                "subsystem must be 1 or 2, got {other}"
            ))),
        }
    }
}

/// A square complex matrix of dimension 2, 3 or 4, stored row-major.
#[derive(Clone, Copy, PartialEq)]
pub struct ComplexMatrix {
    dim: usize,
    data: [Complex64; MAX_DIM * MAX_DIM],
}

impl ComplexMatrix {
    fn check_dim(dim: usize) -> Result<()> {
        if (2..=MAX_DIM).contains(&dim) {
            Ok(())
        } else {
            Err(Error::UnsupportedDimension(dim))
        }
    }

    pub fn zeros(dim: usize) -> Result<Self> {
        Self::check_dim(dim)?;
        Ok(Self {
            dim,
            data: [ZERO; MAX_DIM * MAX_DIM],
        })
    }

    pub fn identity(dim: usize) -> Result<Self> {
        let mut m = Self::zeros(dim)?;
        for i in 0..dim {
            m[(i, i)] = ONE;
        }
        Ok(m)
    }

    /// Builds a matrix from `dim * dim` row-major entries.
    pub fn from_row_major(dim: usize, entries: &[Complex64]) -> Result<Self> {
        let mut m = Self::zeros(dim)?;
        if entries.len() != dim * dim {
            return Err(Error::DimensionMismatch {
                expected: dim * dim,
                found: entries.len(),
            });
        }
        for (k, z) in entries.iter().enumerate() {
            m[(k / dim, k % dim)] = *z;
        }
        Ok(m)
    }

    /// Builds a matrix from real row-major entries.
    pub fn from_real(dim: usize, entries: &[f64]) -> Result<Self> {
        let entries: Vec<Complex64> = entries.iter().map(|&x| Complex64::new(x, 0.0)).collect();
        Self::from_row_major(dim, &entries)
    }

    pub fn from_diagonal(diagonal: &[f64]) -> Result<Self> {
        let mut m = Self::zeros(diagonal.len())?;
        for (i, &d) in diagonal.iter().enumerate() {
            m[(i, i)] = Complex64::new(d, 0.0);
        }
        Ok(m)
    }

    /// The rank-one operator `|u⟩⟨v|`.
    pub fn outer(u: &[Complex64], v: &[Complex64]) -> Result<Self> {
        if u.len() != v.len() {
            return Err(Error::DimensionMismatch {
                expected: u.len(),
                found: v.len(),
            });
        }
        let mut m = Self::zeros(u.len())?;
        for (i, ui) in u.iter().enumerate() {
            for (j, vj) in v.iter().enumerate() {
                m[(i, j)] = ui * vj.conj();
            }
        }
        Ok(m)
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    /// Row-major entries.
    pub fn entries(&self) -> Vec<Complex64> {
        (0..self.dim * self.dim)
            .map(|k| self[(k / self.dim, k % self.dim)])
            .collect()
    }

    pub fn adjoint(&self) -> Self {
        let mut out = *self;
        for i in 0..self.dim {
            for j in 0..self.dim {
                out[(i, j)] = self[(j, i)].conj();
            }
        }
        out
    }

    pub fn transpose(&self) -> Self {
        let mut out = *self;
        for i in 0..self.dim {
            for j in 0..self.dim {
                out[(i, j)] = self[(j, i)];
            }
        }
        out
    }

    pub fn trace(&self) -> Complex64 {
        (0..self.dim).map(|i| self[(i, i)]).sum()
    }

    /// Largest entry modulus, `‖M‖_max`.
    pub fn max_abs(&self) -> f64 {
        self.iter().map(|z| z.norm()).fold(0.0, f64::max)
    }

    pub fn frobenius_norm(&self) -> f64 {
        self.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt()
    }

    /// `‖M − M†‖_max`.
    pub fn hermitian_deviation(&self) -> f64 {
        let mut dev: f64 = 0.0;
        for i in 0..self.dim {
            for j in i..self.dim {
                dev = dev.max((self[(i, j)] - self[(j, i)].conj()).norm());
            }
        }
        dev
    }

    pub fn is_hermitian(&self, tol: f64) -> bool {
        self.hermitian_deviation() <= tol
    }

    /// `‖self − other‖_max`. Panics if the dimensions differ.
    pub fn max_abs_diff(&self, other: &Self) -> f64 {
        assert_eq!(self.dim, other.dim, "dimension mismatch");
        self.iter()
            .zip(other.iter())
            .map(|(a, b)| (a - b).norm())
            .fold(0.0, f64::max)
    }

    pub fn commutator(&self, other: &Self) -> Self {
        *self * *other - *other * *self
    }

    pub fn scale(&self, factor: Complex64) -> Self {
        self.map(|z| z * factor)
    }

    /// Applies `f` to every entry.
    pub fn map(&self, f: impl Fn(Complex64) -> Complex64) -> Self {
        let mut out = *self;
        for i in 0..self.dim {
            for j in 0..self.dim {
                out[(i, j)] = f(self[(i, j)]);
            }
        }
        out
    }

    /// Entrywise (Hadamard) product.
    pub fn hadamard(&self, other: &Self) -> Self {
        assert_eq!(self.dim, other.dim, "dimension mismatch");
        let mut out = *self;
        for i in 0..self.dim {
            for j in 0..self.dim {
                out[(i, j)] = self[(i, j)] * other[(i, j)];
            }
        }
        out
    }

    /// Column `k` as a vector.
    pub fn column(&self, k: usize) -> Vec<Complex64> {
        (0..self.dim).map(|i| self[(i, k)]).collect()
    }

    pub fn apply(&self, v: &[Complex64]) -> Vec<Complex64> {
        assert_eq!(v.len(), self.dim, "dimension mismatch");
        (0..self.dim)
            .map(|i| (0..self.dim).map(|j| self[(i, j)] * v[j]).sum())
            .collect()
    }

    fn iter(&self) -> impl Iterator<Item = &Complex64> + '_ {
        (0..self.dim).flat_map(move |i| self.data[i * MAX_DIM..i * MAX_DIM + self.dim].iter())
    }

    fn require_dim(&self, dim: usize) -> Result<()> {
        if self.dim == dim {
            Ok(())
        } else {
            Err(Error::DimensionMismatch {
                expected: dim,
                found: self.dim,
            })
        }
    }
}

impl Index<(usize, usize)> for ComplexMatrix {
    type Output = Complex64;

    fn index(&self, (i, j): (usize, usize)) -> &Complex64 {
        debug_assert!(i < self.dim && j < self.dim);
        &self.data[i * MAX_DIM + j]
    }
}

impl IndexMut<(usize, usize)> for ComplexMatrix {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut Complex64 {
        debug_assert!(i < self.dim && j < self.dim);
        &mut self.data[i * MAX_DIM + j]
    }
}

impl Add for ComplexMatrix {
    type Output = ComplexMatrix;

    fn add(mut self, rhs: Self) -> Self {
        self += rhs;
        self
    }
}

impl AddAssign for ComplexMatrix {
    fn add_assign(&mut self, rhs: Self) {
        assert_eq!(self.dim, rhs.dim, "dimension mismatch");
        for i in 0..self.dim {
            for j in 0..self.dim {
                self[(i, j)] += rhs[(i, j)];
            }
        }
    }
}

impl Sub for ComplexMatrix {
    type Output = ComplexMatrix;

    fn sub(self, rhs: Self) -> Self {
        self + (-rhs)
    }
}

impl Neg for ComplexMatrix {
    type Output = ComplexMatrix;

    fn neg(self) -> Self {
        self.map(|z| -z)
    }
}

impl Mul for ComplexMatrix {
    type Output = ComplexMatrix;

    fn mul(self, rhs: Self) -> Self {
        assert_eq!(self.dim, rhs.dim, "dimension mismatch");
        let n = self.dim;
        let mut out = self;
        for i in 0..n {
            for j in 0..n {
                out[(i, j)] = (0..n).map(|k| self[(i, k)] * rhs[(k, j)]).sum();
            }
        }
        out
    }
}

impl Mul<f64> for ComplexMatrix {
    type Output = ComplexMatrix;

    fn mul(self, rhs: f64) -> Self {
        self.map(|z| z * rhs)
    }
}

impl Mul<Complex64> for ComplexMatrix {
    type Output = ComplexMatrix;

    fn mul(self, rhs: Complex64) -> Self {
        self.scale(rhs)
    }
}

impl fmt::Debug for ComplexMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "ComplexMatrix({}x{}) [", self.dim, self.dim)?;
        for i in 0..self.dim {
            write!(f, "  ")?;
            for j in 0..self.dim {
                let z = self[(i, j)];
                write!(f, "{:>10.6}{:+.6}i  ", z.re, z.im)?;
            }
            writeln!(f)?;
        }
        write!(f, "]")
    }
}

pub fn pauli_x() -> ComplexMatrix {
    ComplexMatrix::from_row_major(2, &[ZERO, ONE, ONE, ZERO]).expect("2x2")
}

pub fn pauli_y() -> ComplexMatrix {
    ComplexMatrix::from_row_major(2, &[ZERO, -I, I, ZERO]).expect("2x2")
}

pub fn pauli_z() -> ComplexMatrix {
    ComplexMatrix::from_real(2, &[1.0, 0.0, 0.0, -1.0]).expect("2x2")
}

pub fn identity2() -> ComplexMatrix {
    ComplexMatrix::identity(2).expect("2x2")
}

pub fn identity4() -> ComplexMatrix {
    ComplexMatrix::identity(4).expect("4x4")
}

/// The three Pauli matrices `(σ_x, σ_y, σ_z)`.
pub fn paulis() -> [ComplexMatrix; 3] {
    [pauli_x(), pauli_y(), pauli_z()]
}

/// Kronecker product `A ⊗ B` of two 2x2 matrices, in the basis order
/// `|00⟩, |01⟩, |10⟩, |11⟩`.
pub fn tensor_product(a: &ComplexMatrix, b: &ComplexMatrix) -> Result<ComplexMatrix> {
    a.require_dim(2)?;
    b.require_dim(2)?;
    let mut out = ComplexMatrix::zeros(4)?;
    for i in 0..2 {
        for j in 0..2 {
            for k in 0..2 {
                for l in 0..2 {
                    out[(2 * i + k, 2 * j + l)] = a[(i, j)] * b[(k, l)];
                }
            }
        }
    }
    Ok(out)
}

/// Kronecker product of 2x2 matrices that are known to be 2x2.
pub(crate) fn kron(a: &ComplexMatrix, b: &ComplexMatrix) -> ComplexMatrix {
    tensor_product(a, b).expect("operands are 2x2")
}

/// Eigenvalues in ascending order with orthonormal eigenvectors stored as the
/// columns of `vectors`.
#[derive(Debug, Clone, PartialEq)]
pub struct EigenSystem {
    values: Vec<f64>,
    vectors: ComplexMatrix,
}

impl EigenSystem {
    pub fn eigenvalues(&self) -> &[f64] {
        &self.values
    }

    pub fn eigenvector(&self, k: usize) -> Vec<Complex64> {
        self.vectors.column(k)
    }

    /// Matrix whose columns are the eigenvectors.
    pub fn eigenvectors(&self) -> &ComplexMatrix {
        &self.vectors
    }

    pub fn dim(&self) -> usize {
        self.values.len()
    }

    /// `Σ_k f(λ_k) v_k v_k†`.
    pub fn spectral_map(&self, f: impl Fn(f64) -> Complex64) -> ComplexMatrix {
        let n = self.dim();
        let mut out = ComplexMatrix::zeros(n).expect("valid dimension");
        for (k, &lambda) in self.values.iter().enumerate() {
            let w = f(lambda);
            for i in 0..n {
                let vi = self.vectors[(i, k)] * w;
                for j in 0..n {
                    out[(i, j)] += vi * self.vectors[(j, k)].conj();
                }
            }
        }
        out
    }

    /// `Σ_k λ_k v_k v_k†`, which should reproduce the source matrix.
    pub fn reconstruct(&self) -> ComplexMatrix {
        self.spectral_map(|l| Complex64::new(l, 0.0))
    }

    /// `exp(−iHt)` for the matrix this system was computed from.
    pub fn evolution_operator(&self, t: f64) -> ComplexMatrix {
        self.spectral_map(|l| Complex64::from_polar(1.0, -l * t))
    }

    pub fn min_eigenvalue(&self) -> f64 {
        self.values[0]
    }

    pub fn max_eigenvalue(&self) -> f64 {
        self.values[self.values.len() - 1]
    }
}

fn off_diagonal_mass(a: &ComplexMatrix) -> f64 {
    let n = a.dim();
    let mut sum = 0.0;
    for i in 0..n {
        for j in 0..n {
            if i != j {
                sum += a[(i, j)].norm_sqr();
            }
        }
    }
    sum.sqrt()
}

/// Annihilates `a[(p, q)]` with the unitary plane rotation
/// `J = [[c, s·e], [−s·e*, c]]` on columns `(p, q)`, updating `a ← J†aJ` and
/// `v ← vJ`.
fn jacobi_rotate(a: &mut ComplexMatrix, v: &mut ComplexMatrix, p: usize, q: usize) {
    let apq = a[(p, q)];
    let r = apq.norm();
    if r == 0.0 {
        return;
    }
    let e = apq / r;
    let app = a[(p, p)].re;
    let aqq = a[(q, q)].re;
    let theta = (aqq - app) / (2.0 * r);
    let t = if theta.is_infinite() {
        0.0
    } else {
        theta.signum() / (theta.abs() + (theta * theta + 1.0).sqrt())
    };
    // theta == 0 gives signum 1, i.e. a 45 degree rotation, which is correct.
    let c = 1.0 / (t * t + 1.0).sqrt();
    let s = t * c;
    let se = e * s;
    let se_conj = se.conj();
    let n = a.dim();

    for k in 0..n {
        let akp = a[(k, p)];
        let akq = a[(k, q)];
        a[(k, p)] = akp * c - akq * se_conj;
        a[(k, q)] = akp * se + akq * c;

        let vkp = v[(k, p)];
        let vkq = v[(k, q)];
        v[(k, p)] = vkp * c - vkq * se_conj;
        v[(k, q)] = vkp * se + vkq * c;
    }
    for k in 0..n {
        let apk = a[(p, k)];
        let aqk = a[(q, k)];
        a[(p, k)] = apk * c - aqk * se;
        a[(q, k)] = apk * se_conj + aqk * c;
    }

    a[(p, q)] = ZERO;
    a[(q, p)] = ZERO;
    a[(p, p)] = Complex64::new(a[(p, p)].re, 0.0);
    a[(q, q)] = Complex64::new(a[(q, q)].re, 0.0);
}

/// Rotates the phase of each column so that its largest-modulus component is
/// real and positive. Ties (within 1e-12) go to the lowest index.
fn fix_phases(vectors: &mut ComplexMatrix) {
    let n = vectors.dim();
    for k in 0..n {
        let largest = (0..n).map(|i| vectors[(i, k)].norm()).fold(0.0, f64::max);
        let Some(pivot) = (0..n).find(|&i| vectors[(i, k)].norm() >= largest - 1e-12) else {
            continue;
        };
        let z = vectors[(pivot, k)];
        if z.norm() == 0.0 {
            continue;
        }
        let phase = z.conj() / z.norm();
        for i in 0..n {
            vectors[(i, k)] *= phase;
        }
        vectors[(pivot, k)] = Complex64::new(vectors[(pivot, k)].re, 0.0);
    }
}

/// Full eigendecomposition of a Hermitian matrix by cyclic complex Jacobi
/// rotations, iterated until the off-diagonal Frobenius mass drops below
/// `tol · max(1, ‖H‖_max)`.
pub fn hermitian_eigensystem(h: &ComplexMatrix, tol: f64) -> Result<EigenSystem> {
    eigensystem_with_budget(h, tol, MAX_SWEEPS)
}

fn eigensystem_with_budget(h: &ComplexMatrix, tol: f64, max_sweeps: usize) -> Result<EigenSystem> {
    let scale = h.max_abs().max(1.0);
    let deviation = h.hermitian_deviation();
    if deviation > HERMITIAN_TOL * scale || deviation.is_nan() {
        return Err(Error::NotHermitian { deviation });
    }
    if !h.iter().all(|z| z.re.is_finite() && z.im.is_finite()) {
        return Err(Error::NumericDomain("matrix has non-finite entries".into()));
    }

    let n = h.dim();
    // Work on the exactly Hermitian part.
    let mut a = (*h + h.adjoint()) * 0.5;
    let mut v = ComplexMatrix::identity(n)?;
    let threshold = tol * scale;

    let mut converged = off_diagonal_mass(&a) <= threshold;
    let mut sweeps = 0;
    while !converged && sweeps < max_sweeps {
        for p in 0..n - 1 {
            for q in p + 1..n {
                jacobi_rotate(&mut a, &mut v, p, q);
            }
        }
        sweeps += 1;
        converged = off_diagonal_mass(&a) <= threshold;
    }
    if !converged {
        return Err(Error::NoConvergence {
            sweeps,
            off_diagonal: off_diagonal_mass(&a),
        });
    }

    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&i, &j| a[(i, i)].re.total_cmp(&a[(j, j)].re));
    let values = order.iter().map(|&i| a[(i, i)].re).collect();
    let mut vectors = ComplexMatrix::zeros(n)?;
    for (new, &old) in order.iter().enumerate() {
        for i in 0..n {
            vectors[(i, new)] = v[(i, old)];
        }
    }
    fix_phases(&mut vectors);

    Ok(EigenSystem { values, vectors })
}

/// Eigenvalues only, ascending.
pub fn hermitian_eigenvalues(h: &ComplexMatrix) -> Result<Vec<f64>> {
    Ok(hermitian_eigensystem(h, DEFAULT_EIGEN_TOL)?.values)
}

/// Partial transpose of a 4x4 two-qubit operator with respect to one qubit.
pub fn partial_transpose(rho: &ComplexMatrix, subsystem: Subsystem) -> Result<ComplexMatrix> {
    rho.require_dim(4)?;
    let mut out = *rho;
    for i1 in 0..2 {
        for i2 in 0..2 {
            for j1 in 0..2 {
                for j2 in 0..2 {
                    let (r, c) = match subsystem {
                        Subsystem::First => ((j1, i2), (i1, j2)),
                        Subsystem::Second => ((i1, j2), (j1, i2)),
                    };
                    out[(2 * i1 + i2, 2 * j1 + j2)] = rho[(2 * r.0 + r.1, 2 * c.0 + c.1)];
                }
            }
        }
    }
    Ok(out)
}

/// Trace norm `Σ|μ_i|` of a Hermitian matrix.
pub fn trace_norm_hermitian(m: &ComplexMatrix) -> Result<f64> {
    let values = hermitian_eigenvalues(m)?;
    Ok(values.iter().map(|x| x.abs()).sum())
}

/// `U(t) = exp(−iHt)`, built spectrally.
pub fn evolution_operator(h: &ComplexMatrix, t: f64) -> Result<ComplexMatrix> {
    if !t.is_finite() {
        return Err(Error::InvalidParams(format!("time must be finite, got {t}")));
    }
    Ok(hermitian_eigensystem(h, DEFAULT_EIGEN_TOL)?.evolution_operator(t))
}
