//! Dense complex linear algebra for 2×2 and 4×4 matrices.
//!
//! Two-qubit operators use the basis ordering `{|11⟩, |10⟩, |01⟩, |00⟩}`.
//! Single-qubit operators accordingly order the basis as `(|1⟩, |0⟩)`, so
//! `|1⟩` is the `+1` eigenvector of σ_z and the ordinary Kronecker product of
//! single-qubit matrices lands in the two-qubit ordering above.

use std::fmt;
use std::ops::{Add, Index, IndexMut, Mul, Sub};

pub use num_complex::Complex64;

use crate::error::{Error, Result};

pub const MAX_DIM: usize = 4;

/// Max-abs asymmetry `|m_ij − conj(m_ji)|` tolerated by Hermitian routines.
pub const HERMITIAN_TOL: f64 = 1e-10;

/// Eigenvalues in `[-PSD_CLAMP_TOL, 0)` are treated as roundoff and set to zero.
pub const PSD_CLAMP_TOL: f64 = 1e-12;

/// Relative rank cutoff: eigenvalues below `SPECTRAL_FLOOR · max|λ|` are
/// numerically indistinguishable from zero and contribute nothing to roots.
pub const SPECTRAL_FLOOR: f64 = 16.0 * f64::EPSILON;

const MAX_SWEEPS: usize = 64;

const ZERO: Complex64 = Complex64::new(0.0, 0.0);
const ONE: Complex64 = Complex64::new(1.0, 0.0);

/// Square complex matrix of dimension at most [`MAX_DIM`], stored row-major
/// inline so values are `Copy` and never allocate.
#[derive(Clone, Copy, PartialEq)]
pub struct ComplexMatrix {
    dim: usize,
    data: [Complex64; MAX_DIM * MAX_DIM],
}

impl ComplexMatrix {
    pub fn zeros(dim: usize) -> Self {
        assert!(
            (1..=MAX_DIM).contains(&dim),
            "matrix dimension {dim} outside 1..={MAX_DIM}"
        );
        Self {
            dim,
            data: [ZERO; MAX_DIM * MAX_DIM],
        }
    }

    pub fn identity(dim: usize) -> Self {
        let mut m = Self::zeros(dim);
        for i in 0..dim {
            m[(i, i)] = ONE;
        }
        m
    }

    pub fn from_fn(dim: usize, mut f: impl FnMut(usize, usize) -> Complex64) -> Self {
        let mut m = Self::zeros(dim);
        for i in 0..dim {
            for j in 0..dim {
                m[(i, j)] = f(i, j);
            }
        }
        m
    }

    /// Builds a matrix from row slices. Panics unless the rows form a square.
    pub fn from_rows<R: AsRef<[Complex64]>>(rows: &[R]) -> Self {
        let dim = rows.len();
        for row in rows {
            assert_eq!(row.as_ref().len(), dim, "rows must form a square matrix");
        }
        Self::from_fn(dim, |i, j| rows[i].as_ref()[j])
    }

    pub fn from_real_diag(diag: &[f64]) -> Self {
        let mut m = Self::zeros(diag.len());
        for (i, &d) in diag.iter().enumerate() {
            m[(i, i)] = Complex64::new(d, 0.0);
        }
        m
    }

    /// The projector `|v⟩⟨v|`.
    pub fn outer(v: &[Complex64]) -> Self {
        Self::from_fn(v.len(), |i, j| v[i] * v[j].conj())
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn adjoint(&self) -> Self {
        Self::from_fn(self.dim, |i, j| self[(j, i)].conj())
    }

    /// Entrywise complex conjugate (not the adjoint).
    pub fn conj(&self) -> Self {
        Self::from_fn(self.dim, |i, j| self[(i, j)].conj())
    }

    pub fn trace(&self) -> Complex64 {
        (0..self.dim).map(|i| self[(i, i)]).sum()
    }

    pub fn scale(&self, s: Complex64) -> Self {
        Self::from_fn(self.dim, |i, j| self[(i, j)] * s)
    }

    pub fn scale_real(&self, s: f64) -> Self {
        Self::from_fn(self.dim, |i, j| self[(i, j)] * s)
    }

    /// `(m + m†) / 2`.
    pub fn hermitian_part(&self) -> Self {
        Self::from_fn(self.dim, |i, j| (self[(i, j)] + self[(j, i)].conj()) * 0.5)
    }

    /// Largest `|m_ij − conj(m_ji)|`, including imaginary parts on the diagonal.
    pub fn hermiticity_defect(&self) -> f64 {
        let mut worst = 0.0_f64;
        for i in 0..self.dim {
            for j in i..self.dim {
                worst = worst.max((self[(i, j)] - self[(j, i)].conj()).norm());
            }
        }
        worst
    }

    pub fn max_abs(&self) -> f64 {
        self.entries().map(|z| z.norm()).fold(0.0, f64::max)
    }

    /// Largest entrywise modulus of `self − other`. Panics on dimension mismatch.
    pub fn max_abs_diff(&self, other: &Self) -> f64 {
        assert_eq!(self.dim, other.dim, "dimension mismatch");
        self.entries()
            .zip(other.entries())
            .map(|(a, b)| (a - b).norm())
            .fold(0.0, f64::max)
    }

    pub fn is_finite(&self) -> bool {
        self.entries().all(|z| z.re.is_finite() && z.im.is_finite())
    }

    /// Row-major iterator over the `dim × dim` entries.
    pub fn entries(&self) -> impl Iterator<Item = Complex64> + '_ {
        (0..self.dim * self.dim).map(move |k| self.data[(k / self.dim) * MAX_DIM + k % self.dim])
    }

    /// `⟨v| m |v⟩`.
    pub fn expectation(&self, v: &[Complex64]) -> Complex64 {
        assert_eq!(v.len(), self.dim, "dimension mismatch");
        let mut acc = ZERO;
        for i in 0..self.dim {
            for j in 0..self.dim {
                acc += v[i].conj() * self[(i, j)] * v[j];
            }
        }
        acc
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

impl Mul for &ComplexMatrix {
    type Output = ComplexMatrix;

    fn mul(self, rhs: &ComplexMatrix) -> ComplexMatrix {
        assert_eq!(self.dim, rhs.dim, "dimension mismatch");
        let n = self.dim;
        let mut out = ComplexMatrix::zeros(n);
        for i in 0..n {
            for k in 0..n {
                let a = self[(i, k)];
                if a == ZERO {
                    continue;
                }
                for j in 0..n {
                    out[(i, j)] += a * rhs[(k, j)];
                }
            }
        }
        out
    }
}

impl Mul for ComplexMatrix {
    type Output = ComplexMatrix;

    fn mul(self, rhs: ComplexMatrix) -> ComplexMatrix {
        <&ComplexMatrix as Mul>::mul(&self, &rhs)
    }
}

impl Add for &ComplexMatrix {
    type Output = ComplexMatrix;

    fn add(self, rhs: &ComplexMatrix) -> ComplexMatrix {
        assert_eq!(self.dim, rhs.dim, "dimension mismatch");
        ComplexMatrix::from_fn(self.dim, |i, j| self[(i, j)] + rhs[(i, j)])
    }
}

impl Sub for &ComplexMatrix {
    type Output = ComplexMatrix;

    fn sub(self, rhs: &ComplexMatrix) -> ComplexMatrix {
        assert_eq!(self.dim, rhs.dim, "dimension mismatch");
        ComplexMatrix::from_fn(self.dim, |i, j| self[(i, j)] - rhs[(i, j)])
    }
}

impl fmt::Debug for ComplexMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "ComplexMatrix({}×{}) [", self.dim, self.dim)?;
        for i in 0..self.dim {
            write!(f, "  ")?;
            for j in 0..self.dim {
                let z = self[(i, j)];
                write!(f, "{:>12.6e}{:+.6e}i  ", z.re, z.im)?;
            }
            writeln!(f)?;
        }
        write!(f, "]")
    }
}

/// Pauli matrices in the `(|1⟩, |0⟩)` ordering: index 0 is the identity,
/// then x, y, z.
pub fn pauli(index: usize) -> ComplexMatrix {
    let i = Complex64::i();
    match index {
        0 => ComplexMatrix::identity(2),
        1 => ComplexMatrix::from_rows(&[[ZERO, ONE], [ONE, ZERO]]),
        2 => ComplexMatrix::from_rows(&[[ZERO, -i], [i, ZERO]]),
        3 => ComplexMatrix::from_real_diag(&[1.0, -1.0]),
        _ => panic!("Pauli index {index} outside 0..4"),
    }
}

/// Kronecker product of two single-qubit operators.
pub fn kron(a: &ComplexMatrix, b: &ComplexMatrix) -> Result<ComplexMatrix> {
    for m in [a, b] {
        if m.dim != 2 {
            return Err(Error::DimensionMismatch {
                expected: 2,
                actual: m.dim,
            });
        }
    }
    Ok(ComplexMatrix::from_fn(4, |row, col| {
        a[(row / 2, col / 2)] * b[(row % 2, col % 2)]
    }))
}

/// Eigendecomposition of a Hermitian matrix.
#[derive(Debug, Clone, PartialEq)]
pub struct HermitianEig {
    /// Ascending.
    pub eigenvalues: Vec<f64>,
    /// Unitary; column `k` is the eigenvector of `eigenvalues[k]`.
    pub eigenvectors: ComplexMatrix,
}

impl HermitianEig {
    /// `V · diag(f(λ)) · V†`.
    pub fn map_spectrum(&self, f: impl Fn(f64) -> f64) -> ComplexMatrix {
        let v = &self.eigenvectors;
        let n = v.dim();
        let mapped: Vec<f64> = self.eigenvalues.iter().map(|&l| f(l)).collect();
        ComplexMatrix::from_fn(n, |i, j| {
            (0..n)
                .filter(|&k| mapped[k] != 0.0)
                .map(|k| v[(i, k)] * v[(j, k)].conj() * mapped[k])
                .sum()
        })
    }

    pub fn reconstruct(&self) -> ComplexMatrix {
        self.map_spectrum(|l| l)
    }
}

/// Cyclic complex Jacobi eigendecomposition.
pub fn hermitian_eig(m: &ComplexMatrix) -> Result<HermitianEig> {
    let asymmetry = m.hermiticity_defect();
    if asymmetry > HERMITIAN_TOL || !m.is_finite() {
        return Err(Error::NotHermitian { asymmetry });
    }
    let n = m.dim();
    let mut a = m.hermitian_part();
    let mut v = ComplexMatrix::identity(n);

    for _ in 0..MAX_SWEEPS {
        let mut rotated = false;
        for p in 0..n {
            for q in p + 1..n {
                rotated |= jacobi_rotate(&mut a, &mut v, p, q);
            }
        }
        if !rotated {
            break;
        }
    }

    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&x, &y| a[(x, x)].re.total_cmp(&a[(y, y)].re));
    let eigenvalues = order.iter().map(|&k| a[(k, k)].re).collect();
    let eigenvectors = ComplexMatrix::from_fn(n, |i, j| v[(i, order[j])]);
    Ok(HermitianEig {
        eigenvalues,
        eigenvectors,
    })
}

/// Annihilates `a[p][q]` with the unitary `U = diag-phase · Givens`, updating
/// `a ← U† a U` and `v ← v U`. Returns whether a rotation was applied.
fn jacobi_rotate(a: &mut ComplexMatrix, v: &mut ComplexMatrix, p: usize, q: usize) -> bool {
    let apq = a[(p, q)];
    let g = apq.norm();
    let app = a[(p, p)].re;
    let aqq = a[(q, q)].re;
    // Below this the rotation angle is under an ulp of either diagonal entry.
    if g == 0.0
        || (app.abs() + aqq.abs() > 0.0
            && g <= 0.25 * f64::EPSILON * f64::EPSILON * (app.abs() + aqq.abs()))
    {
        if g != 0.0 {
            a[(p, q)] = ZERO;
            a[(q, p)] = ZERO;
        }
        return false;
    }

    let phase = apq / g;
    let zeta = (aqq - app) / (2.0 * g);
    let t = zeta.signum() / (zeta.abs() + 1.0_f64.hypot(zeta));
    let c = 1.0 / 1.0_f64.hypot(t);
    let s = t * c;
    let n = a.dim();

    let col_q = phase.conj();
    for k in 0..n {
        let akp = a[(k, p)];
        let akq = a[(k, q)];
        a[(k, p)] = akp * c - akq * col_q * s;
        a[(k, q)] = akp * s + akq * col_q * c;
    }
    for k in 0..n {
        let apk = a[(p, k)];
        let aqk = a[(q, k)];
        a[(p, k)] = apk * c - aqk * phase * s;
        a[(q, k)] = apk * s + aqk * phase * c;
    }
    a[(p, q)] = ZERO;
    a[(q, p)] = ZERO;
    a[(p, p)] = Complex64::new(app - t * g, 0.0);
    a[(q, q)] = Complex64::new(aqq + t * g, 0.0);

    for k in 0..n {
        let vkp = v[(k, p)];
        let vkq = v[(k, q)];
        v[(k, p)] = vkp * c - vkq * col_q * s;
        v[(k, q)] = vkp * s + vkq * col_q * c;
    }
    true
}

/// Clamps roundoff-level negative eigenvalues and zeroes those below the
/// relative rank floor. Fails on a genuinely negative eigenvalue.
pub fn clamp_psd_spectrum(eigenvalues: &[f64]) -> Result<Vec<f64>> {
    clamp_spectrum_with_floor(eigenvalues, SPECTRAL_FLOOR)
}

fn clamp_spectrum_with_floor(eigenvalues: &[f64], relative_floor: f64) -> Result<Vec<f64>> {
    let largest = eigenvalues.iter().fold(0.0_f64, |acc, l| acc.max(l.abs()));
    let floor = relative_floor * largest;
    eigenvalues
        .iter()
        .map(|&l| {
            if l < -PSD_CLAMP_TOL {
                Err(Error::NotPsd { eigenvalue: l })
            } else if l <= floor {
                Ok(0.0)
            } else {
                Ok(l)
            }
        })
        .collect()
}

/// Principal square root of a positive semidefinite Hermitian matrix.
pub fn psd_sqrt(m: &ComplexMatrix) -> Result<ComplexMatrix> {
    psd_sqrt_with_floor(m, SPECTRAL_FLOOR)
}

/// As [`psd_sqrt`], but only eigenvalues `≤ relative_floor · max|λ|` are
/// zeroed. A floor of `0.0` keeps every positive eigenvalue, which matters
/// when tiny but exact diagonal entries must survive.
pub fn psd_sqrt_with_floor(m: &ComplexMatrix, relative_floor: f64) -> Result<ComplexMatrix> {
    let eig = hermitian_eig(m)?;
    let clamped = clamp_spectrum_with_floor(&eig.eigenvalues, relative_floor)?;
    let rooted = HermitianEig {
        eigenvalues: clamped.iter().map(|l| l.sqrt()).collect(),
        eigenvectors: eig.eigenvectors,
    };
    Ok(rooted.reconstruct())
}

/// Singular values in descending order, by one-sided (Hestenes) Jacobi.
///
/// Columns are orthogonalised pairwise without ever forming `m†m`, so small
/// singular values keep absolute accuracy near `ε·‖m‖` instead of `√ε·‖m‖`.
pub fn singular_values(m: &ComplexMatrix) -> Result<Vec<f64>> {
    if !m.is_finite() {
        return Err(Error::NonFinite);
    }
    let n = m.dim();
    let mut a = *m;
    for _ in 0..MAX_SWEEPS {
        let mut rotated = false;
        for p in 0..n {
            for q in p + 1..n {
                rotated |= hestenes_rotate(&mut a, p, q);
            }
        }
        if !rotated {
            break;
        }
    }
    let mut sv: Vec<f64> = (0..n)
        .map(|k| (0..n).map(|i| a[(i, k)].norm_sqr()).sum::<f64>().sqrt())
        .collect();
    sv.sort_by(|x, y| y.total_cmp(x));
    Ok(sv)
}

fn hestenes_rotate(a: &mut ComplexMatrix, p: usize, q: usize) -> bool {
    let n = a.dim();
    let (mut alpha, mut beta, mut gamma) = (0.0, 0.0, ZERO);
    for i in 0..n {
        alpha += a[(i, p)].norm_sqr();
        beta += a[(i, q)].norm_sqr();
        gamma += a[(i, p)].conj() * a[(i, q)];
    }
    let g = gamma.norm();
    if g == 0.0 || g <= f64::EPSILON * (alpha * beta).sqrt() {
        return false;
    }
    let phase = (gamma / g).conj();
    let zeta = (beta - alpha) / (2.0 * g);
    let t = zeta.signum() / (zeta.abs() + 1.0_f64.hypot(zeta));
    let c = 1.0 / 1.0_f64.hypot(t);
    let s = t * c;
    for i in 0..n {
        let ap = a[(i, p)];
        let aq = a[(i, q)] * phase;
        a[(i, p)] = ap * c - aq * s;
        a[(i, q)] = ap * s + aq * c;
    }
    true
}

/// `exp(m)` for Hermitian `m`, through its eigendecomposition.
pub fn matrix_exp_hermitian(m: &ComplexMatrix) -> Result<ComplexMatrix> {
    Ok(hermitian_eig(m)?.map_spectrum(f64::exp))
}

/// A Hermitian, unit-trace, positive semidefinite matrix.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DensityMatrix(ComplexMatrix);

impl DensityMatrix {
    /// Tolerance on `|Tr ρ − 1|` accepted by [`DensityMatrix::new`].
    pub const TRACE_TOL: f64 = 1e-10;

    pub fn new(m: ComplexMatrix) -> Result<Self> {
        let eig = hermitian_eig(&m)?;
        if (m.trace() - ONE).norm() > Self::TRACE_TOL {
            return Err(Error::NotDensityMatrix("trace differs from 1"));
        }
        if let Some(&min) = eig.eigenvalues.first() {
            if min < -PSD_CLAMP_TOL {
                return Err(Error::NotPsd { eigenvalue: min });
            }
        }
        Ok(Self(m))
    }

    /// Wraps a matrix that is a density matrix by construction.
    pub(crate) fn new_unchecked(m: ComplexMatrix) -> Self {
        debug_assert!(m.hermiticity_defect() <= HERMITIAN_TOL);
        Self(m)
    }

    /// The maximally mixed state `I / dim`.
    pub fn maximally_mixed(dim: usize) -> Self {
        Self(ComplexMatrix::identity(dim).scale_real(1.0 / dim as f64))
    }

    /// `|v⟩⟨v|` for a vector normalized here.
    pub fn pure(v: &[Complex64]) -> Self {
        let norm = v.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
        let normalized: Vec<Complex64> = v.iter().map(|z| z / norm).collect();
        Self(ComplexMatrix::outer(&normalized))
    }

    pub fn matrix(&self) -> &ComplexMatrix {
        &self.0
    }

    pub fn into_matrix(self) -> ComplexMatrix {
        self.0
    }

    pub fn dim(&self) -> usize {
        self.0.dim()
    }

    pub fn get(&self, i: usize, j: usize) -> Complex64 {
        self.0[(i, j)]
    }
}

#[cfg(test)]
pub(crate) mod test_support {
    use super::*;
    use rand::RngExt;

    pub fn random_complex(rng: &mut impl rand::Rng) -> Complex64 {
        Complex64::new(rng.random_range(-1.0..1.0), rng.random_range(-1.0..1.0))
    }

    pub fn random_matrix(rng: &mut impl rand::Rng, dim: usize) -> ComplexMatrix {
        ComplexMatrix::from_fn(dim, |_, _| random_complex(rng))
    }

    pub fn random_hermitian(rng: &mut impl rand::Rng, dim: usize) -> ComplexMatrix {
        random_matrix(rng, dim).hermitian_part()
    }

    /// `G G† / Tr(G G†)`, full rank with probability one.
    pub fn random_density(rng: &mut impl rand::Rng, dim: usize) -> DensityMatrix {
        let g = random_matrix(rng, dim);
        let m = g * g.adjoint();
        let tr = m.trace().re;
        DensityMatrix::new(m.scale_real(1.0 / tr)).unwrap()
    }

    /// Unitary from the eigenvectors of a random Hermitian matrix.
    pub fn random_unitary(rng: &mut impl rand::Rng, dim: usize) -> ComplexMatrix {
        hermitian_eig(&random_hermitian(rng, dim))
            .unwrap()
            .eigenvectors
    }
}
