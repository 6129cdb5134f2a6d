//! Dense complex matrix kernel.
//!
//! Everything in the crate runs on [`CMatrix`], a row-major dense matrix of
//! `Complex64` entries. Matrices at the target scale are tiny (`d^2 x d^2`
//! with `d <= 16`, i.e. at most 256 x 256), so no sparse storage is used.
//! Hermitian spectra are computed with `nalgebra`'s symmetric eigensolver
//! after an explicit symmetrization step; singular-value sums go through the
//! Hermitian embedding `[[0, A], [A&dagger;, 0]]` so that only one eigensolver path
//! exists in the crate.

use nalgebra::DMatrix;
use num_complex::Complex64;

use crate::{Error, Result};

/// Complex scalar used throughout the crate.
pub type C64 = Complex64;

/// Relative scale for default Hermiticity tolerances.
pub const HERMITICITY_TOL: f64 = 1e-12;

/// Index bookkeeping for a bipartite `d ⊗ d` system.
///
/// The product basis vector `|ij>` (with 1-based labels `i, j` in `1..=d`)
/// maps to the flat 0-based index `(i-1)*d + (j-1)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct BipartiteIndex {
    /// Local dimension of each tensor factor.
    pub d: usize,
}

impl BipartiteIndex {
    pub fn new(d: usize) -> Self {
        Self { d }
    }

    /// Flat index of `|ij>` for 1-based labels.
    pub fn flat(&self, i: usize, j: usize) -> usize {
        debug_assert!((1..=self.d).contains(&i) && (1..=self.d).contains(&j));
        (i - 1) * self.d + (j - 1)
    }

    /// 1-based labels `(i, j)` of a flat index.
    pub fn pair(&self, u: usize) -> (usize, usize) {
        debug_assert!(u < self.d * self.d);
        (u / self.d + 1, u % self.d + 1)
    }

    /// Printable label of a flat index, `|ij>` (comma-separated for d > 9).
    pub fn label(&self, u: usize) -> String {
        let (i, j) = self.pair(u);
        if self.d <= 9 {
            format!("|{i}{j}>")
        } else {
            format!("|{i},{j}>")
        }
    }
}

/// Dense complex matrix, row-major.
#[derive(Debug, Clone, PartialEq)]
pub struct CMatrix {
    rows: usize,
    cols: usize,
    entries: Vec<C64>,
}

impl CMatrix {
    /// Builds a matrix from row-major entries, validating shape and
    /// finiteness.
    pub fn new(rows: usize, cols: usize, entries: Vec<C64>) -> Result<Self> {
        if entries.len() != rows * cols {
            return Err(Error::DimensionMismatch {
                expected: rows * cols,
                rows,
                cols,
            });
        }
        if entries.iter().any(|z| !z.re.is_finite() || !z.im.is_finite()) {
            return Err(Error::NotAState {
                reason: "matrix contains a non-finite entry".into(),
            });
        }
        Ok(Self {
            rows,
            cols,
            entries,
        })
    }

    pub fn zeros(rows: usize, cols: usize) -> Self {
        Self {
            rows,
            cols,
            entries: vec![C64::new(0.0, 0.0); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = C64::new(1.0, 0.0);
        }
        m
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> C64) -> Self {
        let mut entries = Vec::with_capacity(rows * cols);
        for r in 0..rows {
            for c in 0..cols {
                entries.push(f(r, c));
            }
        }
        Self {
            rows,
            cols,
            entries,
        }
    }

    /// Builds a diagonal matrix from real values.
    pub fn diag(values: &[f64]) -> Self {
        let n = values.len();
        let mut m = Self::zeros(n, n);
        for (i, &v) in values.iter().enumerate() {
            m[(i, i)] = C64::new(v, 0.0);
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn entries(&self) -> &[C64] {
        &self.entries
    }

    /// Local dimension `d` if the matrix is `d^2 x d^2`, else an error.
    pub fn local_dim(&self) -> Result<usize> {
        if !self.is_square() {
            return Err(Error::NotBipartite { side: self.rows });
        }
        let d = (self.rows as f64).sqrt().round() as usize;
        if d >= 2 && d * d == self.rows {
            Ok(d)
        } else {
            Err(Error::NotBipartite { side: self.rows })
        }
    }

    /// Checks that the matrix is `d^2 x d^2` for the given `d`.
    pub fn expect_bipartite(&self, d: usize) -> Result<()> {
        if self.rows != d * d || self.cols != d * d {
            return Err(Error::DimensionMismatch {
                expected: d * d,
                rows: self.rows,
                cols: self.cols,
            });
        }
        Ok(())
    }

    /// Conjugate transpose.
    pub fn dagger(&self) -> CMatrix {
        CMatrix::from_fn(self.cols, self.rows, |r, c| self[(c, r)].conj())
    }

    /// Entry-wise complex conjugate.
    pub fn conj(&self) -> CMatrix {
        CMatrix::from_fn(self.rows, self.cols, |r, c| self[(r, c)].conj())
    }

    pub fn transpose(&self) -> CMatrix {
        CMatrix::from_fn(self.cols, self.rows, |r, c| self[(c, r)])
    }

    /// Matrix product `self * rhs`.
    pub fn matmul(&self, rhs: &CMatrix) -> CMatrix {
        assert_eq!(self.cols, rhs.rows, "inner dimensions must agree");
        let mut out = CMatrix::zeros(self.rows, rhs.cols);
        for r in 0..self.rows {
            for k in 0..self.cols {
                let a = self[(r, k)];
                if a == C64::new(0.0, 0.0) {
                    continue;
                }
                for c in 0..rhs.cols {
                    out[(r, c)] += a * rhs[(k, c)];
                }
            }
        }
        out
    }

    pub fn add(&self, rhs: &CMatrix) -> CMatrix {
        assert_eq!((self.rows, self.cols), (rhs.rows, rhs.cols));
        CMatrix::from_fn(self.rows, self.cols, |r, c| self[(r, c)] + rhs[(r, c)])
    }

    pub fn sub(&self, rhs: &CMatrix) -> CMatrix {
        assert_eq!((self.rows, self.cols), (rhs.rows, rhs.cols));
        CMatrix::from_fn(self.rows, self.cols, |r, c| self[(r, c)] - rhs[(r, c)])
    }

    pub fn scale(&self, s: f64) -> CMatrix {
        CMatrix::from_fn(self.rows, self.cols, |r, c| self[(r, c)] * s)
    }

    pub fn trace(&self) -> C64 {
        assert!(self.is_square());
        (0..self.rows).map(|i| self[(i, i)]).sum()
    }

    /// Max-norm `max |A_ij|`.
    pub fn max_abs(&self) -> f64 {
        self.entries.iter().map(|z| z.norm()).fold(0.0, f64::max)
    }

    /// Largest entry of `|A - B|`.
    pub fn max_abs_diff(&self, rhs: &CMatrix) -> f64 {
        assert_eq!((self.rows, self.cols), (rhs.rows, rhs.cols));
        self.entries
            .iter()
            .zip(&rhs.entries)
            .map(|(a, b)| (a - b).norm())
            .fold(0.0, f64::max)
    }

    /// Largest entry of `|A - A&dagger;|`.
    pub fn hermiticity_deviation(&self) -> f64 {
        assert!(self.is_square());
        let mut dev: f64 = 0.0;
        for r in 0..self.rows {
            for c in r..self.cols {
                dev = dev.max((self[(r, c)] - self[(c, r)].conj()).norm());
            }
        }
        dev
    }

    pub fn is_hermitian(&self, tol: f64) -> bool {
        self.is_square() && self.hermiticity_deviation() <= tol
    }

    fn to_dmatrix(&self) -> DMatrix<C64> {
        DMatrix::from_fn(self.rows, self.cols, |r, c| self[(r, c)])
    }
}

impl std::ops::Index<(usize, usize)> for CMatrix {
    type Output = C64;

    fn index(&self, (r, c): (usize, usize)) -> &C64 {
        &self.entries[r * self.cols + c]
    }
}

impl std::ops::IndexMut<(usize, usize)> for CMatrix {
    fn index_mut(&mut self, (r, c): (usize, usize)) -> &mut C64 {
        &mut self.entries[r * self.cols + c]
    }
}

/// Default Hermiticity tolerance for a given matrix, `1e-12 * max(1, |A|_max)`.
pub fn default_hermiticity_tol(a: &CMatrix) -> f64 {
    HERMITICITY_TOL * a.max_abs().max(1.0)
}

/// Kronecker product `A ⊗ B`.
///
/// `(A ⊗ B)[(i*rB + k), (j*cB + l)] = A[i,j] * B[k,l]`.
pub fn kron(a: &CMatrix, b: &CMatrix) -> CMatrix {
    let (ra, ca) = (a.rows(), a.cols());
    let (rb, cb) = (b.rows(), b.cols());
    let mut out = CMatrix::zeros(ra * rb, ca * cb);
    for i in 0..ra {
        for j in 0..ca {
            let aij = a[(i, j)];
            if aij == C64::new(0.0, 0.0) {
                continue;
            }
            for k in 0..rb {
                for l in 0..cb {
                    out[(i * rb + k, j * cb + l)] = aij * b[(k, l)];
                }
            }
        }
    }
    out
}

fn require_hermitian(a: &CMatrix, tol: f64) -> Result<()> {
    if !a.is_square() {
        return Err(Error::DimensionMismatch {
            expected: a.rows(),
            rows: a.rows(),
            cols: a.cols(),
        });
    }
    let dev = a.hermiticity_deviation();
    if dev > tol {
        return Err(Error::NotHermitian {
            deviation: dev,
            tol,
        });
    }
    Ok(())
}

/// Eigenvalues of a Hermitian matrix, ascending.
///
/// The input is symmetrized to `(A + A&dagger;)/2` before solving; inputs whose
/// Hermiticity deviation exceeds `tol` are rejected.
pub fn eig_hermitian(a: &CMatrix, tol: f64) -> Result<Vec<f64>> {
    require_hermitian(a, tol)?;
    let m = symmetrized(a).to_dmatrix();
    let eig = m
        .symmetric_eigen()
        .eigenvalues
        .iter()
        .copied()
        .collect::<Vec<f64>>();
    let mut vals = eig;
    vals.sort_by(f64::total_cmp);
    Ok(vals)
}

/// Eigenvalues (ascending) and matching eigenvectors (as columns) of a
/// Hermitian matrix.
pub fn eig_hermitian_full(a: &CMatrix, tol: f64) -> Result<(Vec<f64>, CMatrix)> {
    require_hermitian(a, tol)?;
    let m = symmetrized(a).to_dmatrix();
    let se = m.symmetric_eigen();
    let n = a.rows();
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&i, &j| se.eigenvalues[i].total_cmp(&se.eigenvalues[j]));
    let vals = order.iter().map(|&i| se.eigenvalues[i]).collect();
    let vecs = CMatrix::from_fn(n, n, |r, c| se.eigenvectors[(r, order[c])]);
    Ok((vals, vecs))
}

/// Smallest eigenvalue of a Hermitian matrix.
pub fn min_eigenvalue(a: &CMatrix, tol: f64) -> Result<f64> {
    Ok(eig_hermitian(a, tol)?[0])
}

fn symmetrized(a: &CMatrix) -> CMatrix {
    CMatrix::from_fn(a.rows(), a.cols(), |r, c| {
        (a[(r, c)] + a[(c, r)].conj()) * 0.5
    })
}

/// Partial transposition on the second tensor factor.
///
/// `result[(i,j),(k,l)] = rho[(i,l),(k,j)]`; an exact involution that fixes
/// the diagonal, so trace and Hermiticity are preserved.
pub fn partial_transpose(rho: &CMatrix, d: usize) -> Result<CMatrix> {
    rho.expect_bipartite(d)?;
    let idx = BipartiteIndex::new(d);
    Ok(CMatrix::from_fn(d * d, d * d, |row, col| {
        let (i, j) = idx.pair(row);
        let (k, l) = idx.pair(col);
        rho[(idx.flat(i, l), idx.flat(k, j))]
    }))
}

/// Realignment map `R[(i,k),(j,l)] = rho[(i,j),(k,l)]`.
///
/// A pure reindexing of the entries (and an involution).
pub fn realign(rho: &CMatrix, d: usize) -> Result<CMatrix> {
    rho.expect_bipartite(d)?;
    let idx = BipartiteIndex::new(d);
    Ok(CMatrix::from_fn(d * d, d * d, |row, col| {
        let (i, k) = idx.pair(row);
        let (j, l) = idx.pair(col);
        rho[(idx.flat(i, j), idx.flat(k, l))]
    }))
}

/// Singular values, descending.
///
/// Computed from the Hermitian embedding `[[0, A], [A&dagger;, 0]]`, whose
/// spectrum is `{±σ_i}` (padded with zeros when A is rectangular); this
/// keeps small singular values accurate to machine precision without a
/// separate SVD path.
pub fn singular_values(a: &CMatrix) -> Vec<f64> {
    let (r, c) = (a.rows(), a.cols());
    let n = r + c;
    let mut h = CMatrix::zeros(n, n);
    for i in 0..r {
        for j in 0..c {
            h[(i, r + j)] = a[(i, j)];
            h[(r + j, i)] = a[(i, j)].conj();
        }
    }
    let vals = eig_hermitian(&h, default_hermiticity_tol(&h))
        .expect("hermitian embedding is hermitian by construction");
    // The top min(r, c) eigenvalues are the singular values.
    vals.iter()
        .rev()
        .take(r.min(c))
        .map(|v| v.max(0.0))
        .collect()
}

/// Trace norm (sum of singular values).
pub fn trace_norm(a: &CMatrix) -> f64 {
    singular_values(a).iter().sum()
}
