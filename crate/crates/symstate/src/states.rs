//! Constructors for the bipartite state families handled by the crate.
//!
//! The base family lives in `3 ⊗ 3` and is invariant under the phase
//! subgroup with `x_1 = x_3` (partition `13|2`). Two permuted
//! representations move that symmetry to `x_1 = x_2` (`12|3`) and
//! `x_2 = x_3` (`1|23`); they are produced by conjugating with the cyclic
//! local relabelings `2,3,1` and `3,1,2`. A `d ⊗ d` generalization keeps
//! the pair `{1, d}` correlated.

use crate::linalg::{BipartiteIndex, C64, CMatrix};
use crate::symmetry::{InvarianceLaw, Partition};
use crate::{linalg, symmetry, Error, Result};

/// Parameters of the correlated family in `d ⊗ d`.
///
/// For mixing parameter `a` in `[0, 1]`:
/// `N = 1 / ((d^2 - 1) a + 1)`, `b = (1 + a)/2`, `c = sqrt(1 - a^2)/2`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct HorodeckiParams {
    pub d: usize,
    pub a: f64,
    pub norm: f64,
    pub b: f64,
    pub c: f64,
}

impl HorodeckiParams {
    pub fn new(d: usize, a: f64) -> Result<Self> {
        if d < 3 {
            return Err(Error::DimensionTooSmall { d, min: 3 });
        }
        if !(0.0..=1.0).contains(&a) {
            return Err(Error::ParamOutOfRange {
                name: "a",
                range: "[0,1]",
                value: a,
            });
        }
        let norm = 1.0 / (((d * d - 1) as f64) * a + 1.0);
        let b = (1.0 + a) / 2.0;
        let c = (1.0 - a * a).sqrt() / 2.0;
        debug_assert!(b >= c);
        debug_assert!((2.0 * b - 1.0 - a).abs() < 1e-15);
        Ok(Self { d, a, norm, b, c })
    }
}

/// Coefficients of a state invariant under the maximal phase subgroup:
/// `rho = Σ_ij a_ij |i><j| ⊗ |i><j| + Σ_{i≠j} d_ij |i><i| ⊗ |j><j|`.
///
/// `a_matrix` must be Hermitian positive semidefinite; `d_matrix` must be
/// real and entry-wise nonnegative with zero diagonal; together they must
/// satisfy `Σ_i a_ii + Σ_{i≠j} d_ij = 1`.
#[derive(Debug, Clone, PartialEq)]
pub struct AbelianFamilyParams {
    d: usize,
    a_matrix: CMatrix,
    d_matrix: CMatrix,
}

impl AbelianFamilyParams {
    pub fn new(a_matrix: CMatrix, d_matrix: CMatrix) -> Result<Self> {
        let d = a_matrix.rows();
        if !a_matrix.is_square() || d_matrix.rows() != d || d_matrix.cols() != d {
            return Err(Error::DimensionMismatch {
                expected: d,
                rows: d_matrix.rows(),
                cols: d_matrix.cols(),
            });
        }
        let tol = 1e-12 * a_matrix.max_abs().max(1.0);
        let min_eig = linalg::min_eigenvalue(&a_matrix, tol).map_err(|e| match e {
            Error::NotHermitian { deviation, tol } => Error::NotHermitian { deviation, tol },
            other => other,
        })?;
        if min_eig < -tol {
            return Err(Error::NotPsd { min_eig });
        }
        let mut sum = 0.0;
        for i in 0..d {
            sum += a_matrix[(i, i)].re;
            for j in 0..d {
                let z = d_matrix[(i, j)];
                if z.im != 0.0 {
                    return Err(Error::NotAState {
                        reason: format!("d_matrix entry ({},{}) is not real", i + 1, j + 1),
                    });
                }
                if i == j {
                    if z.re != 0.0 {
                        return Err(Error::NotAState {
                            reason: "d_matrix diagonal must be zero".into(),
                        });
                    }
                } else {
                    if z.re < 0.0 {
                        return Err(Error::NotAState {
                            reason: format!("d_matrix entry ({},{}) is negative", i + 1, j + 1),
                        });
                    }
                    sum += z.re;
                }
            }
        }
        if (sum - 1.0).abs() > 1e-12 {
            return Err(Error::BadNormalization { sum });
        }
        Ok(Self {
            d,
            a_matrix,
            d_matrix,
        })
    }

    pub fn d(&self) -> usize {
        self.d
    }

    pub fn a_entry(&self, i: usize, j: usize) -> C64 {
        self.a_matrix[(i - 1, j - 1)]
    }

    pub fn d_entry(&self, i: usize, j: usize) -> f64 {
        self.d_matrix[(i - 1, j - 1)].re
    }

    pub fn a_matrix(&self) -> &CMatrix {
        &self.a_matrix
    }

    pub fn d_matrix(&self) -> &CMatrix {
        &self.d_matrix
    }

    /// Reads the coefficients off a state with the maximal-subgroup
    /// pattern (inverse of [`abelian_family`]).
    pub fn from_state(rho: &CMatrix) -> Result<Self> {
        let d = rho.local_dim()?;
        let idx = BipartiteIndex::new(d);
        let a_matrix = CMatrix::from_fn(d, d, |r, c| rho[(idx.flat(r + 1, r + 1), idx.flat(c + 1, c + 1))]);
        let d_matrix = CMatrix::from_fn(d, d, |r, c| {
            if r == c {
                C64::new(0.0, 0.0)
            } else {
                rho[(idx.flat(r + 1, c + 1), idx.flat(r + 1, c + 1))]
            }
        });
        Self::new(a_matrix, d_matrix)
    }
}

/// A permutation of the local indices `{1..d}`, stored as 1-based images.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PermutationSpec {
    images: Vec<usize>,
}

impl PermutationSpec {
    /// Builds from the one-line image list: `images[i-1]` is where `i`
    /// goes.
    pub fn new(images: Vec<usize>) -> Result<Self> {
        let d = images.len();
        let mut seen = vec![false; d];
        for &im in &images {
            if im < 1 || im > d {
                return Err(Error::BadPermutation {
                    reason: format!("image {im} out of range 1..={d}"),
                });
            }
            if seen[im - 1] {
                return Err(Error::BadPermutation {
                    reason: format!("image {im} repeated"),
                });
            }
            seen[im - 1] = true;
        }
        Ok(Self { images })
    }

    pub fn identity(d: usize) -> Self {
        Self {
            images: (1..=d).collect(),
        }
    }

    /// Parses a comma-separated one-line image list, e.g. `"1,3,2"`.
    pub fn parse(text: &str) -> Result<Self> {
        let images = text
            .split(',')
            .map(|t| {
                t.trim().parse::<usize>().map_err(|_| Error::BadPermutation {
                    reason: format!("\"{}\" is not an index", t.trim()),
                })
            })
            .collect::<Result<Vec<_>>>()?;
        Self::new(images)
    }

    pub fn d(&self) -> usize {
        self.images.len()
    }

    /// 1-based image of the 1-based index `i`.
    pub fn image(&self, i: usize) -> usize {
        self.images[i - 1]
    }

    pub fn images(&self) -> &[usize] {
        &self.images
    }

    pub fn inverse(&self) -> PermutationSpec {
        let mut inv = vec![0usize; self.d()];
        for i in 1..=self.d() {
            inv[self.image(i) - 1] = i;
        }
        Self { images: inv }
    }

    /// The `d x d` 0/1 matrix sending `|i>` to `|image(i)>`.
    pub fn matrix(&self) -> CMatrix {
        let d = self.d();
        let mut s = CMatrix::zeros(d, d);
        for i in 1..=d {
            s[(self.image(i) - 1, i - 1)] = C64::new(1.0, 0.0);
        }
        s
    }
}

impl std::fmt::Display for PermutationSpec {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        for (k, im) in self.images.iter().enumerate() {
            if k > 0 {
                write!(f, ",")?;
            }
            write!(f, "{im}")?;
        }
        Ok(())
    }
}

/// The correlated two-qutrit family at mixing parameter `a`.
///
/// All entries are exact closed-form values: `N*a` on the correlated
/// corners `((i,i),(j,j))` except `((3,3),(3,3))`, `N*a` on the diagonal at
/// `|12>`, `|13>`, `|21>`, `|23>`, `|32>`, and the `N*{b,c}` block on
/// `{|31>, |33>}`. Unit trace, Hermitian, PSD and PPT for every
/// `a` in `[0, 1]`.
pub fn horodecki(a: f64) -> Result<CMatrix> {
    generalized_horodecki(3, a)
}

/// Representation of [`horodecki`] carried to the `x_1 = x_2` subgroup
/// (finest invariant partition `12|3`); the `b,c` block sits on
/// `{|11>, |12>}`.
pub fn horodecki_prime(a: f64) -> Result<CMatrix> {
    conjugate(&horodecki(a)?, &PermutationSpec::new(vec![2, 3, 1])?)
}

/// Representation of [`horodecki`] carried to the `x_2 = x_3` subgroup
/// (finest invariant partition `1|23`); the `b,c` block sits on
/// `{|22>, |23>}`.
pub fn horodecki_dprime(a: f64) -> Result<CMatrix> {
    conjugate(&horodecki(a)?, &PermutationSpec::new(vec![3, 1, 2])?)
}

/// State with the maximal-subgroup structure from explicit coefficients.
pub fn abelian_family(params: &AbelianFamilyParams) -> CMatrix {
    let d = params.d();
    let idx = BipartiteIndex::new(d);
    let mut rho = CMatrix::zeros(d * d, d * d);
    for i in 1..=d {
        for j in 1..=d {
            rho[(idx.flat(i, i), idx.flat(j, j))] = params.a_entry(i, j);
            if i != j {
                rho[(idx.flat(i, j), idx.flat(i, j))] = C64::new(params.d_entry(i, j), 0.0);
            }
        }
    }
    rho
}

/// Conjugation by a local permutation on both factors:
/// `(S ⊗ S) rho (S ⊗ S)†` with `S` the 0/1 matrix of `s`.
///
/// A pure reindexing (`result[(i,j),(k,l)] = rho[(s⁻¹i, s⁻¹j), (s⁻¹k, s⁻¹l)]`),
/// so the spectrum and trace are preserved exactly.
pub fn conjugate(rho: &CMatrix, s: &PermutationSpec) -> Result<CMatrix> {
    let d = s.d();
    rho.expect_bipartite(d)?;
    let idx = BipartiteIndex::new(d);
    let inv = s.inverse();
    Ok(CMatrix::from_fn(d * d, d * d, |row, col| {
        let (i, j) = idx.pair(row);
        let (k, l) = idx.pair(col);
        rho[(
            idx.flat(inv.image(i), inv.image(j)),
            idx.flat(inv.image(k), inv.image(l)),
        )]
    }))
}

/// The `d ⊗ d` member of the correlated family.
///
/// `rho = N * [ a Σ_ij |ii><jj| - a |dd><dd| + a Σ_{i≠j, (i,j)≠(d,1)} |ij><ij|
///            + b (|d1><d1| + |dd><dd|) + c (|d1><dd| + |dd><d1|) ]`.
///
/// Reduces exactly to [`horodecki`] at `d = 3`; invariant under the
/// partition `{1,d}|2|...|d-1` with the `U ⊗ Ū` law; PPT for every
/// `a` in `[0, 1]`.
pub fn generalized_horodecki(d: usize, a: f64) -> Result<CMatrix> {
    let params = HorodeckiParams::new(d, a)?;
    let idx = BipartiteIndex::new(d);
    let n = params.norm;
    let (av, bv, cv) = (params.a, params.b, params.c);
    let mut rho = CMatrix::zeros(d * d, d * d);
    // Correlated corners a|ii><jj|, with the (d,d) diagonal corner
    // replaced by b below.
    for i in 1..=d {
        for j in 1..=d {
            rho[(idx.flat(i, i), idx.flat(j, j))] = C64::new(n * av, 0.0);
        }
    }
    // Uncorrelated diagonal a|ij><ij|, skipping (d,1) which carries b.
    for i in 1..=d {
        for j in 1..=d {
            if i != j && (i, j) != (d, 1) {
                rho[(idx.flat(i, j), idx.flat(i, j))] = C64::new(n * av, 0.0);
            }
        }
    }
    let d1 = idx.flat(d, 1);
    let dd = idx.flat(d, d);
    rho[(d1, d1)] = C64::new(n * bv, 0.0);
    rho[(dd, dd)] = C64::new(n * bv, 0.0);
    rho[(d1, dd)] = C64::new(n * cv, 0.0);
    rho[(dd, d1)] = C64::new(n * cv, 0.0);
    Ok(rho)
}

/// Finest invariant partition of the generalized family: `{1,d}` in one
/// class, everything else singletons.
pub fn generalized_partition(d: usize) -> Partition {
    let mut labels: Vec<usize> = (0..d).collect();
    labels[d - 1] = 0;
    Partition::from_assignment(&labels).expect("valid assignment")
}

/// Maximally entangled projector `P_+ = (1/d) Σ_ij |ii><jj|`.
pub fn maximally_entangled(d: usize) -> CMatrix {
    let idx = BipartiteIndex::new(d);
    let mut rho = CMatrix::zeros(d * d, d * d);
    for i in 1..=d {
        for j in 1..=d {
            rho[(idx.flat(i, i), idx.flat(j, j))] = C64::new(1.0 / d as f64, 0.0);
        }
    }
    rho
}

/// Checks that a state family member is invariant under its defining
/// partition (used by tests and the CLI when detection is capped).
pub fn verify_family_symmetry(rho: &CMatrix, p: &Partition, tol: f64) -> Result<bool> {
    symmetry::is_invariant(rho, p, InvarianceLaw::UUbar, tol)
}
