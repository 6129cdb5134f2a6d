//! Direct-sum block decompositions of bipartite operators, and the
//! block-wise positivity checks they enable.
//!
//! Two sources of decompositions exist:
//!
//! - [`support_blocks`]: connected components of the numeric support graph
//!   of a specific matrix (edges where `|rho[u,v]| > tol`). This is the
//!   finest decomposition valid for that matrix.
//! - [`pattern_blocks`]: connected components of a symmetry mask's allowed
//!   off-diagonal entries. This is the decomposition shared by *every*
//!   operator of the invariance class; particular members may split
//!   further when entries happen to vanish.
//!
//! Both yield a [`BlockDecomposition`] covering all of `{0..d^2-1}`, with
//! unsupported indices kept as singleton blocks.

use crate::linalg::{BipartiteIndex, CMatrix};
use crate::symmetry::{allowed_mask, InvarianceLaw, Partition, ZeroPattern};
use crate::{linalg, Error, Result};

/// A partition of the flat product-basis indices into disjoint support
/// blocks, each sorted ascending, blocks ordered by smallest element.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BlockDecomposition {
    d: usize,
    blocks: Vec<Vec<usize>>,
}

impl BlockDecomposition {
    fn from_components(d: usize, mut blocks: Vec<Vec<usize>>) -> Self {
        for b in &mut blocks {
            b.sort_unstable();
        }
        blocks.sort_by_key(|b| b[0]);
        Self { d, blocks }
    }

    pub fn d(&self) -> usize {
        self.d
    }

    pub fn blocks(&self) -> &[Vec<usize>] {
        &self.blocks
    }

    pub fn num_blocks(&self) -> usize {
        self.blocks.len()
    }

    /// Block sizes in block order.
    pub fn dims(&self) -> Vec<usize> {
        self.blocks.iter().map(|b| b.len()).collect()
    }

    /// Dims rendered as `"5+2+2"`.
    pub fn dims_string(&self) -> String {
        self.dims()
            .iter()
            .map(|n| n.to_string())
            .collect::<Vec<_>>()
            .join("+")
    }

    /// Largest block size.
    pub fn max_dim(&self) -> usize {
        self.dims().into_iter().max().unwrap_or(0)
    }

    /// Product-basis labels of each block.
    pub fn labels(&self) -> Vec<Vec<String>> {
        let idx = BipartiteIndex::new(self.d);
        self.blocks
            .iter()
            .map(|b| b.iter().map(|&u| idx.label(u)).collect())
            .collect()
    }

    /// Multi-line report, one line per block:
    /// `block k (dim n): |i1j1> |i2j2> ...`.
    pub fn report(&self) -> String {
        let idx = BipartiteIndex::new(self.d);
        self.blocks
            .iter()
            .enumerate()
            .map(|(k, b)| {
                let labels: Vec<String> = b.iter().map(|&u| idx.label(u)).collect();
                format!("block {} (dim {}): {}", k + 1, b.len(), labels.join(" "))
            })
            .collect::<Vec<_>>()
            .join("\n")
    }

    /// The principal submatrix of `m` on one block.
    pub fn extract(&self, m: &CMatrix, block: usize) -> CMatrix {
        let b = &self.blocks[block];
        CMatrix::from_fn(b.len(), b.len(), |r, c| m[(b[r], b[c])])
    }

    /// Largest entry of `m` lying outside the block structure.
    pub fn off_block_residual(&self, m: &CMatrix) -> f64 {
        let side = self.d * self.d;
        let mut owner = vec![usize::MAX; side];
        for (k, b) in self.blocks.iter().enumerate() {
            for &u in b {
                owner[u] = k;
            }
        }
        let mut res: f64 = 0.0;
        for r in 0..side {
            for c in 0..side {
                if owner[r] != owner[c] {
                    res = res.max(m[(r, c)].norm());
                }
            }
        }
        res
    }

    /// Re-embeds the extracted blocks into a full matrix (entries outside
    /// the blocks are zero).
    pub fn reassemble(&self, m: &CMatrix) -> CMatrix {
        let side = self.d * self.d;
        let mut out = CMatrix::zeros(side, side);
        for b in &self.blocks {
            for &r in b {
                for &c in b {
                    out[(r, c)] = m[(r, c)];
                }
            }
        }
        out
    }
}

fn components_from_edges(d: usize, mut adjacent: impl FnMut(usize, usize) -> bool) -> Vec<Vec<usize>> {
    let side = d * d;
    let mut seen = vec![false; side];
    let mut comps = Vec::new();
    for start in 0..side {
        if seen[start] {
            continue;
        }
        let mut stack = vec![start];
        let mut comp = Vec::new();
        seen[start] = true;
        while let Some(u) = stack.pop() {
            comp.push(u);
            for (v, visited) in seen.iter_mut().enumerate() {
                if !*visited && (adjacent(u, v) || adjacent(v, u)) {
                    *visited = true;
                    stack.push(v);
                }
            }
        }
        comps.push(comp);
    }
    comps
}

/// Connected components of the numeric support graph of `rho`.
///
/// Vertices are the flat indices `0..d^2`; `u` and `v` are adjacent iff
/// `|rho[u,v]| > tol` for `u != v`. Indices with zero row and column become
/// singleton blocks, so the decomposition always covers all indices, and
/// restricting `rho` to the blocks reproduces it up to entries `<= tol`.
pub fn support_blocks(rho: &CMatrix, d: usize, tol: f64) -> Result<BlockDecomposition> {
    rho.expect_bipartite(d)?;
    let dev = rho.hermiticity_deviation();
    if dev > tol.max(linalg::default_hermiticity_tol(rho)) {
        return Err(Error::NotHermitian {
            deviation: dev,
            tol,
        });
    }
    let comps = components_from_edges(d, |u, v| u != v && rho[(u, v)].norm() > tol);
    Ok(BlockDecomposition::from_components(d, comps))
}

/// Connected components of a symmetry mask: the direct-sum decomposition
/// shared by every operator of the invariance class.
pub fn pattern_blocks(pattern: &ZeroPattern) -> BlockDecomposition {
    let comps = components_from_edges(pattern.d(), |u, v| u != v && pattern.is_allowed(u, v));
    BlockDecomposition::from_components(pattern.d(), comps)
}

/// [`pattern_blocks`] for the mask of `(p, law)`.
pub fn symmetry_blocks(p: &Partition, law: InvarianceLaw) -> BlockDecomposition {
    pattern_blocks(&allowed_mask(p, law))
}

/// Block-wise positive-semidefiniteness: every principal submatrix on a
/// block must have min eigenvalue `>= -tol`.
///
/// Equals the dense PSD verdict whenever `bd` really decouples `rho`
/// (checked; cross-block entries above `tol` raise `InvalidDecomposition`).
pub fn blockwise_psd(rho: &CMatrix, bd: &BlockDecomposition, tol: f64) -> Result<bool> {
    rho.expect_bipartite(bd.d())?;
    let residual = bd.off_block_residual(rho);
    if residual > tol {
        return Err(Error::InvalidDecomposition { residual, tol });
    }
    blockwise_min_eigenvalue(rho, bd, tol).map(|min| min >= -tol)
}

/// Smallest eigenvalue across all blocks (equals the dense minimum
/// eigenvalue up to the decoupling residual).
pub fn blockwise_min_eigenvalue(rho: &CMatrix, bd: &BlockDecomposition, tol: f64) -> Result<f64> {
    let mut min = f64::INFINITY;
    for (k, b) in bd.blocks().iter().enumerate() {
        let block_min = if b.len() == 1 {
            rho[(b[0], b[0])].re
        } else {
            let sub = bd.extract(rho, k);
            linalg::min_eigenvalue(&sub, tol.max(linalg::default_hermiticity_tol(&sub)))?
        };
        min = min.min(block_min);
    }
    Ok(min)
}

/// Verifies the subspace relations linking a state's blocks to its partial
/// transpose's blocks in the 3/3-block case:
/// with `H_1` the largest state block and `H~_3` the smallest transpose
/// block, `H~_1 ∪ H~_3 = H_1` and `H_2 ∪ H_3 = H~_2` as index sets.
pub fn verify_subspace_relations(
    bd_rho: &BlockDecomposition,
    bd_gamma: &BlockDecomposition,
) -> Result<bool> {
    if bd_rho.num_blocks() != 3 || bd_gamma.num_blocks() != 3 {
        return Err(Error::ShapeMismatch {
            left: bd_rho.num_blocks(),
            right: bd_gamma.num_blocks(),
        });
    }
    let mut rho_by_size = bd_rho.blocks().to_vec();
    rho_by_size.sort_by_key(|b| std::cmp::Reverse(b.len()));
    let mut gamma_by_size = bd_gamma.blocks().to_vec();
    gamma_by_size.sort_by_key(|b| std::cmp::Reverse(b.len()));

    let h1 = &rho_by_size[0];
    let g3 = &gamma_by_size[2];
    // H~_1 must be exactly H_1 minus H~_3; the remaining state blocks must
    // union to H~_2. Equal-size transpose blocks are matched by content.
    let mut h1_minus_g3: Vec<usize> = h1.iter().copied().filter(|u| !g3.contains(u)).collect();
    h1_minus_g3.sort_unstable();
    let g1_pos = match (0..2).find(|&k| gamma_by_size[k] == h1_minus_g3) {
        Some(k) => k,
        None => return Ok(false),
    };
    let g2 = &gamma_by_size[1 - g1_pos];
    if h1.len() != h1_minus_g3.len() + g3.len() {
        return Ok(false);
    }
    let mut h2_h3: Vec<usize> = rho_by_size[1]
        .iter()
        .chain(rho_by_size[2].iter())
        .copied()
        .collect();
    h2_h3.sort_unstable();
    Ok(h2_h3 == *g2)
}
