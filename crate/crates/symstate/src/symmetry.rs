//! Diagonal phase subgroups of `U(d)` and the invariance structure they
//! induce on bipartite operators.
//!
//! A subgroup of the diagonal unitaries `exp(i Σ x_k |k><k|)` is fixed by an
//! equality pattern among the phases `x_1..x_d`, i.e. by a [`Partition`] of
//! the local indices. For each partition and each of the two conjugation
//! laws (`U ⊗ Ū` and `U ⊗ U`) the commutant is characterized entry-wise by a
//! [`ZeroPattern`]: an operator commutes with the whole subgroup iff all its
//! entries at forbidden positions vanish. Invariance tests, twirl
//! projections and symmetry detection all reduce to that mask.

use rand::Rng;

use crate::linalg::{kron, BipartiteIndex, C64, CMatrix};
use crate::{Error, Result};

/// Largest local dimension for exhaustive partition enumeration
/// (Bell number B_6 = 203).
pub const MAX_DETECT_DIM: usize = 6;

/// Conjugation law defining invariance.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum InvarianceLaw {
    /// `U ⊗ Ū ρ = ρ U ⊗ Ū` (isotropic-type law).
    UUbar,
    /// `U ⊗ U ρ = ρ U ⊗ U` (Werner-type law, satisfied by partial
    /// transposes of `UUbar`-invariant states).
    UU,
}

impl InvarianceLaw {
    /// The law satisfied by the partial transpose of a state obeying `self`.
    pub fn transposed(self) -> Self {
        match self {
            InvarianceLaw::UUbar => InvarianceLaw::UU,
            InvarianceLaw::UU => InvarianceLaw::UUbar,
        }
    }

    pub fn as_str(self) -> &'static str {
        match self {
            InvarianceLaw::UUbar => "uubar",
            InvarianceLaw::UU => "uu",
        }
    }
}

impl std::str::FromStr for InvarianceLaw {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "uubar" | "u-ubar" => Ok(InvarianceLaw::UUbar),
            "uu" | "u-u" => Ok(InvarianceLaw::UU),
            other => Err(Error::BadPartition {
                text: other.into(),
                reason: "expected law \"uubar\" or \"uu\"".into(),
            }),
        }
    }
}

/// A partition of the local index set `{1..d}` into phase-equality classes.
///
/// Stored as a restricted-growth string: `class[k]` is the 0-based class of
/// local index `k+1`, with `class[0] == 0` and each new class taking the
/// next unused label. That canonical form is unique per partition.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Partition {
    class: Vec<usize>,
    num_classes: usize,
}

impl Partition {
    /// Builds a partition from any class assignment (one label per local
    /// index); labels are canonicalized by order of first appearance.
    pub fn from_assignment(labels: &[usize]) -> Result<Self> {
        if labels.is_empty() {
            return Err(Error::BadPartition {
                text: String::new(),
                reason: "empty assignment".into(),
            });
        }
        let mut seen: Vec<usize> = Vec::new();
        let mut class = Vec::with_capacity(labels.len());
        for &l in labels {
            let c = match seen.iter().position(|&s| s == l) {
                Some(c) => c,
                None => {
                    seen.push(l);
                    seen.len() - 1
                }
            };
            class.push(c);
        }
        let num_classes = seen.len();
        Ok(Self { class, num_classes })
    }

    /// The single-class (trivial) partition of `{1..d}`.
    pub fn trivial(d: usize) -> Self {
        Self {
            class: vec![0; d],
            num_classes: 1,
        }
    }

    /// The all-singletons (maximal) partition of `{1..d}`.
    pub fn maximal(d: usize) -> Self {
        Self {
            class: (0..d).collect(),
            num_classes: d,
        }
    }

    pub fn d(&self) -> usize {
        self.class.len()
    }

    /// Number of classes `m`.
    pub fn num_classes(&self) -> usize {
        self.num_classes
    }

    /// 0-based class of the 1-based local index `i`.
    pub fn class_of(&self, i: usize) -> usize {
        self.class[i - 1]
    }

    /// Canonical restricted-growth string.
    pub fn rgs(&self) -> &[usize] {
        &self.class
    }

    /// Classes as sorted lists of 1-based indices, in order of first
    /// appearance.
    pub fn classes(&self) -> Vec<Vec<usize>> {
        let mut out = vec![Vec::new(); self.num_classes];
        for (k, &c) in self.class.iter().enumerate() {
            out[c].push(k + 1);
        }
        out
    }

    /// True when every class of `self` is contained in a class of `other`.
    pub fn refines(&self, other: &Partition) -> bool {
        if self.d() != other.d() {
            return false;
        }
        // Indices in one self-class must share their other-class.
        (1..=self.d()).all(|i| {
            (1..=self.d()).all(|j| {
                self.class_of(i) != self.class_of(j) || other.class_of(i) == other.class_of(j)
            })
        })
    }

    /// Image of the partition under a local relabeling `i -> perm[i-1]`
    /// (1-based images).
    pub fn permuted(&self, perm: &[usize]) -> Result<Partition> {
        if perm.len() != self.d() {
            return Err(Error::BadPermutation {
                reason: format!("length {} does not match d = {}", perm.len(), self.d()),
            });
        }
        let mut labels = vec![0usize; self.d()];
        for i in 1..=self.d() {
            labels[perm[i - 1] - 1] = self.class_of(i);
        }
        Partition::from_assignment(&labels)
    }

    /// Parses the bar syntax, e.g. `"13|2"` for `{{1,3},{2}}`.
    ///
    /// Classes are separated by `|`; within a class, indices are single
    /// digits (d <= 9) or comma-separated numbers.
    pub fn parse(text: &str, d: usize) -> Result<Partition> {
        let err = |reason: &str| Error::BadPartition {
            text: text.into(),
            reason: reason.into(),
        };
        let mut labels = vec![usize::MAX; d];
        for (class_no, group) in text.split('|').enumerate() {
            let group = group.trim();
            if group.is_empty() {
                return Err(err("empty class"));
            }
            let indices: Vec<usize> = if group.contains(',') {
                group
                    .split(',')
                    .map(|t| t.trim().parse::<usize>().map_err(|_| err("bad index")))
                    .collect::<Result<_>>()?
            } else {
                group
                    .chars()
                    .map(|ch| {
                        ch.to_digit(10)
                            .map(|v| v as usize)
                            .ok_or_else(|| err("bad index"))
                    })
                    .collect::<Result<_>>()?
            };
            for i in indices {
                if i < 1 || i > d {
                    return Err(err(&format!("index {i} out of range 1..={d}")));
                }
                if labels[i - 1] != usize::MAX {
                    return Err(err(&format!("index {i} listed twice")));
                }
                labels[i - 1] = class_no;
            }
        }
        if labels.contains(&usize::MAX) {
            return Err(err("not all indices assigned"));
        }
        Partition::from_assignment(&labels)
    }
}

impl std::fmt::Display for Partition {
    /// Renders the bar syntax; classes in order of first appearance,
    /// indices ascending (comma-separated when d > 9).
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let sep_commas = self.d() > 9;
        for (k, class) in self.classes().iter().enumerate() {
            if k > 0 {
                write!(f, "|")?;
            }
            for (n, i) in class.iter().enumerate() {
                if n > 0 && sep_commas {
                    write!(f, ",")?;
                }
                write!(f, "{i}")?;
            }
        }
        Ok(())
    }
}

/// All partitions of `{1..d}` in restricted-growth-string order.
pub fn all_partitions(d: usize) -> Vec<Partition> {
    let mut out = Vec::new();
    let mut rgs = vec![0usize; d];
    loop {
        out.push(Partition::from_assignment(&rgs).expect("rgs is a valid assignment"));
        // Next restricted growth string: increment the rightmost slot that
        // can still grow, reset everything after it.
        let mut k = d;
        loop {
            if k <= 1 {
                return out;
            }
            k -= 1;
            let max_prefix = rgs[..k].iter().copied().max().unwrap_or(0);
            if rgs[k] <= max_prefix {
                rgs[k] += 1;
                for slot in rgs.iter_mut().skip(k + 1) {
                    *slot = 0;
                }
                break;
            }
        }
    }
}

/// Boolean `d^2 x d^2` mask of entries allowed to be nonzero under an
/// invariance law.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ZeroPattern {
    d: usize,
    allowed: Vec<bool>,
}

impl ZeroPattern {
    pub fn d(&self) -> usize {
        self.d
    }

    pub fn side(&self) -> usize {
        self.d * self.d
    }

    pub fn is_allowed(&self, row: usize, col: usize) -> bool {
        self.allowed[row * self.side() + col]
    }

    /// True when `other` allows every entry `self` allows.
    pub fn subset_of(&self, other: &ZeroPattern) -> bool {
        self.d == other.d
            && self
                .allowed
                .iter()
                .zip(&other.allowed)
                .all(|(&a, &b)| !a || b)
    }

    pub fn count_allowed(&self) -> usize {
        self.allowed.iter().filter(|&&a| a).count()
    }
}

/// Diagonal unitary `diag(e^{i y_{c(k)}})` for a partition and one phase
/// per class.
pub fn group_element(p: &Partition, y: &[f64]) -> Result<CMatrix> {
    if y.len() != p.num_classes() {
        return Err(Error::ArityMismatch {
            expected: p.num_classes(),
            got: y.len(),
        });
    }
    let d = p.d();
    let mut u = CMatrix::zeros(d, d);
    for k in 1..=d {
        u[(k - 1, k - 1)] = C64::from_polar(1.0, y[p.class_of(k)]);
    }
    Ok(u)
}

/// Entry-wise characterization of the commutant of the phase subgroup.
///
/// Conjugating by `U_x ⊗ V_x` multiplies the entry `((i,j),(k,l))` by
/// `e^{i(x_i ∓ x_j - x_k ± x_l)}` (upper signs for `U ⊗ Ū`). The entry may
/// be nonzero for every group element iff the class-indicator combination
/// matches: `e_{c(i)} - e_{c(j)} = e_{c(k)} - e_{c(l)}` for `UUbar`, and
/// with `+` instead of `-` for `UU`.
pub fn allowed_mask(p: &Partition, law: InvarianceLaw) -> ZeroPattern {
    let d = p.d();
    let idx = BipartiteIndex::new(d);
    let m = p.num_classes();
    let signature = |u: usize| -> Vec<i32> {
        let (i, j) = idx.pair(u);
        let mut v = vec![0i32; m];
        v[p.class_of(i)] += 1;
        match law {
            InvarianceLaw::UUbar => v[p.class_of(j)] -= 1,
            InvarianceLaw::UU => v[p.class_of(j)] += 1,
        }
        v
    };
    let sigs: Vec<Vec<i32>> = (0..d * d).map(signature).collect();
    let side = d * d;
    let mut allowed = vec![false; side * side];
    for row in 0..side {
        for col in 0..side {
            allowed[row * side + col] = sigs[row] == sigs[col];
        }
    }
    ZeroPattern { d, allowed }
}

/// Largest magnitude among entries of `rho` at positions forbidden by the
/// mask of `(p, law)`.
pub fn max_forbidden_entry(rho: &CMatrix, p: &Partition, law: InvarianceLaw) -> Result<f64> {
    rho.expect_bipartite(p.d())?;
    let mask = allowed_mask(p, law);
    let side = mask.side();
    let mut max: f64 = 0.0;
    for row in 0..side {
        for col in 0..side {
            if !mask.is_allowed(row, col) {
                max = max.max(rho[(row, col)].norm());
            }
        }
    }
    Ok(max)
}

/// Exact (mask-based) invariance test: true iff every forbidden entry has
/// magnitude at most `tol`.
pub fn is_invariant(rho: &CMatrix, p: &Partition, law: InvarianceLaw, tol: f64) -> Result<bool> {
    Ok(max_forbidden_entry(rho, p, law)? <= tol)
}

/// Monte-Carlo cross-check of invariance: the largest entry-wise deviation
/// of `(U ⊗ V) rho (U ⊗ V)†` from `rho` over random group elements, with
/// `V = Ū` for `UUbar` and `V = U` for `UU`.
pub fn sampled_deviation(
    rho: &CMatrix,
    p: &Partition,
    law: InvarianceLaw,
    samples: usize,
    rng: &mut impl Rng,
) -> Result<f64> {
    rho.expect_bipartite(p.d())?;
    let mut max_dev: f64 = 0.0;
    for _ in 0..samples {
        let y: Vec<f64> = (0..p.num_classes())
            .map(|_| rng.gen_range(0.0..std::f64::consts::TAU))
            .collect();
        let u = group_element(p, &y)?;
        let v = match law {
            InvarianceLaw::UUbar => u.conj(),
            InvarianceLaw::UU => u.clone(),
        };
        let w = kron(&u, &v);
        let conjugated = w.matmul(rho).matmul(&w.dagger());
        max_dev = max_dev.max(conjugated.max_abs_diff(rho));
    }
    Ok(max_dev)
}

/// Projects `rho` onto the invariant set of `(p, law)` by zeroing all
/// forbidden entries.
///
/// Equals the Haar average over the subgroup; idempotent, trace-preserving,
/// Hermiticity- and positivity-preserving.
pub fn twirl(rho: &CMatrix, p: &Partition, law: InvarianceLaw) -> Result<CMatrix> {
    rho.expect_bipartite(p.d())?;
    let mask = allowed_mask(p, law);
    let side = mask.side();
    Ok(CMatrix::from_fn(side, side, |row, col| {
        if mask.is_allowed(row, col) {
            rho[(row, col)]
        } else {
            C64::new(0.0, 0.0)
        }
    }))
}

/// All partitions whose phase subgroup leaves `rho` invariant, sorted by
/// decreasing class count (finest symmetry first), ties in
/// restricted-growth-string order.
///
/// The trivial partition always appears: its group elements conjugate by a
/// global phase, which cancels under either law. Brute-force enumeration is
/// capped at `d <= 6`.
pub fn detect_symmetry(rho: &CMatrix, law: InvarianceLaw, tol: f64) -> Result<Vec<Partition>> {
    let d = rho.local_dim()?;
    if d > MAX_DETECT_DIM {
        return Err(Error::DimensionTooLarge {
            d,
            max: MAX_DETECT_DIM,
        });
    }
    let mut found: Vec<Partition> = all_partitions(d)
        .into_iter()
        .filter(|p| matches!(max_forbidden_entry(rho, p, law), Ok(m) if m <= tol))
        .collect();
    found.sort_by(|a, b| {
        b.num_classes()
            .cmp(&a.num_classes())
            .then_with(|| a.rgs().cmp(b.rgs()))
    });
    Ok(found)
}

/// Finest invariant partition of `rho` under `law`.
pub fn finest_symmetry(rho: &CMatrix, law: InvarianceLaw, tol: f64) -> Result<Partition> {
    Ok(detect_symmetry(rho, law, tol)?
        .into_iter()
        .next()
        .expect("the trivial partition is always invariant"))
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::rngs::StdRng;
    use rand::SeedableRng;

    fn c(re: f64, im: f64) -> C64 {
        C64::new(re, im)
    }

    fn p(text: &str, d: usize) -> Partition {
        Partition::parse(text, d).unwrap()
    }

    fn random_hermitian(n: usize, rng: &mut StdRng) -> CMatrix {
        let mut m = CMatrix::zeros(n, n);
        for r in 0..n {
            m[(r, r)] = c(rng.gen_range(-1.0..1.0), 0.0);
            for col in r + 1..n {
                let z = c(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0));
                m[(r, col)] = z;
                m[(col, r)] = z.conj();
            }
        }
        m
    }

    #[test]
    fn partition_parse_and_display_round_trip() {
        let part = p("13|2", 3);
        assert_eq!(part.classes(), vec![vec![1, 3], vec![2]]);
        assert_eq!(part.to_string(), "13|2");
        assert_eq!(p("2|13", 3), part);
        assert_eq!(p("123", 3), Partition::trivial(3));
        assert_eq!(p("1|2|3", 3), Partition::maximal(3));
        assert_eq!(
            p("1,10|2|3|4|5|6|7|8|9", 10).to_string(),
            "1,10|2|3|4|5|6|7|8|9"
        );
    }

    #[test]
    fn partition_parse_rejects_bad_input() {
        assert!(Partition::parse("14|2", 3).is_err());
        assert!(Partition::parse("11|23", 3).is_err());
        assert!(Partition::parse("1|2", 3).is_err());
        assert!(Partition::parse("", 3).is_err());
        assert!(Partition::parse("1||23", 3).is_err());
    }

    #[test]
    fn partition_count_is_bell_number() {
        assert_eq!(all_partitions(3).len(), 5);
        assert_eq!(all_partitions(4).len(), 15);
        assert_eq!(all_partitions(5).len(), 52);
        assert_eq!(all_partitions(6).len(), 203);
    }

    #[test]
    fn refinement_relation() {
        assert!(Partition::maximal(3).refines(&p("13|2", 3)));
        assert!(p("13|2", 3).refines(&Partition::trivial(3)));
        assert!(!p("13|2", 3).refines(&p("12|3", 3)));
    }

    #[test]
    fn permuted_partition_relabels_classes() {
        // 2 <-> 3 swap turns {{1,3},{2}} into {{1,2},{3}}.
        assert_eq!(p("13|2", 3).permuted(&[1, 3, 2]).unwrap(), p("12|3", 3));
        // Cycle 1->2, 2->3, 3->1 also lands on {{1,2},{3}}.
        assert_eq!(p("13|2", 3).permuted(&[2, 3, 1]).unwrap(), p("12|3", 3));
    }

    #[test]
    fn group_element_phases() {
        let u = group_element(&p("1|2|3", 3), &[0.0, 0.0, 0.0]).unwrap();
        assert_eq!(u, CMatrix::identity(3));
        let u = group_element(&p("13|2", 3), &[std::f64::consts::PI, 0.0]).unwrap();
        assert!((u[(0, 0)] - c(-1.0, 0.0)).norm() < 1e-15);
        assert!((u[(1, 1)] - c(1.0, 0.0)).norm() < 1e-15);
        assert!((u[(2, 2)] - c(-1.0, 0.0)).norm() < 1e-15);
        let u = group_element(
            &p("1|2|3", 3),
            &[0.0, std::f64::consts::FRAC_PI_2, std::f64::consts::PI],
        )
        .unwrap();
        assert!((u[(1, 1)] - c(0.0, 1.0)).norm() < 1e-15);
        assert!((u[(2, 2)] - c(-1.0, 0.0)).norm() < 1e-15);
        assert!(matches!(
            group_element(&p("13|2", 3), &[0.0]),
            Err(Error::ArityMismatch { .. })
        ));
    }

    /// Mask of the maximal partition under `U ⊗ Ū`: off-diagonal entries
    /// only at ((i,i),(j,j)).
    #[test]
    fn maximal_mask_matches_correlated_pattern() {
        let mask = allowed_mask(&Partition::maximal(3), InvarianceLaw::UUbar);
        let idx = BipartiteIndex::new(3);
        for row in 0..9 {
            for col in 0..9 {
                let (i, j) = idx.pair(row);
                let (k, l) = idx.pair(col);
                let expect = (i == j && k == l) || (i == k && j == l);
                assert_eq!(mask.is_allowed(row, col), expect, "({row},{col})");
            }
        }
    }

    /// Mask of {{1,3},{2}} under `U ⊗ Ū`, checked against the full 9x9
    /// dot pattern (rows list allowed 1-based columns).
    #[test]
    fn two_class_mask_matches_dot_pattern() {
        let mask = allowed_mask(&p("13|2", 3), InvarianceLaw::UUbar);
        let expected: [&[usize]; 9] = [
            &[1, 3, 5, 7, 9],
            &[2, 8],
            &[1, 3, 5, 7, 9],
            &[4, 6],
            &[1, 3, 5, 7, 9],
            &[4, 6],
            &[1, 3, 5, 7, 9],
            &[2, 8],
            &[1, 3, 5, 7, 9],
        ];
        for (row, allowed_cols) in expected.iter().enumerate() {
            for col in 0..9 {
                assert_eq!(
                    mask.is_allowed(row, col),
                    allowed_cols.contains(&(col + 1)),
                    "({row},{col})"
                );
            }
        }
    }

    #[test]
    fn trivial_partition_allows_everything() {
        let mask = allowed_mask(&Partition::trivial(3), InvarianceLaw::UUbar);
        assert_eq!(mask.count_allowed(), 81);
        let mask = allowed_mask(&Partition::trivial(3), InvarianceLaw::UU);
        assert_eq!(mask.count_allowed(), 81);
    }

    #[test]
    fn mask_is_hermitian_symmetric_with_allowed_diagonal() {
        for part in all_partitions(4) {
            for law in [InvarianceLaw::UUbar, InvarianceLaw::UU] {
                let mask = allowed_mask(&part, law);
                for row in 0..16 {
                    assert!(mask.is_allowed(row, row));
                    for col in 0..16 {
                        assert_eq!(mask.is_allowed(row, col), mask.is_allowed(col, row));
                    }
                }
            }
        }
    }

    #[test]
    fn refinement_shrinks_masks() {
        let parts = all_partitions(4);
        for a in &parts {
            for b in &parts {
                if a.refines(b) {
                    for law in [InvarianceLaw::UUbar, InvarianceLaw::UU] {
                        assert!(allowed_mask(a, law).subset_of(&allowed_mask(b, law)));
                    }
                }
            }
        }
    }

    /// Mask-conforming matrices are fixed by group conjugation; matrices
    /// with a forbidden entry move.
    #[test]
    fn mask_agrees_with_group_conjugation() {
        let mut rng = StdRng::seed_from_u64(0);
        for part in all_partitions(3) {
            for law in [InvarianceLaw::UUbar, InvarianceLaw::UU] {
                let m = random_hermitian(9, &mut rng);
                let conforming = twirl(&m, &part, law).unwrap();
                let dev = sampled_deviation(&conforming, &part, law, 50, &mut rng).unwrap();
                assert!(dev <= 1e-12, "{part} {law:?}: deviation {dev}");

                let mask = allowed_mask(&part, law);
                let side = mask.side();
                if let Some((row, col)) = (0..side)
                    .flat_map(|r| (0..side).map(move |c2| (r, c2)))
                    .find(|&(r, c2)| !mask.is_allowed(r, c2))
                {
                    let mut bad = conforming.clone();
                    bad[(row, col)] = c(1.0, 0.0);
                    bad[(col, row)] = c(1.0, 0.0);
                    let dev = sampled_deviation(&bad, &part, law, 50, &mut rng).unwrap();
                    assert!(dev >= 1e-3, "{part} {law:?}: forbidden entry moved only {dev}");
                }
            }
        }
    }

    #[test]
    fn twirl_is_idempotent_and_preserves_trace() {
        let mut rng = StdRng::seed_from_u64(42);
        for part in all_partitions(3) {
            let m = random_hermitian(9, &mut rng);
            let t = twirl(&m, &part, InvarianceLaw::UUbar).unwrap();
            assert_eq!(twirl(&t, &part, InvarianceLaw::UUbar).unwrap(), t);
            assert_eq!(t.trace(), m.trace());
            assert!(t.hermiticity_deviation() <= 1e-15);
        }
    }

    #[test]
    fn twirl_under_trivial_partition_is_identity_map() {
        let mut rng = StdRng::seed_from_u64(1);
        let m = random_hermitian(9, &mut rng);
        assert_eq!(
            twirl(&m, &Partition::trivial(3), InvarianceLaw::UUbar).unwrap(),
            m
        );
    }

    /// The mask projection equals the Haar average over the subgroup,
    /// approximated by Monte Carlo.
    #[test]
    fn twirl_matches_monte_carlo_group_average() {
        let mut rng = StdRng::seed_from_u64(123);
        let part = p("13|2", 3);
        let m = random_hermitian(9, &mut rng);
        let t = twirl(&m, &part, InvarianceLaw::UUbar).unwrap();
        let samples = 10_000;
        let mut mean = CMatrix::zeros(9, 9);
        for _ in 0..samples {
            let y: Vec<f64> = (0..part.num_classes())
                .map(|_| rng.gen_range(0.0..std::f64::consts::TAU))
                .collect();
            let u = group_element(&part, &y).unwrap();
            let w = kron(&u, &u.conj());
            mean = mean.add(&w.matmul(&m).matmul(&w.dagger()));
        }
        mean = mean.scale(1.0 / samples as f64);
        assert!(mean.max_abs_diff(&t) <= 5e-2 * m.max_abs());
    }

    #[test]
    fn detect_symmetry_on_identity_includes_maximal() {
        let rho = CMatrix::identity(9).scale(1.0 / 9.0);
        let found = detect_symmetry(&rho, InvarianceLaw::UUbar, 1e-12).unwrap();
        assert_eq!(found.len(), all_partitions(3).len());
        assert_eq!(found[0], Partition::maximal(3));
        assert_eq!(*found.last().unwrap(), Partition::trivial(3));
    }

    #[test]
    fn detect_symmetry_caps_dimension() {
        let rho = CMatrix::identity(49).scale(1.0 / 49.0);
        assert!(matches!(
            detect_symmetry(&rho, InvarianceLaw::UUbar, 1e-12),
            Err(Error::DimensionTooLarge { .. })
        ));
    }

    #[test]
    fn invariance_requires_matching_dimension() {
        let rho = CMatrix::identity(9);
        assert!(is_invariant(&rho, &p("1|2|3|4", 4), InvarianceLaw::UUbar, 1e-12).is_err());
    }
}
