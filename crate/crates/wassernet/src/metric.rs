//! Finite metric spaces, metric pairs, Hausdorff distance, and isometry
//! groups.
//!
//! A [`FiniteMetricSpace`] is an indexed point set together with a validated
//! distance matrix. Validation checks every metric axiom up to an absolute
//! tolerance and reports the first violation with its witnessing indices.
//! Everything is immutable after construction, so values can be shared freely
//! across threads behind an [`Arc`].

use std::collections::HashSet;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::tol;

/// Shared handle to a validated space. Maps, measures and nets keep one of
/// these so that operations can check that their operands agree.
pub type SharedSpace = Arc<FiniteMetricSpace>;

/// Default cap on the point count for exhaustive isometry enumeration.
pub const DEFAULT_ISOMETRY_CAP: usize = 10;

/// A finite metric space: `n` points and an `n x n` distance matrix that
/// passed all axiom checks.
#[derive(Debug, Clone)]
pub struct FiniteMetricSpace {
    n: usize,
    d: Vec<f64>,
    labels: Option<Vec<String>>,
    tol: f64,
    diam: f64,
}

impl PartialEq for FiniteMetricSpace {
    /// Content equality: same size and bitwise-equal distance matrix.
    /// Labels are cosmetic and do not take part in identity.
    fn eq(&self, other: &Self) -> bool {
        self.n == other.n && self.d == other.d
    }
}

impl FiniteMetricSpace {
    pub fn n(&self) -> usize {
        self.n
    }

    #[inline]
    pub fn dist(&self, i: usize, j: usize) -> f64 {
        self.d[i * self.n + j]
    }

    /// Max of all pairwise distances (0 for a single point).
    pub fn diameter(&self) -> f64 {
        self.diam
    }

    pub fn labels(&self) -> Option<&[String]> {
        self.labels.as_deref()
    }

    /// Absolute tolerance the axiom checks were performed with.
    pub fn tolerance(&self) -> f64 {
        self.tol
    }

    /// The distance matrix as rows, e.g. for serialization.
    pub fn rows(&self) -> Vec<Vec<f64>> {
        (0..self.n)
            .map(|i| self.d[i * self.n..(i + 1) * self.n].to_vec())
            .collect()
    }

    pub fn label_of(&self, i: usize) -> String {
        match &self.labels {
            Some(ls) => ls[i].clone(),
            None => i.to_string(),
        }
    }

    /// Restriction of the metric to a subset of points, in subset order.
    pub fn restriction(&self, subset: &[usize]) -> Result<FiniteMetricSpace> {
        let rows: Vec<Vec<f64>> = subset
            .iter()
            .map(|&i| subset.iter().map(|&j| self.dist(i, j)).collect())
            .collect();
        let labels = subset.iter().map(|&i| self.label_of(i)).collect();
        validate_metric_with(&rows, Some(labels), self.tol)
    }
}

/// Validate a square matrix as a metric and wrap it into a space.
///
/// Checks run in this order and the first failure is returned: squareness,
/// finiteness, zero diagonal, symmetry, nonnegativity, positivity off the
/// diagonal, triangle inequality. Comparisons use the absolute tolerance
/// [`tol::METRIC`].
pub fn validate_metric(matrix: &[Vec<f64>]) -> Result<FiniteMetricSpace> {
    validate_metric_with(matrix, None, tol::METRIC)
}

/// Same as [`validate_metric`] with explicit labels and tolerance.
pub fn validate_metric_with(
    matrix: &[Vec<f64>],
    labels: Option<Vec<String>>,
    tol: f64,
) -> Result<FiniteMetricSpace> {
    let n = matrix.len();
    for (row, r) in matrix.iter().enumerate() {
        if r.len() != n {
            return Err(Error::NotSquare {
                rows: n,
                row,
                cols: r.len(),
            });
        }
    }
    if let Some(ls) = &labels {
        if ls.len() != n {
            return Err(Error::NotSquare {
                rows: n,
                row: 0,
                cols: ls.len(),
            });
        }
    }
    for i in 0..n {
        for j in 0..n {
            if !matrix[i][j].is_finite() {
                return Err(Error::NonFinite { i, j });
            }
        }
    }
    for (i, row) in matrix.iter().enumerate() {
        if row[i].abs() > tol {
            return Err(Error::NonZeroDiagonal { i, value: row[i] });
        }
    }
    for i in 0..n {
        for j in (i + 1)..n {
            if (matrix[i][j] - matrix[j][i]).abs() > tol {
                return Err(Error::Asymmetry { i, j });
            }
        }
    }
    for i in 0..n {
        for j in 0..n {
            if i != j && matrix[i][j] < -tol {
                return Err(Error::NegativeEntry { i, j });
            }
        }
    }
    for i in 0..n {
        for j in (i + 1)..n {
            if matrix[i][j].abs() <= tol {
                return Err(Error::ZeroOffDiagonal { i, j });
            }
        }
    }
    for i in 0..n {
        for j in 0..n {
            for k in 0..n {
                if matrix[i][k] > matrix[i][j] + matrix[j][k] + tol {
                    return Err(Error::TriangleViolation { i, j, k });
                }
            }
        }
    }

    let mut d = Vec::with_capacity(n * n);
    for row in matrix {
        d.extend_from_slice(row);
    }
    let diam = d.iter().cloned().fold(0.0, f64::max);
    Ok(FiniteMetricSpace {
        n,
        d,
        labels,
        tol,
        diam,
    })
}

/// Shortest-path closure of a symmetric nonnegative matrix (Floyd-Warshall).
/// Repairs triangle violations by replacing each entry with the length of
/// the shortest path between its endpoints.
pub fn metric_closure(matrix: &[Vec<f64>]) -> Vec<Vec<f64>> {
    let n = matrix.len();
    let mut d: Vec<Vec<f64>> = matrix.to_vec();
    for k in 0..n {
        for i in 0..n {
            for j in 0..n {
                let via = d[i][k] + d[k][j];
                if via < d[i][j] {
                    d[i][j] = via;
                }
            }
        }
    }
    d
}

fn check_subset(space: &FiniteMetricSpace, subset: &[usize]) -> Result<()> {
    if subset.is_empty() {
        return Err(Error::EmptySubset);
    }
    for &i in subset {
        if i >= space.n() {
            return Err(Error::IndexOutOfRange {
                index: i,
                n: space.n(),
            });
        }
    }
    Ok(())
}

/// Hausdorff distance between two nonempty subsets of one space:
/// `max( max_{s in S} d(s, T), max_{t in T} d(t, S) )`.
pub fn hausdorff_distance(space: &FiniteMetricSpace, s: &[usize], t: &[usize]) -> Result<f64> {
    check_subset(space, s)?;
    check_subset(space, t)?;
    let one_sided = |from: &[usize], to: &[usize]| -> f64 {
        from.iter()
            .map(|&a| {
                to.iter()
                    .map(|&b| space.dist(a, b))
                    .fold(f64::INFINITY, f64::min)
            })
            .fold(0.0, f64::max)
    };
    Ok(one_sided(s, t).max(one_sided(t, s)))
}

/// A space with a distinguished nonempty subset of points.
#[derive(Debug, Clone)]
pub struct MetricPair {
    space: SharedSpace,
    subset: Vec<usize>,
    sub: SharedSpace,
}

impl MetricPair {
    /// Indices are sorted and deduplicated; the induced subspace is built
    /// (and re-validated) up front.
    pub fn new(space: SharedSpace, mut subset: Vec<usize>) -> Result<Self> {
        subset.sort_unstable();
        subset.dedup();
        check_subset(&space, &subset)?;
        let sub = Arc::new(space.restriction(&subset)?);
        Ok(MetricPair { space, subset, sub })
    }

    pub fn space(&self) -> &SharedSpace {
        &self.space
    }

    /// Subset as sorted global indices.
    pub fn subset(&self) -> &[usize] {
        &self.subset
    }

    /// The induced metric space on the subset, points in subset order.
    pub fn subspace(&self) -> &SharedSpace {
        &self.sub
    }

    /// Translate a local subspace index to the global index.
    pub fn to_global(&self, local: usize) -> usize {
        self.subset[local]
    }

    /// Translate a global index into the subset to its local position.
    pub fn to_local(&self, global: usize) -> Option<usize> {
        self.subset.binary_search(&global).ok()
    }

    pub fn contains(&self, global: usize) -> bool {
        self.to_local(global).is_some()
    }
}

/// A permutation of `{0..n-1}`, stored as its image vector.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Permutation {
    image: Vec<usize>,
}

impl Permutation {
    pub fn new(image: Vec<usize>) -> Result<Self> {
        let n = image.len();
        let mut seen = vec![false; n];
        for (index, &v) in image.iter().enumerate() {
            if v >= n || seen[v] {
                return Err(Error::InvalidPermutation { n, index });
            }
            seen[v] = true;
        }
        Ok(Permutation { image })
    }

    pub fn identity(n: usize) -> Self {
        Permutation {
            image: (0..n).collect(),
        }
    }

    pub fn n(&self) -> usize {
        self.image.len()
    }

    #[inline]
    pub fn apply(&self, i: usize) -> usize {
        self.image[i]
    }

    pub fn image(&self) -> &[usize] {
        &self.image
    }

    /// `self . other`: apply `other` first, then `self`.
    pub fn compose(&self, other: &Permutation) -> Permutation {
        Permutation {
            image: other.image.iter().map(|&i| self.image[i]).collect(),
        }
    }

    pub fn inverse(&self) -> Permutation {
        let mut inv = vec![0; self.image.len()];
        for (i, &v) in self.image.iter().enumerate() {
            inv[v] = i;
        }
        Permutation { image: inv }
    }

    pub fn is_identity(&self) -> bool {
        self.image.iter().enumerate().all(|(i, &v)| i == v)
    }
}

/// A closed set of distance-preserving permutations of one space, containing
/// the identity.
#[derive(Debug, Clone)]
pub struct IsometryGroup {
    space: SharedSpace,
    elements: Vec<Permutation>,
}

impl IsometryGroup {
    /// Validate `elements` as a group of isometries of `space`.
    ///
    /// Each element must preserve distances within `tol`; the set must
    /// contain the identity and be closed under composition and inverse.
    pub fn from_elements(
        space: SharedSpace,
        elements: Vec<Permutation>,
        tol: f64,
    ) -> Result<Self> {
        for (idx, g) in elements.iter().enumerate() {
            if g.n() != space.n() {
                return Err(Error::MapLengthMismatch {
                    expected: space.n(),
                    got: g.n(),
                });
            }
            let dev = isometry_deviation(&space, g);
            if dev > tol {
                return Err(Error::NotIsometric {
                    element: idx,
                    deviation: dev,
                });
            }
        }
        let set: HashSet<&Permutation> = elements.iter().collect();
        if set.len() != elements.len() {
            return Err(Error::GroupAxiomViolation {
                reason: "duplicate elements".into(),
            });
        }
        if !set.contains(&Permutation::identity(space.n())) {
            return Err(Error::GroupAxiomViolation {
                reason: "identity missing".into(),
            });
        }
        for g in &elements {
            if !set.contains(&g.inverse()) {
                return Err(Error::GroupAxiomViolation {
                    reason: "not closed under inverse".into(),
                });
            }
            for h in &elements {
                if !set.contains(&g.compose(h)) {
                    return Err(Error::GroupAxiomViolation {
                        reason: "not closed under composition".into(),
                    });
                }
            }
        }
        Ok(IsometryGroup { space, elements })
    }

    /// The cyclic group generated by one isometry.
    pub fn cyclic(space: SharedSpace, generator: Permutation) -> Result<Self> {
        let dev = isometry_deviation(&space, &generator);
        if dev > space.tolerance() {
            return Err(Error::NotIsometric {
                element: 0,
                deviation: dev,
            });
        }
        let mut elements = vec![Permutation::identity(space.n())];
        let mut cur = generator.clone();
        while !cur.is_identity() {
            elements.push(cur.clone());
            cur = generator.compose(&cur);
            if elements.len() > space.n() * space.n() + 1 {
                return Err(Error::GroupAxiomViolation {
                    reason: "generator does not have finite order".into(),
                });
            }
        }
        IsometryGroup::from_elements(space, elements, f64::INFINITY)
    }

    pub fn trivial(space: SharedSpace) -> Self {
        let id = Permutation::identity(space.n());
        IsometryGroup {
            space,
            elements: vec![id],
        }
    }

    pub fn space(&self) -> &SharedSpace {
        &self.space
    }

    pub fn order(&self) -> usize {
        self.elements.len()
    }

    pub fn elements(&self) -> &[Permutation] {
        &self.elements
    }

    pub fn element(&self, idx: usize) -> &Permutation {
        &self.elements[idx]
    }

    pub fn index_of(&self, g: &Permutation) -> Option<usize> {
        self.elements.iter().position(|h| h == g)
    }
}

/// Largest displacement of any distance under `g`:
/// `max_{i,j} |d(g(i), g(j)) - d(i, j)|`.
pub fn isometry_deviation(space: &FiniteMetricSpace, g: &Permutation) -> f64 {
    let n = space.n();
    let mut worst = 0.0f64;
    for i in 0..n {
        for j in (i + 1)..n {
            let dev = (space.dist(g.apply(i), g.apply(j)) - space.dist(i, j)).abs();
            if dev > worst {
                worst = dev;
            }
        }
    }
    worst
}

/// Uniform metric on isometries of one space: `max_i d(g(i), h(i))`.
pub fn uniform_group_distance(space: &FiniteMetricSpace, g: &Permutation, h: &Permutation) -> f64 {
    (0..space.n())
        .map(|i| space.dist(g.apply(i), h.apply(i)))
        .fold(0.0, f64::max)
}

/// Enumerate the full isometry group by backtracking over partial
/// permutations, with the default point-count cap.
pub fn enumerate_isometries(space: &SharedSpace) -> Result<IsometryGroup> {
    enumerate_isometries_capped(space, DEFAULT_ISOMETRY_CAP)
}

/// Enumerate the full isometry group of a space with at most `cap` points.
///
/// Candidates are extended one point at a time and pruned as soon as any
/// distance to an already-placed point disagrees, so rigid spaces cost far
/// less than `n!` checks. Elements come out in lexicographic image order.
pub fn enumerate_isometries_capped(space: &SharedSpace, cap: usize) -> Result<IsometryGroup> {
    let n = space.n();
    if n > cap {
        return Err(Error::TooLarge { size: n, cap });
    }
    let tol = space.tolerance();
    let mut out: Vec<Permutation> = Vec::new();
    let mut partial: Vec<usize> = Vec::with_capacity(n);
    let mut used = vec![false; n];

    fn extend(
        space: &FiniteMetricSpace,
        tol: f64,
        partial: &mut Vec<usize>,
        used: &mut [bool],
        out: &mut Vec<Permutation>,
    ) {
        let n = space.n();
        let k = partial.len();
        if k == n {
            out.push(Permutation::new(partial.clone()).expect("backtracking built a bijection"));
            return;
        }
        for c in 0..n {
            if used[c] {
                continue;
            }
            let ok = (0..k).all(|j| (space.dist(c, partial[j]) - space.dist(k, j)).abs() <= tol);
            if ok {
                used[c] = true;
                partial.push(c);
                extend(space, tol, partial, used, out);
                partial.pop();
                used[c] = false;
            }
        }
    }

    extend(space, tol, &mut partial, &mut used, &mut out);
    IsometryGroup::from_elements(space.clone(), out, tol)
}

#[cfg(test)]
mod tests {
    use super::*;

    pub(crate) fn space(rows: &[Vec<f64>]) -> SharedSpace {
        Arc::new(validate_metric(rows).expect("valid test space"))
    }

    pub(crate) fn four_cycle() -> SharedSpace {
        space(&[
            vec![0.0, 1.0, 2.0, 1.0],
            vec![1.0, 0.0, 1.0, 2.0],
            vec![2.0, 1.0, 0.0, 1.0],
            vec![1.0, 2.0, 1.0, 0.0],
        ])
    }

    #[test]
    fn accepts_two_point_space() {
        let x = validate_metric(&[vec![0.0, 1.0], vec![1.0, 0.0]]).unwrap();
        assert_eq!(x.n(), 2);
        assert_eq!(x.dist(0, 1), 1.0);
        assert_eq!(x.diameter(), 1.0);
    }

    #[test]
    fn rejects_triangle_violation_with_witnesses() {
        let err = validate_metric(&[
            vec![0.0, 1.0, 3.0],
            vec![1.0, 0.0, 1.0],
            vec![3.0, 1.0, 0.0],
        ])
        .unwrap_err();
        assert_eq!(err, Error::TriangleViolation { i: 0, j: 1, k: 2 });
    }

    #[test]
    fn rejects_asymmetry() {
        let err = validate_metric(&[vec![0.0, 1.0], vec![2.0, 0.0]]).unwrap_err();
        assert_eq!(err, Error::Asymmetry { i: 0, j: 1 });
    }

    #[test]
    fn rejects_zero_off_diagonal_and_negative_entries() {
        let err = validate_metric(&[vec![0.0, 0.0], vec![0.0, 0.0]]).unwrap_err();
        assert_eq!(err, Error::ZeroOffDiagonal { i: 0, j: 1 });
        let err = validate_metric(&[vec![0.0, -1.0], vec![-1.0, 0.0]]).unwrap_err();
        assert_eq!(err, Error::NegativeEntry { i: 0, j: 1 });
    }

    #[test]
    fn revalidation_is_idempotent() {
        let x = four_cycle();
        let again = validate_metric(&x.rows()).unwrap();
        assert_eq!(*x, again);
    }

    #[test]
    fn diameter_examples() {
        assert_eq!(space(&[vec![0.0]]).diameter(), 0.0);
        assert_eq!(space(&[vec![0.0, 1.0], vec![1.0, 0.0]]).diameter(), 1.0);
        assert_eq!(four_cycle().diameter(), 2.0);
    }

    #[test]
    fn hausdorff_examples() {
        let x = four_cycle();
        assert_eq!(hausdorff_distance(&x, &[0, 2], &[0, 2]).unwrap(), 0.0);

        let two = space(&[vec![0.0, 1.0], vec![1.0, 0.0]]);
        assert_eq!(hausdorff_distance(&two, &[0], &[1]).unwrap(), 1.0);

        // path 0-1-2 with unit edges
        let path = space(&[
            vec![0.0, 1.0, 2.0],
            vec![1.0, 0.0, 1.0],
            vec![2.0, 1.0, 0.0],
        ]);
        assert_eq!(hausdorff_distance(&path, &[0], &[0, 2]).unwrap(), 2.0);

        assert_eq!(
            hausdorff_distance(&path, &[], &[0]).unwrap_err(),
            Error::EmptySubset
        );
    }

    #[test]
    fn isometries_of_two_point_space() {
        let two = space(&[vec![0.0, 1.0], vec![1.0, 0.0]]);
        let g = enumerate_isometries(&two).unwrap();
        assert_eq!(g.order(), 2);
    }

    #[test]
    fn scalene_space_is_rigid() {
        // pairwise distances 1, 2, 3: only the identity survives
        let x = space(&[
            vec![0.0, 1.0, 2.0],
            vec![1.0, 0.0, 3.0],
            vec![2.0, 3.0, 0.0],
        ]);
        let g = enumerate_isometries(&x).unwrap();
        assert_eq!(g.order(), 1);
        assert!(g.element(0).is_identity());
    }

    #[test]
    fn four_cycle_has_dihedral_group_of_order_eight() {
        let g = enumerate_isometries(&four_cycle()).unwrap();
        assert_eq!(g.order(), 8);
    }

    #[test]
    fn enumeration_respects_cap() {
        let x = four_cycle();
        assert_eq!(
            enumerate_isometries_capped(&x, 3).unwrap_err(),
            Error::TooLarge { size: 4, cap: 3 }
        );
    }

    #[test]
    fn uniform_distance_examples() {
        let x = four_cycle();
        let rot = Permutation::new(vec![1, 2, 3, 0]).unwrap();
        let refl = Permutation::new(vec![1, 0, 3, 2]).unwrap();
        assert_eq!(uniform_group_distance(&x, &rot, &rot), 0.0);
        assert_eq!(uniform_group_distance(&x, &rot, &refl), 2.0);

        let two = space(&[vec![0.0, 1.0], vec![1.0, 0.0]]);
        let id = Permutation::identity(2);
        let swap = Permutation::new(vec![1, 0]).unwrap();
        assert_eq!(uniform_group_distance(&two, &id, &swap), 1.0);
    }

    #[test]
    fn uniform_distance_is_a_metric_on_the_enumerated_group() {
        let x = four_cycle();
        let g = enumerate_isometries(&x).unwrap();
        let els = g.elements();
        for a in els {
            for b in els {
                let dab = uniform_group_distance(&x, a, b);
                assert_eq!(dab, uniform_group_distance(&x, b, a));
                assert_eq!(dab == 0.0, a == b);
                for c in els {
                    let dac = uniform_group_distance(&x, a, c);
                    let dcb = uniform_group_distance(&x, c, b);
                    assert!(dab <= dac + dcb + 1e-12);
                }
            }
        }
    }

    #[test]
    fn group_elements_compose_and_invert_within_the_set() {
        let g = enumerate_isometries(&four_cycle()).unwrap();
        for a in g.elements() {
            assert!(a.compose(&a.inverse()).is_identity());
            for b in g.elements() {
                assert!(g.index_of(&a.compose(b)).is_some());
            }
        }
    }

    #[test]
    fn metric_pair_validates_and_restricts() {
        let x = four_cycle();
        let pair = MetricPair::new(x.clone(), vec![2, 0, 2]).unwrap();
        assert_eq!(pair.subset(), &[0, 2]);
        assert_eq!(pair.subspace().n(), 2);
        assert_eq!(pair.subspace().dist(0, 1), 2.0);
        assert_eq!(pair.to_global(1), 2);
        assert_eq!(pair.to_local(2), Some(1));
        assert!(MetricPair::new(x, vec![]).is_err());
    }

    #[test]
    fn closure_repairs_triangle_violations() {
        let repaired = metric_closure(&[
            vec![0.0, 1.0, 3.0],
            vec![1.0, 0.0, 1.0],
            vec![3.0, 1.0, 0.0],
        ]);
        let x = validate_metric(&repaired).unwrap();
        assert_eq!(x.dist(0, 2), 2.0);
    }
}
