//! Gromov-Hausdorff approximations: distortion and surjectivity-defect
//! measurements, certificates, exhaustive map search, and a brute-force GH
//! distance through correspondence enumeration.
//!
//! An epsilon-GH approximation is pinned throughout the crate as a map with
//! distortion <= epsilon whose image is epsilon-dense in the target. The GH
//! distance is half the minimal distortion over correspondences; the search
//! runs over relations of the form `graph(phi) U graph(psi)^T`, which always
//! contain a minimizer because dropping pairs never increases distortion.

use crate::error::{Error, Result};
use crate::metric::SharedSpace;
use crate::tol;

/// Default cap on each point count for correspondence enumeration.
pub const DEFAULT_GH_CAP: usize = 5;
/// Default cap on `|Y|^|X|` for exhaustive map search.
pub const DEFAULT_SEARCH_CAP: u128 = 2_000_000;

/// A total map between two finite metric spaces, stored as the image index
/// of every source point.
#[derive(Debug, Clone, PartialEq)]
pub struct PointMap {
    source: SharedSpace,
    target: SharedSpace,
    image: Vec<usize>,
}

impl PointMap {
    pub fn new(source: SharedSpace, target: SharedSpace, image: Vec<usize>) -> Result<Self> {
        if image.len() != source.n() {
            return Err(Error::MapLengthMismatch {
                expected: source.n(),
                got: image.len(),
            });
        }
        for &j in &image {
            if j >= target.n() {
                return Err(Error::IndexOutOfRange {
                    index: j,
                    n: target.n(),
                });
            }
        }
        Ok(PointMap {
            source,
            target,
            image,
        })
    }

    pub fn identity(space: SharedSpace) -> Self {
        let image = (0..space.n()).collect();
        PointMap {
            source: space.clone(),
            target: space,
            image,
        }
    }

    pub fn source(&self) -> &SharedSpace {
        &self.source
    }

    pub fn target(&self) -> &SharedSpace {
        &self.target
    }

    #[inline]
    pub fn apply(&self, i: usize) -> usize {
        self.image[i]
    }

    pub fn image(&self) -> &[usize] {
        &self.image
    }

    /// `g` after `self`; the spaces must chain.
    pub fn then(&self, g: &PointMap) -> Result<PointMap> {
        if **g.source() != **self.target() {
            return Err(Error::MismatchedSpaces);
        }
        let image = self.image.iter().map(|&i| g.apply(i)).collect();
        PointMap::new(self.source.clone(), g.target.clone(), image)
    }
}

/// Measured quality of a map against a claimed epsilon.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ApproxCertificate {
    pub distortion: f64,
    pub defect: f64,
    pub epsilon_claimed: f64,
    pub valid: bool,
}

impl ApproxCertificate {
    /// The larger of distortion and defect: the smallest epsilon the map
    /// certifies at.
    pub fn measured(&self) -> f64 {
        self.distortion.max(self.defect)
    }
}

/// `max_{i,j} |d_Y(f(i), f(j)) - d_X(i, j)|`.
pub fn distortion(f: &PointMap) -> f64 {
    let x = f.source();
    let y = f.target();
    let mut worst = 0.0f64;
    for i in 0..x.n() {
        for j in (i + 1)..x.n() {
            let dev = (y.dist(f.apply(i), f.apply(j)) - x.dist(i, j)).abs();
            if dev > worst {
                worst = dev;
            }
        }
    }
    worst
}

/// How far the image is from covering the target:
/// `max_{y} min_{i} d_Y(y, f(i))`.
pub fn surjectivity_defect(f: &PointMap) -> f64 {
    let y = f.target();
    (0..y.n())
        .map(|p| {
            f.image()
                .iter()
                .map(|&q| y.dist(p, q))
                .fold(f64::INFINITY, f64::min)
        })
        .fold(0.0, f64::max)
}

/// Measure a map and compare against a claimed epsilon (with the
/// certification tolerance [`tol::CERT`]).
pub fn certify(f: &PointMap, epsilon: f64) -> ApproxCertificate {
    let distortion = distortion(f);
    let defect = surjectivity_defect(f);
    ApproxCertificate {
        distortion,
        defect,
        epsilon_claimed: epsilon,
        valid: distortion.max(defect) <= epsilon + tol::CERT,
    }
}

/// A relation between two point sets with both projections surjective.
#[derive(Debug, Clone, PartialEq)]
pub struct Correspondence {
    pairs: Vec<(usize, usize)>,
}

impl Correspondence {
    pub fn new(n_source: usize, n_target: usize, mut pairs: Vec<(usize, usize)>) -> Result<Self> {
        pairs.sort_unstable();
        pairs.dedup();
        let mut left = vec![false; n_source];
        let mut right = vec![false; n_target];
        for &(i, j) in &pairs {
            if i >= n_source {
                return Err(Error::IndexOutOfRange {
                    index: i,
                    n: n_source,
                });
            }
            if j >= n_target {
                return Err(Error::IndexOutOfRange {
                    index: j,
                    n: n_target,
                });
            }
            left[i] = true;
            right[j] = true;
        }
        if let Some(i) = left.iter().position(|&b| !b) {
            return Err(Error::NotCorrespondence {
                side: "source",
                index: i,
            });
        }
        if let Some(j) = right.iter().position(|&b| !b) {
            return Err(Error::NotCorrespondence {
                side: "target",
                index: j,
            });
        }
        Ok(Correspondence { pairs })
    }

    /// Graph of `f`, completed with a nearest preimage for every target
    /// point (ties to the lowest source index) so both projections are
    /// surjective.
    pub fn completed_graph(f: &PointMap) -> Correspondence {
        let y = f.target();
        let mut pairs: Vec<(usize, usize)> =
            f.image().iter().enumerate().map(|(i, &j)| (i, j)).collect();
        for q in 0..y.n() {
            let mut best = 0usize;
            let mut best_d = f64::INFINITY;
            for (i, &fi) in f.image().iter().enumerate() {
                let d = y.dist(q, fi);
                if d < best_d {
                    best_d = d;
                    best = i;
                }
            }
            pairs.push((best, q));
        }
        Correspondence::new(f.source().n(), y.n(), pairs).expect("completed graph covers both sides")
    }

    pub fn pairs(&self) -> &[(usize, usize)] {
        &self.pairs
    }

    /// `max |d_X(i, i') - d_Y(j, j')|` over all pairs of related pairs.
    pub fn distortion(&self, x: &SharedSpace, y: &SharedSpace) -> f64 {
        let mut worst = 0.0f64;
        for (a, &(i, j)) in self.pairs.iter().enumerate() {
            for &(i2, j2) in &self.pairs[a..] {
                let dev = (x.dist(i, i2) - y.dist(j, j2)).abs();
                if dev > worst {
                    worst = dev;
                }
            }
        }
        worst
    }
}

/// Upper bound on the GH distance witnessed by a map: half the distortion of
/// its completed-graph correspondence.
pub fn gh_upper_bound(f: &PointMap) -> f64 {
    Correspondence::completed_graph(f).distortion(f.source(), f.target()) / 2.0
}

/// Exact GH distance by correspondence enumeration, default cap.
pub fn gh_distance_bruteforce(x: &SharedSpace, y: &SharedSpace) -> Result<f64> {
    gh_distance_bruteforce_capped(x, y, DEFAULT_GH_CAP)
}

/// Exact GH distance: half the minimal distortion over all correspondences.
///
/// Searches pairs `(phi: X -> Y, psi: Y -> X)` whose combined graph is the
/// correspondence; every correspondence contains such a pair with no larger
/// distortion, so the minimum agrees with full subset enumeration. Branches
/// are pruned by the running partial distortion.
pub fn gh_distance_bruteforce_capped(
    x: &SharedSpace,
    y: &SharedSpace,
    cap: usize,
) -> Result<f64> {
    if x.n() > cap {
        return Err(Error::TooLarge { size: x.n(), cap });
    }
    if y.n() > cap {
        return Err(Error::TooLarge { size: y.n(), cap });
    }

    struct Search<'a> {
        x: &'a SharedSpace,
        y: &'a SharedSpace,
        phi: Vec<usize>,
        psi: Vec<usize>,
        best: f64,
    }

    impl Search<'_> {
        fn descend_phi(&mut self, k: usize, partial: f64) {
            let n = self.x.n();
            if k == n {
                self.descend_psi(0, partial);
                return;
            }
            for c in 0..self.y.n() {
                let mut worst = partial;
                for j in 0..k {
                    let dev = (self.y.dist(c, self.phi[j]) - self.x.dist(k, j)).abs();
                    worst = worst.max(dev);
                }
                if worst < self.best {
                    self.phi[k] = c;
                    self.descend_phi(k + 1, worst);
                }
            }
        }

        fn descend_psi(&mut self, k: usize, partial: f64) {
            let m = self.y.n();
            if k == m {
                self.best = partial;
                return;
            }
            for c in 0..self.x.n() {
                let mut worst = partial;
                // pairs among psi assignments made so far
                for j in 0..k {
                    let dev = (self.x.dist(c, self.psi[j]) - self.y.dist(k, j)).abs();
                    worst = worst.max(dev);
                }
                // cross pairs against the complete phi
                for i in 0..self.x.n() {
                    let dev = (self.x.dist(i, c) - self.y.dist(self.phi[i], k)).abs();
                    worst = worst.max(dev);
                }
                if worst < self.best {
                    self.psi[k] = c;
                    self.descend_psi(k + 1, worst);
                }
            }
        }
    }

    let mut search = Search {
        x,
        y,
        phi: vec![0; x.n()],
        psi: vec![0; y.n()],
        best: f64::INFINITY,
    };
    search.descend_phi(0, 0.0);
    Ok(search.best / 2.0)
}

/// How [`best_approx_search`] should explore the map space.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SearchMode {
    /// Enumerate every map (requires `|Y|^|X|` under the cap); the result is
    /// the global minimizer of `max(distortion, defect)`, ties broken by
    /// lexicographic image order.
    Exhaustive,
    /// Greedy construction plus first-improvement single-point swaps; an
    /// upper bound only, but deterministic.
    Heuristic,
}

/// Search for the best epsilon-approximation from `x` to `y` with default
/// mode and cap.
pub fn best_approx_search(
    x: &SharedSpace,
    y: &SharedSpace,
) -> Result<(PointMap, ApproxCertificate)> {
    best_approx_search_with(x, y, SearchMode::Exhaustive, DEFAULT_SEARCH_CAP)
}

pub fn best_approx_search_with(
    x: &SharedSpace,
    y: &SharedSpace,
    mode: SearchMode,
    cap: u128,
) -> Result<(PointMap, ApproxCertificate)> {
    let image = match mode {
        SearchMode::Exhaustive => {
            let size = (y.n() as u128).checked_pow(x.n() as u32);
            match size {
                Some(s) if s <= cap => {}
                _ => {
                    return Err(Error::TooLarge {
                        size: usize::MAX,
                        cap: cap.min(usize::MAX as u128) as usize,
                    })
                }
            }
            exhaustive_search(x, y)
        }
        SearchMode::Heuristic => heuristic_search(x, y),
    };
    let f = PointMap::new(x.clone(), y.clone(), image)?;
    let measured = distortion(&f).max(surjectivity_defect(&f));
    let cert = certify(&f, measured);
    Ok((f, cert))
}

fn objective(x: &SharedSpace, y: &SharedSpace, image: &[usize]) -> f64 {
    let f = PointMap {
        source: x.clone(),
        target: y.clone(),
        image: image.to_vec(),
    };
    distortion(&f).max(surjectivity_defect(&f))
}

fn exhaustive_search(x: &SharedSpace, y: &SharedSpace) -> Vec<usize> {
    struct Search<'a> {
        x: &'a SharedSpace,
        y: &'a SharedSpace,
        image: Vec<usize>,
        best_image: Vec<usize>,
        best: f64,
    }

    impl Search<'_> {
        fn descend(&mut self, k: usize, partial: f64) {
            let n = self.x.n();
            if k == n {
                // distortion equals `partial` here; only the defect is new
                let obj = objective(self.x, self.y, &self.image);
                if obj < self.best {
                    self.best = obj;
                    self.best_image = self.image.clone();
                }
                return;
            }
            for c in 0..self.y.n() {
                let mut worst = partial;
                for j in 0..k {
                    let dev = (self.y.dist(c, self.image[j]) - self.x.dist(k, j)).abs();
                    worst = worst.max(dev);
                }
                if worst < self.best {
                    self.image[k] = c;
                    self.descend(k + 1, worst);
                }
            }
        }
    }

    let mut search = Search {
        x,
        y,
        image: vec![0; x.n()],
        best_image: vec![0; x.n()],
        best: f64::INFINITY,
    };
    search.descend(0, 0.0);
    search.best_image
}

fn heuristic_search(x: &SharedSpace, y: &SharedSpace) -> Vec<usize> {
    let n = x.n();
    let m = y.n();
    // greedy: place each point where the partial distortion grows least
    let mut image: Vec<usize> = Vec::with_capacity(n);
    for k in 0..n {
        let mut best_c = 0usize;
        let mut best_worst = f64::INFINITY;
        for c in 0..m {
            let worst = (0..k)
                .map(|j| (y.dist(c, image[j]) - x.dist(k, j)).abs())
                .fold(0.0, f64::max);
            if worst < best_worst {
                best_worst = worst;
                best_c = c;
            }
        }
        image.push(best_c);
    }
    // first-improvement single-point swaps until a fixpoint
    let mut obj = objective(x, y, &image);
    loop {
        let mut improved = false;
        for k in 0..n {
            for c in 0..m {
                if c == image[k] {
                    continue;
                }
                let old = image[k];
                image[k] = c;
                let candidate = objective(x, y, &image);
                if candidate < obj {
                    obj = candidate;
                    improved = true;
                } else {
                    image[k] = old;
                }
            }
        }
        if !improved {
            return image;
        }
    }
}
