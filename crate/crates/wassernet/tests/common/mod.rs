//! Shared oracles and instance generators for the integration suites.
//!
//! The oracles here are deliberately independent of the library's solver
//! paths: Wasserstein values are minimized over permutation couplings by
//! direct enumeration, and GH distances over raw subsets of the product
//! grid. They exist to cross-check the production implementations.

use std::sync::Arc;

use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;

use wassernet::scenario::ngon_space;
use wassernet::{
    certify, certify_equivariant, enumerate_isometries, metric_closure, surjectivity_defect,
    validate_metric, DiscreteMeasure, EquivariantApprox, IsometryGroup, MetricPair, Permutation,
    PointMap, SharedSpace,
};

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Random space with entries in [1, 2]: the triangle inequality holds
/// automatically and points stay well separated.
pub fn random_space(rng: &mut ChaCha8Rng, n: usize) -> SharedSpace {
    let mut rows = vec![vec![0.0; n]; n];
    for i in 0..n {
        for j in (i + 1)..n {
            let d = rng.gen_range(1.0..=2.0);
            rows[i][j] = d;
            rows[j][i] = d;
        }
    }
    Arc::new(validate_metric(&rows).expect("band-limited entries form a metric"))
}

/// Random space with a wider entry range repaired by shortest-path closure;
/// produces triangle-tight metrics the band-limited generator cannot.
pub fn random_space_closure(rng: &mut ChaCha8Rng, n: usize) -> SharedSpace {
    let mut rows = vec![vec![0.0; n]; n];
    for i in 0..n {
        for j in (i + 1)..n {
            let d = rng.gen_range(0.3..=3.0);
            rows[i][j] = d;
            rows[j][i] = d;
        }
    }
    let repaired = metric_closure(&rows);
    Arc::new(validate_metric(&repaired).expect("closure repairs the triangle inequality"))
}

/// Uniform sample from the probability simplex (normalized exponentials).
pub fn random_measure(rng: &mut ChaCha8Rng, space: &SharedSpace) -> DiscreteMeasure {
    let mut w: Vec<f64> = (0..space.n())
        .map(|_| -(1.0 - rng.gen::<f64>()).ln())
        .collect();
    let total: f64 = w.iter().sum();
    for wi in &mut w {
        *wi /= total;
    }
    DiscreteMeasure::new(space.clone(), w).expect("normalized weights are a measure")
}

pub fn random_map(rng: &mut ChaCha8Rng, x: &SharedSpace, y: &SharedSpace) -> PointMap {
    let image = (0..x.n()).map(|_| rng.gen_range(0..y.n())).collect();
    PointMap::new(x.clone(), y.clone(), image).expect("random image indices are in range")
}

/// The smallest epsilon a map certifies at: its own measured maximum.
pub fn self_certified_eps(f: &PointMap) -> f64 {
    certify(f, f64::INFINITY).measured()
}

fn permutations(n: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut items: Vec<usize> = (0..n).collect();
    fn heap(k: usize, items: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if k == 1 {
            out.push(items.clone());
            return;
        }
        for i in 0..k {
            heap(k - 1, items, out);
            if k % 2 == 0 {
                items.swap(i, k - 1);
            } else {
                items.swap(0, k - 1);
            }
        }
    }
    heap(n, &mut items, &mut out);
    out
}

/// Brute-force W_p between uniform measures on two equal-size supports: the
/// marginals make every coupling doubly stochastic up to scale, so the
/// optimum is attained at a permutation coupling (a Birkhoff vertex) and it
/// suffices to enumerate all of them.
pub fn permutation_coupling_wp(space: &SharedSpace, s: &[usize], t: &[usize], p: f64) -> f64 {
    assert_eq!(s.len(), t.len(), "supports must have equal size");
    let k = s.len();
    let best = permutations(k)
        .into_iter()
        .map(|perm| {
            perm.iter()
                .enumerate()
                .map(|(a, &b)| space.dist(s[a], t[b]).powf(p) / k as f64)
                .sum::<f64>()
        })
        .fold(f64::INFINITY, f64::min);
    best.powf(1.0 / p)
}

/// GH distance by raw enumeration of all subsets of the product grid with
/// both projections surjective. Exponential; keep `n * m <= 16`.
pub fn gh_subset_oracle(x: &SharedSpace, y: &SharedSpace) -> f64 {
    let n = x.n();
    let m = y.n();
    assert!(n * m <= 16, "subset oracle is exponential in n*m");
    let cells: Vec<(usize, usize)> = (0..n)
        .flat_map(|i| (0..m).map(move |j| (i, j)))
        .collect();
    let mut best = f64::INFINITY;
    for mask in 1u32..(1 << (n * m)) {
        let mut covers_x = vec![false; n];
        let mut covers_y = vec![false; m];
        let mut pairs = Vec::new();
        for (bit, &(i, j)) in cells.iter().enumerate() {
            if mask & (1 << bit) != 0 {
                covers_x[i] = true;
                covers_y[j] = true;
                pairs.push((i, j));
            }
        }
        if covers_x.iter().any(|&b| !b) || covers_y.iter().any(|&b| !b) {
            continue;
        }
        let mut dis = 0.0f64;
        for (a, &(i, j)) in pairs.iter().enumerate() {
            for &(i2, j2) in &pairs[a..] {
                dis = dis.max((x.dist(i, i2) - y.dist(j, j2)).abs());
            }
        }
        best = best.min(dis);
    }
    best / 2.0
}

/// A randomized pair-approximation instance whose preconditions hold by
/// construction: `f` certifies at its own measured epsilon, and `A_Y` is the
/// image of `A_X` plus extra points within epsilon of it.
pub struct PairInstance {
    pub f: PointMap,
    pub pair_x: MetricPair,
    pub pair_y: MetricPair,
    pub epsilon: f64,
}

pub fn pair_instance(rng: &mut ChaCha8Rng, max_n: usize) -> PairInstance {
    let n_x = rng.gen_range(1..=max_n);
    let n_y = rng.gen_range(1..=max_n);
    let x = if rng.gen_bool(0.5) {
        random_space(rng, n_x)
    } else {
        random_space_closure(rng, n_x)
    };
    let y = if rng.gen_bool(0.5) {
        random_space(rng, n_y)
    } else {
        random_space_closure(rng, n_y)
    };
    let f = random_map(rng, &x, &y);
    let epsilon = self_certified_eps(&f);

    let mut subset_x: Vec<usize> = (0..n_x).filter(|_| rng.gen_bool(0.5)).collect();
    if subset_x.is_empty() {
        subset_x.push(rng.gen_range(0..n_x));
    }
    let image: Vec<usize> = subset_x.iter().map(|&a| f.apply(a)).collect();
    // extras stay within epsilon of the image so the Hausdorff precondition
    // holds exactly, not just within tolerance
    let mut subset_y: Vec<usize> = image.clone();
    for q in 0..n_y {
        if rng.gen_bool(0.4) && image.iter().any(|&fy| y.dist(q, fy) <= epsilon) {
            subset_y.push(q);
        }
    }
    let pair_x = MetricPair::new(x, subset_x).expect("nonempty valid subset");
    let pair_y = MetricPair::new(y, subset_y).expect("nonempty valid subset");
    PairInstance {
        f,
        pair_x,
        pair_y,
        epsilon,
    }
}

fn scaled_ngon(sides: usize, perimeter: f64) -> SharedSpace {
    ngon_space(sides, perimeter).expect("positive perimeter and sides")
}

/// A randomized certified equivariant instance with groups of order at most
/// eight on spaces of at most four points. The claimed epsilon is the
/// measured maximum of the map certificate and both deviations, so every
/// instance certifies by construction while the deviations vary from exact
/// commutation to order-diameter mismatches.
pub fn equivariant_instance(rng: &mut ChaCha8Rng) -> EquivariantApprox {
    let variant = rng.gen_range(0..4u32);
    let mut e = match variant {
        0 | 1 => {
            // an n-gon against a stretched copy, full dihedral group on
            // both sides; f acts by a random group element
            let sides = rng.gen_range(2..=4usize);
            let perimeter = rng.gen_range(2.0..=8.0);
            let stretch = 1.0 + rng.gen_range(0.0..=0.4);
            let x = scaled_ngon(sides, perimeter);
            let y = scaled_ngon(sides, perimeter * stretch);
            let group_x = enumerate_isometries(&x).unwrap();
            let group_y = enumerate_isometries(&y).unwrap();
            let sigma = group_x.element(rng.gen_range(0..group_x.order())).clone();
            let f = PointMap::new(x, y, sigma.image().to_vec()).unwrap();
            let order = group_x.order();
            let (theta, psi): (Vec<usize>, Vec<usize>) = if variant == 0 {
                ((0..order).collect(), (0..order).collect())
            } else {
                // corrupted tables: deviations grow to the diameter scale
                let theta = (0..order).map(|_| rng.gen_range(0..order)).collect();
                let psi = (0..order).map(|_| rng.gen_range(0..order)).collect();
                (theta, psi)
            };
            EquivariantApprox::new(f, group_x, group_y, theta, psi, 0.0).unwrap()
        }
        2 => {
            // nested n-gons with an aligned cyclic action
            let (small, large, order) = *[(2usize, 4usize, 2usize), (2, 2, 2), (4, 4, 4), (3, 3, 3)]
                .iter()
                .nth(rng.gen_range(0..4))
                .unwrap();
            let perimeter = rng.gen_range(2.0..=8.0);
            let stretch = 1.0 + rng.gen_range(0.0..=0.3);
            let x = scaled_ngon(small, perimeter);
            let y = scaled_ngon(large, perimeter * stretch);
            let rot_x = Permutation::new((0..small).map(|p| (p + small / order) % small).collect())
                .unwrap();
            let rot_y = Permutation::new((0..large).map(|p| (p + large / order) % large).collect())
                .unwrap();
            let group_x = IsometryGroup::cyclic(x.clone(), rot_x).unwrap();
            let group_y = IsometryGroup::cyclic(y.clone(), rot_y).unwrap();
            let scale = large / small;
            let f = PointMap::new(x, y, (0..small).map(|p| p * scale).collect()).unwrap();
            let table: Vec<usize> = (0..order).collect();
            EquivariantApprox::new(f, group_x, group_y, table.clone(), table, 0.0).unwrap()
        }
        _ => {
            // random rigid spaces with trivial groups
            let n_x = rng.gen_range(1..=4usize);
            let n_y = rng.gen_range(1..=4usize);
            let x = random_space(rng, n_x);
            let y = random_space(rng, n_y);
            let f = random_map(rng, &x, &y);
            let group_x = IsometryGroup::trivial(x);
            let group_y = IsometryGroup::trivial(y);
            EquivariantApprox::new(f, group_x, group_y, vec![0], vec![0], 0.0).unwrap()
        }
    };
    // self-certify: claim exactly what the instance measures
    let report = certify_equivariant(&e);
    e.epsilon = report
        .f_certificate
        .measured()
        .max(report.dev_theta)
        .max(report.dev_psi);
    debug_assert!(surjectivity_defect(&e.f) <= e.epsilon);
    e
}
