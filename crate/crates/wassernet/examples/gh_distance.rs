//! Gromov-Hausdorff distances and approximation certificates: the exact
//! brute force over correspondences, map search, and the upper bound a map
//! witnesses.
//!
//! ```bash
//! cargo run --example gh_distance
//! ```

use std::sync::Arc;

use wassernet::{
    best_approx_search, certify, gh_distance_bruteforce, gh_upper_bound, validate_metric,
    PointMap,
};

fn two_point(d: f64) -> wassernet::SharedSpace {
    Arc::new(validate_metric(&[vec![0.0, d], vec![d, 0.0]]).unwrap())
}

fn main() {
    // two-point spaces: d_GH = |a - b| / 2 exactly
    let x = two_point(1.0);
    let y = two_point(1.6);
    let d = gh_distance_bruteforce(&x, &y).unwrap();
    println!("d_GH(two-point 1.0, two-point 1.6) = {d}");

    // the best single map and its certificate
    let (f, cert) = best_approx_search(&x, &y).unwrap();
    println!(
        "best map {:?}: distortion {}, defect {}, certifies at {}",
        f.image(),
        cert.distortion,
        cert.defect,
        cert.measured()
    );
    println!("upper bound from its correspondence: {}", gh_upper_bound(&f));

    // certificates measure, they do not trust the claim
    let collapse = PointMap::new(x.clone(), y.clone(), vec![0, 0]).unwrap();
    let cert = certify(&collapse, 0.5);
    println!(
        "collapsing map claimed 0.5: distortion {}, defect {}, valid {}",
        cert.distortion, cert.defect, cert.valid
    );

    // a 5-point space against a perturbed copy of itself
    let a = Arc::new(
        validate_metric(&[
            vec![0.0, 1.0, 1.3, 1.7, 1.2],
            vec![1.0, 0.0, 1.1, 1.5, 1.4],
            vec![1.3, 1.1, 0.0, 1.0, 1.6],
            vec![1.7, 1.5, 1.0, 0.0, 1.1],
            vec![1.2, 1.4, 1.6, 1.1, 0.0],
        ])
        .unwrap(),
    );
    let rows: Vec<Vec<f64>> = (0..5)
        .map(|i| (0..5).map(|j| a.dist(i, j) * 1.05).collect())
        .collect();
    let b = Arc::new(validate_metric(&rows).unwrap());
    let exact = gh_distance_bruteforce(&a, &b).unwrap();
    let (best, cert) = best_approx_search(&a, &b).unwrap();
    println!(
        "5-point vs 5%-stretched copy: d_GH = {exact}, best map {:?} certifies at {}",
        best.image(),
        cert.measured()
    );
}
