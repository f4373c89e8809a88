//! Metric-pair approximations: derive a subset-level map from a pair-level
//! one by nearest-point selection (3-epsilon certificate), then glue the two
//! back into a total map (2-epsilon distortion).
//!
//! ```bash
//! cargo run --example pair_approximation
//! ```

use std::sync::Arc;

use wassernet::{
    certify, closeness, derive_subset_approx, glue_pair_approx, hausdorff_distance,
    validate_metric, MetricPair, PointMap,
};

fn main() {
    // X: a 4-cycle, slightly stretched; Y: the unit 4-cycle
    let y = Arc::new(
        validate_metric(&[
            vec![0.0, 1.0, 2.0, 1.0],
            vec![1.0, 0.0, 1.0, 2.0],
            vec![2.0, 1.0, 0.0, 1.0],
            vec![1.0, 2.0, 1.0, 0.0],
        ])
        .unwrap(),
    );
    let rows: Vec<Vec<f64>> = (0..4)
        .map(|i| (0..4).map(|j| y.dist(i, j) * 1.1).collect())
        .collect();
    let x = Arc::new(validate_metric(&rows).unwrap());

    let f = PointMap::new(x.clone(), y.clone(), vec![0, 1, 2, 3]).unwrap();
    let eps = certify(&f, f64::INFINITY).measured();
    println!("f is the index bijection; measured epsilon = {eps}");

    // distinguished subsets: antipodal pairs on both sides
    let pair_x = MetricPair::new(x.clone(), vec![0, 2]).unwrap();
    let pair_y = MetricPair::new(y.clone(), vec![0, 2]).unwrap();
    let image: Vec<usize> = pair_x.subset().iter().map(|&a| f.apply(a)).collect();
    println!(
        "Hausdorff(f(A_X), A_Y) = {}",
        hausdorff_distance(&y, &image, pair_y.subset()).unwrap()
    );

    let (g, g_cert) = derive_subset_approx(&f, &pair_x, &pair_y, eps).unwrap();
    println!(
        "derived g = {:?}: measured {}, claims 3 eps = {}, valid {}",
        g.image(),
        g_cert.measured(),
        g_cert.epsilon_claimed,
        g_cert.valid
    );
    println!(
        "closeness(f, g) = {}",
        closeness(&f, &g, &pair_x, &pair_y).unwrap()
    );

    let (xi, xi_cert) = glue_pair_approx(&f, &g, &pair_x, &pair_y, eps).unwrap();
    println!(
        "glued xi = {:?}: distortion {}, claims 2 eps = {}, valid {}",
        xi.image(),
        xi_cert.distortion,
        xi_cert.epsilon_claimed,
        xi_cert.valid
    );

    // the glue restores g on the subset and f off it
    for i in 0..x.n() {
        let expected = match pair_x.to_local(i) {
            Some(local) => pair_y.to_global(g.apply(local)),
            None => f.apply(i),
        };
        assert_eq!(xi.apply(i), expected);
    }
    println!("round trip: xi agrees with g on A_X and with f elsewhere");
}
