//! Exact Wasserstein distances between discrete measures: optimal values,
//! optimal plans, and the isometric embedding of the base space as Dirac
//! deltas.
//!
//! ```bash
//! cargo run --example wasserstein_distance
//! ```

use std::sync::Arc;

use wassernet::{dirac, validate_metric, w2_distance, wp_distance, DiscreteMeasure};

fn main() {
    let x = Arc::new(
        validate_metric(&[
            vec![0.0, 1.0, 2.0, 1.0],
            vec![1.0, 0.0, 1.0, 2.0],
            vec![2.0, 1.0, 0.0, 1.0],
            vec![1.0, 2.0, 1.0, 0.0],
        ])
        .unwrap(),
    );

    let mu = DiscreteMeasure::new(x.clone(), vec![0.7, 0.1, 0.1, 0.1]).unwrap();
    let nu = DiscreteMeasure::uniform(x.clone());
    let (w2, plan) = w2_distance(&mu, &nu).unwrap();
    println!("W_2(mu, nu) = {w2}");
    println!("optimal plan (nonzero mass):");
    for i in 0..x.n() {
        for j in 0..x.n() {
            let mass = plan.mass(i, j);
            if mass > 0.0 {
                println!("  {mass:.3} from {i} to {j} at distance {}", x.dist(i, j));
            }
        }
    }

    let (w1, _) = wp_distance(&mu, &nu, 1.0).unwrap();
    println!("W_1(mu, nu) = {w1} (never exceeds W_2)");

    // Dirac deltas embed the base space isometrically
    println!("Dirac embedding:");
    for i in 0..x.n() {
        for j in (i + 1)..x.n() {
            let (v, _) = w2_distance(&dirac(&x, i).unwrap(), &dirac(&x, j).unwrap()).unwrap();
            println!("  W_2(delta_{i}, delta_{j}) = {v}, d({i},{j}) = {}", x.dist(i, j));
        }
    }
}
