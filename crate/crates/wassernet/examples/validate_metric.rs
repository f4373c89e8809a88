//! Validating distance matrices: every metric axiom is checked with the
//! witnessing indices reported on failure, and broken matrices can be
//! repaired by shortest-path closure.
//!
//! ```bash
//! cargo run --example validate_metric
//! ```

use wassernet::{metric_closure, validate_metric};

fn main() {
    let good = [vec![0.0, 1.0], vec![1.0, 0.0]];
    let space = validate_metric(&good).expect("a two-point space is a metric space");
    println!("accepted: {} points, diameter {}", space.n(), space.diameter());

    // d(0,2) = 3 > d(0,1) + d(1,2) = 2
    let broken = [
        vec![0.0, 1.0, 3.0],
        vec![1.0, 0.0, 1.0],
        vec![3.0, 1.0, 0.0],
    ];
    match validate_metric(&broken) {
        Err(err) => println!("rejected: {err}"),
        Ok(_) => unreachable!(),
    }

    let repaired = metric_closure(&broken);
    let space = validate_metric(&repaired).expect("closure repairs triangle violations");
    println!(
        "repaired by shortest-path closure: d(0,2) = {}",
        space.dist(0, 2)
    );

    match validate_metric(&[vec![0.0, 1.0], vec![2.0, 0.0]]) {
        Err(err) => println!("rejected: {err}"),
        Ok(_) => unreachable!(),
    }
}
