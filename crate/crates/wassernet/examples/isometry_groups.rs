//! Enumerating distance-preserving permutations and measuring the uniform
//! metric on the resulting group.
//!
//! ```bash
//! cargo run --example isometry_groups
//! ```

use std::sync::Arc;

use wassernet::{enumerate_isometries, uniform_group_distance, validate_metric};

fn main() {
    // 4-cycle with unit edges: the symmetries are the dihedral group D_4
    let four_cycle = Arc::new(
        validate_metric(&[
            vec![0.0, 1.0, 2.0, 1.0],
            vec![1.0, 0.0, 1.0, 2.0],
            vec![2.0, 1.0, 0.0, 1.0],
            vec![1.0, 2.0, 1.0, 0.0],
        ])
        .unwrap(),
    );
    let group = enumerate_isometries(&four_cycle).unwrap();
    println!("4-cycle isometry group has order {}", group.order());
    for g in group.elements() {
        println!("  {:?}", g.image());
    }

    // the uniform metric on the group: sup displacement over points
    let id = &group.elements()[0];
    for g in group.elements() {
        println!(
            "  d_uniform(id, {:?}) = {}",
            g.image(),
            uniform_group_distance(&four_cycle, id, g)
        );
    }

    // a scalene triangle is rigid
    let scalene = Arc::new(
        validate_metric(&[
            vec![0.0, 1.0, 2.0],
            vec![1.0, 0.0, 3.0],
            vec![2.0, 3.0, 0.0],
        ])
        .unwrap(),
    );
    let group = enumerate_isometries(&scalene).unwrap();
    println!("scalene triangle isometry group has order {}", group.order());
}
