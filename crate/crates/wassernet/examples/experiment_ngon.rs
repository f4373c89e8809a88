//! The n-gon convergence scenario with a group action: vertex counts
//! {4, 8, 16} against the 32-gon, all with arc-length metrics of perimeter
//! 2 pi, carrying the cyclic order-4 rotation action. Both GH columns decay
//! and the equivariant deviations vanish for nested vertex sets.
//!
//! ```bash
//! cargo run --example experiment_ngon
//! ```

use wassernet::{run_equivariant_scenario, Family, GroupSpec, ScenarioSpec};

fn main() {
    let spec = ScenarioSpec {
        family: Family::Ngon {
            perimeter: std::f64::consts::TAU,
            reference_sides: 32,
        },
        indices: vec![4, 8, 16],
        m: 1,
        group: Some(GroupSpec::Cyclic { order: 4 }),
        gh_cap: 5,
        net_cap: 5000,
    };

    let report = run_equivariant_scenario(&spec).unwrap();
    print!("{}", report.to_csv());
    println!("co_decay: {}", report.co_decay);
    println!("contracts_hold: {}", report.contracts_hold);

    for w in report.rows.windows(2) {
        assert!(w[1].base_gh_upper < w[0].base_gh_upper);
        assert!(w[1].net_gh_upper <= w[0].net_gh_upper + 1e-9);
    }
    println!("upper bounds decay along the family");
}
