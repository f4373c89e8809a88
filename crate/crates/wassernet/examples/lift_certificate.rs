//! Lifting a certified map between base spaces to the Wasserstein nets by
//! pushforward, with the quantitative certificate
//! `eps_tilde = 6 eps + sqrt(eps (2 diam(Y) + eps))`.
//!
//! ```bash
//! cargo run --example lift_certificate
//! ```

use wassernet::scenario::ngon_space;
use wassernet::{
    build_p2_net, certify, epsilon_tilde, lift_approximation, lift_preserves_diracs_check,
    surjectivity_defect, PointMap,
};

fn main() {
    // nearest-vertex map from the 8-gon into the 16-gon (arc metrics,
    // perimeter 2 pi): an isometric embedding, so only the defect counts
    let tau = std::f64::consts::TAU;
    let x = ngon_space(8, tau).unwrap();
    let y = ngon_space(16, tau).unwrap();
    let f = PointMap::new(x.clone(), y.clone(), (0..8).map(|j| 2 * j).collect()).unwrap();
    let eps = certify(&f, f64::INFINITY).measured();
    println!("base map: distortion 0, defect {} -> eps = {eps}", surjectivity_defect(&f));
    println!(
        "certificate radius: eps_tilde = {}",
        epsilon_tilde(eps, y.diameter())
    );

    let net_x = build_p2_net(&x, 2).unwrap();
    let net_y = build_p2_net(&y, 2).unwrap();
    println!("nets at m = 2: {} and {} atoms", net_x.len(), net_y.len());

    let lift = lift_approximation(&f, eps, &net_x, &net_y).unwrap();
    println!(
        "lifted map measured: distortion {:.6}, defect {:.6} (claimed {:.6}, valid {})",
        lift.certificate.distortion,
        lift.certificate.defect,
        lift.epsilon_tilde,
        lift.certificate.valid
    );

    // Dirac atoms track base points: the lift sends delta_x to delta_f(x)
    let h = lift_preserves_diracs_check(&f, &net_x, &net_y).unwrap();
    println!("Hausdorff(lifted Diracs, target Diracs) = {h:.6} (equals the base defect)");
}
