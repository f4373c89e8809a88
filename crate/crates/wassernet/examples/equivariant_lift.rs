//! Equivariant data and its lift: pushforward groups on nets, quadruple
//! certification, the almost-inverse estimate, and the commutation bound
//! `W_2(theta_#(g_#)(f_# mu), f_#(g_# mu)) <= eps`.
//!
//! ```bash
//! cargo run --example equivariant_lift
//! ```

use wassernet::scenario::ngon_space;
use wassernet::{
    almost_inverse_check, build_p2_net, certify, certify_equivariant, lift_equivariant,
    pushforward_group, EquivariantApprox, IsometryGroup, Permutation, PointMap,
};

fn main() {
    let tau = std::f64::consts::TAU;
    let x = ngon_space(4, tau).unwrap();
    let y = ngon_space(8, tau).unwrap();

    // cyclic order-4 rotation groups on both sides
    let rot_x = Permutation::new(vec![1, 2, 3, 0]).unwrap();
    let rot_y = Permutation::new((0..8).map(|p| (p + 2) % 8).collect()).unwrap();
    let group_x = IsometryGroup::cyclic(x.clone(), rot_x).unwrap();
    let group_y = IsometryGroup::cyclic(y.clone(), rot_y).unwrap();
    println!("|G_X| = {}, |G_Y| = {}", group_x.order(), group_y.order());

    // nearest-vertex map, theta and psi matching generator powers
    let f = PointMap::new(x.clone(), y.clone(), vec![0, 2, 4, 6]).unwrap();
    let eps = certify(&f, f64::INFINITY).measured();
    let table: Vec<usize> = (0..4).collect();
    let e = EquivariantApprox::new(f, group_x.clone(), group_y, table.clone(), table, eps)
        .unwrap();

    let report = certify_equivariant(&e);
    println!(
        "certified at eps = {eps}: dev_theta {}, dev_psi {}, valid {}",
        report.dev_theta, report.dev_psi, report.valid
    );
    let (ai_theta, ai_psi) = almost_inverse_check(&e);
    println!("almost inverse: {ai_theta} and {ai_psi} (both within 4 eps = {})", 4.0 * eps);

    // the pushforward group acts on net atoms
    let net_x = build_p2_net(&x, 2).unwrap();
    let net_y = build_p2_net(&y, 2).unwrap();
    let lifted_group = pushforward_group(&group_x, &net_x).unwrap();
    println!(
        "pushforward group on the {}-atom net has order {}",
        net_x.len(),
        lifted_group.order()
    );

    let (lifted, lift_report) = lift_equivariant(&e, &net_x, &net_y).unwrap();
    println!(
        "lifted quadruple claims eps_tilde = {:.6}; commutation deviation {:.2e} <= eps: {}",
        lift_report.epsilon_tilde, lift_report.max_commutation, lift_report.valid
    );
    let lifted_cert = certify_equivariant(&lifted);
    println!(
        "lifted certification: dev_theta {:.2e}, dev_psi {:.2e}, valid {}",
        lifted_cert.dev_theta, lifted_cert.dev_psi, lifted_cert.valid
    );
}
