//! Equivariant approximations: quadruples of maps between spaces with group
//! actions, pushforward groups on nets, and the equivariant lift.
//!
//! An epsilon-equivariant approximation here is a triple `(f, theta, psi)`
//! where `f` is an epsilon-approximation, `d_Y(f(gx), theta(g)(f x)) <= eps`
//! for all `g, x`, and `d_Y(f(psi(l) x), l(f x)) <= eps` for all `l, x`.
//! `theta` and `psi` are plain lookup tables over the enumerated groups; no
//! homomorphism property is assumed, and the almost-inverse estimate (both
//! round trips within `4 eps` in the uniform metric) is measured rather than
//! derived.

use crate::approx::{certify, ApproxCertificate, PointMap};
use crate::error::{Error, Precondition, Result};
use crate::metric::{IsometryGroup, MetricPair, Permutation, uniform_group_distance};
use crate::net::{epsilon_tilde, lift_approximation, P2Net};
use crate::pair;
use crate::tol;

/// A candidate equivariant approximation between two spaces with groups:
/// a map, two group-correspondence tables, and a claimed epsilon.
#[derive(Debug, Clone)]
pub struct EquivariantApprox {
    pub f: PointMap,
    pub group_x: IsometryGroup,
    pub group_y: IsometryGroup,
    /// For each element index of `group_x`, an element index of `group_y`.
    pub theta: Vec<usize>,
    /// For each element index of `group_y`, an element index of `group_x`.
    pub psi: Vec<usize>,
    pub epsilon: f64,
}

impl EquivariantApprox {
    pub fn new(
        f: PointMap,
        group_x: IsometryGroup,
        group_y: IsometryGroup,
        theta: Vec<usize>,
        psi: Vec<usize>,
        epsilon: f64,
    ) -> Result<Self> {
        if **group_x.space() != **f.source() || **group_y.space() != **f.target() {
            return Err(Error::MismatchedSpaces);
        }
        if theta.len() != group_x.order() {
            return Err(Error::MapLengthMismatch {
                expected: group_x.order(),
                got: theta.len(),
            });
        }
        if psi.len() != group_y.order() {
            return Err(Error::MapLengthMismatch {
                expected: group_y.order(),
                got: psi.len(),
            });
        }
        for &t in &theta {
            if t >= group_y.order() {
                return Err(Error::IndexOutOfRange {
                    index: t,
                    n: group_y.order(),
                });
            }
        }
        for &s in &psi {
            if s >= group_x.order() {
                return Err(Error::IndexOutOfRange {
                    index: s,
                    n: group_x.order(),
                });
            }
        }
        Ok(EquivariantApprox {
            f,
            group_x,
            group_y,
            theta,
            psi,
            epsilon,
        })
    }

    /// The identity quadruple on one space with one group.
    pub fn identity(group: IsometryGroup) -> Self {
        let f = PointMap::identity(group.space().clone());
        let order = group.order();
        EquivariantApprox {
            f,
            group_x: group.clone(),
            group_y: group,
            theta: (0..order).collect(),
            psi: (0..order).collect(),
            epsilon: 0.0,
        }
    }

    pub fn theta_of(&self, g_idx: usize) -> &Permutation {
        self.group_y.element(self.theta[g_idx])
    }

    pub fn psi_of(&self, l_idx: usize) -> &Permutation {
        self.group_x.element(self.psi[l_idx])
    }
}

/// Measured deviations of an equivariant approximation.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EquivariantReport {
    pub f_certificate: ApproxCertificate,
    /// `max_{g, x} d_Y(f(g x), theta(g)(f x))`.
    pub dev_theta: f64,
    /// `max_{l, x} d_Y(f(psi(l) x), l(f x))`.
    pub dev_psi: f64,
    pub epsilon: f64,
    pub valid: bool,
}

/// Measure all conditions of the pinned definition against `e.epsilon`.
pub fn certify_equivariant(e: &EquivariantApprox) -> EquivariantReport {
    let f_certificate = certify(&e.f, e.epsilon);
    let y = e.f.target();
    let n = e.f.source().n();

    let mut dev_theta = 0.0f64;
    for (g_idx, g) in e.group_x.elements().iter().enumerate() {
        let tg = e.theta_of(g_idx);
        for x in 0..n {
            let d = y.dist(e.f.apply(g.apply(x)), tg.apply(e.f.apply(x)));
            dev_theta = dev_theta.max(d);
        }
    }

    let mut dev_psi = 0.0f64;
    for (l_idx, l) in e.group_y.elements().iter().enumerate() {
        let pl = e.psi_of(l_idx);
        for x in 0..n {
            let d = y.dist(e.f.apply(pl.apply(x)), l.apply(e.f.apply(x)));
            dev_psi = dev_psi.max(d);
        }
    }

    let valid = f_certificate.valid
        && dev_theta <= e.epsilon + tol::CERT
        && dev_psi <= e.epsilon + tol::CERT;
    EquivariantReport {
        f_certificate,
        dev_theta,
        dev_psi,
        epsilon: e.epsilon,
        valid,
    }
}

/// Round-trip displacements of the group correspondences in the uniform
/// metrics: `(max_l d_GY(theta(psi(l)), l), max_g d_GX(psi(theta(g)), g))`.
/// For a certified approximation both stay within `4 eps`.
pub fn almost_inverse_check(e: &EquivariantApprox) -> (f64, f64) {
    let y = e.group_y.space();
    let x = e.group_x.space();
    let mut through_theta = 0.0f64;
    for (l_idx, l) in e.group_y.elements().iter().enumerate() {
        let roundtrip = e.theta_of(e.psi[l_idx]);
        through_theta = through_theta.max(uniform_group_distance(y, roundtrip, l));
    }
    let mut through_psi = 0.0f64;
    for (g_idx, g) in e.group_x.elements().iter().enumerate() {
        let roundtrip = e.psi_of(e.theta[g_idx]);
        through_psi = through_psi.max(uniform_group_distance(x, roundtrip, g));
    }
    (through_theta, through_psi)
}

/// An equivariant approximation of triples `(X, A_X, G_X)`: the quadruple of
/// maps, with the subset map given between the induced subspaces.
#[derive(Debug, Clone)]
pub struct RelativeEquivariantApprox {
    pub base: EquivariantApprox,
    pub pair_x: MetricPair,
    pub pair_y: MetricPair,
    pub f_prime: PointMap,
}

/// Report for the three conditions of a relative equivariant approximation.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RelativeReport {
    pub base: EquivariantReport,
    pub f_prime_certificate: ApproxCertificate,
    /// `max_{a in A_X} d_Y(f(a), f'(a))`.
    pub closeness: f64,
    pub valid: bool,
}

fn check_invariance(pair: &MetricPair, group: &IsometryGroup, side: &'static str) -> Result<()> {
    for (idx, g) in group.elements().iter().enumerate() {
        let ok = pair
            .subset()
            .iter()
            .all(|&a| pair.contains(g.apply(a)));
        if !ok {
            return Err(Error::NotInvariant { side, element: idx });
        }
    }
    Ok(())
}

/// Certify all three conditions: (1) the equivariant triple, (2) the subset
/// map, (3) epsilon-closeness of `f` and `f'` on the subset. The subsets
/// must be invariant under their groups.
pub fn certify_relative_equivariant(r: &RelativeEquivariantApprox) -> Result<RelativeReport> {
    check_invariance(&r.pair_x, &r.base.group_x, "source")?;
    check_invariance(&r.pair_y, &r.base.group_y, "target")?;
    if **r.base.f.source() != **r.pair_x.space()
        || **r.base.f.target() != **r.pair_y.space()
    {
        return Err(Error::MismatchedSpaces);
    }

    let base = certify_equivariant(&r.base);
    let f_prime_certificate = certify(&r.f_prime, r.base.epsilon);
    let closeness = pair::closeness(&r.base.f, &r.f_prime, &r.pair_x, &r.pair_y)?;
    let valid = base.valid && f_prime_certificate.valid && closeness <= r.base.epsilon + tol::CERT;
    Ok(RelativeReport {
        base,
        f_prime_certificate,
        closeness,
        valid,
    })
}

/// Push a group of base isometries forward to atom permutations of a net.
///
/// Each element acts by `mu -> g_# mu`; the returned permutations are
/// checked to preserve the net metric within [`tol::CERT`] and are listed in
/// the same order as the input group, so element indices carry over.
pub fn pushforward_group(group: &IsometryGroup, net: &P2Net) -> Result<IsometryGroup> {
    if **group.space() != **net.base() {
        return Err(Error::MismatchedSpaces);
    }
    let mut perms = Vec::with_capacity(group.order());
    for (idx, g) in group.elements().iter().enumerate() {
        let mut image = Vec::with_capacity(net.len());
        for a in 0..net.len() {
            let counts = net.atom_counts(a);
            let mut pushed = vec![0u32; counts.len()];
            for (p, &k) in counts.iter().enumerate() {
                pushed[g.apply(p)] += k;
            }
            let target = net
                .atom_index(&pushed)
                .expect("pushforward of a grid measure stays on the grid");
            image.push(target);
        }
        let perm = Permutation::new(image).map_err(|_| Error::NotIsometric {
            element: idx,
            deviation: f64::INFINITY,
        })?;
        let dev = crate::metric::isometry_deviation(net.metric(), &perm);
        if dev > tol::CERT {
            return Err(Error::NotIsometric {
                element: idx,
                deviation: dev,
            });
        }
        perms.push(perm);
    }
    IsometryGroup::from_elements(net.metric().clone(), perms, tol::CERT)
}

/// Deviation report for a lifted equivariant approximation.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EquivariantLiftReport {
    /// `max_{g, mu} W_2(theta_#(g_#)(f_# mu), f_#(g_# mu))`.
    pub max_commutation: f64,
    pub epsilon_tilde: f64,
    pub base_epsilon: f64,
    /// Whether the commutation deviation stays within the base epsilon.
    pub valid: bool,
}

/// Lift a certified equivariant approximation to the nets.
///
/// The map is lifted by pushforward of atoms, the groups by
/// [`pushforward_group`], and the tables elementwise (`theta_#(g_#) =
/// (theta g)_#`). The lifted quadruple claims `epsilon_tilde`; the report
/// carries the measured commutation deviation, which stays within the base
/// epsilon because the squared deviation integrates `d^2(theta(g)(f x),
/// f(g x)) <= eps^2` against the atom.
pub fn lift_equivariant(
    e: &EquivariantApprox,
    net_x: &P2Net,
    net_y: &P2Net,
) -> Result<(EquivariantApprox, EquivariantLiftReport)> {
    let report = certify_equivariant(e);
    if !report.valid {
        return Err(Error::PreconditionFailed(Precondition::NotCertified {
            distortion: report.f_certificate.distortion,
            defect: report.f_certificate.defect,
            epsilon: e.epsilon,
        }));
    }

    let lift = lift_approximation(&e.f, e.epsilon, net_x, net_y)?;
    let lifted_group_x = pushforward_group(&e.group_x, net_x)?;
    let lifted_group_y = pushforward_group(&e.group_y, net_y)?;

    let mut max_commutation = 0.0f64;
    for g_idx in 0..e.group_x.order() {
        let g_net = lifted_group_x.element(g_idx);
        let tg_net = lifted_group_y.element(e.theta[g_idx]);
        for a in 0..net_x.len() {
            let lhs = tg_net.apply(lift.map.apply(a));
            let rhs = lift.map.apply(g_net.apply(a));
            max_commutation = max_commutation.max(net_y.metric().dist(lhs, rhs));
        }
    }

    let tilde = epsilon_tilde(e.epsilon, e.f.target().diameter());
    let lifted = EquivariantApprox::new(
        lift.map,
        lifted_group_x,
        lifted_group_y,
        e.theta.clone(),
        e.psi.clone(),
        tilde,
    )?;
    let report = EquivariantLiftReport {
        max_commutation,
        epsilon_tilde: tilde,
        base_epsilon: e.epsilon,
        valid: max_commutation <= e.epsilon + tol::CERT,
    };
    Ok((lifted, report))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::metric::{enumerate_isometries, validate_metric, SharedSpace};
    use crate::net::build_p2_net;
    use std::sync::Arc;

    fn space(rows: &[Vec<f64>]) -> SharedSpace {
        Arc::new(validate_metric(rows).unwrap())
    }

    fn two_point(d: f64) -> SharedSpace {
        space(&[vec![0.0, d], vec![d, 0.0]])
    }

    fn four_cycle() -> SharedSpace {
        space(&[
            vec![0.0, 1.0, 2.0, 1.0],
            vec![1.0, 0.0, 1.0, 2.0],
            vec![2.0, 1.0, 0.0, 1.0],
            vec![1.0, 2.0, 1.0, 0.0],
        ])
    }

    fn swap_group(x: &SharedSpace) -> IsometryGroup {
        enumerate_isometries(x).unwrap()
    }

    #[test]
    fn identity_quadruple_has_zero_deviations() {
        let g = enumerate_isometries(&four_cycle()).unwrap();
        let e = EquivariantApprox::identity(g);
        let report = certify_equivariant(&e);
        assert_eq!(report.dev_theta, 0.0);
        assert_eq!(report.dev_psi, 0.0);
        assert!(report.valid);
        assert_eq!(almost_inverse_check(&e), (0.0, 0.0));
    }

    #[test]
    fn matched_swap_tables_are_exact() {
        let x = two_point(1.0);
        let g = swap_group(&x);
        let e = EquivariantApprox::new(
            PointMap::identity(x),
            g.clone(),
            g,
            vec![0, 1],
            vec![0, 1],
            0.0,
        )
        .unwrap();
        let report = certify_equivariant(&e);
        assert_eq!(report.dev_theta, 0.0);
        assert!(report.valid);
    }

    #[test]
    fn mismatched_theta_is_detected() {
        let x = two_point(1.0);
        let g = swap_group(&x);
        // send the swap to the identity: dev_theta = d(f(swap x), f(x)) = 1
        let e = EquivariantApprox::new(
            PointMap::identity(x),
            g.clone(),
            g,
            vec![0, 0],
            vec![0, 1],
            0.5,
        )
        .unwrap();
        let report = certify_equivariant(&e);
        assert_eq!(report.dev_theta, 1.0);
        assert!(!report.valid);
    }

    #[test]
    fn pushforward_of_the_trivial_group_is_trivial() {
        let x = two_point(1.0);
        let net = build_p2_net(&x, 2).unwrap();
        let g = IsometryGroup::trivial(x);
        let lifted = pushforward_group(&g, &net).unwrap();
        assert_eq!(lifted.order(), 1);
        assert!(lifted.element(0).is_identity());
    }

    #[test]
    fn swap_acts_on_the_three_atom_net_as_expected() {
        let x = two_point(1.0);
        let net = build_p2_net(&x, 2).unwrap();
        let g = swap_group(&x);
        let lifted = pushforward_group(&g, &net).unwrap();
        let swap_idx = g
            .elements()
            .iter()
            .position(|p| !p.is_identity())
            .unwrap();
        let perm = lifted.element(swap_idx);
        // atoms are (1,0), (0,1), (1/2,1/2): the swap exchanges the Diracs
        // and fixes the midpoint
        assert_eq!(perm.image(), &[1, 0, 2]);
    }

    #[test]
    fn rotation_acts_on_dirac_atoms_like_the_base_rotation() {
        let x = four_cycle();
        let net = build_p2_net(&x, 1).unwrap();
        let rot = Permutation::new(vec![1, 2, 3, 0]).unwrap();
        let g = IsometryGroup::cyclic(x, rot.clone()).unwrap();
        let lifted = pushforward_group(&g, &net).unwrap();
        let idx = g.index_of(&rot).unwrap();
        assert_eq!(lifted.element(idx).image(), rot.image());
    }

    #[test]
    fn pushforward_group_preserves_the_multiplication_table() {
        let x = four_cycle();
        let net = build_p2_net(&x, 2).unwrap();
        let g = enumerate_isometries(&x).unwrap();
        let lifted = pushforward_group(&g, &net).unwrap();
        for (ai, a) in g.elements().iter().enumerate() {
            for (bi, b) in g.elements().iter().enumerate() {
                let prod = g.index_of(&a.compose(b)).unwrap();
                let lifted_prod = lifted.element(ai).compose(lifted.element(bi));
                assert_eq!(lifted_prod, *lifted.element(prod));
            }
        }
    }

    #[test]
    fn relative_certification_reduces_to_plain_on_full_subsets() {
        let x = four_cycle();
        let g = enumerate_isometries(&x).unwrap();
        let e = EquivariantApprox::identity(g);
        let pair = MetricPair::new(x.clone(), (0..4).collect()).unwrap();
        let r = RelativeEquivariantApprox {
            f_prime: PointMap::identity(pair.subspace().clone()),
            base: e.clone(),
            pair_x: pair.clone(),
            pair_y: pair,
        };
        let report = certify_relative_equivariant(&r).unwrap();
        assert!(report.valid);
        assert_eq!(report.closeness, 0.0);
        let plain = certify_equivariant(&e);
        assert_eq!(report.base, plain);
    }

    #[test]
    fn invariance_is_required() {
        let x = four_cycle();
        let g = enumerate_isometries(&x).unwrap();
        let e = EquivariantApprox::identity(g);
        // {0} is not invariant under the rotations of the 4-cycle
        let pair = MetricPair::new(x.clone(), vec![0]).unwrap();
        let r = RelativeEquivariantApprox {
            f_prime: PointMap::identity(pair.subspace().clone()),
            base: e,
            pair_x: pair.clone(),
            pair_y: pair,
        };
        assert!(matches!(
            certify_relative_equivariant(&r),
            Err(Error::NotInvariant { side: "source", .. })
        ));
    }

    #[test]
    fn perturbed_f_prime_shows_up_in_condition_three() {
        let x = four_cycle();
        // order-2 rotation subgroup keeps {0, 2} invariant
        let rot2 = Permutation::new(vec![2, 3, 0, 1]).unwrap();
        let g = IsometryGroup::cyclic(x.clone(), rot2).unwrap();
        let pair = MetricPair::new(x.clone(), vec![0, 2]).unwrap();
        let e = EquivariantApprox::new(
            PointMap::identity(x),
            g.clone(),
            g,
            vec![0, 1],
            vec![0, 1],
            2.0,
        )
        .unwrap();
        // f' swaps the two subset points; d(0, 2) = 2 is the perturbation
        let f_prime = PointMap::new(
            pair.subspace().clone(),
            pair.subspace().clone(),
            vec![1, 0],
        )
        .unwrap();
        let r = RelativeEquivariantApprox {
            base: e,
            pair_x: pair.clone(),
            pair_y: pair,
            f_prime,
        };
        let report = certify_relative_equivariant(&r).unwrap();
        assert_eq!(report.closeness, 2.0);
    }

    #[test]
    fn identity_data_lifts_with_zero_deviation() {
        let x = two_point(1.0);
        let g = swap_group(&x);
        let e = EquivariantApprox::identity(g);
        let net = build_p2_net(&x, 2).unwrap();
        let (lifted, report) = lift_equivariant(&e, &net, &net).unwrap();
        assert_eq!(report.max_commutation, 0.0);
        assert!(report.valid);
        assert_eq!(report.epsilon_tilde, 0.0);
        let lifted_report = certify_equivariant(&lifted);
        assert!(lifted_report.valid);
    }

    #[test]
    fn swap_data_lifts_exactly_because_pushforwards_commute() {
        let x = two_point(1.0);
        let y = two_point(1.0);
        let gx = swap_group(&x);
        let gy = swap_group(&y);
        let e = EquivariantApprox::new(
            PointMap::new(x.clone(), y.clone(), vec![0, 1]).unwrap(),
            gx,
            gy,
            vec![0, 1],
            vec![0, 1],
            0.0,
        )
        .unwrap();
        let net_x = build_p2_net(&x, 3).unwrap();
        let net_y = build_p2_net(&y, 3).unwrap();
        let (_, report) = lift_equivariant(&e, &net_x, &net_y).unwrap();
        assert_eq!(report.max_commutation, 0.0);
    }

    #[test]
    fn commutation_deviation_on_dirac_atoms_matches_dev_theta() {
        // a deliberately misaligned theta on the swap group
        let x = two_point(1.0);
        let g = swap_group(&x);
        let e = EquivariantApprox::new(
            PointMap::identity(x.clone()),
            g.clone(),
            g,
            vec![0, 0],
            vec![0, 0],
            1.0,
        )
        .unwrap();
        let base_report = certify_equivariant(&e);
        let net = build_p2_net(&x, 2).unwrap();
        let lift = lift_approximation(&e.f, e.epsilon, &net, &net).unwrap();
        let lifted_gx = pushforward_group(&e.group_x, &net).unwrap();
        let lifted_gy = pushforward_group(&e.group_y, &net).unwrap();
        let mut dirac_dev = 0.0f64;
        for g_idx in 0..e.group_x.order() {
            for i in 0..x.n() {
                let a = net.dirac_index(i);
                let lhs = lifted_gy.element(e.theta[g_idx]).apply(lift.map.apply(a));
                let rhs = lift.map.apply(lifted_gx.element(g_idx).apply(a));
                dirac_dev = dirac_dev.max(net.metric().dist(lhs, rhs));
            }
        }
        assert!((dirac_dev - base_report.dev_theta).abs() <= 1e-9);
    }
}
