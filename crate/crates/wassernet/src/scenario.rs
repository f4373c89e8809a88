//! Scenario runner: generates convergent families of spaces, computes
//! base-level and net-level GH quantities for each member against a
//! reference, and emits a deterministic report.
//!
//! The reference ("limit") space is realized as the finest family member
//! (largest n-gon, last two-point distance, smallest perturbation); the
//! report header records this. Each row carries a canonical witness map
//! into the reference, the GH upper bound of its completed correspondence,
//! exact or diameter-based lower bounds, the lifted map on nets with its
//! certificate, and, for group scenarios, the equivariant deviations.

use std::fmt::Write as _;
use std::sync::Arc;

use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::approx::{
    certify, distortion, gh_distance_bruteforce_capped, gh_upper_bound, surjectivity_defect,
    PointMap, DEFAULT_GH_CAP,
};
use crate::equivariant::{
    almost_inverse_check, certify_equivariant, lift_equivariant, EquivariantApprox,
};
use crate::error::{Error, Result};
use crate::metric::{
    metric_closure, validate_metric, IsometryGroup, Permutation, SharedSpace,
};
use crate::net::{
    build_p2_net_capped, lift_approximation, lift_preserves_diracs_check, P2Net, DEFAULT_NET_CAP,
};
use crate::tol;

/// A convergent family of spaces. Row members are indexed by the spec's
/// `indices` list; the reference member is configured explicitly.
#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(tag = "type", rename_all = "snake_case")]
pub enum Family {
    /// Regular n-gons with the arc-length (intrinsic circle) metric, so
    /// diameters converge to half the perimeter. Indices are vertex counts.
    Ngon { perimeter: f64, reference_sides: usize },
    /// Two-point spaces; `distances` pairs up with the indices.
    TwoPoint {
        distances: Vec<f64>,
        reference_distance: f64,
    },
    /// Multiplicative perturbations `(1 + u * magnitude)`, `u` uniform in
    /// `[-1, 1]`, of a seeded random base space with `n` points; triangle
    /// violations are repaired by shortest-path closure.
    RandomPerturbation {
        n: usize,
        seed: u64,
        magnitudes: Vec<f64>,
        reference_magnitude: f64,
    },
}

/// Optional group action attached to a scenario.
#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(tag = "type", rename_all = "snake_case")]
pub enum GroupSpec {
    /// Cyclic group of the given order; for n-gon families the order must
    /// divide every member size (rotations), for two-point families it must
    /// be 1 or 2 (the swap), for perturbation families 1.
    Cyclic { order: usize },
}

fn default_gh_cap() -> usize {
    DEFAULT_GH_CAP
}

fn default_net_cap() -> usize {
    DEFAULT_NET_CAP
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct ScenarioSpec {
    pub family: Family,
    /// Strictly increasing row labels; their meaning depends on the family.
    pub indices: Vec<usize>,
    /// Net resolution.
    pub m: u32,
    #[serde(default)]
    pub group: Option<GroupSpec>,
    /// Point cap for exact GH brute force in the lower-bound column.
    #[serde(default = "default_gh_cap")]
    pub gh_cap: usize,
    /// Atom cap for net construction.
    #[serde(default = "default_net_cap")]
    pub net_cap: usize,
}

/// One family member's measurements against the reference.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct ScenarioRow {
    pub index: usize,
    pub n: usize,
    /// Measured epsilon of the canonical witness map (max of distortion and
    /// surjectivity defect).
    pub base_epsilon: f64,
    pub base_defect: f64,
    pub base_gh_lower: f64,
    pub base_gh_upper: f64,
    pub net_gh_lower: f64,
    pub net_gh_upper: f64,
    pub dirac_hausdorff: f64,
    pub lift_eps_tilde: f64,
    pub lift_net_distortion: f64,
    pub lift_net_defect: f64,
    pub dev_theta: Option<f64>,
    pub dev_psi: Option<f64>,
    pub equivariant_epsilon: Option<f64>,
    pub lifted_commutation: Option<f64>,
    pub almost_inverse_theta: Option<f64>,
    pub almost_inverse_psi: Option<f64>,
    pub contracts_hold: bool,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct ScenarioReport {
    pub family: String,
    /// How the limit is realized (the finest family member).
    pub reference: String,
    pub m: u32,
    pub group: Option<String>,
    pub rows: Vec<ScenarioRow>,
    /// Both upper-bound columns non-increasing along the index list
    /// (within [`tol::TREND`]).
    pub co_decay: bool,
    pub contracts_hold: bool,
}

impl ScenarioReport {
    /// Deterministic CSV: metadata as `#` comments, then the pinned column
    /// set. Empty cells stand for columns that do not apply.
    pub fn to_csv(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(out, "# family: {}", self.family);
        let _ = writeln!(out, "# reference: {}", self.reference);
        let _ = writeln!(out, "# m: {}", self.m);
        if let Some(group) = &self.group {
            let _ = writeln!(out, "# group: {group}");
        }
        let _ = writeln!(
            out,
            "index,n,base_gh_lower,base_gh_upper,net_gh_upper,dirac_hausdorff,dev_theta,dev_psi,lift_eps_tilde"
        );
        let opt = |v: Option<f64>| v.map(|x| x.to_string()).unwrap_or_default();
        for row in &self.rows {
            let _ = writeln!(
                out,
                "{},{},{},{},{},{},{},{},{}",
                row.index,
                row.n,
                row.base_gh_lower,
                row.base_gh_upper,
                row.net_gh_upper,
                row.dirac_hausdorff,
                opt(row.dev_theta),
                opt(row.dev_psi),
                row.lift_eps_tilde
            );
        }
        out
    }
}

/// Regular n-gon with the arc-length metric restricted to vertices.
pub fn ngon_space(sides: usize, perimeter: f64) -> Result<SharedSpace> {
    if sides == 0 {
        return Err(Error::InvalidScenario {
            reason: "an n-gon needs at least one vertex".into(),
        });
    }
    if !(perimeter > 0.0) {
        return Err(Error::InvalidScenario {
            reason: format!("perimeter {perimeter} must be positive"),
        });
    }
    let step = perimeter / sides as f64;
    let rows: Vec<Vec<f64>> = (0..sides)
        .map(|i| {
            (0..sides)
                .map(|j| {
                    let arc = (i as isize - j as isize).unsigned_abs().min(sides - (i as isize - j as isize).unsigned_abs());
                    step * arc as f64
                })
                .collect()
        })
        .collect();
    Ok(Arc::new(validate_metric(&rows)?))
}

/// Two points at the given distance.
pub fn two_point_space(d: f64) -> Result<SharedSpace> {
    Ok(Arc::new(validate_metric(&[vec![0.0, d], vec![d, 0.0]])?))
}

fn random_base_space(n: usize, seed: u64) -> Result<SharedSpace> {
    if n < 2 {
        return Err(Error::InvalidScenario {
            reason: "perturbation family needs at least two points".into(),
        });
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut rows = vec![vec![0.0; n]; n];
    for i in 0..n {
        for j in (i + 1)..n {
            // entries in [1, 2]: the triangle inequality holds automatically
            let d = rng.gen_range(1.0..=2.0);
            rows[i][j] = d;
            rows[j][i] = d;
        }
    }
    Ok(Arc::new(validate_metric(&rows)?))
}

fn perturbed_space(base: &SharedSpace, magnitude: f64, seed: u64) -> Result<SharedSpace> {
    if !(0.0..1.0).contains(&magnitude) {
        return Err(Error::InvalidScenario {
            reason: format!("perturbation magnitude {magnitude} must lie in [0, 1)"),
        });
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let n = base.n();
    let mut rows = vec![vec![0.0; n]; n];
    for i in 0..n {
        for j in (i + 1)..n {
            let u: f64 = rng.gen_range(-1.0..=1.0);
            let d = base.dist(i, j) * (1.0 + u * magnitude);
            rows[i][j] = d;
            rows[j][i] = d;
        }
    }
    let repaired = metric_closure(&rows);
    Ok(Arc::new(validate_metric(&repaired)?))
}

struct FamilyData {
    members: Vec<(usize, SharedSpace)>,
    reference: SharedSpace,
    family_desc: String,
    reference_desc: String,
}

fn build_family(spec: &ScenarioSpec) -> Result<FamilyData> {
    if spec.indices.is_empty() {
        return Err(Error::InvalidScenario {
            reason: "index list is empty".into(),
        });
    }
    if !spec.indices.windows(2).all(|w| w[0] < w[1]) {
        return Err(Error::InvalidScenario {
            reason: "index list must be strictly increasing".into(),
        });
    }
    if spec.m < 1 {
        return Err(Error::InvalidScenario {
            reason: "net resolution must be at least 1".into(),
        });
    }
    match &spec.family {
        Family::Ngon {
            perimeter,
            reference_sides,
        } => {
            let members = spec
                .indices
                .iter()
                .map(|&sides| Ok((sides, ngon_space(sides, *perimeter)?)))
                .collect::<Result<Vec<_>>>()?;
            let reference = ngon_space(*reference_sides, *perimeter)?;
            Ok(FamilyData {
                members,
                reference,
                family_desc: format!("ngon perimeter={perimeter} (arc-length metric)"),
                reference_desc: format!(
                    "ngon sides={reference_sides} (finest family member as limit proxy)"
                ),
            })
        }
        Family::TwoPoint {
            distances,
            reference_distance,
        } => {
            if distances.len() != spec.indices.len() {
                return Err(Error::InvalidScenario {
                    reason: format!(
                        "{} distances for {} indices",
                        distances.len(),
                        spec.indices.len()
                    ),
                });
            }
            let members = spec
                .indices
                .iter()
                .zip(distances)
                .map(|(&idx, &d)| Ok((idx, two_point_space(d)?)))
                .collect::<Result<Vec<_>>>()?;
            let reference = two_point_space(*reference_distance)?;
            Ok(FamilyData {
                members,
                reference,
                family_desc: "two_point".to_string(),
                reference_desc: format!(
                    "two_point distance={reference_distance} (finest family member as limit proxy)"
                ),
            })
        }
        Family::RandomPerturbation {
            n,
            seed,
            magnitudes,
            reference_magnitude,
        } => {
            if magnitudes.len() != spec.indices.len() {
                return Err(Error::InvalidScenario {
                    reason: format!(
                        "{} magnitudes for {} indices",
                        magnitudes.len(),
                        spec.indices.len()
                    ),
                });
            }
            let base = random_base_space(*n, *seed)?;
            let row_seed = |row: u64| seed.wrapping_add((row + 1).wrapping_mul(0x9E3779B97F4A7C15));
            let members = spec
                .indices
                .iter()
                .zip(magnitudes)
                .enumerate()
                .map(|(row, (&idx, &mag))| {
                    Ok((idx, perturbed_space(&base, mag, row_seed(row as u64))?))
                })
                .collect::<Result<Vec<_>>>()?;
            let reference = perturbed_space(
                &base,
                *reference_magnitude,
                row_seed(spec.indices.len() as u64),
            )?;
            Ok(FamilyData {
                members,
                reference,
                family_desc: format!("random_perturbation n={n} seed={seed}"),
                reference_desc: format!(
                    "random_perturbation magnitude={reference_magnitude} (finest family member as limit proxy)"
                ),
            })
        }
    }
}

/// The family's canonical witness map from a member into the reference.
fn canonical_map(
    family: &Family,
    index: usize,
    member: &SharedSpace,
    reference: &SharedSpace,
) -> Result<PointMap> {
    match family {
        Family::Ngon { .. } => {
            let n_i = index;
            let n_ref = reference.n();
            // nearest reference vertex; half-arc ties go to the clockwise
            // neighbor (integer rounding keeps this exact)
            let image = (0..n_i)
                .map(|j| ((2 * j * n_ref + n_i) / (2 * n_i)) % n_ref)
                .collect();
            PointMap::new(member.clone(), reference.clone(), image)
        }
        Family::TwoPoint { .. } | Family::RandomPerturbation { .. } => {
            let image = (0..member.n()).collect();
            PointMap::new(member.clone(), reference.clone(), image)
        }
    }
}

/// The cyclic action on one family member, with elements in power order.
fn cyclic_group_for(
    family: &Family,
    space: &SharedSpace,
    order: usize,
) -> Result<IsometryGroup> {
    if order == 0 {
        return Err(Error::IncompatibleGroup {
            reason: "group order must be positive".into(),
        });
    }
    if order == 1 {
        return Ok(IsometryGroup::trivial(space.clone()));
    }
    let n = space.n();
    let generator = match family {
        Family::Ngon { .. } => {
            if n % order != 0 {
                return Err(Error::IncompatibleGroup {
                    reason: format!("cyclic order {order} does not divide n-gon size {n}"),
                });
            }
            let shift = n / order;
            Permutation::new((0..n).map(|p| (p + shift) % n).collect())
                .expect("rotation is a bijection")
        }
        Family::TwoPoint { .. } => {
            if order != 2 {
                return Err(Error::IncompatibleGroup {
                    reason: format!("two-point spaces only support cyclic order 2, got {order}"),
                });
            }
            Permutation::new(vec![1, 0]).expect("swap is a bijection")
        }
        Family::RandomPerturbation { .. } => {
            return Err(Error::IncompatibleGroup {
                reason: "perturbed spaces only support the trivial group".into(),
            });
        }
    };
    let group = IsometryGroup::cyclic(space.clone(), generator)?;
    if group.order() != order {
        return Err(Error::IncompatibleGroup {
            reason: format!(
                "generator has order {} instead of {order}",
                group.order()
            ),
        });
    }
    Ok(group)
}

fn compute_row(
    spec: &ScenarioSpec,
    index: usize,
    member: &SharedSpace,
    reference: &SharedSpace,
    reference_net: &P2Net,
    with_group: bool,
) -> Result<ScenarioRow> {
    let f = canonical_map(&spec.family, index, member, reference)?;
    let base_distortion = distortion(&f);
    let base_defect = surjectivity_defect(&f);
    let base_epsilon = base_distortion.max(base_defect);
    debug_assert!(certify(&f, base_epsilon).valid);

    let base_gh_upper = gh_upper_bound(&f);
    let diam_lower = (member.diameter() - reference.diameter()).abs() / 2.0;
    let base_gh_lower = if member.n() <= spec.gh_cap && reference.n() <= spec.gh_cap {
        diam_lower.max(gh_distance_bruteforce_capped(member, reference, spec.gh_cap)?)
    } else {
        diam_lower
    };

    let member_net = build_p2_net_capped(member, spec.m, spec.net_cap)?;
    let lift = lift_approximation(&f, base_epsilon, &member_net, reference_net)?;
    let net_gh_upper = gh_upper_bound(&lift.map);
    let net_diam_lower =
        (member_net.metric().diameter() - reference_net.metric().diameter()).abs() / 2.0;
    let net_gh_lower = if member_net.len() <= spec.gh_cap && reference_net.len() <= spec.gh_cap {
        net_diam_lower.max(gh_distance_bruteforce_capped(
            member_net.metric(),
            reference_net.metric(),
            spec.gh_cap,
        )?)
    } else {
        net_diam_lower
    };
    let dirac_hausdorff = lift_preserves_diracs_check(&f, &member_net, reference_net)?;

    let mut dev_theta = None;
    let mut dev_psi = None;
    let mut equivariant_epsilon = None;
    let mut lifted_commutation = None;
    let mut almost_inverse_theta = None;
    let mut almost_inverse_psi = None;
    let mut equivariant_ok = true;
    if with_group {
        let Some(GroupSpec::Cyclic { order }) = &spec.group else {
            return Err(Error::IncompatibleGroup {
                reason: "equivariant scenario needs a group".into(),
            });
        };
        let group_member = cyclic_group_for(&spec.family, member, *order)?;
        let group_reference = cyclic_group_for(&spec.family, reference, *order)?;
        let table: Vec<usize> = (0..*order).collect();
        // theta maps generator power to generator power; measure first,
        // then self-certify the quadruple at the measured epsilon
        let probe = EquivariantApprox::new(
            f.clone(),
            group_member.clone(),
            group_reference.clone(),
            table.clone(),
            table.clone(),
            base_epsilon,
        )?;
        let probe_report = certify_equivariant(&probe);
        let eps_eq = base_epsilon
            .max(probe_report.dev_theta)
            .max(probe_report.dev_psi);
        let quadruple = EquivariantApprox::new(
            f.clone(),
            group_member,
            group_reference,
            table.clone(),
            table,
            eps_eq,
        )?;
        let report = certify_equivariant(&quadruple);
        let (ai_theta, ai_psi) = almost_inverse_check(&quadruple);
        let (_, lift_report) = lift_equivariant(&quadruple, &member_net, reference_net)?;

        equivariant_ok = report.valid
            && lift_report.valid
            && ai_theta <= 4.0 * eps_eq + tol::CERT
            && ai_psi <= 4.0 * eps_eq + tol::CERT;
        dev_theta = Some(report.dev_theta);
        dev_psi = Some(report.dev_psi);
        equivariant_epsilon = Some(eps_eq);
        lifted_commutation = Some(lift_report.max_commutation);
        almost_inverse_theta = Some(ai_theta);
        almost_inverse_psi = Some(ai_psi);
    }

    let contracts_hold = base_gh_lower <= base_gh_upper + tol::CERT
        && net_gh_lower <= net_gh_upper + tol::CERT
        && 2.0 * base_gh_lower <= base_epsilon + tol::CERT
        && dirac_hausdorff <= base_defect + tol::CERT
        && lift.certificate.valid
        && equivariant_ok;

    Ok(ScenarioRow {
        index,
        n: member.n(),
        base_epsilon,
        base_defect,
        base_gh_lower,
        base_gh_upper,
        net_gh_lower,
        net_gh_upper,
        dirac_hausdorff,
        lift_eps_tilde: lift.epsilon_tilde,
        lift_net_distortion: lift.certificate.distortion,
        lift_net_defect: lift.certificate.defect,
        dev_theta,
        dev_psi,
        equivariant_epsilon,
        lifted_commutation,
        almost_inverse_theta,
        almost_inverse_psi,
        contracts_hold,
    })
}

fn run(spec: &ScenarioSpec, with_group: bool) -> Result<ScenarioReport> {
    let family = build_family(spec)?;
    let reference_net = build_p2_net_capped(&family.reference, spec.m, spec.net_cap)?;

    let rows = family
        .members
        .par_iter()
        .map(|(index, member)| {
            compute_row(
                spec,
                *index,
                member,
                &family.reference,
                &reference_net,
                with_group,
            )
        })
        .collect::<Result<Vec<ScenarioRow>>>()?;

    let non_increasing = |get: fn(&ScenarioRow) -> f64| {
        rows.windows(2)
            .all(|w| get(&w[1]) <= get(&w[0]) + tol::TREND)
    };
    let co_decay = rows.len() >= 2
        && non_increasing(|r| r.base_gh_upper)
        && non_increasing(|r| r.net_gh_upper);
    let contracts_hold = rows.iter().all(|r| r.contracts_hold);

    let group_desc = if with_group {
        spec.group.as_ref().map(|GroupSpec::Cyclic { order }| {
            format!("cyclic order={order} (theta maps generator to generator)")
        })
    } else {
        None
    };
    Ok(ScenarioReport {
        family: family.family_desc,
        reference: family.reference_desc,
        m: spec.m,
        group: group_desc,
        rows,
        co_decay,
        contracts_hold,
    })
}

/// Run a scenario without group data (any configured group is ignored).
pub fn run_scenario(spec: &ScenarioSpec) -> Result<ScenarioReport> {
    run(spec, false)
}

/// Run a scenario with its group: rows additionally carry certified
/// equivariant quadruples and the lifted deviations.
pub fn run_equivariant_scenario(spec: &ScenarioSpec) -> Result<ScenarioReport> {
    if spec.group.is_none() {
        return Err(Error::IncompatibleGroup {
            reason: "spec has no group configured".into(),
        });
    }
    run(spec, true)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn two_point_spec() -> ScenarioSpec {
        let indices: Vec<usize> = (1..=6).collect();
        let distances = indices.iter().map(|&i| 1.0 + 1.0 / i as f64).collect();
        ScenarioSpec {
            family: Family::TwoPoint {
                distances,
                reference_distance: 1.0,
            },
            indices,
            m: 2,
            group: None,
            gh_cap: DEFAULT_GH_CAP,
            net_cap: DEFAULT_NET_CAP,
        }
    }

    #[test]
    fn two_point_rows_match_the_closed_form() {
        let report = run_scenario(&two_point_spec()).unwrap();
        assert!(report.contracts_hold);
        assert!(report.co_decay);
        for row in &report.rows {
            let expected = 1.0 / (2.0 * row.index as f64);
            assert!((row.base_gh_upper - expected).abs() < 1e-12);
            assert!((row.base_gh_lower - expected).abs() < 1e-12);
        }
        // net-level uppers strictly decrease along the family
        for w in report.rows.windows(2) {
            assert!(w[1].net_gh_upper < w[0].net_gh_upper);
        }
    }

    #[test]
    fn constant_family_gives_all_zero_rows() {
        let spec = ScenarioSpec {
            family: Family::TwoPoint {
                distances: vec![1.0, 1.0, 1.0],
                reference_distance: 1.0,
            },
            indices: vec![1, 2, 3],
            m: 2,
            group: None,
            gh_cap: DEFAULT_GH_CAP,
            net_cap: DEFAULT_NET_CAP,
        };
        let report = run_scenario(&spec).unwrap();
        for row in &report.rows {
            assert_eq!(row.base_gh_upper, 0.0);
            assert_eq!(row.base_gh_lower, 0.0);
            assert_eq!(row.net_gh_upper, 0.0);
            assert!(row.dirac_hausdorff <= 1e-9);
            assert_eq!(row.lift_eps_tilde, 0.0);
        }
        assert!(report.contracts_hold);
    }

    #[test]
    fn reports_are_byte_identical_across_runs() {
        let spec = ScenarioSpec {
            family: Family::RandomPerturbation {
                n: 4,
                seed: 11,
                magnitudes: vec![0.4, 0.2, 0.1],
                reference_magnitude: 0.0,
            },
            indices: vec![1, 2, 3],
            m: 2,
            group: None,
            gh_cap: DEFAULT_GH_CAP,
            net_cap: DEFAULT_NET_CAP,
        };
        let a = run_scenario(&spec).unwrap().to_csv();
        let b = run_scenario(&spec).unwrap().to_csv();
        assert_eq!(a, b);
        assert!(a.starts_with("# family: random_perturbation n=4 seed=11\n"));
    }

    #[test]
    fn ngon_family_decays_in_both_columns() {
        let spec = ScenarioSpec {
            family: Family::Ngon {
                perimeter: std::f64::consts::TAU,
                reference_sides: 16,
            },
            indices: vec![4, 8],
            m: 1,
            group: None,
            gh_cap: DEFAULT_GH_CAP,
            net_cap: DEFAULT_NET_CAP,
        };
        let report = run_scenario(&spec).unwrap();
        assert!(report.contracts_hold);
        assert!(report.co_decay);
        assert!(report.rows[1].base_gh_upper < report.rows[0].base_gh_upper);
        assert!(report.rows[1].net_gh_upper < report.rows[0].net_gh_upper);
    }

    #[test]
    fn equivariant_ngon_rows_have_zero_deviation_for_nested_sizes() {
        let spec = ScenarioSpec {
            family: Family::Ngon {
                perimeter: std::f64::consts::TAU,
                reference_sides: 16,
            },
            indices: vec![4, 8],
            m: 1,
            group: Some(GroupSpec::Cyclic { order: 4 }),
            gh_cap: DEFAULT_GH_CAP,
            net_cap: DEFAULT_NET_CAP,
        };
        let report = run_equivariant_scenario(&spec).unwrap();
        assert!(report.contracts_hold);
        for row in &report.rows {
            // nested aligned vertices commute with the rotations exactly
            assert_eq!(row.dev_theta, Some(0.0));
            assert_eq!(row.dev_psi, Some(0.0));
            assert!(row.lifted_commutation.unwrap() <= 1e-9);
        }
    }

    #[test]
    fn trivial_group_reduces_to_plain_rows() {
        let mut spec = two_point_spec();
        spec.group = Some(GroupSpec::Cyclic { order: 1 });
        let plain = run_scenario(&spec).unwrap();
        let equivariant = run_equivariant_scenario(&spec).unwrap();
        for (p, e) in plain.rows.iter().zip(&equivariant.rows) {
            assert_eq!(p.base_gh_upper, e.base_gh_upper);
            assert_eq!(p.net_gh_upper, e.net_gh_upper);
            assert_eq!(e.dev_theta, Some(0.0));
        }
    }

    #[test]
    fn swap_group_on_two_point_family_is_exact() {
        let mut spec = two_point_spec();
        spec.group = Some(GroupSpec::Cyclic { order: 2 });
        let report = run_equivariant_scenario(&spec).unwrap();
        assert!(report.contracts_hold);
        for row in &report.rows {
            assert_eq!(row.dev_theta, Some(0.0));
            assert_eq!(row.dev_psi, Some(0.0));
        }
    }

    #[test]
    fn incompatible_group_is_rejected() {
        let spec = ScenarioSpec {
            family: Family::Ngon {
                perimeter: 1.0,
                reference_sides: 9,
            },
            indices: vec![3, 9],
            m: 1,
            group: Some(GroupSpec::Cyclic { order: 2 }),
            gh_cap: DEFAULT_GH_CAP,
            net_cap: DEFAULT_NET_CAP,
        };
        assert!(matches!(
            run_equivariant_scenario(&spec),
            Err(Error::IncompatibleGroup { .. })
        ));
    }

    #[test]
    fn csv_has_the_pinned_columns() {
        let report = run_scenario(&two_point_spec()).unwrap();
        let csv = report.to_csv();
        let header = csv
            .lines()
            .find(|l| !l.starts_with('#'))
            .unwrap();
        assert_eq!(
            header,
            "index,n,base_gh_lower,base_gh_upper,net_gh_upper,dirac_hausdorff,dev_theta,dev_psi,lift_eps_tilde"
        );
    }
}
