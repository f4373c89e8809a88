//! Approximations of metric pairs: deriving a subset-level map from a
//! pair-level one by nearest-point selection, and gluing the two back into
//! a single map on the total space.
//!
//! The derived map carries a 3-epsilon certificate and the glued map a
//! 2-epsilon distortion certificate; both constants are measured, not
//! assumed, and the randomized suites confirm them on every instance.

use crate::approx::{certify, ApproxCertificate, PointMap};
use crate::error::{Error, Precondition, Result};
use crate::metric::{hausdorff_distance, MetricPair};
use crate::tol;

/// `max_{a in A_X} d_Y(f(a), g(a))`, with `g` given on the subset spaces.
pub fn closeness(
    f: &PointMap,
    g: &PointMap,
    pair_x: &MetricPair,
    pair_y: &MetricPair,
) -> Result<f64> {
    check_pair_map(f, g, pair_x, pair_y)?;
    let y = f.target();
    let mut worst = 0.0f64;
    for (local, &a) in pair_x.subset().iter().enumerate() {
        let fa = f.apply(a);
        let ga = pair_y.to_global(g.apply(local));
        worst = worst.max(y.dist(fa, ga));
    }
    Ok(worst)
}

fn check_pair_map(
    f: &PointMap,
    g: &PointMap,
    pair_x: &MetricPair,
    pair_y: &MetricPair,
) -> Result<()> {
    if **f.source() != **pair_x.space() || **f.target() != **pair_y.space() {
        return Err(Error::MismatchedSpaces);
    }
    if **g.source() != **pair_x.subspace() || **g.target() != **pair_y.subspace()
    {
        return Err(Error::MismatchedSpaces);
    }
    Ok(())
}

/// A pair-level approximation bundle: a map on total spaces, a map on the
/// distinguished subsets, and how far apart they are on the subset.
#[derive(Debug, Clone)]
pub struct PairApprox {
    pub f: PointMap,
    pub g: PointMap,
    pub pair_x: MetricPair,
    pub pair_y: MetricPair,
    pub epsilon: f64,
    pub closeness: f64,
    pub valid: bool,
}

impl PairApprox {
    pub fn new(
        f: PointMap,
        g: PointMap,
        pair_x: MetricPair,
        pair_y: MetricPair,
        epsilon: f64,
    ) -> Result<Self> {
        let close = closeness(&f, &g, &pair_x, &pair_y)?;
        let valid = certify(&f, epsilon).valid
            && certify(&g, epsilon).valid
            && close <= epsilon + tol::CERT;
        Ok(PairApprox {
            f,
            g,
            pair_x,
            pair_y,
            epsilon,
            closeness: close,
            valid,
        })
    }
}

/// From a pair-level approximation `f` with `d_H(f(A_X), A_Y) <= epsilon`,
/// select for every subset point the nearest point of `A_Y` (ties to the
/// lowest index). The result maps the subset spaces and certifies at
/// 3 epsilon.
pub fn derive_subset_approx(
    f: &PointMap,
    pair_x: &MetricPair,
    pair_y: &MetricPair,
    epsilon: f64,
) -> Result<(PointMap, ApproxCertificate)> {
    if **f.source() != **pair_x.space() || **f.target() != **pair_y.space() {
        return Err(Error::MismatchedSpaces);
    }
    let cert_f = certify(f, epsilon);
    if !cert_f.valid {
        return Err(Error::PreconditionFailed(Precondition::NotCertified {
            distortion: cert_f.distortion,
            defect: cert_f.defect,
            epsilon,
        }));
    }
    let y = f.target();
    let image_of_subset: Vec<usize> = pair_x.subset().iter().map(|&a| f.apply(a)).collect();
    let measured = hausdorff_distance(y, &image_of_subset, pair_y.subset())?;
    if measured > epsilon + tol::CERT {
        return Err(Error::PreconditionFailed(Precondition::HausdorffTooLarge {
            measured,
            epsilon,
        }));
    }

    let image = image_of_subset
        .iter()
        .map(|&fa| {
            let mut best_local = 0usize;
            let mut best = f64::INFINITY;
            for (local, &b) in pair_y.subset().iter().enumerate() {
                let d = y.dist(fa, b);
                if d < best {
                    best = d;
                    best_local = local;
                }
            }
            best_local
        })
        .collect();
    let g = PointMap::new(pair_x.subspace().clone(), pair_y.subspace().clone(), image)?;
    let cert = certify(&g, 3.0 * epsilon);
    Ok((g, cert))
}

/// Glue a total-space map and a subset map into one map on the total space:
/// `xi(x) = g(x)` on the subset, `f(x)` elsewhere. Requires both maps to
/// certify at epsilon and to be epsilon-close on the subset; the glued map
/// certifies at 2 epsilon (mixed pairs pay for one switch between f and g).
pub fn glue_pair_approx(
    f: &PointMap,
    g: &PointMap,
    pair_x: &MetricPair,
    pair_y: &MetricPair,
    epsilon: f64,
) -> Result<(PointMap, ApproxCertificate)> {
    check_pair_map(f, g, pair_x, pair_y)?;
    for (map, name) in [(f, "f"), (g, "g")] {
        let cert = certify(map, epsilon);
        if !cert.valid {
            let _ = name;
            return Err(Error::PreconditionFailed(Precondition::NotCertified {
                distortion: cert.distortion,
                defect: cert.defect,
                epsilon,
            }));
        }
    }
    let close = closeness(f, g, pair_x, pair_y)?;
    if close > epsilon + tol::CERT {
        return Err(Error::PreconditionFailed(Precondition::NotClose {
            measured: close,
            epsilon,
        }));
    }

    let image = (0..f.source().n())
        .map(|x| match pair_x.to_local(x) {
            Some(local) => pair_y.to_global(g.apply(local)),
            None => f.apply(x),
        })
        .collect();
    let xi = PointMap::new(f.source().clone(), f.target().clone(), image)?;
    let cert = certify(&xi, 2.0 * epsilon);
    Ok((xi, cert))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::approx::{distortion, surjectivity_defect};
    use crate::metric::validate_metric;
    use std::sync::Arc;

    fn four_cycle() -> crate::metric::SharedSpace {
        Arc::new(
            validate_metric(&[
                vec![0.0, 1.0, 2.0, 1.0],
                vec![1.0, 0.0, 1.0, 2.0],
                vec![2.0, 1.0, 0.0, 1.0],
                vec![1.0, 2.0, 1.0, 0.0],
            ])
            .unwrap(),
        )
    }

    #[test]
    fn full_subsets_reduce_derive_to_the_original_map() {
        let x = four_cycle();
        let pair_x = MetricPair::new(x.clone(), (0..4).collect()).unwrap();
        let pair_y = pair_x.clone();
        let f = PointMap::identity(x);
        let (g, cert) = derive_subset_approx(&f, &pair_x, &pair_y, 0.0).unwrap();
        assert_eq!(g.image(), f.image());
        assert_eq!(cert.measured(), 0.0);
        assert!(cert.valid);
    }

    #[test]
    fn singleton_subsets_on_two_points() {
        let x = Arc::new(validate_metric(&[vec![0.0, 1.0], vec![1.0, 0.0]]).unwrap());
        let pair = MetricPair::new(x.clone(), vec![0]).unwrap();
        let f = PointMap::identity(x);
        let (g, cert) = derive_subset_approx(&f, &pair, &pair, 0.0).unwrap();
        assert_eq!(g.image(), &[0]);
        assert_eq!(cert.measured(), 0.0);
    }

    #[test]
    fn hausdorff_precondition_is_enforced() {
        let x = four_cycle();
        let pair_x = MetricPair::new(x.clone(), vec![0]).unwrap();
        let pair_y = MetricPair::new(x.clone(), vec![2]).unwrap();
        let f = PointMap::identity(x);
        // f is a 0-approximation but f(A_X) = {0} is at distance 2 from {2}
        let err = derive_subset_approx(&f, &pair_x, &pair_y, 0.0).unwrap_err();
        match err {
            Error::PreconditionFailed(Precondition::HausdorffTooLarge { measured, .. }) => {
                assert_eq!(measured, 2.0)
            }
            other => panic!("unexpected error {other:?}"),
        }
    }

    #[test]
    fn glue_restores_f_when_g_is_its_restriction() {
        let x = four_cycle();
        let pair = MetricPair::new(x.clone(), vec![1, 3]).unwrap();
        let f = PointMap::identity(x);
        let (g, _) = derive_subset_approx(&f, &pair, &pair, 0.0).unwrap();
        let (xi, cert) = glue_pair_approx(&f, &g, &pair, &pair, 0.0).unwrap();
        assert_eq!(xi.image(), f.image());
        assert_eq!(cert.measured(), 0.0);
        assert!(cert.valid);
    }

    #[test]
    fn glue_rejects_maps_that_are_not_close() {
        let x = four_cycle();
        let pair = MetricPair::new(x.clone(), vec![0, 2]).unwrap();
        let f = PointMap::identity(x.clone());
        // g swaps the two subset points: closeness 2 > epsilon
        let g = PointMap::new(
            pair.subspace().clone(),
            pair.subspace().clone(),
            vec![1, 0],
        )
        .unwrap();
        let err = glue_pair_approx(&f, &g, &pair, &pair, 0.5).unwrap_err();
        assert!(matches!(
            err,
            Error::PreconditionFailed(Precondition::NotClose { .. })
        ));
    }

    #[test]
    fn glued_map_uses_g_on_the_subset_and_f_elsewhere() {
        let x = four_cycle();
        let pair = MetricPair::new(x.clone(), vec![0, 2]).unwrap();
        // rotate by two: an isometry, so it certifies at any epsilon
        let f = PointMap::new(x.clone(), x.clone(), vec![2, 3, 0, 1]).unwrap();
        let (g, _) = derive_subset_approx(&f, &pair, &pair, 0.0).unwrap();
        let (xi, _) = glue_pair_approx(&f, &g, &pair, &pair, 0.0).unwrap();
        for i in 0..4 {
            match pair.to_local(i) {
                Some(local) => assert_eq!(xi.apply(i), pair.to_global(g.apply(local))),
                None => assert_eq!(xi.apply(i), f.apply(i)),
            }
        }
        let m = distortion(&xi).max(surjectivity_defect(&xi));
        assert_eq!(m, 0.0);
    }

    #[test]
    fn pair_approx_bundle_records_closeness_and_validity() {
        let x = four_cycle();
        let pair = MetricPair::new(x.clone(), vec![1, 3]).unwrap();
        let f = PointMap::identity(x);
        let (g, _) = derive_subset_approx(&f, &pair, &pair, 0.0).unwrap();
        let bundle = PairApprox::new(f, g, pair.clone(), pair, 0.0).unwrap();
        assert_eq!(bundle.closeness, 0.0);
        assert!(bundle.valid);
    }
}
