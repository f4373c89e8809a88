//! Finite metric spaces, exact discrete optimal transport, and certified
//! Gromov-Hausdorff approximation machinery, including finite nets of
//! Wasserstein spaces and equivariant lifts.
//!
//! The crate works entirely with finite data: spaces are validated distance
//! matrices, measures are weight vectors, and the 2-Wasserstein distance is
//! solved exactly as a transportation linear program. On top of that sit
//! quantitative constructions whose error certificates are measured, never
//! assumed:
//!
//! - [`metric`]: validated spaces, metric pairs, Hausdorff distance, and
//!   exhaustive isometry-group enumeration with the uniform metric.
//! - [`transport`]: discrete measures, couplings, pushforwards, and exact
//!   `W_p` with an optimal plan.
//! - [`approx`]: distortion/defect measurements, certificates, best-map
//!   search, and a brute-force GH distance via correspondences.
//! - [`pair`]: the two constructive directions for metric pairs (derive a
//!   subset map at 3-epsilon, glue back at 2-epsilon).
//! - [`net`]: grid nets of the Wasserstein space whose pairwise `W_2` matrix
//!   is itself a validated space, plus the pushforward lift with the
//!   `6 eps + sqrt(eps (2 diam + eps))` certificate.
//! - [`equivariant`]: quadruples of maps between spaces with group actions,
//!   pushforward groups on nets, almost-inverse checks, and the equivariant
//!   lift.
//! - [`scenario`]: convergent families (n-gons, two-point spaces, random
//!   perturbations) with per-index reports of base-level and net-level GH
//!   quantities.
//!
//! Each capability has a runnable demo under `examples/`; start with
//! `cargo run --example wasserstein_distance`. The thin `wassernet` binary
//! exposes the same operations as subcommands over JSON files.

pub mod approx;
pub mod equivariant;
pub mod error;
pub mod json;
pub mod metric;
pub mod net;
pub mod pair;
pub mod scenario;
mod simplex;
pub mod transport;

/// Shared absolute tolerances.
///
/// Distances are floating point throughout; axiom checks and certificate
/// comparisons never test for exact equality.
pub mod tol {
    /// Metric axiom checks (diagonal, symmetry, triangle inequality).
    pub const METRIC: f64 = 1e-9;
    /// Total-mass and marginal checks on measures and couplings.
    pub const MASS: f64 = 1e-9;
    /// Feasibility and optimality slack of the transport solver.
    pub const LP: f64 = 1e-9;
    /// Certificate comparisons (`measured <= claimed + CERT`).
    pub const CERT: f64 = 1e-7;
    /// Trend comparisons in scenario reports (non-increasing columns).
    pub const TREND: f64 = 1e-6;
}

pub use approx::{
    best_approx_search, best_approx_search_with, certify, distortion, gh_distance_bruteforce,
    gh_distance_bruteforce_capped, gh_upper_bound, surjectivity_defect, ApproxCertificate,
    Correspondence, PointMap, SearchMode,
};
pub use equivariant::{
    almost_inverse_check, certify_equivariant, certify_relative_equivariant, lift_equivariant,
    pushforward_group, EquivariantApprox, EquivariantLiftReport, EquivariantReport,
    RelativeEquivariantApprox, RelativeReport,
};
pub use error::{Error, Precondition, Result};
pub use metric::{
    enumerate_isometries, enumerate_isometries_capped, hausdorff_distance, metric_closure,
    uniform_group_distance, validate_metric, validate_metric_with, FiniteMetricSpace,
    IsometryGroup, MetricPair, Permutation, SharedSpace,
};
pub use net::{
    build_p2_net, build_p2_net_capped, dirac_embedding_check, epsilon_tilde, lift_approximation,
    lift_preserves_diracs_check, net_density, NetCache, NetDensity, Lift, P2Net,
};
pub use pair::{closeness, derive_subset_approx, glue_pair_approx, PairApprox};
pub use scenario::{
    run_equivariant_scenario, run_scenario, Family, GroupSpec, ScenarioReport, ScenarioRow,
    ScenarioSpec,
};
pub use transport::{dirac, pushforward, w2_distance, wp_distance, Coupling, DiscreteMeasure};
