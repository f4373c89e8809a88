//! Finite nets of the Wasserstein space over a base space, and the
//! pushforward lift of approximations with its quantitative certificate.
//!
//! A net at resolution `m` consists of every probability measure whose
//! weights are multiples of `1/m`; there are `C(m+n-1, n-1)` of them and the
//! first `n` are the Dirac deltas in point order. The pairwise 2-Wasserstein
//! matrix of the atoms is itself a validated [`FiniteMetricSpace`], so all
//! map machinery (distortion, defect, certificates) applies verbatim on the
//! net.
//!
//! Pushing a grid measure forward along a map lands on the grid again, so
//! the lifted map is exact: no projection error enters the distortion side
//! of the certificate.

use std::collections::HashMap;
use std::sync::Arc;

use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use crate::approx::{certify, ApproxCertificate, PointMap};
use crate::error::{Error, Precondition, Result};
use crate::metric::{hausdorff_distance, validate_metric_with, SharedSpace};
use crate::transport::{w2_distance, DiscreteMeasure};
use crate::tol;

/// Default cap on the atom count of a net.
pub const DEFAULT_NET_CAP: usize = 5000;

/// The grid net over the Wasserstein space of a base space.
#[derive(Debug, Clone)]
pub struct P2Net {
    base: SharedSpace,
    m: u32,
    atoms: Vec<Vec<u32>>,
    index: HashMap<Vec<u32>, usize>,
    metric: SharedSpace,
}

impl P2Net {
    pub fn base(&self) -> &SharedSpace {
        &self.base
    }

    pub fn resolution(&self) -> u32 {
        self.m
    }

    pub fn len(&self) -> usize {
        self.atoms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.atoms.is_empty()
    }

    /// Integer weight numerators of an atom (entries sum to `m`).
    pub fn atom_counts(&self, idx: usize) -> &[u32] {
        &self.atoms[idx]
    }

    /// The atom as a measure on the base space.
    pub fn atom_measure(&self, idx: usize) -> DiscreteMeasure {
        let w = self.atoms[idx]
            .iter()
            .map(|&k| k as f64 / self.m as f64)
            .collect();
        DiscreteMeasure::new(self.base.clone(), w).expect("net atoms are valid measures")
    }

    pub fn atom_index(&self, counts: &[u32]) -> Option<usize> {
        self.index.get(counts).copied()
    }

    /// Net index of the Dirac delta at base point `i` (Diracs come first).
    pub fn dirac_index(&self, i: usize) -> usize {
        debug_assert!(i < self.base.n());
        i
    }

    /// The net's own metric space: `d(a, b) = W_2(atom_a, atom_b)`.
    pub fn metric(&self) -> &SharedSpace {
        &self.metric
    }

    /// Where a base map sends an atom: the exact pushforward on counts.
    pub fn push_atom(&self, f: &PointMap, idx: usize, target: &P2Net) -> Result<usize> {
        if **f.source() != *self.base || **f.target() != *target.base {
            return Err(Error::MismatchedSpaces);
        }
        if self.m != target.m {
            return Err(Error::ResolutionMismatch {
                left: self.m,
                right: target.m,
            });
        }
        let mut counts = vec![0u32; target.base.n()];
        for (p, &k) in self.atoms[idx].iter().enumerate() {
            counts[f.apply(p)] += k;
        }
        Ok(target
            .atom_index(&counts)
            .expect("pushforward of a grid measure stays on the grid"))
    }
}

fn binomial(n: u64, k: u64) -> u128 {
    let k = k.min(n - k);
    let mut out: u128 = 1;
    for i in 0..k {
        out = out.saturating_mul((n - i) as u128) / (i as u128 + 1);
    }
    out
}

/// All count vectors of length `n` summing to `m`, Diracs first (in point
/// order), the rest in lexicographic order.
fn enumerate_atoms(n: usize, m: u32) -> Vec<Vec<u32>> {
    let mut atoms: Vec<Vec<u32>> = (0..n)
        .map(|i| {
            let mut counts = vec![0u32; n];
            counts[i] = m;
            counts
        })
        .collect();
    let mut rest = Vec::new();
    let mut current = vec![0u32; n];
    fn fill(pos: usize, left: u32, current: &mut Vec<u32>, rest: &mut Vec<Vec<u32>>) {
        if pos == current.len() - 1 {
            current[pos] = left;
            rest.push(current.clone());
            current[pos] = 0;
            return;
        }
        for k in 0..=left {
            current[pos] = k;
            fill(pos + 1, left - k, current, rest);
        }
        current[pos] = 0;
    }
    fill(0, m, &mut current, &mut rest);
    // drop the Diracs from the lexicographic block; they are already placed
    rest.retain(|counts| !counts.iter().any(|&k| k == m));
    atoms.extend(rest);
    atoms
}

/// Build the full net at resolution `m` with the default atom cap.
pub fn build_p2_net(base: &SharedSpace, m: u32) -> Result<P2Net> {
    build_p2_net_capped(base, m, DEFAULT_NET_CAP)
}

/// Build the full net at resolution `m`; the `W_2` matrix is computed with
/// the exact solver (pairs in parallel) and then validated as a metric.
pub fn build_p2_net_capped(base: &SharedSpace, m: u32, cap: usize) -> Result<P2Net> {
    if m < 1 {
        return Err(Error::InvalidScenario {
            reason: "net resolution must be at least 1".into(),
        });
    }
    let n = base.n();
    let count = binomial(m as u64 + n as u64 - 1, n as u64 - 1);
    if count > cap as u128 {
        return Err(Error::TooLarge {
            size: count.min(usize::MAX as u128) as usize,
            cap,
        });
    }

    let atoms = enumerate_atoms(n, m);
    debug_assert_eq!(atoms.len() as u128, count);
    let index: HashMap<Vec<u32>, usize> = atoms
        .iter()
        .enumerate()
        .map(|(i, a)| (a.clone(), i))
        .collect();

    let measures: Vec<DiscreteMeasure> = (0..atoms.len())
        .map(|i| {
            let w = atoms[i].iter().map(|&k| k as f64 / m as f64).collect();
            DiscreteMeasure::new(base.clone(), w).expect("grid weights are a valid measure")
        })
        .collect();

    let a = atoms.len();
    let pairs: Vec<(usize, usize)> = (0..a)
        .flat_map(|i| ((i + 1)..a).map(move |j| (i, j)))
        .collect();
    let entries: Vec<((usize, usize), f64)> = pairs
        .par_iter()
        .map(|&(i, j)| {
            let (v, _) = w2_distance(&measures[i], &measures[j])
                .expect("atoms share the base space");
            ((i, j), v)
        })
        .collect();

    let mut rows = vec![vec![0.0; a]; a];
    for ((i, j), v) in entries {
        rows[i][j] = v;
        rows[j][i] = v;
    }
    let metric = Arc::new(validate_metric_with(&rows, None, tol::METRIC)?);

    Ok(P2Net {
        base: base.clone(),
        m,
        atoms,
        index,
        metric,
    })
}

/// Density report for a net: the measured covering radius over sampled
/// random measures, and the a-priori bound `diam(X) * sqrt(n / (2m))`
/// obtained from rounding the weights (total variation at most `n/(2m)`,
/// and `W_2^2 <= diam^2 * TV`).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct NetDensity {
    pub measured: f64,
    pub a_priori_bound: f64,
}

/// Estimate how dense the net is: max over sampled measures of the `W_2`
/// distance to the nearest atom. Sampling is uniform on the simplex
/// (normalized exponentials), seeded for reproducibility.
pub fn net_density(net: &P2Net, samples: usize, seed: u64) -> Result<NetDensity> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let n = net.base().n();
    let mut measured = 0.0f64;
    for _ in 0..samples {
        let mut w: Vec<f64> = (0..n)
            .map(|_| -(1.0 - rng.gen::<f64>()).ln())
            .collect();
        let total: f64 = w.iter().sum();
        for wi in &mut w {
            *wi /= total;
        }
        let mu = DiscreteMeasure::new(net.base().clone(), w)?;
        let nearest = (0..net.len())
            .map(|idx| {
                let (v, _) = w2_distance(&mu, &net.atom_measure(idx))
                    .expect("sampled measure shares the base space");
                v
            })
            .fold(f64::INFINITY, f64::min);
        measured = measured.max(nearest);
    }
    let a_priori = net.base().diameter() * (n as f64 / (2.0 * net.resolution() as f64)).sqrt();
    Ok(NetDensity {
        measured,
        a_priori_bound: a_priori,
    })
}

/// The lift certificate radius: `6 eps + sqrt(eps (2 diam_Y + eps))`.
pub fn epsilon_tilde(epsilon: f64, diam_y: f64) -> f64 {
    6.0 * epsilon + (epsilon * (2.0 * diam_y + epsilon)).sqrt()
}

/// A lifted approximation between nets.
#[derive(Debug, Clone)]
pub struct Lift {
    /// The lifted map on net atoms (a map between the net metric spaces).
    pub map: PointMap,
    /// Measured distortion and defect of the lifted map against the claimed
    /// epsilon-tilde.
    pub certificate: ApproxCertificate,
    pub epsilon_tilde: f64,
}

/// Lift a certified base approximation to the nets by pushing atoms forward.
///
/// `F(mu) = f_# mu` exactly (grid measures stay on the grid), and the
/// claimed radius is `epsilon_tilde(epsilon, diam Y)`.
pub fn lift_approximation(
    f: &PointMap,
    epsilon: f64,
    net_x: &P2Net,
    net_y: &P2Net,
) -> Result<Lift> {
    let cert = certify(f, epsilon);
    if !cert.valid {
        return Err(Error::PreconditionFailed(Precondition::NotCertified {
            distortion: cert.distortion,
            defect: cert.defect,
            epsilon,
        }));
    }
    let image = (0..net_x.len())
        .map(|idx| net_x.push_atom(f, idx, net_y))
        .collect::<Result<Vec<usize>>>()?;
    let map = PointMap::new(net_x.metric().clone(), net_y.metric().clone(), image)?;
    let tilde = epsilon_tilde(epsilon, f.target().diameter());
    let certificate = certify(&map, tilde);
    Ok(Lift {
        map,
        certificate,
        epsilon_tilde: tilde,
    })
}

/// Max deviation between the net metric on Dirac atoms and the base metric:
/// `max_{i,j} |W_2(delta_i, delta_j) - d(i, j)|`. The Dirac embedding is
/// isometric, so this should vanish up to solver tolerance.
pub fn dirac_embedding_check(net: &P2Net) -> f64 {
    let n = net.base().n();
    let mut worst = 0.0f64;
    for i in 0..n {
        for j in (i + 1)..n {
            let dev = (net.metric().dist(net.dirac_index(i), net.dirac_index(j))
                - net.base().dist(i, j))
            .abs();
            worst = worst.max(dev);
        }
    }
    worst
}

/// Hausdorff distance, inside the target net, between the lifted image of
/// the source Dirac atoms and the target Dirac atoms. Since the lift sends
/// `delta_x` to `delta_f(x)`, this equals the surjectivity defect of `f` up
/// to solver tolerance.
pub fn lift_preserves_diracs_check(f: &PointMap, net_x: &P2Net, net_y: &P2Net) -> Result<f64> {
    let image: Vec<usize> = (0..net_x.base().n())
        .map(|i| net_x.push_atom(f, net_x.dirac_index(i), net_y))
        .collect::<Result<_>>()?;
    let dirac_atoms: Vec<usize> = (0..net_y.base().n()).map(|i| net_y.dirac_index(i)).collect();
    hausdorff_distance(net_y.metric(), &image, &dirac_atoms)
}

/// In-process cache of built nets, keyed by exact matrix content and
/// resolution. Rebuilding from equal inputs is bit-identical (the solver
/// pivots deterministically), so cached and fresh nets are interchangeable.
#[derive(Default)]
pub struct NetCache {
    inner: HashMap<(u32, usize, Vec<u64>), Arc<P2Net>>,
}

impl NetCache {
    pub fn new() -> Self {
        Self::default()
    }

    fn key(space: &SharedSpace, m: u32) -> (u32, usize, Vec<u64>) {
        let bits = space
            .rows()
            .iter()
            .flatten()
            .map(|d| d.to_bits())
            .collect();
        (m, space.n(), bits)
    }

    pub fn get_or_build(&mut self, space: &SharedSpace, m: u32, cap: usize) -> Result<Arc<P2Net>> {
        let key = Self::key(space, m);
        if let Some(net) = self.inner.get(&key) {
            return Ok(net.clone());
        }
        let net = Arc::new(build_p2_net_capped(space, m, cap)?);
        self.inner.insert(key, net.clone());
        Ok(net)
    }
}
