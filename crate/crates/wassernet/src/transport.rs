//! Discrete probability measures and exact optimal transport.
//!
//! [`wp_distance`] solves the transportation linear program to optimality on
//! the support of the two measures, so the returned value is the global
//! minimum of `(sum pi[i][j] d(i,j)^p)^(1/p)` over all couplings. Optimal
//! plans are vertices of the transport polytope and need not be unique;
//! callers must only rely on the value and on marginal feasibility.

use crate::approx::PointMap;
use crate::error::{Error, Result};
use crate::metric::SharedSpace;
use crate::simplex::solve_transport;
use crate::tol;

/// A probability measure on a finite metric space: nonnegative weights
/// summing to one.
#[derive(Debug, Clone, PartialEq)]
pub struct DiscreteMeasure {
    space: SharedSpace,
    w: Vec<f64>,
}

impl DiscreteMeasure {
    pub fn new(space: SharedSpace, w: Vec<f64>) -> Result<Self> {
        if w.len() != space.n() {
            return Err(Error::InvalidMeasure {
                reason: format!("{} weights on a space with {} points", w.len(), space.n()),
            });
        }
        for (i, &wi) in w.iter().enumerate() {
            if !wi.is_finite() || wi < 0.0 {
                return Err(Error::InvalidMeasure {
                    reason: format!("weight {wi} at index {i}"),
                });
            }
        }
        let total: f64 = w.iter().sum();
        if (total - 1.0).abs() > tol::MASS {
            return Err(Error::InvalidMeasure {
                reason: format!("total mass {total} is not 1"),
            });
        }
        Ok(DiscreteMeasure { space, w })
    }

    /// Unit mass at one point.
    pub fn dirac(space: SharedSpace, i: usize) -> Result<Self> {
        if i >= space.n() {
            return Err(Error::IndexOutOfRange {
                index: i,
                n: space.n(),
            });
        }
        let mut w = vec![0.0; space.n()];
        w[i] = 1.0;
        Ok(DiscreteMeasure { space, w })
    }

    pub fn uniform(space: SharedSpace) -> Self {
        let n = space.n();
        DiscreteMeasure {
            w: vec![1.0 / n as f64; n],
            space,
        }
    }

    pub fn space(&self) -> &SharedSpace {
        &self.space
    }

    pub fn weights(&self) -> &[f64] {
        &self.w
    }

    /// Convex combination `t * self + (1 - t) * other`.
    pub fn mix(&self, other: &DiscreteMeasure, t: f64) -> Result<DiscreteMeasure> {
        if **other.space() != **self.space() {
            return Err(Error::MismatchedSpaces);
        }
        let w = self
            .w
            .iter()
            .zip(&other.w)
            .map(|(a, b)| t * a + (1.0 - t) * b)
            .collect();
        DiscreteMeasure::new(self.space.clone(), w)
    }
}

/// Convenience constructor mirroring the measure-level Dirac embedding.
pub fn dirac(space: &SharedSpace, i: usize) -> Result<DiscreteMeasure> {
    DiscreteMeasure::dirac(space.clone(), i)
}

/// Image measure under a map: `w_Y[j] = sum of w_X[i] over f(i) = j`.
/// Mass is preserved exactly because weights are only ever added.
pub fn pushforward(f: &PointMap, mu: &DiscreteMeasure) -> Result<DiscreteMeasure> {
    if **mu.space() != **f.source() {
        return Err(Error::MismatchedSpaces);
    }
    let mut w = vec![0.0; f.target().n()];
    for (i, &wi) in mu.weights().iter().enumerate() {
        w[f.apply(i)] += wi;
    }
    Ok(DiscreteMeasure {
        space: f.target().clone(),
        w,
    })
}

/// A transport plan between two measures on the same space: a matrix with
/// prescribed row and column sums.
#[derive(Debug, Clone)]
pub struct Coupling {
    source: DiscreteMeasure,
    target: DiscreteMeasure,
    pi: Vec<f64>,
}

impl Coupling {
    pub fn new(source: DiscreteMeasure, target: DiscreteMeasure, pi: Vec<f64>) -> Result<Self> {
        let n = source.space().n();
        let m = target.space().n();
        if pi.len() != n * m {
            return Err(Error::InvalidMeasure {
                reason: format!("plan has {} entries, expected {}", pi.len(), n * m),
            });
        }
        let coupling = Coupling { source, target, pi };
        coupling.check_marginals()?;
        Ok(coupling)
    }

    fn check_marginals(&self) -> Result<()> {
        let n = self.source.space().n();
        let m = self.target.space().n();
        for i in 0..n {
            let row: f64 = (0..m).map(|j| self.pi[i * m + j]).sum();
            if (row - self.source.weights()[i]).abs() > tol::MASS {
                return Err(Error::InvalidMeasure {
                    reason: format!("row {i} sums to {row}"),
                });
            }
        }
        for j in 0..m {
            let col: f64 = (0..n).map(|i| self.pi[i * m + j]).sum();
            if (col - self.target.weights()[j]).abs() > tol::MASS {
                return Err(Error::InvalidMeasure {
                    reason: format!("column {j} sums to {col}"),
                });
            }
        }
        Ok(())
    }

    pub fn source(&self) -> &DiscreteMeasure {
        &self.source
    }

    pub fn target(&self) -> &DiscreteMeasure {
        &self.target
    }

    #[inline]
    pub fn mass(&self, i: usize, j: usize) -> f64 {
        self.pi[i * self.target.space().n() + j]
    }

    /// Transport cost `sum pi[i][j] * d(i,j)^p` under this plan.
    pub fn cost(&self, p: f64) -> f64 {
        let space = self.source.space();
        let m = self.target.space().n();
        let mut total = 0.0;
        for i in 0..space.n() {
            for j in 0..m {
                let mass = self.pi[i * m + j];
                if mass > 0.0 {
                    total += mass * pow_dist(space.dist(i, j), p);
                }
            }
        }
        total
    }
}

#[inline]
fn pow_dist(d: f64, p: f64) -> f64 {
    if p == 2.0 {
        d * d
    } else if p == 1.0 {
        d
    } else {
        d.powf(p)
    }
}

/// Exact `L^p`-Wasserstein distance between two measures on one space,
/// together with an optimal plan.
pub fn wp_distance(
    mu: &DiscreteMeasure,
    nu: &DiscreteMeasure,
    p: f64,
) -> Result<(f64, Coupling)> {
    if **mu.space() != **nu.space() {
        return Err(Error::MismatchedSpaces);
    }
    if !(p >= 1.0) {
        return Err(Error::InvalidExponent { p });
    }
    let space = mu.space();
    let n = space.n();

    let src: Vec<usize> = (0..n).filter(|&i| mu.weights()[i] > 0.0).collect();
    let dst: Vec<usize> = (0..n).filter(|&j| nu.weights()[j] > 0.0).collect();
    let supply: Vec<f64> = src.iter().map(|&i| mu.weights()[i]).collect();
    let demand: Vec<f64> = dst.iter().map(|&j| nu.weights()[j]).collect();
    let mut cost = Vec::with_capacity(src.len() * dst.len());
    for &i in &src {
        for &j in &dst {
            cost.push(pow_dist(space.dist(i, j), p));
        }
    }

    let sol = solve_transport(&supply, &demand, &cost);
    let mut pi = vec![0.0; n * n];
    for &(a, b, flow) in &sol.flows {
        pi[src[a] * n + dst[b]] += flow;
    }
    let value = sol.cost.max(0.0).powf(1.0 / p);
    let plan = Coupling::new(mu.clone(), nu.clone(), pi)?;
    Ok((value, plan))
}

/// `wp_distance` at the default exponent p = 2.
pub fn w2_distance(mu: &DiscreteMeasure, nu: &DiscreteMeasure) -> Result<(f64, Coupling)> {
    wp_distance(mu, nu, 2.0)
}
