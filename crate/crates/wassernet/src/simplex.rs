//! Network simplex for the balanced transportation problem.
//!
//! Minimizes `sum c[i][j] x[i][j]` subject to row sums `supply`, column sums
//! `demand`, `x >= 0`, on the complete bipartite graph. The basis is a
//! spanning tree of `ns + nd - 1` arcs, seeded with the northwest-corner
//! rule. Entering arcs are chosen by Bland's rule (first arc in row-major
//! order with negative reduced cost), which keeps pivoting deterministic and
//! avoids cycling on degenerate bases; instances here are small enough that
//! the slower pricing does not matter.

#[derive(Debug, Clone)]
pub(crate) struct TransportSolution {
    /// Optimal objective value `sum flow * cost`.
    pub cost: f64,
    /// Basic flows as `(row, col, amount)`; zero amounts may appear on
    /// degenerate basic arcs.
    pub flows: Vec<(usize, usize, f64)>,
}

struct Basis {
    arc_row: Vec<usize>,
    arc_col: Vec<usize>,
    arc_flow: Vec<f64>,
    ns: usize,
    nd: usize,
}

impl Basis {
    fn northwest(supply: &[f64], demand: &[f64]) -> Basis {
        let ns = supply.len();
        let nd = demand.len();
        let mut arc_row = Vec::with_capacity(ns + nd - 1);
        let mut arc_col = Vec::with_capacity(ns + nd - 1);
        let mut arc_flow = Vec::with_capacity(ns + nd - 1);
        let (mut i, mut j) = (0usize, 0usize);
        let mut remaining_supply = supply[0];
        let mut remaining_demand = demand[0];
        loop {
            let t = remaining_supply.min(remaining_demand);
            arc_row.push(i);
            arc_col.push(j);
            arc_flow.push(t);
            remaining_supply -= t;
            remaining_demand -= t;
            if i == ns - 1 && j == nd - 1 {
                break;
            }
            if (remaining_supply <= 0.0 && i < ns - 1) || j == nd - 1 {
                i += 1;
                remaining_supply = supply[i];
            } else {
                j += 1;
                remaining_demand = demand[j];
            }
        }
        Basis {
            arc_row,
            arc_col,
            arc_flow,
            ns,
            nd,
        }
    }

    /// Adjacency of the basis tree: node 0..ns are rows, ns..ns+nd columns.
    fn adjacency(&self) -> Vec<Vec<(usize, usize)>> {
        let mut adj = vec![Vec::new(); self.ns + self.nd];
        for a in 0..self.arc_row.len() {
            let r = self.arc_row[a];
            let c = self.ns + self.arc_col[a];
            adj[r].push((a, c));
            adj[c].push((a, r));
        }
        adj
    }

    /// Node potentials: `u[i] + v[j] = c[i][j]` on basic arcs, `u[0] = 0`.
    fn potentials(&self, cost: &[f64]) -> (Vec<f64>, Vec<f64>) {
        let adj = self.adjacency();
        let mut u = vec![0.0; self.ns];
        let mut v = vec![0.0; self.nd];
        let mut seen = vec![false; self.ns + self.nd];
        let mut stack = vec![0usize];
        seen[0] = true;
        while let Some(node) = stack.pop() {
            for &(a, other) in &adj[node] {
                if seen[other] {
                    continue;
                }
                seen[other] = true;
                let (r, c) = (self.arc_row[a], self.arc_col[a]);
                if other >= self.ns {
                    v[c] = cost[r * self.nd + c] - u[r];
                } else {
                    u[r] = cost[r * self.nd + c] - v[c];
                }
                stack.push(other);
            }
        }
        (u, v)
    }

    /// Tree path from row node `i` to column node `j` as a list of arc ids
    /// in traversal order.
    fn path(&self, i: usize, j: usize) -> Vec<usize> {
        let adj = self.adjacency();
        let start = i;
        let goal = self.ns + j;
        let mut parent: Vec<Option<(usize, usize)>> = vec![None; self.ns + self.nd];
        let mut seen = vec![false; self.ns + self.nd];
        seen[start] = true;
        let mut queue = std::collections::VecDeque::from([start]);
        while let Some(node) = queue.pop_front() {
            if node == goal {
                break;
            }
            for &(a, other) in &adj[node] {
                if !seen[other] {
                    seen[other] = true;
                    parent[other] = Some((a, node));
                    queue.push_back(other);
                }
            }
        }
        let mut arcs = Vec::new();
        let mut node = goal;
        while node != start {
            let (a, prev) = parent[node].expect("basis tree is connected");
            arcs.push(a);
            node = prev;
        }
        arcs.reverse();
        arcs
    }
}

/// Solve the balanced transportation problem exactly (up to float rounding).
/// `cost` is row-major `ns x nd`. Supplies and demands must be nonnegative
/// with equal totals; zero entries are allowed.
pub(crate) fn solve_transport(supply: &[f64], demand: &[f64], cost: &[f64]) -> TransportSolution {
    let ns = supply.len();
    let nd = demand.len();
    assert!(ns >= 1 && nd >= 1, "transport problem needs both sides");
    assert_eq!(cost.len(), ns * nd);

    let mut basis = Basis::northwest(supply, demand);
    let max_cost = cost.iter().cloned().fold(0.0, f64::max);
    let enter_tol = 1e-12 * (1.0 + max_cost);
    let pivot_cap = 10_000 + 50 * ns * nd;

    for _ in 0..pivot_cap {
        let (u, v) = basis.potentials(cost);
        // Bland's rule: first arc with negative reduced cost
        let mut entering: Option<(usize, usize)> = None;
        'scan: for i in 0..ns {
            for j in 0..nd {
                if cost[i * nd + j] - u[i] - v[j] < -enter_tol {
                    entering = Some((i, j));
                    break 'scan;
                }
            }
        }
        let Some((ei, ej)) = entering else {
            break;
        };

        // The cycle is the entering arc plus the tree path between its
        // endpoints; arcs at even positions along the path lose flow.
        let path = basis.path(ei, ej);
        let mut delta = f64::INFINITY;
        let mut leaving = usize::MAX;
        for (pos, &a) in path.iter().enumerate() {
            if pos % 2 == 0 && basis.arc_flow[a] < delta {
                delta = basis.arc_flow[a];
                leaving = a;
            }
        }
        for (pos, &a) in path.iter().enumerate() {
            if pos % 2 == 0 {
                basis.arc_flow[a] -= delta;
            } else {
                basis.arc_flow[a] += delta;
            }
        }
        basis.arc_row[leaving] = ei;
        basis.arc_col[leaving] = ej;
        basis.arc_flow[leaving] = delta;
    }

    let mut total = 0.0;
    for a in 0..basis.arc_row.len() {
        total += basis.arc_flow[a] * cost[basis.arc_row[a] * nd + basis.arc_col[a]];
    }
    TransportSolution {
        cost: total,
        flows: (0..basis.arc_row.len())
            .map(|a| (basis.arc_row[a], basis.arc_col[a], basis.arc_flow[a]))
            .collect(),
    }
}
