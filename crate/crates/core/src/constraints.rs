//! Systems of integer difference constraints `x_u − x_v ≤ c`.
//!
//! Feasibility is decided with Bellman–Ford from an implicit source joined to
//! every node by a zero-weight edge: the system is feasible iff the
//! constraint graph has no negative cycle, and the resulting shortest-path
//! distances are a solution.

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
struct Edge {
    from: usize,
    to: usize,
    weight: i64,
}

#[derive(Debug, Clone, Default)]
pub struct DifferenceSystem {
    nodes: usize,
    edges: Vec<Edge>,
}

impl DifferenceSystem {
    pub fn new(nodes: usize) -> Self {
        Self {
            nodes,
            edges: Vec::new(),
        }
    }

    pub fn nodes(&self) -> usize {
        self.nodes
    }

    /// Adds `x_u − x_v ≤ bound`, stored as the edge `v → u` of that weight.
    pub fn add_constraint(&mut self, u: usize, v: usize, bound: i64) {
        assert!(u < self.nodes && v < self.nodes);
        self.edges.push(Edge {
            from: v,
            to: u,
            weight: bound,
        });
    }

    /// A solution, or `None` when the constraint graph has a negative cycle.
    pub fn solve(&self) -> Option<Vec<i64>> {
        let mut dist = vec![0i64; self.nodes];
        for _ in 0..=self.nodes {
            let mut changed = false;
            for e in &self.edges {
                let candidate = dist[e.from] + e.weight;
                if candidate < dist[e.to] {
                    dist[e.to] = candidate;
                    changed = true;
                }
            }
            if !changed {
                return Some(dist);
            }
        }
        None
    }

    pub fn is_feasible(&self) -> bool {
        self.solve().is_some()
    }

    pub fn is_satisfied_by(&self, x: &[i64]) -> bool {
        self.edges.iter().all(|e| x[e.to] - x[e.from] <= e.weight)
    }
}

/// Largest integer `d` with `a + n·d < 0`.
#[inline]
pub fn strict_upper_bound(a: i64, n: i64) -> i64 {
    debug_assert!(n > 0);
    (-a - 1).div_euclid(n)
}
