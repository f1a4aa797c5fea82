// SPDX-License-Identifier: Apache-2.0
//! Sequential reference implementations. They share no code with the engine.

use std::cmp::Reverse;
use std::collections::{BinaryHeap, VecDeque};

use ordered_float::OrderedFloat;

use crate::error::{AgmError, Result};
use crate::graph::{Graph, VertexId};

/// Binary-heap Dijkstra. Unreachable vertices are `inf`.
pub fn oracle_dijkstra(g: &Graph, source: VertexId) -> Result<Vec<f64>> {
    let n = g.vertex_count();
    if source.index() >= n {
        return Err(AgmError::Parameter(format!("source {source} out of range")));
    }
    if let Some(w) = g.weights().and_then(|ws| ws.iter().find(|w| w.is_nan() || **w < 0.0)) {
        return Err(AgmError::Parameter(format!("negative edge weight {w}")));
    }
    let mut dist = vec![f64::INFINITY; n];
    let mut heap = BinaryHeap::new();
    dist[source.index()] = 0.0;
    heap.push(Reverse((OrderedFloat(0.0), source.0)));
    while let Some(Reverse((OrderedFloat(d), v))) = heap.pop() {
        if d > dist[v as usize] {
            continue;
        }
        for (u, w) in g.out_edges(VertexId(v)) {
            let nd = d + w;
            if nd < dist[u.index()] {
                dist[u.index()] = nd;
                heap.push(Reverse((OrderedFloat(nd), u.0)));
            }
        }
    }
    Ok(dist)
}

/// Queue BFS hop counts. Unreachable vertices are `inf`.
pub fn oracle_bfs(g: &Graph, source: VertexId) -> Result<Vec<f64>> {
    let n = g.vertex_count();
    if source.index() >= n {
        return Err(AgmError::Parameter(format!("source {source} out of range")));
    }
    let mut level = vec![f64::INFINITY; n];
    let mut queue = VecDeque::from([source.0]);
    level[source.index()] = 0.0;
    while let Some(v) = queue.pop_front() {
        let next = level[v as usize] + 1.0;
        for &u in g.out_neighbors(VertexId(v)) {
            if level[u as usize].is_infinite() {
                level[u as usize] = next;
                queue.push_back(u);
            }
        }
    }
    Ok(level)
}

struct DisjointSet {
    parent: Vec<u32>,
}

impl DisjointSet {
    fn new(n: usize) -> Self {
        DisjointSet { parent: (0..n as u32).collect() }
    }

    fn find(&mut self, mut x: u32) -> u32 {
        while self.parent[x as usize] != x {
            let grand = self.parent[self.parent[x as usize] as usize];
            self.parent[x as usize] = grand;
            x = grand;
        }
        x
    }

    /// Links the larger root under the smaller one, so every root is its set's minimum.
    fn union(&mut self, a: u32, b: u32) {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra != rb {
            let (lo, hi) = if ra < rb { (ra, rb) } else { (rb, ra) };
            self.parent[hi as usize] = lo;
        }
    }
}

/// Union-find component labels; each label is the smallest id in its component.
pub fn oracle_components(g: &Graph) -> Result<Vec<u32>> {
    if g.is_directed() {
        return Err(AgmError::Parameter("connected components need an undirected graph".into()));
    }
    let n = g.vertex_count();
    let mut ds = DisjointSet::new(n);
    for (s, t, _) in g.edges() {
        ds.union(s, t);
    }
    Ok((0..n as u32).map(|v| ds.find(v)).collect())
}

/// Converged ranks and the number of sweeps it took.
#[derive(Debug, Clone, PartialEq)]
pub struct PowerIteration {
    pub ranks: Vec<f64>,
    pub sweeps: usize,
}

/// Jacobi iteration of `r(v) = (1 - alpha) + alpha * sum_{u -> v} r(u) / outdeg(u)`
/// from `r = 0`, stopping after the first sweep whose largest change is below `tol`.
/// Dangling vertices contribute nothing.
pub fn oracle_pagerank_power(g: &Graph, alpha: f64, tol: f64) -> Result<PowerIteration> {
    if !(alpha > 0.0 && alpha < 1.0) {
        return Err(AgmError::Parameter(format!("alpha {alpha} not in (0, 1)")));
    }
    if tol.is_nan() || tol <= 0.0 {
        return Err(AgmError::Parameter(format!("tolerance {tol} must be positive")));
    }
    let n = g.vertex_count();
    let share: Vec<f64> = (0..n as u32).map(|v| g.out_degree(VertexId(v)) as f64).collect();
    let mut cur = vec![0.0f64; n];
    let mut acc = vec![0.0f64; n];
    let mut sweeps = 0;
    loop {
        acc.iter_mut().for_each(|a| *a = 0.0);
        // push along out-edges, sources ascending
        for (s, t, _) in g.edges() {
            acc[t as usize] += cur[s as usize] / share[s as usize];
        }
        let mut change = 0.0f64;
        for v in 0..n {
            let next = (1.0 - alpha) + alpha * acc[v];
            change = change.max((next - cur[v]).abs());
            cur[v] = next;
        }
        sweeps += 1;
        if change < tol {
            return Ok(PowerIteration { ranks: cur, sweeps });
        }
    }
}
