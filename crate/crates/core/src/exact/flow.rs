//! Min-cost flow with arc lower bounds.
//!
//! Lower bounds are removed by the excess/deficit transformation: an arc
//! (u, v) with bounds [ℓ, c] becomes an arc of capacity c−ℓ, ℓ units of
//! demand move to the endpoints, and a super source/sink pair supplies
//! them. Successive shortest paths with node potentials then yields a
//! minimum-cost feasible flow; all arithmetic is integral, so flows are
//! integral by construction.

use std::cmp::Reverse;
use std::collections::BinaryHeap;

const INF: i64 = i64::MAX / 4;

#[derive(Clone, Debug)]
struct Arc {
    to: usize,
    rev: usize,
    cap: i64,
    cost: i64,
}

/// Handle returned by [`LowerBoundedFlow::add_arc`]; indexes into the
/// per-arc flows of the solution.
#[derive(Clone, Copy, Debug)]
pub struct ArcHandle(usize);

pub struct LowerBoundedFlow {
    graph: Vec<Vec<Arc>>,
    excess: Vec<i64>,
    arcs: Vec<(usize, usize, i64)>, // (node, arc index, lower)
}

pub struct FlowSolution {
    flows: Vec<i64>,
    pub cost: i64,
}

impl FlowSolution {
    pub fn flow(&self, handle: ArcHandle) -> i64 {
        self.flows[handle.0]
    }
}

impl LowerBoundedFlow {
    pub fn new(nodes: usize) -> Self {
        LowerBoundedFlow {
            graph: vec![Vec::new(); nodes],
            excess: vec![0; nodes],
            arcs: Vec::new(),
        }
    }

    /// Adds an arc with flow bounds [lower, cap] and nonnegative cost.
    pub fn add_arc(&mut self, from: usize, to: usize, lower: i64, cap: i64, cost: i64) -> ArcHandle {
        assert!(0 <= lower && lower <= cap, "bad bounds [{lower}, {cap}]");
        assert!(cost >= 0, "negative arc cost {cost}");
        let fwd = self.graph[from].len();
        let bwd = self.graph[to].len() + usize::from(from == to);
        self.graph[from].push(Arc { to, rev: bwd, cap: cap - lower, cost });
        self.graph[to].push(Arc { to: from, rev: fwd, cap: 0, cost: -cost });
        self.excess[to] += lower;
        self.excess[from] -= lower;
        self.arcs.push((from, fwd, lower));
        ArcHandle(self.arcs.len() - 1)
    }

    /// Returns a minimum-cost flow meeting every bound, or None when the
    /// bounds are unsatisfiable.
    pub fn solve(mut self) -> Option<FlowSolution> {
        let n = self.graph.len();
        let source = n;
        let sink = n + 1;
        self.graph.push(Vec::new());
        self.graph.push(Vec::new());

        let mut required = 0i64;
        for v in 0..n {
            let e = self.excess[v];
            if e > 0 {
                required += e;
                self.push_plain(source, v, e);
            } else if e < 0 {
                self.push_plain(v, sink, -e);
            }
        }

        // All declared costs are nonnegative, so zero potentials are valid.
        let mut potential = vec![0i64; self.graph.len()];
        let mut pushed = 0i64;
        while pushed < required {
            let (dist, parent) = self.dijkstra(source, &potential);
            if dist[sink] >= INF {
                return None;
            }
            let cap = dist[sink];
            for (v, d) in dist.iter().enumerate() {
                potential[v] += (*d).min(cap);
            }

            let mut bottleneck = INF;
            let mut v = sink;
            while v != source {
                let (u, idx) = parent[v];
                bottleneck = bottleneck.min(self.graph[u][idx].cap);
                v = u;
            }
            let mut v = sink;
            while v != source {
                let (u, idx) = parent[v];
                let rev = self.graph[u][idx].rev;
                self.graph[u][idx].cap -= bottleneck;
                self.graph[v][rev].cap += bottleneck;
                v = u;
            }
            pushed += bottleneck;
        }

        let mut flows = Vec::with_capacity(self.arcs.len());
        let mut cost = 0i64;
        for &(node, idx, lower) in &self.arcs {
            let arc = &self.graph[node][idx];
            let used = self.graph[arc.to][arc.rev].cap;
            flows.push(lower + used);
            cost += (lower + used) * arc.cost;
        }
        Some(FlowSolution { flows, cost })
    }

    fn push_plain(&mut self, from: usize, to: usize, cap: i64) {
        let fwd = self.graph[from].len();
        let bwd = self.graph[to].len();
        self.graph[from].push(Arc { to, rev: bwd, cap, cost: 0 });
        self.graph[to].push(Arc { to: from, rev: fwd, cap: 0, cost: 0 });
    }

    fn dijkstra(&self, source: usize, potential: &[i64]) -> (Vec<i64>, Vec<(usize, usize)>) {
        let n = self.graph.len();
        let mut dist = vec![INF; n];
        let mut parent = vec![(usize::MAX, usize::MAX); n];
        let mut heap = BinaryHeap::new();
        dist[source] = 0;
        heap.push(Reverse((0i64, source)));
        while let Some(Reverse((d, u))) = heap.pop() {
            if d > dist[u] {
                continue;
            }
            for (idx, arc) in self.graph[u].iter().enumerate() {
                if arc.cap <= 0 {
                    continue;
                }
                let nd = d + arc.cost + potential[u] - potential[arc.to];
                if nd < dist[arc.to] {
                    dist[arc.to] = nd;
                    parent[arc.to] = (u, idx);
                    heap.push(Reverse((nd, arc.to)));
                }
            }
        }
        (dist, parent)
    }
}
