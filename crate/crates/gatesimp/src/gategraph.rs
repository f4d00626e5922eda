//! The weighted gate graph: Stage-1 construction over sub-epsilon gate
//! pairs, Stage-2 edge sparsification, weighted shortest paths among gates,
//! and the end-to-end non-local distance query.

use std::cmp::Reverse;
use std::collections::{BinaryHeap, HashMap};
use std::io::{BufRead, Write};

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::gates::{GateMode, GateVertexSet};
use crate::graph::{BfsScratch, Graph, LabelTable, VertexId, UNREACHABLE};

const NO_PRED: u32 = u32::MAX;

/// Weighted undirected graph over a subset of the original vertices.
/// For Stage-1 output every edge weight equals the original-graph distance
/// of its endpoints and is strictly below epsilon.
#[derive(Debug, Clone)]
pub struct WeightedGraph {
    vertices: Vec<VertexId>,
    pos: HashMap<VertexId, usize>,
    adj: Vec<Vec<(usize, u32)>>,
    m: usize,
}

impl WeightedGraph {
    /// Builds from canonical `(u, v, w)` edges over the given vertex set.
    pub fn new(mut vertices: Vec<VertexId>, edges: &[(VertexId, VertexId, u32)]) -> Result<Self> {
        vertices.sort_unstable();
        vertices.dedup();
        let pos: HashMap<VertexId, usize> =
            vertices.iter().enumerate().map(|(i, &v)| (v, i)).collect();
        let mut adj = vec![Vec::new(); vertices.len()];
        let mut seen: HashMap<(usize, usize), u32> = HashMap::new();
        for &(u, v, w) in edges {
            if u == v {
                return Err(Error::invalid(format!("self-loop at gate {u}")));
            }
            if w == 0 {
                return Err(Error::invalid(format!("zero-weight edge ({u},{v})")));
            }
            let (&iu, &iv) = match (pos.get(&u), pos.get(&v)) {
                (Some(a), Some(b)) => (a, b),
                _ => {
                    return Err(Error::invalid(format!(
                        "edge ({u},{v}) has an endpoint outside the vertex set"
                    )))
                }
            };
            let key = (iu.min(iv), iu.max(iv));
            match seen.get(&key) {
                Some(&prev) if prev != w => {
                    return Err(Error::invalid(format!(
                        "conflicting weights for edge ({u},{v}): {prev} vs {w}"
                    )))
                }
                Some(_) => continue,
                None => {
                    seen.insert(key, w);
                }
            }
            adj[iu].push((iv, w));
            adj[iv].push((iu, w));
        }
        let m = seen.len();
        for list in &mut adj {
            list.sort_unstable();
        }
        Ok(WeightedGraph {
            vertices,
            pos,
            adj,
            m,
        })
    }

    pub fn vertices(&self) -> &[VertexId] {
        &self.vertices
    }

    pub fn vertex_count(&self) -> usize {
        self.vertices.len()
    }

    pub fn edge_count(&self) -> usize {
        self.m
    }

    pub fn contains(&self, v: VertexId) -> bool {
        self.pos.contains_key(&v)
    }

    /// Canonical edge list `(u, v, w)` with `u < v`, sorted.
    pub fn edges(&self) -> Vec<(VertexId, VertexId, u32)> {
        let mut out = Vec::with_capacity(self.m);
        for (iu, list) in self.adj.iter().enumerate() {
            let u = self.vertices[iu];
            for &(iv, w) in list {
                let v = self.vertices[iv];
                if u < v {
                    out.push((u, v, w));
                }
            }
        }
        out.sort_unstable();
        out
    }

    pub fn weight(&self, u: VertexId, v: VertexId) -> Option<u32> {
        let (&iu, &iv) = (self.pos.get(&u)?, self.pos.get(&v)?);
        self.adj[iu]
            .iter()
            .find(|&&(i, _)| i == iv)
            .map(|&(_, w)| w)
    }

    pub(crate) fn position(&self, v: VertexId) -> Option<usize> {
        self.pos.get(&v).copied()
    }

    /// Dijkstra from an internal index; `skip` optionally masks one edge
    /// (by endpoint indices). Returns distances and predecessor indices.
    pub(crate) fn dijkstra_idx(&self, src: usize, skip: Option<(usize, usize)>) -> (Vec<u32>, Vec<u32>) {
        let n = self.vertices.len();
        let mut dist = vec![UNREACHABLE; n];
        let mut pred = vec![NO_PRED; n];
        let mut heap = BinaryHeap::new();
        dist[src] = 0;
        heap.push(Reverse((0u32, src)));
        while let Some(Reverse((d, u))) = heap.pop() {
            if d > dist[u] {
                continue;
            }
            for &(v, w) in &self.adj[u] {
                if let Some((a, b)) = skip {
                    if (u == a && v == b) || (u == b && v == a) {
                        continue;
                    }
                }
                let nd = d + w;
                if nd < dist[v] {
                    dist[v] = nd;
                    pred[v] = u as u32;
                    heap.push(Reverse((nd, v)));
                }
            }
        }
        (dist, pred)
    }

    /// All-pairs weighted distances (one Dijkstra per vertex), row-major.
    pub fn apsp(&self) -> Vec<u32> {
        let n = self.vertices.len();
        let mut table = vec![UNREACHABLE; n * n];
        table.par_chunks_mut(n.max(1)).enumerate().for_each(|(s, row)| {
            if s < n {
                let (dist, _) = self.dijkstra_idx(s, None);
                row.copy_from_slice(&dist);
            }
        });
        table
    }

    /// Writes `u v w` lines (labels, canonical order).
    pub fn write_text<W: Write>(&self, w: &mut W, labels: &LabelTable) -> Result<()> {
        for (u, v, wt) in self.edges() {
            writeln!(w, "{} {} {}", labels.label(u), labels.label(v), wt)?;
        }
        Ok(())
    }

    /// Reads `u v w` lines over a known vertex set (needed because isolated
    /// gates never appear in the edge list).
    pub fn read_text<R: BufRead>(
        r: R,
        labels: &LabelTable,
        vertices: Vec<VertexId>,
    ) -> Result<WeightedGraph> {
        let mut edges = Vec::new();
        for (idx, line) in r.lines().enumerate() {
            let line = line?;
            let t = line.trim();
            if t.is_empty() || t.starts_with('#') {
                continue;
            }
            let parts: Vec<&str> = t.split_whitespace().collect();
            if parts.len() != 3 {
                return Err(Error::Parse {
                    line: idx + 1,
                    message: format!("expected `u v w`, got {t:?}"),
                });
            }
            let u = labels.id(parts[0]).ok_or_else(|| Error::Parse {
                line: idx + 1,
                message: format!("unknown label {:?}", parts[0]),
            })?;
            let v = labels.id(parts[1]).ok_or_else(|| Error::Parse {
                line: idx + 1,
                message: format!("unknown label {:?}", parts[1]),
            })?;
            let w: u32 = parts[2].parse().map_err(|_| Error::Parse {
                line: idx + 1,
                message: format!("bad weight {:?}", parts[2]),
            })?;
            edges.push((u, v, w));
        }
        WeightedGraph::new(vertices, &edges)
    }
}

/// Stage 1: connect two gates whenever their original-graph distance is
/// below epsilon, weighting the edge with that distance. One bounded BFS of
/// depth epsilon-1 per gate.
pub fn build_local_gate_graph(
    g: &Graph,
    gates: &GateVertexSet,
    epsilon: u32,
) -> Result<WeightedGraph> {
    match gates.mode {
        GateMode::Gate { epsilon: e } if e == epsilon => {}
        other => {
            return Err(Error::invalid(format!(
                "gate graph at epsilon={epsilon} needs a gate-mode set at the same epsilon, got {}({})",
                other.as_str(),
                other.param()
            )))
        }
    }
    if let Some(&v) = gates.vertices.iter().find(|&&v| v >= g.n()) {
        return Err(Error::invalid(format!(
            "gate {v} out of range (n={})",
            g.n()
        )));
    }
    let n = g.n();
    let mut is_gate = vec![false; n];
    for &v in &gates.vertices {
        is_gate[v] = true;
    }
    let per_gate: Vec<Vec<(VertexId, VertexId, u32)>> = gates
        .vertices
        .par_iter()
        .map_init(
            || BfsScratch::new(n),
            |bfs, &u| {
                bfs.run(g, u, epsilon - 1);
                let mut out = Vec::new();
                for &v in bfs.order() {
                    if v > u && is_gate[v] {
                        out.push((u, v, bfs.level(v).expect("visited")));
                    }
                }
                out
            },
        )
        .collect();
    let edges: Vec<(VertexId, VertexId, u32)> = per_gate.into_iter().flatten().collect();
    WeightedGraph::new(gates.vertices.clone(), &edges)
}

/// Stage 2: drop every edge replaceable by a two-edge path of equal total
/// weight through a common neighbor. Flags are computed against the
/// original edge set in one pass, then all flagged edges are removed
/// together; the replacement edges are strictly lighter, so chains of
/// substitutions bottom out and distances are preserved.
pub fn sparsify(wg: &WeightedGraph) -> WeightedGraph {
    let edges = wg.edges();
    let kept: Vec<(VertexId, VertexId, u32)> = edges
        .par_iter()
        .filter(|&&(u, v, w)| {
            let iu = wg.pos[&u];
            let iv = wg.pos[&v];
            // Two-pointer sweep over the sorted adjacency lists.
            let (mut i, mut j) = (0, 0);
            let (au, av) = (&wg.adj[iu], &wg.adj[iv]);
            while i < au.len() && j < av.len() {
                let (xu, wu) = au[i];
                let (xv, wv) = av[j];
                match xu.cmp(&xv) {
                    std::cmp::Ordering::Less => i += 1,
                    std::cmp::Ordering::Greater => j += 1,
                    std::cmp::Ordering::Equal => {
                        if xu != iu && xu != iv && wu + wv == w {
                            return false; // flagged: remove
                        }
                        i += 1;
                        j += 1;
                    }
                }
            }
            true
        })
        .copied()
        .collect();
    WeightedGraph::new(wg.vertices.clone(), &kept).expect("kept edges stay valid")
}

/// Weighted shortest-path distance between two gates, `None` across
/// components.
pub fn gate_dijkstra(wg: &WeightedGraph, x: VertexId, y: VertexId) -> Result<Option<u32>> {
    let (&ix, &iy) = match (wg.pos.get(&x), wg.pos.get(&y)) {
        (Some(a), Some(b)) => (a, b),
        _ => {
            return Err(Error::invalid(format!(
                "query endpoints ({x}, {y}) must both be gate vertices"
            )))
        }
    };
    let (dist, _) = wg.dijkstra_idx(ix, None);
    Ok(match dist[iy] {
        UNREACHABLE => None,
        d => Some(d),
    })
}

/// Result of a non-local distance query.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum QueryResult {
    /// The endpoints are a local pair (d < epsilon); no gates involved.
    Local { distance: u32 },
    /// Recovered as d(u,x) + d(x,y | G*) + d(y,v) through the witness gates.
    ViaGates {
        distance: u32,
        witness: (VertexId, VertexId),
    },
    Unreachable,
}

impl QueryResult {
    pub fn distance(&self) -> Option<u32> {
        match *self {
            QueryResult::Local { distance } | QueryResult::ViaGates { distance, .. } => {
                Some(distance)
            }
            QueryResult::Unreachable => None,
        }
    }

    pub fn route_kind(&self) -> &'static str {
        match self {
            QueryResult::Local { .. } => "LOCAL",
            QueryResult::ViaGates { .. } => "VIA_GATES",
            QueryResult::Unreachable => "UNREACHABLE",
        }
    }
}

/// Reusable per-thread buffers for [`QueryContext::query_with`].
pub struct QueryScratch {
    bfs_u: BfsScratch,
    bfs_v: BfsScratch,
    side_u: Vec<(u32, u32)>,
    side_v: Vec<(u32, u32)>,
}

impl QueryScratch {
    pub fn new(n: usize) -> Self {
        QueryScratch {
            bfs_u: BfsScratch::new(n),
            bfs_v: BfsScratch::new(n),
            side_u: Vec::new(),
            side_v: Vec::new(),
        }
    }
}

/// Precomputed query engine: gate-graph all-pairs distances (plus
/// predecessors for witness-chain reconstruction) over a fixed gate set.
pub struct QueryContext<'a> {
    g: &'a Graph,
    wg: &'a WeightedGraph,
    epsilon: u32,
    /// Gate index per vertex, or NO_PRED for non-gates.
    gate_idx: Vec<u32>,
    gate_dist: Vec<u32>,
    gate_pred: Vec<u32>,
    /// Optional materialized gate balls: for every vertex, the gates within
    /// epsilon-1 hops as (gate index, distance), ascending by index.
    balls: Option<Vec<Vec<(u32, u32)>>>,
}

impl<'a> QueryContext<'a> {
    pub fn new(
        g: &'a Graph,
        gates: &GateVertexSet,
        wg: &'a WeightedGraph,
        epsilon: u32,
    ) -> Result<Self> {
        match gates.mode {
            GateMode::Gate { epsilon: e } if e == epsilon => {}
            other => {
                return Err(Error::invalid(format!(
                    "query context at epsilon={epsilon} needs a gate-mode set at the same epsilon, got {}({})",
                    other.as_str(),
                    other.param()
                )))
            }
        }
        Self::from_vertices(g, &gates.vertices, wg, epsilon)
    }

    /// Mode-agnostic constructor used by the verifier, which receives bare
    /// vertex sets.
    pub fn from_vertices(
        g: &'a Graph,
        gates: &[VertexId],
        wg: &'a WeightedGraph,
        epsilon: u32,
    ) -> Result<Self> {
        if epsilon < 1 {
            return Err(Error::invalid("epsilon must be at least 1".to_string()));
        }
        let mut sorted = gates.to_vec();
        sorted.sort_unstable();
        sorted.dedup();
        if sorted != wg.vertices {
            return Err(Error::invalid(
                "gate graph vertex set differs from the gate set".to_string(),
            ));
        }
        let mut gate_idx = vec![NO_PRED; g.n()];
        for (i, &v) in wg.vertices.iter().enumerate() {
            if v >= g.n() {
                return Err(Error::invalid(format!("gate {v} out of range")));
            }
            gate_idx[v] = i as u32;
        }
        let k = wg.vertices.len();
        let mut gate_dist = vec![UNREACHABLE; k * k];
        let mut gate_pred = vec![NO_PRED; k * k];
        gate_dist
            .par_chunks_mut(k.max(1))
            .zip(gate_pred.par_chunks_mut(k.max(1)))
            .enumerate()
            .for_each(|(s, (drow, prow))| {
                if s < k {
                    let (dist, pred) = wg.dijkstra_idx(s, None);
                    drow.copy_from_slice(&dist);
                    prow.copy_from_slice(&pred);
                }
            });
        Ok(QueryContext {
            g,
            wg,
            epsilon,
            gate_idx,
            gate_dist,
            gate_pred,
            balls: None,
        })
    }

    /// Materializes every gate ball (one bounded BFS per gate). Queries
    /// then gather their gate legs from the index and run a single BFS per
    /// query instead of two; results are identical. Worth it for
    /// benchmark-style workloads with many queries per context.
    pub fn precompute_balls(&mut self) {
        let n = self.g.n();
        let per_gate: Vec<Vec<(VertexId, u32)>> = self
            .wg
            .vertices
            .par_iter()
            .map_init(
                || BfsScratch::new(n),
                |bfs, &x| {
                    bfs.run(self.g, x, self.epsilon - 1);
                    bfs.order()
                        .iter()
                        .map(|&w| (w, bfs.level(w).expect("visited")))
                        .collect()
                },
            )
            .collect();
        let mut balls: Vec<Vec<(u32, u32)>> = vec![Vec::new(); n];
        for (gi, hits) in per_gate.into_iter().enumerate() {
            for (w, d) in hits {
                balls[w].push((gi as u32, d));
            }
        }
        self.balls = Some(balls);
    }

    pub fn epsilon(&self) -> u32 {
        self.epsilon
    }

    pub(crate) fn gate_index(&self, v: VertexId) -> Option<usize> {
        if v < self.gate_idx.len() && self.gate_idx[v] != NO_PRED {
            Some(self.gate_idx[v] as usize)
        } else {
            None
        }
    }

    fn gate_count(&self) -> usize {
        self.wg.vertices.len()
    }

    /// Weighted gate-graph distance between gate indices.
    fn dist_idx(&self, xi: usize, yi: usize) -> u32 {
        self.gate_dist[xi * self.gate_count() + yi]
    }

    /// Gate-graph shortest path between gate indices, as original vertex
    /// ids, endpoints included.
    pub(crate) fn gate_path(&self, xi: usize, yi: usize) -> Option<Vec<VertexId>> {
        if self.dist_idx(xi, yi) == UNREACHABLE {
            return None;
        }
        let k = self.gate_count();
        let mut path = vec![self.wg.vertices[yi]];
        let mut cur = yi;
        while cur != xi {
            let p = self.gate_pred[xi * k + cur];
            if p == NO_PRED {
                return None;
            }
            cur = p as usize;
            path.push(self.wg.vertices[cur]);
        }
        path.reverse();
        Some(path)
    }

    pub fn query(&self, u: VertexId, v: VertexId) -> Result<QueryResult> {
        let mut scratch = QueryScratch::new(self.g.n());
        self.query_with(&mut scratch, u, v)
    }

    /// The Definition-2 minimum: if d(u,v) < epsilon the pair is local;
    /// otherwise minimize d(u,x) + d(x,y | G*) + d(y,v) over gates x, y with
    /// both end legs below epsilon (x = y and gate endpoints allowed).
    pub fn query_with(
        &self,
        scratch: &mut QueryScratch,
        u: VertexId,
        v: VertexId,
    ) -> Result<QueryResult> {
        let n = self.g.n();
        if u >= n || v >= n {
            return Err(Error::invalid(format!(
                "query endpoints ({u}, {v}) out of range (n={n})"
            )));
        }
        if u == v {
            return Ok(QueryResult::Local { distance: 0 });
        }
        scratch.bfs_u.run(self.g, u, self.epsilon - 1);
        if let Some(d) = scratch.bfs_u.level(v) {
            return Ok(QueryResult::Local { distance: d });
        }
        type Side<'s> = &'s [(u32, u32)];
        let (side_u, side_v): (Side<'_>, Side<'_>) = match &self.balls {
            Some(balls) => (&balls[u], &balls[v]),
            None => {
                scratch.bfs_v.run(self.g, v, self.epsilon - 1);
                scratch.side_u.clear();
                for &x in scratch.bfs_u.order() {
                    let gi = self.gate_idx[x];
                    if gi != NO_PRED {
                        scratch
                            .side_u
                            .push((gi, scratch.bfs_u.level(x).expect("visited")));
                    }
                }
                scratch.side_v.clear();
                for &y in scratch.bfs_v.order() {
                    let gi = self.gate_idx[y];
                    if gi != NO_PRED {
                        scratch
                            .side_v
                            .push((gi, scratch.bfs_v.level(y).expect("visited")));
                    }
                }
                scratch.side_u.sort_unstable();
                scratch.side_v.sort_unstable();
                (&scratch.side_u, &scratch.side_v)
            }
        };
        let mut best: Option<(u32, usize, usize)> = None;
        for &(yi, dv) in side_v {
            for &(xi, du) in side_u {
                let mid = self.dist_idx(xi as usize, yi as usize);
                if mid == UNREACHABLE {
                    continue;
                }
                let total = du + mid + dv;
                if best.is_none_or(|(b, _, _)| total < b) {
                    best = Some((total, xi as usize, yi as usize));
                }
            }
        }
        Ok(match best {
            Some((distance, xi, yi)) => QueryResult::ViaGates {
                distance,
                witness: (self.wg.vertices[xi], self.wg.vertices[yi]),
            },
            None => QueryResult::Unreachable,
        })
    }
}

/// One-shot form of the Definition-2 query; builds a [`QueryContext`] and
/// asks once.
pub fn query_distance(
    g: &Graph,
    gates: &GateVertexSet,
    wg: &WeightedGraph,
    u: VertexId,
    v: VertexId,
    epsilon: u32,
) -> Result<QueryResult> {
    QueryContext::new(g, gates, wg, epsilon)?.query(u, v)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gates::{discover_sc, DiscoveryStats, Method};

    fn gate_set(vertices: Vec<VertexId>, epsilon: u32) -> GateVertexSet {
        GateVertexSet {
            vertices,
            mode: GateMode::Gate { epsilon },
            method: Method::Sc,
            stats: DiscoveryStats::default(),
        }
    }

    #[test]
    fn stage1_on_path5() {
        let g = Graph::path(5);
        let gates = gate_set(vec![0, 1, 2], 3);
        let wg = build_local_gate_graph(&g, &gates, 3).unwrap();
        assert_eq!(wg.edges(), vec![(0, 1, 1), (0, 2, 2), (1, 2, 1)]);
    }

    #[test]
    fn stage1_single_gate_has_no_edges() {
        let g = Graph::path(5);
        let gates = gate_set(vec![2], 3);
        let wg = build_local_gate_graph(&g, &gates, 3).unwrap();
        assert_eq!(wg.edge_count(), 0);
        assert_eq!(wg.vertex_count(), 1);
    }

    #[test]
    fn stage1_hexagon_triangle() {
        let g = Graph::cycle(6);
        let gates = gate_set(vec![0, 2, 4], 3);
        let wg = build_local_gate_graph(&g, &gates, 3).unwrap();
        assert_eq!(wg.edges(), vec![(0, 2, 2), (0, 4, 2), (2, 4, 2)]);
    }

    #[test]
    fn stage1_rejects_mode_mismatch() {
        let g = Graph::path(5);
        let gates = GateVertexSet {
            vertices: vec![2],
            mode: GateMode::KSkip { k: 3 },
            method: Method::Sc,
            stats: DiscoveryStats::default(),
        };
        assert!(matches!(
            build_local_gate_graph(&g, &gates, 3),
            Err(Error::InvalidArgument(_))
        ));
    }

    #[test]
    fn sparsify_removes_triangle_chord() {
        let wg = WeightedGraph::new(vec![0, 1, 2], &[(0, 1, 1), (1, 2, 1), (0, 2, 2)]).unwrap();
        let s = sparsify(&wg);
        assert_eq!(s.edges(), vec![(0, 1, 1), (1, 2, 1)]);
    }

    #[test]
    fn sparsify_keeps_equal_weight_triangle() {
        let wg = WeightedGraph::new(vec![0, 2, 4], &[(0, 2, 2), (2, 4, 2), (0, 4, 2)]).unwrap();
        let s = sparsify(&wg);
        assert_eq!(s.edge_count(), 3);
    }

    #[test]
    fn sparsify_empty_graph() {
        let wg = WeightedGraph::new(vec![], &[]).unwrap();
        assert_eq!(sparsify(&wg).edge_count(), 0);
    }

    #[test]
    fn sparsify_is_idempotent() {
        let g = crate::gen::gen_er(200, 3.0, 4).unwrap();
        let gates = discover_sc(&g, 3).unwrap();
        let wg = build_local_gate_graph(&g, &gates, 3).unwrap();
        let once = sparsify(&wg);
        let twice = sparsify(&once);
        assert_eq!(once.edges(), twice.edges());
    }

    #[test]
    fn dijkstra_basics() {
        let wg = WeightedGraph::new(vec![0, 1, 2], &[(0, 1, 1), (1, 2, 1)]).unwrap();
        assert_eq!(gate_dijkstra(&wg, 0, 2).unwrap(), Some(2));
        assert_eq!(gate_dijkstra(&wg, 1, 1).unwrap(), Some(0));
        let disc = WeightedGraph::new(vec![0, 1, 2, 3], &[(0, 1, 1)]).unwrap();
        assert_eq!(gate_dijkstra(&disc, 0, 3).unwrap(), None);
        assert!(gate_dijkstra(&disc, 0, 99).is_err());
    }

    #[test]
    fn query_on_path5_via_gate() {
        let g = Graph::path(5);
        let gates = gate_set(vec![2], 3);
        let wg = build_local_gate_graph(&g, &gates, 3).unwrap();
        let r = query_distance(&g, &gates, &wg, 0, 3, 3).unwrap();
        assert_eq!(
            r,
            QueryResult::ViaGates {
                distance: 3,
                witness: (2, 2)
            }
        );
        let r = query_distance(&g, &gates, &wg, 0, 4, 3).unwrap();
        assert_eq!(
            r,
            QueryResult::ViaGates {
                distance: 4,
                witness: (2, 2)
            }
        );
    }

    #[test]
    fn query_local_pair() {
        let g = Graph::path(5);
        let gates = gate_set(vec![2], 3);
        let wg = build_local_gate_graph(&g, &gates, 3).unwrap();
        let r = query_distance(&g, &gates, &wg, 0, 1, 3).unwrap();
        assert_eq!(r, QueryResult::Local { distance: 1 });
    }

    #[test]
    fn query_cross_component_unreachable() {
        let g = Graph::from_edges(6, [(0, 1), (1, 2), (3, 4), (4, 5)]);
        let gates = gate_set(vec![1, 4], 2);
        let wg = build_local_gate_graph(&g, &gates, 2).unwrap();
        let r = query_distance(&g, &gates, &wg, 0, 5, 2).unwrap();
        assert_eq!(r, QueryResult::Unreachable);
    }

    #[test]
    fn query_endpoint_gate_allowed() {
        // u itself is a gate: d(u,x) = 0 must satisfy the < epsilon leg.
        let g = Graph::path(7);
        let gates = gate_set(vec![2, 4], 3);
        let wg = build_local_gate_graph(&g, &gates, 3).unwrap();
        let r = query_distance(&g, &gates, &wg, 2, 6, 3).unwrap();
        assert_eq!(r.distance(), Some(4));
    }

    #[test]
    fn ball_index_does_not_change_results() {
        let g = crate::gen::gen_er(180, 2.5, 99).unwrap();
        let gates = discover_sc(&g, 3).unwrap();
        let wg = build_local_gate_graph(&g, &gates, 3).unwrap();
        let plain = QueryContext::new(&g, &gates, &wg, 3).unwrap();
        let mut indexed = QueryContext::new(&g, &gates, &wg, 3).unwrap();
        indexed.precompute_balls();
        let mut s1 = QueryScratch::new(g.n());
        let mut s2 = QueryScratch::new(g.n());
        for u in (0..g.n()).step_by(7) {
            for v in (0..g.n()).step_by(5) {
                let a = plain.query_with(&mut s1, u, v).unwrap();
                let b = indexed.query_with(&mut s2, u, v).unwrap();
                assert_eq!(a, b, "query ({u}, {v})");
            }
        }
    }

    #[test]
    fn weighted_round_trip() {
        let wg = WeightedGraph::new(vec![0, 2, 4], &[(0, 2, 2), (2, 4, 2)]).unwrap();
        let labels = LabelTable::identity(5);
        let mut buf = Vec::new();
        wg.write_text(&mut buf, &labels).unwrap();
        let back =
            WeightedGraph::read_text(buf.as_slice(), &labels, vec![0, 2, 4]).unwrap();
        assert_eq!(back.edges(), wg.edges());
    }
}
