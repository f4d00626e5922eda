//! Unweighted undirected graph storage, edge-list ingestion, traversal
//! primitives, and the brute-force distance oracle every other module is
//! validated against.

use std::collections::HashMap;
use std::io::{BufRead, Write};

use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};

/// Dense, zero-based vertex identifier.
pub type VertexId = usize;

/// Sentinel hop distance for disconnected pairs.
pub const UNREACHABLE: u32 = u32::MAX;

/// Default vertex-count guard for operations that materialize an n x n
/// distance table.
pub const APSP_GUARD: usize = 20_000;

/// Immutable unweighted undirected graph over vertices `0..n`.
///
/// Neighbor lists are strictly ascending, self-loop free, and symmetric;
/// `m` counts each undirected edge once.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Graph {
    adj: Vec<Vec<VertexId>>,
    m: usize,
}

impl Graph {
    /// Builds a graph from an edge iterator. Self-loops and duplicate edges
    /// (in either orientation) are dropped silently; use [`load_edge_list`]
    /// when the drop counts matter.
    pub fn from_edges<I>(n: usize, edges: I) -> Graph
    where
        I: IntoIterator<Item = (VertexId, VertexId)>,
    {
        let mut adj = vec![Vec::new(); n];
        for (u, v) in edges {
            assert!(u < n && v < n, "edge ({u},{v}) out of range for n={n}");
            if u == v {
                continue;
            }
            adj[u].push(v);
            adj[v].push(u);
        }
        let mut half_sum = 0;
        for list in &mut adj {
            list.sort_unstable();
            list.dedup();
            half_sum += list.len();
        }
        Graph {
            adj,
            m: half_sum / 2,
        }
    }

    /// Path graph 0-1-...-(n-1).
    pub fn path(n: usize) -> Graph {
        Graph::from_edges(n, (1..n).map(|v| (v - 1, v)))
    }

    /// Cycle graph over n >= 3 vertices.
    pub fn cycle(n: usize) -> Graph {
        assert!(n >= 3, "cycle needs at least 3 vertices");
        Graph::from_edges(n, (0..n).map(|v| (v, (v + 1) % n)))
    }

    /// Star with center 0 and n-1 leaves.
    pub fn star(n: usize) -> Graph {
        Graph::from_edges(n, (1..n).map(|v| (0, v)))
    }

    /// Complete graph on n vertices.
    pub fn complete(n: usize) -> Graph {
        let mut edges = Vec::new();
        for u in 0..n {
            for v in (u + 1)..n {
                edges.push((u, v));
            }
        }
        Graph::from_edges(n, edges)
    }

    pub fn n(&self) -> usize {
        self.adj.len()
    }

    /// Undirected edge count (each edge counted once).
    pub fn m(&self) -> usize {
        self.m
    }

    /// Edge count under the doubled (ordered-pair) convention used by the
    /// SNAP dataset tables.
    pub fn m_doubled(&self) -> usize {
        self.m * 2
    }

    pub fn degree(&self, v: VertexId) -> usize {
        self.adj[v].len()
    }

    pub fn neighbors(&self, v: VertexId) -> &[VertexId] {
        &self.adj[v]
    }

    pub fn has_edge(&self, u: VertexId, v: VertexId) -> bool {
        u < self.n() && v < self.n() && self.adj[u].binary_search(&v).is_ok()
    }

    /// Iterates undirected edges in canonical `(u, v)` order with `u < v`.
    pub fn edges(&self) -> impl Iterator<Item = (VertexId, VertexId)> + '_ {
        self.adj
            .iter()
            .enumerate()
            .flat_map(|(u, list)| list.iter().filter(move |&&v| u < v).map(move |&v| (u, v)))
    }

    /// Checks every structural invariant; used by tests and the generators'
    /// own validation.
    pub fn validate(&self) -> Result<()> {
        let n = self.n();
        let mut half_sum = 0;
        for (u, list) in self.adj.iter().enumerate() {
            half_sum += list.len();
            for win in list.windows(2) {
                if win[0] >= win[1] {
                    return Err(Error::invalid(format!(
                        "neighbor list of {u} is not strictly ascending"
                    )));
                }
            }
            for &v in list {
                if v >= n {
                    return Err(Error::invalid(format!("neighbor {v} of {u} out of range")));
                }
                if v == u {
                    return Err(Error::invalid(format!("self-loop at {u}")));
                }
                if self.adj[v].binary_search(&u).is_err() {
                    return Err(Error::invalid(format!("asymmetric edge ({u},{v})")));
                }
            }
        }
        if half_sum != 2 * self.m {
            return Err(Error::invalid(format!(
                "edge count {} inconsistent with adjacency sum {half_sum}",
                self.m
            )));
        }
        Ok(())
    }

    /// Levels of every vertex within `limit` hops of `source`:
    /// `map[v] = d(source, v) <= limit`, with `map[source] = 0`.
    pub fn bounded_bfs(&self, source: VertexId, limit: u32) -> Result<HashMap<VertexId, u32>> {
        if source >= self.n() {
            return Err(Error::invalid(format!(
                "bfs source {source} out of range (n={})",
                self.n()
            )));
        }
        let mut scratch = BfsScratch::new(self.n());
        scratch.run(self, source, limit);
        let mut map = HashMap::with_capacity(scratch.order().len());
        for &v in scratch.order() {
            map.insert(v, scratch.level(v).expect("visited vertex has a level"));
        }
        Ok(map)
    }

    /// Number of connected components.
    pub fn components(&self) -> usize {
        let n = self.n();
        let mut seen = vec![false; n];
        let mut queue = Vec::new();
        let mut count = 0;
        for s in 0..n {
            if seen[s] {
                continue;
            }
            count += 1;
            seen[s] = true;
            queue.push(s);
            while let Some(u) = queue.pop() {
                for &v in self.neighbors(u) {
                    if !seen[v] {
                        seen[v] = true;
                        queue.push(v);
                    }
                }
            }
        }
        count
    }

    /// Vertices of the largest connected component, ascending.
    pub fn largest_component(&self) -> Vec<VertexId> {
        let n = self.n();
        let mut seen = vec![false; n];
        let mut queue = Vec::new();
        let mut best: Vec<VertexId> = Vec::new();
        for s in 0..n {
            if seen[s] {
                continue;
            }
            let mut comp = vec![s];
            seen[s] = true;
            queue.push(s);
            while let Some(u) = queue.pop() {
                for &v in self.neighbors(u) {
                    if !seen[v] {
                        seen[v] = true;
                        comp.push(v);
                        queue.push(v);
                    }
                }
            }
            if comp.len() > best.len() {
                best = comp;
            }
        }
        best.sort_unstable();
        best
    }

    /// Induced subgraph on `keep` (ascending vertex ids). Returns the graph
    /// with vertices renumbered 0.. plus the old-id mapping.
    pub fn induced(&self, keep: &[VertexId]) -> (Graph, Vec<VertexId>) {
        let mut new_id = HashMap::with_capacity(keep.len());
        for (i, &v) in keep.iter().enumerate() {
            new_id.insert(v, i);
        }
        let mut edges = Vec::new();
        for &u in keep {
            for &v in self.neighbors(u) {
                if u < v {
                    if let Some(&nv) = new_id.get(&v) {
                        edges.push((new_id[&u], nv));
                    }
                }
            }
        }
        (Graph::from_edges(keep.len(), edges), keep.to_vec())
    }
}

/// Reusable scratch space for repeated bounded BFS traversals. Visitation
/// marks are stamped per round, so consecutive runs cost O(visited), not
/// O(n).
pub(crate) struct BfsScratch {
    level: Vec<u32>,
    stamp: Vec<u32>,
    round: u32,
    order: Vec<VertexId>,
}

impl BfsScratch {
    pub(crate) fn new(n: usize) -> Self {
        BfsScratch {
            level: vec![0; n],
            stamp: vec![0; n],
            round: 0,
            order: Vec::new(),
        }
    }

    /// Runs BFS from `source` out to `limit` hops. Afterwards [`Self::order`]
    /// holds the visited vertices in discovery order (levels ascending) and
    /// [`Self::level`] answers per-vertex levels for this round.
    pub(crate) fn run(&mut self, g: &Graph, source: VertexId, limit: u32) {
        if self.round == u32::MAX {
            self.stamp.fill(0);
            self.round = 0;
        }
        self.round += 1;
        self.order.clear();
        self.order.push(source);
        self.stamp[source] = self.round;
        self.level[source] = 0;
        let mut head = 0;
        while head < self.order.len() {
            let u = self.order[head];
            head += 1;
            let du = self.level[u];
            if du == limit {
                continue;
            }
            for &v in g.neighbors(u) {
                if self.stamp[v] != self.round {
                    self.stamp[v] = self.round;
                    self.level[v] = du + 1;
                    self.order.push(v);
                }
            }
        }
    }

    pub(crate) fn order(&self) -> &[VertexId] {
        &self.order
    }

    pub(crate) fn level(&self, v: VertexId) -> Option<u32> {
        (self.stamp[v] == self.round).then(|| self.level[v])
    }
}

/// All-pairs hop-distance table computed by one BFS per source.
pub struct DistanceOracle {
    n: usize,
    dist: Vec<u32>,
}

impl DistanceOracle {
    pub fn n(&self) -> usize {
        self.n
    }

    /// Hop distance, or [`UNREACHABLE`] for disconnected pairs.
    pub fn dist(&self, u: VertexId, v: VertexId) -> u32 {
        self.dist[u * self.n + v]
    }

    pub fn row(&self, u: VertexId) -> &[u32] {
        &self.dist[u * self.n..(u + 1) * self.n]
    }
}

/// Builds the all-pairs oracle under the default [`APSP_GUARD`].
pub fn apsp_oracle(g: &Graph) -> Result<DistanceOracle> {
    apsp_oracle_with_guard(g, APSP_GUARD)
}

/// Builds the all-pairs oracle, refusing graphs larger than `guard`.
pub fn apsp_oracle_with_guard(g: &Graph, guard: usize) -> Result<DistanceOracle> {
    let n = g.n();
    if n > guard {
        return Err(Error::guard(format!(
            "apsp oracle would need a {n}x{n} table; the guard allows at most {guard} vertices"
        )));
    }
    let mut dist = vec![UNREACHABLE; n * n];
    dist.par_chunks_mut(n.max(1)).enumerate().for_each(|(s, row)| {
        if s >= n {
            return;
        }
        bfs_row(g, s, row);
    });
    Ok(DistanceOracle { n, dist })
}

/// Single-source BFS writing levels into a caller-provided row of length n
/// pre-filled with [`UNREACHABLE`].
fn bfs_row(g: &Graph, source: VertexId, row: &mut [u32]) {
    row[source] = 0;
    let mut queue = Vec::with_capacity(64);
    queue.push(source);
    let mut head = 0;
    while head < queue.len() {
        let u = queue[head];
        head += 1;
        let du = row[u];
        for &v in g.neighbors(u) {
            if row[v] == UNREACHABLE {
                row[v] = du + 1;
                queue.push(v);
            }
        }
    }
}

/// Diameter, mean pairwise distance over connected pairs, and component
/// count. `exact = false` marks sampled estimates.
#[derive(Debug, Clone, Serialize)]
pub struct GraphStats {
    pub n: usize,
    pub m: usize,
    pub diameter: u32,
    pub avg_dist: f64,
    pub components: usize,
    pub exact: bool,
}

/// Computes [`GraphStats`]. Exact mode runs one BFS per vertex and obeys the
/// apsp guard; sampled mode spreads at most 64 BFS sources over the graph
/// and flags the result as an estimate.
pub fn graph_stats(g: &Graph, exact: bool) -> Result<GraphStats> {
    let n = g.n();
    if exact && n > APSP_GUARD {
        return Err(Error::guard(format!(
            "exact stats on {n} vertices exceed the apsp guard of {APSP_GUARD}; use sampled mode"
        )));
    }
    let sources: Vec<VertexId> = if exact {
        (0..n).collect()
    } else {
        let s = n.clamp(1, 64);
        let stride = (n / s).max(1);
        (0..n).step_by(stride).take(s).collect()
    };
    let (diameter, sum, pairs) = sources
        .par_iter()
        .map(|&s| {
            let mut row = vec![UNREACHABLE; n];
            bfs_row(g, s, &mut row);
            let mut max = 0u32;
            let mut sum = 0u64;
            let mut cnt = 0u64;
            for (v, &d) in row.iter().enumerate() {
                if v != s && d != UNREACHABLE {
                    max = max.max(d);
                    sum += d as u64;
                    cnt += 1;
                }
            }
            (max, sum, cnt)
        })
        .reduce(
            || (0u32, 0u64, 0u64),
            |a, b| (a.0.max(b.0), a.1 + b.1, a.2 + b.2),
        );
    Ok(GraphStats {
        n,
        m: g.m(),
        diameter,
        avg_dist: if pairs == 0 { 0.0 } else { sum as f64 / pairs as f64 },
        components: g.components(),
        exact,
    })
}

/// Bidirectional label <-> dense id table built during ingestion.
#[derive(Debug, Clone, Default)]
pub struct LabelTable {
    labels: Vec<String>,
    index: HashMap<String, VertexId>,
}

impl LabelTable {
    /// Table where each vertex is labeled by its own decimal id.
    pub fn identity(n: usize) -> LabelTable {
        let mut t = LabelTable::default();
        for v in 0..n {
            t.intern(&v.to_string());
        }
        t
    }

    pub fn len(&self) -> usize {
        self.labels.len()
    }

    pub fn is_empty(&self) -> bool {
        self.labels.is_empty()
    }

    /// Returns the id for `label`, allocating the next dense id on first use.
    pub fn intern(&mut self, label: &str) -> VertexId {
        if let Some(&id) = self.index.get(label) {
            return id;
        }
        let id = self.labels.len();
        self.labels.push(label.to_string());
        self.index.insert(label.to_string(), id);
        id
    }

    pub fn id(&self, label: &str) -> Option<VertexId> {
        self.index.get(label).copied()
    }

    pub fn label(&self, v: VertexId) -> &str {
        &self.labels[v]
    }

    /// Writes `label<TAB>id` lines.
    pub fn write_tsv<W: Write>(&self, w: &mut W) -> Result<()> {
        for (id, label) in self.labels.iter().enumerate() {
            writeln!(w, "{label}\t{id}")?;
        }
        Ok(())
    }

    pub fn read_tsv<R: BufRead>(r: R) -> Result<LabelTable> {
        let mut t = LabelTable::default();
        for (idx, line) in r.lines().enumerate() {
            let line = line?;
            let line = line.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let (label, id) = line.rsplit_once('\t').ok_or_else(|| Error::Parse {
                line: idx + 1,
                message: "expected label<TAB>id".into(),
            })?;
            let id: VertexId = id.parse().map_err(|_| Error::Parse {
                line: idx + 1,
                message: format!("bad id {id:?}"),
            })?;
            let got = t.intern(label);
            if got != id {
                return Err(Error::Parse {
                    line: idx + 1,
                    message: format!("non-dense id {id} (expected {got})"),
                });
            }
        }
        Ok(t)
    }
}

/// Ingestion counters reported alongside a loaded graph.
#[derive(Debug, Clone, Copy, Default, Serialize)]
pub struct LoadStats {
    /// Non-comment, non-blank lines parsed.
    pub edge_lines: usize,
    /// Repeated or reversed duplicates dropped.
    pub duplicate_edges: usize,
    /// Self-loops dropped.
    pub self_loops: usize,
}

#[derive(Debug)]
pub struct LoadedGraph {
    pub graph: Graph,
    pub labels: LabelTable,
    pub stats: LoadStats,
}

/// Parses whitespace-separated edge-list text: two labels per line,
/// `#`-prefixed comments, blank lines ignored. Labels are densified in
/// first-appearance order; duplicate and self-loop edges are dropped and
/// counted. Empty input yields the empty graph.
pub fn load_edge_list<R: BufRead>(reader: R) -> Result<LoadedGraph> {
    let mut labels = LabelTable::default();
    let mut stats = LoadStats::default();
    let mut edges: Vec<(VertexId, VertexId)> = Vec::new();
    let mut seen: std::collections::HashSet<(VertexId, VertexId)> = std::collections::HashSet::new();
    for (idx, line) in reader.lines().enumerate() {
        let line = line?;
        let line = line.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let mut tok = line.split_whitespace();
        let (a, b) = match (tok.next(), tok.next(), tok.next()) {
            (Some(a), Some(b), None) => (a, b),
            _ => {
                return Err(Error::Parse {
                    line: idx + 1,
                    message: format!("expected two vertex labels, got {line:?}"),
                })
            }
        };
        stats.edge_lines += 1;
        let u = labels.intern(a);
        let v = labels.intern(b);
        if u == v {
            stats.self_loops += 1;
            continue;
        }
        let key = (u.min(v), u.max(v));
        if seen.insert(key) {
            edges.push(key);
        } else {
            stats.duplicate_edges += 1;
        }
    }
    let graph = Graph::from_edges(labels.len(), edges);
    Ok(LoadedGraph {
        graph,
        labels,
        stats,
    })
}

/// Writes the canonical edge list (one `label label` line per edge, u < v).
pub fn write_edge_list<W: Write>(g: &Graph, labels: &LabelTable, w: &mut W) -> Result<()> {
    for (u, v) in g.edges() {
        writeln!(w, "{} {}", labels.label(u), labels.label(v))?;
    }
    Ok(())
}
