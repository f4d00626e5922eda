//! Set-cover encoding of gate-vertex and k-skip discovery.
//!
//! The ground set holds the unordered vertex pairs that must be covered
//! (distance exactly epsilon in gate mode, k-1 in k-skip mode); each vertex
//! x owns the candidate set of pairs it can cover, i.e. pairs with some
//! shortest path through x. Two builders produce instances — a local-BFS
//! construction that never computes global distances, and an oracle-backed
//! cross-check — plus a lazy-evaluation greedy solver and a small
//! branch-and-bound exact solver.

use std::cmp::Ordering;
use std::collections::{BinaryHeap, HashMap};
use std::io::Write;

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::graph::{apsp_oracle, BfsScratch, Graph, LabelTable, VertexId, UNREACHABLE};

/// Unordered vertex pair stored canonically with `a < b`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct PairKey {
    a: VertexId,
    b: VertexId,
}

impl PairKey {
    pub fn new(u: VertexId, v: VertexId) -> PairKey {
        assert_ne!(u, v, "pair endpoints must differ");
        if u < v {
            PairKey { a: u, b: v }
        } else {
            PairKey { a: v, b: u }
        }
    }

    pub fn a(&self) -> VertexId {
        self.a
    }

    pub fn b(&self) -> VertexId {
        self.b
    }

    pub fn contains(&self, x: VertexId) -> bool {
        self.a == x || self.b == x
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CoverMode {
    /// Ground pairs sit at distance exactly epsilon; endpoints never cover.
    Gate,
    /// Ground pairs sit at distance k-1; endpoints may cover their own pair.
    KSkip,
}

impl CoverMode {
    pub fn as_str(&self) -> &'static str {
        match self {
            CoverMode::Gate => "gate",
            CoverMode::KSkip => "kskip",
        }
    }
}

/// A set-cover instance over vertex pairs.
pub struct CoverInstance {
    mode: CoverMode,
    param: u32,
    /// Ground set, sorted; the index of a pair is its id.
    pairs: Vec<PairKey>,
    /// Candidate pair ids per vertex, each list ascending.
    candidates: Vec<Vec<u32>>,
}

impl CoverInstance {
    pub fn mode(&self) -> CoverMode {
        self.mode
    }

    /// The locality parameter: epsilon in gate mode, k in k-skip mode.
    pub fn param(&self) -> u32 {
        self.param
    }

    pub fn ground_size(&self) -> usize {
        self.pairs.len()
    }

    pub fn pairs(&self) -> &[PairKey] {
        &self.pairs
    }

    pub fn pair(&self, id: u32) -> PairKey {
        self.pairs[id as usize]
    }

    pub fn candidate(&self, v: VertexId) -> &[u32] {
        &self.candidates[v]
    }

    /// Vertices with non-empty candidate sets, ascending.
    pub fn candidate_vertices(&self) -> impl Iterator<Item = VertexId> + '_ {
        self.candidates
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_empty())
            .map(|(v, _)| v)
    }

    fn from_pair_lists(
        mode: CoverMode,
        param: u32,
        n: usize,
        mut collected: Vec<(PairKey, Vec<VertexId>)>,
    ) -> CoverInstance {
        collected.sort_unstable_by_key(|(p, _)| *p);
        let mut pairs = Vec::with_capacity(collected.len());
        let mut candidates = vec![Vec::new(); n];
        for (id, (pair, coverers)) in collected.into_iter().enumerate() {
            pairs.push(pair);
            for x in coverers {
                candidates[x].push(id as u32);
            }
        }
        CoverInstance {
            mode,
            param,
            pairs,
            candidates,
        }
    }

    /// Structural invariants: candidate ids in range and ascending, and in
    /// gate mode no vertex covers a pair it belongs to.
    pub fn validate(&self) -> Result<()> {
        for (x, list) in self.candidates.iter().enumerate() {
            for win in list.windows(2) {
                if win[0] >= win[1] {
                    return Err(Error::invalid(format!(
                        "candidate list of {x} is not strictly ascending"
                    )));
                }
            }
            for &id in list {
                let pair = *self.pairs.get(id as usize).ok_or_else(|| {
                    Error::invalid(format!("candidate pair id {id} out of range"))
                })?;
                if self.mode == CoverMode::Gate && pair.contains(x) {
                    return Err(Error::invalid(format!(
                        "gate-mode candidate {x} covers its own pair ({}, {})",
                        pair.a(),
                        pair.b()
                    )));
                }
            }
        }
        Ok(())
    }

    /// Text dump: header `mode param |U|`, the ground pairs, then one
    /// `x: a b, a b, ...` line per candidate vertex.
    pub fn write_text<W: Write>(&self, w: &mut W, labels: &LabelTable) -> Result<()> {
        writeln!(w, "{} {} {}", self.mode.as_str(), self.param, self.pairs.len())?;
        for p in &self.pairs {
            writeln!(w, "{} {}", labels.label(p.a()), labels.label(p.b()))?;
        }
        for (x, list) in self.candidates.iter().enumerate() {
            if list.is_empty() {
                continue;
            }
            let body = list
                .iter()
                .map(|&id| {
                    let p = self.pairs[id as usize];
                    format!("{} {}", labels.label(p.a()), labels.label(p.b()))
                })
                .collect::<Vec<_>>()
                .join(", ");
            writeln!(w, "{}: {}", labels.label(x), body)?;
        }
        Ok(())
    }
}

/// Builds the gate-mode instance with one depth-epsilon BFS per source and
/// no global distance table.
///
/// For each source u, the interior set I(v) of a vertex at BFS level d >= 2
/// is the union of I(z) and {z} over every neighbor z at level d-1 (the
/// union runs over all predecessor edges, not just the discovering one);
/// I(v) is empty at level 1. A vertex v reached at level epsilon yields the
/// ground pair (u, v), covered by exactly the vertices of I(v). Each
/// unordered pair is emitted once, from its smaller endpoint; the two BFS
/// directions see identical interior sets.
pub fn build_instance_bfs(g: &Graph, epsilon: u32) -> Result<CoverInstance> {
    if epsilon < 2 {
        return Err(Error::invalid(format!(
            "gate instances need epsilon >= 2: a distance-1 pair has no interior vertex to cover it (got {epsilon})"
        )));
    }
    let n = g.n();
    let per_source: Vec<Vec<(PairKey, Vec<VertexId>)>> = (0..n)
        .into_par_iter()
        .map_init(
            || BfsScratch::new(n),
            |bfs, u| {
                bfs.run(g, u, epsilon);
                let mut interior: HashMap<VertexId, Vec<VertexId>> = HashMap::new();
                let mut out = Vec::new();
                for &v in bfs.order() {
                    if v == u {
                        continue;
                    }
                    let lv = bfs.level(v).expect("visited");
                    if lv == 1 {
                        interior.insert(v, Vec::new());
                        continue;
                    }
                    if lv == epsilon && v < u {
                        continue; // the pair is emitted from source v
                    }
                    let mut set: Vec<VertexId> = Vec::new();
                    for &z in g.neighbors(v) {
                        if bfs.level(z) == Some(lv - 1) {
                            set.push(z);
                            set.extend_from_slice(&interior[&z]);
                        }
                    }
                    set.sort_unstable();
                    set.dedup();
                    if lv < epsilon {
                        interior.insert(v, set);
                    } else {
                        out.push((PairKey::new(u, v), set));
                    }
                }
                out
            },
        )
        .collect();
    let collected: Vec<(PairKey, Vec<VertexId>)> = per_source.into_iter().flatten().collect();
    Ok(CoverInstance::from_pair_lists(
        CoverMode::Gate,
        epsilon,
        n,
        collected,
    ))
}

/// Oracle-backed instance builder used to cross-check [`build_instance_bfs`]
/// and to encode the k-skip problem. Obeys the apsp guard.
///
/// Gate mode: ground pairs at distance exactly `param`, covered by every
/// x outside the pair with d(u,x) + d(x,v) = param. K-skip mode: ground
/// pairs at distance `param - 1`, endpoints allowed as coverers.
pub fn build_instance_oracle(g: &Graph, param: u32, mode: CoverMode) -> Result<CoverInstance> {
    if param < 2 {
        return Err(Error::invalid(match mode {
            CoverMode::Gate => format!("gate instances need epsilon >= 2 (got {param})"),
            CoverMode::KSkip => format!("k-skip instances need k >= 2 (got {param})"),
        }));
    }
    let target = match mode {
        CoverMode::Gate => param,
        CoverMode::KSkip => param - 1,
    };
    let n = g.n();
    let oracle = apsp_oracle(g)?;
    let per_source: Vec<Vec<(PairKey, Vec<VertexId>)>> = (0..n)
        .into_par_iter()
        .map(|u| {
            let row_u = oracle.row(u);
            let mut out = Vec::new();
            for v in (u + 1)..n {
                if row_u[v] != target {
                    continue;
                }
                let row_v = oracle.row(v);
                let mut coverers = Vec::new();
                for x in 0..n {
                    if mode == CoverMode::Gate && (x == u || x == v) {
                        continue;
                    }
                    let (du, dv) = (row_u[x], row_v[x]);
                    if du != UNREACHABLE && dv != UNREACHABLE && du + dv == target {
                        coverers.push(x);
                    }
                }
                out.push((PairKey::new(u, v), coverers));
            }
            out
        })
        .collect();
    let collected: Vec<(PairKey, Vec<VertexId>)> = per_source.into_iter().flatten().collect();
    Ok(CoverInstance::from_pair_lists(mode, param, n, collected))
}

/// One greedy pick: the chosen vertex, how many ground pairs it newly
/// covered, and its price 1/newly_covered.
#[derive(Debug, Clone)]
pub struct GreedyPick {
    pub vertex: VertexId,
    pub newly_covered: usize,
    pub price: f64,
}

#[derive(Debug, Clone, Default)]
pub struct GreedyTrace {
    pub picks: Vec<GreedyPick>,
}

impl GreedyTrace {
    pub fn size(&self) -> usize {
        self.picks.len()
    }
}

#[derive(Clone, Copy, Eq, PartialEq)]
struct HeapEntry {
    gain: usize,
    vertex: VertexId,
}

impl Ord for HeapEntry {
    fn cmp(&self, other: &Self) -> Ordering {
        // Max gain first; ties go to the smallest vertex id.
        self.gain
            .cmp(&other.gain)
            .then_with(|| other.vertex.cmp(&self.vertex))
    }
}

impl PartialOrd for HeapEntry {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

fn infeasible_error(inst: &CoverInstance, covered: &[bool]) -> Error {
    let uncoverable: Vec<PairKey> = covered
        .iter()
        .enumerate()
        .filter(|(_, &c)| !c)
        .map(|(id, _)| inst.pair(id as u32))
        .collect();
    let examples = uncoverable
        .iter()
        .take(10)
        .map(|p| format!("({}, {})", p.a(), p.b()))
        .collect::<Vec<_>>()
        .join(", ");
    Error::Infeasible {
        uncoverable: uncoverable.len(),
        examples,
    }
}

fn check_feasible(inst: &CoverInstance) -> Result<()> {
    let mut coverable = vec![false; inst.ground_size()];
    for list in &inst.candidates {
        for &id in list {
            coverable[id as usize] = true;
        }
    }
    if coverable.iter().all(|&c| c) {
        Ok(())
    } else {
        Err(infeasible_error(inst, &coverable))
    }
}

/// Greedy set cover with the minimum-price rule: each iteration selects the
/// vertex covering the most still-uncovered pairs (price 1/gain), ties
/// broken by smallest vertex id. Stale heap gains are re-evaluated on pop;
/// gains only ever shrink, so a pop whose recorded gain is still accurate
/// is the true maximum.
pub fn greedy_solve(inst: &CoverInstance) -> Result<(Vec<VertexId>, GreedyTrace)> {
    check_feasible(inst)?;
    let ground = inst.ground_size();
    let mut covered = vec![false; ground];
    let mut covered_count = 0usize;
    let mut heap: BinaryHeap<HeapEntry> = inst
        .candidates
        .iter()
        .enumerate()
        .filter(|(_, c)| !c.is_empty())
        .map(|(vertex, c)| HeapEntry {
            gain: c.len(),
            vertex,
        })
        .collect();
    let mut solution = Vec::new();
    let mut trace = GreedyTrace::default();
    while covered_count < ground {
        let entry = match heap.pop() {
            Some(e) => e,
            None => return Err(infeasible_error(inst, &covered)),
        };
        let actual = inst
            .candidate(entry.vertex)
            .iter()
            .filter(|&&id| !covered[id as usize])
            .count();
        if actual == 0 {
            continue;
        }
        if actual < entry.gain {
            heap.push(HeapEntry {
                gain: actual,
                vertex: entry.vertex,
            });
            continue;
        }
        for &id in inst.candidate(entry.vertex) {
            if !covered[id as usize] {
                covered[id as usize] = true;
                covered_count += 1;
            }
        }
        solution.push(entry.vertex);
        trace.picks.push(GreedyPick {
            vertex: entry.vertex,
            newly_covered: actual,
            price: 1.0 / actual as f64,
        });
    }
    solution.sort_unstable();
    Ok((solution, trace))
}

/// Default node budget for the exact solver.
pub const DEFAULT_EXACT_BUDGET: u64 = 5_000_000;

struct ExactSearch {
    sets: Vec<(VertexId, Vec<u64>, usize)>, // vertex, coverage bitset, |set|
    ground: usize,
    best: Vec<VertexId>,
    best_size: usize,
    nodes: u64,
    budget: u64,
}

impl ExactSearch {
    fn uncovered(&self, covered: &[u64]) -> usize {
        let mut cnt = 0;
        for w in covered {
            cnt += w.count_ones() as usize;
        }
        self.ground - cnt
    }

    fn dfs(&mut self, idx: usize, covered: Vec<u64>, chosen: &mut Vec<VertexId>) -> Result<()> {
        self.nodes += 1;
        if self.nodes > self.budget {
            return Err(Error::guard(format!(
                "exact set-cover search exceeded its {} node budget",
                self.budget
            )));
        }
        let uncov = self.uncovered(&covered);
        if uncov == 0 {
            if chosen.len() < self.best_size {
                self.best_size = chosen.len();
                self.best = chosen.clone();
            }
            return Ok(());
        }
        if idx == self.sets.len() {
            return Ok(());
        }
        // Lower bound: even the best remaining set covers at most max_gain
        // new pairs per pick.
        let mut max_gain = 0usize;
        for (_, bits, _) in &self.sets[idx..] {
            let mut gain = 0usize;
            for (w, c) in bits.iter().zip(&covered) {
                gain += (w & !c).count_ones() as usize;
            }
            max_gain = max_gain.max(gain);
        }
        if max_gain == 0 {
            return Ok(()); // remaining sets cannot finish the cover
        }
        let lower = uncov.div_ceil(max_gain);
        if chosen.len() + lower >= self.best_size {
            return Ok(());
        }
        // Include sets[idx].
        let mut with = covered.clone();
        for (w, c) in self.sets[idx].1.iter().zip(with.iter_mut()) {
            *c |= w;
        }
        chosen.push(self.sets[idx].0);
        self.dfs(idx + 1, with, chosen)?;
        chosen.pop();
        // Exclude sets[idx].
        self.dfs(idx + 1, covered, chosen)
    }
}

/// Provably minimum cover by branch-and-bound over include/exclude
/// decisions, seeded with the greedy solution as the upper bound. Intended
/// for tiny instances; errors out when the node budget is exhausted.
pub fn exact_solve(inst: &CoverInstance, budget: u64) -> Result<Vec<VertexId>> {
    check_feasible(inst)?;
    let ground = inst.ground_size();
    if ground == 0 {
        return Ok(Vec::new());
    }
    let words = ground.div_ceil(64);
    let mut sets: Vec<(VertexId, Vec<u64>, usize)> = inst
        .candidate_vertices()
        .map(|v| {
            let mut bits = vec![0u64; words];
            for &id in inst.candidate(v) {
                bits[id as usize / 64] |= 1u64 << (id % 64);
            }
            (v, bits, inst.candidate(v).len())
        })
        .collect();
    sets.sort_by(|a, b| b.2.cmp(&a.2).then(a.0.cmp(&b.0)));
    let (greedy, _) = greedy_solve(inst)?;
    let mut search = ExactSearch {
        sets,
        ground,
        best_size: greedy.len(),
        best: greedy,
        nodes: 0,
        budget,
    };
    let covered = vec![0u64; words];
    let mut chosen = Vec::new();
    search.dfs(0, covered, &mut chosen)?;
    let mut best = search.best;
    best.sort_unstable();
    Ok(best)
}

/// Checks that `vertices` covers the whole ground set of `inst`.
pub fn is_cover(inst: &CoverInstance, vertices: &[VertexId]) -> bool {
    let mut covered = vec![false; inst.ground_size()];
    for &v in vertices {
        for &id in inst.candidate(v) {
            covered[id as usize] = true;
        }
    }
    covered.iter().all(|&c| c)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gen::gen_er;

    fn pk(a: VertexId, b: VertexId) -> PairKey {
        PairKey::new(a, b)
    }

    fn candidate_pairs(inst: &CoverInstance, v: VertexId) -> Vec<PairKey> {
        inst.candidate(v).iter().map(|&id| inst.pair(id)).collect()
    }

    #[test]
    fn pairkey_canonicalizes() {
        assert_eq!(pk(4, 1), pk(1, 4));
        assert_eq!(pk(1, 4).a(), 1);
        assert_eq!(pk(1, 4).b(), 4);
    }

    #[test]
    fn bfs_instance_on_path5() {
        let g = Graph::path(5);
        let inst = build_instance_bfs(&g, 3).unwrap();
        assert_eq!(inst.pairs(), &[pk(0, 3), pk(1, 4)]);
        assert_eq!(candidate_pairs(&inst, 1), vec![pk(0, 3)]);
        assert_eq!(candidate_pairs(&inst, 2), vec![pk(0, 3), pk(1, 4)]);
        assert_eq!(candidate_pairs(&inst, 3), vec![pk(1, 4)]);
        assert!(inst.candidate(0).is_empty());
        assert!(inst.candidate(4).is_empty());
        inst.validate().unwrap();
    }

    #[test]
    fn bfs_instance_on_hexagon() {
        let g = Graph::cycle(6);
        let inst = build_instance_bfs(&g, 3).unwrap();
        // The three antipodal pairs.
        assert_eq!(inst.pairs(), &[pk(0, 3), pk(1, 4), pk(2, 5)]);
        for v in 0..6 {
            assert_eq!(inst.candidate(v).len(), 2, "C_{v}");
        }
        inst.validate().unwrap();
    }

    #[test]
    fn bfs_instance_empty_beyond_diameter() {
        let g = Graph::path(3); // diameter 2
        let inst = build_instance_bfs(&g, 3).unwrap();
        assert_eq!(inst.ground_size(), 0);
        for v in 0..3 {
            assert!(inst.candidate(v).is_empty());
        }
    }

    #[test]
    fn bfs_instance_rejects_epsilon_one() {
        let g = Graph::path(3);
        assert!(matches!(
            build_instance_bfs(&g, 1),
            Err(Error::InvalidArgument(_))
        ));
    }

    #[test]
    fn oracle_instance_kskip_on_path5() {
        let g = Graph::path(5);
        let inst = build_instance_oracle(&g, 3, CoverMode::KSkip).unwrap();
        assert_eq!(inst.pairs(), &[pk(0, 2), pk(1, 3), pk(2, 4)]);
        // Vertex 2 lies on a shortest path of all three pairs (as an
        // endpoint for two of them).
        assert_eq!(candidate_pairs(&inst, 2), vec![pk(0, 2), pk(1, 3), pk(2, 4)]);
    }

    #[test]
    fn oracle_instance_kskip_triangle_is_vertex_cover() {
        let g = Graph::cycle(3);
        let inst = build_instance_oracle(&g, 2, CoverMode::KSkip).unwrap();
        assert_eq!(inst.ground_size(), 3); // the three edges
        for v in 0..3 {
            let pairs = candidate_pairs(&inst, v);
            assert_eq!(pairs.len(), 2);
            assert!(pairs.iter().all(|p| p.contains(v)));
        }
    }

    #[test]
    fn builders_agree_on_seeded_corpus() {
        // Gate-mode BFS construction must match the oracle construction on
        // ground set and every candidate set, over a 100-graph corpus with
        // n <= 300, density 2..4, epsilon in {3,4,5}.
        for seed in 0..100u64 {
            let n = 40 + (seed as usize % 7) * 37; // 40..262
            let density = 2.0 + (seed % 3) as f64;
            let g = gen_er(n, density, seed).unwrap();
            let eps = 3 + (seed % 3) as u32;
            let a = build_instance_bfs(&g, eps).unwrap();
            let b = build_instance_oracle(&g, eps, CoverMode::Gate).unwrap();
            assert_eq!(a.pairs(), b.pairs(), "ground mismatch seed={seed} eps={eps}");
            for v in 0..g.n() {
                assert_eq!(
                    a.candidate(v),
                    b.candidate(v),
                    "candidate mismatch seed={seed} eps={eps} v={v}"
                );
            }
        }
    }

    #[test]
    fn greedy_on_path5_picks_middle() {
        let g = Graph::path(5);
        let inst = build_instance_bfs(&g, 3).unwrap();
        let (sol, trace) = greedy_solve(&inst).unwrap();
        assert_eq!(sol, vec![2]);
        assert_eq!(trace.picks.len(), 1);
        assert_eq!(trace.picks[0].newly_covered, 2);
        assert!((trace.picks[0].price - 0.5).abs() < 1e-12);
    }

    #[test]
    fn greedy_on_hexagon_needs_two() {
        let g = Graph::cycle(6);
        let inst = build_instance_bfs(&g, 3).unwrap();
        let (sol, trace) = greedy_solve(&inst).unwrap();
        assert_eq!(sol.len(), 2);
        assert_eq!(trace.picks[0].newly_covered, 2);
        assert_eq!(trace.picks[1].newly_covered, 1);
        assert!(is_cover(&inst, &sol));
    }

    #[test]
    fn greedy_empty_ground() {
        let g = Graph::path(3);
        let inst = build_instance_bfs(&g, 3).unwrap();
        let (sol, trace) = greedy_solve(&inst).unwrap();
        assert!(sol.is_empty());
        assert!(trace.picks.is_empty());
    }

    #[test]
    fn greedy_deterministic() {
        let g = gen_er(150, 3.0, 9).unwrap();
        let inst = build_instance_bfs(&g, 3).unwrap();
        let (s1, t1) = greedy_solve(&inst).unwrap();
        let (s2, t2) = greedy_solve(&inst).unwrap();
        assert_eq!(s1, s2);
        let p1: Vec<_> = t1.picks.iter().map(|p| (p.vertex, p.newly_covered)).collect();
        let p2: Vec<_> = t2.picks.iter().map(|p| (p.vertex, p.newly_covered)).collect();
        assert_eq!(p1, p2);
    }

    #[test]
    fn greedy_soundness_on_corpus() {
        for seed in 100..120 {
            let g = gen_er(120, 2.5, seed).unwrap();
            let inst = build_instance_bfs(&g, 3).unwrap();
            let (sol, trace) = greedy_solve(&inst).unwrap();
            assert!(is_cover(&inst, &sol));
            assert!(trace.picks.iter().all(|p| p.newly_covered > 0));
        }
    }

    /// Exhaustive subset enumeration over candidate vertices; the
    /// independent oracle for the branch-and-bound solver.
    fn exhaustive_min(inst: &CoverInstance) -> usize {
        if inst.ground_size() == 0 {
            return 0;
        }
        let verts: Vec<VertexId> = inst.candidate_vertices().collect();
        assert!(verts.len() <= 20, "exhaustive oracle is for tiny instances");
        let mut best = usize::MAX;
        for mask in 0u32..(1 << verts.len()) {
            let size = mask.count_ones() as usize;
            if size >= best {
                continue;
            }
            let chosen: Vec<VertexId> = verts
                .iter()
                .enumerate()
                .filter(|(i, _)| mask >> i & 1 == 1)
                .map(|(_, &v)| v)
                .collect();
            if is_cover(inst, &chosen) {
                best = size;
            }
        }
        best
    }

    #[test]
    fn exact_matches_exhaustive_on_fixtures() {
        let path = Graph::path(5);
        let inst = build_instance_bfs(&path, 3).unwrap();
        assert_eq!(exact_solve(&inst, 1_000_000).unwrap().len(), 1);
        assert_eq!(exhaustive_min(&inst), 1);

        let hexagon = Graph::cycle(6);
        let inst = build_instance_bfs(&hexagon, 3).unwrap();
        assert_eq!(exact_solve(&inst, 1_000_000).unwrap().len(), 2);
        assert_eq!(exhaustive_min(&inst), 2);

        let small = Graph::path(3);
        let inst = build_instance_bfs(&small, 3).unwrap();
        assert!(exact_solve(&inst, 1_000_000).unwrap().is_empty());
    }

    #[test]
    fn exact_matches_exhaustive_on_random_tiny() {
        for seed in 0..25 {
            let g = gen_er(12, 1.6, 500 + seed).unwrap();
            for (mode, p) in [(CoverMode::Gate, 3), (CoverMode::KSkip, 3)] {
                let inst = build_instance_oracle(&g, p, mode).unwrap();
                let exact = exact_solve(&inst, 10_000_000).unwrap();
                assert!(is_cover(&inst, &exact) || inst.ground_size() == 0);
                assert_eq!(
                    exact.len(),
                    exhaustive_min(&inst),
                    "seed={seed} mode={mode:?}"
                );
            }
        }
    }

    #[test]
    fn exact_budget_errors() {
        let g = gen_er(60, 3.0, 11).unwrap();
        let inst = build_instance_bfs(&g, 3).unwrap();
        assert!(matches!(
            exact_solve(&inst, 5),
            Err(Error::ResourceGuard(_))
        ));
    }

    #[test]
    fn infeasible_instance_reports_pairs() {
        // Hand-built instance with an uncoverable pair.
        let inst = CoverInstance {
            mode: CoverMode::Gate,
            param: 3,
            pairs: vec![pk(0, 3), pk(1, 4)],
            candidates: vec![vec![], vec![0], vec![], vec![], vec![]],
        };
        match greedy_solve(&inst) {
            Err(Error::Infeasible { uncoverable, examples }) => {
                assert_eq!(uncoverable, 1);
                assert!(examples.contains("(1, 4)"));
            }
            other => panic!("expected infeasible, got {other:?}"),
        }
    }

    #[test]
    fn dump_format() {
        let g = Graph::path(5);
        let inst = build_instance_bfs(&g, 3).unwrap();
        let labels = LabelTable::identity(5);
        let mut buf = Vec::new();
        inst.write_text(&mut buf, &labels).unwrap();
        let text = String::from_utf8(buf).unwrap();
        assert_eq!(
            text,
            "gate 3 2\n0 3\n1 4\n1: 0 3\n2: 0 3, 1 4\n3: 1 4\n"
        );
    }
}
