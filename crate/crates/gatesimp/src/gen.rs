//! Seeded random graph generators used by the benchmarks and the test
//! corpus: uniform Erdős–Rényi graphs by edge density and a
//! preferential-attachment scale-free family.

use std::collections::HashSet;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha12Rng;

use crate::error::{Error, Result};
use crate::graph::{Graph, VertexId};

fn pair_count(n: usize) -> u64 {
    let n = n as u64;
    n * (n.saturating_sub(1)) / 2
}

/// Decodes a pair rank in `[0, n*(n-1)/2)` into the corresponding `(i, j)`
/// with `i < j`, ordering pairs lexicographically.
fn unrank_pair(n: usize, rank: u64) -> (VertexId, VertexId) {
    // offset(i) = number of pairs whose first element is < i.
    let offset = |i: u64| -> u64 {
        let n = n as u64;
        i * n - i * (i + 1) / 2
    };
    let mut lo = 0u64;
    let mut hi = n as u64 - 1;
    while lo < hi {
        let mid = (lo + hi).div_ceil(2);
        if offset(mid) <= rank {
            lo = mid;
        } else {
            hi = mid - 1;
        }
    }
    let i = lo;
    let j = i + 1 + (rank - offset(i));
    (i as VertexId, j as VertexId)
}

/// Erdős–Rényi graph with exactly `round(density * n)` distinct edges drawn
/// uniformly without replacement. Deterministic for a fixed seed.
pub fn gen_er(n: usize, density: f64, seed: u64) -> Result<Graph> {
    if density.is_nan() || density < 0.0 {
        return Err(Error::invalid(format!("bad edge density {density}")));
    }
    let target = (density * n as f64).round() as u64;
    let total = pair_count(n);
    if target > total {
        return Err(Error::invalid(format!(
            "cannot place {target} edges in a {n}-vertex simple graph (max {total})"
        )));
    }
    let mut rng = ChaCha12Rng::seed_from_u64(seed);
    // Floyd's sampling: uniform m-subset of pair ranks, robust even at full
    // saturation.
    let mut chosen: HashSet<u64> = HashSet::with_capacity(target as usize);
    for j in (total - target)..total {
        let t = rng.gen_range(0..=j);
        if !chosen.insert(t) {
            chosen.insert(j);
        }
    }
    let mut ranks: Vec<u64> = chosen.into_iter().collect();
    ranks.sort_unstable();
    Ok(Graph::from_edges(
        n,
        ranks.into_iter().map(|r| unrank_pair(n, r)),
    ))
}

/// Scale-free graph grown by preferential attachment: a complete seed clique
/// of `round(density) + 1` vertices, then each new vertex attaches
/// `round(density)` distinct edges to existing vertices with probability
/// proportional to degree. Deterministic for a fixed seed.
pub fn gen_scale_free(n: usize, density: f64, seed: u64) -> Result<Graph> {
    let d = density.round() as usize;
    if d < 1 {
        return Err(Error::invalid(format!(
            "scale-free density must round to at least 1 (got {density})"
        )));
    }
    if n <= d {
        return Err(Error::invalid(format!(
            "scale-free generator needs n > density ({n} <= {d})"
        )));
    }
    let mut rng = ChaCha12Rng::seed_from_u64(seed);
    let mut edges: Vec<(VertexId, VertexId)> = Vec::new();
    // Degree-weighted sampling pool: every edge contributes both endpoints.
    let mut pool: Vec<VertexId> = Vec::new();
    for u in 0..=d {
        for v in (u + 1)..=d {
            edges.push((u, v));
            pool.push(u);
            pool.push(v);
        }
    }
    let mut picked: Vec<VertexId> = Vec::with_capacity(d);
    for t in (d + 1)..n {
        picked.clear();
        while picked.len() < d {
            let candidate = pool[rng.gen_range(0..pool.len())];
            if !picked.contains(&candidate) {
                picked.push(candidate);
            }
        }
        for &target in &picked {
            edges.push((target, t));
            pool.push(target);
            pool.push(t);
        }
    }
    Ok(Graph::from_edges(n, edges))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn er_edge_count_matches_density() {
        let g = gen_er(10_000, 2.0, 7).unwrap();
        assert_eq!(g.m(), 20_000);
        g.validate().unwrap();
    }

    #[test]
    fn er_saturates_to_complete_graph() {
        // round(1.5 * 4) = 6 = C(4,2).
        let g = gen_er(4, 1.5, 3).unwrap();
        assert_eq!(g.m(), 6);
        for u in 0..4 {
            assert_eq!(g.degree(u), 3);
        }
    }

    #[test]
    fn er_rejects_infeasible_count() {
        assert!(matches!(
            gen_er(4, 2.0, 1),
            Err(Error::InvalidArgument(_))
        ));
    }

    #[test]
    fn er_deterministic_per_seed() {
        let a = gen_er(500, 3.0, 42).unwrap();
        let b = gen_er(500, 3.0, 42).unwrap();
        assert_eq!(a, b);
    }

    #[test]
    fn er_seeds_produce_distinct_graphs() {
        let graphs: Vec<Graph> = (0..10).map(|s| gen_er(100, 2.0, s).unwrap()).collect();
        for i in 0..graphs.len() {
            for j in (i + 1)..graphs.len() {
                assert_ne!(graphs[i], graphs[j], "seeds {i} and {j} collided");
            }
        }
    }

    #[test]
    fn scale_free_edge_count() {
        let g = gen_scale_free(10_000, 3.0, 5).unwrap();
        // d*(n - d - 1) new edges plus the seed clique.
        assert_eq!(g.m(), 3 * (10_000 - 4) + 6);
        g.validate().unwrap();
    }

    #[test]
    fn scale_free_minimal_is_seed_clique() {
        let g = gen_scale_free(4, 3.0, 1).unwrap();
        assert_eq!(g.m(), 6);
        assert_eq!(g.n(), 4);
    }

    #[test]
    fn scale_free_is_degree_skewed() {
        // Averaged over seeds, early (low-id) vertices should out-degree the
        // late arrivals; checked statistically against a rerun of the
        // generator itself.
        let mut early = 0u64;
        let mut late = 0u64;
        for seed in 0..10 {
            let g = gen_scale_free(400, 2.0, seed).unwrap();
            let n = g.n();
            early += (0..n / 10).map(|v| g.degree(v) as u64).sum::<u64>();
            late += ((9 * n) / 10..n).map(|v| g.degree(v) as u64).sum::<u64>();
        }
        assert!(
            early > late,
            "preferential attachment should skew degree mass early (early={early}, late={late})"
        );
    }

    #[test]
    fn unrank_covers_all_pairs() {
        let n = 7;
        let mut seen = HashSet::new();
        for r in 0..pair_count(n) {
            let (i, j) = unrank_pair(n, r);
            assert!(i < j && j < n);
            assert!(seen.insert((i, j)));
        }
        assert_eq!(seen.len() as u64, pair_count(n));
    }
}
