//! Discovery front-ends producing validated gate-vertex sets: SC (greedy
//! set cover), FS (the degree-ordered adaptive-sampling baseline), and the
//! k-skip reduction.

use std::io::{BufRead, Write};
use std::time::Instant;

use crate::error::{Error, Result};
use crate::graph::{BfsScratch, Graph, LabelTable, VertexId};
use crate::setcover::{
    build_instance_bfs, build_instance_oracle, exact_solve, greedy_solve, CoverInstance,
    CoverMode, DEFAULT_EXACT_BUDGET,
};
use crate::verify;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum GateMode {
    Gate { epsilon: u32 },
    KSkip { k: u32 },
}

impl GateMode {
    pub fn param(&self) -> u32 {
        match *self {
            GateMode::Gate { epsilon } => epsilon,
            GateMode::KSkip { k } => k,
        }
    }

    pub fn as_str(&self) -> &'static str {
        match self {
            GateMode::Gate { .. } => "gate",
            GateMode::KSkip { .. } => "kskip",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Method {
    Sc,
    Fs,
    Exact,
}

impl Method {
    pub fn as_str(&self) -> &'static str {
        match self {
            Method::Sc => "sc",
            Method::Fs => "fs",
            Method::Exact => "exact",
        }
    }

    pub fn parse(s: &str) -> Result<Method> {
        match s {
            "sc" => Ok(Method::Sc),
            "fs" => Ok(Method::Fs),
            "exact" => Ok(Method::Exact),
            other => Err(Error::invalid(format!(
                "unknown method {other:?} (expected sc, fs, or exact)"
            ))),
        }
    }
}

#[derive(Debug, Clone, Copy, Default)]
pub struct DiscoveryStats {
    pub build_ms: u64,
    /// Ground pairs the set was required to cover.
    pub pairs_covered: usize,
}

/// A discovered vertex set tagged with its mode, method, and build stats.
/// Vertices are sorted ascending.
#[derive(Debug, Clone)]
pub struct GateVertexSet {
    pub vertices: Vec<VertexId>,
    pub mode: GateMode,
    pub method: Method,
    pub stats: DiscoveryStats,
}

impl GateVertexSet {
    pub fn size(&self) -> usize {
        self.vertices.len()
    }

    pub fn contains(&self, v: VertexId) -> bool {
        self.vertices.binary_search(&v).is_ok()
    }

    /// Header `mode param method size`, then one vertex label per line.
    pub fn write_text<W: Write>(&self, w: &mut W, labels: &LabelTable) -> Result<()> {
        writeln!(
            w,
            "{} {} {} {}",
            self.mode.as_str(),
            self.mode.param(),
            self.method.as_str(),
            self.size()
        )?;
        for &v in &self.vertices {
            writeln!(w, "{}", labels.label(v))?;
        }
        Ok(())
    }

    pub fn read_text<R: BufRead>(r: R, labels: &LabelTable) -> Result<GateVertexSet> {
        let mut lines = r.lines().enumerate();
        let header = loop {
            match lines.next() {
                Some((idx, line)) => {
                    let line = line?;
                    let t = line.trim().to_string();
                    if t.is_empty() || t.starts_with('#') {
                        continue;
                    }
                    break (idx + 1, t);
                }
                None => {
                    return Err(Error::Parse {
                        line: 1,
                        message: "missing gate-set header".into(),
                    })
                }
            }
        };
        let (line_no, header) = header;
        let parts: Vec<&str> = header.split_whitespace().collect();
        if parts.len() != 4 {
            return Err(Error::Parse {
                line: line_no,
                message: format!("expected `mode param method size`, got {header:?}"),
            });
        }
        let param: u32 = parts[1].parse().map_err(|_| Error::Parse {
            line: line_no,
            message: format!("bad parameter {:?}", parts[1]),
        })?;
        if param < 2 {
            return Err(Error::Parse {
                line: line_no,
                message: format!("mode parameter must be at least 2 (got {param})"),
            });
        }
        let mode = match parts[0] {
            "gate" => GateMode::Gate { epsilon: param },
            "kskip" => GateMode::KSkip { k: param },
            other => {
                return Err(Error::Parse {
                    line: line_no,
                    message: format!("unknown mode {other:?}"),
                })
            }
        };
        let method = Method::parse(parts[2]).map_err(|e| Error::Parse {
            line: line_no,
            message: e.to_string(),
        })?;
        let size: usize = parts[3].parse().map_err(|_| Error::Parse {
            line: line_no,
            message: format!("bad size {:?}", parts[3]),
        })?;
        let mut vertices = Vec::with_capacity(size);
        for (idx, line) in lines {
            let line = line?;
            let t = line.trim();
            if t.is_empty() || t.starts_with('#') {
                continue;
            }
            let v = labels.id(t).ok_or_else(|| Error::Parse {
                line: idx + 1,
                message: format!("unknown vertex label {t:?}"),
            })?;
            vertices.push(v);
        }
        if vertices.len() != size {
            return Err(Error::Parse {
                line: line_no,
                message: format!("header claims {size} vertices, found {}", vertices.len()),
            });
        }
        vertices.sort_unstable();
        vertices.dedup();
        if vertices.len() != size {
            return Err(Error::Parse {
                line: line_no,
                message: "duplicate vertex in gate set".into(),
            });
        }
        Ok(GateVertexSet {
            vertices,
            mode,
            method,
            stats: DiscoveryStats::default(),
        })
    }
}

#[derive(Debug, Clone, Copy)]
pub struct DiscoverOptions {
    /// Validate the result against the matching cover check before
    /// returning. On by default; benchmarks may skip it.
    pub self_check: bool,
    /// Node budget for the exact solver.
    pub exact_budget: u64,
}

impl Default for DiscoverOptions {
    fn default() -> Self {
        DiscoverOptions {
            self_check: true,
            exact_budget: DEFAULT_EXACT_BUDGET,
        }
    }
}

fn self_check_gate(g: &Graph, epsilon: u32, vertices: &[VertexId]) -> Result<()> {
    let report = verify::check_gate_cover_bfs(g, epsilon, vertices)?;
    if report.pass {
        Ok(())
    } else {
        Err(Error::SelfCheckFailed {
            check: report.check,
            violations: report.violations_total,
        })
    }
}

fn self_check_kskip(g: &Graph, k: u32, vertices: &[VertexId]) -> Result<()> {
    let report = verify::check_kskip_cover_bfs(g, k, vertices)?;
    if report.pass {
        Ok(())
    } else {
        Err(Error::SelfCheckFailed {
            check: report.check,
            violations: report.violations_total,
        })
    }
}

/// Gate-vertex discovery through the set-cover reduction: build the
/// instance with local BFS, solve it greedily.
pub fn discover_sc(g: &Graph, epsilon: u32) -> Result<GateVertexSet> {
    discover_sc_with(g, epsilon, &DiscoverOptions::default())
}

pub fn discover_sc_with(g: &Graph, epsilon: u32, opts: &DiscoverOptions) -> Result<GateVertexSet> {
    let t0 = Instant::now();
    let inst = build_instance_bfs(g, epsilon)?;
    let (vertices, _trace) = greedy_solve(&inst)?;
    let stats = DiscoveryStats {
        build_ms: t0.elapsed().as_millis() as u64,
        pairs_covered: inst.ground_size(),
    };
    if opts.self_check {
        self_check_gate(g, epsilon, &vertices)?;
    }
    Ok(GateVertexSet {
        vertices,
        mode: GateMode::Gate { epsilon },
        method: Method::Sc,
        stats,
    })
}

/// Same reduction, solved by the set-cover greedy over an instance the
/// caller already built (used when the instance is also being dumped).
pub fn discover_from_instance(
    g: &Graph,
    inst: &CoverInstance,
    method: Method,
    opts: &DiscoverOptions,
) -> Result<GateVertexSet> {
    let t0 = Instant::now();
    let vertices = match method {
        Method::Sc => greedy_solve(inst)?.0,
        Method::Exact => exact_solve(inst, opts.exact_budget)?,
        Method::Fs => {
            return Err(Error::invalid(
                "fs does not run on a set-cover instance",
            ))
        }
    };
    let stats = DiscoveryStats {
        build_ms: t0.elapsed().as_millis() as u64,
        pairs_covered: inst.ground_size(),
    };
    let mode = match inst.mode() {
        CoverMode::Gate => GateMode::Gate {
            epsilon: inst.param(),
        },
        CoverMode::KSkip => GateMode::KSkip { k: inst.param() },
    };
    if opts.self_check {
        match mode {
            GateMode::Gate { epsilon } => self_check_gate(g, epsilon, &vertices)?,
            GateMode::KSkip { k } => self_check_kskip(g, k, &vertices)?,
        }
    }
    Ok(GateVertexSet {
        vertices,
        mode,
        method,
        stats,
    })
}

/// Adaptive-sampling baseline. Vertices are processed in descending degree
/// order (ties by ascending id); each vertex roots a depth-(epsilon-2) BFS
/// shortest-path tree and is added whenever some root-to-leaf path avoids
/// every vertex picked so far. The result is an (epsilon-1)-skip cover and
/// therefore a gate-vertex set at epsilon.
pub fn discover_fs(g: &Graph, epsilon: u32) -> Result<GateVertexSet> {
    discover_fs_with(g, epsilon, &DiscoverOptions::default())
}

pub fn discover_fs_with(g: &Graph, epsilon: u32, opts: &DiscoverOptions) -> Result<GateVertexSet> {
    if epsilon < 3 {
        return Err(Error::invalid(format!(
            "fs needs epsilon >= 3 so the sample trees have depth epsilon-2 >= 1 (got {epsilon})"
        )));
    }
    let t0 = Instant::now();
    let n = g.n();
    let depth = epsilon - 2;
    let mut order: Vec<VertexId> = (0..n).collect();
    order.sort_by(|&a, &b| g.degree(b).cmp(&g.degree(a)).then(a.cmp(&b)));
    let mut in_cover = vec![false; n];
    let mut covered = vec![false; n];
    let mut picked = Vec::new();
    let mut bfs = BfsScratch::new(n);
    let mut pairs_seen = 0usize;
    for &root in &order {
        bfs.run(g, root, depth);
        // Tree parent of v: the smallest-id neighbor one level up. Visit
        // order is level order, so each parent's coverage mark is final
        // before its children read it.
        let mut needs_root = false;
        for &v in bfs.order() {
            let lv = bfs.level(v).expect("visited");
            if v == root {
                covered[v] = in_cover[v];
                continue;
            }
            let parent = *g
                .neighbors(v)
                .iter()
                .find(|&&z| bfs.level(z) == Some(lv - 1))
                .expect("non-root tree vertex has a parent");
            covered[v] = covered[parent] || in_cover[v];
            if lv == depth {
                if root < v {
                    pairs_seen += 1;
                }
                if !covered[v] {
                    needs_root = true;
                }
            }
        }
        for &v in bfs.order() {
            covered[v] = false;
        }
        if needs_root {
            in_cover[root] = true;
            picked.push(root);
        }
    }
    picked.sort_unstable();
    let stats = DiscoveryStats {
        build_ms: t0.elapsed().as_millis() as u64,
        pairs_covered: pairs_seen,
    };
    if opts.self_check {
        self_check_gate(g, epsilon, &picked)?;
    }
    Ok(GateVertexSet {
        vertices: picked,
        mode: GateMode::Gate { epsilon },
        method: Method::Fs,
        stats,
    })
}

/// Minimum k-skip cover through the same set-cover machinery, greedily or
/// exactly.
pub fn discover_kskip(g: &Graph, k: u32, method: Method) -> Result<GateVertexSet> {
    discover_kskip_with(g, k, method, &DiscoverOptions::default())
}

pub fn discover_kskip_with(
    g: &Graph,
    k: u32,
    method: Method,
    opts: &DiscoverOptions,
) -> Result<GateVertexSet> {
    if method == Method::Fs {
        return Err(Error::invalid(
            "k-skip discovery supports methods sc and exact",
        ));
    }
    let t0 = Instant::now();
    let inst = build_instance_oracle(g, k, CoverMode::KSkip)?;
    let vertices = match method {
        Method::Sc => greedy_solve(&inst)?.0,
        Method::Exact => exact_solve(&inst, opts.exact_budget)?,
        Method::Fs => unreachable!(),
    };
    let stats = DiscoveryStats {
        build_ms: t0.elapsed().as_millis() as u64,
        pairs_covered: inst.ground_size(),
    };
    if opts.self_check {
        self_check_kskip(g, k, &vertices)?;
    }
    Ok(GateVertexSet {
        vertices,
        mode: GateMode::KSkip { k },
        method,
        stats,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gen::{gen_er, gen_scale_free};

    #[test]
    fn sc_on_path5() {
        let gv = discover_sc(&Graph::path(5), 3).unwrap();
        assert_eq!(gv.vertices, vec![2]);
        assert_eq!(gv.stats.pairs_covered, 2);
        assert_eq!(gv.mode, GateMode::Gate { epsilon: 3 });
    }

    #[test]
    fn sc_empty_when_diameter_below_epsilon() {
        let gv = discover_sc(&Graph::path(3), 4).unwrap();
        assert!(gv.vertices.is_empty());
    }

    #[test]
    fn sc_on_hexagon() {
        let gv = discover_sc(&Graph::cycle(6), 3).unwrap();
        assert_eq!(gv.size(), 2);
    }

    #[test]
    fn fs_on_path5() {
        let gv = discover_fs(&Graph::path(5), 3).unwrap();
        assert_eq!(gv.vertices, vec![1, 2, 3]);
        // Must also be a valid 2-skip cover.
        let r = verify::check_kskip_cover_bfs(&Graph::path(5), 2, &gv.vertices).unwrap();
        assert!(r.pass);
    }

    #[test]
    fn fs_on_star_picks_center() {
        let g = Graph::star(6);
        let gv = discover_fs(&g, 3).unwrap();
        assert_eq!(gv.vertices, vec![0]);
        let r = verify::check_kskip_cover_bfs(&g, 2, &gv.vertices).unwrap();
        assert!(r.pass);
    }

    #[test]
    fn fs_on_single_edge() {
        let g = Graph::from_edges(2, [(0, 1)]);
        let gv = discover_fs(&g, 3).unwrap();
        assert!(!gv.vertices.is_empty() && gv.size() <= 2);
    }

    #[test]
    fn fs_rejects_small_epsilon() {
        assert!(matches!(
            discover_fs(&Graph::path(5), 2),
            Err(Error::InvalidArgument(_))
        ));
    }

    #[test]
    fn kskip_on_path5() {
        let gv = discover_kskip(&Graph::path(5), 3, Method::Sc).unwrap();
        assert_eq!(gv.vertices, vec![2]);
        assert_eq!(gv.mode, GateMode::KSkip { k: 3 });
    }

    #[test]
    fn kskip_exact_triangle_is_vertex_cover() {
        let gv = discover_kskip(&Graph::cycle(3), 2, Method::Exact).unwrap();
        assert_eq!(gv.size(), 2);
    }

    #[test]
    fn kskip_beyond_diameter_is_empty() {
        let gv = discover_kskip(&Graph::path(4), 6, Method::Sc).unwrap();
        assert!(gv.vertices.is_empty());
    }

    #[test]
    fn kskip_rejects_fs_method() {
        assert!(matches!(
            discover_kskip(&Graph::path(5), 3, Method::Fs),
            Err(Error::InvalidArgument(_))
        ));
    }

    #[test]
    fn every_method_validates_on_random_corpus() {
        for seed in 0..12 {
            let g = if seed % 2 == 0 {
                gen_er(200, 2.5, seed).unwrap()
            } else {
                gen_scale_free(200, 3.0, seed).unwrap()
            };
            for eps in [3u32, 4] {
                let sc = discover_sc(&g, eps).unwrap();
                let fs = discover_fs(&g, eps).unwrap();
                let gate = verify::check_gate_cover(&g, eps, &sc.vertices).unwrap();
                assert!(gate.pass, "sc seed={seed} eps={eps}");
                let gate = verify::check_gate_cover(&g, eps, &fs.vertices).unwrap();
                assert!(gate.pass, "fs seed={seed} eps={eps}");
            }
            let ks = discover_kskip(&g, 3, Method::Sc).unwrap();
            let r = verify::check_kskip_cover(&g, 3, &ks.vertices).unwrap();
            assert!(r.pass, "kskip seed={seed}");
        }
    }

    #[test]
    fn cover_implications_between_modes() {
        for seed in 20..26 {
            let g = gen_er(150, 2.0, seed).unwrap();
            // A k-skip cover at k answers as a gate set at epsilon = k+1.
            let ks = discover_kskip(&g, 3, Method::Sc).unwrap();
            let r = verify::check_gate_cover(&g, 4, &ks.vertices).unwrap();
            assert!(r.pass, "kscgv seed={seed}");
            // Gate set at epsilon is an (epsilon+1)-skip cover.
            let sc = discover_sc(&g, 3).unwrap();
            let r = verify::check_kskip_cover(&g, 4, &sc.vertices).unwrap();
            assert!(r.pass, "gvksc seed={seed}");
        }
    }

    #[test]
    fn gate_set_round_trip() {
        let g = Graph::path(5);
        let gv = discover_sc(&g, 3).unwrap();
        let labels = LabelTable::identity(5);
        let mut buf = Vec::new();
        gv.write_text(&mut buf, &labels).unwrap();
        assert_eq!(String::from_utf8_lossy(&buf), "gate 3 sc 1\n2\n");
        let back = GateVertexSet::read_text(buf.as_slice(), &labels).unwrap();
        assert_eq!(back.vertices, vec![2]);
        assert_eq!(back.mode, GateMode::Gate { epsilon: 3 });
        assert_eq!(back.method, Method::Sc);
    }
}
