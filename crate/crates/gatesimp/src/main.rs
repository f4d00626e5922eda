//! Command-line front end: generate / discover / gategraph / query /
//! verify / bench over edge-list files or seeded generator families.
//!
//! Exit codes: 0 success, 2 usage or argument error, 3 verification
//! failure, 4 resource guard.

use std::fs::{self, File};
use std::io::{BufReader, BufWriter, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::Instant;

use clap::{Args, Parser, Subcommand};
use serde_json::json;

use gatesimp::error::{Error, Result};
use gatesimp::gategraph::{
    build_local_gate_graph, sparsify, QueryContext, QueryResult, WeightedGraph,
};
use gatesimp::gates::{
    discover_from_instance, discover_fs_with, DiscoverOptions, GateMode, GateVertexSet, Method,
};
use gatesimp::graph::{graph_stats, load_edge_list, write_edge_list, Graph, LabelTable, APSP_GUARD};
use gatesimp::setcover::{build_instance_bfs, build_instance_oracle, CoverInstance, CoverMode};
use gatesimp::verify;

#[derive(Parser)]
#[command(
    name = "gatesimp",
    version,
    about = "Gate-vertex sets, k-skip covers, and distance-preserving gate graphs"
)]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
    /// Zero out timing fields in JSON/CSV output so fixed-seed runs compare
    /// byte-for-byte.
    #[arg(long, global = true)]
    stable: bool,
}

#[derive(Subcommand)]
enum Cmd {
    /// Generate a graph, write its edge list + label table, print stats.
    Generate(GenerateArgs),
    /// Discover a gate-vertex set or k-skip cover.
    Discover(DiscoverArgs),
    /// Build the local-gate graph and sparsify it.
    Gategraph(GategraphArgs),
    /// Answer one distance query through the gate graph.
    Query(QueryArgs),
    /// Run the verification battery over a gate set; exit 0 iff all pass.
    Verify(VerifyArgs),
    /// Sweep datasets x epsilon x methods and emit a CSV of results.
    Bench(BenchArgs),
}

/// One graph source: either an edge-list file or a generator family.
#[derive(Args, Clone)]
struct InputArgs {
    /// Edge-list file (two whitespace-separated labels per line, '#'
    /// comments).
    #[arg(long, value_name = "FILE")]
    input: Option<PathBuf>,
    /// Generator family: er, sf, path, cycle, star, complete.
    #[arg(long, value_name = "NAME")]
    family: Option<String>,
    /// Vertex count for generator families.
    #[arg(long)]
    n: Option<usize>,
    /// Edge density (edges per vertex) for er and sf.
    #[arg(long)]
    density: Option<f64>,
    /// RNG seed for er and sf.
    #[arg(long, default_value_t = 1)]
    seed: u64,
}

fn fmt_density(d: f64) -> String {
    if d.fract() == 0.0 {
        format!("{}", d as i64)
    } else {
        format!("{d}")
    }
}

fn generate_family(
    family: &str,
    n: Option<usize>,
    density: Option<f64>,
    seed: u64,
) -> Result<(Graph, String)> {
    let need_n = || n.ok_or_else(|| Error::invalid("--n is required for generator families"));
    match family {
        "er" | "sf" => {
            let n = need_n()?;
            let d = density
                .ok_or_else(|| Error::invalid(format!("--density is required for {family}")))?;
            let g = if family == "er" {
                gatesimp::gen::gen_er(n, d, seed)?
            } else {
                gatesimp::gen::gen_scale_free(n, d, seed)?
            };
            Ok((g, format!("{family}_n{n}_d{}_s{seed}", fmt_density(d))))
        }
        "path" => Ok((Graph::path(need_n()?), format!("path_n{}", n.unwrap()))),
        "cycle" => Ok((Graph::cycle(need_n()?), format!("cycle_n{}", n.unwrap()))),
        "star" => Ok((Graph::star(need_n()?), format!("star_n{}", n.unwrap()))),
        "complete" => Ok((
            Graph::complete(need_n()?),
            format!("complete_n{}", n.unwrap()),
        )),
        other => Err(Error::invalid(format!(
            "unknown family {other:?} (expected er, sf, path, cycle, star, complete)"
        ))),
    }
}

impl InputArgs {
    fn load(&self) -> Result<(Graph, LabelTable, String)> {
        match (&self.input, &self.family) {
            (Some(path), None) => {
                let file = File::open(path)?;
                let loaded = load_edge_list(BufReader::new(file))?;
                let label = path
                    .file_stem()
                    .map(|s| s.to_string_lossy().to_string())
                    .unwrap_or_else(|| "input".to_string());
                Ok((loaded.graph, loaded.labels, label))
            }
            (None, Some(family)) => {
                let (g, label) = generate_family(family, self.n, self.density, self.seed)?;
                let labels = LabelTable::identity(g.n());
                Ok((g, labels, label))
            }
            _ => Err(Error::invalid(
                "exactly one input source is required: --input FILE or --family NAME",
            )),
        }
    }
}

#[derive(Args)]
struct GenerateArgs {
    /// Generator family: er, sf, path, cycle, star, complete.
    #[arg(long, value_name = "NAME")]
    family: String,
    #[arg(long)]
    n: Option<usize>,
    #[arg(long)]
    density: Option<f64>,
    #[arg(long, default_value_t = 1)]
    seed: u64,
    /// Output directory for graph.edges and graph.labels.
    #[arg(long, value_name = "DIR")]
    out: PathBuf,
}

#[derive(Args)]
struct DiscoverArgs {
    #[command(flatten)]
    input: InputArgs,
    /// Locality parameter (gate mode).
    #[arg(long)]
    epsilon: Option<u32>,
    /// Skip parameter (kskip mode).
    #[arg(long)]
    k: Option<u32>,
    /// Discovery method: sc | fs | exact.
    #[arg(long, default_value = "sc")]
    method: String,
    /// gate | kskip; inferred from --epsilon / --k when omitted.
    #[arg(long)]
    mode: Option<String>,
    /// Skip the cover-validation self-check.
    #[arg(long)]
    no_self_check: bool,
    /// Also write the set-cover instance (sc/exact methods only).
    #[arg(long)]
    dump_instance: bool,
    /// Output directory for gates.txt (and instance.txt).
    #[arg(long, value_name = "DIR")]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct GategraphArgs {
    #[command(flatten)]
    input: InputArgs,
    /// Gate-set file produced by `discover`.
    #[arg(long, value_name = "FILE")]
    gates: PathBuf,
    /// Cross-check against the gate-set header.
    #[arg(long)]
    epsilon: Option<u32>,
    /// Skip Stage-2 edge sparsification.
    #[arg(long)]
    no_sparsify: bool,
    /// Output directory for the weighted edge lists.
    #[arg(long, value_name = "DIR")]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct QueryArgs {
    #[command(flatten)]
    input: InputArgs,
    #[arg(long, value_name = "FILE")]
    gates: PathBuf,
    /// Weighted gate-graph file; rebuilt on the fly when omitted.
    #[arg(long, value_name = "FILE")]
    gategraph: Option<PathBuf>,
    /// Source vertex label.
    u: String,
    /// Destination vertex label.
    v: String,
}

#[derive(Args)]
struct VerifyArgs {
    #[command(flatten)]
    input: InputArgs,
    #[arg(long, value_name = "FILE")]
    gates: PathBuf,
    /// Sample this many recovery sources instead of enumerating all pairs
    /// (marked non-authoritative).
    #[arg(long)]
    sample: Option<usize>,
    /// Materialize all gate balls before the recovery checks.
    #[arg(long)]
    precompute_balls: bool,
}

#[derive(Args)]
struct BenchArgs {
    /// Edge-list files; repeatable.
    #[arg(long, value_name = "FILE")]
    input: Vec<PathBuf>,
    /// Generator families (er, sf, path, ...); repeatable.
    #[arg(long)]
    family: Vec<String>,
    /// Vertex counts for the generator sweep.
    #[arg(long, value_delimiter = ',')]
    n: Vec<usize>,
    /// Edge densities for the generator sweep.
    #[arg(long, value_delimiter = ',')]
    density: Vec<f64>,
    /// Seeds for the generator sweep.
    #[arg(long, value_delimiter = ',', default_values_t = [1u64])]
    seed: Vec<u64>,
    /// Locality parameters to sweep.
    #[arg(long, value_delimiter = ',', default_values_t = [3u32])]
    epsilon: Vec<u32>,
    /// Methods to sweep: sc and/or fs.
    #[arg(long, value_delimiter = ',', default_values_t = ["sc".to_string(), "fs".to_string()])]
    method: Vec<String>,
    /// Run the verification battery for every cell.
    #[arg(long)]
    verify: bool,
    /// Skip the discovery self-check.
    #[arg(long)]
    no_self_check: bool,
    /// CSV output file (stdout when omitted).
    #[arg(long, value_name = "FILE")]
    out: Option<PathBuf>,
}

fn main() -> ExitCode {
    if let Ok(t) = std::env::var("GATESIMP_THREADS") {
        if let Ok(t) = t.parse::<usize>() {
            let _ = rayon::ThreadPoolBuilder::new()
                .num_threads(t.max(1))
                .build_global();
        }
    }
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("error: {e}");
            let code = match e {
                Error::ResourceGuard(_) => 4,
                Error::SelfCheckFailed { .. } => 3,
                _ => 2,
            };
            ExitCode::from(code)
        }
    }
}

fn run(cli: Cli) -> Result<u8> {
    match cli.cmd {
        Cmd::Generate(args) => cmd_generate(args),
        Cmd::Discover(args) => cmd_discover(args, cli.stable),
        Cmd::Gategraph(args) => cmd_gategraph(args, cli.stable),
        Cmd::Query(args) => cmd_query(args),
        Cmd::Verify(args) => cmd_verify(args, cli.stable),
        Cmd::Bench(args) => cmd_bench(args, cli.stable),
    }
}

fn print_json(value: &serde_json::Value) {
    println!("{}", serde_json::to_string_pretty(value).expect("json"));
}

fn cmd_generate(args: GenerateArgs) -> Result<u8> {
    let (g, label) = generate_family(&args.family, args.n, args.density, args.seed)?;
    let labels = LabelTable::identity(g.n());
    fs::create_dir_all(&args.out)?;
    let edges_path = args.out.join("graph.edges");
    let labels_path = args.out.join("graph.labels");
    let mut w = BufWriter::new(File::create(&edges_path)?);
    write_edge_list(&g, &labels, &mut w)?;
    w.flush()?;
    let mut w = BufWriter::new(File::create(&labels_path)?);
    labels.write_tsv(&mut w)?;
    w.flush()?;
    let stats = graph_stats(&g, g.n() <= APSP_GUARD)?;
    print_json(&json!({
        "dataset": label,
        "stats": stats,
        "m_doubled": g.m_doubled(),
        "files": {
            "edges": edges_path.to_string_lossy(),
            "labels": labels_path.to_string_lossy(),
        },
    }));
    Ok(0)
}

/// Informational size-bound shape (|V|/p) * ln(|V|/p); reported, never
/// asserted.
fn size_bound_info(n: usize, mode: GateMode) -> f64 {
    let p = match mode {
        GateMode::Gate { epsilon } => epsilon.saturating_sub(1),
        GateMode::KSkip { k } => k,
    };
    if n == 0 || p == 0 {
        return 0.0;
    }
    let ratio = n as f64 / p as f64;
    if ratio <= 1.0 {
        0.0
    } else {
        ratio * ratio.ln()
    }
}

fn cmd_discover(args: DiscoverArgs, stable: bool) -> Result<u8> {
    let (g, labels, dataset) = args.input.load()?;
    let mode = match (args.mode.as_deref(), args.epsilon, args.k) {
        (Some("gate") | None, Some(e), None) => GateMode::Gate { epsilon: e },
        (Some("kskip") | None, None, Some(k)) => GateMode::KSkip { k },
        (Some("gate"), None, _) => return Err(Error::invalid("gate mode requires --epsilon")),
        (Some("kskip"), _, None) => return Err(Error::invalid("kskip mode requires --k")),
        (Some(other), _, _) if other != "gate" && other != "kskip" => {
            return Err(Error::invalid(format!(
                "unknown mode {other:?} (expected gate or kskip)"
            )))
        }
        _ => {
            return Err(Error::invalid(
                "give exactly one of --epsilon (gate mode) or --k (kskip mode)",
            ))
        }
    };
    let method = Method::parse(&args.method)?;
    let opts = DiscoverOptions {
        self_check: !args.no_self_check,
        ..DiscoverOptions::default()
    };
    let t0 = Instant::now();
    let (gv, inst): (GateVertexSet, Option<CoverInstance>) = match (mode, method) {
        (GateMode::Gate { epsilon }, Method::Sc) => {
            let inst = build_instance_bfs(&g, epsilon)?;
            let gv = discover_from_instance(&g, &inst, Method::Sc, &opts)?;
            (gv, Some(inst))
        }
        (GateMode::Gate { epsilon }, Method::Fs) => {
            if args.dump_instance {
                return Err(Error::invalid("fs builds no set-cover instance to dump"));
            }
            (discover_fs_with(&g, epsilon, &opts)?, None)
        }
        (GateMode::Gate { .. }, Method::Exact) => {
            return Err(Error::invalid("gate mode supports methods sc and fs"))
        }
        (GateMode::KSkip { k }, Method::Sc | Method::Exact) => {
            let inst = build_instance_oracle(&g, k, CoverMode::KSkip)?;
            let gv = discover_from_instance(&g, &inst, method, &opts)?;
            (gv, Some(inst))
        }
        (GateMode::KSkip { .. }, Method::Fs) => {
            return Err(Error::invalid(
                "k-skip discovery supports methods sc and exact",
            ))
        }
    };
    let total_ms = t0.elapsed().as_millis() as u64;
    let mut gates_file = None;
    let mut instance_file = None;
    if let Some(dir) = &args.out {
        fs::create_dir_all(dir)?;
        let path = dir.join("gates.txt");
        let mut w = BufWriter::new(File::create(&path)?);
        gv.write_text(&mut w, &labels)?;
        w.flush()?;
        gates_file = Some(path.to_string_lossy().to_string());
        if args.dump_instance {
            let inst = inst
                .as_ref()
                .ok_or_else(|| Error::invalid("no instance available to dump"))?;
            let path = dir.join("instance.txt");
            let mut w = BufWriter::new(File::create(&path)?);
            inst.write_text(&mut w, &labels)?;
            w.flush()?;
            instance_file = Some(path.to_string_lossy().to_string());
        }
    } else if args.dump_instance {
        return Err(Error::invalid("--dump-instance requires --out DIR"));
    }
    print_json(&json!({
        "dataset": dataset,
        "mode": gv.mode.as_str(),
        "param": gv.mode.param(),
        "method": gv.method.as_str(),
        "size": gv.size(),
        "pairs_covered": gv.stats.pairs_covered,
        "build_ms": if stable { 0 } else { total_ms },
        "self_check": !args.no_self_check,
        "size_bound_info": size_bound_info(g.n(), gv.mode),
        "gates_file": gates_file,
        "instance_file": instance_file,
    }));
    Ok(0)
}

fn read_gates(path: &Path, labels: &LabelTable) -> Result<GateVertexSet> {
    let file = File::open(path)?;
    GateVertexSet::read_text(BufReader::new(file), labels)
}

fn cmd_gategraph(args: GategraphArgs, stable: bool) -> Result<u8> {
    let (g, labels, dataset) = args.input.load()?;
    let gv = read_gates(&args.gates, &labels)?;
    let epsilon = match gv.mode {
        GateMode::Gate { epsilon } => epsilon,
        GateMode::KSkip { .. } => {
            return Err(Error::invalid(
                "gate graphs are built from gate-mode sets; rediscover with --epsilon",
            ))
        }
    };
    if let Some(e) = args.epsilon {
        if e != epsilon {
            return Err(Error::invalid(format!(
                "--epsilon {e} contradicts the gate-set header (epsilon {epsilon})"
            )));
        }
    }
    let t0 = Instant::now();
    let stage1 = build_local_gate_graph(&g, &gv, epsilon)?;
    let sparsified = (!args.no_sparsify).then(|| sparsify(&stage1));
    let build_ms = t0.elapsed().as_millis() as u64;
    let mut stage1_file = None;
    let mut sparsified_file = None;
    if let Some(dir) = &args.out {
        fs::create_dir_all(dir)?;
        let path = dir.join("gategraph.stage1.edges");
        let mut w = BufWriter::new(File::create(&path)?);
        stage1.write_text(&mut w, &labels)?;
        w.flush()?;
        stage1_file = Some(path.to_string_lossy().to_string());
        if let Some(sp) = &sparsified {
            let path = dir.join("gategraph.sparsified.edges");
            let mut w = BufWriter::new(File::create(&path)?);
            sp.write_text(&mut w, &labels)?;
            w.flush()?;
            sparsified_file = Some(path.to_string_lossy().to_string());
        }
    }
    print_json(&json!({
        "dataset": dataset,
        "gates": gv.size(),
        "edges_stage1": stage1.edge_count(),
        "edges_sparsified": sparsified.as_ref().map(|s| s.edge_count()),
        "removed": sparsified.as_ref().map(|s| stage1.edge_count() - s.edge_count()),
        "sparsify": if args.no_sparsify { "skipped" } else { "done" },
        "build_ms": if stable { 0 } else { build_ms },
        "stage1_file": stage1_file,
        "sparsified_file": sparsified_file,
    }));
    Ok(0)
}

fn cmd_query(args: QueryArgs) -> Result<u8> {
    let (g, labels, _) = args.input.load()?;
    let gv = read_gates(&args.gates, &labels)?;
    let epsilon = match gv.mode {
        GateMode::Gate { epsilon } => epsilon,
        GateMode::KSkip { .. } => return Err(Error::invalid("queries need a gate-mode set")),
    };
    let wg = match &args.gategraph {
        Some(path) => {
            let file = File::open(path)?;
            WeightedGraph::read_text(BufReader::new(file), &labels, gv.vertices.clone())?
        }
        None => build_local_gate_graph(&g, &gv, epsilon)?,
    };
    let u = labels
        .id(&args.u)
        .ok_or_else(|| Error::invalid(format!("unknown vertex label {:?}", args.u)))?;
    let v = labels
        .id(&args.v)
        .ok_or_else(|| Error::invalid(format!("unknown vertex label {:?}", args.v)))?;
    let ctx = QueryContext::new(&g, &gv, &wg, epsilon)?;
    let result = ctx.query(u, v)?;
    let witness = match result {
        QueryResult::ViaGates { witness: (x, y), .. } => Some(vec![x, y]),
        _ => None,
    };
    print_json(&json!({
        "u": args.u,
        "v": args.v,
        "distance": result.distance(),
        "route": result.route_kind(),
        "witness": witness,
    }));
    Ok(0)
}

fn verification_battery(
    g: &Graph,
    gv: &GateVertexSet,
    sample: Option<usize>,
    precompute_balls: bool,
) -> Result<Vec<verify::VerificationReport>> {
    let within_guard = g.n() <= APSP_GUARD;
    let mut checks = Vec::new();
    match gv.mode {
        GateMode::Gate { epsilon } => {
            let cover = if within_guard {
                verify::check_gate_cover(g, epsilon, &gv.vertices)?
            } else {
                verify::check_gate_cover_bfs(g, epsilon, &gv.vertices)?
            };
            checks.push(cover);
            let stage1 = build_local_gate_graph(g, gv, epsilon)?;
            let sparsified = sparsify(&stage1);
            for (wg, tag) in [(&stage1, "stage1"), (&sparsified, "sparsified")] {
                let mut rep = match sample {
                    Some(s) => verify::check_recovery_sampled_opts(
                        g,
                        epsilon,
                        &gv.vertices,
                        wg,
                        s,
                        precompute_balls,
                    )?,
                    None => {
                        if !within_guard {
                            return Err(Error::guard(format!(
                                "full recovery check needs n <= {APSP_GUARD}; rerun with --sample"
                            )));
                        }
                        verify::check_recovery_opts(
                            g,
                            epsilon,
                            &gv.vertices,
                            wg,
                            precompute_balls,
                        )?
                    }
                };
                rep.check = format!("recovery_{tag}");
                checks.push(rep);
            }
            checks.push(verify::check_sparsify_preserves(&stage1, &sparsified));
            checks.push(verify::check_sparsify_tightness(&sparsified));
        }
        GateMode::KSkip { k } => {
            let cover = if within_guard {
                verify::check_kskip_cover(g, k, &gv.vertices)?
            } else {
                verify::check_kskip_cover_bfs(g, k, &gv.vertices)?
            };
            checks.push(cover);
            // A k-skip cover doubles as a gate set at epsilon = k + 1.
            let mut gate = if within_guard {
                verify::check_gate_cover(g, k + 1, &gv.vertices)?
            } else {
                verify::check_gate_cover_bfs(g, k + 1, &gv.vertices)?
            };
            gate.check = "gate_cover_at_k_plus_1".into();
            checks.push(gate);
        }
    }
    Ok(checks)
}

fn cmd_verify(args: VerifyArgs, stable: bool) -> Result<u8> {
    let (g, labels, dataset) = args.input.load()?;
    let gv = read_gates(&args.gates, &labels)?;
    let mut checks = verification_battery(&g, &gv, args.sample, args.precompute_balls)?;
    if stable {
        for c in &mut checks {
            c.elapsed_ms = 0;
        }
    }
    let pass = checks.iter().all(|c| c.pass);
    print_json(&json!({
        "dataset": dataset,
        "mode": gv.mode.as_str(),
        "param": gv.mode.param(),
        "size": gv.size(),
        "pass": pass,
        "checks": checks,
    }));
    Ok(if pass { 0 } else { 3 })
}

const BENCH_HEADER: &str = "dataset,n,m,diameter,avg_dist,epsilon,method,gates,edges_stage1,edges_sparsified,build_ms,verified";

fn cmd_bench(args: BenchArgs, stable: bool) -> Result<u8> {
    let mut methods = Vec::new();
    for m in &args.method {
        let m = Method::parse(m)?;
        if m == Method::Exact {
            return Err(Error::invalid("bench sweeps methods sc and fs"));
        }
        methods.push(m);
    }
    // Materialize every dataset once.
    let mut datasets: Vec<(String, Graph)> = Vec::new();
    for path in &args.input {
        let ia = InputArgs {
            input: Some(path.clone()),
            family: None,
            n: None,
            density: None,
            seed: 0,
        };
        let (g, _, label) = ia.load()?;
        datasets.push((label, g));
    }
    for family in &args.family {
        let needs_density = matches!(family.as_str(), "er" | "sf");
        if args.n.is_empty() {
            return Err(Error::invalid("--n is required for generator families"));
        }
        let densities: Vec<Option<f64>> = if needs_density {
            if args.density.is_empty() {
                return Err(Error::invalid(format!(
                    "--density is required for {family}"
                )));
            }
            args.density.iter().copied().map(Some).collect()
        } else {
            vec![None]
        };
        let seeds: Vec<u64> = if needs_density {
            args.seed.clone()
        } else {
            vec![0]
        };
        for &n in &args.n {
            for &d in &densities {
                for &seed in &seeds {
                    let (g, label) = generate_family(family, Some(n), d, seed)?;
                    datasets.push((label, g));
                }
            }
        }
    }
    if datasets.is_empty() {
        return Err(Error::invalid(
            "bench needs at least one --input or --family",
        ));
    }
    let opts = DiscoverOptions {
        self_check: !args.no_self_check,
        ..DiscoverOptions::default()
    };
    let mut rows: Vec<(String, u32, String, String)> = Vec::new();
    for (label, g) in &datasets {
        let stats = graph_stats(g, g.n() <= APSP_GUARD)?;
        for &epsilon in &args.epsilon {
            for &method in &methods {
                let t0 = Instant::now();
                let gv = match method {
                    Method::Sc => {
                        let inst = build_instance_bfs(g, epsilon)?;
                        discover_from_instance(g, &inst, Method::Sc, &opts)?
                    }
                    Method::Fs => discover_fs_with(g, epsilon, &opts)?,
                    Method::Exact => unreachable!(),
                };
                let stage1 = build_local_gate_graph(g, &gv, epsilon)?;
                let sparsified = sparsify(&stage1);
                let build_ms = if stable {
                    0
                } else {
                    t0.elapsed().as_millis() as u64
                };
                let verified = if args.verify {
                    let cover_ok = if g.n() <= APSP_GUARD {
                        verify::check_gate_cover(g, epsilon, &gv.vertices)?.pass
                    } else {
                        verify::check_gate_cover_bfs(g, epsilon, &gv.vertices)?.pass
                    };
                    let recovery_ok = if g.n() <= APSP_GUARD {
                        verify::check_recovery(g, epsilon, &gv.vertices, &sparsified)?.pass
                    } else {
                        verify::check_recovery_sampled(g, epsilon, &gv.vertices, &sparsified, 64)?
                            .pass
                    };
                    let sparsify_ok = verify::check_sparsify_preserves(&stage1, &sparsified).pass;
                    format!("{}", cover_ok && recovery_ok && sparsify_ok)
                } else {
                    String::new()
                };
                rows.push((
                    label.clone(),
                    epsilon,
                    method.as_str().to_string(),
                    format!(
                        "{label},{},{},{},{:.4},{epsilon},{},{},{},{},{build_ms},{verified}",
                        stats.n,
                        stats.m,
                        stats.diameter,
                        stats.avg_dist,
                        method.as_str(),
                        gv.size(),
                        stage1.edge_count(),
                        sparsified.edge_count(),
                    ),
                ));
            }
        }
    }
    rows.sort_by(|a, b| (&a.0, a.1, &a.2).cmp(&(&b.0, b.1, &b.2)));
    let mut body = String::from(BENCH_HEADER);
    body.push('\n');
    for (_, _, _, row) in &rows {
        body.push_str(row);
        body.push('\n');
    }
    match &args.out {
        Some(path) => {
            if let Some(dir) = path.parent() {
                if !dir.as_os_str().is_empty() {
                    fs::create_dir_all(dir)?;
                }
            }
            fs::write(path, body)?;
        }
        None => print!("{body}"),
    }
    Ok(0)
}
