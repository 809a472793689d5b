//! `tempspan`: check, solve, verify and decompose temporal graphs, and
//! generate reduction and random instances.
//!
//! Exit codes: 0 the property holds or the instance was solved within
//! budget; 1 the property fails or the budget is infeasible; 2 a resource
//! guard tripped; 3 usage, input or I/O errors.

use std::fmt::Write as _;
use std::fs;
use std::io::{self, Write as _};
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::Instant;

use anyhow::{bail, Context, Result};
use clap::{Parser, Subcommand, ValueEnum};
use serde::Serialize;
use serde_json::{json, Value};
use sha2::{Digest, Sha256};

use tempspan::generate::{random_happy_tc, RandomSpec};
use tempspan::reach::is_tc;
use tempspan::reductions::{
    mcc_to_spanner_instance, mcc_witness_spanner, sat_to_spanner_instance, sat_two_source_variant, sat_witness_spanner,
    MccInstance, SatInstance,
};
use tempspan::solver::{
    min_spanner_exact_with, min_spanner_xp_vc, min_vertex_cover, satisfies, vc_tree_decompose, ExactConfig,
    ExactStrategy, Requirement, SolverError,
};
use tempspan::{Spanner, Strictness, TemporalGraph};

#[derive(Parser, Debug)]
#[command(name = "tempspan", version, about = "Minimum temporal spanners and hardness-instance generators")]
struct Cli {
    /// Print a single JSON report instead of text.
    #[arg(long, global = true)]
    json: bool,
    /// Worker threads for parallel solver stages.
    #[arg(long, global = true)]
    threads: Option<usize>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Report temporal connectivity and the graph class.
    Check {
        file: PathBuf,
        #[arg(long, visible_alias = "nonstrict", conflicts_with = "strict")]
        non_strict: bool,
        /// Strict journeys (the default).
        #[arg(long)]
        strict: bool,
    },
    /// Compute a minimum spanner.
    Solve {
        file: PathBuf,
        #[arg(long, value_enum, default_value_t = Method::Exact)]
        method: Method,
        /// Succeed only if a spanner of at most this many edges exists.
        #[arg(long, visible_alias = "k")]
        budget: Option<usize>,
        #[arg(long, visible_alias = "nonstrict", conflicts_with = "strict")]
        non_strict: bool,
        /// Strict journeys (the default).
        #[arg(long)]
        strict: bool,
        /// Preserve reachability from these two vertices only.
        #[arg(long, num_args = 2, value_names = ["A", "B"])]
        two_source: Option<Vec<usize>>,
        /// Largest number of removable edges the exact methods accept.
        #[arg(long, default_value_t = 40)]
        cap: usize,
        /// Write the spanner here.
        #[arg(long)]
        out: Option<PathBuf>,
        /// Write the spanner as `u v t` lines instead of edge indices.
        #[arg(long)]
        triples: bool,
    },
    /// Check that a spanner file preserves the requirement.
    Verify {
        file: PathBuf,
        spanner: PathBuf,
        #[arg(long)]
        triples: bool,
        #[arg(long, visible_alias = "nonstrict", conflicts_with = "strict")]
        non_strict: bool,
        /// Strict journeys (the default).
        #[arg(long)]
        strict: bool,
        #[arg(long, num_args = 2, value_names = ["A", "B"])]
        two_source: Option<Vec<usize>>,
    },
    /// Split a spanner of a happy graph into out-trees rooted in a minimum
    /// vertex cover plus one extra edge per remaining vertex.
    Decompose {
        file: PathBuf,
        spanner: PathBuf,
        #[arg(long)]
        triples: bool,
        /// Root the trees in a minimum vertex cover (the only mode).
        #[arg(long)]
        vc: bool,
    },
    /// Build the happy spanner instance of a 3-CNF formula (DIMACS).
    ReduceSat {
        file: PathBuf,
        /// Delete `u`; the instance then asks for a 2-source spanner from `v`, `w`.
        #[arg(long)]
        two_source: bool,
        /// Also write the witness spanner of this assignment, e.g. `1,0,1`.
        #[arg(long)]
        assignment: Option<String>,
        #[arg(long, default_value = ".")]
        out_dir: PathBuf,
        #[arg(long, default_value = "out")]
        prefix: String,
    },
    /// Build the strict spanner instance of a multicolored clique instance.
    ReduceMcc {
        file: PathBuf,
        /// Also write the witness spanner of this clique: one index per color, e.g. `0,1,0`.
        #[arg(long)]
        clique: Option<String>,
        #[arg(long, default_value = ".")]
        out_dir: PathBuf,
        #[arg(long, default_value = "out")]
        prefix: String,
    },
    /// Sample a random happy temporally connected graph.
    GenRandom {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        seed: u64,
        /// Keep the vertex cover number at most this.
        #[arg(long)]
        cover: Option<usize>,
        #[arg(long, default_value_t = 0.5)]
        p: f64,
        #[arg(long, default_value_t = 10_000)]
        max_retries: usize,
        /// Write here instead of stdout.
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum Method {
    /// Branch-and-bound or SAT search, chosen by instance size.
    Exact,
    BranchAndBound,
    Sat,
    Enumerate,
    /// The vertex-cover algorithm; happy graphs, all pairs, strict only.
    XpVc,
}

/// One per successful run.
#[derive(Serialize)]
struct RunReport {
    command: String,
    /// SHA-256 of the main input file.
    input_digest: Option<String>,
    method: Option<String>,
    size: Option<usize>,
    optimal: Option<bool>,
    wall_ms: u128,
    result: Value,
}

struct Outcome {
    code: u8,
    lines: Vec<String>,
    method: Option<String>,
    size: Option<usize>,
    optimal: Option<bool>,
    result: Value,
}

impl Outcome {
    fn new(code: u8, result: Value) -> Self {
        Outcome { code, lines: Vec::new(), method: None, size: None, optimal: None, result }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 3 } else { 0 });
        }
    };
    if let Some(t) = cli.threads {
        if let Err(e) = rayon::ThreadPoolBuilder::new().num_threads(t).build_global() {
            eprintln!("error: {e}");
            return ExitCode::from(3);
        }
    }
    let echo: String = std::env::args().skip(1).collect::<Vec<_>>().join(" ");
    let start = Instant::now();
    let (digest, outcome) = match run(&cli.command) {
        Ok(r) => r,
        Err(e) => {
            if let Some(SolverError::InstanceTooLarge { .. }) = e.downcast_ref::<SolverError>() {
                eprintln!("resource guard: {e}");
                return ExitCode::from(2);
            }
            eprintln!("error: {e:#}");
            return ExitCode::from(3);
        }
    };
    let report = RunReport {
        command: echo,
        input_digest: digest,
        method: outcome.method.clone(),
        size: outcome.size,
        optimal: outcome.optimal,
        wall_ms: start.elapsed().as_millis(),
        result: outcome.result.clone(),
    };
    let mut text = String::new();
    if cli.json {
        text = serde_json::to_string(&report).expect("report serializes");
        text.push('\n');
    } else {
        for line in &outcome.lines {
            let _ = writeln!(text, "{line}");
        }
        let _ = write!(text, "# ");
        if let Some(d) = &report.input_digest {
            let _ = write!(text, "input_sha256={d} ");
        }
        let _ = writeln!(text, "wall_ms={}", report.wall_ms);
    }
    // A closed pipe (`| head`) is not an error worth a panic.
    let _ = io::stdout().lock().write_all(text.as_bytes());
    ExitCode::from(outcome.code)
}

fn strictness(non_strict: bool) -> Strictness {
    if non_strict {
        Strictness::NonStrict
    } else {
        Strictness::Strict
    }
}

fn requirement(g: &TemporalGraph, two: &Option<Vec<usize>>) -> Result<Requirement> {
    match two.as_deref() {
        None => Ok(Requirement::AllPairs),
        Some(&[a, b]) => {
            if a >= g.vertex_count() || b >= g.vertex_count() {
                bail!("source out of range for a graph with {} vertices", g.vertex_count());
            }
            Ok(Requirement::TwoSource(a, b))
        }
        Some(_) => bail!("--two-source takes exactly two vertices"),
    }
}

fn read(path: &Path) -> Result<(String, String)> {
    let bytes = fs::read(path).with_context(|| format!("reading {}", path.display()))?;
    let digest = Sha256::digest(&bytes).iter().fold(String::new(), |mut s, b| {
        let _ = write!(s, "{b:02x}");
        s
    });
    let text = String::from_utf8(bytes).with_context(|| format!("{} is not UTF-8", path.display()))?;
    Ok((text, digest))
}

fn load_graph(path: &Path) -> Result<(TemporalGraph, String)> {
    let (text, digest) = read(path)?;
    let g = TemporalGraph::parse(&text).with_context(|| format!("parsing {}", path.display()))?;
    Ok((g, digest))
}

fn load_spanner(path: &Path, g: &TemporalGraph, triples: bool) -> Result<Spanner> {
    let (text, _) = read(path)?;
    let parsed = if triples { Spanner::parse_triples(&text, g) } else { Spanner::parse_indices(&text, g) };
    parsed.with_context(|| format!("parsing {}", path.display()))
}

fn write(dir: &Path, prefix: &str, ext: &str, body: &str) -> Result<PathBuf> {
    fs::create_dir_all(dir).with_context(|| format!("creating {}", dir.display()))?;
    let path = dir.join(format!("{prefix}.{ext}"));
    fs::write(&path, body).with_context(|| format!("writing {}", path.display()))?;
    Ok(path)
}

fn parse_list(text: &str) -> Result<Vec<usize>> {
    text.split(',').map(|t| t.trim().parse::<usize>().with_context(|| format!("bad list entry {t:?}"))).collect()
}

fn lines_of(list: &[usize]) -> String {
    list.iter().map(|x| format!("{x}\n")).collect()
}

fn run(cmd: &Command) -> Result<(Option<String>, Outcome)> {
    match cmd {
        Command::Check { file, non_strict, .. } => {
            let (g, digest) = load_graph(file)?;
            let tc = is_tc(&g, strictness(*non_strict));
            let class = g.classify();
            let mut o = Outcome::new(
                if tc { 0 } else { 1 },
                json!({ "tc": tc, "simple": class.simple, "proper": class.proper, "happy": class.happy }),
            );
            o.lines.push(format!("tc={tc} simple={} proper={} happy={}", class.simple, class.proper, class.happy));
            Ok((Some(digest), o))
        }
        Command::Solve { file, method, budget, non_strict, two_source, cap, out, triples, .. } => {
            let (g, digest) = load_graph(file)?;
            let s = strictness(*non_strict);
            let req = requirement(&g, two_source)?;
            let sol = match method {
                Method::XpVc => {
                    if *non_strict || req != Requirement::AllPairs {
                        bail!("xp-vc handles strict all-pairs spanners of happy graphs only");
                    }
                    min_spanner_xp_vc(&g, *budget)?
                }
                _ => {
                    let strategy = match method {
                        Method::BranchAndBound => ExactStrategy::BranchAndBound,
                        Method::Sat => ExactStrategy::Sat,
                        Method::Enumerate => ExactStrategy::Enumerate,
                        _ => ExactStrategy::Auto,
                    };
                    min_spanner_exact_with(&g, s, *budget, req, &ExactConfig { cap: *cap, strategy })?
                }
            };
            let within = budget.map(|k| sol.size() <= k);
            if let Some(path) = out {
                let body = if *triples { sol.spanner.to_triple_text(&g) } else { sol.spanner.to_index_text() };
                fs::write(path, body).with_context(|| format!("writing {}", path.display()))?;
            }
            let name = method.to_possible_value().expect("no skipped variants").get_name().to_string();
            let mut o = Outcome::new(
                if within == Some(false) { 1 } else { 0 },
                json!({ "kept": sol.spanner.kept(), "within_budget": within }),
            );
            let mut line = format!("size={} optimal={} method={name}", sol.size(), sol.optimal);
            if let Some(w) = within {
                let _ = write!(line, " within_budget={w}");
            }
            o.lines.push(line);
            if out.is_none() && !*triples {
                o.lines.push(format!(
                    "kept={}",
                    sol.spanner.kept().iter().map(|e| e.to_string()).collect::<Vec<_>>().join(",")
                ));
            }
            o.method = Some(name);
            o.size = Some(sol.size());
            o.optimal = Some(sol.optimal);
            Ok((Some(digest), o))
        }
        Command::Verify { file, spanner, triples, non_strict, two_source, .. } => {
            let (g, digest) = load_graph(file)?;
            let sp = load_spanner(spanner, &g, *triples)?;
            let req = requirement(&g, two_source)?;
            let ok = satisfies(&g, strictness(*non_strict), req, sp.kept());
            let mut o = Outcome::new(if ok { 0 } else { 1 }, json!({ "valid": ok }));
            o.lines.push(format!("valid={ok} size={}", sp.len()));
            o.size = Some(sp.len());
            Ok((Some(digest), o))
        }
        Command::Decompose { file, spanner, triples, .. } => {
            let (g, digest) = load_graph(file)?;
            let sp = load_spanner(spanner, &g, *triples)?;
            let cover = min_vertex_cover(&g.underlying_graph(), g.vertex_count());
            let dec = vc_tree_decompose(&g, &sp, &cover)?;
            let mut o = match &dec {
                None => {
                    let mut o = Outcome::new(1, json!({ "cover": cover.members, "decomposition": null }));
                    o.lines.push("NOT-DECOMPOSABLE".into());
                    o
                }
                Some(d) => {
                    let trees: Vec<Value> =
                        d.trees.iter().map(|t| json!({ "root": t.root, "edges": t.tree_edges })).collect();
                    let extras: Vec<Value> = d.extras.iter().map(|(v, e)| json!({ "vertex": v, "edge": e })).collect();
                    let mut o = Outcome::new(0, json!({ "cover": cover.members, "trees": trees, "extras": extras }));
                    o.lines.push(format!("decomposable=true cover={:?}", cover.members));
                    for t in &d.trees {
                        o.lines.push(format!("tree root={} edges={:?}", t.root, t.tree_edges));
                    }
                    for (v, e) in &d.extras {
                        if let Some(e) = e {
                            o.lines.push(format!("extra vertex={v} edge={e}"));
                        }
                    }
                    o
                }
            };
            o.size = Some(sp.len());
            Ok((Some(digest), o))
        }
        Command::ReduceSat { file, two_source, assignment, out_dir, prefix } => {
            let (text, digest) = read(file)?;
            let phi = SatInstance::parse_dimacs(&text)?;
            let out = sat_to_spanner_instance(&phi)?;
            let witness = match assignment {
                None => None,
                Some(a) => {
                    let values: Vec<bool> = parse_list(a)?.into_iter().map(|x| x != 0).collect();
                    Some(sat_witness_spanner(&out, &values)?)
                }
            };
            let mut written = Vec::new();
            let (graph, budget) = if *two_source {
                let two = sat_two_source_variant(&out)?;
                written.push(write(out_dir, prefix, "sources", &format!("{} {}\n", two.sources.0, two.sources.1))?);
                if let Some(w) = &witness {
                    written.push(write(out_dir, prefix, "witness", &two.restrict_spanner(w).to_index_text())?);
                }
                (two.graph, two.budget)
            } else {
                written.push(write(out_dir, prefix, "critical", &lines_of(&out.critical))?);
                written.push(write(out_dir, prefix, "roles", &out.roles_text())?);
                if let Some(w) = &witness {
                    written.push(write(out_dir, prefix, "witness", &w.to_index_text())?);
                }
                (out.graph.clone(), out.budget)
            };
            written.insert(0, write(out_dir, prefix, "tg", &graph.serialize())?);
            written.insert(1, write(out_dir, prefix, "budget", &format!("{budget}\n"))?);
            let files: Vec<String> = written.iter().map(|p| p.display().to_string()).collect();
            let mut o = Outcome::new(
                0,
                json!({ "vertices": graph.vertex_count(), "edges": graph.edge_count(), "budget": budget, "files": files }),
            );
            o.lines.push(format!("vertices={} edges={} budget={budget}", graph.vertex_count(), graph.edge_count()));
            o.lines.extend(files.iter().map(|f| format!("wrote {f}")));
            Ok((Some(digest), o))
        }
        Command::ReduceMcc { file, clique, out_dir, prefix } => {
            let (text, digest) = read(file)?;
            let inst = MccInstance::parse(&text)?;
            let out = mcc_to_spanner_instance(&inst)?;
            let mut written = vec![
                write(out_dir, prefix, "tg", &out.graph.serialize())?,
                write(out_dir, prefix, "budget", &format!("{}\n", out.budget))?,
                write(out_dir, prefix, "roles", &out.roles_text())?,
                write(out_dir, prefix, "fvs", &lines_of(&out.fvs))?,
                write(out_dir, prefix, "gadgets", &out.gadgets_text())?,
            ];
            if let Some(c) = clique {
                let w = mcc_witness_spanner(&out, &parse_list(c)?)?;
                written.push(write(out_dir, prefix, "witness", &w.to_index_text())?);
            }
            let files: Vec<String> = written.iter().map(|p| p.display().to_string()).collect();
            let g = &out.graph;
            let mut o = Outcome::new(
                0,
                json!({
                    "vertices": g.vertex_count(), "edges": g.edge_count(), "budget": out.budget,
                    "connector_edges": out.x, "fvs_size": out.fvs.len(), "files": files,
                }),
            );
            o.lines.push(format!(
                "vertices={} edges={} budget={} connector_edges={} fvs_size={}",
                g.vertex_count(),
                g.edge_count(),
                out.budget,
                out.x,
                out.fvs.len()
            ));
            o.lines.extend(files.iter().map(|f| format!("wrote {f}")));
            Ok((Some(digest), o))
        }
        Command::GenRandom { n, seed, cover, p, max_retries, out } => {
            let spec = RandomSpec { n: *n, cover_size: *cover, edge_prob: *p, max_retries: *max_retries };
            let g = random_happy_tc(&spec, *seed)?;
            let text = g.serialize();
            let mut o = Outcome::new(0, json!({ "vertices": g.vertex_count(), "edges": g.edge_count(), "seed": seed }));
            match out {
                Some(path) => {
                    fs::write(path, &text).with_context(|| format!("writing {}", path.display()))?;
                    o.lines.push(format!(
                        "vertices={} edges={} wrote {}",
                        g.vertex_count(),
                        g.edge_count(),
                        path.display()
                    ));
                }
                None => {
                    o.result["graph"] = json!(text);
                    o.lines.push(text.trim_end().to_string());
                }
            }
            Ok((None, o))
        }
    }
}
