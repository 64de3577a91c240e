//! `dhopc` — file-based pipeline driver for d-hop unique coloring, ILP
//! bipartite encoding, feature augmentation, message passing, local-view
//! reconstruction, metrics, and the generalization-bound calculator.
//!
//! Exit codes: 0 on success, 1 on validation failure (including a failed
//! `verify`), 2 on parse or usage errors. All outputs are deterministic given
//! inputs and seeds; rerunning a command overwrites its outputs with
//! byte-identical content.

use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;

use dhopc_core::bound::{gen_gap_bound, sample_complexity, BoundInputs};
use dhopc_core::coloring::{
    find_dhop_violation, greedy_dhop_unique, parse_coloring, write_coloring, Coloring,
    ColoringStats,
};
use dhopc_core::error::Error;
use dhopc_core::features::{augment_features, parse_features, write_features, UidScheme};
use dhopc_core::graph::{build_graph, power_graph, write_graph, Graph};
use dhopc_core::ilp::{encode_bipartite, parse_bipartite, parse_ilp, write_bipartite, write_ilp};
use dhopc_core::io::to_pretty_json;
use dhopc_core::local::{color_priority_mis, local_view_simulate, oracle_view, ViewDump};
use dhopc_core::metrics::{mse, parse_solutions, top_m_error_with_cap, DEFAULT_ORBIT_CAP};
use dhopc_core::mp::{forward, forward_colored, parse_params, write_params, GnnConfig, ParamSet};
use dhopc_core::synth::{binpack_ilp, er_graph};
use dhopc_core::wl::{
    distinguish, init_anonymous, init_colored, init_label_color, wl_hash, DistinguishScheme,
    WlReport,
};

const RESULT_SCHEMA: &str = "dhopc.result/1";

/// Deterministic toolkit for d-hop unique coloring of graphs and ILP
/// bipartite encodings.
///
/// File formats (all JSON, `schema` key first, written canonically):
///   graph     dhopc.graph/1     {"num_nodes", "edges": [[u,v]|[u,v,w],...], "node_labels"?}
///   bipartite dhopc.bipartite/1 graph keys plus "num_vars", "num_constraints"
///   ilp       dhopc.ilp/1       {"n", "m", "c", "b", "A": [[row,col,val],...], "integrality"?}
///   coloring  dhopc.coloring/1  {"d", "num_colors", "colors"}
///   features  dhopc.features/1  {"scheme", "seed"?, "dim", "features"}
///   params    dhopc.params/1    {"config", "params"}
///   wl report dhopc.wl/1        {"rounds", "graph_hash", "node_hashes"}
///   views     dhopc.views/1     per node {"center", "d", "vertices", "edges"}
///   solutions dhopc.solutions/1 {"y", "yhat", "orbits"?}
#[derive(Parser)]
#[command(name = "dhopc", version, about, verbatim_doc_comment)]
struct Cli {
    /// Mirror the primary output as JSON on stdout.
    #[arg(long, global = true)]
    json_stdout: bool,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Greedy d-hop unique coloring of a graph.
    Color(ColorArgs),
    /// Check that a coloring is d-hop unique; reports the first violation.
    Verify(VerifyArgs),
    /// k-th power of a graph.
    Power(PowerArgs),
    /// Encode an ILP instance as a labeled bipartite graph.
    Encode(EncodeArgs),
    /// Append an identifier channel to the node labels of a bipartite graph.
    Augment(AugmentArgs),
    /// Numeric message-passing forward pass.
    Forward(ForwardArgs),
    /// WL hash refinement report.
    Wl(WlArgs),
    /// Compare two graphs by WL hashing under an identifier scheme.
    Distinguish(DistinguishArgs),
    /// Simulate d rounds of local view reconstruction and diff vs the oracle.
    Reconstruct(ReconstructArgs),
    /// Color-priority maximal independent set.
    Mis(MisArgs),
    /// Top-m% prediction error.
    Topm(TopmArgs),
    /// Mean squared error.
    Mse(MseArgs),
    /// Generalization-gap bound or sample complexity (natural log).
    Bound(BoundArgs),
    /// Seeded synthetic inputs.
    #[command(subcommand)]
    Gen(GenCommand),
}

#[derive(Args)]
struct ColorArgs {
    /// Graph file.
    #[arg(long, short = 'i')]
    input: PathBuf,
    /// Hop count the coloring must be unique within.
    #[arg(long)]
    d: usize,
    /// Coloring file to write.
    #[arg(long, short = 'o')]
    output: PathBuf,
    /// Optional stats file (palette size vs the degree bound, build time).
    #[arg(long)]
    stats: Option<PathBuf>,
}

#[derive(Args)]
struct VerifyArgs {
    #[arg(long, short = 'i')]
    input: PathBuf,
    #[arg(long)]
    coloring: PathBuf,
    #[arg(long)]
    d: usize,
}

#[derive(Args)]
struct PowerArgs {
    #[arg(long, short = 'i')]
    input: PathBuf,
    #[arg(long)]
    k: usize,
    #[arg(long, short = 'o')]
    output: PathBuf,
}

#[derive(Args)]
struct EncodeArgs {
    /// ILP instance file.
    #[arg(long, short = 'i')]
    input: PathBuf,
    /// Bipartite graph file to write.
    #[arg(long, short = 'o')]
    output: PathBuf,
}

#[derive(Args)]
struct AugmentArgs {
    /// Bipartite graph file.
    #[arg(long, short = 'i')]
    input: PathBuf,
    /// Identifier scheme: none, position, uniform, coloruid.
    #[arg(long)]
    scheme: String,
    /// Coloring file (required by coloruid).
    #[arg(long)]
    coloring: Option<PathBuf>,
    /// Seed (required by uniform).
    #[arg(long)]
    seed: Option<u64>,
    /// Feature matrix file to write.
    #[arg(long, short = 'o')]
    output: PathBuf,
}

#[derive(Args)]
struct ForwardArgs {
    #[arg(long)]
    graph: PathBuf,
    #[arg(long)]
    features: PathBuf,
    /// Parameter file; alternative to --params-seed.
    #[arg(long, conflicts_with_all = ["params_seed", "depth", "hidden_dim", "out_dim"])]
    params: Option<PathBuf>,
    /// Sample parameters from this seed instead of loading them.
    #[arg(long, requires_all = ["depth", "hidden_dim", "out_dim"])]
    params_seed: Option<u64>,
    #[arg(long)]
    depth: Option<usize>,
    #[arg(long)]
    hidden_dim: Option<usize>,
    #[arg(long)]
    out_dim: Option<usize>,
    /// Coloring file: switches layer 0 to color-conditioned embedding tables.
    #[arg(long)]
    coloring: Option<PathBuf>,
    /// Write the (possibly sampled) parameters here.
    #[arg(long)]
    dump_params: Option<PathBuf>,
    /// Per-node output vectors file to write.
    #[arg(long, short = 'o')]
    output: PathBuf,
}

#[derive(Clone, Copy, ValueEnum)]
enum WlMode {
    /// Constant init token.
    Anonymous,
    /// Color-id init tokens.
    Colored,
    /// (label, color) init tokens.
    Coloruid,
}

#[derive(Args)]
struct WlArgs {
    #[arg(long, short = 'i')]
    input: PathBuf,
    #[arg(long, value_enum)]
    mode: WlMode,
    #[arg(long)]
    rounds: usize,
    /// Coloring file (required by colored and coloruid modes).
    #[arg(long)]
    coloring: Option<PathBuf>,
    #[arg(long, short = 'o')]
    output: PathBuf,
}

#[derive(Clone, Copy, ValueEnum)]
enum SchemeArg {
    Anonymous,
    LocalUid,
}

#[derive(Args)]
struct DistinguishArgs {
    #[arg(long)]
    g1: PathBuf,
    #[arg(long)]
    g2: PathBuf,
    #[arg(long, value_enum)]
    scheme: SchemeArg,
    /// Uniqueness radius for local-uid colorings.
    #[arg(long, default_value_t = 1)]
    d: usize,
    #[arg(long)]
    rounds: usize,
}

#[derive(Args)]
struct ReconstructArgs {
    #[arg(long)]
    graph: PathBuf,
    #[arg(long)]
    coloring: PathBuf,
    #[arg(long)]
    d: usize,
    /// Per-node view dumps plus the oracle diff.
    #[arg(long, short = 'o')]
    output: PathBuf,
}

#[derive(Args)]
struct MisArgs {
    #[arg(long)]
    graph: PathBuf,
    #[arg(long)]
    coloring: PathBuf,
    #[arg(long, short = 'o')]
    output: PathBuf,
}

#[derive(Args)]
struct TopmArgs {
    /// Solutions file.
    #[arg(long, short = 'i')]
    input: PathBuf,
    /// Percentage in (0, 100].
    #[arg(long)]
    m: f64,
    /// Orbit blocks larger than this are rejected.
    #[arg(long, default_value_t = DEFAULT_ORBIT_CAP)]
    orbit_cap: usize,
}

#[derive(Args)]
struct MseArgs {
    #[arg(long, short = 'i')]
    input: PathBuf,
}

#[derive(Args)]
struct BoundArgs {
    /// Bits of precision per parameter.
    #[arg(long)]
    p: u64,
    /// Palette size |C|.
    #[arg(long)]
    colors: u64,
    #[arg(long)]
    theta_emb: u64,
    #[arg(long)]
    theta_merge: u64,
    #[arg(long)]
    depth: u64,
    #[arg(long)]
    delta: f64,
    /// Sample count: computes the gap bound.
    #[arg(long, conflicts_with = "epsilon")]
    n: Option<u64>,
    /// Target gap: computes the sample complexity.
    #[arg(long)]
    epsilon: Option<f64>,
}

#[derive(Subcommand)]
enum GenCommand {
    /// Erdős–Rényi random graph G(n, p).
    Er(GenErArgs),
    /// Bin-packing ILP (items x bins assignment + bin-open variables).
    Binpack(GenBinpackArgs),
}

#[derive(Args)]
struct GenErArgs {
    #[arg(long)]
    nodes: usize,
    #[arg(long)]
    edge_prob: f64,
    #[arg(long)]
    seed: u64,
    #[arg(long, short = 'o')]
    output: PathBuf,
}

#[derive(Args)]
struct GenBinpackArgs {
    #[arg(long, default_value_t = 20)]
    items: usize,
    #[arg(long, default_value_t = 20)]
    bins: usize,
    #[arg(long)]
    seed: u64,
    #[arg(long, short = 'o')]
    output: PathBuf,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            match e {
                Error::Parse(_) => ExitCode::from(2),
                _ => ExitCode::from(1),
            }
        }
    }
}

fn read_to_string(path: &Path) -> Result<String, Error> {
    std::fs::read_to_string(path).map_err(|e| {
        Error::Io(std::io::Error::new(
            e.kind(),
            format!("{}: {e}", path.display()),
        ))
    })
}

fn load_graph(path: &Path) -> Result<Graph, Error> {
    build_graph(&read_to_string(path)?)
}

fn load_coloring(path: &Path) -> Result<Coloring, Error> {
    parse_coloring(&read_to_string(path)?)
}

fn write_output(path: &Path, text: &str, mirror: bool) -> Result<(), Error> {
    dhopc_core::io::write_text_file(path, text)?;
    if mirror {
        print!("{text}");
    }
    Ok(())
}

fn emit_result<T: Serialize>(cli: &Cli, human: String, value: &T) {
    if cli.json_stdout {
        print!("{}", to_pretty_json(value));
    } else {
        println!("{human}");
    }
}

#[derive(Serialize)]
struct ColorResult<'a> {
    schema: &'static str,
    #[serde(flatten)]
    stats: &'a ColoringStats,
}

#[derive(Serialize)]
struct VerifyResult {
    schema: &'static str,
    valid: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    violation: Option<dhopc_core::coloring::DhopViolation>,
}

#[derive(Serialize)]
struct DistinguishResult {
    schema: &'static str,
    distinguishable: bool,
}

#[derive(Serialize)]
struct ScalarResult {
    schema: &'static str,
    value: f64,
}

#[derive(Serialize)]
struct BoundResult {
    schema: &'static str,
    quantity: &'static str,
    value: f64,
    log_base: &'static str,
}

#[derive(Serialize)]
struct ReconstructFile {
    schema: &'static str,
    d: u64,
    views: Vec<ViewDump>,
    oracle_match: Vec<bool>,
    all_match: bool,
}

#[derive(Serialize)]
struct MisFile {
    schema: &'static str,
    chosen: Vec<u64>,
    rounds: u64,
}

fn run(cli: &Cli) -> Result<ExitCode, Error> {
    match &cli.command {
        Command::Color(a) => {
            let g = load_graph(&a.input)?;
            let (coloring, stats) = greedy_dhop_unique(&g, a.d)?;
            write_output(&a.output, &write_coloring(&coloring), cli.json_stdout)?;
            if let Some(stats_path) = &a.stats {
                let doc = ColorResult {
                    schema: RESULT_SCHEMA,
                    stats: &stats,
                };
                dhopc_core::io::write_text_file(stats_path, &to_pretty_json(&doc))?;
            }
            if !cli.json_stdout {
                println!(
                    "colored {} nodes with {} colors (delta_2d={}, bound={}, within_bound={}, {:.3}s)",
                    g.num_nodes(),
                    coloring.num_colors(),
                    stats.delta_2d,
                    stats.bound,
                    stats.within_bound,
                    stats.build_time.as_secs_f64(),
                );
            }
            Ok(ExitCode::SUCCESS)
        }
        Command::Verify(a) => {
            let g = load_graph(&a.input)?;
            let coloring = load_coloring(&a.coloring)?;
            let violation = find_dhop_violation(&g, &coloring, a.d)?;
            let result = VerifyResult {
                schema: RESULT_SCHEMA,
                valid: violation.is_none(),
                violation,
            };
            match violation {
                None => {
                    emit_result(
                        cli,
                        format!("valid: every {}-hop ball is rainbow", a.d),
                        &result,
                    );
                    Ok(ExitCode::SUCCESS)
                }
                Some(v) => {
                    emit_result(
                        cli,
                        format!(
                            "violation: nodes {} and {} share color {} inside the {}-hop ball of node {}",
                            v.first, v.second, v.color, a.d, v.center
                        ),
                        &result,
                    );
                    Ok(ExitCode::from(1))
                }
            }
        }
        Command::Power(a) => {
            let g = load_graph(&a.input)?;
            let p = power_graph(&g, a.k)?;
            write_output(&a.output, &write_graph(&p), cli.json_stdout)?;
            if !cli.json_stdout {
                println!(
                    "power graph k={}: {} nodes, {} edges",
                    a.k,
                    p.num_nodes(),
                    p.num_edges()
                );
            }
            Ok(ExitCode::SUCCESS)
        }
        Command::Encode(a) => {
            let ilp = parse_ilp(&read_to_string(&a.input)?)?;
            let bg = encode_bipartite(&ilp)?;
            write_output(&a.output, &write_bipartite(&bg), cli.json_stdout)?;
            if !cli.json_stdout {
                println!(
                    "encoded {} variables + {} constraints, {} edges",
                    bg.num_vars(),
                    bg.num_constraints(),
                    bg.graph().num_edges(),
                );
            }
            Ok(ExitCode::SUCCESS)
        }
        Command::Augment(a) => {
            let bg = parse_bipartite(&read_to_string(&a.input)?)?;
            let scheme: UidScheme = a.scheme.parse()?;
            let coloring = a.coloring.as_deref().map(load_coloring).transpose()?;
            let matrix = augment_features(&bg, scheme, coloring.as_ref(), a.seed)?;
            write_output(&a.output, &write_features(&matrix), cli.json_stdout)?;
            if !cli.json_stdout {
                println!(
                    "augmented {} nodes, scheme={}, dim={}",
                    matrix.num_rows(),
                    scheme.as_str(),
                    matrix.dim(),
                );
            }
            Ok(ExitCode::SUCCESS)
        }
        Command::Forward(a) => {
            let g = load_graph(&a.graph)?;
            let feats = parse_features(&read_to_string(&a.features)?)?;
            let coloring = a.coloring.as_deref().map(load_coloring).transpose()?;
            let (cfg, params) = match (&a.params, a.params_seed) {
                (Some(path), None) => parse_params(&read_to_string(path)?)?,
                (None, Some(seed)) => {
                    let cfg = GnnConfig {
                        depth: a.depth.unwrap(),
                        in_dim: feats.dim(),
                        hidden_dim: a.hidden_dim.unwrap(),
                        out_dim: a.out_dim.unwrap(),
                    };
                    let tables = coloring.as_ref().map_or(1, Coloring::num_colors);
                    (cfg, ParamSet::seeded(&cfg, tables, seed)?)
                }
                _ => {
                    return Err(Error::Validation(
                        "exactly one of --params / --params-seed is required".to_string(),
                    ))
                }
            };
            if let Some(dump) = &a.dump_params {
                dhopc_core::io::write_text_file(dump, &write_params(&cfg, &params))?;
            }
            let outputs = match &coloring {
                Some(c) => forward_colored(&g, c, &feats, &params, &cfg)?,
                None => forward(&g, &feats, &params, &cfg)?,
            };
            #[derive(Serialize)]
            struct OutputsFile {
                schema: &'static str,
                outputs: Vec<Vec<f64>>,
            }
            let doc = OutputsFile {
                schema: dhopc_core::mp::OUTPUTS_SCHEMA,
                outputs,
            };
            write_output(&a.output, &to_pretty_json(&doc), cli.json_stdout)?;
            if !cli.json_stdout {
                println!(
                    "forward pass: {} nodes, depth {}, out_dim {}",
                    g.num_nodes(),
                    cfg.depth,
                    cfg.out_dim,
                );
            }
            Ok(ExitCode::SUCCESS)
        }
        Command::Wl(a) => {
            let g = load_graph(&a.input)?;
            let init = match a.mode {
                WlMode::Anonymous => init_anonymous(g.num_nodes()),
                WlMode::Colored | WlMode::Coloruid => {
                    let path = a.coloring.as_deref().ok_or_else(|| {
                        Error::Validation("this mode requires --coloring".to_string())
                    })?;
                    let c = load_coloring(path)?;
                    if c.len() != g.num_nodes() {
                        return Err(Error::Validation(format!(
                            "coloring covers {} nodes, graph has {}",
                            c.len(),
                            g.num_nodes()
                        )));
                    }
                    match a.mode {
                        WlMode::Colored => init_colored(&c),
                        _ => init_label_color(&g, &c),
                    }
                }
            };
            let state = wl_hash(&g, &init, a.rounds)?;
            let report = WlReport::from_state(&state);
            write_output(&a.output, &to_pretty_json(&report), cli.json_stdout)?;
            if !cli.json_stdout {
                println!("wl rounds={} graph_hash={}", a.rounds, report.graph_hash);
            }
            Ok(ExitCode::SUCCESS)
        }
        Command::Distinguish(a) => {
            let g1 = load_graph(&a.g1)?;
            let g2 = load_graph(&a.g2)?;
            let scheme = match a.scheme {
                SchemeArg::Anonymous => DistinguishScheme::Anonymous,
                SchemeArg::LocalUid => DistinguishScheme::LocalUid,
            };
            let separated = distinguish(&g1, &g2, scheme, a.d, a.rounds)?;
            emit_result(
                cli,
                format!("distinguishable: {separated}"),
                &DistinguishResult {
                    schema: RESULT_SCHEMA,
                    distinguishable: separated,
                },
            );
            Ok(ExitCode::SUCCESS)
        }
        Command::Reconstruct(a) => {
            let g = load_graph(&a.graph)?;
            let coloring = load_coloring(&a.coloring)?;
            let views = local_view_simulate(&g, &coloring, a.d)?;
            let mut matches = Vec::with_capacity(views.len());
            for (v, view) in views.iter().enumerate() {
                matches.push(*view == oracle_view(&g, v, a.d, &coloring)?);
            }
            let all_match = matches.iter().all(|&m| m);
            let doc = ReconstructFile {
                schema: dhopc_core::local::VIEWS_SCHEMA,
                d: a.d as u64,
                views: views.iter().map(ViewDump::from_view).collect(),
                oracle_match: matches.clone(),
                all_match,
            };
            write_output(&a.output, &to_pretty_json(&doc), cli.json_stdout)?;
            if !cli.json_stdout {
                match matches.iter().position(|&m| !m) {
                    None => println!("views match the oracle at all {} nodes", views.len()),
                    Some(v) => println!("view of node {v} differs from the oracle"),
                }
            }
            Ok(if all_match {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            })
        }
        Command::Mis(a) => {
            let g = load_graph(&a.graph)?;
            let coloring = load_coloring(&a.coloring)?;
            let out = color_priority_mis(&g, &coloring)?;
            let doc = MisFile {
                schema: RESULT_SCHEMA,
                chosen: out.chosen.iter().map(|&v| v as u64).collect(),
                rounds: out.rounds as u64,
            };
            write_output(&a.output, &to_pretty_json(&doc), cli.json_stdout)?;
            if !cli.json_stdout {
                println!(
                    "independent set of {} nodes in {} rounds",
                    out.chosen.len(),
                    out.rounds,
                );
            }
            Ok(ExitCode::SUCCESS)
        }
        Command::Topm(a) => {
            let pair = parse_solutions(&read_to_string(&a.input)?)?;
            let value = top_m_error_with_cap(&pair, a.m, a.orbit_cap)?;
            emit_result(
                cli,
                format!("{value}"),
                &ScalarResult {
                    schema: RESULT_SCHEMA,
                    value,
                },
            );
            Ok(ExitCode::SUCCESS)
        }
        Command::Mse(a) => {
            let pair = parse_solutions(&read_to_string(&a.input)?)?;
            let value = mse(&pair.truth, &pair.predicted)?;
            emit_result(
                cli,
                format!("{value}"),
                &ScalarResult {
                    schema: RESULT_SCHEMA,
                    value,
                },
            );
            Ok(ExitCode::SUCCESS)
        }
        Command::Bound(a) => {
            let inputs = BoundInputs {
                precision_bits: a.p,
                num_colors: a.colors,
                theta_emb: a.theta_emb,
                theta_merge: a.theta_merge,
                depth: a.depth,
                delta: a.delta,
                num_samples: a.n,
                epsilon: a.epsilon,
            };
            let (quantity, value) = match (a.n, a.epsilon) {
                (Some(_), None) => ("generalization_gap_bound", gen_gap_bound(&inputs)?),
                (None, Some(_)) => ("sample_complexity", sample_complexity(&inputs)? as f64),
                _ => {
                    return Err(Error::Validation(
                        "exactly one of --n / --epsilon is required".to_string(),
                    ))
                }
            };
            emit_result(
                cli,
                format!("{value} ({quantity}, log base: natural)"),
                &BoundResult {
                    schema: RESULT_SCHEMA,
                    quantity,
                    value,
                    log_base: "natural",
                },
            );
            Ok(ExitCode::SUCCESS)
        }
        Command::Gen(GenCommand::Er(a)) => {
            let g = er_graph(a.nodes, a.edge_prob, a.seed)?;
            write_output(&a.output, &write_graph(&g), cli.json_stdout)?;
            if !cli.json_stdout {
                println!(
                    "G({}, {}) seed {}: {} edges",
                    a.nodes,
                    a.edge_prob,
                    a.seed,
                    g.num_edges()
                );
            }
            Ok(ExitCode::SUCCESS)
        }
        Command::Gen(GenCommand::Binpack(a)) => {
            let ilp = binpack_ilp(a.items, a.bins, a.seed)?;
            write_output(&a.output, &write_ilp(&ilp), cli.json_stdout)?;
            if !cli.json_stdout {
                println!(
                    "bin packing {}x{} seed {}: {} variables, {} constraints",
                    a.items, a.bins, a.seed, ilp.num_vars, ilp.num_constraints,
                );
            }
            Ok(ExitCode::SUCCESS)
        }
    }
}
