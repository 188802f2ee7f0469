//! `mixpf`: evaluate edge-coloring models on graphs, build connection
//! matrices and run the verification suites.
//!
//! Exit codes: 0 on success, 1 when a check fails, 2 on input errors.

use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::Instant;

use clap::{Args, Parser, Subcommand};
use serde_json::{json, Value};

use mixpf::connection::{connection_matrix, enumerate_fragments, exact_rank};
use mixpf::evaluator::{partition_function, Mode};
use mixpf::graph::text::{parse_fragments, parse_graph, write_fragment};
use mixpf::models::{builtin_model, model_from_json};
use mixpf::verify::{run_suite, Suite, SuiteOptions};
use mixpf::ExactModel;

#[derive(Parser)]
#[command(
    name = "mixpf",
    version,
    about = "Mixed partition functions of edge-coloring models"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
    /// Print a JSON run report instead of plain text.
    #[arg(long, global = true)]
    json: bool,
    /// Leave timing out of reports.
    #[arg(long, global = true)]
    no_timing: bool,
}

#[derive(Subcommand)]
enum Command {
    /// Evaluate a partition function on one graph.
    Eval {
        graph: PathBuf,
        #[command(flatten)]
        model: ModelArgs,
    },
    /// Exact rank of the connection matrix of a fragment family.
    Connrank {
        fragments: PathBuf,
        #[command(flatten)]
        model: ModelArgs,
        /// Write the matrix as CSV.
        #[arg(long)]
        csv: Option<PathBuf>,
    },
    /// Run a verification suite, or `all`.
    Verify {
        suite: String,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long)]
        max_vertices: Option<usize>,
        #[arg(long)]
        max_edges: Option<usize>,
        #[arg(long)]
        max_m: Option<usize>,
        #[arg(long)]
        k: Option<usize>,
        #[arg(long)]
        count: Option<usize>,
        #[arg(long)]
        trials: Option<usize>,
    },
    /// List every t-fragment within the bounds (isomorphic copies included).
    GenFragments {
        #[arg(long)]
        t: usize,
        /// Unlabelled vertices.
        #[arg(long, default_value_t = 2)]
        max_vertices: usize,
        /// Edges, open ends included.
        #[arg(long, default_value_t = 4)]
        max_edges: usize,
    },
}

#[derive(Args)]
struct ModelArgs {
    /// Built-in model, e.g. `matchings`, `charpoly?t=1/2`, `circuit-pos?k=2`.
    #[arg(
        long,
        conflicts_with = "model_file",
        required_unless_present = "model_file"
    )]
    model: Option<String>,
    /// Model in JSON form.
    #[arg(long)]
    model_file: Option<PathBuf>,
    #[arg(long, default_value = "mixed")]
    mode: Mode,
}

impl ModelArgs {
    /// Built-ins get `cap` as their degree cap.
    fn load(&self, cap: usize) -> Result<ExactModel, String> {
        match (&self.model, &self.model_file) {
            (Some(spec), _) => builtin_model(spec, cap).map_err(|e| format!("model {spec:?}: {e}")),
            (None, Some(path)) => {
                model_from_json(&read(path)?).map_err(|e| format!("{}: {e}", path.display()))
            }
            (None, None) => Err("no model given".into()),
        }
    }

    fn echo(&self) -> Value {
        json!({
            "model": self.model,
            "model_file": self.model_file.as_ref().map(|p| p.display().to_string()),
            "mode": self.mode.to_string(),
        })
    }
}

enum Failure {
    Input(String),
    Check,
}

impl From<String> for Failure {
    fn from(msg: String) -> Self {
        Failure::Input(msg)
    }
}

fn read(path: &Path) -> Result<String, String> {
    std::fs::read_to_string(path).map_err(|e| format!("{}: {e}", path.display()))
}

fn in_file(path: &Path) -> impl Fn(mixpf::Error) -> String + '_ {
    move |e| format!("{}: {e}", path.display())
}

struct Reporter {
    json: bool,
    no_timing: bool,
    start: Instant,
}

impl Reporter {
    fn finish(&self, mut report: Value, text: String) {
        if self.json {
            if !self.no_timing {
                report["elapsed_ms"] = json!(self.start.elapsed().as_secs_f64() * 1e3);
            }
            println!(
                "{}",
                serde_json::to_string_pretty(&report).expect("serializable")
            );
        } else {
            print!("{text}");
            if !self.no_timing {
                eprintln!("elapsed: {:.3?}", self.start.elapsed());
            }
        }
    }
}

fn eval(r: &Reporter, path: &Path, model: &ModelArgs) -> Result<(), Failure> {
    let g = parse_graph(&read(path)?).map_err(in_file(path))?;
    let h = model.load(g.max_degree())?;
    let result = partition_function(&g, &h, model.mode).map_err(|e| e.to_string())?;
    let report = json!({
        "command": "eval",
        "graph": path.display().to_string(),
        "args": model.echo(),
        "value": result.value,
        "subsets_visited": result.subsets_visited,
        "colorings_visited": result.colorings_visited,
    });
    if !r.json {
        eprintln!(
            "subsets visited: {}, colorings visited: {}",
            result.subsets_visited, result.colorings_visited
        );
    }
    r.finish(report, format!("{}\n", result.value));
    Ok(())
}

fn connrank(
    r: &Reporter,
    path: &Path,
    model: &ModelArgs,
    csv: Option<&Path>,
) -> Result<(), Failure> {
    let fragments = parse_fragments(&read(path)?).map_err(in_file(path))?;
    let cap = fragments
        .iter()
        .map(|f| f.max_internal_degree())
        .max()
        .unwrap_or(0);
    let h = model.load(cap)?;
    let n = fragments.len();
    let m = connection_matrix(fragments, &h, model.mode).map_err(|e| e.to_string())?;
    if let Some(csv) = csv {
        std::fs::write(csv, m.to_csv()).map_err(|e| format!("{}: {e}", csv.display()))?;
    }
    let rank = exact_rank(&m.entries);
    let dim = match model.mode {
        Mode::Ordinary => h.k(),
        Mode::Skew | Mode::Mixed => h.k() + h.two_ell(),
    };
    let bound = (dim as u128).checked_pow(m.t as u32);
    let pass = bound.is_none_or(|b| rank as u128 <= b);
    let bound_text = bound.map_or_else(|| format!("{dim}^{}", m.t), |b| b.to_string());
    let verdict = if pass { "PASS" } else { "FAIL" };
    let report = json!({
        "command": "connrank",
        "fragments": path.display().to_string(),
        "args": model.echo(),
        "t": m.t,
        "size": n,
        "rank": rank,
        "bound": bound_text,
        "pass": pass,
    });
    r.finish(
        report,
        format!(
            "{n} fragments, t = {}\nrank {rank} ≤ {bound_text} {verdict}\n",
            m.t
        ),
    );
    if pass {
        Ok(())
    } else {
        Err(Failure::Check)
    }
}

fn verify(r: &Reporter, name: &str, opts: &SuiteOptions) -> Result<(), Failure> {
    let suites: Vec<Suite> = if name == "all" {
        Suite::ALL.to_vec()
    } else {
        vec![name.parse().map_err(|e: mixpf::Error| e.to_string())?]
    };
    let mut text = String::new();
    let mut reports = Vec::new();
    let mut ok = true;
    for suite in suites {
        let report = run_suite(suite, opts).map_err(|e| e.to_string())?;
        ok &= report.ok();
        text.push_str(&format!(
            "{suite}: {} passed, {} failed {}\n",
            report.passed,
            report.failed,
            if report.ok() { "PASS" } else { "FAIL" }
        ));
        for note in &report.notes {
            text.push_str(&format!("  {note}\n"));
        }
        for c in report.cases.iter().filter(|c| !c.pass) {
            text.push_str(&format!(
                "  FAIL {}: {}\n    expected {}\n    actual   {}\n",
                c.id, c.input, c.expected, c.actual
            ));
        }
        reports.push(serde_json::to_value(&report).expect("serializable"));
    }
    let report = json!({
        "command": "verify",
        "suite": name,
        "args": {
            "seed": opts.seed,
            "max_vertices": opts.max_vertices,
            "max_edges": opts.max_edges,
            "max_m": opts.max_m,
            "k": opts.k,
            "count": opts.count,
            "trials": opts.trials,
        },
        "pass": ok,
        "suites": reports,
    });
    r.finish(report, text);
    if ok {
        Ok(())
    } else {
        Err(Failure::Check)
    }
}

fn gen_fragments(
    r: &Reporter,
    t: usize,
    max_vertices: usize,
    max_edges: usize,
) -> Result<(), Failure> {
    let fragments = enumerate_fragments(t, max_vertices, max_edges).map_err(|e| e.to_string())?;
    let texts: Vec<String> = fragments.iter().map(write_fragment).collect();
    let report = json!({
        "command": "gen-fragments",
        "args": { "t": t, "max_vertices": max_vertices, "max_edges": max_edges },
        "count": fragments.len(),
        "fragments": texts,
    });
    r.finish(report, texts.join("\n"));
    Ok(())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let r = Reporter {
        json: cli.json,
        no_timing: cli.no_timing,
        start: Instant::now(),
    };
    let outcome = match &cli.command {
        Command::Eval { graph, model } => eval(&r, graph, model),
        Command::Connrank {
            fragments,
            model,
            csv,
        } => connrank(&r, fragments, model, csv.as_deref()),
        Command::Verify {
            suite,
            seed,
            max_vertices,
            max_edges,
            max_m,
            k,
            count,
            trials,
        } => {
            let opts = SuiteOptions {
                seed: *seed,
                max_vertices: *max_vertices,
                max_edges: *max_edges,
                max_m: *max_m,
                k: *k,
                count: *count,
                trials: *trials,
            };
            verify(&r, suite, &opts)
        }
        Command::GenFragments {
            t,
            max_vertices,
            max_edges,
        } => gen_fragments(&r, *t, *max_vertices, *max_edges),
    };
    match outcome {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Check) => ExitCode::from(1),
        Err(Failure::Input(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
    }
}
