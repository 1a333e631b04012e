use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{bail, Context, Result};
use bimatch::constructions::parse_params;
use bimatch::search::verify_markdown;
use bimatch::{
    analyze, applicable_bounds, construct, count_max_matchings, count_max_matchings_oracle, diagnostics, find_min_phi,
    normalize_lemma22, odd_ear_decomposition, validate_ear_decomposition, verify_theorems, Bigraph, ClassConstraint,
    Family, SearchOptions, THEOREM_IDS,
};
use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;
use serde_json::{json, Value};

/// Largest side for which `count` also runs the enumeration oracle.
const CROSS_CHECK_SIDE: usize = 7;

#[derive(Parser)]
#[command(name = "bimatch", version, about = "Exact analysis of bipartite multigraphs")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Build a named construction; writes the graph and its predicted count.
    Construct {
        #[arg(long)]
        family: Family,
        /// Comma-separated `key=value`; list values use `:` (`lengths=1:3`).
        #[arg(long, default_value = "")]
        params: String,
        /// Graph file to write; the prediction goes to `<out>.phi.json`.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Hall, defect, surplus, tight sets and the other structure tests.
    Analyze {
        #[command(flatten)]
        io: Io,
    },
    /// Count maximum matchings, cross-checked on small graphs.
    Count {
        #[command(flatten)]
        io: Io,
    },
    /// Evaluate every lower bound against the graph.
    Bounds {
        #[command(flatten)]
        io: Io,
        #[arg(long, value_enum, default_value_t = Format::Markdown)]
        format: Format,
        /// Skip counting (no gap or violation columns).
        #[arg(long)]
        no_phi: bool,
    },
    /// Odd ear decomposition of an elementary graph.
    Decompose {
        #[command(flatten)]
        io: Io,
    },
    /// Transform into the normalized form with no more maximum matchings.
    Normalize {
        #[command(flatten)]
        io: Io,
    },
    /// Check theorems over every graph of a class.
    Verify {
        /// Theorem id, repeatable or comma-separated; `all` for every id.
        #[arg(long, required = true, value_delimiter = ',')]
        theorem: Vec<String>,
        #[command(flatten)]
        class: ClassArgs,
        #[command(flatten)]
        run: RunArgs,
    },
    /// Minimum count over a class together with all minimizers.
    Search {
        #[command(flatten)]
        class: ClassArgs,
        #[command(flatten)]
        run: RunArgs,
    },
}

#[derive(Args)]
struct Io {
    /// Graph file, JSON or terse text.
    #[arg(long)]
    input: PathBuf,
    /// Write the JSON result here instead of stdout.
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Markdown,
    Csv,
    Json,
}

#[derive(Args)]
struct ClassArgs {
    #[arg(long, default_value_t = 1)]
    nx_min: usize,
    #[arg(long, default_value_t = 3)]
    nx_max: usize,
    #[arg(long, default_value_t = 1)]
    ny_min: usize,
    #[arg(long, default_value_t = 4)]
    ny_max: usize,
    #[arg(long, default_value_t = 3)]
    mult_max: u32,
    #[arg(long)]
    hall: bool,
    #[arg(long)]
    x_surplus: bool,
    #[arg(long)]
    leafless: bool,
    #[arg(long)]
    elementary: bool,
    #[arg(long, default_value_t = 0)]
    min_deg_x: u64,
    #[arg(long, default_value_t = 0)]
    min_deg_y: u64,
    #[arg(long, default_value_t = 0)]
    min_nbrs_x: usize,
    #[arg(long, default_value_t = 0)]
    min_nbrs_y: usize,
    /// Exact `|E| - 2|Y|`.
    #[arg(long, allow_hyphen_values = true)]
    excess: Option<i64>,
}

impl ClassArgs {
    fn constraint(&self) -> ClassConstraint {
        ClassConstraint {
            nx_min: self.nx_min,
            nx_max: self.nx_max,
            ny_min: self.ny_min,
            ny_max: self.ny_max,
            max_mult: self.mult_max,
            hall: self.hall,
            x_surplus: self.x_surplus,
            leafless: self.leafless,
            elementary: self.elementary,
            min_deg_x: self.min_deg_x,
            min_deg_y: self.min_deg_y,
            min_nbrs_x: self.min_nbrs_x,
            min_nbrs_y: self.min_nbrs_y,
            excess: self.excess,
        }
    }
}

#[derive(Args)]
struct RunArgs {
    /// Keep isomorphic copies.
    #[arg(long)]
    no_dedup: bool,
    /// Worker threads (default: all cores).
    #[arg(long)]
    jobs: Option<usize>,
    /// Upper limit on the estimated number of candidate matrices.
    #[arg(long, default_value_t = 50_000_000)]
    budget: u128,
    /// Write the JSON report here; the Markdown table still goes to stdout.
    #[arg(long)]
    out: Option<PathBuf>,
    /// Print the JSON report on stdout instead of Markdown.
    #[arg(long)]
    json: bool,
}

impl RunArgs {
    fn options(&self) -> SearchOptions {
        SearchOptions { dedup: !self.no_dedup, budget: self.budget, jobs: self.jobs }
    }
}

/// Sorted keys, big integers already strings.
fn to_json<T: Serialize>(v: &T) -> Result<String> {
    let value: Value = serde_json::to_value(v)?;
    Ok(serde_json::to_string_pretty(&value)? + "\n")
}

fn read_graph(path: &Path) -> Result<Bigraph> {
    let text = fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
    Bigraph::parse(&text).with_context(|| format!("parsing {}", path.display()))
}

fn emit(out: Option<&Path>, text: &str) -> Result<()> {
    match out {
        Some(p) => fs::write(p, text).with_context(|| format!("writing {}", p.display())),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

/// Exit status of a completed run: 0, or 2 when bound violations were found.
type Status = u8;

fn run(cli: Cli) -> Result<Status> {
    match cli.command {
        Command::Construct { family, params, out } => {
            let c = construct(family, &parse_params(&params)?)?;
            let graph = format!("{}\n", c.graph.to_json());
            let sidecar = to_json(&json!({ "predicted_phi": c.predicted_phi.to_string() }))?;
            match out {
                Some(p) => {
                    emit(Some(&p), &graph)?;
                    let mut side = p.into_os_string();
                    side.push(".phi.json");
                    emit(Some(Path::new(&side)), &sidecar)?;
                }
                None => {
                    print!("{graph}");
                    eprint!("{sidecar}");
                }
            }
            Ok(0)
        }
        Command::Analyze { io } => {
            let g = read_graph(&io.input)?;
            let v = json!({ "report": analyze(&g)?, "diagnostics": diagnostics(&g)? });
            emit(io.out.as_deref(), &to_json(&v)?)?;
            Ok(0)
        }
        Command::Count { io } => {
            let g = read_graph(&io.input)?;
            let main = count_max_matchings(&g);
            let small = g.nx() <= CROSS_CHECK_SIDE && g.ny() <= CROSS_CHECK_SIDE;
            let (engine, count, agreement) = match main {
                Ok(m) if small => {
                    let o = count_max_matchings_oracle(&g);
                    if o != m {
                        bail!("engines disagree: permanent {} / {}, oracle {} / {}", m.size, m.count, o.size, o.count);
                    }
                    ("permanent", m, true)
                }
                Ok(m) => ("permanent", m, true),
                Err(e) if small => {
                    eprintln!("permanent route unavailable ({e}); counting by enumeration");
                    ("oracle", count_max_matchings_oracle(&g), true)
                }
                Err(e) => return Err(e.into()),
            };
            let v = json!({
                "alpha": count.size,
                "phi": count.count.to_string(),
                "engine": engine,
                "agreement": agreement,
                "cross_checked": small && engine == "permanent",
            });
            emit(io.out.as_deref(), &to_json(&v)?)?;
            Ok(0)
        }
        Command::Bounds { io, format, no_phi } => {
            let g = read_graph(&io.input)?;
            let report = applicable_bounds(&g, !no_phi)?;
            let text = match format {
                Format::Markdown => report.to_markdown(),
                Format::Csv => report.to_csv(),
                Format::Json => to_json(&report)?,
            };
            emit(io.out.as_deref(), &text)?;
            if !report.violations.is_empty() {
                eprintln!("violated: {}", report.violations.join(", "));
                return Ok(2);
            }
            Ok(0)
        }
        Command::Decompose { io } => {
            let g = read_graph(&io.input)?;
            let d = odd_ear_decomposition(&g)?;
            let check = validate_ear_decomposition(&g, &d);
            if !check.valid {
                bail!("internal error: decomposition failed validation: {:?}", check.reasons);
            }
            emit(io.out.as_deref(), &to_json(&json!({ "decomposition": d, "items": d.items() }))?)?;
            Ok(0)
        }
        Command::Normalize { io } => {
            let g = read_graph(&io.input)?;
            let n = normalize_lemma22(&g)?;
            let v = json!({ "graph": &n.graph, "k": n.k, "r": n.r, "steps": &n.steps });
            emit(io.out.as_deref(), &to_json(&v)?)?;
            Ok(0)
        }
        Command::Verify { theorem, class, run } => {
            let ids: Vec<&str> = if theorem.iter().any(|t| t == "all") {
                THEOREM_IDS.to_vec()
            } else {
                theorem.iter().map(String::as_str).collect()
            };
            let reports = verify_theorems(&ids, &class.constraint(), &run.options())?;
            let violations: usize = reports.iter().map(|r| r.violations.len()).sum();
            report(&run, &reports, &verify_markdown(&reports))?;
            Ok(if violations > 0 { 2 } else { 0 })
        }
        Command::Search { class, run } => {
            let rep = find_min_phi(&class.constraint(), &run.options())?;
            let mut md = String::from("| instances | dedup | min phi | witnesses |\n|---|---|---|---|\n");
            let min = rep.min_phi.as_ref().map_or("-".to_string(), ToString::to_string);
            md.push_str(&format!("| {} | {} | {} | {} |\n", rep.instances, rep.dedup, min, rep.witnesses.len()));
            for w in &rep.witnesses {
                md.push_str(&format!("\n    {w:?}"));
            }
            if !rep.witnesses.is_empty() {
                md.push('\n');
            }
            report(&run, &rep, &md)?;
            Ok(0)
        }
    }
}

fn report<T: Serialize>(run: &RunArgs, value: &T, markdown: &str) -> Result<()> {
    let json = to_json(value)?;
    if let Some(p) = &run.out {
        emit(Some(p), &json)?;
    }
    print!("{}", if run.json { json.as_str() } else { markdown });
    Ok(())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::FAILURE
        }
    }
}
