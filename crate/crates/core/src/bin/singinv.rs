use std::collections::BTreeMap;
use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use num_bigint::BigInt;
use serde_json::{json, Value};

use singinv::cohomology::{
    anticanonical_sequence, giraud_round, smoothing_report, LineBundleClass, SmoothingInputs,
};
use singinv::enumerate::run_enumeration;
use singinv::fixtures::graph_metadata;
use singinv::graph::{parse_graph, ResolutionGraph};
use singinv::quotient::{quotient_report, BrieskornQuotient};
use singinv::report::{self, envelope, error_json};
use singinv::seifert::{graded_report, h1_cutoff, h1_s_quasihomogeneous, SeifertData};
use singinv::selftest::{self, FixtureSet};
use singinv::Error;

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
}

#[derive(Parser)]
#[command(
    name = "singinv",
    version,
    about = "Exact invariants of normal surface singularities"
)]
struct Cli {
    /// Output format.
    #[arg(long, global = true, value_enum, default_value = "text")]
    format: Format,
    /// Print nothing on success; only the exit code matters.
    #[arg(long, global = true)]
    quiet: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Classification, cycles and cohomology dimensions of a resolution graph.
    Invariants { path: PathBuf },
    /// Giraud round-up [L] of a line bundle given by its degrees.
    Round {
        path: PathBuf,
        /// Degrees L.E_i in vertex order, comma separated.
        #[arg(
            long,
            value_delimiter = ',',
            allow_hyphen_values = true,
            conflicts_with = "minus_k"
        )]
        degrees: Option<Vec<BigInt>>,
        /// Round up -K instead.
        #[arg(long)]
        minus_k: bool,
    },
    /// Milnor and Tjurina numbers of a smoothing.
    Smoothing {
        path: PathBuf,
        #[arg(long, default_value_t = 0)]
        alpha: u64,
        #[arg(long = "h1O", default_value_t = 0)]
        h1_o: u64,
        #[arg(long = "h1S", default_value_t = 0)]
        h1_s: u64,
        /// Required for non-rational graphs.
        #[arg(long = "h1mKE")]
        h1_mke: Option<u64>,
    },
    /// Graded ring of a star-shaped graph given by Seifert data.
    Seifert {
        #[arg(long, default_value_t = 0)]
        genus: u32,
        #[arg(long, allow_hyphen_values = true)]
        b: Option<i64>,
        /// Arm type `n/q`; repeat for each arm.
        #[arg(long = "arm", value_parser = parse_arm)]
        arms: Vec<(i64, i64)>,
        /// Read `{"genus", "b", "arms"}` from a file instead.
        #[arg(long, conflicts_with_all = ["b", "arms"])]
        file: Option<PathBuf>,
        /// Highest degree piece to list.
        #[arg(long)]
        kmax: Option<u64>,
        #[arg(long = "h1mKE")]
        h1_mke: Option<u64>,
    },
    /// Character calculus for a cyclic quotient of a Brieskorn-Pham singularity.
    Quotient {
        #[arg(long, value_delimiter = ',', required = true)]
        exponents: Vec<u32>,
        #[arg(long)]
        order: u32,
        #[arg(long, value_delimiter = ',', required = true)]
        weights: Vec<u32>,
        /// Monomial basis file: one comma-separated exponent vector per line.
        #[arg(long)]
        basis: Option<PathBuf>,
    },
    /// Scan all weighted trees up to a size and check the identities.
    Enumerate {
        #[arg(long, default_value_t = 5)]
        max_vertices: usize,
        #[arg(long, default_value_t = -4, allow_hyphen_values = true)]
        min_weight: i64,
    },
    /// Order the curves so that H^0(-K restricted to each partial sum) = 0.
    Sequence { path: PathBuf },
    /// Run the built-in consistency suites.
    Selftest {
        /// Read fixtures from this directory instead of the embedded copies.
        #[arg(long)]
        fixtures: Option<PathBuf>,
        /// Run only these suites.
        #[arg(long = "suite")]
        suites: Vec<String>,
    },
}

fn parse_arm(s: &str) -> Result<(i64, i64), String> {
    let (n, q) = s.split_once('/').ok_or("expected n/q")?;
    let n = n.trim().parse().map_err(|_| format!("bad n in `{s}`"))?;
    let q = q.trim().parse().map_err(|_| format!("bad q in `{s}`"))?;
    Ok((n, q))
}

/// What a command produced: JSON body, text body and exit code.
struct Output {
    json: Value,
    text: String,
    code: i32,
}

fn read(path: &Path) -> Result<String, Error> {
    fs::read_to_string(path).map_err(|e| Error::InvalidArgument(format!("{}: {e}", path.display())))
}

fn load_graph(path: &Path) -> Result<(ResolutionGraph, String), Error> {
    let text = read(path)?;
    Ok((parse_graph(&text)?, text))
}

fn parse_basis(text: &str) -> Result<Vec<Vec<u32>>, Error> {
    let mut out = Vec::new();
    for (i, raw) in text.lines().enumerate() {
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let mono = line
            .split(',')
            .map(|t| t.trim().parse::<u32>())
            .collect::<Result<Vec<_>, _>>()
            .map_err(|e| Error::Parse {
                line: i + 1,
                message: e.to_string(),
            })?;
        out.push(mono);
    }
    Ok(out)
}

fn run(command: Command) -> Result<Output, Error> {
    match command {
        Command::Invariants { path } => {
            let (g, text) = load_graph(&path)?;
            let r = report::invariant_report(&g, graph_metadata(&text))?;
            Ok(Output {
                json: report::invariant_json(&r),
                text: report::invariant_text(&r),
                code: r.exit_code(),
            })
        }
        Command::Round {
            path,
            degrees,
            minus_k,
        } => {
            let (g, _) = load_graph(&path)?;
            let l = match (degrees, minus_k) {
                (_, true) => LineBundleClass::minus_canonical(&g),
                (Some(d), false) => {
                    if d.len() != g.len() {
                        return Err(Error::InvalidArgument(format!(
                            "{} degrees for {} curves",
                            d.len(),
                            g.len()
                        )));
                    }
                    LineBundleClass::new(d)
                }
                (None, false) => {
                    return Err(Error::InvalidArgument("give --degrees or --minus-k".into()))
                }
            };
            let r = giraud_round(&g, &l)?;
            Ok(Output {
                json: report::rounding_json(&g, &l.degrees, &r),
                text: report::rounding_text(&g, &r),
                code: 0,
            })
        }
        Command::Smoothing {
            path,
            alpha,
            h1_o,
            h1_s,
            h1_mke,
        } => {
            let (g, _) = load_graph(&path)?;
            let r = smoothing_report(
                &g,
                &SmoothingInputs {
                    alpha,
                    h1_o,
                    h1_s,
                    h1_mke,
                },
            )?;
            Ok(Output {
                json: report::smoothing_json(&r),
                text: report::smoothing_text(&r),
                code: 0,
            })
        }
        Command::Seifert {
            genus,
            b,
            arms,
            file,
            kmax,
            h1_mke,
        } => {
            let s = match file {
                Some(p) => SeifertData::from_json(&read(&p)?)?,
                None => {
                    let b = b.ok_or_else(|| Error::InvalidArgument("--b is required".into()))?;
                    SeifertData::new(genus, b, arms)?
                }
            };
            let kmax = kmax.unwrap_or_else(|| h1_cutoff(&s).min(60));
            let g = graded_report(&s, kmax)?;
            let h1_s = h1_s_quasihomogeneous(&s, h1_mke);
            Ok(Output {
                json: report::seifert_json(&s, &g, &h1_s),
                text: report::seifert_text(&s, &g, &h1_s),
                code: 0,
            })
        }
        Command::Quotient {
            exponents,
            order,
            weights,
            basis,
        } => {
            let q = BrieskornQuotient {
                exponents,
                order,
                weights,
                explicit_basis: match basis {
                    Some(p) => Some(parse_basis(&read(&p)?)?),
                    None => None,
                },
            };
            let r = quotient_report(&q)?;
            let ok = r.euler_ok && r.lefschetz_ok && r.isotypic_ok && r.verdict.holds;
            Ok(Output {
                json: report::quotient_json(&r),
                text: report::quotient_text(&r),
                code: if ok { 0 } else { 4 },
            })
        }
        Command::Enumerate {
            max_vertices,
            min_weight,
        } => {
            let s = run_enumeration(max_vertices, min_weight)?;
            Ok(Output {
                json: report::enumeration_json(&s),
                text: report::enumeration_text(&s),
                code: if s.failures.is_empty() { 0 } else { 4 },
            })
        }
        Command::Sequence { path } => {
            let (g, _) = load_graph(&path)?;
            let order = anticanonical_sequence(&g)?;
            Ok(Output {
                json: report::sequence_json(&g, &order),
                text: report::sequence_text(&g, &order),
                code: 0,
            })
        }
        Command::Selftest { fixtures, suites } => {
            let set = match fixtures {
                Some(dir) => FixtureSet::from_dir(&dir)?,
                None => FixtureSet::embedded(),
            };
            let results = selftest::run(&set, &suites)?;
            let passed = results.iter().all(|r| r.passed);
            let text: String = results
                .iter()
                .map(|r| {
                    format!(
                        "{} {:<14} {}\n",
                        if r.passed { "PASS" } else { "FAIL" },
                        r.name,
                        r.detail
                    )
                })
                .collect();
            let suites: BTreeMap<String, Value> = results
                .iter()
                .map(|r| {
                    (
                        r.name.clone(),
                        json!({"passed": r.passed, "detail": r.detail}),
                    )
                })
                .collect();
            Ok(Output {
                json: envelope("selftest", json!({"passed": passed, "suites": suites})),
                text,
                code: if passed { 0 } else { 4 },
            })
        }
    }
}

fn command_name(c: &Command) -> &'static str {
    match c {
        Command::Invariants { .. } => "invariants",
        Command::Round { .. } => "round",
        Command::Smoothing { .. } => "smoothing",
        Command::Seifert { .. } => "seifert",
        Command::Quotient { .. } => "quotient",
        Command::Enumerate { .. } => "enumerate",
        Command::Sequence { .. } => "sequence",
        Command::Selftest { .. } => "selftest",
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let name = command_name(&cli.command);
    let (json, text, code) = match run(cli.command) {
        Ok(o) => (o.json, o.text, o.code),
        Err(e) => {
            eprintln!("error: {e}");
            (error_json(name, &e), String::new(), e.exit_code())
        }
    };
    if !cli.quiet {
        match cli.format {
            Format::Json => println!(
                "{}",
                serde_json::to_string_pretty(&json).expect("JSON values serialize")
            ),
            Format::Text => print!("{text}"),
        }
    }
    ExitCode::from(code as u8)
}
