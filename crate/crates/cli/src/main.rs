use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use serde::Serialize;
use serde_json::{json, Value};

use phibeta::harness::{self, ScanConfig, CSV_HEADER};
use phibeta::oracle;
use phibeta::pairgraph::{self, PairGraph};
use phibeta::quotients::{self, EnumerationMode, DEFAULT_FULL_CAP};
use phibeta::series;
use phibeta::{Error, Word};

#[derive(Parser)]
#[command(name = "phibeta", version, about = "Primitivity-rank and fixed-point statistics of free-group words")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Csv,
    Dot,
    Text,
}

#[derive(Subcommand)]
enum Command {
    /// Index of the first nonzero series coefficient.
    Phi {
        #[arg(long)]
        word: String,
        #[arg(long, default_value_t = 2)]
        imax: usize,
        /// Fall back to full enumeration when the coefficients up to imax vanish.
        #[arg(long)]
        full: bool,
        #[arg(long, value_enum, default_value_t = Format::Json)]
        format: Format,
    },
    /// Least Euler characteristic of a type-B quotient.
    Beta {
        #[arg(long)]
        word: String,
        #[arg(long, default_value_t = 3)]
        chi_budget: u32,
        #[arg(long)]
        full: bool,
        #[arg(long, value_enum, default_value_t = Format::Json)]
        format: Format,
    },
    /// Series coefficients and, when affordable, the closed rational form.
    Series {
        #[arg(long)]
        word: String,
        #[arg(long, default_value_t = 2)]
        imax: usize,
        #[arg(long, default_value_t = 3)]
        chi_budget: u32,
        #[arg(long, value_enum, default_value_t = Format::Json)]
        format: Format,
    },
    /// Realizable quotients of the trail of a word.
    Quotients {
        #[arg(long)]
        word: String,
        /// Only quotients with χ up to this value; full enumeration otherwise.
        #[arg(long)]
        max_chi: Option<u32>,
        #[arg(long, default_value_t = DEFAULT_FULL_CAP)]
        cap: usize,
        #[arg(long, value_enum, default_value_t = Format::Json)]
        format: Format,
    },
    /// Pair graph of the universal graph, with its components.
    Upsilon {
        #[arg(long)]
        word: String,
        #[arg(long, value_enum, default_value_t = Format::Json)]
        format: Format,
    },
    /// Recursive factorization of every component of the pair graph.
    Factorize {
        #[arg(long)]
        word: String,
        #[arg(long, value_enum, default_value_t = Format::Json)]
        format: Format,
    },
    /// Checks the component/quotient correspondence for one word.
    VerifyBijection {
        #[arg(long)]
        word: String,
    },
    /// Exact expected number of fixed points.
    Expect {
        #[arg(long)]
        word: String,
        #[arg(long)]
        n: u64,
        /// Also compute the value by brute force over the symmetric group.
        #[arg(long)]
        oracle: bool,
        /// Largest number of permutation tuples the brute force may visit.
        #[arg(long, default_value_t = 100_000_000)]
        budget: u128,
    },
    /// Monte-Carlo estimate of the expected number of fixed points.
    Mc {
        #[arg(long)]
        word: String,
        #[arg(long)]
        n: usize,
        #[arg(long, default_value_t = 100_000)]
        samples: u64,
        #[arg(long, default_value_t = 1)]
        seed: u64,
    },
    /// Runs every consistency check over a corpus of words.
    Scan {
        #[arg(long)]
        k: u8,
        #[arg(long)]
        max_len: usize,
        #[arg(long, default_value_t = 2)]
        imax: usize,
        #[arg(long, default_value_t = 3)]
        chi_budget: u32,
        #[arg(long)]
        no_shift: bool,
        #[arg(long)]
        no_inversion: bool,
        #[arg(long)]
        relabel: bool,
        #[arg(long, default_value_t = 0)]
        workers: usize,
        #[arg(long)]
        timings: bool,
        #[arg(long, value_enum, default_value_t = Format::Json)]
        format: Format,
    },
}

enum Failure {
    Usage(String),
    Violation(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::Internal(_) => Failure::Violation(e.to_string()),
            other => Failure::Usage(other.to_string()),
        }
    }
}

type Outcome = Result<bool, Failure>;

fn parse_word(text: &str) -> Result<Word, Failure> {
    Word::parse(text, None).map_err(Failure::from)
}

fn unsupported(cmd: &str, format: Format) -> Failure {
    let name = format.to_possible_value().map(|v| v.get_name().to_string()).unwrap_or_default();
    Failure::Usage(format!("{cmd} does not support --format {name}"))
}

fn print_json(v: &impl Serialize) {
    println!("{}", serde_json::to_string_pretty(v).expect("serializable output"));
}

fn run(cmd: Command) -> Outcome {
    match cmd {
        Command::Phi { word, imax, full, format } => {
            let w = parse_word(&word)?;
            let level = series::phi(&w, imax, full)?;
            match format {
                Format::Json => print_json(&level),
                Format::Text => println!("{level}"),
                f => return Err(unsupported("phi", f)),
            }
            Ok(true)
        }
        Command::Beta { word, chi_budget, full, format } => {
            let w = parse_word(&word)?;
            let level = quotients::beta(&w, chi_budget, full, DEFAULT_FULL_CAP)?;
            match format {
                Format::Json => print_json(&level),
                Format::Text => println!("{level}"),
                f => return Err(unsupported("beta", f)),
            }
            Ok(true)
        }
        Command::Series { word, imax, chi_budget, format } => {
            let w = parse_word(&word)?;
            let coeffs = series::series_coeffs(&w, imax)?;
            let phi = series::level_from_coeffs(&coeffs.coeffs);
            let a: Vec<String> = coeffs.coeffs.iter().map(|c| c.to_string()).collect();
            let beta = quotients::beta(&w, chi_budget, false, DEFAULT_FULL_CAP)?;
            let rational = match series::phi_function(&w) {
                Ok(f) => Some(f),
                Err(Error::Resource { .. }) => None,
                Err(e) => return Err(e.into()),
            };
            match format {
                Format::Json => print_json(&json!({
                    "word": w,
                    "k": w.k(),
                    "coeffs": a,
                    "phi": phi,
                    "beta": beta,
                    "rational": rational,
                })),
                Format::Text => {
                    println!("a = ({})", a.join(", "));
                    println!("phi = {phi}");
                    println!("beta = {beta}");
                    if let Some(f) = rational {
                        println!("Phi(n) = {f}");
                    }
                }
                f => return Err(unsupported("series", f)),
            }
            Ok(true)
        }
        Command::Quotients { word, max_chi, cap, format } => {
            let w = parse_word(&word)?;
            let mode = max_chi.map_or(EnumerationMode::Full, EnumerationMode::UpToChi);
            let graphs = quotients::enumerate_qw(&w, mode, cap)?;
            match format {
                Format::Json => print_json(&json!({ "word": w, "count": graphs.len(), "quotients": graphs })),
                Format::Dot => {
                    for (i, g) in graphs.iter().enumerate() {
                        print!("{}", g.to_dot(&format!("q{i}")));
                    }
                }
                Format::Text => {
                    for g in &graphs {
                        let t = g.type_tag().map(|t| format!("{t:?}")).unwrap_or_else(|| "-".into());
                        println!("{}  chi={}  type={t}  shape={:?}", g.partition(), g.chi(), g.shape());
                    }
                }
                f => return Err(unsupported("quotients", f)),
            }
            Ok(true)
        }
        Command::Upsilon { word, format } => {
            let w = parse_word(&word)?;
            let u = PairGraph::build(&w)?;
            let comps = u.components()?;
            match format {
                Format::Json => print_json(&json!({
                    "word": w,
                    "vertices": u.vertices().len(),
                    "edges": u.edges(),
                    "components": comps,
                })),
                Format::Dot => print!("{}", u.to_dot(&comps)),
                f => return Err(unsupported("upsilon", f)),
            }
            Ok(true)
        }
        Command::Factorize { word, format } => {
            let w = parse_word(&word)?;
            let u = PairGraph::build(&w)?;
            let comps = u.components()?;
            let mut out = Vec::with_capacity(comps.len());
            for c in &comps {
                let fac = pairgraph::factorize(c, &w)?;
                out.push(json!({ "component": c.id, "kind": c.kind, "factorization": fac }));
            }
            match format {
                Format::Json => print_json(&json!({ "word": w, "components": out })),
                Format::Text => {
                    for (c, v) in comps.iter().zip(&out) {
                        let steps: Vec<String> = v["factorization"]["steps"]
                            .as_array()
                            .into_iter()
                            .flatten()
                            .filter_map(|s| s["expression"].as_str().map(String::from))
                            .collect();
                        println!("{}: {:?}  {}  {}", c.id, c.kind, steps.join(" -> "), v["factorization"]["shape"]);
                    }
                }
                f => return Err(unsupported("factorize", f)),
            }
            Ok(true)
        }
        Command::VerifyBijection { word } => {
            let w = parse_word(&word)?;
            let report = pairgraph::verify_bijection(&w)?;
            print_json(&report);
            Ok(report.ok)
        }
        Command::Expect { word, n, oracle, budget } => {
            let w = parse_word(&word)?;
            let value = series::expected_fixed_points(&w, n)?;
            let mut out = json!({ "word": w, "n": n, "mode": "exact", "value": value.to_string() });
            let mut ok = true;
            if oracle {
                let n = usize::try_from(n).map_err(|_| Failure::Usage(format!("n = {n} too large")))?;
                let brute = oracle::exact_expectation(&w, n, budget)?;
                ok = brute == value;
                out["oracle"] = Value::String(brute.to_string());
                out["equal"] = Value::Bool(ok);
            }
            print_json(&out);
            Ok(ok)
        }
        Command::Mc { word, n, samples, seed } => {
            let w = parse_word(&word)?;
            let est = oracle::monte_carlo_expectation(&w, n, samples, seed)?;
            print_json(&json!({
                "word": w,
                "n": n,
                "mode": "mc",
                "mean": est.mean,
                "stderr": est.std_error,
                "samples": est.samples,
                "seed": est.seed,
                "prng": est.prng,
            }));
            Ok(true)
        }
        Command::Scan { k, max_len, imax, chi_budget, no_shift, no_inversion, relabel, workers, timings, format } => {
            let cfg = ScanConfig {
                k,
                max_len,
                i_max: imax,
                chi_budget,
                shift: !no_shift,
                inversion: !no_inversion,
                relabel,
                workers,
                timings,
            };
            cfg.validate()?;
            let result = harness::scan(&cfg)?;
            match format {
                Format::Json => print_json(&result),
                Format::Csv => {
                    println!("{CSV_HEADER}");
                    for r in &result.records {
                        println!("{}", r.csv_line());
                    }
                }
                Format::Text => {
                    println!("words: {}", result.summary.words);
                    for (name, count) in &result.summary.violations {
                        println!("{name}: {count} violations");
                    }
                    for w in &result.summary.failing_words {
                        println!("failing: {w}");
                    }
                }
                f => return Err(unsupported("scan", f)),
            }
            Ok(result.summary.total_violations() == 0)
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli.command) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(Failure::Violation(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(1)
        }
        Err(Failure::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
    }
}
