//! `trigon` — exact statistics of triangle weights over uniform random
//! triangulations of a convex polygon.
//!
//! Subcommands: `moments`, `dist`, `sample`, `portfolio`, `verify`,
//! `enumerate`. Data commands emit a JSON record (or CSV payload with
//! `--format csv`). Exit codes: 0 success, 1 domain error, 2 usage error,
//! 3 verification failure.

mod output;

use std::time::Instant;

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use output::{format_rat, format_real, moments_payload, payload_to_csv, Meta, OutputRecord};
use trigon::closed_form::{closed_moments, portfolio_probability, PortfolioQuery};
use trigon::gf;
use trigon::oracle::{self, Distribution, Verdict};
use trigon::polygon::{self, ENUMERATION_CAP};
use trigon::sampler::{SampleRun, TriangulationSampler};
use trigon::weights::{WeightSpec, WeightValue};
use trigon::PolygonSpec;

#[derive(Parser)]
#[command(
    name = "trigon",
    version,
    about = "Exact statistics of triangle weights over uniform random triangulations"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum MomentMethod {
    /// Exact generating-function engine
    Gf,
    /// Closed-form formulas (with the shift-invariant machinery as fallback)
    Closed,
    /// Floating-point interval recursion
    Numeric,
    /// Exhaustive enumeration
    #[value(name = "enum")]
    Enumerate,
    /// Seeded Monte Carlo estimate
    Mc,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum DistMethod {
    Gf,
    #[value(name = "enum")]
    Enumerate,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum DataFormat {
    Json,
    Csv,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum EnumFormat {
    Text,
    Json,
}

#[derive(Subcommand)]
enum Command {
    /// Mean and variance of a weight statistic
    Moments {
        #[arg(long)]
        n: usize,
        /// Weight spec: const1 | oneside | ears | oneside-w:<rat> | degree |
        /// bluesum | bluecount:<p> | curious-w:<rat> | perimeter | area |
        /// inradius | custom:<path>
        #[arg(long)]
        weight: String,
        #[arg(long, value_enum)]
        method: MomentMethod,
        /// Sample count (mc method only)
        #[arg(long, default_value_t = 100_000)]
        samples: u64,
        /// RNG seed (mc method only)
        #[arg(long, default_value_t = 42)]
        seed: u64,
        #[arg(long, value_enum, default_value = "json")]
        format: DataFormat,
    },
    /// Exact distribution of a weight statistic
    Dist {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        weight: String,
        #[arg(long, value_enum)]
        method: DistMethod,
        #[arg(long, value_enum, default_value = "json")]
        format: DataFormat,
    },
    /// Monte Carlo estimate from the uniform sampler
    Sample {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        weight: String,
        #[arg(long)]
        samples: u64,
        #[arg(long, default_value_t = 42)]
        seed: u64,
        /// Also list every sampled triangulation in text form
        #[arg(long)]
        emit_triangulations: bool,
        #[arg(long, value_enum, default_value = "json")]
        format: DataFormat,
    },
    /// Probability of an exact vertex-1 angle portfolio
    Portfolio {
        #[arg(long)]
        n: usize,
        /// Comma-separated counts k1,k2,... with sum(i*k_i) = n-2
        #[arg(long)]
        k: String,
        #[arg(long, value_enum, default_value = "json")]
        format: DataFormat,
    },
    /// Run the full cross-check matrix; exit 0 iff every comparison passes
    Verify {
        #[arg(long, default_value_t = 9)]
        n_max: usize,
        /// Monte Carlo samples per cross-check
        #[arg(long, default_value_t = 20_000)]
        samples: u64,
        #[arg(long, default_value_t = 42)]
        seed: u64,
        #[arg(long, value_enum, default_value = "json")]
        format: DataFormat,
    },
    /// List all triangulations of P_n in deterministic order
    Enumerate {
        #[arg(long)]
        n: usize,
        #[arg(long, value_enum, default_value = "text")]
        format: EnumFormat,
        /// Raise the enumeration cap (default 12)
        #[arg(long)]
        cap: Option<usize>,
    },
}

fn main() {
    let cli = Cli::parse();
    match run(cli.command) {
        Ok(code) => std::process::exit(code),
        Err(e) => {
            eprintln!("error: {e}");
            std::process::exit(1);
        }
    }
}

fn emit(record: &OutputRecord, format: DataFormat) {
    match format {
        DataFormat::Json => print!("{}", record.to_json()),
        DataFormat::Csv => print!("{}", payload_to_csv(&record.command, &record.payload)),
    }
}

fn run(command: Command) -> Result<i32, trigon::Error> {
    let start = Instant::now();
    match command {
        Command::Moments {
            n,
            weight,
            method,
            samples,
            seed,
            format,
        } => {
            let f = WeightSpec::parse(&weight)?;
            let geom = PolygonSpec::regular(n)?;
            let mc = method == MomentMethod::Mc;
            let payload = match method {
                MomentMethod::Gf => moments_payload(&gf::moments_exact(n, &f)?),
                MomentMethod::Closed => {
                    let (mean, var) = closed_moments(n, &f, Some(&geom))?;
                    let exact = matches!(
                        (&mean, &var),
                        (WeightValue::Exact(_), WeightValue::Exact(_))
                    );
                    json!({
                        "mean": output::format_weight_value(&mean),
                        "variance": output::format_weight_value(&var),
                        "exact": exact,
                    })
                }
                MomentMethod::Numeric => moments_payload(&gf::moments_numeric(n, &f, Some(&geom))?),
                MomentMethod::Enumerate => {
                    moments_payload(&oracle::exact_moments(n, &f, Some(&geom))?)
                }
                MomentMethod::Mc => {
                    let run = SampleRun {
                        n,
                        weight: f.clone(),
                        samples,
                        seed,
                    };
                    let est = oracle::monte_carlo(&run, Some(&geom))?;
                    json!({
                        "mean": format_real(est.mean),
                        "stderr": format_real(est.stderr),
                        "samples": est.samples,
                        "exact": false,
                    })
                }
            };
            let record = OutputRecord {
                command: "moments".into(),
                n: Some(n as u64),
                weight: Some(f.name()),
                method: Some(method_name(method).into()),
                payload,
                meta: Meta {
                    seed: mc.then_some(seed),
                    samples: mc.then_some(samples),
                    runtime_ms: start.elapsed().as_millis() as u64,
                },
            };
            emit(&record, format);
            Ok(0)
        }

        Command::Dist {
            n,
            weight,
            method,
            format,
        } => {
            let f = WeightSpec::parse(&weight)?;
            let geom = PolygonSpec::regular(n)?;
            let entries: Vec<Value> = match method {
                DistMethod::Gf => gf::distribution(n, &f)?
                    .entries()
                    .iter()
                    .map(|(v, p)| json!({ "value": format_rat(v), "prob": format_rat(p) }))
                    .collect(),
                DistMethod::Enumerate => match oracle::exact_distribution(n, &f, Some(&geom))? {
                    Distribution::Exact(t) => t
                        .entries()
                        .iter()
                        .map(|(v, p)| json!({ "value": format_rat(v), "prob": format_rat(p) }))
                        .collect(),
                    Distribution::Clustered(t) => t
                        .entries
                        .iter()
                        .map(|(v, p)| output::real_entry(*v, p))
                        .collect(),
                },
            };
            let record = OutputRecord {
                command: "dist".into(),
                n: Some(n as u64),
                weight: Some(f.name()),
                method: Some(
                    match method {
                        DistMethod::Gf => "gf",
                        DistMethod::Enumerate => "enum",
                    }
                    .into(),
                ),
                payload: json!({ "entries": entries }),
                meta: Meta {
                    seed: None,
                    samples: None,
                    runtime_ms: start.elapsed().as_millis() as u64,
                },
            };
            emit(&record, format);
            Ok(0)
        }

        Command::Sample {
            n,
            weight,
            samples,
            seed,
            emit_triangulations,
            format,
        } => {
            let f = WeightSpec::parse(&weight)?;
            let geom = PolygonSpec::regular(n)?;
            let run = SampleRun {
                n,
                weight: f.clone(),
                samples,
                seed,
            };
            let est = oracle::monte_carlo(&run, Some(&geom))?;
            let mut payload = json!({
                "mean": format_real(est.mean),
                "stderr": format_real(est.stderr),
                "samples": est.samples,
            });
            if emit_triangulations {
                payload["triangulations"] = Value::Array(
                    replay_samples(n, samples, seed)?
                        .into_iter()
                        .map(Value::String)
                        .collect(),
                );
            }
            let record = OutputRecord {
                command: "sample".into(),
                n: Some(n as u64),
                weight: Some(f.name()),
                method: Some("mc".into()),
                payload,
                meta: Meta {
                    seed: Some(seed),
                    samples: Some(samples),
                    runtime_ms: start.elapsed().as_millis() as u64,
                },
            };
            emit(&record, format);
            Ok(0)
        }

        Command::Portfolio { n, k, format } => {
            let counts = parse_k(&k)?;
            let query = PortfolioQuery::new(n, counts)?;
            let p = portfolio_probability(&query)?;
            let record = OutputRecord {
                command: "portfolio".into(),
                n: Some(n as u64),
                weight: None,
                method: Some("closed".into()),
                payload: json!({
                    "probability": format_rat(&p),
                    "k": query.k(),
                    "K": query.total_count(),
                }),
                meta: Meta {
                    seed: None,
                    samples: None,
                    runtime_ms: start.elapsed().as_millis() as u64,
                },
            };
            emit(&record, format);
            Ok(0)
        }

        Command::Verify {
            n_max,
            samples,
            seed,
            format,
        } => {
            let reports = oracle::verification_matrix(n_max, samples, seed)?;
            let mut failures = 0usize;
            let mut checks_total = 0usize;
            let report_values: Vec<Value> = reports
                .iter()
                .map(|r| {
                    let checks: Vec<Value> = r
                        .checks
                        .iter()
                        .map(|c| {
                            checks_total += 1;
                            if c.verdict == Verdict::Fail {
                                failures += 1;
                            }
                            json!({
                                "name": c.name,
                                "verdict": c.verdict.to_string(),
                                "detail": c.detail,
                            })
                        })
                        .collect();
                    json!({ "n": r.n, "weight": r.weight, "checks": checks })
                })
                .collect();
            let pass = failures == 0;
            let record = OutputRecord {
                command: "verify".into(),
                n: Some(n_max as u64),
                weight: None,
                method: None,
                payload: json!({
                    "n_max": n_max,
                    "reports": report_values,
                    "checks_total": checks_total,
                    "failures": failures,
                    "pass": pass,
                }),
                meta: Meta {
                    seed: Some(seed),
                    samples: Some(samples),
                    runtime_ms: start.elapsed().as_millis() as u64,
                },
            };
            emit(&record, format);
            Ok(if pass { 0 } else { 3 })
        }

        Command::Enumerate { n, format, cap } => {
            let cap = cap.unwrap_or(ENUMERATION_CAP);
            let mut forms = Vec::new();
            polygon::visit_triangulations_with_cap(n, cap, |t| forms.push(t.text_form()))?;
            match format {
                EnumFormat::Text => {
                    for t in &forms {
                        println!("{t}");
                    }
                }
                EnumFormat::Json => {
                    let record = OutputRecord {
                        command: "enumerate".into(),
                        n: Some(n as u64),
                        weight: None,
                        method: None,
                        payload: json!({
                            "count": forms.len(),
                            "triangulations": forms,
                        }),
                        meta: Meta {
                            seed: None,
                            samples: None,
                            runtime_ms: start.elapsed().as_millis() as u64,
                        },
                    };
                    print!("{}", record.to_json());
                }
            }
            Ok(0)
        }
    }
}

fn method_name(m: MomentMethod) -> &'static str {
    match m {
        MomentMethod::Gf => "gf",
        MomentMethod::Closed => "closed",
        MomentMethod::Numeric => "numeric",
        MomentMethod::Enumerate => "enum",
        MomentMethod::Mc => "mc",
    }
}

/// Comma list `k1,k2,...` of nonnegative counts.
fn parse_k(s: &str) -> Result<Vec<u64>, trigon::Error> {
    s.split(',')
        .map(|p| {
            p.trim().parse::<u64>().map_err(|_| {
                trigon::Error::Formula(trigon::closed_form::FormulaError::PortfolioConstraint {
                    detail: format!("bad count {p:?} in k list"),
                })
            })
        })
        .collect()
}

/// Regenerate the exact sample sequence of a run (same block/stream layout
/// as the Monte Carlo estimator) as text forms.
fn replay_samples(n: usize, samples: u64, seed: u64) -> Result<Vec<String>, trigon::Error> {
    const BLOCK: u64 = oracle::MC_BLOCK;
    let mut out = Vec::with_capacity(samples as usize);
    for block in 0..samples.div_ceil(BLOCK) {
        let lo = block * BLOCK;
        let hi = (lo + BLOCK).min(samples);
        let mut sampler = TriangulationSampler::with_stream(n, seed, block)?;
        for _ in lo..hi {
            out.push(sampler.sample().text_form());
        }
    }
    Ok(out)
}
