use std::io::Write;
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::Instant;

use anyhow::{bail, Context, Result};
use clap::{Parser, Subcommand};
use serde_json::{json, Value};

use changemaker::cmlat::{self, cm_build};
use changemaker::intlat::{self, DEFAULT_BUDGET};
use changemaker::knotdiag::{self, PDCode};
use changemaker::ratcf::Slope;
use changemaker::recognizer::{self, EmbeddingCertificate};
use changemaker::surgery::{self, AlexPoly, VSeq};

#[derive(Parser, Debug)]
#[command(name = "changemaker", version, about = "Changemaker lattices and alternating surgeries")]
struct Cli {
    /// Upper bound on search steps for every enumeration.
    #[arg(long, global = true, default_value_t = DEFAULT_BUDGET)]
    budget: u64,
    /// Emit the JSON report on standard output (the default).
    #[arg(long, global = true, default_value_t = true)]
    json: bool,
    /// Suppress all output; only the exit code is meaningful.
    #[arg(long, short, global = true)]
    quiet: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Goeritz matrix, determinant and signature of a PD code.
    Goeritz { pd: PathBuf },
    /// Decide whether a reduced alternating knot diagram has unknotting number one.
    UnknottingOne { pd: PathBuf },
    /// Decide whether the diagram's Goeritz lattice is a p/q-changemaker lattice.
    AltSurgery {
        pd: PathBuf,
        #[arg(long)]
        slope: Slope,
    },
    /// Build the changemaker lattice with the given stable coefficients.
    CmBuild {
        #[arg(long)]
        slope: Slope,
        #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
        stable: Vec<i64>,
    },
    /// Recover the stable coefficients from V_0, V_1, ...
    RecoverStable {
        #[arg(long)]
        vseq: VSeq,
    },
    /// d-invariants of p/q surgery on a knot given by its Alexander polynomial or as a torus knot.
    DInv {
        #[arg(long)]
        slope: Slope,
        #[arg(long, conflicts_with = "torus")]
        alexander: Option<AlexPoly>,
        #[arg(long, value_delimiter = ',', num_args = 1)]
        torus: Option<Vec<i64>>,
    },
    /// Slope of a tangle given by a chain of white regions and its crossings.
    TangleSlope {
        pd: PathBuf,
        /// White region indices v_0, ..., v_l followed by the outer region.
        #[arg(long, value_delimiter = ',', required = true)]
        regions: Vec<usize>,
        /// Crossing indices inside the tangle.
        #[arg(long, value_delimiter = ',', required = true)]
        crossings: Vec<usize>,
    },
    /// Whether a slope is certified characterizing for a torus knot.
    CharSlope {
        #[arg(long, value_delimiter = ',', num_args = 1)]
        torus: Vec<i64>,
        #[arg(long)]
        slope: Slope,
    },
    /// Reduce a half-integer certificate to a clasp.
    Reduce { certificate: PathBuf },
}

struct Outcome {
    inputs: Value,
    result: Value,
    decision: Option<bool>,
}

fn read_pd(path: &Path) -> Result<PDCode> {
    let text = std::fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
    Ok(knotdiag::parse_pd(&text)?)
}

fn torus_pair(v: &[i64]) -> Result<(i64, i64)> {
    match v {
        [r, s] => Ok((*r, *s)),
        _ => bail!("--torus expects two integers r,s"),
    }
}

fn rationals(xs: &[num_rational::Ratio<i64>]) -> Vec<String> {
    xs.iter().map(|x| x.to_string()).collect()
}

fn to_json<T: serde::Serialize>(x: &T) -> Result<Value> {
    Ok(serde_json::to_value(x)?)
}

fn execute(command: &Command, budget: u64) -> Result<Outcome> {
    let out = match command {
        Command::Goeritz { pd } => {
            let code = read_pd(pd)?;
            let d = knotdiag::color_and_white_graph(&code)?;
            let det = knotdiag::determinant(&d)?;
            let signature = if d.alternating { Some(knotdiag::signature(&d)?) } else { None };
            Outcome {
                inputs: json!({ "pd": code.to_string() }),
                result: json!({
                    "gram": to_json(d.goeritz())?,
                    "determinant": det,
                    "signature": signature,
                    "alternating": d.alternating,
                    "reduced": d.is_reduced(),
                    "components": code.component_count(),
                    "white_regions": d.white_data.regions,
                    "white_edges": d.white_graph().edges(),
                    "edge_crossing": d.white_data.edge_crossing,
                }),
                decision: None,
            }
        }
        Command::UnknottingOne { pd } => {
            let code = read_pd(pd)?;
            let report = recognizer::unknotting_one(&code, budget)?;
            Outcome {
                inputs: json!({ "pd": code.to_string() }),
                decision: Some(report.unknotting_one),
                result: to_json(&report)?,
            }
        }
        Command::AltSurgery { pd, slope } => {
            let code = read_pd(pd)?;
            let report = recognizer::alternating_surgery(&code, *slope, budget)?;
            Outcome {
                inputs: json!({ "pd": code.to_string(), "slope": slope }),
                decision: Some(report.found),
                result: to_json(&report)?,
            }
        }
        Command::CmBuild { slope, stable } => {
            let lat = cm_build(*slope, stable)?;
            cmlat::verify(&lat)?;
            let disc = intlat::discriminant(&lat.gram)?;
            Outcome {
                inputs: json!({ "slope": slope, "stable": stable }),
                result: json!({ "lattice": to_json(&lat)?, "discriminant": disc }),
                decision: Some(true),
            }
        }
        Command::RecoverStable { vseq } => {
            let stable = surgery::recover_stable(vseq)?;
            Outcome {
                inputs: json!({ "vseq": vseq.values() }),
                result: json!({ "stable": stable, "genus": cmlat::genus(&stable) }),
                decision: Some(true),
            }
        }
        Command::DInv { slope, alexander, torus } => {
            let (poly, knot) = match (alexander, torus) {
                (Some(a), _) => (a.clone(), json!({ "alexander": a.to_string() })),
                (None, Some(t)) => {
                    let (r, s) = torus_pair(t)?;
                    (surgery::torus_tools(r, s)?.alexander, json!({ "torus": [r, s] }))
                }
                (None, None) => (AlexPoly::unknot(), json!("unknot")),
            };
            let v = VSeq::from_alexander(&poly)?;
            let lens = surgery::lens_d_invariants(*slope)?;
            let lens_d: Vec<_> = lens.iter().map(|s| s.d).collect();
            let d = surgery::surgery_d_invariants(*slope, &v)?;
            Outcome {
                inputs: json!({ "slope": slope, "knot": knot }),
                result: json!({
                    "vseq": v.values(),
                    "lens_d": rationals(&lens_d),
                    "d": rationals(&d),
                }),
                decision: None,
            }
        }
        Command::TangleSlope { pd, regions, crossings } => {
            let code = read_pd(pd)?;
            let d = knotdiag::color_and_white_graph(&code)?;
            let Some((&outer, chain)) = regions.split_last() else {
                bail!("--regions needs at least two regions");
            };
            let data = &d.white_data;
            let mut edges = Vec::new();
            for &c in crossings {
                let e = data
                    .edge_crossing
                    .iter()
                    .position(|&x| x == c)
                    .with_context(|| format!("crossing {c} is not an edge of the white graph"))?;
                edges.push(e);
            }
            let slope = knotdiag::tangle_slope_detect(d.white_graph(), chain, outer, &edges)?;
            Outcome {
                inputs: json!({ "pd": code.to_string(), "regions": regions, "crossings": crossings }),
                decision: Some(slope.is_some()),
                result: json!({ "slope": slope.map(|s| s.to_string()) }),
            }
        }
        Command::CharSlope { torus, slope } => {
            let (r, s) = torus_pair(torus)?;
            let knot = surgery::torus_tools(r, s)?;
            let certified = knot.is_certified_characterizing(*slope);
            let greene = surgery::greene_lower_bound(knot.genus);
            Outcome {
                inputs: json!({ "torus": [r, s], "slope": slope }),
                result: json!({
                    "genus": knot.genus,
                    "threshold": knot.char_slope_threshold.to_string(),
                    "certified": certified,
                    "greene_admits": greene.admits(*slope),
                    "greene_bound": greene.approx(),
                    "rasmussen_ok": surgery::rasmussen_ok(*slope, knot.genus),
                }),
                decision: Some(certified),
            }
        }
        Command::Reduce { certificate } => {
            let text = std::fs::read_to_string(certificate)
                .with_context(|| format!("reading {}", certificate.display()))?;
            let value: Value = serde_json::from_str(&text).context("certificate is not JSON")?;
            let cert_value = value
                .pointer("/result/certificate")
                .cloned()
                .unwrap_or(value);
            let cert: EmbeddingCertificate =
                serde_json::from_value(cert_value).context("not an embedding certificate")?;
            cert.validate()?;
            let trace = recognizer::reduce_to_clasp(&cert)?;
            Outcome {
                inputs: json!({ "certificate": certificate.display().to_string() }),
                result: to_json(&trace)?,
                decision: Some(true),
            }
        }
    };
    Ok(out)
}

fn command_name(c: &Command) -> &'static str {
    match c {
        Command::Goeritz { .. } => "goeritz",
        Command::UnknottingOne { .. } => "unknotting-one",
        Command::AltSurgery { .. } => "alt-surgery",
        Command::CmBuild { .. } => "cm-build",
        Command::RecoverStable { .. } => "recover-stable",
        Command::DInv { .. } => "d-inv",
        Command::TangleSlope { .. } => "tangle-slope",
        Command::CharSlope { .. } => "char-slope",
        Command::Reduce { .. } => "reduce",
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let start = Instant::now();
    match execute(&cli.command, cli.budget) {
        Ok(out) => {
            if !cli.quiet && cli.json {
                let report = json!({
                    "command": command_name(&cli.command),
                    "inputs": out.inputs,
                    "decision": out.decision.map(|d| if d { "yes" } else { "no" }),
                    "result": out.result,
                    "budget": cli.budget,
                    "timing_ms": start.elapsed().as_millis() as u64,
                    "version": env!("CARGO_PKG_VERSION"),
                });
                let text = serde_json::to_string_pretty(&report).expect("report serializes");
                let _ = writeln!(std::io::stdout().lock(), "{text}");
            }
            match out.decision {
                Some(false) => ExitCode::from(1),
                _ => ExitCode::SUCCESS,
            }
        }
        Err(err) => {
            let budget = matches!(err.downcast_ref::<changemaker::Error>(), Some(changemaker::Error::Budget(_)));
            if !cli.quiet {
                eprintln!("error: {err:#}");
            }
            ExitCode::from(if budget { 3 } else { 2 })
        }
    }
}
