use std::io::{Read, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::{json, Map, Value};

use cbgrass::field::FieldDescriptor;
use cbgrass::grassmannian::{cayley_bacharach_test, enumerate_subspaces, plucker, subspace_count, DEFAULT_BUDGET};
use cbgrass::linalg::project_from;
use cbgrass::special_position::{
    decompose_with, span_bound_report, verify_partition_inequality, Configuration, SpTester, SpTesterChoice,
    DEFAULT_MAX_PLANES, DEFAULT_TRIALS,
};
use cbgrass::theorem_lab::{plane_configuration_cover, quadric_through_lines, sharpness_search, survey_with, SurveyOptions};
use cbgrass::wire::{self, check_keys};
use cbgrass::{Error, Result};

#[derive(Parser, Debug)]
#[command(name = "cbgrass", version, about = "Special-position and Cayley-Bacharach tests with JSON I/O")]
struct Cli {
    /// Print the JSON schemas of all inputs and outputs and exit.
    #[arg(long, global = true)]
    schema: bool,
    /// Input JSON file ("-" or absent: stdin).
    #[arg(long, global = true)]
    input: Option<PathBuf>,
    /// Output file (absent: stdout).
    #[arg(long, global = true)]
    output: Option<PathBuf>,
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    /// Cap on enumerated objects.
    #[arg(long, global = true, default_value_t = DEFAULT_BUDGET)]
    budget: u128,
    #[arg(long, global = true, value_enum, default_value_t = TesterArg::Auto)]
    tester: TesterArg,
    /// Trials for the randomized tuple test.
    #[arg(long, global = true, default_value_t = DEFAULT_TRIALS)]
    trials: u64,
    /// Field override: "rational", "gf:P" or "P".
    #[arg(long, global = true, value_parser = parse_field)]
    field: Option<FieldDescriptor>,
    /// Worker threads (default: available parallelism). Results do not
    /// depend on it.
    #[arg(long, global = true)]
    workers: Option<usize>,
    #[command(subcommand)]
    cmd: Option<Cmd>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum TesterArg {
    Auto,
    BruteForce,
    TupleExhaustive,
    TupleRandomized,
}

#[derive(Subcommand, Debug)]
enum Cmd {
    /// Decide SP(n-k) for a configuration and emit a certificate.
    CheckSp,
    /// Minimal partition into indecomposable SP blocks.
    Decompose {
        #[arg(long, default_value_t = DEFAULT_MAX_PLANES)]
        max_planes: usize,
    },
    /// Span-dimension bound, plane cover and optional partition inequality.
    SpanBound {
        #[arg(long, default_value_t = DEFAULT_MAX_PLANES)]
        max_planes: usize,
    },
    /// Cayley-Bacharach test of degree r for points of a Grassmannian.
    CbTest {
        #[arg(long, default_value_t = 1)]
        r: usize,
    },
    /// Project subspaces from a center.
    Project,
    /// List the m-dimensional subspaces of P^n over GF(q).
    Enumerate {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        dim: isize,
        /// Include Plücker coordinates.
        #[arg(long)]
        plucker: bool,
    },
    /// Exhaustive survey of multisets of planes over GF(q).
    Survey {
        #[arg(long)]
        q: u64,
        #[arg(long)]
        n: usize,
        #[arg(long)]
        k: usize,
        #[arg(long)]
        d: usize,
        /// Also run the degree-1 Cayley-Bacharach test on non-SP multisets.
        #[arg(long)]
        check_cb1: bool,
        /// Write a replay file with every SP configuration.
        #[arg(long)]
        replay: Option<PathBuf>,
    },
    /// Search for indecomposable SP configurations of maximal span.
    Sharpness {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        k: usize,
        #[arg(long)]
        d: usize,
        #[arg(long, default_value_t = 200)]
        iterations: usize,
    },
    /// Quadric surface through a set of lines spanning at most a P^3.
    Quadric,
    /// Replay a certificate, partition report, sharpness result or survey
    /// replay file from primitive incidence facts.
    VerifyCertificate,
}

fn parse_field(s: &str) -> std::result::Result<FieldDescriptor, String> {
    if s == "rational" || s == "Q" {
        return Ok(FieldDescriptor::Rational);
    }
    let p = s.trim_start_matches("gf").trim_start_matches("GF").trim_start_matches(':');
    let p: u64 = p.parse().map_err(|_| format!("expected \"rational\" or \"gf:P\", got {s:?}"))?;
    FieldDescriptor::gf(p).map_err(|e| e.to_string())
}

impl Cli {
    fn tester(&self) -> SpTester {
        let choice = match self.tester {
            TesterArg::Auto => SpTesterChoice::Auto { seed: self.seed, trials: self.trials },
            TesterArg::BruteForce => SpTesterChoice::BruteForce,
            TesterArg::TupleExhaustive => SpTesterChoice::TupleExhaustive,
            TesterArg::TupleRandomized => SpTesterChoice::TupleRandomized { seed: self.seed, trials: self.trials },
        };
        SpTester::new(choice, self.budget)
    }

    fn params(&self, command: &str) -> Map<String, Value> {
        let tester = self.tester.to_possible_value().expect("named").get_name().to_string();
        let mut m = Map::new();
        m.insert("command".into(), json!(command));
        m.insert("seed".into(), json!(self.seed));
        m.insert("budget".into(), json!(self.budget.to_string()));
        m.insert("tester".into(), json!(tester));
        m.insert("trials".into(), json!(self.trials));
        m.insert("field_override".into(), self.field.map_or(Value::Null, wire::field_to_json));
        m
    }

    fn read_input(&self) -> Result<Value> {
        let text = match &self.input {
            Some(p) if p.as_os_str() != "-" => std::fs::read_to_string(p)
                .map_err(|e| Error::invalid(format!("cannot read {}: {e}", p.display())))?,
            _ => {
                let mut s = String::new();
                std::io::stdin().read_to_string(&mut s).map_err(|e| Error::invalid(e.to_string()))?;
                s
            }
        };
        let mut v: Value = serde_json::from_str(&text).map_err(|e| Error::invalid(format!("input is not JSON: {e}")))?;
        if let Some(f) = self.field {
            override_field(&mut v, wire::field_to_json(f));
        }
        Ok(v)
    }
}

/// Replaces the field of the input document, wherever it sits.
fn override_field(v: &mut Value, f: Value) {
    if let Value::Object(o) = v {
        if o.contains_key("field") {
            o.insert("field".into(), f.clone());
        }
        if let Some(c) = o.get_mut("configuration") {
            override_field(c, f);
        }
    }
}

fn configuration_input(cli: &Cli) -> Result<Configuration> {
    wire::configuration_from_json(&cli.read_input()?)
}

fn run(cli: &Cli, cmd: &Cmd) -> Result<(Value, Vec<(PathBuf, Value)>)> {
    let tester = cli.tester();
    let mut extra = Vec::new();
    let (name, out) = match cmd {
        Cmd::CheckSp => {
            let c = configuration_input(cli)?;
            let cert = tester.check(&c)?;
            ("check-sp", wire::certificate_to_json(&c, &cert))
        }
        Cmd::Decompose { max_planes } => {
            let c = configuration_input(cli)?;
            let r = decompose_with(&c, tester, *max_planes)?;
            ("decompose", wire::partition_report_to_json(&c, &r))
        }
        Cmd::SpanBound { max_planes } => {
            let v = cli.read_input()?;
            let (c, partition, epsilons) = if v.get("planes").is_some() {
                (wire::configuration_from_json(&v)?, None, None)
            } else {
                check_keys(&v, &["configuration", "partition", "epsilons"])?;
                let c = wire::configuration_from_json(
                    v.get("configuration").ok_or_else(|| Error::invalid("missing field \"configuration\""))?,
                )?;
                let partition = v
                    .get("partition")
                    .map(|p| {
                        p.as_array()
                            .ok_or_else(|| Error::invalid("\"partition\" must be an array of blocks"))?
                            .iter()
                            .map(wire::indices_json)
                            .collect::<Result<Vec<_>>>()
                    })
                    .transpose()?;
                let epsilons = v
                    .get("epsilons")
                    .map(|e| {
                        e.as_array()
                            .ok_or_else(|| Error::invalid("\"epsilons\" must be an array"))?
                            .iter()
                            .map(|x| x.as_i64().map(|x| x as isize).ok_or_else(|| Error::invalid("epsilons must be integers")))
                            .collect::<Result<Vec<_>>>()
                    })
                    .transpose()?;
                (c, partition, epsilons)
            };
            let report = decompose_with(&c, tester, *max_planes)?;
            let mut out = json!({
                "kind": "span-bound-report",
                "partition": wire::partition_report_to_json(&c, &report),
                "span_bound": wire::span_bound_to_json(&span_bound_report(&c, &report)?),
                "cover": wire::cover_to_json(&plane_configuration_cover(&c, &report)?),
                "inequality": Value::Null,
            });
            if let Some(p) = partition {
                let eps = epsilons.unwrap_or_else(|| vec![0; p.len().saturating_sub(1)]);
                let r = verify_partition_inequality(&c, &p, &eps, tester)?;
                out["inequality"] = wire::inequality_to_json(&r);
            } else if epsilons.is_some() {
                return Err(Error::invalid("\"epsilons\" needs a \"partition\""));
            }
            ("span-bound", out)
        }
        Cmd::CbTest { r } => {
            let gamma = wire::point_set_from_json(&cli.read_input()?)?;
            let report = cayley_bacharach_test(&gamma, *r, cli.budget)?;
            ("cb-test", wire::cb_report_to_json(&report, *r))
        }
        Cmd::Project => {
            let v = cli.read_input()?;
            check_keys(&v, &["field", "center", "subspaces"])?;
            let f = wire::field_from_json(v.get("field").ok_or_else(|| Error::invalid("missing field \"field\""))?)?;
            let center =
                wire::subspace_from_json(f, v.get("center").ok_or_else(|| Error::invalid("missing field \"center\""))?)?;
            let images = v
                .get("subspaces")
                .and_then(Value::as_array)
                .ok_or_else(|| Error::invalid("\"subspaces\" must be an array"))?
                .iter()
                .map(|x| {
                    let s = wire::subspace_from_json(f, x)?;
                    Ok(wire::subspace_to_json(&project_from(&center, &s)?))
                })
                .collect::<Result<Vec<_>>>()?;
            let target = center.ambient() as isize - center.dim() - 1;
            ("project", json!({ "kind": "projection", "target_n": target, "images": images }))
        }
        Cmd::Enumerate { n, dim, plucker: with_plucker } => {
            let f = cli.field.ok_or_else(|| Error::invalid("enumerate needs --field gf:P"))?;
            let q = f.modulus().ok_or(Error::RationalFieldUnsupported)?;
            let mut items = Vec::new();
            for s in enumerate_subspaces(f, *n, *dim, cli.budget)? {
                let mut item = wire::subspace_to_json(&s);
                if *with_plucker && s.dim() >= 0 {
                    item["plucker"] = wire::plucker_to_json(&plucker(&s, (s.dim() + 1) as usize)?);
                }
                items.push(item);
            }
            let out = json!({
                "kind": "enumeration",
                "n": n,
                "dim": dim,
                "count": subspace_count(q, *n, *dim).to_string(),
                "subspaces": items,
            });
            ("enumerate", out)
        }
        Cmd::Survey { q, n, k, d, check_cb1, replay } => {
            let s = survey_with(*q, *n, *k, *d, SurveyOptions { budget: cli.budget, check_cb1: *check_cb1 })?;
            if let Some(path) = replay {
                extra.push((path.clone(), wire::survey_replay_to_json(&s)));
            }
            ("survey", wire::survey_result_to_json(&s.result))
        }
        Cmd::Sharpness { n, k, d, iterations } => {
            let f = cli.field.unwrap_or(FieldDescriptor::gf(5)?);
            let out = match sharpness_search(*n, *k, *d, f, cli.seed, *iterations, tester)? {
                Some(r) => wire::sharpness_to_json(&r),
                None => json!({ "kind": "sharpness-result", "configuration": Value::Null }),
            };
            ("sharpness", out)
        }
        Cmd::Quadric => {
            let c = configuration_input(cli)?;
            ("quadric", wire::quadric_to_json(&quadric_through_lines(&c)?))
        }
        Cmd::VerifyCertificate => {
            let v = cli.read_input()?;
            ("verify-certificate", wire::replay_to_json(&wire::verify_json(&v, cli.budget)?))
        }
    };
    let mut params = cli.params(name);
    params.extend(command_params(cmd));
    Ok((wire::with_params(out, params), extra))
}

fn command_params(cmd: &Cmd) -> Map<String, Value> {
    let v = match cmd {
        Cmd::Decompose { max_planes } | Cmd::SpanBound { max_planes } => json!({ "max_planes": max_planes }),
        Cmd::CbTest { r } => json!({ "r": r }),
        Cmd::Enumerate { n, dim, plucker } => json!({ "n": n, "dim": dim, "plucker": plucker }),
        Cmd::Survey { q, n, k, d, check_cb1, replay } => json!({
            "q": q, "n": n, "k": k, "d": d, "check_cb1": check_cb1,
            "replay": replay.as_ref().map(|p| p.display().to_string()),
        }),
        Cmd::Sharpness { n, k, d, iterations } => json!({ "n": n, "k": k, "d": d, "iterations": iterations }),
        Cmd::CheckSp | Cmd::Project | Cmd::Quadric | Cmd::VerifyCertificate => json!({}),
    };
    match v {
        Value::Object(o) => o,
        _ => unreachable!(),
    }
}

fn exit_code(e: &Error) -> u8 {
    match e {
        Error::BudgetExceeded { .. } | Error::BellBudgetExceeded { .. } => 3,
        _ => 2,
    }
}

fn write_output(path: Option<&PathBuf>, v: &Value) -> std::io::Result<()> {
    let text = wire::to_pretty(v);
    match path {
        Some(p) => std::fs::write(p, text),
        None => std::io::stdout().lock().write_all(text.as_bytes()),
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    if cli.schema {
        return match write_output(cli.output.as_ref(), &wire::schemas()) {
            Ok(()) => ExitCode::SUCCESS,
            Err(e) => {
                eprintln!("error: {e}");
                ExitCode::from(2)
            }
        };
    }
    let Some(cmd) = &cli.cmd else {
        eprintln!("error: a subcommand is required (see --help)");
        return ExitCode::from(2);
    };
    if let Some(w) = cli.workers {
        if w == 0 {
            eprintln!("error: --workers must be positive");
            return ExitCode::from(2);
        }
        if let Err(e) = rayon::ThreadPoolBuilder::new().num_threads(w).build_global() {
            eprintln!("error: {e}");
            return ExitCode::from(2);
        }
    }
    match run(&cli, cmd) {
        Ok((out, extra)) => {
            for (path, v) in &extra {
                if let Err(e) = write_output(Some(path), v) {
                    eprintln!("error: cannot write {}: {e}", path.display());
                    return ExitCode::from(2);
                }
            }
            if let Err(e) = write_output(cli.output.as_ref(), &out) {
                eprintln!("error: cannot write output: {e}");
                return ExitCode::from(2);
            }
            ExitCode::SUCCESS
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(exit_code(&e))
        }
    }
}
