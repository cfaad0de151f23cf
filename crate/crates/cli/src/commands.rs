use std::fs::File;
use std::io::{self, BufWriter, Write};

use num_bigint::BigUint;
use serde_json::{json, Value};

use wci::construct::{
    build_counterexample, build_point_family, scan_theorem, write_jsonl, ConstructorOutcome, ScanBounds, ScanRecord,
};
use wci::hodge::{h0n, hodge_level_verdict, hypersurface_middle_hodge, SeriesBudget};
use wci::json::rational_to_string;
use wci::pairs::{check, classify};
use wci::primes::{
    check_rs_inequality_with, delta, delta_upper_bound, prime_pi, straddle_chain, verify_interval_lemma, PrimeTable,
    SieveBudget,
};
use wci::represent::{
    constructive_representation_cartier, find_positive_representation, representation_codim_le2, ResidueBudget,
};
use wci::{reproduce, ExactRational, Pair};

use crate::args::{Command, Format, Method, PrimesCommand, ScanArgs};
use crate::Failure;

/// What a successful command writes to standard output.
pub enum Output {
    Json(Value),
    /// Already written; `success` decides the exit code.
    Done {
        success: bool,
    },
}

fn strings<T: ToString>(values: &[T]) -> Vec<String> {
    values.iter().map(ToString::to_string).collect()
}

/// Malformed JSON is a usage error; well-formed JSON that is not a valid
/// pair (zero or negative entries, empty lists) is a domain error.
fn pair_arg(text: &str) -> Result<Pair, Failure> {
    serde_json::from_str(text).map_err(|e| match e.classify() {
        serde_json::error::Category::Data => Failure::domain("pair", e.to_string()),
        _ => Failure::usage(format!("invalid pair JSON: {e}")),
    })
}

fn to_json<T: serde::Serialize>(value: &T) -> Value {
    serde_json::to_value(value).expect("report types serialize")
}

fn usize_arg(value: u64) -> Result<usize, Failure> {
    usize::try_from(value).map_err(|_| Failure::usage(format!("{value} is too large")))
}

pub fn run(command: Command) -> Result<Output, Failure> {
    match command {
        Command::Classify(p) => {
            let class = classify(&pair_arg(&p.pair)?);
            Ok(Output::Json(
                json!({"kind": class.kind, "index": class.index.to_string()}),
            ))
        }
        Command::Check(p) => check_pair(&pair_arg(&p.pair)?),
        Command::Represent { pair, method, budget } => represent(&pair_arg(&pair.pair)?, method, budget),
        Command::Hodge {
            pair,
            h0n,
            middle,
            verdict,
            budget,
        } => hodge(&pair_arg(&pair.pair)?, h0n, middle, verdict, budget),
        Command::Primes { command } => primes(command),
        Command::Counterexample { dim } => Ok(Output::Json(to_json(&build_counterexample(usize_arg(dim)?)?))),
        Command::PointFamily { n } => Ok(Output::Json(to_json(&build_point_family(
            usize_arg(n)?,
            ResidueBudget::default(),
        )?))),
        Command::Scan(args) => scan(args),
        Command::Reproduce { json, jobs } => reproduce_all(json, jobs),
    }
}

fn check_pair(pair: &Pair) -> Result<Output, Failure> {
    let r = check(pair);
    Ok(Output::Json(json!({
        "pair": pair,
        "regular": r.regular,
        "regular_witness": r.regular_witness.map(|w| json!({
            "divisor": w.divisor.to_string(),
            "weight_indices": w.weight_indices,
            "degree_count": w.degree_count,
        })),
        "space_well_formed": r.space_well_formed,
        "cartier": r.cartier,
        "cartier_witness": r.cartier_witness.map(|w| json!({
            "weight_index": w.weight_index,
            "degree_index": w.degree_index,
            "weight": w.weight.to_string(),
            "degree": w.degree.to_string(),
        })),
        "linear_cone": r.linear_cone,
        "linear_cone_match": r.linear_cone_match.map(|(u, l)| json!({"degree_index": u, "weight_index": l})),
    })))
}

fn represent(pair: &Pair, method: Method, budget: u64) -> Result<Output, Failure> {
    let budget = ResidueBudget { max_residues: budget };
    let (name, found) = match method {
        Method::Oracle => ("oracle", find_positive_representation(pair, budget)?),
        Method::Cartier => ("cartier", Some(constructive_representation_cartier(pair)?)),
        Method::Codim2 => ("codim2", Some(representation_codim_le2(pair, budget)?)),
    };
    let Some(rep) = found else {
        return Ok(Output::Json(json!({"pair": pair, "method": name, "found": false})));
    };
    // re-substitute against the pair itself, not just the stored target
    let verified = rep.verify()
        && rep.target == pair.degree_sum()
        && rep.weights == pair.weights()
        && rep.coefficients.iter().all(|c| *c >= BigUint::from(1u32));
    if !verified {
        return Err(Failure::domain(
            "unverified",
            format!(
                "coefficients {:?} do not represent the degree sum",
                strings(&rep.coefficients)
            ),
        ));
    }
    Ok(Output::Json(json!({
        "pair": pair,
        "method": name,
        "found": true,
        "beta": strings(&rep.coefficients),
        "target": rep.target.to_string(),
        "verified": true,
    })))
}

fn hodge(pair: &Pair, want_h0n: bool, middle: bool, verdict: bool, budget: u64) -> Result<Output, Failure> {
    let budget = SeriesBudget {
        max_degree: usize_arg(budget)?,
    };
    let mut out = serde_json::Map::new();
    out.insert("pair".into(), to_json(pair));
    let branch = if pair.ambient_dimension() > pair.codimension() {
        Some(hodge_level_verdict(pair, budget)?)
    } else {
        None
    };
    out.insert("branch".into(), to_json(&branch.as_ref().map(|v| v.branch)));
    if want_h0n || !(middle || verdict) {
        out.insert("h0n".into(), Value::String(h0n(pair, budget)?.to_string()));
    }
    if middle {
        let v = hypersurface_middle_hodge(pair, budget)?;
        out.insert("symmetric".into(), Value::Bool(v.is_symmetric()));
        out.insert("h_pr".into(), json!(strings(&v.0)));
    }
    if verdict {
        let Some(v) = branch else {
            return Err(Failure::domain("precondition", "the verdict needs N > k".into()));
        };
        out.insert(
            "verdict".into(),
            json!({
                "dimension": v.dimension,
                "index": v.index.to_string(),
                "h0n": v.h0n.to_string(),
                "hodge_level_max": v.hodge_level_max,
                "agrees_with_branch": v.agrees_with_branch(),
            }),
        );
    }
    Ok(Output::Json(Value::Object(out)))
}

fn rational(r: &ExactRational) -> Value {
    Value::String(rational_to_string(r))
}

fn primes(command: PrimesCommand) -> Result<Output, Failure> {
    let budget = SieveBudget::default();
    let value = match command {
        PrimesCommand::Pi { x } => json!({"x": x.to_string(), "pi": prime_pi(x, budget)?.to_string()}),
        PrimesCommand::RsCheck { x, to } => {
            let to = to.unwrap_or(x);
            if to < x {
                return Err(Failure::usage(format!("--to {to} is below --x {x}")));
            }
            let table = PrimeTable::new(to.max(2), budget)?;
            let mut checked = 0u64;
            let mut failures = Vec::new();
            for y in x..=to {
                let c = check_rs_inequality_with(&table, y)?;
                checked += 1;
                if !c.holds() {
                    failures.push(json!({
                        "x": y.to_string(),
                        "pi": c.pi.to_string(),
                        "lower_holds": c.lower_holds,
                        "upper_holds": c.upper_holds,
                    }));
                }
            }
            json!({
                "from": x.to_string(),
                "to": to.to_string(),
                "checked": checked.to_string(),
                "holds": failures.is_empty(),
                "failures": failures,
            })
        }
        PrimesCommand::IntervalLemma { n, xs } => {
            let xs = if xs.is_empty() { vec![1u64 << n] } else { xs };
            let r = verify_interval_lemma(n, &xs, budget)?;
            json!({
                "n": r.n,
                "required": r.required.to_string(),
                "holds": r.holds(),
                "samples": r.samples.iter().map(|s| json!({
                    "x": s.x.to_string(),
                    "upper_count": s.upper_count.map(|c| c.to_string()),
                    "lower_count": s.lower_count.map(|c| c.to_string()),
                })).collect::<Vec<_>>(),
                "failures": strings(&r.failures),
            })
        }
        PrimesCommand::Straddle { m } => {
            let chain = straddle_chain(usize_arg(m)?)?;
            json!({
                "m": chain.m(),
                "primes": strings(&chain.primes),
                "partial_sum": rational(&chain.partial_sum),
                "verified": chain.verify(),
            })
        }
        PrimesCommand::Delta { n, budget } => {
            let w = delta(usize_arg(n)?, budget)?;
            json!({"n": n, "value": rational(&w.value), "primes": strings(&w.primes), "verified": w.verify()})
        }
        PrimesCommand::DeltaBound { n } => {
            let w = delta_upper_bound(usize_arg(n)?)?;
            json!({"n": n, "value": rational(&w.value), "primes": strings(&w.primes), "verified": w.verify()})
        }
    };
    Ok(Output::Json(value))
}

fn outcome_label(o: &ConstructorOutcome) -> &'static str {
    match o {
        ConstructorOutcome::NotApplicable { .. } => "not_applicable",
        ConstructorOutcome::Found { .. } => "found",
        ConstructorOutcome::Failed { .. } => "failed",
    }
}

fn write_csv<W: Write>(records: &[ScanRecord], out: W) -> Result<(), Failure> {
    let mut w = csv::Writer::from_writer(out);
    w.write_record([
        "pair",
        "kind",
        "index",
        "regular",
        "cartier",
        "linear_cone",
        "oracle",
        "brute_force_representable",
        "cartier_constructor",
        "codim2_constructor",
        "h0n",
        "middle_hodge",
        "violations",
    ])
    .map_err(Failure::io)?;
    for r in records {
        let join = |v: &[String]| v.join(" ");
        w.write_record([
            r.pair.to_string(),
            r.kind.to_string(),
            r.index.to_string(),
            r.regular.to_string(),
            r.cartier.to_string(),
            r.linear_cone.to_string(),
            r.oracle.as_deref().map_or(String::new(), |b| join(&strings(b))),
            r.brute_force_representable.to_string(),
            outcome_label(&r.cartier_constructor).to_string(),
            outcome_label(&r.codim2_constructor).to_string(),
            r.h0n.to_string(),
            r.middle_hodge.as_deref().map_or(String::new(), |h| join(&strings(h))),
            r.violations.join(" "),
        ])
        .map_err(Failure::io)?;
    }
    w.flush().map_err(Failure::io)
}

fn scan(args: ScanArgs) -> Result<Output, Failure> {
    let mut bounds = ScanBounds::new(args.max_k, args.max_n, args.max_degree_sum, args.max_weight);
    bounds.include_linear_cones = args.include_linear_cones;
    bounds.max_pairs = args.max_pairs.map(usize_arg).transpose()?;
    let jobs = args.jobs.map(usize_arg).transpose()?;
    // open the output before the long run so a bad path fails fast
    let file = match &args.out {
        Some(path) => Some(File::create(path).map_err(|e| Failure::domain("io", format!("{}: {e}", path.display())))?),
        None => None,
    };
    let outcome = scan_theorem(&bounds, jobs)?;
    let summary = to_json(&outcome.summary);
    match file {
        Some(f) => {
            let mut out = BufWriter::new(f);
            match args.format {
                Format::Jsonl => write_jsonl(&outcome.records, &mut out).map_err(Failure::io)?,
                Format::Csv => write_csv(&outcome.records, &mut out)?,
            }
            out.flush().map_err(Failure::io)?;
            Ok(Output::Json(summary))
        }
        None => {
            let stdout = io::stdout();
            let mut out = BufWriter::new(stdout.lock());
            match args.format {
                Format::Jsonl => {
                    write_jsonl(&outcome.records, &mut out).map_err(Failure::io)?;
                    writeln!(out, "{summary}").map_err(Failure::io)?;
                }
                Format::Csv => write_csv(&outcome.records, &mut out)?,
            }
            out.flush().map_err(Failure::io)?;
            Ok(Output::Done { success: true })
        }
    }
}

fn reproduce_all(as_json: bool, jobs: Option<u64>) -> Result<Output, Failure> {
    let results = reproduce::run_all(jobs.map(usize_arg).transpose()?);
    let success = results.iter().all(|r| r.passed);
    if as_json {
        println!("{}", json!({"passed": success, "criteria": results}));
    } else {
        for r in &results {
            println!("{}", r.line());
        }
        let passed = results.iter().filter(|r| r.passed).count();
        println!("{passed}/{} criteria passed", results.len());
    }
    Ok(Output::Done { success })
}
