mod render;

use std::io::Read;
use std::ops::RangeInclusive;
use std::path::PathBuf;
use std::process::ExitCode;
use std::time::Instant;

use clap::{Parser, Subcommand, ValueEnum};
use serde::Serialize;
use serde_json::{json, Value};

use ratsum::engine::{wellposedness_check, FactorStatus, ProgressionAtom};
use ratsum::oracle::{
    conjecture_check, eval_definite_sum, fit_rational, hardness_demo, recurrence_search, sample,
    SampleValue,
};
use ratsum::parse::ParseErrorContext;
use ratsum::{
    aut_group, factor, format, group_classes, is_irreducible, parse, pfd, sum_total, AutKind,
    EngineConfig, EquivClass, PolyK, RatN, RatNK, Verdict,
};

#[derive(Parser)]
#[command(name = "ratsum", version, about = "Exact definite sums of rational functions")]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    format: Format,
    /// Also write the report to this file.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    /// Record wall-clock time in the report.
    #[arg(long, global = true)]
    timing: bool,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
}

#[derive(Subcommand)]
enum Cmd {
    /// Canonical form of an expression.
    Parse { expr: String },
    /// Partial fractions in k over Q(n).
    Pfd { expr: String },
    /// Irreducible factors in k over Q(n) of numerator and denominator.
    Factor { expr: String },
    /// Automorphism type of an irreducible polynomial.
    Classify { expr: String },
    /// Equivalence classes of the partial fraction terms.
    Classes { expr: String },
    /// Decide sum_{k=0}^{n} F(n, k).
    Sum {
        expr: String,
        /// Compare against brute force for n up to MAX.
        #[arg(long, value_name = "MAX")]
        verify_n: Option<u64>,
        #[arg(long, value_name = "M", default_value_t = 64)]
        modulus_cap: u64,
    },
    /// Brute-force sample values, optionally with a rational fit.
    Oracle {
        expr: String,
        #[arg(long, value_name = "A..B", value_parser = parse_range, default_value = "0..20")]
        n: RangeInclusive<u64>,
        #[arg(long, value_name = "P,Q", value_parser = parse_pair)]
        fit: Option<(usize, usize)>,
    },
    /// Search for a linear recurrence with polynomial coefficients.
    Recurrence {
        expr: String,
        #[arg(long, value_name = "M")]
        order: usize,
        #[arg(long, value_name = "D")]
        degree: usize,
        #[arg(long, value_name = "A..B", value_parser = parse_range, default_value = "0..40")]
        n: RangeInclusive<u64>,
    },
    /// Compare rationality of the whole sum with that of each class.
    Conjecture {
        expr: String,
        #[arg(long, default_value_t = 30)]
        n_max: u64,
        #[arg(long, value_name = "P,Q", value_parser = parse_pair, default_value = "4,4")]
        fit: (usize, usize),
    },
    /// Recurrence search on sum 1/(k + n(n+1)/2).
    DemoHardness {
        #[arg(long, default_value_t = 40)]
        n_max: u64,
    },
    /// Where the denominator vanishes inside the summation range.
    Wellposed {
        expr: String,
        #[arg(long, value_name = "H", default_value_t = 30)]
        horizon: u64,
    },
}

fn parse_range(s: &str) -> Result<RangeInclusive<u64>, String> {
    let (a, b) = s.split_once("..").ok_or("expected A..B")?;
    let a: u64 = a.trim().parse().map_err(|e| format!("{e}"))?;
    let b: u64 = b.trim().parse().map_err(|e| format!("{e}"))?;
    if a > b {
        return Err(format!("empty range {a}..{b}"));
    }
    Ok(a..=b)
}

fn parse_pair(s: &str) -> Result<(usize, usize), String> {
    let (p, q) = s.split_once(',').ok_or("expected P,Q")?;
    let p = p.trim().parse().map_err(|e| format!("{e}"))?;
    let q = q.trim().parse().map_err(|e| format!("{e}"))?;
    Ok((p, q))
}

#[derive(Serialize)]
struct Report {
    command: &'static str,
    input: Option<String>,
    result: Value,
    classes: Vec<Value>,
    verdict: Option<String>,
    diagnostics: Vec<String>,
    timing_ms: Option<f64>,
}

enum Failure {
    Parse(String),
    Precondition(String),
}

/// Exit status besides the report itself.
#[derive(Clone, Copy, PartialEq, Eq)]
enum Status {
    Ok,
    Cap,
    Mismatch,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let start = Instant::now();
    let mut report = Report {
        command: command_name(&cli.cmd),
        input: None,
        result: Value::Null,
        classes: Vec::new(),
        verdict: None,
        diagnostics: Vec::new(),
        timing_ms: None,
    };
    let status = match run(&cli.cmd, &mut report) {
        Ok(s) => s,
        Err(Failure::Parse(msg)) => {
            eprintln!("error: {msg}");
            return ExitCode::from(2);
        }
        Err(Failure::Precondition(msg)) => {
            eprintln!("error: {msg}");
            return ExitCode::from(3);
        }
    };
    if cli.timing {
        report.timing_ms = Some(start.elapsed().as_secs_f64() * 1000.0);
    }
    let text = match cli.format {
        Format::Json => serde_json::to_string_pretty(&report).expect("serializable") + "\n",
        Format::Text => render::text(&serde_json::to_value(&report).expect("serializable")),
    };
    print!("{text}");
    if cli.format == Format::Text {
        for d in &report.diagnostics {
            eprintln!("note: {d}");
        }
    }
    if let Some(path) = &cli.out {
        if let Err(e) = std::fs::write(path, &text) {
            eprintln!("error: cannot write {}: {e}", path.display());
            return ExitCode::from(3);
        }
    }
    match status {
        Status::Ok => ExitCode::SUCCESS,
        Status::Mismatch => ExitCode::from(1),
        Status::Cap => ExitCode::from(4),
    }
}

fn command_name(c: &Cmd) -> &'static str {
    match c {
        Cmd::Parse { .. } => "parse",
        Cmd::Pfd { .. } => "pfd",
        Cmd::Factor { .. } => "factor",
        Cmd::Classify { .. } => "classify",
        Cmd::Classes { .. } => "classes",
        Cmd::Sum { .. } => "sum",
        Cmd::Oracle { .. } => "oracle",
        Cmd::Recurrence { .. } => "recurrence",
        Cmd::Conjecture { .. } => "conjecture",
        Cmd::DemoHardness { .. } => "demo-hardness",
        Cmd::Wellposed { .. } => "wellposed",
    }
}

/// The expression argument, from stdin when it is `-`.
fn read_expr(arg: &str) -> Result<String, Failure> {
    if arg != "-" {
        return Ok(arg.to_string());
    }
    let mut s = String::new();
    std::io::stdin()
        .read_to_string(&mut s)
        .map_err(|e| Failure::Precondition(format!("cannot read stdin: {e}")))?;
    Ok(s.trim().to_string())
}

fn load(arg: &str, report: &mut Report) -> Result<RatNK, Failure> {
    let text = read_expr(arg)?;
    let f = parse(&text).map_err(|err| {
        Failure::Parse(
            ParseErrorContext {
                err: &err,
                text: &text,
            }
            .to_string(),
        )
    })?;
    report.input = Some(text);
    Ok(f)
}

fn fk(p: &PolyK) -> String {
    format(&RatNK::from_polyk(p))
}

fn fnr(r: &RatN) -> String {
    format(&RatNK::from_ratn(r))
}

fn sample_json(n: u64, v: &SampleValue) -> Value {
    match v {
        SampleValue::Value(x) => json!({ "n": n, "value": x.to_string() }),
        SampleValue::Pole { k } => json!({ "n": n, "pole_at_k": k }),
    }
}

fn kind_json(kind: &AutKind) -> Value {
    match kind {
        AutKind::Trivial => json!({ "type": "generic", "witness": null }),
        AutKind::RationalType => json!({ "type": "rational", "witness": null }),
        AutKind::Symmetric(m) => json!({
            "type": "symmetric",
            "witness": { "a": m.a.to_string(), "b": m.b.to_string(), "c": m.c.to_string() },
        }),
    }
}

fn class_json(c: &EquivClass) -> Value {
    let members: Vec<Value> = c
        .members
        .iter()
        .map(|m| {
            json!({
                "term": format(&m.term.to_rat()),
                "map": m.map.to_string(),
                "unit": fnr(&m.unit),
            })
        })
        .collect();
    json!({
        "rep": fk(&c.rep),
        "d": c.d,
        "kind": kind_json(&c.kind()),
        "members": members,
    })
}

fn verdict_json(v: &Verdict) -> Value {
    match v {
        Verdict::RationalSum(r) => json!({ "value": fnr(r) }),
        Verdict::NotUniform(cases) => {
            let cs: Vec<Value> = cases
                .iter()
                .map(|c| json!({ "modulus": c.modulus, "residue": c.residue, "value": fnr(&c.result) }))
                .collect();
            json!({ "cases": cs })
        }
        Verdict::Undetermined {
            residual,
            modulus_explosion,
            ..
        } => {
            let rs: Vec<String> = residual.iter().map(ProgressionAtom::to_string).collect();
            json!({ "residual": rs, "modulus_explosion": modulus_explosion })
        }
    }
}

/// Engine value at `n`, if the verdict is closed and defined there.
fn verdict_at(v: &Verdict, n: u64) -> Option<ratsum::Rat> {
    let x = ratsum::Rat::from_integer(n.into());
    match v {
        Verdict::RationalSum(r) => r.eval(&x),
        Verdict::NotUniform(cases) => cases
            .iter()
            .find(|c| n % c.modulus == c.residue)
            .and_then(|c| c.result.eval(&x)),
        Verdict::Undetermined { .. } => None,
    }
}

fn run(cmd: &Cmd, report: &mut Report) -> Result<Status, Failure> {
    match cmd {
        Cmd::Parse { expr } => {
            let f = load(expr, report)?;
            let (num, den) = f.to_polyk_pair();
            report.result = json!({
                "canonical": format(&f),
                "numerator": fk(&num),
                "denominator": fk(&den),
            });
        }
        Cmd::Pfd { expr } => {
            let f = load(expr, report)?;
            let d = pfd(&f);
            let terms: Vec<Value> = d
                .terms
                .iter()
                .map(|t| json!({ "numerator": fk(&t.a), "factor": fk(&t.b), "power": t.d }))
                .collect();
            report.result = json!({ "polypart": fk(&d.polypart), "terms": terms });
        }
        Cmd::Factor { expr } => {
            let f = load(expr, report)?;
            let (num, den) = f.to_polyk_pair();
            let side = |p: &PolyK| {
                let fl = factor(p);
                let fs: Vec<Value> = fl
                    .factors
                    .iter()
                    .map(|(b, m)| json!({ "factor": fk(b), "multiplicity": m }))
                    .collect();
                json!({ "unit": fnr(&fl.unit), "factors": fs })
            };
            report.result = json!({ "numerator": side(&num), "denominator": side(&den) });
        }
        Cmd::Classify { expr } => {
            let f = load(expr, report)?;
            let (b, den) = f.to_polyk_pair();
            if den.degree() > 0 || b.degree() < 1 {
                return Err(Failure::Precondition(
                    "classify needs a polynomial of positive degree in k".into(),
                ));
            }
            if !is_irreducible(&b) {
                return Err(Failure::Precondition(format!(
                    "{} is reducible over Q(n)",
                    fk(&b)
                )));
            }
            report.result = kind_json(&aut_group(&b));
        }
        Cmd::Classes { expr } => {
            let f = load(expr, report)?;
            let d = pfd(&f);
            report.classes = group_classes(&d.terms).iter().map(class_json).collect();
            report.result = json!({ "polypart": fk(&d.polypart), "count": report.classes.len() });
        }
        Cmd::Sum {
            expr,
            verify_n,
            modulus_cap,
        } => {
            let f = load(expr, report)?;
            let cfg = EngineConfig {
                modulus_cap: *modulus_cap,
                ..EngineConfig::default()
            };
            let (verdict, sr) = sum_total(&f, &cfg);
            let mut result = verdict_json(&verdict);
            result["polypart_sum"] = json!(fnr(&sr.polypart_sum));
            result["valid_from"] = json!(sr.valid_from);
            report.classes = sr
                .classes
                .iter()
                .map(|c| {
                    let mut v = class_json(&c.class);
                    v["verdict"] = json!(c.verdict.name());
                    v["result"] = verdict_json(&c.verdict);
                    v["valid_from"] = json!(c.valid_from);
                    v["method"] = json!(c.method);
                    v
                })
                .collect();
            report.verdict = Some(verdict.name().to_string());
            report.diagnostics = sr.diagnostics.clone();
            if let Verdict::Undetermined { diagnostics, .. } = &verdict {
                report.diagnostics.extend(diagnostics.iter().cloned());
            }
            let mut status = Status::Ok;
            if let Some(max) = verify_n {
                let (mut checked, mut bad) = (0u64, Vec::new());
                if !matches!(verdict, Verdict::Undetermined { .. }) {
                    for n in sr.valid_from..=*max {
                        if let (SampleValue::Value(o), Some(e)) =
                            (eval_definite_sum(&f, n), verdict_at(&verdict, n))
                        {
                            checked += 1;
                            if o != e {
                                bad.push(n);
                            }
                        }
                    }
                }
                if !bad.is_empty() {
                    report
                        .diagnostics
                        .push(format!("oracle disagrees at n = {bad:?}"));
                    status = Status::Mismatch;
                }
                result["verification"] = json!({ "checked": checked, "mismatches": bad });
            }
            if let Verdict::Undetermined {
                modulus_explosion: true,
                ..
            } = verdict
            {
                status = Status::Cap;
            }
            report.result = result;
            return Ok(status);
        }
        Cmd::Oracle { expr, n, fit } => {
            let f = load(expr, report)?;
            let s = sample(&f, n.clone());
            let samples: Vec<Value> = s
                .entries
                .iter()
                .map(|(n, v)| sample_json(*n, v))
                .collect();
            let mut result = json!({ "samples": samples });
            if let Some((p, q)) = fit {
                result["fit"] = json!(fit_rational(&s, *p, *q).map(|r| fnr(&r)));
            }
            report.result = result;
        }
        Cmd::Recurrence {
            expr,
            order,
            degree,
            n,
        } => {
            let f = load(expr, report)?;
            let s = sample(&f, n.clone());
            let cand = recurrence_search(&s, *order, *degree)
                .map_err(|e| Failure::Precondition(e.to_string()))?;
            report.result = json!({
                "recurrence": cand.as_ref().map(|c| json!({
                    "order": c.order,
                    "coeffs": c.coeffs.iter().map(|p| fnr(&RatN::from_poly(p.clone()))).collect::<Vec<_>>(),
                    "text": c.to_string(),
                })),
            });
        }
        Cmd::Conjecture { expr, n_max, fit } => {
            let f = load(expr, report)?;
            let r = conjecture_check(&f, fit.0, fit.1, *n_max);
            report.classes = r
                .classes
                .iter()
                .map(|c| {
                    json!({
                        "rep": fk(&c.rep),
                        "d": c.d,
                        "members": c.members,
                        "fit": c.fit.as_ref().map(fnr),
                    })
                })
                .collect();
            report.result = json!({
                "full_fit": r.full_fit.as_ref().map(fnr),
                "violation": r.violation,
                "flags": r.flags(),
            });
            report.diagnostics = r.flags().iter().map(|s| s.to_string()).collect();
        }
        Cmd::DemoHardness { n_max } => {
            if *n_max < 5 {
                return Err(Failure::Precondition("--n-max must be at least 5".into()));
            }
            let r = hardness_demo(*n_max);
            let values: Vec<Value> = r
                .values
                .iter()
                .map(|(n, v)| json!({ "n": n, "value": v.to_string() }))
                .collect();
            let grid: Vec<Value> = r
                .grid
                .iter()
                .map(|g| {
                    let outcome = match &g.outcome {
                        Ok(None) => json!("none found"),
                        Ok(Some(c)) => json!(c.to_string()),
                        Err(e) => json!(e.to_string()),
                    };
                    json!({ "order": g.order, "degree": g.degree, "outcome": outcome })
                })
                .collect();
            report.result = json!({
                "values": values,
                "grid": grid,
                "fit": r.fit.as_ref().map(fnr),
                "none_found": r.none_found(),
            });
        }
        Cmd::Wellposed { expr, horizon } => {
            let f = load(expr, report)?;
            if *horizon < 1 {
                return Err(Failure::Precondition("--horizon must be positive".into()));
            }
            let r = wellposedness_check(&f, *horizon);
            let factors: Vec<Value> = r
                .factors
                .iter()
                .map(|x| {
                    let mut v = json!({
                        "factor": fk(&x.factor),
                        "status": x.status.to_string(),
                        "bad_n": x.bad_n,
                    });
                    if let FactorStatus::IllPosed { modulus, residues } = &x.status {
                        v["modulus"] = json!(modulus);
                        v["residues"] = json!(residues);
                    }
                    v
                })
                .collect();
            report.result = json!({
                "horizon": r.horizon,
                "eventually_wellposed": r.eventually_wellposed(),
                "factors": factors,
                "bad_n": r.bad_n,
            });
        }
    }
    Ok(Status::Ok)
}
