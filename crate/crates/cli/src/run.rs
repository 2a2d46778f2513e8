//! Command dispatch and the output document.

use num_complex::Complex64;
use serde_json::{json, Map, Value};
use synthkit::derivations::{apply, Derivation};
use synthkit::ideals::{self, ApproxPoint, IdealHandle};
use synthkit::synthesis::{self, check_window_span, window_oracle, SolutionBasis, WindowBox};
use synthkit::verify;
use synthkit::{Exponential, Polynomial, Scalar};

use crate::command::{Command, Format, Input, Verb};
use crate::error::CliError;

pub const SCHEMA: u64 = 1;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Status {
    Ok,
    /// Truncation, approximate roots or an unstabilized cutoff.
    Inconclusive,
    /// A property suite found a counterexample.
    Failed,
    Error,
}

impl Status {
    pub fn exit_code(self) -> i32 {
        match self {
            Status::Ok => 0,
            Status::Inconclusive => 2,
            Status::Failed | Status::Error => 1,
        }
    }

    fn name(self) -> &'static str {
        match self {
            Status::Ok => "ok",
            Status::Inconclusive => "inconclusive",
            Status::Failed => "failed",
            Status::Error => "error",
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct Outcome {
    pub status: Status,
    pub document: Value,
}

impl Outcome {
    pub fn exit_code(&self) -> i32 {
        self.status.exit_code()
    }

    pub fn error(e: &CliError) -> Self {
        let mut err = Map::new();
        err.insert("code".into(), json!(e.code));
        err.insert("message".into(), json!(e.message));
        if let (Some(l), Some(c)) = (e.line, e.col) {
            err.insert("line".into(), json!(l));
            err.insert("column".into(), json!(c));
        }
        Outcome {
            status: Status::Error,
            document: json!({"schema": SCHEMA, "status": "error", "error": err}),
        }
    }

    /// The document as text in the requested format, newline-terminated.
    pub fn render(&self, format: Format) -> String {
        match format {
            Format::Json => {
                let mut s = serde_json::to_string_pretty(&self.document).expect("serializable");
                s.push('\n');
                s
            }
            Format::Text => {
                let mut out = String::new();
                flatten("", &self.document, &mut out);
                out
            }
        }
    }
}

fn flatten(prefix: &str, v: &Value, out: &mut String) {
    match v {
        Value::Object(m) => {
            for (k, x) in m {
                let p = if prefix.is_empty() { k.clone() } else { format!("{prefix}.{k}") };
                flatten(&p, x, out);
            }
        }
        Value::Array(xs) if xs.iter().any(|x| x.is_object() || x.is_array()) => {
            for (i, x) in xs.iter().enumerate() {
                flatten(&format!("{prefix}[{i}]"), x, out);
            }
        }
        Value::String(s) => out.push_str(&format!("{prefix}: {s}\n")),
        _ => out.push_str(&format!("{prefix}: {v}\n")),
    }
}

fn scalar(s: &Scalar) -> Value {
    Value::String(s.to_string())
}

fn exponential(c: &Exponential) -> Value {
    Value::Array(c.base().iter().map(scalar).collect())
}

fn polynomial(p: &Polynomial) -> Value {
    let terms: Vec<Value> = p
        .terms()
        .map(|(a, c)| json!({"exponent": a, "coefficient": scalar(c)}))
        .collect();
    json!({"text": p.to_string(), "terms": terms})
}

fn real(x: f64, scale: f64) -> String {
    let x = if x.abs() <= 1e-13 * scale.max(1.0) { 0.0 } else { x };
    format!("{x:.12}")
}

fn complex(z: &Complex64) -> Value {
    let scale = z.norm();
    json!({"re": real(z.re, scale), "im": real(z.im, scale)})
}

fn approx_point(a: &ApproxPoint) -> Value {
    json!({
        "approx": true,
        "coordinates": a.coords.iter().map(complex).collect::<Vec<_>>(),
        "radius": format!("{:.3e}", a.radius),
        "certified": a.certified,
    })
}

fn basis(b: &SolutionBasis) -> Value {
    json!({
        "root": exponential(&b.root),
        "multiplicity": b.multiplicity,
        "degbound": b.degbound,
        "truncated": b.truncated,
        "basis": b.polys.iter().map(polynomial).collect::<Vec<_>>(),
    })
}

/// Runs a parsed command.
pub fn run(cmd: &Command) -> Outcome {
    match dispatch(cmd) {
        Ok((status, result)) => Outcome {
            status,
            document: json!({
                "schema": SCHEMA,
                "command": cmd.format(),
                "status": status.name(),
                "result": result,
            }),
        },
        Err(e) => Outcome::error(&e),
    }
}

fn dispatch(cmd: &Command) -> Result<(Status, Value), CliError> {
    let dim = cmd.options.dim.unwrap_or(1);
    let opts = &cmd.options;
    match (cmd.verb, cmd.inputs.as_slice()) {
        (Verb::Solve, [Input::System(ms), rest @ ..]) => {
            let roots = match rest {
                [Input::Roots(rs)] => Some(rs.as_slice()),
                _ => None,
            };
            let sol = synthesis::solve_system(dim, ms, roots, opts.degbound)?;
            let mut result = Map::new();
            result.insert("dimension".into(), json!(sol.total_dimension()));
            result.insert("roots".into(), Value::Array(sol.bases.iter().map(basis).collect()));
            result.insert(
                "approximate_roots".into(),
                Value::Array(sol.approximate.iter().map(approx_point).collect()),
            );
            result.insert("truncated".into(), json!(sol.truncated()));
            let mut inconclusive = sol.truncated() || !sol.approximate.is_empty();
            if let Some((lo, hi)) = opts.window {
                let w = WindowBox::cube(dim, lo, hi);
                let ws = window_oracle(dim, ms, &w)?;
                let check = check_window_span(&sol, &ws)?;
                inconclusive |= !check.spans();
                result.insert(
                    "window".into(),
                    json!({
                        "lo": w.lo,
                        "hi": w.hi,
                        "dimension": check.window_dimension,
                        "restricted_rank": check.restricted_rank,
                        "contained": check.contained,
                        "spans": check.spans(),
                    }),
                );
            }
            Ok((status(inconclusive), Value::Object(result)))
        }
        (Verb::Roots, [Input::Ideal(gens)]) => {
            let ideal = IdealHandle::new(dim, gens.clone())?;
            let zs = ideals::zero_set(&ideal)?;
            let exact = zs
                .exact
                .iter()
                .map(|c| {
                    Ok(json!({
                        "root": exponential(c),
                        "order": ideals::root_order(&ideal, c)?,
                        "multiplicity": ideals::local_multiplicity(&ideal, c)?,
                    }))
                })
                .collect::<Result<Vec<_>, synthkit::Error>>()?;
            let approx: Vec<Value> = zs.approximate.iter().map(approx_point).collect();
            Ok((
                status(!zs.approximate.is_empty()),
                json!({"exact": exact, "approximate": approx}),
            ))
        }
        (Verb::Member, [Input::Ideal(gens), Input::Laurent(l)]) => {
            let ideal = IdealHandle::new(dim, gens.clone())?;
            let member = ideals::member(&ideal, l)?;
            let mut result = Map::new();
            result.insert("member".into(), json!(member));
            if !member {
                result.insert("localization".into(), localization(&ideal, l, opts.cutoff)?);
            }
            Ok((Status::Ok, Value::Object(result)))
        }
        (Verb::RootOrder, [Input::Ideal(gens), Input::Exponential(c)]) => {
            let ideal = IdealHandle::new(dim, gens.clone())?;
            let order = ideals::root_order(&ideal, c)?;
            Ok((Status::Ok, json!({"root": exponential(c), "order": order})))
        }
        (Verb::DualSpace, [Input::Ideal(gens), Input::Exponential(c)]) => {
            let ideal = IdealHandle::new(dim, gens.clone())?;
            let ds = ideals::local_dual_space(&ideal, c, opts.cutoff)?;
            Ok((
                status(!ds.stabilized),
                json!({
                    "root": exponential(c),
                    "cutoff": ds.cutoff,
                    "stabilized": ds.stabilized,
                    "basis": ds.polynomials.iter().map(polynomial).collect::<Vec<_>>(),
                }),
            ))
        }
        (Verb::ApplyDerivation, [Input::Polynomial(p), Input::Measure(mu), Input::Exponential(c)]) => {
            let d = Derivation::new(p.clone());
            let value = apply(&d, mu, c)?;
            Ok((
                Status::Ok,
                json!({
                    "generating_function": polynomial(d.generating_function()),
                    "order": d.order(),
                    "value": scalar(&value),
                }),
            ))
        }
        (Verb::Verify, suites) => {
            let names: Vec<&str> = suites
                .iter()
                .map(|s| match s {
                    Input::Suite(n) => Ok(n.as_str()),
                    _ => Err(CliError::new("E_TYPE", "verify takes suite names")),
                })
                .collect::<Result<_, _>>()?;
            let known = verify::suite_names();
            if let Some(bad) = names.iter().find(|n| !known.contains(n)) {
                return Err(CliError::new(
                    "E_UNKNOWN_SUITE",
                    format!("unknown suite `{bad}`; known: {}", known.join(", ")),
                ));
            }
            let seed = verify::seed_from_env();
            let reports = verify::run_suites(&names, seed, opts.trials);
            let passed = reports.iter().all(|r| r.passed());
            let suites: Vec<Value> = reports
                .iter()
                .map(|r| {
                    json!({
                        "name": r.name,
                        "trials": r.trials,
                        "failures": r.failures,
                        "passed": r.passed(),
                        "counterexample": r.counterexample,
                    })
                })
                .collect();
            let st = if passed { Status::Ok } else { Status::Failed };
            Ok((st, json!({"seed": seed, "passed": passed, "suites": suites})))
        }
        (Verb::DemoRank, [Input::Natural(k)]) => {
            let dimension = synthesis::biadditive_demo(*k)?;
            Ok((Status::Ok, json!({"k": k, "dimension": dimension})))
        }
        _ => Err(CliError::new("E_ARITY", format!("malformed {} command", cmd.verb))),
    }
}

fn status(inconclusive: bool) -> Status {
    if inconclusive {
        Status::Inconclusive
    } else {
        Status::Ok
    }
}

/// Witness search over the exact zero set; incomplete when the zero set is
/// infinite or has roots outside `Q(i)`.
fn localization(ideal: &IdealHandle, l: &synthkit::LaurentPoly, cutoff: Option<usize>) -> Result<Value, CliError> {
    let (roots, complete) = match ideals::zero_set(ideal) {
        Ok(zs) => {
            let complete = zs.approximate.is_empty();
            (zs.exact, complete)
        }
        Err(synthkit::Error::InfiniteZeroSet) => (Vec::new(), false),
        Err(e) => return Err(e.into()),
    };
    let loc = match synthesis::localizability_witness(ideal, l, &roots, cutoff) {
        Ok(loc) => loc,
        Err(synthkit::Error::BoundRequired(_)) => {
            return Ok(json!({"complete": false, "inconclusive": true, "witness": null}));
        }
        Err(e) => return Err(e.into()),
    };
    let witness = loc.witness.map(|w| {
        json!({
            "root": exponential(&w.root),
            "derivation": polynomial(&w.q),
            "moment": scalar(&w.moment),
        })
    });
    Ok(json!({"complete": complete, "inconclusive": loc.inconclusive, "witness": witness}))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::command::parse;

    fn result(text: &str) -> (Status, Value) {
        let out = run(&parse(text).unwrap());
        (out.status, out.document["result"].clone())
    }

    #[test]
    fn solve_recurrence() {
        let (st, r) = result("mu = d[-2] - 3*d[-1] + 2*d[0]\nsolve mu");
        assert_eq!(st, Status::Ok);
        assert_eq!(r["dimension"], 2);
        assert_eq!(r["roots"][0]["root"], json!(["1"]));
        assert_eq!(r["roots"][1]["root"], json!(["2"]));
        assert_eq!(r["roots"][1]["basis"][0]["text"], "1");
    }

    #[test]
    fn approximate_roots_are_inconclusive() {
        let (st, r) = result("solve {z^2 - z - 1}");
        assert_eq!(st, Status::Inconclusive);
        assert_eq!(r["dimension"], 0);
        assert_eq!(r["approximate_roots"][0]["approx"], true);
        assert_eq!(r["approximate_roots"][1]["coordinates"][0]["re"], "1.618033988750");
    }

    #[test]
    fn member_and_witness() {
        let (_, r) = result("member <z-1> z^2-1");
        assert_eq!(r["member"], true);
        let (_, r) = result("member {<(z-1)^2>} z-1");
        assert_eq!(r["member"], false);
        assert_eq!(r["localization"]["witness"]["derivation"]["text"], "x1");
        assert_eq!(r["localization"]["witness"]["moment"], "-1");
    }

    #[test]
    fn demo_rank_and_errors() {
        let (_, r) = result("demo-rank 4");
        assert_eq!(r["dimension"], 6);
        let out = run(&parse("root-order {<0>} 1").unwrap());
        assert_eq!(out.exit_code(), 1);
        assert_eq!(out.document["error"]["code"], "E_INFINITE_ORDER");
    }

    #[test]
    fn window_check() {
        let (st, r) = result("solve {(z-1)^2} --window 0:7");
        assert_eq!(st, Status::Ok);
        assert_eq!(r["window"]["dimension"], 2);
        assert_eq!(r["window"]["spans"], true);
    }

    #[test]
    fn text_format_flattens() {
        let out = run(&parse("demo-rank 2 --format text").unwrap());
        let text = out.render(Format::Text);
        assert!(text.contains("result.dimension: 4\n"));
    }
}
