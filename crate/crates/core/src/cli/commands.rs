//! One function per subcommand. Each returns the JSON document for a single
//! polynomial together with its exit code and a one-line summary.

use num_complex::Complex64;
use serde_json::{json, Value};

use crate::canonical::{eval_ab, hamiltonian, reconstruct_polynomial};
use crate::certify::{certify_on_circle, CertOutcome};
use crate::criterion::{
    default_grid, delta_omega, verdict_on_circle_sampled, verdict_simple_with, Verdict, VerdictClass,
};
use crate::embedding::{embed_simple, CoeffVector, LogScale};
use crate::error::{Error, Result};
use crate::exact::{parse_rational, Rational};
use crate::expoly::{eval_e, eval_e_sharp};
use crate::oracle::{verdict_oracle, OracleVerdict, RootClass};

pub struct Outcome {
    pub json: Value,
    pub exit: i32,
    pub summary: String,
}

/// Flags shared by the polynomial subcommands, already parsed.
#[derive(Debug, Clone, Default)]
pub struct Options {
    pub log_q: Option<Rational>,
    pub grid: Option<Vec<Rational>>,
    pub certify: bool,
    pub z: Vec<Complex64>,
    pub interval: Option<(usize, f64)>,
}

impl Options {
    fn log_scale(&self, g: usize) -> Result<LogScale> {
        match &self.log_q {
            Some(l) => LogScale::new(l.clone(), g),
            None => Ok(LogScale::default()),
        }
    }

    fn grid(&self) -> Vec<Rational> {
        self.grid.clone().unwrap_or_else(default_grid)
    }
}

pub fn exit_for_error(e: &Error) -> i32 {
    match e {
        e if e.is_input_error() => 3,
        Error::Range(_) | Error::Stencil(_) | Error::Pole => 3,
        Error::NotConstructible { .. } | Error::RecursionBreakdown { .. } | Error::Singular { .. } => 1,
        _ => 2,
    }
}

pub fn error_json(e: &Error) -> Value {
    json!({"error": {"code": e.code(), "message": e.to_string()}})
}

fn coeff_label(c: &CoeffVector) -> String {
    c.coeffs().iter().map(ToString::to_string).collect::<Vec<_>>().join(",")
}

fn strings<T: ToString>(v: &[T]) -> Vec<String> {
    v.iter().map(ToString::to_string).collect()
}

/// `2`, `-0.5`, `0.3+0.2i`; negative zero prints as `0`.
pub fn fmt_complex(z: Complex64) -> String {
    let clean = |x: f64| if x == 0.0 { 0.0 } else { x };
    let (re, im) = (clean(z.re), clean(z.im));
    if im == 0.0 {
        format!("{re}")
    } else if re == 0.0 {
        format!("{im}i")
    } else if im < 0.0 {
        format!("{re}-{}i", -im)
    } else {
        format!("{re}+{im}i")
    }
}

fn oracle_json(o: &Result<OracleVerdict>) -> Value {
    match o {
        Ok(o) => json!(o),
        Err(e) => error_json(e),
    }
}

fn witness_json(v: &Verdict) -> Value {
    json!(v.witness)
}

pub fn check(c: &CoeffVector, opts: &Options) -> Result<Outcome> {
    let l = opts.log_scale(c.g())?;
    let simple = verdict_simple_with(c, &l)?;
    let rep = &simple.reports[0];
    let oracle = verdict_oracle(c);
    let mut doc = json!({
        "g": c.g(),
        "coeffs": strings(c.coeffs()),
        "log_q": l.value().to_string(),
        "delta": rep.deltas(),
        "gamma": rep.gammas(),
        "oracle": oracle_json(&oracle),
        "simple_witness": witness_json(&simple),
    });

    let (class, certified, witness, reason) = if simple.class == VerdictClass::SimpleOnCircle {
        (simple.class, true, Value::Null, None)
    } else if opts.certify {
        let cert = certify_on_circle(c)?;
        let out = match &cert.outcome {
            CertOutcome::CertifiedOnT => (VerdictClass::OnCircleNotSimple, true, Value::Null, None),
            CertOutcome::CertifiedFail { n, lo, hi } => (
                VerdictClass::OffCircle,
                true,
                json!({"n": n, "interval": [lo.to_string(), hi.to_string()]}),
                None,
            ),
            CertOutcome::Inconclusive { reason } => {
                (VerdictClass::Degenerate, false, Value::Null, Some(reason.clone()))
            }
        };
        doc["certificate"] = json!(cert);
        out
    } else {
        let sampled = verdict_on_circle_sampled(c, &opts.grid())?;
        if sampled.class == VerdictClass::OffCircle {
            (VerdictClass::OffCircle, true, witness_json(&sampled), None)
        } else {
            // every grid point passed: only the numeric oracle can settle it
            match oracle.as_ref().map(OracleVerdict::class) {
                Ok(RootClass::OnTWithMultiple) | Ok(RootClass::AllSimpleOnT) => {
                    (VerdictClass::OnCircleNotSimple, false, Value::Null, None)
                }
                Ok(RootClass::OffT) => (
                    VerdictClass::ConsistentWithOnCircle,
                    false,
                    Value::Null,
                    Some("grid passed but the root oracle places roots off the circle".to_string()),
                ),
                _ => (
                    VerdictClass::ConsistentWithOnCircle,
                    false,
                    Value::Null,
                    Some("grid passed and the root oracle is undecided".to_string()),
                ),
            }
        }
    };
    let reason = reason.or(simple.reason.clone());
    doc["verdict"] = json!(class);
    doc["certified"] = json!(certified);
    doc["witness"] = witness;
    if let Some(r) = reason {
        doc["reason"] = json!(r);
    }
    Ok(Outcome {
        json: doc,
        exit: class.exit_code(),
        summary: format!(
            "{}: {:?}{}",
            coeff_label(c),
            class,
            if certified { "" } else { " (not certified)" }
        ),
    })
}

pub fn delta(c: &CoeffVector, opts: &Options) -> Result<Outcome> {
    let l = opts.log_scale(c.g())?;
    let simple = verdict_simple_with(c, &l)?;
    let rep = &simple.reports[0];
    let mut doc = json!({
        "g": c.g(),
        "coeffs": strings(c.coeffs()),
        "log_q": l.value().to_string(),
        "delta": rep.deltas(),
        "capital_delta": rep.capital_deltas(),
        "gamma": rep.gammas(),
        "records": rep.records,
    });
    if let Some(grid) = &opts.grid {
        let samples = grid
            .iter()
            .map(|t| {
                delta_omega(c, t).map(|r| json!({"t": t.to_string(), "delta": r.deltas()}))
            })
            .collect::<Result<Vec<_>>>()?;
        doc["samples"] = json!(samples);
    }
    Ok(Outcome {
        summary: format!("{}: delta = [{}]", coeff_label(c), strings(&rep.deltas()).join(", ")),
        json: doc,
        exit: simple.class.exit_code(),
    })
}

pub fn hamiltonian_cmd(c: &CoeffVector, opts: &Options) -> Result<Outcome> {
    let l = opts.log_scale(c.g())?;
    let h = hamiltonian(c, &l)?;
    Ok(Outcome {
        summary: format!("{}: gamma = [{}]", coeff_label(c), strings(&h.gammas()).join(", ")),
        exit: if h.is_positive() { 0 } else { 1 },
        json: json!(h),
    })
}

pub fn eval(c: &CoeffVector, opts: &Options) -> Result<Outcome> {
    if opts.z.is_empty() {
        return Err(Error::InvalidInput("eval needs at least one --z value".into()));
    }
    let l = opts.log_scale(c.g())?;
    let s = embed_simple(c, &l)?;
    let h = match opts.interval {
        Some(_) => Some(hamiltonian(c, &l)?),
        None => None,
    };
    let mut points = Vec::with_capacity(opts.z.len());
    for &z in &opts.z {
        let e = eval_e(&s, &l, z)?;
        let es = eval_e_sharp(&s, &l, z)?;
        let a = (e + es) / 2.0;
        let b = Complex64::i() * (e - es) / 2.0;
        let mut p = json!({
            "z": fmt_complex(z),
            "E": fmt_complex(e),
            "E_sharp": fmt_complex(es),
            "A": fmt_complex(a),
            "B": fmt_complex(b),
        });
        if z.im != 0.0 {
            let k = (a.conj() * b - b.conj() * a) / (std::f64::consts::PI * (z - z.conj()));
            p["K"] = json!(fmt_complex(k));
        }
        if let (Some(h), Some((n, frac))) = (&h, opts.interval) {
            let (an, bn) = eval_ab(h, z, n, frac)?;
            p["interior"] = json!({"n": n, "s": frac, "A": fmt_complex(an), "B": fmt_complex(bn)});
        }
        points.push(p);
    }
    Ok(Outcome {
        summary: format!("{}: {} point(s)", coeff_label(c), points.len()),
        json: json!({"g": c.g(), "coeffs": strings(c.coeffs()), "log_q": l.value().to_string(), "points": points}),
        exit: 0,
    })
}

pub fn oracle(c: &CoeffVector) -> Result<Outcome> {
    let o = verdict_oracle(c)?;
    let exit = match o.class() {
        RootClass::AllSimpleOnT | RootClass::OnTWithMultiple => 0,
        RootClass::OffT => 1,
        RootClass::Uncertain => 2,
    };
    Ok(Outcome {
        summary: format!("{}: {:?}", coeff_label(c), o.class()),
        json: json!(o),
        exit,
    })
}

pub fn certify(c: &CoeffVector) -> Result<Outcome> {
    let cert = certify_on_circle(c)?;
    let (exit, what) = match &cert.outcome {
        CertOutcome::CertifiedOnT => (0, "CertifiedOnT".to_string()),
        CertOutcome::CertifiedFail { n, lo, hi } => (1, format!("CertifiedFail at n = {n}, t in [{lo}, {hi}]")),
        CertOutcome::Inconclusive { reason } => (2, format!("Inconclusive: {reason}")),
    };
    Ok(Outcome {
        summary: format!("{}: {what}", coeff_label(c)),
        json: json!(cert),
        exit,
    })
}

/// From explicit steps and `P(1)`.
pub fn reconstruct(gammas: &[Rational], p1: &Rational) -> Result<Outcome> {
    let c = reconstruct_polynomial(gammas, p1)?;
    let label = coeff_label(&c);
    Ok(Outcome {
        summary: label.clone(),
        json: json!({"g": c.g(), "coefficients": label, "c": strings(c.coeffs())}),
        exit: 0,
    })
}

/// Reads the steps and `e0` back from a `hamiltonian` report.
pub fn steps_from_json(v: &Value) -> Result<(Vec<Rational>, Rational)> {
    let bad = |why: &str| Error::InvalidInput(format!("hamiltonian document: {why}"));
    let steps = v.get("steps").and_then(Value::as_array).ok_or_else(|| bad("missing \"steps\""))?;
    let gammas = steps
        .iter()
        .map(|s| {
            s.get("gamma")
                .and_then(Value::as_str)
                .ok_or_else(|| bad("step without a \"gamma\" string"))
                .and_then(parse_rational)
        })
        .collect::<Result<Vec<_>>>()?;
    let e0 = v
        .get("e0")
        .and_then(Value::as_str)
        .ok_or_else(|| bad("missing \"e0\""))
        .and_then(parse_rational)?;
    Ok((gammas, e0))
}
