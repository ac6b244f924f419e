//! JSON-lines records and their table rendering.

use std::io::{self, Write};

use scl_core::sol::{SolCommutatorExpression, SolElement};
use scl_core::{Certificate, ExtRational, Rational, ReducedWord};
use serde::Serialize;
use serde_json::{json, Map, Value};

pub const APPROXIMATE: &str = "approximate";
pub const BUDGET_EXHAUSTED: &str = "budget-exhausted";

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct OutputRecord {
    pub command: String,
    pub inputs: Map<String, Value>,
    pub result: Value,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub certificates: Option<Value>,
    pub flags: Vec<String>,
}

impl OutputRecord {
    pub fn new(command: impl Into<String>, inputs: Value, result: Value) -> Self {
        let inputs = match inputs {
            Value::Object(m) => m,
            Value::Null => Map::new(),
            other => Map::from_iter([("value".to_string(), other)]),
        };
        OutputRecord { command: command.into(), inputs, result, certificates: None, flags: Vec::new() }
    }

    pub fn with_certificates(mut self, c: Value) -> Self {
        self.certificates = Some(c);
        self
    }

    pub fn flag(mut self, f: &str) -> Self {
        if !self.flags.iter().any(|x| x == f) {
            self.flags.push(f.to_string());
        }
        self
    }

    pub fn to_json_line(&self) -> String {
        serde_json::to_string(self).expect("records serialize")
    }

    pub fn write(&self, out: &mut dyn Write, table: bool) -> io::Result<()> {
        if !table {
            return writeln!(out, "{}", self.to_json_line());
        }
        writeln!(out, "== {}", self.command)?;
        for (k, v) in &self.inputs {
            writeln!(out, "  in  {k:<24} {}", cell(v))?;
        }
        match &self.result {
            Value::Object(m) => {
                for (k, v) in m {
                    writeln!(out, "  out {k:<24} {}", cell(v))?;
                }
            }
            v => writeln!(out, "  out {:<24} {}", "value", cell(v))?,
        }
        if let Some(c) = &self.certificates {
            writeln!(out, "  certificates {}", cell(c))?;
        }
        if !self.flags.is_empty() {
            writeln!(out, "  flags {}", self.flags.join(", "))?;
        }
        Ok(())
    }
}

fn cell(v: &Value) -> String {
    match v {
        Value::String(s) => s.clone(),
        other => other.to_string(),
    }
}

/// Exact rationals print as `num/den`.
pub fn frac(r: Rational) -> Value {
    Value::String(format!("{}/{}", r.numer(), r.denom()))
}

pub fn ext(r: ExtRational) -> Value {
    Value::String(r.to_string())
}

/// Parses `num/den` (or a bare integer) back into a rational.
pub fn parse_frac(s: &str) -> Option<Rational> {
    let (n, d) = s.split_once('/').unwrap_or((s, "1"));
    let d: i64 = d.trim().parse().ok()?;
    (d != 0).then_some(())?;
    Some(Rational::new(n.trim().parse().ok()?, d))
}

/// Reals are rounded to 12 significant digits.
pub fn real(x: f64) -> Value {
    if x.is_nan() {
        return Value::String("nan".into());
    }
    if x.is_infinite() {
        return Value::String(if x > 0.0 { "inf" } else { "-inf" }.into());
    }
    let rounded: f64 = format!("{x:.11e}").parse().expect("formatted float parses");
    json!(rounded)
}

pub fn word(w: &ReducedWord) -> Value {
    Value::String(w.to_string())
}

pub fn word_certificate(c: &Certificate<ReducedWord>) -> Value {
    let pairs: Vec<Value> = c.pairs().iter().map(|(x, y)| json!([x.to_string(), y.to_string()])).collect();
    let shown: Vec<String> = c.pairs().iter().map(|(x, y)| format!("[{x}, {y}]")).collect();
    json!({
        "target": word(c.target()),
        "genus": c.genus(),
        "pairs": pairs,
        "expression": shown.join(""),
        "verified": c.verify(&scl_core::FreeGroup { rank: c.target().rank() }),
    })
}

/// `(x,y)` for fiber elements, `g^t` for powers of the base generator.
pub fn sol_element(e: &SolElement) -> String {
    let v = format!("({},{})", e.v[0], e.v[1]);
    match (e.v == [0, 0], e.t) {
        (_, 0) => v,
        (true, 1) => "g".into(),
        (true, t) => format!("g^{t}"),
        (false, 1) => format!("{v}g"),
        (false, t) => format!("{v}g^{t}"),
    }
}

pub fn sol_certificate(c: &SolCommutatorExpression, verified: bool) -> Value {
    let shown: Vec<String> = c.pairs().iter().map(|(x, y)| format!("[{},{}]", sol_element(x), sol_element(y))).collect();
    let pairs: Vec<Value> = c
        .pairs()
        .iter()
        .map(|(x, y)| json!([{"v": x.v, "t": x.t}, {"v": y.v, "t": y.t}]))
        .collect();
    json!({
        "target": sol_element(c.target()),
        "genus": c.genus(),
        "pairs": pairs,
        "expression": shown.join(""),
        "verified": verified,
    })
}
