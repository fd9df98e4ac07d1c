//! JSON input files and reports.
//!
//! Input: `{"lines":[{"a":..,"b":..,"c":..}], "conics":[{"coeffs":[..6]}]}`
//! where every number is an integer or a string `"p/q"`.

use serde::{Deserialize, Serialize};
use serde_json::{json, Value};

use crate::error::Error;
use crate::exact::geometry::{Arrangement, Conic, Line, PointXY};
use crate::exact::scalar::{fmt_q, parse_q, Q};
use crate::monodromy::{EventKind, Monodromy};

#[derive(Clone, Debug, Deserialize, Serialize)]
#[serde(untagged)]
enum Number {
    Int(i64),
    Text(String),
}

impl Number {
    fn to_q(&self) -> Result<Q, Error> {
        match self {
            Number::Int(n) => Ok(Q::from_integer((*n).into())),
            Number::Text(s) => parse_q(s).ok_or_else(|| Error::Malformed(format!("not a rational: {s:?}"))),
        }
    }

    fn from_q(q: &Q) -> Number {
        Number::Text(fmt_q(q))
    }
}

#[derive(Clone, Debug, Deserialize, Serialize)]
#[serde(deny_unknown_fields)]
struct LineFile {
    a: Number,
    b: Number,
    c: Number,
}

#[derive(Clone, Debug, Deserialize, Serialize)]
#[serde(deny_unknown_fields)]
struct ConicFile {
    coeffs: Vec<Number>,
}

#[derive(Clone, Debug, Default, Deserialize, Serialize)]
#[serde(deny_unknown_fields)]
struct ArrangementFile {
    #[serde(default)]
    lines: Vec<LineFile>,
    #[serde(default)]
    conics: Vec<ConicFile>,
}

/// Parses an arrangement file. Errors are [`Error::Malformed`].
pub fn parse_arrangement(text: &str) -> Result<Arrangement, Error> {
    let f: ArrangementFile = serde_json::from_str(text).map_err(|e| Error::Malformed(e.to_string()))?;
    let mut lines = Vec::new();
    for l in &f.lines {
        let (a, b, c) = (l.a.to_q()?, l.b.to_q()?, l.c.to_q()?);
        if a == Q::from_integer(0.into()) && b == Q::from_integer(0.into()) {
            return Err(Error::Malformed("line with a = b = 0".into()));
        }
        lines.push(Line::new(a, b, c));
    }
    let mut conics = Vec::new();
    for c in &f.conics {
        let coeffs: Vec<Q> = c.coeffs.iter().map(Number::to_q).collect::<Result<_, _>>()?;
        let coeffs: [Q; 6] = coeffs
            .try_into()
            .map_err(|v: Vec<Q>| Error::Malformed(format!("conic needs 6 coefficients, got {}", v.len())))?;
        conics.push(Conic::new(coeffs));
    }
    Ok(Arrangement::new(lines, conics))
}

/// Inverse of [`parse_arrangement`].
pub fn arrangement_to_json(arr: &Arrangement) -> Value {
    let f = ArrangementFile {
        lines: arr
            .lines
            .iter()
            .map(|l| LineFile { a: Number::from_q(&l.a), b: Number::from_q(&l.b), c: Number::from_q(&l.c) })
            .collect(),
        conics: arr.conics.iter().map(|c| ConicFile { coeffs: c.coeffs.iter().map(Number::from_q).collect() }).collect(),
    };
    serde_json::to_value(f).expect("serializable")
}

pub fn points_to_json(pts: &[PointXY]) -> Value {
    serde_json::to_value(pts).expect("serializable")
}

/// Per event: abscissa, kind, Lefschetz pair, fingerprint of the composed
/// automorphism, and the transported words.
pub fn monodromy_to_json(m: &Monodromy) -> Value {
    let events: Vec<Value> = m
        .events
        .iter()
        .map(|e| {
            let kind = match e.kind {
                EventKind::Node => "node".to_string(),
                EventKind::Multiple(k) => format!("multiple:{k}"),
                EventKind::Branch => "branch".to_string(),
            };
            let words: Vec<String> = m.transport(e.index).iter().map(|w| w.to_string()).collect();
            json!({
                "index": e.index,
                "x": e.x,
                "kind": kind,
                "pair": [e.lefschetz.0, e.lefschetz.1],
                "fingerprint": m.composed_delta(e.index).fingerprint(),
                "words": words,
            })
        })
        .collect();
    let labels: Vec<String> = m.fiber.component_map().iter().map(|c| c.to_string()).collect();
    json!({
        "n": m.n,
        "u": fmt_q(&m.u),
        "fiber": labels,
        "crossings": m.crossings,
        "events": events,
    })
}
