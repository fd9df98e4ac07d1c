//! Text form of presentations.
//!
//! ```text
//! gens 3
//! rel comm: 1,2 -1 3 1
//! rel eq: 1,2
//! rel cyclic: 1;2;3
//! ```
//! Words are space-separated signed generator indices; `#` starts a comment.

use super::{Presentation, RelKind, Relation};
use crate::error::Error;
use crate::word::FreeWord;

pub fn to_text(p: &Presentation) -> String {
    let mut out = format!("gens {}\n", p.n);
    for r in &p.relations {
        let body = match &r.kind {
            RelKind::Comm(a, b) => format!("rel comm: {a},{b}"),
            RelKind::Eq(a, b) => format!("rel eq: {a},{b}"),
            RelKind::Cyclic(ws) => {
                let parts: Vec<String> = ws.iter().map(|w| w.to_string()).collect();
                format!("rel cyclic: {}", parts.join(";"))
            }
        };
        out.push_str(&body);
        if let Some(j) = r.source {
            out.push_str(&format!("  # event {j}"));
        }
        out.push('\n');
    }
    out
}

fn word(s: &str) -> Result<FreeWord, Error> {
    FreeWord::parse(s).ok_or_else(|| Error::Malformed(format!("bad word {s:?}")))
}

pub fn parse_text(s: &str) -> Result<Presentation, Error> {
    let mut n = None;
    let mut relations = Vec::new();
    for raw in s.lines() {
        let (line, comment) = match raw.split_once('#') {
            Some((l, c)) => (l.trim(), Some(c.trim())),
            None => (raw.trim(), None),
        };
        if line.is_empty() {
            continue;
        }
        if let Some(rest) = line.strip_prefix("gens ") {
            n = Some(rest.trim().parse::<usize>().map_err(|_| Error::Malformed(format!("bad header {line:?}")))?);
            continue;
        }
        let Some((head, body)) = line.split_once(':') else {
            return Err(Error::Malformed(format!("bad line {line:?}")));
        };
        let pair = |body: &str| -> Result<(FreeWord, FreeWord), Error> {
            let (a, b) = body.split_once(',').ok_or_else(|| Error::Malformed(format!("expected two words in {line:?}")))?;
            Ok((word(a)?, word(b)?))
        };
        let kind = match head.trim() {
            "rel comm" => {
                let (a, b) = pair(body)?;
                RelKind::Comm(a, b)
            }
            "rel eq" => {
                let (a, b) = pair(body)?;
                RelKind::Eq(a, b)
            }
            "rel cyclic" => RelKind::Cyclic(body.split(';').map(word).collect::<Result<_, _>>()?),
            other => return Err(Error::Malformed(format!("unknown relation kind {other:?}"))),
        };
        let source = comment.and_then(|c| c.strip_prefix("event ")).and_then(|j| j.trim().parse().ok());
        relations.push(Relation { kind, source });
    }
    let n = n.ok_or_else(|| Error::Malformed("missing gens header".into()))?;
    let p = Presentation { n, relations, ..Presentation::new(n, vec![]) };
    p.check()?;
    Ok(p)
}
