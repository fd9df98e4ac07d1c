//! Zariski–van Kampen presentations, their abelianization and finite-quotient counts.

pub mod basepoint;
pub mod format;
pub mod homs;
pub mod simplify;

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::error::Error;
use crate::exact::geometry::{shear_to_generic, Arrangement};
use crate::monodromy::{sort_events_with, CrossingRule, EventKind, Monodromy};
use crate::structure::GroupStructure;
use crate::word::FreeWord;
pub use basepoint::{basepoint_move, BasedPresentation, Direction};
pub use homs::{count_homs, FiniteGroup};
pub use simplify::{simplify_to_cf, CfStatus, CfVerdict, RewriteStep};

#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(tag = "kind", content = "words", rename_all = "lowercase")]
pub enum RelKind {
    /// `w₁ = w₂`.
    Eq(FreeWord, FreeWord),
    /// `w₁ w₂ = w₂ w₁`.
    Comm(FreeWord, FreeWord),
    /// `a_k ⋯ a₁ = a₁ a_k ⋯ a₂ = ⋯ = a_{k-1} ⋯ a₁ a_k`.
    Cyclic(Vec<FreeWord>),
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Relation {
    #[serde(flatten)]
    pub kind: RelKind,
    /// Index of the singular event that induced the relation.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub source: Option<usize>,
}

impl Relation {
    pub fn eq(a: FreeWord, b: FreeWord) -> Relation {
        Relation { kind: RelKind::Eq(a, b), source: None }
    }

    pub fn comm(a: FreeWord, b: FreeWord) -> Relation {
        Relation { kind: RelKind::Comm(a, b), source: None }
    }

    pub fn cyclic(words: Vec<FreeWord>) -> Relation {
        Relation { kind: RelKind::Cyclic(words), source: None }
    }

    pub fn with_source(mut self, j: usize) -> Relation {
        self.source = Some(j);
        self
    }

    pub fn words(&self) -> Vec<&FreeWord> {
        match &self.kind {
            RelKind::Eq(a, b) | RelKind::Comm(a, b) => vec![a, b],
            RelKind::Cyclic(ws) => ws.iter().collect(),
        }
    }

    /// Applies `f` to every word of the relation.
    pub fn map_words(&self, f: impl Fn(&FreeWord) -> FreeWord) -> Relation {
        let kind = match &self.kind {
            RelKind::Eq(a, b) => RelKind::Eq(f(a), f(b)),
            RelKind::Comm(a, b) => RelKind::Comm(f(a), f(b)),
            RelKind::Cyclic(ws) => RelKind::Cyclic(ws.iter().map(f).collect()),
        };
        Relation { kind, source: self.source }
    }

    /// Replaces the `j`-th word.
    pub fn with_word(&self, j: usize, w: FreeWord) -> Relation {
        let mut r = self.clone();
        match &mut r.kind {
            RelKind::Eq(a, b) | RelKind::Comm(a, b) => *(if j == 0 { a } else { b }) = w,
            RelKind::Cyclic(ws) => ws[j] = w,
        }
        r
    }

    /// Relator words (each equal to the identity in the group).
    pub fn relators(&self) -> Vec<FreeWord> {
        match &self.kind {
            RelKind::Eq(a, b) => vec![a.mul(&b.inverse())],
            RelKind::Comm(a, b) => vec![a.mul(b).mul(&a.inverse()).mul(&b.inverse())],
            RelKind::Cyclic(ws) => expand_cyclic(ws).into_iter().map(|(l, r)| l.mul(&r.inverse())).collect(),
        }
    }
}

/// The `k−1` equalities of a cyclic relation: consecutive rotations of
/// `a_k ⋯ a₁` are equal.
pub fn expand_cyclic(ws: &[FreeWord]) -> Vec<(FreeWord, FreeWord)> {
    let k = ws.len();
    let rotation = |i: usize| {
        // a_i ⋯ a₁ a_k ⋯ a_{i+1}
        let order = (0..i).rev().chain((i..k).rev());
        FreeWord::product(order.map(|t| &ws[t]))
    };
    (0..k - 1).map(|i| (rotation(i), rotation(i + 1))).collect()
}

/// A finitely presented group on Γ₁..Γₙ.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Presentation {
    pub n: usize,
    pub relations: Vec<Relation>,
    /// Label of every generator: the component of its fiber strand, or a
    /// structural name for canonical presentations.
    pub labels: Vec<String>,
}

impl Presentation {
    pub fn new(n: usize, relations: Vec<Relation>) -> Presentation {
        Presentation { n, relations, labels: (1..=n).map(|i| format!("g{i}")).collect() }
    }

    pub fn relators(&self) -> Vec<FreeWord> {
        self.relations.iter().flat_map(|r| r.relators()).filter(|w| !w.is_empty()).collect()
    }

    /// Checks that every word only mentions Γ₁..Γₙ.
    pub fn check(&self) -> Result<(), Error> {
        for r in &self.relations {
            if r.words().iter().any(|w| w.max_gen() > self.n) {
                return Err(Error::Malformed(format!("relation mentions a generator beyond {}", self.n)));
            }
            if let RelKind::Cyclic(ws) = &r.kind {
                if ws.len() < 3 {
                    return Err(Error::Malformed("cyclic relation with fewer than 3 words".into()));
                }
            }
        }
        if self.labels.len() != self.n {
            return Err(Error::Malformed("generator labels do not match the generator count".into()));
        }
        Ok(())
    }
}

impl fmt::Display for Presentation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", format::to_text(self))
    }
}

/// The monodromy used for the presentation of an arrangement (sheared when necessary).
pub fn monodromy_of(arr: &Arrangement, shear: bool) -> Result<Monodromy, Error> {
    let arr = if shear { shear_to_generic(arr).arrangement } else { arr.clone() };
    sort_events_with(&arr, CrossingRule::Braided)
}

/// The Zariski–van Kampen presentation of the affine complement.
pub fn zvk(arr: &Arrangement) -> Result<Presentation, Error> {
    Ok(zvk_from(&monodromy_of(arr, true)?))
}

pub fn zvk_from(m: &Monodromy) -> Presentation {
    let mut relations = Vec::new();
    for e in &m.events {
        let ws = m.transport(e.index);
        let rel = match e.kind {
            EventKind::Branch => Relation::eq(ws[0].clone(), ws[1].clone()),
            EventKind::Node => Relation::comm(ws[0].clone(), ws[1].clone()),
            EventKind::Multiple(_) => Relation::cyclic(ws),
        };
        relations.push(rel.with_source(e.index));
    }
    let labels = m.fiber.component_map().iter().map(|c| c.to_string()).collect();
    Presentation { n: m.n, relations, labels }
}

/// Rank and torsion of the abelianization.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Abelianization {
    pub rank: usize,
    /// Invariant factors greater than 1.
    pub torsion: Vec<String>,
}

/// Smith normal form of the relation matrix.
pub fn abelianization(p: &Presentation) -> Abelianization {
    let mut rows: Vec<Vec<BigInt>> = p
        .relators()
        .iter()
        .map(|w| w.abelian(p.n).into_iter().map(BigInt::from).collect())
        .filter(|r: &Vec<BigInt>| r.iter().any(|x| !x.is_zero()))
        .collect();
    let cols = p.n;
    let mut diag: Vec<BigInt> = Vec::new();
    let mut t = 0;
    while t < rows.len() && t < cols {
        // pivot: smallest non-zero absolute value in the remaining block
        let mut best: Option<(usize, usize)> = None;
        for (i, row) in rows.iter().enumerate().skip(t) {
            for (j, x) in row.iter().enumerate().skip(t) {
                if !x.is_zero() && best.map_or(true, |(bi, bj)| x.abs() < rows[bi][bj].abs()) {
                    best = Some((i, j));
                }
            }
        }
        let Some((pi, pj)) = best else { break };
        rows.swap(t, pi);
        for row in rows.iter_mut() {
            row.swap(t, pj);
        }
        loop {
            let piv = rows[t][t].clone();
            let mut dirty = false;
            for i in t + 1..rows.len() {
                let qt = rows[i][t].div_floor(&piv);
                if !qt.is_zero() {
                    for j in t..cols {
                        let v = &rows[t][j] * &qt;
                        rows[i][j] -= v;
                    }
                }
                if !rows[i][t].is_zero() {
                    dirty = true;
                }
            }
            for j in t + 1..cols {
                let qt = rows[t][j].div_floor(&piv);
                if !qt.is_zero() {
                    for row in rows.iter_mut().skip(t) {
                        let v = &row[t] * &qt;
                        row[j] -= v;
                    }
                }
                if !rows[t][j].is_zero() {
                    dirty = true;
                }
            }
            if !dirty {
                // divisibility of the remaining block
                let bad = (t + 1..rows.len())
                    .flat_map(|i| (t + 1..cols).map(move |j| (i, j)))
                    .find(|&(i, j)| !(&rows[i][j] % &piv).is_zero());
                match bad {
                    Some((i, _)) => {
                        for j in t..cols {
                            let v = rows[i][j].clone();
                            rows[t][j] += v;
                        }
                        continue;
                    }
                    None => break,
                }
            }
            // move the smallest entry of row/column t to the pivot
            let mut best = (t, t);
            for i in t..rows.len() {
                if !rows[i][t].is_zero() && rows[i][t].abs() < rows[best.0][best.1].abs() {
                    best = (i, t);
                }
            }
            for j in t..cols {
                if !rows[t][j].is_zero() && rows[t][j].abs() < rows[best.0][best.1].abs() {
                    best = (t, j);
                }
            }
            rows.swap(t, best.0);
            for row in rows.iter_mut() {
                row.swap(t, best.1);
            }
        }
        diag.push(rows[t][t].abs());
        t += 1;
    }
    let torsion = diag.iter().filter(|d| **d > BigInt::from(1)).map(|d| d.to_string()).collect();
    Abelianization { rank: cols - diag.len(), torsion }
}

/// Standard presentation of `Z^r ⊕ F_{n₁} ⊕ ⋯`: central generators first,
/// then the free blocks, with commutations between different blocks.
pub fn canonical_presentation(s: &GroupStructure) -> Presentation {
    let mut blocks: Vec<Vec<usize>> = (0..s.r).map(|i| vec![i + 1]).collect();
    let mut labels: Vec<String> = (1..=s.r).map(|i| format!("z{i}")).collect();
    let mut next = s.r + 1;
    for (b, &k) in s.free_ranks.iter().enumerate() {
        blocks.push((next..next + k).collect());
        labels.extend((1..=k).map(|i| format!("f{}.{i}", b + 1)));
        next += k;
    }
    let mut relations = Vec::new();
    for i in 0..blocks.len() {
        for j in i + 1..blocks.len() {
            for &x in &blocks[i] {
                for &y in &blocks[j] {
                    relations.push(Relation::comm(FreeWord::gen(x), FreeWord::gen(y)));
                }
            }
        }
    }
    Presentation { n: next - 1, relations, labels }
}
