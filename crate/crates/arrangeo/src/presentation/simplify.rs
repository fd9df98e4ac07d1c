//! Budgeted rewriting toward a conjugation-free geometric presentation.
//!
//! Every step is a Tietze move justified by relations present at the time
//! it is applied, so the trace can be replayed and checked step by step.

use std::collections::BTreeSet;

use serde::Serialize;

use super::{Presentation, RelKind, Relation};
use crate::error::Error;
use crate::word::FreeWord;

/// One replayable rewrite.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "step", rename_all = "snake_case")]
pub enum RewriteStep {
    /// Replace the generator `from` by `to` in relation `relation`, justified
    /// by a relation `Γ_from = Γ_to` (possibly through a chain of equalities).
    Substitute { relation: usize, from: usize, to: usize },
    /// Remove the innermost conjugating letter of word `word` in relation
    /// `relation`, justified by a commutation of plain generators.
    Commute { relation: usize, word: usize, letter: i32 },
    /// Conjugate every word of relation `relation` by `letter` (`x w x⁻¹`).
    ConjugateRelation { relation: usize, letter: i32 },
    /// Rotate the words of a cyclic relation left by `shift`.
    Rotate { relation: usize, shift: usize },
    /// Remove relation `relation`, which became trivial.
    Drop { relation: usize },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "status", rename_all = "snake_case")]
pub enum CfStatus {
    ConjugationFree { presentation: Presentation },
    Unresolved { reason: String, remaining: Presentation },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CfVerdict {
    #[serde(flatten)]
    pub status: CfStatus,
    pub steps: usize,
    pub trace: Vec<RewriteStep>,
}

impl CfVerdict {
    pub fn is_conjugation_free(&self) -> bool {
        matches!(self.status, CfStatus::ConjugationFree { .. })
    }

    pub fn presentation(&self) -> &Presentation {
        match &self.status {
            CfStatus::ConjugationFree { presentation } => presentation,
            CfStatus::Unresolved { remaining, .. } => remaining,
        }
    }
}

pub const DEFAULT_BUDGET: usize = 10_000;

fn plain(w: &FreeWord) -> Option<usize> {
    match w.letters() {
        [g] if *g > 0 => Some(*g as usize),
        _ => None,
    }
}

/// Generators known equal or commuting, read off plain relations.
struct Knowledge {
    rep: Vec<usize>,
    comm: BTreeSet<(usize, usize)>,
}

impl Knowledge {
    fn read(p: &Presentation) -> Knowledge {
        let mut rep: Vec<usize> = (0..=p.n).collect();
        fn find(rep: &mut Vec<usize>, x: usize) -> usize {
            let mut r = x;
            while rep[r] != r {
                r = rep[r];
            }
            rep[x] = r;
            r
        }
        for r in &p.relations {
            if let RelKind::Eq(a, b) = &r.kind {
                if let (Some(x), Some(y)) = (plain(a), plain(b)) {
                    let (rx, ry) = (find(&mut rep, x), find(&mut rep, y));
                    let (lo, hi) = (rx.min(ry), rx.max(ry));
                    rep[hi] = lo;
                }
            }
        }
        for x in 0..=p.n {
            find(&mut rep, x);
        }
        let mut comm = BTreeSet::new();
        for r in &p.relations {
            if let RelKind::Comm(a, b) = &r.kind {
                if let (Some(x), Some(y)) = (plain(a), plain(b)) {
                    comm.insert((x.min(y), x.max(y)));
                }
            }
        }
        Knowledge { rep, comm }
    }

    /// Whether `Γ_x` and `Γ_y` commute by a plain relation (up to equalities).
    fn commute(&self, x: usize, y: usize) -> bool {
        let (rx, ry) = (self.rep[x], self.rep[y]);
        if rx == ry {
            return true;
        }
        self.comm.iter().any(|&(a, b)| {
            let (ra, rb) = (self.rep[a], self.rep[b]);
            (ra == rx && rb == ry) || (ra == ry && rb == rx)
        })
    }
}

fn is_eq_definition(r: &Relation) -> bool {
    matches!(&r.kind, RelKind::Eq(a, b) if plain(a).is_some() && plain(b).is_some())
}

fn is_trivial(r: &Relation) -> bool {
    match &r.kind {
        RelKind::Eq(a, b) => a == b,
        RelKind::Comm(a, b) => a == b || a.is_empty() || b.is_empty(),
        RelKind::Cyclic(_) => false,
    }
}

/// Applies one step, checking that it is justified by the current relations.
pub fn apply_step(p: &mut Presentation, step: &RewriteStep) -> Result<(), Error> {
    let bad = |m: &str| Err(Error::Malformed(format!("step {step:?} rejected: {m}")));
    let idx = match step {
        RewriteStep::Substitute { relation, .. }
        | RewriteStep::Commute { relation, .. }
        | RewriteStep::ConjugateRelation { relation, .. }
        | RewriteStep::Rotate { relation, .. }
        | RewriteStep::Drop { relation } => *relation,
    };
    if idx >= p.relations.len() {
        return bad("no such relation");
    }
    match step {
        RewriteStep::Substitute { from, to, .. } => {
            let k = Knowledge::read(p);
            if *from == 0 || *to == 0 || *from > p.n || *to > p.n || k.rep[*from] != k.rep[*to] {
                return bad("generators are not known to be equal");
            }
            if is_eq_definition(&p.relations[idx]) {
                return bad("equalities of plain generators are kept as they are");
            }
            let images: Vec<FreeWord> =
                (1..=p.n).map(|g| FreeWord::gen(if g == *from { *to } else { g })).collect();
            p.relations[idx] = p.relations[idx].map_words(|w| w.substitute(&images));
        }
        RewriteStep::Commute { word, letter, .. } => {
            let k = Knowledge::read(p);
            let words = p.relations[idx].words();
            let Some(w) = words.get(*word) else { return bad("no such word") };
            let Some((c, g)) = w.as_conjugate_of_generator() else { return bad("word is not a conjugate of a generator") };
            if c.letters().last() != Some(letter) {
                return bad("letter is not the innermost conjugator");
            }
            if !k.commute(letter.unsigned_abs() as usize, g) {
                return bad("no commutation justifies the step");
            }
            let mut inner = c.letters().to_vec();
            inner.pop();
            let new = FreeWord::gen(g).conjugate_by(&FreeWord::from_letters(inner));
            p.relations[idx] = p.relations[idx].with_word(*word, new);
        }
        RewriteStep::ConjugateRelation { letter, .. } => {
            if *letter == 0 || letter.unsigned_abs() as usize > p.n {
                return bad("letter out of range");
            }
            let c = FreeWord::from_letters([*letter]);
            p.relations[idx] = p.relations[idx].map_words(|w| w.conjugate_by(&c));
        }
        RewriteStep::Rotate { shift, .. } => {
            let RelKind::Cyclic(ws) = &p.relations[idx].kind else { return bad("not a cyclic relation") };
            let mut ws = ws.clone();
            let s = shift % ws.len();
            ws.rotate_left(s);
            p.relations[idx].kind = RelKind::Cyclic(ws);
        }
        RewriteStep::Drop { .. } => {
            if !is_trivial(&p.relations[idx]) {
                return bad("relation is not trivial");
            }
            p.relations.remove(idx);
        }
    }
    Ok(())
}

/// Replays a trace from `p`, checking every step.
pub fn replay(p: &Presentation, trace: &[RewriteStep]) -> Result<Presentation, Error> {
    let mut q = p.clone();
    for s in trace {
        apply_step(&mut q, s)?;
    }
    Ok(q)
}

/// Whether every relation is an equality, commutation or cyclic relation of
/// plain generators with increasing (cyclically increasing) indices.
pub fn is_conjugation_free(p: &Presentation) -> bool {
    p.relations.iter().all(|r| match &r.kind {
        RelKind::Eq(a, b) => plain(a).is_some() && plain(b).is_some(),
        RelKind::Comm(a, b) => matches!((plain(a), plain(b)), (Some(x), Some(y)) if x < y),
        RelKind::Cyclic(ws) => {
            let Some(gs) = ws.iter().map(plain).collect::<Option<Vec<usize>>>() else { return false };
            let descents = (0..gs.len()).filter(|&i| gs[i] >= gs[(i + 1) % gs.len()]).count();
            descents == 1
        }
    })
}

struct Run {
    p: Presentation,
    trace: Vec<RewriteStep>,
    budget: usize,
}

impl Run {
    fn step(&mut self, s: RewriteStep) -> Result<(), Error> {
        if self.trace.len() >= self.budget {
            return Err(Error::BudgetExhausted(self.trace.len()));
        }
        apply_step(&mut self.p, &s).expect("simplifier produced an unjustified step");
        self.trace.push(s);
        Ok(())
    }

    fn substitute_equalities(&mut self) -> Result<bool, Error> {
        let k = Knowledge::read(&self.p);
        let mut changed = false;
        for i in 0..self.p.relations.len() {
            if is_eq_definition(&self.p.relations[i]) {
                continue;
            }
            let gens: BTreeSet<usize> = self.p.relations[i]
                .words()
                .iter()
                .flat_map(|w| w.letters().iter().map(|l| l.unsigned_abs() as usize))
                .collect();
            for g in gens {
                if k.rep[g] != g {
                    self.step(RewriteStep::Substitute { relation: i, from: g, to: k.rep[g] })?;
                    changed = true;
                }
            }
        }
        Ok(changed)
    }

    fn peel(&mut self) -> Result<bool, Error> {
        let k = Knowledge::read(&self.p);
        let mut changed = false;
        for i in 0..self.p.relations.len() {
            let nw = self.p.relations[i].words().len();
            for j in 0..nw {
                loop {
                    let w = self.p.relations[i].words()[j].clone();
                    let Some((c, g)) = w.as_conjugate_of_generator() else { break };
                    let Some(&x) = c.letters().last() else { break };
                    if !k.commute(x.unsigned_abs() as usize, g) {
                        break;
                    }
                    self.step(RewriteStep::Commute { relation: i, word: j, letter: x })?;
                    changed = true;
                }
            }
        }
        Ok(changed)
    }

    /// Strips an outer conjugating letter shared by every word, or fixed on
    /// the words that lack it.
    fn strip_common(&mut self) -> Result<bool, Error> {
        let k = Knowledge::read(&self.p);
        let mut changed = false;
        for i in 0..self.p.relations.len() {
            if is_eq_definition(&self.p.relations[i]) {
                continue;
            }
            loop {
                let words: Vec<FreeWord> = self.p.relations[i].words().into_iter().cloned().collect();
                let forms: Option<Vec<(FreeWord, usize)>> = words.iter().map(|w| w.as_conjugate_of_generator()).collect();
                let Some(forms) = forms else { break };
                // candidate: smallest outer letter among the conjugated words
                let cands: BTreeSet<i32> = forms.iter().filter_map(|(c, _)| c.letters().first().copied()).collect();
                let mut done = false;
                for x in cands {
                    let xg = x.unsigned_abs() as usize;
                    let ok = forms.iter().all(|(c, g)| c.letters().first() == Some(&x) || (c.is_empty() && k.commute(xg, *g)));
                    // conjugating by x⁻¹ must not lengthen anything beyond what peeling undoes
                    if ok {
                        self.step(RewriteStep::ConjugateRelation { relation: i, letter: -x })?;
                        for (j, (c, g)) in forms.iter().enumerate() {
                            if c.is_empty() && *g != xg {
                                self.step(RewriteStep::Commute { relation: i, word: j, letter: -x })?;
                            }
                        }
                        changed = true;
                        done = true;
                        break;
                    }
                }
                if !done {
                    break;
                }
            }
        }
        Ok(changed)
    }

    fn tidy(&mut self) -> Result<(), Error> {
        let mut i = 0;
        while i < self.p.relations.len() {
            if is_trivial(&self.p.relations[i]) {
                self.step(RewriteStep::Drop { relation: i })?;
                continue;
            }
            if let RelKind::Cyclic(ws) = &self.p.relations[i].kind {
                if let Some(gs) = ws.iter().map(plain).collect::<Option<Vec<usize>>>() {
                    let m = (0..gs.len()).min_by_key(|&t| gs[t]).unwrap();
                    if m != 0 {
                        self.step(RewriteStep::Rotate { relation: i, shift: m })?;
                    }
                }
            }
            i += 1;
        }
        Ok(())
    }

    fn run(&mut self) -> Result<(), Error> {
        loop {
            let mut changed = self.substitute_equalities()?;
            changed |= self.peel()?;
            changed |= self.strip_common()?;
            self.tidy()?;
            if !changed || is_conjugation_free(&self.p) {
                return Ok(());
            }
        }
    }
}

fn sorted_output(p: &Presentation) -> Presentation {
    let relations = p
        .relations
        .iter()
        .map(|r| match &r.kind {
            RelKind::Comm(a, b) | RelKind::Eq(a, b) if plain(a) > plain(b) => {
                let kind = match r.kind {
                    RelKind::Comm(..) => RelKind::Comm(b.clone(), a.clone()),
                    _ => RelKind::Eq(b.clone(), a.clone()),
                };
                Relation { kind, source: r.source }
            }
            _ => r.clone(),
        })
        .collect();
    Presentation { relations, ..p.clone() }
}

/// Tries to rewrite `p` into a conjugation-free geometric presentation
/// within `budget` steps.
pub fn simplify_to_cf(p: &Presentation, budget: usize) -> CfVerdict {
    let mut run = Run { p: p.clone(), trace: Vec::new(), budget };
    let outcome = run.run();
    let steps = run.trace.len();
    let status = match outcome {
        Err(e) => CfStatus::Unresolved { reason: e.to_string(), remaining: run.p },
        Ok(()) if is_conjugation_free(&run.p) => CfStatus::ConjugationFree { presentation: sorted_output(&run.p) },
        Ok(()) => CfStatus::Unresolved { reason: "no applicable rewrite".into(), remaining: run.p },
    };
    CfVerdict { status, steps, trace: run.trace }
}
