//! Braid monodromy of the projection `(x, y) ↦ x` and transport of
//! Lefschetz pairs to the basepoint fiber.
//!
//! The basepoint `u` lies to the right of every singular value. Walking
//! left from `u`, the path passes below each singular value; the fiber is
//! numbered bottom to top. While the conic's fiber is a complex pair
//! `a ± bi`, the pair occupies two consecutive slots (lower imaginary part
//! first) placed by the real part `a`.

pub mod artin;
pub mod skeleton;

use std::cmp::Ordering;

use num_traits::One;
use serde::Serialize;

use crate::error::Error;
use crate::exact::geometry::{
    center_crossings, is_generic, singular_points, Arrangement, Component, PointKind, PointXY,
};
use crate::exact::scalar::{ExactScalar, Q};
use crate::word::FreeWord;
pub use artin::{garside_word, ArtinAutomorphism};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum EventKind {
    Node,
    Multiple(usize),
    Branch,
}

/// One singular value `x_j` (numbered from the basepoint, starting at 1).
#[derive(Clone, Debug)]
pub struct SingularEvent {
    pub index: usize,
    pub x: ExactScalar,
    pub kind: EventKind,
    /// Block of fiber positions colliding at the event, read at `x_j + ε`.
    pub lefschetz: (usize, usize),
    /// Index into [`Monodromy::points`].
    pub point: usize,
    /// Braid of the passage below `x_j`, in elementary twists.
    pub braid: Vec<i32>,
}

/// A line crossing the real part of the conic's complex fiber pair.
#[derive(Clone, Debug, Serialize)]
pub struct Crossing {
    #[serde(serialize_with = "ser_q")]
    pub x: Q,
    pub line: usize,
    /// Slot of the line just right of the crossing.
    pub from: usize,
    /// Slot of the line just left of the crossing.
    pub to: usize,
    pub braid: Vec<i32>,
}

fn ser_q<S: serde::Serializer>(q: &Q, s: S) -> Result<S::Ok, S::Error> {
    s.serialize_str(&crate::exact::scalar::fmt_q(q))
}

/// How the fiber pair of the conic is carried past a line crossing its real part.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum CrossingRule {
    /// The line passes between the two complex points; the braid is
    /// recorded (one positive and one negative elementary twist).
    Braided,
    /// Slots are relabeled and the generators are left unchanged.
    Transparent,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Strand {
    Line(usize),
    Conic(usize),
}

impl Strand {
    pub fn component(self) -> Component {
        match self {
            Strand::Line(i) => Component::Line(i),
            Strand::Conic(i) => Component::Conic(i),
        }
    }
}

/// Strand order of a fiber, bottom to top.
#[derive(Clone, Debug)]
pub struct FiberModel {
    pub slots: Vec<Strand>,
    /// Whether the conic's two slots currently hold a complex pair.
    pub complex_pair: bool,
}

impl FiberModel {
    pub fn component_map(&self) -> Vec<Component> {
        self.slots.iter().map(|s| s.component()).collect()
    }

    fn position_of_line(&self, i: usize) -> usize {
        self.slots.iter().position(|s| *s == Strand::Line(i)).expect("line in fiber")
    }

    fn conic_slots(&self) -> (usize, usize) {
        let v: Vec<usize> =
            self.slots.iter().enumerate().filter(|(_, s)| matches!(s, Strand::Conic(_))).map(|(k, _)| k).collect();
        (v[0], v[1])
    }
}

#[derive(Clone, Debug)]
enum Station {
    Event(usize),
    Crossing(usize, Q),
}

/// Sorted events, crossings and the fiber at the basepoint.
#[derive(Clone, Debug)]
pub struct Monodromy {
    pub n: usize,
    /// The basepoint abscissa.
    pub u: Q,
    pub points: Vec<PointXY>,
    pub events: Vec<SingularEvent>,
    pub crossings: Vec<Crossing>,
    /// For every event, the crossings lying between it and the previous event.
    pub crossings_before: Vec<Vec<usize>>,
    pub fiber: FiberModel,
    pub rule: CrossingRule,
}

impl Monodromy {
    /// Braid of the whole path from `u` to just right of event `j` (1-based).
    pub fn braid_to(&self, j: usize) -> Vec<i32> {
        let mut w = Vec::new();
        for e in &self.events[..j - 1] {
            for &c in &self.crossings_before[e.index - 1] {
                w.extend_from_slice(&self.crossings[c].braid);
            }
            w.extend_from_slice(&e.braid);
        }
        for &c in &self.crossings_before[j - 1] {
            w.extend_from_slice(&self.crossings[c].braid);
        }
        w
    }

    /// The composed Lefschetz diffeomorphism from `x_j + ε` to `u`.
    pub fn composed_delta(&self, j: usize) -> ArtinAutomorphism {
        ArtinAutomorphism::from_braid(self.n, &self.braid_to(j))
    }

    /// Words `a₁, …, a_k` of event `j`, bottom to top.
    pub fn transport(&self, j: usize) -> Vec<FreeWord> {
        let e = &self.events[j - 1];
        let phi = self.composed_delta(j);
        (e.lefschetz.0..=e.lefschetz.1).map(|i| phi.image(i).clone()).collect()
    }

    pub fn event_point(&self, j: usize) -> &PointXY {
        &self.points[self.events[j - 1].point]
    }
}

/// δ of an event as an automorphism of the free group on the fiber generators.
pub fn delta_of(e: &SingularEvent, n: usize) -> ArtinAutomorphism {
    ArtinAutomorphism::from_braid(n, &e.braid)
}

/// Lefschetz pair: the consecutive block of `positions` (0-based input, 1-based output).
pub fn lefschetz_pair(mut positions: Vec<usize>) -> Result<(usize, usize), Error> {
    positions.sort_unstable();
    let (a, b) = (positions[0], *positions.last().unwrap());
    if b - a + 1 != positions.len() {
        return Err(Error::NonGeneric("colliding strands are not consecutive".into()));
    }
    Ok((a + 1, b + 1))
}

fn y_key_at(arr: &Arrangement, strand_line: usize, x: &Q) -> ExactScalar {
    arr.lines[strand_line].y_at_q(x).expect("non-vertical line").into()
}

/// Orders events and builds the basepoint fiber. Uses the braided crossing rule.
pub fn sort_events(arr: &Arrangement) -> Result<Monodromy, Error> {
    sort_events_with(arr, CrossingRule::Braided)
}

pub fn sort_events_with(arr: &Arrangement, rule: CrossingRule) -> Result<Monodromy, Error> {
    if arr.conics.len() > 1 {
        return Err(Error::NotApplicable("monodromy supports at most one conic".into()));
    }
    if !is_generic(arr) {
        return Err(Error::NonGeneric("singular abscissae are not distinct".into()));
    }
    let points = singular_points(arr)?;
    let crossings_raw: Vec<(usize, Q)> =
        arr.conics.first().map(|c| center_crossings(arr, c)).unwrap_or_default();

    let mut stations: Vec<(ExactScalar, Station)> = points
        .iter()
        .enumerate()
        .map(|(k, p)| (p.x.clone(), Station::Event(k)))
        .chain(crossings_raw.iter().map(|(l, x)| (ExactScalar::rational(x.clone()), Station::Crossing(*l, x.clone()))))
        .collect();
    stations.sort_by(|a, b| b.0.cmp(&a.0));

    let u = match stations.first() {
        None => Q::from_integer(0.into()),
        Some((x, _)) => {
            let mut u = Q::from_integer(num_bigint::BigInt::from(x.to_f64().ceil() as i64)) + Q::one();
            while ExactScalar::rational(u.clone()) <= *x {
                u += Q::one();
            }
            u
        }
    };

    // fiber at u
    let mut keyed: Vec<(ExactScalar, u8, Strand)> = Vec::new();
    for i in 0..arr.lines.len() {
        keyed.push((y_key_at(arr, i, &u), 0, Strand::Line(i)));
    }
    let mut complex = false;
    if let Some(c) = arr.conics.first() {
        match c.ys_at(&u) {
            Some((lo, hi)) => {
                keyed.push((lo, 0, Strand::Conic(0)));
                keyed.push((hi, 0, Strand::Conic(0)));
            }
            None => {
                complex = true;
                let centre = c.center_at(&ExactScalar::rational(u.clone()));
                keyed.push((centre.clone(), 0, Strand::Conic(0)));
                keyed.push((centre, 1, Strand::Conic(0)));
            }
        }
    }
    keyed.sort_by(|a, b| a.0.cmp(&b.0).then(a.1.cmp(&b.1)));
    for w in keyed.windows(2) {
        if w[0].0 == w[1].0 && w[0].2 != w[1].2 {
            return Err(Error::NonGeneric("strands meet at the basepoint fiber".into()));
        }
    }
    let fiber = FiberModel { slots: keyed.into_iter().map(|k| k.2).collect(), complex_pair: complex };
    let n = fiber.slots.len();

    let mut state = fiber.clone();
    let mut events = Vec::new();
    let mut crossings = Vec::new();
    let mut pending: Vec<usize> = Vec::new();
    let mut crossings_before = Vec::new();
    for (_, st) in stations {
        match st {
            Station::Crossing(line, x) => {
                if !state.complex_pair {
                    return Err(Error::NonGeneric("crossing outside the complex region".into()));
                }
                let l = state.position_of_line(line);
                let (c0, c1) = state.conic_slots();
                let (braid, to) = if l + 1 == c0 {
                    // upward past the lower point (positive), then the upper point (negative)
                    state.slots[l..=c1].rotate_left(1);
                    (vec![(l + 1) as i32, -((l + 2) as i32)], c1)
                } else if l == c1 + 1 {
                    state.slots[c0..=l].rotate_right(1);
                    (vec![(c1 + 1) as i32, -((c0 + 1) as i32)], c0)
                } else {
                    return Err(Error::NonGeneric("crossing line is not next to the conic pair".into()));
                };
                let braid = match rule {
                    CrossingRule::Braided => braid,
                    CrossingRule::Transparent => Vec::new(),
                };
                pending.push(crossings.len());
                crossings.push(Crossing { x, line, from: l + 1, to: to + 1, braid });
            }
            Station::Event(k) => {
                let p = &points[k];
                let (kind, pair, braid) = match p.kind {
                    PointKind::Branch => {
                        let (c0, c1) = state.conic_slots();
                        if c1 != c0 + 1 {
                            return Err(Error::NonGeneric("conic slots not adjacent at a branch point".into()));
                        }
                        state.complex_pair = !state.complex_pair;
                        (EventKind::Branch, (c0 + 1, c1 + 1), Vec::new())
                    }
                    PointKind::Intersection => {
                        if state.complex_pair && p.on_conic() {
                            return Err(Error::NonGeneric("conic point inside the complex region".into()));
                        }
                        let mut pos = Vec::new();
                        for comp in &p.components {
                            match comp {
                                Component::Line(i) => pos.push(state.position_of_line(*i)),
                                Component::Conic(_) => {
                                    let c = &arr.conics[0];
                                    let (c0, c1) = state.conic_slots();
                                    let centre = c.center_at(&p.x);
                                    pos.push(if p.y.cmp(&centre) == Ordering::Greater { c1 } else { c0 });
                                }
                            }
                        }
                        let (a, b) = lefschetz_pair(pos)?;
                        state.slots[a - 1..b].reverse();
                        let kind = if b - a + 1 == 2 { EventKind::Node } else { EventKind::Multiple(b - a + 1) };
                        (kind, (a, b), garside_word(a, b))
                    }
                };
                events.push(SingularEvent {
                    index: events.len() + 1,
                    x: p.x.clone(),
                    kind,
                    lefschetz: pair,
                    point: k,
                    braid,
                });
                crossings_before.push(std::mem::take(&mut pending));
            }
        }
    }
    Ok(Monodromy { n, u, points, events, crossings, crossings_before, fiber, rule })
}
