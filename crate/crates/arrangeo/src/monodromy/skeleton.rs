//! Skeletons: monotone paths through the fiber points, and the pull-down
//! rule converting them into free-group words.
//!
//! A skeleton is stored as its endpoints together with, for every other
//! position between the first and last endpoint, whether the path passes
//! above or below that point. The base point of the fiber lies far below.

use std::fmt;

use serde::Serialize;

use crate::error::Error;
use crate::word::FreeWord;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Passage {
    Above,
    Below,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Skeleton {
    /// Fiber positions (1-based), strictly increasing, at least two.
    pub endpoints: Vec<usize>,
    /// `(position, passage)` for every non-endpoint strictly between the
    /// first and last endpoint, in increasing position.
    pub passages: Vec<(usize, Passage)>,
}

impl Skeleton {
    /// Straight segments through the consecutive block `a..=b`.
    pub fn straight(a: usize, b: usize) -> Skeleton {
        Skeleton { endpoints: (a..=b).collect(), passages: Vec::new() }
    }

    /// Builds and checks a skeleton. `above` lists the passed positions the
    /// path goes over; every other passed position is passed below.
    pub fn new(endpoints: Vec<usize>, above: &[usize]) -> Result<Skeleton, Error> {
        if endpoints.len() < 2 || endpoints.windows(2).any(|w| w[0] >= w[1]) || endpoints[0] == 0 {
            return Err(Error::MalformedSkeleton("endpoints must be at least two increasing positions".into()));
        }
        let (lo, hi) = (endpoints[0], *endpoints.last().unwrap());
        if let Some(p) = above.iter().find(|p| **p <= lo || **p >= hi || endpoints.contains(p)) {
            return Err(Error::MalformedSkeleton(format!("position {p} is not passed by the path")));
        }
        let passages = (lo + 1..hi)
            .filter(|p| !endpoints.contains(p))
            .map(|p| (p, if above.contains(&p) { Passage::Above } else { Passage::Below }))
            .collect();
        Ok(Skeleton { endpoints, passages })
    }

    fn role(&self, p: usize) -> Role {
        if self.endpoints.contains(&p) {
            Role::End
        } else if let Some((_, s)) = self.passages.iter().find(|(q, _)| *q == p) {
            Role::Pass(*s)
        } else {
            Role::Out
        }
    }

    fn first(&self) -> usize {
        self.endpoints[0]
    }

    fn last(&self) -> usize {
        *self.endpoints.last().unwrap()
    }

    /// Default split point: the gap just after position `⌊(first+last)/2⌋`.
    pub fn default_split(&self) -> usize {
        (self.first() + self.last()) / 2
    }

    /// Image under the half-twist of a disk around positions `a..=b`:
    /// counterclockwise when `positive`, clockwise otherwise.
    ///
    /// The skeleton is tracked through the boundary curve of its regular
    /// neighbourhood, written as the sequence of crossings with the upward
    /// rays above the fiber points. Errors with [`Error::MalformedSkeleton`]
    /// when the image is not the neighbourhood of a monotone skeleton.
    pub fn half_twist(&self, a: usize, b: usize, positive: bool) -> Result<Skeleton, Error> {
        if a == 0 || a >= b {
            return Err(Error::MalformedSkeleton(format!("bad twist block [{a},{b}]")));
        }
        let leaves = || Error::MalformedSkeleton(format!("half-twist on [{a},{b}] leaves the monotone model"));
        let mirror = |p: usize| if (a..=b).contains(&p) { a + b - p } else { p };
        let mut endpoints: Vec<usize> = self.endpoints.iter().map(|&p| mirror(p)).collect();
        endpoints.sort_unstable();
        let image = cyclic_letters(&twist_moves(&self.boundary(), a, b, positive));
        let above: Vec<usize> = image.iter().filter(|m| !m.east).map(|m| m.p).collect();
        let candidate = Skeleton::new(endpoints, &above).map_err(|_| leaves())?;
        if is_rotation(&cyclic_letters(&candidate.boundary()), &image) {
            Ok(candidate)
        } else {
            Err(leaves())
        }
    }

    /// Boundary of the neighbourhood: eastwards along the top, back along
    /// the bottom.
    fn boundary(&self) -> Vec<Move> {
        let (lo, hi) = (self.first(), self.last());
        let top = (lo..=hi).map(|p| Move { p, over: self.role(p) != Role::Pass(Passage::Below), east: true });
        let bottom = (lo..=hi).rev().map(|p| Move { p, over: self.role(p) == Role::Pass(Passage::Above), east: false });
        top.chain(bottom).collect()
    }
}

/// A step of a curve near the real axis from one gap between fiber points
/// to the next, passing over or under point `p`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
struct Move {
    p: usize,
    over: bool,
    east: bool,
}

impl Move {
    fn gap_before(self) -> usize {
        if self.east { self.p - 1 } else { self.p }
    }

    fn gap_after(self) -> usize {
        if self.east { self.p } else { self.p - 1 }
    }
}

/// Image of a closed curve under the half-twist of the disk around points
/// `a..=b`. Inside the disk the curve is rotated by 180 degrees; where it
/// crosses the boundary a collar runs around half of the disk.
fn twist_moves(moves: &[Move], a: usize, b: usize, positive: bool) -> Vec<Move> {
    let inside = |m: &Move| (a..=b).contains(&m.p);
    let rotate = |m: &Move| Move { p: a + b - m.p, over: !m.over, east: !m.east };
    let Some(start) = moves.iter().position(|m| !inside(m)) else {
        return moves.iter().map(rotate).collect();
    };
    let mut cyc: Vec<Move> = moves[start..].to_vec();
    cyc.extend_from_slice(&moves[..start]);
    // counterclockwise, the collar at the left boundary runs below the disk
    // and the one at the right boundary above it
    let collar = |gap: usize, entering: bool| -> Vec<Move> {
        let left = gap + 1 == a;
        let over = left != positive;
        let east = left == entering;
        let ps: Vec<usize> = if east { (a..=b).collect() } else { (a..=b).rev().collect() };
        ps.into_iter().map(|p| Move { p, over, east }).collect()
    };
    let mut out = Vec::new();
    let mut i = 0;
    while i < cyc.len() {
        if !inside(&cyc[i]) {
            out.push(cyc[i]);
            i += 1;
            continue;
        }
        let j = (i..cyc.len()).find(|&j| !inside(&cyc[j])).unwrap_or(cyc.len());
        out.extend(collar(cyc[i].gap_before(), true));
        out.extend(cyc[i..j].iter().map(rotate));
        out.extend(collar(cyc[j - 1].gap_after(), false));
        i = j;
    }
    out
}

/// Upward-ray crossings of a closed curve, cyclically reduced.
fn cyclic_letters(moves: &[Move]) -> Vec<Move> {
    let mut out: Vec<Move> = Vec::new();
    for m in moves.iter().filter(|m| m.over) {
        match out.last() {
            Some(l) if l.p == m.p && l.east != m.east => {
                out.pop();
            }
            _ => out.push(*m),
        }
    }
    while out.len() >= 2 && out[0].p == out[out.len() - 1].p && out[0].east != out[out.len() - 1].east {
        out.pop();
        out.remove(0);
    }
    out
}

fn is_rotation(u: &[Move], v: &[Move]) -> bool {
    u.len() == v.len() && (u.is_empty() || (0..v.len()).any(|k| v[k..].iter().chain(&v[..k]).eq(u.iter())))
}

impl fmt::Display for Skeleton {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let (lo, hi) = (self.first(), self.last());
        let parts: Vec<String> = (lo..=hi)
            .map(|p| match self.role(p) {
                Role::End => format!("[{p}]"),
                Role::Pass(Passage::Above) => format!("^{p}"),
                Role::Pass(Passage::Below) => format!("_{p}"),
                Role::Out => unreachable!(),
            })
            .collect();
        write!(f, "{}", parts.join(" "))
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum Role {
    Out,
    End,
    Pass(Passage),
}

/// Pull-down rule with the default split point.
pub fn skeleton_to_words(sk: &Skeleton, n: usize) -> Result<Vec<FreeWord>, Error> {
    skeleton_to_words_split(sk, n, sk.default_split())
}

/// Pull-down rule: the path is split in the gap between positions `split`
/// and `split + 1`; walking from there to an endpoint, each point passed
/// from above conjugates the endpoint's generator (Γᵢ·Γᵢ⁻¹ walking left,
/// Γᵢ⁻¹·Γᵢ walking right, outermost first). Intermediate endpoints are
/// passed below.
pub fn skeleton_to_words_split(sk: &Skeleton, n: usize, split: usize) -> Result<Vec<FreeWord>, Error> {
    if sk.last() > n {
        return Err(Error::MalformedSkeleton(format!("position {} exceeds the {n}-point fiber", sk.last())));
    }
    if split < sk.first() || split >= sk.last() {
        return Err(Error::MalformedSkeleton(format!("split gap {split} is outside the path")));
    }
    let above = |p: usize| sk.role(p) == Role::Pass(Passage::Above);
    let words = sk
        .endpoints
        .iter()
        .map(|&e| {
            let mut conj = FreeWord::identity();
            if e <= split {
                for p in (e + 1..=split).rev() {
                    if above(p) {
                        conj = conj.mul(&FreeWord::gen(p));
                    }
                }
            } else {
                for p in split + 1..e {
                    if above(p) {
                        conj = conj.mul(&FreeWord::gen(p).inverse());
                    }
                }
            }
            FreeWord::gen(e).conjugate_by(&conj)
        })
        .collect();
    Ok(words)
}
