//! Moving the basepoint past one singular value.
//!
//! Moving left past a block `[a, b]` substitutes every Γᵢ by its image under
//! the inverse half-twist on `[a, b]`; moving right uses the half-twist
//! itself. Line crossings of the conic's complex pair between two events are
//! passed together with the event they precede.

use serde::{Deserialize, Serialize};

use super::{Presentation, RelKind};
use crate::error::Error;
use crate::monodromy::{ArtinAutomorphism, EventKind, Monodromy};
use crate::word::FreeWord;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Direction {
    /// Right to left: the basepoint passes from `x_j + ε` to `x_j − ε`.
    Left,
    Right,
}

/// A presentation together with the place of its basepoint: `position = p`
/// means the basepoint lies just left of event `p` (0 is the default basepoint).
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct BasedPresentation {
    pub presentation: Presentation,
    pub position: usize,
}

impl BasedPresentation {
    pub fn at_default(presentation: Presentation) -> BasedPresentation {
        BasedPresentation { presentation, position: 0 }
    }
}

fn has_plain_comm(p: &Presentation, a: usize, b: usize) -> bool {
    let (x, y) = (FreeWord::gen(a), FreeWord::gen(b));
    p.relations.iter().any(|r| match &r.kind {
        RelKind::Comm(u, v) => (*u == x && *v == y) || (*u == y && *v == x),
        _ => false,
    })
}

/// The substitution used when crossing event `j` in direction `dir`.
pub fn crossing_substitution(m: &Monodromy, j: usize, dir: Direction) -> ArtinAutomorphism {
    let e = &m.events[j - 1];
    let mut braid: Vec<i32> = m.crossings_before[j - 1].iter().flat_map(|&c| m.crossings[c].braid.clone()).collect();
    braid.extend_from_slice(&e.braid);
    let a = ArtinAutomorphism::from_braid(m.n, &braid);
    match dir {
        Direction::Left => a.inverse(),
        Direction::Right => a,
    }
}

/// Moves the basepoint past event `j`, rewriting every relation.
pub fn basepoint_move(bp: &BasedPresentation, m: &Monodromy, j: usize, dir: Direction) -> Result<BasedPresentation, Error> {
    if j == 0 || j > m.events.len() {
        return Err(Error::NotAdjacent(j));
    }
    let position = match dir {
        Direction::Left if bp.position + 1 == j => j,
        Direction::Right if bp.position == j => j - 1,
        _ => return Err(Error::NotAdjacent(j)),
    };
    let e = &m.events[j - 1];
    let p = &bp.presentation;
    let (a, b) = e.lefschetz;
    let images: Vec<FreeWord> = if e.kind == EventKind::Node
        && m.crossings_before[j - 1].is_empty()
        && has_plain_comm(p, a, b)
    {
        // the commutation turns the twist into a transposition
        (1..=m.n).map(|i| FreeWord::gen(if i == a { b } else if i == b { a } else { i })).collect()
    } else {
        crossing_substitution(m, j, dir).images().to_vec()
    };
    let relations = p.relations.iter().map(|r| r.map_words(|w| w.substitute(&images))).collect();
    Ok(BasedPresentation { presentation: Presentation { relations, ..p.clone() }, position })
}
