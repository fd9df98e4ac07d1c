//! Fixtures shared by the integration tests.
#![allow(dead_code)]

use arrangeo::exact::geometry::{singular_points, validate, Arrangement, Conic, Line};
use arrangeo::exact::scalar::{q, qi};
use arrangeo::graph::{betti, build_graph};
use arrangeo::structure::has_parallel_lines;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn line(m: (i64, i64), k: (i64, i64)) -> Line {
    Line::slope_intercept(q(m.0, m.1), q(k.0, k.1))
}

fn random_line(rng: &mut ChaCha8Rng) -> Line {
    line((rng.gen_range(-30..30), rng.gen_range(1..7)), (rng.gen_range(-30..30), rng.gen_range(1..5)))
}

fn line_through(rng: &mut ChaCha8Rng, px: i64, py: i64) -> Line {
    let m = q(rng.gen_range(-6..=6), rng.gen_range(1..=3));
    Line::slope_intercept(m.clone(), qi(py) - m * qi(px))
}

pub fn max_multiplicity(arr: &Arrangement) -> usize {
    singular_points(arr).unwrap().iter().map(|p| p.multiplicity).max().unwrap_or(0)
}

fn admissible(arr: &Arrangement) -> bool {
    validate(arr).passed() && !has_parallel_lines(arr)
}

/// Random line arrangement with `3..=7` lines and only double points.
pub fn nodes_only(rng: &mut ChaCha8Rng) -> Arrangement {
    loop {
        let k = rng.gen_range(3..=7);
        let arr = Arrangement::lines_only((0..k).map(|_| random_line(rng)).collect());
        if admissible(&arr) && max_multiplicity(&arr) == 2 {
            return arr;
        }
    }
}

/// Random line arrangement with at most 7 lines, at least one multiple
/// point, and a forest as graph.
pub fn forest_lines(rng: &mut ChaCha8Rng) -> Arrangement {
    loop {
        let hubs = [(0, 0), (3, 1), (-2, 4)];
        let mut lines = Vec::new();
        for &(x, y) in &hubs[..rng.gen_range(1..=3)] {
            for _ in 0..rng.gen_range(2..=3) {
                lines.push(line_through(rng, x, y));
            }
        }
        for _ in 0..rng.gen_range(0..=2) {
            lines.push(random_line(rng));
        }
        lines.truncate(7);
        let arr = Arrangement::lines_only(lines);
        if admissible(&arr) && max_multiplicity(&arr) >= 3 && betti(&build_graph(&arr).unwrap()) == 0 {
            return arr;
        }
    }
}

/// Random arrangement of up to 6 lines, possibly with the circle of radius
/// 5, whose graph has β ≤ 1.
pub fn beta_at_most_one(rng: &mut ChaCha8Rng) -> Arrangement {
    loop {
        let mut lines = Vec::new();
        for _ in 0..rng.gen_range(2..=3) {
            lines.push(line_through(rng, 0, 0));
        }
        for _ in 0..rng.gen_range(1..=3) {
            lines.push(random_line(rng));
        }
        let conics = if rng.gen_bool(0.5) { vec![circle(25)] } else { vec![] };
        let arr = Arrangement::new(lines, conics);
        if admissible(&arr) && betti(&build_graph(&arr).unwrap()) <= 1 {
            return arr;
        }
    }
}

pub fn circle(r2: i64) -> Conic {
    Conic::from_ints([1, 0, 1, 0, 0, -r2])
}

/// Four lines with three nodes and one triple point.
pub fn example_skel() -> Arrangement {
    Arrangement::lines_only(vec![
        line((0, 1), (0, 1)),
        line((1, 1), (0, 1)),
        line((-1, 1), (0, 1)),
        line((-10, 1), (30, 1)),
    ])
}

/// Two triple points P = (0,0), Q = (4,0) on a common line, a third point
/// R = (2,2) where two lines meet the conic; the graph is the triangle PQR.
pub fn graph_com2() -> Arrangement {
    Arrangement::new(
        vec![
            line((0, 1), (0, 1)),
            line((1, 1), (0, 1)),
            line((-1, 2), (0, 1)),
            line((-1, 1), (4, 1)),
            line((1, 3), (-4, 3)),
        ],
        vec![Conic::from_ints([1, -1, 1, -4, 1, 2])],
    )
}

/// Three generic lines and a circle through their three intersection points.
pub fn pi1_ab_a() -> Arrangement {
    let pts = [(3, 4), (-4, 3), (0, -5)];
    let mut lines = Vec::new();
    for i in 0..3 {
        for j in i + 1..3 {
            let ((x1, y1), (x2, y2)) = (pts[i], pts[j]);
            lines.push(Line::from_ints(y2 - y1, x1 - x2, -((y2 - y1) * x1 + (x1 - x2) * y1)));
        }
    }
    Arrangement::new(lines, vec![circle(25)])
}

/// The six lines through four points in general position.
pub fn ceva() -> Arrangement {
    let pts = [(0, 0), (4, 1), (1, 3), (3, 5)];
    let mut lines = Vec::new();
    for i in 0..4 {
        for j in i + 1..4 {
            let ((x1, y1), (x2, y2)) = (pts[i], pts[j]);
            lines.push(Line::from_ints(y2 - y1, x1 - x2, -((y2 - y1) * x1 + (x1 - x2) * y1)));
        }
    }
    Arrangement::lines_only(lines)
}

pub const TANGENT: &str = r#"{"lines":[{"a":0,"b":1,"c":-1}],"conics":[{"coeffs":[1,0,1,0,0,-1]}]}"#;
pub const PARABOLA: &str = r#"{"lines":[{"a":0,"b":1,"c":-1}],"conics":[{"coeffs":[1,0,0,0,-1,0]}]}"#;
pub const COMPLEX: &str = r#"{"lines":[{"a":0,"b":1,"c":-2}],"conics":[{"coeffs":[1,0,1,0,0,-1]}]}"#;
