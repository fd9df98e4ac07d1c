//! The graph of multiple points and the conjugation-free graph criteria.
//!
//! Vertices are the intersection points of multiplicity at least 3; along
//! every line, consecutive vertices are joined by an edge labeled by the line.

use std::collections::{BTreeMap, BTreeSet};

use serde::Serialize;

use crate::error::Error;
use crate::exact::geometry::{singular_points, Arrangement, Component, PointKind};
use crate::exact::scalar::ExactScalar;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Vertex {
    pub id: usize,
    pub components: Vec<Component>,
    pub multiplicity: usize,
    pub on_conic: bool,
    pub x: String,
    pub y: String,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Serialize)]
pub struct Edge {
    pub u: usize,
    pub v: usize,
    pub line: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct IncidenceGraph {
    pub vertices: Vec<Vertex>,
    pub edges: Vec<Edge>,
    /// Lines meeting the conic in at least one node (a point of multiplicity 2).
    pub lines_with_conic_node: Vec<usize>,
}

fn line_param(arr: &Arrangement, line: usize, x: &ExactScalar, y: &ExactScalar) -> ExactScalar {
    if arr.lines[line].is_vertical() {
        y.clone()
    } else {
        x.clone()
    }
}

/// Builds the graph from the singular points of `arr`.
pub fn build_graph(arr: &Arrangement) -> Result<IncidenceGraph, Error> {
    let pts = singular_points(arr)?;
    let mut vertices = Vec::new();
    let mut coords = Vec::new();
    let mut lines_with_conic_node = BTreeSet::new();
    for p in pts.iter().filter(|p| p.kind == PointKind::Intersection) {
        if p.multiplicity == 2 && p.on_conic() {
            lines_with_conic_node.extend(p.lines());
        }
        if p.multiplicity >= 3 {
            vertices.push(Vertex {
                id: vertices.len(),
                components: p.components.clone(),
                multiplicity: p.multiplicity,
                on_conic: p.on_conic(),
                x: p.x.to_string(),
                y: p.y.to_string(),
            });
            coords.push((p.x.clone(), p.y.clone()));
        }
    }
    let mut edges = Vec::new();
    for line in 0..arr.lines.len() {
        let mut on: Vec<(ExactScalar, usize)> = vertices
            .iter()
            .filter(|v| v.components.contains(&Component::Line(line)))
            .map(|v| (line_param(arr, line, &coords[v.id].0, &coords[v.id].1), v.id))
            .collect();
        on.sort();
        for w in on.windows(2) {
            edges.push(Edge { u: w[0].1, v: w[1].1, line });
        }
    }
    Ok(IncidenceGraph { vertices, edges, lines_with_conic_node: lines_with_conic_node.into_iter().collect() })
}

impl IncidenceGraph {
    pub fn vertex_ids(&self) -> Vec<usize> {
        self.vertices.iter().map(|v| v.id).collect()
    }

    pub fn degree(&self, id: usize) -> usize {
        self.edges.iter().map(|e| (e.u == id) as usize + (e.v == id) as usize).sum()
    }

    /// Connected components as sorted vertex id lists.
    pub fn components(&self) -> Vec<Vec<usize>> {
        let ids = self.vertex_ids();
        let mut comp: BTreeMap<usize, usize> = ids.iter().map(|&v| (v, v)).collect();
        fn root(c: &mut BTreeMap<usize, usize>, x: usize) -> usize {
            let mut r = x;
            while c[&r] != r {
                r = c[&r];
            }
            c.insert(x, r);
            r
        }
        for e in &self.edges {
            let (a, b) = (root(&mut comp, e.u), root(&mut comp, e.v));
            if a != b {
                comp.insert(a.max(b), a.min(b));
            }
        }
        let mut groups: BTreeMap<usize, Vec<usize>> = BTreeMap::new();
        for v in ids {
            let r = root(&mut comp, v);
            groups.entry(r).or_default().push(v);
        }
        groups.into_values().collect()
    }

    /// The induced subgraph on the vertices not in `drop`.
    pub fn without(&self, drop: &BTreeSet<usize>) -> IncidenceGraph {
        IncidenceGraph {
            vertices: self.vertices.iter().filter(|v| !drop.contains(&v.id)).cloned().collect(),
            edges: self.edges.iter().filter(|e| !drop.contains(&e.u) && !drop.contains(&e.v)).copied().collect(),
            lines_with_conic_node: self.lines_with_conic_node.clone(),
        }
    }

    fn restrict_to(&self, keep: &[usize]) -> IncidenceGraph {
        let drop: BTreeSet<usize> = self.vertex_ids().into_iter().filter(|v| !keep.contains(v)).collect();
        self.without(&drop)
    }

    fn vertex(&self, id: usize) -> &Vertex {
        self.vertices.iter().find(|v| v.id == id).expect("vertex id")
    }
}

/// First Betti number `E − V + #components`.
pub fn betti(g: &IncidenceGraph) -> i64 {
    g.edges.len() as i64 - g.vertices.len() as i64 + g.components().len() as i64
}

/// First Betti number when every line's vertices form one hyperedge instead
/// of a path of consecutive pairs.
pub fn betti_whole_segment(g: &IncidenceGraph) -> i64 {
    let mut per_line: BTreeMap<usize, BTreeSet<usize>> = BTreeMap::new();
    for e in &g.edges {
        per_line.entry(e.line).or_default().extend([e.u, e.v]);
    }
    let rank: i64 = per_line.values().map(|s| s.len() as i64 - 1).sum();
    rank - g.vertices.len() as i64 + g.components().len() as i64
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum TerminalRule {
    /// Every component has β ≤ 1 (line arrangements).
    BettiAtMostOne,
    BettiZero,
    /// β = 1 and a witness vertex of the cycle exists.
    BettiOneWithWitness,
    /// No vertex can be removed and the base case fails.
    Stuck,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CfgVerdict {
    pub is_cfg: bool,
    /// Vertex ids removed in each round.
    pub trace: Vec<Vec<usize>>,
    pub terminal: IncidenceGraph,
    pub rule: TerminalRule,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<usize>,
}

/// Replays a peel trace.
pub fn replay_trace(g: &IncidenceGraph, trace: &[Vec<usize>]) -> IncidenceGraph {
    trace.iter().fold(g.clone(), |h, x| h.without(&x.iter().copied().collect()))
}

/// Conjugation-free graph test for line arrangements.
pub fn cfg_check_line(g: &IncidenceGraph) -> CfgVerdict {
    let mut h = g.clone();
    let mut trace = Vec::new();
    loop {
        let all_small = h.components().iter().all(|c| betti(&h.restrict_to(c)) <= 1);
        if all_small {
            return CfgVerdict { is_cfg: true, trace, terminal: h, rule: TerminalRule::BettiAtMostOne, witness: None };
        }
        let x: Vec<usize> = h.vertex_ids().into_iter().filter(|&v| h.degree(v) <= 2).collect();
        if x.is_empty() {
            return CfgVerdict { is_cfg: false, trace, terminal: h, rule: TerminalRule::Stuck, witness: None };
        }
        h = h.without(&x.iter().copied().collect());
        trace.push(x);
    }
}

/// Conjugation-free graph test for arrangements with one conic: only
/// off-conic vertices of degree ≤ 2 are removed.
pub fn cfg_check_cl(g: &IncidenceGraph) -> CfgVerdict {
    let mut h = g.clone();
    let mut trace = Vec::new();
    loop {
        let b = betti(&h);
        if b == 0 {
            return CfgVerdict { is_cfg: true, trace, terminal: h, rule: TerminalRule::BettiZero, witness: None };
        }
        if b == 1 {
            if let Ok(Some(w)) = prscf_condition(&h) {
                return CfgVerdict {
                    is_cfg: true,
                    trace,
                    terminal: h,
                    rule: TerminalRule::BettiOneWithWitness,
                    witness: Some(w),
                };
            }
        }
        let x: Vec<usize> =
            h.vertex_ids().into_iter().filter(|&v| h.degree(v) <= 2 && !h.vertex(v).on_conic).collect();
        if x.is_empty() {
            return CfgVerdict { is_cfg: false, trace, terminal: h, rule: TerminalRule::Stuck, witness: None };
        }
        h = h.without(&x.iter().copied().collect());
        trace.push(x);
    }
}

/// The edges of the unique cycle of a graph with β = 1.
pub fn cycle_edges(g: &IncidenceGraph) -> Vec<Edge> {
    // strip leaves until only the cycle remains
    let mut h = g.clone();
    loop {
        let leaves: BTreeSet<usize> = h.vertex_ids().into_iter().filter(|&v| h.degree(v) <= 1).collect();
        if leaves.is_empty() {
            return h.edges;
        }
        h = h.without(&leaves);
    }
}

/// For β = 1: an off-conic cycle vertex whose two cycle edges lie on two
/// different lines that both meet the conic in a node. Returns the smallest
/// such vertex id.
pub fn prscf_condition(g: &IncidenceGraph) -> Result<Option<usize>, Error> {
    let b = betti(g);
    if b != 1 {
        return Err(Error::NotOneCycle(b));
    }
    let cyc = cycle_edges(g);
    let mut ids: Vec<usize> = cyc.iter().flat_map(|e| [e.u, e.v]).collect();
    ids.sort_unstable();
    ids.dedup();
    Ok(ids.into_iter().find(|&y| {
        if g.vertex(y).on_conic {
            return false;
        }
        let lines: Vec<usize> = cyc.iter().filter(|e| e.u == y || e.v == y).map(|e| e.line).collect();
        lines.len() == 2
            && lines[0] != lines[1]
            && lines.iter().all(|l| g.lines_with_conic_node.contains(l))
    }))
}

/// DOT text with deterministic ordering; on-conic vertices are double circles.
pub fn emit_dot(g: &IncidenceGraph) -> String {
    let mut out = String::from("graph G {\n");
    for v in &g.vertices {
        let comps: Vec<String> = v.components.iter().map(|c| c.to_string()).collect();
        out.push_str(&format!("  v{} [label=\"{}\"", v.id, comps.join(" ")));
        if v.on_conic {
            out.push_str(", peripheries=2");
        }
        out.push_str("];\n");
    }
    let mut edges = g.edges.clone();
    edges.sort();
    for e in edges {
        out.push_str(&format!("  v{} -- v{} [label=\"L{}\"];\n", e.u, e.v, e.line));
    }
    out.push_str("}\n");
    out
}
