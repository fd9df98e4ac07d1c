//! Closed-form decompositions `Z^r ⊕ F_{n₁} ⊕ …` and the conjugation-free
//! prediction cascade.

use serde::Serialize;

use crate::error::Error;
use crate::exact::geometry::{
    conic_conic_points, conic_line, line_line, singular_points, validate, validate_with, Arrangement, Component,
    ConicLine, PointKind,
};
use crate::exact::scalar::ExactScalar;
use crate::graph::{betti, build_graph, cfg_check_cl, cfg_check_line, prscf_condition, IncidenceGraph};

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct GroupStructure {
    pub r: usize,
    pub free_ranks: Vec<usize>,
    pub theorem: String,
}

impl GroupStructure {
    pub fn new(r: usize, mut free_ranks: Vec<usize>, theorem: &str) -> GroupStructure {
        free_ranks.sort_unstable();
        GroupStructure { r, free_ranks, theorem: theorem.to_string() }
    }

    /// Folds every `F₁ = Z` into the free abelian part.
    pub fn normalized(&self) -> GroupStructure {
        let ones = self.free_ranks.iter().filter(|n| **n == 1).count();
        let rest = self.free_ranks.iter().copied().filter(|n| *n > 1).collect();
        GroupStructure::new(self.r + ones, rest, &self.theorem)
    }

    /// `Z ⊕ self`.
    pub fn plus_z(&self, theorem: &str) -> GroupStructure {
        GroupStructure::new(self.r + 1, self.free_ranks.clone(), theorem)
    }
}

impl std::fmt::Display for GroupStructure {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let mut parts = Vec::new();
        if self.r > 0 || self.free_ranks.is_empty() {
            parts.push(format!("Z^{}", self.r));
        }
        parts.extend(self.free_ranks.iter().map(|n| format!("F{n}")));
        write!(f, "{}", parts.join(" + "))
    }
}

/// Multiplicities of the multiple points (multiplicity ≥ 3), split into
/// points on a conic and points off every conic.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct MultiplePoints {
    pub on_conic: Vec<usize>,
    pub off_conic: Vec<usize>,
}

pub fn multiple_points(arr: &Arrangement) -> Result<MultiplePoints, Error> {
    let mut mp = MultiplePoints::default();
    for p in singular_points(arr)? {
        if p.kind == PointKind::Intersection && p.multiplicity >= 3 {
            if p.on_conic() {
                mp.on_conic.push(p.multiplicity);
            } else {
                mp.off_conic.push(p.multiplicity);
            }
        }
    }
    Ok(mp)
}

/// `true` when two lines of `arr` are parallel.
pub fn has_parallel_lines(arr: &Arrangement) -> bool {
    (0..arr.lines.len()).any(|i| {
        (i + 1..arr.lines.len()).any(|j| matches!(line_line(&arr.lines[i], &arr.lines[j]), Ok(None)))
    })
}

fn na(msg: &str) -> Error {
    Error::NotApplicable(msg.to_string())
}

fn graph_of(arr: &Arrangement) -> Result<IncidenceGraph, Error> {
    validate(arr).into_result()?;
    build_graph(arr)
}

/// Decomposition of a line arrangement whose graph is a forest:
/// `r = k + p − Σ m(aᵢ)` and one `F_{m−1}` per multiple point.
pub fn fan_structure(arr: &Arrangement) -> Result<GroupStructure, Error> {
    if !arr.conics.is_empty() {
        return Err(na("arrangement contains a conic"));
    }
    if has_parallel_lines(arr) {
        return Err(na("arrangement has parallel lines"));
    }
    let g = graph_of(arr)?;
    if betti(&g) > 0 {
        return Err(na("graph has a cycle"));
    }
    let mp = multiple_points(arr)?;
    let k = arr.lines.len() as i64;
    let sum: i64 = mp.off_conic.iter().map(|m| *m as i64).sum();
    let r = k + mp.off_conic.len() as i64 - sum;
    let ranks: Vec<usize> = mp.off_conic.iter().map(|m| m - 1).collect();
    assert_eq!(r + ranks.iter().sum::<usize>() as i64, k, "line rank identity");
    Ok(GroupStructure::new(r as usize, ranks, "fan-decomposition"))
}

/// Decomposition of a one-conic arrangement whose graph is a forest:
/// `r = k + 2p + q + 1 − Σ m(aᵢ) − Σ m(bᵢ)` with `F_{m(a)−2}` per on-conic and
/// `F_{m(b)−1}` per off-conic multiple point. `F₁` factors are kept.
pub fn cl_structure(arr: &Arrangement) -> Result<GroupStructure, Error> {
    if arr.conics.len() != 1 {
        return Err(na("needs exactly one conic"));
    }
    if has_parallel_lines(arr) {
        return Err(na("arrangement has parallel lines"));
    }
    let g = graph_of(arr)?;
    if betti(&g) > 0 {
        return Err(na("graph has a cycle"));
    }
    let mp = multiple_points(arr)?;
    let k = arr.lines.len() as i64;
    let (p, q) = (mp.on_conic.len() as i64, mp.off_conic.len() as i64);
    let sa: i64 = mp.on_conic.iter().map(|m| *m as i64).sum();
    let sb: i64 = mp.off_conic.iter().map(|m| *m as i64).sum();
    let r = k + 2 * p + q + 1 - sa - sb;
    let ranks: Vec<usize> =
        mp.on_conic.iter().map(|m| m - 2).chain(mp.off_conic.iter().map(|m| m - 1)).collect();
    assert_eq!(r + ranks.iter().sum::<usize>() as i64, k + 1, "conic-line rank identity");
    Ok(GroupStructure::new(r as usize, ranks, "conic-line-decomposition"))
}

/// The conic generator is central: `π₁(A) = Z ⊕ π₁(A − C)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ConicSplit {
    pub residual: Arrangement,
    /// Structure of the residual line arrangement when its graph is a forest.
    pub residual_structure: Option<GroupStructure>,
    /// Vertex id of the witness when the graph has one cycle.
    pub witness: Option<usize>,
}

impl ConicSplit {
    /// `Z ⊕` the residual structure, when known.
    pub fn structure(&self) -> Option<GroupStructure> {
        self.residual_structure.as_ref().map(|s| s.plus_z("conic-split"))
    }
}

pub fn conic_split(arr: &Arrangement) -> Result<ConicSplit, Error> {
    if arr.conics.len() != 1 {
        return Err(na("needs exactly one conic"));
    }
    let g = graph_of(arr)?;
    let witness = match betti(&g) {
        0 => None,
        1 => match prscf_condition(&g)? {
            Some(w) => Some(w),
            None => return Err(na("no off-conic cycle vertex with two node lines")),
        },
        b => return Err(Error::NotOneCycle(b)),
    };
    let residual = arr.without_conics();
    let residual_structure = fan_structure(&residual).ok();
    Ok(ConicSplit { residual, residual_structure, witness })
}

/// Intersection count of two sub-arrangements.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct OkaSakamoto {
    pub d1: usize,
    pub d2: usize,
    pub points: usize,
    /// Exactly `d₁·d₂` distinct points: the group is the direct sum of the parts' groups.
    pub holds: bool,
}

/// Counts the distinct affine points where `part_a` meets `part_b`. Returns
/// `None` when some intersection is not real or cannot be located exactly.
pub fn oka_sakamoto_split(arr: &Arrangement, part_a: &[Component], part_b: &[Component]) -> Option<OkaSakamoto> {
    let degree = |p: &[Component]| p.iter().map(|c| arr.degree(*c)).sum::<usize>();
    let mut pts: Vec<(ExactScalar, ExactScalar)> = Vec::new();
    for &a in part_a {
        for &b in part_b {
            let found = match (a, b) {
                (Component::Line(i), Component::Line(j)) => {
                    line_line(&arr.lines[i], &arr.lines[j]).ok()?.into_iter().collect()
                }
                (Component::Line(l), Component::Conic(c)) | (Component::Conic(c), Component::Line(l)) => {
                    match conic_line(&arr.conics[c], &arr.lines[l]).ok()? {
                        ConicLine::Real(ps) => ps.to_vec(),
                        ConicLine::OneAtInfinity => Vec::new(),
                        ConicLine::Complex => return None,
                    }
                }
                (Component::Conic(i), Component::Conic(j)) => conic_conic_points(&arr.conics[i], &arr.conics[j])?,
            };
            for p in found {
                if !pts.contains(&p) {
                    pts.push(p);
                }
            }
        }
    }
    let (d1, d2) = (degree(part_a), degree(part_b));
    Some(OkaSakamoto { d1, d2, points: pts.len(), holds: pts.len() == d1 * d2 })
}

/// For two conics: a partition into two one-conic parts meeting in `d₁·d₂`
/// distinct points, so that the graph is the disjoint union of the parts' graphs.
pub fn two_conic_partition(arr: &Arrangement) -> Option<(Vec<Component>, Vec<Component>)> {
    if arr.conics.len() != 2 {
        return None;
    }
    let k = arr.lines.len();
    (0u64..1 << k).find_map(|mask| {
        let mut a = vec![Component::Conic(0)];
        let mut b = vec![Component::Conic(1)];
        for l in 0..k {
            if mask >> l & 1 == 1 {
                a.push(Component::Line(l));
            } else {
                b.push(Component::Line(l));
            }
        }
        oka_sakamoto_split(arr, &a, &b).filter(|o| o.holds).map(|_| (a, b))
    })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Outcome {
    Decomposed(GroupStructure),
    PredictedCF,
    OutsideTheorems,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StructureVerdict {
    pub outcome: Outcome,
    pub theorem: String,
    pub reason: String,
    pub notes: Vec<String>,
}

impl StructureVerdict {
    fn new(outcome: Outcome, theorem: &str, reason: &str) -> StructureVerdict {
        StructureVerdict { outcome, theorem: theorem.into(), reason: reason.into(), notes: Vec::new() }
    }

    pub fn structure(&self) -> Option<&GroupStructure> {
        match &self.outcome {
            Outcome::Decomposed(s) => Some(s),
            _ => None,
        }
    }

    pub fn outcome_name(&self) -> &'static str {
        match self.outcome {
            Outcome::Decomposed(_) => "decomposed",
            Outcome::PredictedCF => "predicted_cf",
            Outcome::OutsideTheorems => "outside_theorems",
        }
    }
}

impl Serialize for StructureVerdict {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        #[derive(Serialize)]
        struct Report<'a> {
            outcome: &'a str,
            theorem: &'a str,
            r: Option<usize>,
            free_ranks: Option<&'a [usize]>,
            identities_checked: bool,
            reason: &'a str,
            #[serde(skip_serializing_if = "<[String]>::is_empty")]
            notes: &'a [String],
        }
        let st = self.structure();
        Report {
            outcome: self.outcome_name(),
            theorem: &self.theorem,
            r: st.map(|g| g.r),
            free_ranks: st.map(|g| g.free_ranks.as_slice()),
            identities_checked: st.is_some(),
            reason: &self.reason,
            notes: &self.notes,
        }
        .serialize(s)
    }
}

/// Every component is a cycle with at least one vertex off the conic.
fn is_union_of_cycles(g: &IncidenceGraph) -> bool {
    !g.vertices.is_empty()
        && g.vertices.iter().all(|v| g.degree(v.id) == 2)
        && g.components().iter().all(|c| c.iter().any(|id| !g.vertices.iter().any(|v| v.id == *id && v.on_conic)))
}

/// Three lines in general position with one conic through their three
/// pairwise intersection points.
fn is_three_lines_with_circumconic(arr: &Arrangement, g: &IncidenceGraph) -> bool {
    arr.lines.len() == 3 && g.vertices.len() == 3 && g.vertices.iter().all(|v| v.on_conic && v.multiplicity == 3)
}

/// Applies the decomposition theorems and the conjugation-free graph tests.
pub fn predict_cf(arr: &Arrangement) -> Result<StructureVerdict, Error> {
    use Outcome::*;
    validate_with(arr, true).into_result()?;
    if has_parallel_lines(arr) {
        return Ok(StructureVerdict::new(OutsideTheorems, "none", "parallel lines meet at infinity"));
    }
    match arr.conics.len() {
        0 => {
            let g = build_graph(arr)?;
            if betti(&g) == 0 {
                let s = fan_structure(arr)?;
                return Ok(StructureVerdict::new(Decomposed(s), "fan-decomposition", "graph is a forest"));
            }
            let v = cfg_check_line(&g);
            Ok(if v.is_cfg {
                StructureVerdict::new(PredictedCF, "cfg-lines", "graph is conjugation-free")
            } else {
                StructureVerdict::new(OutsideTheorems, "cfg-lines", "conjugation-free graph test fails")
            })
        }
        1 => {
            let g = build_graph(arr)?;
            let b = betti(&g);
            if b == 0 {
                let s = cl_structure(arr)?;
                return Ok(StructureVerdict::new(Decomposed(s), "conic-line-decomposition", "graph is a forest"));
            }
            if b == 1 {
                if let Ok(split) = conic_split(arr) {
                    let reason = format!("one cycle with witness vertex v{}", split.witness.unwrap_or_default());
                    return Ok(match split.structure() {
                        Some(s) => StructureVerdict::new(Decomposed(s), "conic-split", &reason),
                        None => StructureVerdict::new(PredictedCF, "conic-split", &reason),
                    });
                }
            }
            let v = cfg_check_cl(&g);
            if v.is_cfg {
                return Ok(StructureVerdict::new(PredictedCF, "cfg-conic-line", "graph is conjugation-free"));
            }
            if is_union_of_cycles(&g) {
                return Ok(StructureVerdict::new(PredictedCF, "cycles", "graph is a disjoint union of cycles"));
            }
            let mut out = StructureVerdict::new(OutsideTheorems, "cfg-conic-line", "conjugation-free graph test fails");
            if b == 1 && prscf_condition(&g)?.is_none() {
                out.notes.push("no off-conic cycle vertex with two node lines".into());
            }
            if is_three_lines_with_circumconic(arr, &g) {
                out.notes.push("known answer: the group is abelian, Z^4".into());
            }
            Ok(out)
        }
        2 => {
            let Some((a, b)) = two_conic_partition(arr) else {
                return Ok(StructureVerdict::new(OutsideTheorems, "oka-sakamoto", "no splitting partition"));
            };
            let parts = [arr.restrict(&a), arr.restrict(&b)];
            for p in &parts {
                if predict_cf(p)?.outcome == OutsideTheorems {
                    return Ok(StructureVerdict::new(OutsideTheorems, "oka-sakamoto", "a part is outside the theorems"));
                }
            }
            Ok(StructureVerdict::new(PredictedCF, "oka-sakamoto", "graph splits into two conjugation-free parts"))
        }
        _ => Ok(StructureVerdict::new(OutsideTheorems, "none", "more than two conics")),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::geometry::{Conic, Line};

    fn lines(ls: &[(i64, i64, i64)]) -> Vec<Line> {
        ls.iter().map(|&(a, b, c)| Line::from_ints(a, b, c)).collect()
    }

    #[test]
    fn generic_lines_are_free_abelian() {
        let arr = Arrangement::lines_only(lines(&[(0, 1, 0), (1, -1, 0), (1, 1, -3)]));
        assert_eq!(fan_structure(&arr).unwrap(), GroupStructure::new(3, vec![], "fan-decomposition"));
    }

    #[test]
    fn triple_point() {
        let arr = Arrangement::lines_only(lines(&[(0, 1, 0), (1, -1, 0), (1, 1, 0)]));
        let s = fan_structure(&arr).unwrap();
        assert_eq!((s.r, s.free_ranks), (1, vec![2]));
    }

    #[test]
    fn two_triple_points_sharing_a_line() {
        // y=0 carries both triple points, at x=0 and x=4
        let arr = Arrangement::lines_only(lines(&[(0, 1, 0), (1, -1, 0), (1, 2, 0), (1, -2, -4), (1, 3, -4)]));
        let s = fan_structure(&arr).unwrap();
        assert_eq!((s.r, s.free_ranks), (1, vec![2, 2]));
    }

    #[test]
    fn conic_through_triple_point() {
        // unit circle with two lines through (0, 1)
        let arr = Arrangement::new(lines(&[(2, -1, 1), (3, 1, -1)]), vec![Conic::from_ints([1, 0, 1, 0, 0, -1])]);
        let s = cl_structure(&arr).unwrap();
        assert_eq!((s.r, s.free_ranks.clone()), (2, vec![1]));
        assert_eq!(s.normalized().r, 3);
        let split = conic_split(&arr).unwrap();
        assert_eq!(split.structure().unwrap().normalized().r, 3);
    }

    #[test]
    fn parallel_lines_are_excluded() {
        let arr = Arrangement::lines_only(lines(&[(0, 1, 0), (0, 1, -1), (1, 1, 0)]));
        assert!(matches!(fan_structure(&arr), Err(Error::NotApplicable(_))));
        assert_eq!(predict_cf(&arr).unwrap().outcome, Outcome::OutsideTheorems);
    }

    #[test]
    fn oka_sakamoto_counts() {
        let arr = Arrangement::new(lines(&[(0, 1, 0), (1, -1, 0), (1, 1, -3)]), vec![Conic::from_ints([1, 0, 1, 0, 0, -100])]);
        let ab = oka_sakamoto_split(&arr, &[Component::Line(0), Component::Line(1)], &[Component::Line(2)]).unwrap();
        assert!(ab.holds);
        let lc = oka_sakamoto_split(&arr, &[Component::Conic(0)], &[Component::Line(2)]).unwrap();
        assert_eq!((lc.points, lc.holds), (2, true));
        let tri = Arrangement::lines_only(lines(&[(0, 1, 0), (1, -1, 0), (1, 1, 0)]));
        let f = oka_sakamoto_split(&tri, &[Component::Line(0), Component::Line(1)], &[Component::Line(2)]).unwrap();
        assert_eq!((f.points, f.holds), (1, false));
    }

    #[test]
    fn json_report_shape() {
        let arr = Arrangement::lines_only(lines(&[(0, 1, 0), (1, -1, 0), (1, 1, 0)]));
        let v = serde_json::to_value(predict_cf(&arr).unwrap()).unwrap();
        assert_eq!(v["outcome"], "decomposed");
        assert_eq!(v["r"], 1);
        assert_eq!(v["free_ranks"], serde_json::json!([2]));
        assert_eq!(v["identities_checked"], true);
    }
}
