//! Lines, conics and their singular points with respect to the projection `(x, y) ↦ x`.

use std::cmp::Ordering;
use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use serde::Serialize;

use super::scalar::{fmt_q, qi, ExactScalar, Q};
use crate::error::Error;

/// An irreducible component of an arrangement.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Component {
    Line(usize),
    Conic(usize),
}

impl fmt::Display for Component {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Component::Line(i) => write!(f, "L{i}"),
            Component::Conic(i) => write!(f, "C{i}"),
        }
    }
}

impl Serialize for Component {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

/// The line `a x + b y + c = 0`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Line {
    pub a: Q,
    pub b: Q,
    pub c: Q,
}

impl Line {
    /// Normalizes to coprime integer coefficients with the first non-zero of
    /// `(a, b)` positive. Panics when `a = b = 0`.
    pub fn new(a: Q, b: Q, c: Q) -> Line {
        assert!(!(a.is_zero() && b.is_zero()), "degenerate line");
        let den = a.denom().lcm(b.denom()).lcm(c.denom());
        let dq = Q::from_integer(den);
        let (ia, ib, ic) = (
            (&a * &dq).to_integer(),
            (&b * &dq).to_integer(),
            (&c * &dq).to_integer(),
        );
        let mut g = ia.gcd(&ib).gcd(&ic);
        let lead = if ia.is_zero() { &ib } else { &ia };
        if lead.is_negative() {
            g = -g;
        }
        Line {
            a: Q::from_integer(ia / &g),
            b: Q::from_integer(ib / &g),
            c: Q::from_integer(ic / &g),
        }
    }

    pub fn from_ints(a: i64, b: i64, c: i64) -> Line {
        Line::new(qi(a), qi(b), qi(c))
    }

    /// `y = m x + k`.
    pub fn slope_intercept(m: Q, k: Q) -> Line {
        Line::new(m, -Q::one(), k)
    }

    pub fn is_vertical(&self) -> bool {
        self.b.is_zero()
    }

    /// `y` on the line at a given `x`; `None` for vertical lines.
    pub fn y_at(&self, x: &ExactScalar) -> Option<ExactScalar> {
        if self.b.is_zero() {
            return None;
        }
        let k = -Q::one() / &self.b;
        Some(x.mul_rational(&self.a).add_rational(&self.c).mul_rational(&k))
    }

    pub fn y_at_q(&self, x: &Q) -> Option<Q> {
        if self.b.is_zero() {
            return None;
        }
        Some(-(&self.a * x + &self.c) / &self.b)
    }

    fn eval(&self, x: &ExactScalar, y: &ExactScalar) -> Option<ExactScalar> {
        x.mul_rational(&self.a)
            .checked_add(&y.mul_rational(&self.b))
            .map(|s| s.add_rational(&self.c))
    }

    /// Exact incidence test.
    pub fn contains(&self, x: &ExactScalar, y: &ExactScalar) -> bool {
        self.eval(x, y).map(|v| v.signum() == 0).unwrap_or(false)
    }

    /// Image under `x ↦ x + t y`.
    pub fn sheared(&self, t: &Q) -> Line {
        Line::new(self.a.clone(), &self.b - &self.a * t, self.c.clone())
    }
}

/// The conic `A x² + B xy + C y² + D x + E y + F = 0`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Conic {
    pub coeffs: [Q; 6],
}

impl Conic {
    pub fn new(coeffs: [Q; 6]) -> Conic {
        Conic { coeffs }
    }

    pub fn from_ints(c: [i64; 6]) -> Conic {
        Conic::new(c.map(qi))
    }

    /// `B² − 4AC`; zero exactly for parabolas.
    pub fn quadratic_discriminant(&self) -> Q {
        let [a, b, c, ..] = &self.coeffs;
        b * b - Q::from_integer(BigInt::from(4)) * a * c
    }

    /// Determinant of the symmetric 3×3 matrix (times 4); zero for degenerate conics.
    pub fn determinant(&self) -> Q {
        let [a, b, c, d, e, f] = &self.coeffs;
        let two = qi(2);
        // matrix [[2A, B, D], [B, 2C, E], [D, E, 2F]]
        let m = [
            [&two * a, b.clone(), d.clone()],
            [b.clone(), &two * c, e.clone()],
            [d.clone(), e.clone(), &two * f],
        ];
        &m[0][0] * (&m[1][1] * &m[2][2] - &m[1][2] * &m[2][1])
            - &m[0][1] * (&m[1][0] * &m[2][2] - &m[1][2] * &m[2][0])
            + &m[0][2] * (&m[1][0] * &m[2][1] - &m[1][1] * &m[2][0])
    }

    /// Coefficients `(P, R, S)` of the discriminant `P x² + R x + S` of the
    /// conic as a quadratic in `y`.
    pub fn fiber_discriminant(&self) -> (Q, Q, Q) {
        let [a, b, c, d, e, f] = &self.coeffs;
        let four = qi(4);
        (
            b * b - &four * a * c,
            qi(2) * b * e - &four * c * d,
            e * e - &four * c * f,
        )
    }

    pub fn fiber_discriminant_at(&self, x: &Q) -> Q {
        let (p, r, s) = self.fiber_discriminant();
        p * x * x + r * x + s
    }

    /// `Re y` of the fiber points: `−(B x + E) / 2C`. Requires `C ≠ 0`.
    pub fn center_at(&self, x: &ExactScalar) -> ExactScalar {
        let [_, b, c, _, e, _] = &self.coeffs;
        let k = -Q::one() / (qi(2) * c);
        x.mul_rational(b).add_rational(e).mul_rational(&k)
    }

    /// The line `B x + 2C y + E = 0` carrying the real parts of the fiber points.
    pub fn center_line(&self) -> Option<Line> {
        let [_, b, c, _, e, _] = &self.coeffs;
        if c.is_zero() {
            return None;
        }
        Some(Line::new(b.clone(), qi(2) * c, e.clone()))
    }

    /// Real fiber points at rational `x`, lower first; `None` if complex.
    pub fn ys_at(&self, x: &Q) -> Option<(ExactScalar, ExactScalar)> {
        let [_, b, c, ..] = &self.coeffs;
        let disc = self.fiber_discriminant_at(x);
        if disc.is_negative() || c.is_zero() {
            return None;
        }
        let centre = ExactScalar::rational(-(b * x + &self.coeffs[4]) / (qi(2) * c));
        let half = ExactScalar::sqrt(&disc).mul_rational(&(Q::one() / (qi(2) * c.abs())));
        let lo = centre.checked_sub(&half).expect("same field");
        let hi = centre.checked_add(&half).expect("same field");
        Some((lo, hi))
    }

    pub fn contains(&self, x: &ExactScalar, y: &ExactScalar) -> bool {
        let [a, b, c, d, e, f] = &self.coeffs;
        let xx = x.checked_mul(x);
        let xy = x.checked_mul(y);
        let yy = y.checked_mul(y);
        let terms = [
            xx.map(|v| v.mul_rational(a)),
            xy.map(|v| v.mul_rational(b)),
            yy.map(|v| v.mul_rational(c)),
            Some(x.mul_rational(d)),
            Some(y.mul_rational(e)),
            Some(ExactScalar::rational(f.clone())),
        ];
        let mut acc = ExactScalar::zero();
        for t in terms {
            match t.and_then(|t| acc.checked_add(&t)) {
                Some(v) => acc = v,
                None => return false,
            }
        }
        acc.signum() == 0
    }

    /// Image under `x ↦ x + t y`.
    pub fn sheared(&self, t: &Q) -> Conic {
        let [a, b, c, d, e, f] = &self.coeffs;
        let two = qi(2);
        Conic::new([
            a.clone(),
            b - &two * a * t,
            a * t * t - b * t + c,
            d.clone(),
            e - d * t,
            f.clone(),
        ])
    }
}

/// Lines plus conics; only the structure module accepts more than one conic.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Arrangement {
    pub lines: Vec<Line>,
    pub conics: Vec<Conic>,
}

impl Arrangement {
    pub fn new(lines: Vec<Line>, conics: Vec<Conic>) -> Self {
        Arrangement { lines, conics }
    }

    pub fn lines_only(lines: Vec<Line>) -> Self {
        Arrangement { lines, conics: Vec::new() }
    }

    pub fn components(&self) -> Vec<Component> {
        (0..self.lines.len())
            .map(Component::Line)
            .chain((0..self.conics.len()).map(Component::Conic))
            .collect()
    }

    pub fn degree(&self, c: Component) -> usize {
        match c {
            Component::Line(_) => 1,
            Component::Conic(_) => 2,
        }
    }

    /// Restriction to a subset of components, renumbered in order.
    pub fn restrict(&self, keep: &[Component]) -> Arrangement {
        let mut out = Arrangement::default();
        for c in self.components() {
            if keep.contains(&c) {
                match c {
                    Component::Line(i) => out.lines.push(self.lines[i].clone()),
                    Component::Conic(i) => out.conics.push(self.conics[i].clone()),
                }
            }
        }
        out
    }

    pub fn without_conics(&self) -> Arrangement {
        Arrangement::lines_only(self.lines.clone())
    }

    pub fn sheared(&self, t: &Q) -> Arrangement {
        Arrangement {
            lines: self.lines.iter().map(|l| l.sheared(t)).collect(),
            conics: self.conics.iter().map(|c| c.sheared(t)).collect(),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum PointKind {
    Intersection,
    Branch,
}

/// A singular point of the projection.
#[derive(Clone, Debug, Serialize)]
pub struct PointXY {
    pub x: ExactScalar,
    pub y: ExactScalar,
    /// Sorted incident components.
    pub components: Vec<Component>,
    /// Number of local branches; 1 for branch points.
    pub multiplicity: usize,
    pub kind: PointKind,
}

impl PointXY {
    fn intersection(x: ExactScalar, y: ExactScalar, mut comps: Vec<Component>) -> PointXY {
        comps.sort();
        comps.dedup();
        let m = comps.len();
        PointXY { x, y, components: comps, multiplicity: m, kind: PointKind::Intersection }
    }

    pub fn same_location(&self, other: &PointXY) -> bool {
        self.x == other.x && self.y == other.y
    }

    pub fn on_conic(&self) -> bool {
        self.components.iter().any(|c| matches!(c, Component::Conic(_)))
    }

    pub fn lines(&self) -> Vec<usize> {
        self.components
            .iter()
            .filter_map(|c| match c {
                Component::Line(i) => Some(*i),
                _ => None,
            })
            .collect()
    }

    fn cmp_xy(&self, other: &PointXY) -> Ordering {
        self.x.cmp(&other.x).then_with(|| self.y.cmp(&other.y))
    }
}

/// Intersection of two lines, `None` when parallel.
pub fn line_line(l1: &Line, l2: &Line) -> Result<Option<(ExactScalar, ExactScalar)>, Error> {
    if l1 == l2 {
        return Err(Error::IdenticalLines);
    }
    let det = &l1.a * &l2.b - &l2.a * &l1.b;
    if det.is_zero() {
        return Ok(None);
    }
    let x = (&l1.b * &l2.c - &l2.b * &l1.c) / &det;
    let y = (&l2.a * &l1.c - &l1.a * &l2.c) / &det;
    Ok(Some((x.into(), y.into())))
}

/// Outcome of intersecting a conic with a line.
#[derive(Clone, Debug)]
pub enum ConicLine {
    /// Two real points, exchanged by conjugation of the shared radicand.
    Real([(ExactScalar, ExactScalar); 2]),
    /// A complex-conjugate pair.
    Complex,
    /// One point in the affine plane, the other at infinity.
    OneAtInfinity,
}

/// Intersection of a conic with a line.
pub fn conic_line(c: &Conic, l: &Line) -> Result<ConicLine, Error> {
    let [ca, cb, cc, cd, ce, cf] = &c.coeffs;
    // parametrize the line as (x0 + t·dx, y0 + t·dy)
    let (x0, y0, dx, dy) = if !l.b.is_zero() {
        (Q::zero(), -&l.c / &l.b, Q::one(), -&l.a / &l.b)
    } else {
        (-&l.c / &l.a, Q::zero(), Q::zero(), Q::one())
    };
    let two = qi(2);
    let alpha = ca * &dx * &dx + cb * &dx * &dy + cc * &dy * &dy;
    let beta = &two * ca * &x0 * &dx
        + cb * (&x0 * &dy + &y0 * &dx)
        + &two * cc * &y0 * &dy
        + cd * &dx
        + ce * &dy;
    let gamma = ca * &x0 * &x0 + cb * &x0 * &y0 + cc * &y0 * &y0 + cd * &x0 + ce * &y0 + cf;
    if alpha.is_zero() {
        if beta.is_zero() {
            // the line lies on the conic or misses it entirely
            return Err(Error::NonGeneric("line is a component of, or asymptotic to, the conic".into()));
        }
        return Ok(ConicLine::OneAtInfinity);
    }
    let disc = &beta * &beta - qi(4) * &alpha * &gamma;
    if disc.is_zero() {
        return Err(Error::UnsupportedTangency);
    }
    if disc.is_negative() {
        return Ok(ConicLine::Complex);
    }
    let root = ExactScalar::sqrt(&disc).mul_rational(&(Q::one() / (&two * &alpha)));
    let base = ExactScalar::rational(-&beta / (&two * &alpha));
    let t1 = base.checked_sub(&root).unwrap();
    let t2 = base.checked_add(&root).unwrap();
    let pt = |t: &ExactScalar| {
        (t.mul_rational(&dx).add_rational(&x0), t.mul_rational(&dy).add_rational(&y0))
    };
    Ok(ConicLine::Real([pt(&t1), pt(&t2)]))
}

/// The two critical points of `(x, y) ↦ x` on the conic, left first.
pub fn branch_points(c: &Conic) -> Result<[(ExactScalar, ExactScalar); 2], Error> {
    if c.quadratic_discriminant().is_zero() {
        return Err(Error::UnsupportedParabola);
    }
    if c.coeffs[2].is_zero() {
        return Err(Error::NonGeneric("conic has a vertical asymptote".into()));
    }
    let (p, r, s) = c.fiber_discriminant();
    let dd = &r * &r - qi(4) * &p * &s;
    if !dd.is_positive() {
        return Err(Error::ComplexIntersection(
            "branch points of the conic are not real and distinct".into(),
        ));
    }
    let two_p = qi(2) * &p;
    let root = ExactScalar::sqrt(&dd).mul_rational(&(Q::one() / two_p.abs()));
    let base = ExactScalar::rational(-&r / &two_p);
    let x1 = base.checked_sub(&root).unwrap();
    let x2 = base.checked_add(&root).unwrap();
    let y1 = c.center_at(&x1);
    let y2 = c.center_at(&x2);
    Ok([(x1, y1), (x2, y2)])
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum ViolationKind {
    IdenticalLines,
    UnsupportedTangency,
    UnsupportedParabola,
    ComplexIntersection,
    DegenerateConic,
    EmptyRealLocus,
    LineThroughBranchPoint,
    PointAtInfinity,
    TooManyConics,
}

#[derive(Clone, Debug, Serialize)]
pub struct Violation {
    pub kind: ViolationKind,
    pub components: Vec<Component>,
}

#[derive(Clone, Debug, Default, Serialize)]
pub struct ValidationReport {
    pub violations: Vec<Violation>,
}

impl ValidationReport {
    pub fn passed(&self) -> bool {
        self.violations.is_empty()
    }

    pub fn has(&self, kind: ViolationKind) -> bool {
        self.violations.iter().any(|v| v.kind == kind)
    }

    /// The first violation as an error.
    pub fn into_result(self) -> Result<(), Error> {
        match self.violations.first() {
            None => Ok(()),
            Some(v) => Err(Error::from_violation(v)),
        }
    }
}

/// Checks the admissibility assumptions and lists every violation.
pub fn validate(arr: &Arrangement) -> ValidationReport {
    validate_with(arr, false)
}

/// As [`validate`], optionally allowing several conics (combinatorial checks only).
pub fn validate_with(arr: &Arrangement, allow_many_conics: bool) -> ValidationReport {
    let mut rep = ValidationReport::default();
    let mut push = |kind, components: Vec<Component>| rep.violations.push(Violation { kind, components });
    if arr.conics.len() > 1 && !allow_many_conics {
        push(ViolationKind::TooManyConics, (0..arr.conics.len()).map(Component::Conic).collect());
    }
    for i in 0..arr.lines.len() {
        for j in i + 1..arr.lines.len() {
            if arr.lines[i] == arr.lines[j] {
                push(ViolationKind::IdenticalLines, vec![Component::Line(i), Component::Line(j)]);
            }
        }
    }
    let mut good_conics = Vec::new();
    for (ci, c) in arr.conics.iter().enumerate() {
        let me = vec![Component::Conic(ci)];
        if c.determinant().is_zero() {
            push(ViolationKind::DegenerateConic, me);
            continue;
        }
        if c.quadratic_discriminant().is_zero() {
            push(ViolationKind::UnsupportedParabola, me);
            continue;
        }
        let (p, r, s) = c.fiber_discriminant();
        let dd = &r * &r - qi(4) * &p * &s;
        if p.is_negative() && !dd.is_positive() {
            push(ViolationKind::EmptyRealLocus, me);
            continue;
        }
        if !c.coeffs[2].is_zero() && !dd.is_positive() {
            push(ViolationKind::ComplexIntersection, me);
            continue;
        }
        good_conics.push(ci);
    }
    for &ci in &good_conics {
        let c = &arr.conics[ci];
        let bps = if c.coeffs[2].is_zero() { None } else { branch_points(c).ok() };
        for (li, l) in arr.lines.iter().enumerate() {
            let comps = vec![Component::Conic(ci), Component::Line(li)];
            match conic_line(c, l) {
                Err(Error::UnsupportedTangency) => push(ViolationKind::UnsupportedTangency, comps),
                Err(_) => push(ViolationKind::PointAtInfinity, comps),
                Ok(ConicLine::Complex) => push(ViolationKind::ComplexIntersection, comps),
                Ok(ConicLine::OneAtInfinity) => push(ViolationKind::PointAtInfinity, comps),
                Ok(ConicLine::Real(_)) => {
                    if let Some(bps) = &bps {
                        if bps.iter().any(|(x, y)| l.contains(x, y)) {
                            push(ViolationKind::LineThroughBranchPoint, comps);
                        }
                    }
                }
            }
        }
    }
    for (i, &ci) in good_conics.iter().enumerate() {
        for &cj in &good_conics[i + 1..] {
            if let Err(kind) = conic_conic_generic(&arr.conics[ci], &arr.conics[cj]) {
                push(kind, vec![Component::Conic(ci), Component::Conic(cj)]);
            }
        }
    }
    rep
}

/// Two conics must not coincide; their intersections are only counted in
/// [`conic_conic_points`].
fn conic_conic_generic(a: &Conic, b: &Conic) -> Result<(), ViolationKind> {
    let ratio = a
        .coeffs
        .iter()
        .zip(&b.coeffs)
        .find(|(x, _)| !x.is_zero())
        .map(|(x, y)| y / x);
    if let Some(k) = ratio {
        if a.coeffs.iter().zip(&b.coeffs).all(|(x, y)| &(x * &k) == y) {
            return Err(ViolationKind::DegenerateConic);
        }
    }
    Ok(())
}

/// Real intersection points of two conics that have rational or quadratic
/// coordinates, found through the lines of the pencil. Used only for the
/// two-conic splitting check; returns `None` when the conics are tangent or
/// some point needs a higher degree field.
pub fn conic_conic_points(a: &Conic, b: &Conic) -> Option<Vec<(ExactScalar, ExactScalar)>> {
    // degenerate members of the pencil a + λ b are line pairs through all intersections
    'members: for lambda in rational_degenerate_members(a, b) {
        let coeffs: [Q; 6] = std::array::from_fn(|i| &a.coeffs[i] + &lambda * &b.coeffs[i]);
        let Some(lines) = split_line_pair(&Conic::new(coeffs)) else { continue };
        let mut out: Vec<(ExactScalar, ExactScalar)> = Vec::new();
        for l in lines {
            match conic_line(a, &l) {
                Ok(ConicLine::Real(pts)) => {
                    for p in pts {
                        if !out.iter().any(|q| q.0 == p.0 && q.1 == p.1) {
                            out.push(p);
                        }
                    }
                }
                Ok(ConicLine::Complex) => {}
                Err(Error::UnsupportedTangency) => {
                    return None;
                }
                _ => continue 'members,
            }
        }
        return Some(out);
    }
    None
}

fn rational_degenerate_members(a: &Conic, b: &Conic) -> Vec<Q> {
    // det(a + λ b) is a cubic in λ; search rational roots by sampling the polynomial
    let det_at = |lam: &Q| {
        let c: [Q; 6] = std::array::from_fn(|i| &a.coeffs[i] + lam * &b.coeffs[i]);
        Conic::new(c).determinant()
    };
    let pts: Vec<Q> = (0..4).map(qi).collect();
    let vals: Vec<Q> = pts.iter().map(det_at).collect();
    // Newton interpolation coefficients of the cubic c3 λ³ + c2 λ² + c1 λ + c0
    let c0 = vals[0].clone();
    let d1 = &vals[1] - &vals[0];
    let d2 = &vals[2] - qi(2) * &vals[1] + &vals[0];
    let d3 = &vals[3] - qi(3) * &vals[2] + qi(3) * &vals[1] - &vals[0];
    let c3 = &d3 / qi(6);
    let c2 = (&d2 - qi(6) * &c3) / qi(2);
    let c1 = &d1 - &c2 - &c3;
    let poly = [c0, c1, c2, c3];
    rational_roots(&poly)
}

fn rational_roots(poly: &[Q; 4]) -> Vec<Q> {
    let den = poly.iter().fold(BigInt::one(), |acc, c| acc.lcm(c.denom()));
    let ints: Vec<BigInt> = poly.iter().map(|c| (c * Q::from_integer(den.clone())).to_integer()).collect();
    let deg = (0..4).rev().find(|&i| !ints[i].is_zero());
    let Some(deg) = deg else { return vec![Q::zero()] };
    if deg == 0 {
        return vec![];
    }
    let mut out = Vec::new();
    if ints[0].is_zero() {
        out.push(Q::zero());
    }
    let lead = ints[deg].abs();
    let low = ints.iter().find(|c| !c.is_zero()).unwrap().abs();
    let divisors = |n: &BigInt| -> Vec<BigInt> {
        let mut ds = Vec::new();
        let mut i = BigInt::one();
        while &i * &i <= *n && i <= BigInt::from(100_000) {
            if (n % &i).is_zero() {
                ds.push(i.clone());
                ds.push(n / &i);
            }
            i += 1;
        }
        ds
    };
    for p in divisors(&low) {
        for q in divisors(&lead) {
            for s in [1, -1] {
                let cand = Q::new(&p * s, q.clone());
                let v = ints.iter().rev().fold(Q::zero(), |acc, c| acc * &cand + Q::from_integer(c.clone()));
                if v.is_zero() && !out.contains(&cand) {
                    out.push(cand);
                }
            }
        }
    }
    out
}

/// Factors a degenerate conic into two real lines with rational coefficients.
fn split_line_pair(c: &Conic) -> Option<Vec<Line>> {
    let [a, b, cc, d, e, f] = &c.coeffs;
    let disc = b * b - qi(4) * a * cc;
    let root = super::scalar::rational_sqrt(&disc)?;
    if !a.is_zero() {
        // A (x − m₁ y − …)(x − m₂ y − …): slopes in x from A + B m + C m² with x = m y
        let two_a = qi(2) * a;
        let m1 = (-b + &root) / &two_a;
        let m2 = (-b - &root) / &two_a;
        // lines x − m y + k = 0; solve k₁ + k₂ and k₁k₂ from D, E, F
        // A(x − m₁y + k₁)(x − m₂y + k₂): D = A(k₁+k₂), E = −A(m₁k₂ + m₂k₁), F = A k₁k₂
        let s = d / a;
        let p = f / a;
        let dd = &s * &s - qi(4) * &p;
        let r = super::scalar::rational_sqrt(&dd)?;
        for (k1, k2) in [((&s + &r) / qi(2), (&s - &r) / qi(2)), ((&s - &r) / qi(2), (&s + &r) / qi(2))] {
            let e_chk = -(a * (&m1 * &k2 + &m2 * &k1));
            if &e_chk == e {
                return Some(vec![
                    Line::new(Q::one(), -m1.clone(), k1),
                    Line::new(Q::one(), -m2.clone(), k2),
                ]);
            }
        }
        None
    } else if !cc.is_zero() {
        let swapped = Conic::new([cc.clone(), b.clone(), a.clone(), e.clone(), d.clone(), f.clone()]);
        let ls = split_line_pair(&swapped)?;
        Some(ls.into_iter().map(|l| Line::new(l.b, l.a, l.c)).collect())
    } else {
        // B xy + D x + E y + F = (B x + E)(y + D/B) when F = D E / B
        if b.is_zero() {
            return None;
        }
        if &(d * e / b) != f {
            return None;
        }
        Some(vec![Line::new(b.clone(), Q::zero(), e.clone()), Line::new(Q::zero(), Q::one(), d / b)])
    }
}

/// All singular points sorted by `(x, y)`: intersection points grouped by
/// location, then the branch points of each conic.
pub fn singular_points(arr: &Arrangement) -> Result<Vec<PointXY>, Error> {
    let mut pts: Vec<PointXY> = Vec::new();
    let mut add = |x: ExactScalar, y: ExactScalar, comps: [Component; 2]| {
        if let Some(p) = pts.iter_mut().find(|p| p.x == x && p.y == y) {
            p.components.extend(comps);
            p.components.sort();
            p.components.dedup();
            p.multiplicity = p.components.len();
        } else {
            pts.push(PointXY::intersection(x, y, comps.to_vec()));
        }
    };
    for i in 0..arr.lines.len() {
        for j in i + 1..arr.lines.len() {
            if let Some((x, y)) = line_line(&arr.lines[i], &arr.lines[j])? {
                add(x, y, [Component::Line(i), Component::Line(j)]);
            }
        }
    }
    for (ci, c) in arr.conics.iter().enumerate() {
        for (li, l) in arr.lines.iter().enumerate() {
            match conic_line(c, l)? {
                ConicLine::Real(ps) => {
                    for (x, y) in ps {
                        add(x, y, [Component::Conic(ci), Component::Line(li)]);
                    }
                }
                ConicLine::Complex => {
                    return Err(Error::ComplexIntersection(format!(
                        "{} meets {} in a complex pair",
                        Component::Line(li),
                        Component::Conic(ci)
                    )))
                }
                ConicLine::OneAtInfinity => {
                    return Err(Error::NonGeneric(format!(
                        "{} meets {} at infinity",
                        Component::Line(li),
                        Component::Conic(ci)
                    )))
                }
            }
        }
    }
    for (ci, c) in arr.conics.iter().enumerate() {
        for (x, y) in branch_points(c)? {
            pts.push(PointXY {
                x,
                y,
                components: vec![Component::Conic(ci)],
                multiplicity: 1,
                kind: PointKind::Branch,
            });
        }
    }
    pts.sort_by(|a, b| a.cmp_xy(b));
    Ok(pts)
}

/// `true` when the projection is generic: no vertical line, no vertical
/// asymptote, pairwise distinct abscissae of all singular points and of the
/// places where a line crosses the real part of a complex conic fiber.
pub fn is_generic(arr: &Arrangement) -> bool {
    if arr.lines.iter().any(Line::is_vertical) {
        return false;
    }
    if arr.conics.iter().any(|c| c.coeffs[2].is_zero()) {
        return false;
    }
    let Ok(pts) = singular_points(arr) else { return false };
    let mut xs: Vec<ExactScalar> = pts.into_iter().map(|p| p.x).collect();
    for c in &arr.conics {
        for (_, x) in center_crossings(arr, c) {
            xs.push(x.into());
        }
    }
    xs.sort();
    xs.windows(2).all(|w| w[0] != w[1])
}

/// Lines crossing the real part of the conic's fiber where the fiber is a
/// complex pair, with the rational abscissa of the crossing.
pub fn center_crossings(arr: &Arrangement, c: &Conic) -> Vec<(usize, Q)> {
    let Some(centre) = c.center_line() else { return Vec::new() };
    let mut out = Vec::new();
    for (li, l) in arr.lines.iter().enumerate() {
        if *l == centre {
            continue;
        }
        if let Ok(Some((x, _))) = line_line(l, &centre) {
            let x = x.as_rational().expect("rational intersection").clone();
            if c.fiber_discriminant_at(&x).is_negative() {
                out.push((li, x));
            }
        }
    }
    out
}

/// Result of [`shear_to_generic`].
#[derive(Clone, Debug)]
pub struct Sheared {
    pub arrangement: Arrangement,
    /// The shear parameter `t` of `x ↦ x + t y`.
    pub t: Q,
}

/// Applies the smallest shear `x ↦ x + y/k` making the projection generic;
/// `t = 0` when it already is.
pub fn shear_to_generic(arr: &Arrangement) -> Sheared {
    if is_generic(arr) {
        return Sheared { arrangement: arr.clone(), t: Q::zero() };
    }
    let mut k: i64 = 1;
    loop {
        let t = Q::new(BigInt::one(), BigInt::from(k));
        let s = arr.sheared(&t);
        if is_generic(&s) {
            return Sheared { arrangement: s, t };
        }
        k += 1;
    }
}

/// Incidence pattern of the singular points: for every intersection point,
/// its set of components; sorted, independent of coordinates.
pub fn lattice(arr: &Arrangement) -> Result<Vec<Vec<Component>>, Error> {
    let mut v: Vec<Vec<Component>> = singular_points(arr)?
        .into_iter()
        .filter(|p| p.kind == PointKind::Intersection)
        .map(|p| p.components)
        .collect();
    v.sort();
    Ok(v)
}

pub fn render_q(q: &Q) -> String {
    fmt_q(q)
}
