//! Exact real numbers of the form `a + b√d` with rational `a`, `b`.

use std::cmp::Ordering;
use std::fmt;

use num_bigint::{BigInt, BigUint, Sign};
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

pub type Q = BigRational;

/// Trial division stops here; see [`square_free_split`].
const TRIAL_LIMIT: u64 = 200_000;

/// A rational number or an element of a real quadratic field.
///
/// Quadratic values are kept normalized: `b != 0` and `d >= 2` with the
/// square part of `d` moved into `b`. Equality and ordering are exact.
#[derive(Clone, Debug)]
pub enum ExactScalar {
    Rational(Q),
    Quadratic { a: Q, b: Q, d: BigInt },
}

/// Splits `n` into `(s, d)` with `n = s² d`.
///
/// Primes below [`TRIAL_LIMIT`] are removed by trial division and a square
/// cofactor is absorbed, so `d` is square-free for every input whose
/// cofactor has fewer than two prime factors above the limit. Exactness of
/// comparisons never depends on `d` being square-free.
pub fn square_free_split(n: &BigUint) -> (BigUint, BigUint) {
    if n.is_zero() {
        return (BigUint::zero(), BigUint::zero());
    }
    let mut rest = n.clone();
    let mut s = BigUint::one();
    let mut d = BigUint::one();
    let mut p: u64 = 2;
    while p <= TRIAL_LIMIT {
        let bp = BigUint::from(p);
        if &bp * &bp > rest {
            break;
        }
        let mut e = 0u32;
        while (&rest % &bp).is_zero() {
            rest /= &bp;
            e += 1;
        }
        if e > 0 {
            s *= bp.pow(e / 2);
            if e % 2 == 1 {
                d *= &bp;
            }
        }
        p += if p == 2 { 1 } else { 2 };
    }
    let r = rest.sqrt();
    if &r * &r == rest {
        s *= r;
    } else {
        d *= rest;
    }
    (s, d)
}

fn int_to_q(n: BigInt) -> Q {
    Q::from_integer(n)
}

fn sign_of(q: &Q) -> i8 {
    if q.is_positive() {
        1
    } else if q.is_negative() {
        -1
    } else {
        0
    }
}

/// Sign of `p + q√m` for rational `p`, `q` and positive rational `m`.
fn sign_two(p: &Q, q: &Q, m: &Q) -> i8 {
    let sp = sign_of(p);
    let sq = sign_of(q);
    if sq == 0 || m.is_zero() {
        return sp;
    }
    if sp == 0 || sp == sq {
        return sq;
    }
    // opposite signs: compare p² with q² m
    match (p * p).cmp(&(q * q * m)) {
        Ordering::Greater => sp,
        Ordering::Less => sq,
        Ordering::Equal => 0,
    }
}

/// Sign of `α + β√d₁ + γ√d₂` (two squarings).
fn sign_three(alpha: &Q, beta: &Q, d1: &Q, gamma: &Q, d2: &Q) -> i8 {
    // s = β√d₁ + γ√d₂
    let ss = {
        let sb = if beta.is_zero() { 0 } else { sign_of(beta) };
        let sg = if gamma.is_zero() { 0 } else { sign_of(gamma) };
        if sb == 0 {
            sg
        } else if sg == 0 || sb == sg {
            sb
        } else {
            match (beta * beta * d1).cmp(&(gamma * gamma * d2)) {
                Ordering::Greater => sb,
                Ordering::Less => sg,
                Ordering::Equal => 0,
            }
        }
    };
    let sa = sign_of(alpha);
    if ss == 0 {
        return sa;
    }
    if sa == 0 || sa == ss {
        return ss;
    }
    // |s| vs |α|: s² − α² = β²d₁ + γ²d₂ − α² + 2βγ√(d₁d₂)
    let p = beta * beta * d1 + gamma * gamma * d2 - alpha * alpha;
    let q = Q::from_integer(BigInt::from(2)) * beta * gamma;
    match sign_two(&p, &q, &(d1 * d2)) {
        1 => ss,
        -1 => sa,
        _ => 0,
    }
}

impl ExactScalar {
    pub fn zero() -> Self {
        ExactScalar::Rational(Q::zero())
    }

    pub fn from_int(n: i64) -> Self {
        ExactScalar::Rational(Q::from_integer(BigInt::from(n)))
    }

    pub fn rational(q: Q) -> Self {
        ExactScalar::Rational(q)
    }

    /// `a + b√d` normalized. `d` must be non-negative.
    pub fn quadratic(a: Q, b: Q, d: BigInt) -> Self {
        assert!(!d.is_negative(), "negative radicand");
        if b.is_zero() || d.is_zero() {
            return ExactScalar::Rational(a);
        }
        let (s, core) = square_free_split(d.magnitude());
        let b = b * int_to_q(BigInt::from_biguint(Sign::Plus, s));
        if core.is_one() {
            ExactScalar::Rational(a + b)
        } else {
            ExactScalar::Quadratic {
                a,
                b,
                d: BigInt::from_biguint(Sign::Plus, core),
            }
        }
    }

    /// `√q` for non-negative rational `q`.
    pub fn sqrt(q: &Q) -> Self {
        assert!(!q.is_negative(), "square root of a negative rational");
        // √(n/m) = √(n m) / m
        let n = q.numer() * q.denom();
        let inv = Q::new(BigInt::one(), q.denom().clone());
        ExactScalar::quadratic(Q::zero(), inv, n)
    }

    pub fn is_rational(&self) -> bool {
        matches!(self, ExactScalar::Rational(_))
    }

    pub fn as_rational(&self) -> Option<&Q> {
        match self {
            ExactScalar::Rational(q) => Some(q),
            _ => None,
        }
    }

    /// Parts `(a, b, d)` with `d = 1` and `b = 0` for rationals.
    pub fn parts(&self) -> (Q, Q, BigInt) {
        match self {
            ExactScalar::Rational(q) => (q.clone(), Q::zero(), BigInt::one()),
            ExactScalar::Quadratic { a, b, d } => (a.clone(), b.clone(), d.clone()),
        }
    }

    pub fn radicand(&self) -> Option<&BigInt> {
        match self {
            ExactScalar::Rational(_) => None,
            ExactScalar::Quadratic { d, .. } => Some(d),
        }
    }

    /// The Galois conjugate `a − b√d`.
    pub fn conjugate(&self) -> Self {
        match self {
            ExactScalar::Rational(_) => self.clone(),
            ExactScalar::Quadratic { a, b, d } => ExactScalar::Quadratic {
                a: a.clone(),
                b: -b.clone(),
                d: d.clone(),
            },
        }
    }

    pub fn mul_rational(&self, k: &Q) -> Self {
        let (a, b, d) = self.parts();
        ExactScalar::quadratic(a * k, b * k, d)
    }

    pub fn add_rational(&self, k: &Q) -> Self {
        let (a, b, d) = self.parts();
        ExactScalar::quadratic(a + k, b, d)
    }

    pub fn neg(&self) -> Self {
        self.mul_rational(&-Q::one())
    }

    /// Sum of two values, defined when they share a field.
    pub fn checked_add(&self, other: &Self) -> Option<Self> {
        let (a1, b1, d1) = self.parts();
        let (a2, b2, d2) = other.parts();
        if b1.is_zero() {
            return Some(ExactScalar::quadratic(a1 + a2, b2, d2));
        }
        if b2.is_zero() || d1 == d2 {
            return Some(ExactScalar::quadratic(a1 + a2, b1 + b2, d1));
        }
        None
    }

    pub fn checked_sub(&self, other: &Self) -> Option<Self> {
        self.checked_add(&other.neg())
    }

    /// Product of two values, defined when they share a field.
    pub fn checked_mul(&self, other: &Self) -> Option<Self> {
        let (a1, b1, d1) = self.parts();
        let (a2, b2, d2) = other.parts();
        if b1.is_zero() {
            return Some(other.mul_rational(&a1));
        }
        if b2.is_zero() {
            return Some(self.mul_rational(&a2));
        }
        if d1 != d2 {
            return None;
        }
        let dq = int_to_q(d1.clone());
        Some(ExactScalar::quadratic(
            &a1 * &a2 + &b1 * &b2 * dq,
            a1 * b2 + a2 * b1,
            d1,
        ))
    }

    /// Sign of the value: −1, 0 or 1.
    pub fn signum(&self) -> i8 {
        let (a, b, d) = self.parts();
        sign_two(&a, &b, &int_to_q(d))
    }

    /// Exact total order on the reals.
    pub fn compare(&self, other: &Self) -> Ordering {
        let (a1, b1, d1) = self.parts();
        let (a2, b2, d2) = other.parts();
        let alpha = a1 - a2;
        let s = if d1 == d2 {
            sign_two(&alpha, &(b1 - b2), &int_to_q(d1))
        } else {
            sign_three(&alpha, &b1, &int_to_q(d1), &(-b2), &int_to_q(d2))
        };
        s.cmp(&0)
    }

    /// Lossy conversion for display and heuristics only.
    pub fn to_f64(&self) -> f64 {
        let (a, b, d) = self.parts();
        let af = a.to_f64().unwrap_or(f64::NAN);
        let bf = b.to_f64().unwrap_or(f64::NAN);
        let df = d.to_f64().unwrap_or(f64::NAN);
        af + bf * df.sqrt()
    }

    /// A rational strictly between `self` and `other` (`self < other`).
    pub fn rational_between(&self, other: &Self) -> Q {
        debug_assert_eq!(self.compare(other), Ordering::Less);
        let lo = self.rational_floor();
        let hi = other.rational_ceil();
        let mut lo_q = lo;
        let mut hi_q = hi;
        // bisect on rationals bracketing the two values until the midpoint separates them
        loop {
            let mid = (&lo_q + &hi_q) / Q::from_integer(BigInt::from(2));
            let m = ExactScalar::Rational(mid.clone());
            let c1 = self.compare(&m);
            let c2 = m.compare(other);
            if c1 == Ordering::Less && c2 == Ordering::Less {
                return mid;
            }
            if c1 != Ordering::Less {
                lo_q = mid;
            } else {
                hi_q = mid;
            }
        }
    }

    fn rational_floor(&self) -> Q {
        match self {
            ExactScalar::Rational(q) => q.floor(),
            _ => {
                let mut f = Q::from_integer(BigInt::from(self.to_f64().floor() as i64));
                while ExactScalar::Rational(f.clone()).compare(self) == Ordering::Greater {
                    f -= Q::one();
                }
                f
            }
        }
    }

    fn rational_ceil(&self) -> Q {
        match self {
            ExactScalar::Rational(q) => q.ceil(),
            _ => {
                let mut c = Q::from_integer(BigInt::from(self.to_f64().ceil() as i64));
                while ExactScalar::Rational(c.clone()).compare(self) == Ordering::Less {
                    c += Q::one();
                }
                c
            }
        }
    }
}

impl PartialEq for ExactScalar {
    fn eq(&self, other: &Self) -> bool {
        self.compare(other) == Ordering::Equal
    }
}

impl Eq for ExactScalar {}

impl PartialOrd for ExactScalar {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.compare(other))
    }
}

impl Ord for ExactScalar {
    fn cmp(&self, other: &Self) -> Ordering {
        self.compare(other)
    }
}

impl From<Q> for ExactScalar {
    fn from(q: Q) -> Self {
        ExactScalar::Rational(q)
    }
}

pub fn fmt_q(q: &Q) -> String {
    if q.denom().is_one() {
        q.numer().to_string()
    } else {
        format!("{}/{}", q.numer(), q.denom())
    }
}

impl fmt::Display for ExactScalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ExactScalar::Rational(q) => write!(f, "{}", fmt_q(q)),
            ExactScalar::Quadratic { a, b, d } => {
                write!(f, "{} + {}·√{}", fmt_q(a), fmt_q(b), d)
            }
        }
    }
}

/// `{"rat":"p/q"}` or `{"quad":{"a":"p/q","b":"p/q","d":n}}`.
impl serde::Serialize for ExactScalar {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        use serde::ser::SerializeMap;
        let mut m = s.serialize_map(Some(1))?;
        match self {
            ExactScalar::Rational(q) => m.serialize_entry("rat", &fmt_q(q))?,
            ExactScalar::Quadratic { a, b, d } => {
                #[derive(serde::Serialize)]
                struct Quad {
                    a: String,
                    b: String,
                    d: serde_json::Value,
                }
                let d = match d.to_i64() {
                    Some(v) => serde_json::Value::from(v),
                    None => serde_json::Value::from(d.to_string()),
                };
                m.serialize_entry("quad", &Quad { a: fmt_q(a), b: fmt_q(b), d })?
            }
        }
        m.end()
    }
}

/// Parses `"p/q"` or an integer.
pub fn parse_q(s: &str) -> Option<Q> {
    let s = s.trim();
    if let Some((n, d)) = s.split_once('/') {
        let n: BigInt = n.trim().parse().ok()?;
        let d: BigInt = d.trim().parse().ok()?;
        if d.is_zero() {
            return None;
        }
        Some(Q::new(n, d))
    } else {
        let n: BigInt = s.parse().ok()?;
        Some(Q::from_integer(n))
    }
}

pub fn q(n: i64, d: i64) -> Q {
    Q::new(BigInt::from(n), BigInt::from(d))
}

pub fn qi(n: i64) -> Q {
    Q::from_integer(BigInt::from(n))
}

/// `true` when `n` is an integer perfect square.
pub fn is_square(n: &BigInt) -> bool {
    if n.is_negative() {
        return false;
    }
    let r = n.sqrt();
    &r * &r == *n
}

/// Rational square root when it exists.
pub fn rational_sqrt(x: &Q) -> Option<Q> {
    if x.is_negative() {
        return None;
    }
    let (n, d) = (x.numer(), x.denom());
    if is_square(n) && is_square(d) {
        Some(Q::new(n.sqrt(), d.sqrt()))
    } else {
        None
    }
}
