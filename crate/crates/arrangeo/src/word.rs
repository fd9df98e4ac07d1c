//! Reduced words in the free group on Γ₁, …, Γₙ.
//!
//! A letter is a non-zero `i32`: `i` stands for Γᵢ and `-i` for Γᵢ⁻¹.

use std::fmt;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct FreeWord(Vec<i32>);

impl FreeWord {
    pub fn identity() -> Self {
        FreeWord(Vec::new())
    }

    pub fn gen(i: usize) -> Self {
        FreeWord(vec![i as i32])
    }

    /// Builds a word from letters, reducing freely.
    pub fn from_letters<I: IntoIterator<Item = i32>>(letters: I) -> Self {
        let mut out: Vec<i32> = Vec::new();
        for l in letters {
            assert!(l != 0, "letter 0 is not a generator");
            if out.last() == Some(&-l) {
                out.pop();
            } else {
                out.push(l);
            }
        }
        FreeWord(out)
    }

    pub fn letters(&self) -> &[i32] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn inverse(&self) -> Self {
        FreeWord(self.0.iter().rev().map(|l| -l).collect())
    }

    pub fn mul(&self, other: &FreeWord) -> FreeWord {
        FreeWord::from_letters(self.0.iter().chain(other.0.iter()).copied())
    }

    /// `c · self · c⁻¹`.
    pub fn conjugate_by(&self, c: &FreeWord) -> FreeWord {
        c.mul(self).mul(&c.inverse())
    }

    pub fn product<'a, I: IntoIterator<Item = &'a FreeWord>>(words: I) -> FreeWord {
        FreeWord::from_letters(words.into_iter().flat_map(|w| w.0.iter().copied()))
    }

    /// Largest generator index occurring in the word.
    pub fn max_gen(&self) -> usize {
        self.0.iter().map(|l| l.unsigned_abs() as usize).max().unwrap_or(0)
    }

    /// Replaces every Γᵢ by `images[i-1]`.
    pub fn substitute(&self, images: &[FreeWord]) -> FreeWord {
        let mut out = Vec::new();
        for &l in &self.0 {
            let w = &images[l.unsigned_abs() as usize - 1];
            if l > 0 {
                out.extend_from_slice(&w.0);
            } else {
                out.extend(w.0.iter().rev().map(|x| -x));
            }
        }
        FreeWord::from_letters(out)
    }

    /// Splits `w Γᵢ w⁻¹` into `(w, i)`; `None` for other shapes.
    pub fn as_conjugate_of_generator(&self) -> Option<(FreeWord, usize)> {
        let n = self.0.len();
        if n % 2 == 0 {
            return None;
        }
        let mid = n / 2;
        let g = self.0[mid];
        if g <= 0 {
            return None;
        }
        for k in 0..mid {
            if self.0[k] != -self.0[n - 1 - k] {
                return None;
            }
        }
        Some((FreeWord(self.0[..mid].to_vec()), g as usize))
    }

    /// The exponent sum of each generator (length `n`).
    pub fn abelian(&self, n: usize) -> Vec<i64> {
        let mut v = vec![0i64; n];
        for &l in &self.0 {
            v[l.unsigned_abs() as usize - 1] += l.signum() as i64;
        }
        v
    }

    /// Cyclic reduction: strips `x … x⁻¹` from the ends.
    pub fn cyclically_reduced(&self) -> FreeWord {
        let mut s = 0;
        let mut e = self.0.len();
        while e > s + 1 && self.0[s] == -self.0[e - 1] {
            s += 1;
            e -= 1;
        }
        FreeWord(self.0[s..e].to_vec())
    }

    /// Parses the compact syntax `"3 2 1 -2 -3"`; the empty string is the identity.
    pub fn parse(s: &str) -> Option<FreeWord> {
        let mut letters = Vec::new();
        for tok in s.split_whitespace() {
            let l: i32 = tok.parse().ok()?;
            if l == 0 {
                return None;
            }
            letters.push(l);
        }
        Some(FreeWord::from_letters(letters))
    }
}

impl fmt::Display for FreeWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(|l| l.to_string()).collect();
        write!(f, "{}", parts.join(" "))
    }
}

impl Serialize for FreeWord {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

impl<'de> Deserialize<'de> for FreeWord {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        FreeWord::parse(&s).ok_or_else(|| serde::de::Error::custom(format!("bad word {s:?}")))
    }
}
