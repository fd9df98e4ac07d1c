//! The Artin action of braids on the free group of a punctured fiber.

use serde::Serialize;
use sha2::{Digest, Sha256};

use crate::word::FreeWord;

/// An automorphism of the free group on Γ₁..Γₙ coming from a braid.
///
/// The braid is kept as a word in elementary half-twists (`i` for the
/// positive twist at `i`, `-i` for its inverse) so that inverses and the
/// permutation image are available without solving word equations.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ArtinAutomorphism {
    n: usize,
    images: Vec<FreeWord>,
    braid: Vec<i32>,
}

fn elementary_images(n: usize, s: i32) -> Vec<FreeWord> {
    let i = s.unsigned_abs() as usize;
    assert!(i >= 1 && i < n, "twist index {i} out of range for {n} strands");
    let mut images: Vec<FreeWord> = (1..=n).map(FreeWord::gen).collect();
    let gi = i as i32;
    let gj = gi + 1;
    if s > 0 {
        // Γᵢ ↦ Γᵢ Γᵢ₊₁ Γᵢ⁻¹, Γᵢ₊₁ ↦ Γᵢ
        images[i - 1] = FreeWord::from_letters([gi, gj, -gi]);
        images[i] = FreeWord::gen(i);
    } else {
        // Γᵢ ↦ Γᵢ₊₁, Γᵢ₊₁ ↦ Γᵢ₊₁⁻¹ Γᵢ Γᵢ₊₁
        images[i - 1] = FreeWord::gen(i + 1);
        images[i] = FreeWord::from_letters([-gj, gi, gj]);
    }
    images
}

/// Positive word of the half-twist on the block `a..=b`.
pub fn garside_word(a: usize, b: usize) -> Vec<i32> {
    let mut w = Vec::new();
    for top in (a..b).rev() {
        for i in a..=top {
            w.push(i as i32);
        }
    }
    w
}

impl ArtinAutomorphism {
    pub fn identity(n: usize) -> Self {
        ArtinAutomorphism { n, images: (1..=n).map(FreeWord::gen).collect(), braid: Vec::new() }
    }

    /// The elementary half-twist at `i` (`s = i`) or its inverse (`s = -i`).
    pub fn elementary(n: usize, s: i32) -> Self {
        ArtinAutomorphism { n, images: elementary_images(n, s), braid: vec![s] }
    }

    /// The automorphism of a braid word: `A(s₁) ∘ A(s₂) ∘ ⋯`.
    pub fn from_braid(n: usize, braid: &[i32]) -> Self {
        let mut images: Vec<FreeWord> = (1..=n).map(FreeWord::gen).collect();
        // (f ∘ A(s))(Γ) = f(A(s)(Γ)): substitute current images into A(s)'s images
        for &s in braid {
            let e = elementary_images(n, s);
            images = e.iter().map(|w| w.substitute(&images)).collect();
        }
        ArtinAutomorphism { n, images, braid: braid.to_vec() }
    }

    /// The positive half-twist Δ⟨a,b⟩ on the block `a..=b`.
    pub fn half_twist_block(a: usize, b: usize, n: usize) -> Self {
        assert!(1 <= a && a < b && b <= n, "bad block [{a},{b}] in {n} strands");
        ArtinAutomorphism::from_braid(n, &garside_word(a, b))
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn images(&self) -> &[FreeWord] {
        &self.images
    }

    pub fn braid(&self) -> &[i32] {
        &self.braid
    }

    pub fn image(&self, i: usize) -> &FreeWord {
        &self.images[i - 1]
    }

    pub fn apply(&self, w: &FreeWord) -> FreeWord {
        w.substitute(&self.images)
    }

    /// `self ∘ other`.
    pub fn compose(&self, other: &ArtinAutomorphism) -> ArtinAutomorphism {
        assert_eq!(self.n, other.n);
        let images = other.images.iter().map(|w| w.substitute(&self.images)).collect();
        let mut braid = self.braid.clone();
        braid.extend_from_slice(&other.braid);
        ArtinAutomorphism { n: self.n, images, braid }
    }

    pub fn inverse(&self) -> ArtinAutomorphism {
        let braid: Vec<i32> = self.braid.iter().rev().map(|s| -s).collect();
        ArtinAutomorphism::from_braid(self.n, &braid)
    }

    pub fn is_identity(&self) -> bool {
        self.images.iter().enumerate().all(|(k, w)| *w == FreeWord::gen(k + 1))
    }

    /// `perm[i-1] = j` when Γᵢ maps to a conjugate of Γⱼ.
    pub fn permutation(&self) -> Option<Vec<usize>> {
        self.images.iter().map(|w| w.as_conjugate_of_generator().map(|(_, g)| g)).collect()
    }

    /// Permutation of the braid word computed from transpositions only.
    pub fn braid_permutation(&self) -> Vec<usize> {
        let mut perm: Vec<usize> = (1..=self.n).collect();
        for &s in self.braid.iter().rev() {
            let i = s.unsigned_abs() as usize;
            for p in perm.iter_mut() {
                if *p == i {
                    *p = i + 1;
                } else if *p == i + 1 {
                    *p = i;
                }
            }
        }
        perm
    }

    /// SHA-256 over the image words, hex encoded.
    pub fn fingerprint(&self) -> String {
        let mut h = Sha256::new();
        for w in &self.images {
            h.update(w.to_string().as_bytes());
            h.update(b";");
        }
        h.finalize().iter().map(|b| format!("{b:02x}")).collect()
    }
}
