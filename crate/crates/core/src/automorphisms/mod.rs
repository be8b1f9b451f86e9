//! Endomorphisms and automorphisms of a free group, written on the right:
//! `apply(φ, w)` is `wφ` and `compose(φ, ψ)` maps `w` to `(wφ)ψ`.

mod nielsen;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::words::{parse_word, push_reduced, Alphabet, Letter, Word};

/// Default cap on the length of any intermediate word.
pub const DEFAULT_WORD_CAP: usize = 1_000_000;

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct FreeEndomorphism {
    alphabet: Alphabet,
    images: Vec<Word>,
}

impl FreeEndomorphism {
    pub fn new(alphabet: Alphabet, images: Vec<Word>) -> Result<FreeEndomorphism> {
        if images.len() != alphabet.size() {
            return Err(Error::RankMismatch(format!(
                "{} images for {} generators",
                images.len(),
                alphabet.size()
            )));
        }
        for w in &images {
            w.check_alphabet(&alphabet)?;
        }
        Ok(FreeEndomorphism { alphabet, images })
    }

    pub fn identity(alphabet: Alphabet) -> FreeEndomorphism {
        let images = alphabet.generators().map(Word::letter).collect();
        FreeEndomorphism { alphabet, images }
    }

    pub fn alphabet(&self) -> Alphabet {
        self.alphabet
    }

    pub fn images(&self) -> &[Word] {
        &self.images
    }

    pub fn image(&self, generator: Letter) -> Option<&Word> {
        self.alphabet.slot(generator).map(|s| &self.images[s])
    }

    pub fn is_identity(&self) -> bool {
        self.alphabet
            .generators()
            .zip(&self.images)
            .all(|(g, w)| w.len() == 1 && w.letters()[0] == g)
    }

    pub fn apply(&self, w: &Word) -> Result<Word> {
        self.apply_capped(w, DEFAULT_WORD_CAP)
    }

    /// Substitutes and reduces, failing once the partial result exceeds `cap`.
    pub fn apply_capped(&self, w: &Word, cap: usize) -> Result<Word> {
        let mut buf = Vec::with_capacity(w.len());
        for &l in w.letters() {
            let slot = self.alphabet.slot(l).ok_or_else(|| Error::LetterOutOfRange {
                letter: l.to_string(),
                alphabet: self.alphabet.to_string(),
            })?;
            self.push_image(&mut buf, slot, l.is_positive());
            if buf.len() > cap {
                return Err(Error::BudgetExceeded { length: buf.len(), cap });
            }
        }
        Ok(Word::from_reduced(buf))
    }

    pub(crate) fn push_image(&self, buf: &mut Vec<Letter>, slot: usize, positive: bool) {
        let image = self.images[slot].letters();
        if positive {
            for &m in image {
                push_reduced(buf, m);
            }
        } else {
            for &m in image.iter().rev() {
                push_reduced(buf, m.inverse());
            }
        }
    }

    pub fn compose(&self, other: &FreeEndomorphism) -> Result<FreeEndomorphism> {
        self.compose_capped(other, DEFAULT_WORD_CAP)
    }

    /// `w ↦ (w self) other`.
    pub fn compose_capped(&self, other: &FreeEndomorphism, cap: usize) -> Result<FreeEndomorphism> {
        if self.alphabet != other.alphabet {
            return Err(Error::RankMismatch(format!(
                "cannot compose maps over {} and {}",
                self.alphabet, other.alphabet
            )));
        }
        let images = self
            .images
            .iter()
            .map(|w| other.apply_capped(w, cap))
            .collect::<Result<_>>()?;
        Ok(FreeEndomorphism { alphabet: self.alphabet, images })
    }

    fn total_len(&self) -> usize {
        self.images.iter().map(Word::len).sum()
    }
}

/// An automorphism together with a verified inverse.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct FreeAutomorphism {
    forward: FreeEndomorphism,
    inverse: FreeEndomorphism,
}

impl FreeAutomorphism {
    /// Validates `images` and computes the inverse by Nielsen reduction.
    pub fn from_images(alphabet: Alphabet, images: Vec<Word>) -> Result<FreeAutomorphism> {
        let forward = FreeEndomorphism::new(alphabet, images)?;
        let inverse_images = nielsen::invert(&alphabet, &forward.images, DEFAULT_WORD_CAP)?;
        let inverse = FreeEndomorphism::new(alphabet, inverse_images)?;
        FreeAutomorphism::checked(forward, inverse)
    }

    /// Builds from both directions; the claimed inverse is verified, never trusted.
    pub fn with_inverse(
        alphabet: Alphabet,
        images: Vec<Word>,
        inverse_images: Vec<Word>,
    ) -> Result<FreeAutomorphism> {
        let forward = FreeEndomorphism::new(alphabet, images)?;
        let inverse = FreeEndomorphism::new(alphabet, inverse_images)?;
        FreeAutomorphism::checked(forward, inverse)
    }

    fn checked(forward: FreeEndomorphism, inverse: FreeEndomorphism) -> Result<FreeAutomorphism> {
        for (slot, g) in forward.alphabet.generators().enumerate() {
            let there_and_back = inverse.apply(&forward.images[slot])?;
            let back_and_there = forward.apply(&inverse.images[slot])?;
            if there_and_back != Word::letter(g) || back_and_there != Word::letter(g) {
                return Err(Error::NotAnAutomorphism(format!(
                    "supplied inverse does not invert the image of {g}"
                )));
            }
        }
        Ok(FreeAutomorphism { forward, inverse })
    }

    pub fn identity(alphabet: Alphabet) -> FreeAutomorphism {
        let id = FreeEndomorphism::identity(alphabet);
        FreeAutomorphism { forward: id.clone(), inverse: id }
    }

    /// The inner automorphism `x ↦ y⁻¹ x y`.
    pub fn inner(y: &Word, alphabet: Alphabet) -> Result<FreeAutomorphism> {
        y.check_alphabet(&alphabet)?;
        let yi = y.inverse();
        let forward = alphabet.generators().map(|g| y.conjugate(&Word::letter(g))).collect();
        let inverse = alphabet.generators().map(|g| yi.conjugate(&Word::letter(g))).collect();
        Ok(FreeAutomorphism {
            forward: FreeEndomorphism { alphabet, images: forward },
            inverse: FreeEndomorphism { alphabet, images: inverse },
        })
    }

    pub fn alphabet(&self) -> Alphabet {
        self.forward.alphabet
    }

    pub fn rank(&self) -> u32 {
        self.forward.alphabet.rank
    }

    pub fn forward(&self) -> &FreeEndomorphism {
        &self.forward
    }

    pub fn backward(&self) -> &FreeEndomorphism {
        &self.inverse
    }

    pub fn images(&self) -> &[Word] {
        &self.forward.images
    }

    pub fn inverse_images(&self) -> &[Word] {
        &self.inverse.images
    }

    pub fn is_identity(&self) -> bool {
        self.forward.is_identity()
    }

    pub fn inverse(&self) -> FreeAutomorphism {
        FreeAutomorphism { forward: self.inverse.clone(), inverse: self.forward.clone() }
    }

    pub fn apply(&self, w: &Word) -> Result<Word> {
        self.forward.apply(w)
    }

    pub fn apply_capped(&self, w: &Word, cap: usize) -> Result<Word> {
        self.forward.apply_capped(w, cap)
    }

    pub fn apply_inverse(&self, w: &Word) -> Result<Word> {
        self.inverse.apply(w)
    }

    pub fn apply_inverse_capped(&self, w: &Word, cap: usize) -> Result<Word> {
        self.inverse.apply_capped(w, cap)
    }

    /// `wφ^k` by repeated application; negative `k` uses the inverse.
    pub fn apply_power_capped(&self, w: &Word, k: i64, cap: usize) -> Result<Word> {
        let step = if k >= 0 { &self.forward } else { &self.inverse };
        let mut cur = w.clone();
        for _ in 0..k.unsigned_abs() {
            cur = step.apply_capped(&cur, cap)?;
        }
        Ok(cur)
    }

    pub fn compose(&self, other: &FreeAutomorphism) -> Result<FreeAutomorphism> {
        self.compose_capped(other, DEFAULT_WORD_CAP)
    }

    /// `w ↦ (w self) other`; the inverse is `other⁻¹` followed by `self⁻¹`.
    pub fn compose_capped(&self, other: &FreeAutomorphism, cap: usize) -> Result<FreeAutomorphism> {
        Ok(FreeAutomorphism {
            forward: self.forward.compose_capped(&other.forward, cap)?,
            inverse: other.inverse.compose_capped(&self.inverse, cap)?,
        })
    }

    pub fn power(&self, k: i64) -> Result<FreeAutomorphism> {
        self.power_capped(k, DEFAULT_WORD_CAP)
    }

    /// `self^k` by square-and-multiply; negative `k` uses the stored inverse.
    pub fn power_capped(&self, k: i64, cap: usize) -> Result<FreeAutomorphism> {
        let base = if k < 0 { self.inverse() } else { self.clone() };
        let mut e = k.unsigned_abs();
        let mut acc = FreeAutomorphism::identity(self.alphabet());
        let mut sq = base;
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.compose_capped(&sq, cap)?;
            }
            e >>= 1;
            if e > 0 {
                sq = sq.compose_capped(&sq, cap)?;
            }
        }
        Ok(acc)
    }

    /// Total length of the forward images.
    pub fn size(&self) -> usize {
        self.forward.total_len()
    }

    pub fn to_spec(&self) -> AutomorphismSpec {
        AutomorphismSpec {
            rank: Some(self.rank()),
            images: self.images().iter().map(|w| w.to_string()).collect(),
            inverse_images: Some(self.inverse_images().iter().map(|w| w.to_string()).collect()),
        }
    }

    pub fn from_spec(spec: &AutomorphismSpec) -> Result<FreeAutomorphism> {
        let alphabet = Alphabet::new(spec.rank.unwrap_or(spec.images.len() as u32));
        let parse = |xs: &[String]| -> Result<Vec<Word>> { xs.iter().map(|s| parse_word(s)).collect() };
        let images = parse(&spec.images)?;
        match &spec.inverse_images {
            Some(inv) => FreeAutomorphism::with_inverse(alphabet, images, parse(inv)?),
            None => FreeAutomorphism::from_images(alphabet, images),
        }
    }
}

/// JSON form `{"rank": n?, "images": [...], "inverse_images": [...]?}`; the
/// rank defaults to the number of images.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct AutomorphismSpec {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub rank: Option<u32>,
    pub images: Vec<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub inverse_images: Option<Vec<String>>,
}

pub fn apply(phi: &FreeEndomorphism, w: &Word) -> Result<Word> {
    phi.apply(w)
}

pub fn compose(phi: &FreeEndomorphism, psi: &FreeEndomorphism) -> Result<FreeEndomorphism> {
    phi.compose(psi)
}

pub fn power(phi: &FreeAutomorphism, k: i64) -> Result<FreeAutomorphism> {
    phi.power(k)
}

pub fn invert_and_validate(alphabet: Alphabet, images: Vec<Word>) -> Result<FreeAutomorphism> {
    FreeAutomorphism::from_images(alphabet, images)
}

pub fn inner(y: &Word, alphabet: Alphabet) -> Result<FreeAutomorphism> {
    FreeAutomorphism::inner(y, alphabet)
}

/// `w_{φ,p} = (wφ^{p-1}) ⋯ (wφ) w`.
pub fn twisted_power(w: &Word, phi: &FreeAutomorphism, p: u64) -> Result<Word> {
    twisted_power_capped(w, phi, p, DEFAULT_WORD_CAP)
}

pub fn twisted_power_capped(w: &Word, phi: &FreeAutomorphism, p: u64, cap: usize) -> Result<Word> {
    if p < 1 {
        return Err(Error::InvalidArgument("twisted power needs p >= 1".into()));
    }
    let mut acc = w.clone();
    let mut cur = w.clone();
    for _ in 1..p {
        cur = phi.apply_capped(&cur, cap)?;
        acc = cur.mul(&acc);
        if acc.len() > cap {
            return Err(Error::BudgetExceeded { length: acc.len(), cap });
        }
    }
    Ok(acc)
}

/// Extends `φ` to `F * ⟨z⟩` by `z ↦ u z u⁻¹`.
pub fn extend_with_z(phi: &FreeAutomorphism, u: &Word) -> Result<FreeAutomorphism> {
    if phi.alphabet().with_z {
        return Err(Error::InvalidArgument("automorphism already involves z".into()));
    }
    if u.contains_z() {
        return Err(Error::InvalidArgument("the twisting word must not contain z".into()));
    }
    u.check_alphabet(&phi.alphabet())?;
    let alphabet = phi.alphabet().with_z();
    let z = Word::z();
    let mut images = vec![Word::product([u, &z, &u.inverse()])];
    images.extend(phi.images().iter().cloned());
    let a = phi.apply_inverse(u)?;
    let mut inverse = vec![Word::product([&a.inverse(), &z, &a])];
    inverse.extend(phi.inverse_images().iter().cloned());
    FreeAutomorphism::with_inverse(alphabet, images, inverse)
}
