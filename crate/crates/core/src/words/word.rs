use std::fmt;

use super::cyclic::CyclicWord;
use super::letter::{Alphabet, Letter};
use crate::error::{Error, Result};

/// A freely reduced word. The empty word is the identity.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct Word(Vec<Letter>);

impl Word {
    pub fn identity() -> Word {
        Word(Vec::new())
    }

    pub fn letter(l: Letter) -> Word {
        Word(vec![l])
    }

    pub fn generator(index: u32) -> Word {
        Word::letter(Letter::generator(index))
    }

    pub fn z() -> Word {
        Word::letter(Letter::z())
    }

    /// Freely reduces an arbitrary letter sequence.
    pub fn from_letters<I: IntoIterator<Item = Letter>>(letters: I) -> Word {
        let mut out: Vec<Letter> = Vec::new();
        for l in letters {
            push_reduced(&mut out, l);
        }
        Word(out)
    }

    /// Wraps letters that the caller guarantees are already reduced.
    pub(crate) fn from_reduced(letters: Vec<Letter>) -> Word {
        debug_assert!(letters.windows(2).all(|p| p[0] != p[1].inverse()));
        Word(letters)
    }

    pub fn letters(&self) -> &[Letter] {
        &self.0
    }

    pub fn into_letters(self) -> Vec<Letter> {
        self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn is_identity(&self) -> bool {
        self.0.is_empty()
    }

    pub fn first(&self) -> Option<Letter> {
        self.0.first().copied()
    }

    pub fn last(&self) -> Option<Letter> {
        self.0.last().copied()
    }

    pub fn contains_z(&self) -> bool {
        self.0.iter().any(|l| l.is_z())
    }

    pub fn max_index(&self) -> u32 {
        self.0.iter().map(|l| l.index()).max().unwrap_or(0)
    }

    pub fn check_alphabet(&self, alphabet: &Alphabet) -> Result<()> {
        match self.0.iter().find(|l| !alphabet.contains(**l)) {
            Some(l) => Err(Error::LetterOutOfRange {
                letter: l.to_string(),
                alphabet: alphabet.to_string(),
            }),
            None => Ok(()),
        }
    }

    pub fn inverse(&self) -> Word {
        Word(self.0.iter().rev().map(|l| l.inverse()).collect())
    }

    pub fn mul(&self, other: &Word) -> Word {
        let common = self
            .0
            .iter()
            .rev()
            .zip(other.0.iter())
            .take_while(|(a, b)| **a == b.inverse())
            .count();
        let mut out = Vec::with_capacity(self.len() + other.len() - 2 * common);
        out.extend_from_slice(&self.0[..self.len() - common]);
        out.extend_from_slice(&other.0[common..]);
        Word(out)
    }

    /// Reduced product of the factors, left to right.
    pub fn product<'a, I: IntoIterator<Item = &'a Word>>(factors: I) -> Word {
        let mut out = Vec::new();
        for w in factors {
            for &l in &w.0 {
                push_reduced(&mut out, l);
            }
        }
        Word(out)
    }

    pub fn pow(&self, exponent: i64) -> Word {
        if exponent < 0 {
            return self.inverse().pow(-exponent);
        }
        if exponent == 0 || self.is_identity() {
            return Word::identity();
        }
        let (core, conj) = self.cyclic_reduce();
        let mut letters = Vec::with_capacity(core.len() * exponent as usize + 2 * conj.len());
        letters.extend(conj.inverse().0);
        for _ in 0..exponent {
            letters.extend_from_slice(core.letters());
        }
        letters.extend_from_slice(&conj.0);
        Word::from_reduced(letters)
    }

    /// `self⁻¹ · w · self`.
    pub fn conjugate(&self, w: &Word) -> Word {
        Word::product([&self.inverse(), w, self])
    }

    pub fn is_cyclically_reduced(&self) -> bool {
        match (self.first(), self.last()) {
            (Some(f), Some(l)) => self.len() == 1 || f != l.inverse(),
            _ => true,
        }
    }

    /// Splits `self = c⁻¹ · core · c` with `core` cyclically reduced.
    pub fn cyclic_reduce(&self) -> (CyclicWord, Word) {
        let n = self.len();
        let mut k = 0;
        while 2 * k + 1 < n && self.0[k] == self.0[n - 1 - k].inverse() {
            k += 1;
        }
        let core = self.0[k..n - k].to_vec();
        let conj = Word(self.0[n - k..].to_vec());
        (CyclicWord::from_reduced(core), conj)
    }

    pub fn cyclic_len(&self) -> usize {
        self.cyclic_reduce().0.len()
    }
}

pub(crate) fn push_reduced(buf: &mut Vec<Letter>, l: Letter) {
    if buf.last() == Some(&l.inverse()) {
        buf.pop();
    } else {
        buf.push(l);
    }
}

/// Freely reduces `raw`, rejecting letters outside `alphabet`.
pub fn reduce(raw: &[Letter], alphabet: &Alphabet) -> Result<Word> {
    if let Some(l) = raw.iter().find(|l| !alphabet.contains(**l)) {
        return Err(Error::LetterOutOfRange {
            letter: l.to_string(),
            alphabet: alphabet.to_string(),
        });
    }
    Ok(Word::from_letters(raw.iter().copied()))
}

impl fmt::Debug for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Word({})", self)
    }
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&super::syntax::render(self))
    }
}

impl std::str::FromStr for Word {
    type Err = Error;

    /// Accepts the auxiliary letter; use [`super::parse_word`] for user input.
    fn from_str(s: &str) -> Result<Word> {
        super::syntax::parse_extended(s)
    }
}

impl serde::Serialize for Word {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&super::syntax::render(self))
    }
}

impl<'de> serde::Deserialize<'de> for Word {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Word, D::Error> {
        let text = String::deserialize(d)?;
        super::syntax::parse_extended(&text).map_err(serde::de::Error::custom)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn w(s: &str) -> Word {
        s.parse().unwrap()
    }

    #[test]
    fn reduce_examples() {
        let alpha = Alphabet::new(2);
        let raw = |s: &str| -> Vec<Letter> {
            s.chars()
                .map(|c| {
                    let i = c.to_ascii_lowercase() as u32 - 'a' as u32 + 1;
                    Letter::new(i, c.is_ascii_lowercase())
                })
                .collect()
        };
        assert_eq!(reduce(&raw("aA"), &alpha).unwrap(), Word::identity());
        assert_eq!(reduce(&raw("abBA"), &alpha).unwrap(), Word::identity());
        assert_eq!(reduce(&raw("aBba"), &alpha).unwrap(), w("aa"));
        assert!(matches!(
            reduce(&raw("ac"), &alpha),
            Err(Error::LetterOutOfRange { .. })
        ));
    }

    #[test]
    fn cyclic_reduce_examples() {
        let (core, c) = w("Aba").cyclic_reduce();
        assert_eq!(core.as_word(), w("b"));
        assert_eq!(c, w("a"));
        let (core, c) = w("ab").cyclic_reduce();
        assert_eq!(core.as_word(), w("ab"));
        assert_eq!(c, Word::identity());
        let (core, c) = w("Bab").cyclic_reduce();
        assert_eq!(core.as_word(), w("a"));
        assert_eq!(c, w("b"));
    }

    #[test]
    fn mul_and_pow() {
        assert_eq!(w("abA").mul(&w("aB")), w("a"));
        assert_eq!(w("ab").mul(&w("BA")), Word::identity());
        assert_eq!(w("Aba").pow(3), w("Abbba"));
        assert_eq!(w("Aba").pow(-2), w("ABBa"));
        assert_eq!(w("Aba").pow(0), Word::identity());
        assert_eq!(Word::identity().pow(5), Word::identity());
        assert_eq!(w("b").conjugate(&w("a")), w("Bab"));
    }

    #[test]
    fn cyclically_reduced() {
        assert!(w("a").is_cyclically_reduced());
        assert!(w("ab").is_cyclically_reduced());
        assert!(!w("abA").is_cyclically_reduced());
        assert!(Word::identity().is_cyclically_reduced());
    }
}
