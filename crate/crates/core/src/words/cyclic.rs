use std::hash::{Hash, Hasher};

use super::letter::Letter;
use super::word::Word;

/// A cyclically reduced word, compared up to rotation.
///
/// The lexicographically least rotation (under the `Letter` order) is found
/// once at construction with Booth's algorithm; equality and hashing use it.
#[derive(Clone, Debug)]
pub struct CyclicWord {
    letters: Vec<Letter>,
    least: usize,
}

impl CyclicWord {
    pub(crate) fn from_reduced(letters: Vec<Letter>) -> CyclicWord {
        let least = least_rotation(&letters);
        CyclicWord { letters, least }
    }

    /// Cyclic core of `w`.
    pub fn new(w: &Word) -> CyclicWord {
        w.cyclic_reduce().0
    }

    pub fn letters(&self) -> &[Letter] {
        &self.letters
    }

    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }

    /// The stored representative as a plain word.
    pub fn as_word(&self) -> Word {
        Word::from_reduced(self.letters.clone())
    }

    pub fn canonical(&self) -> Vec<Letter> {
        self.rotation(self.least)
    }

    pub fn rotation(&self, shift: usize) -> Vec<Letter> {
        let mut out = Vec::with_capacity(self.len());
        out.extend_from_slice(&self.letters[shift..]);
        out.extend_from_slice(&self.letters[..shift]);
        out
    }

    fn canonical_iter(&self) -> impl Iterator<Item = &Letter> {
        self.letters[self.least..]
            .iter()
            .chain(self.letters[..self.least].iter())
    }

    /// Smallest `shift` with `rotation(shift) == other`, if any.
    pub fn rotation_to(&self, other: &CyclicWord) -> Option<usize> {
        if self.len() != other.len() {
            return None;
        }
        if self.is_empty() {
            return Some(0);
        }
        let doubled: Vec<Letter> = self.letters.iter().chain(self.letters.iter()).copied().collect();
        find(&doubled[..2 * self.len() - 1], &other.letters)
    }
}

impl PartialEq for CyclicWord {
    fn eq(&self, other: &Self) -> bool {
        self.len() == other.len() && self.canonical_iter().eq(other.canonical_iter())
    }
}

impl Eq for CyclicWord {}

impl Hash for CyclicWord {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.len().hash(state);
        for l in self.canonical_iter() {
            l.hash(state);
        }
    }
}

/// Booth's least-rotation algorithm.
fn least_rotation(s: &[Letter]) -> usize {
    let n = s.len();
    if n == 0 {
        return 0;
    }
    let at = |i: usize| s[i % n];
    let mut fail = vec![usize::MAX; 2 * n];
    let mut k = 0usize;
    for j in 1..2 * n {
        let sj = at(j);
        let mut i = fail[j - k - 1];
        while i != usize::MAX && sj != at(k + i + 1) {
            if sj < at(k + i + 1) {
                k = j - i - 1;
            }
            i = fail[i];
        }
        if i == usize::MAX && sj != at(k) {
            if sj < at(k) {
                k = j;
            }
            fail[j - k] = usize::MAX;
        } else {
            fail[j - k] = if i == usize::MAX { 0 } else { i + 1 };
        }
    }
    k % n
}

/// Prefix function (failure function) of `s`.
pub(crate) fn prefix_function(s: &[Letter]) -> Vec<usize> {
    let mut pi = vec![0; s.len()];
    for i in 1..s.len() {
        let mut k = pi[i - 1];
        while k > 0 && s[i] != s[k] {
            k = pi[k - 1];
        }
        if s[i] == s[k] {
            k += 1;
        }
        pi[i] = k;
    }
    pi
}

/// First occurrence of `needle` in `hay` (KMP).
pub(crate) fn find(hay: &[Letter], needle: &[Letter]) -> Option<usize> {
    if needle.is_empty() {
        return Some(0);
    }
    let pi = prefix_function(needle);
    let mut k = 0;
    for (i, &c) in hay.iter().enumerate() {
        while k > 0 && c != needle[k] {
            k = pi[k - 1];
        }
        if c == needle[k] {
            k += 1;
        }
        if k == needle.len() {
            return Some(i + 1 - k);
        }
    }
    None
}
