//! Random words and automorphisms for tests and experiments.

use rand::Rng;

use crate::automorphisms::FreeAutomorphism;
use crate::words::{Alphabet, Letter, Word};

/// A reduced word of exactly `len` letters, uniform among reduced words.
pub fn word_of_len<R: Rng + ?Sized>(rng: &mut R, alphabet: &Alphabet, len: usize) -> Word {
    let letters = alphabet.letters();
    if letters.is_empty() {
        return Word::identity();
    }
    let mut out: Vec<Letter> = Vec::with_capacity(len);
    while out.len() < len {
        let l = letters[rng.random_range(0..letters.len())];
        if out.last() != Some(&l.inverse()) {
            out.push(l);
        }
    }
    Word::from_letters(out)
}

/// A reduced word whose length is uniform in `0..=max_len`.
pub fn word<R: Rng + ?Sized>(rng: &mut R, alphabet: &Alphabet, max_len: usize) -> Word {
    let len = rng.random_range(0..=max_len);
    word_of_len(rng, alphabet, len)
}

pub fn nonempty_word<R: Rng + ?Sized>(rng: &mut R, alphabet: &Alphabet, max_len: usize) -> Word {
    let len = rng.random_range(1..=max_len.max(1));
    word_of_len(rng, alphabet, len)
}

/// Elementary Nielsen moves on the basis.
#[derive(Copy, Clone, Debug, PartialEq, Eq)]
pub enum NielsenMove {
    /// `x_i ↦ x_i x_j^{±1}`.
    Right { i: usize, j: usize, inverse: bool },
    /// `x_i ↦ x_j^{±1} x_i`.
    Left { i: usize, j: usize, inverse: bool },
    /// `x_i ↦ x_i⁻¹`.
    Invert(usize),
    /// Exchange `x_i` and `x_j`.
    Swap(usize, usize),
}

impl NielsenMove {
    pub fn random<R: Rng + ?Sized>(rng: &mut R, n: usize) -> NielsenMove {
        let i = rng.random_range(0..n);
        let mut j = rng.random_range(0..n - 1);
        if j >= i {
            j += 1;
        }
        match rng.random_range(0..6) {
            0 | 1 => NielsenMove::Right { i, j, inverse: rng.random_bool(0.5) },
            2 | 3 => NielsenMove::Left { i, j, inverse: rng.random_bool(0.5) },
            4 => NielsenMove::Invert(i),
            _ => NielsenMove::Swap(i, j),
        }
    }

    fn images(self, alphabet: &Alphabet) -> Vec<Word> {
        let g = |s: usize| Word::letter(alphabet.generator(s));
        let mut images: Vec<Word> = (0..alphabet.size()).map(g).collect();
        match self {
            NielsenMove::Right { i, j, inverse } => {
                let x = if inverse { g(j).inverse() } else { g(j) };
                images[i] = g(i).mul(&x);
            }
            NielsenMove::Left { i, j, inverse } => {
                let x = if inverse { g(j).inverse() } else { g(j) };
                images[i] = x.mul(&g(i));
            }
            NielsenMove::Invert(i) => images[i] = g(i).inverse(),
            NielsenMove::Swap(i, j) => images.swap(i, j),
        }
        images
    }

    fn undo(self) -> NielsenMove {
        match self {
            NielsenMove::Right { i, j, inverse } => NielsenMove::Right { i, j, inverse: !inverse },
            NielsenMove::Left { i, j, inverse } => NielsenMove::Left { i, j, inverse: !inverse },
            other => other,
        }
    }

    pub fn automorphism(self, alphabet: Alphabet) -> FreeAutomorphism {
        FreeAutomorphism::with_inverse(alphabet, self.images(&alphabet), self.undo().images(&alphabet))
            .expect("elementary Nielsen moves are automorphisms")
    }
}

/// Composition of `moves` random elementary Nielsen moves; the inverse comes
/// from undoing the moves in reverse order.
pub fn automorphism<R: Rng + ?Sized>(rng: &mut R, rank: u32, moves: usize) -> FreeAutomorphism {
    let alphabet = Alphabet::new(rank);
    let mut acc = FreeAutomorphism::identity(alphabet);
    if rank < 2 {
        if rank == 1 && moves > 0 && rng.random_bool(0.5) {
            return NielsenMove::Invert(0).automorphism(alphabet);
        }
        return acc;
    }
    for _ in 0..moves {
        let m = NielsenMove::random(rng, rank as usize).automorphism(alphabet);
        acc = acc.compose(&m).expect("small compositions stay under the cap");
    }
    acc
}

/// A uniformly random signed permutation of the basis.
pub fn signed_permutation<R: Rng + ?Sized>(rng: &mut R, rank: u32) -> FreeAutomorphism {
    let alphabet = Alphabet::new(rank);
    let mut targets: Vec<u32> = (1..=rank).collect();
    for i in (1..targets.len()).rev() {
        targets.swap(i, rng.random_range(0..=i));
    }
    let images = targets
        .into_iter()
        .map(|t| Word::letter(Letter::new(t, rng.random_bool(0.5))))
        .collect();
    FreeAutomorphism::from_images(alphabet, images).expect("signed permutations are automorphisms")
}

/// Swap of the first two generators, fixing the rest.
pub fn swap(rank: u32) -> FreeAutomorphism {
    let alphabet = Alphabet::new(rank);
    NielsenMove::Swap(0, 1).automorphism(alphabet)
}

/// `a ↦ ab, b ↦ a`, fixing any further generators.
pub fn fib(rank: u32) -> FreeAutomorphism {
    let alphabet = Alphabet::new(rank);
    let mut images: Vec<Word> = alphabet.generators().map(Word::letter).collect();
    images[0] = Word::product([&Word::generator(1), &Word::generator(2)]);
    images[1] = Word::generator(1);
    FreeAutomorphism::from_images(alphabet, images).expect("fib is an automorphism")
}
