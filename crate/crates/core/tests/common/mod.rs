//! Shared generators and brute-force oracles. The oracles deliberately avoid
//! the library's fast paths: images are substituted letter by letter, group
//! elements are normalised token by token, and searches enumerate every word.
#![allow(dead_code)]

use fbc::automorphisms::inner;
use fbc::random;
use fbc::words::{parse_extended, Alphabet, Letter, Word};
use fbc::{FbcPresentation, FreeAutomorphism, GroupElement, Modulus};
use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn w(s: &str) -> Word {
    parse_extended(s).unwrap()
}

pub fn aut(images: &[&str]) -> FreeAutomorphism {
    let alphabet = Alphabet::new(images.len() as u32);
    FreeAutomorphism::from_images(alphabet, images.iter().map(|s| w(s)).collect()).unwrap()
}

pub fn id(rank: u32) -> FreeAutomorphism {
    FreeAutomorphism::identity(Alphabet::new(rank))
}

/// Every reduced word of length at most `max_len`, by plain extension.
pub fn all_words(alphabet: &Alphabet, max_len: usize) -> Vec<Word> {
    let letters = alphabet.letters();
    let mut out = vec![Vec::<Letter>::new()];
    let mut frontier = out.clone();
    for _ in 0..max_len {
        let mut next = Vec::new();
        for p in &frontier {
            for &l in &letters {
                if p.last() == Some(&l.inverse()) {
                    continue;
                }
                let mut q = p.clone();
                q.push(l);
                next.push(q);
            }
        }
        out.extend(next.iter().cloned());
        frontier = next;
    }
    out.into_iter().map(Word::from_letters).collect()
}

/// Letterwise substitution followed by one free reduction.
pub fn naive_apply(images: &[Word], alphabet: &Alphabet, u: &Word) -> Word {
    let mut raw = Vec::new();
    for &l in u.letters() {
        let img = &images[alphabet.slot(l).unwrap()];
        if l.is_positive() {
            raw.extend_from_slice(img.letters());
        } else {
            raw.extend(img.inverse().letters().iter().copied());
        }
    }
    Word::from_letters(raw)
}

pub fn fwd(phi: &FreeAutomorphism, u: &Word) -> Word {
    naive_apply(phi.images(), &phi.alphabet(), u)
}

pub fn back(phi: &FreeAutomorphism, u: &Word) -> Word {
    naive_apply(phi.inverse_images(), &phi.alphabet(), u)
}

pub fn fwd_pow(phi: &FreeAutomorphism, u: &Word, k: i64) -> Word {
    let mut cur = u.clone();
    for _ in 0..k.unsigned_abs() {
        cur = if k > 0 { fwd(phi, &cur) } else { back(phi, &cur) };
    }
    cur
}

/// Shortlex-least `g` with `|g| ≤ max_len` and `(gφ)⁻¹ u g = v`.
pub fn twisted_oracle(phi: &FreeAutomorphism, u: &Word, v: &Word, max_len: usize) -> Option<Word> {
    all_words(&phi.alphabet(), max_len)
        .into_iter()
        .find(|g| &Word::product([&fwd(phi, g).inverse(), u, g]) == v)
}

/// Some `g`, `|g| ≤ max_len`, with `g⁻¹ u g = v`.
pub fn conjugacy_oracle(alphabet: &Alphabet, u: &Word, v: &Word, max_len: usize) -> Option<Word> {
    all_words(alphabet, max_len).into_iter().find(|g| &g.conjugate(u) == v)
}

/// Conjugacy in F by peeling matching end letters and comparing every rotation.
pub fn naive_conjugate(u: &Word, v: &Word) -> bool {
    fn core(w: &Word) -> Vec<Letter> {
        let mut l = w.letters().to_vec();
        while l.len() >= 2 && l[0] == l[l.len() - 1].inverse() {
            l.remove(0);
            l.pop();
        }
        l
    }
    let (a, b) = (core(u), core(v));
    if a.len() != b.len() {
        return false;
    }
    if a.is_empty() {
        return true;
    }
    (0..a.len()).any(|i| a[i..].iter().chain(&a[..i]).eq(b.iter()))
}

#[derive(Copy, Clone, Debug, PartialEq, Eq)]
pub enum Tok {
    L(Letter),
    T(bool),
}

pub fn tokens(x: &GroupElement) -> Vec<Tok> {
    let t = Tok::T(x.r > 0);
    let mut out = vec![t; x.r.unsigned_abs() as usize];
    out.extend(x.u.letters().iter().map(|&l| Tok::L(l)));
    out
}

pub fn inverse_tokens(ts: &[Tok]) -> Vec<Tok> {
    ts.iter()
        .rev()
        .map(|t| match *t {
            Tok::L(l) => Tok::L(l.inverse()),
            Tok::T(s) => Tok::T(!s),
        })
        .collect()
}

/// Reads a word in the generators and `t` left to right using
/// `u t = t (uφ)` and `u t⁻¹ = t⁻¹ (uφ⁻¹)`, then wraps the exponent.
pub fn naive_normal_form(g: &FbcPresentation, ts: &[Tok]) -> GroupElement {
    let phi = g.phi();
    let (mut r, mut u) = (0i64, Word::identity());
    for t in ts {
        match *t {
            Tok::L(l) => u = u.mul(&Word::letter(l)),
            Tok::T(true) => {
                u = fwd(phi, &u);
                r += 1;
            }
            Tok::T(false) => {
                u = back(phi, &u);
                r -= 1;
            }
        }
    }
    match g.modulus() {
        Modulus::Infinite => GroupElement::new(r, u),
        Modulus::Finite(m) => {
            let m = m as i64;
            GroupElement::new(r.rem_euclid(m), g.h().pow(r.div_euclid(m)).mul(&u))
        }
    }
}

pub fn naive_power(g: &FbcPresentation, x: &GroupElement, p: i64) -> GroupElement {
    let base = if p >= 0 { tokens(x) } else { inverse_tokens(&tokens(x)) };
    let ts: Vec<Tok> = (0..p.unsigned_abs()).flat_map(|_| base.iter().copied()).collect();
    naive_normal_form(g, &ts)
}

/// Whether `c⁻¹ x c = y`, checked by token rewriting.
pub fn naive_conjugates(g: &FbcPresentation, x: &GroupElement, c: &GroupElement, y: &GroupElement) -> bool {
    let mut ts = inverse_tokens(&tokens(c));
    ts.extend(tokens(x));
    ts.extend(tokens(c));
    naive_normal_form(g, &ts) == naive_normal_form(g, &tokens(y))
}

/// One of the automorphism families used throughout the tests: identity,
/// signed letter permutations, inner automorphisms, and compositions of
/// a few Nielsen moves.
pub fn random_phi<R: Rng>(rng: &mut R, rank: u32) -> FreeAutomorphism {
    let alphabet = Alphabet::new(rank);
    match rng.random_range(0..6) {
        0 => id(rank),
        1 => random::signed_permutation(rng, rank),
        2 => inner(&random::nonempty_word(rng, &alphabet, 3), alphabet).unwrap(),
        3 => random::fib(rank),
        _ => {
            let moves = rng.random_range(1..=4);
            random::automorphism(rng, rank, moves)
        }
    }
}

/// Presentations with infinite and finite `m`.
pub fn random_presentation<R: Rng>(rng: &mut R) -> FbcPresentation {
    match rng.random_range(0..6) {
        0 => FbcPresentation::new(random::swap(2), Modulus::Finite(2), Word::identity()).unwrap(),
        1 => FbcPresentation::new(aut(&["b", "c", "a"]), Modulus::Finite(3), Word::identity()).unwrap(),
        2 => {
            let alphabet = Alphabet::new(2);
            let c = random::nonempty_word(rng, &alphabet, 2);
            let m = rng.random_range(1..=3);
            FbcPresentation::new(inner(&c, alphabet).unwrap(), Modulus::Finite(m), c.pow(m as i64)).unwrap()
        }
        _ => {
            let rank = rng.random_range(2..=3);
            FbcPresentation::infinite(random_phi(rng, rank))
        }
    }
}

pub fn random_element<R: Rng>(rng: &mut R, g: &FbcPresentation, max_r: i64, max_len: usize) -> GroupElement {
    let alphabet = g.phi().alphabet();
    let r = rng.random_range(-max_r..=max_r);
    g.element(r, random::word(rng, &alphabet, max_len))
}
