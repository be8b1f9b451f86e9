//! Fixed and periodic subgroups of automorphisms.
//!
//! Exact answers are produced for automorphisms recognised as the identity,
//! inner, or a signed letter permutation. Everything else is searched by
//! brute force and labelled as a lower bound.

use std::fmt;

use num_bigint::BigUint;
use serde::Serialize;

use crate::automorphisms::FreeAutomorphism;
use crate::error::{Error, Result};
use crate::limits::Limits;
use crate::stallings::{CoreGraph, Folder};
use crate::words::{conjugacy, root, Alphabet, Letter, Word};

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum AutClass {
    Identity,
    /// `x ↦ w⁻¹ x w` with `w ≠ ε`.
    Inner(Word),
    LetterPermutation { order: u32 },
    FiniteOrder(u32),
    General,
}

impl AutClass {
    /// Classes whose fixed subgroup is computed exactly.
    pub fn is_exact(&self) -> bool {
        matches!(self, AutClass::Identity | AutClass::Inner(_) | AutClass::LetterPermutation { .. })
    }
}

impl fmt::Display for AutClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            AutClass::Identity => write!(f, "identity"),
            AutClass::Inner(w) => write!(f, "inner({w})"),
            AutClass::LetterPermutation { order } => write!(f, "letter permutation of order {order}"),
            AutClass::FiniteOrder(d) => write!(f, "finite order {d}"),
            AutClass::General => write!(f, "general"),
        }
    }
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Exactness {
    Exact,
    LowerBound { search_len: usize },
}

/// Generators of a subgroup, each checked to be fixed by the automorphism
/// it was computed for.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SubgroupBasis {
    pub generators: Vec<Word>,
    pub exactness: Exactness,
}

impl SubgroupBasis {
    fn checked(phi: &FreeAutomorphism, generators: Vec<Word>, exactness: Exactness, cap: usize) -> Result<SubgroupBasis> {
        for g in &generators {
            if &phi.apply_capped(g, cap)? != g {
                return Err(Error::Unsound(format!("{g} is not fixed")));
            }
        }
        Ok(SubgroupBasis { generators, exactness })
    }

    pub fn is_exact(&self) -> bool {
        self.exactness == Exactness::Exact
    }

    pub fn graph(&self) -> CoreGraph {
        CoreGraph::build(&self.generators)
    }
}

/// `p₀` with `Per φ = Fix φ^{p₀}` for every automorphism of a free group of rank `n`.
pub fn periodic_bound(n: u32) -> BigUint {
    if n <= 1 {
        return BigUint::from(2u32);
    }
    (1..=6 * n as u64 - 6).fold(BigUint::from(1u32), |acc, k| acc * k)
}

fn all_generators(alphabet: &Alphabet) -> Vec<Word> {
    alphabet.generators().map(Word::letter).collect()
}

fn letter_permutation_order(phi: &FreeAutomorphism) -> Option<u32> {
    let alphabet = phi.alphabet();
    let images: Vec<Letter> = phi
        .images()
        .iter()
        .map(|w| (w.len() == 1).then(|| w.letters()[0]))
        .collect::<Option<_>>()?;
    let map = |l: Letter| {
        let s = alphabet.slot(l).expect("letter of the alphabet");
        if l.is_positive() {
            images[s]
        } else {
            images[s].inverse()
        }
    };
    let mut order = 1u32;
    let mut cur: Vec<Letter> = images.clone();
    while cur.iter().zip(alphabet.generators()).any(|(c, g)| *c != g) {
        cur = cur.into_iter().map(map).collect();
        order += 1;
    }
    Some(order)
}

/// Integer matrix of the induced map on the abelianization; row `i` holds
/// the exponent sums of the image of generator `i`.
#[derive(Clone, Debug, PartialEq, Eq)]
struct AbMatrix(Vec<Vec<i64>>);

impl AbMatrix {
    fn of(phi: &FreeAutomorphism) -> AbMatrix {
        let alphabet = phi.alphabet();
        let n = alphabet.size();
        let rows = phi
            .images()
            .iter()
            .map(|w| {
                let mut row = vec![0i64; n];
                for &l in w.letters() {
                    row[alphabet.slot(l).expect("letter of the alphabet")] += if l.is_positive() { 1 } else { -1 };
                }
                row
            })
            .collect();
        AbMatrix(rows)
    }

    /// `self · other`, or `None` on overflow (which rules out finite order).
    fn mul(&self, other: &AbMatrix) -> Option<AbMatrix> {
        let n = self.0.len();
        let mut out = vec![vec![0i64; n]; n];
        for (row, lhs) in out.iter_mut().zip(&self.0) {
            for (&a, rhs) in lhs.iter().zip(&other.0) {
                if a == 0 {
                    continue;
                }
                for (x, &b) in row.iter_mut().zip(rhs) {
                    *x = x.checked_add(a.checked_mul(b)?)?;
                }
            }
        }
        Some(AbMatrix(out))
    }

    fn is_identity(&self) -> bool {
        self.0.iter().enumerate().all(|(i, row)| row.iter().enumerate().all(|(j, &x)| x == i64::from(i == j)))
    }

    fn is_signed_permutation(&self) -> bool {
        self.0.iter().all(|row| row.iter().filter(|&&x| x != 0).count() == 1 && row.iter().all(|x| x.abs() <= 1))
    }
}

/// `w` with `φ = γ_w`, if `φ` is a non-trivial inner automorphism.
fn inner_witness(phi: &FreeAutomorphism) -> Option<Word> {
    let alphabet = phi.alphabet();
    if alphabet.size() < 2 {
        return None;
    }
    let x1 = Word::letter(alphabet.generator(0));
    let x2 = Word::letter(alphabet.generator(1));
    let w1 = conjugacy(&x1, &phi.images()[0])?;
    let d = Word::product([&w1, &phi.images()[1], &w1.inverse()]);
    let lead = |l: Letter| d.letters().iter().take_while(|&&x| x == l).count() as i64;
    let x1l = alphabet.generator(0);
    let j = match d.first() {
        Some(l) if l == x1l.inverse() => lead(l),
        Some(l) if l == x1l => -lead(l),
        _ => 0,
    };
    let w = x1.pow(j).mul(&w1);
    let _ = x2;
    let ok = alphabet
        .generators()
        .zip(phi.images())
        .all(|(g, img)| &w.conjugate(&Word::letter(g)) == img);
    (ok && !w.is_identity()).then_some(w)
}

pub fn classify(phi: &FreeAutomorphism) -> AutClass {
    classify_with(phi, &Limits::default())
}

/// Routes `φ` to an exact solver when possible. Each class is verified,
/// never guessed; anything that is not recognised is `General`.
pub fn classify_with(phi: &FreeAutomorphism, limits: &Limits) -> AutClass {
    if phi.is_identity() {
        return AutClass::Identity;
    }
    if let Some(order) = letter_permutation_order(phi) {
        return AutClass::LetterPermutation { order };
    }
    if let Some(w) = inner_witness(phi) {
        return AutClass::Inner(w);
    }
    // φ^d = id forces the abelianized map to have order d, which is cheap
    // to test; the power itself is only built for candidates.
    let p0 = periodic_bound(phi.alphabet().size() as u32);
    let m = AbMatrix::of(phi);
    let mut md = m.clone();
    for d in 2..=limits.finite_order_max {
        md = match md.mul(&m) {
            Some(x) => x,
            None => break,
        };
        if !md.is_identity() {
            continue;
        }
        if (&p0 % d) != BigUint::from(0u32) {
            break;
        }
        match phi.power_capped(d as i64, limits.word_cap) {
            Ok(p) if p.is_identity() => return AutClass::FiniteOrder(d),
            Ok(_) => {}
            Err(_) => break,
        }
    }
    AutClass::General
}

pub fn fix_solve(phi: &FreeAutomorphism, limits: &Limits) -> Result<SubgroupBasis> {
    let alphabet = phi.alphabet();
    let cap = limits.word_cap;
    match classify_with(phi, limits) {
        AutClass::Identity => SubgroupBasis::checked(phi, all_generators(&alphabet), Exactness::Exact, cap),
        AutClass::Inner(w) => {
            let (r, _) = root(&w)?;
            SubgroupBasis::checked(phi, vec![r], Exactness::Exact, cap)
        }
        AutClass::LetterPermutation { .. } => {
            let fixed = alphabet
                .generators()
                .zip(phi.images())
                .filter(|(g, img)| img.len() == 1 && img.letters()[0] == *g)
                .map(|(g, _)| Word::letter(g))
                .collect();
            SubgroupBasis::checked(phi, fixed, Exactness::Exact, cap)
        }
        AutClass::FiniteOrder(_) | AutClass::General => fix_bruteforce(phi, limits.fix_search_len, cap),
    }
}

/// Depth-first enumeration of reduced words of length at most `max_len`,
/// keeping the reduced image of every prefix so each step costs one image.
/// The visitor sees `(w, wφ)` and returns `true` to stop early.
pub(crate) fn enumerate<F>(phi: &FreeAutomorphism, max_len: usize, cap: usize, mut visit: F) -> Result<()>
where
    F: FnMut(&[Letter], &[Letter]) -> Result<bool>,
{
    let alphabet = phi.alphabet();
    let letters = alphabet.letters();
    let mut word: Vec<Letter> = Vec::with_capacity(max_len);
    let mut images: Vec<Vec<Letter>> = vec![Vec::new(); max_len + 1];
    let mut choice: Vec<usize> = vec![0; max_len + 1];
    let mut depth = 0;
    if visit(&word, &images[0])? || max_len == 0 {
        return Ok(());
    }
    loop {
        if choice[depth] == letters.len() {
            if depth == 0 {
                return Ok(());
            }
            depth -= 1;
            word.pop();
            choice[depth] += 1;
            continue;
        }
        let l = letters[choice[depth]];
        if word.last() == Some(&l.inverse()) {
            choice[depth] += 1;
            continue;
        }
        word.push(l);
        let (lo, hi) = images.split_at_mut(depth + 1);
        let next = &mut hi[0];
        next.clear();
        next.extend_from_slice(&lo[depth]);
        let slot = alphabet.slot(l).expect("letter of the alphabet");
        phi.forward().push_image(next, slot, l.is_positive());
        if next.len() > cap {
            return Err(Error::BudgetExceeded { length: next.len(), cap });
        }
        if visit(&word, &images[depth + 1])? {
            return Ok(());
        }
        if depth + 1 < max_len {
            depth += 1;
            choice[depth] = 0;
        } else {
            word.pop();
            choice[depth] += 1;
        }
    }
}

/// Folds every reduced word of length at most `max_len` fixed by `φ`.
pub fn fix_bruteforce(phi: &FreeAutomorphism, max_len: usize, cap: usize) -> Result<SubgroupBasis> {
    let mut folder = Folder::new();
    enumerate(phi, max_len, cap, |w, img| {
        if !w.is_empty() && w == img {
            let w = Word::from_letters(w.iter().copied());
            if !folder.contains(&w) {
                folder.add_loop(&w);
            }
        }
        Ok(false)
    })?;
    let basis = folder.finish().basis();
    SubgroupBasis::checked(phi, basis, Exactness::LowerBound { search_len: max_len }, cap)
}

/// Every reduced word up to `max_len` fixed by `φ`, in enumeration order.
pub fn fixed_words(phi: &FreeAutomorphism, max_len: usize, cap: usize) -> Result<Vec<Word>> {
    let mut out = Vec::new();
    enumerate(phi, max_len, cap, |w, img| {
        if w == img {
            out.push(Word::from_letters(w.iter().copied()));
        }
        Ok(false)
    })?;
    Ok(out)
}

/// The periodic subgroup together with how it was obtained.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PeriodicSubgroup {
    pub basis: SubgroupBasis,
    /// `s` with every generator fixed by `φ^s`.
    pub period: u64,
    /// Largest exponent reached by the divisor scan, when it was cut short
    /// by the word-length cap.
    pub budget_hit: Option<u64>,
}

fn lcm(a: u64, b: u64) -> u64 {
    fn gcd(a: u64, b: u64) -> u64 {
        if b == 0 {
            a
        } else {
            gcd(b, a % b)
        }
    }
    a / gcd(a, b) * b
}

/// Smallest `k` in `1..=max_steps` with `wφ^k = w`.
fn orbit_period(phi: &FreeAutomorphism, w: &Word, max_steps: u64, len_cap: usize) -> Result<Option<u64>> {
    let mut cur = w.clone();
    for k in 1..=max_steps {
        cur = phi.apply_capped(&cur, len_cap)?;
        if &cur == w {
            return Ok(Some(k));
        }
    }
    Ok(None)
}

/// `Per φ`, computed as `Fix φ^s` for the least divisor `s` of `p₀` at which
/// `φ^s` falls into an exact class. If no such `s` is found within the
/// divisor budget, periodic words up to the search length are folded and the
/// result is a lower bound.
pub fn periodic_subgroup(phi: &FreeAutomorphism, limits: &Limits) -> Result<PeriodicSubgroup> {
    let alphabet = phi.alphabet();
    let cap = limits.word_cap;
    let exact = |gens: Vec<Word>, period: u64| -> Result<PeriodicSubgroup> {
        let power = phi.power_capped(period as i64, cap)?;
        Ok(PeriodicSubgroup {
            basis: SubgroupBasis::checked(&power, gens, Exactness::Exact, cap)?,
            period,
            budget_hit: None,
        })
    };
    match classify_with(phi, limits) {
        AutClass::Identity => return exact(all_generators(&alphabet), 1),
        AutClass::LetterPermutation { order } => return exact(all_generators(&alphabet), order as u64),
        AutClass::FiniteOrder(d) => return exact(all_generators(&alphabet), d as u64),
        AutClass::Inner(w) => return exact(vec![root(&w)?.0], 1),
        AutClass::General => {}
    }

    // φ^s can only be inner or a letter permutation when its abelianization
    // is a signed permutation matrix, so powers are built for those s only.
    let p0 = periodic_bound(alphabet.size() as u32);
    let zero = BigUint::from(0u32);
    let m = AbMatrix::of(phi);
    let mut ms = m.clone();
    let mut budget_hit = None;
    for s in 2..=limits.divisor_budget {
        ms = match ms.mul(&m) {
            Some(x) => x,
            None => break,
        };
        if &p0 % s != zero || !ms.is_signed_permutation() {
            continue;
        }
        let pow = match phi.power_capped(s as i64, cap) {
            Ok(p) => p,
            Err(_) => {
                budget_hit = Some(s);
                break;
            }
        };
        if pow.is_identity() {
            return exact(all_generators(&alphabet), s);
        }
        if let Some(order) = letter_permutation_order(&pow) {
            return exact(all_generators(&alphabet), s * order as u64);
        }
        if let Some(w) = inner_witness(&pow) {
            return exact(vec![root(&w)?.0], s);
        }
    }

    let max_len = limits.periodic_search_len;
    let orbit_cap = (8 * max_len).max(64);
    let mut folder = Folder::new();
    let mut period = 1u64;
    let mut candidates = Vec::new();
    enumerate(phi, max_len, cap, |w, _| {
        if !w.is_empty() {
            candidates.push(Word::from_letters(w.iter().copied()));
        }
        Ok(false)
    })?;
    for w in candidates {
        let k = match orbit_period(phi, &w, limits.finite_order_max as u64, orbit_cap) {
            Ok(Some(k)) => k,
            Ok(None) | Err(Error::BudgetExceeded { .. }) => continue,
            Err(e) => return Err(e),
        };
        if !folder.contains(&w) {
            folder.add_loop(&w);
            period = lcm(period, k);
        }
    }
    let generators = folder.finish().basis();
    for g in &generators {
        if orbit_period(phi, g, period, cap)?.is_none_or(|k| !period.is_multiple_of(k)) {
            return Err(Error::Unsound(format!("{g} is not periodic with period {period}")));
        }
    }
    Ok(PeriodicSubgroup {
        basis: SubgroupBasis { generators, exactness: Exactness::LowerBound { search_len: max_len } },
        period,
        budget_hit,
    })
}
