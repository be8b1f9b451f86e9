//! Free group kernel: reduced words, cyclic words, conjugacy, roots and
//! centralizers.

mod cyclic;
mod letter;
mod syntax;
mod word;

pub use cyclic::CyclicWord;
pub use letter::{Alphabet, Letter};
pub use syntax::{parse_extended, parse_group_word, parse_word, render, Token};
pub use word::{reduce, Word};

pub(crate) use cyclic::prefix_function;
pub(crate) use word::push_reduced;

use crate::error::{Error, Result};

/// Some `g` with `g⁻¹ u g = v`, or `None` when `u` and `v` are not conjugate.
pub fn conjugacy(u: &Word, v: &Word) -> Option<Word> {
    let (cu, c1) = u.cyclic_reduce();
    let (cv, c2) = v.cyclic_reduce();
    let shift = cu.rotation_to(&cv)?;
    let x = Word::from_reduced(cu.letters()[..shift].to_vec());
    let g = Word::product([&c1.inverse(), &x, &c2]);
    debug_assert_eq!(&g.conjugate(u), v);
    Some(g)
}

/// The root of `w`: `w = r^e` with `r` not a proper power and `e >= 1`.
pub fn root(w: &Word) -> Result<(Word, u32)> {
    if w.is_identity() {
        return Err(Error::InvalidArgument("the identity has no root".into()));
    }
    let (core, c) = w.cyclic_reduce();
    let letters = core.letters();
    let n = letters.len();
    let pi = prefix_function(letters);
    let p = n - pi[n - 1];
    let period = if n % p == 0 { p } else { n };
    let r = Word::product([
        &c.inverse(),
        &Word::from_reduced(letters[..period].to_vec()),
        &c,
    ]);
    Ok((r, (n / period) as u32))
}

/// Generator of the centralizer of `w`; `None` stands for the whole group.
pub fn centralizer(w: &Word) -> Option<Word> {
    root(w).ok().map(|(r, _)| r)
}
