//! Text syntax for words.
//!
//! Letter syntax: `a`..`y` are generators 1..25, uppercase their inverses,
//! `z`/`Z` the auxiliary letter. Indexed syntax: `x3`/`X3` (and `x0` for the
//! auxiliary letter) for ranks above 25. `1` or the empty string is the
//! identity, whitespace is ignored, and one word may not mix both syntaxes.
//! In group words `t`/`T` denote the stable letter in either syntax.

use super::letter::Letter;
use super::word::Word;
use crate::error::{Error, Result};

#[derive(Copy, Clone, Debug, PartialEq, Eq)]
pub enum Token {
    Letter(Letter),
    /// `t` (true) or `T` (false).
    Stable(bool),
}

#[derive(Copy, Clone, Debug, PartialEq, Eq)]
struct Options {
    allow_z: bool,
    stable: bool,
}

fn tokenize(text: &str, opts: Options) -> Result<Vec<(usize, Token)>> {
    let chars: Vec<(usize, char)> = text
        .char_indices()
        .filter(|(_, c)| !c.is_whitespace())
        .collect();
    if chars.is_empty() || (chars.len() == 1 && chars[0].1 == '1') {
        return Ok(Vec::new());
    }
    let indexed = chars.iter().any(|(_, c)| c.is_ascii_digit());
    let mut out = Vec::with_capacity(chars.len());
    let mut i = 0;
    while i < chars.len() {
        let (offset, c) = chars[i];
        if opts.stable && (c == 't' || c == 'T') {
            out.push((offset, Token::Stable(c == 't')));
            i += 1;
            continue;
        }
        if indexed {
            if c != 'x' && c != 'X' {
                let message = if c.is_ascii_alphabetic() {
                    "mixed letter and indexed syntax".to_string()
                } else {
                    format!("unexpected character `{c}`")
                };
                return Err(Error::Syntax { offset, message });
            }
            let mut j = i + 1;
            let mut index: u32 = 0;
            while j < chars.len() && chars[j].1.is_ascii_digit() {
                index = index
                    .checked_mul(10)
                    .and_then(|v| v.checked_add(chars[j].1 as u32 - '0' as u32))
                    .filter(|v| *v < i32::MAX as u32 / 2)
                    .ok_or(Error::Syntax { offset, message: "generator index too large".into() })?;
                j += 1;
            }
            if j == i + 1 {
                return Err(Error::Syntax {
                    offset,
                    message: "expected generator index after `x`".into(),
                });
            }
            if index == 0 && !opts.allow_z {
                return Err(Error::ReservedLetter { offset, letter: c });
            }
            out.push((offset, Token::Letter(Letter::new(index, c == 'x'))));
            i = j;
        } else {
            let letter = match c {
                'z' | 'Z' if !opts.allow_z => return Err(Error::ReservedLetter { offset, letter: c }),
                'z' => Letter::z(),
                'Z' => Letter::z().inverse(),
                'a'..='y' => Letter::new(c as u32 - 'a' as u32 + 1, true),
                'A'..='Y' => Letter::new(c as u32 - 'A' as u32 + 1, false),
                _ => {
                    return Err(Error::Syntax {
                        offset,
                        message: format!("unexpected character `{c}`"),
                    })
                }
            };
            out.push((offset, Token::Letter(letter)));
            i += 1;
        }
    }
    Ok(out)
}

fn letters_of(tokens: Vec<(usize, Token)>) -> impl Iterator<Item = Letter> {
    tokens.into_iter().map(|(_, t)| match t {
        Token::Letter(l) => l,
        Token::Stable(_) => unreachable!("stable letter outside group syntax"),
    })
}

/// Parses a user-supplied word over `x_1, x_2, ...`; the auxiliary letter is rejected.
pub fn parse_word(text: &str) -> Result<Word> {
    let tokens = tokenize(text, Options { allow_z: false, stable: false })?;
    Ok(Word::from_letters(letters_of(tokens)))
}

/// Like [`parse_word`] but accepts the auxiliary letter `z`.
pub fn parse_extended(text: &str) -> Result<Word> {
    let tokens = tokenize(text, Options { allow_z: true, stable: false })?;
    Ok(Word::from_letters(letters_of(tokens)))
}

/// Parses a word over the free generators and the stable letter `t`.
pub fn parse_group_word(text: &str) -> Result<Vec<Token>> {
    let tokens = tokenize(text, Options { allow_z: false, stable: true })?;
    Ok(tokens.into_iter().map(|(_, t)| t).collect())
}

pub fn render(w: &Word) -> String {
    if w.is_identity() {
        return "1".to_string();
    }
    if w.max_index() <= 25 {
        w.letters().iter().map(|l| l.to_string()).collect()
    } else {
        w.letters()
            .iter()
            .map(|l| format!("{}{}", if l.is_positive() { 'x' } else { 'X' }, l.index()))
            .collect()
    }
}
