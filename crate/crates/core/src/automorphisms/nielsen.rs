//! Inversion of a generator-image tuple.
//!
//! The tuple is Nielsen-reduced by greedy length-decreasing elementary moves.
//! Each image `W_i` is paired with a coefficient word `C_i` over the same
//! basis, and every move is applied to both, so `W_i = C_i(images)` holds
//! throughout. When the images end as a signed permutation of the basis the
//! coefficients are the inverse images.
//!
//! Greedy length reduction can stall on a basis that is not yet a signed
//! permutation. In that case the images are folded as a labelled graph whose
//! edges carry coefficients (a fold is a Nielsen move in disguise); the tuple
//! is a basis iff the fold ends in the one-vertex rose without producing a
//! relation among the coefficients.

use crate::error::{Error, Result};
use crate::words::{Alphabet, Letter, Word};

pub(crate) fn invert(alphabet: &Alphabet, images: &[Word], cap: usize) -> Result<Vec<Word>> {
    let n = alphabet.size();
    let mut w: Vec<Word> = images.to_vec();
    let mut c: Vec<Word> = (0..n).map(|s| Word::letter(alphabet.generator(s))).collect();

    loop {
        if let Some(i) = w.iter().position(|x| x.is_identity()) {
            return Err(Error::NotAnAutomorphism(format!(
                "image of {} reduces to the identity",
                alphabet.generator(i)
            )));
        }
        let total: usize = w.iter().map(Word::len).sum();
        let mut best: Option<(usize, usize, bool, bool)> = None;
        let mut best_len = total;
        for i in 0..n {
            for j in 0..n {
                if i == j {
                    continue;
                }
                for inv in [false, true] {
                    let wj = if inv { w[j].inverse() } else { w[j].clone() };
                    for right in [true, false] {
                        let candidate = if right { w[i].mul(&wj) } else { wj.mul(&w[i]) };
                        let len = total - w[i].len() + candidate.len();
                        if len < best_len {
                            best_len = len;
                            best = Some((i, j, inv, right));
                        }
                    }
                }
            }
        }
        let Some((i, j, inv, right)) = best else { break };
        let (wj, cj) = if inv {
            (w[j].inverse(), c[j].inverse())
        } else {
            (w[j].clone(), c[j].clone())
        };
        if right {
            w[i] = w[i].mul(&wj);
            c[i] = c[i].mul(&cj);
        } else {
            w[i] = wj.mul(&w[i]);
            c[i] = cj.mul(&c[i]);
        }
    }

    if let Some(inverse) = read_signed_permutation(alphabet, &w, &c) {
        return Ok(inverse);
    }
    fold_with_coefficients(alphabet, images, cap)
}

fn read_signed_permutation(alphabet: &Alphabet, w: &[Word], c: &[Word]) -> Option<Vec<Word>> {
    let n = alphabet.size();
    let mut inverse: Vec<Option<Word>> = vec![None; n];
    for (wi, ci) in w.iter().zip(c) {
        if wi.len() != 1 {
            return None;
        }
        let l = wi.letters()[0];
        let slot = alphabet.slot(l)?;
        if inverse[slot].is_some() {
            return None;
        }
        inverse[slot] = Some(if l.is_positive() { ci.clone() } else { ci.inverse() });
    }
    inverse.into_iter().collect()
}

struct Edge {
    from: usize,
    to: usize,
    label: Letter,
    coef: Word,
}

struct HalfEdge {
    edge: usize,
    label: Letter,
    target: usize,
    coef: Word,
}

fn half_edges(edges: &[Option<Edge>], u: usize) -> Vec<HalfEdge> {
    let mut out = Vec::new();
    for (idx, e) in edges.iter().enumerate() {
        let Some(e) = e else { continue };
        if e.from == u {
            out.push(HalfEdge { edge: idx, label: e.label, target: e.to, coef: e.coef.clone() });
        }
        if e.to == u {
            out.push(HalfEdge {
                edge: idx,
                label: e.label.inverse(),
                target: e.from,
                coef: e.coef.inverse(),
            });
        }
    }
    out
}

fn fold_with_coefficients(alphabet: &Alphabet, images: &[Word], cap: usize) -> Result<Vec<Word>> {
    let mut edges: Vec<Option<Edge>> = Vec::new();
    let mut vertex_count = 1usize;
    for (slot, image) in images.iter().enumerate() {
        let mut prev = 0;
        for (k, &l) in image.letters().iter().enumerate() {
            let next = if k + 1 == image.len() {
                0
            } else {
                vertex_count += 1;
                vertex_count - 1
            };
            let coef = if k == 0 { Word::letter(alphabet.generator(slot)) } else { Word::identity() };
            let edge = if l.is_positive() {
                Edge { from: prev, to: next, label: l, coef }
            } else {
                Edge { from: next, to: prev, label: l.inverse(), coef: coef.inverse() }
            };
            edges.push(Some(edge));
            prev = next;
        }
    }

    'fold: loop {
        for u in 0..vertex_count {
            let hs = half_edges(&edges, u);
            for a in 0..hs.len() {
                for b in a + 1..hs.len() {
                    let (h1, h2) = (&hs[a], &hs[b]);
                    if h1.label != h2.label || h1.edge == h2.edge {
                        continue;
                    }
                    if h1.target == h2.target {
                        if h1.coef != h2.coef {
                            return Err(Error::NotAnAutomorphism(
                                "the images satisfy a nontrivial relation".into(),
                            ));
                        }
                        edges[h2.edge] = None;
                        continue 'fold;
                    }
                    let (gone, kept) = if h2.target != 0 { (h2, h1) } else { (h1, h2) };
                    let removed = gone.target;
                    let keep = kept.target;
                    let g = gone.coef.inverse().mul(&kept.coef);
                    for e in edges.iter_mut().flatten() {
                        if e.to == removed {
                            e.coef = e.coef.mul(&g);
                        }
                        if e.from == removed {
                            e.coef = g.inverse().mul(&e.coef);
                        }
                        if e.coef.len() > cap {
                            return Err(Error::BudgetExceeded { length: e.coef.len(), cap });
                        }
                    }
                    for e in edges.iter_mut().flatten() {
                        if e.from == removed {
                            e.from = keep;
                        }
                        if e.to == removed {
                            e.to = keep;
                        }
                    }
                    edges[gone.edge] = None;
                    continue 'fold;
                }
            }
        }
        break;
    }

    let remaining: Vec<&Edge> = edges.iter().flatten().collect();
    let mut inverse: Vec<Option<Word>> = vec![None; alphabet.size()];
    for e in &remaining {
        if e.from != 0 || e.to != 0 {
            return Err(Error::NotAnAutomorphism("the images do not generate the group".into()));
        }
        let slot = alphabet.slot(e.label).expect("label from the same alphabet");
        inverse[slot] = Some(e.coef.clone());
    }
    inverse
        .into_iter()
        .collect::<Option<Vec<_>>>()
        .ok_or_else(|| Error::NotAnAutomorphism("the images do not generate the group".into()))
}
