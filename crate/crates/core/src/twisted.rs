//! Twisted conjugacy `u ∼_φ v`: some `g` with `(gφ)⁻¹ u g = v`.
//!
//! The decider extends `φ` to `F * ⟨z⟩` by `z ↦ u z u⁻¹`, composes with
//! conjugation by `v`, and looks for an element `g⁻¹ z g` in the fixed
//! subgroup of the result; such a `g` is a twisted conjugator. The power
//! variant does the same with the periodic subgroup.

use serde::Serialize;

use crate::automorphisms::{extend_with_z, twisted_power_capped, FreeAutomorphism};
use crate::error::{Error, Result};
use crate::fixed_points::{classify_with, enumerate, fix_solve, periodic_subgroup, AutClass};
use crate::limits::Limits;
use crate::stallings::CoreGraph;
use crate::words::{conjugacy, Word};

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "outcome", rename_all = "lowercase")]
pub enum TwistedVerdict {
    Yes { g: Word },
    No,
    Unknown { reason: String },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "outcome", rename_all = "lowercase")]
pub enum PowerTwistedVerdict {
    Yes { p: u64, g: Word },
    No,
    Unknown { reason: String },
}

/// `(gφ)⁻¹ u g`, reduced.
pub fn twisted_verify(phi: &FreeAutomorphism, u: &Word, g: &Word) -> Result<Word> {
    twisted_verify_capped(phi, u, g, crate::automorphisms::DEFAULT_WORD_CAP)
}

fn twisted_verify_capped(phi: &FreeAutomorphism, u: &Word, g: &Word, cap: usize) -> Result<Word> {
    let gp = phi.apply_capped(g, cap)?;
    Ok(Word::product([&gp.inverse(), u, g]))
}

fn check_inputs(phi: &FreeAutomorphism, words: &[&Word]) -> Result<()> {
    let alphabet = phi.alphabet();
    if alphabet.with_z {
        return Err(Error::InvalidArgument("the automorphism must not involve z".into()));
    }
    for w in words {
        w.check_alphabet(&alphabet)?;
    }
    Ok(())
}

/// Shortlex-first `g` with `|g| ≤ max_len` and `(gφ)⁻¹ u g = v`.
pub fn twisted_bruteforce(phi: &FreeAutomorphism, u: &Word, v: &Word, max_len: usize, cap: usize) -> Result<Option<Word>> {
    for len in 0..=max_len {
        let mut found = None;
        enumerate(phi, len, cap, |g, img| {
            if g.len() != len {
                return Ok(false);
            }
            let g = Word::from_letters(g.iter().copied());
            let img = Word::from_letters(img.iter().copied());
            if &Word::product([&img.inverse(), u, &g]) == v {
                found = Some(g);
                return Ok(true);
            }
            Ok(false)
        })?;
        if found.is_some() {
            return Ok(found);
        }
    }
    Ok(None)
}

/// `φ' γ_v`, where `φ'` extends `φ` by `z ↦ u z u⁻¹`.
pub fn z_extension(phi: &FreeAutomorphism, u: &Word, v: &Word) -> Result<FreeAutomorphism> {
    let ext = extend_with_z(phi, u)?;
    let gamma = crate::automorphisms::inner(v, ext.alphabet())?;
    ext.compose(&gamma)
}

fn certify(phi: &FreeAutomorphism, u: &Word, v: &Word, g: Word, cap: usize) -> Result<TwistedVerdict> {
    if &twisted_verify_capped(phi, u, &g, cap)? != v {
        return Err(Error::Unsound(format!("{g} does not twist {u} to {v}")));
    }
    Ok(TwistedVerdict::Yes { g })
}

/// Twisted conjugacy over `F`. `Yes` is always verified; `No` only comes
/// from an exact fixed subgroup.
pub fn twisted_decide(phi: &FreeAutomorphism, u: &Word, v: &Word, limits: &Limits) -> Result<TwistedVerdict> {
    check_inputs(phi, &[u, v])?;
    let cap = limits.word_cap;
    if u == v {
        return Ok(TwistedVerdict::Yes { g: Word::identity() });
    }
    // For φ = γ_w, (gφ)⁻¹ u g = v  iff  g⁻¹ (wu) g = wv.
    let w = match classify_with(phi, limits) {
        AutClass::Identity => Some(Word::identity()),
        AutClass::Inner(w) => Some(w),
        _ => None,
    };
    if let Some(w) = w {
        return match conjugacy(&w.mul(u), &w.mul(v)) {
            Some(g) => certify(phi, u, v, g, cap),
            None => Ok(TwistedVerdict::No),
        };
    }

    let mut reason = String::new();
    match z_trick(phi, u, v, limits) {
        Ok((Some(g), _)) => return certify(phi, u, v, g, cap),
        Ok((None, true)) => return Ok(TwistedVerdict::No),
        Ok((None, false)) => {
            reason.push_str(&format!(
                "fixed subgroup searched to length {} without a z-conjugate",
                limits.fix_search_len
            ));
        }
        Err(Error::BudgetExceeded { length, cap }) => {
            reason.push_str(&format!("fixed subgroup search exceeded the word cap ({length} > {cap})"));
        }
        Err(e) => return Err(e),
    }
    match twisted_bruteforce(phi, u, v, limits.twisted_search_len, cap) {
        Ok(Some(g)) => certify(phi, u, v, g, cap),
        Ok(None) => Ok(TwistedVerdict::Unknown {
            reason: format!("{reason}; no conjugator of length <= {}", limits.twisted_search_len),
        }),
        Err(Error::BudgetExceeded { length, cap }) => Ok(TwistedVerdict::Unknown {
            reason: format!("{reason}; conjugator search exceeded the word cap ({length} > {cap})"),
        }),
        Err(e) => Err(e),
    }
}

/// Runs the z-extension search. Returns the conjugator if one shows up and
/// whether the fixed subgroup used was exact.
fn z_trick(phi: &FreeAutomorphism, u: &Word, v: &Word, limits: &Limits) -> Result<(Option<Word>, bool)> {
    let psi = z_extension(phi, u, v)?;
    let basis = fix_solve(&psi, limits)?;
    let g = CoreGraph::build(&basis.generators).find_z_conjugate();
    Ok((g, basis.is_exact()))
}

/// Folded fixed subgroup of `φ' γ_v`, for inspection and graph export.
pub fn z_extension_graph(phi: &FreeAutomorphism, u: &Word, v: &Word, limits: &Limits) -> Result<CoreGraph> {
    let psi = z_extension(phi, u, v)?;
    Ok(fix_solve(&psi, limits)?.graph())
}

/// Smallest `p` in `1..=max_p` with `(gφ^p)⁻¹ u_{φ,p} g = v_{φ,p}`.
fn least_power(phi: &FreeAutomorphism, u: &Word, v: &Word, g: &Word, max_p: u64, cap: usize) -> Result<Option<u64>> {
    let (mut up, mut vp, mut gp) = (u.clone(), v.clone(), g.clone());
    for p in 1..=max_p {
        gp = phi.apply_capped(&gp, cap)?;
        if Word::product([&gp.inverse(), &up, g]) == vp {
            return Ok(Some(p));
        }
        up = phi.apply_capped(&up, cap)?.mul(u);
        vp = phi.apply_capped(&vp, cap)?.mul(v);
        if up.len().max(vp.len()) > cap {
            return Err(Error::BudgetExceeded { length: up.len().max(vp.len()), cap });
        }
    }
    Ok(None)
}

fn certify_power(phi: &FreeAutomorphism, u: &Word, v: &Word, p: u64, g: Word, cap: usize) -> Result<PowerTwistedVerdict> {
    let phip = phi.power_capped(p as i64, cap)?;
    let up = twisted_power_capped(u, phi, p, cap)?;
    let vp = twisted_power_capped(v, phi, p, cap)?;
    if twisted_verify_capped(&phip, &up, &g, cap)? != vp {
        return Err(Error::Unsound(format!("{g} does not twist the {p}-th twisted powers")));
    }
    Ok(PowerTwistedVerdict::Yes { p, g })
}

/// Largest `p` tried when recovering the exponent from a periodic element.
const MAX_RECOVERED_POWER: u64 = 5040;

/// Decides whether `u_{φ,p} ∼_{φ^p} v_{φ,p}` for some `p ≥ 1` and returns
/// the least such `p` for the conjugator found.
pub fn power_twisted_decide(phi: &FreeAutomorphism, u: &Word, v: &Word, limits: &Limits) -> Result<PowerTwistedVerdict> {
    check_inputs(phi, &[u, v])?;
    let cap = limits.word_cap;
    if u == v {
        return Ok(PowerTwistedVerdict::Yes { p: 1, g: Word::identity() });
    }
    // For φ = γ_w, w^p u_{φ,p} = (wu)^p and φ^p = γ_{w^p}; roots are unique,
    // so a solution exists iff one exists for p = 1.
    let w = match classify_with(phi, limits) {
        AutClass::Identity => Some(Word::identity()),
        AutClass::Inner(w) => Some(w),
        _ => None,
    };
    if let Some(w) = w {
        return match conjugacy(&w.mul(u), &w.mul(v)) {
            Some(g) => certify_power(phi, u, v, 1, g, cap),
            None => Ok(PowerTwistedVerdict::No),
        };
    }

    // p = 1 is twisted conjugacy itself
    let mut reason = match twisted_decide(phi, u, v, limits)? {
        TwistedVerdict::Yes { g } => return certify_power(phi, u, v, 1, g, cap),
        TwistedVerdict::No => String::from("not twisted conjugate for p = 1; "),
        TwistedVerdict::Unknown { .. } => String::new(),
    };
    let psi = z_extension(phi, u, v)?;
    match periodic_subgroup(&psi, limits) {
        Ok(per) => {
            let graph = per.basis.graph();
            if let Some(g) = graph.find_z_conjugate() {
                let max_p = per.period.min(MAX_RECOVERED_POWER);
                match least_power(phi, u, v, &g, max_p, cap) {
                    Ok(Some(p)) => return certify_power(phi, u, v, p, g, cap),
                    Ok(None) if per.basis.is_exact() => {
                        return Err(Error::Unsound(format!("{g} found but no power up to {max_p} works")))
                    }
                    Ok(None) => {}
                    Err(Error::BudgetExceeded { .. }) => {}
                    Err(e) => return Err(e),
                }
            } else if per.basis.is_exact() {
                return Ok(PowerTwistedVerdict::No);
            }
            reason.push_str(&format!(
                "periodic subgroup searched to length {}",
                limits.periodic_search_len
            ));
            if let Some(s) = per.budget_hit {
                reason.push_str(&format!(", divisor scan stopped at {s} by the word cap"));
            }
        }
        Err(Error::BudgetExceeded { length, cap }) => {
            reason.push_str(&format!("periodic subgroup search exceeded the word cap ({length} > {cap})"));
        }
        Err(e) => return Err(e),
    }

    let mut phip = phi.clone();
    let (mut up, mut vp) = (u.clone(), v.clone());
    for p in 1..=limits.power_scan_max as u64 {
        if p > 1 {
            let step = phip
                .compose_capped(phi, cap)
                .and_then(|next| Ok((next, phi.apply_capped(&up, cap)?.mul(u), phi.apply_capped(&vp, cap)?.mul(v))));
            match step {
                Ok((next, nu, nv)) => {
                    phip = next;
                    up = nu;
                    vp = nv;
                }
                Err(Error::BudgetExceeded { .. }) => {
                    reason.push_str(&format!("; power scan stopped at p = {p} by the word cap"));
                    break;
                }
                Err(e) => return Err(e),
            }
        }
        match twisted_bruteforce(&phip, &up, &vp, limits.twisted_search_len, cap) {
            Ok(Some(g)) => return certify_power(phi, u, v, p, g, cap),
            Ok(None) => {}
            Err(Error::BudgetExceeded { .. }) => {
                reason.push_str(&format!("; conjugator search at p = {p} exceeded the word cap"));
                break;
            }
            Err(e) => return Err(e),
        }
    }
    Ok(PowerTwistedVerdict::Unknown {
        reason: format!(
            "{reason}; no conjugator of length <= {} for p <= {}",
            limits.twisted_search_len, limits.power_scan_max
        ),
    })
}
