//! Orbit conjugacy: some `k` with `uφ^k` conjugate to `v`, and the variant
//! for powers via roots.
//!
//! Exact for automorphisms of finite order and for inner automorphisms;
//! otherwise a bounded scan over `k ∈ [-K, K]` that answers `Unknown`
//! rather than `No`.

use serde::Serialize;

use crate::automorphisms::FreeAutomorphism;
use crate::error::{Error, Result};
use crate::fixed_points::{classify_with, AutClass};
use crate::limits::Limits;
use crate::words::{conjugacy, root, Word};

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "outcome", rename_all = "lowercase")]
pub enum OrbitVerdict {
    /// `c⁻¹ (uφ^k) c = v`.
    Yes { k: i64, c: Word },
    No,
    Unknown { reason: String },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "outcome", rename_all = "lowercase")]
pub enum PowerOrbitVerdict {
    /// `c⁻¹ (u^p φ^k) c = v^q` with `q ≥ 1`; `p` is negative when `u` has to
    /// be inverted.
    Yes { p: i64, q: i64, k: i64, c: Word },
    No,
    Unknown { reason: String },
}

fn certify(phi: &FreeAutomorphism, u: &Word, v: &Word, k: i64, c: Word, cap: usize) -> Result<OrbitVerdict> {
    let image = phi.apply_power_capped(u, k, cap)?;
    if &c.conjugate(&image) != v {
        return Err(Error::Unsound(format!("{c} does not carry {u}φ^{k} to {v}")));
    }
    Ok(OrbitVerdict::Yes { k, c })
}

/// Exact scan over `k ∈ 0..period`, valid when `φ^period` is inner.
pub fn orbit_scan_exact(phi: &FreeAutomorphism, u: &Word, v: &Word, period: u64, cap: usize) -> Result<OrbitVerdict> {
    let target = v.cyclic_len();
    let mut cur = u.clone();
    for k in 0..period as i64 {
        if k > 0 {
            cur = phi.apply_capped(&cur, cap)?;
        }
        if cur.cyclic_len() == target {
            if let Some(c) = conjugacy(&cur, v) {
                return certify(phi, u, v, k, c, cap);
            }
        }
    }
    Ok(OrbitVerdict::No)
}

pub fn orbit_decide(phi: &FreeAutomorphism, u: &Word, v: &Word, limits: &Limits) -> Result<OrbitVerdict> {
    let alphabet = phi.alphabet();
    u.check_alphabet(&alphabet)?;
    v.check_alphabet(&alphabet)?;
    let cap = limits.word_cap;
    match classify_with(phi, limits) {
        // uγ_w^k is conjugate to u for every k
        AutClass::Identity | AutClass::Inner(_) => {
            orbit_scan_exact(phi, u, v, 1, cap)
        }
        AutClass::LetterPermutation { order } => orbit_scan_exact(phi, u, v, order as u64, cap),
        AutClass::FiniteOrder(d) => orbit_scan_exact(phi, u, v, d as u64, cap),
        AutClass::General => orbit_scan_bounded(phi, u, v, limits),
    }
}

fn orbit_scan_bounded(phi: &FreeAutomorphism, u: &Word, v: &Word, limits: &Limits) -> Result<OrbitVerdict> {
    let cap = limits.word_cap;
    let target = v.cyclic_len();
    let long = 4 * u.len().max(v.len()).max(1);
    let try_k = |w: &Word, k: i64| -> Result<Option<OrbitVerdict>> {
        if w.cyclic_len() == target {
            if let Some(c) = conjugacy(w, v) {
                return certify(phi, u, v, k, c, cap).map(Some);
            }
        }
        Ok(None)
    };
    if let Some(r) = try_k(u, 0)? {
        return Ok(r);
    }
    let (mut fwd, mut back) = (u.clone(), u.clone());
    let mut streak = 0;
    for k in 1..=limits.orbit_radius as i64 {
        let step = phi
            .apply_capped(&fwd, cap)
            .and_then(|f| Ok((f, phi.apply_inverse_capped(&back, cap)?)));
        match step {
            Ok((f, b)) => {
                fwd = f;
                back = b;
            }
            Err(Error::BudgetExceeded { length, cap }) => {
                return Ok(OrbitVerdict::Unknown {
                    reason: format!("orbit exceeded the word cap at |k| = {k} ({length} > {cap})"),
                })
            }
            Err(e) => return Err(e),
        }
        if let Some(r) = try_k(&fwd, k)? {
            return Ok(r);
        }
        if let Some(r) = try_k(&back, -k)? {
            return Ok(r);
        }
        if fwd.cyclic_len() > long && back.cyclic_len() > long {
            streak += 1;
            if streak == 4 {
                return Ok(OrbitVerdict::Unknown {
                    reason: format!("orbit outgrew 4·max(|u|,|v|) for 4 steps at |k| = {k}"),
                });
            }
        } else {
            streak = 0;
        }
    }
    Ok(OrbitVerdict::Unknown {
        reason: format!("no k with |k| <= {}", limits.orbit_radius),
    })
}

fn gcd(a: u64, b: u64) -> u64 {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

pub fn power_orbit_decide(phi: &FreeAutomorphism, u: &Word, v: &Word, limits: &Limits) -> Result<PowerOrbitVerdict> {
    power_orbit_with(phi, u, v, limits.word_cap, |a, b| orbit_decide(phi, a, b, limits))
}

/// Power orbit conjugacy with a caller-supplied orbit solver. Writes
/// `u = û^a`, `v = v̂^b` with `û, v̂` not proper powers; then `u^p φ^k ∼ v^q`
/// iff `ûφ^k ∼ v̂^ε` with `ε·a·p = b·q`.
pub fn power_orbit_with<F>(phi: &FreeAutomorphism, u: &Word, v: &Word, cap: usize, mut solve: F) -> Result<PowerOrbitVerdict>
where
    F: FnMut(&Word, &Word) -> Result<OrbitVerdict>,
{
    if u.is_identity() || v.is_identity() {
        return Err(Error::InvalidArgument("power conjugacy needs non-trivial elements".into()));
    }
    let (ur, a) = root(u)?;
    let (vr, b) = root(v)?;
    let g = gcd(a as u64, b as u64) as i64;
    let mut reasons = Vec::new();
    for eps in [1i64, -1] {
        let target = if eps == 1 { vr.clone() } else { vr.inverse() };
        match solve(&ur, &target)? {
            OrbitVerdict::Yes { k, c } => {
                let p = eps * b as i64 / g;
                let q = a as i64 / g;
                let lhs = phi.apply_power_capped(&u.pow(p), k, cap)?;
                if c.conjugate(&lhs) != v.pow(q) {
                    return Err(Error::Unsound(format!("power orbit certificate for {u}, {v}")));
                }
                return Ok(PowerOrbitVerdict::Yes { p, q, k, c });
            }
            OrbitVerdict::No => {}
            OrbitVerdict::Unknown { reason } => reasons.push(reason),
        }
    }
    if reasons.is_empty() {
        Ok(PowerOrbitVerdict::No)
    } else {
        Ok(PowerOrbitVerdict::Unknown { reason: reasons.join("; ") })
    }
}
