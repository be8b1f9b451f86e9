//! The group `G = ⟨x_1, …, x_n, t | t⁻¹ x_i t = x_i φ, t^m = h⟩` and its
//! conjugacy and power conjugacy deciders.
//!
//! Elements are kept in the normal form `t^r u` with `u ∈ F`, and
//! `0 ≤ r < m` when `m` is finite. Multiplication uses `w t^s = t^s (wφ^s)`.

use std::fmt;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::automorphisms::{AutomorphismSpec, FreeAutomorphism};
use crate::error::{Error, Result};
use crate::limits::Limits;
use crate::orbit::{orbit_decide, orbit_scan_exact, power_orbit_decide, power_orbit_with, OrbitVerdict, PowerOrbitVerdict};
use crate::twisted::{power_twisted_decide, twisted_bruteforce, twisted_decide, PowerTwistedVerdict, TwistedVerdict};
use crate::words::{parse_group_word, parse_word, render, Token, Word};

/// Order of `t` modulo `F`.
#[derive(Copy, Clone, Debug, PartialEq, Eq, Hash)]
pub enum Modulus {
    Infinite,
    Finite(u64),
}

impl Serialize for Modulus {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        match self {
            Modulus::Infinite => s.serialize_str("inf"),
            Modulus::Finite(m) => s.serialize_u64(*m),
        }
    }
}

impl<'de> Deserialize<'de> for Modulus {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Modulus, D::Error> {
        #[derive(Deserialize)]
        #[serde(untagged)]
        enum Raw {
            Int(u64),
            Text(String),
        }
        match Raw::deserialize(d)? {
            Raw::Int(0) => Err(serde::de::Error::custom("m must be positive")),
            Raw::Int(m) => Ok(Modulus::Finite(m)),
            Raw::Text(s) if s == "inf" => Ok(Modulus::Infinite),
            Raw::Text(s) => Err(serde::de::Error::custom(format!("expected an integer or \"inf\", got {s:?}"))),
        }
    }
}

/// JSON form `{"rank": n, "phi": {...}, "m": int or "inf", "h": "word"}`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PresentationSpec {
    pub rank: u32,
    pub phi: AutomorphismSpec,
    pub m: Modulus,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub h: Option<String>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FbcPresentation {
    phi: FreeAutomorphism,
    m: Modulus,
    h: Word,
}

/// `t^r u`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct GroupElement {
    pub r: i64,
    pub u: Word,
}

impl GroupElement {
    pub fn new(r: i64, u: Word) -> GroupElement {
        GroupElement { r, u }
    }

    pub fn identity() -> GroupElement {
        GroupElement { r: 0, u: Word::identity() }
    }

    pub fn is_identity(&self) -> bool {
        self.r == 0 && self.u.is_identity()
    }
}

impl fmt::Display for GroupElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_identity() {
            return write!(f, "1");
        }
        let t = if self.r > 0 { "t" } else { "T" };
        let head = t.repeat(self.r.unsigned_abs() as usize);
        let tail = if self.u.is_identity() { String::new() } else { render(&self.u) };
        write!(f, "{head}{tail}")
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "outcome", rename_all = "lowercase")]
pub enum ConjVerdict {
    /// `conjugator⁻¹ · x · conjugator = y`.
    Yes { conjugator: GroupElement },
    No,
    Unknown { reason: String },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "outcome", rename_all = "lowercase")]
pub enum PowerConjVerdict {
    /// `conjugator⁻¹ · x^p · conjugator = y^q`.
    Yes { p: i64, q: i64, conjugator: GroupElement },
    No,
    Unknown { reason: String },
}

fn gcd(a: u64, b: u64) -> u64 {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

impl FbcPresentation {
    /// Checks `hφ = h` and `x φ^m = h⁻¹ x h` on every generator when `m` is finite.
    pub fn new(phi: FreeAutomorphism, m: Modulus, h: Word) -> Result<FbcPresentation> {
        let p = FbcPresentation { phi, m, h };
        p.validate()?;
        Ok(p)
    }

    /// The mapping torus `F ⋊_φ ℤ`.
    pub fn infinite(phi: FreeAutomorphism) -> FbcPresentation {
        FbcPresentation { phi, m: Modulus::Infinite, h: Word::identity() }
    }

    pub fn from_spec(spec: &PresentationSpec) -> Result<FbcPresentation> {
        let phi = FreeAutomorphism::from_spec(&spec.phi)?;
        if phi.rank() != spec.rank {
            return Err(Error::RankMismatch(format!(
                "presentation has rank {} but phi has rank {}",
                spec.rank,
                phi.rank()
            )));
        }
        let h = match (&spec.m, &spec.h) {
            (_, Some(text)) => parse_word(text)?,
            (Modulus::Infinite, None) => Word::identity(),
            (Modulus::Finite(_), None) => {
                return Err(Error::InconsistentPresentation("finite m needs h".into()))
            }
        };
        FbcPresentation::new(phi, spec.m, h)
    }

    pub fn to_spec(&self) -> PresentationSpec {
        PresentationSpec {
            rank: self.rank(),
            phi: self.phi.to_spec(),
            m: self.m,
            h: match self.m {
                Modulus::Infinite => None,
                Modulus::Finite(_) => Some(self.h.to_string()),
            },
        }
    }

    pub fn validate(&self) -> Result<()> {
        let alphabet = self.phi.alphabet();
        if alphabet.with_z {
            return Err(Error::InvalidArgument("the automorphism must not involve z".into()));
        }
        self.h.check_alphabet(&alphabet)?;
        let Modulus::Finite(m) = self.m else {
            if !self.h.is_identity() {
                return Err(Error::InconsistentPresentation("h must be trivial when m is infinite".into()));
            }
            return Ok(());
        };
        if m == 0 {
            return Err(Error::InconsistentPresentation("m must be positive".into()));
        }
        if self.phi.apply(&self.h)? != self.h {
            return Err(Error::InconsistentPresentation(format!("t does not commute with h: hφ = {} ≠ h", self.phi.apply(&self.h)?)));
        }
        for g in alphabet.generators() {
            let x = Word::letter(g);
            let lhs = self.phi.apply_power_capped(&x, m as i64, crate::automorphisms::DEFAULT_WORD_CAP)?;
            let rhs = self.h.conjugate(&x);
            if lhs != rhs {
                return Err(Error::InconsistentPresentation(format!(
                    "t^{m} = h fails on {x}: {x}φ^{m} = {lhs} but h⁻¹{x}h = {rhs}"
                )));
            }
        }
        Ok(())
    }

    pub fn rank(&self) -> u32 {
        self.phi.rank()
    }

    pub fn phi(&self) -> &FreeAutomorphism {
        &self.phi
    }

    pub fn modulus(&self) -> Modulus {
        self.m
    }

    pub fn h(&self) -> &Word {
        &self.h
    }

    fn cap(&self) -> usize {
        crate::automorphisms::DEFAULT_WORD_CAP
    }

    /// Normal form of `t^r u`, using `t^{am+b} = t^b h^a` when `m` is finite.
    pub fn element(&self, r: i64, u: Word) -> GroupElement {
        match self.m {
            Modulus::Infinite => GroupElement { r, u },
            Modulus::Finite(m) => {
                let m = m as i64;
                let (a, b) = (r.div_euclid(m), r.rem_euclid(m));
                GroupElement { r: b, u: self.h.pow(a).mul(&u) }
            }
        }
    }

    fn phi_pow(&self, w: &Word, k: i64) -> Result<Word> {
        self.phi.apply_power_capped(w, k, self.cap())
    }

    /// Parses a word over the generators and `t`/`T` and brings it to normal form.
    pub fn normalize(&self, text: &str) -> Result<GroupElement> {
        let mut acc = GroupElement::identity();
        let alphabet = self.phi.alphabet();
        for token in parse_group_word(text)? {
            let factor = match token {
                Token::Stable(true) => GroupElement::new(1, Word::identity()),
                Token::Stable(false) => GroupElement::new(-1, Word::identity()),
                Token::Letter(l) => {
                    let w = Word::letter(l);
                    w.check_alphabet(&alphabet)?;
                    GroupElement::new(0, w)
                }
            };
            acc = self.multiply(&acc, &factor)?;
        }
        Ok(acc)
    }

    /// `t^r u · t^s v = t^{r+s} (uφ^s) v`.
    pub fn multiply(&self, x: &GroupElement, y: &GroupElement) -> Result<GroupElement> {
        let u = self.phi_pow(&x.u, y.r)?;
        Ok(self.element(x.r + y.r, u.mul(&y.u)))
    }

    /// `(t^r u)⁻¹ = t^{-r} (u⁻¹ φ^{-r})`.
    pub fn inverse(&self, x: &GroupElement) -> Result<GroupElement> {
        Ok(self.element(-x.r, self.phi_pow(&x.u.inverse(), -x.r)?))
    }

    /// `y⁻¹ x y`, computed by multiplication and by the closed form
    /// `(t^k g)⁻¹ (t^r u) (t^k g) = t^r (gφ^r)⁻¹ (uφ^k) g`; the two must agree.
    pub fn conjugate(&self, x: &GroupElement, y: &GroupElement) -> Result<GroupElement> {
        let via_mul = self.multiply(&self.multiply(&self.inverse(y)?, x)?, y)?;
        let gr = self.phi_pow(&y.u, x.r)?;
        let uk = self.phi_pow(&x.u, y.r)?;
        let closed = self.element(x.r, Word::product([&gr.inverse(), &uk, &y.u]));
        if via_mul != closed {
            return Err(Error::Unsound(format!("conjugation of {x} by {y}: {via_mul} vs {closed}")));
        }
        Ok(closed)
    }

    /// `x^p` via `(t^r u)^p = t^{rp} u_{φ^r,p}`, checked against repeated
    /// multiplication.
    pub fn power(&self, x: &GroupElement, p: i64) -> Result<GroupElement> {
        if p == 0 {
            return Ok(GroupElement::identity());
        }
        if p < 0 {
            return self.power(&self.inverse(x)?, -p);
        }
        let closed = self.power_closed(x, p as u64)?;
        let mut iter = x.clone();
        for _ in 1..p {
            iter = self.multiply(&iter, x)?;
        }
        if iter != closed {
            return Err(Error::Unsound(format!("{x}^{p}: {iter} vs {closed}")));
        }
        Ok(closed)
    }

    /// The closed form alone.
    pub fn power_closed(&self, x: &GroupElement, p: u64) -> Result<GroupElement> {
        let mut acc = x.u.clone();
        for _ in 1..p {
            acc = self.phi_pow(&acc, x.r)?.mul(&x.u);
            if acc.len() > self.cap() {
                return Err(Error::BudgetExceeded { length: acc.len(), cap: self.cap() });
            }
        }
        Ok(self.element(x.r * p as i64, acc))
    }

    /// Finite order. When `m` is finite, `x^m ∈ F` and `F` is torsion-free.
    pub fn is_torsion(&self, x: &GroupElement) -> Result<bool> {
        match self.m {
            Modulus::Infinite => Ok(x.is_identity()),
            Modulus::Finite(m) => Ok(self.power(x, m as i64)?.is_identity()),
        }
    }

    /// Least `d ≥ 1` with `x^d = 1`, for torsion elements.
    pub fn order(&self, x: &GroupElement) -> Result<Option<u64>> {
        let Modulus::Finite(m) = self.m else {
            return Ok(x.is_identity().then_some(1));
        };
        let mut acc = x.clone();
        for d in 1..=m {
            if acc.is_identity() {
                return Ok(Some(d));
            }
            acc = self.multiply(&acc, x)?;
        }
        Ok(None)
    }

    fn certify(&self, x: &GroupElement, y: &GroupElement, c: GroupElement) -> Result<ConjVerdict> {
        if &self.conjugate(x, &c)? != y {
            return Err(Error::Unsound(format!("{c} does not conjugate {x} to {y}")));
        }
        Ok(ConjVerdict::Yes { conjugator: c })
    }

    /// `t^r u ∼ t^s v` iff `r = s` and `v ∼_{φ^r} uφ^k` for some `0 ≤ k < |r|`
    /// (any `k` when `r = 0`).
    pub fn conjugacy_decide(&self, x: &GroupElement, y: &GroupElement, limits: &Limits) -> Result<ConjVerdict> {
        let x = self.element(x.r, x.u.clone());
        let y = self.element(y.r, y.u.clone());
        if x.r != y.r {
            return Ok(ConjVerdict::No);
        }
        let cap = limits.word_cap;
        if x.r == 0 {
            let verdict = match self.m {
                // φ^m is inner, so k only matters modulo m
                Modulus::Finite(m) => orbit_scan_exact(&self.phi, &x.u, &y.u, m, cap),
                Modulus::Infinite => orbit_decide(&self.phi, &x.u, &y.u, limits),
            };
            return match verdict {
                Ok(OrbitVerdict::Yes { k, c }) => self.certify(&x, &y, self.element(k, c)),
                Ok(OrbitVerdict::No) => Ok(ConjVerdict::No),
                Ok(OrbitVerdict::Unknown { reason }) => Ok(ConjVerdict::Unknown { reason }),
                Err(Error::BudgetExceeded { length, cap }) => Ok(ConjVerdict::Unknown {
                    reason: format!("word cap exceeded ({length} > {cap})"),
                }),
                Err(e) => Err(e),
            };
        }
        let phir = match self.phi.power_capped(x.r, cap) {
            Ok(p) => p,
            Err(Error::BudgetExceeded { length, cap }) => {
                return Ok(ConjVerdict::Unknown { reason: format!("φ^{} exceeds the word cap ({length} > {cap})", x.r) })
            }
            Err(e) => return Err(e),
        };
        let mut reasons = Vec::new();
        let mut uk = x.u.clone();
        for k in 0..x.r.abs() {
            if k > 0 {
                uk = match self.phi.apply_capped(&uk, cap) {
                    Ok(w) => w,
                    Err(Error::BudgetExceeded { .. }) => {
                        reasons.push(format!("k = {k}: word cap exceeded"));
                        break;
                    }
                    Err(e) => return Err(e),
                };
            }
            match twisted_decide(&phir, &uk, &y.u, limits)? {
                TwistedVerdict::Yes { g } => return self.certify(&x, &y, self.element(k, g)),
                TwistedVerdict::No => {}
                TwistedVerdict::Unknown { reason } => reasons.push(format!("k = {k}: {reason}")),
            }
        }
        if reasons.is_empty() {
            return Ok(ConjVerdict::No);
        }
        if let Some(c) = self.shifted_twisted_search(&x, &y, &phir, limits)? {
            return self.certify(&x, &y, c);
        }
        Ok(ConjVerdict::Unknown { reason: reasons.join("; ") })
    }

    /// Shifts `k` outside `0..|r|` are redundant in theory, but moving a
    /// conjugator `t^k g` into that range lengthens `g` by about `|k|·|u|`,
    /// which can push it past the bounded searches. Trying the shift directly
    /// with the plain conjugator search keeps short conjugators short.
    fn shifted_twisted_search(
        &self,
        x: &GroupElement,
        y: &GroupElement,
        phir: &FreeAutomorphism,
        limits: &Limits,
    ) -> Result<Option<GroupElement>> {
        let r = x.r.abs();
        let radius = limits.orbit_radius as i64;
        for dir in [1i64, -1] {
            let mut uk = x.u.clone();
            for step in 1..=radius {
                let k = dir * step;
                uk = match self.phi.apply_power_capped(&uk, dir, limits.word_cap) {
                    Ok(w) => w,
                    Err(Error::BudgetExceeded { .. }) => break,
                    Err(e) => return Err(e),
                };
                if (0..r).contains(&k) {
                    continue;
                }
                if let Some(g) = twisted_bruteforce(phir, &uk, &y.u, limits.twisted_search_len, limits.word_cap)? {
                    return Ok(Some(self.element(k, g)));
                }
            }
        }
        Ok(None)
    }

    fn certify_power(&self, x: &GroupElement, y: &GroupElement, p: i64, q: i64, c: GroupElement) -> Result<PowerConjVerdict> {
        let lhs = self.conjugate(&self.power(x, p)?, &c)?;
        let rhs = self.power(y, q)?;
        if lhs != rhs || rhs.is_identity() {
            return Err(Error::Unsound(format!("({x})^{p} conjugated by {c} is {lhs}, not ({y})^{q} = {rhs}")));
        }
        Ok(PowerConjVerdict::Yes { p, q, conjugator: c })
    }

    /// Whether `x^p ∼ y^q` for some non-zero `p, q` with both powers non-trivial.
    pub fn power_conjugacy_decide(&self, x: &GroupElement, y: &GroupElement, limits: &Limits) -> Result<PowerConjVerdict> {
        let x = self.element(x.r, x.u.clone());
        let y = self.element(y.r, y.u.clone());
        if x.is_identity() || y.is_identity() {
            return Err(Error::InvalidArgument("power conjugacy needs non-trivial elements".into()));
        }
        match self.m {
            Modulus::Finite(m) => self.power_conjugacy_finite(&x, &y, m, limits),
            Modulus::Infinite => match self.power_conjugacy_infinite(&x, &y, limits) {
                Err(Error::BudgetExceeded { length, cap }) => Ok(PowerConjVerdict::Unknown {
                    reason: format!("word cap exceeded ({length} > {cap})"),
                }),
                other => other,
            },
        }
    }

    fn power_conjugacy_finite(&self, x: &GroupElement, y: &GroupElement, m: u64, limits: &Limits) -> Result<PowerConjVerdict> {
        let (ox, oy) = (self.order(x)?, self.order(y)?);
        match (ox, oy) {
            (Some(ox), Some(oy)) => {
                let mut reasons = Vec::new();
                for p in 1..ox as i64 {
                    let xp = self.power(x, p)?;
                    for q in 1..oy as i64 {
                        let yq = self.power(y, q)?;
                        match self.conjugacy_decide(&xp, &yq, limits)? {
                            ConjVerdict::Yes { conjugator } => return self.certify_power(x, y, p, q, conjugator),
                            ConjVerdict::No => {}
                            ConjVerdict::Unknown { reason } => reasons.push(format!("p = {p}, q = {q}: {reason}")),
                        }
                    }
                }
                if reasons.is_empty() {
                    Ok(PowerConjVerdict::No)
                } else {
                    Ok(PowerConjVerdict::Unknown { reason: reasons.join("; ") })
                }
            }
            (None, None) => {
                let m = m as i64;
                let xm = self.power(x, m)?;
                let ym = self.power(y, m)?;
                let verdict = power_orbit_with(&self.phi, &xm.u, &ym.u, limits.word_cap, |a, b| {
                    orbit_scan_exact(&self.phi, a, b, m as u64, limits.word_cap)
                })?;
                match verdict {
                    PowerOrbitVerdict::Yes { p, q, k, c } => self.certify_power(x, y, m * p, m * q, self.element(k, c)),
                    PowerOrbitVerdict::No => Ok(PowerConjVerdict::No),
                    PowerOrbitVerdict::Unknown { reason } => Ok(PowerConjVerdict::Unknown { reason }),
                }
            }
            _ => Ok(PowerConjVerdict::No),
        }
    }

    fn power_conjugacy_infinite(&self, x: &GroupElement, y: &GroupElement, limits: &Limits) -> Result<PowerConjVerdict> {
        let (r, s) = (x.r, y.r);
        if r == 0 && s == 0 {
            return match power_orbit_decide(&self.phi, &x.u, &y.u, limits)? {
                PowerOrbitVerdict::Yes { p, q, k, c } => self.certify_power(x, y, p, q, self.element(k, c)),
                PowerOrbitVerdict::No => Ok(PowerConjVerdict::No),
                PowerOrbitVerdict::Unknown { reason } => Ok(PowerConjVerdict::Unknown { reason }),
            };
        }
        // rp = sq forces r and s to vanish together
        if r == 0 || s == 0 {
            return Ok(PowerConjVerdict::No);
        }
        // Replace y by y⁻¹ when the signs differ so that p, q > 0, then pass
        // to (x^{|s|/d}, y^{|r|/d}), which share the t-exponent.
        let sign = if (r > 0) == (s > 0) { 1 } else { -1 };
        let d = gcd(r.unsigned_abs(), s.unsigned_abs()) as i64;
        let (a, b) = (s.abs() / d, r.abs() / d);
        let big_x = self.power(x, a)?;
        let big_y = self.power(y, sign * b)?;
        debug_assert_eq!(big_x.r, big_y.r);
        let rr = big_x.r;
        let phir = self.phi.power_capped(rr, limits.word_cap)?;
        let mut reasons = Vec::new();
        let mut uk = big_x.u.clone();
        for k in 0..rr.abs() {
            if k > 0 {
                uk = self.phi.apply_capped(&uk, limits.word_cap)?;
            }
            match power_twisted_decide(&phir, &uk, &big_y.u, limits)? {
                PowerTwistedVerdict::Yes { p, g } => {
                    let p = p as i64;
                    return self.certify_power(x, y, a * p, sign * b * p, self.element(k, g));
                }
                PowerTwistedVerdict::No => {}
                PowerTwistedVerdict::Unknown { reason } => reasons.push(format!("k = {k}: {reason}")),
            }
        }
        if reasons.is_empty() {
            Ok(PowerConjVerdict::No)
        } else {
            Ok(PowerConjVerdict::Unknown { reason: reasons.join("; ") })
        }
    }
}
