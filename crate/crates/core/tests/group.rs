mod common;

use common::{
    aut, fwd, id, inverse_tokens, naive_conjugates, naive_normal_form, naive_power, random_element, random_presentation, rng,
    tokens, w, Tok,
};
use fbc::automorphisms::inner;
use fbc::random;
use fbc::words::{Alphabet, Word};
use fbc::{ConjVerdict, FbcPresentation, GroupElement, Limits, Modulus, PowerConjVerdict};
use rand::Rng;

fn el(r: i64, u: &str) -> GroupElement {
    GroupElement::new(r, w(u))
}

fn limits() -> Limits {
    Limits { fix_search_len: 5, twisted_search_len: 5, divisor_budget: 24, periodic_search_len: 4, power_scan_max: 4, ..Limits::default() }
}

fn render_tokens(ts: &[Tok]) -> String {
    ts.iter()
        .map(|t| match t {
            Tok::L(l) => l.to_string(),
            Tok::T(true) => "t".into(),
            Tok::T(false) => "T".into(),
        })
        .collect()
}

/// Conjugators `(k, g)` with `|k| ≤ 4` and `|g| ≤ 5`, checked by token rewriting.
fn bfs_conjugator(g: &FbcPresentation, x: &GroupElement, y: &GroupElement) -> Option<GroupElement> {
    let target = naive_normal_form(g, &tokens(y));
    let words = common::all_words(&g.phi().alphabet(), 5);
    for k in [0i64, 1, -1, 2, -2, 3, -3, 4, -4] {
        for u in &words {
            let c = GroupElement::new(k, u.clone());
            let mut ts = inverse_tokens(&tokens(&c));
            ts.extend(tokens(x));
            ts.extend(tokens(&c));
            if naive_normal_form(g, &ts) == target {
                return Some(c);
            }
        }
    }
    None
}

fn desk_presentations() -> Vec<FbcPresentation> {
    let a2 = Alphabet::new(2);
    vec![
        FbcPresentation::infinite(id(2)),
        FbcPresentation::infinite(random::swap(2)),
        FbcPresentation::infinite(random::fib(2)),
        FbcPresentation::infinite(inner(&w("ab"), a2).unwrap()),
    ]
}

#[test]
fn spec_examples() {
    let fib = FbcPresentation::infinite(random::fib(2));
    assert_eq!(fib.multiply(&el(1, "a"), &el(1, "b")).unwrap(), el(2, "abb"));
    assert_eq!(fib.conjugate(&el(1, "a"), &el(1, "b")).unwrap(), el(1, "bb"));
    let swap = FbcPresentation::infinite(random::swap(2));
    assert_eq!(swap.power(&el(1, "a"), 2).unwrap(), el(2, "ba"));
    let ab = FbcPresentation::new(inner(&w("ab"), Alphabet::new(2)).unwrap(), Modulus::Finite(1), w("ab")).unwrap();
    assert_eq!(ab.normalize("t").unwrap(), el(0, "ab"));
    let torsion = FbcPresentation::new(random::swap(2), Modulus::Finite(2), Word::identity()).unwrap();
    assert!(torsion.is_torsion(&el(1, "")).unwrap());
    assert!(!FbcPresentation::infinite(id(2)).is_torsion(&el(1, "")).unwrap());
    assert!(torsion.is_torsion(&GroupElement::identity()).unwrap());
}

#[test]
fn multiply_and_power_match_token_rewriting() {
    let mut r = rng(21);
    for _ in 0..300 {
        let g = random_presentation(&mut r);
        let x = random_element(&mut r, &g, 3, 4);
        let y = random_element(&mut r, &g, 3, 4);
        let mut ts = tokens(&x);
        ts.extend(tokens(&y));
        assert_eq!(g.multiply(&x, &y).unwrap(), naive_normal_form(&g, &ts));
        assert!(g.multiply(&x, &g.inverse(&x).unwrap()).unwrap().is_identity());
        let p = r.random_range(-6..=6i64);
        assert_eq!(g.power(&x, p).unwrap(), naive_power(&g, &x, p), "{x}^{p}");
        if p > 0 {
            assert_eq!(g.power_closed(&x, p as u64).unwrap(), naive_power(&g, &x, p));
        }
        let c = random_element(&mut r, &g, 2, 3);
        let conj = g.conjugate(&x, &c).unwrap();
        assert!(naive_conjugates(&g, &x, &c, &conj));
    }
}

#[test]
fn normal_form_ignores_relator_insertions() {
    let mut r = rng(22);
    for _ in 0..300 {
        let g = random_presentation(&mut r);
        let alphabet = g.phi().alphabet();
        let x = random_element(&mut r, &g, 3, 5);
        let mut ts = tokens(&x);
        for _ in 0..3 {
            let relator: Vec<Tok> = match (r.random_range(0..4), g.modulus()) {
                (0, _) => {
                    let l = random::nonempty_word(&mut r, &alphabet, 1).letters()[0];
                    vec![Tok::L(l), Tok::L(l.inverse())]
                }
                (1, _) => vec![Tok::T(true), Tok::T(false)],
                (2, Modulus::Finite(m)) => {
                    // t^m h⁻¹
                    let mut out = vec![Tok::T(true); m as usize];
                    out.extend(g.h().inverse().letters().iter().map(|&l| Tok::L(l)));
                    out
                }
                _ => {
                    // t⁻¹ x t (xφ)⁻¹
                    let l = random::nonempty_word(&mut r, &alphabet, 1).letters()[0];
                    let mut out = vec![Tok::T(false), Tok::L(l), Tok::T(true)];
                    out.extend(fwd(g.phi(), &Word::letter(l)).inverse().letters().iter().map(|&l| Tok::L(l)));
                    out
                }
            };
            let at = r.random_range(0..=ts.len());
            ts.splice(at..at, relator);
        }
        assert_eq!(g.normalize(&render_tokens(&ts)).unwrap(), x, "{}", render_tokens(&ts));
        assert_eq!(naive_normal_form(&g, &ts), x);
    }
}

#[test]
fn conjugacy_agrees_with_bfs_oracle() {
    let l = limits();
    let mut r = rng(23);
    let alphabet = Alphabet::new(2);
    let (mut planted_yes, mut decided) = (0, 0);
    for g in desk_presentations() {
        for i in 0..30 {
            let x = g.element(r.random_range(-2..=2), random::word(&mut r, &alphabet, 4));
            let planted = i % 2 == 0;
            let y = if planted {
                let c = g.element(r.random_range(-2..=2), random::word(&mut r, &alphabet, 2));
                g.conjugate(&x, &c).unwrap()
            } else {
                g.element(x.r, random::word(&mut r, &alphabet, 4))
            };
            let verdict = g.conjugacy_decide(&x, &y, &l).unwrap();
            match &verdict {
                ConjVerdict::Yes { conjugator } => {
                    assert!(naive_conjugates(&g, &x, conjugator, &y));
                    planted_yes += planted as usize;
                    decided += 1;
                }
                ConjVerdict::No => {
                    assert!(!planted, "planted instance answered No");
                    assert_eq!(bfs_conjugator(&g, &x, &y), None, "{:?}: {x} {y}", g.phi());
                    decided += 1;
                }
                ConjVerdict::Unknown { .. } => {}
            }
            if planted {
                assert!(bfs_conjugator(&g, &x, &y).is_some());
            }
        }
    }
    assert!(planted_yes >= 55, "{planted_yes}");
    assert!(decided >= 90, "{decided}");
}

#[test]
fn conjugating_by_t_keeps_verdicts() {
    let l = limits();
    let mut r = rng(24);
    let alphabet = Alphabet::new(2);
    let t = GroupElement::new(1, Word::identity());
    let kind = |v: &ConjVerdict| std::mem::discriminant(v);
    for g in desk_presentations() {
        for i in 0..25 {
            let x = g.element(r.random_range(-2..=2), random::word(&mut r, &alphabet, 3));
            let y = if i % 2 == 0 {
                let c = g.element(r.random_range(-1..=1), random::word(&mut r, &alphabet, 2));
                g.conjugate(&x, &c).unwrap()
            } else {
                g.element(x.r, random::word(&mut r, &alphabet, 3))
            };
            let xt = g.conjugate(&x, &t).unwrap();
            let before = g.conjugacy_decide(&x, &y, &l).unwrap();
            let after = g.conjugacy_decide(&xt, &y, &l).unwrap();
            assert_eq!(kind(&before), kind(&after), "{:?}: {x} vs {xt} against {y}: {before:?} / {after:?}", g.phi());
        }
    }
}

#[test]
fn round_trip_conjugates_are_found() {
    let l = limits();
    let mut r = rng(25);
    for _ in 0..150 {
        let g = random_presentation(&mut r);
        let x = random_element(&mut r, &g, 2, 4);
        let c = random_element(&mut r, &g, 2, 3);
        let y = g.conjugate(&x, &c).unwrap();
        match g.conjugacy_decide(&x, &y, &l).unwrap() {
            ConjVerdict::Yes { conjugator } => assert!(naive_conjugates(&g, &x, &conjugator, &y)),
            other => panic!("{:?} {x} {y}: {other:?}", g.phi()),
        }
    }
}

#[test]
fn conjugacy_negatives() {
    let l = limits();
    let f2z = FbcPresentation::infinite(id(2));
    assert_eq!(f2z.conjugacy_decide(&el(0, "a"), &el(1, "a"), &l).unwrap(), ConjVerdict::No);
    assert_eq!(f2z.conjugacy_decide(&el(1, "a"), &el(1, "b"), &l).unwrap(), ConjVerdict::No);
    assert_eq!(bfs_conjugator(&f2z, &el(1, "a"), &el(1, "b")), None);
    assert_eq!(f2z.power_conjugacy_decide(&el(0, "a"), &el(0, "b"), &l).unwrap(), PowerConjVerdict::No);
    // t-exponents of different sign and magnitude in a finite quotient
    let swap2 = FbcPresentation::new(random::swap(2), Modulus::Finite(2), Word::identity()).unwrap();
    assert_eq!(swap2.conjugacy_decide(&el(0, "a"), &el(1, "a"), &l).unwrap(), ConjVerdict::No);
}

fn check_power_yes(g: &FbcPresentation, x: &GroupElement, y: &GroupElement, verdict: &PowerConjVerdict) {
    if let PowerConjVerdict::Yes { p, q, conjugator } = verdict {
        let xp = naive_power(g, x, *p);
        let yq = naive_power(g, y, *q);
        assert!(!yq.is_identity());
        assert!(naive_conjugates(g, &xp, conjugator, &yq), "{x}^{p} ~ {y}^{q} via {conjugator}");
    }
}

#[test]
fn power_conjugacy_examples() {
    let l = limits();
    let f2z = FbcPresentation::infinite(id(2));
    let v = f2z.power_conjugacy_decide(&el(0, "aa"), &el(0, "aaa"), &l).unwrap();
    assert_eq!(v, PowerConjVerdict::Yes { p: 3, q: 2, conjugator: GroupElement::identity() });
    assert!(f2z.power_conjugacy_decide(&GroupElement::identity(), &el(0, "a"), &l).is_err());
    // t-exponents 2 and 3 force p : q = 3 : 2
    let v = f2z.power_conjugacy_decide(&el(2, "a"), &el(3, "aab"), &l).unwrap();
    check_power_yes(&f2z, &el(2, "a"), &el(3, "aab"), &v);
    let v = f2z.power_conjugacy_decide(&el(2, "a"), &el(-3, "b"), &l).unwrap();
    assert!(matches!(v, PowerConjVerdict::No), "{v:?}");
    let v = f2z.power_conjugacy_decide(&el(1, ""), &el(0, "a"), &l).unwrap();
    assert_eq!(v, PowerConjVerdict::No);
}

#[test]
fn finite_m_power_conjugacy() {
    let l = limits();
    let swap2 = FbcPresentation::new(random::swap(2), Modulus::Finite(2), Word::identity()).unwrap();
    // t has order 2, ab has infinite order
    assert_eq!(swap2.order(&el(1, "")).unwrap(), Some(2));
    assert_eq!(swap2.order(&el(0, "ab")).unwrap(), None);
    assert_eq!(swap2.power_conjugacy_decide(&el(1, ""), &el(0, "ab"), &l).unwrap(), PowerConjVerdict::No);
    // (t a)² = (ba)(a)... a φ · a = ba, so t a has infinite order
    let v = swap2.power_conjugacy_decide(&el(1, "a"), &el(0, "ab"), &l).unwrap();
    check_power_yes(&swap2, &el(1, "a"), &el(0, "ab"), &v);
    assert!(matches!(v, PowerConjVerdict::Yes { .. }), "{v:?}");
    // t aA-conjugates: t and t·(a⁻¹ aφ) = t A b are conjugate torsion elements
    let c = el(0, "a");
    let y = swap2.conjugate(&el(1, ""), &c).unwrap();
    let v = swap2.power_conjugacy_decide(&el(1, ""), &y, &l).unwrap();
    check_power_yes(&swap2, &el(1, ""), &y, &v);
    assert!(matches!(v, PowerConjVerdict::Yes { p: 1, q: 1, .. }), "{v:?}");
}

#[test]
fn power_conjugacy_certificates_verify() {
    let l = limits();
    let mut r = rng(26);
    let mut yes = 0;
    for i in 0..150 {
        let g = random_presentation(&mut r);
        let x = random_element(&mut r, &g, 2, 3);
        if x.is_identity() {
            continue;
        }
        let y = if i % 2 == 0 {
            let c = random_element(&mut r, &g, 1, 2);
            let p = r.random_range(1..=3);
            g.conjugate(&g.power(&x, p).unwrap(), &c).unwrap()
        } else {
            random_element(&mut r, &g, 2, 3)
        };
        if y.is_identity() {
            continue;
        }
        let v = g.power_conjugacy_decide(&x, &y, &l).unwrap();
        check_power_yes(&g, &x, &y, &v);
        yes += matches!(v, PowerConjVerdict::Yes { .. }) as usize;
    }
    assert!(yes >= 60, "{yes}");
}

#[test]
fn presentation_json_round_trip() {
    let g = FbcPresentation::new(inner(&w("ab"), Alphabet::new(2)).unwrap(), Modulus::Finite(2), w("abab")).unwrap();
    let text = serde_json::to_string(&g.to_spec()).unwrap();
    let back: fbc::PresentationSpec = serde_json::from_str(&text).unwrap();
    assert_eq!(FbcPresentation::from_spec(&back).unwrap(), g);
    let inf: fbc::PresentationSpec = serde_json::from_str(r#"{"rank":2,"phi":{"images":["ab","a"]},"m":"inf"}"#).unwrap();
    assert_eq!(FbcPresentation::from_spec(&inf).unwrap().phi(), &aut(&["ab", "a"]));
    assert!(serde_json::from_str::<fbc::PresentationSpec>(r#"{"rank":2,"phi":{"images":["b","a"]},"m":0}"#).is_err());
}
