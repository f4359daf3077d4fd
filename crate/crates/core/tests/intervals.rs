use std::collections::BTreeSet;

use locale_forge::dsl::{parse_gen, parse_term};
use locale_forge::eval::points;
use locale_forge::intervals::*;
use locale_forge::lattice::Law;
use locale_forge::presentation::print::{self, Style};
use locale_forge::presentation::{instantiate_bounded, Builtin, Family, Gen, GeneratorDomain, NatOpen, Sorts, Term};
use locale_forge::rational::{parse_grid, Endpoint, Rat};
use proptest::prelude::*;

fn family(src: &str) -> Family {
    match parse_term(src).unwrap() {
        Term::Family(f) => f,
        other => panic!("not a family: {other:?}"),
    }
}

fn show(t: &Term) -> String {
    print::term(t, Style::Ascii)
}

fn gen(s: &str) -> Gen {
    parse_gen(s).unwrap()
}

#[test]
fn bounded_meet_with_shifts() {
    let t = expand_family_meet(&gen("OI(0,1)"), &family("V[n:Z] OI(1/2+n, 3/2+n)")).unwrap();
    assert_eq!(show(&t), "OI(0,1/2) v OI(1/2,1)");
}

#[test]
fn bounded_meet_drops_empty_members() {
    // n = 0 gives OI(1,1), which is empty
    let t = expand_family_meet(&gen("OI(0,1)"), &family("V[n:Z] OI(1+n, 2+n)")).unwrap();
    assert_eq!(show(&t), "OI(0,1)");
}

#[test]
fn empty_interval_meets_to_zero() {
    let t = expand_family_meet(&gen("OI(1,1)"), &family("V[n:Z] OI(n, 1+n)")).unwrap();
    assert_eq!(t, Term::zero());
}

#[test]
fn unbounded_meet_keeps_residue() {
    let t = expand_family_meet(&gen("OI(-inf,0)"), &family("V[n:Z] OI(p+n, q+n)")).unwrap();
    assert_eq!(show(&t), "V[n:Z | p+n < 0] OI(p+n,0 ^ (q+n))");
}

#[test]
fn circle_open_images() {
    let spec = circle_open_spec();
    let img = |g: &str| show(&spec.image_of(&gen(g)).unwrap());
    assert_eq!(img("OI(0,1)"), "V[n:Z] OI(n,1+n)");
    assert_eq!(img("OI(-inf,+inf)"), "V[n:Z] OI(-inf,+inf)");
    assert_eq!(img("OI(1,1)"), "V[n:Z] OI(1+n,1+n)");
}

#[test]
fn circle_proper_cases() {
    let spec = circle_proper_spec();
    let img = |g: &str| show(&spec.image_of(&gen(g)).unwrap());
    assert_eq!(img("CC(1/2,1/2)"), "CC(1/2,1/2)");
    assert_eq!(img("CC(0,1/2)"), "CC(0,1/2) ^ CC(1,1)");
    assert_eq!(img("CC(1/2,1)"), "CC(1/2,1) ^ CC(0,0)");
    assert_eq!(img("CC(0,1)"), "0");
}

fn samples() -> Vec<Rat> {
    (0..=16).map(|k| Rat::new(k, 16)).collect()
}

/// `⦆p,q⦅` as the sample points of `[0,1]` outside `[p,q]`.
fn coclosed_set(g: &Gen) -> BTreeSet<Rat> {
    let (p, q) = g.endpoints().unwrap();
    samples().into_iter().filter(|x| Endpoint::Fin(*x) < p || Endpoint::Fin(*x) > q).collect()
}

fn term_set(t: &Term) -> BTreeSet<Rat> {
    let mut out = BTreeSet::new();
    for m in t.meets().unwrap() {
        let mut acc: BTreeSet<Rat> = samples().into_iter().collect();
        for g in m.gens() {
            acc = acc.intersection(&coclosed_set(g)).copied().collect();
        }
        out.extend(acc);
    }
    out
}

fn grid_coclosed() -> Vec<Gen> {
    let pts = [0, 1, 2, 3, 4].map(|k| Endpoint::ratio(k, 4));
    pts.iter().flat_map(|&p| pts.iter().map(move |&q| Gen::coclosed_c(p, q))).collect()
}

#[test]
fn circle_proper_spec_is_a_saturating_interior() {
    let spec = circle_proper_spec();
    let (zero, one) = (Rat::from_integer(0), Rat::from_integer(1));
    for g in grid_coclosed() {
        let img = spec.image_of(&g).unwrap();
        let s = term_set(&img);
        assert!(s.is_subset(&coclosed_set(&g)), "{g} not deflationary");
        assert_eq!(s.contains(&zero), s.contains(&one), "{g} separates the glued points");
        // re-apply the case split to each generator of the output
        let mut again = BTreeSet::new();
        for m in img.meets().unwrap() {
            let mut acc: BTreeSet<Rat> = samples().into_iter().collect();
            for h in m.gens() {
                acc = acc.intersection(&term_set(&spec.image_of(h).unwrap())).copied().collect();
            }
            again.extend(acc);
        }
        assert_eq!(again, s, "{g} not idempotent");
    }
}

#[test]
fn circle_open_shift_is_idempotent() {
    // shifting a member of the family by k and re-applying the image
    // recovers the same family: ℤ + ℤ = ℤ
    let spec = circle_open_spec();
    let windows = ["OI(-3,3)", "OI(-1/2,5/2)", "OI(0,1)"];
    for g in ["OI(0,1/3)", "OI(1/4,3/2)", "OI(-1,1/2)"] {
        let base = match spec.image_of(&gen(g)).unwrap() {
            Term::Family(f) => f,
            other => panic!("{other:?}"),
        };
        let (p, q) = gen(g).endpoints().unwrap();
        for k in -2..=2 {
            let shift = |e: Endpoint| e.checked_add(Endpoint::int(k)).unwrap();
            let member = Gen::open_c(shift(p), shift(q));
            let Term::Family(f) = spec.image_of(&member).unwrap() else { panic!() };
            for w in windows {
                assert_eq!(
                    expand_family_meet(&gen(w), &base).unwrap(),
                    expand_family_meet(&gen(w), &f).unwrap(),
                    "{g} shifted by {k} in {w}"
                );
            }
        }
    }
}

#[test]
fn bounded_meets_are_finite_and_nonzero() {
    let reals = GeneratorDomain::builtin(Builtin::IntervalR);
    let spec = circle_open_spec();
    let gs = ["OI(0,1)", "OI(-2,1/3)", "OI(1/2,7/2)", "OI(-5,5)"];
    for s in gs {
        for t in gs {
            let Term::Family(f) = spec.image_of(&gen(t)).unwrap() else { panic!() };
            let out = expand_family_meet(&gen(s), &f).unwrap();
            let ms = out.meets().expect("bounded meet expands to a finite join");
            assert!(ms.iter().all(|m| m.gens().len() == 1 && !reals.is_zero(&m.gens()[0])));
        }
    }
}

#[test]
fn open_circle_grids_refine() {
    let p = circle_open_presentation().unwrap().presentation;
    let small = points(&instantiate_bounded(&p, &parse_grid("0,1/2,1").unwrap()).unwrap(), 10_000).unwrap();
    let big = points(&instantiate_bounded(&p, &parse_grid("0,1/4,1/2,3/4,1").unwrap()).unwrap(), 10_000).unwrap();
    assert_eq!(small.len(), 4);
    assert_eq!(big.len(), 8);
    // every point of the coarse frame lifts, so the comparison map is onto
    assert_eq!(big.project(&small.generators).unwrap(), small.project(&small.generators).unwrap());
}

#[test]
fn nat_reverse() {
    assert_eq!(coinserter_carrier(), vec![NatOpen::Empty, NatOpen::All]);
    assert_eq!(successor_pullback(NatOpen::DownTo(3)), NatOpen::DownTo(2));
    assert_eq!(successor_pullback(NatOpen::DownTo(0)), NatOpen::Empty);
    assert!(upper_adjoint_to_point(NatOpen::All));
    assert!(!upper_adjoint_to_point(NatOpen::DownTo(1000)));
    let r = nat_reverse_counterexample();
    assert!(!r.passed());
    assert!(r.witnesses.iter().any(|w| w.law == Law::ScottContinuity));
    assert!(r.notes.iter().any(|n| n == "coinserter carrier: {∅, ℕ}"));
    assert!(r.notes.iter().any(|n| n == "s*(↓3) = ↓2"));
}

fn endpoint() -> impl Strategy<Value = Endpoint> {
    prop_oneof![
        1 => Just(Endpoint::NegInf),
        1 => Just(Endpoint::PosInf),
        8 => (-8i64..8, 1i64..5).prop_map(|(n, d)| Endpoint::ratio(n, d)),
    ]
}

fn interval() -> impl Strategy<Value = Gen> {
    (endpoint(), endpoint()).prop_map(|(p, q)| Gen::open_c(p, q))
}

fn meet(a: &Option<Gen>, b: &Option<Gen>) -> Option<Gen> {
    let reals = GeneratorDomain::builtin(Builtin::IntervalR);
    match (a, b) {
        (Some(a), Some(b)) => reals.meet(a, b, &Sorts::new()).unwrap(),
        _ => None,
    }
}

fn canon(g: Option<Gen>) -> Option<Gen> {
    g.filter(|g| !GeneratorDomain::builtin(Builtin::IntervalR).is_zero(g))
}

proptest! {
    #[test]
    fn open_interval_meet_laws(a in interval(), b in interval(), c in interval()) {
        let (a, b, c) = (canon(Some(a)), canon(Some(b)), canon(Some(c)));
        prop_assert_eq!(meet(&a, &b), meet(&b, &a));
        prop_assert_eq!(meet(&meet(&a, &b), &c), meet(&a, &meet(&b, &c)));
        prop_assert_eq!(meet(&a, &a), a.clone());
        let top = Some(Gen::open_c(Endpoint::NegInf, Endpoint::PosInf));
        prop_assert_eq!(meet(&a, &top), a.clone());
        prop_assert_eq!(meet(&a, &None), None);
    }
}
