use proptest::prelude::*;

use locale_forge::dsl::{self, parse_cond, parse_gen, parse_presentation, parse_quotient_spec, parse_relation, parse_term};
use locale_forge::intervals::{
    circle_open_presentation, circle_open_spec, circle_proper_presentation, circle_proper_spec, REALS, UNIT_INTERVAL,
};
use locale_forge::lattice::QuotientMode;
use locale_forge::presentation::print;
use locale_forge::presentation::{Binder, CmpOp, Cond, Expr, Family, Gen, Meet, NatOpen, PresentationKind, Sort, Style, Tag, Term};
use locale_forge::random::{instance_rng, random_presentation};
use locale_forge::rational::Endpoint;
use locale_forge::transform::QuotientSpec;
use locale_forge::Error;

const STYLES: [Style; 2] = [Style::Ascii, Style::Unicode];

fn endpoint() -> impl Strategy<Value = Endpoint> {
    prop_oneof![
        4 => (-6i64..6, 1i64..5).prop_map(|(n, d)| Endpoint::ratio(n, d)),
        1 => Just(Endpoint::PosInf),
        1 => Just(Endpoint::NegInf),
    ]
}

fn expr() -> impl Strategy<Value = Expr> {
    let leaf = prop_oneof![endpoint().prop_map(Expr::Const), prop::sample::select(vec!["p", "q", "p'"]).prop_map(Expr::var)];
    leaf.prop_recursive(2, 8, 2, |inner| {
        prop_oneof![
            (inner.clone(), inner.clone()).prop_map(|(a, b)| Expr::Add(Box::new(a), Box::new(b))),
            (inner.clone(), inner.clone()).prop_map(|(a, b)| Expr::Max(Box::new(a), Box::new(b))),
            (inner.clone(), inner).prop_map(|(a, b)| Expr::Min(Box::new(a), Box::new(b))),
        ]
    })
}

// built through the flattening constructors, as every condition is
fn cond() -> impl Strategy<Value = Cond> {
    let op = prop::sample::select(vec![CmpOp::Lt, CmpOp::Le, CmpOp::Eq, CmpOp::Ne, CmpOp::Ge, CmpOp::Gt]);
    let atom = (expr(), op, expr()).prop_map(|(a, o, b)| Cond::Cmp(a, o, b));
    atom.prop_recursive(2, 6, 3, |inner| {
        prop_oneof![prop::collection::vec(inner.clone(), 2..4).prop_map(Cond::and), prop::collection::vec(inner, 2..4).prop_map(Cond::or),]
    })
}

fn gen() -> impl Strategy<Value = Gen> {
    let base = prop_oneof![
        prop::sample::select(vec!["a", "b", "g0", "x'"]).prop_map(Gen::named),
        (expr(), expr()).prop_map(|(p, q)| Gen::open(p, q)),
        (expr(), expr()).prop_map(|(p, q)| Gen::coclosed(p, q)),
        prop_oneof![Just(NatOpen::Empty), Just(NatOpen::All), (0u64..9).prop_map(NatOpen::DownTo)].prop_map(Gen::Nat),
    ];
    (base, prop::option::of(prop::sample::select(vec![Tag::Dia, Tag::Box, Tag::BoxTimes]))).prop_map(|(g, t)| match t {
        Some(t) => Gen::Tagged(t, Box::new(g)),
        None => g,
    })
}

fn meet() -> impl Strategy<Value = Meet> {
    prop::collection::vec(gen(), 0..3).prop_map(Meet)
}

fn term() -> impl Strategy<Value = Term> {
    let join = prop::collection::vec(meet(), 0..3).prop_map(Term::Join);
    let sort = prop::sample::select(vec![Sort::Int, Sort::Rat, Sort::Unit]);
    let family = (prop::collection::vec(sort, 1..3), cond(), meet(), any::<bool>()).prop_map(|(sorts, cond, body, directed)| {
        let names = ["p", "q"];
        let binders = sorts.iter().zip(names).map(|(s, n)| Binder::new(n, *s)).collect();
        Term::Family(Family { binders, cond, body, directed })
    });
    prop_oneof![3 => join, 1 => family]
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(256))]

    #[test]
    fn conditions_round_trip(c in cond()) {
        for s in STYLES {
            prop_assert_eq!(parse_cond(&print::cond(&c, s)).unwrap(), c.clone());
        }
    }

    #[test]
    fn generators_round_trip(g in gen()) {
        for s in STYLES {
            prop_assert_eq!(parse_gen(&print::gen(&g, s)).unwrap(), g.clone());
        }
    }

    #[test]
    fn terms_round_trip(t in term()) {
        for s in STYLES {
            prop_assert_eq!(parse_term(&print::term(&t, s)).unwrap(), t.clone());
        }
    }

    #[test]
    fn random_presentations_round_trip(seed in any::<u64>(), k in 0usize..3) {
        let kind = [PresentationKind::Sup, PresentationKind::PreFrm, PresentationKind::Dcpo][k];
        let p = random_presentation(&mut instance_rng(seed, 0), kind).unwrap();
        for s in STYLES {
            prop_assert_eq!(parse_presentation(&dsl::print(&p, s)).unwrap(), p.clone());
        }
    }
}

#[test]
fn builtin_and_circle_presentations_round_trip() {
    let mut all = vec![parse_presentation(REALS).unwrap(), parse_presentation(UNIT_INTERVAL).unwrap()];
    all.push(circle_open_presentation().unwrap().presentation);
    all.push(circle_proper_presentation(false).unwrap().presentation);
    all.push(circle_proper_presentation(true).unwrap().presentation);
    for p in all {
        for s in STYLES {
            assert_eq!(parse_presentation(&dsl::print(&p, s)).unwrap(), p);
        }
    }
}

#[test]
fn quotient_specs_round_trip() {
    let table = QuotientSpec::new(
        QuotientMode::SemiTriquotient,
        vec![(Gen::named("a"), parse_term("b v c ^ d").unwrap()), (Gen::named("b"), Term::zero())],
    );
    for q in [circle_open_spec(), circle_proper_spec(), table] {
        for s in STYLES {
            let text = dsl::print_quotient_spec(&q, s);
            assert_eq!(parse_quotient_spec(&text).unwrap(), q, "{text}");
        }
    }
}

#[test]
fn quotient_spec_syntax() {
    let q = parse_quotient_spec(
        "quotient proper {
           pattern CC(p,q) {
             case if p > 0 & q < 1 : CC(p,q);
             case pin p = 0, q = 1 : 0;
           }
         }",
    )
    .unwrap();
    assert_eq!(q.mode, QuotientMode::Proper);
    let cases = &q.schematic.unwrap().cases;
    assert_eq!(cases.len(), 2);
    assert_eq!(cases[1].pin.len(), 2);
    assert!(parse_quotient_spec("quotient sideways { }").is_err());
}

#[test]
fn unclosed_application_reports_the_parenthesis() {
    match parse_relation("rel join(a") {
        Err(Error::Parse { line, col, message }) => assert_eq!((line, col, message.as_str()), (1, 9, "unclosed `(`")),
        other => panic!("expected a parse error, got {other:?}"),
    }
}

#[test]
fn application_syntax() {
    let p =
        parse_presentation("presentation Sup { domain finite { gens a, b; } rel join(a, b) = 1; rel meet(a, join(b, a)) <= 0; }").unwrap();
    assert_eq!(p.relations[0].lhs, parse_term("a v b").unwrap());
    assert_eq!(p.relations[1].lhs, parse_term("a ^ b v a ^ a").unwrap());
    assert_eq!(parse_term("join()").unwrap(), Term::zero());
}
