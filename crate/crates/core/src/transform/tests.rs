use std::sync::Arc;

use super::*;
use crate::dsl::{parse_presentation, parse_term};
use crate::eval::eval_frame;
use crate::lattice::{fixed_points, order_isomorphic, FiniteLattice, MonotoneMap, QuotientMode};
use crate::presentation::{Gen, Term};

const TWO_POINTS: &str = "presentation Sup {
  domain finite { gens z, a, b, t; leq z <= a, z <= b, a <= t, b <= t; meets; }
  rel t <= a v b;
  rel z <= 0;
}";

const THREE_CHAIN: &str = "presentation PreFrm {
  domain finite { gens b, m, t; leq b <= m, m <= t; joins; }
  rel t = 1;
}";

fn g(s: &str) -> Gen {
    Gen::named(s)
}

fn swap_spec(mode: QuotientMode) -> QuotientSpec {
    let ab = parse_term("a v b").unwrap();
    QuotientSpec::new(mode, vec![(g("z"), Term::zero()), (g("a"), ab.clone()), (g("b"), ab), (g("t"), Term::gen(g("t")))])
}

fn size(t: &TransformedPresentation) -> usize {
    eval_frame(&t.presentation).unwrap().len()
}

#[test]
fn identity_semi_open_presents_the_same_frame() {
    let p = parse_presentation(TWO_POINTS).unwrap();
    let spec = QuotientSpec::identity(QuotientMode::SemiOpen, &p.domain).unwrap();
    let out = present_semi_open(&p, &spec).unwrap();
    assert_eq!(out.presentation.generator_count(), p.generator_count());
    let a = eval_frame(&p).unwrap();
    let b = eval_frame(&out.presentation).unwrap();
    assert!(order_isomorphic(a.lattice().unwrap(), b.lattice().unwrap()).is_some());
}

#[test]
fn swap_collapses_to_a_point() {
    let p = parse_presentation(TWO_POINTS).unwrap();
    for mode in [QuotientMode::SemiOpen, QuotientMode::Open] {
        let out = present(&p, &swap_spec(mode)).unwrap();
        assert_eq!(size(&out), 2, "{mode}\n{}", crate::dsl::print(&out.presentation, crate::presentation::Style::Ascii));
    }
}

#[test]
fn three_chain_interior_collapses() {
    let p = parse_presentation(THREE_CHAIN).unwrap();
    for mode in [QuotientMode::SemiProper, QuotientMode::Proper] {
        let spec = QuotientSpec::new(mode, vec![(g("b"), Term::gen(g("b"))), (g("m"), Term::zero()), (g("t"), Term::gen(g("t")))]);
        let out = present(&p, &spec).unwrap();
        assert_eq!(size(&out), 2, "{mode}");
    }
}

#[test]
fn derived_swap_spec_reads_back_joins() {
    let p = parse_presentation(TWO_POINTS).unwrap();
    let obj = eval_frame(&p).unwrap();
    let l = obj.lattice().unwrap().clone();
    let ia = obj.interp_of(&g("a")).unwrap();
    let ib = obj.interp_of(&g("b")).unwrap();
    let swap = MonotoneMap::from_fn(l.clone(), l.clone(), |x| {
        if x == ia {
            ib
        } else if x == ib {
            ia
        } else {
            x
        }
    })
    .unwrap();
    let id = MonotoneMap::identity(l.clone());
    let d = derive_spec_from_coinserter(&obj, &id, &swap, QuotientMode::Open, Colimit::Coequaliser).unwrap();
    assert!(d.report.passed());
    let spec = d.spec.unwrap();
    // `t` and `a v b` denote the same element; the readback picks maximal generators
    let want = obj.value(&parse_term("a v b").unwrap()).unwrap();
    assert_eq!(obj.value(&spec.image_of(&g("a")).unwrap()).unwrap(), want);
    let out = present_open(&p, &spec).unwrap();
    let e = MonotoneMap::new(l.clone(), l, d.operator).unwrap();
    let fp = fixed_points(&e).unwrap();
    let q = eval_frame(&out.presentation).unwrap();
    assert!(order_isomorphic(q.lattice().unwrap(), &fp.lattice).is_some());
    assert!(order_isomorphic(&fp.lattice, &Arc::new(FiniteLattice::chain(&["0", "1"]))).is_some());
}
