use locale_forge::dsl::parse_presentation;
use locale_forge::eval::{eval_frame, verify_coverage};
use locale_forge::lattice::Verdict;
use locale_forge::presentation::{check_kind, instantiate_schemas, saturate, CheckOptions, PresentationKind, RelationVerdict};
use locale_forge::rational::parse_grid;

const REALS: &str = "presentation Sup {
  domain interval-R;
  rel OI(-inf,+inf) = 1;
  forall p,q,p',q' | p <= p' < q <= q' : OI(p,q) v OI(p',q') = OI(p,q');
}";

#[test]
fn reals_are_join_stable_on_a_grid() {
    let p = parse_presentation(REALS).unwrap();
    let opts = CheckOptions { grid: Some(parse_grid("0,1/2,1").unwrap()), oracle: false };
    let r = check_kind(&p, &opts).unwrap();
    assert_eq!(r.verdict, Verdict::Pass, "{r:#?}");
}

#[test]
fn schemas_without_grid_are_rejected() {
    let p = parse_presentation(REALS).unwrap();
    assert!(check_kind(&p, &CheckOptions::default()).is_err());
}

#[test]
fn unstable_relation_is_reported_with_witness() {
    let p = parse_presentation(
        "presentation Sup {
  domain finite { gens z, a, b, c, t; leq z <= a, z <= b, z <= c, a <= t, b <= t, c <= t; meets; }
  rel t <= a v b;
}",
    )
    .unwrap();
    let r = check_kind(&p, &CheckOptions::default()).unwrap();
    assert_eq!(r.verdict, Verdict::Fail);
    let w = r.relations[0].witness.as_ref().unwrap();
    assert_eq!(w.generator, "c");
    assert_eq!(w.missing, "rel c <= z;");
    let oracle = check_kind(&p, &CheckOptions { grid: None, oracle: true }).unwrap();
    assert_eq!(oracle.verdict, Verdict::Fail);
}

#[test]
fn oracle_accepts_derivable_instances() {
    // stabilising t ≤ z by a gives a ≤ z, which follows from a ≤ t ≤ z
    let p = parse_presentation(
        "presentation Sup {
  domain finite { gens z, a, b, t; leq z <= a, z <= b, a <= t, b <= t; meets; }
  rel t <= a;
  rel t <= z;
}",
    )
    .unwrap();
    let syn = check_kind(&p, &CheckOptions::default()).unwrap();
    assert_eq!(syn.verdict, Verdict::Fail);
    let r = check_kind(&p, &CheckOptions { grid: None, oracle: true }).unwrap();
    assert_eq!(r.verdict, Verdict::Pass, "{r:#?}");
    assert!(r.relations.iter().any(|c| c.verdict == RelationVerdict::OraclePass), "{r:#?}");
}

#[test]
fn saturation_makes_check_pass_and_keeps_the_frame() {
    let p = parse_presentation(
        "presentation Sup {
  domain finite { gens z, a, b, c, t; leq z <= a, z <= b, z <= c, a <= t, b <= t, c <= t; meets; }
  rel t <= a v b;
}",
    )
    .unwrap();
    let s = saturate(&p, PresentationKind::Sup).unwrap();
    let r = check_kind(&s, &CheckOptions::default()).unwrap();
    assert_eq!(r.verdict, Verdict::Pass, "{r:#?}");
    assert!(r.relations.iter().all(|c| c.verdict == RelationVerdict::SyntacticPass));
    assert_eq!(verify_coverage(&s).unwrap().verdict, Verdict::Pass);
    assert_eq!(eval_frame(&s).unwrap().len(), eval_frame(&p).unwrap().len());
}

#[test]
fn saturation_adds_formal_meets() {
    let p = parse_presentation("presentation Fr { domain finite { gens a, b; } rel a v b = 1; }").unwrap();
    let s = saturate(&p, PresentationKind::Sup).unwrap();
    assert_eq!(s.generator_count(), Some(4));
    assert_eq!(check_kind(&s, &CheckOptions::default()).unwrap().verdict, Verdict::Pass);
    assert_eq!(eval_frame(&s).unwrap().len(), eval_frame(&p).unwrap().len());
    let pf = saturate(&p, PresentationKind::PreFrm).unwrap();
    assert_eq!(check_kind(&pf, &CheckOptions::default()).unwrap().verdict, Verdict::Pass);
    assert_eq!(verify_coverage(&pf).unwrap().verdict, Verdict::Pass);
}

#[test]
fn instantiated_reals_satisfy_coverage() {
    let p = parse_presentation(REALS).unwrap();
    let inst = instantiate_schemas(&p, &parse_grid("0,1").unwrap()).unwrap();
    assert!(inst.generator_count().unwrap() >= 4);
    let r = verify_coverage(&inst).unwrap();
    assert_eq!(r.verdict, Verdict::Pass, "{}", r.note);
}
