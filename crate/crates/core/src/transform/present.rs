//! The six presentation transformers.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use super::spec::{canonical_image, ImageCase, ImageEntry, QuotientSpec, SchematicImage};
use crate::error::{Error, Result};
use crate::lattice::QuotientMode;
use crate::presentation::normalize::normalize_presentation;
use crate::presentation::{
    Binder, Cond, Family, FiniteDomain, Gen, GeneratorDomain, Meet, Presentation, PresentationKind, Relation, Sorts, Tag, Term,
};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct Provenance {
    /// SHA-256 of the parent's canonical JSON
    pub parent_hash: String,
    pub mode: QuotientMode,
    pub image_table: Vec<ImageEntry>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub schematic: Option<SchematicImage>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TransformedPresentation {
    #[serde(flatten)]
    pub presentation: Presentation,
    pub provenance: Provenance,
}

pub fn tag_for(mode: QuotientMode) -> Tag {
    match mode {
        QuotientMode::SemiOpen | QuotientMode::Open => Tag::Dia,
        QuotientMode::SemiProper | QuotientMode::Proper => Tag::Box,
        QuotientMode::SemiTriquotient | QuotientMode::Triquotient => Tag::BoxTimes,
    }
}

pub fn required_kind(mode: QuotientMode) -> PresentationKind {
    match tag_for(mode) {
        Tag::Dia => PresentationKind::Sup,
        Tag::Box => PresentationKind::PreFrm,
        Tag::BoxTimes => PresentationKind::Dcpo,
    }
}

pub fn parent_hash(p: &Presentation) -> Result<String> {
    let bytes = serde_json::to_vec(p)?;
    Ok(Sha256::digest(&bytes).iter().map(|b| format!("{b:02x}")).collect())
}

/// A generator (possibly symbolic) with its image, valid under `cond`.
#[derive(Clone, Debug)]
struct Inst {
    gen: Gen,
    params: Vec<Binder>,
    cond: Cond,
    image: Term,
}

impl Inst {
    fn primed(&self) -> Inst {
        let map: BTreeMap<String, String> = self.params.iter().map(|b| (b.name.clone(), format!("{}'", b.name))).collect();
        Inst {
            gen: self.gen.rename(&map),
            params: self.params.iter().map(|b| Binder { name: map[&b.name].clone(), sort: b.sort }).collect(),
            cond: self.cond.rename(&map),
            image: self.image.rename(&map),
        }
    }

    fn sorts(&self) -> Sorts {
        self.params.iter().map(|b| (b.name.clone(), b.sort)).collect()
    }
}

fn pattern_inst(pattern: &Gen, case: Option<&ImageCase>) -> Inst {
    let (gen, cond, image) = match case {
        Some(c) => (pattern.subst(&c.pin), c.cond.clone(), c.image.subst(&c.pin)),
        None => (pattern.clone(), Cond::True, Term::gen(pattern.clone())),
    };
    let mut sorts = Sorts::new();
    gen.infer_sorts(&mut sorts);
    let mut names = Vec::new();
    gen.vars(&mut names);
    let params = names.iter().map(|n| Binder { name: n.clone(), sort: sorts[n] }).collect();
    Inst { gen, params, cond, image }
}

fn check_preconditions(p: &Presentation, mode: QuotientMode) -> Result<()> {
    let want = required_kind(mode);
    if p.kind != want {
        return Err(Error::Precondition(format!("{} quotients need a {}-type presentation, got {}", mode, want.name(), p.kind.name())));
    }
    let st = p.domain.structure();
    let ok = match tag_for(mode) {
        Tag::Dia => st.meets,
        Tag::Box => st.joins,
        Tag::BoxTimes => st.meets && st.joins && st.distributive,
    };
    if !ok {
        return Err(Error::Precondition(format!("the generator domain lacks the structure needed for {mode} quotients")));
    }
    Ok(())
}

fn meet_gens(dom: &GeneratorDomain, a: &Gen, b: &Gen, sorts: &Sorts) -> Result<Option<Gen>> {
    dom.meet(a, b, sorts).ok_or_else(|| Error::Domain(format!("no meet of {a} and {b} in the generator domain")))
}

fn join_gens(dom: &GeneratorDomain, a: &Gen, b: &Gen, sorts: &Sorts) -> Result<Gen> {
    dom.join(a, b, sorts).ok_or_else(|| Error::Domain(format!("no join of {a} and {b} in the generator domain")))
}

/// Pointwise combination of two meets: `meet` combines conjunct lists,
/// returning `None` for `0`.
type Combine<'a> = dyn Fn(&Meet, &Meet, &Sorts) -> Result<Option<Meet>> + 'a;

fn fresh(name: &str, taken: &[String]) -> String {
    let mut n = name.to_string();
    while taken.contains(&n) {
        n.push('\'');
    }
    n
}

/// `⋁_{α,β} combine(a_α, b_β)` where either side may be a family.
fn expand(a: &Term, b: &Term, sorts: &Sorts, directed: bool, combine: &Combine) -> Result<Term> {
    let single_join = |ms: &[Meet]| -> Option<Meet> { (ms.len() == 1).then(|| ms[0].clone()) };
    match (a, b) {
        (Term::Join(xs), Term::Join(ys)) => {
            let mut out = Vec::new();
            for x in xs {
                for y in ys {
                    if let Some(m) = combine(x, y, sorts)? {
                        out.push(m);
                    }
                }
            }
            Ok(Term::Join(out))
        }
        (Term::Join(xs), Term::Family(f)) | (Term::Family(f), Term::Join(xs)) => {
            if xs.is_empty() {
                return Ok(Term::zero());
            }
            let x = single_join(xs).ok_or_else(|| Error::Shape("cannot combine a family with a join of several terms".into()))?;
            let mut inner = sorts.clone();
            for bnd in &f.binders {
                inner.insert(bnd.name.clone(), bnd.sort);
            }
            let body = if matches!(a, Term::Join(_)) { combine(&x, &f.body, &inner)? } else { combine(&f.body, &x, &inner)? };
            Ok(match body {
                None => Term::zero(),
                Some(body) => Term::Family(Family { binders: f.binders.clone(), cond: f.cond.clone(), body, directed }),
            })
        }
        (Term::Family(f), Term::Family(g)) => {
            let mut taken: Vec<String> = sorts.keys().cloned().collect();
            taken.extend(f.binders.iter().map(|b| b.name.clone()));
            let mut ren = BTreeMap::new();
            let mut binders = f.binders.clone();
            for bnd in &g.binders {
                let n = fresh(&bnd.name, &taken);
                taken.push(n.clone());
                ren.insert(bnd.name.clone(), n.clone());
                binders.push(Binder { name: n, sort: bnd.sort });
            }
            let gbody = g.body.map(|x| x.rename(&ren));
            let mut inner = sorts.clone();
            for bnd in &binders {
                inner.insert(bnd.name.clone(), bnd.sort);
            }
            let cond = Cond::and(vec![f.cond.clone(), g.cond.rename(&ren)]);
            Ok(match combine(&f.body, &gbody, &inner)? {
                None => Term::zero(),
                Some(body) => Term::Family(Family { binders, cond, body, directed }),
            })
        }
    }
}

/// `⋁_{α,β} (a_α ∧ b_β)` with the meet taken in the domain.
fn meet_expand(dom: &GeneratorDomain, a: &Term, b: &Term, sorts: &Sorts, directed: bool) -> Result<Term> {
    expand(a, b, sorts, directed, &|x, y, s| {
        let mut gens = x.0.iter().chain(y.0.iter()).cloned();
        let Some(mut acc) = gens.next() else { return Ok(Some(Meet::one())) };
        for g in gens {
            match meet_gens(dom, &acc, &g, s)? {
                Some(m) => acc = m,
                None => return Ok(None),
            }
        }
        Ok(Some(Meet::single(acc)))
    })
}

/// `⊔_{α,β} ⋀_{i,j} (a_α^i ∨ b_β^j)` with the join taken in the domain.
fn join_expand(dom: &GeneratorDomain, a: &Term, b: &Term, sorts: &Sorts, directed: bool) -> Result<Term> {
    expand(a, b, sorts, directed, &|x, y, s| {
        let mut gens = Vec::new();
        for i in &x.0 {
            for j in &y.0 {
                gens.push(join_gens(dom, i, j, s)?);
            }
        }
        Ok(Some(Meet(gens)))
    })
}

fn tagged(t: &Term, tag: Tag) -> Term {
    t.map_gens(&mut |g| Gen::tagged(tag, g.clone()))
}

fn pair_relations(dom: &GeneratorDomain, mode: QuotientMode, s: &Inst, t: &Inst) -> Result<Vec<Relation>> {
    let tag = tag_for(mode);
    let mut params = s.params.clone();
    params.extend(t.params.iter().cloned());
    let mut sorts = s.sorts();
    sorts.extend(t.sorts());
    let cond = Cond::and(vec![s.cond.clone(), t.cond.clone()]);
    // the semi modes use both images; the full modes keep `s` itself
    let left = if mode.is_semi() { s.image.clone() } else { Term::gen(s.gen.clone()) };
    let (sg, tg) = (Gen::tagged(tag, s.gen.clone()), Gen::tagged(tag, t.gen.clone()));
    let directed = tag == Tag::BoxTimes;
    let mut out = Vec::new();
    let rel = |lhs: Term, rhs: Term| Relation::schema(params.clone(), cond.clone(), lhs, crate::presentation::RelOp::Eq, rhs);
    if tag != Tag::Box {
        let rhs = meet_expand(dom, &left, &t.image, &sorts, directed)?;
        out.push(rel(Term::meet(vec![sg.clone(), tg.clone()]), tagged(&rhs, tag)));
    }
    if tag != Tag::Dia {
        let rhs = join_expand(dom, &left, &t.image, &sorts, tag == Tag::Box || directed)?;
        out.push(rel(Term::join_of(vec![sg, tg]), tagged(&rhs, tag)));
    }
    Ok(out)
}

fn reduce_units(t: &Term, one: Option<&Gen>, zero: Option<&Gen>) -> Term {
    let reduce = |m: &Meet| -> Option<Meet> {
        if zero.is_some_and(|z| m.0.contains(z)) {
            return None;
        }
        Some(Meet(m.0.iter().filter(|g| Some(*g) != one).cloned().collect()))
    };
    match t {
        Term::Join(ms) => Term::Join(ms.iter().filter_map(reduce).collect()),
        Term::Family(f) => match reduce(&f.body) {
            Some(body) => Term::Family(Family { body, ..f.clone() }),
            None => Term::zero(),
        },
    }
}

fn output_domain(dom: &GeneratorDomain, tag: Tag) -> Result<GeneratorDomain> {
    match dom {
        GeneratorDomain::Finite(f) => {
            let gens = f.elements().iter().map(|g| Gen::tagged(tag, g.clone())).collect();
            Ok(GeneratorDomain::Finite(FiniteDomain::discrete(gens)?))
        }
        GeneratorDomain::Builtin { name } => Ok(GeneratorDomain::Tagged { tag, parent: *name }),
        GeneratorDomain::Tagged { .. } => Err(Error::Precondition("the parent domain is already tagged".into())),
    }
}

/// The presentation of the quotient described by `spec`, dispatching on its
/// mode.
pub fn present(p: &Presentation, spec: &QuotientSpec) -> Result<TransformedPresentation> {
    let mode = spec.mode;
    check_preconditions(p, mode)?;
    let tag = tag_for(mode);
    let dom = &p.domain;
    let no_sorts = Sorts::new();

    let mut table = Vec::new();
    let insts: Vec<Inst> = match dom {
        GeneratorDomain::Finite(f) => {
            let mut v = Vec::new();
            for g in f.elements() {
                let image = canonical_image(g, &spec.image_of(g)?, mode, dom, &no_sorts)?;
                table.push(ImageEntry { generator: g.clone(), image: image.clone() });
                v.push(Inst { gen: g.clone(), params: Vec::new(), cond: Cond::True, image });
            }
            v
        }
        _ => {
            let sch = spec.schematic.as_ref().ok_or_else(|| Error::Precondition("a symbolic domain needs a schematic image".into()))?;
            let mut v = Vec::new();
            for case in &sch.cases {
                let mut inst = pattern_inst(&sch.pattern, Some(case));
                inst.image = canonical_image(&inst.gen, &inst.image, mode, dom, &inst.sorts())?;
                v.push(inst);
            }
            v
        }
    };

    let mut rels = Vec::new();
    if tag != Tag::Box {
        if let Some(top) = dom.top() {
            rels.push(Relation::eq(Term::gen(Gen::tagged(tag, top)), Term::one()));
        }
    }
    if tag != Tag::Dia {
        if let Some(bot) = dom.bottom() {
            rels.push(Relation::eq(Term::gen(Gen::tagged(tag, bot)), Term::zero()));
        }
    }
    let units = rels.clone();
    let symbolic = !dom.is_finite();
    if mode.is_semi() {
        for (i, s) in insts.iter().enumerate() {
            for t in &insts[i..] {
                let t = if symbolic { t.primed() } else { t.clone() };
                rels.extend(pair_relations(dom, mode, s, &t)?);
            }
        }
    } else {
        let lefts: Vec<Inst> = match &spec.schematic {
            Some(sch) if symbolic => vec![pattern_inst(&sch.pattern, None)],
            _ => insts.clone(),
        };
        for s in &lefts {
            for t in &insts {
                let t = if symbolic { t.primed() } else { t.clone() };
                rels.extend(pair_relations(dom, mode, s, &t)?);
            }
        }
    }
    // pairs involving 1 (resp. 0) only restate the unit relations
    let (one, zero) = (
        dom.top().filter(|_| tag != Tag::Box).map(|g| Gen::tagged(tag, g)),
        dom.bottom().filter(|_| tag != Tag::Dia).map(|g| Gen::tagged(tag, g)),
    );
    for r in rels.iter_mut().skip(units.len()) {
        r.lhs = reduce_units(&r.lhs, one.as_ref(), zero.as_ref());
        r.rhs = reduce_units(&r.rhs, one.as_ref(), zero.as_ref());
    }
    rels.extend(p.relations.iter().map(|r| r.map_gens(&mut |g| Gen::tagged(tag, g.clone()))));

    let out = Presentation::new(PresentationKind::Plain, output_domain(dom, tag)?, rels);
    let presentation = normalize_presentation(&out)?;
    let provenance = Provenance {
        parent_hash: parent_hash(p)?,
        mode,
        image_table: table,
        schematic: if symbolic { spec.schematic.clone() } else { None },
    };
    Ok(TransformedPresentation { presentation, provenance })
}

fn present_as(p: &Presentation, spec: &QuotientSpec, mode: QuotientMode) -> Result<TransformedPresentation> {
    if spec.mode != mode {
        return Err(Error::Precondition(format!("expected a {mode} spec, got {}", spec.mode)));
    }
    present(p, spec)
}

pub fn present_semi_open(p: &Presentation, spec: &QuotientSpec) -> Result<TransformedPresentation> {
    present_as(p, spec, QuotientMode::SemiOpen)
}

pub fn present_open(p: &Presentation, spec: &QuotientSpec) -> Result<TransformedPresentation> {
    present_as(p, spec, QuotientMode::Open)
}

pub fn present_semi_proper(p: &Presentation, spec: &QuotientSpec) -> Result<TransformedPresentation> {
    present_as(p, spec, QuotientMode::SemiProper)
}

pub fn present_proper(p: &Presentation, spec: &QuotientSpec) -> Result<TransformedPresentation> {
    present_as(p, spec, QuotientMode::Proper)
}

pub fn present_semi_triquotient(p: &Presentation, spec: &QuotientSpec) -> Result<TransformedPresentation> {
    present_as(p, spec, QuotientMode::SemiTriquotient)
}

pub fn present_triquotient(p: &Presentation, spec: &QuotientSpec) -> Result<TransformedPresentation> {
    present_as(p, spec, QuotientMode::Triquotient)
}
