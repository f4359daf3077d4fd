//! Kind checking (shape and stability of relations) and saturation.

use std::collections::HashSet;

use serde::{Deserialize, Serialize};

use super::domain::{FiniteDomain, GeneratorDomain};
use super::gen::Gen;
use super::instantiate::{instantiate_with_origins, GridMode};
use super::normalize::{is_trivial, normalize_presentation, normalize_relation, same_relation};
use super::print::{self, Style};
use super::relation::{Presentation, PresentationKind, RelOp, Relation};
use super::term::{Meet, Term};
use crate::error::{Error, Result};
use crate::eval::{eval_dcpo, eval_preframe, eval_suplattice, PresentedObject};
use crate::lattice::Verdict;
use crate::rational::Rat;

#[derive(Clone, Debug, Default)]
pub struct CheckOptions {
    /// grid on which schemas are instantiated
    pub grid: Option<Vec<Rat>>,
    /// fall back to deciding missing instances in the presented structure
    pub oracle: bool,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub enum RelationVerdict {
    SyntacticPass,
    OraclePass,
    Fail,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct StabilityWitness {
    pub generator: String,
    pub missing: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct RelationCheck {
    pub index: usize,
    pub relation: String,
    pub verdict: RelationVerdict,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<StabilityWitness>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct KindReport {
    pub kind: PresentationKind,
    pub verdict: Verdict,
    pub relations: Vec<RelationCheck>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub notes: Vec<String>,
}

fn require_structure(p: &Presentation) -> Result<()> {
    let s = p.domain.structure();
    let ok = match p.kind {
        PresentationKind::Sup => s.meets,
        PresentationKind::PreFrm => s.joins,
        PresentationKind::Dcpo => s.distributive,
        PresentationKind::Plain => true,
    };
    if ok {
        Ok(())
    } else {
        Err(Error::Precondition(format!(
            "a {} presentation needs its generators to form a {}",
            p.kind.name(),
            match p.kind {
                PresentationKind::Sup => "∧-semilattice",
                PresentationKind::PreFrm => "∨-semilattice",
                _ => "distributive lattice",
            }
        )))
    }
}

fn check_shape(kind: PresentationKind, r: &Relation) -> Result<()> {
    let sides = [&r.lhs, &r.rhs];
    let bad = |why: &str| Err(Error::Shape(format!("{}: {why}", print::relation(r, Style::Ascii))));
    match kind {
        PresentationKind::Sup | PresentationKind::Dcpo => {
            for t in sides {
                let ok = match t {
                    Term::Join(ms) => ms.iter().all(|m| m.0.len() <= 1),
                    Term::Family(f) => f.body.0.len() <= 1,
                };
                if !ok {
                    return bad("sides must be joins of generators");
                }
            }
            if kind == PresentationKind::Dcpo {
                for t in sides {
                    if let Term::Join(ms) = t {
                        if ms.len() > 1 {
                            return bad("sides must be directed joins");
                        }
                    }
                }
            }
            Ok(())
        }
        _ => Ok(()),
    }
}

/// `r ∧ c` (meet every disjunct with `c`) or `r ∨ c` (join every
/// conjunct with `c` in the domain, keeping the disjuncts meets of
/// generators).
fn stabilize(r: &Relation, c: &Gen, meet: bool, dom: &GeneratorDomain) -> Relation {
    let sorts = r.sorts();
    let side = |t: &Term| match t {
        Term::Join(ms) if meet => Term::Join(
            ms.iter()
                .map(|m| {
                    let mut v = m.0.clone();
                    v.push(c.clone());
                    Meet(v)
                })
                .collect(),
        ),
        Term::Join(ms) => {
            match ms.iter().map(|m| m.0.iter().map(|a| dom.join(a, c, &sorts)).collect::<Option<Vec<Gen>>>()).collect::<Option<Vec<_>>>() {
                Some(joined) => Term::Join(joined.into_iter().map(Meet).collect()),
                // no joins in the domain: fall back to an extra disjunct
                None => {
                    let mut v = ms.clone();
                    v.push(Meet::single(c.clone()));
                    Term::Join(v)
                }
            }
        }
        Term::Family(_) => t.clone(),
    };
    Relation { lhs: side(&r.lhs), rhs: side(&r.rhs), ..r.clone() }
}

fn stabilizers(kind: PresentationKind) -> &'static [bool] {
    match kind {
        PresentationKind::Sup => &[true],
        PresentationKind::PreFrm => &[false],
        PresentationKind::Dcpo => &[true, false],
        PresentationKind::Plain => &[],
    }
}

fn entailed_syntactically(s: &Relation, rels: &[Relation], dom: &GeneratorDomain) -> bool {
    if is_trivial(s, dom) || rels.iter().any(|r| same_relation(r, s)) {
        return true;
    }
    let has_le =
        |a: &Term, b: &Term| rels.iter().any(|r| (r.lhs == *a && r.rhs == *b) || (r.op == RelOp::Eq && r.lhs == *b && r.rhs == *a));
    match s.op {
        RelOp::Le => has_le(&s.lhs, &s.rhs),
        RelOp::Eq => has_le(&s.lhs, &s.rhs) && has_le(&s.rhs, &s.lhs),
    }
}

fn oracle_holds(obj: &PresentedObject, s: &Relation) -> Result<bool> {
    if obj.lattice.is_some() {
        return obj.holds(s);
    }
    // a dcpo that is not a lattice: compare single generators in the order
    let single = |t: &Term| -> Result<usize> {
        match t.meets() {
            Some([m]) if m.0.len() == 1 => obj.interp_of(&m.0[0]),
            _ => Err(Error::Shape(format!("{t} is not a generator"))),
        }
    };
    let (a, b) = (single(&s.lhs)?, single(&s.rhs)?);
    Ok(match s.op {
        RelOp::Le => obj.poset.leq(a, b),
        RelOp::Eq => a == b,
    })
}

/// Checks that every relation has the shape the kind requires and that its
/// stabilised instances (`r ∧ c` for `Sup`, `r ∨ c` for `PreFrm`, both for
/// `DCPO`) are present, trivially true, or (with `oracle`) derivable.
pub fn check_kind(p: &Presentation, opts: &CheckOptions) -> Result<KindReport> {
    require_structure(p)?;
    let (inst, origins) = if p.has_schemas() {
        let grid = opts.grid.as_ref().ok_or_else(|| Error::Precondition("schemas can only be checked on a sample grid".into()))?;
        instantiate_with_origins(p, grid, GridMode::Full)?
    } else {
        let dom = match &p.domain {
            GeneratorDomain::Finite(_) => p.clone(),
            _ => instantiate_with_origins(p, &[Rat::from_integer(0)], GridMode::Full)?.0,
        };
        let n = normalize_presentation(&dom)?;
        let origins = (0..n.relations.len()).collect();
        (n, origins)
    };
    let mut notes = Vec::new();
    if p.kind == PresentationKind::Plain {
        notes.push("plain presentations carry no stability requirement".into());
    }
    let elements: Vec<Gen> = inst.domain.elements()?.to_vec();
    let mut oracle: Option<PresentedObject> = None;
    let mut checks: Vec<RelationCheck> = Vec::new();
    for (r, &origin) in inst.relations.iter().zip(&origins) {
        check_shape(p.kind, r)?;
        let mut verdict = RelationVerdict::SyntacticPass;
        let mut witness = None;
        'gens: for &meet in stabilizers(p.kind) {
            for c in &elements {
                let s = normalize_relation(&stabilize(r, c, meet, &inst.domain), &inst.domain)?;
                if entailed_syntactically(&s, &inst.relations, &inst.domain) {
                    continue;
                }
                if opts.oracle {
                    if oracle.is_none() {
                        oracle = Some(match p.kind {
                            PresentationKind::Sup => eval_suplattice(&inst)?,
                            PresentationKind::PreFrm => eval_preframe(&inst)?,
                            _ => eval_dcpo(&inst)?,
                        });
                    }
                    if oracle_holds(oracle.as_ref().expect("set"), &s)? {
                        verdict = RelationVerdict::OraclePass;
                        continue;
                    }
                }
                verdict = RelationVerdict::Fail;
                witness = Some(StabilityWitness { generator: print::gen(c, Style::Ascii), missing: print::relation(&s, Style::Ascii) });
                break 'gens;
            }
        }
        let text = print::relation(&p.relations[origin], Style::Ascii);
        match checks.iter_mut().find(|c| c.index == origin) {
            Some(prev) if verdict > prev.verdict => {
                prev.verdict = verdict;
                prev.witness = witness;
            }
            Some(_) => {}
            None => checks.push(RelationCheck { index: origin, relation: text, verdict, witness }),
        }
    }
    let verdict = if checks.iter().any(|c| c.verdict == RelationVerdict::Fail) { Verdict::Fail } else { Verdict::Pass };
    Ok(KindReport { kind: p.kind, verdict, relations: checks, notes })
}

/// Free completion of a finite poset under meets (or joins): formal meets
/// of antichains, named after their parts. Returns the completed domain.
fn completion(f: &FiniteDomain, meets: bool) -> Result<FiniteDomain> {
    let n = f.len();
    let le = |a: usize, b: usize| if meets { f.leq_idx(a, b) } else { f.leq_idx(b, a) };
    let extreme = |xs: &[usize]| -> Vec<usize> {
        let mut v: Vec<usize> = xs.iter().copied().filter(|&x| !xs.iter().any(|&y| y != x && le(y, x))).collect();
        v.sort();
        v.dedup();
        v
    };
    let mut elems: Vec<Vec<usize>> = vec![Vec::new()];
    elems.extend((0..n).map(|g| vec![g]));
    let mut i = 0;
    while i < elems.len() {
        for j in 0..i {
            let mut u = elems[i].clone();
            u.extend(elems[j].iter().copied());
            let m = extreme(&u);
            if !elems.contains(&m) {
                elems.push(m);
                if elems.len() > crate::eval::DEFAULT_LIMIT {
                    return Err(Error::TooLarge("formal completion".into()));
                }
            }
        }
        i += 1;
    }
    let (sym, unit) = if meets { (" ∧ ", "⊤") } else { (" ∨ ", "⊥") };
    let gens: Vec<Gen> = elems
        .iter()
        .map(|e| match e.as_slice() {
            [] => Gen::named(unit),
            [g] => f.elements()[*g].clone(),
            many => Gen::Named(many.iter().map(|&g| print::gen(&f.elements()[g], Style::Unicode)).collect::<Vec<_>>().join(sym)),
        })
        .collect();
    let below = |x: &[usize], y: &[usize]| y.iter().all(|&b| x.iter().any(|&a| le(a, b)));
    let mut pairs = Vec::new();
    for (a, x) in elems.iter().enumerate() {
        for (b, y) in elems.iter().enumerate() {
            if a != b && below(x, y) {
                pairs.push(if meets { (a, b) } else { (b, a) });
            }
        }
    }
    FiniteDomain::new(gens, &pairs, meets, !meets, false)
}

/// Relations recording the structure a completion forgets.
fn structure_relations(f: &FiniteDomain, keep_meets: bool) -> Vec<Relation> {
    let mut out = Vec::new();
    let els = f.elements();
    let s = f.structure();
    for a in 0..f.len() {
        for b in 0..a {
            if s.joins && keep_meets {
                let j = f.join_idx(a, b).expect("joins");
                out.push(Relation::le(Term::gen(els[j].clone()), Term::join_of(vec![els[a].clone(), els[b].clone()])));
            }
            if s.meets && !keep_meets {
                let rhs = match f.meet_idx(a, b).expect("meets") {
                    Some(m) => Term::gen(els[m].clone()),
                    None => Term::zero(),
                };
                out.push(Relation::le(Term::meet(vec![els[a].clone(), els[b].clone()]), rhs));
            }
        }
    }
    if s.joins && keep_meets {
        if let Some(b) = f.bottom_idx() {
            out.push(Relation::le(Term::gen(els[b].clone()), Term::zero()));
        }
    }
    if s.meets && !keep_meets {
        if let Some(t) = f.top_idx() {
            out.push(Relation::le(Term::one(), Term::gen(els[t].clone())));
        }
    }
    out
}

pub const SATURATION_LIMIT: usize = 20_000;

/// Completes the domain to the structure the target kind needs and closes
/// the relations under stabilisation, so that `check_kind` passes
/// syntactically. Only finite (or instantiated) presentations qualify.
pub fn saturate(p: &Presentation, target: PresentationKind) -> Result<Presentation> {
    if p.has_schemas() {
        return Err(Error::InfiniteDomain("instantiate schemas on a grid before saturating".into()));
    }
    let prep = crate::eval::Prepared::new(p)?;
    let f = &prep.domain;
    let s = f.structure();
    let mut rels = prep.relations.clone();
    let domain = match target {
        PresentationKind::Sup if !s.meets => {
            rels.extend(structure_relations(f, true));
            completion(f, true)?
        }
        PresentationKind::Sup => {
            rels.extend(structure_relations(f, true));
            FiniteDomain::new(f.elements().to_vec(), &f.cover_pairs(), true, false, f.zero_meets())?
        }
        PresentationKind::PreFrm if !s.joins => {
            rels.extend(structure_relations(f, false));
            completion(f, false)?
        }
        PresentationKind::PreFrm => {
            rels.extend(structure_relations(f, false));
            FiniteDomain::new(f.elements().to_vec(), &f.cover_pairs(), false, true, false)?
        }
        PresentationKind::Dcpo if !s.distributive => {
            return Err(Error::Precondition("saturating to DCPO needs a distributive lattice of generators".into()));
        }
        _ => f.clone(),
    };
    let dom = GeneratorDomain::Finite(domain);
    let mut out: Vec<Relation> = Vec::new();
    let mut seen: HashSet<Relation> = HashSet::new();
    let mut queue: Vec<Relation> = Vec::new();
    let mut push = |r: Relation, out: &mut Vec<Relation>, queue: &mut Vec<Relation>| -> Result<()> {
        let n = normalize_relation(&r, &dom)?;
        if is_trivial(&n, &dom) || seen.contains(&n) || out.iter().any(|x| same_relation(x, &n)) {
            return Ok(());
        }
        seen.insert(n.clone());
        out.push(n.clone());
        queue.push(n);
        if out.len() > SATURATION_LIMIT {
            return Err(Error::TooLarge(format!("saturation exceeds {SATURATION_LIMIT} relations")));
        }
        Ok(())
    };
    for r in rels {
        push(r, &mut out, &mut queue)?;
    }
    let elements = dom.elements()?.to_vec();
    while let Some(r) = queue.pop() {
        for &meet in stabilizers(target) {
            for c in &elements {
                push(stabilize(&r, c, meet, &dom), &mut out, &mut queue)?;
            }
        }
    }
    Ok(Presentation { kind: target, domain: dom, relations: out })
}
