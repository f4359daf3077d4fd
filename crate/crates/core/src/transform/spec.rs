//! Quotient specifications: the value of the quotient's closure, interior or
//! triquotiency idempotent on each generator, written over the generators.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::lattice::QuotientMode;
use crate::presentation::normalize::normalize_term;
use crate::presentation::print::{self, Style};
use crate::presentation::{Cond, Env, Gen, GeneratorDomain, Meet, Sorts, Term};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ImageEntry {
    pub generator: Gen,
    pub image: Term,
}

/// One branch of a schematic image. `pin` fixes some pattern variables to
/// constants; the branch applies when the remaining variables satisfy `cond`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ImageCase {
    #[serde(default, skip_serializing_if = "Env::is_empty")]
    pub pin: Env,
    pub cond: Cond,
    pub image: Term,
}

/// Image of every generator matching `pattern`, by cases. The cases are
/// expected to be exhaustive and disjoint.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SchematicImage {
    pub pattern: Gen,
    pub cases: Vec<ImageCase>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct QuotientSpec {
    pub mode: QuotientMode,
    #[serde(default)]
    pub image: Vec<ImageEntry>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub schematic: Option<SchematicImage>,
}

impl QuotientSpec {
    pub fn new(mode: QuotientMode, image: Vec<(Gen, Term)>) -> QuotientSpec {
        let image = image.into_iter().map(|(generator, image)| ImageEntry { generator, image }).collect();
        QuotientSpec { mode, image, schematic: None }
    }

    /// The identity quotient on a finite domain.
    pub fn identity(mode: QuotientMode, dom: &GeneratorDomain) -> Result<QuotientSpec> {
        let gens = dom.elements()?;
        Ok(QuotientSpec::new(mode, gens.iter().map(|g| (g.clone(), Term::gen(g.clone()))).collect()))
    }

    pub fn schematic(mode: QuotientMode, pattern: Gen, cases: Vec<ImageCase>) -> QuotientSpec {
        QuotientSpec { mode, image: Vec::new(), schematic: Some(SchematicImage { pattern, cases }) }
    }

    /// Image of a concrete generator: the table first, then the schematic
    /// cases.
    pub fn image_of(&self, g: &Gen) -> Result<Term> {
        if let Some(e) = self.image.iter().find(|e| &e.generator == g) {
            return Ok(e.image.clone());
        }
        let missing = || Error::ImageShape { generator: g.to_string(), reason: "no image given".into() };
        let sch = self.schematic.as_ref().ok_or_else(missing)?;
        let env = match_pattern(&sch.pattern, g).ok_or_else(missing)?;
        for case in &sch.cases {
            if case.pin.iter().any(|(k, v)| env.get(k) != Some(v)) {
                continue;
            }
            if case.cond.eval(&env)? {
                let t = case.image.subst(&env);
                let mut sorts = Sorts::new();
                t.infer_sorts(&mut sorts);
                if let Term::Family(f) = &t {
                    sorts.extend(f.binders.iter().map(|b| (b.name.clone(), b.sort)));
                }
                return Ok(t.map_gens(&mut |h| h.simplify(&sorts)));
            }
        }
        Err(missing())
    }
}

/// Binds the variables of `pattern` so that it equals the concrete `g`.
pub fn match_pattern(pattern: &Gen, g: &Gen) -> Option<Env> {
    let mut env = Env::new();
    let mut bind = |e: &crate::presentation::Expr, v: crate::rational::Endpoint| -> bool {
        match e {
            crate::presentation::Expr::Var(x) => match env.get(x) {
                Some(old) => *old == v,
                None => {
                    env.insert(x.clone(), v);
                    true
                }
            },
            other => other.as_const() == Some(v),
        }
    };
    let ok = match (pattern, g) {
        (Gen::Open(p, q), Gen::Open(..)) | (Gen::CoClosed(p, q), Gen::CoClosed(..)) => {
            let (a, b) = g.endpoints()?;
            bind(p, a) && bind(q, b)
        }
        (Gen::Tagged(t, inner), Gen::Tagged(u, h)) if t == u => return match_pattern(inner, h),
        _ => pattern == g,
    };
    ok.then_some(env)
}

/// Which shape an image must have in a given mode.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub(crate) enum ImageShape {
    /// a join of generators
    JoinOfGens,
    /// a directed join of finite meets of generators
    JoinOfMeets,
    /// a directed join of generators
    DirectedGens,
}

pub(crate) fn shape_for(mode: QuotientMode) -> ImageShape {
    match mode {
        QuotientMode::SemiOpen | QuotientMode::Open => ImageShape::JoinOfGens,
        QuotientMode::SemiProper | QuotientMode::Proper => ImageShape::JoinOfMeets,
        QuotientMode::SemiTriquotient | QuotientMode::Triquotient => ImageShape::DirectedGens,
    }
}

/// Normalises an image and checks its shape. `1` is rewritten to the top
/// generator, and in the directed shapes `0` to the bottom generator.
pub(crate) fn canonical_image(g: &Gen, t: &Term, mode: QuotientMode, dom: &GeneratorDomain, sorts: &Sorts) -> Result<Term> {
    let bad = |reason: &str| Error::ImageShape { generator: print::gen(g, Style::Ascii), reason: reason.into() };
    let shape = shape_for(mode);
    let t = normalize_term(t, dom, sorts)?;
    let single = |m: &Meet| m.0.len() == 1;
    match &t {
        Term::Family(f) => {
            if shape != ImageShape::JoinOfMeets && !single(&f.body) {
                return Err(bad("family body must be a single generator"));
            }
            Ok(t)
        }
        Term::Join(ms) if ms.is_empty() => match shape {
            ImageShape::JoinOfGens => Ok(t),
            _ => dom.bottom().map(Term::gen).ok_or_else(|| bad("0 needs a bottom generator to form a directed join")),
        },
        Term::Join(ms) if ms.len() == 1 && ms[0].0.is_empty() => match shape {
            ImageShape::JoinOfMeets => Ok(t),
            _ => dom.top().map(Term::gen).ok_or_else(|| bad("1 needs a top generator")),
        },
        Term::Join(ms) => {
            if shape != ImageShape::JoinOfMeets && !ms.iter().all(single) {
                return Err(bad("expected a join of generators"));
            }
            Ok(t)
        }
    }
}
