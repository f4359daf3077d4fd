//! Small worked examples: the swap of two points and the gluing of the
//! endpoints of a three-element chain.

use std::sync::Arc;

use serde::Serialize;

use crate::dsl::parse_presentation;
use crate::error::{Error, Result};
use crate::eval::{eval_frame, ObjectDoc};
use crate::lattice::{fixed_points, interior_from_pair, FiniteLattice, MonotoneMap, OperatorReport, QuotientMode};
use crate::oracle::check_size_bound;
use crate::presentation::{Gen, Presentation};
use crate::transform::{derive_spec_from_coinserter, present, Colimit, Derivation, TransformedPresentation};

/// The discrete two-point space as a `Sup` presentation over its four opens.
pub const TWO_POINT_SUP: &str = "presentation Sup {
  domain finite { gens z, a, b, t; leq z <= a, z <= b, a <= t, b <= t; meets; }
  rel t <= a v b;
  rel z <= 0;
}
";

/// The same frame as a `DCPO` presentation: the domain already is the frame.
pub const TWO_POINT_DCPO: &str = "presentation DCPO {
  domain finite { gens z, a, b, t; leq z <= a, z <= b, a <= t, b <= t; meets; joins; }
}
";

#[derive(Clone, Debug, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct SwapOutcome {
    pub parent: Presentation,
    pub derivation: Derivation,
    pub quotient: TransformedPresentation,
    pub frame: ObjectDoc,
}

/// Coequaliser of the identity and the swap `a ↔ b` on the two-point frame,
/// presented in `mode`. Open modes use the `Sup` parent, the others the
/// `DCPO` one.
pub fn z2_swap(mode: QuotientMode) -> Result<SwapOutcome> {
    let src = match mode {
        QuotientMode::SemiOpen | QuotientMode::Open => TWO_POINT_SUP,
        _ => TWO_POINT_DCPO,
    };
    let parent = parse_presentation(src)?;
    let obj = eval_frame(&parent)?;
    let l = obj.lattice()?.clone();
    let (ia, ib) = (obj.interp_of(&Gen::named("a"))?, obj.interp_of(&Gen::named("b"))?);
    let swap = MonotoneMap::from_fn(l.clone(), l.clone(), |x| {
        if x == ia {
            ib
        } else if x == ib {
            ia
        } else {
            x
        }
    })?;
    let id = MonotoneMap::identity(l);
    let derivation = derive_spec_from_coinserter(&obj, &id, &swap, mode, Colimit::Coequaliser)?;
    let spec = derivation
        .spec
        .as_ref()
        .ok_or_else(|| Error::LawFailure { law: format!("{mode} operator"), witness: format!("{:?}", derivation.report.witnesses) })?;
    let quotient = present(&parent, spec)?;
    check_size_bound(&parent, &quotient)?;
    let frame = eval_frame(&quotient.presentation)?.to_doc();
    Ok(SwapOutcome { parent, derivation, quotient, frame })
}

#[derive(Clone, Debug, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct GluingOutcome {
    pub interior: Vec<usize>,
    pub report: OperatorReport,
    /// fixed points, as elements of the chain `0 < m < 1`
    pub fixed: Vec<String>,
}

/// The interior `g_* ∘ f*` on `0 < m < 1` for `f*` collapsing `m` to `0`
/// and `g_*` the right adjoint of the inclusion of the endpoints.
pub fn endpoint_gluing() -> Result<GluingOutcome> {
    let c3 = Arc::new(FiniteLattice::chain(&["0", "m", "1"]));
    let c2 = Arc::new(FiniteLattice::two());
    let fstar = MonotoneMap::new(c3.clone(), c2.clone(), vec![0, 0, 1])?;
    let g_right = MonotoneMap::new(c2, c3.clone(), vec![0, 2])?;
    let (p, report) = interior_from_pair(&g_right, &fstar)?;
    let fp = fixed_points(&p)?;
    let fixed = fp.inclusion.iter().map(|&i| c3.label(i).to_string()).collect();
    Ok(GluingOutcome { interior: p.table().to_vec(), report, fixed })
}
