use std::collections::BTreeMap;
use std::path::Path;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use locale_forge::dsl::{self, parse_presentation, parse_quotient_spec};
use locale_forge::eval::{eval_frame_with_limit, verify_coverage};
use locale_forge::intervals::{circle_open_presentation, circle_proper_presentation, coinserter_carrier, nat_reverse_counterexample};
use locale_forge::lattice::{FiniteLattice, LatticeDoc, MonotoneMap, OperatorReport, QuotientMode};
use locale_forge::oracle::{coverage_suite, kleene_suite, oracle_suite};
use locale_forge::presentation::{
    check_kind, instantiate_bounded, instantiate_finitary, CheckOptions, Gen, Presentation, PresentationKind, Style,
};
use locale_forge::random::default_seed;
use locale_forge::rational::{parse_grid, Rat};
use locale_forge::toys::{endpoint_gluing, z2_swap};
use locale_forge::transform::{derive_spec_from_coinserter, present, Colimit};
use locale_forge::Error;

use crate::args::{ColimitArg, Command, ExampleName, Format, VerifyArgs};
use crate::render;

/// Why a command produced no artifact.
#[derive(Debug)]
pub enum Failure {
    Usage(String),
    Core(Error),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Core(e)
    }
}

type Run<T> = Result<T, Failure>;

/// An emitted document and whether the check it reports passed.
pub struct Outcome {
    pub body: String,
    pub passed: bool,
}

fn emit<T: Serialize>(format: Format, value: &T, passed: bool, text: impl Fn(Style) -> String) -> Run<Outcome> {
    let body = match format {
        Format::Json => serde_json::to_string_pretty(value).map_err(Error::from)? + "\n",
        Format::Text => text(Style::Unicode),
        Format::Ascii => text(Style::Ascii),
    };
    Ok(Outcome { body, passed })
}

fn read(path: &Path) -> Run<String> {
    std::fs::read_to_string(path).map_err(|e| Failure::Usage(format!("cannot read {}: {e}", path.display())))
}

fn load(path: &Path) -> Run<Presentation> {
    Ok(parse_presentation(&read(path)?)?)
}

fn mode(s: &str) -> Run<QuotientMode> {
    s.parse().map_err(|_| Failure::Usage(format!("unknown mode `{s}`; expected one of {}", mode_names())))
}

fn mode_names() -> String {
    QuotientMode::ALL.iter().map(|m| m.name()).collect::<Vec<_>>().join(", ")
}

fn grid(g: &Option<String>) -> Run<Option<Vec<Rat>>> {
    g.as_deref().map(|s| parse_grid(s).map_err(|e| Failure::Usage(format!("bad grid `{s}`: {e}")))).transpose()
}

pub fn run(command: &Command, format: Format) -> Run<Outcome> {
    match command {
        Command::Check { file, grid: g, oracle } => {
            let p = load(file)?;
            let report = check_kind(&p, &CheckOptions { grid: grid(&g.grid)?, oracle: *oracle })?;
            let ok = report.relations.iter().all(|r| r.witness.is_none()) && report.verdict == locale_forge::lattice::Verdict::Pass;
            emit(format, &report, ok, |s| render::kind_report(&report, s))
        }
        Command::Transform { file, spec, mode: m } => {
            let p = load(file)?;
            let mut q = parse_quotient_spec(&read(spec)?)?;
            if let Some(m) = m {
                q.mode = mode(m)?;
            }
            let out = present(&p, &q)?;
            emit(format, &out, true, |s| dsl::print(&out.presentation, s))
        }
        Command::Eval { file, grid: g, bounded, limit } => {
            let mut p = load(file)?;
            match grid(&g.grid)? {
                Some(points) => {
                    p = if *bounded { instantiate_bounded(&p, &points)? } else { instantiate_finitary(&p, &points)? };
                }
                None if !p.domain.is_finite() => {
                    return Err(Failure::Usage("this presentation has infinitely many generators; pass --grid".into()));
                }
                None => {}
            }
            let doc = eval_frame_with_limit(&p, *limit)?.to_doc();
            emit(format, &doc, true, |s| render::object(&doc, s))
        }
        Command::Verify(v) => verify(v, format),
        Command::Example { name, simplify, mode: m } => example(*name, *simplify, m, format),
        Command::Derive { file, data, mode: m, colimit } => derive(file, data, mode(m)?, *colimit, format),
    }
}

fn verify(v: &VerifyArgs, format: Format) -> Run<Outcome> {
    let seed = v.seed.unwrap_or_else(default_seed);
    let summary = if v.oracle {
        oracle_suite(mode(v.mode.as_deref().unwrap_or_default())?, seed, v.count)?
    } else if v.kleene {
        kleene_suite(seed, v.count)?
    } else if let Some(file) = &v.file {
        let report = verify_coverage(&load(file)?)?;
        let ok = report.verdict == locale_forge::lattice::Verdict::Pass;
        return emit(format, &report, ok, |_| render::coverage(&report));
    } else if v.coverage {
        let k = v.kind.as_deref().ok_or_else(|| Failure::Usage("--coverage needs --kind or a FILE".into()))?;
        let kind = PresentationKind::from_name(k).ok_or_else(|| Failure::Usage(format!("unknown kind `{k}`")))?;
        coverage_suite(kind, seed, v.count)?
    } else {
        return Err(Failure::Usage("verify needs one of --oracle, --coverage or --kleene".into()));
    };
    emit(format, &summary, summary.passed(), |_| render::suite(&summary))
}

#[derive(Serialize)]
struct NatDoc {
    carrier: Vec<String>,
    report: OperatorReport,
}

fn example(name: ExampleName, simplify: bool, m: &str, format: Format) -> Run<Outcome> {
    match name {
        ExampleName::CircleOpen => {
            let out = circle_open_presentation()?;
            emit(format, &out, true, |s| dsl::print(&out.presentation, s))
        }
        ExampleName::CircleProper => {
            let out = circle_proper_presentation(simplify)?;
            emit(format, &out, true, |s| dsl::print(&out.presentation, s))
        }
        ExampleName::Z2Swap => {
            let out = z2_swap(mode(m)?)?;
            emit(format, &out, true, |s| render::swap(&out, s))
        }
        ExampleName::NatReverse => {
            let doc = NatDoc {
                carrier: coinserter_carrier().into_iter().map(|u| Gen::Nat(u).to_string()).collect(),
                report: nat_reverse_counterexample(),
            };
            // the example documents a law that fails; emitting it is a success
            emit(format, &doc, true, |_| render::nat(&doc.carrier, &doc.report))
        }
        ExampleName::EndpointGluing => {
            let out = endpoint_gluing()?;
            emit(format, &out, out.report.passed(), |_| render::gluing(&out))
        }
    }
}

/// A frame homomorphism given by its table, by element labels, or as the
/// identity.
#[derive(Deserialize)]
#[serde(untagged)]
enum MapData {
    Table(Vec<usize>),
    Labels(BTreeMap<String, String>),
    Named(String),
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct DeriveData {
    #[serde(default)]
    target: Option<LatticeDoc>,
    fstar: MapData,
    gstar: MapData,
}

fn to_map(d: &MapData, source: &Arc<FiniteLattice>, target: &Arc<FiniteLattice>, what: &str) -> Run<MonotoneMap> {
    let table = match d {
        MapData::Table(t) => t.clone(),
        MapData::Named(s) if s == "identity" => source.elements().collect(),
        MapData::Named(s) => return Err(Failure::Usage(format!("{what}: unknown map `{s}`"))),
        MapData::Labels(m) => source
            .elements()
            .map(|a| {
                let from = source.label(a);
                let to = m.get(from).ok_or_else(|| Failure::Usage(format!("{what}: no image for `{from}`")))?;
                target.index_of(to).ok_or_else(|| Failure::Usage(format!("{what}: `{to}` is not an element of the target")))
            })
            .collect::<Run<_>>()?,
    };
    Ok(MonotoneMap::new(source.clone(), target.clone(), table)?)
}

fn derive(file: &Path, data: &Path, mode: QuotientMode, colimit: ColimitArg, format: Format) -> Run<Outcome> {
    let p = load(file)?;
    let data: DeriveData = serde_json::from_str(&read(data)?).map_err(|e| Failure::Usage(format!("bad derive data: {e}")))?;
    let obj = eval_frame_with_limit(&p, 100_000)?;
    let l = obj.lattice()?.clone();
    let target = match &data.target {
        Some(doc) => Arc::new(FiniteLattice::from_doc(doc)?),
        None => l.clone(),
    };
    let fstar = to_map(&data.fstar, &l, &target, "fstar")?;
    let gstar = to_map(&data.gstar, &l, &target, "gstar")?;
    let colimit = match colimit {
        ColimitArg::Coinserter => Colimit::Coinserter,
        ColimitArg::Coequaliser => Colimit::Coequaliser,
    };
    let d = derive_spec_from_coinserter(&obj, &fstar, &gstar, mode, colimit)?;
    emit(format, &d, d.spec.is_some(), |s| render::derivation(&d, s))
}
