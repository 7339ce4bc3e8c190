//! The JSON report produced by the analyzer. Every rational is a `"p/q"`
//! string, so reports are exact and parse back to the same value.

use serde::{Deserialize, Serialize};

use crate::contact::{chain_of_branch, Ball, ExternalBranch, Germ};
use crate::doc::{AbstractGerm, GermDocument, Resolved};
use crate::eggers::{build_tree, lojasiewicz, polar_invariants, tangential_components, EdgeStyle, EggersTree};
use crate::error::{Error, Result};
use crate::ext::{qi, qu, Ext, LowerExt, Rat, Q};
use crate::newton::bipoly::parse_poly;
use crate::newton::polygon::{polygon, TrackPoly};
use crate::newton::verify::{cross_verify, VerifyReport};
use crate::polar::{analyze, special_verdict, DirectionStatus, PolarExponent, PolarReport};

pub const SCHEMA_VERSION: u32 = 1;

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ReportDocument {
    pub schema_version: u32,
    pub germ: GermDocument,
    /// Abstract data read off a polynomial input.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub extracted: Option<AbstractGerm>,
    #[serde(flatten)]
    pub analysis: Option<Analysis>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub partial: Option<Partial>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Analysis {
    pub tree: TreeReport,
    /// `Q(f)` with multiplicities; empty for a smooth germ.
    pub polar_invariants: Vec<Mult>,
    #[serde(rename = "L0")]
    pub l0: Rat,
    pub components: Vec<ComponentReport>,
    /// `"none"` or `"tangent"`.
    pub special_direction: String,
    /// Index into `components` when `special_direction` is `"tangent"`.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub special_component: Option<usize>,
    pub lambdas: Vec<LambdaReport>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub symbolic: Option<SymbolicReport>,
}

/// What is still known when the symbolic pipeline stops early.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Partial {
    pub error: String,
    pub exit_code: i32,
    /// Faces of the Newton polygon of the input, when it parses.
    pub newton_polygon: Vec<FaceReport>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct FaceReport {
    pub start: [Rat; 2],
    pub end: [Rat; 2],
    pub inclination: Rat,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Mult {
    pub value: Rat,
    pub multiplicity: u64,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct BallRef {
    pub center: String,
    pub radius: Ext,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TreeReport {
    pub vertices: Vec<VertexReport>,
    pub edges: Vec<EdgeReport>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct VertexReport {
    pub id: usize,
    pub ball: BallRef,
    pub members: Vec<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub branch: Option<String>,
    pub d: Ext,
    pub char: Vec<Rat>,
    pub nu: Rat,
    pub n: Rat,
    pub order: Rat,
    pub t: Rat,
    pub t1: Rat,
    pub t2: Rat,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub q: Option<Rat>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub m: Option<Rat>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct EdgeReport {
    pub from: usize,
    pub to: usize,
    /// `"solid"` or `"dashed"`.
    pub style: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ComponentReport {
    pub branches: Vec<String>,
    pub ord: u64,
    #[serde(rename = "L0")]
    pub l0: Rat,
    #[serde(rename = "M")]
    pub m: Rat,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct LambdaReport {
    pub label: String,
    pub contacts: Vec<Ext>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub branch_of_germ: Option<String>,
    pub chain: Vec<BallRef>,
    pub entries: Vec<EntryReport>,
    pub polar_quotients: Vec<Mult>,
    pub q0: LowerExt,
    #[serde(rename = "tilde_L0")]
    pub tilde_l: Rat,
    #[serde(rename = "L_on_polar")]
    pub l_on_polar: PolarExponentReport,
    pub is_special: bool,
    pub morse: bool,
    /// `L₀(f) ≥ L₀(f|Γ)`.
    pub upper_holds: bool,
    /// `L₀(f|Γ) ≥ q₀(f,λ) − 1`.
    pub lower_holds: bool,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub l_equal: Option<bool>,
    pub q_equal: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct EntryReport {
    pub ball: BallRef,
    pub q: Rat,
    pub d_lambda: Rat,
    pub m: i64,
    pub in_chain: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PolarExponentReport {
    pub class_dependent: bool,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub value: Option<Rat>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub lower: Option<LowerExt>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub upper: Option<Rat>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SymbolicReport {
    pub passed: bool,
    pub checks: Vec<CheckReport>,
    pub ledger_total: u64,
    pub ledger: Vec<LedgerReport>,
    pub balls: Vec<BallCountReport>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CheckReport {
    pub name: String,
    pub pass: bool,
    pub detail: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct LedgerReport {
    pub track: String,
    pub inclination: Rat,
    pub count: u64,
    pub second_kind: u64,
    pub probe: String,
    pub radius: Rat,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub ball: Option<BallRef>,
    pub bound_only: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct BallCountReport {
    pub ball: BallRef,
    pub ledger: u64,
    pub combinatorial: i64,
    pub bound_only: bool,
}

impl ReportDocument {
    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("reports serialize")
    }

    pub fn from_json(text: &str) -> Result<Self> {
        serde_json::from_str(text).map_err(|e| Error::Document(e.to_string()))
    }
}

fn ball_ref(b: &Ball, g: &Germ) -> BallRef {
    BallRef { center: g.branches[b.center].label.clone(), radius: b.radius.clone() }
}

fn mults(v: &[(Q, u64)]) -> Vec<Mult> {
    v.iter().map(|(q, m)| Mult { value: q.into(), multiplicity: *m }).collect()
}

fn count(x: usize) -> Rat {
    Rat(qu(x as u64))
}

pub fn tree_report(t: &EggersTree, g: &Germ) -> TreeReport {
    let vertices = t
        .vertices
        .iter()
        .enumerate()
        .map(|(id, v)| {
            let d = &v.data;
            VertexReport {
                id,
                ball: ball_ref(&v.ball, g),
                members: v.members.iter().map(|&i| g.branches[i].label.clone()).collect(),
                branch: v.branch.map(|i| g.branches[i].label.clone()),
                d: d.d.clone(),
                char: d.char_set.iter().map(Rat::from).collect(),
                nu: Rat(qu(d.nu)),
                n: Rat(qu(d.n)),
                order: Rat(qu(d.order)),
                t: count(d.t),
                t1: count(d.t1),
                t2: count(d.t2),
                q: d.q.as_ref().map(Rat::from),
                m: d.m.map(|m| Rat(qi(m))),
            }
        })
        .collect();
    let edges = t
        .edges
        .iter()
        .map(|e| EdgeReport {
            from: e.from,
            to: e.to,
            style: match e.style {
                EdgeStyle::Solid => "solid",
                EdgeStyle::Discontinuous => "dashed",
            }
            .into(),
        })
        .collect();
    TreeReport { vertices, edges }
}

pub fn lambda_report(r: &PolarReport, h: &ExternalBranch, g: &Germ) -> LambdaReport {
    let l_on_polar = match &r.l_on_polar {
        PolarExponent::Exact(v) => PolarExponentReport { class_dependent: false, value: Some(v.into()), lower: None, upper: None },
        PolarExponent::ClassDependent { lower, upper } => PolarExponentReport {
            class_dependent: true,
            value: None,
            lower: Some(lower.clone()),
            upper: Some(upper.into()),
        },
    };
    LambdaReport {
        label: h.label.clone(),
        contacts: h.contacts.clone(),
        branch_of_germ: h.identical.map(|i| g.branches[i].label.clone()),
        chain: chain_of_branch(h, g).balls.iter().map(|b| ball_ref(b, g)).collect(),
        entries: r
            .entries
            .iter()
            .map(|e| EntryReport {
                ball: ball_ref(&e.ball, g),
                q: (&e.q).into(),
                d_lambda: (&e.d_lambda).into(),
                m: e.m,
                in_chain: e.in_chain,
            })
            .collect(),
        polar_quotients: mults(&r.quotients),
        q0: r.q0.clone(),
        tilde_l: (&r.tilde_l).into(),
        l_on_polar,
        is_special: r.is_special,
        morse: r.relations.morse,
        upper_holds: r.relations.upper_holds,
        lower_holds: r.relations.lower_holds,
        l_equal: r.relations.l_equal,
        q_equal: r.relations.q_equal,
    }
}

pub fn symbolic_report(v: &VerifyReport, g: &Germ) -> SymbolicReport {
    SymbolicReport {
        passed: v.passed(),
        checks: v.checks.iter().map(|c| CheckReport { name: c.name.clone(), pass: c.pass, detail: c.detail.clone() }).collect(),
        ledger_total: v.ledger_total(),
        ledger: v
            .ledger
            .iter()
            .map(|e| LedgerReport {
                track: e.phi.clone(),
                inclination: (&e.incl).into(),
                count: e.count,
                second_kind: e.second_kind,
                probe: e.probe.clone(),
                radius: (&e.radius).into(),
                ball: e.ball.as_ref().map(|b| ball_ref(b, g)),
                bound_only: e.bound_only(),
            })
            .collect(),
        balls: v
            .balls
            .iter()
            .map(|b| BallCountReport {
                ball: ball_ref(&b.ball, g),
                ledger: b.ledger,
                combinatorial: b.combinatorial,
                bound_only: b.bound_only,
            })
            .collect(),
    }
}

/// Invariants of the germ and of every probe of a resolved document.
pub fn analysis(r: &Resolved, symbolic: bool) -> Result<Analysis> {
    let g = &r.germ;
    let tree = build_tree(g)?;
    let singular = g.is_singular();
    if !singular && !r.lambdas.is_empty() {
        return Err(Error::NonsingularGerm);
    }
    let (special_direction, special_component) = if singular {
        match special_verdict(g)?.status {
            DirectionStatus::UniqueTangentIndex(i) => ("tangent".to_string(), Some(i)),
            DirectionStatus::NoSpecialDirection => ("none".to_string(), None),
        }
    } else {
        ("none".to_string(), None)
    };
    let lambdas = r.lambdas.iter().map(|h| Ok(lambda_report(&analyze(g, h)?, h, g))).collect::<Result<_>>()?;
    let symbolic = match (&r.poly, symbolic) {
        (Some(pg), true) => Some(symbolic_report(&cross_verify(pg)?, g)),
        _ => None,
    };
    Ok(Analysis {
        tree: tree_report(&tree, g),
        polar_invariants: if singular { mults(&polar_invariants(g)?.values) } else { Vec::new() },
        l0: lojasiewicz(g)?.into(),
        components: tangential_components(g)?
            .into_iter()
            .map(|c| ComponentReport {
                branches: c.branches.iter().map(|&i| g.branches[i].label.clone()).collect(),
                ord: c.ord,
                l0: c.l0.into(),
                m: c.m.into(),
            })
            .collect(),
        special_direction,
        special_component,
        lambdas,
        symbolic,
    })
}

/// The full report for `doc`; `symbolic` adds the cross-check section for
/// polynomial input.
pub fn build_report(doc: &GermDocument, symbolic: bool) -> Result<ReportDocument> {
    let r = doc.resolve()?;
    let extracted = match &r.poly {
        Some(pg) => Some(AbstractGerm::from_germ(&pg.germ)?),
        None => None,
    };
    Ok(ReportDocument {
        schema_version: SCHEMA_VERSION,
        germ: doc.clone(),
        extracted,
        analysis: Some(analysis(&r, symbolic)?),
        partial: None,
    })
}

/// What can be reported about `doc` after `err` stopped the pipeline.
pub fn partial_report(doc: &GermDocument, err: &Error) -> ReportDocument {
    let newton_polygon = doc
        .poly
        .as_deref()
        .and_then(|p| parse_poly(p).ok())
        .and_then(|f| polygon(&TrackPoly::from(&f), None).ok())
        .map(|p| {
            p.faces
                .iter()
                .map(|s| FaceReport {
                    start: [(&s.start.0).into(), (&s.start.1).into()],
                    end: [(&s.end.0).into(), (&s.end.1).into()],
                    inclination: (&s.incl).into(),
                })
                .collect()
        })
        .unwrap_or_default();
    ReportDocument {
        schema_version: SCHEMA_VERSION,
        germ: doc.clone(),
        extracted: None,
        analysis: None,
        partial: Some(Partial { error: err.to_string(), exit_code: err.exit_code(), newton_polygon }),
    }
}
