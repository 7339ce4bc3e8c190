//! Input documents: a germ given by a polynomial or by abstract data, with
//! the probes to analyze it against.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::branch::{char_from_semigroup, semigroup_from_char, CharData, SemigroupSeq};
use crate::contact::{validate_external, Branch, ExternalBranch, Germ};
use crate::error::{Error, Result};
use crate::ext::{fmt_q, Ext, Q};
use crate::newton::bipoly::parse_poly_factors;
use crate::newton::tree::{germ_from_text, PolyGerm};
use crate::newton::verify::lambda_x;

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GermDocument {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub poly: Option<String>,
    #[serde(rename = "abstract", default, skip_serializing_if = "Option::is_none")]
    pub abstract_germ: Option<AbstractGerm>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub lambdas: Vec<LambdaSpec>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct AbstractGerm {
    pub branches: Vec<BranchSpec>,
    #[serde(default)]
    pub contacts: Vec<ContactSpec>,
}

/// A branch given by its semigroup generators, or `smooth: true`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct BranchSpec {
    pub label: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub semigroup: Option<Vec<u64>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub smooth: Option<bool>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ContactSpec {
    pub pair: [String; 2],
    pub value: Ext,
}

/// A probe: explicit contacts keyed by branch label, or one of the keywords
/// `transversal`, `X` (polynomial input only) and `branch: <label>`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct LambdaSpec {
    pub label: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub contacts: Option<BTreeMap<String, Ext>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub of: Option<String>,
}

impl LambdaSpec {
    pub fn keyword(label: impl Into<String>, of: impl Into<String>) -> Self {
        LambdaSpec { label: label.into(), contacts: None, of: Some(of.into()) }
    }
}

/// A parsed document.
#[derive(Debug, Clone)]
pub struct Resolved {
    pub germ: Germ,
    pub poly: Option<PolyGerm>,
    pub lambdas: Vec<ExternalBranch>,
}

impl GermDocument {
    pub fn from_json(text: &str) -> Result<Self> {
        serde_json::from_str(text).map_err(|e| Error::Document(e.to_string()))
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("documents serialize")
    }

    pub fn poly(text: impl Into<String>) -> Self {
        GermDocument { poly: Some(text.into()), abstract_germ: None, lambdas: Vec::new() }
    }

    /// The abstract document describing `g`.
    pub fn from_germ(g: &Germ) -> Result<Self> {
        Ok(GermDocument { poly: None, abstract_germ: Some(AbstractGerm::from_germ(g)?), lambdas: Vec::new() })
    }

    pub fn resolve(&self) -> Result<Resolved> {
        let (germ, poly) = match (&self.poly, &self.abstract_germ) {
            (Some(p), None) => {
                let pg = germ_from_text(p)?;
                (pg.germ.clone(), Some(pg))
            }
            (None, Some(a)) => (a.to_germ()?, None),
            _ => return Err(Error::Document("exactly one of \"poly\" and \"abstract\" is required".into())),
        };
        let lambdas = self.lambdas.iter().map(|l| resolve_lambda(l, &germ, poly.as_ref())).collect::<Result<_>>()?;
        Ok(Resolved { germ, poly, lambdas })
    }
}

impl AbstractGerm {
    pub fn from_germ(g: &Germ) -> Result<Self> {
        let branches = g
            .branches
            .iter()
            .map(|b| {
                Ok(if b.char.is_smooth() {
                    BranchSpec { label: b.label.clone(), semigroup: None, smooth: Some(true) }
                } else {
                    BranchSpec { label: b.label.clone(), semigroup: Some(semigroup_from_char(&b.char)?.betas), smooth: None }
                })
            })
            .collect::<Result<_>>()?;
        let mut contacts = Vec::new();
        for i in 0..g.r() {
            for j in i + 1..g.r() {
                contacts.push(ContactSpec {
                    pair: [g.branches[i].label.clone(), g.branches[j].label.clone()],
                    value: g.d(i, j).clone(),
                });
            }
        }
        Ok(AbstractGerm { branches, contacts })
    }

    pub fn to_germ(&self) -> Result<Germ> {
        let mut branches = Vec::new();
        for b in &self.branches {
            if branches.iter().any(|x: &Branch| x.label == b.label) {
                return Err(Error::Document(format!("duplicate branch label {}", b.label)));
            }
            let char = match (&b.semigroup, b.smooth) {
                (Some(s), None | Some(false)) => char_from_semigroup(&SemigroupSeq::new(s.clone()))?,
                (None, Some(true)) => CharData::smooth(),
                _ => return Err(Error::Document(format!("branch {} needs either a semigroup or smooth: true", b.label))),
            };
            branches.push(Branch::new(b.label.clone(), char));
        }
        if branches.is_empty() {
            return Err(Error::Document("a germ needs at least one branch".into()));
        }
        let r = branches.len();
        let index = |l: &str| {
            branches.iter().position(|b| b.label == l).ok_or_else(|| Error::Document(format!("unknown branch {l}")))
        };
        let mut contact: Vec<Vec<Option<Ext>>> = vec![vec![None; r]; r];
        for c in &self.contacts {
            let (i, j) = (index(&c.pair[0])?, index(&c.pair[1])?);
            if i == j {
                return Err(Error::Document(format!("contact of {} with itself", c.pair[0])));
            }
            if contact[i][j].is_some() {
                return Err(Error::Document(format!("contact {}–{} given twice", c.pair[0], c.pair[1])));
            }
            contact[i][j] = Some(c.value.clone());
            contact[j][i] = Some(c.value.clone());
        }
        let mut full = vec![vec![Ext::Inf; r]; r];
        for i in 0..r {
            for j in 0..r {
                if i != j {
                    full[i][j] = contact[i][j].clone().ok_or_else(|| {
                        Error::Document(format!("missing contact {}–{}", branches[i].label, branches[j].label))
                    })?;
                }
            }
        }
        Germ::new(branches, full)
    }
}

/// Applies `X → aX + bY`, `Y → cX + dY` factor by factor, so the product
/// structure of the input survives.
pub fn substitute_poly(text: &str, a: &Q, b: &Q, c: &Q, d: &Q) -> Result<String> {
    if a * d == b * c {
        return Err(Error::Document(format!(
            "coordinate change {},{},{},{} is not invertible",
            fmt_q(a),
            fmt_q(b),
            fmt_q(c),
            fmt_q(d)
        )));
    }
    let (f, factors) = parse_poly_factors(text)?;
    if factors.is_empty() {
        return Ok(f.substitute_linear(a, b, c, d).to_string());
    }
    Ok(factors.iter().map(|p| format!("({})", p.substitute_linear(a, b, c, d))).collect::<Vec<_>>().join("*"))
}

/// Rewrites `f` in coordinates where the line `aX + bY = 0` becomes `X = 0`:
/// `X' = aX + bY` and, for `b ≠ 0`, `Y' = X`.
pub fn line_to_x(text: &str, a: &Q, b: &Q) -> Result<String> {
    let (zero, one) = (Q::from_integer(0.into()), Q::from_integer(1.into()));
    if b == &zero {
        if a == &zero {
            return Err(Error::Document("linear:0,0 is not a line".into()));
        }
        substitute_poly(text, &(&one / a), &zero, &zero, &one)
    } else {
        substitute_poly(text, &zero, &one, &(&one / b), &(-(a / b)))
    }
}

fn resolve_lambda(l: &LambdaSpec, g: &Germ, pg: Option<&PolyGerm>) -> Result<ExternalBranch> {
    let h = match (&l.contacts, l.of.as_deref().map(str::trim)) {
        (Some(c), None) => {
            let mut v = vec![None; g.r()];
            for (label, d) in c {
                let i = g.label_index(label).ok_or_else(|| Error::Document(format!("λ {}: unknown branch {label}", l.label)))?;
                v[i] = Some(d.clone());
            }
            let v = v
                .into_iter()
                .enumerate()
                .map(|(i, d)| d.ok_or_else(|| Error::Document(format!("λ {}: missing contact with {}", l.label, g.branches[i].label))))
                .collect::<Result<_>>()?;
            ExternalBranch::smooth(l.label.clone(), v)
        }
        (None, Some("transversal")) => ExternalBranch::transversal(l.label.clone(), g),
        (None, Some("X")) => match pg {
            Some(pg) => lambda_x(pg),
            None => return Err(Error::Document("λ = X needs polynomial input".into())),
        },
        (None, Some(s)) if s.starts_with("branch:") => {
            let name = s["branch:".len()..].trim();
            let i = g.label_index(name).ok_or_else(|| Error::Document(format!("λ {}: unknown branch {name}", l.label)))?;
            ExternalBranch::of_branch(g, i)
        }
        _ => {
            return Err(Error::Document(format!(
                "λ {}: give contacts or one of transversal, X, branch: <label>",
                l.label
            )))
        }
    };
    let h = ExternalBranch { label: l.label.clone(), ..h };
    validate_external(g, &h)?;
    Ok(h)
}
