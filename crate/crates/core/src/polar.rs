//! Invariants of a germ relative to a regular parameter `λ`: polar
//! multiplicities per ball, polar quotients, the maximal polar quotient, the
//! Łojasiewicz exponent on the polar curve and special-direction verdicts.

use std::collections::BTreeMap;

use num_traits::One;

use crate::contact::{chain_of_branch, validate_external, Ball, Chain, ExternalBranch, Germ};
use crate::eggers::{
    eggers_balls, lojasiewicz, nu_n_of_ball, polar_invariants, q_of_ball, successor_counts,
    tangential_components, tangential_decomposition, Component,
};
use crate::error::{Error, Result};
use crate::ext::{fmt_q, is_integer, qi, qu, Ext, LowerExt, Q};

/// Position of a smooth probe `λ` relative to the germ.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Placement {
    pub lambda: ExternalBranch,
    /// Index of the germ branch equal to `λ`, if any.
    pub delta: Option<usize>,
    /// `K̄_f(λ)`, sorted upward.
    pub chain: Chain,
    /// `B̃ = max{B(λ, f_i) : f_i ≠ λ}` when `λ` is a branch of the germ.
    pub b_tilde: Option<Ball>,
}

impl Placement {
    pub fn min(&self) -> &Ball {
        self.chain.min()
    }

    /// `B_f(λ)`.
    pub fn top(&self) -> &Ball {
        self.chain.max()
    }

    pub fn sigma_min(&self, b: &Ball) -> i64 {
        (b == self.min()) as i64
    }

    pub fn sigma_max(&self, b: &Ball) -> i64 {
        (b == self.top()) as i64
    }

    /// `d(B, λ)`.
    pub fn d_lambda(&self, b: &Ball) -> Ext {
        Ext::min_of(&self.lambda.contacts[b.center], &b.radius)
    }

    /// `(f̃, λ)₀ = Σ_{f_i ≠ λ} d(f_i, λ)·ord f_i`.
    pub fn intersection_with_reduced(&self, g: &Germ) -> Q {
        (0..g.r())
            .filter(|&i| Some(i) != self.delta)
            .map(|i| self.lambda.contacts[i].expect_fin() * qu(g.ord(i)))
            .sum()
    }
}

pub fn placement(g: &Germ, lambda: &ExternalBranch) -> Result<Placement> {
    if !lambda.is_smooth() {
        return Err(Error::NotSmooth);
    }
    validate_external(g, lambda)?;
    let chain = chain_of_branch(lambda, g);
    let b_tilde = lambda.identical.and_then(|_| chain.balls.iter().filter(|b| b.is_finite()).next_back().cloned());
    Ok(Placement { lambda: lambda.clone(), delta: lambda.identical, chain, b_tilde })
}

/// `q_f(B_f(h))`; times `ord h` this is `(f, h)₀`.
pub fn q_via_position(h: &ExternalBranch, g: &Germ) -> Result<Q> {
    if h.identical.is_some() || h.contacts.iter().any(Ext::is_inf) {
        return Err(Error::BranchOfGerm);
    }
    q_of_ball(chain_of_branch(h, g).max(), g)
}

/// `E(f) ∪ {B_f(λ)}` restricted to finite diameters, sorted upward.
pub fn eligible_balls(p: &Placement, g: &Germ) -> Vec<Ball> {
    let mut out = eggers_balls(g);
    if p.top().is_finite() && !out.contains(p.top()) {
        out.push(p.top().clone());
    }
    out.sort_by(|a, b| a.radius.cmp(&b.radius).then(a.center.cmp(&b.center)));
    out
}

fn as_int(v: Q, what: &str) -> Result<i64> {
    if !is_integer(&v) {
        return Err(Error::Mismatch(format!("{what} evaluated to non-integer {}", fmt_q(&v))));
    }
    Ok(num_traits::ToPrimitive::to_i64(v.numer()).expect("multiplicity fits in i64"))
}

/// Degree in `λ` of the polar factor attached to `B`.
pub fn polar_multiplicity(b: &Ball, p: &Placement, g: &Germ) -> Result<i64> {
    if !eligible_balls(p, g).contains(b) {
        return Err(Error::BallNotEligible(format!("B({},{})", b.center, b.radius)));
    }
    let (nu, n) = nu_n_of_ball(b, g)?;
    let (t, t1, t2) = successor_counts(b, g)?;
    if p.chain.contains(b) {
        let d = b.radius.expect_fin();
        let bracket = qi(t as i64 - 1 + p.sigma_max(b));
        as_int(d * qu(n) * bracket - qi(p.sigma_min(b)), "chain multiplicity")
    } else {
        let dl = p.d_lambda(b);
        let v = dl.expect_fin() * qu(nu) * qi(t1 as i64 + n as i64 * t2 as i64 - 1);
        as_int(v, "off-chain multiplicity")
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PolarEntry {
    pub ball: Ball,
    pub q: Q,
    pub d_lambda: Q,
    pub m: i64,
    pub in_chain: bool,
}

pub fn polar_entries(p: &Placement, g: &Germ) -> Result<Vec<PolarEntry>> {
    eligible_balls(p, g)
        .into_iter()
        .map(|b| {
            Ok(PolarEntry {
                q: q_of_ball(&b, g)?,
                d_lambda: p.d_lambda(&b).expect_fin().clone(),
                m: polar_multiplicity(&b, p, g)?,
                in_chain: p.chain.contains(&b),
                ball: b,
            })
        })
        .collect()
}

/// `Q(f, λ)` with multiplicities `m_q`, sorted by quotient.
pub fn polar_quotients(p: &Placement, g: &Germ) -> Result<Vec<(Q, u64)>> {
    let mut acc: BTreeMap<Q, u64> = BTreeMap::new();
    for e in polar_entries(p, g)? {
        if e.m > 0 {
            *acc.entry(&e.q / &e.d_lambda).or_default() += e.m as u64;
        }
    }
    Ok(acc.into_iter().collect())
}

/// `q₀(f, λ)` by the three-case rule on the number of tangents.
pub fn max_polar_quotient(p: &Placement, g: &Germ) -> Result<LowerExt> {
    if !g.is_singular() {
        return Err(Error::NonsingularGerm);
    }
    let e = eggers_balls(g);
    let t = tangential_decomposition(g).len();
    let over = |balls: Vec<&Ball>| -> Result<LowerExt> {
        let mut best: Option<Q> = None;
        for b in balls {
            let v = q_of_ball(b, g)? / p.d_lambda(b).expect_fin();
            if best.as_ref().is_none_or(|x| v > *x) {
                best = Some(v);
            }
        }
        Ok(best.map(LowerExt::Fin).unwrap_or(LowerExt::NegInf))
    };
    if t != 2 {
        over(e.iter().collect())
    } else if e.len() >= 2 {
        over(e.iter().filter(|b| *b != p.top()).collect())
    } else if p.delta.is_none() {
        let i = p.intersection_with_reduced(g);
        Ok(LowerExt::Fin(&i / (&i - Q::one())))
    } else {
        Ok(LowerExt::NegInf)
    }
}

/// `L̃₀(f, λ) = max_{B ∈ E(f)} (q_f(B) − d(B, λ))`.
pub fn tilde_l(p: &Placement, g: &Germ) -> Result<Q> {
    let e = eggers_balls(g);
    if e.is_empty() {
        return Err(Error::EmptyEggers);
    }
    let mut best: Option<Q> = None;
    for b in &e {
        let v = q_of_ball(b, g)? - p.d_lambda(b).expect_fin();
        if best.as_ref().is_none_or(|x| v > *x) {
            best = Some(v);
        }
    }
    Ok(best.unwrap())
}

/// The Łojasiewicz exponent of `f` restricted to the polar curve. In the one
/// class where it is not determined by the equisingularity data, only the
/// interval `[q₀(f,λ) − 1, L̃₀]` is reported.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum PolarExponent {
    Exact(Q),
    ClassDependent { lower: LowerExt, upper: Q },
}

impl PolarExponent {
    pub fn upper(&self) -> &Q {
        match self {
            PolarExponent::Exact(v) => v,
            PolarExponent::ClassDependent { upper, .. } => upper,
        }
    }
}

pub fn lojasiewicz_on_polar(p: &Placement, g: &Germ) -> Result<PolarExponent> {
    let tl = tilde_l(p, g)?;
    let t = tangential_decomposition(g).len();
    let e = eggers_balls(g);
    if t == 1 && e.len() == 1 && e[0] == *p.top() {
        let lower = match max_polar_quotient(p, g)? {
            LowerExt::Fin(q) => LowerExt::Fin(q - Q::one()),
            LowerExt::NegInf => LowerExt::NegInf,
        };
        Ok(PolarExponent::ClassDependent { lower, upper: tl })
    } else {
        Ok(PolarExponent::Exact(tl))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum DirectionStatus {
    /// The special direction is the tangent of this tangential component.
    UniqueTangentIndex(usize),
    NoSpecialDirection,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SpecialVerdict {
    pub components: Vec<Component>,
    pub status: DirectionStatus,
}

pub fn special_verdict(g: &Germ) -> Result<SpecialVerdict> {
    if !g.is_singular() {
        return Err(Error::NonsingularGerm);
    }
    let components = tangential_components(g)?;
    let max = components.iter().map(|c| &c.m).max().unwrap();
    let at_max: Vec<usize> = (0..components.len()).filter(|&i| components[i].m == *max).collect();
    let status = if at_max.len() == 1 {
        DirectionStatus::UniqueTangentIndex(at_max[0])
    } else {
        DirectionStatus::NoSpecialDirection
    };
    Ok(SpecialVerdict { components, status })
}

/// Whether `λ` is tangent to the special direction.
pub fn is_special(p: &Placement, g: &Germ) -> Result<bool> {
    let v = special_verdict(g)?;
    Ok(match v.status {
        DirectionStatus::UniqueTangentIndex(i) => {
            v.components[i].branches.iter().any(|&j| p.lambda.contacts[j] > Ext::int(1))
        }
        DirectionStatus::NoSpecialDirection => false,
    })
}

/// Checks of the relations between `L₀(f)`, `L₀(f|Γ)`, `q₀(f)` and `q₀(f,λ)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ExponentRelations {
    pub l0: Q,
    pub l_polar: PolarExponent,
    pub q0_f: Q,
    pub q0_f_lambda: LowerExt,
    pub morse: bool,
    /// `L₀(f) ≥ L₀(f|Γ)`, using the upper end of the interval when class dependent.
    pub upper_holds: bool,
    /// `L₀(f|Γ) ≥ q₀(f,λ) − 1`.
    pub lower_holds: bool,
    /// `L₀(f) = L₀(f|Γ)`, when decidable from the data.
    pub l_equal: Option<bool>,
    pub q_equal: bool,
    /// For non-Morse germs: the two equalities agree.
    pub equivalence_holds: Option<bool>,
}

pub fn is_morse(g: &Germ) -> bool {
    g.ord_total() == 2 && g.branches.iter().all(|b| b.char.is_smooth()) && tangential_decomposition(g).len() == 2
}

pub fn exponent_relations(p: &Placement, g: &Germ) -> Result<ExponentRelations> {
    let l0 = lojasiewicz(g)?;
    let q0_f = polar_invariants(g)?.q0().clone();
    let q0_f_lambda = max_polar_quotient(p, g)?;
    let l_polar = lojasiewicz_on_polar(p, g)?;
    let morse = is_morse(g);
    let bound = q0_f_lambda.fin().map(|q| q - Q::one());
    let (upper_holds, lower_holds, l_equal) = match &l_polar {
        PolarExponent::Exact(v) => (*v <= l0, bound.as_ref().is_none_or(|b| v >= b), Some(*v == l0)),
        PolarExponent::ClassDependent { upper, .. } => (
            *upper <= l0,
            bound.as_ref().is_none_or(|b| upper >= b),
            if *upper < l0 { Some(false) } else { None },
        ),
    };
    let q_equal = q0_f_lambda == LowerExt::Fin(q0_f.clone());
    let equivalence_holds = if morse { None } else { l_equal.map(|e| e == q_equal) };
    Ok(ExponentRelations { l0, l_polar, q0_f, q0_f_lambda, morse, upper_holds, lower_holds, l_equal, q_equal, equivalence_holds })
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PolarReport {
    pub placement: Placement,
    pub entries: Vec<PolarEntry>,
    pub quotients: Vec<(Q, u64)>,
    pub q0: LowerExt,
    pub tilde_l: Q,
    pub l_on_polar: PolarExponent,
    pub is_special: bool,
    pub relations: ExponentRelations,
}

pub fn analyze(g: &Germ, lambda: &ExternalBranch) -> Result<PolarReport> {
    let p = placement(g, lambda)?;
    Ok(PolarReport {
        entries: polar_entries(&p, g)?,
        quotients: polar_quotients(&p, g)?,
        q0: max_polar_quotient(&p, g)?,
        tilde_l: tilde_l(&p, g)?,
        l_on_polar: lojasiewicz_on_polar(&p, g)?,
        is_special: is_special(&p, g)?,
        relations: exponent_relations(&p, g)?,
        placement: p,
    })
}
