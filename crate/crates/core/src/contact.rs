//! The ultrametric space of branches restricted to a finite germ.
//!
//! A [`Germ`] is abstract equisingularity data: the characteristic of each
//! branch and the matrix of contact orders `d(f_i, f_j)`. Validation checks
//! the logarithmic-distance axioms, compatibility of characteristic contacts
//! below each pairwise contact, and the successor constraint at characteristic
//! balls. Passing validation does not prove that an analytic curve with this
//! data exists; stronger arithmetic constraints on realizable data may hold.

use std::cmp::Ordering;
use std::fmt;

use num_traits::One;

use crate::branch::{validate_char, CharData};
use crate::error::{Error, Result};
use crate::ext::{n_for, Ext, Q};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Branch {
    pub label: String,
    pub char: CharData,
}

impl Branch {
    pub fn new(label: impl Into<String>, char: CharData) -> Self {
        Branch { label: label.into(), char }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Germ {
    pub branches: Vec<Branch>,
    pub contact: Vec<Vec<Ext>>,
}

/// A ball of the space of branches, centered at a germ branch. Radii are
/// `>= 1`; `Ext::Inf` gives the singleton `{f_i}`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Ball {
    pub center: usize,
    pub radius: Ext,
}

impl Ball {
    pub fn new(center: usize, radius: Ext) -> Self {
        Ball { center, radius }
    }

    pub fn is_finite(&self) -> bool {
        !self.radius.is_inf()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum BallOrder {
    Less,
    Equal,
    Greater,
    Incomparable,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Violation {
    Shape,
    DuplicateLabel(String),
    InvalidChar { i: usize, reason: String },
    DiagonalFinite { i: usize },
    Asymmetric { i: usize, j: usize },
    NotReduced { i: usize, j: usize },
    BelowOne { i: usize, j: usize },
    StrongTriangle { i: usize, j: usize, k: usize },
    CharIncompatible { i: usize, j: usize },
    CharacteristicBall { center: usize, radius: Q, discontinuous: usize },
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Violation::Shape => write!(f, "contact matrix is not r×r"),
            Violation::DuplicateLabel(l) => write!(f, "duplicate branch label {l}"),
            Violation::InvalidChar { i, reason } => write!(f, "branch {i}: {reason}"),
            Violation::DiagonalFinite { i } => write!(f, "d(f{i},f{i}) must be inf"),
            Violation::Asymmetric { i, j } => write!(f, "d({i},{j}) != d({j},{i})"),
            Violation::NotReduced { i, j } => write!(f, "branches {i} and {j} coincide"),
            Violation::BelowOne { i, j } => write!(f, "d({i},{j}) < 1"),
            Violation::StrongTriangle { i, j, k } => {
                write!(f, "strong triangle inequality fails on ({i},{j},{k})")
            }
            Violation::CharIncompatible { i, j } => {
                write!(f, "branches {i} and {j} disagree on characteristic contacts below their contact")
            }
            Violation::CharacteristicBall { center, radius, discontinuous } => write!(
                f,
                "characteristic ball B({center},{}) has {discontinuous} discontinuous successors",
                crate::ext::fmt_q(radius)
            ),
        }
    }
}

impl Germ {
    /// Builds and validates a germ.
    pub fn new(branches: Vec<Branch>, contact: Vec<Vec<Ext>>) -> Result<Self> {
        let g = Germ { branches, contact };
        let v = validate_germ(&g);
        if v.is_empty() {
            Ok(g)
        } else {
            Err(Error::InvalidGerm(v))
        }
    }

    pub fn r(&self) -> usize {
        self.branches.len()
    }

    pub fn d(&self, i: usize, j: usize) -> &Ext {
        &self.contact[i][j]
    }

    pub fn ord(&self, i: usize) -> u64 {
        self.branches[i].char.ord
    }

    pub fn ord_total(&self) -> u64 {
        self.branches.iter().map(|b| b.char.ord).sum()
    }

    pub fn char_of(&self, i: usize) -> &CharData {
        &self.branches[i].char
    }

    pub fn label_index(&self, label: &str) -> Option<usize> {
        self.branches.iter().position(|b| b.label == label)
    }

    pub fn is_singular(&self) -> bool {
        self.ord_total() >= 2
    }

    /// `𝓑 = B(f, 1)`, the ball of all branches.
    pub fn root_ball(&self) -> Ball {
        Ball::new(0, Ext::int(1))
    }

    pub fn members(&self, b: &Ball) -> Vec<usize> {
        (0..self.r()).filter(|&j| *self.d(b.center, j) >= b.radius).collect()
    }

    pub fn canonical(&self, b: &Ball) -> Ball {
        let c = (0..self.r()).find(|&j| *self.d(b.center, j) >= b.radius).unwrap_or(b.center);
        Ball::new(c, b.radius.clone())
    }

    /// Restriction to the listed branches, in the given order.
    pub fn sub_germ(&self, idx: &[usize]) -> Germ {
        Germ {
            branches: idx.iter().map(|&i| self.branches[i].clone()).collect(),
            contact: idx.iter().map(|&i| idx.iter().map(|&j| self.contact[i][j].clone()).collect()).collect(),
        }
    }

    /// Classes of the relation `d(f_i, f_j) > r` on `members`.
    pub fn classes_above(&self, members: &[usize], r: &Ext) -> Vec<Vec<usize>> {
        let mut classes: Vec<Vec<usize>> = Vec::new();
        for &m in members {
            match classes.iter_mut().find(|c| self.d(c[0], m) > r) {
                Some(c) => c.push(m),
                None => classes.push(vec![m]),
            }
        }
        classes
    }
}

pub fn validate_germ(g: &Germ) -> Vec<Violation> {
    let r = g.r();
    let mut out = Vec::new();
    if g.contact.len() != r || g.contact.iter().any(|row| row.len() != r) {
        return vec![Violation::Shape];
    }
    for (i, b) in g.branches.iter().enumerate() {
        if g.branches[..i].iter().any(|o| o.label == b.label) {
            out.push(Violation::DuplicateLabel(b.label.clone()));
        }
        if !validate_char(&b.char) {
            let reason = crate::branch::semigroup_from_char(&b.char)
                .err()
                .map(|e| e.to_string())
                .unwrap_or_default();
            out.push(Violation::InvalidChar { i, reason });
        }
    }
    let one = Ext::Fin(Q::one());
    for i in 0..r {
        if !g.d(i, i).is_inf() {
            out.push(Violation::DiagonalFinite { i });
        }
        for j in i + 1..r {
            if g.d(i, j) != g.d(j, i) {
                out.push(Violation::Asymmetric { i, j });
            }
            if g.d(i, j).is_inf() {
                out.push(Violation::NotReduced { i, j });
            }
            if *g.d(i, j) < one {
                out.push(Violation::BelowOne { i, j });
            }
        }
    }
    for i in 0..r {
        for j in i + 1..r {
            for k in j + 1..r {
                let mut v = [g.d(i, j), g.d(i, k), g.d(j, k)];
                v.sort();
                if v[0] != v[1] {
                    out.push(Violation::StrongTriangle { i, j, k });
                }
            }
        }
    }
    for i in 0..r {
        for j in i + 1..r {
            if let Ext::Fin(d) = g.d(i, j) {
                if g.branches[i].char.contacts_below(d) != g.branches[j].char.contacts_below(d) {
                    out.push(Violation::CharIncompatible { i, j });
                }
            }
        }
    }
    out
}

/// [`validate_germ`] plus the successor constraint at characteristic balls:
/// a ball `B` with `n(B) > 1` has at most one discontinuous successor.
pub fn validate_germ_strict(g: &Germ) -> Vec<Violation> {
    let mut out = validate_germ(g);
    if !out.is_empty() {
        return out;
    }
    let mut seen: Vec<Ball> = Vec::new();
    for i in 0..g.r() {
        let mut radii: Vec<Q> = (0..g.r()).filter_map(|j| g.d(i, j).fin().cloned()).collect();
        radii.extend(g.char_of(i).contacts.iter().cloned());
        for rad in radii {
            let b = g.canonical(&Ball::new(i, Ext::Fin(rad.clone())));
            if seen.contains(&b) {
                continue;
            }
            seen.push(b.clone());
            let ch = g.char_of(b.center);
            let k = ch.count_below(&rad);
            if n_for(&rad, ch.nu_of_prefix(k)) < 2 {
                continue;
            }
            let members = g.members(&b);
            let disc = g
                .classes_above(&members, &b.radius)
                .iter()
                .filter(|c| !g.char_of(c[0]).contacts.contains(&rad))
                .count();
            if disc > 1 {
                out.push(Violation::CharacteristicBall { center: b.center, radius: rad, discontinuous: disc });
            }
        }
    }
    out
}

pub fn balls_intersect(b1: &Ball, b2: &Ball, g: &Germ) -> bool {
    let m = Ext::min_of(&b1.radius, &b2.radius);
    m <= *g.d(b1.center, b2.center)
}

pub fn ball_cmp(b1: &Ball, b2: &Ball, g: &Germ) -> BallOrder {
    let d = g.d(b1.center, b2.center);
    match b1.radius.cmp(&b2.radius) {
        Ordering::Equal if b1.radius <= *d => BallOrder::Equal,
        Ordering::Less if b1.radius <= *d => BallOrder::Less,
        Ordering::Greater if b2.radius <= *d => BallOrder::Greater,
        _ => BallOrder::Incomparable,
    }
}

/// A branch outside the germ described by its contacts with the germ's
/// branches. `identical` names the germ branch it coincides with, if any.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ExternalBranch {
    pub label: String,
    pub char: CharData,
    pub contacts: Vec<Ext>,
    pub identical: Option<usize>,
}

impl ExternalBranch {
    pub fn smooth(label: impl Into<String>, contacts: Vec<Ext>) -> Self {
        ExternalBranch { label: label.into(), char: CharData::smooth(), contacts, identical: None }
    }

    /// A smooth branch transversal to every branch of `g`.
    pub fn transversal(label: impl Into<String>, g: &Germ) -> Self {
        Self::smooth(label, vec![Ext::int(1); g.r()])
    }

    /// The germ branch `i` itself, seen from outside.
    pub fn of_branch(g: &Germ, i: usize) -> Self {
        ExternalBranch {
            label: g.branches[i].label.clone(),
            char: g.char_of(i).clone(),
            contacts: g.contact[i].clone(),
            identical: Some(i),
        }
    }

    pub fn is_smooth(&self) -> bool {
        self.char.is_smooth()
    }
}

/// The germ with `h` appended, or `g` itself when `h` is one of its branches.
pub fn joint_germ(g: &Germ, h: &ExternalBranch) -> Germ {
    if h.identical.is_some() {
        return g.clone();
    }
    let mut j = g.clone();
    for (row, c) in j.contact.iter_mut().zip(&h.contacts) {
        row.push(c.clone());
    }
    let mut last = h.contacts.clone();
    last.push(Ext::Inf);
    j.contact.push(last);
    j.branches.push(Branch::new(h.label.clone(), h.char.clone()));
    j
}

/// Checks that `h` can sit next to the germ: the joint data passes the strict
/// validation, or `h` reproduces the row of the branch it is identified with.
pub fn validate_external(g: &Germ, h: &ExternalBranch) -> Result<()> {
    if h.contacts.len() != g.r() {
        return Err(Error::InvalidContacts(format!("{} contacts for {} branches", h.contacts.len(), g.r())));
    }
    if let Some(k) = h.identical {
        if k >= g.r() || h.contacts != g.contact[k] || h.char != *g.char_of(k) {
            return Err(Error::InvalidContacts(format!("probe {} does not match branch {k}", h.label)));
        }
        return Ok(());
    }
    if let Some(i) = h.contacts.iter().position(Ext::is_inf) {
        return Err(Error::InvalidContacts(format!(
            "probe {} has infinite contact with branch {i} but is not identified with it",
            h.label
        )));
    }
    let v = validate_germ_strict(&joint_germ(g, h));
    if v.is_empty() {
        Ok(())
    } else {
        Err(Error::InvalidContacts(v.iter().map(|x| x.to_string()).collect::<Vec<_>>().join("; ")))
    }
}

pub fn dist_ball_branch(b: &Ball, h: &ExternalBranch, _g: &Germ) -> Ext {
    Ext::min_of(&h.contacts[b.center], &b.radius)
}

/// `d_f(g, h) = max_i min(d(f_i, g), d(f_i, h))`, checked against the two
/// ball formulas `d(B_f(g), h)` and `d(B_f(h), g)`.
pub fn dist_via_germ(g1: &ExternalBranch, h: &ExternalBranch, g: &Germ) -> Result<Ext> {
    let v = g1
        .contacts
        .iter()
        .zip(&h.contacts)
        .map(|(a, b)| Ext::min_of(a, b))
        .max()
        .ok_or(Error::EmptyEggers)?;
    let via_g = dist_ball_branch(&chain_of_branch(g1, g).max().clone(), h, g);
    let via_h = dist_ball_branch(&chain_of_branch(h, g).max().clone(), g1, g);
    if via_g != v || via_h != v {
        return Err(Error::Mismatch(format!(
            "d_f({},{}) = {v} but ball formulas give {via_g} and {via_h}",
            g1.label, h.label
        )));
    }
    Ok(v)
}

/// The chain `K̄_f(h)` of balls `B(f_i, d(f_i, h))`, sorted upward.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Chain {
    pub balls: Vec<Ball>,
}

impl Chain {
    pub fn min(&self) -> &Ball {
        &self.balls[0]
    }

    /// `B_f(h)`.
    pub fn max(&self) -> &Ball {
        self.balls.last().unwrap()
    }

    pub fn contains(&self, b: &Ball) -> bool {
        self.balls.contains(b)
    }
}

pub fn chain_of_branch(h: &ExternalBranch, g: &Germ) -> Chain {
    let mut balls: Vec<Ball> =
        (0..g.r()).map(|i| g.canonical(&Ball::new(i, h.contacts[i].clone()))).collect();
    balls.sort_by(|a, b| a.radius.cmp(&b.radius).then(a.center.cmp(&b.center)));
    balls.dedup();
    Chain { balls }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::branch::{char_from_semigroup, SemigroupSeq};

    fn three_balls() -> Germ {
        let c1 = char_from_semigroup(&SemigroupSeq::new(vec![2, 5])).unwrap();
        let s = CharData::smooth();
        let i = Ext::Inf;
        let one = Ext::int(1);
        let two = Ext::int(2);
        Germ::new(
            vec![Branch::new("f1", c1), Branch::new("f2", s.clone()), Branch::new("f3", s.clone()), Branch::new("f4", s)],
            vec![
                vec![i.clone(), one.clone(), one.clone(), one.clone()],
                vec![one.clone(), i.clone(), two.clone(), two.clone()],
                vec![one.clone(), two.clone(), i.clone(), two.clone()],
                vec![one, two.clone(), two, i],
            ],
        )
        .unwrap()
    }

    #[test]
    fn validation() {
        assert!(validate_germ_strict(&three_balls()).is_empty());
        let s = CharData::smooth();
        let bad = Germ {
            branches: vec![Branch::new("a", s.clone()), Branch::new("b", s.clone()), Branch::new("c", s)],
            contact: vec![
                vec![Ext::Inf, Ext::int(3), Ext::int(2)],
                vec![Ext::int(3), Ext::Inf, Ext::int(3)],
                vec![Ext::int(2), Ext::int(3), Ext::Inf],
            ],
        };
        assert!(validate_germ(&bad).contains(&Violation::StrongTriangle { i: 0, j: 1, k: 2 }));
    }

    #[test]
    fn two_smooth_at_half_integer_contact_is_rejected_strictly() {
        let s = CharData::smooth();
        let g = Germ {
            branches: vec![Branch::new("a", s.clone()), Branch::new("b", s)],
            contact: vec![vec![Ext::Inf, Ext::frac(3, 2)], vec![Ext::frac(3, 2), Ext::Inf]],
        };
        assert!(validate_germ(&g).is_empty());
        assert_eq!(validate_germ_strict(&g).len(), 1);
    }

    #[test]
    fn balls() {
        let g = three_balls();
        let b22 = Ball::new(1, Ext::int(2));
        let b32 = Ball::new(2, Ext::int(2));
        let b1 = Ball::new(0, Ext::frac(5, 2));
        assert!(balls_intersect(&b22, &b32, &g));
        assert!(!balls_intersect(&b1, &b22, &g));
        assert_eq!(ball_cmp(&g.root_ball(), &b1, &g), BallOrder::Less);
        assert_eq!(ball_cmp(&b22, &b32, &g), BallOrder::Equal);
        assert_eq!(ball_cmp(&b1, &b22, &g), BallOrder::Incomparable);
        assert_eq!(g.canonical(&b32), b22);
        let h = ExternalBranch::transversal("l", &g);
        assert_eq!(dist_ball_branch(&b1, &h, &g), Ext::int(1));
        assert_eq!(chain_of_branch(&h, &g).balls, vec![g.root_ball()]);
    }
}
