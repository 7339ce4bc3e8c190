//! The Newton-algorithm track tree of a reduced polynomial, the branches it
//! exhibits, and the ledger of derivative roots per face.

use num_traits::{One, ToPrimitive, Zero};

use super::bipoly::BiPoly;
use super::polygon::{face_stats, polygon, shift_by, Face, FaceStats, Polygon, Puiseux, TrackPoly};
use super::upoly::{rational_nth_root, UPoly};
use crate::branch::{alpha_of_kappa, char_diagram, gen_char_to_char, GenCharSeq};
use crate::contact::{Ball, Branch, Germ};
use crate::error::{Error, Result};
use crate::ext::{denom_u64, fmt_q, qu, Ext, Q};

/// Track expansions deeper than this indicate a repeated factor.
const MAX_DEPTH: usize = 64;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Step {
    pub theta: Q,
    pub nbar: u64,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Child {
    /// Coefficient `a` of the new term `a·X^θ`.
    pub a: Q,
    /// Multiplicity of `a` as a root of the face form.
    pub mult: usize,
    pub node: usize,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NodeFace {
    pub face: Face,
    pub stats: FaceStats,
    pub nbar: u64,
    /// `W` with `in(f_φ,S)(1,Y) = Y^k·W(Y^n̄)`.
    pub w_reduced: UPoly,
    /// Leaves leaving through a simple root class.
    pub leaves: Vec<usize>,
    pub children: Vec<Child>,
    /// Derivative roots attached to the face: `N(φ)·(t − 1)`.
    pub count: u64,
    /// How many of them are of the second kind.
    pub second_kind: u64,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TrackNode {
    pub phi: Puiseux,
    pub n: u64,
    pub steps: Vec<Step>,
    pub fphi: TrackPoly,
    pub polygon: Polygon,
    pub faces: Vec<NodeFace>,
    /// Parent node and the index of the face leading here.
    pub parent: Option<(usize, usize)>,
    /// Leaf index when `φ` itself is a root of `f`.
    pub exact_root: Option<usize>,
    /// Input factors still present below this node.
    pub factors: Vec<usize>,
}

impl TrackNode {
    pub fn deg(&self) -> Option<&Q> {
        self.phi.keys().next_back()
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Leaf {
    pub node: usize,
    /// Face of `node` the branch leaves through; `None` for an exact root.
    pub face: Option<usize>,
    pub n: u64,
    pub gen: GenCharSeq,
    pub factor: Option<usize>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NewtonTree {
    pub nodes: Vec<TrackNode>,
    pub leaves: Vec<Leaf>,
}

fn gen_of(n: u64, steps: &[Step]) -> GenCharSeq {
    let mut b = vec![n];
    for s in steps.iter().filter(|s| s.nbar > 1) {
        let v = &s.theta * qu(n);
        b.push(v.to_integer().to_u64().expect("exponent fits"));
    }
    GenCharSeq::new(b)
}

fn describe_phi(phi: &Puiseux) -> String {
    if phi.is_empty() {
        return "0".into();
    }
    phi.iter().map(|(e, c)| format!("{}*X^{}", fmt_q(c), fmt_q(e))).collect::<Vec<_>>().join(" + ")
}

/// `p(Y^k)`.
fn compose_power(p: &UPoly, k: usize) -> UPoly {
    let mut c = vec![Q::zero(); (p.c.len().max(1) - 1) * k + 1];
    for (i, v) in p.c.iter().enumerate() {
        c[i * k] = v.clone();
    }
    UPoly::new(c)
}

struct Builder<'a> {
    f: &'a BiPoly,
    factors: &'a [BiPoly],
    nodes: Vec<TrackNode>,
    leaves: Vec<Leaf>,
}

impl Builder<'_> {
    fn node(&mut self, phi: Puiseux, n: u64, steps: Vec<Step>, parent: Option<(usize, usize)>, factors: Vec<usize>) -> Result<usize> {
        if steps.len() > MAX_DEPTH {
            return Err(Error::NotReduced("track expansion does not terminate".into()));
        }
        let fphi = shift_by(self.f, &phi);
        let ftr: Vec<(usize, TrackPoly)> = factors.iter().map(|&k| (k, shift_by(&self.factors[k], &phi))).collect();
        let deg = phi.keys().next_back().cloned();
        let poly = polygon(&fphi, deg.as_ref())?;
        let idx = self.nodes.len();
        self.nodes.push(TrackNode {
            phi: phi.clone(),
            n,
            steps: steps.clone(),
            fphi: fphi.clone(),
            polygon: poly.clone(),
            faces: Vec::new(),
            parent,
            exact_root: None,
            factors: factors.clone(),
        });

        match fphi.delta_y() {
            0 => {}
            1 => {
                let owner = ftr.iter().find(|(_, t)| t.delta_y() > 0).map(|(k, _)| *k);
                let leaf = self.push_leaf(Leaf { node: idx, face: None, n, gen: gen_of(n, &steps), factor: owner });
                self.nodes[idx].exact_root = Some(leaf);
            }
            _ => {
                return Err(Error::NotReduced(format!("repeated root Y = {}", describe_phi(&phi))));
            }
        }

        let last = poly.faces.len().saturating_sub(1);
        for (si, face) in poly.faces.iter().enumerate() {
            let stats = face_stats(&fphi, face)?;
            let theta = face.incl.clone();
            let nbar = denom_u64(&(&theta * qu(n)));
            let low = face.end.1.to_integer().to_usize().expect("small degree");
            let span = face.len2.to_integer().to_usize().expect("small degree");
            for (i, v) in stats.w.c.iter().enumerate() {
                if !v.is_zero() && (i < low || (i - low) % nbar as usize != 0) {
                    return Err(Error::Mismatch(format!("face form of incl {} is not a polynomial in Y^{nbar}", fmt_q(&theta))));
                }
            }
            let w_reduced = UPoly::new((0..=span / nbar as usize).map(|j| stats.w.coeff(low + j * nbar as usize)).collect());
            let count = n * (stats.t as u64 - 1);
            let second_kind = if si == last && face.eps == -1 {
                stats.w.deriv().ord().map(|o| o as u64).unwrap_or(0) * n
            } else {
                0
            };
            let where_ = || format!("incl {} at track {}", fmt_q(&theta), describe_phi(&phi));
            let dec = w_reduced.squarefree_decomposition();

            let factor_forms: Vec<(usize, UPoly)> = ftr.iter().map(|(k, t)| (*k, t.initial_w(&theta).at_x1())).collect();

            let mut leaves = Vec::new();
            if let Some(p1) = dec.first().filter(|p| !p.is_constant()) {
                let roots = compose_power(p1, nbar as usize);
                let mut owners: Vec<Option<usize>> = Vec::new();
                for (k, form) in &factor_forms {
                    let nonzero = form.shift_down(form.ord().unwrap_or(0));
                    let shared = UPoly::gcd(&nonzero.squarefree_part(), &roots).deg().unwrap_or(0);
                    owners.extend(std::iter::repeat(Some(*k)).take(shared / nbar as usize));
                }
                let simple = p1.deg().unwrap();
                if !self.factors.is_empty() && owners.len() != simple {
                    return Err(Error::Mismatch(format!("factor forms explain {} of {simple} branches on {}", owners.len(), where_())));
                }
                owners.resize(simple, None);
                let mut st = steps.clone();
                st.push(Step { theta: theta.clone(), nbar });
                for owner in owners {
                    let gen = gen_of(n * nbar, &st);
                    leaves.push(self.push_leaf(Leaf { node: idx, face: Some(si), n: n * nbar, gen, factor: owner }));
                }
            }

            let mut pending = Vec::new();
            for (k, pk) in dec.iter().enumerate().skip(1) {
                if pk.is_constant() {
                    continue;
                }
                let roots = pk.rational_roots();
                if roots.len() != pk.deg().unwrap() {
                    return Err(Error::IrrationalTrackRoot { face: where_(), poly: upoly_in_y(pk, nbar) });
                }
                for c in roots {
                    let a = rational_nth_root(&c, nbar).ok_or_else(|| Error::IrrationalTrackRoot {
                        face: where_(),
                        poly: format!("Y^{nbar} - {}", fmt_q(&c)),
                    })?;
                    pending.push((a, k + 1));
                }
            }
            self.nodes[idx].faces.push(NodeFace {
                face: face.clone(),
                stats,
                nbar,
                w_reduced,
                leaves,
                children: Vec::new(),
                count,
                second_kind,
            });
            for (a, mult) in pending {
                let mut child_phi = phi.clone();
                child_phi.insert(theta.clone(), a.clone());
                let child_factors: Vec<usize> =
                    factor_forms.iter().filter(|(_, form)| form.eval(&a).is_zero()).map(|(k, _)| *k).collect();
                let mut st = steps.clone();
                st.push(Step { theta: theta.clone(), nbar });
                let child = self.node(child_phi, n * nbar, st, Some((idx, si)), child_factors)?;
                self.nodes[idx].faces[si].children.push(Child { a, mult, node: child });
            }
        }
        Ok(idx)
    }

    fn push_leaf(&mut self, l: Leaf) -> usize {
        self.leaves.push(l);
        self.leaves.len() - 1
    }
}

fn upoly_in_y(p: &UPoly, nbar: u64) -> String {
    let mut f = BiPoly::zero();
    for (i, c) in p.c.iter().enumerate() {
        f.add_term(0, (i as u64 * nbar) as u32, c.clone());
    }
    f.to_string()
}

/// Unfolds the track tree of `f`, which must satisfy `f(0, Y) ≠ 0`.
/// `factors` multiply to `f` up to a unit and are used to attribute branches.
pub fn track_tree(f: &BiPoly, factors: &[BiPoly]) -> Result<NewtonTree> {
    if f.at_x0().is_zero() {
        return Err(Error::NotReduced("X divides the polynomial".into()));
    }
    let mut b = Builder { f, factors, nodes: Vec::new(), leaves: Vec::new() };
    b.node(Puiseux::new(), 1, Vec::new(), None, (0..factors.len()).collect())?;
    Ok(NewtonTree { nodes: b.nodes, leaves: b.leaves })
}

impl NewtonTree {
    /// `(node, exit inclination)` from the root down to the node where the
    /// leaf leaves the tree.
    fn exits_of_node(&self, node: usize, last: Ext) -> Vec<(usize, Ext)> {
        let mut out = vec![(node, last)];
        let mut cur = node;
        while let Some((p, s)) = self.nodes[cur].parent {
            out.push((p, Ext::Fin(self.nodes[p].faces[s].face.incl.clone())));
            cur = p;
        }
        out.reverse();
        out
    }

    pub fn leaf_exits(&self, leaf: usize) -> Vec<(usize, Ext)> {
        let l = &self.leaves[leaf];
        let last = match l.face {
            Some(s) => Ext::Fin(self.nodes[l.node].faces[s].face.incl.clone()),
            None => Ext::Inf,
        };
        self.exits_of_node(l.node, last)
    }

    /// Exits of the Puiseux polynomial `φ` of `node`, which ends there.
    pub fn node_exits(&self, node: usize) -> Vec<(usize, Ext)> {
        self.exits_of_node(node, Ext::Inf)
    }

    pub fn node_gen(&self, node: usize) -> GenCharSeq {
        gen_of(self.nodes[node].n, &self.nodes[node].steps)
    }

    pub fn faces(&self) -> impl Iterator<Item = (usize, usize, &NodeFace)> {
        self.nodes.iter().enumerate().flat_map(|(i, n)| n.faces.iter().enumerate().map(move |(s, f)| (i, s, f)))
    }
}

/// Order of coincidence of two root systems given by their exit lists.
pub fn coincidence(a: &[(usize, Ext)], b: &[(usize, Ext)]) -> Ext {
    let mut k = 0;
    while k + 1 < a.len() && k + 1 < b.len() && a[k + 1].0 == b[k + 1].0 {
        k += 1;
    }
    Ext::min_of(&a[k].1, &b[k].1)
}

/// `Σ_i ord(y_i − z)` over the conjugates `y_i` of a root with generalized
/// characteristic `g`, for a fixed `z` coinciding with it to order `kappa`.
pub fn conjugate_sum(g: &GenCharSeq, kappa: &Ext) -> Ext {
    let Ext::Fin(k) = kappa else { return Ext::Inf };
    let e = g.gcds();
    let b0 = qu(g.b[0]);
    let mut s = k.clone();
    for i in 1..g.b.len() {
        let x = qu(g.b[i]) / &b0;
        s += qu(e[i - 1] - e[i]) * if x < *k { x } else { k.clone() };
    }
    Ext::Fin(s)
}

/// `(A, B)₀` for root systems with generalized characteristics `ga`, `gb`
/// and coincidence `kappa`; both conjugate sums are compared.
pub fn pair_intersection(ga: &GenCharSeq, gb: &GenCharSeq, kappa: &Ext) -> Result<Ext> {
    let ab = conjugate_sum(ga, kappa);
    let ba = conjugate_sum(gb, kappa);
    let (Ext::Fin(x), Ext::Fin(y)) = (&ab, &ba) else { return Ok(Ext::Inf) };
    let v = x * qu(gb.b[0]);
    if v != y * qu(ga.b[0]) {
        return Err(Error::Mismatch(format!("asymmetric intersection {} vs {}", fmt_q(&v), fmt_q(&(y * qu(ga.b[0]))))));
    }
    Ok(Ext::Fin(v))
}

/// A reduced polynomial read as a germ.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PolyGerm {
    pub poly: BiPoly,
    pub factors: Vec<BiPoly>,
    pub delta_x: u32,
    /// `f̃ = f / X^δ`.
    pub stripped: BiPoly,
    /// `ord f̃(0, Y)`.
    pub p: u64,
    pub tree: Option<NewtonTree>,
    /// Germ index of the branch `X`, if it is one.
    pub x_branch: Option<usize>,
    /// Germ index of each leaf.
    pub leaf_branch: Vec<usize>,
    /// Input factor of each germ branch.
    pub branch_factor: Vec<Option<usize>>,
    pub germ: Germ,
}

pub fn germ_from_poly(f: &BiPoly) -> Result<PolyGerm> {
    germ_from_factors(f, &[f.clone()])
}

/// Parses `text` and attributes branches to its top-level product factors.
pub fn germ_from_text(text: &str) -> Result<PolyGerm> {
    let (f, factors) = super::bipoly::parse_poly_factors(text)?;
    if factors.is_empty() {
        return germ_from_poly(&f);
    }
    germ_from_factors(&f, &factors)
}

/// A common factor through the origin of a part with its own derivative or
/// of two parts. Cheap certificates settle almost every pair, so the full
/// gcd only runs on small inputs.
fn repeated_factor(parts: &[BiPoly]) -> Option<BiPoly> {
    let shared = |a: &BiPoly, b: &BiPoly| {
        if BiPoly::coprime_in_y(a, b) {
            return None;
        }
        let h = BiPoly::gcd(a, b);
        (!h.is_constant() && h.constant_term().is_zero()).then_some(h)
    };
    for (i, a) in parts.iter().enumerate() {
        if let Some(h) = shared(a, &a.deriv_y()) {
            return Some(h);
        }
        for b in &parts[i + 1..] {
            if let Some(h) = shared(a, b) {
                return Some(h);
            }
        }
    }
    None
}

/// As [`germ_from_poly`], attributing branches to the given factors of `f`.
pub fn germ_from_factors(f: &BiPoly, factors: &[BiPoly]) -> Result<PolyGerm> {
    if f.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    if !f.constant_term().is_zero() {
        return Err(Error::Document("the polynomial does not vanish at the origin".into()));
    }
    let delta_x = f.delta_x();
    if delta_x >= 2 {
        return Err(Error::NotReduced(format!("X^{delta_x} divides the polynomial")));
    }
    let stripped = f.div_x_pow(delta_x);
    let p = stripped.at_x0().ord().expect("X was stripped") as u64;
    let x_owner = factors.iter().position(|g| g.delta_x() > 0);
    let stripped_factors: Vec<BiPoly> = factors.iter().map(|g| g.div_x_pow(g.delta_x())).collect();
    if let Some(h) = repeated_factor(&stripped_factors) {
        return Err(Error::NotReduced(format!("repeated factor {h}")));
    }
    let tree = if p > 0 { Some(track_tree(&stripped, &stripped_factors)?) } else { None };

    let mut branches = Vec::new();
    let mut branch_factor = Vec::new();
    let mut gens: Vec<Option<GenCharSeq>> = Vec::new();
    let x_branch = if delta_x == 1 {
        branches.push(Branch::new("", crate::branch::CharData::smooth()));
        branch_factor.push(x_owner);
        gens.push(None);
        Some(0)
    } else {
        None
    };
    let mut leaf_branch = Vec::new();
    if let Some(t) = &tree {
        for l in &t.leaves {
            let (c, check) = gen_char_to_char(&l.gen)?;
            if !check.holds {
                return Err(Error::Mismatch(format!("order check fails for generalized characteristic {:?}", l.gen.b)));
            }
            leaf_branch.push(branches.len());
            branches.push(Branch::new("", c));
            branch_factor.push(l.factor);
            gens.push(Some(l.gen.clone()));
        }
    }
    for (i, b) in branches.iter_mut().enumerate() {
        b.label = format!("f{}", i + 1);
    }
    let r = branches.len();
    let mut contact = vec![vec![Ext::Inf; r]; r];
    for i in 0..r {
        for j in i + 1..r {
            let d = match (&gens[i], &gens[j]) {
                (None, Some(g)) | (Some(g), None) => Ext::Fin(Q::new(g.b[0].into(), g.ord().into())),
                (Some(ga), Some(gb)) => {
                    let t = tree.as_ref().unwrap();
                    let li = leaf_branch.iter().position(|&x| x == i).unwrap();
                    let lj = leaf_branch.iter().position(|&x| x == j).unwrap();
                    let k = coincidence(&t.leaf_exits(li), &t.leaf_exits(lj));
                    match pair_intersection(ga, gb, &k)? {
                        Ext::Fin(v) => Ext::Fin(v / qu(ga.ord() * gb.ord())),
                        Ext::Inf => return Err(Error::NotReduced("two branches coincide".into())),
                    }
                }
                (None, None) => unreachable!("only one branch is X"),
            };
            contact[i][j] = d.clone();
            contact[j][i] = d;
        }
    }
    let germ = Germ::new(branches, contact)?;
    Ok(PolyGerm { poly: f.clone(), factors: factors.to_vec(), delta_x, stripped, p, tree, x_branch, leaf_branch, branch_factor, germ })
}

/// A probe branch seen from the germ: its contacts with every branch.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Probe {
    pub name: String,
    pub contacts: Vec<Ext>,
}

impl PolyGerm {
    fn leaf_gen(&self, i: usize) -> Option<(usize, &GenCharSeq)> {
        let t = self.tree.as_ref()?;
        let l = self.leaf_branch.iter().position(|&x| x == i)?;
        Some((l, &t.leaves[l].gen))
    }

    /// Contacts with the axis `X = 0`.
    pub fn probe_x(&self) -> Probe {
        let contacts = (0..self.germ.r())
            .map(|i| match self.leaf_gen(i) {
                Some((_, g)) => Ext::Fin(Q::new(g.b[0].into(), g.ord().into())),
                None => Ext::Inf,
            })
            .collect();
        Probe { name: "X".into(), contacts }
    }

    /// Contacts with the branch `[φ]` of a track node; node 0 gives `Y`.
    pub fn probe_node(&self, node: usize) -> Result<Probe> {
        let t = self.tree.as_ref().ok_or(Error::EmptyEggers)?;
        let gp = t.node_gen(node);
        let ord_p = gp.ord();
        let ex = t.node_exits(node);
        let mut contacts = Vec::new();
        for i in 0..self.germ.r() {
            contacts.push(match self.leaf_gen(i) {
                None => Ext::Fin(Q::new(gp.b[0].into(), ord_p.into())),
                Some((l, g)) => {
                    let k = coincidence(&t.leaf_exits(l), &ex);
                    match pair_intersection(g, &gp, &k)? {
                        Ext::Fin(v) => Ext::Fin(v / qu(g.ord() * ord_p)),
                        Ext::Inf => Ext::Inf,
                    }
                }
            });
        }
        let name = if node == 0 { "Y".to_string() } else { format!("[{}]", describe_phi(&t.nodes[node].phi)) };
        Ok(Probe { name, contacts })
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LedgerEntry {
    pub node: usize,
    pub face: usize,
    pub phi: String,
    pub incl: Q,
    pub count: u64,
    pub second_kind: u64,
    /// Center branch the ball is measured from (`X`, `Y` or `[φ]`).
    pub probe: String,
    pub radius: Q,
    /// The ball of the germ, or `None` when no branch lies that close.
    pub ball: Option<Ball>,
}

impl LedgerEntry {
    pub fn bound_only(&self) -> bool {
        self.second_kind > 0
    }
}

/// Derivative roots per face with the ball each group is attached to.
pub fn derivative_ledger(pg: &PolyGerm) -> Result<Vec<LedgerEntry>> {
    let Some(t) = &pg.tree else { return Ok(Vec::new()) };
    let mut out = Vec::new();
    for (node, s, nf) in t.faces() {
        let incl = nf.face.incl.clone();
        let (probe, radius) = if node == 0 {
            if incl.is_one() {
                (None, Q::one())
            } else if incl < Q::one() {
                (Some(pg.probe_x()), Q::one() / &incl)
            } else {
                (Some(pg.probe_node(0)?), incl.clone())
            }
        } else {
            let diag = char_diagram(&t.node_gen(node))?;
            (Some(pg.probe_node(node)?), &diag.d_axis * alpha_of_kappa(&diag, &incl)?)
        };
        let (name, ball) = match &probe {
            None => ("X".to_string(), Some(pg.germ.root_ball())),
            Some(pr) => {
                let r = Ext::Fin(radius.clone());
                let ball = pr.contacts.iter().position(|c| *c >= r).map(|c| Ball::new(c, r.clone()));
                (pr.name.clone(), ball)
            }
        };
        out.push(LedgerEntry {
            node,
            face: s,
            phi: describe_phi(&t.nodes[node].phi),
            incl,
            count: nf.count,
            second_kind: nf.second_kind,
            probe: name,
            radius,
            ball,
        });
    }
    Ok(out)
}

/// Branch data of a polynomial defining a single branch at the origin.
pub fn extract_branch(f: &BiPoly) -> Result<crate::branch::CharData> {
    let pg = germ_from_poly(f).map_err(|e| match e {
        Error::IrrationalTrackRoot { face, poly } => {
            Error::UnsupportedBranchShape(format!("irrational track root on {face} ({poly})"))
        }
        other => other,
    })?;
    if pg.germ.r() != 1 {
        return Err(Error::UnsupportedBranchShape(format!(
            "{} branches over the complex numbers; the polynomial is reducible at the origin",
            pg.germ.r()
        )));
    }
    Ok(pg.germ.char_of(0).clone())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ext::{qf, qi};
    use crate::newton::bipoly::parse_poly;

    fn pg(s: &str) -> PolyGerm {
        germ_from_poly(&parse_poly(s).unwrap()).unwrap()
    }

    #[test]
    fn cusp_triple_branches_and_ledger() {
        let g = pg("Y^7 + X*Y^4 + X^2*Y^2 - 2*X^3");
        assert_eq!(g.germ.r(), 3);
        assert!((0..3).all(|i| g.germ.char_of(i).is_smooth()));
        assert_eq!(g.germ.d(0, 1), &Ext::int(2));
        let led = derivative_ledger(&g).unwrap();
        let counts: Vec<u64> = led.iter().map(|e| e.count).collect();
        assert_eq!(counts, vec![3, 3]);
        assert_eq!(led[0].radius, qi(3));
        assert_eq!(led[1].radius, qi(2));
        assert!(led[1].bound_only() && !led[0].bound_only());
    }

    #[test]
    fn rational_double_root_track() {
        let g = pg("(Y^2 - X)^2 - X^5");
        assert_eq!(g.germ.r(), 2);
        assert_eq!(g.germ.d(0, 1), &Ext::int(5));
        let led = derivative_ledger(&g).unwrap();
        assert_eq!(led.iter().map(|e| e.count).sum::<u64>(), 3);
        assert_eq!(led[1].radius, qi(5));
        assert_eq!(led[1].count, 2);
    }

    #[test]
    fn cusp_and_axes() {
        let g = pg("(Y^5 + X^2)*Y*(Y^2 - X^4)");
        assert_eq!(g.germ.r(), 4);
        let c1 = g.germ.branches.iter().find(|b| !b.char.is_smooth()).unwrap();
        assert_eq!(c1.char.contacts, vec![qf(5, 2)]);
        assert_eq!(g.germ.ord_total(), 5);
        let g = pg("X*(Y^2 + X)");
        assert_eq!((g.x_branch, g.germ.r()), (Some(0), 2));
        assert_eq!(g.germ.d(0, 1), &Ext::int(2));
    }

    #[test]
    fn errors() {
        let p = |s: &str| germ_from_poly(&parse_poly(s).unwrap());
        assert!(matches!(p("(Y - X)^2"), Err(Error::NotReduced(_))));
        assert!(matches!(p("X^2*Y"), Err(Error::NotReduced(_))));
        assert!(matches!(p("Y + 1"), Err(Error::Document(_))));
        assert!(matches!(p("(Y^2 - 2*X)^2 - X^5"), Err(Error::IrrationalTrackRoot { .. })));
        assert!(matches!(
            extract_branch(&parse_poly("Y^2 - 2*X^2").unwrap()),
            Err(Error::UnsupportedBranchShape(_))
        ));
        assert!(extract_branch(&parse_poly("Y - X^2").unwrap()).unwrap().is_smooth());
        assert_eq!(extract_branch(&parse_poly("Y^5 + X^2").unwrap()).unwrap().contacts, vec![qf(5, 2)]);
    }
}
