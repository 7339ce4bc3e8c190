//! Eggers collection and tree of a germ, with per-ball decorations, the polar
//! invariants `Q(f)` and the Łojasiewicz exponent.

use std::collections::BTreeMap;

use num_traits::{One, Zero};

use crate::branch::{contact_exponent, CharData};
use crate::contact::{ball_cmp, Ball, BallOrder, Branch, Germ};
use crate::error::{Error, Result};
use crate::ext::{n_for, qu, Ext, Q};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum EdgeStyle {
    Solid,
    Discontinuous,
}

/// Decorations of a vertex. For white vertices (`d = inf`) `n` is 1, the
/// successor counts are 0 and `q`, `m` are absent.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct VertexData {
    pub d: Ext,
    pub char_set: Vec<Q>,
    pub nu: u64,
    pub n: u64,
    pub order: u64,
    pub t: usize,
    pub t1: usize,
    pub t2: usize,
    pub q: Option<Q>,
    pub m: Option<i64>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Vertex {
    pub ball: Ball,
    pub members: Vec<usize>,
    pub parent: Option<usize>,
    pub children: Vec<usize>,
    /// Branch index for white vertices.
    pub branch: Option<usize>,
    pub data: VertexData,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Edge {
    pub from: usize,
    pub to: usize,
    pub style: EdgeStyle,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EggersTree {
    /// Sorted by `(d, least member index)`; the root comes first.
    pub vertices: Vec<Vertex>,
    pub edges: Vec<Edge>,
    pub root: usize,
    pub labels: Vec<String>,
}

impl EggersTree {
    pub fn black(&self) -> impl Iterator<Item = &Vertex> {
        self.vertices.iter().filter(|v| v.branch.is_none())
    }

    pub fn solid_edges(&self) -> usize {
        self.edges.iter().filter(|e| e.style == EdgeStyle::Solid).count()
    }

    pub fn vertex_of(&self, b: &Ball) -> Option<usize> {
        self.vertices.iter().position(|v| v.ball == *b)
    }
}

fn sort_balls(balls: &mut Vec<Ball>) {
    balls.sort_by(|a, b| a.radius.cmp(&b.radius).then(a.center.cmp(&b.center)));
    balls.dedup();
}

/// `{B(f_i, f_j)} ∪ {B(f_i, d_ik)}` in canonical form, sorted upward.
pub fn build_collection(g: &Germ) -> Vec<Ball> {
    let mut out = Vec::new();
    for i in 0..g.r() {
        for j in 0..g.r() {
            out.push(g.canonical(&Ball::new(i, g.d(i, j).clone())));
        }
        for d in &g.char_of(i).contacts {
            out.push(g.canonical(&Ball::new(i, Ext::Fin(d.clone()))));
        }
    }
    sort_balls(&mut out);
    out
}

/// Finite balls of the collection.
pub fn eggers_balls(g: &Germ) -> Vec<Ball> {
    build_collection(g).into_iter().filter(Ball::is_finite).collect()
}

/// Largest ball of `coll` strictly below `b`.
fn predecessor<'a>(coll: &'a [Ball], b: &Ball, g: &Germ) -> Option<&'a Ball> {
    coll.iter().filter(|c| ball_cmp(c, b, g) == BallOrder::Less).max_by(|x, y| x.radius.cmp(&y.radius))
}

pub fn char_of_ball(b: &Ball, g: &Germ) -> Vec<Q> {
    let ch = g.char_of(b.center);
    match &b.radius {
        Ext::Inf => ch.contacts.clone(),
        Ext::Fin(r) => ch.contacts_below(r).to_vec(),
    }
}

pub fn nu_n_of_ball(b: &Ball, g: &Germ) -> Result<(u64, u64)> {
    let ch = g.char_of(b.center);
    let r = b.radius.fin().ok_or_else(|| Error::BallOutsideFamily("infinite diameter".into()))?;
    let nu = ch.nu_of_prefix(ch.count_below(r));
    Ok((nu, n_for(r, nu)))
}

pub fn order_of_ball(b: &Ball, g: &Germ) -> u64 {
    g.members(b).iter().map(|&i| g.ord(i)).sum()
}

/// `(t, t1, t2)`: successor classes split by whether `d(B)` is a
/// characteristic contact of the successor.
pub fn successor_counts(b: &Ball, g: &Germ) -> Result<(usize, usize, usize)> {
    let members = g.members(b);
    if members.is_empty() {
        return Err(Error::EmptyBall);
    }
    let Ext::Fin(r) = &b.radius else {
        return Ok((0, 0, 0));
    };
    let classes = g.classes_above(&members, &b.radius);
    let t2 = classes.iter().filter(|c| g.char_of(c[0]).contacts.contains(r)).count();
    Ok((classes.len(), classes.len() - t2, t2))
}

pub fn tangential_decomposition(g: &Germ) -> Vec<Vec<usize>> {
    let all: Vec<usize> = (0..g.r()).collect();
    g.classes_above(&all, &Ext::int(1))
}

fn q_in(coll: &[Ball], b: &Ball, g: &Germ) -> Result<Q> {
    let r = b.radius.fin().ok_or_else(|| Error::BallOutsideFamily("infinite diameter".into()))?;
    let members = g.members(b);
    if members.is_empty() {
        return Err(Error::BallOutsideFamily(format!("B({},{}) holds no branch", b.center, b.radius)));
    }
    let root = &coll[0];
    if b.radius <= root.radius {
        return Ok(r * qu(g.ord_total()));
    }
    let pred = predecessor(coll, b, g).expect("the root lies below every higher ball");
    let o: u64 = members.iter().map(|&i| g.ord(i)).sum();
    Ok(q_in(coll, pred, g)? + qu(o) * (r - pred.radius.expect_fin()))
}

/// Polar invariant `q_f(B)` of a finite ball meeting the germ, including balls
/// inside edges and on the trunk below the root.
pub fn q_of_ball(b: &Ball, g: &Germ) -> Result<Q> {
    q_in(&build_collection(g), b, g)
}

pub fn m_of_ball(b: &Ball, g: &Germ) -> Result<i64> {
    let (nu, n) = nu_n_of_ball(b, g)?;
    let (_, t1, t2) = successor_counts(b, g)?;
    Ok(nu as i64 * (t1 as i64 + n as i64 * t2 as i64 - 1))
}

/// Contact exponent `c.ex.(B)` of a finite ball.
pub fn contact_exponent_of_ball(b: &Ball, g: &Germ) -> Result<Q> {
    let r = b.radius.fin().ok_or_else(|| Error::BallOutsideFamily("infinite diameter".into()))?;
    let ch = g.char_of(b.center);
    let k = ch.count_below(r);
    contact_exponent(&ch.contacts[..k], &ch.n_seq[..k], r)
}

/// `Q(f)` as `(value, multiplicity)` pairs sorted by value.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PolarInvariants {
    pub values: Vec<(Q, u64)>,
}

impl PolarInvariants {
    pub fn q0(&self) -> &Q {
        &self.values.last().expect("singular germs have polar invariants").0
    }
}

pub fn polar_invariants(g: &Germ) -> Result<PolarInvariants> {
    if !g.is_singular() {
        return Err(Error::NonsingularGerm);
    }
    let coll = build_collection(g);
    let mut acc: BTreeMap<Q, u64> = BTreeMap::new();
    for b in coll.iter().filter(|b| b.is_finite()) {
        let m = m_of_ball(b, g)?;
        if m <= 0 {
            return Err(Error::Mismatch(format!("m_f(B({},{})) = {m} on an Eggers ball", b.center, b.radius)));
        }
        *acc.entry(q_in(&coll, b, g)?).or_default() += m as u64;
    }
    Ok(PolarInvariants { values: acc.into_iter().collect() })
}

/// `L₀(f) = q₀(f) − 1`, and `0` for nonsingular germs.
pub fn lojasiewicz(g: &Germ) -> Result<Q> {
    if !g.is_singular() {
        return Ok(Q::zero());
    }
    Ok(polar_invariants(g)?.q0() - Q::one())
}

/// One tangential component with its exponent and `M_i = L₀(f^(i)) + ord f − ord f^(i)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Component {
    pub branches: Vec<usize>,
    pub ord: u64,
    pub l0: Q,
    pub m: Q,
}

pub fn tangential_components(g: &Germ) -> Result<Vec<Component>> {
    let total = qu(g.ord_total());
    tangential_decomposition(g)
        .into_iter()
        .map(|idx| {
            let sub = g.sub_germ(&idx);
            let l0 = lojasiewicz(&sub)?;
            let ord = sub.ord_total();
            let m = &l0 + &total - qu(ord);
            Ok(Component { branches: idx, ord, l0, m })
        })
        .collect()
}

/// Maximum of `M_i` over tangential components, each computed on its own
/// sub-germ tree.
pub fn lojasiewicz_via_tangential(g: &Germ) -> Result<Q> {
    if !g.is_singular() {
        return Err(Error::NonsingularGerm);
    }
    Ok(tangential_components(g)?.into_iter().map(|c| c.m).max().expect("germ has a branch"))
}

pub fn build_tree(g: &Germ) -> Result<EggersTree> {
    let coll = build_collection(g);
    let mut vertices: Vec<Vertex> = Vec::with_capacity(coll.len());
    for (k, b) in coll.iter().enumerate() {
        let members = g.members(b);
        let parent = if k == 0 {
            None
        } else {
            let p = predecessor(&coll, b, g)
                .ok_or_else(|| Error::Mismatch(format!("ball B({},{}) has no predecessor", b.center, b.radius)))?;
            coll.iter().position(|c| c == p)
        };
        let char_set = char_of_ball(b, g);
        let order = members.iter().map(|&i| g.ord(i)).sum();
        let data = match &b.radius {
            Ext::Inf => VertexData {
                d: Ext::Inf,
                nu: g.ord(b.center),
                char_set,
                n: 1,
                order,
                t: 0,
                t1: 0,
                t2: 0,
                q: None,
                m: None,
            },
            Ext::Fin(_) => {
                let (nu, n) = nu_n_of_ball(b, g)?;
                let (t, t1, t2) = successor_counts(b, g)?;
                VertexData {
                    d: b.radius.clone(),
                    char_set,
                    nu,
                    n,
                    order,
                    t,
                    t1,
                    t2,
                    q: Some(q_in(&coll, b, g)?),
                    m: Some(nu as i64 * (t1 as i64 + n as i64 * t2 as i64 - 1)),
                }
            }
        };
        let branch = if b.radius.is_inf() { Some(b.center) } else { None };
        vertices.push(Vertex { ball: b.clone(), members, parent, children: Vec::new(), branch, data });
    }
    let mut edges = Vec::new();
    for k in 1..vertices.len() {
        let p = vertices[k].parent.unwrap();
        vertices[p].children.push(k);
        let solid = match &vertices[p].data.d {
            Ext::Fin(dp) => vertices[k].data.char_set.contains(dp),
            Ext::Inf => false,
        };
        edges.push(Edge { from: p, to: k, style: if solid { EdgeStyle::Solid } else { EdgeStyle::Discontinuous } });
    }
    for (k, v) in vertices.iter().enumerate() {
        let solid = edges.iter().filter(|e| e.from == k && e.style == EdgeStyle::Solid).count();
        if v.children.len() != v.data.t || solid != v.data.t2 {
            return Err(Error::Mismatch(format!(
                "vertex {k}: {} children / {solid} solid edges but t = {}, t2 = {}",
                v.children.len(),
                v.data.t,
                v.data.t2
            )));
        }
    }
    Ok(EggersTree { vertices, edges, root: 0, labels: g.branches.iter().map(|b| b.label.clone()).collect() })
}

/// Reads the germ back from the tree: characteristic contacts from solid
/// edges along each root-to-leaf path, contacts from the deepest common vertex.
pub fn germ_from_tree(t: &EggersTree) -> Result<Germ> {
    let bad = |m: String| Err(Error::MalformedTree(m));
    let nv = t.vertices.len();
    if nv == 0 || t.root >= nv || t.vertices[t.root].parent.is_some() {
        return bad("missing root".into());
    }
    let mut parent: Vec<Option<(usize, EdgeStyle)>> = vec![None; nv];
    for e in &t.edges {
        if e.from >= nv || e.to >= nv || parent[e.to].is_some() || e.to == t.root {
            return bad(format!("edge {} -> {} is not a tree edge", e.from, e.to));
        }
        if t.vertices[e.from].data.d >= t.vertices[e.to].data.d {
            return bad(format!("diameter does not increase along {} -> {}", e.from, e.to));
        }
        parent[e.to] = Some((e.from, e.style));
    }
    let r = t.labels.len();
    let mut leaf_of = vec![None; r];
    for (k, v) in t.vertices.iter().enumerate() {
        if k != t.root && parent[k].is_none() {
            return bad(format!("vertex {k} is detached"));
        }
        let has_children = t.edges.iter().any(|e| e.from == k);
        match v.branch {
            Some(b) if b < r && v.data.d.is_inf() && !has_children && leaf_of[b].is_none() => leaf_of[b] = Some(k),
            Some(_) => return bad(format!("white vertex {k} is not a labeled leaf")),
            None if v.data.d.is_inf() || !has_children => return bad(format!("black vertex {k} is a leaf")),
            None => {}
        }
    }
    let paths: Vec<Vec<usize>> = leaf_of
        .iter()
        .map(|l| {
            let mut p = vec![l.ok_or_else(|| Error::MalformedTree("branch without white vertex".into()))?];
            let mut guard = 0;
            while let Some((q, _)) = parent[*p.last().unwrap()] {
                p.push(q);
                guard += 1;
                if guard > nv {
                    return Err(Error::MalformedTree("cycle".into()));
                }
            }
            p.reverse();
            Ok(p)
        })
        .collect::<Result<_>>()?;
    let mut branches = Vec::with_capacity(r);
    for (i, path) in paths.iter().enumerate() {
        let mut contacts = Vec::new();
        for w in path.windows(2) {
            if let Some((_, EdgeStyle::Solid)) = parent[w[1]] {
                contacts.push(t.vertices[w[0]].data.d.expect_fin().clone());
            }
        }
        let ch = CharData::from_contacts(contacts).map_err(|e| Error::MalformedTree(e.to_string()))?;
        branches.push(Branch::new(t.labels[i].clone(), ch));
    }
    let mut contact = vec![vec![Ext::Inf; r]; r];
    for i in 0..r {
        for j in i + 1..r {
            let common = paths[i].iter().zip(&paths[j]).take_while(|(a, b)| a == b).last();
            let Some((&v, _)) = common else {
                return bad("branches share no root".into());
            };
            contact[i][j] = t.vertices[v].data.d.clone();
            contact[j][i] = contact[i][j].clone();
        }
    }
    Germ::new(branches, contact).map_err(|e| Error::MalformedTree(e.to_string()))
}

/// Graphviz rendering: black vertices carry `d(B)`, white vertices the branch
/// label, solid and dashed edges mirror the edge styles.
pub fn to_dot(t: &EggersTree) -> String {
    let mut s = String::from("digraph eggers {\n  rankdir=BT;\n");
    for (k, v) in t.vertices.iter().enumerate() {
        match v.branch {
            Some(b) => s.push_str(&format!(
                "  v{k} [shape=circle, style=solid, fillcolor=white, label=\"{}\"];\n",
                t.labels[b].replace('"', "\\\"")
            )),
            None => s.push_str(&format!(
                "  v{k} [shape=circle, style=filled, fillcolor=black, fontcolor=white, label=\"{}\"];\n",
                v.data.d
            )),
        }
    }
    for e in &t.edges {
        let style = match e.style {
            EdgeStyle::Solid => "solid",
            EdgeStyle::Discontinuous => "dashed",
        };
        s.push_str(&format!("  v{} -> v{} [style={style}];\n", e.from, e.to));
    }
    s.push_str("}\n");
    s
}
