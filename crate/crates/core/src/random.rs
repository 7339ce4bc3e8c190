//! Seeded random germs and probes.
//!
//! Germs are read off a randomly grown system of Puiseux roots: every branch
//! is a root system with a generalized characteristic sequence, and contacts
//! come from the orders of coincidence between them. The result is realizable
//! by construction, so it passes the strict validation.

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::branch::{gen_char_to_char, semigroup_from_char, GenCharSeq};
use crate::contact::{Branch, ExternalBranch, Germ};
use crate::error::{Error, Result};
use crate::ext::{denom_u64, qu, Ext, Q};
use crate::newton::tree::{coincidence, pair_intersection};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Bounds {
    pub max_branches: usize,
    /// Characteristic pairs per branch.
    pub max_pairs: usize,
    /// Largest semigroup generator.
    pub max_beta: u64,
}

impl Default for Bounds {
    fn default() -> Self {
        Bounds { max_branches: 5, max_pairs: 2, max_beta: 60 }
    }
}

type Exits = Vec<(usize, Ext)>;

#[derive(Debug, Clone)]
struct Node {
    n: u64,
    deg: Q,
    pairs: usize,
    /// Exits of the ancestors; the node's own exit is appended per use.
    prefix: Exits,
    /// Inclinations already used at this node.
    faces: Vec<Q>,
}

/// A random germ together with the root systems it was read from.
#[derive(Debug, Clone)]
pub struct RandomGerm {
    pub germ: Germ,
    /// Per branch: generalized characteristic and exits, `None` for `X`.
    roots: Vec<Option<(GenCharSeq, Exits)>>,
    nodes: Vec<Node>,
}

struct Grower<'a> {
    rng: &'a mut ChaCha8Rng,
    bounds: Bounds,
    nodes: Vec<Node>,
    leaves: Vec<(GenCharSeq, Exits)>,
    budget: usize,
}

impl Grower<'_> {
    fn pick_theta(&mut self, node: usize) -> Q {
        let (n, deg, pairs) = (self.nodes[node].n, self.nodes[node].deg.clone(), self.nodes[node].pairs);
        loop {
            let m = if pairs < self.bounds.max_pairs { *[1u64, 1, 2, 2, 3].choose(self.rng).unwrap() } else { 1 };
            let j = self.rng.gen_range(1..=3 * m);
            let theta = &deg + Q::new((j as i64).into(), ((n * m) as i64).into());
            if !self.nodes[node].faces.contains(&theta) {
                return theta;
            }
        }
    }

    fn grow(&mut self, node: usize, depth: usize) {
        let (n, pairs) = (self.nodes[node].n, self.nodes[node].pairs);
        if depth > 0 && self.budget > 0 && self.rng.gen_bool(0.15) {
            self.budget -= 1;
            let mut ex = self.nodes[node].prefix.clone();
            ex.push((node, Ext::Inf));
            self.leaves.push((gen_of(n, &self.steps_to(node)), ex));
        }
        let faces = if depth == 0 { self.rng.gen_range(1..=2) } else { self.rng.gen_range(1..=2).min(self.budget.max(1)) };
        for _ in 0..faces {
            if self.budget == 0 {
                break;
            }
            let theta = self.pick_theta(node);
            self.nodes[node].faces.push(theta.clone());
            let nbar = denom_u64(&(&theta * qu(n)));
            let classes = self.rng.gen_range(1..=2);
            for _ in 0..classes {
                if self.budget == 0 {
                    break;
                }
                let mut prefix = self.nodes[node].prefix.clone();
                prefix.push((node, Ext::Fin(theta.clone())));
                let deeper = depth < 3 && self.budget >= 2 && self.rng.gen_bool(0.35);
                if deeper {
                    let child = self.nodes.len();
                    self.nodes.push(Node {
                        n: n * nbar,
                        deg: theta.clone(),
                        pairs: pairs + (nbar > 1) as usize,
                        prefix: prefix.clone(),
                        faces: Vec::new(),
                    });
                    self.grow(child, depth + 1);
                } else {
                    self.budget -= 1;
                    let mut steps = self.steps_to(node);
                    steps.push((theta.clone(), nbar));
                    self.leaves.push((gen_of(n * nbar, &steps), prefix));
                }
            }
        }
    }

    /// `(θ, n̄)` along the path to `node`.
    fn steps_to(&self, node: usize) -> Vec<(Q, u64)> {
        let mut out = Vec::new();
        let mut n = 1u64;
        for (_, e) in &self.nodes[node].prefix {
            let theta = e.expect_fin().clone();
            let nbar = denom_u64(&(&theta * qu(n)));
            n *= nbar;
            out.push((theta, nbar));
        }
        out
    }
}

fn gen_of(n: u64, steps: &[(Q, u64)]) -> GenCharSeq {
    let mut b = vec![n];
    for (theta, nbar) in steps {
        if *nbar > 1 {
            b.push(num_traits::ToPrimitive::to_u64(&(theta * qu(n)).to_integer()).expect("small exponent"));
        }
    }
    GenCharSeq::new(b)
}

fn contact_of(a: &(GenCharSeq, Exits), b: &(GenCharSeq, Exits)) -> Result<Ext> {
    let k = coincidence(&a.1, &b.1);
    Ok(match pair_intersection(&a.0, &b.0, &k)? {
        Ext::Fin(v) => Ext::Fin(v / qu(a.0.ord() * b.0.ord())),
        Ext::Inf => Ext::Inf,
    })
}

fn axis_contact(g: &GenCharSeq) -> Ext {
    Ext::Fin(Q::new(g.b[0].into(), g.ord().into()))
}

/// A valid germ determined by `seed`.
pub fn random_germ(seed: u64, bounds: Bounds) -> Result<RandomGerm> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    loop {
        let mut g = Grower {
            rng: &mut rng,
            bounds,
            nodes: vec![Node { n: 1, deg: Q::from_integer(0.into()), pairs: 0, prefix: Vec::new(), faces: Vec::new() }],
            leaves: Vec::new(),
            budget: 0,
        };
        g.budget = g.rng.gen_range(1..=bounds.max_branches.max(1));
        let with_x = g.budget < bounds.max_branches && g.rng.gen_bool(0.2);
        g.grow(0, 0);
        let nodes = g.nodes;
        let mut roots: Vec<Option<(GenCharSeq, Exits)>> = g.leaves.into_iter().map(Some).collect();
        if with_x {
            roots.push(None);
        }
        roots.shuffle(&mut rng);
        let mut branches = Vec::new();
        let mut fits = true;
        for (i, r) in roots.iter().enumerate() {
            let char = match r {
                Some((gen, _)) => gen_char_to_char(gen)?.0,
                None => crate::branch::CharData::smooth(),
            };
            let sg = semigroup_from_char(&char)?;
            fits &= sg.betas.iter().all(|&b| b <= bounds.max_beta);
            branches.push(Branch::new(format!("f{}", i + 1), char));
        }
        if !fits {
            continue;
        }
        let r = roots.len();
        let mut contact = vec![vec![Ext::Inf; r]; r];
        for i in 0..r {
            for j in i + 1..r {
                let d = match (&roots[i], &roots[j]) {
                    (Some(a), Some(b)) => contact_of(a, b)?,
                    (Some(a), None) | (None, Some(a)) => axis_contact(&a.0),
                    (None, None) => unreachable!(),
                };
                contact[i][j] = d.clone();
                contact[j][i] = d;
            }
        }
        let germ = Germ::new(branches, contact)?;
        return Ok(RandomGerm { germ, roots, nodes });
    }
}

impl RandomGerm {
    /// The axis `X = 0`, which may be a branch of the germ.
    pub fn axis_x(&self) -> ExternalBranch {
        if let Some(i) = self.roots.iter().position(Option::is_none) {
            return ExternalBranch::of_branch(&self.germ, i);
        }
        let c = self.roots.iter().map(|r| axis_contact(&r.as_ref().unwrap().0)).collect();
        ExternalBranch::smooth("X", c)
    }

    /// A random smooth regular parameter: transversal, the `X` axis, a smooth
    /// branch of the germ, or a smooth root system leaving the tree at a
    /// random place.
    pub fn random_probe(&self, rng: &mut ChaCha8Rng) -> ExternalBranch {
        match rng.gen_range(0..4) {
            0 => ExternalBranch::transversal("λ", &self.germ),
            1 => self.axis_x(),
            2 => {
                let smooth: Vec<usize> = (0..self.germ.r()).filter(|&i| self.germ.char_of(i).is_smooth()).collect();
                match smooth.choose(rng) {
                    Some(&i) => ExternalBranch::of_branch(&self.germ, i),
                    None => self.axis_x(),
                }
            }
            _ => self.series_probe(rng),
        }
    }

    fn series_probe(&self, rng: &mut ChaCha8Rng) -> ExternalBranch {
        // Smooth roots either leave the root as `X^{1/m}` or continue a node
        // without fractional exponents by an integer power.
        let integral: Vec<usize> = (0..self.nodes.len()).filter(|&v| self.nodes[v].n == 1).collect();
        let v = *integral.choose(rng).unwrap();
        if v == 0 && rng.gen_bool(0.5) {
            return self.probe_at(0, Q::new(1.into(), rng.gen_range(1..=3i64).into()));
        }
        let base = self.nodes[v].deg.floor().to_integer() + 1;
        self.probe_at(v, Q::from_integer(base + rng.gen_range(0..=2i64)))
    }

    /// The smooth root leaving node `v` at inclination `theta` with a
    /// coefficient no branch uses. `v` has no fractional exponents, and
    /// `theta` is an integer or, at the root, `1/m`.
    fn probe_at(&self, v: usize, theta: Q) -> ExternalBranch {
        let gen = if theta.is_integer() {
            GenCharSeq::new(vec![1])
        } else {
            let m = num_traits::ToPrimitive::to_u64(theta.denom()).unwrap();
            GenCharSeq::new(vec![m, 1])
        };
        let mut ex = self.nodes[v].prefix.clone();
        ex.push((v, Ext::Fin(theta)));
        let probe = (gen, ex);
        let contacts = self
            .roots
            .iter()
            .map(|r| match r {
                Some(a) => contact_of(a, &probe).expect("symmetric by construction"),
                None => axis_contact(&probe.0),
            })
            .collect();
        ExternalBranch::smooth("λ", contacts)
    }

    /// Two smooth probes with different tangents: one tangent to `X = 0` and
    /// one tangent to a line `Y = cX`.
    pub fn transversal_pair(&self, rng: &mut ChaCha8Rng) -> (ExternalBranch, ExternalBranch) {
        let first = match rng.gen_range(0..3) {
            0 => self.axis_x(),
            1 => self.probe_at(0, Q::new(1.into(), rng.gen_range(2..=3i64).into())),
            _ => ExternalBranch::transversal("λ", &self.germ),
        };
        let second = self.probe_at(0, Q::from_integer(rng.gen_range(1..=3i64).into()));
        (first, ExternalBranch { label: "μ".into(), ..second })
    }
}

const SHAPES: usize = 6;

/// `v - c·w^k` with tidy signs and exponents.
fn minus_term(v: &str, c: i64, w: &str, k: u64) -> String {
    let pow = if k == 1 { w.to_string() } else { format!("{w}^{k}") };
    let sign = if c < 0 { "+" } else { "-" };
    match c.abs() {
        1 => format!("{v} {sign} {pow}"),
        a => format!("{v} {sign} {a}*{pow}"),
    }
}

/// One factor of a certified shape: an irreducible curve whose Newton
/// process only meets rational multiple roots.
fn shape(rng: &mut ChaCha8Rng) -> String {
    let c = *[1i64, -1, 2, -2, 3].choose(rng).unwrap();
    match rng.gen_range(0..SHAPES) {
        0 => format!("({})", minus_term("Y", c, "X", rng.gen_range(1..=4))),
        1 => format!("({})", minus_term("X", c, "Y", rng.gen_range(2..=4))),
        2 | 3 => {
            let (a, b) = loop {
                let (a, b) = (rng.gen_range(2..=5u64), rng.gen_range(2..=9u64));
                if crate::ext::gcd_u64(a, b) == 1 {
                    break (a, b);
                }
            };
            // Shifting the root by a smooth series keeps the shape.
            if rng.gen_bool(0.5) {
                format!("(({})^{a} - X^{b})", minus_term("Y", c, "X", rng.gen_range(1..=3)))
            } else {
                format!("({})", minus_term(&format!("Y^{a}"), c, "X", b))
            }
        }
        4 => "((Y^2 - X^3)^2 - X^5*Y)".to_string(),
        _ => "X".to_string(),
    }
}

/// A reduced product of two to four certified shapes, as polynomial text.
/// Deterministic in `seed`; draws that are not reduced or leave rational
/// arithmetic are skipped.
pub fn random_product(seed: u64) -> String {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    loop {
        let k = rng.gen_range(2..=4);
        let text = (0..k).map(|_| shape(&mut rng)).collect::<Vec<_>>().join("*");
        if crate::newton::tree::germ_from_text(&text).is_ok() {
            return text;
        }
    }
}

/// Checks a bound triple before use.
pub fn check_bounds(b: &Bounds) -> Result<()> {
    if b.max_branches == 0 || b.max_beta < 2 {
        return Err(Error::Document("bounds need at least one branch and max_beta ≥ 2".into()));
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::contact::{validate_external, validate_germ_strict};

    #[test]
    fn deterministic_and_valid() {
        let a = random_germ(2, Bounds::default()).unwrap();
        let b = random_germ(2, Bounds::default()).unwrap();
        assert_eq!(a.germ, b.germ);
        let mut rng = ChaCha8Rng::seed_from_u64(9);
        for seed in 0..200 {
            let g = random_germ(seed, Bounds { max_branches: 3, ..Bounds::default() }).unwrap();
            assert!(g.germ.r() <= 3);
            assert!(validate_germ_strict(&g.germ).is_empty(), "seed {seed}");
            for _ in 0..3 {
                let p = g.random_probe(&mut rng);
                validate_external(&g.germ, &p).unwrap();
            }
            let (l, m) = g.transversal_pair(&mut rng);
            validate_external(&g.germ, &l).unwrap();
            validate_external(&g.germ, &m).unwrap();
        }
    }

    #[test]
    fn products_parse_and_repeat() {
        for seed in 0..5 {
            let t = random_product(seed);
            assert_eq!(t, random_product(seed));
            assert!(crate::newton::tree::germ_from_text(&t).is_ok(), "{t}");
        }
    }
}
