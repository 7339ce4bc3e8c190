//! Worked examples with their hand-derived values. Each check compares the
//! rendered value with the expected one, so a failure prints both.

use eggers::contact::Germ;
use eggers::doc::GermDocument;
use eggers::eggers::{build_tree, eggers_balls, polar_invariants, lojasiewicz, q_of_ball, tangential_components, EggersTree};
use eggers::ext::{qi, LowerExt};
use eggers::newton::tree::{germ_from_text, PolyGerm};
use eggers::newton::verify::{cross_verify, lambda_x};
use eggers::polar::{analyze, special_verdict, DirectionStatus, PolarExponent, PolarReport};
use eggers::random::random_product;

pub struct Check {
    pub name: String,
    pub expected: String,
    pub actual: String,
}

impl Check {
    pub fn pass(&self) -> bool {
        self.expected == self.actual
    }
}

#[derive(Default)]
pub struct Checks(pub Vec<Check>);

impl Checks {
    fn eq(&mut self, name: impl Into<String>, actual: impl ToString, expected: impl ToString) {
        self.0.push(Check { name: name.into(), expected: expected.to_string(), actual: actual.to_string() });
    }

    fn holds(&mut self, name: impl Into<String>, actual: bool) {
        self.eq(name, actual, true);
    }

    pub fn failures(&self) -> Vec<String> {
        self.0
            .iter()
            .filter(|c| !c.pass())
            .map(|c| format!("{}: got {}, expected {}", c.name, c.actual, c.expected))
            .collect()
    }
}

pub const THREE_BALLS_POLY: &str = "(Y^5 + X^2)*Y*(Y^2 - X^4)";
pub const CUSP_TRIPLE: &str = "Y^7 + X*Y^4 + X^2*Y^2 - 2*X^3";
pub const X_IS_BRANCH: &str = "X*(Y^2 + X)";
pub const TACNODE: &str = "Y^4 - X^2";
pub const TACNODE_PRIME: &str = "Y^4 - X^2 + X^2*Y";
pub const MORSE: &str = "X*Y";

pub const THREE_BALLS_ABSTRACT: &str = r#"{
  "abstract": {
    "branches": [
      {"label": "f1", "semigroup": [2, 5]},
      {"label": "f2", "smooth": true},
      {"label": "f3", "smooth": true},
      {"label": "f4", "smooth": true}
    ],
    "contacts": [
      {"pair": ["f1", "f2"], "value": "1"},
      {"pair": ["f1", "f3"], "value": "1"},
      {"pair": ["f1", "f4"], "value": "1"},
      {"pair": ["f2", "f3"], "value": "2"},
      {"pair": ["f2", "f4"], "value": "2"},
      {"pair": ["f3", "f4"], "value": "2"}
    ]
  }
}"#;

pub const GOLDEN_POLYS: [&str; 6] = [THREE_BALLS_POLY, CUSP_TRIPLE, X_IS_BRANCH, TACNODE, TACNODE_PRIME, MORSE];

fn poly(text: &str) -> PolyGerm {
    germ_from_text(text).unwrap_or_else(|e| panic!("{text}: {e}"))
}

fn along_x(pg: &PolyGerm) -> PolarReport {
    analyze(&pg.germ, &lambda_x(pg)).expect("probe X analyzes")
}

fn list<T: ToString>(v: impl IntoIterator<Item = T>) -> String {
    let v: Vec<String> = v.into_iter().map(|x| x.to_string()).collect();
    format!("({})", v.join(","))
}

fn quotients(v: &[(eggers::ext::Q, u64)]) -> String {
    let v: Vec<String> = v.iter().map(|(q, m)| format!("{q}:{m}")).collect();
    format!("{{{}}}", v.join(", "))
}

/// Finite vertices as root, then by member count: `𝓑, B₁ = B(f₁, 5/2), B₂ = B(f₂, 2)`.
fn three_balls_order(t: &EggersTree) -> Vec<usize> {
    let mut inner: Vec<usize> =
        (0..t.vertices.len()).filter(|&k| k != t.root && t.vertices[k].branch.is_none()).collect();
    inner.sort_by_key(|&k| t.vertices[k].members.len());
    std::iter::once(t.root).chain(inner).collect()
}

fn three_balls(c: &mut Checks, form: &str, g: &Germ) {
    let t = build_tree(g).expect("tree");
    let balls = three_balls_order(&t);
    c.eq(format!("{form}: finite balls"), balls.len(), 3);
    c.eq(format!("{form}: radii"), list(balls.iter().map(|&k| &t.vertices[k].data.d)), "(1,5/2,2)");
    c.eq(format!("{form}: O_f"), list(balls.iter().map(|&k| t.vertices[k].data.order)), "(5,2,3)");
    c.eq(
        format!("{form}: q_f"),
        list(balls.iter().map(|&k| t.vertices[k].data.q.clone().expect("finite"))),
        "(5,8,8)",
    );
    c.eq(format!("{form}: m_f"), list(balls.iter().map(|&k| t.vertices[k].data.m.expect("finite"))), "(1,1,2)");
    c.eq(format!("{form}: Q(f)"), quotients(&polar_invariants(g).expect("singular").values), "{5:1, 8:3}");
    c.eq(format!("{form}: L0"), lojasiewicz(g).expect("L0"), 7);
    c.eq(format!("{form}: solid edges"), t.solid_edges(), 1);
    let v = special_verdict(g).expect("singular");
    c.holds(format!("{form}: no special direction"), v.status == DirectionStatus::NoSpecialDirection);
    c.eq(format!("{form}: M_i"), list(tangential_components(g).expect("components").iter().map(|k| &k.m)), "(7,7)");
}

pub fn criterion_1() -> Checks {
    let mut c = Checks::default();
    let abs = GermDocument::from_json(THREE_BALLS_ABSTRACT).and_then(|d| d.resolve()).expect("abstract document");
    three_balls(&mut c, "abstract", &abs.germ);
    three_balls(&mut c, "poly", &poly(THREE_BALLS_POLY).germ);
    c
}

pub fn criterion_2() -> Checks {
    let mut c = Checks::default();
    let pg = poly(CUSP_TRIPLE);
    let g = &pg.germ;
    let e = eggers_balls(g);
    c.eq("E(f) size", e.len(), 1);
    c.eq("q_f(B1)", q_of_ball(&e[0], g).expect("q"), 6);
    c.eq("L0", lojasiewicz(g).expect("L0"), 5);
    let r = along_x(&pg);
    c.holds("L on polar exact 4", r.l_on_polar == PolarExponent::Exact(qi(4)));
    c.eq("q0(f,X)", &r.q0, 3);
    c.eq("per-ball multiplicities", list(r.entries.iter().map(|e| e.m)), "(3,3)");
    c.eq("total", r.entries.iter().map(|e| e.m).sum::<i64>(), 6);
    c.eq("Q(f,X)", quotients(&r.quotients), "{7/3:3, 3:3}");
    c.holds("L0(f) > L0(f|polar)", r.relations.l0 > *r.l_on_polar.upper());
    c.holds("L0(f|polar) > q0(f,X) - 1", LowerExt::Fin(r.l_on_polar.upper().clone() + qi(1)) > r.q0);
    c
}

pub fn criterion_3() -> Checks {
    let mut c = Checks::default();
    let pg = poly(X_IS_BRANCH);
    let g = &pg.germ;
    c.holds("X is a branch", pg.x_branch.is_some());
    let e = eggers_balls(g);
    c.eq("q_f on E(f)", list(e.iter().map(|b| q_of_ball(b, g).expect("q"))), "(4)");
    c.eq("L0", lojasiewicz(g).expect("L0"), 3);
    let r = along_x(&pg);
    c.holds("L on polar exact 2", r.l_on_polar == PolarExponent::Exact(qi(2)));
    c.eq("q0(f,X)", &r.q0, 2);
    c
}

pub fn criterion_4() -> Checks {
    let mut c = Checks::default();
    let (a, b) = (poly(TACNODE), poly(TACNODE_PRIME));
    c.holds("identical germ data", a.germ == b.germ);
    for (name, pg) in [("f", &a), ("f'", &b)] {
        c.eq(format!("{name}: L0"), lojasiewicz(&pg.germ).expect("L0"), 3);
        let r = along_x(pg);
        c.eq(format!("{name}: q0(f,X)"), &r.q0, 2);
        c.eq(format!("{name}: tilde L0"), &r.tilde_l, 2);
        c.holds(
            format!("{name}: class dependent with upper 2"),
            matches!(&r.l_on_polar, PolarExponent::ClassDependent { upper, .. } if *upper == qi(2)),
        );
        c.eq(format!("{name}: ledger total"), cross_verify(pg).expect("verify").ledger_total(), 3);
    }
    c
}

pub fn criterion_5() -> Checks {
    let mut c = Checks::default();
    let pg = poly(MORSE);
    let r = along_x(&pg);
    c.eq("Q(f,X)", quotients(&r.quotients), "{}");
    c.holds("q0(f,X) = -inf", r.q0 == LowerExt::NegInf);
    c.eq("q0(f)", polar_invariants(&pg.germ).expect("singular").q0(), 2);
    c.eq("L0", lojasiewicz(&pg.germ).expect("L0"), 1);
    c.holds("L on polar exact 1", r.l_on_polar == PolarExponent::Exact(qi(1)));
    c
}

/// `cross_verify` on the golden polynomials and on `products` fuzzed ones.
pub fn criterion_7(products: u64) -> Checks {
    let mut c = Checks::default();
    let texts = GOLDEN_POLYS.iter().map(|s| s.to_string()).chain((0..products).map(random_product));
    for text in texts {
        let pg = poly(&text);
        match cross_verify(&pg) {
            Ok(rep) => {
                let failed: Vec<&str> = rep.checks.iter().filter(|k| !k.pass).map(|k| k.name.as_str()).collect();
                c.eq(format!("{text}: failed checks"), failed.join(","), "");
                c.eq(format!("{text}: ledger total"), rep.ledger_total(), pg.p.saturating_sub(1));
            }
            Err(e) => c.eq(format!("{text}: cross_verify"), e, "ok"),
        }
    }
    c
}
