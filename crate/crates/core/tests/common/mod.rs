//! Property checks shared by the proptest suite and the acceptance target.
//! Each check returns `Ok(true)` when it ran and held, `Ok(false)` when it
//! does not apply to the germ, and `Err` with a witness when it failed.

#![allow(dead_code)]

pub mod goldens;

use eggers::contact::{ball_cmp, validate_germ_strict, Ball, BallOrder, ExternalBranch, Germ};
use eggers::eggers::{
    build_tree, germ_from_tree, lojasiewicz, lojasiewicz_via_tangential, polar_invariants, q_of_ball,
    tangential_decomposition,
};
use eggers::ext::{qi, Ext, LowerExt, Q};
use eggers::polar::{analyze, is_morse, placement, PolarExponent};
use eggers::random::{random_germ, Bounds, RandomGerm};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

pub type Outcome = Result<bool, String>;

pub const PROPERTIES: [&str; 10] = [
    "ultrametric",
    "monotonicity",
    "tangential",
    "tree-roundtrip",
    "quotient-bound",
    "two-probe-max",
    "transversal-exponent",
    "unitangent-strictness",
    "sum-rule",
    "zero-multiplicity",
];

pub struct Case {
    pub seed: u64,
    pub rg: RandomGerm,
    pub probes: Vec<ExternalBranch>,
    pub pair: (ExternalBranch, ExternalBranch),
}

pub fn case(seed: u64) -> Case {
    let rg = random_germ(seed, Bounds::default()).expect("generator yields valid germs");
    let mut rng = ChaCha8Rng::seed_from_u64(seed.wrapping_mul(0x9e37_79b9_7f4a_7c15) ^ 1);
    let mut probes = vec![ExternalBranch::transversal("t", &rg.germ), rg.axis_x()];
    probes.extend((0..4).map(|_| rg.random_probe(&mut rng)));
    let pair = rg.transversal_pair(&mut rng);
    Case { seed, rg, probes, pair }
}

fn fail<T>(seed: u64, msg: String) -> Result<T, String> {
    Err(format!("seed {seed}: {msg}"))
}

fn transversal(h: &ExternalBranch) -> bool {
    h.contacts.iter().all(|d| *d == Ext::int(1))
}

fn ultrametric(c: &Case) -> Outcome {
    let g = &c.rg.germ;
    let r = g.r();
    for i in 0..r {
        if !g.d(i, i).is_inf() {
            return fail(c.seed, format!("d(f{i}, f{i}) is finite"));
        }
        for j in 0..r {
            if g.d(i, j) != g.d(j, i) {
                return fail(c.seed, format!("d not symmetric at ({i},{j})"));
            }
            if i != j && (g.d(i, j).is_inf() || *g.d(i, j) < Ext::int(1)) {
                return fail(c.seed, format!("d({i},{j}) = {} out of range", g.d(i, j)));
            }
            for k in 0..r {
                if *g.d(i, k) < Ext::min_of(g.d(i, j), g.d(j, k)) {
                    return fail(c.seed, format!("strong triangle fails on ({i},{j},{k})"));
                }
            }
        }
    }
    let v = validate_germ_strict(g);
    if !v.is_empty() {
        return fail(c.seed, format!("validation: {v:?}"));
    }
    Ok(true)
}

fn monotonicity(c: &Case) -> Outcome {
    let g = &c.rg.germ;
    let t = build_tree(g).map_err(|e| e.to_string())?;
    let black: Vec<(Ball, Q)> = t.black().map(|v| (v.ball.clone(), v.data.q.clone().expect("black vertex has q"))).collect();
    // Balls strictly inside each edge and on the trunk belong to T(f) too.
    let mut balls = black.clone();
    for e in &t.edges {
        let (a, b) = (&t.vertices[e.from], &t.vertices[e.to]);
        if let (Ext::Fin(da), Ext::Fin(db)) = (&a.data.d, &b.data.d) {
            let mid = Ball::new(b.ball.center, Ext::Fin((da + db) / qi(2)));
            balls.push((mid.clone(), q_of_ball(&mid, g).map_err(|e| e.to_string())?));
        }
    }
    if let Some((root, _)) = black.first() {
        if root.radius > Ext::int(1) {
            let trunk = Ball::new(root.center, Ext::int(1));
            balls.push((trunk.clone(), q_of_ball(&trunk, g).map_err(|e| e.to_string())?));
        }
    }
    for (a, qa) in &balls {
        for (b, qb) in &balls {
            if ball_cmp(a, b, g) == BallOrder::Less && qa >= qb {
                return fail(c.seed, format!("B({},{}) < B({},{}) but q {qa} >= {qb}", a.center, a.radius, b.center, b.radius));
            }
        }
    }
    Ok(!black.is_empty())
}

fn tangential(c: &Case) -> Outcome {
    let g = &c.rg.germ;
    if !g.is_singular() {
        return Ok(false);
    }
    let (a, b) = (lojasiewicz(g).map_err(|e| e.to_string())?, lojasiewicz_via_tangential(g).map_err(|e| e.to_string())?);
    if a != b {
        return fail(c.seed, format!("L0 = {a} but max M_i = {b}"));
    }
    Ok(true)
}

fn tree_roundtrip(c: &Case) -> Outcome {
    let g = &c.rg.germ;
    let back = germ_from_tree(&build_tree(g).map_err(|e| e.to_string())?).map_err(|e| e.to_string())?;
    if &back != g {
        return fail(c.seed, "germ read back from the tree differs".into());
    }
    Ok(true)
}

fn q0_f(g: &Germ) -> Result<LowerExt, String> {
    Ok(LowerExt::Fin(polar_invariants(g).map_err(|e| e.to_string())?.q0().clone()))
}

fn quotient_bound(c: &Case) -> Outcome {
    let g = &c.rg.germ;
    if !g.is_singular() {
        return Ok(false);
    }
    let q0 = q0_f(g)?;
    for h in &c.probes {
        let r = analyze(g, h).map_err(|e| e.to_string())?;
        if r.q0 > q0 {
            return fail(c.seed, format!("q0(f,{}) = {} exceeds q0(f) = {q0}", h.label, r.q0));
        }
    }
    Ok(true)
}

fn two_probe_max(c: &Case) -> Outcome {
    let g = &c.rg.germ;
    if !g.is_singular() || is_morse(g) {
        return Ok(false);
    }
    let (l, m) = &c.pair;
    let ql = analyze(g, l).map_err(|e| e.to_string())?.q0;
    let qm = analyze(g, m).map_err(|e| e.to_string())?.q0;
    let q0 = q0_f(g)?;
    if ql.clone().max(qm.clone()) != q0 {
        return fail(c.seed, format!("max(q0(f,λ) = {ql}, q0(f,μ) = {qm}) differs from q0(f) = {q0}"));
    }
    Ok(true)
}

fn transversal_exponent(c: &Case) -> Outcome {
    let g = &c.rg.germ;
    if !g.is_singular() {
        return Ok(false);
    }
    let l0 = lojasiewicz(g).map_err(|e| e.to_string())?;
    let mut ran = false;
    for h in c.probes.iter().filter(|h| transversal(h)) {
        ran = true;
        let r = analyze(g, h).map_err(|e| e.to_string())?;
        if r.tilde_l != l0 || r.l_on_polar != PolarExponent::Exact(l0.clone()) {
            return fail(c.seed, format!("transversal {}: tilde L0 = {}, L on polar = {:?}, L0 = {l0}", h.label, r.tilde_l, r.l_on_polar));
        }
    }
    Ok(ran)
}

fn unitangent_strictness(c: &Case) -> Outcome {
    let g = &c.rg.germ;
    if !g.is_singular() || tangential_decomposition(g).len() != 1 {
        return Ok(false);
    }
    let l0 = lojasiewicz(g).map_err(|e| e.to_string())?;
    for h in &c.probes {
        let r = analyze(g, h).map_err(|e| e.to_string())?;
        let ok = if transversal(h) {
            r.l_on_polar == PolarExponent::Exact(r.tilde_l.clone()) && r.tilde_l == l0
        } else {
            *r.l_on_polar.upper() <= r.tilde_l && r.tilde_l < l0
        };
        if !ok {
            return fail(c.seed, format!("{}: L on polar {:?}, tilde L0 {}, L0 {l0}", h.label, r.l_on_polar, r.tilde_l));
        }
    }
    Ok(true)
}

fn sum_rule(c: &Case) -> Outcome {
    let g = &c.rg.germ;
    if !g.is_singular() {
        return Ok(false);
    }
    for h in &c.probes {
        let r = analyze(g, h).map_err(|e| e.to_string())?;
        let total: i64 = r.entries.iter().map(|e| e.m).sum();
        let from_quotients: u64 = r.quotients.iter().map(|q| q.1).sum();
        let expect = r.placement.intersection_with_reduced(g) - qi(1);
        if qi(total) != expect || from_quotients as i64 != total {
            return fail(c.seed, format!("{}: Σ m = {total}, Σ m_q = {from_quotients}, (f,λ)₀ − 1 = {expect}", h.label));
        }
    }
    Ok(true)
}

fn zero_multiplicity(c: &Case) -> Outcome {
    let g = &c.rg.germ;
    if !g.is_singular() {
        return Ok(false);
    }
    let t = tangential_decomposition(g).len();
    for h in &c.probes {
        let p = placement(g, h).map_err(|e| e.to_string())?;
        let r = analyze(g, h).map_err(|e| e.to_string())?;
        let tangent = !transversal(h);
        for e in &r.entries {
            let predicted = e.ball.radius == Ext::int(1) && ((!tangent && t == 1) || (tangent && t == 2));
            if (e.m == 0) != predicted {
                return fail(
                    c.seed,
                    format!("{}: m(B({},{})) = {} with t(f) = {t}, top {:?}", h.label, e.ball.center, e.ball.radius, e.m, p.top()),
                );
            }
        }
    }
    Ok(true)
}

pub fn check(c: &Case, name: &str) -> Outcome {
    match name {
        "ultrametric" => ultrametric(c),
        "monotonicity" => monotonicity(c),
        "tangential" => tangential(c),
        "tree-roundtrip" => tree_roundtrip(c),
        "quotient-bound" => quotient_bound(c),
        "two-probe-max" => two_probe_max(c),
        "transversal-exponent" => transversal_exponent(c),
        "unitangent-strictness" => unitangent_strictness(c),
        "sum-rule" => sum_rule(c),
        "zero-multiplicity" => zero_multiplicity(c),
        other => panic!("unknown property {other}"),
    }
}
