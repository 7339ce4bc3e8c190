//! Cross-checks between the symbolic pipeline and the combinatorial one.

use std::collections::BTreeMap;

use num_traits::{One, Zero};

use super::bipoly::BiPoly;
use super::polygon::TrackPoly;
use super::resultant::intersection_mult;
use super::tree::{derivative_ledger, LedgerEntry, PolyGerm};
use crate::contact::{chain_of_branch, Ball, ExternalBranch, Germ};
use crate::eggers::{build_tree, successor_counts};
use crate::error::{Error, Result};
use crate::ext::{fmt_q, qu, Ext, Q};
use crate::polar::{placement, polar_entries, q_via_position};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Check {
    pub name: String,
    pub pass: bool,
    pub detail: String,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BallCount {
    pub ball: Ball,
    pub ledger: u64,
    pub combinatorial: i64,
    /// Some roots counted here are of the second kind, whose exact ball is
    /// not determined by the equisingularity class.
    pub bound_only: bool,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct VerifyReport {
    pub checks: Vec<Check>,
    pub ledger: Vec<LedgerEntry>,
    pub balls: Vec<BallCount>,
    /// Shears used by the resultant computations, by pair.
    pub shears: Vec<(String, u64)>,
}

impl VerifyReport {
    fn push(&mut self, name: &str, pass: bool, detail: impl Into<String>) {
        self.checks.push(Check { name: name.into(), pass, detail: detail.into() });
    }

    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.pass)
    }

    pub fn ledger_total(&self) -> u64 {
        self.ledger.iter().map(|e| e.count).sum()
    }

    pub fn into_result(self) -> Result<VerifyReport> {
        if self.passed() {
            return Ok(self);
        }
        let failed: Vec<String> = self.checks.iter().filter(|c| !c.pass).map(|c| format!("{}: {}", c.name, c.detail)).collect();
        Err(Error::Mismatch(failed.join("; ")))
    }
}

/// The axis `X = 0` as a probe of the germ.
pub fn lambda_x(pg: &PolyGerm) -> ExternalBranch {
    match pg.x_branch {
        Some(i) => ExternalBranch::of_branch(&pg.germ, i),
        None => ExternalBranch::smooth("X", pg.probe_x().contacts),
    }
}

fn ball_name(g: &Germ, b: &Ball) -> String {
    format!("B({},{})", g.branches[b.center].label, b.radius)
}

/// Distinct nonzero roots of `in(1, Y)` and whether `X`, `Y` divide the form.
fn weighted_form_stats(f: &BiPoly, theta: &Q) -> (usize, bool, bool) {
    let form = TrackPoly::from(f).initial_w(theta);
    let w = form.at_x1();
    let nz = w.shift_down(w.ord().unwrap_or(0)).distinct_roots();
    let ex = form.terms.keys().all(|k| k.0 > Q::zero());
    let ey = form.terms.keys().all(|k| k.1 > 0);
    (nz, ex, ey)
}

/// Runs every cross-check with `λ = X`.
pub fn cross_verify(pg: &PolyGerm) -> Result<VerifyReport> {
    let g = &pg.germ;
    let mut rep = VerifyReport { checks: Vec::new(), ledger: derivative_ledger(pg)?, balls: Vec::new(), shears: Vec::new() };

    let p = pg.p;
    let total = rep.ledger_total();
    if p > 0 {
        rep.push("ledger-total", total == p - 1, format!("ledger {total}, ord f̃(0,Y) − 1 = {}", p - 1));
    }

    let lam = lambda_x(pg);
    let pl = placement(g, &lam)?;
    let entries = polar_entries(&pl, g)?;
    let msum: i64 = entries.iter().map(|e| e.m).sum();
    rep.push("sum-rule", msum == p as i64 - 1, format!("Σ m = {msum}, (f̃,X)₀ − 1 = {}", p as i64 - 1));

    // Ledger against per-ball multiplicities.
    let mut per_ball: BTreeMap<Ball, (u64, bool)> = BTreeMap::new();
    let mut unresolved = Vec::new();
    for e in &rep.ledger {
        match &e.ball {
            Some(b) => {
                let v = per_ball.entry(b.clone()).or_default();
                v.0 += e.count;
                v.1 |= e.bound_only();
            }
            None if e.count > 0 => unresolved.push(format!("{} roots at {} radius {}", e.count, e.probe, fmt_q(&e.radius))),
            None => {}
        }
    }
    if !unresolved.is_empty() {
        rep.push("ledger-balls", false, unresolved.join(", "));
    }
    let eligible: Vec<&Ball> = entries.iter().map(|e| &e.ball).collect();
    let stray: Vec<String> =
        per_ball.iter().filter(|(b, v)| v.0 > 0 && !eligible.contains(b)).map(|(b, _)| ball_name(g, b)).collect();
    rep.push("ledger-eligible", stray.is_empty(), if stray.is_empty() { "all ledger balls eligible".to_string() } else { stray.join(", ") });
    let mut exact_ok = true;
    let mut details = Vec::new();
    for e in &entries {
        let (ledger, bound) = per_ball.get(&e.ball).cloned().unwrap_or((0, false));
        if !bound && ledger as i64 != e.m {
            exact_ok = false;
        }
        details.push(format!("{}: {} vs {}{}", ball_name(g, &e.ball), ledger, e.m, if bound { " (bound-only)" } else { "" }));
        rep.balls.push(BallCount { ball: e.ball.clone(), ledger, combinatorial: e.m, bound_only: bound });
    }
    rep.push("per-ball", exact_ok, details.join(", "));

    // The chain K̄_f(X) read off the polygon.
    if let Some(t) = &pg.tree {
        let root = &t.nodes[0];
        let mut incls: Vec<Ext> = root.polygon.faces.iter().map(|s| Ext::Fin(s.incl.clone())).collect();
        if root.fphi.delta_y() > 0 {
            incls.push(Ext::Inf);
        }
        let one = Ext::int(1);
        let px = pg.probe_x();
        let ball_x = |r: Q| -> Option<Ball> {
            let r = Ext::Fin(r);
            px.contacts.iter().position(|c| *c >= r).map(|c| Ball::new(c, r))
        };
        let inv = |e: &Ext| Q::one() / e.expect_fin();
        let chain = chain_of_branch(&lam, g);
        let maxi = incls.iter().max().cloned().unwrap_or(Ext::Inf);
        let mini = incls.iter().min().cloned().unwrap_or(Ext::Inf);
        let want_min = if maxi < one { ball_x(inv(&maxi)) } else { Some(g.root_ball()) };
        let want_max = match pg.x_branch {
            Some(i) => Some(Ball::new(i, Ext::Inf)),
            None if mini < one => ball_x(inv(&mini)),
            None => Some(g.root_ball()),
        };
        let mut want: Vec<Ball> =
            incls.iter().filter(|e| **e < one).filter_map(|e| ball_x(inv(e))).collect();
        if maxi >= one {
            want.push(g.root_ball());
        }
        if let Some(i) = pg.x_branch {
            want.push(Ball::new(i, Ext::Inf));
        }
        want.sort_by(|a, b| a.radius.cmp(&b.radius).then(a.center.cmp(&b.center)));
        want.dedup();
        let show = |b: &Option<Ball>| b.as_ref().map(|b| ball_name(g, b)).unwrap_or_else(|| "none".into());
        rep.push(
            "chain-min",
            want_min.as_ref() == Some(chain.min()),
            format!("polygon {} vs contacts {}", show(&want_min), ball_name(g, chain.min())),
        );
        rep.push(
            "chain-max",
            want_max.as_ref() == Some(chain.max()),
            format!("polygon {} vs contacts {}", show(&want_max), ball_name(g, chain.max())),
        );
        rep.push("chain-members", want == chain.balls, format!("{} balls", chain.balls.len()));
    }

    // Resultants between the input factors against the tree's contacts.
    let owned: Vec<usize> = (0..pg.factors.len()).filter(|k| pg.branch_factor.contains(&Some(*k))).collect();
    let mut pair_ok = true;
    let mut pair_detail = Vec::new();
    for (ai, &a) in owned.iter().enumerate() {
        for &b in &owned[ai + 1..] {
            let im = intersection_mult(&pg.factors[a], &pg.factors[b]);
            let mut sum = Q::zero();
            for i in (0..g.r()).filter(|&i| pg.branch_factor[i] == Some(a)) {
                for j in (0..g.r()).filter(|&j| pg.branch_factor[j] == Some(b)) {
                    sum += g.d(i, j).expect_fin() * qu(g.ord(i) * g.ord(j));
                }
            }
            let ok = im.value.map(|v| qu(v) == sum).unwrap_or(false);
            pair_ok &= ok;
            pair_detail.push(format!("({},{}) {:?} vs {}", a + 1, b + 1, im.value, fmt_q(&sum)));
            rep.shears.push((format!("factors {},{}", a + 1, b + 1), im.shear));
        }
    }
    if !pair_detail.is_empty() {
        rep.push("factor-resultants", pair_ok, pair_detail.join(", "));
    }
    if pg.branch_factor.iter().any(Option::is_none) {
        rep.push("factor-attribution", false, "some branch belongs to no input factor");
    }

    let ord = pg.poly.ord().unwrap_or(0) as u64;
    rep.push("order", ord == g.ord_total(), format!("ord f = {ord}, Σ ord f_i = {}", g.ord_total()));

    if pg.x_branch.is_none() {
        let q = q_via_position(&lam, g)?;
        rep.push("x-intersection", q == qu(p), format!("q_f(B_f(X)) = {}, (f,X)₀ = {p}", fmt_q(&q)));
    }

    face_statistics(pg, &mut rep)?;
    Ok(rep)
}

/// Successor counts of black vertices against weighted initial forms, for
/// balls centered at an axis.
fn face_statistics(pg: &PolyGerm, rep: &mut VerifyReport) -> Result<()> {
    let g = &pg.germ;
    if pg.tree.is_none() || !g.is_singular() {
        return Ok(());
    }
    let tree = build_tree(g)?;
    let px = pg.probe_x();
    let py = pg.probe_node(0)?;
    let mut ok = true;
    let (mut checked, mut skipped) = (0, 0);
    let mut bad = Vec::new();
    for v in tree.black() {
        let Ext::Fin(r) = &v.ball.radius else { continue };
        let c = v.ball.center;
        let dx = Ext::min_of(&px.contacts[c], &v.ball.radius);
        let dy = Ext::min_of(&py.contacts[c], &v.ball.radius);
        let n = v.data.n;
        let (t1, t2) = if r.is_one() {
            let (nz, ex, ey) = weighted_form_stats(&pg.poly, &Q::one());
            (nz + ex as usize + ey as usize, 0)
        } else if dx == v.ball.radius || dy == v.ball.radius {
            let on_x = dx == v.ball.radius;
            let (theta, period) = if on_x { (Q::one() / r, r.numer()) } else { (r.clone(), r.denom()) };
            let period = num_traits::ToPrimitive::to_usize(period).expect("small period");
            let (nz, ex, ey) = weighted_form_stats(&pg.poly, &theta);
            if nz % period != 0 {
                ok = false;
                bad.push(format!("{} nonzero roots not a multiple of {period}", nz));
                continue;
            }
            let r0 = nz / period;
            let eps = if on_x { ex } else { ey } as usize;
            if n == 1 {
                (r0 + eps, 0)
            } else {
                (eps, r0)
            }
        } else {
            skipped += 1;
            continue;
        };
        checked += 1;
        let (_, s1, s2) = successor_counts(&v.ball, g)?;
        if (s1, s2) != (t1, t2) {
            ok = false;
            bad.push(format!("{}: forms ({t1},{t2}) vs tree ({s1},{s2})", ball_name(g, &v.ball)));
        }
    }
    let detail = if bad.is_empty() {
        format!("{checked} axis balls agree, {skipped} balls off the axes")
    } else {
        bad.join(", ")
    };
    rep.push("face-statistics", ok, detail);
    Ok(())
}

/// Whether two germs agree up to relabeling; returns the branch matching.
pub fn match_germs(a: &Germ, b: &Germ) -> Option<Vec<usize>> {
    if a.r() != b.r() {
        return None;
    }
    fn go(a: &Germ, b: &Germ, perm: &mut Vec<usize>, used: &mut Vec<bool>) -> bool {
        let i = perm.len();
        if i == a.r() {
            return true;
        }
        for j in 0..b.r() {
            if used[j] || a.char_of(i) != b.char_of(j) {
                continue;
            }
            if (0..i).any(|k| a.d(i, k) != b.d(j, perm[k])) {
                continue;
            }
            used[j] = true;
            perm.push(j);
            if go(a, b, perm, used) {
                return true;
            }
            perm.pop();
            used[j] = false;
        }
        false
    }
    let mut perm = Vec::new();
    let mut used = vec![false; b.r()];
    go(a, b, &mut perm, &mut used).then_some(perm)
}

/// Adds a check that the polynomial's germ equals a claimed one.
pub fn check_against(rep: &mut VerifyReport, pg: &PolyGerm, claimed: &Germ) {
    let m = match_germs(&pg.germ, claimed);
    let detail = match &m {
        Some(_) => "claimed germ matches the polynomial".to_string(),
        None => format!("claimed germ with {} branches differs from the polynomial's", claimed.r()),
    };
    rep.push("germ-agreement", m.is_some(), detail);
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::newton::bipoly::parse_poly;
    use crate::newton::tree::germ_from_poly;

    fn run(s: &str) -> VerifyReport {
        cross_verify(&germ_from_poly(&parse_poly(s).unwrap()).unwrap()).unwrap()
    }

    #[test]
    fn golden_polys_pass() {
        for s in [
            "Y^7 + X*Y^4 + X^2*Y^2 - 2*X^3",
            "X*(Y^2+X)",
            "Y^4 - X^2",
            "Y^4 - X^2 + X^2*Y",
            "X*Y",
            "(Y^5+X^2)*Y*(Y^2-X^4)",
            "(Y^2 - X)^2 - X^5",
        ] {
            let r = run(s);
            assert!(r.passed(), "{s}: {:#?}", r.checks.iter().filter(|c| !c.pass).collect::<Vec<_>>());
        }
    }

    #[test]
    fn cusp_triple_per_ball() {
        let r = run("Y^7 + X*Y^4 + X^2*Y^2 - 2*X^3");
        let nonzero: Vec<(u64, i64)> = r.balls.iter().filter(|b| b.combinatorial > 0).map(|b| (b.ledger, b.combinatorial)).collect();
        assert_eq!(nonzero, vec![(3, 3), (3, 3)]);
        assert_eq!(r.ledger_total(), 6);
    }
}
