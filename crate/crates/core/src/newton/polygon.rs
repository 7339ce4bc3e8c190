//! Puiseux-type polynomials `f_φ`, Newton polygons and face statistics.

use std::collections::BTreeMap;

use num_traits::{One, Zero};

use super::bipoly::BiPoly;
use super::upoly::UPoly;
use crate::error::{Error, Result};
use crate::ext::{fmt_q, qu, Q};

/// Terms `c·X^α·Y^β` with rational `α` and integer `β`.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct TrackPoly {
    pub terms: BTreeMap<(Q, u32), Q>,
}

impl TrackPoly {
    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    fn add_term(&mut self, a: Q, b: u32, c: Q) {
        if c.is_zero() {
            return;
        }
        let key = (a, b);
        let e = self.terms.entry(key.clone()).or_insert_with(Q::zero);
        *e += c;
        if e.is_zero() {
            self.terms.remove(&key);
        }
    }

    pub fn delta_y(&self) -> u32 {
        self.terms.keys().map(|k| k.1).min().unwrap_or(0)
    }

    pub fn delta_x(&self) -> Q {
        self.terms.keys().map(|k| k.0.clone()).min().unwrap_or_else(Q::zero)
    }

    /// Terms minimizing `α + θβ`.
    pub fn initial_w(&self, theta: &Q) -> TrackPoly {
        let w = |k: &(Q, u32)| &k.0 + theta * qu(k.1 as u64);
        let Some(m) = self.terms.keys().map(w).min() else { return TrackPoly::default() };
        TrackPoly { terms: self.terms.iter().filter(|(k, _)| w(k) == m).map(|(k, v)| (k.clone(), v.clone())).collect() }
    }

    /// The polynomial in `Y` obtained by setting `X = 1`.
    pub fn at_x1(&self) -> UPoly {
        let n = self.terms.keys().map(|k| k.1).max().unwrap_or(0) as usize;
        let mut c = vec![Q::zero(); n + 1];
        for ((_, b), v) in &self.terms {
            c[*b as usize] += v;
        }
        UPoly::new(c)
    }

    fn points(&self) -> Vec<(Q, Q)> {
        self.terms.keys().map(|(a, b)| (a.clone(), qu(*b as u64))).collect()
    }
}

impl From<&BiPoly> for TrackPoly {
    fn from(f: &BiPoly) -> Self {
        TrackPoly { terms: f.terms.iter().map(|((a, b), v)| ((qu(*a as u64), *b), v.clone())).collect() }
    }
}

/// A Puiseux polynomial `Σ c·X^e`, keyed by exponent.
pub type Puiseux = BTreeMap<Q, Q>;

fn puiseux_mul(a: &Puiseux, b: &Puiseux) -> Puiseux {
    let mut out = Puiseux::new();
    for (e, c) in a {
        for (f, d) in b {
            let v = out.entry(e + f).or_insert_with(Q::zero);
            *v += c * d;
        }
    }
    out.retain(|_, v| !v.is_zero());
    out
}

/// `f(X, φ + Y)`.
pub fn shift_by(f: &BiPoly, phi: &Puiseux) -> TrackPoly {
    let max_b = f.deg_y().unwrap_or(0) as usize;
    let mut pows: Vec<Puiseux> = vec![Puiseux::from([(Q::zero(), Q::one())])];
    for _ in 0..max_b {
        let next = puiseux_mul(pows.last().unwrap(), phi);
        pows.push(next);
    }
    let mut binom = vec![vec![Q::one()]];
    for n in 1..=max_b {
        let prev = &binom[n - 1];
        let row: Vec<Q> = (0..=n)
            .map(|k| if k == 0 || k == n { Q::one() } else { &prev[k - 1] + &prev[k] })
            .collect();
        binom.push(row);
    }
    let mut out = TrackPoly::default();
    for ((a, b), v) in &f.terms {
        let b = *b as usize;
        for k in 0..=b {
            let coeff = v * &binom[b][k];
            for (e, c) in &pows[b - k] {
                out.add_term(qu(*a as u64) + e, k as u32, &coeff * c);
            }
        }
    }
    out
}

/// A compact face, from its upper-left endpoint `start` to `end`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Face {
    pub start: (Q, Q),
    pub end: (Q, Q),
    /// Horizontal length `|S|₁`.
    pub len1: Q,
    /// Vertical length `|S|₂`.
    pub len2: Q,
    pub incl: Q,
    /// `-1` when the face touches the horizontal axis.
    pub eps: i64,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Polygon {
    pub faces: Vec<Face>,
    pub delta_x: Q,
    pub delta_y: Q,
}

/// Compact faces of the Newton diagram with inclination above `threshold`
/// (all faces when `None`), sorted by inclination.
pub fn polygon(f: &TrackPoly, threshold: Option<&Q>) -> Result<Polygon> {
    if f.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    let pts = f.points();
    let delta_x = pts.iter().map(|p| p.0.clone()).min().unwrap();
    let delta_y = pts.iter().map(|p| p.1.clone()).min().unwrap();
    let start = pts.iter().filter(|p| p.0 == delta_x).min_by(|a, b| a.1.cmp(&b.1)).unwrap().clone();
    let end = pts.iter().filter(|p| p.1 == delta_y).min_by(|a, b| a.0.cmp(&b.0)).unwrap().clone();
    let mut faces = Vec::new();
    let mut cur = start;
    while cur.1 > end.1 {
        let best = pts
            .iter()
            .filter(|p| p.1 < cur.1)
            .map(|p| ((&p.0 - &cur.0) / (&cur.1 - &p.1), p))
            .min_by(|x, y| x.0.cmp(&y.0).then(x.1 .1.cmp(&y.1 .1)))
            .expect("the end vertex lies lower");
        let (incl, next) = (best.0, best.1.clone());
        let eps = if next.1.is_zero() { -1 } else { 0 };
        faces.push(Face {
            len1: &next.0 - &cur.0,
            len2: &cur.1 - &next.1,
            incl,
            eps,
            start: cur,
            end: next.clone(),
        });
        cur = next;
    }
    if let Some(th) = threshold {
        faces.retain(|s| s.incl > *th);
    }
    Ok(Polygon { faces, delta_x, delta_y })
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FaceStats {
    pub inform: TrackPoly,
    /// `in(f,S)(1,Y)`.
    pub w: UPoly,
    pub t: usize,
    pub d: i64,
    pub eps_x: bool,
    pub eps_y: bool,
}

pub fn face_stats(f: &TrackPoly, s: &Face) -> Result<FaceStats> {
    let on = |p: &(Q, Q)| f.terms.contains_key(&(p.0.clone(), num_traits::ToPrimitive::to_u32(&p.1.to_integer()).unwrap_or(u32::MAX)));
    let inform = f.initial_w(&s.incl);
    let line = |p: &(Q, Q)| &p.0 + &s.incl * &p.1;
    let min = f.points().iter().map(line).min();
    if !on(&s.start) || !on(&s.end) || min != Some(line(&s.start)) || line(&s.start) != line(&s.end) {
        return Err(Error::FaceNotOnPolygon(format!(
            "({},{})-({},{})",
            fmt_q(&s.start.0),
            fmt_q(&s.start.1),
            fmt_q(&s.end.0),
            fmt_q(&s.end.1)
        )));
    }
    let w = inform.at_x1();
    let t = w.distinct_roots();
    let len2 = num_traits::ToPrimitive::to_i64(&s.len2.to_integer()).expect("small height");
    Ok(FaceStats {
        d: len2 + s.eps - t as i64 + 1,
        eps_x: s.start.0 > Q::zero(),
        eps_y: s.end.1 > Q::zero(),
        inform,
        w,
        t,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ext::{qf, qi};
    use crate::newton::bipoly::parse_poly;

    fn tp(s: &str) -> TrackPoly {
        TrackPoly::from(&parse_poly(s).unwrap())
    }

    /// Lower-left hull by brute force: a segment between two support points
    /// is a face iff every point lies weakly above its line and the segment
    /// is maximal.
    fn hull_oracle(f: &TrackPoly) -> Vec<Q> {
        let pts = f.points();
        let mut incls = Vec::new();
        for p in &pts {
            for q in &pts {
                if q.1 >= p.1 || q.0 <= p.0 {
                    continue;
                }
                let k = (&q.0 - &p.0) / (&p.1 - &q.1);
                let val = &p.0 + &k * &p.1;
                if pts.iter().all(|r| &r.0 + &k * &r.1 >= val) {
                    incls.push(k);
                }
            }
        }
        incls.sort();
        incls.dedup();
        incls
    }

    #[test]
    fn polygons() {
        let f = tp("Y^7 + X*Y^4 + X^2*Y^2 - 2*X^3");
        let p = polygon(&f, None).unwrap();
        let incl: Vec<Q> = p.faces.iter().map(|s| s.incl.clone()).collect();
        assert_eq!(incl, vec![qf(1, 3), qf(1, 2)]);
        assert_eq!(incl, hull_oracle(&f));
        assert_eq!(p.faces[1].start, (qi(1), qi(4)));
        assert_eq!(p.faces[1].eps, -1);

        let p = polygon(&tp("Y^4 - X^2"), None).unwrap();
        assert_eq!(p.faces.len(), 1);
        assert_eq!((p.faces[0].incl.clone(), p.faces[0].eps), (qf(1, 2), -1));

        let p = polygon(&tp("X*Y"), None).unwrap();
        assert!(p.faces.is_empty());
        assert_eq!((p.delta_x, p.delta_y), (qi(1), qi(1)));

        assert_eq!(polygon(&TrackPoly::default(), None), Err(Error::ZeroPolynomial));
        let p = polygon(&f, Some(&qf(1, 3))).unwrap();
        assert_eq!(p.faces.len(), 1);
    }

    #[test]
    fn statistics() {
        let f = tp("Y^4 - X^2");
        let s = &polygon(&f, None).unwrap().faces[0];
        let st = face_stats(&f, s).unwrap();
        assert_eq!((st.t, st.d, st.eps_x, st.eps_y), (4, 0, false, false));

        let f = tp("Y^5 + X^2");
        let st = face_stats(&f, &polygon(&f, None).unwrap().faces[0]).unwrap();
        assert_eq!((st.t, st.d), (5, 0));

        let f = tp("(Y^2 - X)^2 - X^5");
        let st = face_stats(&f, &polygon(&f, None).unwrap().faces[0]).unwrap();
        assert_eq!((st.t, st.d), (2, 2));

        let f = tp("Y^7 + X*Y^4 + X^2*Y^2 - 2*X^3");
        let st = face_stats(&f, &polygon(&f, None).unwrap().faces[0]).unwrap();
        assert_eq!((st.t, st.d, st.eps_y), (4, 0, true));

        let bogus = Face { start: (qi(0), qi(7)), end: (qi(2), qi(2)), len1: qi(2), len2: qi(5), incl: qf(2, 5), eps: 0 };
        assert!(matches!(face_stats(&f, &bogus), Err(Error::FaceNotOnPolygon(_))));
    }

    #[test]
    fn shifting() {
        let f = parse_poly("(Y^2 - X)^2 - X^5").unwrap();
        let phi = Puiseux::from([(qf(1, 2), qi(1))]);
        let g = shift_by(&f, &phi);
        // 4X·Y² + 4X^{1/2}·Y³ + Y⁴ − X⁵
        assert_eq!(g.terms.len(), 4);
        assert_eq!(g.terms[&(qf(1, 2), 3)], qi(4));
        let p = polygon(&g, Some(&qf(1, 2))).unwrap();
        assert_eq!(p.faces.len(), 1);
        assert_eq!(p.faces[0].incl, qi(2));
    }
}
