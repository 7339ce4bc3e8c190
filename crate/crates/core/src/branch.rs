//! Encodings of the equisingularity type of a single branch: semigroup
//! generators, characteristic contacts, and the characteristic Newton diagram
//! built from a generalized characteristic sequence.

use num_integer::Integer;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::ext::{fmt_q, is_integer, n_for, qu, Q};

/// Minimal generators `β̄₀ < … < β̄_g` of the semigroup of a branch.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct SemigroupSeq {
    pub betas: Vec<u64>,
}

impl SemigroupSeq {
    pub fn new(betas: Vec<u64>) -> Self {
        SemigroupSeq { betas }
    }
}

/// Characteristic contacts `d₁ < … < d_g` together with the order and the
/// integers `n_k` that each contact adds to the multiplicity.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct CharData {
    pub ord: u64,
    pub contacts: Vec<Q>,
    pub n_seq: Vec<u64>,
}

impl CharData {
    pub fn smooth() -> Self {
        CharData { ord: 1, contacts: Vec::new(), n_seq: Vec::new() }
    }

    /// Builds the data from contacts alone; `n_k` and the order are recovered
    /// from the denominators.
    pub fn from_contacts(contacts: Vec<Q>) -> Result<Self> {
        let mut n_seq = Vec::with_capacity(contacts.len());
        let mut nu = 1u64;
        for d in &contacts {
            let n = n_for(d, nu);
            n_seq.push(n);
            nu = nu.checked_mul(n).ok_or_else(|| Error::InvalidCharData("order overflow".into()))?;
        }
        let c = CharData { ord: nu, contacts, n_seq };
        match check_char(&c) {
            Ok(()) => Ok(c),
            Err(msg) => Err(Error::InvalidCharData(msg)),
        }
    }

    pub fn g(&self) -> usize {
        self.contacts.len()
    }

    pub fn is_smooth(&self) -> bool {
        self.contacts.is_empty()
    }

    /// `ν₀ = 1, ν_k = n₁⋯n_k`.
    pub fn nu_seq(&self) -> Vec<u64> {
        let mut out = vec![1u64];
        for n in &self.n_seq {
            let last = *out.last().unwrap();
            out.push(last * n);
        }
        out
    }

    /// Number of characteristic contacts strictly below `d`.
    pub fn count_below(&self, d: &Q) -> usize {
        self.contacts.iter().take_while(|c| *c < d).count()
    }

    /// Contacts strictly below `d`.
    pub fn contacts_below(&self, d: &Q) -> &[Q] {
        &self.contacts[..self.count_below(d)]
    }

    /// `ν` of the first `k` contacts.
    pub fn nu_of_prefix(&self, k: usize) -> u64 {
        self.n_seq[..k].iter().product()
    }
}

fn check_char(c: &CharData) -> std::result::Result<(), String> {
    if c.ord == 0 {
        return Err("order must be positive".into());
    }
    if c.n_seq.len() != c.contacts.len() {
        return Err("n sequence length differs from contact count".into());
    }
    let one = Q::one();
    let mut nu = 1u64;
    for (k, d) in c.contacts.iter().enumerate() {
        if k == 0 && *d <= one {
            return Err(format!("first contact {} must exceed 1", fmt_q(d)));
        }
        if k > 0 && *d <= c.contacts[k - 1] {
            return Err("contacts must be strictly increasing".into());
        }
        let n = n_for(d, nu);
        if n < 2 {
            return Err(format!(
                "contact {} lies in N/{} and adds nothing to the multiplicity",
                fmt_q(d),
                nu * nu
            ));
        }
        if n != c.n_seq[k] {
            return Err(format!("stored n_{} = {} but contact forces {}", k + 1, c.n_seq[k], n));
        }
        nu *= n;
    }
    if nu != c.ord {
        return Err(format!("order {} differs from product of n_k = {}", c.ord, nu));
    }
    Ok(())
}

pub fn validate_char(c: &CharData) -> bool {
    check_char(c).is_ok()
}

fn check_semigroup(s: &SemigroupSeq) -> std::result::Result<(), String> {
    let b = &s.betas;
    if b.is_empty() {
        return Err("empty sequence".into());
    }
    if b[0] == 0 {
        return Err("generators must be positive".into());
    }
    if b.windows(2).any(|w| w[0] >= w[1]) {
        return Err("generators must be strictly increasing".into());
    }
    let mut e = b[0];
    let mut gcds = vec![e];
    for &x in &b[1..] {
        let next = e.gcd(&x);
        if next == e {
            return Err(format!("generator {x} does not lower the gcd"));
        }
        e = next;
        gcds.push(e);
    }
    if e != 1 {
        return Err("generators are not coprime".into());
    }
    for k in 1..b.len().saturating_sub(1) {
        let n_k = gcds[k - 1] / gcds[k];
        if n_k * b[k] >= b[k + 1] {
            return Err(format!("minimality fails: n_{k}·β̄_{k} >= β̄_{}", k + 1));
        }
    }
    Ok(())
}

pub fn char_from_semigroup(s: &SemigroupSeq) -> Result<CharData> {
    check_semigroup(s).map_err(Error::InvalidSemigroup)?;
    let b = &s.betas;
    let b0 = b[0];
    let mut contacts = Vec::new();
    let mut n_seq = Vec::new();
    let mut e_prev = b0;
    for &bk in &b[1..] {
        let e = e_prev.gcd(&bk);
        contacts.push(Q::new((e_prev * bk).into(), (b0 * b0).into()));
        n_seq.push(e_prev / e);
        e_prev = e;
    }
    Ok(CharData { ord: b0, contacts, n_seq })
}

pub fn semigroup_from_char(c: &CharData) -> Result<SemigroupSeq> {
    check_char(c).map_err(Error::InvalidCharData)?;
    let mut betas = vec![c.ord];
    let nus = c.nu_seq();
    for (k, d) in c.contacts.iter().enumerate() {
        let v = d * qu(c.ord) * qu(nus[k]);
        if !is_integer(&v) {
            return Err(Error::InvalidCharData(format!("β̄_{} = {} is not an integer", k + 1, fmt_q(&v))));
        }
        betas.push(num_traits::ToPrimitive::to_u64(v.numer()).expect("generator fits in u64"));
    }
    let s = SemigroupSeq { betas };
    let back = char_from_semigroup(&s)?;
    if &back != c {
        return Err(Error::InvalidCharData("semigroup roundtrip mismatch".into()));
    }
    Ok(s)
}

/// `d₁ + n₁(d₂ − d₁) + … + n₁⋯n_k(d − d_k)`.
pub fn contact_exponent(prefix: &[Q], n_prefix: &[u64], d: &Q) -> Result<Q> {
    if prefix.len() != n_prefix.len() {
        return Err(Error::InvalidCharData("prefix lengths differ".into()));
    }
    if prefix.windows(2).any(|w| w[0] >= w[1]) || prefix.last().is_some_and(|l| l >= d) {
        return Err(Error::PrefixNotBelowDiameter);
    }
    let Some(first) = prefix.first() else {
        return Ok(d.clone());
    };
    let mut acc = first.clone();
    let mut nu = Q::one();
    for k in 0..prefix.len() {
        nu *= qu(n_prefix[k]);
        let next = prefix.get(k + 1).unwrap_or(d);
        acc += &nu * (next - &prefix[k]);
    }
    Ok(acc)
}

/// Generalized characteristic sequence `(b₀, …, b_h)` of a Puiseux root:
/// `b₀ = N(y)` and `b_k/b₀` are the exponents where the gcd drops.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct GenCharSeq {
    pub b: Vec<u64>,
}

impl GenCharSeq {
    pub fn new(b: Vec<u64>) -> Self {
        GenCharSeq { b }
    }

    /// `e_k = gcd(b₀, …, b_k)`.
    pub fn gcds(&self) -> Vec<u64> {
        let mut e = self.b[0];
        let mut out = vec![e];
        for &x in &self.b[1..] {
            e = e.gcd(&x);
            out.push(e);
        }
        out
    }

    pub fn validate(&self) -> Result<()> {
        let b = &self.b;
        let bad = |m: &str| Err(Error::InvalidGenChar(m.to_string()));
        if b.is_empty() || b[0] == 0 {
            return bad("b₀ must be a positive integer");
        }
        if b[1..].iter().any(|&x| x == 0) {
            return bad("exponents must be positive");
        }
        if b[1..].windows(2).any(|w| w[0] >= w[1]) {
            return bad("b₁ < … < b_h must increase");
        }
        let e = self.gcds();
        if e.windows(2).any(|w| w[1] == w[0]) {
            return bad("every characteristic position must lower the gcd");
        }
        if *e.last().unwrap() != 1 {
            return bad("sequence is not coprime");
        }
        Ok(())
    }

    pub fn ord(&self) -> u64 {
        if self.b.len() == 1 {
            1
        } else {
            self.b[0].min(self.b[1])
        }
    }
}

/// The characteristic diagram: the Newton diagram of `f(X, y + Y)` scaled by
/// `1/ord`, stored as its boundary vertices from the vertical axis down.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CharDiagram {
    pub vertices: Vec<(Q, Q)>,
    pub inclinations: Vec<Q>,
    pub alphas: Vec<Q>,
    pub ord: u64,
    /// Height of the vertex on the vertical axis; equals `d(f, X)`.
    pub d_axis: Q,
}

pub fn char_diagram(g: &GenCharSeq) -> Result<CharDiagram> {
    g.validate()?;
    let b = &g.b;
    let b0 = qu(b[0]);
    let e = g.gcds();
    let ord = g.ord();
    let scale = Q::one() / qu(ord);
    // Teeth arrive already sorted by inclination b_k/b₀.
    let mut pt = (Q::zero(), qu(b[0]));
    let mut vertices = vec![pt.clone()];
    let mut inclinations = Vec::new();
    for k in 1..b.len() {
        let h = qu(e[k - 1] - e[k]);
        let incl = qu(b[k]) / &b0;
        pt = (&pt.0 + &incl * &h, &pt.1 - &h);
        vertices.push(pt.clone());
        inclinations.push(incl);
    }
    let vertices: Vec<(Q, Q)> = vertices.into_iter().map(|(a, c)| (a * &scale, c * &scale)).collect();
    let d_axis = vertices[0].1.clone();
    let mut diag = CharDiagram { vertices, inclinations, alphas: Vec::new(), ord, d_axis };
    diag.alphas = diag.inclinations.iter().map(|k| alpha_of_kappa(&diag, k)).collect::<Result<_>>()?;
    Ok(diag)
}

/// Abscissa where the supporting line of inclination `kappa` meets the
/// horizontal axis.
pub fn alpha_of_kappa(d: &CharDiagram, kappa: &Q) -> Result<Q> {
    if *kappa <= Q::zero() {
        return Err(Error::UnsupportedLine(format!("inclination {} is not positive", fmt_q(kappa))));
    }
    Ok(d.vertices.iter().map(|(a, b)| a + kappa * b).min().expect("diagram has a vertex"))
}

/// Inverse of [`alpha_of_kappa`] on `alpha > 0`.
pub fn kappa_of_alpha(d: &CharDiagram, alpha: &Q) -> Result<Q> {
    if *alpha <= Q::zero() {
        return Err(Error::UnsupportedLine(format!("intercept {} is not positive", fmt_q(alpha))));
    }
    Ok(d.vertices.iter().map(|(a, b)| (alpha - a) / b).max().expect("diagram has a vertex"))
}

/// Index of the last vertex touched by the supporting line of inclination
/// `kappa`. Steep lines touch the lowest vertex.
pub fn support_vertex(d: &CharDiagram, kappa: &Q) -> Result<usize> {
    let alpha = alpha_of_kappa(d, kappa)?;
    Ok(d.vertices.iter().rposition(|(a, b)| a + kappa * b == alpha).unwrap())
}

/// Outcome of the order check `N(y) = d(f,X)·n₁⋯n_g` on a conversion.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OrderCheck {
    pub n_y: u64,
    pub d_axis: Q,
    pub nu_g: u64,
    pub holds: bool,
}

pub fn gen_char_to_char(g: &GenCharSeq) -> Result<(CharData, OrderCheck)> {
    let diag = char_diagram(g)?;
    let d = diag.d_axis.clone();
    let contacts: Vec<Q> = if g.b.len() == 1 {
        Vec::new()
    } else if d.is_one() {
        diag.alphas.clone()
    } else if !is_integer(&d) {
        diag.alphas.iter().map(|a| &d * a).collect()
    } else {
        diag.alphas[1..].iter().map(|a| &d * a).collect()
    };
    let c = CharData::from_contacts(contacts).map_err(|e| Error::InvalidGenChar(e.to_string()))?;
    let check = OrderCheck {
        n_y: g.b[0],
        nu_g: c.ord,
        holds: qu(g.b[0]) == &d * qu(c.ord) && c.ord == diag.ord,
        d_axis: d,
    };
    Ok((c, check))
}

/// `d(f, X)` of the branch with this sequence.
pub fn d_axis(g: &GenCharSeq) -> Result<Q> {
    g.validate()?;
    Ok(Q::new(g.b[0].into(), g.ord().into()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ext::{qf, qi};

    #[test]
    fn semigroup_examples() {
        let c = char_from_semigroup(&SemigroupSeq::new(vec![2, 5])).unwrap();
        assert_eq!((c.ord, c.contacts.clone(), c.n_seq.clone()), (2, vec![qf(5, 2)], vec![2]));
        let c = char_from_semigroup(&SemigroupSeq::new(vec![1])).unwrap();
        assert!(c.is_smooth() && c.ord == 1);
        let c = char_from_semigroup(&SemigroupSeq::new(vec![4, 6, 13])).unwrap();
        assert_eq!(c.contacts, vec![qf(3, 2), qf(13, 8)]);
        assert_eq!(c.n_seq, vec![2, 2]);
        assert_eq!(semigroup_from_char(&c).unwrap().betas, vec![4, 6, 13]);
    }

    #[test]
    fn invalid_semigroups() {
        for bad in [vec![2], vec![4, 6], vec![4, 6, 12, 13], vec![3, 2], vec![4, 6, 11], vec![1, 2]] {
            assert!(char_from_semigroup(&SemigroupSeq::new(bad.clone())).is_err(), "{bad:?}");
        }
    }

    #[test]
    fn validate_char_examples() {
        assert!(validate_char(&CharData { ord: 2, contacts: vec![qf(5, 2)], n_seq: vec![2] }));
        assert!(!validate_char(&CharData { ord: 2, contacts: vec![qi(2)], n_seq: vec![2] }));
        assert!(!validate_char(&CharData { ord: 4, contacts: vec![qf(3, 2), qf(7, 4)], n_seq: vec![2, 2] }));
        assert!(validate_char(&CharData::smooth()));
    }

    #[test]
    fn contact_exponent_examples() {
        assert_eq!(contact_exponent(&[], &[], &qf(5, 2)).unwrap(), qf(5, 2));
        assert_eq!(contact_exponent(&[qf(3, 2)], &[2], &qf(13, 8)).unwrap(), qf(7, 4));
        assert_eq!(contact_exponent(&[qf(5, 2)], &[2], &qi(3)).unwrap(), qf(7, 2));
        assert_eq!(contact_exponent(&[qi(3)], &[2], &qi(3)), Err(Error::PrefixNotBelowDiameter));
    }

    #[test]
    fn diagrams() {
        let d = char_diagram(&GenCharSeq::new(vec![1])).unwrap();
        assert_eq!(d.vertices, vec![(qi(0), qi(1))]);
        let d = char_diagram(&GenCharSeq::new(vec![2, 5])).unwrap();
        assert_eq!(d.d_axis, qi(1));
        assert_eq!(d.inclinations, vec![qf(5, 2)]);
        assert_eq!(d.alphas, vec![qf(5, 2)]);
        let d = char_diagram(&GenCharSeq::new(vec![5, 2])).unwrap();
        assert_eq!(d.d_axis, qf(5, 2));
    }

    #[test]
    fn alpha_kappa_duality() {
        let d = char_diagram(&GenCharSeq::new(vec![2, 5])).unwrap();
        assert_eq!(alpha_of_kappa(&d, &qf(5, 2)).unwrap(), qf(5, 2));
        for k in [qf(1, 3), qi(1), qf(5, 2), qi(7)] {
            let a = alpha_of_kappa(&d, &k).unwrap();
            assert_eq!(kappa_of_alpha(&d, &a).unwrap(), k);
        }
        assert!(alpha_of_kappa(&d, &qi(0)).is_err());
        assert!(kappa_of_alpha(&d, &qi(0)).is_err());
        assert_eq!(support_vertex(&d, &qi(100)).unwrap(), d.vertices.len() - 1);
    }

    #[test]
    fn gen_char_cases() {
        let (c, chk) = gen_char_to_char(&GenCharSeq::new(vec![2, 5])).unwrap();
        assert_eq!((c.ord, c.contacts), (2, vec![qf(5, 2)]));
        assert!(chk.holds);
        let (c, _) = gen_char_to_char(&GenCharSeq::new(vec![1])).unwrap();
        assert!(c.is_smooth());
        let (c, chk) = gen_char_to_char(&GenCharSeq::new(vec![3, 2])).unwrap();
        assert_eq!((c.ord, c.contacts), (2, vec![qf(3, 2)]));
        assert!(chk.holds);
        let (c, chk) = gen_char_to_char(&GenCharSeq::new(vec![2, 1])).unwrap();
        assert!(c.is_smooth() && chk.holds);
    }
}
