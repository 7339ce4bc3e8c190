//! Dense univariate polynomials over the rationals.

use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::ext::Q;

/// `c[i]` is the coefficient of `t^i`; no trailing zeros.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct UPoly {
    pub c: Vec<Q>,
}

impl UPoly {
    pub fn new(mut c: Vec<Q>) -> Self {
        while c.last().is_some_and(Zero::is_zero) {
            c.pop();
        }
        UPoly { c }
    }

    pub fn zero() -> Self {
        UPoly { c: Vec::new() }
    }

    pub fn one() -> Self {
        UPoly { c: vec![Q::one()] }
    }

    pub fn constant(q: Q) -> Self {
        UPoly::new(vec![q])
    }

    pub fn monomial(q: Q, k: usize) -> Self {
        let mut c = vec![Q::zero(); k + 1];
        c[k] = q;
        UPoly::new(c)
    }

    pub fn is_zero(&self) -> bool {
        self.c.is_empty()
    }

    /// Degree; the zero polynomial has none.
    pub fn deg(&self) -> Option<usize> {
        self.c.len().checked_sub(1)
    }

    pub fn is_constant(&self) -> bool {
        self.c.len() <= 1
    }

    pub fn lc(&self) -> Q {
        self.c.last().cloned().unwrap_or_else(Q::zero)
    }

    pub fn coeff(&self, i: usize) -> Q {
        self.c.get(i).cloned().unwrap_or_else(Q::zero)
    }

    /// Lowest exponent with a nonzero coefficient.
    pub fn ord(&self) -> Option<usize> {
        self.c.iter().position(|x| !x.is_zero())
    }

    pub fn scale(&self, q: &Q) -> Self {
        UPoly::new(self.c.iter().map(|x| x * q).collect())
    }

    pub fn shift_down(&self, k: usize) -> Self {
        UPoly::new(self.c[k.min(self.c.len())..].to_vec())
    }

    pub fn deriv(&self) -> Self {
        UPoly::new(self.c.iter().enumerate().skip(1).map(|(i, x)| x * Q::from_integer(i.into())).collect())
    }

    pub fn eval(&self, x: &Q) -> Q {
        self.c.iter().rev().fold(Q::zero(), |acc, a| acc * x + a)
    }

    pub fn monic(&self) -> Self {
        if self.is_zero() {
            return self.clone();
        }
        self.scale(&(Q::one() / self.lc()))
    }

    pub fn divrem(&self, d: &UPoly) -> (UPoly, UPoly) {
        assert!(!d.is_zero(), "division by zero polynomial");
        let dd = d.c.len() - 1;
        let lc = d.lc();
        let mut r = self.c.clone();
        if r.len() <= dd {
            return (UPoly::zero(), self.clone());
        }
        let mut q = vec![Q::zero(); r.len() - dd];
        for k in (0..q.len()).rev() {
            let f = &r[k + dd] / &lc;
            if !f.is_zero() {
                for (j, dj) in d.c.iter().enumerate() {
                    r[k + j] -= &f * dj;
                }
            }
            q[k] = f;
        }
        r.truncate(dd);
        (UPoly::new(q), UPoly::new(r))
    }

    pub fn div_exact(&self, d: &UPoly) -> Option<UPoly> {
        let (q, r) = self.divrem(d);
        r.is_zero().then_some(q)
    }

    /// Monic gcd; `gcd(0, 0) = 0`.
    pub fn gcd(a: &UPoly, b: &UPoly) -> UPoly {
        let (mut a, mut b) = (a.clone(), b.clone());
        while !b.is_zero() {
            let r = a.divrem(&b).1;
            a = b;
            b = r;
        }
        a.monic()
    }

    pub fn squarefree_part(&self) -> UPoly {
        if self.is_constant() {
            return UPoly::one();
        }
        let g = UPoly::gcd(self, &self.deriv());
        self.div_exact(&g).expect("gcd divides").monic()
    }

    /// Number of distinct complex roots.
    pub fn distinct_roots(&self) -> usize {
        self.squarefree_part().deg().unwrap_or(0)
    }

    /// Yun's decomposition: `P_1, P_2, …` with `self = lc · ∏ P_k^k`, each `P_k`
    /// squarefree and monic.
    pub fn squarefree_decomposition(&self) -> Vec<UPoly> {
        let mut out = Vec::new();
        if self.is_constant() {
            return out;
        }
        let a = self.monic();
        let b = a.deriv();
        let c = UPoly::gcd(&a, &b);
        let mut w = a.div_exact(&c).unwrap();
        let mut y = b.div_exact(&c).unwrap();
        let mut z = &y - &w.deriv();
        while !w.is_constant() {
            let g = UPoly::gcd(&w, &z);
            w = w.div_exact(&g).unwrap();
            y = z.div_exact(&g).unwrap();
            z = &y - &w.deriv();
            out.push(g);
        }
        out
    }

    /// Distinct rational roots, ascending.
    pub fn rational_roots(&self) -> Vec<Q> {
        let mut roots = Vec::new();
        if self.is_zero() {
            return roots;
        }
        let mut p = self.clone();
        if let Some(k) = p.ord() {
            if k > 0 {
                roots.push(Q::zero());
                p = p.shift_down(k);
            }
        }
        if p.is_constant() {
            return roots;
        }
        let ints = integer_coefficients(&p);
        let a0 = ints[0].abs();
        let an = ints.last().unwrap().abs();
        let (Some(pd), Some(qd)) = (divisors(&a0), divisors(&an)) else {
            return roots;
        };
        let mut cands: Vec<Q> = Vec::new();
        for num in &pd {
            for den in &qd {
                let v = Q::new(num.clone(), den.clone());
                cands.push(v.clone());
                cands.push(-v);
            }
        }
        cands.sort();
        cands.dedup();
        for c in cands {
            if p.eval(&c).is_zero() {
                roots.push(c);
            }
        }
        roots.sort();
        roots
    }
}

fn integer_coefficients(p: &UPoly) -> Vec<BigInt> {
    let l = p.c.iter().fold(BigInt::one(), |acc, x| acc.lcm(x.denom()));
    p.c.iter().map(|x| (x * Q::from_integer(l.clone())).to_integer()).collect()
}

/// Positive divisors, or `None` when the number is too large to factor by
/// trial division.
fn divisors(n: &BigInt) -> Option<Vec<BigInt>> {
    let n = n.to_u64()?;
    if n == 0 {
        return Some(vec![BigInt::one()]);
    }
    if n > 1 << 44 {
        return None;
    }
    let mut out = Vec::new();
    let mut d = 1u64;
    while d * d <= n {
        if n % d == 0 {
            out.push(BigInt::from(d));
            if d * d != n {
                out.push(BigInt::from(n / d));
            }
        }
        d += 1;
    }
    Some(out)
}

/// Rational `k`-th root of `c`, if one exists.
pub fn rational_nth_root(c: &Q, k: u64) -> Option<Q> {
    if k == 1 {
        return Some(c.clone());
    }
    let neg = c.is_negative();
    if neg && k % 2 == 0 {
        return None;
    }
    let k32 = u32::try_from(k).ok()?;
    let root = |n: &BigInt| -> Option<BigInt> {
        let r = n.abs().nth_root(k32);
        (num_traits::pow(r.clone(), k as usize) == n.abs()).then_some(r)
    };
    let a = Q::new(root(c.numer())?, root(c.denom())?);
    Some(if neg { -a } else { a })
}

impl Add for &UPoly {
    type Output = UPoly;
    fn add(self, o: &UPoly) -> UPoly {
        let n = self.c.len().max(o.c.len());
        UPoly::new((0..n).map(|i| self.coeff(i) + o.coeff(i)).collect())
    }
}

impl Sub for &UPoly {
    type Output = UPoly;
    fn sub(self, o: &UPoly) -> UPoly {
        let n = self.c.len().max(o.c.len());
        UPoly::new((0..n).map(|i| self.coeff(i) - o.coeff(i)).collect())
    }
}

impl Neg for &UPoly {
    type Output = UPoly;
    fn neg(self) -> UPoly {
        UPoly::new(self.c.iter().map(|x| -x).collect())
    }
}

impl Mul for &UPoly {
    type Output = UPoly;
    fn mul(self, o: &UPoly) -> UPoly {
        if self.is_zero() || o.is_zero() {
            return UPoly::zero();
        }
        let mut c = vec![Q::zero(); self.c.len() + o.c.len() - 1];
        for (i, a) in self.c.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in o.c.iter().enumerate() {
                c[i + j] += a * b;
            }
        }
        UPoly::new(c)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ext::{qf, qi};

    fn p(v: &[i64]) -> UPoly {
        UPoly::new(v.iter().map(|&x| qi(x)).collect())
    }

    #[test]
    fn arithmetic() {
        let a = p(&[-1, 0, 1]);
        let b = p(&[1, 1]);
        assert_eq!(a.div_exact(&b).unwrap(), p(&[-1, 1]));
        assert_eq!(UPoly::gcd(&a, &p(&[-1, 0, 0, 1])), p(&[-1, 1]));
        assert_eq!(p(&[0, 0, 3]).deriv(), p(&[0, 6]));
    }

    #[test]
    fn squarefree() {
        // (t - 1)^2 (t + 2)
        let f = &(&p(&[-1, 1]) * &p(&[-1, 1])) * &p(&[2, 1]);
        assert_eq!(f.distinct_roots(), 2);
        let d = f.squarefree_decomposition();
        assert_eq!(d, vec![p(&[2, 1]), p(&[-1, 1])]);
        assert_eq!(p(&[-1, 0, 0, 0, 1]).distinct_roots(), 4);
    }

    #[test]
    fn roots() {
        let f = &p(&[-1, 2]) * &p(&[3, 1]);
        assert_eq!(f.rational_roots(), vec![qi(-3), qf(1, 2)]);
        assert!(p(&[2, 0, 1]).rational_roots().is_empty());
        assert_eq!(rational_nth_root(&qf(4, 9), 2), Some(qf(2, 3)));
        assert_eq!(rational_nth_root(&qi(-8), 3), Some(qi(-2)));
        assert_eq!(rational_nth_root(&qi(-4), 2), None);
        assert_eq!(rational_nth_root(&qi(2), 2), None);
    }
}
