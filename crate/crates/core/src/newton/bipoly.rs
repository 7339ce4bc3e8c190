//! Bivariate polynomials with rational coefficients and the text grammar
//! `+ - * / ^ ( )` over `X`, `Y` and integer literals.

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use super::upoly::UPoly;
use crate::error::{Error, Result};
use crate::ext::{fmt_q, Q};

/// Terms keyed by `(α, β)`, the exponents of `X` and `Y`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct BiPoly {
    pub terms: BTreeMap<(u32, u32), Q>,
}

impl BiPoly {
    pub fn zero() -> Self {
        BiPoly::default()
    }

    pub fn constant(q: Q) -> Self {
        let mut p = BiPoly::zero();
        p.add_term(0, 0, q);
        p
    }

    pub fn monomial(q: Q, a: u32, b: u32) -> Self {
        let mut p = BiPoly::zero();
        p.add_term(a, b, q);
        p
    }

    pub fn x() -> Self {
        Self::monomial(Q::one(), 1, 0)
    }

    pub fn y() -> Self {
        Self::monomial(Q::one(), 0, 1)
    }

    pub fn add_term(&mut self, a: u32, b: u32, q: Q) {
        if q.is_zero() {
            return;
        }
        let e = self.terms.entry((a, b)).or_insert_with(Q::zero);
        *e += q;
        if e.is_zero() {
            self.terms.remove(&(a, b));
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coeff(&self, a: u32, b: u32) -> Q {
        self.terms.get(&(a, b)).cloned().unwrap_or_else(Q::zero)
    }

    /// Value at the origin.
    pub fn constant_term(&self) -> Q {
        self.coeff(0, 0)
    }

    /// Lowest total degree of a term.
    pub fn ord(&self) -> Option<u32> {
        self.terms.keys().map(|(a, b)| a + b).min()
    }

    /// Lowest-degree homogeneous part.
    pub fn initial_form(&self) -> BiPoly {
        let Some(o) = self.ord() else { return BiPoly::zero() };
        BiPoly { terms: self.terms.iter().filter(|((a, b), _)| a + b == o).map(|(k, v)| (*k, v.clone())).collect() }
    }

    pub fn total_degree(&self) -> Option<u32> {
        self.terms.keys().map(|(a, b)| a + b).max()
    }

    pub fn deg_y(&self) -> Option<u32> {
        self.terms.keys().map(|(_, b)| *b).max()
    }

    /// Largest power of `X` dividing the polynomial.
    pub fn delta_x(&self) -> u32 {
        self.terms.keys().map(|(a, _)| *a).min().unwrap_or(0)
    }

    pub fn delta_y(&self) -> u32 {
        self.terms.keys().map(|(_, b)| *b).min().unwrap_or(0)
    }

    pub fn div_x_pow(&self, k: u32) -> BiPoly {
        BiPoly { terms: self.terms.iter().map(|((a, b), v)| ((a - k, *b), v.clone())).collect() }
    }

    pub fn scale(&self, q: &Q) -> BiPoly {
        let mut out = BiPoly::zero();
        for ((a, b), v) in &self.terms {
            out.add_term(*a, *b, v * q);
        }
        out
    }

    pub fn add(&self, o: &BiPoly) -> BiPoly {
        let mut out = self.clone();
        for ((a, b), v) in &o.terms {
            out.add_term(*a, *b, v.clone());
        }
        out
    }

    pub fn sub(&self, o: &BiPoly) -> BiPoly {
        self.add(&o.scale(&-Q::one()))
    }

    pub fn mul(&self, o: &BiPoly) -> BiPoly {
        let mut out = BiPoly::zero();
        for ((a, b), v) in &self.terms {
            for ((c, d), w) in &o.terms {
                out.add_term(a + c, b + d, v * w);
            }
        }
        out
    }

    pub fn pow(&self, k: u32) -> BiPoly {
        (0..k).fold(BiPoly::constant(Q::one()), |acc, _| acc.mul(self))
    }

    pub fn deriv_y(&self) -> BiPoly {
        let mut out = BiPoly::zero();
        for ((a, b), v) in &self.terms {
            if *b > 0 {
                out.add_term(*a, b - 1, v * Q::from_integer((*b).into()));
            }
        }
        out
    }

    pub fn deriv_x(&self) -> BiPoly {
        let mut out = BiPoly::zero();
        for ((a, b), v) in &self.terms {
            if *a > 0 {
                out.add_term(a - 1, *b, v * Q::from_integer((*a).into()));
            }
        }
        out
    }

    /// `f(0, Y)` as a polynomial in `Y`.
    pub fn at_x0(&self) -> UPoly {
        let n = self.deg_y().unwrap_or(0) as usize;
        let mut c = vec![Q::zero(); n + 1];
        for ((a, b), v) in &self.terms {
            if *a == 0 {
                c[*b as usize] += v;
            }
        }
        UPoly::new(c)
    }

    /// `f(X, 0)` as a polynomial in `X`.
    pub fn at_y0(&self) -> UPoly {
        let n = self.terms.keys().map(|(a, _)| *a).max().unwrap_or(0) as usize;
        let mut c = vec![Q::zero(); n + 1];
        for ((a, b), v) in &self.terms {
            if *b == 0 {
                c[*a as usize] += v;
            }
        }
        UPoly::new(c)
    }

    /// Coefficients as a polynomial in `Y` over `Q[X]`.
    pub fn to_y_coeffs(&self) -> Vec<UPoly> {
        let Some(n) = self.deg_y() else { return Vec::new() };
        let mut raw: Vec<Vec<Q>> = vec![Vec::new(); n as usize + 1];
        for ((a, b), v) in &self.terms {
            let row = &mut raw[*b as usize];
            if row.len() <= *a as usize {
                row.resize(*a as usize + 1, Q::zero());
            }
            row[*a as usize] = v.clone();
        }
        raw.into_iter().map(UPoly::new).collect()
    }

    pub fn from_y_coeffs(c: &[UPoly]) -> BiPoly {
        let mut out = BiPoly::zero();
        for (b, p) in c.iter().enumerate() {
            for (a, v) in p.c.iter().enumerate() {
                out.add_term(a as u32, b as u32, v.clone());
            }
        }
        out
    }

    /// `f(aX + bY, cX + dY)`.
    pub fn substitute_linear(&self, a: &Q, b: &Q, c: &Q, d: &Q) -> BiPoly {
        let lx = BiPoly::monomial(a.clone(), 1, 0).add(&BiPoly::monomial(b.clone(), 0, 1));
        let ly = BiPoly::monomial(c.clone(), 1, 0).add(&BiPoly::monomial(d.clone(), 0, 1));
        let max_a = self.terms.keys().map(|k| k.0).max().unwrap_or(0);
        let max_b = self.terms.keys().map(|k| k.1).max().unwrap_or(0);
        let px = powers(&lx, max_a);
        let py = powers(&ly, max_b);
        let mut out = BiPoly::zero();
        for ((i, j), v) in &self.terms {
            out = out.add(&px[*i as usize].mul(&py[*j as usize]).scale(v));
        }
        out
    }

    /// Exact division; `None` when `d` does not divide.
    pub fn div_exact(&self, d: &BiPoly) -> Option<BiPoly> {
        let lead = |p: &BiPoly| p.terms.iter().max_by_key(|((a, b), _)| (*b, *a)).map(|(k, v)| (*k, v.clone()));
        let ((da, db), dv) = lead(d)?;
        let mut r = self.clone();
        let mut q = BiPoly::zero();
        while let Some(((ra, rb), rv)) = lead(&r) {
            if ra < da || rb < db {
                return None;
            }
            let t = BiPoly::monomial(rv / &dv, ra - da, rb - db);
            r = r.sub(&t.mul(d));
            q = q.add(&t);
        }
        Some(q)
    }
}

fn content(p: &[UPoly]) -> UPoly {
    p.iter().fold(UPoly::zero(), |acc, c| UPoly::gcd(&acc, c))
}

fn primitive(p: &[UPoly]) -> Vec<UPoly> {
    let c = content(p);
    p.iter().map(|x| x.div_exact(&c).expect("content divides")).collect()
}

fn trim(mut p: Vec<UPoly>) -> Vec<UPoly> {
    while p.last().is_some_and(UPoly::is_zero) {
        p.pop();
    }
    p
}

/// Pseudo-remainder of `a` by `b` in `Q[X][Y]`.
fn prem(a: &[UPoly], b: &[UPoly]) -> Vec<UPoly> {
    let mut r = a.to_vec();
    let db = b.len() - 1;
    let lb = b.last().unwrap().clone();
    while r.len() > db && !r.is_empty() {
        let lr = r.last().unwrap().clone();
        let shift = r.len() - 1 - db;
        r = r.iter().map(|c| &lb * c).collect();
        for (j, bj) in b.iter().enumerate() {
            r[shift + j] = &r[shift + j] - &(&lr * bj);
        }
        r = trim(r);
    }
    r
}

impl BiPoly {
    /// Greatest common divisor, normalized to a monic leading term in the
    /// order (Y-degree, X-degree). `gcd(0, 0) = 0`.
    pub fn gcd(a: &BiPoly, b: &BiPoly) -> BiPoly {
        if a.is_zero() {
            return b.normalized();
        }
        if b.is_zero() {
            return a.normalized();
        }
        let (ya, yb) = (a.to_y_coeffs(), b.to_y_coeffs());
        let c = UPoly::gcd(&content(&ya), &content(&yb));
        let (mut p, mut q) = (primitive(&ya), primitive(&yb));
        if p.len() < q.len() {
            std::mem::swap(&mut p, &mut q);
        }
        loop {
            if q.is_empty() {
                break;
            }
            if q.len() == 1 {
                p = vec![UPoly::one()];
                break;
            }
            let r = prem(&p, &q);
            p = q;
            q = if r.is_empty() { r } else { primitive(&r) };
        }
        let g: Vec<UPoly> = p.iter().map(|x| x * &c).collect();
        BiPoly::from_y_coeffs(&g).normalized()
    }

    /// `f(x, Y)` as a polynomial in `Y`.
    pub fn at_x(&self, x: &Q) -> UPoly {
        UPoly::new(self.to_y_coeffs().iter().map(|c| c.eval(x)).collect())
    }

    /// Whether `a` and `b` certainly share no factor of positive `Y`-degree.
    /// At an integer `x` where both leading coefficients survive, a constant
    /// `gcd(a(x,Y), b(x,Y))` forces the resultant to be nonzero. `false`
    /// means no such `x` was found among the first few, not that a common
    /// factor exists.
    pub fn coprime_in_y(a: &BiPoly, b: &BiPoly) -> bool {
        let (ya, yb) = (a.to_y_coeffs(), b.to_y_coeffs());
        let (Some(la), Some(lb)) = (ya.last(), yb.last()) else { return false };
        (0..32i64).map(crate::ext::qi).any(|x| {
            !la.eval(&x).is_zero() && !lb.eval(&x).is_zero() && UPoly::gcd(&a.at_x(&x), &b.at_x(&x)).is_constant()
        })
    }

    pub fn normalized(&self) -> BiPoly {
        match self.terms.iter().max_by_key(|((a, b), _)| (*b, *a)) {
            Some((_, lc)) => self.scale(&(Q::one() / lc)),
            None => self.clone(),
        }
    }

    pub fn is_constant(&self) -> bool {
        self.terms.keys().all(|k| *k == (0, 0))
    }
}

fn powers(p: &BiPoly, n: u32) -> Vec<BiPoly> {
    let mut out = vec![BiPoly::constant(Q::one())];
    for _ in 0..n {
        let next = out.last().unwrap().mul(p);
        out.push(next);
    }
    out
}

impl fmt::Display for BiPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        let mut keys: Vec<_> = self.terms.keys().copied().collect();
        keys.sort_by_key(|(a, b)| (std::cmp::Reverse(*b), *a));
        for (k, (a, b)) in keys.iter().enumerate() {
            let v = &self.terms[&(*a, *b)];
            let mut mono = Vec::new();
            for (name, e) in [("X", *a), ("Y", *b)] {
                match e {
                    0 => {}
                    1 => mono.push(name.to_string()),
                    _ => mono.push(format!("{name}^{e}")),
                }
            }
            let mono = mono.join("*");
            let neg = v.is_negative();
            let abs = v.abs();
            if k == 0 {
                if neg {
                    f.write_str("-")?;
                }
            } else {
                f.write_str(if neg { " - " } else { " + " })?;
            }
            if mono.is_empty() {
                f.write_str(&fmt_q(&abs))?;
            } else if abs.is_one() {
                f.write_str(&mono)?;
            } else {
                write!(f, "{}*{mono}", fmt_q(&abs))?;
            }
        }
        Ok(())
    }
}

#[derive(Debug, Clone)]
enum Expr {
    Num(BigInt),
    X,
    Y,
    Neg(Box<Expr>),
    Add(Box<Expr>, Box<Expr>),
    Sub(Box<Expr>, Box<Expr>),
    Mul(Box<Expr>, Box<Expr>),
    Div(Box<Expr>, Box<Expr>, usize),
    Pow(Box<Expr>, u32),
}

struct Parser<'a> {
    chars: Vec<(usize, char)>,
    i: usize,
    src: &'a str,
}

impl<'a> Parser<'a> {
    fn new(src: &'a str) -> Self {
        Parser { chars: src.char_indices().collect(), i: 0, src }
    }

    fn pos(&self) -> usize {
        self.chars.get(self.i).map(|c| c.0).unwrap_or(self.src.len())
    }

    fn err<T>(&self, msg: impl Into<String>) -> Result<T> {
        Err(Error::Syntax { pos: self.pos(), msg: msg.into() })
    }

    fn skip_ws(&mut self) {
        while self.chars.get(self.i).is_some_and(|c| c.1.is_whitespace()) {
            self.i += 1;
        }
    }

    fn peek(&mut self) -> Option<char> {
        self.skip_ws();
        self.chars.get(self.i).map(|c| match c.1 {
            '−' | '–' => '-',
            '·' | '×' => '*',
            other => other,
        })
    }

    fn expr(&mut self) -> Result<Expr> {
        let mut lhs = self.term()?;
        loop {
            match self.peek() {
                Some('+') => {
                    self.i += 1;
                    lhs = Expr::Add(Box::new(lhs), Box::new(self.term()?));
                }
                Some('-') => {
                    self.i += 1;
                    lhs = Expr::Sub(Box::new(lhs), Box::new(self.term()?));
                }
                _ => return Ok(lhs),
            }
        }
    }

    fn term(&mut self) -> Result<Expr> {
        let mut lhs = self.unary()?;
        loop {
            match self.peek() {
                Some('*') => {
                    self.i += 1;
                    lhs = Expr::Mul(Box::new(lhs), Box::new(self.unary()?));
                }
                Some('/') => {
                    self.i += 1;
                    let at = self.pos();
                    lhs = Expr::Div(Box::new(lhs), Box::new(self.unary()?), at);
                }
                _ => return Ok(lhs),
            }
        }
    }

    fn unary(&mut self) -> Result<Expr> {
        match self.peek() {
            Some('-') => {
                self.i += 1;
                Ok(Expr::Neg(Box::new(self.unary()?)))
            }
            Some('+') => {
                self.i += 1;
                self.unary()
            }
            _ => self.power(),
        }
    }

    fn power(&mut self) -> Result<Expr> {
        let base = self.atom()?;
        if self.peek() == Some('^') {
            self.i += 1;
            self.skip_ws();
            let start = self.i;
            while self.chars.get(self.i).is_some_and(|c| c.1.is_ascii_digit()) {
                self.i += 1;
            }
            if start == self.i {
                return self.err("expected a nonnegative integer exponent");
            }
            let s: String = self.chars[start..self.i].iter().map(|c| c.1).collect();
            let e: u32 = match s.parse() {
                Ok(e) if e <= 10_000 => e,
                _ => return self.err("exponent too large"),
            };
            return Ok(Expr::Pow(Box::new(base), e));
        }
        Ok(base)
    }

    fn atom(&mut self) -> Result<Expr> {
        match self.peek() {
            Some('X') | Some('x') => {
                self.i += 1;
                Ok(Expr::X)
            }
            Some('Y') | Some('y') => {
                self.i += 1;
                Ok(Expr::Y)
            }
            Some('(') => {
                self.i += 1;
                let e = self.expr()?;
                if self.peek() != Some(')') {
                    return self.err("expected ')'");
                }
                self.i += 1;
                Ok(e)
            }
            Some(c) if c.is_ascii_digit() => {
                let start = self.i;
                while self.chars.get(self.i).is_some_and(|c| c.1.is_ascii_digit()) {
                    self.i += 1;
                }
                let s: String = self.chars[start..self.i].iter().map(|c| c.1).collect();
                Ok(Expr::Num(s.parse().expect("digits parse")))
            }
            Some(c) => self.err(format!("unexpected character {c:?}")),
            None => self.err("unexpected end of input"),
        }
    }
}

fn eval(e: &Expr) -> Result<BiPoly> {
    Ok(match e {
        Expr::Num(n) => BiPoly::constant(Q::from_integer(n.clone())),
        Expr::X => BiPoly::x(),
        Expr::Y => BiPoly::y(),
        Expr::Neg(a) => eval(a)?.scale(&-Q::one()),
        Expr::Add(a, b) => eval(a)?.add(&eval(b)?),
        Expr::Sub(a, b) => eval(a)?.sub(&eval(b)?),
        Expr::Mul(a, b) => eval(a)?.mul(&eval(b)?),
        Expr::Div(a, b, pos) => {
            let d = eval(b)?;
            let c = d.constant_term();
            if d.terms.len() != 1 || c.is_zero() {
                return Err(Error::Syntax { pos: *pos, msg: "divisor must be a nonzero constant".into() });
            }
            eval(a)?.scale(&(Q::one() / c))
        }
        Expr::Pow(a, k) => eval(a)?.pow(*k),
    })
}

fn parse_expr(text: &str) -> Result<Expr> {
    let mut p = Parser::new(text);
    let e = p.expr()?;
    if p.peek().is_some() {
        return p.err("trailing input");
    }
    Ok(e)
}

pub fn parse_poly(text: &str) -> Result<BiPoly> {
    eval(&parse_expr(text)?)
}

/// The polynomial and its top-level product factors as written. Constant
/// factors are dropped.
pub fn parse_poly_factors(text: &str) -> Result<(BiPoly, Vec<BiPoly>)> {
    let e = parse_expr(text)?;
    let mut stack = vec![&e];
    let mut factors = Vec::new();
    while let Some(x) = stack.pop() {
        match x {
            Expr::Mul(a, b) => {
                stack.push(b);
                stack.push(a);
            }
            other => factors.push(eval(other)?),
        }
    }
    factors.retain(|f| f.total_degree().is_some_and(|d| d > 0));
    Ok((eval(&e)?, factors))
}
