//! Intersection multiplicity at the origin through the `Y`-resultant.

use num_traits::{One, Zero};

use super::bipoly::BiPoly;
use super::upoly::UPoly;
use crate::ext::{qu, Q};

/// Largest shear tried before giving up; generic positions come much sooner.
const MAX_SHEAR: u64 = 64;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Intersection {
    /// `None` when the curves share a component through the origin.
    pub value: Option<u64>,
    /// The `c` of the substitution `X → X + cY` that was applied.
    pub shear: u64,
}

/// Determinant over `Q[X]` by fraction-free elimination with row pivoting.
fn bareiss(mut m: Vec<Vec<UPoly>>) -> UPoly {
    let n = m.len();
    if n == 0 {
        return UPoly::one();
    }
    let mut sign = false;
    let mut prev = UPoly::one();
    for k in 0..n - 1 {
        if m[k][k].is_zero() {
            match (k + 1..n).find(|&i| !m[i][k].is_zero()) {
                Some(i) => {
                    m.swap(k, i);
                    sign = !sign;
                }
                None => return UPoly::zero(),
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let v = &(&m[i][j] * &m[k][k]) - &(&m[i][k] * &m[k][j]);
                m[i][j] = v.div_exact(&prev).expect("Bareiss division is exact");
            }
        }
        prev = m[k][k].clone();
    }
    let d = m[n - 1][n - 1].clone();
    if sign {
        -&d
    } else {
        d
    }
}

/// `Res_Y(f, g)` through the Sylvester matrix.
pub fn resultant_y(f: &BiPoly, g: &BiPoly) -> UPoly {
    let (a, b) = (f.to_y_coeffs(), g.to_y_coeffs());
    let (m, n) = (a.len().saturating_sub(1), b.len().saturating_sub(1));
    let size = m + n;
    let mut rows = Vec::with_capacity(size);
    for i in 0..n {
        let mut row = vec![UPoly::zero(); size];
        for (j, c) in a.iter().rev().enumerate() {
            row[i + j] = c.clone();
        }
        rows.push(row);
    }
    for i in 0..m {
        let mut row = vec![UPoly::zero(); size];
        for (j, c) in b.iter().rev().enumerate() {
            row[i + j] = c.clone();
        }
        rows.push(row);
    }
    bareiss(rows)
}

fn shear(f: &BiPoly, c: u64) -> BiPoly {
    if c == 0 {
        return f.clone();
    }
    f.substitute_linear(&Q::one(), &qu(c), &Q::zero(), &Q::one())
}

/// `Y`-stripped part of `f(0, Y)`.
fn off_origin(f: &BiPoly) -> Option<UPoly> {
    let p = f.at_x0();
    let k = p.ord()?;
    Some(p.shift_down(k))
}

/// `(f, g)₀`, infinite exactly when `f` and `g` share a factor vanishing at
/// the origin.
pub fn intersection_mult(f: &BiPoly, g: &BiPoly) -> Intersection {
    if f.is_zero() || g.is_zero() {
        return Intersection { value: None, shear: 0 };
    }
    if !f.constant_term().is_zero() || !g.constant_term().is_zero() {
        return Intersection { value: Some(0), shear: 0 };
    }
    // A common factor free of `Y` only matters when it is `X` itself.
    let h = if BiPoly::coprime_in_y(f, g) {
        if f.delta_x() > 0 && g.delta_x() > 0 {
            return Intersection { value: None, shear: 0 };
        }
        BiPoly::constant(Q::one())
    } else {
        BiPoly::gcd(f, g)
    };
    if !h.is_constant() && h.constant_term().is_zero() {
        return Intersection { value: None, shear: 0 };
    }
    let (f, g) = if h.is_constant() {
        (f.clone(), g.clone())
    } else {
        (f.div_exact(&h).expect("gcd divides"), g.div_exact(&h).expect("gcd divides"))
    };
    for c in 0..=MAX_SHEAR {
        let (fc, gc) = (shear(&f, c), shear(&g, c));
        let lc_ok = |p: &BiPoly| p.to_y_coeffs().last().is_some_and(|l| !l.coeff(0).is_zero());
        if !lc_ok(&fc) && !lc_ok(&gc) {
            continue;
        }
        let (Some(pf), Some(pg)) = (off_origin(&fc), off_origin(&gc)) else { continue };
        if !UPoly::gcd(&pf, &pg).is_constant() {
            continue;
        }
        let r = resultant_y(&fc, &gc);
        let value = r.ord().expect("coprime polynomials have a nonzero resultant") as u64;
        return Intersection { value: Some(value), shear: c };
    }
    panic!("no shear up to {MAX_SHEAR} separates the curves at the origin");
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::newton::bipoly::parse_poly;

    fn im(a: &str, b: &str) -> Option<u64> {
        intersection_mult(&parse_poly(a).unwrap(), &parse_poly(b).unwrap()).value
    }

    #[test]
    fn examples() {
        assert_eq!(im("Y^2 - X", "Y^2 + X"), Some(2));
        assert_eq!(im("Y", "X"), Some(1));
        assert_eq!(im("Y^5 + X^2", "Y"), Some(2));
        assert_eq!(im("Y^5 + X^2", "X"), Some(5));
        // g ≡ X⁵ modulo f, so (f, g) = 5·(f, X).
        assert_eq!(im("Y^2 - X^3", "Y^2 - X^3 + X^5"), Some(10));
        assert_eq!(im("Y - 1", "X"), Some(0));
        assert_eq!(im("Y*(X + 1)", "Y*X + Y^2"), None);
        assert_eq!(im("X", "X*(Y - 1) + X^2"), None);
    }

    #[test]
    fn shear_handles_vertical_components() {
        // `X` and `X - Y^2` meet with multiplicity 2 and need no special case.
        assert_eq!(im("X", "X - Y^2"), Some(2));
        // Both curves have a root escaping to infinity over `X = 0`.
        let r = intersection_mult(&parse_poly("X*Y^2 + Y + X").unwrap(), &parse_poly("X*Y^2 - Y + X^2").unwrap());
        assert_eq!(r.value, Some(1));
        assert!(r.shear > 0);
    }

    #[test]
    fn determinant() {
        let m = vec![
            vec![UPoly::constant(qu(0)), UPoly::constant(qu(1))],
            vec![UPoly::constant(qu(1)), UPoly::constant(qu(0))],
        ];
        assert_eq!(bareiss(m), UPoly::constant(-qu(1)));
    }
}
