//! Independent oracles for the branch invariants: the classical recursion
//! from Puiseux characteristic to semigroup, and the inversion formula for
//! roots given with the smaller exponent on the other axis.

use eggers::branch::{
    char_from_semigroup, gen_char_to_char, semigroup_from_char, validate_char, GenCharSeq, SemigroupSeq,
};
use eggers::ext::{qf, Q};
use num_integer::Integer;

/// Characteristic `(n; β₁, …, β_g)` with `n < β₁`, read off a generalized
/// sequence. When `b₁ < b₀` the roles of the axes swap.
fn puiseux_char(b: &[u64]) -> Vec<u64> {
    if b.len() == 1 || b[0] < b[1] {
        return b.to_vec();
    }
    let (n, m) = (b[1], b[0]);
    let mut out = vec![n];
    if m % n != 0 {
        out.push(m);
    }
    out.extend(b[2..].iter().map(|&x| x + m - n));
    out
}

/// `β̄₁ = β₁`, `β̄_k = n_{k−1} β̄_{k−1} + β_k − β_{k−1}` with `n_k = e_{k−1}/e_k`.
fn semigroup_of(ch: &[u64]) -> Vec<u64> {
    let e: Vec<u64> = (0..ch.len()).map(|j| ch[..=j].iter().fold(0u64, |a, &x| a.gcd(&x))).collect();
    let mut bar = ch[..ch.len().min(2)].to_vec();
    for k in 2..ch.len() {
        bar.push(e[k - 2] / e[k - 1] * bar[k - 1] + ch[k] - ch[k - 1]);
    }
    bar
}

/// `d_k = e_{k−1} β̄_k / β̄₀²`.
fn contacts_of(bar: &[u64]) -> Vec<Q> {
    let mut e = bar[0];
    let mut out = Vec::new();
    for &x in &bar[1..] {
        out.push(qf((e * x) as i64, (bar[0] * bar[0]) as i64));
        e = e.gcd(&x);
    }
    out
}

fn gen_sequences(b0: u64, max: u64) -> Vec<Vec<u64>> {
    fn grow(b: &mut Vec<u64>, e: u64, max: u64, out: &mut Vec<Vec<u64>>) {
        if e == 1 {
            out.push(b.clone());
            return;
        }
        let start = if b.len() == 1 { 1 } else { b[b.len() - 1] + 1 };
        for x in start..=max {
            let next = e.gcd(&x);
            if next < e {
                b.push(x);
                grow(b, next, max, out);
                b.pop();
            }
        }
    }
    let mut out = Vec::new();
    grow(&mut vec![b0], b0, max, &mut out);
    out
}

#[test]
fn worked_conversion() {
    let (c, chk) = gen_char_to_char(&GenCharSeq::new(vec![4, 6, 13])).unwrap();
    assert_eq!(semigroup_of(&[4, 6, 13]), vec![4, 6, 19]);
    assert_eq!(c.contacts, vec![qf(3, 2), qf(19, 8)]);
    assert_eq!(c.contacts, contacts_of(&[4, 6, 19]));
    assert!(chk.holds);
}

#[test]
fn conversion_matches_recursion_and_inversion() {
    let mut seen = 0;
    for b0 in 1..=12 {
        for b in gen_sequences(b0, 60) {
            let (c, chk) = gen_char_to_char(&GenCharSeq::new(b.clone())).unwrap();
            let ch = puiseux_char(&b);
            let bar = semigroup_of(&ch);
            assert_eq!(c.ord, ch[0], "{b:?}");
            assert_eq!(c.contacts, contacts_of(&bar), "{b:?}");
            assert!(chk.holds, "{b:?}: {chk:?}");
            assert!(validate_char(&c), "{b:?}");
            seen += 1;
        }
    }
    assert!(seen > 1000, "only {seen} sequences");
}

fn semigroups(b0: u64, max: u64) -> Vec<Vec<u64>> {
    fn grow(b: &mut Vec<u64>, gcds: &mut Vec<u64>, max: u64, out: &mut Vec<Vec<u64>>) {
        let e = *gcds.last().unwrap();
        if e == 1 {
            out.push(b.clone());
            return;
        }
        let k = b.len() - 1;
        let floor = if k == 0 { b[0] } else { gcds[k - 1] / gcds[k] * b[k] };
        for x in floor + 1..=max {
            let next = e.gcd(&x);
            if next < e {
                b.push(x);
                gcds.push(next);
                grow(b, gcds, max, out);
                b.pop();
                gcds.pop();
            }
        }
    }
    let mut out = Vec::new();
    grow(&mut vec![b0], &mut vec![b0], max, &mut out);
    out
}

#[test]
fn semigroup_roundtrip_exhaustive() {
    let mut seen = 0;
    for b0 in 1..=12 {
        for s in semigroups(b0, 200) {
            let c = char_from_semigroup(&SemigroupSeq::new(s.clone())).unwrap();
            assert_eq!(c.ord, b0);
            assert_eq!(c.contacts, contacts_of(&s), "{s:?}");
            assert_eq!(semigroup_from_char(&c).unwrap().betas, s);
            seen += 1;
        }
    }
    assert!(seen > 1000, "only {seen} semigroups");
}

#[test]
fn non_minimal_semigroups_rejected() {
    // 2·6 ≥ 12 breaks minimality; 4, 6, 8 never reaches gcd 1.
    for bad in [vec![4, 6, 12, 13], vec![4, 6, 8], vec![6, 4, 5], vec![0]] {
        assert!(char_from_semigroup(&SemigroupSeq::new(bad.clone())).is_err(), "{bad:?}");
    }
}
