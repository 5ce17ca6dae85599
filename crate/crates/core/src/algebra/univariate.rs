//! Dense univariate helpers: coefficient extraction, Euclidean gcd and
//! rational-root search by the rational root theorem.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::poly::Polynomial;
use super::Rational;

/// Coefficients (constant term first) of a polynomial that involves at most
/// the variable `var`.
pub fn coefficients(p: &Polynomial, var: usize) -> Vec<Rational> {
    let deg = p.degree_in(var) as usize;
    let mut c = vec![Rational::zero(); deg + 1];
    for (m, k) in p.terms() {
        debug_assert!(m.support().all(|v| v == var));
        c[m.exp(var) as usize] += k;
    }
    trim(c)
}

fn trim(mut c: Vec<Rational>) -> Vec<Rational> {
    while c.len() > 1 && c.last().unwrap().is_zero() {
        c.pop();
    }
    c
}

pub fn degree(c: &[Rational]) -> Option<usize> {
    if c.iter().all(Zero::is_zero) {
        None
    } else {
        Some(c.len() - 1)
    }
}

fn rem(a: &[Rational], b: &[Rational]) -> Vec<Rational> {
    let db = degree(b).expect("nonzero divisor");
    let mut r = a.to_vec();
    while let Some(dr) = degree(&r) {
        if dr < db {
            break;
        }
        let q = &r[dr] / &b[db];
        for i in 0..=db {
            let t = &q * &b[i];
            r[dr - db + i] -= t;
        }
        r = trim(r);
    }
    trim(r)
}

/// Monic gcd; zero stays zero.
pub fn gcd(a: &[Rational], b: &[Rational]) -> Vec<Rational> {
    let (mut x, mut y) = (trim(a.to_vec()), trim(b.to_vec()));
    while degree(&y).is_some() {
        let r = rem(&x, &y);
        x = y;
        y = r;
    }
    match degree(&x) {
        None => x,
        Some(d) => {
            let lc = x[d].clone();
            x.into_iter().map(|c| c / &lc).collect()
        }
    }
}

/// Divides out `(t - r)` once; `r` must be a root.
fn deflate(c: &[Rational], r: &Rational) -> Vec<Rational> {
    let d = c.len() - 1;
    let mut out = vec![Rational::zero(); d];
    let mut acc = Rational::zero();
    for i in (1..=d).rev() {
        acc = &acc * r + &c[i];
        out[i - 1] = acc.clone();
    }
    out
}

pub fn eval(c: &[Rational], x: &Rational) -> Rational {
    c.iter().rev().fold(Rational::zero(), |acc, k| acc * x + k)
}

fn divisors(n: &BigInt) -> Vec<BigInt> {
    let n = n.abs();
    let mut small = Vec::new();
    let mut large = Vec::new();
    let mut d = BigInt::one();
    while &d * &d <= n {
        if n.is_multiple_of(&d) {
            small.push(d.clone());
            let q = &n / &d;
            if q != d {
                large.push(q);
            }
        }
        d += 1;
    }
    small.extend(large.into_iter().rev());
    small
}

/// Distinct rational roots (ascending) and the cofactor left after removing
/// every rational root with multiplicity.
pub fn rational_roots(c: &[Rational]) -> (Vec<Rational>, Vec<Rational>) {
    let mut c = trim(c.to_vec());
    let mut roots = Vec::new();
    if degree(&c).is_none() {
        return (roots, c);
    }
    while c.len() > 1 && c[0].is_zero() {
        if !roots.contains(&Rational::zero()) {
            roots.push(Rational::zero());
        }
        c.remove(0);
    }
    if c.len() > 1 {
        let mut den = BigInt::one();
        for k in &c {
            den = den.lcm(k.denom());
        }
        let ints: Vec<BigInt> = c.iter().map(|k| k.numer() * (&den / k.denom())).collect();
        let ps = divisors(&ints[0]);
        let qs = divisors(ints.last().unwrap());
        let mut candidates: Vec<Rational> = Vec::new();
        for p in &ps {
            for q in &qs {
                for s in [1, -1] {
                    let r = Rational::new(p * s, q.clone());
                    if !candidates.contains(&r) {
                        candidates.push(r);
                    }
                }
            }
        }
        for r in candidates {
            let mut found = false;
            while c.len() > 1 && eval(&c, &r).is_zero() {
                c = deflate(&c, &r);
                found = true;
            }
            if found {
                roots.push(r);
            }
        }
    }
    roots.sort();
    (roots, c)
}
