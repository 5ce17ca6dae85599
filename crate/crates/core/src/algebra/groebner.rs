//! Multivariate division and Buchberger's algorithm with the product and
//! chain criteria for discarding pairs.

use num_traits::Zero;

use super::monomial::{Monomial, MonomialOrder};
use super::poly::Polynomial;

/// Result of dividing `f` by a list of polynomials:
/// `f = sum(quotients[i] * basis[i]) + remainder`.
#[derive(Clone, Debug)]
pub struct Division {
    pub quotients: Vec<Polynomial>,
    pub remainder: Polynomial,
}

pub fn divide(f: &Polynomial, basis: &[Polynomial], order: &MonomialOrder) -> Division {
    let leads: Vec<Option<(Monomial, _)>> = basis
        .iter()
        .map(|b| b.leading(order).map(|(m, c)| (m.clone(), c.clone())))
        .collect();
    let mut quotients: Vec<Polynomial> = basis.iter().map(|_| Polynomial::zero(f.ctx())).collect();
    let mut remainder = Polynomial::zero(f.ctx());
    let mut p = f.clone();
    while let Some((m, c)) = p.leading(order).map(|(m, c)| (m.clone(), c.clone())) {
        let hit = leads.iter().enumerate().find_map(|(i, l)| match l {
            Some((lm, lc)) if lm.divides(&m) => Some((i, lm, lc)),
            _ => None,
        });
        match hit {
            Some((i, lm, lc)) => {
                let qm = m.div(lm);
                let qc = &c / lc;
                p.sub_scaled(&qc, &qm, &basis[i]);
                quotients[i].add_term(qm, qc);
            }
            None => {
                p.add_term(m.clone(), -c.clone());
                remainder.add_term(m, c);
            }
        }
    }
    Division { quotients, remainder }
}

/// Remainder of `f` on division by `basis`.
pub fn normal_form(f: &Polynomial, basis: &[Polynomial], order: &MonomialOrder) -> Polynomial {
    divide(f, basis, order).remainder
}

pub fn s_polynomial(f: &Polynomial, g: &Polynomial, order: &MonomialOrder) -> Polynomial {
    let (mf, cf) = f.leading(order).expect("nonzero");
    let (mg, cg) = g.leading(order).expect("nonzero");
    let l = mf.lcm(mg);
    let a = f.mul_monomial(&cf.recip(), &l.div(mf));
    let b = g.mul_monomial(&cg.recip(), &l.div(mg));
    &a - &b
}

#[derive(Clone, Debug)]
struct Pair {
    i: usize,
    j: usize,
    lcm: Monomial,
}

/// Reduced Gröbner basis of the ideal generated by `gens`; monic, sorted by
/// descending leading monomial. The zero ideal yields an empty basis.
pub fn groebner_basis(gens: &[Polynomial], order: &MonomialOrder) -> Vec<Polynomial> {
    let mut basis: Vec<Polynomial> = Vec::new();
    for g in gens {
        let r = normal_form(g, &basis, order);
        if !r.is_zero() {
            basis.push(r.monic(order));
        }
    }
    if basis.iter().any(Polynomial::is_constant) {
        let ctx = basis[0].ctx().clone();
        return vec![Polynomial::one(&ctx)];
    }
    let lm = |p: &Polynomial| p.leading_monomial(order).unwrap().clone();
    let mut leads: Vec<Monomial> = basis.iter().map(lm).collect();
    let mut pairs: Vec<Pair> = Vec::new();
    let mut done: std::collections::HashSet<(usize, usize)> = Default::default();
    for j in 0..basis.len() {
        for i in 0..j {
            pairs.push(Pair { i, j, lcm: leads[i].lcm(&leads[j]) });
        }
    }
    while !pairs.is_empty() {
        // normal selection strategy: smallest lcm first
        let (idx, _) = pairs
            .iter()
            .enumerate()
            .min_by(|a, b| order.compare(&a.1.lcm, &b.1.lcm).then(a.1.j.cmp(&b.1.j)))
            .unwrap();
        let pair = pairs.swap_remove(idx);
        done.insert((pair.i, pair.j));
        if leads[pair.i].is_coprime(&leads[pair.j]) {
            continue;
        }
        if chain_criterion(&pair, &leads, &done) {
            continue;
        }
        let s = s_polynomial(&basis[pair.i], &basis[pair.j], order);
        let r = normal_form(&s, &basis, order);
        if r.is_zero() {
            continue;
        }
        let r = r.monic(order);
        if r.is_constant() {
            return vec![Polynomial::one(r.ctx())];
        }
        let new_lead = lm(&r);
        let k = basis.len();
        basis.push(r);
        leads.push(new_lead);
        for i in 0..k {
            pairs.push(Pair { i, j: k, lcm: leads[i].lcm(&leads[k]) });
        }
    }
    reduce_basis(basis, order)
}

fn chain_criterion(p: &Pair, leads: &[Monomial], done: &std::collections::HashSet<(usize, usize)>) -> bool {
    let key = |a: usize, b: usize| if a < b { (a, b) } else { (b, a) };
    (0..leads.len()).any(|k| {
        k != p.i
            && k != p.j
            && leads[k].divides(&p.lcm)
            && done.contains(&key(p.i, k))
            && done.contains(&key(p.j, k))
    })
}

/// Minimalizes and inter-reduces a Gröbner basis.
pub fn reduce_basis(basis: Vec<Polynomial>, order: &MonomialOrder) -> Vec<Polynomial> {
    let mut basis: Vec<Polynomial> = basis.into_iter().filter(|p| !p.is_zero()).collect();
    basis.sort_by(|a, b| order.compare(a.leading_monomial(order).unwrap(), b.leading_monomial(order).unwrap()));
    let mut minimal: Vec<Polynomial> = Vec::new();
    for p in basis {
        let m = p.leading_monomial(order).unwrap().clone();
        if !minimal.iter().any(|q| q.leading_monomial(order).unwrap().divides(&m)) {
            minimal.push(p);
        }
    }
    let mut reduced = Vec::with_capacity(minimal.len());
    for i in 0..minimal.len() {
        let others: Vec<Polynomial> =
            minimal.iter().enumerate().filter(|(j, _)| *j != i).map(|(_, q)| q.clone()).collect();
        let r = normal_form(&minimal[i], &others, order);
        reduced.push(r.monic(order));
    }
    reduced.sort_by(|a, b| {
        order.compare(b.leading_monomial(order).unwrap(), a.leading_monomial(order).unwrap())
    });
    reduced
}

/// True iff every S-polynomial of `basis` reduces to zero modulo `basis`.
pub fn is_groebner(basis: &[Polynomial], order: &MonomialOrder) -> bool {
    for j in 0..basis.len() {
        for i in 0..j {
            if basis[i].is_zero() || basis[j].is_zero() {
                continue;
            }
            let s = s_polynomial(&basis[i], &basis[j], order);
            if !normal_form(&s, basis, order).is_zero() {
                return false;
            }
        }
    }
    true
}

/// True iff no term of any element is divisible by another element's leading
/// monomial and all elements are monic.
pub fn is_reduced(basis: &[Polynomial], order: &MonomialOrder) -> bool {
    for (i, p) in basis.iter().enumerate() {
        match p.leading(order) {
            Some((_, c)) if c.is_zero() => return false,
            Some((_, c)) if *c != num_rational::BigRational::from_integer(1.into()) => return false,
            None => return false,
            _ => {}
        }
        for (j, q) in basis.iter().enumerate() {
            if i == j {
                continue;
            }
            let lq = q.leading_monomial(order).unwrap();
            if p.terms().any(|(m, _)| lq.divides(m)) {
                return false;
            }
        }
    }
    true
}
