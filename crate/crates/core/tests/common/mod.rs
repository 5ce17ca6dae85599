//! Oracles shared by the integration tests. Nothing here calls into the
//! engine's Gröbner or division code.

#![allow(dead_code)]

use std::collections::BTreeMap;
use std::sync::Arc;

use blowup_core::algebra::{Monomial, MonomialOrder, Polynomial, Rational, VarContext};
use blowup_core::blowup::ResolutionTree;
use num_traits::{One, Zero};
use rand::Rng;
use rand_chacha::ChaCha8Rng;

pub fn random_poly(rng: &mut ChaCha8Rng, ctx: &Arc<VarContext>, max_deg: u32, max_terms: usize) -> Polynomial {
    let n = ctx.len();
    let k = rng.gen_range(1..=max_terms);
    let terms = (0..k).map(|_| {
        let deg = rng.gen_range(0..=max_deg);
        let mut e = vec![0u32; n];
        for _ in 0..deg {
            e[rng.gen_range(0..n)] += 1;
        }
        let c = loop {
            let c: i64 = rng.gen_range(-3..=3);
            if c != 0 {
                break c;
            }
        };
        (Monomial::from_exponents(e), Rational::from_integer(c.into()))
    });
    Polynomial::from_terms(ctx, terms)
}

pub fn random_point(rng: &mut ChaCha8Rng, n: usize) -> Vec<Rational> {
    (0..n).map(|_| Rational::new(rng.gen_range(-4i64..=4).into(), rng.gen_range(1i64..=3).into())).collect()
}

/// Exponent vectors of total degree `≤ d` in `n` variables.
pub fn monomials_up_to(n: usize, d: u32) -> Vec<Vec<u32>> {
    if n == 0 {
        return vec![vec![]];
    }
    let mut out = Vec::new();
    for k in 0..=d {
        for mut rest in monomials_up_to(n - 1, d - k) {
            rest.insert(0, k);
            out.push(rest);
        }
    }
    out
}

/// Solvability of `A x = b` over the rationals by Gaussian elimination.
pub fn solvable(mut rows: Vec<Vec<Rational>>) -> bool {
    let cols = rows.first().map_or(0, |r| r.len() - 1);
    let mut r = 0;
    for c in 0..cols {
        let Some(p) = (r..rows.len()).find(|&i| !rows[i][c].is_zero()) else { continue };
        rows.swap(r, p);
        let piv = rows[r][c].clone();
        for x in rows[r].iter_mut() {
            *x = &*x / &piv;
        }
        for i in 0..rows.len() {
            if i != r && !rows[i][c].is_zero() {
                let f = rows[i][c].clone();
                for j in c..=cols {
                    let v = &rows[r][j] * &f;
                    rows[i][j] -= v;
                }
            }
        }
        r += 1;
    }
    rows[r..].iter().all(|row| row[cols].is_zero())
}

/// `f = Σ a_i g_i` with `deg a_i ≤ bound`, decided by linear algebra.
pub fn member_by_linear_algebra(f: &Polynomial, gens: &[Polynomial], bound: u32) -> bool {
    let n = f.ctx().len();
    let cofactor_monos = monomials_up_to(n, bound);
    let mut unknowns: Vec<(usize, &Vec<u32>)> = Vec::new();
    for i in 0..gens.len() {
        for m in &cofactor_monos {
            unknowns.push((i, m));
        }
    }
    let mut eqs: BTreeMap<Vec<u32>, Vec<Rational>> = BTreeMap::new();
    let width = unknowns.len() + 1;
    for (u, (i, m)) in unknowns.iter().enumerate() {
        for (gm, c) in gens[*i].terms() {
            let mu: Vec<u32> = gm.exponents().iter().zip(m.iter()).map(|(a, b)| a + b).collect();
            let row = eqs.entry(mu).or_insert_with(|| vec![Rational::zero(); width]);
            row[u] += c.clone();
        }
    }
    for (fm, c) in f.terms() {
        let row = eqs.entry(fm.exponents().to_vec()).or_insert_with(|| vec![Rational::zero(); width]);
        row[width - 1] += c.clone();
    }
    solvable(eqs.into_values().collect())
}

fn lead(p: &Polynomial, o: &MonomialOrder) -> (Vec<u32>, Rational) {
    let (m, c) = p.leading(o).expect("nonzero");
    (m.exponents().to_vec(), c.clone())
}

fn divides(a: &[u32], b: &[u32]) -> bool {
    a.iter().zip(b).all(|(x, y)| x <= y)
}

/// Remainder of `f` modulo `basis`, by the textbook loop.
pub fn remainder(f: &Polynomial, basis: &[Polynomial], o: &MonomialOrder) -> Polynomial {
    let ctx = f.ctx().clone();
    let mut p = f.clone();
    let mut r = Polynomial::zero(&ctx);
    while !p.is_zero() {
        let (m, c) = lead(&p, o);
        match basis.iter().find(|g| divides(&lead(g, o).0, &m)) {
            Some(g) => {
                let (gm, gc) = lead(g, o);
                let q: Vec<u32> = m.iter().zip(&gm).map(|(a, b)| a - b).collect();
                let t = Polynomial::term(&ctx, &c / &gc, Monomial::from_exponents(q));
                p = &p - &(&t * g);
            }
            None => {
                let t = Polynomial::term(&ctx, c, Monomial::from_exponents(m));
                r = &r + &t;
                p = &p - &t;
            }
        }
    }
    r
}

pub fn s_pair(f: &Polynomial, g: &Polynomial, o: &MonomialOrder) -> Polynomial {
    let ctx = f.ctx().clone();
    let (fm, fc) = lead(f, o);
    let (gm, gc) = lead(g, o);
    let l: Vec<u32> = fm.iter().zip(&gm).map(|(a, b)| *a.max(b)).collect();
    let mf: Vec<u32> = l.iter().zip(&fm).map(|(a, b)| a - b).collect();
    let mg: Vec<u32> = l.iter().zip(&gm).map(|(a, b)| a - b).collect();
    let a = &Polynomial::term(&ctx, fc.recip(), Monomial::from_exponents(mf)) * f;
    let b = &Polynomial::term(&ctx, gc.recip(), Monomial::from_exponents(mg)) * g;
    &a - &b
}

/// Checks the chart-gluing identities of every non-empty step of `t`:
/// the total transform is a power of the exceptional variable times the
/// strict transform, and on the overlap of two charts of the same blow-up
/// the two chart maps agree at random points.
pub fn check_gluing(t: &ResolutionTree, rng: &mut ChaCha8Rng) -> Result<usize, String> {
    let mut checked = 0;
    for s in t.steps.iter().filter(|s| !s.empty) {
        let parent = t.chart(&s.parent);
        let fixed = s.center.alignment().map_err(|e| e.to_string())?;
        let center: Vec<usize> = fixed.iter().map(|(v, _)| *v).collect();
        for id in &s.children {
            let c = t.chart(id);
            let (_, sigma) = c.parent.as_ref().ok_or("orphan chart")?;
            let e = c.exceptional_var.ok_or("no exceptional variable")?;
            if !parent.is_ambient() {
                let total = sigma.apply(&parent.equation);
                let k = total.terms().map(|(m, _)| m.exp(e)).min().unwrap_or(0);
                let m = Polynomial::term(&c.ctx, Rational::one(), Monomial::var(c.ctx.len(), e, k));
                if &c.equation * &m != total {
                    return Err(format!("total transform on `{id}` is not e^k times the strict transform"));
                }
            }
            for other in &s.children {
                if other == id {
                    continue;
                }
                let d = t.chart(other);
                let (_, tau) = d.parent.as_ref().unwrap();
                let k = d.exceptional_var.unwrap();
                for _ in 0..4 {
                    let p = random_point(rng, c.ctx.len());
                    if p[k].is_zero() {
                        continue;
                    }
                    let mut q = p.clone();
                    for &i in &center {
                        q[i] = if i == k {
                            &p[e] * &p[k]
                        } else if i == e {
                            p[k].recip()
                        } else {
                            &p[i] / &p[k]
                        };
                    }
                    for v in 0..parent.ctx.len() {
                        if sigma.image_of(v).eval(&p) != tau.image_of(v).eval(&q) {
                            return Err(format!("charts `{id}` and `{other}` disagree on the overlap"));
                        }
                    }
                    checked += 1;
                }
            }
        }
    }
    Ok(checked)
}
