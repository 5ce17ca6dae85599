//! Decomposition of a zero set into coordinate-aligned pieces: linear
//! subspaces `{v = a for v ∉ T}` parallel to a set `T` of free coordinates.

use std::collections::BTreeMap;
use std::sync::Arc;

use crate::algebra::{Ideal, Monomial, Point, Polynomial, Rational, VarContext};
use crate::error::{Error, Result};

use super::points::rational_points;

/// An affine-linear component parallel to the `free` coordinates.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub struct AlignedComponent {
    /// Fixed coordinates `(variable, value)`, ascending by variable.
    pub fixed: Vec<(usize, Rational)>,
    pub free: Vec<usize>,
}

impl AlignedComponent {
    pub fn dim(&self) -> usize {
        self.free.len()
    }

    pub fn ideal(&self, ctx: &Arc<VarContext>) -> Ideal {
        if self.fixed.is_empty() {
            return Ideal::zero(ctx);
        }
        Ideal::from_gens(self.generators(ctx))
    }

    /// `v - a` for every fixed coordinate.
    pub fn generators(&self, ctx: &Arc<VarContext>) -> Vec<Polynomial> {
        self.fixed
            .iter()
            .map(|(v, a)| &Polynomial::var(ctx, *v) - &Polynomial::constant(ctx, a.clone()))
            .collect()
    }

    pub fn from_point(p: &Point) -> Self {
        AlignedComponent { fixed: p.values().into_iter().enumerate().collect(), free: Vec::new() }
    }

    /// The point of a zero-dimensional component.
    pub fn point(&self, ctx: &VarContext) -> Option<Point> {
        if !self.free.is_empty() {
            return None;
        }
        Some(Point::new(ctx, self.fixed.iter().map(|(_, a)| a.clone()).collect()))
    }

    pub fn contains(&self, p: &Point) -> bool {
        let vals = p.values();
        self.fixed.iter().all(|(v, a)| vals[*v] == *a)
    }
}

/// Irreducible components of `V(ideal) ∩ D(inverted)` (closure in the chart),
/// each of which must be coordinate-aligned. Sorted by decreasing dimension,
/// then by coordinates.
pub fn aligned_locus(ideal: &Ideal, inverted: &[Polynomial]) -> Result<Vec<AlignedComponent>> {
    let ctx = ideal.ctx().clone();
    let n = ctx.len();
    let mut rest = ideal.saturate_all(inverted)?;
    let mut found: Vec<AlignedComponent> = Vec::new();
    if rest.is_zero() {
        return Ok(vec![AlignedComponent { fixed: Vec::new(), free: (0..n).collect() }]);
    }
    for dim in (1..n).rev() {
        if rest.is_unit() {
            break;
        }
        let mut layer = Vec::new();
        for free in subsets(n, dim) {
            let k = coefficient_ideal(&rest, &free);
            if k.is_unit() {
                continue;
            }
            // solve for the fixed coordinates only
            let fixed_vars: Vec<usize> = (0..n).filter(|v| !free.contains(v)).collect();
            let sub = restrict_to(&k, &fixed_vars)?;
            let pts = match rational_points(&sub) {
                Ok(p) => p,
                Err(Error::NotZeroDimensional(_)) => {
                    return Err(Error::NonAlignedCenter(ideal.canonical()));
                }
                Err(e) => return Err(e),
            };
            for p in pts {
                let vals = p.values();
                let fixed = fixed_vars.iter().copied().zip(vals).collect();
                layer.push(AlignedComponent { fixed, free: free.clone() });
            }
        }
        for c in &layer {
            rest = saturate_by_ideal(&rest, &c.generators(&ctx))?;
        }
        found.extend(layer);
    }
    if !rest.is_unit() {
        let pts = match rational_points(&rest) {
            Ok(p) => p,
            Err(Error::NotZeroDimensional(_)) => return Err(Error::NonAlignedCenter(ideal.canonical())),
            Err(e) => return Err(e),
        };
        found.extend(pts.iter().map(AlignedComponent::from_point));
    }
    found.sort_by(|a, b| b.dim().cmp(&a.dim()).then_with(|| a.cmp(b)));
    Ok(found)
}

/// `J : (g_1, …, g_k)^∞ = ∩ J : g_i^∞`.
pub fn saturate_by_ideal(j: &Ideal, gens: &[Polynomial]) -> Result<Ideal> {
    let mut acc: Option<Ideal> = None;
    for g in gens {
        let s = j.saturate(g)?;
        acc = Some(match acc {
            None => s,
            Some(a) => a.intersect(&s),
        });
    }
    Ok(acc.unwrap_or_else(|| j.clone()))
}

/// Coefficients of every generator with respect to the monomials in the
/// `free` variables; their common zeros are the fixed-coordinate values of
/// linear spaces parallel to `free` inside `V(j)`.
fn coefficient_ideal(j: &Ideal, free: &[usize]) -> Ideal {
    let ctx = j.ctx();
    let mut gens = Vec::new();
    for g in j.groebner() {
        let mut by_free: BTreeMap<Vec<u32>, Polynomial> = BTreeMap::new();
        for (m, c) in g.terms() {
            let key: Vec<u32> = free.iter().map(|&v| m.exp(v)).collect();
            let mut exps = m.exponents().to_vec();
            for &v in free {
                exps[v] = 0;
            }
            by_free
                .entry(key)
                .or_insert_with(|| Polynomial::zero(ctx))
                .add_term(Monomial::from_exponents(exps), c.clone());
        }
        gens.extend(by_free.into_values());
    }
    if gens.is_empty() {
        Ideal::zero(ctx)
    } else {
        Ideal::from_gens(gens)
    }
}

fn restrict_to(k: &Ideal, vars: &[usize]) -> Result<Ideal> {
    let names: Vec<&str> = vars.iter().map(|&v| k.ctx().name(v)).collect();
    let sub = VarContext::new(&names)?;
    let mut map = vec![0; k.ctx().len()];
    for (i, &v) in vars.iter().enumerate() {
        map[v] = i;
    }
    Ok(Ideal::from_gens(k.gens().iter().map(|g| g.embed(&sub, &map)).collect()))
}

fn subsets(n: usize, k: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut cur = Vec::new();
    fn go(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for v in start..n {
            cur.push(v);
            go(v + 1, n, k, cur, out);
            cur.pop();
        }
    }
    go(0, n, k, &mut cur, &mut out);
    out
}
