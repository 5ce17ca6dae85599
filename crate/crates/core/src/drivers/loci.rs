//! Order loci shared by the drivers.

use std::sync::Arc;

use crate::algebra::{Ideal, Point, Polynomial, VarContext};
use crate::blowup::ResolutionTree;
use crate::error::Result;
use crate::geometry::{aligned_locus, AlignedComponent, Chart};

/// Generators of `J` plus all partial derivatives of order `≤ k` in `vars`.
pub fn derivative_closure(gens: &[Polynomial], vars: &[usize], k: u32) -> Vec<Polynomial> {
    let mut cur: Vec<Polynomial> = gens.iter().filter(|g| !g.is_zero()).cloned().collect();
    for _ in 0..k {
        let mut next = cur.clone();
        for g in &cur {
            for &v in vars {
                let d = g.partial_derivative(v).expect("index in range");
                if !d.is_zero() {
                    next.push(d);
                }
            }
        }
        cur = match next.first() {
            None => next,
            Some(_) => Ideal::from_gens(next).minimized().gens().to_vec(),
        };
        if cur.len() == 1 && cur[0].is_constant() {
            break;
        }
    }
    cur
}

/// Ideal of `{ord_J ≥ k}`, derivatives taken in `vars`. `k = 0` is everything.
pub fn order_locus(ctx: &Arc<VarContext>, gens: &[Polynomial], vars: &[usize], k: u32) -> Vec<Polynomial> {
    if k == 0 {
        return vec![Polynomial::zero(ctx)];
    }
    derivative_closure(gens, vars, k - 1)
}

/// Whether `V(gens) ∩ D(inverted)` is nonempty.
pub fn meets(ctx: &Arc<VarContext>, gens: &[Polynomial], inverted: &[Polynomial]) -> bool {
    let gens: Vec<Polynomial> = gens.to_vec();
    !Ideal::new(ctx, gens).expect("same context").saturate_all(inverted).expect("nonzero").is_unit()
}

/// Largest `k` such that `{ord_J ≥ k} ∩ V(within) ∩ D(inverted)` is nonempty
/// (`0` when `V(within)` misses `V(J)`).
pub fn max_order(
    ctx: &Arc<VarContext>,
    gens: &[Polynomial],
    vars: &[usize],
    within: &[Polynomial],
    inverted: &[Polynomial],
) -> u32 {
    let bound = gens.iter().filter_map(|g| g.total_degree()).max().unwrap_or(0);
    let mut best = 0;
    for k in 1..=bound {
        let mut ideal = order_locus(ctx, gens, vars, k);
        ideal.extend(within.iter().cloned());
        if meets(ctx, &ideal, inverted) {
            best = k;
        } else {
            break;
        }
    }
    best
}

/// Order of `J` at the generic point of an aligned component.
pub fn order_along(ctx: &Arc<VarContext>, gens: &[Polynomial], vars: &[usize], comp: &AlignedComponent) -> u32 {
    let on = |ps: &[Polynomial]| {
        ps.iter().all(|p| {
            let mut q = p.clone();
            for (v, a) in &comp.fixed {
                q = q.eval_var(*v, a);
            }
            q.is_zero()
        })
    };
    let bound = gens.iter().filter_map(|g| g.total_degree()).max().unwrap_or(0);
    let mut k = 0;
    while k < bound && on(&derivative_closure(gens, vars, k)) {
        k += 1;
    }
    let _ = ctx;
    k
}

/// Aligned components of the singular locus of a chart, localized, and
/// intersected with `within`.
pub fn singular_components(c: &Chart, within: &[Polynomial]) -> Result<Vec<AlignedComponent>> {
    if c.is_ambient() {
        return Ok(Vec::new());
    }
    let mut gens = crate::geometry::singular::jacobian_generators(&c.equation);
    gens.extend(within.iter().cloned());
    aligned_locus(&Ideal::new(&c.ctx, gens)?, &c.inverted)
}

/// Image in the root of a point of chart `id`.
pub fn root_point(t: &ResolutionTree, id: &str, p: &Point) -> Point {
    let pi = t.root_map(id);
    let vals = p.values();
    Point::new(&t.root_of(id).ctx, pi.images().iter().map(|g| g.eval(&vals)).collect())
}

/// Whether the root image of a component is a single point.
pub fn contracted(t: &ResolutionTree, id: &str, comp: &AlignedComponent) -> bool {
    let pi = t.root_map(id);
    pi.images().iter().all(|g| {
        let mut q = g.clone();
        for (v, a) in &comp.fixed {
            q = q.eval_var(*v, a);
        }
        q.is_constant() || q.is_zero()
    })
}

/// A point of a component (free coordinates set to zero).
pub fn some_point(ctx: &VarContext, comp: &AlignedComponent) -> Point {
    let mut vals = vec![num_traits::Zero::zero(); ctx.len()];
    for (v, a) in &comp.fixed {
        vals[*v] = a.clone();
    }
    Point::new(ctx, vals)
}

/// Pulls root polynomials back to chart `id`.
pub fn pull_back(t: &ResolutionTree, id: &str, gens: &[Polynomial]) -> Vec<Polynomial> {
    let pi = t.root_map(id);
    gens.iter().map(|g| pi.apply(g)).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn orders_of_descent_ideal() {
        let ctx = VarContext::new(&["x", "z"]).unwrap();
        let gens = vec![Polynomial::parse("z^6", &ctx).unwrap(), Polynomial::parse("x*z^3", &ctx).unwrap()];
        assert_eq!(max_order(&ctx, &gens, &[0, 1], &[], &[]), 4);
        let line = AlignedComponent { fixed: vec![(1, crate::algebra::rat(0))], free: vec![0] };
        assert_eq!(order_along(&ctx, &gens, &[0, 1], &line), 3);
    }
}
