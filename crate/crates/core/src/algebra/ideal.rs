use std::sync::{Arc, OnceLock};

use super::groebner::{groebner_basis, normal_form};
use super::monomial::MonomialOrder;
use super::poly::{Polynomial, VarContext};
use crate::error::{Error, Result};

/// Ideal of a polynomial ring, with a write-once grevlex Gröbner cache.
#[derive(Clone, Debug)]
pub struct Ideal {
    ctx: Arc<VarContext>,
    gens: Vec<Polynomial>,
    groebner: OnceLock<Vec<Polynomial>>,
}

impl Ideal {
    pub fn new(ctx: &Arc<VarContext>, gens: Vec<Polynomial>) -> Result<Self> {
        for g in &gens {
            if !g.ctx().compatible(ctx) {
                return Err(Error::ContextMismatch {
                    left: ctx.names().join(","),
                    right: g.ctx().names().join(","),
                });
            }
        }
        let gens = if gens.is_empty() { vec![Polynomial::zero(ctx)] } else { gens };
        Ok(Ideal { ctx: ctx.clone(), gens, groebner: OnceLock::new() })
    }

    pub fn from_gens(gens: Vec<Polynomial>) -> Self {
        assert!(!gens.is_empty(), "ideal needs at least one generator");
        let ctx = gens[0].ctx().clone();
        Self::new(&ctx, gens).expect("generators share a context")
    }

    pub fn unit(ctx: &Arc<VarContext>) -> Self {
        Ideal::from_gens(vec![Polynomial::one(ctx)])
    }

    pub fn zero(ctx: &Arc<VarContext>) -> Self {
        Ideal::from_gens(vec![Polynomial::zero(ctx)])
    }

    /// The ideal generated by the given variables.
    pub fn of_vars(ctx: &Arc<VarContext>, vars: &[usize]) -> Self {
        if vars.is_empty() {
            return Self::zero(ctx);
        }
        Ideal::from_gens(vars.iter().map(|&v| Polynomial::var(ctx, v)).collect())
    }

    pub fn ctx(&self) -> &Arc<VarContext> {
        &self.ctx
    }

    pub fn gens(&self) -> &[Polynomial] {
        &self.gens
    }

    pub fn order(&self) -> MonomialOrder {
        MonomialOrder::grevlex(self.ctx.len())
    }

    /// Reduced grevlex Gröbner basis (empty for the zero ideal).
    pub fn groebner(&self) -> &[Polynomial] {
        self.groebner.get_or_init(|| groebner_basis(&self.gens, &self.order()))
    }

    pub fn groebner_in(&self, order: &MonomialOrder) -> Vec<Polynomial> {
        groebner_basis(&self.gens, order)
    }

    pub fn contains(&self, f: &Polynomial) -> bool {
        normal_form(f, self.groebner(), &self.order()).is_zero()
    }

    pub fn contains_ideal(&self, other: &Ideal) -> bool {
        other.gens.iter().all(|g| self.contains(g))
    }

    /// Ideal equality by two-way membership.
    pub fn equals(&self, other: &Ideal) -> bool {
        self.contains_ideal(other) && other.contains_ideal(self)
    }

    pub fn is_unit(&self) -> bool {
        let gb = self.groebner();
        gb.len() == 1 && gb[0].is_constant() && !gb[0].is_zero()
    }

    pub fn is_zero(&self) -> bool {
        self.groebner().is_empty()
    }

    pub fn sum(&self, other: &Ideal) -> Ideal {
        let mut g = self.gens.clone();
        g.extend(other.gens.iter().cloned());
        Ideal::from_gens(g)
    }

    pub fn with(&self, extra: impl IntoIterator<Item = Polynomial>) -> Ideal {
        let mut g = self.gens.clone();
        g.extend(extra);
        Ideal::from_gens(g)
    }

    pub fn product(&self, other: &Ideal) -> Ideal {
        let mut g = Vec::new();
        for a in &self.gens {
            for b in &other.gens {
                g.push(a * b);
            }
        }
        Ideal::from_gens(g).minimized()
    }

    pub fn power(&self, k: u32) -> Ideal {
        let mut r = Ideal::unit(&self.ctx);
        for _ in 0..k {
            r = r.product(self);
        }
        r
    }

    /// Same ideal presented by its reduced Gröbner basis.
    pub fn minimized(&self) -> Ideal {
        let gb = self.groebner().to_vec();
        if gb.is_empty() {
            Ideal::zero(&self.ctx)
        } else {
            let r = Ideal::from_gens(gb.clone());
            let _ = r.groebner.set(gb);
            r
        }
    }

    /// `I ∩ J` via `t·I + (1-t)·J` and elimination of `t`.
    pub fn intersect(&self, other: &Ideal) -> Ideal {
        if self.is_zero() || other.is_zero() {
            return Ideal::zero(&self.ctx);
        }
        let n = self.ctx.len();
        let (ext, map) = extend_with_fresh(&self.ctx);
        let t = Polynomial::var(&ext, n);
        let one_minus_t = &Polynomial::one(&ext) - &t;
        let mut gens = Vec::new();
        for g in &self.gens {
            gens.push(&t * &g.embed(&ext, &map));
        }
        for g in &other.gens {
            gens.push(&one_minus_t * &g.embed(&ext, &map));
        }
        let mut precedence = vec![n];
        precedence.extend(0..n);
        let order = MonomialOrder::elimination(precedence, 1);
        let gb = groebner_basis(&gens, &order);
        let kept: Vec<Polynomial> = gb
            .into_iter()
            .filter(|p| !p.involves(n))
            .map(|p| restrict_ctx(&p, &self.ctx, n))
            .collect();
        if kept.is_empty() {
            Ideal::zero(&self.ctx)
        } else {
            Ideal::from_gens(kept).minimized()
        }
    }

    /// `(I : g)`.
    pub fn quotient(&self, g: &Polynomial) -> Result<Ideal> {
        if g.is_zero() {
            return Err(Error::ZeroDivisor);
        }
        if self.is_zero() {
            return Ok(self.clone());
        }
        let inter = self.intersect(&Ideal::from_gens(vec![g.clone()]));
        let mut gens = Vec::new();
        for h in inter.gens() {
            if h.is_zero() {
                continue;
            }
            gens.push(h.exact_div(g)?.expect("elements of I ∩ (g) are divisible by g"));
        }
        Ok(if gens.is_empty() { Ideal::zero(&self.ctx) } else { Ideal::from_gens(gens).minimized() })
    }

    /// `(I : g^∞)` by iterated quotients; also returns the number of quotient
    /// steps taken before stabilization.
    pub fn saturate_counted(&self, g: &Polynomial) -> Result<(Ideal, usize)> {
        let mut cur = self.minimized();
        let mut steps = 0;
        loop {
            let next = cur.quotient(g)?;
            steps += 1;
            if cur.contains_ideal(&next) {
                return Ok((cur, steps));
            }
            cur = next;
        }
    }

    pub fn saturate(&self, g: &Polynomial) -> Result<Ideal> {
        Ok(self.saturate_counted(g)?.0)
    }

    /// Saturation by a product of polynomials.
    pub fn saturate_all(&self, gs: &[Polynomial]) -> Result<Ideal> {
        let mut cur = self.clone();
        for g in gs {
            if g.is_constant() && !g.is_zero() {
                continue;
            }
            cur = cur.saturate(g)?;
        }
        Ok(cur)
    }

    /// `I ∩ Q[keep]` via a lex basis with the eliminated variables first.
    pub fn eliminate(&self, keep: &[usize]) -> Ideal {
        let n = self.ctx.len();
        let mut precedence: Vec<usize> = (0..n).filter(|v| !keep.contains(v)).collect();
        let mut kept: Vec<usize> = keep.to_vec();
        kept.sort_unstable();
        precedence.extend(kept.iter().copied());
        let order = MonomialOrder::lex_with(precedence);
        let gb = groebner_basis(&self.gens, &order);
        let elim: Vec<Polynomial> = gb
            .into_iter()
            .filter(|p| (0..n).filter(|v| !keep.contains(v)).all(|v| !p.involves(v)))
            .collect();
        if elim.is_empty() {
            Ideal::zero(&self.ctx)
        } else {
            Ideal::from_gens(elim).minimized()
        }
    }

    /// Leading-term test: every variable has a pure power among the leading
    /// monomials of the Gröbner basis (the unit ideal counts as zero-dimensional).
    pub fn is_zero_dimensional(&self) -> bool {
        let order = self.order();
        let gb = self.groebner();
        if self.is_unit() {
            return true;
        }
        (0..self.ctx.len()).all(|v| {
            gb.iter().any(|p| {
                let m = p.leading_monomial(&order).unwrap();
                m.exp(v) > 0 && m.support().all(|w| w == v)
            })
        })
    }

    /// Canonical text of the reduced basis, e.g. `(y, z)`.
    pub fn canonical(&self) -> String {
        let gb = self.groebner();
        if gb.is_empty() {
            return "(0)".into();
        }
        format!("({})", gb.iter().map(|p| p.to_string()).collect::<Vec<_>>().join(", "))
    }
}

impl PartialEq for Ideal {
    fn eq(&self, other: &Self) -> bool {
        self.ctx.compatible(&other.ctx) && self.equals(other)
    }
}

/// Context with one extra variable appended at index `n`.
pub(crate) fn extend_with_fresh(ctx: &Arc<VarContext>) -> (Arc<VarContext>, Vec<usize>) {
    let mut names = ctx.names().to_vec();
    let mut fresh = String::from("t_");
    while names.contains(&fresh) {
        fresh.push('_');
    }
    names.push(fresh);
    let mut tags = ctx.tags().to_vec();
    tags.push(None);
    let ext = VarContext::with_tags(names, tags).expect("fresh name is unique");
    (ext, (0..ctx.len()).collect())
}

fn restrict_ctx(p: &Polynomial, target: &Arc<VarContext>, dropped: usize) -> Polynomial {
    let map: Vec<usize> = (0..p.ctx().len()).map(|v| if v < dropped { v } else { v.saturating_sub(1) }).collect();
    p.embed(target, &map)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ctx3() -> Arc<VarContext> {
        VarContext::new(&["x", "y", "z"]).unwrap()
    }

    fn p(s: &str, c: &Arc<VarContext>) -> Polynomial {
        Polynomial::parse(s, c).unwrap()
    }

    fn ideal(gens: &[&str], c: &Arc<VarContext>) -> Ideal {
        Ideal::from_gens(gens.iter().map(|g| p(g, c)).collect())
    }

    #[test]
    fn quotient_and_saturation() {
        let c = ctx3();
        let i = ideal(&["x*y"], &c);
        let (s, steps) = i.saturate_counted(&p("y", &c)).unwrap();
        assert!(s.equals(&ideal(&["x"], &c)));
        assert!(steps >= 1);
        let cusp = VarContext::new(&["x1", "y1"]).unwrap();
        let j = ideal(&["x1^2*(y1^2 - x1)"], &cusp);
        let s = j.saturate(&p("x1", &cusp)).unwrap();
        assert!(s.equals(&ideal(&["y1^2 - x1"], &cusp)));
        assert_eq!(i.quotient(&Polynomial::zero(&c)), Err(Error::ZeroDivisor));
    }

    #[test]
    fn intersection_of_coordinate_ideals() {
        let c = ctx3();
        let r = ideal(&["x"], &c).intersect(&ideal(&["y"], &c));
        assert!(r.equals(&ideal(&["x*y"], &c)));
    }

    #[test]
    fn elimination_examples() {
        let c = ctx3();
        let e = ideal(&["y - x^2", "y"], &c).eliminate(&[0]);
        assert!(e.equals(&ideal(&["x^2"], &c)));
        assert!(ideal(&["y", "z"], &c).eliminate(&[0]).is_zero());
        assert!(ideal(&["x"], &c).eliminate(&[0]).equals(&ideal(&["x"], &c)));
    }

    #[test]
    fn zero_dimensionality() {
        let c = ctx3();
        assert!(ideal(&["x", "y", "z"], &c).is_zero_dimensional());
        assert!(!ideal(&["y", "z"], &c).is_zero_dimensional());
        assert!(ideal(&["x^2 + 1", "y", "z - x"], &c).is_zero_dimensional());
    }
}
