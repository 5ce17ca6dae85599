use std::fmt;
use std::sync::Arc;

use num_traits::Zero;

use crate::algebra::{Ideal, Polynomial, Rational, VarContext};
use crate::error::{Error, Result};
use crate::geometry::{AlignedComponent, Substitution};

/// A blow-up center: its ideal, the translation making the generators
/// coordinates, and a provenance label.
#[derive(Clone, Debug, PartialEq)]
pub struct Center {
    pub generators: Vec<Polynomial>,
    pub coordinate_change: Option<Substitution>,
    pub label: String,
}

impl Center {
    /// `{v = a}` for each `(v, a)`; the coordinate change is `v ↦ v + a`.
    pub fn aligned(ctx: &Arc<VarContext>, fixed: &[(usize, Rational)], label: &str) -> Self {
        let mut fixed = fixed.to_vec();
        fixed.sort_by_key(|(v, _)| *v);
        let generators = fixed
            .iter()
            .map(|(v, a)| &Polynomial::var(ctx, *v) - &Polynomial::constant(ctx, a.clone()))
            .collect();
        let images = (0..ctx.len())
            .map(|v| {
                let shift = fixed.iter().find(|(w, _)| *w == v).map(|(_, a)| a.clone()).unwrap_or_else(Rational::zero);
                &Polynomial::var(ctx, v) + &Polynomial::constant(ctx, shift)
            })
            .collect();
        Center {
            generators,
            coordinate_change: Some(Substitution::new(ctx, ctx, images)),
            label: label.to_string(),
        }
    }

    pub fn from_component(ctx: &Arc<VarContext>, c: &AlignedComponent, label: &str) -> Self {
        Self::aligned(ctx, &c.fixed, label)
    }

    pub fn unit(ctx: &Arc<VarContext>, label: &str) -> Self {
        Center { generators: vec![Polynomial::one(ctx)], coordinate_change: None, label: label.to_string() }
    }

    /// Center given by arbitrary generators; alignment is recovered when each
    /// generator is `c·(v - a)` in a distinct variable.
    pub fn from_generators(generators: Vec<Polynomial>, label: &str) -> Self {
        let mut c = Center { generators, coordinate_change: None, label: label.to_string() };
        if let Ok(fixed) = c.alignment() {
            if let Some(g) = c.generators.first() {
                let ctx = g.ctx().clone();
                c = Center { label: c.label.clone(), ..Center::aligned(&ctx, &fixed, label) };
            }
        }
        c
    }

    pub fn ctx(&self) -> &Arc<VarContext> {
        self.generators[0].ctx()
    }

    pub fn ideal(&self) -> Ideal {
        Ideal::from_gens(self.generators.clone())
    }

    pub fn is_unit(&self) -> bool {
        self.ideal().is_unit()
    }

    /// `(v, a)` pairs with the center equal to `{v = a}`.
    pub fn alignment(&self) -> Result<Vec<(usize, Rational)>> {
        let err = || Error::NonAlignedCenter(self.ideal().canonical());
        let mut out: Vec<(usize, Rational)> = Vec::new();
        for g in &self.generators {
            let vars = g.variables();
            if vars.len() != 1 || g.total_degree() != Some(1) {
                return Err(err());
            }
            let v = vars[0];
            let n = g.ctx().len();
            let lin = g.coefficient(&crate::algebra::Monomial::var(n, v, 1));
            let a = -(g.constant_term() / lin);
            if out.iter().any(|(w, _)| *w == v) {
                return Err(err());
            }
            out.push((v, a));
        }
        out.sort_by_key(|(v, _)| *v);
        Ok(out)
    }

    pub fn component(&self) -> Result<AlignedComponent> {
        let fixed = self.alignment()?;
        let free = (0..self.ctx().len()).filter(|v| !fixed.iter().any(|(w, _)| w == v)).collect();
        Ok(AlignedComponent { fixed, free })
    }

    pub fn with_label(mut self, label: &str) -> Self {
        self.label = label.to_string();
        self
    }

    pub fn gens_text(&self) -> Vec<String> {
        self.generators.iter().map(|g| g.to_string()).collect()
    }
}

impl fmt::Display for Center {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{}]", self.gens_text().join(", "))
    }
}
