//! Exact rational polynomial algebra: arithmetic, division, Gröbner bases,
//! ideal quotients, saturation, elimination and orders at points.

pub mod groebner;
pub mod ideal;
pub mod monomial;
pub mod parse;
pub mod poly;
pub mod univariate;

use std::fmt;
use std::sync::Arc;

use num_traits::Zero;

pub use groebner::{divide, groebner_basis, normal_form, Division};
pub use ideal::Ideal;
pub use monomial::{Monomial, MonomialOrder, OrderKind};
pub use poly::{ArithOp, Polynomial, VarContext};

use crate::error::{Error, Result};

/// Arbitrary-precision rational; always normalized (`denominator > 0`, reduced).
pub type Rational = num_rational::BigRational;

pub fn rat(n: i64) -> Rational {
    Rational::from_integer(n.into())
}

pub fn rat2(n: i64, d: i64) -> Rational {
    Rational::new(n.into(), d.into())
}

/// `f op g`, failing on context mismatch.
pub fn poly_arith(f: &Polynomial, g: &Polynomial, op: ArithOp) -> Result<Polynomial> {
    f.arith(g, op)
}

pub fn partial_derivative(f: &Polynomial, var: &str) -> Result<Polynomial> {
    f.derivative_named(var)
}

pub fn ideal_member(f: &Polynomial, ideal: &Ideal) -> bool {
    ideal.contains(f)
}

/// A rational point: one coordinate per variable of the ambient context, in
/// context order.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Point {
    coords: Vec<(String, Rational)>,
}

impl Point {
    pub fn new(ctx: &VarContext, values: Vec<Rational>) -> Self {
        assert_eq!(ctx.len(), values.len(), "point must assign every variable");
        Point { coords: ctx.names().iter().cloned().zip(values).collect() }
    }

    pub fn origin(ctx: &VarContext) -> Self {
        Self::new(ctx, vec![Rational::zero(); ctx.len()])
    }

    pub fn from_pairs(ctx: &VarContext, pairs: &[(&str, Rational)]) -> Result<Self> {
        let mut values = vec![None; ctx.len()];
        for (n, v) in pairs {
            values[ctx.index_of(n)?] = Some(v.clone());
        }
        let values = values
            .into_iter()
            .enumerate()
            .map(|(i, v)| v.ok_or_else(|| Error::UnknownVariable(format!("point misses `{}`", ctx.name(i)))))
            .collect::<Result<Vec<_>>>()?;
        Ok(Self::new(ctx, values))
    }

    pub fn values(&self) -> Vec<Rational> {
        self.coords.iter().map(|(_, v)| v.clone()).collect()
    }

    pub fn get(&self, name: &str) -> Option<&Rational> {
        self.coords.iter().find(|(n, _)| n == name).map(|(_, v)| v)
    }

    pub fn coords(&self) -> &[(String, Rational)] {
        &self.coords
    }

    pub fn is_origin(&self) -> bool {
        self.coords.iter().all(|(_, v)| v.is_zero())
    }

    /// Maximal ideal of the point: `(v - p(v))` for every variable.
    pub fn ideal(&self, ctx: &Arc<VarContext>) -> Ideal {
        Ideal::from_gens(self.linear_forms(ctx))
    }

    pub fn linear_forms(&self, ctx: &Arc<VarContext>) -> Vec<Polynomial> {
        self.coords
            .iter()
            .enumerate()
            .map(|(i, (_, v))| &Polynomial::var(ctx, i) - &Polynomial::constant(ctx, v.clone()))
            .collect()
    }
}

impl fmt::Display for Point {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> =
            self.coords.iter().map(|(n, v)| format!("{n}={}", poly::format_rational(v))).collect();
        write!(f, "({})", parts.join(", "))
    }
}

/// Multiplicity of `{f = 0}` at `p`: lowest total degree after moving `p` to
/// the origin.
pub fn order_at_point(f: &Polynomial, p: &Point) -> Result<u32> {
    if f.is_zero() {
        return Err(Error::InfiniteOrder);
    }
    Ok(f.translate(&p.values()).low_degree().unwrap())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn orders() {
        let c = VarContext::new(&["x", "y", "z"]).unwrap();
        let w = Polynomial::parse("y^2 + x*z^2", &c).unwrap();
        assert_eq!(order_at_point(&w, &Point::origin(&c)).unwrap(), 2);
        let p = Point::new(&c, vec![rat(1), rat(0), rat(0)]);
        assert_eq!(order_at_point(&w, &p).unwrap(), 2);
        let x = Polynomial::parse("x", &c).unwrap();
        assert_eq!(order_at_point(&x, &Point::origin(&c)).unwrap(), 1);
        assert_eq!(order_at_point(&Polynomial::zero(&c), &p), Err(Error::InfiniteOrder));
    }
}
