use std::collections::BTreeMap;

use num_traits::Zero;

use crate::algebra::{order_at_point, Ideal, Point, Polynomial};
use crate::error::{Error, Result};

use super::chart::Chart;
use super::points::rational_points;

/// `(f, ∂f/∂v_1, …, ∂f/∂v_n)`. An ambient chart is smooth everywhere.
pub fn singular_locus(c: &Chart) -> Ideal {
    if c.is_ambient() {
        return Ideal::unit(&c.ctx);
    }
    Ideal::from_gens(jacobian_generators(&c.equation))
}

pub fn jacobian_generators(f: &Polynomial) -> Vec<Polynomial> {
    let mut gens = vec![f.clone()];
    for v in 0..f.ctx().len() {
        gens.push(f.partial_derivative(v).expect("index in range"));
    }
    gens
}

/// Singular ideal restricted to the chart's localization.
pub fn localized_singular_locus(c: &Chart) -> Ideal {
    singular_locus(c).saturate_all(&c.inverted).expect("inverted elements are nonzero")
}

#[derive(Clone, Debug, PartialEq)]
pub enum Smoothness {
    /// Reduced Gröbner basis of the (localized) singular ideal, i.e. `[1]`.
    Smooth { certificate: Vec<Polynomial> },
    /// A rational singular point, when the singular locus is finite and
    /// rational.
    Singular { witness: Option<Point> },
}

impl Smoothness {
    pub fn is_smooth(&self) -> bool {
        matches!(self, Smoothness::Smooth { .. })
    }
}

pub fn is_smooth(c: &Chart) -> Smoothness {
    let sing = localized_singular_locus(c);
    if sing.is_unit() {
        return Smoothness::Smooth { certificate: sing.groebner().to_vec() };
    }
    let witness = rational_points(&sing).ok().and_then(|p| p.into_iter().next());
    Smoothness::Singular { witness }
}

#[derive(Clone, Debug, PartialEq)]
pub struct Stratification {
    pub orders: BTreeMap<Point, u32>,
    pub max: u32,
    pub argmax: Vec<Point>,
}

pub fn multiplicity_stratification(c: &Chart, points: &[Point]) -> Result<Stratification> {
    let mut orders = BTreeMap::new();
    for p in points {
        if !c.equation.eval(&p.values()).is_zero() {
            return Err(Error::PointOffHypersurface { point: p.to_string(), equation: c.equation.to_string() });
        }
        orders.insert(p.clone(), order_at_point(&c.equation, p)?);
    }
    let max = orders.values().copied().max().unwrap_or(0);
    let argmax = orders.iter().filter(|(_, &o)| o == max).map(|(p, _)| p.clone()).collect();
    Ok(Stratification { orders, max, argmax })
}

/// After moving `p` to the origin, `f = m · u` with `m` a monomial and either
/// `u(0) ≠ 0`, or `u` a regular parameter transversal to the variables of
/// `m` (order one, with a linear term in a variable outside `supp(m)`).
pub fn is_strictly_monomial_at(f: &Polynomial, p: &Point, _c: &Chart) -> bool {
    if f.is_zero() {
        return false;
    }
    let g = f.translate(&p.values());
    let m = g.monomial_content();
    let u = g.div_monomial(&m).expect("content divides");
    if !u.constant_term().is_zero() {
        return true;
    }
    if u.low_degree() != Some(1) {
        return false;
    }
    let n = f.ctx().len();
    (0..n).any(|v| {
        m.exp(v) == 0 && !u.coefficient(&crate::algebra::Monomial::var(n, v, 1)).is_zero()
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::VarContext;

    fn chart(vars: &[&str], eq: &str) -> Chart {
        Chart::parse_root(vars, eq).unwrap()
    }

    #[test]
    fn whitney_singular_along_x_axis() {
        let c = chart(&["x", "y", "z"], "y^2 + x*z^2");
        let sing = singular_locus(&c);
        let axis = Ideal::from_gens(vec![c.poly("y").unwrap(), c.poly("z").unwrap()]);
        // same zero set: radical check through powers
        assert!(axis.contains_ideal(&sing));
        assert!(sing.contains(&c.poly("y").unwrap()));
        assert!(sing.contains(&c.poly("z^2").unwrap()));
        assert!(!is_smooth(&c).is_smooth());
    }

    #[test]
    fn cusp_chart_is_smooth() {
        let c = chart(&["x1", "y1"], "y1^2 - x1");
        assert!(is_smooth(&c).is_smooth());
        assert!(is_smooth(&chart(&["x", "y"], "x")).is_smooth());
    }

    #[test]
    fn orbifold_point_witness() {
        let c = chart(&["x1", "y1", "z1"], "y1^2 + x1*z1");
        match is_smooth(&c) {
            Smoothness::Singular { witness: Some(p) } => assert!(p.is_origin()),
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn multiplicities() {
        let c = chart(&["x", "y"], "y^2 - x^2*(x + 1)");
        let o = Point::origin(&c.ctx);
        let q = Point::new(&c.ctx, vec![crate::algebra::rat(-1), crate::algebra::rat(0)]);
        let s = multiplicity_stratification(&c, &[o.clone(), q.clone()]).unwrap();
        assert_eq!(s.orders[&o], 2);
        assert_eq!(s.orders[&q], 1);
        assert_eq!(s.argmax, vec![o]);
        let off = Point::new(&c.ctx, vec![crate::algebra::rat(1), crate::algebra::rat(1)]);
        assert!(matches!(multiplicity_stratification(&c, &[off]), Err(Error::PointOffHypersurface { .. })));
    }

    #[test]
    fn strict_monomiality() {
        let ctx = VarContext::new(&["x2", "z2"]).unwrap();
        let c = Chart::root("r", Polynomial::parse("x2^2*z2", &ctx).unwrap());
        assert!(is_strictly_monomial_at(&c.equation, &Point::origin(&ctx), &c));
        let f = c.poly("z2^3*(1 + x2)").unwrap();
        assert!(is_strictly_monomial_at(&f, &Point::origin(&ctx), &c));
        let w = chart(&["x", "y", "z"], "y^2 + x*z^3");
        assert!(!is_strictly_monomial_at(&w.equation, &Point::origin(&w.ctx), &w));
        // exceptional times a transversal smooth branch
        let t = c.poly("x2^2*(z2 - x2)").unwrap();
        assert!(is_strictly_monomial_at(&t, &Point::origin(&ctx), &c));
        let tangent = c.poly("x2^2*(x2 + z2^2)").unwrap();
        assert!(!is_strictly_monomial_at(&tangent, &Point::origin(&ctx), &c));
    }
}
