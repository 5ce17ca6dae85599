use crate::algebra::{Ideal, Monomial, Polynomial};
use crate::error::{Error, Result};
use crate::geometry::{Chart, Divisor, Substitution};

/// Ideal with control and boundary, principalized by the marked driver.
#[derive(Clone, Debug)]
pub struct MarkedIdeal {
    pub ideal: Ideal,
    pub control: u32,
    pub boundary: Vec<Divisor>,
}

impl MarkedIdeal {
    pub fn new(ideal: Ideal, control: u32) -> Self {
        assert!(control >= 1, "control must be positive");
        MarkedIdeal { ideal, control, boundary: Vec::new() }
    }
}

pub fn total_transform(f: &Polynomial, s: &Substitution) -> Polynomial {
    s.apply(f)
}

/// Divides out the largest power of variable `e`.
pub(crate) fn strip_exceptional(f: &Polynomial, e: usize) -> Polynomial {
    if f.is_zero() {
        return f.clone();
    }
    let k = f.terms().map(|(m, _)| m.exp(e)).min().unwrap_or(0);
    f.div_monomial(&Monomial::var(f.ctx().len(), e, k)).expect("power divides every term")
}

fn child_parts(child: &Chart) -> (&Substitution, usize) {
    let (_, sigma) = child.parent.as_ref().expect("chart produced by a blow-up");
    let e = child.exceptional_var.expect("chart has an exceptional variable");
    (sigma, e)
}

/// Total transform divided by the largest power of the new exceptional
/// variable. Empty-step children return the equation unchanged.
pub fn strict_transform(f: &Polynomial, child: &Chart) -> Polynomial {
    let (_, sigma) = child.parent.as_ref().expect("chart produced by a blow-up");
    match child.exceptional_var {
        Some(e) => strip_exceptional(&sigma.apply(f), e),
        None => sigma.apply(f),
    }
}

/// Strict transform of an ideal: saturation of the total transform by the
/// exceptional variable.
pub fn strict_transform_ideal(i: &Ideal, child: &Chart) -> Ideal {
    let (sigma, e) = child_parts(child);
    let total = Ideal::from_gens(i.gens().iter().map(|g| sigma.apply(g)).collect());
    total.saturate(&Polynomial::var(&child.ctx, e)).expect("variable is nonzero")
}

/// Total transform divided by `e^d`; the boundary gains the new divisor.
pub fn principal_transform(m: &MarkedIdeal, child: &Chart) -> Result<MarkedIdeal> {
    let (sigma, e) = child_parts(child);
    let n = child.ctx.len();
    let ed = Monomial::var(n, e, m.control);
    let mut gens = Vec::new();
    for g in m.ideal.gens() {
        let t = sigma.apply(g);
        match t.div_monomial(&ed) {
            Some(q) => gens.push(q),
            None => {
                return Err(Error::NotDivisible {
                    generator: t.to_string(),
                    exceptional: child.ctx.name(e).to_string(),
                    control: m.control,
                })
            }
        }
    }
    let mut boundary: Vec<Divisor> = m
        .boundary
        .iter()
        .map(|d| Divisor { equation: strip_exceptional(&sigma.apply(&d.equation), e), history: d.history })
        .filter(|d| !d.equation.is_constant())
        .collect();
    boundary.push(Divisor { equation: Polynomial::var(&child.ctx, e), history: child.birth_step });
    Ok(MarkedIdeal { ideal: Ideal::new(&child.ctx, gens)?, control: m.control, boundary })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{rat, VarContext};
    use crate::blowup::{blowup, Center};

    fn plane_chart(gens: &[&str]) -> (Chart, MarkedIdeal) {
        let ctx = VarContext::new(&["x", "z"]).unwrap();
        let c = Chart::root("root", Polynomial::zero(&ctx));
        let i = Ideal::from_gens(gens.iter().map(|g| Polynomial::parse(g, &ctx).unwrap()).collect());
        (c, MarkedIdeal::new(i, 2))
    }

    #[test]
    fn totals_and_stricts() {
        let c = Chart::parse_root(&["x", "y", "z"], "y^2 + x*z^3").unwrap();
        let o = Center::aligned(&c.ctx, &[(0, rat(0)), (1, rat(0)), (2, rat(0))], "o");
        let (charts, _) = blowup(&c, &o, 1).unwrap();
        let x = &charts[0];
        let sigma = &x.parent.as_ref().unwrap().1;
        assert_eq!(total_transform(&c.equation, sigma).to_string(), "x1^4*z1^3 + x1^2*y1^2");
        assert_eq!(strict_transform(&c.equation, x).to_string(), "x1^2*z1^3 + y1^2");
        let w = c.poly("y^2 + x*z^2").unwrap();
        assert_eq!(total_transform(&w, sigma).to_string(), "x1^3*z1^2 + x1^2*y1^2");
        let via_sat = strict_transform_ideal(&Ideal::from_gens(vec![c.equation.clone()]), x);
        assert!(via_sat.equals(&Ideal::from_gens(vec![strict_transform(&c.equation, x)])));
        let one = Polynomial::from_int(&c.ctx, 7);
        assert_eq!(total_transform(&one, sigma), Polynomial::from_int(&x.ctx, 7));
    }

    #[test]
    fn cusp_strict_transform() {
        let c = Chart::parse_root(&["x", "y"], "y^2 - x^3").unwrap();
        let o = Center::aligned(&c.ctx, &[(0, rat(0)), (1, rat(0))], "o");
        let (charts, _) = blowup(&c, &o, 1).unwrap();
        assert_eq!(charts[0].equation.to_string(), "y1^2 - x1");
    }

    #[test]
    fn descent_chain() {
        let (c, m) = plane_chart(&["z^6", "x*z^3"]);
        let o = Center::aligned(&c.ctx, &[(0, rat(0)), (1, rat(0))], "o");
        let (charts, _) = blowup(&c, &o, 1).unwrap();
        let m1 = principal_transform(&m, &charts[0]).unwrap();
        assert!(m1.ideal.equals(&Ideal::from_gens(vec![charts[0].poly("x1^2*z1^3").unwrap()])));
        let line = Center::aligned(&charts[0].ctx, &[(1, rat(0))], "z1=0");
        let (c2, _) = blowup(&charts[0], &line, 2).unwrap();
        let m2 = principal_transform(&m1, &c2[0]).unwrap();
        assert!(m2.ideal.equals(&Ideal::from_gens(vec![c2[0].poly("x2^2*z2").unwrap()])));
        let line = Center::aligned(&c2[0].ctx, &[(0, rat(0))], "x2=0");
        let (c3, _) = blowup(&c2[0], &line, 3).unwrap();
        let m3 = principal_transform(&m2, &c3[0]).unwrap();
        assert!(m3.ideal.equals(&Ideal::from_gens(vec![c3[0].poly("z3").unwrap()])));
        // the last center was itself a boundary divisor, which it replaces
        assert_eq!(m3.boundary.len(), 2);
    }

    #[test]
    fn impermissible_center_fails() {
        let (c, m) = plane_chart(&["z"]);
        let o = Center::aligned(&c.ctx, &[(0, rat(0)), (1, rat(0))], "o");
        let (charts, _) = blowup(&c, &o, 1).unwrap();
        assert!(matches!(principal_transform(&m, &charts[0]), Err(Error::NotDivisible { .. })));
    }
}
