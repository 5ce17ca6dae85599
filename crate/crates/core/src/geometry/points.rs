use crate::algebra::univariate::{coefficients, degree, rational_roots};
use crate::algebra::{Ideal, Point, Polynomial, Rational};
use crate::error::{Error, Result};

/// All rational solutions of a zero-dimensional ideal, sorted
/// lexicographically. Fails if some solution has an irrational coordinate.
pub fn rational_points(ideal: &Ideal) -> Result<Vec<Point>> {
    if ideal.is_unit() {
        return Ok(Vec::new());
    }
    if !ideal.is_zero_dimensional() {
        return Err(Error::NotZeroDimensional(ideal.canonical()));
    }
    let mut out = Vec::new();
    solve(ideal, 0, Vec::new(), &mut out)?;
    let mut pts: Vec<Point> = out.into_iter().map(|v| Point::new(ideal.ctx(), v)).collect();
    pts.sort();
    pts.dedup();
    Ok(pts)
}

// Fixes coordinates one variable at a time: the eliminant in `var` has every
// coordinate of every (complex) solution among its roots.
fn solve(ideal: &Ideal, var: usize, fixed: Vec<Rational>, out: &mut Vec<Vec<Rational>>) -> Result<()> {
    if ideal.is_unit() {
        return Ok(());
    }
    let ctx = ideal.ctx().clone();
    if var == ctx.len() {
        out.push(fixed);
        return Ok(());
    }
    let elim = ideal.eliminate(&[var]);
    let g = elim.groebner().first().cloned().expect("zero-dimensional ideal has an eliminant");
    let (roots, rest) = rational_roots(&coefficients(&g, var));
    if degree(&rest).unwrap_or(0) > 0 {
        let leftover = rest
            .iter()
            .enumerate()
            .map(|(e, c)| Polynomial::var(&ctx, var).pow(e as u32).scale(c))
            .fold(Polynomial::zero(&ctx), |a, b| &a + &b);
        return Err(Error::IrrationalLocus(leftover.monic(&ideal.order()).to_string()));
    }
    for r in roots {
        let lin = &Polynomial::var(&ctx, var) - &Polynomial::constant(&ctx, r.clone());
        let mut next = fixed.clone();
        next.push(r);
        solve(&ideal.with([lin]), var + 1, next, out)?;
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{rat, VarContext};

    fn ideal(gens: &[&str], vars: &[&str]) -> Ideal {
        let c = VarContext::new(vars).unwrap();
        Ideal::from_gens(gens.iter().map(|g| Polynomial::parse(g, &c).unwrap()).collect())
    }

    #[test]
    fn simple_points() {
        let pts = rational_points(&ideal(&["x", "y", "z"], &["x", "y", "z"])).unwrap();
        assert_eq!(pts.len(), 1);
        assert!(pts[0].is_origin());
        let pts = rational_points(&ideal(&["x - 1", "y"], &["x", "y"])).unwrap();
        assert_eq!(pts[0].values(), vec![rat(1), rat(0)]);
    }

    #[test]
    fn irrational_is_an_error() {
        let e = rational_points(&ideal(&["x^2 + 1", "y"], &["x", "y"])).unwrap_err();
        assert!(matches!(e, Error::IrrationalLocus(ref s) if s == "x^2 + 1"), "{e}");
    }

    #[test]
    fn several_points_sorted() {
        // x(x-1) = 0, y = x
        let pts = rational_points(&ideal(&["x^2 - x", "y - x"], &["x", "y"])).unwrap();
        assert_eq!(pts.len(), 2);
        assert!(pts[0].is_origin());
        assert_eq!(pts[1].values(), vec![rat(1), rat(1)]);
    }

    #[test]
    fn positive_dimensional_rejected() {
        let e = rational_points(&ideal(&["y"], &["x", "y"])).unwrap_err();
        assert!(matches!(e, Error::NotZeroDimensional(_)));
    }
}
