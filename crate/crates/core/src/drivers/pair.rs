//! Resolution of a pair (X, Z): make Z Cartier, resolve X, then make the
//! pullback of Z a strict normal-crossings monomial.

use std::collections::BTreeMap;

use crate::algebra::{Ideal, Monomial, Point, Polynomial};
use crate::blowup::{Center, ResolutionTree};
use crate::error::{Error, Result};
use crate::geometry::{is_strictly_monomial_at, rational_points, AlignedComponent, Chart};

use super::curve::floc_curve;
use super::loci::pull_back;
use super::report::{DriverReport, Tag};
use super::surface::floc_surface;

const ROUNDS: usize = 32;

fn points_of(ideal: Ideal) -> Result<Vec<Point>> {
    if ideal.is_unit() {
        return Ok(Vec::new());
    }
    match rational_points(&ideal) {
        Err(Error::NotZeroDimensional(s)) => Err(Error::Unsupported(format!("positive-dimensional test locus {s}"))),
        r => r,
    }
}

/// Generator of the pullback of `z` to leaf `c`, and the points where its
/// divisor might fail to be strictly monomial: singular points of the
/// non-exceptional part and its meetings with exceptional divisors.
fn test_points(t: &ResolutionTree, c: &Chart, z: &Ideal) -> Result<(Polynomial, Vec<Point>)> {
    let pulled = Ideal::new(&c.ctx, pull_back(t, &c.id, z.gens()))?.minimized();
    let [h] = pulled.gens() else {
        return Err(Error::Unsupported(format!("pullback {} is not principal on `{}`", pulled.canonical(), c.id)));
    };
    let exceptional: Vec<usize> = c.exceptional.iter().filter_map(|d| d.as_variable()).collect();
    let n = c.ctx.len();
    let content = h.monomial_content();
    let mono = Monomial::from_exponents((0..n).map(|v| if exceptional.contains(&v) { content.exp(v) } else { 0 }).collect());
    let rest = h.div_monomial(&mono).expect("content divides");
    if rest.is_constant() {
        return Ok((h.clone(), Vec::new()));
    }
    let mut pts = points_of(Ideal::new(&c.ctx, crate::geometry::singular::jacobian_generators(&rest))?)?;
    for &e in &exceptional {
        pts.extend(points_of(Ideal::new(&c.ctx, vec![rest.clone(), Polynomial::var(&c.ctx, e)])?)?);
    }
    pts.sort();
    pts.dedup();
    Ok((h.clone(), pts))
}

/// Resolves the pair `(c, z)` in three phases recorded in the log.
pub fn resolve_pair(c: &Chart, z: &Ideal) -> Result<DriverReport> {
    if !z.ctx().compatible(&c.ctx) {
        return Err(Error::ContextMismatch { left: c.ctx.names().join(","), right: z.ctx().names().join(",") });
    }
    if z.is_unit() {
        let mut r = match (c.is_ambient(), c.ctx.len()) {
            (true, _) => return DriverReport::new(ResolutionTree::new(c.clone())).finalize(false),
            (false, 2) => floc_curve(c)?,
            (false, _) => floc_surface(c)?,
        };
        for e in &mut r.centers_log {
            e.phase = Some(2);
        }
        return Ok(r);
    }
    if !c.is_ambient() {
        return Err(Error::Unsupported("pair with a singular variety and a nonempty subscheme".into()));
    }
    let mut report = DriverReport::new(ResolutionTree::new(c.clone()));
    let z = z.minimized();
    let from = report.tree.steps.len();
    if z.gens().len() == 1 {
        // already Cartier: the blow-up is the identity
        report.tree.apply_empty(&c.id, &Center::from_generators(z.gens().to_vec(), Tag::Subscheme.as_str()), 1);
    } else {
        let comp = Center::from_generators(z.gens().to_vec(), Tag::Subscheme.as_str()).component()?;
        report.tree.apply_components(&c.id, &[comp], Tag::Subscheme.as_str(), 1)?;
    }
    report.log_since(from, Tag::Subscheme, Some(1));
    // the ambient space is smooth, so the second phase is empty
    let mut index = 2;
    let mut done = false;
    for _ in 0..ROUNDS {
        let mut failing: BTreeMap<String, Vec<AlignedComponent>> = BTreeMap::new();
        for leaf in report.tree.leaves() {
            let (h, pts) = test_points(&report.tree, leaf, &z)?;
            for p in pts {
                if !is_strictly_monomial_at(&h, &p, leaf) {
                    failing.entry(leaf.id.clone()).or_default().push(AlignedComponent::from_point(&p));
                }
            }
        }
        if failing.is_empty() {
            done = true;
            break;
        }
        for (id, comps) in failing {
            let from = report.tree.steps.len();
            report.tree.apply_components(&id, &comps, Tag::MonomialCase.as_str(), index)?;
            report.log_since(from, Tag::MonomialCase, Some(3));
        }
        index += 1;
    }
    if !done {
        return Err(Error::Postcondition("monomialization did not terminate".into()));
    }
    let mut checks = Vec::new();
    for leaf in report.tree.leaves() {
        let (h, mut pts) = test_points(&report.tree, leaf, &z)?;
        pts.push(Point::origin(&leaf.ctx));
        for p in pts {
            checks.push((leaf.id.clone(), p.clone(), is_strictly_monomial_at(&h, &p, leaf)));
        }
    }
    if let Some((id, p, _)) = checks.iter().find(|c| !c.2) {
        return Err(Error::Postcondition(format!("pullback not strictly monomial at {p} on `{id}`")));
    }
    report.monomial_checks = checks;
    report.finalize(false)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn origin_in_the_plane() {
        let c = Chart::parse_root(&["x", "y"], "0").unwrap();
        let z = Ideal::from_gens(vec![c.poly("x").unwrap(), c.poly("y").unwrap()]);
        let r = resolve_pair(&c, &z).unwrap();
        assert_eq!(r.length(), 1);
        assert!(r.centers_log.iter().all(|e| e.phase == Some(1)));
    }

    #[test]
    fn cusp_needs_three_points() {
        let c = Chart::parse_root(&["x", "y"], "0").unwrap();
        let z = Ideal::from_gens(vec![c.poly("y^2 - x^3").unwrap()]);
        let r = resolve_pair(&c, &z).unwrap();
        let phase3: Vec<_> = r.centers_log.iter().filter(|e| e.phase == Some(3)).collect();
        assert_eq!(phase3.len(), 3);
        assert_eq!(phase3[0].chart, "root/=");
        assert!(r.monomial_checks.iter().all(|c| c.2));
        assert!(r.tree.steps[0].empty);
    }
}
