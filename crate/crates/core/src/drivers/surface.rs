//! Surfaces in A³: the maximal-contact driver and the localization-stage
//! driver built on top of it.

use std::collections::{BTreeMap, BTreeSet};

use crate::algebra::{Ideal, Point, Polynomial};
use crate::blowup::ResolutionTree;
use crate::error::{Error, Result};
use crate::geometry::{aligned_locus, AlignedComponent, Chart};

use super::loci::{contracted, max_order, order_along, order_locus, pull_back, root_point, singular_components, some_point};
use super::marked::{run_marked, MarkedState};
use super::report::{DriverReport, Tag};

const ROUNDS: usize = 32;

fn check_surface(c: &Chart) -> Result<()> {
    if c.ctx.len() != 3 || c.is_ambient() {
        return Err(Error::Unsupported(format!("not a surface in A^3: {}", c.equation)));
    }
    if let Some(k) = singular_components(c, &[])?.iter().find(|k| k.dim() + 1 >= c.ctx.len()) {
        return Err(Error::NonReduced(format!("{} is singular along {:?}", c.equation, k.fixed)));
    }
    Ok(())
}

/// Resolves the singular leaves of the tree lying over `V(support)` (root
/// polynomials; empty means everywhere) by the maximal-contact driver.
pub(crate) fn run_fvar(report: &mut DriverReport, support: &[Polynomial], start: usize, tag: Option<Tag>) -> Result<usize> {
    let mut index = start;
    for _ in 0..ROUNDS {
        let mut singular: Vec<(String, u32, Vec<Polynomial>)> = Vec::new();
        for leaf in report.tree.leaves() {
            if leaf.is_ambient() {
                continue;
            }
            let within = pull_back(&report.tree, &leaf.id, support);
            let all: Vec<usize> = (0..leaf.ctx.len()).collect();
            let m = max_order(&leaf.ctx, std::slice::from_ref(&leaf.equation), &all, &within, &leaf.inverted);
            if m >= 2 {
                singular.push((leaf.id.clone(), m, within));
            }
        }
        let Some(d) = singular.iter().map(|s| s.1).max() else {
            return Ok(index);
        };
        if d == 2 {
            let mut states = BTreeMap::new();
            for (id, _, within) in singular {
                let c = report.tree.chart(&id);
                let ideal = Ideal::new(&c.ctx, vec![c.equation.clone()])?;
                states.insert(id, MarkedState { ideal, control: 2, boundary: Vec::new(), cut: Vec::new(), support: within });
            }
            index = run_marked(report, states, index, tag)?;
        } else {
            for (id, m, within) in singular {
                if m != d {
                    continue;
                }
                let c = report.tree.chart(&id).clone();
                let all: Vec<usize> = (0..c.ctx.len()).collect();
                let mut locus = order_locus(&c.ctx, std::slice::from_ref(&c.equation), &all, d);
                locus.extend(within);
                let comps = aligned_locus(&Ideal::new(&c.ctx, locus)?, &c.inverted)?;
                if comps.iter().any(|k| k.dim() > 0) {
                    return Err(Error::CoefficientIdealUnsupported(d));
                }
                let from = report.tree.steps.len();
                report.tree.apply_components(&id, &comps, Tag::MaxMultiplicity.as_str(), index)?;
                report.log_since(from, tag.unwrap_or(Tag::MaxMultiplicity), None);
            }
            index += 1;
        }
    }
    Err(Error::Postcondition("surface driver did not terminate".into()))
}

/// The maximal-contact driver on a surface.
pub fn fvar_surface(c: &Chart) -> Result<DriverReport> {
    check_surface(c)?;
    let mut report = DriverReport::new(ResolutionTree::new(c.clone()));
    run_fvar(&mut report, &[], 1, None)?;
    report.finalize(true)
}

/// Singular lines of the leaves that are not contracted to points of the
/// root, with their generic multiplicities.
fn generic_lines(t: &ResolutionTree) -> Result<Vec<(String, AlignedComponent, u32)>> {
    let mut out = Vec::new();
    for leaf in t.leaves() {
        for comp in singular_components(leaf, &[])? {
            if comp.dim() == 1 && !contracted(t, &leaf.id, &comp) {
                let all: Vec<usize> = (0..leaf.ctx.len()).collect();
                let m = order_along(&leaf.ctx, std::slice::from_ref(&leaf.equation), &all, &comp);
                out.push((leaf.id.clone(), comp, m));
            }
        }
    }
    Ok(out)
}

/// The curve stage: blow up all generic singular lines, then the generic
/// lines of maximal multiplicity, until no singular line dominates a curve
/// of the root.
fn run_generic(report: &mut DriverReport, start: usize) -> Result<usize> {
    let mut index = start;
    let mut first = true;
    for _ in 0..ROUNDS {
        let lines = generic_lines(&report.tree)?;
        let Some(top) = lines.iter().map(|l| l.2).max() else {
            return Ok(index);
        };
        let mut by: BTreeMap<String, Vec<AlignedComponent>> = BTreeMap::new();
        for (id, comp, m) in lines {
            if first || m == top {
                by.entry(id).or_default().push(comp);
            }
        }
        for (id, comps) in by {
            for (i, a) in comps.iter().enumerate() {
                if comps[i + 1..].iter().any(|b| !a.fixed.iter().any(|(v, x)| b.fixed.iter().any(|(w, y)| v == w && x != y))) {
                    return Err(Error::Unsupported(format!("intersecting singular curves on chart `{id}`")));
                }
            }
            let from = report.tree.steps.len();
            report.tree.apply_components(&id, &comps, Tag::MaxMultiplicity.as_str(), index)?;
            report.log_since(from, Tag::MaxMultiplicity, None);
        }
        first = false;
        index += 1;
    }
    Err(Error::Postcondition("curve stage did not terminate".into()))
}

/// Root points over which the curve stage leaves singularities.
fn bad_points(t: &ResolutionTree) -> Result<Vec<Point>> {
    let mut b = BTreeSet::new();
    for leaf in t.leaves() {
        for comp in singular_components(leaf, &[])? {
            if comp.dim() > 0 && !contracted(t, &leaf.id, &comp) {
                return Err(Error::Postcondition(format!("generic singular curve left on `{}`", leaf.id)));
            }
            b.insert(root_point(t, &leaf.id, &some_point(&leaf.ctx, &comp)));
        }
    }
    Ok(b.into_iter().collect())
}

/// The localization-stage driver: the curve stage, preceded by the blow-up
/// of the points over which it fails, followed by the maximal-contact
/// driver over those points.
pub fn floc_surface(c: &Chart) -> Result<DriverReport> {
    check_surface(c)?;
    let comps = singular_components(c, &[])?;
    let has_lines = comps.iter().any(|k| k.dim() == 1);
    let b: Vec<Point> = if has_lines {
        let mut scratch = DriverReport::new(ResolutionTree::new(c.clone()));
        run_generic(&mut scratch, 1)?;
        let b = bad_points(&scratch.tree)?;
        if b.is_empty() {
            return scratch.finalize(true);
        }
        b
    } else {
        comps.iter().filter_map(|k| k.point(&c.ctx)).collect()
    };
    let mut report = DriverReport::new(ResolutionTree::new(c.clone()));
    if b.is_empty() {
        return report.finalize(true);
    }
    let points: Vec<AlignedComponent> = b.iter().map(AlignedComponent::from_point).collect();
    let from = report.tree.steps.len();
    report.tree.apply_components(&c.id, &points, Tag::Step1Points.as_str(), 1)?;
    report.log_since(from, Tag::Step1Points, None);
    let mut index = 2;
    if has_lines {
        index = run_generic(&mut report, index)?;
    }
    let mut over = b[0].ideal(&c.ctx);
    for p in &b[1..] {
        over = over.intersect(&p.ideal(&c.ctx));
    }
    let support = over.minimized().gens().to_vec();
    run_fvar(&mut report, &support, index, Some(Tag::Step3Small))?;
    report.finalize(true)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn surface(eq: &str) -> Chart {
        Chart::parse_root(&["x", "y", "z"], eq).unwrap()
    }

    fn centers(r: &DriverReport) -> Vec<(usize, String, String)> {
        r.centers().into_iter().map(|(k, id, i)| (k, id, i.canonical())).collect()
    }

    #[test]
    fn whitney_floc_blows_up_the_line() {
        let r = floc_surface(&surface("y^2 + x*z^2")).unwrap();
        assert_eq!(centers(&r), vec![(1, "root".into(), "(y, z)".into())]);
    }

    #[test]
    fn whitney_fvar_three_steps() {
        let r = fvar_surface(&surface("y^2 + x*z^2")).unwrap();
        assert_eq!(
            centers(&r),
            vec![
                (1, "root".into(), "(x, y, z)".into()),
                (2, "root/x".into(), "(y1, z1)".into()),
                (3, "root/z".into(), "(x1, y1, z1)".into()),
            ]
        );
    }

    #[test]
    fn exam2_floc_x_chart() {
        let r = floc_surface(&surface("y^2 + x*z^3")).unwrap();
        let over_x: Vec<(usize, String, String)> =
            centers(&r).into_iter().filter(|(_, id, _)| id == "root" || id.starts_with("root/x")).collect();
        assert_eq!(over_x.len(), 5, "{over_x:?}");
    }

    #[test]
    fn node_line_is_one_step_both_ways() {
        let c = surface("y^2 - x^2*(x + 1)");
        assert_eq!(centers(&floc_surface(&c).unwrap()), vec![(1, "root".into(), "(x, y)".into())]);
        assert_eq!(centers(&fvar_surface(&c).unwrap()), vec![(1, "root".into(), "(x, y)".into())]);
    }
}
