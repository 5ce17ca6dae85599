//! Plane curves: blow up points of maximal multiplicity until smooth.

use std::collections::BTreeMap;

use crate::blowup::ResolutionTree;
use crate::error::{Error, Result};
use crate::geometry::{AlignedComponent, Chart};

use super::loci::{order_along, singular_components};
use super::report::{DriverReport, Tag};

const ROUNDS: usize = 64;

/// Singular points of every leaf with their multiplicities.
fn singular_points(t: &ResolutionTree) -> Result<Vec<(String, AlignedComponent, u32)>> {
    let mut out = Vec::new();
    for leaf in t.leaves() {
        for comp in singular_components(leaf, &[])? {
            if comp.dim() > 0 {
                return Err(Error::NonReduced(leaf.equation.to_string()));
            }
            let all: Vec<usize> = (0..leaf.ctx.len()).collect();
            let m = order_along(&leaf.ctx, std::slice::from_ref(&leaf.equation), &all, &comp);
            out.push((leaf.id.clone(), comp, m));
        }
    }
    Ok(out)
}

pub(crate) fn run_curve(report: &mut DriverReport, all_first: bool, start: usize) -> Result<usize> {
    let mut index = start;
    let mut first = all_first;
    for _ in 0..ROUNDS {
        let pts = singular_points(&report.tree)?;
        let Some(top) = pts.iter().map(|p| p.2).max() else {
            return Ok(index);
        };
        let tag = if first { Tag::Step1Points } else { Tag::MaxMultiplicity };
        let mut by: BTreeMap<String, Vec<AlignedComponent>> = BTreeMap::new();
        for (id, comp, m) in pts {
            if first || m == top {
                by.entry(id).or_default().push(comp);
            }
        }
        for (id, comps) in by {
            let from = report.tree.steps.len();
            report.tree.apply_components(&id, &comps, tag.as_str(), index)?;
            report.log_since(from, tag, None);
        }
        first = false;
        index += 1;
    }
    Err(Error::Postcondition("curve driver did not terminate".into()))
}

fn check_plane(c: &Chart) -> Result<()> {
    if c.ctx.len() != 2 || c.is_ambient() {
        return Err(Error::Unsupported(format!("not a plane curve: {}", c.equation)));
    }
    Ok(())
}

/// Blows up, at each step, all points of maximal multiplicity.
pub fn resolve_curve(c: &Chart) -> Result<DriverReport> {
    check_plane(c)?;
    let mut report = DriverReport::new(ResolutionTree::new(c.clone()));
    run_curve(&mut report, false, 1)?;
    report.finalize(true)
}

/// Blows up all singular points first, then proceeds by multiplicity.
pub fn floc_curve(c: &Chart) -> Result<DriverReport> {
    check_plane(c)?;
    let mut report = DriverReport::new(ResolutionTree::new(c.clone()));
    run_curve(&mut report, true, 1)?;
    report.finalize(true)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn curve(eq: &str) -> Chart {
        Chart::parse_root(&["x", "y"], eq).unwrap()
    }

    #[test]
    fn cusp_in_one_step() {
        let r = resolve_curve(&curve("y^2 - x^3")).unwrap();
        assert_eq!(r.length(), 1);
        assert_eq!(r.tree.chart("root/x").equation.to_string(), "y1^2 - x1");
    }

    #[test]
    fn triple_point_before_nodes() {
        let c = curve("y*(x - y)*(x + y)*(x - 1)");
        let fvar = resolve_curve(&c).unwrap();
        let floc = floc_curve(&c).unwrap();
        assert_eq!(fvar.length(), 2);
        assert_eq!(floc.length(), 1);
    }

    #[test]
    fn smooth_is_empty() {
        assert_eq!(floc_curve(&curve("y - x^2")).unwrap().length(), 0);
    }
}
