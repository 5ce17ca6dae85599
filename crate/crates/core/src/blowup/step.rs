use std::sync::Arc;

use num_traits::Zero;

use crate::algebra::{Polynomial, Rational, VarContext};
use crate::error::{Error, Result};
use crate::geometry::{AlignedComponent, Chart, Divisor, Substitution};

use super::center::Center;
use super::transform::strip_exceptional;

/// One blow-up of one chart. Several steps may share an `index` when a
/// driver blows up disjoint pieces of a center simultaneously.
#[derive(Clone, Debug, PartialEq)]
pub struct BlowupStep {
    pub parent: String,
    pub index: usize,
    pub center: Center,
    pub children: Vec<String>,
    pub empty: bool,
}

/// `x → x1`, `x1 → x2`, `y12 → y13`.
pub fn next_name(name: &str) -> String {
    let digits = name.chars().rev().take_while(|c| c.is_ascii_digit()).count();
    let (base, num) = name.split_at(name.len() - digits);
    let k: u64 = if num.is_empty() { 0 } else { num.parse().unwrap_or(0) };
    format!("{base}{}", k + 1)
}

/// Name with the trailing index removed.
pub fn base_name(name: &str) -> &str {
    name.trim_end_matches(|c: char| c.is_ascii_digit())
}

/// Standard affine charts of the blow-up of `c` along an aligned center.
/// A unit-ideal center yields the empty step with one identical child.
pub fn blowup(c: &Chart, v: &Center, index: usize) -> Result<(Vec<Chart>, BlowupStep)> {
    if v.is_unit() {
        return Ok(empty_step(c, v, index));
    }
    let fixed = v.alignment()?;
    if !v.generators.iter().all(|g| g.ctx().compatible(&c.ctx)) {
        return Err(Error::ContextMismatch { left: c.ctx.names().join(","), right: v.ctx().names().join(",") });
    }
    let n = c.ctx.len();
    let names: Vec<String> = c.ctx.names().iter().map(|s| next_name(s)).collect();
    let center_vars: Vec<usize> = fixed.iter().map(|(w, _)| *w).collect();
    let shift = |w: usize| fixed.iter().find(|(u, _)| *u == w).map(|(_, a)| a.clone()).unwrap_or_else(Rational::zero);
    let mut charts = Vec::new();
    let mut ids = Vec::new();
    for &j in &center_vars {
        let mut tags: Vec<Option<usize>> = c.ctx.tags().to_vec();
        tags[j] = Some(index);
        let ctx: Arc<VarContext> = VarContext::with_tags(names.clone(), tags)?;
        let e = Polynomial::var(&ctx, j);
        let images: Vec<Polynomial> = (0..n)
            .map(|i| {
                let base = if i != j && center_vars.contains(&i) {
                    &e * &Polynomial::var(&ctx, i)
                } else {
                    Polynomial::var(&ctx, i)
                };
                &base + &Polynomial::constant(&ctx, shift(i))
            })
            .collect();
        let sigma = Substitution::new(&c.ctx, &ctx, images);
        let equation = if c.is_ambient() { Polynomial::zero(&ctx) } else { strip_exceptional(&sigma.apply(&c.equation), j) };
        let mut exceptional: Vec<Divisor> = c
            .exceptional
            .iter()
            .map(|d| Divisor { equation: strip_exceptional(&sigma.apply(&d.equation), j), history: d.history })
            .filter(|d| !d.equation.is_constant())
            .collect();
        exceptional.push(Divisor { equation: e.clone(), history: index });
        let inverted = c
            .inverted
            .iter()
            .map(|h| sigma.apply(h))
            .filter(|h| !h.is_constant())
            .collect();
        let id = format!("{}/{}", c.id, base_name(c.ctx.name(j)));
        ids.push(id.clone());
        charts.push(Chart {
            id,
            ctx,
            equation,
            ambient_relations: Vec::new(),
            exceptional,
            parent: Some((c.id.clone(), sigma)),
            birth_step: index,
            inverted,
            exceptional_var: Some(j),
        });
    }
    let step = BlowupStep { parent: c.id.clone(), index, center: v.clone(), children: ids, empty: false };
    Ok((charts, step))
}

/// Identity step recorded for synchronization (or for a Cartier center).
pub fn empty_step(c: &Chart, v: &Center, index: usize) -> (Vec<Chart>, BlowupStep) {
    let mut child = c.clone();
    child.id = format!("{}/=", c.id);
    child.parent = Some((c.id.clone(), Substitution::identity(&c.ctx)));
    child.birth_step = index;
    child.exceptional_var = None;
    let step = BlowupStep { parent: c.id.clone(), index, center: v.clone(), children: vec![child.id.clone()], empty: true };
    (vec![child], step)
}

/// Strict transform of an aligned component of the parent in the child
/// chart of `step` whose exceptional variable is `j`. `None` when the
/// transform does not meet the chart (or the component lies in the center).
pub fn lift_component(center: &Center, j: usize, comp: &AlignedComponent) -> Result<Option<AlignedComponent>> {
    let z = center.alignment()?;
    let s = |w: usize| z.iter().find(|(u, _)| *u == w).map(|(_, a)| a.clone());
    let b = |w: usize| comp.fixed.iter().find(|(u, _)| *u == w).map(|(_, a)| a.clone());
    if z.iter().all(|(w, a)| b(*w).as_ref() == Some(a)) {
        return Ok(None);
    }
    let n = comp.fixed.len() + comp.free.len();
    let mut fixed = Vec::new();
    let mut free = Vec::new();
    match b(j) {
        Some(bj) => {
            let d = bj - s(j).unwrap();
            if d.is_zero() {
                return Ok(None);
            }
            for w in 0..n {
                match (s(w), b(w)) {
                    (_, None) => free.push(w),
                    (Some(sw), Some(bw)) if w != j => fixed.push((w, (bw - sw) / &d)),
                    (Some(_), Some(_)) => fixed.push((w, d.clone())),
                    (None, Some(bw)) => fixed.push((w, bw)),
                }
            }
        }
        None => {
            for w in 0..n {
                match (s(w), b(w)) {
                    (_, None) => free.push(w),
                    (Some(sw), Some(bw)) => {
                        if bw != sw {
                            return Err(Error::NonAlignedCenter(format!(
                                "component {:?} is not aligned after blowing up {}",
                                comp.fixed, center
                            )));
                        }
                        fixed.push((w, Rational::zero()));
                    }
                    (None, Some(bw)) => fixed.push((w, bw)),
                }
            }
        }
    }
    Ok(Some(AlignedComponent { fixed, free }))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::rat;

    fn root(eq: &str) -> Chart {
        Chart::parse_root(&["x", "y", "z"], eq).unwrap()
    }

    #[test]
    fn names() {
        assert_eq!(next_name("x"), "x1");
        assert_eq!(next_name("x9"), "x10");
        assert_eq!(base_name("z13"), "z");
    }

    #[test]
    fn origin_blowup_of_whitney() {
        let c = root("y^2 + x*z^2");
        let center = Center::aligned(&c.ctx, &[(0, rat(0)), (1, rat(0)), (2, rat(0))], "origin");
        let (charts, step) = blowup(&c, &center, 1).unwrap();
        assert_eq!(charts.len(), 3);
        assert_eq!(step.children, vec!["root/x", "root/y", "root/z"]);
        let x = &charts[0];
        let sigma = &x.parent.as_ref().unwrap().1;
        let img: Vec<String> = sigma.images().iter().map(|p| p.to_string()).collect();
        assert_eq!(img, vec!["x1", "x1*y1", "x1*z1"]);
        assert_eq!(x.equation.to_string(), "x1*z1^2 + y1^2");
        assert_eq!(x.ctx.tag(0), Some(1));
        assert_eq!(x.exceptional.len(), 1);
        assert_eq!(charts[2].equation.to_string(), "y1^2 + x1*z1");
    }

    #[test]
    fn axis_blowup() {
        let c = root("y^2 + x*z^3");
        let center = Center::aligned(&c.ctx, &[(1, rat(0)), (2, rat(0))], "C");
        let (charts, _) = blowup(&c, &center, 1).unwrap();
        assert_eq!(charts.len(), 2);
        let zc = &charts[1];
        let img: Vec<String> = zc.parent.as_ref().unwrap().1.images().iter().map(|p| p.to_string()).collect();
        assert_eq!(img, vec!["x1", "y1*z1", "z1"]);
    }

    #[test]
    fn unit_center_is_empty() {
        let c = root("y^2 + x*z^2");
        let (charts, step) = blowup(&c, &Center::unit(&c.ctx, "sync"), 3).unwrap();
        assert!(step.empty);
        assert_eq!(charts.len(), 1);
        assert_eq!(charts[0].equation, c.equation);
    }

    #[test]
    fn lifting_components() {
        let ctx = VarContext::new(&["x", "y", "z"]).unwrap();
        let origin = Center::aligned(&ctx, &[(0, rat(0)), (1, rat(0)), (2, rat(0))], "o");
        let axis = AlignedComponent { fixed: vec![(1, rat(0)), (2, rat(0))], free: vec![0] };
        let lifted = lift_component(&origin, 0, &axis).unwrap().unwrap();
        assert_eq!(lifted.fixed, vec![(1, rat(0)), (2, rat(0))]);
        assert_eq!(lift_component(&origin, 1, &axis).unwrap(), None);
        let p = AlignedComponent { fixed: vec![(0, rat(2)), (1, rat(1)), (2, rat(0))], free: vec![] };
        let q = lift_component(&origin, 0, &p).unwrap().unwrap();
        assert_eq!(q.fixed, vec![(0, rat(2)), (1, crate::algebra::rat2(1, 2)), (2, rat(0))]);
        let line = AlignedComponent { fixed: vec![(1, rat(1)), (2, rat(0))], free: vec![0] };
        assert!(lift_component(&origin, 0, &line).is_err());
        assert!(lift_component(&origin, 1, &line).unwrap().is_some());
    }
}
