//! Localization of blow-up sequences, closures of centers, and
//! synchronized merging of independent sequences.

use std::collections::{BTreeMap, BTreeSet};
use std::sync::Arc;

use num_traits::Zero;

use crate::algebra::{Ideal, Point, Polynomial, VarContext};
use crate::error::{Error, Result};
use crate::geometry::Chart;

use super::center::Center;
use super::tree::ResolutionTree;

/// An open piece of a chart.
#[derive(Clone, Debug)]
pub enum Localization {
    /// `D(h)`.
    Principal(Polynomial),
    /// `Spec O_{X,p}`.
    Point(Point),
}

/// Schematic closure in `ambient` of a center living on an open piece.
pub fn pushforward_center(v: &Center, ambient: &Chart, open: &Localization) -> Result<Center> {
    let label = format!("closure of {}", v.label);
    match open {
        Localization::Principal(h) => {
            if !h.ctx().compatible(&ambient.ctx) {
                return Err(Error::ContextMismatch {
                    left: ambient.ctx.names().join(","),
                    right: h.ctx().names().join(","),
                });
            }
            let closure = v.ideal().saturate(h)?;
            let mut gens = closure.groebner().to_vec();
            if gens.is_empty() {
                gens.push(Polynomial::zero(&ambient.ctx));
            }
            Ok(Center::from_generators(gens, &label))
        }
        Localization::Point(p) => {
            // an aligned center is prime: its closure from the local ring is
            // itself when it passes through the point, and empty otherwise
            if v.alignment().is_err() {
                return Err(Error::UnsupportedLocalization(format!(
                    "closure of the non-aligned center {} from the point {p}",
                    v.ideal().canonical()
                )));
            }
            let vals = p.values();
            if v.generators.iter().all(|g| g.eval(&vals).is_zero()) {
                Ok(v.clone().with_label(&label))
            } else {
                Ok(Center::unit(&ambient.ctx, &label))
            }
        }
    }
}

/// Pulls `D(h)` (h on the first root) back to every chart; steps whose
/// center misses the open piece are marked empty and drop out of
/// [`ResolutionTree::sequence`].
pub fn restrict_sequence(t: &ResolutionTree, h: &Polynomial) -> ResolutionTree {
    let mut out = t.clone();
    let root = t.roots[0].clone();
    for id in t.charts.keys() {
        if t.root_of(id).id != root {
            continue;
        }
        let pulled = t.root_map(id).apply(h);
        let c = out.charts.get_mut(id).unwrap();
        *c = c.localized(&pulled);
    }
    for s in out.steps.iter_mut() {
        if s.empty {
            continue;
        }
        let c = &out.charts[&s.parent];
        let meets = !s.center.ideal().saturate_all(&c.inverted).expect("nonzero").is_unit();
        if !meets {
            s.empty = true;
        }
    }
    out
}

/// Closure in the root of the image of `ideal` on chart `id`, in the root's
/// canonical text.
pub fn image_in_root(t: &ResolutionTree, id: &str, ideal: &Ideal) -> Ideal {
    let c = t.chart(id);
    let root = t.root_of(id);
    let local = ideal.saturate_all(&c.inverted).expect("nonzero");
    let pi = t.root_map(id);
    if pi.is_identity() {
        return local;
    }
    let n = c.ctx.len();
    let m = root.ctx.len();
    let names: Vec<String> =
        (0..n).map(|i| format!("c_{i}")).chain((0..m).map(|i| format!("r_{i}"))).collect();
    let big: Arc<VarContext> = VarContext::new(&names).expect("fresh names");
    let child_map: Vec<usize> = (0..n).collect();
    let mut gens: Vec<Polynomial> = local.gens().iter().map(|g| g.embed(&big, &child_map)).collect();
    for v in 0..m {
        let img = pi.image_of(v).embed(&big, &child_map);
        gens.push(&Polynomial::var(&big, n + v) - &img);
    }
    let keep: Vec<usize> = (n..n + m).collect();
    let elim = Ideal::from_gens(gens).eliminate(&keep);
    let back: Vec<usize> = (0..n + m).map(|i| i.saturating_sub(n)).collect();
    let gens: Vec<Polynomial> = elim.gens().iter().map(|g| g.embed(&root.ctx, &back)).collect();
    Ideal::from_gens(gens).minimized()
}

/// Per non-empty step (in order), the set of root images of its centers.
pub fn center_images(t: &ResolutionTree) -> Vec<BTreeSet<String>> {
    t.sequence()
        .into_iter()
        .map(|(_, steps)| steps.iter().map(|s| image_in_root(t, &s.parent, &s.center.ideal()).canonical()).collect())
        .collect()
}

/// One sequence over the disjoint union: shorter sequences are padded with
/// empty steps, and step `k` of the result is the union of the step-`k`
/// centers. Chart ids are prefixed with the component number when they
/// would collide.
pub fn merge_synchronized(trees: &[ResolutionTree]) -> ResolutionTree {
    assert!(!trees.is_empty(), "nothing to merge");
    let len = trees.iter().map(|t| t.max_index()).max().unwrap_or(0);
    let mut ids = BTreeSet::new();
    let collide = trees.iter().any(|t| t.charts.keys().any(|k| !ids.insert(k.clone())));
    let mut merged = ResolutionTree { roots: Vec::new(), charts: BTreeMap::new(), steps: Vec::new() };
    for (k, t) in trees.iter().enumerate() {
        let mut t = t.clone();
        t.pad(len);
        let rename = |id: &str| if collide { format!("U{k}:{id}") } else { id.to_string() };
        merged.roots.extend(t.roots.iter().map(|r| rename(r)));
        for (id, mut c) in t.charts {
            c.id = rename(&id);
            if let Some((p, s)) = c.parent.take() {
                c.parent = Some((rename(&p), s));
            }
            merged.charts.insert(c.id.clone(), c);
        }
        for mut s in t.steps {
            s.parent = rename(&s.parent);
            s.children = s.children.iter().map(|c| rename(c)).collect();
            merged.steps.push(s);
        }
    }
    merged.steps.sort_by_key(|s| s.index);
    merged
}
