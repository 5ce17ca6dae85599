use std::collections::{BTreeMap, BTreeSet};

use crate::error::{Error, Result};
use crate::geometry::{AlignedComponent, Chart, Substitution};

use super::center::Center;
use super::step::{blowup, empty_step, lift_component, BlowupStep};

/// Charts and blow-up steps; a forest when several roots were merged.
#[derive(Clone, Debug)]
pub struct ResolutionTree {
    pub roots: Vec<String>,
    pub charts: BTreeMap<String, Chart>,
    pub steps: Vec<BlowupStep>,
}

impl ResolutionTree {
    pub fn new(root: Chart) -> Self {
        let id = root.id.clone();
        ResolutionTree { roots: vec![id.clone()], charts: BTreeMap::from([(id, root)]), steps: Vec::new() }
    }

    pub fn root(&self) -> &Chart {
        &self.charts[&self.roots[0]]
    }

    pub fn chart(&self, id: &str) -> &Chart {
        self.charts.get(id).unwrap_or_else(|| panic!("no chart `{id}`"))
    }

    pub fn step_of(&self, parent: &str) -> Option<&BlowupStep> {
        self.steps.iter().find(|s| s.parent == parent)
    }

    pub fn is_leaf(&self, id: &str) -> bool {
        self.step_of(id).is_none()
    }

    /// Leaves in id order.
    pub fn leaves(&self) -> Vec<&Chart> {
        let parents: BTreeSet<&str> = self.steps.iter().map(|s| s.parent.as_str()).collect();
        self.charts.values().filter(|c| !parents.contains(c.id.as_str())).collect()
    }

    pub fn leaf_ids(&self) -> Vec<String> {
        self.leaves().into_iter().map(|c| c.id.clone()).collect()
    }

    /// Root of the component containing `id`.
    pub fn root_of(&self, id: &str) -> &Chart {
        let mut c = self.chart(id);
        while let Some((p, _)) = &c.parent {
            c = self.chart(p);
        }
        c
    }

    /// Root variables in terms of the variables of chart `id`.
    pub fn root_map(&self, id: &str) -> Substitution {
        let c = self.chart(id);
        match &c.parent {
            None => Substitution::identity(&c.ctx),
            Some((p, sigma)) => self.root_map(p).then(sigma),
        }
    }

    /// Chain of ancestors from the root down to `id` (inclusive).
    pub fn ancestry(&self, id: &str) -> Vec<String> {
        let mut out = vec![id.to_string()];
        let mut c = self.chart(id);
        while let Some((p, _)) = &c.parent {
            out.push(p.clone());
            c = self.chart(p);
        }
        out.reverse();
        out
    }

    pub fn max_index(&self) -> usize {
        self.steps.iter().map(|s| s.index).max().unwrap_or(0)
    }

    /// Non-empty steps grouped by index, in index order.
    pub fn sequence(&self) -> Vec<(usize, Vec<&BlowupStep>)> {
        let mut by: BTreeMap<usize, Vec<&BlowupStep>> = BTreeMap::new();
        for s in self.steps.iter().filter(|s| !s.empty) {
            by.entry(s.index).or_default().push(s);
        }
        by.into_iter().collect()
    }

    /// Number of non-empty blow-ups in the sequence.
    pub fn length(&self) -> usize {
        self.sequence().len()
    }

    fn insert(&mut self, charts: Vec<Chart>, step: BlowupStep) -> Vec<String> {
        assert!(self.is_leaf(&step.parent), "chart `{}` was already blown up", step.parent);
        let ids = step.children.clone();
        for c in charts {
            assert!(!self.charts.contains_key(&c.id), "duplicate chart id `{}`", c.id);
            self.charts.insert(c.id.clone(), c);
        }
        self.steps.push(step);
        ids
    }

    /// Blows up leaf `id` along `center`; returns the child ids.
    pub fn apply(&mut self, id: &str, center: &Center, index: usize) -> Result<Vec<String>> {
        let (charts, step) = blowup(self.chart(id), center, index)?;
        Ok(self.insert(charts, step))
    }

    pub fn apply_empty(&mut self, id: &str, center: &Center, index: usize) -> Vec<String> {
        let (charts, step) = empty_step(self.chart(id), center, index);
        self.insert(charts, step)
    }

    /// Blows up pairwise disjoint aligned components of leaf `id` one after
    /// the other, all under the same step index. Later components are carried
    /// to every child chart they are visible in. Returns the resulting leaves.
    pub fn apply_components(
        &mut self,
        id: &str,
        comps: &[AlignedComponent],
        label: &str,
        index: usize,
    ) -> Result<Vec<String>> {
        let Some((first, rest)) = comps.split_first() else {
            return Ok(vec![id.to_string()]);
        };
        let ctx = self.chart(id).ctx.clone();
        let center = Center::from_component(&ctx, first, label);
        let children = self.apply(id, &center, index)?;
        let mut leaves = Vec::new();
        for child in children {
            let j = self.chart(&child).exceptional_var.expect("fresh chart");
            let mut lifted = Vec::new();
            for c in rest {
                if let Some(l) = lift_component(&center, j, c)? {
                    lifted.push(l);
                }
            }
            let lifted: Vec<AlignedComponent> =
                lifted.into_iter().filter(|l| visible(self.chart(&child), l)).collect();
            leaves.extend(self.apply_components(&child, &lifted, label, index)?);
        }
        Ok(leaves)
    }

    /// Pads the leaves of component `root` with empty steps up to `upto`.
    pub fn pad(&mut self, upto: usize) {
        let mut next = self.max_index() + 1;
        while next <= upto {
            for leaf in self.leaf_ids() {
                let ctx = self.chart(&leaf).ctx.clone();
                self.apply_empty(&leaf, &Center::unit(&ctx, "synchronization"), next);
            }
            next += 1;
        }
    }

    /// Checks acyclicity, single parents and parent-before-child step order.
    pub fn validate(&self) -> Result<()> {
        let mut seen: BTreeSet<&str> = self.roots.iter().map(String::as_str).collect();
        let mut parent_count: BTreeMap<&str, usize> = BTreeMap::new();
        for s in &self.steps {
            if !seen.contains(s.parent.as_str()) {
                return Err(Error::Postcondition(format!("step on `{}` precedes its chart", s.parent)));
            }
            for c in &s.children {
                *parent_count.entry(c.as_str()).or_default() += 1;
                seen.insert(c.as_str());
            }
        }
        for id in self.charts.keys() {
            let is_root = self.roots.contains(id);
            let n = parent_count.get(id.as_str()).copied().unwrap_or(0);
            if (is_root && n != 0) || (!is_root && n != 1) {
                return Err(Error::Postcondition(format!("chart `{id}` has {n} parent steps")));
            }
        }
        Ok(())
    }
}

fn visible(c: &Chart, l: &AlignedComponent) -> bool {
    if c.inverted.is_empty() {
        return true;
    }
    !l.ideal(&c.ctx).saturate_all(&c.inverted).expect("nonzero").is_unit()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{rat, Point};

    #[test]
    fn two_points_one_step() {
        // cusps at the origin and at (1, 0)
        let root = Chart::parse_root(&["x", "y"], "(y^2 - x^3)*(y^2 - (x - 1)^3)").unwrap();
        let mut t = ResolutionTree::new(root);
        let o = AlignedComponent::from_point(&Point::origin(&t.root().ctx));
        let p = AlignedComponent { fixed: vec![(0, rat(1)), (1, rat(0))], free: vec![] };
        let leaves = t.apply_components("root", &[o, p], "max-multiplicity", 1).unwrap();
        assert_eq!(t.length(), 1);
        // the second point is only visible in the x-chart of the first blow-up
        assert_eq!(leaves, vec!["root/x/x", "root/x/y", "root/y"]);
        t.validate().unwrap();
        let m = t.root_map("root/x/x");
        assert_eq!(m.images()[0].to_string(), "x2 + 1");
    }

    #[test]
    fn padding_adds_empty_steps() {
        let root = Chart::parse_root(&["x", "y"], "y^2 - x^3").unwrap();
        let mut t = ResolutionTree::new(root);
        t.pad(2);
        assert_eq!(t.steps.len(), 2);
        assert_eq!(t.length(), 0);
        assert_eq!(t.leaf_ids(), vec!["root/=/="]);
    }
}
