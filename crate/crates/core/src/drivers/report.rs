use std::collections::BTreeMap;

use serde_json::{json, Value};

use crate::algebra::{Ideal, Point, Polynomial};
use crate::blowup::{Center, MarkedIdeal, ResolutionTree};
use crate::error::{Error, Result};
use crate::geometry::{is_smooth, Smoothness};

/// Why a center was chosen.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub enum Tag {
    MaxMultiplicity,
    Step1Points,
    Step2CenterRepair,
    Step3Small,
    Companion,
    MonomialCase,
    /// Blow-up of the subscheme in the first phase of the pair driver.
    Subscheme,
}

impl Tag {
    pub fn as_str(self) -> &'static str {
        match self {
            Tag::MaxMultiplicity => "max-multiplicity",
            Tag::Step1Points => "step1-points",
            Tag::Step2CenterRepair => "step2-center-repair",
            Tag::Step3Small => "step3-small",
            Tag::Companion => "companion",
            Tag::MonomialCase => "monomial-case",
            Tag::Subscheme => "subscheme",
        }
    }
}

impl std::fmt::Display for Tag {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.as_str())
    }
}

#[derive(Clone, Debug)]
pub struct LogEntry {
    pub step: usize,
    pub chart: String,
    pub center: Center,
    pub tag: Tag,
    /// Phase of the pair driver, when applicable.
    pub phase: Option<u8>,
}

/// Postconditions, each checked when the report is finalized.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Checks {
    pub leaves_smooth: bool,
    pub centers_smooth: bool,
    /// `None` when the driver does not resolve a singular variety.
    pub centers_over_singular_locus: Option<bool>,
}

#[derive(Clone, Debug)]
pub struct DriverReport {
    pub tree: ResolutionTree,
    pub centers_log: Vec<LogEntry>,
    /// Per leaf, the reduced Gröbner basis of its localized singular ideal.
    pub certificates: BTreeMap<String, Vec<Polynomial>>,
    pub checks: Checks,
    /// Marked ideals carried by the marked driver, per chart.
    pub marked: BTreeMap<String, MarkedIdeal>,
    /// Pair driver: strict monomiality at each tested point of each leaf.
    pub monomial_checks: Vec<(String, Point, bool)>,
}

impl DriverReport {
    pub fn new(tree: ResolutionTree) -> Self {
        DriverReport {
            tree,
            centers_log: Vec::new(),
            certificates: BTreeMap::new(),
            checks: Checks::default(),
            marked: BTreeMap::new(),
            monomial_checks: Vec::new(),
        }
    }

    /// Logs the steps appended to the tree since `from`.
    pub(crate) fn log_since(&mut self, from: usize, tag: Tag, phase: Option<u8>) {
        for s in &self.tree.steps[from..] {
            self.centers_log.push(LogEntry {
                step: s.index,
                chart: s.parent.clone(),
                center: s.center.clone(),
                tag,
                phase,
            });
        }
    }

    pub fn length(&self) -> usize {
        self.tree.length()
    }

    /// Non-empty centers of chart-level steps, in step order.
    pub fn centers(&self) -> Vec<(usize, String, Ideal)> {
        self.tree.steps.iter().filter(|s| !s.empty).map(|s| (s.index, s.parent.clone(), s.center.ideal())).collect()
    }

    /// Checks and stores the postconditions. `singular_support` requests the
    /// check that centers map into the singular locus of the root.
    pub(crate) fn finalize(mut self, singular_support: bool) -> Result<Self> {
        self.tree.validate()?;
        for leaf in self.tree.leaves() {
            match is_smooth(leaf) {
                Smoothness::Smooth { certificate } => {
                    self.certificates.insert(leaf.id.clone(), certificate);
                }
                Smoothness::Singular { witness } => {
                    let at = witness.map(|p| format!(" at {p}")).unwrap_or_default();
                    return Err(Error::Postcondition(format!("leaf `{}` is singular{at}", leaf.id)));
                }
            }
        }
        // aligned centers have a selection Jacobian of full rank
        let centers_smooth = self.tree.steps.iter().filter(|s| !s.empty).all(|s| s.center.alignment().is_ok());
        if !centers_smooth {
            return Err(Error::SingularCenter("a center is not coordinate-aligned".into()));
        }
        let over = if singular_support {
            let ok = self.tree.steps.iter().filter(|s| !s.empty).all(|s| {
                let root = self.tree.root_of(&s.parent);
                let pi = self.tree.root_map(&s.parent);
                let ideal = s.center.ideal();
                crate::geometry::singular::jacobian_generators(&root.equation)
                    .iter()
                    .all(|g| ideal.contains(&pi.apply(g)))
            });
            if !ok {
                return Err(Error::Postcondition("a center leaves the singular locus".into()));
            }
            Some(true)
        } else {
            None
        };
        self.checks = Checks { leaves_smooth: true, centers_smooth, centers_over_singular_locus: over };
        Ok(self)
    }

    /// The tree JSON extended with `centers_log` and `certificates`.
    pub fn to_json(&self) -> Value {
        let mut v = self.tree.to_json();
        v["centers_log"] = self
            .centers_log
            .iter()
            .map(|e| {
                let mut o = json!({
                    "step": e.step,
                    "chart": e.chart,
                    "center": e.center.gens_text(),
                    "tag": e.tag.as_str(),
                });
                if let Some(p) = e.phase {
                    o["phase"] = json!(p);
                }
                o
            })
            .collect();
        v["certificates"] = self
            .certificates
            .iter()
            .map(|(id, c)| json!({ "chart": id, "groebner": c.iter().map(|p| p.to_string()).collect::<Vec<_>>() }))
            .collect();
        v
    }

    pub fn to_json_string(&self) -> String {
        serde_json::to_string_pretty(&self.to_json()).expect("values serialize")
    }

    /// One line per step index. Empty blow-ups (the center is already a
    /// divisor) are marked `identity`.
    pub fn trace(&self) -> String {
        let mut by: BTreeMap<usize, Vec<&LogEntry>> = BTreeMap::new();
        for e in &self.centers_log {
            by.entry(e.step).or_default().push(e);
        }
        let mut out = String::new();
        for (k, es) in by {
            let parts: Vec<String> = es
                .iter()
                .map(|e| {
                    let step = self.tree.steps.iter().find(|s| s.index == e.step && s.parent == e.chart);
                    let children = step.map(|s| s.children.join(", ")).unwrap_or_default();
                    let identity = if step.is_some_and(|s| s.empty) { " (identity)" } else { "" };
                    format!(
                        "blow up [{}] label={}{identity}; charts: {} -> {}",
                        e.center.gens_text().join(", "),
                        e.tag,
                        e.chart,
                        children
                    )
                })
                .collect();
            out.push_str(&format!("step {k}: {}\n", parts.join(" | ")));
        }
        out
    }
}
