//! Canonical JSON form of a tree: object keys sorted, polynomials in the
//! canonical text grammar, charts in id order.

use serde_json::{json, Map, Value};

use crate::geometry::Chart;

use super::step::BlowupStep;
use super::tree::ResolutionTree;

pub fn chart_json(c: &Chart) -> Value {
    let exceptional: Vec<Value> =
        c.exceptional.iter().map(|d| json!({ "var": d.equation.to_string(), "history": d.history })).collect();
    let parent = match &c.parent {
        None => Value::Null,
        Some((id, s)) => {
            let subst: Map<String, Value> = s
                .parent_ctx()
                .names()
                .iter()
                .zip(s.images())
                .map(|(v, p)| (v.clone(), Value::String(p.to_string())))
                .collect();
            json!({ "id": id, "subst": subst })
        }
    };
    let mut obj = json!({
        "id": c.id,
        "vars": c.ctx.names(),
        "equation": c.equation.to_string(),
        "exceptional": exceptional,
        "parent": parent,
        "birth_step": c.birth_step,
    });
    if !c.inverted.is_empty() {
        obj["inverted"] = c.inverted.iter().map(|h| h.to_string()).collect();
    }
    obj
}

pub fn step_json(s: &BlowupStep) -> Value {
    json!({
        "parent": s.parent,
        "index": s.index,
        "center": { "gens": s.center.gens_text(), "label": s.center.label },
        "children": s.children,
        "empty": s.empty,
    })
}

impl ResolutionTree {
    pub fn to_json(&self) -> Value {
        json!({
            "root": self.roots[0],
            "roots": self.roots,
            "charts": self.charts.values().map(chart_json).collect::<Vec<_>>(),
            "steps": self.steps.iter().map(step_json).collect::<Vec<_>>(),
        })
    }

    pub fn to_json_string(&self) -> String {
        serde_json::to_string_pretty(&self.to_json()).expect("values serialize")
    }
}
