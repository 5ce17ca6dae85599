//! Browser bindings: resolve a hypersurface or a marked ideal and show the
//! trace, or normalize a polynomial to canonical text.

use wasm_bindgen::prelude::*;

use blowup_core::algebra::parse::parse_list;
use blowup_core::algebra::{Ideal, Polynomial, VarContext};
use blowup_core::blowup::MarkedIdeal;
use blowup_core::drivers::{bm_resolve_marked, floc_curve, floc_surface, fvar_surface, resolve_curve, DriverReport};
use blowup_core::geometry::Chart;

/// A finished resolution as handed to the page.
#[wasm_bindgen]
pub struct Resolution {
    trace: String,
    json: String,
    steps: usize,
    leaves: Vec<String>,
}

#[wasm_bindgen]
impl Resolution {
    /// One line per blow-up index.
    #[wasm_bindgen(getter)]
    pub fn trace(&self) -> String {
        self.trace.clone()
    }

    #[wasm_bindgen(getter)]
    pub fn json(&self) -> String {
        self.json.clone()
    }

    #[wasm_bindgen(getter)]
    pub fn steps(&self) -> usize {
        self.steps
    }

    /// `id: equation` for every leaf chart.
    #[wasm_bindgen(getter)]
    pub fn leaves(&self) -> Vec<String> {
        self.leaves.clone()
    }
}

impl From<DriverReport> for Resolution {
    fn from(r: DriverReport) -> Self {
        Resolution {
            trace: r.trace(),
            json: r.to_json_string(),
            steps: r.length(),
            leaves: r.tree.leaves().iter().map(|c| format!("{}: {}", c.id, c.equation)).collect(),
        }
    }
}

fn context(vars: &str) -> Result<std::sync::Arc<VarContext>, String> {
    let names: Vec<&str> = vars.split(',').map(str::trim).collect();
    VarContext::new(&names).map_err(|e| e.to_string())
}

fn resolve_inner(vars: &str, eq: &str, driver: &str) -> Result<Resolution, String> {
    let ctx = context(vars)?;
    let chart = Chart::root("root", Polynomial::parse(eq, &ctx).map_err(|e| e.to_string())?);
    let report = match driver {
        "fvar" => fvar_surface(&chart),
        "floc" => floc_surface(&chart),
        "curve-fvar" => resolve_curve(&chart),
        "curve-floc" => floc_curve(&chart),
        _ => return Err(format!("unknown driver `{driver}`")),
    };
    report.map(Resolution::from).map_err(|e| e.to_string())
}

fn marked_inner(vars: &str, gens: &str, control: u32) -> Result<Resolution, String> {
    let ctx = context(vars)?;
    let gens = parse_list(gens, &ctx).map_err(|e| e.to_string())?;
    let m = MarkedIdeal::new(Ideal::from_gens(gens), control);
    bm_resolve_marked(&m).map(Resolution::from).map_err(|e| e.to_string())
}

fn normalize_inner(vars: &str, text: &str) -> Result<String, String> {
    let ctx = context(vars)?;
    Polynomial::parse(text, &ctx).map(|p| p.to_string()).map_err(|e| e.to_string())
}

/// Resolves `eq` in the variables `vars` (comma-separated) with one of the
/// drivers `fvar`, `floc`, `curve-fvar`, `curve-floc`.
#[wasm_bindgen]
pub fn resolve(vars: &str, eq: &str, driver: &str) -> Result<Resolution, JsValue> {
    resolve_inner(vars, eq, driver).map_err(|e| JsValue::from_str(&e))
}

/// Principalizes the marked ideal generated by `gens` with the given control.
#[wasm_bindgen]
pub fn resolve_marked(vars: &str, gens: &str, control: u32) -> Result<Resolution, JsValue> {
    marked_inner(vars, gens, control).map_err(|e| JsValue::from_str(&e))
}

/// Canonical text of a polynomial.
#[wasm_bindgen]
pub fn normalize(vars: &str, text: &str) -> Result<String, JsValue> {
    normalize_inner(vars, text).map_err(|e| JsValue::from_str(&e))
}
