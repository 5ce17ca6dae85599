//! Problem parsing and trace emission for the `blowup` binary.

pub mod corpus;

use std::fmt;
use std::str::FromStr;
use std::sync::Arc;

use blowup_core::algebra::parse::parse_list;
use blowup_core::algebra::{Ideal, Polynomial, VarContext};
use blowup_core::blowup::MarkedIdeal;
use blowup_core::drivers::{
    bm_resolve_marked, floc_curve, floc_surface, fvar_surface, resolve_curve, resolve_pair, DriverReport,
};
use blowup_core::error::Error;
use blowup_core::geometry::Chart;

/// Process exit codes.
pub mod exit {
    pub const OK: i32 = 0;
    pub const PARSE: i32 = 1;
    pub const DRIVER: i32 = 2;
    pub const CORPUS: i32 = 3;
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Driver {
    Fvar,
    Floc,
    CurveFvar,
    CurveFloc,
    Marked,
    Pair,
}

impl FromStr for Driver {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        Ok(match s {
            "fvar" => Driver::Fvar,
            "floc" => Driver::Floc,
            "curve-fvar" => Driver::CurveFvar,
            "curve-floc" => Driver::CurveFloc,
            "marked" => Driver::Marked,
            "pair" => Driver::Pair,
            _ => return Err(format!("unknown driver `{s}` (expected fvar, floc, curve-fvar, curve-floc, marked or pair)")),
        })
    }
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum Format {
    Text,
    Json,
    #[default]
    Both,
}

impl FromStr for Format {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        match s {
            "text" => Ok(Format::Text),
            "json" => Ok(Format::Json),
            "both" => Ok(Format::Both),
            _ => Err(format!("unknown format `{s}` (expected text, json or both)")),
        }
    }
}

/// Problem fields as given, before validation. Every field is text so that
/// flags and corpus case files share one validator.
#[derive(Clone, Debug, Default)]
pub struct RawProblem {
    pub vars: Option<String>,
    pub eq: Option<String>,
    pub gens: Option<String>,
    pub driver: Option<String>,
    pub control: Option<String>,
    pub subscheme: Option<String>,
    pub format: Option<String>,
}

#[derive(Clone, Debug)]
pub struct ProblemSpec {
    pub ctx: Arc<VarContext>,
    pub equation: Polynomial,
    pub driver: Driver,
    /// Marked driver only.
    pub marked: Option<MarkedIdeal>,
    /// Pair driver only.
    pub subscheme: Option<Ideal>,
    pub format: Format,
}

/// Every violation found while validating a problem.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Diagnostics(pub Vec<String>);

impl fmt::Display for Diagnostics {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, d) in self.0.iter().enumerate() {
            if i > 0 {
                writeln!(f)?;
            }
            write!(f, "error: {d}")?;
        }
        Ok(())
    }
}

fn polys(field: &str, text: &str, ctx: &Arc<VarContext>, errs: &mut Vec<String>) -> Option<Vec<Polynomial>> {
    parse_list(text, ctx).map_err(|e| errs.push(format!("--{field}: {e}"))).ok()
}

pub fn parse_problem(raw: &RawProblem) -> Result<ProblemSpec, Diagnostics> {
    let mut errs = Vec::new();
    if let Ok(v) = std::env::var("BLOWUP_SEED_SORT") {
        if v != "lex" {
            errs.push(format!("BLOWUP_SEED_SORT={v}: only `lex` is supported"));
        }
    }
    let driver = match raw.driver.as_deref() {
        None => {
            errs.push("--driver is required".into());
            None
        }
        Some(d) => d.parse::<Driver>().map_err(|e| errs.push(e)).ok(),
    };
    let format = match raw.format.as_deref() {
        None => Some(Format::default()),
        Some(f) => f.parse::<Format>().map_err(|e| errs.push(e)).ok(),
    };
    let control = match (raw.control.as_deref(), driver) {
        (None, Some(Driver::Marked)) => {
            errs.push("control required".into());
            None
        }
        (Some(_), Some(d)) if d != Driver::Marked => {
            errs.push("--control only applies to the marked driver".into());
            None
        }
        (Some(c), _) => match c.trim().parse::<u32>() {
            Ok(d) if d >= 1 => Some(d),
            _ => {
                errs.push(format!("--control: expected a positive integer, got `{c}`"));
                None
            }
        },
        (None, _) => None,
    };
    if raw.subscheme.is_some() && driver.is_some_and(|d| d != Driver::Pair) {
        errs.push("--subscheme only applies to the pair driver".into());
    }
    if raw.gens.is_some() && driver.is_some_and(|d| d != Driver::Marked) {
        errs.push("--gens only applies to the marked driver".into());
    }
    let ctx = match raw.vars.as_deref() {
        None => {
            errs.push("--vars is required".into());
            None
        }
        Some(v) => {
            let names: Vec<&str> = v.split(',').map(str::trim).collect();
            VarContext::new(&names).map_err(|e| errs.push(format!("--vars: {e}"))).ok()
        }
    };
    let mut equation = None;
    let mut gens = None;
    let mut subscheme = None;
    if let Some(ctx) = &ctx {
        let eq_required = !matches!(driver, Some(Driver::Marked) | Some(Driver::Pair));
        match raw.eq.as_deref() {
            Some(e) => equation = Polynomial::parse(e, ctx).map_err(|err| errs.push(format!("--eq: {err}"))).ok(),
            None if eq_required => errs.push("--eq is required".into()),
            None => equation = Some(Polynomial::zero(ctx)),
        }
        if driver == Some(Driver::Marked) {
            gens = match raw.gens.as_deref() {
                Some(g) => polys("gens", g, ctx, &mut errs),
                None => equation.clone().map(|e| vec![e]),
            };
        }
        if driver == Some(Driver::Pair) {
            subscheme = match raw.subscheme.as_deref() {
                Some(s) => polys("subscheme", s, ctx, &mut errs),
                None => Some(vec![Polynomial::one(ctx)]),
            };
        }
    }
    if !errs.is_empty() {
        return Err(Diagnostics(errs));
    }
    let ctx = ctx.expect("validated");
    let marked = gens.map(|g| MarkedIdeal::new(Ideal::from_gens(g), control.expect("validated")));
    Ok(ProblemSpec {
        ctx,
        equation: equation.expect("validated"),
        driver: driver.expect("validated"),
        marked,
        subscheme: subscheme.map(Ideal::from_gens),
        format: format.expect("validated"),
    })
}

pub fn run(spec: &ProblemSpec) -> Result<DriverReport, Error> {
    let chart = Chart::root("root", spec.equation.clone());
    match spec.driver {
        Driver::Fvar => fvar_surface(&chart),
        Driver::Floc => floc_surface(&chart),
        Driver::CurveFvar => resolve_curve(&chart),
        Driver::CurveFloc => floc_curve(&chart),
        Driver::Marked => bm_resolve_marked(spec.marked.as_ref().expect("marked problem")),
        Driver::Pair => resolve_pair(&chart, spec.subscheme.as_ref().expect("pair problem")),
    }
}

/// Text trace; a resolution with no steps says so explicitly.
pub fn text_trace(r: &DriverReport) -> String {
    let t = r.trace();
    if t.is_empty() {
        "no blow-ups: already smooth\n".to_string()
    } else {
        t
    }
}
