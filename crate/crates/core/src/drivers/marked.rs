//! Principalization of marked ideals by maximal contact.
//!
//! Every chart carries a state `(I, d, E, cut, support)`: the marked ideal
//! lives on the linear subspace `{v = 0 : v ∈ cut}` (the strict transform of
//! a hypersurface of maximal contact), and only the part of its locus inside
//! `V(support)` is considered. States are carried to children by principal
//! transform and never recomputed from the hypersurface, so the descent
//! made at the start stays valid.
//!
//! Each round, every chart proposes its top locus together with an
//! invariant; the charts of maximal invariant blow up simultaneously.

use std::cmp::Reverse;
use std::collections::BTreeMap;

use num_traits::Zero;

use crate::algebra::{Ideal, Monomial, Polynomial, Rational};
use crate::blowup::{principal_transform, MarkedIdeal, ResolutionTree};
use crate::error::{Error, Result};
use crate::geometry::{aligned_locus, AlignedComponent, Chart, Divisor};

use super::loci::{max_order, meets, order_locus};
use super::report::{DriverReport, Tag};

const ROUNDS: usize = 64;

#[derive(Clone, Debug)]
pub struct MarkedState {
    pub ideal: Ideal,
    pub control: u32,
    pub boundary: Vec<Divisor>,
    pub cut: Vec<usize>,
    pub support: Vec<Polynomial>,
}

impl MarkedState {
    pub fn new(m: &MarkedIdeal) -> Self {
        MarkedState {
            ideal: m.ideal.clone(),
            control: m.control,
            boundary: m.boundary.clone(),
            cut: Vec::new(),
            support: Vec::new(),
        }
    }

    pub fn marked(&self) -> MarkedIdeal {
        MarkedIdeal { ideal: self.ideal.clone(), control: self.control, boundary: self.boundary.clone() }
    }

    fn free(&self) -> Vec<usize> {
        (0..self.ideal.ctx().len()).filter(|v| !self.cut.contains(v)).collect()
    }

    fn gens(&self) -> Vec<Polynomial> {
        self.ideal.minimized().gens().iter().filter(|g| !g.is_zero()).cloned().collect()
    }

    fn cut_gens(&self) -> Vec<Polynomial> {
        self.cut.iter().map(|&v| Polynomial::var(self.ideal.ctx(), v)).collect()
    }

    /// Largest power of each (non-cut) boundary variable dividing `I`.
    fn monomial_part(&self, gens: &[Polynomial]) -> Vec<(usize, u32, usize)> {
        let mut out = Vec::new();
        for d in &self.boundary {
            let Some(v) = d.as_variable() else { continue };
            if self.cut.contains(&v) || out.iter().any(|(w, _, _)| *w == v) {
                continue;
            }
            let a = gens.iter().flat_map(|g| g.terms().map(move |(m, _)| m.exp(v))).min().unwrap_or(0);
            if a > 0 {
                out.push((v, a, d.history));
            }
        }
        out
    }
}

/// Comparison key of a proposed center: the non-monomial case first, then
/// the normalized order, then smaller centers.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub struct Invariant {
    pub non_monomial: bool,
    pub ratio: Rational,
    pub dim: Reverse<usize>,
}

#[derive(Clone, Debug)]
pub enum Action {
    Resolved,
    Blowup { invariant: Invariant, comps: Vec<AlignedComponent>, tag: Tag },
}

/// A variable `w` with `∂g/∂v = u·w` for some `v`, `u` nowhere zero on the
/// order-2 locus; the search runs over `v`, then `w`, in variable order.
pub fn maximal_contact(g: &Polynomial, vars: &[usize], within: &[Polynomial], inverted: &[Polynomial]) -> Option<usize> {
    let ctx = g.ctx();
    let n = ctx.len();
    let mut sing = order_locus(ctx, std::slice::from_ref(g), vars, 2);
    sing.extend(within.iter().cloned());
    for &v in vars {
        let p = g.partial_derivative(v).ok()?;
        if p.is_zero() {
            continue;
        }
        for &w in vars {
            let Some(u) = p.div_monomial(&Monomial::var(n, w, 1)) else { continue };
            let mut test = sing.clone();
            test.push(u);
            if !meets(ctx, &test, inverted) {
                return Some(w);
            }
        }
    }
    None
}

/// `(g) + (∇g)²` restricted to `w = 0`.
pub fn coefficient_ideal(g: &Polynomial, w: usize) -> Ideal {
    let zero = Rational::zero();
    let n = g.ctx().len();
    let grad: Vec<Polynomial> = (0..n).map(|v| g.partial_derivative(v).expect("in range").eval_var(w, &zero)).collect();
    let mut gens = vec![g.eval_var(w, &zero)];
    for i in 0..n {
        for j in i..n {
            gens.push(&grad[i] * &grad[j]);
        }
    }
    let gens: Vec<Polynomial> = gens.into_iter().filter(|p| !p.is_zero()).collect();
    match gens.is_empty() {
        true => Ideal::zero(g.ctx()),
        false => Ideal::from_gens(gens).minimized(),
    }
}

/// Passes to the coefficient ideal on a hypersurface of maximal contact
/// when the state is a principal order-2 ideal with trivial monomial part.
pub fn prepare(st: MarkedState, c: &Chart) -> MarkedState {
    if !st.cut.is_empty() || st.control != 2 || st.ideal.ctx().len() < 2 {
        return st;
    }
    let gens = st.gens();
    if gens.len() != 1 || !st.monomial_part(&gens).is_empty() {
        return st;
    }
    let g = &gens[0];
    let mut sing = order_locus(&c.ctx, &gens, &st.free(), 2);
    sing.extend(st.support.iter().cloned());
    if !meets(&c.ctx, &sing, &c.inverted) {
        return st;
    }
    match maximal_contact(g, &st.free(), &st.support, &c.inverted) {
        None => st,
        Some(w) => MarkedState { ideal: coefficient_ideal(g, w), cut: vec![w], ..st },
    }
}

fn disjoint(a: &AlignedComponent, b: &AlignedComponent) -> bool {
    a.fixed.iter().any(|(v, x)| b.fixed.iter().any(|(w, y)| v == w && x != y))
}

fn monomial_of(ctx: &std::sync::Arc<crate::algebra::VarContext>, parts: &[(usize, u32, usize)]) -> Polynomial {
    let mut exps = vec![0u32; ctx.len()];
    for (v, a, _) in parts {
        exps[*v] = *a;
    }
    Polynomial::term(ctx, Rational::from_integer(1.into()), Monomial::from_exponents(exps))
}

/// Top locus of the state on chart `c` and its invariant.
pub fn analyze(st: &MarkedState, c: &Chart) -> Result<Action> {
    let ctx = &c.ctx;
    let gens = st.gens();
    if gens.is_empty() {
        return Err(Error::Unsupported(format!("zero ideal on chart `{}`", c.id)));
    }
    let d = st.control;
    let free = st.free();
    let mut sd = order_locus(ctx, &gens, &free, d);
    sd.extend(st.cut_gens());
    sd.extend(st.support.iter().cloned());
    if !meets(ctx, &sd, &c.inverted) {
        return Ok(Action::Resolved);
    }
    let parts = st.monomial_part(&gens);
    let m = monomial_of(ctx, &parts);
    let mono = Monomial::from_exponents((0..ctx.len()).map(|v| parts.iter().find(|p| p.0 == v).map_or(0, |p| p.1)).collect());
    let n_gens: Vec<Polynomial> = gens.iter().map(|g| g.div_monomial(&mono).expect("monomial part divides")).collect();
    let mut on_n = sd.clone();
    on_n.extend(n_gens.iter().cloned());
    if meets(ctx, &on_n, &c.inverted) {
        let dn = max_order(ctx, &n_gens, &free, &sd, &c.inverted);
        let mut top = order_locus(ctx, &n_gens, &free, dn);
        if dn < d {
            top.extend(order_locus(ctx, std::slice::from_ref(&m), &free, d - dn));
        }
        top.extend(sd.iter().cloned());
        let comps = aligned_locus(&Ideal::new(ctx, top)?, &c.inverted)?;
        let space = free.len();
        let hyper: Vec<&AlignedComponent> = comps.iter().filter(|k| k.dim() + 1 == space).collect();
        let chosen: Vec<AlignedComponent> = if !hyper.is_empty() {
            let mut out: Vec<AlignedComponent> = Vec::new();
            for h in hyper {
                if out.iter().all(|o| disjoint(o, h)) {
                    out.push(h.clone());
                }
            }
            out
        } else if comps.iter().all(|k| k.dim() == 0) {
            comps
        } else if d == 2 && st.cut.is_empty() {
            return Err(Error::NoMaximalContact(st.ideal.canonical()));
        } else {
            return Err(Error::CoefficientIdealUnsupported(if dn >= d { dn } else { dn * (d - dn) }));
        };
        let dim = chosen[0].dim();
        let invariant = Invariant { non_monomial: true, ratio: Rational::new(dn.into(), d.into()), dim: Reverse(dim) };
        return Ok(Action::Blowup { invariant, comps: chosen, tag: Tag::Companion });
    }
    // monomial case: the smallest set of boundary divisors whose exponents
    // reach the control and whose intersection meets the locus
    let k = parts.len();
    let mut best: Option<(usize, Reverse<u32>, Vec<usize>, Vec<usize>)> = None;
    for mask in 1u32..(1 << k) {
        let sel: Vec<&(usize, u32, usize)> = (0..k).filter(|i| mask & (1 << i) != 0).map(|i| &parts[i]).collect();
        let sum: u32 = sel.iter().map(|p| p.1).sum();
        if sum < d {
            continue;
        }
        let mut test = sd.clone();
        test.extend(sel.iter().map(|p| Polynomial::var(ctx, p.0)));
        if !meets(ctx, &test, &c.inverted) {
            continue;
        }
        let mut hist: Vec<usize> = sel.iter().map(|p| p.2).collect();
        hist.sort();
        let key = (sel.len(), Reverse(sum), hist, sel.iter().map(|p| p.0).collect::<Vec<_>>());
        if best.as_ref().is_none_or(|b| key < *b) {
            best = Some(key);
        }
    }
    let Some((_, Reverse(sum), _, vars)) = best else {
        return Err(Error::Postcondition(format!("no monomial center on chart `{}`", c.id)));
    };
    let mut fixed: Vec<(usize, Rational)> = vars.iter().chain(st.cut.iter()).map(|&v| (v, Rational::zero())).collect();
    fixed.sort();
    let free_vars: Vec<usize> = (0..ctx.len()).filter(|v| !fixed.iter().any(|(w, _)| w == v)).collect();
    let comp = AlignedComponent { fixed, free: free_vars };
    let invariant =
        Invariant { non_monomial: false, ratio: Rational::new(sum.into(), d.into()), dim: Reverse(comp.dim()) };
    Ok(Action::Blowup { invariant, comps: vec![comp], tag: Tag::MonomialCase })
}

/// State on a child chart; `None` where the maximal-contact hypersurface
/// does not reach.
pub fn transport(st: &MarkedState, child: &Chart) -> Result<Option<MarkedState>> {
    let Some(e) = child.exceptional_var else {
        return Ok(Some(st.clone()));
    };
    if st.cut.contains(&e) {
        return Ok(None);
    }
    let sigma = &child.parent.as_ref().expect("child").1;
    let m = principal_transform(&st.marked(), child)?;
    Ok(Some(MarkedState {
        ideal: m.ideal,
        control: m.control,
        boundary: m.boundary,
        cut: st.cut.clone(),
        support: st.support.iter().map(|g| sigma.apply(g)).collect(),
    }))
}

/// Runs synchronized rounds until every state is resolved; returns the
/// next free step index.
pub(crate) fn run_marked(
    report: &mut DriverReport,
    mut states: BTreeMap<String, MarkedState>,
    start: usize,
    tag: Option<Tag>,
) -> Result<usize> {
    let mut index = start;
    for _ in 0..ROUNDS {
        let mut proposals: Vec<(String, Invariant, Vec<AlignedComponent>, Tag)> = Vec::new();
        for id in states.keys().cloned().collect::<Vec<_>>() {
            let c = report.tree.chart(&id).clone();
            let st = prepare(states.remove(&id).expect("present"), &c);
            report.marked.insert(id.clone(), st.marked());
            if let Action::Blowup { invariant, comps, tag } = analyze(&st, &c)? {
                proposals.push((id.clone(), invariant, comps, tag));
                states.insert(id, st);
            }
        }
        let Some(top) = proposals.iter().map(|p| p.1.clone()).max() else {
            return Ok(index);
        };
        for (id, inv, comps, own) in proposals {
            if inv != top {
                continue;
            }
            let from = report.tree.steps.len();
            let label = tag.unwrap_or(own);
            let leaves = report.tree.apply_components(&id, &comps, own.as_str(), index)?;
            report.log_since(from, label, None);
            let st = states.remove(&id).expect("proposed");
            for leaf in leaves {
                if let Some(s) = carry(&report.tree, &id, &leaf, &st)? {
                    states.insert(leaf, s);
                }
            }
        }
        index += 1;
    }
    Err(Error::Postcondition("marked driver did not terminate".into()))
}

/// Transports a state from chart `from` down to its descendant `to`.
fn carry(t: &ResolutionTree, from: &str, to: &str, st: &MarkedState) -> Result<Option<MarkedState>> {
    let path = t.ancestry(to);
    let start = path.iter().position(|p| p == from).expect("descendant");
    let mut cur = st.clone();
    for id in &path[start + 1..] {
        match transport(&cur, t.chart(id))? {
            Some(s) => cur = s,
            None => return Ok(None),
        }
    }
    Ok(Some(cur))
}

/// Principalizes a marked ideal on the ambient space of its ring.
pub fn bm_resolve_marked(m: &MarkedIdeal) -> Result<DriverReport> {
    let ctx = m.ideal.ctx().clone();
    let root = Chart::root("root", Polynomial::zero(&ctx));
    let mut report = DriverReport::new(ResolutionTree::new(root));
    let states = BTreeMap::from([("root".to_string(), MarkedState::new(m))]);
    run_marked(&mut report, states, 1, None)?;
    report.finalize(false)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::VarContext;

    fn ideal(vars: &[&str], gens: &[&str]) -> Ideal {
        let ctx = VarContext::new(vars).unwrap();
        Ideal::from_gens(gens.iter().map(|g| Polynomial::parse(g, &ctx).unwrap()).collect())
    }

    #[test]
    fn coefficient_ideal_of_descent() {
        let i = ideal(&["x", "y", "z"], &["y^2 + x*z^3"]);
        let g = &i.gens()[0];
        assert_eq!(maximal_contact(g, &[0, 1, 2], &[], &[]), Some(1));
        let c = coefficient_ideal(g, 1);
        assert!(c.equals(&ideal(&["x", "y", "z"], &["z^6", "x*z^3"])));
    }

    #[test]
    fn low_order_is_resolved() {
        let r = bm_resolve_marked(&MarkedIdeal::new(ideal(&["x", "z"], &["z"]), 2)).unwrap();
        assert_eq!(r.length(), 0);
    }

    #[test]
    fn descent_trace_on_the_plane() {
        let r = bm_resolve_marked(&MarkedIdeal::new(ideal(&["x", "z"], &["z^6", "x*z^3"]), 2)).unwrap();
        let centers: Vec<(usize, String, String)> =
            r.centers().into_iter().map(|(k, id, i)| (k, id, i.canonical())).collect();
        assert_eq!(centers[0], (1, "root".into(), "(x, z)".into()));
        assert!(centers.contains(&(2, "root/x".into(), "(z1)".into())));
        // the monomial line waits for the companion point of the z-chart
        assert!(centers.iter().any(|(_, id, c)| id == "root/x/z" && c == "(x2)"));
        assert!(r.marked["root/x/z/x"].ideal.canonical() == "(z3)");
    }
}
