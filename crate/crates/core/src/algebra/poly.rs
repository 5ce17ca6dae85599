use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use super::monomial::{Monomial, MonomialOrder};
use super::Rational;
use crate::error::{Error, Result};

/// Ordered variable names of a chart, plus the birth step of the exceptional
/// divisor each variable defines (if any).
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct VarContext {
    names: Vec<String>,
    exceptional_tags: Vec<Option<usize>>,
}

impl VarContext {
    pub fn new<S: AsRef<str>>(names: &[S]) -> Result<Arc<Self>> {
        let names: Vec<String> = names.iter().map(|s| s.as_ref().to_string()).collect();
        Self::with_tags(names.clone(), vec![None; names.len()])
    }

    pub fn with_tags(names: Vec<String>, exceptional_tags: Vec<Option<usize>>) -> Result<Arc<Self>> {
        for (i, n) in names.iter().enumerate() {
            if !is_identifier(n) {
                return Err(Error::Parse { pos: 0, msg: format!("invalid variable name `{n}`") });
            }
            if names[..i].contains(n) {
                return Err(Error::Parse { pos: 0, msg: format!("duplicate variable `{n}`") });
            }
        }
        assert_eq!(names.len(), exceptional_tags.len());
        Ok(Arc::new(VarContext { names, exceptional_tags }))
    }

    pub fn len(&self) -> usize {
        self.names.len()
    }

    pub fn is_empty(&self) -> bool {
        self.names.is_empty()
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn name(&self, i: usize) -> &str {
        &self.names[i]
    }

    pub fn tag(&self, i: usize) -> Option<usize> {
        self.exceptional_tags[i]
    }

    pub fn tags(&self) -> &[Option<usize>] {
        &self.exceptional_tags
    }

    pub fn index_of(&self, name: &str) -> Result<usize> {
        self.names
            .iter()
            .position(|n| n == name)
            .ok_or_else(|| Error::UnknownVariable(name.to_string()))
    }

    /// Contexts are compatible when they name the same variables in order.
    pub fn compatible(&self, other: &VarContext) -> bool {
        self.names == other.names
    }
}

fn is_identifier(s: &str) -> bool {
    let mut chars = s.chars();
    matches!(chars.next(), Some(c) if c.is_ascii_alphabetic() || c == '_')
        && chars.all(|c| c.is_ascii_alphanumeric() || c == '_')
}

/// Exact multivariate polynomial with rational coefficients.
#[derive(Clone, Debug)]
pub struct Polynomial {
    ctx: Arc<VarContext>,
    terms: BTreeMap<Monomial, Rational>,
}

impl PartialEq for Polynomial {
    fn eq(&self, other: &Self) -> bool {
        self.ctx.compatible(&other.ctx) && self.terms == other.terms
    }
}

impl Eq for Polynomial {}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ArithOp {
    Add,
    Sub,
    Mul,
}

impl Polynomial {
    pub fn zero(ctx: &Arc<VarContext>) -> Self {
        Polynomial { ctx: ctx.clone(), terms: BTreeMap::new() }
    }

    pub fn constant(ctx: &Arc<VarContext>, c: Rational) -> Self {
        let mut p = Self::zero(ctx);
        if !c.is_zero() {
            p.terms.insert(Monomial::one(ctx.len()), c);
        }
        p
    }

    pub fn one(ctx: &Arc<VarContext>) -> Self {
        Self::constant(ctx, Rational::one())
    }

    pub fn from_int(ctx: &Arc<VarContext>, c: i64) -> Self {
        Self::constant(ctx, Rational::from_integer(BigInt::from(c)))
    }

    pub fn var(ctx: &Arc<VarContext>, index: usize) -> Self {
        Self::term(ctx, Rational::one(), Monomial::var(ctx.len(), index, 1))
    }

    pub fn var_named(ctx: &Arc<VarContext>, name: &str) -> Result<Self> {
        Ok(Self::var(ctx, ctx.index_of(name)?))
    }

    pub fn term(ctx: &Arc<VarContext>, c: Rational, m: Monomial) -> Self {
        assert_eq!(m.nvars(), ctx.len());
        let mut p = Self::zero(ctx);
        if !c.is_zero() {
            p.terms.insert(m, c);
        }
        p
    }

    pub fn from_terms(ctx: &Arc<VarContext>, terms: impl IntoIterator<Item = (Monomial, Rational)>) -> Self {
        let mut p = Self::zero(ctx);
        for (m, c) in terms {
            p.add_term(m, c);
        }
        p
    }

    pub fn ctx(&self) -> &Arc<VarContext> {
        &self.ctx
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_constant(&self) -> bool {
        self.terms.keys().all(Monomial::is_one)
    }

    pub fn constant_term(&self) -> Rational {
        self.terms.get(&Monomial::one(self.ctx.len())).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &Rational)> {
        self.terms.iter()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn coefficient(&self, m: &Monomial) -> Rational {
        self.terms.get(m).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn total_degree(&self) -> Option<u32> {
        self.terms.keys().map(Monomial::degree).max()
    }

    /// Lowest total degree of a term; `None` for the zero polynomial.
    pub fn low_degree(&self) -> Option<u32> {
        self.terms.keys().map(Monomial::degree).min()
    }

    pub fn degree_in(&self, var: usize) -> u32 {
        self.terms.keys().map(|m| m.exp(var)).max().unwrap_or(0)
    }

    pub fn involves(&self, var: usize) -> bool {
        self.terms.keys().any(|m| m.exp(var) > 0)
    }

    pub fn variables(&self) -> Vec<usize> {
        (0..self.ctx.len()).filter(|&v| self.involves(v)).collect()
    }

    pub fn add_term(&mut self, m: Monomial, c: Rational) {
        if c.is_zero() {
            return;
        }
        use std::collections::btree_map::Entry;
        match self.terms.entry(m) {
            Entry::Vacant(e) => {
                e.insert(c);
            }
            Entry::Occupied(mut e) => {
                *e.get_mut() += c;
                if e.get().is_zero() {
                    e.remove();
                }
            }
        }
    }

    pub fn leading(&self, order: &MonomialOrder) -> Option<(&Monomial, &Rational)> {
        self.terms.iter().max_by(|a, b| order.compare(a.0, b.0))
    }

    pub fn leading_monomial(&self, order: &MonomialOrder) -> Option<&Monomial> {
        self.leading(order).map(|t| t.0)
    }

    /// Terms in descending order.
    pub fn sorted_terms(&self, order: &MonomialOrder) -> Vec<(&Monomial, &Rational)> {
        let mut v: Vec<_> = self.terms.iter().collect();
        v.sort_by(|a, b| order.compare(b.0, a.0));
        v
    }

    fn check_ctx(&self, other: &Polynomial) -> Result<()> {
        if self.ctx.compatible(&other.ctx) {
            Ok(())
        } else {
            Err(Error::ContextMismatch {
                left: self.ctx.names().join(","),
                right: other.ctx.names().join(","),
            })
        }
    }

    pub fn arith(&self, other: &Polynomial, op: ArithOp) -> Result<Polynomial> {
        self.check_ctx(other)?;
        Ok(match op {
            ArithOp::Add => self.add_unchecked(other),
            ArithOp::Sub => self.sub_unchecked(other),
            ArithOp::Mul => self.mul_unchecked(other),
        })
    }

    pub fn try_add(&self, other: &Polynomial) -> Result<Polynomial> {
        self.arith(other, ArithOp::Add)
    }

    pub fn try_sub(&self, other: &Polynomial) -> Result<Polynomial> {
        self.arith(other, ArithOp::Sub)
    }

    pub fn try_mul(&self, other: &Polynomial) -> Result<Polynomial> {
        self.arith(other, ArithOp::Mul)
    }

    fn add_unchecked(&self, other: &Polynomial) -> Polynomial {
        let mut r = self.clone();
        for (m, c) in &other.terms {
            r.add_term(m.clone(), c.clone());
        }
        r
    }

    fn sub_unchecked(&self, other: &Polynomial) -> Polynomial {
        let mut r = self.clone();
        for (m, c) in &other.terms {
            r.add_term(m.clone(), -c.clone());
        }
        r
    }

    fn mul_unchecked(&self, other: &Polynomial) -> Polynomial {
        let mut r = Polynomial::zero(&self.ctx);
        for (m1, c1) in &self.terms {
            for (m2, c2) in &other.terms {
                r.add_term(m1.mul(m2), c1 * c2);
            }
        }
        r
    }

    pub fn scale(&self, c: &Rational) -> Polynomial {
        if c.is_zero() {
            return Polynomial::zero(&self.ctx);
        }
        Polynomial {
            ctx: self.ctx.clone(),
            terms: self.terms.iter().map(|(m, k)| (m.clone(), k * c)).collect(),
        }
    }

    pub fn mul_monomial(&self, c: &Rational, m: &Monomial) -> Polynomial {
        if c.is_zero() {
            return Polynomial::zero(&self.ctx);
        }
        Polynomial {
            ctx: self.ctx.clone(),
            terms: self.terms.iter().map(|(k, v)| (k.mul(m), v * c)).collect(),
        }
    }

    /// `self -= c * m * other` in place.
    pub(crate) fn sub_scaled(&mut self, c: &Rational, m: &Monomial, other: &Polynomial) {
        for (k, v) in &other.terms {
            self.add_term(k.mul(m), -(v * c));
        }
    }

    pub fn pow(&self, e: u32) -> Polynomial {
        let mut r = Polynomial::one(&self.ctx);
        for _ in 0..e {
            r = r.mul_unchecked(self);
        }
        r
    }

    /// Divides by the leading coefficient (grevlex).
    pub fn monic(&self, order: &MonomialOrder) -> Polynomial {
        match self.leading(order) {
            None => self.clone(),
            Some((_, c)) => {
                let inv = c.recip();
                self.scale(&inv)
            }
        }
    }

    pub fn partial_derivative(&self, var: usize) -> Result<Polynomial> {
        if var >= self.ctx.len() {
            return Err(Error::UnknownVariable(format!("#{var}")));
        }
        let mut r = Polynomial::zero(&self.ctx);
        for (m, c) in &self.terms {
            let e = m.exp(var);
            if e > 0 {
                let mut exps = m.exponents().to_vec();
                exps[var] -= 1;
                r.add_term(Monomial::from_exponents(exps), c * Rational::from_integer(BigInt::from(e)));
            }
        }
        Ok(r)
    }

    pub fn derivative_named(&self, name: &str) -> Result<Polynomial> {
        self.partial_derivative(self.ctx.index_of(name)?)
    }

    /// Substitutes `images[i]` for variable `i`; all images must share one
    /// target context.
    pub fn compose(&self, images: &[Polynomial], target: &Arc<VarContext>) -> Polynomial {
        assert_eq!(images.len(), self.ctx.len(), "substitution must be total");
        let mut powers: Vec<Vec<Polynomial>> = images.iter().map(|p| vec![Polynomial::one(target), p.clone()]).collect();
        let mut r = Polynomial::zero(target);
        for (m, c) in &self.terms {
            let mut t = Polynomial::constant(target, c.clone());
            for (v, &e) in m.exponents().iter().enumerate() {
                if e == 0 {
                    continue;
                }
                while powers[v].len() <= e as usize {
                    let next = powers[v].last().unwrap().mul_unchecked(&images[v]);
                    powers[v].push(next);
                }
                t = t.mul_unchecked(&powers[v][e as usize]);
            }
            r = r.add_unchecked(&t);
        }
        r
    }

    /// Sets variable `var` to the constant `value`.
    pub fn eval_var(&self, var: usize, value: &Rational) -> Polynomial {
        let mut r = Polynomial::zero(&self.ctx);
        for (m, c) in &self.terms {
            let e = m.exp(var);
            let mut exps = m.exponents().to_vec();
            exps[var] = 0;
            r.add_term(Monomial::from_exponents(exps), c * pow_rational(value, e));
        }
        r
    }

    /// Full evaluation at a point given by one value per variable.
    pub fn eval(&self, values: &[Rational]) -> Rational {
        let mut acc = Rational::zero();
        for (m, c) in &self.terms {
            let mut t = c.clone();
            for (v, &e) in m.exponents().iter().enumerate() {
                if e > 0 {
                    t *= pow_rational(&values[v], e);
                }
            }
            acc += t;
        }
        acc
    }

    /// Translation `v -> v + shift[v]`.
    pub fn translate(&self, shift: &[Rational]) -> Polynomial {
        let images: Vec<Polynomial> = (0..self.ctx.len())
            .map(|v| Polynomial::var(&self.ctx, v).add_unchecked(&Polynomial::constant(&self.ctx, shift[v].clone())))
            .collect();
        self.compose(&images, &self.ctx)
    }

    /// Re-expresses the polynomial in a context containing all its variables;
    /// `map[i]` is the index of old variable `i` in `target`.
    pub fn embed(&self, target: &Arc<VarContext>, map: &[usize]) -> Polynomial {
        let mut r = Polynomial::zero(target);
        for (m, c) in &self.terms {
            let mut exps = vec![0; target.len()];
            for (v, &e) in m.exponents().iter().enumerate() {
                exps[map[v]] += e;
            }
            r.add_term(Monomial::from_exponents(exps), c.clone());
        }
        r
    }

    /// Same polynomial viewed in a compatible context (used to re-tag charts).
    pub fn with_ctx(&self, ctx: &Arc<VarContext>) -> Polynomial {
        assert!(self.ctx.compatible(ctx));
        Polynomial { ctx: ctx.clone(), terms: self.terms.clone() }
    }

    /// Largest monomial dividing every term.
    pub fn monomial_content(&self) -> Monomial {
        let mut it = self.terms.keys();
        match it.next() {
            None => Monomial::one(self.ctx.len()),
            Some(first) => it.fold(first.clone(), |acc, m| acc.gcd(m)),
        }
    }

    /// Exact division by a monomial that divides every term.
    pub fn div_monomial(&self, m: &Monomial) -> Option<Polynomial> {
        if !self.terms.keys().all(|k| m.divides(k)) {
            return None;
        }
        Some(Polynomial {
            ctx: self.ctx.clone(),
            terms: self.terms.iter().map(|(k, c)| (k.div(m), c.clone())).collect(),
        })
    }

    /// Exact multivariate division; `None` if `divisor` does not divide `self`.
    pub fn exact_div(&self, divisor: &Polynomial) -> Result<Option<Polynomial>> {
        self.check_ctx(divisor)?;
        if divisor.is_zero() {
            return Err(Error::ZeroDivisor);
        }
        let order = MonomialOrder::grevlex(self.ctx.len());
        let (lm, lc) = divisor.leading(&order).map(|(m, c)| (m.clone(), c.clone())).unwrap();
        let mut rem = self.clone();
        let mut quot = Polynomial::zero(&self.ctx);
        while let Some((m, c)) = rem.leading(&order).map(|(m, c)| (m.clone(), c.clone())) {
            if !lm.divides(&m) {
                return Ok(None);
            }
            let qm = m.div(&lm);
            let qc = &c / &lc;
            rem.sub_scaled(&qc, &qm, divisor);
            quot.add_term(qm, qc);
        }
        Ok(Some(quot))
    }

    /// Multiplies through by the lcm of denominators and divides by the gcd of
    /// numerators, with positive leading coefficient in grevlex.
    pub fn primitive(&self) -> Polynomial {
        use num_integer::Integer;
        if self.is_zero() {
            return self.clone();
        }
        let mut lcm = BigInt::one();
        for c in self.terms.values() {
            lcm = lcm.lcm(c.denom());
        }
        let mut g = BigInt::zero();
        for c in self.terms.values() {
            let n = c.numer() * (&lcm / c.denom());
            g = g.gcd(&n);
        }
        let order = MonomialOrder::grevlex(self.ctx.len());
        let mut factor = Rational::new(lcm, g);
        if self.leading(&order).unwrap().1.is_negative() {
            factor = -factor;
        }
        self.scale(&factor)
    }

    /// Canonical text: grevlex-descending terms.
    pub fn to_canonical(&self) -> String {
        self.to_string()
    }
}

pub(crate) fn pow_rational(r: &Rational, e: u32) -> Rational {
    let mut acc = Rational::one();
    for _ in 0..e {
        acc *= r;
    }
    acc
}

pub(crate) fn format_rational(r: &Rational) -> String {
    if r.is_integer() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

fn format_monomial(ctx: &VarContext, m: &Monomial) -> String {
    m.exponents()
        .iter()
        .enumerate()
        .filter(|(_, &e)| e > 0)
        .map(|(v, &e)| if e == 1 { ctx.name(v).to_string() } else { format!("{}^{}", ctx.name(v), e) })
        .collect::<Vec<_>>()
        .join("*")
}

impl fmt::Display for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let order = MonomialOrder::grevlex(self.ctx.len());
        for (i, (m, c)) in self.sorted_terms(&order).into_iter().enumerate() {
            let neg = c.is_negative();
            let abs = c.abs();
            if i == 0 {
                if neg {
                    write!(f, "-")?;
                }
            } else {
                write!(f, "{}", if neg { " - " } else { " + " })?;
            }
            let mono = format_monomial(&self.ctx, m);
            if mono.is_empty() {
                write!(f, "{}", format_rational(&abs))?;
            } else if abs.is_one() {
                write!(f, "{mono}")?;
            } else {
                write!(f, "{}*{}", format_rational(&abs), mono)?;
            }
        }
        Ok(())
    }
}

impl std::ops::Add for &Polynomial {
    type Output = Polynomial;
    fn add(self, rhs: &Polynomial) -> Polynomial {
        self.try_add(rhs).expect("polynomial contexts differ")
    }
}

impl std::ops::Sub for &Polynomial {
    type Output = Polynomial;
    fn sub(self, rhs: &Polynomial) -> Polynomial {
        self.try_sub(rhs).expect("polynomial contexts differ")
    }
}

impl std::ops::Mul for &Polynomial {
    type Output = Polynomial;
    fn mul(self, rhs: &Polynomial) -> Polynomial {
        self.try_mul(rhs).expect("polynomial contexts differ")
    }
}

impl std::ops::Neg for &Polynomial {
    type Output = Polynomial;
    fn neg(self) -> Polynomial {
        self.scale(&-Rational::one())
    }
}
