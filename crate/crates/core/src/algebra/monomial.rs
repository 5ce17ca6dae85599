use std::cmp::Ordering;

/// Exponent vector over the variables of a [`VarContext`](super::VarContext).
///
/// Stored densely; a variable that does not occur simply has exponent zero.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Monomial(Vec<u32>);

impl Monomial {
    pub fn one(nvars: usize) -> Self {
        Monomial(vec![0; nvars])
    }

    pub fn var(nvars: usize, index: usize, exp: u32) -> Self {
        let mut e = vec![0; nvars];
        e[index] = exp;
        Monomial(e)
    }

    pub fn from_exponents(exps: Vec<u32>) -> Self {
        Monomial(exps)
    }

    pub fn exponents(&self) -> &[u32] {
        &self.0
    }

    pub fn nvars(&self) -> usize {
        self.0.len()
    }

    pub fn exp(&self, index: usize) -> u32 {
        self.0[index]
    }

    pub fn degree(&self) -> u32 {
        self.0.iter().sum()
    }

    pub fn is_one(&self) -> bool {
        self.0.iter().all(|&e| e == 0)
    }

    pub fn divides(&self, other: &Monomial) -> bool {
        self.0.iter().zip(&other.0).all(|(a, b)| a <= b)
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        Monomial(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }

    /// `self / other`, assuming `other` divides `self`.
    pub fn div(&self, other: &Monomial) -> Monomial {
        debug_assert!(other.divides(self));
        Monomial(self.0.iter().zip(&other.0).map(|(a, b)| a - b).collect())
    }

    pub fn lcm(&self, other: &Monomial) -> Monomial {
        Monomial(self.0.iter().zip(&other.0).map(|(a, b)| *a.max(b)).collect())
    }

    pub fn gcd(&self, other: &Monomial) -> Monomial {
        Monomial(self.0.iter().zip(&other.0).map(|(a, b)| *a.min(b)).collect())
    }

    pub fn is_coprime(&self, other: &Monomial) -> bool {
        self.0.iter().zip(&other.0).all(|(a, b)| *a == 0 || *b == 0)
    }

    /// Variables occurring with positive exponent.
    pub fn support(&self) -> impl Iterator<Item = usize> + '_ {
        self.0.iter().enumerate().filter(|(_, &e)| e > 0).map(|(i, _)| i)
    }
}

/// The two orders the engine uses, each relative to a variable precedence.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum OrderKind {
    Lex,
    GrevLex,
    /// Block order: compares total degree in the first `block` precedence
    /// variables first, then grevlex within blocks. Eliminates the first block.
    Elimination { block: usize },
}

/// A monomial order: kind plus a permutation of variable indices, most
/// significant first.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct MonomialOrder {
    pub kind: OrderKind,
    pub precedence: Vec<usize>,
}

impl MonomialOrder {
    pub fn grevlex(nvars: usize) -> Self {
        MonomialOrder { kind: OrderKind::GrevLex, precedence: (0..nvars).collect() }
    }

    pub fn lex(nvars: usize) -> Self {
        MonomialOrder { kind: OrderKind::Lex, precedence: (0..nvars).collect() }
    }

    pub fn lex_with(precedence: Vec<usize>) -> Self {
        MonomialOrder { kind: OrderKind::Lex, precedence }
    }

    pub fn elimination(precedence: Vec<usize>, block: usize) -> Self {
        MonomialOrder { kind: OrderKind::Elimination { block }, precedence }
    }

    pub fn compare(&self, a: &Monomial, b: &Monomial) -> Ordering {
        match self.kind {
            OrderKind::Lex => {
                for &v in &self.precedence {
                    match a.exp(v).cmp(&b.exp(v)) {
                        Ordering::Equal => continue,
                        o => return o,
                    }
                }
                Ordering::Equal
            }
            OrderKind::GrevLex => grevlex(&self.precedence, a, b),
            OrderKind::Elimination { block } => {
                let (head, tail) = self.precedence.split_at(block);
                match grevlex(head, a, b) {
                    Ordering::Equal => grevlex(tail, a, b),
                    o => o,
                }
            }
        }
    }
}

fn grevlex(vars: &[usize], a: &Monomial, b: &Monomial) -> Ordering {
    let da: u32 = vars.iter().map(|&v| a.exp(v)).sum();
    let db: u32 = vars.iter().map(|&v| b.exp(v)).sum();
    match da.cmp(&db) {
        Ordering::Equal => {}
        o => return o,
    }
    for &v in vars.iter().rev() {
        match a.exp(v).cmp(&b.exp(v)) {
            Ordering::Equal => continue,
            o => return o.reverse(),
        }
    }
    Ordering::Equal
}

#[cfg(test)]
mod tests {
    use super::*;

    fn m(e: &[u32]) -> Monomial {
        Monomial::from_exponents(e.to_vec())
    }

    #[test]
    fn grevlex_ties_broken_by_last_variable() {
        let o = MonomialOrder::grevlex(3);
        // x*z^2 vs y^3 (same degree): grevlex prefers y^3 since z exponent is smaller.
        assert_eq!(o.compare(&m(&[0, 3, 0]), &m(&[1, 0, 2])), Ordering::Greater);
        assert_eq!(o.compare(&m(&[2, 0, 0]), &m(&[0, 1, 1])), Ordering::Greater);
        assert_eq!(o.compare(&m(&[0, 0, 1]), &m(&[1, 0, 0])), Ordering::Less);
    }

    #[test]
    fn lex_and_elimination() {
        let lex = MonomialOrder::lex(2);
        assert_eq!(lex.compare(&m(&[1, 0]), &m(&[0, 5])), Ordering::Greater);
        let el = MonomialOrder::elimination(vec![1, 0], 1);
        assert_eq!(el.compare(&m(&[9, 0]), &m(&[0, 1])), Ordering::Less);
    }

    #[test]
    fn divisibility() {
        assert!(m(&[1, 0, 2]).divides(&m(&[1, 1, 3])));
        assert!(!m(&[2, 0, 0]).divides(&m(&[1, 1, 3])));
        assert_eq!(m(&[1, 2]).lcm(&m(&[3, 0])), m(&[3, 2]));
    }
}
