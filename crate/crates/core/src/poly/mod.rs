//! Commutative polynomials over the rationals.

pub mod rational;

pub use rational::Q;

use crate::error::{Error, Result};
use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;

/// Exponent vector; trailing zeros are trimmed so equal monomials compare equal.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct Monomial(Vec<u16>);

impl Monomial {
    pub fn one() -> Self {
        Monomial(Vec::new())
    }
    pub fn var(i: usize) -> Self {
        let mut e = vec![0; i + 1];
        e[i] = 1;
        Monomial(e)
    }
    pub fn from_exps(mut e: Vec<u16>) -> Self {
        while e.last() == Some(&0) {
            e.pop();
        }
        Monomial(e)
    }
    /// Product of the listed variables (with repetition).
    pub fn product<I: IntoIterator<Item = usize>>(vars: I) -> Self {
        let mut e = Vec::new();
        for v in vars {
            if e.len() <= v {
                e.resize(v + 1, 0);
            }
            e[v] += 1;
        }
        Monomial(e)
    }
    pub fn exps(&self) -> &[u16] {
        &self.0
    }
    pub fn exp(&self, i: usize) -> u16 {
        self.0.get(i).copied().unwrap_or(0)
    }
    pub fn degree(&self) -> usize {
        self.0.iter().map(|&e| e as usize).sum()
    }
    pub fn is_one(&self) -> bool {
        self.0.is_empty()
    }
    /// Variables with multiplicity, ascending.
    pub fn vars(&self) -> Vec<usize> {
        self.0.iter().enumerate().flat_map(|(i, &e)| std::iter::repeat_n(i, e as usize)).collect()
    }
    pub fn support(&self) -> Vec<usize> {
        self.0.iter().enumerate().filter(|(_, &e)| e > 0).map(|(i, _)| i).collect()
    }
    pub fn mul(&self, o: &Monomial) -> Monomial {
        let n = self.0.len().max(o.0.len());
        Monomial::from_exps((0..n).map(|i| self.exp(i) + o.exp(i)).collect())
    }
    pub fn lcm(&self, o: &Monomial) -> Monomial {
        let n = self.0.len().max(o.0.len());
        Monomial::from_exps((0..n).map(|i| self.exp(i).max(o.exp(i))).collect())
    }
    pub fn divides(&self, o: &Monomial) -> bool {
        self.0.iter().enumerate().all(|(i, &e)| e <= o.exp(i))
    }
    /// `o / self`, if `self` divides `o`.
    pub fn quotient_of(&self, o: &Monomial) -> Option<Monomial> {
        self.divides(o)
            .then(|| Monomial::from_exps((0..o.0.len()).map(|i| o.exp(i) - self.exp(i)).collect()))
    }
    pub fn is_coprime(&self, o: &Monomial) -> bool {
        self.0.iter().zip(&o.0).all(|(&a, &b)| a == 0 || b == 0)
    }
}

impl fmt::Debug for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_one() {
            return write!(f, "1");
        }
        let parts: Vec<String> = self
            .0
            .iter()
            .enumerate()
            .filter(|(_, &e)| e > 0)
            .map(|(i, &e)| if e == 1 { format!("v{i}") } else { format!("v{i}^{e}") })
            .collect();
        write!(f, "{}", parts.join("*"))
    }
}

/// A polynomial: monomials with nonzero rational coefficients.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Default)]
pub struct Polynomial {
    terms: BTreeMap<Monomial, Q>,
}

impl Polynomial {
    pub fn zero() -> Self {
        Self::default()
    }
    pub fn constant(c: Q) -> Self {
        Self::term(Monomial::one(), c)
    }
    pub fn var(i: usize) -> Self {
        Self::term(Monomial::var(i), Q::one())
    }
    pub fn term(m: Monomial, c: Q) -> Self {
        let mut p = Self::zero();
        p.add_term(m, c);
        p
    }
    pub fn from_terms<I: IntoIterator<Item = (Monomial, Q)>>(it: I) -> Self {
        let mut p = Self::zero();
        for (m, c) in it {
            p.add_term(m, c);
        }
        p
    }
    pub fn add_term(&mut self, m: Monomial, c: Q) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(m) {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                let s = o.get() + &c;
                if s.is_zero() {
                    o.remove();
                } else {
                    *o.get_mut() = s;
                }
            }
        }
    }
    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }
    pub fn n_terms(&self) -> usize {
        self.terms.len()
    }
    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &Q)> {
        self.terms.iter()
    }
    pub fn coeff(&self, m: &Monomial) -> Q {
        self.terms.get(m).cloned().unwrap_or_default()
    }
    /// Largest total degree; zero for the zero polynomial.
    pub fn degree(&self) -> usize {
        self.terms.keys().map(|m| m.degree()).max().unwrap_or(0)
    }
    pub fn is_homogeneous(&self) -> bool {
        let mut d = self.terms.keys().map(|m| m.degree());
        match d.next() {
            None => true,
            Some(first) => d.all(|x| x == first),
        }
    }
    /// One past the largest variable index used.
    pub fn n_vars_used(&self) -> usize {
        self.terms.keys().map(|m| m.exps().len()).max().unwrap_or(0)
    }
    pub fn scale(&self, c: &Q) -> Polynomial {
        if c.is_zero() {
            return Polynomial::zero();
        }
        Polynomial { terms: self.terms.iter().map(|(m, d)| (m.clone(), d * c)).collect() }
    }
    pub fn neg(&self) -> Polynomial {
        self.scale(&Q::int(-1))
    }
    pub fn add(&self, o: &Polynomial) -> Polynomial {
        let mut p = self.clone();
        for (m, c) in &o.terms {
            p.add_term(m.clone(), c.clone());
        }
        p
    }
    pub fn sub(&self, o: &Polynomial) -> Polynomial {
        self.add(&o.neg())
    }
    pub fn mul(&self, o: &Polynomial) -> Polynomial {
        let mut p = Polynomial::zero();
        for (m, c) in &self.terms {
            for (n, d) in &o.terms {
                p.add_term(m.mul(n), c * d);
            }
        }
        p
    }
    pub fn mul_monomial(&self, m: &Monomial, c: &Q) -> Polynomial {
        Polynomial::from_terms(self.terms.iter().map(|(n, d)| (n.mul(m), d * c)))
    }
    pub fn pow(&self, e: u32) -> Polynomial {
        (0..e).fold(Polynomial::constant(Q::one()), |acc, _| acc.mul(self))
    }
    /// Replaces every variable `i` by `sub(i)`.
    pub fn substitute<F: Fn(usize) -> Polynomial>(&self, sub: F) -> Polynomial {
        let mut out = Polynomial::zero();
        for (m, c) in &self.terms {
            let mut t = Polynomial::constant(c.clone());
            for v in m.vars() {
                t = t.mul(&sub(v));
            }
            out = out.add(&t);
        }
        out
    }
    /// Whether every coefficient is an integer.
    pub fn is_integral(&self) -> bool {
        self.terms.values().all(|c| c.is_integer())
    }

    /// Text form `c * name(i)^e * ...`, terms in decreasing order.
    pub fn to_text<F: Fn(usize) -> String>(&self, ord: &MonomialOrder, name: F) -> String {
        if self.is_zero() {
            return "0".into();
        }
        let mut parts = Vec::new();
        for (m, c) in ord.sorted_terms(self) {
            let mut factors = vec![c.to_string()];
            for (i, &e) in m.exps().iter().enumerate() {
                if e == 1 {
                    factors.push(name(i));
                } else if e > 1 {
                    factors.push(format!("{}^{e}", name(i)));
                }
            }
            parts.push(factors.join(" * "));
        }
        parts.join(" + ")
    }
}

impl fmt::Debug for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self.terms.iter().rev().map(|(m, c)| format!("{c}*{m:?}")).collect();
        write!(f, "{}", parts.join(" + "))
    }
}

/// Degree-lexicographic order given by a ranking of the variables, largest first.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MonomialOrder {
    ranking: Vec<usize>,
    pos: Vec<usize>,
}

impl MonomialOrder {
    pub fn deglex(ranking: Vec<usize>) -> Result<Self> {
        let n = ranking.len();
        let mut pos = vec![usize::MAX; n];
        for (p, &v) in ranking.iter().enumerate() {
            if v >= n || pos[v] != usize::MAX {
                return Err(Error::Order(format!("{ranking:?} is not a permutation")));
            }
            pos[v] = p;
        }
        Ok(MonomialOrder { ranking, pos })
    }

    /// Variable 0 largest, then 1, and so on.
    pub fn deglex_natural(n: usize) -> Self {
        Self::deglex((0..n).collect()).unwrap()
    }

    pub fn n_vars(&self) -> usize {
        self.ranking.len()
    }
    /// Variables from largest to smallest.
    pub fn ranking(&self) -> &[usize] {
        &self.ranking
    }
    /// Rank of a variable; 0 is the largest.
    pub fn position(&self, v: usize) -> usize {
        self.pos[v]
    }

    pub fn cmp(&self, a: &Monomial, b: &Monomial) -> Ordering {
        a.degree().cmp(&b.degree()).then_with(|| {
            for &v in &self.ranking {
                match a.exp(v).cmp(&b.exp(v)) {
                    Ordering::Equal => continue,
                    o => return o,
                }
            }
            Ordering::Equal
        })
    }

    /// Terms in decreasing order.
    pub fn sorted_terms<'a>(&self, p: &'a Polynomial) -> Vec<(&'a Monomial, &'a Q)> {
        let mut t: Vec<_> = p.terms().collect();
        t.sort_by(|a, b| self.cmp(b.0, a.0));
        t
    }

    pub fn leading(&self, p: &Polynomial) -> Option<(Monomial, Q)> {
        p.terms().max_by(|a, b| self.cmp(a.0, b.0)).map(|(m, c)| (m.clone(), c.clone()))
    }

    pub fn leading_monomial(&self, p: &Polynomial) -> Option<Monomial> {
        self.leading(p).map(|x| x.0)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn monomial_ops() {
        let a = Monomial::from_exps(vec![2, 1]);
        let b = Monomial::from_exps(vec![1, 0, 1]);
        assert_eq!(a.mul(&b), Monomial::from_exps(vec![3, 1, 1]));
        assert_eq!(a.lcm(&b), Monomial::from_exps(vec![2, 1, 1]));
        assert!(Monomial::var(0).divides(&a));
        assert!(!b.divides(&a));
        assert_eq!(Monomial::var(1).quotient_of(&a), Some(Monomial::from_exps(vec![2])));
        assert!(Monomial::var(0).is_coprime(&Monomial::var(1)));
        assert_eq!(Monomial::product([1, 0, 1]), Monomial::from_exps(vec![1, 2]));
        assert_eq!(Monomial::from_exps(vec![1, 0, 0]), Monomial::var(0));
    }

    #[test]
    fn polynomial_arithmetic() {
        let x = Polynomial::var(0);
        let y = Polynomial::var(1);
        let p = x.add(&y).mul(&x.sub(&y));
        assert_eq!(p, x.mul(&x).sub(&y.mul(&y)));
        assert!(p.is_homogeneous());
        assert!(p.sub(&p).is_zero());
        assert_eq!(x.add(&y).pow(2).n_terms(), 3);
        let s = p.substitute(|v| if v == 0 { Polynomial::var(1) } else { Polynomial::var(0) });
        assert_eq!(s, p.neg());
    }

    #[test]
    fn deglex_order() {
        let ord = MonomialOrder::deglex(vec![1, 0]).unwrap();
        let x = Monomial::var(0);
        let y = Monomial::var(1);
        assert_eq!(ord.cmp(&y, &x), Ordering::Greater);
        assert_eq!(ord.cmp(&x.mul(&x), &y), Ordering::Greater);
        assert_eq!(ord.cmp(&x.mul(&y), &x.mul(&x)), Ordering::Greater);
        assert!(MonomialOrder::deglex(vec![0, 0]).is_err());
        let p = Polynomial::var(0).add(&Polynomial::var(1));
        assert_eq!(ord.leading_monomial(&p), Some(y));
        assert_eq!(p.to_text(&ord, |i| format!("z{i}")), "1 * z1 + 1 * z0");
    }
}
