//! Normal forms, Buchberger's algorithm and Gröbner-basis certification for
//! degree-lexicographic orders.
//!
//! Internally monomials are exponent vectors permuted into ranking order, so
//! the derived ordering on `(degree, exponents)` is the monomial order.

use crate::poly::{Monomial, MonomialOrder, Polynomial, Q};
use std::cmp::Ordering;
use std::collections::{BTreeMap, BTreeSet};

#[derive(Clone, PartialEq, Eq, Hash)]
struct Key {
    deg: u16,
    e: Box<[u8]>,
    sup: u128,
}

impl Ord for Key {
    fn cmp(&self, o: &Self) -> Ordering {
        self.deg.cmp(&o.deg).then_with(|| self.e.cmp(&o.e))
    }
}
impl PartialOrd for Key {
    fn partial_cmp(&self, o: &Self) -> Option<Ordering> {
        Some(self.cmp(o))
    }
}

fn sup_of(e: &[u8]) -> u128 {
    e.iter().enumerate().filter(|(_, &x)| x > 0).fold(0u128, |s, (i, _)| s | 1u128 << i.min(127))
}

impl Key {
    fn new(e: Box<[u8]>) -> Key {
        let deg = e.iter().map(|&x| x as u16).sum();
        let sup = sup_of(&e);
        Key { deg, e, sup }
    }
    #[inline]
    fn divides(&self, o: &Key) -> bool {
        self.deg <= o.deg && self.sup & !o.sup == 0 && self.e.iter().zip(o.e.iter()).all(|(a, b)| a <= b)
    }
    fn mul(&self, o: &Key) -> Key {
        Key::new(self.e.iter().zip(o.e.iter()).map(|(a, b)| a.checked_add(*b).expect("exponent overflow")).collect())
    }
    fn div(&self, o: &Key) -> Key {
        Key::new(self.e.iter().zip(o.e.iter()).map(|(a, b)| a - b).collect())
    }
    fn lcm(&self, o: &Key) -> Key {
        Key::new(self.e.iter().zip(o.e.iter()).map(|(a, b)| *a.max(b)).collect())
    }
    fn coprime(&self, o: &Key) -> bool {
        self.sup & o.sup == 0 && self.e.iter().zip(o.e.iter()).all(|(a, b)| *a == 0 || *b == 0)
    }
}

/// Terms in decreasing order.
#[derive(Clone, Debug, PartialEq, Eq)]
struct IPoly(Vec<(Key, Q)>);

impl std::fmt::Debug for Key {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{:?}", self.e)
    }
}

impl IPoly {
    fn lm(&self) -> &Key {
        &self.0[0].0
    }
    fn lc(&self) -> &Q {
        &self.0[0].1
    }
    fn is_zero(&self) -> bool {
        self.0.is_empty()
    }
    fn monic(mut self) -> IPoly {
        if let Some((_, c)) = self.0.first() {
            if !c.is_one() {
                let inv = c.recip();
                for t in &mut self.0 {
                    t.1 = &t.1 * &inv;
                }
            }
        }
        self
    }
}

struct Ring<'a> {
    ord: &'a MonomialOrder,
    n: usize,
}

impl<'a> Ring<'a> {
    fn new(ord: &'a MonomialOrder) -> Self {
        Ring { ord, n: ord.n_vars() }
    }

    fn key(&self, m: &Monomial) -> Key {
        assert!(m.exps().len() <= self.n, "monomial uses a variable outside the order");
        Key::new(
            self.ord
                .ranking()
                .iter()
                .map(|&v| u8::try_from(m.exp(v)).expect("exponent above 255"))
                .collect(),
        )
    }

    fn mono(&self, k: &Key) -> Monomial {
        let mut e = vec![0u16; self.n];
        for (p, &x) in k.e.iter().enumerate() {
            e[self.ord.ranking()[p]] = x as u16;
        }
        Monomial::from_exps(e)
    }

    fn import(&self, p: &Polynomial) -> IPoly {
        let mut t: Vec<(Key, Q)> = p.terms().map(|(m, c)| (self.key(m), c.clone())).collect();
        t.sort_by(|a, b| b.0.cmp(&a.0));
        IPoly(t)
    }

    fn export(&self, p: &IPoly) -> Polynomial {
        Polynomial::from_terms(p.0.iter().map(|(k, c)| (self.mono(k), c.clone())))
    }

    fn spoly(&self, f: &IPoly, g: &IPoly) -> IPoly {
        let l = f.lm().lcm(g.lm());
        let mf = l.div(f.lm());
        let mg = l.div(g.lm());
        let cf = g.lc().clone();
        let cg = f.lc().clone();
        let mut acc: BTreeMap<Key, Q> = BTreeMap::new();
        for (k, c) in &f.0[1..] {
            add_into(&mut acc, k.mul(&mf), c * &cf);
        }
        for (k, c) in &g.0[1..] {
            add_into(&mut acc, k.mul(&mg), -(c * &cg));
        }
        IPoly(acc.into_iter().rev().collect())
    }
}

fn add_into(acc: &mut BTreeMap<Key, Q>, k: Key, c: Q) {
    if c.is_zero() {
        return;
    }
    match acc.entry(k) {
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

/// Reducers sorted by leading monomial, smallest first, ties by index.
struct Reducers<'b> {
    polys: Vec<&'b IPoly>,
}

impl<'b> Reducers<'b> {
    fn new<I: IntoIterator<Item = &'b IPoly>>(it: I) -> Self {
        let mut polys: Vec<&IPoly> = it.into_iter().filter(|p| !p.is_zero()).collect();
        polys.sort_by(|a, b| a.lm().cmp(b.lm()));
        Reducers { polys }
    }

    fn find(&self, k: &Key) -> Option<&'b IPoly> {
        self.polys.iter().take_while(|p| p.lm().deg <= k.deg).find(|p| p.lm().divides(k)).copied()
    }

    /// Full reduction: every term of the result is irreducible.
    fn reduce(&self, p: IPoly) -> IPoly {
        let mut work: BTreeMap<Key, Q> = p.0.into_iter().collect();
        let mut rem = Vec::new();
        while let Some((k, c)) = work.pop_last() {
            match self.find(&k) {
                Some(g) => {
                    let q = k.div(g.lm());
                    let f = &c / g.lc();
                    for (t, d) in &g.0[1..] {
                        add_into(&mut work, t.mul(&q), -(d * &f));
                    }
                }
                None => rem.push((k, c)),
            }
        }
        IPoly(rem)
    }
}

/// Multivariate division remainder.
pub fn normal_form(p: &Polynomial, basis: &[Polynomial], ord: &MonomialOrder) -> Polynomial {
    let r = Ring::new(ord);
    let b: Vec<IPoly> = basis.iter().map(|g| r.import(g)).collect();
    r.export(&Reducers::new(b.iter()).reduce(r.import(p)))
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GroebnerBasis {
    /// Reduced and monic, sorted by leading monomial ascending.
    pub polys: Vec<Polynomial>,
    pub degree_cap: Option<usize>,
}

impl GroebnerBasis {
    pub fn leading_monomials(&self, ord: &MonomialOrder) -> Vec<Monomial> {
        self.polys.iter().map(|p| ord.leading_monomial(p).unwrap()).collect()
    }
    pub fn len(&self) -> usize {
        self.polys.len()
    }
    pub fn is_empty(&self) -> bool {
        self.polys.is_empty()
    }
    pub fn max_degree(&self) -> usize {
        self.polys.iter().map(|p| p.degree()).max().unwrap_or(0)
    }
}

/// Buchberger with the Gebauer-Möller installation of the coprime and chain
/// criteria, pairs taken by smallest lcm. With a cap, pairs and inputs above
/// the cap are skipped: the result is then a truncated basis, exact up to
/// that degree for homogeneous input.
pub fn buchberger(gens: &[Polynomial], ord: &MonomialOrder, degree_cap: Option<usize>) -> GroebnerBasis {
    let r = Ring::new(ord);
    let cap = degree_cap.unwrap_or(usize::MAX);
    let mut polys: Vec<IPoly> = Vec::new();
    let mut active: Vec<usize> = Vec::new();
    let mut pairs: BTreeSet<(Key, usize, usize)> = BTreeSet::new();
    let mut inputs: Vec<IPoly> = gens.iter().map(|g| r.import(g)).filter(|p| !p.is_zero() && (p.lm().deg as usize) <= cap).collect();
    inputs.sort_by(|a, b| a.lm().cmp(b.lm()));

    let insert = |h: IPoly, polys: &mut Vec<IPoly>, active: &mut Vec<usize>, pairs: &mut BTreeSet<(Key, usize, usize)>| {
        let h = h.monic();
        let hi = polys.len();
        polys.push(h);
        let h = &polys[hi];
        let mut cand: Vec<(usize, Key, bool)> = active.iter().map(|&g| (g, h.lm().lcm(polys[g].lm()), h.lm().coprime(polys[g].lm()))).collect();
        // chain criterion among the new pairs
        let mut keep: Vec<(usize, Key, bool)> = Vec::new();
        for i in 0..cand.len() {
            let (_, ref l, cop) = cand[i];
            let dominated = |j: usize, other: &(usize, Key, bool)| j != i && other.1.divides(l) && (other.1 != *l || j < i);
            let redundant = !cop && (cand.iter().enumerate().any(|(j, o)| j > i && dominated(j, o)) || keep.iter().any(|o| o.1.divides(l)));
            if cop || !redundant {
                keep.push(cand[i].clone());
            }
        }
        cand.clear();
        let keep: Vec<(usize, Key)> = keep.into_iter().filter(|c| !c.2).map(|c| (c.0, c.1)).collect();
        // old pairs made redundant by h
        pairs.retain(|(l, a, b)| {
            !(h.lm().divides(l) && h.lm().lcm(polys[*a].lm()) != *l && h.lm().lcm(polys[*b].lm()) != *l)
        });
        for (g, l) in keep {
            if (l.deg as usize) <= cap {
                pairs.insert((l, g.min(hi), g.max(hi)));
            }
        }
        active.retain(|&g| !h.lm().divides(polys[g].lm()));
        active.push(hi);
    };

    for f in inputs {
        let h = Reducers::new(active.iter().map(|&i| &polys[i])).reduce(f);
        if !h.is_zero() {
            insert(h, &mut polys, &mut active, &mut pairs);
        }
    }
    while let Some((_, a, b)) = pairs.pop_first() {
        let s = r.spoly(&polys[a], &polys[b]);
        let h = Reducers::new(active.iter().map(|&i| &polys[i])).reduce(s);
        if !h.is_zero() {
            insert(h, &mut polys, &mut active, &mut pairs);
        }
    }
    // interreduce tails
    let mut basis: Vec<IPoly> = active.iter().map(|&i| polys[i].clone()).collect();
    basis.sort_by(|a, b| a.lm().cmp(b.lm()));
    let mut reduced = Vec::with_capacity(basis.len());
    for i in 0..basis.len() {
        let others = Reducers::new(basis.iter().enumerate().filter(|(j, _)| *j != i).map(|(_, p)| p));
        let head = basis[i].0[0].clone();
        let tail = others.reduce(IPoly(basis[i].0[1..].to_vec()));
        let mut t = vec![head];
        t.extend(tail.0);
        reduced.push(IPoly(t).monic());
    }
    GroebnerBasis { polys: reduced.iter().map(|p| r.export(p)).collect(), degree_cap }
}

/// A pair whose S-polynomial does not reduce to zero.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PairCertificate {
    pub pair: [usize; 2],
    pub spoly_normal_form: Polynomial,
}

/// Checks every S-pair with non-coprime leading monomials (and lcm degree at
/// most the cap), in lexicographic pair order; returns the first failure.
pub fn is_groebner(gens: &[Polynomial], ord: &MonomialOrder, degree_cap: Option<usize>) -> std::result::Result<(), PairCertificate> {
    let r = Ring::new(ord);
    let cap = degree_cap.unwrap_or(usize::MAX);
    let polys: Vec<IPoly> = gens.iter().map(|g| r.import(g)).collect();
    let red = Reducers::new(polys.iter());
    for i in 0..polys.len() {
        if polys[i].is_zero() {
            continue;
        }
        for j in i + 1..polys.len() {
            if polys[j].is_zero() {
                continue;
            }
            let (a, b) = (polys[i].lm(), polys[j].lm());
            if a.coprime(b) || (a.lcm(b).deg as usize) > cap {
                continue;
            }
            let h = red.reduce(r.spoly(&polys[i], &polys[j]));
            if !h.is_zero() {
                return Err(PairCertificate { pair: [i, j], spoly_normal_form: r.export(&h) });
            }
        }
    }
    Ok(())
}

/// Monomials of each degree `0..=up_to` divisible by no leading monomial.
pub fn normal_monomials(leading: &[Monomial], ord: &MonomialOrder, up_to: usize) -> Vec<Vec<Monomial>> {
    let r = Ring::new(ord);
    let lms: Vec<Key> = leading.iter().map(|m| r.key(m)).collect();
    let n = ord.n_vars();
    let mut levels: Vec<Vec<(Key, usize)>> = Vec::new();
    let one = Key::new(vec![0u8; n].into_boxed_slice());
    let unit_is_normal = !lms.iter().any(|l| l.divides(&one));
    levels.push(if unit_is_normal { vec![(one, 0)] } else { vec![] });
    for d in 1..=up_to {
        let mut next = Vec::new();
        for (k, last) in &levels[d - 1] {
            // extend by positions >= the last used one to avoid repeats
            for p in *last..n {
                let mut e = k.e.clone();
                e[p] += 1;
                let m = Key::new(e);
                if !lms.iter().any(|l| l.divides(&m)) {
                    next.push((m, p));
                }
            }
        }
        levels.push(next);
    }
    levels
        .into_iter()
        .map(|lv| {
            let mut v: Vec<Monomial> = lv.iter().map(|(k, _)| r.mono(k)).collect();
            v.sort_by(|a, b| ord.cmp(a, b));
            v
        })
        .collect()
}

/// Hilbert function of the quotient by the ideal whose basis is `gb`.
pub fn hilbert_from_gb(gb: &GroebnerBasis, ord: &MonomialOrder, up_to: usize) -> Vec<usize> {
    hilbert_from_leading(&gb.leading_monomials(ord), ord, up_to)
}

pub fn hilbert_from_leading(leading: &[Monomial], ord: &MonomialOrder, up_to: usize) -> Vec<usize> {
    normal_monomials(leading, ord, up_to).iter().map(|v| v.len()).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn x() -> Polynomial {
        Polynomial::var(0)
    }
    fn y() -> Polynomial {
        Polynomial::var(1)
    }

    #[test]
    fn division_examples() {
        let ord = MonomialOrder::deglex_natural(2);
        let p = x().mul(&x()).sub(&y().mul(&y()));
        assert_eq!(normal_form(&p, &[], &ord), p);
        assert!(normal_form(&x().mul(&x()), &[x()], &ord).is_zero());
        let b = [x().mul(&y()), x().mul(&x()).add(&y().mul(&y()))];
        assert_eq!(normal_form(&p, &b, &ord), y().mul(&y()).scale(&Q::int(-2)));
    }

    #[test]
    fn buchberger_examples() {
        let ord = MonomialOrder::deglex_natural(2);
        let g = [x().mul(&x()), x().mul(&y())];
        assert!(is_groebner(&g, &ord, None).is_ok());
        assert_eq!(buchberger(&g, &ord, None).len(), 2);
        let g = [x().mul(&x()).sub(&y().mul(&y())), x().mul(&y())];
        let cert = is_groebner(&g, &ord, None).unwrap_err();
        assert_eq!(cert.pair, [0, 1]);
        assert_eq!(cert.spoly_normal_form.degree(), 3);
        let gb = buchberger(&g, &ord, None);
        assert!(gb.polys.contains(&y().pow(3)));
        assert!(is_groebner(&gb.polys, &ord, None).is_ok());
        assert!(is_groebner(&[x()], &ord, None).is_ok());
    }

    #[test]
    fn normal_monomials_and_hilbert() {
        let ord = MonomialOrder::deglex_natural(1);
        let gb = buchberger(&[x().mul(&x())], &ord, None);
        assert_eq!(hilbert_from_gb(&gb, &ord, 3), vec![1, 1, 0, 0]);
        let ord2 = MonomialOrder::deglex_natural(2);
        let free = hilbert_from_leading(&[], &ord2, 3);
        assert_eq!(free, vec![1, 2, 3, 4]);
    }

    #[test]
    fn cyclic_three_reduced_basis() {
        // x+y+z, xy+yz+zx, xyz-1 has reduced deglex basis of known size
        let ord = MonomialOrder::deglex_natural(3);
        let z = Polynomial::var(2);
        let g = [
            x().add(&y()).add(&z),
            x().mul(&y()).add(&y().mul(&z)).add(&z.mul(&x())),
            x().mul(&y()).mul(&z).sub(&Polynomial::constant(Q::one())),
        ];
        let gb = buchberger(&g, &ord, None);
        assert!(is_groebner(&gb.polys, &ord, None).is_ok());
        for p in &g {
            assert!(normal_form(p, &gb.polys, &ord).is_zero());
        }
        // quotient has dimension 6 (3! points over the closure)
        let h = hilbert_from_gb(&gb, &ord, 6);
        assert_eq!(h.iter().sum::<usize>(), 6);
    }
}
