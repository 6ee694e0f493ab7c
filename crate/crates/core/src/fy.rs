//! Feichtner-Yuzvinsky rings: both presentations, the generator order, the
//! classical Gröbner basis and Hilbert functions.
//!
//! Generator `i` (either `x_G` or `h_G`) is the `i`-th member of the
//! building set in id order.

use crate::building::BuiltLattice;
use crate::error::{Error, Result};
use crate::groebner::{buchberger, hilbert_from_gb, hilbert_from_leading, is_groebner, GroebnerBasis, PairCertificate};
use crate::lattice::FlatId;
use crate::poly::{Monomial, MonomialOrder, Polynomial, Q};
use std::cmp::Ordering;

/// Index of the first chain element above atom `a`.
pub fn chain_entry(bl: &BuiltLattice, a: usize) -> usize {
    let l = bl.lattice();
    bl.order_chain().iter().position(|&m| l.flat(m).contains(a)).unwrap()
}

/// Atom order ◁ and the induced lexicographic order ⊴ on the building set.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GeneratorOrder {
    atom_order: Vec<usize>,
    atom_pos: Vec<usize>,
    sequence: Vec<FlatId>,
    pos: Vec<usize>,
}

impl GeneratorOrder {
    /// Order of a supersolvable built lattice, checked against the defining
    /// relations: initial segments come first, and `G` precedes every
    /// smaller member that is not one of its initial segments.
    pub fn new(bl: &BuiltLattice) -> Result<Self> {
        if !bl.is_supersolvable() {
            return Err(Error::Precondition("generator order needs a supersolvable witness".into()));
        }
        let o = Self::from_chain(bl);
        o.verify(bl)?;
        Ok(o)
    }

    /// Order read off `bl.order_chain()` without any verification.
    pub fn from_chain(bl: &BuiltLattice) -> Self {
        let l = bl.lattice();
        let mut atom_order: Vec<usize> = (0..l.n_atoms()).collect();
        atom_order.sort_by_key(|&a| (chain_entry(bl, a), a));
        Self::build(bl, atom_order)
    }

    /// A different tie-break among atoms entering the chain at the same
    /// step; checked like [`GeneratorOrder::new`].
    pub fn with_atom_order(bl: &BuiltLattice, atom_order: Vec<usize>) -> Result<Self> {
        let n = bl.lattice().n_atoms();
        let mut sorted = atom_order.clone();
        sorted.sort();
        if sorted != (0..n).collect::<Vec<_>>() {
            return Err(Error::Order("atom order is not a permutation".into()));
        }
        if atom_order.windows(2).any(|w| chain_entry(bl, w[0]) > chain_entry(bl, w[1])) {
            return Err(Error::Order("atom order disagrees with the order chain".into()));
        }
        let o = Self::build(bl, atom_order);
        if bl.is_supersolvable() {
            o.verify(bl)?;
        }
        Ok(o)
    }

    fn build(bl: &BuiltLattice, atom_order: Vec<usize>) -> Self {
        let l = bl.lattice();
        let mut atom_pos = vec![0; l.n_atoms()];
        for (p, &a) in atom_order.iter().enumerate() {
            atom_pos[a] = p;
        }
        let word = |g: FlatId| {
            let mut w: Vec<usize> = l.flat(g).iter().map(|a| atom_pos[a]).collect();
            w.sort();
            w
        };
        let mut sequence = bl.building().members().to_vec();
        sequence.sort_by_cached_key(|&g| word(g));
        let mut pos = vec![usize::MAX; l.len()];
        for (p, &g) in sequence.iter().enumerate() {
            pos[g.idx()] = p;
        }
        GeneratorOrder { atom_order, atom_pos, sequence, pos }
    }

    fn verify(&self, bl: &BuiltLattice) -> Result<()> {
        let l = bl.lattice();
        for &g in bl.building().members() {
            let segs: Vec<FlatId> = (0..=l.rank(g)).map(|k| bl.delta(l.bottom(), g, k)).collect::<Result<_>>()?;
            for &d in &segs[1..] {
                if bl.in_building(d) && self.lt(g, d) {
                    return Err(Error::Order(format!("initial segment {} of {} comes after it", l.flat(d), l.flat(g))));
                }
            }
            for &h in bl.building().members() {
                if l.lt(h, g) && !segs.contains(&h) && self.lt(h, g) {
                    return Err(Error::Order(format!("{} precedes {} without being an initial segment", l.flat(h), l.flat(g))));
                }
            }
        }
        Ok(())
    }

    /// Atoms listed in ◁ order.
    pub fn atom_order(&self) -> &[usize] {
        &self.atom_order
    }
    pub fn atom_position(&self, a: usize) -> usize {
        self.atom_pos[a]
    }
    /// Building-set members in ⊴ order, smallest first.
    pub fn sequence(&self) -> &[FlatId] {
        &self.sequence
    }
    /// Position of a member in ⊴ order.
    pub fn position(&self, g: FlatId) -> usize {
        let p = self.pos[g.idx()];
        assert!(p != usize::MAX, "{g:?} is not in the building set");
        p
    }
    pub fn cmp(&self, a: FlatId, b: FlatId) -> Ordering {
        self.position(a).cmp(&self.position(b))
    }
    /// Strict ⊴.
    pub fn lt(&self, a: FlatId, b: FlatId) -> bool {
        self.position(a) < self.position(b)
    }
    /// The word of atoms below `g`, in ◁ order.
    pub fn word(&self, bl: &BuiltLattice, g: FlatId) -> Vec<usize> {
        let mut w: Vec<usize> = bl.lattice().flat(g).iter().collect();
        w.sort_by_key(|&a| self.atom_pos[a]);
        w
    }
    /// Degree-lexicographic order on h-generators, larger in ⊴ = larger variable.
    pub fn monomial_order(&self, bl: &BuiltLattice) -> MonomialOrder {
        let ranking = self.sequence.iter().rev().map(|&g| bl.building().position(g).unwrap()).collect();
        MonomialOrder::deglex(ranking).unwrap()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Flavor {
    /// Generators `x_G`: linear forms over atoms and non-nested monomials.
    Affine,
    /// Generators `h_G = sum of x_G' over G' >= G`.
    Wonderful,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FYPresentation {
    pub flavor: Flavor,
    pub generators: Vec<FlatId>,
    pub relations: Vec<Polynomial>,
}

pub fn var(bl: &BuiltLattice, g: FlatId) -> usize {
    bl.building().position(g).unwrap_or_else(|| panic!("{g:?} is not in the building set"))
}

fn hvar(bl: &BuiltLattice, g: FlatId) -> Polynomial {
    Polynomial::var(var(bl, g))
}

/// `sum of x_G over G >= H` for atoms, then `prod x_G` over minimal non-nested sets.
pub fn presentation_x(bl: &BuiltLattice) -> FYPresentation {
    let l = bl.lattice();
    let mut relations = Vec::new();
    for &h in l.atoms() {
        let mut p = Polynomial::zero();
        for &g in bl.building().members() {
            if l.leq(h, g) {
                p.add_term(Monomial::var(var(bl, g)), Q::one());
            }
        }
        relations.push(p);
    }
    for x in bl.minimal_non_nested_sets() {
        relations.push(Polynomial::term(Monomial::product(x.iter().map(|&g| var(bl, g))), Q::one()));
    }
    FYPresentation { flavor: Flavor::Affine, generators: bl.building().members().to_vec(), relations }
}

/// Antichains of members strictly below `g` joining to `g`, of size
/// `2..=max_size`.
pub fn antichains_joining_to(bl: &BuiltLattice, g: FlatId, max_size: usize) -> Vec<Vec<FlatId>> {
    let l = bl.lattice();
    let below: Vec<FlatId> = bl.building().members().iter().copied().filter(|&x| l.lt(x, g)).collect();
    let mut out = Vec::new();
    fn go(bl: &BuiltLattice, below: &[FlatId], g: FlatId, start: usize, cur: &mut Vec<FlatId>, acc: FlatId, max: usize, out: &mut Vec<Vec<FlatId>>) {
        let l = bl.lattice();
        if cur.len() >= 2 && acc == g {
            out.push(cur.clone());
        }
        if cur.len() == max {
            return;
        }
        for i in start..below.len() {
            let x = below[i];
            if cur.iter().any(|&y| l.leq(x, y) || l.leq(y, x)) {
                continue;
            }
            cur.push(x);
            go(bl, below, g, i + 1, cur, l.join(acc, x), max, out);
            cur.pop();
        }
    }
    go(bl, &below, g, 0, &mut Vec::new(), l.bottom(), max_size, &mut out);
    out
}

/// `h_H` for atoms and `prod (h_G - h_G')` over antichains joining to `G`,
/// antichains of size at most `max_antichain` (default: the rank).
pub fn presentation_h(bl: &BuiltLattice, max_antichain: Option<usize>) -> FYPresentation {
    let l = bl.lattice();
    let cap = max_antichain.unwrap_or(l.height());
    let mut relations: Vec<Polynomial> = l.atoms().iter().map(|&h| hvar(bl, h)).collect();
    for &g in bl.building().members() {
        for a in antichains_joining_to(bl, g, cap) {
            let p = a.iter().fold(Polynomial::constant(Q::one()), |acc, &x| acc.mul(&hvar(bl, g).sub(&hvar(bl, x))));
            relations.push(p);
        }
    }
    FYPresentation { flavor: Flavor::Wonderful, generators: bl.building().members().to_vec(), relations }
}

/// `h_G -> sum of x_G' over G' >= G`.
pub fn h_to_x(bl: &BuiltLattice, p: &Polynomial) -> Polynomial {
    let l = bl.lattice();
    let members = bl.building().members();
    p.substitute(|v| {
        let g = members[v];
        Polynomial::from_terms(members.iter().filter(|&&h| l.leq(g, h)).map(|&h| (Monomial::var(var(bl, h)), Q::one())))
    })
}

/// Inverse substitution, by Möbius inversion on the building set.
pub fn x_to_h(bl: &BuiltLattice, p: &Polynomial) -> Polynomial {
    let l = bl.lattice();
    let members = bl.building().members();
    // x_G = h_G - sum of x_G' over G' > G, solved from the top down
    let mut xs: Vec<Polynomial> = vec![Polynomial::zero(); members.len()];
    for (i, &g) in members.iter().enumerate().rev() {
        let mut e = Polynomial::var(i);
        for (j, &h) in members.iter().enumerate() {
            if l.lt(g, h) {
                e = e.sub(&xs[j]);
            }
        }
        xs[i] = e;
    }
    p.substitute(|v| xs[v].clone())
}

/// The weight-2 generating set: atoms, and `(h_G - h_G1)(h_G - h_G2)` for
/// antichain pairs joining to `G` in the building set.
pub fn quadratic_relations(bl: &BuiltLattice) -> Vec<Polynomial> {
    let l = bl.lattice();
    let mut out: Vec<Polynomial> = l.atoms().iter().map(|&h| hvar(bl, h)).collect();
    let m = bl.building().members();
    for i in 0..m.len() {
        for j in i + 1..m.len() {
            let (a, b) = (m[i], m[j]);
            if l.leq(a, b) || l.leq(b, a) {
                continue;
            }
            let g = l.join(a, b);
            if bl.in_building(g) {
                out.push(hvar(bl, g).sub(&hvar(bl, a)).mul(&hvar(bl, g).sub(&hvar(bl, b))));
            }
        }
    }
    out
}

/// Reduced basis of the weight-≤2 part of the ideal, for the ⊴ order.
pub fn quadratic_basis(bl: &BuiltLattice, order: &GeneratorOrder) -> GroebnerBasis {
    buchberger(&quadratic_relations(bl), &order.monomial_order(bl), Some(2))
}

/// Quadratic basis and the outcome of its S-pair check.
#[derive(Debug, Clone)]
pub struct QuadraticCertificate {
    pub basis: GroebnerBasis,
    pub outcome: std::result::Result<(), PairCertificate>,
}

impl QuadraticCertificate {
    pub fn is_groebner(&self) -> bool {
        self.outcome.is_ok()
    }
}

/// Reduces the weight-2 relations and checks every S-pair without a degree cap.
pub fn certify_quadratic(bl: &BuiltLattice, order: &GeneratorOrder) -> QuadraticCertificate {
    let basis = quadratic_basis(bl, order);
    let outcome = is_groebner(&basis.polys, &order.monomial_order(bl), None);
    QuadraticCertificate { basis, outcome }
}

/// Variable ranking refining the reversed lattice order: smaller flats are
/// larger variables, which is the member id order.
pub fn reverse_lattice_order(bl: &BuiltLattice) -> MonomialOrder {
    MonomialOrder::deglex_natural(bl.building().len())
}

/// Elements `prod_S x_G * h_G'^(rk G' - rk join S)` for nested `S` below
/// `G'`, plus the non-nested monomials.
pub fn classical_groebner_basis(bl: &BuiltLattice) -> (Vec<Polynomial>, MonomialOrder) {
    let l = bl.lattice();
    let members = bl.building().members();
    let h = |g: FlatId| Polynomial::from_terms(members.iter().filter(|&&x| l.leq(g, x)).map(|&x| (Monomial::var(var(bl, x)), Q::one())));
    let mut out = Vec::new();
    let nested = bl.nested_sets(false);
    for &gp in members {
        let hp = h(gp);
        for s in &nested {
            if !s.iter().all(|&x| l.lt(x, gp)) {
                continue;
            }
            let j = l.join_all(s.iter().copied());
            if !l.lt(j, gp) {
                continue;
            }
            let mono = Monomial::product(s.iter().map(|&x| var(bl, x)));
            out.push(hp.pow((l.rank(gp) - l.rank(j)) as u32).mul_monomial(&mono, &Q::one()));
        }
    }
    for x in bl.minimal_non_nested_sets() {
        out.push(Polynomial::term(Monomial::product(x.iter().map(|&g| var(bl, g))), Q::one()));
    }
    (out, reverse_lattice_order(bl))
}

/// Normal monomials of the classical basis: `prod x_Gi^ai` over nested `S`
/// with `1 <= ai < rk[join S_{<Gi}, Gi]`, counted per weight.
pub fn classical_normal_monomial_counts(bl: &BuiltLattice) -> Vec<usize> {
    let l = bl.lattice();
    let mut counts = vec![0usize; l.height() + 1];
    for s in bl.nested_sets(false) {
        let bounds: Vec<usize> = s
            .iter()
            .map(|&g| {
                let below = l.join_all(s.iter().copied().filter(|&x| l.lt(x, g)));
                l.rank(g) - l.rank(below)
            })
            .collect();
        if bounds.iter().any(|&b| b < 2) {
            continue;
        }
        // distribute exponents: weight polynomial is the product of (t + .. + t^(b-1))
        let mut poly = vec![1usize];
        for b in bounds {
            let mut next = vec![0usize; poly.len() + b - 1];
            for (d, &c) in poly.iter().enumerate() {
                for a in 1..b {
                    next[d + a] += c;
                }
            }
            poly = next;
        }
        for (d, c) in poly.into_iter().enumerate() {
            if d < counts.len() {
                counts[d] += c;
            }
        }
    }
    trim(counts)
}

/// Drops trailing zeros.
pub fn trim(mut v: Vec<usize>) -> Vec<usize> {
    while v.len() > 1 && v.last() == Some(&0) {
        v.pop();
    }
    v
}

/// Hilbert function from Buchberger on the full affine presentation, up to
/// weight `rank`, with trailing zeros trimmed.
pub fn hilbert_x(bl: &BuiltLattice) -> Vec<usize> {
    let r = bl.lattice().height();
    let ord = reverse_lattice_order(bl);
    let gb = buchberger(&presentation_x(bl).relations, &ord, Some(r + 1));
    trim(hilbert_from_gb(&gb, &ord, r))
}

/// Same from the wonderful presentation under the ⊴ order.
pub fn hilbert_h(bl: &BuiltLattice, order: &GeneratorOrder) -> Vec<usize> {
    let r = bl.lattice().height();
    let ord = order.monomial_order(bl);
    let gb = buchberger(&presentation_h(bl, None).relations, &ord, Some(r + 1));
    trim(hilbert_from_gb(&gb, &ord, r))
}

/// Hilbert function of the quotient by the weight-≤2 part alone.
pub fn hilbert_quadratic(bl: &BuiltLattice, order: &GeneratorOrder) -> Vec<usize> {
    let r = bl.lattice().height();
    let ord = order.monomial_order(bl);
    let gb = buchberger(&quadratic_relations(bl), &ord, Some(r + 1));
    trim(hilbert_from_gb(&gb, &ord, r))
}

/// Hilbert function counted from the classical basis' leading monomials.
pub fn hilbert_classical(bl: &BuiltLattice) -> Vec<usize> {
    let (basis, ord) = classical_groebner_basis(bl);
    let lms: Vec<Monomial> = basis.iter().filter_map(|p| ord.leading_monomial(p)).collect();
    trim(hilbert_from_leading(&lms, &ord, bl.lattice().height()))
}

/// Whether the ideal is generated in weight at most 2.
pub fn is_quadratic(bl: &BuiltLattice) -> bool {
    let order = GeneratorOrder::from_chain(bl);
    hilbert_x(bl) == hilbert_quadratic(bl, &order)
}

/// Sets atom generators to zero.
pub fn eliminate_atoms(bl: &BuiltLattice, p: &Polynomial) -> Polynomial {
    let l = bl.lattice();
    let members = bl.building().members();
    p.substitute(|v| if l.rank(members[v]) == 1 { Polynomial::zero() } else { Polynomial::var(v) })
}

/// Wonderful relations with atoms set to zero: nonzero, sign-normalized
/// so the leading coefficient is positive, without repeats.
pub fn eliminated_relations(bl: &BuiltLattice, ord: &MonomialOrder) -> Vec<Polynomial> {
    let mut out: Vec<Polynomial> = Vec::new();
    for p in presentation_h(bl, None).relations {
        let q = eliminate_atoms(bl, &p);
        let Some((_, c)) = ord.leading(&q) else { continue };
        let q = if c.is_negative() { q.neg() } else { q };
        if !out.contains(&q) {
            out.push(q);
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::building::tests::b4_example;
    use crate::building::{maximal_building_set, minimal_building_set, BuildingSet};
    use crate::graph::Graph;
    use crate::groebner::normal_form;
    use crate::lattice::{boolean_lattice, partition_lattice, GeometricLattice};
    use crate::AtomSet;

    fn pi4_min() -> BuiltLattice {
        let l = partition_lattice(4).unwrap();
        let b = minimal_building_set(&l);
        BuiltLattice::with_search(l, b).unwrap()
    }

    fn c4_non_flag() -> BuiltLattice {
        let l = GeometricLattice::from_matroid(&Graph::cycle(4).unwrap().matroid().unwrap()).unwrap();
        let g = [&[0][..], &[1], &[2], &[3], &[0, 1], &[0, 1, 2, 3]]
            .iter()
            .map(|s| l.id_of(AtomSet::from_indices(s.iter().copied())).unwrap())
            .collect();
        BuiltLattice::new(l.clone(), BuildingSet::from_members(&l, g)).unwrap()
    }

    #[test]
    fn b4_generator_order() {
        let bl = b4_example();
        let o = GeneratorOrder::new(&bl).unwrap();
        assert_eq!(o.atom_order(), &[0, 1, 2, 3]);
        let words: Vec<Vec<usize>> = o.sequence().iter().map(|&g| o.word(&bl, g)).collect();
        let want: Vec<Vec<usize>> = vec![vec![0], vec![0, 1], vec![0, 1, 2], vec![0, 1, 2, 3], vec![1], vec![1, 2], vec![1, 2, 3], vec![2], vec![3]];
        assert_eq!(words, want);
    }

    #[test]
    fn hilbert_anchors() {
        let bl = pi4_min();
        assert_eq!(hilbert_x(&bl), vec![1, 5, 1]);
        let o = GeneratorOrder::new(&bl).unwrap();
        assert_eq!(hilbert_h(&bl, &o), vec![1, 5, 1]);
        assert_eq!(hilbert_quadratic(&bl, &o), vec![1, 5, 1]);
        assert_eq!(classical_normal_monomial_counts(&bl), vec![1, 5, 1]);
        assert_eq!(hilbert_classical(&bl), vec![1, 5, 1]);
        for n in 1..5 {
            let l = boolean_lattice(n).unwrap();
            let b = minimal_building_set(&l);
            let bl = BuiltLattice::new(l, b).unwrap();
            assert_eq!(hilbert_x(&bl), vec![1]);
            assert_eq!(presentation_h(&bl, None).relations.len(), n);
            assert_eq!(quadratic_relations(&bl).len(), n);
        }
        let b2 = boolean_lattice(2).unwrap();
        let mx = BuiltLattice::with_search(b2.clone(), maximal_building_set(&b2)).unwrap();
        assert_eq!(hilbert_x(&mx), vec![1, 1]);
    }

    #[test]
    fn change_of_variables() {
        let b2 = boolean_lattice(2).unwrap();
        let bl = BuiltLattice::new(b2.clone(), maximal_building_set(&b2)).unwrap();
        let top = var(&bl, b2.top());
        assert_eq!(h_to_x(&bl, &Polynomial::var(top)), Polynomial::var(top));
        let a = var(&bl, b2.atom(0));
        assert_eq!(h_to_x(&bl, &Polynomial::var(a)), Polynomial::var(a).add(&Polynomial::var(top)));
        let bl = pi4_min();
        let ord = reverse_lattice_order(&bl);
        let xgb = buchberger(&presentation_x(&bl).relations, &ord, None);
        for r in presentation_h(&bl, None).relations {
            let x = h_to_x(&bl, &r);
            assert!(normal_form(&x, &xgb.polys, &ord).is_zero());
            assert_eq!(x_to_h(&bl, &x), r);
        }
    }

    #[test]
    fn b2_quadratic_relations() {
        let b2 = boolean_lattice(2).unwrap();
        let bl = BuiltLattice::new(b2.clone(), maximal_building_set(&b2)).unwrap();
        let rel = quadratic_relations(&bl);
        assert_eq!(rel.len(), 3);
        let (h1, h2, ht) = (Polynomial::var(0), Polynomial::var(1), Polynomial::var(2));
        assert_eq!(rel[2], ht.sub(&h1).mul(&ht.sub(&h2)));
    }

    #[test]
    fn four_cycle_relations() {
        let bl = c4_non_flag();
        let l = bl.lattice();
        let h12 = Polynomial::var(var(&bl, l.id_of(AtomSet::from_indices([0, 1])).unwrap()));
        let ht = Polynomial::var(var(&bl, l.top()));
        let mut got: Vec<Polynomial> = presentation_h(&bl, None)
            .relations
            .iter()
            .map(|p| eliminate_atoms(&bl, p))
            .filter(|p| !p.is_zero())
            .collect();
        got.dedup();
        let want = [h12.mul(&h12), ht.mul(&ht).sub(&ht.mul(&h12)), ht.pow(3)];
        for w in &want {
            assert!(got.iter().any(|p| p == w || p == &w.neg()), "missing {w:?} in {got:?}");
        }
        let ord = GeneratorOrder::from_chain(&bl).monomial_order(&bl);
        let a = buchberger(&got, &ord, None);
        let b = buchberger(&want, &ord, None);
        assert_eq!(a.polys, b.polys);
        assert!(is_quadratic(&bl));
        assert!(!bl.is_flag());
    }

    #[test]
    fn classical_basis_is_groebner() {
        for bl in [pi4_min(), b4_example()] {
            let (basis, ord) = classical_groebner_basis(&bl);
            assert!(is_groebner(&basis, &ord, None).is_ok());
            assert_eq!(hilbert_classical(&bl), hilbert_x(&bl));
            assert_eq!(classical_normal_monomial_counts(&bl), hilbert_x(&bl));
        }
    }
}
