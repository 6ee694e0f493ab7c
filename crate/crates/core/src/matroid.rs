//! Simple loopless matroids given by their circuits.

use crate::atomset::{subsets, AtomSet, ATOM_CAP};
use crate::error::{Error, Result};
use serde::{Deserialize, Serialize};

/// Axiom checked by [`validate_circuits`].
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum CircuitAxiom {
    AtomRange,
    NonEmpty,
    Containment,
    Elimination,
    StrongElimination,
    SimpleLoopless,
}

/// First violated axiom together with its witness.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CircuitViolation {
    pub axiom: CircuitAxiom,
    pub circuits: Vec<Vec<usize>>,
    pub elements: Vec<usize>,
    pub message: String,
}

/// Largest ground set on which the strong elimination axiom is spot-checked.
pub const STRONG_AXIOM_CHECK_CAP: usize = 12;

/// Checks the circuit axioms and the simple-loopless condition.
///
/// Returns `Ok(())` or the first failing axiom, checked in the order of
/// [`CircuitAxiom`].
pub fn validate_circuits(circuits: &[AtomSet], n: usize) -> std::result::Result<(), CircuitViolation> {
    let fail = |axiom, cs: &[AtomSet], el: &[usize], msg: String| CircuitViolation {
        axiom,
        circuits: cs.iter().map(|c| c.to_vec()).collect(),
        elements: el.to_vec(),
        message: msg,
    };
    if n > ATOM_CAP {
        return Err(fail(CircuitAxiom::AtomRange, &[], &[], format!("{n} atoms exceed the cap of {ATOM_CAP}")));
    }
    let ground = AtomSet::full(n);
    for c in circuits {
        if !c.is_subset(ground) {
            return Err(fail(CircuitAxiom::AtomRange, &[*c], &[], "circuit uses an atom outside the ground set".into()));
        }
    }
    for c in circuits {
        if c.is_empty() {
            return Err(fail(CircuitAxiom::NonEmpty, &[*c], &[], "the empty set is a circuit".into()));
        }
    }
    for (i, a) in circuits.iter().enumerate() {
        for (j, b) in circuits.iter().enumerate() {
            if i != j && a.is_subset(*b) {
                return Err(fail(
                    CircuitAxiom::Containment,
                    &[*a, *b],
                    &[],
                    format!("circuit {a} is contained in circuit {b}"),
                ));
            }
        }
    }
    let has_circuit_in = |s: AtomSet| circuits.iter().any(|c| c.is_subset(s));
    for (i, a) in circuits.iter().enumerate() {
        for b in &circuits[i + 1..] {
            for e in a.intersection(*b).iter() {
                if !has_circuit_in(a.union(*b).without(e)) {
                    return Err(fail(
                        CircuitAxiom::Elimination,
                        &[*a, *b],
                        &[e],
                        format!("no circuit inside ({a} u {b}) - {e}"),
                    ));
                }
            }
        }
    }
    if n <= STRONG_AXIOM_CHECK_CAP {
        for a in circuits {
            for b in circuits {
                if a == b {
                    continue;
                }
                for e in a.intersection(*b).iter() {
                    for f in a.difference(*b).iter() {
                        let room = a.union(*b).without(e);
                        if !circuits.iter().any(|c| c.contains(f) && c.is_subset(room)) {
                            return Err(fail(
                                CircuitAxiom::StrongElimination,
                                &[*a, *b],
                                &[e, f],
                                format!("no circuit inside ({a} u {b}) - {e} containing {f}"),
                            ));
                        }
                    }
                }
            }
        }
    }
    for c in circuits {
        if c.len() <= 2 {
            return Err(fail(
                CircuitAxiom::SimpleLoopless,
                &[*c],
                &[],
                format!("simple loopless violated: circuit {c} has size {}", c.len()),
            ));
        }
    }
    Ok(())
}

/// A simple loopless matroid on atoms `0..n_atoms`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Matroid {
    n_atoms: usize,
    circuits: Vec<AtomSet>,
    // circuits bucketed by size, smallest first
    by_size: Vec<Vec<AtomSet>>,
}

fn canonical_sort(circuits: &mut Vec<AtomSet>) {
    circuits.sort_by_key(|c| c.canonical_key());
    circuits.dedup();
}

impl Matroid {
    /// Validates and builds a matroid from its circuits.
    pub fn from_circuits(n_atoms: usize, circuits: Vec<AtomSet>) -> Result<Self> {
        if let Err(v) = validate_circuits(&circuits, n_atoms) {
            return Err(Error::InvalidMatroid(format!("{:?}: {}", v.axiom, v.message)));
        }
        Ok(Self::from_circuits_unchecked(n_atoms, circuits))
    }

    pub(crate) fn from_circuits_unchecked(n_atoms: usize, mut circuits: Vec<AtomSet>) -> Self {
        canonical_sort(&mut circuits);
        let max = circuits.iter().map(|c| c.len()).max().unwrap_or(0);
        let mut by_size = vec![Vec::new(); max + 1];
        for c in &circuits {
            by_size[c.len()].push(*c);
        }
        Matroid { n_atoms, circuits, by_size }
    }

    /// The free (boolean) matroid: no circuits.
    pub fn free(n_atoms: usize) -> Result<Self> {
        Self::from_circuits(n_atoms, Vec::new())
    }

    pub fn n_atoms(&self) -> usize {
        self.n_atoms
    }

    pub fn ground(&self) -> AtomSet {
        AtomSet::full(self.n_atoms)
    }

    /// Circuits in canonical order (size, then bitmask).
    pub fn circuits(&self) -> &[AtomSet] {
        &self.circuits
    }

    pub fn is_independent(&self, s: AtomSet) -> bool {
        !self.circuits.iter().any(|c| c.is_subset(s))
    }

    /// Least fixed point of the one-step rule: add every `x` such that some
    /// circuit through `x` lies in `X + x`.
    pub fn closure(&self, x: AtomSet) -> AtomSet {
        let mut cur = x;
        loop {
            let mut next = cur;
            for bucket in &self.by_size {
                for c in bucket {
                    let outside = c.difference(cur);
                    if outside.len() == 1 {
                        next = next.union(outside);
                    }
                }
            }
            if next == cur {
                return cur;
            }
            cur = next;
        }
    }

    pub fn is_flat(&self, x: AtomSet) -> bool {
        self.closure(x) == x
    }

    /// Rank of a subset: size of a greedily grown independent subset.
    pub fn rank(&self, x: AtomSet) -> usize {
        let mut basis = AtomSet::EMPTY;
        for i in x.iter() {
            let t = basis.with(i);
            if self.is_independent(t) {
                basis = t;
            }
        }
        basis.len()
    }
}

/// Ground sets above this size are rejected by [`circuits_from_independents`].
pub const INDEPENDENCE_ORACLE_CAP: usize = 20;

/// Minimal dependent sets of an independence predicate, canonically sorted.
///
/// The independence axioms are verified exhaustively when `n <= 12`.
pub fn circuits_from_independents<F>(n: usize, independent: F) -> Result<Vec<AtomSet>>
where
    F: Fn(AtomSet) -> bool,
{
    if n > INDEPENDENCE_ORACLE_CAP {
        return Err(Error::CapExceeded { what: "ground set", got: n, cap: INDEPENDENCE_ORACLE_CAP });
    }
    let ground = AtomSet::full(n);
    let table: Vec<bool> = (0..1u64 << n).map(|m| independent(AtomSet(m))).collect();
    if n <= STRONG_AXIOM_CHECK_CAP {
        if !table[0] {
            return Err(Error::InvalidMatroid("the empty set is dependent".into()));
        }
        for m in 0..1u64 << n {
            if !table[m as usize] {
                continue;
            }
            let s = AtomSet(m);
            for i in s.iter() {
                if !table[s.without(i).0 as usize] {
                    return Err(Error::InvalidMatroid(format!("independent {s} has a dependent subset")));
                }
            }
        }
        for i in 0..1u64 << n {
            if !table[i as usize] {
                continue;
            }
            for j in 0..1u64 << n {
                let (a, b) = (AtomSet(i), AtomSet(j));
                if !table[j as usize] || b.len() <= a.len() {
                    continue;
                }
                if !b.difference(a).iter().any(|x| table[a.with(x).0 as usize]) {
                    return Err(Error::InvalidMatroid(format!("augmentation fails for {a} and {b}")));
                }
            }
        }
    }
    let mut out: Vec<AtomSet> = subsets(ground)
        .filter(|s| !table[s.0 as usize] && s.iter().all(|i| table[s.without(i).0 as usize]))
        .collect();
    canonical_sort(&mut out);
    Ok(out)
}

/// Outcome of [`modular_circuit_witness`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ModularCircuitCase {
    Contained,
    Disjoint,
    /// A circuit meeting the flat in exactly `hit`, with the rest inside `C - G`.
    Witness { circuit: AtomSet, hit: usize },
}

/// For a modular flat `g` and a circuit `c`, finds a circuit meeting `g` in a
/// single atom whose other atoms lie in `c - g`.
///
/// `is_modular` says whether `g` is a modular flat; it is the caller's
/// lattice-level check.
pub fn modular_circuit_witness(m: &Matroid, g: AtomSet, c: AtomSet, is_modular: bool) -> Result<ModularCircuitCase> {
    if !is_modular {
        return Err(Error::Precondition(format!("flat {g} is not modular")));
    }
    if !m.is_flat(g) {
        return Err(Error::Precondition(format!("{g} is not a flat")));
    }
    if !m.circuits().contains(&c) {
        return Err(Error::Precondition(format!("{c} is not a circuit")));
    }
    if c.is_subset(g) {
        return Ok(ModularCircuitCase::Contained);
    }
    if c.is_disjoint(g) {
        return Ok(ModularCircuitCase::Disjoint);
    }
    let rest = c.difference(g);
    for &cand in m.circuits() {
        let hit = cand.intersection(g);
        if hit.len() == 1 && cand.difference(hit).is_subset(rest) {
            return Ok(ModularCircuitCase::Witness { circuit: cand, hit: hit.first().unwrap() });
        }
    }
    Err(Error::Precondition(format!("no witness circuit for {c} against {g}; flat is not modular")))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn s(v: &[usize]) -> AtomSet {
        AtomSet::from_indices(v.iter().copied())
    }

    // edge sets of the 7 cycles of K_4, edges (01,02,03,12,13,23) = atoms 0..5
    fn k4_cycles() -> Vec<AtomSet> {
        vec![s(&[0, 1, 3]), s(&[0, 2, 4]), s(&[1, 2, 5]), s(&[3, 4, 5]), s(&[0, 2, 3, 5]), s(&[0, 1, 4, 5]), s(&[1, 2, 3, 4])]
    }

    #[test]
    fn four_cycle_is_valid() {
        assert!(validate_circuits(&[s(&[0, 1, 2, 3])], 4).is_ok());
    }

    #[test]
    fn containment_reported_first() {
        let v = validate_circuits(&[s(&[1, 2]), s(&[1, 2, 3])], 4).unwrap_err();
        assert_eq!(v.axiom, CircuitAxiom::Containment);
        assert_eq!(v.circuits, vec![vec![1, 2], vec![1, 2, 3]]);
    }

    #[test]
    fn non_simple_rejected() {
        let v = validate_circuits(&[s(&[1, 2])], 3).unwrap_err();
        assert_eq!(v.axiom, CircuitAxiom::SimpleLoopless);
        assert!(v.message.contains("simple loopless violated"));
    }

    #[test]
    fn k4_cycles_valid() {
        assert!(validate_circuits(&k4_cycles(), 6).is_ok());
    }

    #[test]
    fn elimination_failure_detected() {
        // {0,1,2} and {0,3,4} share 0 but nothing lives in {1,2,3,4}
        let v = validate_circuits(&[s(&[0, 1, 2]), s(&[0, 3, 4])], 5).unwrap_err();
        assert_eq!(v.axiom, CircuitAxiom::Elimination);
    }

    #[test]
    fn closure_on_four_cycle() {
        let m = Matroid::from_circuits(4, vec![s(&[0, 1, 2, 3])]).unwrap();
        assert_eq!(m.closure(AtomSet::EMPTY), AtomSet::EMPTY);
        assert_eq!(m.closure(s(&[0, 1, 2])), s(&[0, 1, 2, 3]));
        assert_eq!(m.closure(s(&[0, 2])), s(&[0, 2]));
        assert_eq!(m.rank(m.ground()), 3);
    }

    #[test]
    fn independents_to_circuits() {
        let u23 = circuits_from_independents(3, |x| x.len() <= 2).unwrap();
        assert_eq!(u23, vec![s(&[0, 1, 2])]);
        assert!(circuits_from_independents(4, |_| true).unwrap().is_empty());
        let m = Matroid::from_circuits(6, k4_cycles()).unwrap();
        let back = circuits_from_independents(6, |x| m.is_independent(x)).unwrap();
        assert_eq!(back.len(), 7);
        assert_eq!(back, m.circuits().to_vec());
    }

    #[test]
    fn bad_independence_predicate() {
        // not closed under subsets
        assert!(circuits_from_independents(3, |x| x.len() != 1).is_err());
    }

    #[test]
    fn modular_circuit_cases() {
        let m = Matroid::from_circuits(6, k4_cycles()).unwrap();
        // the triangle 01,02,12 = atoms {0,1,3} is a modular line of K_4
        let line = s(&[0, 1, 3]);
        assert_eq!(modular_circuit_witness(&m, line, s(&[0, 1, 3]), true).unwrap(), ModularCircuitCase::Contained);
        assert_eq!(
            modular_circuit_witness(&m, line, s(&[0, 2, 4]), true).unwrap(),
            ModularCircuitCase::Witness { circuit: s(&[0, 2, 4]), hit: 0 }
        );
        // every cycle of K_4 meets that triangle; use the point 23 instead
        assert_eq!(modular_circuit_witness(&m, s(&[5]), s(&[0, 1, 3]), true).unwrap(), ModularCircuitCase::Disjoint);
        // 4-cycle 01,13,23,02 = atoms {0,4,5,1} meets the line in {0,1}
        let c4 = s(&[0, 1, 4, 5]);
        match modular_circuit_witness(&m, line, c4, true).unwrap() {
            ModularCircuitCase::Witness { circuit, hit } => {
                assert_eq!(circuit.len(), 3);
                assert!(line.contains(hit));
                assert!(circuit.without(hit).is_subset(s(&[4, 5])));
            }
            other => panic!("unexpected {other:?}"),
        }
        assert!(modular_circuit_witness(&m, line, c4, false).is_err());
    }
}
