//! Geometric lattices as tables of flats.
//!
//! Flats are stored as [`AtomSet`]s sorted canonically (size, then bitmask),
//! so `FlatId(0)` is always the bottom and the last id is the top.

use crate::atomset::AtomSet;
use crate::error::{Error, Result};
use crate::matroid::Matroid;
use std::collections::HashMap;
use std::fmt;

/// Largest number of flats a lattice may have (join/meet tables are dense).
pub const FLAT_CAP: usize = 4096;

#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct FlatId(pub u32);

impl FlatId {
    #[inline]
    pub fn idx(self) -> usize {
        self.0 as usize
    }
}

impl fmt::Debug for FlatId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "#{}", self.0)
    }
}

#[derive(Debug, Clone)]
pub struct GeometricLattice {
    n_atoms: usize,
    flats: Vec<AtomSet>,
    index: HashMap<u64, FlatId>,
    rank: Vec<usize>,
    up: Vec<Vec<FlatId>>,
    down: Vec<Vec<FlatId>>,
    join: Vec<u16>,
    meet: Vec<u16>,
    atoms: Vec<FlatId>,
}

impl GeometricLattice {
    /// Lattice of flats of a matroid; joins are closures of unions.
    pub fn from_matroid(m: &Matroid) -> Result<Self> {
        let n = m.n_atoms();
        let bottom = m.closure(AtomSet::EMPTY);
        let mut seen: HashMap<u64, ()> = HashMap::new();
        let mut stack = vec![bottom];
        seen.insert(bottom.0, ());
        let mut flats = Vec::new();
        while let Some(f) = stack.pop() {
            flats.push(f);
            if flats.len() > FLAT_CAP {
                return Err(Error::CapExceeded { what: "flats", got: flats.len(), cap: FLAT_CAP });
            }
            for a in AtomSet::full(n).difference(f).iter() {
                let g = m.closure(f.with(a));
                if seen.insert(g.0, ()).is_none() {
                    stack.push(g);
                }
            }
        }
        Self::build(n, flats, |x| m.closure(x))
    }

    /// Lattice given by an intersection-closed family of atom sets.
    pub fn from_flats(n_atoms: usize, flats: Vec<AtomSet>) -> Result<Self> {
        let mut sorted = flats.clone();
        sorted.sort_by_key(|f| f.canonical_key());
        sorted.dedup();
        if sorted.len() > FLAT_CAP {
            return Err(Error::CapExceeded { what: "flats", got: sorted.len(), cap: FLAT_CAP });
        }
        let close = |x: AtomSet| {
            sorted
                .iter()
                .find(|f| x.is_subset(**f))
                .copied()
                .unwrap_or(AtomSet::full(n_atoms))
        };
        Self::build(n_atoms, sorted.clone(), close)
    }

    fn build<C: Fn(AtomSet) -> AtomSet>(n_atoms: usize, mut flats: Vec<AtomSet>, close: C) -> Result<Self> {
        flats.sort_by_key(|f| f.canonical_key());
        flats.dedup();
        let nf = flats.len();
        let index: HashMap<u64, FlatId> = flats.iter().enumerate().map(|(i, f)| (f.0, FlatId(i as u32))).collect();
        let id_of = |s: AtomSet| -> Result<FlatId> {
            index
                .get(&s.0)
                .copied()
                .ok_or_else(|| Error::InvalidLattice(format!("{s} is not an element")))
        };
        let mut join = vec![0u16; nf * nf];
        let mut meet = vec![0u16; nf * nf];
        for i in 0..nf {
            for j in i..nf {
                let jn = id_of(close(flats[i].union(flats[j])))?;
                let mt = id_of(flats[i].intersection(flats[j]))
                    .map_err(|_| Error::InvalidLattice(format!("meet of {} and {} is not a flat", flats[i], flats[j])))?;
                join[i * nf + j] = jn.0 as u16;
                join[j * nf + i] = jn.0 as u16;
                meet[i * nf + j] = mt.0 as u16;
                meet[j * nf + i] = mt.0 as u16;
            }
        }
        if !flats[0].is_empty() {
            return Err(Error::InvalidLattice("bottom element is not the empty set (matroid has loops)".into()));
        }
        let mut atoms = Vec::with_capacity(n_atoms);
        for a in 0..n_atoms {
            atoms.push(
                id_of(AtomSet::singleton(a))
                    .map_err(|_| Error::InvalidLattice(format!("atom {a} is not a flat (parallel elements)")))?,
            );
        }
        let mut up = vec![Vec::new(); nf];
        for i in 0..nf {
            let mut cov: Vec<FlatId> = (0..n_atoms)
                .filter(|a| !flats[i].contains(*a))
                .map(|a| FlatId(join[i * nf + atoms[a].idx()] as u32))
                .collect();
            cov.sort();
            cov.dedup();
            up[i] = cov;
        }
        let mut down = vec![Vec::new(); nf];
        for (i, u) in up.iter().enumerate() {
            for c in u {
                down[c.idx()].push(FlatId(i as u32));
            }
        }
        // ranks by longest chains from the bottom; ids are a linear extension
        let mut rank = vec![0usize; nf];
        for i in 0..nf {
            for c in &up[i] {
                rank[c.idx()] = rank[c.idx()].max(rank[i] + 1);
            }
        }
        let lat = GeometricLattice { n_atoms, flats, index, rank, up, down, join, meet, atoms };
        lat.check_invariants()?;
        Ok(lat)
    }

    /// Jordan-Hölder, submodularity and atomicity.
    pub fn check_invariants(&self) -> Result<()> {
        let nf = self.len();
        for i in 0..nf {
            for c in &self.up[i] {
                if self.rank[c.idx()] != self.rank[i] + 1 {
                    return Err(Error::InvalidLattice(format!("maximal chains through {} differ in length", self.flats[i])));
                }
            }
        }
        let top = self.top();
        if self.flats[top.idx()] != AtomSet::full(self.n_atoms) {
            return Err(Error::InvalidLattice("top element is not the full atom set".into()));
        }
        for i in 0..nf {
            for j in 0..nf {
                let (a, b) = (FlatId(i as u32), FlatId(j as u32));
                if self.rank(self.meet(a, b)) + self.rank(self.join(a, b)) > self.rank[i] + self.rank[j] {
                    return Err(Error::InvalidLattice(format!("submodularity fails at {} and {}", self.flats[i], self.flats[j])));
                }
            }
        }
        for (i, f) in self.flats.iter().enumerate() {
            let j = self.join_all(f.iter().map(|a| self.atoms[a]));
            if j.idx() != i {
                return Err(Error::InvalidLattice(format!("{f} is not the join of its atoms")));
            }
        }
        Ok(())
    }

    pub fn n_atoms(&self) -> usize {
        self.n_atoms
    }
    pub fn len(&self) -> usize {
        self.flats.len()
    }
    pub fn is_empty(&self) -> bool {
        self.flats.is_empty()
    }
    pub fn bottom(&self) -> FlatId {
        FlatId(0)
    }
    pub fn top(&self) -> FlatId {
        FlatId(self.flats.len() as u32 - 1)
    }
    pub fn ids(&self) -> impl Iterator<Item = FlatId> + '_ {
        (0..self.flats.len() as u32).map(FlatId)
    }
    pub fn flat(&self, x: FlatId) -> AtomSet {
        self.flats[x.idx()]
    }
    pub fn flats(&self) -> &[AtomSet] {
        &self.flats
    }
    pub fn id_of(&self, s: AtomSet) -> Option<FlatId> {
        self.index.get(&s.0).copied()
    }
    /// Flat id of atom `a`.
    pub fn atom(&self, a: usize) -> FlatId {
        self.atoms[a]
    }
    pub fn atoms(&self) -> &[FlatId] {
        &self.atoms
    }
    pub fn rank(&self, x: FlatId) -> usize {
        self.rank[x.idx()]
    }
    pub fn height(&self) -> usize {
        self.rank(self.top())
    }
    /// Elements covering `x`.
    pub fn covers_up(&self, x: FlatId) -> &[FlatId] {
        &self.up[x.idx()]
    }
    /// Elements covered by `x`.
    pub fn covers_down(&self, x: FlatId) -> &[FlatId] {
        &self.down[x.idx()]
    }
    #[inline]
    pub fn leq(&self, a: FlatId, b: FlatId) -> bool {
        self.flats[a.idx()].is_subset(self.flats[b.idx()])
    }
    #[inline]
    pub fn lt(&self, a: FlatId, b: FlatId) -> bool {
        a != b && self.leq(a, b)
    }
    pub fn covers(&self, hi: FlatId, lo: FlatId) -> bool {
        self.leq(lo, hi) && self.rank(hi) == self.rank(lo) + 1
    }
    #[inline]
    pub fn join(&self, a: FlatId, b: FlatId) -> FlatId {
        FlatId(self.join[a.idx() * self.len() + b.idx()] as u32)
    }
    #[inline]
    pub fn meet(&self, a: FlatId, b: FlatId) -> FlatId {
        FlatId(self.meet[a.idx() * self.len() + b.idx()] as u32)
    }
    /// Join of a family; the empty join is the bottom.
    pub fn join_all<I: IntoIterator<Item = FlatId>>(&self, xs: I) -> FlatId {
        xs.into_iter().fold(self.bottom(), |acc, x| self.join(acc, x))
    }
    pub fn meet_all<I: IntoIterator<Item = FlatId>>(&self, xs: I) -> FlatId {
        xs.into_iter().fold(self.top(), |acc, x| self.meet(acc, x))
    }
    /// Smallest element containing the given atoms.
    pub fn closure_of(&self, s: AtomSet) -> FlatId {
        self.join_all(s.iter().map(|a| self.atoms[a]))
    }
    /// All elements of `[a, b]` in id order.
    pub fn interval_ids(&self, a: FlatId, b: FlatId) -> Vec<FlatId> {
        self.ids().filter(|&x| self.leq(a, x) && self.leq(x, b)).collect()
    }
    /// Atoms of `L` below `x`, as their flat ids.
    pub fn atoms_below(&self, x: FlatId) -> Vec<FlatId> {
        self.flat(x).iter().map(|a| self.atoms[a]).collect()
    }

    pub fn is_modular_pair(&self, x: FlatId, y: FlatId) -> bool {
        let xy = self.meet(x, y);
        self.ids()
            .filter(|&z| self.leq(z, y))
            .all(|z| self.join(z, xy) == self.meet(self.join(z, x), y))
    }

    pub fn is_modular_element(&self, x: FlatId) -> bool {
        self.ids().all(|y| self.is_modular_pair(x, y) && self.is_modular_pair(y, x))
    }

    /// Modularity flags for every element.
    pub fn modular_elements(&self) -> Vec<bool> {
        self.ids().map(|x| self.is_modular_element(x)).collect()
    }

    /// Lexicographically first maximal chain of modular elements, if any.
    pub fn supersolvable_witness(&self) -> Option<ModularChainWitness> {
        let modular = self.modular_elements();
        self.first_chain(|x| modular[x.idx()]).map(|chain| ModularChainWitness { chain })
    }

    /// Depth-first search for the first maximal chain all of whose members pass `ok`.
    pub(crate) fn first_chain<F: Fn(FlatId) -> bool>(&self, ok: F) -> Option<Vec<FlatId>> {
        fn go<F: Fn(FlatId) -> bool>(l: &GeometricLattice, ok: &F, path: &mut Vec<FlatId>, dead: &mut Vec<bool>) -> bool {
            let cur = *path.last().unwrap();
            if cur == l.top() {
                return true;
            }
            for &c in l.covers_up(cur) {
                if dead[c.idx()] || !ok(c) {
                    continue;
                }
                path.push(c);
                if go(l, ok, path, dead) {
                    return true;
                }
                path.pop();
                dead[c.idx()] = true;
            }
            false
        }
        if !ok(self.bottom()) {
            return None;
        }
        let mut path = vec![self.bottom()];
        let mut dead = vec![false; self.len()];
        go(self, &ok, &mut path, &mut dead).then_some(path)
    }

    /// The chain `(m v lo) ^ hi` for `m` in `chain`, duplicates removed.
    pub fn induced_chain(&self, chain: &[FlatId], lo: FlatId, hi: FlatId) -> Result<Vec<FlatId>> {
        if !self.leq(lo, hi) {
            return Err(Error::Precondition(format!("{} is not below {}", self.flat(lo), self.flat(hi))));
        }
        let mut out: Vec<FlatId> = Vec::new();
        for &m in chain {
            let x = self.meet(self.join(m, lo), hi);
            if out.last() != Some(&x) {
                out.push(x);
            }
        }
        Ok(out)
    }

    /// The interval `[a, b]` as a lattice in its own right, with a map back
    /// to the ids of `self`.
    pub fn interval(&self, a: FlatId, b: FlatId) -> Result<(GeometricLattice, Vec<FlatId>)> {
        if !self.leq(a, b) {
            return Err(Error::Precondition(format!("{} is not below {}", self.flat(a), self.flat(b))));
        }
        let new_atoms: Vec<FlatId> = self.covers_up(a).iter().copied().filter(|&c| self.leq(c, b)).collect();
        let members = self.interval_ids(a, b);
        let local = |x: FlatId| -> AtomSet {
            new_atoms
                .iter()
                .enumerate()
                .filter(|(_, &c)| self.leq(c, x))
                .map(|(i, _)| i)
                .collect()
        };
        let sets: Vec<AtomSet> = members.iter().map(|&x| local(x)).collect();
        let sub = GeometricLattice::from_flats(new_atoms.len(), sets.clone())?;
        let mut back = vec![FlatId(0); sub.len()];
        for (x, s) in members.iter().zip(sets) {
            back[sub.id_of(s).unwrap().idx()] = *x;
        }
        Ok((sub, back))
    }
}

/// A maximal chain of modular elements, bottom to top.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ModularChainWitness {
    pub chain: Vec<FlatId>,
}

impl ModularChainWitness {
    pub fn validate(&self, l: &GeometricLattice) -> Result<()> {
        validate_maximal_chain(l, &self.chain)?;
        for &x in &self.chain {
            if !l.is_modular_element(x) {
                return Err(Error::Precondition(format!("chain member {} is not modular", l.flat(x))));
            }
        }
        Ok(())
    }
}

/// Checks that `chain` runs from bottom to top by covers.
pub fn validate_maximal_chain(l: &GeometricLattice, chain: &[FlatId]) -> Result<()> {
    if chain.first() != Some(&l.bottom()) || chain.last() != Some(&l.top()) {
        return Err(Error::Precondition("chain must run from bottom to top".into()));
    }
    if chain.len() != l.height() + 1 {
        return Err(Error::Precondition("chain is not maximal".into()));
    }
    for w in chain.windows(2) {
        if !l.covers(w[1], w[0]) {
            return Err(Error::Precondition("chain steps must be covers".into()));
        }
    }
    Ok(())
}

pub fn boolean_lattice(n: usize) -> Result<GeometricLattice> {
    GeometricLattice::from_matroid(&Matroid::free(n)?)
}

pub fn partition_lattice(n: usize) -> Result<GeometricLattice> {
    let g = crate::graph::Graph::complete(n)?;
    GeometricLattice::from_matroid(&g.matroid()?)
}
