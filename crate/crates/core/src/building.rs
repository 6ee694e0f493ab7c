//! Building sets, nested sets and supersolvable built lattices.

use crate::atomset::AtomSet;
use crate::error::{Error, Result};
use crate::lattice::{validate_maximal_chain, FlatId, GeometricLattice, ModularChainWitness};

/// A building set: sorted members, never containing the bottom.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BuildingSet {
    members: Vec<FlatId>,
    mask: Vec<bool>,
}

impl BuildingSet {
    /// Wraps a member list without checking the building-set axioms.
    pub fn from_members(l: &GeometricLattice, mut members: Vec<FlatId>) -> Self {
        members.sort();
        members.dedup();
        members.retain(|&x| x != l.bottom());
        let mut mask = vec![false; l.len()];
        for &x in &members {
            mask[x.idx()] = true;
        }
        BuildingSet { members, mask }
    }

    pub fn members(&self) -> &[FlatId] {
        &self.members
    }
    pub fn len(&self) -> usize {
        self.members.len()
    }
    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }
    #[inline]
    pub fn contains(&self, x: FlatId) -> bool {
        self.mask.get(x.idx()).copied().unwrap_or(false)
    }
    /// Position of `x` in the member list.
    pub fn position(&self, x: FlatId) -> Option<usize> {
        self.members.binary_search(&x).ok()
    }
}

/// The first element at which the building-set condition fails.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BuildingViolation {
    pub at: FlatId,
    pub reason: String,
}

/// Maximal elements of `cand` below `x`.
pub fn factors_in(l: &GeometricLattice, cand: &BuildingSet, x: FlatId) -> Vec<FlatId> {
    let below: Vec<FlatId> = cand.members().iter().copied().filter(|&g| l.leq(g, x)).collect();
    below.iter().copied().filter(|&g| !below.iter().any(|&h| h != g && l.leq(g, h))).collect()
}

/// Checks that the join map from the product of `[0, G]` over the factors
/// `G` of `X` onto `[0, X]` is an order isomorphism, for every `X`.
pub fn check_building_set(l: &GeometricLattice, cand: &BuildingSet) -> std::result::Result<(), BuildingViolation> {
    for a in 0..l.n_atoms() {
        if !cand.contains(l.atom(a)) {
            return Err(BuildingViolation { at: l.atom(a), reason: format!("atom {a} is missing") });
        }
    }
    for x in l.ids().skip(1) {
        let fs = factors_in(l, cand, x);
        let target = l.interval_ids(l.bottom(), x);
        let parts: Vec<Vec<FlatId>> = fs.iter().map(|&g| l.interval_ids(l.bottom(), g)).collect();
        let product: usize = parts.iter().map(|p| p.len()).product();
        if product != target.len() {
            return Err(BuildingViolation {
                at: x,
                reason: format!("{} factors give a product of size {product}, interval has {}", fs.len(), target.len()),
            });
        }
        let mut hit = vec![false; l.len()];
        let mut idx = vec![0usize; parts.len()];
        loop {
            let y = l.join_all(idx.iter().zip(&parts).map(|(&i, p)| p[i]));
            if hit[y.idx()] {
                return Err(BuildingViolation { at: x, reason: format!("join map is not injective at {}", l.flat(y)) });
            }
            hit[y.idx()] = true;
            for (j, (&i, p)) in idx.iter().zip(&parts).enumerate() {
                if l.meet(y, fs[j]) != p[i] {
                    return Err(BuildingViolation { at: x, reason: format!("inverse of the join map is not monotone at {}", l.flat(y)) });
                }
            }
            let mut k = 0;
            while k < idx.len() {
                idx[k] += 1;
                if idx[k] < parts[k].len() {
                    break;
                }
                idx[k] = 0;
                k += 1;
            }
            if k == idx.len() {
                break;
            }
        }
    }
    Ok(())
}

pub fn is_building_set(l: &GeometricLattice, cand: &BuildingSet) -> bool {
    check_building_set(l, cand).is_ok()
}

/// `G` is irreducible iff no flat strictly between the bottom and `G`
/// separates the atoms below `G`.
pub fn is_irreducible(l: &GeometricLattice, g: FlatId) -> bool {
    if g == l.bottom() {
        return false;
    }
    let atoms = l.flat(g);
    l.interval_ids(l.bottom(), g).into_iter().all(|x| {
        if x == l.bottom() || x == g {
            return true;
        }
        let rest = l.closure_of(atoms.difference(l.flat(x)));
        l.rank(x) + l.rank(rest) != l.rank(g)
    })
}

pub fn minimal_building_set(l: &GeometricLattice) -> BuildingSet {
    BuildingSet::from_members(l, l.ids().filter(|&x| is_irreducible(l, x)).collect())
}

pub fn maximal_building_set(l: &GeometricLattice) -> BuildingSet {
    BuildingSet::from_members(l, l.ids().skip(1).collect())
}

/// Building set given by explicit atom sets.
pub fn building_set_from_flats(l: &GeometricLattice, flats: &[AtomSet]) -> Result<BuildingSet> {
    let mut ids = Vec::new();
    for &f in flats {
        ids.push(l.id_of(f).ok_or_else(|| Error::InvalidBuildingSet(format!("{f} is not a flat")))?);
    }
    Ok(BuildingSet::from_members(l, ids))
}

/// A maximal modular chain whose non-bottom members lie in the building set
/// and whose meets with building-set members stay in it.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SupersolvableBuiltWitness {
    pub chain: ModularChainWitness,
}

impl SupersolvableBuiltWitness {
    pub fn validate(&self, bl: &BuiltLattice) -> Result<()> {
        let l = bl.lattice();
        self.chain.validate(l)?;
        for &m in &self.chain.chain[1..] {
            if !bl.in_building(m) {
                return Err(Error::Precondition(format!("chain member {} is not in the building set", l.flat(m))));
            }
            for &g in bl.building().members() {
                let x = l.meet(m, g);
                if x != l.bottom() && !bl.in_building(x) {
                    return Err(Error::Precondition(format!("{} ^ {} = {} is not in the building set", l.flat(m), l.flat(g), l.flat(x))));
                }
            }
        }
        Ok(())
    }
}

/// Result of the flagness test.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FlagReport {
    pub flag: bool,
    /// First minimal non-nested set of size at least 3.
    pub witness: Option<Vec<FlatId>>,
}

/// A lattice together with a building set.
#[derive(Debug, Clone)]
pub struct BuiltLattice {
    lattice: GeometricLattice,
    building: BuildingSet,
    witness: Option<SupersolvableBuiltWitness>,
    chain: Vec<FlatId>,
}

/// An interval `[a, b]` with its induced building set, and the way back.
#[derive(Debug, Clone)]
pub struct InducedBuiltLattice {
    pub built: BuiltLattice,
    /// Local id to parent id.
    pub back: Vec<FlatId>,
    pub lo: FlatId,
    pub hi: FlatId,
}

impl InducedBuiltLattice {
    pub fn to_parent(&self, x: FlatId) -> FlatId {
        self.back[x.idx()]
    }
    pub fn to_local(&self, x: FlatId) -> Option<FlatId> {
        self.back.iter().position(|&y| y == x).map(|i| FlatId(i as u32))
    }
}

impl BuiltLattice {
    pub fn new(lattice: GeometricLattice, building: BuildingSet) -> Result<Self> {
        if let Err(v) = check_building_set(&lattice, &building) {
            return Err(Error::InvalidBuildingSet(format!("fails at {}: {}", lattice.flat(v.at), v.reason)));
        }
        let chain = prefix_chain(&lattice);
        Ok(BuiltLattice { lattice, building, witness: None, chain })
    }

    /// Builds and attaches the first supersolvable witness, if one exists.
    pub fn with_search(lattice: GeometricLattice, building: BuildingSet) -> Result<Self> {
        let mut bl = Self::new(lattice, building)?;
        if let Some(w) = bl.find_supersolvable_witness() {
            bl.set_witness(w)?;
        }
        Ok(bl)
    }

    pub fn lattice(&self) -> &GeometricLattice {
        &self.lattice
    }
    pub fn building(&self) -> &BuildingSet {
        &self.building
    }
    pub fn witness(&self) -> Option<&SupersolvableBuiltWitness> {
        self.witness.as_ref()
    }
    pub fn is_supersolvable(&self) -> bool {
        self.witness.is_some()
    }
    #[inline]
    pub fn in_building(&self, x: FlatId) -> bool {
        self.building.contains(x)
    }

    pub fn set_witness(&mut self, w: SupersolvableBuiltWitness) -> Result<()> {
        w.validate(self)?;
        self.chain = w.chain.chain.clone();
        self.witness = Some(w);
        Ok(())
    }

    /// The maximal chain driving the generator order: the witness chain, or
    /// the chain of closures of atom prefixes when there is none.
    pub fn order_chain(&self) -> &[FlatId] {
        &self.chain
    }

    /// Lexicographically first supersolvable witness, by depth-first search.
    pub fn find_supersolvable_witness(&self) -> Option<SupersolvableBuiltWitness> {
        let l = &self.lattice;
        let ok = |x: FlatId| {
            x == l.bottom()
                || (self.in_building(x)
                    && self.building.members().iter().all(|&g| {
                        let m = l.meet(x, g);
                        m == l.bottom() || self.in_building(m)
                    })
                    && l.is_modular_element(x))
        };
        l.first_chain(ok).map(|chain| SupersolvableBuiltWitness { chain: ModularChainWitness { chain } })
    }

    pub fn factors(&self, x: FlatId) -> Vec<FlatId> {
        factors_in(&self.lattice, &self.building, x)
    }

    pub fn maximal_elements(&self) -> Vec<FlatId> {
        self.factors(self.lattice.top())
    }

    pub fn is_irreducible(&self) -> bool {
        self.in_building(self.lattice.top())
    }

    /// Whether `x` and `y` are comparable.
    #[inline]
    fn comparable(&self, x: FlatId, y: FlatId) -> bool {
        self.lattice.leq(x, y) || self.lattice.leq(y, x)
    }

    /// No antichain of two or more members joins into the building set.
    pub fn is_nested(&self, s: &[FlatId]) -> bool {
        if s.iter().any(|&x| !self.in_building(x)) {
            return false;
        }
        let mut acc: Vec<FlatId> = Vec::new();
        for &g in s {
            if acc.contains(&g) {
                continue;
            }
            if !self.compatible(&acc, g) {
                return false;
            }
            acc.push(g);
        }
        true
    }

    /// Whether `s ∪ {g}` is nested, given that `s` is.
    fn compatible(&self, s: &[FlatId], g: FlatId) -> bool {
        let l = &self.lattice;
        let inc: Vec<FlatId> = s.iter().copied().filter(|&x| !self.comparable(x, g)).collect();
        if inc.len() > 63 {
            return false;
        }
        // antichains among `inc`, each joined with g
        fn go(bl: &BuiltLattice, inc: &[FlatId], start: usize, chosen: &mut Vec<FlatId>, acc: FlatId) -> bool {
            for i in start..inc.len() {
                let x = inc[i];
                if chosen.iter().any(|&y| bl.comparable(x, y)) {
                    continue;
                }
                let j = bl.lattice.join(acc, x);
                if bl.in_building(j) {
                    return false;
                }
                chosen.push(x);
                let ok = go(bl, inc, i + 1, chosen, j);
                chosen.pop();
                if !ok {
                    return false;
                }
            }
            true
        }
        let _ = l;
        go(self, &inc, 0, &mut Vec::new(), g)
    }

    /// All nested sets in depth-first order over the member list. With
    /// `irreducible_only`, only those containing every maximal element.
    pub fn nested_sets(&self, irreducible_only: bool) -> Vec<Vec<FlatId>> {
        let mut out = Vec::new();
        self.for_each_nested(|s| out.push(s.to_vec()));
        if irreducible_only {
            let maxes = self.maximal_elements();
            out.retain(|s| maxes.iter().all(|m| s.contains(m)));
        }
        out
    }

    pub fn for_each_nested<F: FnMut(&[FlatId])>(&self, mut f: F) {
        fn go<F: FnMut(&[FlatId])>(bl: &BuiltLattice, start: usize, cur: &mut Vec<FlatId>, f: &mut F) {
            f(cur);
            let members = bl.building.members();
            for i in start..members.len() {
                let g = members[i];
                if bl.compatible(cur, g) {
                    cur.push(g);
                    go(bl, i + 1, cur, f);
                    cur.pop();
                }
            }
        }
        go(self, 0, &mut Vec::new(), &mut f);
    }

    /// Non-nested sets all of whose proper subsets are nested, sorted by
    /// size and then by member ids.
    pub fn minimal_non_nested_sets(&self) -> Vec<Vec<FlatId>> {
        let members = self.building.members();
        let mut out = Vec::new();
        self.for_each_nested(|s| {
            let last = s.last().map(|&x| self.building.position(x).unwrap() + 1).unwrap_or(0);
            for &g in &members[last..] {
                if s.iter().any(|&x| self.comparable(x, g)) {
                    continue;
                }
                let mut x = s.to_vec();
                x.push(g);
                if x.len() < 2 || !self.in_building(self.lattice.join_all(x.iter().copied())) {
                    continue;
                }
                if (0..x.len() - 1).all(|i| {
                    let mut y = x.clone();
                    y.remove(i);
                    self.is_nested(&y)
                }) {
                    out.push(x);
                }
            }
        });
        out.sort_by(|a, b| a.len().cmp(&b.len()).then_with(|| a.cmp(b)));
        out
    }

    pub fn flagness(&self) -> FlagReport {
        let witness = self.minimal_non_nested_sets().into_iter().find(|x| x.len() >= 3);
        FlagReport { flag: witness.is_none(), witness }
    }

    pub fn is_flag(&self) -> bool {
        self.flagness().flag
    }

    /// The interval `[a, b]` with building set `(a v G) ∩ [a, b]` minus `a`.
    /// A witness is induced through the order chain when present.
    pub fn induced(&self, a: FlatId, b: FlatId) -> Result<InducedBuiltLattice> {
        let l = &self.lattice;
        if !l.lt(a, b) {
            return Err(Error::Precondition(format!("{} is not strictly below {}", l.flat(a), l.flat(b))));
        }
        let (sub, back) = l.interval(a, b)?;
        let mut local = vec![None; l.len()];
        for (i, &p) in back.iter().enumerate() {
            local[p.idx()] = Some(FlatId(i as u32));
        }
        let members: Vec<FlatId> = self
            .building
            .members()
            .iter()
            .map(|&g| l.join(a, g))
            .filter(|&x| x != a && l.leq(x, b))
            .map(|x| local[x.idx()].unwrap())
            .collect();
        let building = BuildingSet::from_members(&sub, members);
        let mut built = BuiltLattice::new(sub, building)?;
        let induced: Vec<FlatId> = l.induced_chain(&self.chain, a, b)?.into_iter().map(|x| local[x.idx()].unwrap()).collect();
        if self.witness.is_some() {
            built.set_witness(SupersolvableBuiltWitness { chain: ModularChainWitness { chain: induced } })?;
        } else if validate_maximal_chain(&built.lattice, &induced).is_ok() {
            built.chain = induced;
        }
        Ok(InducedBuiltLattice { built, back, lo: a, hi: b })
    }

    /// Maximal chain of `[base, g]` along which initial segments are read,
    /// bottom to top. With a witness this is the induced modular chain;
    /// otherwise it is the chain of closures of `base` plus atom prefixes.
    pub fn delta_chain(&self, base: FlatId, g: FlatId) -> Result<Vec<FlatId>> {
        let l = &self.lattice;
        if self.witness.is_some() {
            return l.induced_chain(&self.chain, base, g);
        }
        if !l.leq(base, g) {
            return Err(Error::Precondition(format!("{} is not below {}", l.flat(base), l.flat(g))));
        }
        let mut chain = vec![base];
        let mut s = l.flat(base);
        for a in l.flat(g).difference(l.flat(base)).iter() {
            s = s.with(a);
            let x = l.closure_of(s);
            if *chain.last().unwrap() != x {
                chain.push(x);
            }
            s = l.flat(x);
        }
        Ok(chain)
    }

    /// `δ^k(g)` relative to `base`: the element `k` rank steps below `g` on
    /// the induced order chain.
    pub fn delta(&self, base: FlatId, g: FlatId, k: usize) -> Result<FlatId> {
        let l = &self.lattice;
        let chain = self.delta_chain(base, g)?;
        let span = l.rank(g) - l.rank(base);
        if k > span {
            return Err(Error::Precondition(format!("k = {k} exceeds the rank {span} of the interval")));
        }
        let want = l.rank(g) - k;
        chain
            .into_iter()
            .find(|&x| l.rank(x) == want)
            .ok_or_else(|| Error::Precondition(format!("induced chain below {} skips rank {want}", l.flat(g))))
    }

    /// Initial segment with the documented preconditions checked.
    pub fn initial_segment(&self, base: FlatId, g: FlatId, k: usize) -> Result<FlatId> {
        let l = &self.lattice;
        if base != l.bottom() && !self.in_building(base) {
            return Err(Error::Precondition(format!("base {} is not in the building set", l.flat(base))));
        }
        if !l.lt(base, g) && !(k == 0 && base == g) {
            return Err(Error::Precondition(format!("{} is not above {}", l.flat(g), l.flat(base))));
        }
        if base != g && !self.building.members().iter().any(|&h| l.join(base, h) == g) {
            return Err(Error::Precondition(format!("{} is not in the induced building set", l.flat(g))));
        }
        self.delta(base, g, k)
    }
}

/// `closure({0..i})` for increasing `i`, duplicates removed.
pub fn prefix_chain(l: &GeometricLattice) -> Vec<FlatId> {
    let mut chain = vec![l.bottom()];
    let mut s = AtomSet::EMPTY;
    for a in 0..l.n_atoms() {
        s = s.with(a);
        let x = l.closure_of(s);
        if *chain.last().unwrap() != x {
            chain.push(x);
        }
        s = l.flat(x);
    }
    chain
}
