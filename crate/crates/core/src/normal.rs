//! Normal monomials of the wonderful presentation, operadic normal
//! monomials, and the maps between them.
//!
//! Algebraic monomials are lists of building-set members sorted by ⊴.
//! Operadic monomials are decorated nested sets, compared through their
//! realization as plain nested sets.

use crate::building::BuiltLattice;
use crate::error::{Error, Result};
use crate::fy::{hilbert_x, quadratic_basis, trim, var, GeneratorOrder};
use crate::groebner::normal_monomials;
use crate::lattice::FlatId;
use crate::poly::Monomial;
use serde::Serialize;
use std::cell::RefCell;
use std::collections::{BTreeSet, HashMap};
use std::rc::Rc;

/// A nested set `base` with heights `k_G`, plus its realization.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct DecoratedNestedSet {
    pub base: Vec<(FlatId, usize)>,
    pub realized: Vec<FlatId>,
    pub weight: usize,
}

/// The maximal chain with increasing labels, and its truncation.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ElChain {
    pub chain: Vec<FlatId>,
    /// `labels[i]` labels the step `chain[i] < chain[i+1]`.
    pub labels: Vec<usize>,
    pub truncated: Vec<FlatId>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct BijectionReport {
    pub anm: Vec<usize>,
    pub onm: Vec<usize>,
    pub hilbert: Vec<usize>,
    pub anm_matches_leading_terms: bool,
    pub phi_psi_identity: bool,
    pub psi_phi_identity: bool,
    pub weight_preserved: bool,
    pub mismatches: Vec<String>,
}

impl BijectionReport {
    pub fn coherent(&self) -> bool {
        self.anm == self.onm
            && self.onm == self.hilbert
            && self.anm_matches_leading_terms
            && self.phi_psi_identity
            && self.psi_phi_identity
            && self.weight_preserved
            && self.mismatches.is_empty()
    }
}

struct Sub {
    ctx: NormalCtx,
    back: Vec<FlatId>,
    local: Vec<Option<FlatId>>,
}

impl Sub {
    fn up(&self, x: FlatId) -> FlatId {
        self.back[x.idx()]
    }
    fn down(&self, x: FlatId) -> FlatId {
        self.local[x.idx()].expect("element outside the interval")
    }
}

/// A built lattice with its generator order and memoized intervals.
pub struct NormalCtx {
    bl: BuiltLattice,
    order: GeneratorOrder,
    chains: Vec<Option<Vec<FlatId>>>,
    subs: RefCell<HashMap<(FlatId, FlatId), Rc<Sub>>>,
}

impl NormalCtx {
    /// Requires a supersolvable witness.
    pub fn new(bl: BuiltLattice) -> Result<Self> {
        let order = GeneratorOrder::new(&bl)?;
        Self::with_order(bl, order)
    }

    /// Uses the unverified order of the order chain.
    pub fn unchecked(bl: BuiltLattice) -> Result<Self> {
        let order = GeneratorOrder::from_chain(&bl);
        Self::with_order(bl, order)
    }

    /// Uses a caller-supplied order, e.g. another tie-break of the atoms.
    pub fn with_order(bl: BuiltLattice, order: GeneratorOrder) -> Result<Self> {
        let l = bl.lattice();
        let mut chains = vec![None; l.len()];
        for &g in bl.building().members() {
            chains[g.idx()] = Some(bl.delta_chain(l.bottom(), g)?);
        }
        if chains[l.top().idx()].is_none() {
            chains[l.top().idx()] = Some(bl.delta_chain(l.bottom(), l.top())?);
        }
        Ok(NormalCtx { bl, order, chains, subs: RefCell::new(HashMap::new()) })
    }

    pub fn built(&self) -> &BuiltLattice {
        &self.bl
    }
    pub fn order(&self) -> &GeneratorOrder {
        &self.order
    }

    fn sub(&self, lo: FlatId, hi: FlatId) -> Result<Rc<Sub>> {
        if let Some(s) = self.subs.borrow().get(&(lo, hi)) {
            return Ok(s.clone());
        }
        let ind = self.bl.induced(lo, hi)?;
        let mut local = vec![None; self.bl.lattice().len()];
        for (i, &p) in ind.back.iter().enumerate() {
            local[p.idx()] = Some(FlatId(i as u32));
        }
        let ctx = if self.bl.is_supersolvable() { NormalCtx::new(ind.built)? } else { NormalCtx::unchecked(ind.built)? };
        let s = Rc::new(Sub { ctx, back: ind.back, local });
        self.subs.borrow_mut().insert((lo, hi), s.clone());
        Ok(s)
    }

    fn member(&self, g: FlatId) -> Result<()> {
        if self.bl.in_building(g) {
            Ok(())
        } else {
            Err(Error::Precondition(format!("{} is not in the building set", self.bl.lattice().flat(g))))
        }
    }

    /// `δ^k(g)` over the bottom; `g` a member or the top.
    pub fn delta0(&self, g: FlatId, k: usize) -> FlatId {
        let chain = self.chains[g.idx()].as_ref().expect("no chain stored");
        chain[chain.len() - 1 - k]
    }

    pub fn is_initial_segment(&self, g1: FlatId, g: FlatId) -> bool {
        let chain = self.chains[g.idx()].as_ref().expect("no chain stored");
        g1 != g && g1 != self.bl.lattice().bottom() && chain.contains(&g1)
    }

    pub fn sort(&self, xs: &mut [FlatId]) {
        xs.sort_by_key(|&g| self.order.position(g));
    }

    /// Weight-2 normality of `h_g1 h_g2`, `g1 ⊴ g2`.
    pub fn is_normal_pair(&self, g1: FlatId, g2: FlatId) -> Result<bool> {
        self.member(g1)?;
        self.member(g2)?;
        let l = self.bl.lattice();
        if self.order.lt(g2, g1) {
            return Err(Error::Order(format!("{} comes after {}", l.flat(g1), l.flat(g2))));
        }
        if g1 == g2 || l.rank(g1) == 1 || l.rank(g2) == 1 {
            return Ok(false);
        }
        let g = l.join(g1, g2);
        if !self.bl.in_building(g) {
            return Ok(true);
        }
        if g == g2 && self.is_initial_segment(g1, g2) {
            return Ok(true);
        }
        if !l.leq(g1, g2) && l.rank(g) >= l.rank(g2) + 2 {
            let kmax = (0..=l.rank(g)).rev().find(|&k| l.join(self.delta0(g, k), g2) == g).unwrap();
            return Ok(self.delta0(g, kmax) == g1);
        }
        Ok(false)
    }

    /// Meet test for pairs whose smaller element is an initial segment of
    /// the join.
    pub fn supernormal_criterion(&self, g1: FlatId, g2: FlatId) -> Result<bool> {
        self.member(g1)?;
        self.member(g2)?;
        let l = self.bl.lattice();
        let pre = |ok: bool, what: &str| if ok { Ok(()) } else { Err(Error::Precondition(what.to_string())) };
        pre(l.rank(g1) > 1 && l.rank(g2) > 1, "atoms carry no generator")?;
        pre(!l.leq(g1, g2) && !l.leq(g2, g1), "elements are comparable")?;
        pre(self.order.lt(g1, g2), "first element does not precede the second")?;
        let g = l.join(g1, g2);
        pre(self.bl.in_building(g), "join is not in the building set")?;
        pre(l.rank(g) >= l.rank(g2) + 2, "second element is covered by the join")?;
        pre(self.is_initial_segment(g1, g), "first element is not an initial segment of the join")?;
        Ok(l.leq(l.meet(g1, g2), self.delta0(g1, 1)))
    }

    /// Whether a ⊴-sorted monomial avoids every weight-2 leading term.
    pub fn is_normal(&self, alpha: &[FlatId]) -> Result<bool> {
        let l = self.bl.lattice();
        for (i, &a) in alpha.iter().enumerate() {
            self.member(a)?;
            if l.rank(a) == 1 {
                return Ok(false);
            }
            for &b in &alpha[i + 1..] {
                if !self.is_normal_pair(a, b)? {
                    return Ok(false);
                }
            }
        }
        Ok(true)
    }

    /// Algebraic normal monomials graded by weight, weights `0..=up_to`.
    pub fn enumerate_anm(&self, up_to: usize) -> Result<Vec<Vec<Vec<FlatId>>>> {
        let l = self.bl.lattice();
        let gens: Vec<FlatId> = self.order.sequence().iter().copied().filter(|&g| l.rank(g) > 1).collect();
        let n = gens.len();
        let mut ok = vec![false; n * n];
        for i in 0..n {
            for j in i..n {
                ok[i * n + j] = self.is_normal_pair(gens[i], gens[j])?;
            }
        }
        let mut out = vec![Vec::new(); up_to + 1];
        let mut cur: Vec<usize> = Vec::new();
        fn go(n: usize, ok: &[bool], gens: &[FlatId], start: usize, cur: &mut Vec<usize>, up_to: usize, out: &mut Vec<Vec<Vec<FlatId>>>) {
            out[cur.len()].push(cur.iter().map(|&i| gens[i]).collect());
            if cur.len() == up_to {
                return;
            }
            for j in start..n {
                if cur.iter().all(|&i| ok[i * n + j]) {
                    cur.push(j);
                    go(n, ok, gens, j, cur, up_to, out);
                    cur.pop();
                }
            }
        }
        go(n, &ok, &gens, 0, &mut cur, up_to, &mut out);
        Ok(out)
    }

    /// Lemma check for `g1 ⊴ g2 ⊴ g3`: if all three pairs are normal, the
    /// joins with `g3` form a normal pair above `g3`.
    pub fn lemma_main_check(&self, g1: FlatId, g2: FlatId, g3: FlatId) -> Result<bool> {
        let l = self.bl.lattice();
        if !(self.order.lt(g1, g2) && self.order.lt(g2, g3)) {
            return Err(Error::Order("triple is not strictly increasing".into()));
        }
        let cmp = |a: FlatId, b: FlatId| l.leq(a, b) || l.leq(b, a);
        if cmp(g1, g2) || cmp(g1, g3) || cmp(g2, g3) {
            return Ok(true);
        }
        if !(self.is_normal_pair(g1, g2)? && self.is_normal_pair(g1, g3)? && self.is_normal_pair(g2, g3)?) {
            return Ok(true);
        }
        let sub = self.sub(g3, l.top())?;
        let x1 = sub.down(l.join(g1, g3));
        let x2 = sub.down(l.join(g2, g3));
        if x1 == x2 {
            return Ok(false);
        }
        let (a, b) = if sub.ctx.order.lt(x1, x2) { (x1, x2) } else { (x2, x1) };
        sub.ctx.is_normal_pair(a, b)
    }

    /// First increasing triple of members failing the lemma check.
    pub fn lemma_sweep(&self) -> Result<Option<[FlatId; 3]>> {
        let seq = self.order.sequence();
        for i in 0..seq.len() {
            for j in i + 1..seq.len() {
                for k in j + 1..seq.len() {
                    if !self.lemma_main_check(seq[i], seq[j], seq[k])? {
                        return Ok(Some([seq[i], seq[j], seq[k]]));
                    }
                }
            }
        }
        Ok(None)
    }

    /// Greedy chain from `x` to `y` adding the ◁-least available atom.
    pub fn el_chain(&self, x: FlatId, y: FlatId, k: usize) -> Result<ElChain> {
        let l = self.bl.lattice();
        if !l.lt(x, y) && x != y {
            return Err(Error::Precondition(format!("{} is not below {}", l.flat(x), l.flat(y))));
        }
        let mut chain = vec![x];
        let mut labels: Vec<usize> = Vec::new();
        let mut cur = x;
        while cur != y {
            let a = self
                .order
                .atom_order()
                .iter()
                .copied()
                .find(|&a| l.flat(y).contains(a) && !l.flat(cur).contains(a))
                .unwrap();
            if let Some(&p) = labels.last() {
                if self.order.atom_position(p) > self.order.atom_position(a) {
                    return Err(Error::Order(format!("labels decrease above {}", l.flat(cur))));
                }
            }
            labels.push(a);
            cur = l.join(cur, l.atom(a));
            chain.push(cur);
        }
        if k > chain.len() - 1 {
            return Err(Error::Precondition(format!("height {k} exceeds the interval rank")));
        }
        let truncated = chain[..=k].to_vec();
        Ok(ElChain { chain, labels, truncated })
    }

    /// `prod h_Gi` split into the part below `g` and the part joined up.
    pub fn cosplit(&self, alpha: &[FlatId], g: FlatId) -> (Vec<FlatId>, Vec<FlatId>) {
        let l = self.bl.lattice();
        let low = alpha.iter().copied().filter(|&x| l.leq(x, g)).collect();
        let high = alpha.iter().copied().filter(|&x| !l.leq(x, g)).map(|x| l.join(g, x)).collect();
        (low, high)
    }

    /// `x` itself when in the building set, else its factor not below `prev`.
    fn lift(&self, x: FlatId, prev: FlatId) -> Result<FlatId> {
        if self.bl.in_building(x) {
            return Ok(x);
        }
        let l = self.bl.lattice();
        let f: Vec<FlatId> = self.bl.factors(x).into_iter().filter(|&f| !l.leq(f, prev)).collect();
        match f[..] {
            [one] => Ok(one),
            _ => Err(Error::Precondition(format!("{} has no unique factor outside {}", l.flat(x), l.flat(prev)))),
        }
    }

    fn tau(&self, base: &[(FlatId, usize)], g: FlatId) -> FlatId {
        let l = self.bl.lattice();
        l.join_all(base.iter().map(|&(x, _)| x).filter(|&x| l.lt(x, g)))
    }

    /// Nested set realized by a decoration: each `G` gains the `k_G` lowest
    /// proper elements of the chain from `τ(G)` to `G`.
    pub fn realize(&self, base: &[(FlatId, usize)]) -> Result<Vec<FlatId>> {
        let l = self.bl.lattice();
        let mut out: BTreeSet<FlatId> = base.iter().map(|&(g, _)| g).collect();
        for &(g, k) in base {
            let t = self.tau(base, g);
            let r = l.rank(g) - l.rank(t);
            for j in r - k..r {
                let x = self.bl.delta(t, g, j)?;
                let prev = self.bl.delta(t, g, j + 1)?;
                if !out.insert(self.lift(x, prev)?) {
                    return Err(Error::Precondition(format!("realization repeats {}", l.flat(x))));
                }
            }
        }
        Ok(out.into_iter().collect())
    }

    /// Operadic normal monomials: nested sets containing the maximal
    /// elements, with `k_G <= r_G - 2` below the top and `k <= r - 1` at it.
    pub fn enumerate_onm(&self) -> Result<Vec<DecoratedNestedSet>> {
        let l = self.bl.lattice();
        let maxes = self.bl.maximal_elements();
        let mut out = Vec::new();
        let mut seen = BTreeSet::new();
        for s in self.bl.nested_sets(false) {
            if !maxes.iter().all(|m| s.contains(m)) {
                continue;
            }
            let spans: Vec<usize> = s.iter().map(|&g| l.rank(g) - l.rank(self.tau(&s.iter().map(|&x| (x, 0)).collect::<Vec<_>>(), g))).collect();
            let bounds: Vec<Option<usize>> = s
                .iter()
                .zip(&spans)
                .map(|(g, &r)| if maxes.contains(g) { Some(r - 1) } else { r.checked_sub(2) })
                .collect();
            if bounds.iter().any(|b| b.is_none()) {
                continue;
            }
            let bounds: Vec<usize> = bounds.into_iter().map(|b| b.unwrap()).collect();
            let mut ks = vec![0usize; s.len()];
            loop {
                let base: Vec<(FlatId, usize)> = s.iter().copied().zip(ks.iter().copied()).collect();
                let realized = self.realize(&base)?;
                if !seen.insert(realized.clone()) {
                    return Err(Error::Precondition("two decorations realize the same nested set".into()));
                }
                let weight = spans.iter().zip(&ks).map(|(&r, &k)| r - 1 - k).sum();
                out.push(DecoratedNestedSet { base, realized, weight });
                let mut i = 0;
                while i < ks.len() && ks[i] == bounds[i] {
                    ks[i] = 0;
                    i += 1;
                }
                if i == ks.len() {
                    break;
                }
                ks[i] += 1;
            }
        }
        out.sort_by(|a, b| (a.weight, &a.realized).cmp(&(b.weight, &b.realized)));
        Ok(out)
    }

    fn require_top(&self) -> Result<()> {
        if self.bl.is_irreducible() {
            Ok(())
        } else {
            Err(Error::Precondition("the top is not in the building set".into()))
        }
    }

    /// `{top} ∪ lifts of δ^k(top)` for `k` in `1..r` with `k - 1` outside `ks`.
    fn chain_formula(&self, ks: &BTreeSet<usize>) -> Result<Vec<FlatId>> {
        let l = self.bl.lattice();
        let (top, r) = (l.top(), l.height());
        let mut out = BTreeSet::from([top]);
        for k in 1..r {
            if !ks.contains(&(k - 1)) && !out.insert(self.lift(self.delta0(top, k), self.delta0(top, k + 1))?) {
                return Err(Error::Precondition("chain lifts collide".into()));
            }
        }
        Ok(out.into_iter().collect())
    }

    /// From algebraic to operadic normal monomials; returns the realized set.
    pub fn psi(&self, alpha: &[FlatId]) -> Result<Vec<FlatId>> {
        self.require_top()?;
        let l = self.bl.lattice();
        let mut alpha = alpha.to_vec();
        self.sort(&mut alpha);
        if !self.is_normal(&alpha)? {
            return Err(Error::Precondition("monomial is not normal".into()));
        }
        let top = l.top();
        match alpha.last() {
            None => return self.chain_formula(&BTreeSet::new()),
            Some(&g) if g == top => {
                let mut ks = BTreeSet::new();
                for &x in &alpha {
                    let k = l.rank(top) - l.rank(x);
                    if self.delta0(top, k) != x {
                        return Err(Error::Precondition(format!("{} is not an initial segment of the top", l.flat(x))));
                    }
                    ks.insert(k);
                }
                return self.chain_formula(&ks);
            }
            _ => {}
        }
        let g = *alpha.last().unwrap();
        let (low, high) = self.cosplit(&alpha, g);
        let lo = self.sub(l.bottom(), g)?;
        let hi = self.sub(g, top)?;
        let a: Vec<FlatId> = low.iter().map(|&x| lo.down(x)).collect();
        let b: Vec<FlatId> = high.iter().map(|&x| hi.down(x)).collect();
        let mut out: BTreeSet<FlatId> = lo.ctx.psi(&a)?.into_iter().map(|x| lo.up(x)).collect();
        for x in hi.ctx.psi(&b)? {
            let x = hi.up(x);
            if !out.insert(self.lift(x, g)?) {
                return Err(Error::Precondition("composed nested sets overlap".into()));
            }
        }
        Ok(out.into_iter().collect())
    }

    /// `Supp_g` of one generator of the interval above `g`.
    fn supp(&self, x: FlatId, g: FlatId) -> Result<FlatId> {
        let l = self.bl.lattice();
        if self.bl.in_building(x) {
            let i = (0..=l.rank(x)).rev().find(|&i| l.join(self.delta0(x, i), g) == x).unwrap();
            Ok(self.delta0(x, i))
        } else {
            self.lift(x, g)
        }
    }

    /// From operadic to algebraic normal monomials; result sorted by ⊴.
    pub fn phi(&self, base: &[(FlatId, usize)]) -> Result<Vec<FlatId>> {
        self.require_top()?;
        let l = self.bl.lattice();
        let top = l.top();
        let g = base
            .iter()
            .map(|&(x, _)| x)
            .max_by_key(|&x| self.order.position(x))
            .ok_or_else(|| Error::Precondition("empty decoration".into()))?;
        if g == top {
            let realized = self.realize(base)?;
            let r = l.height();
            let mut ks = BTreeSet::new();
            for k in 0..r.saturating_sub(1) {
                if !realized.contains(&self.lift(self.delta0(top, k + 1), self.delta0(top, k + 2))?) {
                    ks.insert(k);
                }
            }
            if self.chain_formula(&ks)? != realized {
                return Err(Error::Precondition("top-maximal decoration is not a chain truncation".into()));
            }
            let mut out = Vec::new();
            for k in ks {
                let x = self.delta0(top, k);
                self.member(x)?;
                out.push(x);
            }
            self.sort(&mut out);
            return Ok(out);
        }
        let lo = self.sub(l.bottom(), g)?;
        let hi = self.sub(g, top)?;
        let low: Vec<(FlatId, usize)> = base.iter().filter(|&&(x, _)| l.leq(x, g)).map(|&(x, k)| (lo.down(x), k)).collect();
        let high: Vec<(FlatId, usize)> = base.iter().filter(|&&(x, _)| !l.leq(x, g)).map(|&(x, k)| (hi.down(l.join(g, x)), k)).collect();
        if high.iter().map(|&(x, _)| x).collect::<BTreeSet<_>>().len() != high.len() {
            return Err(Error::Precondition("joined decoration is not a set".into()));
        }
        let mut out = Vec::new();
        for x in hi.ctx.phi(&high)? {
            out.push(self.supp(hi.up(x), g)?);
        }
        out.extend(lo.ctx.phi(&low)?.into_iter().map(|x| lo.up(x)));
        self.sort(&mut out);
        Ok(out)
    }

    fn show(&self, xs: &[FlatId]) -> String {
        let l = self.bl.lattice();
        let parts: Vec<String> = xs.iter().map(|&x| l.flat(x).to_string()).collect();
        format!("{{{}}}", parts.join(" "))
    }

    fn monomial(&self, alpha: &[FlatId]) -> Monomial {
        Monomial::product(alpha.iter().map(|&g| var(&self.bl, g)))
    }

    /// Graded counts of both kinds of normal monomials against the Hilbert
    /// function of the full ideal, and both composites of the maps.
    pub fn bijection_report(&self) -> Result<BijectionReport> {
        let r = self.bl.lattice().height();
        let anm = self.enumerate_anm(r)?;
        let onm = self.enumerate_onm()?;
        let hilbert = hilbert_x(&self.bl);
        let mut mismatches = Vec::new();

        let ord = self.order.monomial_order(&self.bl);
        let qb = quadratic_basis(&self.bl, &self.order);
        let by_lt = normal_monomials(&qb.leading_monomials(&ord), &ord, r);
        let mut anm_matches_leading_terms = true;
        for (w, level) in anm.iter().enumerate() {
            let mine: BTreeSet<Monomial> = level.iter().map(|a| self.monomial(a)).collect();
            let theirs: BTreeSet<Monomial> = by_lt.get(w).map(|v| v.iter().cloned().collect()).unwrap_or_default();
            if mine != theirs {
                anm_matches_leading_terms = false;
                mismatches.push(format!("weight {w}: pairwise test and leading terms disagree"));
            }
        }

        let mut onm_counts = vec![0usize; r + 1];
        let mut by_realized = HashMap::new();
        for d in &onm {
            onm_counts[d.weight] += 1;
            by_realized.insert(d.realized.clone(), d);
        }

        let mut phi_psi_identity = true;
        let mut weight_preserved = true;
        for alpha in anm.iter().flatten() {
            let res = self.psi(alpha).and_then(|s| {
                let d = by_realized.get(&s).ok_or_else(|| Error::Precondition(format!("{} is not an operadic normal monomial", self.show(&s))))?;
                if d.weight != alpha.len() {
                    weight_preserved = false;
                }
                self.phi(&d.base)
            });
            match res {
                Ok(back) if back == *alpha => {}
                Ok(back) => {
                    phi_psi_identity = false;
                    mismatches.push(format!("phi(psi({})) = {}", self.show(alpha), self.show(&back)));
                }
                Err(e) => {
                    phi_psi_identity = false;
                    mismatches.push(format!("psi({}): {e}", self.show(alpha)));
                }
            }
        }
        let mut psi_phi_identity = true;
        for d in &onm {
            let res = self.phi(&d.base).and_then(|a| {
                if a.len() != d.weight {
                    weight_preserved = false;
                }
                self.psi(&a)
            });
            match res {
                Ok(s) if s == d.realized => {}
                Ok(s) => {
                    psi_phi_identity = false;
                    mismatches.push(format!("psi(phi({})) = {}", self.show(&d.realized), self.show(&s)));
                }
                Err(e) => {
                    psi_phi_identity = false;
                    mismatches.push(format!("phi({}): {e}", self.show(&d.realized)));
                }
            }
        }
        mismatches.truncate(20);
        Ok(BijectionReport {
            anm: trim(anm.iter().map(|v| v.len()).collect()),
            onm: trim(onm_counts),
            hilbert,
            anm_matches_leading_terms,
            phi_psi_identity,
            psi_phi_identity,
            weight_preserved,
            mismatches,
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::building::tests::b4_example;
    use crate::building::{maximal_building_set, minimal_building_set};
    use crate::graph::{built_lattice_of_graph, Graph};
    use crate::lattice::{boolean_lattice, partition_lattice, GeometricLattice};
    use crate::AtomSet;

    fn id(bl: &BuiltLattice, s: &[usize]) -> FlatId {
        bl.lattice().id_of(AtomSet::from_indices(s.iter().copied())).unwrap()
    }

    fn cycle_max(n: usize) -> NormalCtx {
        let l = GeometricLattice::from_matroid(&Graph::cycle(n).unwrap().matroid().unwrap()).unwrap();
        let b = maximal_building_set(&l);
        NormalCtx::unchecked(BuiltLattice::new(l, b).unwrap()).unwrap()
    }

    #[test]
    fn five_cycle_pair() {
        let c = cycle_max(5);
        let (g1, g2) = (id(c.built(), &[0, 1, 2]), id(c.built(), &[3, 4]));
        assert!(!c.is_normal_pair(g1, g2).unwrap());
        assert!(c.is_normal_pair(g2, g1).is_err());
        assert!(c.supernormal_criterion(g1, g2).unwrap());
    }

    #[test]
    fn six_cycle_triple() {
        let c = cycle_max(6);
        let b = c.built();
        let (g1, g2, g3) = (id(b, &[0, 1]), id(b, &[2, 3]), id(b, &[4, 5]));
        assert!(c.is_normal_pair(g1, g2).unwrap() && c.is_normal_pair(g1, g3).unwrap() && c.is_normal_pair(g2, g3).unwrap());
        assert!(!c.lemma_main_check(g1, g2, g3).unwrap());
    }

    #[test]
    fn b4_pairs_and_chains() {
        let c = NormalCtx::new(b4_example()).unwrap();
        let b = c.built();
        let l = b.lattice();
        let e = c.el_chain(l.bottom(), l.top(), 4).unwrap();
        let want: Vec<FlatId> = [&[][..], &[0], &[0, 1], &[0, 1, 2], &[0, 1, 2, 3]].iter().map(|s| id(b, s)).collect();
        assert_eq!(e.chain, want);
        assert_eq!(c.el_chain(l.bottom(), l.top(), 0).unwrap().truncated, vec![l.bottom()]);
        assert!(c.is_normal_pair(id(b, &[0, 1]), id(b, &[0, 1, 2])).unwrap());
        for &g1 in b.building().members() {
            for &g2 in b.building().members() {
                if c.order().lt(g1, g2) {
                    if let Ok(s) = c.supernormal_criterion(g1, g2) {
                        assert_eq!(s, c.is_normal_pair(g1, g2).unwrap());
                    }
                }
            }
        }
        let anm = c.enumerate_anm(4).unwrap();
        assert_eq!(anm[0].len(), 1);
        assert_eq!(anm[1].len(), b.building().len() - 4);
    }

    #[test]
    fn bijection_small() {
        let cases = vec![
            b4_example(),
            {
                let l = partition_lattice(4).unwrap();
                let g = minimal_building_set(&l);
                BuiltLattice::with_search(l, g).unwrap()
            },
            {
                let l = partition_lattice(4).unwrap();
                let g = maximal_building_set(&l);
                BuiltLattice::with_search(l, g).unwrap()
            },
            {
                let l = boolean_lattice(2).unwrap();
                let g = maximal_building_set(&l);
                BuiltLattice::with_search(l, g).unwrap()
            },
            built_lattice_of_graph(&Graph::complete(4).unwrap()).unwrap(),
        ];
        for bl in cases {
            let c = NormalCtx::new(bl).unwrap();
            let rep = c.bijection_report().unwrap();
            assert!(rep.coherent(), "{rep:?}");
        }
    }
}
