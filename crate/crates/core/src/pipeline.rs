//! Instances, the certification report, seeded property checks and the
//! counterexample replays.

use crate::atomset::AtomSet;
use crate::building::{maximal_building_set, minimal_building_set, BuildingSet, BuiltLattice};
use crate::error::{Error, Result};
use crate::fy::{
    certify_quadratic, classical_normal_monomial_counts, h_to_x, hilbert_h, hilbert_quadratic, hilbert_x, presentation_h,
    presentation_x, reverse_lattice_order, x_to_h, GeneratorOrder,
};
use crate::graph::{built_lattice_of_graph, graphical_building_set, Graph};
use crate::groebner::{buchberger, hilbert_from_gb};
use crate::io::{building_json, certificate_json, flats_json, witness_json, CertificateJson};
use crate::lattice::{boolean_lattice, FlatId, GeometricLattice};
use crate::matroid::Matroid;
use crate::normal::NormalCtx;
use crate::poly::{Monomial, MonomialOrder, Polynomial, Q};
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;
use std::collections::{BTreeMap, BTreeSet};
use std::time::Instant;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Family {
    LosevManin { m: usize, n: usize },
    Cycle(usize),
    Complete(usize),
    Path(usize),
    Star(usize),
    Boolean(usize),
    Partition(usize),
}

impl Family {
    pub fn id(&self) -> String {
        match *self {
            Family::LosevManin { m, n } => format!("lm-{m}-{n}"),
            Family::Cycle(n) => format!("cycle-{n}"),
            Family::Complete(n) => format!("complete-{n}"),
            Family::Path(n) => format!("path-{n}"),
            Family::Star(n) => format!("star-{n}"),
            Family::Boolean(n) => format!("boolean-{n}"),
            Family::Partition(n) => format!("partition-{n}"),
        }
    }

    pub fn source(&self) -> Result<Source> {
        Ok(match *self {
            Family::LosevManin { m, n } => Source::Graph(Graph::losev_manin(m, n)?),
            Family::Cycle(n) => Source::Graph(Graph::cycle(n)?),
            Family::Complete(n) | Family::Partition(n) => Source::Graph(Graph::complete(n)?),
            Family::Path(n) => Source::Graph(Graph::path(n)?),
            Family::Star(n) => Source::Graph(Graph::star(n)?),
            Family::Boolean(n) => Source::Lattice(boolean_lattice(n)?),
        })
    }
}

#[derive(Debug, Clone)]
pub enum Source {
    Matroid(Matroid),
    Graph(Graph),
    Lattice(GeometricLattice),
}

impl Source {
    pub fn n_atoms(&self) -> usize {
        match self {
            Source::Matroid(m) => m.n_atoms(),
            Source::Graph(g) => g.n_edges(),
            Source::Lattice(l) => l.n_atoms(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum BuildingChoice {
    Min,
    Max,
    Graphical,
    Flats(Vec<AtomSet>),
}

#[derive(Debug, Clone)]
pub struct InstanceSpec {
    pub id: String,
    pub source: Source,
    pub building: BuildingChoice,
}

impl InstanceSpec {
    pub fn family(f: Family, building: BuildingChoice) -> Result<Self> {
        Ok(InstanceSpec { id: f.id(), source: f.source()?, building })
    }

    /// The built lattice, with a supersolvable witness when one exists.
    pub fn resolve(&self, atom_cap: usize) -> Result<BuiltLattice> {
        let n = self.source.n_atoms();
        if n > atom_cap {
            return Err(Error::CapExceeded { what: "atoms", got: n, cap: atom_cap });
        }
        if let (Source::Graph(g), BuildingChoice::Graphical) = (&self.source, &self.building) {
            let bl = built_lattice_of_graph(g)?;
            return Ok(match bl.find_supersolvable_witness() {
                Some(w) if !bl.is_supersolvable() => {
                    let mut bl = bl;
                    bl.set_witness(w)?;
                    bl
                }
                _ => bl,
            });
        }
        let l = match &self.source {
            Source::Matroid(m) => GeometricLattice::from_matroid(m)?,
            Source::Graph(g) => GeometricLattice::from_matroid(&g.matroid()?)?,
            Source::Lattice(l) => l.clone(),
        };
        let b = match &self.building {
            BuildingChoice::Min => minimal_building_set(&l),
            BuildingChoice::Max => maximal_building_set(&l),
            BuildingChoice::Graphical => match &self.source {
                Source::Graph(g) => graphical_building_set(g, &l),
                _ => return Err(Error::Precondition("a graphical building set needs a graph".into())),
            },
            BuildingChoice::Flats(fs) => crate::building::building_set_from_flats(&l, fs)?,
        };
        BuiltLattice::with_search(l, b)
    }
}

/// Atom cap from `FYFORGE_ATOM_CAP`, which may only lower the built-in cap.
pub fn atom_cap_from_env() -> Result<usize> {
    match std::env::var("FYFORGE_ATOM_CAP") {
        Err(_) => Ok(crate::ATOM_CAP),
        Ok(v) => {
            let c: usize = v.trim().parse().map_err(|_| Error::Parse(format!("FYFORGE_ATOM_CAP = {v:?}")))?;
            Ok(c.min(crate::ATOM_CAP))
        }
    }
}

#[derive(Debug, Clone, Default)]
pub struct CertifyOptions {
    /// Truncate reported graded counts after this weight.
    pub max_weight: Option<usize>,
    /// Also compare against the wonderful presentation.
    pub presentation_check: bool,
    pub timings: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct QuadraticVerdict {
    pub is_groebner: bool,
    pub basis_size: usize,
    pub certificate: Option<CertificateJson>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Report {
    pub id: String,
    pub n_atoms: usize,
    pub n_flats: usize,
    pub rank: usize,
    pub n_generators: usize,
    pub building: Vec<Vec<usize>>,
    pub supersolvable: bool,
    pub witness: Option<Vec<Vec<usize>>>,
    pub flag: bool,
    pub flag_witness: Option<Vec<Vec<usize>>>,
    pub quadratic: bool,
    pub quadratic_gb: QuadraticVerdict,
    pub hilbert: Vec<usize>,
    pub hilbert_quadratic: Vec<usize>,
    pub hilbert_classical: Vec<usize>,
    pub hilbert_wonderful: Option<Vec<usize>>,
    pub anm: Option<Vec<usize>>,
    pub onm: Option<Vec<usize>>,
    pub bijection: Option<bool>,
    pub mismatches: Vec<String>,
    pub inconsistencies: Vec<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub timings_ms: Option<BTreeMap<String, u128>>,
}

impl Report {
    pub fn coherent(&self) -> bool {
        self.inconsistencies.is_empty()
    }
}

fn cut(mut v: Vec<usize>, w: Option<usize>) -> Vec<usize> {
    if let Some(w) = w {
        v.truncate(w + 1);
    }
    v
}

/// Runs every computation on one instance and cross-checks the results.
pub fn certify(id: &str, bl: &BuiltLattice, opts: &CertifyOptions) -> Result<Report> {
    let l = bl.lattice();
    let mut times = BTreeMap::new();
    let mut clock = Instant::now();
    let mut tick = |name: &str, clock: &mut Instant| {
        times.insert(name.to_string(), clock.elapsed().as_millis());
        *clock = Instant::now();
    };
    let order = if bl.is_supersolvable() { GeneratorOrder::new(bl)? } else { GeneratorOrder::from_chain(bl) };
    let ord = order.monomial_order(bl);
    let flag = bl.flagness();
    tick("flagness", &mut clock);
    let qc = certify_quadratic(bl, &order);
    tick("quadratic_gb", &mut clock);
    let hilbert = hilbert_x(bl);
    tick("hilbert", &mut clock);
    let hq = hilbert_quadratic(bl, &order);
    tick("hilbert_quadratic", &mut clock);
    let hc = classical_normal_monomial_counts(bl);
    let hw = if opts.presentation_check { Some(hilbert_h(bl, &order)) } else { None };
    tick("presentations", &mut clock);

    let mut inconsistencies = Vec::new();
    let (mut anm, mut onm, mut bij, mut mismatches) = (None, None, None, Vec::new());
    if bl.is_supersolvable() && bl.is_irreducible() {
        let ctx = NormalCtx::new(bl.clone())?;
        let rep = ctx.bijection_report()?;
        if rep.hilbert != hilbert {
            inconsistencies.push("bijection oracle disagrees with the Hilbert function".into());
        }
        bij = Some(rep.coherent());
        anm = Some(cut(rep.anm, opts.max_weight));
        onm = Some(cut(rep.onm, opts.max_weight));
        mismatches = rep.mismatches;
    }
    tick("bijection", &mut clock);

    if hc != hilbert {
        inconsistencies.push(format!("classical normal monomials {hc:?} disagree with the Hilbert function {hilbert:?}"));
    }
    if let Some(hw) = &hw {
        if *hw != hilbert {
            inconsistencies.push(format!("wonderful presentation gives {hw:?}, affine gives {hilbert:?}"));
        }
    }
    if bl.is_supersolvable() {
        if !qc.is_groebner() {
            inconsistencies.push("weight-2 relations are not a Groebner basis on a supersolvable instance".into());
        }
        if hq != hilbert {
            inconsistencies.push("supersolvable instance is not quadratic".into());
        }
        if !flag.flag {
            inconsistencies.push("supersolvable instance is not flag".into());
        }
        if bij == Some(false) {
            inconsistencies.push("bijection check failed".into());
        }
    }
    if qc.is_groebner() && hq != hilbert {
        inconsistencies.push("quadratic basis certified but the ideal is not quadratic".into());
    }

    Ok(Report {
        id: id.to_string(),
        n_atoms: l.n_atoms(),
        n_flats: l.len(),
        rank: l.height(),
        n_generators: bl.building().len(),
        building: building_json(bl),
        supersolvable: bl.is_supersolvable(),
        witness: witness_json(bl),
        flag: flag.flag,
        flag_witness: flag.witness.as_ref().map(|w| flats_json(l, w)),
        quadratic: hq == hilbert,
        quadratic_gb: QuadraticVerdict {
            is_groebner: qc.is_groebner(),
            basis_size: qc.basis.len(),
            certificate: qc.outcome.as_ref().err().map(|c| certificate_json(bl, c, &ord)),
        },
        hilbert: cut(hilbert, opts.max_weight),
        hilbert_quadratic: cut(hq, opts.max_weight),
        hilbert_classical: cut(hc, opts.max_weight),
        hilbert_wonderful: hw.map(|h| cut(h, opts.max_weight)),
        anm,
        onm,
        bijection: bij,
        mismatches,
        inconsistencies,
        timings_ms: if opts.timings { Some(times) } else { None },
    })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct PropertyCheck {
    pub name: String,
    pub passed: bool,
}

fn random_poly(rng: &mut ChaCha8Rng, n_vars: usize, degree: usize) -> Polynomial {
    let mut p = Polynomial::zero();
    for _ in 0..rng.gen_range(1..=4) {
        let vars: Vec<usize> = (0..degree).map(|_| rng.gen_range(0..n_vars)).collect();
        p.add_term(Monomial::product(vars), Q::int(rng.gen_range(-5..=5)));
    }
    p
}

fn sorted_basis(polys: &[Polynomial]) -> Vec<Polynomial> {
    let mut v = polys.to_vec();
    v.sort();
    v
}

/// Seeded randomized checks: change of variables, basis uniqueness under
/// shuffled generators, Hilbert function under shuffled variable rankings,
/// and normal monomials under other atom tie-breaks.
pub fn property_checks(bl: &BuiltLattice, seed: u64) -> Result<Vec<PropertyCheck>> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let n = bl.building().len();
    let mut out = Vec::new();
    let mut push = |name: &str, passed: bool| out.push(PropertyCheck { name: name.to_string(), passed });

    let round = (0..20).all(|_| {
        let d = rng.gen_range(1..=3);
        let p = random_poly(&mut rng, n, d);
        x_to_h(bl, &h_to_x(bl, &p)) == p
    });
    push("change of variables round trip", round);

    let ord = reverse_lattice_order(bl);
    let cap = Some(bl.lattice().height() + 1);
    let mut gens = presentation_x(bl).relations;
    let reference = sorted_basis(&buchberger(&gens, &ord, cap).polys);
    let mut same = true;
    for _ in 0..3 {
        gens.shuffle(&mut rng);
        same &= sorted_basis(&buchberger(&gens, &ord, cap).polys) == reference;
    }
    push("reduced basis independent of generator order", same);

    let r = bl.lattice().height();
    let hx = hilbert_x(bl);
    let hrels = presentation_h(bl, None).relations;
    let mut stable = true;
    for _ in 0..2 {
        let mut ranking: Vec<usize> = (0..n).collect();
        ranking.shuffle(&mut rng);
        let o = MonomialOrder::deglex(ranking)?;
        stable &= crate::fy::trim(hilbert_from_gb(&buchberger(&hrels, &o, Some(r + 1)), &o, r)) == hx;
    }
    push("Hilbert function independent of variable ranking", stable);

    if bl.is_supersolvable() {
        let base = NormalCtx::new(bl.clone())?;
        let reference = anm_set(&base)?;
        let mut agree = true;
        for _ in 0..3 {
            let mut atoms: Vec<usize> = base.order().atom_order().to_vec();
            let entry = |a: usize| crate::fy::chain_entry(bl, a);
            let mut i = 0;
            while i < atoms.len() {
                let j = (i..atoms.len()).take_while(|&j| entry(atoms[j]) == entry(atoms[i])).last().unwrap() + 1;
                atoms[i..j].shuffle(&mut rng);
                i = j;
            }
            let o = GeneratorOrder::with_atom_order(bl, atoms)?;
            agree &= anm_set(&NormalCtx::with_order(bl.clone(), o)?)? == reference;
        }
        push("normal monomials independent of atom tie-breaks", agree);
    }
    Ok(out)
}

fn anm_set(ctx: &NormalCtx) -> Result<BTreeSet<Vec<FlatId>>> {
    let r = ctx.built().lattice().height();
    Ok(ctx
        .enumerate_anm(r)?
        .into_iter()
        .flatten()
        .map(|mut a| {
            a.sort();
            a
        })
        .collect())
}

/// `B_4` with the building set `{1},{2},{3},{4},{12},{23},{123},{234},{1234}`.
pub fn b4_example_building() -> Result<BuiltLattice> {
    let l = boolean_lattice(4)?;
    let b = BuildingSet::from_members(&l, flats(&l, &[&[0], &[1], &[2], &[3], &[0, 1], &[1, 2], &[0, 1, 2], &[1, 2, 3], &[0, 1, 2, 3]])?);
    BuiltLattice::with_search(l, b)
}

pub fn graph_id(g: &Graph) -> String {
    let e: Vec<String> = g.edges.iter().map(|[a, b]| format!("{a}{b}")).collect();
    format!("graph-{}", e.join("-"))
}

/// Supersolvable instances: the boolean
/// example, both extreme building sets of `Π_4`, `K_4`, `G_{2,2}`, `G_{1,3}`
/// and every connected chordal graph with at most `max_edges` edges.
pub fn supersolvable_suite(max_edges: usize) -> Result<Vec<(String, BuiltLattice)>> {
    let mut out = vec![("b4-example".to_string(), b4_example_building()?)];
    for (f, b) in [
        (Family::Partition(4), BuildingChoice::Max),
        (Family::Partition(4), BuildingChoice::Min),
        (Family::Complete(4), BuildingChoice::Graphical),
        (Family::LosevManin { m: 2, n: 2 }, BuildingChoice::Graphical),
        (Family::LosevManin { m: 1, n: 3 }, BuildingChoice::Graphical),
    ] {
        let spec = InstanceSpec::family(f, b.clone())?;
        let tag = match b {
            BuildingChoice::Min => "-min",
            BuildingChoice::Max => "-max",
            _ => "",
        };
        out.push((format!("{}{tag}", spec.id), spec.resolve(crate::ATOM_CAP)?));
    }
    for g in crate::graph::connected_chordal_graphs(max_edges) {
        out.push((graph_id(&g), built_lattice_of_graph(&g)?));
    }
    Ok(out)
}

/// A wider mix: the supersolvable suite plus cycles, boolean and partition
/// lattices under minimal and maximal building sets.
pub fn corpus(max_edges: usize) -> Result<Vec<(String, BuiltLattice)>> {
    let mut out = supersolvable_suite(max_edges)?;
    let mut push = |f: Family, b: BuildingChoice, tag: &str| -> Result<()> {
        let spec = InstanceSpec::family(f, b)?;
        out.push((format!("{}{tag}", spec.id), spec.resolve(crate::ATOM_CAP)?));
        Ok(())
    };
    for n in 4..=6 {
        push(Family::Cycle(n), BuildingChoice::Graphical, "")?;
    }
    push(Family::Cycle(4), BuildingChoice::Min, "-min")?;
    push(Family::Cycle(4), BuildingChoice::Max, "-max")?;
    push(Family::Cycle(5), BuildingChoice::Max, "-max")?;
    for n in 1..=4 {
        push(Family::Boolean(n), BuildingChoice::Min, "-min")?;
        push(Family::Boolean(n), BuildingChoice::Max, "-max")?;
    }
    push(Family::Partition(3), BuildingChoice::Min, "-min")?;
    push(Family::Partition(5), BuildingChoice::Min, "-min")?;
    Ok(out)
}

/// One replayed counterexample.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Replay {
    pub name: String,
    pub expected: bool,
    pub got: bool,
    pub detail: String,
}

impl Replay {
    pub fn reproduced(&self) -> bool {
        self.expected == self.got
    }
}

pub const REPLAYS: [&str; 4] = ["boolean-non-supersolvable", "five-cycle-pair", "six-cycle-triple", "four-cycle-non-flag"];

fn flats(l: &GeometricLattice, sets: &[&[usize]]) -> Result<Vec<FlatId>> {
    sets.iter()
        .map(|s| l.id_of(AtomSet::from_indices(s.iter().copied())).ok_or_else(|| Error::Precondition(format!("{s:?} is not a flat"))))
        .collect()
}

fn cycle_lattice(n: usize) -> Result<GeometricLattice> {
    GeometricLattice::from_matroid(&Graph::cycle(n)?.matroid()?)
}

/// The four negative examples. `triple_cycle` picks the cycle used for the
/// triple replay; only 6 reproduces the expected failure.
pub fn replay(name: &str, triple_cycle: usize) -> Result<Replay> {
    let r = |expected: bool, got: bool, detail: String| Replay { name: name.to_string(), expected, got, detail };
    match name {
        "boolean-non-supersolvable" => {
            let l = boolean_lattice(4)?;
            let b = BuildingSet::from_members(
                &l,
                flats(&l, &[&[0], &[1], &[2], &[3], &[0, 1], &[0, 1, 2], &[0, 1, 2, 3], &[1, 2, 3], &[2, 3]])?,
            );
            let bl = BuiltLattice::with_search(l, b)?;
            Ok(r(false, bl.is_supersolvable(), "B_4 building set with {3,4} in place of {2,3}".into()))
        }
        "five-cycle-pair" => {
            let l = cycle_lattice(5)?;
            let b = maximal_building_set(&l);
            let ids = flats(&l, &[&[0, 1, 2], &[3, 4]])?;
            let c = NormalCtx::unchecked(BuiltLattice::new(l, b)?)?;
            Ok(r(false, c.is_normal_pair(ids[0], ids[1])?, "({1,2,3},{4,5}) in the maximal building set of C_5".into()))
        }
        "six-cycle-triple" => {
            let l = cycle_lattice(triple_cycle)?;
            let b = maximal_building_set(&l);
            let rest: Vec<usize> = (4..triple_cycle).collect();
            let ids = flats(&l, &[&[0, 1], &[2, 3], &rest])?;
            let c = NormalCtx::unchecked(BuiltLattice::new(l, b)?)?;
            let got = c.lemma_main_check(ids[0], ids[1], ids[2])?;
            let third: Vec<String> = rest.iter().map(|a| (a + 1).to_string()).collect();
            let detail = format!("({{1,2}},{{3,4}},{{{}}}) in the maximal building set of C_{triple_cycle}", third.join(","));
            Ok(r(false, got, detail))
        }
        "four-cycle-non-flag" => {
            let l = cycle_lattice(4)?;
            let b = BuildingSet::from_members(&l, flats(&l, &[&[0], &[1], &[2], &[3], &[0, 1], &[0, 1, 2, 3]])?);
            let bl = BuiltLattice::new(l, b)?;
            let order = GeneratorOrder::from_chain(&bl);
            let quadratic = hilbert_x(&bl) == hilbert_quadratic(&bl, &order);
            let flag = bl.is_flag();
            Ok(r(true, quadratic && !flag, format!("quadratic = {quadratic}, flag = {flag}")))
        }
        _ => Err(Error::Parse(format!("unknown replay {name:?}"))),
    }
}
