//! JSON and text formats.

use crate::atomset::AtomSet;
use crate::building::{building_set_from_flats, BuildingSet, BuiltLattice};
use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::groebner::PairCertificate;
use crate::lattice::{FlatId, GeometricLattice};
use crate::matroid::Matroid;
use crate::poly::{MonomialOrder, Polynomial};
use serde::{Deserialize, Serialize};

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct MatroidJson {
    pub n_atoms: usize,
    pub circuits: Vec<Vec<usize>>,
}

/// Parse errors of any JSON input.
fn parse_err(e: serde_json::Error) -> Error {
    Error::Parse(e.to_string())
}

fn atoms_of(n: usize, xs: &[usize]) -> Result<AtomSet> {
    if let Some(&a) = xs.iter().find(|&&a| a >= n) {
        return Err(Error::Parse(format!("atom {a} out of range 0..{n}")));
    }
    Ok(AtomSet::from_indices(xs.iter().copied()))
}

pub fn parse_matroid(text: &str) -> Result<Matroid> {
    let j: MatroidJson = serde_json::from_str(text).map_err(parse_err)?;
    if j.n_atoms > crate::ATOM_CAP {
        return Err(Error::CapExceeded { what: "atoms", got: j.n_atoms, cap: crate::ATOM_CAP });
    }
    let circuits = j.circuits.iter().map(|c| atoms_of(j.n_atoms, c)).collect::<Result<_>>()?;
    Matroid::from_circuits(j.n_atoms, circuits)
}

pub fn matroid_to_json(m: &Matroid) -> MatroidJson {
    let mut circuits: Vec<AtomSet> = m.circuits().to_vec();
    circuits.sort_by_key(|c| c.canonical_key());
    MatroidJson { n_atoms: m.n_atoms(), circuits: circuits.iter().map(|c| c.to_vec()).collect() }
}

pub fn parse_graph(text: &str) -> Result<Graph> {
    let g: Graph = serde_json::from_str(text).map_err(parse_err)?;
    g.validate()?;
    Ok(g)
}

/// Flats as sorted atom arrays.
pub fn flats_json(l: &GeometricLattice, xs: &[FlatId]) -> Vec<Vec<usize>> {
    xs.iter().map(|&x| l.flat(x).to_vec()).collect()
}

pub fn parse_building(l: &GeometricLattice, text: &str) -> Result<BuildingSet> {
    let raw: Vec<Vec<usize>> = serde_json::from_str(text).map_err(parse_err)?;
    let flats = raw.iter().map(|f| atoms_of(l.n_atoms(), f)).collect::<Result<Vec<_>>>()?;
    building_set_from_flats(l, &flats)
}

pub fn building_json(bl: &BuiltLattice) -> Vec<Vec<usize>> {
    flats_json(bl.lattice(), bl.building().members())
}

pub fn witness_json(bl: &BuiltLattice) -> Option<Vec<Vec<usize>>> {
    bl.witness().map(|w| flats_json(bl.lattice(), &w.chain.chain))
}

/// `h{[0,1]}` for the generator of that flat.
pub fn generator_name(bl: &BuiltLattice, v: usize) -> String {
    format!("h{{{}}}", bl.lattice().flat(bl.building().members()[v]))
}

pub fn polynomial_text(bl: &BuiltLattice, p: &Polynomial, ord: &MonomialOrder) -> String {
    p.to_text(ord, |v| generator_name(bl, v))
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CertificateJson {
    pub pair: [usize; 2],
    pub spoly_normal_form: String,
}

pub fn certificate_json(bl: &BuiltLattice, c: &PairCertificate, ord: &MonomialOrder) -> CertificateJson {
    CertificateJson { pair: c.pair, spoly_normal_form: polynomial_text(bl, &c.spoly_normal_form, ord) }
}
