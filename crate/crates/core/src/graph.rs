//! Simple graphs, graphical matroids and chordality.
//!
//! Edge `i` of a [`Graph`] is atom `i` of its graphical matroid.

use crate::atomset::{AtomSet, ATOM_CAP};
use crate::building::{BuildingSet, BuiltLattice, SupersolvableBuiltWitness};
use crate::error::{Error, Result};
use crate::lattice::{FlatId, GeometricLattice, ModularChainWitness};
use crate::matroid::Matroid;
use serde::{Deserialize, Serialize};

/// Largest vertex count accepted by the constructors.
pub const VERTEX_CAP: usize = 64;

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Graph {
    pub vertices: usize,
    pub edges: Vec<[usize; 2]>,
}

/// Outcome of simplicial elimination.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Chordality {
    /// A perfect elimination order.
    Chordal(Vec<usize>),
    /// A chordless cycle of length at least four, as a vertex sequence.
    Obstruction(Vec<usize>),
}

impl Chordality {
    pub fn is_chordal(&self) -> bool {
        matches!(self, Chordality::Chordal(_))
    }
}

impl Graph {
    pub fn new(vertices: usize, edges: Vec<[usize; 2]>) -> Result<Self> {
        let g = Graph { vertices, edges };
        g.validate()?;
        Ok(g)
    }

    pub fn validate(&self) -> Result<()> {
        if self.vertices > VERTEX_CAP {
            return Err(Error::CapExceeded { what: "vertices", got: self.vertices, cap: VERTEX_CAP });
        }
        if self.edges.len() > ATOM_CAP {
            return Err(Error::CapExceeded { what: "edges", got: self.edges.len(), cap: ATOM_CAP });
        }
        let mut seen = std::collections::HashSet::new();
        for (i, &[u, v]) in self.edges.iter().enumerate() {
            if u >= self.vertices || v >= self.vertices {
                return Err(Error::InvalidGraph(format!("edge {i} = ({u},{v}) has a vertex out of range")));
            }
            if u == v {
                return Err(Error::InvalidGraph(format!("edge {i} is a loop at {u}")));
            }
            if !seen.insert((u.min(v), u.max(v))) {
                return Err(Error::InvalidGraph(format!("edge {i} = ({u},{v}) is repeated")));
            }
        }
        Ok(())
    }

    pub fn complete(n: usize) -> Result<Self> {
        let mut e = Vec::new();
        for i in 0..n {
            for j in i + 1..n {
                e.push([i, j]);
            }
        }
        Graph::new(n, e)
    }

    /// The cycle `0-1-..-(n-1)-0`; edge `i` joins `i` and `i+1`.
    pub fn cycle(n: usize) -> Result<Self> {
        if n < 3 {
            return Err(Error::InvalidGraph(format!("a cycle needs at least 3 vertices, got {n}")));
        }
        Graph::new(n, (0..n).map(|i| [i, (i + 1) % n]).collect())
    }

    /// The path on `n` vertices.
    pub fn path(n: usize) -> Result<Self> {
        Graph::new(n, (1..n).map(|i| [i - 1, i]).collect())
    }

    /// Vertex 0 joined to `n` leaves.
    pub fn star(n: usize) -> Result<Self> {
        Graph::new(n + 1, (1..=n).map(|i| [0, i]).collect())
    }

    /// `K_m` on the first `m` vertices, each joined to all of the last `n`.
    pub fn losev_manin(m: usize, n: usize) -> Result<Self> {
        if m == 0 {
            return Err(Error::InvalidGraph("losev-manin graph needs m >= 1".into()));
        }
        let mut e = Vec::new();
        for i in 0..m {
            for j in i + 1..m {
                e.push([i, j]);
            }
        }
        for i in 0..m {
            for j in m..m + n {
                e.push([i, j]);
            }
        }
        Graph::new(m + n, e)
    }

    pub fn n_edges(&self) -> usize {
        self.edges.len()
    }

    pub fn adjacency(&self) -> Vec<u64> {
        let mut adj = vec![0u64; self.vertices];
        for &[u, v] in &self.edges {
            adj[u] |= 1 << v;
            adj[v] |= 1 << u;
        }
        adj
    }

    /// Vertices touched by an edge set.
    pub fn support(&self, edges: AtomSet) -> u64 {
        edges.iter().fold(0u64, |acc, i| acc | 1 << self.edges[i][0] | 1 << self.edges[i][1])
    }

    /// Whether the edge set spans a connected subgraph of the vertices it touches.
    pub fn edges_connected(&self, edges: AtomSet) -> bool {
        let Some(first) = edges.first() else { return true };
        let mut reached = 1u64 << self.edges[first][0];
        let mut left = edges;
        loop {
            let mut grew = false;
            for i in left.iter() {
                let [u, v] = self.edges[i];
                if reached >> u & 1 == 1 || reached >> v & 1 == 1 {
                    reached |= 1 << u | 1 << v;
                    left = left.without(i);
                    grew = true;
                }
            }
            if !grew {
                return left.is_empty();
            }
        }
    }

    pub fn is_connected(&self) -> bool {
        if self.vertices <= 1 {
            return true;
        }
        let full = AtomSet::full(self.n_edges());
        let all = if self.vertices == 64 { u64::MAX } else { (1u64 << self.vertices) - 1 };
        self.edges_connected(full) && self.support(full) == all
    }

    /// Edge sets of all simple cycles, canonically sorted.
    pub fn cycles(&self) -> Vec<AtomSet> {
        let n = self.vertices;
        let mut eid = vec![vec![usize::MAX; n]; n];
        for (i, &[u, v]) in self.edges.iter().enumerate() {
            eid[u][v] = i;
            eid[v][u] = i;
        }
        let adj = self.adjacency();
        let mut out = Vec::new();
        // each cycle is found once: the start is its least vertex, and the
        // second vertex is smaller than the last
        fn dfs(s: usize, cur: usize, second: usize, visited: u64, edges: AtomSet, adj: &[u64], eid: &[Vec<usize>], out: &mut Vec<AtomSet>) {
            let mut nb = adj[cur];
            while nb != 0 {
                let w = nb.trailing_zeros() as usize;
                nb &= nb - 1;
                if w == s && visited.count_ones() >= 3 && cur > second {
                    out.push(edges.with(eid[cur][w]));
                } else if w > s && visited >> w & 1 == 0 {
                    dfs(s, w, second, visited | 1 << w, edges.with(eid[cur][w]), adj, eid, out);
                }
            }
        }
        for s in 0..n {
            let mut nb = adj[s];
            while nb != 0 {
                let w = nb.trailing_zeros() as usize;
                nb &= nb - 1;
                if w > s {
                    dfs(s, w, w, 1 << s | 1 << w, AtomSet::singleton(eid[s][w]), &adj, &eid, &mut out);
                }
            }
        }
        out.sort_by_key(|c| c.canonical_key());
        out.dedup();
        out
    }

    /// The graphical matroid: circuits are the edge sets of simple cycles.
    pub fn matroid(&self) -> Result<Matroid> {
        Matroid::from_circuits(self.n_edges(), self.cycles())
    }

    /// Repeated removal of the lowest-index simplicial vertex.
    pub fn chordality(&self) -> Chordality {
        let adj = self.adjacency();
        let mut alive: u64 = if self.vertices == 64 { u64::MAX } else { (1u64 << self.vertices) - 1 };
        let mut order = Vec::new();
        while alive != 0 {
            let pick = (0..self.vertices).find(|&v| alive >> v & 1 == 1 && is_clique(&adj, adj[v] & alive));
            match pick {
                Some(v) => {
                    order.push(v);
                    alive &= !(1u64 << v);
                }
                None => return Chordality::Obstruction(chordless_cycle(&adj, alive).expect("a graph without simplicial vertices has a chordless cycle")),
            }
        }
        Chordality::Chordal(order)
    }

    pub fn is_chordal(&self) -> bool {
        self.chordality().is_chordal()
    }

    /// Checks that every vertex is simplicial among the vertices after it.
    pub fn is_perfect_elimination_order(&self, order: &[usize]) -> bool {
        let mut sorted = order.to_vec();
        sorted.sort();
        if sorted != (0..self.vertices).collect::<Vec<_>>() {
            return false;
        }
        let adj = self.adjacency();
        let mut alive: u64 = if self.vertices == 64 { u64::MAX } else { (1u64 << self.vertices) - 1 };
        for &v in order {
            if !is_clique(&adj, adj[v] & alive) {
                return false;
            }
            alive &= !(1u64 << v);
        }
        true
    }

    /// Edges with both ends in `verts`.
    pub fn induced_edges(&self, verts: u64) -> AtomSet {
        self.edges
            .iter()
            .enumerate()
            .filter(|(_, &[u, v])| verts >> u & 1 == 1 && verts >> v & 1 == 1)
            .map(|(i, _)| i)
            .collect()
    }
}

fn is_clique(adj: &[u64], set: u64) -> bool {
    let mut s = set;
    while s != 0 {
        let v = s.trailing_zeros() as usize;
        s &= s - 1;
        if set & !(1u64 << v) & !adj[v] != 0 {
            return false;
        }
    }
    true
}

/// A chordless cycle `v, a, .., b` inside `alive`: a shortest `a`-`b` path
/// avoiding the other neighbours of `v`.
fn chordless_cycle(adj: &[u64], alive: u64) -> Option<Vec<usize>> {
    let mut best: Option<Vec<usize>> = None;
    for v in (0..adj.len()).filter(|&v| alive >> v & 1 == 1) {
        let nb = adj[v] & alive;
        for a in (0..adj.len()).filter(|&a| nb >> a & 1 == 1) {
            for b in (a + 1..adj.len()).filter(|&b| nb >> b & 1 == 1 && adj[a] >> b & 1 == 0) {
                let allowed = alive & !(nb | 1 << v) | 1 << a | 1 << b;
                if let Some(p) = shortest_path(adj, allowed, a, b) {
                    let mut cyc = vec![v];
                    cyc.extend(p);
                    if best.as_ref().is_none_or(|c| cyc.len() < c.len()) {
                        best = Some(cyc);
                    }
                }
            }
        }
        if best.is_some() {
            return best;
        }
    }
    best
}

fn shortest_path(adj: &[u64], allowed: u64, a: usize, b: usize) -> Option<Vec<usize>> {
    let mut prev = vec![usize::MAX; adj.len()];
    let mut queue = std::collections::VecDeque::from([a]);
    prev[a] = a;
    while let Some(u) = queue.pop_front() {
        if u == b {
            let mut path = vec![b];
            let mut x = b;
            while x != a {
                x = prev[x];
                path.push(x);
            }
            path.reverse();
            return Some(path);
        }
        let mut nb = adj[u] & allowed;
        while nb != 0 {
            let w = nb.trailing_zeros() as usize;
            nb &= nb - 1;
            if prev[w] == usize::MAX {
                prev[w] = u;
                queue.push_back(w);
            }
        }
    }
    None
}

/// Flats whose edges form a connected subgraph.
pub fn graphical_building_set(g: &Graph, l: &GeometricLattice) -> BuildingSet {
    BuildingSet::from_members(l, l.ids().filter(|&x| x != l.bottom() && g.edges_connected(l.flat(x))).collect())
}

/// `(L_g, G_g)`, with the elimination witness attached when `g` is chordal.
pub fn built_lattice_of_graph(g: &Graph) -> Result<BuiltLattice> {
    if !g.is_connected() {
        return Err(Error::InvalidGraph("graph is disconnected; build its components separately".into()));
    }
    let l = GeometricLattice::from_matroid(&g.matroid()?)?;
    let building = graphical_building_set(g, &l);
    let mut bl = BuiltLattice::new(l, building)?;
    if let Chordality::Chordal(order) = g.chordality() {
        let w = witness_from_elimination(g, &bl, &order)?;
        bl.set_witness(w)?;
    }
    Ok(bl)
}

/// Edge set under a vertex relabelling, as a sorted list.
fn relabel(edges: &[[usize; 2]], perm: &[usize]) -> Vec<[usize; 2]> {
    let mut out: Vec<[usize; 2]> = edges
        .iter()
        .map(|&[a, b]| {
            let (x, y) = (perm[a], perm[b]);
            [x.min(y), x.max(y)]
        })
        .collect();
    out.sort();
    out
}

/// Smallest relabelled edge list over all vertex permutations.
pub fn canonical_form(g: &Graph) -> Vec<[usize; 2]> {
    use itertools::Itertools;
    (0..g.vertices).permutations(g.vertices).map(|p| relabel(&g.edges, &p)).min().unwrap_or_default()
}

/// Connected chordal graphs with `1..=max_edges` edges, one per
/// isomorphism class, grown one edge at a time.
pub fn connected_chordal_graphs(max_edges: usize) -> Vec<Graph> {
    use std::collections::BTreeSet;
    let mut seen: BTreeSet<(usize, Vec<[usize; 2]>)> = BTreeSet::new();
    let mut level = vec![Graph { vertices: 2, edges: vec![[0, 1]] }];
    seen.insert((2, vec![[0, 1]]));
    let mut connected = level.clone();
    for _ in 1..max_edges {
        let mut next = Vec::new();
        for g in &level {
            let mut cands = Vec::new();
            for a in 0..g.vertices {
                for b in a + 1..g.vertices {
                    if !g.edges.contains(&[a, b]) {
                        let mut e = g.edges.clone();
                        e.push([a, b]);
                        cands.push(Graph { vertices: g.vertices, edges: e });
                    }
                }
                let mut e = g.edges.clone();
                e.push([a, g.vertices]);
                cands.push(Graph { vertices: g.vertices + 1, edges: e });
            }
            for c in cands {
                let key = (c.vertices, canonical_form(&c));
                if seen.insert(key.clone()) {
                    let h = Graph { vertices: key.0, edges: key.1 };
                    connected.push(h.clone());
                    next.push(h);
                }
            }
        }
        level = next;
    }
    connected.retain(|g| g.is_chordal());
    connected
}

/// Chain of closed subgraphs left after deleting vertices in elimination order.
pub fn witness_from_elimination(g: &Graph, bl: &BuiltLattice, order: &[usize]) -> Result<SupersolvableBuiltWitness> {
    if !g.is_perfect_elimination_order(order) {
        return Err(Error::Precondition(format!("{order:?} is not a perfect elimination order")));
    }
    let l = bl.lattice();
    let mut alive: u64 = if g.vertices == 64 { u64::MAX } else { (1u64 << g.vertices) - 1 };
    let mut chain: Vec<FlatId> = vec![l.top()];
    for &v in order {
        alive &= !(1u64 << v);
        let f = l
            .id_of(g.induced_edges(alive))
            .ok_or_else(|| Error::Precondition("induced subgraph is not a flat".into()))?;
        if *chain.last().unwrap() != f {
            chain.push(f);
        }
    }
    chain.reverse();
    let w = SupersolvableBuiltWitness { chain: ModularChainWitness { chain } };
    w.validate(bl)?;
    Ok(w)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn constructors() {
        let lm = Graph::losev_manin(2, 2).unwrap();
        assert_eq!((lm.vertices, lm.n_edges()), (4, 5));
        assert_eq!(Graph::losev_manin(4, 0).unwrap(), Graph::complete(4).unwrap());
        assert_eq!(Graph::cycle(4).unwrap().n_edges(), 4);
        assert!(Graph::new(3, vec![[0, 1], [1, 0]]).is_err());
        assert!(Graph::new(3, vec![[0, 0]]).is_err());
        assert!(Graph::new(2, vec![[0, 2]]).is_err());
    }

    #[test]
    fn cycles_of_small_graphs() {
        assert_eq!(Graph::cycle(4).unwrap().cycles(), vec![AtomSet::full(4)]);
        assert_eq!(Graph::complete(4).unwrap().cycles().len(), 7);
        assert_eq!(Graph::complete(5).unwrap().cycles().len(), 37);
        assert!(Graph::star(4).unwrap().cycles().is_empty());
    }

    #[test]
    fn chordality() {
        assert!(Graph::complete(5).unwrap().is_chordal());
        for n in 4..8 {
            match Graph::cycle(n).unwrap().chordality() {
                Chordality::Obstruction(c) => assert_eq!(c.len(), n),
                other => panic!("{other:?}"),
            }
        }
        for m in 1..=5 {
            for n in 0..=5 {
                let g = Graph::losev_manin(m, n).unwrap();
                match g.chordality() {
                    Chordality::Chordal(o) => assert!(g.is_perfect_elimination_order(&o)),
                    other => panic!("G_{m},{n}: {other:?}"),
                }
            }
        }
        // a square with a pendant triangle: obstruction is the square
        let g = Graph::new(5, vec![[0, 1], [1, 2], [2, 3], [3, 0], [3, 4], [0, 4]]).unwrap();
        let Chordality::Obstruction(c) = g.chordality() else { panic!() };
        assert_eq!(c.len(), 4);
    }

    #[test]
    fn connectivity() {
        let c4 = Graph::cycle(4).unwrap();
        assert!(c4.edges_connected(AtomSet::from_indices([0, 1])));
        assert!(!c4.edges_connected(AtomSet::from_indices([0, 2])));
        assert!(c4.is_connected());
        assert!(!Graph::new(4, vec![[0, 1], [2, 3]]).unwrap().is_connected());
    }

    #[test]
    fn chordal_census() {
        let gs = connected_chordal_graphs(4);
        // trees, plus the triangle at three edges and the paw at four
        let by_edges: Vec<usize> = (1..=4).map(|m| gs.iter().filter(|g| g.n_edges() == m).count()).collect();
        assert_eq!(by_edges, vec![1, 1, 3, 4]);
        assert!(gs.iter().all(|g| g.is_connected() && g.is_chordal()));
    }

    #[test]
    fn elimination_witnesses() {
        let k3 = Graph::complete(3).unwrap();
        let bl = built_lattice_of_graph(&k3).unwrap();
        let w = bl.witness().unwrap();
        assert_eq!(w.chain.chain.len(), 3);
        let star = built_lattice_of_graph(&Graph::losev_manin(1, 2).unwrap()).unwrap();
        assert_eq!(star.lattice().len(), 4);
        assert!(star.witness().is_some());
        let k4 = built_lattice_of_graph(&Graph::complete(4).unwrap()).unwrap();
        assert_eq!(k4.building().len(), 11);
        k4.witness().unwrap().validate(&k4).unwrap();
        assert!(witness_from_elimination(&Graph::complete(4).unwrap(), &k4, &[0, 1]).is_err());
        let c6 = built_lattice_of_graph(&Graph::cycle(6).unwrap()).unwrap();
        assert!(c6.witness().is_none());
        assert!(c6.find_supersolvable_witness().is_none());
        assert!(built_lattice_of_graph(&Graph::new(4, vec![[0, 1], [2, 3]]).unwrap()).is_err());
    }
}
