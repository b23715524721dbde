//! Z^d-periodic graphs in finite form.
//!
//! A periodic graph is stored as its fundamental graph: the `ν` vertex
//! classes modulo translations, and one unoriented edge per edge class
//! carrying the integer index `τ(e)` of the cell its head lies in relative
//! to its tail. Loops (`from == to`) and multi-edges are allowed.

use std::collections::{HashMap, VecDeque};

use crate::error::{Error, Result};
use crate::lattice;

pub type VertexId = usize;

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Edge {
    pub from: VertexId,
    pub to: VertexId,
    pub index: Vec<i64>,
}

impl Edge {
    pub fn is_loop(&self) -> bool {
        self.from == self.to
    }

    /// Orientation-independent key: `(min, max, τ)` with the index negated
    /// when the endpoints are swapped, and loops normalized so that
    /// `τ ≥ -τ` lexicographically.
    pub fn canonical(&self) -> (VertexId, VertexId, Vec<i64>) {
        canonical_edge(self.from, self.to, &self.index)
    }
}

pub(crate) fn canonical_edge(u: VertexId, v: VertexId, index: &[i64]) -> (VertexId, VertexId, Vec<i64>) {
    let neg: Vec<i64> = index.iter().map(|x| -x).collect();
    if u < v {
        (u, v, index.to_vec())
    } else if u > v {
        (v, u, neg)
    } else if index.to_vec() >= neg {
        (u, u, index.to_vec())
    } else {
        (u, u, neg)
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct FundamentalGraph {
    dimension: usize,
    names: Vec<String>,
    edges: Vec<Edge>,
    degrees: Vec<usize>,
}

impl FundamentalGraph {
    /// Builds a fundamental graph, checking ids, index lengths and degrees.
    /// Connectivity of the lifted graph is checked separately by [`validate_graph`].
    pub fn new(dimension: usize, names: Vec<String>, edges: Vec<Edge>) -> Result<Self> {
        if dimension == 0 {
            return Err(Error::ZeroDimension);
        }
        if names.is_empty() {
            return Err(Error::EmptyGraph);
        }
        let mut seen = HashMap::new();
        for (i, n) in names.iter().enumerate() {
            if seen.insert(n.as_str(), i).is_some() {
                return Err(Error::DuplicateVertex(n.clone()));
            }
        }
        let mut degrees = vec![0usize; names.len()];
        for e in &edges {
            for end in [e.from, e.to] {
                if end >= names.len() {
                    return Err(Error::UnknownVertex(format!("#{end}")));
                }
            }
            if e.index.len() != dimension {
                return Err(Error::IndexLength { expected: dimension, found: e.index.len() });
            }
            degrees[e.from] += 1;
            degrees[e.to] += 1;
        }
        if let Some(v) = degrees.iter().position(|&k| k == 0) {
            return Err(Error::IsolatedVertex(names[v].clone()));
        }
        Ok(Self { dimension, names, edges, degrees })
    }

    pub fn dimension(&self) -> usize {
        self.dimension
    }

    /// Number of fundamental vertices `ν`.
    pub fn vertex_count(&self) -> usize {
        self.names.len()
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    /// Degrees `κ_v` in the periodic graph; loops count twice.
    pub fn degrees(&self) -> &[usize] {
        &self.degrees
    }

    pub fn vertex_id(&self, name: &str) -> Option<VertexId> {
        self.names.iter().position(|n| n == name)
    }
}

/// Outcome of a successful connectivity check.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Connectivity {
    /// Cycle index vectors from a spanning tree plus chords.
    pub cycle_indices: Vec<Vec<i64>>,
}

/// Checks that the lifted periodic graph is connected.
///
/// The fundamental graph must be connected, and the index sums of a cycle
/// basis must generate all of Z^d.
pub fn validate_graph(g: &FundamentalGraph) -> Result<Connectivity> {
    let n = g.vertex_count();
    let d = g.dimension();
    let mut incident: Vec<Vec<usize>> = vec![Vec::new(); n];
    for (k, e) in g.edges().iter().enumerate() {
        incident[e.from].push(k);
        if !e.is_loop() {
            incident[e.to].push(k);
        }
    }

    let mut position: Vec<Option<Vec<i64>>> = vec![None; n];
    let mut tree_edge = vec![false; g.edges().len()];
    let mut components = 0;
    for root in 0..n {
        if position[root].is_some() {
            continue;
        }
        components += 1;
        position[root] = Some(vec![0; d]);
        let mut queue = VecDeque::from([root]);
        while let Some(u) = queue.pop_front() {
            let pu = position[u].clone().unwrap();
            for &k in &incident[u] {
                let e = &g.edges()[k];
                if e.is_loop() {
                    continue;
                }
                let (w, sign) = if e.from == u { (e.to, 1) } else { (e.from, -1) };
                if position[w].is_none() {
                    position[w] = Some(pu.iter().zip(&e.index).map(|(p, t)| p + sign * t).collect());
                    tree_edge[k] = true;
                    queue.push_back(w);
                }
            }
        }
    }
    if components > 1 {
        return Err(Error::DisconnectedFundamental { components });
    }

    let cycle_indices: Vec<Vec<i64>> = g
        .edges()
        .iter()
        .enumerate()
        .filter(|(k, _)| !tree_edge[*k])
        .map(|(_, e)| {
            let pu = position[e.from].as_ref().unwrap();
            let pv = position[e.to].as_ref().unwrap();
            (0..d).map(|i| pu[i] + e.index[i] - pv[i]).collect()
        })
        .collect();
    if !lattice::generates_full_lattice(&cycle_indices, d) {
        return Err(Error::DisconnectedLift { basis: lattice::hermite_basis(&cycle_indices, d) });
    }
    Ok(Connectivity { cycle_indices })
}

/// 2-colouring of the lifted graph: vertex `(j, m)` gets colour
/// `vertex_parity[j] + ⟨m, period_parity⟩ mod 2`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BipartiteCertificate {
    pub vertex_parity: Vec<u8>,
    pub period_parity: Vec<u8>,
}

/// Decides bipartiteness of the lifted periodic graph by solving
/// `p(u) + p(v) + ⟨τ, s⟩ = 1 (mod 2)` over GF(2) for every edge.
pub fn is_bipartite(g: &FundamentalGraph) -> Option<BipartiteCertificate> {
    let n = g.vertex_count();
    let d = g.dimension();
    let vars = n + d;
    let mut rows: Vec<(Vec<bool>, bool)> = g
        .edges()
        .iter()
        .map(|e| {
            let mut r = vec![false; vars];
            r[e.from] ^= true;
            r[e.to] ^= true;
            for (i, t) in e.index.iter().enumerate() {
                if t.rem_euclid(2) == 1 {
                    r[n + i] ^= true;
                }
            }
            (r, true)
        })
        .collect();

    let mut pivots = Vec::new();
    let mut rank = 0;
    for col in 0..vars {
        let Some(p) = (rank..rows.len()).find(|&r| rows[r].0[col]) else { continue };
        rows.swap(rank, p);
        let (prow, prhs) = rows[rank].clone();
        for (r, row) in rows.iter_mut().enumerate() {
            if r != rank && row.0[col] {
                for (x, y) in row.0.iter_mut().zip(&prow) {
                    *x ^= y;
                }
                row.1 ^= prhs;
            }
        }
        pivots.push(col);
        rank += 1;
    }
    if rows[rank..].iter().any(|(_, rhs)| *rhs) {
        return None;
    }
    // Free variables are zero; each pivot variable equals its row's right-hand side.
    let mut x = vec![0u8; vars];
    for (r, &col) in pivots.iter().enumerate() {
        x[col] = rows[r].1 as u8;
    }
    Some(BipartiteCertificate { vertex_parity: x[..n].to_vec(), period_parity: x[n..].to_vec() })
}

/// Finite quotient of the periodic graph by (N Z)^d.
#[derive(Debug, Clone)]
pub struct TorusGraph {
    pub period: usize,
    /// `(fundamental vertex, cell)` per torus vertex.
    pub vertices: Vec<(VertexId, Vec<usize>)>,
    /// Unoriented edges as torus vertex pairs; loops appear as `(x, x)`.
    pub edges: Vec<(usize, usize)>,
}

impl TorusGraph {
    pub fn degrees(&self) -> Vec<usize> {
        let mut deg = vec![0; self.vertices.len()];
        for &(a, b) in &self.edges {
            deg[a] += 1;
            deg[b] += 1;
        }
        deg
    }
}

pub(crate) fn cell_count(period: usize, dimension: usize) -> usize {
    period.pow(dimension as u32)
}

pub(crate) fn cell_of(mut flat: usize, period: usize, dimension: usize) -> Vec<usize> {
    let mut cell = vec![0; dimension];
    for c in cell.iter_mut().rev() {
        *c = flat % period;
        flat /= period;
    }
    cell
}

fn flat_cell(cell: &[usize], period: usize) -> usize {
    cell.iter().fold(0, |acc, &c| acc * period + c)
}

/// Builds the quotient torus on `ν·N^d` vertices; vertex `(j, m)` is stored
/// at `flat(m)·ν + j`.
pub fn quotient_torus(g: &FundamentalGraph, period: usize) -> Result<TorusGraph> {
    if period < 2 || !period.is_multiple_of(2) {
        return Err(Error::GridSize(period));
    }
    let n = g.vertex_count();
    let d = g.dimension();
    let cells = cell_count(period, d);
    let vertices = (0..cells)
        .flat_map(|c| {
            let cell = cell_of(c, period, d);
            (0..n).map(move |j| (j, cell.clone()))
        })
        .collect();
    let p = period as i64;
    let mut edges = Vec::with_capacity(cells * g.edges().len());
    for c in 0..cells {
        let cell = cell_of(c, period, d);
        for e in g.edges() {
            let target: Vec<usize> =
                cell.iter().zip(&e.index).map(|(&m, &t)| (m as i64 + t).rem_euclid(p) as usize).collect();
            edges.push((c * n + e.from, flat_cell(&target, period) * n + e.to));
        }
    }
    Ok(TorusGraph { period, vertices, edges })
}
