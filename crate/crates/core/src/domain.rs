//! Finite fundamental domains of a periodic graph.
//!
//! A domain vertex is a pair (fundamental vertex, cell offset). Every
//! cell-0 copy is present, the edges project bijectively onto the
//! fundamental edges, and the domain graph is connected. Vertices whose
//! domain degree equals their periodic degree are inner; the rest form the
//! boundary.

use std::collections::{HashMap, VecDeque};

use crate::error::{Error, Result};
use crate::graph::{canonical_edge, FundamentalGraph, VertexId};

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct DomainVertex {
    pub base: VertexId,
    pub cell: Vec<i64>,
}

impl DomainVertex {
    pub fn new(base: VertexId, cell: Vec<i64>) -> Self {
        Self { base, cell }
    }
}

#[derive(Debug, Clone)]
pub struct FundamentalDomain {
    vertices: Vec<DomainVertex>,
    edges: Vec<(usize, usize)>,
    degrees: Vec<usize>,
    inner: Vec<bool>,
    periodic_degrees: Vec<usize>,
    names: Vec<String>,
}

/// Builds and validates a fundamental domain.
///
/// `extra` lists the vertices outside cell 0, in document order; the cell-0
/// copies of all fundamental vertices come first implicitly. A cell-0 entry
/// may appear once in `extra` (it aliases the implicit copy).
pub fn build_domain(
    g: &FundamentalGraph,
    extra: &[DomainVertex],
    edges: &[(DomainVertex, DomainVertex)],
) -> Result<FundamentalDomain> {
    let d = g.dimension();
    let nu = g.vertex_count();
    let mut vertices: Vec<DomainVertex> = (0..nu).map(|j| DomainVertex::new(j, vec![0; d])).collect();
    let mut lookup: HashMap<DomainVertex, usize> = vertices.iter().cloned().zip(0..).collect();
    let mut aliased = vec![false; nu];
    let label = |v: &DomainVertex| format!("{}@{:?}", g.names().get(v.base).map_or("?", |s| s.as_str()), v.cell);

    for v in extra {
        if v.base >= nu {
            return Err(Error::UnknownVertex(format!("#{}", v.base)));
        }
        if v.cell.len() != d {
            return Err(Error::IndexLength { expected: d, found: v.cell.len() });
        }
        if v.cell.iter().all(|&c| c == 0) {
            if std::mem::replace(&mut aliased[v.base], true) {
                return Err(Error::Domain(format!("duplicate vertex {}", label(v))));
            }
            continue;
        }
        if lookup.contains_key(v) {
            return Err(Error::Domain(format!("duplicate vertex {}", label(v))));
        }
        lookup.insert(v.clone(), vertices.len());
        vertices.push(v.clone());
    }

    let mut idx_edges = Vec::with_capacity(edges.len());
    let mut projected: HashMap<(usize, usize, Vec<i64>), usize> = HashMap::new();
    for (a, b) in edges {
        let ia = *lookup.get(a).ok_or_else(|| Error::Domain(format!("edge endpoint {} not in V1", label(a))))?;
        let ib = *lookup.get(b).ok_or_else(|| Error::Domain(format!("edge endpoint {} not in V1", label(b))))?;
        let tau: Vec<i64> = b.cell.iter().zip(&a.cell).map(|(x, y)| x - y).collect();
        *projected.entry(canonical_edge(a.base, b.base, &tau)).or_default() += 1;
        idx_edges.push((ia, ib));
    }
    let mut wanted: HashMap<(usize, usize, Vec<i64>), usize> = HashMap::new();
    for e in g.edges() {
        *wanted.entry(e.canonical()).or_default() += 1;
    }
    let mut problems = Vec::new();
    for (key, &count) in &projected {
        let have = wanted.get(key).copied().unwrap_or(0);
        if count > have {
            problems.push((
                key.clone(),
                format!(
                    "edges project onto fundamental edge {}-{} index {:?} {count} times, expected {have}",
                    g.names()[key.0],
                    g.names()[key.1],
                    key.2
                ),
            ));
        }
    }
    for (key, &count) in &wanted {
        if projected.get(key).copied().unwrap_or(0) < count {
            problems.push((
                key.clone(),
                format!(
                    "fundamental edge {}-{} index {:?} has no image in E1",
                    g.names()[key.0],
                    g.names()[key.1],
                    key.2
                ),
            ));
        }
    }
    if !problems.is_empty() {
        problems.sort();
        let msgs: Vec<String> = problems.into_iter().map(|(_, m)| m).collect();
        return Err(Error::Domain(msgs.join("; ")));
    }

    let n1 = vertices.len();
    let mut degrees = vec![0; n1];
    let mut adj = vec![Vec::new(); n1];
    for &(a, b) in &idx_edges {
        degrees[a] += 1;
        degrees[b] += 1;
        adj[a].push(b);
        adj[b].push(a);
    }
    let mut seen = vec![false; n1];
    seen[0] = true;
    let mut queue = VecDeque::from([0]);
    while let Some(u) = queue.pop_front() {
        for &w in &adj[u] {
            if !std::mem::replace(&mut seen[w], true) {
                queue.push_back(w);
            }
        }
    }
    if let Some(v) = seen.iter().position(|s| !s) {
        return Err(Error::Domain(format!("domain graph is disconnected at {}", label(&vertices[v]))));
    }

    let periodic_degrees = g.degrees().to_vec();
    let inner: Vec<bool> = vertices.iter().zip(&degrees).map(|(v, &k)| k == periodic_degrees[v.base]).collect();
    if let Some(v) = (nu..n1).find(|&v| inner[v]) {
        return Err(Error::Domain(format!("inner vertex {} lies outside cell 0", label(&vertices[v]))));
    }
    let names = vertices.iter().map(&label).collect();
    Ok(FundamentalDomain { vertices, edges: idx_edges, degrees, inner, periodic_degrees, names })
}

impl FundamentalDomain {
    /// `V₁` in storage order: cell-0 copies first, then the extra vertices.
    pub fn vertices(&self) -> &[DomainVertex] {
        &self.vertices
    }

    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    /// Domain degrees `κ¹`, loops counted twice.
    pub fn degrees(&self) -> &[usize] {
        &self.degrees
    }

    pub fn periodic_degree(&self, v: usize) -> usize {
        self.periodic_degrees[self.vertices[v].base]
    }

    pub fn is_inner(&self, v: usize) -> bool {
        self.inner[v]
    }

    pub fn label(&self, v: usize) -> &str {
        &self.names[v]
    }

    /// `ν₁`
    pub fn vertex_count(&self) -> usize {
        self.vertices.len()
    }

    /// `ν_o`
    pub fn inner_count(&self) -> usize {
        self.inner.iter().filter(|&&b| b).count()
    }

    pub fn inner_vertices(&self) -> Vec<usize> {
        (0..self.vertices.len()).filter(|&v| self.inner[v]).collect()
    }

    pub fn boundary_vertices(&self) -> Vec<usize> {
        (0..self.vertices.len()).filter(|&v| !self.inner[v]).collect()
    }

    /// Inner vertices (fundamental order) followed by boundary vertices
    /// (storage order). Domain matrices use this ordering.
    pub fn canonical_order(&self) -> Vec<usize> {
        let mut order = self.inner_vertices();
        order.extend(self.boundary_vertices());
        order
    }

    /// The class `Z_j` of domain vertices that are translates of fundamental vertex `j`.
    pub fn class(&self, j: VertexId) -> Vec<usize> {
        (0..self.vertices.len()).filter(|&v| self.vertices[v].base == j).collect()
    }

    /// 2-colourability of the finite domain graph.
    pub fn is_bipartite(&self) -> bool {
        let n = self.vertices.len();
        let mut adj = vec![Vec::new(); n];
        for &(a, b) in &self.edges {
            if a == b {
                return false;
            }
            adj[a].push(b);
            adj[b].push(a);
        }
        let mut colour: Vec<Option<bool>> = vec![None; n];
        for s in 0..n {
            if colour[s].is_some() {
                continue;
            }
            colour[s] = Some(false);
            let mut queue = VecDeque::from([s]);
            while let Some(u) = queue.pop_front() {
                let cu = colour[u].unwrap();
                for &w in &adj[u] {
                    match colour[w] {
                        None => {
                            colour[w] = Some(!cu);
                            queue.push_back(w);
                        }
                        Some(cw) if cw == cu => return false,
                        _ => {}
                    }
                }
            }
        }
        true
    }
}
