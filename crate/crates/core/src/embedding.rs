//! Exact rational coordinates in the period basis and the edge index they induce.

use num_rational::Rational64;
use num_traits::Zero;

use crate::error::{Error, Result};
use crate::graph::{Edge, FundamentalGraph};

pub type Coord = Vec<Rational64>;

/// Parses a coordinate component such as `"3/4"`, `"-1"` or `"2/6"`.
pub fn parse_rational(s: &str) -> Result<Rational64> {
    s.trim().parse::<Rational64>().map_err(|_| Error::Rational(s.to_string()))
}

fn floor_vec(x: &[Rational64]) -> Vec<i64> {
    x.iter().map(|r| r.floor().to_integer()).collect()
}

fn fract_vec(x: &[Rational64]) -> Coord {
    x.iter().map(|r| r - r.floor()).collect()
}

/// Edge index `[v] − [u]` with `[·]` the componentwise floor.
pub fn compute_edge_index(u: &[Rational64], v: &[Rational64]) -> Vec<i64> {
    floor_vec(v).into_iter().zip(floor_vec(u)).map(|(a, b)| a - b).collect()
}

#[derive(Debug, Clone, PartialEq)]
pub struct EmbeddedVertex {
    pub name: String,
    pub coord: Coord,
}

/// An edge between two embedded vertices. Endpoint coordinates default to the
/// vertex coordinates; an explicit coordinate must be an integer translate of it.
#[derive(Debug, Clone, PartialEq)]
pub struct EmbeddedEdge {
    pub from: usize,
    pub to: usize,
    pub from_coord: Option<Coord>,
    pub to_coord: Option<Coord>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct RationalEmbedding {
    pub dimension: usize,
    pub vertices: Vec<EmbeddedVertex>,
}

impl RationalEmbedding {
    /// Translates every vertex by the integer vector `shift`.
    pub fn translated(&self, shift: &[i64]) -> Self {
        let vertices = self
            .vertices
            .iter()
            .map(|v| EmbeddedVertex {
                name: v.name.clone(),
                coord: v.coord.iter().zip(shift).map(|(c, &s)| c + Rational64::from_integer(s)).collect(),
            })
            .collect();
        Self { dimension: self.dimension, vertices }
    }
}

/// Result of lifting an embedding: the fundamental graph plus the class of
/// each input vertex.
#[derive(Debug, Clone)]
pub struct LiftedGraph {
    pub graph: FundamentalGraph,
    pub class_of: Vec<usize>,
}

/// Collapses the embedding modulo Z^d. Fundamental vertices are the distinct
/// fractional parts in order of first appearance, named after that vertex.
pub fn lift_embedded_graph(embedding: &RationalEmbedding, edges: &[EmbeddedEdge]) -> Result<LiftedGraph> {
    let d = embedding.dimension;
    let mut reps: Vec<Coord> = Vec::new();
    let mut names = Vec::new();
    let mut class_of = Vec::with_capacity(embedding.vertices.len());
    for v in &embedding.vertices {
        if v.coord.len() != d {
            return Err(Error::IndexLength { expected: d, found: v.coord.len() });
        }
        let f = fract_vec(&v.coord);
        match reps.iter().position(|r| *r == f) {
            Some(k) => class_of.push(k),
            None => {
                class_of.push(reps.len());
                reps.push(f);
                names.push(v.name.clone());
            }
        }
    }

    let endpoint = |vertex: usize, explicit: &Option<Coord>| -> Result<Coord> {
        let base = &embedding.vertices.get(vertex).ok_or_else(|| Error::UnknownVertex(format!("#{vertex}")))?.coord;
        match explicit {
            None => Ok(base.clone()),
            Some(c) => {
                if c.len() != d {
                    return Err(Error::IndexLength { expected: d, found: c.len() });
                }
                if c.iter().zip(base).any(|(a, b)| !(a - b).fract().is_zero()) {
                    return Err(Error::Document(format!(
                        "endpoint coordinate is not a lattice translate of vertex `{}`",
                        embedding.vertices[vertex].name
                    )));
                }
                Ok(c.clone())
            }
        }
    };

    let mut out = Vec::with_capacity(edges.len());
    for e in edges {
        let u = endpoint(e.from, &e.from_coord)?;
        let v = endpoint(e.to, &e.to_coord)?;
        out.push(Edge { from: class_of[e.from], to: class_of[e.to], index: compute_edge_index(&u, &v) });
    }
    Ok(LiftedGraph { graph: FundamentalGraph::new(d, names, out)?, class_of })
}
