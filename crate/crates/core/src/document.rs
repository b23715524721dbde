//! JSON graph and domain documents.
//!
//! Graph document:
//!
//! ```json
//! { "dimension": 2,
//!   "vertices": ["v1", "v2"],
//!   "edges": [ {"from": "v1", "to": "v2", "index": [0, 1]} ],
//!   "potential": {"v1": 0.5} }
//! ```
//!
//! In the embedded variant vertices carry rational coordinates
//! (`{"name": "v1", "coord": ["1/2", "0"]}`), edges omit `index`, and an
//! endpoint may be translated with `from_coord` / `to_coord`.
//!
//! Domain document:
//!
//! ```json
//! { "graph": "graph.json",
//!   "vertices": [ {"base": "v5", "cell": [0, 1], "name": "v6"} ],
//!   "edges": [ ["v3", {"base": "v5", "cell": [0, 1]}], ["v3", "v6"] ] }
//! ```
//!
//! Cell-0 copies are implicit. An endpoint is either an alias (a vertex
//! `name`, or a fundamental name meaning its cell-0 copy) or a
//! `{"base", "cell"}` pair.

use std::collections::{BTreeMap, HashMap};
use std::path::{Path, PathBuf};

use serde::Deserialize;

use crate::domain::{build_domain, DomainVertex, FundamentalDomain};
use crate::embedding::{lift_embedded_graph, parse_rational, Coord, EmbeddedEdge, EmbeddedVertex, RationalEmbedding};
use crate::error::{Error, Result};
use crate::floquet::Potential;
use crate::graph::{Edge, FundamentalGraph};

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct GraphDoc {
    dimension: usize,
    vertices: Vec<VertexEntry>,
    edges: Vec<EdgeEntry>,
    #[serde(default)]
    potential: BTreeMap<String, f64>,
}

#[derive(Debug, Deserialize)]
#[serde(untagged)]
enum VertexEntry {
    Name(String),
    Embedded { name: String, coord: Vec<String> },
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct EdgeEntry {
    from: String,
    to: String,
    index: Option<Vec<i64>>,
    from_coord: Option<Vec<String>>,
    to_coord: Option<Vec<String>>,
}

/// A parsed graph document.
#[derive(Debug, Clone)]
pub struct GraphDocument {
    pub graph: FundamentalGraph,
    pub potential: Potential,
    /// Embedding, when the document used coordinates.
    pub embedding: Option<RationalEmbedding>,
}

fn parse_coord(c: &[String]) -> Result<Coord> {
    c.iter().map(|s| parse_rational(s)).collect()
}

/// Parses a graph document, resolving names and computing degrees.
pub fn parse_graph(text: &str) -> Result<GraphDocument> {
    let doc: GraphDoc = serde_json::from_str(text)?;
    if doc.dimension == 0 {
        return Err(Error::ZeroDimension);
    }
    let embedded = match doc.vertices.first() {
        None => return Err(Error::EmptyGraph),
        Some(VertexEntry::Embedded { .. }) => true,
        Some(VertexEntry::Name(_)) => false,
    };
    if doc.vertices.iter().any(|v| matches!(v, VertexEntry::Embedded { .. }) != embedded) {
        return Err(Error::Document("vertices mix plain names and embedded coordinates".into()));
    }

    let mut ids: HashMap<&str, usize> = HashMap::new();
    for (i, v) in doc.vertices.iter().enumerate() {
        let name = match v {
            VertexEntry::Name(n) | VertexEntry::Embedded { name: n, .. } => n.as_str(),
        };
        if ids.insert(name, i).is_some() {
            return Err(Error::DuplicateVertex(name.to_string()));
        }
    }
    let id = |name: &str| ids.get(name).copied().ok_or_else(|| Error::UnknownVertex(name.to_string()));

    let (graph, class_of, embedding) = if embedded {
        let vertices = doc
            .vertices
            .iter()
            .map(|v| match v {
                VertexEntry::Embedded { name, coord } => {
                    let coord = parse_coord(coord)?;
                    if coord.len() != doc.dimension {
                        return Err(Error::IndexLength { expected: doc.dimension, found: coord.len() });
                    }
                    Ok(EmbeddedVertex { name: name.clone(), coord })
                }
                VertexEntry::Name(_) => unreachable!(),
            })
            .collect::<Result<Vec<_>>>()?;
        let embedding = RationalEmbedding { dimension: doc.dimension, vertices };
        let edges = doc
            .edges
            .iter()
            .map(|e| {
                if e.index.is_some() {
                    return Err(Error::Document("embedded documents compute edge indices; drop `index`".into()));
                }
                Ok(EmbeddedEdge {
                    from: id(&e.from)?,
                    to: id(&e.to)?,
                    from_coord: e.from_coord.as_deref().map(parse_coord).transpose()?,
                    to_coord: e.to_coord.as_deref().map(parse_coord).transpose()?,
                })
            })
            .collect::<Result<Vec<_>>>()?;
        let lifted = lift_embedded_graph(&embedding, &edges)?;
        (lifted.graph, lifted.class_of, Some(embedding))
    } else {
        let names: Vec<String> = doc
            .vertices
            .iter()
            .map(|v| match v {
                VertexEntry::Name(n) => n.clone(),
                VertexEntry::Embedded { .. } => unreachable!(),
            })
            .collect();
        let edges = doc
            .edges
            .iter()
            .map(|e| {
                if e.from_coord.is_some() || e.to_coord.is_some() {
                    return Err(Error::Document("endpoint coordinates need embedded vertices".into()));
                }
                let index =
                    e.index.clone().ok_or_else(|| Error::Document(format!("edge {}-{} has no index", e.from, e.to)))?;
                Ok(Edge { from: id(&e.from)?, to: id(&e.to)?, index })
            })
            .collect::<Result<Vec<_>>>()?;
        let n = names.len();
        (FundamentalGraph::new(doc.dimension, names, edges)?, (0..n).collect(), None)
    };

    let mut values = vec![0.0; graph.vertex_count()];
    let mut set: Vec<Option<f64>> = vec![None; graph.vertex_count()];
    for (name, &q) in &doc.potential {
        if !q.is_finite() {
            return Err(Error::Document(format!("potential at `{name}` is not finite")));
        }
        let class = class_of[id(name)?];
        if set[class].is_some_and(|old| old != q) {
            return Err(Error::Document(format!("conflicting potential values for the class of `{name}`")));
        }
        set[class] = Some(q);
        values[class] = q;
    }
    Ok(GraphDocument { graph, potential: Potential::new(values), embedding })
}

#[derive(Debug, Deserialize)]
#[serde(untagged)]
enum GraphRef {
    Path(String),
    Inline(serde_json::Value),
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct DomainDoc {
    graph: Option<GraphRef>,
    #[serde(default)]
    vertices: Vec<DomainVertexEntry>,
    edges: Vec<[Endpoint; 2]>,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct DomainVertexEntry {
    base: String,
    cell: Vec<i64>,
    name: Option<String>,
}

#[derive(Debug, Deserialize)]
#[serde(untagged)]
enum Endpoint {
    Alias(String),
    Pair { base: String, cell: Option<Vec<i64>> },
    Named { name: String },
}

/// Where a domain document says its graph lives.
#[derive(Debug, Clone)]
pub enum DomainGraphSource {
    Path(PathBuf),
    Inline(String),
}

/// Returns the graph reference embedded in a domain document, if any.
/// Relative paths are resolved against `base_dir`.
pub fn domain_graph_source(text: &str, base_dir: &Path) -> Result<Option<DomainGraphSource>> {
    let doc: DomainDoc = serde_json::from_str(text)?;
    Ok(doc.graph.map(|g| match g {
        GraphRef::Path(p) => DomainGraphSource::Path(base_dir.join(p)),
        GraphRef::Inline(v) => DomainGraphSource::Inline(v.to_string()),
    }))
}

/// Parses a domain document against an already parsed graph.
pub fn parse_domain(text: &str, g: &FundamentalGraph) -> Result<FundamentalDomain> {
    let doc: DomainDoc = serde_json::from_str(text)?;
    let d = g.dimension();
    let base = |name: &str| g.vertex_id(name).ok_or_else(|| Error::UnknownVertex(name.to_string()));

    let mut aliases: HashMap<String, DomainVertex> =
        g.names().iter().enumerate().map(|(j, n)| (n.clone(), DomainVertex::new(j, vec![0; d]))).collect();
    let mut extra = Vec::with_capacity(doc.vertices.len());
    for v in &doc.vertices {
        let dv = DomainVertex::new(base(&v.base)?, v.cell.clone());
        if let Some(name) = &v.name {
            if let Some(prev) = aliases.insert(name.clone(), dv.clone()) {
                if prev != dv {
                    return Err(Error::Domain(format!("alias `{name}` is already bound")));
                }
            }
        }
        extra.push(dv);
    }
    let resolve = |ep: &Endpoint| -> Result<DomainVertex> {
        match ep {
            Endpoint::Alias(n) | Endpoint::Named { name: n } => {
                aliases.get(n).cloned().ok_or_else(|| Error::UnknownVertex(n.clone()))
            }
            Endpoint::Pair { base: b, cell } => Ok(DomainVertex::new(base(b)?, cell.clone().unwrap_or(vec![0; d]))),
        }
    };
    let edges = doc.edges.iter().map(|[a, b]| Ok((resolve(a)?, resolve(b)?))).collect::<Result<Vec<_>>>()?;
    build_domain(g, &extra, &edges)
}
