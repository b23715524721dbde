//! Bundled example graphs with one fundamental domain each.

use crate::document::{parse_domain, parse_graph};
use crate::domain::FundamentalDomain;
use crate::error::{Error, Result};
use crate::floquet::Potential;
use crate::graph::FundamentalGraph;

pub const NAMES: [&str; 3] = ["paper-example", "z2-lattice", "hex-bipartite"];

const EXAMPLE_GRAPH: &str = include_str!("../fixtures/paper-example.graph.json");
const EXAMPLE_DOMAIN: &str = include_str!("../fixtures/paper-example.domain.json");
/// The paper-example graph given by vertex coordinates instead of indices.
pub const EXAMPLE_EMBEDDED: &str = include_str!("../fixtures/paper-example.embedded.json");
const Z2_GRAPH: &str = include_str!("../fixtures/z2-lattice.graph.json");
const Z2_DOMAIN: &str = include_str!("../fixtures/z2-lattice.domain.json");
const HEX_GRAPH: &str = include_str!("../fixtures/hex-bipartite.graph.json");
const HEX_DOMAIN: &str = include_str!("../fixtures/hex-bipartite.domain.json");

#[derive(Debug, Clone)]
pub struct Fixture {
    pub name: &'static str,
    pub graph: FundamentalGraph,
    pub potential: Potential,
    pub domain: FundamentalDomain,
    pub graph_json: &'static str,
    pub domain_json: &'static str,
}

fn load(name: &'static str, graph_json: &'static str, domain_json: &'static str) -> Result<Fixture> {
    let doc = parse_graph(graph_json)?;
    let domain = parse_domain(domain_json, &doc.graph)?;
    Ok(Fixture { name, graph: doc.graph, potential: doc.potential, domain, graph_json, domain_json })
}

pub fn fixture(name: &str) -> Result<Fixture> {
    match name {
        "paper-example" => load("paper-example", EXAMPLE_GRAPH, EXAMPLE_DOMAIN),
        "z2-lattice" => load("z2-lattice", Z2_GRAPH, Z2_DOMAIN),
        "hex-bipartite" => load("hex-bipartite", HEX_GRAPH, HEX_DOMAIN),
        other => Err(Error::Document(format!("unknown fixture `{other}` (known: {})", NAMES.join(", ")))),
    }
}

/// Five-vertex planar example with a flat band at 0.
pub fn five_vertex_example() -> Fixture {
    fixture("paper-example").expect("bundled fixture")
}

pub fn z2_lattice() -> Fixture {
    fixture("z2-lattice").expect("bundled fixture")
}

/// Honeycomb lattice: two vertices, three edges.
pub fn hex_bipartite() -> Fixture {
    fixture("hex-bipartite").expect("bundled fixture")
}
