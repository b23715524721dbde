//! Resolves graph, potential and domain inputs from the command line.

use std::fs;
use std::path::Path;

use pgspec_core::document::{domain_graph_source, parse_domain, parse_graph, DomainGraphSource};
use pgspec_core::fixtures;
use pgspec_core::{validate_graph, FundamentalDomain, FundamentalGraph, Potential};

use crate::{CliError, Common};

pub struct Inputs {
    pub graph: FundamentalGraph,
    pub potential: Potential,
    pub domains: Vec<FundamentalDomain>,
}

fn read(path: &Path) -> Result<String, CliError> {
    fs::read_to_string(path).map_err(|source| CliError::Read { path: path.to_path_buf(), source })
}

fn load_graph_text(text: &str) -> Result<(FundamentalGraph, Potential), CliError> {
    let doc = parse_graph(text)?;
    validate_graph(&doc.graph)?;
    Ok((doc.graph, doc.potential))
}

fn referenced_graph(text: &str, dir: &Path) -> Result<Option<(FundamentalGraph, Potential)>, CliError> {
    match domain_graph_source(text, dir)? {
        None => Ok(None),
        Some(DomainGraphSource::Path(p)) => load_graph_text(&read(&p)?).map(Some),
        Some(DomainGraphSource::Inline(s)) => load_graph_text(&s).map(Some),
    }
}

/// Loads the graph from `--graph`, `--fixture` or, failing both, the graph
/// named by the first domain document. Domains default to the fixture's own.
pub fn load(c: &Common) -> Result<Inputs, CliError> {
    if c.flat_tol.is_nan() || c.flat_tol <= 0.0 {
        return Err(CliError::Usage(format!("--flat-tol must be positive, got {}", c.flat_tol)));
    }
    let domain_texts = c
        .domain
        .iter()
        .map(|p| Ok((read(p)?, p.parent().unwrap_or(Path::new(".")).to_path_buf())))
        .collect::<Result<Vec<_>, CliError>>()?;

    let mut fixture_domain = None;
    let (graph, potential) = if let Some(path) = &c.graph {
        load_graph_text(&read(path)?)?
    } else if let Some(name) = &c.fixture {
        let f = fixtures::fixture(name)?;
        fixture_domain = Some(f.domain);
        (f.graph, f.potential)
    } else if let Some((text, dir)) = domain_texts.first() {
        referenced_graph(text, dir)?
            .ok_or_else(|| CliError::Usage("no graph: pass --graph or --fixture, or name one in the domain".into()))?
    } else {
        return Err(CliError::Usage("no graph: pass --graph or --fixture".into()));
    };

    let mut domains = Vec::new();
    for (i, (text, dir)) in domain_texts.iter().enumerate() {
        if let Some((other, _)) = referenced_graph(text, dir)? {
            if other != graph {
                return Err(CliError::Usage(format!(
                    "{}: domain was built for a different graph",
                    c.domain[i].display()
                )));
            }
        }
        domains.push(parse_domain(text, &graph)?);
    }
    if domains.is_empty() {
        domains.extend(fixture_domain);
    }
    Ok(Inputs { graph, potential, domains })
}
