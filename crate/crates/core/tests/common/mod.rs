#![allow(dead_code)]

use pgspec_core::domain::build_domain;
use pgspec_core::{DomainVertex, Edge, FundamentalDomain, FundamentalGraph, Result};
use proptest::prelude::*;

/// Every edge attached at its cell-0 source: `u@0 - v@τ`.
pub fn star_domain(g: &FundamentalGraph) -> Result<FundamentalDomain> {
    let d = g.dimension();
    let mut extra: Vec<DomainVertex> = Vec::new();
    let mut edges = Vec::new();
    for e in g.edges() {
        let to = DomainVertex::new(e.to, e.index.clone());
        if e.index.iter().any(|&c| c != 0) && !extra.contains(&to) {
            extra.push(to.clone());
        }
        edges.push((DomainVertex::new(e.from, vec![0; d]), to));
    }
    build_domain(g, &extra, &edges)
}

/// Random graph on up to four vertices in dimension 1 or 2, not
/// necessarily connected.
pub fn arb_graph() -> impl Strategy<Value = FundamentalGraph> {
    (1usize..=4, 1usize..=2).prop_flat_map(|(nu, d)| {
        let edge = (0..nu, 0..nu, prop::collection::vec(-2i64..=2, d));
        prop::collection::vec(edge, nu + d..nu + d + 4).prop_filter_map("invalid graph", move |raw| {
            let edges = raw
                .into_iter()
                .filter(|(u, v, t)| !(u == v && t.iter().all(|&c| c == 0)))
                .map(|(from, to, index)| Edge { from, to, index })
                .collect();
            let names = (0..nu).map(|j| format!("u{j}")).collect();
            FundamentalGraph::new(d, names, edges).ok()
        })
    })
}

pub fn arb_potential(nu: usize) -> impl Strategy<Value = Vec<f64>> {
    prop::collection::vec(-2.0f64..2.0, nu)
}
