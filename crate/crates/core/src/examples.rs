//! Named built-in structures.

use num_traits::Signed;

use crate::divisor::Divisor;
use crate::error::{Error, Result};
use crate::graph::WeightedGraph;
use crate::rational::{int, parse_rational, Rational};
use crate::structure::RRStructure;

pub const NAMES: &[&str] = &[
    "two-vertex-p4",
    "two-vertex-p<P>",
    "three-vertex-134",
    "nongraph-sec4",
    "nongraph-fig4-printed",
    "nongraph-fig4-repaired",
];

pub fn two_vertex_graph(p: Rational) -> Result<WeightedGraph> {
    WeightedGraph::from_edges(2, &[(1, 2, p)])
}

pub fn three_vertex_graph(p: Rational, q: Rational, r: Rational) -> Result<WeightedGraph> {
    WeightedGraph::from_edges(3, &[(1, 2, p), (1, 3, q), (2, 3, r)])
}

/// Two vertices joined by an edge of weight p > 0. Base vertex 2 puts the
/// generator at (p − 1, −1); base vertex 1 gives the H-equivalent (−1, p − 1).
pub fn two_vertex(p: Rational) -> Result<RRStructure> {
    two_vertex_graph(p)?.to_structure(2)
}

pub fn three_vertex_134() -> RRStructure {
    three_vertex_graph(int(1), int(3), int(4))
        .and_then(|g| g.to_structure(1))
        .expect("valid built-in")
}

/// H = ⟨(−4, 4)⟩, 𝒩 = orbit of (2, −2), κ = 0, g = 1. Not a graph structure.
pub fn nongraph_sec4() -> RRStructure {
    RRStructure::new(
        2,
        int(1),
        Divisor::from_ints(&[0, 0]),
        vec![Divisor::from_ints(&[2, -2])],
        vec![Divisor::from_ints(&[-4, 4])],
        false,
    )
    .expect("valid built-in")
}

/// Two ν-generators (0, 4), (1, 3) with H = ⟨(−3, 3)⟩ and κ = (0, 0).
/// deg ν = 4 forces g = 5, so deg κ ≠ 2g − 2; flagged broken.
pub fn nongraph_fig4_printed() -> RRStructure {
    RRStructure::new(
        2,
        int(5),
        Divisor::from_ints(&[0, 0]),
        vec![Divisor::from_ints(&[0, 4]), Divisor::from_ints(&[1, 3])],
        vec![Divisor::from_ints(&[-3, 3])],
        true,
    )
    .expect("valid built-in")
}

/// The same generators with κ = (1, 7), so that κ − (0, 4) = (1, 3).
pub fn nongraph_fig4_repaired() -> RRStructure {
    RRStructure::new(
        2,
        int(5),
        Divisor::from_ints(&[1, 7]),
        vec![Divisor::from_ints(&[0, 4]), Divisor::from_ints(&[1, 3])],
        vec![Divisor::from_ints(&[-3, 3])],
        false,
    )
    .expect("valid built-in")
}

pub fn lookup(name: &str) -> Result<RRStructure> {
    match name {
        "two-vertex-p4" => two_vertex(int(4)),
        "three-vertex-134" => Ok(three_vertex_134()),
        "nongraph-sec4" => Ok(nongraph_sec4()),
        "nongraph-fig4-printed" => Ok(nongraph_fig4_printed()),
        "nongraph-fig4-repaired" => Ok(nongraph_fig4_repaired()),
        _ => {
            let p = name
                .strip_prefix("two-vertex-p")
                .and_then(|p| parse_rational(p).ok())
                .filter(|p| p.is_positive())
                .ok_or_else(|| Error::UnknownExample(name.to_string()))?;
            two_vertex(p)
        }
    }
}
