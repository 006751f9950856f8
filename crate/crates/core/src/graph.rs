//! Structures derived from edge-weighted graphs: Laplacian rows generate H,
//! vertex orderings from a base vertex generate 𝒩, κ(j) = deg(v_j) − 2 and
//! g = 1 + Σ_{i<j} w_ij − n.

use std::collections::VecDeque;

use num_traits::{Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::divisor::Divisor;
use crate::error::{Error, Result};
use crate::rational::{format_rational, int, parse_rational, Rational};
use crate::structure::RRStructure;

/// Largest n for which the (n−1)! vertex orderings are enumerated.
pub const MAX_PERMUTATION_VERTICES: usize = 10;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WeightedGraph {
    weights: Vec<Vec<Rational>>,
}

/// On-disk form: `{"n": 3, "edges": [[1, 2, "1"], [1, 3, "3/2"]]}`, 1-based.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GraphFile {
    pub n: usize,
    pub edges: Vec<(usize, usize, String)>,
}

impl WeightedGraph {
    /// Builds a graph from 1-based weighted edges. Missing pairs have weight
    /// 0. Loops, duplicates (in either orientation), negative weights and
    /// graphs disconnected under positive weights are rejected.
    pub fn from_edges(n: usize, edges: &[(usize, usize, Rational)]) -> Result<Self> {
        if n == 0 {
            return Err(Error::InvalidGraph("graph needs at least one vertex".into()));
        }
        let mut weights = vec![vec![Rational::zero(); n]; n];
        let mut seen = vec![vec![false; n]; n];
        for (i, j, w) in edges {
            let (i, j) = (*i, *j);
            if i == 0 || j == 0 || i > n || j > n {
                return Err(Error::InvalidGraph(format!("edge ({i}, {j}) out of range 1..={n}")));
            }
            if i == j {
                return Err(Error::InvalidGraph(format!("loop at vertex {i}")));
            }
            if w.is_negative() {
                return Err(Error::InvalidGraph(format!("negative weight on edge ({i}, {j})")));
            }
            let (a, b) = (i - 1, j - 1);
            if seen[a][b] {
                return Err(Error::InvalidGraph(format!("duplicate edge ({i}, {j})")));
            }
            seen[a][b] = true;
            seen[b][a] = true;
            weights[a][b] = w.clone();
            weights[b][a] = w.clone();
        }
        WeightedGraph::from_matrix(weights)
    }

    pub fn from_matrix(weights: Vec<Vec<Rational>>) -> Result<Self> {
        let n = weights.len();
        if n == 0 {
            return Err(Error::InvalidGraph("graph needs at least one vertex".into()));
        }
        for (i, row) in weights.iter().enumerate() {
            if row.len() != n {
                return Err(Error::InvalidGraph("weight matrix is not square".into()));
            }
            if !row[i].is_zero() {
                return Err(Error::InvalidGraph(format!("nonzero diagonal at vertex {}", i + 1)));
            }
            for (j, w) in row.iter().enumerate() {
                if w.is_negative() {
                    return Err(Error::InvalidGraph(format!("negative weight at ({}, {})", i + 1, j + 1)));
                }
                if *w != weights[j][i] {
                    return Err(Error::InvalidGraph(format!("asymmetric weight at ({}, {})", i + 1, j + 1)));
                }
            }
        }
        let g = WeightedGraph { weights };
        if !g.is_connected() {
            return Err(Error::DisconnectedGraph);
        }
        Ok(g)
    }

    pub fn from_file(file: &GraphFile) -> Result<Self> {
        let edges = file
            .edges
            .iter()
            .map(|(i, j, w)| Ok((*i, *j, parse_rational(w)?)))
            .collect::<Result<Vec<_>>>()?;
        WeightedGraph::from_edges(file.n, &edges)
    }

    pub fn from_json(text: &str) -> Result<Self> {
        WeightedGraph::from_file(&serde_json::from_str(text)?)
    }

    pub fn to_file(&self) -> GraphFile {
        let n = self.n();
        let mut edges = Vec::new();
        for i in 0..n {
            for j in i + 1..n {
                if !self.weights[i][j].is_zero() {
                    edges.push((i + 1, j + 1, format_rational(&self.weights[i][j])));
                }
            }
        }
        GraphFile { n, edges }
    }

    pub fn n(&self) -> usize {
        self.weights.len()
    }

    /// Weight between 0-based vertices.
    pub fn weight(&self, i: usize, j: usize) -> &Rational {
        &self.weights[i][j]
    }

    /// Sum of weights incident to the 0-based vertex `i`.
    pub fn vertex_degree(&self, i: usize) -> Rational {
        self.weights[i].iter().sum()
    }

    fn is_connected(&self) -> bool {
        let n = self.n();
        let mut seen = vec![false; n];
        let mut queue = VecDeque::from([0]);
        seen[0] = true;
        while let Some(v) = queue.pop_front() {
            for (u, w) in self.weights[v].iter().enumerate() {
                if !seen[u] && w.is_positive() {
                    seen[u] = true;
                    queue.push_back(u);
                }
            }
        }
        seen.into_iter().all(|s| s)
    }

    /// Laplacian rows h_1..h_{n−1}.
    pub fn laplacian_generators(&self) -> Vec<Divisor> {
        let n = self.n();
        (0..n.saturating_sub(1))
            .map(|i| {
                let row = (0..n)
                    .map(|j| if i == j { self.vertex_degree(i) } else { -self.weights[i][j].clone() })
                    .collect();
                Divisor::new(row).expect("n >= 2 here")
            })
            .collect()
    }

    /// Unique ν's over all vertex orderings starting at the 1-based `base`,
    /// in lexicographic order of the ordering that first produced them.
    pub fn nu_generators(&self, base: usize) -> Result<Vec<Divisor>> {
        let n = self.n();
        if n > MAX_PERMUTATION_VERTICES {
            return Err(Error::TooManyVertices(n));
        }
        if base == 0 || base > n {
            return Err(Error::BaseVertexOutOfRange { vertex: base, n });
        }
        let mut order = vec![base - 1];
        let mut rest: Vec<usize> = (0..n).filter(|&v| v != base - 1).collect();
        let mut out: Vec<Divisor> = Vec::new();
        self.orderings(&mut order, &mut rest, &mut out);
        Ok(out)
    }

    fn orderings(&self, order: &mut Vec<usize>, rest: &mut Vec<usize>, out: &mut Vec<Divisor>) {
        if rest.is_empty() {
            let nu = self.nu_for_order(order);
            if !out.contains(&nu) {
                out.push(nu);
            }
            return;
        }
        for idx in 0..rest.len() {
            let v = rest.remove(idx);
            order.push(v);
            self.orderings(order, rest, out);
            order.pop();
            rest.insert(idx, v);
        }
    }

    /// ν(j_1) = −1, ν(j_l) = −1 + Σ_{i<l} w(j_i, j_l).
    pub fn nu_for_order(&self, order: &[usize]) -> Divisor {
        let mut nu = vec![Rational::zero(); self.n()];
        for (l, &v) in order.iter().enumerate() {
            nu[v] = order[..l].iter().map(|&u| &self.weights[u][v]).sum::<Rational>() - int(1);
        }
        Divisor::new(nu).expect("n >= 1")
    }

    pub fn canonical(&self) -> Divisor {
        Divisor::new((0..self.n()).map(|j| self.vertex_degree(j) - int(2)).collect()).expect("n >= 1")
    }

    pub fn genus(&self) -> Rational {
        let n = self.n();
        let total: Rational = (0..n).flat_map(|i| (i + 1..n).map(move |j| (i, j))).map(|(i, j)| &self.weights[i][j]).sum();
        int(1) + total - int(n as i64)
    }

    pub fn to_structure(&self, base: usize) -> Result<RRStructure> {
        RRStructure::new(
            self.n(),
            self.genus(),
            self.canonical(),
            self.nu_generators(base)?,
            self.laplacian_generators(),
            false,
        )
    }
}
