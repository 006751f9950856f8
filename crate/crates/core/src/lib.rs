//! Exact Riemann–Roch theory on finite sets.
//!
//! A divisor is a point of ℚⁿ. A degree-zero subgroup H ⊂ ℚⁿ acts by
//! translation; a genus g, a canonical divisor κ of degree 2g − 2 and a set
//! 𝒩 of divisors of degree g − 1 (a finite union of H-orbits) define the
//! dimension ℓ(x) = min over ν ∈ 𝒩 of deg((x − ν)⁺). When ν ∈ 𝒩 ⇔ κ − ν ∈ 𝒩,
//!
//! ```text
//! ℓ(x) − ℓ(κ − x) = deg(x) − g + 1.
//! ```
//!
//! Everything is computed with exact rationals.

pub mod cli;
pub mod divisor;
pub mod error;
pub mod examples;
pub mod graph;
pub mod lattice;
mod linalg;
pub mod rational;
pub mod region;
pub mod structure;

pub use divisor::{degree, excess, leq, negative_part, positive_part, taxicab, Divisor};
pub use error::{Error, Result};
pub use graph::{GraphFile, WeightedGraph};
pub use lattice::{BallPoint, SubgroupLattice};
pub use rational::{parse_rational, Rational};
pub use region::{emit_csv, emit_svg, parse_csv, sample_region, RegionSpec, RegionTable};
pub use structure::{DegreeReport, EllWitness, RRStructure, StructureFile, SymmetryReport};
