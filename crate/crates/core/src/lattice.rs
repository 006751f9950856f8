//! Finitely generated degree-zero subgroups H ⊂ ℚⁿ.
//!
//! Generators are scaled by the LCM of their denominators and reduced to a
//! row-style Hermite basis over ℤ. The echelon shape drives both membership
//! (back-substitution one pivot at a time) and ball enumeration (each pivot
//! coordinate bounds exactly one new coefficient).

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::divisor::Divisor;
use crate::error::{Error, Result};
use crate::linalg;
use crate::rational::{common_denominator, floor_to_int, Rational};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SubgroupLattice {
    n: usize,
    generators: Vec<Divisor>,
    scale: BigInt,
    /// Hermite rows of the scaled generators, pivots strictly increasing.
    rows: Vec<Vec<BigInt>>,
    pivots: Vec<usize>,
    coeff_bound_factor: Rational,
}

/// A lattice point found by enumeration, with its basis coefficients.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BallPoint {
    pub coefficients: Vec<BigInt>,
    pub point: Divisor,
}

impl SubgroupLattice {
    /// Builds the subgroup generated by `generators`. An empty generator list
    /// is rejected; use [`SubgroupLattice::trivial`] for H = {0}.
    pub fn build(n: usize, generators: Vec<Divisor>) -> Result<Self> {
        if generators.is_empty() {
            return Err(Error::EmptyGenerators);
        }
        Self::build_allow_trivial(n, generators)
    }

    pub fn trivial(n: usize) -> Self {
        Self::build_allow_trivial(n, Vec::new()).expect("trivial lattice")
    }

    pub fn build_allow_trivial(n: usize, generators: Vec<Divisor>) -> Result<Self> {
        if n == 0 {
            return Err(Error::EmptyDivisor);
        }
        for (index, g) in generators.iter().enumerate() {
            g.check_len(n)?;
            let degree = g.degree();
            if !degree.is_zero() {
                return Err(Error::NonZeroDegreeGenerator { index, degree: degree.to_string() });
            }
        }
        let scale = common_denominator(generators.iter().flat_map(|g| g.iter()));
        let scaled: Vec<Vec<BigInt>> = generators.iter().map(|g| scale_to_int(g, &scale)).collect();
        let (rows, pivots) = linalg::hermite_rows(scaled, n);
        let coeff_bound_factor = pseudo_inverse_bound(&rows, &scale);
        Ok(SubgroupLattice { n, generators, scale, rows, pivots, coeff_bound_factor })
    }

    pub fn dimension(&self) -> usize {
        self.n
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    /// Original generators, as given.
    pub fn generators(&self) -> &[Divisor] {
        &self.generators
    }

    pub fn scale(&self) -> &BigInt {
        &self.scale
    }

    pub fn coeff_bound_factor(&self) -> &Rational {
        &self.coeff_bound_factor
    }

    pub fn basis(&self) -> Vec<Divisor> {
        self.rows.iter().map(|r| self.unscale(r)).collect()
    }

    /// The point Σ m_r · basis_r.
    pub fn combine(&self, coefficients: &[BigInt]) -> Divisor {
        assert_eq!(coefficients.len(), self.rank());
        let mut acc = vec![BigInt::zero(); self.n];
        for (m, row) in coefficients.iter().zip(&self.rows) {
            for (a, v) in acc.iter_mut().zip(row) {
                *a += m * v;
            }
        }
        self.unscale(&acc)
    }

    fn unscale(&self, v: &[BigInt]) -> Divisor {
        Divisor::new(v.iter().map(|c| Rational::new(c.clone(), self.scale.clone())).collect())
            .expect("n >= 1")
    }

    /// Returns the basis coefficients of `b` if `b ∈ H`, `None` otherwise.
    pub fn member(&self, b: &Divisor) -> Result<Option<Vec<BigInt>>> {
        b.check_len(self.n)?;
        let mut residual = Vec::with_capacity(self.n);
        for c in b.iter() {
            let scaled = c * Rational::from_integer(self.scale.clone());
            if !scaled.is_integer() {
                return Ok(None);
            }
            residual.push(scaled.to_integer());
        }
        let mut coeffs = Vec::with_capacity(self.rank());
        let mut r = 0;
        for col in 0..self.n {
            if r < self.rows.len() && self.pivots[r] == col {
                let (m, rem) = residual[col].div_rem(&self.rows[r][col]);
                if !rem.is_zero() {
                    return Ok(None);
                }
                for (x, v) in residual.iter_mut().zip(&self.rows[r]) {
                    *x -= &m * v;
                }
                coeffs.push(m);
                r += 1;
            } else if !residual[col].is_zero() {
                return Ok(None);
            }
        }
        Ok(Some(coeffs))
    }

    pub fn contains(&self, b: &Divisor) -> Result<bool> {
        Ok(self.member(b)?.is_some())
    }

    /// Coefficient box half-width certified for an ∞-norm radius.
    pub fn coefficient_bound(&self, radius: &Rational) -> BigInt {
        floor_to_int(&(&self.coeff_bound_factor * radius))
    }

    /// All h ∈ H with ‖h‖∞ ≤ radius, in lexicographic order of basis
    /// coefficients. A negative radius yields the empty set.
    pub fn enumerate_ball(&self, radius: &Rational) -> Vec<Divisor> {
        self.enumerate_ball_with_coefficients(radius).into_iter().map(|p| p.point).collect()
    }

    pub fn enumerate_ball_with_coefficients(&self, radius: &Rational) -> Vec<BallPoint> {
        if radius.is_negative() {
            return Vec::new();
        }
        let bound = floor_to_int(&(radius * Rational::from_integer(self.scale.clone())));
        let walk = Walk::new(self.n, &self.rows, &self.pivots, &BigInt::one(), bound, self.coefficient_bound(radius));
        let mut collect = Collect(Vec::new());
        walk.run(&mut collect);
        collect
            .0
            .into_iter()
            .map(|(coefficients, h)| BallPoint { coefficients, point: self.unscale(&h) })
            .collect()
    }

    /// Branch-and-bound walk over H ∩ ball used by the dimension function.
    ///
    /// Coordinates are expressed in units of `1/denominator`, which must be a
    /// multiple of the lattice scale. `bound` is the ∞-norm radius in those
    /// units.
    pub(crate) fn walk_scaled<V: BallVisitor>(&self, denominator: &BigInt, radius: &Rational, visitor: &mut V) {
        if radius.is_negative() {
            return;
        }
        debug_assert!(denominator.is_multiple_of(&self.scale));
        let factor = denominator / &self.scale;
        let bound = floor_to_int(&(radius * Rational::from_integer(denominator.clone())));
        let walk = Walk::new(self.n, &self.rows, &self.pivots, &factor, bound, self.coefficient_bound(radius));
        walk.run(visitor);
    }
}

pub(crate) trait BallVisitor {
    /// Sees a partial sum whose first `fixed` coordinates are final; returning
    /// `false` cuts the subtree.
    fn keep(&mut self, partial: &[BigInt], fixed: usize) -> bool;
    fn leaf(&mut self, coefficients: &[BigInt], point: &[BigInt]);
}

struct Collect(Vec<(Vec<BigInt>, Vec<BigInt>)>);

impl BallVisitor for Collect {
    fn keep(&mut self, _: &[BigInt], _: usize) -> bool {
        true
    }

    fn leaf(&mut self, coefficients: &[BigInt], point: &[BigInt]) {
        self.0.push((coefficients.to_vec(), point.to_vec()));
    }
}

fn scale_to_int(d: &Divisor, scale: &BigInt) -> Vec<BigInt> {
    d.iter()
        .map(|c| (c * Rational::from_integer(scale.clone())).to_integer())
        .collect()
}

/// max row sum of |(BᵀB)⁻¹Bᵀ| for the basis B whose columns are `rows / scale`.
fn pseudo_inverse_bound(rows: &[Vec<BigInt>], scale: &BigInt) -> Rational {
    let k = rows.len();
    if k == 0 {
        return Rational::zero();
    }
    let basis: Vec<Vec<Rational>> = rows
        .iter()
        .map(|r| r.iter().map(|v| Rational::new(v.clone(), scale.clone())).collect())
        .collect();
    let gram: Vec<Vec<Rational>> = (0..k)
        .map(|i| (0..k).map(|j| dot(&basis[i], &basis[j])).collect())
        .collect();
    let inv = linalg::invert(&gram).expect("Hermite rows are linearly independent");
    let n = basis[0].len();
    (0..k)
        .map(|i| {
            (0..n)
                .map(|c| (0..k).map(|j| &inv[i][j] * &basis[j][c]).sum::<Rational>().abs())
                .sum::<Rational>()
        })
        .max()
        .unwrap_or_else(Rational::zero)
}

fn dot(a: &[Rational], b: &[Rational]) -> Rational {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

struct Walk {
    rows: Vec<Vec<BigInt>>,
    pivots: Vec<usize>,
    n: usize,
    bound: BigInt,
    coeff_max: BigInt,
}

impl Walk {
    fn new(n: usize, rows: &[Vec<BigInt>], pivots: &[usize], factor: &BigInt, bound: BigInt, coeff_max: BigInt) -> Self {
        let rows = rows.iter().map(|r| r.iter().map(|v| v * factor).collect()).collect();
        Walk { rows, pivots: pivots.to_vec(), n, bound, coeff_max }
    }

    fn run<V: BallVisitor>(&self, visitor: &mut V) {
        if self.rows.is_empty() {
            // trivial subgroup: only the origin, whose coordinates are all final
            let zero = vec![BigInt::zero(); self.n];
            if visitor.keep(&zero, zero.len()) {
                visitor.leaf(&[], &zero);
            }
            return;
        }
        let mut coeffs = Vec::with_capacity(self.rows.len());
        let partial = vec![BigInt::zero(); self.n];
        // coordinates before the first pivot are identically zero
        if visitor.keep(&partial, self.pivots[0]) {
            self.descend(0, &partial, &mut coeffs, visitor);
        }
    }

    fn descend<V: BallVisitor>(&self, depth: usize, partial: &[BigInt], coeffs: &mut Vec<BigInt>, visitor: &mut V) {
        let row = &self.rows[depth];
        let col = self.pivots[depth];
        let pivot = &row[col];
        let lo = (-&self.bound - &partial[col]).div_ceil(pivot).max(-&self.coeff_max);
        let hi = (&self.bound - &partial[col]).div_floor(pivot).min(self.coeff_max.clone());
        let next_fixed = self.pivots.get(depth + 1).copied().unwrap_or(self.n);
        let mut m = lo;
        let mut current: Vec<BigInt> = partial.iter().zip(row).map(|(p, v)| p + &m * v).collect();
        while m <= hi {
            // columns strictly between this pivot and the next are now final
            let in_ball = current[col + 1..next_fixed].iter().all(|v| v.abs() <= self.bound);
            if in_ball && visitor.keep(&current, next_fixed) {
                coeffs.push(m.clone());
                if depth + 1 == self.rows.len() {
                    visitor.leaf(coeffs, &current);
                } else {
                    self.descend(depth + 1, &current, coeffs, visitor);
                }
                coeffs.pop();
            }
            for (c, v) in current.iter_mut().zip(row) {
                *c += v;
            }
            m += 1;
        }
    }
}
