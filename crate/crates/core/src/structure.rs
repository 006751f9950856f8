//! Riemann–Roch instances (n, g, κ, 𝒩, H) and the dimension function ℓ.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::Signed;
use serde::{Deserialize, Serialize};

use crate::divisor::Divisor;
use crate::error::{Error, Result};
use crate::lattice::{BallVisitor, SubgroupLattice};
use crate::rational::{common_denominator, int, serde_str, Rational};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RRStructure {
    n: usize,
    genus: Rational,
    kappa: Divisor,
    nu_generators: Vec<Divisor>,
    lattice: SubgroupLattice,
    allow_broken: bool,
}

/// On-disk form of a structure. Rationals are strings `a/b` or `a`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct StructureFile {
    pub n: usize,
    #[serde(with = "serde_str")]
    pub genus: Rational,
    pub kappa: Divisor,
    pub nu_generators: Vec<Divisor>,
    #[serde(rename = "H")]
    pub h: Vec<Divisor>,
    #[serde(default, skip_serializing_if = "std::ops::Not::not")]
    pub allow_broken: bool,
}

/// Which degree hypotheses an instance satisfies.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DegreeReport {
    pub kappa_degree: Rational,
    pub expected_kappa_degree: Rational,
    /// Degree of each ν-generator; all should equal g − 1.
    pub nu_degrees: Vec<Rational>,
    pub expected_nu_degree: Rational,
}

impl DegreeReport {
    pub fn kappa_ok(&self) -> bool {
        self.kappa_degree == self.expected_kappa_degree
    }

    pub fn nu_ok(&self, i: usize) -> bool {
        self.nu_degrees[i] == self.expected_nu_degree
    }

    pub fn holds(&self) -> bool {
        self.kappa_ok() && (0..self.nu_degrees.len()).all(|i| self.nu_ok(i))
    }
}

/// For each ν_i: the index j and coefficients m with κ − ν_i − ν_j = Σ m·basis,
/// or `None` when κ − ν_i lies outside 𝒩.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SymmetryReport {
    pub partners: Vec<Option<(usize, Vec<BigInt>)>>,
}

impl SymmetryReport {
    pub fn holds(&self) -> bool {
        self.partners.iter().all(Option::is_some)
    }
}

/// A minimizer of ℓ(x): ν_generator + lattice point with the given basis coefficients.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EllWitness {
    pub value: Rational,
    pub generator: usize,
    pub coefficients: Vec<BigInt>,
}

impl RRStructure {
    /// Validates and assembles an instance. Exact duplicate ν-generators are
    /// dropped (first occurrence kept). Unless `allow_broken` is set, the
    /// degree hypotheses deg ν = g − 1 and deg κ = 2g − 2 are enforced.
    pub fn new(
        n: usize,
        genus: Rational,
        kappa: Divisor,
        nu_generators: Vec<Divisor>,
        h_generators: Vec<Divisor>,
        allow_broken: bool,
    ) -> Result<Self> {
        if n == 0 {
            return Err(Error::InvalidStructure("n must be at least 1".into()));
        }
        kappa.check_len(n)?;
        if nu_generators.is_empty() {
            return Err(Error::InvalidStructure("at least one nu generator is required".into()));
        }
        let mut unique: Vec<Divisor> = Vec::with_capacity(nu_generators.len());
        for nu in nu_generators {
            nu.check_len(n)?;
            if !unique.contains(&nu) {
                unique.push(nu);
            }
        }
        let lattice = SubgroupLattice::build_allow_trivial(n, h_generators)?;
        let s = RRStructure { n, genus, kappa, nu_generators: unique, lattice, allow_broken };
        if !allow_broken {
            let report = s.degree_report();
            if !report.kappa_ok() {
                return Err(Error::InvalidStructure(format!(
                    "deg(kappa) = {} but 2g-2 = {}",
                    report.kappa_degree, report.expected_kappa_degree
                )));
            }
            if let Some(i) = (0..s.nu_generators.len()).find(|&i| !report.nu_ok(i)) {
                return Err(Error::InvalidStructure(format!(
                    "deg(nu_{}) = {} but g-1 = {}",
                    i + 1,
                    report.nu_degrees[i],
                    report.expected_nu_degree
                )));
            }
        }
        Ok(s)
    }

    pub fn from_file(file: StructureFile) -> Result<Self> {
        RRStructure::new(file.n, file.genus, file.kappa, file.nu_generators, file.h, file.allow_broken)
    }

    pub fn from_json(text: &str) -> Result<Self> {
        RRStructure::from_file(serde_json::from_str(text)?)
    }

    pub fn to_file(&self) -> StructureFile {
        StructureFile {
            n: self.n,
            genus: self.genus.clone(),
            kappa: self.kappa.clone(),
            nu_generators: self.nu_generators.clone(),
            h: self.lattice.generators().to_vec(),
            allow_broken: self.allow_broken,
        }
    }

    /// Pretty JSON with a trailing newline.
    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(&self.to_file()).expect("structure serializes");
        s.push('\n');
        s
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn genus(&self) -> &Rational {
        &self.genus
    }

    pub fn kappa(&self) -> &Divisor {
        &self.kappa
    }

    pub fn nu_generators(&self) -> &[Divisor] {
        &self.nu_generators
    }

    pub fn lattice(&self) -> &SubgroupLattice {
        &self.lattice
    }

    pub fn allow_broken(&self) -> bool {
        self.allow_broken
    }

    pub fn degree_report(&self) -> DegreeReport {
        DegreeReport {
            kappa_degree: self.kappa.degree(),
            expected_kappa_degree: &self.genus * int(2) - int(2),
            nu_degrees: self.nu_generators.iter().map(Divisor::degree).collect(),
            expected_nu_degree: &self.genus - int(1),
        }
    }

    /// ℓ(x) = min over ν ∈ 𝒩 of deg((x − ν)⁺).
    pub fn ell(&self, x: &Divisor) -> Result<Rational> {
        Ok(self.ell_with_witness(x)?.value)
    }

    /// ℓ(x) with the lexicographically least minimizer (generator index, then
    /// basis coefficients).
    ///
    /// For h ∈ V₀, deg((y − h)⁺) ≥ ‖h‖∞/(n−1) − ‖y‖∞, so once a value B is
    /// attained no h outside the ball of radius (n−1)(B + ‖y‖∞) can do better.
    /// Inside that ball the echelon walk cuts any branch whose finalized
    /// coordinates already exceed B.
    pub fn ell_with_witness(&self, x: &Divisor) -> Result<EllWitness> {
        x.check_len(self.n)?;
        let offsets: Vec<Divisor> = self.nu_generators.iter().map(|nu| x - nu).collect();
        let mut best = offsets
            .iter()
            .map(|y| y.positive_part().degree())
            .min()
            .expect("at least one nu generator");
        let mut witness: Option<EllWitness> = None;
        let spread = int(self.n as i64 - 1);
        for (i, y) in offsets.iter().enumerate() {
            let radius = &spread * (&best + y.sup_norm());
            let denominator = common_denominator(y.iter()).lcm(self.lattice.scale());
            let target: Vec<BigInt> = y
                .iter()
                .map(|c| (c * Rational::from_integer(denominator.clone())).to_integer())
                .collect();
            let mut search = MinSearch {
                target: &target,
                best_scaled: &best * Rational::from_integer(denominator.clone()),
                found: None,
            };
            self.lattice.walk_scaled(&denominator, &radius, &mut search);
            if let Some((value, coefficients)) = search.found {
                let value = Rational::new(value, denominator);
                let better = witness.as_ref().is_none_or(|w| value < w.value);
                if better {
                    best = best.min(value.clone());
                    witness = Some(EllWitness { value, generator: i, coefficients });
                }
            }
        }
        Ok(witness.expect("h = 0 always attains the initial bound"))
    }

    /// ℓ(x) − ℓ(κ − x) − (deg x − g + 1).
    pub fn rr_residual(&self, x: &Divisor) -> Result<Rational> {
        x.check_len(self.n)?;
        let dual = &self.kappa - x;
        Ok(self.ell(x)? - self.ell(&dual)? - (x.degree() - &self.genus + int(1)))
    }

    /// Checks ν ∈ 𝒩 ⇒ κ − ν ∈ 𝒩 on generators. Since ν ↦ κ − ν is an
    /// involution commuting with H up to sign, this covers all of 𝒩.
    pub fn verify_symmetry(&self) -> SymmetryReport {
        let partners = self
            .nu_generators
            .iter()
            .map(|nu| {
                let dual = &self.kappa - nu;
                self.orbit_of(&dual).expect("lengths checked at construction")
            })
            .collect();
        SymmetryReport { partners }
    }

    /// First generator index j and coefficients with x − ν_j ∈ H.
    fn orbit_of(&self, x: &Divisor) -> Result<Option<(usize, Vec<BigInt>)>> {
        for (j, nu) in self.nu_generators.iter().enumerate() {
            if let Some(m) = self.lattice.member(&(x - nu))? {
                return Ok(Some((j, m)));
            }
        }
        Ok(None)
    }

    pub fn in_n(&self, x: &Divisor) -> Result<bool> {
        x.check_len(self.n)?;
        if x.degree() != &self.genus - int(1) {
            return Ok(false);
        }
        Ok(self.orbit_of(x)?.is_some())
    }

    pub fn equivalent(&self, x: &Divisor, y: &Divisor) -> Result<bool> {
        x.check_len(self.n)?;
        y.check_len(self.n)?;
        self.lattice.contains(&(x - y))
    }

    /// Pairs (i, j), i < j, of distinct generators lying in the same H-orbit.
    /// They are redundant but harmless.
    pub fn lint_equivalent_generators(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::new();
        for i in 0..self.nu_generators.len() {
            for j in i + 1..self.nu_generators.len() {
                let diff = &self.nu_generators[i] - &self.nu_generators[j];
                if self.lattice.contains(&diff).expect("equal lengths") {
                    out.push((i, j));
                }
            }
        }
        out
    }

    /// Copy with a different κ; used to build deliberately broken variants.
    pub fn with_kappa(&self, kappa: Divisor, allow_broken: bool) -> Result<Self> {
        RRStructure::new(
            self.n,
            self.genus.clone(),
            kappa,
            self.nu_generators.clone(),
            self.lattice.generators().to_vec(),
            allow_broken,
        )
    }
}

/// Best value of deg((y − h)⁺) over the walk, in units of 1/denominator.
struct MinSearch<'a> {
    target: &'a [BigInt],
    best_scaled: Rational,
    found: Option<(BigInt, Vec<BigInt>)>,
}

impl MinSearch<'_> {
    fn excess_upto(&self, h: &[BigInt], upto: usize) -> BigInt {
        self.target[..upto]
            .iter()
            .zip(&h[..upto])
            .map(|(t, v)| t - v)
            .filter(|d| d.is_positive())
            .sum()
    }
}

impl BallVisitor for MinSearch<'_> {
    fn keep(&mut self, partial: &[BigInt], fixed: usize) -> bool {
        Rational::from_integer(self.excess_upto(partial, fixed)) <= self.best_scaled
    }

    fn leaf(&mut self, coefficients: &[BigInt], point: &[BigInt]) {
        let value = self.excess_upto(point, point.len());
        let improves = match &self.found {
            None => true,
            Some((v, _)) => &value < v,
        };
        if improves {
            self.best_scaled = self.best_scaled.clone().min(Rational::from_integer(value.clone()));
            self.found = Some((value, coefficients.to_vec()));
        }
    }
}
