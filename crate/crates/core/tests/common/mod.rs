#![allow(dead_code, clippy::needless_range_loop)]

use num_bigint::BigInt;
use num_traits::Zero;
use rrfinite::rational::{int, ratio};
use rrfinite::{excess, Divisor, RRStructure, Rational, WeightedGraph};

pub fn d(v: &[i64]) -> Divisor {
    Divisor::from_ints(v)
}

/// Brute-force lattice scan: every Σ m_i b_i over the basis with |m_i| ≤ bound
/// whose ∞-norm is at most `radius`, sorted by coefficient vector.
pub fn scan_ball(basis: &[Divisor], n: usize, bound: i64, radius: &Rational) -> Vec<Divisor> {
    let k = basis.len();
    let mut out = Vec::new();
    let mut m = vec![-bound; k];
    loop {
        let mut h = Divisor::zero(n);
        for (c, b) in m.iter().zip(basis) {
            h = &h + &b.scale(&int(*c));
        }
        if &h.sup_norm() <= radius {
            out.push(h);
        }
        // odometer, last coefficient fastest
        let mut i = k;
        loop {
            if i == 0 {
                return out;
            }
            i -= 1;
            if m[i] < bound {
                m[i] += 1;
                break;
            }
            m[i] = -bound;
        }
    }
}

/// ℓ by scanning ν_i + Σ m_j g_j over the original generators with |m_j| ≤ bound.
pub fn ell_by_generator_scan(s: &RRStructure, x: &Divisor, bound: i64) -> Rational {
    let gens = s.lattice().generators();
    let n = s.n();
    let mut best: Option<Rational> = None;
    for nu in s.nu_generators() {
        for h in scan_ball(gens, n, bound, &int(i64::MAX)) {
            let v = excess(x, &(nu + &h)).unwrap();
            best = Some(match best {
                Some(b) if b <= v => b,
                _ => v,
            });
        }
    }
    best.unwrap()
}

/// ℓ as the minimum over enumerate_ball at twice the certified radius
/// (n − 1)(B₀ + ‖x − ν_i‖∞), B₀ the value at h = 0.
pub fn ell_by_doubled_ball(s: &RRStructure, x: &Divisor) -> Rational {
    let spread = int(s.n() as i64 - 1);
    let b0 = s
        .nu_generators()
        .iter()
        .map(|nu| excess(x, nu).unwrap())
        .min()
        .unwrap();
    s.nu_generators()
        .iter()
        .map(|nu| {
            let y = x - nu;
            let radius = int(2) * &spread * (&b0 + y.sup_norm());
            s.lattice()
                .enumerate_ball(&radius)
                .iter()
                .map(|h| excess(&y, h).unwrap())
                .min()
                .unwrap()
        })
        .min()
        .unwrap()
}

/// Small deterministic PRNG (splitmix64) so fixtures do not depend on the
/// library's own sampling.
pub struct Mix(pub u64);

impl Mix {
    pub fn next(&mut self) -> u64 {
        self.0 = self.0.wrapping_add(0x9E37_79B9_7F4A_7C15);
        let mut z = self.0;
        z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
        z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
        z ^ (z >> 31)
    }

    /// Uniform in lo..=hi.
    pub fn range(&mut self, lo: i64, hi: i64) -> i64 {
        lo + (self.next() % ((hi - lo + 1) as u64)) as i64
    }

    pub fn rational(&mut self, lo: i64, hi: i64, max_den: i64) -> Rational {
        let den = self.range(1, max_den);
        ratio(self.range(lo * den, hi * den), den)
    }

    pub fn divisor(&mut self, n: usize, lo: i64, hi: i64, max_den: i64) -> Divisor {
        Divisor::new((0..n).map(|_| self.rational(lo, hi, max_den)).collect()).unwrap()
    }
}

/// Random connected graph: a random spanning tree with positive weights plus
/// random extra edges, weights in [0, 5] with denominators up to `max_den`.
pub fn random_graph(rng: &mut Mix, n: usize, max_den: i64) -> WeightedGraph {
    let mut w = vec![vec![Rational::zero(); n]; n];
    for v in 1..n {
        let u = rng.range(0, v as i64 - 1) as usize;
        let mut weight = rng.rational(0, 5, max_den);
        if weight.is_zero() {
            weight = int(1);
        }
        w[u][v] = weight.clone();
        w[v][u] = weight;
    }
    for i in 0..n {
        for j in i + 1..n {
            if w[i][j].is_zero() && rng.range(0, 1) == 1 {
                let weight = rng.rational(0, 5, max_den);
                w[i][j] = weight.clone();
                w[j][i] = weight;
            }
        }
    }
    WeightedGraph::from_matrix(w).expect("spanning tree keeps it connected")
}

pub fn big(v: i64) -> BigInt {
    BigInt::from(v)
}
