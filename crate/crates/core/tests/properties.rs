mod common;

use common::*;
use num_traits::{Signed, Zero};
use proptest::prelude::*;
use rrfinite::examples;
use rrfinite::rational::{int, ratio};
use rrfinite::{degree, leq, negative_part, positive_part, taxicab, Divisor, Rational, SubgroupLattice};

fn rational() -> impl Strategy<Value = Rational> {
    (-40i64..=40, 1i64..=4).prop_map(|(n, d)| ratio(n, d))
}

fn divisor(n: usize) -> impl Strategy<Value = Divisor> {
    prop::collection::vec(rational(), n).prop_map(|v| Divisor::new(v).unwrap())
}

fn divisor_pair() -> impl Strategy<Value = (Divisor, Divisor)> {
    (1usize..=5).prop_flat_map(|n| (divisor(n), divisor(n)))
}

/// Degree-zero integer generators, n ≤ 4, entries in [−9, 9].
fn small_lattice() -> impl Strategy<Value = SubgroupLattice> {
    (2usize..=4)
        .prop_flat_map(|n| {
            let gen = prop::collection::vec(-9i64..=9, n - 1).prop_map(move |mut v| {
                let s: i64 = v.iter().sum();
                v.push(-s);
                Divisor::from_ints(&v)
            });
            (Just(n), prop::collection::vec(gen, 1..=3))
        })
        .prop_map(|(n, gens)| SubgroupLattice::build(n, gens).unwrap())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(256))]

    #[test]
    fn sign_split_identities(x in (1usize..=5).prop_flat_map(divisor)) {
        prop_assert_eq!(&positive_part(&x) + &negative_part(&x), x.clone());
        prop_assert_eq!(positive_part(&x), -negative_part(&-&x));
    }

    #[test]
    fn degree_is_additive((x, y) in divisor_pair()) {
        prop_assert_eq!(degree(&(&x + &y)), degree(&x) + degree(&y));
    }

    #[test]
    fn taxicab_splits_into_excesses((x, y) in divisor_pair()) {
        let t = taxicab(&x, &y).unwrap();
        prop_assert_eq!(t.clone(), positive_part(&(&x - &y)).degree() + positive_part(&(&y - &x)).degree());
        if leq(&y, &x).unwrap() {
            prop_assert_eq!(positive_part(&(&x - &y)).degree(), t);
        }
    }

    #[test]
    fn lattice_closure(l in small_lattice(), a in -3i64..=3, b in -3i64..=3) {
        let gens = l.generators().to_vec();
        for g in &gens {
            prop_assert!(l.contains(g).unwrap());
        }
        let u = gens[0].scale(&int(a));
        let v = gens[gens.len() - 1].scale(&int(b));
        prop_assert!(l.contains(&(&u + &v)).unwrap());
        prop_assert!(l.contains(&(&u - &v)).unwrap());
        let m = l.member(&(&u - &v)).unwrap().unwrap();
        prop_assert_eq!(l.combine(&m), &u - &v);
    }

    #[test]
    fn ball_matches_brute_force(l in small_lattice(), r in 0i64..=6, half in any::<bool>()) {
        let radius = if half { ratio(2 * r + 1, 2) } else { int(r) };
        let bound = l.coefficient_bound(&radius);
        let bound: i64 = (bound * 2i64).try_into().unwrap();
        prop_assume!((2 * bound + 1).pow(l.rank() as u32) <= 200_000);
        let ball = l.enumerate_ball(&radius);
        prop_assert_eq!(&ball, &scan_ball(&l.basis(), l.dimension(), bound, &radius));
        prop_assert!(ball.contains(&Divisor::zero(l.dimension())));
        for h in &ball {
            prop_assert!(ball.contains(&-h));
            prop_assert!(l.contains(h).unwrap());
        }
        let smaller = l.enumerate_ball(&(radius.clone() / int(2)));
        prop_assert!(smaller.iter().all(|h| ball.contains(h)));
    }

    #[test]
    fn membership_matches_brute_force(l in small_lattice(), raw in prop::collection::vec(-12i64..=12, 4)) {
        let n = l.dimension();
        let mut v = raw[..n - 1].to_vec();
        v.push(-v.iter().sum::<i64>());
        let b = Divisor::from_ints(&v);
        let radius = b.sup_norm();
        let bound: i64 = (l.coefficient_bound(&radius) * 2i64).try_into().unwrap();
        prop_assume!((2 * bound + 1).pow(l.rank() as u32) <= 200_000);
        let expected = scan_ball(&l.basis(), n, bound, &radius).contains(&b);
        let got = l.member(&b).unwrap();
        prop_assert_eq!(got.is_some(), expected);
        if let Some(m) = got {
            prop_assert_eq!(l.combine(&m), b);
        }
    }
}

fn builtins() -> Vec<(&'static str, rrfinite::RRStructure)> {
    vec![
        ("two-vertex-p4", examples::two_vertex(int(4)).unwrap()),
        ("three-vertex-134", examples::three_vertex_134()),
        ("nongraph-sec4", examples::nongraph_sec4()),
        ("nongraph-fig4-repaired", examples::nongraph_fig4_repaired()),
    ]
}

#[test]
fn ell_agrees_with_generator_scan() {
    let mut rng = Mix(7);
    for (name, s) in builtins() {
        let bound = if s.lattice().rank() == 1 { 40 } else { 12 };
        for _ in 0..40 {
            let x = rng.divisor(s.n(), -10, 10, 2);
            assert_eq!(s.ell(&x).unwrap(), ell_by_generator_scan(&s, &x, bound), "{name} at {x}");
        }
    }
}

#[test]
fn ell_properties_on_builtins() {
    let mut rng = Mix(11);
    for (name, s) in builtins() {
        for nu in s.nu_generators() {
            assert!(s.ell(nu).unwrap().is_zero());
            assert!(s.ell(&(s.kappa() - nu)).unwrap().is_zero());
        }
        for _ in 0..60 {
            let x = rng.divisor(s.n(), -10, 10, 3);
            let y = rng.divisor(s.n(), -10, 10, 3);
            let lx = s.ell(&x).unwrap();
            let ly = s.ell(&y).unwrap();
            assert!(!lx.is_negative());
            assert!((&lx - &ly).abs() <= taxicab(&x, &y).unwrap(), "{name}: lipschitz");
            let up = &x + &positive_part(&y);
            assert!(lx <= s.ell(&up).unwrap(), "{name}: monotone");
            for g in s.lattice().generators() {
                assert_eq!(s.ell(&(&x + g)).unwrap(), lx, "{name}: H-invariance");
            }
            let lower = x.degree() - s.genus() + int(1);
            assert!(lx >= lower, "{name}: lower bound");
            let dual_zero = s.ell(&(s.kappa() - &x)).unwrap().is_zero();
            assert_eq!(lx == lower, dual_zero, "{name}: equality case");
            assert!(s.rr_residual(&x).unwrap().is_zero(), "{name}: RR at {x}");
        }
    }
}

#[test]
fn random_graph_structures_satisfy_rr() {
    let mut rng = Mix(3);
    for _ in 0..30 {
        let n = rng.range(2, 4) as usize;
        let g = random_graph(&mut rng, n, 2);
        let s = g.to_structure(1).unwrap();
        assert!(s.verify_symmetry().holds());
        for _ in 0..10 {
            let x = rng.divisor(n, -6, 6, 2);
            assert!(s.rr_residual(&x).unwrap().is_zero(), "graph {:?} at {x}", g.to_file());
            if n <= 3 {
                let x = rng.divisor(n, -3, 3, 2);
                assert_eq!(s.ell(&x).unwrap(), ell_by_doubled_ball(&s, &x));
            }
        }
    }
}

/// Different base vertices give different generator sets; ℓ agreement is
/// checked empirically, not assumed.
#[test]
fn base_vertex_independence_of_ell() {
    let mut rng = Mix(19);
    for _ in 0..20 {
        let n = rng.range(2, 4) as usize;
        let g = random_graph(&mut rng, n, 1);
        let s1 = g.to_structure(1).unwrap();
        let s2 = g.to_structure(n).unwrap();
        for _ in 0..10 {
            let x = rng.divisor(n, -5, 5, 1);
            assert_eq!(s1.ell(&x).unwrap(), s2.ell(&x).unwrap(), "graph {:?} at {x}", g.to_file());
        }
    }
}

#[test]
fn laplacian_generator_shape() {
    let mut rng = Mix(23);
    for _ in 0..50 {
        let n = rng.range(2, 6) as usize;
        let g = random_graph(&mut rng, n, 3);
        for (i, h) in g.laplacian_generators().iter().enumerate() {
            assert!(h.degree().is_zero());
            for (j, c) in h.iter().enumerate() {
                if i == j {
                    assert!(c.is_positive());
                } else {
                    assert!(!c.is_positive());
                }
            }
        }
    }
}
