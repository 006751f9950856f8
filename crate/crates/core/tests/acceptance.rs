//! Acceptance criteria, one PASS/FAIL line each. All comparisons are exact.

mod common;

use std::panic::{catch_unwind, AssertUnwindSafe};
use std::process::ExitCode;
use std::time::{Duration, Instant};

use common::*;
use num_traits::{Signed, Zero};
use rrfinite::cli::{self, rr_check, sample_points, two_vertex_pattern};
use rrfinite::examples;
use rrfinite::rational::int;
use rrfinite::{
    leq, negative_part, positive_part, taxicab, RRStructure, RegionSpec, SubgroupLattice,
};

type Outcome = Result<String, String>;

macro_rules! ensure {
    ($cond:expr, $($msg:tt)+) => {
        if !$cond {
            return Err(format!($($msg)+));
        }
    };
}

fn run_cli(args: &[&str]) -> (i32, String, String) {
    let mut out = Vec::new();
    let mut err = Vec::new();
    let code = cli::run(std::iter::once("rrfinite").chain(args.iter().copied()), &mut out, &mut err);
    (code, String::from_utf8(out).unwrap(), String::from_utf8(err).unwrap())
}

fn rr_structures() -> Vec<(&'static str, RRStructure)> {
    ["two-vertex-p4", "three-vertex-134", "nongraph-sec4", "nongraph-fig4-repaired"]
        .into_iter()
        .map(|name| (name, examples::lookup(name).unwrap()))
        .collect()
}

/// Riemann–Roch identity through rr-check: 1000 seeded samples on [−10, 10].
fn criterion_1() -> Outcome {
    let start = Instant::now();
    for (name, _) in rr_structures() {
        let (code, out, err) = run_cli(&["rr-check", name, "--samples", "1000", "--seed", "42", "--box", "-10..10"]);
        ensure!(code == 0, "{name}: exit {code}\n{out}{err}");
        ensure!(out.contains("violations: 0/1000") && out.contains("max |residual|: 0\n"), "{name}: {out}");
    }
    let elapsed = start.elapsed();
    ensure!(elapsed < Duration::from_secs(60), "took {elapsed:?}, budget 60 s");
    Ok(format!("4 structures x 1000 samples, all residuals 0, {:.1} s", elapsed.as_secs_f64()))
}

/// Pruned ℓ equals the minimum over enumerate_ball at twice the certified radius.
fn criterion_2() -> Outcome {
    let mut structures = rr_structures();
    structures.push(("nongraph-fig4-printed", examples::nongraph_fig4_printed()));
    let mut total = 0;
    for (i, (name, s)) in structures.iter().enumerate() {
        let mut rng = Mix(1000 + i as u64);
        for _ in 0..200 {
            let x = rng.divisor(s.n(), -5, 5, 2);
            let pruned = s.ell(&x).unwrap();
            let oracle = ell_by_doubled_ball(s, &x);
            ensure!(pruned == oracle, "{name} at {x}: pruned {pruned}, oracle {oracle}");
            total += 1;
        }
    }
    Ok(format!("{total} points over {} structures agree exactly", structures.len()))
}

/// Non-graph certificate: (2,2) and (±1,±1) are not in ⟨(−4,4)⟩, and no
/// two-vertex graph reproduces nongraph-sec4.
fn criterion_3() -> Outcome {
    let h = SubgroupLattice::build(2, vec![d(&[-4, 4])]).unwrap();
    for b in [d(&[2, 2]), d(&[1, 1]), d(&[-1, -1])] {
        ensure!(h.member(&b).unwrap().is_none(), "{b} unexpectedly in H");
    }
    let s = examples::nongraph_sec4();
    let pattern = two_vertex_pattern(&s).unwrap();
    ensure!(!pattern.reproduced(), "pattern {pattern:?}");
    ensure!(two_vertex_pattern(&examples::two_vertex(int(4)).unwrap()).unwrap().reproduced(), "p4 control");
    let (code, out, _) = run_cli(&["verify", "nongraph-sec4"]);
    ensure!(code == 0, "verify exit {code}\n{out}");
    ensure!(out.contains("forces p = 4") && out.contains("no two-vertex graph reproduces this structure"), "{out}");
    Ok("member = false for (2,2), (1,1), (-1,-1); verify reports no two-vertex graph match".into())
}

/// from-graph reproduces H, κ, g and ν for the two- and three-vertex graphs.
fn criterion_4() -> Outcome {
    let dir = std::env::temp_dir().join(format!("rrfinite-acceptance-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let cases = [
        (
            "two",
            r#"{"n": 2, "edges": [[1, 2, "4"]]}"#,
            "2",
            vec![d(&[4, -4])],
            d(&[2, 2]),
            int(3),
            vec![d(&[3, -1])],
        ),
        (
            "three",
            r#"{"n": 3, "edges": [[1, 2, "1"], [1, 3, "3"], [2, 3, "4"]]}"#,
            "1",
            vec![d(&[4, -1, -3]), d(&[-1, 5, -4])],
            d(&[2, 3, 5]),
            int(6),
            vec![d(&[-1, 0, 6]), d(&[-1, 4, 2])],
        ),
    ];
    for (tag, graph, base, h, kappa, genus, nus) in cases {
        let gpath = dir.join(format!("{tag}.graph.json"));
        let spath = dir.join(format!("{tag}.structure.json"));
        std::fs::write(&gpath, graph).unwrap();
        let (code, _, err) = run_cli(&[
            "from-graph",
            gpath.to_str().unwrap(),
            "--base-vertex",
            base,
            "-o",
            spath.to_str().unwrap(),
        ]);
        ensure!(code == 0, "{tag}: exit {code}: {err}");
        let s = RRStructure::from_json(&std::fs::read_to_string(&spath).unwrap()).unwrap();
        ensure!(s.lattice().generators() == h.as_slice(), "{tag}: H = {:?}", s.lattice().generators());
        ensure!(s.kappa() == &kappa, "{tag}: kappa = {}", s.kappa());
        ensure!(s.genus() == &genus, "{tag}: g = {}", s.genus());
        ensure!(s.nu_generators() == nus.as_slice(), "{tag}: nu = {:?}", s.nu_generators());
    }
    let builtin = examples::lookup("two-vertex-p4").unwrap().to_json();
    ensure!(std::fs::read_to_string(dir.join("two.structure.json")).unwrap() == builtin, "two-vertex differs from built-in");
    std::fs::remove_dir_all(&dir).ok();
    Ok("H, kappa, g, nu exact for p=4 (base vertex 2) and (1,3,4) (base vertex 1)".into())
}

fn permutations_from(base: usize, n: usize) -> Vec<Vec<usize>> {
    let rest: Vec<usize> = (0..n).filter(|&v| v != base).collect();
    let mut out = Vec::new();
    fn go(prefix: &mut Vec<usize>, rest: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if rest.is_empty() {
            out.push(prefix.clone());
        }
        for i in 0..rest.len() {
            let v = rest.remove(i);
            prefix.push(v);
            go(prefix, rest, out);
            prefix.pop();
            rest.insert(i, v);
        }
    }
    go(&mut vec![base], &mut rest.clone(), &mut out);
    out
}

/// Every ordering's ν has degree g − 1 and graph structures are symmetric.
fn criterion_5() -> Outcome {
    let mut rng = Mix(5);
    let mut orderings = 0;
    for trial in 0..100 {
        let n = rng.range(2, 6) as usize;
        let g = random_graph(&mut rng, n, 3);
        let genus = g.genus();
        let base = rng.range(1, n as i64) as usize;
        for order in permutations_from(base - 1, n) {
            // ν(j_1) = −1, ν(j_l) = −1 + Σ_{i<l} w(j_i, j_l), evaluated directly
            let mut degree = int(0);
            for (l, &v) in order.iter().enumerate() {
                degree += order[..l].iter().map(|&u| g.weight(u, v).clone()).sum::<rrfinite::Rational>() - int(1);
            }
            ensure!(degree == &genus - int(1), "trial {trial}: ordering {order:?} has degree {degree}");
            ensure!(g.nu_for_order(&order).degree() == degree, "trial {trial}: nu_for_order disagrees");
            orderings += 1;
        }
        let s = g.to_structure(base).unwrap();
        ensure!(s.verify_symmetry().holds(), "trial {trial}: symmetry fails for {:?}", g.to_file());
    }
    Ok(format!("100 graphs, {orderings} orderings, all deg nu = g-1, all symmetric"))
}

/// ℓ_sec4(x) = ℓ_p4(x + (1,1)) on a 41×41 grid over [−5, 5]².
fn criterion_6() -> Outcome {
    let sec4 = examples::nongraph_sec4();
    let p4 = examples::two_vertex(int(4)).unwrap();
    let spec = RegionSpec::cube(2, int(-5), int(5), 41).unwrap();
    let table = rrfinite::sample_region(&sec4, &spec).unwrap();
    ensure!(table.rows.len() == 41 * 41, "grid size {}", table.rows.len());
    let shift = d(&[1, 1]);
    for (x, v) in &table.rows {
        let w = p4.ell(&(x + &shift)).unwrap();
        ensure!(v == &w, "at {x}: {v} vs {w}");
    }
    let zero = table.rows.iter().filter(|(_, v)| v.is_zero()).count();
    Ok(format!("1681 grid points agree ({zero} with ell = 0)"))
}

/// Broken example diagnosis: the printed triple fails deg κ = 2g − 2; κ = (1,7) repairs it.
fn criterion_7() -> Outcome {
    let (code, out, _) = run_cli(&["verify", "nongraph-fig4-printed"]);
    ensure!(code == 1, "printed: exit {code}\n{out}");
    ensure!(out.contains("degree: deg(kappa) = 0, 2g-2 = 8: FAIL"), "{out}");
    let repaired = examples::nongraph_fig4_repaired();
    ensure!(repaired.verify_symmetry().holds(), "repaired symmetry");
    ensure!(repaired.degree_report().holds(), "repaired degrees");
    let (code, out, _) = run_cli(&["verify", "nongraph-fig4-repaired"]);
    ensure!(code == 0, "repaired verify exit {code}\n{out}");
    let points = sample_points(&vec![(int(-10), int(10)); 2], 1, 1000, 7).unwrap();
    let report = rr_check(&repaired, &points);
    ensure!(report.violations == 0, "{}", report.summary());
    let printed = rr_check(&examples::nongraph_fig4_printed(), &points);
    ensure!(printed.violations > 0, "printed triple should violate RR");
    Ok(format!(
        "printed flagged (deg kappa 0 != 8, {} RR violations in 1000); repaired passes",
        printed.violations
    ))
}

/// Property suites on 500 seeded instances each.
fn criterion_8() -> Outcome {
    let structures = rr_structures();
    let mut rng = Mix(8);
    for i in 0..500 {
        let (name, s) = &structures[i % structures.len()];
        let x = rng.divisor(s.n(), -10, 10, 3);
        let y = rng.divisor(s.n(), -10, 10, 3);
        let lx = s.ell(&x).unwrap();
        ensure!(!lx.is_negative(), "{name}: ell({x}) < 0");
        let gens = s.lattice().generators();
        let h = gens[i % gens.len()].scale(&int(rng.range(-3, 3)));
        ensure!(s.ell(&(&x + &h)).unwrap() == lx, "{name}: H-invariance at {x}, h = {h}");
        let above = &x + &positive_part(&y);
        ensure!(leq(&x, &above).unwrap(), "construction");
        ensure!(lx <= s.ell(&above).unwrap(), "{name}: monotonicity at {x} <= {above}");
        let ly = s.ell(&y).unwrap();
        ensure!((&lx - &ly).abs() <= taxicab(&x, &y).unwrap(), "{name}: 1-Lipschitz at {x}, {y}");
        ensure!(&positive_part(&x) + &negative_part(&x) == x, "x = x+ + x- at {x}");
        ensure!(positive_part(&x) == -negative_part(&-&x), "x+ = -(-x)- at {x}");
    }
    Ok("500 instances: ell >= 0, H-invariance, monotonicity, 1-Lipschitz, sign identities".into())
}

type Criterion = (&'static str, fn() -> Outcome);

fn main() -> ExitCode {
    let criteria: Vec<Criterion> = vec![
        ("1 Riemann-Roch identity (rr-check)", criterion_1),
        ("2 pruned ell = doubled-ball oracle", criterion_2),
        ("3 non-graph certificate", criterion_3),
        ("4 graph construction fidelity", criterion_4),
        ("5 nu-degree invariant and symmetry", criterion_5),
        ("6 shift by (-1,-1)", criterion_6),
        ("7 broken-example diagnosis", criterion_7),
        ("8 property suites", criterion_8),
    ];
    let results: Vec<(String, Outcome)> = std::thread::scope(|scope| {
        let handles: Vec<_> = criteria
            .iter()
            .map(|(name, f)| {
                let f = *f;
                (name, scope.spawn(move || catch_unwind(AssertUnwindSafe(f))))
            })
            .collect();
        handles
            .into_iter()
            .map(|(name, h)| {
                let outcome = match h.join().unwrap() {
                    Ok(o) => o,
                    Err(p) => Err(p
                        .downcast_ref::<String>()
                        .cloned()
                        .or_else(|| p.downcast_ref::<&str>().map(|s| s.to_string()))
                        .unwrap_or_else(|| "panic".into())),
                };
                (name.to_string(), outcome)
            })
            .collect()
    });
    let mut failed = 0;
    for (name, outcome) in &results {
        match outcome {
            Ok(msg) => println!("PASS criterion {name}: {msg}"),
            Err(msg) => {
                failed += 1;
                println!("FAIL criterion {name}: {msg}");
            }
        }
    }
    println!("{} passed, {failed} failed", results.len() - failed);
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}

