//! End-to-end acceptance checks, one line of output per criterion.

#[path = "../../core/tests/common/mod.rs"]
mod common;

use std::panic::{catch_unwind, AssertUnwindSafe};
use std::path::{Path, PathBuf};
use std::process::Command;
use std::sync::Arc;

use coincide_core::algebra::{smith_normal_form, FgAbelianGroup, IntegerMatrix};
use coincide_core::removability::{pi_sphere_status, Assessment, FiberDescription, PiStatus};
use coincide_core::{
    condition_a, condition_a_star, homology, removability_verdict, BigInt, BigRational, Coefficients, FinalVerdict,
    HomotopyGroupTable, ProblemFile, SimplicialComplex, SimplicialPair, ThreeValued, DEGREE_ZERO_SIGN,
};
use common::*;
use num_traits::{One, Signed, ToPrimitive, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde_json::Value;

fn q(v: i64) -> BigRational {
    BigRational::from_integer(v.into())
}

fn load(name: &str) -> ProblemFile {
    ProblemFile::load(&fixtures_dir().join(name)).unwrap_or_else(|e| panic!("{name}: {e}"))
}

fn runnable_fixtures() -> Vec<PathBuf> {
    let mut files: Vec<PathBuf> = std::fs::read_dir(fixtures_dir())
        .unwrap()
        .map(|e| e.unwrap().path())
        .filter(|p| p.extension().is_some_and(|e| e == "problem"))
        .collect();
    files.sort();
    files
}

fn cli(args: &[&str]) -> (i32, Vec<u8>) {
    let out = Command::new(env!("CARGO_BIN_EXE_coincide")).args(args).output().unwrap();
    assert!(out.status.code().is_some(), "killed by signal");
    (out.status.code().unwrap(), out.stdout)
}

fn cli_json(cmd: &str, file: &Path) -> Value {
    let (code, out) = cli(&["--format", "json", cmd, &file.display().to_string()]);
    assert_eq!(code, 0, "{cmd} {}", file.display());
    serde_json::from_slice(&out).unwrap()
}

fn homology_ground_truth() {
    let cx = read_complexes(&fixtures_dir().join("canonical.problem"));
    let g = |rank, torsion: &[i128]| OracleGroup { rank, torsion: torsion.to_vec() };
    let textbook = [
        ("point", vec![g(1, &[])]),
        ("S1", vec![g(1, &[]), g(1, &[])]),
        ("S2", vec![g(1, &[]), g(0, &[]), g(1, &[])]),
        ("T2", vec![g(1, &[]), g(2, &[]), g(1, &[])]),
        ("RP2", vec![g(1, &[]), g(0, &[2]), g(0, &[])]),
    ];
    let library = |order: &[String], tops: &[Vec<String>]| Arc::new(SimplicialComplex::new(order, tops).unwrap());
    let as_oracle = |groups: Vec<FgAbelianGroup>| -> Vec<OracleGroup> {
        groups
            .iter()
            .map(|x| OracleGroup { rank: x.rank(), torsion: x.torsion().iter().map(|t| t.to_i128().unwrap()).collect() })
            .collect()
    };
    for (name, expected) in textbook {
        let (order, tops) = &cx[name];
        let oracle = oracle_homology(&OracleComplex::new(order, tops), &[]);
        assert_eq!(oracle, expected, "oracle on {name}");
        let h = homology(&SimplicialPair::absolute(library(order, tops)), Coefficients::Integers).groups();
        assert_eq!(as_oracle(h), expected, "library on {name}");
    }
    let (order, tops) = &cx["D2"];
    let (sub_order, sub_tops) = &cx["D2_boundary"];
    let expected = vec![g(0, &[]), g(0, &[]), g(1, &[])];
    assert_eq!(oracle_homology(&OracleComplex::new(order, tops), sub_tops), expected);
    let pair = SimplicialPair::new(library(order, tops), library(sub_order, sub_tops)).unwrap();
    assert_eq!(as_oracle(homology(&pair, Coefficients::Integers).groups()), expected);
}

fn smith_contract() {
    let mut rng = ChaCha8Rng::seed_from_u64(2024);
    for i in 0..1200 {
        let (r, c) = (rng.gen_range(1..=7), rng.gen_range(1..=7));
        let bound = if i % 3 == 0 { 3 } else { 40 };
        let a: Vec<Vec<i64>> = (0..r).map(|_| (0..c).map(|_| rng.gen_range(-bound..=bound)).collect()).collect();
        let m = IntegerMatrix::from_i64_rows(&a);
        let s = smith_normal_form(&m);
        assert_eq!(&(&s.u * &m) * &s.v, s.d, "U A V = D on {a:?}");
        assert!(s.u.determinant().abs().is_one() && s.v.determinant().abs().is_one(), "unimodular on {a:?}");
        let f = s.invariant_factors();
        for w in f.windows(2) {
            assert!((&w[1] % &w[0]).is_zero(), "divisibility on {a:?}");
        }
        for i in 0..s.d.rows() {
            for j in 0..s.d.cols() {
                let expected = if i == j && i < f.len() { f[i].clone() } else { BigInt::zero() };
                assert_eq!(*s.d.get(i, j), expected);
            }
        }
        if r <= 5 && c <= 5 && bound <= 3 {
            let lib: Vec<i128> = f.iter().map(|d| d.abs().to_i128().unwrap()).collect();
            assert_eq!(lib, naive_invariant_factors(&a), "oracle on {a:?}");
        }
    }
}

fn duality() {
    for (file, name) in [("s2_identity.problem", "s2_identity"), ("t2_identity.problem", "t2_identity"), ("disk_relative.problem", "disk_identity")] {
        let pf = load(file);
        let setup = &pf.problem(name).unwrap().setup;
        let d = setup.duality();
        let n = d.dimension();
        for deg in 0..=n {
            let fwd = d.forward(deg);
            let inv = d.inverse(deg);
            assert!((fwd * inv).is_identity(), "{name}: D D^-1 in degree {deg}");
            assert!((inv * fwd).is_identity(), "{name}: D^-1 D in degree {deg}");
            assert_eq!(setup.target().rank(deg), setup.target_absolute().rank(n - deg), "{name}: ranks in degree {deg}");
        }
    }
}

fn normalization() {
    let mut epsilons = Vec::new();
    for path in runnable_fixtures() {
        let pf = ProblemFile::load(&path).unwrap();
        for spec in &pf.problems {
            for p in spec.problems() {
                let aug = p.lefschetz_homomorphism().unwrap().augmentation;
                let sign = if spec.n() % 2 == 0 { q(1) } else { q(-1) };
                let pairing = p.index_pairing().unwrap();
                assert_eq!(pairing, sign * p.lefschetz_number().unwrap());
                if pairing.is_zero() {
                    assert!(aug.is_zero(), "{}: aug {aug} against zero pairing", spec.name);
                } else {
                    epsilons.push(aug / pairing);
                }
            }
        }
    }
    assert!(!epsilons.is_empty());
    assert!(epsilons.iter().all(|e| *e == q(DEGREE_ZERO_SIGN.into())), "{epsilons:?}");
}

fn classical_values() {
    let one = |file: &str, name: &str| {
        let pf = load(file);
        pf.problem(name).unwrap().problems()[0].lefschetz_number().unwrap()
    };
    let id = one("s2_identity.problem", "s2_identity");
    let constant = one("s2_constant.problem", "s2_id_const");
    assert_eq!(id.abs(), q(2));
    assert_eq!(constant.abs(), q(1));
    assert!(id.denom().is_one() && constant.denom().is_one());
}

fn linearity_and_additivity() {
    let mut rng = ChaCha8Rng::seed_from_u64(6);
    let pf = load("additivity.problem");
    for spec in &pf.problems {
        let ps = spec.problems();
        let (l, l1, l2) = (ps[0].lefschetz_number().unwrap(), ps[1].lefschetz_number().unwrap(), ps[2].lefschetz_number().unwrap());
        assert_eq!(l, &l1 + &l2, "{}: disjoint union", spec.name);
        for _ in 0..50 {
            let alpha = BigRational::new(rng.gen_range(-30..=30).into(), rng.gen_range(1..=12).into());
            let beta = BigRational::new(rng.gen_range(-30..=30).into(), rng.gen_range(1..=12).into());
            let z: Vec<BigRational> = ps[1].z().iter().zip(ps[2].z()).map(|(a, b)| &alpha * a + &beta * b).collect();
            let combined = ps[0].with_z(z).unwrap().lefschetz_number().unwrap();
            assert_eq!(combined, &alpha * &l1 + &beta * &l2, "{}", spec.name);
        }
    }
    for (file, name) in [("s2_identity.problem", "s2_identity"), ("t2_identity.problem", "t2_identity"), ("acyclic_fiber.problem", "wrap_acyclic")] {
        let p = &load(file).problem(name).unwrap().problems()[0];
        let l = p.lefschetz_number().unwrap();
        for _ in 0..20 {
            let alpha = BigRational::new(rng.gen_range(-30..=30).into(), rng.gen_range(1..=12).into());
            let z: Vec<BigRational> = p.z().iter().map(|x| &alpha * x).collect();
            assert_eq!(p.with_z(z).unwrap().lefschetz_number().unwrap(), &alpha * &l, "{name}");
        }
    }
}

/// Expected `(A*)` from the listed facts alone: `π_{n+m-1}(S^{n-1})`.
fn a_star_oracle(m: u32, n: u32) -> ThreeValued {
    let listed_zero = match m {
        _ if n == 2 => m >= 1,
        4 => n >= 6,
        5 => n >= 7,
        12 => matches!(n, 7..=9) || n >= 14,
        _ => false,
    };
    if m == 0 {
        ThreeValued::Fails
    } else if listed_zero {
        ThreeValued::Holds
    } else {
        ThreeValued::Unknown
    }
}

fn homotopy_table() {
    let t = HomotopyGroupTable::builtin();
    for m in 0..=16 {
        for n in 2..=24 {
            assert_eq!(condition_a_star(m, n, &t), a_star_oracle(m, n), "(A*) at m = {m}, n = {n}");
        }
    }
    for (m, ns) in [(4, vec![6, 7, 8, 20]), (5, vec![7, 8, 30]), (12, vec![7, 8, 9, 14, 15, 16])] {
        for n in ns {
            assert_eq!(condition_a_star(m, n, &t), ThreeValued::Holds, "listed m = {m}, n = {n}");
        }
    }
    for k in 2..=40 {
        assert_eq!(pi_sphere_status(k, 1, &t), PiStatus::Zero, "pi_{k}(S^1)");
    }
    for j in 1..=40 {
        assert!(matches!(pi_sphere_status(j, j, &t), PiStatus::Nonzero(_)), "pi_{j}(S^{j})");
    }
    for (k, j) in [(3, 2), (4, 3), (6, 3), (10, 4), (14, 7), (20, 9)] {
        assert_eq!(pi_sphere_status(k, j, &t), PiStatus::Unknown, "pi_{k}(S^{j}) is not listed");
    }
}

fn random_group(rng: &mut ChaCha8Rng) -> FgAbelianGroup {
    let rank = rng.gen_range(0..3);
    let orders: Vec<BigInt> = (0..rng.gen_range(0..3)).map(|_| BigInt::from(rng.gen_range(2..30))).collect();
    FgAbelianGroup::from_cyclic_orders(rank, orders)
}

fn lemma_and_corollaries() {
    let t = HomotopyGroupTable::builtin();
    for m in 1..=12 {
        for n in 2..=20 {
            assert_eq!(condition_a(&FiberDescription::Acyclic, m, n, &t).verdict, ThreeValued::Holds, "acyclic m = {m}, n = {n}");
        }
    }
    let mut rng = ChaCha8Rng::seed_from_u64(8);
    for _ in 0..300 {
        let m = rng.gen_range(1..=8);
        let fiber: Vec<FgAbelianGroup> = (0..=m + 1).map(|_| random_group(&mut rng)).collect();
        let a = condition_a(&FiberDescription::Cohomology(fiber.clone()), m, 2, &t);
        assert_eq!(a.verdict, ThreeValued::Holds, "surface target with fiber {fiber:?}");
    }
    for (m, n) in [(4, 6), (4, 9), (5, 7), (5, 11), (12, 7), (12, 8), (12, 9), (12, 14), (12, 15), (12, 16)] {
        assert_eq!(
            condition_a(&FiberDescription::HomologySpheres, m, n, &t).verdict,
            ThreeValued::Holds,
            "sphere fibers m = {m}, n = {n}"
        );
    }
}

fn verdict_gates() {
    let assess = |v| Assessment { verdict: v, reasons: vec![], citations: vec![] };
    let expected = |pairings: &[BigRational], a: ThreeValued| {
        if pairings.iter().any(|p| !p.is_zero()) {
            FinalVerdict::BlockedByIndex
        } else if a == ThreeValued::Holds {
            FinalVerdict::Removable
        } else {
            FinalVerdict::Inconclusive
        }
    };
    let index_cases = [vec![q(0), q(0)], vec![q(0), BigRational::new(1.into(), 3.into())], vec![q(2), q(-5)]];
    for pairings in &index_cases {
        for a in [ThreeValued::Holds, ThreeValued::Fails, ThreeValued::Unknown] {
            let r = removability_verdict(pairings, &assess(a)).unwrap();
            assert_eq!(r.final_verdict, expected(pairings, a), "{pairings:?} with (A) {a:?}");
        }
    }
    let mut rng = ChaCha8Rng::seed_from_u64(9);
    for _ in 0..2000 {
        let pairings: Vec<BigRational> = (0..rng.gen_range(1..6))
            .map(|_| if rng.gen_bool(0.7) { q(0) } else { BigRational::new(rng.gen_range(-9..=9).into(), rng.gen_range(1..5).into()) })
            .collect();
        let a = [ThreeValued::Holds, ThreeValued::Fails, ThreeValued::Unknown][rng.gen_range(0..3)];
        let r = removability_verdict(&pairings, &assess(a)).unwrap();
        assert_eq!(r.final_verdict, expected(&pairings, a), "{pairings:?} with (A) {a:?}");
    }
    assert!(removability_verdict(&[], &assess(ThreeValued::Holds)).is_err());
}

fn coincidence_producing() {
    let file = fixtures_dir().join("s2_degree.problem");
    let produce = cli_json("produce", &file);
    let lefschetz = cli_json("lefschetz", &file);
    let results = produce["results"].as_array().unwrap();
    assert_eq!(results.len(), 6);
    for e in results {
        let name = e["problem"].as_str().unwrap();
        let l = lefschetz["results"].as_array().unwrap().iter().find(|x| x["problem"] == name).unwrap();
        // g is constant on every degree fixture, so L equals the degree of f
        let degree = l["classes"][0]["lefschetz_number"]["num"].as_str().unwrap();
        assert_eq!(e["codimension"], 0);
        assert_eq!(e["condition_a"]["verdict"], "holds", "{name}");
        let expected = if degree == "0" { "not_producing" } else { "weakly_producing" };
        assert_eq!(e["verdict"], expected, "{name} with degree {degree}");
    }
}

fn cli_determinism() {
    let files = runnable_fixtures();
    assert!(files.len() >= 7);
    for file in &files {
        let file = file.display().to_string();
        for cmd in ["homology", "lefschetz", "removability", "produce"] {
            let args = ["--format", "json", cmd, &file];
            let (code, first) = cli(&args);
            assert_eq!(code, 0, "{cmd} {file}");
            serde_json::from_slice::<Value>(&first).unwrap();
            for _ in 0..2 {
                assert_eq!(cli(&args), (0, first.clone()), "{cmd} {file} not byte-identical");
            }
        }
    }
}

fn main() {
    let criteria: [(&str, fn()); 11] = [
        ("homology ground truth", homology_ground_truth),
        ("Smith normal form contract", smith_contract),
        ("duality", duality),
        ("normalization self-consistency", normalization),
        ("classical values", classical_values),
        ("linearity and additivity", linearity_and_additivity),
        ("homotopy-group table", homotopy_table),
        ("lemma and corollary logic", lemma_and_corollaries),
        ("verdict gates", verdict_gates),
        ("coincidence producing", coincidence_producing),
        ("CLI determinism", cli_determinism),
    ];
    let mut failed = 0;
    for (i, (name, check)) in criteria.iter().enumerate() {
        let ok = catch_unwind(AssertUnwindSafe(check)).is_ok();
        println!("criterion {:>2} {}: {name}", i + 1, if ok { "PASS" } else { "FAIL" });
        failed += usize::from(!ok);
    }
    println!("{} of {} criteria pass", criteria.len() - failed, criteria.len());
    if failed > 0 {
        std::process::exit(1);
    }
}
