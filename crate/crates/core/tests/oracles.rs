mod common;

use std::sync::Arc;

use coincide_core::algebra::{smith_normal_form, tensor_product, tor_product, FgAbelianGroup, IntegerMatrix};
use coincide_core::{cohomology, homology, Coefficients, SimplicialComplex, SimplicialPair};
use common::*;
use num_traits::{Signed, ToPrimitive};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn to_oracle(g: &FgAbelianGroup) -> OracleGroup {
    OracleGroup { rank: g.rank(), torsion: g.torsion().iter().map(|t| t.to_i128().unwrap()).collect() }
}

fn library_complex(order: &[String], tops: &[Vec<String>]) -> Arc<SimplicialComplex> {
    Arc::new(SimplicialComplex::new(order, tops).unwrap())
}

#[test]
fn canonical_complexes_match_oracle() {
    let cx = read_complexes(&fixtures_dir().join("canonical.problem"));
    assert_eq!(cx.len(), 8);
    for (name, (order, tops)) in &cx {
        let oracle = oracle_homology(&OracleComplex::new(order, tops), &[]);
        let pair = SimplicialPair::absolute(library_complex(order, tops));
        let h: Vec<OracleGroup> = homology(&pair, Coefficients::Integers).groups().iter().map(to_oracle).collect();
        let c: Vec<OracleGroup> = cohomology(&pair, Coefficients::Integers).groups().iter().map(to_oracle).collect();
        assert_eq!(h, oracle, "homology of {name}");
        assert_eq!(c, oracle_cohomology(&oracle), "cohomology of {name}");
    }
}

#[test]
fn relative_disk_matches_oracle() {
    let cx = read_complexes(&fixtures_dir().join("canonical.problem"));
    let (order, tops) = &cx["D2"];
    let (sub_order, sub_tops) = &cx["D2_boundary"];
    let oracle = oracle_homology(&OracleComplex::new(order, tops), sub_tops);
    let pair = SimplicialPair::new(library_complex(order, tops), library_complex(sub_order, sub_tops)).unwrap();
    let h: Vec<OracleGroup> = homology(&pair, Coefficients::Integers).groups().iter().map(to_oracle).collect();
    assert_eq!(h, oracle);
    assert_eq!(oracle, vec![
        OracleGroup { rank: 0, torsion: vec![] },
        OracleGroup { rank: 0, torsion: vec![] },
        OracleGroup { rank: 1, torsion: vec![] },
    ]);
}

#[test]
fn textbook_values() {
    let cx = read_complexes(&fixtures_dir().join("canonical.problem"));
    let g = |rank, torsion: &[i128]| OracleGroup { rank, torsion: torsion.to_vec() };
    let expect = [
        ("point", vec![g(1, &[])]),
        ("S1", vec![g(1, &[]), g(1, &[])]),
        ("S1_hexagon", vec![g(1, &[]), g(1, &[])]),
        ("S2", vec![g(1, &[]), g(0, &[]), g(1, &[])]),
        ("T2", vec![g(1, &[]), g(2, &[]), g(1, &[])]),
        ("RP2", vec![g(1, &[]), g(0, &[2]), g(0, &[])]),
        ("D2", vec![g(1, &[]), g(0, &[]), g(0, &[])]),
    ];
    for (name, groups) in expect {
        let (order, tops) = &cx[name];
        assert_eq!(oracle_homology(&OracleComplex::new(order, tops), &[]), groups, "{name}");
    }
}

fn random_matrix(rng: &mut ChaCha8Rng, max_dim: usize, bound: i64) -> Vec<Vec<i64>> {
    let r = rng.gen_range(0..=max_dim);
    let c = rng.gen_range(0..=max_dim);
    let sparse = rng.gen_bool(0.3);
    (0..r)
        .map(|_| {
            (0..c)
                .map(|_| if sparse && rng.gen_bool(0.6) { 0 } else { rng.gen_range(-bound..=bound) })
                .collect()
        })
        .collect()
}

fn library_factors(a: &[Vec<i64>]) -> Vec<i128> {
    let m = if a.is_empty() { IntegerMatrix::zeros(0, 0) } else { IntegerMatrix::from_i64_rows(a) };
    smith_normal_form(&m).invariant_factors().iter().map(|d| d.abs().to_i128().unwrap()).collect()
}

#[test]
fn smith_factors_agree_with_both_oracles() {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    for _ in 0..400 {
        let a = random_matrix(&mut rng, 4, 9);
        let naive = naive_invariant_factors(&a);
        assert_eq!(naive, determinantal_invariant_factors(&a), "oracles disagree on {a:?}");
        assert_eq!(library_factors(&a), naive, "{a:?}");
    }
    for _ in 0..100 {
        let a = random_matrix(&mut rng, 6, 12);
        assert_eq!(library_factors(&a), naive_invariant_factors(&a), "{a:?}");
    }
}

fn presentation(g: &FgAbelianGroup) -> Vec<i64> {
    let mut orders: Vec<i64> = vec![0; g.rank()];
    orders.extend(g.torsion().iter().map(|t| t.to_i64().unwrap()));
    orders
}

/// `G ⊗ H` from the Kronecker presentation `[P ⊗ I | I ⊗ Q]`.
fn tensor_oracle(g: &FgAbelianGroup, h: &FgAbelianGroup) -> OracleGroup {
    let (p, q) = (presentation(g), presentation(h));
    let gens = p.len() * q.len();
    let mut relations: Vec<Vec<i64>> = Vec::new();
    for (i, &a) in p.iter().enumerate() {
        for (j, &b) in q.iter().enumerate() {
            let idx = i * q.len() + j;
            for coef in [a, b] {
                let mut col = vec![0; gens];
                col[idx] = coef;
                relations.push(col);
            }
        }
    }
    if gens == 0 {
        return OracleGroup { rank: 0, torsion: vec![] };
    }
    let matrix: Vec<Vec<i64>> = (0..gens).map(|r| relations.iter().map(|c| c[r]).collect()).collect();
    let factors = naive_invariant_factors(&matrix);
    OracleGroup {
        rank: gens - factors.len(),
        torsion: factors.into_iter().filter(|&d| d > 1).collect(),
    }
}

fn random_group(rng: &mut ChaCha8Rng) -> FgAbelianGroup {
    let rank = rng.gen_range(0..3);
    let n = rng.gen_range(0..3);
    let orders: Vec<num_bigint::BigInt> = (0..n).map(|_| rng.gen_range(2..13).into()).collect();
    FgAbelianGroup::from_cyclic_orders(rank, orders)
}

#[test]
fn tensor_matches_presentation_oracle() {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    for _ in 0..300 {
        let (g, h) = (random_group(&mut rng), random_group(&mut rng));
        assert_eq!(to_oracle(&tensor_product(&g, &h)), tensor_oracle(&g, &h), "{g} (x) {h}");
    }
}

/// `|Tor(G, H)|` for finite groups, counting `a`-torsion elements of each `Z/b`.
fn tor_order_by_enumeration(g: &[i64], h: &[i64]) -> usize {
    let mut total = 1;
    for &a in g {
        for &b in h {
            total *= (0..b).filter(|x| (a * x) % b == 0).count();
        }
    }
    total
}

#[test]
fn tor_matches_enumeration() {
    let mut rng = ChaCha8Rng::seed_from_u64(13);
    for _ in 0..300 {
        let (g, h) = (random_group(&mut rng), random_group(&mut rng));
        let t = tor_product(&g, &h);
        assert_eq!(t.rank(), 0, "Tor is torsion");
        let order: i128 = t.torsion().iter().map(|x| x.to_i128().unwrap()).product();
        let tg: Vec<i64> = g.torsion().iter().map(|x| x.to_i64().unwrap()).collect();
        let th: Vec<i64> = h.torsion().iter().map(|x| x.to_i64().unwrap()).collect();
        assert_eq!(order as usize, tor_order_by_enumeration(&tg, &th), "Tor({g}, {h})");
    }
}
