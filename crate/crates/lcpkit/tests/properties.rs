//! Property tests over the sparse substrate and the splitting algebra.

use proptest::prelude::*;

use lcpkit::dense::DenseMatrix;
use lcpkit::problem::{gen_example1, gen_example2, is_complementary_pair};
use lcpkit::solver::step;
use lcpkit::sparse::{
    combine, lower_triangular_solve, split_dlu, DiagonalMatrix, SparseMatrix, Term,
};
use lcpkit::splitting::{build_spec, Variant};

/// Random sparse square matrix as a triplet list (duplicates collapse).
fn sparse_matrix(max_n: usize) -> impl Strategy<Value = SparseMatrix> {
    (1..=max_n)
        .prop_flat_map(|n| {
            let entry = (0..n, 0..n, -10.0..10.0f64);
            (Just(n), proptest::collection::vec(entry, 0..4 * n))
        })
        .prop_map(|(n, triplets)| SparseMatrix::from_triplets(n, &triplets).unwrap())
}

proptest! {
    #[test]
    fn matvec_matches_dense_reference(a in sparse_matrix(12)) {
        let n = a.n();
        let x: Vec<f64> = (0..n).map(|i| (i as f64 * 0.7).sin() * 3.0).collect();
        let sparse = a.matvec(&x).unwrap();
        let dense = DenseMatrix::from_sparse(&a).matvec(&x);
        for (s, d) in sparse.iter().zip(&dense) {
            prop_assert!((s - d).abs() <= 1e-12 * (1.0 + d.abs()));
        }
    }

    #[test]
    fn matvec_is_additive(a in sparse_matrix(10)) {
        let n = a.n();
        let x: Vec<f64> = (0..n).map(|i| (i as f64 + 1.0).cos()).collect();
        let y: Vec<f64> = (0..n).map(|i| (2.0 * i as f64 + 0.5).sin()).collect();
        let xy: Vec<f64> = x.iter().zip(&y).map(|(a, b)| a + b).collect();
        let lhs = a.matvec(&xy).unwrap();
        let ax = a.matvec(&x).unwrap();
        let ay = a.matvec(&y).unwrap();
        for ((l, ax_i), ay_i) in lhs.iter().zip(&ax).zip(&ay) {
            let rhs = ax_i + ay_i;
            prop_assert!((l - rhs).abs() <= 1e-12 * (1.0 + rhs.abs()));
        }
    }

    #[test]
    fn split_reconstruction_is_exact(a in sparse_matrix(12)) {
        let (d, l, u) = split_dlu(&a);
        let back = combine(
            a.n(),
            &[Term::Diag(1.0, &d), Term::Mat(-1.0, &l), Term::Mat(-1.0, &u)],
        )
        .unwrap();
        prop_assert_eq!(back.max_abs_diff(&a), 0.0);
    }

    #[test]
    fn triangular_solve_multiplies_back(
        n in 1..=8usize,
        seed in 0..1000u64,
    ) {
        // diagonally dominant lower-triangular system with unit-magnitude
        // diagonal entries of random sign
        let mut triplets = Vec::new();
        let mut state = seed.wrapping_mul(6364136223846793005).wrapping_add(1);
        let mut rand = || {
            state = state.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
            (state >> 11) as f64 / (1u64 << 53) as f64 * 2.0 - 1.0
        };
        for i in 0..n {
            for j in 0..i {
                triplets.push((i, j, rand() * 0.5 / n as f64));
            }
            triplets.push((i, i, if rand() >= 0.0 { 1.0 } else { -1.0 }));
        }
        let t = SparseMatrix::from_triplets(n, &triplets).unwrap();
        let b: Vec<f64> = (0..n).map(|_| rand() * 4.0).collect();
        let x = lower_triangular_solve(&t, &b).unwrap();
        let back = t.matvec(&x).unwrap();
        let scale = b.iter().fold(1.0f64, |m, v| m.max(v.abs()));
        for (bb, tb) in b.iter().zip(&back) {
            prop_assert!((bb - tb).abs() <= 1e-10 * scale);
        }
    }

    #[test]
    fn complementary_pair_agrees_with_direct_check(
        pairs in proptest::collection::vec(
            (prop_oneof![Just(0.0), 0.0..5.0f64], prop_oneof![Just(0.0), -1.0..5.0f64]),
            1..32,
        )
    ) {
        let tol = 1e-9;
        let (a, b): (Vec<f64>, Vec<f64>) = pairs.into_iter().unzip();
        let direct = a.iter().zip(&b).all(|(&x, &y)| {
            x >= -tol && y >= -tol && (x * y).abs() <= tol * (1.0 + x.abs() + y.abs())
        });
        let via_identity = is_complementary_pair(&a, &b, tol);
        // The identity check is exact at tolerance 0; at positive tolerance
        // both tests agree away from the tolerance boundary.
        if via_identity != direct {
            let margin = a
                .iter()
                .zip(&b)
                .map(|(&x, &y)| ((x + y) - (x - y).abs()).abs())
                .fold(0.0f64, f64::max);
            prop_assert!(margin <= 4.0 * tol, "disagreement with margin {margin}");
        }
    }
}

#[test]
fn matvec_benchmark_case_matches_dense_oracle() {
    let p = gen_example1(2, 4.0).unwrap();
    let x = [1.0, 2.0, 1.0, 2.0];
    let sparse = p.a().matvec(&x).unwrap();
    let dense = DenseMatrix::from_sparse(p.a()).matvec(&x);
    assert_eq!(sparse, dense);
}

/// The alpha-scaled assembly and the generic family assembly must produce
/// the same sweep map.
#[test]
fn scaled_and_generic_operator_paths_agree() {
    for example in [1u8, 2] {
        let p = match example {
            1 => gen_example1(4, 4.0).unwrap(),
            _ => gen_example2(4, 4.0).unwrap(),
        };
        let om = DiagonalMatrix::new(p.a().diagonal());
        let cases = [
            (Variant::Namsor, Some(0.91), None),
            (Variant::Namaor, Some(0.9), Some(0.5)),
            (Variant::Msor, Some(0.85), None),
            (Variant::Maor, Some(0.9), Some(0.4)),
            (Variant::Namgs, None, None),
            (Variant::NamJacobi, None, None),
            (Variant::Mgs, None, None),
        ];
        for (variant, alpha, beta) in cases {
            let spec = build_spec(p.a(), variant, &om, alpha, beta).unwrap();
            let scaled = spec.operator(p.q()).unwrap();
            let generic = spec.operator_generic(p.q()).unwrap();
            let s: Vec<f64> = (0..p.n())
                .map(|i| ((i * 7 + example as usize) as f64 * 0.37).sin() * 2.0)
                .collect();
            let a = step(&scaled, &s).unwrap();
            let b = step(&generic, &s).unwrap();
            for (x, y) in a.iter().zip(&b) {
                assert!(
                    (x - y).abs() <= 1e-12 * (1.0 + y.abs()),
                    "paths disagree for {} on example {example}",
                    variant.tag()
                );
            }
        }
    }
}

/// Spec-style agreement check on 1000 seeded random pairs: the identity
/// test matches the direct test (componentwise nonnegativity plus a bound
/// on the inner product) away from the tolerance boundary.
#[test]
fn complementary_pair_thousand_random_pairs() {
    use rand::{Rng, SeedableRng};
    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(99);
    let tol = 1e-8;
    let mut agreements = 0;
    for trial in 0..1000 {
        let n = rng.gen_range(1..=12usize);
        let mut a = vec![0.0f64; n];
        let mut b = vec![0.0f64; n];
        match trial % 3 {
            0 => {
                // complementary by construction: disjoint supports
                for i in 0..n {
                    if rng.gen_bool(0.5) {
                        a[i] = rng.gen_range(0.0..5.0);
                    } else {
                        b[i] = rng.gen_range(0.0..5.0);
                    }
                }
            }
            1 => {
                // generic vectors, usually violating
                for i in 0..n {
                    a[i] = rng.gen_range(-2.0..5.0);
                    b[i] = rng.gen_range(-2.0..5.0);
                }
            }
            _ => {
                // complementary with one deliberate violation
                for i in 0..n {
                    if rng.gen_bool(0.5) {
                        a[i] = rng.gen_range(0.1..5.0);
                    } else {
                        b[i] = rng.gen_range(0.1..5.0);
                    }
                }
                let k = rng.gen_range(0..n);
                a[k] = rng.gen_range(0.1..2.0);
                b[k] = rng.gen_range(0.1..2.0);
            }
        }
        let dot: f64 = a.iter().zip(&b).map(|(x, y)| x * y).sum();
        let direct = a.iter().all(|&x| x >= -tol)
            && b.iter().all(|&y| y >= -tol)
            && dot.abs() <= tol * n as f64;
        let via_identity = lcpkit::problem::is_complementary_pair(&a, &b, tol);
        assert_eq!(
            via_identity, direct,
            "trial {trial}: identity {via_identity} vs direct {direct} for a={a:?} b={b:?}"
        );
        agreements += 1;
    }
    assert_eq!(agreements, 1000);
}
