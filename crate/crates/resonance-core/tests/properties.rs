//! Property suites for the exact linear algebra layer and the multilinear
//! differentials.

use proptest::prelude::*;

use resonance_core::matrix::{kernel_basis_vectors, rank_exact, Mat, SparseMat};
use resonance_core::modular::{rank_modular, PrimeStream, RankMode, RankOracle};
use resonance_core::multilinear::{
    delta1_sparse, delta2_sparse, delta3_sparse, sym_dim, wedge_square_map, Bivector, PairSpec,
};
use resonance_core::rat::{rat, Rat};
use resonance_core::subspace::{intersect, is_contained, sum, SubspaceBasis};

use num_traits::Zero;

fn small_rat() -> impl Strategy<Value = Rat> {
    (-6i64..=6, 1i64..=3).prop_map(|(n, d)| rat(n, d))
}

fn small_matrix() -> impl Strategy<Value = Mat> {
    (1usize..=8, 1usize..=8).prop_flat_map(|(r, c)| {
        proptest::collection::vec(small_rat(), r * c).prop_map(move |data| Mat::new(r, c, data))
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn rank_is_transpose_invariant(m in small_matrix()) {
        prop_assert_eq!(rank_exact(&m), rank_exact(&m.transpose()));
    }

    #[test]
    fn kernel_dimension_complements_rank(m in small_matrix()) {
        let ker = kernel_basis_vectors(&m);
        prop_assert_eq!(ker.len() + rank_exact(&m), m.cols());
        for v in &ker {
            prop_assert!(m.mul_vec(v).iter().all(Rat::is_zero));
        }
    }

    #[test]
    fn modular_rank_lower_bounds_exact(m in small_matrix()) {
        let exact = rank_exact(&m);
        let mut primes = PrimeStream::new();
        let mut checked = 0;
        while checked < 2 {
            let p = primes.next_prime();
            match rank_modular(&m, p) {
                Ok(r) => {
                    prop_assert!(r <= exact);
                    checked += 1;
                }
                Err(_) => continue,
            }
        }
        // the certified pipeline must recover the exact rank
        prop_assert_eq!(RankOracle::new(RankMode::Certified).rank(&m), exact);
        prop_assert_eq!(RankOracle::new(RankMode::Modular).rank(&m), exact);
    }

    #[test]
    fn wedge_square_is_functorial(
        a in proptest::collection::vec(small_rat(), 9),
        b in proptest::collection::vec(small_rat(), 9),
    ) {
        let p = Mat::new(3, 3, a);
        let q = Mat::new(3, 3, b);
        let lhs = wedge_square_map(&p.mul(&q));
        let rhs = wedge_square_map(&p).mul(&wedge_square_map(&q));
        prop_assert_eq!(lhs, rhs);
    }
}

fn subspace_from(seed: &[i64], ambient: usize, dim: usize) -> SubspaceBasis {
    let mut rows = Vec::new();
    let mut it = seed.iter().cycle();
    for _ in 0..dim {
        let mut v: Vec<Rat> = Vec::with_capacity(ambient);
        for _ in 0..ambient {
            v.push(Rat::from_integer((*it.next().unwrap()).into()));
        }
        rows.push(v);
    }
    SubspaceBasis::from_spanning(ambient, &rows)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    /// Modular law: a ⊆ c implies a + (b ∩ c) = (a + b) ∩ c.
    #[test]
    fn subspace_lattice_modular_law(
        seed_a in proptest::collection::vec(-3i64..=3, 12),
        seed_b in proptest::collection::vec(-3i64..=3, 12),
        seed_c in proptest::collection::vec(-3i64..=3, 12),
        dims in (0usize..=2, 0usize..=3, 0usize..=3),
    ) {
        let ambient = 6;
        let a0 = subspace_from(&seed_a, ambient, dims.0);
        let c = sum(&subspace_from(&seed_c, ambient, dims.2), &a0).unwrap();
        let a = a0;
        let b = subspace_from(&seed_b, ambient, dims.1);
        prop_assert!(is_contained(&a, &c).unwrap());

        let lhs = sum(&a, &intersect(&b, &c).unwrap()).unwrap();
        let rhs = intersect(&sum(&a, &b).unwrap(), &c).unwrap();
        prop_assert_eq!(lhs.dim(), rhs.dim());
        prop_assert!(is_contained(&lhs, &rhs).unwrap());

        // dimension formula
        let meet = intersect(&a, &b).unwrap();
        let join = sum(&a, &b).unwrap();
        prop_assert_eq!(a.dim() + b.dim(), meet.dim() + join.dim());
    }

    /// Completing K-perp from K and back reproduces the original span.
    #[test]
    fn complete_perp_is_an_involution(
        seed in proptest::collection::vec(-4i64..=4, 18),
        dim in 0usize..=4,
        n in 3usize..=4,
    ) {
        let nn = n * (n - 1) / 2;
        let sub = subspace_from(&seed, nn, dim.min(nn));
        let k: Vec<Bivector> = sub
            .basis()
            .iter()
            .map(|coords| Bivector { n, coords: coords.clone() })
            .collect();
        let k_dim = k.len();
        let spec = PairSpec::from_k(n, k).unwrap();
        prop_assert_eq!(spec.dim_k() + spec.dim_kperp(), nn);

        let back = PairSpec::from_kperp(n, spec.kperp_basis().to_vec()).unwrap();
        prop_assert_eq!(back.dim_k(), k_dim);
        let orig = SubspaceBasis::from_spanning(nn, &spec.k_rows());
        let round = SubspaceBasis::from_spanning(nn, &back.k_rows());
        prop_assert!(is_contained(&orig, &round).unwrap());
        prop_assert!(is_contained(&round, &orig).unwrap());
    }
}

/// Sparse composition: applies the single-entry-per-column structure of
/// delta1 and the few-entry columns of delta2/delta3 without densifying.
fn compose_is_zero(left: &SparseMat, right: &SparseMat) -> bool {
    assert_eq!(left.cols, right.rows);
    // group left entries by column
    let mut by_col: Vec<Vec<(u32, Rat)>> = vec![Vec::new(); left.cols];
    for (r, c, v) in &left.entries {
        by_col[*c as usize].push((*r, v.clone()));
    }
    let mut acc: std::collections::BTreeMap<(u32, u32), Rat> = Default::default();
    for (mid, col, v) in &right.entries {
        for (row, w) in &by_col[*mid as usize] {
            let e = acc.entry((*row, *col)).or_insert_with(Rat::zero);
            *e = &*e + &(v * w);
        }
    }
    acc.values().all(Rat::is_zero)
}

#[test]
fn koszul_differentials_compose_to_zero_full_sweep() {
    for n in 1..=6 {
        for q in 0..=6 {
            let d1 = delta1_sparse(n, q);
            let d2 = delta2_sparse(n, q);
            assert!(compose_is_zero(&d1, &d2), "d1∘d2 != 0 at n={n}, q={q}");
            let d3 = delta3_sparse(n, q);
            if d3.cols > 0 {
                assert!(compose_is_zero(&d2, &d3), "d2∘d3 != 0 at n={n}, q={q}");
            }
        }
    }
}

#[test]
fn delta1_surjectivity_sweep() {
    // two-prime mode keeps the big cases tractable; rank certification of
    // these specific matrices is exercised at n <= 4 below
    let fast = RankOracle::new(RankMode::Modular);
    let certified = RankOracle::new(RankMode::Certified);
    for n in 1..=6usize {
        for q in 0..=6usize {
            let d1 = delta1_sparse(n, q);
            let oracle = if n <= 4 { &certified } else { &fast };
            assert_eq!(
                oracle.rank_sparse(&d1),
                sym_dim(n, q + 2),
                "delta1 rank off at n={n}, q={q}"
            );
        }
    }
}
