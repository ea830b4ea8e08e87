use itertools::Itertools;
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use splinedim::bounds::{
    lower_bound_hom, schumaker_lower, upper_bound_hom, vertex_module_dim, SplineSpace,
};
use splinedim::mesh::{AffineMap, SlopeKey, Triangulation};
use splinedim::oracle::{fatpoint_quotient_dim, spline_dimension};
use splinedim::ordering::{
    exactness_certificate, minimize_upper_bound, tilde_slope_counts, SearchBudget, SearchMethod,
};
use splinedim::random::{random_mesh, RandomMeshConfig};
use splinedim::rational::{frac, Rational};

fn small_config(max_interior: usize) -> RandomMeshConfig {
    RandomMeshConfig {
        interior_vertices: 0..=max_interior,
        ..RandomMeshConfig::default()
    }
}

fn mesh(seed: u64, max_interior: usize) -> Triangulation {
    random_mesh(
        &mut ChaCha8Rng::seed_from_u64(seed),
        &small_config(max_interior),
    )
}

fn rational() -> impl Strategy<Value = Rational> {
    (-6i64..=6, 1i64..=4).prop_map(|(n, d)| frac(n, d))
}

fn affine_map() -> impl Strategy<Value = AffineMap> {
    (
        rational(),
        rational(),
        rational(),
        rational(),
        rational(),
        rational(),
    )
        .prop_map(|(a, b, c, d, e, f)| AffineMap {
            matrix: [[a, b], [c, d]],
            offset: [e, f],
        })
        .prop_filter("invertible", |m| m.determinant() != frac(0, 1))
}

fn slope_profile(tri: &Triangulation) -> Vec<u32> {
    tri.interior_vertices()
        .iter()
        .map(|&v| tri.slope_count(v).unwrap())
        .collect()
}

fn invert(perm: &[usize]) -> Vec<usize> {
    let mut inverse = vec![0; perm.len()];
    for (i, &p) in perm.iter().enumerate() {
        inverse[p] = i;
    }
    inverse
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn affine_maps_preserve_everything(seed in any::<u64>(), map in affine_map(), r in 0u32..=2) {
        let tri = mesh(seed, 6);
        let image = tri.map_affine(&map).unwrap();
        prop_assert_eq!(tri.f_vector(), image.f_vector());
        prop_assert_eq!(slope_profile(&tri), slope_profile(&image));
        let order = tri.interior_vertices().to_vec();
        for k in r..=r + 3 {
            let space = SplineSpace::new(r, k).unwrap();
            prop_assert_eq!(lower_bound_hom(&tri, space), lower_bound_hom(&image, space));
            prop_assert_eq!(
                upper_bound_hom(&tri, &order, space).unwrap(),
                upper_bound_hom(&image, &order, space).unwrap()
            );
        }
        let space = SplineSpace::new(r, r + 2).unwrap();
        prop_assert_eq!(spline_dimension(&tri, space), spline_dimension(&image, space));
    }

    #[test]
    fn relabeling_preserves_everything(seed in any::<u64>(), shuffle in any::<u64>()) {
        use rand::seq::SliceRandom;
        let tri = mesh(seed, 6);
        let mut perm: Vec<usize> = (0..tri.vertices().len()).collect();
        perm.shuffle(&mut ChaCha8Rng::seed_from_u64(shuffle));
        let image = tri.relabel(&perm).unwrap();
        prop_assert_eq!(tri.f_vector(), image.f_vector());
        let mut before = slope_profile(&tri);
        let mut after = slope_profile(&image);
        before.sort_unstable();
        after.sort_unstable();
        prop_assert_eq!(before, after);

        let order = tri.interior_vertices().to_vec();
        let mapped: Vec<usize> = order.iter().map(|&v| perm[v]).collect();
        for k in 1..=4 {
            let space = SplineSpace::new(1, k).unwrap();
            prop_assert_eq!(lower_bound_hom(&tri, space), lower_bound_hom(&image, space));
            prop_assert_eq!(
                upper_bound_hom(&tri, &order, space).unwrap(),
                upper_bound_hom(&image, &mapped, space).unwrap()
            );
        }
        let space = SplineSpace::new(1, 3).unwrap();
        prop_assert_eq!(spline_dimension(&tri, space), spline_dimension(&image, space));
        let back = image.relabel(&invert(&perm)).unwrap();
        prop_assert_eq!(back.to_json(), tri.to_json());
    }

    #[test]
    fn lower_bounds_agree_and_upper_bounds_dominate(seed in any::<u64>(), r in 0u32..=4) {
        use rand::seq::SliceRandom;
        let tri = mesh(seed, 10);
        let mut order = tri.interior_vertices().to_vec();
        order.shuffle(&mut ChaCha8Rng::seed_from_u64(seed ^ 0x5eed));
        for k in r..=14 {
            let space = SplineSpace::new(r, k).unwrap();
            let lbh = lower_bound_hom(&tri, space);
            prop_assert_eq!(lbh, schumaker_lower(&tri, space));
            prop_assert!(upper_bound_hom(&tri, &order, space).unwrap() >= lbh);
        }
    }

    #[test]
    fn certificate_makes_bounds_equal(seed in any::<u64>(), r in 0u32..=3) {
        use rand::seq::SliceRandom;
        let tri = mesh(seed, 8);
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        for _ in 0..6 {
            let mut order = tri.interior_vertices().to_vec();
            order.shuffle(&mut rng);
            if exactness_certificate(&tri, &order, r).unwrap().holds {
                for k in r..=4 * r + 6 {
                    let space = SplineSpace::new(r, k).unwrap();
                    prop_assert_eq!(
                        upper_bound_hom(&tri, &order, space).unwrap(),
                        lower_bound_hom(&tri, space)
                    );
                }
            }
        }
    }

    #[test]
    fn exhaustive_search_matches_enumeration(seed in any::<u64>(), r in 0u32..=2, dk in 0u32..=4) {
        let tri = mesh(seed, 6);
        let space = SplineSpace::new(r, r + dk).unwrap();
        let found = minimize_upper_bound(&tri, space, SearchBudget::default());
        prop_assert_eq!(found.method, SearchMethod::Exhaustive);
        let n = tri.interior_vertices().len();
        let (best_value, best_order) = tri
            .interior_vertices()
            .iter()
            .copied()
            .permutations(n)
            .map(|order| (upper_bound_hom(&tri, &order, space).unwrap(), order))
            .min()
            .unwrap();
        prop_assert_eq!(found.value, best_value);
        prop_assert_eq!(upper_bound_hom(&tri, &found.ordering, space).unwrap(), found.value);
        // Lowest value, ties broken toward the lexicographically first listing.
        prop_assert_eq!(found.ordering, best_order);
    }

    #[test]
    fn greedy_value_is_an_achieved_bound(seed in any::<u64>(), r in 0u32..=2) {
        let tri = mesh(seed, 10);
        let space = SplineSpace::new(r, r + 2).unwrap();
        let budget = SearchBudget { exhaustive_limit: 0, restarts: 1, seed, ..SearchBudget::default() };
        let found = minimize_upper_bound(&tri, space, budget);
        prop_assert_eq!(upper_bound_hom(&tri, &found.ordering, space).unwrap(), found.value);
        let stats = tilde_slope_counts(&tri, &found.ordering).unwrap();
        prop_assert_eq!(stats.ordering(), found.ordering.clone());
        prop_assert_eq!(found, minimize_upper_bound(&tri, space, budget));
    }

    #[test]
    fn oracle_is_monotone(seed in any::<u64>()) {
        let tri = mesh(seed, 4);
        for r in 0..=2 {
            let mut previous = 0;
            for k in r..=r + 3 {
                let dim = spline_dimension(&tri, SplineSpace::new(r, k).unwrap());
                prop_assert!(dim >= previous);
                previous = dim;
            }
        }
        for k in 2..=4 {
            let mut previous = usize::MAX;
            for r in 0..=2 {
                let dim = spline_dimension(&tri, SplineSpace::new(r, k).unwrap());
                prop_assert!(dim <= previous);
                previous = dim;
            }
        }
    }

    #[test]
    fn fatpoint_rank_matches_closed_form(
        normals in proptest::collection::vec((rational(), rational()), 1..=7),
        r in 0u32..=3,
    ) {
        let mut slopes: Vec<SlopeKey> = Vec::new();
        for (a, b) in &normals {
            if *a == frac(0, 1) && *b == frac(0, 1) {
                continue;
            }
            let key = SlopeKey::from_normal(a, b);
            if !slopes.contains(&key) {
                slopes.push(key);
            }
        }
        prop_assume!(!slopes.is_empty());
        let t = slopes.len() as u32;
        for k in r..=3 * r + 4 {
            prop_assert_eq!(
                fatpoint_quotient_dim(&slopes, r, k).unwrap() as i64,
                vertex_module_dim(t, r, k)
            );
        }
    }
}
