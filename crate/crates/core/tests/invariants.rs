//! Property tests for the algebra, spatial encoding, partitions and summaries.

use proptest::prelude::*;

use hdc_core::lab::{run_superposition, summarize, Grouping, SuperpositionConfig};
use hdc_core::partition::{partition_count, Partitions};
use hdc_core::reference;
use hdc_core::rng::SeedTree;
use hdc_core::{superpose, HrrVector, LabeledObject, LabeledScene, SpatialAxes};

fn max_abs_diff(a: &HrrVector, b: &HrrVector) -> f64 {
    a.as_slice().iter().zip(b.as_slice()).map(|(x, y)| (x - y).abs()).fold(0.0, f64::max)
}

fn unit(seed: u64, tag: u64, dim: usize) -> HrrVector {
    HrrVector::random_unit(dim, &mut SeedTree::new(seed).stream(&[tag])).unwrap()
}

fn unitary(seed: u64, tag: u64, dim: usize) -> HrrVector {
    HrrVector::random_unitary(dim, &mut SeedTree::new(seed).stream(&[tag])).unwrap()
}

fn dims() -> impl Strategy<Value = usize> {
    prop_oneof![Just(4usize), Just(7), Just(16), Just(64), Just(127), Just(256)]
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn bind_matches_direct_convolution(seed: u64, dim in dims()) {
        let (a, b) = (unit(seed, 1, dim), unit(seed, 2, dim));
        let direct = HrrVector::new(reference::circular_convolution(a.as_slice(), b.as_slice())).unwrap();
        prop_assert!(max_abs_diff(&a.bind(&b).unwrap(), &direct) < 1e-10);
    }

    #[test]
    fn bind_is_commutative_and_associative(seed: u64, dim in dims()) {
        let (a, b, c) = (unit(seed, 1, dim), unit(seed, 2, dim), unit(seed, 3, dim));
        prop_assert!(max_abs_diff(&a.bind(&b).unwrap(), &b.bind(&a).unwrap()) < 1e-12);
        let left = a.bind(&b).unwrap().bind(&c).unwrap();
        let right = a.bind(&b.bind(&c).unwrap()).unwrap();
        prop_assert!(max_abs_diff(&left, &right) < 1e-12);
    }

    #[test]
    fn bind_distributes_over_addition(seed: u64, dim in dims()) {
        let (a, b, c) = (unit(seed, 1, dim), unit(seed, 2, dim), unit(seed, 3, dim));
        let lhs = a.bind(&b.add(&c).unwrap()).unwrap();
        let rhs = a.bind(&b).unwrap().add(&a.bind(&c).unwrap()).unwrap();
        prop_assert!(max_abs_diff(&lhs, &rhs) < 1e-12);
    }

    #[test]
    fn identity_and_involution(seed: u64, dim in dims()) {
        let a = unit(seed, 1, dim);
        let e = HrrVector::identity(dim).unwrap();
        prop_assert!(max_abs_diff(&a.bind(&e).unwrap(), &a) < 1e-12);
        prop_assert_eq!(a.involution().involution(), a.clone());
        // The involution of a binding is the binding of involutions.
        let b = unit(seed, 2, dim);
        let lhs = a.bind(&b).unwrap().involution();
        let rhs = a.involution().bind(&b.involution()).unwrap();
        prop_assert!(max_abs_diff(&lhs, &rhs) < 1e-12);
    }

    #[test]
    fn unitary_binding_preserves_norm_and_unbinds_exactly(seed: u64, dim in dims()) {
        let (u, v) = (unitary(seed, 1, dim), unit(seed, 2, dim));
        prop_assert!(u.is_unitary(1e-9));
        let bound = u.bind(&v).unwrap();
        prop_assert!((bound.norm() - v.norm()).abs() < 1e-9);
        prop_assert!(max_abs_diff(&bound.bind(&u.involution()).unwrap(), &v) < 1e-9);
    }

    #[test]
    fn integer_power_is_repeated_binding(seed: u64, dim in dims(), n in 0u32..6) {
        let v = unit(seed, 1, dim);
        let mut repeated = HrrVector::identity(dim).unwrap();
        for _ in 0..n {
            repeated = repeated.bind(&v).unwrap();
        }
        prop_assert!(max_abs_diff(&v.power(n as f64).unwrap(), &repeated) < 1e-10);
    }

    #[test]
    fn fractional_power_matches_phase_oracle_and_adds_exponents(
        seed: u64,
        dim in dims(),
        p in -3.0f64..3.0,
        q in -3.0f64..3.0,
    ) {
        let u = unitary(seed, 1, dim);
        let oracle = HrrVector::new(reference::phase_power(u.as_slice(), p)).unwrap();
        prop_assert!(max_abs_diff(&u.power(p).unwrap(), &oracle) < 1e-9);
        let sum = u.power(p).unwrap().bind(&u.power(q).unwrap()).unwrap();
        prop_assert!(max_abs_diff(&sum, &u.power(p + q).unwrap()) < 1e-8);
        prop_assert!((u.power(p).unwrap().norm() - 1.0).abs() < 1e-9);
    }

    #[test]
    fn point_encoding_splits_and_shifts(
        seed: u64,
        x in -4.0f64..4.0,
        y in -4.0f64..4.0,
        dx in -1.0f64..1.0,
        dy in -1.0f64..1.0,
    ) {
        let dim = 64;
        let axes = SpatialAxes::new(unitary(seed, 1, dim), unitary(seed, 2, dim)).unwrap();
        let p = axes.encode_point(x, y).unwrap();
        let split = axes.x_axis().power(x).unwrap().bind(&axes.y_axis().power(y).unwrap()).unwrap();
        prop_assert!(max_abs_diff(&p, &split) < 1e-12);
        // Binding with a displacement moves the point.
        let moved = p.bind(&axes.encode_point(dx, dy).unwrap()).unwrap();
        prop_assert!(max_abs_diff(&moved, &axes.encode_point(x + dx, y + dy).unwrap()) < 1e-8);
        prop_assert!((axes.encode_point(x, y).unwrap().similarity(&p).unwrap() - 1.0).abs() < 1e-9);
    }

    #[test]
    fn scene_encoding_is_linear(seed: u64, coords in prop::collection::vec((0usize..3, -4.0f64..4.0, -4.0f64..4.0), 1..6)) {
        let dim = 64;
        let tree = SeedTree::new(seed);
        let axes = SpatialAxes::random(dim, &mut tree.stream(&[1]), &mut tree.stream(&[2])).unwrap();
        let objects: Vec<LabeledObject> = coords.iter().map(|&(class_id, x, y)| LabeledObject { class_id, x, y }).collect();
        let scene = LabeledScene::with_random_vocabulary(objects.clone(), 3, dim, &mut tree.stream(&[3])).unwrap();
        let whole = axes.encode_scene(&scene).unwrap();
        let parts: Vec<HrrVector> = objects
            .iter()
            .map(|o| {
                let single = LabeledScene::new(vec![*o], scene.vocabulary().to_vec()).unwrap();
                axes.encode_scene(&single).unwrap()
            })
            .collect();
        prop_assert!(max_abs_diff(&whole, &superpose(&parts).unwrap()) < 1e-12);
    }

    #[test]
    fn summaries_ignore_record_order(seed: u64, shuffle_seed: u64) {
        use rand::seq::SliceRandom;
        let cfg = SuperpositionConfig { dims: vec![32], n_values: vec![1, 3, 6], vocab_repeats: 2, seed };
        let records = run_superposition(&cfg).unwrap();
        let mut shuffled = records.clone();
        shuffled.shuffle(&mut SeedTree::new(shuffle_seed).stream(&[0]));
        prop_assert_eq!(summarize(&records, Grouping::TotalObjects).unwrap(), summarize(&shuffled, Grouping::TotalObjects).unwrap());
    }
}

#[test]
fn partition_enumeration_matches_dynamic_programming() {
    let dp = reference::partition_counts(30);
    for (n, &expected) in dp.iter().enumerate().skip(1) {
        let listed: Vec<_> = Partitions::new(n).unwrap().collect();
        assert_eq!(listed.len() as u64, expected, "p({n})");
        assert_eq!(partition_count(n), expected);
        for w in listed.windows(2) {
            assert!(w[0] < w[1], "enumeration order at n = {n}");
        }
        assert!(listed.iter().all(|p| p.total() == n));
    }
}

#[test]
fn random_unit_similarity_statistics() {
    for dim in [256usize, 1024] {
        let mut rng = SeedTree::new(99).stream(&[dim as u64]);
        let sims: Vec<f64> = (0..4000)
            .map(|_| {
                let a = HrrVector::random_unit(dim, &mut rng).unwrap();
                let b = HrrVector::random_unit(dim, &mut rng).unwrap();
                a.similarity(&b).unwrap()
            })
            .collect();
        let sigma = 1.0 / (dim as f64).sqrt();
        let mean = hdc_core::stats::mean(&sims).unwrap();
        let sd = hdc_core::stats::std_dev(&sims).unwrap();
        assert!(mean.abs() < 4.0 * sigma / (sims.len() as f64).sqrt() + 1e-3, "D={dim} mean {mean}");
        assert!((sd / sigma - 1.0).abs() < 0.1, "D={dim} sd {sd} vs {sigma}");
    }
}
