//! Measure-library invariants across the catalog: hull and compact-part
//! invariance, Lipschitz witnesses, exact sublinear round trips, and the
//! inequivalence witness.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use mnc_core::mnc::{demo_catalog, lipschitz_witness, represent_sublinear};
use mnc_core::sample::{inequivalence_demo_sets, SetSampler};
use mnc_core::{make_mnc, Mnc, MncSpec};

#[test]
fn catalog_measures_ignore_compact_parts() {
    let mut rng = ChaCha8Rng::seed_from_u64(41);
    let s = SetSampler::new(3);
    for m in demo_catalog(3) {
        for _ in 0..200 {
            let a = s.sample(&mut rng);
            let c = s.sample_compact(&mut rng);
            assert_eq!(m.eval_set(&a.convex_hull()), m.eval_set(&a), "{}", m.label());
            assert_eq!(m.eval_set(&a.minkowski_sum(&c)), m.eval_set(&a), "{}", m.label());
            assert_eq!(m.eval_set(&a.convexify_union(&c)), m.eval_set(&a), "{}", m.label());
        }
    }
}

#[test]
fn lipschitz_witness_never_fails_on_the_catalog() {
    let mut rng = ChaCha8Rng::seed_from_u64(42);
    let s = SetSampler::new(3);
    for m in demo_catalog(3) {
        for _ in 0..1000 {
            let a = s.sample(&mut rng);
            let b = s.sample(&mut rng);
            let w = lipschitz_witness(&m, &a, &b);
            assert!(w.holds, "{}: |{}| > {} (r = {})", m.label(), w.lhs, w.rhs, w.r);
            if let Some(ok) = w.sublinear_holds {
                assert!(ok, "{}: unit-ball constant failed", m.label());
            }
        }
    }
}

#[test]
fn sublinear_round_trip_is_exact() {
    let mut rng = ChaCha8Rng::seed_from_u64(43);
    let s = SetSampler::new(3);
    let weights = vec![vec![1.0, 0.5, 0.0], vec![0.0, 0.25, 2.0], vec![0.5, 0.0, 0.5]];
    let measures = vec![
        Mnc::hausdorff(3),
        make_mnc(MncSpec::Sum, 3).unwrap(),
        make_mnc(MncSpec::WeightedSup { weights }, 3).unwrap(),
    ];
    for m in &measures {
        let f = represent_sublinear(m).unwrap();
        for w in &f.vectors {
            assert!(w.iter().all(|x| *x >= 0.0));
        }
        for _ in 0..1000 {
            let a = s.sample(&mut rng);
            assert_eq!(f.eval(&a.v_embed()), m.eval_set(&a), "{}", m.label());
        }
    }
}

#[test]
fn sum_to_sup_ratio_peaks_at_the_block_count() {
    let k = 5;
    let sets = inequivalence_demo_sets(k, 200, 1);
    let beta = Mnc::hausdorff(k);
    let sum = make_mnc(MncSpec::Sum, k).unwrap();
    let mut best: f64 = 0.0;
    for s in &sets {
        let b = beta.eval_set(s);
        if b > 0.0 {
            best = best.max(sum.eval_set(s) / b);
        }
    }
    assert_eq!(best, k as f64);
}
