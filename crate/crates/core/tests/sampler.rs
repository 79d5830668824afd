mod common;

use common::{class_size, factorial, partitions};
use num_rational::BigRational;
use ordprop::proportions::CycleType;
use ordprop::recognition::case_params;
use ordprop::sampler::{
    chunk_rng, cycle_type_frequencies, estimate_event, random_group_element, search_cost_sim, Event,
};
use ordprop::Group;

#[test]
fn equal_seeds_give_equal_stats() {
    let a = estimate_event(&Event::OrderDivides(6), Group::Symmetric, 12, 50_000, 7).unwrap();
    let b = estimate_event(&Event::OrderDivides(6), Group::Symmetric, 12, 50_000, 7).unwrap();
    let c = estimate_event(&Event::OrderDivides(6), Group::Symmetric, 12, 50_000, 8).unwrap();
    assert_eq!(a, b);
    assert_ne!(a.successes, c.successes);
    let spec = case_params(2, 11).unwrap();
    assert_eq!(
        search_cost_sim(&spec, 2_000, 3).unwrap(),
        search_cost_sim(&spec, 2_000, 3).unwrap()
    );
}

#[test]
fn cycle_type_frequencies_match_class_sizes() {
    for n in 1..=5u64 {
        let freq = cycle_type_frequencies(n, 200_000, 11 + n);
        let total: u64 = freq.iter().map(|(_, s)| s.successes).sum();
        assert_eq!(total, 200_000);
        // every type appears at these sample sizes
        assert_eq!(freq.len(), partitions(n).len());
        for (t, stats) in &freq {
            let exact = BigRational::new(class_size(t.parts()), factorial(n));
            assert_eq!(stats.target_exact.as_ref(), Some(&exact));
            assert!(stats.within_sigmas(4.0), "{t}: {stats}");
        }
    }
}

#[test]
fn parity_is_balanced() {
    for n in [2u64, 3, 7, 20] {
        let s = estimate_event(&Event::Even, Group::Symmetric, n, 100_000, n).unwrap();
        assert!(s.within_sigmas(4.0), "n={n}: {s}");
    }
    let s = estimate_event(&Event::Even, Group::Alternating, 9, 10_000, 1).unwrap();
    assert_eq!(s.successes, s.trials);
}

#[test]
fn alternating_draws_are_even() {
    let mut rng = chunk_rng(5, 0);
    for _ in 0..1000 {
        let t = random_group_element(10, Group::Alternating, &mut rng);
        assert!(t.is_even());
        assert_eq!(t.n(), 10);
    }
}

#[test]
fn target_type_estimate() {
    let t = CycleType::with_fixed_points(8, &[3, 5]).unwrap();
    let s = estimate_event(&Event::Type(t.clone()), Group::Alternating, 8, 200_000, 21).unwrap();
    assert_eq!(
        s.target_exact,
        Some(t.class_proportion() * BigRational::from_integer(2.into()))
    );
    assert!(s.within_sigmas(4.0), "{s}");
}

#[test]
fn rejects_empty_runs() {
    assert!(estimate_event(&Event::Even, Group::Symmetric, 0, 10, 1).is_err());
    assert!(estimate_event(&Event::Even, Group::Symmetric, 5, 0, 1).is_err());
}
