use proptest::prelude::*;
use rand::Rng;

use cbgrass::field::{seeded_rng, FieldDescriptor, RationalSampling, SeededRng};
use cbgrass::grassmannian::{cayley_bacharach_test, GrassmannPointSet, DEFAULT_BUDGET};
use cbgrass::linalg::{project_from, random_invertible, ProjSubspace};
use cbgrass::special_position::{
    decompose, sp_bruteforce, sp_tuple_witness, span_bound_report, Configuration, SpTester, TupleMode,
};
use cbgrass::wire;

const SAMPLING: RationalSampling = RationalSampling { bound: 50 };

fn gf(p: u64) -> FieldDescriptor {
    FieldDescriptor::gf(p).unwrap()
}

fn field() -> impl Strategy<Value = FieldDescriptor> {
    prop_oneof![Just(gf(2)), Just(gf(3)), Just(gf(7)), Just(FieldDescriptor::Rational)]
}

fn small_prime() -> impl Strategy<Value = FieldDescriptor> {
    prop_oneof![Just(gf(2)), Just(gf(3))]
}

fn random(f: FieldDescriptor, n: usize, dim: isize, rng: &mut SeededRng) -> ProjSubspace {
    ProjSubspace::random(f, n, dim, rng, SAMPLING).unwrap()
}

/// Lines of P^3 drawn from a pool of three, so repeats, shared points and
/// SP configurations are all common.
fn pooled_lines(f: FieldDescriptor, d: usize, rng: &mut SeededRng) -> Configuration {
    let pool: Vec<ProjSubspace> = (0..3).map(|_| random(f, 3, 1, rng)).collect();
    let planes = (0..d).map(|_| pool[rng.gen_range(0..3)].clone()).collect();
    Configuration::new(f, 3, 2, planes).unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig { cases: 64, failure_persistence: None, ..ProptestConfig::default() })]

    #[test]
    fn modular_law_and_meets(f in field(), seed in any::<u64>(), n in 1usize..5) {
        let mut rng = seeded_rng(seed);
        let a = random(f, n, rng.gen_range(-1..=n as isize), &mut rng);
        let b = random(f, n, rng.gen_range(-1..=n as isize), &mut rng);
        let join = a.join(&b).unwrap();
        let meet = a.intersect(&b).unwrap();
        prop_assert_eq!(a.dim() + b.dim(), join.dim() + meet.dim());
        prop_assert_eq!(a.meets(&b).unwrap(), b.meets(&a).unwrap());
        prop_assert_eq!(a.meets(&b).unwrap(), meet.dim() >= 0);
        prop_assert_eq!(a.meets(&a).unwrap(), a.dim() >= 0);
        prop_assert!(join.contains(&a).unwrap() && a.contains(&meet).unwrap());
    }

    #[test]
    fn projection_dimension(f in field(), seed in any::<u64>(), n in 2usize..6) {
        let mut rng = seeded_rng(seed);
        let center = random(f, n, rng.gen_range(0..n as isize - 1), &mut rng);
        let x = random(f, n, rng.gen_range(0..n as isize), &mut rng);
        prop_assume!(!center.contains(&x).unwrap());
        let image = project_from(&center, &x).unwrap();
        prop_assert_eq!(image.ambient() as isize, n as isize - center.dim() - 1);
        prop_assert_eq!(image.dim(), x.dim() - center.intersect(&x).unwrap().dim() - 1);
    }

    #[test]
    fn testers_agree_and_certificates_replay(f in small_prime(), seed in any::<u64>(), d in 2usize..4) {
        let mut rng = seeded_rng(seed);
        let c = pooled_lines(f, d, &mut rng);
        let brute = sp_bruteforce(&c, DEFAULT_BUDGET).unwrap();
        let tuple = sp_tuple_witness(&c, TupleMode::Exhaustive, DEFAULT_BUDGET).unwrap();
        prop_assert_eq!(brute.is_sp(), tuple.is_sp());
        for cert in [&brute, &tuple] {
            prop_assert_eq!(cert.reverify(&c).unwrap(), !cert.is_sp());
            let v = wire::certificate_to_json(&c, cert);
            prop_assert!(wire::verify_json(&v, DEFAULT_BUDGET).unwrap().valid);
        }
    }

    #[test]
    fn sp_is_projectively_invariant(f in small_prime(), seed in any::<u64>(), d in 2usize..5) {
        let mut rng = seeded_rng(seed);
        let c = pooled_lines(f, d, &mut rng);
        let g = random_invertible(f, 4, &mut rng, SAMPLING);
        let moved: Vec<ProjSubspace> = c.planes().iter().map(|p| p.transform(&g).unwrap()).collect();
        let moved = Configuration::new(f, 3, 2, moved).unwrap();
        prop_assert_eq!(
            sp_bruteforce(&c, DEFAULT_BUDGET).unwrap().is_sp(),
            sp_bruteforce(&moved, DEFAULT_BUDGET).unwrap().is_sp()
        );
    }

    #[test]
    fn unions_of_sp_configurations_are_sp(seed in any::<u64>()) {
        let f = gf(3);
        let mut rng = seeded_rng(seed);
        let mut parts = Vec::new();
        while parts.len() < 2 {
            let c = pooled_lines(f, rng.gen_range(2..4), &mut rng);
            if sp_bruteforce(&c, DEFAULT_BUDGET).unwrap().is_sp() {
                parts.push(c);
            }
        }
        let union = parts[0].concat(&parts[1]).unwrap();
        prop_assert!(sp_bruteforce(&union, DEFAULT_BUDGET).unwrap().is_sp());
    }

    #[test]
    fn sp_configurations_satisfy_the_span_bound(f in small_prime(), seed in any::<u64>(), d in 2usize..6) {
        let mut rng = seeded_rng(seed);
        let c = pooled_lines(f, d, &mut rng);
        prop_assume!(sp_bruteforce(&c, DEFAULT_BUDGET).unwrap().is_sp());
        let report = decompose(&c, SpTester::default()).unwrap();
        let blocks: Vec<usize> = report.blocks.iter().flatten().copied().collect();
        let mut sorted = blocks.clone();
        sorted.sort_unstable();
        prop_assert_eq!(sorted, (0..d).collect::<Vec<_>>());
        prop_assert!(span_bound_report(&c, &report).unwrap().satisfied);
        let v = wire::partition_report_to_json(&c, &report);
        prop_assert!(wire::verify_json(&v, DEFAULT_BUDGET).unwrap().valid);
    }

    #[test]
    fn cb1_implies_sp(seed in any::<u64>(), d in 2usize..5) {
        let f = gf(5);
        let mut rng = seeded_rng(seed);
        let c = pooled_lines(f, d, &mut rng);
        let gamma = GrassmannPointSet::from_planes(c.planes(), 2).unwrap();
        if cayley_bacharach_test(&gamma, 1, DEFAULT_BUDGET).unwrap().holds {
            prop_assert!(sp_bruteforce(&c, DEFAULT_BUDGET).unwrap().is_sp());
        }
    }

    #[test]
    fn configurations_round_trip_through_json(f in field(), seed in any::<u64>(), d in 1usize..5) {
        let mut rng = seeded_rng(seed);
        let n = rng.gen_range(1..5);
        let k = rng.gen_range(1..=n);
        let planes = (0..d).map(|_| random(f, n, k as isize - 1, &mut rng)).collect();
        let c = Configuration::new(f, n, k, planes).unwrap();
        let text = wire::to_pretty(&wire::configuration_to_json(&c));
        let back = wire::configuration_from_json(&serde_json::from_str(&text).unwrap()).unwrap();
        prop_assert_eq!(&back, &c);
        prop_assert_eq!(wire::to_pretty(&wire::configuration_to_json(&back)), text);
    }
}

#[test]
fn single_planes_never_sp() {
    let mut rng = seeded_rng(1);
    for f in [gf(2), gf(5)] {
        for (n, k) in [(2, 1), (3, 2), (4, 3)] {
            let c = Configuration::new(f, n, k, vec![random(f, n, k as isize - 1, &mut rng)]).unwrap();
            assert!(!sp_bruteforce(&c, DEFAULT_BUDGET).unwrap().is_sp());
            assert!(!sp_tuple_witness(&c, TupleMode::Exhaustive, DEFAULT_BUDGET).unwrap().is_sp());
        }
    }
}
