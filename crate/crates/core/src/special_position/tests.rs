use super::*;
use crate::field::{seeded_rng, FieldDescriptor, RationalSampling};
use crate::grassmannian::enumerate_subspaces;
use crate::linalg::ProjSubspace;

fn gf(p: u64) -> FieldDescriptor {
    FieldDescriptor::gf(p).unwrap()
}

fn line(f: FieldDescriptor, a: &[i64], b: &[i64]) -> ProjSubspace {
    ProjSubspace::from_i64_rows(f, a.len() - 1, &[a.to_vec(), b.to_vec()]).unwrap()
}

fn config(f: FieldDescriptor, n: usize, k: usize, planes: Vec<ProjSubspace>) -> Configuration {
    Configuration::new(f, n, k, planes).unwrap()
}

/// Direct reading of the definition with the generic `meets`.
fn oracle_sp(c: &Configuration) -> bool {
    for l in enumerate_subspaces(c.field(), c.n(), c.test_dim(), u128::MAX).unwrap() {
        let misses = c.planes().iter().filter(|p| !l.meets(p).unwrap()).count();
        if misses == 1 {
            return false;
        }
    }
    true
}

fn concurrent_coplanar(f: FieldDescriptor) -> Vec<ProjSubspace> {
    vec![
        line(f, &[1, 0, 0, 0], &[0, 1, 0, 0]),
        line(f, &[1, 0, 0, 0], &[0, 0, 1, 0]),
        line(f, &[1, 0, 0, 0], &[0, 1, 1, 0]),
    ]
}

fn triangle(f: FieldDescriptor) -> Vec<ProjSubspace> {
    vec![
        line(f, &[0, 1, 0, 0], &[0, 0, 1, 0]),
        line(f, &[1, 0, 0, 0], &[0, 0, 1, 0]),
        line(f, &[1, 0, 0, 0], &[0, 1, 0, 0]),
    ]
}

fn all_testers() -> Vec<SpTesterChoice> {
    vec![SpTesterChoice::BruteForce, SpTesterChoice::TupleExhaustive, SpTesterChoice::default()]
}

#[test]
fn two_lines_over_gf2() {
    let f = gf(2);
    let a = line(f, &[1, 0, 0, 0], &[0, 1, 0, 0]);
    let b = line(f, &[1, 0, 0, 0], &[0, 0, 1, 0]);
    for t in all_testers() {
        let same = config(f, 3, 2, vec![a.clone(), a.clone()]);
        assert!(check_sp(&same, t, DEFAULT_BUDGET).unwrap().is_sp());
        let diff = config(f, 3, 2, vec![a.clone(), b.clone()]);
        let cert = check_sp(&diff, t, DEFAULT_BUDGET).unwrap();
        assert_eq!(cert.verdict, Verdict::Fails);
        assert!(cert.reverify(&diff).unwrap());
    }
}

#[test]
fn concurrent_coplanar_lines_over_gf3() {
    let f = gf(3);
    let c = config(f, 3, 2, concurrent_coplanar(f));
    assert!(oracle_sp(&c));
    for t in all_testers() {
        assert!(check_sp(&c, t, DEFAULT_BUDGET).unwrap().is_sp());
    }
}

#[test]
fn triangle_of_lines_fails() {
    let f = gf(3);
    let c = config(f, 3, 2, triangle(f));
    assert!(!oracle_sp(&c));
    for t in all_testers() {
        let cert = check_sp(&c, t, DEFAULT_BUDGET).unwrap();
        assert_eq!(cert.verdict, Verdict::Fails);
        assert!(cert.reverify(&c).unwrap());
        let w = cert.witness.unwrap();
        // the witness passes through the intersection of the two met lines
        let met: Vec<&ProjSubspace> =
            c.planes().iter().enumerate().filter(|(i, _)| *i != w.j).map(|(_, p)| p).collect();
        let corner = met[0].intersect(met[1]).unwrap();
        assert!(w.l_plane.contains(&corner).unwrap());
    }
}

#[test]
fn single_plane_never_sp() {
    let f = gf(5);
    let c = config(f, 3, 2, vec![line(f, &[1, 0, 0, 0], &[0, 1, 0, 0])]);
    for t in all_testers() {
        let cert = check_sp(&c, t, DEFAULT_BUDGET).unwrap();
        assert!(!cert.is_sp());
        assert!(cert.reverify(&c).unwrap());
    }
}

#[test]
fn bruteforce_reports_first_witness() {
    let f = gf(2);
    let a = line(f, &[1, 0, 0, 0], &[0, 1, 0, 0]);
    let b = line(f, &[0, 0, 1, 0], &[0, 0, 0, 1]);
    let c = config(f, 3, 2, vec![a, b]);
    let cert = sp_bruteforce(&c, DEFAULT_BUDGET).unwrap();
    let first = enumerate_subspaces(f, 3, 1, DEFAULT_BUDGET)
        .unwrap()
        .find(|l| c.planes().iter().filter(|p| !l.meets(p).unwrap()).count() == 1)
        .unwrap();
    assert_eq!(cert.witness.unwrap().l_plane, first);
}

#[test]
fn rational_field_paths() {
    let q = FieldDescriptor::Rational;
    let a = line(q, &[1, 0, 0, 0], &[0, 1, 0, 0]);
    let b = line(q, &[1, 2, 0, 0], &[0, 0, 1, 0]);
    let same = config(q, 3, 2, vec![a.clone(), a.clone()]);
    assert!(matches!(sp_bruteforce(&same, DEFAULT_BUDGET), Err(Error::RationalFieldUnsupported)));
    let cert = check_sp(&same, SpTesterChoice::default(), DEFAULT_BUDGET).unwrap();
    assert!(cert.is_sp() && !cert.is_exact());
    let diff = config(q, 3, 2, vec![a, b]);
    let cert = check_sp(&diff, SpTesterChoice::default(), DEFAULT_BUDGET).unwrap();
    assert!(cert.reverify(&diff).unwrap());

    let c = config(q, 3, 2, [concurrent_coplanar(q), concurrent_coplanar(q)].concat());
    assert!(matches!(
        check_sp(&c, SpTesterChoice::default(), DEFAULT_BUDGET),
        Err(Error::ValidityRegimeViolated { .. })
    ));
}

#[test]
fn randomized_finds_rational_witness_for_triangle() {
    let q = FieldDescriptor::Rational;
    let c = config(q, 3, 2, triangle(q));
    let cert = sp_tuple_witness(&c, TupleMode::Randomized { seed: 3, trials: 8 }, DEFAULT_BUDGET).unwrap();
    assert!(cert.reverify(&c).unwrap());
    let c = config(q, 3, 2, concurrent_coplanar(q));
    let cert = sp_tuple_witness(&c, TupleMode::Randomized { seed: 3, trials: 8 }, DEFAULT_BUDGET).unwrap();
    assert!(cert.is_sp());
    assert_eq!(cert.trials, Some(8));
}

/// Random configurations drawn from a small pool of lines, so that repeats
/// and concurrent coplanar triples show up alongside generic cases.
fn pooled_configs(f: FieldDescriptor, n: usize, d: usize, count: usize, seed: u64) -> Vec<Configuration> {
    use rand::Rng;
    let mut rng = seeded_rng(seed);
    let s = RationalSampling::default();
    let mut out = Vec::new();
    for _ in 0..count {
        let mut pool: Vec<ProjSubspace> = (0..2).map(|_| ProjSubspace::random(f, n, 1, &mut rng, s).unwrap()).collect();
        let pt = ProjSubspace::random(f, n, 0, &mut rng, s).unwrap();
        let plane = loop {
            let p = ProjSubspace::random(f, n, 2, &mut rng, s).unwrap();
            if p.contains(&pt).unwrap() {
                break p;
            }
            let extra = ProjSubspace::random(f, n, 1, &mut rng, s).unwrap();
            let cand = pt.join(&extra).unwrap();
            if cand.dim() == 2 {
                break cand;
            }
        };
        for _ in 0..3 {
            let l = loop {
                let q = ProjSubspace::random(f, n, 0, &mut rng, s).unwrap();
                let l = pt.join(&q).unwrap();
                if l.dim() == 1 && plane.contains(&l).unwrap() {
                    break l;
                }
                if let Ok(cut) = plane.intersect(&pt.join(&ProjSubspace::random(f, n, 1, &mut rng, s).unwrap()).unwrap()) {
                    let l = cut.join(&pt).unwrap();
                    if l.dim() == 1 {
                        break l;
                    }
                }
            };
            pool.push(l);
        }
        let planes = (0..d).map(|_| pool[rng.gen_range(0..pool.len())].clone()).collect();
        out.push(config(f, n, 2, planes));
    }
    out
}

#[test]
fn bruteforce_and_tuple_agree_gf5_n4_d3() {
    let f = gf(5);
    let mut holds = 0;
    for c in pooled_configs(f, 4, 3, 200, 11) {
        let a = sp_bruteforce(&c, DEFAULT_BUDGET).unwrap();
        let b = sp_tuple_witness(&c, TupleMode::Exhaustive, DEFAULT_BUDGET).unwrap();
        assert_eq!(a.verdict, b.verdict, "{c:?}");
        for cert in [&a, &b] {
            if !cert.is_sp() {
                assert!(cert.reverify(&c).unwrap());
            }
        }
        holds += a.is_sp() as usize;
    }
    assert!(holds > 10, "only {holds} SP cases");
}

#[test]
fn testers_match_definition_gf3_n3() {
    let f = gf(3);
    for c in pooled_configs(f, 3, 4, 60, 5) {
        let expected = oracle_sp(&c);
        for t in all_testers() {
            assert_eq!(check_sp(&c, t, DEFAULT_BUDGET).unwrap().is_sp(), expected);
        }
        let (distinct, slot) = c.dedup();
        let table = IncidenceTable::build(distinct, 2, DEFAULT_BUDGET).unwrap();
        assert_eq!(table.is_sp(&slot), expected);
    }
}

#[test]
fn incidence_table_indexes_enumeration() {
    let f = gf(3);
    let planes = triangle(f);
    let table = IncidenceTable::build(planes.clone(), 2, DEFAULT_BUDGET).unwrap();
    for (idx, l) in enumerate_subspaces(f, 3, 1, DEFAULT_BUDGET).unwrap().enumerate() {
        assert_eq!(table.test_plane(idx), l);
        for (u, p) in planes.iter().enumerate() {
            assert_eq!(table.meets(u, idx), l.meets(p).unwrap());
        }
    }
    assert_eq!(table.test_planes(), 130);
}

#[test]
fn randomized_regime_enforced() {
    let f = gf(5);
    let l = line(f, &[1, 0, 0, 0], &[0, 1, 0, 0]);
    let c = config(f, 3, 2, vec![l.clone(); 4]);
    let r = sp_tuple_witness(&c, TupleMode::Randomized { seed: 0, trials: 4 }, DEFAULT_BUDGET);
    assert!(matches!(r, Err(Error::ValidityRegimeViolated { d: 4, n: 3, k: 2 })));
}

#[test]
fn tuple_budget() {
    let f = gf(5);
    let c = config(f, 3, 2, triangle(f));
    assert!(matches!(
        sp_tuple_witness(&c, TupleMode::Exhaustive, 3),
        Err(Error::BudgetExceeded { .. })
    ));
    assert!(matches!(sp_bruteforce(&c, 10), Err(Error::BudgetExceeded { .. })));
}

#[test]
fn extension_keeps_disjointness() {
    let f = gf(2);
    let avoid = line(f, &[1, 0, 0, 0, 0], &[0, 1, 0, 0, 0]);
    let start = ProjSubspace::coordinate(f, 4, &[2]).unwrap();
    let l = extend_avoiding(&start, &avoid, 2).unwrap();
    assert_eq!(l.dim(), 2);
    assert!(!l.meets(&avoid).unwrap());
    assert!(l.contains(&start).unwrap());
}

#[test]
fn decompose_examples() {
    let f = gf(3);
    let a = line(f, &[1, 0, 0, 0], &[0, 1, 0, 0]);
    let b = line(f, &[0, 0, 1, 0], &[0, 0, 0, 1]);
    for t in all_testers() {
        let tester = SpTester::new(t, DEFAULT_BUDGET);
        let pairs = config(f, 3, 2, vec![a.clone(), a.clone(), b.clone(), b.clone()]);
        let r = decompose(&pairs, tester).unwrap();
        assert!(r.decomposable);
        assert_eq!(r.m, 2);
        assert_eq!(r.blocks, vec![vec![0, 1], vec![2, 3]]);
        assert!(r.per_block_certificates.iter().all(SpCertificate::is_sp));

        let r = decompose(&config(f, 3, 2, concurrent_coplanar(f)), tester).unwrap();
        assert!(!r.decomposable);
        assert_eq!((r.m, r.blocks.clone()), (1, vec![vec![0, 1, 2]]));

        let r = decompose(&config(f, 3, 2, vec![a.clone(), a.clone()]), tester).unwrap();
        assert_eq!((r.decomposable, r.m), (false, 1));

        let interleaved = config(f, 3, 2, vec![a.clone(), b.clone(), a.clone(), b.clone(), b.clone()]);
        let r = decompose(&interleaved, tester).unwrap();
        assert_eq!(r.blocks, vec![vec![0, 2], vec![1, 3, 4]]);

        assert!(matches!(decompose(&config(f, 3, 2, triangle(f)), tester), Err(Error::NotSpInput)));
    }
}

#[test]
fn decompose_refines_to_indecomposable_blocks() {
    // three duplicate pairs: the blocks are the pairs, m = 3
    let f = gf(5);
    let ls: Vec<ProjSubspace> = vec![
        line(f, &[1, 0, 0, 0], &[0, 1, 0, 0]),
        line(f, &[0, 0, 1, 0], &[0, 0, 0, 1]),
        line(f, &[1, 0, 1, 0], &[0, 1, 0, 2]),
    ];
    let c = config(f, 3, 2, vec![ls[0].clone(), ls[1].clone(), ls[2].clone(), ls[2].clone(), ls[1].clone(), ls[0].clone()]);
    let r = decompose(&c, SpTester::default()).unwrap();
    assert_eq!(r.m, 3);
    assert_eq!(r.blocks, vec![vec![0, 5], vec![1, 4], vec![2, 3]]);
    assert!(span_bound_report(&c, &r).unwrap().satisfied);
}

#[test]
fn bell_guard() {
    let f = gf(2);
    let l = line(f, &[1, 0, 0, 0], &[0, 1, 0, 0]);
    let c = config(f, 3, 2, vec![l; 5]);
    assert!(matches!(
        decompose_with(&c, SpTester::default(), 4),
        Err(Error::BellBudgetExceeded { d: 5, max: 4 })
    ));
}

#[test]
fn span_bound_examples() {
    let f = gf(5);
    let c = config(f, 3, 2, concurrent_coplanar(f));
    let r = decompose(&c, SpTester::default()).unwrap();
    assert_eq!(span_bound_report(&c, &r).unwrap(), SpanBoundReport { span_dim: 2, bound: 2, satisfied: true });

    let plane = ProjSubspace::coordinate(f, 4, &[0, 1, 2]).unwrap();
    let c = config(f, 4, 3, vec![plane.clone(), plane]);
    let r = decompose(&c, SpTester::default()).unwrap();
    assert_eq!(span_bound_report(&c, &r).unwrap(), SpanBoundReport { span_dim: 2, bound: 2, satisfied: true });

    let a = line(f, &[1, 0, 0, 0], &[0, 1, 0, 0]);
    let b = line(f, &[0, 0, 1, 0], &[0, 0, 0, 1]);
    let c = config(f, 3, 2, vec![a.clone(), a, b.clone(), b]);
    let r = decompose(&c, SpTester::default()).unwrap();
    assert_eq!(span_bound_report(&c, &r).unwrap(), SpanBoundReport { span_dim: 3, bound: 3, satisfied: true });

    let mut bad = r.clone();
    bad.blocks = vec![vec![0, 1], vec![2]];
    assert!(matches!(span_bound_report(&c, &bad), Err(Error::MismatchedReport(_))));
}

#[test]
fn partition_inequality_examples() {
    let f = gf(5);
    let tester = SpTester::default();
    let a = line(f, &[1, 0, 0, 0], &[0, 1, 0, 0]);
    let b = line(f, &[0, 0, 1, 0], &[0, 0, 0, 1]);
    let pairs = config(f, 3, 2, vec![a.clone(), a.clone(), b.clone(), b]);
    let r = verify_partition_inequality(&pairs, &[vec![0, 1], vec![2, 3]], &[0], tester).unwrap();
    assert!(!r.hypotheses_met && r.satisfied);
    assert_eq!((r.lhs, r.rhs), (3, 1));

    // a concurrent coplanar triple with its first line repeated
    let ls = concurrent_coplanar(f);
    let c = config(f, 3, 2, vec![ls[0].clone(), ls[1].clone(), ls[2].clone(), ls[0].clone()]);
    let r = verify_partition_inequality(&c, &[vec![0, 3], vec![1, 2]], &[0], tester).unwrap();
    assert!(r.hypotheses_met, "{:?}", r.reason);
    assert_eq!((r.lhs, r.rhs, r.satisfied), (2, 2, true));

    let t = config(f, 3, 2, [triangle(f), triangle(f)].concat());
    let r = verify_partition_inequality(&t, &[vec![0, 1, 2], vec![3, 4, 5]], &[0], tester).unwrap();
    assert!(!r.hypotheses_met);
}
