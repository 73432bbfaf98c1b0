use super::*;
use crate::error::Error;
use crate::field::{seeded_rng, FieldDescriptor, RationalSampling, SeededRng};
use rand::Rng;

fn gf(p: u64) -> FieldDescriptor {
    FieldDescriptor::gf(p).unwrap()
}

fn sub(field: FieldDescriptor, n: usize, rows: &[Vec<i64>]) -> ProjSubspace {
    ProjSubspace::from_i64_rows(field, n, rows).unwrap()
}

fn rand_sub(field: FieldDescriptor, n: usize, dim: isize, rng: &mut SeededRng) -> ProjSubspace {
    ProjSubspace::random(field, n, dim, rng, RationalSampling { bound: 20 }).unwrap()
}

#[test]
fn span_examples() {
    let f = gf(5);
    let p = sub(f, 3, &[vec![1, 2, 3, 4]]);
    assert_eq!(span(f, 3, &[&p, &p]).unwrap(), p);
    assert_eq!(span(f, 3, &[&p, &p]).unwrap().dim(), 0);

    let q = sub(f, 3, &[vec![0, 1, 0, 0]]);
    assert_eq!(span(f, 3, &[&p, &q]).unwrap().dim(), 1);
    assert_eq!(span(f, 3, &[]).unwrap().dim(), -1);

    // two lines whose stacked bases form an invertible 4x4 matrix
    let f = gf(101);
    let mut rng = seeded_rng(7);
    for _ in 0..20 {
        let a = rand_sub(f, 3, 1, &mut rng);
        let b = rand_sub(f, 3, 1, &mut rng);
        let stacked = a.basis().stack(b.basis()).unwrap();
        let generic = !stacked.det().unwrap().is_zero();
        assert_eq!(span(f, 3, &[&a, &b]).unwrap().dim() == 3, generic);
    }
    let a = ProjSubspace::coordinate(f, 3, &[0, 1]).unwrap();
    let b = ProjSubspace::coordinate(f, 3, &[2, 3]).unwrap();
    assert_eq!(a.join(&b).unwrap(), ProjSubspace::whole(f, 3));

    let other = ProjSubspace::coordinate(gf(7), 3, &[0]).unwrap();
    assert_eq!(span(f, 3, &[&a, &other]), Err(Error::MixedAmbient));
}

#[test]
fn intersect_examples() {
    let f = FieldDescriptor::Rational;
    let plane = sub(f, 3, &[vec![1, 0, 0, 1], vec![0, 1, 1, 0], vec![1, 1, 1, 2]]);
    assert_eq!(plane.intersect(&plane).unwrap(), plane);

    let l1 = sub(f, 2, &[vec![1, 0, 0], vec![0, 1, 0]]);
    let l2 = sub(f, 2, &[vec![1, 1, 1], vec![0, 0, 1]]);
    let pt = l1.intersect(&l2).unwrap();
    assert_eq!(pt.dim(), 0);
    assert_eq!(pt, sub(f, 2, &[vec![1, 1, 0]]));

    let a = ProjSubspace::coordinate(f, 3, &[0, 1]).unwrap();
    let b = ProjSubspace::coordinate(f, 3, &[2, 3]).unwrap();
    assert_eq!(a.intersect(&b).unwrap().dim(), -1);
    assert!(!a.meets(&b).unwrap());
}

#[test]
fn meets_examples() {
    let f = gf(7);
    let mut rng = seeded_rng(3);
    for _ in 0..50 {
        let plane = rand_sub(f, 3, 2, &mut rng);
        let line = rand_sub(f, 3, 1, &mut rng);
        assert!(plane.meets(&line).unwrap());
        assert!(line.meets(&line).unwrap());
    }
    let a = ProjSubspace::coordinate(f, 3, &[0, 1]).unwrap();
    let b = sub(f, 3, &[vec![0, 0, 1, 0], vec![1, 0, 0, 1]]);
    assert_eq!(a.basis().stack(b.basis()).unwrap().rank(), 4);
    assert!(!a.meets(&b).unwrap());
}

#[test]
fn projection_examples() {
    let f = gf(5);
    let line = sub(f, 3, &[vec![1, 0, 0, 0], vec![0, 1, 0, 0]]);
    let off = sub(f, 3, &[vec![0, 0, 1, 0]]);
    let on = sub(f, 3, &[vec![1, 1, 0, 0]]);

    let img = project_from(&off, &line).unwrap();
    assert_eq!((img.ambient(), img.dim()), (2, 1));
    let img = project_from(&on, &line).unwrap();
    assert_eq!((img.ambient(), img.dim()), (2, 0));

    // plane in P^4 projected from a disjoint line
    let plane = ProjSubspace::coordinate(f, 4, &[0, 1, 2]).unwrap();
    let center = ProjSubspace::coordinate(f, 4, &[3, 4]).unwrap();
    let img = project_from(&center, &plane).unwrap();
    assert_eq!((img.ambient(), img.dim()), (2, 2));
    assert_eq!(plane.basis().stack(center.basis()).unwrap().rank(), 5);

    assert_eq!(project_from(&line, &on), Err(Error::CenterContainsX));
    assert_eq!(
        project_from(&ProjSubspace::empty(f, 3), &line),
        Err(Error::EmptyCenter)
    );
}

#[test]
fn projection_convention_is_bit_exact() {
    // center (1,0,2,0): pivot column 0, kept columns 1,2,3;
    // x = (3,1,1,1) -> residual (0,1,1-6,1) = (0,1,0,1) mod 5
    let f = gf(5);
    let center = sub(f, 3, &[vec![1, 0, 2, 0]]);
    let x = sub(f, 3, &[vec![3, 1, 1, 1]]);
    let img = project_from(&center, &x).unwrap();
    assert_eq!(img, sub(f, 2, &[vec![1, 0, 1]]));
}

#[test]
fn preimage_examples() {
    let f = gf(5);
    let center = sub(f, 3, &[vec![0, 1, 0, 0]]);
    let r = sub(f, 2, &[vec![1, 2, 3]]);
    let pre = preimage_closure(&center, &r).unwrap();
    assert_eq!(pre.dim(), 1);
    assert!(pre.contains(&center).unwrap());
    assert_eq!(project_from(&center, &pre).unwrap(), r);

    let empty = ProjSubspace::empty(f, 2);
    assert_eq!(preimage_closure(&center, &empty).unwrap(), center);

    let wrong = ProjSubspace::empty(f, 3);
    assert_eq!(
        preimage_closure(&center, &wrong),
        Err(Error::AmbientMismatch { expected: 2 })
    );
}

#[test]
fn preimage_round_trip() {
    let mut rng = seeded_rng(11);
    for case in 0..100 {
        let field = if case % 2 == 0 { gf(7) } else { FieldDescriptor::Rational };
        let n = rng.gen_range(2..6);
        let cdim = rng.gen_range(0..n as isize);
        let center = rand_sub(field, n, cdim, &mut rng);
        let t = center.projection_target();
        let rdim = rng.gen_range(-1..=t as isize);
        let r = rand_sub(field, t, rdim, &mut rng);
        let pre = preimage_closure(&center, &r).unwrap();
        assert_eq!(pre.dim(), r.dim() + center.dim() + 1);
        assert!(pre.contains(&center).unwrap());
        if r.is_empty() {
            assert_eq!(pre, center);
        } else {
            assert_eq!(project_from(&center, &pre).unwrap(), r);
        }
    }
}

#[test]
fn modular_law_and_symmetry() {
    for field in [gf(2), gf(3), gf(101), FieldDescriptor::Rational] {
        let mut rng = seeded_rng(field.modulus().unwrap_or(0) + 17);
        for _ in 0..500 {
            let n = rng.gen_range(1..6);
            let a = rand_sub(field, n, rng.gen_range(-1..=n as isize), &mut rng);
            // bias toward overlap: sometimes build b from a's rows plus noise
            let b = if rng.gen_bool(0.3) && !a.is_empty() {
                let extra = rand_sub(field, n, rng.gen_range(-1..=n as isize), &mut rng);
                let keep = ProjSubspace::from_rows(&a.basis().select_rows(&[0])).unwrap();
                keep.join(&extra).unwrap()
            } else {
                rand_sub(field, n, rng.gen_range(-1..=n as isize), &mut rng)
            };
            let join = a.join(&b).unwrap();
            let meet = a.intersect(&b).unwrap();
            assert_eq!(a.dim() + b.dim(), join.dim() + meet.dim(), "{a:?} {b:?}");
            assert!(a.contains(&meet).unwrap() && b.contains(&meet).unwrap());
            assert_eq!(a.meets(&b).unwrap(), meet.dim() >= 0);
            assert_eq!(a.meets(&b).unwrap(), b.meets(&a).unwrap());
            if !a.is_empty() {
                assert!(a.meets(&a).unwrap());
            }
        }
    }
}

#[test]
fn projection_dimension_formula() {
    for field in [gf(3), gf(13), FieldDescriptor::Rational] {
        let mut rng = seeded_rng(23);
        let mut checked = 0;
        while checked < 500 {
            let n = rng.gen_range(2..6);
            let p = rand_sub(field, n, rng.gen_range(0..n as isize), &mut rng);
            let lam = if rng.gen_bool(0.5) {
                rand_sub(field, n, rng.gen_range(0..=n as isize), &mut rng)
            } else {
                // force a nontrivial overlap with the center
                let pt = ProjSubspace::from_rows(&p.basis().select_rows(&[0])).unwrap();
                let extra = rand_sub(field, n, rng.gen_range(0..n as isize), &mut rng);
                pt.join(&extra).unwrap()
            };
            if p.contains(&lam).unwrap() {
                continue;
            }
            let delta = p.intersect(&lam).unwrap().dim();
            let img = project_from(&p, &lam).unwrap();
            assert_eq!(img.ambient() as isize, n as isize - p.dim() - 1);
            assert_eq!(img.dim(), lam.dim() - delta - 1);
            checked += 1;
        }
    }
}

#[test]
fn residue_rank_matches_matrix_rank() {
    let f = gf(5);
    let mut rng = seeded_rng(5);
    for _ in 0..200 {
        let a = rand_sub(f, 4, rng.gen_range(0..4), &mut rng);
        let b = rand_sub(f, 4, rng.gen_range(0..4), &mut rng);
        let (p, mut rows) = a.residue_rows().unwrap();
        rows.extend(b.residue_rows().unwrap().1);
        assert_eq!(residue_rank(p, &mut rows), a.basis().stack(b.basis()).unwrap().rank());
    }
}
