//! Cayley-Bacharach test for |O_G(r)| on finite subsets of G(k-1, n).
//!
//! The section space is taken to be all degree-r forms in the Plücker
//! coordinates. Restriction to the Grassmannian is surjective, so the
//! vanishing behaviour on finite point sets is the same as for
//! H^0(O_G(r)).

use crate::combinatorics::{binomial, multisets};
use crate::error::{Error, Result};
use crate::field::FieldElement;
use crate::grassmannian::{GrassmannPointSet, PluckerPoint};
use crate::linalg::Matrix;

/// Default cap on the number of degree-r monomials.
pub const DEFAULT_MONOMIAL_BUDGET: u128 = 1_000_000;

/// One term of a form in Plücker coordinates.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Term {
    /// Exponent of each Plücker coordinate, in coordinate order.
    pub exponents: Vec<u32>,
    pub coefficient: FieldElement,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CbReport {
    pub holds: bool,
    /// First index `j` with a form through every other point but not `j`.
    pub failing_index: Option<usize>,
    pub separating_form: Option<Vec<Term>>,
}

pub fn monomial_count(coords: usize, r: usize) -> u128 {
    binomial((coords + r) as u128 - 1, r as u128)
}

fn eval_monomial(point: &PluckerPoint, mono: &[usize]) -> FieldElement {
    mono.iter().fold(point.field().one(), |acc, &i| {
        acc.mul(&point.coords()[i]).expect("same field")
    })
}

/// Evaluates a form at a point.
pub fn evaluate_form(terms: &[Term], point: &PluckerPoint) -> Result<FieldElement> {
    let mut acc = point.field().zero();
    for t in terms {
        if t.exponents.len() != point.coords().len() {
            return Err(Error::DimensionMismatch("form and point disagree on coordinates".into()));
        }
        let mut m = t.coefficient.clone();
        for (c, &e) in point.coords().iter().zip(&t.exponents) {
            for _ in 0..e {
                m = m.mul(c)?;
            }
        }
        acc = acc.add(&m)?;
    }
    Ok(acc)
}

pub fn cayley_bacharach_test(gamma: &GrassmannPointSet, r: usize, budget: u128) -> Result<CbReport> {
    if r == 0 {
        return Err(Error::invalid("Cayley-Bacharach degree must be at least 1"));
    }
    let points = gamma.points();
    let field = gamma.field();
    let Some(first) = points.first() else {
        return Err(Error::invalid("empty point set"));
    };
    let coords = first.coords().len();
    let count = monomial_count(coords, r);
    if count > budget {
        return Err(Error::BudgetExceeded { what: "degree-r monomials", count, budget });
    }
    let monos = multisets(coords, r);
    let d = points.len();
    let evals: Vec<FieldElement> = points
        .iter()
        .flat_map(|p| monos.iter().map(move |m| eval_monomial(p, m)))
        .collect();
    let e = Matrix::from_elements(field, d, monos.len(), &evals)?;

    for j in 0..d {
        let others: Vec<usize> = (0..d).filter(|&i| i != j).collect();
        let (rref, pivots) = e.select_rows(&others).rref_with_pivots();
        // reduce row j against the others; the residual is zero at pivots
        let mut residual = e.row(j);
        for (i, &p) in pivots.iter().enumerate() {
            let f = residual[p].clone();
            if f.is_zero() {
                continue;
            }
            for (c, x) in residual.iter_mut().enumerate() {
                *x = x.sub(&f.mul(&rref.get(i, c))?)?;
            }
        }
        let Some(free) = residual.iter().position(|x| !x.is_zero()) else {
            continue;
        };
        // kernel vector of the others for the free column `free`
        let mut coeffs = vec![field.zero(); monos.len()];
        coeffs[free] = field.one();
        for (i, &p) in pivots.iter().enumerate() {
            coeffs[p] = rref.get(i, free).neg();
        }
        let form: Vec<Term> = monos
            .iter()
            .zip(coeffs)
            .filter(|(_, c)| !c.is_zero())
            .map(|(m, coefficient)| {
                let mut exponents = vec![0u32; coords];
                for &i in m {
                    exponents[i] += 1;
                }
                Term { exponents, coefficient }
            })
            .collect();
        debug_assert!(!evaluate_form(&form, &points[j])?.is_zero());
        return Ok(CbReport { holds: false, failing_index: Some(j), separating_form: Some(form) });
    }
    Ok(CbReport { holds: true, failing_index: None, separating_form: None })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::{seeded_rng, FieldDescriptor, RationalSampling};
    use crate::grassmannian::plucker;
    use crate::linalg::ProjSubspace;

    fn gf(p: u64) -> FieldDescriptor {
        FieldDescriptor::gf(p).unwrap()
    }

    fn set(planes: &[ProjSubspace], k: usize) -> GrassmannPointSet {
        GrassmannPointSet::from_planes(planes, k).unwrap()
    }

    #[test]
    fn equal_points_hold() {
        let f = gf(5);
        let l = ProjSubspace::coordinate(f, 3, &[0, 1]).unwrap();
        let rep = cayley_bacharach_test(&set(&[l.clone(), l], 2), 1, DEFAULT_MONOMIAL_BUDGET).unwrap();
        assert!(rep.holds);
        assert_eq!(rep.failing_index, None);
    }

    #[test]
    fn distinct_points_fail_with_certificate() {
        let f = gf(5);
        let a = ProjSubspace::coordinate(f, 3, &[0, 1]).unwrap();
        let b = ProjSubspace::coordinate(f, 3, &[0, 2]).unwrap();
        let g = set(&[a, b], 2);
        let rep = cayley_bacharach_test(&g, 1, DEFAULT_MONOMIAL_BUDGET).unwrap();
        assert!(!rep.holds);
        let j = rep.failing_index.unwrap();
        let form = rep.separating_form.unwrap();
        assert!(form.iter().all(|t| t.exponents.iter().sum::<u32>() == 1));
        for (i, p) in g.points().iter().enumerate() {
            assert_eq!(evaluate_form(&form, p).unwrap().is_zero(), i != j);
        }
    }

    #[test]
    fn cb_r_implies_cb_s() {
        // pencils of concurrent coplanar lines and random sets
        let f = gf(5);
        let mut rng = seeded_rng(4);
        let s = RationalSampling::default();
        let mut positive = 0;
        for case in 0..40 {
            let planes: Vec<ProjSubspace> = if case % 2 == 0 {
                let pt = ProjSubspace::coordinate(f, 3, &[0]).unwrap();
                (1..=3 + case % 3)
                    .map(|t| {
                        let dir = ProjSubspace::from_i64_rows(f, 3, &[vec![0, 1, t as i64, 0]]).unwrap();
                        pt.join(&dir).unwrap()
                    })
                    .collect()
            } else {
                (0..4).map(|_| ProjSubspace::random(f, 3, 1, &mut rng, s).unwrap()).collect()
            };
            let g = set(&planes, 2);
            let results: Vec<bool> = (1..=3)
                .map(|r| cayley_bacharach_test(&g, r, DEFAULT_MONOMIAL_BUDGET).unwrap().holds)
                .collect();
            for r in 0..3 {
                if results[r] {
                    positive += 1;
                    assert!(results[..r].iter().all(|&h| h));
                }
            }
        }
        assert!(positive > 0);
    }

    #[test]
    fn budget() {
        let f = gf(5);
        let l = ProjSubspace::coordinate(f, 3, &[0, 1]).unwrap();
        let g = set(&[l.clone(), l], 2);
        assert!(matches!(cayley_bacharach_test(&g, 3, 10), Err(Error::BudgetExceeded { .. })));
        assert_eq!(monomial_count(6, 2), 21);
        let _ = plucker(&ProjSubspace::coordinate(f, 3, &[1, 2]).unwrap(), 2).unwrap();
    }
}
