use crate::combinatorics::k_subsets;
use crate::error::{Error, Result};
use crate::field::FieldElement;
use crate::linalg::ProjSubspace;

fn check_dims(l: &ProjSubspace, lam: &ProjSubspace) -> Result<usize> {
    if l.ambient() != lam.ambient() || l.field() != lam.field() {
        return Err(Error::MixedAmbient);
    }
    let n = lam.ambient() as isize;
    let k = lam.dim() + 1;
    if k < 1 || l.dim() != n - k {
        return Err(Error::DimensionMismatch(format!(
            "sigma_1 needs dim(L) + dim(Λ) = n - 1, got {} + {} in P^{n}",
            l.dim(),
            lam.dim()
        )));
    }
    Ok(k as usize)
}

/// Determinant of the (n+1)x(n+1) matrix stacking the bases of `lam` (top)
/// and `l` (bottom). Vanishes iff the two subspaces meet.
pub fn sigma1_determinant(l: &ProjSubspace, lam: &ProjSubspace) -> Result<FieldElement> {
    check_dims(l, lam)?;
    lam.basis().stack(l.basis())?.det()
}

/// Whether `[lam]` lies on the Schubert divisor σ₁(L) of planes meeting
/// `l`. Debug builds also evaluate the determinant and assert agreement.
pub fn schubert_sigma1_contains(l: &ProjSubspace, lam: &ProjSubspace) -> Result<bool> {
    check_dims(l, lam)?;
    let hit = l.meets(lam)?;
    debug_assert_eq!(hit, sigma1_determinant(l, lam)?.is_zero());
    Ok(hit)
}

/// Coefficients `a_S` of the hyperplane σ₁(L) in Plücker space, so that
/// `det[Λ; L] = Σ_S a_S p_S(Λ)` (Laplace expansion along the rows of Λ).
pub fn sigma1_linear_form(l: &ProjSubspace, k: usize) -> Result<Vec<FieldElement>> {
    let n = l.ambient();
    if k == 0 || l.dim() != n as isize - k as isize {
        return Err(Error::DimensionMismatch(format!(
            "sigma_1 form needs an (n-k)-plane, got dim {}",
            l.dim()
        )));
    }
    let base_sign = k * (k - 1) / 2;
    k_subsets(n + 1, k)
        .into_iter()
        .map(|s| {
            let comp: Vec<usize> = (0..=n).filter(|c| !s.contains(c)).collect();
            let minor = l.basis().select_cols(&comp).det()?;
            let odd = (base_sign + s.iter().sum::<usize>()) % 2 == 1;
            Ok(if odd { minor.neg() } else { minor })
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::{seeded_rng, FieldDescriptor, RationalSampling};
    use rand::Rng;

    fn gf(p: u64) -> FieldDescriptor {
        FieldDescriptor::gf(p).unwrap()
    }

    #[test]
    fn examples() {
        let f = gf(7);
        let lam = ProjSubspace::coordinate(f, 4, &[0, 1]).unwrap();
        let l = ProjSubspace::coordinate(f, 4, &[2, 3, 4]).unwrap();
        assert!(!schubert_sigma1_contains(&l, &lam).unwrap());

        let through = ProjSubspace::from_i64_rows(f, 4, &[vec![1, 0, 0, 0, 0], vec![0, 0, 1, 0, 0], vec![0, 0, 0, 1, 0]])
            .unwrap();
        assert!(schubert_sigma1_contains(&through, &lam).unwrap());

        assert!(matches!(
            schubert_sigma1_contains(&lam, &lam),
            Err(Error::DimensionMismatch(_))
        ));
    }

    #[test]
    fn agrees_with_meets_and_is_symmetric() {
        let f = gf(7);
        let mut rng = seeded_rng(2);
        let s = RationalSampling::default();
        let mut hits = 0;
        for _ in 0..1000 {
            let lam = ProjSubspace::random(f, 4, 1, &mut rng, s).unwrap();
            let l = if rng.gen_bool(0.3) {
                // force incidence through a point of lam
                let pt = ProjSubspace::from_rows(&lam.basis().select_rows(&[0])).unwrap();
                let other = ProjSubspace::random(f, 4, 1, &mut rng, s).unwrap();
                let cand = pt.join(&other).unwrap();
                if cand.dim() != 2 {
                    continue;
                }
                cand
            } else {
                ProjSubspace::random(f, 4, 2, &mut rng, s).unwrap()
            };
            let a = schubert_sigma1_contains(&l, &lam).unwrap();
            assert_eq!(a, l.meets(&lam).unwrap());
            assert_eq!(a, schubert_sigma1_contains(&lam, &l).unwrap());
            assert_eq!(a, sigma1_determinant(&l, &lam).unwrap().is_zero());
            hits += a as usize;
        }
        assert!(hits > 100);
    }

    #[test]
    fn linear_form_reproduces_determinant() {
        let mut rng = seeded_rng(8);
        for field in [gf(11), FieldDescriptor::Rational] {
            for _ in 0..100 {
                let n = rng.gen_range(2..6);
                let k = rng.gen_range(1..=n);
                let s = RationalSampling { bound: 10 };
                let lam = ProjSubspace::random(field, n, k as isize - 1, &mut rng, s).unwrap();
                let l = ProjSubspace::random(field, n, (n - k) as isize, &mut rng, s).unwrap();
                let form = sigma1_linear_form(&l, k).unwrap();
                let minors: Vec<_> = k_subsets(n + 1, k)
                    .iter()
                    .map(|c| lam.basis().select_cols(c).det().unwrap())
                    .collect();
                let mut acc = field.zero();
                for (a, p) in form.iter().zip(&minors) {
                    acc = acc.add(&a.mul(p).unwrap()).unwrap();
                }
                assert_eq!(acc, sigma1_determinant(&l, &lam).unwrap());
            }
        }
    }
}
