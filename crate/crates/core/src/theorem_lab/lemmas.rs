//! Computational checks of the structural lemmas about SP configurations.
//! Each checker returns how many instances it examined and a description
//! of every instance where the statement failed.

use crate::error::Result;
use crate::field::{seeded_rng, RationalSampling, SeededRng};
use crate::grassmannian::points_of;
use crate::linalg::{project_from, span, ProjSubspace};
use crate::special_position::{Configuration, SpTester};

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct LemmaCheck {
    pub instances: usize,
    pub violations: Vec<String>,
}

impl LemmaCheck {
    pub fn holds(&self) -> bool {
        self.violations.is_empty()
    }

    pub fn absorb(&mut self, other: LemmaCheck) {
        self.instances += other.instances;
        self.violations.extend(other.violations);
    }
}

fn complement_indices(d: usize, mask: u32) -> Vec<usize> {
    (0..d).filter(|&i| mask >> i & 1 == 0).collect()
}

fn mask_indices(d: usize, mask: u32) -> Vec<usize> {
    (0..d).filter(|&i| mask >> i & 1 == 1).collect()
}

/// For an SP configuration: each plane lies in the span of the others
/// (hence in any subspace containing them).
pub fn check_containment(c: &Configuration) -> Result<LemmaCheck> {
    let mut out = LemmaCheck::default();
    for j in 0..c.d() {
        let others: Vec<usize> = (0..c.d()).filter(|&i| i != j).collect();
        out.instances += 1;
        if !c.span_of(&others).contains(&c.planes()[j])? {
            out.violations.push(format!("plane {j} is outside the span of the others"));
        }
    }
    Ok(out)
}

/// For an SP configuration and every split into a head of size >= 2 and a
/// nonempty tail that is not SP: the spans of head and tail meet in
/// dimension >= k-1.
pub fn check_meet_bound(c: &Configuration, tester: SpTester) -> Result<LemmaCheck> {
    let d = c.d();
    let mut out = LemmaCheck::default();
    let k = c.k() as isize;
    for head in 1u32..(1 << d) - 1 {
        if head.count_ones() < 2 {
            continue;
        }
        let h = mask_indices(d, head);
        let t = complement_indices(d, head);
        if t.len() >= 2 && tester.check(&c.subset(&t)?)?.is_sp() {
            continue;
        }
        out.instances += 1;
        let meet = c.span_of(&h).intersect(&c.span_of(&t))?;
        if meet.dim() < k - 1 {
            out.violations.push(format!("head {h:?}, tail {t:?}: spans meet in dim {}", meet.dim()));
        }
    }
    Ok(out)
}

fn project_all(center: &ProjSubspace, planes: &[&ProjSubspace]) -> Result<Vec<ProjSubspace>> {
    planes.iter().map(|p| project_from(center, p)).collect()
}

/// Projection from P disjoint from the total span preserves SP exactly:
/// SP(n-k) of the planes iff SP(n-α-1-k) of their images. Checked for every
/// admissible α with P spanned by unit vectors complementary to the span,
/// and once more with a random P when one is found. Applies to any
/// configuration, SP or not.
pub fn check_projection_iff(c: &Configuration, tester: SpTester, seed: u64) -> Result<LemmaCheck> {
    let mut out = LemmaCheck::default();
    let (field, n, k) = (c.field(), c.n(), c.k());
    let total = c.total_span();
    let free = total.complement_columns();
    let before = tester.check(c)?.is_sp();
    let planes: Vec<&ProjSubspace> = c.planes().iter().collect();
    let mut rng = seeded_rng(seed);
    for alpha in 0..free.len() {
        let target = n - alpha - 1;
        if target < k {
            break;
        }
        let mut centers = vec![ProjSubspace::coordinate(field, n, &free[..=alpha])?];
        if let Some(p) = random_disjoint(&total, alpha as isize, &mut rng)? {
            centers.push(p);
        }
        for center in centers {
            out.instances += 1;
            let images = project_all(&center, &planes)?;
            let projected = Configuration::new(field, target, k, images)?;
            let after = tester.check(&projected)?.is_sp();
            if before != after {
                out.violations.push(format!(
                    "alpha {alpha}: SP before projection {before}, after {after}"
                ));
            }
        }
    }
    Ok(out)
}

fn random_disjoint(avoid: &ProjSubspace, dim: isize, rng: &mut SeededRng) -> Result<Option<ProjSubspace>> {
    for _ in 0..32 {
        let p = ProjSubspace::random(avoid.field(), avoid.ambient(), dim, rng, RationalSampling::default())?;
        if !p.meets(avoid)? {
            return Ok(Some(p));
        }
    }
    Ok(None)
}

/// For an SP configuration, a head of >= 2 planes and a nonempty tail, and
/// a center P spanned by one point of each tail plane and disjoint from the
/// head planes: the projected head planes are SP(n-α-1-k).
pub fn check_one_sided_projection(c: &Configuration, tester: SpTester, seed: u64) -> Result<LemmaCheck> {
    let d = c.d();
    let (field, n, k) = (c.field(), c.n(), c.k());
    let mut out = LemmaCheck::default();
    let mut rng = seeded_rng(seed);
    for tail in 1u32..(1 << d) {
        let t = mask_indices(d, tail);
        let h = complement_indices(d, tail);
        if h.len() < 2 {
            continue;
        }
        for _ in 0..16 {
            let points = t
                .iter()
                .map(|&i| random_point(&c.planes()[i], &mut rng))
                .collect::<Result<Vec<_>>>()?;
            let refs: Vec<&ProjSubspace> = points.iter().collect();
            let center = span(field, n, &refs)?;
            let alpha = center.dim();
            if (n as isize) - alpha - 1 < k as isize {
                continue;
            }
            let mut disjoint = true;
            for &i in &h {
                if center.meets(&c.planes()[i])? {
                    disjoint = false;
                    break;
                }
            }
            if !disjoint {
                continue;
            }
            out.instances += 1;
            let head: Vec<&ProjSubspace> = h.iter().map(|&i| &c.planes()[i]).collect();
            let images = project_all(&center, &head)?;
            let projected = Configuration::new(field, n - alpha as usize - 1, k, images)?;
            if !tester.check(&projected)?.is_sp() {
                out.violations.push(format!("head {h:?}, tail {t:?}: projected head is not SP"));
            }
            break;
        }
    }
    Ok(out)
}

fn random_point(plane: &ProjSubspace, rng: &mut SeededRng) -> Result<ProjSubspace> {
    // intersect with a random subspace of complementary dimension
    let codim = plane.ambient() as isize - plane.dim();
    loop {
        let h = ProjSubspace::random(plane.field(), plane.ambient(), codim, rng, RationalSampling::default())?;
        let x = plane.intersect(&h)?;
        if x.dim() == 0 {
            return Ok(x);
        }
    }
}

/// For an SP configuration, a distinguished plane t and r other planes
/// (2 <= r <= min(d-2, n-k+1)): if some point p of Λ_t outside the span S of
/// the r planes makes their projections from p SP(n-k-1), then Λ_t ⊆ S or
/// the r planes are SP(n-k). The pointwise form is what the proof uses.
/// Instances count the (t, R) pairs examined; `max_points` caps the points
/// of Λ_t tried over GF(q) (random points over Q).
pub fn check_dichotomy(c: &Configuration, tester: SpTester, max_points: usize, seed: u64) -> Result<LemmaCheck> {
    let d = c.d();
    let (field, n, k) = (c.field(), c.n(), c.k());
    let mut out = LemmaCheck::default();
    if d < 4 || n < k + 1 {
        return Ok(out);
    }
    let r_max = (d - 2).min(n - k + 1);
    let mut rng = seeded_rng(seed);
    for t in 0..d {
        let others: Vec<usize> = (0..d).filter(|&i| i != t).collect();
        for mask in 1u32..(1 << others.len()) {
            let r = mask.count_ones() as usize;
            if r < 2 || r > r_max {
                continue;
            }
            let chosen: Vec<usize> = mask_indices(others.len(), mask).iter().map(|&i| others[i]).collect();
            out.instances += 1;
            let s = c.span_of(&chosen);
            let lam = &c.planes()[t];
            if s.contains(lam)? {
                continue;
            }
            if tester.check(&c.subset(&chosen)?)?.is_sp() {
                continue;
            }
            // neither alternative holds: the hypothesis must fail at every p
            let candidates: Vec<ProjSubspace> = if field.is_prime_field() {
                points_of(lam)?
                    .into_iter()
                    .take(max_points)
                    .map(|v| {
                        let row: Vec<i64> = v.iter().map(|&x| x as i64).collect();
                        ProjSubspace::from_i64_rows(field, n, &[row])
                    })
                    .collect::<Result<_>>()?
            } else {
                (0..max_points).map(|_| random_point(lam, &mut rng)).collect::<Result<_>>()?
            };
            for p in candidates {
                if s.contains(&p)? {
                    continue;
                }
                let planes: Vec<&ProjSubspace> = chosen.iter().map(|&i| &c.planes()[i]).collect();
                let images = project_all(&p, &planes)?;
                let projected = Configuration::new(field, n - 1, k, images)?;
                if tester.check(&projected)?.is_sp() {
                    out.violations.push(format!(
                        "plane {t}, planes {chosen:?}: projections SP but neither alternative holds"
                    ));
                    break;
                }
            }
        }
    }
    Ok(out)
}

/// All five checks on one configuration; the SP-only ones are skipped when
/// it is not SP.
pub fn check_all_lemmas(c: &Configuration, tester: SpTester, seed: u64) -> Result<Vec<(&'static str, LemmaCheck)>> {
    let mut out = vec![("projection", check_projection_iff(c, tester, seed)?)];
    if tester.check(c)?.is_sp() {
        out.push(("containment", check_containment(c)?));
        out.push(("meet-bound", check_meet_bound(c, tester)?));
        out.push(("one-sided-projection", check_one_sided_projection(c, tester, seed)?));
        out.push(("dichotomy", check_dichotomy(c, tester, 64, seed)?));
    }
    Ok(out)
}
