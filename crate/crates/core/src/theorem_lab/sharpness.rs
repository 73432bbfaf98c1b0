use rand::Rng;

use crate::error::{Error, Result};
use crate::field::{seeded_rng, FieldDescriptor, RationalSampling, SeededRng};
use crate::linalg::{random_invertible, ProjSubspace};
use crate::special_position::{decompose, Configuration, PartitionReport, SpCertificate, SpTester};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SharpnessResult {
    pub configuration: Configuration,
    pub span_dim: isize,
    /// d + k - 3.
    pub bound: isize,
    pub certificate: SpCertificate,
    pub report: PartitionReport,
    /// Indecomposable SP candidates seen above the bound (expected none).
    pub violations: Vec<Configuration>,
}

const SAMPLING: RationalSampling = RationalSampling { bound: 32 };

/// A pencil of `d` planes through a random (k-2)-plane inside a random
/// k-plane, with repeats when the field has too few members.
fn random_pencil(field: FieldDescriptor, n: usize, k: usize, d: usize, rng: &mut SeededRng) -> Result<Vec<ProjSubspace>> {
    let g = random_invertible(field, n + 1, rng, SAMPLING);
    let members = field.modulus().map_or(u64::MAX, |q| q + 1);
    let base: Vec<Vec<i64>> = (0..k - 1)
        .map(|i| {
            let mut r = vec![0; n + 1];
            r[i] = 1;
            r
        })
        .collect();
    let mut out = Vec::with_capacity(d);
    for _ in 0..d {
        let t = rng.gen_range(0..members.min(64));
        let mut r = vec![0i64; n + 1];
        if Some(t) == field.modulus() {
            r[k] = 1;
        } else {
            r[k - 1] = 1;
            r[k] = t as i64;
        }
        let mut rows = base.clone();
        rows.push(r);
        out.push(ProjSubspace::from_i64_rows(field, n, &rows)?.transform(&g)?);
    }
    Ok(out)
}

fn random_subspace_in(s: &ProjSubspace, dim: isize, rng: &mut SeededRng) -> Result<ProjSubspace> {
    let field = s.field();
    let rows = s.basis().rows();
    loop {
        let coeffs = ProjSubspace::random(field, rows - 1, dim, rng, SAMPLING)?;
        if coeffs.is_empty() {
            return Ok(ProjSubspace::empty(field, s.ambient()));
        }
        let sub = ProjSubspace::from_rows(&coeffs.basis().mul(s.basis())?)?;
        if sub.dim() == dim {
            return Ok(sub);
        }
    }
}

fn mutate(c: &Configuration, rng: &mut SeededRng) -> Result<Vec<ProjSubspace>> {
    let (field, n, k, d) = (c.field(), c.n(), c.k(), c.d());
    let mut planes = c.planes().to_vec();
    let i = rng.gen_range(0..d);
    match rng.gen_range(0..3) {
        0 => {
            let j = rng.gen_range(0..d);
            planes[i] = planes[j].clone();
        }
        1 => planes[i] = ProjSubspace::random(field, n, k as isize - 1, rng, SAMPLING)?,
        _ => {
            // a plane meeting the current span in a hyperplane of itself
            let inside = random_subspace_in(&c.total_span(), k as isize - 2, rng)?;
            planes[i] = loop {
                let p = inside.join(&ProjSubspace::random(field, n, 0, rng, SAMPLING)?)?;
                if p.dim() == k as isize - 1 {
                    break p;
                }
            };
        }
    }
    Ok(planes)
}

/// Randomized hill climb for indecomposable SP configurations of large span.
/// Moves: fresh random pencils, and mutations of the incumbent (copy a
/// plane, replace one at random, or replace one by a plane through a
/// (k-2)-plane of the current span). Deterministic per seed.
pub fn sharpness_search(
    n: usize,
    k: usize,
    d: usize,
    field: FieldDescriptor,
    seed: u64,
    iterations: usize,
    tester: SpTester,
) -> Result<Option<SharpnessResult>> {
    if k < 1 || k > n || d < 2 {
        return Err(Error::invalid(format!("need 1 <= k <= n and d >= 2, got n={n}, k={k}, d={d}")));
    }
    let bound = d as isize + k as isize - 3;
    let mut rng = seeded_rng(seed);
    let mut best: Option<SharpnessResult> = None;
    let mut violations = Vec::new();
    for it in 0..iterations.max(1) {
        let fresh = best.is_none() || it % 4 == 0;
        let planes = if fresh {
            random_pencil(field, n, k, d, &mut rng)?
        } else {
            mutate(&best.as_ref().expect("incumbent").configuration, &mut rng)?
        };
        let c = Configuration::new(field, n, k, planes)?;
        let cert = tester.check(&c)?;
        if !cert.is_sp() {
            continue;
        }
        let report = decompose(&c, tester)?;
        if report.decomposable {
            continue;
        }
        let span_dim = c.total_span().dim();
        if span_dim > bound {
            violations.push(c.clone());
        }
        if best.as_ref().is_none_or(|b| span_dim > b.span_dim) {
            best = Some(SharpnessResult {
                configuration: c,
                span_dim,
                bound,
                certificate: cert,
                report,
                violations: Vec::new(),
            });
        }
    }
    Ok(best.map(|mut b| {
        b.violations = violations;
        b
    }))
}
