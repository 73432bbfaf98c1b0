//! SP via point tuples: SP(n-k) fails at j exactly when there are points
//! p_i of the planes i != j spanning a space of dimension at most n-k that
//! misses plane j. Such a span extends to an (n-k)-plane missing plane j,
//! and conversely any witness plane L contains such points.

use crate::error::{Error, Result};
use crate::field::{sample_uniform_with, seeded_rng, split_seed, RationalSampling};
use crate::grassmannian::{points_of, subspace_count};
use crate::linalg::{residue_rank, Matrix, ProjSubspace};
use crate::special_position::brute::prime_of;
use crate::special_position::{Configuration, Method, SpCertificate};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum TupleMode {
    /// Every tuple of F_q-rational points (exact, prime fields only).
    Exhaustive,
    /// Random tuples; `Holds` is probabilistic.
    Randomized { seed: u64, trials: u64 },
}

/// Whether the randomized test is meaningful: d-1 points always span at
/// most an (n-k)-plane.
pub fn in_randomized_regime(c: &Configuration) -> bool {
    c.d() as isize - 1 <= c.test_dim() + 1
}

/// Greedily appends the first unit vector outside span(s, avoid) until `s`
/// reaches dimension `target`. Keeps `s` disjoint from `avoid`.
pub fn extend_avoiding(s: &ProjSubspace, avoid: &ProjSubspace, target: isize) -> Option<ProjSubspace> {
    let (field, n) = (s.field(), s.ambient());
    let mut cur = s.clone();
    while cur.dim() < target {
        let blocked = cur.join(avoid).ok()?;
        let e = (0..=n)
            .map(|c| ProjSubspace::coordinate(field, n, &[c]).expect("valid column"))
            .find(|e| !blocked.contains(e).expect("same ambient"))?;
        cur = cur.join(&e).ok()?;
    }
    Some(cur)
}

fn certify(c: &Configuration, j: usize, s: &ProjSubspace) -> Result<SpCertificate> {
    let l = extend_avoiding(s, &c.planes()[j], c.test_dim()).ok_or(Error::ExtensionFailed(j))?;
    let cert = SpCertificate::fails(Method::TupleWitness, j, l);
    if !cert.reverify(c)? {
        return Err(Error::ExtensionFailed(j));
    }
    Ok(cert)
}

pub fn sp_tuple_witness(c: &Configuration, mode: TupleMode, budget: u128) -> Result<SpCertificate> {
    match mode {
        TupleMode::Exhaustive => exhaustive(c, budget),
        TupleMode::Randomized { seed, trials } => randomized(c, seed, trials),
    }
}

fn rows_meet(p: u64, a: &[Vec<u64>], b: &[Vec<u64>], cols: usize) -> bool {
    let total = a.len() + b.len();
    if total > cols {
        return true;
    }
    let mut m: Vec<Vec<u64>> = a.iter().chain(b).cloned().collect();
    residue_rank(p, &mut m) < total
}

struct Search<'a> {
    p: u64,
    cols: usize,
    max_rows: usize,
    planes: &'a [Vec<Vec<u64>>],
    points: &'a [Vec<Vec<u64>>],
    nodes: u128,
    budget: u128,
}

impl Search<'_> {
    /// Depth-first over the planes in `order`. A plane already meeting the
    /// current span needs no new point: the smaller span dominates.
    fn run(&mut self, j: usize, order: &[usize], s: &mut Vec<Vec<u64>>) -> Result<bool> {
        let Some((&i, rest)) = order.split_first() else {
            return Ok(true);
        };
        if rows_meet(self.p, s, &self.planes[i], self.cols) {
            return self.run(j, rest, s);
        }
        if s.len() >= self.max_rows {
            return Ok(false);
        }
        for pt in &self.points[i] {
            self.nodes += 1;
            if self.nodes > self.budget {
                return Err(Error::BudgetExceeded {
                    what: "point tuples",
                    count: self.nodes,
                    budget: self.budget,
                });
            }
            s.push(pt.clone());
            if !rows_meet(self.p, s, &self.planes[j], self.cols) && self.run(j, rest, s)? {
                return Ok(true);
            }
            s.pop();
        }
        Ok(false)
    }
}

fn exhaustive(c: &Configuration, budget: u128) -> Result<SpCertificate> {
    let p = prime_of(c)?;
    let per_plane = subspace_count(p, c.k() - 1, 0);
    if per_plane > budget {
        return Err(Error::BudgetExceeded { what: "points per plane", count: per_plane, budget });
    }
    let planes: Vec<Vec<Vec<u64>>> =
        c.planes().iter().map(|s| s.residue_rows().expect("prime field").1).collect();
    let points: Vec<Vec<Vec<u64>>> = c.planes().iter().map(points_of).collect::<Result<_>>()?;
    let mut search = Search {
        p,
        cols: c.n() + 1,
        max_rows: (c.test_dim() + 1) as usize,
        planes: &planes,
        points: &points,
        nodes: 0,
        budget,
    };
    for j in 0..c.d() {
        let order: Vec<usize> = (0..c.d()).filter(|&i| i != j).collect();
        let mut s = Vec::new();
        if search.run(j, &order, &mut s)? {
            let rows: Vec<Vec<i64>> = s.iter().map(|r| r.iter().map(|&x| x as i64).collect()).collect();
            let sub = if rows.is_empty() {
                ProjSubspace::empty(c.field(), c.n())
            } else {
                ProjSubspace::from_i64_rows(c.field(), c.n(), &rows)?
            };
            return certify(c, j, &sub);
        }
    }
    Ok(SpCertificate::holds(Method::TupleWitness))
}

fn random_point(
    plane: &ProjSubspace,
    rng: &mut crate::field::SeededRng,
    sampling: RationalSampling,
) -> Result<ProjSubspace> {
    let field = plane.field();
    let rows = plane.basis().rows();
    loop {
        let coeffs: Vec<_> = (0..rows).map(|_| sample_uniform_with(field, rng, sampling)).collect();
        if coeffs.iter().all(|x| x.is_zero()) {
            continue;
        }
        let v = Matrix::from_elements(field, 1, rows, &coeffs)?.mul(plane.basis())?;
        return ProjSubspace::from_rows(&v);
    }
}

fn randomized(c: &Configuration, seed: u64, trials: u64) -> Result<SpCertificate> {
    use rand::seq::SliceRandom;
    use rand::Rng;
    if !in_randomized_regime(c) {
        return Err(Error::ValidityRegimeViolated { d: c.d(), n: c.n(), k: c.k() });
    }
    let sampling = RationalSampling::default();
    let planes = c.planes();
    for j in 0..c.d() {
        let mut rng = seeded_rng(split_seed(seed, j as u64));
        for _ in 0..trials {
            // Witness tuples are often degenerate (several points at one
            // intersection), so half the time a point is drawn from
            // Λ_i ∩ span(S, Λ_t) for a later plane t instead of all of Λ_i.
            let mut order: Vec<usize> = (0..c.d()).filter(|&i| i != j).collect();
            order.shuffle(&mut rng);
            let mut s = ProjSubspace::empty(c.field(), c.n());
            let mut dead = false;
            for (pos, &i) in order.iter().enumerate() {
                if s.meets(&planes[i])? {
                    continue;
                }
                let rest = &order[pos + 1..];
                let mut source = planes[i].clone();
                if !rest.is_empty() && rng.gen_bool(0.5) {
                    let t = rest[rng.gen_range(0..rest.len())];
                    let x = planes[i].intersect(&s.join(&planes[t])?)?;
                    if !x.is_empty() {
                        source = x;
                    }
                }
                s = s.join(&random_point(&source, &mut rng, sampling)?)?;
                if s.meets(&planes[j])? {
                    dead = true;
                    break;
                }
            }
            if !dead && s.dim() <= c.test_dim() {
                return certify(c, j, &s);
            }
        }
    }
    let mut cert = SpCertificate::holds(Method::TupleWitness);
    cert.trials = Some(trials);
    Ok(cert)
}
