//! Brute-force decision of SP(n-k) over GF(q): scan every F_q-rational
//! (n-k)-plane and look for one that misses exactly one plane.

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::field::FieldDescriptor;
use crate::grassmannian::{plan_enumeration, PatternStream, PivotPattern};
use crate::linalg::{residue_rank, ProjSubspace};
use crate::special_position::{Configuration, Method, SpCertificate};

/// Residue rows of a plane, for the hot loop.
pub(crate) struct RowsPlane {
    rows: Vec<Vec<u64>>,
}

impl RowsPlane {
    pub(crate) fn new(s: &ProjSubspace) -> Self {
        RowsPlane { rows: s.residue_rows().expect("prime field").1 }
    }

    /// Whether the subspace with flattened basis `flat` meets this plane.
    pub(crate) fn meets(&self, p: u64, flat: &[u64], cols: usize) -> bool {
        let l_rows = flat.len() / cols;
        let total = l_rows + self.rows.len();
        if total > cols {
            return true;
        }
        let mut stacked: Vec<Vec<u64>> = flat.chunks(cols).map(<[u64]>::to_vec).collect();
        stacked.extend(self.rows.iter().cloned());
        residue_rank(p, &mut stacked) < total
    }
}

pub(crate) fn prime_of(c: &Configuration) -> Result<u64> {
    match c.field() {
        FieldDescriptor::Prime(m) => Ok(m.get()),
        FieldDescriptor::Rational => Err(Error::RationalFieldUnsupported),
    }
}

/// Exhaustive SP(n-k) test. A `Fails` verdict carries the first witness in
/// enumeration order; since a witness misses exactly one plane, `j` is
/// determined by the plane.
pub fn sp_bruteforce(c: &Configuration, budget: u128) -> Result<SpCertificate> {
    let p = prime_of(c)?;
    let (n, field) = (c.n(), c.field());
    let patterns = plan_enumeration(field, n, c.test_dim(), budget)?;
    let (distinct, slot) = c.dedup();
    let mut mult = vec![0usize; distinct.len()];
    for &s in &slot {
        mult[s] += 1;
    }
    let planes: Vec<RowsPlane> = distinct.iter().map(RowsPlane::new).collect();
    let cols = n + 1;

    let hit = patterns.par_iter().find_map_first(|pattern: &PivotPattern| {
        let mut stream = PatternStream::new(field, n, pattern.clone()).expect("prime field");
        while let Some(flat) = stream.next_rows() {
            let mut misses = 0;
            let mut missed = 0;
            for (u, plane) in planes.iter().enumerate() {
                if !plane.meets(p, &flat, cols) {
                    misses += mult[u];
                    missed = u;
                    if misses >= 2 {
                        break;
                    }
                }
            }
            if misses == 1 {
                return Some((flat, pattern.pivots.clone(), missed));
            }
        }
        None
    });

    Ok(match hit {
        None => SpCertificate::holds(Method::BruteForce),
        Some((flat, pivots, u)) => {
            let j = slot.iter().position(|&s| s == u).expect("missed plane occurs once");
            let l = ProjSubspace::from_rref_residues(field, n, flat, pivots);
            SpCertificate::fails(Method::BruteForce, j, l)
        }
    })
}
