//! Exhaustive enumeration of the m-dimensional subspaces of P^n(F_q).
//!
//! Subspaces come out as canonical RREF bases, ordered first by pivot
//! pattern (lexicographic on the pivot columns) and then by the free entries,
//! read row by row, left to right, as a base-q odometer whose first free
//! entry is the most significant digit. Pivot patterns are independent
//! ranges of the stream, which is what the parallel scans chunk on.

use crate::combinatorics::{gaussian_binomial, k_subsets};
use crate::error::{Error, Result};
use crate::field::FieldDescriptor;
use crate::linalg::ProjSubspace;

/// Default cap on the number of enumerated objects.
pub const DEFAULT_BUDGET: u128 = 10_000_000;

/// Number of m-dimensional subspaces of P^n(F_q).
pub fn subspace_count(q: u64, n: usize, m: isize) -> u128 {
    if m < -1 || m > n as isize {
        return 0;
    }
    gaussian_binomial(n as u32 + 1, (m + 1) as u32, q)
}

/// One pivot pattern and its free positions.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PivotPattern {
    pub pivots: Vec<usize>,
    /// `(row, col)` of every free entry, in odometer order.
    pub free: Vec<(usize, usize)>,
}

impl PivotPattern {
    fn new(cols: usize, pivots: Vec<usize>) -> Self {
        let mut is_pivot = vec![false; cols];
        for &p in &pivots {
            is_pivot[p] = true;
        }
        let free = pivots
            .iter()
            .enumerate()
            .flat_map(|(row, &p)| (p + 1..cols).filter(|&c| !is_pivot[c]).map(move |c| (row, c)))
            .collect();
        PivotPattern { pivots, free }
    }

    /// Number of subspaces with this pattern.
    pub fn size(&self, q: u64) -> u128 {
        (q as u128).checked_pow(self.free.len() as u32).unwrap_or(u128::MAX)
    }
}

/// Every pivot pattern of an m-dimensional subspace of P^n, in stream order.
pub fn pivot_patterns(n: usize, m: isize) -> Vec<PivotPattern> {
    if m < -1 || m > n as isize {
        return Vec::new();
    }
    k_subsets(n + 1, (m + 1) as usize)
        .into_iter()
        .map(|p| PivotPattern::new(n + 1, p))
        .collect()
}

fn prime(field: FieldDescriptor) -> Result<u64> {
    field.modulus().ok_or(Error::RationalFieldUnsupported)
}

/// Streams all subspaces sharing one pivot pattern.
#[derive(Clone, Debug)]
pub struct PatternStream {
    field: FieldDescriptor,
    q: u64,
    n: usize,
    pattern: PivotPattern,
    digits: Vec<u64>,
    done: bool,
}

impl PatternStream {
    pub fn new(field: FieldDescriptor, n: usize, pattern: PivotPattern) -> Result<Self> {
        let q = prime(field)?;
        let digits = vec![0; pattern.free.len()];
        Ok(PatternStream { field, q, n, pattern, digits, done: false })
    }

    /// Next basis as flattened residue rows, without building a subspace.
    pub fn next_rows(&mut self) -> Option<Vec<u64>> {
        if self.done {
            return None;
        }
        let cols = self.n + 1;
        let mut data = vec![0u64; self.pattern.pivots.len() * cols];
        for (row, &p) in self.pattern.pivots.iter().enumerate() {
            data[row * cols + p] = 1;
        }
        for (&(row, col), &d) in self.pattern.free.iter().zip(&self.digits) {
            data[row * cols + col] = d;
        }
        // advance the odometer; last free entry is the least significant
        let mut i = self.digits.len();
        loop {
            if i == 0 {
                self.done = true;
                break;
            }
            i -= 1;
            self.digits[i] += 1;
            if self.digits[i] < self.q {
                break;
            }
            self.digits[i] = 0;
        }
        Some(data)
    }

    pub fn pattern(&self) -> &PivotPattern {
        &self.pattern
    }
}

impl Iterator for PatternStream {
    type Item = ProjSubspace;

    fn next(&mut self) -> Option<ProjSubspace> {
        let rows = self.next_rows()?;
        Some(ProjSubspace::from_rref_residues(self.field, self.n, rows, self.pattern.pivots.clone()))
    }
}

/// Checks the budget and returns the pattern list of the full stream.
pub fn plan_enumeration(
    field: FieldDescriptor,
    n: usize,
    m: isize,
    budget: u128,
) -> Result<Vec<PivotPattern>> {
    let q = prime(field)?;
    if m < -1 || m > n as isize {
        return Err(Error::invalid(format!("no {m}-dimensional subspaces in P^{n}")));
    }
    let count = subspace_count(q, n, m);
    if count > budget {
        return Err(Error::BudgetExceeded { what: "subspace enumeration", count, budget });
    }
    Ok(pivot_patterns(n, m))
}

/// Every m-dimensional subspace of P^n(F_q), exactly once, in the
/// documented order.
pub fn enumerate_subspaces(
    field: FieldDescriptor,
    n: usize,
    m: isize,
    budget: u128,
) -> Result<impl Iterator<Item = ProjSubspace>> {
    let patterns = plan_enumeration(field, n, m, budget)?;
    Ok(patterns
        .into_iter()
        .flat_map(move |p| PatternStream::new(field, n, p).expect("prime field checked")))
}

/// All F_q-rational points of `s`, as homogeneous vectors normalized so the
/// first nonzero coordinate of the coefficient vector is 1. Ordered by the
/// enumeration of P^dim(s) applied to the RREF basis.
pub fn points_of(s: &ProjSubspace) -> Result<Vec<Vec<u64>>> {
    let FieldDescriptor::Prime(m) = s.field() else {
        return Err(Error::RationalFieldUnsupported);
    };
    if s.is_empty() {
        return Ok(Vec::new());
    }
    let q = m.get();
    let fp = crate::field::Fp::new(m);
    let (_, rows) = s.residue_rows().expect("prime field");
    let dim = s.dim() as usize;
    let mut out = Vec::new();
    for pattern in pivot_patterns(dim, 0) {
        let mut stream = PatternStream::new(s.field(), dim, pattern)?;
        while let Some(coeffs) = stream.next_rows() {
            let mut v = vec![0u64; s.ambient() + 1];
            for (c, row) in coeffs.iter().zip(&rows) {
                if *c == 0 {
                    continue;
                }
                for (x, r) in v.iter_mut().zip(row) {
                    use crate::field::Arith;
                    *x = fp.add(x, &fp.mul(c, r));
                }
            }
            out.push(v);
        }
    }
    debug_assert_eq!(out.len() as u128, subspace_count(q, dim, 0));
    Ok(out)
}
