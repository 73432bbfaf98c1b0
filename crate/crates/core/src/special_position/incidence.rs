use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::field::FieldDescriptor;
use crate::grassmannian::{plan_enumeration, PatternStream, PivotPattern};
use crate::linalg::ProjSubspace;
use crate::special_position::brute::RowsPlane;

/// Precomputed incidence between a list of (k-1)-planes and every
/// F_q-rational (n-k)-plane of P^n. One bitset per plane, indexed by the
/// position of the (n-k)-plane in enumeration order.
///
/// Deciding SP for any multiset of the planes is then a few word-wide
/// operations, which is what decompositions and exhaustive surveys need.
pub struct IncidenceTable {
    field: FieldDescriptor,
    n: usize,
    patterns: Vec<PivotPattern>,
    offsets: Vec<usize>,
    total: usize,
    planes: Vec<ProjSubspace>,
    meets: Vec<Vec<u64>>,
}

impl IncidenceTable {
    pub fn build(planes: Vec<ProjSubspace>, k: usize, budget: u128) -> Result<Self> {
        let first = planes.first().ok_or_else(|| Error::invalid("no planes"))?;
        let (field, n) = (first.field(), first.ambient());
        let FieldDescriptor::Prime(m) = field else {
            return Err(Error::RationalFieldUnsupported);
        };
        if planes.iter().any(|s| s.ambient() != n || s.field() != field || s.dim() != k as isize - 1) {
            return Err(Error::MixedAmbient);
        }
        let p = m.get();
        let patterns = plan_enumeration(field, n, n as isize - k as isize, budget)?;
        let mut offsets = Vec::with_capacity(patterns.len() + 1);
        let mut acc = 0usize;
        for pat in &patterns {
            offsets.push(acc);
            acc += pat.size(p) as usize;
        }
        offsets.push(acc);
        let total = acc;
        let rows: Vec<RowsPlane> = planes.iter().map(RowsPlane::new).collect();
        let cols = n + 1;

        // per pattern: [plane][local index] -> meets
        let chunks: Vec<Vec<Vec<bool>>> = patterns
            .par_iter()
            .map(|pat| {
                let mut out = vec![Vec::new(); rows.len()];
                let mut stream = PatternStream::new(field, n, pat.clone()).expect("prime");
                while let Some(flat) = stream.next_rows() {
                    for (u, plane) in rows.iter().enumerate() {
                        out[u].push(plane.meets(p, &flat, cols));
                    }
                }
                out
            })
            .collect();

        let words = total.div_ceil(64);
        let mut meets = vec![vec![0u64; words]; rows.len()];
        for (pi, chunk) in chunks.iter().enumerate() {
            for (u, bits) in chunk.iter().enumerate() {
                for (t, &b) in bits.iter().enumerate() {
                    if b {
                        let idx = offsets[pi] + t;
                        meets[u][idx / 64] |= 1 << (idx % 64);
                    }
                }
            }
        }
        Ok(IncidenceTable { field, n, patterns, offsets, total, planes, meets })
    }

    pub fn planes(&self) -> &[ProjSubspace] {
        &self.planes
    }

    /// Number of (n-k)-planes scanned.
    pub fn test_planes(&self) -> usize {
        self.total
    }

    pub fn meets(&self, plane: usize, l_index: usize) -> bool {
        self.meets[plane][l_index / 64] >> (l_index % 64) & 1 == 1
    }

    /// First (n-k)-plane, in enumeration order, that misses exactly one entry
    /// of `entries` (indices into the table's planes, repeats allowed), and
    /// the position in `entries` of the missed plane.
    pub fn first_witness(&self, entries: &[usize]) -> Option<(usize, usize)> {
        let words = self.meets.first().map_or(0, Vec::len);
        for w in 0..words {
            let valid = if (w + 1) * 64 <= self.total { u64::MAX } else { (1u64 << (self.total % 64)) - 1 };
            let mut one = 0u64;
            let mut two = 0u64;
            for &e in entries {
                let miss = !self.meets[e][w] & valid;
                two |= one & miss;
                one |= miss;
            }
            let exactly = one & !two;
            if exactly != 0 {
                let idx = w * 64 + exactly.trailing_zeros() as usize;
                let pos = entries
                    .iter()
                    .position(|&e| !self.meets(e, idx))
                    .expect("exactly one entry is missed");
                return Some((idx, pos));
            }
        }
        None
    }

    pub fn is_sp(&self, entries: &[usize]) -> bool {
        self.first_witness(entries).is_none()
    }

    /// The (n-k)-plane at position `idx` of the enumeration.
    pub fn test_plane(&self, idx: usize) -> ProjSubspace {
        assert!(idx < self.total);
        let pi = self.offsets.partition_point(|&o| o <= idx) - 1;
        let pat = &self.patterns[pi];
        let q = self.field.modulus().expect("prime") as usize;
        let mut local = idx - self.offsets[pi];
        let cols = self.n + 1;
        let mut data = vec![0u64; pat.pivots.len() * cols];
        for (row, &p) in pat.pivots.iter().enumerate() {
            data[row * cols + p] = 1;
        }
        for &(row, col) in pat.free.iter().rev() {
            data[row * cols + col] = (local % q) as u64;
            local /= q;
        }
        ProjSubspace::from_rref_residues(self.field, self.n, data, pat.pivots.clone())
    }
}
