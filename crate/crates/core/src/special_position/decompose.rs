use crate::error::{Error, Result};
use crate::field::FieldDescriptor;
use crate::grassmannian::subspace_count;
use crate::special_position::{
    check_sp, Configuration, IncidenceTable, Method, SpCertificate, SpTester, SpTesterChoice,
};

/// Largest d accepted by `decompose` unless overridden.
pub const DEFAULT_MAX_PLANES: usize = 12;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PartitionReport {
    pub decomposable: bool,
    /// Blocks of a minimal partition into indecomposable SP blocks, each
    /// sorted, in order of their smallest index.
    pub blocks: Vec<Vec<usize>>,
    pub m: usize,
    pub per_block_certificates: Vec<SpCertificate>,
}

enum Table<'a> {
    Owned(IncidenceTable),
    Borrowed(&'a IncidenceTable),
}

impl std::ops::Deref for Table<'_> {
    type Target = IncidenceTable;
    fn deref(&self) -> &IncidenceTable {
        match self {
            Table::Owned(t) => t,
            Table::Borrowed(t) => t,
        }
    }
}

struct Oracle<'a> {
    c: &'a Configuration,
    tester: SpTester,
    table: Option<(Table<'a>, Vec<usize>)>,
    sp: Vec<Option<bool>>,
    indecomposable: Vec<Option<bool>>,
}

fn indices(mask: u32) -> Vec<usize> {
    (0..32).filter(|i| mask >> i & 1 == 1).collect()
}

impl<'a> Oracle<'a> {
    fn new(c: &'a Configuration, tester: SpTester) -> Result<Self> {
        let exhaustive_ok = matches!(tester.choice, SpTesterChoice::BruteForce | SpTesterChoice::Auto { .. });
        let table = match c.field() {
            FieldDescriptor::Prime(m) if exhaustive_ok => {
                let (distinct, slot) = c.dedup();
                let cells = subspace_count(m.get(), c.n(), c.test_dim()).saturating_mul(distinct.len() as u128);
                if cells <= tester.budget {
                    Some((Table::Owned(IncidenceTable::build(distinct, c.k(), tester.budget)?), slot))
                } else {
                    None
                }
            }
            _ => None,
        };
        let size = 1usize << c.d();
        Ok(Oracle { c, tester, table, sp: vec![None; size], indecomposable: vec![None; size] })
    }

    fn certificate(&self, mask: u32) -> Result<SpCertificate> {
        let idx = indices(mask);
        match &self.table {
            Some((table, slot)) => {
                let entries: Vec<usize> = idx.iter().map(|&i| slot[i]).collect();
                Ok(match table.first_witness(&entries) {
                    None => SpCertificate::holds(Method::BruteForce),
                    Some((l, pos)) => SpCertificate::fails(Method::BruteForce, pos, table.test_plane(l)),
                })
            }
            None => check_sp(&self.c.subset(&idx)?, self.tester.choice, self.tester.budget),
        }
    }

    fn sp(&mut self, mask: u32) -> Result<bool> {
        if mask.count_ones() < 2 {
            return Ok(false);
        }
        if let Some(v) = self.sp[mask as usize] {
            return Ok(v);
        }
        let v = match &self.table {
            Some((table, slot)) => {
                let entries: Vec<usize> = indices(mask).iter().map(|&i| slot[i]).collect();
                table.is_sp(&entries)
            }
            None => self.certificate(mask)?.is_sp(),
        };
        self.sp[mask as usize] = Some(v);
        Ok(v)
    }

    /// Some split into two SP halves, the lowest index in the first.
    fn split(&mut self, mask: u32) -> Result<Option<(u32, u32)>> {
        let low = mask & mask.wrapping_neg();
        let rest = mask ^ low;
        let mut sub = rest;
        loop {
            let a = sub | low;
            let b = mask ^ a;
            if b != 0 && a.count_ones() >= 2 && b.count_ones() >= 2 && self.sp(a)? && self.sp(b)? {
                return Ok(Some((a, b)));
            }
            if sub == 0 {
                return Ok(None);
            }
            sub = (sub - 1) & rest;
        }
    }

    fn is_indecomposable_sp(&mut self, mask: u32) -> Result<bool> {
        if let Some(v) = self.indecomposable[mask as usize] {
            return Ok(v);
        }
        let v = self.sp(mask)? && self.split(mask)?.is_none();
        self.indecomposable[mask as usize] = Some(v);
        Ok(v)
    }

    /// Restricted-growth enumeration of partitions of {0..d} into exactly
    /// `m` blocks of size >= 2; the first one whose blocks are all
    /// indecomposable SP wins.
    fn search(&mut self, i: usize, m: usize, blocks: &mut Vec<u32>) -> Result<bool> {
        let d = self.c.d();
        let remaining = d - i;
        let open = m - blocks.len();
        let deficit: usize = blocks.iter().map(|b| 2usize.saturating_sub(b.count_ones() as usize)).sum();
        if remaining < deficit + 2 * open {
            return Ok(false);
        }
        if i == d {
            for &b in blocks.iter() {
                if !self.is_indecomposable_sp(b)? {
                    return Ok(false);
                }
            }
            return Ok(true);
        }
        for t in 0..blocks.len() {
            blocks[t] |= 1 << i;
            if self.search(i + 1, m, blocks)? {
                return Ok(true);
            }
            blocks[t] &= !(1 << i);
        }
        if open > 0 {
            blocks.push(1 << i);
            if self.search(i + 1, m, blocks)? {
                return Ok(true);
            }
            blocks.pop();
        }
        Ok(false)
    }
}

pub fn decompose(c: &Configuration, tester: SpTester) -> Result<PartitionReport> {
    decompose_with(c, tester, DEFAULT_MAX_PLANES)
}

/// `decompose` against a prebuilt table; plane i of `c` is table plane
/// `entries[i]`.
pub fn decompose_in_table(
    c: &Configuration,
    table: &IncidenceTable,
    entries: &[usize],
    max_planes: usize,
) -> Result<PartitionReport> {
    let matches = entries.len() == c.d()
        && entries.iter().zip(c.planes()).all(|(&e, p)| table.planes().get(e) == Some(p));
    if !matches {
        return Err(Error::invalid("entries do not index the table"));
    }
    let size = 1usize << c.d().min(31);
    let oracle = Oracle {
        c,
        tester: SpTester::new(SpTesterChoice::BruteForce, u128::MAX),
        table: Some((Table::Borrowed(table), entries.to_vec())),
        sp: vec![None; size],
        indecomposable: vec![None; size],
    };
    run(oracle, max_planes)
}

/// Minimal partition of an SP configuration into indecomposable SP blocks.
///
/// Every SP configuration has one: split a decomposable block into two SP
/// halves until all blocks are indecomposable. Minimizing over merely-SP
/// blocks would be pointless, since the union of SP blocks is SP and any
/// decomposable input then has a 2-block partition.
pub fn decompose_with(c: &Configuration, tester: SpTester, max_planes: usize) -> Result<PartitionReport> {
    if c.d() > max_planes || c.d() > 31 {
        return Err(Error::BellBudgetExceeded { d: c.d(), max: max_planes.min(31) });
    }
    run(Oracle::new(c, tester)?, max_planes)
}

fn run(mut oracle: Oracle<'_>, max_planes: usize) -> Result<PartitionReport> {
    let d = oracle.c.d();
    if d > max_planes || d > 31 {
        return Err(Error::BellBudgetExceeded { d, max: max_planes.min(31) });
    }
    let full = ((1u64 << d) - 1) as u32;
    if !oracle.sp(full)? {
        return Err(Error::NotSpInput);
    }
    let decomposable = oracle.split(full)?.is_some();
    let blocks = if !decomposable {
        vec![full]
    } else {
        let mut found = None;
        for m in 2..=d / 2 {
            let mut blocks = Vec::new();
            if oracle.search(0, m, &mut blocks)? {
                found = Some(blocks);
                break;
            }
        }
        found.expect("refining SP splits reaches indecomposable blocks")
    };
    let per_block_certificates = blocks.iter().map(|&b| oracle.certificate(b)).collect::<Result<Vec<_>>>()?;
    Ok(PartitionReport {
        decomposable,
        m: blocks.len(),
        blocks: blocks.into_iter().map(indices).collect(),
        per_block_certificates,
    })
}
