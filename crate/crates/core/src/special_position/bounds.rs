use crate::error::{Error, Result};
use crate::special_position::{Configuration, PartitionReport, SpTester};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SpanBoundReport {
    pub span_dim: isize,
    pub bound: isize,
    pub satisfied: bool,
}

/// Checks that `blocks` partition {0..d} into blocks of size >= 2.
pub(crate) fn check_partition(d: usize, blocks: &[Vec<usize>]) -> Result<()> {
    let mut seen = vec![false; d];
    for b in blocks {
        if b.len() < 2 {
            return Err(Error::MismatchedReport("blocks must have at least two planes".into()));
        }
        for &i in b {
            if i >= d || seen[i] {
                return Err(Error::MismatchedReport(format!("index {i} out of range or repeated")));
            }
            seen[i] = true;
        }
    }
    if seen.iter().any(|s| !s) {
        return Err(Error::MismatchedReport("blocks do not cover every plane".into()));
    }
    Ok(())
}

/// dim Span(Λ_1..Λ_d) against d+k-3 (one block) or d+k-3+(m-1)(k-2).
pub fn span_bound_report(c: &Configuration, report: &PartitionReport) -> Result<SpanBoundReport> {
    check_partition(c.d(), &report.blocks)?;
    if report.m != report.blocks.len() || report.per_block_certificates.len() != report.m {
        return Err(Error::MismatchedReport("block count disagrees with m".into()));
    }
    let (d, k, m) = (c.d() as isize, c.k() as isize, report.m as isize);
    let bound = d + k - 3 + (m - 1) * (k - 2);
    let span_dim = c.total_span().dim();
    Ok(SpanBoundReport { span_dim, bound, satisfied: span_dim <= bound })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PartitionInequality {
    pub lhs: isize,
    pub rhs: isize,
    /// Vacuously true when the hypotheses fail.
    pub satisfied: bool,
    pub hypotheses_met: bool,
    /// First failed hypothesis, if any.
    pub reason: Option<String>,
}

/// Evaluates dim Span ≤ dim S_m + Σ_{j<m}(d_j − ε_j) − m for an ordered
/// partition, after checking its hypotheses: the whole sequence is SP, and
/// for every block j < m the block is SP, its complement is not SP, and
/// dim S_j ≤ d_j + k − 3 − ε_j with ε_j ≥ 0. `epsilons` has one entry per
/// block except the last.
pub fn verify_partition_inequality(
    c: &Configuration,
    partition: &[Vec<usize>],
    epsilons: &[isize],
    tester: SpTester,
) -> Result<PartitionInequality> {
    check_partition(c.d(), partition)?;
    let m = partition.len();
    if m < 2 {
        return Err(Error::invalid("the partition needs at least two blocks"));
    }
    if epsilons.len() != m - 1 {
        return Err(Error::invalid(format!("expected {} epsilons, got {}", m - 1, epsilons.len())));
    }
    let k = c.k() as isize;
    let dims: Vec<isize> = partition.iter().map(|b| c.span_of(b).dim()).collect();
    let lhs = c.total_span().dim();
    let rhs = dims[m - 1]
        + partition[..m - 1].iter().zip(epsilons).map(|(b, e)| b.len() as isize - e).sum::<isize>()
        - m as isize;

    let mut reason = None;
    if !tester.check(c)?.is_sp() {
        reason = Some("the whole sequence is not SP".to_string());
    }
    for j in 0..m - 1 {
        if reason.is_some() {
            break;
        }
        let block = &partition[j];
        let complement: Vec<usize> = (0..c.d()).filter(|i| !block.contains(i)).collect();
        if epsilons[j] < 0 {
            reason = Some(format!("epsilon {j} is negative"));
        } else if !tester.check(&c.subset(block)?)?.is_sp() {
            reason = Some(format!("block {j} is not SP"));
        } else if tester.check(&c.subset(&complement)?)?.is_sp() {
            reason = Some(format!("the complement of block {j} is SP"));
        } else if dims[j] > block.len() as isize + k - 3 - epsilons[j] {
            reason = Some(format!("block {j} spans too much for its epsilon"));
        }
    }
    let hypotheses_met = reason.is_none();
    Ok(PartitionInequality { lhs, rhs, satisfied: !hypotheses_met || lhs <= rhs, hypotheses_met, reason })
}
