use rayon::prelude::*;

use crate::combinatorics::binomial;
use crate::error::{Error, Result};
use crate::field::FieldDescriptor;
use crate::grassmannian::{cayley_bacharach_test, enumerate_subspaces, subspace_count, GrassmannPointSet};
use crate::linalg::{span, ProjSubspace};
use crate::special_position::{decompose_in_table, Configuration, IncidenceTable, DEFAULT_MAX_PLANES};

/// One SP configuration met by a survey, by indices into the plane list.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SurveyRecord {
    pub planes: Vec<usize>,
    pub span_dim: isize,
    pub m: usize,
    pub blocks: Vec<Vec<usize>>,
    pub bound: isize,
    pub cb1: Option<bool>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BoundViolation {
    pub planes: Vec<usize>,
    pub span_dim: isize,
    pub bound: isize,
    pub m: usize,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SurveyResult {
    pub q: u64,
    pub n: usize,
    pub k: usize,
    pub d: usize,
    pub total_configs: u64,
    pub sp_configs: u64,
    pub indecomposable_configs: u64,
    pub decomposable_configs: u64,
    /// Largest span dimension among indecomposable SP configurations.
    pub max_span_dim_observed: Option<isize>,
    /// Indecomposable SP configurations above d+k-3.
    pub bound_violations: Vec<BoundViolation>,
    /// Decomposable SP configurations above d+k-3+(m-1)(k-2).
    pub corollary_violations: Vec<BoundViolation>,
    /// SP configurations whose Plücker points fail CB(1), when checked.
    pub sp_not_cb1: u64,
    /// Configurations passing CB(1) but not SP; must stay empty.
    pub cb1_not_sp: Vec<Vec<usize>>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SurveyOptions {
    pub budget: u128,
    /// Also run CB(1) on every configuration (SP or not).
    pub check_cb1: bool,
}

impl Default for SurveyOptions {
    fn default() -> Self {
        SurveyOptions { budget: crate::grassmannian::DEFAULT_BUDGET, check_cb1: false }
    }
}

/// Output of a survey: the summary, the plane list the indices refer to,
/// and every SP configuration met, in enumeration order.
#[derive(Debug)]
pub struct Survey {
    pub result: SurveyResult,
    pub planes: Vec<ProjSubspace>,
    pub records: Vec<SurveyRecord>,
}

pub fn survey_exhaustive(q: u64, n: usize, k: usize, d: usize) -> Result<SurveyResult> {
    Ok(survey_with(q, n, k, d, SurveyOptions::default())?.result)
}

/// Calls `f` on every non-decreasing sequence of length `len` over
/// `start..count`, in lexicographic order.
fn each_multiset(count: usize, start: usize, len: usize, cur: &mut Vec<usize>, f: &mut dyn FnMut(&[usize])) {
    if cur.len() == len {
        f(cur);
        return;
    }
    for i in start..count {
        cur.push(i);
        each_multiset(count, i, len, cur, f);
        cur.pop();
    }
}

struct Partial {
    total: u64,
    sp: u64,
    records: Vec<SurveyRecord>,
    cb1_not_sp: Vec<Vec<usize>>,
}

fn cb1_holds(planes: &[ProjSubspace], k: usize) -> Result<bool> {
    let g = GrassmannPointSet::from_planes(planes, k)?;
    Ok(cayley_bacharach_test(&g, 1, u128::MAX)?.holds)
}

/// Every d-multiset of (k-1)-planes of P^n(F_q): SP classification,
/// decomposition, span bounds and CB(1) comparison.
pub fn survey_with(q: u64, n: usize, k: usize, d: usize, opts: SurveyOptions) -> Result<Survey> {
    let field = FieldDescriptor::gf(q)?;
    if k < 1 || k > n || d < 1 {
        return Err(Error::invalid(format!("need 1 <= k <= n and d >= 1, got n={n}, k={k}, d={d}")));
    }
    if d > DEFAULT_MAX_PLANES {
        return Err(Error::BellBudgetExceeded { d, max: DEFAULT_MAX_PLANES });
    }
    let count = subspace_count(q, n, k as isize - 1);
    let configs = binomial(count + d as u128 - 1, d as u128);
    if configs > opts.budget {
        return Err(Error::BudgetExceeded { what: "configurations", count: configs, budget: opts.budget });
    }
    let planes: Vec<ProjSubspace> = enumerate_subspaces(field, n, k as isize - 1, opts.budget)?.collect();
    let table = IncidenceTable::build(planes.clone(), k, opts.budget)?;
    let count = planes.len();

    let chunks: Vec<Result<Partial>> = (0..count)
        .into_par_iter()
        .map(|first| {
            let mut part = Partial { total: 0, sp: 0, records: Vec::new(), cb1_not_sp: Vec::new() };
            let mut err = None;
            let mut cur = vec![first];
            each_multiset(count, first, d, &mut cur, &mut |idx| {
                if err.is_some() {
                    return;
                }
                part.total += 1;
                let sp = table.is_sp(idx);
                let chosen: Vec<ProjSubspace> = if sp || opts.check_cb1 {
                    idx.iter().map(|&i| planes[i].clone()).collect()
                } else {
                    Vec::new()
                };
                let mut cb1 = None;
                if opts.check_cb1 {
                    match cb1_holds(&chosen, k) {
                        Ok(h) => cb1 = Some(h),
                        Err(e) => err = Some(e),
                    }
                    if cb1 == Some(true) && !sp {
                        part.cb1_not_sp.push(idx.to_vec());
                    }
                }
                if !sp {
                    return;
                }
                part.sp += 1;
                if cb1.is_none() {
                    match cb1_holds(&chosen, k) {
                        Ok(h) => cb1 = Some(h),
                        Err(e) => err = Some(e),
                    }
                }
                let c = Configuration::new(field, n, k, chosen).expect("enumerated planes");
                let report = match decompose_in_table(&c, &table, idx, DEFAULT_MAX_PLANES) {
                    Ok(r) => r,
                    Err(e) => {
                        err = Some(e);
                        return;
                    }
                };
                let refs: Vec<&ProjSubspace> = c.planes().iter().collect();
                let span_dim = span(field, n, &refs).expect("same ambient").dim();
                let (dd, kk, m) = (d as isize, k as isize, report.m as isize);
                part.records.push(SurveyRecord {
                    planes: idx.to_vec(),
                    span_dim,
                    m: report.m,
                    blocks: report.blocks,
                    bound: dd + kk - 3 + (m - 1) * (kk - 2),
                    cb1,
                });
            });
            match err {
                Some(e) => Err(e),
                None => Ok(part),
            }
        })
        .collect();

    let mut result = SurveyResult {
        q,
        n,
        k,
        d,
        total_configs: 0,
        sp_configs: 0,
        indecomposable_configs: 0,
        decomposable_configs: 0,
        max_span_dim_observed: None,
        bound_violations: Vec::new(),
        corollary_violations: Vec::new(),
        sp_not_cb1: 0,
        cb1_not_sp: Vec::new(),
    };
    let mut records = Vec::new();
    for chunk in chunks {
        let part = chunk?;
        result.total_configs += part.total;
        result.sp_configs += part.sp;
        result.cb1_not_sp.extend(part.cb1_not_sp);
        records.extend(part.records);
    }
    for r in &records {
        let violation = BoundViolation { planes: r.planes.clone(), span_dim: r.span_dim, bound: r.bound, m: r.m };
        if r.m == 1 {
            result.indecomposable_configs += 1;
            result.max_span_dim_observed = Some(result.max_span_dim_observed.map_or(r.span_dim, |x| x.max(r.span_dim)));
            if r.span_dim > r.bound {
                result.bound_violations.push(violation);
            }
        } else {
            result.decomposable_configs += 1;
            if r.span_dim > r.bound {
                result.corollary_violations.push(violation);
            }
        }
        if r.cb1 == Some(false) {
            result.sp_not_cb1 += 1;
        }
    }
    Ok(Survey { result, planes, records })
}
