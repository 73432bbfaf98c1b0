use crate::error::{Error, Result};
use crate::field::FieldElement;
use crate::linalg::{Matrix, ProjSubspace};
use crate::special_position::{Configuration, PartitionReport};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PlaneCover {
    /// Span of each block of the partition.
    pub blocks: Vec<ProjSubspace>,
    pub total_dim: isize,
    /// d + m(k-3).
    pub bound: isize,
    pub within_bound: bool,
}

/// The plane configuration given by the spans of a partition's blocks.
pub fn plane_configuration_cover(c: &Configuration, report: &PartitionReport) -> Result<PlaneCover> {
    crate::special_position::span_bound_report(c, report)?;
    let blocks: Vec<ProjSubspace> = report.blocks.iter().map(|b| c.span_of(b)).collect();
    let total_dim = blocks.iter().map(ProjSubspace::dim).sum();
    let (d, k, m) = (c.d() as isize, c.k() as isize, report.m as isize);
    let bound = d + m * (k - 3);
    Ok(PlaneCover { blocks, total_dim, bound, within_bound: total_dim <= bound })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QuadricReport {
    pub exists: bool,
    /// The 3-plane the lines were moved into, as a subspace of P^n.
    pub frame: ProjSubspace,
    /// Coefficients of x_i x_j (i <= j, lexicographic) in the frame's
    /// coordinates.
    pub quadric: Option<Vec<FieldElement>>,
    /// Rank of the 10-column condition matrix.
    pub rank: usize,
}

/// Monomials x_i x_j with i <= j < 4, lexicographic.
pub const QUADRIC_MONOMIALS: [(usize, usize); 10] =
    [(0, 0), (0, 1), (0, 2), (0, 3), (1, 1), (1, 2), (1, 3), (2, 2), (2, 3), (3, 3)];

/// Looks for a nonzero quadric containing every line of `c`. The lines are
/// moved into a 3-plane containing their span; each line imposes vanishing
/// at three of its points, which forces the restricted binary form to be
/// zero over any field.
pub fn quadric_through_lines(c: &Configuration) -> Result<QuadricReport> {
    if c.k() != 2 {
        return Err(Error::invalid("quadric_through_lines needs lines (k = 2)"));
    }
    let field = c.field();
    let total = c.total_span();
    if total.dim() > 3 {
        return Err(Error::SpanTooBig(total.dim()));
    }
    let n = c.n();
    // pad the span to a 3-plane with unit vectors; if n < 3 embed first
    let (frame, lift): (ProjSubspace, Box<dyn Fn(&[FieldElement]) -> Vec<FieldElement>>) = if n >= 3 {
        let mut f = total.clone();
        for col in 0..=n {
            if f.dim() == 3 {
                break;
            }
            let e = ProjSubspace::coordinate(field, n, &[col])?;
            if !f.contains(&e)? {
                f = f.join(&e)?;
            }
        }
        (f, Box::new(|v: &[FieldElement]| v.to_vec()))
    } else {
        let f = ProjSubspace::whole(field, 3);
        (
            f,
            Box::new(move |v: &[FieldElement]| {
                let mut out = v.to_vec();
                out.resize(4, field.zero());
                out
            }),
        )
    };
    let pivots = frame.pivots().to_vec();
    let mut rows: Vec<FieldElement> = Vec::new();
    let mut conditions = 0;
    for line in c.planes() {
        let u = line.basis().row(0);
        let v = line.basis().row(1);
        let w: Vec<FieldElement> = u.iter().zip(&v).map(|(a, b)| a.add(b)).collect::<Result<_>>()?;
        for p in [u, v, w] {
            let lifted = lift(&p);
            // coordinates in the frame's RREF basis are the pivot entries
            let x: Vec<FieldElement> = pivots.iter().map(|&i| lifted[i].clone()).collect();
            for &(i, j) in &QUADRIC_MONOMIALS {
                rows.push(x[i].mul(&x[j])?);
            }
            conditions += 1;
        }
    }
    let m = Matrix::from_elements(field, conditions, 10, &rows)?;
    let rank = m.rank();
    let kernel = m.kernel();
    let quadric = (kernel.rows() > 0).then(|| kernel.row(0));
    Ok(QuadricReport { exists: quadric.is_some(), frame, quadric, rank })
}

/// Evaluates a quadric (frame coordinates) at a point given in frame
/// coordinates.
pub fn evaluate_quadric(coeffs: &[FieldElement], x: &[FieldElement]) -> Result<FieldElement> {
    let mut acc = x[0].field().zero();
    for (c, &(i, j)) in coeffs.iter().zip(&QUADRIC_MONOMIALS) {
        acc = acc.add(&c.mul(&x[i].mul(&x[j])?)?)?;
    }
    Ok(acc)
}
