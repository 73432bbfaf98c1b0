use std::fmt;

use crate::error::{Error, Result};
use crate::field::{sample_value, FieldDescriptor, FieldElement, RationalSampling, SeededRng};
use crate::field::{Arith, Fp};
use crate::linalg::matrix::{Entries, Matrix};

/// A linear subspace of P^n, stored as the RREF of a spanning set with the
/// zero rows removed. Because the RREF is unique, derived equality is
/// subspace equality. The empty subspace has dimension -1 and no rows.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct ProjSubspace {
    n: usize,
    basis: Matrix,
    pivots: Vec<usize>,
}

impl fmt::Debug for ProjSubspace {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "ProjSubspace(dim {} in P^{}: {:?})", self.dim(), self.n, self.basis.to_string_rows())
    }
}

impl ProjSubspace {
    /// Row space of `rows` (any spanning set, dependent rows allowed) in
    /// P^(cols-1).
    pub fn from_rows(rows: &Matrix) -> Result<Self> {
        if rows.cols() == 0 {
            return Err(Error::invalid("subspace needs at least one coordinate"));
        }
        let (r, pivots) = rows.rref_with_pivots();
        let keep: Vec<usize> = (0..pivots.len()).collect();
        Ok(ProjSubspace { n: rows.cols() - 1, basis: r.select_rows(&keep), pivots })
    }

    /// Trusts that `data` is already a full-rank RREF over GF(p).
    pub(crate) fn from_rref_residues(
        field: FieldDescriptor,
        n: usize,
        data: Vec<u64>,
        pivots: Vec<usize>,
    ) -> Self {
        debug_assert_eq!(data.len(), pivots.len() * (n + 1));
        let basis = Matrix::from_typed::<Fp>(field, pivots.len(), n + 1, data);
        debug_assert_eq!(basis.rref_with_pivots().1, pivots);
        ProjSubspace { n, basis, pivots }
    }

    pub fn from_i64_rows(field: FieldDescriptor, n: usize, rows: &[Vec<i64>]) -> Result<Self> {
        if rows.is_empty() {
            return Ok(Self::empty(field, n));
        }
        if rows.iter().any(|r| r.len() != n + 1) {
            return Err(Error::DimensionMismatch(format!("rows must have {} coordinates", n + 1)));
        }
        Self::from_rows(&Matrix::from_i64_rows(field, rows)?)
    }

    pub fn empty(field: FieldDescriptor, n: usize) -> Self {
        ProjSubspace { n, basis: Matrix::zeros(field, 0, n + 1), pivots: Vec::new() }
    }

    pub fn whole(field: FieldDescriptor, n: usize) -> Self {
        ProjSubspace { n, basis: Matrix::identity(field, n + 1), pivots: (0..=n).collect() }
    }

    /// Span of the standard basis vectors `e_i`, `i in idx`.
    pub fn coordinate(field: FieldDescriptor, n: usize, idx: &[usize]) -> Result<Self> {
        let mut m = Matrix::zeros(field, idx.len(), n + 1);
        for (r, &i) in idx.iter().enumerate() {
            if i > n {
                return Err(Error::invalid(format!("coordinate {i} outside P^{n}")));
            }
            m.set(r, i, &field.one())?;
        }
        Self::from_rows(&m)
    }

    pub fn ambient(&self) -> usize {
        self.n
    }

    pub fn field(&self) -> FieldDescriptor {
        self.basis.field()
    }

    pub fn dim(&self) -> isize {
        self.basis.rows() as isize - 1
    }

    pub fn is_empty(&self) -> bool {
        self.basis.rows() == 0
    }

    pub fn basis(&self) -> &Matrix {
        &self.basis
    }

    pub fn pivots(&self) -> &[usize] {
        &self.pivots
    }

    fn check_same(&self, other: &ProjSubspace) -> Result<()> {
        if self.n != other.n || self.field() != other.field() {
            return Err(Error::MixedAmbient);
        }
        Ok(())
    }

    pub fn join(&self, other: &ProjSubspace) -> Result<ProjSubspace> {
        self.check_same(other)?;
        Self::from_rows(&self.basis.stack(&other.basis)?)
    }

    /// Dual description: rows `y` with `b . y = 0` for every basis row `b`.
    pub fn annihilator(&self) -> Matrix {
        self.basis.kernel()
    }

    /// The meet, computed as the common kernel of both annihilators so that
    /// it does not depend on the join.
    pub fn intersect(&self, other: &ProjSubspace) -> Result<ProjSubspace> {
        self.check_same(other)?;
        let equations = self.annihilator().stack(&other.annihilator())?;
        Self::from_rows(&equations.kernel())
    }

    /// True iff the two subspaces share a point; a rank test on the stacked
    /// bases.
    pub fn meets(&self, other: &ProjSubspace) -> Result<bool> {
        self.check_same(other)?;
        if self.is_empty() || other.is_empty() {
            return Ok(false);
        }
        let rows = self.basis.rows() + other.basis.rows();
        if rows > self.n + 1 {
            return Ok(true);
        }
        Ok(self.basis.stack(&other.basis)?.rank() < rows)
    }

    /// `other ⊆ self`.
    pub fn contains(&self, other: &ProjSubspace) -> Result<bool> {
        self.check_same(other)?;
        if other.is_empty() {
            return Ok(true);
        }
        Ok(self.basis.stack(&other.basis)?.rank() == self.basis.rows())
    }

    /// Whether the homogeneous vector `v` (length n+1) lies in the subspace.
    pub fn contains_vector(&self, v: &[FieldElement]) -> Result<bool> {
        let row = Matrix::from_elements(self.field(), 1, self.n + 1, v)?;
        Ok(self.basis.stack(&row)?.rank() == self.basis.rows())
    }

    /// Non-pivot columns in increasing order; they index the coordinates of
    /// the projection target.
    pub fn complement_columns(&self) -> Vec<usize> {
        let mut is_pivot = vec![false; self.n + 1];
        for &p in &self.pivots {
            is_pivot[p] = true;
        }
        (0..=self.n).filter(|&c| !is_pivot[c]).collect()
    }

    /// Matrix of the projection from `self`, acting on row vectors:
    /// `(n+1) x (n - dim)`. Extends the RREF basis by the unit vectors at
    /// non-pivot columns and keeps only those coordinates.
    pub fn projection_matrix(&self) -> Matrix {
        let free = self.complement_columns();
        let field = self.field();
        let mut m = Matrix::zeros(field, self.n + 1, free.len());
        for (t, &c) in free.iter().enumerate() {
            m.set(c, t, &field.one()).expect("same field");
            for (i, &p) in self.pivots.iter().enumerate() {
                m.set(p, t, &self.basis.get(i, c).neg()).expect("same field");
            }
        }
        m
    }

    /// Target dimension of the projection from `self`.
    pub fn projection_target(&self) -> usize {
        self.n - self.basis.rows()
    }

    pub fn project_from(center: &ProjSubspace, x: &ProjSubspace) -> Result<ProjSubspace> {
        center.check_same(x)?;
        if center.is_empty() {
            return Err(Error::EmptyCenter);
        }
        if center.contains(x)? {
            return Err(Error::CenterContainsX);
        }
        Self::from_rows(&x.basis.mul(&center.projection_matrix())?)
    }

    /// Closure of the preimage of `r` under the projection from `center`.
    pub fn preimage_closure(center: &ProjSubspace, r: &ProjSubspace) -> Result<ProjSubspace> {
        if center.is_empty() {
            return Err(Error::EmptyCenter);
        }
        let target = center.projection_target();
        if r.ambient() != target || r.field() != center.field() {
            return Err(Error::AmbientMismatch { expected: target });
        }
        let free = center.complement_columns();
        let field = center.field();
        let mut lift = Matrix::zeros(field, free.len(), center.n + 1);
        for (t, &c) in free.iter().enumerate() {
            lift.set(t, c, &field.one())?;
        }
        let lifted = r.basis.mul(&lift)?;
        Self::from_rows(&center.basis.stack(&lifted)?)
    }

    /// Uniformly random full-rank basis of the requested dimension (rejection
    /// sampling on the entries).
    pub fn random(
        field: FieldDescriptor,
        n: usize,
        dim: isize,
        rng: &mut SeededRng,
        sampling: RationalSampling,
    ) -> Result<ProjSubspace> {
        if dim < -1 || dim > n as isize {
            return Err(Error::invalid(format!("no {dim}-dimensional subspace of P^{n}")));
        }
        let rows = (dim + 1) as usize;
        loop {
            let data: Vec<FieldElement> = (0..rows * (n + 1))
                .map(|_| FieldElement::from_value(field, sample_value(field, rng, sampling)))
                .collect();
            let m = Matrix::from_elements(field, rows, n + 1, &data)?;
            if rows == 0 {
                return Ok(Self::empty(field, n));
            }
            let s = Self::from_rows(&m)?;
            if s.dim() == dim {
                return Ok(s);
            }
        }
    }

    /// Applies the linear map `g` (rows act on the right) to the subspace.
    pub fn transform(&self, g: &Matrix) -> Result<ProjSubspace> {
        if g.rows() != self.n + 1 || g.cols() != self.n + 1 {
            return Err(Error::DimensionMismatch("transform must be (n+1)x(n+1)".into()));
        }
        if self.is_empty() {
            return Ok(self.clone());
        }
        Self::from_rows(&self.basis.mul(g)?)
    }

    /// Basis rows as typed vectors for fast kernels.
    pub(crate) fn residue_rows(&self) -> Option<(u64, Vec<Vec<u64>>)> {
        let FieldDescriptor::Prime(m) = self.field() else { return None };
        let Entries::Residues(v) = &self.basis.entries else { unreachable!() };
        let cols = self.n + 1;
        Some((m.get(), v.chunks(cols.max(1)).map(<[u64]>::to_vec).collect()))
    }
}

/// Smallest subspace of P^n containing every part; the empty subspace for
/// an empty list.
pub fn span(field: FieldDescriptor, n: usize, parts: &[&ProjSubspace]) -> Result<ProjSubspace> {
    for p in parts {
        if p.ambient() != n || p.field() != field {
            return Err(Error::MixedAmbient);
        }
    }
    if parts.is_empty() {
        return Ok(ProjSubspace::empty(field, n));
    }
    let m = Matrix::stack_all(field, n + 1, parts.iter().map(|p| p.basis()))?;
    ProjSubspace::from_rows(&m)
}

pub fn intersect(a: &ProjSubspace, b: &ProjSubspace) -> Result<ProjSubspace> {
    a.intersect(b)
}

pub fn meets(a: &ProjSubspace, b: &ProjSubspace) -> Result<bool> {
    a.meets(b)
}

pub fn project_from(center: &ProjSubspace, x: &ProjSubspace) -> Result<ProjSubspace> {
    ProjSubspace::project_from(center, x)
}

pub fn preimage_closure(center: &ProjSubspace, r: &ProjSubspace) -> Result<ProjSubspace> {
    ProjSubspace::preimage_closure(center, r)
}

/// Rank of the stacked bases of `parts`, i.e. `dim span + 1`.
pub fn stacked_rank(parts: &[&ProjSubspace]) -> usize {
    let Some(first) = parts.first() else { return 0 };
    let m = Matrix::stack_all(first.field(), first.ambient() + 1, parts.iter().map(|p| p.basis()))
        .expect("parts share field and ambient");
    m.rank()
}

/// A random element of GL(n+1), by rejection.
pub fn random_invertible(
    field: FieldDescriptor,
    size: usize,
    rng: &mut SeededRng,
    sampling: RationalSampling,
) -> Matrix {
    loop {
        let data: Vec<FieldElement> = (0..size * size)
            .map(|_| FieldElement::from_value(field, sample_value(field, rng, sampling)))
            .collect();
        let m = Matrix::from_elements(field, size, size, &data).expect("square");
        if !m.det().expect("square").is_zero() {
            return m;
        }
    }
}

/// Rank of a stacked pair, computed without building a `Matrix`; used by the
/// enumeration hot loops.
pub(crate) fn residue_rank(p: u64, rows: &mut [Vec<u64>]) -> usize {
    let fp = Fp::new(crate::field::Modulus::new(p).expect("validated"));
    let cols = rows.first().map_or(0, Vec::len);
    let mut r = 0;
    for c in 0..cols {
        if r == rows.len() {
            break;
        }
        let Some(piv) = (r..rows.len()).find(|&i| rows[i][c] != 0) else { continue };
        rows.swap(piv, r);
        let inv = fp.inv(&rows[r][c]);
        for i in r + 1..rows.len() {
            let f = rows[i][c];
            if f == 0 {
                continue;
            }
            let f = fp.mul(&f, &inv);
            for j in c..cols {
                let t = fp.mul(&f, &rows[r][j]);
                rows[i][j] = fp.sub(&rows[i][j], &t);
            }
        }
        r += 1;
    }
    r
}

