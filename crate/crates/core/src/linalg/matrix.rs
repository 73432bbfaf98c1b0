//! Dense exact matrices and the row-reduction kernels behind them.

use std::fmt;

use num_rational::BigRational;

use crate::error::{Error, Result};
use crate::field::{Arith, FieldDescriptor, FieldElement, Fp, Value, Q};

/// Typed entry storage. Residues stay native `u64` so prime-field kernels
/// never touch big integers.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub(crate) enum Entries {
    Residues(Vec<u64>),
    Ratios(Vec<BigRational>),
}

/// Bridges a kernel's element type back to [`Entries`] and [`Value`].
pub(crate) trait Store: Arith {
    fn wrap(v: Vec<Self::Elem>) -> Entries;
    fn to_value(e: &Self::Elem) -> Value;
    fn from_value(v: &Value) -> Self::Elem;
}

impl Store for Fp {
    fn wrap(v: Vec<u64>) -> Entries {
        Entries::Residues(v)
    }
    fn to_value(e: &u64) -> Value {
        Value::Residue(*e)
    }
    fn from_value(v: &Value) -> u64 {
        match v {
            Value::Residue(r) => *r,
            Value::Ratio(_) => unreachable!("rational value in a prime-field matrix"),
        }
    }
}

impl Store for Q {
    fn wrap(v: Vec<BigRational>) -> Entries {
        Entries::Ratios(v)
    }
    fn to_value(e: &BigRational) -> Value {
        Value::Ratio(e.clone())
    }
    fn from_value(v: &Value) -> BigRational {
        match v {
            Value::Ratio(q) => q.clone(),
            Value::Residue(_) => unreachable!("residue in a rational matrix"),
        }
    }
}

/// Runs `$body` with `$ar` bound to the field's kernel and `$v` to the typed
/// entry slice.
macro_rules! dispatch {
    ($m:expr, $ar:ident, $v:ident => $body:expr) => {
        match (&$m.field, &$m.entries) {
            (FieldDescriptor::Prime(p), Entries::Residues($v)) => {
                let $ar = Fp::new(*p);
                $body
            }
            (FieldDescriptor::Rational, Entries::Ratios($v)) => {
                let $ar = Q;
                $body
            }
            _ => unreachable!("descriptor and storage always agree"),
        }
    };
}

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Matrix {
    pub(crate) field: FieldDescriptor,
    rows: usize,
    cols: usize,
    pub(crate) entries: Entries,
}

impl fmt::Debug for Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Matrix<{}>{}x{} [", self.field, self.rows, self.cols)?;
        for i in 0..self.rows {
            let row: Vec<String> = (0..self.cols).map(|j| self.get(i, j).to_string()).collect();
            write!(f, "[{}]", row.join(", "))?;
        }
        write!(f, "]")
    }
}

impl Matrix {
    pub fn zeros(field: FieldDescriptor, rows: usize, cols: usize) -> Self {
        let entries = match field {
            FieldDescriptor::Prime(_) => Entries::Residues(vec![0; rows * cols]),
            FieldDescriptor::Rational => Entries::Ratios(vec![Q.zero(); rows * cols]),
        };
        Matrix { field, rows, cols, entries }
    }

    pub fn identity(field: FieldDescriptor, n: usize) -> Self {
        let mut m = Matrix::zeros(field, n, n);
        for i in 0..n {
            m.set(i, i, &field.one()).expect("same field");
        }
        m
    }

    pub(crate) fn from_typed<A: Store>(
        field: FieldDescriptor,
        rows: usize,
        cols: usize,
        data: Vec<A::Elem>,
    ) -> Self {
        assert_eq!(data.len(), rows * cols);
        Matrix { field, rows, cols, entries: A::wrap(data) }
    }

    /// Builds a matrix from row-major field elements.
    pub fn from_elements(
        field: FieldDescriptor,
        rows: usize,
        cols: usize,
        data: &[FieldElement],
    ) -> Result<Self> {
        if data.len() != rows * cols {
            return Err(Error::DimensionMismatch(format!(
                "{} entries for a {rows}x{cols} matrix",
                data.len()
            )));
        }
        if data.iter().any(|e| e.field() != field) {
            return Err(Error::MixedFields);
        }
        let entries = match field {
            FieldDescriptor::Prime(_) => {
                Entries::Residues(data.iter().map(|e| Fp::from_value(e.value())).collect())
            }
            FieldDescriptor::Rational => {
                Entries::Ratios(data.iter().map(|e| Q::from_value(e.value())).collect())
            }
        };
        Ok(Matrix { field, rows, cols, entries })
    }

    /// Small integer matrices, reduced into `field`.
    pub fn from_i64_rows(field: FieldDescriptor, rows: &[Vec<i64>]) -> Result<Self> {
        let cols = rows.first().map_or(0, Vec::len);
        if rows.iter().any(|r| r.len() != cols) {
            return Err(Error::DimensionMismatch("ragged rows".into()));
        }
        let data: Vec<FieldElement> = rows
            .iter()
            .flatten()
            .map(|&v| FieldElement::from_i64(field, v))
            .collect();
        Matrix::from_elements(field, rows.len(), cols, &data)
    }

    /// Parses rows of decimal scalar strings.
    pub fn from_str_rows(field: FieldDescriptor, cols: usize, rows: &[Vec<String>]) -> Result<Self> {
        if rows.iter().any(|r| r.len() != cols) {
            return Err(Error::DimensionMismatch(format!("rows must have {cols} entries")));
        }
        let data = rows
            .iter()
            .flatten()
            .map(|s| field.parse(s))
            .collect::<Result<Vec<_>>>()?;
        Matrix::from_elements(field, rows.len(), cols, &data)
    }

    pub fn field(&self) -> FieldDescriptor {
        self.field
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> FieldElement {
        assert!(i < self.rows && j < self.cols, "index ({i},{j}) out of bounds");
        let idx = i * self.cols + j;
        let value = match &self.entries {
            Entries::Residues(v) => Value::Residue(v[idx]),
            Entries::Ratios(v) => Value::Ratio(v[idx].clone()),
        };
        FieldElement::from_value(self.field, value)
    }

    pub fn set(&mut self, i: usize, j: usize, e: &FieldElement) -> Result<()> {
        if e.field() != self.field {
            return Err(Error::MixedFields);
        }
        assert!(i < self.rows && j < self.cols, "index ({i},{j}) out of bounds");
        let idx = i * self.cols + j;
        match &mut self.entries {
            Entries::Residues(v) => v[idx] = Fp::from_value(e.value()),
            Entries::Ratios(v) => v[idx] = Q::from_value(e.value()),
        }
        Ok(())
    }

    pub fn row(&self, i: usize) -> Vec<FieldElement> {
        (0..self.cols).map(|j| self.get(i, j)).collect()
    }

    pub fn to_string_rows(&self) -> Vec<Vec<String>> {
        (0..self.rows)
            .map(|i| (0..self.cols).map(|j| self.get(i, j).to_string()).collect())
            .collect()
    }

    pub fn is_zero(&self) -> bool {
        dispatch!(self, ar, v => v.iter().all(|e| ar.is_zero(e)))
    }

    /// Vertical concatenation.
    pub fn stack(&self, other: &Matrix) -> Result<Matrix> {
        if self.field != other.field {
            return Err(Error::MixedFields);
        }
        if self.cols != other.cols {
            return Err(Error::DimensionMismatch(format!(
                "cannot stack {} and {} columns",
                self.cols, other.cols
            )));
        }
        let entries = match (&self.entries, &other.entries) {
            (Entries::Residues(a), Entries::Residues(b)) => {
                Entries::Residues(a.iter().chain(b).copied().collect())
            }
            (Entries::Ratios(a), Entries::Ratios(b)) => {
                Entries::Ratios(a.iter().chain(b).cloned().collect())
            }
            _ => unreachable!("same field implies same storage"),
        };
        Ok(Matrix { field: self.field, rows: self.rows + other.rows, cols: self.cols, entries })
    }

    pub fn stack_all<'a>(
        field: FieldDescriptor,
        cols: usize,
        parts: impl IntoIterator<Item = &'a Matrix>,
    ) -> Result<Matrix> {
        parts
            .into_iter()
            .try_fold(Matrix::zeros(field, 0, cols), |acc, m| acc.stack(m))
    }

    pub fn select_rows(&self, idx: &[usize]) -> Matrix {
        dispatch!(self, _ar, v => {
            let data = idx
                .iter()
                .flat_map(|&i| v[i * self.cols..(i + 1) * self.cols].iter().cloned())
                .collect();
            Matrix { field: self.field, rows: idx.len(), cols: self.cols, entries: wrap_like(&_ar, data) }
        })
    }

    pub fn select_cols(&self, idx: &[usize]) -> Matrix {
        dispatch!(self, _ar, v => {
            let mut data = Vec::with_capacity(self.rows * idx.len());
            for i in 0..self.rows {
                for &j in idx {
                    data.push(v[i * self.cols + j].clone());
                }
            }
            Matrix { field: self.field, rows: self.rows, cols: idx.len(), entries: wrap_like(&_ar, data) }
        })
    }

    pub fn transpose(&self) -> Matrix {
        dispatch!(self, _ar, v => {
            let mut data = Vec::with_capacity(v.len());
            for j in 0..self.cols {
                for i in 0..self.rows {
                    data.push(v[i * self.cols + j].clone());
                }
            }
            Matrix { field: self.field, rows: self.cols, cols: self.rows, entries: wrap_like(&_ar, data) }
        })
    }

    pub fn mul(&self, other: &Matrix) -> Result<Matrix> {
        if self.field != other.field {
            return Err(Error::MixedFields);
        }
        if self.cols != other.rows {
            return Err(Error::DimensionMismatch(format!(
                "{}x{} times {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        let (r, inner, c) = (self.rows, self.cols, other.cols);
        Ok(dispatch!(self, ar, a => {
            let b = typed(&ar, other);
            let mut out = vec![ar.zero(); r * c];
            for i in 0..r {
                for t in 0..inner {
                    let x = &a[i * inner + t];
                    if ar.is_zero(x) {
                        continue;
                    }
                    for j in 0..c {
                        out[i * c + j] = ar.add(&out[i * c + j], &ar.mul(x, &b[t * c + j]));
                    }
                }
            }
            Matrix { field: self.field, rows: r, cols: c, entries: wrap_like(&ar, out) }
        }))
    }

    /// Reduced row echelon form and rank. Zero rows are kept at the bottom.
    pub fn rref(&self) -> (Matrix, usize) {
        let (m, pivots) = self.rref_with_pivots();
        (m, pivots.len())
    }

    pub fn rref_with_pivots(&self) -> (Matrix, Vec<usize>) {
        dispatch!(self, ar, v => {
            let mut data = v.clone();
            let pivots = rref_in_place(&ar, &mut data, self.rows, self.cols);
            let m = Matrix { field: self.field, rows: self.rows, cols: self.cols, entries: wrap_like(&ar, data) };
            (m, pivots)
        })
    }

    pub fn rank(&self) -> usize {
        dispatch!(self, ar, v => {
            let mut data = v.clone();
            rank_in_place(&ar, &mut data, self.rows, self.cols)
        })
    }

    pub fn det(&self) -> Result<FieldElement> {
        if self.rows != self.cols {
            return Err(Error::DimensionMismatch(format!(
                "determinant of a {}x{} matrix",
                self.rows, self.cols
            )));
        }
        Ok(dispatch!(self, ar, v => {
            let mut data = v.clone();
            let d = det_in_place(&ar, &mut data, self.rows);
            FieldElement::from_value(self.field, store_value(&ar, &d))
        }))
    }

    /// Basis of the right kernel `{x : M x = 0}`, one vector per row, ordered
    /// by the free column that carries its leading 1.
    pub fn kernel(&self) -> Matrix {
        dispatch!(self, ar, v => {
            let mut data = v.clone();
            let pivots = rref_in_place(&ar, &mut data, self.rows, self.cols);
            let basis = kernel_from_rref(&ar, &data, self.cols, &pivots);
            let rows = basis.len() / self.cols.max(1);
            let rows = if self.cols == 0 { 0 } else { rows };
            Matrix { field: self.field, rows, cols: self.cols, entries: wrap_like(&ar, basis) }
        })
    }
}

fn wrap_like<A: Store>(_ar: &A, v: Vec<A::Elem>) -> Entries {
    A::wrap(v)
}

fn store_value<A: Store>(_ar: &A, e: &A::Elem) -> Value {
    A::to_value(e)
}

/// Typed view of another matrix known to share the field of `_ar`.
pub(crate) fn typed<'m, A: Store>(_ar: &A, m: &'m Matrix) -> std::borrow::Cow<'m, [A::Elem]> {
    let values: Vec<A::Elem> = match &m.entries {
        Entries::Residues(v) => v.iter().map(|r| A::from_value(&Value::Residue(*r))).collect(),
        Entries::Ratios(v) => v.iter().map(|q| A::from_value(&Value::Ratio(q.clone()))).collect(),
    };
    std::borrow::Cow::Owned(values)
}

/// Gauss-Jordan elimination; returns the pivot columns.
pub(crate) fn rref_in_place<A: Arith>(
    ar: &A,
    data: &mut [A::Elem],
    rows: usize,
    cols: usize,
) -> Vec<usize> {
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        if r == rows {
            break;
        }
        let Some(p) = (r..rows).find(|&i| !ar.is_zero(&data[i * cols + c])) else {
            continue;
        };
        if p != r {
            for j in 0..cols {
                data.swap(p * cols + j, r * cols + j);
            }
        }
        let inv = ar.inv(&data[r * cols + c]);
        if !ar.is_one(&inv) {
            for j in c..cols {
                data[r * cols + j] = ar.mul(&data[r * cols + j], &inv);
            }
        }
        for i in 0..rows {
            if i == r {
                continue;
            }
            let f = data[i * cols + c].clone();
            if ar.is_zero(&f) {
                continue;
            }
            for j in c..cols {
                data[i * cols + j] = ar.sub_mul(&data[i * cols + j], &f, &data[r * cols + j]);
            }
        }
        pivots.push(c);
        r += 1;
    }
    pivots
}

/// Forward elimination only.
pub(crate) fn rank_in_place<A: Arith>(ar: &A, data: &mut [A::Elem], rows: usize, cols: usize) -> usize {
    let mut r = 0;
    for c in 0..cols {
        if r == rows {
            break;
        }
        let Some(p) = (r..rows).find(|&i| !ar.is_zero(&data[i * cols + c])) else {
            continue;
        };
        if p != r {
            for j in 0..cols {
                data.swap(p * cols + j, r * cols + j);
            }
        }
        let inv = ar.inv(&data[r * cols + c]);
        for i in r + 1..rows {
            let f = data[i * cols + c].clone();
            if ar.is_zero(&f) {
                continue;
            }
            let f = ar.mul(&f, &inv);
            for j in c..cols {
                data[i * cols + j] = ar.sub_mul(&data[i * cols + j], &f, &data[r * cols + j]);
            }
        }
        r += 1;
    }
    r
}

pub(crate) fn det_in_place<A: Arith>(ar: &A, data: &mut [A::Elem], n: usize) -> A::Elem {
    let mut det = ar.one();
    for c in 0..n {
        let Some(p) = (c..n).find(|&i| !ar.is_zero(&data[i * n + c])) else {
            return ar.zero();
        };
        if p != c {
            for j in 0..n {
                data.swap(p * n + j, c * n + j);
            }
            det = ar.neg(&det);
        }
        let pivot = data[c * n + c].clone();
        det = ar.mul(&det, &pivot);
        let inv = ar.inv(&pivot);
        for i in c + 1..n {
            let f = data[i * n + c].clone();
            if ar.is_zero(&f) {
                continue;
            }
            let f = ar.mul(&f, &inv);
            for j in c..n {
                data[i * n + j] = ar.sub_mul(&data[i * n + j], &f, &data[c * n + j]);
            }
        }
    }
    det
}

/// Kernel basis of a matrix already in RREF, flattened row-major.
pub(crate) fn kernel_from_rref<A: Arith>(
    ar: &A,
    rref: &[A::Elem],
    cols: usize,
    pivots: &[usize],
) -> Vec<A::Elem> {
    let mut out = Vec::new();
    let mut is_pivot = vec![false; cols];
    for &p in pivots {
        is_pivot[p] = true;
    }
    for free in (0..cols).filter(|&c| !is_pivot[c]) {
        let mut v = vec![ar.zero(); cols];
        v[free] = ar.one();
        for (i, &p) in pivots.iter().enumerate() {
            v[p] = ar.neg(&rref[i * cols + free]);
        }
        out.extend(v);
    }
    out
}
