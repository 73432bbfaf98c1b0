use crate::combinatorics::{index_of, k_subsets};
use crate::error::{Error, Result};
use crate::field::{FieldDescriptor, FieldElement};
use crate::linalg::{Matrix, ProjSubspace};

/// A point of G(k-1, n) in its Plücker embedding. Coordinates are indexed
/// by the k-subsets of `0..=n` in lexicographic order and scaled so the
/// first nonzero one is 1.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct PluckerPoint {
    k: usize,
    n: usize,
    field: FieldDescriptor,
    coords: Vec<FieldElement>,
}

impl PluckerPoint {
    /// Validates length and nonvanishing, then normalizes. Does not check the
    /// Plücker relations; see [`check_plucker_relations`].
    pub fn new(field: FieldDescriptor, k: usize, n: usize, coords: Vec<FieldElement>) -> Result<Self> {
        if k == 0 || k > n + 1 {
            return Err(Error::invalid(format!("k = {k} out of range for P^{n}")));
        }
        let expected = k_subsets(n + 1, k).len();
        if coords.len() != expected {
            return Err(Error::DimensionMismatch(format!(
                "{} Plücker coordinates, expected {expected}",
                coords.len()
            )));
        }
        if coords.iter().any(|c| c.field() != field) {
            return Err(Error::MixedFields);
        }
        let Some(lead) = coords.iter().find(|c| !c.is_zero()) else {
            return Err(Error::invalid("all Plücker coordinates vanish"));
        };
        let scale = lead.inv()?;
        let coords = coords.iter().map(|c| c.mul(&scale)).collect::<Result<_>>()?;
        Ok(PluckerPoint { k, n, field, coords })
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn field(&self) -> FieldDescriptor {
        self.field
    }

    pub fn coords(&self) -> &[FieldElement] {
        &self.coords
    }

    /// Coordinate `p_S` for an arbitrary (unsorted, possibly repeating) index
    /// list, with the alternating sign.
    pub fn signed(&self, index: &[usize], subsets: &[Vec<usize>]) -> FieldElement {
        let mut idx = index.to_vec();
        let mut sign = false;
        // bubble sort, counting transpositions
        for i in 0..idx.len() {
            for j in 0..idx.len() - 1 - i {
                if idx[j] == idx[j + 1] {
                    return self.field.zero();
                }
                if idx[j] > idx[j + 1] {
                    idx.swap(j, j + 1);
                    sign = !sign;
                }
            }
        }
        if idx.windows(2).any(|w| w[0] == w[1]) {
            return self.field.zero();
        }
        let c = &self.coords[index_of(subsets, &idx).expect("valid k-subset")];
        if sign {
            c.neg()
        } else {
            c.clone()
        }
    }
}

/// Plücker coordinates of a (k-1)-plane: the k x k minors of its basis.
pub fn plucker(s: &ProjSubspace, k: usize) -> Result<PluckerPoint> {
    if s.dim() != k as isize - 1 {
        return Err(Error::WrongDimension { expected: k as isize - 1, actual: s.dim() });
    }
    let n = s.ambient();
    let coords = k_subsets(n + 1, k)
        .iter()
        .map(|cols| s.basis().select_cols(cols).det())
        .collect::<Result<Vec<_>>>()?;
    PluckerPoint::new(s.field(), k, n, coords)
}

/// True iff every quadratic Plücker relation vanishes:
/// `sum_l (-1)^l p(I + j_l) p(J - j_l) = 0` for all `|I| = k-1`, `|J| = k+1`.
/// The three-term relations are the special case where `I` and `J` share
/// `k-2` indices.
pub fn check_plucker_relations(p: &PluckerPoint) -> bool {
    let (k, n) = (p.k, p.n);
    let subsets = k_subsets(n + 1, k);
    let field = p.field;
    for i_set in k_subsets(n + 1, k - 1) {
        for j_set in k_subsets(n + 1, k + 1) {
            let mut acc = field.zero();
            for l in 0..=k {
                let mut left = i_set.clone();
                left.push(j_set[l]);
                let right: Vec<usize> =
                    j_set.iter().enumerate().filter(|&(t, _)| t != l).map(|(_, &x)| x).collect();
                let term = p.signed(&left, &subsets).mul(&p.signed(&right, &subsets)).expect("same field");
                acc = if l % 2 == 0 { acc.add(&term) } else { acc.sub(&term) }.expect("same field");
            }
            if !acc.is_zero() {
                return false;
            }
        }
    }
    true
}

/// Recovers the (k-1)-plane from valid Plücker coordinates: the plane is the
/// set of `x` with `x ∧ Λ = 0`, whose equations are linear in the `p_S`.
pub fn plane_from_plucker(p: &PluckerPoint) -> Result<ProjSubspace> {
    if !check_plucker_relations(p) {
        return Err(Error::invalid("coordinates violate the Plücker relations"));
    }
    let (k, n) = (p.k, p.n);
    let subsets = k_subsets(n + 1, k);
    let field = p.field;
    // pick a nonzero coordinate p_S; the rows v_s = sum_j p(S - s + j) e_j
    // (s in S) span the plane.
    let lead = p.coords.iter().position(|c| !c.is_zero()).expect("normalized");
    let s_set = &subsets[lead];
    let mut rows = Vec::new();
    for &s in s_set {
        let rest: Vec<usize> = s_set.iter().copied().filter(|&x| x != s).collect();
        for j in 0..=n {
            let mut idx = rest.clone();
            idx.push(j);
            rows.push(p.signed(&idx, &subsets));
        }
    }
    let m = Matrix::from_elements(field, k, n + 1, &rows)?;
    let plane = ProjSubspace::from_rows(&m)?;
    if plane.dim() != k as isize - 1 {
        return Err(Error::invalid("coordinates do not define a plane"));
    }
    Ok(plane)
}

/// The points of a finite subset of G(k-1, n); duplicates allowed.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GrassmannPointSet {
    k: usize,
    n: usize,
    field: FieldDescriptor,
    points: Vec<PluckerPoint>,
}

impl GrassmannPointSet {
    pub fn new(field: FieldDescriptor, k: usize, n: usize, points: Vec<PluckerPoint>) -> Result<Self> {
        if points.iter().any(|p| p.k != k || p.n != n) {
            return Err(Error::DimensionMismatch("points of different Grassmannians".into()));
        }
        if points.iter().any(|p| p.field != field) {
            return Err(Error::MixedFields);
        }
        Ok(GrassmannPointSet { k, n, field, points })
    }

    pub fn from_planes(planes: &[ProjSubspace], k: usize) -> Result<Self> {
        let first = planes.first().ok_or_else(|| Error::invalid("empty point set"))?;
        let points = planes.iter().map(|s| plucker(s, k)).collect::<Result<Vec<_>>>()?;
        GrassmannPointSet::new(first.field(), k, first.ambient(), points)
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn field(&self) -> FieldDescriptor {
        self.field
    }

    pub fn points(&self) -> &[PluckerPoint] {
        &self.points
    }
}
