use crate::error::{Error, Result};
use crate::field::FieldDescriptor;
use crate::linalg::{span, ProjSubspace};

/// An ordered sequence of d >= 1 planes of dimension k-1 in P^n; repeats
/// allowed.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Configuration {
    field: FieldDescriptor,
    n: usize,
    k: usize,
    planes: Vec<ProjSubspace>,
}

impl Configuration {
    pub fn new(field: FieldDescriptor, n: usize, k: usize, planes: Vec<ProjSubspace>) -> Result<Self> {
        if k < 1 || k > n {
            return Err(Error::invalid(format!("need 1 <= k <= n, got k={k}, n={n}")));
        }
        if planes.is_empty() {
            return Err(Error::invalid("a configuration needs at least one plane"));
        }
        for p in &planes {
            if p.ambient() != n || p.field() != field {
                return Err(Error::MixedAmbient);
            }
            if p.dim() != k as isize - 1 {
                return Err(Error::WrongDimension { expected: k as isize - 1, actual: p.dim() });
            }
        }
        Ok(Configuration { field, n, k, planes })
    }

    pub fn field(&self) -> FieldDescriptor {
        self.field
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn d(&self) -> usize {
        self.planes.len()
    }

    pub fn planes(&self) -> &[ProjSubspace] {
        &self.planes
    }

    /// Dimension of the complementary planes L in the definition, n-k.
    pub fn test_dim(&self) -> isize {
        self.n as isize - self.k as isize
    }

    /// The planes at `indices`, in that order.
    pub fn subset(&self, indices: &[usize]) -> Result<Configuration> {
        let planes = indices
            .iter()
            .map(|&i| {
                self.planes
                    .get(i)
                    .cloned()
                    .ok_or_else(|| Error::invalid(format!("plane index {i} out of range")))
            })
            .collect::<Result<Vec<_>>>()?;
        Configuration::new(self.field, self.n, self.k, planes)
    }

    /// Span of the planes at `indices`.
    pub fn span_of(&self, indices: &[usize]) -> ProjSubspace {
        let parts: Vec<&ProjSubspace> = indices.iter().map(|&i| &self.planes[i]).collect();
        span(self.field, self.n, &parts).expect("planes share the ambient")
    }

    pub fn total_span(&self) -> ProjSubspace {
        let all: Vec<usize> = (0..self.d()).collect();
        self.span_of(&all)
    }

    /// Concatenation; both must live in the same P^n over the same field.
    pub fn concat(&self, other: &Configuration) -> Result<Configuration> {
        if self.field != other.field || self.n != other.n || self.k != other.k {
            return Err(Error::MixedAmbient);
        }
        let mut planes = self.planes.clone();
        planes.extend(other.planes.iter().cloned());
        Configuration::new(self.field, self.n, self.k, planes)
    }

    /// Distinct planes in first-occurrence order, and the slot of each plane.
    pub fn dedup(&self) -> (Vec<ProjSubspace>, Vec<usize>) {
        let mut distinct: Vec<ProjSubspace> = Vec::new();
        let mut slot = Vec::with_capacity(self.d());
        for p in &self.planes {
            match distinct.iter().position(|q| q == p) {
                Some(i) => slot.push(i),
                None => {
                    slot.push(distinct.len());
                    distinct.push(p.clone());
                }
            }
        }
        (distinct, slot)
    }
}
