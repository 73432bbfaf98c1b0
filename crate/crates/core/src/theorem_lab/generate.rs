use crate::error::{Error, Result};
use crate::field::{seeded_rng, split_seed, FieldDescriptor, RationalSampling};
use crate::linalg::{random_invertible, Matrix, ProjSubspace};
use crate::special_position::{Configuration, SpCertificate, SpTester};

/// Recipes for configurations that are SP by construction or expected to be.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum GeneratorSpec {
    /// d copies of the coordinate (k-1)-plane spanned by e_0..e_{k-1}.
    Duplicates { n: usize, k: usize, d: usize },
    /// d distinct (k-1)-planes containing the (k-2)-plane A = <e_0..e_{k-2}>
    /// and contained in the k-plane B = <e_0..e_k>.
    Pencil { n: usize, k: usize, d: usize },
    /// d distinct lines through e_0 in the plane <e_0, e_1, e_2>.
    ConcurrentCoplanarLines { n: usize, d: usize },
    /// Concatenation; every part after the first is moved by its own
    /// deterministic projective transformation so the parts are in general
    /// relative position.
    UnionOf(Vec<GeneratorSpec>),
    /// The base configuration moved by a random projective transformation.
    RandomPerturbed { seed: u64, base: Box<GeneratorSpec> },
}

/// How the SP label of a generated configuration was established.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum SpEvidence {
    /// Coincidence or union property, or projective invariance thereof.
    Construction,
    /// Decided by an SP tester.
    Checked(SpCertificate),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Generated {
    pub configuration: Configuration,
    pub sp: bool,
    pub evidence: SpEvidence,
}

impl GeneratorSpec {
    fn shape(&self) -> Result<(usize, usize, usize)> {
        match self {
            GeneratorSpec::Duplicates { n, k, d } | GeneratorSpec::Pencil { n, k, d } => Ok((*n, *k, *d)),
            GeneratorSpec::ConcurrentCoplanarLines { n, d } => Ok((*n, 2, *d)),
            GeneratorSpec::RandomPerturbed { base, .. } => base.shape(),
            GeneratorSpec::UnionOf(parts) => {
                let first = parts.first().ok_or_else(|| Error::invalid("empty union"))?.shape()?;
                let mut d = 0;
                for p in parts {
                    let (n, k, e) = p.shape()?;
                    if (n, k) != (first.0, first.1) {
                        return Err(Error::MixedAmbient);
                    }
                    d += e;
                }
                Ok((first.0, first.1, d))
            }
        }
    }
}

fn check_shape(n: usize, k: usize, d: usize) -> Result<()> {
    if k < 1 || k > n || d < 2 {
        return Err(Error::invalid(format!("need 1 <= k <= n and d >= 2, got n={n}, k={k}, d={d}")));
    }
    Ok(())
}

/// Planes A + <e_{k-1} + t e_k> for t = 0, 1, ... and A + <e_k>: the points
/// of the pencil line B/A. Over GF(q) there are q+1 of them.
fn pencil(field: FieldDescriptor, n: usize, k: usize, d: usize) -> Result<Vec<ProjSubspace>> {
    check_shape(n, k, d)?;
    if let Some(q) = field.modulus() {
        if d as u128 > q as u128 + 1 {
            return Err(Error::InsufficientPoints(format!(
                "a pencil over GF({q}) has only {} members, {d} requested",
                q + 1
            )));
        }
    }
    let a: Vec<Vec<i64>> = (0..k - 1)
        .map(|i| {
            let mut r = vec![0; n + 1];
            r[i] = 1;
            r
        })
        .collect();
    (0..d)
        .map(|t| {
            let mut r = vec![0i64; n + 1];
            if t as u64 == field.modulus().unwrap_or(u64::MAX) {
                r[k] = 1;
            } else {
                r[k - 1] = 1;
                r[k] = t as i64;
            }
            let mut rows = a.clone();
            rows.push(r);
            ProjSubspace::from_i64_rows(field, n, &rows)
        })
        .collect()
}

fn moved(field: FieldDescriptor, n: usize, seed: u64, planes: Vec<ProjSubspace>) -> Result<Vec<ProjSubspace>> {
    let mut rng = seeded_rng(seed);
    let g: Matrix = random_invertible(field, n + 1, &mut rng, RationalSampling { bound: 16 });
    planes.iter().map(|p| p.transform(&g)).collect()
}

fn build(spec: &GeneratorSpec, field: FieldDescriptor) -> Result<Vec<ProjSubspace>> {
    let (n, k, d) = spec.shape()?;
    check_shape(n, k, d)?;
    Ok(match spec {
        GeneratorSpec::Duplicates { .. } => {
            let idx: Vec<usize> = (0..k).collect();
            vec![ProjSubspace::coordinate(field, n, &idx)?; d]
        }
        GeneratorSpec::Pencil { .. } => pencil(field, n, k, d)?,
        GeneratorSpec::ConcurrentCoplanarLines { .. } => {
            if n < 2 {
                return Err(Error::invalid("coplanar lines need n >= 2"));
            }
            pencil(field, n, 2, d)?
        }
        GeneratorSpec::RandomPerturbed { seed, base } => {
            moved(field, n, *seed, build(base, field)?)?
        }
        GeneratorSpec::UnionOf(parts) => {
            let mut planes = Vec::new();
            for (i, part) in parts.iter().enumerate() {
                let mut ps = build(part, field)?;
                if i > 0 {
                    ps = moved(field, n, split_seed(0x5eed, i as u64), ps)?;
                }
                planes.extend(ps);
            }
            planes
        }
    })
}

/// Whether SP of `spec` follows from construction alone (duplicates, and
/// unions and transforms of such).
fn sp_by_construction(spec: &GeneratorSpec) -> bool {
    match spec {
        GeneratorSpec::Duplicates { .. } => true,
        GeneratorSpec::Pencil { .. } | GeneratorSpec::ConcurrentCoplanarLines { .. } => false,
        GeneratorSpec::RandomPerturbed { base, .. } => sp_by_construction(base),
        GeneratorSpec::UnionOf(parts) => parts.iter().all(sp_by_construction),
    }
}

/// Builds the configuration. Outputs that are not SP by construction carry
/// an SP obligation, discharged here with `tester`.
pub fn generate(spec: &GeneratorSpec, field: FieldDescriptor, tester: SpTester) -> Result<Generated> {
    let (n, k, _) = spec.shape()?;
    let planes = build(spec, field)?;
    let configuration = Configuration::new(field, n, k, planes)?;
    if sp_by_construction(spec) {
        return Ok(Generated { configuration, sp: true, evidence: SpEvidence::Construction });
    }
    let cert = tester.check(&configuration)?;
    Ok(Generated { configuration, sp: cert.is_sp(), evidence: SpEvidence::Checked(cert) })
}
