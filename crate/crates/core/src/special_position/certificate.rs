use crate::error::Result;
use crate::linalg::ProjSubspace;
use crate::special_position::Configuration;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Verdict {
    Holds,
    Fails,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Method {
    BruteForce,
    TupleWitness,
}

/// An (n-k)-plane meeting every plane except `j`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Witness {
    pub j: usize,
    pub l_plane: ProjSubspace,
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct SpCertificate {
    pub verdict: Verdict,
    pub method: Method,
    pub witness: Option<Witness>,
    /// Set only for randomized `Holds` verdicts.
    pub trials: Option<u64>,
}

impl SpCertificate {
    pub fn holds(method: Method) -> Self {
        SpCertificate { verdict: Verdict::Holds, method, witness: None, trials: None }
    }

    pub fn fails(method: Method, j: usize, l_plane: ProjSubspace) -> Self {
        SpCertificate {
            verdict: Verdict::Fails,
            method,
            witness: Some(Witness { j, l_plane }),
            trials: None,
        }
    }

    pub fn is_sp(&self) -> bool {
        self.verdict == Verdict::Holds
    }

    /// Exact unless it is a randomized `Holds`.
    pub fn is_exact(&self) -> bool {
        self.trials.is_none()
    }

    /// Replays a `Fails` certificate with `meets` alone: the witness plane has
    /// dimension n-k, meets every plane except `j`, and misses plane `j`.
    /// `Holds` carries no witness and is not replayable; it returns false.
    pub fn reverify(&self, c: &Configuration) -> Result<bool> {
        let (Verdict::Fails, Some(w)) = (self.verdict, &self.witness) else {
            return Ok(false);
        };
        if w.j >= c.d() || w.l_plane.ambient() != c.n() || w.l_plane.field() != c.field() {
            return Ok(false);
        }
        if w.l_plane.dim() != c.test_dim() {
            return Ok(false);
        }
        for (i, plane) in c.planes().iter().enumerate() {
            if w.l_plane.meets(plane)? != (i != w.j) {
                return Ok(false);
            }
        }
        Ok(true)
    }
}
