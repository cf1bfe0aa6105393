//! Input field states and their first-order correlation matrices.
//!
//! A single photon in the superposition `sum_p c_p |1_p, {0}>` carries no
//! mean field, `<a_p> = 0`, yet its correlations `<a_p^dagger a_q> = c_p^* c_q`
//! are those of a coherent field with amplitudes `c_p`. Every mean intensity
//! downstream of a linear element depends on the input only through these
//! correlations, so the Fock-space state is never built.

use nalgebra::DMatrix;
use num_complex::Complex64;

use crate::error::{Error, Result};

/// Tolerance on `sum |c_p|^2 = 1` for W-state amplitudes.
pub const NORM_TOLERANCE: f64 = 1e-9;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum ProfileKind {
    /// Single-photon superposition amplitudes; unit norm.
    WState,
    /// Coherent-state amplitudes; any finite scale.
    Coherent,
}

/// Complex amplitudes over sites `1..=len`.
#[derive(Debug, Clone, PartialEq)]
pub struct AmplitudeProfile {
    amplitudes: Vec<Complex64>,
    kind: ProfileKind,
}

impl AmplitudeProfile {
    /// W-state amplitudes, which must already be normalised.
    pub fn w_state(amplitudes: Vec<Complex64>) -> Result<Self> {
        check_finite(&amplitudes)?;
        let norm = norm_sqr(&amplitudes);
        if (norm - 1.0).abs() > NORM_TOLERANCE {
            return Err(Error::NotNormalized(norm));
        }
        Ok(Self {
            amplitudes,
            kind: ProfileKind::WState,
        })
    }

    /// W-state amplitudes proportional to `amplitudes`.
    pub fn w_state_normalized(amplitudes: Vec<Complex64>) -> Result<Self> {
        check_finite(&amplitudes)?;
        let norm = norm_sqr(&amplitudes);
        if norm == 0.0 {
            return Err(Error::InvalidProfile("all amplitudes are zero".into()));
        }
        let scale = norm.sqrt().recip();
        Ok(Self {
            amplitudes: amplitudes.into_iter().map(|c| c * scale).collect(),
            kind: ProfileKind::WState,
        })
    }

    pub fn coherent(amplitudes: Vec<Complex64>) -> Result<Self> {
        check_finite(&amplitudes)?;
        Ok(Self {
            amplitudes,
            kind: ProfileKind::Coherent,
        })
    }

    /// Photon in guide `site` (1-based) of an `n_sites` array.
    pub fn single_site(n_sites: usize, site: usize) -> Result<Self> {
        if site == 0 || site > n_sites {
            return Err(Error::InvalidProfile(format!(
                "site {site} outside 1..={n_sites}"
            )));
        }
        let mut amplitudes = vec![Complex64::new(0.0, 0.0); n_sites];
        amplitudes[site - 1] = Complex64::new(1.0, 0.0);
        Ok(Self {
            amplitudes,
            kind: ProfileKind::WState,
        })
    }

    pub fn amplitudes(&self) -> &[Complex64] {
        &self.amplitudes
    }

    pub fn kind(&self) -> ProfileKind {
        self.kind
    }

    pub fn len(&self) -> usize {
        self.amplitudes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.amplitudes.is_empty()
    }

    pub fn norm_sqr(&self) -> f64 {
        norm_sqr(&self.amplitudes)
    }

    /// `|c_p|^2` per site.
    pub fn populations(&self) -> Vec<f64> {
        self.amplitudes.iter().map(|c| c.norm_sqr()).collect()
    }

    /// Same amplitudes, reinterpreted with another kind.
    pub fn with_kind(self, kind: ProfileKind) -> Result<Self> {
        match kind {
            ProfileKind::WState => Self::w_state(self.amplitudes),
            ProfileKind::Coherent => Self::coherent(self.amplitudes),
        }
    }
}

fn norm_sqr(v: &[Complex64]) -> f64 {
    v.iter().map(|c| c.norm_sqr()).sum()
}

fn check_finite(v: &[Complex64]) -> Result<()> {
    if v.is_empty() {
        return Err(Error::InvalidProfile("empty profile".into()));
    }
    if v.iter().any(|c| !c.re.is_finite() || !c.im.is_finite()) {
        return Err(Error::InvalidProfile("non-finite amplitude".into()));
    }
    Ok(())
}

/// Hermitian matrix of `<a_p^dagger a_q>`.
#[derive(Debug, Clone, PartialEq)]
pub struct CorrelationMatrix {
    m: DMatrix<Complex64>,
}

impl CorrelationMatrix {
    /// Wrap an explicit matrix; rejects non-square or non-Hermitian input.
    pub fn from_matrix(m: DMatrix<Complex64>) -> Result<Self> {
        if m.nrows() != m.ncols() {
            return Err(Error::DimensionMismatch {
                expected: m.nrows(),
                found: m.ncols(),
            });
        }
        let c = Self { m };
        let residue = c.hermiticity_defect();
        if residue > 1e-12 {
            return Err(Error::NonHermitian(residue));
        }
        Ok(c)
    }

    #[cfg(test)]
    pub(crate) fn from_matrix_unchecked(m: DMatrix<Complex64>) -> Self {
        Self { m }
    }

    pub fn matrix(&self) -> &DMatrix<Complex64> {
        &self.m
    }

    pub fn dim(&self) -> usize {
        self.m.nrows()
    }

    /// `<a_p^dagger a_q>` with 0-based indices.
    pub fn get(&self, p: usize, q: usize) -> Complex64 {
        self.m[(p, q)]
    }

    pub fn trace(&self) -> f64 {
        self.m.diagonal().iter().map(|z| z.re).sum()
    }

    pub fn hermiticity_defect(&self) -> f64 {
        let n = self.dim();
        let mut worst: f64 = 0.0;
        for i in 0..n {
            for j in 0..n {
                worst = worst.max((self.m[(i, j)] - self.m[(j, i)].conj()).norm());
            }
        }
        worst
    }

    /// Ascending eigenvalues.
    pub fn eigenvalues(&self) -> Vec<f64> {
        let mut e: Vec<f64> = self
            .m
            .clone()
            .symmetric_eigenvalues()
            .iter()
            .copied()
            .collect();
        e.sort_by(|a, b| a.total_cmp(b));
        e
    }
}

/// Mean occupations `<a_p^dagger a_p>` of mutually incoherent inputs.
#[derive(Debug, Clone, PartialEq)]
pub struct OccupationList {
    n: Vec<f64>,
}

impl OccupationList {
    pub fn new(n: Vec<f64>) -> Result<Self> {
        if n.is_empty() {
            return Err(Error::InvalidProfile("empty occupation list".into()));
        }
        if n.iter().any(|x| !x.is_finite() || *x < 0.0) {
            return Err(Error::InvalidProfile(
                "occupations must be finite and non-negative".into(),
            ));
        }
        Ok(Self { n })
    }

    /// Occupations `|c_p|^2` matching a profile's populations.
    pub fn from_populations(profile: &AmplitudeProfile) -> Self {
        Self {
            n: profile.populations(),
        }
    }

    pub fn values(&self) -> &[f64] {
        &self.n
    }

    pub fn len(&self) -> usize {
        self.n.len()
    }

    pub fn is_empty(&self) -> bool {
        self.n.is_empty()
    }
}

/// Profile proportional to `exp[-(p - center)^2 / (2 sigma^2)]` on sites
/// `1..=n_sites`, normalised to unit total weight for either kind.
pub fn gaussian_profile(
    n_sites: usize,
    center: f64,
    sigma: f64,
    kind: ProfileKind,
) -> Result<AmplitudeProfile> {
    if n_sites == 0 {
        return Err(Error::InvalidProfile(
            "gaussian profile needs at least one site".into(),
        ));
    }
    if !(sigma.is_finite() && sigma > 0.0) {
        return Err(Error::InvalidProfile(format!(
            "sigma must be positive, got {sigma}"
        )));
    }
    if !(center.is_finite() && center >= 1.0 && center <= n_sites as f64) {
        return Err(Error::InvalidProfile(format!(
            "center {center} outside 1..={n_sites}"
        )));
    }
    let raw: Vec<Complex64> = (1..=n_sites)
        .map(|p| {
            let d = p as f64 - center;
            Complex64::new((-d * d / (2.0 * sigma * sigma)).exp(), 0.0)
        })
        .collect();
    let profile = AmplitudeProfile::w_state_normalized(raw)?;
    profile.with_kind(kind)
}

/// `m[p][q] = c_p^* c_q`: a rank-one projector for a normalised profile.
pub fn w_correlations(profile: &AmplitudeProfile) -> Result<CorrelationMatrix> {
    let norm = profile.norm_sqr();
    if (norm - 1.0).abs() > NORM_TOLERANCE {
        return Err(Error::NotNormalized(norm));
    }
    let c = profile.amplitudes();
    let n = c.len();
    Ok(CorrelationMatrix {
        m: DMatrix::from_fn(n, n, |p, q| c[p].conj() * c[q]),
    })
}

/// Diagonal correlations of independent inputs.
pub fn incoherent_correlations(occ: &OccupationList) -> CorrelationMatrix {
    let n = occ.len();
    CorrelationMatrix {
        m: DMatrix::from_fn(n, n, |p, q| {
            if p == q {
                Complex64::new(occ.values()[p], 0.0)
            } else {
                Complex64::new(0.0, 0.0)
            }
        }),
    }
}

/// Multiply amplitude `p` by `exp(i phases[p])`.
pub fn apply_phase_mask(profile: &AmplitudeProfile, phases: &[f64]) -> Result<AmplitudeProfile> {
    if phases.len() != profile.len() {
        return Err(Error::DimensionMismatch {
            expected: profile.len(),
            found: phases.len(),
        });
    }
    if phases.iter().any(|p| !p.is_finite()) {
        return Err(Error::InvalidArgument("non-finite phase".into()));
    }
    Ok(AmplitudeProfile {
        amplitudes: profile
            .amplitudes
            .iter()
            .zip(phases)
            .map(|(c, &phi)| c * Complex64::from_polar(1.0, phi))
            .collect(),
        kind: profile.kind,
    })
}
