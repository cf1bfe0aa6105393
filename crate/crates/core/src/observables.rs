//! Mean output intensities behind a linear optical element.
//!
//! Index convention throughout: `out[q] = sum_p G[(q, p)] in[p]`, so the
//! intensity at output `q` is
//! `I_q = sum_{r,s} conj(G[(q, r)]) G[(q, s)] <a_r^dagger a_s>`.
//! Rank-one inputs (W-states, coherent fields) collapse this to
//! `|sum_p G[(q, p)] c_p|^2`; incoherent inputs to `sum_p |G[(q, p)]|^2 n_p`.

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::lattice::LatticeParams;
use crate::propagator::{analytic_propagator, PropagatorMatrix, PropagatorMethod, SpectralEvolver};
use crate::states::{
    w_correlations, AmplitudeProfile, CorrelationMatrix, OccupationList, NORM_TOLERANCE,
};

/// Smallest intensity accepted before a map is declared inconsistent.
pub const NEGATIVITY_TOLERANCE: f64 = 1e-12;
/// Largest imaginary part tolerated in the bilinear form.
pub const IMAGINARY_TOLERANCE: f64 = 1e-9;

fn check_dim(g: &PropagatorMatrix, n: usize) -> Result<()> {
    if g.dim() != n {
        return Err(Error::DimensionMismatch {
            expected: g.dim(),
            found: n,
        });
    }
    Ok(())
}

/// General bilinear law for any correlation matrix.
pub fn intensity_from_correlations(
    g: &PropagatorMatrix,
    m: &CorrelationMatrix,
) -> Result<Vec<f64>> {
    check_dim(g, m.dim())?;
    let gm = g.matrix();
    let corr = m.matrix();
    let n = g.dim();
    let mut out = Vec::with_capacity(n);
    for q in 0..n {
        let mut acc = Complex64::new(0.0, 0.0);
        for r in 0..n {
            let left = gm[(q, r)].conj();
            if left == Complex64::new(0.0, 0.0) {
                continue;
            }
            let mut row = Complex64::new(0.0, 0.0);
            for s in 0..n {
                row += corr[(r, s)] * gm[(q, s)];
            }
            acc += left * row;
        }
        let scale = acc.re.abs().max(1.0);
        if acc.im.abs() > IMAGINARY_TOLERANCE * scale {
            return Err(Error::NonHermitian(acc.im.abs()));
        }
        out.push(acc.re);
    }
    Ok(out)
}

/// `|G c|^2` for a field with amplitudes `c` (shared by W-state and
/// coherent inputs, which is the whole point).
fn rank_one_intensity(g: &PropagatorMatrix, amplitudes: &[Complex64]) -> Vec<f64> {
    let gm = g.matrix();
    (0..g.dim())
        .map(|q| {
            amplitudes
                .iter()
                .enumerate()
                .fold(Complex64::new(0.0, 0.0), |acc, (p, c)| acc + gm[(q, p)] * c)
                .norm_sqr()
        })
        .collect()
}

/// Single photon in the superposition `sum_p c_p |1_p>`.
pub fn intensity_wstate(g: &PropagatorMatrix, c: &AmplitudeProfile) -> Result<Vec<f64>> {
    check_dim(g, c.len())?;
    let norm = c.norm_sqr();
    if (norm - 1.0).abs() > NORM_TOLERANCE {
        return Err(Error::NotNormalized(norm));
    }
    Ok(rank_one_intensity(g, c.amplitudes()))
}

/// Coherent inputs with amplitudes `alpha_p`.
pub fn intensity_coherent(g: &PropagatorMatrix, alphas: &AmplitudeProfile) -> Result<Vec<f64>> {
    check_dim(g, alphas.len())?;
    Ok(rank_one_intensity(g, alphas.amplitudes()))
}

/// Mutually incoherent inputs with mean photon numbers `n_p`.
pub fn intensity_incoherent(g: &PropagatorMatrix, occ: &OccupationList) -> Result<Vec<f64>> {
    check_dim(g, occ.len())?;
    let gm = g.matrix();
    Ok((0..g.dim())
        .map(|q| {
            occ.values()
                .iter()
                .enumerate()
                .map(|(p, n)| gm[(q, p)].norm_sqr() * n)
                .sum()
        })
        .collect())
}

/// Input field classes understood by [`intensity`] and [`intensity_map`].
#[derive(Debug, Clone)]
pub enum InputField {
    /// One photon in a single guide (1-based index).
    Fock {
        n_sites: usize,
        site: usize,
    },
    WState(AmplitudeProfile),
    Coherent(AmplitudeProfile),
    Incoherent(OccupationList),
    Correlations(CorrelationMatrix),
}

impl InputField {
    pub fn len(&self) -> usize {
        match self {
            InputField::Fock { n_sites, .. } => *n_sites,
            InputField::WState(p) | InputField::Coherent(p) => p.len(),
            InputField::Incoherent(o) => o.len(),
            InputField::Correlations(m) => m.dim(),
        }
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    /// Short tag recorded in [`IntensityMap::input_descriptor`].
    pub fn tag(&self) -> String {
        match self {
            InputField::Fock { site, .. } => format!("fock:site={site}"),
            InputField::WState(_) => "wstate".into(),
            InputField::Coherent(_) => "coherent".into(),
            InputField::Incoherent(_) => "incoherent".into(),
            InputField::Correlations(_) => "correlations".into(),
        }
    }

    /// Whether the input carries exactly one photon on average.
    pub fn is_single_photon(&self) -> bool {
        match self {
            InputField::Fock { .. } | InputField::WState(_) => true,
            InputField::Incoherent(o) => {
                (o.values().iter().sum::<f64>() - 1.0).abs() < NORM_TOLERANCE
            }
            InputField::Coherent(p) => (p.norm_sqr() - 1.0).abs() < NORM_TOLERANCE,
            InputField::Correlations(m) => (m.trace() - 1.0).abs() < NORM_TOLERANCE,
        }
    }
}

/// Output intensities for any input class.
pub fn intensity(g: &PropagatorMatrix, input: &InputField) -> Result<Vec<f64>> {
    match input {
        InputField::Fock { n_sites, site } => {
            let c = AmplitudeProfile::single_site(*n_sites, *site)?;
            intensity_wstate(g, &c)
        }
        InputField::WState(c) => intensity_wstate(g, c),
        InputField::Coherent(a) => intensity_coherent(g, a),
        InputField::Incoherent(o) => intensity_incoherent(g, o),
        InputField::Correlations(m) => intensity_from_correlations(g, m),
    }
}

/// Like [`intensity`] but routed through the correlation matrix, for
/// cross-checking the specialised paths.
pub fn intensity_via_correlations(g: &PropagatorMatrix, input: &InputField) -> Result<Vec<f64>> {
    let m = match input {
        InputField::Fock { n_sites, site } => {
            w_correlations(&AmplitudeProfile::single_site(*n_sites, *site)?)?
        }
        InputField::WState(c) => w_correlations(c)?,
        InputField::Coherent(a) => {
            let v = a.amplitudes();
            let n = v.len();
            CorrelationMatrix::from_matrix(nalgebra::DMatrix::from_fn(n, n, |p, q| {
                v[p].conj() * v[q]
            }))?
        }
        InputField::Incoherent(o) => crate::states::incoherent_correlations(o),
        InputField::Correlations(m) => m.clone(),
    };
    intensity_from_correlations(g, &m)
}

/// `I_p(tau)` over a time grid, stored row-major by time index.
#[derive(Debug, Clone, PartialEq)]
pub struct IntensityMap {
    values: Vec<f64>,
    tau_grid: Vec<f64>,
    params: LatticeParams,
    input_descriptor: String,
}

impl IntensityMap {
    /// Assemble a map from per-time rows; rejects ragged rows and
    /// intensities below `-NEGATIVITY_TOLERANCE`.
    pub fn from_rows(
        rows: Vec<Vec<f64>>,
        tau_grid: Vec<f64>,
        params: LatticeParams,
        input_descriptor: impl Into<String>,
    ) -> Result<Self> {
        if rows.len() != tau_grid.len() {
            return Err(Error::DimensionMismatch {
                expected: tau_grid.len(),
                found: rows.len(),
            });
        }
        let n = params.num_sites();
        let mut values = Vec::with_capacity(rows.len() * n);
        for (t, row) in rows.into_iter().enumerate() {
            if row.len() != n {
                return Err(Error::DimensionMismatch {
                    expected: n,
                    found: row.len(),
                });
            }
            for (s, &v) in row.iter().enumerate() {
                if v.is_nan() || v < -NEGATIVITY_TOLERANCE {
                    return Err(Error::NegativeIntensity {
                        value: v,
                        time_index: t,
                        site_index: s,
                    });
                }
            }
            values.extend(row);
        }
        Ok(Self {
            values,
            tau_grid,
            params,
            input_descriptor: input_descriptor.into(),
        })
    }

    pub fn n_times(&self) -> usize {
        self.tau_grid.len()
    }

    pub fn n_sites(&self) -> usize {
        self.params.num_sites()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    pub fn tau_grid(&self) -> &[f64] {
        &self.tau_grid
    }

    pub fn params(&self) -> &LatticeParams {
        &self.params
    }

    pub fn input_descriptor(&self) -> &str {
        &self.input_descriptor
    }

    pub fn set_input_descriptor(&mut self, descriptor: impl Into<String>) {
        self.input_descriptor = descriptor.into();
    }

    pub fn get(&self, time_index: usize, site_index: usize) -> f64 {
        self.values[time_index * self.n_sites() + site_index]
    }

    pub fn row(&self, time_index: usize) -> &[f64] {
        let n = self.n_sites();
        &self.values[time_index * n..(time_index + 1) * n]
    }

    pub fn rows(&self) -> impl Iterator<Item = &[f64]> {
        self.values.chunks(self.n_sites())
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    pub fn max_value(&self) -> f64 {
        self.values.iter().copied().fold(0.0, f64::max)
    }

    /// `sum_p I_p` at each time step.
    pub fn totals(&self) -> Vec<f64> {
        self.rows().map(|r| r.iter().sum()).collect()
    }

    /// Intensity-weighted mean site label at each time step.
    pub fn centroids(&self) -> Vec<f64> {
        self.rows().map(|r| centroid(&self.params, r)).collect()
    }
}

/// `sum_p p I_p / sum_p I_p` over site labels.
pub fn centroid(params: &LatticeParams, intensities: &[f64]) -> f64 {
    let total: f64 = intensities.iter().sum();
    intensities
        .iter()
        .enumerate()
        .map(|(i, v)| params.site_label(i) as f64 * v)
        .sum::<f64>()
        / total
}

/// Uniform grid of `steps` points on `[0, tau_max]`.
pub fn tau_grid(tau_max: f64, steps: usize) -> Result<Vec<f64>> {
    if steps < 2 {
        return Err(Error::InvalidArgument(format!(
            "tau grid needs at least 2 points, got {steps}"
        )));
    }
    if !(tau_max.is_finite() && tau_max > 0.0) {
        return Err(Error::InvalidArgument(format!(
            "tau_max must be positive, got {tau_max}"
        )));
    }
    let last = (steps - 1) as f64;
    Ok((0..steps).map(|i| tau_max * i as f64 / last).collect())
}

/// Evolve `input` through the array at every time in `taus`.
pub fn intensity_map(
    params: &LatticeParams,
    taus: &[f64],
    method: PropagatorMethod,
    input: &InputField,
) -> Result<IntensityMap> {
    if input.len() != params.num_sites() {
        return Err(Error::DimensionMismatch {
            expected: params.num_sites(),
            found: input.len(),
        });
    }
    let evolver = match method {
        PropagatorMethod::Numeric => Some(SpectralEvolver::new(params)?),
        PropagatorMethod::Analytic => None,
    };
    let rows = taus
        .iter()
        .map(|&tau| {
            let g = match &evolver {
                Some(ev) => ev.propagator(tau)?,
                None => analytic_propagator(params, tau)?,
            };
            intensity(&g, input)
        })
        .collect::<Result<Vec<_>>>()?;
    IntensityMap::from_rows(rows, taus.to_vec(), *params, input.tag())
}
