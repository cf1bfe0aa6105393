//! Quasi-momentum picture of Bloch oscillations.
//!
//! With `c(k) = (2 pi)^{-1/2} sum_q c_q e^{-i k q}` the lattice evolution
//! becomes a rigid drift of the spectrum, `k -> k - alpha tau`, dressed by
//! the phase `exp[(2i/alpha)(sin k - sin(k - alpha tau))]`. For a narrow
//! spectrum centred at `k = 0` the envelope is simply translated,
//! `I_p ~ |c(p - (4/alpha) sin^2(alpha tau / 2))|^2`, and it returns to its
//! starting place whenever `alpha tau` is a multiple of `2 pi`.

use std::f64::consts::{PI, TAU};

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::lattice::LatticeParams;
use crate::states::AmplitudeProfile;

/// Default node count for [`intensity_via_integral`].
pub const DEFAULT_QUADRATURE_NODES: usize = 2048;
/// Minimum node count accepted by [`intensity_via_integral`].
pub const MIN_QUADRATURE_NODES: usize = 256;
/// Grid intervals used by [`spectral_width`].
pub const WIDTH_GRID_INTERVALS: usize = 4096;
/// Ripple below this fraction of the peak does not break unimodality.
pub const UNIMODAL_RIPPLE_TOLERANCE: f64 = 1e-4;

/// `c(k)` with site labels starting at `origin`.
pub fn c_tilde_with_origin(c: &AmplitudeProfile, origin: i64, k: f64) -> Complex64 {
    let sum = c
        .amplitudes()
        .iter()
        .enumerate()
        .fold(Complex64::new(0.0, 0.0), |acc, (i, cq)| {
            let q = (origin + i as i64) as f64;
            acc + cq * Complex64::from_polar(1.0, -k * q)
        });
    sum / TAU.sqrt()
}

/// `c(k) = (2 pi)^{-1/2} sum_q c_q e^{-i k q}` over sites `q = 1..=N`.
pub fn c_tilde(c: &AmplitudeProfile, k: f64) -> Complex64 {
    c_tilde_with_origin(c, 1, k)
}

/// `c(k)` sampled on a closed uniform grid over `[-pi, pi]`.
#[derive(Debug, Clone, PartialEq)]
pub struct SpectralProfile {
    k_grid: Vec<f64>,
    values: Vec<Complex64>,
}

impl SpectralProfile {
    pub fn k_grid(&self) -> &[f64] {
        &self.k_grid
    }

    pub fn values(&self) -> &[Complex64] {
        &self.values
    }

    pub fn power(&self) -> Vec<f64> {
        self.values.iter().map(|v| v.norm_sqr()).collect()
    }

    /// `integral_{-pi}^{pi} |c(k)|^2 dk` by the trapezoid rule, which equals
    /// `sum_p |c_p|^2` once the grid resolves the profile.
    pub fn parseval_integral(&self) -> f64 {
        let power = self.power();
        let n = power.len();
        let h = TAU / (n - 1) as f64;
        let interior: f64 = power[1..n - 1].iter().sum();
        h * (interior + 0.5 * (power[0] + power[n - 1]))
    }

    /// Largest relative rise of `|c(k)|^2` walking away from its peak, as a
    /// fraction of the peak.
    pub fn unimodality_ripple(&self) -> f64 {
        let power = self.power();
        let (peak_idx, peak) = argmax(&power);
        if peak == 0.0 {
            return 0.0;
        }
        let mut ripple: f64 = 0.0;
        for w in power[..=peak_idx].windows(2) {
            ripple = ripple.max(w[0] - w[1]);
        }
        for w in power[peak_idx..].windows(2) {
            ripple = ripple.max(w[1] - w[0]);
        }
        ripple / peak
    }

    pub fn is_unimodal(&self, tolerance: f64) -> bool {
        self.unimodality_ripple() <= tolerance
    }
}

fn argmax(v: &[f64]) -> (usize, f64) {
    v.iter()
        .copied()
        .enumerate()
        .fold((0, f64::NEG_INFINITY), |best, (i, x)| {
            if x > best.1 {
                (i, x)
            } else {
                best
            }
        })
}

/// Sample `c(k)` at `intervals + 1` points from `-pi` to `pi` inclusive.
pub fn spectral_profile(c: &AmplitudeProfile, intervals: usize) -> Result<SpectralProfile> {
    if intervals < 2 {
        return Err(Error::InvalidArgument(format!(
            "spectral grid needs at least 2 intervals, got {intervals}"
        )));
    }
    let k_grid: Vec<f64> = (0..=intervals)
        .map(|j| -PI + TAU * j as f64 / intervals as f64)
        .collect();
    let values = k_grid.iter().map(|&k| c_tilde(c, k)).collect();
    Ok(SpectralProfile { k_grid, values })
}

/// Site intensities from the quasi-momentum integral
/// `I_p = (1/2pi) |int c(k - alpha tau) e^{ikp} exp[(2i/alpha)(sin k - sin(k - alpha tau))] dk|^2`,
/// evaluated with the periodic trapezoid rule on `nodes` points.
pub fn intensity_via_integral(
    c: &AmplitudeProfile,
    params: &LatticeParams,
    tau: f64,
    nodes: usize,
) -> Result<Vec<f64>> {
    if params.alpha() == 0.0 {
        return Err(Error::InvalidAlpha(0.0));
    }
    if nodes < MIN_QUADRATURE_NODES {
        return Err(Error::InvalidArgument(format!(
            "quadrature needs at least {MIN_QUADRATURE_NODES} nodes, got {nodes}"
        )));
    }
    if !(tau.is_finite() && tau >= 0.0) {
        return Err(Error::InvalidTau(tau));
    }
    if c.len() != params.num_sites() {
        return Err(Error::DimensionMismatch {
            expected: params.num_sites(),
            found: c.len(),
        });
    }
    let alpha = params.alpha();
    let shift = alpha * tau;
    let origin = params.site_origin();
    let h = TAU / nodes as f64;

    // Everything but e^{ikp}, per node.
    let weights: Vec<(f64, Complex64)> = (0..nodes)
        .map(|j| {
            let k = -PI + h * j as f64;
            let dressing =
                Complex64::from_polar(1.0, (2.0 / alpha) * (k.sin() - (k - shift).sin()));
            (k, c_tilde_with_origin(c, origin, k - shift) * dressing)
        })
        .collect();

    Ok(params
        .site_labels()
        .map(|p| {
            let integral = weights
                .iter()
                .fold(Complex64::new(0.0, 0.0), |acc, (k, w)| {
                    acc + w * Complex64::from_polar(1.0, k * p as f64)
                })
                * h;
            integral.norm_sqr() / TAU
        })
        .collect())
}

/// Envelope displacement `(4/alpha) sin^2(alpha tau / 2)` at time `tau`.
pub fn drift(alpha: f64, tau: f64) -> f64 {
    let s = (0.5 * alpha * tau).sin();
    (4.0 / alpha) * s * s
}

/// Narrow-spectrum approximation `I_p = |c(p - drift)|^2`, with `|c|^2`
/// linearly interpolated between sites and zero outside the array.
pub fn approx_intensity(
    c: &AmplitudeProfile,
    params: &LatticeParams,
    tau: f64,
) -> Result<Vec<f64>> {
    if params.alpha().is_nan() || params.alpha() <= 0.0 {
        return Err(Error::InvalidAlpha(params.alpha()));
    }
    if c.len() != params.num_sites() {
        return Err(Error::DimensionMismatch {
            expected: params.num_sites(),
            found: c.len(),
        });
    }
    let populations = c.populations();
    let shift = drift(params.alpha(), tau);
    let origin = params.site_origin() as f64;
    Ok(params
        .site_labels()
        .map(|p| interpolate(&populations, p as f64 - shift - origin))
        .collect())
}

/// Linear interpolation of `values` at fractional index `x`; zero outside.
fn interpolate(values: &[f64], x: f64) -> f64 {
    let last = (values.len() - 1) as f64;
    if !(x >= 0.0 && x <= last) {
        return 0.0;
    }
    let i = x.floor();
    let frac = x - i;
    let i = i as usize;
    if frac == 0.0 {
        values[i]
    } else {
        (1.0 - frac) * values[i] + frac * values[i + 1]
    }
}

/// Full width at half maximum of `|c(k)|^2` on a 4096-interval grid.
pub fn spectral_width(c: &AmplitudeProfile) -> Result<f64> {
    spectral_width_on(&spectral_profile(c, WIDTH_GRID_INTERVALS)?)
}

/// Full width at half maximum of a sampled spectrum, with crossings located
/// by linear interpolation.
pub fn spectral_width_on(spectrum: &SpectralProfile) -> Result<f64> {
    let power = spectrum.power();
    let k = spectrum.k_grid();
    let (peak_idx, peak) = argmax(&power);
    let floor = power.iter().copied().fold(f64::INFINITY, f64::min);
    if peak <= 0.0 || peak - floor <= 1e-12 * peak {
        return Err(Error::DegenerateSpectrum);
    }
    let ripple = spectrum.unimodality_ripple();
    if ripple > UNIMODAL_RIPPLE_TOLERANCE {
        return Err(Error::NonUnimodalSpectrum(ripple));
    }
    let half = 0.5 * peak;
    let crossing = |a: usize, b: usize| -> f64 {
        let t = (power[a] - half) / (power[a] - power[b]);
        k[a] + t * (k[b] - k[a])
    };
    let left = (1..=peak_idx)
        .rev()
        .find(|&i| power[i - 1] < half)
        .map(|i| crossing(i, i - 1));
    let right = (peak_idx..power.len() - 1)
        .find(|&i| power[i + 1] < half)
        .map(|i| crossing(i, i + 1));
    match (left, right) {
        (Some(l), Some(r)) => Ok(r - l),
        // Half maximum never reached inside [-pi, pi].
        _ => Err(Error::DegenerateSpectrum),
    }
}

/// `2 pi / alpha`, the first positive zero of `sin^2(alpha tau / 2)`.
pub fn bloch_period(alpha: f64) -> Result<f64> {
    if !(alpha.is_finite() && alpha > 0.0) {
        return Err(Error::InvalidAlpha(alpha));
    }
    Ok(TAU / alpha)
}
