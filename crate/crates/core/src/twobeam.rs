//! Two-beam interference: `b = (a_1 + e^{i theta} a_2) / sqrt(2)` for three
//! kinds of input, showing that fringes in the mean intensity need a
//! non-zero cross-correlation `<a_1^dagger a_2>`.

use num_complex::Complex64;

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum TwoBeamState {
    /// Product of coherent states with amplitudes `(alpha_1, alpha_2)`.
    Coherent(Complex64, Complex64),
    /// Number state `|n_1, n_2>`.
    FockPair(u32, u32),
    /// `(|1,0> + |0,1>) / sqrt(2)`.
    EntangledW,
}

impl TwoBeamState {
    /// `(<n_1>, <n_2>)`.
    pub fn mean_occupations(&self) -> (f64, f64) {
        match *self {
            TwoBeamState::Coherent(a1, a2) => (a1.norm_sqr(), a2.norm_sqr()),
            TwoBeamState::FockPair(n1, n2) => (n1 as f64, n2 as f64),
            TwoBeamState::EntangledW => (0.5, 0.5),
        }
    }
}

/// `<a_1^dagger a_2>`.
pub fn two_beam_cross_correlation(state: &TwoBeamState) -> Complex64 {
    match *state {
        TwoBeamState::Coherent(a1, a2) => a1.conj() * a2,
        TwoBeamState::FockPair(..) => Complex64::new(0.0, 0.0),
        TwoBeamState::EntangledW => Complex64::new(0.5, 0.0),
    }
}

/// `<b^dagger b> = [<n_1> + <n_2> + 2 Re(e^{i theta} <a_1^dagger a_2>)] / 2`.
pub fn two_beam_intensity(state: &TwoBeamState, theta: f64) -> f64 {
    let (n1, n2) = state.mean_occupations();
    let cross = Complex64::from_polar(1.0, theta) * two_beam_cross_correlation(state);
    let value = 0.5 * (n1 + n2 + 2.0 * cross.re);
    // Exact cancellation can leave -1e-17.
    value.max(0.0)
}

/// `(I_max - I_min) / (I_max + I_min)`; zero for an empty input.
pub fn fringe_visibility(state: &TwoBeamState) -> f64 {
    let (n1, n2) = state.mean_occupations();
    if n1 + n2 == 0.0 {
        return 0.0;
    }
    2.0 * two_beam_cross_correlation(state).norm() / (n1 + n2)
}

/// `(theta, I(theta))` on `steps` evenly spaced points covering `[0, 2 pi]`.
pub fn theta_sweep(state: &TwoBeamState, steps: usize) -> Vec<(f64, f64)> {
    let last = steps.saturating_sub(1).max(1) as f64;
    (0..steps)
        .map(|i| {
            let theta = std::f64::consts::TAU * i as f64 / last;
            (theta, two_beam_intensity(state, theta))
        })
        .collect()
}
