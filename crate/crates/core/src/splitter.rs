//! Mirror-folded beam-splitter cascade that turns one heralded photon into a
//! W-state over `2K` ports.
//!
//! A single splitter of transmissivity `T` is passed `K` times on each side
//! of the fold. Port `k` steps out from the centre (k = 0 innermost) carries
//! intensity `T R^k / 2`, so the six-port pattern reads
//! `T R^2/2, T R/2, T/2, T/2, T R/2, T R^2/2`. All propagation phases are
//! taken as unity.

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::states::AmplitudeProfile;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CascadeSpec {
    transmissivity: f64,
    stages_per_arm: usize,
}

impl CascadeSpec {
    pub fn new(transmissivity: f64, stages_per_arm: usize) -> Result<Self> {
        if !(transmissivity > 0.0 && transmissivity <= 1.0) {
            return Err(Error::InvalidArgument(format!(
                "transmissivity must lie in (0, 1], got {transmissivity}"
            )));
        }
        if stages_per_arm == 0 {
            return Err(Error::InvalidArgument(
                "cascade needs at least one stage".into(),
            ));
        }
        Ok(Self {
            transmissivity,
            stages_per_arm,
        })
    }

    pub fn transmissivity(&self) -> f64 {
        self.transmissivity
    }

    pub fn reflectivity(&self) -> f64 {
        1.0 - self.transmissivity
    }

    pub fn stages_per_arm(&self) -> usize {
        self.stages_per_arm
    }

    pub fn total_ports(&self) -> usize {
        2 * self.stages_per_arm
    }

    /// Photon fraction still inside the cascade after the last stage, `R^K`.
    pub fn residual_fraction(&self) -> f64 {
        self.reflectivity().powi(self.stages_per_arm as i32)
    }
}

/// Cascade output as a normalised W-state together with the discarded
/// residual fraction.
#[derive(Debug, Clone, PartialEq)]
pub struct CascadeProfile {
    pub profile: AmplitudeProfile,
    pub residual_fraction: f64,
}

/// Unnormalised port intensities, outermost-left to outermost-right.
pub fn cascade_intensities(spec: &CascadeSpec) -> Vec<f64> {
    let t = spec.transmissivity();
    let r = spec.reflectivity();
    let k = spec.stages_per_arm();
    let arm: Vec<f64> = (0..k).map(|step| 0.5 * t * r.powi(step as i32)).collect();
    arm.iter().rev().chain(arm.iter()).copied().collect()
}

/// `c_p = sqrt(I_p / sum I)`: real, non-negative, unit norm.
pub fn cascade_amplitudes(spec: &CascadeSpec) -> CascadeProfile {
    let intensities = cascade_intensities(spec);
    let total: f64 = intensities.iter().sum();
    let amplitudes = intensities
        .iter()
        .map(|i| Complex64::new((i / total).sqrt(), 0.0))
        .collect();
    let profile = AmplitudeProfile::w_state_normalized(amplitudes)
        .expect("cascade intensities are positive and finite");
    CascadeProfile {
        profile,
        residual_fraction: spec.residual_fraction(),
    }
}
