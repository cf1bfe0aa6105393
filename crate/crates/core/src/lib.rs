//! Single-photon W-states in coupled waveguide arrays.
//!
//! A heralded photon split by a beam-splitter cascade into the superposition
//! `sum_p c_p |1_p>` has no mean field but carries the correlations
//! `<a_p^dagger a_q> = c_p^* c_q`. Its mean intensities therefore behave
//! exactly like those of a coherent beam with amplitudes `c_p`, including
//! Bloch oscillations in an array with a linear index gradient.
//!
//! Modules:
//!
//! - [`lattice`]: array parameters and the tight-binding Hamiltonian
//! - [`bessel`], [`propagator`]: closed-form and spectral Green's functions
//! - [`states`]: amplitude profiles and correlation matrices
//! - [`splitter`]: the folded beam-splitter cascade
//! - [`observables`]: output intensities and time-resolved maps
//! - [`twobeam`]: two-beam fringe visibility
//! - [`fourier`]: quasi-momentum representation and envelope-drift law
//! - [`cli`]: scenario runner, CSV and SVG output

pub mod bessel;
pub mod cli;
pub mod error;
pub mod fourier;
pub mod lattice;
pub mod observables;
pub mod propagator;
pub mod splitter;
pub mod states;
pub mod twobeam;

pub use bessel::bessel_j;
pub use error::{Error, Result};
pub use lattice::{build_hamiltonian, HamiltonianMatrix, LatticeParams};
pub use observables::{
    intensity_coherent, intensity_from_correlations, intensity_incoherent, intensity_map,
    intensity_wstate, InputField, IntensityMap,
};
pub use propagator::{
    analytic_propagator, numeric_propagator, unitarity_defect, PropagatorMatrix, PropagatorMethod,
};
pub use states::{
    apply_phase_mask, gaussian_profile, incoherent_correlations, w_correlations, AmplitudeProfile,
    CorrelationMatrix, OccupationList, ProfileKind,
};
