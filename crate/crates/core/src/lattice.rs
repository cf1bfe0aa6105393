//! Waveguide-array model: a finite tight-binding chain with a linear
//! propagation-constant gradient across the guides.
//!
//! Everything is expressed in units of the nearest-neighbour coupling `J`:
//! the gradient enters only as `alpha = delta / J` and time only as
//! `tau = J t`.

use nalgebra::DMatrix;

use crate::error::{Error, Result};

/// Geometry and gradient of a waveguide array.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LatticeParams {
    num_sites: usize,
    alpha: f64,
    site_origin: i64,
}

impl LatticeParams {
    /// Array of `num_sites` guides labelled `1..=num_sites`.
    pub fn new(num_sites: usize, alpha: f64) -> Result<Self> {
        Self::with_origin(num_sites, alpha, 1)
    }

    pub fn with_origin(num_sites: usize, alpha: f64, site_origin: i64) -> Result<Self> {
        if num_sites < 2 {
            return Err(Error::TooFewSites(num_sites));
        }
        if !alpha.is_finite() || alpha < 0.0 {
            return Err(Error::InvalidAlpha(alpha));
        }
        Ok(Self {
            num_sites,
            alpha,
            site_origin,
        })
    }

    pub fn num_sites(&self) -> usize {
        self.num_sites
    }

    pub fn alpha(&self) -> f64 {
        self.alpha
    }

    pub fn site_origin(&self) -> i64 {
        self.site_origin
    }

    /// Physical label of the site stored at `index` (0-based).
    pub fn site_label(&self, index: usize) -> i64 {
        self.site_origin + index as i64
    }

    pub fn site_labels(&self) -> impl Iterator<Item = i64> + '_ {
        (0..self.num_sites).map(move |i| self.site_label(i))
    }

    /// Same array with the labels shifted by `shift`.
    pub fn shifted(&self, shift: i64) -> Self {
        Self {
            site_origin: self.site_origin + shift,
            ..*self
        }
    }
}

/// Real symmetric tridiagonal Hamiltonian `H / (hbar J)` with open
/// boundaries.
#[derive(Debug, Clone, PartialEq)]
pub struct HamiltonianMatrix {
    entries: DMatrix<f64>,
}

impl HamiltonianMatrix {
    pub fn entries(&self) -> &DMatrix<f64> {
        &self.entries
    }

    pub fn dim(&self) -> usize {
        self.entries.nrows()
    }

    pub fn diagonal(&self) -> Vec<f64> {
        self.entries.diagonal().iter().copied().collect()
    }

    pub fn off_diagonal(&self) -> Vec<f64> {
        (0..self.dim() - 1)
            .map(|i| self.entries[(i, i + 1)])
            .collect()
    }

    pub fn into_inner(self) -> DMatrix<f64> {
        self.entries
    }
}

/// Diagonal `alpha * p` over the site labels, unit hopping on the first
/// off-diagonals, zero elsewhere.
pub fn build_hamiltonian(params: &LatticeParams) -> HamiltonianMatrix {
    let n = params.num_sites();
    let mut entries = DMatrix::zeros(n, n);
    for i in 0..n {
        entries[(i, i)] = params.alpha() * params.site_label(i) as f64;
        if i + 1 < n {
            entries[(i, i + 1)] = 1.0;
            entries[(i + 1, i)] = 1.0;
        }
    }
    HamiltonianMatrix { entries }
}
