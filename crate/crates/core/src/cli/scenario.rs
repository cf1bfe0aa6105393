use std::fmt;
use std::path::PathBuf;
use std::str::FromStr;

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::lattice::LatticeParams;
use crate::observables::{intensity_map, tau_grid, InputField, IntensityMap};
use crate::propagator::{unitarity_defect, PropagatorMethod, SpectralEvolver};
use crate::splitter::{cascade_amplitudes, CascadeSpec};
use crate::states::{gaussian_profile, AmplitudeProfile, OccupationList, ProfileKind};

use super::output::{emit_csv, emit_svg_heatmap};

/// Largest unitarity defect tolerated for the numeric propagator.
pub const UNITARITY_TOLERANCE: f64 = 1e-10;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum InputKind {
    Fock,
    Coherent,
    WState,
    Incoherent,
}

impl FromStr for InputKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "fock" => Ok(InputKind::Fock),
            "coherent" => Ok(InputKind::Coherent),
            "wstate" => Ok(InputKind::WState),
            "incoherent" => Ok(InputKind::Incoherent),
            other => Err(Error::InvalidArgument(format!(
                "unknown input kind '{other}' (expected fock, coherent, wstate or incoherent)"
            ))),
        }
    }
}

impl fmt::Display for InputKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            InputKind::Fock => "fock",
            InputKind::Coherent => "coherent",
            InputKind::WState => "wstate",
            InputKind::Incoherent => "incoherent",
        })
    }
}

/// Parses `analytic` or `numeric`.
pub fn parse_method(s: &str) -> Result<PropagatorMethod> {
    match s {
        "analytic" => Ok(PropagatorMethod::Analytic),
        "numeric" => Ok(PropagatorMethod::Numeric),
        other => Err(Error::InvalidArgument(format!(
            "unknown method '{other}' (expected analytic or numeric)"
        ))),
    }
}

/// Amplitude profile recipe: `site:<p>`, `gaussian:center=<r>,sigma=<r>`
/// or `cascade:T=<r>,K=<i>`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum ProfileSpec {
    Site(usize),
    Gaussian { center: f64, sigma: f64 },
    Cascade { transmissivity: f64, stages: usize },
}

fn key_values(body: &str) -> Result<Vec<(&str, &str)>> {
    body.split(',')
        .map(|kv| {
            kv.split_once('=')
                .map(|(k, v)| (k.trim(), v.trim()))
                .ok_or_else(|| Error::InvalidProfile(format!("expected key=value, got '{kv}'")))
        })
        .collect()
}

fn parse_num<T: FromStr>(key: &str, value: &str) -> Result<T> {
    value
        .parse()
        .map_err(|_| Error::InvalidProfile(format!("bad value '{value}' for '{key}'")))
}

impl FromStr for ProfileSpec {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let (head, body) = s
            .split_once(':')
            .ok_or_else(|| Error::InvalidProfile(format!("missing ':' in profile spec '{s}'")))?;
        match head {
            "site" => Ok(ProfileSpec::Site(parse_num("site", body)?)),
            "gaussian" => {
                let (mut center, mut sigma) = (None, None);
                for (k, v) in key_values(body)? {
                    match k {
                        "center" => center = Some(parse_num(k, v)?),
                        "sigma" => sigma = Some(parse_num(k, v)?),
                        _ => {
                            return Err(Error::InvalidProfile(format!(
                                "unknown gaussian key '{k}'"
                            )))
                        }
                    }
                }
                match (center, sigma) {
                    (Some(center), Some(sigma)) => Ok(ProfileSpec::Gaussian { center, sigma }),
                    _ => Err(Error::InvalidProfile(
                        "gaussian needs center= and sigma=".into(),
                    )),
                }
            }
            "cascade" => {
                let (mut t, mut k) = (None, None);
                for (key, v) in key_values(body)? {
                    match key {
                        "T" => t = Some(parse_num(key, v)?),
                        "K" => k = Some(parse_num(key, v)?),
                        _ => {
                            return Err(Error::InvalidProfile(format!(
                                "unknown cascade key '{key}'"
                            )))
                        }
                    }
                }
                match (t, k) {
                    (Some(transmissivity), Some(stages)) => Ok(ProfileSpec::Cascade {
                        transmissivity,
                        stages,
                    }),
                    _ => Err(Error::InvalidProfile("cascade needs T= and K=".into())),
                }
            }
            other => Err(Error::InvalidProfile(format!(
                "unknown profile kind '{other}' (expected site, gaussian or cascade)"
            ))),
        }
    }
}

impl ProfileSpec {
    /// Port count fixed by the recipe itself, if any.
    pub fn intrinsic_len(&self) -> Option<usize> {
        match self {
            ProfileSpec::Cascade { stages, .. } => Some(2 * stages),
            _ => None,
        }
    }

    /// Unit-norm profile over `sites` guides.
    pub fn build(&self, sites: usize) -> Result<AmplitudeProfile> {
        match *self {
            ProfileSpec::Site(p) => AmplitudeProfile::single_site(sites, p),
            ProfileSpec::Gaussian { center, sigma } => {
                gaussian_profile(sites, center, sigma, ProfileKind::WState)
            }
            ProfileSpec::Cascade {
                transmissivity,
                stages,
            } => {
                let spec = CascadeSpec::new(transmissivity, stages)?;
                if spec.total_ports() != sites {
                    return Err(Error::InvalidArgument(format!(
                        "cascade with K={stages} has {} ports but the array has {sites} sites",
                        spec.total_ports()
                    )));
                }
                Ok(cascade_amplitudes(&spec).profile)
            }
        }
    }
}

#[derive(Debug, Clone)]
pub struct ScenarioConfig {
    pub input_kind: InputKind,
    pub profile: ProfileSpec,
    pub sites: usize,
    pub alpha: f64,
    pub tau_max: f64,
    pub tau_steps: usize,
    pub method: PropagatorMethod,
    pub csv: Option<PathBuf>,
    pub svg: Option<PathBuf>,
}

impl ScenarioConfig {
    /// Defaults: 500 steps over `tau` in `[0, 25]`, analytic propagator.
    pub fn new(input_kind: InputKind, profile: ProfileSpec, sites: usize, alpha: f64) -> Self {
        Self {
            input_kind,
            profile,
            sites,
            alpha,
            tau_max: 25.0,
            tau_steps: 500,
            method: PropagatorMethod::Analytic,
            csv: None,
            svg: None,
        }
    }

    pub fn input_field(&self) -> Result<InputField> {
        let profile = self.profile.build(self.sites)?;
        Ok(match self.input_kind {
            InputKind::Fock => match self.profile {
                ProfileSpec::Site(site) => InputField::Fock {
                    n_sites: self.sites,
                    site,
                },
                _ => {
                    return Err(Error::InvalidArgument(
                        "fock input needs a site:<p> profile".into(),
                    ))
                }
            },
            InputKind::WState => InputField::WState(profile),
            InputKind::Coherent => InputField::Coherent(profile.with_kind(ProfileKind::Coherent)?),
            InputKind::Incoherent => {
                InputField::Incoherent(OccupationList::from_populations(&profile))
            }
        })
    }
}

/// Computes the intensity map for `config` and writes any requested files.
pub fn run_scenario(config: &ScenarioConfig) -> Result<IntensityMap> {
    let params = LatticeParams::new(config.sites, config.alpha)?;
    let taus = tau_grid(config.tau_max, config.tau_steps)?;
    let input = config.input_field()?;

    if config.method == PropagatorMethod::Numeric {
        let evolver = SpectralEvolver::new(&params)?;
        let defect = unitarity_defect(&evolver.propagator(config.tau_max)?);
        if defect > UNITARITY_TOLERANCE {
            return Err(Error::UnitarityViolation {
                defect,
                tolerance: UNITARITY_TOLERANCE,
            });
        }
    }

    let mut map = intensity_map(&params, &taus, config.method, &input)?;
    map.set_input_descriptor(format!(
        "{} {} method={}",
        config.input_kind,
        config.profile,
        match config.method {
            PropagatorMethod::Analytic => "analytic",
            PropagatorMethod::Numeric => "numeric",
        }
    ));

    if let Some(path) = &config.csv {
        emit_csv(&map, path)?;
    }
    if let Some(path) = &config.svg {
        emit_svg_heatmap(&map, path)?;
    }
    Ok(map)
}

impl fmt::Display for ProfileSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ProfileSpec::Site(p) => write!(f, "site:{p}"),
            ProfileSpec::Gaussian { center, sigma } => {
                write!(f, "gaussian:center={center},sigma={sigma}")
            }
            ProfileSpec::Cascade {
                transmissivity,
                stages,
            } => write!(f, "cascade:T={transmissivity},K={stages}"),
        }
    }
}

/// Parses a two-beam state: `w`, `fock`, `fock:<n1>,<n2>` or
/// `coherent:<a1>,<a2>` with complex amplitudes such as `1+0.5i`.
pub fn parse_two_beam_state(s: &str) -> Result<crate::twobeam::TwoBeamState> {
    use crate::twobeam::TwoBeamState;
    let bad = || Error::InvalidArgument(format!("bad two-beam state '{s}'"));
    match s.split_once(':') {
        None if s == "w" => Ok(TwoBeamState::EntangledW),
        None if s == "fock" => Ok(TwoBeamState::FockPair(1, 1)),
        Some(("fock", body)) => {
            let (a, b) = body.split_once(',').ok_or_else(bad)?;
            Ok(TwoBeamState::FockPair(
                a.trim().parse().map_err(|_| bad())?,
                b.trim().parse().map_err(|_| bad())?,
            ))
        }
        Some(("coherent", body)) => {
            let (a, b) = body.split_once(',').ok_or_else(bad)?;
            let a: Complex64 = a.trim().parse().map_err(|_| bad())?;
            let b: Complex64 = b.trim().parse().map_err(|_| bad())?;
            Ok(TwoBeamState::Coherent(a, b))
        }
        _ => Err(bad()),
    }
}
