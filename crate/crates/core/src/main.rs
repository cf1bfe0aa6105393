use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};

use wbloch::cli::output::write_text;
use wbloch::cli::{
    parse_method, parse_two_beam_state, render_profile_csv, render_spectrum_csv,
    render_twobeam_csv, run_scenario, InputKind, ProfileSpec, ScenarioConfig,
};
use wbloch::fourier::{spectral_profile, spectral_width_on, WIDTH_GRID_INTERVALS};
use wbloch::propagator::PropagatorMethod;
use wbloch::splitter::{cascade_amplitudes, CascadeSpec};
use wbloch::twobeam::{fringe_visibility, theta_sweep};
use wbloch::{Error, Result};

/// Reference half-maximum width of the cascade spectrum that the report
/// compares against, with its relative acceptance band.
const REFERENCE_WIDTH: f64 = 0.31;
const REFERENCE_BAND: f64 = 0.2;

#[derive(Parser)]
#[command(
    name = "wbloch",
    version,
    about = "Bloch oscillations of single-photon W-states in waveguide arrays"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Propagate an input through the array and record I_p(tau).
    Simulate {
        /// fock, coherent, wstate or incoherent
        #[arg(long)]
        input: InputKind,
        /// site:<p> | gaussian:center=<r>,sigma=<r> | cascade:T=<r>,K=<i>
        #[arg(long)]
        profile: ProfileSpec,
        #[arg(long)]
        sites: Option<usize>,
        #[arg(long)]
        alpha: f64,
        #[arg(long, default_value_t = 25.0)]
        tau_max: f64,
        #[arg(long, default_value_t = 500)]
        tau_steps: usize,
        /// analytic or numeric
        #[arg(long, default_value = "analytic", value_parser = parse_method)]
        method: PropagatorMethod,
        #[arg(long)]
        out_csv: Option<PathBuf>,
        #[arg(long)]
        out_svg: Option<PathBuf>,
    },
    /// Emit the W-state amplitudes produced by the beam-splitter cascade.
    Cascade {
        #[arg(long)]
        transmissivity: f64,
        #[arg(long)]
        stages: usize,
        #[arg(long)]
        out_csv: Option<PathBuf>,
    },
    /// Emit the quasi-momentum spectrum of a profile and its half-maximum width.
    Spectrum {
        #[arg(long)]
        profile: ProfileSpec,
        /// Required unless the profile is a cascade.
        #[arg(long)]
        sites: Option<usize>,
        #[arg(long, default_value_t = WIDTH_GRID_INTERVALS)]
        k_intervals: usize,
        #[arg(long)]
        out_csv: Option<PathBuf>,
    },
    /// Sweep the relative phase of a two-beam interferometer.
    Twobeam {
        /// w | fock | fock:<n1>,<n2> | coherent:<a1>,<a2>
        #[arg(long, value_parser = parse_two_beam_state)]
        state: wbloch::twobeam::TwoBeamState,
        #[arg(long, default_value_t = 65)]
        theta_steps: usize,
        #[arg(long)]
        out_csv: Option<PathBuf>,
    },
}

fn resolve_sites(profile: &ProfileSpec, sites: Option<usize>) -> Result<usize> {
    match (profile.intrinsic_len(), sites) {
        (Some(n), None) => Ok(n),
        (_, Some(n)) => Ok(n),
        (None, None) => Err(Error::InvalidArgument(
            "--sites is required for this profile".into(),
        )),
    }
}

fn emit(out: Option<PathBuf>, body: &str) -> Result<()> {
    match out {
        Some(path) => write_text(&path, body),
        None => {
            print!("{body}");
            Ok(())
        }
    }
}

fn run(cli: Cli) -> Result<()> {
    match cli.command {
        Command::Simulate {
            input,
            profile,
            sites,
            alpha,
            tau_max,
            tau_steps,
            method,
            out_csv,
            out_svg,
        } => {
            let sites = resolve_sites(&profile, sites)?;
            let print_csv = out_csv.is_none() && out_svg.is_none();
            let config = ScenarioConfig {
                input_kind: input,
                profile,
                sites,
                alpha,
                tau_max,
                tau_steps,
                method,
                csv: out_csv,
                svg: out_svg,
            };
            let map = run_scenario(&config)?;
            if print_csv {
                print!("{}", wbloch::cli::render_csv(&map));
            }
            eprintln!(
                "{}: {} time steps x {} sites, max intensity {}",
                map.input_descriptor(),
                map.n_times(),
                map.n_sites(),
                wbloch::cli::format_number(map.max_value())
            );
        }
        Command::Cascade {
            transmissivity,
            stages,
            out_csv,
        } => {
            let spec = CascadeSpec::new(transmissivity, stages)?;
            let cascade = cascade_amplitudes(&spec);
            emit(out_csv, &render_profile_csv(&cascade.profile))?;
            eprintln!(
                "{} ports, residual fraction discarded by post-selection: {}",
                spec.total_ports(),
                wbloch::cli::format_number(cascade.residual_fraction)
            );
        }
        Command::Spectrum {
            profile,
            sites,
            k_intervals,
            out_csv,
        } => {
            let sites = resolve_sites(&profile, sites)?;
            let amplitudes = profile.build(sites)?;
            let spectrum = spectral_profile(&amplitudes, k_intervals)?;
            emit(out_csv, &render_spectrum_csv(&spectrum))?;
            match spectral_width_on(&spectrum) {
                Ok(width) => {
                    let inside =
                        (width - REFERENCE_WIDTH).abs() <= REFERENCE_BAND * REFERENCE_WIDTH;
                    eprintln!(
                        "half-maximum width of |c(k)|^2: {} ({} reference {} +/- {}%)",
                        wbloch::cli::format_number(width),
                        if inside { "within" } else { "outside" },
                        REFERENCE_WIDTH,
                        REFERENCE_BAND * 100.0
                    );
                }
                Err(e) => eprintln!("half-maximum width unavailable: {e}"),
            }
        }
        Command::Twobeam {
            state,
            theta_steps,
            out_csv,
        } => {
            if theta_steps < 2 {
                return Err(Error::InvalidArgument(
                    "--theta-steps must be at least 2".into(),
                ));
            }
            emit(
                out_csv,
                &render_twobeam_csv(&theta_sweep(&state, theta_steps)),
            )?;
            eprintln!(
                "fringe visibility: {}",
                wbloch::cli::format_number(fringe_visibility(&state))
            );
        }
    }
    Ok(())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
