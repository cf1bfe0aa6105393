//! Scenario runner and file emitters behind the `wbloch` binary.

pub mod output;
pub mod scenario;

pub use output::{
    emit_csv, emit_svg_heatmap, format_number, parse_intensity_csv, render_csv, render_profile_csv,
    render_spectrum_csv, render_svg_heatmap, render_twobeam_csv,
};
pub use scenario::{
    parse_method, parse_two_beam_state, run_scenario, InputKind, ProfileSpec, ScenarioConfig,
};
