//! Deterministic CSV and SVG emitters.
//!
//! All numbers are rounded to 9 significant digits and then printed in the
//! shortest form that reads back to the rounded value, so identical inputs
//! always give byte-identical files.

use std::fmt::Write as _;
use std::fs;
use std::path::Path;

use crate::error::{Error, Result};
use crate::fourier::SpectralProfile;
use crate::observables::IntensityMap;
use crate::states::AmplitudeProfile;

/// 9 significant digits, shortest round-trip rendering.
pub fn format_number(v: f64) -> String {
    if v == 0.0 {
        return "0".into();
    }
    let rounded: f64 = format!("{v:.8e}").parse().expect("formatted float parses");
    let mag = rounded.abs();
    if (1e-4..1e15).contains(&mag) {
        format!("{rounded}")
    } else {
        format!("{rounded:e}")
    }
}

fn write_file(path: &Path, body: &str) -> Result<()> {
    fs::write(path, body).map_err(|e| Error::io(path, e))
}

/// `tau,site,intensity`, rows ordered by time then site.
pub fn render_csv(map: &IntensityMap) -> String {
    let mut out = String::from("tau,site,intensity\n");
    for (t, row) in map.rows().enumerate() {
        let tau = format_number(map.tau_grid()[t]);
        for (s, v) in row.iter().enumerate() {
            let _ = writeln!(
                out,
                "{tau},{},{}",
                map.params().site_label(s),
                format_number(*v)
            );
        }
    }
    out
}

pub fn emit_csv(map: &IntensityMap, path: &Path) -> Result<()> {
    write_file(path, &render_csv(map))
}

/// Parsed `(tau, site, intensity)` rows of a `tau,site,intensity` file.
pub fn parse_intensity_csv(text: &str) -> Result<Vec<(f64, i64, f64)>> {
    let mut lines = text.lines();
    if lines.next() != Some("tau,site,intensity") {
        return Err(Error::InvalidArgument(
            "missing tau,site,intensity header".into(),
        ));
    }
    lines
        .map(|line| {
            let bad = || Error::InvalidArgument(format!("malformed row '{line}'"));
            let mut it = line.split(',');
            let tau = it.next().ok_or_else(bad)?.parse().map_err(|_| bad())?;
            let site = it.next().ok_or_else(bad)?.parse().map_err(|_| bad())?;
            let value = it.next().ok_or_else(bad)?.parse().map_err(|_| bad())?;
            if it.next().is_some() {
                return Err(bad());
            }
            Ok((tau, site, value))
        })
        .collect()
}

/// `site,re,im` for sites `1..=N`.
pub fn render_profile_csv(profile: &AmplitudeProfile) -> String {
    let mut out = String::from("site,re,im\n");
    for (i, c) in profile.amplitudes().iter().enumerate() {
        let _ = writeln!(
            out,
            "{},{},{}",
            i + 1,
            format_number(c.re),
            format_number(c.im)
        );
    }
    out
}

/// `k,re,im,abs2`.
pub fn render_spectrum_csv(spectrum: &SpectralProfile) -> String {
    let mut out = String::from("k,re,im,abs2\n");
    for (k, v) in spectrum.k_grid().iter().zip(spectrum.values()) {
        let _ = writeln!(
            out,
            "{},{},{},{}",
            format_number(*k),
            format_number(v.re),
            format_number(v.im),
            format_number(v.norm_sqr())
        );
    }
    out
}

/// `theta,intensity`.
pub fn render_twobeam_csv(sweep: &[(f64, f64)]) -> String {
    let mut out = String::from("theta,intensity\n");
    for (theta, v) in sweep {
        let _ = writeln!(out, "{},{}", format_number(*theta), format_number(*v));
    }
    out
}

pub fn write_text(path: &Path, body: &str) -> Result<()> {
    write_file(path, body)
}

const MARGIN_LEFT: usize = 64;
const MARGIN_RIGHT: usize = 16;
const MARGIN_TOP: usize = 28;
const MARGIN_BOTTOM: usize = 44;

fn gray(level: f64) -> String {
    let g = (255.0 * level.clamp(0.0, 1.0)).round() as u8;
    format!("#{g:02x}{g:02x}{g:02x}")
}

fn escape(s: &str) -> String {
    s.replace('&', "&amp;")
        .replace('<', "&lt;")
        .replace('>', "&gt;")
}

/// Grayscale heatmap: time runs left to right, site labels bottom to top,
/// black = 0 and white = the map's maximum intensity.
pub fn render_svg_heatmap(map: &IntensityMap) -> Result<String> {
    if map.is_empty() {
        return Err(Error::EmptyMap);
    }
    let n_t = map.n_times();
    let n_s = map.n_sites();
    let cell_w = (800 / n_t).max(1);
    let cell_h = (400 / n_s).max(4);
    let plot_w = n_t * cell_w;
    let plot_h = n_s * cell_h;
    let width = MARGIN_LEFT + plot_w + MARGIN_RIGHT;
    let height = MARGIN_TOP + plot_h + MARGIN_BOTTOM;
    let max = map.max_value();
    let scale = if max > 0.0 { max.recip() } else { 0.0 };
    let params = map.params();

    let mut svg = String::new();
    let _ = writeln!(
        svg,
        r#"<svg xmlns="http://www.w3.org/2000/svg" width="{width}" height="{height}" viewBox="0 0 {width} {height}">"#
    );
    let _ = writeln!(
        svg,
        "<title>Intensity map: {}</title>",
        escape(map.input_descriptor())
    );
    let _ = writeln!(
        svg,
        "<desc>grayscale linear in intensity, black=0, white=max; normalization max={}; alpha={}; sites={}..{}</desc>",
        format_number(max),
        format_number(params.alpha()),
        params.site_label(0),
        params.site_label(n_s - 1)
    );
    let _ = writeln!(svg, r#"<g shape-rendering="crispEdges">"#);
    for (t, row) in map.rows().enumerate() {
        let x = MARGIN_LEFT + t * cell_w;
        for (s, v) in row.iter().enumerate() {
            let y = MARGIN_TOP + (n_s - 1 - s) * cell_h;
            let _ = writeln!(
                svg,
                r#"<rect class="cell" x="{x}" y="{y}" width="{cell_w}" height="{cell_h}" fill="{}"/>"#,
                gray(v * scale)
            );
        }
    }
    let _ = writeln!(svg, "</g>");

    let axis_y = MARGIN_TOP + plot_h;
    let tau = map.tau_grid();
    let _ = writeln!(
        svg,
        r#"<g font-family="sans-serif" font-size="11" fill="black">"#
    );
    let _ = writeln!(
        svg,
        r#"<text x="{MARGIN_LEFT}" y="{}" text-anchor="start">{}</text>"#,
        axis_y + 14,
        format_number(tau[0])
    );
    let _ = writeln!(
        svg,
        r#"<text x="{}" y="{}" text-anchor="end">{}</text>"#,
        MARGIN_LEFT + plot_w,
        axis_y + 14,
        format_number(tau[n_t - 1])
    );
    let _ = writeln!(
        svg,
        r#"<text x="{}" y="{}" text-anchor="middle">tau</text>"#,
        MARGIN_LEFT + plot_w / 2,
        axis_y + 32
    );
    let _ = writeln!(
        svg,
        r#"<text x="{}" y="{}" text-anchor="end">{}</text>"#,
        MARGIN_LEFT - 4,
        axis_y - 2,
        params.site_label(0)
    );
    let _ = writeln!(
        svg,
        r#"<text x="{}" y="{}" text-anchor="end">{}</text>"#,
        MARGIN_LEFT - 4,
        MARGIN_TOP + cell_h.min(11),
        params.site_label(n_s - 1)
    );
    let mid_y = MARGIN_TOP + plot_h / 2;
    let _ = writeln!(
        svg,
        r#"<text x="16" y="{mid_y}" text-anchor="middle" transform="rotate(-90 16 {mid_y})">site</text>"#
    );
    let _ = writeln!(
        svg,
        r#"<text x="{MARGIN_LEFT}" y="18" text-anchor="start">max intensity = {}</text>"#,
        format_number(max)
    );
    let _ = writeln!(svg, "</g>");
    svg.push_str("</svg>\n");
    Ok(svg)
}

pub fn emit_svg_heatmap(map: &IntensityMap, path: &Path) -> Result<()> {
    let body = render_svg_heatmap(map)?;
    write_file(path, &body)
}
