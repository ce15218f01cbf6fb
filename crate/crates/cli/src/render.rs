//! SVG scatter plots of quasicrystal fragments.

use std::fmt::Write as _;

use anyhow::{bail, Result};
use quasifold_core::coxeter::cartesian_embedding;
use quasifold_core::quasicrystal::Fragment;
use quasifold_core::{gram_matrix, GroupId, Matrix, RootVector};

/// Shell colours: the root system, then one colour per application of the
/// translation.
const COLOURS: [&str; 8] = ["black", "red", "blue", "green", "orange", "purple", "teal", "brown"];

#[derive(Clone, Debug)]
pub struct RenderOptions {
    /// Cartesian axes shown for H3 and H4 fragments.
    pub plane: (usize, usize),
    /// Unix time written into a header comment; `None` omits it.
    pub timestamp: Option<u64>,
    pub size: f64,
}

/// Row-major coordinate frame taking simple-root coordinates to the plot.
fn frame(fragment: &Fragment) -> Result<Vec<Vec<f64>>> {
    let group = fragment.spec.group;
    let conj = |m: Matrix| if fragment.spec.conjugate { m.conj() } else { m };
    let to_f64 =
        |m: &Matrix| -> Vec<Vec<f64>> { m.to_rows().iter().map(|r| r.iter().map(|x| x.to_f64()).collect()).collect() };
    match group {
        GroupId::H3 | GroupId::H4 => Ok(to_f64(&conj(cartesian_embedding(group)?))),
        GroupId::H2 => {
            // Simple roots from the Gram matrix: a1 along x, a2 at the
            // angle fixed by (a1|a2).
            let g = to_f64(&conj(gram_matrix(group).entries));
            let norm = g[0][0].sqrt();
            let cos = g[0][1] / (g[0][0] * g[1][1]).sqrt();
            let sin = (1.0 - cos * cos).sqrt();
            Ok(vec![vec![norm, norm * cos], vec![0.0, norm * sin]])
        }
        other => bail!("cannot render a {other} fragment: only H2, H3 and H4 are supported"),
    }
}

fn point(frame: &[Vec<f64>], v: &RootVector, plane: (usize, usize)) -> (f64, f64) {
    let coord = |row: usize| -> f64 { frame[row].iter().zip(&v.coords).map(|(m, c)| m * c.to_f64()).sum() };
    (coord(plane.0), coord(plane.1))
}

/// Renders every shell of the fragment, one circle per point.
pub fn render_svg(fragment: &Fragment, opts: &RenderOptions) -> Result<String> {
    let frame = frame(fragment)?;
    let dim = frame.len();
    let plane = if fragment.spec.group == GroupId::H2 { (0, 1) } else { opts.plane };
    if plane.0 >= dim || plane.1 >= dim || plane.0 == plane.1 {
        bail!("plane ({}, {}) is not a pair of distinct axes below {dim}", plane.0, plane.1);
    }

    let shells: Vec<Vec<(f64, f64)>> =
        fragment.shells.iter().map(|s| s.iter().map(|v| point(&frame, v, plane)).collect()).collect();
    let extent = shells.iter().flatten().fold(1e-9_f64, |m, &(x, y)| m.max(x.abs()).max(y.abs())) * 1.08;
    let size = opts.size;
    let legend_height = 18.0 * shells.len() as f64 + 10.0;
    let scale = size / (2.0 * extent);
    let radius = (size / 160.0).max(1.5);
    let map = |(x, y): (f64, f64)| ((x + extent) * scale, (extent - y) * scale);

    let mut svg = String::new();
    svg.push_str("<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n");
    if let Some(t) = opts.timestamp {
        writeln!(svg, "<!-- generated at unix time {t} -->")?;
    }
    writeln!(
        svg,
        "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" width=\"{size:.0}\" height=\"{h:.0}\" viewBox=\"0 0 {size:.0} {h:.0}\">",
        h = size + legend_height
    )?;
    let spec = &fragment.spec;
    let frame_note = if spec.conjugate { ", conjugate frame" } else { "" };
    writeln!(
        svg,
        "<title>{} fragment, {} axis, length {}, n = {}{frame_note}</title>",
        spec.group, spec.axis, spec.length, fragment.n
    )?;
    writeln!(svg, "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>")?;
    for (m, pts) in shells.iter().enumerate() {
        let colour = COLOURS[m % COLOURS.len()];
        writeln!(svg, "<g id=\"shell-{m}\" fill=\"{colour}\">")?;
        for &p in pts {
            let (x, y) = map(p);
            writeln!(svg, "<circle class=\"point\" cx=\"{x:.3}\" cy=\"{y:.3}\" r=\"{radius:.2}\"/>")?;
        }
        writeln!(svg, "</g>")?;
    }
    writeln!(svg, "<g id=\"legend\" font-family=\"sans-serif\" font-size=\"12\">")?;
    for (m, pts) in shells.iter().enumerate() {
        let colour = COLOURS[m % COLOURS.len()];
        let y = size + 14.0 + 18.0 * m as f64;
        let label = if m == 0 { "root system".to_string() } else { format!("after {m} translation(s)") };
        writeln!(svg, "<circle class=\"legend\" cx=\"12\" cy=\"{:.1}\" r=\"4\" fill=\"{colour}\"/>", y - 4.0)?;
        writeln!(svg, "<text x=\"22\" y=\"{y:.1}\">P({m}): {} points, {label}</text>", pts.len())?;
    }
    writeln!(svg, "</g>")?;
    svg.push_str("</svg>\n");
    Ok(svg)
}

#[cfg(test)]
mod tests {
    use super::*;
    use quasifold_core::quasicrystal::generate_fragment;
    use quasifold_core::{Axis, GoldenRat, TranslationSpec};

    fn opts() -> RenderOptions {
        RenderOptions { plane: (0, 1), timestamp: None, size: 400.0 }
    }

    #[test]
    fn h2_tau_first_shell_has_fifty_points() {
        let f = generate_fragment(&TranslationSpec::new(GroupId::H2, Axis::Twofold, GoldenRat::tau()), 1).unwrap();
        let svg = render_svg(&f, &opts()).unwrap();
        assert_eq!(svg.matches("class=\"point\"").count(), 50);
        assert!(svg.contains("P(0): 10 points"));
        assert!(svg.contains("P(1): 40 points"));
        assert!(!svg.contains("unix time"));
    }

    #[test]
    fn h2_roots_form_a_regular_decagon() {
        let f = generate_fragment(&TranslationSpec::new(GroupId::H2, Axis::Twofold, GoldenRat::one()), 0).unwrap();
        let frame = frame(&f).unwrap();
        let radii: Vec<f64> = f.shells[0]
            .iter()
            .map(|v| {
                let (x, y) = point(&frame, v, (0, 1));
                (x * x + y * y).sqrt()
            })
            .collect();
        assert!(radii.iter().all(|r| (r - radii[0]).abs() < 1e-12));
    }

    #[test]
    fn bad_plane_is_rejected() {
        let f = generate_fragment(&TranslationSpec::new(GroupId::H3, Axis::Twofold, GoldenRat::one()), 0).unwrap();
        let o = RenderOptions { plane: (1, 3), ..opts() };
        assert!(render_svg(&f, &o).is_err());
        let o = RenderOptions { plane: (0, 2), ..opts() };
        assert_eq!(render_svg(&f, &o).unwrap().matches("class=\"point\"").count(), 30);
    }
}
