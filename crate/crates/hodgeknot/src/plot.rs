//! Signature step plots: breakpoints on the unit circle plus CSV/SVG
//! emitters with byte-deterministic output.
//!
//! The signature function of a Seifert matrix is a step function of the
//! circle angle, constant between roots of the torsion order.  Each arc
//! value is computed exactly at a rational sample of `u = z + 1/z`
//! strictly between the isolating intervals of consecutive roots, so the
//! plot never relies on cumulative-jump bookkeeping and remains correct
//! for link-type inputs whose signature is nonzero near angle zero.

use crate::algebraic::{CirclePoint, RealValue};
use crate::error::Result;
use crate::qpoly::{qi, Q};
use crate::seifert::{alexander_direct, keef_reduce, tl_signature_direct, SeifertMatrix};
use crate::symfactor::factor_symmetric;
use std::fmt::Write as _;
use std::path::{Path, PathBuf};

/// Current rational isolating interval of a root's `u`-value.
fn bounds(v: &RealValue) -> (Q, Q) {
    match v {
        RealValue::Rat(q) => (q.clone(), q.clone()),
        RealValue::Alg(a) => a.interval(),
    }
}

fn refine(v: &RealValue) {
    if let RealValue::Alg(a) = v {
        a.refine();
    }
}

/// Circle roots of the torsion order of `s`'s invertible part, as
/// `u`-values sorted descending (that is, by ascending circle angle),
/// with isolating intervals refined until pairwise disjoint.
fn circle_root_values(s: &SeifertMatrix) -> Result<Vec<RealValue>> {
    let reduction = keef_reduce(s)?;
    let order = alexander_direct(&reduction.invertible_part);
    let mut roots: Vec<RealValue> = Vec::new();
    if !order.is_zero() {
        let factorization = factor_symmetric(&order)?;
        for (factor, _) in factorization.even_factors() {
            for idx in 0..factor.num_circle_roots() {
                roots.push(factor.circle_root_value(idx));
            }
        }
    }
    roots.sort_by(|a, b| b.cmp_real(a));
    // Circle roots have u strictly inside (-2, 2); shrink each interval
    // until it does too, so the outer gap samples stay in range.
    for r in &roots {
        loop {
            let (lo, hi) = bounds(r);
            if lo > qi(-2) && hi < qi(2) {
                break;
            }
            refine(r);
        }
    }
    // All roots are distinct reals, so interval refinement separates
    // them in finitely many steps.
    loop {
        let mut overlap = false;
        for w in roots.windows(2) {
            let (lo_a, _) = bounds(&w[0]);
            let (_, hi_b) = bounds(&w[1]);
            if lo_a <= hi_b {
                refine(&w[0]);
                refine(&w[1]);
                overlap = true;
            }
        }
        if !overlap {
            break;
        }
    }
    Ok(roots)
}

/// One step of the plot: the signature takes value `signature` on the
/// arc starting at `turn` (a fraction of a full revolution) and ending
/// at the next breakpoint (or 1).
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct PlotStep {
    pub turn: f64,
    pub signature: i64,
}

fn turn_of_u(v: &RealValue) -> f64 {
    let u = v.to_f64();
    (u / 2.0).clamp(-1.0, 1.0).acos() / (2.0 * std::f64::consts::PI)
}

/// Compute the full-circle step plot of the signature function.
///
/// Arc values on `(0, 1/2)` are evaluated exactly; the second half of
/// the circle is the mirror image (the signature at conjugate points is
/// equal).  Breakpoints where the value does not change (even-size
/// blocks) are omitted.
pub fn signature_steps(s: &SeifertMatrix) -> Result<Vec<PlotStep>> {
    let roots = circle_root_values(s)?;
    let n = roots.len();

    // Rational u-samples strictly between consecutive isolating
    // intervals (u descending), plus the outer gaps at +-2.
    let mut samples: Vec<Q> = Vec::with_capacity(n + 1);
    for i in 0..=n {
        let upper = if i == 0 { qi(2) } else { bounds(&roots[i - 1]).0 };
        let lower = if i == n { qi(-2) } else { bounds(&roots[i]).1 };
        samples.push((upper + lower) / qi(2));
    }
    let values: Vec<i64> = samples
        .iter()
        .map(|u| tl_signature_direct(s, &CirclePoint::U(RealValue::Rat(u.clone()))).0)
        .collect();

    let mut steps = vec![PlotStep { turn: 0.0, signature: values[0] }];
    // Ascending angle on (0, 1/2): roots in the stored (descending-u)
    // order.
    for i in 0..n {
        if values[i + 1] != values[i] {
            steps.push(PlotStep { turn: turn_of_u(&roots[i]), signature: values[i + 1] });
        }
    }
    // Mirrored arcs on (1/2, 1): crossing root i going up in angle
    // restores the value from before it.
    for i in (0..n).rev() {
        if values[i + 1] != values[i] {
            steps.push(PlotStep { turn: 1.0 - turn_of_u(&roots[i]), signature: values[i] });
        }
    }
    Ok(steps)
}

/// Render the steps as CSV: a header and one `turn,signature` row per
/// step, turns formatted to nine decimals.
pub fn steps_to_csv(steps: &[PlotStep]) -> String {
    let mut out = String::from("turn,signature\n");
    for s in steps {
        let _ = writeln!(out, "{:.9},{}", s.turn, s.signature);
    }
    out
}

const SVG_W: f64 = 800.0;
const SVG_H: f64 = 400.0;
const ML: f64 = 60.0;
const MR: f64 = 20.0;
const MT: f64 = 30.0;
const MB: f64 = 40.0;

fn px(turn: f64) -> f64 {
    ML + turn * (SVG_W - ML - MR)
}

fn py(sig: f64, lo: f64, hi: f64) -> f64 {
    MT + (hi - sig) / (hi - lo) * (SVG_H - MT - MB)
}

/// Render the steps as a self-contained SVG step plot.
pub fn steps_to_svg(name: &str, steps: &[PlotStep]) -> String {
    let min_sig = steps.iter().map(|s| s.signature).min().unwrap_or(0);
    let max_sig = steps.iter().map(|s| s.signature).max().unwrap_or(0);
    let lo = (min_sig - 1) as f64;
    let hi = (max_sig + 1) as f64;

    let mut out = String::new();
    let _ = writeln!(
        out,
        r#"<svg xmlns="http://www.w3.org/2000/svg" viewBox="0 0 {SVG_W} {SVG_H}" font-family="monospace" font-size="12">"#
    );
    let _ = writeln!(out, r#"<rect width="{SVG_W}" height="{SVG_H}" fill="white"/>"#);
    let _ = writeln!(
        out,
        r#"<text x="{:.2}" y="18" text-anchor="middle">signature of {}</text>"#,
        (ML + SVG_W - MR) / 2.0,
        name
    );

    // Horizontal grid lines and labels at integer signature values.
    let mut sig = min_sig - 1;
    while sig <= max_sig + 1 {
        let y = py(sig as f64, lo, hi);
        let color = if sig == 0 { "#888888" } else { "#dddddd" };
        let _ = writeln!(
            out,
            r#"<line x1="{:.2}" y1="{y:.2}" x2="{:.2}" y2="{y:.2}" stroke="{color}"/>"#,
            px(0.0),
            px(1.0)
        );
        let _ = writeln!(
            out,
            r#"<text x="{:.2}" y="{:.2}" text-anchor="end">{sig}</text>"#,
            ML - 6.0,
            y + 4.0
        );
        sig += 1;
    }
    // Vertical ticks at quarter turns.
    for (t, label) in [(0.0, "0"), (0.25, "1/4"), (0.5, "1/2"), (0.75, "3/4"), (1.0, "1")] {
        let x = px(t);
        let _ = writeln!(
            out,
            r##"<line x1="{x:.2}" y1="{:.2}" x2="{x:.2}" y2="{:.2}" stroke="#dddddd"/>"##,
            MT,
            SVG_H - MB
        );
        let _ = writeln!(
            out,
            r#"<text x="{x:.2}" y="{:.2}" text-anchor="middle">{label}</text>"#,
            SVG_H - MB + 16.0
        );
    }
    let _ = writeln!(
        out,
        r#"<text x="{:.2}" y="{:.2}" text-anchor="middle">turn fraction of the circle angle</text>"#,
        (ML + SVG_W - MR) / 2.0,
        SVG_H - 8.0
    );

    // The step path itself.
    let mut d = String::new();
    for (i, s) in steps.iter().enumerate() {
        let y = py(s.signature as f64, lo, hi);
        if i == 0 {
            let _ = write!(d, "M {:.2} {y:.2}", px(s.turn));
        } else {
            let _ = write!(d, " H {:.2} V {y:.2}", px(s.turn));
        }
    }
    let _ = write!(d, " H {:.2}", px(1.0));
    let _ = writeln!(out, r##"<path d="{d}" fill="none" stroke="#c02020" stroke-width="2"/>"##);
    let _ = writeln!(out, "</svg>");
    out
}

/// Write `<prefix>.csv` and `<prefix>.svg` for the signature plot of
/// `s`; returns the two paths.  Output is byte-deterministic for equal
/// inputs.
pub fn emit_signature_plot(
    name: &str,
    s: &SeifertMatrix,
    out_prefix: &Path,
) -> Result<(PathBuf, PathBuf)> {
    let steps = signature_steps(s)?;
    let csv_path = out_prefix.with_extension("csv");
    let svg_path = out_prefix.with_extension("svg");
    if let Some(dir) = csv_path.parent() {
        if !dir.as_os_str().is_empty() {
            std::fs::create_dir_all(dir)?;
        }
    }
    std::fs::write(&csv_path, steps_to_csv(&steps))?;
    std::fs::write(&svg_path, steps_to_svg(name, &steps))?;
    Ok((csv_path, svg_path))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures::by_name;

    fn steps_of(name: &str) -> Vec<PlotStep> {
        signature_steps(&by_name(name).unwrap().seifert_matrix()).unwrap()
    }

    fn assert_step(step: &PlotStep, turn: f64, sig: i64) {
        assert!((step.turn - turn).abs() < 1e-9, "turn {} vs {turn}", step.turn);
        assert_eq!(step.signature, sig);
    }

    #[test]
    fn trefoil_steps_down_and_back_at_the_sixth_turns() {
        let steps = steps_of("trefoil");
        assert_eq!(steps.len(), 3);
        assert_step(&steps[0], 0.0, 0);
        assert_step(&steps[1], 1.0 / 6.0, -2);
        assert_step(&steps[2], 5.0 / 6.0, 0);
    }

    #[test]
    fn torus_25_has_two_steps_down_to_minus_four() {
        let steps = steps_of("torus(2,5)");
        assert_eq!(steps.len(), 5);
        assert_step(&steps[0], 0.0, 0);
        assert_step(&steps[1], 0.1, -2);
        assert_step(&steps[2], 0.3, -4);
        assert_step(&steps[3], 0.7, -2);
        assert_step(&steps[4], 0.9, 0);
    }

    #[test]
    fn constant_plots_for_unknot_link_and_even_blocks() {
        assert_eq!(steps_of("unknot"), vec![PlotStep { turn: 0.0, signature: 0 }]);
        // The annulus signature is +1 on the whole circle; a cumulative
        // jump count starting from zero would get this wrong.
        assert_eq!(steps_of("annulus"), vec![PlotStep { turn: 0.0, signature: 1 }]);
        // 8_20 has one double (even) block: breakpoint with no jump.
        assert_eq!(steps_of("8_20"), vec![PlotStep { turn: 0.0, signature: 0 }]);
        // Degenerate input reduces first.
        assert_eq!(steps_of("remark"), vec![PlotStep { turn: 0.0, signature: 0 }]);
    }

    #[test]
    fn emitted_files_are_byte_deterministic() {
        let dir = tempfile::tempdir().unwrap();
        let rec = by_name("trefoil").unwrap();
        let s = rec.seifert_matrix();
        let (csv1, svg1) = emit_signature_plot("trefoil", &s, &dir.path().join("a")).unwrap();
        let (csv2, svg2) = emit_signature_plot("trefoil", &s, &dir.path().join("b")).unwrap();
        let csv_bytes = std::fs::read(&csv1).unwrap();
        assert_eq!(csv_bytes, std::fs::read(&csv2).unwrap());
        let svg_bytes = std::fs::read(&svg1).unwrap();
        assert_eq!(svg_bytes, std::fs::read(&svg2).unwrap());

        let text = String::from_utf8(csv_bytes).unwrap();
        assert_eq!(text.lines().next(), Some("turn,signature"));
        assert!(text.contains("0.166666667,-2"), "{text}");
        assert!(text.contains("0.833333333,0"), "{text}");
        let svg = String::from_utf8(svg_bytes).unwrap();
        assert!(svg.starts_with("<svg"));
        assert!(svg.contains("signature of trefoil"));
    }
}
