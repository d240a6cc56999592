//! Range-bar plots of one feature per script, as SVG with the plotted
//! numbers carried in `data-*` attributes.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use glyphrun::evaluation::FeatureRanges;
use glyphrun::{Feature, FeatureVector, Script};

const WIDTH: f64 = 640.0;
const LEFT: f64 = 110.0;
const RIGHT: f64 = 30.0;
const TOP: f64 = 40.0;
const ROW: f64 = 44.0;

fn escape(s: &str) -> String {
    s.replace('&', "&amp;")
        .replace('<', "&lt;")
        .replace('>', "&gt;")
        .replace('"', "&quot;")
}

/// Same textual form as the feature CSV, so values compare exactly.
pub fn number(x: f64) -> String {
    format!("{x:.16e}")
}

pub fn range_svg(vectors: &[FeatureVector], feature: Feature) -> String {
    let ranges = FeatureRanges::compute(vectors, feature);
    let scripts: Vec<Script> = Script::ALL
        .into_iter()
        .filter(|s| ranges.ranges.contains_key(s))
        .collect();
    let values: Vec<f64> = vectors
        .iter()
        .filter(|v| v.script.is_some())
        .map(|v| v.get(feature))
        .collect();
    let (lo, hi) = values
        .iter()
        .fold((f64::INFINITY, f64::NEG_INFINITY), |(a, b), &x| {
            (a.min(x), b.max(x))
        });
    let pad = if hi > lo { (hi - lo) * 0.05 } else { 1.0 };
    let (lo, hi) = (lo - pad, hi + pad);
    let x = |v: f64| LEFT + (v - lo) / (hi - lo) * (WIDTH - LEFT - RIGHT);
    let height = TOP + ROW * scripts.len() as f64 + 30.0;
    let name = feature.name();

    let mut svg = String::new();
    let _ = writeln!(
        svg,
        r#"<svg xmlns="http://www.w3.org/2000/svg" width="{WIDTH}" height="{height}" viewBox="0 0 {WIDTH} {height}" data-feature="{name}">"#
    );
    let _ = writeln!(
        svg,
        r#"  <text x="{}" y="24" text-anchor="middle" font-family="sans-serif" font-size="16">{} per script</text>"#,
        WIDTH / 2.0,
        name.to_uppercase()
    );
    for (row, script) in scripts.iter().enumerate() {
        let (min, max) = ranges.ranges[script];
        let y = TOP + ROW * row as f64 + ROW / 2.0;
        let s = script.dir_name();
        let _ = writeln!(
            svg,
            r#"  <text x="{}" y="{}" text-anchor="end" font-family="sans-serif" font-size="13">{}</text>"#,
            LEFT - 10.0,
            y + 4.0,
            script.name()
        );
        let _ = writeln!(
            svg,
            r##"  <rect class="range" x="{:.3}" y="{:.3}" width="{:.3}" height="14" fill="#9ab" data-script="{s}" data-feature="{name}" data-min="{}" data-max="{}"/>"##,
            x(min),
            y - 7.0,
            (x(max) - x(min)).max(1.0),
            number(min),
            number(max)
        );
        for v in vectors.iter().filter(|v| v.script == Some(*script)) {
            let _ = writeln!(
                svg,
                r##"  <circle class="doc" cx="{:.3}" cy="{y:.3}" r="3" fill="#234" data-doc="{}" data-script="{s}" data-value="{}"/>"##,
                x(v.get(feature)),
                escape(&v.doc_id),
                number(v.get(feature))
            );
        }
    }
    let axis_y = TOP + ROW * scripts.len() as f64 + 6.0;
    let _ = writeln!(
        svg,
        r##"  <line x1="{LEFT}" y1="{axis_y}" x2="{}" y2="{axis_y}" stroke="#444"/>"##,
        WIDTH - RIGHT
    );
    for (v, anchor) in [(lo + pad, "start"), (hi - pad, "end")] {
        let _ = writeln!(
            svg,
            r#"  <text x="{:.3}" y="{}" text-anchor="{anchor}" font-family="sans-serif" font-size="11">{v:.4}</text>"#,
            x(v),
            axis_y + 16.0
        );
    }
    svg.push_str("</svg>\n");
    svg
}

/// `script,feature,min,max` for every labelled script and feature.
pub fn summary_csv(vectors: &[FeatureVector]) -> String {
    let mut out = String::from("script,feature,min,max\n");
    let per_feature: BTreeMap<usize, FeatureRanges> = Feature::ALL
        .iter()
        .enumerate()
        .map(|(i, &f)| (i, FeatureRanges::compute(vectors, f)))
        .collect();
    for script in Script::ALL {
        for (i, feature) in Feature::ALL.iter().enumerate() {
            if let Some(&(min, max)) = per_feature[&i].ranges.get(&script) {
                let _ = writeln!(
                    out,
                    "{},{},{},{}",
                    script.dir_name(),
                    feature.name(),
                    number(min),
                    number(max)
                );
            }
        }
    }
    out
}
