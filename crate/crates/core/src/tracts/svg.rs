use std::fmt::Write;

use serde_json::{json, Value};

use super::Staircase;
use crate::rational::Rational;

const SIZE: f64 = 600.0;
const PAD: f64 = 40.0;

/// Map `α ∈ [1/2, 1]` to the horizontal axis, `β ∈ [0, 1/2]` to the
/// vertical axis with `β = 0` at the bottom.
fn project(a: &Rational, b: &Rational) -> (f64, f64) {
    let x = PAD + (a.to_f64() - 0.5) * 2.0 * SIZE;
    let y = PAD + (0.5 - b.to_f64()) * 2.0 * SIZE;
    (x, y)
}

/// Ordered corner list as fraction strings.
pub fn staircase_json(z: &Staircase) -> Value {
    json!({
        "p": z.p,
        "q": z.q,
        "corners": z.corners.iter().map(|(a, b)| json!([a.to_string(), b.to_string()])).collect::<Vec<_>>(),
    })
}

/// The parameter rectangle with its base and side arm marked and one
/// polyline per staircase. Coordinates are rounded for display only.
pub fn render_svg(stairs: &[Staircase]) -> String {
    let total = SIZE + 2.0 * PAD;
    let mut s = String::new();
    let _ = writeln!(
        s,
        r#"<svg xmlns="http://www.w3.org/2000/svg" width="{total}" height="{total}" viewBox="0 0 {total} {total}">"#
    );
    let _ = writeln!(s, r##"<rect x="{PAD}" y="{PAD}" width="{SIZE}" height="{SIZE}" fill="none" stroke="#999"/>"##);
    let (l, r, t, b) = (PAD, PAD + SIZE, PAD, PAD + SIZE);
    let _ = writeln!(
        s,
        r##"<polyline class="base" points="{l},{b} {l},{t} {r},{t}" fill="none" stroke="#c33" stroke-width="3"/>"##
    );
    let _ = writeln!(
        s,
        r##"<polyline class="side-arm" points="{l},{b} {r},{b} {r},{t}" fill="none" stroke="#36c" stroke-width="3"/>"##
    );
    let _ = writeln!(s, r#"<text x="{}" y="{}" font-size="14">F</text>"#, r + 6.0, b + 14.0);
    let _ = writeln!(s, r#"<text x="{}" y="{}" font-size="14">V</text>"#, l - 16.0, t - 6.0);
    let _ = writeln!(s, r#"<text x="{}" y="{}" font-size="12">base</text>"#, l + 6.0, t - 6.0);
    let _ = writeln!(s, r#"<text x="{}" y="{}" font-size="12">side arm</text>"#, r - 60.0, b + 28.0);
    for z in stairs {
        let pts: Vec<String> = z
            .corners
            .iter()
            .map(|(a, b)| {
                let (x, y) = project(a, b);
                format!("{x:.3},{y:.3}")
            })
            .collect();
        let _ = writeln!(
            s,
            r#"<polyline class="staircase" data-p="{}" data-q="{}" points="{}" fill="none" stroke="black" stroke-width="1.5"/>"#,
            z.p,
            z.q,
            pts.join(" ")
        );
    }
    s.push_str("</svg>\n");
    s
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::tracts::leading_set;

    #[test]
    fn json_lists_exact_corners() {
        let z = leading_set(1, 3).unwrap();
        let v = staircase_json(&z);
        assert_eq!(v["corners"][1], json!(["11/13", "5/13"]));
        assert_eq!(v["corners"].as_array().unwrap().len(), 5);
    }

    #[test]
    fn svg_has_one_polyline_per_staircase() {
        let svg = render_svg(&[leading_set(1, 3).unwrap(), leading_set(2, 5).unwrap()]);
        assert_eq!(svg.matches("class=\"staircase\"").count(), 2);
        assert!(svg.contains("side-arm"));
    }
}
