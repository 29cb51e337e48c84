use std::fmt::Write;

use super::{ConstructionError, ConstructionState, TangentLineConfig};
use crate::exactnum::QuadRat;

/// Plot data for a construction state. The CSV carries exact coordinates;
/// the SVG is an approximate drawing with 12 decimal digits.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FigureExport {
    pub csv: String,
    pub svg: String,
}

const APPROX_DIGITS: usize = 12;

pub fn export_figure(state: &ConstructionState) -> Result<FigureExport, ConstructionError> {
    state.check_shape()?;
    if state.stage == 0 {
        return Err(ConstructionError::StageZero);
    }
    Ok(FigureExport {
        csv: csv(state),
        svg: svg(state),
    })
}

fn csv(state: &ConstructionState) -> String {
    let line = TangentLineConfig;
    let mut out = String::from("index,x,y,pi_u,pi_v,pi_u_approx,pi_v_approx\n");
    for (i, p) in state.points.iter().enumerate() {
        let u = line.pi_u(p);
        let v = line.pi_v(p);
        writeln!(
            out,
            "{i},{},{},{u},{v},{},{}",
            p.x(),
            p.y(),
            u.to_decimal(APPROX_DIGITS),
            v.to_decimal(APPROX_DIGITS)
        )
        .expect("writing to a String");
    }
    out
}

fn num(v: f64) -> String {
    let v = if v == 0.0 { 0.0 } else { v };
    if v.abs() < 1e6 {
        format!("{v:.12}")
    } else {
        format!("{v:.12e}")
    }
}

fn svg(state: &ConstructionState) -> String {
    let pts: Vec<(f64, f64)> = state
        .points
        .iter()
        .map(|p| {
            (
                QuadRat::from_ints(p.x().clone(), 0).to_f64(),
                QuadRat::from_ints(p.y().clone(), 0).to_f64(),
            )
        })
        .collect();
    let xs = pts.iter().map(|p| p.0).chain([0.0]);
    let ys = pts.iter().map(|p| p.1).chain([0.0]);
    let (mut xmin, mut xmax) = xs.fold((f64::MAX, f64::MIN), |(a, b), x| (a.min(x), b.max(x)));
    let (mut ymin, mut ymax) = ys.fold((f64::MAX, f64::MIN), |(a, b), y| (a.min(y), b.max(y)));
    let pad = 0.1 * (xmax - xmin).max(ymax - ymin).max(2.0);
    xmin -= pad;
    xmax += pad;
    ymin -= pad;
    ymax += pad;
    let span = (xmax - xmin).max(ymax - ymin);
    let r = span / 150.0;
    let stroke = span / 500.0;
    let sqrt2 = std::f64::consts::SQRT_2;
    let sqrt3 = 3f64.sqrt();

    let mut s = String::new();
    // SVG y grows downwards, so every y is negated
    writeln!(
        s,
        r#"<svg xmlns="http://www.w3.org/2000/svg" viewBox="{} {} {} {}" width="600" height="600">"#,
        num(xmin),
        num(-ymax),
        num(xmax - xmin),
        num(ymax - ymin)
    )
    .unwrap();
    writeln!(
        s,
        "<!-- stage {}; approximate rendering of exact data, 12 decimal digits -->",
        state.stage
    )
    .unwrap();
    for (id, c) in [("L", sqrt3), ("L0", 0.0)] {
        writeln!(
            s,
            r#"<line id="{id}" x1="{}" y1="{}" x2="{}" y2="{}" stroke="{}" stroke-width="{}"/>"#,
            num(xmin),
            num(-(sqrt2 * xmin + c)),
            num(xmax),
            num(-(sqrt2 * xmax + c)),
            if c == 0.0 { "gray" } else { "black" },
            num(stroke)
        )
        .unwrap();
    }
    for (i, (x, y)) in pts.iter().enumerate() {
        writeln!(
            s,
            r#"<circle id="a{i}" cx="{}" cy="{}" r="{}" fill="{}"/>"#,
            num(*x),
            num(-y),
            num(r),
            if i % 2 == 0 { "blue" } else { "red" }
        )
        .unwrap();
        writeln!(
            s,
            r#"<text x="{}" y="{}" font-size="{}">a{i}</text>"#,
            num(x + r),
            num(-y - r),
            num(4.0 * r)
        )
        .unwrap();
    }
    s.push_str("</svg>\n");
    s
}
