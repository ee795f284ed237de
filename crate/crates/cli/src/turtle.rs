//! Turtle drawings of two-valued streams as SVG.

use std::fmt::Write;

use thiserror::Error;

use streamwd::spec::DataUniverse;
use streamwd::term::{Sym, Term};

/// Angles are in degrees, positive counterclockwise. `steps` is the number
/// of elements drawn.
#[derive(Clone, Debug, PartialEq)]
pub struct TurtleConfig {
    pub angle0: f64,
    pub angle1: f64,
    pub unit: f64,
    pub start_heading: f64,
    pub steps: usize,
}

impl TurtleConfig {
    pub fn new(angle0: f64, angle1: f64, steps: usize) -> TurtleConfig {
        TurtleConfig {
            angle0,
            angle1,
            unit: 1.0,
            start_heading: 0.0,
            steps,
        }
    }
}

#[derive(Debug, Error, Clone, PartialEq)]
pub enum TurtleError {
    #[error("turtle drawing needs exactly two data values, found {0}")]
    NonBooleanData(usize),
    #[error("`{0}` is not a data value")]
    NotInUniverse(String),
    #[error("invalid turtle configuration: {0}")]
    Config(String),
}

/// Maps each value to 0 or 1. The smaller of the two elements of D is the
/// one whose root symbol is declared first.
pub fn to_bits(
    values: &[Term],
    universe: &DataUniverse,
    sigma_d: &[Sym],
) -> Result<Vec<u8>, TurtleError> {
    if universe.len() != 2 {
        return Err(TurtleError::NonBooleanData(universe.len()));
    }
    let rank = |t: &Term| {
        let root = t.root_name().unwrap_or_default();
        sigma_d
            .iter()
            .position(|f| f.name() == root)
            .unwrap_or(usize::MAX)
    };
    let mut elems: Vec<&Term> = universe.elements().iter().collect();
    elems.sort_by_cached_key(|t| (rank(t), t.to_string()));
    values
        .iter()
        .map(|v| {
            elems
                .iter()
                .position(|e| *e == v)
                .map(|i| i as u8)
                .ok_or_else(|| TurtleError::NotInUniverse(v.to_string()))
        })
        .collect()
}

/// Fixed three decimals, never `-0.000`.
fn num(x: f64) -> String {
    let s = format!("{x:.3}");
    if s.trim_start_matches('-')
        .chars()
        .all(|c| c == '0' || c == '.')
    {
        s.trim_start_matches('-').to_string()
    } else {
        s
    }
}

/// For every bit: turn by its angle, then draw one unit forward. The path has
/// one `L` command per bit; the view box is the bounding box plus 5% of its
/// larger side on each border.
pub fn turtle_svg(bits: &[u8], cfg: &TurtleConfig) -> Result<String, TurtleError> {
    if !(cfg.angle0.is_finite() && cfg.angle1.is_finite() && cfg.start_heading.is_finite()) {
        return Err(TurtleError::Config("angles must be finite".into()));
    }
    if !(cfg.unit.is_finite() && cfg.unit > 0.0) {
        return Err(TurtleError::Config(
            "the unit length must be positive".into(),
        ));
    }
    if cfg.steps == 0 || bits.len() != cfg.steps {
        return Err(TurtleError::Config(format!(
            "{} steps requested, {} bits given",
            cfg.steps,
            bits.len()
        )));
    }
    let mut heading = cfg.start_heading.rem_euclid(360.0);
    let (mut x, mut y) = (0.0f64, 0.0f64);
    let mut points = Vec::with_capacity(bits.len() + 1);
    points.push((x, y));
    for &b in bits {
        let turn = if b == 0 { cfg.angle0 } else { cfg.angle1 };
        heading = (heading + turn).rem_euclid(360.0);
        let rad = heading.to_radians();
        x += cfg.unit * rad.cos();
        // SVG's y axis points down.
        y -= cfg.unit * rad.sin();
        points.push((x, y));
    }
    let (mut x0, mut y0, mut x1, mut y1) = (f64::MAX, f64::MAX, f64::MIN, f64::MIN);
    for &(px, py) in &points {
        x0 = x0.min(px);
        y0 = y0.min(py);
        x1 = x1.max(px);
        y1 = y1.max(py);
    }
    let side = (x1 - x0).max(y1 - y0).max(cfg.unit);
    let margin = side * 0.05;
    let (vx, vy) = (x0 - margin, y0 - margin);
    let (vw, vh) = (x1 - x0 + 2.0 * margin, y1 - y0 + 2.0 * margin);

    let mut d = String::with_capacity(points.len() * 20);
    let _ = write!(d, "M {} {}", num(points[0].0), num(points[0].1));
    for &(px, py) in &points[1..] {
        let _ = write!(d, " L {} {}", num(px), num(py));
    }
    let mut out = String::new();
    let _ = writeln!(out, r#"<?xml version="1.0" encoding="UTF-8"?>"#);
    let _ = writeln!(
        out,
        r#"<svg xmlns="http://www.w3.org/2000/svg" version="1.1" viewBox="{} {} {} {}">"#,
        num(vx),
        num(vy),
        num(vw),
        num(vh)
    );
    let _ = writeln!(
        out,
        r#"<path d="{d}" fill="none" stroke="black" stroke-width="{}" stroke-linejoin="round"/>"#,
        num(side / 500.0)
    );
    out.push_str("</svg>\n");
    Ok(out)
}

/// Number of drawn segments in output of [`turtle_svg`].
pub fn segment_count(svg: &str) -> usize {
    svg.matches(" L ").count()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn single_segment_has_unit_length() {
        let cfg = TurtleConfig::new(-120.0, 30.0, 1);
        let svg = turtle_svg(&[0], &cfg).unwrap();
        assert_eq!(segment_count(&svg), 1);
        // Heading -120: cos = -0.5, sin = -0.866 flipped to +0.866.
        assert!(svg.contains("M 0.000 0.000 L -0.500 0.866\""), "{svg}");
    }

    #[test]
    fn no_negative_zero() {
        assert_eq!(num(-0.0), "0.000");
        assert_eq!(num(-0.0001), "0.000");
        assert_eq!(num(-0.5), "-0.500");
    }

    #[test]
    fn square_closes() {
        let cfg = TurtleConfig::new(90.0, 90.0, 4);
        let svg = turtle_svg(&[0, 1, 0, 1], &cfg).unwrap();
        assert!(svg.contains("L 0.000 0.000\""), "{svg}");
    }

    #[test]
    fn rejects_bad_config() {
        assert!(turtle_svg(&[], &TurtleConfig::new(1.0, 1.0, 0)).is_err());
        assert!(turtle_svg(&[0], &TurtleConfig::new(f64::NAN, 1.0, 1)).is_err());
    }
}
