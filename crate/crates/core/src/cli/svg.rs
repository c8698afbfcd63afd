//! SVG rendering of planar tropical curves and Newton subdivisions.
//!
//! Geometry is computed exactly; coordinates are converted to floats only
//! when written out. Each tie cell `{M_i = M_k <= M_j}` of a curve is an
//! interval on the line `M_i = M_k`; cells that are unbounded on one side
//! are clipped at the viewport and their clipped end is drawn dashed.

use std::fmt::Write;
use std::str::FromStr;

use num_bigint::BigInt;
use num_traits::{Signed, Zero};
use thiserror::Error;

use crate::geometry::NewtonPolyhedron;
use crate::oracle::breakpoints_1d;
use crate::poly::TropicalPolynomial;
use crate::rational::{parse_rational, to_f64, Rational};

#[derive(Debug, Error, PartialEq, Eq)]
pub enum PlotError {
    #[error("plotting supports one or two variables, got {0}")]
    UnsupportedDimension(usize),
    #[error("bad viewport: {0}")]
    BadViewport(String),
    #[error("f has {0} variables but g has {1}")]
    DimensionMismatch(usize, usize),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Viewport {
    pub xmin: Rational,
    pub ymin: Rational,
    pub xmax: Rational,
    pub ymax: Rational,
}

fn parse_decimal(s: &str) -> Option<Rational> {
    let s = s.trim();
    if let Some(q) = parse_rational(s) {
        return Some(q);
    }
    let (int, frac) = s.split_once('.')?;
    if frac.is_empty() || !frac.bytes().all(|b| b.is_ascii_digit()) {
        return None;
    }
    let negative = int.starts_with('-');
    let int_part = match int.trim_start_matches(['+', '-']) {
        "" => Rational::zero(),
        digits => parse_rational(digits)?,
    };
    let scale = BigInt::from(10).pow(frac.len() as u32);
    let frac_part = Rational::new(frac.parse().ok()?, scale);
    let v = int_part + frac_part;
    Some(if negative { -v } else { v })
}

impl FromStr for Viewport {
    type Err = PlotError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let parts: Vec<_> = s.split(',').collect();
        if parts.len() != 4 {
            return Err(PlotError::BadViewport(format!(
                "expected xmin,ymin,xmax,ymax, got {s:?}"
            )));
        }
        let mut v = Vec::with_capacity(4);
        for p in parts {
            v.push(
                parse_decimal(p)
                    .ok_or_else(|| PlotError::BadViewport(format!("not a number: {p:?}")))?,
            );
        }
        let [xmin, ymin, xmax, ymax]: [Rational; 4] = v.try_into().expect("four parts");
        let vp = Viewport {
            xmin,
            ymin,
            xmax,
            ymax,
        };
        vp.validate()?;
        Ok(vp)
    }
}

impl Viewport {
    pub fn validate(&self) -> Result<(), PlotError> {
        if self.xmin >= self.xmax || self.ymin >= self.ymax {
            return Err(PlotError::BadViewport(
                "need xmin < xmax and ymin < ymax".into(),
            ));
        }
        Ok(())
    }
}

type Point2 = [Rational; 2];

/// A drawn piece of a tropical curve.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CurvePiece {
    pub pair: (usize, usize),
    pub start: Point2,
    pub end: Point2,
    /// The cell continues past `start` (it was cut by the viewport).
    pub start_is_ray: bool,
    pub end_is_ray: bool,
}

#[derive(Default)]
struct Interval {
    lo: Option<Rational>,
    hi: Option<Rational>,
    empty: bool,
}

impl Interval {
    /// Intersects with `{λ : alpha + beta·λ >= 0}`.
    fn restrict(&mut self, alpha: &Rational, beta: &Rational) {
        if beta.is_zero() {
            if alpha.is_negative() {
                self.empty = true;
            }
            return;
        }
        let root = -(alpha / beta);
        if beta.is_positive() {
            if self.lo.as_ref().is_none_or(|lo| root > *lo) {
                self.lo = Some(root);
            }
        } else if self.hi.as_ref().is_none_or(|hi| root < *hi) {
            self.hi = Some(root);
        }
    }

    fn is_segment(&self) -> bool {
        !self.empty
            && match (&self.lo, &self.hi) {
                (Some(lo), Some(hi)) => lo < hi,
                _ => true,
            }
    }
}

struct TieLine {
    base: Point2,
    dir: Point2,
}

impl TieLine {
    fn at(&self, t: &Rational) -> Point2 {
        [
            &self.base[0] + t * &self.dir[0],
            &self.base[1] + t * &self.dir[1],
        ]
    }
}

fn exps(f: &TropicalPolynomial, i: usize) -> [Rational; 2] {
    let e = f.monomials()[i].exponents();
    [
        Rational::from_integer(e[0].into()),
        Rational::from_integer(e[1].into()),
    ]
}

/// The line `M_i = M_k` and the parameter interval where both are minimal.
fn tie_cell(f: &TropicalPolynomial, i: usize, k: usize) -> (TieLine, Interval) {
    let (ai, ak) = (exps(f, i), exps(f, k));
    let a = [&ai[0] - &ak[0], &ai[1] - &ak[1]];
    let b = f.monomials()[k].coefficient() - f.monomials()[i].coefficient();
    let base = if !a[0].is_zero() {
        [&b / &a[0], Rational::zero()]
    } else {
        [Rational::zero(), &b / &a[1]]
    };
    let dir = [-a[1].clone(), a[0].clone()];
    let line = TieLine { base, dir };
    let mut interval = Interval::default();
    for j in (0..f.len()).filter(|&j| j != i && j != k) {
        let aj = exps(f, j);
        let diff = [&aj[0] - &ai[0], &aj[1] - &ai[1]];
        let alpha = &diff[0] * &line.base[0]
            + &diff[1] * &line.base[1]
            + (f.monomials()[j].coefficient() - f.monomials()[i].coefficient());
        let beta = &diff[0] * &line.dir[0] + &diff[1] * &line.dir[1];
        interval.restrict(&alpha, &beta);
    }
    (line, interval)
}

fn pairs(f: &TropicalPolynomial) -> impl Iterator<Item = (usize, usize)> + '_ {
    (0..f.len()).flat_map(move |i| (i + 1..f.len()).map(move |k| (i, k)))
}

pub fn curve_pieces(f: &TropicalPolynomial, vp: &Viewport) -> Vec<CurvePiece> {
    let mut out = Vec::new();
    for (i, k) in pairs(f) {
        let (line, cell) = tie_cell(f, i, k);
        if !cell.is_segment() {
            continue;
        }
        let mut clipped = Interval {
            lo: cell.lo.clone(),
            hi: cell.hi.clone(),
            empty: false,
        };
        for axis in 0..2 {
            let (min, max) = if axis == 0 {
                (&vp.xmin, &vp.xmax)
            } else {
                (&vp.ymin, &vp.ymax)
            };
            // base + λ·dir - min >= 0 and max - base - λ·dir >= 0
            clipped.restrict(&(&line.base[axis] - min), &line.dir[axis]);
            clipped.restrict(&(max - &line.base[axis]), &-line.dir[axis].clone());
        }
        let (Some(lo), Some(hi)) = (&clipped.lo, &clipped.hi) else {
            continue;
        };
        if clipped.empty || lo >= hi {
            continue;
        }
        out.push(CurvePiece {
            pair: (i, k),
            start: line.at(lo),
            end: line.at(hi),
            start_is_ray: cell.lo.is_none(),
            end_is_ray: cell.hi.is_none(),
        });
    }
    out
}

/// Endpoints of the bounded ends of all one-dimensional cells.
fn curve_nodes(f: &TropicalPolynomial) -> Vec<Point2> {
    let mut out = Vec::new();
    for (i, k) in pairs(f) {
        let (line, cell) = tie_cell(f, i, k);
        if !cell.is_segment() {
            continue;
        }
        out.extend(cell.lo.iter().chain(cell.hi.iter()).map(|t| line.at(t)));
    }
    out
}

fn padded(min: Rational, max: Rational) -> (Rational, Rational) {
    let span = &max - &min;
    let quarter = &span / Rational::from_integer(4.into());
    let pad = if quarter < Rational::from_integer(1.into()) {
        Rational::from_integer(1.into())
    } else {
        quarter
    };
    (min - &pad, max + pad)
}

fn bounds(values: impl Iterator<Item = Rational>) -> Option<(Rational, Rational)> {
    values.fold(None, |acc, v| match acc {
        None => Some((v.clone(), v)),
        Some((lo, hi)) => Some((lo.min(v.clone()), hi.max(v))),
    })
}

/// Bounding box of the curve nodes, padded; `[-5, 5]^2` when there are none.
pub fn default_viewport(polys: &[&TropicalPolynomial]) -> Viewport {
    let (xs, ys): (Vec<Rational>, Vec<Rational>) = if polys.iter().all(|p| p.n() == 2) {
        polys
            .iter()
            .flat_map(|p| curve_nodes(p))
            .map(|[x, y]| (x, y))
            .unzip()
    } else {
        let xs: Vec<Rational> = polys
            .iter()
            .filter_map(|p| breakpoints_1d(p).ok())
            .flat_map(|b| b.points().to_vec())
            .collect();
        (xs, Vec::new())
    };
    let five = Rational::from_integer(5.into());
    let (xmin, xmax) = bounds(xs.into_iter())
        .map(|(a, b)| padded(a, b))
        .unwrap_or_else(|| (-five.clone(), five.clone()));
    let (ymin, ymax) = bounds(ys.into_iter())
        .map(|(a, b)| padded(a, b))
        .unwrap_or_else(|| (-five.clone(), five.clone()));
    Viewport {
        xmin,
        ymin,
        xmax,
        ymax,
    }
}

const PANEL: f64 = 400.0;
const MARGIN: f64 = 20.0;
const TOP: f64 = 30.0;

struct Panel {
    left: f64,
    xmin: f64,
    xmax: f64,
    ymin: f64,
    ymax: f64,
}

impl Panel {
    fn new(index: usize, xmin: f64, xmax: f64, ymin: f64, ymax: f64) -> Self {
        Self {
            left: MARGIN + index as f64 * (PANEL + MARGIN),
            xmin,
            xmax,
            ymin,
            ymax,
        }
    }

    fn from_viewport(index: usize, vp: &Viewport) -> Self {
        Self::new(
            index,
            to_f64(&vp.xmin),
            to_f64(&vp.xmax),
            to_f64(&vp.ymin),
            to_f64(&vp.ymax),
        )
    }

    fn px(&self, x: f64) -> f64 {
        self.left + (x - self.xmin) / (self.xmax - self.xmin) * PANEL
    }

    fn py(&self, y: f64) -> f64 {
        TOP + (self.ymax - y) / (self.ymax - self.ymin) * PANEL
    }

    fn frame(&self, svg: &mut String, title: &str) {
        let _ = writeln!(
            svg,
            r##"<rect x="{:.3}" y="{:.3}" width="{PANEL:.3}" height="{PANEL:.3}" fill="#ffffff" stroke="#888888"/>"##,
            self.left, TOP
        );
        let _ = writeln!(
            svg,
            r##"<text x="{:.3}" y="{:.3}" font-family="sans-serif" font-size="14">{title}</text>"##,
            self.left,
            TOP - 10.0
        );
    }

    fn axes(&self, svg: &mut String) {
        if self.xmin < 0.0 && self.xmax > 0.0 {
            let x = self.px(0.0);
            let _ = writeln!(
                svg,
                r##"<line x1="{x:.3}" y1="{:.3}" x2="{x:.3}" y2="{:.3}" stroke="#dddddd"/>"##,
                TOP,
                TOP + PANEL
            );
        }
        if self.ymin < 0.0 && self.ymax > 0.0 {
            let y = self.py(0.0);
            let _ = writeln!(
                svg,
                r##"<line x1="{:.3}" y1="{y:.3}" x2="{:.3}" y2="{y:.3}" stroke="#dddddd"/>"##,
                self.left,
                self.left + PANEL
            );
        }
    }

    fn line(&self, svg: &mut String, a: (f64, f64), b: (f64, f64), style: &str) {
        let _ = writeln!(
            svg,
            r#"<line x1="{:.3}" y1="{:.3}" x2="{:.3}" y2="{:.3}" {style}/>"#,
            self.px(a.0),
            self.py(a.1),
            self.px(b.0),
            self.py(b.1)
        );
    }

    fn dot(&self, svg: &mut String, p: (f64, f64), style: &str) {
        let _ = writeln!(
            svg,
            r#"<circle cx="{:.3}" cy="{:.3}" r="4" {style}/>"#,
            self.px(p.0),
            self.py(p.1)
        );
    }
}

struct CurveStyle {
    stroke: &'static str,
    width: f64,
    opacity: f64,
}

const F_STYLE: CurveStyle = CurveStyle {
    stroke: "#1f77b4",
    width: 2.0,
    opacity: 1.0,
};
const G_STYLE: CurveStyle = CurveStyle {
    stroke: "#d62728",
    width: 6.0,
    opacity: 0.45,
};

fn lerp(a: (f64, f64), b: (f64, f64), s: f64) -> (f64, f64) {
    (a.0 + (b.0 - a.0) * s, a.1 + (b.1 - a.1) * s)
}

fn draw_piece(svg: &mut String, panel: &Panel, piece: &CurvePiece, style: &CurveStyle) {
    const TAIL: f64 = 0.15;
    let a = (to_f64(&piece.start[0]), to_f64(&piece.start[1]));
    let b = (to_f64(&piece.end[0]), to_f64(&piece.end[1]));
    let solid = format!(
        r#"stroke="{}" stroke-width="{}" stroke-opacity="{}" stroke-linecap="round""#,
        style.stroke, style.width, style.opacity
    );
    let dashed = format!(
        r#"stroke="{}" stroke-width="{}" stroke-opacity="{}" stroke-dasharray="6 4""#,
        style.stroke, style.width, style.opacity
    );
    let s0 = if piece.start_is_ray { TAIL } else { 0.0 };
    let s1 = if piece.end_is_ray { 1.0 - TAIL } else { 1.0 };
    if piece.start_is_ray {
        panel.line(svg, a, lerp(a, b, s0), &dashed);
    }
    panel.line(svg, lerp(a, b, s0), lerp(a, b, s1), &solid);
    if piece.end_is_ray {
        panel.line(svg, lerp(a, b, s1), b, &dashed);
    }
}

fn newton_panel(svg: &mut String, index: usize, f: &TropicalPolynomial, title: &str) {
    let p = NewtonPolyhedron::new(f);
    // planar coordinates: the exponent vector for n = 2, (exponent, coefficient) for n = 1
    let planar = |c: &[Rational]| (to_f64(&c[0]), to_f64(&c[1]));
    let pts: Vec<(f64, f64)> = p.apexes().iter().map(|a| planar(a.coords())).collect();
    let (mut xmin, mut xmax, mut ymin, mut ymax) = pts.iter().fold(
        (
            f64::INFINITY,
            f64::NEG_INFINITY,
            f64::INFINITY,
            f64::NEG_INFINITY,
        ),
        |(a, b, c, d), &(x, y)| (a.min(x), b.max(x), c.min(y), d.max(y)),
    );
    let pad_x = ((xmax - xmin) * 0.1).max(0.5);
    let pad_y = ((ymax - ymin) * 0.1).max(0.5);
    xmin -= pad_x;
    xmax += pad_x;
    ymin -= pad_y;
    ymax += pad_y;
    if f.n() == 1 {
        ymax += pad_y * 2.0;
    }
    let panel = Panel::new(index, xmin, xmax, ymin, ymax);
    panel.frame(svg, title);
    let edge_style = r##"stroke="#2ca02c" stroke-width="2""##;
    for (i, j) in p.edges() {
        panel.line(
            svg,
            planar(p.vertices()[i].coords()),
            planar(p.vertices()[j].coords()),
            edge_style,
        );
    }
    if f.n() == 1 {
        let ray_style = r##"stroke="#2ca02c" stroke-width="2" stroke-dasharray="6 4""##;
        for v in [p.vertices().first(), p.vertices().last()]
            .into_iter()
            .flatten()
        {
            let (x, y) = planar(v.coords());
            panel.line(svg, (x, y), (x, ymax), ray_style);
        }
    }
    for a in p.apexes() {
        let style = if p.vertex_index(a).is_some() {
            r##"fill="#000000""##
        } else {
            r##"fill="#ffffff" stroke="#000000""##
        };
        panel.dot(svg, planar(a.coords()), style);
    }
}

fn breakpoint_panel(
    svg: &mut String,
    f: &TropicalPolynomial,
    g: Option<&TropicalPolynomial>,
    vp: &Viewport,
) {
    let panel = Panel::from_viewport(0, vp);
    panel.frame(svg, "Trop(f) on the real line");
    let mid = (panel.ymin + panel.ymax) / 2.0;
    panel.line(
        svg,
        (panel.xmin, mid),
        (panel.xmax, mid),
        r##"stroke="#888888""##,
    );
    let in_view = |x: &Rational| *x >= vp.xmin && *x <= vp.xmax;
    if let Some(g) = g {
        for x in breakpoints_1d(g)
            .expect("n = 1")
            .points()
            .iter()
            .filter(|x| in_view(x))
        {
            let _ = writeln!(
                svg,
                r##"<rect x="{:.3}" y="{:.3}" width="14" height="14" fill="none" stroke="{}" stroke-width="2"/>"##,
                panel.px(to_f64(x)) - 7.0,
                panel.py(mid) - 7.0,
                G_STYLE.stroke
            );
        }
    }
    for x in breakpoints_1d(f)
        .expect("n = 1")
        .points()
        .iter()
        .filter(|x| in_view(x))
    {
        panel.dot(
            svg,
            (to_f64(x), mid),
            &format!(r#"fill="{}""#, F_STYLE.stroke),
        );
    }
}

/// Renders `f` (and optionally `g`) as a standalone SVG document.
pub fn render(
    f: &TropicalPolynomial,
    g: Option<&TropicalPolynomial>,
    viewport: Option<Viewport>,
) -> Result<String, PlotError> {
    let n = f.n();
    if n > 2 {
        return Err(PlotError::UnsupportedDimension(n));
    }
    if let Some(g) = g {
        if g.n() != n {
            return Err(PlotError::DimensionMismatch(n, g.n()));
        }
    }
    let vp = match viewport {
        Some(vp) => {
            vp.validate()?;
            vp
        }
        None => {
            let mut polys = vec![f];
            polys.extend(g);
            default_viewport(&polys)
        }
    };
    let panels = 2 + usize::from(g.is_some());
    let width = MARGIN + panels as f64 * (PANEL + MARGIN);
    let height = TOP + PANEL + MARGIN;
    let mut svg = String::new();
    let _ = writeln!(
        svg,
        r#"<svg xmlns="http://www.w3.org/2000/svg" width="{width:.0}" height="{height:.0}" viewBox="0 0 {width:.0} {height:.0}">"#
    );
    if n == 2 {
        let panel = Panel::from_viewport(0, &vp);
        panel.frame(
            &mut svg,
            if g.is_some() {
                "Trop(f) and Trop(g)"
            } else {
                "Trop(f)"
            },
        );
        panel.axes(&mut svg);
        if let Some(g) = g {
            let _ = writeln!(svg, r#"<g id="trop-g">"#);
            for piece in curve_pieces(g, &vp) {
                draw_piece(&mut svg, &panel, &piece, &G_STYLE);
            }
            let _ = writeln!(svg, "</g>");
        }
        let _ = writeln!(svg, r#"<g id="trop-f">"#);
        for piece in curve_pieces(f, &vp) {
            draw_piece(&mut svg, &panel, &piece, &F_STYLE);
        }
        let _ = writeln!(svg, "</g>");
    } else {
        breakpoint_panel(&mut svg, f, g, &vp);
    }
    let sub = if n == 2 { "subdivision" } else { "polygon" };
    newton_panel(&mut svg, 1, f, &format!("Newton {sub} of f"));
    if let Some(g) = g {
        newton_panel(&mut svg, 2, g, &format!("Newton {sub} of g"));
    }
    svg.push_str("</svg>\n");
    Ok(svg)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::rat;

    fn poly(src: &str, n: usize) -> TropicalPolynomial {
        TropicalPolynomial::parse(src, n).unwrap()
    }

    fn vp(s: &str) -> Viewport {
        s.parse().unwrap()
    }

    #[test]
    fn tropical_line_is_three_rays() {
        let f = poly("min(0, x1, x2)", 2);
        let pieces = curve_pieces(&f, &vp("-3,-3,3,3"));
        assert_eq!(pieces.len(), 3);
        for p in &pieces {
            // each ray starts or ends at the origin and the other end is clipped
            let origin = [rat(0), rat(0)];
            assert!(p.start == origin || p.end == origin);
            assert!(p.start_is_ray ^ p.end_is_ray);
        }
    }

    #[test]
    fn viewport_parsing() {
        assert_eq!(vp("-1.5,-2,3/2,2").xmin, crate::rational::ratio(-3, 2));
        assert!("1,0,0,1".parse::<Viewport>().is_err());
        assert!("0,0,1".parse::<Viewport>().is_err());
        assert!("a,0,1,1".parse::<Viewport>().is_err());
    }

    #[test]
    fn three_variables_are_rejected() {
        let f = poly("min(0, x3)", 3);
        assert_eq!(
            render(&f, None, None),
            Err(PlotError::UnsupportedDimension(3))
        );
    }

    #[test]
    fn render_is_deterministic_and_well_formed() {
        let f = poly("min(0, x1, x2)", 2);
        let g = poly("min(0, x1, x2, x1 + x2)", 2);
        let a = render(&f, Some(&g), None).unwrap();
        let b = render(&f, Some(&g), None).unwrap();
        assert_eq!(a, b);
        assert!(a.starts_with("<svg"));
        assert!(a.trim_end().ends_with("</svg>"));
        assert!(a.contains(r#"id="trop-g""#));
        assert!(a.contains("stroke-dasharray"));
    }

    #[test]
    fn one_variable_plot() {
        let f = poly("min(0, x1, 1 + 2*x1)", 1);
        let svg = render(&f, None, None).unwrap();
        assert_eq!(svg.matches("<circle").count(), 2 + 3);
    }
}
