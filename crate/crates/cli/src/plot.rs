//! Real affine chart `u₃ = 1` of plane cubics, traced by marching squares.

use std::fmt::Write as _;
use std::fs;
use std::path::{Path, PathBuf};

use anyhow::{bail, Context, Result};

use rankdrop::cubic::{epipoles_by_intersection, hexahedral_cubic, Side};
use rankdrop::facesplit::PointPairConfig;
use rankdrop::io::{self, CurveInput};
use rankdrop::poly::{monomials, TernaryForm};
use rankdrop::scalar::normalized_floats;
use rankdrop::{Complex, Rational};

pub const DEFAULT_GRID: usize = 800;
const SIZE: f64 = 800.0;
const MARGIN: f64 = 0.2;
const PALETTE: [&str; 7] = ["#1f77b4", "#ff7f0e", "#2ca02c", "#d62728", "#9467bd", "#8c564b", "#e377c2"];

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Window {
    pub x0: f64,
    pub y0: f64,
    pub span: f64,
}

impl Window {
    /// Square window around the finite points, padded on every side.
    pub fn around(points: &[(f64, f64)]) -> Window {
        if points.is_empty() {
            return Window { x0: -2.0, y0: -2.0, span: 4.0 };
        }
        let (mut lx, mut ly, mut hx, mut hy) = (f64::MAX, f64::MAX, f64::MIN, f64::MIN);
        for &(x, y) in points {
            lx = lx.min(x);
            ly = ly.min(y);
            hx = hx.max(x);
            hy = hy.max(y);
        }
        let side = (hx - lx).max(hy - ly).max(1e-6);
        let span = side * (1.0 + 2.0 * MARGIN);
        let (cx, cy) = ((lx + hx) / 2.0, (ly + hy) / 2.0);
        Window { x0: cx - span / 2.0, y0: cy - span / 2.0, span }
    }

    fn to_px(self, x: f64, y: f64) -> (f64, f64) {
        ((x - self.x0) / self.span * SIZE, SIZE - (y - self.y0) / self.span * SIZE)
    }
}

pub struct Marked {
    pub label: String,
    pub at: (f64, f64),
    pub emphasis: bool,
}

fn affine(p: &[f64; 3]) -> Option<(f64, f64)> {
    let s = p.iter().fold(0.0f64, |m, v| m.max(v.abs()));
    (p[2].abs() > 1e-12 * s).then(|| (p[0] / p[2], p[1] / p[2]))
}

fn rational_affine(p: &[Rational; 3]) -> Option<(f64, f64)> {
    affine(&normalized_floats(p).try_into().expect("three"))
}

struct AffineCubic {
    terms: Vec<(f64, usize, usize)>,
}

impl AffineCubic {
    fn new(f: &TernaryForm<Rational>) -> Self {
        let c = normalized_floats(f.coeffs());
        let terms = monomials(f.degree()).into_iter().zip(c).filter(|(_, c)| *c != 0.0).map(|(e, c)| (c, e[0], e[1])).collect();
        AffineCubic { terms }
    }

    fn eval(&self, x: f64, y: f64) -> f64 {
        self.terms.iter().map(|&(c, a, b)| c * x.powi(a as i32) * y.powi(b as i32)).sum()
    }
}

/// Zero-level segments of `f` on a `grid × grid` lattice over the window.
pub fn contour(f: &TernaryForm<Rational>, w: &Window, grid: usize) -> Vec<[(f64, f64); 2]> {
    let g = AffineCubic::new(f);
    let n = grid.max(2);
    let step = w.span / n as f64;
    let xy = |i: usize, j: usize| (w.x0 + i as f64 * step, w.y0 + j as f64 * step);
    let vals: Vec<f64> = (0..=n).flat_map(|j| (0..=n).map(move |i| (i, j))).map(|(i, j)| {
        let (x, y) = xy(i, j);
        g.eval(x, y)
    }).collect();
    let v = |i: usize, j: usize| vals[j * (n + 1) + i];
    let lerp = |p: (f64, f64), q: (f64, f64), a: f64, b: f64| {
        let t = if a == b { 0.5 } else { a / (a - b) };
        (p.0 + t * (q.0 - p.0), p.1 + t * (q.1 - p.1))
    };
    let mut segs = Vec::new();
    for j in 0..n {
        for i in 0..n {
            // corners counter-clockwise from bottom-left
            let c = [xy(i, j), xy(i + 1, j), xy(i + 1, j + 1), xy(i, j + 1)];
            let a = [v(i, j), v(i + 1, j), v(i + 1, j + 1), v(i, j + 1)];
            if a.iter().any(|x| !x.is_finite()) {
                continue;
            }
            let case = a.iter().enumerate().fold(0, |m, (k, x)| m | (((*x > 0.0) as usize) << k));
            let edge = |e: usize| lerp(c[e], c[(e + 1) % 4], a[e], a[(e + 1) % 4]);
            let pairs: &[(usize, usize)] = match case {
                0 | 15 => &[],
                1 | 14 => &[(3, 0)],
                2 | 13 => &[(0, 1)],
                3 | 12 => &[(3, 1)],
                4 | 11 => &[(1, 2)],
                6 | 9 => &[(0, 2)],
                7 | 8 => &[(2, 3)],
                5 | 10 => {
                    let centre = g.eval((c[0].0 + c[2].0) / 2.0, (c[0].1 + c[2].1) / 2.0);
                    if (centre > 0.0) == (case == 5) {
                        &[(3, 2), (0, 1)]
                    } else {
                        &[(3, 0), (1, 2)]
                    }
                }
                _ => unreachable!(),
            };
            for &(e1, e2) in pairs {
                segs.push([edge(e1), edge(e2)]);
            }
        }
    }
    segs
}

/// Writes one SVG; returns the number of contour segments drawn.
pub fn render(path: &Path, title: &str, curves: &[TernaryForm<Rational>], marked: &[Marked], grid: usize) -> Result<usize> {
    let w = Window::around(&marked.iter().map(|m| m.at).collect::<Vec<_>>());
    let mut svg = String::new();
    writeln!(svg, r#"<svg xmlns="http://www.w3.org/2000/svg" width="{SIZE}" height="{SIZE}" viewBox="0 0 {SIZE} {SIZE}">"#)?;
    writeln!(svg, r#"<rect width="100%" height="100%" fill="white"/>"#)?;
    writeln!(svg, r#"<title>{title}</title>"#)?;
    let mut total = 0;
    for (k, f) in curves.iter().enumerate() {
        let segs = contour(f, &w, grid);
        total += segs.len();
        let mut d = String::new();
        for [p, q] in &segs {
            let (a, b) = w.to_px(p.0, p.1);
            let (c, e) = w.to_px(q.0, q.1);
            write!(d, "M{a:.2} {b:.2}L{c:.2} {e:.2}")?;
        }
        writeln!(svg, r#"<path d="{d}" stroke="{}" stroke-width="1.5" fill="none"/>"#, PALETTE[k % PALETTE.len()])?;
    }
    for m in marked {
        let (x, y) = w.to_px(m.at.0, m.at.1);
        if m.emphasis {
            writeln!(svg, r#"<rect x="{:.2}" y="{:.2}" width="10" height="10" fill="none" stroke="black" stroke-width="2"/>"#, x - 5.0, y - 5.0)?;
        } else {
            writeln!(svg, r#"<circle cx="{x:.2}" cy="{y:.2}" r="4" fill="black"/>"#)?;
        }
        writeln!(svg, r#"<text x="{:.2}" y="{:.2}" font-family="sans-serif" font-size="14">{}</text>"#, x + 7.0, y - 7.0, m.label)?;
    }
    writeln!(svg, "</svg>")?;
    fs::write(path, svg).with_context(|| format!("writing {}", path.display()))?;
    if total == 0 {
        log::warn!("{}: no real locus in the plotting window", path.display());
    }
    Ok(total)
}

fn side_path(out: &Path, suffix: &str) -> PathBuf {
    let stem = out.file_stem().map(|s| s.to_string_lossy().into_owned()).unwrap_or_else(|| "plot".into());
    out.with_file_name(format!("{stem}_{suffix}.svg"))
}

fn config_points(cfg: &PointPairConfig<Rational>, side: Side) -> Vec<Marked> {
    let (name, pts) = match side {
        Side::X => ("x", cfg.xs()),
        Side::Y => ("y", cfg.ys()),
    };
    pts.iter()
        .enumerate()
        .filter_map(|(i, p)| {
            let at = rational_affine(p.coords());
            if at.is_none() {
                log::warn!("{name}{} is at infinity and is not drawn", i + 1);
            }
            at.map(|at| Marked { label: format!("{name}{}", i + 1), at, emphasis: false })
        })
        .collect()
}

fn real_points(pts: &[rankdrop::ProjPoint2<Complex>], label: &str) -> Vec<Marked> {
    pts.iter()
        .filter(|p| p.coords().iter().all(|z| z.im.abs() <= 1e-8 * p.norm()))
        .filter_map(|p| affine(&p.coords().map(|z| z.re)))
        .map(|at| Marked { label: label.into(), at, emphasis: true })
        .collect()
}

/// Plots a config (six pairs: `C_x`, `C_y`; seven pairs: the seven
/// leave-one-out curves per side with their common points) or explicit cubics.
pub fn plot_file(text: &str, out: &Path, grid: usize, seed: u64) -> Result<Vec<PathBuf>> {
    let value: serde_json::Value = serde_json::from_str(text).context("parsing plot input")?;
    if value.get("pairs").is_some() {
        let cfg = io::parse_config(text)?;
        let mut written = Vec::new();
        match cfg.k() {
            6 => {
                for side in [Side::X, Side::Y] {
                    let suffix = if side == Side::X { "x" } else { "y" };
                    let curves = match hexahedral_cubic(&cfg, side) {
                        Ok(c) => vec![c.form().clone()],
                        Err(e) => {
                            log::warn!("C_{suffix}: {e}");
                            Vec::new()
                        }
                    };
                    let p = side_path(out, suffix);
                    render(&p, &format!("C_{suffix}"), &curves, &config_points(&cfg, side), grid)?;
                    written.push(p);
                }
            }
            7 => {
                let ep = epipoles_by_intersection(&cfg, seed).ok();
                for side in [Side::X, Side::Y] {
                    let suffix = if side == Side::X { "x" } else { "y" };
                    let curves: Vec<TernaryForm<Rational>> =
                        (0..7).filter_map(|i| hexahedral_cubic(&cfg.without(i), side).ok().map(|c| c.form().clone())).collect();
                    let mut marked = config_points(&cfg, side);
                    if let Some(ep) = &ep {
                        let pts = if side == Side::X { &ep.x } else { &ep.y };
                        marked.extend(real_points(pts, if side == Side::X { "e" } else { "e'" }));
                    }
                    let p = side_path(out, suffix);
                    render(&p, &format!("seven curves, {suffix} side"), &curves, &marked, grid)?;
                    written.push(p);
                }
            }
            k => bail!("plotting needs 6 or 7 pairs, got {k}"),
        }
        return Ok(written);
    }
    let input = CurveInput::parse(text)?;
    let curves = input.forms()?;
    let marked = input
        .marked_points()?
        .iter()
        .enumerate()
        .filter_map(|(i, p)| rational_affine(p).map(|at| Marked { label: format!("p{}", i + 1), at, emphasis: false }))
        .collect::<Vec<_>>();
    render(out, "cubics", &curves, &marked, grid)?;
    Ok(vec![out.to_path_buf()])
}
