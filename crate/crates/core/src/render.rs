//! Deterministic vector rendering and rasterization.
//!
//! Every visual artifact is a [`VecDoc`]: a list of primitives from the
//! SVG 1.1 subset (rect, polygon, line, circle, text). The vector document
//! is the source of truth; PNG rasterization is a derived view. Scene
//! digests hash the canonically ordered, coordinate-quantized primitive
//! list, so primitive order never matters and 1e-6 coordinate jitter never
//! changes a digest.
//!
//! Isometric camera: standard 30-degree axonometric looking at the
//! (+x, +y, +z) corner; x runs rightward-down, y leftward-down, z up.
//! Painter order is ascending x + y + z. Face shading: top 1.0, the +y
//! (screen-left) face 0.8, the +x (screen-right) face 0.65.

use crate::patterns::{
    slot_frames, corner_view, CubeCorner, CubeModel, FaceName, Glyph, Grid2D, NetLayout, Pattern,
    PatternCell, Corner, FaceMap,
};
use crate::sims::arrows::{ArrowMapState, SingleArrowState};
use crate::sims::blocks::BlockScene;
use crate::sims::paper::PaperState;
use crate::solids::SectionPolygons;
use crate::voxel::{CellCoord, OccupancyGrid, ViewAxis};
use sha2::{Digest, Sha256};
use thiserror::Error;

#[derive(Debug, Error)]
pub enum RenderError {
    #[error("marked cube at ({0}, {1}, {2}) is not visible from any requested view")]
    MarkNotVisible(usize, usize, usize),
    #[error("drawing has no internal line to delete")]
    NoInternalLine,
    #[error("unsupported primitive for this operation")]
    UnsupportedPrimitive,
}

/// Rendering knobs. The palette is fixed: index 0 is the red marker color,
/// excluded from face colors; indices 1..=6 are the six face colors in
/// [`crate::patterns::COLOR_NAMES`] order.
#[derive(Debug, Clone)]
pub struct RenderStyle {
    pub palette: Vec<&'static str>,
    pub shade_top: f64,
    pub shade_left: f64,
    pub shade_right: f64,
    pub stroke_width: f64,
    pub cell_px: f64,
}

impl Default for RenderStyle {
    fn default() -> Self {
        RenderStyle {
            palette: vec![
                "#d64545", // red marker
                "#3b6fd4", "#3fa34d", "#e8c547", "#e87d3e", "#8e5bb5", "#3fbfbf",
            ],
            shade_top: 1.0,
            shade_left: 0.8,
            shade_right: 0.65,
            stroke_width: 1.5,
            cell_px: 40.0,
        }
    }
}

impl RenderStyle {
    pub fn marker_color(&self) -> &'static str {
        self.palette[0]
    }

    /// Face color for pattern color id `k` (0..=5).
    pub fn face_color(&self, k: u8) -> &'static str {
        self.palette[1 + k as usize % 6]
    }
}

pub const INK: &str = "#1a1a1a";
pub const PAPER_BG: &str = "#ffffff";
pub const AWAY_GRAY: &str = "#c9c9c9";
pub const CUBE_BASE: &str = "#e8e3d5";

/// Multiply a hex color's channels by a factor in (0, 1].
pub fn shade(hex: &str, factor: f64) -> String {
    let v = u32::from_str_radix(hex.trim_start_matches('#'), 16).unwrap_or(0);
    let r = ((v >> 16 & 0xff) as f64 * factor).round().clamp(0.0, 255.0) as u32;
    let g = ((v >> 8 & 0xff) as f64 * factor).round().clamp(0.0, 255.0) as u32;
    let b = ((v & 0xff) as f64 * factor).round().clamp(0.0, 255.0) as u32;
    format!("#{r:02x}{g:02x}{b:02x}")
}

#[derive(Debug, Clone, PartialEq)]
pub enum Prim {
    Rect { x: f64, y: f64, w: f64, h: f64, fill: Option<String>, stroke: Option<String>, stroke_width: f64 },
    Polygon { points: Vec<[f64; 2]>, fill: Option<String>, stroke: Option<String>, stroke_width: f64 },
    Line { x1: f64, y1: f64, x2: f64, y2: f64, stroke: String, stroke_width: f64 },
    Circle { cx: f64, cy: f64, r: f64, fill: String },
    Text { x: f64, y: f64, size: f64, content: String, fill: String },
}

/// A deterministic vector document.
#[derive(Debug, Clone, PartialEq)]
pub struct VecDoc {
    pub width: f64,
    pub height: f64,
    pub prims: Vec<Prim>,
}

fn fmt_num(x: f64) -> String {
    // Stable short formatting: up to 4 decimals, trailing zeros trimmed.
    let q = (x * 1e4).round() / 1e4;
    let mut s = format!("{q:.4}");
    while s.ends_with('0') {
        s.pop();
    }
    if s.ends_with('.') {
        s.pop();
    }
    if s == "-0" {
        s = "0".into();
    }
    s
}

impl VecDoc {
    pub fn new(width: f64, height: f64) -> Self {
        VecDoc { width, height, prims: Vec::new() }
    }

    pub fn to_svg(&self) -> String {
        let mut out = String::new();
        out.push_str(&format!(
            "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" width=\"{}\" height=\"{}\" viewBox=\"0 0 {} {}\">\n",
            fmt_num(self.width),
            fmt_num(self.height),
            fmt_num(self.width),
            fmt_num(self.height)
        ));
        out.push_str(&format!(
            "<rect x=\"0\" y=\"0\" width=\"{}\" height=\"{}\" fill=\"{PAPER_BG}\"/>\n",
            fmt_num(self.width),
            fmt_num(self.height)
        ));
        for p in &self.prims {
            match p {
                Prim::Rect { x, y, w, h, fill, stroke, stroke_width } => {
                    out.push_str(&format!(
                        "<rect x=\"{}\" y=\"{}\" width=\"{}\" height=\"{}\" fill=\"{}\"{}/>\n",
                        fmt_num(*x),
                        fmt_num(*y),
                        fmt_num(*w),
                        fmt_num(*h),
                        fill.as_deref().unwrap_or("none"),
                        stroke_attr(stroke, *stroke_width)
                    ));
                }
                Prim::Polygon { points, fill, stroke, stroke_width } => {
                    let pts: Vec<String> =
                        points.iter().map(|p| format!("{},{}", fmt_num(p[0]), fmt_num(p[1]))).collect();
                    out.push_str(&format!(
                        "<polygon points=\"{}\" fill=\"{}\"{}/>\n",
                        pts.join(" "),
                        fill.as_deref().unwrap_or("none"),
                        stroke_attr(stroke, *stroke_width)
                    ));
                }
                Prim::Line { x1, y1, x2, y2, stroke, stroke_width } => {
                    out.push_str(&format!(
                        "<line x1=\"{}\" y1=\"{}\" x2=\"{}\" y2=\"{}\" stroke=\"{}\" stroke-width=\"{}\"/>\n",
                        fmt_num(*x1),
                        fmt_num(*y1),
                        fmt_num(*x2),
                        fmt_num(*y2),
                        stroke,
                        fmt_num(*stroke_width)
                    ));
                }
                Prim::Circle { cx, cy, r, fill } => {
                    out.push_str(&format!(
                        "<circle cx=\"{}\" cy=\"{}\" r=\"{}\" fill=\"{}\"/>\n",
                        fmt_num(*cx),
                        fmt_num(*cy),
                        fmt_num(*r),
                        fill
                    ));
                }
                Prim::Text { x, y, size, content, fill } => {
                    out.push_str(&format!(
                        "<text x=\"{}\" y=\"{}\" font-size=\"{}\" font-family=\"monospace\" fill=\"{}\">{}</text>\n",
                        fmt_num(*x),
                        fmt_num(*y),
                        fmt_num(*size),
                        fill,
                        xml_escape(content)
                    ));
                }
            }
        }
        out.push_str("</svg>\n");
        out
    }

    /// Canonical digest: primitives serialized with quantized coordinates,
    /// sorted, hashed. Reordering primitives cannot change it.
    pub fn digest(&self) -> SceneDigest {
        let mut lines: Vec<String> = self.prims.iter().map(prim_key).collect();
        lines.sort();
        let mut hasher = Sha256::new();
        hasher.update(format!("doc:{}x{}\n", fmt_num(self.width), fmt_num(self.height)));
        for l in &lines {
            hasher.update(l);
            hasher.update("\n");
        }
        let out = hasher.finalize();
        SceneDigest(out.iter().map(|b| format!("{b:02x}")).collect())
    }
}

fn attr(line: &str, name: &str) -> Option<String> {
    let pat = format!("{name}=\"");
    let start = line.find(&pat)? + pat.len();
    let end = line[start..].find('"')? + start;
    Some(line[start..end].to_string())
}

fn attr_f(line: &str, name: &str) -> Option<f64> {
    attr(line, name)?.parse().ok()
}

impl VecDoc {
    /// Parse a document this module serialized. Only the emitted subset is
    /// understood; anything else is an error.
    pub fn from_svg(svg: &str) -> Result<VecDoc, RenderError> {
        let mut lines = svg.lines();
        let header = lines.next().ok_or(RenderError::UnsupportedPrimitive)?;
        let width = attr_f(header, "width").ok_or(RenderError::UnsupportedPrimitive)?;
        let height = attr_f(header, "height").ok_or(RenderError::UnsupportedPrimitive)?;
        let mut doc = VecDoc::new(width, height);
        let mut background_skipped = false;
        for line in lines {
            let line = line.trim();
            if line.is_empty() || line == "</svg>" {
                continue;
            }
            if line.starts_with("<rect") {
                let x = attr_f(line, "x").ok_or(RenderError::UnsupportedPrimitive)?;
                let y = attr_f(line, "y").ok_or(RenderError::UnsupportedPrimitive)?;
                let w = attr_f(line, "width").ok_or(RenderError::UnsupportedPrimitive)?;
                let h = attr_f(line, "height").ok_or(RenderError::UnsupportedPrimitive)?;
                let fill = attr(line, "fill");
                if !background_skipped
                    && x == 0.0
                    && y == 0.0
                    && w == width
                    && h == height
                    && fill.as_deref() == Some(PAPER_BG)
                {
                    background_skipped = true;
                    continue;
                }
                doc.prims.push(Prim::Rect {
                    x,
                    y,
                    w,
                    h,
                    fill: fill.filter(|f| f != "none"),
                    stroke: attr(line, "stroke"),
                    stroke_width: attr_f(line, "stroke-width").unwrap_or(0.0),
                });
            } else if line.starts_with("<polygon") {
                let pts_raw = attr(line, "points").ok_or(RenderError::UnsupportedPrimitive)?;
                let mut points = Vec::new();
                for pair in pts_raw.split(' ') {
                    let (a, b) = pair.split_once(',').ok_or(RenderError::UnsupportedPrimitive)?;
                    points.push([
                        a.parse().map_err(|_| RenderError::UnsupportedPrimitive)?,
                        b.parse().map_err(|_| RenderError::UnsupportedPrimitive)?,
                    ]);
                }
                doc.prims.push(Prim::Polygon {
                    points,
                    fill: attr(line, "fill").filter(|f| f != "none"),
                    stroke: attr(line, "stroke"),
                    stroke_width: attr_f(line, "stroke-width").unwrap_or(0.0),
                });
            } else if line.starts_with("<line") {
                doc.prims.push(Prim::Line {
                    x1: attr_f(line, "x1").ok_or(RenderError::UnsupportedPrimitive)?,
                    y1: attr_f(line, "y1").ok_or(RenderError::UnsupportedPrimitive)?,
                    x2: attr_f(line, "x2").ok_or(RenderError::UnsupportedPrimitive)?,
                    y2: attr_f(line, "y2").ok_or(RenderError::UnsupportedPrimitive)?,
                    stroke: attr(line, "stroke").ok_or(RenderError::UnsupportedPrimitive)?,
                    stroke_width: attr_f(line, "stroke-width").unwrap_or(1.0),
                });
            } else if line.starts_with("<circle") {
                doc.prims.push(Prim::Circle {
                    cx: attr_f(line, "cx").ok_or(RenderError::UnsupportedPrimitive)?,
                    cy: attr_f(line, "cy").ok_or(RenderError::UnsupportedPrimitive)?,
                    r: attr_f(line, "r").ok_or(RenderError::UnsupportedPrimitive)?,
                    fill: attr(line, "fill").ok_or(RenderError::UnsupportedPrimitive)?,
                });
            } else if line.starts_with("<text") {
                let open_end =
                    line.find('>').ok_or(RenderError::UnsupportedPrimitive)? + 1;
                let close = line.rfind("</text>").ok_or(RenderError::UnsupportedPrimitive)?;
                let content = line[open_end..close]
                    .replace("&lt;", "<")
                    .replace("&gt;", ">")
                    .replace("&amp;", "&");
                doc.prims.push(Prim::Text {
                    x: attr_f(line, "x").ok_or(RenderError::UnsupportedPrimitive)?,
                    y: attr_f(line, "y").ok_or(RenderError::UnsupportedPrimitive)?,
                    size: attr_f(line, "font-size").ok_or(RenderError::UnsupportedPrimitive)?,
                    content,
                    fill: attr(line, "fill").ok_or(RenderError::UnsupportedPrimitive)?,
                });
            } else {
                return Err(RenderError::UnsupportedPrimitive);
            }
        }
        Ok(doc)
    }
}

fn stroke_attr(stroke: &Option<String>, width: f64) -> String {
    match stroke {
        Some(s) => format!(" stroke=\"{}\" stroke-width=\"{}\"", s, fmt_num(width)),
        None => String::new(),
    }
}

fn xml_escape(s: &str) -> String {
    s.replace('&', "&amp;").replace('<', "&lt;").replace('>', "&gt;")
}

fn prim_key(p: &Prim) -> String {
    match p {
        Prim::Rect { x, y, w, h, fill, stroke, stroke_width } => format!(
            "rect {} {} {} {} {} {} {}",
            fmt_num(*x),
            fmt_num(*y),
            fmt_num(*w),
            fmt_num(*h),
            fill.as_deref().unwrap_or("-"),
            stroke.as_deref().unwrap_or("-"),
            fmt_num(*stroke_width)
        ),
        Prim::Polygon { points, fill, stroke, stroke_width } => {
            // Canonical cyclic form so equal polygons hash equal however
            // their vertex list is rotated or wound.
            let pts: Vec<String> =
                points.iter().map(|q| format!("{},{}", fmt_num(q[0]), fmt_num(q[1]))).collect();
            let canon = canonical_cycle(&pts);
            format!(
                "poly {} {} {} {}",
                canon.join(" "),
                fill.as_deref().unwrap_or("-"),
                stroke.as_deref().unwrap_or("-"),
                fmt_num(*stroke_width)
            )
        }
        Prim::Line { x1, y1, x2, y2, stroke, stroke_width } => {
            let a = (fmt_num(*x1), fmt_num(*y1));
            let b = (fmt_num(*x2), fmt_num(*y2));
            let (a, b) = if a <= b { (a, b) } else { (b, a) };
            format!("line {},{} {},{} {} {}", a.0, a.1, b.0, b.1, stroke, fmt_num(*stroke_width))
        }
        Prim::Circle { cx, cy, r, fill } => {
            format!("circle {} {} {} {}", fmt_num(*cx), fmt_num(*cy), fmt_num(*r), fill)
        }
        Prim::Text { x, y, size, content, fill } => {
            format!("text {} {} {} {} {}", fmt_num(*x), fmt_num(*y), fmt_num(*size), content, fill)
        }
    }
}

fn canonical_cycle(pts: &[String]) -> Vec<String> {
    let n = pts.len();
    if n == 0 {
        return Vec::new();
    }
    let mut best: Option<Vec<String>> = None;
    for rev in [false, true] {
        let seq: Vec<String> = if rev {
            pts.iter().rev().cloned().collect()
        } else {
            pts.to_vec()
        };
        for s in 0..n {
            let mut rot = seq.clone();
            rot.rotate_left(s);
            if best.as_ref().map_or(true, |b| rot < *b) {
                best = Some(rot);
            }
        }
    }
    best.unwrap()
}

/// Stable content hash of a document.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct SceneDigest(pub String);

// ---------------------------------------------------------------------------
// Rigid document transforms (the three-view distractor modes).

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum DocTransform {
    DeleteInternalLine,
    Rotate90,
    FlipHorizontal,
    FlipVertical,
}

/// Apply a distractor transform to a drawing produced by this module.
/// Mode DeleteInternalLine removes the first stroke not on the outer
/// boundary; the rigid modes map every primitive.
pub fn transform_view_drawing(doc: &VecDoc, mode: DocTransform) -> Result<VecDoc, RenderError> {
    match mode {
        DocTransform::DeleteInternalLine => {
            let eps = 1e-6;
            // Outer boundary = the bounding box of all line endpoints.
            let mut lo = [f64::INFINITY; 2];
            let mut hi = [f64::NEG_INFINITY; 2];
            for p in &doc.prims {
                if let Prim::Line { x1, y1, x2, y2, .. } = p {
                    for (x, y) in [(x1, y1), (x2, y2)] {
                        lo[0] = lo[0].min(*x);
                        lo[1] = lo[1].min(*y);
                        hi[0] = hi[0].max(*x);
                        hi[1] = hi[1].max(*y);
                    }
                }
            }
            let on_boundary = |x1: f64, y1: f64, x2: f64, y2: f64| -> bool {
                for (c, coord) in [(x1, 0), (y1, 1)] {
                    let _ = (c, coord);
                }
                ((x1 - lo[0]).abs() < eps && (x2 - lo[0]).abs() < eps)
                    || ((x1 - hi[0]).abs() < eps && (x2 - hi[0]).abs() < eps)
                    || ((y1 - lo[1]).abs() < eps && (y2 - lo[1]).abs() < eps)
                    || ((y1 - hi[1]).abs() < eps && (y2 - hi[1]).abs() < eps)
            };
            let idx = doc.prims.iter().position(|p| {
                matches!(p, Prim::Line { x1, y1, x2, y2, .. } if !on_boundary(*x1, *y1, *x2, *y2))
            });
            let Some(idx) = idx else {
                return Err(RenderError::NoInternalLine);
            };
            let mut out = doc.clone();
            out.prims.remove(idx);
            Ok(out)
        }
        DocTransform::Rotate90 => {
            // Clockwise about the document center; width and height swap.
            let (w, h) = (doc.width, doc.height);
            let map = |x: f64, y: f64| -> (f64, f64) { (h - y, x) };
            let mut out = VecDoc::new(h, w);
            for p in &doc.prims {
                out.prims.push(match p {
                    Prim::Rect { x, y, w: rw, h: rh, fill, stroke, stroke_width } => {
                        let (nx, ny) = map(*x, *y + *rh);
                        Prim::Rect {
                            x: nx,
                            y: ny,
                            w: *rh,
                            h: *rw,
                            fill: fill.clone(),
                            stroke: stroke.clone(),
                            stroke_width: *stroke_width,
                        }
                    }
                    Prim::Polygon { points, fill, stroke, stroke_width } => Prim::Polygon {
                        points: points.iter().map(|p| {
                            let (nx, ny) = map(p[0], p[1]);
                            [nx, ny]
                        }).collect(),
                        fill: fill.clone(),
                        stroke: stroke.clone(),
                        stroke_width: *stroke_width,
                    },
                    Prim::Line { x1, y1, x2, y2, stroke, stroke_width } => {
                        let (nx1, ny1) = map(*x1, *y1);
                        let (nx2, ny2) = map(*x2, *y2);
                        Prim::Line {
                            x1: nx1,
                            y1: ny1,
                            x2: nx2,
                            y2: ny2,
                            stroke: stroke.clone(),
                            stroke_width: *stroke_width,
                        }
                    }
                    Prim::Circle { cx, cy, r, fill } => {
                        let (nx, ny) = map(*cx, *cy);
                        Prim::Circle { cx: nx, cy: ny, r: *r, fill: fill.clone() }
                    }
                    Prim::Text { x, y, size, content, fill } => {
                        let (nx, ny) = map(*x, *y);
                        Prim::Text { x: nx, y: ny, size: *size, content: content.clone(), fill: fill.clone() }
                    }
                });
            }
            let _ = w;
            Ok(out)
        }
        DocTransform::FlipHorizontal | DocTransform::FlipVertical
            => {
            let horizontal = mode == DocTransform::FlipHorizontal;
            let (w, h) = (doc.width, doc.height);
            let map = move |x: f64, y: f64| -> (f64, f64) {
                if horizontal {
                    (w - x, y)
                } else {
                    (x, h - y)
                }
            };
            let mut out = VecDoc::new(w, h);
            for p in &doc.prims {
                out.prims.push(match p {
                    Prim::Rect { x, y, w: rw, h: rh, fill, stroke, stroke_width } => {
                        let (nx, ny) = if horizontal { (w - x - rw, *y) } else { (*x, h - y - rh) };
                        Prim::Rect {
                            x: nx,
                            y: ny,
                            w: *rw,
                            h: *rh,
                            fill: fill.clone(),
                            stroke: stroke.clone(),
                            stroke_width: *stroke_width,
                        }
                    }
                    Prim::Polygon { points, fill, stroke, stroke_width } => Prim::Polygon {
                        points: points.iter().map(|p| {
                            let (nx, ny) = map(p[0], p[1]);
                            [nx, ny]
                        }).collect(),
                        fill: fill.clone(),
                        stroke: stroke.clone(),
                        stroke_width: *stroke_width,
                    },
                    Prim::Line { x1, y1, x2, y2, stroke, stroke_width } => {
                        let (nx1, ny1) = map(*x1, *y1);
                        let (nx2, ny2) = map(*x2, *y2);
                        Prim::Line {
                            x1: nx1,
                            y1: ny1,
                            x2: nx2,
                            y2: ny2,
                            stroke: stroke.clone(),
                            stroke_width: *stroke_width,
                        }
                    }
                    Prim::Circle { cx, cy, r, fill } => {
                        let (nx, ny) = map(*cx, *cy);
                        Prim::Circle { cx: nx, cy: ny, r: *r, fill: fill.clone() }
                    }
                    Prim::Text { x, y, size, content, fill } => {
                        let (nx, ny) = map(*x, *y);
                        Prim::Text { x: nx, y: ny, size: *size, content: content.clone(), fill: fill.clone() }
                    }
                });
            }
            Ok(out)
        }
    }
}

// ---------------------------------------------------------------------------
// Pattern cell drawing.

/// Glyph geometry in the unit cell, y down; deliberately asymmetric.
fn glyph_polys(glyph: Glyph) -> Vec<Vec<[f64; 2]>> {
    match glyph {
        Glyph::Arrow => vec![vec![
            [0.5, 0.1],
            [0.8, 0.45],
            [0.58, 0.42],
            [0.58, 0.9],
            [0.4, 0.9],
            [0.4, 0.38],
        ]],
        Glyph::Ell => vec![vec![
            [0.25, 0.1],
            [0.45, 0.1],
            [0.45, 0.7],
            [0.8, 0.7],
            [0.8, 0.9],
            [0.25, 0.9],
        ]],
        Glyph::Flag => vec![
            vec![[0.3, 0.1], [0.42, 0.1], [0.42, 0.9], [0.3, 0.9]],
            vec![[0.42, 0.14], [0.84, 0.3], [0.42, 0.46]],
        ],
        Glyph::Hook => vec![vec![
            [0.3, 0.1],
            [0.5, 0.1],
            [0.5, 0.66],
            [0.66, 0.66],
            [0.66, 0.42],
            [0.82, 0.42],
            [0.82, 0.9],
            [0.3, 0.9],
            [0.3, 0.74],
            [0.34, 0.74],
            [0.34, 0.26],
            [0.3, 0.26],
        ]],
        Glyph::Step => vec![vec![
            [0.2, 0.9],
            [0.2, 0.62],
            [0.42, 0.62],
            [0.42, 0.36],
            [0.64, 0.36],
            [0.64, 0.12],
            [0.84, 0.12],
            [0.84, 0.9],
        ]],
        Glyph::Key => vec![
            vec![[0.36, 0.12], [0.6, 0.12], [0.6, 0.34], [0.36, 0.34]],
            vec![[0.44, 0.34], [0.56, 0.34], [0.56, 0.9], [0.44, 0.9]],
            vec![[0.56, 0.56], [0.74, 0.56], [0.74, 0.68], [0.56, 0.68]],
        ],
    }
}

fn rotate_unit_point(p: [f64; 2], quarter_turns: u8) -> [f64; 2] {
    let mut q = p;
    for _ in 0..quarter_turns % 4 {
        q = [1.0 - q[1], q[0]];
    }
    q
}

fn mirror_unit_point(p: [f64; 2]) -> [f64; 2] {
    [1.0 - p[0], p[1]]
}

/// Pattern geometry in the unit cell: (background fill, ink polygons, dots).
struct CellArt {
    background: String,
    ink: Vec<Vec<[f64; 2]>>,
    dots: Vec<([f64; 2], String)>,
}

fn cell_art(cell: PatternCell, style: &RenderStyle) -> CellArt {
    let rot = cell.rotation;
    match cell.pattern {
        Pattern::Solid(c) => CellArt {
            background: style.face_color(c).to_string(),
            ink: Vec::new(),
            dots: Vec::new(),
        },
        Pattern::Glyph { glyph, mirrored } => {
            let ink = glyph_polys(glyph)
                .into_iter()
                .map(|poly| {
                    poly.into_iter()
                        .map(|p| {
                            let p = if mirrored { mirror_unit_point(p) } else { p };
                            rotate_unit_point(p, rot)
                        })
                        .collect()
                })
                .collect();
            CellArt { background: PAPER_BG.to_string(), ink, dots: Vec::new() }
        }
        Pattern::Dots(colors) => {
            let mut dots = Vec::new();
            for (i, &c) in colors.iter().enumerate() {
                let (r, col) = (i / 3, i % 3);
                let p = rotate_unit_point(
                    [(col as f64 + 0.5) / 3.0, (r as f64 + 0.5) / 3.0],
                    rot,
                );
                dots.push((p, style.face_color(c).to_string()));
            }
            CellArt { background: PAPER_BG.to_string(), ink: Vec::new(), dots }
        }
    }
}

/// Draw one pattern cell through an affine map of the unit square.
/// `origin` is the image of (0,0), `ex`/`ey` the images of the basis.
fn draw_cell_affine(
    doc: &mut VecDoc,
    cell: PatternCell,
    style: &RenderStyle,
    origin: [f64; 2],
    ex: [f64; 2],
    ey: [f64; 2],
    shade_factor: f64,
) {
    let map = |p: [f64; 2]| -> [f64; 2] {
        [
            origin[0] + p[0] * ex[0] + p[1] * ey[0],
            origin[1] + p[0] * ex[1] + p[1] * ey[1],
        ]
    };
    let art = cell_art(cell, style);
    let bg = shade(&art.background, shade_factor);
    let quad: Vec<[f64; 2]> = [[0.0, 0.0], [1.0, 0.0], [1.0, 1.0], [0.0, 1.0]]
        .iter()
        .map(|&p| map(p))
        .collect();
    doc.prims.push(Prim::Polygon {
        points: quad,
        fill: Some(bg),
        stroke: Some(INK.to_string()),
        stroke_width: style.stroke_width,
    });
    for poly in art.ink {
        doc.prims.push(Prim::Polygon {
            points: poly.into_iter().map(map).collect(),
            fill: Some(shade(INK, 1.0)),
            stroke: None,
            stroke_width: 0.0,
        });
    }
    let dot_r = 0.11 * (ex[0].hypot(ex[1])).min(ey[0].hypot(ey[1]));
    for (p, color) in art.dots {
        let q = map(p);
        doc.prims.push(Prim::Circle { cx: q[0], cy: q[1], r: dot_r, fill: shade(&color, shade_factor) });
    }
}

// ---------------------------------------------------------------------------
// Grid rendering.

const MARGIN: f64 = 12.0;

/// Colored/pattern grid with optional red corner marker.
pub fn render_grid2d(grid: &Grid2D, style: &RenderStyle) -> VecDoc {
    let s = style.cell_px;
    let w = grid.cols as f64 * s + 2.0 * MARGIN;
    let h = grid.rows as f64 * s + 2.0 * MARGIN;
    let mut doc = VecDoc::new(w, h);
    for r in 0..grid.rows {
        for c in 0..grid.cols {
            if let Some(cell) = grid.get(r, c) {
                draw_cell_affine(
                    &mut doc,
                    cell,
                    style,
                    [MARGIN + c as f64 * s, MARGIN + r as f64 * s],
                    [s, 0.0],
                    [0.0, s],
                    1.0,
                );
            }
        }
    }
    // Frame and internal grid lines.
    for r in 0..=grid.rows {
        let y = MARGIN + r as f64 * s;
        doc.prims.push(Prim::Line {
            x1: MARGIN,
            y1: y,
            x2: MARGIN + grid.cols as f64 * s,
            y2: y,
            stroke: INK.to_string(),
            stroke_width: style.stroke_width,
        });
    }
    for c in 0..=grid.cols {
        let x = MARGIN + c as f64 * s;
        doc.prims.push(Prim::Line {
            x1: x,
            y1: MARGIN,
            x2: x,
            y2: MARGIN + grid.rows as f64 * s,
            stroke: INK.to_string(),
            stroke_width: style.stroke_width,
        });
    }
    if let Some(corner) = grid.marker {
        let m = s / 3.0;
        let (x, y) = match corner {
            Corner::TopLeft => (MARGIN - m / 2.0, MARGIN - m / 2.0),
            Corner::TopRight => (MARGIN + grid.cols as f64 * s - m / 2.0, MARGIN - m / 2.0),
            Corner::BottomLeft => (MARGIN - m / 2.0, MARGIN + grid.rows as f64 * s - m / 2.0),
            Corner::BottomRight => (
                MARGIN + grid.cols as f64 * s - m / 2.0,
                MARGIN + grid.rows as f64 * s - m / 2.0,
            ),
        };
        doc.prims.push(Prim::Rect {
            x,
            y,
            w: m,
            h: m,
            fill: Some(style.marker_color().to_string()),
            stroke: None,
            stroke_width: 0.0,
        });
    }
    doc
}

// ---------------------------------------------------------------------------
// Isometric rendering.

const ISO_COS: f64 = 0.8660254037844387; // cos 30
const ISO_SIN: f64 = 0.5; // sin 30

fn iso_project(p: [f64; 3], unit: f64) -> [f64; 2] {
    [
        (p[0] - p[1]) * ISO_COS * unit,
        ((p[0] + p[1]) * ISO_SIN - p[2]) * unit,
    ]
}

/// One cube's three visible faces, emitted only where no neighbour blocks
/// the outward normal: +z (top), +y (screen-left), +x (screen-right).
fn iso_cube_faces(c: CellCoord) -> [(char, [[f64; 3]; 4]); 3] {
    let (x, y, z) = (c.x as f64, c.y as f64, c.z as f64);
    [
        (
            'z',
            [
                [x, y, z + 1.0],
                [x + 1.0, y, z + 1.0],
                [x + 1.0, y + 1.0, z + 1.0],
                [x, y + 1.0, z + 1.0],
            ],
        ),
        (
            'y',
            [
                [x, y + 1.0, z],
                [x + 1.0, y + 1.0, z],
                [x + 1.0, y + 1.0, z + 1.0],
                [x, y + 1.0, z + 1.0],
            ],
        ),
        (
            'x',
            [
                [x + 1.0, y, z],
                [x + 1.0, y + 1.0, z],
                [x + 1.0, y + 1.0, z + 1.0],
                [x + 1.0, y, z + 1.0],
            ],
        ),
    ]
}

fn iso_doc_from_cells(
    cells: &[(CellCoord, String)],
    occupied: impl Fn(isize, isize, isize) -> bool,
    style: &RenderStyle,
) -> VecDoc {
    let unit = style.cell_px;
    let mut sorted: Vec<&(CellCoord, String)> = cells.iter().collect();
    sorted.sort_by_key(|(c, _)| (c.x + c.y + c.z, c.z, c.y, c.x));

    let mut polys: Vec<(Vec<[f64; 2]>, String)> = Vec::new();
    for (c, base) in sorted {
        for (axis, quad) in iso_cube_faces(*c) {
            let (dx, dy, dz, factor) = match axis {
                'z' => (0, 0, 1, style.shade_top),
                'y' => (0, 1, 0, style.shade_left),
                _ => (1, 0, 0, style.shade_right),
            };
            if occupied(c.x as isize + dx, c.y as isize + dy, c.z as isize + dz) {
                continue;
            }
            let pts: Vec<[f64; 2]> = quad.iter().map(|&p| iso_project(p, unit)).collect();
            polys.push((pts, shade(base, factor)));
        }
    }
    // Normalize into the viewport.
    let mut lo = [f64::INFINITY; 2];
    let mut hi = [f64::NEG_INFINITY; 2];
    for (pts, _) in &polys {
        for p in pts {
            lo[0] = lo[0].min(p[0]);
            lo[1] = lo[1].min(p[1]);
            hi[0] = hi[0].max(p[0]);
            hi[1] = hi[1].max(p[1]);
        }
    }
    if polys.is_empty() {
        lo = [0.0, 0.0];
        hi = [unit, unit];
    }
    let mut doc = VecDoc::new(hi[0] - lo[0] + 2.0 * MARGIN, hi[1] - lo[1] + 2.0 * MARGIN);
    for (pts, fill) in polys {
        doc.prims.push(Prim::Polygon {
            points: pts
                .into_iter()
                .map(|p| [p[0] - lo[0] + MARGIN, p[1] - lo[1] + MARGIN])
                .collect(),
            fill: Some(fill),
            stroke: Some(INK.to_string()),
            stroke_width: style.stroke_width,
        });
    }
    doc
}

/// Isometric view of a cube stack; marked cubes are filled red.
pub fn render_isometric(grid: &OccupancyGrid, marks: &[CellCoord], style: &RenderStyle) -> VecDoc {
    let cells: Vec<(CellCoord, String)> = grid
        .cells()
        .into_iter()
        .map(|c| {
            let color = if marks.contains(&c) { style.marker_color() } else { CUBE_BASE };
            (c, color.to_string())
        })
        .collect();
    iso_doc_from_cells(&cells, |x, y, z| grid.get_opt(x, y, z), style)
}

/// Isometric view of a colored block scene.
pub fn render_isometric_scene(scene: &BlockScene, style: &RenderStyle) -> VecDoc {
    let cells: Vec<(CellCoord, String)> = scene
        .cubes()
        .iter()
        .map(|(c, col)| (*c, style.face_color(*col).to_string()))
        .collect();
    let occupied = |x: isize, y: isize, z: isize| -> bool {
        x >= 0
            && y >= 0
            && z >= 0
            && scene.occupied(CellCoord::new(x as usize, y as usize, z as usize))
    };
    iso_doc_from_cells(&cells, occupied, style)
}

/// Nearest occupied cell along the viewing ray of `view` hitting silhouette
/// cell (row, col); used to decide whether a mark shows.
fn frontmost(grid: &OccupancyGrid, view: ViewAxis, row: usize, col: usize) -> Option<CellCoord> {
    let (xs, ys, _zs) = grid.dims;
    match view {
        ViewAxis::Front => (0..ys)
            .map(|y| CellCoord::new(col, y, row))
            .find(|&c| grid.get(c)),
        ViewAxis::Top => (0..grid.dims.2)
            .rev()
            .map(|z| CellCoord::new(col, row, z))
            .find(|&c| grid.get(c)),
        ViewAxis::Left => (0..xs)
            .map(|x| CellCoord::new(x, col, row))
            .find(|&c| grid.get(c)),
        ViewAxis::Right => (0..xs)
            .rev()
            .map(|x| CellCoord::new(x, ys - 1 - col, row))
            .find(|&c| grid.get(c)),
    }
}

/// Orthographic silhouette views with internal grid lines; marked cubes are
/// filled red where they are the frontmost cube of their cell. Errors when a
/// mark is invisible from every requested view.
pub fn render_views(
    grid: &OccupancyGrid,
    which: &[ViewAxis],
    marks: &[CellCoord],
    style: &RenderStyle,
) -> Result<Vec<(ViewAxis, VecDoc)>, RenderError> {
    for &m in marks {
        let visible = which.iter().any(|&v| {
            let s = crate::voxel::project_silhouette(grid, v);
            (0..s.rows()).any(|r| {
                (0..s.cols()).any(|c| s.grid[r][c] && frontmost(grid, v, r, c) == Some(m))
            })
        });
        if !visible {
            return Err(RenderError::MarkNotVisible(m.x, m.y, m.z));
        }
    }
    let mut out = Vec::new();
    for &view in which {
        let sil = crate::voxel::project_silhouette(grid, view);
        let s = style.cell_px;
        let rows = sil.rows();
        let cols = sil.cols();
        let mut doc = VecDoc::new(cols as f64 * s + 2.0 * MARGIN, rows as f64 * s + 2.0 * MARGIN);
        for r in 0..rows {
            for c in 0..cols {
                if !sil.grid[r][c] {
                    continue;
                }
                // Side views draw z upward: row r sits at height r.
                let (px, py) = match view {
                    ViewAxis::Top => (c as f64, r as f64),
                    _ => (c as f64, (rows - 1 - r) as f64),
                };
                let marked =
                    frontmost(grid, view, r, c).is_some_and(|f| marks.contains(&f));
                let fill = if marked { style.marker_color().to_string() } else { CUBE_BASE.to_string() };
                doc.prims.push(Prim::Rect {
                    x: MARGIN + px * s,
                    y: MARGIN + py * s,
                    w: s,
                    h: s,
                    fill: Some(fill),
                    stroke: Some(INK.to_string()),
                    stroke_width: style.stroke_width,
                });
            }
        }
        out.push((view, doc));
    }
    Ok(out)
}

/// Engineering-style orthographic drawing of a voxel part: outline plus
/// internal lines wherever the viewing depth steps between adjacent filled
/// cells. This is the Level-1 three-view input format.
pub fn render_depth_view(grid: &OccupancyGrid, view: ViewAxis, style: &RenderStyle) -> VecDoc {
    let sil = crate::voxel::project_silhouette(grid, view);
    let rows = sil.rows();
    let cols = sil.cols();
    let depth = |r: usize, c: usize| -> Option<usize> {
        frontmost(grid, view, r, c).map(|cc| match view {
            ViewAxis::Front => cc.y,
            ViewAxis::Top => grid.dims.2 - 1 - cc.z,
            ViewAxis::Left => cc.x,
            ViewAxis::Right => grid.dims.0 - 1 - cc.x,
        })
    };
    let s = style.cell_px;
    let mut doc = VecDoc::new(cols as f64 * s + 2.0 * MARGIN, rows as f64 * s + 2.0 * MARGIN);
    // Screen position of silhouette cell (r, c).
    let pos = |r: usize, c: usize| -> (f64, f64) {
        match view {
            ViewAxis::Top => (MARGIN + c as f64 * s, MARGIN + r as f64 * s),
            _ => (MARGIN + c as f64 * s, MARGIN + (rows - 1 - r) as f64 * s),
        }
    };
    let filled = |r: isize, c: isize| -> bool {
        r >= 0 && c >= 0 && (r as usize) < rows && (c as usize) < cols && sil.grid[r as usize][c as usize]
    };
    let mut lines: Vec<(f64, f64, f64, f64)> = Vec::new();
    for r in 0..rows {
        for c in 0..cols {
            if !sil.grid[r][c] {
                continue;
            }
            let (x, y) = pos(r, c);
            let d = depth(r, c);
            // Four cell edges: draw when the neighbour is empty (outline) or
            // at a different viewing depth (internal step edge).
            let neighbours: [((isize, isize), (f64, f64, f64, f64)); 4] = [
                ((r as isize, c as isize - 1), (x, y, x, y + s)),
                ((r as isize, c as isize + 1), (x + s, y, x + s, y + s)),
                // Vertical neighbours swap with the screen flip of side views.
                ((r as isize + 1, c as isize), match view {
                    ViewAxis::Top => (x, y + s, x + s, y + s),
                    _ => (x, y, x + s, y),
                }),
                ((r as isize - 1, c as isize), match view {
                    ViewAxis::Top => (x, y, x + s, y),
                    _ => (x, y + s, x + s, y + s),
                }),
            ];
            for ((nr, nc), seg) in neighbours {
                let boundary = !filled(nr, nc);
                let step = !boundary && depth(nr as usize, nc as usize) != d;
                if boundary || step {
                    lines.push(seg);
                }
            }
        }
    }
    lines.sort_by(|a, b| a.partial_cmp(b).unwrap());
    lines.dedup();
    for (x1, y1, x2, y2) in lines {
        doc.prims.push(Prim::Line {
            x1,
            y1,
            x2,
            y2,
            stroke: INK.to_string(),
            stroke_width: style.stroke_width,
        });
    }
    doc
}

// ---------------------------------------------------------------------------
// Net, corner view, section, arrows, paper.

/// Net drawing: six placed faces with their folded-in rotations applied on
/// top of the face map's own pattern rotations.
pub fn render_net(layout: &NetLayout, faces: &FaceMap, style: &RenderStyle) -> VecDoc {
    let s = style.cell_px;
    let max_r = layout.placement.iter().map(|(_, c)| c.0).max().unwrap_or(0);
    let max_c = layout.placement.iter().map(|(_, c)| c.1).max().unwrap_or(0);
    let mut doc = VecDoc::new(
        (max_c + 1) as f64 * s + 2.0 * MARGIN,
        (max_r + 1) as f64 * s + 2.0 * MARGIN,
    );
    for (face, (r, c)) in &layout.placement {
        let fm = faces.get(*face);
        let cell = PatternCell {
            pattern: fm.pattern,
            rotation: (fm.rotation + layout.rotation_of(*face)) % 4,
        };
        draw_cell_affine(
            &mut doc,
            cell.canonical(),
            style,
            [MARGIN + *c as f64 * s, MARGIN + *r as f64 * s],
            [s, 0.0],
            [0.0, s],
            1.0,
        );
    }
    doc
}

/// Trimetric corner view: three visible faces drawn as the top and two side
/// parallelograms of the canonical isometric cube.
pub fn render_corner_view(cube: &CubeModel, corner: CubeCorner, style: &RenderStyle) -> VecDoc {
    let view = corner_view(cube, corner);
    let unit = style.cell_px * 1.6;
    let face_center = |f: FaceName| -> [f64; 3] {
        let n = f.normal();
        [
            0.5 + 0.5 * n[0] as f64,
            0.5 + 0.5 * n[1] as f64,
            0.5 + 0.5 * n[2] as f64,
        ]
    };
    let mut polys: Vec<(PatternCell, [f64; 3], [f64; 3], [f64; 3], f64)> = Vec::new();
    for (slot, (slot_face, slot_up, slot_right)) in view.slots.iter().zip(slot_frames()) {
        let factor = match slot_face {
            FaceName::Top => style.shade_top,
            FaceName::Back => style.shade_left,
            _ => style.shade_right,
        };
        let cell = PatternCell { pattern: slot.pattern, rotation: slot.apparent_turns }.canonical();
        let up = [slot_up[0] as f64, slot_up[1] as f64, slot_up[2] as f64];
        let right = [slot_right[0] as f64, slot_right[1] as f64, slot_right[2] as f64];
        polys.push((cell, face_center(slot_face), right, up, factor));
    }
    // Project: cell-local (u, v) -> center + (u - 1/2) right - (v - 1/2) up.
    let mut twod: Vec<(PatternCell, [f64; 2], [f64; 2], [f64; 2], f64)> = Vec::new();
    let mut lo = [f64::INFINITY; 2];
    let mut hi = [f64::NEG_INFINITY; 2];
    for (cell, center, right, up, factor) in polys {
        let map3 = |u: f64, v: f64| -> [f64; 3] {
            [
                center[0] + (u - 0.5) * right[0] - (v - 0.5) * up[0],
                center[1] + (u - 0.5) * right[1] - (v - 0.5) * up[1],
                center[2] + (u - 0.5) * right[2] - (v - 0.5) * up[2],
            ]
        };
        let o = iso_project(map3(0.0, 0.0), unit);
        let px = iso_project(map3(1.0, 0.0), unit);
        let py = iso_project(map3(0.0, 1.0), unit);
        let ex = [px[0] - o[0], px[1] - o[1]];
        let ey = [py[0] - o[0], py[1] - o[1]];
        for corner_pt in [[0.0, 0.0], [1.0, 0.0], [0.0, 1.0], [1.0, 1.0]] {
            let p = [
                o[0] + corner_pt[0] * ex[0] + corner_pt[1] * ey[0],
                o[1] + corner_pt[0] * ex[1] + corner_pt[1] * ey[1],
            ];
            lo[0] = lo[0].min(p[0]);
            lo[1] = lo[1].min(p[1]);
            hi[0] = hi[0].max(p[0]);
            hi[1] = hi[1].max(p[1]);
        }
        twod.push((cell, o, ex, ey, factor));
    }
    let mut doc = VecDoc::new(hi[0] - lo[0] + 2.0 * MARGIN, hi[1] - lo[1] + 2.0 * MARGIN);
    for (cell, o, ex, ey, factor) in twod {
        draw_cell_affine(
            &mut doc,
            cell,
            style,
            [o[0] - lo[0] + MARGIN, o[1] - lo[1] + MARGIN],
            ex,
            ey,
            factor,
        );
    }
    doc
}

/// Isometric wireframe of a composite-solid mesh: feature edges (dihedral
/// angle above threshold) plus silhouette edges for the fixed camera. The
/// 64-gon facets of circular profiles stay below the threshold, so
/// cylinders draw as smooth profiles with rim circles.
pub fn render_mesh_iso(mesh: &crate::solids::Mesh, style: &RenderStyle) -> VecDoc {
    let unit = style.cell_px;
    let normal = |t: &[usize; 3]| -> [f64; 3] {
        let [a, b, c] = [mesh.vertices[t[0]], mesh.vertices[t[1]], mesh.vertices[t[2]]];
        let u = [b[0] - a[0], b[1] - a[1], b[2] - a[2]];
        let v = [c[0] - a[0], c[1] - a[1], c[2] - a[2]];
        let n = [
            u[1] * v[2] - u[2] * v[1],
            u[2] * v[0] - u[0] * v[2],
            u[0] * v[1] - u[1] * v[0],
        ];
        let l = (n[0] * n[0] + n[1] * n[1] + n[2] * n[2]).sqrt().max(1e-12);
        [n[0] / l, n[1] / l, n[2] / l]
    };
    let q = 1e-6;
    let key = |p: [f64; 3]| -> (i64, i64, i64) {
        ((p[0] / q).round() as i64, (p[1] / q).round() as i64, (p[2] / q).round() as i64)
    };
    let mut edges: std::collections::HashMap<
        ((i64, i64, i64), (i64, i64, i64)),
        (Vec<[f64; 3]>, [f64; 3], [f64; 3]),
    > = std::collections::HashMap::new();
    for t in &mesh.triangles {
        let n = normal(t);
        for k in 0..3 {
            let (a, b) = (mesh.vertices[t[k]], mesh.vertices[t[(k + 1) % 3]]);
            let (ka, kb) = (key(a), key(b));
            let ek = if ka <= kb { (ka, kb) } else { (kb, ka) };
            edges
                .entry(ek)
                .and_modify(|(ns, _, _)| ns.push(n))
                .or_insert((vec![n], a, b));
        }
    }
    // Toward-camera direction for the (+,+,+) isometric viewpoint.
    let view = [1.0, 1.0, 1.0];
    let facing = |n: [f64; 3]| n[0] * view[0] + n[1] * view[1] + n[2] * view[2] > 0.0;
    let mut segs: Vec<([f64; 2], [f64; 2])> = Vec::new();
    for (_, (normals, a, b)) in edges {
        let draw = match normals.len() {
            1 => true,
            _ => {
                let feature = normals.windows(2).any(|w| {
                    let d = w[0][0] * w[1][0] + w[0][1] * w[1][1] + w[0][2] * w[1][2];
                    d < 0.94
                });
                let silhouette = {
                    let f: Vec<bool> = normals.iter().map(|&n| facing(n)).collect();
                    f.iter().any(|&x| x) && f.iter().any(|&x| !x)
                };
                feature || silhouette
            }
        };
        if draw {
            segs.push((iso_project(a, unit), iso_project(b, unit)));
        }
    }
    let mut lo = [f64::INFINITY; 2];
    let mut hi = [f64::NEG_INFINITY; 2];
    for (a, b) in &segs {
        for p in [a, b] {
            lo[0] = lo[0].min(p[0]);
            lo[1] = lo[1].min(p[1]);
            hi[0] = hi[0].max(p[0]);
            hi[1] = hi[1].max(p[1]);
        }
    }
    if segs.is_empty() {
        lo = [0.0, 0.0];
        hi = [unit, unit];
    }
    let mut doc = VecDoc::new(hi[0] - lo[0] + 2.0 * MARGIN, hi[1] - lo[1] + 2.0 * MARGIN);
    segs.sort_by(|a, b| a.partial_cmp(b).unwrap());
    for (a, b) in segs {
        doc.prims.push(Prim::Line {
            x1: a[0] - lo[0] + MARGIN,
            y1: a[1] - lo[1] + MARGIN,
            x2: b[0] - lo[0] + MARGIN,
            y2: b[1] - lo[1] + MARGIN,
            stroke: INK.to_string(),
            stroke_width: style.stroke_width * 0.8,
        });
    }
    doc
}

/// Cross-section polygons drawn filled in the slicing plane's frame.
pub fn render_section(section: &SectionPolygons, style: &RenderStyle) -> VecDoc {
    let scale = style.cell_px;
    let mut lo = [f64::INFINITY; 2];
    let mut hi = [f64::NEG_INFINITY; 2];
    for lp in &section.loops {
        for p in lp {
            lo[0] = lo[0].min(p[0]);
            lo[1] = lo[1].min(p[1]);
            hi[0] = hi[0].max(p[0]);
            hi[1] = hi[1].max(p[1]);
        }
    }
    if section.loops.is_empty() {
        lo = [0.0, 0.0];
        hi = [1.0, 1.0];
    }
    let mut doc = VecDoc::new(
        (hi[0] - lo[0]) * scale + 2.0 * MARGIN,
        (hi[1] - lo[1]) * scale + 2.0 * MARGIN,
    );
    for lp in &section.loops {
        // Section frames have v upward; the document's y runs down.
        let pts: Vec<[f64; 2]> = lp[..lp.len() - 1]
            .iter()
            .map(|p| {
                [
                    MARGIN + (p[0] - lo[0]) * scale,
                    MARGIN + (hi[1] - p[1]) * scale,
                ]
            })
            .collect();
        doc.prims.push(Prim::Polygon {
            points: pts,
            fill: Some("#9db8d9".to_string()),
            stroke: Some(INK.to_string()),
            stroke_width: style.stroke_width,
        });
    }
    doc
}

fn draw_arrow(doc: &mut VecDoc, cx: f64, cy: f64, size: f64, orient: u8, fill: &str) {
    // Triangle pointing "up" (orientation 0 is (0,1): screen up) rotated by
    // the orientation; a small tail dot marks the back.
    let pts_up: [[f64; 2]; 3] = [[0.0, -0.38], [0.3, 0.3], [-0.3, 0.3]];
    let rot = |p: [f64; 2], k: u8| -> [f64; 2] {
        let mut q = p;
        for _ in 0..k % 4 {
            q = [q[1], -q[0]];
        }
        q
    };
    // Orientation ids index (0,1)=up, (1,0)=right, (0,-1)=down, (-1,0)=left
    // in grid coordinates with y up; on screen y runs down, so up is -y.
    let k = orient % 4;
    let points = pts_up
        .iter()
        .map(|&p| {
            let q = rot(p, k);
            [cx + q[0] * size, cy + q[1] * size]
        })
        .collect();
    doc.prims.push(Prim::Polygon {
        points,
        fill: Some(fill.to_string()),
        stroke: Some(INK.to_string()),
        stroke_width: 1.0,
    });
}

fn grid_frame(doc: &mut VecDoc, x0: f64, y0: f64, cols: usize, rows: usize, s: f64, width: f64) {
    for r in 0..=rows {
        doc.prims.push(Prim::Line {
            x1: x0,
            y1: y0 + r as f64 * s,
            x2: x0 + cols as f64 * s,
            y2: y0 + r as f64 * s,
            stroke: INK.to_string(),
            stroke_width: width,
        });
    }
    for c in 0..=cols {
        doc.prims.push(Prim::Line {
            x1: x0 + c as f64 * s,
            y1: y0,
            x2: x0 + c as f64 * s,
            y2: y0 + rows as f64 * s,
            stroke: INK.to_string(),
            stroke_width: width,
        });
    }
}

/// Multi-arrow map: oriented triangles colored by id on a grid.
pub fn render_arrow_map(state: &ArrowMapState, style: &RenderStyle) -> VecDoc {
    let s = style.cell_px;
    let mut doc = VecDoc::new(
        state.width as f64 * s + 2.0 * MARGIN,
        state.height as f64 * s + 2.0 * MARGIN,
    );
    grid_frame(&mut doc, MARGIN, MARGIN, state.width, state.height, s, style.stroke_width);
    for y in 0..state.height {
        for x in 0..state.width {
            if let Some((color, orient)) = state.get((x as i32, y as i32)) {
                // Grid y points up; the document's y runs down.
                let cx = MARGIN + (x as f64 + 0.5) * s;
                let cy = MARGIN + ((state.height - 1 - y) as f64 + 0.5) * s;
                draw_arrow(&mut doc, cx, cy, s * 0.8, orient, style.face_color(color));
            }
        }
    }
    doc
}

/// Single arrow on its grid.
pub fn render_single_arrow(state: &SingleArrowState, style: &RenderStyle) -> VecDoc {
    let s = style.cell_px;
    let mut doc = VecDoc::new(
        state.width as f64 * s + 2.0 * MARGIN,
        state.height as f64 * s + 2.0 * MARGIN,
    );
    grid_frame(&mut doc, MARGIN, MARGIN, state.width, state.height, s, style.stroke_width);
    let cx = MARGIN + (state.pos.0 as f64 + 0.5) * s;
    let cy = MARGIN + ((state.height as i32 - 1 - state.pos.1) as f64 + 0.5) * s;
    draw_arrow(&mut doc, cx, cy, s * 0.8, state.orient, style.face_color(0));
    doc
}

/// Two labelled panels side by side; used for start/end reference images.
pub fn side_by_side(left: &VecDoc, right: &VecDoc, left_label: &str, right_label: &str) -> VecDoc {
    let label_h = 22.0;
    let w = left.width + right.width + MARGIN;
    let h = left.height.max(right.height) + label_h;
    let mut doc = VecDoc::new(w, h);
    let mut add = |src: &VecDoc, dx: f64, label: &str| {
        doc.prims.push(Prim::Text {
            x: dx + 4.0,
            y: 14.0,
            size: 13.0,
            content: label.to_string(),
            fill: INK.to_string(),
        });
        for p in &src.prims {
            doc.prims.push(offset_prim(p, dx, label_h));
        }
    };
    add(left, 0.0, left_label);
    add(right, left.width + MARGIN, right_label);
    doc
}

fn offset_prim(p: &Prim, dx: f64, dy: f64) -> Prim {
    match p {
        Prim::Rect { x, y, w, h, fill, stroke, stroke_width } => Prim::Rect {
            x: x + dx,
            y: y + dy,
            w: *w,
            h: *h,
            fill: fill.clone(),
            stroke: stroke.clone(),
            stroke_width: *stroke_width,
        },
        Prim::Polygon { points, fill, stroke, stroke_width } => Prim::Polygon {
            points: points.iter().map(|q| [q[0] + dx, q[1] + dy]).collect(),
            fill: fill.clone(),
            stroke: stroke.clone(),
            stroke_width: *stroke_width,
        },
        Prim::Line { x1, y1, x2, y2, stroke, stroke_width } => Prim::Line {
            x1: x1 + dx,
            y1: y1 + dy,
            x2: x2 + dx,
            y2: y2 + dy,
            stroke: stroke.clone(),
            stroke_width: *stroke_width,
        },
        Prim::Circle { cx, cy, r, fill } => {
            Prim::Circle { cx: cx + dx, cy: cy + dy, r: *r, fill: fill.clone() }
        }
        Prim::Text { x, y, size, content, fill } => Prim::Text {
            x: x + dx,
            y: y + dy,
            size: *size,
            content: content.clone(),
            fill: fill.clone(),
        },
    }
}

/// Paper sheet: original outline, folded-away cells shaded, holes as black
/// dots, the latest crease drawn red.
pub fn render_paper(state: &PaperState, style: &RenderStyle) -> VecDoc {
    let s = style.cell_px;
    let mut doc = VecDoc::new(
        state.original_cols as f64 * s + 2.0 * MARGIN,
        state.original_rows as f64 * s + 2.0 * MARGIN,
    );
    for r in 0..state.original_rows {
        for c in 0..state.original_cols {
            let (x, y) = (MARGIN + c as f64 * s, MARGIN + r as f64 * s);
            match state.cell_state(r, c) {
                None => doc.prims.push(Prim::Rect {
                    x,
                    y,
                    w: s,
                    h: s,
                    fill: Some(AWAY_GRAY.to_string()),
                    stroke: Some("#a0a0a0".to_string()),
                    stroke_width: 0.5,
                }),
                Some(hole) => {
                    doc.prims.push(Prim::Rect {
                        x,
                        y,
                        w: s,
                        h: s,
                        fill: Some(PAPER_BG.to_string()),
                        stroke: Some(INK.to_string()),
                        stroke_width: 0.8,
                    });
                    if hole {
                        doc.prims.push(Prim::Circle {
                            cx: x + s / 2.0,
                            cy: y + s / 2.0,
                            r: s * 0.22,
                            fill: INK.to_string(),
                        });
                    }
                }
            }
        }
    }
    if let Some(((r1, c1), (r2, c2))) = state.last_crease() {
        doc.prims.push(Prim::Line {
            x1: MARGIN + c1 * s,
            y1: MARGIN + r1 * s,
            x2: MARGIN + c2 * s,
            y2: MARGIN + r2 * s,
            stroke: style.marker_color().to_string(),
            stroke_width: style.stroke_width * 1.4,
        });
    }
    doc
}

/// Plain hole matrix at original dims (the unfolded answer/option format).
pub fn render_hole_matrix(holes: &[Vec<bool>], style: &RenderStyle) -> VecDoc {
    let rows = holes.len();
    let cols = holes.first().map_or(0, |r| r.len());
    let s = style.cell_px;
    let mut doc = VecDoc::new(cols as f64 * s + 2.0 * MARGIN, rows as f64 * s + 2.0 * MARGIN);
    for (r, row) in holes.iter().enumerate() {
        for (c, &hole) in row.iter().enumerate() {
            let (x, y) = (MARGIN + c as f64 * s, MARGIN + r as f64 * s);
            doc.prims.push(Prim::Rect {
                x,
                y,
                w: s,
                h: s,
                fill: Some(PAPER_BG.to_string()),
                stroke: Some(INK.to_string()),
                stroke_width: 0.8,
            });
            if hole {
                doc.prims.push(Prim::Circle {
                    cx: x + s / 2.0,
                    cy: y + s / 2.0,
                    r: s * 0.22,
                    fill: INK.to_string(),
                });
            }
        }
    }
    doc
}

// ---------------------------------------------------------------------------
// Rasterizer: scanline fill with 4x supersampling, PNG output.

const SS: usize = 4;

fn parse_hex(c: &str) -> [u8; 3] {
    let v = u32::from_str_radix(c.trim_start_matches('#'), 16).unwrap_or(0);
    [(v >> 16) as u8, (v >> 8) as u8, v as u8]
}

struct Raster {
    w: usize,
    h: usize,
    px: Vec<u8>,
}

impl Raster {
    fn fill_poly(&mut self, pts: &[[f64; 2]], color: [u8; 3]) {
        if pts.len() < 3 {
            return;
        }
        let y_min = pts.iter().map(|p| p[1]).fold(f64::INFINITY, f64::min).floor().max(0.0) as usize;
        let y_max = pts
            .iter()
            .map(|p| p[1])
            .fold(f64::NEG_INFINITY, f64::max)
            .ceil()
            .min(self.h as f64) as usize;
        for y in y_min..y_max {
            let yc = y as f64 + 0.5;
            let mut xs: Vec<f64> = Vec::new();
            for i in 0..pts.len() {
                let (a, b) = (pts[i], pts[(i + 1) % pts.len()]);
                if (a[1] > yc) != (b[1] > yc) {
                    xs.push(a[0] + (yc - a[1]) / (b[1] - a[1]) * (b[0] - a[0]));
                }
            }
            xs.sort_by(|p, q| p.partial_cmp(q).unwrap());
            for pair in xs.chunks(2) {
                if pair.len() < 2 {
                    continue;
                }
                let x0 = pair[0].max(0.0).round() as usize;
                let x1 = pair[1].min(self.w as f64).round() as usize;
                for x in x0..x1 {
                    let i = (y * self.w + x) * 3;
                    self.px[i..i + 3].copy_from_slice(&color);
                }
            }
        }
    }

    fn fill_rect(&mut self, x: f64, y: f64, w: f64, h: f64, color: [u8; 3]) {
        self.fill_poly(&[[x, y], [x + w, y], [x + w, y + h], [x, y + h]], color);
    }

    fn stroke_line(&mut self, x1: f64, y1: f64, x2: f64, y2: f64, width: f64, color: [u8; 3]) {
        let (dx, dy) = (x2 - x1, y2 - y1);
        let len = (dx * dx + dy * dy).sqrt();
        if len < 1e-12 {
            return;
        }
        let (nx, ny) = (-dy / len * width / 2.0, dx / len * width / 2.0);
        self.fill_poly(
            &[
                [x1 + nx, y1 + ny],
                [x2 + nx, y2 + ny],
                [x2 - nx, y2 - ny],
                [x1 - nx, y1 - ny],
            ],
            color,
        );
    }

    fn fill_circle(&mut self, cx: f64, cy: f64, r: f64, color: [u8; 3]) {
        let y_min = (cy - r).floor().max(0.0) as usize;
        let y_max = (cy + r).ceil().min(self.h as f64) as usize;
        for y in y_min..y_max {
            let yc = y as f64 + 0.5;
            let d = r * r - (yc - cy) * (yc - cy);
            if d <= 0.0 {
                continue;
            }
            let half = d.sqrt();
            let x0 = (cx - half).max(0.0).round() as usize;
            let x1 = (cx + half).min(self.w as f64).round() as usize;
            for x in x0..x1 {
                let i = (y * self.w + x) * 3;
                self.px[i..i + 3].copy_from_slice(&color);
            }
        }
    }
}

// 5x7 bitmap font rows for the uppercase set the renderer emits.
fn font_rows(ch: char) -> [u8; 7] {
    match ch {
        'A' => [0x0e, 0x11, 0x11, 0x1f, 0x11, 0x11, 0x11],
        'B' => [0x1e, 0x11, 0x11, 0x1e, 0x11, 0x11, 0x1e],
        'C' => [0x0e, 0x11, 0x10, 0x10, 0x10, 0x11, 0x0e],
        'D' => [0x1e, 0x11, 0x11, 0x11, 0x11, 0x11, 0x1e],
        'E' => [0x1f, 0x10, 0x10, 0x1e, 0x10, 0x10, 0x1f],
        'F' => [0x1f, 0x10, 0x10, 0x1e, 0x10, 0x10, 0x10],
        'G' => [0x0e, 0x11, 0x10, 0x17, 0x11, 0x11, 0x0f],
        'H' => [0x11, 0x11, 0x11, 0x1f, 0x11, 0x11, 0x11],
        'I' => [0x0e, 0x04, 0x04, 0x04, 0x04, 0x04, 0x0e],
        'J' => [0x07, 0x02, 0x02, 0x02, 0x02, 0x12, 0x0c],
        'K' => [0x11, 0x12, 0x14, 0x18, 0x14, 0x12, 0x11],
        'L' => [0x10, 0x10, 0x10, 0x10, 0x10, 0x10, 0x1f],
        'M' => [0x11, 0x1b, 0x15, 0x15, 0x11, 0x11, 0x11],
        'N' => [0x11, 0x19, 0x15, 0x13, 0x11, 0x11, 0x11],
        'O' => [0x0e, 0x11, 0x11, 0x11, 0x11, 0x11, 0x0e],
        'P' => [0x1e, 0x11, 0x11, 0x1e, 0x10, 0x10, 0x10],
        'Q' => [0x0e, 0x11, 0x11, 0x11, 0x15, 0x12, 0x0d],
        'R' => [0x1e, 0x11, 0x11, 0x1e, 0x14, 0x12, 0x11],
        'S' => [0x0f, 0x10, 0x10, 0x0e, 0x01, 0x01, 0x1e],
        'T' => [0x1f, 0x04, 0x04, 0x04, 0x04, 0x04, 0x04],
        'U' => [0x11, 0x11, 0x11, 0x11, 0x11, 0x11, 0x0e],
        'V' => [0x11, 0x11, 0x11, 0x11, 0x11, 0x0a, 0x04],
        'W' => [0x11, 0x11, 0x11, 0x15, 0x15, 0x1b, 0x11],
        'X' => [0x11, 0x0a, 0x04, 0x04, 0x04, 0x0a, 0x11],
        'Y' => [0x11, 0x0a, 0x04, 0x04, 0x04, 0x04, 0x04],
        'Z' => [0x1f, 0x01, 0x02, 0x04, 0x08, 0x10, 0x1f],
        '0' => [0x0e, 0x11, 0x13, 0x15, 0x19, 0x11, 0x0e],
        '1' => [0x04, 0x0c, 0x04, 0x04, 0x04, 0x04, 0x0e],
        '2' => [0x0e, 0x11, 0x01, 0x06, 0x08, 0x10, 0x1f],
        '3' => [0x0e, 0x11, 0x01, 0x06, 0x01, 0x11, 0x0e],
        '4' => [0x02, 0x06, 0x0a, 0x12, 0x1f, 0x02, 0x02],
        '5' => [0x1f, 0x10, 0x1e, 0x01, 0x01, 0x11, 0x0e],
        '6' => [0x06, 0x08, 0x10, 0x1e, 0x11, 0x11, 0x0e],
        '7' => [0x1f, 0x01, 0x02, 0x04, 0x08, 0x08, 0x08],
        '8' => [0x0e, 0x11, 0x11, 0x0e, 0x11, 0x11, 0x0e],
        '9' => [0x0e, 0x11, 0x11, 0x0f, 0x01, 0x02, 0x0c],
        '.' => [0x00, 0x00, 0x00, 0x00, 0x00, 0x0c, 0x0c],
        ',' => [0x00, 0x00, 0x00, 0x00, 0x0c, 0x04, 0x08],
        ':' => [0x00, 0x0c, 0x0c, 0x00, 0x0c, 0x0c, 0x00],
        '-' => [0x00, 0x00, 0x00, 0x1f, 0x00, 0x00, 0x00],
        '+' => [0x00, 0x04, 0x04, 0x1f, 0x04, 0x04, 0x00],
        '(' => [0x02, 0x04, 0x08, 0x08, 0x08, 0x04, 0x02],
        ')' => [0x08, 0x04, 0x02, 0x02, 0x02, 0x04, 0x08],
        '/' => [0x01, 0x01, 0x02, 0x04, 0x08, 0x10, 0x10],
        '?' => [0x0e, 0x11, 0x01, 0x06, 0x04, 0x00, 0x04],
        _ => [0; 7],
    }
}

/// Rasterize a document to 8-bit RGB PNG bytes; deterministic for identical
/// inputs. Only this module's primitive subset is legal.
pub fn rasterize(doc: &VecDoc, width_px: u32) -> Result<Vec<u8>, RenderError> {
    let scale = width_px as f64 / doc.width;
    let height_px = (doc.height * scale).round().max(1.0) as u32;
    let (sw, sh) = ((width_px as usize) * SS, (height_px as usize) * SS);
    let s = scale * SS as f64;
    let mut raster = Raster { w: sw, h: sh, px: vec![255u8; sw * sh * 3] };

    for p in &doc.prims {
        match p {
            Prim::Rect { x, y, w, h, fill, stroke, stroke_width } => {
                if let Some(f) = fill {
                    raster.fill_rect(x * s, y * s, w * s, h * s, parse_hex(f));
                }
                if let Some(st) = stroke {
                    let col = parse_hex(st);
                    let sw2 = stroke_width * s;
                    raster.stroke_line(x * s, y * s, (x + w) * s, y * s, sw2, col);
                    raster.stroke_line((x + w) * s, y * s, (x + w) * s, (y + h) * s, sw2, col);
                    raster.stroke_line((x + w) * s, (y + h) * s, x * s, (y + h) * s, sw2, col);
                    raster.stroke_line(x * s, (y + h) * s, x * s, y * s, sw2, col);
                }
            }
            Prim::Polygon { points, fill, stroke, stroke_width } => {
                let pts: Vec<[f64; 2]> = points.iter().map(|q| [q[0] * s, q[1] * s]).collect();
                if let Some(f) = fill {
                    raster.fill_poly(&pts, parse_hex(f));
                }
                if let Some(st) = stroke {
                    let col = parse_hex(st);
                    for i in 0..pts.len() {
                        let a = pts[i];
                        let b = pts[(i + 1) % pts.len()];
                        raster.stroke_line(a[0], a[1], b[0], b[1], stroke_width * s, col);
                    }
                }
            }
            Prim::Line { x1, y1, x2, y2, stroke, stroke_width } => {
                raster.stroke_line(x1 * s, y1 * s, x2 * s, y2 * s, stroke_width * s, parse_hex(stroke));
            }
            Prim::Circle { cx, cy, r, fill } => {
                raster.fill_circle(cx * s, cy * s, r * s, parse_hex(fill));
            }
            Prim::Text { x, y, size, content, fill } => {
                let col = parse_hex(fill);
                let px_per_dot = size * s / 8.0;
                let mut cursor = x * s;
                let top = y * s - size * s * 0.85;
                for ch in content.to_uppercase().chars() {
                    let rows = font_rows(ch);
                    for (ri, bits) in rows.iter().enumerate() {
                        for ci in 0..5 {
                            if bits >> (4 - ci) & 1 == 1 {
                                raster.fill_rect(
                                    cursor + ci as f64 * px_per_dot,
                                    top + ri as f64 * px_per_dot,
                                    px_per_dot,
                                    px_per_dot,
                                    col,
                                );
                            }
                        }
                    }
                    cursor += 6.0 * px_per_dot;
                }
            }
        }
    }

    // Box-average the supersampled buffer.
    let (w, h) = (width_px as usize, height_px as usize);
    let mut out = vec![0u8; w * h * 3];
    for y in 0..h {
        for x in 0..w {
            let mut acc = [0u32; 3];
            for sy in 0..SS {
                for sx in 0..SS {
                    let i = ((y * SS + sy) * sw + x * SS + sx) * 3;
                    acc[0] += raster.px[i] as u32;
                    acc[1] += raster.px[i + 1] as u32;
                    acc[2] += raster.px[i + 2] as u32;
                }
            }
            let o = (y * w + x) * 3;
            for k in 0..3 {
                out[o + k] = (acc[k] / (SS * SS) as u32) as u8;
            }
        }
    }

    let mut png_bytes = Vec::new();
    {
        let mut encoder = png::Encoder::new(&mut png_bytes, width_px, height_px);
        encoder.set_color(png::ColorType::Rgb);
        encoder.set_depth(png::BitDepth::Eight);
        let mut writer = encoder.write_header().expect("png header");
        writer.write_image_data(&out).expect("png data");
    }
    Ok(png_bytes)
}
