//! Vertically stacked composites of the nine basic solids and planar
//! cross-sections as polygon loop sets.
//!
//! Circular profiles are regular 64-gons throughout, so slicing is one
//! polygon-mesh algorithm. Plane offsets are nudged off mesh vertex
//! coordinates before cutting, which removes tangency degeneracies.

use crate::rng::Rng;
use crate::voxel::Axis;
use serde::{Deserialize, Serialize};
use thiserror::Error;

#[derive(Debug, Error)]
pub enum SolidError {
    #[error("no digest-distinct perturbation found within the attempt budget")]
    PerturbBudgetExhausted,
}

pub const CIRCLE_SEGMENTS: usize = 64;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub enum BaseShape {
    /// Equilateral triangle with the given side length.
    Triangular { side: f64 },
    Rectangular { a: f64, b: f64 },
    Circular { radius: f64 },
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub enum Taper {
    Prism,
    Pyramid,
    /// Top cross-section scaled by `top_scale` in (0, 1).
    Frustum { top_scale: f64 },
}

/// One of the nine basic solids: base shape x taper.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SolidSpec {
    pub base: BaseShape,
    pub taper: Taper,
    pub height: f64,
}

impl SolidSpec {
    fn validate(&self) {
        assert!(self.height > 0.0);
        match self.base {
            BaseShape::Triangular { side } => assert!(side > 0.0),
            BaseShape::Rectangular { a, b } => assert!(a > 0.0 && b > 0.0),
            BaseShape::Circular { radius } => assert!(radius > 0.0),
        }
        if let Taper::Frustum { top_scale } = self.taper {
            assert!(top_scale > 0.0 && top_scale < 1.0);
        }
    }

    pub fn kind_label(&self) -> String {
        let base = match self.base {
            BaseShape::Triangular { .. } => "triangular",
            BaseShape::Rectangular { .. } => "rectangular",
            BaseShape::Circular { .. } => "circular",
        };
        let taper = match self.taper {
            Taper::Prism => "prism",
            Taper::Pyramid => "pyramid",
            Taper::Frustum { .. } => "frustum",
        };
        format!("{base} {taper}")
    }
}

/// Bottom-to-top coaxial stack of 2 or 3 solids, each resting on the one
/// below.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CompositeSolid {
    solids: Vec<SolidSpec>,
}

impl CompositeSolid {
    pub fn new(solids: Vec<SolidSpec>) -> Self {
        assert!(solids.len() == 2 || solids.len() == 3, "composites stack 2 or 3 solids");
        for s in &solids {
            s.validate();
        }
        // Only the top solid may taper to an apex: nothing can rest on one.
        for s in &solids[..solids.len() - 1] {
            assert!(
                !matches!(s.taper, Taper::Pyramid),
                "pyramids are only legal as the topmost solid"
            );
        }
        CompositeSolid { solids }
    }

    pub fn solids(&self) -> &[SolidSpec] {
        &self.solids
    }

    pub fn total_height(&self) -> f64 {
        self.solids.iter().map(|s| s.height).sum()
    }
}

/// Indexed triangle mesh.
#[derive(Debug, Clone, PartialEq)]
pub struct Mesh {
    pub vertices: Vec<[f64; 3]>,
    pub triangles: Vec<[usize; 3]>,
}

impl Mesh {
    pub fn bounds(&self) -> ([f64; 3], [f64; 3]) {
        let mut lo = [f64::INFINITY; 3];
        let mut hi = [f64::NEG_INFINITY; 3];
        for v in &self.vertices {
            for k in 0..3 {
                lo[k] = lo[k].min(v[k]);
                hi[k] = hi[k].max(v[k]);
            }
        }
        (lo, hi)
    }

    pub fn scaled(&self, k: f64) -> Mesh {
        Mesh {
            vertices: self.vertices.iter().map(|v| [v[0] * k, v[1] * k, v[2] * k]).collect(),
            triangles: self.triangles.clone(),
        }
    }

    /// Signed volume by the divergence theorem; positive for outward-wound
    /// watertight meshes.
    pub fn volume(&self) -> f64 {
        let mut v6 = 0.0;
        for t in &self.triangles {
            let [a, b, c] = [self.vertices[t[0]], self.vertices[t[1]], self.vertices[t[2]]];
            v6 += a[0] * (b[1] * c[2] - b[2] * c[1]) - a[1] * (b[0] * c[2] - b[2] * c[0])
                + a[2] * (b[0] * c[1] - b[1] * c[0]);
        }
        v6 / 6.0
    }
}

/// Base profile as a CCW polygon in the z = 0 plane, centered on the axis.
fn profile(shape: BaseShape) -> Vec<[f64; 2]> {
    match shape {
        BaseShape::Triangular { side } => {
            let r = side / 3.0_f64.sqrt();
            (0..3)
                .map(|i| {
                    let ang =
                        std::f64::consts::FRAC_PI_2 + i as f64 * 2.0 * std::f64::consts::PI / 3.0;
                    [r * ang.cos(), r * ang.sin()]
                })
                .collect()
        }
        BaseShape::Rectangular { a, b } => vec![
            [-a / 2.0, -b / 2.0],
            [a / 2.0, -b / 2.0],
            [a / 2.0, b / 2.0],
            [-a / 2.0, b / 2.0],
        ],
        BaseShape::Circular { radius } => (0..CIRCLE_SEGMENTS)
            .map(|i| {
                let ang = i as f64 * 2.0 * std::f64::consts::PI / CIRCLE_SEGMENTS as f64;
                [radius * ang.cos(), radius * ang.sin()]
            })
            .collect(),
    }
}

fn push_ring(mesh: &mut Mesh, ring: &[[f64; 2]], z: f64, scale: f64) -> Vec<usize> {
    ring.iter()
        .map(|p| {
            mesh.vertices.push([p[0] * scale, p[1] * scale, z]);
            mesh.vertices.len() - 1
        })
        .collect()
}

fn cap(mesh: &mut Mesh, ring: &[usize], flip: bool) {
    for i in 1..ring.len() - 1 {
        let t = if flip {
            [ring[0], ring[i + 1], ring[i]]
        } else {
            [ring[0], ring[i], ring[i + 1]]
        };
        mesh.triangles.push(t);
    }
}

/// Watertight triangle mesh of the composite; solid k sits exactly on the
/// top plane of solid k-1, all coaxial on the vertical axis.
pub fn build_composite(composite: &CompositeSolid) -> Mesh {
    let mut mesh = Mesh { vertices: Vec::new(), triangles: Vec::new() };
    let mut z0 = 0.0;
    for spec in composite.solids() {
        let ring = profile(spec.base);
        let z1 = z0 + spec.height;
        let bottom = push_ring(&mut mesh, &ring, z0, 1.0);
        cap(&mut mesh, &bottom, true);
        match spec.taper {
            Taper::Prism | Taper::Frustum { .. } => {
                let s = match spec.taper {
                    Taper::Frustum { top_scale } => top_scale,
                    _ => 1.0,
                };
                let top = push_ring(&mut mesh, &ring, z1, s);
                cap(&mut mesh, &top, false);
                let n = ring.len();
                for i in 0..n {
                    let j = (i + 1) % n;
                    mesh.triangles.push([bottom[i], bottom[j], top[j]]);
                    mesh.triangles.push([bottom[i], top[j], top[i]]);
                }
            }
            Taper::Pyramid => {
                mesh.vertices.push([0.0, 0.0, z1]);
                let apex = mesh.vertices.len() - 1;
                let n = ring.len();
                for i in 0..n {
                    let j = (i + 1) % n;
                    mesh.triangles.push([bottom[i], bottom[j], apex]);
                }
            }
        }
        z0 = z1;
    }
    mesh
}

/// Slicing plane: unit normal plus offset along it.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SlicePlane {
    pub normal: [f64; 3],
    pub offset: f64,
}

impl SlicePlane {
    pub fn axis(axis: Axis, offset: f64) -> SlicePlane {
        let normal = match axis {
            Axis::X => [1.0, 0.0, 0.0],
            Axis::Y => [0.0, 1.0, 0.0],
            Axis::Z => [0.0, 0.0, 1.0],
        };
        SlicePlane { normal, offset }
    }

    /// Axis direction rotated by 45 or 135 degrees toward a second axis,
    /// passing through the given point.
    pub fn oblique(axis: Axis, toward: Axis, degrees_135: bool, through: [f64; 3]) -> SlicePlane {
        assert_ne!(axis, toward);
        let c = std::f64::consts::FRAC_1_SQRT_2;
        let cos = if degrees_135 { -c } else { c };
        let mut normal = [0.0; 3];
        normal[axis_index(axis)] = cos;
        normal[axis_index(toward)] = c;
        let offset = dot3(normal, through);
        SlicePlane { normal, offset }
    }
}

fn axis_index(a: Axis) -> usize {
    match a {
        Axis::X => 0,
        Axis::Y => 1,
        Axis::Z => 2,
    }
}

fn dot3(a: [f64; 3], b: [f64; 3]) -> f64 {
    a[0] * b[0] + a[1] * b[1] + a[2] * b[2]
}

fn cross3(a: [f64; 3], b: [f64; 3]) -> [f64; 3] {
    [
        a[1] * b[2] - a[2] * b[1],
        a[2] * b[0] - a[0] * b[2],
        a[0] * b[1] - a[1] * b[0],
    ]
}

fn norm3(a: [f64; 3]) -> f64 {
    dot3(a, a).sqrt()
}

/// Deterministic in-plane basis; axis-aligned for axis normals.
pub fn plane_basis(normal: [f64; 3]) -> ([f64; 3], [f64; 3]) {
    let n = normal;
    if n[0].abs() > 0.999 {
        return ([0.0, 1.0, 0.0], [0.0, 0.0, 1.0]);
    }
    if n[1].abs() > 0.999 {
        return ([1.0, 0.0, 0.0], [0.0, 0.0, 1.0]);
    }
    if n[2].abs() > 0.999 {
        return ([1.0, 0.0, 0.0], [0.0, 1.0, 0.0]);
    }
    // Oblique: u horizontal, v the in-plane upward direction.
    let mut u = cross3([0.0, 0.0, 1.0], n);
    let lu = norm3(u);
    u = [u[0] / lu, u[1] / lu, u[2] / lu];
    let mut v = cross3(n, u);
    let lv = norm3(v);
    v = [v[0] / lv, v[1] / lv, v[2] / lv];
    (u, v)
}

/// Closed planar polylines in the slicing plane's 2D frame; first vertex
/// repeated at the end of each loop.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SectionPolygons {
    pub loops: Vec<Vec<[f64; 2]>>,
}

impl SectionPolygons {
    pub fn is_empty(&self) -> bool {
        self.loops.is_empty()
    }

    /// Canonical content string, quantized to 1e-4; section equality for
    /// distractor distinctness.
    pub fn digest_key(&self) -> String {
        let mut keys: Vec<String> = self
            .loops
            .iter()
            .map(|lp| {
                let pts: Vec<String> = lp
                    .iter()
                    .map(|p| format!("{},{}", (p[0] * 1e4).round(), (p[1] * 1e4).round()))
                    .collect();
                pts.join(";")
            })
            .collect();
        keys.sort();
        keys.join("|")
    }
}

const VERTEX_EPS_FACTOR: f64 = 1e-7;

/// Exact plane-mesh intersection assembled by edge chaining. The offset is
/// nudged off any vertex coordinate first; an empty list means the plane
/// misses the solid.
pub fn slice(mesh: &Mesh, plane: &SlicePlane) -> SectionPolygons {
    let (lo, hi) = mesh.bounds();
    let extent = (hi[0] - lo[0]).max(hi[1] - lo[1]).max(hi[2] - lo[2]).max(1e-12);
    let nudge = VERTEX_EPS_FACTOR * extent;
    let mut offset = plane.offset;
    for _ in 0..64 {
        let touching = mesh
            .vertices
            .iter()
            .any(|v| (dot3(plane.normal, *v) - offset).abs() < nudge * 0.5);
        if !touching {
            break;
        }
        offset += nudge;
    }

    let dist: Vec<f64> = mesh.vertices.iter().map(|v| dot3(plane.normal, *v) - offset).collect();
    let mut segments: Vec<([f64; 3], [f64; 3])> = Vec::new();
    for t in &mesh.triangles {
        let mut pts: Vec<[f64; 3]> = Vec::new();
        for k in 0..3 {
            let (i, j) = (t[k], t[(k + 1) % 3]);
            let (di, dj) = (dist[i], dist[j]);
            if (di > 0.0) != (dj > 0.0) {
                let f = di / (di - dj);
                let (a, b) = (mesh.vertices[i], mesh.vertices[j]);
                pts.push([
                    a[0] + f * (b[0] - a[0]),
                    a[1] + f * (b[1] - a[1]),
                    a[2] + f * (b[2] - a[2]),
                ]);
            }
        }
        if pts.len() == 2 {
            segments.push((pts[0], pts[1]));
        }
    }

    // Chain segments into loops on a quantized endpoint key.
    let q = 1e-9 * extent.max(1.0);
    let key = |p: [f64; 3]| -> (i64, i64, i64) {
        ((p[0] / q).round() as i64, (p[1] / q).round() as i64, (p[2] / q).round() as i64)
    };
    let mut adj: std::collections::HashMap<(i64, i64, i64), Vec<usize>> =
        std::collections::HashMap::new();
    for (i, (a, b)) in segments.iter().enumerate() {
        adj.entry(key(*a)).or_default().push(i);
        adj.entry(key(*b)).or_default().push(i);
    }
    let (u, v) = plane_basis(plane.normal);
    let mut used = vec![false; segments.len()];
    let mut loops: Vec<Vec<[f64; 2]>> = Vec::new();
    for start in 0..segments.len() {
        if used[start] {
            continue;
        }
        used[start] = true;
        let mut chain3: Vec<[f64; 3]> = vec![segments[start].0, segments[start].1];
        loop {
            let tail = *chain3.last().unwrap();
            if key(tail) == key(chain3[0]) {
                chain3.pop();
                break;
            }
            let Some(candidates) = adj.get(&key(tail)) else {
                break;
            };
            let Some(&next) = candidates.iter().find(|&&i| !used[i]) else {
                break;
            };
            used[next] = true;
            let (a, b) = segments[next];
            chain3.push(if key(a) == key(tail) { b } else { a });
        }
        if chain3.len() >= 3 {
            let lp: Vec<[f64; 2]> = chain3.iter().map(|p| [dot3(*p, u), dot3(*p, v)]).collect();
            loops.push(canonical_loop(lp));
        }
    }
    loops.sort_by(|a, b| {
        a.first()
            .map(|p| (p[0], p[1]))
            .partial_cmp(&b.first().map(|p| (p[0], p[1])))
            .unwrap_or(std::cmp::Ordering::Equal)
    });
    SectionPolygons { loops }
}

/// Rotate to the lexicographically smallest start, force CCW winding, close.
fn canonical_loop(mut pts: Vec<[f64; 2]>) -> Vec<[f64; 2]> {
    let n = pts.len();
    let area2: f64 = (0..n)
        .map(|i| {
            let (a, b) = (pts[i], pts[(i + 1) % n]);
            a[0] * b[1] - b[0] * a[1]
        })
        .sum();
    if area2 < 0.0 {
        pts.reverse();
    }
    let start = pts
        .iter()
        .enumerate()
        .min_by(|(_, a), (_, b)| (a[0], a[1]).partial_cmp(&(b[0], b[1])).unwrap())
        .map(|(i, _)| i)
        .unwrap_or(0);
    pts.rotate_left(start);
    let first = pts[0];
    pts.push(first);
    pts
}

const PERTURB_ATTEMPTS: usize = 64;

/// Scale one dimension of one solid by a factor in [0.6, 0.85] or
/// [1.2, 1.6] until the section at the given plane changes; errors when the
/// budget runs out.
pub fn perturb_proportions(
    composite: &CompositeSolid,
    plane: &SlicePlane,
    rng: &mut Rng,
) -> Result<CompositeSolid, SolidError> {
    let reference = slice(&build_composite(composite), plane).digest_key();
    for _ in 0..PERTURB_ATTEMPTS {
        let mut solids = composite.solids().to_vec();
        let idx = rng.index(solids.len());
        let factor = if rng.chance(0.5) {
            0.6 + rng.int(0, 25) as f64 / 100.0
        } else {
            1.2 + rng.int(0, 40) as f64 / 100.0
        };
        let s = &mut solids[idx];
        let dim = rng.index(3);
        match (dim, &mut s.base) {
            (0, BaseShape::Triangular { side }) => *side *= factor,
            (0, BaseShape::Rectangular { a, .. }) => *a *= factor,
            (0, BaseShape::Circular { radius }) => *radius *= factor,
            (1, BaseShape::Rectangular { b, .. }) => *b *= factor,
            (1, BaseShape::Triangular { side }) => *side *= factor,
            (1, BaseShape::Circular { radius }) => *radius *= factor,
            _ => s.height *= factor,
        }
        let candidate = CompositeSolid { solids };
        let section = slice(&build_composite(&candidate), plane);
        if !section.is_empty() && section.digest_key() != reference {
            return Ok(candidate);
        }
    }
    Err(SolidError::PerturbBudgetExhausted)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn boxy(a: f64, b: f64, h: f64) -> SolidSpec {
        SolidSpec { base: BaseShape::Rectangular { a, b }, taper: Taper::Prism, height: h }
    }

    #[test]
    fn single_box_has_eight_vertices() {
        let c = CompositeSolid::new(vec![boxy(2.0, 1.0, 1.0), boxy(1.0, 1.0, 1.0)]);
        let m = build_composite(&c);
        // Two boxes, 8 vertices each.
        assert_eq!(m.vertices.len(), 16);
    }

    #[test]
    fn cone_is_a_sixty_four_gon_fan() {
        let c = CompositeSolid::new(vec![
            boxy(2.0, 2.0, 1.0),
            SolidSpec {
                base: BaseShape::Circular { radius: 0.8 },
                taper: Taper::Pyramid,
                height: 1.5,
            },
        ]);
        let m = build_composite(&c);
        // Box: 8 vertices; cone ring: 64 plus the apex.
        assert_eq!(m.vertices.len(), 8 + CIRCLE_SEGMENTS + 1);
    }

    /// Analytic volume oracle: box plus 64-gon prism.
    #[test]
    fn composite_volume_matches_analytic() {
        let r: f64 = 0.7;
        let c = CompositeSolid::new(vec![
            boxy(2.0, 1.5, 1.0),
            SolidSpec { base: BaseShape::Circular { radius: r }, taper: Taper::Prism, height: 2.0 },
        ]);
        let m = build_composite(&c);
        let n = CIRCLE_SEGMENTS as f64;
        let gon_area = 0.5 * n * r * r * (2.0 * std::f64::consts::PI / n).sin();
        let expect = 2.0 * 1.5 * 1.0 + gon_area * 2.0;
        assert!((m.volume() - expect).abs() < 1e-9, "{} vs {}", m.volume(), expect);
    }

    #[test]
    fn unit_cube_horizontal_slice_is_unit_square() {
        let c = CompositeSolid::new(vec![boxy(1.0, 1.0, 0.5), boxy(1.0, 1.0, 0.5)]);
        let m = build_composite(&c);
        let s = slice(&m, &SlicePlane::axis(Axis::Z, 0.25));
        assert_eq!(s.loops.len(), 1);
        let lp = &s.loops[0];
        assert_eq!(lp.first(), lp.last());
        // Area by the shoelace formula.
        let area: f64 = lp
            .windows(2)
            .map(|w| (w[0][0] * w[1][1] - w[1][0] * w[0][1]) / 2.0)
            .sum();
        assert!((area - 1.0).abs() < 1e-9);
    }

    /// Similar-triangles oracle: a square pyramid sliced at half height
    /// gives a square of half the side.
    #[test]
    fn pyramid_midslice_halves_side() {
        let a = 2.0;
        let c = CompositeSolid::new(vec![
            boxy(a, a, 1.0),
            SolidSpec {
                base: BaseShape::Rectangular { a, b: a },
                taper: Taper::Pyramid,
                height: 2.0,
            },
        ]);
        let m = build_composite(&c);
        // Half up the pyramid: z = 1 + 1 = 2.
        let s = slice(&m, &SlicePlane::axis(Axis::Z, 2.0));
        assert_eq!(s.loops.len(), 1);
        let lp = &s.loops[0];
        let xs: Vec<f64> = lp.iter().map(|p| p[0]).collect();
        let min = xs.iter().cloned().fold(f64::INFINITY, f64::min);
        let max = xs.iter().cloned().fold(f64::NEG_INFINITY, f64::max);
        assert!((max - min - a / 2.0).abs() < 1e-6, "side {} vs {}", max - min, a / 2.0);
    }

    #[test]
    fn plane_missing_box_gives_empty() {
        let c = CompositeSolid::new(vec![boxy(1.0, 1.0, 1.0), boxy(0.5, 0.5, 0.5)]);
        let m = build_composite(&c);
        assert!(slice(&m, &SlicePlane::axis(Axis::Z, 99.0)).is_empty());
    }

    /// Rasterized parity oracle: the filled section must match a
    /// point-in-mesh test on a grid, away from loop boundaries.
    #[test]
    fn vertical_slice_matches_parity_oracle() {
        let c = CompositeSolid::new(vec![
            boxy(2.0, 1.0, 1.0),
            SolidSpec {
                base: BaseShape::Circular { radius: 0.45 },
                taper: Taper::Prism,
                height: 1.0,
            },
        ]);
        let m = build_composite(&c);
        let plane = SlicePlane::axis(Axis::Y, 0.1);
        let s = slice(&m, &plane);
        assert!(!s.is_empty());
        let (u, v) = plane_basis(plane.normal);

        let inside_loops = |p: [f64; 2]| -> bool {
            let mut inside = false;
            for lp in &s.loops {
                let mut cross = 0;
                for w in lp.windows(2) {
                    let (a, b) = (w[0], w[1]);
                    if (a[1] > p[1]) != (b[1] > p[1]) {
                        let x = a[0] + (p[1] - a[1]) / (b[1] - a[1]) * (b[0] - a[0]);
                        if x > p[0] {
                            cross += 1;
                        }
                    }
                }
                if cross % 2 == 1 {
                    inside = !inside;
                }
            }
            inside
        };
        let dist_to_edges = |p: [f64; 2]| -> f64 {
            let mut best = f64::INFINITY;
            for lp in &s.loops {
                for w in lp.windows(2) {
                    let (a, b) = (w[0], w[1]);
                    let (dx, dy) = (b[0] - a[0], b[1] - a[1]);
                    let len2 = dx * dx + dy * dy;
                    let t = if len2 == 0.0 {
                        0.0
                    } else {
                        (((p[0] - a[0]) * dx + (p[1] - a[1]) * dy) / len2).clamp(0.0, 1.0)
                    };
                    let (ex, ey) = (a[0] + t * dx - p[0], a[1] + t * dy - p[1]);
                    best = best.min((ex * ex + ey * ey).sqrt());
                }
            }
            best
        };
        // Point-in-mesh by ray parity along +x in 3D.
        let inside_mesh = |p3: [f64; 3]| -> bool {
            let mut hits = 0;
            for t in &m.triangles {
                let [a, b, c] = [m.vertices[t[0]], m.vertices[t[1]], m.vertices[t[2]]];
                let e1 = [b[0] - a[0], b[1] - a[1], b[2] - a[2]];
                let e2 = [c[0] - a[0], c[1] - a[1], c[2] - a[2]];
                let dir = [1.0, 0.0, 0.0];
                let p = cross3(dir, e2);
                let det = dot3(e1, p);
                if det.abs() < 1e-12 {
                    continue;
                }
                let inv = 1.0 / det;
                let tv = [p3[0] - a[0], p3[1] - a[1], p3[2] - a[2]];
                let uu = dot3(tv, p) * inv;
                if !(0.0..=1.0).contains(&uu) {
                    continue;
                }
                let q = cross3(tv, e1);
                let vv = dot3(dir, q) * inv;
                if vv < 0.0 || uu + vv > 1.0 {
                    continue;
                }
                let tt = dot3(e2, q) * inv;
                if tt > 1e-12 {
                    hits += 1;
                }
            }
            hits % 2 == 1
        };

        let step = 0.01;
        let mut checked = 0;
        for iu in -120..120 {
            for iv in -10..230 {
                // Fractional offsets keep the parity ray off triangulation
                // diagonals and other measure-zero degeneracies.
                let p = [(iu as f64 + 0.37) * step, (iv as f64 + 0.41) * step];
                if dist_to_edges(p) < 0.02 {
                    continue;
                }
                let p3 = [
                    u[0] * p[0] + v[0] * p[1] + plane.normal[0] * plane.offset,
                    u[1] * p[0] + v[1] * p[1] + plane.normal[1] * plane.offset,
                    u[2] * p[0] + v[2] * p[1] + plane.normal[2] * plane.offset,
                ];
                assert_eq!(inside_loops(p), inside_mesh(p3), "at {p:?}");
                checked += 1;
            }
        }
        assert!(checked > 10_000, "oracle must cover the grid, got {checked}");
    }

    /// A vertical plane that cuts the bottom and top solids but misses the
    /// narrow waist produces two disjoint loops.
    #[test]
    fn disconnected_section_two_loops() {
        let c = CompositeSolid::new(vec![
            boxy(2.0, 2.0, 1.0),
            boxy(1.0, 0.4, 1.0),
            boxy(2.0, 2.0, 1.0),
        ]);
        let m = build_composite(&c);
        let plane = SlicePlane::axis(Axis::Y, 0.6);
        let s = slice(&m, &plane);
        assert_eq!(s.loops.len(), 2);
    }

    #[test]
    fn scale_covariance() {
        let c = CompositeSolid::new(vec![boxy(2.0, 1.0, 1.0), boxy(1.0, 0.5, 0.7)]);
        let m = build_composite(&c);
        let plane = SlicePlane::axis(Axis::Z, 0.4);
        let a = slice(&m, &plane);
        let k = 2.5;
        let scaled_plane = SlicePlane { normal: plane.normal, offset: plane.offset * k };
        let b = slice(&m.scaled(k), &scaled_plane);
        assert_eq!(a.loops.len(), b.loops.len());
        for (la, lb) in a.loops.iter().zip(&b.loops) {
            assert_eq!(la.len(), lb.len());
            for (pa, pb) in la.iter().zip(lb) {
                assert!((pa[0] * k - pb[0]).abs() < 1e-9);
                assert!((pa[1] * k - pb[1]).abs() < 1e-9);
            }
        }
    }

    #[test]
    fn perturbation_changes_section() {
        let mut rng = Rng::from_seed(41);
        let c = CompositeSolid::new(vec![
            boxy(2.0, 2.0, 1.0),
            SolidSpec {
                base: BaseShape::Circular { radius: 0.6 },
                taper: Taper::Frustum { top_scale: 0.5 },
                height: 1.0,
            },
        ]);
        let plane = SlicePlane::axis(Axis::Z, 1.5);
        let m = build_composite(&c);
        let reference = slice(&m, &plane).digest_key();
        for _ in 0..5 {
            let p = perturb_proportions(&c, &plane, &mut rng).unwrap();
            let got = slice(&build_composite(&p), &plane).digest_key();
            assert_ne!(got, reference);
        }
    }

    #[test]
    fn oblique_plane_slices() {
        let c = CompositeSolid::new(vec![boxy(2.0, 2.0, 1.0), boxy(1.0, 1.0, 1.0)]);
        let m = build_composite(&c);
        let (lo, hi) = m.bounds();
        let center =
            [(lo[0] + hi[0]) / 2.0, (lo[1] + hi[1]) / 2.0, (lo[2] + hi[2]) / 2.0];
        let plane = SlicePlane::oblique(Axis::Z, Axis::X, false, center);
        let s = slice(&m, &plane);
        assert!(!s.is_empty());
        for lp in &s.loops {
            assert_eq!(lp.first(), lp.last());
        }
    }
}
