//! Visual penetration generators: cross-section, cube counting, cube
//! assembly.

use super::distractor_quota;
use crate::options::{Draft, DistractorTag, GenError, OptionContent, OptionPolicy, GEN_ATTEMPTS};
use crate::params::TaskParams;
use spatialkit_core::render::{
    render_isometric, render_mesh_iso, render_section, render_views, RenderStyle, SceneDigest,
};
use spatialkit_core::rng::Rng;
use spatialkit_core::solids::{
    build_composite, perturb_proportions, slice, BaseShape, CompositeSolid, SlicePlane, SolidSpec,
    Taper,
};
use spatialkit_core::voxel::{
    self, count_bounds, create_pyramid_stack, is_connected_6, project_silhouette,
    split_connected, Axis, CellCoord, OccupancyGrid, ViewAxis,
};

pub const Q_CC: &str = "The images show orthographic views of a stack of unit cubes standing on the ground. How many unit cubes does the stack contain?";
pub const Q_CA: &str = "The first image shows a complete cube stack; the following images show all but one of the parts it was split into. Which option is the missing part?";

// ---------------------------------------------------------------------------
// Cross-section.

fn random_solid(taper_pool: &[Taper], rng: &mut Rng) -> SolidSpec {
    let base = match rng.index(3) {
        0 => BaseShape::Triangular { side: 1.2 + rng.int(0, 8) as f64 / 10.0 },
        1 => BaseShape::Rectangular {
            a: 1.0 + rng.int(0, 10) as f64 / 10.0,
            b: 1.0 + rng.int(0, 10) as f64 / 10.0,
        },
        _ => BaseShape::Circular { radius: 0.6 + rng.int(0, 5) as f64 / 10.0 },
    };
    let taper = *rng.pick(taper_pool);
    let taper = if let Taper::Frustum { .. } = taper {
        Taper::Frustum { top_scale: 0.4 + rng.int(0, 3) as f64 / 10.0 }
    } else {
        taper
    };
    SolidSpec { base, taper, height: 0.8 + rng.int(0, 7) as f64 / 10.0 }
}

fn random_composite(count: usize, rng: &mut Rng) -> CompositeSolid {
    let lower = [Taper::Prism, Taper::Frustum { top_scale: 0.5 }];
    let top = [Taper::Prism, Taper::Pyramid, Taper::Frustum { top_scale: 0.5 }];
    let mut solids = Vec::new();
    for i in 0..count {
        let pool: &[Taper] = if i + 1 == count { &top } else { &lower };
        solids.push(random_solid(pool, rng));
    }
    CompositeSolid::new(solids)
}

fn axis_name(i: usize) -> &'static str {
    ["x", "y", "z"][i]
}

fn plane_description(plane: &SlicePlane, composite: &CompositeSolid, lo: [f64; 3], hi: [f64; 3]) -> String {
    let n = plane.normal;
    let h = composite.total_height();
    if n[2].abs() > 0.999 {
        let frac = (plane.offset / h * 100.0).round() as i64;
        return format!("a horizontal plane at {frac} percent of the total height");
    }
    for i in 0..2 {
        if n[i].abs() > 0.999 {
            let frac = ((plane.offset - lo[i]) / (hi[i] - lo[i]) * 100.0).round() as i64;
            return format!(
                "a vertical plane perpendicular to the {} axis at {frac} percent of the solid's extent",
                axis_name(i)
            );
        }
    }
    // Oblique: name the two axes the unit normal mixes and the tilt.
    let mut axes: Vec<(usize, f64)> =
        (0..3).filter(|&i| n[i].abs() > 0.1).map(|i| (i, n[i])).collect();
    axes.sort_by_key(|(i, _)| *i);
    let tilt = if axes.iter().any(|(_, v)| *v < 0.0) { "135" } else { "45" };
    format!(
        "a plane through the centroid whose normal is tilted {tilt} degrees from the {} axis toward the {} axis",
        axis_name(axes[0].0),
        axis_name(axes[1].0)
    )
}

pub fn gen_cross_section(
    params: &TaskParams,
    policy: OptionPolicy,
    rng: &mut Rng,
) -> Result<Draft, GenError> {
    let style = RenderStyle::default();
    'outer: for _ in 0..GEN_ATTEMPTS {
        let composite = random_composite(params.knobs.solids, rng);
        let mesh = build_composite(&composite);
        let (lo, hi) = mesh.bounds();
        let oblique = params.knobs.oblique && rng.chance(0.5);
        let plane = if oblique {
            let center =
                [(lo[0] + hi[0]) / 2.0, (lo[1] + hi[1]) / 2.0, (lo[2] + hi[2]) / 2.0];
            let axes = [Axis::X, Axis::Y, Axis::Z];
            let a = *rng.pick(&axes);
            let b = loop {
                let b = *rng.pick(&axes);
                if b != a {
                    break b;
                }
            };
            SlicePlane::oblique(a, b, rng.chance(0.5), center)
        } else {
            let axis = *rng.pick(&[Axis::X, Axis::Y, Axis::Z]);
            let (min_c, max_c) = match axis {
                Axis::X => (lo[0], hi[0]),
                Axis::Y => (lo[1], hi[1]),
                Axis::Z => (lo[2], hi[2]),
            };
            // Offset at i * step with k = 3 interior stations.
            let k = 3;
            let i = rng.int(1, k) as f64;
            SlicePlane::axis(axis, min_c + i * (max_c - min_c) / (k as f64 + 1.0))
        };
        let section = slice(&mesh, &plane);
        if section.is_empty() {
            continue;
        }
        let positive_doc = render_section(&section, &style);
        let pos_digest = positive_doc.digest();
        // Slicer re-run oracle.
        if render_section(&slice(&mesh, &plane), &style).digest() != pos_digest {
            continue;
        }

        let quota = distractor_quota(policy);
        let mut distractors = Vec::new();
        let mut seen: Vec<SceneDigest> = vec![pos_digest];
        let mut attempts = 0;
        while distractors.len() < quota {
            attempts += 1;
            if attempts > GEN_ATTEMPTS {
                continue 'outer;
            }
            let Ok(perturbed) = perturb_proportions(&composite, &plane, rng) else {
                continue 'outer;
            };
            let doc = render_section(&slice(&build_composite(&perturbed), &plane), &style);
            let dg = doc.digest();
            if seen.contains(&dg) {
                continue;
            }
            seen.push(dg);
            distractors.push((OptionContent::Image(doc), DistractorTag::ProportionAltered));
        }

        let names: Vec<String> =
            composite.solids().iter().map(|s| s.kind_label()).collect();
        let question = format!(
            "The first image shows a composite solid stacked from bottom to top: {}. Which option shows the cross-section produced by slicing it with {}?",
            names.join(", then "),
            plane_description(&plane, &composite, lo, hi)
        );
        return Ok(Draft {
            question,
            references: vec![("composite".into(), render_mesh_iso(&mesh, &style))],
            positive: OptionContent::Image(positive_doc),
            positive_explanation: "The exact plane-mesh intersection at the stated plane.".into(),
            distractors,
            policy,
            oracle_notes: vec![
                "answer equals a re-run of the slicer at the stated plane".into(),
                "distractors come from proportion-altered composites".into(),
            ],
        });
    }
    Err(GenError::BudgetExhausted("cross-section instance"))
}

// ---------------------------------------------------------------------------
// Cube counting.

pub fn gen_cube_counting(
    params: &TaskParams,
    policy: OptionPolicy,
    rng: &mut Rng,
) -> Result<Draft, GenError> {
    let style = RenderStyle::default();
    'outer: for _ in 0..GEN_ATTEMPTS {
        let raw = voxel::create_supported_stack(params.knobs.grid3, 0.5, rng);
        if raw.count() < 4 || raw.cells().iter().all(|c| c.z != 0) {
            continue;
        }
        let grid = voxel::connect_isolated_regions(&raw);
        let count = grid.count();

        let front = project_silhouette(&grid, ViewAxis::Front);
        let top = project_silhouette(&grid, ViewAxis::Top);
        let left = project_silhouette(&grid, ViewAxis::Left);
        let bounds = if params.knobs.views == 2 {
            count_bounds(&front, &top, None)?
        } else {
            count_bounds(&front, &top, Some(&left))?
        };
        // The bracket must hold and leave room for three distinct wrong
        // numbers.
        if !(bounds.min_count <= count && count <= bounds.max_count) {
            continue;
        }
        if bounds.max_count - bounds.min_count + 1 < 4 {
            continue;
        }

        let quota = distractor_quota(policy);
        let mut nums: Vec<i64> = vec![count as i64];
        let mut attempts = 0;
        while nums.len() < quota + 1 {
            attempts += 1;
            if attempts > GEN_ATTEMPTS * 4 {
                continue 'outer;
            }
            let cand = rng.int(bounds.min_count as i64, bounds.max_count as i64);
            if !nums.contains(&cand) {
                nums.push(cand);
            }
        }

        let mut refs = Vec::new();
        let views: &[ViewAxis] = if params.knobs.views == 2 {
            &[ViewAxis::Top, ViewAxis::Front]
        } else {
            &[ViewAxis::Top, ViewAxis::Front, ViewAxis::Left]
        };
        for (axis, doc) in render_views(&grid, views, &[], &style)? {
            let name = match axis {
                ViewAxis::Top => "top",
                ViewAxis::Front => "front",
                ViewAxis::Left => "left",
                ViewAxis::Right => "right",
            };
            refs.push((name.to_string(), doc));
        }

        let distractors: Vec<(OptionContent, DistractorTag)> = nums[1..]
            .iter()
            .map(|&n| (OptionContent::Number(n), DistractorTag::WrongCount))
            .collect();
        return Ok(Draft {
            question: Q_CC.to_string(),
            references: refs,
            positive: OptionContent::Number(count as i64),
            positive_explanation: format!(
                "The hidden stack contains {count} cubes; the views bound the count to [{}, {}].",
                bounds.min_count, bounds.max_count
            ),
            distractors,
            policy,
            oracle_notes: vec![
                "true count lies inside the view-derived bounds".into(),
                "all numeric options lie inside the bounds and are distinct".into(),
            ],
        });
    }
    Err(GenError::BudgetExhausted("cube counting instance"))
}

// ---------------------------------------------------------------------------
// Cube assembly.

fn part_grid(cells: &[CellCoord]) -> OccupancyGrid {
    let max_x = cells.iter().map(|c| c.x).max().unwrap() + 1;
    let max_y = cells.iter().map(|c| c.y).max().unwrap() + 1;
    let max_z = cells.iter().map(|c| c.z).max().unwrap() + 1;
    OccupancyGrid::from_cells((max_x, max_y, max_z), cells).shrink_to_content()
}

/// Remove one removable cube (keeps the part connected), or add one
/// adjacent cube.
fn mutate_part(cells: &[CellCoord], add: bool, rng: &mut Rng) -> Option<Vec<CellCoord>> {
    if add {
        let mut candidates: Vec<CellCoord> = Vec::new();
        for c in cells {
            for (dx, dy, dz) in voxel::DIRS_6 {
                let (x, y, z) =
                    (c.x as isize + dx, c.y as isize + dy, c.z as isize + dz);
                if x < 0 || y < 0 || z < 0 {
                    continue;
                }
                let n = CellCoord::new(x as usize, y as usize, z as usize);
                if !cells.contains(&n) && !candidates.contains(&n) {
                    candidates.push(n);
                }
            }
        }
        if candidates.is_empty() {
            return None;
        }
        let mut out = cells.to_vec();
        out.push(candidates[rng.index(candidates.len())]);
        out.sort();
        Some(out)
    } else {
        if cells.len() < 2 {
            return None;
        }
        let removable: Vec<usize> = (0..cells.len())
            .filter(|&i| {
                let rest: Vec<CellCoord> =
                    cells.iter().enumerate().filter(|(j, _)| *j != i).map(|(_, c)| *c).collect();
                is_connected_6(&rest)
            })
            .collect();
        if removable.is_empty() {
            return None;
        }
        let i = removable[rng.index(removable.len())];
        let mut out: Vec<CellCoord> =
            cells.iter().enumerate().filter(|(j, _)| *j != i).map(|(_, c)| *c).collect();
        out.sort();
        Some(out)
    }
}

pub fn gen_cube_assembly(
    params: &TaskParams,
    policy: OptionPolicy,
    rng: &mut Rng,
) -> Result<Draft, GenError> {
    let style = RenderStyle::default();
    'outer: for _ in 0..GEN_ATTEMPTS {
        let whole = create_pyramid_stack(params.knobs.grid3, rng);
        let total = whole.count();
        if total < 3 * params.knobs.parts {
            continue;
        }
        if !is_connected_6(&whole.cells()) {
            continue;
        }
        let max_part = total.div_ceil(params.knobs.parts) + 1;
        let Ok(parts) = split_connected(&whole, max_part, params.knobs.parts, rng) else {
            continue;
        };
        // Union oracle: shown parts plus the answer reassemble the whole.
        let mut union: Vec<CellCoord> = parts.iter().flatten().copied().collect();
        union.sort();
        let mut expected = whole.cells();
        expected.sort();
        if union != expected {
            continue;
        }

        let answer_cells = parts.last().unwrap().clone();
        let positive_doc = render_isometric(&part_grid(&answer_cells), &[], &style);
        let pos_digest = positive_doc.digest();

        let quota = distractor_quota(policy);
        let mut distractors = Vec::new();
        let mut seen: Vec<SceneDigest> = vec![pos_digest];
        let mut attempts = 0;
        while distractors.len() < quota {
            attempts += 1;
            if attempts > GEN_ATTEMPTS * 2 {
                continue 'outer;
            }
            // Two cube-removed variants, then a cube-added one.
            let add = distractors.len() == 2;
            let Some(mutated) = mutate_part(&answer_cells, add, rng) else {
                continue;
            };
            if !is_connected_6(&mutated) {
                continue;
            }
            // The union with the shown parts can no longer equal the whole.
            debug_assert_ne!(mutated.len(), answer_cells.len());
            let doc = render_isometric(&part_grid(&mutated), &[], &style);
            let dg = doc.digest();
            if seen.contains(&dg) {
                continue;
            }
            seen.push(dg);
            let tag = if add { DistractorTag::CubeAdded } else { DistractorTag::CubeRemoved };
            distractors.push((OptionContent::Image(doc), tag));
        }

        let mut refs = vec![("whole".to_string(), render_isometric(&whole, &[], &style))];
        for (i, part) in parts[..parts.len() - 1].iter().enumerate() {
            refs.push((
                format!("part_{}", i + 1),
                render_isometric(&part_grid(part), &[], &style),
            ));
        }
        return Ok(Draft {
            question: Q_CA.to_string(),
            references: refs,
            positive: OptionContent::Image(positive_doc),
            positive_explanation:
                "Together with the shown parts this piece reassembles the whole stack.".into(),
            distractors,
            policy,
            oracle_notes: vec![
                "union of shown parts and the answer equals the whole stack".into(),
                "each distractor differs from the answer by one cube".into(),
            ],
        });
    }
    Err(GenError::BudgetExhausted("cube assembly instance"))
}
