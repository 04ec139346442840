//! Mental rotation generators: 2D rotation, 3D rotation, three-view
//! projection.

use super::distractor_quota;
use crate::options::{Draft, DistractorTag, GenError, OptionContent, OptionPolicy, GEN_ATTEMPTS};
use crate::params::{PatternMode, TaskParams};
use spatialkit_core::patterns::{
    flip_grid, rotate_grid, FlipAxis, Grid2D, Pattern, PatternCell, CORNERS, GLYPHS,
};
use spatialkit_core::render::{
    render_depth_view, render_grid2d, render_isometric, render_views, transform_view_drawing,
    DocTransform, RenderStyle, SceneDigest, VecDoc,
};
use spatialkit_core::rng::Rng;
use spatialkit_core::voxel::{
    connect_isolated_regions, create_supported_stack, rotate_stack, CellCoord, OccupancyGrid,
    ViewAxis, AXES,
};

pub const Q_2D: &str = "The first image shows a reference pattern on a grid with a red square marking one corner. Which option shows the same pattern after an in-plane rotation?";
pub const Q_3D: &str = "The first image shows a stack of unit cubes. Which option shows the same stack after a rotation in 3D space?";
pub const Q_3V_L0: &str = "You are given the isometric, top and front views of a cube stack with some cubes marked red. Which option is the correct left view?";
pub const Q_3V_L1: &str = "You are given the isometric view and two of the three standard orthographic views of a part. Which option is the missing view?";

fn random_grid(params: &TaskParams, rng: &mut Rng) -> Grid2D {
    let (rows, cols) = params.knobs.grid2;
    let mut g = Grid2D::new(rows, cols);
    for r in 0..rows {
        for c in 0..cols {
            if rng.chance(0.5) {
                let cell = match params.knobs.pattern_mode {
                    PatternMode::Colors => PatternCell::new(Pattern::Solid(rng.index(6) as u8)),
                    _ => PatternCell::with_rotation(
                        Pattern::Glyph { glyph: GLYPHS[rng.index(6)], mirrored: false },
                        rng.int(0, 3) as u8,
                    ),
                };
                g.set(r, c, Some(cell));
            }
        }
    }
    g.marker = Some(*rng.pick(&CORNERS));
    g
}

/// Rotate every cell's pattern in place, positions untouched (the
/// record/pop redraw mechanism behind the Level-1 negative).
fn internal_rotation(grid: &Grid2D) -> Grid2D {
    let mut out = grid.clone();
    for r in 0..grid.rows {
        for c in 0..grid.cols {
            if let Some(cell) = grid.get(r, c) {
                out.set(r, c, Some(cell.rotated(1)));
            }
        }
    }
    out
}

pub fn gen_2d_rotation(
    params: &TaskParams,
    policy: OptionPolicy,
    rng: &mut Rng,
) -> Result<Draft, GenError> {
    let style = RenderStyle::default();
    for _ in 0..GEN_ATTEMPTS {
        let grid = random_grid(params, rng);
        let filled = (0..grid.rows)
            .flat_map(|r| (0..grid.cols).map(move |c| (r, c)))
            .filter(|&(r, c)| grid.get(r, c).is_some())
            .count();
        if filled < 3 {
            continue;
        }
        let ref_doc = render_grid2d(&grid, &style);
        let rotation_orbit: Vec<SceneDigest> = (0..4)
            .map(|k| render_grid2d(&rotate_grid(&grid, k), &style).digest())
            .collect();

        let turns = rng.int(1, 3) as u8;
        let positive_doc = render_grid2d(&rotate_grid(&grid, turns), &style);

        let mut cands: Vec<(VecDoc, DistractorTag)> = Vec::new();
        cands.push((
            render_grid2d(&flip_grid(&grid, FlipAxis::Horizontal), &style),
            DistractorTag::Mirrored,
        ));
        cands.push((
            render_grid2d(&flip_grid(&grid, FlipAxis::Vertical), &style),
            DistractorTag::Mirrored,
        ));
        match params.knobs.pattern_mode {
            PatternMode::Colors => {
                // Third negative: a flip composed with a quarter turn, still
                // a reflection in the dihedral group.
                let extra = rotate_grid(
                    &flip_grid(&grid, FlipAxis::Horizontal),
                    rng.int(1, 3) as u8,
                );
                cands.push((render_grid2d(&extra, &style), DistractorTag::Mirrored));
            }
            _ => {
                cands.push((
                    render_grid2d(&internal_rotation(&grid), &style),
                    DistractorTag::InternalRotation,
                ));
            }
        }

        // Oracle: the answer lies in the rotation orbit, distractors do not.
        let pos_digest = positive_doc.digest();
        if !rotation_orbit.contains(&pos_digest) {
            continue;
        }
        if cands.iter().any(|(d, _)| rotation_orbit.contains(&d.digest())) {
            continue;
        }
        let mut digests: Vec<SceneDigest> =
            cands.iter().map(|(d, _)| d.digest()).chain([pos_digest]).collect();
        digests.sort();
        digests.dedup();
        if digests.len() != cands.len() + 1 {
            continue;
        }

        let quota = distractor_quota(policy);
        let distractors: Vec<(OptionContent, DistractorTag)> = cands
            .into_iter()
            .take(quota)
            .map(|(d, t)| (OptionContent::Image(d), t))
            .collect();
        if distractors.len() < quota {
            continue;
        }
        return Ok(Draft {
            question: Q_2D.to_string(),
            references: vec![("reference".into(), ref_doc)],
            positive: OptionContent::Image(positive_doc),
            positive_explanation: format!("The pattern rotated by {} degrees.", turns as u32 * 90),
            distractors,
            policy,
            oracle_notes: vec![
                "answer digest lies in the rotation orbit".into(),
                "every distractor digest lies outside the rotation orbit".into(),
            ],
        });
    }
    Err(GenError::BudgetExhausted("2d rotation instance"))
}

/// All 24 grid orientations reachable by quarter-turn compositions.
fn orientation_orbit(grid: &OccupancyGrid) -> Vec<OccupancyGrid> {
    let mut seen: Vec<OccupancyGrid> = vec![grid.clone()];
    let mut queue = vec![grid.clone()];
    while let Some(g) = queue.pop() {
        for axis in AXES {
            let r = rotate_stack(&g, axis, 1);
            if !seen.contains(&r) {
                seen.push(r.clone());
                queue.push(r);
            }
        }
    }
    seen
}

fn random_connected_stack(
    dims: (usize, usize, usize),
    min_cubes: usize,
    rng: &mut Rng,
) -> Result<OccupancyGrid, GenError> {
    for _ in 0..GEN_ATTEMPTS {
        let g = create_supported_stack(dims, 0.5, rng);
        if g.count() < min_cubes || g.cells().iter().all(|c| c.z != 0) {
            continue;
        }
        return Ok(connect_isolated_regions(&g));
    }
    Err(GenError::BudgetExhausted("connected stack"))
}

pub fn gen_3d_rotation(
    params: &TaskParams,
    policy: OptionPolicy,
    rng: &mut Rng,
) -> Result<Draft, GenError> {
    let style = RenderStyle::default();
    'outer: for _ in 0..GEN_ATTEMPTS {
        let grid = random_connected_stack(params.knobs.grid3, 4, rng)?;
        let ref_doc = render_isometric(&grid, &[], &style);
        let orbit_digests: Vec<SceneDigest> = orientation_orbit(&grid)
            .iter()
            .map(|g| render_isometric(g, &[], &style).digest())
            .collect();

        let axis = *rng.pick(&AXES);
        let turns = rng.int(1, 3) as u8;
        let positive_doc = render_isometric(&rotate_stack(&grid, axis, turns), &[], &style);

        // Cube-removed-then-rotated distractor; the removal must stay
        // visible or the render would equal a positive.
        let mut removed_doc = None;
        for _ in 0..GEN_ATTEMPTS {
            let cells = grid.cells();
            let cell = *rng.pick(&cells);
            let mut g2 = grid.clone();
            g2.set(cell, false);
            if g2.is_empty() {
                continue;
            }
            let r_axis = *rng.pick(&AXES);
            let r_turns = rng.int(1, 3) as u8;
            let doc = render_isometric(&rotate_stack(&g2, r_axis, r_turns), &[], &style);
            if !orbit_digests.contains(&doc.digest()) {
                removed_doc = Some(doc);
                break;
            }
        }
        let Some(removed_doc) = removed_doc else {
            continue;
        };

        // Mirror distractors: flips of rotated renders.
        let mut flips: Vec<VecDoc> = Vec::new();
        for flip in [DocTransform::FlipHorizontal, DocTransform::FlipVertical] {
            let s_axis = *rng.pick(&AXES);
            let s_turns = rng.int(1, 3) as u8;
            let sample = render_isometric(&rotate_stack(&grid, s_axis, s_turns), &[], &style);
            let doc = transform_view_drawing(&sample, flip)?;
            if orbit_digests.contains(&doc.digest()) {
                continue 'outer;
            }
            flips.push(doc);
        }

        let mut cands: Vec<(VecDoc, DistractorTag)> =
            vec![(removed_doc, DistractorTag::CubeRemoved)];
        for f in flips {
            cands.push((f, DistractorTag::Mirrored));
        }

        let pos_digest = positive_doc.digest();
        let mut digests: Vec<SceneDigest> =
            cands.iter().map(|(d, _)| d.digest()).chain([pos_digest.clone()]).collect();
        digests.sort();
        digests.dedup();
        if digests.len() != cands.len() + 1 || !orbit_digests.contains(&pos_digest) {
            continue;
        }

        let quota = distractor_quota(policy);
        let distractors: Vec<(OptionContent, DistractorTag)> = cands
            .into_iter()
            .take(quota)
            .map(|(d, t)| (OptionContent::Image(d), t))
            .collect();
        return Ok(Draft {
            question: Q_3D.to_string(),
            references: vec![("reference".into(), ref_doc)],
            positive: OptionContent::Image(positive_doc),
            positive_explanation: format!(
                "The stack rotated {} degrees about the {axis:?} axis.",
                turns as u32 * 90
            ),
            distractors,
            policy,
            oracle_notes: vec![
                "answer render lies in the 24-orientation orbit".into(),
                "cube-removed and mirrored renders lie outside the orbit".into(),
            ],
        });
    }
    Err(GenError::BudgetExhausted("3d rotation instance"))
}

/// Cubes visible from the front, top or left view (frontmost of some
/// silhouette cell).
fn visible_cubes(grid: &OccupancyGrid) -> Vec<CellCoord> {
    let mut seen = std::collections::BTreeSet::new();
    for view in [ViewAxis::Front, ViewAxis::Top, ViewAxis::Left] {
        let sil = spatialkit_core::voxel::project_silhouette(grid, view);
        for r in 0..sil.rows() {
            for c in 0..sil.cols() {
                if !sil.grid[r][c] {
                    continue;
                }
                // Walk the ray like the renderer does.
                let (xs, ys, zs) = grid.dims;
                let hit = match view {
                    ViewAxis::Front => {
                        (0..ys).map(|y| CellCoord::new(c, y, r)).find(|&cc| grid.get(cc))
                    }
                    ViewAxis::Top => {
                        (0..zs).rev().map(|z| CellCoord::new(c, r, z)).find(|&cc| grid.get(cc))
                    }
                    ViewAxis::Left => {
                        (0..xs).map(|x| CellCoord::new(x, c, r)).find(|&cc| grid.get(cc))
                    }
                    ViewAxis::Right => None,
                };
                if let Some(cc) = hit {
                    seen.insert(cc);
                }
            }
        }
    }
    seen.into_iter().collect()
}

fn pick_marks(grid: &OccupancyGrid, count: usize, rng: &mut Rng) -> Vec<CellCoord> {
    let visible = visible_cubes(grid);
    let mut marks = Vec::new();
    let take = count.min(visible.len());
    let mut pool = visible;
    for _ in 0..take {
        let i = rng.index(pool.len());
        marks.push(pool.remove(i));
    }
    marks.sort();
    marks
}

/// Cubes that are the frontmost of some silhouette cell of one view.
fn view_visible_cubes(grid: &OccupancyGrid, view: ViewAxis) -> Vec<CellCoord> {
    let sil = spatialkit_core::voxel::project_silhouette(grid, view);
    let (xs, ys, zs) = grid.dims;
    let mut seen = std::collections::BTreeSet::new();
    for r in 0..sil.rows() {
        for c in 0..sil.cols() {
            if !sil.grid[r][c] {
                continue;
            }
            let hit = match view {
                ViewAxis::Front => (0..ys).map(|y| CellCoord::new(c, y, r)).find(|&cc| grid.get(cc)),
                ViewAxis::Top => {
                    (0..zs).rev().map(|z| CellCoord::new(c, r, z)).find(|&cc| grid.get(cc))
                }
                ViewAxis::Left => (0..xs).map(|x| CellCoord::new(x, c, r)).find(|&cc| grid.get(cc)),
                ViewAxis::Right => (0..xs)
                    .rev()
                    .map(|x| CellCoord::new(x, ys - 1 - c, r))
                    .find(|&cc| grid.get(cc)),
            };
            if let Some(cc) = hit {
                seen.insert(cc);
            }
        }
    }
    seen.into_iter().collect()
}

fn pick_marks_for_view(
    grid: &OccupancyGrid,
    view: ViewAxis,
    count: usize,
    rng: &mut Rng,
) -> Vec<CellCoord> {
    let mut pool = view_visible_cubes(grid, view);
    let mut marks = Vec::new();
    for _ in 0..count.min(pool.len()) {
        let i = rng.index(pool.len());
        marks.push(pool.remove(i));
    }
    marks.sort();
    marks
}

fn gen_three_view_l0(
    params: &TaskParams,
    policy: OptionPolicy,
    rng: &mut Rng,
) -> Result<Draft, GenError> {
    let style = RenderStyle::default();
    'outer: for _ in 0..GEN_ATTEMPTS {
        let grid = random_connected_stack(params.knobs.grid3, 5, rng)?;
        let marks = pick_marks(&grid, 2, rng);
        if marks.is_empty() {
            continue;
        }
        let all = render_views(
            &grid,
            &[ViewAxis::Top, ViewAxis::Front, ViewAxis::Left, ViewAxis::Right],
            &marks,
            &style,
        );
        let Ok(all) = all else { continue };
        let iso = render_isometric(&grid, &marks, &style);
        let top = all[0].1.clone();
        let front = all[1].1.clone();
        let left = all[2].1.clone();
        let right = all[3].1.clone();

        // Re-marked views: each rendered with fresh marks visible from its
        // own viewpoint.
        let mut remarked = None;
        for _ in 0..GEN_ATTEMPTS {
            let ml = pick_marks_for_view(&grid, ViewAxis::Left, 2, rng);
            let mr = pick_marks_for_view(&grid, ViewAxis::Right, 2, rng);
            if ml.is_empty() || mr.is_empty() || ml == marks {
                continue;
            }
            let Ok(vl) = render_views(&grid, &[ViewAxis::Left], &ml, &style) else {
                continue;
            };
            let Ok(vr) = render_views(&grid, &[ViewAxis::Right], &mr, &style) else {
                continue;
            };
            remarked = Some((vl[0].1.clone(), vr[0].1.clone()));
            break;
        }
        let Some((re_left, re_right)) = remarked else { continue };

        let cands: Vec<(VecDoc, DistractorTag)> = vec![
            (right, DistractorTag::RightViewSubstituted),
            (re_left, DistractorTag::RemarkedView),
            (re_right, DistractorTag::RemarkedView),
        ];
        let pos_digest = left.digest();
        let mut digests: Vec<SceneDigest> =
            cands.iter().map(|(d, _)| d.digest()).chain([pos_digest.clone()]).collect();
        digests.sort();
        digests.dedup();
        if digests.len() != cands.len() + 1 {
            continue 'outer;
        }
        // Re-render oracle: the answer equals a fresh left render (the full
        // view set keeps the mark-visibility precondition identical).
        let re = render_views(
            &grid,
            &[ViewAxis::Top, ViewAxis::Front, ViewAxis::Left, ViewAxis::Right],
            &marks,
            &style,
        )?;
        if re[2].1.digest() != pos_digest {
            continue;
        }

        let quota = distractor_quota(policy);
        let distractors: Vec<(OptionContent, DistractorTag)> = cands
            .into_iter()
            .take(quota)
            .map(|(d, t)| (OptionContent::Image(d), t))
            .collect();
        return Ok(Draft {
            question: Q_3V_L0.to_string(),
            references: vec![
                ("isometric".into(), iso),
                ("top".into(), top),
                ("front".into(), front),
            ],
            positive: OptionContent::Image(left),
            positive_explanation: "The true left view with the original marks.".into(),
            distractors,
            policy,
            oracle_notes: vec![
                "answer equals a re-rendered left view digest".into(),
                "right-view and re-marked distractors differ by digest".into(),
            ],
        });
    }
    Err(GenError::BudgetExhausted("three-view level 0 instance"))
}

/// Procedurally built bracket/slot/boss parts for Level 1, standing in for
/// external CAD inputs. Each part is a voxel solid whose orthographic
/// drawings carry internal step lines.
pub fn part_corpus(dims: (usize, usize, usize)) -> Vec<OccupancyGrid> {
    let (xs, ys, zs) = dims;
    let mut parts = Vec::new();
    let base = |g: &mut OccupancyGrid, h: usize| {
        for z in 0..h {
            for y in 0..ys {
                for x in 0..xs {
                    g.set(CellCoord::new(x, y, z), true);
                }
            }
        }
    };
    // L-brackets: full base, partial wall along one side.
    for wall in 1..=3usize {
        for h in 2..zs {
            let mut g = OccupancyGrid::new(dims);
            base(&mut g, 2);
            for z in 2..=h.min(zs - 1) {
                for y in 0..ys {
                    for x in 0..wall.min(xs) {
                        g.set(CellCoord::new(x, y, z), true);
                    }
                }
            }
            parts.push(g);
        }
    }
    // Slotted blocks: solid block with a channel cut through the top.
    for slot_w in 1..=2usize {
        for slot_d in 1..zs {
            for off in 0..xs.saturating_sub(slot_w + 1) {
                let mut g = OccupancyGrid::new(dims);
                base(&mut g, zs - 1);
                for z in (zs - 1 - slot_d)..(zs - 1) {
                    for y in 0..ys {
                        for x in (1 + off)..(1 + off + slot_w) {
                            g.set(CellCoord::new(x, y, z), false);
                        }
                    }
                }
                parts.push(g);
            }
        }
    }
    // Boss blocks: base plate with a raised rectangular boss.
    for bw in 1..xs {
        for bd in 1..ys {
            let mut g = OccupancyGrid::new(dims);
            base(&mut g, 1);
            for z in 1..zs {
                for y in 0..bd {
                    for x in 0..bw {
                        g.set(CellCoord::new(x, y, z), true);
                    }
                }
            }
            parts.push(g);
        }
    }
    // Steps: staircase profiles extruded along y.
    for rise in 1..=2usize {
        let mut g = OccupancyGrid::new(dims);
        for x in 0..xs {
            let h = (1 + x * rise).min(zs);
            for z in 0..h {
                for y in 0..ys {
                    g.set(CellCoord::new(x, y, z), true);
                }
            }
        }
        parts.push(g);
    }
    parts
}

fn view_label(v: ViewAxis) -> &'static str {
    match v {
        ViewAxis::Top => "top",
        ViewAxis::Front => "front",
        ViewAxis::Left => "left",
        ViewAxis::Right => "right",
    }
}

fn gen_three_view_l1(
    params: &TaskParams,
    policy: OptionPolicy,
    rng: &mut Rng,
) -> Result<Draft, GenError> {
    let style = RenderStyle::default();
    let corpus = part_corpus(params.knobs.grid3);
    'outer: for _ in 0..GEN_ATTEMPTS {
        let part = rng.pick(&corpus).clone();
        let views: Vec<(ViewAxis, VecDoc)> = [ViewAxis::Top, ViewAxis::Front, ViewAxis::Left]
            .iter()
            .map(|&v| (v, render_depth_view(&part, v, &style)))
            .collect();
        let iso = render_isometric(&part, &[], &style);
        // One orthographic view is questioned; the other two plus the
        // isometric form the reference bundle of exactly three images.
        let qi = rng.index(3);
        let (q_axis, questioned) = views[qi].clone();
        let (o_axis, other) = views[(qi + 1) % 3].clone();
        let _ = o_axis;

        let Ok(deleted) = transform_view_drawing(&questioned, DocTransform::DeleteInternalLine)
        else {
            continue 'outer;
        };
        let rotated = transform_view_drawing(
            if rng.chance(0.5) { &questioned } else { &other },
            DocTransform::Rotate90,
        )?;
        let flip_mode = if rng.chance(0.5) {
            DocTransform::FlipHorizontal
        } else {
            DocTransform::FlipVertical
        };
        let flipped = transform_view_drawing(
            if rng.chance(0.5) { &questioned } else { &other },
            flip_mode,
        )?;

        let cands: Vec<(VecDoc, DistractorTag)> = vec![
            (deleted, DistractorTag::LineDeleted),
            (rotated, DistractorTag::ViewRotated),
            (flipped, DistractorTag::ViewFlipped),
        ];
        let pos_digest = questioned.digest();
        let mut digests: Vec<SceneDigest> =
            cands.iter().map(|(d, _)| d.digest()).chain([pos_digest.clone()]).collect();
        digests.sort();
        digests.dedup();
        if digests.len() != cands.len() + 1 {
            continue 'outer;
        }
        // Re-render oracle.
        if render_depth_view(&part, q_axis, &style).digest() != pos_digest {
            continue 'outer;
        }

        let quota = distractor_quota(policy);
        let distractors: Vec<(OptionContent, DistractorTag)> = cands
            .into_iter()
            .take(quota)
            .map(|(d, t)| (OptionContent::Image(d), t))
            .collect();
        let references = vec![
            ("isometric".to_string(), iso),
            (view_label(views[(qi + 1) % 3].0).to_string(), views[(qi + 1) % 3].1.clone()),
            (view_label(views[(qi + 2) % 3].0).to_string(), views[(qi + 2) % 3].1.clone()),
        ];
        return Ok(Draft {
            question: Q_3V_L1.to_string(),
            references,
            positive: OptionContent::Image(questioned),
            positive_explanation: format!("The true {} view of the part.", view_label(q_axis)),
            distractors,
            policy,
            oracle_notes: vec![
                "answer equals a re-rendered orthographic view digest".into(),
                "transform distractors differ by digest".into(),
            ],
        });
    }
    Err(GenError::BudgetExhausted("three-view level 1 instance"))
}

pub fn gen_three_view(
    params: &TaskParams,
    policy: OptionPolicy,
    rng: &mut Rng,
) -> Result<Draft, GenError> {
    if params.level == 0 {
        gen_three_view_l0(params, policy, rng)
    } else {
        gen_three_view_l1(params, policy, rng)
    }
}
