//! Mental folding generators: paper folding, cube unfolding, cube
//! reconstruction.

use super::distractor_quota;
use crate::options::{Draft, DistractorTag, GenError, OptionContent, OptionPolicy, GEN_ATTEMPTS};
use crate::params::{PatternMode, TaskParams};
use spatialkit_core::patterns::{
    canonical_net, corner_view, equivalent_net, fold_net, CubeCorner, FaceMap, FaceName,
    NetName, Pattern, PatternCell, CORNERS, CUBE_CORNERS, FACES, GLYPHS, NET_NAMES,
};
use spatialkit_core::render::{
    render_corner_view, render_hole_matrix, render_net, render_paper, transform_view_drawing,
    DocTransform, RenderStyle, SceneDigest, VecDoc,
};
use spatialkit_core::rng::Rng;
use spatialkit_core::sims::paper::{FoldOp, PaperState};

pub const Q_PF: &str = "A sheet of paper is folded step by step as shown; the red line marks each new crease and gray cells are folded away. Holes are then punched at the marked positions. Which option shows the sheet after it is fully unfolded?";
pub const Q_CU: &str = "The first image shows a cube viewed from one of its corners. Which net folds into this cube?";
pub const Q_CR_VIEW: &str = "The first image shows the unfolded net of a cube. Which option shows a view of the folded cube?";

// ---------------------------------------------------------------------------
// Paper folding.

/// Corrupt an unfolded hole matrix by removing, adding or swapping a row or
/// column of holes. Returns `None` when the edit is a no-op.
fn edit_holes(holes: &[Vec<bool>], rng: &mut Rng) -> Option<Vec<Vec<bool>>> {
    let rows = holes.len();
    let cols = holes[0].len();
    let mut out: Vec<Vec<bool>> = holes.to_vec();
    let mode = rng.index(6);
    match mode {
        // Remove all holes from one holed row / column.
        0 => {
            let holed: Vec<usize> = (0..rows).filter(|&r| holes[r].iter().any(|&h| h)).collect();
            let r = *rng.pick(&holed);
            out[r].iter_mut().for_each(|h| *h = false);
        }
        1 => {
            let holed: Vec<usize> =
                (0..cols).filter(|&c| (0..rows).any(|r| holes[r][c])).collect();
            let c = *rng.pick(&holed);
            (0..rows).for_each(|r| out[r][c] = false);
        }
        // Duplicate a holed row / column onto a neighbour.
        2 => {
            let holed: Vec<usize> = (0..rows).filter(|&r| holes[r].iter().any(|&h| h)).collect();
            let r = *rng.pick(&holed);
            let to = if r + 1 < rows { r + 1 } else { r.checked_sub(1)? };
            let src = out[r].clone();
            for (dst, s) in out[to].iter_mut().zip(src) {
                *dst |= s;
            }
        }
        3 => {
            let holed: Vec<usize> =
                (0..cols).filter(|&c| (0..rows).any(|r| holes[r][c])).collect();
            let c = *rng.pick(&holed);
            let to = if c + 1 < cols { c + 1 } else { c.checked_sub(1)? };
            for r in 0..rows {
                out[r][to] |= holes[r][c];
            }
        }
        // Swap two distinct rows / columns.
        4 => {
            let (a, b) = (rng.index(rows), rng.index(rows));
            out.swap(a, b);
        }
        _ => {
            let (a, b) = (rng.index(cols), rng.index(cols));
            for row in &mut out {
                row.swap(a, b);
            }
        }
    }
    if out == holes {
        None
    } else {
        Some(out)
    }
}

pub fn gen_paper_folding(
    params: &TaskParams,
    policy: OptionPolicy,
    rng: &mut Rng,
) -> Result<Draft, GenError> {
    let style = RenderStyle::default();
    'outer: for _ in 0..GEN_ATTEMPTS {
        // Fold program: random axis folds, the final fold diagonal. Each
        // fold state becomes one reference-strip image.
        let mut refs: Vec<(String, VecDoc)> = Vec::new();
        let mut p = PaperState::new(params.knobs.grid2.0, params.knobs.grid2.1);
        for step in 0..params.knobs.folds {
            let (r, c) = p.current_dims();
            let last = step + 1 == params.knobs.folds;
            let op = if last && r >= 2 && c >= 2 {
                FoldOp::Diagonal {
                    corner: *rng.pick(&CORNERS),
                    legs: rng.int(2, r.min(c) as i64) as usize,
                }
            } else if (rng.chance(0.5) && r >= 2) || c < 2 {
                FoldOp::Horizontal { line: rng.int(1, (r - 1) as i64) as usize }
            } else {
                FoldOp::Vertical { line: rng.int(1, (c - 1) as i64) as usize }
            };
            p = p.fold(op).map_err(GenError::Sim)?;
            refs.push((format!("fold_{}", step + 1), render_paper(&p, &style)));
        }
        let visible = p.visible_cells();
        if visible.len() < params.knobs.punches {
            continue;
        }
        let origin = p.region_origin();
        let mut pts: Vec<(usize, usize)> = Vec::new();
        let mut guard = 0;
        while pts.len() < params.knobs.punches {
            guard += 1;
            if guard > 200 {
                continue 'outer;
            }
            let &(ar, ac) = rng.pick(&visible);
            let rel = (ar - origin.0, ac - origin.1);
            if !pts.contains(&rel) {
                pts.push(rel);
            }
        }
        let Ok(punched) = p.punch(&pts) else { continue };
        refs.push(("punched".into(), render_paper(&punched, &style)));

        let unfolded = punched.unfold();
        // Refold roundtrip oracle.
        if punched.refold_visible(&unfolded) != punched.visible_holes() {
            continue;
        }
        let positive_doc = render_hole_matrix(&unfolded, &style);
        let pos_digest = positive_doc.digest();

        let quota = distractor_quota(policy);
        let mut distractors: Vec<(OptionContent, DistractorTag)> = Vec::new();
        let mut seen: Vec<SceneDigest> = vec![pos_digest];
        let mut attempts = 0;
        while distractors.len() < quota {
            attempts += 1;
            if attempts > GEN_ATTEMPTS * 4 {
                continue 'outer;
            }
            let Some(cand) = edit_holes(&unfolded, rng) else { continue };
            // The distractor must actually fail the refold oracle.
            if punched.refold_visible(&cand) == punched.visible_holes() {
                continue;
            }
            let doc = render_hole_matrix(&cand, &style);
            let dg = doc.digest();
            if seen.contains(&dg) {
                continue;
            }
            seen.push(dg);
            distractors.push((OptionContent::Image(doc), DistractorTag::HoleEdited));
        }
        return Ok(Draft {
            question: Q_PF.to_string(),
            references: refs,
            positive: OptionContent::Image(positive_doc),
            positive_explanation:
                "Unfolding mirrors every hole across each crease in reverse order.".into(),
            distractors,
            policy,
            oracle_notes: vec![
                "refolding the answer reproduces the punched visible layer".into(),
                "refolding any distractor does not".into(),
            ],
        });
    }
    Err(GenError::BudgetExhausted("paper folding instance"))
}

// ---------------------------------------------------------------------------
// Cube unfolding / reconstruction.

pub fn random_face_map(mode: PatternMode, rng: &mut Rng) -> FaceMap {
    match mode {
        PatternMode::Colors => {
            let mut order: Vec<u8> = (0..6).collect();
            rng.shuffle(&mut order);
            FaceMap::solid([order[0], order[1], order[2], order[3], order[4], order[5]])
        }
        PatternMode::Glyphs => {
            let mut glyphs = GLYPHS.to_vec();
            rng.shuffle(&mut glyphs);
            let cells: [PatternCell; 6] = std::array::from_fn(|i| {
                PatternCell::with_rotation(
                    Pattern::Glyph { glyph: glyphs[i], mirrored: false },
                    rng.int(0, 3) as u8,
                )
            });
            FaceMap::new(cells)
        }
        PatternMode::Dots => {
            let mut seen: Vec<[u8; 9]> = Vec::new();
            let cells: [PatternCell; 6] = std::array::from_fn(|_| loop {
                let dots: [u8; 9] = std::array::from_fn(|_| rng.index(6) as u8);
                let p = Pattern::Dots(dots);
                // Keep faces distinct and orientation-sensitive.
                if !seen.contains(&dots)
                    && p.symmetry() == spatialkit_core::patterns::Symmetry::Asymmetric
                {
                    seen.push(dots);
                    break PatternCell::new(p);
                }
            });
            FaceMap::new(cells)
        }
    }
}

/// Semantic view equality: same pattern and apparent orientation per slot.
fn views_equal(
    a: &spatialkit_core::patterns::CornerView,
    b: &spatialkit_core::patterns::CornerView,
) -> bool {
    a.slots.iter().zip(b.slots.iter()).all(|(x, y)| {
        let cell_x = PatternCell { pattern: x.pattern, rotation: x.apparent_turns }.canonical();
        let cell_y = PatternCell { pattern: y.pattern, rotation: y.apparent_turns }.canonical();
        cell_x == cell_y
    })
}

fn net_option(net: NetName, faces: &FaceMap, style: &RenderStyle) -> VecDoc {
    render_net(&equivalent_net(net, faces), faces, style)
}

pub fn gen_cube_unfolding(
    params: &TaskParams,
    policy: OptionPolicy,
    rng: &mut Rng,
) -> Result<Draft, GenError> {
    let style = RenderStyle::default();
    'outer: for _ in 0..GEN_ATTEMPTS {
        let faces = random_face_map(params.knobs.pattern_mode, rng);
        let corner = CubeCorner(rng.index(8) as u8);
        let cube = fold_net(&canonical_net(spatialkit_core::patterns::PIVOT_NET), &faces)?;
        let ref_view = corner_view(&cube, corner);
        let ref_doc = render_corner_view(&cube, corner, &style);

        // Positive: an equivalent net, optionally with hidden faces
        // shuffled (visible-face mapping fixed).
        let target = NET_NAMES[rng.index(11)];
        let visible = corner.visible_faces();
        let pos_faces = if rng.chance(0.5) {
            let hidden: Vec<FaceName> =
                FACES.iter().copied().filter(|f| !visible.contains(f)).collect();
            let mut cells: Vec<PatternCell> = hidden.iter().map(|&f| faces.get(f)).collect();
            rng.shuffle(&mut cells);
            let mut out = faces.clone();
            for (f, c) in hidden.iter().zip(cells) {
                out.set(*f, c);
            }
            out
        } else {
            faces.clone()
        };
        let positive_doc = net_option(target, &pos_faces, &style);
        // Fold-and-view oracle for the positive.
        let pos_cube = fold_net(&equivalent_net(target, &pos_faces), &pos_faces)?;
        if !views_equal(&corner_view(&pos_cube, corner), &ref_view) {
            continue 'outer;
        }

        // Distractors.
        let quota = distractor_quota(policy);
        let mut distractors: Vec<(OptionContent, DistractorTag)> = Vec::new();
        let mut seen: Vec<SceneDigest> = vec![positive_doc.digest(), ref_doc.digest()];
        let mut attempts = 0;
        while distractors.len() < quota {
            attempts += 1;
            if attempts > GEN_ATTEMPTS * 4 {
                continue 'outer;
            }
            let use_rotation = params.knobs.pattern_mode != PatternMode::Colors
                && (distractors.len() == 1 || rng.chance(0.4));
            let (cand_faces, tag) = if use_rotation {
                // Internal rotation of one visible face's pattern.
                let f = visible[rng.index(3)];
                let mut out = faces.clone();
                out.set(f, faces.get(f).rotated(1 + rng.int(0, 2) as u8));
                (out, DistractorTag::InternalRotation)
            } else {
                // Swap a visible face with its opposite.
                let f = visible[rng.index(3)];
                (faces.swapped(f, f.opposite()), DistractorTag::FaceSwapped)
            };
            let net = NET_NAMES[rng.index(11)];
            let cand_cube = fold_net(&equivalent_net(net, &cand_faces), &cand_faces)?;
            if views_equal(&corner_view(&cand_cube, corner), &ref_view) {
                continue;
            }
            let doc = net_option(net, &cand_faces, &style);
            let dg = doc.digest();
            if seen.contains(&dg) {
                continue;
            }
            seen.push(dg);
            distractors.push((OptionContent::Image(doc), tag));
        }
        return Ok(Draft {
            question: Q_CU.to_string(),
            references: vec![("corner_view".into(), ref_doc)],
            positive: OptionContent::Image(positive_doc),
            positive_explanation: format!(
                "The {} net folds into the pictured cube.",
                target.label()
            ),
            distractors,
            policy,
            oracle_notes: vec![
                "folding the answer net reproduces the reference corner view".into(),
                "folding any distractor net does not".into(),
            ],
        });
    }
    Err(GenError::BudgetExhausted("cube unfolding instance"))
}

pub fn gen_cube_reconstruction(
    params: &TaskParams,
    policy: OptionPolicy,
    rng: &mut Rng,
) -> Result<Draft, GenError> {
    if rng.chance(0.5) {
        gen_cr_view_variant(params, policy, rng)
    } else {
        gen_cr_opposite_variant(params, policy, rng)
    }
}

fn gen_cr_view_variant(
    params: &TaskParams,
    policy: OptionPolicy,
    rng: &mut Rng,
) -> Result<Draft, GenError> {
    let style = RenderStyle::default();
    'outer: for _ in 0..GEN_ATTEMPTS {
        let faces = random_face_map(params.knobs.pattern_mode, rng);
        let net = NET_NAMES[rng.index(11)];
        let layout = canonical_net(net);
        let ref_doc = render_net(&layout, &faces, &style);
        let cube = fold_net(&layout, &faces)?;

        let all_views: Vec<SceneDigest> = CUBE_CORNERS
            .iter()
            .map(|&c| render_corner_view(&cube, c, &style).digest())
            .collect();
        let corner = CubeCorner(rng.index(8) as u8);
        let positive_doc = render_corner_view(&cube, corner, &style);

        let quota = distractor_quota(policy);
        let mut distractors: Vec<(OptionContent, DistractorTag)> = Vec::new();
        let mut seen: Vec<SceneDigest> = vec![positive_doc.digest()];
        let mut attempts = 0;
        while distractors.len() < quota {
            attempts += 1;
            if attempts > GEN_ATTEMPTS * 4 {
                continue 'outer;
            }
            let c2 = CubeCorner(rng.index(8) as u8);
            let sample = render_corner_view(&cube, c2, &style);
            let mode = if rng.chance(0.5) {
                DocTransform::FlipHorizontal
            } else {
                DocTransform::FlipVertical
            };
            let doc = transform_view_drawing(&sample, mode)?;
            let dg = doc.digest();
            // Mirror oracle: the flipped view must match no corner view.
            if all_views.contains(&dg) || seen.contains(&dg) {
                continue;
            }
            seen.push(dg);
            distractors.push((OptionContent::Image(doc), DistractorTag::Mirrored));
        }
        return Ok(Draft {
            question: Q_CR_VIEW.to_string(),
            references: vec![("net".into(), ref_doc)],
            positive: OptionContent::Image(positive_doc),
            positive_explanation: "A true corner view of the folded cube.".into(),
            distractors,
            policy,
            oracle_notes: vec![
                "answer digest appears among the 8 corner views of the folded cube".into(),
                "every mirrored distractor digest does not".into(),
            ],
        });
    }
    Err(GenError::BudgetExhausted("cube reconstruction view instance"))
}

fn gen_cr_opposite_variant(
    _params: &TaskParams,
    policy: OptionPolicy,
    rng: &mut Rng,
) -> Result<Draft, GenError> {
    use spatialkit_core::patterns::COLOR_NAMES;
    let style = RenderStyle::default();
    // The opposite-face variant always uses solid colors so faces have
    // names the question text can use.
    let faces = random_face_map(PatternMode::Colors, rng);
    let net = NET_NAMES[rng.index(11)];
    let layout = canonical_net(net);
    let ref_doc = render_net(&layout, &faces, &style);
    let cube = fold_net(&layout, &faces)?;

    let asked = FACES[rng.index(6)];
    let asked_color = match faces.get(asked).pattern {
        Pattern::Solid(c) => c,
        _ => unreachable!("colors mode"),
    };
    let opposite = spatialkit_core::patterns::opposite_face(&cube, asked);
    let answer_color = match faces.get(opposite).pattern {
        Pattern::Solid(c) => c,
        _ => unreachable!("colors mode"),
    };
    // Distractors: colors of three adjacent faces.
    let mut adjacent: Vec<u8> = FACES
        .iter()
        .filter(|&&f| f != asked && f != opposite)
        .map(|&f| match faces.get(f).pattern {
            Pattern::Solid(c) => c,
            _ => unreachable!(),
        })
        .collect();
    rng.shuffle(&mut adjacent);
    let quota = distractor_quota(policy);
    let distractors: Vec<(OptionContent, DistractorTag)> = adjacent
        .into_iter()
        .take(quota)
        .map(|c| {
            (OptionContent::Text(COLOR_NAMES[c as usize].to_string()), DistractorTag::WrongColor)
        })
        .collect();
    Ok(Draft {
        question: format!(
            "The image shows the unfolded net of a cube. After folding, which color is on the face opposite the {} face?",
            COLOR_NAMES[asked_color as usize]
        ),
        references: vec![("net".into(), ref_doc)],
        positive: OptionContent::Text(COLOR_NAMES[answer_color as usize].to_string()),
        positive_explanation: format!(
            "Folding the net puts {} opposite {}.",
            COLOR_NAMES[answer_color as usize], COLOR_NAMES[asked_color as usize]
        ),
        distractors,
        policy,
        oracle_notes: vec!["fold adjacency confirms the opposite pair".into()],
    })
}
