//! Mental animation generators: arrow moving and block moving.

use super::distractor_quota;
use crate::options::{Draft, DistractorTag, GenError, OptionContent, OptionPolicy, GEN_ATTEMPTS};
use crate::params::TaskParams;
use spatialkit_core::patterns::COLOR_NAMES;
use spatialkit_core::render::{
    render_arrow_map, render_isometric_scene, render_single_arrow, side_by_side, RenderStyle,
    SceneDigest,
};
use spatialkit_core::rng::Rng;
use spatialkit_core::sims::arrows::{ArrowMapMove, ArrowMapState, ArrowMove, SingleArrowState};
use spatialkit_core::sims::blocks::{dir_label, BlockMove, BlockScene};
use spatialkit_core::sims::{generate_sequence, Simulate};

pub const Q_AM_RULES: &str = "An arrow moves on a grid by ego-centric commands: forward, backward, left and right are relative to its current heading, and the arrow turns to face its movement direction after every move.";
pub const Q_AM_MAP_RULES: &str = "Colored arrows move on a grid by ego-centric commands (forward, backward, left, right relative to each arrow's own heading; the mover turns to face its movement direction). Moving onto an occupied cell swaps the two arrows, and the displaced arrow turns as if it had moved along the opposite direction.";
pub const Q_BM_RULES: &str = "Colored cubes sit in a box. A cube may move one step along an axis onto a supported cell; moving onto an occupied cell swaps the two cubes, and any unsupported cube falls straight down afterwards.";

fn arrow_seq_text(ops: &[ArrowMove]) -> String {
    ops.iter()
        .map(|op| format!("{} {}", op.rel.label(), op.steps))
        .collect::<Vec<_>>()
        .join(", ")
}

fn arrowmap_seq_text(ops: &[ArrowMapMove]) -> String {
    ops.iter()
        .map(|op| format!("arrow at ({}, {}) {} {}", op.pos.0, op.pos.1, op.rel.label(), op.steps))
        .collect::<Vec<_>>()
        .join("; ")
}

fn block_seq_text(scene_trace: &[BlockScene], ops: &[BlockMove]) -> String {
    ops.iter()
        .enumerate()
        .map(|(i, op)| {
            let color = scene_trace[i]
                .color_at(op.from)
                .map(|c| COLOR_NAMES[c as usize % 6])
                .unwrap_or("?");
            format!(
                "move the {color} cube at ({}, {}, {}) one step {}",
                op.from.x,
                op.from.y,
                op.from.z,
                dir_label(op.dir)
            )
        })
        .collect::<Vec<_>>()
        .join("; ")
}

fn gen_arrow_l0(
    params: &TaskParams,
    policy: OptionPolicy,
    rng: &mut Rng,
) -> Result<Draft, GenError> {
    let style = RenderStyle::default();
    let (w, h) = params.knobs.grid2;
    'outer: for _ in 0..GEN_ATTEMPTS {
        let start = SingleArrowState::new(
            w,
            h,
            (rng.index(w) as i32, rng.index(h) as i32),
            rng.int(0, 3) as u8,
        );
        let Ok((ops, trace)) = generate_sequence(&start, params.knobs.steps, None, rng) else {
            continue;
        };
        let end = trace.last().unwrap().clone();
        let positive_text = arrow_seq_text(&ops);

        let quota = distractor_quota(policy);
        let mut distractors = Vec::new();
        let mut texts = vec![positive_text.clone()];
        let mut attempts = 0;
        while distractors.len() < quota {
            attempts += 1;
            if attempts > GEN_ATTEMPTS {
                continue 'outer;
            }
            let Ok((alt_ops, alt_trace)) =
                generate_sequence(&start, params.knobs.steps, Some(&end.digest()), rng)
            else {
                continue;
            };
            // Replay oracle for the distractor: its endpoint differs.
            debug_assert_ne!(alt_trace.last().unwrap().digest(), end.digest());
            let text = arrow_seq_text(&alt_ops);
            if texts.contains(&text) {
                continue;
            }
            texts.push(text.clone());
            distractors.push((OptionContent::Text(text), DistractorTag::WrongEndpoint));
        }

        // Replay oracle for the answer.
        let mut replay = start.clone();
        for op in &ops {
            replay = spatialkit_core::sims::arrows::arrow_move(&replay, op.rel, op.steps)
                .expect("recorded ops replay");
        }
        if replay.digest() != end.digest() {
            continue;
        }

        let reference = side_by_side(
            &render_single_arrow(&start, &style),
            &render_single_arrow(&end, &style),
            "START",
            "END",
        );
        return Ok(Draft {
            question: format!(
                "{Q_AM_RULES} The image shows the start state (left) and the end state (right). Which command sequence produces this result?"
            ),
            references: vec![("states".into(), reference)],
            positive: OptionContent::Text(positive_text),
            positive_explanation: "Replaying this sequence reaches the shown end state.".into(),
            distractors,
            policy,
            oracle_notes: vec![
                "replaying the answer reproduces the end state digest".into(),
                "replaying each distractor ends elsewhere".into(),
            ],
        });
    }
    Err(GenError::BudgetExhausted("arrow moving level 0 instance"))
}

fn gen_arrow_l1(
    params: &TaskParams,
    policy: OptionPolicy,
    rng: &mut Rng,
) -> Result<Draft, GenError> {
    let style = RenderStyle::default();
    let (w, h) = params.knobs.grid2;
    let state_mode = rng.chance(0.5);
    'outer: for _ in 0..GEN_ATTEMPTS {
        let start = ArrowMapState::random(w, h, 4, rng);
        let Ok((ops, trace)) = generate_sequence(&start, params.knobs.steps, None, rng) else {
            continue;
        };
        let end = trace.last().unwrap().clone();

        // Replay oracle.
        let mut replay = start.clone();
        for op in &ops {
            let Some(next) =
                spatialkit_core::sims::arrows::arrowmap_move(&replay, op.pos, op.rel, op.steps)
            else {
                continue 'outer;
            };
            replay = next;
        }
        if replay.digest() != end.digest() {
            continue;
        }

        let quota = distractor_quota(policy);
        if state_mode {
            // Predict the final state: image options.
            let positive_doc = render_arrow_map(&end, &style);
            let mut distractors = Vec::new();
            let mut seen: Vec<SceneDigest> = vec![positive_doc.digest()];
            let mut attempts = 0;
            while distractors.len() < quota {
                attempts += 1;
                if attempts > GEN_ATTEMPTS {
                    continue 'outer;
                }
                let Ok((_, alt_trace)) =
                    generate_sequence(&start, params.knobs.steps, Some(&end.digest()), rng)
                else {
                    continue;
                };
                let alt_end = alt_trace.last().unwrap();
                let doc = render_arrow_map(alt_end, &style);
                let dg = doc.digest();
                if seen.contains(&dg) {
                    continue;
                }
                seen.push(dg);
                distractors.push((OptionContent::Image(doc), DistractorTag::WrongEndpoint));
            }
            return Ok(Draft {
                question: format!(
                    "{Q_AM_MAP_RULES} The image shows the initial grid. Which option shows the grid after executing: {}?",
                    arrowmap_seq_text(&ops)
                ),
                references: vec![("start".into(), render_arrow_map(&start, &style))],
                positive: OptionContent::Image(positive_doc),
                positive_explanation: "The state reached by replaying the given sequence.".into(),
                distractors,
                policy,
                oracle_notes: vec![
                    "replaying the sequence reproduces the answer state".into(),
                    "distractor states come from sequences with different endpoints".into(),
                ],
            });
        }
        // Sequence mode: text options.
        let positive_text = arrowmap_seq_text(&ops);
        let mut distractors = Vec::new();
        let mut texts = vec![positive_text.clone()];
        let mut attempts = 0;
        while distractors.len() < quota {
            attempts += 1;
            if attempts > GEN_ATTEMPTS {
                continue 'outer;
            }
            let Ok((alt_ops, alt_trace)) =
                generate_sequence(&start, params.knobs.steps, Some(&end.digest()), rng)
            else {
                continue;
            };
            debug_assert_ne!(alt_trace.last().unwrap().digest(), end.digest());
            let text = arrowmap_seq_text(&alt_ops);
            if texts.contains(&text) {
                continue;
            }
            texts.push(text.clone());
            distractors.push((OptionContent::Text(text), DistractorTag::WrongEndpoint));
        }
        let reference = side_by_side(
            &render_arrow_map(&start, &style),
            &render_arrow_map(&end, &style),
            "START",
            "END",
        );
        return Ok(Draft {
            question: format!(
                "{Q_AM_MAP_RULES} The image shows the start grid (left) and the end grid (right). Which command sequence produces this result?"
            ),
            references: vec![("states".into(), reference)],
            positive: OptionContent::Text(positive_text),
            positive_explanation: "Replaying this sequence reaches the shown end state.".into(),
            distractors,
            policy,
            oracle_notes: vec![
                "replaying the answer reproduces the end state digest".into(),
                "replaying each distractor ends elsewhere".into(),
            ],
        });
    }
    Err(GenError::BudgetExhausted("arrow moving level 1 instance"))
}

pub fn gen_arrow_moving(
    params: &TaskParams,
    policy: OptionPolicy,
    rng: &mut Rng,
) -> Result<Draft, GenError> {
    if params.level == 0 {
        gen_arrow_l0(params, policy, rng)
    } else {
        gen_arrow_l1(params, policy, rng)
    }
}

pub fn gen_block_moving(
    params: &TaskParams,
    policy: OptionPolicy,
    rng: &mut Rng,
) -> Result<Draft, GenError> {
    let style = RenderStyle::default();
    'outer: for _ in 0..GEN_ATTEMPTS {
        let start = BlockScene::random(params.knobs.grid3, 6, rng);
        let Ok((ops, trace)) = generate_sequence(&start, params.knobs.steps, None, rng) else {
            continue;
        };
        let end = trace.last().unwrap().clone();
        if end.digest() == start.digest() {
            continue;
        }

        // Replay oracle plus per-step support invariant.
        let mut replay = start.clone();
        for op in &ops {
            let Some(next) = spatialkit_core::sims::blocks::block_move(&replay, op.from, op.dir)
            else {
                continue 'outer;
            };
            replay = next;
            if !replay.supported() {
                continue 'outer;
            }
        }
        if replay.digest() != end.digest() {
            continue;
        }

        let positive_text = block_seq_text(&trace, &ops);
        let quota = distractor_quota(policy);
        let mut distractors = Vec::new();
        let mut texts = vec![positive_text.clone()];
        let mut attempts = 0;
        while distractors.len() < quota {
            attempts += 1;
            if attempts > GEN_ATTEMPTS {
                continue 'outer;
            }
            let Ok((alt_ops, alt_trace)) =
                generate_sequence(&start, params.knobs.steps, Some(&end.digest()), rng)
            else {
                continue;
            };
            debug_assert_ne!(alt_trace.last().unwrap().digest(), end.digest());
            let text = block_seq_text(&alt_trace, &alt_ops);
            if texts.contains(&text) {
                continue;
            }
            texts.push(text.clone());
            distractors.push((OptionContent::Text(text), DistractorTag::WrongEndpoint));
        }

        let reference = side_by_side(
            &render_isometric_scene(&start, &style),
            &render_isometric_scene(&end, &style),
            "START",
            "END",
        );
        return Ok(Draft {
            question: format!(
                "{Q_BM_RULES} The image shows the initial scene (left) and the final scene (right). Which move sequence produces this result?"
            ),
            references: vec![("scenes".into(), reference)],
            positive: OptionContent::Text(positive_text),
            positive_explanation:
                "Replaying this sequence, with falling after each move, reaches the final scene."
                    .into(),
            distractors,
            policy,
            oracle_notes: vec![
                "replaying the answer reproduces the final scene digest".into(),
                "every intermediate scene satisfies the support invariant".into(),
                "replaying each distractor ends elsewhere".into(),
            ],
        });
    }
    Err(GenError::BudgetExhausted("block moving instance"))
}
