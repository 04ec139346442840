//! The 11 task generators.
//!
//! Common contract: `generate(params, seed, cfg)` is pure in its arguments,
//! validates its own oracle before returning, and errors only when a
//! resample budget runs out (the caller retries with the next derived seed
//! or reports).

mod animation;
mod folding;
mod penetration;
mod rotation;

use crate::options::{Draft, GenError, OptionPolicy};
use crate::params::{GenConfig, TaskId, TaskParams};
use spatialkit_core::rng::Rng;

pub use rotation::part_corpus;

/// Generate one validated draft instance.
pub fn generate(params: &TaskParams, seed: u64, cfg: &GenConfig) -> Result<Draft, GenError> {
    let mut rng = Rng::from_seed(seed);
    // Families with the pinned none option decide its correctness up front
    // so the draw order stays stable per seed.
    let policy = if params.task.uses_none_option() {
        OptionPolicy::NoneAtD { none_correct: rng.chance(cfg.none_correct_rate) }
    } else {
        OptionPolicy::ShuffleAll
    };
    let draft = match params.task {
        TaskId::Rotation2D => rotation::gen_2d_rotation(params, policy, &mut rng)?,
        TaskId::Rotation3D => rotation::gen_3d_rotation(params, policy, &mut rng)?,
        TaskId::ThreeView => rotation::gen_three_view(params, policy, &mut rng)?,
        TaskId::PaperFolding => folding::gen_paper_folding(params, policy, &mut rng)?,
        TaskId::CubeUnfolding => folding::gen_cube_unfolding(params, policy, &mut rng)?,
        TaskId::CubeReconstruction => folding::gen_cube_reconstruction(params, policy, &mut rng)?,
        TaskId::CrossSection => penetration::gen_cross_section(params, policy, &mut rng)?,
        TaskId::CubeCounting => penetration::gen_cube_counting(params, policy, &mut rng)?,
        TaskId::CubeAssembly => penetration::gen_cube_assembly(params, policy, &mut rng)?,
        TaskId::ArrowMoving => animation::gen_arrow_moving(params, policy, &mut rng)?,
        TaskId::BlockMoving => animation::gen_block_moving(params, policy, &mut rng)?,
    };
    debug_assert!(draft.options_distinct());
    Ok(draft)
}

/// Expected distractor-slot count for a policy: the none slot replaces one
/// image distractor unless it is itself the answer.
pub(crate) fn distractor_quota(policy: OptionPolicy) -> usize {
    match policy {
        OptionPolicy::ShuffleAll => 3,
        OptionPolicy::NoneAtD { none_correct: false } => 2,
        OptionPolicy::NoneAtD { none_correct: true } => 3,
    }
}
