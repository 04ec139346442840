//! Option material produced by the task generators, before shuffling.

use serde::{Deserialize, Serialize};
use spatialkit_core::render::VecDoc;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum GenError {
    #[error("resample budget exhausted while generating {0}")]
    BudgetExhausted(&'static str),
    #[error("voxel error: {0}")]
    Voxel(#[from] spatialkit_core::voxel::VoxelError),
    #[error("sim error: {0}")]
    Sim(#[from] spatialkit_core::sims::SimError),
    #[error("solid error: {0}")]
    Solid(#[from] spatialkit_core::solids::SolidError),
    #[error("pattern error: {0}")]
    Pattern(#[from] spatialkit_core::patterns::PatternError),
    #[error("render error: {0}")]
    Render(#[from] spatialkit_core::render::RenderError),
}

/// Budget shared by the per-slot and whole-instance resample loops.
pub const GEN_ATTEMPTS: usize = 64;

/// What a distractor is, for the explanation record.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum DistractorTag {
    Mirrored,
    InternalRotation,
    CubeRemoved,
    CubeAdded,
    FaceSwapped,
    RightViewSubstituted,
    RemarkedView,
    LineDeleted,
    ViewRotated,
    ViewFlipped,
    HoleEdited,
    WrongEndpoint,
    WrongCount,
    ProportionAltered,
    WrongColor,
    NoneOfOthers,
}

impl DistractorTag {
    /// One-line template sentence recorded with every incorrect option.
    pub fn sentence(self) -> &'static str {
        match self {
            DistractorTag::Mirrored => "This option is a mirror image, not a rotation.",
            DistractorTag::InternalRotation => {
                "Internal pattern components are rotated relative to the reference."
            }
            DistractorTag::CubeRemoved => "One cube was removed before transforming.",
            DistractorTag::CubeAdded => "One extra cube was added to the correct part.",
            DistractorTag::FaceSwapped => {
                "Two faces exchanged their patterns, so the fold no longer matches the view."
            }
            DistractorTag::RightViewSubstituted => "This is the right view, not the left view.",
            DistractorTag::RemarkedView => "The marked cubes are in the wrong positions.",
            DistractorTag::LineDeleted => "One internal line of the true view was deleted.",
            DistractorTag::ViewRotated => "The view was rotated by 90 degrees.",
            DistractorTag::ViewFlipped => "The view was mirrored.",
            DistractorTag::HoleEdited => {
                "The hole pattern was altered and violates the fold symmetry."
            }
            DistractorTag::WrongEndpoint => {
                "Replaying this sequence ends in a different state."
            }
            DistractorTag::WrongCount => {
                "This count fits the view-derived bounds but not the hidden stack."
            }
            DistractorTag::ProportionAltered => {
                "The section comes from a composite with altered proportions."
            }
            DistractorTag::WrongColor => "This color belongs to a different face.",
            DistractorTag::NoneOfOthers => "Every pictured option is incorrect.",
        }
    }
}

/// One option's payload.
#[derive(Debug, Clone)]
pub enum OptionContent {
    Image(VecDoc),
    Text(String),
    Number(i64),
}

impl OptionContent {
    pub fn is_image(&self) -> bool {
        matches!(self, OptionContent::Image(_))
    }

    /// Digest for image options; inline value otherwise.
    pub fn key(&self) -> String {
        match self {
            OptionContent::Image(doc) => doc.digest().0,
            OptionContent::Text(t) => format!("text:{t}"),
            OptionContent::Number(n) => format!("num:{n}"),
        }
    }
}

/// How assemble_instance slots the options.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum OptionPolicy {
    /// Shuffle positive and distractors uniformly over A-D.
    ShuffleAll,
    /// "None of the others is correct." pinned at D; the image options
    /// shuffle over A-C. When `none_correct` the image slots are all
    /// distractors and D is the answer.
    NoneAtD { none_correct: bool },
}

/// Everything a generator hands to instance assembly. When the policy is
/// `NoneAtD { none_correct: true }` the positive is still carried for the
/// oracle record but does not appear among the options.
#[derive(Debug, Clone)]
pub struct Draft {
    pub question: String,
    pub references: Vec<(String, VecDoc)>,
    pub positive: OptionContent,
    pub positive_explanation: String,
    pub distractors: Vec<(OptionContent, DistractorTag)>,
    pub policy: OptionPolicy,
    /// Human-readable oracle outcomes, one line per check.
    pub oracle_notes: Vec<String>,
}

impl Draft {
    /// Image-option digests must be pairwise distinct; text and number
    /// options must be pairwise distinct among themselves.
    pub fn options_distinct(&self) -> bool {
        let mut keys: Vec<String> = Vec::new();
        let include_positive = !matches!(self.policy, OptionPolicy::NoneAtD { none_correct: true });
        if include_positive {
            keys.push(self.positive.key());
        }
        for (d, _) in &self.distractors {
            keys.push(d.key());
        }
        let mut sorted = keys.clone();
        sorted.sort();
        sorted.dedup();
        sorted.len() == keys.len()
    }
}

pub const NONE_OPTION_TEXT: &str = "None of the others is correct.";
