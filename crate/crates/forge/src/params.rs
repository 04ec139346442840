//! Task identities, per-level difficulty defaults and the suite table.
//!
//! The difficulty table is normative for this artifact and versioned; the
//! level semantics (what grows per level) follow the benchmark design, the
//! concrete numbers are fixed here.

use serde::{Deserialize, Serialize};

pub const PARAMS_VERSION: &str = "v1";
pub const GENERATOR_VERSION: &str = "0.1.0";

/// The 11 automatically generated task families. Serialized as the same
/// slugs the dataset directories use.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum TaskId {
    #[serde(rename = "2d_rotation")]
    Rotation2D,
    #[serde(rename = "3d_rotation")]
    Rotation3D,
    #[serde(rename = "three_view_projection")]
    ThreeView,
    #[serde(rename = "paper_folding")]
    PaperFolding,
    #[serde(rename = "cube_unfolding")]
    CubeUnfolding,
    #[serde(rename = "cube_reconstruction")]
    CubeReconstruction,
    #[serde(rename = "cross_section")]
    CrossSection,
    #[serde(rename = "cube_counting")]
    CubeCounting,
    #[serde(rename = "cube_assembly")]
    CubeAssembly,
    #[serde(rename = "arrow_moving")]
    ArrowMoving,
    #[serde(rename = "block_moving")]
    BlockMoving,
}

pub const ALL_TASKS: [TaskId; 11] = [
    TaskId::Rotation2D,
    TaskId::Rotation3D,
    TaskId::ThreeView,
    TaskId::PaperFolding,
    TaskId::CubeUnfolding,
    TaskId::CubeReconstruction,
    TaskId::CrossSection,
    TaskId::CubeCounting,
    TaskId::CubeAssembly,
    TaskId::ArrowMoving,
    TaskId::BlockMoving,
];

impl TaskId {
    pub fn slug(self) -> &'static str {
        match self {
            TaskId::Rotation2D => "2d_rotation",
            TaskId::Rotation3D => "3d_rotation",
            TaskId::ThreeView => "three_view_projection",
            TaskId::PaperFolding => "paper_folding",
            TaskId::CubeUnfolding => "cube_unfolding",
            TaskId::CubeReconstruction => "cube_reconstruction",
            TaskId::CrossSection => "cross_section",
            TaskId::CubeCounting => "cube_counting",
            TaskId::CubeAssembly => "cube_assembly",
            TaskId::ArrowMoving => "arrow_moving",
            TaskId::BlockMoving => "block_moving",
        }
    }

    pub fn from_slug(s: &str) -> Option<TaskId> {
        ALL_TASKS.iter().copied().find(|t| t.slug() == s)
    }

    pub fn levels(self) -> u8 {
        match self {
            TaskId::Rotation2D
            | TaskId::Rotation3D
            | TaskId::ThreeView
            | TaskId::ArrowMoving
            | TaskId::BlockMoving
            | TaskId::CubeAssembly => 2,
            _ => 3,
        }
    }

    /// Suite cases per level: 50 for the three-view task, 40 elsewhere.
    pub fn cases_per_level(self) -> u32 {
        match self {
            TaskId::ThreeView => 50,
            _ => 40,
        }
    }

    pub fn total_cases(self) -> u32 {
        self.levels() as u32 * self.cases_per_level()
    }

    /// Families carrying the fixed "None of the others is correct." slot D.
    pub fn uses_none_option(self) -> bool {
        matches!(self, TaskId::Rotation3D | TaskId::CubeUnfolding | TaskId::ThreeView)
    }
}

/// The full-suite table: 80/80/100/120/120/120/120/120/80/80/80 = 1100.
pub fn suite_table() -> Vec<(TaskId, u8, u32)> {
    let mut out = Vec::new();
    for task in ALL_TASKS {
        for level in 0..task.levels() {
            out.push((task, level, task.cases_per_level()));
        }
    }
    out
}

/// Face-pattern flavor per difficulty level.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum PatternMode {
    Colors,
    Glyphs,
    Dots,
}

/// Per-level size knobs; fields are read by the tasks they apply to.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct LevelParams {
    pub grid3: (usize, usize, usize),
    pub grid2: (usize, usize),
    pub folds: usize,
    pub punches: usize,
    pub steps: usize,
    pub views: usize,
    pub parts: usize,
    pub solids: usize,
    pub oblique: bool,
    pub pattern_mode: PatternMode,
}

/// Validated task parameters.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct TaskParams {
    pub task: TaskId,
    pub level: u8,
    pub knobs: LevelParams,
}

impl TaskParams {
    pub fn new(task: TaskId, level: u8) -> Option<TaskParams> {
        if level >= task.levels() {
            return None;
        }
        Some(TaskParams { task, level, knobs: level_params(task, level) })
    }
}

/// The versioned difficulty table.
pub fn level_params(task: TaskId, level: u8) -> LevelParams {
    let mut p = LevelParams {
        grid3: (3, 3, 3),
        grid2: (3, 3),
        folds: 2,
        punches: 1,
        steps: 3,
        views: 2,
        parts: 2,
        solids: 2,
        oblique: false,
        pattern_mode: PatternMode::Colors,
    };
    match (task, level) {
        (TaskId::Rotation2D, 0) => {}
        (TaskId::Rotation2D, _) => p.pattern_mode = PatternMode::Glyphs,
        (TaskId::Rotation3D, 0) => p.grid3 = (3, 3, 3),
        (TaskId::Rotation3D, _) => p.grid3 = (4, 4, 4),
        (TaskId::ThreeView, 0) => p.grid3 = (4, 4, 3),
        (TaskId::ThreeView, _) => p.grid3 = (6, 6, 6),
        (TaskId::PaperFolding, 0) => {
            p.grid2 = (4, 4);
            p.folds = 2;
            p.punches = 1;
        }
        (TaskId::PaperFolding, 1) => {
            p.grid2 = (5, 5);
            p.folds = 2;
            p.punches = 2;
        }
        (TaskId::PaperFolding, _) => {
            p.grid2 = (6, 6);
            p.folds = 3;
            p.punches = 3;
        }
        (TaskId::CubeUnfolding | TaskId::CubeReconstruction, 0) => {
            p.pattern_mode = PatternMode::Colors;
        }
        (TaskId::CubeUnfolding | TaskId::CubeReconstruction, 1) => {
            p.pattern_mode = PatternMode::Glyphs;
        }
        (TaskId::CubeUnfolding | TaskId::CubeReconstruction, _) => {
            p.pattern_mode = PatternMode::Dots;
        }
        (TaskId::CrossSection, 0) => p.solids = 2,
        (TaskId::CrossSection, 1) => p.solids = 3,
        (TaskId::CrossSection, _) => {
            p.solids = 3;
            p.oblique = true;
        }
        (TaskId::CubeCounting, 0) => {
            p.views = 2;
            p.grid3 = (3, 3, 3);
        }
        (TaskId::CubeCounting, 1) => {
            p.views = 3;
            p.grid3 = (3, 3, 3);
        }
        (TaskId::CubeCounting, _) => {
            p.views = 3;
            p.grid3 = (4, 4, 4);
        }
        (TaskId::CubeAssembly, 0) => {
            p.grid3 = (4, 4, 3);
            p.parts = 2;
        }
        (TaskId::CubeAssembly, _) => {
            p.grid3 = (5, 5, 4);
            p.parts = 3;
        }
        (TaskId::ArrowMoving, 0) => {
            p.grid2 = (3, 3);
            p.steps = 3;
        }
        (TaskId::ArrowMoving, _) => {
            p.grid2 = (4, 4);
            p.steps = 4;
        }
        (TaskId::BlockMoving, 0) => {
            p.grid3 = (3, 3, 2);
            p.steps = 2;
        }
        (TaskId::BlockMoving, _) => {
            p.grid3 = (3, 3, 3);
            p.steps = 3;
        }
    }
    p
}

/// Generation-wide configuration.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct GenConfig {
    /// Fraction of none-option instances where slot D is the answer.
    pub none_correct_rate: f64,
}

impl Default for GenConfig {
    fn default() -> Self {
        GenConfig { none_correct_rate: 0.10 }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn suite_totals_match_the_case_table() {
        let total: u32 = suite_table().iter().map(|(_, _, n)| *n).sum();
        assert_eq!(total, 1100);
        let per_task: Vec<u32> = ALL_TASKS.iter().map(|t| t.total_cases()).collect();
        assert_eq!(per_task, vec![80, 80, 100, 120, 120, 120, 120, 120, 80, 80, 80]);
    }

    #[test]
    fn task_ids_serialize_as_slugs() {
        for task in ALL_TASKS {
            let json = serde_json::to_string(&task).unwrap();
            assert_eq!(json, format!("\"{}\"", task.slug()));
            let back: TaskId = serde_json::from_str(&json).unwrap();
            assert_eq!(back, task);
        }
    }

    #[test]
    fn level_bounds_enforced() {
        assert!(TaskParams::new(TaskId::Rotation2D, 2).is_none());
        assert!(TaskParams::new(TaskId::PaperFolding, 2).is_some());
        assert!(TaskParams::new(TaskId::PaperFolding, 3).is_none());
    }

    #[test]
    fn level_knobs_monotone() {
        // Declared size knobs never shrink with level.
        for task in ALL_TASKS {
            for level in 1..task.levels() {
                let lo = level_params(task, level - 1);
                let hi = level_params(task, level);
                assert!(hi.folds >= lo.folds, "{task:?}");
                assert!(hi.punches >= lo.punches, "{task:?}");
                assert!(hi.steps >= lo.steps, "{task:?}");
                assert!(hi.views >= lo.views, "{task:?}");
                assert!(hi.parts >= lo.parts, "{task:?}");
                assert!(hi.solids >= lo.solids, "{task:?}");
                assert!(
                    hi.grid3.0 * hi.grid3.1 * hi.grid3.2 >= lo.grid3.0 * lo.grid3.1 * lo.grid3.2,
                    "{task:?}"
                );
                assert!(hi.grid2.0 * hi.grid2.1 >= lo.grid2.0 * lo.grid2.1, "{task:?}");
            }
        }
    }
}
