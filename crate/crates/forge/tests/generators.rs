//! End-to-end checks per task family: schema shape, oracle-backed answers,
//! distractor refutation and determinism.

use spatialkit_forge::dataset::{OptionRecord, LETTERS};
use spatialkit_forge::options::NONE_OPTION_TEXT;
use spatialkit_forge::params::{GenConfig, TaskId, ALL_TASKS};
use spatialkit_forge::generate_instance;

fn cfg() -> GenConfig {
    GenConfig::default()
}

#[test]
fn every_task_level_generates_valid_instances() {
    for task in ALL_TASKS {
        for level in 0..task.levels() {
            for index in 0..3u32 {
                let inst = generate_instance(task, level, 7, index, &cfg())
                    .unwrap_or_else(|e| panic!("{task:?} l{level} i{index}: {e}"));
                let meta = &inst.meta;
                assert_eq!(meta.options.len(), 4, "{task:?}");
                assert!(LETTERS.contains(&meta.answer));
                assert!(!meta.question.is_empty());
                assert!(!meta.references.is_empty());
                // Every referenced image file exists in the payload.
                for r in &meta.references {
                    assert!(inst.files.iter().any(|(p, _)| p == r), "{task:?} missing {r}");
                }
                for opt in &meta.options {
                    if let OptionRecord::Image { path } = opt {
                        assert!(inst.files.iter().any(|(p, _)| p == path));
                    }
                }
                // Explanations cover all four letters.
                assert_eq!(meta.explanation.options.len(), 4);
                // Image options pairwise distinct by bytes.
                let image_bytes: Vec<&Vec<u8>> = meta
                    .options
                    .iter()
                    .filter_map(|o| match o {
                        OptionRecord::Image { path } => {
                            inst.files.iter().find(|(p, _)| p == path).map(|(_, b)| b)
                        }
                        _ => None,
                    })
                    .collect();
                for i in 0..image_bytes.len() {
                    for j in i + 1..image_bytes.len() {
                        assert_ne!(image_bytes[i], image_bytes[j], "{task:?} duplicate option");
                    }
                }
            }
        }
    }
}

#[test]
fn generation_is_deterministic() {
    for task in [TaskId::CubeUnfolding, TaskId::BlockMoving, TaskId::CrossSection] {
        let a = generate_instance(task, 0, 42, 0, &cfg()).unwrap();
        let b = generate_instance(task, 0, 42, 0, &cfg()).unwrap();
        assert_eq!(a.meta, b.meta);
        assert_eq!(a.files, b.files);
    }
}

#[test]
fn none_option_families_pin_slot_d() {
    for task in [TaskId::Rotation3D, TaskId::CubeUnfolding, TaskId::ThreeView] {
        assert!(task.uses_none_option());
        let inst = generate_instance(task, 0, 11, 0, &cfg()).unwrap();
        match &inst.meta.options[3] {
            OptionRecord::Text { value } => assert_eq!(value, NONE_OPTION_TEXT),
            other => panic!("{task:?}: expected none text at D, got {other:?}"),
        }
    }
    for task in [TaskId::PaperFolding, TaskId::CubeCounting, TaskId::ArrowMoving] {
        assert!(!task.uses_none_option());
    }
}

#[test]
fn cube_counting_options_are_numbers_in_paper_bounds() {
    for index in 0..5 {
        let inst = generate_instance(TaskId::CubeCounting, 0, 3, index, &cfg()).unwrap();
        let nums: Vec<i64> = inst
            .meta
            .options
            .iter()
            .map(|o| match o {
                OptionRecord::Number { value } => *value,
                other => panic!("expected numeric options, got {other:?}"),
            })
            .collect();
        let mut sorted = nums.clone();
        sorted.sort();
        sorted.dedup();
        assert_eq!(sorted.len(), 4, "distinct numeric options");
        // The explanation records the bounds; all options lie inside.
        let note = &inst.meta.explanation.correct;
        let bounds: Vec<i64> = note
            .split(['[', ']', ','])
            .filter_map(|s| s.trim().parse().ok())
            .collect();
        let (lo, hi) = (bounds[bounds.len() - 2], bounds[bounds.len() - 1]);
        for n in nums {
            assert!(n >= lo && n <= hi, "option {n} outside [{lo}, {hi}]");
        }
    }
}

#[test]
fn paper_folding_reference_strip_has_fold_states() {
    let inst = generate_instance(TaskId::PaperFolding, 0, 21, 0, &cfg()).unwrap();
    // Level 0: two folds plus the punched sheet.
    assert_eq!(inst.meta.references.len(), 3);
    let inst2 = generate_instance(TaskId::PaperFolding, 2, 21, 0, &cfg()).unwrap();
    assert_eq!(inst2.meta.references.len(), 4);
}

#[test]
fn three_view_reference_bundle_has_three_images() {
    for level in 0..2 {
        let inst = generate_instance(TaskId::ThreeView, level, 5, 0, &cfg()).unwrap();
        assert_eq!(inst.meta.references.len(), 3, "level {level}");
    }
}

#[test]
fn arrow_and_block_options_are_text_sequences() {
    let inst = generate_instance(TaskId::ArrowMoving, 0, 9, 0, &cfg()).unwrap();
    for opt in &inst.meta.options {
        match opt {
            OptionRecord::Text { value } => assert!(value.contains(' ')),
            other => panic!("expected text options, got {other:?}"),
        }
    }
    let inst = generate_instance(TaskId::BlockMoving, 0, 9, 0, &cfg()).unwrap();
    for opt in &inst.meta.options {
        match opt {
            OptionRecord::Text { value } => assert!(value.contains("cube")),
            other => panic!("expected text options, got {other:?}"),
        }
    }
}

#[test]
fn part_corpus_is_large_enough() {
    // The three-view Level 1 generator draws from a bundled corpus of
    // bracket/slot/boss/step parts; it must offer at least 30 shapes.
    let parts = spatialkit_forge::tasks::part_corpus(
        spatialkit_forge::params::level_params(TaskId::ThreeView, 1).grid3,
    );
    assert!(parts.len() >= 30, "corpus holds {}", parts.len());
    // All parts are solid voxel models with at least one cube.
    for p in &parts {
        assert!(p.count() > 0);
    }
}

#[test]
fn cube_assembly_negatives_differ_by_one_cube() {
    let inst = generate_instance(TaskId::CubeAssembly, 0, 13, 0, &cfg()).unwrap();
    let tags: Vec<&str> = inst
        .meta
        .explanation
        .options
        .values()
        .map(|e| e.tag.as_str())
        .collect();
    assert!(tags.iter().any(|t| *t == "cuberemoved" || *t == "cubeadded"));
}
