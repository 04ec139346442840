//! Instance schema, option shuffling with answer-letter bookkeeping,
//! on-disk layout, manifests and dataset statistics.
//!
//! Layout: `root/<task>/<level>/<id>/question.json` plus `images/*.svg`,
//! with `manifest.json` at the root. Writing is idempotent for identical
//! inputs and errors on a collision with different content.

use crate::options::{Draft, DistractorTag, OptionContent, OptionPolicy, NONE_OPTION_TEXT};
use crate::params::{GenConfig, TaskId, GENERATOR_VERSION, PARAMS_VERSION};
use serde::{Deserialize, Serialize};
use spatialkit_core::rng::Rng;
use std::collections::BTreeMap;
use std::io::Write;
use std::path::{Path, PathBuf};
use thiserror::Error;

#[derive(Debug, Error)]
pub enum DatasetError {
    #[error("io error at {0}: {1}")]
    Io(PathBuf, std::io::Error),
    #[error("existing file {0} differs from the regenerated content")]
    Collision(PathBuf),
    #[error("manifest missing or unreadable at {0}")]
    BadManifest(PathBuf),
    #[error("json error: {0}")]
    Json(#[from] serde_json::Error),
}

pub const LETTERS: [char; 4] = ['A', 'B', 'C', 'D'];
pub const SCHEMA_VERSION: u32 = 1;

/// One serialized option.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum OptionRecord {
    Image { path: String },
    Text { value: String },
    Number { value: i64 },
}

impl OptionRecord {
    pub fn modality(&self) -> &'static str {
        match self {
            OptionRecord::Image { .. } => "image",
            OptionRecord::Text { .. } => "text",
            OptionRecord::Number { .. } => "number",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct OptionExplanation {
    pub tag: String,
    pub note: String,
}

/// The unit of the dataset and of scoring.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PuzzleInstance {
    pub schema_version: u32,
    pub id: String,
    pub task: TaskId,
    pub level: u8,
    pub question: String,
    pub references: Vec<String>,
    pub options: Vec<OptionRecord>,
    pub answer: char,
    /// Why the answer is right and each distractor wrong.
    pub explanation: ExplanationRecord,
    pub seed: u64,
    pub generator_version: String,
    pub params_version: String,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ExplanationRecord {
    pub correct: String,
    pub options: BTreeMap<String, OptionExplanation>,
    pub oracle_notes: Vec<String>,
}

/// A fully assembled instance: metadata plus the files to write, with
/// paths relative to the instance directory.
#[derive(Debug, Clone)]
pub struct GeneratedInstance {
    pub meta: PuzzleInstance,
    pub files: Vec<(String, Vec<u8>)>,
}

/// Shuffle a draft's options into lettered slots and render the files.
/// The draft's policy decides slotting: uniform over all four letters, or
/// the none option pinned at D with images shuffled over A-C.
pub fn assemble_instance(
    draft: &Draft,
    task: TaskId,
    level: u8,
    id: &str,
    seed: u64,
    rng: &mut Rng,
) -> GeneratedInstance {
    // (content, correct?, tag)
    let mut slots: Vec<(OptionContent, bool, Option<DistractorTag>)> = Vec::new();
    match draft.policy {
        OptionPolicy::ShuffleAll => {
            slots.push((draft.positive.clone(), true, None));
            for (c, t) in &draft.distractors {
                slots.push((c.clone(), false, Some(*t)));
            }
            rng.shuffle(&mut slots);
        }
        OptionPolicy::NoneAtD { none_correct } => {
            if none_correct {
                for (c, t) in draft.distractors.iter().take(3) {
                    slots.push((c.clone(), false, Some(*t)));
                }
                rng.shuffle(&mut slots);
                slots.push((
                    OptionContent::Text(NONE_OPTION_TEXT.to_string()),
                    true,
                    Some(DistractorTag::NoneOfOthers),
                ));
            } else {
                slots.push((draft.positive.clone(), true, None));
                for (c, t) in draft.distractors.iter().take(2) {
                    slots.push((c.clone(), false, Some(*t)));
                }
                rng.shuffle(&mut slots);
                slots.push((
                    OptionContent::Text(NONE_OPTION_TEXT.to_string()),
                    false,
                    Some(DistractorTag::NoneOfOthers),
                ));
            }
        }
    }
    assert_eq!(slots.len(), 4, "an instance always carries four options");
    assert_eq!(slots.iter().filter(|(_, correct, _)| *correct).count(), 1);

    let mut files: Vec<(String, Vec<u8>)> = Vec::new();
    let mut references = Vec::new();
    for (i, (name, doc)) in draft.references.iter().enumerate() {
        let path = format!("images/ref_{i}_{name}.svg");
        files.push((path.clone(), doc.to_svg().into_bytes()));
        references.push(path);
    }

    let mut options = Vec::new();
    let mut answer = 'A';
    let mut explanations: BTreeMap<String, OptionExplanation> = BTreeMap::new();
    for (slot, (content, correct, tag)) in slots.into_iter().enumerate() {
        let letter = LETTERS[slot];
        if correct {
            answer = letter;
        }
        let record = match content {
            OptionContent::Image(doc) => {
                let path = format!("images/option_{}.svg", letter.to_ascii_lowercase());
                files.push((path.clone(), doc.to_svg().into_bytes()));
                OptionRecord::Image { path }
            }
            OptionContent::Text(value) => OptionRecord::Text { value },
            OptionContent::Number(value) => OptionRecord::Number { value },
        };
        options.push(record);
        let (tag_str, note) = match (correct, tag) {
            (true, _) => ("correct".to_string(), draft.positive_explanation.clone()),
            (false, Some(t)) => {
                (format!("{t:?}").to_lowercase(), t.sentence().to_string())
            }
            (false, None) => unreachable!("distractors always carry a tag"),
        };
        explanations.insert(letter.to_string(), OptionExplanation { tag: tag_str, note });
    }

    let meta = PuzzleInstance {
        schema_version: SCHEMA_VERSION,
        id: id.to_string(),
        task,
        level,
        question: draft.question.clone(),
        references,
        options,
        answer,
        explanation: ExplanationRecord {
            correct: draft.positive_explanation.clone(),
            options: explanations,
            oracle_notes: draft.oracle_notes.clone(),
        },
        seed,
        generator_version: GENERATOR_VERSION.to_string(),
        params_version: PARAMS_VERSION.to_string(),
    };
    let json = serde_json::to_string_pretty(&meta).expect("instance serializes") + "\n";
    files.push(("question.json".to_string(), json.into_bytes()));
    GeneratedInstance { meta, files }
}

// ---------------------------------------------------------------------------
// Manifest and persistence.

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ManifestEntry {
    pub id: String,
    pub task: TaskId,
    pub level: u8,
    pub path: String,
    pub answer: char,
    pub seed: u64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Manifest {
    pub schema_version: u32,
    pub generator_version: String,
    pub params_version: String,
    pub master_seed: u64,
    pub none_correct_rate: f64,
    /// task slug -> level -> count.
    pub counts: BTreeMap<String, BTreeMap<String, u32>>,
    pub instances: Vec<ManifestEntry>,
}

pub fn instance_dir(task: TaskId, level: u8, id: &str) -> String {
    format!("{}/{}/{}", task.slug(), level, id)
}

fn write_file_idempotent(path: &Path, bytes: &[u8]) -> Result<(), DatasetError> {
    if let Ok(existing) = std::fs::read(path) {
        if existing == bytes {
            return Ok(());
        }
        return Err(DatasetError::Collision(path.to_path_buf()));
    }
    if let Some(parent) = path.parent() {
        std::fs::create_dir_all(parent).map_err(|e| DatasetError::Io(parent.into(), e))?;
    }
    let mut f =
        std::fs::File::create(path).map_err(|e| DatasetError::Io(path.to_path_buf(), e))?;
    f.write_all(bytes).map_err(|e| DatasetError::Io(path.to_path_buf(), e))?;
    Ok(())
}

/// Write instances under `root` and the manifest; byte-stable and idempotent
/// under fixed inputs.
pub fn write_dataset(
    instances: &[GeneratedInstance],
    root: &Path,
    master_seed: u64,
    cfg: &GenConfig,
) -> Result<Manifest, DatasetError> {
    let mut counts: BTreeMap<String, BTreeMap<String, u32>> = BTreeMap::new();
    let mut entries = Vec::new();
    for inst in instances {
        let dir = instance_dir(inst.meta.task, inst.meta.level, &inst.meta.id);
        for (rel, bytes) in &inst.files {
            write_file_idempotent(&root.join(&dir).join(rel), bytes)?;
        }
        *counts
            .entry(inst.meta.task.slug().to_string())
            .or_default()
            .entry(inst.meta.level.to_string())
            .or_default() += 1;
        entries.push(ManifestEntry {
            id: inst.meta.id.clone(),
            task: inst.meta.task,
            level: inst.meta.level,
            path: dir,
            answer: inst.meta.answer,
            seed: inst.meta.seed,
        });
    }
    let manifest = Manifest {
        schema_version: SCHEMA_VERSION,
        generator_version: GENERATOR_VERSION.to_string(),
        params_version: PARAMS_VERSION.to_string(),
        master_seed,
        none_correct_rate: cfg.none_correct_rate,
        counts,
        instances: entries,
    };
    let json = serde_json::to_string_pretty(&manifest)? + "\n";
    write_file_idempotent(&root.join("manifest.json"), json.as_bytes())?;
    Ok(manifest)
}

pub fn read_manifest(root: &Path) -> Result<Manifest, DatasetError> {
    let path = root.join("manifest.json");
    let bytes = std::fs::read(&path).map_err(|_| DatasetError::BadManifest(path.clone()))?;
    Ok(serde_json::from_slice(&bytes)?)
}

pub fn read_instance(root: &Path, entry: &ManifestEntry) -> Result<PuzzleInstance, DatasetError> {
    let path = root.join(&entry.path).join("question.json");
    let bytes = std::fs::read(&path).map_err(|e| DatasetError::Io(path.clone(), e))?;
    Ok(serde_json::from_slice(&bytes)?)
}

// ---------------------------------------------------------------------------
// Statistics.

#[derive(Debug, Clone, Serialize)]
pub struct StatsReport {
    pub total: usize,
    pub answer_histogram: BTreeMap<String, usize>,
    pub answer_percent: BTreeMap<String, f64>,
    pub modality_counts: BTreeMap<String, usize>,
    pub per_task_level: BTreeMap<String, BTreeMap<String, usize>>,
}

/// Answer-letter histogram, option-modality counts and per-task/level
/// counts, recomputed from the instance files (not the manifest counts).
pub fn dataset_stats(root: &Path, manifest: &Manifest) -> Result<StatsReport, DatasetError> {
    let mut histogram: BTreeMap<String, usize> = BTreeMap::new();
    let mut modality: BTreeMap<String, usize> = BTreeMap::new();
    let mut per: BTreeMap<String, BTreeMap<String, usize>> = BTreeMap::new();
    for entry in &manifest.instances {
        let inst = read_instance(root, entry)?;
        *histogram.entry(inst.answer.to_string()).or_default() += 1;
        for opt in &inst.options {
            *modality.entry(opt.modality().to_string()).or_default() += 1;
        }
        *per.entry(inst.task.slug().to_string())
            .or_default()
            .entry(inst.level.to_string())
            .or_default() += 1;
    }
    let total = manifest.instances.len();
    let percent = histogram
        .iter()
        .map(|(k, v)| (k.clone(), *v as f64 * 100.0 / total.max(1) as f64))
        .collect();
    Ok(StatsReport {
        total,
        answer_histogram: histogram,
        answer_percent: percent,
        modality_counts: modality,
        per_task_level: per,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::options::OptionPolicy;
    use spatialkit_core::render::VecDoc;

    fn tiny_draft(policy: OptionPolicy) -> Draft {
        let img = |w: f64| {
            let mut d = VecDoc::new(w, 10.0);
            d.prims.push(spatialkit_core::render::Prim::Circle {
                cx: w / 2.0,
                cy: 5.0,
                r: 2.0,
                fill: "#123456".into(),
            });
            d
        };
        Draft {
            question: "Which?".into(),
            references: vec![("ref".into(), img(30.0))],
            positive: OptionContent::Image(img(11.0)),
            positive_explanation: "the one".into(),
            distractors: vec![
                (OptionContent::Image(img(12.0)), DistractorTag::Mirrored),
                (OptionContent::Image(img(13.0)), DistractorTag::Mirrored),
                (OptionContent::Image(img(14.0)), DistractorTag::CubeRemoved),
            ],
            policy,
            oracle_notes: vec![],
        }
    }

    #[test]
    fn identity_shuffle_places_positive() {
        // With a fixed seed the permutation is deterministic; the answer
        // letter must point at the positive slot.
        let draft = tiny_draft(OptionPolicy::ShuffleAll);
        let mut rng = Rng::from_seed(5);
        let inst = assemble_instance(&draft, TaskId::Rotation2D, 0, "x-0", 5, &mut rng);
        let letter = inst.meta.answer;
        let idx = LETTERS.iter().position(|&l| l == letter).unwrap();
        match &inst.meta.options[idx] {
            OptionRecord::Image { path } => {
                let (_, bytes) =
                    inst.files.iter().find(|(p, _)| p == path).expect("file exists");
                let svg = String::from_utf8(bytes.clone()).unwrap();
                // The positive was the 11-wide doc.
                assert!(svg.contains("width=\"11\""));
            }
            _ => panic!("expected image option"),
        }
    }

    /// Chi-square over 10,000 shuffles: the answer letter is uniform.
    #[test]
    fn shuffle_uniform_within_three_sigma() {
        let draft = tiny_draft(OptionPolicy::ShuffleAll);
        let mut rng = Rng::from_seed(99);
        let mut counts = [0usize; 4];
        let n = 10_000;
        for i in 0..n {
            let inst =
                assemble_instance(&draft, TaskId::Rotation2D, 0, &format!("x-{i}"), i as u64, &mut rng);
            let idx = LETTERS.iter().position(|&l| l == inst.meta.answer).unwrap();
            counts[idx] += 1;
        }
        let expected = n as f64 / 4.0;
        let chi2: f64 =
            counts.iter().map(|&c| (c as f64 - expected).powi(2) / expected).sum();
        // 3 degrees of freedom; 16.27 is roughly the 0.1% tail.
        assert!(chi2 < 16.27, "chi2 {chi2}, counts {counts:?}");
    }

    #[test]
    fn none_policy_pins_d() {
        let mut rng = Rng::from_seed(7);
        let draft = tiny_draft(OptionPolicy::NoneAtD { none_correct: false });
        let inst = assemble_instance(&draft, TaskId::Rotation3D, 0, "y-0", 7, &mut rng);
        assert!(matches!(
            &inst.meta.options[3],
            OptionRecord::Text { value } if value == NONE_OPTION_TEXT
        ));
        assert_ne!(inst.meta.answer, 'D');

        let draft = tiny_draft(OptionPolicy::NoneAtD { none_correct: true });
        let inst = assemble_instance(&draft, TaskId::Rotation3D, 0, "y-1", 8, &mut rng);
        assert_eq!(inst.meta.answer, 'D');
        assert!(matches!(
            &inst.meta.options[3],
            OptionRecord::Text { value } if value == NONE_OPTION_TEXT
        ));
    }

    #[test]
    fn write_twice_identical_and_counts_match() {
        let dir = std::env::temp_dir().join(format!("svkit-ds-{}", std::process::id()));
        let _ = std::fs::remove_dir_all(&dir);
        let mut rng = Rng::from_seed(1);
        let insts: Vec<GeneratedInstance> = (0..3)
            .map(|i| {
                assemble_instance(
                    &tiny_draft(OptionPolicy::ShuffleAll),
                    TaskId::Rotation2D,
                    0,
                    &format!("2d_rotation-l0-{i:04}"),
                    i,
                    &mut rng,
                )
            })
            .collect();
        let cfg = GenConfig::default();
        let m1 = write_dataset(&insts, &dir, 42, &cfg).unwrap();
        let m2 = write_dataset(&insts, &dir, 42, &cfg).unwrap();
        assert_eq!(m1, m2);
        // Recount oracle: walk the directory.
        let walked = walkdir_count(&dir.join("2d_rotation"));
        assert_eq!(walked, 3);
        let stats = dataset_stats(&dir, &m1).unwrap();
        assert_eq!(stats.total, 3);
        assert_eq!(stats.per_task_level["2d_rotation"]["0"], 3);
        let _ = std::fs::remove_dir_all(&dir);
    }

    fn walkdir_count(task_dir: &Path) -> usize {
        let mut n = 0;
        if let Ok(levels) = std::fs::read_dir(task_dir) {
            for level in levels.flatten() {
                if let Ok(ids) = std::fs::read_dir(level.path()) {
                    n += ids.flatten().count();
                }
            }
        }
        n
    }

    #[test]
    fn empty_dataset_empty_manifest() {
        let dir = std::env::temp_dir().join(format!("svkit-empty-{}", std::process::id()));
        let _ = std::fs::remove_dir_all(&dir);
        let m = write_dataset(&[], &dir, 0, &GenConfig::default()).unwrap();
        assert!(m.instances.is_empty());
        assert!(m.counts.is_empty());
        let _ = std::fs::remove_dir_all(&dir);
    }

    #[test]
    fn roundtrip_read_equals_written() {
        let dir = std::env::temp_dir().join(format!("svkit-rt-{}", std::process::id()));
        let _ = std::fs::remove_dir_all(&dir);
        let mut rng = Rng::from_seed(2);
        let inst = assemble_instance(
            &tiny_draft(OptionPolicy::ShuffleAll),
            TaskId::CubeCounting,
            1,
            "cube_counting-l1-0000",
            9,
            &mut rng,
        );
        let m = write_dataset(
            std::slice::from_ref(&inst),
            &dir,
            1,
            &GenConfig::default(),
        )
        .unwrap();
        let back = read_instance(&dir, &m.instances[0]).unwrap();
        assert_eq!(back, inst.meta);
        let _ = std::fs::remove_dir_all(&dir);
    }
}
