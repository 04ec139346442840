//! Scoring: per task x level accuracy plus overall, and the uniform-guess
//! baseline.

use crate::EvalError;
use serde::{Deserialize, Serialize};
use spatialkit_core::rng::Rng;
use spatialkit_forge::dataset::{Manifest, LETTERS};
use std::collections::BTreeMap;

/// One model response for one instance.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct EvalRecord {
    pub id: String,
    pub response: String,
    pub extracted: Option<char>,
    pub correct: bool,
    pub latency_ms: u64,
    pub endpoint: String,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ScoreCell {
    pub correct: usize,
    pub total: usize,
}

impl ScoreCell {
    pub fn accuracy(&self) -> f64 {
        if self.total == 0 {
            0.0
        } else {
            self.correct as f64 * 100.0 / self.total as f64
        }
    }
}

/// Accuracy per task and level plus the count-weighted overall.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ScoreTable {
    /// task slug -> level string -> cell.
    pub cells: BTreeMap<String, BTreeMap<String, ScoreCell>>,
    pub overall: ScoreCell,
    pub extraction_failures: usize,
}

impl ScoreTable {
    pub fn overall_accuracy(&self) -> f64 {
        self.overall.accuracy()
    }

    pub fn to_markdown(&self) -> String {
        let mut out = String::from("| Task | Level | Correct | Total | Accuracy % |\n|---|---|---|---|---|\n");
        for (task, levels) in &self.cells {
            for (level, cell) in levels {
                out.push_str(&format!(
                    "| {task} | {level} | {} | {} | {:.2} |\n",
                    cell.correct,
                    cell.total,
                    cell.accuracy()
                ));
            }
        }
        out.push_str(&format!(
            "| overall | - | {} | {} | {:.2} |\n",
            self.overall.correct,
            self.overall.total,
            self.overall.accuracy()
        ));
        out.push_str(&format!("\nextraction failures: {}\n", self.extraction_failures));
        out
    }

    pub fn to_csv(&self) -> String {
        let mut out = String::from("task,level,correct,total,accuracy\n");
        for (task, levels) in &self.cells {
            for (level, cell) in levels {
                out.push_str(&format!(
                    "{task},{level},{},{},{:.4}\n",
                    cell.correct,
                    cell.total,
                    cell.accuracy()
                ));
            }
        }
        out.push_str(&format!(
            "overall,,{},{},{:.4}\n",
            self.overall.correct,
            self.overall.total,
            self.overall.accuracy()
        ));
        out
    }
}

/// Score records against the manifest; extraction failures count as
/// incorrect. Permutation-invariant over record order.
pub fn score(records: &[EvalRecord], manifest: &Manifest) -> Result<ScoreTable, EvalError> {
    let index: BTreeMap<&str, (&str, u8, char)> = manifest
        .instances
        .iter()
        .map(|e| (e.id.as_str(), (e.task.slug(), e.level, e.answer)))
        .collect();
    let mut cells: BTreeMap<String, BTreeMap<String, ScoreCell>> = BTreeMap::new();
    let mut overall = ScoreCell { correct: 0, total: 0 };
    let mut extraction_failures = 0;
    for record in records {
        let Some((task, level, answer)) = index.get(record.id.as_str()) else {
            return Err(EvalError::UnknownRecord(record.id.clone()));
        };
        let correct = record.extracted == Some(*answer);
        if record.extracted.is_none() {
            extraction_failures += 1;
        }
        let cell = cells
            .entry(task.to_string())
            .or_default()
            .entry(level.to_string())
            .or_insert(ScoreCell { correct: 0, total: 0 });
        cell.total += 1;
        overall.total += 1;
        if correct {
            cell.correct += 1;
            overall.correct += 1;
        }
    }
    Ok(ScoreTable { cells, overall, extraction_failures })
}

/// Uniform letter guessing, averaged over `trials` full passes.
pub fn random_baseline(manifest: &Manifest, trials: u32, rng: &mut Rng) -> ScoreTable {
    assert!(trials >= 1);
    let mut cells: BTreeMap<String, BTreeMap<String, ScoreCell>> = BTreeMap::new();
    let mut overall = ScoreCell { correct: 0, total: 0 };
    for _ in 0..trials {
        for entry in &manifest.instances {
            let guess = LETTERS[rng.index(4)];
            let correct = guess == entry.answer;
            let cell = cells
                .entry(entry.task.slug().to_string())
                .or_default()
                .entry(entry.level.to_string())
                .or_insert(ScoreCell { correct: 0, total: 0 });
            cell.total += 1;
            overall.total += 1;
            if correct {
                cell.correct += 1;
                overall.correct += 1;
            }
        }
    }
    ScoreTable { cells, overall, extraction_failures: 0 }
}

#[cfg(test)]
mod tests {
    use super::*;
    use spatialkit_forge::dataset::ManifestEntry;
    use spatialkit_forge::params::TaskId;

    fn manifest(entries: Vec<(&str, TaskId, u8, char)>) -> Manifest {
        Manifest {
            schema_version: 1,
            generator_version: "t".into(),
            params_version: "t".into(),
            master_seed: 0,
            none_correct_rate: 0.1,
            counts: BTreeMap::new(),
            instances: entries
                .into_iter()
                .map(|(id, task, level, answer)| ManifestEntry {
                    id: id.into(),
                    task,
                    level,
                    path: String::new(),
                    answer,
                    seed: 0,
                })
                .collect(),
        }
    }

    fn record(id: &str, extracted: Option<char>) -> EvalRecord {
        EvalRecord {
            id: id.into(),
            response: String::new(),
            extracted,
            correct: false,
            latency_ms: 0,
            endpoint: "test".into(),
        }
    }

    #[test]
    fn all_correct_everywhere() {
        let m = manifest(vec![
            ("a", TaskId::Rotation2D, 0, 'A'),
            ("b", TaskId::Rotation2D, 1, 'B'),
        ]);
        let t = score(&[record("a", Some('A')), record("b", Some('B'))], &m).unwrap();
        assert_eq!(t.overall_accuracy(), 100.0);
        assert_eq!(t.cells["2d_rotation"]["0"].accuracy(), 100.0);
    }

    #[test]
    fn half_correct_in_one_cell() {
        let m = manifest(vec![
            ("a", TaskId::CubeCounting, 1, 'A'),
            ("b", TaskId::CubeCounting, 1, 'B'),
        ]);
        let t = score(&[record("a", Some('A')), record("b", Some('C'))], &m).unwrap();
        assert_eq!(t.cells["cube_counting"]["1"].accuracy(), 50.0);
    }

    /// Count-weighted overall equals an independent recomputation.
    #[test]
    fn overall_matches_weighted_mean() {
        let m = manifest(vec![
            ("a", TaskId::Rotation2D, 0, 'A'),
            ("b", TaskId::Rotation2D, 0, 'B'),
            ("c", TaskId::BlockMoving, 1, 'C'),
        ]);
        let recs = vec![record("a", Some('A')), record("b", Some('A')), record("c", Some('C'))];
        let t = score(&recs, &m).unwrap();
        let weighted: f64 = t
            .cells
            .values()
            .flat_map(|l| l.values())
            .map(|c| c.accuracy() * c.total as f64)
            .sum::<f64>()
            / t.overall.total as f64;
        assert!((t.overall_accuracy() - weighted).abs() < 1e-9);
        assert!((t.overall_accuracy() - 200.0 / 3.0).abs() < 1e-9);
    }

    #[test]
    fn extraction_failures_count_as_incorrect() {
        let m = manifest(vec![("a", TaskId::Rotation2D, 0, 'A')]);
        let t = score(&[record("a", None)], &m).unwrap();
        assert_eq!(t.overall.correct, 0);
        assert_eq!(t.extraction_failures, 1);
    }

    #[test]
    fn unknown_record_rejected() {
        let m = manifest(vec![("a", TaskId::Rotation2D, 0, 'A')]);
        assert!(score(&[record("zz", Some('A'))], &m).is_err());
    }

    #[test]
    fn scoring_is_permutation_invariant() {
        let m = manifest(vec![
            ("a", TaskId::Rotation2D, 0, 'A'),
            ("b", TaskId::Rotation2D, 0, 'B'),
        ]);
        let r1 = vec![record("a", Some('A')), record("b", Some('B'))];
        let r2 = vec![record("b", Some('B')), record("a", Some('A'))];
        assert_eq!(score(&r1, &m).unwrap(), score(&r2, &m).unwrap());
    }

    #[test]
    fn baseline_close_to_quarter_and_seed_stable() {
        let entries: Vec<(String, char)> =
            (0..200).map(|i| (format!("i{i}"), LETTERS[i % 4])).collect();
        let m = manifest(
            entries
                .iter()
                .map(|(id, a)| (id.as_str(), TaskId::Rotation2D, 0, *a))
                .collect(),
        );
        let mut rng = Rng::from_seed(5);
        let t = random_baseline(&m, 500, &mut rng);
        assert!((t.overall_accuracy() - 25.0).abs() < 2.0, "{}", t.overall_accuracy());
        let mut rng2 = Rng::from_seed(5);
        let t2 = random_baseline(&m, 500, &mut rng2);
        assert_eq!(t, t2);
    }
}
