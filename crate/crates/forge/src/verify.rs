//! Dataset verification: every instance is regenerated from its recorded
//! seed, which re-runs its construction oracle, and the regenerated bytes
//! are compared file-for-file with what is on disk.

use crate::dataset::{instance_dir, read_manifest, DatasetError, Manifest};
use crate::params::GenConfig;
use crate::tasks;
use crate::params::TaskParams;
use serde::Serialize;
use std::path::Path;

#[derive(Debug, Default, Serialize)]
pub struct VerifyReport {
    pub checked: usize,
    pub oracle_failures: Vec<String>,
    pub byte_mismatches: Vec<String>,
    pub count_mismatches: Vec<String>,
}

impl VerifyReport {
    pub fn ok(&self) -> bool {
        self.oracle_failures.is_empty()
            && self.byte_mismatches.is_empty()
            && self.count_mismatches.is_empty()
    }
}

/// Full verification pass over a dataset root.
pub fn verify_dataset(root: &Path) -> Result<VerifyReport, DatasetError> {
    let manifest = read_manifest(root)?;
    let mut report = VerifyReport::default();
    verify_counts(root, &manifest, &mut report);
    let cfg = GenConfig { none_correct_rate: manifest.none_correct_rate };
    for entry in &manifest.instances {
        report.checked += 1;
        let params = match TaskParams::new(entry.task, entry.level) {
            Some(p) => p,
            None => {
                report.oracle_failures.push(format!("{}: invalid level", entry.id));
                continue;
            }
        };
        // Regenerating re-runs the construction oracle for the draft.
        let draft = match tasks::generate(&params, entry.seed, &cfg) {
            Ok(d) => d,
            Err(e) => {
                report.oracle_failures.push(format!("{}: {e}", entry.id));
                continue;
            }
        };
        let mut rng = spatialkit_core::rng::Rng::from_seed(spatialkit_core::rng::mix(
            entry.seed,
            b"shuffle",
        ));
        let regenerated = crate::dataset::assemble_instance(
            &draft,
            entry.task,
            entry.level,
            &entry.id,
            entry.seed,
            &mut rng,
        );
        let dir = root.join(instance_dir(entry.task, entry.level, &entry.id));
        for (rel, bytes) in &regenerated.files {
            match std::fs::read(dir.join(rel)) {
                Ok(on_disk) if &on_disk == bytes => {}
                Ok(_) => report
                    .byte_mismatches
                    .push(format!("{}/{rel}: content differs from regeneration", entry.id)),
                Err(_) => report
                    .byte_mismatches
                    .push(format!("{}/{rel}: missing on disk", entry.id)),
            }
        }
        if regenerated.meta.answer != entry.answer {
            report
                .oracle_failures
                .push(format!("{}: manifest answer letter differs", entry.id));
        }
    }
    Ok(report)
}

fn verify_counts(root: &Path, manifest: &Manifest, report: &mut VerifyReport) {
    for (task_slug, levels) in &manifest.counts {
        for (level, count) in levels {
            let dir = root.join(task_slug).join(level);
            let on_disk = std::fs::read_dir(&dir)
                .map(|it| it.flatten().filter(|e| e.path().is_dir()).count())
                .unwrap_or(0);
            if on_disk != *count as usize {
                report.count_mismatches.push(format!(
                    "{task_slug}/{level}: manifest says {count}, directory holds {on_disk}"
                ));
            }
        }
    }
}
