//! Prompt construction. The instruction and layout text is fixed
//! byte-for-byte per mode, including the A./B./C./D. lines; images attach
//! in reference-then-options order, each exactly once.

use crate::EvalError;
use serde::{Deserialize, Serialize};
use spatialkit_core::render::{rasterize, VecDoc};
use spatialkit_forge::dataset::{OptionRecord, PuzzleInstance, LETTERS};
use std::path::Path;

/// Raster width for transported images.
pub const IMAGE_WIDTH_PX: u32 = 768;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum PromptMode {
    Cot,
    Direct,
}

impl PromptMode {
    pub fn parse(s: &str) -> Option<PromptMode> {
        match s {
            "cot" => Some(PromptMode::Cot),
            "direct" => Some(PromptMode::Direct),
            _ => None,
        }
    }
}

pub const COT_INSTRUCTION: &str = "You should first provide a reasoning process, then provide a single option (A, B, C or D) as the final answer. The reasoning process and the answer are enclosed within <think></think> and <answer></answer> tags, respectively, i.e., <think>reasoning process</think>, <answer>answer</answer>.";

pub const DIRECT_INSTRUCTION: &str = "Answer with a single option letter (A, B, C, or D), enclosed within the <answer></answer> tag. For example: <answer>A</answer>. Ensure that your output contains only the final answer, without any intermediate reasoning or additional content.";

/// One assembled request: the full prompt text plus base64 PNG attachments.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PromptPayload {
    pub text: String,
    pub images_b64: Vec<String>,
}

/// Option line content: inline values for text/number options, an image
/// placeholder naming the attachment position for image options.
fn option_line(opt: &OptionRecord, image_index: &mut usize, total_refs: usize) -> String {
    match opt {
        OptionRecord::Text { value } => value.clone(),
        OptionRecord::Number { value } => value.to_string(),
        OptionRecord::Image { .. } => {
            *image_index += 1;
            format!("[image {}]", total_refs + *image_index)
        }
    }
}

/// Build the payload for an instance whose image files live under `dir`.
pub fn build_prompt(
    instance: &PuzzleInstance,
    dir: &Path,
    mode: PromptMode,
) -> Result<PromptPayload, EvalError> {
    let instruction = match mode {
        PromptMode::Cot => COT_INSTRUCTION,
        PromptMode::Direct => DIRECT_INSTRUCTION,
    };
    let mut image_paths: Vec<&str> = instance.references.iter().map(|s| s.as_str()).collect();
    let total_refs = image_paths.len();
    let mut image_index = 0usize;
    let mut lines = format!("{instruction}\nQuestion: {}\n", instance.question);
    for (letter, opt) in LETTERS.iter().zip(&instance.options) {
        lines.push_str(&format!(
            "{letter}.{}\n",
            option_line(opt, &mut image_index, total_refs)
        ));
    }
    for opt in &instance.options {
        if let OptionRecord::Image { path } = opt {
            image_paths.push(path);
        }
    }
    let mut images_b64 = Vec::with_capacity(image_paths.len());
    for rel in image_paths {
        let full = dir.join(rel);
        let svg = std::fs::read_to_string(&full).map_err(|e| EvalError::Io(full.clone(), e))?;
        let doc = VecDoc::from_svg(&svg)?;
        let png = rasterize(&doc, IMAGE_WIDTH_PX)?;
        images_b64.push(b64(&png));
    }
    Ok(PromptPayload { text: lines, images_b64 })
}

fn b64(bytes: &[u8]) -> String {
    use base64::Engine as _;
    base64::engine::general_purpose::STANDARD.encode(bytes)
}

#[cfg(test)]
mod tests {
    use super::*;
    use spatialkit_forge::dataset::{ExplanationRecord, OptionRecord};
    use spatialkit_forge::params::TaskId;
    use std::collections::BTreeMap;

    fn text_instance() -> PuzzleInstance {
        PuzzleInstance {
            schema_version: 1,
            id: "t-0".into(),
            task: TaskId::CubeCounting,
            level: 0,
            question: "How many?".into(),
            references: vec![],
            options: vec![
                OptionRecord::Number { value: 5 },
                OptionRecord::Number { value: 6 },
                OptionRecord::Number { value: 7 },
                OptionRecord::Number { value: 8 },
            ],
            answer: 'B',
            explanation: ExplanationRecord {
                correct: String::new(),
                options: BTreeMap::new(),
                oracle_notes: vec![],
            },
            seed: 0,
            generator_version: "t".into(),
            params_version: "t".into(),
        }
    }

    #[test]
    fn cot_prompt_contains_think_tags_verbatim() {
        let payload =
            build_prompt(&text_instance(), Path::new("/nonexistent"), PromptMode::Cot).unwrap();
        assert!(payload
            .text
            .contains("<think>reasoning process</think>, <answer>answer</answer>."));
        assert!(payload.text.contains("\nQuestion: How many?\nA.5\nB.6\nC.7\nD.8\n"));
    }

    #[test]
    fn direct_prompt_demands_only_the_final_answer() {
        let payload =
            build_prompt(&text_instance(), Path::new("/nonexistent"), PromptMode::Direct).unwrap();
        assert!(payload.text.contains("only the final answer"));
        assert!(payload.text.starts_with(DIRECT_INSTRUCTION));
    }

    #[test]
    fn numeric_options_render_inline() {
        let payload =
            build_prompt(&text_instance(), Path::new("/nonexistent"), PromptMode::Cot).unwrap();
        assert!(payload.text.ends_with("A.5\nB.6\nC.7\nD.8\n"));
        assert!(payload.images_b64.is_empty());
    }
}
