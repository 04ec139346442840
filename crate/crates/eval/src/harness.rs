//! End-to-end evaluation run: prompts in, records out, with bounded
//! concurrency and a serialized record sink.

use crate::prompt::{build_prompt, PromptMode};
use crate::score::EvalRecord;
use crate::transport::{send_with_retries, ChatRequest, Transport, TransportError};
use crate::EvalError;
use spatialkit_forge::dataset::{read_instance, Manifest};
use std::path::Path;
use std::sync::Mutex;
use std::time::{Duration, Instant};

pub const DEFAULT_CONCURRENCY: usize = 4;
pub const DEFAULT_RETRIES: u32 = 3;

#[derive(Debug, Clone)]
pub struct RunSettings {
    pub model: String,
    pub mode: PromptMode,
    pub concurrency: usize,
    pub retries: u32,
    pub backoff: Duration,
    pub endpoint_label: String,
}

/// Evaluate every manifest instance through the given transport. Transport
/// failures after retries become records with an empty extraction, so a run
/// always completes.
pub fn evaluate(
    root: &Path,
    manifest: &Manifest,
    transport: &dyn Transport,
    settings: &RunSettings,
) -> Result<Vec<EvalRecord>, EvalError> {
    // Build payloads up front (pure, deterministic), then fan out requests.
    let mut jobs = Vec::new();
    for entry in &manifest.instances {
        let instance = read_instance(root, entry)?;
        let dir = root.join(&entry.path);
        let payload = build_prompt(&instance, &dir, settings.mode)?;
        jobs.push((entry.id.clone(), instance.answer, payload));
    }

    let next = Mutex::new(0usize);
    let sink: Mutex<Vec<(usize, EvalRecord)>> = Mutex::new(Vec::with_capacity(jobs.len()));
    let workers = settings.concurrency.max(1).min(jobs.len().max(1));
    std::thread::scope(|scope| {
        for _ in 0..workers {
            scope.spawn(|| loop {
                let idx = {
                    let mut guard = next.lock().unwrap();
                    let idx = *guard;
                    if idx >= jobs.len() {
                        break;
                    }
                    *guard += 1;
                    idx
                };
                let (id, answer, payload) = &jobs[idx];
                let request = ChatRequest {
                    model: settings.model.clone(),
                    text: payload.text.clone(),
                    images_b64: payload.images_b64.clone(),
                };
                let started = Instant::now();
                let outcome =
                    send_with_retries(transport, &request, settings.retries, settings.backoff);
                let latency_ms = started.elapsed().as_millis() as u64;
                let record = match outcome {
                    Ok(response) => {
                        let extracted = crate::extract::extract_answer(&response);
                        EvalRecord {
                            id: id.clone(),
                            response,
                            extracted,
                            correct: extracted == Some(*answer),
                            latency_ms,
                            endpoint: settings.endpoint_label.clone(),
                        }
                    }
                    Err(e @ (TransportError::Transient(_) | TransportError::Fatal(_))) => {
                        EvalRecord {
                            id: id.clone(),
                            response: format!("[transport failure] {e}"),
                            extracted: None,
                            correct: false,
                            latency_ms,
                            endpoint: settings.endpoint_label.clone(),
                        }
                    }
                };
                sink.lock().unwrap().push((idx, record));
            });
        }
    });
    let mut records = sink.into_inner().unwrap();
    records.sort_by_key(|(i, _)| *i);
    Ok(records.into_iter().map(|(_, r)| r).collect())
}

/// JSON-lines serialization of a record set.
pub fn records_to_jsonl(records: &[EvalRecord]) -> String {
    records
        .iter()
        .map(|r| serde_json::to_string(r).expect("records serialize"))
        .map(|l| l + "\n")
        .collect()
}

pub fn records_from_jsonl(text: &str) -> Result<Vec<EvalRecord>, EvalError> {
    text.lines()
        .filter(|l| !l.trim().is_empty())
        .map(|l| serde_json::from_str(l).map_err(EvalError::Json))
        .collect()
}
