//! Replayable state machines for paper folding, arrow movement and
//! gravity-governed block movement.
//!
//! States are immutable; transitions return new states. Invalid moves are
//! values (`None`), not errors, because the sequence generators probe moves
//! densely.

pub mod arrows;
pub mod blocks;
pub mod paper;

use crate::rng::Rng;
use serde::Serialize;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum SimError {
    #[error("fold line {0} outside the current sheet")]
    FoldOutOfRange(usize),
    #[error("punch rejected at ({0}, {1}): folded-away or duplicate cell")]
    PunchInvalid(usize, usize),
    #[error("resample budget exhausted while generating a sequence")]
    BudgetExhausted,
}

/// Budget shared by every internal rejection-sampling loop.
pub const RESAMPLE_ATTEMPTS: usize = 64;

/// A state machine a random valid-op sequence can be drawn from.
pub trait Simulate: Clone {
    type Op: Clone + Serialize;

    /// One sampling attempt; `None` when the sampled move is invalid.
    fn sample_op(&self, rng: &mut Rng) -> Option<(Self::Op, Self)>;

    /// Canonical sorted serialization of the state contents.
    fn digest(&self) -> String;
}

/// Random valid sequence of length `k` with an optional forbidden end state;
/// the last step is resampled until its digest differs. The trace holds
/// k + 1 states starting with the initial one.
pub fn generate_sequence<S: Simulate>(
    start: &S,
    k: usize,
    forbidden_end: Option<&str>,
    rng: &mut Rng,
) -> Result<(Vec<S::Op>, Vec<S>), SimError> {
    assert!(k >= 1);
    let mut ops = Vec::with_capacity(k);
    let mut trace = vec![start.clone()];
    for step in 0..k {
        let mut accepted = None;
        for _ in 0..RESAMPLE_ATTEMPTS {
            let Some((op, next)) = trace[step].sample_op(rng) else {
                continue;
            };
            if step + 1 == k {
                if let Some(forbidden) = forbidden_end {
                    if next.digest() == forbidden {
                        continue;
                    }
                }
            }
            accepted = Some((op, next));
            break;
        }
        let Some((op, next)) = accepted else {
            return Err(SimError::BudgetExhausted);
        };
        ops.push(op);
        trace.push(next);
    }
    Ok((ops, trace))
}

/// Debugging dump: one JSON line per state with the op that produced it.
pub fn trace_jsonl<S: Simulate>(ops: &[S::Op], trace: &[S]) -> String {
    let mut out = String::new();
    for (i, state) in trace.iter().enumerate() {
        let op_json = if i == 0 {
            "null".to_string()
        } else {
            serde_json::to_string(&ops[i - 1]).expect("ops serialize")
        };
        out.push_str(&format!("{{\"op\":{},\"digest\":\"{}\"}}\n", op_json, state.digest()));
    }
    out
}

#[cfg(test)]
mod tests {
    use super::arrows::SingleArrowState;
    use super::*;

    #[test]
    fn sequence_trace_has_k_plus_one_states() {
        let mut rng = Rng::from_seed(9);
        let start = SingleArrowState::new(3, 3, (1, 1), 0);
        let (ops, trace) = generate_sequence(&start, 4, None, &mut rng).unwrap();
        assert_eq!(ops.len(), 4);
        assert_eq!(trace.len(), 5);
    }

    #[test]
    fn forbidden_end_avoided() {
        let mut rng = Rng::from_seed(10);
        let start = SingleArrowState::new(3, 3, (1, 1), 0);
        let (_, trace) = generate_sequence(&start, 3, None, &mut rng).unwrap();
        let end = trace.last().unwrap().digest();
        for _ in 0..50 {
            let (_, alt) = generate_sequence(&start, 3, Some(&end), &mut rng).unwrap();
            assert_ne!(alt.last().unwrap().digest(), end);
        }
    }

    #[test]
    fn jsonl_dump_shape() {
        let mut rng = Rng::from_seed(11);
        let start = SingleArrowState::new(3, 3, (0, 0), 1);
        let (ops, trace) = generate_sequence(&start, 2, None, &mut rng).unwrap();
        let dump = trace_jsonl(&ops, &trace);
        assert_eq!(dump.lines().count(), 3);
        assert!(dump.lines().next().unwrap().contains("\"op\":null"));
    }
}
