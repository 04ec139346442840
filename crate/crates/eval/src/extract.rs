//! Rule-based answer extraction.
//!
//! Cascade: content between <answer></answer> tags first; otherwise the
//! marker list is scanned in a fixed order and the text after the
//! first marker found becomes the candidate. Candidates are cut at the
//! first period and accepted iff exactly one uppercase option letter
//! remains. A lenient fallback accepts a bare single-letter response.

/// Markers scanned, in order, when the tag pair is absent.
pub const MARKERS: [&str; 11] = [
    "<answer>",
    "Answer:",
    "Final answer",
    "final answer",
    "Final Answer",
    "the answer is",
    "The answer is",
    "correct answer",
    "Correct answer",
    "Correct Answer",
    "correct path",
];

fn single_letter(candidate: &str) -> Option<char> {
    let cut = candidate.split('.').next().unwrap_or(candidate);
    let letters: Vec<char> = cut.chars().filter(|c| matches!(c, 'A'..='D')).collect();
    match letters.as_slice() {
        [only] => Some(*only),
        _ => None,
    }
}

/// Deterministic and total; `None` counts as incorrect downstream.
pub fn extract_answer(text: &str) -> Option<char> {
    extract_answer_with(text, true)
}

/// `lenient` additionally accepts a whole response that is one bare letter.
pub fn extract_answer_with(text: &str, lenient: bool) -> Option<char> {
    // Tag pair.
    if let Some(start) = text.find("<answer>") {
        let inner_start = start + "<answer>".len();
        if let Some(end_rel) = text[inner_start..].find("</answer>") {
            let inner = &text[inner_start..inner_start + end_rel];
            if let Some(l) = single_letter(inner) {
                return Some(l);
            }
        }
    }
    // Marker cascade in list order.
    for marker in MARKERS {
        if let Some(pos) = text.find(marker) {
            let candidate = &text[pos + marker.len()..];
            if let Some(l) = single_letter(candidate) {
                return Some(l);
            }
            // A matched marker wins the cascade even when extraction fails;
            // two letters after "The answer is" is a failure, not a reason
            // to keep scanning weaker markers.
            return lenient_fallback(text, lenient);
        }
    }
    lenient_fallback(text, lenient)
}

fn lenient_fallback(text: &str, lenient: bool) -> Option<char> {
    if !lenient {
        return None;
    }
    let trimmed = text.trim();
    let core = trimmed.strip_suffix('.').unwrap_or(trimmed);
    if core.len() == 1 {
        let c = core.chars().next().unwrap();
        if matches!(c, 'A'..='D') {
            return Some(c);
        }
    }
    None
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn tag_pair_extracts() {
        assert_eq!(extract_answer("<answer>B</answer>"), Some('B'));
        assert_eq!(
            extract_answer("<think>stuff about C and D</think>\n<answer>A</answer>"),
            Some('A')
        );
    }

    #[test]
    fn marker_then_period_delimits() {
        assert_eq!(extract_answer("The answer is C. Because reasons about A."), Some('C'));
        assert_eq!(extract_answer("Final answer: D"), Some('D'));
    }

    #[test]
    fn two_letters_after_marker_fails() {
        assert_eq!(extract_answer("The answer is A and B both plausible"), None);
    }

    #[test]
    fn bare_letter_lenient_only() {
        assert_eq!(extract_answer("B"), Some('B'));
        assert_eq!(extract_answer_with("B", false), None);
    }

    #[test]
    fn no_letter_fails() {
        assert_eq!(extract_answer("I cannot tell."), None);
    }
}
