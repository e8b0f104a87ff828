use std::collections::HashMap;

use serde::{Deserialize, Serialize};

use super::driver::OutputRecord;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum ErrorKind {
    None,
    /// More than 90% of the outputs could not be parsed.
    InvalidActions,
    /// At least 90% of the parsed actions are the same action.
    RepeatingActions,
    /// Both conditions at once.
    #[serde(rename = "IFE")]
    Ife,
}

/// Instruction-following error classification of a run.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ErrorClassification {
    pub kind: ErrorKind,
    pub unparsed_fraction: f64,
    pub mode_action_fraction: f64,
}

impl ErrorClassification {
    /// True for any instruction-following error.
    pub fn is_ife(&self) -> bool {
        self.kind != ErrorKind::None
    }
}

/// Classifies a run from all of its agent outputs. The thresholds are
/// evaluated in exact integer arithmetic so they fire precisely at 90%.
pub fn classify_errors<'a, I>(outputs: I) -> ErrorClassification
where
    I: IntoIterator<Item = &'a OutputRecord>,
{
    let mut total = 0usize;
    let mut unparsed = 0usize;
    let mut counts: HashMap<&str, usize> = HashMap::new();
    for out in outputs {
        total += 1;
        match &out.actions {
            None => unparsed += 1,
            Some(actions) => {
                for a in actions {
                    *counts.entry(a.as_str()).or_default() += 1;
                }
            }
        }
    }
    let parsed_actions: usize = counts.values().sum();
    let mode = counts.values().copied().max().unwrap_or(0);
    let invalid = total > 0 && unparsed * 10 > total * 9;
    let repeating = parsed_actions > 0 && mode * 10 >= parsed_actions * 9;
    let kind = match (invalid, repeating) {
        (true, true) => ErrorKind::Ife,
        (true, false) => ErrorKind::InvalidActions,
        (false, true) => ErrorKind::RepeatingActions,
        (false, false) => ErrorKind::None,
    };
    let ratio = |a: usize, b: usize| if b == 0 { 0.0 } else { a as f64 / b as f64 };
    ErrorClassification {
        kind,
        unparsed_fraction: ratio(unparsed, total),
        mode_action_fraction: ratio(mode, parsed_actions),
    }
}
