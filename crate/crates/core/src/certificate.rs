//! Claim/witness/verdict records shared by every certifier.

use std::fmt;

use serde::{Deserialize, Serialize};
use serde_json::Value;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "UPPERCASE")]
pub enum Verdict {
    Pass,
    Fail,
}

impl Verdict {
    pub fn from_bool(ok: bool) -> Self {
        if ok {
            Verdict::Pass
        } else {
            Verdict::Fail
        }
    }

    pub fn is_pass(self) -> bool {
        self == Verdict::Pass
    }
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Verdict::Pass => "PASS",
            Verdict::Fail => "FAIL",
        })
    }
}

/// `kind` selects the replay routine; `anchor` is a stable step label.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Certificate {
    pub kind: String,
    pub claim: String,
    pub anchor: String,
    pub witness: Value,
    pub verdict: Verdict,
}

impl Certificate {
    pub fn new(
        kind: impl Into<String>,
        anchor: impl Into<String>,
        claim: impl Into<String>,
        witness: Value,
        ok: bool,
    ) -> Self {
        Certificate {
            kind: kind.into(),
            claim: claim.into(),
            anchor: anchor.into(),
            witness,
            verdict: Verdict::from_bool(ok),
        }
    }

    pub fn passed(&self) -> bool {
        self.verdict.is_pass()
    }
}

impl fmt::Display for Certificate {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{}] {}: {}", self.verdict, self.anchor, self.claim)
    }
}

/// Vertex bitmasks as `0/1` strings, coordinate 1 leftmost.
pub fn word_strings(len: usize, masks: &[u32]) -> Vec<String> {
    masks
        .iter()
        .map(|&w| (0..len).map(|i| if (w >> i) & 1 == 1 { '1' } else { '0' }).collect())
        .collect()
}

/// Bitmasks of subsets as 1-based point lists.
pub fn point_lists(masks: &[u32]) -> Vec<Vec<usize>> {
    masks
        .iter()
        .map(|&b| crate::bits::bit_indices(b).map(|i| i + 1).collect())
        .collect()
}
