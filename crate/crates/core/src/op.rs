use std::fmt;
use std::str::FromStr;

/// Binary set operation. `AndNot` is `left \ right`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum SetOp {
    And,
    Or,
    Xor,
    AndNot,
}

impl SetOp {
    pub const ALL: [SetOp; 4] = [SetOp::And, SetOp::Or, SetOp::Xor, SetOp::AndNot];

    /// Applies the operation bitwise.
    #[inline]
    pub fn apply(self, left: u32, right: u32) -> u32 {
        match self {
            SetOp::And => left & right,
            SetOp::Or => left | right,
            SetOp::Xor => left ^ right,
            SetOp::AndNot => left & !right,
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            SetOp::And => "and",
            SetOp::Or => "or",
            SetOp::Xor => "xor",
            SetOp::AndNot => "andnot",
        }
    }
}

impl fmt::Display for SetOp {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for SetOp {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s.to_ascii_lowercase().as_str() {
            "and" | "intersect" => Ok(SetOp::And),
            "or" | "union" => Ok(SetOp::Or),
            "xor" => Ok(SetOp::Xor),
            "andnot" | "and-not" | "diff" => Ok(SetOp::AndNot),
            other => Err(format!("unknown operation `{other}`")),
        }
    }
}

/// Whether the fill-skip fast path runs inside `perform_operation`.
///
/// Disabling it walks every block one at a time; results are identical.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum FillSkip {
    #[default]
    Enabled,
    Disabled,
}
