//! Reader for the reflection-table data file.

use std::fmt;

use circsym_core::symparams::Table3Row;
use circsym_core::zmod::RepSet;

/// The shipped copy of the published table.
pub const SHIPPED: &str = include_str!("../data/table3.txt");

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ParseError {
    pub line: usize,
    pub message: String,
}

impl fmt::Display for ParseError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "line {}: {}", self.line, self.message)
    }
}

impl std::error::Error for ParseError {}

/// Parses `j s a0,a1,...` rows. Blank lines and `#` comments are skipped.
pub fn parse(text: &str) -> Result<Vec<Table3Row>, ParseError> {
    let mut rows = Vec::new();
    for (idx, raw) in text.lines().enumerate() {
        let line = raw.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let err = |message: String| ParseError { line: idx + 1, message };
        let fields: Vec<&str> = line.split_whitespace().collect();
        let [j, s, set] = fields[..] else {
            return Err(err(format!("expected 3 fields, found {}", fields.len())));
        };
        let j: usize = j.parse().map_err(|e| err(format!("j: {e}")))?;
        let s: usize = s.parse().map_err(|e| err(format!("s: {e}")))?;
        let members = set
            .split(',')
            .map(|a| a.parse::<usize>().map_err(|e| err(format!("set entry {a:?}: {e}"))))
            .collect::<Result<Vec<_>, _>>()?;
        if j == 0 || s >= 2 * j {
            return Err(err(format!("s = {s} is not a residue mod 2j = {}", 2 * j)));
        }
        let set = RepSet::new(j, members).map_err(|e| err(e.to_string()))?;
        rows.push(Table3Row { j, s, set });
    }
    Ok(rows)
}

pub fn shipped() -> Vec<Table3Row> {
    parse(SHIPPED).expect("shipped table parses")
}
