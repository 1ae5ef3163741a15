//! Trial files (JSON lines) and the response record.

use std::io::{BufRead, Write};

use serde::{Deserialize, Serialize};
use thiserror::Error;

use super::{Color, Trial};

#[derive(Debug, Error)]
pub enum IoError {
    #[error("i/o: {0}")]
    Io(#[from] std::io::Error),
    #[error("line {line}: {source}")]
    Parse {
        line: usize,
        source: serde_json::Error,
    },
    #[error("serialize: {0}")]
    Serialize(#[from] serde_json::Error),
}

pub fn write_trials<W: Write>(mut w: W, trials: &[Trial]) -> Result<(), IoError> {
    for t in trials {
        serde_json::to_writer(&mut w, t)?;
        w.write_all(b"\n")?;
    }
    w.flush()?;
    Ok(())
}

pub fn trials_to_string(trials: &[Trial]) -> String {
    let mut buf = Vec::new();
    write_trials(&mut buf, trials).expect("writing to memory");
    String::from_utf8(buf).expect("json is utf-8")
}

/// Blank lines are skipped.
pub fn read_trials<R: BufRead>(r: R) -> Result<Vec<Trial>, IoError> {
    let mut out = Vec::new();
    for (i, line) in r.lines().enumerate() {
        let line = line?;
        if line.trim().is_empty() {
            continue;
        }
        out.push(
            serde_json::from_str(&line).map_err(|source| IoError::Parse {
                line: i + 1,
                source,
            })?,
        );
    }
    Ok(out)
}

/// One row of the response log. Task 1 carries a click in hub coordinates,
/// tasks 2 and 3 a color choice.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Response {
    pub trial_id: String,
    pub participant: u32,
    #[serde(default)]
    pub click_x: Option<f64>,
    #[serde(default)]
    pub click_y: Option<f64>,
    #[serde(default)]
    pub choice: Option<Color>,
    pub elapsed_ms: u64,
}

impl Response {
    pub const CSV_HEADER: &'static str = "trial_id,participant,click_x,click_y,choice,elapsed_ms";

    pub fn click(&self) -> Option<crate::geometry::Point> {
        Some(crate::geometry::Point::new(self.click_x?, self.click_y?))
    }
}
