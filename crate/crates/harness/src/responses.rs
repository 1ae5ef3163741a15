//! Response log (append-only CSV) and per-response evaluation.

use std::fs::{File, OpenOptions};
use std::io::{self, Write};
use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};

use offscreen_core::scenario::io::Response;
use offscreen_core::scenario::{
    classify_choice, classify_t1, ChoiceOutcome, Classification, ScenarioError, Task, Trial,
};

/// Result of checking one response against its trial.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "lowercase")]
pub enum Outcome {
    Pointing(Classification),
    Choice(ChoiceOutcome),
}

pub fn evaluate(trial: &Trial, r: &Response) -> Result<Outcome, ScenarioError> {
    if r.trial_id != trial.id {
        return Err(ScenarioError::Invalid(format!(
            "response for {} checked against {}",
            r.trial_id, trial.id
        )));
    }
    if r.participant != trial.participant {
        return Err(ScenarioError::Invalid(format!(
            "trial {} belongs to participant {}, not {}",
            trial.id, trial.participant, r.participant
        )));
    }
    if r.elapsed_ms == 0 {
        return Err(ScenarioError::Invalid("elapsed_ms must be positive".into()));
    }
    match trial.task {
        Task::T1 => {
            let click = r
                .click()
                .ok_or_else(|| ScenarioError::MissingAnswer(trial.id.clone(), "click"))?;
            Ok(Outcome::Pointing(classify_t1(trial, click)?))
        }
        Task::T2 | Task::T3 => {
            let c = r
                .choice
                .ok_or_else(|| ScenarioError::MissingAnswer(trial.id.clone(), "choice"))?;
            Ok(Outcome::Choice(classify_choice(trial, c)?))
        }
    }
}

/// Appends one CSV row per response and flushes it immediately.
#[derive(Debug)]
pub struct ResponseLog {
    path: PathBuf,
    file: File,
}

impl ResponseLog {
    pub fn open(path: impl AsRef<Path>) -> io::Result<Self> {
        let path = path.as_ref().to_path_buf();
        let mut file = OpenOptions::new().create(true).append(true).open(&path)?;
        if file.metadata()?.len() == 0 {
            writeln!(file, "{}", Response::CSV_HEADER)?;
            file.flush()?;
        }
        Ok(ResponseLog { path, file })
    }

    pub fn path(&self) -> &Path {
        &self.path
    }

    pub fn append(&mut self, r: &Response) -> io::Result<()> {
        let mut w = csv::WriterBuilder::new()
            .has_headers(false)
            .from_writer(Vec::new());
        w.serialize(r).map_err(io::Error::other)?;
        let line = w
            .into_inner()
            .map_err(|e| io::Error::other(e.to_string()))?;
        self.file.write_all(&line)?;
        self.file.flush()
    }
}

pub fn read_responses(path: impl AsRef<Path>) -> Result<Vec<Response>, csv::Error> {
    let mut rdr = csv::Reader::from_path(path)?;
    rdr.deserialize().collect()
}

pub fn write_responses(path: impl AsRef<Path>, responses: &[Response]) -> io::Result<()> {
    let mut w = csv::Writer::from_path(path)?;
    if responses.is_empty() {
        w.write_record(Response::CSV_HEADER.split(','))?;
    }
    for r in responses {
        w.serialize(r)?;
    }
    w.flush()
}
