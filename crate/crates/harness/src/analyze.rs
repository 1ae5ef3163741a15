//! Descriptive summary of a response log.

use std::collections::{BTreeMap, HashMap};

use serde::{Deserialize, Serialize};
use thiserror::Error;

use offscreen_core::scenario::io::Response;
use offscreen_core::scenario::{ScenarioError, Trial};
use offscreen_core::Strategy;

use crate::responses::{evaluate, Outcome};

#[derive(Debug, Error)]
pub enum AnalyzeError {
    #[error("responses reference unknown trials: {}", .0.join(", "))]
    Orphans(Vec<String>),
    #[error("trial {0}: {1}")]
    Trial(String, ScenarioError),
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SummaryRow {
    pub task: u8,
    pub border_mode: String,
    pub hub_mode: String,
    pub n: usize,
    pub mean_dist_ortho_px: Option<f64>,
    pub median_dist_ortho_px: Option<f64>,
    pub mean_dist_radial_px: Option<f64>,
    pub median_dist_radial_px: Option<f64>,
    pub pct_orthographic: Option<f64>,
    pub ties: Option<usize>,
    pub accuracy: Option<f64>,
    pub mean_elapsed_ms: f64,
    pub median_elapsed_ms: f64,
}

fn mean(v: &[f64]) -> f64 {
    v.iter().sum::<f64>() / v.len() as f64
}

fn median(v: &[f64]) -> f64 {
    let mut s = v.to_vec();
    s.sort_by(f64::total_cmp);
    let n = s.len();
    if n % 2 == 1 {
        s[n / 2]
    } else {
        (s[n / 2 - 1] + s[n / 2]) / 2.0
    }
}

/// Evaluate every response against its trial.
pub fn classify_log<'a>(
    trials: &'a [Trial],
    responses: &[Response],
) -> Result<Vec<(&'a Trial, Outcome)>, AnalyzeError> {
    let by_id: HashMap<&str, &Trial> = trials.iter().map(|t| (t.id.as_str(), t)).collect();
    let orphans: Vec<String> = responses
        .iter()
        .filter(|r| !by_id.contains_key(r.trial_id.as_str()))
        .map(|r| r.trial_id.clone())
        .collect();
    if !orphans.is_empty() {
        return Err(AnalyzeError::Orphans(orphans));
    }
    responses
        .iter()
        .map(|r| {
            let t = by_id[r.trial_id.as_str()];
            evaluate(t, r)
                .map(|o| (t, o))
                .map_err(|e| AnalyzeError::Trial(t.id.clone(), e))
        })
        .collect()
}

/// Per-condition means and medians. Conditions are task × border mode (×
/// hub mode for task 1).
pub fn analyze(trials: &[Trial], responses: &[Response]) -> Result<Vec<SummaryRow>, AnalyzeError> {
    let outcomes = classify_log(trials, responses)?;
    type Key = (u8, String, String);
    let mut groups: BTreeMap<Key, Vec<(&Response, &Outcome)>> = BTreeMap::new();
    for (r, (t, o)) in responses.iter().zip(&outcomes) {
        let key = (
            t.task.number(),
            t.border_mode.as_str().to_string(),
            t.hub_mode
                .map(|h| h.as_str().to_string())
                .unwrap_or_default(),
        );
        groups.entry(key).or_default().push((r, o));
    }
    Ok(groups
        .into_iter()
        .map(|((task, border_mode, hub_mode), rows)| {
            let elapsed: Vec<f64> = rows.iter().map(|(r, _)| r.elapsed_ms as f64).collect();
            let pointing: Vec<_> = rows
                .iter()
                .filter_map(|(_, o)| match o {
                    Outcome::Pointing(c) => Some(*c),
                    _ => None,
                })
                .collect();
            let choices: Vec<_> = rows
                .iter()
                .filter_map(|(_, o)| match o {
                    Outcome::Choice(c) => Some(*c),
                    _ => None,
                })
                .collect();
            let (ortho, radial): (Vec<f64>, Vec<f64>) = pointing
                .iter()
                .map(|c| (c.dist_ortho_px, c.dist_radial_px))
                .unzip();
            let some = |f: fn(&[f64]) -> f64, v: &[f64]| (!v.is_empty()).then(|| f(v));
            SummaryRow {
                task,
                border_mode,
                hub_mode,
                n: rows.len(),
                mean_dist_ortho_px: some(mean, &ortho),
                median_dist_ortho_px: some(median, &ortho),
                mean_dist_radial_px: some(mean, &radial),
                median_dist_radial_px: some(median, &radial),
                pct_orthographic: (!pointing.is_empty()).then(|| {
                    100.0
                        * pointing
                            .iter()
                            .filter(|c| c.chosen_strategy == Strategy::Orthographic)
                            .count() as f64
                        / pointing.len() as f64
                }),
                ties: (!pointing.is_empty()).then(|| pointing.iter().filter(|c| c.tie).count()),
                accuracy: (!choices.is_empty()).then(|| {
                    choices.iter().filter(|c| c.correct).count() as f64 / choices.len() as f64
                }),
                mean_elapsed_ms: mean(&elapsed),
                median_elapsed_ms: median(&elapsed),
            }
        })
        .collect())
}

pub const SUMMARY_HEADER: [&str; 13] = [
    "task",
    "border_mode",
    "hub_mode",
    "n",
    "mean_dist_ortho_px",
    "median_dist_ortho_px",
    "mean_dist_radial_px",
    "median_dist_radial_px",
    "pct_orthographic",
    "ties",
    "accuracy",
    "mean_elapsed_ms",
    "median_elapsed_ms",
];

pub fn write_summary<W: std::io::Write>(w: W, rows: &[SummaryRow]) -> csv::Result<()> {
    let mut w = csv::WriterBuilder::new().has_headers(false).from_writer(w);
    w.write_record(SUMMARY_HEADER)?;
    for r in rows {
        w.serialize(r)?;
    }
    w.flush()?;
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::simulate::{simulate, Respondent};
    use offscreen_core::scenario::{gen_trials, Layout, Task};

    #[test]
    fn closed_loop_summaries() {
        let trials = gen_trials(5, Task::T1, 2, &Layout::default()).unwrap();
        let log = simulate(&trials, Respondent::Inverts(Strategy::Orthographic), 1).unwrap();
        let rows = analyze(&trials, &log).unwrap();
        assert_eq!(rows.len(), 4);
        for r in &rows {
            assert_eq!(r.n, 16);
            assert_eq!(r.pct_orthographic, Some(100.0));
            assert!(r.mean_dist_ortho_px.unwrap() < 1e-6);
            assert_eq!(r.accuracy, None);
        }
        let log = simulate(&trials, Respondent::Inverts(Strategy::Radial), 1).unwrap();
        assert!(analyze(&trials, &log)
            .unwrap()
            .iter()
            .all(|r| r.pct_orthographic == Some(0.0)));
    }

    #[test]
    fn orthographic_readers_answer_tasks_2_and_3_correctly() {
        for task in [Task::T2, Task::T3] {
            let trials = gen_trials(5, task, 6, &Layout::default()).unwrap();
            let log = simulate(&trials, Respondent::Inverts(Strategy::Orthographic), 1).unwrap();
            for r in analyze(&trials, &log).unwrap() {
                assert_eq!(r.accuracy, Some(1.0));
            }
        }
    }

    #[test]
    fn empty_log_and_orphans() {
        let trials = gen_trials(5, Task::T2, 1, &Layout::default()).unwrap();
        assert!(analyze(&trials, &[]).unwrap().is_empty());
        let mut log = simulate(&trials, Respondent::Random, 2).unwrap();
        log[3].trial_id = "t2-p09-c00".into();
        match analyze(&trials, &log) {
            Err(AnalyzeError::Orphans(o)) => assert_eq!(o, vec!["t2-p09-c00".to_string()]),
            other => panic!("{other:?}"),
        }
    }
}
