use serde::{Deserialize, Serialize};

use crate::geometry::Point;
use crate::projection::Strategy;

use super::{Color, ScenarioError, Task, Trial};

/// The cue a Task-1 participant saw, inverted under both strategies. World
/// coordinates, which are the pointing-hub frame.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Retraces {
    pub cue: Point,
    pub ortho: Point,
    pub radial: Point,
}

impl Retraces {
    pub fn get(&self, strategy: Strategy) -> Point {
        match strategy {
            Strategy::Orthographic => self.ortho,
            Strategy::Radial => self.radial,
        }
    }
}

fn expect_task(trial: &Trial, task: Task) -> Result<(), ScenarioError> {
    if trial.task == task {
        Ok(())
    } else {
        Err(ScenarioError::WrongTask(trial.id.clone(), task.number()))
    }
}

pub fn retraces(trial: &Trial) -> Result<Retraces, ScenarioError> {
    expect_task(trial, Task::T1)?;
    let p = trial
        .points
        .first()
        .ok_or_else(|| ScenarioError::Invalid(format!("trial {} has no point", trial.id)))?;
    let pr = trial.projector()?;
    let cue = pr.project(trial.cue_strategy, p.pos())?;
    Ok(Retraces {
        cue: cue.screen_pos,
        ortho: pr.unproject(Strategy::Orthographic, cue.screen_pos, Some(cue.region))?,
        radial: pr.unproject(Strategy::Radial, cue.screen_pos, None)?,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Classification {
    pub dist_ortho_px: f64,
    pub dist_radial_px: f64,
    pub chosen_strategy: Strategy,
    /// Both distances were equal; `chosen_strategy` is orthographic.
    pub tie: bool,
}

/// Attribute a Task-1 click (hub frame) to the strategy whose retrace is
/// nearer.
pub fn classify_t1(trial: &Trial, click: Point) -> Result<Classification, ScenarioError> {
    expect_task(trial, Task::T1)?;
    if !click.is_finite() {
        return Err(ScenarioError::Invalid(format!(
            "trial {}: non-finite click",
            trial.id
        )));
    }
    let hub = trial.hub();
    let vp = trial.viewport;
    let on_screen =
        click.x > vp.min_x && click.x < vp.max_x && click.y > vp.min_y && click.y < vp.max_y;
    if !hub.contains(click) || on_screen {
        return Err(ScenarioError::OutsideHub {
            x: click.x,
            y: click.y,
        });
    }
    let r = retraces(trial)?;
    let (kx, ky) = trial.scene()?.scale();
    let px = |q: Point| ((click.x - q.x) * kx).hypot((click.y - q.y) * ky);
    let (dist_ortho_px, dist_radial_px) = (px(r.ortho), px(r.radial));
    let tie = dist_ortho_px == dist_radial_px;
    let chosen_strategy = if dist_ortho_px <= dist_radial_px {
        Strategy::Orthographic
    } else {
        Strategy::Radial
    };
    Ok(Classification {
        dist_ortho_px,
        dist_radial_px,
        chosen_strategy,
        tie,
    })
}

/// Color of the point farther from the viewport.
pub fn ground_truth_t2(trial: &Trial) -> Result<Color, ScenarioError> {
    expect_task(trial, Task::T2)?;
    let [a, b] = trial.points.as_slice() else {
        return Err(ScenarioError::Invalid(format!(
            "trial {} needs two points",
            trial.id
        )));
    };
    let (da, db) = (
        trial.viewport.distance_to(a.pos()),
        trial.viewport.distance_to(b.pos()),
    );
    if da == db {
        return Err(ScenarioError::Invalid(format!(
            "trial {}: equal distances",
            trial.id
        )));
    }
    Ok(if da > db { a.color } else { b.color })
}

/// Color of the pair whose two points are closer together.
pub fn ground_truth_t3(trial: &Trial) -> Result<Color, ScenarioError> {
    expect_task(trial, Task::T3)?;
    let pair_len = |c: Color| -> Result<f64, ScenarioError> {
        let pts: Vec<_> = trial.points.iter().filter(|p| p.color == c).collect();
        match pts.as_slice() {
            [a, b] => Ok(a.pos().distance(b.pos())),
            _ => Err(ScenarioError::Invalid(format!(
                "trial {} needs two {} points",
                trial.id,
                c.as_str()
            ))),
        }
    };
    let (red, blue) = (pair_len(Color::Red)?, pair_len(Color::Blue)?);
    if red == blue {
        return Err(ScenarioError::Invalid(format!(
            "trial {}: equal pair distances",
            trial.id
        )));
    }
    Ok(if red < blue { Color::Red } else { Color::Blue })
}

pub fn ground_truth(trial: &Trial) -> Result<Color, ScenarioError> {
    match trial.task {
        Task::T1 => Err(ScenarioError::WrongTask(trial.id.clone(), 2)),
        Task::T2 => ground_truth_t2(trial),
        Task::T3 => ground_truth_t3(trial),
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct ChoiceOutcome {
    pub choice: Color,
    pub truth: Color,
    pub correct: bool,
}

pub fn classify_choice(trial: &Trial, choice: Color) -> Result<ChoiceOutcome, ScenarioError> {
    let truth = ground_truth(trial)?;
    Ok(ChoiceOutcome {
        choice,
        truth,
        correct: choice == truth,
    })
}
