//! Synthetic respondents for closed-loop checks.

use std::str::FromStr;

use offscreen_core::rng::PathRng;
use offscreen_core::scenario::io::Response;
use offscreen_core::scenario::{retraces, Color, ScenarioError, Task, Trial};
use offscreen_core::{Point, Strategy};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Respondent {
    /// Reads every cue back with the given strategy's inverse.
    Inverts(Strategy),
    /// Clicks uniformly in the hub and guesses colors.
    Random,
}

impl FromStr for Respondent {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "random" => Ok(Respondent::Random),
            other => other
                .parse::<Strategy>()
                .map(Respondent::Inverts)
                .map_err(|_| {
                    format!("unknown respondent {other:?} (orthographic, radial, random)")
                }),
        }
    }
}

fn believed_positions(
    trial: &Trial,
    strategy: Strategy,
) -> Result<Vec<(Color, Point)>, ScenarioError> {
    let pr = trial.projector()?;
    trial
        .points
        .iter()
        .map(|p| {
            let cue = pr.project(trial.cue_strategy, p.pos())?;
            let region = (strategy == Strategy::Orthographic).then_some(cue.region);
            Ok((p.color, pr.unproject(strategy, cue.screen_pos, region)?))
        })
        .collect()
}

fn judge(trial: &Trial, believed: &[(Color, Point)]) -> Color {
    match trial.task {
        Task::T2 => {
            let far = believed
                .iter()
                .max_by(|a, b| {
                    trial
                        .viewport
                        .distance_to(a.1)
                        .total_cmp(&trial.viewport.distance_to(b.1))
                })
                .unwrap();
            far.0
        }
        _ => {
            let pair = |c: Color| {
                let v: Vec<Point> = believed.iter().filter(|b| b.0 == c).map(|b| b.1).collect();
                v[0].distance(v[1])
            };
            if pair(Color::Red) <= pair(Color::Blue) {
                Color::Red
            } else {
                Color::Blue
            }
        }
    }
}

fn random_click(trial: &Trial, rng: &mut PathRng) -> Point {
    let (hub, vp) = (trial.hub(), trial.viewport);
    loop {
        let p = Point::new(
            rng.uniform(hub.min_x, hub.max_x),
            rng.uniform(hub.min_y, hub.max_y),
        );
        let on_screen = p.x > vp.min_x && p.x < vp.max_x && p.y > vp.min_y && p.y < vp.max_y;
        if !on_screen {
            return p;
        }
    }
}

/// One response per trial. Elapsed times are drawn between 0.5 and 3 s.
pub fn simulate(
    trials: &[Trial],
    who: Respondent,
    seed: u64,
) -> Result<Vec<Response>, ScenarioError> {
    trials
        .iter()
        .map(|t| {
            let mut rng = PathRng::new(seed, format!("respondent/{}", t.id));
            let elapsed_ms = 500 + rng.below(2500);
            let mut r = Response {
                trial_id: t.id.clone(),
                participant: t.participant,
                click_x: None,
                click_y: None,
                choice: None,
                elapsed_ms,
            };
            match (t.task, who) {
                (Task::T1, Respondent::Inverts(s)) => {
                    let p = retraces(t)?.get(s);
                    (r.click_x, r.click_y) = (Some(p.x), Some(p.y));
                }
                (Task::T1, Respondent::Random) => {
                    let p = random_click(t, &mut rng);
                    (r.click_x, r.click_y) = (Some(p.x), Some(p.y));
                }
                (_, Respondent::Inverts(s)) => {
                    r.choice = Some(judge(t, &believed_positions(t, s)?))
                }
                (_, Respondent::Random) => {
                    r.choice = Some(if rng.coin() { Color::Red } else { Color::Blue })
                }
            }
            Ok(r)
        })
        .collect()
}
