//! User-study stimuli: deterministic trial generation for the three tasks,
//! ground truth and response classification.
//!
//! World units of the experiment layout are display pixels: the viewport is
//! 1920×1080 and the surrounding area of the 2580×1440 display is the largest
//! possible data space (330 px left/right, 180 px top/bottom).

mod cases;
mod classify;
mod generate;
pub mod io;

use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::border::{compute_intrusion, BorderConfig, BorderIntrusion, BorderMode};
use crate::extreme::AxisId;
use crate::geometry::{Point, Rect, Scene, Side};
use crate::projection::{ProjectionError, Projector, Strategy};

pub use cases::{
    axis_pair_orbits, joint_pair_orbit_count, task2_cases, task3_cases, task3_realizations,
    AxisPair, Task3Case,
};
pub use classify::{
    classify_choice, classify_t1, ground_truth, ground_truth_t2, ground_truth_t3, retraces,
    ChoiceOutcome, Classification, Retraces,
};
pub use generate::{
    gen_extents, gen_task1, gen_task2, gen_task3, gen_trials, task3_plan, Task3Plan,
    AXIS_END_MARGIN, GROUND_TRUTH_MARGIN, MIN_CUE_SEPARATION_PX,
};

#[derive(Debug, Clone, PartialEq, Error)]
pub enum ScenarioError {
    #[error("task-3 plan infeasible: {0}")]
    PlanInfeasible(String),
    #[error("trial {trial}: {detail}")]
    Generation { trial: String, detail: String },
    #[error("trial {0} is not a task-{1} trial")]
    WrongTask(String, u8),
    #[error("click at ({x}, {y}) is outside the pointing hub")]
    OutsideHub { x: f64, y: f64 },
    #[error("response for trial {0} is missing a {1}")]
    MissingAnswer(String, &'static str),
    #[error("projection: {0}")]
    Projection(#[from] ProjectionError),
    #[error("{0}")]
    Invalid(String),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Task {
    T1,
    T2,
    T3,
}

impl Task {
    pub fn number(self) -> u8 {
        match self {
            Task::T1 => 1,
            Task::T2 => 2,
            Task::T3 => 3,
        }
    }

    pub fn from_number(n: u8) -> Option<Self> {
        match n {
            1 => Some(Task::T1),
            2 => Some(Task::T2),
            3 => Some(Task::T3),
            _ => None,
        }
    }

    /// Trials each participant performs.
    pub fn trials_per_participant(self) -> usize {
        match self {
            Task::T1 => 32,
            Task::T2 | Task::T3 => 24,
        }
    }

    pub fn points_per_trial(self) -> usize {
        match self {
            Task::T1 => 1,
            Task::T2 => 2,
            Task::T3 => 4,
        }
    }
}

impl fmt::Display for Task {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "T{}", self.number())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Color {
    Red,
    Blue,
}

impl Color {
    pub fn other(self) -> Color {
        match self {
            Color::Red => Color::Blue,
            Color::Blue => Color::Red,
        }
    }

    pub fn as_str(self) -> &'static str {
        match self {
            Color::Red => "red",
            Color::Blue => "blue",
        }
    }
}

impl std::str::FromStr for Color {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "red" => Ok(Color::Red),
            "blue" => Ok(Color::Blue),
            other => Err(format!("unknown color {other:?}")),
        }
    }
}

/// Extent of the pointing hub for Task 1.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum HubMode {
    /// Hub spans the largest possible data space.
    Fixed,
    /// Hub spans the trial's actual data space.
    Adaptive,
}

impl HubMode {
    pub fn as_str(self) -> &'static str {
        match self {
            HubMode::Fixed => "fixed",
            HubMode::Adaptive => "adaptive",
        }
    }
}

/// Per-side off-screen extents in world units.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SideExtents {
    pub top: f64,
    pub left: f64,
    pub bottom: f64,
    pub right: f64,
}

impl SideExtents {
    pub fn get(&self, side: Side) -> f64 {
        match side {
            Side::Top => self.top,
            Side::Left => self.left,
            Side::Bottom => self.bottom,
            Side::Right => self.right,
        }
    }

    pub fn set(&mut self, side: Side, v: f64) {
        match side {
            Side::Top => self.top = v,
            Side::Left => self.left = v,
            Side::Bottom => self.bottom = v,
            Side::Right => self.right = v,
        }
    }
}

/// Fixed geometry of the experiment display.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Layout {
    pub viewport: Rect,
    pub screen: [f64; 2],
    pub full_extent: SideExtents,
}

impl Default for Layout {
    fn default() -> Self {
        Layout {
            viewport: Rect {
                min_x: 0.0,
                min_y: 0.0,
                max_x: 1920.0,
                max_y: 1080.0,
            },
            screen: [1920.0, 1080.0],
            full_extent: SideExtents {
                top: 180.0,
                left: 330.0,
                bottom: 180.0,
                right: 330.0,
            },
        }
    }
}

impl Layout {
    pub fn data_space(&self, ext: &SideExtents) -> Rect {
        self.viewport
            .expanded(ext.left, ext.top, ext.right, ext.bottom)
    }

    pub fn full_space(&self) -> Rect {
        self.data_space(&self.full_extent)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct TrialPoint {
    pub x: f64,
    pub y: f64,
    pub color: Color,
    pub axis: AxisId,
}

impl TrialPoint {
    pub fn pos(&self) -> Point {
        Point::new(self.x, self.y)
    }
}

/// One stimulus.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Trial {
    pub id: String,
    pub task: Task,
    pub participant: u32,
    /// Position in the participant's (shuffled) sequence.
    pub order: u32,
    pub border_mode: BorderMode,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub hub_mode: Option<HubMode>,
    pub data_space: Rect,
    /// Largest possible data space (the fixed pointing hub).
    pub full_space: Rect,
    pub viewport: Rect,
    pub screen: [f64; 2],
    /// Side extended to its full extent as the area of reference.
    pub reference_side: Side,
    /// Strategy used to render the cues shown to the participant.
    pub cue_strategy: Strategy,
    pub points: Vec<TrialPoint>,
    pub case_id: u32,
    /// Symmetry applied to the canonical case (tasks 2 and 3).
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub transform: Option<u8>,
    pub seed_path: String,
}

impl Trial {
    pub fn scene(&self) -> Result<Scene, ScenarioError> {
        Scene::new(
            self.data_space,
            self.viewport,
            self.screen[0],
            self.screen[1],
        )
        .map_err(|e| ScenarioError::Invalid(format!("trial {}: {e}", self.id)))
    }

    pub fn intrusion(&self) -> Result<BorderIntrusion, ScenarioError> {
        compute_intrusion(&self.scene()?, &BorderConfig::experiment(self.border_mode))
            .map_err(|e| ScenarioError::Invalid(format!("trial {}: {e}", self.id)))
    }

    pub fn projector(&self) -> Result<Projector, ScenarioError> {
        Ok(Projector::new(self.scene()?, self.intrusion()?))
    }

    /// Region participants may click in (Task 1).
    pub fn hub(&self) -> Rect {
        match self.hub_mode {
            Some(HubMode::Fixed) => self.full_space,
            _ => self.data_space,
        }
    }
}
