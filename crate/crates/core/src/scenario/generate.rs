use crate::border::BorderMode;
use crate::extreme::{axis, AxisId, Dihedral};
use crate::geometry::{Point, Scene, Side};
use crate::projection::{Projector, Strategy};
use crate::rng::PathRng;

use super::cases::{task2_cases, task3_cases, task3_realizations};
use super::{Color, HubMode, Layout, ScenarioError, SideExtents, Task, Trial, TrialPoint};

/// Fraction of each axis segment excluded at both ends.
pub const AXIS_END_MARGIN: f64 = 0.05;
/// Minimum gap between the compared distances of a Task-2/3 stimulus, as a
/// fraction of the smaller viewport dimension.
pub const GROUND_TRUTH_MARGIN: f64 = 0.02;
/// Orthographic and radial cues (and their retraces) of every stimulus point
/// differ by more than this.
pub const MIN_CUE_SEPARATION_PX: f64 = 1.0;

const MAX_ATTEMPTS: usize = 1000;

/// Draw per-side extents: one side (the reference) at its full extent, the
/// others uniformly within the inner 50 % of theirs.
pub fn gen_extents(rng: &mut PathRng, full: &SideExtents) -> (SideExtents, Side) {
    let reference = Side::ALL[rng.index(4)];
    let mut out = *full;
    for side in Side::ALL {
        if side != reference {
            out.set(side, full.get(side) * rng.uniform(0.25, 0.75));
        }
    }
    (out, reference)
}

struct Cell {
    rng: PathRng,
    seed_path: String,
}

impl Cell {
    fn new(seed: u64, path: String) -> Self {
        Cell {
            rng: PathRng::new(seed, path.clone()),
            seed_path: format!("{seed}:{path}"),
        }
    }
}

fn scene_for(layout: &Layout, ext: &SideExtents) -> Scene {
    Scene::new(
        layout.data_space(ext),
        layout.viewport,
        layout.screen[0],
        layout.screen[1],
    )
    .expect("layout extents are positive")
}

/// Distance along `axis` from its corner, uniform over the inner part of the
/// segment that lies in the data space.
fn place(rng: &mut PathRng, scene: &Scene, id: AxisId) -> (Point, f64) {
    let ax = axis(scene, id);
    let len = ax.length(scene);
    let s = len * rng.uniform(AXIS_END_MARGIN, 1.0 - AXIS_END_MARGIN);
    (ax.at(s), s)
}

/// Whether the two strategies visibly disagree on `p`: distinct cues, and
/// distinct retraces of the cue actually shown.
pub(crate) fn distinguishable(pr: &Projector, shown: Strategy, p: Point) -> bool {
    let (Ok(o), Ok(r)) = (
        pr.project(Strategy::Orthographic, p),
        pr.project(Strategy::Radial, p),
    ) else {
        return false;
    };
    if o.screen_pos.distance(r.screen_pos) <= MIN_CUE_SEPARATION_PX {
        return false;
    }
    let cue = if shown == Strategy::Orthographic {
        o
    } else {
        r
    };
    let (Ok(ro), Ok(rr)) = (
        pr.unproject(Strategy::Orthographic, cue.screen_pos, Some(cue.region)),
        pr.unproject(Strategy::Radial, cue.screen_pos, None),
    ) else {
        return false;
    };
    let (kx, ky) = pr.scene().scale();
    let d = ro - rr;
    (d.x * kx).hypot(d.y * ky) > MIN_CUE_SEPARATION_PX
}

fn projector_for(scene: Scene, mode: BorderMode) -> Projector {
    let b =
        crate::border::compute_intrusion(&scene, &crate::border::BorderConfig::experiment(mode))
            .expect("experiment border config is valid");
    Projector::new(scene, b)
}

struct Draft {
    border_mode: BorderMode,
    hub_mode: Option<HubMode>,
    extents: SideExtents,
    reference_side: Side,
    points: Vec<TrialPoint>,
    case_id: u32,
    transform: Option<u8>,
    cell: usize,
    seed_path: String,
}

fn finish(
    task: Task,
    layout: &Layout,
    participant: u32,
    seed: u64,
    mut drafts: Vec<Draft>,
) -> Vec<Trial> {
    let mut order_rng = PathRng::new(
        seed,
        format!("task{}/p{participant:02}/order", task.number()),
    );
    order_rng.shuffle(&mut drafts);
    drafts
        .into_iter()
        .enumerate()
        .map(|(order, d)| Trial {
            id: format!("t{}-p{participant:02}-c{:02}", task.number(), d.cell),
            task,
            participant,
            order: order as u32,
            border_mode: d.border_mode,
            hub_mode: d.hub_mode,
            data_space: layout.data_space(&d.extents),
            full_space: layout.full_space(),
            viewport: layout.viewport,
            screen: layout.screen,
            reference_side: d.reference_side,
            cue_strategy: Strategy::Orthographic,
            points: d.points,
            case_id: d.case_id,
            transform: d.transform,
            seed_path: d.seed_path,
        })
        .collect()
}

/// 2 border modes × 2 hub modes × 8 axes, shuffled.
pub fn gen_task1(
    seed: u64,
    layout: &Layout,
    participant: u32,
) -> Result<Vec<Trial>, ScenarioError> {
    let mut drafts = Vec::with_capacity(32);
    let mut cell = 0;
    for border in [BorderMode::Fixed, BorderMode::Adaptive] {
        for hub in [HubMode::Fixed, HubMode::Adaptive] {
            for id in AxisId::ALL {
                let mut c = Cell::new(seed, format!("task1/p{participant:02}/cell{cell:02}"));
                let (mut extents, reference_side) = gen_extents(&mut c.rng, &layout.full_extent);
                // fixed border with fixed hub shows the fully extended space
                if border == BorderMode::Fixed && hub == HubMode::Fixed {
                    extents = layout.full_extent;
                }
                let scene = scene_for(layout, &extents);
                let pr = projector_for(scene, border);
                let p = (0..MAX_ATTEMPTS)
                    .map(|_| place(&mut c.rng, &scene, id).0)
                    .find(|&p| distinguishable(&pr, Strategy::Orthographic, p))
                    .ok_or_else(|| ScenarioError::Generation {
                        trial: c.seed_path.clone(),
                        detail: "no distinguishable position on the axis".into(),
                    })?;
                drafts.push(Draft {
                    border_mode: border,
                    hub_mode: Some(hub),
                    extents,
                    reference_side,
                    points: vec![TrialPoint {
                        x: p.x,
                        y: p.y,
                        color: Color::Red,
                        axis: id,
                    }],
                    case_id: id.0 as u32,
                    transform: None,
                    cell,
                    seed_path: c.seed_path,
                });
                cell += 1;
            }
        }
    }
    Ok(finish(Task::T1, layout, participant, seed, drafts))
}

fn margin(layout: &Layout) -> f64 {
    GROUND_TRUTH_MARGIN * layout.viewport.width().min(layout.viewport.height())
}

/// Draw axes, extents and positions until every point is distinguishable and
/// `accept` holds for the positions.
fn place_all(
    c: &mut Cell,
    layout: &Layout,
    border: BorderMode,
    mut pick_axes: impl FnMut(&mut PathRng) -> Vec<AxisId>,
    accept: impl Fn(&[Point]) -> bool,
) -> Result<(SideExtents, Side, Vec<AxisId>, Vec<Point>), ScenarioError> {
    for _ in 0..MAX_ATTEMPTS {
        let axes = pick_axes(&mut c.rng);
        let (extents, reference) = gen_extents(&mut c.rng, &layout.full_extent);
        let scene = scene_for(layout, &extents);
        let pr = projector_for(scene, border);
        for _ in 0..20 {
            let pts: Vec<Point> = axes
                .iter()
                .map(|&id| place(&mut c.rng, &scene, id).0)
                .collect();
            if pts
                .iter()
                .all(|&p| distinguishable(&pr, Strategy::Orthographic, p))
                && accept(&pts)
            {
                return Ok((extents, reference, axes, pts));
            }
        }
    }
    Err(ScenarioError::Generation {
        trial: c.seed_path.clone(),
        detail: "could not satisfy placement constraints".into(),
    })
}

/// 2 border modes × 6 cases × 2 repetitions, each instance under a random
/// symmetry with random colors, shuffled.
pub fn gen_task2(
    seed: u64,
    layout: &Layout,
    participant: u32,
) -> Result<Vec<Trial>, ScenarioError> {
    let cases = task2_cases();
    let gap = margin(layout);
    let vp = layout.viewport;
    let mut drafts = Vec::with_capacity(24);
    let mut cell = 0;
    for border in [BorderMode::Fixed, BorderMode::Adaptive] {
        for (case_id, canonical) in cases.iter().enumerate() {
            for _rep in 0..2 {
                let mut c = Cell::new(seed, format!("task2/p{participant:02}/cell{cell:02}"));
                let g = Dihedral::from_index(c.rng.below(8) as u8);
                let pair = canonical.transformed(g);
                let first = if c.rng.coin() {
                    Color::Red
                } else {
                    Color::Blue
                };
                let (extents, reference_side, axes, pts) = place_all(
                    &mut c,
                    layout,
                    border,
                    |_| vec![pair.a, pair.b],
                    |p| (vp.distance_to(p[0]) - vp.distance_to(p[1])).abs() >= gap,
                )?;
                let colors = [first, first.other()];
                drafts.push(Draft {
                    border_mode: border,
                    hub_mode: None,
                    extents,
                    reference_side,
                    points: (0..2)
                        .map(|k| TrialPoint {
                            x: pts[k].x,
                            y: pts[k].y,
                            color: colors[k],
                            axis: axes[k],
                        })
                        .collect(),
                    case_id: case_id as u32,
                    transform: Some(g.index()),
                    cell,
                    seed_path: c.seed_path,
                });
                cell += 1;
            }
        }
    }
    Ok(finish(Task::T2, layout, participant, seed, drafts))
}

/// Assignment of Task-3 cases to participants: six distinct cases each, every
/// case used equally often overall.
#[derive(Debug, Clone, PartialEq)]
pub struct Task3Plan {
    pub assignments: Vec<[u32; 6]>,
}

impl Task3Plan {
    pub fn participants(&self) -> usize {
        self.assignments.len()
    }

    pub fn cases_for(&self, participant: u32) -> Option<&[u32; 6]> {
        self.assignments.get(participant as usize)
    }

    /// How often each of the 36 cases is assigned.
    pub fn coverage(&self) -> Vec<u32> {
        let mut hist = vec![0; 36];
        for a in &self.assignments {
            for &c in a {
                hist[c as usize] += 1;
            }
        }
        hist
    }
}

/// Deal the 36 cases in rounds: each group of six consecutive participants
/// receives one random permutation of all cases, six apiece.
pub fn task3_plan(seed: u64, participants: usize) -> Result<Task3Plan, ScenarioError> {
    let n_cases = task3_cases().len();
    let per = 6;
    let group = n_cases / per;
    if participants == 0 || participants % group != 0 {
        return Err(ScenarioError::PlanInfeasible(format!(
            "{participants} participants × {per} cases cannot cover {n_cases} cases evenly; \
             use a positive multiple of {group} participants"
        )));
    }
    let mut assignments = Vec::with_capacity(participants);
    for round in 0..participants / group {
        let mut rng = PathRng::new(seed, format!("task3/plan/round{round}"));
        let mut ids: Vec<u32> = (0..n_cases as u32).collect();
        rng.shuffle(&mut ids);
        for chunk in ids.chunks(per) {
            let mut a = [0u32; 6];
            a.copy_from_slice(chunk);
            assignments.push(a);
        }
    }
    Ok(Task3Plan { assignments })
}

/// 6 planned cases × 2 border modes × 2 repetitions, shuffled.
pub fn gen_task3(
    seed: u64,
    layout: &Layout,
    participant: u32,
    plan: &Task3Plan,
) -> Result<Vec<Trial>, ScenarioError> {
    let assigned = plan.cases_for(participant).ok_or_else(|| {
        ScenarioError::PlanInfeasible(format!(
            "participant {participant} is not covered by a plan for {} participants",
            plan.participants()
        ))
    })?;
    let cases = task3_cases();
    let gap = margin(layout);
    let mut drafts = Vec::with_capacity(24);
    let mut cell = 0;
    for border in [BorderMode::Fixed, BorderMode::Adaptive] {
        for &case_id in assigned {
            for _rep in 0..2 {
                let mut c = Cell::new(seed, format!("task3/p{participant:02}/cell{cell:02}"));
                let options = task3_realizations(cases[case_id as usize]);
                // some realizations can rarely meet the margin, so redraw them too
                let pick = |rng: &mut PathRng| {
                    let (red, blue) = options[rng.index(options.len())];
                    vec![red.a, red.b, blue.a, blue.b]
                };
                let (extents, reference_side, axes, pts) =
                    place_all(&mut c, layout, border, pick, |p| {
                        (p[0].distance(p[1]) - p[2].distance(p[3])).abs() >= gap
                    })?;
                let colors = [Color::Red, Color::Red, Color::Blue, Color::Blue];
                drafts.push(Draft {
                    border_mode: border,
                    hub_mode: None,
                    extents,
                    reference_side,
                    points: (0..4)
                        .map(|k| TrialPoint {
                            x: pts[k].x,
                            y: pts[k].y,
                            color: colors[k],
                            axis: axes[k],
                        })
                        .collect(),
                    case_id,
                    transform: None,
                    cell,
                    seed_path: c.seed_path,
                });
                cell += 1;
            }
        }
    }
    Ok(finish(Task::T3, layout, participant, seed, drafts))
}

/// All trials of one task for `participants` participants, in participant
/// order.
pub fn gen_trials(
    seed: u64,
    task: Task,
    participants: usize,
    layout: &Layout,
) -> Result<Vec<Trial>, ScenarioError> {
    let plan = match task {
        Task::T3 => Some(task3_plan(seed, participants)?),
        _ => None,
    };
    let mut out = Vec::with_capacity(participants * task.trials_per_participant());
    for p in 0..participants as u32 {
        out.extend(match task {
            Task::T1 => gen_task1(seed, layout, p)?,
            Task::T2 => gen_task2(seed, layout, p)?,
            Task::T3 => gen_task3(seed, layout, p, plan.as_ref().unwrap())?,
        });
    }
    Ok(out)
}
