use std::collections::BTreeSet;

use offscreen_core::scenario::io::trials_to_string;
use offscreen_core::scenario::*;
use offscreen_core::Strategy;

const SEED: u64 = 20_160_901;

#[test]
fn trial_counts_for_eighteen_participants() {
    let l = Layout::default();
    for (task, total) in [(Task::T1, 576), (Task::T2, 432), (Task::T3, 432)] {
        let trials = gen_trials(SEED, task, 18, &l).unwrap();
        assert_eq!(trials.len(), total, "{task}");
        for p in 0..18 {
            let n = trials.iter().filter(|t| t.participant == p).count();
            assert_eq!(n, task.trials_per_participant());
        }
        let ids: BTreeSet<_> = trials.iter().map(|t| &t.id).collect();
        assert_eq!(ids.len(), total);
        assert!(trials
            .iter()
            .all(|t| t.points.len() == task.points_per_trial()));
    }
}

#[test]
fn identical_seeds_give_identical_files() {
    let l = Layout::default();
    for task in [Task::T1, Task::T2, Task::T3] {
        let a = trials_to_string(&gen_trials(SEED, task, 6, &l).unwrap());
        let b = trials_to_string(&gen_trials(SEED, task, 6, &l).unwrap());
        assert_eq!(a, b);
    }
}

#[test]
fn points_strictly_off_screen_and_inside_data_space() {
    let l = Layout::default();
    for task in [Task::T1, Task::T2, Task::T3] {
        for t in gen_trials(SEED + 1, task, 6, &l).unwrap() {
            let ds = t.data_space;
            let vp = t.viewport;
            for p in &t.points {
                assert!(
                    p.x > ds.min_x && p.x < ds.max_x && p.y > ds.min_y && p.y < ds.max_y,
                    "{}",
                    t.id
                );
                assert!(vp.distance_to(p.pos()) > 0.0, "{}", t.id);
            }
        }
    }
}

#[test]
fn task3_coverage_and_disjoint_pairs() {
    let l = Layout::default();
    let plan = task3_plan(SEED, 18).unwrap();
    assert_eq!(plan.coverage(), vec![3; 36]);
    let trials = gen_trials(SEED, Task::T3, 18, &l).unwrap();
    let mut per_case = [0u32; 36];
    for t in &trials {
        per_case[t.case_id as usize] += 1;
        let red: Vec<_> = t
            .points
            .iter()
            .filter(|p| p.color == Color::Red)
            .map(|p| p.axis)
            .collect();
        let blue: Vec<_> = t
            .points
            .iter()
            .filter(|p| p.color == Color::Blue)
            .map(|p| p.axis)
            .collect();
        assert_eq!((red.len(), blue.len()), (2, 2));
        assert!(red.iter().all(|a| !blue.contains(a)));
    }
    // 3 participants × 2 border modes × 2 repetitions
    assert!(per_case.iter().all(|&n| n == 12));
}

#[test]
fn task2_six_orbits_and_distinct_axes() {
    assert_eq!(axis_pair_orbits().len(), 6);
    for t in gen_trials(SEED, Task::T2, 18, &Layout::default()).unwrap() {
        assert_ne!(t.points[0].axis, t.points[1].axis);
    }
}

#[test]
fn ground_truth_margin_fuzz() {
    // about ten thousand task-2/3 stimuli
    let l = Layout::default();
    let gap = GROUND_TRUTH_MARGIN * 1080.0;
    let mut n = 0;
    for seed in 0..10u64 {
        for t in gen_trials(seed, Task::T2, 18, &l).unwrap() {
            let d: Vec<f64> = t
                .points
                .iter()
                .map(|p| t.viewport.distance_to(p.pos()))
                .collect();
            assert!((d[0] - d[1]).abs() >= gap, "{}", t.id);
            ground_truth(&t).unwrap();
            n += 1;
        }
        for t in gen_trials(seed, Task::T3, 18, &l).unwrap() {
            let pair = |c: Color| {
                let v: Vec<_> = t
                    .points
                    .iter()
                    .filter(|p| p.color == c)
                    .map(|p| p.pos())
                    .collect();
                v[0].distance(v[1])
            };
            assert!(
                (pair(Color::Red) - pair(Color::Blue)).abs() >= gap,
                "{}",
                t.id
            );
            ground_truth(&t).unwrap();
            n += 1;
        }
    }
    assert!(n >= 8_640);
}

#[test]
fn retraces_differ_by_more_than_a_pixel() {
    for t in gen_trials(SEED, Task::T1, 18, &Layout::default()).unwrap() {
        let r = retraces(&t).unwrap();
        assert!(
            r.ortho.distance(r.radial) > MIN_CUE_SEPARATION_PX,
            "{}",
            t.id
        );
    }
}

#[test]
fn closed_loop_respondents() {
    let trials = gen_trials(SEED, Task::T1, 18, &Layout::default()).unwrap();
    for strategy in Strategy::ALL {
        let hits = trials
            .iter()
            .filter(|t| {
                let click = retraces(t).unwrap().get(strategy);
                classify_t1(t, click).unwrap().chosen_strategy == strategy
            })
            .count();
        assert_eq!(hits, trials.len(), "{strategy}");
    }
}

#[test]
fn task1_reference_side_frequencies() {
    let trials = gen_trials(SEED, Task::T1, 18, &Layout::default()).unwrap();
    let mut counts = std::collections::BTreeMap::new();
    for t in &trials {
        *counts.entry(t.reference_side).or_insert(0usize) += 1;
    }
    assert_eq!(counts.len(), 4);
}
