use std::f64::consts::TAU;

use serde::{Deserialize, Serialize};

use crate::geometry::Point;
use crate::rng::PathRng;

pub const ARCHETYPE_NAMES: [&str; 12] = [
    "uniform",
    "gaussian",
    "two-clusters",
    "three-clusters",
    "line",
    "parabola",
    "sine",
    "spiral",
    "ring",
    "striated",
    "outliers",
    "sparse-grid",
];

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ArchetypeDataset {
    /// 1-based.
    pub id: u32,
    pub name: String,
    pub points: Vec<Point>,
}

fn gaussian_blob(rng: &mut PathRng, n: usize, c: Point, sd: f64) -> Vec<Point> {
    (0..n)
        .map(|_| Point::new(c.x + sd * rng.normal(), c.y + sd * rng.normal()))
        .collect()
}

fn build(name: &str, rng: &mut PathRng) -> Vec<Point> {
    match name {
        "uniform" => (0..300)
            .map(|_| Point::new(rng.unit(), rng.unit()))
            .collect(),
        "gaussian" => gaussian_blob(rng, 300, Point::new(0.0, 0.0), 1.0),
        "two-clusters" => {
            let mut v = gaussian_blob(rng, 150, Point::new(0.0, 0.0), 0.5);
            v.extend(gaussian_blob(rng, 150, Point::new(5.0, 3.0), 0.5));
            v
        }
        "three-clusters" => {
            let mut v = gaussian_blob(rng, 100, Point::new(0.0, 0.0), 0.4);
            v.extend(gaussian_blob(rng, 100, Point::new(4.0, 0.5), 0.4));
            v.extend(gaussian_blob(rng, 100, Point::new(2.0, 4.0), 0.4));
            v
        }
        "line" => (0..200)
            .map(|_| {
                let x = rng.unit();
                Point::new(x, 0.8 * x + 0.02 * rng.normal())
            })
            .collect(),
        "parabola" => (0..250)
            .map(|_| {
                let x = rng.uniform(-1.0, 1.0);
                Point::new(x, x * x + 0.02 * rng.normal())
            })
            .collect(),
        "sine" => (0..300)
            .map(|_| {
                let x = rng.uniform(0.0, 2.0 * TAU);
                Point::new(x, x.sin() + 0.05 * rng.normal())
            })
            .collect(),
        "spiral" => (0..300)
            .map(|_| {
                let t = rng.uniform(0.5, 3.0 * TAU);
                let r = t + 0.1 * rng.normal();
                Point::new(r * t.cos(), r * t.sin())
            })
            .collect(),
        "ring" => (0..300)
            .map(|_| {
                let t = rng.uniform(0.0, TAU);
                let r = 1.0 + 0.05 * rng.normal();
                Point::new(r * t.cos(), r * t.sin())
            })
            .collect(),
        "striated" => (0..250)
            .map(|_| {
                let band = rng.index(5) as f64;
                Point::new(rng.unit(), band + 0.01 * rng.normal())
            })
            .collect(),
        "outliers" => {
            let mut v = gaussian_blob(rng, 200, Point::new(0.0, 0.0), 0.5);
            for _ in 0..6 {
                let t = rng.uniform(0.0, TAU);
                let r = rng.uniform(5.0, 8.0);
                v.push(Point::new(r * t.cos(), r * t.sin()));
            }
            v
        }
        "sparse-grid" => {
            let mut v = Vec::new();
            for i in 0..12 {
                for j in 0..12 {
                    if rng.unit() < 0.8 {
                        v.push(Point::new(
                            i as f64 + 0.1 * rng.normal(),
                            j as f64 + 0.1 * rng.normal(),
                        ));
                    }
                }
            }
            v
        }
        _ => unreachable!("unknown archetype {name}"),
    }
}

/// The twelve test datasets. Each is a deterministic function of `seed`.
pub fn gen_archetypes(seed: u64) -> Vec<ArchetypeDataset> {
    ARCHETYPE_NAMES
        .iter()
        .enumerate()
        .map(|(i, &name)| {
            let mut rng = PathRng::new(seed, format!("archetype/{name}"));
            ArchetypeDataset {
                id: i as u32 + 1,
                name: name.to_string(),
                points: build(name, &mut rng),
            }
        })
        .collect()
}
