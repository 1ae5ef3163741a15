use serde::{Deserialize, Serialize};

use crate::border::{compute_intrusion, BorderConfig, BorderIntrusion, BorderMode};
use crate::geometry::{Point, Rect, RegionTag, Scene};
use crate::projection::{Projector, Strategy};

use super::{compute_measures, ArchetypeDataset, Measure, ScagnosticsError};

/// Off-screen region a dataset is moved into. By symmetry one side of each
/// kind and one corner cover all eight.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum DeviationRegion {
    #[serde(rename = "left/right")]
    LeftRight,
    #[serde(rename = "top/bottom")]
    TopBottom,
    #[serde(rename = "corner")]
    Corner,
}

impl DeviationRegion {
    pub const ALL: [DeviationRegion; 3] = [
        DeviationRegion::LeftRight,
        DeviationRegion::TopBottom,
        DeviationRegion::Corner,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            DeviationRegion::LeftRight => "left/right",
            DeviationRegion::TopBottom => "top/bottom",
            DeviationRegion::Corner => "corner",
        }
    }

    pub fn tag(self) -> RegionTag {
        match self {
            DeviationRegion::LeftRight => RegionTag::Right,
            DeviationRegion::TopBottom => RegionTag::Bottom,
            DeviationRegion::Corner => RegionTag::BottomRight,
        }
    }

    /// World rectangle of the region within `scene`'s data space.
    pub fn rect(self, scene: &Scene) -> Rect {
        let (vp, ds) = (scene.viewport, scene.data_space);
        let (x0, x1) = match self {
            DeviationRegion::TopBottom => (vp.min_x, vp.max_x),
            _ => (vp.max_x, ds.max_x),
        };
        let (y0, y1) = match self {
            DeviationRegion::LeftRight => (vp.min_y, vp.max_y),
            _ => (vp.max_y, ds.max_y),
        };
        Rect {
            min_x: x0,
            min_y: y0,
            max_x: x1,
            max_y: y1,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct DeviationRow {
    pub dataset: u32,
    pub strategy: Strategy,
    pub region: DeviationRegion,
    pub measure: Measure,
    pub deviation: f64,
}

/// 16:9 viewport at 1:1 scale whose data space extends one viewport size past
/// every edge, with the adaptive border at zoom 1.
pub fn deviation_scene() -> (Scene, BorderIntrusion) {
    let vp = Rect {
        min_x: 0.0,
        min_y: 0.0,
        max_x: 1920.0,
        max_y: 1080.0,
    };
    let ds = vp.expanded(1920.0, 1080.0, 1920.0, 1080.0);
    let scene = Scene::new(ds, vp, 1920.0, 1080.0).expect("valid scene");
    let b = compute_intrusion(&scene, &BorderConfig::experiment(BorderMode::Adaptive))
        .expect("valid config");
    (scene, b)
}

/// Map the bounding box of `points` onto the central 80 % of `rect`.
pub fn place_in_region(points: &[Point], rect: &Rect) -> Vec<Point> {
    let (mut lo, mut hi) = (points[0], points[0]);
    for p in points {
        lo = Point::new(lo.x.min(p.x), lo.y.min(p.y));
        hi = Point::new(hi.x.max(p.x), hi.y.max(p.y));
    }
    let map = |v: f64, lo: f64, hi: f64, a: f64, b: f64| {
        let (a, b) = (a + 0.1 * (b - a), b - 0.1 * (b - a));
        if hi > lo {
            a + (v - lo) / (hi - lo) * (b - a)
        } else {
            (a + b) / 2.0
        }
    };
    points
        .iter()
        .map(|p| {
            Point::new(
                map(p.x, lo.x, hi.x, rect.min_x, rect.max_x),
                map(p.y, lo.y, hi.y, rect.min_y, rect.max_y),
            )
        })
        .collect()
}

/// Per-measure absolute deviation between each dataset, placed in each
/// region, and its projection into the border.
pub fn deviation_table(
    scene: &Scene,
    intrusion: &BorderIntrusion,
    strategy: Strategy,
    datasets: &[ArchetypeDataset],
) -> Result<Vec<DeviationRow>, ScagnosticsError> {
    let pr = Projector::new(*scene, *intrusion);
    let mut rows = Vec::with_capacity(datasets.len() * 27);
    for d in datasets {
        if d.points.is_empty() {
            return Err(ScagnosticsError::Placement {
                dataset: d.id,
                detail: "no points".into(),
            });
        }
        for region in DeviationRegion::ALL {
            let placed = place_in_region(&d.points, &region.rect(scene));
            if let Some(p) = placed.iter().find(|p| scene.classify(**p) != region.tag()) {
                return Err(ScagnosticsError::Placement {
                    dataset: d.id,
                    detail: format!("({}, {}) is not in region {}", p.x, p.y, region.as_str()),
                });
            }
            let before = compute_measures(&placed)?;
            let projected = placed
                .iter()
                .map(|p| pr.project(strategy, *p).map(|c| c.screen_pos))
                .collect::<Result<Vec<_>, _>>()?;
            let after = compute_measures(&projected)?;
            for m in Measure::ALL {
                rows.push(DeviationRow {
                    dataset: d.id,
                    strategy,
                    region,
                    measure: m,
                    deviation: (after.get(m) - before.get(m)).abs(),
                });
            }
        }
    }
    Ok(rows)
}
