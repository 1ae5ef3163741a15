//! `/frame`: border sizes and cue positions for one view.

use serde::{Deserialize, Serialize};
use thiserror::Error;

use offscreen_core::scagnostics::ArchetypeDataset;
use offscreen_core::scenario::Color;
use offscreen_core::{
    compute_intrusion, BorderConfig, BorderIntrusion, Point, Projector, RegionTag, Scene, Strategy,
};

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FramePoint {
    pub x: f64,
    pub y: f64,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub color: Option<Color>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub id: Option<String>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FrameRequest {
    pub scene: Scene,
    pub border: BorderConfig,
    pub strategy: Strategy,
    /// World point radial rays start from; the viewport center by default.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub radial_origin: Option<Point>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub dataset_id: Option<u32>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub points: Option<Vec<FramePoint>>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CueOut {
    /// Position of the point in the request (or dataset).
    pub index: usize,
    pub x: f64,
    pub y: f64,
    pub region: RegionTag,
    pub t: f64,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub t_y: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub color: Option<Color>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub id: Option<String>,
}

/// An on-screen point at its screen position.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct InsideOut {
    pub index: usize,
    pub x: f64,
    pub y: f64,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub color: Option<Color>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub id: Option<String>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PointError {
    pub index: usize,
    pub error: String,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct FrameResponse {
    pub scene: Scene,
    pub strategy: Strategy,
    pub intrusion: BorderIntrusion,
    pub cues: Vec<CueOut>,
    pub inside: Vec<InsideOut>,
    pub errors: Vec<PointError>,
}

#[derive(Debug, Clone, PartialEq, Error)]
pub enum FrameError {
    #[error("exactly one of dataset_id and points is required")]
    PointSource,
    #[error("unknown dataset {0}")]
    UnknownDataset(u32),
    #[error("border: {0}")]
    Border(String),
    #[error("radial_origin: {0}")]
    Origin(String),
}

pub fn frame(
    req: &FrameRequest,
    datasets: &[ArchetypeDataset],
) -> Result<FrameResponse, FrameError> {
    let points: Vec<FramePoint> = match (&req.dataset_id, &req.points) {
        (Some(id), None) => datasets
            .iter()
            .find(|d| d.id == *id)
            .ok_or(FrameError::UnknownDataset(*id))?
            .points
            .iter()
            .map(|p| FramePoint {
                x: p.x,
                y: p.y,
                color: None,
                id: None,
            })
            .collect(),
        (None, Some(p)) => p.clone(),
        _ => return Err(FrameError::PointSource),
    };
    let intrusion = compute_intrusion(&req.scene, &req.border)
        .map_err(|e| FrameError::Border(e.to_string()))?;
    let mut pr = Projector::new(req.scene, intrusion);
    if let Some(o) = req.radial_origin {
        pr = pr
            .with_radial_origin(o)
            .map_err(|e| FrameError::Origin(e.to_string()))?;
    }
    let mut out = FrameResponse {
        scene: req.scene,
        strategy: req.strategy,
        intrusion,
        cues: Vec::new(),
        inside: Vec::new(),
        errors: Vec::new(),
    };
    for (index, fp) in points.into_iter().enumerate() {
        let p = Point::new(fp.x, fp.y);
        if !p.is_finite() {
            out.errors.push(PointError {
                index,
                error: "non-finite coordinate".into(),
            });
            continue;
        }
        if req.scene.classify(p) == RegionTag::Inside {
            let s = req.scene.world_to_screen(p);
            out.inside.push(InsideOut {
                index,
                x: s.x,
                y: s.y,
                color: fp.color,
                id: fp.id,
            });
            continue;
        }
        match pr.project(req.strategy, p) {
            Ok(c) => out.cues.push(CueOut {
                index,
                x: c.screen_pos.x,
                y: c.screen_pos.y,
                region: c.region,
                t: c.t_depth,
                t_y: c.t_depth_y,
                color: fp.color,
                id: fp.id,
            }),
            Err(e) => out.errors.push(PointError {
                index,
                error: e.to_string(),
            }),
        }
    }
    Ok(out)
}
