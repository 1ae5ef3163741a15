//! Projection of off-screen world points into the border band.
//!
//! Distances are encoded linearly: a point just off-screen lands on the
//! band's inner boundary, a point on the data-space bound lands on the
//! display edge.
//!
//! * Orthographic: sides compress the perpendicular coordinate and keep the
//!   parallel one; corners compress both axes independently.
//! * Radial: the cue stays on the ray from the radial origin (by default the
//!   viewport center) through the point, at the same fraction between the
//!   content rectangle and the display edge as the point sits between the
//!   viewport and the data-space bound.

use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::border::{off_screen_extent, BorderIntrusion};
use crate::geometry::{Point, Rect, RegionTag, Scene, Side};

/// Slack for screen-space band membership tests, in pixels.
const BAND_EPS: f64 = 1e-9;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Strategy {
    Orthographic,
    Radial,
}

impl Strategy {
    pub const ALL: [Strategy; 2] = [Strategy::Orthographic, Strategy::Radial];

    pub fn as_str(self) -> &'static str {
        match self {
            Strategy::Orthographic => "orthographic",
            Strategy::Radial => "radial",
        }
    }
}

impl fmt::Display for Strategy {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl std::str::FromStr for Strategy {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "orthographic" | "ortho" => Ok(Strategy::Orthographic),
            "radial" => Ok(Strategy::Radial),
            other => Err(format!("unknown strategy {other:?}")),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Error)]
pub enum ProjectionError {
    #[error("not off-screen: point lies inside the viewport")]
    NotOffScreen,
    #[error("out of bounds: point lies outside the data space")]
    OutOfBounds,
    #[error("degenerate band on the {0} side")]
    DegenerateBand(Side),
    #[error("degenerate band along the radial direction")]
    DegenerateRay,
    #[error("not in band: screen position is not inside the border band")]
    NotInBand,
    #[error("radial origin must lie strictly inside the viewport and content rectangle")]
    BadOrigin,
    #[error("point is not finite")]
    NonFinite,
}

/// A projected off-screen point.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ProjectedCue {
    pub screen_pos: Point,
    pub region: RegionTag,
    /// Normalized depth: 0 just off-screen, 1 at the data-space bound. For
    /// orthographic corners this is the horizontal component.
    pub t_depth: f64,
    /// Vertical depth component for orthographic corner cues.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub t_depth_y: Option<f64>,
}

/// Projects and unprojects points for one scene and one set of band sizes.
#[derive(Debug, Clone, Copy)]
pub struct Projector {
    scene: Scene,
    intrusion: BorderIntrusion,
    origin: Point,
}

impl Projector {
    pub fn new(scene: Scene, intrusion: BorderIntrusion) -> Self {
        Self {
            scene,
            intrusion,
            origin: scene.viewport.center(),
        }
    }

    /// Use `origin` (world) instead of the viewport center for radial rays.
    pub fn with_radial_origin(mut self, origin: Point) -> Result<Self, ProjectionError> {
        let vp = &self.scene.viewport;
        let inner = self.content_rect();
        let s = self.scene.world_to_screen(origin);
        let strictly =
            |r: &Rect, p: Point| p.x > r.min_x && p.x < r.max_x && p.y > r.min_y && p.y < r.max_y;
        if !origin.is_finite() || !strictly(vp, origin) || !strictly(&inner, s) {
            return Err(ProjectionError::BadOrigin);
        }
        self.origin = origin;
        Ok(self)
    }

    pub fn scene(&self) -> &Scene {
        &self.scene
    }

    pub fn intrusion(&self) -> &BorderIntrusion {
        &self.intrusion
    }

    pub fn radial_origin(&self) -> Point {
        self.origin
    }

    /// Screen rectangle left visible inside the band (screen inset by the
    /// four intrusions).
    pub fn content_rect(&self) -> Rect {
        let b = &self.intrusion;
        Rect {
            min_x: b.left,
            min_y: b.top,
            max_x: self.scene.screen_w - b.right,
            max_y: self.scene.screen_h - b.bottom,
        }
    }

    pub fn project(&self, strategy: Strategy, p: Point) -> Result<ProjectedCue, ProjectionError> {
        if !p.is_finite() {
            return Err(ProjectionError::NonFinite);
        }
        let region = self.scene.classify(p);
        if region == RegionTag::Inside {
            return Err(ProjectionError::NotOffScreen);
        }
        if !self.scene.data_space.contains(p) {
            return Err(ProjectionError::OutOfBounds);
        }
        match strategy {
            Strategy::Orthographic => self.project_orthographic(region, p),
            Strategy::Radial => self.project_radial(region, p),
        }
    }

    /// Element-wise projection; inside points pass through with their screen
    /// position and tag `inside`.
    pub fn project_batch(
        &self,
        strategy: Strategy,
        points: &[Point],
    ) -> Vec<Result<ProjectedCue, ProjectionError>> {
        points
            .iter()
            .map(|&p| {
                if p.is_finite() && self.scene.classify(p) == RegionTag::Inside {
                    Ok(ProjectedCue {
                        screen_pos: self.scene.world_to_screen(p),
                        region: RegionTag::Inside,
                        t_depth: 0.0,
                        t_depth_y: None,
                    })
                } else {
                    self.project(strategy, p)
                }
            })
            .collect()
    }

    /// Invert a cue back to world space.
    ///
    /// The orthographic side strips overlap the corner patches, so a screen
    /// position alone is ambiguous there; pass the cue's `region` to select
    /// the preimage. Without a hint the corner patches are attributed to the
    /// corner regions. The radial map is injective and ignores the hint.
    pub fn unproject(
        &self,
        strategy: Strategy,
        cue: Point,
        region: Option<RegionTag>,
    ) -> Result<Point, ProjectionError> {
        if !cue.is_finite() {
            return Err(ProjectionError::NonFinite);
        }
        match strategy {
            Strategy::Orthographic => {
                let region = match region {
                    Some(RegionTag::Inside) => return Err(ProjectionError::NotInBand),
                    Some(r) => r,
                    None => self.band_region(cue).ok_or(ProjectionError::NotInBand)?,
                };
                self.unproject_orthographic(region, cue)
            }
            Strategy::Radial => self.unproject_radial(cue),
        }
    }

    /// Invert a cue using the region it was projected with.
    pub fn unproject_cue(
        &self,
        strategy: Strategy,
        cue: &ProjectedCue,
    ) -> Result<Point, ProjectionError> {
        self.unproject(strategy, cue.screen_pos, Some(cue.region))
    }

    /// Band region a screen position falls in, attributing corner patches to
    /// corners. `None` inside the content rectangle or off the display.
    pub fn band_region(&self, s: Point) -> Option<RegionTag> {
        let screen = self.scene.screen_rect();
        if !within(&screen, s, BAND_EPS) {
            return None;
        }
        let b = &self.intrusion;
        let h = if b.left > 0.0 && s.x <= b.left {
            Some(Side::Left)
        } else if b.right > 0.0 && s.x >= self.scene.screen_w - b.right {
            Some(Side::Right)
        } else {
            None
        };
        let v = if b.top > 0.0 && s.y <= b.top {
            Some(Side::Top)
        } else if b.bottom > 0.0 && s.y >= self.scene.screen_h - b.bottom {
            Some(Side::Bottom)
        } else {
            None
        };
        Some(match (h, v) {
            (None, None) => return None,
            (Some(side), None) | (None, Some(side)) => RegionTag::from_side(side),
            (Some(Side::Left), Some(Side::Top)) => RegionTag::TopLeft,
            (Some(Side::Right), Some(Side::Top)) => RegionTag::TopRight,
            (Some(Side::Left), Some(Side::Bottom)) => RegionTag::BottomLeft,
            (Some(_), Some(_)) => RegionTag::BottomRight,
        })
    }

    /// Whether `s` lies in the orthographic band strip of `region`.
    pub fn in_region_band(&self, region: RegionTag, s: Point) -> bool {
        if region == RegionTag::Inside || !within(&self.scene.screen_rect(), s, BAND_EPS) {
            return false;
        }
        let ok_h = region
            .horizontal()
            .map_or(true, |side| self.in_strip(side, s));
        let ok_v = region
            .vertical()
            .map_or(true, |side| self.in_strip(side, s));
        ok_h && ok_v
    }

    /// Whether `s` lies anywhere in the band annulus.
    pub fn in_band(&self, s: Point) -> bool {
        let c = self.content_rect();
        let interior = s.x > c.min_x + BAND_EPS
            && s.x < c.max_x - BAND_EPS
            && s.y > c.min_y + BAND_EPS
            && s.y < c.max_y - BAND_EPS;
        !interior && within(&self.scene.screen_rect(), s, BAND_EPS)
    }

    fn in_strip(&self, side: Side, s: Point) -> bool {
        let b = self.intrusion.side(side);
        match side {
            Side::Left => s.x <= b + BAND_EPS,
            Side::Right => s.x >= self.scene.screen_w - b - BAND_EPS,
            Side::Top => s.y <= b + BAND_EPS,
            Side::Bottom => s.y >= self.scene.screen_h - b - BAND_EPS,
        }
    }

    /// Depth fraction and band coordinate for one axis of an orthographic cue.
    fn compress(&self, side: Side, p: Point) -> Result<(f64, f64), ProjectionError> {
        let vp = &self.scene.viewport;
        let extent = off_screen_extent(&self.scene, side);
        let band = self.intrusion.side(side);
        if extent <= 0.0 || band <= 0.0 {
            return Err(ProjectionError::DegenerateBand(side));
        }
        let d = match side {
            Side::Left => vp.min_x - p.x,
            Side::Right => p.x - vp.max_x,
            Side::Top => vp.min_y - p.y,
            Side::Bottom => p.y - vp.max_y,
        };
        let t = (d / extent).clamp(0.0, 1.0);
        let coord = match side {
            Side::Left | Side::Top => band * (1.0 - t),
            Side::Right => self.scene.screen_w - band + band * t,
            Side::Bottom => self.scene.screen_h - band + band * t,
        };
        Ok((t, coord))
    }

    fn decompress(&self, side: Side, coord: f64) -> Result<f64, ProjectionError> {
        let vp = &self.scene.viewport;
        let extent = off_screen_extent(&self.scene, side);
        let band = self.intrusion.side(side);
        if extent <= 0.0 || band <= 0.0 {
            return Err(ProjectionError::DegenerateBand(side));
        }
        let t = match side {
            Side::Left | Side::Top => 1.0 - coord / band,
            Side::Right => (coord - (self.scene.screen_w - band)) / band,
            Side::Bottom => (coord - (self.scene.screen_h - band)) / band,
        };
        if !(-BAND_EPS..=1.0 + BAND_EPS).contains(&t) {
            return Err(ProjectionError::NotInBand);
        }
        Ok(match side {
            Side::Left => vp.min_x - t * extent,
            Side::Right => vp.max_x + t * extent,
            Side::Top => vp.min_y - t * extent,
            Side::Bottom => vp.max_y + t * extent,
        })
    }

    fn project_orthographic(
        &self,
        region: RegionTag,
        p: Point,
    ) -> Result<ProjectedCue, ProjectionError> {
        let parallel = self.scene.world_to_screen(p);
        let (tx, sx) = match region.horizontal() {
            Some(side) => {
                let (t, c) = self.compress(side, p)?;
                (Some(t), c)
            }
            None => (None, parallel.x),
        };
        let (ty, sy) = match region.vertical() {
            Some(side) => {
                let (t, c) = self.compress(side, p)?;
                (Some(t), c)
            }
            None => (None, parallel.y),
        };
        let (t_depth, t_depth_y) = match (tx, ty) {
            (Some(a), Some(b)) => (a, Some(b)),
            (Some(a), None) | (None, Some(a)) => (a, None),
            (None, None) => unreachable!("off-screen region has at least one side"),
        };
        Ok(ProjectedCue {
            screen_pos: Point::new(sx, sy),
            region,
            t_depth,
            t_depth_y,
        })
    }

    fn unproject_orthographic(
        &self,
        region: RegionTag,
        cue: Point,
    ) -> Result<Point, ProjectionError> {
        if !self.in_region_band(region, cue) {
            return Err(ProjectionError::NotInBand);
        }
        let parallel = self.scene.screen_to_world(cue);
        let x = match region.horizontal() {
            Some(side) => self.decompress(side, cue.x)?,
            None => parallel.x,
        };
        let y = match region.vertical() {
            Some(side) => self.decompress(side, cue.y)?,
            None => parallel.y,
        };
        Ok(Point::new(x, y))
    }

    fn project_radial(&self, region: RegionTag, p: Point) -> Result<ProjectedCue, ProjectionError> {
        let dir = p - self.origin;
        let s_vp = exit_param(&self.scene.viewport, self.origin, dir);
        let s_ds = exit_param(&self.scene.data_space, self.origin, dir);
        if !(s_ds - s_vp > 0.0) {
            return Err(ProjectionError::DegenerateRay);
        }
        let f = ((1.0 - s_vp) / (s_ds - s_vp)).clamp(0.0, 1.0);

        let (kx, ky) = self.scene.scale();
        let so = self.scene.world_to_screen(self.origin);
        let sdir = Point::new(dir.x * kx, dir.y * ky);
        let q_in = exit_param(&self.content_rect(), so, sdir);
        let q_out = exit_param(&self.scene.screen_rect(), so, sdir);
        if !(q_out - q_in > 0.0) {
            return Err(ProjectionError::DegenerateRay);
        }
        Ok(ProjectedCue {
            screen_pos: so + sdir * (q_in + f * (q_out - q_in)),
            region,
            t_depth: f,
            t_depth_y: None,
        })
    }

    fn unproject_radial(&self, cue: Point) -> Result<Point, ProjectionError> {
        let so = self.scene.world_to_screen(self.origin);
        let sdir = cue - so;
        if sdir.x == 0.0 && sdir.y == 0.0 {
            return Err(ProjectionError::NotInBand);
        }
        let q_in = exit_param(&self.content_rect(), so, sdir);
        let q_out = exit_param(&self.scene.screen_rect(), so, sdir);
        if !(q_out - q_in > 0.0) {
            return Err(ProjectionError::DegenerateRay);
        }
        // The cue sits at parameter 1 along `sdir`.
        let f = (1.0 - q_in) / (q_out - q_in);
        let tol = BAND_EPS / (q_out - q_in).max(f64::MIN_POSITIVE) / sdir.x.hypot(sdir.y);
        if f < -tol || f > 1.0 + tol {
            return Err(ProjectionError::NotInBand);
        }
        let f = f.clamp(0.0, 1.0);

        let (kx, ky) = self.scene.scale();
        let dir = Point::new(sdir.x / kx, sdir.y / ky);
        let s_vp = exit_param(&self.scene.viewport, self.origin, dir);
        let s_ds = exit_param(&self.scene.data_space, self.origin, dir);
        if !(s_ds - s_vp > 0.0) {
            return Err(ProjectionError::DegenerateRay);
        }
        let p = self.origin + dir * (s_vp + f * (s_ds - s_vp));
        // rounding can leave a point on the data-space edge a hair outside
        let ds = &self.scene.data_space;
        Ok(Point::new(
            p.x.clamp(ds.min_x, ds.max_x),
            p.y.clamp(ds.min_y, ds.max_y),
        ))
    }
}

/// Parameter `s >= 0` at which the ray `origin + s·dir` leaves `rect`, for an
/// origin inside the rectangle.
fn exit_param(rect: &Rect, origin: Point, dir: Point) -> f64 {
    let axis = |o: f64, d: f64, lo: f64, hi: f64| {
        if d > 0.0 {
            (hi - o) / d
        } else if d < 0.0 {
            (lo - o) / d
        } else {
            f64::INFINITY
        }
    };
    axis(origin.x, dir.x, rect.min_x, rect.max_x).min(axis(origin.y, dir.y, rect.min_y, rect.max_y))
}

fn within(r: &Rect, p: Point, eps: f64) -> bool {
    p.x >= r.min_x - eps && p.x <= r.max_x + eps && p.y >= r.min_y - eps && p.y <= r.max_y + eps
}

/// Project with a throwaway [`Projector`].
pub fn project(
    scene: &Scene,
    intrusion: &BorderIntrusion,
    strategy: Strategy,
    p: Point,
) -> Result<ProjectedCue, ProjectionError> {
    Projector::new(*scene, *intrusion).project(strategy, p)
}

/// Unproject with a throwaway [`Projector`]; see [`Projector::unproject`].
pub fn unproject(
    scene: &Scene,
    intrusion: &BorderIntrusion,
    strategy: Strategy,
    cue: Point,
    region: Option<RegionTag>,
) -> Result<Point, ProjectionError> {
    Projector::new(*scene, *intrusion).unproject(strategy, cue, region)
}

pub fn project_batch(
    scene: &Scene,
    intrusion: &BorderIntrusion,
    strategy: Strategy,
    points: &[Point],
) -> Vec<Result<ProjectedCue, ProjectionError>> {
    Projector::new(*scene, *intrusion).project_batch(strategy, points)
}
