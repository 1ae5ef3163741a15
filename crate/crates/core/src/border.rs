//! Per-side border intrusion.
//!
//! Each side's band thickness is `α · zoom/max_zoom · min(1, off/extent)`,
//! where `off` is the world distance from the viewport side to the data-space
//! bound on that side and `extent` the viewport width (left/right) or height
//! (top/bottom). Fixed borders drop the position factor.

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::geometry::{Scene, Side};

/// Maximum band thickness in pixels used by the experiments.
pub const DEFAULT_MAX_INTRUSION_PX: f64 = 35.0;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum BorderError {
    #[error("{0}: value is not finite")]
    NonFinite(&'static str),
    #[error("max_intrusion_px must be positive, got {0}")]
    NonPositiveIntrusion(f64),
    #[error("zoom must satisfy 0 < zoom <= max_zoom, got zoom={zoom} max_zoom={max_zoom}")]
    BadZoom { zoom: f64, max_zoom: f64 },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum BorderMode {
    Fixed,
    Adaptive,
}

impl BorderMode {
    pub fn as_str(self) -> &'static str {
        match self {
            BorderMode::Fixed => "fixed",
            BorderMode::Adaptive => "adaptive",
        }
    }
}

impl std::str::FromStr for BorderMode {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "fixed" => Ok(BorderMode::Fixed),
            "adaptive" => Ok(BorderMode::Adaptive),
            other => Err(format!("unknown border mode {other:?}")),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct BorderConfig {
    #[serde(default = "default_alpha")]
    pub max_intrusion_px: f64,
    #[serde(default = "one")]
    pub zoom: f64,
    #[serde(default = "one")]
    pub max_zoom: f64,
    pub mode: BorderMode,
}

fn default_alpha() -> f64 {
    DEFAULT_MAX_INTRUSION_PX
}

fn one() -> f64 {
    1.0
}

impl BorderConfig {
    /// The experiment configuration: α = 35 px, zoom factor 1.
    pub fn experiment(mode: BorderMode) -> Self {
        Self {
            max_intrusion_px: DEFAULT_MAX_INTRUSION_PX,
            zoom: 1.0,
            max_zoom: 1.0,
            mode,
        }
    }

    pub fn validate(&self) -> Result<(), BorderError> {
        for (name, v) in [
            ("max_intrusion_px", self.max_intrusion_px),
            ("zoom", self.zoom),
            ("max_zoom", self.max_zoom),
        ] {
            if !v.is_finite() {
                return Err(BorderError::NonFinite(name));
            }
        }
        if self.max_intrusion_px <= 0.0 {
            return Err(BorderError::NonPositiveIntrusion(self.max_intrusion_px));
        }
        if !(self.zoom > 0.0 && self.zoom <= self.max_zoom) {
            return Err(BorderError::BadZoom {
                zoom: self.zoom,
                max_zoom: self.max_zoom,
            });
        }
        Ok(())
    }
}

/// Band thickness in pixels for each display edge.
#[derive(Debug, Clone, Copy, PartialEq, Default, Serialize, Deserialize)]
pub struct BorderIntrusion {
    pub top: f64,
    pub left: f64,
    pub bottom: f64,
    pub right: f64,
}

impl BorderIntrusion {
    pub fn uniform(px: f64) -> Self {
        Self {
            top: px,
            left: px,
            bottom: px,
            right: px,
        }
    }

    pub fn side(&self, side: Side) -> f64 {
        match side {
            Side::Top => self.top,
            Side::Left => self.left,
            Side::Bottom => self.bottom,
            Side::Right => self.right,
        }
    }

    fn side_mut(&mut self, side: Side) -> &mut f64 {
        match side {
            Side::Top => &mut self.top,
            Side::Left => &mut self.left,
            Side::Bottom => &mut self.bottom,
            Side::Right => &mut self.right,
        }
    }
}

/// World distance from the viewport's `side` to the data bound on that side,
/// clamped at 0 when the viewport overshoots the bound.
pub fn off_screen_extent(scene: &Scene, side: Side) -> f64 {
    let (vp, ds) = (&scene.viewport, &scene.data_space);
    let d = match side {
        Side::Top => vp.min_y - ds.min_y,
        Side::Left => vp.min_x - ds.min_x,
        Side::Bottom => ds.max_y - vp.max_y,
        Side::Right => ds.max_x - vp.max_x,
    };
    d.max(0.0)
}

pub fn compute_intrusion(
    scene: &Scene,
    cfg: &BorderConfig,
) -> Result<BorderIntrusion, BorderError> {
    cfg.validate()?;
    let vp = &scene.viewport;
    let ds = &scene.data_space;
    for (name, v) in [
        ("viewport", [vp.min_x, vp.min_y, vp.max_x, vp.max_y]),
        ("data_space", [ds.min_x, ds.min_y, ds.max_x, ds.max_y]),
        ("screen", [scene.screen_w, scene.screen_h, 0.0, 0.0]),
    ] {
        if v.iter().any(|c| !c.is_finite()) {
            return Err(BorderError::NonFinite(name));
        }
    }

    let base = cfg.max_intrusion_px * (cfg.zoom / cfg.max_zoom);
    let mut out = BorderIntrusion::default();
    for side in Side::ALL {
        let position = match cfg.mode {
            BorderMode::Fixed => 1.0,
            BorderMode::Adaptive => {
                let dim = if side.is_horizontal_edge() {
                    vp.height()
                } else {
                    vp.width()
                };
                (off_screen_extent(scene, side) / dim).min(1.0)
            }
        };
        let half_screen = if side.is_horizontal_edge() {
            scene.screen_h
        } else {
            scene.screen_w
        } / 2.0;
        *out.side_mut(side) = (base * position).min(half_screen);
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geometry::Rect;
    use proptest::prelude::*;

    fn hd_scene(data: [f64; 4]) -> Scene {
        Scene::new(
            Rect::try_from(data).unwrap(),
            Rect::new(0.0, 0.0, 1920.0, 1080.0).unwrap(),
            1920.0,
            1080.0,
        )
        .unwrap()
    }

    #[test]
    fn half_extent_gives_half_band() {
        let s = hd_scene([-960.0, 0.0, 2880.0, 1080.0]);
        let b = compute_intrusion(&s, &BorderConfig::experiment(BorderMode::Adaptive)).unwrap();
        assert!((b.right - 17.5).abs() < 1e-12);
        assert!((b.left - 17.5).abs() < 1e-12);
        assert_eq!(b.top, 0.0);
        assert_eq!(b.bottom, 0.0);
    }

    #[test]
    fn clamps_at_full_band() {
        let s = hd_scene([-5000.0, -2000.0, 9000.0, 1080.0 + 1080.0]);
        let b = compute_intrusion(&s, &BorderConfig::experiment(BorderMode::Adaptive)).unwrap();
        assert_eq!(b.left, 35.0);
        assert_eq!(b.right, 35.0);
        assert_eq!(b.top, 35.0);
        assert_eq!(b.bottom, 35.0);
    }

    #[test]
    fn zoom_scales_linearly() {
        let s = hd_scene([-5000.0, -5000.0, 9000.0, 9000.0]);
        let cfg = BorderConfig {
            zoom: 0.5,
            max_zoom: 1.0,
            ..BorderConfig::experiment(BorderMode::Adaptive)
        };
        let b = compute_intrusion(&s, &cfg).unwrap();
        assert!((b.right - 17.5).abs() < 1e-12);
    }

    #[test]
    fn overshooting_viewport_clamps_to_zero() {
        let s = hd_scene([100.0, 0.0, 1500.0, 1080.0]);
        let b = compute_intrusion(&s, &BorderConfig::experiment(BorderMode::Adaptive)).unwrap();
        assert_eq!(b.left, 0.0);
        assert_eq!(b.right, 0.0);
    }

    #[test]
    fn fixed_mode_is_uniform() {
        let s = hd_scene([0.0, 0.0, 1920.0, 1080.0]);
        let b = compute_intrusion(&s, &BorderConfig::experiment(BorderMode::Fixed)).unwrap();
        assert_eq!(b, BorderIntrusion::uniform(35.0));
    }

    #[test]
    fn never_exceeds_half_screen() {
        let s = Scene::new(
            Rect::new(-100.0, -100.0, 200.0, 200.0).unwrap(),
            Rect::new(0.0, 0.0, 100.0, 100.0).unwrap(),
            40.0,
            30.0,
        )
        .unwrap();
        let b = compute_intrusion(&s, &BorderConfig::experiment(BorderMode::Fixed)).unwrap();
        assert_eq!(b.left, 20.0);
        assert_eq!(b.top, 15.0);
    }

    #[test]
    fn rejects_bad_config() {
        let s = hd_scene([-1.0, -1.0, 2000.0, 2000.0]);
        let mut cfg = BorderConfig::experiment(BorderMode::Adaptive);
        cfg.zoom = 2.0;
        assert!(matches!(
            compute_intrusion(&s, &cfg),
            Err(BorderError::BadZoom { .. })
        ));
        cfg.zoom = 1.0;
        cfg.max_intrusion_px = 0.0;
        assert!(compute_intrusion(&s, &cfg).is_err());
        cfg.max_intrusion_px = f64::INFINITY;
        assert!(matches!(
            compute_intrusion(&s, &cfg),
            Err(BorderError::NonFinite("max_intrusion_px"))
        ));
    }

    #[test]
    fn config_defaults_from_json() {
        let cfg: BorderConfig = serde_json::from_str(r#"{"mode":"adaptive"}"#).unwrap();
        assert_eq!(cfg, BorderConfig::experiment(BorderMode::Adaptive));
    }

    proptest! {
        #[test]
        fn adaptive_is_monotone_in_extent(d1 in 0.0f64..5000.0, d2 in 0.0f64..5000.0) {
            let (lo, hi) = if d1 <= d2 { (d1, d2) } else { (d2, d1) };
            let cfg = BorderConfig::experiment(BorderMode::Adaptive);
            let a = compute_intrusion(&hd_scene([0.0, 0.0, 1920.0 + lo, 1080.0]), &cfg).unwrap();
            let b = compute_intrusion(&hd_scene([0.0, 0.0, 1920.0 + hi, 1080.0]), &cfg).unwrap();
            prop_assert!(a.right <= b.right);
            if lo >= 1920.0 {
                prop_assert_eq!(a.right, 35.0);
            }
            prop_assert_eq!(a.right == 0.0, lo == 0.0);
        }

        #[test]
        fn fixed_ignores_position(ox in -3000.0f64..3000.0, oy in -3000.0f64..3000.0) {
            let s = Scene::new(
                Rect::new(-2000.0, -2000.0, 4000.0, 3000.0).unwrap(),
                Rect::new(ox, oy, ox + 1920.0, oy + 1080.0).unwrap(),
                1920.0,
                1080.0,
            ).unwrap();
            let b = compute_intrusion(&s, &BorderConfig::experiment(BorderMode::Fixed)).unwrap();
            prop_assert_eq!(b, BorderIntrusion::uniform(35.0));
        }
    }
}
