//! Shared coordinate types, the viewport-to-screen map and off-screen region
//! classification.
//!
//! World and screen share one orientation: `y` grows downward.

use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum GeometryError {
    #[error("{field}: value is not finite")]
    NonFinite { field: &'static str },
    #[error("{field}: empty rectangle ({detail})")]
    EmptyRect { field: &'static str, detail: String },
    #[error("{field}: screen dimensions must be positive, got {w}x{h}")]
    BadScreen { field: &'static str, w: f64, h: f64 },
}

/// A 2D point in world or screen units; which one is implied by context.
#[derive(Debug, Clone, Copy, PartialEq, Default, Serialize, Deserialize)]
pub struct Point {
    pub x: f64,
    pub y: f64,
}

impl Point {
    pub const fn new(x: f64, y: f64) -> Self {
        Self { x, y }
    }

    pub fn distance(self, other: Point) -> f64 {
        (self.x - other.x).hypot(self.y - other.y)
    }

    pub fn is_finite(self) -> bool {
        self.x.is_finite() && self.y.is_finite()
    }
}

impl std::ops::Add for Point {
    type Output = Point;
    fn add(self, rhs: Point) -> Point {
        Point::new(self.x + rhs.x, self.y + rhs.y)
    }
}

impl std::ops::Sub for Point {
    type Output = Point;
    fn sub(self, rhs: Point) -> Point {
        Point::new(self.x - rhs.x, self.y - rhs.y)
    }
}

impl std::ops::Mul<f64> for Point {
    type Output = Point;
    fn mul(self, rhs: f64) -> Point {
        Point::new(self.x * rhs, self.y * rhs)
    }
}

/// Axis-aligned rectangle. Serialized as `[min_x, min_y, max_x, max_y]`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "[f64; 4]", into = "[f64; 4]")]
pub struct Rect {
    pub min_x: f64,
    pub min_y: f64,
    pub max_x: f64,
    pub max_y: f64,
}

impl Rect {
    pub fn new(min_x: f64, min_y: f64, max_x: f64, max_y: f64) -> Result<Self, GeometryError> {
        Self::checked("rect", [min_x, min_y, max_x, max_y])
    }

    pub(crate) fn checked(field: &'static str, v: [f64; 4]) -> Result<Self, GeometryError> {
        if v.iter().any(|c| !c.is_finite()) {
            return Err(GeometryError::NonFinite { field });
        }
        let [min_x, min_y, max_x, max_y] = v;
        if max_x <= min_x || max_y <= min_y {
            return Err(GeometryError::EmptyRect {
                field,
                detail: format!("[{min_x}, {min_y}, {max_x}, {max_y}]"),
            });
        }
        Ok(Self {
            min_x,
            min_y,
            max_x,
            max_y,
        })
    }

    pub fn width(&self) -> f64 {
        self.max_x - self.min_x
    }

    pub fn height(&self) -> f64 {
        self.max_y - self.min_y
    }

    pub fn center(&self) -> Point {
        Point::new(
            0.5 * (self.min_x + self.max_x),
            0.5 * (self.min_y + self.max_y),
        )
    }

    /// Closed containment test.
    pub fn contains(&self, p: Point) -> bool {
        p.x >= self.min_x && p.x <= self.max_x && p.y >= self.min_y && p.y <= self.max_y
    }

    /// Euclidean distance from `p` to the rectangle (0 inside).
    pub fn distance_to(&self, p: Point) -> f64 {
        let dx = (self.min_x - p.x).max(0.0).max(p.x - self.max_x);
        let dy = (self.min_y - p.y).max(0.0).max(p.y - self.max_y);
        dx.hypot(dy)
    }

    /// Grow each side outward by the given amounts.
    pub fn expanded(&self, left: f64, top: f64, right: f64, bottom: f64) -> Rect {
        Rect {
            min_x: self.min_x - left,
            min_y: self.min_y - top,
            max_x: self.max_x + right,
            max_y: self.max_y + bottom,
        }
    }
}

impl TryFrom<[f64; 4]> for Rect {
    type Error = GeometryError;
    fn try_from(v: [f64; 4]) -> Result<Self, Self::Error> {
        Rect::checked("rect", v)
    }
}

impl From<Rect> for [f64; 4] {
    fn from(r: Rect) -> Self {
        [r.min_x, r.min_y, r.max_x, r.max_y]
    }
}

/// The navigable world (`data_space`), the window onto it (`viewport`) and
/// the pixel size of the display the viewport is mapped onto.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "SceneWire", into = "SceneWire")]
pub struct Scene {
    pub data_space: Rect,
    pub viewport: Rect,
    pub screen_w: f64,
    pub screen_h: f64,
}

#[derive(Serialize, Deserialize)]
struct SceneWire {
    data_space: [f64; 4],
    viewport: [f64; 4],
    screen: [f64; 2],
}

impl TryFrom<SceneWire> for Scene {
    type Error = GeometryError;
    fn try_from(w: SceneWire) -> Result<Self, Self::Error> {
        Scene::new(
            Rect::checked("data_space", w.data_space)?,
            Rect::checked("viewport", w.viewport)?,
            w.screen[0],
            w.screen[1],
        )
    }
}

impl From<Scene> for SceneWire {
    fn from(s: Scene) -> Self {
        SceneWire {
            data_space: s.data_space.into(),
            viewport: s.viewport.into(),
            screen: [s.screen_w, s.screen_h],
        }
    }
}

impl Scene {
    pub fn new(
        data_space: Rect,
        viewport: Rect,
        screen_w: f64,
        screen_h: f64,
    ) -> Result<Self, GeometryError> {
        if !(screen_w.is_finite() && screen_h.is_finite()) {
            return Err(GeometryError::NonFinite { field: "screen" });
        }
        if screen_w <= 0.0 || screen_h <= 0.0 {
            return Err(GeometryError::BadScreen {
                field: "screen",
                w: screen_w,
                h: screen_h,
            });
        }
        // Re-validate in case the rects were built by struct literal.
        let data_space = Rect::checked("data_space", data_space.into())?;
        let viewport = Rect::checked("viewport", viewport.into())?;
        Ok(Self {
            data_space,
            viewport,
            screen_w,
            screen_h,
        })
    }

    /// Pixels per world unit along x and y.
    pub fn scale(&self) -> (f64, f64) {
        (
            self.screen_w / self.viewport.width(),
            self.screen_h / self.viewport.height(),
        )
    }

    pub fn screen_rect(&self) -> Rect {
        Rect {
            min_x: 0.0,
            min_y: 0.0,
            max_x: self.screen_w,
            max_y: self.screen_h,
        }
    }

    pub fn world_to_screen(&self, p: Point) -> Point {
        let vp = &self.viewport;
        Point::new(
            (p.x - vp.min_x) / vp.width() * self.screen_w,
            (p.y - vp.min_y) / vp.height() * self.screen_h,
        )
    }

    pub fn screen_to_world(&self, s: Point) -> Point {
        let vp = &self.viewport;
        Point::new(
            vp.min_x + s.x / self.screen_w * vp.width(),
            vp.min_y + s.y / self.screen_h * vp.height(),
        )
    }

    pub fn classify(&self, p: Point) -> RegionTag {
        classify_region(&self.viewport, p)
    }
}

/// Side of a rectangle.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Side {
    Top,
    Left,
    Bottom,
    Right,
}

impl Side {
    pub const ALL: [Side; 4] = [Side::Top, Side::Left, Side::Bottom, Side::Right];

    pub fn is_horizontal_edge(self) -> bool {
        matches!(self, Side::Top | Side::Bottom)
    }

    pub fn as_str(self) -> &'static str {
        match self {
            Side::Top => "top",
            Side::Left => "left",
            Side::Bottom => "bottom",
            Side::Right => "right",
        }
    }
}

impl fmt::Display for Side {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

/// Horizontal and vertical position of a point relative to a rectangle.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Band {
    Before,
    Within,
    After,
}

/// Where a world point lies relative to the viewport.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum RegionTag {
    Inside,
    Left,
    Right,
    Top,
    Bottom,
    TopLeft,
    TopRight,
    BottomLeft,
    BottomRight,
}

impl RegionTag {
    pub const OFF_SCREEN: [RegionTag; 8] = [
        RegionTag::Left,
        RegionTag::Right,
        RegionTag::Top,
        RegionTag::Bottom,
        RegionTag::TopLeft,
        RegionTag::TopRight,
        RegionTag::BottomLeft,
        RegionTag::BottomRight,
    ];

    pub fn is_corner(self) -> bool {
        matches!(
            self,
            RegionTag::TopLeft
                | RegionTag::TopRight
                | RegionTag::BottomLeft
                | RegionTag::BottomRight
        )
    }

    pub fn side(self) -> Option<Side> {
        match self {
            RegionTag::Left => Some(Side::Left),
            RegionTag::Right => Some(Side::Right),
            RegionTag::Top => Some(Side::Top),
            RegionTag::Bottom => Some(Side::Bottom),
            _ => None,
        }
    }

    /// The horizontal side (left/right) this region lies beyond, if any.
    pub fn horizontal(self) -> Option<Side> {
        match self {
            RegionTag::Left | RegionTag::TopLeft | RegionTag::BottomLeft => Some(Side::Left),
            RegionTag::Right | RegionTag::TopRight | RegionTag::BottomRight => Some(Side::Right),
            _ => None,
        }
    }

    /// The vertical side (top/bottom) this region lies beyond, if any.
    pub fn vertical(self) -> Option<Side> {
        match self {
            RegionTag::Top | RegionTag::TopLeft | RegionTag::TopRight => Some(Side::Top),
            RegionTag::Bottom | RegionTag::BottomLeft | RegionTag::BottomRight => {
                Some(Side::Bottom)
            }
            _ => None,
        }
    }

    pub fn from_side(side: Side) -> Self {
        match side {
            Side::Top => RegionTag::Top,
            Side::Left => RegionTag::Left,
            Side::Bottom => RegionTag::Bottom,
            Side::Right => RegionTag::Right,
        }
    }

    pub fn as_str(self) -> &'static str {
        match self {
            RegionTag::Inside => "inside",
            RegionTag::Left => "left",
            RegionTag::Right => "right",
            RegionTag::Top => "top",
            RegionTag::Bottom => "bottom",
            RegionTag::TopLeft => "top-left",
            RegionTag::TopRight => "top-right",
            RegionTag::BottomLeft => "bottom-left",
            RegionTag::BottomRight => "bottom-right",
        }
    }
}

impl fmt::Display for RegionTag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

/// Classify `p` against the viewport.
///
/// The viewport is closed on its min edges and open on its max edges. A point
/// is in a corner only when both coordinates lie strictly outside the
/// viewport's extent; points on an edge extension belong to the side region.
pub fn classify_region(viewport: &Rect, p: Point) -> RegionTag {
    let bx = band(p.x, viewport.min_x, viewport.max_x);
    let by = band(p.y, viewport.min_y, viewport.max_y);
    match (bx, by) {
        (Band::Before, Band::Before) => RegionTag::TopLeft,
        (Band::After, Band::Before) => RegionTag::TopRight,
        (Band::Before, Band::After) => RegionTag::BottomLeft,
        (Band::After, Band::After) => RegionTag::BottomRight,
        (Band::Before, Band::Within) => RegionTag::Left,
        (Band::After, Band::Within) => RegionTag::Right,
        (Band::Within, Band::Before) => RegionTag::Top,
        (Band::Within, Band::After) => RegionTag::Bottom,
        (Band::Within, Band::Within) => {
            // Max edges are open: the closing edge belongs to the side region.
            if p.x == viewport.max_x {
                RegionTag::Right
            } else if p.y == viewport.max_y {
                RegionTag::Bottom
            } else {
                RegionTag::Inside
            }
        }
    }
}

fn band(v: f64, lo: f64, hi: f64) -> Band {
    if v < lo {
        Band::Before
    } else if v > hi {
        Band::After
    } else {
        Band::Within
    }
}
