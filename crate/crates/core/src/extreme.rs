//! Disagreement between the two projection strategies.
//!
//! The angle between the orthographic and radial projection lines through an
//! off-screen point is zero on the viewport medians and (square viewports)
//! diagonals, and peaks on the edge extensions that separate side and corner
//! regions. Those eight half-lines are the stimulus axes of the user study.

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::border::off_screen_extent;
use crate::geometry::{Point, RegionTag, Scene, Side};

#[derive(Debug, Clone, PartialEq, Error)]
pub enum ExtremeError {
    #[error("point is inside the viewport")]
    NotOffScreen,
    #[error("point coincides with the radial origin")]
    AtOrigin,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct AngleAnalysis {
    /// Angle between the two projection directions, radians in `[0, π]`.
    pub alpha: f64,
    pub ortho_dir: Point,
    pub radial_dir: Point,
    pub region: RegionTag,
}

/// Unit direction along which the orthographic strategy moves `region`'s
/// points toward the viewport. Corners use the diagonal toward the corner.
pub fn orthographic_direction(region: RegionTag) -> Option<Point> {
    let h = match region.horizontal() {
        Some(Side::Left) => 1.0,
        Some(_) => -1.0,
        None => 0.0,
    };
    let v = match region.vertical() {
        Some(Side::Top) => 1.0,
        Some(_) => -1.0,
        None => 0.0,
    };
    let n = f64::hypot(h, v);
    (n > 0.0).then(|| Point::new(h / n, v / n))
}

/// Angle between the orthographic and radial projection lines through `p`,
/// with the radial origin at the viewport center.
pub fn alpha(scene: &Scene, p: Point) -> Result<AngleAnalysis, ExtremeError> {
    alpha_from(scene, scene.viewport.center(), p)
}

pub fn alpha_from(scene: &Scene, origin: Point, p: Point) -> Result<AngleAnalysis, ExtremeError> {
    let region = scene.classify(p);
    let ortho_dir = orthographic_direction(region).ok_or(ExtremeError::NotOffScreen)?;
    let to_origin = origin - p;
    let len = to_origin.x.hypot(to_origin.y);
    if len == 0.0 {
        return Err(ExtremeError::AtOrigin);
    }
    let radial_dir = to_origin * (1.0 / len);
    let cross = ortho_dir.x * radial_dir.y - ortho_dir.y * radial_dir.x;
    let dot = ortho_dir.x * radial_dir.x + ortho_dir.y * radial_dir.y;
    Ok(AngleAnalysis {
        alpha: cross.abs().atan2(dot),
        ortho_dir,
        radial_dir,
        region,
    })
}

/// Viewport corners in clockwise order starting top-left.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Corner {
    TopLeft,
    TopRight,
    BottomRight,
    BottomLeft,
}

impl Corner {
    pub const CLOCKWISE: [Corner; 4] = [
        Corner::TopLeft,
        Corner::TopRight,
        Corner::BottomRight,
        Corner::BottomLeft,
    ];

    /// Signs of the corner relative to the viewport center (`y` down).
    pub fn signs(self) -> (i8, i8) {
        match self {
            Corner::TopLeft => (-1, -1),
            Corner::TopRight => (1, -1),
            Corner::BottomRight => (1, 1),
            Corner::BottomLeft => (-1, 1),
        }
    }

    pub fn from_signs(sx: i8, sy: i8) -> Self {
        match (sx < 0, sy < 0) {
            (true, true) => Corner::TopLeft,
            (false, true) => Corner::TopRight,
            (false, false) => Corner::BottomRight,
            (true, false) => Corner::BottomLeft,
        }
    }

    fn ordinal(self) -> usize {
        Corner::CLOCKWISE.iter().position(|&c| c == self).unwrap()
    }
}

/// Identifier of one of the eight extreme-case axes. Index `2·corner + k`
/// where `k = 0` runs horizontally and `k = 1` vertically away from the
/// corner.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct AxisId(pub u8);

impl AxisId {
    pub const ALL: [AxisId; 8] = [
        AxisId(0),
        AxisId(1),
        AxisId(2),
        AxisId(3),
        AxisId(4),
        AxisId(5),
        AxisId(6),
        AxisId(7),
    ];

    pub fn new(corner: Corner, vertical: bool) -> Self {
        AxisId((corner.ordinal() * 2 + vertical as usize) as u8)
    }

    pub fn corner(self) -> Corner {
        Corner::CLOCKWISE[(self.0 / 2) as usize]
    }

    pub fn is_vertical(self) -> bool {
        self.0 % 2 == 1
    }

    /// Side region the axis runs through.
    pub fn side(self) -> Side {
        let (sx, sy) = self.corner().signs();
        match (self.is_vertical(), sx < 0, sy < 0) {
            (false, true, _) => Side::Left,
            (false, false, _) => Side::Right,
            (true, _, true) => Side::Top,
            (true, _, false) => Side::Bottom,
        }
    }
}

/// One element of the symmetry group of the square: optional transpose
/// followed by optional reflections of x and y (in center-relative
/// coordinates).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Dihedral {
    pub transpose: bool,
    pub flip_x: bool,
    pub flip_y: bool,
}

impl Dihedral {
    pub const IDENTITY: Dihedral = Dihedral {
        transpose: false,
        flip_x: false,
        flip_y: false,
    };

    pub fn all() -> [Dihedral; 8] {
        let mut out = [Dihedral::IDENTITY; 8];
        for (k, g) in out.iter_mut().enumerate() {
            *g = Dihedral::from_index(k as u8);
        }
        out
    }

    pub fn from_index(k: u8) -> Self {
        Dihedral {
            transpose: k & 4 != 0,
            flip_x: k & 1 != 0,
            flip_y: k & 2 != 0,
        }
    }

    pub fn index(self) -> u8 {
        (self.transpose as u8) << 2 | (self.flip_y as u8) << 1 | self.flip_x as u8
    }

    pub fn apply_signs(self, (mut x, mut y): (i8, i8)) -> (i8, i8) {
        if self.transpose {
            std::mem::swap(&mut x, &mut y);
        }
        if self.flip_x {
            x = -x;
        }
        if self.flip_y {
            y = -y;
        }
        (x, y)
    }

    pub fn apply_axis(self, axis: AxisId) -> AxisId {
        let (sx, sy) = self.apply_signs(axis.corner().signs());
        let vertical = axis.is_vertical() != self.transpose;
        AxisId::new(Corner::from_signs(sx, sy), vertical)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ExtremeAxis {
    pub index: u8,
    /// Viewport corner the axis starts from (world).
    pub origin: Point,
    /// Unit direction along the edge extension.
    pub direction: Point,
}

impl ExtremeAxis {
    pub fn id(&self) -> AxisId {
        AxisId(self.index)
    }

    pub fn at(&self, distance: f64) -> Point {
        self.origin + self.direction * distance
    }

    /// Length of the axis inside the scene's data space.
    pub fn length(&self, scene: &Scene) -> f64 {
        off_screen_extent(scene, self.id().side())
    }
}

pub fn axis(scene: &Scene, id: AxisId) -> ExtremeAxis {
    let vp = &scene.viewport;
    let (sx, sy) = id.corner().signs();
    let origin = Point::new(
        if sx < 0 { vp.min_x } else { vp.max_x },
        if sy < 0 { vp.min_y } else { vp.max_y },
    );
    let direction = if id.is_vertical() {
        Point::new(0.0, sy as f64)
    } else {
        Point::new(sx as f64, 0.0)
    };
    ExtremeAxis {
        index: id.0,
        origin,
        direction,
    }
}

/// The eight axes, corner-major, clockwise from the top-left corner.
pub fn extreme_axes(scene: &Scene) -> [ExtremeAxis; 8] {
    AxisId::ALL.map(|id| axis(scene, id))
}

/// One sample of an α grid.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct AlphaSample {
    pub x: f64,
    pub y: f64,
    pub region: RegionTag,
    pub alpha: f64,
}

/// α on a regular grid over the off-screen part of the data space.
pub fn alpha_grid(scene: &Scene, step: f64) -> Vec<AlphaSample> {
    let ds = &scene.data_space;
    let nx = (ds.width() / step).floor() as usize;
    let ny = (ds.height() / step).floor() as usize;
    let mut out = Vec::new();
    for j in 0..=ny {
        for i in 0..=nx {
            let p = Point::new(ds.min_x + i as f64 * step, ds.min_y + j as f64 * step);
            if let Ok(a) = alpha(scene, p) {
                out.push(AlphaSample {
                    x: p.x,
                    y: p.y,
                    region: a.region,
                    alpha: a.alpha,
                });
            }
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geometry::Rect;
    use proptest::prelude::*;
    use std::collections::HashSet;

    fn square() -> Scene {
        Scene::new(
            Rect::new(-1000.0, -1000.0, 2000.0, 2000.0).unwrap(),
            Rect::new(0.0, 0.0, 1000.0, 1000.0).unwrap(),
            1000.0,
            1000.0,
        )
        .unwrap()
    }

    #[test]
    fn reference_angles() {
        let s = square();
        assert!(alpha(&s, Point::new(1500.0, 500.0)).unwrap().alpha.abs() < 1e-12);
        assert!(alpha(&s, Point::new(1500.0, 1500.0)).unwrap().alpha.abs() < 1e-12);
        let a = alpha(&s, Point::new(1500.0, 800.0)).unwrap().alpha;
        assert!((a - (300.0f64 / 1000.0).atan()).abs() < 1e-12);
        assert!((a - 0.2915).abs() < 1e-4);
        let t = alpha(&s, Point::new(1500.0, 1000.0)).unwrap();
        assert_eq!(t.region, RegionTag::Right);
        assert!((t.alpha - 0.5f64.atan()).abs() < 1e-12);
        assert!((t.alpha - 0.4636).abs() < 1e-4);
    }

    #[test]
    fn transition_maximizes_along_vertical_line() {
        let s = square();
        let best = (0..=500)
            .map(|k| 500.0 + k as f64)
            .map(|y| (y, alpha(&s, Point::new(1500.0, y)).unwrap().alpha))
            .max_by(|a, b| a.1.total_cmp(&b.1))
            .unwrap();
        assert_eq!(best.0, 1000.0);
    }

    #[test]
    fn inside_is_an_error() {
        assert_eq!(
            alpha(&square(), Point::new(10.0, 10.0)),
            Err(ExtremeError::NotOffScreen)
        );
    }

    #[test]
    fn eight_axes_in_clockwise_order() {
        let axes = extreme_axes(&square());
        assert_eq!(axes.len(), 8);
        let br: Vec<_> = axes
            .iter()
            .filter(|a| a.origin == Point::new(1000.0, 1000.0))
            .map(|a| a.direction)
            .collect();
        assert_eq!(br, vec![Point::new(1.0, 0.0), Point::new(0.0, 1.0)]);
        let origins: Vec<_> = axes.iter().step_by(2).map(|a| a.origin).collect();
        assert_eq!(
            origins,
            vec![
                Point::new(0.0, 0.0),
                Point::new(1000.0, 0.0),
                Point::new(1000.0, 1000.0),
                Point::new(0.0, 1000.0)
            ]
        );
        for (i, a) in axes.iter().enumerate() {
            assert_eq!(a.index as usize, i);
        }
    }

    #[test]
    fn axis_points_are_side_points() {
        let s = square();
        for a in extreme_axes(&s) {
            for k in 1..=100 {
                let p = a.at(k as f64 * 10.0);
                let tag = s.classify(p);
                assert_eq!(tag.side(), Some(a.id().side()), "axis {} at {p:?}", a.index);
            }
        }
    }

    #[test]
    fn axes_follow_quarter_turns() {
        // quarter turn about the square's center: (x, y) -> (1000 - y, x)
        let s = square();
        let rot = |p: Point| Point::new(1000.0 - p.y, p.x);
        let rot_dir = |d: Point| Point::new(-d.y, d.x);
        let key = |o: Point, d: Point| (o.x as i64, o.y as i64, d.x as i64, d.y as i64);
        let before: HashSet<_> = extreme_axes(&s)
            .iter()
            .map(|a| key(rot(a.origin), rot_dir(a.direction)))
            .collect();
        let after: HashSet<_> = extreme_axes(&s)
            .iter()
            .map(|a| key(a.origin, a.direction))
            .collect();
        assert_eq!(before, after);
    }

    #[test]
    fn group_acts_freely_and_transitively_on_axes() {
        let from0: HashSet<_> = Dihedral::all()
            .iter()
            .map(|g| g.apply_axis(AxisId(0)))
            .collect();
        assert_eq!(from0.len(), 8);
        for g in Dihedral::all() {
            assert_eq!(Dihedral::from_index(g.index()), g);
        }
    }

    #[test]
    fn group_action_matches_geometry() {
        // apply g to the axis geometry of a square centered at the origin
        let s = Scene::new(
            Rect::new(-3.0, -3.0, 3.0, 3.0).unwrap(),
            Rect::new(-1.0, -1.0, 1.0, 1.0).unwrap(),
            100.0,
            100.0,
        )
        .unwrap();
        let map = |g: Dihedral, p: Point| {
            let (mut x, mut y) = (p.x, p.y);
            if g.transpose {
                std::mem::swap(&mut x, &mut y);
            }
            if g.flip_x {
                x = -x;
            }
            if g.flip_y {
                y = -y;
            }
            Point::new(x, y)
        };
        for g in Dihedral::all() {
            for id in AxisId::ALL {
                let a = axis(&s, id);
                let b = axis(&s, g.apply_axis(id));
                assert_eq!(map(g, a.origin), b.origin);
                assert_eq!(map(g, a.direction), b.direction);
            }
        }
    }

    proptest! {
        #[test]
        fn zero_on_identity_loci(d in 1.0f64..1000.0, which in 0usize..8) {
            let s = square();
            let c = 500.0;
            let e = 500.0 + d;
            let pts = [
                Point::new(c + e, c), Point::new(c - e, c), Point::new(c, c + e), Point::new(c, c - e),
                Point::new(c + e, c + e), Point::new(c - e, c - e), Point::new(c + e, c - e), Point::new(c - e, c + e),
            ];
            let a = alpha(&s, pts[which]).unwrap().alpha;
            prop_assert!(a.abs() < 1e-9);
        }

        #[test]
        fn dihedral_invariance(x in -1000.0f64..2000.0, y in -1000.0f64..2000.0, k in 0u8..8) {
            let s = square();
            let p = Point::new(x, y);
            prop_assume!([x, y].iter().all(|c| (c - 0.0).abs() > 1e-6 && (c - 1000.0).abs() > 1e-6));
            prop_assume!(s.classify(p) != RegionTag::Inside);
            let g = Dihedral::from_index(k);
            let (mut u, mut v) = (x - 500.0, y - 500.0);
            if g.transpose { std::mem::swap(&mut u, &mut v); }
            if g.flip_x { u = -u; }
            if g.flip_y { v = -v; }
            let q = Point::new(u + 500.0, v + 500.0);
            let a = alpha(&s, p).unwrap().alpha;
            let b = alpha(&s, q).unwrap().alpha;
            prop_assert!((a - b).abs() < 1e-12);
        }
    }
}
