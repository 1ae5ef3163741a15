use std::collections::HashMap;

use serde::{Deserialize, Serialize};
use spade::{DelaunayTriangulation, Point2, Triangulation};

use crate::geometry::Point;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Edge {
    pub a: usize,
    pub b: usize,
    pub len: f64,
}

/// Euclidean minimum spanning tree by Prim's algorithm on the complete graph.
/// Equal candidate lengths go to the lower vertex index.
pub fn mst(pts: &[Point]) -> Vec<Edge> {
    let n = pts.len();
    if n < 2 {
        return Vec::new();
    }
    let mut in_tree = vec![false; n];
    let mut best = vec![f64::INFINITY; n];
    let mut parent = vec![0usize; n];
    in_tree[0] = true;
    for j in 1..n {
        best[j] = pts[0].distance(pts[j]);
    }
    let mut edges = Vec::with_capacity(n - 1);
    for _ in 1..n {
        let mut v = usize::MAX;
        for j in 0..n {
            if !in_tree[j] && (v == usize::MAX || best[j] < best[v]) {
                v = j;
            }
        }
        in_tree[v] = true;
        edges.push(Edge {
            a: parent[v],
            b: v,
            len: best[v],
        });
        for j in 0..n {
            if !in_tree[j] {
                let d = pts[v].distance(pts[j]);
                if d < best[j] {
                    best[j] = d;
                    parent[j] = v;
                }
            }
        }
    }
    edges
}

fn cross(o: Point, a: Point, b: Point) -> f64 {
    (a.x - o.x) * (b.y - o.y) - (a.y - o.y) * (b.x - o.x)
}

/// Counter-clockwise hull (in a y-up frame) by the monotone chain; collinear
/// points are dropped.
pub fn convex_hull(pts: &[Point]) -> Vec<Point> {
    let mut p = pts.to_vec();
    p.sort_by(|a, b| a.x.total_cmp(&b.x).then(a.y.total_cmp(&b.y)));
    p.dedup();
    if p.len() < 3 {
        return p;
    }
    let mut lower: Vec<Point> = Vec::new();
    for &q in &p {
        while lower.len() >= 2 && cross(lower[lower.len() - 2], lower[lower.len() - 1], q) <= 0.0 {
            lower.pop();
        }
        lower.push(q);
    }
    let mut upper: Vec<Point> = Vec::new();
    for &q in p.iter().rev() {
        while upper.len() >= 2 && cross(upper[upper.len() - 2], upper[upper.len() - 1], q) <= 0.0 {
            upper.pop();
        }
        upper.push(q);
    }
    lower.pop();
    upper.pop();
    lower.extend(upper);
    lower
}

pub(crate) fn polygon_area(poly: &[Point]) -> f64 {
    if poly.len() < 3 {
        return 0.0;
    }
    let mut s = 0.0;
    for i in 0..poly.len() {
        let (a, b) = (poly[i], poly[(i + 1) % poly.len()]);
        s += a.x * b.y - b.x * a.y;
    }
    s.abs() / 2.0
}

#[derive(Debug, Clone, Copy, PartialEq, Default, Serialize, Deserialize)]
pub struct AlphaComplex {
    pub triangles: usize,
    pub area: f64,
    pub perimeter: f64,
}

/// Union of the Delaunay triangles whose circumradius is at most `alpha`:
/// total area and boundary length.
pub fn alpha_complex(pts: &[Point], alpha: f64) -> AlphaComplex {
    let mut tri: DelaunayTriangulation<Point2<f64>> = DelaunayTriangulation::new();
    for p in pts {
        if tri.insert(Point2::new(p.x, p.y)).is_err() {
            return AlphaComplex::default();
        }
    }
    let mut out = AlphaComplex::default();
    let mut edge_use: HashMap<(usize, usize), u32> = HashMap::new();
    let mut edge_len: HashMap<(usize, usize), f64> = HashMap::new();
    for face in tri.inner_faces() {
        let v = face.vertices();
        let p: Vec<Point> = v
            .iter()
            .map(|h| Point::new(h.position().x, h.position().y))
            .collect();
        let (a, b, c) = (
            p[1].distance(p[2]),
            p[0].distance(p[2]),
            p[0].distance(p[1]),
        );
        let area = cross(p[0], p[1], p[2]).abs() / 2.0;
        if area <= 0.0 {
            continue;
        }
        let r = a * b * c / (4.0 * area);
        if r > alpha {
            continue;
        }
        out.triangles += 1;
        out.area += area;
        for (i, j) in [(0, 1), (1, 2), (2, 0)] {
            let (x, y) = (v[i].fix().index(), v[j].fix().index());
            let key = (x.min(y), x.max(y));
            *edge_use.entry(key).or_default() += 1;
            edge_len.insert(key, p[i].distance(p[j]));
        }
    }
    let mut boundary: Vec<f64> = edge_use
        .iter()
        .filter(|(_, &n)| n == 1)
        .map(|(k, _)| edge_len[k])
        .collect();
    // fixed summation order
    boundary.sort_by(f64::total_cmp);
    out.perimeter = boundary.iter().sum();
    out
}
