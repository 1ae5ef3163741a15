//! Graph-theoretic scatterplot diagnostics.
//!
//! Both axes are min-max scaled to `[0, 1]` and snapped to a `2^-32` grid, so
//! any per-axis increasing affine image of a point set yields bit-identical
//! measures. Coincident points are merged. The minimum spanning tree is taken
//! over the merged points, outliers are peeled with the
//! `q75 + 1.5·IQR` edge-length cut and the remaining measures use the tree
//! rebuilt without them.

mod archetypes;
mod deviation;
mod graph;

use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::geometry::Point;

pub use archetypes::{gen_archetypes, ArchetypeDataset, ARCHETYPE_NAMES};
pub use deviation::{
    deviation_scene, deviation_table, place_in_region, DeviationRegion, DeviationRow,
};
pub use graph::{alpha_complex, convex_hull, mst, AlphaComplex, Edge};

#[derive(Debug, Clone, PartialEq, Error)]
pub enum ScagnosticsError {
    #[error("degenerate point set: {0}")]
    Degenerate(String),
    #[error("non-finite coordinate at index {0}")]
    NonFinite(usize),
    #[error("dataset {dataset}: {detail}")]
    Placement { dataset: u32, detail: String },
    #[error("projection: {0}")]
    Projection(#[from] crate::projection::ProjectionError),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Measure {
    Outlying,
    Skewed,
    Clumpy,
    Sparse,
    Striated,
    Convex,
    Skinny,
    Stringy,
    Monotonic,
}

impl Measure {
    pub const ALL: [Measure; 9] = [
        Measure::Outlying,
        Measure::Skewed,
        Measure::Clumpy,
        Measure::Sparse,
        Measure::Striated,
        Measure::Convex,
        Measure::Skinny,
        Measure::Stringy,
        Measure::Monotonic,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            Measure::Outlying => "outlying",
            Measure::Skewed => "skewed",
            Measure::Clumpy => "clumpy",
            Measure::Sparse => "sparse",
            Measure::Striated => "striated",
            Measure::Convex => "convex",
            Measure::Skinny => "skinny",
            Measure::Stringy => "stringy",
            Measure::Monotonic => "monotonic",
        }
    }
}

impl fmt::Display for Measure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Default, Serialize, Deserialize)]
pub struct Scagnostics {
    pub outlying: f64,
    pub skewed: f64,
    pub clumpy: f64,
    pub sparse: f64,
    pub striated: f64,
    pub convex: f64,
    pub skinny: f64,
    pub stringy: f64,
    pub monotonic: f64,
}

impl Scagnostics {
    pub fn get(&self, m: Measure) -> f64 {
        match m {
            Measure::Outlying => self.outlying,
            Measure::Skewed => self.skewed,
            Measure::Clumpy => self.clumpy,
            Measure::Sparse => self.sparse,
            Measure::Striated => self.striated,
            Measure::Convex => self.convex,
            Measure::Skinny => self.skinny,
            Measure::Stringy => self.stringy,
            Measure::Monotonic => self.monotonic,
        }
    }

    pub fn to_array(&self) -> [f64; 9] {
        Measure::ALL.map(|m| self.get(m))
    }
}

const GRID: f64 = 4_294_967_296.0;

/// Min-max scale both axes to `[0, 1]`, snap, sort and merge duplicates. An
/// axis with zero range maps to 0.
pub fn normalize(points: &[Point]) -> Result<Vec<Point>, ScagnosticsError> {
    if let Some(i) = points.iter().position(|p| !p.is_finite()) {
        return Err(ScagnosticsError::NonFinite(i));
    }
    if points.len() < 3 {
        return Err(ScagnosticsError::Degenerate(format!(
            "{} points, need at least 3",
            points.len()
        )));
    }
    let (mut lo, mut hi) = (points[0], points[0]);
    for p in points {
        lo = Point::new(lo.x.min(p.x), lo.y.min(p.y));
        hi = Point::new(hi.x.max(p.x), hi.y.max(p.y));
    }
    let scale = |v: f64, lo: f64, hi: f64| {
        if hi > lo {
            ((v - lo) / (hi - lo) * GRID).round() / GRID
        } else {
            0.0
        }
    };
    let mut out: Vec<Point> = points
        .iter()
        .map(|p| Point::new(scale(p.x, lo.x, hi.x), scale(p.y, lo.y, hi.y)))
        .collect();
    out.sort_by(|a, b| a.x.total_cmp(&b.x).then(a.y.total_cmp(&b.y)));
    out.dedup();
    if out.len() < 3 {
        return Err(ScagnosticsError::Degenerate(format!(
            "{} distinct points, need at least 3",
            out.len()
        )));
    }
    Ok(out)
}

/// Linear-interpolation quantile of sorted data.
pub(crate) fn quantile(sorted: &[f64], q: f64) -> f64 {
    let n = sorted.len();
    if n == 0 {
        return 0.0;
    }
    let h = (n - 1) as f64 * q;
    let i = h.floor() as usize;
    if i + 1 >= n {
        return sorted[n - 1];
    }
    sorted[i] + (h - i as f64) * (sorted[i + 1] - sorted[i])
}

fn sorted_lengths(edges: &[Edge]) -> Vec<f64> {
    let mut v: Vec<f64> = edges.iter().map(|e| e.len).collect();
    v.sort_by(f64::total_cmp);
    v
}

/// Outlier cut on MST edge lengths.
pub fn outlier_cutoff(edges: &[Edge]) -> f64 {
    let l = sorted_lengths(edges);
    let (q25, q75) = (quantile(&l, 0.25), quantile(&l, 0.75));
    q75 + 1.5 * (q75 - q25)
}

/// Indices of points peeled as outliers and the total length of the tree
/// edges removed with them. A vertex is an outlier when all of its remaining
/// tree edges are longer than the cut; peeling repeats until nothing changes
/// and never leaves fewer than three points.
pub fn peel_outliers(n: usize, edges: &[Edge]) -> (Vec<usize>, f64) {
    let cut = outlier_cutoff(edges);
    let mut alive = vec![true; n];
    let mut alive_count = n;
    let mut removed = 0.0;
    let mut out = Vec::new();
    loop {
        let mut changed = false;
        for v in 0..n {
            if !alive[v] || alive_count <= 3 {
                continue;
            }
            let incident: Vec<&Edge> = edges
                .iter()
                .filter(|e| (e.a == v || e.b == v) && alive[e.a] && alive[e.b])
                .collect();
            if !incident.is_empty() && incident.iter().all(|e| e.len > cut) {
                alive[v] = false;
                alive_count -= 1;
                removed += incident.iter().map(|e| e.len).sum::<f64>();
                out.push(v);
                changed = true;
            }
        }
        if !changed {
            break;
        }
    }
    (out, removed)
}

fn degrees(n: usize, edges: &[Edge]) -> Vec<Vec<usize>> {
    let mut adj = vec![Vec::new(); n];
    for (k, e) in edges.iter().enumerate() {
        adj[e.a].push(k);
        adj[e.b].push(k);
    }
    adj
}

fn skewed(l: &[f64]) -> f64 {
    let (q10, q50, q90) = (quantile(l, 0.1), quantile(l, 0.5), quantile(l, 0.9));
    if q90 > q10 {
        (q90 - q50) / (q90 - q10)
    } else {
        0.0
    }
}

struct Dsu(Vec<usize>, Vec<usize>);

impl Dsu {
    fn new(n: usize) -> Self {
        Dsu((0..n).collect(), vec![1; n])
    }
    fn find(&mut self, mut i: usize) -> usize {
        while self.0[i] != i {
            self.0[i] = self.0[self.0[i]];
            i = self.0[i];
        }
        i
    }
    fn union(&mut self, a: usize, b: usize) {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra != rb {
            self.0[ra] = rb;
            self.1[rb] += self.1[ra];
        }
    }
}

/// For each tree edge, the smaller of the two clusters it joins at its own
/// length scale (the runt) weighs how much shorter the runt's edges are.
fn clumpy(n: usize, edges: &[Edge]) -> f64 {
    let mut best: f64 = 0.0;
    for e in edges {
        let mut d = Dsu::new(n);
        for f in edges {
            if f.len < e.len {
                d.union(f.a, f.b);
            }
        }
        let (ra, rb) = (d.find(e.a), d.find(e.b));
        let runt_root = if d.1[ra] < d.1[rb] || (d.1[ra] == d.1[rb] && ra < rb) {
            ra
        } else {
            rb
        };
        let size = d.1[runt_root];
        let max_len = edges
            .iter()
            .filter(|f| f.len < e.len && d.find(f.a) == runt_root)
            .map(|f| f.len)
            .fold(0.0, f64::max);
        best = best.max(size as f64 * (1.0 - max_len / e.len));
    }
    (2.0 * best / n as f64).min(1.0)
}

fn striated(pts: &[Point], edges: &[Edge], adj: &[Vec<usize>]) -> f64 {
    let mut count = 0;
    for (v, inc) in adj.iter().enumerate() {
        if inc.len() != 2 {
            continue;
        }
        let other = |k: usize| {
            let e = &edges[k];
            pts[if e.a == v { e.b } else { e.a }] - pts[v]
        };
        let (a, b) = (other(inc[0]), other(inc[1]));
        let cos = (a.x * b.x + a.y * b.y) / (a.x.hypot(a.y) * b.x.hypot(b.y));
        if cos < -0.75 {
            count += 1;
        }
    }
    count as f64 / pts.len() as f64
}

fn ranks(v: &[f64]) -> Vec<f64> {
    let mut idx: Vec<usize> = (0..v.len()).collect();
    idx.sort_by(|&a, &b| v[a].total_cmp(&v[b]));
    let mut r = vec![0.0; v.len()];
    let mut i = 0;
    while i < idx.len() {
        let mut j = i;
        while j + 1 < idx.len() && v[idx[j + 1]] == v[idx[i]] {
            j += 1;
        }
        let avg = (i + j) as f64 / 2.0 + 1.0;
        for &k in &idx[i..=j] {
            r[k] = avg;
        }
        i = j + 1;
    }
    r
}

/// Squared Spearman correlation.
fn monotonic(pts: &[Point]) -> f64 {
    let rx = ranks(&pts.iter().map(|p| p.x).collect::<Vec<_>>());
    let ry = ranks(&pts.iter().map(|p| p.y).collect::<Vec<_>>());
    let n = pts.len() as f64;
    let (mx, my) = (rx.iter().sum::<f64>() / n, ry.iter().sum::<f64>() / n);
    let (mut sxy, mut sxx, mut syy) = (0.0, 0.0, 0.0);
    for (a, b) in rx.iter().zip(&ry) {
        sxy += (a - mx) * (b - my);
        sxx += (a - mx) * (a - mx);
        syy += (b - my) * (b - my);
    }
    if sxx == 0.0 || syy == 0.0 {
        return 0.0;
    }
    (sxy * sxy / (sxx * syy)).min(1.0)
}

pub fn compute_measures(points: &[Point]) -> Result<Scagnostics, ScagnosticsError> {
    let all = normalize(points)?;
    let tree = mst(&all);
    let total: f64 = tree.iter().map(|e| e.len).sum();
    let (outliers, removed) = peel_outliers(all.len(), &tree);
    let pts: Vec<Point> = if outliers.is_empty() {
        all
    } else {
        all.iter()
            .enumerate()
            .filter(|(i, _)| !outliers.contains(i))
            .map(|(_, p)| *p)
            .collect()
    };
    let tree = if outliers.is_empty() { tree } else { mst(&pts) };
    let n = pts.len();
    let lens = sorted_lengths(&tree);
    let adj = degrees(n, &tree);
    let v1 = adj.iter().filter(|a| a.len() == 1).count();
    let v2 = adj.iter().filter(|a| a.len() == 2).count();

    let hull = convex_hull(&pts);
    let hull_area = graph::polygon_area(&hull);
    let alpha = alpha_complex(&pts, quantile(&lens, 0.9));
    let convex = if hull_area > 0.0 {
        (alpha.area / hull_area).clamp(0.0, 1.0)
    } else {
        0.0
    };
    let skinny = if alpha.area > 0.0 && alpha.perimeter > 0.0 {
        (1.0 - (4.0 * std::f64::consts::PI * alpha.area).sqrt() / alpha.perimeter).clamp(0.0, 1.0)
    } else {
        1.0
    };

    Ok(Scagnostics {
        outlying: if total > 0.0 {
            (removed / total).clamp(0.0, 1.0)
        } else {
            0.0
        },
        skewed: skewed(&lens),
        clumpy: clumpy(n, &tree),
        sparse: quantile(&lens, 0.9).min(1.0),
        striated: striated(&pts, &tree, &adj),
        convex,
        skinny,
        stringy: if n > v1 {
            v2 as f64 / (n - v1) as f64
        } else {
            0.0
        },
        monotonic: monotonic(&pts),
    })
}
