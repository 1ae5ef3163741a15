"""Reference scagnostics computed with scipy, networkx and shapely.

Reads a JSON list of datasets ({"id", "name", "points": [{"x", "y"}, ...]})
and prints a JSON object mapping dataset name to its nine measures.

    python3 scagnostics_ref.py archetypes.json > scagnostics_ref.json
"""

import json
import math
import sys

import networkx as nx
import numpy as np
from scipy.sparse.csgraph import minimum_spanning_tree
from scipy.spatial import ConvexHull, Delaunay, distance_matrix
from scipy.stats import spearmanr
from shapely.geometry import Polygon
from shapely.ops import unary_union

MEASURES = ["outlying", "skewed", "clumpy", "sparse", "striated",
            "convex", "skinny", "stringy", "monotonic"]


def normalize(xy):
    lo, hi = xy.min(axis=0), xy.max(axis=0)
    rng = np.where(hi > lo, hi - lo, 1.0)
    s = np.where(hi > lo, np.round((xy - lo) / rng * 2.0**32) / 2.0**32, 0.0)
    return np.unique(s, axis=0)


def tree(xy):
    d = distance_matrix(xy, xy)
    t = minimum_spanning_tree(d).tocoo()
    g = nx.Graph()
    g.add_nodes_from(range(len(xy)))
    for a, b, w in zip(t.row, t.col, t.data):
        g.add_edge(int(a), int(b), len=float(w))
    return g


def lengths(g):
    return np.array(sorted(d["len"] for _, _, d in g.edges(data=True)))


def peel(g):
    l = lengths(g)
    q25, q75 = np.quantile(l, [0.25, 0.75])
    cut = q75 + 1.5 * (q75 - q25)
    h = g.copy()
    removed = 0.0
    out = []
    changed = True
    while changed:
        changed = False
        for v in sorted(h.nodes):
            if h.number_of_nodes() <= 3:
                break
            inc = [h.edges[v, u]["len"] for u in h.neighbors(v)]
            if inc and all(x > cut for x in inc):
                removed += sum(inc)
                h.remove_node(v)
                out.append(v)
                changed = True
    return out, removed


def clumpy(g):
    n = g.number_of_nodes()
    best = 0.0
    for a, b, d in g.edges(data=True):
        e = d["len"]
        short = nx.Graph()
        short.add_nodes_from(g.nodes)
        short.add_edges_from((u, v, dd) for u, v, dd in g.edges(data=True) if dd["len"] < e)
        ca = nx.node_connected_component(short, a)
        cb = nx.node_connected_component(short, b)
        runt = ca if len(ca) < len(cb) else cb if len(cb) < len(ca) else (ca if min(ca) < min(cb) else cb)
        sub = short.subgraph(runt)
        mx = max((dd["len"] for _, _, dd in sub.edges(data=True)), default=0.0)
        best = max(best, len(runt) * (1.0 - mx / e))
    return min(2.0 * best / n, 1.0)


def striated(g, xy):
    c = 0
    for v in g.nodes:
        nb = list(g.neighbors(v))
        if len(nb) != 2:
            continue
        a, b = xy[nb[0]] - xy[v], xy[nb[1]] - xy[v]
        if np.dot(a, b) / (np.linalg.norm(a) * np.linalg.norm(b)) < -0.75:
            c += 1
    return c / g.number_of_nodes()


def alpha_shape(xy, alpha):
    try:
        tri = Delaunay(xy)
    except Exception:
        return 0.0, 0.0
    polys = []
    for s in tri.simplices:
        p = xy[s]
        a = np.linalg.norm(p[1] - p[2])
        b = np.linalg.norm(p[0] - p[2])
        c = np.linalg.norm(p[0] - p[1])
        u, w = p[1] - p[0], p[2] - p[0]
        area = abs(u[0] * w[1] - u[1] * w[0]) / 2.0
        if area <= 0 or a * b * c / (4 * area) > alpha:
            continue
        polys.append(Polygon(p))
    if not polys:
        return 0.0, 0.0
    u = unary_union(polys)
    # perimeter of the union counts boundary edges of the triangle set
    return u.area, u.length


def measures(points):
    xy = normalize(np.array([[p["x"], p["y"]] for p in points], dtype=float))
    g = tree(xy)
    total = lengths(g).sum()
    out, removed = peel(g)
    keep = np.array([i for i in range(len(xy)) if i not in set(out)])
    xy = xy[keep]
    g = tree(xy)
    l = lengths(g)
    q10, q50, q90 = np.quantile(l, [0.1, 0.5, 0.9])
    deg = dict(g.degree())
    v1 = sum(1 for d in deg.values() if d == 1)
    v2 = sum(1 for d in deg.values() if d == 2)
    n = len(xy)
    try:
        hull_area = ConvexHull(xy).volume
    except Exception:
        hull_area = 0.0
    a_area, a_per = alpha_shape(xy, q90)
    rho = spearmanr(xy[:, 0], xy[:, 1]).correlation
    return {
        "outlying": min(removed / total, 1.0) if total > 0 else 0.0,
        "skewed": (q90 - q50) / (q90 - q10) if q90 > q10 else 0.0,
        "clumpy": clumpy(g),
        "sparse": min(q90, 1.0),
        "striated": striated(g, xy),
        "convex": min(a_area / hull_area, 1.0) if hull_area > 0 else 0.0,
        "skinny": min(max(1 - math.sqrt(4 * math.pi * a_area) / a_per, 0.0), 1.0) if a_area > 0 else 1.0,
        "stringy": v2 / (n - v1) if n > v1 else 0.0,
        "monotonic": 0.0 if math.isnan(rho) else float(rho) ** 2,
    }


def main():
    data = json.load(open(sys.argv[1]))
    res = {d["name"]: {k: round(v, 6) for k, v in measures(d["points"]).items()} for d in data}
    json.dump(res, sys.stdout, indent=1, sort_keys=True)
    print()


if __name__ == "__main__":
    main()
