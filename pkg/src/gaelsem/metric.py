"""Distances between concepts: per-property Hausdorff plus a tree-set metric.

The ground metric inside every property is taxicab (L1).  The Hausdorff
distance between two convex sets is the larger of the two directed
sup-inf distances; because distance-to-a-convex-set is convex, each directed
supremum is attained at a generator point, so only point-to-hull distances
are ever needed.  Those are solved exactly as tiny linear programs.  The
total distance between concepts is the sum over properties plus
max(|A \\ B|, |B \\ A|) on the hypernym node sets.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

import numpy as np
from scipy.optimize import linprog

from .concepts import Concept, ConvexSet, Property, DEFAULT_SCHEMA, schema_property


class MetricError(Exception):
    pass


def point_to_hull_l1(point, generators) -> float:
    """Exact L1 distance from a point to the convex hull of the generators.

    Solved as min sum_d t_d subject to |p_d - sum_j lam_j g_jd| <= t_d,
    sum lam = 1, lam >= 0 (the standard absolute-value linearisation).
    One-dimensional hulls and single generators short-circuit the solver.
    """
    pt = np.asarray(point, dtype=float)
    gens = np.asarray(generators, dtype=float)
    if gens.ndim == 1:
        gens = gens.reshape(len(gens), -1)
    n_gen, dim = gens.shape
    if n_gen == 1:
        return float(np.abs(pt - gens[0]).sum())
    if dim == 1:
        lo, hi = gens.min(), gens.max()
        return float(max(0.0, lo - pt[0], pt[0] - hi))
    if _is_box(gens):
        lo, hi = gens.min(axis=0), gens.max(axis=0)
        return float(np.maximum(0.0, np.maximum(lo - pt, pt - hi)).sum())
    # variables: lam (n_gen) then t (dim)
    c = np.concatenate([np.zeros(n_gen), np.ones(dim)])
    eye = np.eye(dim)
    a_ub = np.vstack([
        np.hstack([gens.T, -eye]),    # G lam - t <= p
        np.hstack([-gens.T, -eye]),   # -G lam - t <= -p
    ])
    b_ub = np.concatenate([pt, -pt])
    a_eq = np.concatenate([np.ones(n_gen), np.zeros(dim)]).reshape(1, -1)
    res = linprog(c, A_ub=a_ub, b_ub=b_ub, A_eq=a_eq, b_eq=[1.0],
                  bounds=[(0, None)] * (n_gen + dim), method="highs")
    if not res.success:
        raise MetricError("point-to-hull LP failed: %s" % res.message)
    return float(res.fun)


def _is_box(gens) -> bool:
    """True when the generators are exactly the corners of an aligned box."""
    n_gen, dim = gens.shape
    if n_gen != 2 ** dim:
        return False
    lo, hi = gens.min(axis=0), gens.max(axis=0)
    corners = {tuple(lo[d] if bit else hi[d] for d, bit in enumerate(bits))
               for bits in np.ndindex(*([2] * dim))}
    return {tuple(g) for g in gens} == corners


def directed_hausdorff(source: Sequence, target: Sequence) -> float:
    """sup over source generators of the L1 distance to the target hull."""
    return max(point_to_hull_l1(p, target) for p in source)


def hausdorff(x: ConvexSet, y: ConvexSet, prop: Property) -> float:
    """Hausdorff distance within one property; FULL expands to the domain."""
    gx = x.resolved(prop)
    gy = y.resolved(prop)
    if not gx or not gy:
        raise MetricError("empty convex set in property %s" % prop.name)
    return max(directed_hausdorff(gx, gy), directed_hausdorff(gy, gx))


def tree_set_distance(a: frozenset, b: frozenset, universe=None) -> int:
    """max(|A - B|, |B - A|) over node-id sets of one (aligned) tree."""
    if universe is not None:
        stray = (set(a) | set(b)) - set(universe)
        if stray:
            raise MetricError("node ids outside the shared tree: %s" % sorted(stray))
    return max(len(set(a) - set(b)), len(set(b) - set(a)))


@dataclass
class DistanceReport:
    per_property: dict[str, float]
    tree_distance: int
    total: float

    def as_dict(self):
        return {
            "per_property": {k: round(v, 12) for k, v in self.per_property.items()},
            "tree_distance": self.tree_distance,
            "total": round(self.total, 12),
        }


def concept_distance(c1: Concept, c2: Concept, schema=DEFAULT_SCHEMA) -> DistanceReport:
    """Sum of per-property Hausdorff distances plus the tree-set metric."""
    if set(c1.properties) != set(c2.properties):
        raise MetricError("concepts use different property schemas")
    per = {}
    for name in c1.properties:
        prop = schema_property(name, schema)
        per[name] = hausdorff(c1.properties[name], c2.properties[name], prop)
    tree = tree_set_distance(c1.tree_nodes, c2.tree_nodes)
    total = sum(per.values()) + tree
    return DistanceReport(per_property=per, tree_distance=tree, total=total)


def translate_noun(query: Concept, candidates: dict[str, Concept],
                   schema=DEFAULT_SCHEMA):
    """Candidates ranked by ascending total distance to the query.

    Returns a list of (name, DistanceReport); ties on the total are broken
    lexicographically by name and flagged via the third element of the first
    tuple position being shared (callers can compare totals themselves).
    """
    if not candidates:
        raise MetricError("no candidate concepts to rank")
    ranked = sorted(
        ((name, concept_distance(query, concept, schema))
         for name, concept in candidates.items()),
        key=lambda item: (item[1].total, item[0]),
    )
    return ranked


def ranking_has_tie(ranked, places: int = 9) -> bool:
    if len(ranked) < 2:
        return False
    return round(ranked[0][1].total, places) == round(ranked[1][1].total, places)
