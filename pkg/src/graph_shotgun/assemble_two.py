"""Exact reconstruction from 2-neighborhoods.

Path A (alpha < 1/2): the graph has diameter 2, so every view is the whole
graph; label it by degree neighborhoods and place each center by matching the
degree neighborhood it has in its own view.

Path B (1/2 < alpha < 3/5): the same certificate join as for 1-neighborhoods,
with the fingerprint of edge (u, v) being the graph induced on vertices at
distance exactly 2 from both u and v.
"""

from __future__ import annotations

import time
from dataclasses import dataclass

from .assemble_one import (AssemblyOutcome, EdgeFingerprint, Status, _require_centers,
                           better, join_fingerprints)
from .errors import AmbiguityError, ParameterError, ResourceError
from .graph import Graph, distances_from, induced_subgraph
from .iso import DEFAULT_MAX_VERTICES, canonical_labeling, degree_neighborhood, degree_neighborhoods, certificate
from .shotgun import NeighborhoodCollection, NeighborhoodView


@dataclass(frozen=True)
class DistanceTwoFingerprint(EdgeFingerprint):
    pass


def l_fingerprint_sets(view: NeighborhoodView) -> dict[int, set[int]]:
    """For each neighbor u0 of the center, the local ids at distance exactly 2
    from both the center and u0."""
    if not view.center_known:
        raise ParameterError("view center is unknown")
    local = view.local
    c = view.center_pos
    dist = distances_from(local, c)
    ring = {w for w, d in enumerate(dist) if d == 2}
    adj, sets = local.adj, local.neighbor_sets
    out = {}
    for u0 in adj[c]:
        near = set()
        for x in adj[u0]:
            near.update(adj[x])
        near &= ring
        near -= sets[u0]
        out[u0] = near
    return out


def l_fingerprints(view: NeighborhoodView,
                   max_vertices: int = DEFAULT_MAX_VERTICES) -> list[DistanceTwoFingerprint]:
    out = []
    for u0, members in l_fingerprint_sets(view).items():
        sub, _ = induced_subgraph(view.local, members)
        out.append(DistanceTwoFingerprint(view.center, u0, certificate(sub, max_vertices=max_vertices), sub.n))
    return out


def assemble_from_2nbhd_fingerprint(c: NeighborhoodCollection,
                                    max_vertices: int = DEFAULT_MAX_VERTICES) -> AssemblyOutcome:
    _require_centers(c, 2)
    start = time.perf_counter()
    try:
        fps = [fp for view in c.views for fp in l_fingerprints(view, max_vertices)]
    except ResourceError as exc:
        out = AssemblyOutcome(None, Status.FAILED, {"error": f"resource: {exc}"}, "fingerprint2")
    else:
        out = join_fingerprints(c, fps, "fingerprint2")
    out.elapsed_ms = (time.perf_counter() - start) * 1e3
    return out


def assemble_diameter2(c: NeighborhoodCollection) -> AssemblyOutcome:
    _require_centers(c, 2)
    start = time.perf_counter()
    out = _diameter2(c)
    out.elapsed_ms = (time.perf_counter() - start) * 1e3
    return out


def _diameter2(c: NeighborhoodCollection) -> AssemblyOutcome:
    n = c.n
    if n == 0:
        return AssemblyOutcome(Graph.empty(0), Status.EXACT_SUCCESS, {}, "diameter2")
    short = sum(1 for view in c.views if view.local.n != n)
    if short:
        return AssemblyOutcome(None, Status.FAILED,
                               {"error": "diameter exceeds 2", "short_views": short}, "diameter2")
    reference = c.view_of(0).local
    try:
        order = canonical_labeling(reference)
    except AmbiguityError as exc:
        return AssemblyOutcome(None, Status.AMBIGUOUS,
                               {"error": "degree neighborhoods collide",
                                "colliding_pair": list(exc.pair)}, "diameter2")
    dns = degree_neighborhoods(reference)
    slot = {dns[a]: a for a in order}

    placed: dict[int, int] = {}
    unmatched = duplicates = 0
    for view in c.views:
        a = slot.get(degree_neighborhood(view.local, view.center_pos))
        if a is None:
            unmatched += 1
        elif a in placed:
            duplicates += 1
        else:
            placed[a] = view.center
    diagnostics = {"unmatched_centers": unmatched, "duplicate_centers": duplicates}
    if unmatched or duplicates or len(placed) != n:
        return AssemblyOutcome(None, Status.AMBIGUOUS, diagnostics, "diameter2")
    graph = reference.relabel([placed[a] for a in range(n)])
    return AssemblyOutcome(graph, Status.EXACT_SUCCESS, diagnostics, "diameter2")


def assemble_auto(c: NeighborhoodCollection, n: int, alpha: float,
                  max_vertices: int = DEFAULT_MAX_VERTICES) -> AssemblyOutcome:
    """Path A below alpha = 1/2, else path B; when path A does not succeed,
    path B is tried as well and the better status is reported.

    alpha = 1/2 is covered by neither regime; it is sent to path B.
    """
    if c.radius != 2:
        raise ParameterError("assemble_auto needs a radius-2 collection")
    if n != c.n:
        raise ParameterError(f"n={n} does not match the collection size {c.n}")
    if alpha < 0.5:
        first = assemble_diameter2(c)
        if first.status == Status.EXACT_SUCCESS:
            return first
        return better(first, assemble_from_2nbhd_fingerprint(c, max_vertices))
    return assemble_from_2nbhd_fingerprint(c, max_vertices)
