"""Exact reconstruction from 1-neighborhoods via common-neighbor fingerprints.

For an edge (u, v) the fingerprint is the graph induced on the common
neighbors of u and v. Both endpoints see it inside their own 1-neighborhood,
so when no two edges share a fingerprint up to isomorphism, joining all
fingerprints by certificate recovers every edge with its labels.
"""

from __future__ import annotations

import enum
import time
from collections import defaultdict
from dataclasses import dataclass, field

from .errors import ParameterError, ResourceError
from .graph import Graph, induced_subgraph
from .iso import DEFAULT_MAX_VERTICES, Certificate, certificate
from .shotgun import NeighborhoodCollection, NeighborhoodView


class Status(str, enum.Enum):
    EXACT_SUCCESS = "ExactSuccess"
    AMBIGUOUS = "Ambiguous"
    FAILED = "Failed"

    def __str__(self) -> str:
        return self.value


_RANK = {Status.EXACT_SUCCESS: 2, Status.AMBIGUOUS: 1, Status.FAILED: 0}


def better(a: "AssemblyOutcome", b: "AssemblyOutcome") -> "AssemblyOutcome":
    return b if _RANK[b.status] > _RANK[a.status] else a


@dataclass
class AssemblyOutcome:
    graph: Graph | None
    status: Status
    diagnostics: dict = field(default_factory=dict)
    method: str = ""
    elapsed_ms: float = 0.0


@dataclass(frozen=True)
class EdgeFingerprint:
    center: int
    neighbor_pos: int
    cert: Certificate
    size: int = 0


def _require_centers(c: NeighborhoodCollection, radius: int) -> None:
    if c.radius != radius:
        raise ParameterError(f"expected a radius-{radius} collection, got radius {c.radius}")
    for view in c.views:
        if not view.center_known:
            raise ParameterError("every view needs a known center (label and position)")
        if not 0 <= view.center < c.n:
            raise ParameterError(f"center label {view.center} out of range")


def edge_fingerprints(view: NeighborhoodView,
                      max_vertices: int = DEFAULT_MAX_VERTICES) -> list[EdgeFingerprint]:
    """One fingerprint per neighbor of the center: the certificate of the
    subgraph induced on their common neighbors inside the view."""
    if not view.center_known:
        raise ParameterError("view center is unknown")
    local = view.local
    sets = local.neighbor_sets
    c = view.center_pos
    out = []
    for u0 in local.adj[c]:
        common = sets[c] & sets[u0]
        sub, _ = induced_subgraph(local, common)
        out.append(EdgeFingerprint(view.center, u0, certificate(sub, max_vertices=max_vertices), sub.n))
    return out


def join_fingerprints(c: NeighborhoodCollection, fingerprints: list,
                      method: str) -> AssemblyOutcome:
    """Declare (u, v) an edge for every certificate seen exactly twice, at two
    different centers; flag everything else.

    ExactSuccess needs every certificate to pair up that way and every
    reconstructed degree to match the degree of the center in its own view.
    """
    groups: dict[bytes, list[tuple[int, int]]] = defaultdict(list)
    for fp in fingerprints:
        groups[fp.cert].append((fp.center, fp.neighbor_pos))
    edges: dict[tuple[int, int], bytes] = {}
    colliding = colliding_entries = unmatched = same_center = 0
    for cert, entries in groups.items():
        if len(entries) == 2:
            (u, _), (v, _) = entries
            if u != v:
                edges[(min(u, v), max(u, v))] = cert
            else:
                same_center += 1
        elif len(entries) == 1:
            unmatched += 1
        else:
            colliding += 1
            colliding_entries += len(entries)
    graph = Graph.from_edges(c.n, edges)

    seen_at = {(fp.center, fp.cert) for fp in fingerprints}
    for (u, v), cert in edges.items():
        assert (u, cert) in seen_at and (v, cert) in seen_at, "edge without fingerprints"

    mismatched = sum(1 for view in c.views
                     if graph.degree(view.center) != view.local.degree(view.center_pos))
    diagnostics = {
        "fingerprints": len(fingerprints),
        "distinct_certs": len(groups),
        "matched_edges": len(edges),
        "colliding_certs": colliding,
        "colliding_entries": colliding_entries,
        "unmatched_certs": unmatched,
        "same_center_pairs": same_center,
        "degree_mismatches": mismatched,
        "largest_fingerprint": max((fp.size for fp in fingerprints), default=0),
    }
    clean = colliding == unmatched == same_center == mismatched == 0
    status = Status.EXACT_SUCCESS if clean else Status.AMBIGUOUS
    return AssemblyOutcome(graph, status, diagnostics, method)


def assemble_from_1nbhd(c: NeighborhoodCollection,
                        max_vertices: int = DEFAULT_MAX_VERTICES) -> AssemblyOutcome:
    _require_centers(c, 1)
    start = time.perf_counter()
    try:
        fps = [fp for view in c.views for fp in edge_fingerprints(view, max_vertices)]
    except ResourceError as exc:
        out = AssemblyOutcome(None, Status.FAILED, {"error": f"resource: {exc}"}, "fingerprint1")
    else:
        out = join_fingerprints(c, fps, "fingerprint1")
    out.elapsed_ms = (time.perf_counter() - start) * 1e3
    return out
