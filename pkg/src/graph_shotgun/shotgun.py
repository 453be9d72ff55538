"""Shredding a graph into anonymized r-neighborhoods, the collection file
format, and recovery of unlabeled centers."""

from __future__ import annotations

from dataclasses import dataclass, replace
from pathlib import Path

import numpy as np

from .errors import AmbiguousCenter, NoCenter, ParameterError, ParseError
from .graph import INF, Graph, ball, distances_from

RADII = (1, 2)


@dataclass(frozen=True)
class NeighborhoodView:
    radius: int
    center: int | None
    local: Graph
    center_pos: int | None

    @property
    def center_known(self) -> bool:
        return self.center is not None and self.center_pos is not None


@dataclass(frozen=True)
class NeighborhoodCollection:
    n: int
    radius: int
    labeled: bool
    views: tuple[NeighborhoodView, ...]

    def __post_init__(self):
        if len(self.views) != self.n:
            raise ParameterError(f"{len(self.views)} views for n={self.n}")
        if any(v.radius != self.radius for v in self.views):
            raise ParameterError("views disagree on radius")

    def view_of(self, center: int) -> NeighborhoodView:
        view = self.views[center]
        if view.center != center:
            view = next(v for v in self.views if v.center == center)
        return view


@dataclass(frozen=True)
class ShredTruth:
    """Ground truth kept by the harness: ``origin[i][a]`` is the source vertex
    behind anonymous id ``a`` of view ``i``."""

    origin: tuple[tuple[int, ...], ...]
    centers: tuple[int, ...]


def _view_rng(seed: int, index: int) -> np.random.Generator:
    return np.random.default_rng(np.random.SeedSequence([seed, 0, index]))


def shred_with_truth(g: Graph, radius: int, anonymize_seed: int,
                     labeled_centers: bool = True) -> tuple[NeighborhoodCollection, ShredTruth]:
    if radius not in RADII:
        raise ParameterError(f"radius must be 1 or 2, got {radius}")
    views = []
    origins = []
    adj = g.adj
    for v in range(g.n):
        members = ball(g, v, radius)
        k = len(members)
        perm = _view_rng(anonymize_seed, v).permutation(k).tolist()
        anon = {w: perm[i] for i, w in enumerate(members)}
        rows: list[list[int]] = [None] * k  # type: ignore[list-item]
        origin = [0] * k
        for w in members:
            a = anon[w]
            origin[a] = w
            rows[a] = sorted([anon[x] for x in adj[w] if x in anon])
        local = Graph(k, rows, check=False)
        pos = anon[v]
        views.append(NeighborhoodView(radius, v if labeled_centers else None, local,
                                      pos if labeled_centers else None))
        origins.append(tuple(origin))
    order = list(range(g.n))
    if not labeled_centers:
        order = np.random.default_rng(np.random.SeedSequence([anonymize_seed, 1])).permutation(g.n).tolist()
    coll = NeighborhoodCollection(g.n, radius, labeled_centers, tuple(views[i] for i in order))
    truth = ShredTruth(tuple(origins[i] for i in order), tuple(order))
    return coll, truth


def shred(g: Graph, radius: int, anonymize_seed: int,
          labeled_centers: bool = True) -> NeighborhoodCollection:
    """One view per vertex; each view's ids come from an independent permutation.

    Without labeled centers the view order is shuffled too, so position does not
    reveal the center.
    """
    return shred_with_truth(g, radius, anonymize_seed, labeled_centers)[0]


def find_center_r1(view: NeighborhoodView) -> int:
    """The vertex adjacent to every other vertex of a 1-neighborhood."""
    local = view.local
    if local.n == 0:
        raise NoCenter("view has no vertices")
    if local.n == 1:
        return 0
    full = local.n - 1
    candidates = [a for a in range(local.n) if len(local.adj[a]) == full]
    if not candidates:
        raise NoCenter("no vertex is adjacent to all others")
    if len(candidates) > 1:
        raise AmbiguousCenter(candidates)
    return candidates[0]


def prune_threshold(n: int, alpha: float) -> float:
    return n ** (1.0 - alpha) / 2.0


def find_center_r2(view: NeighborhoodView, n: int, alpha: float) -> int:
    """Center of a 2-neighborhood: drop vertices of local degree below
    n^(1-alpha)/2, then take the highest-degree survivor in the pruned graph."""
    local = view.local
    if local.n == 0:
        raise NoCenter("view has no vertices")
    if local.n == 1:
        return 0
    threshold = prune_threshold(n, alpha)
    keep = {a for a in range(local.n) if len(local.adj[a]) >= threshold}
    if not keep:
        raise NoCenter(f"pruning at degree {threshold:.3g} removed every vertex")
    pruned_deg = {a: sum(1 for b in local.adj[a] if b in keep) for a in keep}
    top = max(pruned_deg.values())
    candidates = sorted(a for a, d in pruned_deg.items() if d == top)
    if len(candidates) > 1:
        raise AmbiguousCenter(candidates)
    return candidates[0]


def recover_centers(c: NeighborhoodCollection, n: int | None = None,
                    alpha: float | None = None) -> NeighborhoodCollection:
    """Locate every center; views get surrogate labels equal to their position.

    Raises AmbiguousCenter / NoCenter from the first view that fails.
    """
    views = []
    for i, view in enumerate(c.views):
        if c.radius == 1:
            pos = find_center_r1(view)
        else:
            if alpha is None:
                raise ParameterError("alpha is required to find 2-neighborhood centers")
            pos = find_center_r2(view, c.n if n is None else n, alpha)
        views.append(replace(view, center=i, center_pos=pos))
    return replace(c, views=tuple(views))


# -- collection files -------------------------------------------------------

def dumps_collection(c: NeighborhoodCollection) -> str:
    out = [f"SHOTGUN v1 n={c.n} r={c.radius} labeled={int(c.labeled)}"]
    for view in c.views:
        center = "?" if view.center is None else str(view.center)
        pos = "?" if view.center_pos is None else str(view.center_pos)
        out.append(f"VIEW {center} k={view.local.n} m={view.local.num_edges} c={pos}")
        out.extend(f"{i} {j}" for i, j in view.local.edges())
    return "\n".join(out) + "\n"


def _field(token: str, key: str, lineno: int, optional: bool = False) -> int | None:
    prefix = key + "="
    if not token.startswith(prefix):
        raise ParseError(f"expected {prefix}...", lineno)
    value = token[len(prefix):]
    if optional and value == "?":
        return None
    if not value.isdigit():
        raise ParseError(f"bad value for {key}: {value!r}", lineno)
    return int(value)


def _check_view(view: NeighborhoodView, lineno: int) -> None:
    pos = view.center_pos
    if pos is None or not 0 <= pos < view.local.n:
        raise ParseError("labeled view needs a center position inside the view", lineno)
    dist = distances_from(view.local, pos)
    far = [a for a, d in enumerate(dist) if d is INF or d > view.radius]
    if far:
        raise ParseError(f"vertex {far[0]} is not within distance {view.radius} of the center", lineno)


def loads_collection(text: str) -> NeighborhoodCollection:
    lines = text.split("\n")
    if lines and lines[-1] == "":
        lines.pop()
    if not lines:
        raise ParseError("empty collection file", 1)
    head = lines[0].split(" ")
    if len(head) != 5 or head[:2] != ["SHOTGUN", "v1"]:
        raise ParseError("header must be 'SHOTGUN v1 n=<n> r=<r> labeled=<0|1>'", 1)
    n = _field(head[2], "n", 1)
    radius = _field(head[3], "r", 1)
    labeled = _field(head[4], "labeled", 1)
    if radius not in RADII or labeled not in (0, 1):
        raise ParseError("radius must be 1|2 and labeled 0|1", 1)
    views = []
    i = 1
    while i < len(lines):
        lineno = i + 1
        parts = lines[i].split(" ")
        if len(parts) != 5 or parts[0] != "VIEW":
            raise ParseError("expected 'VIEW <center> k=<k> m=<m> c=<pos>'", lineno)
        center = None if parts[1] == "?" else (int(parts[1]) if parts[1].isdigit() else -1)
        if center == -1:
            raise ParseError(f"bad center {parts[1]!r}", lineno)
        k = _field(parts[2], "k", lineno)
        m = _field(parts[3], "m", lineno)
        pos = _field(parts[4], "c", lineno, optional=True)
        if i + m > len(lines) - 1:
            raise ParseError(f"view declares {m} edges but the file ends early", len(lines))
        edges = []
        prev = (-1, -1)
        for j in range(i + 1, i + 1 + m):
            pair = lines[j].split(" ")
            if len(pair) != 2 or not all(p.isdigit() for p in pair):
                raise ParseError(f"bad edge line {lines[j]!r}", j + 1)
            a, b = int(pair[0]), int(pair[1])
            if not a < b < k or (a, b) <= prev:
                raise ParseError(f"edge {a} {b} out of range or order", j + 1)
            prev = (a, b)
            edges.append((a, b))
        local = Graph.from_edges(k, edges)
        view = NeighborhoodView(radius, center, local, pos)
        if labeled:
            if center != len(views):
                raise ParseError(f"labeled view for center {center} out of order", lineno)
            _check_view(view, lineno)
        elif center is not None:
            raise ParseError("unlabeled collection cannot name centers", lineno)
        views.append(view)
        i += 1 + m
    if len(views) != n:
        raise ParseError(f"header promises {n} views, found {len(views)}", len(lines))
    return NeighborhoodCollection(n, radius, bool(labeled), tuple(views))


def save_collection(c: NeighborhoodCollection, path) -> None:
    Path(path).write_text(dumps_collection(c), encoding="ascii")


def load_collection(path) -> NeighborhoodCollection:
    return loads_collection(Path(path).read_text(encoding="ascii"))
