"""Evidence of non-reconstructability.

``same_r_neighborhoods`` decides the ~_r relation, ``star_witness`` counts
equal-degree star neighborhoods (which defeat the overlap method), and
``search_nonrecon_pair`` looks for a concrete second graph with the same
r-neighborhoods.
"""

from __future__ import annotations

from collections import Counter
from dataclasses import asdict, dataclass, field

import numpy as np

from .errors import ParameterError
from .graph import Graph, ball, induced_subgraph
from .iso import Certificate, certificate

EXHAUSTIVE_MAX_N = 12


def rooted_certificate(g: Graph, v: int, radius: int) -> Certificate:
    """Certificate of N_r(v) with the center marked, so isomorphisms must fix it."""
    local, mapping = induced_subgraph(g, ball(g, v, radius))
    colors = [0] * local.n
    colors[mapping[v]] = 1
    return certificate(local, colors)


def same_r_neighborhoods(g: Graph, h: Graph, r: int) -> bool:
    """True iff N_r(v) in g and in h are isomorphic (center to center) for every v."""
    if g.n != h.n:
        raise ParameterError(f"graphs have {g.n} and {h.n} vertices")
    if r not in (1, 2):
        raise ParameterError(f"radius must be 1 or 2, got {r}")
    if g.degrees() != h.degrees():
        return False
    return all(rooted_certificate(g, v, r) == rooted_certificate(h, v, r) for v in range(g.n))


@dataclass
class StarWitnessReport:
    n: int
    alpha: float
    beta: float
    max_star_degree: float
    star_count: int
    best_degree: int | None
    multiplicity: int
    threshold: float
    passed: bool
    buckets: dict[int, int] = field(default_factory=dict)

    @property
    def pigeonhole_holds(self) -> bool:
        """If at least 3n/4 vertices are stars, some degree bucket holds at
        least star_count / (n^(1-beta) + 1) of them."""
        if self.star_count < 0.75 * self.n:
            return True
        largest = max(self.buckets.values(), default=0)
        return largest >= self.star_count / (self.max_star_degree + 1)

    def to_dict(self) -> dict:
        out = asdict(self)
        out["buckets"] = {str(k): v for k, v in sorted(self.buckets.items())}
        return out


def is_star_neighborhood(g: Graph, v: int) -> bool:
    sets = g.neighbor_sets
    nbrs = g.adj[v]
    return all(not (sets[w] & sets[v]) for w in nbrs)


def star_witness(g: Graph, alpha: float) -> StarWitnessReport:
    """Count vertices whose 1-neighborhood is a star of degree <= n^(1-beta),
    beta = (alpha + 2/3) / 2, and report the most populated degree >= 1.

    Isolated vertices count as degree-0 stars in ``star_count`` and ``buckets``
    but are never chosen as ``best_degree``.
    """
    n = g.n
    beta = (alpha + 2.0 / 3.0) / 2.0
    cap = n ** (1.0 - beta)
    buckets: Counter[int] = Counter()
    for v in range(n):
        d = g.degree(v)
        if d <= cap and is_star_neighborhood(g, v):
            buckets[d] += 1
    positive = {k: c for k, c in buckets.items() if k >= 1}
    if positive:
        best = min(positive, key=lambda k: (-positive[k], k))
        mult = positive[best]
    else:
        best, mult = None, 0
    threshold = n ** beta / 2.0
    return StarWitnessReport(n, alpha, beta, cap, sum(buckets.values()), best, mult,
                             threshold, mult >= threshold, dict(sorted(buckets.items())))


# -- counterexample search --------------------------------------------------

def _same_degree_graphs(g: Graph, budget: list[int]):
    """Labeled graphs with g's degree sequence, include-first lexicographic order."""
    n = g.n
    need = g.degrees()
    pairs = [(i, j) for i in range(n) for j in range(i + 1, n)]
    # open_after[t][v]: pairs at index >= t that touch v
    open_after = [[0] * n for _ in range(len(pairs) + 1)]
    for t in range(len(pairs) - 1, -1, -1):
        row = open_after[t + 1][:]
        i, j = pairs[t]
        row[i] += 1
        row[j] += 1
        open_after[t] = row
    chosen: list[tuple[int, int]] = []

    def rec(t: int):
        if budget[0] <= 0:
            return
        budget[0] -= 1
        if t == len(pairs):
            if not any(need):
                yield list(chosen)
            return
        i, j = pairs[t]
        if need[i] and need[j]:
            need[i] -= 1
            need[j] -= 1
            chosen.append((i, j))
            yield from rec(t + 1)
            chosen.pop()
            need[i] += 1
            need[j] += 1
        rest = open_after[t + 1]
        if need[i] <= rest[i] and need[j] <= rest[j]:
            yield from rec(t + 1)

    yield from rec(0)


def _affected(g: Graph, h: Graph, touched, radius: int) -> set[int]:
    out = set()
    for v in touched:
        out.update(ball(g, v, radius))
        out.update(ball(h, v, radius))
    return out


def search_nonrecon_pair(g: Graph, r: int, budget: int = 200_000,
                         seed: int = 0) -> Graph | None:
    """Find h != g (as labeled graphs) with the same r-neighborhoods as g.

    Small graphs are searched exhaustively over graphs with g's degree
    sequence; larger ones by random degree-preserving edge swaps, favoring
    swaps between equal-degree star centers. Returns None when the budget runs
    out, which proves nothing.
    """
    if r not in (1, 2):
        raise ParameterError(f"radius must be 1 or 2, got {r}")
    if g.n <= EXHAUSTIVE_MAX_N:
        return _exhaustive(g, r, budget)
    return _random_swaps(g, r, budget, seed)


def _exhaustive(g: Graph, r: int, budget: int) -> Graph | None:
    target = [rooted_certificate(g, v, r) for v in range(g.n)]
    own = sorted(g.edges())
    steps = [budget]
    for edges in _same_degree_graphs(g, steps):
        if edges == own:
            continue
        h = Graph.from_edges(g.n, edges)
        if all(rooted_certificate(h, v, r) == target[v] for v in range(g.n)):
            return h
    return None


def _random_swaps(g: Graph, r: int, budget: int, seed: int) -> Graph | None:
    rng = np.random.default_rng(seed)
    edges = list(g.edges())
    if len(edges) < 2:
        return None
    target: dict[int, Certificate] = {}
    by_degree: dict[int, list[int]] = {}
    for v in range(g.n):
        if g.degree(v) and is_star_neighborhood(g, v):
            by_degree.setdefault(g.degree(v), []).append(v)
    star_groups = [vs for vs in by_degree.values() if len(vs) >= 2]
    sets = g.neighbor_sets
    for _ in range(budget):
        if star_groups and rng.random() < 0.5:
            group = star_groups[rng.integers(len(star_groups))]
            x, y = rng.choice(group, size=2, replace=False).tolist()
            a = g.adj[x][rng.integers(g.degree(x))]
            b = g.adj[y][rng.integers(g.degree(y))]
        else:
            i, j = rng.choice(len(edges), size=2, replace=False).tolist()
            (x, a), (y, b) = edges[i], edges[j]
            if rng.random() < 0.5:
                y, b = b, y
        if len({x, a, y, b}) < 4 or b in sets[x] or a in sets[y]:
            continue
        changed = [e for e in edges if e not in ((min(x, a), max(x, a)), (min(y, b), max(y, b)))]
        changed += [(min(x, b), max(x, b)), (min(y, a), max(y, a))]
        h = Graph.from_edges(g.n, changed)
        ok = True
        for v in sorted(_affected(g, h, (x, a, y, b), r)):
            if v not in target:
                target[v] = rooted_certificate(g, v, r)
            if rooted_certificate(h, v, r) != target[v]:
                ok = False
                break
        if ok:
            return h
    return None
