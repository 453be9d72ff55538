"""Certificates, isomorphism tests and degree-neighborhood labeling.

A certificate is the lexicographically smallest edge encoding over the leaves
of an individualization-refinement search tree, so equal certificates mean
isomorphic graphs (not a hash). Components are canonized separately and the
sorted component forms are serialized.
"""

from __future__ import annotations

import itertools
import sys
from typing import NamedTuple, Sequence

import numpy as np

from .errors import AmbiguityError, ParameterError, ResourceError
from .graph import Graph

# Certificates are opaque: compare them for equality, nothing else.
Certificate = bytes

DEFAULT_MAX_VERTICES = 5000
_MAX_STORED_LEAVES = 512


def _rank(values: Sequence) -> list[int]:
    table = {x: i for i, x in enumerate(sorted(set(values)))}
    return [table[x] for x in values]


def _color_weights(count: int) -> list[int]:
    rng = np.random.Generator(np.random.PCG64(0x5EED))
    return [int(x) for x in rng.integers(1, 2**62, size=count, dtype=np.int64)]


_WEIGHTS = _color_weights(DEFAULT_MAX_VERTICES + 1)


def _refine(adj: Sequence[Sequence[int]], colors: list[int]) -> list[int]:
    """Color refinement towards the coarsest equitable partition.

    A vertex's new color is the rank of (old color, sum of fixed weights of its
    neighbors' colors). The old color stays the primary sort key, so cells only
    split in place; a weight-sum collision can only leave a cell coarser, which
    keeps the procedure relabeling-invariant.
    """
    k = max(colors) + 1 if colors else 0
    n = len(adj)
    weights = _WEIGHTS if n < len(_WEIGHTS) else _color_weights(n + 1)
    while k < n:
        wc = [weights[c] for c in colors]
        sigs = [(colors[v], sum([wc[w] for w in adj[v]])) for v in range(n)]
        uniq = sorted(set(sigs))
        if len(uniq) == k:
            break
        table = {s: i for i, s in enumerate(uniq)}
        colors = [table[s] for s in sigs]
        k = len(uniq)
    return colors


def _individualize(colors: list[int], v: int) -> list[int]:
    out = [2 * c + 1 for c in colors]
    out[v] -= 1
    return _rank(out)


class _Canonizer:
    """Individualization-refinement search with automorphism pruning for one
    connected, vertex-colored graph."""

    def __init__(self, adj: Sequence[Sequence[int]], labels: Sequence[int]):
        self.adj = adj
        self.labels = labels
        self.n = len(adj)
        self.edges = [(u, w) for u in range(self.n) for w in adj[u] if w > u]
        self.best: tuple | None = None
        self.first_path: list[int] | None = None
        self.first_leaf: tuple | None = None
        self.leaves: dict[tuple, list[int]] = {}
        self.generators: list[list[int]] = []
        self._twins: list[tuple[int, int]] | None = None

    @property
    def twin_pairs(self) -> list[tuple[int, int]]:
        if self._twins is None:
            self._twins = _twin_pairs(self.adj, self.labels)
        return self._twins

    def run(self) -> tuple:
        start = _rank([(self.labels[v], len(self.adj[v])) for v in range(self.n)])
        colors = _refine(self.adj, start)
        self._search(colors, [])
        sorted_labels = tuple(sorted(self.labels))
        return (self.n, sorted_labels, self.best)

    def _leaf(self, colors: list[int], path: list[int]) -> int | None:
        n = self.n
        enc = tuple(sorted([a * n + b if a < b else b * n + a
                            for a, b in [(colors[u], colors[w]) for u, w in self.edges]]))
        if self.first_leaf is None:
            self.first_leaf = enc
            self.first_path = list(path)
            self.best = enc
            self.leaves[enc] = colors
            return None
        other = self.leaves.get(enc)
        if other is not None:
            inv = [0] * self.n
            for v, c in enumerate(other):
                inv[c] = v
            gen = [inv[colors[v]] for v in range(self.n)]
            if any(gen[v] != v for v in range(self.n)):
                self.generators.append(gen)
            if enc == self.first_leaf:
                # This subtree is an automorphic image of the first path's
                # subtree: resume at the deepest shared first-path node.
                return _common_prefix(path, self.first_path)
            return None
        if len(self.leaves) < _MAX_STORED_LEAVES:
            self.leaves[enc] = colors
        if enc < self.best:
            self.best = enc
        return None

    def _orbit_roots(self, path: list[int]) -> list[int]:
        parent = list(range(self.n))

        def find(x):
            while parent[x] != x:
                parent[x] = parent[parent[x]]
                x = parent[x]
            return x

        fixed = set(path)
        for a, b in self.twin_pairs:
            if a not in fixed and b not in fixed:
                ra, rb = find(a), find(b)
                if ra != rb:
                    parent[max(ra, rb)] = min(ra, rb)
        for gen in self.generators:
            if all(gen[v] == v for v in path):
                for v in range(self.n):
                    a, b = find(v), find(gen[v])
                    if a != b:
                        parent[max(a, b)] = min(a, b)
        return [find(v) for v in range(self.n)]

    def _search(self, colors: list[int], path: list[int]) -> int | None:
        """Returns a depth to unwind to, or None to continue normally."""
        cells: dict[int, list[int]] = {}
        for v, c in enumerate(colors):
            cells.setdefault(c, []).append(v)
        if len(cells) == self.n:
            return self._leaf(colors, path)
        target = min((len(vs), c) for c, vs in cells.items() if len(vs) > 1)[1]
        explored: list[int] = []
        roots = None
        gens_seen = 0
        depth = len(path)
        for w in cells[target]:
            if explored and (self.generators or self.twin_pairs):
                if roots is None or len(self.generators) != gens_seen:
                    roots = self._orbit_roots(path)
                    gens_seen = len(self.generators)
                if any(roots[w] == roots[x] for x in explored):
                    continue
            explored.append(w)
            path.append(w)
            jump = self._search(_refine(self.adj, _individualize(colors, w)), path)
            path.pop()
            if jump is not None and jump < depth:
                return jump
        return None


def _twin_pairs(adj: Sequence[Sequence[int]], labels: Sequence[int]) -> list[tuple[int, int]]:
    """Transpositions of same-label twins; each one is an automorphism."""
    pairs = []
    for closed in (False, True):
        groups: dict[tuple, list[int]] = {}
        for v, row in enumerate(adj):
            nbrs = tuple(sorted(row + [v])) if closed else tuple(sorted(row))
            groups.setdefault((labels[v], nbrs), []).append(v)
        for members in groups.values():
            pairs.extend(zip(members, members[1:]))
    return pairs


def _common_prefix(a: Sequence[int], b: Sequence[int]) -> int:
    k = 0
    for x, y in zip(a, b):
        if x != y:
            break
        k += 1
    return k


def _components(g: Graph) -> list[list[int]]:
    seen = [False] * g.n
    comps = []
    adj = g.adj
    for s in range(g.n):
        if seen[s]:
            continue
        seen[s] = True
        comp = [s]
        stack = [s]
        while stack:
            x = stack.pop()
            for w in adj[x]:
                if not seen[w]:
                    seen[w] = True
                    comp.append(w)
                    stack.append(w)
        comps.append(comp)
    return comps


def canonical_form(g: Graph, colors: Sequence[int] | None = None) -> tuple:
    """Canonical form as nested tuples; equal forms iff (color-preserving) isomorphic."""
    if colors is None:
        colors = [0] * g.n
    elif len(colors) != g.n:
        raise ParameterError("one color per vertex required")
    forms = []
    old_limit = sys.getrecursionlimit()
    if g.n + 200 > old_limit:
        sys.setrecursionlimit(g.n + 200)
    try:
        for comp in _components(g):
            size = len(comp)
            if size == 1:
                forms.append((1, (colors[comp[0]],), ()))
                continue
            if size == 2:
                forms.append((2, tuple(sorted(colors[v] for v in comp)), (1,)))
                continue
            if size == 3 and colors[comp[0]] == colors[comp[1]] == colors[comp[2]]:
                label = colors[comp[0]]
                m = sum(len(g.adj[v]) for v in comp) // 2
                forms.append((3, (label,) * 3, (1, 2) if m == 2 else (1, 2, 5)))
                continue
            local = {v: i for i, v in enumerate(comp)}
            adj = [[local[w] for w in g.adj[v]] for v in comp]
            labels = [colors[v] for v in comp]
            forms.append(_Canonizer(adj, labels).run())
    finally:
        sys.setrecursionlimit(old_limit)
    forms.sort()
    return (g.n, tuple(forms))


def _serialize(form: tuple) -> bytes:
    n, comps = form
    flat = [n, len(comps)]
    for k, labels, edges in comps:
        flat.append(k)
        flat.append(len(edges))
        flat.extend(labels)
        flat.extend(edges)
    return np.asarray(flat, dtype="<i8").tobytes()


def certificate(g: Graph, colors: Sequence[int] | None = None,
                max_vertices: int = DEFAULT_MAX_VERTICES) -> Certificate:
    """Byte string equal for two graphs exactly when they are isomorphic.

    With ``colors``, the isomorphism must also preserve vertex colors (used for
    rooted neighborhoods).
    """
    if g.n > max_vertices:
        raise ResourceError(f"graph has {g.n} vertices, certificate bound is {max_vertices}")
    return _serialize(canonical_form(g, colors))


def is_isomorphic(g: Graph, h: Graph) -> bool:
    if g.n != h.n or g.num_edges != h.num_edges or sorted(g.degrees()) != sorted(h.degrees()):
        return False
    return certificate(g) == certificate(h)


def find_isomorphism(g: Graph, h: Graph) -> list[int] | None:
    """Plain backtracking search for a bijection ``f`` with f(g) = h.

    Independent of the certificate code; meant for cross-checking on small graphs.
    """
    if g.n != h.n or g.num_edges != h.num_edges:
        return None
    n = g.n
    gd, hd = g.degrees(), h.degrees()
    if sorted(gd) != sorted(hd):
        return None
    gk = [degree_neighborhood(g, v) for v in range(n)]
    hk = [degree_neighborhood(h, v) for v in range(n)]
    if sorted(gk) != sorted(hk):
        return None
    # each next vertex has as many already-ordered neighbors as possible
    order: list[int] = []
    links = [0] * n
    left = set(range(n))
    while left:
        v = max(left, key=lambda w: (links[w], gd[w], -w))
        left.remove(v)
        order.append(v)
        for w in g.adj[v]:
            links[w] += 1
    hs = h.neighbor_sets
    image = [-1] * n
    used = [False] * n

    def extend(i: int) -> bool:
        if i == n:
            return True
        v = order[i]
        for cand in range(n):
            if used[cand] or hk[cand] != gk[v]:
                continue
            ok = True
            for u in order[:i]:
                if g.has_edge(u, v) != (cand in hs[image[u]]):
                    ok = False
                    break
            if not ok:
                continue
            image[v] = cand
            used[cand] = True
            if extend(i + 1):
                return True
            used[cand] = False
            image[v] = -1
        return False

    return list(image) if extend(0) else None


def brute_force_isomorphic(g: Graph, h: Graph) -> bool:
    """Try every permutation (vectorized); for graphs with at most 9 vertices."""
    if g.n != h.n or g.num_edges != h.num_edges:
        return False
    n = g.n
    if n > 9:
        raise ResourceError("brute-force isomorphism limited to 9 vertices")
    if n == 0:
        return True
    a, b = g.adjacency_matrix(), h.adjacency_matrix()
    perms = np.array(list(itertools.permutations(range(n))), dtype=np.intp)
    permuted = a[perms[:, :, None], perms[:, None, :]]
    return bool((permuted == b).all(axis=(1, 2)).any())


class DegreeNeighborhood(NamedTuple):
    """Degree plus ascending neighbor degrees; orders by degree, then element-wise."""

    degree: int
    neighbor_degrees: tuple[int, ...]


def degree_neighborhood(g: Graph, v: int) -> DegreeNeighborhood:
    if not 0 <= v < g.n:
        raise ParameterError(f"vertex {v} out of range for n={g.n}")
    deg = g.adj
    return DegreeNeighborhood(len(deg[v]), tuple(sorted(len(deg[w]) for w in deg[v])))


def degree_neighborhoods(g: Graph) -> list[DegreeNeighborhood]:
    degs = g.degrees()
    return [DegreeNeighborhood(degs[v], tuple(sorted(degs[w] for w in g.adj[v])))
            for v in range(g.n)]


def canonical_labeling(g: Graph) -> list[int]:
    """Vertices sorted by degree neighborhood.

    Raises AmbiguityError if two vertices share a degree neighborhood; ties are
    never broken arbitrarily.
    """
    dns = degree_neighborhoods(g)
    order = sorted(range(g.n), key=dns.__getitem__)
    for a, b in zip(order, order[1:]):
        if dns[a] == dns[b]:
            raise AmbiguityError(min(a, b), max(a, b))
    return order
