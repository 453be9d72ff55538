"""Labeled simple graphs, G(n, p) sampling and basic structural queries."""

from __future__ import annotations

import math
from collections import deque
from dataclasses import dataclass
from pathlib import Path
from typing import Iterable, Iterator, Sequence

import numpy as np
from scipy.sparse import csr_matrix
from scipy.sparse.csgraph import shortest_path

from .errors import ParameterError, ParseError

INF = math.inf

# Above this edge probability each pair gets its own uniform draw; at or below it
# the sampler jumps between edges with geometric gaps.
DENSE_THRESHOLD = 0.1
_GAP_CHUNK = 1 << 14


class Graph:
    """Immutable simple undirected graph on vertices ``0..n-1``.

    ``adj[v]`` is the ascending tuple of neighbors of ``v``.
    """

    __slots__ = ("n", "adj", "_sets", "_m")

    def __init__(self, n: int, adj: Sequence[Sequence[int]], *, check: bool = True):
        if n < 0 or len(adj) != n:
            raise ParameterError(f"adjacency has {len(adj)} rows for n={n}")
        self.n = n
        self.adj = tuple(tuple(row) for row in adj)
        self._sets = None
        self._m = None
        if check:
            self._validate()

    def _validate(self) -> None:
        sets = self.neighbor_sets
        for v, row in enumerate(self.adj):
            for i, w in enumerate(row):
                if not 0 <= w < self.n:
                    raise ParameterError(f"neighbor {w} of {v} out of range")
                if w == v:
                    raise ParameterError(f"self-loop at {v}")
                if i and row[i - 1] >= w:
                    raise ParameterError(f"neighbors of {v} not strictly ascending")
                if v not in sets[w]:
                    raise ParameterError(f"edge {v}-{w} is not symmetric")

    @classmethod
    def from_edges(cls, n: int, edges: Iterable[tuple[int, int]]) -> "Graph":
        rows: list[set[int]] = [set() for _ in range(n)]
        for u, v in edges:
            if u == v:
                raise ParameterError(f"self-loop at {u}")
            if not (0 <= u < n and 0 <= v < n):
                raise ParameterError(f"edge ({u}, {v}) out of range for n={n}")
            rows[u].add(v)
            rows[v].add(u)
        return cls(n, [sorted(r) for r in rows], check=False)

    @classmethod
    def empty(cls, n: int) -> "Graph":
        return cls(n, [()] * n, check=False)

    @classmethod
    def complete(cls, n: int) -> "Graph":
        return cls(n, [tuple(w for w in range(n) if w != v) for v in range(n)], check=False)

    @classmethod
    def path(cls, n: int) -> "Graph":
        return cls.from_edges(n, ((i, i + 1) for i in range(n - 1)))

    @classmethod
    def cycle(cls, n: int) -> "Graph":
        return cls.from_edges(n, ((i, (i + 1) % n) for i in range(n)))

    @classmethod
    def star(cls, leaves: int) -> "Graph":
        return cls.from_edges(leaves + 1, ((0, i) for i in range(1, leaves + 1)))

    @property
    def neighbor_sets(self) -> tuple[frozenset[int], ...]:
        if self._sets is None:
            self._sets = tuple(frozenset(row) for row in self.adj)
        return self._sets

    @property
    def num_edges(self) -> int:
        if self._m is None:
            self._m = sum(len(row) for row in self.adj) // 2
        return self._m

    def degree(self, v: int) -> int:
        return len(self.adj[v])

    def degrees(self) -> list[int]:
        return [len(row) for row in self.adj]

    def has_edge(self, u: int, v: int) -> bool:
        return v in self.neighbor_sets[u]

    def edges(self) -> Iterator[tuple[int, int]]:
        """Edges ``(u, v)`` with ``u < v`` in lexicographic order."""
        for u, row in enumerate(self.adj):
            for v in row:
                if v > u:
                    yield (u, v)

    def relabel(self, perm: Sequence[int]) -> "Graph":
        """Return the graph in which vertex ``v`` is renamed ``perm[v]``."""
        if sorted(perm) != list(range(self.n)):
            raise ParameterError("relabeling is not a permutation of the vertex set")
        rows: list[list[int]] = [[] for _ in range(self.n)]
        for v, row in enumerate(self.adj):
            rows[perm[v]] = sorted(perm[w] for w in row)
        return Graph(self.n, rows, check=False)

    def adjacency_matrix(self) -> np.ndarray:
        a = np.zeros((self.n, self.n), dtype=bool)
        for u, row in enumerate(self.adj):
            a[u, list(row)] = True
        return a

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Graph):
            return NotImplemented
        return self.n == other.n and self.adj == other.adj

    def __hash__(self) -> int:
        return hash((self.n, self.adj))

    def __repr__(self) -> str:
        return f"Graph(n={self.n}, m={self.num_edges})"


@dataclass(frozen=True)
class ErParams:
    """Parameters of G(n, p); give either ``alpha`` (p = n**-alpha) or ``p``."""

    n: int
    alpha: float | None = None
    p: float | None = None
    seed: int = 0

    def __post_init__(self):
        if self.n < 1:
            raise ParameterError("n must be at least 1")
        if (self.alpha is None) == (self.p is None):
            raise ParameterError("exactly one of alpha and p must be set")
        if self.alpha is not None and not 0.0 < self.alpha < 1.0:
            raise ParameterError(f"alpha={self.alpha} outside (0, 1)")
        if not 0 <= self.seed < 2**64:
            raise ParameterError("seed must fit in 64 unsigned bits")
        if not 0.0 <= self.prob <= 1.0:
            raise ParameterError(f"p={self.prob} outside [0, 1]")

    @property
    def prob(self) -> float:
        if self.p is not None:
            return float(self.p)
        return edge_probability(self.n, self.alpha)


def edge_probability(n: int, alpha: float) -> float:
    """p_n = n^-alpha, computed as exp(-alpha ln n)."""
    return math.exp(-alpha * math.log(n))


def _rng(seed: int) -> np.random.Generator:
    return np.random.Generator(np.random.PCG64(seed))


def _pairs_from_linear(n: int, idx: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    rows = np.arange(n, dtype=np.int64)
    row_start = rows * (n - 1) - rows * (rows - 1) // 2
    i = np.searchsorted(row_start, idx, side="right") - 1
    j = idx - row_start[i] + i + 1
    return i, j


def _from_edge_arrays(n: int, us: np.ndarray, vs: np.ndarray) -> Graph:
    src = np.concatenate([us, vs])
    dst = np.concatenate([vs, us])
    order = np.lexsort((dst, src))
    src, dst = src[order], dst[order]
    bounds = np.searchsorted(src, np.arange(n + 1))
    dst_list = dst.tolist()
    adj = [tuple(dst_list[bounds[v]:bounds[v + 1]]) for v in range(n)]
    return Graph(n, adj, check=False)


def sample_er(params: ErParams) -> Graph:
    """Draw G(n, p) deterministically from ``params.seed``.

    Pairs ``(i, j)``, ``i < j``, are visited in lexicographic order. For
    ``p > DENSE_THRESHOLD`` each pair consumes one uniform double; otherwise the
    stream is a sequence of geometric gaps between successive edges.
    """
    n, p = params.n, params.prob
    rng = _rng(params.seed)
    total = n * (n - 1) // 2
    if p == 0.0 or total == 0:
        return Graph.empty(n)
    if p > DENSE_THRESHOLD:
        us, vs = [], []
        for i in range(n - 1):
            hits = np.flatnonzero(rng.random(n - 1 - i) < p)
            if hits.size:
                us.append(np.full(hits.size, i, dtype=np.int64))
                vs.append(hits.astype(np.int64) + i + 1)
        if not us:
            return Graph.empty(n)
        return _from_edge_arrays(n, np.concatenate(us), np.concatenate(vs))

    picks = []
    cur = -1
    while True:
        idx = cur + np.cumsum(rng.geometric(p, size=_GAP_CHUNK))
        picks.append(idx[idx < total])
        cur = int(idx[-1])
        if cur >= total:
            break
    linear = np.concatenate(picks)
    us, vs = _pairs_from_linear(n, linear)
    return _from_edge_arrays(n, us, vs)


def _check_vertex(g: Graph, v: int) -> None:
    if not 0 <= v < g.n:
        raise ParameterError(f"vertex {v} out of range for n={g.n}")


def distances_from(g: Graph, v: int) -> list:
    """BFS distances from ``v``; unreachable vertices get ``math.inf``."""
    _check_vertex(g, v)
    dist: list = [INF] * g.n
    dist[v] = 0
    queue = deque([v])
    adj = g.adj
    while queue:
        x = queue.popleft()
        dx = dist[x] + 1
        for w in adj[x]:
            if dist[w] is INF:
                dist[w] = dx
                queue.append(w)
    return dist


def ball(g: Graph, v: int, radius: int) -> list[int]:
    """Vertices within ``radius`` of ``v``, in BFS discovery order."""
    _check_vertex(g, v)
    seen = {v: 0}
    order = [v]
    frontier = [v]
    adj = g.adj
    for d in range(1, radius + 1):
        nxt = []
        for x in frontier:
            for w in adj[x]:
                if w not in seen:
                    seen[w] = d
                    nxt.append(w)
        order.extend(nxt)
        frontier = nxt
    return order


def induced_subgraph(g: Graph, vs: Iterable[int]) -> tuple[Graph, dict[int, int]]:
    """Subgraph induced on ``vs``; new ids follow ascending old ids."""
    keep = sorted(set(vs))
    for v in keep:
        _check_vertex(g, v)
    mapping = {v: i for i, v in enumerate(keep)}
    adj = g.adj
    rows = []
    for v in keep:
        rows.append(tuple(mapping[w] for w in adj[v] if w in mapping))
    return Graph(len(keep), rows, check=False), mapping


def diameter(g: Graph) -> float:
    """Largest BFS distance over all pairs; ``math.inf`` when disconnected."""
    if g.n == 0:
        raise ParameterError("diameter of the empty vertex set is undefined")
    if g.n == 1:
        return 0
    src = np.repeat(np.arange(g.n), [len(r) for r in g.adj])
    dst = np.fromiter((w for r in g.adj for w in r), dtype=np.int64, count=src.size)
    mat = csr_matrix((np.ones(src.size, dtype=np.int8), (src, dst)), shape=(g.n, g.n))
    if g.n <= 4096:
        # short diameters (the usual case for random graphs) via reachability
        # products: after k steps reach[i, j] > 0 iff dist(i, j) <= k
        a = mat.toarray().astype(np.float32)
        reach = a.copy()
        np.fill_diagonal(reach, 1.0)
        for k in range(1, 9):
            if reach.min() > 0:
                return k
            reach = np.minimum(reach @ a + reach, 1.0)
    worst = 0.0
    for start in range(0, g.n, 256):
        rows = np.arange(start, min(start + 256, g.n))
        d = shortest_path(mat, directed=False, unweighted=True, indices=rows)
        worst = max(worst, float(d.max()))
        if worst == INF:
            return INF
    return int(worst)


def common_neighbors(g: Graph, u: int, v: int) -> set[int]:
    _check_vertex(g, u)
    _check_vertex(g, v)
    if u == v:
        raise ParameterError("common_neighbors needs two distinct vertices")
    return set(g.neighbor_sets[u] & g.neighbor_sets[v])


def to_text(g: Graph) -> str:
    lines = [f"{g.n} {g.num_edges}"]
    lines.extend(f"{u} {v}" for u, v in g.edges())
    return "\n".join(lines) + "\n"


def from_text(text: str) -> Graph:
    lines = text.split("\n")
    if lines and lines[-1] == "":
        lines.pop()
    if not lines:
        raise ParseError("empty graph file", 1)
    try:
        n, m = (int(x) for x in lines[0].split())
    except ValueError:
        raise ParseError("header must be 'n m'", 1) from None
    if n < 0 or m < 0:
        raise ParseError("negative header value", 1)
    if len(lines) != m + 1:
        raise ParseError(f"expected {m} edge lines, found {len(lines) - 1}", len(lines))
    edges = []
    seen = set()
    for lineno, line in enumerate(lines[1:], start=2):
        parts = line.split(" ")
        if len(parts) != 2 or not all(p.isdigit() for p in parts):
            raise ParseError(f"bad edge line {line!r}", lineno)
        u, v = int(parts[0]), int(parts[1])
        if not u < v < n:
            raise ParseError(f"edge {u} {v} must satisfy u < v < n", lineno)
        if (u, v) in seen:
            raise ParseError(f"duplicate edge {u} {v}", lineno)
        seen.add((u, v))
        edges.append((u, v))
    return Graph.from_edges(n, edges)


def save_graph(g: Graph, path) -> None:
    Path(path).write_text(to_text(g), encoding="ascii")


def load_graph(path) -> Graph:
    return from_text(Path(path).read_text(encoding="ascii"))
