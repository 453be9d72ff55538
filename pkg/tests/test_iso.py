import itertools
import random

import numpy as np
import pytest
from hypothesis import given, settings

from conftest import all_graphs, brute_canonical, graphs_with_perm, random_graph
from graph_shotgun.errors import AmbiguityError, ParameterError, ResourceError
from graph_shotgun.graph import ErParams, Graph, sample_er
from graph_shotgun.iso import (DegreeNeighborhood, brute_force_isomorphic, canonical_labeling,
                               certificate, degree_neighborhood, degree_neighborhoods,
                               find_isomorphism, is_isomorphic)


def rook_4x4():
    cells = [(r, c) for r in range(4) for c in range(4)]
    return Graph.from_edges(16, [(i, j) for i, j in itertools.combinations(range(16), 2)
                                 if cells[i][0] == cells[j][0] or cells[i][1] == cells[j][1]])


def shrikhande():
    cells = [(r, c) for r in range(4) for c in range(4)]
    steps = {(0, 1), (0, 3), (1, 0), (3, 0), (1, 1), (3, 3)}
    return Graph.from_edges(16, [(i, j) for i, j in itertools.combinations(range(16), 2)
                                 if ((cells[j][0] - cells[i][0]) % 4, (cells[j][1] - cells[i][1]) % 4) in steps])


def petersen():
    outer = [(i, (i + 1) % 5) for i in range(5)]
    spokes = [(i, i + 5) for i in range(5)]
    inner = [(5 + i, 5 + (i + 2) % 5) for i in range(5)]
    return Graph.from_edges(10, outer + spokes + inner)


def shuffled(g, seed):
    perm = list(range(g.n))
    random.Random(seed).shuffle(perm)
    return g.relabel(perm)


def test_certificate_examples():
    k3 = Graph.complete(3)
    assert certificate(k3) == certificate(k3.relabel([2, 0, 1]))
    assert certificate(Graph.path(3)) != certificate(k3)
    assert certificate(Graph.empty(0)) != certificate(Graph.empty(1))


def test_strongly_regular_pair():
    rook, shr = rook_4x4(), shrikhande()
    assert rook.degrees() == shr.degrees() == [6] * 16
    assert certificate(rook) != certificate(shr)
    assert not is_isomorphic(rook, shr)
    assert find_isomorphism(rook, shr) is None
    for seed in range(3):
        assert certificate(shuffled(shr, seed)) == certificate(shr)
        assert certificate(shuffled(rook, seed)) == certificate(rook)


@pytest.mark.parametrize("g,h", [
    (Graph.cycle(6), Graph.from_edges(6, [(0, 1), (1, 2), (0, 2), (3, 4), (4, 5), (3, 5)])),
    (petersen(), Graph.from_edges(10, [(i, (i + 1) % 10) for i in range(10)] +
                                  [(i, i + 5) for i in range(5)])),
])
def test_regular_non_isomorphic(g, h):
    assert g.degrees() == h.degrees() or sorted(g.degrees()) == sorted(h.degrees())
    assert certificate(g) != certificate(h)


def test_exhaustive_five_vertices():
    corpus = [g for n in range(6) for g in all_graphs(n)]
    by_cert, by_brute = {}, {}
    for i, g in enumerate(corpus):
        by_cert.setdefault(certificate(g), set()).add(i)
        by_brute.setdefault(brute_canonical(g), set()).add(i)
    assert len(by_brute) == 1 + 1 + 2 + 4 + 11 + 34
    assert sorted(map(sorted, by_cert.values())) == sorted(map(sorted, by_brute.values()))


def test_random_pairs_seven_vertices():
    rng = random.Random(7)
    same = 0
    for _ in range(300):
        n = rng.randint(1, 7)
        g = random_graph(n, rng.random(), rng)
        h = shuffled(g, rng.random()) if rng.random() < 0.5 else random_graph(n, rng.random(), rng)
        truth = brute_force_isomorphic(g, h)
        same += truth
        assert (certificate(g) == certificate(h)) == truth
        assert (find_isomorphism(g, h) is not None) == truth
    assert same > 100


def test_permutation_invariance_1000():
    rng = np.random.default_rng(2024)
    for _ in range(1000):
        n = int(rng.integers(1, 51))
        g = sample_er(ErParams(n, p=float(rng.random()), seed=int(rng.integers(2**32))))
        perm = rng.permutation(n).tolist()
        assert certificate(g) == certificate(g.relabel(perm))


@settings(max_examples=200, deadline=None)
@given(graphs_with_perm(max_n=12))
def test_isomorphism_relabel(gp):
    g, perm = gp
    h = g.relabel(perm)
    assert is_isomorphic(g, h)
    mapping = find_isomorphism(g, h)
    assert mapping is not None
    assert g.relabel(mapping) == h


def test_colored_certificate():
    p = Graph.path(3)
    assert certificate(p, [1, 0, 0]) == certificate(p, [0, 0, 1])
    assert certificate(p, [1, 0, 0]) != certificate(p, [0, 1, 0])
    assert certificate(p, [0, 0, 0]) == certificate(p)
    with pytest.raises(ParameterError):
        certificate(p, [0, 0])


def test_certificate_size_bound():
    with pytest.raises(ResourceError):
        certificate(Graph.empty(20), max_vertices=10)


def test_large_symmetric_fast():
    # twin-heavy graphs must not explode the search
    assert certificate(Graph.complete(120)) == certificate(shuffled(Graph.complete(120), 1))
    assert certificate(Graph.star(200)) == certificate(shuffled(Graph.star(200), 2))


def test_degree_neighborhood_examples():
    star = Graph.star(3)
    assert degree_neighborhood(star, 0) == DegreeNeighborhood(3, (1, 1, 1))
    assert degree_neighborhood(star, 2) == DegreeNeighborhood(1, (3,))
    assert all(d == (3, (3, 3, 3)) for d in degree_neighborhoods(Graph.complete(4)))
    with pytest.raises(ParameterError):
        degree_neighborhood(star, 4)


def test_canonical_labeling_tie():
    with pytest.raises(AmbiguityError) as exc:
        canonical_labeling(Graph.path(3))
    assert exc.value.pair == (0, 2)


def _distinct_graph(n, seed):
    rng = random.Random(seed)
    while True:
        g = random_graph(n, 0.5, rng)
        dns = degree_neighborhoods(g)
        if len(set(dns)) == n:
            return g


def _canonical_graph(g):
    order = canonical_labeling(g)
    inv = [0] * g.n
    for pos, v in enumerate(order):
        inv[v] = pos
    return g.relabel(inv)


@pytest.mark.parametrize("n", range(2, 6))
def test_no_small_graph_has_distinct_degree_neighborhoods(n):
    # six vertices is the minimum, so the stability check below uses n = 6
    for g in all_graphs(n):
        with pytest.raises(AmbiguityError):
            canonical_labeling(g)


def test_canonical_labeling_stable():
    g = _distinct_graph(6, 3)
    order = canonical_labeling(g)
    dns = degree_neighborhoods(g)
    assert [dns[v] for v in order] == sorted(dns)
    ref = _canonical_graph(g)
    for seed in range(10):
        assert _canonical_graph(shuffled(g, seed)) == ref


@settings(max_examples=200, deadline=None)
@given(graphs_with_perm(max_n=10))
def test_degree_neighborhood_multiset_invariant(gp):
    g, perm = gp
    h = g.relabel(perm)
    assert sorted(degree_neighborhoods(g)) == sorted(degree_neighborhoods(h))
    for v in range(g.n):
        assert degree_neighborhood(g, v) == degree_neighborhood(h, perm[v])
    try:
        ref = _canonical_graph(g)
    except AmbiguityError:
        return
    assert _canonical_graph(h) == ref


def test_brute_force_limit():
    with pytest.raises(ResourceError):
        brute_force_isomorphic(Graph.empty(10), Graph.empty(10))
