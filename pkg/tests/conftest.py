"""Shared corpora for the test suite.

The matrix corpus mixes seeded random draws of four kinds (nonnegative real,
signed real, complex, sparse signed) with fixed structured matrices: identity,
all-ones, the rank-1 inverse-square-root family, small tensor powers of
[[1,1],[1,0]], and adjacency matrices of a few named graphs.  A slice of every
random kind is symmetrized so the Hermitian sub-corpus is well populated.
"""

import numpy as np
import pytest

from specnorm.extremal import gen_invsqrt, gen_tensor_power
from specnorm.graphs import Graph, graph_profile

CORPUS_SEED = 0xC0FFEE
RANDOM_KINDS = ("real", "signed", "complex", "sparse")


def random_matrix(rng, kind, max_side=12):
    m = int(rng.integers(1, max_side + 1))
    n = int(rng.integers(1, max_side + 1))
    if kind == "real":
        a = rng.random((m, n))
    elif kind == "signed":
        a = rng.standard_normal((m, n))
    elif kind == "complex":
        a = rng.standard_normal((m, n)) + 1j * rng.standard_normal((m, n))
    elif kind == "sparse":
        a = rng.standard_normal((m, n)) * (rng.random((m, n)) < 0.25)
    else:
        raise ValueError(f"unknown kind {kind!r}")
    a = np.asarray(a, dtype=np.complex128)
    if rng.random() < 0.3:
        k = max(m, n)
        b = np.zeros((k, k), dtype=np.complex128)
        b[:m, :n] = a
        a = (b + b.conj().T) / 2.0
    if not a.any():
        a[int(rng.integers(0, a.shape[0])), int(rng.integers(0, a.shape[1]))] = 1.0
    return a


def build_random_corpus(count=300, seed=CORPUS_SEED, max_side=12):
    rng = np.random.default_rng(seed)
    out = []
    per_kind = count // len(RANDOM_KINDS)
    for kind in RANDOM_KINDS:
        for i in range(per_kind):
            out.append((f"{kind}-{i}", random_matrix(rng, kind, max_side)))
    return out


def path_edges(n):
    return [(i, i + 1) for i in range(n - 1)]


def star_edges(k):
    return [(0, i) for i in range(1, k + 1)]


def complete_edges(n):
    return [(u, v) for u in range(n) for v in range(u + 1, n)]


def bipartite_edges(a, b):
    return [(u, a + v) for u in range(a) for v in range(b)]


def graph_of(n, edges):
    return Graph(n, frozenset((min(u, v), max(u, v)) for u, v in edges))


def adjacency_of(n, edges):
    a = np.zeros((n, n), dtype=np.complex128)
    for u, v in edges:
        a[u, v] = 1.0
        a[v, u] = 1.0
    return a


def fixture_matrices():
    mats = []
    for n in (1, 2, 3, 5):
        mats.append((f"identity-{n}", np.eye(n, dtype=np.complex128)))
    for m, n in ((3, 4), (4, 4), (1, 7), (12, 2)):
        mats.append((f"ones-{m}x{n}", np.ones((m, n), dtype=np.complex128)))
    for n in (4, 8, 16):
        matrix, _ = gen_invsqrt(n)
        mats.append((f"invsqrt-{n}", matrix))
    for m in (1, 2, 3, 4):
        mats.append((f"tensor-{m}", gen_tensor_power(m).matrix))
    mats.append(("complete-4", adjacency_of(4, complete_edges(4))))
    for k in (2, 3, 5):
        mats.append((f"star-{k}", adjacency_of(k + 1, star_edges(k))))
    for n in (2, 3, 6):
        mats.append((f"path-{n}", adjacency_of(n, path_edges(n))))
    return mats


def build_graph_corpus(count=100, seed=CORPUS_SEED + 7, max_n=64):
    """Random and structured simple graphs with second singular value > 0."""
    rng = np.random.default_rng(seed)
    out = []
    out.append(("complete-4", graph_of(4, complete_edges(4))))
    out.append(("complete-7", graph_of(7, complete_edges(7))))
    out.append(("bipartite-2x2", graph_of(4, bipartite_edges(2, 2))))
    out.append(("bipartite-3x5", graph_of(8, bipartite_edges(3, 5))))
    out.append(("star-3", graph_of(4, star_edges(3))))
    out.append(("star-9", graph_of(10, star_edges(9))))
    out.append(("path-2", graph_of(2, path_edges(2))))
    out.append(("path-12", graph_of(12, path_edges(12))))
    densities = (0.1, 0.3, 0.5, 0.9)
    while len(out) < count:
        n = int(rng.integers(4, max_n + 1))
        p = densities[int(rng.integers(0, len(densities)))]
        mask = rng.random((n, n)) < p
        edges = [(u, v) for u in range(n) for v in range(u + 1, n) if mask[u, v]]
        if not edges:
            continue
        g = graph_of(n, edges)
        if graph_profile(g).sigma <= 1e-8:
            continue
        out.append((f"er-{n}-{p}-{len(out)}", g))
    return out


@pytest.fixture(scope="session")
def random_corpus():
    return build_random_corpus()


@pytest.fixture(scope="session")
def full_corpus(random_corpus):
    return random_corpus + fixture_matrices()


@pytest.fixture(scope="session")
def graph_corpus():
    return build_graph_corpus()
