"""Graph ingestion and the spectral audit of subset-counting bounds.

An undirected simple graph enters as an edge list; its adjacency matrix ties
combinatorial counts to norms exactly:

    sum_v |N_X(v)|^2 = ||A xi_X||^2        (neighborhood energy)
    e(X, Y) = xi_X^T A xi_Y                (ordered-pair edge count)

Spectral theory caps both counts (energy <= rho^2 |X|, e(X,Y) <=
rho sqrt(|X||Y|), and the mixing bound |e(X,Y) - d|X||Y|/n| <=
sigma sqrt(|X||Y|) for regular graphs).  The discrete-witness pipeline runs
the other way: it constructs subsets whose counts come within a
constant-over-log factor of those caps, including a converse to the expander
mixing lemma obtained by centering the adjacency matrix at its mean entry.
"""

from __future__ import annotations

from dataclasses import dataclass
from pathlib import Path

import numpy as np

from .errors import (
    EmptyGraphError,
    EmptySubsetError,
    LoopRejectedError,
    OutOfRangeError,
    ParseError,
    RankDeficientError,
)
from .linalg import (
    DEFAULT_MAX_ITER,
    DEFAULT_SEED,
    DEFAULT_TOL,
    centered_height_bound,
    mean_matrix,
    top_two_singular,
)
from .witness import (
    BinaryVector,
    delta_floor,
    delta_witness,
    rho_floor,
    rho_witness,
)


@dataclass(frozen=True)
class Graph:
    """Simple undirected graph: ``n`` vertices, edges as (u, v) pairs, u < v."""

    n: int
    edges: frozenset

    def __post_init__(self):
        if self.n < 1:
            raise OutOfRangeError("graph needs at least one vertex")
        for u, v in self.edges:
            if not (0 <= u < v < self.n):
                raise OutOfRangeError(f"edge ({u}, {v}) invalid for {self.n} vertices")

    def degrees(self) -> np.ndarray:
        deg = np.zeros(self.n, dtype=np.int64)
        for u, v in self.edges:
            deg[u] += 1
            deg[v] += 1
        return deg


@dataclass(frozen=True)
class GraphSpectralProfile:
    rho: float
    sigma: float
    max_degree: int
    avg_degree: float


@dataclass(frozen=True)
class MixingReport:
    """A subset pair whose edge count strays far from the d-regular expectation.

    discrepancy = |e(X,Y) - d|X||Y|/n| is certified >= floor; ``upper`` is the
    forward mixing-lemma reference value sigma*sqrt(|X||Y|) (attainable only
    up to the regularity defect, so it is reported, not asserted).
    """

    x: BinaryVector
    y: BinaryVector
    discrepancy: float
    floor: float
    upper: float


@dataclass(frozen=True)
class CenteredAudit:
    """Witnesses against the mean-centered adjacency matrix B = A - d/n.

    ``x`` carries centered neighborhood energy ``lhs`` =
    sum_v (|N_X(v)| - d|X|/n)^2 >= ``floor`` = sigma^2 |X| / (128 (ln(2D/sigma)+2));
    ``mixing`` certifies the edge-count discrepancy.  The matrix-level floors
    use the centering height bound K = 2 sqrt(||A||_1 ||A||_inf) / sigma:
    ||B||_Delta >= sigma/(8 sqrt(2) sqrt(ln K + 2)) and
    ||B||_P >= sigma/(32 sqrt(2) (ln K + 4)).
    """

    x: BinaryVector
    lhs: float
    floor: float
    mixing: MixingReport
    sigma: float
    height_bound: float
    floor_delta_matrix: float
    floor_rho_matrix: float


def parse_graph(text: str) -> Graph:
    """Parse an edge list: optional first line ``n``, then ``u v`` lines.

    ``#`` starts a comment; duplicate edges are ignored; a self-loop is
    rejected.  Without a header the vertex count is 1 + the largest id, so at
    least one edge line is required.
    """
    header = None
    first_data = True
    edges = set()
    max_id = -1
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        tokens = line.split()
        if first_data and len(tokens) == 1:
            try:
                header = int(tokens[0])
            except ValueError:
                raise ParseError(f"line {lineno}: bad vertex count {tokens[0]!r}") from None
            if header < 1:
                raise ParseError(f"line {lineno}: vertex count must be >= 1")
            first_data = False
            continue
        first_data = False
        if len(tokens) != 2:
            raise ParseError(f"line {lineno}: expected 'u v', got {line!r}")
        try:
            u, v = int(tokens[0]), int(tokens[1])
        except ValueError:
            raise ParseError(f"line {lineno}: vertex ids must be integers") from None
        if u < 0 or v < 0:
            raise ParseError(f"line {lineno}: vertex ids must be >= 0")
        if u == v:
            raise LoopRejectedError(f"line {lineno}: self-loop at vertex {u}")
        if header is not None and max(u, v) >= header:
            raise ParseError(f"line {lineno}: vertex id {max(u, v)} >= count {header}")
        edges.add((min(u, v), max(u, v)))
        max_id = max(max_id, u, v)
    if header is None:
        if max_id < 0:
            raise ParseError("no edges and no vertex-count header")
        n = max_id + 1
    else:
        n = header
    return Graph(n=n, edges=frozenset(edges))


def read_graph(path) -> Graph:
    return parse_graph(Path(path).read_text(encoding="utf-8"))


def adjacency(g: Graph) -> np.ndarray:
    """Symmetric 0/1 adjacency matrix of g (complex dtype, zero diagonal)."""
    return _adjacency_int(g).astype(np.complex128)


def _adjacency_int(g: Graph) -> np.ndarray:
    a = np.zeros((g.n, g.n), dtype=np.int64)
    for u, v in g.edges:
        a[u, v] = 1
        a[v, u] = 1
    return a


def graph_profile(g: Graph, tol: float = DEFAULT_TOL,
                  max_iter: int = DEFAULT_MAX_ITER,
                  seed: int = DEFAULT_SEED) -> GraphSpectralProfile:
    """Spectral radius, second singular value, and degree statistics."""
    if not g.edges:
        return GraphSpectralProfile(rho=0.0, sigma=0.0, max_degree=0, avg_degree=0.0)
    p1, p2 = top_two_singular(adjacency(g), tol, max_iter, seed)
    deg = g.degrees()
    return GraphSpectralProfile(
        rho=p1.value,
        sigma=p2.value,
        max_degree=int(deg.max()),
        avg_degree=2.0 * len(g.edges) / g.n,
    )


def _subset_vector(g: Graph, x: BinaryVector, name: str) -> np.ndarray:
    if x.dim != g.n:
        raise OutOfRangeError(f"{name} has dim {x.dim}, graph has {g.n} vertices")
    return x.to_array(np.int64)


def neighborhood_energy(g: Graph, x: BinaryVector,
                        profile: GraphSpectralProfile | None = None) -> int:
    """sum_v |N_X(v)|^2, exactly, for a nonempty subset X.

    Equals ||A xi_X||^2 and is checked against the spectral cap
    rho^2 |X| (1 + 1e-8).
    """
    xv = _subset_vector(g, x, "X")
    if x.popcount == 0:
        raise EmptySubsetError("neighborhood energy needs a nonempty subset")
    counts = _adjacency_int(g) @ xv
    energy = int(counts @ counts)
    if profile is None:
        profile = graph_profile(g)
    if energy > profile.rho ** 2 * x.popcount * (1.0 + 1e-8):
        raise AssertionError(
            f"energy {energy} exceeds rho^2 |X| = {profile.rho ** 2 * x.popcount}")
    return energy


def edge_count(g: Graph, x: BinaryVector, y: BinaryVector,
               profile: GraphSpectralProfile | None = None) -> int:
    """Ordered-pair count |{(u, v) in X x Y : uv an edge}| = xi_X^T A xi_Y.

    Edges inside the overlap of X and Y contribute twice.  For nonempty X and
    Y the count is checked against the cap rho sqrt(|X||Y|) (1 + 1e-8).
    """
    xv = _subset_vector(g, x, "X")
    yv = _subset_vector(g, y, "Y")
    count = int(xv @ _adjacency_int(g) @ yv)
    if x.popcount and y.popcount:
        if profile is None:
            profile = graph_profile(g)
        cap = profile.rho * np.sqrt(x.popcount * y.popcount)
        if count > cap * (1.0 + 1e-8):
            raise AssertionError(f"e(X,Y) = {count} exceeds rho sqrt(|X||Y|) = {cap}")
    return count


def delta_subset_witness(g: Graph, tol: float = DEFAULT_TOL,
                         max_iter: int = DEFAULT_MAX_ITER,
                         seed: int = DEFAULT_SEED):
    """Subset X with sum_v |N_X(v)|^2 >= rho^2 |X| / (128 (ln(D/rho) + 2)).

    Returns (X, energy per vertex, per-vertex floor).  The per-vertex floor is
    the square of the discrete-norm witness floor at height D/rho, which for a
    0/1 adjacency matrix is the exact height.
    """
    if not g.edges:
        raise EmptyGraphError("subset witness needs at least one edge")
    gp = graph_profile(g, tol, max_iter, seed)
    dw = delta_witness(adjacency(g), tol, max_iter, seed)
    x = dw.xi
    energy = neighborhood_energy(g, x, profile=gp)
    floor = delta_floor(gp.rho, gp.max_degree / gp.rho) ** 2
    if energy < floor * x.popcount * (1.0 - 1e-6):
        raise AssertionError(
            f"witness energy {energy} fell below floor {floor * x.popcount}")
    return x, energy / x.popcount, floor


def centered_witnesses(g: Graph, tol: float = DEFAULT_TOL,
                       max_iter: int = DEFAULT_MAX_ITER,
                       seed: int = DEFAULT_SEED) -> CenteredAudit:
    """Converse-mixing witnesses from the mean-centered adjacency matrix.

    Centering at the exact mean entry d/n leaves a matrix B with
    ||B|| >= sigma and height at most 2D/sigma, so the discrete-norm witness
    yields a subset with large centered neighborhood energy and the Rayleigh
    witness yields a pair whose edge count strays from d|X||Y|/n by at least
    sigma sqrt(|X||Y|) / (32 sqrt(2) (ln(2D/sigma) + 4)).
    """
    if not g.edges:
        raise RankDeficientError("centered witnesses need adjacency rank >= 2")
    a = adjacency(g)
    gp = graph_profile(g, tol, max_iter, seed)
    if gp.sigma <= 1e-12 * max(gp.rho, 1.0):
        raise RankDeficientError("centered witnesses need adjacency rank >= 2")
    sigma = gp.sigma
    dd = gp.max_degree
    mu = mean_matrix(a)[0, 0].real
    b = a - mean_matrix(a)
    a_int = _adjacency_int(g)

    dw = delta_witness(b, tol, max_iter, seed)
    x = dw.xi
    counts = a_int @ x.to_array(np.int64)
    lhs = float(((counts - mu * x.popcount) ** 2).sum())
    floor = delta_floor(sigma, 2.0 * dd / sigma) ** 2 * x.popcount
    if lhs < floor * (1.0 - 1e-6):
        raise AssertionError(f"centered energy {lhs} fell below floor {floor}")

    rw = rho_witness(b, tol, max_iter, seed)
    xm, ym = rw.eta, rw.xi
    e = int(xm.to_array(np.int64) @ a_int @ ym.to_array(np.int64))
    discrepancy = abs(e - mu * xm.popcount * ym.popcount)
    scale = np.sqrt(xm.popcount * ym.popcount)
    mix_floor = rho_floor(sigma, 2.0 * dd / sigma) * scale
    if discrepancy < mix_floor * (1.0 - 1e-6):
        raise AssertionError(
            f"mixing discrepancy {discrepancy} fell below floor {mix_floor}")
    mixing = MixingReport(
        x=xm,
        y=ym,
        discrepancy=discrepancy,
        floor=mix_floor,
        upper=sigma * scale,
    )

    k = centered_height_bound(a, sigma, gp.rho)
    return CenteredAudit(
        x=x,
        lhs=lhs,
        floor=floor,
        mixing=mixing,
        sigma=sigma,
        height_bound=k,
        floor_delta_matrix=delta_floor(sigma, k),
        floor_rho_matrix=rho_floor(sigma, k),
    )
