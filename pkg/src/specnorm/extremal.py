"""Extremal instances and exact combinatorial audits.

Two families make the norm gaps concrete:

* ``invsqrt``: the rank-1 matrix with entries 1/sqrt(ij).  Its spectral,
  column, and discrete norms all have closed forms through prefix scans, so
  the logarithmic gap ||A||_Delta < 2||A||/sqrt(ln h) can be certified for
  huge n without materializing anything.

* tensor powers of [[1,1],[1,0]]: the graph on m-bit strings joining
  disjoint supports.  Spectral norm phi^m; binary subsets only reach
  phi^(2m)/poly(m) in energy, which the tau(m, j) double-binomial sum and the
  entropy-function saddle analysis quantify exactly.

Everything combinatorial here is exact integer arithmetic; floating point
enters only for logs, norms, and the recorded scaled ratios.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass

import numpy as np

from .errors import CapExceededError, OutOfRangeError
from .linalg import top_two_singular
from .oracle import exact_delta, exact_rho
from .witness import (
    BinaryVector,
    delta_witness,
    exact_rank1_binary,
    rho_witness,
)

PHI = (1.0 + math.sqrt(5.0)) / 2.0
# Saddle point of the double entropy function and its maximum value.
X0 = (5.0 - math.sqrt(5.0)) / 10.0
Z0 = 2.0 - PHI
FMAX = 2.0 * math.log(PHI)

INVSQRT_DENSE_CAP = 4096
TENSOR_DENSE_CAP = 12
TENSOR_MATVEC_CAP = 24
TAU_CAP = 3000
SPHERE_CAP = 14
BINOMIAL_CAP = 3000


@dataclass(frozen=True)
class InvsqrtCertificate:
    """Closed forms for A = x x^T with x_i = 1/sqrt(i), i = 1..n.

    spectral = sum 1/i, col_norm = row norm = sum 1/sqrt(i), and the discrete
    norms reduce to the rank-1 prefix scan: delta_norm = ||x|| * c and
    rho_norm = c^2 where c = max_k (sum_{i<=k} 1/sqrt(i)) / sqrt(k).
    """

    n: int
    spectral: float
    col_norm: float
    height: float
    delta_norm: float
    rho_norm: float
    xi: BinaryVector


@dataclass(frozen=True)
class TensorPowerMatrix:
    """Dense m-fold tensor power of [[1,1],[1,0]]: entry (u,v) = [u & v == 0]."""

    m: int
    matrix: np.ndarray
    phi_power: float


@dataclass(frozen=True)
class KneserAudit:
    """Exact discrete norms of the order-2^m tensor power, with scaled ratios.

    r_delta = delta_exact * m^(1/4) / phi^m and r_rho = rho_exact * sqrt(m) /
    phi^m track the logarithm-free gaps; the full-set values sqrt(5^m/2^m)
    and 3^m/2^m are the analytic lower bounds attained by the all-ones
    subset.
    """

    m: int
    phi_power: float
    delta_exact: float
    rho_exact: float
    delta_witness_ratio: float
    rho_witness_value: float
    r_delta: float
    r_rho: float
    full_set_delta: float
    full_set_rho: float


@dataclass(frozen=True)
class TauTable:
    """Exact tau_m(j) = sum_i C(m-i, j) C(m-j, i) for j = 0..m."""

    m: int
    values: tuple
    max_scaled: float


@dataclass(frozen=True)
class EntropyAnalysis:
    """Grid audit of the double entropy function on the simplex.

    grid_margin is the worst violation (clamped at zero) of the saddle bound
    f(x, y) <= fmax - (2/3)(x - x0)^2 over the grid; the analytic facts
    f(x0, x0) = fmax, H'(z0) = ln phi, H'' <= -4, and concavity along grid
    lines are asserted during the sweep.
    """

    x0: float
    z0: float
    fmax: float
    grid_margin: float
    grid_step: float


def invsqrt_certificate(n: int) -> InvsqrtCertificate:
    """Exact norm certificate for the 1/sqrt(ij) matrix; any n >= 4."""
    if n < 4:
        raise OutOfRangeError("invsqrt needs n >= 4")
    x = 1.0 / np.sqrt(np.arange(1, n + 1, dtype=np.float64))
    spectral = math.fsum(1.0 / i for i in range(1, n + 1))
    colsum = math.fsum(float(v) for v in x)
    xi, cosine_value = exact_rank1_binary(x)
    xnorm = math.sqrt(spectral)  # ||x||^2 = sum 1/i
    return InvsqrtCertificate(
        n=n,
        spectral=spectral,
        col_norm=colsum,
        height=colsum / spectral,  # sqrt(col*row)/spectral with col = row
        delta_norm=xnorm * cosine_value,
        rho_norm=cosine_value * cosine_value,
        xi=xi,
    )


def gen_invsqrt(n: int):
    """(dense matrix, certificate) for entries 1/sqrt(ij), 4 <= n <= dense cap."""
    cert = invsqrt_certificate(n)
    if n > INVSQRT_DENSE_CAP:
        raise CapExceededError(
            f"dense invsqrt capped at {INVSQRT_DENSE_CAP}; use invsqrt_certificate")
    x = 1.0 / np.sqrt(np.arange(1, n + 1, dtype=np.float64))
    return np.outer(x, x).astype(np.complex128), cert


def tensor_matvec(m: int, x) -> np.ndarray:
    """A_m @ x through m successive 2x2 contractions; never builds A_m.

    Each round contracts one bit with [[1,1],[1,0]] and rotates it to the
    back, so after m rounds every bit is processed once and the original
    index order is restored.
    """
    if not 1 <= m <= TENSOR_MATVEC_CAP:
        raise OutOfRangeError(f"tensor power order must be in [1, {TENSOR_MATVEC_CAP}]")
    y = np.asarray(x, dtype=np.complex128)
    if y.shape != (1 << m,):
        raise OutOfRangeError(f"vector must have length 2^{m}")
    t = np.array([[1.0, 1.0], [1.0, 0.0]], dtype=np.complex128)
    for _ in range(m):
        y = (t @ y.reshape(2, -1)).T.reshape(-1)
    return y


def gen_tensor_power(m: int, verify: bool = True) -> TensorPowerMatrix:
    """Dense tensor power: entry (u, v) = 1 iff u and v have disjoint supports.

    The loop at the zero vertex is kept; the spectral identity ||A_m|| =
    phi^m depends on it and is checked at construction unless ``verify`` is
    off.
    """
    if not 1 <= m <= TENSOR_MATVEC_CAP:
        raise OutOfRangeError(f"tensor power order must be in [1, {TENSOR_MATVEC_CAP}]")
    if m > TENSOR_DENSE_CAP:
        raise CapExceededError(
            f"dense tensor power capped at m = {TENSOR_DENSE_CAP}; use tensor_matvec")
    size = 1 << m
    verts = np.arange(size, dtype=np.int64)
    mat = np.empty((size, size), dtype=np.complex128)
    chunk = max(1, (1 << 22) // size)
    for lo in range(0, size, chunk):
        block = (verts[lo:lo + chunk, None] & verts[None, :]) == 0
        mat[lo:lo + chunk] = block
    phi_power = PHI ** m
    if verify:
        p1, _ = top_two_singular(mat)
        if abs(p1.value - phi_power) > 1e-8 * phi_power:
            raise AssertionError(
                f"tensor power norm {p1.value} != phi^{m} = {phi_power}")
    return TensorPowerMatrix(m=m, matrix=mat, phi_power=phi_power)


def tensor_degree_counts(m: int) -> np.ndarray:
    """Degree of every vertex of the disjointness graph, by direct bitmask count.

    Equals 2^(m - popcount(v)) entrywise; counted, not derived, so it can
    back exact-identity checks.
    """
    if not 1 <= m <= SPHERE_CAP:
        raise OutOfRangeError(f"degree counting capped at m = {SPHERE_CAP}")
    size = 1 << m
    verts = np.arange(size, dtype=np.int64)
    deg = np.empty(size, dtype=np.int64)
    chunk = max(1, (1 << 22) // size)
    for lo in range(0, size, chunk):
        deg[lo:lo + chunk] = ((verts[lo:lo + chunk, None] & verts[None, :]) == 0).sum(axis=1)
    return deg


def kneser_norm_audit(m: int) -> KneserAudit:
    """Exact discrete norms of the order-2^m tensor power plus witness values.

    The Gray-code oracles bound m at 4 (16 coordinates); the analytic
    full-set values sqrt(5^m/2^m) and 3^m/2^m are recorded alongside.
    """
    tp = gen_tensor_power(m)
    a = tp.matrix
    de = exact_delta(a)
    re_ = exact_rho(a)
    dw = delta_witness(a)
    rw = rho_witness(a)
    return KneserAudit(
        m=m,
        phi_power=tp.phi_power,
        delta_exact=de.value,
        rho_exact=re_.value,
        delta_witness_ratio=dw.ratio,
        rho_witness_value=rw.value,
        r_delta=de.value * m ** 0.25 / tp.phi_power,
        r_rho=re_.value * math.sqrt(m) / tp.phi_power,
        full_set_delta=math.sqrt(5.0 ** m / 2.0 ** m),
        full_set_rho=3.0 ** m / 2.0 ** m,
    )


def tau(m: int, j: int) -> int:
    """Exact double-binomial sum tau_m(j) = sum_i C(m-i, j) C(m-j, i)."""
    if not 0 <= m <= TAU_CAP:
        raise OutOfRangeError(f"tau needs 0 <= m <= {TAU_CAP}")
    if not 0 <= j <= m:
        raise OutOfRangeError("tau needs 0 <= j <= m")
    return sum(math.comb(m - i, j) * math.comb(m - j, i) for i in range(m - j + 1))


def tau_max_scan(m: int) -> TauTable:
    """All tau_m(j) exactly, plus max_j tau_m(j) sqrt(m) / phi^(2m).

    The scaling is evaluated through exact big-integer logarithms, so it
    stays accurate far beyond float range.  Cost grows like m^2 big-integer
    terms; desk scale is a few hundred.
    """
    if not 1 <= m <= TAU_CAP:
        raise OutOfRangeError(f"tau scan needs 1 <= m <= {TAU_CAP}")
    values = tuple(tau(m, j) for j in range(m + 1))
    log_best = max(math.log(v) for v in values)
    max_scaled = math.exp(log_best + 0.5 * math.log(m) - 2.0 * m * math.log(PHI))
    return TauTable(m=m, values=values, max_scaled=max_scaled)


def tau_scaled_sweep(m_max: int) -> np.ndarray:
    """max_scaled(m) for m = 1..m_max in one log-space pass.

    Entry [m] holds the value (entry [0] is NaN).  Binomials come from a
    shared log-factorial table with a log-sum-exp reduction per j; relative
    error stays below 1e-9, cross-checkable against tau_max_scan anchors.
    """
    if not 1 <= m_max <= TAU_CAP:
        raise OutOfRangeError(f"sweep needs 1 <= m_max <= {TAU_CAP}")
    lf = np.concatenate(([0.0], np.cumsum(np.log(np.arange(1, m_max + 1)))))
    lphi = math.log(PHI)
    out = np.full(m_max + 1, np.nan)
    for m in range(1, m_max + 1):
        idx = np.arange(m + 1)
        jj, ii = np.meshgrid(idx, idx, indexing="ij")
        ok = ii <= m - jj
        mi = np.where(ok, m - ii, 0)
        mj = m - jj
        term = np.where(
            ok,
            (lf[mi] - lf[jj] - lf[np.maximum(mi - jj, 0)])
            + (lf[mj] - lf[ii] - lf[np.maximum(mj - ii, 0)]),
            -np.inf,
        )
        tmax = term.max(axis=1)
        log_tau = tmax + np.log(np.exp(term - tmax[:, None]).sum(axis=1))
        out[m] = math.exp(float(log_tau.max()) + 0.5 * math.log(m) - 2.0 * m * lphi)
    return out


def sphere_energy_identity(m: int, r: int):
    """(counted, formula) per-vertex neighborhood energy of the Hamming sphere.

    lhs counts sum_v |N_{S_r}(v)|^2 over the disjointness graph by direct
    bitmasking, divided (exactly) by |S_r| = C(m, r); rhs is tau_m(r).  Both
    are exact integers and must agree.
    """
    if not 0 <= m <= SPHERE_CAP:
        raise OutOfRangeError(f"sphere counting capped at m = {SPHERE_CAP}")
    if not 0 <= r <= m:
        raise OutOfRangeError("sphere radius must be in [0, m]")
    verts = np.arange(1 << m, dtype=np.int64)
    counts = np.zeros(1 << m, dtype=np.int64)
    for support in itertools.combinations(range(m), r):
        u = 0
        for i in support:
            u |= 1 << i
        counts += (verts & u) == 0
    energy = int(counts @ counts)
    size = math.comb(m, r)
    lhs, rem = divmod(energy, size)
    if rem:
        raise AssertionError(f"sphere energy {energy} not divisible by |S_r| = {size}")
    return lhs, tau(m, r)


def binary_entropy(z):
    """H(z) = -z ln z - (1-z) ln(1-z) on [0, 1], with H(0) = H(1) = 0."""
    arr = np.asarray(z, dtype=np.float64)
    if np.any(arr < 0.0) or np.any(arr > 1.0):
        raise OutOfRangeError("entropy argument must lie in [0, 1]")
    out = np.zeros_like(arr)
    inside = (arr > 0.0) & (arr < 1.0)
    zi = arr[inside]
    out[inside] = -zi * np.log(zi) - (1.0 - zi) * np.log1p(-zi)
    return float(out) if np.ndim(z) == 0 else out


def double_entropy(x, y):
    """f(x, y) = (1-x) H(y/(1-x)) + (1-y) H(x/(1-y)) on the simplex.

    Extended by continuity to vanish at the three vertex points (and on the
    whole hypotenuse x + y = 1).
    """
    xa = np.asarray(x, dtype=np.float64)
    ya = np.asarray(y, dtype=np.float64)
    if np.any(xa < 0.0) or np.any(ya < 0.0) or np.any(xa + ya > 1.0 + 1e-12):
        raise OutOfRangeError("double_entropy needs x, y >= 0 with x + y <= 1")
    dx = 1.0 - xa
    dy = 1.0 - ya
    tx = np.divide(ya, dx, out=np.zeros_like(dx), where=dx > 0.0)
    ty = np.divide(xa, dy, out=np.zeros_like(dy), where=dy > 0.0)
    out = dx * binary_entropy(np.clip(tx, 0.0, 1.0)) \
        + dy * binary_entropy(np.clip(ty, 0.0, 1.0))
    return float(out) if np.ndim(x) == 0 and np.ndim(y) == 0 else out


def entropy_analysis(grid_step: float = 1e-3) -> EntropyAnalysis:
    """Audit the double entropy function on a simplex grid.

    Asserts the analytic facts (maximum value, H'(z0) = ln phi, H'' <= -4),
    concavity along grid lines, and the saddle bound
    f(x, y) <= fmax - (2/3)(x - x0)^2 at every node.
    """
    if not 0.0 < grid_step <= 1e-2:
        raise OutOfRangeError("grid step must be in (0, 1e-2]")
    n = int(round(1.0 / grid_step))

    if abs(double_entropy(X0, X0) - FMAX) > 1e-12:
        raise AssertionError("maximum value drifted from 2 ln phi")
    if abs(math.log((1.0 - Z0) / Z0) - math.log(PHI)) > 1e-12:
        raise AssertionError("H'(z0) drifted from ln phi")
    z = np.arange(1, n) / n
    if np.max(-1.0 / (z * (1.0 - z))) > -4.0 + 1e-12:
        raise AssertionError("H'' exceeded -4 on the grid")

    idx = np.arange(n + 1)
    ii, jj = np.meshgrid(idx, idx, indexing="ij")
    mask = ii + jj <= n
    xg = ii / n
    yg = jj / n
    f = np.full(xg.shape, np.nan)
    f[mask] = double_entropy(xg[mask], yg[mask])

    d2x = f[2:, :] - 2.0 * f[1:-1, :] + f[:-2, :]
    okx = mask[2:, :] & mask[1:-1, :] & mask[:-2, :]
    d2y = f[:, 2:] - 2.0 * f[:, 1:-1] + f[:, :-2]
    oky = mask[:, 2:] & mask[:, 1:-1] & mask[:, :-2]
    if max(float(d2x[okx].max()), float(d2y[oky].max())) > 1e-12:
        raise AssertionError("second differences broke concavity on the grid")

    saddle = FMAX - (2.0 / 3.0) * (xg - X0) ** 2
    margin = max(0.0, float((f[mask] - saddle[mask]).max()))
    if margin > 1e-10:
        raise AssertionError(f"saddle bound violated by {margin}")
    return EntropyAnalysis(
        x0=X0, z0=Z0, fmax=FMAX, grid_margin=margin, grid_step=grid_step)


def _exp_or_inf(t: float) -> float:
    try:
        return math.exp(t)
    except OverflowError:
        return math.inf


def binomial_tail_check(m: int, k: int):
    """Entropy sandwich e^{mH(k/m)}/sqrt(2m) <= C(m,k) <= sum_{i<=k} C(m,i) <= e^{mH(k/m)}.

    Requires k <= m/2.  The inequalities are asserted in exact log space
    (big-integer middle); the returned floats saturate to inf past float
    range.
    """
    if not 1 <= m <= BINOMIAL_CAP:
        raise OutOfRangeError(f"binomial check needs 1 <= m <= {BINOMIAL_CAP}")
    if not 0 <= 2 * k <= m:
        raise OutOfRangeError("binomial check needs 0 <= k <= m/2")
    log_upper = m * binary_entropy(k / m)
    log_lower = log_upper - 0.5 * math.log(2.0 * m)
    mid = sum(math.comb(m, i) for i in range(k + 1))
    log_mid = math.log(mid)
    log_cmk = math.log(math.comb(m, k))
    if not (log_lower <= log_cmk + 1e-9
            and log_cmk <= log_mid + 1e-9
            and log_mid <= log_upper + 1e-9):
        raise AssertionError(f"binomial sandwich failed at m={m}, k={k}")
    try:
        value = float(mid)
    except OverflowError:
        value = math.inf
    return _exp_or_inf(log_lower), value, _exp_or_inf(log_upper)
