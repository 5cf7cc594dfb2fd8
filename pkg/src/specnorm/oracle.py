"""Exhaustive Gray-code oracles for the discrete norms.

These walk every nonzero binary vector (or pair) once, flipping a single
coordinate per step, so the matrix-vector image is maintained with one column
add/subtract and one inner product per candidate.  They exist to certify the
fast witnesses on small instances; caps keep runtimes at desk scale.

The enumeration is embarrassingly parallel over contiguous Gray-code ranges:
each range recomputes its starting state directly, walks incrementally, and
range results merge by an associative max with the shared popcount-then-
smallest-bitset tie rule, so a partitioned run is identical to a sequential
one.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from functools import lru_cache

import numpy as np

from .errors import CapExceededError, OutOfRangeError, ZeroVectorError
from .linalg import as_matrix, as_vector
from .witness import BinaryVector, TieBest

DELTA_CAP = 24
RHO_REAL_CAP = 20
RHO_PAIR_CAP = 26
COSINE_CAP = 16


@dataclass(frozen=True)
class OracleResult:
    value: float
    argmax_xi: BinaryVector
    argmax_eta: BinaryVector | None
    enumerated: int
    # Walk-end diagnostic, not part of the result's identity: a partitioned
    # run walks shorter ranges than a sequential one, so the accumulated
    # rounding differs while value and argmax must not.
    drift: float = field(compare=False)
    path: str = "delta"


def _split_ranges(lo: int, hi: int, parts: int):
    total = hi - lo
    parts = max(1, min(int(parts), total))
    step, rem = divmod(total, parts)
    out = []
    start = lo
    for i in range(parts):
        size = step + (1 if i < rem else 0)
        out.append((start, start + size))
        start += size
    return out


@lru_cache(maxsize=8)
def _gray_tables(n: int):
    """Per-step flip index, sign, state code, and popcount for steps 1..2^n-1."""
    s = np.arange(1, 1 << n, dtype=np.uint64)
    codes = s ^ (s >> np.uint64(1))
    low = s & ~(s - np.uint64(1))
    idx = np.bitwise_count(low - np.uint64(1)).astype(np.int64)
    added = ((codes >> idx.astype(np.uint64)) & np.uint64(1)).astype(bool)
    sign = np.where(added, 1.0, -1.0)
    pops = np.bitwise_count(codes).astype(np.int64)
    return idx, sign, codes, pops


def _gray_state(step: int) -> int:
    return step ^ (step >> 1)


def _delta_range(a: np.ndarray, lo: int, hi: int, best: TieBest, real: bool) -> float:
    """Walk Gray steps [lo, hi) of the column enumeration; returns the drift."""
    m, n = a.shape
    col_re = [a[:, j].real.tolist() for j in range(n)]
    col_im = [a[:, j].imag.tolist() for j in range(n)]
    colsq = [float((np.abs(a[:, j]) ** 2).sum()) for j in range(n)]

    code = _gray_state(lo)
    xi0 = np.array([(code >> i) & 1 for i in range(n)], dtype=np.float64)
    w0 = a @ xi0
    wr = w0.real.tolist()
    wi = w0.imag.tolist()
    s2 = float(np.vdot(w0, w0).real)

    rng_m = range(m)
    pop = code.bit_count()
    if pop:
        best.offer(math.sqrt(max(s2, 0.0) / pop), (pop, code), code)

    for s in range(lo + 1, hi):
        low = s & -s
        j = low.bit_length() - 1
        code ^= low
        cr = col_re[j]
        cross = 0.0
        if real:
            if code & low:
                for i in rng_m:
                    v = wr[i]
                    c = cr[i]
                    cross += v * c
                    wr[i] = v + c
                s2 += 2.0 * cross + colsq[j]
            else:
                for i in rng_m:
                    v = wr[i]
                    c = cr[i]
                    cross += v * c
                    wr[i] = v - c
                s2 += colsq[j] - 2.0 * cross
        else:
            ci = col_im[j]
            if code & low:
                for i in rng_m:
                    vr = wr[i]
                    vi = wi[i]
                    ar = cr[i]
                    ai = ci[i]
                    cross += vr * ar + vi * ai
                    wr[i] = vr + ar
                    wi[i] = vi + ai
                s2 += 2.0 * cross + colsq[j]
            else:
                for i in rng_m:
                    vr = wr[i]
                    vi = wi[i]
                    ar = cr[i]
                    ai = ci[i]
                    cross += vr * ar + vi * ai
                    wr[i] = vr - ar
                    wi[i] = vi - ai
                s2 += colsq[j] - 2.0 * cross
        pop = code.bit_count()
        best.offer(math.sqrt(max(s2, 0.0) / pop), (pop, code), code)

    xi_end = np.array([(code >> i) & 1 for i in range(n)], dtype=np.float64)
    fresh = a @ xi_end
    w_end = np.array(wr, dtype=np.float64) + (
        1j * np.array(wi, dtype=np.float64) if not real else 0.0
    )
    return float(np.linalg.norm(w_end - fresh))


def exact_delta(a, cap: int = DELTA_CAP, parts: int = 1) -> OracleResult:
    """Exact max of ||A xi|| / ||xi|| over nonzero binary xi, by full walk."""
    a = as_matrix(a)
    n = a.shape[1]
    if n > cap:
        raise CapExceededError(f"n={n} exceeds the enumeration cap {cap}")
    real = bool(np.all(a.imag == 0.0))
    best = TieBest()
    drift = 0.0
    for lo, hi in _split_ranges(1, 1 << n, parts):
        local = TieBest()
        drift = max(drift, _delta_range(a, lo, hi, local, real))
        best.merge(local)
    code = best.payload
    xi = BinaryVector(n, int(code))
    value = float(np.linalg.norm(a @ xi.to_array(np.complex128)) / xi.norm())
    return OracleResult(
        value=value,
        argmax_xi=xi,
        argmax_eta=None,
        enumerated=(1 << n) - 1,
        drift=drift,
        path="delta",
    )


def _offer_rank1(w, code: int, pop_eta: int, n: int, best: TieBest) -> None:
    """Offer the exact best column sets for the (real) row image w of one eta.

    Any optimal column set is a uniform-sign sorted prefix; all prefixes whose
    value ties the per-state maximum are offered so that tie resolution
    matches the double-enumeration path exactly.
    """
    root_eta = math.sqrt(pop_eta)
    classes = []
    pos = [j for j in range(n) if w[j] > 0.0]
    if pos:
        pos.sort(key=lambda j: (-w[j], j))
        vals = []
        c = 0.0
        for k, j in enumerate(pos, start=1):
            c += w[j]
            vals.append(c / math.sqrt(k))
        classes.append((vals, pos))
    neg = [j for j in range(n) if w[j] < 0.0]
    if neg:
        neg.sort(key=lambda j: (w[j], j))
        vals = []
        c = 0.0
        for k, j in enumerate(neg, start=1):
            c -= w[j]
            vals.append(c / math.sqrt(k))
        classes.append((vals, neg))
    if not classes:
        # w == 0 identically: any xi gives 0; offer the canonical smallest.
        best.offer(0.0, (1, pop_eta, 1, code), (1, code))
        return
    vmax = max(max(vals) for vals, _ in classes)
    floor_keep = vmax - 2e-12 * vmax
    for vals, order in classes:
        bits = 0
        for pos_k, j in enumerate(order):
            bits |= 1 << j
            v = vals[pos_k]
            if v >= floor_keep:
                best.offer(
                    v / root_eta, (pos_k + 1, pop_eta, bits, code), (bits, code)
                )


def _rho_real_range(a: np.ndarray, lo: int, hi: int, best: TieBest) -> float:
    """Real path: walk eta over rows, solve the column side exactly per state."""
    m, n = a.shape
    rows = [a[i].real.tolist() for i in range(m)]

    code = _gray_state(lo)
    eta0 = np.array([(code >> i) & 1 for i in range(m)], dtype=np.float64)
    w = (eta0 @ a.real).tolist()
    rng_n = range(n)

    if code:
        _offer_rank1(w, code, code.bit_count(), n, best)
    for s in range(lo + 1, hi):
        low = s & -s
        i = low.bit_length() - 1
        code ^= low
        ri = rows[i]
        if code & low:
            for j in rng_n:
                w[j] += ri[j]
        else:
            for j in rng_n:
                w[j] -= ri[j]
        _offer_rank1(w, code, code.bit_count(), n, best)

    eta_end = np.array([(code >> i) & 1 for i in range(m)], dtype=np.float64)
    return float(np.linalg.norm(np.array(w) - eta_end @ a.real))


def _rho_pair_range(a: np.ndarray, inner_is_col: bool, lo: int, hi: int,
                    best: TieBest) -> float:
    """Pair path: walk the outer side, sweep the inner side by cumulative sums."""
    m, n = a.shape
    if inner_is_col:
        outer_dim, inner_dim = m, n
        outer_vecs = a  # row i of A updates w = A^T eta (no conjugation)
    else:
        outer_dim, inner_dim = n, m
        outer_vecs = a.T  # column j of A updates w = A xi

    idx, sgn, codes, pops = _gray_tables(inner_dim)
    sqrt_pops = np.sqrt(pops.astype(np.float64))

    code = _gray_state(lo)
    sel = np.array([(code >> i) & 1 for i in range(outer_dim)], dtype=np.complex128)
    w = outer_vecs.T @ sel

    def sweep(code_out: int) -> None:
        pop_out = code_out.bit_count()
        if pop_out == 0:
            return
        sums = np.cumsum(sgn * w[idx])
        vals = np.abs(sums) / (sqrt_pops * math.sqrt(pop_out))
        vmax = float(vals.max())
        if vmax == 0.0:
            ties = [0]
        else:
            ties = np.flatnonzero(vals >= vmax - 2e-12 * vmax).tolist()
        for t in ties:
            code_in = int(codes[t])
            pop_in = int(pops[t])
            if inner_is_col:
                key = (pop_in, pop_out, code_in, code_out)
                payload = (code_in, code_out)
            else:
                key = (pop_out, pop_in, code_out, code_in)
                payload = (code_out, code_in)
            best.offer(float(vals[t]), key, payload)

    sweep(code)
    for s in range(lo + 1, hi):
        low = s & -s
        i = low.bit_length() - 1
        code ^= low
        if code & low:
            w = w + outer_vecs[i]
        else:
            w = w - outer_vecs[i]
        sweep(code)

    sel_end = np.array([(code >> i) & 1 for i in range(outer_dim)], dtype=np.complex128)
    return float(np.linalg.norm(w - outer_vecs.T @ sel_end))


def exact_rho(a, cap_real: int = RHO_REAL_CAP, cap_pair: int = RHO_PAIR_CAP,
              parts: int = 1) -> OracleResult:
    """Exact max of |eta^T A xi| / (||xi|| ||eta||) over nonzero binary pairs.

    Real matrices with at most cap_real rows walk the row side and solve the
    column side exactly per state (sorted prefix scan); otherwise a double
    Gray-code walk over both sides runs under the pair cap m + n <= cap_pair.
    """
    a = as_matrix(a)
    m, n = a.shape
    real = bool(np.all(a.imag == 0.0))
    best = TieBest()
    drift = 0.0
    if real and m <= cap_real:
        for lo, hi in _split_ranges(1, 1 << m, parts):
            local = TieBest()
            drift = max(drift, _rho_real_range(a, lo, hi, local))
            best.merge(local)
        xi_bits, eta_code = best.payload
        xi = BinaryVector(n, int(xi_bits))
        eta = BinaryVector(m, int(eta_code))
        enumerated = (1 << m) - 1
        path = "rho_real"
    elif m + n <= cap_pair:
        inner_is_col = n <= m
        outer_dim = m if inner_is_col else n
        for lo, hi in _split_ranges(1, 1 << outer_dim, parts):
            local = TieBest()
            drift = max(drift, _rho_pair_range(a, inner_is_col, lo, hi, local))
            best.merge(local)
        xi_bits, eta_bits = best.payload
        xi = BinaryVector(n, int(xi_bits))
        eta = BinaryVector(m, int(eta_bits))
        enumerated = ((1 << m) - 1) * ((1 << n) - 1)
        path = "rho_pair"
    else:
        raise CapExceededError(
            f"shape {m}x{n} exceeds the oracle caps "
            f"(real rows <= {cap_real} or m+n <= {cap_pair})"
        )
    fresh = complex(
        eta.to_array(np.complex128) @ a @ xi.to_array(np.complex128)
    )
    value = abs(fresh) / (xi.norm() * eta.norm())
    return OracleResult(
        value=float(value),
        argmax_xi=xi,
        argmax_eta=eta,
        enumerated=enumerated,
        drift=drift,
        path=path,
    )


def exact_cosine(z, cap: int = COSINE_CAP) -> OracleResult:
    """Exact max of |<z, xi>| / (||z|| ||xi||) over nonzero binary xi."""
    z = as_vector(z)
    n = z.shape[0]
    if n > cap:
        raise CapExceededError(f"dim={n} exceeds the enumeration cap {cap}")
    if not np.abs(z).any():
        raise ZeroVectorError("exact_cosine is undefined for the zero vector")
    # Scale-invariant; keeps ||z||^2 in range.  Parts divided separately so a
    # subnormal peak cannot overflow the complex-division denominator.
    peak = float(np.abs(z).max())
    z = z.real / peak + 1j * (z.imag / peak)
    idx, sgn, codes, pops = _gray_tables(n)
    sums = np.cumsum(sgn * z[idx])
    vals = np.abs(sums) / (np.sqrt(pops.astype(np.float64)) * np.linalg.norm(z))
    vmax = float(vals.max())
    ties = np.flatnonzero(vals >= vmax - 2e-12 * vmax).tolist()
    best = TieBest()
    for t in ties:
        best.offer(float(vals[t]), (int(pops[t]), int(codes[t])), int(codes[t]))
    xi = BinaryVector(n, best.payload)
    drift = float(abs(sums[-1] - z[n - 1]))
    value = float(abs(np.sum(z[xi.indices()])) / (np.linalg.norm(z) * xi.norm()))
    return OracleResult(
        value=value,
        argmax_xi=xi,
        argmax_eta=None,
        enumerated=(1 << n) - 1,
        drift=drift,
        path="cosine",
    )
