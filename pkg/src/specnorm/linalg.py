"""Core matrix and vector quantities: induced norms, heights, top singular pairs.

All matrices are dense complex arrays (real input is widened).  The height of a
nonzero matrix is

    h(A) = sqrt(||A||_1 * ||A||_inf) / ||A||,

with ||A|| the spectral norm; it measures how far the max-column-sum and
max-row-sum norms can overshoot the spectral norm and always lies in
[1, (m*n)**(1/4)].  The analogous vector height is
sqrt(||z||_1 * ||z||_inf) / ||z||_2.

Logarithms are natural throughout the package.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import (
    NonConvergenceError,
    OutOfRangeError,
    RankDeficientError,
    ZeroMatrixError,
    ZeroVectorError,
)

DEFAULT_TOL = 1e-10
DEFAULT_MAX_ITER = 10_000
DEFAULT_SEED = 0x5EED


def as_matrix(a) -> np.ndarray:
    """Validate and return a 2-D complex128 array with finite entries."""
    m = np.asarray(a, dtype=np.complex128)
    if m.ndim != 2 or m.size == 0:
        raise OutOfRangeError("expected a nonempty 2-D matrix")
    if not np.all(np.isfinite(m)):
        raise OutOfRangeError("matrix entries must be finite")
    return m


def as_vector(z) -> np.ndarray:
    """Validate and return a 1-D complex128 array with finite entries."""
    v = np.asarray(z, dtype=np.complex128).reshape(-1)
    if v.size == 0:
        raise OutOfRangeError("expected a nonempty vector")
    if not np.all(np.isfinite(v)):
        raise OutOfRangeError("vector entries must be finite")
    return v


def is_hermitian(a) -> bool:
    a = as_matrix(a)
    return a.shape[0] == a.shape[1] and np.array_equal(a, a.conj().T)


def col_norm(a) -> float:
    """Maximum column sum of |entries| (the induced 1-norm)."""
    a = as_matrix(a)
    return float(np.abs(a).sum(axis=0).max())


def row_norm(a) -> float:
    """Maximum row sum of |entries| (the induced infinity-norm)."""
    a = as_matrix(a)
    return float(np.abs(a).sum(axis=1).max())


def norm1(z) -> float:
    return float(np.abs(as_vector(z)).sum())


def norm2(z) -> float:
    return float(np.linalg.norm(as_vector(z)))


def norm_inf(z) -> float:
    return float(np.abs(as_vector(z)).max())


def vector_height(z) -> float:
    """sqrt(||z||_1 * ||z||_inf) / ||z||_2 for a nonzero vector; always >= 1."""
    v = as_vector(z)
    mags = np.abs(v)
    if not mags.any():
        raise ZeroVectorError("vector height is undefined for the zero vector")
    # Scale-invariant; normalizing by the peak keeps the squares inside the
    # binary64 range for subnormal or huge inputs.
    q = mags / mags.max()
    return float(np.sqrt(q.sum()) / np.linalg.norm(q))


def log_diameter(z) -> float:
    """max |z_i| / min nonzero |z_i| over the support of z."""
    v = as_vector(z)
    mags = np.abs(v)
    nz = mags[mags > 0.0]
    if nz.size == 0:
        raise ZeroVectorError("logarithmic diameter is undefined for the zero vector")
    # Ratios past the binary64 range saturate to inf, which downstream floor
    # formulas treat as a vacuous (zero) lower bound.
    with np.errstate(over="ignore"):
        return float(nz.max() / nz.min())


@dataclass(frozen=True)
class SingularPair:
    """A certified singular triple (value, left, right).

    residual is a computed upper bound on ||A @ right - value * left||; for a
    converged pair it also bounds ||A* @ left - value * right||.  When
    min(m, n) == 1 the second pair returned by :func:`top_two_singular` is
    structural (the value 0 is exact but there is no second right direction),
    and its residual reports ||A @ right|| honestly instead of certifying a
    direction.
    """

    value: float
    left: np.ndarray
    right: np.ndarray
    residual: float


@dataclass(frozen=True)
class NormProfile:
    col_norm: float
    row_norm: float
    spectral: float
    spectral_residual: float
    iterations: int
    height: float


def _orthonormal_filler(u: np.ndarray) -> np.ndarray:
    """Deterministic unit vector orthogonal to unit u (dim >= 2)."""
    j = int(np.argmin(np.abs(u)))
    e = np.zeros_like(u)
    e[j] = 1.0
    w = e - u * np.vdot(u, e)
    nw = np.linalg.norm(w)
    if nw < 0.5:  # cannot happen for argmin component of a unit vector
        raise AssertionError("filler construction failed")
    return w / nw


def _top_two(a, tol, max_iter, seed):
    """Internal solver; returns (pair1, pair2, iterations)."""
    a = as_matrix(a)
    if not a.any():
        raise ZeroMatrixError("top_two_singular is undefined for the zero matrix")
    # Work on a peak-normalized copy so Gram entries stay inside the binary64
    # range for subnormal or huge inputs; values and residuals scale back.
    # Parts are divided separately: complex division squares the denominator
    # internally, which overflows when scale is subnormal.
    scale = float(np.abs(a).max())
    a = a.real / scale + 1j * (a.imag / scale)
    m, n = a.shape

    # Work on the smaller Gram side; for m < n the roles of left/right swap.
    swapped = m < n
    g = a.conj().T if swapped else a
    rows, k = g.shape

    if k == 1:
        col = g[:, 0]
        s1 = float(np.linalg.norm(col))
        r1 = np.ones(1, dtype=np.complex128)
        u1 = col / s1
        p1 = SingularPair(value=s1 * scale, left=u1, right=r1, residual=0.0)
        if rows >= 2:
            u2 = _orthonormal_filler(u1)
            # The padded zero pair keeps `right` on the one-dimensional side,
            # where no unit vector annihilates A, so the certificate covers
            # the full column norm unless the roles swap below.
            res2 = float(np.linalg.norm(g.conj().T @ u2)) if swapped else s1
        else:
            u2 = u1.copy()
            res2 = s1
        p2 = SingularPair(value=0.0, left=u2, right=r1.copy(), residual=res2 * scale)
        if swapped:
            p1 = SingularPair(p1.value, p1.right, p1.left, p1.residual)
            p2 = SingularPair(p2.value, p2.right, p2.left, p2.residual)
        return p1, p2, 0

    gh = g.conj().T

    def ritz(v):
        """Rayleigh-Ritz on span(v); returns rotated basis and Ritz values."""
        z = gh @ (g @ v)
        t2 = v.conj().T @ z
        t2 = (t2 + t2.conj().T) / 2.0
        vals, vecs = np.linalg.eigh(t2)
        order = np.argsort(vals)[::-1]
        return v @ vecs[:, order], np.maximum(vals[order], 0.0)

    def certify(v):
        """Singular values, left vectors and residuals for the two columns of v."""
        gv = g @ v
        sig = np.linalg.norm(gv, axis=0)
        us = np.empty((rows, 2), dtype=np.complex128)
        errs = np.empty(2)
        for i in range(2):
            if sig[i] > 0.0:
                us[:, i] = gv[:, i] / sig[i]
            elif i == 1:
                us[:, i] = _orthonormal_filler(us[:, 0])
            else:
                us[:, 0] = 0.0
                us[0, 0] = 1.0
            errs[i] = np.linalg.norm(gh @ us[:, i] - sig[i] * v[:, i])
        return sig, us, errs

    rng = np.random.default_rng(seed)
    v = rng.standard_normal((k, 2)) + 1j * rng.standard_normal((k, 2))
    v, _ = np.linalg.qr(v)

    check_every = 10
    history = []
    iterations = 0
    converged = False
    for it in range(1, max_iter + 1):
        iterations = it
        z = gh @ (g @ v)
        v, _ = np.linalg.qr(z)
        if it % check_every == 0 or it == max_iter:
            rv, _ = ritz(v)
            sig, us, errs = certify(rv)
            err = float(errs.max())
            history.append(err)
            if err <= tol * max(sig[0], np.finfo(float).tiny):
                v = rv
                converged = True
                break
            # Stall detection: no meaningful progress across 30 checks.
            if len(history) >= 30 and history[-1] > 0.5 * history[-30]:
                break

    if not converged:
        # Dense Hermitian fallback on the small Gram matrix; residuals below
        # still certify whatever this produces.
        h = gh @ g
        h = (h + h.conj().T) / 2.0
        vals, vecs = np.linalg.eigh(h)
        v = vecs[:, np.argsort(vals)[::-1][:2]]

    sig, us, errs = certify(v)
    order = np.argsort(sig)[::-1]
    pairs = []
    for i in order:
        pairs.append(
            SingularPair(
                value=float(sig[i]) * scale,
                left=us[:, i].copy(),
                right=v[:, i].copy(),
                residual=float(errs[i]) * scale,
            )
        )
    p1, p2 = pairs
    if not converged and p1.residual > tol * max(p1.value, np.finfo(float).tiny):
        raise NonConvergenceError(
            f"residual {p1.residual:.3e} above tol*sigma1 after {iterations} iterations",
            best=(p1, p2),
        )
    if swapped:
        p1 = SingularPair(p1.value, p1.right, p1.left, p1.residual)
        p2 = SingularPair(p2.value, p2.right, p2.left, p2.residual)
    return p1, p2, iterations


def top_two_singular(a, tol: float = DEFAULT_TOL, max_iter: int = DEFAULT_MAX_ITER,
                     seed: int = DEFAULT_SEED):
    """Two largest singular values of A with unit singular vectors.

    Block-2 subspace iteration with re-orthonormalization on the Gram matrix
    of the smaller side, Rayleigh-Ritz extraction, and residual-based
    convergence; falls back to a dense Hermitian eigensolve of the Gram matrix
    if iteration stalls.  Residuals certify the result whichever path ran.
    Deterministic for a fixed seed.
    """
    p1, p2, _ = _top_two(a, tol, max_iter, seed)
    return p1, p2


def height(a, profile: NormProfile | None = None) -> float:
    """Matrix height sqrt(||A||_1 ||A||_inf) / ||A||; requires A != 0."""
    a = as_matrix(a)
    if profile is not None:
        return float(np.sqrt(profile.col_norm * profile.row_norm) / profile.spectral)
    if not a.any():
        raise ZeroMatrixError("height is undefined for the zero matrix")
    p1, _, _ = _top_two(a, DEFAULT_TOL, DEFAULT_MAX_ITER, DEFAULT_SEED)
    return float(np.sqrt(col_norm(a) * row_norm(a)) / p1.value)


def norm_profile(a, tol: float = DEFAULT_TOL, max_iter: int = DEFAULT_MAX_ITER,
                 seed: int = DEFAULT_SEED) -> NormProfile:
    """Column/row/spectral norms plus height, with the solver's certificate."""
    a = as_matrix(a)
    p1, _, iterations = _top_two(a, tol, max_iter, seed)
    c = col_norm(a)
    r = row_norm(a)
    return NormProfile(
        col_norm=c,
        row_norm=r,
        spectral=p1.value,
        spectral_residual=p1.residual,
        iterations=iterations,
        height=float(np.sqrt(c * r) / p1.value),
    )


def mean_matrix(a) -> np.ndarray:
    """Constant matrix whose entries all equal the mean entry of A."""
    a = as_matrix(a)
    s = a.sum()
    # Divide parts separately: real division is correctly rounded, complex
    # division is not, and integer-entry matrices should center exactly.
    mean = complex(s.real / a.size, s.imag / a.size)
    return np.full_like(a, mean)


def centered_height_bound(a, sigma2: float, sigma1: float | None = None,
                          tol: float = 1e-12) -> float:
    """Upper bound 2*sqrt(||A||_1 ||A||_inf) / sigma2 on the height of A - mean(A).

    sigma2 must be the second singular value of A; rank >= 2 is required.
    """
    a = as_matrix(a)
    if sigma2 <= 0.0 or (sigma1 is not None and sigma2 <= tol * sigma1):
        raise RankDeficientError("second singular value is numerically zero")
    return float(2.0 * np.sqrt(col_norm(a) * row_norm(a)) / sigma2)
