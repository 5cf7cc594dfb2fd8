"""Certified binary witnesses for the discrete matrix norms.

The discrete norm of A maximizes ||A xi|| / ||xi|| over nonzero 0/1 vectors
xi; the discrete Rayleigh norm maximizes |eta^T A xi| / (||xi|| ||eta||) over
0/1 pairs.  Both are within logarithmic-in-height factors of the spectral
norm, and the gap is witnessed constructively:

  1. slice the top singular vector into a dyadic magnitude band with bounded
     logarithmic diameter (``dyadic_slice``),
  2. round the resulting dense vector to a small family of superlevel-set
     binary candidates (``binary_candidates``),
  3. keep the candidate with the best objective.

The returned witnesses carry both the certified floor actually proved by the
construction (``floor_sharp``) and the simpler headline floor (``floor_thm``):

    ratio >= sigma1 / (8*sqrt(2)*sqrt(ln h + 2))          (delta)
    value >= sigma1 / (32*sqrt(2)*(ln h + 4))             (rho)

with h the matrix height.  Logarithms are natural.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import (
    NotHermitianError,
    NotRealError,
    OutOfRangeError,
    ZeroMatrixError,
    ZeroVectorError,
)
from .linalg import (
    DEFAULT_MAX_ITER,
    DEFAULT_SEED,
    DEFAULT_TOL,
    NormProfile,
    as_matrix,
    as_vector,
    col_norm,
    is_hermitian,
    row_norm,
    _top_two,
)

TIE_REL_TOL = 1e-12

_SQRT2 = math.sqrt(2.0)


@dataclass(frozen=True)
class BinaryVector:
    """A 0/1 vector stored as a bitset; bit i of ``bits`` is coordinate i."""

    dim: int
    bits: int

    def __post_init__(self):
        if self.dim <= 0:
            raise OutOfRangeError("BinaryVector dim must be positive")
        if not 0 <= self.bits < (1 << self.dim):
            raise OutOfRangeError("BinaryVector bits out of range for dim")

    @classmethod
    def from_indices(cls, dim: int, indices) -> "BinaryVector":
        bits = 0
        for i in indices:
            if not 0 <= i < dim:
                raise OutOfRangeError(f"index {i} out of range for dim {dim}")
            bits |= 1 << i
        return cls(dim, bits)

    @classmethod
    def from_mask(cls, mask: np.ndarray) -> "BinaryVector":
        idx = np.flatnonzero(mask)
        bits = 0
        for i in idx:
            bits |= 1 << int(i)
        return cls(int(mask.shape[0]), bits)

    @property
    def popcount(self) -> int:
        return self.bits.bit_count()

    def norm(self) -> float:
        return math.sqrt(self.popcount)

    def indices(self):
        return [i for i in range(self.dim) if (self.bits >> i) & 1]

    def to_array(self, dtype=np.float64) -> np.ndarray:
        out = np.zeros(self.dim, dtype=dtype)
        for i in self.indices():
            out[i] = 1
        return out

    def bits_hex(self) -> str:
        """Lowercase hex of the bitset, padded to ceil(dim/4) digits."""
        width = (self.dim + 3) // 4
        return format(self.bits, f"0{width}x")

    def sort_key(self):
        """Deterministic tie-break key: fewer ones first, then smallest bitset."""
        return (self.popcount, self.bits)


class TieBest:
    """Running argmax with deterministic tie-breaking.

    Values within a relative tolerance are treated as tied and resolved by the
    smallest key (keys are tuples of ints, typically popcount-then-bitset).
    The fold is associative for exact ties, which is what partitioned oracle
    runs rely on.
    """

    def __init__(self, rel_tol: float = TIE_REL_TOL):
        self.rel_tol = rel_tol
        self.value = None
        self.key = None
        self.payload = None

    def offer(self, value: float, key, payload=None) -> None:
        if self.value is None:
            self.value, self.key, self.payload = value, key, payload
            return
        scale = max(abs(value), abs(self.value))
        if value > self.value + self.rel_tol * scale:
            self.value, self.key, self.payload = value, key, payload
        elif value >= self.value - self.rel_tol * scale and key < self.key:
            self.value, self.key, self.payload = value, key, payload

    def merge(self, other: "TieBest") -> None:
        if other.value is not None:
            self.offer(other.value, other.key, other.payload)


@dataclass(frozen=True)
class SliceResult:
    slice: np.ndarray
    base: float
    achieved_ratio: float
    log_diam: float


@dataclass(frozen=True)
class DeltaWitness:
    xi: BinaryVector
    ratio: float
    floor_thm: float
    floor_sharp: float
    profile: NormProfile
    provenance: str


@dataclass(frozen=True)
class RhoWitness:
    xi: BinaryVector
    eta: BinaryVector
    value: float
    floor_thm: float
    profile: NormProfile
    provenance: str


def delta_floor(sigma: float, h: float) -> float:
    """sigma / (8*sqrt(2)*sqrt(ln h + 2)); h is clamped at 1 from below."""
    h = max(h, 1.0)
    return sigma / (8.0 * math.sqrt(2.0 * (math.log(h) + 2.0)))


def delta_floor_sharp(sigma: float, k: float) -> float:
    """The floor actually certified by the slice-and-round construction."""
    k = max(k, 1.0)
    return sigma / (4.0 * math.sqrt(4.0 * math.log(12.0 * k * k) + 2.0))


def rho_floor(sigma: float, h: float) -> float:
    """sigma / (32*sqrt(2)*(ln h + 4)); h is clamped at 1 from below."""
    h = max(h, 1.0)
    return sigma / (32.0 * _SQRT2 * (math.log(h) + 4.0))


def _level_split(a: np.ndarray, x: np.ndarray, base: float) -> SliceResult:
    """Pick the magnitude band [base^k, base^(k+1)) of x best aligned with A."""
    x = as_vector(x)
    mags = np.abs(x)
    support = np.flatnonzero(mags > 0.0)
    if support.size == 0:
        raise ZeroVectorError("cannot slice the zero vector")
    nrm = float(np.linalg.norm(x))
    x = x / nrm
    mags = np.abs(x)

    levels = np.floor(np.log(mags[support]) / math.log(base)).astype(np.int64)
    best = None
    for k in sorted(set(levels.tolist())):
        idx = support[levels == k]
        sl = np.zeros_like(x)
        sl[idx] = x[idx]
        ratio = float(np.linalg.norm(a @ sl) / np.linalg.norm(sl))
        if best is None or ratio > best[0]:
            m = mags[idx]
            best = (ratio, sl, float(m.max() / m.min()))
    ratio, sl, ld = best
    return SliceResult(slice=sl, base=base, achieved_ratio=ratio, log_diam=ld)


def dyadic_slice(a, x, k: float) -> SliceResult:
    """Slice a near-maximizing unit vector x of ||A x|| into one magnitude band.

    k must be at least the height of A; the band base is 8*k**2 + 1.  The
    selected band s satisfies ||A s|| > ||A|| * ||s|| / 2 (up to the solver's
    residual) and has logarithmic diameter below the base.
    """
    a = as_matrix(a)
    if not a.any():
        raise ZeroMatrixError("cannot slice against the zero matrix")
    if not k >= 1.0 - 1e-9:
        raise OutOfRangeError("slice parameter must be >= 1")
    k = max(k, 1.0)
    return _level_split(a, x, 8.0 * k * k + 1.0)


def hermitian_slice(a, x, k: float) -> SliceResult:
    """Slice variant for Hermitian A with x near-maximizing |<Ax, x>|.

    k must be at least ||A||_inf / ||A||; the band base improves to 8*k + 1
    and the selected band s satisfies ||A s|| > ||A|| * ||s|| / 4.
    """
    a = as_matrix(a)
    if not a.any():
        raise ZeroMatrixError("cannot slice against the zero matrix")
    if not is_hermitian(a):
        raise NotHermitianError("hermitian_slice requires A = A* exactly")
    if not k >= 1.0 - 1e-9:
        raise OutOfRangeError("slice parameter must be >= 1")
    k = max(k, 1.0)
    return _level_split(a, x, 8.0 * k + 1.0)


def hermitian_rayleigh_vector(a, tol: float = DEFAULT_TOL,
                              max_iter: int = DEFAULT_MAX_ITER,
                              seed: int = DEFAULT_SEED) -> np.ndarray:
    """Unit x with |<Ax, x>| close to ||A|| for Hermitian A.

    The top right singular vector v of a Hermitian matrix can mix the two
    eigenspaces with eigenvalue +s and -s; since u = Av/s flips the sign of
    the negative component, v + u and v - u isolate the eigenspaces.  The best
    of {v, u, v+u, v-u} (normalized) is returned.
    """
    a = as_matrix(a)
    if not is_hermitian(a):
        raise NotHermitianError("hermitian_rayleigh_vector requires A = A* exactly")
    p1, _, _ = _top_two(a, tol, max_iter, seed)
    cands = [p1.right, p1.left]
    for s in (p1.right + p1.left, p1.right - p1.left):
        ns = np.linalg.norm(s)
        if ns > 1e-8:
            cands.append(s / ns)
    best = None
    for c in cands:
        val = abs(complex(np.vdot(c, a @ c)))
        if best is None or val > best[0]:
            best = (val, c)
    return best[1]


_PART_NAMES = ("re+", "re-", "im+", "im-")


def _tagged_candidates(z: np.ndarray):
    """Superlevel-set candidates of the four signed parts of z, with tags.

    For each part p the family holds every set {i : p_i >= t} with t a
    distinct nonzero value of p, plus the truncation set
    {i : p_i >= ||p||^2 / (2 ||p||_1)}.  Candidates never cover coordinates
    where the part vanishes, the family size is at most 4 * (dim + 1), and
    duplicates keep their first tag.
    """
    z = as_vector(z)
    parts = (
        np.maximum(z.real, 0.0),
        np.maximum(-z.real, 0.0),
        np.maximum(z.imag, 0.0),
        np.maximum(-z.imag, 0.0),
    )
    seen = {}
    order = []
    for name, p in zip(_PART_NAMES, parts):
        nz = p[p > 0.0]
        if nz.size == 0:
            continue
        values = np.unique(nz)[::-1]
        thresholds = [(float(t), str(rank)) for rank, t in enumerate(values)]
        # ||p||^2 / (2 ||p||_1), evaluated peak-normalized so the square
        # cannot underflow; a threshold that still rounds to zero would admit
        # vanishing coordinates, and the full support set is already present.
        peak = float(nz.max())
        q = nz / peak
        trunc = float(np.dot(q, q) / (2.0 * q.sum())) * peak
        if trunc > 0.0:
            thresholds.append((trunc, "trunc"))
        for t, label in thresholds:
            mask = p >= t
            bv = BinaryVector.from_mask(mask)
            if bv.bits not in seen:
                seen[bv.bits] = f"{name}:{label}"
                order.append(bv)
    return [(bv, seen[bv.bits]) for bv in order]


def binary_candidates(z) -> list[BinaryVector]:
    """The binary rounding family of z (see ``_tagged_candidates``)."""
    return [bv for bv, _ in _tagged_candidates(z)]


def _mask_matrix(cands, dim: int) -> np.ndarray:
    out = np.zeros((len(cands), dim))
    for r, (bv, _) in enumerate(cands):
        for i in bv.indices():
            out[r, i] = 1.0
    return out


def best_binary_cosine(z):
    """(xi, |<z, xi>| / (||z|| ||xi||)) maximized over the candidate family.

    For real z this equals the maximum over all nonzero binary vectors: any
    optimal set is uniform-sign and zero-free, hence a top-k superlevel set of
    the positive or negative part, and all of those are candidates.
    """
    z = as_vector(z)
    if not np.abs(z).any():
        raise ZeroVectorError("best_binary_cosine is undefined for the zero vector")
    # The cosine and the candidate family are invariant under positive
    # scaling; peak-normalizing keeps ||z||^2 away from under/overflow.
    # Parts are divided separately: complex division squares the denominator
    # internally, which overflows when the peak is subnormal.
    peak = float(np.abs(z).max())
    z = z.real / peak + 1j * (z.imag / peak)
    cands = _tagged_candidates(z)
    masks = _mask_matrix(cands, z.shape[0])
    sums = masks @ z
    pops = masks.sum(axis=1)
    vals = np.abs(sums) / (np.linalg.norm(z) * np.sqrt(pops))
    best = TieBest()
    for (bv, _), val in zip(cands, vals):
        best.offer(float(val), bv.sort_key(), bv)
    return best.payload, best.value


def exact_rank1_binary(w):
    """(xi, |<w, xi>| / ||xi||) maximized exactly over nonzero binary xi.

    w must be real (imaginary parts below 1e-12).  The optimum is found by a
    sorted prefix scan: any optimal set is uniform-sign, so it is a prefix of
    the positive entries sorted descending or of the negative entries sorted
    by magnitude descending.
    """
    w = as_vector(w)
    if np.abs(w.imag).max() > 1e-12:
        raise NotRealError("exact_rank1_binary requires a real vector")
    w = w.real.copy()
    if not np.abs(w).any():
        raise ZeroVectorError("exact_rank1_binary is undefined for the zero vector")
    n = w.shape[0]
    idx = np.arange(n)

    scans = []
    pos_order = np.lexsort((idx, -w))
    npos = int((w > 0.0).sum())
    if npos:
        order = pos_order[:npos]
        scans.append((order, np.cumsum(w[order])))
    neg_order = np.lexsort((idx, w))
    nneg = int((w < 0.0).sum())
    if nneg:
        order = neg_order[:nneg]
        scans.append((order, -np.cumsum(w[order])))

    best = TieBest()
    for order, prefix in scans:
        k = np.arange(1, order.size + 1)
        vals = prefix / np.sqrt(k)
        top = float(vals.max())
        floor_keep = top - 2.0 * TIE_REL_TOL * abs(top)
        for j in np.flatnonzero(vals >= floor_keep):
            bv = BinaryVector.from_indices(n, order[: j + 1].tolist())
            best.offer(float(vals[j]), bv.sort_key(), bv)
    return best.payload, best.value


def _assemble_profile(a, p1, iterations) -> NormProfile:
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


def _delta_family(a, tol, max_iter, seed):
    """Profile plus the tagged column-side candidate family of the pipeline."""
    a = as_matrix(a)
    p1, _, iterations = _top_two(a, tol, max_iter, seed)
    profile = _assemble_profile(a, p1, iterations)
    ah = a.conj().T
    sliced = dyadic_slice(ah, p1.left, profile.height)
    w = ah @ sliced.slice
    return profile, _tagged_candidates(w)


def delta_witness(a, tol: float = DEFAULT_TOL, max_iter: int = DEFAULT_MAX_ITER,
                  seed: int = DEFAULT_SEED) -> DeltaWitness:
    """Binary xi certifying ||A xi|| / ||xi|| >= sigma1 / (8*sqrt(2)*sqrt(ln h + 2)).

    Pipeline: slice the top left singular vector, push it through A*, round
    with the superlevel-set family, keep the best candidate.  The slightly
    stronger floor_sharp is certified by the same construction.
    """
    a = as_matrix(a)
    profile, cands = _delta_family(a, tol, max_iter, seed)
    best = TieBest()
    chunk = 1024  # bound the materialized mask matrix on wide inputs
    for lo in range(0, len(cands), chunk):
        part = cands[lo:lo + chunk]
        masks = _mask_matrix(part, a.shape[1])
        vals = np.linalg.norm(a @ masks.T, axis=0) / np.sqrt(masks.sum(axis=1))
        for (bv, tag), val in zip(part, vals):
            best.offer(float(val), bv.sort_key(), (bv, tag))
    xi, tag = best.payload
    h = profile.height
    return DeltaWitness(
        xi=xi,
        ratio=best.value,
        floor_thm=delta_floor(profile.spectral, h),
        floor_sharp=delta_floor_sharp(profile.spectral, h),
        profile=profile,
        provenance=tag,
    )


def rho_witness(a, tol: float = DEFAULT_TOL, max_iter: int = DEFAULT_MAX_ITER,
                seed: int = DEFAULT_SEED) -> RhoWitness:
    """Binary pair certifying |eta^T A xi| / (||xi|| ||eta||) >= floor_thm.

    xi ranges over the delta-pipeline candidate family; for each xi the row
    side is rounded from A @ xi (plus the exact rank-1 prefix optimum when
    A @ xi is real).
    """
    a = as_matrix(a)
    m, n = a.shape
    profile, xi_cands = _delta_family(a, tol, max_iter, seed)
    best = TieBest()
    for xi, xi_tag in xi_cands:
        v = a @ xi.to_array(np.complex128)
        if not np.abs(v).any():
            continue
        sx = xi.norm()
        eta_cands = list(_tagged_candidates(v))
        if np.abs(v.imag).max() <= 1e-12:
            eta, _ = exact_rank1_binary(v)
            eta_cands.append((eta, "rank1"))
        masks = _mask_matrix(eta_cands, m)
        sums = masks @ v
        vals = np.abs(sums) / (sx * np.sqrt(masks.sum(axis=1)))
        for (eta, eta_tag), val in zip(eta_cands, vals):
            key = (xi.popcount, eta.popcount, xi.bits, eta.bits)
            best.offer(float(val), key, (xi, eta, f"{xi_tag}|{eta_tag}"))
    xi, eta, tag = best.payload
    return RhoWitness(
        xi=xi,
        eta=eta,
        value=best.value,
        floor_thm=rho_floor(profile.spectral, profile.height),
        profile=profile,
        provenance=tag,
    )
