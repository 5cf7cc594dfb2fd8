"""Norms, the two-singular-value solver, heights, and centering."""

import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from specnorm.errors import (
    NonConvergenceError,
    RankDeficientError,
    ZeroMatrixError,
    ZeroVectorError,
)
from specnorm.linalg import (
    centered_height_bound,
    col_norm,
    height,
    is_hermitian,
    log_diameter,
    mean_matrix,
    norm_profile,
    row_norm,
    top_two_singular,
    vector_height,
)

EPS_REL = 1e-9


def complex_entries(rng, m, n):
    return rng.standard_normal((m, n)) + 1j * rng.standard_normal((m, n))


def hermitian_eigs_closed_form(g):
    """Eigenvalues of a Hermitian matrix of order <= 3 from the characteristic
    polynomial in closed form (trigonometric method); no iterative solver."""
    k = g.shape[0]
    if k == 1:
        return np.array([g[0, 0].real])
    if k == 2:
        tr = g[0, 0].real + g[1, 1].real
        det = (g[0, 0] * g[1, 1] - g[0, 1] * g[1, 0]).real
        disc = math.sqrt(max(tr * tr / 4.0 - det, 0.0))
        return np.array([tr / 2.0 + disc, tr / 2.0 - disc])
    q = np.trace(g).real / 3.0
    b = g - q * np.eye(3)
    p = math.sqrt(max(np.trace(b @ b).real / 6.0, 0.0))
    if p == 0.0:
        return np.array([q, q, q])
    det_b = np.linalg.det(b).real
    r = min(1.0, max(-1.0, det_b / (2.0 * p**3)))
    phi = math.acos(r) / 3.0
    e1 = q + 2.0 * p * math.cos(phi)
    e3 = q + 2.0 * p * math.cos(phi + 2.0 * math.pi / 3.0)
    return np.array([e1, 3.0 * q - e1 - e3, e3])


def test_col_and_row_norm_examples():
    j34 = np.ones((3, 4))
    assert col_norm(j34) == 3.0
    assert row_norm(j34) == 4.0
    assert col_norm(np.eye(5)) == 1.0
    x = 1.0 / np.sqrt(np.arange(1.0, 5.0))
    inv4 = np.outer(x, x)
    expected = math.fsum(1.0 / math.sqrt(i) for i in range(1, 5))
    assert col_norm(inv4) == pytest.approx(expected, rel=1e-15)
    assert row_norm(inv4) == pytest.approx(expected, rel=1e-15)
    assert abs(expected - 2.7844571) < 5e-8


def test_row_norm_equals_col_norm_of_transpose():
    rng = np.random.default_rng(3)
    a = complex_entries(rng, 5, 7)
    assert row_norm(a) == col_norm(a.conj().T)


def test_top_two_singular_examples():
    p1, p2 = top_two_singular(np.diag([3.0, 1.0]))
    assert p1.value == pytest.approx(3.0, rel=1e-10)
    assert p2.value == pytest.approx(1.0, rel=1e-10)

    p1, p2 = top_two_singular(np.ones((4, 4)))
    assert p1.value == pytest.approx(4.0, rel=1e-10)
    assert abs(p2.value) < 1e-8

    k4 = np.ones((4, 4)) - np.eye(4)
    p1, p2 = top_two_singular(k4)
    assert p1.value == pytest.approx(3.0, rel=1e-10)
    assert p2.value == pytest.approx(1.0, rel=1e-8)


def test_top_two_residuals_certify():
    rng = np.random.default_rng(11)
    for _ in range(20):
        m = int(rng.integers(1, 9))
        n = int(rng.integers(1, 9))
        a = complex_entries(rng, m, n)
        p1, p2 = top_two_singular(a)
        assert p1.value >= p2.value >= 0.0
        for p in (p1, p2):
            assert abs(np.linalg.norm(p.right) - 1.0) <= 1e-12
            gap = np.linalg.norm(a @ p.right - p.value * p.left)
            assert gap <= p.residual + 1e-12
        assert p1.residual <= 1e-10 * max(p1.value, 1e-300) + 1e-13


def test_sigma1_matches_characteristic_polynomial():
    # Closed-form eigenvalues of the small-side Gram matrix, min(m, n) <= 3.
    rng = np.random.default_rng(29)
    for _ in range(60):
        k = int(rng.integers(1, 4))
        other = int(rng.integers(1, 13))
        m, n = (k, other) if rng.random() < 0.5 else (other, k)
        a = complex_entries(rng, m, n)
        if rng.random() < 0.5:
            a = a.real.astype(np.complex128)
        g = a @ a.conj().T if m <= n else a.conj().T @ a
        eigs = hermitian_eigs_closed_form(g)
        sigma1 = math.sqrt(max(float(eigs.max()), 0.0))
        p1, _ = top_two_singular(a)
        assert p1.value == pytest.approx(sigma1, rel=1e-8)


def test_zero_matrix_rejected():
    with pytest.raises(ZeroMatrixError):
        top_two_singular(np.zeros((3, 3)))
    with pytest.raises(ZeroMatrixError):
        height(np.zeros((2, 5)))
    # Pure norm evaluations accept the zero matrix.
    assert col_norm(np.zeros((2, 5))) == 0.0
    assert row_norm(np.zeros((2, 5))) == 0.0


def test_nonconvergence_carries_best_iterate():
    # An impossible tolerance cannot be certified even by the dense fallback.
    rng = np.random.default_rng(5)
    a = complex_entries(rng, 6, 6)
    with pytest.raises(NonConvergenceError) as info:
        top_two_singular(a, tol=1e-300)
    best = info.value.best
    assert best is not None
    sigma1 = np.linalg.svd(a, compute_uv=False)[0]
    assert best[0].value == pytest.approx(float(sigma1), rel=1e-8)


def test_height_examples():
    assert height(np.eye(6)) == pytest.approx(1.0, rel=1e-10)
    assert height(np.ones((3, 7))) == pytest.approx(1.0, rel=1e-10)
    x = 1.0 / np.sqrt(np.arange(1.0, 5.0))
    inv4 = np.outer(x, x)
    colsum = math.fsum(1.0 / math.sqrt(i) for i in range(1, 5))
    assert height(inv4) == pytest.approx(colsum / (25.0 / 12.0), rel=1e-9)
    assert height(inv4) == pytest.approx(1.3365, abs=5e-5)


def test_profile_invariants_on_corpus(full_corpus):
    for label, a in full_corpus:
        p = norm_profile(a)
        m, n = np.asarray(a).shape
        assert p.spectral**2 <= p.col_norm * p.row_norm * (1 + EPS_REL), label
        assert p.col_norm <= math.sqrt(m) * p.spectral * (1 + EPS_REL), label
        assert p.row_norm <= math.sqrt(n) * p.spectral * (1 + EPS_REL), label
        assert 1 - EPS_REL <= p.height <= (m * n) ** 0.25 * (1 + EPS_REL), label


def test_centering_never_beats_sigma2(full_corpus):
    for label, a in full_corpus:
        p1, p2 = top_two_singular(a)
        if p2.value <= 1e-9 * p1.value:
            continue
        centered = np.asarray(a, dtype=np.complex128) - mean_matrix(a)
        c1, _ = top_two_singular(centered)
        assert c1.value >= p2.value * (1 - 1e-8), label


def test_height_adjoint_and_scale_invariance():
    rng = np.random.default_rng(17)
    for _ in range(20):
        a = complex_entries(rng, int(rng.integers(1, 7)), int(rng.integers(1, 7)))
        h = height(a)
        assert height(a.conj().T) == pytest.approx(h, rel=1e-9)
        for c in (2.0, 0.125, 7.3):
            assert height(c * a) == pytest.approx(h, rel=1e-9)


def test_vector_height_examples():
    # All-ones: sqrt(n * 1) / sqrt(n) = 1, the balanced extreme.
    assert vector_height(np.ones(16)) == pytest.approx(1.0, rel=1e-12)
    e = np.zeros(9)
    e[4] = 1.0
    assert vector_height(e) == pytest.approx(1.0, rel=1e-12)
    z = np.array([2.0, 1.0, 1.0])
    assert vector_height(z) == pytest.approx(math.sqrt(8.0 / 6.0), rel=1e-12)
    assert vector_height(z) == pytest.approx(1.1547, abs=5e-5)
    with pytest.raises(ZeroVectorError):
        vector_height(np.zeros(3))


def test_log_diameter_examples():
    assert log_diameter(np.array([1.0, 0.0, 1.0])) == 1.0
    assert log_diameter(np.array([4.0, -1.0])) == 4.0
    z = np.array([1.0, 1.0 / math.sqrt(2.0), 1.0 / math.sqrt(3.0), 0.5])
    assert log_diameter(z) == pytest.approx(2.0, rel=1e-12)
    with pytest.raises(ZeroVectorError):
        log_diameter(np.zeros(4))


# Entry magnitudes are bounded away from the subnormal range so that the
# scale multiplication is support-preserving (no entry underflows to zero).
_entry = st.one_of(
    st.just(0.0),
    st.floats(min_value=1e-100, max_value=1e6),
    st.floats(min_value=-1e6, max_value=-1e-100),
)


@settings(max_examples=60, deadline=None)
@given(
    st.lists(_entry, min_size=1, max_size=24).filter(
        lambda v: any(x != 0.0 for x in v)
    ),
    st.floats(1e-3, 1e3),
    st.randoms(use_true_random=False),
)
def test_vector_stats_permutation_and_scale_invariant(coords, scale, pyrandom):
    z = np.array(coords, dtype=float)
    perm = list(range(len(coords)))
    pyrandom.shuffle(perm)
    shuffled = z[perm]
    assert vector_height(shuffled) == pytest.approx(vector_height(z), rel=1e-9)
    assert log_diameter(shuffled) == pytest.approx(log_diameter(z), rel=1e-9)
    assert vector_height(scale * z) == pytest.approx(vector_height(z), rel=1e-9)
    assert log_diameter(scale * z) == pytest.approx(log_diameter(z), rel=1e-9)


def test_mean_matrix_examples():
    j = np.ones((3, 3))
    assert np.array_equal(mean_matrix(j), j)
    zero = np.zeros((2, 4), dtype=complex)
    assert np.array_equal(mean_matrix(zero), zero)
    k4 = (np.ones((4, 4)) - np.eye(4)).astype(np.complex128)
    assert np.all(mean_matrix(k4) == 0.75)


def test_centered_height_bound_examples():
    k4 = np.ones((4, 4)) - np.eye(4)
    assert centered_height_bound(k4, sigma2=1.0) == pytest.approx(6.0, rel=1e-12)
    assert centered_height_bound(np.diag([2.0, 1.0]), sigma2=1.0) == pytest.approx(
        4.0, rel=1e-12
    )
    rank1 = np.outer([1.0, 2.0], [3.0, 1.0])
    _, p2 = top_two_singular(rank1)
    with pytest.raises(RankDeficientError):
        centered_height_bound(rank1, sigma2=p2.value, sigma1=3.0)


def test_centered_height_bound_dominates_centered_height(full_corpus):
    for label, a in full_corpus:
        p1, p2 = top_two_singular(a)
        if p2.value <= 1e-8 * p1.value:
            continue
        k = centered_height_bound(a, p2.value, p1.value)
        centered = np.asarray(a, dtype=np.complex128) - mean_matrix(a)
        assert height(centered) <= k * (1 + 1e-8), label


def test_is_hermitian_is_exact():
    k4 = np.ones((4, 4)) - np.eye(4)
    assert is_hermitian(k4)
    bumped = k4.copy()
    bumped[0, 1] += 1e-15
    assert not is_hermitian(bumped)
    assert is_hermitian(np.array([[1.0, 2.0 + 1.0j], [2.0 - 1.0j, 0.0]]))


def test_profile_deterministic_for_fixed_seed():
    rng = np.random.default_rng(23)
    a = complex_entries(rng, 7, 5)
    first = norm_profile(a, seed=123)
    second = norm_profile(a, seed=123)
    assert first == second
    other = norm_profile(a, seed=77)
    assert other.spectral == pytest.approx(first.spectral, rel=1e-9)
