import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from qspeedlab import linalg
from qspeedlab.errors import DimensionMismatch, NoConvergence, NotHermitian, NotPSD

from oracles import (
    partial_trace_loops,
    partial_transpose_loops,
    random_density,
    random_hermitian,
    trace_norm,
)

seeds = st.integers(0, 2**32 - 1)
dims = st.sampled_from([(2, 2), (2, 3), (3, 2), (1, 4), (4, 4)])


@given(seeds, st.integers(1, 16))
def test_eigensolver_matches_lapack(seed, d):
    rng = np.random.default_rng(seed)
    h = random_hermitian(rng, d)
    w, v = linalg.eig_hermitian(h)
    assert np.allclose(w, np.linalg.eigvalsh(h), atol=1e-10 * max(1, np.abs(h).max()))
    assert np.allclose(v.conj().T @ v, np.eye(d), atol=1e-10)
    assert np.allclose(v @ np.diag(w) @ v.conj().T, h, atol=1e-9)


def test_eigensolver_batched_and_sorted(rng):
    stack = np.array([random_hermitian(rng, 4) for _ in range(7)])
    w, v = linalg.eig_hermitian(stack)
    assert w.shape == (7, 4) and v.shape == (7, 4, 4)
    assert np.all(np.diff(w, axis=-1) >= 0)
    for k in range(7):
        assert np.allclose(w[k], np.linalg.eigvalsh(stack[k]), atol=1e-10)


def test_eigensolver_degenerate_and_diagonal():
    w, v = linalg.eig_hermitian(np.eye(4))
    assert np.allclose(w, 1) and np.allclose(v, np.eye(4))
    w = linalg.eigvals_hermitian(np.diag([3.0, -1.0, 3.0, 0.0]))
    assert np.allclose(w, [-1, 0, 3, 3])


def test_eigensolver_rejects_non_hermitian():
    with pytest.raises(NotHermitian):
        linalg.eig_hermitian(np.array([[0, 1], [0, 0]], complex))


def test_eigensolver_sweep_cap(rng):
    with linalg.override_tolerances(jacobi_max_sweeps=1, jacobi_offdiag=1e-30):
        with pytest.raises(NoConvergence):
            linalg.eig_hermitian(random_hermitian(rng, 8))
    assert linalg.TOL.jacobi_max_sweeps == 100


@given(seeds, st.sampled_from([1, 2, np.inf]))
def test_schatten_norms_match_singular_values(seed, p):
    rng = np.random.default_rng(seed)
    m = rng.normal(size=(4, 4)) + 1j * rng.normal(size=(4, 4))
    s = np.linalg.svd(m, compute_uv=False)
    expected = {1: s.sum(), 2: np.sqrt((s**2).sum()), np.inf: s.max()}[p]
    assert linalg.schatten_norm(m, p) == pytest.approx(expected, rel=1e-10)


@given(seeds)
def test_schatten_norm_ordering_and_triangle(seed):
    rng = np.random.default_rng(seed)
    a = random_hermitian(rng)
    b = random_hermitian(rng)
    n1, n2, ninf = (linalg.schatten_norm(a, p) for p in (1, 2, np.inf))
    assert ninf <= n2 + 1e-12 <= n1 + 2e-12
    for p in (1, 2, np.inf):
        assert linalg.schatten_norm(a + b, p) <= linalg.schatten_norm(a, p) + linalg.schatten_norm(b, p) + 1e-10


def test_schatten_rejects_other_p():
    with pytest.raises(ValueError):
        linalg.schatten_norm(np.eye(2), 3)


def test_schatten_stack_returns_array(rng):
    stack = np.array([random_hermitian(rng) for _ in range(3)])
    out = linalg.schatten_norm(stack, 1)
    assert out.shape == (3,)
    assert np.allclose(out, [trace_norm(m) for m in stack])


@given(seeds, dims)
def test_partial_transpose_matches_index_loops(seed, d):
    rng = np.random.default_rng(seed)
    d_a, d_b = d
    m = rng.normal(size=(d_a * d_b,) * 2) + 1j * rng.normal(size=(d_a * d_b,) * 2)
    assert np.allclose(linalg.partial_transpose(m, d_a, d_b), partial_transpose_loops(m, d_a, d_b))


@given(seeds)
def test_partial_transpose_properties(seed):
    rng = np.random.default_rng(seed)
    rho = random_density(rng)
    pt = linalg.partial_transpose(rho)
    assert linalg.is_hermitian(pt)
    assert np.trace(pt) == pytest.approx(1.0)
    assert np.allclose(linalg.partial_transpose(pt), rho)
    # transposing A is the full transpose of transposing B
    assert np.allclose(linalg.partial_transpose(rho, subsystem="A"), pt.T)


def test_partial_transpose_of_product_is_psd(rng):
    a = random_density(rng, 2)
    b = random_density(rng, 2)
    assert linalg.is_psd(linalg.partial_transpose(np.kron(a, b)))


def test_partial_transpose_bell_state_spectrum():
    v = np.array([1, 0, 0, 1]) / np.sqrt(2)
    w = np.linalg.eigvalsh(linalg.partial_transpose(np.outer(v, v)))
    assert np.allclose(w, [-0.5, 0.5, 0.5, 0.5])


@given(seeds, dims)
def test_partial_trace_matches_index_loops(seed, d):
    rng = np.random.default_rng(seed)
    d_a, d_b = d
    rho = random_density(rng, d_a * d_b)
    for traced in "AB":
        assert np.allclose(linalg.partial_trace(rho, d_a, d_b, traced), partial_trace_loops(rho, d_a, d_b, traced))


def test_partial_trace_of_product(rng):
    a = random_density(rng, 2)
    b = random_density(rng, 3)
    assert np.allclose(linalg.partial_trace(np.kron(a, b), 2, 3, "B"), a)
    assert np.allclose(linalg.partial_trace(np.kron(a, b), 2, 3, "A"), b)


def test_dimension_mismatch():
    with pytest.raises(DimensionMismatch):
        linalg.partial_transpose(np.eye(5), 2, 2)
    with pytest.raises(DimensionMismatch):
        linalg.partial_trace(np.eye(4), 3, 2)
    with pytest.raises(DimensionMismatch):
        linalg.schatten_norm(np.ones((2, 3)), 1)


@given(seeds, st.integers(1, 4))
def test_matrix_log_on_support(seed, rank):
    rng = np.random.default_rng(seed)
    rho = random_density(rng, 4, rank)
    log, proj = linalg.matrix_log_on_support(rho)
    w, v = np.linalg.eigh(rho)
    keep = w > 1e-12
    expected = (v[:, keep] * np.log(w[keep])) @ v[:, keep].conj().T
    assert np.allclose(log, expected, atol=1e-8)
    assert np.allclose(proj, v[:, keep] @ v[:, keep].conj().T, atol=1e-8)
    assert np.trace(proj).real == pytest.approx(rank)


def test_matrix_log_rejects_negative():
    with pytest.raises(NotPSD):
        linalg.matrix_log_on_support(np.diag([1.0, -0.1]))


def test_tolerance_override_restores():
    with linalg.override_tolerances(herm=1e-3):
        assert linalg.is_hermitian(np.array([[0, 1e-4], [0, 0]]))
    assert not linalg.is_hermitian(np.array([[0, 1e-4], [0, 0]]))
    with pytest.raises(AttributeError):
        with linalg.override_tolerances(nonsense=1):
            pass
