from itertools import combinations

import numpy as np
import pytest

from src.constructions import check_dimension_restriction, diagonal_gram_search, forced_basis, prescribed_diagonal
from src.errors import BadEntryError, DimensionMismatchError, InfeasibleEntriesError, TooLargeError
from src.linalg import Subspace, coordinate_subspace, orthonormal_basis, same_span
from src.linalg.sampling import random_subspace
from src.projections import coordinate_lift_projection, gram


def brute_force_feasible(W):
    """Independent check on the raw basis: some K makes W|_K invertible with orthogonal preimages"""
    B = W.basis
    n, k = B.shape
    for K in combinations(range(n), k):
        B_K = B[list(K), :]
        if abs(np.linalg.det(B_K)) < 1e-8 * max(1.0, np.abs(B).max()) ** k:
            continue
        X = B @ np.linalg.solve(B_K, np.eye(k))
        inner = X.T @ X
        if np.abs(inner - np.diag(np.diag(inner))).max() <= 1e-7 * max(1.0, np.abs(inner).max()):
            return True
    return False


def random_feasible_subspace(rng, n):
    """Coordinate-lift subspace: K random, perturbations orthogonal on the complement"""
    k = int(rng.integers(1, n + 1))
    K = sorted(rng.choice(n, size=k, replace=False).tolist())
    rest = [j for j in range(n) if j not in K]
    y = [np.zeros(n) for _ in K]
    for slot, j in zip(rng.permutation(k)[:len(rest)], rest):
        y[slot][j] = rng.uniform(0.5, 2.0)
    return coordinate_lift_projection(K, y)[0]


def test_search_on_coordinate_plane():
    result = diagonal_gram_search(coordinate_subspace(3, [0, 2]))
    assert result is not None
    K, P = result
    assert K == [0, 2]
    np.testing.assert_allclose(P.matrix, np.diag([1.0, 0.0, 1.0]), atol=1e-14)
    assert gram(P).is_diagonal()


def test_search_on_sum_zero_plane_is_infeasible(plane_sum0):
    Q = orthonormal_basis(plane_sum0)
    for K in combinations(range(3), 2):
        B = forced_basis(Q, K)
        assert B is not None
        assert abs(B[:, 0] @ B[:, 1]) > 0.5
    assert diagonal_gram_search(plane_sum0) is None
    assert not brute_force_feasible(plane_sum0)


def test_search_recovers_coordinate_lift_entries():
    y = [np.array([0.0, 0.0, 1.0, 0.0]), np.array([0.0, 0.0, 0.0, 2.0])]
    W, _ = coordinate_lift_projection([0, 1], y)
    K, P = diagonal_gram_search(W)
    assert K == [0, 1]
    np.testing.assert_allclose(gram(P).diagonal(), [2.0, 5.0, 0.0, 0.0], atol=1e-10)


def test_search_refuses_large_dimension():
    with pytest.raises(TooLargeError):
        diagonal_gram_search(coordinate_subspace(20, [0]))
    with pytest.raises(TooLargeError):
        diagonal_gram_search(coordinate_subspace(5, [0]), max_dim=4)


def test_search_agrees_with_brute_force(rng):
    feasible_seen = 0
    for trial in range(200):
        n = int(rng.integers(2, 9))
        if trial % 2:
            W = random_feasible_subspace(rng, n)
        else:
            W = random_subspace(rng, n, int(rng.integers(1, n + 1)))
        result = diagonal_gram_search(W)
        assert (result is not None) == brute_force_feasible(W)
        if result is None:
            continue
        feasible_seen += 1
        K, P = result
        G = gram(P).matrix
        assert np.abs(G - np.diag(np.diag(G))).max() < 1e-9
        assert same_span(P.range, W)
        k = W.dim
        if 2 * k > n:
            assert check_dimension_restriction(W, K) >= 2 * k - n
    assert feasible_seen >= 100


def test_dimension_restriction_counts_basis_vectors():
    s = 1.0 / np.sqrt(2.0)
    W = Subspace(np.array([[1.0, 0.0, 0.0], [0.0, 1.0, 0.0], [0.0, 0.0, s], [0.0, 0.0, s]]))
    K, _ = diagonal_gram_search(W)
    assert check_dimension_restriction(W, K) == 2
    full = Subspace(np.eye(4))
    assert check_dimension_restriction(full, [0, 1, 2, 3]) == 4
    with pytest.raises(DimensionMismatchError):
        check_dimension_restriction(W, [0, 1])


def test_prescribed_diagonal_small_rank():
    W, P = prescribed_diagonal(4, [0, 1], [2.0, 5.0])
    G = gram(P)
    assert G.is_diagonal()
    np.testing.assert_allclose(G.diagonal(), [2.0, 5.0, 0.0, 0.0], atol=1e-12)
    assert same_span(P.range, W)


def test_prescribed_diagonal_all_ones_is_orthogonal_projector():
    _, P = prescribed_diagonal(5, [1, 3], [1.0, 1.0])
    expected = np.zeros((5, 5))
    expected[1, 1] = expected[3, 3] = 1.0
    np.testing.assert_allclose(P.matrix, expected)


def test_prescribed_diagonal_full_index_set():
    _, P = prescribed_diagonal(3, [0, 1, 2], [1.0, 1.0, 1.0])
    np.testing.assert_allclose(P.matrix, np.eye(3))
    with pytest.raises(InfeasibleEntriesError):
        prescribed_diagonal(3, [0, 1, 2], [1.0, 2.0, 1.0])


def test_prescribed_diagonal_large_rank_with_adjustable_set():
    _, P = prescribed_diagonal(5, [0, 1, 2, 3], [1.0, 4.0, 1.0, 1.0], adjustable=[1])
    np.testing.assert_allclose(gram(P).diagonal(), [1.0, 4.0, 1.0, 1.0, 0.0], atol=1e-12)
    _, P = prescribed_diagonal(5, [0, 1, 2], [3.0, 1.0, 2.0])
    np.testing.assert_allclose(gram(P).diagonal(), [3.0, 1.0, 2.0, 0.0, 0.0], atol=1e-12)


def test_prescribed_diagonal_rejections():
    with pytest.raises(BadEntryError):
        prescribed_diagonal(4, [0, 1], [0.5, 2.0])
    with pytest.raises(InfeasibleEntriesError):
        prescribed_diagonal(5, [0, 1, 2, 3], [2.0, 2.0, 1.0, 1.0])
    with pytest.raises(InfeasibleEntriesError):
        prescribed_diagonal(5, [0, 1, 2, 3], [2.0, 1.0, 1.0, 1.0], adjustable=[3])
    with pytest.raises(DimensionMismatchError):
        prescribed_diagonal(5, [0, 1, 2, 3], [1.0, 1.0, 1.0, 1.0], adjustable=[0, 1])
    with pytest.raises(DimensionMismatchError):
        prescribed_diagonal(4, [0, 1], [2.0])
    with pytest.raises(DimensionMismatchError):
        prescribed_diagonal(4, [0, 4], [2.0, 2.0])


def test_prescribed_diagonal_random_requests(rng):
    for _ in range(100):
        n = int(rng.integers(2, 11))
        k = int(rng.integers(1, n + 1))
        K = sorted(rng.choice(n, size=k, replace=False).tolist())
        a = rng.uniform(1.0, 6.0, size=k)
        if 2 * k > n:
            keep = rng.choice(k, size=n - k, replace=False)
            mask = np.ones(k, dtype=bool)
            mask[keep] = False
            a[mask] = 1.0
        W, P = prescribed_diagonal(n, K, a)
        expected = np.zeros(n)
        expected[K] = a
        G = gram(P)
        assert np.abs(G.diagonal() - expected).max() < 1e-10
        assert G.is_diagonal()
        if 2 * k > n:
            assert check_dimension_restriction(W, K) >= 2 * k - n
