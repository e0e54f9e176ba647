import itertools
import random

import pytest
from hypothesis import given, settings, strategies as st

from hodgelab import hodgering as hr
from hodgelab.intlattice import (
    IntMatrix,
    NoIntegerSolution,
    NotUnimodular,
    as_matrix,
    hnf,
    hnf_with_transform,
    inverse_unimodular,
    kernel_basis,
    kernel_mod,
    lattice_equal,
    mod_span,
    rank,
    saturate,
    snf,
    solve_exact,
    span_equal_mod,
)


def _unimodular_2x2(bound):
    r = range(-bound, bound + 1)
    for a, b, c, d in itertools.product(r, repeat=4):
        if a * d - b * c in (1, -1):
            yield IntMatrix([[a, b], [c, d]])


def _is_canonical_hnf(H):
    """Lower echelon, positive pivots, entries left of each pivot in [0, pivot)."""
    rows, cols = H.shape
    col = 0
    for i in range(rows):
        if col < cols and H[i, col] != 0:
            if H[i, col] <= 0 or any(H[i, j] != 0 for j in range(col + 1, cols)):
                return False
            if any(not 0 <= H[i, j] < H[i, col] for j in range(col)):
                return False
            col += 1
        elif any(H[i, j] != 0 for j in range(col, cols)):
            return False
    return True


def brute_force_hnf(M, bound=3):
    hits = {M @ U for U in _unimodular_2x2(bound)}
    canon = [H for H in hits if _is_canonical_hnf(H)]
    assert len(canon) == 1
    return canon[0]


def test_hnf_examples():
    assert hnf(IntMatrix.identity(3)) == IntMatrix.identity(3)
    assert hnf(IntMatrix.zeros(2, 3)) == IntMatrix.zeros(2, 3)


def test_hnf_two_by_two_against_oracle():
    # The column span of [[2,1],[0,1]] has index 2 in Z^2, so its canonical
    # form must keep determinant 2.
    M = IntMatrix([[2, 1], [0, 1]])
    assert hnf(M) == brute_force_hnf(M) == IntMatrix([[1, 0], [1, 2]])


@pytest.mark.parametrize("seed", range(20))
def test_hnf_random_2x2_against_oracle(seed):
    rng = random.Random(seed)
    M = IntMatrix([[0, 0], [0, 0]])
    while M.det() == 0:
        M = IntMatrix([[rng.randint(-3, 3) for _ in range(2)] for _ in range(2)])
    assert hnf(M) == brute_force_hnf(M, bound=4 if abs(M.det()) < 5 else 6)


matrices = st.integers(1, 4).flatmap(
    lambda r: st.integers(1, 4).flatmap(
        lambda c: st.lists(st.lists(st.integers(-6, 6), min_size=c, max_size=c), min_size=r, max_size=r)
    )
).map(IntMatrix)


@settings(max_examples=100, deadline=None)
@given(matrices)
def test_hnf_properties(M):
    H, U = hnf_with_transform(M)
    assert M @ U == H
    assert abs(U.det()) == 1
    assert _is_canonical_hnf(H)
    assert lattice_equal(M, H)


@settings(max_examples=100, deadline=None)
@given(matrices)
def test_snf_properties(M):
    res = snf(M)
    assert res.U @ M @ res.V == res.S
    assert abs(res.U.det()) == 1 and abs(res.V.det()) == 1
    f = res.factors
    assert all(x >= 0 for x in f)
    assert all(f[i + 1] % f[i] == 0 for i in range(len(f) - 1) if f[i])
    assert sum(1 for x in f if x) == rank(M)


def test_snf_examples():
    assert list(snf(IntMatrix.diag([2, 3])).factors) == [1, 6]
    assert set(snf(IntMatrix.identity(4)).factors) == {1}
    assert list(snf(IntMatrix([[0]])).factors) == [0]


def test_solve_exact():
    assert solve_exact(IntMatrix.identity(3), [4, -1, 7]) == (4, -1, 7)
    with pytest.raises(NoIntegerSolution):
        solve_exact(IntMatrix([[2]]), [3])


def test_solve_exact_p2_coordinates():
    # Columns: phi-images of the degree-2 presentation basis, in basis_H(2) coordinates.
    n = 2
    mons = hr.presentation_basis(n)
    cols = [hr.rep_coords(hr.phi_n(hr.ABCD.monomial(e), n)) for e in mons]
    M = as_matrix(cols, hr.rank_H(n))
    p2 = hr.HodgeDiamond.from_matrix([[1, 0, 0], [0, 1, 0], [0, 0, 1]])
    sol = solve_exact(M, hr.rep_coords(p2))
    expr = sum((c * hr.ABCD.monomial(e) for c, e in zip(sol, mons)), hr.ABCD.zero())
    assert str(expr) == "A^2-C"


def _brute_kernel(M, bound=4):
    n = M.shape[1]
    return [v for v in itertools.product(range(-bound, bound + 1), repeat=n) if any(v) and not any(M @ list(v))]


def test_kernel_examples():
    assert kernel_basis(IntMatrix([[1, 1]])) in ([(1, -1)], [(-1, 1)])
    assert kernel_basis(IntMatrix.identity(3)) == []
    K = kernel_basis(IntMatrix([[2, 4]]))
    assert K in ([(2, -1)], [(-2, 1)])
    # every small kernel vector is an integer multiple of the basis vector
    for v in _brute_kernel(IntMatrix([[2, 4]])):
        assert v[0] % K[0][0] == 0 and v[1] == v[0] // K[0][0] * K[0][1]


@settings(max_examples=60, deadline=None)
@given(matrices)
def test_kernel_saturated_and_complete(M):
    K = kernel_basis(M)
    assert len(K) == M.shape[1] - rank(M)
    for v in K:
        assert not any(M @ list(v))
    assert saturate(K, M.shape[1]) == K or lattice_equal(
        as_matrix(saturate(K, M.shape[1]), M.shape[1]), as_matrix(K, M.shape[1]))
    if M.shape[1] <= 3:
        for v in _brute_kernel(M, bound=3):
            solve_exact(as_matrix(K, M.shape[1]), v)


def test_lattice_equal():
    M = IntMatrix([[2, 1], [1, 3]])
    U = IntMatrix([[1, 5], [0, 1]])
    assert lattice_equal(M, M @ U)
    assert not lattice_equal(IntMatrix.identity(2), IntMatrix.identity(2) * 2)


def test_lattice_equal_presentation_degree_3():
    n = 3
    cols = [hr.rep_coords(hr.phi_n(hr.ABCD.monomial(e), n)) for e in hr.monomials(n)]
    assert lattice_equal(as_matrix(cols, hr.rank_H(n)), IntMatrix.identity(hr.rank_H(n)))


def test_inverse_unimodular():
    M = IntMatrix([[2, 1], [1, 1]])
    assert M @ inverse_unimodular(M) == IntMatrix.identity(2)
    with pytest.raises(NotUnimodular):
        inverse_unimodular(IntMatrix([[2, 0], [0, 1]]))


def test_kernel_mod_examples():
    assert mod_span(kernel_mod(IntMatrix.identity(3), 7), 7, 3) == []
    assert kernel_mod(IntMatrix([[5]]), 5) == [(1,)]
    # mod-2 sign collapse
    assert span_equal_mod([(1, 1)], [(1, -1)], 2, 2)


def test_kernel_mod_degree_2_is_serre_span():
    n = 2
    M = hr.monomial_image_matrix(n).T
    got = kernel_mod(M, 5)
    assert span_equal_mod(got, hr.serre_vectors(n), 5, (n + 1) ** 2)


def test_json_round_trip():
    M = IntMatrix([[10**30, -1], [0, 3]])
    assert IntMatrix.from_json(M.to_json()) == M
