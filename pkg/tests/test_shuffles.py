from fractions import Fraction as F

import pytest

from gscohom.linalg import RatMatrix
from gscohom.shuffles import (GroupAlgebraElement, eulerian_idempotents,
                              eulerian_idempotent, total_shuffle_operator,
                              riffle_shuffles, element_action_matrix)


def test_riffle_shuffles_count():
    # C(n, i) shuffles of type (i, n-i)
    assert len(riffle_shuffles(4, 1)) == 4
    assert len(riffle_shuffles(4, 2)) == 6
    for perm in riffle_shuffles(5, 2):
        assert list(perm[:2]) == sorted(perm[:2])
        assert list(perm[2:]) == sorted(perm[2:])


def test_degree_one_is_identity():
    (e,) = eulerian_idempotents(1)
    assert e == GroupAlgebraElement.one(1)


def test_degree_two_symmetrizers():
    e1, e2 = eulerian_idempotents(2)
    assert e1.terms == {(0, 1): F(1, 2), (1, 0): F(1, 2)}
    assert e2.terms == {(0, 1): F(1, 2), (1, 0): F(-1, 2)}


@pytest.mark.parametrize("n", [2, 3, 4, 5])
def test_family_is_verified(n):
    es = eulerian_idempotents(n)
    assert len(es) == n
    total = GroupAlgebraElement.zero(n)
    for e in es:
        total = total + e
        assert e * e == e
    assert total == GroupAlgebraElement.one(n)
    for a in range(n):
        for b in range(n):
            if a != b:
                assert (es[a] * es[b]).is_zero()


def test_boundary_conventions():
    assert eulerian_idempotent(0, 0) == GroupAlgebraElement.one(0)
    assert eulerian_idempotent(3, 0).is_zero()
    assert eulerian_idempotent(3, 4).is_zero()


def test_shuffle_operator_spectrum():
    # the minimal polynomial of s_n divides prod (x - (2^r - 2))
    for n in (2, 3, 4):
        s = total_shuffle_operator(n)
        acc = GroupAlgebraElement.one(n)
        for r in range(1, n + 1):
            lam = F(2 ** r - 2)
            acc = acc * (s - GroupAlgebraElement.one(n).scale(lam))
        assert acc.is_zero()


def test_action_matrix_antisymmetrizes():
    e = element_action_matrix(eulerian_idempotent(2, 2), 2, 2)
    phi = RatMatrix.from_rows([[1, 2, 3, 4], [5, 6, 7, 8]])
    from gscohom.hochschild import flatten, unflatten
    out = unflatten(e.apply(flatten(phi)), 2, 4)
    # antisymmetrization: (phi(a,b) - phi(b,a)) / 2; symmetric words die
    assert out.column(0) == (F(0), F(0))
    assert out.column(3) == (F(0), F(0))
    assert out.column(1) == tuple((a - b) / 2
                                  for a, b in zip(phi.column(1), phi.column(2)))
    # a symmetric cochain is killed entirely (Harrison side survives)
    sym = RatMatrix.from_rows([[1, 2, 2, 4], [0, 3, 3, 1]])
    assert e.apply(flatten(sym)) == tuple(F(0) for _ in range(8))


def test_action_matrices_are_orthogonal_projectors():
    m_dim, a_dim, q = 2, 2, 3
    mats = [element_action_matrix(eulerian_idempotent(q, r), m_dim, a_dim)
            for r in range(1, q + 1)]
    total = RatMatrix.zeros(mats[0].rows, mats[0].cols)
    for i, e in enumerate(mats):
        assert e @ e == e
        total = total + e
        for j, f in enumerate(mats):
            if i != j:
                assert (e @ f).is_zero()
    assert total == RatMatrix.identity(m_dim * a_dim ** q)
