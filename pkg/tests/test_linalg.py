"""Exact linear algebra: RREF/kernel/solve contracts, Cayley-Hamilton, Fitting."""

import random

import pytest

from modlie.fields import GF, Poly
from modlie.linalg import (Matrix, Subspace, char_poly, eval_poly_at_matrix,
                           fitting, image, kernel, rref, solve)


def rand_matrix(F, rows, cols, rng):
    return Matrix(F, [[F.from_index(rng.randrange(F.order)) for _ in range(cols)]
                      for _ in range(rows)])


def test_rref_basics():
    F3, F2 = GF(3), GF(2)
    I3 = Matrix.identity(F3, 3)
    R, rank = rref(I3)
    assert R == I3 and rank == 3
    Z = Matrix.zero(F3, 2, 2)
    assert rref(Z) == (Z, 0)
    R, rank = rref(Matrix(F2, [[1, 1], [1, 1]]))
    assert rank == 1 and R.entries[0] == (F2.one, F2.one)


def test_rref_idempotent_and_rank_stable():
    rng = random.Random(7)
    for F in (GF(2), GF(3), GF(5)):
        for _ in range(25):
            M = rand_matrix(F, rng.randrange(1, 6), rng.randrange(1, 6), rng)
            R, rank = rref(M)
            R2, rank2 = rref(R)
            assert R2 == R and rank2 == rank


def test_kernel_examples():
    F2 = GF(2)
    assert kernel(Matrix.zero(F2, 3, 3)).dim == 3
    assert kernel(Matrix.identity(F2, 3)).dim == 0
    K = kernel(Matrix(F2, [[1, 1]]))
    assert K.basis == ((F2.one, F2.one),)
    # oracle: scan all four vectors of F_2^2
    members = {tuple(e.idx for e in v) for v in Subspace.full(F2, 2).vectors()
               if all(x.is_zero() for x in Matrix(F2, [[1, 1]]).apply(v))}
    assert members == {tuple(e.idx for e in v) for v in K.vectors()}


def test_solve_consistency():
    rng = random.Random(3)
    for F in (GF(2), GF(3), GF(5)):
        for _ in range(40):
            M = rand_matrix(F, rng.randrange(1, 5), rng.randrange(1, 5), rng)
            b = tuple(F.from_index(rng.randrange(F.order)) for _ in range(M.rows))
            x = solve(M, b)
            if x is not None:
                assert M.apply(x) == b
            else:
                # inconsistent: b outside the column space
                assert not image(M).contains_vector(b)


def test_char_poly_values():
    F5, F3 = GF(5), GF(3)
    assert char_poly(Matrix(F5, [[1, 0], [0, -1]])) == Poly(F5, [-1, 0, 1])
    assert char_poly(Matrix.zero(F3, 2, 2)) == Poly(F3, [0, 0, 1])
    d0 = 2  # nonsquare rep of F_3
    assert char_poly(Matrix(F3, [[0, d0], [1, 0]])) == Poly(F3, [-d0, 0, 1])


def test_cayley_hamilton_random():
    rng = random.Random(11)
    for F in (GF(2), GF(3), GF(5)):
        for n in range(2, 7):
            for _ in range(6):
                A = rand_matrix(F, n, n, rng)
                f = char_poly(A)
                assert f.degree == n and f.coeffs[-1] == F.one
                assert eval_poly_at_matrix(f, A).is_zero()


def test_fitting_decomposition():
    F3 = GF(3)
    N = Matrix(F3, [[0, 1], [0, 0]])
    V0, V1 = fitting(N)
    assert V0.dim == 2 and V1.dim == 0
    A = Matrix(F3, [[1, 0], [0, 2]])
    V0, V1 = fitting(A)
    assert V0.dim == 0 and V1.dim == 2
    D = Matrix(F3, [[0, 0], [0, 1]])
    V0, V1 = fitting(D)
    assert V0.basis == ((F3.one, F3.zero),)
    assert V1.basis == ((F3.zero, F3.one),)


def test_fitting_properties_random():
    rng = random.Random(5)
    for F in (GF(2), GF(3)):
        for n in (2, 3, 4, 5):
            for _ in range(8):
                A = rand_matrix(F, n, n, rng)
                V0, V1 = fitting(A)
                assert V0.dim + V1.dim == n
                assert (V0 & V1).dim == 0
                for v in V0.basis:
                    w = v
                    for _ in range(V0.dim):
                        w = A.apply(w)
                    assert all(x.is_zero() for x in w)  # nilpotent on V0
                # invertible on V1: image of V1 under A has the same dimension
                imgs = [A.apply(v) for v in V1.basis]
                assert Subspace(F, n, imgs).dim == V1.dim
                for v in V0.basis:
                    assert V0.contains_vector(A.apply(v))
                for v in V1.basis:
                    assert V1.contains_vector(A.apply(v))


def test_subspace_lattice():
    F2 = GF(2)
    U = Subspace(F2, 3, [[1, 0, 0]])
    V = Subspace(F2, 3, [[0, 1, 0]])
    assert (U + V).dim == 2
    assert (U & U) == U
    assert (U + Subspace.zero(F2, 3)) == U
    assert U.contains(Subspace.zero(F2, 3))
    assert not U.contains(V)


def test_dimension_formula_random():
    rng = random.Random(13)
    for F in (GF(2), GF(3)):
        n = 5
        for _ in range(30):
            U = Subspace(F, n, [[F.from_index(rng.randrange(F.order)) for _ in range(n)]
                                for _ in range(rng.randrange(1, 4))])
            V = Subspace(F, n, [[F.from_index(rng.randrange(F.order)) for _ in range(n)]
                                for _ in range(rng.randrange(1, 4))])
            assert U.dim + V.dim == (U + V).dim + (U & V).dim


def test_char_poly_rejects_large_and_nonsquare():
    F2 = GF(2)
    with pytest.raises(Exception):
        char_poly(Matrix.zero(F2, 2, 3))
    with pytest.raises(Exception):
        char_poly(Matrix.zero(F2, 9, 9))
