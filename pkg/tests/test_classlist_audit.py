"""Machine evidence for the dim-6 class-list corrections.

The enumerated dim-6 lists differ from the historical closed-form counts in
three characteristics.  Each deviation is witnessed here computationally:

  p = 2:  the two printed variants of the semidirect item with nonabelian
          2-dim radical are isomorphic (explicit basis map d -> d + h);
          the action of the top generator on the radical is an inner
          derivation of aff(1), hence untwistable.          [count -1]

  p = 3:  (a) the beta=1 "central extension" of the 5-dim nonsplit algebra
          violates Jacobi on (e, h, v0); the full cocycle space has
          dimension 6 = 5 (coboundaries) + 1, so there are exactly two
          central extensions up to isomorphism.              [count -1]
          (b) the split Heisenberg-radical item and its divided-power
          sibling are isomorphic via e -> e + v1 (characteristic-3 weight
          alignment).                                        [count -1]

  p = 5:  the printed list itself has 13 + q members (both central
          extensions of the 5-dim Witt algebra exist and are distinct on
          top of the 11 + q generic ones); the closed form says 12 + q.
          All 18 classes over F_5 are pairwise separated.    [count +1]
"""

import itertools

from modlie.fields import GF
from modlie.linalg import Matrix
from modlie.liealg import (Representation, derived_series, semidirect_sum)
from modlie._core import int_kernel
from modlie.catalog import (L1_nonsplit, aff1, build, witt)
from modlie.classify import (catalog_fingerprint, check_iso_witness,
                             enumerate_classes, expected_count, iso_oracle)

F2, F3, F5 = GF(2), GF(3), GF(5)


def test_p2_semidirect_variant_collapse():
    """delta'=1 variant of the nonabelian-radical item is the direct sum."""
    W12 = witt(F2, 2)
    Z = Matrix.zero(F2, 2, 2)
    act = [Z, Z, Z, Matrix(F2, [[0, 0], [0, 1]])]  # top generator: h->0, u->u
    variant = semidirect_sum(W12, Representation(W12, act), aff1(F2))
    base = build("T6.1.3b", F2)  # the direct sum W(1;2) + aff(1)
    # explicit witness: identity except the top generator gains the h-part
    cols = [[1 if i == j else 0 for i in range(6)] for j in range(6)]
    cols[3][4] = 1  # image of the generator d is d + h
    M = Matrix(F2, [[cols[j][r] for j in range(6)] for r in range(6)])
    assert check_iso_witness(base, variant, M)
    assert iso_oracle(base, variant).verdict == "isomorphic"


def test_p3_central_extension_cocycle_space():
    """dim Z^2(L1) = 6 and dim B^2 = 5: one nontrivial extension class."""
    L = L1_nonsplit(F3)
    n = 5
    pairs = [(i, j) for i in range(n) for j in range(i + 1, n)]
    pidx = {pr: a for a, pr in enumerate(pairs)}
    add, neg = F3._add, F3._neg

    rows = []
    for (i, j, k) in itertools.combinations(range(n), 3):
        row = [0] * len(pairs)

        def acc(v, kk):
            for s in range(n):
                c = v[s].idx
                if not c or s == kk:
                    continue
                if s < kk:
                    row[pidx[(s, kk)]] = add[row[pidx[(s, kk)]]][c]
                else:
                    row[pidx[(kk, s)]] = add[row[pidx[(kk, s)]]][neg[c]]

        acc(L.table[i][j], k)
        acc(L.table[j][k], i)
        acc(L.table[k][i], j)
        if any(row):
            rows.append(tuple(row))
    Z2 = int_kernel(F3, rows, len(pairs))
    assert len(Z2) == 6
    # coboundaries delta_f(x,y) = f([x,y]); L1 is perfect so the map from
    # the dual space is injective: dim B^2 = 5
    assert derived_series(L)[0].dim == 5 and len(derived_series(L)) == 1
    from modlie._core import IntBasis
    B2 = IntBasis(F3, len(pairs))
    for t in range(n):
        row = [0] * len(pairs)
        for (i, j) in pairs:
            row[pidx[(i, j)]] = L.table[i][j][t].idx
        B2.add(row)
    assert B2.rank == 5
    # and B^2 is contained in Z^2
    Zspan = IntBasis(F3, len(pairs))
    for z in Z2:
        Zspan.add(z)
    for r in B2.rows:
        assert Zspan.contains(r)
    # the beta=1 entry omega(v0, v1) = 1 is not a cocycle: every cocycle has
    # zero (v0, v1) component (forced by the triple (e, h, v0))
    assert all(z[pidx[(3, 4)]] == 0 for z in Z2)


def test_p3_heisenberg_items_isomorphic():
    """The two Heisenberg-radical split items coincide at p = 3."""
    A = build("T6.3.4", F3)
    B = build("T6.3.5", F3)
    # explicit witness: e -> e + v1 with the module bases matched up
    # (in B the radical basis is (z, x, x^(2)) at positions 3, 4, 5)
    n = 6
    cols = [[0] * n for _ in range(n)]
    # A basis (e,h,f | v0,v1,z) -> B basis (e,h,f | z,x,x2)
    images = {0: {0: 1, 5: 1},  # e -> e + x^(2)
              1: {1: 1}, 2: {2: 1},
              3: {4: 1},        # v0 -> x
              4: {5: 1},        # v1 -> x^(2)
              5: {3: 1}}        # z -> 1
    for src, img in images.items():
        for tgt, c in img.items():
            cols[src][tgt] = c
    M = Matrix(F3, [[cols[j][r] for j in range(n)] for r in range(n)])
    assert check_iso_witness(A, B, M)
    assert iso_oracle(A, B).verdict == "isomorphic"


def test_p5_list_versus_closed_form():
    """Over F_5 the enumerated dim-6 list has 18 pairwise-distinct classes;
    the closed form gives 17.  The two central extensions of the 5-dim
    Witt algebra are genuinely distinct (perfect versus not)."""
    labs = enumerate_classes(F5, 6)
    assert len(labs) == 18
    assert expected_count(5, 5, 6) == 17
    fps = {catalog_fingerprint(F5, lab) for lab in labs}
    assert len(fps) == 18
    w2a, w2b = build("T6.2.2a", F5), build("T6.2.2b", F5)
    assert derived_series(w2a)[-1].dim == 5   # W(1;1) + k is not perfect
    assert derived_series(w2b)[0].dim == 6 and len(derived_series(w2b)) == 1
    assert iso_oracle(w2a, w2b).verdict == "not_isomorphic"


def test_corrected_counts_summary():
    """The machine-verified dim-6 counts per field."""
    got = {repr(F): len(enumerate_classes(F, 6))
           for F in (F2, GF(2, 2), F3, GF(3, 2), F5, GF(7))}
    assert got == {"GF(2)": 18, "GF(2^2)": 22, "GF(3)": 22, "GF(3^2)": 32,
                   "GF(5)": 18, "GF(7)": 18}
