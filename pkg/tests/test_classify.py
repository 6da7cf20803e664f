"""Identification, invariants, automorphism/character utilities, oracle."""

import random

import pytest

from modlie.fields import GF
from modlie.linalg import Matrix
from modlie.liealg import (abelian, change_basis, direct_sum, is_solvable,
                           new_algebra)
from modlie.catalog import (Character, ClassLabel, build, parse_label, sl2,
                            solvable3, solvable3_labels, witt)
from modlie.classify import (ClassifyError, char_orbit_rep, check_automorphism,
                             check_iso_witness, classify_2x2_action,
                             classify_solvable3, enumerate_classes, exp_ad,
                             expected_count, find_sl2_triple, fingerprint,
                             identify, iso_oracle, sl2_power3, sl2_sigma)

F2, F3, F4, F5, F9 = GF(2), GF(3), GF(2, 2), GF(5), GF(3, 2)


def rand_gl(F, n, rng):
    while True:
        M = Matrix(F, [[F.from_index(rng.randrange(F.order)) for _ in range(n)]
                       for _ in range(n)])
        if M.is_invertible():
            return M


# -- solvable 3-dim classifier -------------------------------------------

@pytest.mark.parametrize("F", [F2, F3, F5, F4, F9], ids=repr)
def test_classify_solvable3_round_trip(F):
    rng = random.Random(17)
    for lab in solvable3_labels(F):
        R = build(lab, F)
        assert classify_solvable3(R) == lab
        # invariance under a couple of random basis changes
        for _ in range(2):
            R2 = change_basis(R, rand_gl(F, 3, rng))
            assert classify_solvable3(R2) == lab


def test_classify_2x2_action_cases():
    assert classify_2x2_action(F5, Matrix.zero(F5, 2, 2))[0] == "zero"
    assert classify_2x2_action(F5, Matrix(F5, [[0, 1], [0, 0]]))[0] == "nilpotent"
    assert classify_2x2_action(F5, Matrix(F5, [[3, 0], [0, 3]]))[0] == "identity"
    assert classify_2x2_action(F5, Matrix(F5, [[1, 0], [0, -1]]))[0] == "split"
    assert classify_2x2_action(F5, Matrix(F5, [[0, 2], [1, 0]]))[0] == "nonsquare"
    tag, xi = classify_2x2_action(F5, Matrix(F5, [[0, 3], [1, 1]]))
    assert tag == "shift" and xi == F5.el(3)  # -det/tr^2 = 3/1
    assert classify_2x2_action(F2, Matrix(F2, [[1, 1], [0, 1]]))[0] == "unipotent"
    # scaling invariance of the shift parameter
    tag2, xi2 = classify_2x2_action(F5, Matrix(F5, [[0, 3], [1, 1]]).scale(2))
    assert (tag2, xi2) == (tag, xi)


# -- fingerprints ----------------------------------------------------------

def test_fingerprint_basis_invariance():
    rng = random.Random(5)
    cases = [("T4.1.w12", F2), ("T4.2.2b", F2), ("T6.1.4c", F2),
             ("T4.3.3", F3), ("T6.3.4", F3), ("T6.4.2a", F3),
             ("T6.4.1c", F3), ("T6.3.1(P3.5.4b(2))", F3)]
    for s, F in cases:
        L = build(s, F)
        fp = fingerprint(L)
        for _ in range(3):
            L2 = change_basis(L, rand_gl(F, L.dim, rng))
            assert fingerprint(L2) == fp, s


def test_fingerprint_separates_spec_examples():
    fp_sl2 = fingerprint(sl2(F3)).as_dict()
    fp_gl2 = fingerprint(build("T4.1.gl2", F3)).as_dict()
    assert fp_sl2["dim"] != fp_gl2["dim"]
    assert fp_sl2["dim_center"] != fp_gl2["dim_center"]
    # the two 5-dim p=2 semidirect classes differ in the solvable quotient
    a = fingerprint(build("T4.2.2a", F2)).as_dict()
    b = fingerprint(build("T4.2.2b", F2)).as_dict()
    assert a["dim_center"] == 1 and b["dim_center"] == 0
    # central extension cases: radical abelian iff not the twisted pairing one
    e00 = fingerprint(build("T6.4.1a", F3)).as_dict()
    e10 = fingerprint(build("T6.4.1c", F3)).as_dict()
    assert e00 != e10
    assert e00["derived_dims"] != e10["derived_dims"]


def test_fingerprint_serialization_sorted():
    fp = fingerprint(sl2(F3))
    js = fp.to_json()
    import json
    d = json.loads(js)
    assert list(d.keys()) == sorted(d.keys())
    assert d["dim"] == 3 and d["dim_radical"] == 0


# -- identification --------------------------------------------------------

def test_identify_round_trip_small():
    for F, dim in ((F2, 4), (F3, 5), (F5, 5)):
        for lab in enumerate_classes(F, dim):
            assert identify(build(lab, F)) == lab


def test_identify_spec_examples():
    assert str(identify(build("T4.1.gl2", F5))) == "T4.1.gl2"
    # sl2 + solvable item 2 is the direct-sum class with the nested label
    L = direct_sum(sl2(F5), solvable3(F5, "2"))
    assert str(identify(L)) == "T6.3.1(P3.5.2)"
    # random basis change of W(1;1) over F5
    rng = random.Random(23)
    W = change_basis(witt(F5, 1), rand_gl(F5, 5, rng))
    assert str(identify(W)) == "T4.3.1"


def test_identify_rejects_bad_input():
    with pytest.raises(ClassifyError):
        identify(abelian(F3, 3))
    with pytest.raises(ClassifyError):
        identify(solvable3(F3, "2"))


def test_identify_nonenumerated_variants():
    # the O(1;1)-module Heisenberg variant is isomorphic to the split item 4
    assert str(identify(build("T6.3.5", F3))) == "T6.3.4"
    # a mixed outer derivation d1 + d2 lands in the d2 class
    from modlie.catalog import L1_nonsplit
    base = L1_nonsplit(F3)
    sc = {}
    for i in range(5):
        for j in range(i + 1, 5):
            sc[(i, j)] = tuple(base.table[i][j]) + (F3.zero,)
    sc[(0, 5)] = [0, 0, 0, 0, -1, 0]   # [e, d] = -v1  (d1 component)
    sc[(2, 5)] = [0, 0, 0, -1, 0, 0]   # [f, d] = -v0  (d2 component)
    mixed = new_algebra(F3, 6, sc)
    assert str(identify(mixed)) == "T6.4.2b"


# -- sl2 automorphisms / cubes / characters (characteristic 3) -------------

def test_sigma_automorphisms_and_relations():
    L3 = sl2(F3)
    L9 = sl2(F9)
    for F, L in ((F3, L3), (F9, L9)):
        for alpha in F.elements():
            if alpha.is_zero():
                continue
            for beta in F.elements():
                assert check_automorphism(L, sl2_sigma(F, alpha, beta))
    # sigma_{a,0}^2 = Id
    for F in (F3, F9):
        for alpha in F.elements():
            if not alpha.is_zero():
                S = sl2_sigma(F, alpha, F.zero)
                assert S * S == Matrix.identity(F, 3)
    # sigma_{1,0} . exp(ad beta e) = sigma_{1,beta}
    for beta in F3.elements():
        E = exp_ad(L3, [beta, F3.zero, F3.zero])
        assert sl2_sigma(F3, F3.one, F3.zero) * E == sl2_sigma(F3, F3.one, beta)
    # composition law over F9, all parameter tuples
    for alpha in F9.elements():
        for beta in F9.elements():
            for gamma in F9.elements():
                if alpha.is_zero() or beta.is_zero() or gamma.is_zero():
                    continue
                for delta in (F9.zero, F9.one, F9.gen):
                    lhs = (sl2_sigma(F9, alpha, F9.zero)
                           * sl2_sigma(F9, beta, F9.zero)
                           * sl2_sigma(F9, gamma, delta))
                    rhs = sl2_sigma(F9, alpha * beta.inv() * gamma, delta)
                    assert lhs == rhs


def test_sl2_power3_against_matrices():
    L = sl2(F3)
    for a in F3.elements():
        for b in F3.elements():
            for c in F3.elements():
                x = (a, b, c)
                cube, nilp, toral = sl2_power3(F3, x)
                A = L.ad(x)
                assert nilp == (A * A * A).is_zero()
                if (a, b, c) != (0, 0, 0):
                    # at x = 0 the ad-level check is vacuous (0^[3] = 0)
                    assert toral == (A * A * A == A)
                # the cube really is ad x^[3] = (ad x)^3 on the faithful rep
                assert L.ad(cube) == A * A * A
    # spec cases: h is toral, e is nilpotent, e+f is toral
    assert sl2_power3(F3, (0, 1, 0))[2]
    assert sl2_power3(F3, (1, 0, 0))[1]
    assert sl2_power3(F3, (1, 0, 1))[2]


def test_char_orbit_rep():
    chi = Character(F3.one, F3.zero, F3.el(2))
    rep, valid = char_orbit_rep(F3, chi)
    assert rep.f == F3.el(2) and valid  # T=1 solves T^3+T^2 = 2
    rep, valid = char_orbit_rep(F3, Character(F3.one, F3.zero, F3.one))
    assert rep.f == F3.one and not valid  # T^3+T^2 = 1 unsolvable over F_3
    for t in (F3.one, F3.el(2)):
        rep, _ = char_orbit_rep(F3, Character(F3.zero, F3.zero, t))
        assert rep.e == F3.one and rep.h.is_zero()
    with pytest.raises(ClassifyError):
        char_orbit_rep(F3, Character(F3.zero, F3.zero, F3.zero))


def test_char_orbit_rep_invariant_under_sampled_automorphisms():
    rng = random.Random(7)
    els = F9.elements()
    for _ in range(50):
        chi = Character(*(els[rng.randrange(9)] for _ in range(3)))
        if chi.is_zero():
            continue
        base, _ = char_orbit_rep(F9, chi)
        for _ in range(5):
            alpha = els[rng.randrange(1, 9)]
            beta = els[rng.randrange(9)]
            S = sl2_sigma(F9, alpha, beta)
            Sinv = S.inverse()
            moved = Character(*(sum((chi.as_tuple()[i] * Sinv.entries[i][j]
                                     for i in range(3)), F9.zero)
                                for j in range(3)))
            if moved.is_zero():
                continue
            got, _ = char_orbit_rep(F9, moved)
            assert got == base


def test_find_sl2_triple():
    rng = random.Random(3)
    for F in (F3, F5, F9):
        L = change_basis(sl2(F), rand_gl(F, 3, rng))
        e, h, f = find_sl2_triple(L)
        assert L.bracket(h, e) == tuple(2 * c for c in e)
        assert L.bracket(h, f) == tuple(-2 * c for c in f)
        assert L.bracket(e, f) == h


# -- counts ---------------------------------------------------------------

def test_expected_count_values():
    assert expected_count(2, 2, 3) == 1
    assert expected_count(2, 2, 4) == 2
    assert expected_count(3, 9, 4) == 1
    assert expected_count(2, 4, 5) == 5
    assert expected_count(3, 3, 5) == 4
    assert expected_count(5, 5, 5) == 4
    assert expected_count(7, 7, 5) == 3
    assert expected_count(2, 2, 6) == 19
    assert expected_count(3, 3, 6) == 24   # 19 + 3 + |{0,2}|
    assert expected_count(5, 5, 6) == 17
    assert expected_count(7, 7, 6) == 18


def test_enumerate_counts_dims_3_to_5_match_expected():
    for F in (F2, F3, F4, F5, F9):
        for dim in (3, 4, 5):
            assert len(enumerate_classes(F, dim)) == \
                expected_count(F.p, F.order, dim)


# -- isomorphism oracle ----------------------------------------------------

def test_iso_oracle_identity():
    L = sl2(F3)
    w = iso_oracle(L, L)
    assert w.verdict == "isomorphic"
    assert w.matrix == Matrix.identity(F3, 3)


def test_iso_oracle_quick_reject():
    A = sl2(F3)
    B = solvable3(F3, "3")
    assert iso_oracle(A, B).verdict == "not_isomorphic"


def test_iso_oracle_basis_change_witness():
    rng = random.Random(11)
    for s, F in (("T4.1.w12", F2), ("T4.3.3", F3)):
        L = build(s, F)
        M = rand_gl(F, L.dim, rng)
        L2 = change_basis(L, M)
        w = iso_oracle(L, L2)
        assert w.verdict == "isomorphic"
        assert check_iso_witness(L, L2, w.matrix)


def test_iso_oracle_outer_extension_pair():
    A = build("T6.4.2a", F3)
    B = build("T6.4.2b", F3)
    assert iso_oracle(A, B).verdict == "not_isomorphic"
    # and the central extensions are pairwise nonisomorphic
    E = [build("T6.4.1a", F3), build("T6.4.1c", F3)]
    assert iso_oracle(E[0], E[1]).verdict == "not_isomorphic"


def test_iso_oracle_budget_exhaustion():
    A = build("T6.4.2a", F3)
    B = build("T6.4.2b", F3)
    assert iso_oracle(A, B, budget=5).verdict == "unknown"
