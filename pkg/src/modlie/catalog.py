"""Constructors for every algebra, module, and representation in the
classification of nonsolvable Lie algebras of dimension <= 6 over a finite
field, keyed by ClassLabel.

All multiplication tables are transcribed from the classification lists and
machine-validated (Jacobi plus structural invariants in the test suite);
transcription is the main risk and validation the mitigation.  Basis orders
are fixed per constructor and documented in the docstrings so serialized
output is canonical.

Label strings look like ``T6.1.3a(x+1)`` or ``T6.3.1(P3.5.4b(2))``: a
theorem tag, an item within it, and normalized parameters (field elements
printed as polynomials in x, or a nested solvable-radical label).
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field as dc_field
from math import comb
from typing import Optional, Sequence, Union

from .fields import (GF, FieldElement, FieldSpec, Poly, element_str,
                     nonsquare_rep, parse_element, roots_univariate)
from .linalg import Matrix
from .liealg import (AlgebraError, Cocycle2, LieAlgebra, Representation,
                     abelian, central_extension, direct_sum, new_algebra,
                     product_space, restrict_scalars, semidirect_sum,
                     subalgebra_constants)


class CatalogError(ValueError):
    """Unknown label or label/characteristic mismatch."""


# ---------------------------------------------------------------------------
# Labels
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class ClassLabel:
    """(theorem, item, normalized parameters) identifying one class."""

    theorem: str
    item: str
    params: tuple = ()

    def __str__(self) -> str:
        base = f"{self.theorem}.{self.item}"
        if not self.params:
            return base
        parts = []
        for par in self.params:
            parts.append(str(par) if isinstance(par, ClassLabel) else element_str(par))
        return f"{base}({','.join(parts)})"

    def key(self) -> tuple:
        out = [self.theorem, self.item]
        for par in self.params:
            out.append(par.key() if isinstance(par, ClassLabel) else par.idx)
        return tuple(out)


_LABEL_RE = re.compile(r"^([TP]\d+\.\d+)\.([A-Za-z0-9-]+)(?:\((.*)\))?$")


def parse_label(field: FieldSpec, s: str) -> ClassLabel:
    m = _LABEL_RE.match(s.strip())
    if not m:
        raise CatalogError(f"malformed label {s!r}")
    theorem, item, paramstr = m.groups()
    params: list = []
    if paramstr is not None:
        for tok in _split_top_level(paramstr):
            if _LABEL_RE.match(tok):
                params.append(parse_label(field, tok))
            else:
                params.append(parse_element(field, tok))
    return ClassLabel(theorem, item, tuple(params))


def _split_top_level(s: str) -> list[str]:
    parts, depth, cur = [], 0, []
    for ch in s:
        if ch == "," and depth == 0:
            parts.append("".join(cur).strip())
            cur = []
            continue
        if ch == "(":
            depth += 1
        elif ch == ")":
            depth -= 1
        cur.append(ch)
    if cur:
        parts.append("".join(cur).strip())
    return [pt for pt in parts if pt]


@dataclass(frozen=True)
class Character:
    """A linear form on an sl2 triple, written (chi(e), chi(h), chi(f))."""

    e: FieldElement
    h: FieldElement
    f: FieldElement

    def as_tuple(self) -> tuple[FieldElement, FieldElement, FieldElement]:
        return (self.e, self.h, self.f)

    def is_zero(self) -> bool:
        return self.e.is_zero() and self.h.is_zero() and self.f.is_zero()

    def __str__(self) -> str:
        return f"({element_str(self.e)},{element_str(self.h)},{element_str(self.f)})"


# ---------------------------------------------------------------------------
# Basic constructors
# ---------------------------------------------------------------------------

def sl2(F: FieldSpec) -> LieAlgebra:
    """sl(2) on the triple basis (e, h, f): [h,e]=2e, [h,f]=-2f, [e,f]=h."""
    return new_algebra(F, 3, {(0, 1): [-2, 0, 0], (0, 2): [0, 1, 0],
                              (1, 2): [0, 0, -2]},
                       name="sl2", basis_names=("e", "h", "f"))


def gl2(F: FieldSpec) -> LieAlgebra:
    """gl(2) = sl(2) + 1-dimensional center, basis (e, h, f, z)."""
    return direct_sum(sl2(F), abelian(F, 1), name="gl2")


def binom_mod(n: int, k: int, p: int) -> int:
    if k < 0 or k > n:
        return 0
    return comb(n, k) % p


@dataclass(frozen=True)
class DividedPowerModule:
    """Truncated divided power algebra O(1;n) and its Witt actions.

    Basis x^(0)=1, x^(1), ..., x^(p^n - 1) with
    x^(r) x^(s) = binom(r+s, r) x^(r+s), truncated beyond p^n - 1.
    """

    field: FieldSpec
    n: int
    dim: int
    witt: LieAlgebra
    full_rep: Representation       # W(1;n) acting on O(1;n)
    quotient_rep: Representation   # W(1;n) acting on O(1;n)/k

    def product(self, r: int, s: int) -> tuple[int, FieldElement]:
        """(target exponent, coefficient) of x^(r) * x^(s); 0 past truncation."""
        if r + s >= self.dim:
            return (0, self.field.zero)
        return (r + s, self.field.el(binom_mod(r + s, r, self.field.p)))


def _witt_action_matrix(F: FieldSpec, i: int, exps: Sequence[int],
                        bound: int) -> Matrix:
    """Action of x^(i) d on span{x^(r) : r in exps} in that basis.

    x^(i) d sends x^(r) to binom(i+r-1, i) x^(i+r-1); targets outside *exps*
    (the truncation or a quotiented-out constant term) are dropped.
    """
    pos = {r: a for a, r in enumerate(exps)}
    d = len(exps)
    cols = []
    for r in exps:
        col = [F.zero] * d
        t = i + r - 1
        if r >= 1 and 0 <= t < bound and t in pos:
            col[pos[t]] = F.el(binom_mod(i + r - 1, i, F.p))
        cols.append(col)
    return Matrix(F, [[cols[j][a] for j in range(d)] for a in range(d)])


def witt(F: FieldSpec, n: int) -> LieAlgebra:
    """W(1;n) on the basis x^(i) d for i = 0 .. p^n - 1 (dimension p^n)."""
    q = F.p ** n
    if q > 32:
        raise CatalogError(f"W(1;{n}) over F_{F.p} has dimension {q} > 32")
    sc = {}
    for i in range(q):
        for j in range(i + 1, q):
            t = i + j - 1
            if 0 <= t < q:
                c = (binom_mod(t, i, F.p) - binom_mod(t, j, F.p)) % F.p
                if c:
                    v = [0] * q
                    v[t] = c
                    sc[(i, j)] = v
    return new_algebra(F, q, sc, name=f"W(1;{n})")


def witt_derived(F: FieldSpec, n: int) -> LieAlgebra:
    """The derived subalgebra of W(1;n) in its RREF basis.

    For p = 2 this is the simple algebra of dimension 2^n - 1 on the basis
    (d, x d, x^(2) d, ...); for p >= 3 it is all of W(1;n).
    """
    W = witt(F, n)
    D = product_space(W, W.full_space(), W.full_space())
    if D.dim == W.dim:
        return W
    name = f"W(1;{n})(1)"
    return subalgebra_constants(W, D, name=name)


def divided_power_module(F: FieldSpec, n: int) -> DividedPowerModule:
    """O(1;n) with the W(1;n)-action and the quotient module O(1;n)/k."""
    q = F.p ** n
    if q > 32:
        raise CatalogError(f"O(1;{n}) over F_{F.p} has dimension {q} > 32")
    W = witt(F, n)
    full = Representation(W, [_witt_action_matrix(F, i, range(q), q)
                              for i in range(q)])
    quot = Representation(W, [_witt_action_matrix(F, i, range(1, q), q)
                              for i in range(q)])
    return DividedPowerModule(F, n, q, W, full, quot)


def der_W121(F: FieldSpec) -> LieAlgebra:
    """Der of the 3-dim simple char-2 algebra: basis (d, xd, x2d, d2, x3d).

    The first three span the simple subalgebra; index 3 is the outer square
    derivation d^2 and index 4 the outer multiplication x^(3) d.
    """
    if F.p != 2:
        raise CatalogError("der_W121 requires characteristic 2")
    sc = {
        (0, 1): [1, 0, 0, 0, 0],   # [d, xd] = d
        (0, 2): [0, 1, 0, 0, 0],   # [d, x2d] = xd
        (1, 2): [0, 0, 1, 0, 0],   # [xd, x2d] = x2d
        (0, 4): [0, 0, 1, 0, 0],   # [d, x3d] = x2d
        (2, 3): [1, 0, 0, 0, 0],   # [x2d, d2] = d   (char 2: signs vanish)
        (3, 4): [0, 1, 0, 0, 0],   # [d2, x3d] = xd
    }
    return new_algebra(F, 5, sc, name="DerW121",
                       basis_names=("d", "xd", "x2d", "d2", "x3d"))


DER_W121_D2 = 3    # index of the outer derivation d^2
DER_W121_X3D = 4   # index of the outer element x^(3) d


def aff1(F: FieldSpec) -> LieAlgebra:
    """The 2-dim nonabelian algebra kh + ku, [h,u] = u."""
    return new_algebra(F, 2, {(0, 1): [0, 1]}, name="aff1")


# ---------------------------------------------------------------------------
# sl2 modules
# ---------------------------------------------------------------------------

def module_V(F: FieldSpec, alpha: int) -> Representation:
    """The (alpha+1)-dim restricted irreducible V(alpha), 0 <= alpha < p.

    Basis v_0..v_alpha: h v_i = (alpha-2i) v_i, f v_i = v_{i+1},
    e v_i = i (alpha - i + 1) v_{i-1}.
    """
    if not 0 <= alpha < F.p:
        raise CatalogError(f"V(alpha) needs 0 <= alpha < p, got {alpha}")
    d = alpha + 1
    rho_e = Matrix(F, [[F.el(j * (alpha - j + 1)) if i == j - 1 else F.zero
                        for j in range(d)] for i in range(d)])
    rho_h = Matrix(F, [[F.el(alpha - 2 * i) if i == j else F.zero
                        for j in range(d)] for i in range(d)])
    rho_f = Matrix(F, [[F.one if i == j + 1 else F.zero
                        for j in range(d)] for i in range(d)])
    return Representation(sl2(F), [rho_e, rho_h, rho_f])


def module_V2chi(F: FieldSpec, xi: FieldElement) -> Representation:
    """The 3-dim irreducible with character (1, 0, xi) in characteristic 3.

    Exists iff T^3 + T^2 = xi has a solution kappa; the enumeration-least
    solution is used, lam = kappa^3, and on the basis (v0, v1, v2):
    e cycles v0 -> v1 -> v2 -> v0, h = diag(0, 2, 1),
    f: v0 -> lam v2, v1 -> lam v0, v2 -> (1+lam) v1.
    """
    if F.p != 3:
        raise CatalogError("module_V2chi requires characteristic 3")
    xi = F.el(xi)
    roots = roots_univariate(Poly(F, [-xi, 0, 1, 1]))
    if not roots:
        raise CatalogError(f"T^3+T^2 = {element_str(xi)} has no solution; "
                           f"no 3-dim irreducible with this character")
    kappa = roots[0]
    lam = kappa ** 3
    z, o = F.zero, F.one
    rho_e = Matrix(F, [[z, z, o], [o, z, z], [z, o, z]])
    rho_h = Matrix(F, [[z, z, z], [z, F.el(2), z], [z, z, o]])
    rho_f = Matrix(F, [[z, lam, z], [z, z, o + lam], [lam, z, z]])
    return Representation(sl2(F), [rho_e, rho_h, rho_f])


def dual_representation(rep: Representation) -> Representation:
    """The dual module: rho*(x) = -rho(x)^T."""
    F = rep.source.field
    return Representation(rep.source,
                          [M.transpose().scale(-F.one) for M in rep.matrices])


# ---------------------------------------------------------------------------
# Characteristic-3 special algebras
# ---------------------------------------------------------------------------

def L1_nonsplit(F: FieldSpec) -> LieAlgebra:
    """The 5-dim nonsplit extension of sl2 by V(1), basis (e,h,f,v0,v1).

    Characteristic 3 only; the twist shows up as [h,e] = -e + v1.
    """
    if F.p != 3:
        raise CatalogError("L1_nonsplit requires characteristic 3")
    sc = {
        (0, 1): [1, 0, 0, 0, -1],   # [e,h] = e - v1
        (0, 2): [0, 1, 0, 0, 0],    # [e,f] = h
        (0, 4): [0, 0, 0, 1, 0],    # [e,v1] = v0
        (1, 2): [0, 0, 1, 0, 0],    # [h,f] = f
        (1, 3): [0, 0, 0, 1, 0],    # [h,v0] = v0
        (1, 4): [0, 0, 0, 0, -1],   # [h,v1] = -v1
        (2, 3): [0, 0, 0, 0, 1],    # [f,v0] = v1
    }
    return new_algebra(F, 5, sc, name="L1",
                       basis_names=("e", "h", "f", "v0", "v1"))


def der_L1(F: FieldSpec) -> LieAlgebra:
    """Der(L1): 7-dim on (e,h,f,v0,v1,d1,d2) with d1: e -> v1, d2: f -> v0."""
    if F.p != 3:
        raise CatalogError("der_L1 requires characteristic 3")
    base = L1_nonsplit(F)
    sc = {}
    for i in range(5):
        for j in range(i + 1, 5):
            v = base.table[i][j]
            sc[(i, j)] = tuple(v) + (F.zero, F.zero)
    sc[(0, 5)] = [0, 0, 0, 0, -1, 0, 0]   # [e, d1] = -d1(e) = -v1
    sc[(2, 6)] = [0, 0, 0, -1, 0, 0, 0]   # [f, d2] = -d2(f) = -v0
    return new_algebra(F, 7, sc, name="DerL1",
                       basis_names=("e", "h", "f", "v0", "v1", "d1", "d2"))


L1_EXT_CASES = ("00", "01", "10")


def L1_central_ext(F: FieldSpec, case: str) -> LieAlgebra:
    """The three central extensions of L1, basis (e,h,f,v0,v1,z).

    case = alpha beta: '00' the split one, '01' adds [v0,v1] = z,
    '10' adds [e,v0] = z.
    """
    if case not in L1_EXT_CASES:
        raise CatalogError(f"central extension case must be one of {L1_EXT_CASES}")
    base = L1_nonsplit(F)
    vals = {}
    if case == "10":
        vals[(0, 3)] = F.one   # omega(e, v0) = 1
    elif case == "01":
        vals[(3, 4)] = F.one   # omega(v0, v1) = 1
    omega = Cocycle2(base, vals)
    return central_extension(base, omega, name=f"L1ext{case}")


def witt_central_ext(F: FieldSpec) -> LieAlgebra:
    """The nonsplit central extension of W(1;1) for p = 5.

    Basis (e_{-1}, e_0, e_1, e_2, e_3, z): [e_i, e_j] = (j-i) e_{i+j} when
    -1 <= i+j <= 3; additionally [e_2, e_3] = z, and z is central.
    """
    if F.p != 5:
        raise CatalogError("witt_central_ext requires characteristic 5")
    sc = {}
    for a in range(5):
        for b in range(a + 1, 5):
            i, j = a - 1, b - 1
            v = [0] * 6
            if -1 <= i + j <= 3:
                v[i + j + 1] = (j - i) % 5
            if (i, j) == (2, 3):
                v[5] = 1
            if any(v):
                sc[(a, b)] = v
    return new_algebra(F, 6, sc, name="WittExt",
                       basis_names=("em1", "e0", "e1", "e2", "e3", "z"))


# ---------------------------------------------------------------------------
# Solvable 3-dimensional algebras (the nested radical classes)
# ---------------------------------------------------------------------------

SOLVABLE3_THEOREM = "P3.5"


def solvable3(F: FieldSpec, item: str,
              xi: Optional[FieldElement] = None) -> LieAlgebra:
    """The classified solvable 3-dim algebras.

    items: '1' abelian; '2' kh+kx+kz with [h,x]=x, z central;
    '3' Heisenberg [x,y]=z; '4*' = kd + abelian plane with d acting by:
    '4a' identity, '4b' the trace companion (0 xi / 1 1) for xi in k*,
    '4c' diag(1,-1) (odd p), '4d' the nonsquare companion (0 delta0 / 1 0)
    (odd p), '4e' the unipotent Jordan block (1 1 / 0 1) (p = 2).
    """
    if item == "1":
        return abelian(F, 3, name="R1")
    if item == "2":
        return new_algebra(F, 3, {(0, 1): [0, 1, 0]}, name="R2",
                           basis_names=("h", "x", "z"))
    if item == "3":
        return new_algebra(F, 3, {(0, 1): [0, 0, 1]}, name="R3",
                           basis_names=("x", "y", "z"))
    if item.startswith("4"):
        M = _solvable3_matrix(F, item, xi)
        sc = {(0, 1): (F.zero,) + tuple(M.col(0)),
              (0, 2): (F.zero,) + tuple(M.col(1))}
        return new_algebra(F, 3, {k: v for k, v in sc.items()
                                  if any(not c.is_zero() for c in v)},
                           name=f"R4{item[1:]}", basis_names=("d", "x", "y"))
    raise CatalogError(f"unknown solvable3 item {item!r}")


def _solvable3_matrix(F: FieldSpec, item: str, xi) -> Matrix:
    if item == "4a":
        return Matrix.identity(F, 2)
    if item == "4b":
        if xi is None:
            raise CatalogError("item 4b requires a parameter xi in k*")
        xi = F.el(xi)
        if xi.is_zero():
            raise CatalogError("item 4b requires nonzero xi")
        return Matrix(F, [[0, xi], [1, 1]])
    if item == "4c":
        if F.p == 2:
            raise CatalogError("item 4c requires odd characteristic")
        return Matrix(F, [[1, 0], [0, -1]])
    if item == "4d":
        if F.p == 2:
            raise CatalogError("item 4d requires odd characteristic")
        return Matrix(F, [[0, nonsquare_rep(F)], [1, 0]])
    if item == "4e":
        if F.p != 2:
            raise CatalogError("the unipotent Jordan block tag requires p = 2")
        return Matrix(F, [[1, 1], [0, 1]])
    raise CatalogError(f"unknown solvable3 item {item!r}")


def solvable3_labels(F: FieldSpec) -> list[ClassLabel]:
    """All solvable 3-dim class labels over F (4+q for p=2, 5+q for odd p)."""
    out = [ClassLabel(SOLVABLE3_THEOREM, "1"),
           ClassLabel(SOLVABLE3_THEOREM, "2"),
           ClassLabel(SOLVABLE3_THEOREM, "3"),
           ClassLabel(SOLVABLE3_THEOREM, "4a")]
    if F.p != 2:
        out.append(ClassLabel(SOLVABLE3_THEOREM, "4c"))
        out.append(ClassLabel(SOLVABLE3_THEOREM, "4d"))
    else:
        out.append(ClassLabel(SOLVABLE3_THEOREM, "4e"))
    for a in F.elements():
        if not a.is_zero():
            out.append(ClassLabel(SOLVABLE3_THEOREM, "4b", (a,)))
    return out


def solvable3_count(F: FieldSpec) -> int:
    return (4 if F.p == 2 else 5) + F.order


# ---------------------------------------------------------------------------
# The master constructor
# ---------------------------------------------------------------------------

def _cubic_image(F: FieldSpec) -> list[FieldElement]:
    """Values xi for which T^3 + T^2 = xi is solvable, in enumeration order."""
    img = sorted({(t ** 3 + t * t).idx for t in F.elements()})
    return [F.from_index(i) for i in img]


def _semidirect_on(P: LieAlgebra, matrices: Sequence[Matrix], R: LieAlgebra,
                   name: str) -> LieAlgebra:
    return semidirect_sum(P, Representation(P, list(matrices)), R, name=name)


def _trivial_plus(rep: Representation, before: int, after: int) -> list[Matrix]:
    """Extend each action matrix by zero blocks on extra trivial coordinates."""
    F = rep.source.field
    d = rep.dim + before + after
    out = []
    for M in rep.matrices:
        rows = [[F.zero] * d for _ in range(d)]
        for a in range(rep.dim):
            for b in range(rep.dim):
                rows[before + a][before + b] = M.entries[a][b]
        out.append(Matrix(F, rows))
    return out


def build(label: Union[ClassLabel, str], F: FieldSpec) -> LieAlgebra:
    """Construct the algebra of a class label over F (validated)."""
    if isinstance(label, str):
        label = parse_label(F, label)
    thm, item, params = label.theorem, label.item, label.params
    p = F.p
    key = (thm, item)
    name = str(label)

    def need(cond: bool, why: str):
        if not cond:
            raise CatalogError(f"label {label} not valid over {F!r}: {why}")

    # --- dimension 3 ---------------------------------------------------
    if thm == "T3.1":
        if item == "sl2":
            need(p >= 3, "sl2 normal form is the odd-characteristic class")
            return sl2(F)
        if item == "w121":
            need(p == 2, "the small Witt derived algebra is the p=2 class")
            return witt_derived(F, 2)
    if thm == SOLVABLE3_THEOREM:
        return solvable3(F, item, params[0] if params else None)

    # --- dimension 4 ---------------------------------------------------
    if thm == "T4.1":
        if item == "gl2":
            need(p >= 3, "p >= 3")
            return gl2(F)
        if item == "w12":
            need(p == 2, "p = 2")
            return witt(F, 2)
        if item == "w121z":
            need(p == 2, "p = 2")
            return direct_sum(witt_derived(F, 2), abelian(F, 1), name=name)

    # --- dimension 5, characteristic 2 ----------------------------------
    if thm == "T4.2":
        need(p == 2, "p = 2")
        if item == "1":
            return der_W121(F)
        if item in ("2a", "2b"):
            W = witt(F, 2)
            delta = F.zero if item == "2a" else F.one
            mats = [Matrix(F, [[F.zero]]) for _ in range(3)] + \
                   [Matrix(F, [[delta]])]
            return _semidirect_on(W, mats, abelian(F, 1), name)
        if item == "3a":
            return direct_sum(witt_derived(F, 2), abelian(F, 2), name=name)
        if item == "3b":
            return direct_sum(witt_derived(F, 2), aff1(F), name=name)

    # --- dimension 5, odd characteristic --------------------------------
    if thm == "T4.3":
        need(p >= 3, "p >= 3")
        if item == "1":
            need(p == 5, "W(1;1) is 5-dimensional only for p = 5")
            return witt(F, 1)
        if item == "2a":
            return direct_sum(sl2(F), abelian(F, 2), name=name)
        if item == "2b":
            return direct_sum(sl2(F), aff1(F), name=name)
        if item == "2c":
            return _semidirect_on(sl2(F), module_V(F, 1).matrices,
                                  abelian(F, 2), name)
        if item == "3":
            need(p == 3, "the nonsplit extension exists only for p = 3")
            return L1_nonsplit(F)

    # --- dimension 6, characteristic 2 ----------------------------------
    if thm == "T6.1":
        need(p == 2, "p = 2")
        if item == "1a":
            S = witt_derived(F, 2)
            return direct_sum(S, S, name=name)
        if item == "1b":
            big = GF(2, 2 * F.m)
            return restrict_scalars(witt_derived(big, 2), F, name=name)
        if item in ("2a", "2b"):
            D = der_W121(F)
            delta = F.zero if item == "2a" else F.one
            mats = [Matrix(F, [[F.zero]]) for _ in range(5)]
            mats[DER_W121_D2] = Matrix(F, [[delta]])
            return _semidirect_on(D, mats, abelian(F, 1), name)
        if item.startswith("3a"):
            W = witt(F, 2)
            M = _t61_item3_matrix(F, item, params)
            Z = Matrix.zero(F, 2, 2)
            mats = [Z, Z, Z, M]
            return _semidirect_on(W, mats, abelian(F, 2), name)
        if item == "3b":
            return direct_sum(witt(F, 2), aff1(F), name=name)
        if item == "4a":
            need(len(params) == 1 and isinstance(params[0], ClassLabel),
                 "item 4a takes a solvable radical label")
            R = build(params[0], F)
            return direct_sum(witt_derived(F, 2), R, name=name)
        if item == "4b":
            dp = divided_power_module(F, 2)
            W = dp.witt
            S = witt_derived(F, 2)  # basis = first three Witt exponents
            mats = dp.quotient_rep.matrices[:3]
            return _semidirect_on(S, mats, abelian(F, 3), name)
        if item == "4c":
            sc = {
                (0, 1): [1, 0, 0, 0, 0, 1],  # [e,h] = e + v3  (char 2)
                (0, 2): [0, 1, 0, 0, 0, 0],  # [e,f] = h
                (0, 4): [0, 0, 0, 1, 0, 0],  # [e,v2] = v1
                (0, 5): [0, 0, 0, 0, 1, 0],  # [e,v3] = v2
                (1, 2): [0, 0, 1, 0, 0, 0],  # [h,f] = f
                (1, 3): [0, 0, 0, 1, 0, 0],  # [h,v1] = v1
                (1, 5): [0, 0, 0, 0, 0, 1],  # [h,v3] = v3
                (2, 3): [0, 0, 0, 0, 1, 0],  # [f,v1] = v2
                (2, 4): [0, 0, 0, 0, 0, 1],  # [f,v2] = v3
            }
            return new_algebra(F, 6, sc, name=name,
                               basis_names=("e", "h", "f", "v1", "v2", "v3"))

    # --- dimension 6, odd characteristic --------------------------------
    if thm == "T6.2":
        need(p >= 3, "p >= 3")
        if item == "1a":
            return direct_sum(sl2(F), sl2(F), name=name)
        if item == "1b":
            big = GF(p, 2 * F.m)
            return restrict_scalars(sl2(big), F, name=name)
        if item == "2a":
            need(p == 5, "p = 5")
            return direct_sum(witt(F, 1), abelian(F, 1), name=name)
        if item == "2b":
            need(p == 5, "p = 5")
            return witt_central_ext(F)

    if thm == "T6.3":
        need(p >= 3, "p >= 3")
        P = sl2(F)
        if item == "1":
            need(len(params) == 1 and isinstance(params[0], ClassLabel),
                 "item 1 takes a solvable radical label")
            return direct_sum(P, build(params[0], F), name=name)
        if item == "2a":
            mats = _trivial_plus(module_V(F, 1), 0, 1)
            return _semidirect_on(P, mats, abelian(F, 3), name)
        if item == "2b":
            return _semidirect_on(P, module_V(F, 2).matrices, abelian(F, 3), name)
        if item == "3a":
            need(p == 3, "nonrestricted 3-dim modules require p = 3")
            need(len(params) == 1, "item 3a takes the character parameter xi")
            return _semidirect_on(P, module_V2chi(F, params[0]).matrices,
                                  abelian(F, 3), name)
        if item in ("3b", "3c"):
            need(p == 3, "p = 3")
            dp = divided_power_module(F, 1)
            rep = dp.full_rep  # W(1;1) = sl2 via (e,h,f) = (d, xd, x2d)
            mats = rep.matrices
            if item == "3c":
                mats = [M.transpose().scale(-F.one) for M in mats]
            return _semidirect_on(P, mats, abelian(F, 3), name)
        if item == "4":
            mats = _trivial_plus(module_V(F, 1), 0, 1)
            R = new_algebra(F, 3, {(0, 1): [0, 0, 1]})  # [v0,v1] = z
            return _semidirect_on(P, mats, R, name)
        if item == "5":
            need(p == 3, "p = 3")
            dp = divided_power_module(F, 1)
            R = new_algebra(F, 3, {(1, 2): [1, 0, 0]})  # [x, x^(2)] = 1
            return _semidirect_on(P, dp.full_rep.matrices, R, name)
        if item == "6":
            mats = _trivial_plus(module_V(F, 1), 1, 0)
            R = new_algebra(F, 3, {(0, 1): [0, 1, 0], (0, 2): [0, 0, 1]})
            return _semidirect_on(P, mats, R, name)

    if thm == "T6.4":
        need(p == 3, "p = 3")
        if item in ("1a", "1b", "1c"):
            case = {"1a": "00", "1b": "01", "1c": "10"}[item]
            L = L1_central_ext(F, case)
            return LieAlgebra(L.field, L.dim,
                              _sc_of(L), name=name, basis_names=L.basis_names)
        if item in ("2a", "2b"):
            base = L1_nonsplit(F)
            sc = {}
            for i in range(5):
                for j in range(i + 1, 5):
                    sc[(i, j)] = tuple(base.table[i][j]) + (F.zero,)
            if item == "2a":
                sc[(0, 5)] = [0, 0, 0, 0, -1, 0]   # [e, d] = -v1
            else:
                sc[(2, 5)] = [0, 0, 0, -1, 0, 0]   # [f, d] = -v0
            return new_algebra(F, 6, sc, name=name,
                               basis_names=("e", "h", "f", "v0", "v1", "d"))

    raise CatalogError(f"unknown label {label} for characteristic {p}")


def _sc_of(L: LieAlgebra) -> dict:
    return {(i, j): L.table[i][j] for i in range(L.dim)
            for j in range(i + 1, L.dim)
            if any(not c.is_zero() for c in L.table[i][j])}


def _t61_item3_matrix(F: FieldSpec, item: str, params) -> Matrix:
    if item == "3a-zero":
        return Matrix.zero(F, 2, 2)
    if item == "3a-nil":
        return Matrix(F, [[0, 1], [0, 0]])
    if item == "3a-id":
        return Matrix.identity(F, 2)
    if item == "3a-uni":
        return Matrix(F, [[1, 1], [0, 1]])
    if item == "3a":
        if len(params) != 1:
            raise CatalogError("item 3a takes the parameter xi in k*")
        xi = F.el(params[0])
        if xi.is_zero():
            raise CatalogError("item 3a requires nonzero xi")
        return Matrix(F, [[0, xi], [1, 1]])
    raise CatalogError(f"unknown item {item!r}")
