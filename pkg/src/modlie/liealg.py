"""Structure-constant Lie algebras over a FieldSpec and their invariants.

A LieAlgebra is a dimension plus the bracket table [b_i, b_j] for i < j;
antisymmetry is built in and the Jacobi identity is verified at every
construction site (hand-entered tables are the main error source, so
construction is fail-fast).  On top of that this module provides the
structural series, radical, center, centroid, derivations, quotients, and
the three composition constructions (direct sum, semidirect sum by a
representation, scalar central extension) plus restriction of scalars.

The radical is computed from first principles valid in every characteristic:
a nonzero solvable single-generator ideal closure yields a nonzero abelian
ideal (the last term of its derived series), the algebra is reduced modulo
it, and the search repeats; if no vector generates a solvable ideal the
radical is zero.  This returns exactly the sum of all solvable ideals, i.e.
the value of the exhaustive q^n closure sweep, but exits early on the first
witness.  Killing-form shortcuts are deliberately avoided (they fail for
p = 2, 3).
"""

from __future__ import annotations

import json
import os
from dataclasses import dataclass
from itertools import combinations
from typing import Callable, Mapping, Optional, Sequence

from . import _core
from .fields import FieldElement, FieldSpec, make_field
from .linalg import (Matrix, Subspace, Vector, kernel, vec, vec_add, vec_is_zero,
                     vec_scale, zero_vec)

DEFAULT_SWEEP_BUDGET = 2_000_000


class JacobiError(ValueError):
    """Jacobi identity fails; carries the offending basis triple."""

    def __init__(self, triple: tuple[int, int, int], defect):
        self.triple = triple
        self.defect = defect
        super().__init__(f"Jacobi identity fails on basis triple {triple}: "
                         f"defect {defect}")


class AlgebraError(ValueError):
    """Malformed structure constants or invalid operands."""


class BudgetError(RuntimeError):
    """An exhaustive sweep exceeded its vector budget."""


def sweep_budget(budget: Optional[int] = None) -> int:
    if budget is not None:
        return budget
    env = os.environ.get("LIE_SMALL_BUDGET")
    return int(env) if env else DEFAULT_SWEEP_BUDGET


class LieAlgebra:
    """Lie algebra given by structure constants on a fixed basis.

    ``sc`` maps basis pairs (i, j) with i < j to the coordinate vector of
    [b_i, b_j]; omitted pairs are zero.  Values may be FieldElements or
    plain ints (embedded mod p).
    """

    __slots__ = ("field", "dim", "name", "table", "basis_names", "_fast_view")

    def __init__(self, field: FieldSpec, dim: int,
                 sc: Mapping[tuple[int, int], Sequence] | None = None,
                 name: Optional[str] = None,
                 basis_names: Optional[Sequence[str]] = None,
                 validate: bool = True):
        if dim < 0:
            raise AlgebraError("negative dimension")
        self.field = field
        self.dim = dim
        self.name = name
        self.basis_names = tuple(basis_names) if basis_names else None
        z = zero_vec(field, dim)
        table = [[z] * dim for _ in range(dim)]
        for (i, j), coords in (sc or {}).items():
            if not 0 <= i < j < dim:
                raise AlgebraError(f"bad basis pair ({i},{j})")
            v = vec(field, coords)
            if len(v) != dim:
                raise AlgebraError(f"bracket [{i},{j}] has {len(v)} coordinates, "
                                   f"expected {dim}")
            table[i][j] = v
            table[j][i] = vec_scale(-field.one, v)
        self.table = tuple(tuple(row) for row in table)
        self._fast_view = None
        if validate:
            self.check_jacobi()

    # -- basic structure ------------------------------------------------

    def basis_vector(self, i: int) -> Vector:
        return tuple(self.field.one if j == i else self.field.zero
                     for j in range(self.dim))

    def bracket(self, x: Sequence, y: Sequence) -> Vector:
        x = vec(self.field, x)
        y = vec(self.field, y)
        if len(x) != self.dim or len(y) != self.dim:
            raise AlgebraError("vector dimension mismatch")
        acc = zero_vec(self.field, self.dim)
        for i in range(self.dim):
            xi = x[i]
            if xi.is_zero():
                continue
            row = self.table[i]
            for j in range(self.dim):
                yj = y[j]
                if not yj.is_zero():
                    c = row[j]
                    if not vec_is_zero(c):
                        acc = vec_add(acc, vec_scale(xi * yj, c))
        return acc

    def ad(self, x: Sequence) -> Matrix:
        """Matrix of y -> [x, y] in the defining basis."""
        cols = [self.bracket(x, self.basis_vector(j)) for j in range(self.dim)]
        return Matrix(self.field, [[cols[j][r] for j in range(self.dim)]
                                   for r in range(self.dim)])

    def check_jacobi(self):
        for i, j, k in combinations(range(self.dim), 3):
            s = vec_add(vec_add(
                self.bracket(self.table[i][j], self.basis_vector(k)),
                self.bracket(self.table[j][k], self.basis_vector(i))),
                self.bracket(self.table[k][i], self.basis_vector(j)))
            if not vec_is_zero(s):
                raise JacobiError((i, j, k), s)

    def full_space(self) -> Subspace:
        return Subspace.full(self.field, self.dim)

    def zero_space(self) -> Subspace:
        return Subspace.zero(self.field, self.dim)

    def fast(self) -> _core.FastAlgebra:
        if self._fast_view is None:
            self._fast_view = _core.FastAlgebra(self.field, self.dim, self.table)
        return self._fast_view

    def __eq__(self, other) -> bool:
        """Entry-wise equality of structure constants (same basis order)."""
        return (isinstance(other, LieAlgebra) and self.field == other.field
                and self.dim == other.dim and self.table == other.table)

    def __hash__(self) -> int:
        return hash((self.field.key(), self.dim,
                     tuple(tuple(tuple(e.idx for e in v) for v in row)
                           for row in self.table)))

    def __repr__(self) -> str:
        label = self.name or "LieAlgebra"
        return f"{label}(dim {self.dim} over {self.field!r})"


def new_algebra(field: FieldSpec, dim: int,
                sc: Mapping[tuple[int, int], Sequence],
                name: Optional[str] = None,
                basis_names: Optional[Sequence[str]] = None) -> LieAlgebra:
    """Validated construction; raises JacobiError naming the bad triple."""
    return LieAlgebra(field, dim, sc, name=name, basis_names=basis_names)


def abelian(field: FieldSpec, dim: int, name: Optional[str] = None) -> LieAlgebra:
    return LieAlgebra(field, dim, {}, name=name or f"abelian{dim}")


# ---------------------------------------------------------------------------
# Subspace-level structure
# ---------------------------------------------------------------------------

def product_space(L: LieAlgebra, U: Subspace, V: Subspace) -> Subspace:
    """span{[u, v] : u in basis U, v in basis V}, in RREF."""
    gens = [L.bracket(u, v) for u in U.basis for v in V.basis]
    return Subspace(L.field, L.dim, gens)


def derived_series(L: LieAlgebra, U: Optional[Subspace] = None) -> list[Subspace]:
    """U >= [U,U] >= ... until stabilization (defaults to U = L)."""
    cur = U if U is not None else L.full_space()
    out = [cur]
    while True:
        nxt = product_space(L, cur, cur)
        if nxt.dim == cur.dim:
            break
        out.append(nxt)
        cur = nxt
        if cur.dim == 0:
            break
    return out

def lower_central_series(L: LieAlgebra, U: Optional[Subspace] = None) -> list[Subspace]:
    top = U if U is not None else L.full_space()
    out = [top]
    cur = top
    while True:
        nxt = product_space(L, top, cur)
        if nxt.dim == cur.dim:
            break
        out.append(nxt)
        cur = nxt
        if cur.dim == 0:
            break
    return out


def is_solvable(L: LieAlgebra, U: Optional[Subspace] = None) -> bool:
    return derived_series(L, U)[-1].dim == 0


def is_nilpotent(L: LieAlgebra, U: Optional[Subspace] = None) -> bool:
    return lower_central_series(L, U)[-1].dim == 0


def center(L: LieAlgebra) -> Subspace:
    if L.dim == 0:
        return L.zero_space()
    rows = [row for i in range(L.dim) for row in L.ad(L.basis_vector(i)).entries]
    return kernel(Matrix(L.field, rows))


def centralizer(L: LieAlgebra, U: Subspace) -> Subspace:
    """{x : [x, U] = 0}."""
    if U.dim == 0:
        return L.full_space()
    rows = [row for u in U.basis for row in L.ad(u).entries]
    return kernel(Matrix(L.field, rows))


def ideal_closure(L: LieAlgebra, v: Sequence) -> Subspace:
    """Smallest ideal containing v (iterate U <- U + [L, U])."""
    vv = vec(L.field, v)
    if vec_is_zero(vv):
        return L.zero_space()
    ib = _core.ideal_closure_int(L.fast(), tuple(e.idx for e in vv))
    return _int_rows_to_subspace(L, ib.rows)


def is_ideal(L: LieAlgebra, U: Subspace) -> bool:
    return U.contains(product_space(L, L.full_space(), U))


def _int_rows_to_subspace(L: LieAlgebra, rows) -> Subspace:
    F = L.field
    return Subspace(F, L.dim, [[F.from_index(x) for x in r] for r in rows])


def _subspace_to_int_rows(U: Subspace) -> list[tuple[int, ...]]:
    return [tuple(e.idx for e in b) for b in U.basis]


# ---------------------------------------------------------------------------
# Quotients and subalgebras
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class QuotientMap:
    """A quotient algebra L/I with its projection and a linear section."""

    algebra: LieAlgebra
    ideal: Subspace
    lift_coords: tuple[int, ...]  # ambient coordinates carrying the complement

    def project(self, v: Sequence) -> Vector:
        red = self.ideal.reduce(v)
        return tuple(red[c] for c in self.lift_coords)

    def lift(self, w: Sequence) -> Vector:
        F = self.algebra.field
        out = [F.zero] * self.ideal.ambient
        for c, val in zip(self.lift_coords, w):
            out[c] = F.el(val)
        return tuple(out)

    def preimage(self, S: Subspace) -> Subspace:
        gens = list(self.ideal.basis) + [self.lift(s) for s in S.basis]
        return Subspace(self.algebra.field, self.ideal.ambient, gens)


def quotient(L: LieAlgebra, I: Subspace, check: bool = True,
             name: Optional[str] = None) -> QuotientMap:
    """L/I on the non-pivot complement coordinates of I's RREF basis."""
    if check and not is_ideal(L, I):
        raise AlgebraError("quotient by a non-ideal")
    comp = I.complement_coords()
    d = len(comp)
    F = L.field

    def proj(v: Vector) -> Vector:
        red = I.reduce(v)
        return tuple(red[c] for c in comp)

    sc = {}
    for a in range(d):
        for b in range(a + 1, d):
            w = proj(L.bracket(L.basis_vector(comp[a]), L.basis_vector(comp[b])))
            if not vec_is_zero(w):
                sc[(a, b)] = w
    Q = LieAlgebra(F, d, sc, name=name or (f"{L.name}/I" if L.name else None))
    return QuotientMap(Q, I, comp)


def subalgebra_constants(L: LieAlgebra, U: Subspace,
                         name: Optional[str] = None) -> LieAlgebra:
    """U with its induced bracket in U's RREF basis (U must be closed)."""
    d = U.dim
    sc = {}
    for a in range(d):
        for b in range(a + 1, d):
            w = L.bracket(U.basis[a], U.basis[b])
            coords = U.coordinates(w)
            if coords is None:
                raise AlgebraError("subspace is not closed under the bracket")
            if not vec_is_zero(coords):
                sc[(a, b)] = coords
    return LieAlgebra(L.field, d, sc, name=name)


# ---------------------------------------------------------------------------
# Radical, simplicity
# ---------------------------------------------------------------------------

def radical(L: LieAlgebra, budget: Optional[int] = None) -> Subspace:
    """The unique maximal solvable ideal.

    Equals the sum of all solvable single-generator ideal closures; computed
    by repeatedly quotienting out witnesses (center, centroid idempotent
    split, or the abelian core of the first solvable closure found in a
    projective sweep).  Exhausting the sweep certifies radical zero.
    """
    bud = sweep_budget(budget)
    if _core.projective_count(L.field.order, max(L.dim, 1)) > bud:
        raise BudgetError(f"radical sweep over {L.field.order}^{L.dim} vectors "
                          f"exceeds budget {bud}")
    return _radical_impl(L, bud)


def _radical_impl(L: LieAlgebra, bud: int) -> Subspace:
    if L.dim == 0:
        return L.zero_space()
    if is_solvable(L):
        return L.full_space()
    if L.dim <= 3:
        # a nonzero radical would leave a nonsolvable quotient of dim < 3
        return L.zero_space()

    Z = center(L)
    if Z.dim > 0:
        qm = quotient(L, Z, check=False)
        return qm.preimage(_radical_impl(qm.algebra, bud))

    split = _centroid_idempotent_split(L)
    if split is not None:
        U1, U2 = split
        parts = []
        for U in (U1, U2):
            sub = subalgebra_constants(L, U)
            rad_sub = _radical_impl(sub, bud)
            parts.extend(_combine(U, rad_sub))
        return Subspace(L.field, L.dim, parts)

    if _centroid_field_small(L):
        # the centroid contains a field K of degree d > 1 with dim_K(L) <= 3;
        # the radical is K-stable, so it equals the K-radical, and a
        # nonsolvable algebra of K-dimension <= 3 has radical zero
        return L.zero_space()

    fast = L.fast()
    fold = _centroid_field_fold(L)
    seen: set[tuple[int, ...]] = set()
    count = 0
    for v in _core.projective_vectors(L.field, L.dim):
        if fold is not None and v in seen:
            continue
        count += 1
        if count > bud:
            raise BudgetError(f"radical sweep exceeded budget {bud}")
        ib = _core.ideal_closure_int(fast, v)
        if _core.is_solvable_span_int(fast, ib.rows):
            core = _core.last_derived_term_int(fast, ib.rows)
            A = _int_rows_to_subspace(L, core)
            qm = quotient(L, A, check=False)
            return qm.preimage(_radical_impl(qm.algebra, bud))
        if fold is not None:
            w = _core.normalize_projective(L.field, _int_apply(L.field, fold, v))
            while w != v:
                seen.add(w)
                w = _core.normalize_projective(L.field, _int_apply(L.field, fold, w))
    return L.zero_space()


def _combine(U: Subspace, S: Subspace) -> list[Vector]:
    """Map a subspace S of the U-coordinate algebra back into the ambient."""
    out = []
    F = U.field
    for s in S.basis:
        v = zero_vec(F, U.ambient)
        for c, b in zip(s, U.basis):
            if not c.is_zero():
                v = vec_add(v, vec_scale(c, b))
        out.append(v)
    return out


def _int_apply(field: FieldSpec, M, v) -> tuple[int, ...]:
    add, mul = field._add, field._mul
    n = len(v)
    out = []
    for r in range(n):
        acc = 0
        row = M[r]
        for j in range(n):
            if v[j] and row[j]:
                acc = add[acc][mul[row[j]][v[j]]]
        out.append(acc)
    return tuple(out)


def _centroid_matrices_int(L: LieAlgebra) -> list[tuple[tuple[int, ...], ...]]:
    """Int-encoded basis of {f : f ad(b_i) = ad(b_i) f for all i}."""
    n = L.dim
    if n == 0:
        return []
    field = L.field
    fast = L.fast()
    add, mul, neg = field._add, field._mul, field._neg
    rows = []
    for i in range(n):
        A = fast.adm[i]  # A[r][j]
        # (f A - A f)[r][s] = sum_j f[r][j] A[j][s] - A[r][j] f[j][s]
        for r in range(n):
            for s in range(n):
                row = [0] * (n * n)
                for j in range(n):
                    if A[j][s]:
                        row[r * n + j] = add[row[r * n + j]][A[j][s]]
                    if A[r][j]:
                        row[j * n + s] = add[row[j * n + s]][neg[A[r][j]]]
                if any(row):
                    rows.append(tuple(row))
    if not rows:
        # no constraints: full matrix space
        basis = []
        for a in range(n * n):
            e = [0] * (n * n)
            e[a] = 1
            basis.append(tuple(e))
        return [_unflatten(b, n) for b in basis]
    ker = _core.int_kernel(field, rows, n * n)
    return [_unflatten(b, n) for b in ker]


def _unflatten(flat, n):
    return tuple(tuple(flat[r * n + s] for s in range(n)) for r in range(n))


def centroid(L: LieAlgebra) -> Subspace:
    """The centroid as a subspace of flattened n x n matrices (RREF basis)."""
    mats = _centroid_matrices_int(L)
    F = L.field
    n = L.dim
    flat = [[F.from_index(m[r][s]) for r in range(n) for s in range(n)] for m in mats]
    return Subspace(F, n * n, flat)


def centroid_matrices(L: LieAlgebra) -> list[Matrix]:
    F = L.field
    return [Matrix(F, [[F.from_index(x) for x in row] for row in m])
            for m in _centroid_matrices_int(L)]


def _centroid_idempotent_split(L: LieAlgebra) -> Optional[tuple[Subspace, Subspace]]:
    """A proper ideal decomposition L = im(e) + ker(e) from a centroid idempotent."""
    mats = _centroid_matrices_int(L)
    if len(mats) < 2 or len(mats) > 3:
        return None
    field = L.field
    n = L.dim
    from itertools import product as iproduct
    idmat = tuple(tuple(1 if r == s else 0 for s in range(n)) for r in range(n))
    add, mul = field._add, field._mul

    def mat_add(A, B):
        return tuple(tuple(add[A[r][s]][B[r][s]] for s in range(n)) for r in range(n))

    def mat_scale(c, A):
        return tuple(tuple(mul[c][A[r][s]] for s in range(n)) for r in range(n))

    def mat_mul(A, B):
        return tuple(tuple(_dot(field, A[r], tuple(B[j][s] for j in range(n)))
                           for s in range(n)) for r in range(n))

    zero = tuple(tuple(0 for _ in range(n)) for _ in range(n))
    for coeffs in iproduct(range(field.order), repeat=len(mats)):
        c = zero
        for co, M in zip(coeffs, mats):
            if co:
                c = mat_add(c, mat_scale(co, M))
        if c == zero or c == idmat:
            continue
        if mat_mul(c, c) == c:
            e = Matrix(field, [[field.from_index(x) for x in row] for row in c])
            U1 = Subspace(field, n, [e.col(j) for j in range(n)])
            U2 = kernel(e)
            if 0 < U1.dim < n:
                return U1, U2
    return None


def _centroid_field_small(L: LieAlgebra) -> bool:
    """Is there a centroid subfield k[c] of degree d > 1 with dim/d <= 3?

    Only degrees 2 and 3 are tested (rootless minimal polynomial), which is
    all that can occur at dimension <= 6 with a quotient of dimension >= 2.
    """
    from .fields import Poly, roots_univariate
    mats = _centroid_matrices_int(L)
    if len(mats) < 2:
        return False
    F = L.field
    n = L.dim
    for m in mats:
        M = Matrix(F, [[F.from_index(x) for x in row] for row in m])
        # minimal polynomial by first linear dependence among powers
        basis = _core.IntBasis(F, n * n)
        powers = [Matrix.identity(F, n)]
        flat = lambda A: tuple(A.entries[i][j].idx for i in range(n) for j in range(n))
        basis.add(flat(powers[0]))
        deg = None
        while True:
            nxt = powers[-1] * M
            if basis.add(flat(nxt)) is None:
                deg = len(powers)
                break
            powers.append(nxt)
            if len(powers) > n:
                break
        if deg is None or deg < 2 or deg > 3 or n % deg or n // deg > 3:
            continue
        # coefficients of the dependence: solve sum a_k M^k = M^deg
        rows = [[powers[k].entries[i][j] for k in range(deg)]
                for i in range(n) for j in range(n)]
        target = powers[deg - 1] * M
        rhsv = [target.entries[i][j] for i in range(n) for j in range(n)]
        from .linalg import solve as lin_solve
        co = lin_solve(Matrix(F, rows), rhsv)
        if co is None:
            continue
        # minpoly = T^deg - sum co_k T^k; irreducible iff rootless (deg 2, 3)
        coeffs = [-c for c in co] + [F.one]
        if not roots_univariate(Poly(F, coeffs)):
            return True
    return False


def _centroid_field_fold(L: LieAlgebra):
    """An invertible non-scalar centroid matrix (int rows), if one exists.

    Used to fold radical sweeps by the centroid field action: ideal closures
    of c-orbit mates coincide up to the invertible module map c.
    """
    mats = _centroid_matrices_int(L)
    if len(mats) < 2:
        return None
    n = L.dim
    idmat = tuple(tuple(1 if r == s else 0 for s in range(n)) for r in range(n))
    field = L.field
    for m in mats:
        if m == idmat:
            continue
        diag0 = m[0][0]
        scalar = tuple(tuple(diag0 if r == s else 0 for s in range(n)) for r in range(n))
        if m == scalar:
            continue
        M = Matrix(field, [[field.from_index(x) for x in row] for row in m])
        if M.is_invertible():
            return m
    return None


def _dot(field: FieldSpec, a, b) -> int:
    add, mul = field._add, field._mul
    acc = 0
    for x, y in zip(a, b):
        if x and y:
            acc = add[acc][mul[x][y]]
    return acc


def is_simple(L: LieAlgebra, budget: Optional[int] = None) -> bool:
    """Non-abelian with no proper nonzero ideal (exhaustive closure sweep)."""
    if L.dim == 0 or all(vec_is_zero(L.table[i][j])
                         for i in range(L.dim) for j in range(L.dim)):
        return False
    bud = sweep_budget(budget)
    if _core.projective_count(L.field.order, L.dim) > bud:
        raise BudgetError("simplicity sweep exceeds budget")
    fast = L.fast()
    for v in _core.projective_vectors(L.field, L.dim):
        if _core.ideal_closure_int(fast, v).rank < L.dim:
            return False
    return True


def is_perfect(L: LieAlgebra) -> bool:
    return product_space(L, L.full_space(), L.full_space()).dim == L.dim


# ---------------------------------------------------------------------------
# Derivations
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class DerivationAlgebra:
    """Der(L) with explicit matrices and the inner-derivation embedding."""

    algebra: LieAlgebra          # bracket = matrix commutator, in the Der basis
    matrices: tuple[Matrix, ...]  # Der basis as n x n matrices over L's field
    inner: Matrix                # dimDer x n matrix: column i = coords of ad(b_i)

    @property
    def dim(self) -> int:
        return len(self.matrices)


def derivation_dimension(L: LieAlgebra) -> int:
    """dim Der(L) from the linear system alone (no algebra construction)."""
    return len(_derivation_kernel(L))


def _derivation_kernel(L: LieAlgebra) -> list[tuple[int, ...]]:
    """Int-encoded RREF basis of the derivation condition kernel.

    Unknowns D[a][b] (flattened a*n+b) with (Dv)_a = sum_b D[a][b] v_b;
    equations D[b_i,b_j] = [Db_i, b_j] + [b_i, Db_j] for i < j.
    """
    n = L.dim
    if n == 0:
        return []
    field = L.field
    fast = L.fast()
    add, neg = field._add, field._neg
    rows = []
    for i in range(n):
        for j in range(i + 1, n):
            cij = fast.c[i][j]
            for r in range(n):
                row = [0] * (n * n)
                for s in range(n):
                    if cij[s]:
                        row[r * n + s] = add[row[r * n + s]][cij[s]]
                    if fast.c[s][j][r]:
                        row[s * n + i] = add[row[s * n + i]][neg[fast.c[s][j][r]]]
                    if fast.c[i][s][r]:
                        row[s * n + j] = add[row[s * n + j]][neg[fast.c[i][s][r]]]
                if any(row):
                    rows.append(tuple(row))
    if not rows:
        return [tuple(1 if t == a else 0 for t in range(n * n)) for a in range(n * n)]
    return _core.int_kernel(field, rows, n * n)


def derivation_algebra(L: LieAlgebra) -> DerivationAlgebra:
    """Der(L) as a Lie algebra of matrices under the commutator.

    The Jacobi identity holds identically for matrix commutators, so the
    result is only revalidated at dimensions <= 10 (Der of an abelian
    algebra is the full matrix algebra, too large to triple-check).
    """
    field = L.field
    n = L.dim
    ker = _derivation_kernel(L)
    d = len(ker)
    basis_flat = _core.int_rref(field, [list(k) for k in ker]) if ker else None
    flat_rows = basis_flat.rows if basis_flat else []
    pivots = basis_flat.pivots if basis_flat else []

    def coords(flat) -> list[int]:
        """Coordinates in the RREF kernel basis via pivot reading."""
        add, mul, neg = field._add, field._mul, field._neg
        w = list(flat)
        out = []
        for row, c in zip(flat_rows, pivots):
            f = w[c]
            out.append(f)
            if f:
                nf = neg[f]
                for t in range(len(w)):
                    if row[t]:
                        w[t] = add[w[t]][mul[nf][row[t]]]
        if any(w):
            raise AlgebraError("matrix outside the derivation space")
        return out

    mats = [Matrix(field, [[field.from_index(r[a * n + b]) for b in range(n)]
                           for a in range(n)]) for r in flat_rows]

    def flatten(M: Matrix):
        return [M.entries[a][b].idx for a in range(n) for b in range(n)]

    sc = {}
    for a in range(d):
        for b in range(a + 1, d):
            comm = mats[a] * mats[b] - mats[b] * mats[a]
            co = coords(flatten(comm))
            if any(co):
                sc[(a, b)] = [field.from_index(x) for x in co]
    alg = LieAlgebra(field, d, sc, name=f"Der({L.name})" if L.name else "Der",
                     validate=d <= 10)
    inner_cols = []
    for i in range(n):
        inner_cols.append([field.from_index(x)
                           for x in coords(flatten(L.ad(L.basis_vector(i))))])
    inner = Matrix(field, [[inner_cols[i][r] for i in range(n)]
                           for r in range(d)]) if d else Matrix(field, [])
    return DerivationAlgebra(alg, tuple(mats), inner)


# ---------------------------------------------------------------------------
# Representations, cocycles, compositions
# ---------------------------------------------------------------------------

class Representation:
    """Action matrices rho(b_i) on a module; checked to be a homomorphism."""

    __slots__ = ("source", "dim", "matrices")

    def __init__(self, source: LieAlgebra, matrices: Sequence[Matrix],
                 validate: bool = True):
        if len(matrices) != source.dim:
            raise AlgebraError("one action matrix per basis element required")
        dims = {(m.rows, m.cols) for m in matrices}
        if len(dims) > 1 or any(m.rows != m.cols for m in matrices):
            raise AlgebraError("action matrices must be square of equal size")
        self.source = source
        self.dim = matrices[0].rows if matrices else 0
        self.matrices = tuple(matrices)
        if validate:
            self._check()

    def _check(self):
        for i in range(self.source.dim):
            for j in range(i + 1, self.source.dim):
                lhs = self.act_matrix(self.source.table[i][j])
                rhs = (self.matrices[i] * self.matrices[j]
                       - self.matrices[j] * self.matrices[i])
                if lhs != rhs:
                    raise AlgebraError(f"not a representation on pair ({i},{j})")

    def act_matrix(self, x: Sequence) -> Matrix:
        x = vec(self.source.field, x)
        acc = Matrix.zero(self.source.field, self.dim, self.dim)
        for c, M in zip(x, self.matrices):
            if not c.is_zero():
                acc = acc + M.scale(c)
        return acc

    def acts_by_derivations_of(self, R: LieAlgebra) -> bool:
        if R.dim != self.dim:
            raise AlgebraError("module dimension mismatch")
        for M in self.matrices:
            for a in range(R.dim):
                for b in range(a + 1, R.dim):
                    lhs = M.apply(R.table[a][b])
                    rhs = vec_add(R.bracket(M.apply(R.basis_vector(a)),
                                            R.basis_vector(b)),
                                  R.bracket(R.basis_vector(a),
                                            M.apply(R.basis_vector(b))))
                    if lhs != rhs:
                        return False
        return True


class Cocycle2:
    """Antisymmetric scalar 2-cocycle given by values on basis pairs i < j."""

    __slots__ = ("source", "values")

    def __init__(self, source: LieAlgebra,
                 values: Mapping[tuple[int, int], FieldElement | int],
                 validate: bool = True):
        F = source.field
        vals = {}
        for (i, j), v in values.items():
            if not 0 <= i < j < source.dim:
                raise AlgebraError(f"bad cocycle pair ({i},{j})")
            fv = F.el(v)
            if not fv.is_zero():
                vals[(i, j)] = fv
        self.source = source
        self.values = vals
        if validate:
            self._check()

    def pair_basis(self, i: int, j: int) -> FieldElement:
        F = self.source.field
        if i == j:
            return F.zero
        if i < j:
            return self.values.get((i, j), F.zero)
        return -self.values.get((j, i), F.zero)

    def pair(self, x: Sequence, y: Sequence) -> FieldElement:
        F = self.source.field
        x = vec(F, x)
        y = vec(F, y)
        acc = F.zero
        for i, xi in enumerate(x):
            if xi.is_zero():
                continue
            for j, yj in enumerate(y):
                if not yj.is_zero():
                    acc = acc + xi * yj * self.pair_basis(i, j)
        return acc

    def _check(self):
        L = self.source
        for i, j, k in combinations(range(L.dim), 3):
            s = (self.pair(L.table[i][j], L.basis_vector(k))
                 + self.pair(L.table[j][k], L.basis_vector(i))
                 + self.pair(L.table[k][i], L.basis_vector(j)))
            if not s.is_zero():
                raise AlgebraError(f"cocycle identity fails on triple ({i},{j},{k})")


def direct_sum(A: LieAlgebra, B: LieAlgebra, name: Optional[str] = None) -> LieAlgebra:
    if A.field != B.field:
        raise AlgebraError("direct sum over mixed fields")
    n, m = A.dim, B.dim
    F = A.field
    sc = {}
    for i in range(n):
        for j in range(i + 1, n):
            v = A.table[i][j]
            if not vec_is_zero(v):
                sc[(i, j)] = tuple(v) + zero_vec(F, m)
    for i in range(m):
        for j in range(i + 1, m):
            v = B.table[i][j]
            if not vec_is_zero(v):
                sc[(n + i, n + j)] = zero_vec(F, n) + tuple(v)
    return LieAlgebra(F, n + m, sc, name=name or _compose_name(A, B, "+"))


def semidirect_sum(P: LieAlgebra, rep: Representation, radical_sc: LieAlgebra,
                   name: Optional[str] = None) -> LieAlgebra:
    """P acting on the ideal radical_sc through rep (must act by derivations)."""
    if rep.source is not P and rep.source != P:
        raise AlgebraError("representation source is not the acting algebra")
    if not rep.acts_by_derivations_of(radical_sc):
        raise AlgebraError("action is not by derivations of the ideal")
    n, m = P.dim, radical_sc.dim
    F = P.field
    sc = {}
    for i in range(n):
        for j in range(i + 1, n):
            v = P.table[i][j]
            if not vec_is_zero(v):
                sc[(i, j)] = tuple(v) + zero_vec(F, m)
    for i in range(n):
        M = rep.matrices[i]
        for a in range(m):
            w = M.col(a)
            if not vec_is_zero(w):
                sc[(i, n + a)] = zero_vec(F, n) + tuple(w)
    for a in range(m):
        for b in range(a + 1, m):
            v = radical_sc.table[a][b]
            if not vec_is_zero(v):
                sc[(n + a, n + b)] = zero_vec(F, n) + tuple(v)
    return LieAlgebra(F, n + m, sc, name=name or _compose_name(P, radical_sc, "|x"))


def central_extension(L: LieAlgebra, omega: Cocycle2,
                      name: Optional[str] = None) -> LieAlgebra:
    """[x,y]_new = [x,y] + omega(x,y) z with z central; dim grows by one."""
    if omega.source is not L and omega.source != L:
        raise AlgebraError("cocycle is over a different algebra")
    n = L.dim
    F = L.field
    sc = {}
    for i in range(n):
        for j in range(i + 1, n):
            v = tuple(L.table[i][j]) + (omega.pair_basis(i, j),)
            if not vec_is_zero(v):
                sc[(i, j)] = v
    return LieAlgebra(F, n + 1, sc, name=name or _compose_name(L, None, "ext"))


def _compose_name(A: LieAlgebra, B: Optional[LieAlgebra], op: str) -> Optional[str]:
    if A.name is None or (B is not None and B.name is None):
        return None
    return f"{A.name} {op} {B.name}" if B is not None else f"{op}({A.name})"


def restrict_scalars(L: LieAlgebra, subfield: FieldSpec,
                     name: Optional[str] = None) -> LieAlgebra:
    """View L over GF(p^{2m}) as an algebra over GF(p^m); dimension doubles.

    Basis order: b_0..b_{n-1}, t*b_0..t*b_{n-1} where t is the first element
    of the big field outside the embedded subfield.
    """
    K, k = L.field, subfield
    if K.p != k.p or K.m != 2 * k.m:
        raise AlgebraError("scalar restriction requires a quadratic extension")
    # embed k into K: send k's generator to the first root of k's modulus in K
    kmod = k.modulus
    root = None
    for cand in K.elements():
        acc = K.zero
        for c in reversed(kmod):
            acc = acc * cand + K.el(c)
        if acc.is_zero():
            root = cand
            break
    if root is None:
        raise AlgebraError("subfield modulus has no root in the extension")

    def embed(a: FieldElement) -> FieldElement:
        acc = K.zero
        for c in reversed(a.coeffs):
            acc = acc * root + K.el(c)
        return acc

    embedded = {embed(a).idx for a in k.elements()}
    theta = next(e for e in K.elements() if e.idx not in embedded)

    # K as a k-vector space with basis (1, theta): invert the F_p-linear map
    p, mm = K.p, K.m
    cols = []
    for i in range(k.m):
        cols.append(embed(k.gen ** i).coeffs)
    for i in range(k.m):
        cols.append((theta * embed(k.gen ** i)).coeffs)
    Fp = make_field(p, 1)
    M = Matrix(Fp, [[cols[c][r] for c in range(mm)] for r in range(mm)])
    Minv = M.inverse()

    def split(a: FieldElement) -> tuple[FieldElement, FieldElement]:
        """a = u + theta*w with u, w in the subfield; returns (u, w) as k-elements."""
        coords = Minv.apply([Fp.el(x) for x in a.coeffs])
        lo = k.el([c.idx for c in coords[:k.m]])
        hi = k.el([c.idx for c in coords[k.m:]])
        return lo, hi

    n = L.dim
    sc: dict[tuple[int, int], tuple] = {}
    # scalars attached to the two copies of each basis vector
    scalars = [K.one, theta]

    def entry(ci: int, cj: int, i: int, j: int):
        """structure constants for [scalars[ci] b_i, scalars[cj] b_j]."""
        w = scalars[ci] * scalars[cj]
        out = [k.zero] * (2 * n)
        for r in range(n):
            c = L.table[i][j][r]
            if c.is_zero():
                continue
            lo, hi = split(w * c)
            out[r] = out[r] + lo
            out[n + r] = out[n + r] + hi
        return tuple(out)

    for ci in range(2):
        for cj in range(2):
            for i in range(n):
                for j in range(n):
                    a, b = ci * n + i, cj * n + j
                    if a < b:
                        v = entry(ci, cj, i, j)
                        if not vec_is_zero(v):
                            sc[(a, b)] = v
    return LieAlgebra(k, 2 * n, sc,
                      name=name or (f"{L.name}|{k!r}" if L.name else None))


def change_basis(L: LieAlgebra, M: Matrix, name: Optional[str] = None) -> LieAlgebra:
    """Structure constants in the new basis whose i-th vector is column i of M."""
    if M.rows != L.dim or M.cols != L.dim:
        raise AlgebraError("basis matrix shape mismatch")
    Minv = M.inverse()
    sc = {}
    for i in range(L.dim):
        for j in range(i + 1, L.dim):
            w = Minv.apply(L.bracket(M.col(i), M.col(j)))
            if not vec_is_zero(w):
                sc[(i, j)] = w
    return LieAlgebra(L.field, L.dim, sc, name=name or L.name)


# ---------------------------------------------------------------------------
# Serialization (UTF-8 JSON, canonical bytes)
# ---------------------------------------------------------------------------

def to_json_dict(L: LieAlgebra) -> dict:
    brackets = []
    for i in range(L.dim):
        for j in range(i + 1, L.dim):
            v = L.table[i][j]
            if not vec_is_zero(v):
                brackets.append([i, j, [list(e.coeffs) for e in v]])
    out = {"field": {"p": L.field.p, "m": L.field.m,
                     "modulus": list(L.field.modulus)},
           "dim": L.dim}
    if L.name:
        out["name"] = L.name
    out["brackets"] = brackets
    return out


def to_json(L: LieAlgebra) -> str:
    """Canonical byte-stable serialization (sorted pairs, compact separators)."""
    return json.dumps(to_json_dict(L), separators=(",", ":")) + "\n"


def from_json(data) -> LieAlgebra:
    if isinstance(data, (str, bytes)):
        data = json.loads(data)
    try:
        fd = data["field"]
        field = make_field(fd["p"], fd["m"], fd["modulus"])
        dim = data["dim"]
        sc = {}
        for i, j, coordlists in data["brackets"]:
            if not 0 <= i < j < dim:
                raise AlgebraError(f"bracket pair ({i},{j}) violates i<j antisymmetry "
                                   f"storage")
            if len(coordlists) != dim:
                raise AlgebraError(f"bracket [{i},{j}] has {len(coordlists)} "
                                   f"coordinates, expected {dim}")
            sc[(i, j)] = [field.el(c) for c in coordlists]
    except (KeyError, TypeError) as exc:
        raise AlgebraError(f"malformed algebra file: {exc}") from exc
    return LieAlgebra(field, dim, sc, name=data.get("name"))
