"""Exact dense linear algebra over a FieldSpec for dimensions <= 10.

Everything is immutable and deterministic: subspaces are kept in reduced row
echelon form so equality is syntactic, which downstream code relies on for
canonical fingerprints.  No sparsity, no floating point, no randomness.
"""

from __future__ import annotations

from typing import Iterable, Optional, Sequence

from .fields import FieldElement, FieldSpec, Poly

Vector = tuple[FieldElement, ...]


class ShapeError(ValueError):
    """Inconsistent matrix/vector extents or mixed fields."""


def vec(field: FieldSpec, values: Sequence) -> Vector:
    return tuple(field.el(v) for v in values)


def zero_vec(field: FieldSpec, n: int) -> Vector:
    return (field.zero,) * n


def vec_add(a: Vector, b: Vector) -> Vector:
    return tuple(x + y for x, y in zip(a, b))

def vec_sub(a: Vector, b: Vector) -> Vector:
    return tuple(x - y for x, y in zip(a, b))

def vec_scale(c: FieldElement, a: Vector) -> Vector:
    return tuple(c * x for x in a)

def vec_is_zero(a: Vector) -> bool:
    return all(x.is_zero() for x in a)


class Matrix:
    """Immutable dense matrix with FieldElement entries (row-major)."""

    __slots__ = ("field", "rows", "cols", "entries")

    def __init__(self, field: FieldSpec, entries: Sequence[Sequence]):
        rows = tuple(tuple(field.el(e) for e in row) for row in entries)
        self.field = field
        self.rows = len(rows)
        self.cols = len(rows[0]) if rows else 0
        if any(len(r) != self.cols for r in rows):
            raise ShapeError("ragged rows")
        self.entries = rows

    @classmethod
    def zero(cls, field: FieldSpec, rows: int, cols: int) -> "Matrix":
        return cls(field, [[0] * cols for _ in range(rows)])

    @classmethod
    def identity(cls, field: FieldSpec, n: int) -> "Matrix":
        return cls(field, [[1 if i == j else 0 for j in range(n)] for i in range(n)])

    @classmethod
    def from_cols(cls, field: FieldSpec, cols: Sequence[Sequence]) -> "Matrix":
        return cls(field, [[col[i] for col in cols] for i in range(len(cols[0]))]) if cols \
            else cls(field, [])

    def __getitem__(self, ij: tuple[int, int]) -> FieldElement:
        return self.entries[ij[0]][ij[1]]

    def row(self, i: int) -> Vector:
        return self.entries[i]

    def col(self, j: int) -> Vector:
        return tuple(r[j] for r in self.entries)

    def __add__(self, other: "Matrix") -> "Matrix":
        if (self.rows, self.cols) != (other.rows, other.cols):
            raise ShapeError("shape mismatch in add")
        return Matrix(self.field, [[a + b for a, b in zip(ra, rb)]
                                   for ra, rb in zip(self.entries, other.entries)])

    def __sub__(self, other: "Matrix") -> "Matrix":
        return self + other.scale(-self.field.one)

    def scale(self, c) -> "Matrix":
        c = self.field.el(c)
        return Matrix(self.field, [[c * a for a in row] for row in self.entries])

    def __mul__(self, other: "Matrix") -> "Matrix":
        if self.cols != other.rows:
            raise ShapeError("shape mismatch in mul")
        z = self.field.zero
        out = []
        for i in range(self.rows):
            ri = self.entries[i]
            orow = []
            for j in range(other.cols):
                acc = z
                for k in range(self.cols):
                    a = ri[k]
                    if not a.is_zero():
                        acc = acc + a * other.entries[k][j]
                orow.append(acc)
            out.append(orow)
        return Matrix(self.field, out)

    def apply(self, v: Sequence[FieldElement]) -> Vector:
        """Matrix-vector product M @ v."""
        if self.cols != len(v):
            raise ShapeError("shape mismatch in apply")
        z = self.field.zero
        out = []
        for row in self.entries:
            acc = z
            for a, x in zip(row, v):
                if not a.is_zero():
                    acc = acc + a * x
            out.append(acc)
        return tuple(out)

    def __pow__(self, e: int) -> "Matrix":
        if self.rows != self.cols:
            raise ShapeError("power of non-square matrix")
        acc = Matrix.identity(self.field, self.rows)
        base = self
        while e:
            if e & 1:
                acc = acc * base
            base = base * base
            e >>= 1
        return acc

    def transpose(self) -> "Matrix":
        return Matrix(self.field, [[self.entries[i][j] for i in range(self.rows)]
                                   for j in range(self.cols)])

    def is_zero(self) -> bool:
        return all(e.is_zero() for row in self.entries for e in row)

    def trace(self) -> FieldElement:
        acc = self.field.zero
        for i in range(min(self.rows, self.cols)):
            acc = acc + self.entries[i][i]
        return acc

    def rank(self) -> int:
        return rref(self)[1]

    def is_invertible(self) -> bool:
        return self.rows == self.cols and self.rank() == self.rows

    def inverse(self) -> "Matrix":
        if self.rows != self.cols:
            raise ShapeError("inverse of non-square matrix")
        n = self.rows
        aug = [list(self.entries[i]) + [self.field.one if j == i else self.field.zero
                                        for j in range(n)] for i in range(n)]
        R, rank, _ = _rref_rows(self.field, aug)
        if rank < n:
            raise ShapeError("singular matrix")
        return Matrix(self.field, [row[n:] for row in R])

    def char_poly(self) -> Poly:
        return char_poly(self)

    def __eq__(self, other) -> bool:
        return (isinstance(other, Matrix) and self.field == other.field
                and self.entries == other.entries)

    def __hash__(self) -> int:
        return hash(tuple(tuple(e.idx for e in row) for row in self.entries))

    def __repr__(self) -> str:
        return "Matrix[" + "; ".join(" ".join(repr(e) for e in row)
                                     for row in self.entries) + "]"


def _rref_rows(field: FieldSpec, rows: list[list[FieldElement]]):
    """In-place RREF on a list of row lists; returns (rows, rank, pivots)."""
    nrows = len(rows)
    ncols = len(rows[0]) if rows else 0
    pivots: list[int] = []
    r = 0
    for c in range(ncols):
        sel = None
        for i in range(r, nrows):
            if not rows[i][c].is_zero():
                sel = i
                break
        if sel is None:
            continue
        rows[r], rows[sel] = rows[sel], rows[r]
        inv = rows[r][c].inv()
        rows[r] = [inv * e for e in rows[r]]
        for i in range(nrows):
            if i != r and not rows[i][c].is_zero():
                f = rows[i][c]
                rows[i] = [a - f * b for a, b in zip(rows[i], rows[r])]
        pivots.append(c)
        r += 1
        if r == nrows:
            break
    return rows, r, pivots


def rref(M: Matrix):
    """Reduced row echelon form. Returns (Matrix, rank); row space preserved."""
    rows = [list(r) for r in M.entries]
    R, rank, _ = _rref_rows(M.field, rows)
    return Matrix(M.field, R), rank


def solve(M: Matrix, b: Sequence[FieldElement]) -> Optional[Vector]:
    """One solution x of M x = b, or None if the system is inconsistent."""
    if len(b) != M.rows:
        raise ShapeError("rhs length mismatch")
    aug = [list(M.entries[i]) + [M.field.el(b[i])] for i in range(M.rows)]
    R, rank, pivots = _rref_rows(M.field, aug)
    if M.cols in pivots:
        return None  # pivot in the augmented column: inconsistent
    x = [M.field.zero] * M.cols
    for r, c in enumerate(pivots):
        x[c] = R[r][-1]
    return tuple(x)


def kernel(M: Matrix) -> "Subspace":
    """Right null space {x : M x = 0} as a Subspace (basis rows in RREF)."""
    R, rank, pivots = _rref_rows(M.field, [list(r) for r in M.entries])
    free = [c for c in range(M.cols) if c not in pivots]
    gens = []
    one, zero = M.field.one, M.field.zero
    for f in free:
        v = [zero] * M.cols
        v[f] = one
        for r, c in enumerate(pivots):
            v[c] = -R[r][f]
        gens.append(v)
    return Subspace(M.field, M.cols, gens)


_CHARPOLY_CACHE: dict = {}


def char_poly(A: Matrix) -> Poly:
    """Monic characteristic polynomial det(T*I - A), exact cofactor expansion.

    Memoized Laplace expansion along the leftmost remaining column; the
    submatrices are indexed by the surviving row set.  Capped at 8x8.
    """
    if A.rows != A.cols:
        raise ShapeError("char_poly of non-square matrix")
    n = A.rows
    if n > 8:
        raise ShapeError("char_poly capped at dimension 8")
    key = (A.field.key(), tuple(tuple(e.idx for e in row) for row in A.entries))
    hit = _CHARPOLY_CACHE.get(key)
    if hit is not None:
        return hit
    F = A.field
    T = Poly.x(F)
    # M[i][j] = T*delta_ij - a_ij as Poly
    M = [[(T - Poly(F, [A.entries[i][j]])) if i == j else Poly(F, [-A.entries[i][j]])
          for j in range(n)] for i in range(n)]
    one = Poly(F, [1])

    memo: dict[tuple[int, ...], Poly] = {}

    def det(rows: tuple[int, ...]) -> Poly:
        if not rows:
            return one
        got = memo.get(rows)
        if got is not None:
            return got
        col = n - len(rows)
        acc = Poly(F)
        for k, r in enumerate(rows):
            e = M[r][col]
            if not e.is_zero():
                term = e * det(rows[:k] + rows[k + 1:])
                acc = acc + (term if k % 2 == 0 else -term)
        memo[rows] = acc
        return acc

    out = det(tuple(range(n)))
    _CHARPOLY_CACHE[key] = out
    return out


def eval_poly_at_matrix(f: Poly, A: Matrix) -> Matrix:
    acc = Matrix.zero(A.field, A.rows, A.cols)
    for c in reversed(f.coeffs):
        acc = acc * A + Matrix.identity(A.field, A.rows).scale(c)
    return acc


class Subspace:
    """A subspace of F^n held as an RREF basis; equality is entry-wise."""

    __slots__ = ("field", "ambient", "basis", "_pivots")

    def __init__(self, field: FieldSpec, ambient: int, gens: Iterable[Sequence] = ()):
        rows = [[field.el(e) for e in g] for g in gens]
        for r in rows:
            if len(r) != ambient:
                raise ShapeError("generator length != ambient dimension")
        if rows:
            R, rank, pivots = _rref_rows(field, rows)
            basis = tuple(tuple(r) for r in R[:rank])
        else:
            basis, pivots = (), []
        self.field = field
        self.ambient = ambient
        self.basis = basis
        self._pivots = tuple(pivots)

    @classmethod
    def zero(cls, field: FieldSpec, ambient: int) -> "Subspace":
        return cls(field, ambient)

    @classmethod
    def full(cls, field: FieldSpec, ambient: int) -> "Subspace":
        return cls(field, ambient,
                   [[1 if i == j else 0 for j in range(ambient)] for i in range(ambient)])

    @property
    def dim(self) -> int:
        return len(self.basis)

    @property
    def pivots(self) -> tuple[int, ...]:
        return self._pivots

    def reduce(self, v: Sequence[FieldElement]) -> Vector:
        """Residue of v after elimination against the basis (zero iff v in U)."""
        w = [self.field.el(e) for e in v]
        for row, c in zip(self.basis, self._pivots):
            f = w[c]
            if not f.is_zero():
                for j in range(self.ambient):
                    w[j] = w[j] - f * row[j]
        return tuple(w)

    def contains_vector(self, v: Sequence[FieldElement]) -> bool:
        return vec_is_zero(self.reduce(v))

    def coordinates(self, v: Sequence[FieldElement]) -> Optional[Vector]:
        """Coefficients of v in the RREF basis, or None if v is outside."""
        w = [self.field.el(e) for e in v]
        coords = []
        for row, c in zip(self.basis, self._pivots):
            f = w[c]
            coords.append(f)
            if not f.is_zero():
                for j in range(self.ambient):
                    w[j] = w[j] - f * row[j]
        if not vec_is_zero(tuple(w)):
            return None
        return tuple(coords)

    def __add__(self, other: "Subspace") -> "Subspace":
        self._check(other)
        return Subspace(self.field, self.ambient, list(self.basis) + list(other.basis))

    def __and__(self, other: "Subspace") -> "Subspace":
        """Intersection via annihilators: U cap V = ann(ann U + ann V)."""
        self._check(other)
        return (self.annihilator() + other.annihilator()).annihilator()

    def annihilator(self) -> "Subspace":
        """{x : u . x = 0 for all u in U} w.r.t. the standard bilinear form."""
        if not self.basis:
            return Subspace.full(self.field, self.ambient)
        return kernel(Matrix(self.field, self.basis))

    def contains(self, other: "Subspace") -> bool:
        self._check(other)
        return all(self.contains_vector(v) for v in other.basis)

    def __le__(self, other: "Subspace") -> bool:
        return other.contains(self)

    def __eq__(self, other) -> bool:
        return (isinstance(other, Subspace) and self.field == other.field
                and self.ambient == other.ambient and self.basis == other.basis)

    def __hash__(self) -> int:
        return hash((self.ambient, tuple(tuple(e.idx for e in row) for row in self.basis)))

    def vectors(self):
        """Iterate all q^dim vectors of the subspace (small spaces only)."""
        from itertools import product
        elems = self.field.elements()
        for coeffs in product(elems, repeat=self.dim):
            v = zero_vec(self.field, self.ambient)
            for c, b in zip(coeffs, self.basis):
                if not c.is_zero():
                    v = vec_add(v, vec_scale(c, b))
            yield v

    def complement_coords(self) -> tuple[int, ...]:
        """Non-pivot coordinates: a deterministic complement basis index set."""
        return tuple(c for c in range(self.ambient) if c not in self._pivots)

    def _check(self, other: "Subspace"):
        if self.ambient != other.ambient or self.field != other.field:
            raise ShapeError("ambient mismatch")

    def __repr__(self) -> str:
        return f"Subspace(dim {self.dim} of F^{self.ambient})"


def image(M: Matrix) -> Subspace:
    """Column space of M as a subspace of F^rows."""
    return Subspace(M.field, M.rows, [M.col(j) for j in range(M.cols)])


def fitting(A: Matrix) -> tuple[Subspace, Subspace]:
    """Fitting decomposition w.r.t. A: (V0, V1) with V0 = ker A^n, V1 = im A^n.

    A is nilpotent on V0 and invertible on V1; V0 + V1 is the whole space
    (n-th power suffices at these dimensions, no iterated stabilization).
    """
    if A.rows != A.cols:
        raise ShapeError("fitting of non-square matrix")
    An = A ** A.rows
    return kernel(An), image(An)
