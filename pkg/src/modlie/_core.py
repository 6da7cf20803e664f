"""Integer-encoded fast paths for sweep-heavy operations.

Vectors and matrices are tuples of element indices into a FieldSpec's
precomputed tables.  The object layer (linalg/liealg) stays readable and
FieldElement-based; everything that iterates over q^n vectors funnels
through here.  numpy is used only for the bulk ad-nilpotency count.
"""

from __future__ import annotations

from itertools import combinations, product
from typing import Iterator, Optional

import numpy as np

from .fields import FieldSpec


class IntBasis:
    """Incremental RREF basis of int-encoded row vectors."""

    __slots__ = ("field", "ncols", "rows", "pivots")

    def __init__(self, field: FieldSpec, ncols: int):
        self.field = field
        self.ncols = ncols
        self.rows: list[tuple[int, ...]] = []
        self.pivots: list[int] = []

    @property
    def rank(self) -> int:
        return len(self.rows)

    def residue(self, v) -> list[int]:
        add, mul, neg = self.field._add, self.field._mul, self.field._neg
        w = list(v)
        for row, c in zip(self.rows, self.pivots):
            f = w[c]
            if f:
                nf = neg[f]
                for j in range(c, self.ncols):
                    rj = row[j]
                    if rj:
                        w[j] = add[w[j]][mul[nf][rj]]
        return w

    def contains(self, v) -> bool:
        return not any(self.residue(v))

    def add(self, v) -> Optional[tuple[int, ...]]:
        """Insert v; returns the new RREF row, or None if dependent."""
        w = self.residue(v)
        piv = next((j for j, x in enumerate(w) if x), None)
        if piv is None:
            return None
        add, mul, inv, neg = (self.field._add, self.field._mul,
                              self.field._inv, self.field._neg)
        iv = inv[w[piv]]
        w = [mul[iv][x] for x in w]
        row = tuple(w)
        # eliminate the new pivot from existing rows, keep rows pivot-sorted
        for i, r in enumerate(self.rows):
            f = r[piv]
            if f:
                nf = neg[f]
                self.rows[i] = tuple(add[r[j]][mul[nf][w[j]]] for j in range(self.ncols))
        at = next((i for i, c in enumerate(self.pivots) if c > piv), len(self.pivots))
        self.rows.insert(at, row)
        self.pivots.insert(at, piv)
        return row


def int_rref(field: FieldSpec, rows) -> IntBasis:
    nb = IntBasis(field, len(rows[0]) if rows else 0)
    for r in rows:
        nb.add(r)
    return nb


def int_kernel(field: FieldSpec, rows, ncols: int) -> list[tuple[int, ...]]:
    """RREF basis of {x : rows . x = 0}; rows are int-encoded."""
    rb = IntBasis(field, ncols)
    for r in rows:
        rb.add(r)
    pivset = set(rb.pivots)
    neg = field._neg
    out = []
    for f in range(ncols):
        if f in pivset:
            continue
        v = [0] * ncols
        v[f] = 1
        for row, c in zip(rb.rows, rb.pivots):
            v[c] = neg[row[f]]
        out.append(tuple(v))
    return out


class FastAlgebra:
    """Int-encoded view of a LieAlgebra's structure tensor and ad matrices."""

    __slots__ = ("field", "n", "c", "adm")

    def __init__(self, field: FieldSpec, n: int, table):
        # table[i][j] = coordinate tuple of [b_i, b_j] as FieldElements
        self.field = field
        self.n = n
        self.c = tuple(tuple(tuple(e.idx for e in table[i][j]) for j in range(n))
                       for i in range(n))
        # adm[i][r][j] = r-th coordinate of [b_i, b_j]
        self.adm = tuple(tuple(tuple(self.c[i][j][r] for j in range(n))
                               for r in range(n)) for i in range(n))

    def apply_ad(self, i: int, v) -> tuple[int, ...]:
        add, mul = self.field._add, self.field._mul
        rows = self.adm[i]
        out = []
        for r in range(self.n):
            acc = 0
            row = rows[r]
            for j in range(self.n):
                vj = v[j]
                if vj and row[j]:
                    acc = add[acc][mul[row[j]][vj]]
            out.append(acc)
        return tuple(out)

    def bracket(self, x, y) -> tuple[int, ...]:
        add, mul = self.field._add, self.field._mul
        n = self.n
        out = [0] * n
        for i in range(n):
            xi = x[i]
            if not xi:
                continue
            rows = self.adm[i]
            for r in range(n):
                acc = 0
                row = rows[r]
                for j in range(n):
                    yj = y[j]
                    if yj and row[j]:
                        acc = add[acc][mul[row[j]][yj]]
                if acc:
                    out[r] = add[out[r]][mul[xi][acc]]
        return tuple(out)

    def ad_matrix_int(self, x) -> tuple[tuple[int, ...], ...]:
        add, mul = self.field._add, self.field._mul
        n = self.n
        rows = []
        for r in range(n):
            row = [0] * n
            for i in range(n):
                xi = x[i]
                if xi:
                    arow = self.adm[i][r]
                    for j in range(n):
                        if arow[j]:
                            row[j] = add[row[j]][mul[xi][arow[j]]]
            rows.append(tuple(row))
        return tuple(rows)


def projective_vectors(field: FieldSpec, n: int) -> Iterator[tuple[int, ...]]:
    """One representative per 1-dim subspace of F^n, first nonzero coord = 1.

    Ordered by support size so that sparse vectors (basis directions) come
    first; sweeps that exit early on structured input benefit.
    """
    nonzero = range(1, field.order)
    for size in range(1, n + 1):
        for support in combinations(range(n), size):
            lead = support[0]
            for rest in product(nonzero, repeat=size - 1):
                v = [0] * n
                v[lead] = 1
                for pos, val in zip(support[1:], rest):
                    v[pos] = val
                yield tuple(v)


def projective_count(q: int, n: int) -> int:
    return (q ** n - 1) // (q - 1)


def normalize_projective(field: FieldSpec, v) -> tuple[int, ...]:
    mul, inv = field._mul, field._inv
    for x in v:
        if x:
            iv = inv[x]
            return tuple(mul[iv][y] for y in v)
    return tuple(v)


def ideal_closure_int(fast: FastAlgebra, v) -> IntBasis:
    """Smallest ad-invariant subspace containing v."""
    basis = IntBasis(fast.field, fast.n)
    first = basis.add(v)
    queue = [first] if first is not None else []
    while queue:
        w = queue.pop()
        for i in range(fast.n):
            u = fast.apply_ad(i, w)
            if any(u):
                r = basis.add(u)
                if r is not None:
                    queue.append(r)
    return basis


def derived_step_int(fast: FastAlgebra, rows) -> IntBasis:
    nxt = IntBasis(fast.field, fast.n)
    for a in range(len(rows)):
        for b in range(a + 1, len(rows)):
            w = fast.bracket(rows[a], rows[b])
            if any(w):
                nxt.add(w)
    return nxt


def is_solvable_span_int(fast: FastAlgebra, rows) -> bool:
    """Solvability of the span (must be closed under the bracket)."""
    cur = list(rows)
    while cur:
        nxt = derived_step_int(fast, cur)
        if nxt.rank == 0:
            return True
        if nxt.rank >= len(cur):
            return False  # derived term stabilized nonzero
        cur = nxt.rows
    return True


def last_derived_term_int(fast: FastAlgebra, rows) -> list[tuple[int, ...]]:
    """Last nonzero term of the derived series of a solvable span."""
    cur = list(rows)
    while True:
        nxt = derived_step_int(fast, cur)
        if nxt.rank == 0:
            return cur
        cur = nxt.rows


# ---------------------------------------------------------------------------
# Bulk ad-nilpotency count via numpy (index arithmetic on gathered tables).
# ---------------------------------------------------------------------------

_NP_TABLE_CACHE: dict = {}


def _np_tables(field: FieldSpec):
    key = field.key()
    hit = _NP_TABLE_CACHE.get(key)
    if hit is None:
        hit = (np.array(field._add, dtype=np.uint8),
               np.array(field._mul, dtype=np.uint8))
        _NP_TABLE_CACHE[key] = hit
    return hit


def _np_matmul(ADD, MUL, A, B):
    """Batched product of (..., n, n) index matrices via table gathers."""
    n = A.shape[-1]
    acc = None
    for k in range(n):
        term = MUL[A[..., :, k, None], B[..., None, k, :]]
        acc = term if acc is None else ADD[acc, term]
    return acc


def _np_trace(ADD, M):
    n = M.shape[-1]
    tr = M[..., 0, 0]
    for r in range(1, n):
        tr = ADD[tr, M[..., r, r]]
    return tr


def adnilpotent_count(fast: FastAlgebra, limit: int = 10 ** 6) -> Optional[int]:
    """Number of vectors x (all q^n of them) with ad x nilpotent.

    Returns None when q^n exceeds *limit*.  Nilpotency of A = ad x is
    tested as A^8 = 0 (n <= 8) after two cheap necessary filters: tr A = 0
    (evaluated linearly in x, before any matrix is built) and tr A^2 = 0.
    """
    field, n = fast.field, fast.n
    q = field.order
    total = q ** n
    if total > limit:
        return None
    ADD, MUL = _np_tables(field)

    # all vectors, mixed radix over q
    idx = np.arange(total, dtype=np.int64)
    X = np.empty((total, n), dtype=np.uint8)
    for i in range(n):
        X[:, i] = idx % q
        idx = idx // q

    # tr(ad x) = sum_i x_i tr(ad b_i): filter before building any matrix
    add_t, = (field._add,)
    tr_basis = []
    for i in range(n):
        acc = 0
        for r in range(n):
            acc = add_t[acc][fast.adm[i][r][r]]
        tr_basis.append(acc)
    tr = None
    for i in range(n):
        term = MUL[X[:, i], np.uint8(tr_basis[i])]
        tr = term if tr is None else ADD[tr, term]
    X = X[tr == 0]
    if X.shape[0] == 0:
        return 0

    adm = np.array(fast.adm, dtype=np.uint8)  # (n, n, n): [i][r][j]
    A = None
    for i in range(n):
        term = MUL[X[:, i, None, None], adm[i][None, :, :]]
        A = term if A is None else ADD[A, term]

    # tr(A^2) = sum_{r,s} A[r,s] A[s,r], cheaper than the full square
    tr2 = None
    for r in range(n):
        for s in range(n):
            term = MUL[A[:, r, s], A[:, s, r]]
            tr2 = term if tr2 is None else ADD[tr2, term]
    A = A[tr2 == 0]
    if A.shape[0] == 0:
        return 0
    A2 = _np_matmul(ADD, MUL, A, A)
    A4 = _np_matmul(ADD, MUL, A2, A2)
    A8 = _np_matmul(ADD, MUL, A4, A4)
    return int(np.count_nonzero((A8 == 0).all(axis=(1, 2))))
