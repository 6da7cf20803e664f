"""Exact arithmetic in small finite fields GF(p^m).

Elements of GF(p^m) are residue-coefficient vectors in the power basis of a
monic irreducible modulus over F_p.  Fields are capped at 81 elements: every
search this package performs (square classes, polynomial roots, vector
sweeps) is an exhaustive scan, so all arithmetic is table-driven and exact.

The canonical element order used everywhere for deterministic tie-breaking
is the index order ``idx = c_0 + c_1*p + ... + c_{m-1}*p^(m-1)``.
"""

from __future__ import annotations

from typing import Iterable, Optional, Sequence

MAX_FIELD_ORDER = 81


class FieldError(ValueError):
    """Invalid field construction or cross-field operand mix."""


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    d = 2
    while d * d <= n:
        if n % d == 0:
            return False
        d += 1
    return True


# ---------------------------------------------------------------------------
# F_p[x] helpers on plain int coefficient lists (ascending), used before a
# FieldSpec exists (modulus validation, default modulus search).
# ---------------------------------------------------------------------------

def _fp_trim(c: list[int]) -> list[int]:
    while c and c[-1] == 0:
        c.pop()
    return c


def _fp_mul(a: Sequence[int], b: Sequence[int], p: int) -> list[int]:
    if not a or not b:
        return []
    out = [0] * (len(a) + len(b) - 1)
    for i, ai in enumerate(a):
        if ai:
            for j, bj in enumerate(b):
                out[i + j] = (out[i + j] + ai * bj) % p
    return _fp_trim(out)


def _fp_mod(a: Sequence[int], g: Sequence[int], p: int) -> list[int]:
    """Remainder of a by monic g, coefficients mod p."""
    r = [x % p for x in a]
    _fp_trim(r)
    dg = len(g) - 1
    while len(r) - 1 >= dg and r:
        lead = r[-1]
        shift = len(r) - 1 - dg
        for i in range(dg + 1):
            r[shift + i] = (r[shift + i] - lead * g[i]) % p
        _fp_trim(r)
    return r


def _fp_is_irreducible(g: Sequence[int], p: int) -> bool:
    """Trial division by all monic polynomials of degree <= deg(g)/2."""
    deg = len(g) - 1
    if deg < 1:
        return False
    if deg == 1:
        return True
    for d in range(1, deg // 2 + 1):
        for idx in range(p ** d):
            cand = [0] * (d + 1)
            t = idx
            for i in range(d):
                cand[i] = t % p
                t //= p
            cand[d] = 1
            if not _fp_mod(g, cand, p):
                return False
    return True


def _default_modulus(p: int, m: int) -> tuple[int, ...]:
    """First irreducible monic in index order over the lower coefficients."""
    if m == 1:
        return (0, 1)
    for idx in range(p ** m):
        g = [0] * (m + 1)
        t = idx
        for i in range(m):
            g[i] = t % p
            t //= p
        g[m] = 1
        if _fp_is_irreducible(g, p):
            return tuple(g)
    raise FieldError(f"no irreducible of degree {m} over F_{p}")  # unreachable


class FieldSpec:
    """GF(p^m) with precomputed add/mul/neg/inv tables on element indices.

    Immutable after construction; elements hold only their index, so all
    operations are O(1) table lookups.  Do not instantiate directly -- use
    :func:`make_field` which validates its arguments.
    """

    __slots__ = ("p", "m", "modulus", "order", "_add", "_mul", "_neg",
                 "_inv", "_frob", "_pthroot", "_sqrt", "_elements")

    def __init__(self, p: int, m: int, modulus: tuple[int, ...]):
        self.p = p
        self.m = m
        self.modulus = modulus
        q = p ** m
        self.order = q

        # idx <-> coefficient vectors: idx = sum c_i p^i.
        coeffs = []
        for idx in range(q):
            c = []
            t = idx
            for _ in range(m):
                c.append(t % p)
                t //= p
            coeffs.append(c)

        def enc(c: Sequence[int]) -> int:
            v = 0
            for i in reversed(range(len(c))):
                v = v * p + (c[i] if i < len(c) else 0)
            return v

        add = [[0] * q for _ in range(q)]
        neg = [0] * q
        for a in range(q):
            ca = coeffs[a]
            neg[a] = enc([(-x) % p for x in ca])
            for b in range(q):
                cb = coeffs[b]
                add[a][b] = enc([(ca[i] + cb[i]) % p for i in range(m)])

        mul = [[0] * q for _ in range(q)]
        for a in range(q):
            ca = _fp_trim(list(coeffs[a]))
            for b in range(a, q):
                cb = _fp_trim(list(coeffs[b]))
                prod = _fp_mod(_fp_mul(ca, cb, p), modulus, p)
                v = enc(prod)
                mul[a][b] = v
                mul[b][a] = v

        inv = [0] * q
        for a in range(1, q):
            for b in range(1, q):
                if mul[a][b] == 1:
                    inv[a] = b
                    break

        frob = [0] * q
        for a in range(q):
            # a^p by square-and-multiply on indices
            acc, base, e = 1, a, p
            while e:
                if e & 1:
                    acc = mul[acc][base]
                base = mul[base][base]
                e >>= 1
            frob[a] = acc
        pthroot = [0] * q
        for a in range(q):
            pthroot[frob[a]] = a

        sqrt: list[Optional[int]] = [None] * q
        for a in range(q):
            s = mul[a][a]
            if sqrt[s] is None:
                sqrt[s] = a  # first preimage in index order

        self._add = add
        self._mul = mul
        self._neg = neg
        self._inv = inv
        self._frob = frob
        self._pthroot = pthroot
        self._sqrt = sqrt
        self._elements = tuple(FieldElement(self, i) for i in range(q))

    # -- identity -----------------------------------------------------------

    def key(self) -> tuple:
        return (self.p, self.m, self.modulus)

    def __eq__(self, other) -> bool:
        return isinstance(other, FieldSpec) and self.key() == other.key()

    def __hash__(self) -> int:
        return hash(self.key())

    def __repr__(self) -> str:
        return f"GF({self.p}^{self.m})" if self.m > 1 else f"GF({self.p})"

    # -- element constructors -----------------------------------------------

    @property
    def zero(self) -> "FieldElement":
        return self._elements[0]

    @property
    def one(self) -> "FieldElement":
        return self._elements[1]

    @property
    def gen(self) -> "FieldElement":
        """The power-basis generator x (equals 0 when m = 1... never: p >= 2)."""
        return self._elements[self.p] if self.m > 1 else self._elements[1]

    def el(self, value) -> "FieldElement":
        """Coerce an int (embedded mod p) or coefficient sequence."""
        if isinstance(value, FieldElement):
            if value.field is not self and value.field != self:
                raise FieldError("element from a different field")
            return self._elements[value.idx]
        if isinstance(value, int):
            return self._elements[value % self.p]
        coeffs = list(value)
        if len(coeffs) > self.m:
            raise FieldError(f"coefficient vector longer than m={self.m}")
        idx = 0
        for i in reversed(range(self.m)):
            c = coeffs[i] if i < len(coeffs) else 0
            if not 0 <= c < self.p:
                raise FieldError(f"coefficient {c} outside [0,{self.p})")
            idx = idx * self.p + c
        return self._elements[idx]

    def from_index(self, idx: int) -> "FieldElement":
        return self._elements[idx]

    def elements(self, bound: int = MAX_FIELD_ORDER) -> tuple["FieldElement", ...]:
        """All p^m elements in canonical index order."""
        if self.order > bound:
            raise FieldError(f"enumeration bound {bound} exceeded (order {self.order})")
        return self._elements


class FieldElement:
    """An element of a FieldSpec; canonical coefficient representation."""

    __slots__ = ("field", "idx")

    def __init__(self, field: FieldSpec, idx: int):
        self.field = field
        self.idx = idx

    @property
    def coeffs(self) -> tuple[int, ...]:
        p, t = self.field.p, self.idx
        out = []
        for _ in range(self.field.m):
            out.append(t % p)
            t //= p
        return tuple(out)

    def _coerce(self, other) -> "FieldElement":
        if isinstance(other, FieldElement):
            if other.field is self.field or other.field == self.field:
                return other
            raise FieldError("mixed fields")
        if isinstance(other, int):
            return self.field.el(other)
        return NotImplemented  # type: ignore[return-value]

    def __add__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return NotImplemented
        return self.field._elements[self.field._add[self.idx][o.idx]]

    __radd__ = __add__

    def __neg__(self):
        return self.field._elements[self.field._neg[self.idx]]

    def __sub__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return NotImplemented
        return self.field._elements[self.field._add[self.idx][self.field._neg[o.idx]]]

    def __rsub__(self, other):
        return (-self).__add__(other)

    def __mul__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return NotImplemented
        return self.field._elements[self.field._mul[self.idx][o.idx]]

    __rmul__ = __mul__

    def inv(self) -> "FieldElement":
        if self.idx == 0:
            raise ZeroDivisionError("inverse of zero field element")
        return self.field._elements[self.field._inv[self.idx]]

    def __truediv__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return NotImplemented
        return self * o.inv()

    def __rtruediv__(self, other):
        return self.field.el(other) / self

    def __pow__(self, e: int):
        if e < 0:
            return self.inv() ** (-e)
        acc = self.field.one
        base = self
        while e:
            if e & 1:
                acc = acc * base
            base = base * base
            e >>= 1
        return acc

    def frobenius(self) -> "FieldElement":
        """a -> a^p, a field automorphism (bijective on a finite field)."""
        return self.field._elements[self.field._frob[self.idx]]

    def pth_root(self) -> "FieldElement":
        """Exact inverse of frobenius."""
        return self.field._elements[self.field._pthroot[self.idx]]

    def sqrt(self) -> Optional["FieldElement"]:
        """A root of T^2 = a if one exists, else None; deterministic pick.

        For p = 2 squaring is bijective, so a root always exists.
        """
        r = self.field._sqrt[self.idx]
        return None if r is None else self.field._elements[r]

    def is_square(self) -> bool:
        return self.field._sqrt[self.idx] is not None

    def is_zero(self) -> bool:
        return self.idx == 0

    def __eq__(self, other) -> bool:
        if isinstance(other, FieldElement):
            return self.idx == other.idx and self.field == other.field
        if isinstance(other, int):
            return self.idx == self.field.el(other).idx
        return NotImplemented

    def __hash__(self) -> int:
        return hash((self.idx, self.field.p, self.field.m))

    def __bool__(self) -> bool:
        return self.idx != 0

    def __repr__(self) -> str:
        return element_str(self)


def make_field(p: int, m: int = 1, modulus: Optional[Sequence[int]] = None,
               max_order: int = MAX_FIELD_ORDER) -> FieldSpec:
    """Construct GF(p^m), validating primality and irreducibility.

    When *modulus* is omitted the default irreducible is chosen
    deterministically (smallest in index order on the non-leading
    coefficients), so the same (p, m) always yields the same field.
    """
    if not is_prime(p):
        raise FieldError(f"p={p} is not prime")
    if m < 1:
        raise FieldError(f"extension degree m={m} must be >= 1")
    if p ** m > max_order:
        raise FieldError(f"field order {p**m} exceeds cap {max_order}")
    if modulus is None:
        mod = _default_modulus(p, m)
    else:
        mod = tuple(x % p for x in modulus)
        if len(mod) != m + 1:
            raise FieldError(f"modulus degree {len(mod)-1} != m={m}")
        if mod[-1] != 1:
            raise FieldError("modulus must be monic")
        if not _fp_is_irreducible(mod, p):
            raise FieldError(f"modulus {list(mod)} is reducible over F_{p}")
    return FieldSpec(p, m, mod)


_FIELD_CACHE: dict[tuple, FieldSpec] = {}


def GF(p: int, m: int = 1) -> FieldSpec:
    """Cached default-modulus field, the usual entry point."""
    key = (p, m)
    if key not in _FIELD_CACHE:
        _FIELD_CACHE[key] = make_field(p, m)
    return _FIELD_CACHE[key]


def nonsquare_rep(field: FieldSpec) -> FieldElement:
    """A fixed nonsquare delta_0, smallest in enumeration order (odd p only).

    In characteristic 2 every element is a square, so none exists.
    """
    if field.p == 2:
        raise FieldError("every element of a perfect field of char 2 is a square")
    for a in field.elements():
        if not a.is_zero() and not a.is_square():
            return a
    raise FieldError("no nonsquare found")  # unreachable for odd q


# ---------------------------------------------------------------------------
# Univariate polynomials over a FieldSpec (dense ascending coefficients).
# ---------------------------------------------------------------------------

class Poly:
    """Dense univariate polynomial over a FieldSpec; zero poly has no coeffs."""

    __slots__ = ("field", "coeffs")

    def __init__(self, field: FieldSpec, coeffs: Iterable = ()):
        cs = [field.el(c) if not isinstance(c, FieldElement) else c for c in coeffs]
        while cs and cs[-1].is_zero():
            cs.pop()
        self.field = field
        self.coeffs = tuple(cs)

    @classmethod
    def x(cls, field: FieldSpec) -> "Poly":
        return cls(field, [0, 1])

    @property
    def degree(self) -> int:
        """Degree, with -1 for the zero polynomial."""
        return len(self.coeffs) - 1

    def is_zero(self) -> bool:
        return not self.coeffs

    def __add__(self, other: "Poly") -> "Poly":
        a, b = self.coeffs, other.coeffs
        n = max(len(a), len(b))
        z = self.field.zero
        return Poly(self.field, [(a[i] if i < len(a) else z) + (b[i] if i < len(b) else z)
                                 for i in range(n)])

    def __neg__(self) -> "Poly":
        return Poly(self.field, [-c for c in self.coeffs])

    def __sub__(self, other: "Poly") -> "Poly":
        return self + (-other)

    def __mul__(self, other) -> "Poly":
        if isinstance(other, (FieldElement, int)):
            s = self.field.el(other)
            return Poly(self.field, [c * s for c in self.coeffs])
        a, b = self.coeffs, other.coeffs
        if not a or not b:
            return Poly(self.field)
        out = [self.field.zero] * (len(a) + len(b) - 1)
        for i, ai in enumerate(a):
            if not ai.is_zero():
                for j, bj in enumerate(b):
                    out[i + j] = out[i + j] + ai * bj
        return Poly(self.field, out)

    __rmul__ = __mul__

    def __call__(self, t: FieldElement) -> FieldElement:
        acc = self.field.zero
        for c in reversed(self.coeffs):
            acc = acc * t + c
        return acc

    def __eq__(self, other) -> bool:
        return (isinstance(other, Poly) and self.field == other.field
                and self.coeffs == other.coeffs)

    def __hash__(self) -> int:
        return hash((self.field.key(), tuple(c.idx for c in self.coeffs)))

    def __repr__(self) -> str:
        if self.is_zero():
            return "0"
        parts = []
        for i in reversed(range(len(self.coeffs))):
            c = self.coeffs[i]
            if c.is_zero():
                continue
            cs = element_str(c)
            if i == 0:
                parts.append(cs)
            else:
                ts = "T" if i == 1 else f"T^{i}"
                parts.append(ts if cs == "1" else f"({cs})*{ts}")
        return " + ".join(parts)


def roots_univariate(f: Poly) -> list[FieldElement]:
    """All roots of f in its field by exhaustive scan, in enumeration order."""
    if f.is_zero():
        raise ValueError("zero polynomial")
    if f.degree < 1:
        return []
    return [t for t in f.field.elements() if f(t).is_zero()]


# ---------------------------------------------------------------------------
# Printing / parsing of elements as polynomials in x over F_p.
# ---------------------------------------------------------------------------

def element_str(a: FieldElement) -> str:
    """Render as a polynomial in x, e.g. '0', '2', 'x+1', '2x^2+x'."""
    cs = a.coeffs
    parts = []
    for i in reversed(range(len(cs))):
        c = cs[i]
        if c == 0:
            continue
        if i == 0:
            parts.append(str(c))
        else:
            xs = "x" if i == 1 else f"x^{i}"
            parts.append(xs if c == 1 else f"{c}{xs}")
    return "+".join(parts) if parts else "0"


def parse_element(field: FieldSpec, s: str) -> FieldElement:
    """Inverse of element_str for well-formed inputs."""
    s = s.strip().replace(" ", "")
    if not s:
        raise FieldError("empty element string")
    coeffs = [0] * field.m
    for term in s.split("+"):
        if not term:
            raise FieldError(f"malformed element string {s!r}")
        if "x" in term:
            head, _, tail = term.partition("x")
            c = int(head) if head else 1
            e = int(tail[1:]) if tail.startswith("^") else (1 if not tail else int(tail))
        else:
            c, e = int(term), 0
        if e >= field.m:
            raise FieldError(f"term degree {e} too large for m={field.m}")
        coeffs[e] = (coeffs[e] + c) % field.p
    return field.el(coeffs)
