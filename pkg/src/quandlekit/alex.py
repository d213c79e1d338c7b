"""Laurent polynomials, the rack ring and Alexander invariants.

The rack ring is ``Z[A^±1, E] / (E^2 - E(1 - A))``; every element has a
unique form ``a + b·E`` with ``a, b`` Laurent polynomials in ``A``.  Its two
projections to ``Z[A^±1]`` send ``E`` to ``0`` and to ``1 - A``.
"""

from __future__ import annotations

import logging
import re
from dataclasses import dataclass
from typing import Mapping, Sequence

from .exceptions import ParseError, PreconditionError
from .present import QuandlePresentation

__all__ = [
    "LaurentPoly",
    "RackRingElement",
    "rackring_mul",
    "project_quandle",
    "project_zero",
    "pullback_lift",
    "AlexanderPresentation",
    "alexander_matrix",
    "alexander_polynomial",
    "laurent_determinant",
    "A",
    "E",
]

log = logging.getLogger(__name__)


class LaurentPoly:
    """Finitely supported map ``exponent -> coefficient`` with no zero entries."""

    __slots__ = ("_terms", "_hash")

    def __init__(self, terms: Mapping[int, int] | None = None):
        clean = {}
        for e, c in (terms or {}).items():
            c = int(c)
            if c:
                clean[int(e)] = clean.get(int(e), 0) + c
                if not clean[int(e)]:
                    del clean[int(e)]
        self._terms = dict(sorted(clean.items()))
        self._hash = None

    @classmethod
    def const(cls, c: int) -> "LaurentPoly":
        return cls({0: c})

    @classmethod
    def monomial(cls, exp: int, coeff: int = 1) -> "LaurentPoly":
        return cls({exp: coeff})

    @classmethod
    def coerce(cls, x) -> "LaurentPoly":
        if isinstance(x, LaurentPoly):
            return x
        if isinstance(x, int):
            return cls.const(x)
        if isinstance(x, str):
            return cls.parse(x)
        raise TypeError(f"cannot convert {type(x).__name__} to LaurentPoly")

    @property
    def terms(self) -> dict[int, int]:
        return dict(self._terms)

    def is_zero(self) -> bool:
        return not self._terms

    def __bool__(self):
        return bool(self._terms)

    @property
    def min_degree(self) -> int:
        return next(iter(self._terms)) if self._terms else 0

    @property
    def max_degree(self) -> int:
        return next(reversed(self._terms)) if self._terms else 0

    def coeff(self, e: int) -> int:
        return self._terms.get(e, 0)

    def __eq__(self, other):
        if isinstance(other, int):
            other = LaurentPoly.const(other)
        if not isinstance(other, LaurentPoly):
            return NotImplemented
        return self._terms == other._terms

    def __hash__(self):
        if self._hash is None:
            self._hash = hash(tuple(self._terms.items()))
        return self._hash

    def __neg__(self):
        return LaurentPoly({e: -c for e, c in self._terms.items()})

    def __add__(self, other):
        other = LaurentPoly.coerce(other)
        out = dict(self._terms)
        for e, c in other._terms.items():
            out[e] = out.get(e, 0) + c
        return LaurentPoly(out)

    __radd__ = __add__

    def __sub__(self, other):
        return self + (-LaurentPoly.coerce(other))

    def __rsub__(self, other):
        return LaurentPoly.coerce(other) - self

    def __mul__(self, other):
        other = LaurentPoly.coerce(other)
        out: dict[int, int] = {}
        for e1, c1 in self._terms.items():
            for e2, c2 in other._terms.items():
                out[e1 + e2] = out.get(e1 + e2, 0) + c1 * c2
        return LaurentPoly(out)

    __rmul__ = __mul__

    def __pow__(self, k: int):
        if k < 0:
            if len(self._terms) != 1:
                raise ValueError("only monomials are invertible")
            (e, c), = self._terms.items()
            if c not in (1, -1):
                raise ValueError("only ±A^k are units")
            return LaurentPoly({e * k: c ** (-k)})
        out = LaurentPoly.const(1)
        base = self
        while k:
            if k & 1:
                out = out * base
            base = base * base
            k >>= 1
        return out

    def eval_at_1(self) -> int:
        """Augmentation ``A -> 1``: the sum of coefficients."""
        return sum(self._terms.values())

    def shift(self, k: int) -> "LaurentPoly":
        return LaurentPoly({e + k: c for e, c in self._terms.items()})

    def exact_div(self, other: "LaurentPoly") -> "LaurentPoly":
        """Quotient in ``Z[A^±1]``; raises ``ValueError`` if ``other`` does not divide."""
        other = LaurentPoly.coerce(other)
        if other.is_zero():
            raise ZeroDivisionError("division by the zero polynomial")
        if self.is_zero():
            return LaurentPoly()
        # work with honest polynomials, then restore the offset
        num = self.shift(-self.min_degree)._terms
        den = other.shift(-other.min_degree)._terms
        offset = self.min_degree - other.min_degree
        dd = max(den)
        lead = den[dd]
        rem = dict(num)
        quot: dict[int, int] = {}
        while rem:
            top = max(rem)
            if top < dd:
                break
            q, r = divmod(rem[top], lead)
            if r:
                break
            quot[top - dd] = q
            for e, c in den.items():
                rem[e + top - dd] = rem.get(e + top - dd, 0) - q * c
                if not rem[e + top - dd]:
                    del rem[e + top - dd]
        if rem:
            raise ValueError(f"{other} does not divide {self}")
        return LaurentPoly(quot).shift(offset)

    def normalized(self) -> "LaurentPoly":
        """Multiply by ``±A^k`` so the lowest term is a positive constant."""
        if self.is_zero():
            return self
        low = self.min_degree
        sign = 1 if self._terms[low] > 0 else -1
        return LaurentPoly({e - low: sign * c for e, c in self._terms.items()})

    # -- text and JSON ------------------------------------------------------

    def __str__(self):
        if not self._terms:
            return "0"
        out = []
        for e, c in self._terms.items():
            mag = abs(c)
            if e == 0:
                body = str(mag)
            else:
                var = "A" if e == 1 else f"A^{e}"
                body = var if mag == 1 else f"{mag}*{var}"
            if not out:
                out.append(body if c > 0 else f"-{body}")
            else:
                out.append(("+ " if c > 0 else "- ") + body)
        return " ".join(out)

    def __repr__(self):
        return f"LaurentPoly({str(self)!r})"

    def to_json(self) -> dict[str, int]:
        return {str(e): c for e, c in self._terms.items()}

    @classmethod
    def from_json(cls, data: Mapping) -> "LaurentPoly":
        try:
            return cls({int(e): int(c) for e, c in data.items()})
        except (TypeError, ValueError, AttributeError) as exc:
            raise ParseError(f"bad Laurent polynomial JSON: {exc}") from None

    _TERM = re.compile(r"\s*([+-])?\s*(\d+)?\s*\*?\s*(A(?:\s*\^\s*\(?\s*(-?\d+)\s*\)?)?)?\s*")

    @classmethod
    def parse(cls, text: str) -> "LaurentPoly":
        """Parse text like ``1 - A + A^2``, ``3*A^-1`` or ``-2A``."""
        s = text.strip()
        if not s:
            raise ParseError("empty polynomial")
        pos = 0
        terms: dict[int, int] = {}
        first = True
        while pos < len(s):
            m = cls._TERM.match(s, pos)
            if not m or m.end() == pos or (m.group(2) is None and m.group(3) is None):
                raise ParseError(f"cannot parse polynomial term in {text!r}", pos)
            if not first and m.group(1) is None:
                raise ParseError(f"missing '+' or '-' between terms in {text!r}", pos)
            sign = -1 if m.group(1) == "-" else 1
            coeff = int(m.group(2)) if m.group(2) else 1
            if m.group(3):
                exp = int(m.group(4)) if m.group(4) is not None else 1
            else:
                exp = 0
            terms[exp] = terms.get(exp, 0) + sign * coeff
            pos = m.end()
            first = False
        return cls(terms)


ONE = LaurentPoly.const(1)
A = LaurentPoly.monomial(1)
A_INV = LaurentPoly.monomial(-1)
ONE_MINUS_A = ONE - A


@dataclass(frozen=True)
class RackRingElement:
    """``a + b·E`` in ``Z[A^±1, E] / (E^2 - E(1 - A))``."""

    a: LaurentPoly
    b: LaurentPoly

    def __init__(self, a=0, b=0):
        object.__setattr__(self, "a", LaurentPoly.coerce(a))
        object.__setattr__(self, "b", LaurentPoly.coerce(b))

    def __add__(self, other: "RackRingElement") -> "RackRingElement":
        return RackRingElement(self.a + other.a, self.b + other.b)

    def __sub__(self, other: "RackRingElement") -> "RackRingElement":
        return RackRingElement(self.a - other.a, self.b - other.b)

    def __neg__(self):
        return RackRingElement(-self.a, -self.b)

    def __mul__(self, other: "RackRingElement") -> "RackRingElement":
        return rackring_mul(self, other)

    def __str__(self):
        if self.b.is_zero():
            return str(self.a)
        neg = self.b == -1
        if self.b == 1 or neg:
            bpart = "E"
        else:
            bpart = f"({self.b})*E"
        if self.a.is_zero():
            return f"-{bpart}" if neg else bpart
        return f"{self.a} {'-' if neg else '+'} {bpart}"

    def to_json(self) -> dict:
        return {"a": self.a.to_json(), "b": self.b.to_json()}

    @classmethod
    def from_json(cls, data: Mapping) -> "RackRingElement":
        return cls(LaurentPoly.from_json(data.get("a", {})), LaurentPoly.from_json(data.get("b", {})))


E = RackRingElement(0, 1)


def rackring_mul(u: RackRingElement, v: RackRingElement) -> RackRingElement:
    # (a + bE)(c + dE) = ac + (ad + bc + bd(1 - A))E, using E^2 = E(1 - A)
    a, b, c, d = u.a, u.b, v.a, v.b
    return RackRingElement(a * c, a * d + b * c + b * d * ONE_MINUS_A)


def project_quandle(u: RackRingElement) -> LaurentPoly:
    """The ring map ``E -> 1 - A``."""
    return u.a + u.b * ONE_MINUS_A


def project_zero(u: RackRingElement) -> LaurentPoly:
    """The ring map ``E -> 0``."""
    return u.a


def pullback_lift(p, q) -> RackRingElement:
    """The unique ``u`` with ``project_zero(u) == p`` and ``project_quandle(u) == q``."""
    p, q = LaurentPoly.coerce(p), LaurentPoly.coerce(q)
    if p.eval_at_1() != q.eval_at_1():
        raise PreconditionError(
            f"p(1) = {p.eval_at_1()} and q(1) = {q.eval_at_1()} differ; (p, q) is not in the pullback"
        )
    return RackRingElement(p, (q - p).exact_div(ONE_MINUS_A))


# -- Alexander invariants ---------------------------------------------------


@dataclass(frozen=True)
class AlexanderPresentation:
    """Relation matrix over ``Z[A^±1]``: one row per relation, one column per generator."""

    rows: tuple[tuple[LaurentPoly, ...], ...]
    ncols: int

    @property
    def nrows(self) -> int:
        return len(self.rows)

    def __str__(self):
        return "\n".join("[" + ", ".join(str(x) for x in r) + "]" for r in self.rows)

    def to_json(self) -> dict:
        return {"ncols": self.ncols, "rows": [[x.to_json() for x in r] for r in self.rows]}


def alexander_matrix(P: QuandlePresentation) -> AlexanderPresentation:
    """Linearize each relation in the abelian quandle ``x ▷ y = (1 - A)x + A y``.

    ``x_i ▷ x_j = x_k`` gives the row ``(1 - A) e_i + A e_j - e_k``; the
    inverse relation uses ``x ▷^-1 y = (1 - A^-1) x + A^-1 y``.
    """
    n = len(P.generators)
    coeffs = {1: (ONE - A, A), -1: (ONE - A_INV, A_INV)}
    rows = []
    for i, j, k, s in P.relations:
        row = [LaurentPoly() for _ in range(n)]
        ci, cj = coeffs[s]
        row[i] = row[i] + ci
        row[j] = row[j] + cj
        row[k] = row[k] - ONE
        rows.append(tuple(row))
    return AlexanderPresentation(tuple(rows), n)


def laurent_determinant(M: Sequence[Sequence[LaurentPoly]]) -> LaurentPoly:
    """Exact determinant over ``Z[A^±1]`` by fraction-free (Bareiss) elimination."""
    rows = [[LaurentPoly.coerce(x) for x in r] for r in M]
    n = len(rows)
    if any(len(r) != n for r in rows):
        raise ValueError("determinant of a non-square matrix")
    if n == 0:
        return ONE
    sign = 1
    prev = ONE
    for k in range(n - 1):
        if rows[k][k].is_zero():
            for r in range(k + 1, n):
                if not rows[r][k].is_zero():
                    rows[k], rows[r] = rows[r], rows[k]
                    sign = -sign
                    break
            else:
                return LaurentPoly()
        pivot = rows[k][k]
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                rows[i][j] = (rows[i][j] * pivot - rows[i][k] * rows[k][j]).exact_div(prev)
        prev = pivot
    return rows[-1][-1] * sign


def alexander_polynomial(M: AlexanderPresentation, delete_row: int | None = None) -> LaurentPoly:
    """First elementary ideal generator of a knot's Alexander module, normalized.

    Deletes the last column and, for a square matrix, one row (the last by
    default); the result is fixed up to ``±A^k`` by :meth:`LaurentPoly.normalized`.
    """
    n = M.ncols
    if n == 0:
        raise PreconditionError("presentation has no generators")
    rows = [list(r[: n - 1]) for r in M.rows]
    if len(rows) == n:
        idx = n - 1 if delete_row is None else delete_row
        if not 0 <= idx < n:
            raise IndexError(f"row {idx} out of range")
        del rows[idx]
    elif len(rows) != n - 1:
        raise PreconditionError(
            f"expected a knot presentation with {n} or {n - 1} relations, got {len(rows)}"
        )
    det = laurent_determinant(rows)
    if det.is_zero():
        log.warning("Alexander matrix minor vanishes; returning 0")
    return det.normalized()
