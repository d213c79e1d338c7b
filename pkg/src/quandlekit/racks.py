"""Finite racks and quandles given by operation tables.

Elements are the indices ``0..n-1`` and ``table[i][j]`` is ``i ▷ j``.  A
:class:`FiniteRack` can be built from any square table with entries in range;
the axiom checks run once at construction and their reports are cached, so
invalid tables can still be inspected for witnesses.
"""

from __future__ import annotations

import itertools
import json
from dataclasses import dataclass, field
from typing import Iterable, Sequence

import numpy as np

from .exceptions import MalformedTableError, NotAQuandleError, PreconditionError

__all__ = [
    "RackReport",
    "QuandleReport",
    "FiniteRack",
    "ElementPredicates",
    "AbelianRackModule",
    "check_rack",
    "check_quandle",
    "canonical_automorphism",
    "element_predicates",
    "module_to_rack",
    "rack_to_module_check",
    "trivial_rack",
    "dihedral_quandle",
    "permutation_rack",
    "conjugation_quandle",
    "rack_from_spec",
]


def _as_table(table) -> np.ndarray:
    if isinstance(table, FiniteRack):
        return table.table
    try:
        arr = np.array(table, dtype=object)
    except Exception as exc:  # ragged nested lists
        raise MalformedTableError(f"table is not a rectangular array: {exc}") from None
    if arr.ndim != 2 or arr.shape[0] != arr.shape[1]:
        raise MalformedTableError(f"table must be square, got shape {arr.shape}")
    n = arr.shape[0]
    if n == 0:
        raise MalformedTableError("table must have at least one element")
    for v in arr.flat:
        if isinstance(v, bool) or not isinstance(v, (int, np.integer)):
            raise MalformedTableError(f"table entry {v!r} is not an integer")
        if not 0 <= v < n:
            raise MalformedTableError(f"table entry {v} out of range 0..{n - 1}")
    out = arr.astype(np.int64)
    out.setflags(write=False)
    return out


@dataclass(frozen=True)
class RackReport:
    """Outcome of the rack axiom check.

    ``bijectivity_failures`` holds ``(i, j, k)`` meaning that row ``i`` sends
    both ``j`` and ``k`` to the same element.  ``distributivity_failures``
    holds ``(i, j, k)`` with ``i▷(j▷k) != (i▷j)▷(i▷k)``.
    """

    bijectivity_failures: tuple = ()
    distributivity_failures: tuple = ()

    @property
    def ok(self) -> bool:
        return not self.bijectivity_failures and not self.distributivity_failures

    def __bool__(self) -> bool:
        return self.ok


@dataclass(frozen=True)
class QuandleReport:
    non_idempotent: tuple = ()

    @property
    def ok(self) -> bool:
        return not self.non_idempotent

    def __bool__(self) -> bool:
        return self.ok


def check_rack(table, max_witnesses: int = 20) -> RackReport:
    T = _as_table(table)
    n = T.shape[0]
    bij = []
    for i in range(n):
        seen: dict[int, int] = {}
        for j in range(n):
            v = int(T[i, j])
            if v in seen:
                bij.append((i, seen[v], j))
                break
            seen[v] = j
    # lhs[i, j, k] = T[i, T[j, k]]; rhs[i, j, k] = T[T[i, j], T[i, k]]
    lhs = T[:, T]
    rhs = T[T[:, :, None], T[:, None, :]]
    bad = np.argwhere(lhs != rhs)
    dist = tuple(tuple(int(x) for x in w) for w in bad[:max_witnesses])
    return RackReport(tuple(bij[:max_witnesses]), dist)


def check_quandle(table) -> QuandleReport:
    T = _as_table(table)
    return QuandleReport(tuple(i for i in range(T.shape[0]) if T[i, i] != i))


@dataclass(frozen=True, eq=False)
class FiniteRack:
    table: np.ndarray
    basepoint: int | None = None
    names: tuple[str, ...] | None = None
    rack_report: RackReport = field(init=False, repr=False)
    quandle_report: QuandleReport = field(init=False, repr=False)

    def __init__(self, table, basepoint: int | None = None, names: Sequence[str] | None = None):
        T = _as_table(table)
        n = T.shape[0]
        if names is not None:
            names = tuple(str(x) for x in names)
            if len(names) != n or len(set(names)) != n:
                raise MalformedTableError(f"need {n} distinct names, got {names}")
        if basepoint is not None and not 0 <= basepoint < n:
            raise MalformedTableError(f"basepoint {basepoint} out of range")
        object.__setattr__(self, "table", T)
        object.__setattr__(self, "basepoint", basepoint)
        object.__setattr__(self, "names", names)
        object.__setattr__(self, "rack_report", check_rack(T))
        object.__setattr__(self, "quandle_report", check_quandle(T))

    @property
    def size(self) -> int:
        return self.table.shape[0]

    def __len__(self) -> int:
        return self.size

    @property
    def is_rack(self) -> bool:
        return self.rack_report.ok

    @property
    def is_quandle(self) -> bool:
        return self.rack_report.ok and self.quandle_report.ok

    @property
    def basepoint_ok(self) -> bool:
        p = self.basepoint
        return p is None or int(self.table[p, p]) == p

    def op(self, i: int, j: int) -> int:
        return int(self.table[i, j])

    def op_inverse(self, i: int, k: int) -> int:
        """The unique ``j`` with ``i ▷ j == k``."""
        hits = np.flatnonzero(self.table[i] == k)
        if len(hits) != 1:
            raise PreconditionError(f"left multiplication by {i} is not a bijection")
        return int(hits[0])

    def label(self, i: int) -> str:
        return self.names[i] if self.names else str(i)

    def __eq__(self, other) -> bool:
        if not isinstance(other, FiniteRack):
            return NotImplemented
        return (
            np.array_equal(self.table, other.table)
            and self.basepoint == other.basepoint
            and self.names == other.names
        )

    def __hash__(self):
        return hash((self.table.tobytes(), self.basepoint, self.names))

    def require_rack(self) -> None:
        if not self.is_rack:
            raise PreconditionError(f"table is not a rack: {self.rack_report}")

    def require_quandle(self) -> None:
        self.require_rack()
        if not self.quandle_report.ok:
            raise NotAQuandleError(
                f"rack is not a quandle; i▷i != i for i in {self.quandle_report.non_idempotent}"
            )

    def to_json(self) -> dict:
        d = {"size": self.size, "table": self.table.tolist()}
        if self.basepoint is not None:
            d["basepoint"] = self.basepoint
        if self.names is not None:
            d["names"] = list(self.names)
        return d

    @classmethod
    def from_json(cls, data: "dict | str") -> "FiniteRack":
        if isinstance(data, str):
            data = json.loads(data)
        if not isinstance(data, dict) or "table" not in data:
            raise MalformedTableError("rack JSON needs a 'table' field")
        table = data["table"]
        if "size" in data and data["size"] != len(table):
            raise MalformedTableError(f"size {data['size']} does not match table with {len(table)} rows")
        return cls(table, basepoint=data.get("basepoint"), names=data.get("names"))


def canonical_automorphism(R: FiniteRack) -> tuple[int, ...]:
    R.require_rack()
    T = R.table
    perm = tuple(int(T[i, i]) for i in range(R.size))
    # r ↦ r▷r is always a rack automorphism; failure means a broken table
    assert sorted(perm) == list(range(R.size)), "canonical map is not a bijection"
    P = np.array(perm)
    assert np.array_equal(P[T], T[P[:, None], P[None, :]]), "canonical map is not a morphism"
    return perm


@dataclass(frozen=True)
class ElementPredicates:
    is_fixed: bool
    is_fixing: bool
    is_unit: bool
    is_pointable: bool


def element_predicates(R: FiniteRack, i: int) -> ElementPredicates:
    if not 0 <= i < R.size:
        raise IndexError(f"element {i} out of range")
    T = R.table
    fixed = bool(np.all(T[:, i] == i))
    fixing = bool(np.all(T[i, :] == np.arange(R.size)))
    return ElementPredicates(fixed, fixing, fixed and fixing, int(T[i, i]) == i)


# -- fixtures ---------------------------------------------------------------


def trivial_rack(n: int) -> FiniteRack:
    return FiniteRack([[j for j in range(n)] for _ in range(n)])


def dihedral_quandle(n: int) -> FiniteRack:
    return FiniteRack([[(2 * i - j) % n for j in range(n)] for i in range(n)])


def permutation_rack(perm: Sequence[int]) -> FiniteRack:
    """The rack ``x ▷ y = perm[y]``."""
    n = len(perm)
    if sorted(perm) != list(range(n)):
        raise ValueError(f"{perm} is not a permutation of 0..{n - 1}")
    return FiniteRack([list(perm) for _ in range(n)])


def _compose(p, q):
    # (p∘q)(x) = p(q(x))
    return tuple(p[x] for x in q)


def _perm_inverse(p):
    inv = [0] * len(p)
    for i, v in enumerate(p):
        inv[v] = i
    return tuple(inv)


def conjugation_quandle(generators: Iterable[Sequence[int]]) -> FiniteRack:
    """Conjugation quandle ``g ▷ h = g h g^-1`` on the group generated by permutations."""
    gens = [tuple(g) for g in generators]
    if not gens:
        raise ValueError("need at least one generator")
    degree = len(gens[0])
    for g in gens:
        if len(g) != degree or sorted(g) != list(range(degree)):
            raise ValueError(f"{g} is not a permutation of 0..{degree - 1}")
    identity = tuple(range(degree))
    elements = {identity}
    frontier = [identity]
    while frontier:
        nxt = []
        for h in frontier:
            for g in gens:
                k = _compose(g, h)
                if k not in elements:
                    elements.add(k)
                    nxt.append(k)
        frontier = nxt
    elems = sorted(elements)
    index = {g: i for i, g in enumerate(elems)}
    table = [
        [index[_compose(_compose(g, h), _perm_inverse(g))] for h in elems] for g in elems
    ]
    return FiniteRack(table, names=["".join(map(str, g)) for g in elems])


def rack_from_spec(spec: str) -> FiniteRack:
    """Parse fixture names ``trivial:n``, ``dihedral:n``, ``perm:1,2,0``, ``symmetric:n``."""
    kind, _, arg = spec.partition(":")
    try:
        if kind == "trivial":
            return trivial_rack(int(arg))
        if kind == "dihedral":
            return dihedral_quandle(int(arg))
        if kind == "perm":
            return permutation_rack([int(x) for x in arg.split(",")])
        if kind == "symmetric":
            n = int(arg)
            if n < 2:
                return conjugation_quandle([tuple(range(max(n, 1)))])
            transposition = (1, 0) + tuple(range(2, n))
            cycle = tuple(range(1, n)) + (0,)
            return conjugation_quandle([transposition, cycle])
    except ValueError as exc:
        raise ValueError(f"bad rack fixture {spec!r}: {exc}") from None
    raise ValueError(f"unknown rack fixture {spec!r}")


# -- abelian racks ----------------------------------------------------------


def _mixed_radix(moduli):
    return list(itertools.product(*(range(m) for m in moduli)))


def _apply(M, v, moduli):
    return tuple(
        sum(M[i][j] * v[j] for j in range(len(v))) % moduli[i] if moduli[i] else
        sum(M[i][j] * v[j] for j in range(len(v)))
        for i in range(len(moduli))
    )


@dataclass(frozen=True)
class AbelianRackModule:
    """An abelian group ``Z/m_1 ⊕ ... ⊕ Z/m_k`` with endomorphisms ``A`` and ``E``.

    A modulus of ``0`` denotes a free summand ``Z``.  ``A`` and ``E`` are
    integer matrices acting on coordinate vectors; they must be well defined
    on the quotient, ``A`` must be invertible and ``E∘E = E∘(1 - A)``.
    """

    moduli: tuple[int, ...]
    A: tuple[tuple[int, ...], ...]
    E: tuple[tuple[int, ...], ...]

    def __post_init__(self):
        moduli = tuple(int(m) for m in self.moduli)
        k = len(moduli)
        if k == 0 or any(m < 0 for m in moduli):
            raise ValueError(f"invalid moduli {self.moduli}")
        A = tuple(tuple(int(x) for x in row) for row in self.A)
        E = tuple(tuple(int(x) for x in row) for row in self.E)
        for name, M in (("A", A), ("E", E)):
            if len(M) != k or any(len(row) != k for row in M):
                raise ValueError(f"{name} must be a {k}x{k} matrix")
            for j, mj in enumerate(moduli):
                for i, mi in enumerate(moduli):
                    img = mj * M[i][j]
                    if (mi and img % mi) or (not mi and img):
                        raise ValueError(f"{name} is not well defined on the carrier")
        object.__setattr__(self, "moduli", moduli)
        object.__setattr__(self, "A", A)
        object.__setattr__(self, "E", E)
        ident = [[int(i == j) for j in range(k)] for i in range(k)]
        one_minus_a = [[ident[i][j] - A[i][j] for j in range(k)] for i in range(k)]
        if self._reduce(_matmul(E, E)) != self._reduce(_matmul(E, one_minus_a)):
            raise ValueError("E∘E != E∘(1 - A) on the carrier")
        if not self._a_invertible():
            raise ValueError("A is not invertible on the carrier")

    def _reduce(self, M):
        return tuple(
            tuple(x % m if m else x for x in row) for row, m in zip(M, self.moduli)
        )

    @property
    def is_finite(self) -> bool:
        return all(self.moduli)

    @property
    def order(self) -> int:
        return int(np.prod(self.moduli)) if self.is_finite else 0

    def _a_invertible(self) -> bool:
        if self.is_finite:
            elems = _mixed_radix(self.moduli)
            return len({_apply(self.A, v, self.moduli) for v in elems}) == len(elems)
        if not any(self.moduli):
            return abs(_det(self.A)) == 1
        raise ValueError("invertibility of A is only decided on finite or free carriers")

    def elements(self) -> list[tuple[int, ...]]:
        if not self.is_finite:
            raise PreconditionError("carrier is infinite")
        return _mixed_radix(self.moduli)

    def op(self, x, y) -> tuple[int, ...]:
        ex = _apply(self.E, x, self.moduli)
        ay = _apply(self.A, y, self.moduli)
        return tuple((a + b) % m if m else a + b for a, b, m in zip(ex, ay, self.moduli))

    def is_quandle_module(self) -> bool:
        k = len(self.moduli)
        target = [[int(i == j) - self.A[i][j] for j in range(k)] for i in range(k)]
        return self._reduce(self.E) == self._reduce(target)


def _matmul(X, Y):
    n, m, p = len(X), len(Y), len(Y[0]) if Y else 0
    return [[sum(X[i][t] * Y[t][j] for t in range(m)) for j in range(p)] for i in range(n)]


def _det(M):
    # fraction-free Bareiss elimination, exact over the integers
    M = [list(r) for r in M]
    n = len(M)
    sign, prev = 1, 1
    for k in range(n - 1):
        if M[k][k] == 0:
            for r in range(k + 1, n):
                if M[r][k]:
                    M[k], M[r] = M[r], M[k]
                    sign = -sign
                    break
            else:
                return 0
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                M[i][j] = (M[i][j] * M[k][k] - M[i][k] * M[k][j]) // prev
        prev = M[k][k]
    return sign * M[-1][-1] if n else 1


def module_to_rack(M: AbelianRackModule, max_elements: int = 10_000) -> FiniteRack:
    """Operation table of ``x ▷ y = E x + A y`` on a finite carrier.

    Element indices follow the mixed-radix order of coordinate vectors, so
    index 0 is the zero element.
    """
    if not M.is_finite:
        raise PreconditionError("module_to_rack needs a finite carrier (all moduli positive)")
    if M.order > max_elements:
        raise PreconditionError(f"carrier has {M.order} elements, limit is {max_elements}")
    elems = M.elements()
    index = {v: i for i, v in enumerate(elems)}
    table = [[index[M.op(x, y)] for y in elems] for x in elems]
    return FiniteRack(table, basepoint=0)


def rack_to_module_check(R: FiniteRack, moduli: Sequence[int]) -> AbelianRackModule | None:
    """Recover ``(A, E)`` if ``▷`` is of the form ``E x + A y`` for the given group.

    The carrier indices are identified with ``Z/m_1 ⊕ ... ⊕ Z/m_k`` in
    mixed-radix order.  Returns ``None`` when no such module structure exists.
    """
    moduli = tuple(int(m) for m in moduli)
    if any(m <= 0 for m in moduli) or int(np.prod(moduli)) != R.size:
        raise PreconditionError(f"group with moduli {moduli} does not match {R.size} elements")
    elems = _mixed_radix(moduli)
    index = {v: i for i, v in enumerate(elems)}
    k = len(moduli)
    basis = [tuple(int(i == j) for i in range(k)) for j in range(k)]
    # column j of A is the image of basis vector j under y ↦ 0▷y
    A = [[0] * k for _ in range(k)]
    E = [[0] * k for _ in range(k)]
    for j, b in enumerate(basis):
        a_img = elems[R.op(0, index[b])]
        e_img = elems[R.op(index[b], 0)]
        for i in range(k):
            A[i][j] = a_img[i]
            E[i][j] = e_img[i]
    try:
        M = AbelianRackModule(moduli, A, E)
    except ValueError:
        return None
    for x in elems:
        for y in elems:
            if M.op(x, y) != elems[R.op(index[x], index[y])]:
                return None
    return M
