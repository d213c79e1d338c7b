"""Integer rack and quandle homology of finite racks.

Chain groups are free on tuples of rack elements; the boundary is the
left-action form of the usual rack boundary,

    ∂(x_1..x_n) = Σ_{i=2..n} (-1)^i [ (x_1..x̂_i..x_n)
                                      - (x_i▷x_1, .., x_i▷x_{i-1}, x_{i+1}..x_n) ],

and ``C_0 = Z`` with ``∂_1 = 0``.  Degrees are the classical ones; the
Quillen degree is one lower.  All matrices hold Python integers.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field

from .exceptions import CapacityError, QuandleKitError
from .racks import FiniteRack

__all__ = [
    "IntegerMatrix",
    "SmithForm",
    "smith_normal_form",
    "determinant",
    "ChainComplex",
    "HomologyGroup",
    "rack_chain_complex",
    "quandle_chain_complex",
    "homology",
    "homology_groups",
    "MAX_BASIS",
]

MAX_BASIS = 10**6


class IntegerMatrix:
    """Dense integer matrix with exact (unbounded) entries."""

    __slots__ = ("rows", "cols", "data")

    def __init__(self, data, cols: int | None = None):
        data = [[int(x) for x in row] for row in data]
        if cols is None:
            cols = len(data[0]) if data else 0
        if any(len(r) != cols for r in data):
            raise ValueError("rows have inconsistent lengths")
        self.rows = len(data)
        self.cols = cols
        self.data = data

    @classmethod
    def zeros(cls, rows: int, cols: int) -> "IntegerMatrix":
        return cls([[0] * cols for _ in range(rows)], cols)

    @classmethod
    def identity(cls, n: int) -> "IntegerMatrix":
        return cls([[int(i == j) for j in range(n)] for i in range(n)], n)

    @property
    def shape(self) -> tuple[int, int]:
        return self.rows, self.cols

    def __getitem__(self, ij):
        i, j = ij
        return self.data[i][j]

    def __eq__(self, other):
        if not isinstance(other, IntegerMatrix):
            return NotImplemented
        return self.shape == other.shape and self.data == other.data

    def __matmul__(self, other: "IntegerMatrix") -> "IntegerMatrix":
        if self.cols != other.rows:
            raise ValueError(f"shape mismatch {self.shape} @ {other.shape}")
        cols_t = list(zip(*other.data)) if other.rows else [()] * other.cols
        out = [[sum(a * b for a, b in zip(row, col)) for col in cols_t] for row in self.data]
        return IntegerMatrix(out, other.cols)

    def is_zero(self) -> bool:
        return all(x == 0 for row in self.data for x in row)

    def tolist(self) -> list[list[int]]:
        return [list(r) for r in self.data]

    def __repr__(self):
        return f"IntegerMatrix({self.data!r})"

    def to_triplets(self) -> str:
        """Plain ``rows cols`` header followed by ``i j value`` lines for nonzeros."""
        lines = [f"{self.rows} {self.cols}"]
        for i, row in enumerate(self.data):
            lines.extend(f"{i} {j} {v}" for j, v in enumerate(row) if v)
        return "\n".join(lines) + "\n"

    @classmethod
    def from_triplets(cls, text: str) -> "IntegerMatrix":
        lines = [ln.split() for ln in text.strip().splitlines() if ln.strip()]
        rows, cols = map(int, lines[0])
        M = cls.zeros(rows, cols)
        for i, j, v in lines[1:]:
            M.data[int(i)][int(j)] = int(v)
        return M


def determinant(M: IntegerMatrix) -> int:
    if M.rows != M.cols:
        raise ValueError("determinant of a non-square matrix")
    A = M.tolist()
    n = len(A)
    sign, prev = 1, 1
    for k in range(n - 1):
        if A[k][k] == 0:
            for r in range(k + 1, n):
                if A[r][k]:
                    A[k], A[r] = A[r], A[k]
                    sign = -sign
                    break
            else:
                return 0
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                A[i][j] = (A[i][j] * A[k][k] - A[i][k] * A[k][j]) // prev
        prev = A[k][k]
    return sign * A[-1][-1] if n else 1


@dataclass
class SmithForm:
    """``U @ M @ V == D`` with ``D`` diagonal, ``d_i | d_{i+1}``, ``U, V`` unimodular."""

    D: IntegerMatrix
    U: IntegerMatrix | None
    V: IntegerMatrix | None
    divisors: list[int] = field(default_factory=list)

    @property
    def rank(self) -> int:
        return len(self.divisors)


def smith_normal_form(M: IntegerMatrix, transforms: bool = True) -> SmithForm:
    """Smith normal form by elementary row and column operations.

    ``divisors`` lists the nonzero diagonal entries (all positive).  Pass
    ``transforms=False`` to skip accumulating ``U`` and ``V``.
    """
    if not isinstance(M, IntegerMatrix):
        M = IntegerMatrix(M)
    m, n = M.shape
    A = M.tolist()
    U = [[int(i == j) for j in range(m)] for i in range(m)] if transforms else None
    V = [[int(i == j) for j in range(n)] for i in range(n)] if transforms else None

    def swap_rows(i, j):
        A[i], A[j] = A[j], A[i]
        if U is not None:
            U[i], U[j] = U[j], U[i]

    def swap_cols(i, j):
        for row in A:
            row[i], row[j] = row[j], row[i]
        if V is not None:
            for row in V:
                row[i], row[j] = row[j], row[i]

    def add_row(src, dst, q):
        # row[dst] -= q * row[src]
        rs, rd = A[src], A[dst]
        for c in range(n):
            if rs[c]:
                rd[c] -= q * rs[c]
        if U is not None:
            us, ud = U[src], U[dst]
            for c in range(m):
                if us[c]:
                    ud[c] -= q * us[c]

    def add_col(src, dst, q):
        for row in A:
            if row[src]:
                row[dst] -= q * row[src]
        if V is not None:
            for row in V:
                if row[src]:
                    row[dst] -= q * row[src]

    t = 0
    while t < min(m, n):
        # pivot: smallest nonzero |entry| in the remaining block
        best = None
        for i in range(t, m):
            row = A[i]
            for j in range(t, n):
                v = row[j]
                if v and (best is None or abs(v) < best[0]):
                    best = (abs(v), i, j)
                    if best[0] == 1:
                        break
            if best and best[0] == 1:
                break
        if best is None:
            break
        _, i, j = best
        swap_rows(t, i)
        swap_cols(t, j)
        while True:
            p = A[t][t]
            done = True
            for i in range(t + 1, m):
                if A[i][t]:
                    add_row(t, i, A[i][t] // p)
                    if A[i][t]:
                        done = False
            for j in range(t + 1, n):
                if A[t][j]:
                    add_col(t, j, A[t][j] // p)
                    if A[t][j]:
                        done = False
            if not done:
                # a remainder smaller than the pivot survived; move it in
                best = None
                for i in range(t + 1, m):
                    if A[i][t] and (best is None or abs(A[i][t]) < best[0]):
                        best = (abs(A[i][t]), i, "r")
                for j in range(t + 1, n):
                    if A[t][j] and (best is None or abs(A[t][j]) < best[0]):
                        best = (abs(A[t][j]), j, "c")
                if best[2] == "r":
                    swap_rows(t, best[1])
                else:
                    swap_cols(t, best[1])
                continue
            # pivot must divide the whole remaining block
            bad = next(
                ((i, j) for i in range(t + 1, m) for j in range(t + 1, n) if A[i][j] % p),
                None,
            )
            if bad is None:
                break
            add_row(bad[0], t, -1)
        if A[t][t] < 0:
            A[t] = [-x for x in A[t]]
            if U is not None:
                U[t] = [-x for x in U[t]]
        t += 1

    divisors = [A[i][i] for i in range(min(m, n)) if A[i][i]]
    return SmithForm(
        IntegerMatrix(A, n),
        IntegerMatrix(U, m) if U is not None else None,
        IntegerMatrix(V, n) if V is not None else None,
        divisors,
    )


# -- chain complexes --------------------------------------------------------


@dataclass(frozen=True)
class HomologyGroup:
    rank: int
    torsion: tuple[int, ...] = ()

    def __str__(self):
        parts = []
        if self.rank == 1:
            parts.append("Z")
        elif self.rank > 1:
            parts.append(f"Z^{self.rank}")
        parts.extend(f"Z/{d}" for d in self.torsion)
        return " ⊕ ".join(parts) if parts else "0"

    def to_json(self) -> dict:
        return {"rank": self.rank, "torsion": list(self.torsion)}


@dataclass
class ChainComplex:
    """Chain groups ``C_0..C_N`` with ``boundaries[n]: C_n -> C_{n-1}`` for ``n >= 1``.

    ``bases[n]`` lists the basis tuples of ``C_n``; ``bases[0] == [()]``.
    Boundary matrices have one row per basis element of ``C_{n-1}``.
    """

    bases: list[list[tuple[int, ...]]]
    boundaries: dict[int, IntegerMatrix]
    kind: str = "rack"

    @property
    def max_degree(self) -> int:
        return len(self.bases) - 1

    def rank(self, n: int) -> int:
        return len(self.bases[n]) if 0 <= n < len(self.bases) else 0

    def boundary(self, n: int) -> IntegerMatrix:
        if n <= 0 or n > self.max_degree:
            raise KeyError(f"boundary ∂_{n} not available (complex stops at degree {self.max_degree})")
        return self.boundaries[n]

    def check_boundaries(self) -> None:
        for n in range(2, self.max_degree + 1):
            if not (self.boundaries[n - 1] @ self.boundaries[n]).is_zero():
                raise QuandleKitError(f"∂_{n - 1} ∘ ∂_{n} != 0")


def _terms(R: FiniteRack, x: tuple[int, ...]):
    T = R.table
    n = len(x)
    for i in range(1, n):
        sign = 1 if (i + 1) % 2 == 0 else -1  # (-1)^i with 1-based i
        xi = x[i]
        yield sign, x[:i] + x[i + 1 :]
        moved = tuple(int(T[xi, xj]) for xj in x[:i]) + x[i + 1 :]
        yield -sign, moved


def _is_degenerate(x: tuple[int, ...]) -> bool:
    return any(a == b for a, b in zip(x, x[1:]))


def _build(R: FiniteRack, max_degree: int, quotient: bool) -> ChainComplex:
    R.require_rack()
    if max_degree < 1:
        raise ValueError("max_degree must be at least 1")
    size = R.size
    total = sum(size**n for n in range(1, max_degree + 1))
    if total > MAX_BASIS:
        raise CapacityError(
            f"chain complex would need {total} basis tuples (limit {MAX_BASIS}); lower the degree"
        )
    bases: list[list[tuple[int, ...]]] = [[()]]
    for n in range(1, max_degree + 1):
        tuples = itertools.product(range(size), repeat=n)
        bases.append([x for x in tuples if not (quotient and _is_degenerate(x))])
    boundaries = {1: IntegerMatrix.zeros(1, len(bases[1]))}
    for n in range(2, max_degree + 1):
        index = {x: r for r, x in enumerate(bases[n - 1])}
        M = IntegerMatrix.zeros(len(bases[n - 1]), len(bases[n]))
        for col, x in enumerate(bases[n]):
            for s, y in _terms(R, x):
                r = index.get(y)
                if r is not None:  # degenerate faces vanish in the quotient
                    M.data[r][col] += s
        boundaries[n] = M
    C = ChainComplex(bases, boundaries, "quandle" if quotient else "rack")
    C.check_boundaries()
    return C


def rack_chain_complex(R: FiniteRack, max_degree: int = 4) -> ChainComplex:
    return _build(R, max_degree, quotient=False)


def quandle_chain_complex(R: FiniteRack, max_degree: int = 4) -> ChainComplex:
    """Rack complex modulo tuples with two equal adjacent entries."""
    R.require_quandle()
    return _build(R, max_degree, quotient=True)


def homology(C: ChainComplex, n: int) -> HomologyGroup:
    """``H_n = ker ∂_n / im ∂_{n+1}``; needs ``∂_{n+1}``, so ``n < C.max_degree``."""
    if n < 0:
        raise ValueError("degree must be non-negative")
    if n + 1 > C.max_degree:
        raise KeyError(f"H_{n} needs ∂_{n + 1}; build the complex to degree {n + 1}")
    dim = C.rank(n)
    rank_out = smith_normal_form(C.boundary(n), transforms=False).rank if n >= 1 else 0
    incoming = smith_normal_form(C.boundary(n + 1), transforms=False)
    torsion = tuple(d for d in incoming.divisors if d != 1)
    return HomologyGroup(dim - rank_out - incoming.rank, torsion)


def homology_groups(C: ChainComplex, degrees=None) -> dict[int, HomologyGroup]:
    if degrees is None:
        degrees = range(0, C.max_degree)
    return {n: homology(C, n) for n in degrees}
