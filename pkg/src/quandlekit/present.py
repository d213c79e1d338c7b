"""Quandle presentations, knot diagrams and colorings.

A relation ``(i, j, k, sign)`` reads ``x_i ▷ x_j = x_k`` for ``sign = +1``
and ``x_i ▷^-1 x_j = x_k`` for ``sign = -1``.

PD codes follow the convention: ``X(a,b,c,d)`` lists the four edge labels
counterclockwise starting at the incoming under-edge ``a``; ``c`` is the
outgoing under-edge and ``{b, d}`` is the over-strand.  Edge labels run
``1..2n`` along the orientation, and the crossing is positive when ``d``
is the incoming over-edge.
"""

from __future__ import annotations

import itertools
import json
import re
from dataclasses import dataclass, field
from typing import Sequence

from .exceptions import DiagramError, ParseError
from .homology import IntegerMatrix, smith_normal_form
from .racks import FiniteRack
from .words import Alphabet, Word

__all__ = [
    "QuandlePresentation",
    "KnotDiagram",
    "Crossing",
    "GroupPresentation",
    "AbelianGroup",
    "wirtinger",
    "import_pd",
    "export_pd",
    "count_colorings",
    "count_colorings_exhaustive",
    "associated_group",
    "group_abelianization",
    "knot_fixture",
    "KNOT_FIXTURES",
]


@dataclass(frozen=True)
class QuandlePresentation:
    generators: tuple[str, ...]
    relations: tuple[tuple[int, int, int, int], ...] = ()

    def __post_init__(self):
        gens = tuple(str(g) for g in self.generators)
        if not gens:
            raise ValueError("a presentation needs at least one generator")
        Alphabet(gens)  # validates names
        rels = []
        for rel in self.relations:
            if len(rel) != 4:
                raise ValueError(f"relation {rel} must be (i, j, k, sign)")
            i, j, k, s = (int(v) for v in rel)
            if not all(0 <= v < len(gens) for v in (i, j, k)):
                raise ValueError(f"relation {rel} refers to a missing generator")
            if s not in (1, -1):
                raise ValueError(f"relation sign must be +1 or -1, got {s}")
            rels.append((i, j, k, s))
        object.__setattr__(self, "generators", gens)
        object.__setattr__(self, "relations", tuple(rels))

    def to_json(self) -> dict:
        return {"generators": list(self.generators), "relations": [list(r) for r in self.relations]}

    @classmethod
    def from_json(cls, data: "dict | str") -> "QuandlePresentation":
        if isinstance(data, str):
            data = json.loads(data)
        try:
            return cls(tuple(data["generators"]), tuple(tuple(r) for r in data.get("relations", [])))
        except (KeyError, TypeError) as exc:
            raise ValueError(f"bad presentation JSON: {exc}") from None

    def __str__(self):
        g = self.generators
        lines = [f"generators: {', '.join(g)}"]
        for i, j, k, s in self.relations:
            op = "▷" if s == 1 else "▷^-1"
            lines.append(f"  {g[i]} {op} {g[j]} = {g[k]}")
        return "\n".join(lines)


@dataclass(frozen=True)
class Crossing:
    over: int
    under_in: int
    under_out: int
    sign: int


@dataclass(frozen=True)
class KnotDiagram:
    """Crossings on arcs ``0..arcs-1``; ``pd`` keeps the source PD code if any."""

    crossings: tuple[Crossing, ...]
    arcs: int
    pd: tuple[tuple[int, int, int, int], ...] | None = field(default=None, compare=False)

    def validate(self) -> None:
        if self.arcs < 1:
            raise DiagramError("a diagram needs at least one arc")
        if not self.crossings:
            if self.arcs != 1:
                raise DiagramError("a crossingless knot diagram has exactly one arc")
            return
        ins = [0] * self.arcs
        outs = [0] * self.arcs
        for c in self.crossings:
            for a in (c.over, c.under_in, c.under_out):
                if not 0 <= a < self.arcs:
                    raise DiagramError(f"arc {a} out of range 0..{self.arcs - 1}")
            if c.sign not in (1, -1):
                raise DiagramError(f"crossing sign must be ±1, got {c.sign}")
            ins[c.under_in] += 1
            outs[c.under_out] += 1
        for a in range(self.arcs):
            if ins[a] != 1 or outs[a] != 1:
                raise DiagramError(
                    f"arc {a} is under-in of {ins[a]} and under-out of {outs[a]} crossings (need 1 each)"
                )


@dataclass(frozen=True)
class GroupPresentation:
    generators: tuple[str, ...]
    relators: tuple[Word, ...] = ()

    @property
    def alphabet(self) -> Alphabet:
        return Alphabet(self.generators)

    def __str__(self):
        rels = ", ".join(str(r) for r in self.relators)
        return f"< {', '.join(self.generators)} | {rels} >"


@dataclass(frozen=True)
class AbelianGroup:
    rank: int
    torsion: tuple[int, ...] = ()

    def __str__(self):
        parts = (["Z"] if self.rank == 1 else [f"Z^{self.rank}"] if self.rank else [])
        parts += [f"Z/{d}" for d in self.torsion]
        return " ⊕ ".join(parts) if parts else "0"


# -- diagrams ---------------------------------------------------------------


def wirtinger(d: KnotDiagram, names: Sequence[str] | None = None) -> QuandlePresentation:
    d.validate()
    if names is None:
        names = [f"x{i + 1}" for i in range(d.arcs)]
    rels = tuple((c.over, c.under_in, c.under_out, c.sign) for c in d.crossings)
    return QuandlePresentation(tuple(names), rels)


def _parse_pd_text(text: str) -> list[tuple[int, int, int, int]]:
    crossings = []
    pos = 0
    n = len(text)
    item = re.compile(r"\s*X\s*([(\[])")
    while True:
        while pos < n and text[pos] in " \t\r\n,;":
            pos += 1
        if pos >= n:
            break
        m = item.match(text, pos)
        if not m:
            raise ParseError(f"expected 'X(' but found {text[pos:pos + 8]!r}", pos)
        close = ")" if m.group(1) == "(" else "]"
        end = text.find(close, m.end())
        if end < 0:
            raise ParseError(f"unterminated crossing, missing {close!r}", m.start())
        body = text[m.end() : end]
        parts = [p.strip() for p in body.split(",")]
        if len(parts) != 4 or not all(re.fullmatch(r"\d+", p) for p in parts):
            raise ParseError(f"crossing needs four positive integer labels, got X({body})", m.start())
        crossings.append(tuple(int(p) for p in parts))
        pos = end + 1
    if not crossings:
        raise ParseError("empty PD code", 0)
    return crossings


def import_pd(text: str) -> KnotDiagram:
    """Read a PD code such as ``X(1,5,2,4) X(3,1,4,6) X(5,3,6,2)``.

    Arcs are numbered in order of first appearance, scanning each crossing's
    over-strand, then its incoming and outgoing under-edges.
    """
    pd = _parse_pd_text(text)
    labels = [x for c in pd for x in c]
    count = len(labels) // 2
    expected = set(range(1, count + 1))
    seen: dict[int, int] = {}
    for x in labels:
        seen[x] = seen.get(x, 0) + 1
    for x, k in sorted(seen.items()):
        if k != 2:
            raise DiagramError(f"edge label {x} appears {k} times; every edge needs exactly 2 ends")
    if set(seen) != expected:
        raise DiagramError(f"edge labels must be 1..{count}, got {sorted(seen)}")

    def succ(x):
        return x % count + 1

    parent = {x: x for x in expected}

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    signs = []
    for idx, (a, b, c, d) in enumerate(pd):
        if c != succ(a):
            raise DiagramError(
                f"crossing {idx + 1} X({a},{b},{c},{d}): {a} is not the incoming under-edge "
                f"(outgoing under-edge must be {succ(a)})"
            )
        if d == succ(b) and (b != succ(d) or d == b + 1):
            signs.append(-1)  # b enters the crossing
        elif b == succ(d):
            signs.append(1)
        else:
            raise DiagramError(f"crossing {idx + 1} X({a},{b},{c},{d}): over-edges {b},{d} are not consecutive")
        parent[find(b)] = find(d)

    arc_of: dict[int, int] = {}

    def arc(x):
        r = find(x)
        if r not in arc_of:
            arc_of[r] = len(arc_of)
        return arc_of[r]

    crossings = []
    for (a, b, c, d), s in zip(pd, signs):
        over = arc(b)
        crossings.append(Crossing(over, arc(a), arc(c), s))
    diagram = KnotDiagram(tuple(crossings), len(arc_of), tuple(pd))
    try:
        diagram.validate()
    except DiagramError as exc:
        raise DiagramError(f"PD code does not describe a knot diagram: {exc}") from None
    return diagram


def export_pd(d: KnotDiagram) -> str:
    if d.pd is None:
        raise DiagramError("diagram has no PD code attached (it was not imported from PD)")
    return " ".join(f"X({a},{b},{c},{e})" for a, b, c, e in d.pd)


# Standard diagrams; the trefoil is the all-positive one with relations
# x1▷x2=x3, x2▷x3=x1, x3▷x1=x2.
_PD_FIXTURES = {
    "3_1": "X(1,5,2,4) X(3,1,4,6) X(5,3,6,2)",
    "4_1": "X(4,2,5,1) X(8,6,1,5) X(6,3,7,4) X(2,7,3,8)",
}
KNOT_FIXTURES = ("unknot", "3_1", "4_1")


def knot_fixture(name: str) -> KnotDiagram:
    if name in ("unknot", "0_1"):
        return KnotDiagram((), 1)
    if name in _PD_FIXTURES:
        return import_pd(_PD_FIXTURES[name])
    raise ValueError(f"unknown knot fixture {name!r}; choose from {', '.join(KNOT_FIXTURES)}")


# -- colorings --------------------------------------------------------------


def _inverse_table(T: FiniteRack) -> list[list[int]]:
    n = T.size
    inv = [[0] * n for _ in range(n)]
    for i in range(n):
        for j in range(n):
            inv[i][T.op(i, j)] = j
    return inv


def count_colorings(P: QuandlePresentation, T: FiniteRack) -> int:
    """Number of quandle homomorphisms from the presented quandle to ``T``.

    Backtracking over generators (highest relation degree first) with forward
    propagation: once ``x_i`` and ``x_j`` are known, ``x_k`` is forced, and
    once ``x_i`` and ``x_k`` are known, so is ``x_j``.
    """
    T.require_quandle()
    n = T.size
    fwd = [[T.op(i, j) for j in range(n)] for i in range(n)]
    bwd = _inverse_table(T)
    ops = {1: fwd, -1: bwd}
    inv_ops = {1: bwd, -1: fwd}
    g = len(P.generators)
    touching: list[list[tuple]] = [[] for _ in range(g)]
    for rel in P.relations:
        for v in set(rel[:3]):
            touching[v].append(rel)
    order = sorted(range(g), key=lambda v: -len(touching[v]))

    def propagate(assign, start):
        stack = [start]
        trail = []
        while stack:
            v = stack.pop()
            for i, j, k, s in touching[v]:
                ai, aj, ak = assign[i], assign[j], assign[k]
                if ai is None:
                    continue
                if aj is not None:
                    want = ops[s][ai][aj]
                    if ak is None:
                        assign[k] = want
                        trail.append(k)
                        stack.append(k)
                    elif ak != want:
                        return trail, False
                elif ak is not None:
                    assign[j] = inv_ops[s][ai][ak]
                    trail.append(j)
                    stack.append(j)
        return trail, True

    assign: list[int | None] = [None] * g

    def search(pos):
        while pos < g and assign[order[pos]] is not None:
            pos += 1
        if pos == g:
            return 1
        v = order[pos]
        total = 0
        for c in range(n):
            assign[v] = c
            trail, ok = propagate(assign, v)
            if ok:
                total += search(pos + 1)
            for w in trail:
                assign[w] = None
        assign[v] = None
        return total

    return search(0)


def count_colorings_exhaustive(P: QuandlePresentation, T: FiniteRack) -> int:
    """Brute-force count over all ``|T|^g`` assignments; reference implementation."""
    T.require_quandle()
    n = T.size
    total = 0
    for colors in itertools.product(range(n), repeat=len(P.generators)):
        ok = True
        for i, j, k, s in P.relations:
            lhs = T.op(colors[i], colors[j]) if s == 1 else T.op_inverse(colors[i], colors[j])
            if lhs != colors[k]:
                ok = False
                break
        total += ok
    return total


# -- associated group -------------------------------------------------------


def associated_group(P: QuandlePresentation) -> GroupPresentation:
    X = Alphabet(P.generators)
    relators = []
    for i, j, k, s in P.relations:
        xi, xj, xk = P.generators[i], P.generators[j], P.generators[k]
        letters = [(xi, s), (xj, 1), (xi, -s), (xk, -1)]
        relators.append(Word.from_letters(letters, X))
    return GroupPresentation(P.generators, tuple(relators))


def group_abelianization(G: GroupPresentation) -> AbelianGroup:
    gens = G.generators
    M = IntegerMatrix([[r.exponent_sum(x) for x in gens] for r in G.relators], len(gens))
    snf = smith_normal_form(M, transforms=False)
    return AbelianGroup(len(gens) - snf.rank, tuple(d for d in snf.divisors if d != 1))
