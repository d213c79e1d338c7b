"""Freely reduced words in the free group on a finite alphabet.

Letters are stored internally as signed codes: generator ``i`` of the
alphabet is ``i + 1`` and its inverse is ``-(i + 1)``.  Words are immutable
and hashable, so they can be used directly as dictionary keys and inside
normal forms of free racks and quandles.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from typing import Iterable, Iterator, Sequence

from .exceptions import AlphabetMismatchError, ParseError

__all__ = [
    "Alphabet",
    "Word",
    "multiply",
    "invert",
    "conjugate",
    "are_conjugate",
    "cyclic_reduction",
    "enumerate_words",
]

_TOKEN = re.compile(r"^([A-Za-z_][A-Za-z0-9_]*)(\^-1)?$")


@dataclass(frozen=True)
class Alphabet:
    """An ordered set of generator names."""

    names: tuple[str, ...]
    _index: dict = field(init=False, repr=False, compare=False, hash=False)

    def __init__(self, names: Iterable[str] | str):
        if isinstance(names, str):
            names = names.replace(",", " ").split()
        names = tuple(names)
        for n in names:
            if not isinstance(n, str) or not _TOKEN.match(n) or n.endswith("^-1"):
                raise ValueError(f"invalid generator name {n!r}")
            if n in ("e", "1"):
                raise ValueError(f"generator name {n!r} is reserved")
        if len(set(names)) != len(names):
            raise ValueError(f"generator names must be distinct: {names}")
        object.__setattr__(self, "names", names)
        object.__setattr__(self, "_index", {n: i for i, n in enumerate(names)})

    def __len__(self) -> int:
        return len(self.names)

    def __iter__(self) -> Iterator[str]:
        return iter(self.names)

    def __contains__(self, name) -> bool:
        return name in self._index

    def index(self, name: str) -> int:
        try:
            return self._index[name]
        except KeyError:
            raise KeyError(f"{name!r} is not a generator of {self.names}") from None

    def code(self, name: str, exponent: int = 1) -> int:
        if exponent not in (1, -1):
            raise ValueError(f"letter exponent must be +1 or -1, got {exponent}")
        return exponent * (self.index(name) + 1)

    @property
    def identity(self) -> "Word":
        return Word((), self)

    def gen(self, name: str) -> "Word":
        return Word((self.code(name),), self)

    def word(self, spec: "str | Sequence[tuple[str, int]]") -> "Word":
        """Build a reduced word from text (``"a b^-1"``) or ``(name, ±1)`` pairs."""
        if isinstance(spec, str):
            return Word.parse(spec, self)
        return Word.from_letters(spec, self)

    def without(self, name: str) -> "Alphabet":
        return Alphabet(n for n in self.names if n != name)


def _reduce(codes: Iterable[int]) -> tuple[int, ...]:
    stack: list[int] = []
    for c in codes:
        if stack and stack[-1] == -c:
            stack.pop()
        else:
            stack.append(c)
    return tuple(stack)


@dataclass(frozen=True)
class Word:
    """A freely reduced word; the empty word is the identity."""

    codes: tuple[int, ...]
    alphabet: Alphabet

    def __post_init__(self):
        n = len(self.alphabet)
        codes = tuple(self.codes)
        for c in codes:
            if c == 0 or abs(c) > n:
                raise ValueError(f"letter code {c} out of range for {self.alphabet.names}")
        if any(a == -b for a, b in zip(codes, codes[1:])):
            codes = _reduce(codes)
        object.__setattr__(self, "codes", codes)

    def __hash__(self):
        return hash(self.codes)

    @classmethod
    def from_letters(cls, letters: Iterable[tuple[str, int]], alphabet: Alphabet) -> "Word":
        return cls(_reduce(alphabet.code(g, e) for g, e in letters), alphabet)

    @classmethod
    def parse(cls, text: str, alphabet: Alphabet) -> "Word":
        """Parse the whitespace-separated token format; ``1`` is the identity."""
        stripped = text.strip()
        if stripped in ("1", "e", ""):
            return cls((), alphabet)
        letters = []
        pos = 0
        for tok in stripped.split():
            pos = text.index(tok, pos)
            m = _TOKEN.match(tok)
            if not m or m.group(1) not in alphabet:
                raise ParseError(f"bad word token {tok!r}", pos)
            letters.append((m.group(1), -1 if m.group(2) else 1))
            pos += len(tok)
        return cls.from_letters(letters, alphabet)

    @property
    def letters(self) -> tuple[tuple[str, int], ...]:
        names = self.alphabet.names
        return tuple((names[abs(c) - 1], 1 if c > 0 else -1) for c in self.codes)

    def __len__(self) -> int:
        return len(self.codes)

    def is_identity(self) -> bool:
        return not self.codes

    def __str__(self) -> str:
        if not self.codes:
            return "1"
        return " ".join(g if e == 1 else f"{g}^-1" for g, e in self.letters)

    def __repr__(self) -> str:
        return f"Word({str(self)!r})"

    def __mul__(self, other: "Word") -> "Word":
        return multiply(self, other)

    def inverse(self) -> "Word":
        return invert(self)

    def exponent_sum(self, name: str) -> int:
        code = self.alphabet.index(name) + 1
        return sum(1 if c == code else -1 for c in self.codes if abs(c) == code)

    def sort_key(self) -> tuple:
        """Length-lexicographic key with letter order a < a^-1 < b < b^-1 < ..."""
        return (len(self.codes), tuple(2 * abs(c) - (c > 0) for c in self.codes))


def _trusted(codes: tuple[int, ...], alphabet: Alphabet) -> Word:
    # codes already reduced and in range; skips validation on hot paths
    w = object.__new__(Word)
    object.__setattr__(w, "codes", codes)
    object.__setattr__(w, "alphabet", alphabet)
    return w


def _check_same(u: Word, v: Word) -> None:
    if u.alphabet is not v.alphabet and u.alphabet != v.alphabet:
        raise AlphabetMismatchError(
            f"words over different alphabets: {u.alphabet.names} vs {v.alphabet.names}"
        )


def multiply(u: Word, v: Word) -> Word:
    _check_same(u, v)
    a, b = u.codes, v.codes
    i = 0
    # cancellation only happens at the junction
    while i < len(a) and i < len(b) and a[len(a) - 1 - i] == -b[i]:
        i += 1
    return _trusted(a[: len(a) - i] + b[i:], u.alphabet)


def invert(u: Word) -> Word:
    return _trusted(tuple(-c for c in reversed(u.codes)), u.alphabet)


def conjugate(g: Word, x: Word) -> Word:
    """Return the reduced form of ``g x g^-1``."""
    _check_same(g, x)
    a = g.codes
    return _trusted(_reduce(a + x.codes + tuple(-c for c in reversed(a))), g.alphabet)


def cyclic_reduction(u: Word) -> Word:
    c = u.codes
    i, j = 0, len(c) - 1
    while i < j and c[i] == -c[j]:
        i += 1
        j -= 1
    return _trusted(c[i : j + 1], u.alphabet)


def are_conjugate(u: Word, v: Word) -> bool:
    _check_same(u, v)
    a = cyclic_reduction(u).codes
    b = cyclic_reduction(v).codes
    if len(a) != len(b):
        return False
    if not a:
        return True
    doubled = a + a
    n = len(a)
    return any(doubled[k : k + n] == b for k in range(n))


def enumerate_words(alphabet: Alphabet, max_length: int) -> list[Word]:
    """All reduced words of length at most ``max_length`` in length-lex order."""
    if max_length < 0:
        raise ValueError("max_length must be non-negative")
    n = len(alphabet)
    letters = sorted(
        [c for i in range(1, n + 1) for c in (i, -i)], key=lambda c: 2 * abs(c) - (c > 0)
    )
    out = [_trusted((), alphabet)]
    layer: list[tuple[int, ...]] = [()]
    for _ in range(max_length):
        nxt = []
        for w in layer:
            for c in letters:
                if w and w[-1] == -c:
                    continue
                nxt.append(w + (c,))
        out.extend(_trusted(w, alphabet) for w in nxt)
        layer = nxt
    return out
