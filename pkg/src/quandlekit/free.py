"""Normal-form models of free racks and quandles and their pointed variants.

Every model works on pairs ``(g, x)`` of a reduced word ``g`` in the free
group ``F(X)`` and a generator ``x``, with

    (g, x) ▷ (h, y) = (g x g^-1 h, y),

and differs only in how pairs are identified:

``FR``        no identification.
``FQ``        ``(g, x) ~ (g x^k, x)``: the pair stands for ``g x g^-1``.
``FR*``       ``(g, p) ~ (g p^k, p)`` for the basepoint ``p`` only.
``FR_fixed``  all ``(g, p)`` collapse to the basepoint; for ``x != p`` only
              the image of ``g`` in ``F(X - p) × Z`` matters.
``FQ*``       ``FQ`` with ``(e, p)`` as basepoint.

Normal forms strip trailing powers (FQ, FR*) or record the deletion/exponent
pair (FR_fixed), so two elements are equal iff their dataclasses compare equal.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from typing import Callable, Mapping

from .exceptions import ParseError, PreconditionError
from .racks import FiniteRack, element_predicates
from .words import Alphabet, Word, conjugate, enumerate_words, invert, multiply

__all__ = [
    "FreeRackElement",
    "FreeQuandleElement",
    "PointedFreeRackElement",
    "FixedFreeRackElement",
    "FreeRack",
    "FreeQuandle",
    "PointedFreeRack",
    "FixedFreeRack",
    "PointedFreeQuandle",
    "free_model",
    "MODEL_NAMES",
    "fr_op",
    "fr_op_inverse",
    "fq_normalize",
    "fq_op",
    "project_fr_to_fq",
    "pointed_fr_normalize",
    "pointed_fr_op",
    "fixed_fr_normalize",
    "fixed_fr_op",
    "enumerate_free",
    "extend_to_rack",
]


@dataclass(frozen=True)
class FreeRackElement:
    word: Word
    gen: str

    def __str__(self):
        return f"({self.word} ; {self.gen})"


@dataclass(frozen=True)
class FreeQuandleElement:
    """The conjugate ``word · gen · word^-1``, with ``word`` not ending in ``gen^±1``."""

    word: Word
    gen: str

    def __str__(self):
        return f"({self.word} ; {self.gen})"

    def as_word(self) -> Word:
        return conjugate(self.word, self.word.alphabet.gen(self.gen))


@dataclass(frozen=True)
class PointedFreeRackElement:
    word: Word
    gen: str
    basepoint: str

    def __str__(self):
        return f"({self.word} ; {self.gen})"


@dataclass(frozen=True)
class FixedFreeRackElement:
    """Either the basepoint class or ``(u, k, gen)`` with ``u`` over ``X - {p}``.

    The basepoint class is stored as ``(e, 0, p)``.
    """

    u: Word
    k: int
    gen: str
    basepoint: str

    @property
    def is_basepoint(self) -> bool:
        return self.gen == self.basepoint

    def __str__(self):
        if self.is_basepoint:
            return "*"
        return f"({self.u} ; {self.basepoint}^{self.k} ; {self.gen})"


def _strip_trailing(word: Word, gen: str) -> Word:
    code = word.alphabet.index(gen) + 1
    c = word.codes
    end = len(c)
    while end and abs(c[end - 1]) == code:
        end -= 1
    return Word(c[:end], word.alphabet) if end != len(c) else word


# -- module-level operations ------------------------------------------------


def fr_op(a: FreeRackElement, b: FreeRackElement) -> FreeRackElement:
    g = a.word
    x = g.alphabet.gen(a.gen)
    return FreeRackElement(multiply(conjugate(g, x), b.word), b.gen)


def fr_op_inverse(a: FreeRackElement, b: FreeRackElement) -> FreeRackElement:
    """The unique ``c`` with ``fr_op(a, c) == b``."""
    g = a.word
    x_inv = invert(g.alphabet.gen(a.gen))
    return FreeRackElement(multiply(conjugate(g, x_inv), b.word), b.gen)


def fq_normalize(word: Word, gen: str) -> FreeQuandleElement:
    return FreeQuandleElement(_strip_trailing(word, gen), gen)


def fq_op(a: FreeQuandleElement, b: FreeQuandleElement) -> FreeQuandleElement:
    return fq_normalize(multiply(a.as_word(), b.word), b.gen)


def fq_op_inverse(a: FreeQuandleElement, b: FreeQuandleElement) -> FreeQuandleElement:
    return fq_normalize(multiply(invert(a.as_word()), b.word), b.gen)


def project_fr_to_fq(a: FreeRackElement) -> FreeQuandleElement:
    return fq_normalize(a.word, a.gen)


def pointed_fr_normalize(word: Word, gen: str, basepoint: str) -> PointedFreeRackElement:
    if gen == basepoint:
        word = _strip_trailing(word, basepoint)
    return PointedFreeRackElement(word, gen, basepoint)


def pointed_fr_op(a: PointedFreeRackElement, b: PointedFreeRackElement) -> PointedFreeRackElement:
    c = fr_op(FreeRackElement(a.word, a.gen), FreeRackElement(b.word, b.gen))
    return pointed_fr_normalize(c.word, c.gen, b.basepoint)


def pointed_fr_op_inverse(a: PointedFreeRackElement, b: PointedFreeRackElement) -> PointedFreeRackElement:
    c = fr_op_inverse(FreeRackElement(a.word, a.gen), FreeRackElement(b.word, b.gen))
    return pointed_fr_normalize(c.word, c.gen, b.basepoint)


def _split_basepoint(word: Word, basepoint: str) -> tuple[Word, int]:
    """Image of ``word`` under ``F(X) -> F(X - p) × Z``."""
    sub = word.alphabet.without(basepoint)
    names = word.alphabet.names
    code = word.alphabet.index(basepoint) + 1
    letters = [(names[abs(c) - 1], 1 if c > 0 else -1) for c in word.codes if abs(c) != code]
    return Word.from_letters(letters, sub), word.exponent_sum(basepoint)


def fixed_fr_normalize(word: Word, gen: str, basepoint: str) -> FixedFreeRackElement:
    sub = word.alphabet.without(basepoint)
    if gen == basepoint:
        return FixedFreeRackElement(sub.identity, 0, basepoint, basepoint)
    u, k = _split_basepoint(word, basepoint)
    return FixedFreeRackElement(u, k, gen, basepoint)


def fixed_fr_op(a: FixedFreeRackElement, b: FixedFreeRackElement) -> FixedFreeRackElement:
    if b.is_basepoint:
        return b
    if a.is_basepoint:
        # the class of p acts through its exponent on the Z factor
        return FixedFreeRackElement(b.u, b.k + 1, b.gen, b.basepoint)
    # p-exponents cancel inside u x u^-1, leaving only b's
    x = a.u.alphabet.gen(a.gen)
    return FixedFreeRackElement(multiply(conjugate(a.u, x), b.u), b.k, b.gen, b.basepoint)


def fixed_fr_op_inverse(a: FixedFreeRackElement, b: FixedFreeRackElement) -> FixedFreeRackElement:
    if b.is_basepoint:
        return b
    if a.is_basepoint:
        return FixedFreeRackElement(b.u, b.k - 1, b.gen, b.basepoint)
    x_inv = invert(a.u.alphabet.gen(a.gen))
    return FixedFreeRackElement(multiply(conjugate(a.u, x_inv), b.u), b.k, b.gen, b.basepoint)


# -- model objects ----------------------------------------------------------


_ELEMENT = re.compile(r"^\(\s*([^;()]*?)\s*;\s*(?:([^;()]*?)\s*;\s*)?([A-Za-z_][A-Za-z0-9_]*)\s*\)$")


class _FreeModel:
    name: str
    needs_basepoint = False
    is_quandle = False

    def __init__(self, alphabet: Alphabet | str, basepoint: str | None = None):
        if not isinstance(alphabet, Alphabet):
            alphabet = Alphabet(alphabet)
        if len(alphabet) == 0:
            raise ValueError("alphabet must be nonempty")
        if self.needs_basepoint:
            if basepoint is None:
                raise PreconditionError(f"model {self.name} requires a basepoint")
            if basepoint not in alphabet:
                raise PreconditionError(f"basepoint {basepoint!r} is not a generator")
        elif basepoint is not None:
            raise PreconditionError(f"model {self.name} takes no basepoint")
        self.alphabet = alphabet
        self.basepoint = basepoint

    def __repr__(self):
        bp = f", basepoint={self.basepoint!r}" if self.basepoint else ""
        return f"{type(self).__name__}({list(self.alphabet.names)}{bp})"

    def generator(self, name: str):
        self.alphabet.index(name)
        return self.normalize(self.alphabet.identity, name)

    def enumerate(self, max_word_length: int) -> list:
        """Distinct normal forms of all pairs whose word has length ``<= max_word_length``.

        Order: generators in alphabet order, then words in length-lex order,
        keeping the first occurrence of each normal form.
        """
        words = enumerate_words(self.alphabet, max_word_length)
        seen = {}
        for x in self.alphabet:
            for g in words:
                el = self.normalize(g, x)
                if el not in seen:
                    seen[el] = None
        return list(seen)

    def representative(self, el) -> tuple[Word, str]:
        """A pair ``(g, x)`` in ``F(X) × X`` whose class is ``el``."""
        return el.word, el.gen

    def format(self, el) -> str:
        return str(el)

    def parse(self, text: str):
        m = _ELEMENT.match(text.strip())
        if not m or m.group(2) is not None:
            raise ParseError(f"expected '(word ; generator)', got {text!r}")
        if m.group(3) not in self.alphabet:
            raise ParseError(f"unknown generator {m.group(3)!r}")
        return self.normalize(Word.parse(m.group(1), self.alphabet), m.group(3))


class FreeRack(_FreeModel):
    name = "FR"

    def normalize(self, word: Word, gen: str) -> FreeRackElement:
        return FreeRackElement(word, gen)

    op = staticmethod(fr_op)
    op_inverse = staticmethod(fr_op_inverse)


class FreeQuandle(_FreeModel):
    name = "FQ"
    is_quandle = True

    def normalize(self, word: Word, gen: str) -> FreeQuandleElement:
        return fq_normalize(word, gen)

    op = staticmethod(fq_op)
    op_inverse = staticmethod(fq_op_inverse)


class PointedFreeQuandle(FreeQuandle):
    name = "FQ*"
    needs_basepoint = True

    @property
    def base(self) -> FreeQuandleElement:
        return self.generator(self.basepoint)


class PointedFreeRack(_FreeModel):
    name = "FR*"
    needs_basepoint = True

    def normalize(self, word: Word, gen: str) -> PointedFreeRackElement:
        return pointed_fr_normalize(word, gen, self.basepoint)

    op = staticmethod(pointed_fr_op)
    op_inverse = staticmethod(pointed_fr_op_inverse)

    @property
    def base(self) -> PointedFreeRackElement:
        return self.generator(self.basepoint)


class FixedFreeRack(_FreeModel):
    name = "FR_fixed"
    needs_basepoint = True

    def normalize(self, word: Word, gen: str) -> FixedFreeRackElement:
        return fixed_fr_normalize(word, gen, self.basepoint)

    op = staticmethod(fixed_fr_op)
    op_inverse = staticmethod(fixed_fr_op_inverse)

    @property
    def base(self) -> FixedFreeRackElement:
        return self.generator(self.basepoint)

    def representative(self, el: FixedFreeRackElement) -> tuple[Word, str]:
        if el.is_basepoint:
            return self.alphabet.identity, self.basepoint
        names = self.alphabet.without(self.basepoint).names
        letters = [(names[abs(c) - 1], 1 if c > 0 else -1) for c in el.u.codes]
        p = (self.basepoint, 1 if el.k > 0 else -1)
        return Word.from_letters(letters + [p] * abs(el.k), self.alphabet), el.gen

    def parse(self, text: str) -> FixedFreeRackElement:
        if text.strip() == "*":
            return self.base
        m = _ELEMENT.match(text.strip())
        if not m or m.group(2) is None:
            raise ParseError(f"expected '(word ; {self.basepoint}^k ; generator)' or '*', got {text!r}")
        pk = re.fullmatch(rf"{re.escape(self.basepoint)}\^(-?\d+)", m.group(2))
        if not pk:
            raise ParseError(f"bad basepoint power {m.group(2)!r}")
        gen = m.group(3)
        if gen not in self.alphabet:
            raise ParseError(f"unknown generator {gen!r}")
        sub = self.alphabet.without(self.basepoint)
        if gen == self.basepoint:
            raise ParseError("the basepoint class is written '*'")
        return FixedFreeRackElement(Word.parse(m.group(1), sub), int(pk.group(1)), gen, self.basepoint)


_MODELS = {
    "FR": FreeRack,
    "FQ": FreeQuandle,
    "FR*": PointedFreeRack,
    "FR_fixed": FixedFreeRack,
    "FQ*": PointedFreeQuandle,
}
MODEL_NAMES = tuple(_MODELS)
_ALIASES = {"FR⋆": "FR*", "FQ⋆": "FQ*", "FR_pointed": "FR*", "FQ_pointed": "FQ*", "FRfixed": "FR_fixed"}


def free_model(name: str, alphabet: Alphabet | str, basepoint: str | None = None) -> _FreeModel:
    key = _ALIASES.get(name, name)
    if key not in _MODELS:
        raise ValueError(f"unknown free model {name!r}; choose from {', '.join(MODEL_NAMES)}")
    return _MODELS[key](alphabet, basepoint)


def enumerate_free(model: str, alphabet: Alphabet | str, basepoint: str | None = None,
                   max_word_length: int = 1) -> list:
    return free_model(model, alphabet, basepoint).enumerate(max_word_length)


# -- universal property -----------------------------------------------------


def extend_to_rack(f: Mapping[str, int], model: _FreeModel, R: FiniteRack) -> Callable:
    """Extend ``f: X -> R`` to the unique morphism out of the free model.

    A pair ``(g, x)`` is sent to ``g · f(x)``, where a letter ``y`` acts by
    left multiplication with ``f(y)`` and ``y^-1`` by its inverse.
    """
    R.require_rack()
    missing = set(model.alphabet) - set(f)
    if missing:
        raise PreconditionError(f"f is undefined on {sorted(missing)}")
    for name, v in f.items():
        if not 0 <= v < R.size:
            raise PreconditionError(f"f({name}) = {v} is not an element of the rack")
    if model.is_quandle:
        R.require_quandle()
    p = model.basepoint
    if isinstance(model, PointedFreeRack) and not element_predicates(R, f[p]).is_pointable:
        raise PreconditionError(f"f({p}) = {f[p]} is not pointable (f(p)▷f(p) != f(p))")
    if isinstance(model, FixedFreeRack) and not element_predicates(R, f[p]).is_fixed:
        raise PreconditionError(f"f({p}) = {f[p]} is not fixed in the target rack")

    names = model.alphabet.names
    images = [f[n] for n in names]

    def act(word: Word, r: int) -> int:
        for c in reversed(word.codes):
            s = images[abs(c) - 1]
            r = R.op(s, r) if c > 0 else R.op_inverse(s, r)
        return r

    def phi(el) -> int:
        g, x = model.representative(el)
        return act(g, f[x])

    return phi
