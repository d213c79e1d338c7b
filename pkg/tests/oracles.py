"""Independent reference computations used by the tests.

Nothing here calls the normal-form code under test: free-model counts come
from union-find over raw representatives using the defining relations, the
Alexander polynomial from Fox calculus in sympy, Smith invariants from
sympy's implementation.
"""

import itertools

import sympy
from sympy.matrices.normalforms import invariant_factors
from sympy.polys.domains import ZZ

from quandlekit.words import Word, conjugate, enumerate_words, invert, multiply


# -- free groups -------------------------------------------------------------


def is_power_of(word: Word, gen: str) -> bool:
    """True iff the reduced word is x^k for the generator ``gen`` (k may be 0)."""
    letters = word.letters
    return all(g == gen for g, _ in letters) and len({e for _, e in letters}) <= 1


def brute_force_conjugate(u: Word, v: Word) -> bool:
    bound = len(u) + len(v)
    return any(conjugate(g, u) == v for g in enumerate_words(u.alphabet, bound))


def in_fixed_kernel(word: Word, p: str) -> bool:
    """Kernel of F(X) -> F(X - p) × Z: zero p-exponent and trivial after deleting p."""
    exp = sum(e for g, e in word.letters if g == p)
    rest = [(g, e) for g, e in word.letters if g != p]
    stack = []
    for g, e in rest:
        if stack and stack[-1] == (g, -e):
            stack.pop()
        else:
            stack.append((g, e))
    return exp == 0 and not stack


def _classes(pairs, same):
    parent = list(range(len(pairs)))

    def find(i):
        while parent[i] != i:
            parent[i] = parent[parent[i]]
            i = parent[i]
        return i

    for i, j in itertools.combinations(range(len(pairs)), 2):
        if same(pairs[i], pairs[j]):
            parent[find(i)] = find(j)
    return len({find(i) for i in range(len(pairs))})


def raw_pairs(alphabet, bound):
    words = enumerate_words(alphabet, bound)
    return [(g, x) for x in alphabet for g in words]


def count_fr(alphabet, bound):
    return len(raw_pairs(alphabet, bound))


def count_fq(alphabet, bound):
    """Distinct conjugates g x g^-1, deduplicated with are_conjugate-free word equality."""
    return len({conjugate(g, alphabet.gen(x)) for g, x in raw_pairs(alphabet, bound)})


def count_fr_pointed(alphabet, p, bound):
    def same(a, b):
        (g, x), (h, y) = a, b
        if (g, x) == (h, y):
            return True
        return x == y == p and is_power_of(multiply(invert(g), h), p)

    return _classes(raw_pairs(alphabet, bound), same)


def count_fr_fixed(alphabet, p, bound):
    def same(a, b):
        (g, x), (h, y) = a, b
        if x == y == p:
            return True
        return x == y and in_fixed_kernel(multiply(invert(g), h), p)

    return _classes(raw_pairs(alphabet, bound), same)


def reduced_conjugates_of(alphabet, p, bound):
    return {conjugate(g, alphabet.gen(p)) for g in enumerate_words(alphabet, bound)}


# -- Fox calculus ------------------------------------------------------------

t = sympy.Symbol("t")


def fox_alexander(generators, relations):
    """Alexander polynomial from Fox derivatives of the Wirtinger group relators.

    Each relation (i, j, k, s) gives the relator x_i^s x_j x_i^-s x_k^-1; all
    generators abelianize to t.  Returns a sympy polynomial in t normalized
    so the lowest term is a positive constant.
    """
    n = len(generators)
    if n == 1 and not relations:
        return sympy.Integer(1)
    rows = []
    for i, j, k, s in relations:
        letters = [(i, s), (j, 1), (i, -s), (k, -1)]
        row = [sympy.Integer(0)] * n
        prefix = sympy.Integer(0)  # t-degree of the prefix
        for g, e in letters:
            if e == 1:
                row[g] += t**prefix
                prefix += 1
            else:
                prefix -= 1
                row[g] -= t**prefix
        rows.append(row)
    M = sympy.Matrix(rows)
    minor = M[: n - 1, : n - 1] if M.rows == n else M[:, : n - 1]
    det = sympy.expand(minor.det() * t ** (4 * n))
    return normalize_poly(det)


def normalize_poly(expr):
    expr = sympy.expand(expr)
    if expr == 0:
        return sympy.Integer(0)
    poly = sympy.Poly(expr, t)
    coeffs = dict(poly.terms())
    low = min(m[0] for m in coeffs)
    sign = 1 if coeffs[(low,)] > 0 else -1
    return sympy.expand(sum(sign * c * t ** (m[0] - low) for m, c in coeffs.items()))


def laurent_to_sympy(poly):
    return sympy.expand(sum(c * t**e for e, c in poly.terms.items()))


# -- Smith normal form -------------------------------------------------------


def sympy_invariants(rows):
    """Nonzero invariant factors via sympy."""
    if not rows or not rows[0]:
        return []
    return [abs(int(d)) for d in invariant_factors(sympy.Matrix(rows), domain=ZZ) if d != 0]


def brute_colorings(generators, relations, table):
    n = len(table)
    inv = [[0] * n for _ in range(n)]
    for i in range(n):
        for j in range(n):
            inv[i][table[i][j]] = j
    total = 0
    for col in itertools.product(range(n), repeat=len(generators)):
        if all(
            (table if s == 1 else inv)[col[i]][col[j]] == col[k] for i, j, k, s in relations
        ):
            total += 1
    return total
