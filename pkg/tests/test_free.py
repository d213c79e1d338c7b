import itertools

import pytest

import oracles
from quandlekit.exceptions import NotAQuandleError, ParseError, PreconditionError
from quandlekit.free import (
    FixedFreeRackElement,
    FreeQuandleElement,
    FreeRackElement,
    MODEL_NAMES,
    enumerate_free,
    extend_to_rack,
    fixed_fr_normalize,
    fq_normalize,
    fq_op,
    fr_op,
    fr_op_inverse,
    free_model,
    pointed_fr_normalize,
    project_fr_to_fq,
)
from quandlekit.racks import dihedral_quandle, permutation_rack, trivial_rack
from quandlekit.words import Alphabet, Word

AB = Alphabet("a b")
AX = Alphabet("a x")
BASEPOINT = {"FR": None, "FQ": None, "FR*": "a", "FR_fixed": "a", "FQ*": "a"}


def w(text, alphabet=AB):
    return Word.parse(text, alphabet)


def model(name):
    return free_model(name, AB, BASEPOINT[name])


def test_fr_op_examples():
    e = AB.identity
    assert fr_op(FreeRackElement(e, "a"), FreeRackElement(e, "b")) == FreeRackElement(w("a"), "b")
    assert fr_op(FreeRackElement(w("b"), "a"), FreeRackElement(w("a"), "b")) == FreeRackElement(
        w("b a b^-1 a"), "b"
    )
    assert fr_op_inverse(FreeRackElement(e, "a"), FreeRackElement(e, "a")) == FreeRackElement(
        w("a^-1"), "a"
    )


def test_fr_not_idempotent_at_generator():
    a = model("FR").generator("a")
    assert fr_op(a, a) != a


def test_fq_normal_form_examples():
    assert fq_normalize(w("a x", AX), "x") == FreeQuandleElement(w("a", AX), "x")
    assert fq_normalize(w("x a x^-1 x", AX), "x") == FreeQuandleElement(w("x a", AX), "x")


def test_fq_op_example():
    Q = model("FQ")
    a, b = Q.generator("a"), Q.generator("b")
    assert fq_op(a, b) == FreeQuandleElement(w("a"), "b")
    assert str(fq_op(a, b).as_word()) == "a b a^-1"
    assert fq_op(a, a) == a


def test_pointed_normal_form():
    assert pointed_fr_normalize(w("b a a"), "a", "a") == pointed_fr_normalize(w("b"), "a", "a")
    assert pointed_fr_normalize(w("a a"), "b", "a").word == w("a a")


def test_fixed_normal_form():
    P = Alphabet("b p")
    e = fixed_fr_normalize(w("p b p", P), "b", "p")
    assert e.u == Word.parse("b", P.without("p")) and e.k == 2 and e.gen == "b"
    assert fixed_fr_normalize(w("b p b^-1", P), "p", "p").is_basepoint


def test_fixed_basepoint_is_fixed_not_fixing():
    M = model("FR_fixed")
    base = M.base
    elements = M.enumerate(2)
    for el in elements:
        assert M.op(el, base) == base
    b = M.generator("b")
    assert M.op(base, b) != b
    assert M.op(base, b) == FixedFreeRackElement(b.u, 1, "b", "a")


@pytest.mark.parametrize("bound,expected", [(1, (10, 6, 8, 6, 6)), (2, (34, 18, 26, 14, 18))])
def test_enumeration_counts(bound, expected):
    counts = tuple(len(model(n).enumerate(bound)) for n in MODEL_NAMES)
    assert counts == expected


@pytest.mark.parametrize("bound", [1, 2])
def test_counts_match_brute_force(bound):
    assert len(model("FR").enumerate(bound)) == oracles.count_fr(AB, bound)
    assert len(model("FQ").enumerate(bound)) == oracles.count_fq(AB, bound)
    assert len(model("FR*").enumerate(bound)) == oracles.count_fr_pointed(AB, "a", bound)
    assert len(model("FR_fixed").enumerate(bound)) == oracles.count_fr_fixed(AB, "a", bound)


def test_enumeration_deterministic_and_distinct():
    for name in MODEL_NAMES:
        first = model(name).enumerate(2)
        assert first == model(name).enumerate(2)
        assert len(set(first)) == len(first)


def test_pointed_counting_identity():
    # FR* = FR with the basepoint fibre collapsed to its quandle image
    for bound in (1, 2):
        fr = model("FR").enumerate(bound)
        fq_a = {project_fr_to_fq(x) for x in fr if x.gen == "a"}
        pointed = model("FR*").enumerate(bound)
        assert len(pointed) == sum(1 for x in fr if x.gen != "a") + len(fq_a)


@pytest.mark.parametrize("name", MODEL_NAMES)
def test_rack_axioms_small(name):
    M = model(name)
    els = M.enumerate(1)
    for x, y, z in itertools.product(els, repeat=3):
        assert M.op(x, M.op(y, z)) == M.op(M.op(x, y), M.op(x, z))
    for x, y in itertools.product(els, repeat=2):
        assert M.op(x, M.op_inverse(x, y)) == y
        assert M.op_inverse(x, M.op(x, y)) == y


@pytest.mark.parametrize("name", ["FQ", "FQ*"])
def test_quandle_idempotence(name):
    M = model(name)
    for x in M.enumerate(2):
        assert M.op(x, x) == x


def test_pointed_basepoint_idempotent():
    M = model("FR*")
    assert M.op(M.base, M.base) == M.base


def test_projection_is_a_morphism():
    Q = model("FQ")
    els = model("FR").enumerate(1)
    for x, y in itertools.product(els, repeat=2):
        assert project_fr_to_fq(fr_op(x, y)) == Q.op(project_fr_to_fq(x), project_fr_to_fq(y))


def test_projection_collisions():
    els = model("FR").enumerate(2)
    for x, y in itertools.product(els, repeat=2):
        expected = x.gen == y.gen and oracles.is_power_of(x.word.inverse() * y.word, x.gen)
        assert (project_fr_to_fq(x) == project_fr_to_fq(y)) == expected


def test_fq_elements_are_conjugates():
    Q = model("FQ")
    assert {x.as_word() for x in Q.enumerate(2)} == {
        g for x in "ab" for g in oracles.reduced_conjugates_of(AB, x, 2)
    }


def test_extend_example():
    R3 = dihedral_quandle(3)
    phi = extend_to_rack({"a": 1, "b": 0}, model("FQ"), R3)
    Q = model("FQ")
    assert phi(Q.op(Q.generator("b"), Q.generator("a"))) == 2


@pytest.mark.parametrize("name", MODEL_NAMES)
def test_extend_is_a_morphism(name):
    M = model(name)
    targets = [dihedral_quandle(3), trivial_rack(2), dihedral_quandle(4)]
    if name in ("FR", "FR*"):
        targets.append(permutation_rack([1, 0, 2]))  # element 2 is pointable
    els = M.enumerate(1)
    for R in targets:
        for fa, fb in itertools.product(range(R.size), repeat=2):
            f = {"a": fa, "b": fb}
            try:
                phi = extend_to_rack(f, M, R)
            except PreconditionError:
                continue
            for g in ("a", "b"):
                assert phi(M.generator(g)) == f[g]
            for x, y in itertools.product(els, repeat=2):
                assert phi(M.op(x, y)) == R.op(phi(x), phi(y))


def test_extend_constant_map():
    Q = model("FQ")
    phi = extend_to_rack({"a": 0, "b": 0}, Q, dihedral_quandle(3))
    assert all(phi(x) == 0 for x in Q.enumerate(2))


def test_extend_preconditions():
    with pytest.raises(PreconditionError):
        extend_to_rack({"a": 0, "b": 1}, model("FR_fixed"), dihedral_quandle(3))
    with pytest.raises(PreconditionError):
        extend_to_rack({"a": 0, "b": 1}, model("FR*"), permutation_rack([1, 0]))
    with pytest.raises(NotAQuandleError):
        extend_to_rack({"a": 0, "b": 1}, model("FQ"), permutation_rack([1, 0]))
    with pytest.raises(PreconditionError):
        extend_to_rack({"a": 0}, model("FR"), dihedral_quandle(3))


def test_extend_fixed_through_nontrivial_action():
    M = model("FR_fixed")
    R = permutation_rack([0, 2, 1])  # 0 is fixed but swaps 1 and 2
    phi = extend_to_rack({"a": 0, "b": 2}, M, R)
    els = M.enumerate(2)
    for x, y in itertools.product(els, repeat=2):
        assert phi(M.op(x, y)) == R.op(phi(x), phi(y))


@pytest.mark.parametrize("name", MODEL_NAMES)
def test_parse_format_roundtrip(name):
    M = model(name)
    for x in M.enumerate(2):
        assert M.parse(M.format(x)) == x


def test_parse_errors():
    with pytest.raises(ParseError):
        model("FR").parse("a ; b")
    with pytest.raises(ParseError):
        model("FR").parse("(a ; c)")
    with pytest.raises(ParseError):
        model("FR_fixed").parse("(b ; a^x ; b)")


def test_model_construction_errors():
    with pytest.raises(PreconditionError):
        free_model("FR*", AB)
    with pytest.raises(PreconditionError):
        free_model("FR", AB, "a")
    with pytest.raises(ValueError):
        free_model("XX", AB)
    assert type(free_model("FR⋆", AB, "a")) is type(free_model("FR*", AB, "a"))


def test_enumerate_free_helper():
    assert len(enumerate_free("FQ", "a b", max_word_length=1)) == 6
