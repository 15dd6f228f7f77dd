import random
from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from nilcx.catalog import SIX_DIMENSIONAL, catalog_get
from nilcx.errors import DimensionTooLarge, JacobiFailure, SalamonSyntaxError
from nilcx.fields import T
from nilcx.lie import LieAlgebra
from nilcx.notation import (
    dual_forms,
    parse_algebra_text,
    parse_extended,
    parse_salamon,
    serialize_extended,
    serialize_salamon,
)

SALAMON = [catalog_get(n).source for n in SIX_DIMENSIONAL]
ALPHABET = "0123456789(),+- x"


def test_h7_constants():
    g = parse_salamon("(0,0,0,12,13,23)")
    assert g.constants == {(0, 1): {3: -1}, (0, 2): {4: -1}, (1, 2): {5: -1}}


def test_reversed_digits_flip_sign():
    g = parse_salamon("(0,0,0,0,13+42,14+23)")
    # 42 contributes -e^24 to de^5, so [e2, e4] = +e5
    assert g.structure_constant(1, 3, 4) == 1
    assert g.structure_constant(0, 2, 4) == -1
    assert dual_forms(g)[4] == {(0, 2): 1, (1, 3): -1}


def test_minus_term():
    g = parse_salamon("(0,0,0,12,23,14-35)")
    assert g.structure_constant(2, 4, 5) == 1
    assert g.structure_constant(0, 3, 5) == -1


@pytest.mark.parametrize("text", SALAMON)
def test_round_trip(text):
    g = parse_salamon(text)
    h = parse_salamon(serialize_salamon(g))
    assert h.constants == g.constants
    assert parse_extended(serialize_extended(g)).constants == g.constants


def test_reversed_strings_present():
    assert sum("42" in s for s in SALAMON) >= 2


@pytest.mark.parametrize("text,pos", [
    ("0,0)", 0),
    ("(0,0", 4),
    ("(0,1)", 4),
    ("(0,0,12,", 8),
    ("(0,0,11)", 5),
    ("(0,0,123)", 7),
    ("(0,0,12) x", 9),
    ("(0,0,1x)", 6),
])
def test_syntax_error_positions(text, pos):
    with pytest.raises(SalamonSyntaxError) as info:
        parse_salamon(text)
    assert info.value.position == pos


def test_dimension_and_jacobi_errors():
    with pytest.raises(DimensionTooLarge):
        parse_salamon("(0,0,14)")
    with pytest.raises(JacobiFailure):
        parse_salamon("(0,0,12,13,24)")  # d(e^24) = e^123 is nonzero
    assert not parse_salamon("(0,0,12,13,24)", validate=False).constants == {}


def _mutate(text: str, rng: random.Random) -> str:
    chars = list(text)
    for _ in range(rng.randint(1, 3)):
        op = rng.randrange(3)
        p = rng.randrange(len(chars) + 1)
        if op == 0:
            chars.insert(p, rng.choice(ALPHABET))
        elif op == 1 and chars:
            del chars[min(p, len(chars) - 1)]
        elif chars:
            chars[min(p, len(chars) - 1)] = rng.choice(ALPHABET)
    return "".join(chars)


def run_fuzz(cases: int, seed: int = 0) -> dict:
    rng = random.Random(seed)
    tally = {"ok": 0, "syntax": 0, "jacobi": 0, "dimension": 0}
    for _ in range(cases):
        text = _mutate(rng.choice(SALAMON), rng)
        try:
            parse_salamon(text)
            tally["ok"] += 1
        except SalamonSyntaxError as exc:
            assert 0 <= exc.position <= len(text)
            tally["syntax"] += 1
        except JacobiFailure:
            tally["jacobi"] += 1
        except DimensionTooLarge:
            tally["dimension"] += 1
    return tally


def test_fuzz_small():
    tally = run_fuzz(500, seed=3)
    assert sum(tally.values()) == 500 and tally["syntax"] > 0


@given(st.text(alphabet=ALPHABET, max_size=30))
def test_arbitrary_text_never_crashes(text):
    try:
        parse_salamon(text)
    except (SalamonSyntaxError, JacobiFailure, DimensionTooLarge):
        pass


# -- extended format ---------------------------------------------------------------

def test_extended_abelian():
    g = parse_extended("dim 2 field Q\n")
    assert g.dim == 2 and g.is_abelian()


def test_extended_named_basis_and_parameters():
    text = """
    dim 4 field Q(t)   # Kodaira-like with a parameter
    basis a b c z
    d z = t*[a,b] - 1/2*[1,3]
    """
    g = parse_extended(text)
    assert g.names == ["a", "b", "c", "z"]
    assert g.structure_constant(0, 1, 3) == -T
    assert g.structure_constant(0, 2, 3) == Fraction(1, 2)
    assert g.field == "Q(t)"
    assert parse_extended(serialize_extended(g)).constants == g.constants


@pytest.mark.parametrize("text,exc", [
    ("", SalamonSyntaxError),
    ("dim x", SalamonSyntaxError),
    ("dim 3\nd 3 = [1,2] +", SalamonSyntaxError),
    ("dim 3\nd 3 = 2[1,2]", SalamonSyntaxError),
    ("dim 3\nd 3 = [1,1]", SalamonSyntaxError),
    ("dim 3\nd 3 = [1,4]", DimensionTooLarge),
    ("dim 3\nd 5 = [1,2]", DimensionTooLarge),
    ("dim 3\nbasis a b\n", SalamonSyntaxError),
    ("dim 3\nd 3 = [1,q]", SalamonSyntaxError),
    ("dim 4\nd 3 = [1,2]\nd 4 = [1,3] + [2,3]\nd 2 = [1,4]", JacobiFailure),
])
def test_extended_errors(text, exc):
    with pytest.raises(exc):
        parse_extended(text)


def test_dispatch():
    assert parse_algebra_text(" (0,0,12)").dim == 3
    assert parse_algebra_text("dim 3\nd 3 = [1,2]").constants == parse_salamon("(0,0,12)").constants


def test_specialize_commutes_with_parsing():
    g = parse_salamon("(0,0,0,12,13,23)")
    assert g.specialize(Fraction(3)) == g
    h = parse_extended("dim 3 field Q(t)\nd 3 = t*[1,2]")
    assert h.specialize(Fraction(2)) == LieAlgebra(3, {(0, 1): {2: Fraction(-2)}})
