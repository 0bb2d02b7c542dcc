import pytest
import sympy as sp
from hypothesis import given, settings
from hypothesis import strategies as st

from pseudolie._parse import ParseError
from pseudolie.scalars import (
    I,
    ONE,
    ZERO,
    Scalar,
    conj_name,
    format_scalar,
    parse_scalar,
    scalar_arith,
    scalar_conjugate,
)

from .oracles import to_sympy
from .strategies import gauss, params_scalar

P = ["alpha", "beta"]


def test_lowest_terms():
    s = parse_scalar("2/4")
    assert s == Scalar.of(1) / 2
    assert format_scalar(s) == "1/2"
    assert s.is_constant


def test_gaussian_literal():
    s = parse_scalar("1+i")
    assert s.real == 1 and s.imag == 1


def test_cancellation_to_one():
    s = parse_scalar("alpha/(alpha)", ["alpha"])
    assert s.is_one() and s.is_constant


def test_arith_examples():
    assert scalar_arith(parse_scalar("1+i"), parse_scalar("1-i"), "mul") == 2
    a = parse_scalar("alpha", P)
    assert scalar_arith(a, -a, "add").is_zero()
    assert scalar_arith(parse_scalar("1/2"), parse_scalar("1/4"), "div") == 2


def test_division_by_zero():
    with pytest.raises(ZeroDivisionError):
        scalar_arith(ONE, ZERO, "div")
    with pytest.raises(ParseError):
        parse_scalar("1/(alpha-alpha)", P)


def test_conjugate_examples():
    assert scalar_conjugate(parse_scalar("1+i")) == parse_scalar("1-i")
    assert scalar_conjugate(parse_scalar("3/5")) == parse_scalar("3/5")
    b = scalar_conjugate(parse_scalar("beta", P))
    assert format_scalar(b) == "conj_beta"
    assert scalar_conjugate(parse_scalar("beta", P), real=["beta"]) == parse_scalar("beta", P)
    assert conj_name("conj_beta") == "beta"


def test_parse_errors_report_position():
    with pytest.raises(ParseError) as e:
        parse_scalar("1 + $", [])
    assert "4" in str(e.value) or e.value.position == 4
    with pytest.raises(ParseError):
        parse_scalar("gamma", P)
    with pytest.raises(ParseError):
        parse_scalar("(1+2", P)


def test_grammar_samples():
    assert parse_scalar("-3+2*i") == Scalar.gauss(-3, 2)
    s = parse_scalar("alpha^2/(1-alpha)", ["alpha"])
    assert not s.is_constant
    assert s.evaluate({"alpha": 0.5}) == pytest.approx(0.5)
    assert parse_scalar("  1 /  2 ") == parse_scalar("1/2")


def test_canonical_denominator():
    a = parse_scalar("alpha", P)
    s1 = (a + 1) / (2 * a + 2 * I)
    s2 = (-a - 1) / (-2 * a - 2 * I)
    assert s1 == s2 and hash(s1) == hash(s2)
    assert format_scalar(s1) == format_scalar(s2)


@given(gauss(), gauss(), gauss())
def test_field_axioms_constants(a, b, c):
    assert (a + b) + c == a + (b + c)
    assert (a * b) * c == a * (b * c)
    assert a * (b + c) == a * b + a * c
    if a:
        assert a * a.inverse() == ONE


@given(params_scalar(), params_scalar(), params_scalar())
def test_field_axioms_parametric(a, b, c):
    assert (a + b) + c == a + (b + c)
    assert (a * b) * c == a * (b * c)
    assert a * (b + c) == a * b + a * c
    if a:
        assert (a / a).is_one()


@given(params_scalar())
def test_format_parse_roundtrip(s):
    t = format_scalar(s)
    names = P + ["conj_alpha", "conj_beta"]
    assert parse_scalar(t, names) == s
    assert format_scalar(parse_scalar(t, names)) == t


@given(params_scalar())
def test_conjugate_involution(s):
    assert s.conjugate().conjugate() == s


@settings(max_examples=40)
@given(params_scalar(), params_scalar())
def test_agrees_with_sympy(a, b):
    syms = {n: sp.Symbol(n) for n in P}
    lhs = to_sympy(a * b + a, syms)
    rhs = to_sympy(a, syms) * to_sympy(b, syms) + to_sympy(a, syms)
    assert sp.simplify(lhs - rhs) == 0


@given(gauss(), st.complex_numbers(max_magnitude=2, allow_nan=False, allow_infinity=False))
def test_conjugate_matches_numeric(c, z):
    s = c * Scalar.param("beta") + 1
    val = s.evaluate({"beta": z})
    conj = s.conjugate().evaluate({"conj_beta": z.conjugate()})
    assert abs(conj - val.conjugate()) < 1e-9
