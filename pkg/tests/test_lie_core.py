import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from pseudolie import linalg as la
from pseudolie.corpus import load_algebra
from pseudolie.lie import (
    AlgebraError,
    LieAlgebra,
    Subspace,
    abelian,
    center,
    classify_structure,
    derived_algebra,
    derived_series,
    direct_sum,
    heisenberg,
    is_semisimple,
    is_simple,
    killing_form,
    lower_central_series,
    nilradical,
    product_ideal,
    quotient,
    upper_central_series,
    validate,
)
from pseudolie.lie.structure import full, split_abelian_factor
from pseudolie.outcome import Unknown
from pseudolie.scalars import ONE, ZERO, Scalar

from . import oracles
from .strategies import corpus_pool, gauss, nilpotent_pool

H1 = load_algebra("h1")
L43 = load_algebra("l43")
L35 = load_algebra("l35")
SO3 = load_algebra("so3")
ASH = load_algebra("ash")


def dims(series):
    return [s.dim for s in series]


def vec(L, *coords):
    return tuple(Scalar(c) for c in coords)


# -- validation -----------------------------------------------------------------


def test_h1_valid():
    assert validate(H1) == []
    assert oracles.jacobi_oracle(H1) == []


def test_jacobi_violation_reported():
    # [x1,x2]=x1, [x1,x3]=x2, [x2,x3]=x1 breaks Jacobi on (1,2,3)
    L = LieAlgebra(3, {(0, 1): {0: ONE}, (0, 2): {1: ONE}, (1, 2): {0: ONE}})
    bad = validate(L)
    assert len(bad) == 1 and bad[0].startswith("Jacobi fails on (1,2,3)")
    assert oracles.jacobi_oracle(L) == [(1, 2, 3)]


def test_sl2_like_tensor_is_valid():
    # with [x2,x3]=x3 instead the tensor is a genuine Lie algebra
    L = LieAlgebra(3, {(0, 1): {0: ONE}, (0, 2): {1: ONE}, (1, 2): {2: ONE}})
    assert validate(L) == [] and oracles.jacobi_oracle(L) == []
    assert classify_structure(L).semisimple


def test_zero_algebra():
    L = abelian(0)
    assert validate(L) == []
    rep = classify_structure(L)
    assert rep.dim == 0 and rep.nilpotent


def test_index_out_of_range():
    with pytest.raises(AlgebraError):
        LieAlgebra(2, {(0, 2): {0: ONE}})
    with pytest.raises(AlgebraError):
        LieAlgebra.from_json({"dim": 2, "brackets": {"1,2": {"3": "1"}}})
    with pytest.raises(AlgebraError):
        LieAlgebra.from_json({"dim": 2, "brackets": {"2,1": {"1": "1"}}})


def test_json_roundtrip_corpus():
    for L in corpus_pool() + [L35]:
        again = LieAlgebra.loads(L.dumps())
        assert again == L and again.labels == L.labels and again.params == L.params


def test_l35_carries_constraint():
    assert L35.is_parametric
    assert [str(c) for c in L35.constraints] == ["alpha"]


# -- brackets -------------------------------------------------------------------


def test_bracket_examples():
    v1, v2 = la.unit(3, 0), la.unit(3, 1)
    assert H1.bracket(v1, v2) == la.unit(3, 2)
    assert L43.bracket(la.unit(4, 0), la.unit(4, 2)) == la.unit(4, 3)
    with pytest.raises(AlgebraError):
        H1.bracket(v1, la.unit(4, 0))


@st.composite
def algebra_and_vectors(draw, k=3):
    L = draw(st.sampled_from(corpus_pool()))
    vs = [tuple(draw(gauss()) for _ in range(L.dim)) for _ in range(k)]
    return L, vs


@settings(max_examples=40)
@given(algebra_and_vectors())
def test_random_vectors_jacobi_and_alternating(data):
    L, (x, y, z) = data
    assert la.is_zero_vector(L.bracket(x, x))
    s = la.vadd(la.vadd(L.bracket(x, L.bracket(y, z)), L.bracket(y, L.bracket(z, x))), L.bracket(z, L.bracket(x, y)))
    assert la.is_zero_vector(s)
    assert L.bracket(x, y) == tuple(-c for c in L.bracket(y, x))


# -- centers, ideals, series ------------------------------------------------------


def test_center_examples():
    assert center(H1) == Subspace.span([la.unit(3, 2)], 3)
    assert center(abelian(4)).dim == 4
    assert center(L35).dim == 0


def test_product_ideal_examples():
    H = full(H1)
    assert product_ideal(H1, H, H) == Subspace.span([la.unit(3, 2)], 3)
    assert derived_algebra(abelian(3)).dim == 0
    assert derived_algebra(L35) == Subspace.span([la.unit(3, 1), la.unit(3, 2)], 3)


def test_series_examples():
    assert dims(lower_central_series(H1)) == [3, 1, 0]
    assert dims(lower_central_series(L43)) == [4, 2, 1, 0]
    assert dims(lower_central_series(abelian(3))) == [3, 0]
    assert dims(upper_central_series(H1)) == [0, 1, 3]
    assert dims(upper_central_series(L35)) == [0, 0]
    assert dims(upper_central_series(abelian(2))) == [0, 2]
    assert dims(derived_series(L35)) == [3, 2, 0]
    assert dims(derived_series(SO3)) == [3, 3]
    assert dims(derived_series(abelian(2))) == [2, 0]


def test_series_match_oracle():
    for L in corpus_pool():
        assert dims(lower_central_series(L)) == oracles.lower_central_dims_oracle(L)
        assert center(L).dim == oracles.center_dim_oracle(L)


def test_structure_reports():
    r = classify_structure(ASH)
    assert r.nilpotent and r.nilpotency_class == 2 and r.center_dim == 3
    r = classify_structure(L35)
    assert r.solvable and not r.nilpotent and r.metabelian and r.centerless
    r = classify_structure(SO3)
    assert r.perfect and r.centerless and r.semisimple and not r.solvable
    j = classify_structure(SO3).to_json()
    assert j["nilpotency_class"] == "not nilpotent" and j["derived_length"] == "not solvable"


@settings(max_examples=30)
@given(st.sampled_from(corpus_pool() + nilpotent_pool()))
def test_series_properties(L):
    low, up, der = lower_central_series(L), upper_central_series(L), derived_series(L)
    for a, b in zip(low, low[1:]):
        assert a.contains_subspace(b)
    for a, b in zip(up, up[1:]):
        assert b.contains_subspace(a)
    for a, b in zip(der, der[1:]):
        assert a.contains_subspace(b)
    assert max(len(low), len(up), len(der)) <= L.dim + 2
    r = classify_structure(L)
    assert r.nilpotent == (up[-1].dim == L.dim)
    if r.nilpotent:
        assert r.solvable
        assert len(up) - 1 == r.nilpotency_class
    if r.centerless and L.dim > 0:
        assert not r.nilpotent
    if r.nilpotent and L.dim:
        Q = quotient(L, center(L)).algebra
        assert Q.dim < L.dim


# -- quotients and sums ---------------------------------------------------------------


def test_quotients():
    Q = quotient(H1, center(H1)).algebra
    assert Q.dim == 2 and not Q.structure
    assert quotient(H1, Subspace.zero(3)).algebra.dim == 3
    Q = quotient(L43, Subspace.span([la.unit(4, 3)], 4)).algebra
    assert Q.dim == 3 and classify_structure(Q).lower_central == (3, 1, 0)
    with pytest.raises(AlgebraError):
        quotient(H1, Subspace.span([la.unit(3, 0)], 3))


def test_direct_sums():
    S = direct_sum(H1, abelian(1))
    assert S.dim == 4 and center(S).dim == 2
    T = direct_sum(abelian(1), abelian(1), abelian(1))
    assert T.dim == 3 and not T.structure
    assert direct_sum(H1, abelian(0)) == H1


# -- nilradical, Killing form, simplicity -------------------------------------------------


def test_nilradical():
    assert nilradical(L35) == Subspace.span([la.unit(3, 1), la.unit(3, 2)], 3)
    assert nilradical(L43).dim == 4
    assert isinstance(nilradical(SO3), Unknown)
    M = load_algebra("metabelian")
    assert nilradical(M) == Subspace.span([la.unit(3, 1), la.unit(3, 2)], 3)


def test_killing_and_semisimple():
    K = killing_form(SO3)
    assert la.det(K)
    assert is_semisimple(SO3)
    assert all(not c for row in killing_form(L43) for c in row)
    assert all(not c for row in killing_form(abelian(3)) for c in row)
    assert not is_semisimple(H1)
    with pytest.raises(AlgebraError):
        is_semisimple(L35)


def test_is_simple():
    assert is_simple(SO3) is True
    assert is_simple(H1) is False
    r = is_simple(direct_sum(SO3, SO3))
    assert r is False or isinstance(r, Unknown)


def test_unknown_has_no_truth_value():
    with pytest.raises(TypeError):
        bool(Unknown("x"))


def test_split_abelian_factor():
    U, w, P = split_abelian_factor(ASH)
    assert U.dim == 3 and w == 2
    assert classify_structure(U).lower_central == (3, 1, 0)
