import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from pseudolie import linalg as la
from pseudolie.corpus import load_algebra
from pseudolie.lie import AlgebraError, abelian, direct_sum, heisenberg
from pseudolie.lie.isomorphism import (
    No,
    Yes,
    check_homomorphism,
    fingerprint,
    gauss_sqrt,
    in_basis,
    isomorphic,
)
from pseudolie.lie.structure import change_basis
from pseudolie.outcome import Unknown
from pseudolie.scalars import I, ONE, Scalar
from pseudolie.weyl import lie_closure, parse_weyl

from . import oracles
from .strategies import corpus_pool, invertible_matrix, nilpotent_pool

ASH = load_algebra("ash")
H1I2 = load_algebra("h1_plus_i2")
SO3 = load_algebra("so3")


def closure_so3():
    gens = [parse_weyl(t) for t in ("1/2*D*C+1/4*I", "1/2*C^2", "1/2*D^2")]
    return lie_closure(gens, labels=["L0", "Lm", "Lp"]).algebra


def test_ash_is_h1_plus_two_abelian():
    r = isomorphic(ASH, H1I2)
    assert isinstance(r, Yes)
    assert check_homomorphism(ASH, H1I2, r.matrix)
    assert oracles.homomorphism_oracle(ASH, H1I2, r.matrix)


def test_h1_vs_abelian_is_no():
    r = isomorphic(load_algebra("h1"), abelian(3))
    assert isinstance(r, No)
    assert r.invariant == "derived series dims"
    assert r.left != r.right


def test_so3_closure():
    L = closure_so3()
    r = isomorphic(L, SO3)
    assert isinstance(r, Yes)
    assert oracles.homomorphism_oracle(L, SO3, r.matrix)


def test_dimension_mismatch():
    r = isomorphic(abelian(2), abelian(3))
    assert isinstance(r, No) and r.invariant == "dim"


def test_parametric_rejected():
    with pytest.raises(AlgebraError):
        isomorphic(load_algebra("l35"), load_algebra("l35"))


def test_budget_exhaustion_is_unknown():
    L = load_algebra("l43")
    T = [[Scalar(x) for x in row] for row in ([1, 0, 2, 0], [1, 1, 0, 0], [0, 1, 1, 0], [2, 0, 1, 1])]
    L2 = change_basis(L, T)
    r = isomorphic(L, L2, budget=1)
    assert isinstance(r, Unknown) and "budget" in r.reason
    with pytest.raises(TypeError):
        bool(r)
    assert isinstance(isomorphic(L, L2), Yes)


def test_gauss_sqrt():
    for s in (Scalar(4), Scalar(-1), Scalar.gauss(0, 2), Scalar.gauss(3, 4), Scalar.of(9) / 4):
        r = gauss_sqrt(s)
        assert r is not None and r * r == s
    assert gauss_sqrt(Scalar(2)) is None


def test_heisenberg_fast_path():
    h2 = heisenberg(2)
    T = [[Scalar(int(i == j) + int(j == (i + 1) % 5)) for j in range(5)] for i in range(5)]
    assert la.det(T)
    r = isomorphic(h2, change_basis(h2, T))
    assert isinstance(r, Yes)


@st.composite
def algebra_in_random_basis(draw):
    L = draw(st.sampled_from(corpus_pool() + nilpotent_pool()))
    T = draw(invertible_matrix(L.dim))
    return L, in_basis(L, T)


@settings(max_examples=40)
@given(algebra_in_random_basis())
def test_random_basis_change_is_detected(pair):
    L, L2 = pair
    r = isomorphic(L, L2)
    assert isinstance(r, Yes), r
    assert check_homomorphism(L, L2, r.matrix) and la.det(r.matrix)
    back = isomorphic(L2, L)
    assert isinstance(back, Yes)


@settings(max_examples=40)
@given(st.sampled_from(corpus_pool() + nilpotent_pool()), st.sampled_from(corpus_pool() + nilpotent_pool()))
def test_symmetric_and_invariants_differ(A, B):
    r1, r2 = isomorphic(A, B), isomorphic(B, A)
    assert type(r1) is type(r2)
    assert isinstance(isomorphic(A, A), Yes)
    if isinstance(r1, No):
        assert r1.left != r1.right
        fa, fb = dict(fingerprint(A)), dict(fingerprint(B))
        norm = (lambda v: tuple(v) if isinstance(v, list) else v)
        assert fa[r1.invariant] == norm(r1.left) and fb[r1.invariant] == norm(r1.right)


def test_complex_witness_needed():
    # the ladder basis of sl2 and so3 are only isomorphic with i in the matrix
    L = load_algebra("sl2_ladder")
    r = isomorphic(L, SO3)
    assert isinstance(r, Yes)
    assert any(not c.is_constant or c.imag for row in r.matrix for c in row)
