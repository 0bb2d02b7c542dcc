import pytest
import sympy as sp
from hypothesis import given, settings

from pseudolie._parse import ParseError
from pseudolie.corpus import load_algebra, load_realization
from pseudolie.lie.algebra import Subspace, validate
from pseudolie.lie.isomorphism import Yes, isomorphic
from pseudolie.lie.structure import center, classify_structure
from pseudolie.scalars import Scalar, parse_scalar
from pseudolie.weyl import (
    C,
    D,
    ONE_W,
    DimensionExceeded,
    Realization,
    RealizationError,
    WeylElement,
    commutator,
    formal_adjoint,
    format_weyl,
    hamiltonian_build,
    is_pb_pair,
    lie_closure,
    linear_relations,
    parse_weyl,
    verify_realization,
)

from .oracles import weyl_apply, weyl_commutator_action, weyl_equal_oracle, weyl_product_action, x
from .strategies import gauss, weyl_elements

HALF = Scalar.of(1) / 2
QUARTER = Scalar.of(1) / 4


def w(text, params=(), real=()):
    return parse_weyl(text, params, real)


def test_canonical_commutation():
    assert C * D == D * C + ONE_W
    assert commutator(C, D) == ONE_W
    assert is_pb_pair(C, D)
    assert not is_pb_pair(D, C)


def test_normal_order_examples():
    assert C**2 * D**2 == D**2 * C**2 + 4 * D * C + 2 * ONE_W
    assert format_weyl(C**2 * D**2) == "2*I + 4*D*C + D^2*C^2"
    assert commutator(D * C, D) == D
    assert commutator(D * C, D**2) == 2 * D**2
    assert commutator(HALF * D**2, HALF * C**2) == -(D * C) - HALF * ONE_W


def test_parse_and_format():
    e = w("C*D - D*C")
    assert e == ONE_W
    s = w("1/2*D*C + 1/4*I")
    assert s == HALF * D * C + QUARTER * ONE_W
    assert w(format_weyl(s)) == s
    a = w("C - alpha*I", ["alpha"])
    assert a.coefficient(0, 0) == -Scalar.param("alpha")


def test_parse_errors():
    with pytest.raises(ParseError):
        w("C + E")
    with pytest.raises(ParseError):
        w("C*(D")
    with pytest.raises(ParseError):
        w("C - gamma", ["alpha"])


def test_adjoint():
    assert formal_adjoint(C) == D
    assert formal_adjoint(D * C) == D * C
    b = w("D - beta*I", ["beta"])
    assert formal_adjoint(b) == w("C - conj_beta*I", ["beta"])
    assert formal_adjoint(b, real=["beta"]) == w("C - beta*I", ["beta"])


@given(weyl_elements(), weyl_elements())
def test_adjoint_reverses_products(u, v):
    assert formal_adjoint(u * v) == formal_adjoint(v) * formal_adjoint(u)
    assert formal_adjoint(formal_adjoint(u)) == u


@settings(max_examples=60)
@given(weyl_elements(), weyl_elements(), weyl_elements())
def test_associative(u, v, t):
    assert (u * v) * t == u * (v * t)


@settings(max_examples=60)
@given(weyl_elements(), weyl_elements(), weyl_elements())
def test_jacobi(u, v, t):
    tot = commutator(commutator(u, v), t) + commutator(commutator(v, t), u) + commutator(commutator(t, u), v)
    assert tot.is_zero()


@settings(max_examples=40)
@given(weyl_elements(), weyl_elements())
def test_product_matches_differential_operators(u, v):
    prod = u * v
    comm = commutator(u, v)

    for k in range(5):
        f = x**k
        assert sp.expand(weyl_apply(prod, f) - weyl_product_action(u, v, f)) == 0
        assert sp.expand(weyl_apply(comm, f) - weyl_commutator_action(u, v, f)) == 0


@settings(max_examples=40)
@given(weyl_elements())
def test_normal_form_is_unique(u):
    assert weyl_equal_oracle(u, w(format_weyl(u)))


def test_closure_so3_like():
    gens = [HALF * D * C + QUARTER * ONE_W, HALF * C**2, HALF * D**2]
    cl = lie_closure(gens, labels=["L0", "Lm", "Lp"])
    L = cl.algebra
    assert L.dim == 3
    assert validate(L) == []
    r = classify_structure(L)
    assert r.perfect and r.semisimple
    assert center(L).dim == 0
    # the ladder relations directly
    L0, Lm, Lp = gens
    assert commutator(L0, Lp) == Lp
    assert commutator(L0, Lm) == -Lm
    assert commutator(Lp, Lm) == -2 * L0
    assert isinstance(isomorphic(L, load_algebra("so3")), Yes)


def test_closure_metabelian():
    cl = lie_closure([D * C, D, D**2], labels=["a1", "a2", "a3"])
    L = cl.algebra
    assert L.dim == 3
    assert cl.brackets() == {"[a1,a2]": "a2", "[a1,a3]": "2*a3"}
    r = classify_structure(L)
    assert r.derived_length == 2 and not r.nilpotent
    assert center(L).dim == 0
    assert isinstance(isomorphic(L, load_algebra("metabelian")), Yes)


def test_closure_of_c_and_d_is_heisenberg():
    cl = lie_closure([C, D], labels=["c", "d"])
    assert cl.algebra.dim == 3
    assert isinstance(isomorphic(cl.algebra, load_algebra("h1")), Yes)


def test_closure_dimension_cap():
    # C^3 with D closes at dimension 5, C^3 with D^2 never closes
    assert lie_closure([C**3, D]).algebra.dim == 5
    with pytest.raises(DimensionExceeded):
        lie_closure([C**3, D**2], max_dim=6)


def test_linear_relations():
    rel = linear_relations([C, D, C + D])
    assert len(rel) == 1
    assert rel[0][0] == rel[0][1] == -rel[0][2]


def test_bundled_realizations_verify():
    for name in ("so3_real", "metabelian_real", "h1_real", "ash_real"):
        rep = verify_realization(load_realization(name))
        assert rep.homomorphism_ok, name


def test_ash_kernel():
    r = load_realization("ash_real")
    rep = verify_realization(r, "faithful")
    assert rep.homomorphism_ok and not rep.ok
    assert rep.independent is False and len(rep.kernel) == 2
    P = ["alpha", "beta", "conj_alpha", "conj_beta"]
    L = r.target
    gens = [r.generators[lab] for lab in L.labels]
    rel = Subspace.span(linear_relations(gens), L.dim)
    a, b, ca, cb = (parse_scalar(p, P) for p in P)
    one, zero = Scalar(1), Scalar(0)
    k1 = (one, zero, -one, zero, a - b)
    k2 = (zero, one, zero, -one, cb - ca)
    assert rel.contains(k1) and rel.contains(k2)
    for vec in (k1, k2):
        combo = WeylElement()
        for g, c in zip(gens, vec):
            combo = combo + g * c
        assert combo.is_zero()


def test_ash_relations_reduce_to_identity():
    r = load_realization("ash_real")
    g = r.generators
    assert commutator(g["v1"], g["v2"]) == ONE_W
    assert commutator(g["v3"], g["v4"]) == ONE_W
    assert commutator(g["v1"], g["v4"]) == ONE_W
    assert commutator(g["v2"], g["v3"]) == -ONE_W


def test_faithful_realizations():
    for name in ("so3_real", "metabelian_real", "h1_real"):
        rep = verify_realization(load_realization(name), "faithful")
        assert rep.ok and rep.independent, name


def test_bad_realization_detected():
    data = {"name": "bad", "target": "h1", "generators": {"v1": "C", "v2": "D", "v": "2*I"}}
    r = Realization.from_json(data, resolve=load_algebra)
    rep = verify_realization(r)
    assert not rep.homomorphism_ok
    assert [c.ok for c in rep.relations].count(False) == 1
    with pytest.raises(RealizationError):
        Realization.from_json({"generators": {}})
    with pytest.raises(RealizationError):
        verify_realization(Realization.from_json({"target": "h1", "generators": {"v1": "C"}}, resolve=load_algebra))


def test_hamiltonian():
    r = load_realization("metabelian_real")
    h = hamiltonian_build(1, 0, 0, r)
    assert h.self_adjoint and h.H == D * C
    h2 = hamiltonian_build(1, 1, 0, r)
    assert not h2.self_adjoint and h2.adjoint == D * C + C
    with pytest.raises(RealizationError):
        hamiltonian_build(1, 1, 1, load_realization("h1_real"))


@given(gauss(), gauss())
def test_shifted_pairs_are_pseudo_bosonic(p, q):
    a = C - p * ONE_W
    b = D - q * ONE_W
    assert commutator(a, b) == ONE_W
    assert is_pb_pair(a, b)
