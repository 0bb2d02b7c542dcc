import itertools

import pytest

from pseudolie.classify import BudgetExceeded, classify_nilpotent, echelon_patterns
from pseudolie.corpus import load_algebra
from pseudolie.lie.algebra import abelian, heisenberg, validate
from pseudolie.lie.isomorphism import No, Yes, isomorphic
from pseudolie.lie.structure import classify_structure, direct_sum

from .oracles import lower_central_dims_oracle


@pytest.fixture(scope="module")
def tables():
    return {n: classify_nilpotent(n) for n in (1, 2, 3, 4)}


@pytest.mark.parametrize("n,count", [(1, 1), (2, 1), (3, 2), (4, 3)])
def test_counts(tables, n, count):
    c = tables[n]
    assert len(c.entries) == count
    assert c.authoritative
    assert c.stats["unknown_comparisons"] == 0 and not c.stats["truncated"]


@pytest.mark.parametrize("n", [2, 3, 4])
def test_pairwise_non_isomorphic(tables, n):
    for a, b in itertools.combinations(tables[n].algebras, 2):
        assert isinstance(isomorphic(a, b), No)


@pytest.mark.parametrize("n", [1, 2, 3, 4])
def test_members_are_nilpotent_and_valid(tables, n):
    for L in tables[n].algebras:
        assert validate(L) == []
        assert classify_structure(L).nilpotent
        assert lower_central_dims_oracle(L)[-1] == 0


def test_dimension_three_members(tables):
    targets = [abelian(3), heisenberg(1)]
    for t in targets:
        assert sum(isinstance(isomorphic(t, L), Yes) for L in tables[3].algebras) == 1


def test_dimension_four_members(tables):
    targets = [abelian(4), direct_sum(heisenberg(1), abelian(1)), load_algebra("l43")]
    for t in targets:
        assert sum(isinstance(isomorphic(t, L), Yes) for L in tables[4].algebras) == 1


def test_provenance(tables):
    for n in (2, 3, 4):
        for e in tables[n].entries:
            p = e.provenance
            assert p["construction"] in {"direct_sum", "central_extension"}
            assert p["base"]
            assert "dedup" in p
    js = tables[4].to_json()
    assert js["count"] == 3 and len(js["algebras"]) == 3
    assert all("provenance" in a for a in js["algebras"])


def test_deterministic_names(tables):
    again = classify_nilpotent(4)
    assert [L.dumps() for L in again.algebras] == [L.dumps() for L in tables[4].algebras]


def test_budget_truncates():
    c = classify_nilpotent(4, budget=2)
    assert c.stats["truncated"] and not c.authoritative
    assert c.notes


def test_dimension_bounds():
    with pytest.raises(ValueError):
        classify_nilpotent(0)
    with pytest.raises(ValueError):
        classify_nilpotent(6)


def test_echelon_patterns_are_full_rank():
    pats = list(echelon_patterns(1, 2))
    # one leading 1 and the trailing entry free over five values, plus (0, 1)
    assert len(pats) == 6
    pats2 = list(echelon_patterns(2, 2))
    assert len(pats2) == 1


@pytest.mark.slow
def test_dimension_five_count():
    c = classify_nilpotent(5)
    # the complex nilpotent algebras of dimension 5 number nine
    assert len(c.entries) == 9
    assert not c.authoritative
    assert c.stats["unknown_comparisons"] == 0
