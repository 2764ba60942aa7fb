import pytest
from hypothesis import given
from hypothesis import strategies as st

import oracles
from groups import group, small_names
from mingen.dnum import (DInterval, SubgroupSearch, abelianization_d, d_brute, d_crown, generates,
                         schreier_bound)
from mingen.errors import InputError, InvariantError
from mingen.crowns import crown_based_power
from mingen.perm import PermGroup, alternating_group, coset_action, cyclic_group, symmetric_group, wreath_product
from mingen.shell.expr import evaluate_text
from mingen.structure import chief_series


# -- DInterval -----------------------------------------------------------------

def test_interval_invariants():
    with pytest.raises(InvariantError):
        DInterval(3, 2, False)
    with pytest.raises(InvariantError):
        DInterval(2, 3, True)
    assert DInterval(2, 2, True).value == 2
    assert DInterval(2, 3, False).value is None


# -- d_crown ----------------------------------------------------------------------

def test_d_crown_examples():
    assert d_crown(group("2^3")).value == 3
    assert d_crown(wreath_product(symmetric_group(4), 3)).value == 2
    for k in range(1, 5):
        assert d_crown(crown_based_power(symmetric_group(3), k)).value == k + 1


def test_d_crown_small_cases():
    assert d_crown(PermGroup(3, [])).value == 0
    assert d_crown(cyclic_group(6)).value == 1
    assert d_crown(symmetric_group(5)).value == 2


def test_d_crown_falls_back_when_the_nonabelian_condition_fails():
    # make the inequality fail artificially by pretending |Out| is huge
    from mingen import crowns
    saved = dict(crowns.OUT_ORDERS)
    try:
        crowns.OUT_ORDERS[60] = 10**6
        iv = d_crown(alternating_group(5))
    finally:
        crowns.OUT_ORDERS.clear()
        crowns.OUT_ORDERS.update(saved)
    assert iv.value == 2
    assert "fallback" in iv.hi_certificate


# -- d_brute -----------------------------------------------------------------------

def test_d_brute_examples():
    iv = d_brute(symmetric_group(5))
    assert iv.value == 2 and generates(symmetric_group(5), iv.witness)
    iv = d_brute(group("2^3"))
    assert iv.value == 3 and iv.lo_certificate.startswith("exhaustive") or iv.lo_certificate == "abelianization"
    assert d_brute(group("M9")).value == 2


def test_d_brute_trivial_group():
    assert d_brute(PermGroup(2, [])).value == 0


@pytest.mark.parametrize("name", sorted(["Sym3", "Sym4", "Alt4", "Q8", "D8", "D10", "D12", "Cyc6",
                                         "2^3", "S3xS3", "S2xS3", "F20", "M9", "SL23", "Q8xC2",
                                         "S2wr2", "C3wr2", "CP(S3,2)"]))
def test_both_engines_match_the_minimal_generating_set_oracle(name):
    G = group(name)
    ref = oracles.min_generators(oracles.elements_of(G), G.degree)
    assert d_brute(G).value == ref
    assert d_crown(G).value == ref


@given(small_names, st.integers(0, 1000))
def test_brute_force_interval_is_sound(name, seed):
    G = group(name)
    iv = d_brute(G, seed=seed)
    assert abelianization_d(G) <= iv.lo <= iv.hi
    assert len(iv.witness) == iv.hi
    assert generates(G, iv.witness)


def test_subgroup_search_witness_and_refutation():
    G = group("Q8xC2")
    d, witness = SubgroupSearch(G).min_generators(4)
    assert d == 3 and generates(G, witness)
    # no pair generates
    elems = sorted(oracles.elements_of(G))
    assert not any(len(oracles.closure([a, b], G.degree)) == 16 for a in elems for b in elems)


# -- abelianization and Schreier bound ---------------------------------------------

def test_abelianization_examples():
    assert abelianization_d(group("Q8")) == 2
    for n in (3, 4, 5, 6):
        assert abelianization_d(symmetric_group(n)) == 1
    assert abelianization_d(alternating_group(5)) == 0
    assert abelianization_d(evaluate_text("Lin(5,2,[[1,1],[0,1]],[[0,1],[4,0]])")) == 0


@given(small_names)
def test_abelianization_matches_brute_force(name):
    G = group(name)
    elems = oracles.elements_of(G)
    comms = {oracles.mul(oracles.mul(oracles.inv(a), oracles.inv(b)), oracles.mul(a, b))
             for a in elems for b in elems}
    D = oracles.closure(comms, G.degree)
    # d(G/G') by brute force on the cosets of G'
    reps = oracles.coset_reps(elems, D)
    best = None
    for k in range(0, 5):
        import itertools
        for tup in itertools.combinations(reps, k):
            if len(oracles.closure(list(D) + list(tup), G.degree)) == len(elems):
                best = k
                break
        if best is not None:
            break
    assert abelianization_d(G) == best


def test_schreier_bound_examples():
    assert schreier_bound(2, 2) == 3
    assert schreier_bound(1, 7) == 1
    assert schreier_bound(3, 1) == 3
    with pytest.raises(InputError):
        schreier_bound(0, 2)


# -- properties across groups ------------------------------------------------------------

@pytest.mark.parametrize("expr", ["Sym(4)", "Direct(Sym(3),Sym(3))", "Wreath(Sym(3),2)",
                                  "Affine(3,2,[[0,2],[1,0]],[[1,1],[1,2]])", "Direct(Q8,Cyc(2))"])
def test_quotients_need_no_more_generators(expr):
    G = evaluate_text(expr)
    d = d_crown(G).hi
    for N in chief_series(G).terms[1:-1]:
        Q = coset_action(G, N).image
        assert d_brute(Q).hi <= d


@pytest.mark.parametrize("L", ["Sym(3)", "Sym(4)", "Alt(4)", "Cyc(2)", "Cyc(3)"])
def test_crown_power_staircase_is_monotone(L):
    base = evaluate_text(L)
    values = [d_crown(crown_based_power(base, k)).value for k in (1, 2, 3)]
    assert values == sorted(values)
    if L == "Cyc(2)":
        assert values == [1, 2, 3]
