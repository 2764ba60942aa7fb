import itertools
import math

import pytest
from hypothesis import given
from hypothesis import strategies as st

import oracles
from groups import group
from mingen.crowns import (OUT_ORDERS, crown_based_power, crown_decomposition, h_value,
                           monolithic_primitive, nonabelian_condition, out_order, s_value)
from mingen.errors import InputError
from mingen.factors import FRATTINI, classify_factor
from mingen.perm import PermGroup, Permutation, alternating_group, cyclic_group, symmetric_group
from mingen.shell.expr import evaluate_text
from mingen.structure import chief_series, normal_closure


def crown_table(G, seed=0):
    return sorted((rec.order, rec.delta) for rec in crown_decomposition(G, seed))


# -- crown_decomposition ---------------------------------------------------------

def test_elementary_abelian_group_of_order_eight():
    (rec,) = crown_decomposition(group("2^3"))
    assert (rec.delta, rec.theta, rec.r, rec.s, rec.h) == (3, 0, 1, 0, 3)


def test_sym4_crowns():
    recs = {rec.order: rec for rec in crown_decomposition(symmetric_group(4))}
    assert sorted(recs) == [2, 3, 4]
    V = recs[4]
    assert (V.delta, V.theta, V.r, V.e) == (1, 1, 2, 1)
    assert V.s < V.r
    assert V.h == h_value(V.delta, V.s, V.r, V.theta)
    assert recs[3].delta == 1 and recs[2].delta == 1


def test_m9_crowns():
    recs = crown_decomposition(group("M9"))
    socle = [r for r in recs if r.order == 9]
    assert len(socle) == 1 and (socle[0].delta, socle[0].theta) == (1, 1)
    assert sorted(r.order for r in recs if r.order == 2) == [2]
    assert max(2, max(r.h for r in recs)) == 2


def test_trivial_group_has_no_crowns():
    with pytest.raises(InputError):
        crown_decomposition(PermGroup(2, []))


@pytest.mark.parametrize("name", ["Sym4", "M9", "SL23", "Q8xC2", "S3xS3", "CP(S3,2)", "CP(A4,2)",
                                  "A4xC3", "D12", "2^3"])
def test_delta_does_not_depend_on_the_series(name):
    G = group(name)
    tables = {tuple(crown_table(G, seed)) for seed in range(10)}
    assert len(tables) == 1


@given(st.sampled_from(["Sym4", "M9", "SL23", "Q8xC2", "S3xS3", "CP(S3,2)", "A4xC3", "F20", "D8"]),
       st.integers(0, 10**5))
def test_record_invariants(name, seed):
    G = group(name)
    cs = chief_series(G, seed)
    recs = crown_decomposition(G, seed, series=cs)
    covered = sorted(i for rec in recs for i in rec.members)
    nonfrat = [i for i, F in enumerate(cs.factors) if F.frattini_flag != FRATTINI]
    assert covered == nonfrat
    for rec in recs:
        assert rec.delta == len(rec.members) >= 1
        assert (rec.theta == 0) == (rec.representative.centralizer.order == G.order)
        if rec.is_abelian:
            assert rec.s < rec.r
            assert rec.r * rec.e == rec.representative.m
            assert rec.h == rec.theta + math.ceil((rec.delta + rec.s) / rec.r)


def test_layer_contributions_add_up_over_a_normal_series():
    # delta counted through the base group of a wreath product agrees with a free series
    from mingen.perm import wreath_product
    W = wreath_product(symmetric_group(3), 2)
    free = crown_table(W, 0)
    cs = chief_series(W, 0, through=[W.marks["base"]])
    assert sorted((r.order, r.delta) for r in crown_decomposition(W, 0, series=cs)) == free


# -- monolithic primitive groups ----------------------------------------------------

def test_central_factor_gives_cyclic_monolith():
    recs = crown_decomposition(cyclic_group(2))
    assert monolithic_primitive(recs[0]).order == 2


def test_klein_four_of_sym4_gives_sym4():
    recs = crown_decomposition(symmetric_group(4))
    L = monolithic_primitive(next(r for r in recs if r.order == 4))
    assert L.order == 24
    assert sorted(chief_series(L).factor_orders) == [2, 3, 4]


def test_alternating_factor_of_sym5_gives_sym5():
    recs = crown_decomposition(symmetric_group(5))
    L = monolithic_primitive(next(r for r in recs if r.order == 60))
    assert L.order == 120
    assert L.marks["socle"].order == 60


# -- crown-based powers ----------------------------------------------------------

def test_crown_based_power_examples():
    assert crown_based_power(cyclic_group(2), 3).order == 8
    assert crown_based_power(symmetric_group(3), 2).order == 18
    assert crown_based_power(symmetric_group(4), 2).order == 96


@pytest.mark.parametrize("L,soc", [("Sym(3)", 3), ("Sym(4)", 4), ("Alt(4)", 4), ("Cyc(2)", 2),
                                   ("Dih(5)", 5), ("Affine(5,1,[[2]])", 5)])
@pytest.mark.parametrize("k", [1, 2, 3])
def test_crown_based_power_order_formula(L, soc, k):
    G = evaluate_text(L)
    assert crown_based_power(G, k).order == soc ** (k - 1) * G.order


def test_crown_based_power_matches_definition():
    # L_2 = {(l1, l2) : l1 = l2 mod socle}, checked element by element for Sym_3
    S3 = symmetric_group(3)
    P = crown_based_power(S3, 2)
    A = {tuple(a) for a in alternating_group(3).elements()}
    ref = set()
    for x in S3.elements():
        for y in S3.elements():
            if oracles.mul(oracles.inv(tuple(x)), tuple(y)) in A:
                ref.add(tuple(x) + tuple(v + 3 for v in y))
    assert oracles.elements_of(P) == ref


def test_crown_based_power_rejects_non_monolithic_group():
    with pytest.raises(InputError):
        crown_based_power(group("2^3"), 2)
    with pytest.raises(InputError):
        crown_based_power(symmetric_group(3), 0)


# -- s and h --------------------------------------------------------------------

def test_s_for_central_factor_is_zero():
    recs = crown_decomposition(cyclic_group(2))
    assert recs[0].s == 0


def test_s_for_inverted_three_is_zero():
    S3 = symmetric_group(3)
    F = classify_factor(S3, alternating_group(3), PermGroup(3, []))
    assert s_value(F) == 0
    # all three cocycles of Z_2 on Z_3 are coboundaries
    assert oracles.count_cocycles(F.action, 3) == 3
    assert oracles.fixed_vectors(F.action, 3) == 1


def test_s_for_natural_sym3_module():
    S4 = symmetric_group(4)
    V = normal_closure(S4, [Permutation.from_cycles(4, [(0, 1), (2, 3)])])
    F = classify_factor(S4, V, PermGroup(4, []))
    z = oracles.count_cocycles(F.action, 2)
    b = 4 // oracles.fixed_vectors(F.action, 2)
    assert s_value(F) == round(math.log2(z // b))
    assert s_value(F) == 0


def test_h_value_examples():
    assert h_value(3, 0, 1, 0) == 3
    assert h_value(1, 0, 1, 1) == 2
    assert h_value(2, 1, 2, 1) == 3


@given(st.integers(1, 30), st.integers(0, 5), st.integers(1, 6), st.integers(0, 1))
def test_h_value_is_the_ceiling_formula(delta, s, r, theta):
    assert h_value(delta, s, r, theta) == theta + math.ceil((delta + s) / r)


# -- nonabelian condition -----------------------------------------------------------

def test_out_orders_of_small_simple_groups():
    assert out_order(60) == 2
    assert out_order(360) == 4
    assert out_order(168) == 2
    assert out_order(20160) == 12
    assert out_order(7) is None


def test_nonabelian_condition_for_alternating_groups():
    for n in (5, 6):
        recs = crown_decomposition(alternating_group(n))
        cond = nonabelian_condition(recs)
        assert cond == {0: True}
        assert recs[0].copies == 1


def test_nonabelian_condition_fails_for_large_delta():
    recs = crown_decomposition(alternating_group(5))
    recs[0].delta = 16
    assert nonabelian_condition(recs) == {0: False}


def test_nonabelian_condition_unknown_order():
    recs = crown_decomposition(alternating_group(5))
    recs[0].simple_order = 61
    assert nonabelian_condition(recs) == {0: None}


def test_out_table_keys_are_orders_of_nonabelian_simple_groups():
    for order in itertools.islice(sorted(OUT_ORDERS), 40):
        assert order % 4 == 0 or order % 3 == 0
        assert OUT_ORDERS[order] >= 1
