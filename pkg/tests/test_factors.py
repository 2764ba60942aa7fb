import itertools

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

import oracles
from groups import group, small_names
from mingen.errors import InputError
from mingen.factors import (FRATTINI, NON_FRATTINI, check_complement, classify_factor, cocycle_dim,
                            endomorphism_field_degree, find_complement, fixed_subspace_dim,
                            g_equivalent, g_isomorphic, h1_dim, intertwiners, is_frattini,
                            is_irreducible, matrix_group_tree)
from mingen.perm import (PermGroup, Permutation, alternating_group, direct_product, symmetric_group,
                         wreath_product)
from mingen.shell.expr import evaluate_text
from mingen.structure import centre, chief_series, normal_closure


def cyc(n, *cycles):
    return Permutation.from_cycles(n, cycles)


def trivial(G):
    return PermGroup(G.degree, [])


def klein_in_sym4():
    S4 = symmetric_group(4)
    return S4, normal_closure(S4, [cyc(4, (0, 1), (2, 3))])


def matrix_group_order(mats, p):
    elems, _ = matrix_group_tree([np.array(a) % p for a in mats], p, 10**5)
    return len(elems)


# -- classify_factor ---------------------------------------------------------------

def test_klein_four_in_sym4_is_natural_module():
    S4, V = klein_in_sym4()
    F = classify_factor(S4, V, trivial(S4))
    assert (F.kind, F.p, F.m) == ("abelian", 2, 2)
    assert matrix_group_order(F.action, 2) == 6


def test_alternating_five_in_sym5_is_nonabelian():
    S5 = symmetric_group(5)
    F = classify_factor(S5, alternating_group(5), trivial(S5))
    assert F.kind == "nonabelian" and F.order == 60


def test_socle_of_m9_has_quaternion_action():
    G = group("M9")
    F = classify_factor(G, G.marks["socle"], trivial(G))
    assert (F.p, F.m) == (3, 2)
    assert matrix_group_order(F.action, 3) == 8
    assert F.centralizer.equals(G.marks["socle"])


def test_classify_rejects_bad_sections():
    S4, V = klein_in_sym4()
    with pytest.raises(InputError):
        classify_factor(S4, trivial(S4), V)


@given(small_names, st.integers(0, 10**4))
def test_abelian_factors_are_irreducible_with_consistent_coordinates(name, seed):
    G = group(name)
    for F in chief_series(G, seed).factors:
        if not F.is_abelian:
            continue
        assert F.p ** F.m == F.order
        assert is_irreducible(F.action, F.p, F.m)
        # coordinates of products add, and conjugation acts by the matrices
        a, b = tuple(F.upper.random_element(seed)), tuple(F.upper.random_element(seed + 1))
        va, vb = F.vector(a), F.vector(b)
        assert np.array_equal(F.vector(oracles.mul(a, b)), (va + vb) % F.p)
        g = tuple(G.random_element(seed + 2))
        assert np.array_equal(F.vector(oracles.conj(a, g)), (va @ F.matrix_of(g)) % F.p)


@given(small_names, st.integers(0, 10**4))
def test_action_matrices_respect_products(name, seed):
    G = group(name)
    for F in chief_series(G, seed).factors:
        if not F.is_abelian:
            continue
        g, h = tuple(G.random_element(seed)), tuple(G.random_element(seed + 7))
        lhs = F.matrix_of(oracles.mul(g, h))
        assert np.array_equal(lhs, (F.matrix_of(g) @ F.matrix_of(h)) % F.p)


# -- Frattini test --------------------------------------------------------------

def test_centre_of_quaternion_group_is_frattini():
    Q = group("Q8")
    F = classify_factor(Q, centre(Q), trivial(Q))
    assert is_frattini(F)
    # no subgroup of order 4 avoids the centre
    elems = oracles.elements_of(Q)
    z = next(tuple(g) for g in centre(Q).generators)
    subgroups = {oracles.closure([a, b], 8) for a in elems for b in elems}
    assert not any(len(U) == 4 and z not in U for U in subgroups)


def test_klein_four_in_sym4_is_complemented():
    S4, V = klein_in_sym4()
    F = classify_factor(S4, V, trivial(S4))
    assert not is_frattini(F)
    U = find_complement(F)
    assert U.order == 6


@pytest.mark.parametrize("expr", ["Lin(3,2,[[1,1],[0,1]],[[1,0],[1,1]])",
                                  "Lin(5,2,[[1,1],[0,1]],[[0,1],[4,0]])"])
def test_centres_of_special_linear_groups_are_frattini(expr):
    G = evaluate_text(expr)
    Z = centre(G)
    assert Z.order == 2
    F = classify_factor(G, Z, trivial(G))
    assert F.frattini_flag == FRATTINI


def test_nonabelian_factors_are_never_frattini():
    for expr in ["Sym(5)", "Alt(6)", "Direct(Alt(5),Cyc(2))", "Wreath(Alt(5),2)", "CrownPower(Sym(5),2)"]:
        G = evaluate_text(expr)
        for F in chief_series(G).factors:
            if not F.is_abelian:
                assert not is_frattini(F)
                assert F.frattini_flag == NON_FRATTINI


@pytest.mark.parametrize("name", ["Sym3", "Sym4", "Alt4", "Q8", "D8", "D12", "Cyc6", "2^3", "S3xS3",
                                  "S2xS3", "F20", "M9", "SL23", "Q8xC2", "S2wr2", "C3wr2", "CP(S3,2)"])
def test_frattini_flags_match_exhaustive_complement_search(name):
    G = group(name)
    gens = [tuple(g) for g in G.generators]
    for seed in range(2):
        for F in chief_series(G, seed).factors:
            if not F.is_abelian:
                continue
            upper, lower = oracles.elements_of(F.upper), oracles.elements_of(F.lower)
            if F.order ** len(gens) > 20000:
                continue
            ref = oracles.has_complement(gens, upper, lower, G.degree)
            assert (F.frattini_flag == NON_FRATTINI) == ref


@given(small_names, st.integers(0, 10**4))
def test_complement_witnesses_pass_the_assertions(name, seed):
    G = group(name)
    for F in chief_series(G, seed).factors:
        if not F.is_abelian:
            continue
        U = find_complement(F)
        if U is None:
            continue
        check_complement(F, U)
        # U meets the factor exactly in lower
        inter = oracles.elements_of(U) & oracles.elements_of(F.upper)
        assert inter == oracles.elements_of(F.lower)
        assert U.order * F.order == G.order


def test_complement_search_needs_an_abelian_factor():
    S5 = symmetric_group(5)
    F = classify_factor(S5, alternating_group(5), trivial(S5))
    with pytest.raises(InputError):
        find_complement(F)


# -- module isomorphism ----------------------------------------------------------

def test_factor_is_isomorphic_to_itself():
    S4, V = klein_in_sym4()
    F = classify_factor(S4, V, trivial(S4))
    iso = g_isomorphic(F, F)
    assert iso is not None and iso.verify()


def test_central_factors_of_klein_four_group_are_isomorphic():
    G = direct_product(symmetric_group(2), symmetric_group(2))
    cs = chief_series(G)
    F1, F2 = cs.factors
    iso = g_isomorphic(F1, F2)
    assert iso is not None and iso.verify()


def test_factors_of_different_dimension_are_not_isomorphic():
    W = wreath_product(symmetric_group(4), 3)
    factors = chief_series(W).factors
    square = next(F for F in factors if F.is_abelian and (F.p, F.m) == (2, 2))
    line = next(F for F in factors if F.is_abelian and (F.p, F.m) == (2, 1) and F.is_central)
    assert g_isomorphic(square, line) is None
    assert not g_equivalent(square, line)


def test_the_two_normal_threes_of_sym3_squared_are_not_equivalent():
    G = group("S3xS3")
    cs = chief_series(G, through=[G.marks["left"]])
    threes = [F for F in cs.factors if F.order == 3]
    assert len(threes) == 2
    assert intertwiners(threes[0].action, threes[1].action, 3).shape[0] == 0
    assert not g_equivalent(threes[0], threes[1])


def test_factors_of_elementary_abelian_group_are_equivalent():
    G = group("2^3")
    factors = chief_series(G).factors
    assert all(g_equivalent(a, b) for a in factors for b in factors)


def test_nonabelian_factors_with_different_centralizers():
    # Alt_5 x Alt_5 is the crown-based power of Alt_5 of size 2: the two
    # simple factors are equivalent although their centralizers differ
    G = evaluate_text("Direct(Alt(5),Alt(5))")
    a, b = chief_series(G).factors
    assert not a.centralizer.equals(b.centralizer)
    assert g_equivalent(a, a) and g_equivalent(a, b)
    # Sym_5 x Sym_5 is too large to be a crown-based power of Sym_5
    H = evaluate_text("Direct(Sym(5),Sym(5))")
    c, d = [F for F in chief_series(H).factors if not F.is_abelian]
    assert not g_equivalent(c, d)
    K = evaluate_text("Direct(Alt(5),Sym(5))")
    c, d = [F for F in chief_series(K).factors if not F.is_abelian]
    assert not g_equivalent(c, d)


def test_crown_power_socle_factors_are_equivalent():
    G = evaluate_text("CrownPower(Alt(5),2)")
    a, b = chief_series(G).factors
    assert not a.centralizer.equals(b.centralizer)
    assert g_equivalent(a, b)


@pytest.mark.parametrize("name", ["Sym4", "S3xS3", "2^3", "M9", "Q8xC2", "CP(S3,2)", "A4xC3", "D12"])
def test_g_equivalence_is_an_equivalence_relation(name):
    G = group(name)
    factors = chief_series(G, 1).factors
    rel = {(i, j): g_equivalent(a, b) for (i, a), (j, b) in itertools.product(enumerate(factors), repeat=2)}
    n = len(factors)
    for i in range(n):
        assert rel[i, i]
        for j in range(n):
            assert rel[i, j] == rel[j, i]
            for k in range(n):
                if rel[i, j] and rel[j, k]:
                    assert rel[i, k]


@pytest.mark.parametrize("name", ["Sym4", "S3xS3", "M9", "A4xC3", "CP(A4,2)"])
def test_isomorphism_matches_brute_intertwiner_search(name):
    G = group(name)
    factors = [F for F in chief_series(G).factors if F.is_abelian and F.m <= 2]
    for a, b in itertools.product(factors, repeat=2):
        if (a.p, a.m) != (b.p, b.m):
            continue
        m, p = a.m, a.p
        invertible = 0
        for entries in itertools.product(range(p), repeat=m * m):
            T = np.array(entries).reshape(m, m)
            ok = all(np.array_equal((x @ T) % p, (T @ y) % p) for x, y in zip(a.action, b.action))
            if ok and round(np.linalg.det(T)) % p:
                invertible += 1
        assert (g_isomorphic(a, b) is not None) == (invertible > 0)


# -- endomorphism field and fixed points ---------------------------------------------

def test_endomorphism_degree_examples():
    G = group("Cyc6")
    F = next(F for F in chief_series(G).factors if F.order == 2)
    assert endomorphism_field_degree(F) == 1
    A4 = alternating_group(4)
    V = classify_factor(A4, normal_closure(A4, [cyc(4, (0, 1), (2, 3))]), trivial(A4))
    assert endomorphism_field_degree(V) == 2
    S4, K = klein_in_sym4()
    assert endomorphism_field_degree(classify_factor(S4, K, trivial(S4))) == 1


@given(small_names, st.integers(0, 100))
def test_endomorphism_algebra_is_a_field_of_size_p_to_the_e(name, seed):
    G = group(name)
    for F in chief_series(G, seed).factors:
        if not F.is_abelian or F.m > 2:
            continue
        e = endomorphism_field_degree(F)
        assert F.m % e == 0
        assert oracles.count_intertwiners(F.action, F.action, F.p) == F.p**e
        basis = intertwiners(F.action, F.action, F.p)
        for c in itertools.product(range(F.p), repeat=e):
            if any(c):
                T = (np.array(c) @ basis).reshape(F.m, F.m) % F.p
                assert round(np.linalg.det(T)) % F.p != 0


def test_fixed_subspace_examples():
    G = group("2^3")
    assert all(fixed_subspace_dim(F) == F.m for F in chief_series(G).factors)
    S4, V = klein_in_sym4()
    assert fixed_subspace_dim(classify_factor(S4, V, trivial(S4))) == 0


@given(small_names, st.integers(0, 100))
def test_fixed_subspace_matches_brute_count(name, seed):
    G = group(name)
    for F in chief_series(G, seed).factors:
        if F.is_abelian:
            assert oracles.fixed_vectors(F.action, F.p) == F.p ** fixed_subspace_dim(F)


# -- first cohomology ------------------------------------------------------------

MODULES = [
    (3, [[[2]]]),                                   # Z_2 inverting Z_3
    (2, [[[0, 1], [1, 1]], [[0, 1], [1, 0]]]),      # natural Sym_3-module
    (2, [[[0, 1], [1, 1]]]),                        # Z_3 on F_4
    (3, [[[0, 2], [1, 0]], [[1, 1], [1, 2]]]),      # Q_8 on F_3^2
    (2, [[[1]]]),                                   # trivial
    (2, [[[1, 1], [0, 1]]]),                        # Z_2 on F_2^2, free module
    (3, [[[1, 1], [0, 1]]]),                        # unipotent Z_3 on F_3^2
    (5, [[[1, 1], [0, 1]], [[2, 0], [0, 3]]]),      # Borel subgroup of GL_2(5)
    (2, [[[0, 1, 0], [0, 0, 1], [1, 1, 0]]]),       # Singer cycle of order 7 on F_8
]


@pytest.mark.parametrize("p,mats", MODULES)
def test_cocycle_dimension_matches_enumeration(p, mats):
    m = len(mats[0])
    count = oracles.count_cocycles(mats, p)
    assert count == p ** cocycle_dim([np.array(a) for a in mats], p, m)


def test_h1_examples():
    assert h1_dim([np.array([[2]])], 3, 1) == 0
    assert h1_dim([np.array([[0, 1], [1, 1]]), np.array([[0, 1], [1, 0]])], 2, 2) == 0
    assert h1_dim([np.array([[1, 1], [0, 1]])], 2, 2) == 0
    assert h1_dim([np.array([[1]])], 2, 1) == 0
    # unipotent Z_3 on F_3^2: H^1 = F_3
    assert h1_dim([np.array([[1, 1], [0, 1]])], 3, 2) == 1
