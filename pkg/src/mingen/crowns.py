"""Crowns: equivalence classes of non-Frattini chief factors and the
numbers attached to them, monolithic primitive groups and crown-based powers.
"""

from __future__ import annotations

import math
import random
from dataclasses import dataclass, field
from functools import cached_property

from .config import DEFAULT_BUDGETS, Budgets
from .errors import InputError, InvariantError, ResourceError
from .factors import (FRATTINI, UNKNOWN, ChiefFactor, endomorphism_field_degree, fixed_subspace_dim,
                      g_equivalent, h1_dim, is_frattini, nonabelian_monolith)
from .perm import PermGroup, _shift, affine_group
from .structure import chief_series, minimal_normal_below, minimal_normal_subgroups, prime_factors


# ---------------------------------------------------------------------------
# orders of outer automorphism groups of small simple groups

def _prime_power_split(q: int):
    ps = prime_factors(q)
    if len(ps) != 1:
        return None
    p = ps[0]
    f = 0
    while q > 1:
        q //= p
        f += 1
    return p, f


def _build_out_table(limit: int = 10**7) -> dict[int, int]:
    table: dict[int, int] = {}

    def put(order, out):
        table[order] = max(out, table.get(order, 0))

    q = 4
    while True:
        order = q * (q * q - 1) // math.gcd(2, q - 1)
        if order > limit:
            break
        pf = _prime_power_split(q)
        if pf is not None:
            put(order, math.gcd(2, q - 1) * pf[1])
        q += 1
    for n in range(5, 17):
        put(math.factorial(n) // 2, 4 if n == 6 else 2)
    others = {
        5616: 2, 6048: 2, 7920: 1, 20160: 12, 25920: 2, 29120: 3, 62400: 4, 95040: 2,
        126000: 6, 175560: 1, 372000: 2, 443520: 2, 604800: 2, 979200: 4, 1451520: 1,
        1876896: 6, 3265920: 8, 4245696: 2, 4680000: 2, 5515776: 18, 5663616: 2,
        6065280: 4, 9999360: 2,
    }
    for order, out in others.items():
        put(order, out)
    return table


OUT_ORDERS = _build_out_table()


def out_order(simple_order: int) -> int | None:
    """|Out(S)| for a nonabelian simple S of the given order (largest over
    groups sharing the order), or None when the order is not tabulated."""
    return OUT_ORDERS.get(simple_order)


# ---------------------------------------------------------------------------

@dataclass(eq=False)
class CrownRecord:
    """One G-equivalence class of non-Frattini chief factors."""

    representative: ChiefFactor
    members: list
    delta: int
    theta: int
    e: int = 0
    r: int = 0
    s: int = 0
    h: int = 0
    simple_order: int = 0
    copies: int = 0
    budgets: Budgets = field(default=DEFAULT_BUDGETS, repr=False)

    @property
    def is_abelian(self) -> bool:
        return self.representative.is_abelian

    @property
    def order(self) -> int:
        return self.representative.order

    @cached_property
    def monolith(self) -> PermGroup:
        return monolithic_primitive(self)

    def row(self) -> dict:
        F = self.representative
        out = {"factor": F.describe(), "order": F.order, "delta": self.delta, "theta": self.theta,
               "members": list(self.members)}
        if self.is_abelian:
            out.update(p=F.p, m=F.m, e=self.e, r=self.r, s=self.s, h=self.h)
        else:
            out.update(simple_order=self.simple_order, copies=self.copies)
        return out


def h_value(delta: int, s: int, r: int, theta: int) -> int:
    return theta + -(-(delta + s) // r)


def s_value(F: ChiefFactor, e: int | None = None) -> int:
    """Dimension of H^1(G/C_G(A), A) over the endomorphism field of A."""
    if not F.is_abelian:
        raise InputError("s is defined for abelian factors only")
    if e is None:
        e = endomorphism_field_degree(F)
    d = h1_dim(F.action, F.p, F.m, F.budgets)
    if d % e:
        raise InvariantError("H^1 dimension is not a multiple of the endomorphism degree")
    return d // e


def simple_decomposition(F: ChiefFactor, seed: int = 0) -> tuple[int, int]:
    """(n, |S|) for a nonabelian chief factor A = S^n."""
    if F.is_abelian:
        raise InputError("abelian factor")
    _, soc, _ = nonabelian_monolith(F)
    rng = random.Random(seed)
    S = minimal_normal_below(soc, PermGroup(soc.degree, []), soc, rng, F.budgets)
    n = round(math.log(F.order, S.order))
    if S.order**n != F.order:
        raise InvariantError("factor order is not a power of its simple factor")
    return n, S.order


def crown_decomposition(G: PermGroup, seed: int = 0, budgets: Budgets = DEFAULT_BUDGETS,
                        series=None) -> list[CrownRecord]:
    """Partition the non-Frattini factors of a chief series into crowns."""
    if G.order == 1:
        raise InputError("the trivial group has no chief factors")
    cs = series if series is not None else chief_series(G, seed, budgets=budgets)
    classes: list[list[int]] = []
    factors = cs.factors
    for i, F in enumerate(factors):
        if F.frattini_flag == UNKNOWN:
            raise ResourceError(f"could not decide whether chief factor {i} is Frattini")
        if F.frattini_flag == FRATTINI:
            continue
        for cl in classes:
            if g_equivalent(factors[cl[0]], F, seed):
                cl.append(i)
                break
        else:
            classes.append([i])
    records = []
    for cl in classes:
        F = factors[cl[0]]
        theta = 0 if F.is_central else 1
        rec = CrownRecord(F, cl, len(cl), theta, budgets=budgets)
        if F.is_abelian:
            rec.e = endomorphism_field_degree(F)
            rec.r = F.m // rec.e
            rec.s = s_value(F, rec.e)
            rec.h = h_value(rec.delta, rec.s, rec.r, rec.theta)
        else:
            rec.copies, rec.simple_order = simple_decomposition(F, seed)
        records.append(rec)
    return records


def monolithic_primitive(record: CrownRecord) -> PermGroup:
    """L_A: A semidirect G/C_G(A) for abelian A, G/C_G(A) otherwise; socle marked."""
    F = record.representative
    if F.is_abelian:
        mats = [a.tolist() for a in F.action]
        L = affine_group(F.p, F.m, mats, record.budgets)
        return L
    L, soc, _ = nonabelian_monolith(F)
    if L.degree > record.budgets.degree:
        raise ResourceError("monolithic group exceeds the degree budget")
    L = PermGroup(L.degree, L.generators, budgets=record.budgets)
    L.marks["socle"] = soc
    return L


def socle_of_monolithic(L: PermGroup, seed: int = 0) -> PermGroup:
    soc = L.marks.get("socle")
    if soc is not None:
        return soc
    mins = minimal_normal_subgroups(L, seed)
    if len(mins) != 1:
        raise InputError(f"group is not monolithic ({len(mins)} minimal normal subgroups)")
    return mins[0]


def crown_based_power(L: PermGroup, k: int, seed: int = 0) -> PermGroup:
    """The subgroup A^k diag(L^k) of L^k, A the socle of the monolithic group L."""
    if k < 1:
        raise InputError("crown-based power needs k >= 1")
    if L.order == 1:
        raise InputError("trivial group is not monolithic")
    A = socle_of_monolithic(L, seed)
    n = L.degree
    N = n * k

    def diag(g):
        out = []
        for i in range(k):
            out.extend(x + i * n for x in g)
        return tuple(out)

    gens = [diag(g) for g in L.generators]
    gens += [_shift(a, i * n, N) for i in range(1, k) for a in A.generators]
    P = PermGroup(N, gens)
    expected = A.order ** (k - 1) * L.order
    if P.order != expected:
        raise InvariantError(f"crown-based power has order {P.order}, expected {expected}")
    P.marks["socle"] = PermGroup(N, [_shift(a, i * n, N) for i in range(k) for a in A.generators])
    return P


def nonabelian_condition(records: list[CrownRecord]) -> dict[int, bool | None]:
    """For each nonabelian record (by index): whether delta * 2n|Out S| <= |A|.

    None when |Out S| is not tabulated.
    """
    out = {}
    for i, rec in enumerate(records):
        if rec.is_abelian:
            continue
        o = out_order(rec.simple_order)
        if o is None:
            out[i] = None
        else:
            out[i] = rec.delta * 2 * rec.copies * o <= rec.order
    return out
