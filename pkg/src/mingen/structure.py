"""Normal subgroups: closures, derived subgroups, centralizers of factors,
minimal normal subgroups and chief series.

Quotients are never built as separate permutation groups here.  A normal
subgroup N is carried along and elements of G/N are keyed by the canonical
coset representative ``N.coset_rep(g)``.
"""

from __future__ import annotations

import random
from collections import deque
from dataclasses import dataclass, field
from functools import cached_property
from typing import Iterable, Sequence

from .config import DEFAULT_BUDGETS, Budgets
from .errors import InputError, InvariantError, ResourceError
from .perm import (Homomorphism, PermGroup, Permutation, _Chain, _conj, _inv, _is_id, _mul,
                   _perm_order, _pow)


def prime_factors(n: int) -> list[int]:
    out = []
    d = 2
    while d * d <= n:
        if n % d == 0:
            out.append(d)
            while n % d == 0:
                n //= d
        d += 1
    if n > 1:
        out.append(n)
    return out


def _check_members(G: PermGroup, S) -> list:
    out = []
    for s in S:
        s = tuple(s)
        if len(s) != G.degree or s not in G:
            raise InputError("element does not lie in the group")
        out.append(s)
    return out


def closure_under_conjugation(G: PermGroup, base: PermGroup | None, extra: Iterable) -> PermGroup:
    """Normal closure in G of base (already normal in G) together with `extra`."""
    degree = G.degree
    if base is None:
        chain = _Chain(degree)
        gens: list = []
    else:
        chain = base._chain.copy()
        gens = [tuple(g) for g in base.generators]
    queue = deque()
    for x in extra:
        x = tuple(x)
        if chain.add_generator(x):
            gens.append(x)
            queue.append(x)
    Ggens = [tuple(g) for g in G.generators]
    while queue:
        h = queue.popleft()
        for g in Ggens:
            c = _conj(h, g)
            if chain.add_generator(c):
                gens.append(c)
                queue.append(c)
    return PermGroup._from_chain(degree, gens, chain)


def normal_closure(G: PermGroup, S: Iterable) -> PermGroup:
    """Smallest normal subgroup of G containing S."""
    return closure_under_conjugation(G, None, _check_members(G, S))


def commutator(a, b):
    return _mul(_mul(_inv(a), _inv(b)), _mul(a, b))


def derived_subgroup(G: PermGroup) -> PermGroup:
    gens = [tuple(g) for g in G.generators]
    comms = [commutator(a, b) for i, a in enumerate(gens) for b in gens[i + 1:]]
    return closure_under_conjugation(G, None, comms)


def commutator_subgroup(G: PermGroup, A: PermGroup, B: PermGroup) -> PermGroup:
    """[A, B] for A, B normal in G."""
    comms = [commutator(a, b) for a in A.generators for b in B.generators]
    return closure_under_conjugation(G, None, comms)


def _require_normal(G: PermGroup, N: PermGroup, what: str) -> None:
    if not N.is_normal_in(G):
        raise InputError(f"{what} is not a normal subgroup of the group")


def factor_keys(upper: PermGroup, lower: PermGroup, budgets: Budgets = DEFAULT_BUDGETS) -> list:
    """Canonical representatives of all cosets of lower in upper (identity first)."""
    size = upper.order // lower.order
    if size > budgets.factor_order:
        raise ResourceError(f"factor of order {size} exceeds the budget {budgets.factor_order}")
    start = lower.coset_rep(tuple(range(upper.degree)))
    seen = {start}
    keys = [start]
    queue = deque([start])
    gens = [tuple(g) for g in upper.generators]
    while queue:
        k = queue.popleft()
        for g in gens:
            y = lower.coset_rep(_mul(k, g))
            if y not in seen:
                seen.add(y)
                keys.append(y)
                queue.append(y)
    if len(keys) != size:
        raise InvariantError("coset enumeration of the factor disagrees with its order")
    return keys


def factor_action(G: PermGroup, upper: PermGroup, lower: PermGroup,
                  budgets: Budgets = DEFAULT_BUDGETS) -> tuple[Homomorphism, list]:
    """Conjugation action of G on the G-orbits of the generator cosets of upper/lower.

    Those orbits generate upper/lower, so the kernel is C_G(upper/lower) and
    the image is a faithful copy of G/C_G(upper/lower).
    """
    Ggens = [tuple(g) for g in G.generators]
    points: list = []
    index: dict = {}
    queue = deque()
    for u in upper.generators:
        k = lower.coset_rep(tuple(u))
        if _is_id(k) or k in index:
            continue
        index[k] = len(points)
        points.append(k)
        queue.append(k)
    while queue:
        k = queue.popleft()
        for g in Ggens:
            y = lower.coset_rep(_conj(k, g))
            if y not in index:
                if len(points) >= budgets.factor_order:
                    raise ResourceError("factor action exceeds the factor budget")
                index[y] = len(points)
                points.append(y)
                queue.append(y)
    if not points:
        raise InputError("upper is contained in lower")
    images = [tuple(index[lower.coset_rep(_conj(k, g))] for k in points) for g in Ggens]
    return Homomorphism(G, len(points), images, budgets), points


def centralizer_of_factor(G: PermGroup, upper: PermGroup, lower: PermGroup,
                          budgets: Budgets = DEFAULT_BUDGETS) -> PermGroup:
    """C_G(upper/lower): kernel of the conjugation action of G on the factor."""
    _require_normal(G, lower, "lower")
    _require_normal(G, upper, "upper")
    if not lower.is_subgroup_of(upper) or lower.order == upper.order:
        raise InputError("need lower < upper")
    hom, _ = factor_action(G, upper, lower, budgets)
    return hom.kernel


def centre(G: PermGroup, budgets: Budgets = DEFAULT_BUDGETS) -> PermGroup:
    if G.order == 1:
        return G
    return centralizer_of_factor(G, G, PermGroup(G.degree, []), budgets)


# ---------------------------------------------------------------------------

def prime_order_mod(x, N: PermGroup):
    """A power of x whose image in G/N has prime order (x must lie outside N)."""
    k = _perm_order(x)
    for p in prime_factors(k):
        while k % p == 0 and _pow(x, k // p) in N:
            k //= p
    if k == 1:
        raise InputError("element lies in the subgroup")
    p = prime_factors(k)[0]
    return _pow(x, k // p)


def conjugacy_classes(G: PermGroup, budgets: Budgets = DEFAULT_BUDGETS) -> list[list]:
    """All conjugacy classes as lists of raw tuples (representative first)."""
    if G.order > budgets.enumerate_order:
        raise ResourceError(f"|G| = {G.order} exceeds the enumeration budget")
    elements = [tuple(g) for g in G.elements()]
    gens = [tuple(g) for g in G.generators]
    seen: set = set()
    classes = []
    for x in elements:
        if x in seen:
            continue
        cls = [x]
        seen.add(x)
        i = 0
        while i < len(cls):
            y = cls[i]
            for g in gens:
                z = _conj(y, g)
                if z not in seen:
                    seen.add(z)
                    cls.append(z)
            i += 1
        classes.append(cls)
    return classes


def minimal_normal_subgroups(G: PermGroup, seed: int = 0, samples: int = 200,
                             budgets: Budgets = DEFAULT_BUDGETS) -> list[PermGroup]:
    """All minimal normal subgroups of G.

    Exhaustive over conjugacy classes of prime-order elements when G is small
    enough to enumerate; otherwise candidates come from random elements and
    each candidate is certified minimal.
    """
    if G.order == 1:
        raise InputError("the trivial group has no minimal normal subgroups")
    trivial = PermGroup(G.degree, [])
    candidates: list[PermGroup] = []
    if G.order <= budgets.enumerate_order:
        for cls in conjugacy_classes(G, budgets):
            x = cls[0]
            o = _perm_order(x)
            if o > 1 and len(prime_factors(o)) == 1 and o == prime_factors(o)[0]:
                candidates.append(closure_under_conjugation(G, None, [x]))
    else:
        rng = random.Random(seed)
        descended: list[PermGroup] = []
        for _ in range(samples):
            x = tuple(G.random_element(rng))
            if _is_id(x):
                continue
            y = prime_order_mod(x, trivial)
            # a minimal normal subgroup is the normal closure of any of its elements
            if any(y in K for K in candidates):
                continue
            M = closure_under_conjugation(G, None, [y])
            if any(M.equals(D) for D in descended):
                continue
            descended.append(M)
            candidates.append(minimal_normal_below(G, trivial, M, rng, budgets))
    candidates.sort(key=lambda M: M.order)
    result: list[PermGroup] = []
    for M in candidates:
        if any(K.is_subgroup_of(M) for K in result):
            continue
        if not any(K.order < M.order and K.is_subgroup_of(M) for K in candidates):
            result.append(M)
    return result


def minimal_normal_below(G: PermGroup, N: PermGroup, M: PermGroup, rng: random.Random,
                         budgets: Budgets = DEFAULT_BUDGETS, tries: int = 8) -> PermGroup:
    """Shrink M (normal, N < M) to some M' with M'/N minimal normal in G/N."""
    while True:
        shrunk = False
        for _ in range(tries):
            x = tuple(M.random_element(rng))
            if x in N:
                continue
            y = prime_order_mod(x, N)
            K = closure_under_conjugation(G, N, [y])
            if K.order < M.order:
                M = K
                shrunk = True
                break
        if shrunk:
            continue
        smaller = _certify_minimal(G, N, M, budgets)
        if smaller is None:
            return M
        M = smaller


def _certify_minimal(G: PermGroup, N: PermGroup, M: PermGroup, budgets: Budgets):
    """None if M/N is minimal normal in G/N, else a smaller normal M' > N."""
    keys = factor_keys(M, N, budgets)
    Ggens = [tuple(g) for g in G.generators]
    seen = {keys[0]}
    for k in keys[1:]:
        if k in seen:
            continue
        # G-conjugacy orbit of the coset k
        orbit = [k]
        seen.add(k)
        i = 0
        while i < len(orbit):
            for g in Ggens:
                z = N.coset_rep(_conj(orbit[i], g))
                if z not in seen:
                    seen.add(z)
                    orbit.append(z)
            i += 1
        K = closure_under_conjugation(G, N, [k])
        if K.order < M.order:
            return K
    return None


@dataclass
class ChiefSeriesRecord:
    """A chief series 1 = N_0 < N_1 < ... < N_n = G of `ambient`."""

    ambient: PermGroup
    terms: list
    seed: int = 0
    budgets: Budgets = field(default=DEFAULT_BUDGETS, repr=False)

    @property
    def length(self) -> int:
        return len(self.terms) - 1

    @property
    def factor_orders(self) -> list[int]:
        return [self.terms[i + 1].order // self.terms[i].order for i in range(self.length)]

    @cached_property
    def factors(self) -> list:
        from .factors import classify_factor
        return [classify_factor(self.ambient, self.terms[i + 1], self.terms[i], self.budgets)
                for i in range(self.length)]

    def check_normal(self) -> bool:
        return all(T.is_normal_in(self.ambient) for T in self.terms)


def chief_series(G: PermGroup, seed: int = 0, through: Sequence[PermGroup] | None = None,
                 budgets: Budgets = DEFAULT_BUDGETS) -> ChiefSeriesRecord:
    """Build a chief series bottom-up, refining the normal series `through` if given.

    Each step picks, at random for the seed, some minimal normal subgroup of
    the current quotient and certifies its minimality exactly.
    """
    rng = random.Random(seed)
    targets = [T for T in (through or []) if T.order > 1]
    for T in targets:
        _require_normal(G, T, "series term")
    targets.append(G)
    N = PermGroup(G.degree, [])
    terms = [N]
    for T in targets:
        if not N.is_subgroup_of(T):
            raise InputError("the given series is not ascending")
        while N.order < T.order:
            x = tuple(T.random_element(rng))
            while x in N:
                x = tuple(T.random_element(rng))
            M = closure_under_conjugation(G, N, [prime_order_mod(x, N)])
            M = minimal_normal_below(G, N, M, rng, budgets)
            terms.append(M)
            N = M
    return ChiefSeriesRecord(G, terms, seed, budgets)


def pullback(G: PermGroup, q: Homomorphism, S: PermGroup) -> PermGroup:
    """Preimage in G of S <= image(q)."""
    if q.source is not G and not q.source.equals(G):
        raise InputError("homomorphism is not defined on this group")
    if not S.is_subgroup_of(q.image):
        raise InputError("subgroup is not inside the image")
    P = q.preimage(S)
    if P.order != q.kernel.order * S.order:
        raise InvariantError("|pullback| != |kernel| * |S|")
    return P
