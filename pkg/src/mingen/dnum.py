"""Two ways to compute d(G), the minimal number of generators: the crown
formula and a brute-force search with an exhaustive certificate."""

from __future__ import annotations

import math
import random
from dataclasses import dataclass, field

import numpy as np

from .config import DEFAULT_BUDGETS, Budgets
from .crowns import CrownRecord, crown_based_power, crown_decomposition, nonabelian_condition
from .errors import InputError, InvariantError, ResourceError
from .perm import PermGroup, Permutation, _Chain
from .structure import closure_under_conjugation, derived_subgroup, prime_factors


@dataclass
class DInterval:
    lo: int
    hi: int
    exact: bool
    lo_certificate: str = ""
    hi_certificate: str = ""
    witness: list | None = None
    records: list = field(default_factory=list, repr=False)

    def __post_init__(self):
        if self.lo > self.hi:
            raise InvariantError(f"empty interval [{self.lo}, {self.hi}]")
        if self.exact and self.lo != self.hi:
            raise InvariantError("exact interval with lo != hi")

    @property
    def value(self) -> int | None:
        return self.lo if self.exact else None

    def as_dict(self) -> dict:
        return {"lo": self.lo, "hi": self.hi, "exact": self.exact,
                "lo_certificate": self.lo_certificate, "hi_certificate": self.hi_certificate,
                "witness": [str(w) for w in self.witness] if self.witness else None}


def generates(G: PermGroup, elements) -> bool:
    chain = _Chain(G.degree)
    target = G.order
    for x in elements:
        chain.add_generator(tuple(x))
    return chain.order() == target


def abelianization_d(G: PermGroup) -> int:
    """d(G/G'), the largest p-rank of the abelianization."""
    D = derived_subgroup(G)
    index = G.order // D.order
    best = 0
    for p in prime_factors(index):
        powers = [_pow_raw(g, p) for g in G.generators]
        P = closure_under_conjugation(G, D, powers)
        k = G.order // P.order
        rank = round(math.log(k, p)) if k > 1 else 0
        if p**rank != k:
            raise InvariantError("quotient by p-th powers is not a p-group")
        best = max(best, rank)
    return best


def _pow_raw(g, k):
    return tuple(Permutation._raw(g) ** k)


def schreier_bound(dG: int, index: int) -> int:
    """Upper bound 1 + index * (dG - 1) for subgroups of the given index."""
    if dG < 1 or index < 1:
        raise InputError("need dG >= 1 and index >= 1")
    return 1 + index * (dG - 1)


# ---------------------------------------------------------------------------

def d_crown(G: PermGroup, seed: int = 0, budgets: Budgets = DEFAULT_BUDGETS) -> DInterval:
    """d(G) from the crowns of G."""
    if G.order == 1:
        return DInterval(0, 0, True, "trivial", "trivial", [])
    ab = abelianization_d(G)
    if G.is_abelian() and ab <= 1:
        return DInterval(1, 1, True, "abelianization", "cyclic", None)
    records = crown_decomposition(G, seed, budgets)
    d = max([2] + [rec.h for rec in records if rec.is_abelian])
    exact = True
    cond = nonabelian_condition(records)
    fallback = []
    for i, ok in cond.items():
        if ok:
            continue
        rec = records[i]
        L = rec.monolith
        power = crown_based_power(L, rec.delta, seed)
        sub = d_brute(power, budgets.brute_tuples, seed, budgets)
        fallback.append((i, sub))
        d = max(d, sub.hi)
        exact = exact and sub.exact
    lo = d if exact else max(ab, 2, max([sub.lo for _, sub in fallback] or [0]))
    cert = "crown formula" + (" with brute-force fallback" if fallback else "")
    return DInterval(lo, d, exact, "crown-h", cert, None, records)


# ---------------------------------------------------------------------------
# brute force

def d_brute(G: PermGroup, budget: int | None = None, seed: int = 0,
            budgets: Budgets = DEFAULT_BUDGETS) -> DInterval:
    """d(G) by random generating-tuple search plus an exhaustive lower bound."""
    if budget is None:
        budget = budgets.brute_tuples
    if G.order == 1:
        return DInterval(0, 0, True, "trivial", "empty tuple", [])
    lo = abelianization_d(G)
    lo_cert = "abelianization"
    if lo < 2 and not G.is_abelian():
        lo, lo_cert = 2, "exhaustive-at-1"
    lo = max(lo, 1)
    rng = random.Random(seed)
    hi, witness = None, None
    k = lo
    while hi is None:
        if k >= len(G.generators):
            hi, witness = len(G.generators), [tuple(g) for g in G.generators]
            break
        # small groups get the exact answer from the exhaustive search anyway
        trials = max(1, budget // max(1, k))
        if G.order <= budgets.exhaustive_order:
            trials = min(trials, 200)
        for _ in range(trials):
            tup = [tuple(G.random_element(rng)) for _ in range(k)]
            if generates(G, tup):
                hi, witness = k, tup
                break
        else:
            k += 1
    witness = [Permutation._raw(w) for w in witness]
    if not generates(G, witness):
        raise InvariantError("witness tuple does not generate")
    if hi == lo:
        return DInterval(lo, hi, True, lo_cert, f"generating {hi}-tuple", witness)
    if G.order <= budgets.exhaustive_order:
        d, found = SubgroupSearch(G).min_generators(hi)
        if found is not None:
            witness = found
        if not generates(G, witness) or len(witness) != d:
            raise InvariantError("exhaustive search returned a bad witness")
        return DInterval(d, d, True, f"exhaustive-at-{d - 1}", f"generating {d}-tuple", witness)
    return DInterval(lo, hi, False, lo_cert, f"generating {hi}-tuple", witness)


class SubgroupSearch:
    """Exhaustive search over subgroups generated by few elements.

    Elements are numbered; every subgroup is a boolean mask.  Level j holds
    one representative per conjugacy class of subgroups generated by j
    elements; G lies at level j exactly when d(G) <= j.
    """

    def __init__(self, G: PermGroup):
        self.G = G
        elems = [tuple(g) for g in G.elements()]
        self.n = len(elems)
        self.elems = np.array(elems, dtype=np.int64)
        self.base = np.array(G.base if G.base else [0], dtype=np.int64)
        if G.degree ** len(self.base) >= 2**62:
            raise ResourceError("element codes would overflow")
        self.codes = self._encode(self.elems)
        self.order = np.argsort(self.codes)
        self.sorted_codes = self.codes[self.order]
        self._right: dict[int, np.ndarray] = {}
        self.identity = self.index_of(tuple(range(G.degree)))
        self.conj_maps = [self._conj_map(tuple(g)) for g in G.generators]

    def _encode(self, arr):
        deg = self.G.degree
        code = np.zeros(arr.shape[0], dtype=np.int64)
        for b in self.base:
            code = code * deg + arr[:, b]
        return code

    def _lookup(self, arr) -> np.ndarray:
        codes = self._encode(arr)
        pos = np.searchsorted(self.sorted_codes, codes)
        return self.order[pos]

    def index_of(self, g) -> int:
        return int(self._lookup(np.array([g], dtype=np.int64))[0])

    def right(self, i: int) -> np.ndarray:
        """Index map x -> x * elems[i]."""
        r = self._right.get(i)
        if r is None:
            g = self.elems[i]
            r = self._lookup(g[self.elems])
            self._right[i] = r
        return r

    def _conj_map(self, g) -> np.ndarray:
        g = np.array(g, dtype=np.int64)
        ginv = np.argsort(g)
        # (g^-1 x g)[i] = g[x[ginv[i]]]
        arr = g[self.elems[:, ginv]]
        return self._lookup(arr)

    def closure(self, mask: np.ndarray, new: list[int], gens: list[int]) -> np.ndarray:
        """Mask of <subgroup(mask), new>; gens are indices generating the result."""
        mask = mask.copy()
        frontier = np.flatnonzero(mask)
        for x in new:
            if not mask[x]:
                mask[x] = True
        frontier = np.flatnonzero(mask)
        while frontier.size:
            nxt = np.concatenate([self.right(s)[frontier] for s in gens])
            nxt = np.unique(nxt)
            nxt = nxt[~mask[nxt]]
            mask[nxt] = True
            frontier = nxt
        return mask

    def _conjugates(self, mask: np.ndarray) -> list[bytes]:
        seen = {mask.tobytes(): mask}
        queue = [mask]
        while queue:
            m = queue.pop()
            idx = np.flatnonzero(m)
            for cm in self.conj_maps:
                c = np.zeros(self.n, dtype=bool)
                c[cm[idx]] = True
                k = c.tobytes()
                if k not in seen:
                    seen[k] = c
                    queue.append(c)
        return list(seen)

    def min_generators(self, upper: int):
        """(d(G), generating d-tuple or None), given that some upper-tuple generates."""
        n = self.n
        if n == 1:
            return 0, []
        trivial = np.zeros(n, dtype=bool)
        trivial[self.identity] = True
        level = [(trivial, [])]
        seen: set[bytes] = set()
        for j in range(1, upper):
            nxt = []
            last = j == upper - 1
            for mask, gens in level:
                covered = mask.copy()
                for x in range(n):
                    if covered[x]:
                        continue
                    K = self.closure(mask, [x], gens + [x])
                    if K.all():
                        return j, [Permutation._raw(tuple(self.elems[i])) for i in gens + [x]]
                    # <H, y> lies in K for every y in K, so the coset of x is done
                    if last:
                        covered |= K
                        continue
                    covered[self.right(x)[np.flatnonzero(mask)]] = True
                    key = K.tobytes()
                    if key in seen:
                        continue
                    seen.update(self._conjugates(K))
                    nxt.append((K, gens + [x]))
            level = nxt
        return upper, None
