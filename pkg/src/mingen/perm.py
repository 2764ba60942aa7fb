"""Permutations, permutation groups with a base and strong generating set,
homomorphisms given by generator images, and the product constructions.

Conventions: points are 0-based, a permutation is the tuple of point images,
and products are read left to right, ``(p * q)(x) == q(p(x))``.  Conjugation
is the right action ``x ** g == g**-1 * x * g``.
"""

from __future__ import annotations

import itertools
import math
import random
from collections import deque
from functools import cached_property
from typing import Iterable, Iterator, Sequence

import numpy as np

from . import gf
from .config import DEFAULT_BUDGETS, Budgets
from .errors import InputError, InvariantError, ResourceError


# ---------------------------------------------------------------------------
# raw tuple helpers (hot paths never wrap into Permutation objects)

def _mul(p, q):
    return tuple(map(q.__getitem__, p))


def _inv(p):
    r = [0] * len(p)
    for i, x in enumerate(p):
        r[x] = i
    return tuple(r)


def _conj(x, g):
    """g^-1 * x * g as a raw tuple."""
    return _mul(_mul(_inv(g), x), g)


def _pow(p, k):
    n = len(p)
    result = tuple(range(n))
    if k < 0:
        p, k = _inv(p), -k
    base = tuple(p)
    while k:
        if k & 1:
            result = _mul(result, base)
        base = _mul(base, base)
        k >>= 1
    return result


def _is_id(p):
    return all(i == x for i, x in enumerate(p))


def _perm_order(p):
    seen = [False] * len(p)
    o = 1
    for i in range(len(p)):
        if not seen[i]:
            length = 0
            j = i
            while not seen[j]:
                seen[j] = True
                j = p[j]
                length += 1
            o = o * length // math.gcd(o, length)
    return o


class Permutation(tuple):
    """A bijection of {0, ..., degree-1}, stored as its tuple of images."""

    __slots__ = ()

    def __new__(cls, images: Iterable[int]):
        images = tuple(int(i) for i in images)
        if not images:
            raise InputError("a permutation needs degree >= 1")
        if sorted(images) != list(range(len(images))):
            raise InputError(f"images {images!r} are not a bijection of 0..{len(images) - 1}")
        return tuple.__new__(cls, images)

    @classmethod
    def _raw(cls, images) -> "Permutation":
        return tuple.__new__(cls, images)

    @classmethod
    def identity(cls, degree: int) -> "Permutation":
        return cls._raw(range(degree))

    @classmethod
    def from_cycles(cls, degree: int, cycles: Iterable[Sequence[int]]) -> "Permutation":
        images = list(range(degree))
        seen: set[int] = set()
        for cyc in cycles:
            cyc = [int(c) for c in cyc]
            for c in cyc:
                if not 0 <= c < degree:
                    raise InputError(f"point {c} outside 0..{degree - 1}")
                if c in seen:
                    raise InputError(f"point {c} occurs twice in the cycle list")
                seen.add(c)
            for a, b in zip(cyc, cyc[1:] + cyc[:1]):
                images[a] = b
        return cls._raw(images)

    @property
    def degree(self) -> int:
        return len(self)

    @property
    def images(self) -> tuple[int, ...]:
        return tuple(self)

    def __call__(self, point: int) -> int:
        return self[point]

    def __mul__(self, other):
        if len(other) != len(self):
            raise InputError("degree mismatch in product")
        return Permutation._raw(_mul(self, other))

    def __rmul__(self, other):
        return NotImplemented

    def __pow__(self, k: int) -> "Permutation":
        return Permutation._raw(_pow(self, k))

    def __invert__(self) -> "Permutation":
        return self.inverse()

    def inverse(self) -> "Permutation":
        return Permutation._raw(_inv(self))

    def conjugate(self, g) -> "Permutation":
        return Permutation._raw(_conj(self, g))

    def is_identity(self) -> bool:
        return _is_id(self)

    def order(self) -> int:
        return _perm_order(self)

    def cycles(self) -> list[tuple[int, ...]]:
        seen = set()
        out = []
        for i in range(len(self)):
            if i in seen or self[i] == i:
                continue
            cyc = [i]
            seen.add(i)
            j = self[i]
            while j != i:
                cyc.append(j)
                seen.add(j)
                j = self[j]
            out.append(tuple(cyc))
        return out

    def __str__(self) -> str:
        cyc = self.cycles()
        if not cyc:
            return "()"
        return "".join("(" + ",".join(map(str, c)) + ")" for c in cyc)

    def __repr__(self) -> str:
        return f"Permutation[{len(self)}]{self}"


def _as_raw(p, degree: int):
    if len(p) != degree:
        raise InputError(f"permutation of degree {len(p)} where degree {degree} was expected")
    if not isinstance(p, Permutation):
        p = Permutation(p)
    return tuple(p)


# ---------------------------------------------------------------------------
# stabilizer chain

class _Level:
    __slots__ = ("point", "gens", "trans", "inv", "checked")

    def __init__(self, point: int, ident):
        self.point = point
        self.gens: list = []
        self.trans = {point: ident}
        self.inv = {point: ident}
        self.checked: set = set()

    def extend_orbit(self) -> None:
        trans, inv, gens = self.trans, self.inv, self.gens
        queue = deque(trans)
        while queue:
            beta = queue.popleft()
            u = trans[beta]
            for s in gens:
                gamma = s[beta]
                if gamma not in trans:
                    w = _mul(u, s)
                    trans[gamma] = w
                    inv[gamma] = _inv(w)
                    queue.append(gamma)


class _Chain:
    """Incremental deterministic Schreier-Sims (Holt's formulation).

    ``prefix`` forces the first base points; ``point_order`` ranks the points
    considered when a new base point must be chosen.
    """

    def __init__(self, degree: int, prefix: Sequence[int] = (), point_order: Sequence[int] | None = None):
        self.degree = degree
        self.ident = tuple(range(degree))
        self.levels: list[_Level] = [_Level(b, self.ident) for b in prefix]
        self.point_order = list(point_order) if point_order is not None else None

    def copy(self) -> "_Chain":
        c = _Chain.__new__(_Chain)
        c.degree = self.degree
        c.ident = self.ident
        c.point_order = self.point_order
        c.levels = []
        for lev in self.levels:
            n = _Level.__new__(_Level)
            n.point = lev.point
            n.gens = list(lev.gens)
            n.trans = dict(lev.trans)
            n.inv = dict(lev.inv)
            n.checked = set(lev.checked)
            c.levels.append(n)
        return c

    def _new_point(self, y) -> int:
        used = {lev.point for lev in self.levels}
        order = self.point_order if self.point_order is not None else range(self.degree)
        for x in order:
            if y[x] != x and x not in used:
                return x
        raise InvariantError("no base point available for a non-identity element")

    def sift(self, g, start: int = 0):
        levels = self.levels
        for j in range(start, len(levels)):
            lev = levels[j]
            beta = g[lev.point]
            inv = lev.inv.get(beta)
            if inv is None:
                return g, j
            if beta != lev.point:
                g = _mul(g, inv)
        return g, len(levels)

    def contains(self, g) -> bool:
        y, j = self.sift(g)
        return j == len(self.levels) and y == self.ident

    def add_generator(self, g) -> bool:
        """Add g; return True iff the group grew."""
        y, j = self.sift(g)
        if j == len(self.levels) and y == self.ident:
            return False
        # the residue y differs from g by an element already in the group and
        # fixes the first j base points, so it may join levels 0..j
        if j == len(self.levels):
            self.levels.append(_Level(self._new_point(y), self.ident))
        for lev in self.levels[: j + 1]:
            lev.gens.append(y)
            lev.extend_orbit()
        self._complete(j)
        return True

    def _complete(self, i: int) -> None:
        levels = self.levels
        ident = self.ident
        while i >= 0:
            lev = levels[i]
            found = False
            for beta in list(lev.trans):
                u = lev.trans[beta]
                for gi, s in enumerate(lev.gens):
                    key = (beta, gi)
                    if key in lev.checked:
                        continue
                    lev.checked.add(key)
                    h = _mul(_mul(u, s), lev.inv[s[beta]])
                    if h == ident:
                        continue
                    y, j = self.sift(h, i + 1)
                    if j < len(levels) or y != ident:
                        if j == len(levels):
                            levels.append(_Level(self._new_point(y), ident))
                        for l in range(i + 1, j + 1):
                            levels[l].gens.append(y)
                            levels[l].extend_orbit()
                        i = j
                        found = True
                        break
                if found:
                    break
            if not found:
                i -= 1

    def order(self) -> int:
        return math.prod(len(lev.trans) for lev in self.levels)


# ---------------------------------------------------------------------------

class PermGroup:
    """A permutation group with a verified base and strong generating set.

    Immutable after construction.  ``marks`` holds named subgroups attached by
    the constructors (base group of a wreath product, socle of a monolithic
    group, ...).
    """

    def __init__(self, degree: int, generators: Iterable = (), *, prefix: Sequence[int] = (),
                 point_order: Sequence[int] | None = None, budgets: Budgets = DEFAULT_BUDGETS,
                 marks: dict | None = None):
        if degree < 1:
            raise InputError("degree must be positive")
        if degree > budgets.degree:
            raise ResourceError(f"degree {degree} exceeds the budget {budgets.degree}")
        gens = [_as_raw(g, degree) for g in generators]
        chain = _Chain(degree, prefix, point_order)
        for g in gens:
            if g != chain.ident:
                chain.add_generator(g)
        self._init(degree, gens, chain, marks)

    def _init(self, degree, gens, chain, marks=None):
        self.degree = degree
        self.generators = tuple(Permutation._raw(g) for g in gens)
        self._chain = chain
        self._strip_trivial_levels()
        self.order = chain.order()
        self.marks = dict(marks or {})

    def _strip_trivial_levels(self):
        # forced prefix points with trivial basic orbits carry no information
        self._levels = [lev for lev in self._chain.levels if len(lev.trans) > 1]

    @classmethod
    def _from_chain(cls, degree: int, gens, chain: _Chain, marks=None) -> "PermGroup":
        obj = cls.__new__(cls)
        obj._init(degree, [tuple(g) for g in gens], chain, marks)
        return obj

    # -- basic data -------------------------------------------------------
    @property
    def base(self) -> list[int]:
        return [lev.point for lev in self._levels]

    @property
    def strong_generators(self) -> list[Permutation]:
        seen = []
        for lev in self._levels:
            for g in lev.gens:
                if g not in seen:
                    seen.append(g)
        return [Permutation._raw(g) for g in seen]

    @property
    def transversals(self) -> list[dict[int, Permutation]]:
        return [{b: Permutation._raw(u) for b, u in lev.trans.items()} for lev in self._levels]

    @property
    def basic_orbit_sizes(self) -> list[int]:
        return [len(lev.trans) for lev in self._levels]

    @property
    def identity(self) -> Permutation:
        return Permutation.identity(self.degree)

    def __len__(self) -> int:  # pragma: no cover - order may exceed sys.maxsize
        return self.order

    def __repr__(self) -> str:
        return f"<PermGroup degree={self.degree} order={self.order} gens={len(self.generators)}>"

    # -- membership ---------------------------------------------------------
    def sift(self, g):
        """Residue of g and the level where sifting stopped."""
        levels = self._levels
        for j, lev in enumerate(levels):
            beta = g[lev.point]
            inv = lev.inv.get(beta)
            if inv is None:
                return g, j
            if beta != lev.point:
                g = _mul(g, inv)
        return g, len(levels)

    def __contains__(self, g) -> bool:
        if len(g) != self.degree:
            raise InputError(f"degree mismatch: element of degree {len(g)} tested in degree {self.degree}")
        y, _ = self.sift(tuple(g))
        return _is_id(y)

    contains = __contains__

    def coset_rep(self, g):
        """Canonical representative of the coset self * g = {h * g : h in self}."""
        g = tuple(g)
        for lev in self._levels:
            best = None
            best_img = None
            for delta, u in lev.trans.items():
                img = g[delta]
                if best_img is None or img < best_img:
                    best_img, best = img, u
            if best is not None and best_img != g[lev.point]:
                g = _mul(best, g)
        return g

    @cached_property
    def _coset_tables(self) -> list:
        return [(np.array(list(lev.trans), dtype=np.int64),
                 np.array(list(lev.trans.values()), dtype=np.int64)) for lev in self._levels]

    def coset_reps_array(self, X: np.ndarray) -> np.ndarray:
        """Row-wise coset_rep for a 2-d array of permutations."""
        X = np.asarray(X, dtype=np.int64)
        if X.shape[0] == 0:
            return X
        for deltas, us in self._coset_tables:
            best = np.argmin(X[:, deltas], axis=1)
            X = np.take_along_axis(X, us[best], axis=1)
        return X

    # -- elements -----------------------------------------------------------
    def random_element(self, rng: random.Random | int | None = None) -> Permutation:
        if not isinstance(rng, random.Random):
            rng = random.Random(rng)
        g = tuple(range(self.degree))
        for lev in self._levels:
            u = lev.trans[rng.choice(list(lev.trans))]
            g = _mul(u, g)
        return Permutation._raw(g)

    def elements(self) -> Iterator[Permutation]:
        """All elements, in sifting order (lexicographic in transversal indices)."""
        levels = self._levels
        ident = tuple(range(self.degree))

        # every element is uniquely u_k * ... * u_0 with u_i from level i
        def rec(i, acc):
            if i == len(levels):
                yield Permutation._raw(acc)
                return
            for u in levels[i].trans.values():
                yield from rec(i + 1, _mul(u, acc))

        yield from rec(0, ident)

    def orbit(self, point: int) -> list[int]:
        seen = {point}
        queue = deque([point])
        while queue:
            x = queue.popleft()
            for g in self.generators:
                y = g[x]
                if y not in seen:
                    seen.add(y)
                    queue.append(y)
        return sorted(seen)

    # -- subgroup relations -----------------------------------------------------
    def subgroup(self, gens: Iterable) -> "PermGroup":
        gens = list(gens)
        for g in gens:
            if g not in self:
                raise InputError("subgroup generator not in the group")
        return PermGroup(self.degree, gens)

    def is_subgroup_of(self, other: "PermGroup") -> bool:
        return self.degree == other.degree and all(g in other for g in self.generators)

    def is_normal_in(self, other: "PermGroup") -> bool:
        if not self.is_subgroup_of(other):
            return False
        return all(_conj(h, g) in self for h in self.generators for g in other.generators)

    def is_abelian(self) -> bool:
        gens = self.generators
        return all(_mul(a, b) == _mul(b, a) for a, b in itertools.combinations(gens, 2))

    def is_trivial(self) -> bool:
        return self.order == 1

    def equals(self, other: "PermGroup") -> bool:
        return self.degree == other.degree and self.order == other.order and self.is_subgroup_of(other)

    def __eq__(self, other) -> bool:
        if not isinstance(other, PermGroup):
            return NotImplemented
        return self.equals(other)

    def __hash__(self) -> int:
        return hash((self.degree, self.order))

    def rebuilt(self, seed: int) -> "PermGroup":
        """Same group, BSGS recomputed with a randomly ordered base."""
        rng = random.Random(seed)
        order = list(range(self.degree))
        rng.shuffle(order)
        gens = list(self.generators)
        rng.shuffle(gens)
        return PermGroup(self.degree, gens, point_order=order)

    def extended(self, gens: Iterable) -> "PermGroup":
        """Group generated by self and `gens` (incremental on the existing chain)."""
        chain = self._chain.copy()
        allgens = list(self.generators)
        for g in gens:
            g = _as_raw(g, self.degree)
            if chain.add_generator(g):
                allgens.append(g)
        return PermGroup._from_chain(self.degree, allgens, chain)


# ---------------------------------------------------------------------------
# operations

def group_from_generators(degree: int, gens: Iterable, budgets: Budgets = DEFAULT_BUDGETS) -> PermGroup:
    return PermGroup(degree, gens, budgets=budgets)


def contains(G: PermGroup, p) -> bool:
    return p in G


def random_element(G: PermGroup, seed: int) -> Permutation:
    return G.random_element(seed)


def trivial_group(degree: int = 1) -> PermGroup:
    return PermGroup(degree, [])


def _shift(p, offset: int, degree: int):
    out = list(range(degree))
    for i, x in enumerate(p):
        out[i + offset] = x + offset
    return tuple(out)


def direct_product(A: PermGroup, B: PermGroup) -> PermGroup:
    n = A.degree + B.degree
    left = [_shift(g, 0, n) for g in A.generators]
    right = [_shift(g, A.degree, n) for g in B.generators]
    G = PermGroup(n, left + right)
    if G.order != A.order * B.order:
        raise InvariantError("direct product order mismatch")
    G.marks["left"] = PermGroup(n, left)
    G.marks["right"] = PermGroup(n, right)
    return G


def wreath_product(E: PermGroup, t: int) -> PermGroup:
    """Imprimitive wreath product E wr Sym_t on t blocks of size deg(E)."""
    if t < 2:
        raise InputError("wreath product needs t >= 2")
    k = E.degree
    n = k * t
    base_gens = [_shift(g, i * k, n) for i in range(t) for g in E.generators]

    def block_perm(sigma):
        out = [0] * n
        for i in range(t):
            for x in range(k):
                out[i * k + x] = sigma[i] * k + x
        return tuple(out)

    swap = list(range(t))
    swap[0], swap[1] = 1, 0
    cyc = [(i + 1) % t for i in range(t)]
    top = [block_perm(swap)] + ([block_perm(cyc)] if t > 2 else [])
    G = PermGroup(n, [_shift(g, 0, n) for g in E.generators] + top)
    expected = E.order ** t * math.factorial(t)
    if G.order != expected:
        raise InvariantError(f"wreath order {G.order} != {expected}")
    G.marks["base"] = PermGroup(n, base_gens)
    G.marks["top"] = PermGroup(n, top)
    G.marks["block_size"] = k
    return G


def _vec_index(v, p):
    return sum(int(c) * p**i for i, c in enumerate(v))


def _index_vec(x, p, m):
    out = []
    for _ in range(m):
        out.append(x % p)
        x //= p
    return out


def affine_group(p: int, m: int, matrices: Sequence, budgets: Budgets = DEFAULT_BUDGETS) -> PermGroup:
    """A semidirect Q on the p^m vectors of F_p^m (row vectors, v -> v M).

    Q is generated by the given matrices; the translations by the standard
    basis generate the normal subgroup marked ``socle``.
    """
    if p < 2 or any(p % q == 0 for q in range(2, int(math.isqrt(p)) + 1)):
        raise InputError(f"{p} is not prime")
    if m < 1:
        raise InputError("dimension must be positive")
    n = p**m
    if n > budgets.degree:
        raise ResourceError(f"affine degree {n} exceeds the budget {budgets.degree}")
    vecs = [np.array(_index_vec(x, p, m), dtype=np.int64) for x in range(n)]
    gens = []
    for i in range(m):
        e = np.zeros(m, dtype=np.int64)
        e[i] = 1
        gens.append(tuple(_vec_index((v + e) % p, p) for v in vecs))
    translations = list(gens)
    linear = []
    for M in matrices:
        M = np.asarray(M, dtype=np.int64) % p
        if M.shape != (m, m):
            raise InputError(f"matrix of shape {M.shape}, expected {(m, m)}")
        if not gf.det_nonzero(M, p):
            raise InputError(f"singular matrix {M.tolist()} mod {p}")
        img = tuple(_vec_index((v @ M) % p, p) for v in vecs)
        linear.append(img)
    G = PermGroup(n, gens + linear, budgets=budgets)
    G.marks["socle"] = PermGroup(n, translations)
    G.marks["complement"] = PermGroup(n, linear)
    if G.order != n * G.marks["complement"].order:
        raise InvariantError("affine group order mismatch")
    return G


def linear_group(p: int, m: int, matrices: Sequence, budgets: Budgets = DEFAULT_BUDGETS) -> PermGroup:
    """The matrix group generated by `matrices`, acting on the p^m - 1 nonzero vectors."""
    A = affine_group(p, m, matrices, budgets)
    n = p**m
    # drop the zero vector (point 0), which every linear map fixes
    gens = [tuple(x - 1 for x in g[1:]) for g in A.marks["complement"].generators]
    if n - 1 < 1:
        raise InputError("empty vector set")
    return PermGroup(n - 1, gens, budgets=budgets)


# ---------------------------------------------------------------------------

class Homomorphism:
    """Homomorphism from a permutation group, given by the images of its
    generators in Sym(target_degree).  Kernel and image are computed lazily."""

    def __init__(self, source: PermGroup, target_degree: int, images: Sequence, budgets: Budgets = DEFAULT_BUDGETS):
        if len(images) != len(source.generators):
            raise InputError("one image per source generator is required")
        self.source = source
        self.target_degree = target_degree
        self.images_of_generators = tuple(Permutation._raw(_as_raw(x, target_degree)) for x in images)
        self.budgets = budgets

    def _graph_gens(self):
        n = self.source.degree
        t = self.target_degree
        out = []
        for g, x in zip(self.source.generators, self.images_of_generators):
            out.append(tuple(g) + tuple(n + y for y in x))
        return out

    @cached_property
    def _target_first(self) -> _Chain:
        n, t = self.source.degree, self.target_degree
        if t > self.budgets.kernel_index:
            raise ResourceError(f"kernel computation on {t} points exceeds the budget {self.budgets.kernel_index}")
        moved = sorted({n + i for x in self.images_of_generators for i in range(t) if x[i] != i})
        chain = _Chain(n + t, prefix=moved)
        for g in self._graph_gens():
            chain.add_generator(g)
        if chain.order() != self.source.order:
            raise InputError("generator images do not extend to a homomorphism")
        return chain

    @cached_property
    def _source_first(self) -> _Chain:
        n, t = self.source.degree, self.target_degree
        chain = _Chain(n + t, prefix=[lev.point for lev in self.source._levels])
        for g in self._graph_gens():
            chain.add_generator(g)
        if chain.order() != self.source.order:
            raise InputError("generator images do not extend to a homomorphism")
        return chain

    @cached_property
    def image(self) -> PermGroup:
        return PermGroup(self.target_degree, self.images_of_generators, budgets=self.budgets)

    @cached_property
    def kernel(self) -> PermGroup:
        chain = self._target_first
        n = self.source.degree
        nprefix = len({n + i for x in self.images_of_generators for i in range(self.target_degree) if x[i] != i})
        gens = []
        if nprefix < len(chain.levels):
            gens = [g[:n] for g in chain.levels[nprefix].gens]
        K = PermGroup(n, gens)
        if K.order * self.image.order != self.source.order:
            raise InvariantError("|source| != |kernel| * |image|")
        return K

    def __call__(self, g) -> Permutation:
        """Image of an arbitrary element of the source."""
        n = self.source.degree
        g = _as_raw(g, n)
        chain = self._source_first
        h = g + tuple(range(n, n + self.target_degree))
        word = []
        for lev in chain.levels:
            if lev.point >= n:
                break
            beta = h[lev.point]
            if beta not in lev.trans:
                raise InputError("element is not in the source group")
            if beta != lev.point:
                word.append(lev.trans[beta])
                h = _mul(h, lev.inv[beta])
        if not _is_id(h[:n]):
            raise InputError("element is not in the source group")
        # g = residue * u_k * ... * u_1 and the residue fixes every source point
        acc = chain.ident
        for u in reversed(word):
            acc = _mul(acc, u)
        return Permutation._raw(tuple(x - n for x in acc[n:]))

    def lift(self, x):
        """Some preimage in the source of an element of the image."""
        n, t = self.source.degree, self.target_degree
        x = _as_raw(x, t)
        chain = self._target_first
        h = tuple(range(n)) + tuple(n + y for y in x)
        word = []
        for lev in chain.levels:
            if lev.point < n:
                break
            beta = h[lev.point]
            if beta not in lev.trans:
                raise InputError("element is not in the image")
            if beta != lev.point:
                word.append(lev.trans[beta])
                h = _mul(h, lev.inv[beta])
        if h[n:] != tuple(range(n, n + t)):
            raise InputError("element is not in the image")
        acc = chain.ident
        for u in reversed(word):
            acc = _mul(acc, u)
        return Permutation._raw(acc[:n])

    def preimage(self, S: PermGroup) -> PermGroup:
        if S.degree != self.target_degree:
            raise InputError("subgroup lives on the wrong number of points")
        lifts = [self.lift(s) for s in S.generators]
        return self.kernel.extended(lifts) if lifts else self.kernel


def coset_action(G: PermGroup, H: PermGroup, budgets: Budgets = DEFAULT_BUDGETS) -> Homomorphism:
    """Action of G by right multiplication on the right cosets H*g."""
    if not H.is_subgroup_of(G):
        raise InputError("H is not a subgroup of G")
    index = G.order // H.order
    if index > budgets.coset_index:
        raise ResourceError(f"index {index} exceeds the coset budget {budgets.coset_index}")
    ident = tuple(range(G.degree))
    start = H.coset_rep(ident)
    pos = {start: 0}
    reps = [start]
    queue = deque([start])
    while queue:
        r = queue.popleft()
        for g in G.generators:
            k = H.coset_rep(_mul(r, g))
            if k not in pos:
                pos[k] = len(reps)
                reps.append(k)
                queue.append(k)
    if len(reps) != index:
        raise InvariantError("coset enumeration disagrees with the index")
    images = []
    for g in G.generators:
        images.append(tuple(pos[H.coset_rep(_mul(r, g))] for r in reps))
    hom = Homomorphism(G, index, images, budgets)
    hom.coset_reps = [Permutation._raw(r) for r in reps]
    return hom


# ---------------------------------------------------------------------------
# standard groups

def symmetric_group(n: int) -> PermGroup:
    if n < 1:
        raise InputError("Sym needs n >= 1")
    if n == 1:
        return PermGroup(1, [])
    gens = [Permutation.from_cycles(n, [(0, 1)])]
    if n > 2:
        gens.append(Permutation.from_cycles(n, [tuple(range(n))]))
    return PermGroup(n, gens)


def alternating_group(n: int) -> PermGroup:
    if n < 3:
        raise InputError("Alt needs n >= 3")
    gens = [Permutation.from_cycles(n, [(i, i + 1, i + 2)]) for i in range(n - 2)]
    return PermGroup(n, gens)


def cyclic_group(n: int) -> PermGroup:
    if n < 1:
        raise InputError("Cyc needs n >= 1")
    return PermGroup(n, [Permutation.from_cycles(n, [tuple(range(n))])] if n > 1 else [])


def dihedral_group(n: int) -> PermGroup:
    """Dihedral group of order 2n (symmetries of an n-gon; regular for n <= 2)."""
    if n < 1:
        raise InputError("Dih needs n >= 1")
    if n == 1:
        return cyclic_group(2)
    if n == 2:
        return PermGroup(4, [Permutation.from_cycles(4, [(0, 1), (2, 3)]),
                             Permutation.from_cycles(4, [(0, 2), (1, 3)])])
    rot = Permutation.from_cycles(n, [tuple(range(n))])
    refl = Permutation([(-i) % n for i in range(n)])
    return PermGroup(n, [rot, refl])


def quaternion_group() -> PermGroup:
    """Q_8 in its regular representation on 8 points."""
    # elements 1,i,j,k,-1,-i,-j,-k -> 0..7, acting by right multiplication
    table = {
        ("1", "i"): "i", ("i", "i"): "-1", ("j", "i"): "-k", ("k", "i"): "j",
        ("1", "j"): "j", ("i", "j"): "k", ("j", "j"): "-1", ("k", "j"): "-i",
    }
    names = ["1", "i", "j", "k"]

    def right_mult(unit):
        out = [0] * 8
        for idx in range(8):
            sign = idx >= 4
            base = names[idx % 4]
            prod = table[(base, unit)]
            neg = prod.startswith("-")
            b = prod.lstrip("-")
            res = names.index(b) + (4 if neg != sign else 0)
            out[idx] = res
        return Permutation(out)

    return PermGroup(8, [right_mult("i"), right_mult("j")])
