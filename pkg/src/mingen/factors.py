"""Chief factors: abelian/nonabelian classification, action matrices,
complement (Frattini) tests, first cohomology and G-equivalence.

Abelian factors are treated as row-vector modules: an element g of the
ambient group acts by v -> v @ action[g], so the matrix of a product is the
product of the matrices in the same order.
"""

from __future__ import annotations

import itertools
import math
import random
from collections import deque
from dataclasses import dataclass, field
from functools import cached_property

import numpy as np

from . import gf
from .config import DEFAULT_BUDGETS, Budgets
from .errors import InputError, InvariantError, ResourceError
from .perm import Homomorphism, PermGroup, Permutation, _conj, _inv, _is_id, _mul, _perm_order, _pow
from .structure import (_require_normal, closure_under_conjugation, commutator, factor_action,
                        minimal_normal_below, prime_factors)

FRATTINI = "frattini"
NON_FRATTINI = "non_frattini"
UNKNOWN = "unknown"


def _prime_power(n: int):
    ps = prime_factors(n)
    if len(ps) != 1:
        return None
    p = ps[0]
    m = round(math.log(n, p))
    while p**m < n:
        m += 1
    while p**m > n:
        m -= 1
    return (p, m) if p**m == n else None


@dataclass(eq=False)
class ChiefFactor:
    """The section upper/lower of the ambient group."""

    ambient: PermGroup
    upper: PermGroup
    lower: PermGroup
    kind: str
    order: int
    p: int = 0
    m: int = 0
    basis: list = field(default_factory=list, repr=False)
    action: list = field(default_factory=list, repr=False)
    budgets: Budgets = field(default=DEFAULT_BUDGETS, repr=False)
    _coords: dict = field(default_factory=dict, repr=False)

    @property
    def is_abelian(self) -> bool:
        return self.kind == "abelian"

    def vector(self, x) -> np.ndarray:
        """Coordinates of an element of upper modulo lower."""
        key = self.lower.coset_rep(tuple(x))
        try:
            return np.array(self._coords[key], dtype=np.int64)
        except KeyError:
            raise InputError("element does not lie in the factor") from None

    @cached_property
    def _coord_table(self) -> dict:
        return {np.array(k, dtype=np.int64).tobytes(): v for k, v in self._coords.items()}

    def vectors(self, X) -> np.ndarray:
        """Coordinates of each row of a 2-d array of elements of upper."""
        keys = self.lower.coset_reps_array(X)
        table = self._coord_table
        try:
            return np.array([table[row.tobytes()] for row in keys], dtype=np.int64).reshape(-1, self.m)
        except KeyError:
            raise InputError("element does not lie in the factor") from None

    def element(self, v) -> tuple:
        """An element of upper whose image in the factor has coordinates v."""
        x = tuple(range(self.ambient.degree))
        for b, c in zip(self.basis, v):
            x = _mul(x, _pow(b, int(c) % self.p))
        return x

    def matrix_of(self, g) -> np.ndarray:
        """Action matrix of an arbitrary element g of the ambient group."""
        g = tuple(g)
        return np.array([self.vector(_conj(b, g)) for b in self.basis], dtype=np.int64).reshape(self.m, self.m)

    @cached_property
    def _action_hom(self) -> tuple[Homomorphism, list]:
        return factor_action(self.ambient, self.upper, self.lower, self.budgets)

    @cached_property
    def centralizer(self) -> PermGroup:
        return self._action_hom[0].kernel

    @property
    def is_central(self) -> bool:
        return self.centralizer.order == self.ambient.order

    @cached_property
    def frattini_flag(self) -> str:
        try:
            return FRATTINI if is_frattini(self) else NON_FRATTINI
        except ResourceError:
            return UNKNOWN

    def describe(self) -> str:
        if self.is_abelian:
            return f"{self.p}^{self.m}" if self.m > 1 else f"{self.p}"
        return f"nonabelian({self.order})"


def classify_factor(G: PermGroup, upper: PermGroup, lower: PermGroup,
                    budgets: Budgets = DEFAULT_BUDGETS) -> ChiefFactor:
    """Kind, basis and action matrices of the chief factor upper/lower."""
    if not lower.is_subgroup_of(upper) or lower.order == upper.order:
        raise InputError("need lower < upper")
    order = upper.order // lower.order
    ugens = [tuple(u) for u in upper.generators]
    abelian = all(commutator(a, b) in lower for a, b in itertools.combinations(ugens, 2))
    pm = _prime_power(order)
    if not abelian:
        if pm is not None:
            raise InvariantError("nonabelian factor of prime-power order is not characteristically simple")
        return ChiefFactor(G, upper, lower, "nonabelian", order, budgets=budgets)
    if pm is None:
        raise InvariantError(f"abelian factor of order {order} is not elementary abelian")
    p, m = pm
    if order > budgets.factor_order:
        raise ResourceError(f"factor of order {order} exceeds the budget {budgets.factor_order}")
    ident = tuple(range(G.degree))
    # span the factor one generator at a time; coordinates follow the basis order
    coords = {lower.coset_rep(ident): (0,) * 0}
    basis = []
    for u in ugens:
        if _pow(u, p) not in lower:
            raise InvariantError("factor is not elementary abelian")
        key = lower.coset_rep(u)
        if key in coords:
            continue
        j = len(basis)
        basis.append(u)
        new = {}
        for k, v in coords.items():
            x = k
            for c in range(p):
                new[lower.coset_rep(x)] = v + (c,)
                x = _mul(x, u)
        coords = new
    if len(basis) != m or len(coords) != order:
        raise InvariantError("basis of the factor has the wrong size")
    F = ChiefFactor(G, upper, lower, "abelian", order, p, m, basis, [], budgets, coords)
    F.action = [F.matrix_of(g) for g in G.generators]
    if not is_irreducible(F.action, p, m):
        raise InvariantError("abelian factor is not an irreducible module")
    return F


# ---------------------------------------------------------------------------
# linear algebra on modules

def _vec_key(v):
    return tuple(int(x) for x in v)


def is_irreducible(mats, p: int, m: int) -> bool:
    """No proper nonzero subspace is invariant under all of `mats`."""
    if m == 1:
        return True
    mats = [np.asarray(a, dtype=np.int64) % p for a in mats]
    covered = set()
    for idx in range(1, p**m):
        v = np.array([(idx // p**i) % p for i in range(m)], dtype=np.int64)
        if _vec_key(v) in covered:
            continue
        # spin v; a proper submodule shows up as a span of dimension < m
        span = [v]
        R, piv = gf.rref(np.array(span), p)
        queue = [v]
        while queue and len(piv) < m:
            w = queue.pop()
            for a in mats:
                z = (w @ a) % p
                if gf.rank(np.vstack([R[: len(piv)], z[None, :]]), p) > len(piv):
                    R, piv = gf.rref(np.vstack([R[: len(piv)], z[None, :]]), p)
                    queue.append(z)
        if len(piv) < m:
            return False
        # every vector in the orbit of v spins to the whole space as well
        orbit = [v]
        covered.add(_vec_key(v))
        while orbit:
            w = orbit.pop()
            for a in mats:
                z = (w @ a) % p
                k = _vec_key(z)
                if k not in covered:
                    covered.add(k)
                    orbit.append(z)
    return True


def intertwiners(mats1, mats2, p: int) -> np.ndarray:
    """Basis (as flattened rows) of {T : a1 @ T == T @ a2 for all pairs}."""
    mats1 = [np.asarray(a, dtype=np.int64) % p for a in mats1]
    mats2 = [np.asarray(a, dtype=np.int64) % p for a in mats2]
    m1 = mats1[0].shape[0] if mats1 else 0
    m2 = mats2[0].shape[0] if mats2 else 0
    if not mats1:
        return np.eye(m1 * m2, dtype=np.int64)
    I1 = np.eye(m1, dtype=np.int64)
    I2 = np.eye(m2, dtype=np.int64)
    # row-major vec: vec(A X B) = kron(A, B.T) vec(X)
    rows = [np.kron(a, I2) - np.kron(I1, b.T) for a, b in zip(mats1, mats2)]
    return gf.nullspace(np.vstack(rows) % p, p)


def fixed_space(mats, p: int, m: int) -> np.ndarray:
    if not mats:
        return np.eye(m, dtype=np.int64)
    I = np.eye(m, dtype=np.int64)
    rows = [((np.asarray(a) - I) % p).T for a in mats]
    return gf.nullspace(np.vstack(rows), p)


def fixed_subspace_dim(F: ChiefFactor) -> int:
    if not F.is_abelian:
        raise InputError("fixed points are defined for abelian factors only")
    return fixed_space(F.action, F.p, F.m).shape[0]


def endomorphism_field_degree(F: ChiefFactor) -> int:
    """log_p of the size of the endomorphism algebra, a field by Schur's lemma."""
    if not F.is_abelian:
        raise InputError("endomorphism field is defined for abelian factors only")
    basis = intertwiners(F.action, F.action, F.p)
    e = basis.shape[0]
    if e == 0 or F.m % e:
        raise InvariantError("module is not irreducible")
    return e


@dataclass
class ModuleIso:
    """v -> v @ matrix maps the source module onto the target module:
    action_source(g) @ matrix == matrix @ action_target(g)."""

    source: ChiefFactor
    target: ChiefFactor
    matrix: np.ndarray

    def verify(self) -> bool:
        p = self.source.p
        return all(np.array_equal((a @ self.matrix) % p, (self.matrix @ b) % p)
                   for a, b in zip(self.source.action, self.target.action))


def g_isomorphic(F1: ChiefFactor, F2: ChiefFactor, seed: int = 0) -> ModuleIso | None:
    if not (F1.is_abelian and F2.is_abelian):
        raise InputError("g_isomorphic needs abelian factors; use g_equivalent")
    if F1.ambient is not F2.ambient and not F1.ambient.equals(F2.ambient):
        raise InputError("factors of different groups")
    if (F1.p, F1.m) != (F2.p, F2.m):
        return None
    p, m = F1.p, F1.m
    basis = intertwiners(F1.action, F2.action, p)
    dim = basis.shape[0]
    if dim == 0:
        return None
    rng = random.Random(seed)
    candidates = [basis[i] for i in range(dim)]
    for _ in range(20):
        c = np.array([rng.randrange(p) for _ in range(dim)], dtype=np.int64)
        candidates.append((c @ basis) % p)
    if p**dim <= F1.budgets.intertwiner_scan:
        for c in itertools.product(range(p), repeat=dim):
            candidates.append((np.array(c, dtype=np.int64) @ basis) % p)
    for flat in candidates:
        T = flat.reshape(m, m)
        if gf.det_nonzero(T, p):
            iso = ModuleIso(F1, F2, T)
            if not iso.verify():
                raise InvariantError("intertwiner fails to intertwine")
            return iso
    return None


# ---------------------------------------------------------------------------
# complements and cohomology as linear systems

def quotient_generators(G: PermGroup, upper: PermGroup, seed: int = 0) -> list:
    """A short list of elements generating G modulo the normal subgroup upper.

    Tries random single elements and pairs first, then prunes G's own
    generators greedily.  Fewer generators mean fewer Cayley-graph edges.
    """
    target = G.order
    if upper.order == target:
        return []
    gens = [tuple(g) for g in G.generators]
    if target // upper.order <= 64 or len(gens) <= 2:
        return gens
    rng = random.Random(seed)
    for k, attempts in ((1, 4), (2, 16)):
        for _ in range(attempts):
            xs = [tuple(G.random_element(rng)) for _ in range(k)]
            if upper.extended(xs).order == target:
                return xs
    i = 0
    while i < len(gens):
        trial = gens[:i] + gens[i + 1:]
        if upper.extended(trial).order == target:
            gens = trial
        else:
            i += 1
    return gens


def _quotient_tree(G: PermGroup, upper: PermGroup, gens, budgets: Budgets):
    """Breadth-first spanning tree of the Cayley graph of G/upper on `gens`.

    Returns (trans, levels, loops).  trans[q] is a representative of coset q
    (one row per coset).  levels lists, depth by depth, the tree edges as
    (parents, generator, children) arrays; loops lists the remaining edges in
    the same format.
    """
    index = G.order // upper.order
    if index > budgets.quotient_order:
        raise ResourceError(f"quotient of order {index} exceeds the budget {budgets.quotient_order}")
    if index * G.degree > budgets.quotient_order * 512:
        raise ResourceError("coset table of the quotient is too large")
    garr = [np.array(x, dtype=np.int64) for x in gens]
    front_perm = np.arange(G.degree, dtype=np.int64)[None, :]
    pos = {upper.coset_reps_array(front_perm)[0].tobytes(): 0}
    frontier = np.zeros(1, dtype=np.int64)
    blocks = [front_perm]
    levels, loops = [], []
    while frontier.size:
        level, new_perm = [], []
        for i, x in enumerate(garr):
            Y = x[front_perm]
            K = upper.coset_reps_array(Y)
            q2 = np.empty(frontier.size, dtype=np.int64)
            fresh = np.zeros(frontier.size, dtype=bool)
            for r in range(frontier.size):
                k = K[r].tobytes()
                j = pos.get(k)
                if j is None:
                    j = pos[k] = len(pos)
                    fresh[r] = True
                    new_perm.append(Y[r])
                q2[r] = j
            level.append((frontier[fresh], i, q2[fresh]))
            loops.append((frontier[~fresh], i, q2[~fresh]))
        levels.append(level)
        start = frontier[-1] + 1 if frontier.size else 0
        frontier = np.arange(start, len(pos), dtype=np.int64)
        front_perm = np.array(new_perm, dtype=np.int64).reshape(-1, G.degree)
        blocks.append(front_perm)
    if len(pos) != index:
        raise InvariantError("quotient enumeration disagrees with the index")
    return np.vstack(blocks), levels, loops


def _edges_to_levels(nq: int, edges):
    """Group an edge list (q, i, q2, tree) by depth and generator."""
    depth = np.zeros(nq, dtype=np.int64)
    groups: dict = {}
    loop_groups: dict = {}
    for q, i, q2, tree in edges:
        if tree:
            depth[q2] = depth[q] + 1
            groups.setdefault((int(depth[q2]), i), []).append((q, q2))
        else:
            loop_groups.setdefault(i, []).append((q, q2))

    def pack(pairs, i):
        arr = np.array(pairs, dtype=np.int64).reshape(-1, 2)
        return arr[:, 0], i, arr[:, 1]

    top = max((d for d, _ in groups), default=0)
    levels = [[pack(groups[(d, i)], i) for (dd, i) in sorted(groups) if dd == d] for d in range(1, top + 1)]
    loops = [pack(pairs, i) for i, pairs in sorted(loop_groups.items())]
    return levels, loops


def _section_system(nq: int, m: int, p: int, levels, loops, mats, const=None, chunk: int = 8192):
    """Linear conditions for a section s(q x_i) = s(q) x_i m_i of a quotient.

    Unknown: mu in F_p^(ngens*m), mu_i the correction of generator i.  For
    every vertex q the correction alpha_q = mu @ T[q] is linear in mu.  Each
    non-tree edge contributes m equations; const(q, i, q2) returns the
    constant terms of a batch of edges (None means zero).
    """
    ngens = len(mats)
    nv = ngens * m
    mats = [np.asarray(a, dtype=np.int64) % p for a in mats]
    E = np.zeros((ngens, nv, m), dtype=np.int64)
    for i in range(ngens):
        E[i, i * m:(i + 1) * m, :] = np.eye(m, dtype=np.int64)
    T = np.zeros((nq, nv, m), dtype=np.int8 if p < 128 else np.int64)
    for level in levels:
        for q, i, q2 in level:
            if q.size:
                T[q2] = (T[q].astype(np.int64) @ mats[i] + E[i]) % p
    red = gf.RowReducer(nv, p, batch=max(4096, 4 * chunk))
    for q, i, q2 in loops:
        for s in range(0, q.size, chunk):
            qq, qq2 = q[s:s + chunk], q2[s:s + chunk]
            # step(mu) + c == T[q2](mu)
            lhs = (T[qq].astype(np.int64) @ mats[i] + E[i] - T[qq2]) % p
            rows = lhs.transpose(0, 2, 1).reshape(-1, nv)
            c = None if const is None else const(qq, i, qq2)
            rhs = np.zeros(rows.shape[0], dtype=np.int64) if c is None else (-c.reshape(-1)) % p
            red.add(np.hstack([rows, rhs[:, None]]))
            if red.inconsistent_seen():
                return red
    return red


def complement_system(F: ChiefFactor, gens=None):
    """The section system of F over a generating set of G modulo upper.

    Returns (reducer, gens).  The system is consistent iff F is complemented.
    """
    G = F.ambient
    if gens is None:
        gens = quotient_generators(G, F.upper)
    if not gens:
        return gf.RowReducer(0, F.p), gens
    trans, levels, loops = _quotient_tree(G, F.upper, gens, F.budgets)
    garr = [np.array(x, dtype=np.int64) for x in gens]
    mats = [F.matrix_of(x) for x in gens]

    def const(q, i, q2):
        Y = garr[i][trans[q]]
        Z = np.take_along_axis(Y, np.argsort(trans[q2], axis=1), axis=1)
        return F.vectors(Z)

    red = _section_system(len(trans), F.m, F.p, levels, loops, mats, const)
    return red, gens


def find_complement(F: ChiefFactor) -> PermGroup | None:
    """A subgroup U with U * upper = G and U ∩ upper = lower, or None."""
    if not F.is_abelian:
        raise InputError("complement search is for abelian factors")
    red, gens = complement_system(F)
    if not red.consistent():
        return None
    mu = red.solution()
    m = F.m
    witness = [_mul(x, F.element(mu[i * m:(i + 1) * m])) for i, x in enumerate(gens)]
    U = F.lower.extended(witness)
    check_complement(F, U)
    return U


def check_complement(F: ChiefFactor, U: PermGroup) -> None:
    """Assert the order and intersection conditions of a complement witness."""
    G = F.ambient
    if U.order * F.order != G.order or not F.lower.is_subgroup_of(U):
        raise InvariantError("complement witness has the wrong order")
    whole = U.extended(F.upper.generators)
    if whole.order != G.order:
        raise InvariantError("complement witness does not supplement the factor")
    # |U| |upper| / |U ∩ upper| = |G| and |U| |upper| / |lower| = |G|
    if U.order * F.upper.order != G.order * F.lower.order:
        raise InvariantError("complement witness meets the factor nontrivially")


def is_frattini(F: ChiefFactor) -> bool:
    """True iff the chief factor is Frattini, i.e. abelian and not complemented."""
    if not F.is_abelian:
        return False
    return find_complement(F) is None


def matrix_group_tree(mats, p: int, limit: int):
    """BFS spanning tree of the matrix group generated by `mats`."""
    m = mats[0].shape[0] if mats else 0
    ident = np.eye(m, dtype=np.int64)
    pos = {ident.tobytes(): 0}
    elems = [ident]
    edges = []
    queue = deque([0])
    while queue:
        q = queue.popleft()
        for i, a in enumerate(mats):
            y = (elems[q] @ a) % p
            k = y.tobytes()
            if k not in pos:
                if len(elems) >= limit:
                    raise ResourceError(f"matrix group larger than the budget {limit}")
                pos[k] = len(elems)
                elems.append(y)
                queue.append(pos[k])
                edges.append((q, i, pos[k], True))
            else:
                edges.append((q, i, pos[k], False))
    return elems, edges


def _distinct_matrices(mats, p):
    out, seen = [], set()
    m = mats[0].shape[0] if mats else 0
    ident = np.eye(m, dtype=np.int64).tobytes()
    for a in mats:
        a = np.asarray(a, dtype=np.int64) % p
        k = a.tobytes()
        if k not in seen and k != ident:
            seen.add(k)
            out.append(a)
    return out


def cocycle_dim(mats, p: int, m: int, budgets: Budgets = DEFAULT_BUDGETS) -> int:
    """dim Z^1(Q, V) for the matrix group Q = <mats> acting on V = F_p^m."""
    mats = _distinct_matrices(mats, p)
    if not mats:
        return 0
    elems, edges = matrix_group_tree(mats, p, budgets.quotient_order)
    levels, loops = _edges_to_levels(len(elems), edges)
    red = _section_system(len(elems), m, p, levels, loops, mats)
    return len(mats) * m - red.rank()


def h1_dim(mats, p: int, m: int, budgets: Budgets = DEFAULT_BUDGETS) -> int:
    """dim_{F_p} H^1(<mats>, F_p^m)."""
    z = cocycle_dim(mats, p, m, budgets)
    b = m - fixed_space(_distinct_matrices(mats, p), p, m).shape[0]
    if z < b:
        raise InvariantError("fewer cocycles than coboundaries")
    return z - b


# ---------------------------------------------------------------------------
# G-equivalence

def _socle_preimage(F: ChiefFactor) -> PermGroup:
    """upper * C_G(upper/lower)."""
    return F.centralizer.extended(F.upper.generators)


def nonabelian_monolith(F: ChiefFactor) -> tuple[PermGroup, PermGroup, Homomorphism]:
    """(L, socle of L, G -> L) with L = G/C_G(F) acting on the factor."""
    hom = F._action_hom[0]
    L = hom.image
    soc = PermGroup(L.degree, [hom(u) for u in F.upper.generators])
    return L, soc, hom


def _words_generate(images, L_order: int, degree: int) -> bool:
    return PermGroup(degree, images).order == L_order


def _extends_to_isomorphism(src_gens, dst_gens, order: int) -> bool:
    """Whether src_gens[i] -> dst_gens[i] extends to an isomorphism of groups of the given order."""
    ident = tuple(range(len(src_gens[0])))
    ident_d = tuple(range(len(dst_gens[0])))
    image = {ident: ident_d}
    queue = deque([ident])
    seen_dst = {ident_d}
    while queue:
        x = queue.popleft()
        y = image[x]
        for a, b in zip(src_gens, dst_gens):
            xa = _mul(x, a)
            yb = _mul(y, b)
            z = image.get(xa)
            if z is None:
                if yb in seen_dst:
                    return False
                image[xa] = yb
                seen_dst.add(yb)
                queue.append(xa)
            elif z != yb:
                return False
    return len(image) == order


def g_equivalent(F1: ChiefFactor, F2: ChiefFactor, seed: int = 0) -> bool:
    """G-equivalence of two chief factors of the same group."""
    if F1.is_abelian != F2.is_abelian:
        return False
    if F1.is_abelian:
        return g_isomorphic(F1, F2, seed) is not None
    if F1.order != F2.order:
        return False
    if F1.centralizer.equals(F2.centralizer):
        return True
    G = F1.ambient
    L1, soc1, pi1 = nonabelian_monolith(F1)
    L2, soc2, pi2 = nonabelian_monolith(F2)
    if L1.order != L2.order or not _socle_preimage(F1).equals(_socle_preimage(F2)):
        return False
    # generators x_k of G whose images generate L1; an isomorphism psi with
    # psi(pi1(g)) in pi2(g) soc2 is fixed by psi(pi1(x_k)) = pi2(x_k) s_k
    rng = random.Random(seed)
    xs = None
    for k in (1, 2, 3):
        for _ in range(200):
            cand = [tuple(G.random_element(rng)) for _ in range(k)]
            if _words_generate([pi1(x) for x in cand], L1.order, L1.degree):
                xs = cand
                break
        if xs:
            break
    if xs is None:
        xs = [tuple(g) for g in G.generators]
    src = [tuple(pi1(x)) for x in xs]
    base = [tuple(pi2(x)) for x in xs]
    soc_elems = [tuple(s) for s in soc2.elements()]
    if len(soc_elems) ** len(xs) > F1.budgets.complement_tuples:
        raise ResourceError("nonabelian equivalence search exceeds the tuple budget")
    orders = [_perm_order(a) for a in src]
    choices = []
    for b, o in zip(base, orders):
        choices.append([y for y in (_mul(b, s) for s in soc_elems) if _perm_order(y) == o])
    for tup in itertools.product(*choices):
        if _extends_to_isomorphism(src, list(tup), L1.order):
            return True
    return False
