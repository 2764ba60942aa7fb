"""Chief factors of the subgroups H of E wr Sym_t built from a normal
subgroup F of E with E/F abelian:

    H = {(x_1, ..., x_t) sigma : x_i in E, x_1 x_2 ... x_t in F}.

The harness predicts the chief-factor orders of H section by section along
the normal series B_{F_i} (F_i running through a chief series of E up to F),
then H ∩ B_{K_j} (K_j from F up to E), then H, and compares them with a
chief series of H computed through that normal series.
"""

from __future__ import annotations

import json
import math
from importlib import resources
from pathlib import Path

from ..config import DEFAULT_BUDGETS, Budgets
from ..errors import InputError, InvariantError
from ..factors import FRATTINI
from ..perm import PermGroup, _inv, _shift, wreath_product
from ..structure import chief_series, closure_under_conjugation, derived_subgroup
from .expr import evaluate_text, parse_cycles_list


def bundled_instances_path() -> Path:
    return Path(str(resources.files("mingen.shell").joinpath("data/xlarge_instances.json")))


def load_instances(path=None) -> list[dict]:
    return json.loads(Path(path or bundled_instances_path()).read_text(encoding="utf-8"))


def _quotient_is_elementary_2(E: PermGroup, C: PermGroup) -> bool:
    if any(_sq(tuple(g)) not in C for g in E.generators):
        return False
    return derived_subgroup(E).is_subgroup_of(C)


def _sq(g):
    return tuple(g[x] for x in g)


def _top_orders(t: int) -> list[int]:
    if t == 2:
        return [2]
    if t == 3:
        return [3, 2]
    if t == 4:
        return [4, 3, 2]
    return [math.factorial(t) // 2, 2]


def build_extra_large(E: PermGroup, F: PermGroup, t: int) -> tuple[PermGroup, PermGroup]:
    """(H, W) with W = E wr Sym_t and H the subgroup with block product in F."""
    W = wreath_product(E, t)
    k, n = E.degree, E.degree * t
    gens = [_shift(f, 0, n) for f in F.generators]
    for e in E.generators:
        e = tuple(e)
        # e on block 0 and e^-1 on block 1
        x = list(range(n))
        ei = _inv(e)
        for i in range(k):
            x[i] = e[i]
            x[k + i] = k + ei[i]
        gens.append(tuple(x))
    gens += [tuple(g) for g in W.marks["top"].generators]
    H = PermGroup(n, gens)
    index = E.order // F.order
    if H.order * index != W.order:
        raise InvariantError(f"|H| = {H.order} but expected |W|/{index}")
    return H, W


def _blockwise(G: PermGroup, k: int, t: int) -> list:
    n = k * t
    return [_shift(g, i * k, n) for i in range(t) for g in G.generators]


def extra_large_check(E: PermGroup | str, F_gens, t: int, seed: int = 0,
                      budgets: Budgets = DEFAULT_BUDGETS) -> dict:
    """Compare predicted and computed chief-factor orders of the extra-large subgroup."""
    E_text = E if isinstance(E, str) else None
    if isinstance(E, str):
        E = evaluate_text(E, budgets)
    if isinstance(F_gens, str):
        F_gens = parse_cycles_list(F_gens, E.degree)
    if t < 2:
        raise InputError("t must be at least 2")
    F = PermGroup(E.degree, F_gens)
    if not F.is_subgroup_of(E) or not F.is_normal_in(E):
        raise InputError("F is not a normal subgroup of E")
    if not derived_subgroup(E).is_subgroup_of(F):
        raise InputError("E/F is not abelian")
    k = E.degree
    csE = chief_series(E, seed, through=[F], budgets=budgets)
    a = next(i for i, T in enumerate(csE.terms) if T.order == F.order)
    factorsE = csE.factors
    for i in range(a, csE.length):
        if factorsE[i].frattini_flag == FRATTINI:
            raise InputError("E/F has a Frattini chief factor")
    H, _ = build_extra_large(E, F, t)

    series = []
    sections = []
    for i in range(a):
        Fi = csE.terms[i + 1]
        series.append(PermGroup(k * t, _blockwise(Fi, k, t)))
        sections.append(_predict_lower(E, F, factorsE[i], t))
    BF = PermGroup(k * t, _blockwise(F, k, t))
    for j in range(a, csE.length):
        Kj = csE.terms[j + 1]
        extra = []
        for x in Kj.generators:
            x = tuple(x)
            y = list(range(k * t))
            xi = _inv(x)
            for i in range(k):
                y[i] = x[i]
                y[k + i] = k + xi[i]
            extra.append(tuple(y))
        N = closure_under_conjugation(H, BF, extra)
        want = F.order**t * (Kj.order // F.order) ** (t - 1)
        if N.order != want:
            raise InvariantError(f"H ∩ B_K has order {N.order}, expected {want}")
        series.append(N)
        sections.append(_predict_upper(factorsE[j], t))
    series.append(H)
    sections.append({"label": f"H/(H∩B) = Sym_{t}",
                     "predicted": [{"order": o, "frattini": None} for o in _top_orders(t)]})

    csH = chief_series(H, seed, through=series[:-1], budgets=budgets)
    factorsH = csH.factors
    bounds = [0]
    for T in series:
        bounds.append(next(i for i, X in enumerate(csH.terms) if X.order == T.order))
    all_match = True
    for s, sec in enumerate(sections):
        computed = [{"order": factorsH[i].order,
                     "frattini": factorsH[i].frattini_flag == FRATTINI}
                    for i in range(bounds[s], bounds[s + 1])]
        sec["computed"] = computed
        sec["match"] = _section_matches(sec, computed)
        all_match = all_match and sec["match"]
    return {
        "E": E_text, "E_order": E.order, "F_order": F.order, "t": t, "H_order": H.order,
        "chief_orders": csH.factor_orders, "sections": sections, "matched": all_match,
    }


def _section_matches(sec: dict, computed: list) -> bool:
    if "total" in sec:
        return (math.prod(c["order"] for c in computed) == sec["total"]
                and all(c["frattini"] == sec["all_frattini"] for c in computed))
    pred = sec["predicted"]
    if sorted(p["order"] for p in pred) != sorted(c["order"] for c in computed):
        return False
    pool = list(computed)
    for p in sorted(pred, key=lambda p: p["frattini"] is None):
        hit = next((c for c in pool if c["order"] == p["order"]
                    and (p["frattini"] is None or c["frattini"] == p["frattini"])), None)
        if hit is None:
            return False
        pool.remove(hit)
    return True


def _predict_lower(E: PermGroup, F: PermGroup, W, t: int) -> dict:
    """Prediction for B_{F_i}/B_{F_(i-1)}, W = F_i/F_(i-1) a chief factor of E inside F."""
    w = W.order
    label = f"B_W, W = {W.describe()}"
    if W.frattini_flag == FRATTINI:
        return {"label": label + " (Frattini in E)", "total": w**t, "all_frattini": True}
    central = W.is_abelian and W.is_central
    # blockwise F^t must act trivially, or W^t stays irreducible
    small_action = (W.is_abelian and t == 2
                    and F.is_subgroup_of(W.centralizer)
                    and _quotient_is_elementary_2(E, W.centralizer))
    if W.is_abelian and (central or small_action):
        p = W.p
        if t % p == 0:
            pred = [{"order": w, "frattini": True}]
            if t > 2:
                pred.append({"order": w ** (t - 2), "frattini": None})
            pred.append({"order": w, "frattini": None})
        else:
            pred = [{"order": w, "frattini": None}, {"order": w ** (t - 1), "frattini": None}]
        return {"label": label + " (diagonal and deleted parts)", "predicted": pred}
    return {"label": label + " (single factor)", "predicted": [{"order": w**t, "frattini": None}]}


def _predict_upper(W, t: int) -> dict:
    """Prediction for the deleted module of an order-p factor of E/F."""
    w = W.order
    label = f"deleted module over {W.describe()}"
    if t % W.p == 0:
        nontrivial = t > 2
        pred = [{"order": w, "frattini": True if nontrivial else None}]
        if nontrivial:
            pred.append({"order": w ** (t - 2), "frattini": None})
    else:
        pred = [{"order": w ** (t - 1), "frattini": None}]
    return {"label": label, "predicted": pred}
