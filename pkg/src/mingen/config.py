"""Size budgets.  All of them are configuration, none is a mathematical constant."""

from __future__ import annotations

from dataclasses import dataclass, replace


@dataclass(frozen=True)
class Budgets:
    degree: int = 10_000
    coset_index: int = 100_000
    # graph-group construction for kernels; index beyond this refuses
    kernel_index: int = 20_000
    # points of a factor action / elements of an enumerated chief factor
    factor_order: int = 500_000
    # elements of a quotient enumerated for the complement system
    quotient_order: int = 200_000
    # full element enumeration (conjugacy classes, minimal normal subgroups)
    enumerate_order: int = 10_000
    complement_tuples: int = 10**7
    intertwiner_scan: int = 10**6
    # d_brute: random tuples tried per k, and the largest |G| for the
    # exhaustive subgroup search that certifies a lower bound
    brute_tuples: int = 100_000
    exhaustive_order: int = 4096

    def with_(self, **kw) -> "Budgets":
        return replace(self, **kw)


DEFAULT_BUDGETS = Budgets()
