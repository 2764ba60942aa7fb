"""Dense linear algebra over a prime field F_p, on numpy integer arrays."""

from __future__ import annotations

import numpy as np


def as_array(a, p: int) -> np.ndarray:
    return np.asarray(a, dtype=np.int64) % p


def rref(a, p: int) -> tuple[np.ndarray, list[int]]:
    """Reduced row echelon form of `a` mod p and the list of pivot columns."""
    a = as_array(a, p).copy()
    if a.ndim != 2:
        raise ValueError("expected a matrix")
    rows, cols = a.shape
    pivots: list[int] = []
    r = 0
    for c in range(cols):
        if r == rows:
            break
        nz = np.nonzero(a[r:, c])[0]
        if nz.size == 0:
            continue
        k = r + int(nz[0])
        if k != r:
            a[[r, k]] = a[[k, r]]
        a[r] = (a[r] * pow(int(a[r, c]), -1, p)) % p
        col = a[:, c].copy()
        col[r] = 0
        if col.any():
            a = (a - np.outer(col, a[r])) % p
        pivots.append(c)
        r += 1
    return a, pivots


def rank(a, p: int) -> int:
    a = np.asarray(a)
    if a.size == 0:
        return 0
    return len(rref(a, p)[1])


def nullspace(a, p: int) -> np.ndarray:
    """Basis (as rows) of {x : a @ x = 0 mod p}."""
    a = np.asarray(a, dtype=np.int64)
    n = a.shape[1]
    if a.shape[0] == 0:
        return np.eye(n, dtype=np.int64)
    r, pivots = rref(a, p)
    free = [c for c in range(n) if c not in set(pivots)]
    basis = np.zeros((len(free), n), dtype=np.int64)
    for i, f in enumerate(free):
        basis[i, f] = 1
        for row, pc in enumerate(pivots):
            basis[i, pc] = (-r[row, f]) % p
    return basis


def solve(a, b, p: int) -> np.ndarray | None:
    """One solution x of a @ x = b mod p, or None if the system is inconsistent."""
    a = np.asarray(a, dtype=np.int64)
    b = np.asarray(b, dtype=np.int64).reshape(-1, 1)
    n = a.shape[1]
    r, pivots = rref(np.hstack([a, b]), p)
    if n in pivots:
        return None
    x = np.zeros(n, dtype=np.int64)
    for row, pc in enumerate(pivots):
        x[pc] = r[row, n]
    return x


def det_nonzero(a, p: int) -> bool:
    a = np.asarray(a)
    return a.shape[0] == a.shape[1] and rank(a, p) == a.shape[0]


def inverse(a, p: int) -> np.ndarray:
    a = np.asarray(a, dtype=np.int64)
    n = a.shape[0]
    r, pivots = rref(np.hstack([a, np.eye(n, dtype=np.int64)]), p)
    if pivots[:n] != list(range(n)):
        raise ValueError("singular matrix")
    return r[:, n:]


def mat_order(a, p: int, limit: int = 10**6) -> int:
    """Multiplicative order of an invertible matrix."""
    a = as_array(a, p)
    ident = np.eye(a.shape[0], dtype=np.int64)
    x = a.copy()
    k = 1
    while not np.array_equal(x, ident):
        x = (x @ a) % p
        k += 1
        if k > limit:
            raise ValueError("matrix order exceeds limit (singular?)")
    return k


class RowReducer:
    """Accumulates linear equations (rows of [A | b]) in batches.

    Keeps only a reduced basis, so arbitrarily many equations can be streamed
    through with memory bounded by the number of unknowns.
    """

    def __init__(self, nvars: int, p: int, batch: int = 4096):
        self.nvars = nvars
        self.p = p
        self.batch = batch
        self._basis = np.zeros((0, nvars + 1), dtype=np.int64)
        self._pending: list[np.ndarray] = []
        self._pending_rows = 0

    def add(self, rows: np.ndarray) -> None:
        rows = np.asarray(rows, dtype=np.int64) % self.p
        if rows.ndim == 1:
            rows = rows.reshape(1, -1)
        keep = rows.any(axis=1)
        if not keep.any():
            return
        rows = rows[keep]
        self._pending.append(rows)
        self._pending_rows += rows.shape[0]
        if self._pending_rows >= self.batch:
            self._flush()

    def _flush(self) -> None:
        if not self._pending:
            return
        stack = np.vstack([self._basis] + self._pending)
        r, piv = rref(stack, self.p)
        self._basis = r[: len(piv)]
        self._pending = []
        self._pending_rows = 0

    def inconsistent_seen(self) -> bool:
        """True once the reduced basis already contains a contradiction."""
        return any(not row[: self.nvars].any() and row[self.nvars] for row in self._basis)

    def consistent(self) -> bool:
        self._flush()
        return not any(row[: self.nvars].sum() == 0 and row[self.nvars] != 0 for row in self._basis)

    def rank(self) -> int:
        self._flush()
        return int(sum(1 for row in self._basis if row[: self.nvars].any()))

    def solution(self) -> np.ndarray | None:
        self._flush()
        if not self.consistent():
            return None
        x = np.zeros(self.nvars, dtype=np.int64)
        for row in self._basis:
            nz = np.nonzero(row[: self.nvars])[0]
            if nz.size:
                x[nz[0]] = row[self.nvars]
        return x
