"""Vectorized enumeration of rings over small prime fields.

Element order is lexicographic over coordinate tuples with F_p = {0..p-1},
so the element at index k has the base-p digits of k as coordinates
(most significant digit = coordinate 0).  Subspaces enumerate by
coefficient vectors with the *first* basis direction varying fastest, so
scalar multiples of the first basis vector come right after zero; scan
witnesses quote whichever order the scan uses.

All numpy arithmetic stays exact: entries are reduced mod p after every
contraction and p is far too small for int64 overflow (enumerable rings
need p**dim within budget).
"""

from __future__ import annotations

import numpy as np

from .errors import BudgetExceeded, UnsupportedDomain
from .rings import Ring

DEFAULT_BUDGET = 10**6


def require_finite(ring: Ring) -> int:
    if ring.domain.kind != "Fp":
        raise UnsupportedDomain(f"ring {ring.name!r} is over Q; finite enumeration needs a prime field")
    return ring.domain.p


class Enumeration:
    """Cached element tables and batched arithmetic for one finite ring."""

    def __init__(self, ring: Ring):
        self.ring = ring
        self.p = require_finite(ring)
        self.n = ring.dim
        self.count = self.p ** self.n
        self.sc = np.array([[[int(x) for x in row] for row in plane] for plane in ring.sc],
                           dtype=np.int64)
        self.radix = self.p ** np.arange(self.n - 1, -1, -1, dtype=np.int64)
        self.inv_table = np.array([0] + [pow(a, self.p - 2, self.p) for a in range(1, self.p)],
                                  dtype=np.int64)
        self.unit = np.array([int(x) for x in ring.unit_coords], dtype=np.int64)
        self._coords = None
        self._mul_table = None
        self._add_table = None
        self._comm_table = None

    # -- indices and coordinates ----------------------------------------

    def coords_of(self, idx) -> np.ndarray:
        idx = np.asarray(idx, dtype=np.int64)
        return (idx[..., None] // self.radix) % self.p

    def index_of(self, coords) -> np.ndarray:
        return np.asarray(coords, dtype=np.int64) % self.p @ self.radix

    def all_coords(self, budget: int = DEFAULT_BUDGET) -> np.ndarray:
        if self.count > budget:
            raise BudgetExceeded(self.count, budget, f"enumerating {self.ring.name!r}")
        if self._coords is None:
            self._coords = self.coords_of(np.arange(self.count))
        return self._coords

    # -- batched arithmetic ----------------------------------------------

    def mul(self, A, B) -> np.ndarray:
        """Rowwise products: result[b] = A[b] * B[b]."""
        A = np.asarray(A, dtype=np.int64) % self.p
        B = np.asarray(B, dtype=np.int64) % self.p
        T = np.tensordot(A, self.sc, axes=(-1, 0)) % self.p
        return np.einsum('...jk,...j->...k', T, B) % self.p

    def mul_outer(self, A, B) -> np.ndarray:
        """All products: result[a, b] = A[a] * B[b]."""
        A = np.asarray(A, dtype=np.int64) % self.p
        B = np.asarray(B, dtype=np.int64) % self.p
        T = np.tensordot(A, self.sc, axes=(1, 0)) % self.p
        return np.einsum('ajk,bj->abk', T, B) % self.p

    def square(self, A) -> np.ndarray:
        return self.mul(A, A)

    def commutator(self, A, B) -> np.ndarray:
        return (self.mul(A, B) - self.mul(B, A)) % self.p

    def left_mul_matrices(self, A) -> np.ndarray:
        """result[b] = matrix of x -> A[b] * x (column-vector action)."""
        A = np.asarray(A, dtype=np.int64) % self.p
        return np.tensordot(A, self.sc, axes=(-1, 0)).swapaxes(-1, -2) % self.p

    def right_mul_matrices(self, A) -> np.ndarray:
        """result[b] = matrix of x -> x * A[b]."""
        A = np.asarray(A, dtype=np.int64) % self.p
        return np.einsum('ijk,...j->...ki', self.sc, A) % self.p

    # -- full pair tables (index valued, budget guarded) ------------------

    def _pair_budget(self, budget: int, what: str):
        if self.count ** 2 > budget:
            raise BudgetExceeded(self.count ** 2, budget, what)

    def mul_table(self, budget: int = DEFAULT_BUDGET) -> np.ndarray:
        self._pair_budget(budget, f"pairwise products in {self.ring.name!r}")
        if self._mul_table is None:
            X = self.all_coords(budget)
            self._mul_table = self.index_of(self.mul_outer(X, X))
        return self._mul_table

    def add_table(self, budget: int = DEFAULT_BUDGET) -> np.ndarray:
        self._pair_budget(budget, f"pairwise sums in {self.ring.name!r}")
        if self._add_table is None:
            X = self.all_coords(budget)
            self._add_table = self.index_of((X[:, None, :] + X[None, :, :]) % self.p)
        return self._add_table

    def commutator_table(self, budget: int = DEFAULT_BUDGET) -> np.ndarray:
        self._pair_budget(budget, f"pairwise commutators in {self.ring.name!r}")
        if self._comm_table is None:
            X = self.all_coords(budget)
            M = self.mul_outer(X, X)
            self._comm_table = self.index_of((M - M.swapaxes(0, 1)) % self.p)
        return self._comm_table

    def smul_index(self, lam: int, budget: int = DEFAULT_BUDGET) -> np.ndarray:
        """Index table of x -> lam*x over all elements."""
        X = self.all_coords(budget)
        return self.index_of((lam * X) % self.p)

    def idempotent_mask(self, budget: int = DEFAULT_BUDGET) -> np.ndarray:
        X = self.all_coords(budget)
        return (self.square(X) == X).all(axis=1)

    # -- subspace points ---------------------------------------------------

    def subspace_points(self, basis_rows, budget: int = DEFAULT_BUDGET) -> np.ndarray:
        """All F_p points of a subspace, first basis direction fastest."""
        B = np.array([[int(x) for x in row] for row in basis_rows], dtype=np.int64)
        d = len(B)
        if d == 0:
            return np.zeros((1, self.n), dtype=np.int64)
        total = self.p ** d
        if total > budget:
            raise BudgetExceeded(total, budget, "enumerating subspace points")
        ar = np.arange(total, dtype=np.int64)
        coeffs = (ar[:, None] // self.p ** np.arange(d, dtype=np.int64)) % self.p
        return coeffs @ B % self.p

    def in_span_mask(self, basis_rows, pivots, V) -> np.ndarray:
        """Which rows of V lie in the span of an rref basis."""
        V = np.asarray(V, dtype=np.int64) % self.p
        if not basis_rows:
            return (V == 0).all(axis=-1)
        B = np.array([[int(x) for x in row] for row in basis_rows], dtype=np.int64)
        red = (V - V[..., list(pivots)] @ B) % self.p
        return (red == 0).all(axis=-1)

    # -- batched rank over F_p ---------------------------------------------

    def rank_batched(self, mats: np.ndarray, chunk: int = 4096) -> np.ndarray:
        """Ranks of a stack of small matrices by masked Gaussian elimination.

        Eliminates column by column with per-matrix pivot choice; cost is
        O(B * rows * cols * cols) int64 operations, which keeps scans over
        hundreds of thousands of candidate elements in numpy.
        """
        mats = np.asarray(mats, dtype=np.int64) % self.p
        out = np.empty(len(mats), dtype=np.int64)
        for lo in range(0, len(mats), chunk):
            out[lo:lo + chunk] = self._eliminate_chunk(mats[lo:lo + chunk])[1]
        return out

    def rref_batched(self, mats: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
        """Row-reduce a stack of matrices; returns (rows, ranks) with each
        matrix compressed to its nonzero reduced rows padded to C rows."""
        mats = np.asarray(mats, dtype=np.int64) % self.p
        A, ranks = self._eliminate_chunk(mats)
        nonzero = (A != 0).any(axis=2)
        order = np.argsort(~nonzero, axis=1, kind="stable")
        C = A.shape[2]
        take = order[:, :C]
        rows = A[np.arange(len(A))[:, None], take]
        return rows, ranks

    def _eliminate_chunk(self, A: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
        A = A.copy()
        B, R, C = A.shape
        used = np.zeros((B, R), dtype=bool)
        ranks = np.zeros(B, dtype=np.int64)
        rows = np.arange(B)
        for c in range(C):
            col = A[:, :, c]
            cand = (col != 0) & ~used
            has = cand.any(axis=1)
            piv = np.argmax(cand, axis=1)
            prow = A[rows, piv]
            pinv = self.inv_table[col[rows, piv]]
            prow = prow * pinv[:, None] % self.p
            upd = (A - col[:, :, None] * prow[:, None, :]) % self.p
            upd[rows, piv] = prow
            A = np.where(has[:, None, None], upd, A)
            used[rows, piv] |= has
            ranks += has
        return A, ranks
