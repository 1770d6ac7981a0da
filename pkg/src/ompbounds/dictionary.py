"""Measurement dictionaries with fast coherence and correlation queries.

The workhorse is the identity-Hadamard concatenation ``A = [I, H/sqrt(m)]``
(an ``m x 2m`` dictionary whose mutual coherence is exactly ``1/sqrt(m)``).
Its Hadamard half is never stored: columns are materialized on demand and
matrix-vector products go through a fast Walsh-Hadamard transform.
Arbitrary dense dictionaries are supported for small-scale experiments.
"""

import math

import numpy as np

IDENTITY_HADAMARD = "identity-hadamard"
DENSE = "dense"

# Unit-norm tolerance for dictionary columns.
NORM_TOL = 1e-12


def _is_power_of_two(k: int) -> bool:
    return k >= 1 and (k & (k - 1)) == 0


def fwht(x: np.ndarray) -> np.ndarray:
    """Unnormalized fast Walsh-Hadamard transform along the last axis.

    Uses the Sylvester (natural) ordering, i.e. ``fwht(x) == H_n @ x`` for
    the recursive construction ``H_2n = [[H_n, H_n], [H_n, -H_n]]``.  The
    transform is an involution up to scale: applying it twice multiplies
    the input by ``n``.  Runs in O(n log n) per vector.
    """
    a = np.array(x, dtype=np.float64, copy=True, order="C")
    n = a.shape[-1]
    if n == 0 or not _is_power_of_two(n):
        raise ValueError(f"fwht length must be a power of two, got {n}")
    lead = a.shape[:-1]
    h = 1
    while h < n:
        b = a.reshape(lead + (-1, 2, h))
        top = b[..., 0, :].copy()
        b[..., 0, :] = top + b[..., 1, :]
        b[..., 1, :] = top - b[..., 1, :]
        h *= 2
    return a


class Dictionary:
    """Column-normalized real dictionary of shape ``(m, n)``.

    Instances are immutable after construction and safe to share across
    concurrent trials.  The lazily cached coherence is an idempotent
    recompute, so a benign race at worst repeats work.

    Use :func:`build_identity_hadamard` or :meth:`Dictionary.from_matrix`
    instead of calling the constructor directly.
    """

    def __init__(self, kind: str, m: int, n: int, matrix: np.ndarray | None = None):
        self.kind = kind
        self.m = int(m)
        self.n = int(n)
        self._matrix = matrix
        self._mu_max: float | None = None
        if kind == IDENTITY_HADAMARD:
            self._inv_sqrt_m = 1.0 / math.sqrt(self.m)

    @classmethod
    def from_matrix(cls, a: np.ndarray) -> "Dictionary":
        """Wrap an arbitrary real matrix, normalizing every column to unit norm.

        Columns with norm below ``1e-12`` are rejected.
        """
        a = np.asarray(a, dtype=np.float64)
        if a.ndim != 2 or a.shape[0] < 1 or a.shape[1] < 1:
            raise ValueError(f"expected a 2-d matrix, got shape {a.shape}")
        norms = np.linalg.norm(a, axis=0)
        if np.any(norms < NORM_TOL):
            bad = int(np.argmin(norms))
            raise ValueError(f"column {bad} has near-zero norm {norms[bad]:.3e}")
        return cls(DENSE, a.shape[0], a.shape[1], matrix=a / norms)

    def __getstate__(self):
        return {"kind": self.kind, "m": self.m, "n": self.n, "matrix": self._matrix}

    def __setstate__(self, state):
        self.__init__(state["kind"], state["m"], state["n"], state["matrix"])

    def column(self, j: int) -> np.ndarray:
        """Return atom ``j`` (0-based) as a length-``m`` unit vector."""
        if not 0 <= j < self.n:
            raise ValueError(f"column index {j} out of range [0, {self.n})")
        if self.kind == DENSE:
            return self._matrix[:, j].copy()
        if j < self.m:
            e = np.zeros(self.m)
            e[j] = 1.0
            return e
        e = np.zeros(self.m)
        e[j - self.m] = 1.0
        return fwht(e) * self._inv_sqrt_m

    def correlate_all(self, r: np.ndarray) -> np.ndarray:
        """Inner products of every atom with ``r``: the OMP selection statistic.

        ``r`` has shape ``(m,)`` or ``(..., m)`` (applied along the last
        axis).  For the identity-Hadamard kind the Hadamard half is computed
        by the fast transform in O(m log m) instead of a dense product.
        """
        r = np.asarray(r, dtype=np.float64)
        if r.shape[-1] != self.m:
            raise ValueError(f"vector length {r.shape[-1]} != m={self.m}")
        if self.kind == DENSE:
            return r @ self._matrix
        return np.concatenate([r, fwht(r) * self._inv_sqrt_m], axis=-1)

    def matvec(self, s: np.ndarray) -> np.ndarray:
        """Compute ``A @ s`` for a length-``n`` coefficient vector."""
        s = np.asarray(s, dtype=np.float64)
        if s.shape != (self.n,):
            raise ValueError(f"coefficient shape {s.shape} != ({self.n},)")
        if self.kind == DENSE:
            return self._matrix @ s
        return s[: self.m] + fwht(s[self.m :]) * self._inv_sqrt_m

    def to_dense(self) -> np.ndarray:
        """Materialize the full ``(m, n)`` matrix (intended for small m)."""
        if self.kind == DENSE:
            return self._matrix.copy()
        # fwht of the identity yields the (symmetric) Hadamard matrix.
        h = fwht(np.eye(self.m))
        return np.hstack([np.eye(self.m), h * self._inv_sqrt_m])

    def mutual_coherence(self, method: str = "auto") -> float:
        """Maximum absolute inner product over distinct column pairs.

        ``method="auto"`` uses the closed form ``1/sqrt(m)`` for the
        identity-Hadamard kind and brute force otherwise;
        ``method="brute"`` forces the O(m n^2) pairwise scan on either kind.
        """
        if self.n < 2:
            raise ValueError("mutual coherence needs at least two columns")
        if method not in ("auto", "brute"):
            raise ValueError(f"unknown method {method!r}")
        if method == "auto" and self.kind == IDENTITY_HADAMARD:
            return self._inv_sqrt_m
        if self._mu_max is None or method == "brute":
            g = np.abs(self.to_dense().T @ self.to_dense())
            np.fill_diagonal(g, 0.0)
            self._mu_max = float(g.max())
        return self._mu_max


def build_identity_hadamard(m: int) -> Dictionary:
    """Build the ``[I, H/sqrt(m)]`` dictionary for power-of-two ``m >= 2``.

    Columns ``0..m-1`` are the standard basis; columns ``m..2m-1`` are the
    Sylvester-ordered Hadamard columns scaled to unit norm.
    """
    if not isinstance(m, (int, np.integer)) or not _is_power_of_two(int(m)) or m < 2:
        raise ValueError(f"m must be a power of two >= 2, got {m!r}")
    return Dictionary(IDENTITY_HADAMARD, int(m), 2 * int(m))
