"""Greedy sparse recovery: OMP and an exhaustive baseline for tiny instances.

``omp`` runs a fixed number of iterations equal to the target sparsity
(the support-size comparison used throughout the experiments assumes the
sparsity is known), selecting at each step the atom most correlated with
the current residual and re-solving least squares on the whole active set.
``exhaustive_l0`` brute-forces the best size-``tau`` support and serves as
a ground-truth solver on instances small enough to enumerate.
"""

import math
from dataclasses import dataclass

import numpy as np

from .dictionary import Dictionary

# A candidate atom whose component orthogonal to the active span falls
# below this norm makes the active set numerically rank deficient.
RANK_TOL = 1e-12

# Cap on the number of supports exhaustive_l0 is allowed to enumerate.
ENUMERATION_LIMIT = 10**6


class SingularSystemError(RuntimeError):
    """Active set became numerically rank deficient at ``iteration`` (1-based)."""

    def __init__(self, iteration: int, trial: int | None = None):
        self.iteration = iteration
        self.trial = trial
        super().__init__(iteration, trial)

    def __str__(self):
        msg = f"active set numerically singular at iteration {self.iteration}"
        if self.trial is not None:
            msg = f"trial {self.trial}: {msg}"
        return msg


class EnumerationLimitError(ValueError):
    """Requested support enumeration exceeds ``ENUMERATION_LIMIT``."""


@dataclass(frozen=True)
class OmpResult:
    """Solver output.

    ``support`` preserves selection order; ``coefficients`` is the
    least-squares solution over those atoms, aligned with ``support``.
    ``residual_norms`` records the residual 2-norm after each iteration
    (``None`` for the exhaustive solver, which has no iteration history).
    """

    support: np.ndarray
    coefficients: np.ndarray
    residual_norm: float
    iterations: int
    residual_norms: np.ndarray | None = None


def _check_tau_y(d: Dictionary, y: np.ndarray, tau: int) -> np.ndarray:
    y = np.asarray(y, dtype=np.float64)
    if y.shape != (d.m,):
        raise ValueError(f"measurement shape {y.shape} != ({d.m},)")
    if not 1 <= tau <= min(d.m, d.n):
        raise ValueError(f"need 1 <= tau <= {min(d.m, d.n)}, got {tau}")
    return y


def omp(d: Dictionary, y: np.ndarray, tau: int, *, method: str = "incremental") -> OmpResult:
    """Orthogonal matching pursuit for exactly ``tau`` iterations.

    Each iteration picks ``argmax_j |<A_j, r>|`` over unselected atoms
    (ties broken by lowest index), then re-solves least squares over all
    selected atoms.  ``method="incremental"`` maintains a QR factorization
    of the active set, updated one column per iteration; ``method="direct"``
    re-solves from scratch every iteration and exists as a slow reference,
    the two agree to 1e-10.
    """
    y = _check_tau_y(d, y, tau)
    if method == "direct":
        return _omp_direct(d, y, tau)
    if method != "incremental":
        raise ValueError(f"unknown method {method!r}")

    m = d.m
    q_basis = np.zeros((m, tau))
    r_factor = np.zeros((tau, tau))
    qty = np.zeros(tau)
    selected = np.zeros(tau, dtype=np.int64)
    residual = y.copy()
    history = np.zeros(tau)

    for k in range(tau):
        scores = np.abs(d.correlate_all(residual))
        scores[selected[:k]] = -1.0
        j = int(np.argmax(scores))
        selected[k] = j

        # Orthogonalize the new atom against the active span; one
        # re-orthogonalization pass keeps Q orthonormal to machine precision.
        a = d.column(j)
        proj = q_basis[:, :k].T @ a
        q = a - q_basis[:, :k] @ proj
        corr = q_basis[:, :k].T @ q
        q -= q_basis[:, :k] @ corr
        proj += corr
        norm_q = math.sqrt(float(q @ q))
        if norm_q < RANK_TOL:
            raise SingularSystemError(iteration=k + 1)
        q /= norm_q

        r_factor[:k, k] = proj
        r_factor[k, k] = norm_q
        q_basis[:, k] = q
        coef = float(q @ residual)
        qty[k] = coef
        residual -= coef * q
        history[k] = math.sqrt(float(residual @ residual))

    coefficients = np.linalg.solve(r_factor, qty)
    return OmpResult(
        support=selected,
        coefficients=coefficients,
        residual_norm=float(history[-1]),
        iterations=tau,
        residual_norms=history,
    )


def _omp_direct(d: Dictionary, y: np.ndarray, tau: int) -> OmpResult:
    selected: list[int] = []
    residual = y.copy()
    history = np.zeros(tau)
    coefficients = np.zeros(0)
    for k in range(tau):
        scores = np.abs(d.correlate_all(residual))
        scores[selected] = -1.0
        j = int(np.argmax(scores))
        a = d.column(j)
        if selected:
            active = np.column_stack([d.column(i) for i in selected])
            fit, *_ = np.linalg.lstsq(active, a, rcond=None)
            if math.sqrt(float(np.sum((a - active @ fit) ** 2))) < RANK_TOL:
                raise SingularSystemError(iteration=k + 1)
        selected.append(j)
        active = np.column_stack([d.column(i) for i in selected])
        coefficients, *_ = np.linalg.lstsq(active, y, rcond=None)
        residual = y - active @ coefficients
        history[k] = math.sqrt(float(residual @ residual))
    return OmpResult(
        support=np.array(selected, dtype=np.int64),
        coefficients=coefficients,
        residual_norm=float(history[-1]),
        iterations=tau,
        residual_norms=history,
    )


def exhaustive_l0(d: Dictionary, y: np.ndarray, tau: int) -> OmpResult:
    """Best size-``tau`` support by brute force over all combinations.

    Minimizes the least-squares residual norm; ties go to the
    lexicographically smallest support.  Guarded by ``ENUMERATION_LIMIT``
    on ``C(n, tau)``.
    """
    y = _check_tau_y(d, y, tau)
    n_supports = math.comb(d.n, tau)
    if n_supports > ENUMERATION_LIMIT:
        raise EnumerationLimitError(
            f"C({d.n}, {tau}) = {n_supports} exceeds the enumeration limit {ENUMERATION_LIMIT}"
        )
    from itertools import combinations

    best_support = None
    best_coef = None
    best_sq = math.inf
    for combo in combinations(range(d.n), tau):
        active = np.column_stack([d.column(i) for i in combo])
        coef, *_ = np.linalg.lstsq(active, y, rcond=None)
        resid = y - active @ coef
        sq = float(resid @ resid)
        if sq < best_sq:
            best_sq = sq
            best_support = combo
            best_coef = coef
    return OmpResult(
        support=np.array(best_support, dtype=np.int64),
        coefficients=best_coef,
        residual_norm=math.sqrt(max(best_sq, 0.0)),
        iterations=tau,
        residual_norms=None,
    )


def support_match(found, truth) -> bool:
    """True iff the two index sets are equal, ignoring order."""
    return set(np.asarray(found, dtype=np.int64).tolist()) == set(
        np.asarray(truth, dtype=np.int64).tolist()
    )
