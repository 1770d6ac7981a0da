"""Seeded Monte Carlo trials and parameter sweeps of OMP support recovery.

A point runs ``trials`` independent trials: draw a sparse signal, add
noise, run OMP for exactly ``tau`` iterations, and count the trial as a
success when the recovered support equals the planted one.  Each trial
owns the stream ``(master_seed, t)`` for ``t = 1..trials`` and the outcome
is an integer success count, so results are bit-identical regardless of
execution order or degree of parallelism.  Stream id 0 is reserved for
the worst-case ``beta`` estimate, which therefore never shifts the trial
streams when ``beta_draws`` changes.
"""

import math
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, replace

import numpy as np

from .bounds import (
    GuaranteeInputs,
    alpha_from_beta,
    thm1_condition,
    thm1_probability,
    thm2_bound,
    unit_correlation_max,
)
from .dictionary import Dictionary, build_identity_hadamard
from .omp import SingularSystemError, omp, support_match
from .signals import RngStream, draw_sparse_signal, synthesize

SWEEP_KINDS = ("tau", "s_min", "sigma")


@dataclass(frozen=True)
class ExperimentConfig:
    """One sweep: vary ``sweep`` over ``sweep_values``, fix the rest.

    ``sigma`` is the noise standard deviation throughout (variances from
    experiment write-ups must be square-rooted; the CLI accepts a
    ``sigma_sq`` alias that does the conversion).
    """

    m: int
    sweep: str
    sweep_values: tuple
    tau: int
    s_min: float
    s_max: float
    sigma: float
    trials: int = 5000
    beta_draws: int = 10_000
    master_seed: int = 0

    def __post_init__(self):
        if not isinstance(self.m, int) or self.m < 2 or self.m & (self.m - 1):
            raise ValueError(f"m must be a power of two >= 2, got {self.m}")
        if self.sweep not in SWEEP_KINDS:
            raise ValueError(f"sweep must be one of {SWEEP_KINDS}, got {self.sweep!r}")
        vals = tuple(self.sweep_values)
        if not vals:
            raise ValueError("sweep_values must be nonempty")
        if any(b <= a for a, b in zip(vals, vals[1:])):
            raise ValueError("sweep_values must be strictly increasing")
        if self.sweep == "tau":
            if any(int(v) != v or not 1 <= v <= self.m for v in vals):
                raise ValueError(f"tau sweep values must be integers in [1, {self.m}]")
        elif self.sweep == "s_min":
            if any(not 0 < v <= self.s_max for v in vals):
                raise ValueError("s_min sweep values must lie in (0, s_max]")
        else:
            if any(v < 0 for v in vals):
                raise ValueError("sigma sweep values must be nonnegative")
        if not 0 < self.s_min <= self.s_max:
            raise ValueError(f"need 0 < s_min <= s_max, got {self.s_min}, {self.s_max}")
        if self.sigma < 0:
            raise ValueError(f"sigma must be nonnegative, got {self.sigma}")
        if not 1 <= self.tau <= self.m:
            raise ValueError(f"need 1 <= tau <= {self.m}, got {self.tau}")
        if self.trials < 1:
            raise ValueError(f"trials must be >= 1, got {self.trials}")
        if self.beta_draws < 1:
            raise ValueError(f"beta_draws must be >= 1, got {self.beta_draws}")


@dataclass(frozen=True)
class SweepResult:
    """One sweep row: empirical success ratio plus both guarantees."""

    param_value: float
    empirical_prob: float
    mc_stderr: float
    thm1_prob: float
    thm2_prob: float
    thm1_condition: bool
    thm2_condition: bool
    beta: float
    successes: int
    trials: int


def _count_successes(
    d: Dictionary,
    tau: int,
    s_min: float,
    s_max: float,
    sigma: float,
    master_seed: int,
    t_lo: int,
    t_hi: int,
) -> int:
    """Successes over trials ``t_lo..t_hi-1``, each on its own stream."""
    count = 0
    for t in range(t_lo, t_hi):
        g = RngStream(master_seed, t).generator()
        signal = draw_sparse_signal(g, d.n, tau, s_min, s_max)
        measurement = synthesize(d, signal, sigma, g)
        try:
            result = omp(d, measurement.observed, tau)
        except SingularSystemError as err:
            raise SingularSystemError(iteration=err.iteration, trial=t) from err
        count += support_match(result.support, signal.support)
    return count


def run_point(
    d: Dictionary,
    tau: int,
    s_min: float,
    s_max: float,
    sigma: float,
    trials: int,
    beta: float,
    master_seed: int,
    *,
    param_value: float = math.nan,
    workers: int | None = None,
    _executor: ProcessPoolExecutor | None = None,
) -> SweepResult:
    """Monte Carlo estimate at one parameter point, plus both bounds.

    ``beta`` is the (externally estimated) worst-case noise correlation;
    both theoretical columns are evaluated with it.  ``workers > 1``
    splits the trial range across processes; the success count, and hence
    every reported number, is identical for any worker count.
    """
    if trials < 1:
        raise ValueError(f"trials must be >= 1, got {trials}")
    if _executor is not None or (workers is not None and workers > 1):
        owned = None
        ex = _executor
        if ex is None:
            owned = ProcessPoolExecutor(max_workers=workers)
            ex = owned
        try:
            n_chunks = max(1, getattr(ex, "_max_workers", 1) * 4)
            bounds_idx = np.linspace(1, trials + 1, min(n_chunks, trials) + 1, dtype=int)
            futures = [
                ex.submit(
                    _count_successes, d, tau, s_min, s_max, sigma, master_seed, lo, hi
                )
                for lo, hi in zip(bounds_idx[:-1], bounds_idx[1:])
                if hi > lo
            ]
            successes = sum(f.result() for f in futures)
        finally:
            if owned is not None:
                owned.shutdown()
    else:
        successes = _count_successes(d, tau, s_min, s_max, sigma, master_seed, 1, trials + 1)

    p_hat = successes / trials
    stderr = math.sqrt(p_hat * (1.0 - p_hat) / trials)
    g = GuaranteeInputs(
        n=d.n,
        tau=tau,
        mu_max=d.mutual_coherence(),
        s_min=s_min,
        s_max=s_max,
        sigma=sigma,
        beta=beta,
    )
    breakdown = thm2_bound(g)
    cond1 = thm1_condition(g)
    if sigma == 0.0:
        # Noiseless limit: the probability factor tends to 1, leaving the
        # sharp condition (with beta = 0) as the whole guarantee.
        prob1 = 1.0 if cond1 else 0.0
    else:
        ab = alpha_from_beta(beta, sigma, d.n)
        prob1 = thm1_probability(g, ab.alpha) if ab.valid else 0.0
    return SweepResult(
        param_value=float(param_value),
        empirical_prob=p_hat,
        mc_stderr=stderr,
        thm1_prob=prob1,
        thm2_prob=breakdown.probability,
        thm1_condition=cond1,
        thm2_condition=breakdown.condition_ok,
        beta=beta,
        successes=successes,
        trials=trials,
    )


def _point_master_seed(master_seed: int, point_index: int) -> int:
    """Fresh 64-bit master seed for one sweep point (trial streams live under it)."""
    seq = np.random.SeedSequence((master_seed, 1 + point_index))
    return int(seq.generate_state(1, np.uint64)[0])


def run_sweep(cfg: ExperimentConfig, *, workers: int | None = None) -> list[SweepResult]:
    """Run one point per sweep value; deterministic given ``master_seed``.

    ``beta`` comes from a single worst-case pass on stream
    ``(master_seed, 0)``; it scales exactly linearly in ``sigma``, so a
    sigma sweep re-estimates it per point while other sweeps share one
    value.
    """
    d = build_identity_hadamard(cfg.m)
    unit_max = unit_correlation_max(d, cfg.beta_draws, RngStream(cfg.master_seed, 0))
    results = []
    executor = None
    if workers is not None and workers > 1:
        executor = ProcessPoolExecutor(max_workers=workers)
    try:
        for i, value in enumerate(cfg.sweep_values):
            tau, s_min, sigma = cfg.tau, cfg.s_min, cfg.sigma
            if cfg.sweep == "tau":
                tau = int(value)
            elif cfg.sweep == "s_min":
                s_min = float(value)
            else:
                sigma = float(value)
            results.append(
                run_point(
                    d,
                    tau,
                    s_min,
                    cfg.s_max,
                    sigma,
                    cfg.trials,
                    sigma * unit_max,
                    _point_master_seed(cfg.master_seed, i),
                    param_value=float(value),
                    _executor=executor,
                )
            )
    finally:
        if executor is not None:
            executor.shutdown()
    return results


def with_param(result: SweepResult, value: float) -> SweepResult:
    """Copy of ``result`` with ``param_value`` replaced."""
    return replace(result, param_value=float(value))
