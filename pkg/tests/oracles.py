"""Independent extended-precision evaluators used as references in tests.

Everything here is coded directly from the bound definitions in mpmath at
50 significant digits, without calling the library under test, so any
agreement is meaningful.
"""

import mpmath as mp

mp.mp.dps = 50


def bernstein_oracle(delta, n_terms, nu, c):
    delta, nu, c = mp.mpf(delta), mp.mpf(nu), mp.mpf(c)
    denom = 2 * (n_terms * nu + c * delta / 3)
    if denom == 0:
        return mp.mpf(0)
    return min(mp.mpf(1), 2 * mp.exp(-(delta**2) / denom))


def lemma1_oracle(xi, beta, n_terms, nu, c):
    xi, beta = mp.mpf(xi), mp.mpf(beta)
    if xi == beta:
        return mp.mpf(1)
    return bernstein_oracle(xi - beta, n_terms, nu, c)


def thm1_condition_oracle(n, tau, mu_max, s_min, beta):
    s_min, mu_max, beta = mp.mpf(s_min), mp.mpf(mu_max), mp.mpf(beta)
    return s_min * (1 - (2 * tau - 1) * mu_max) >= 2 * beta


def thm1_probability_oracle(n, tau, mu_max, s_min, beta, alpha):
    if not thm1_condition_oracle(n, tau, mu_max, s_min, beta):
        return mp.mpf(0)
    n, alpha = mp.mpf(n), mp.mpf(alpha)
    term = n ** (-alpha) / mp.sqrt(mp.pi * (1 + alpha) * mp.log(n))
    return max(mp.mpf(0), 1 - term)


def thm2_oracle(n, tau, mu_max, s_min, s_max, sigma, beta, tight_lambda=False):
    """Full breakdown as a dict of mpmath values, mirroring BoundBreakdown."""
    mu_max, s_min, s_max = mp.mpf(mu_max), mp.mpf(s_min), mp.mpf(s_max)
    sigma, beta = mp.mpf(sigma), mp.mpf(beta)
    one = mp.mpf(1)

    rho = s_min / 2 - beta
    gamma = mu_max * s_max
    condition_ok = rho >= 0
    nu = (mp.mpf(tau) / n) * s_max**2 * mu_max**2
    rho_eff = max(rho, mp.mpf(0))
    if rho_eff > 0:
        p1 = bernstein_oracle(rho_eff, tau - 1, nu, gamma)
        p2 = bernstein_oracle(rho_eff, tau, nu, gamma)
    else:
        p1 = p2 = one

    if sigma == 0:
        p3 = mp.mpf(0)
    else:
        p3 = mp.sqrt(2 / mp.pi) * (sigma / beta) * mp.exp(-(beta**2) / (2 * sigma**2))
    if tight_lambda:
        lambda_raw = (1 - min(p3, one)) ** n
    else:
        lambda_raw = 1 - n * p3
    lambda_lb = min(one, max(mp.mpf(0), lambda_raw))

    error_ub = 2 * n * mp.exp(-n * rho_eff**2 / (2 * tau**2 * gamma**2 + 2 * n * gamma * rho_eff / 3))
    probability_raw = lambda_lb * (1 - error_ub)
    probability = min(one, max(mp.mpf(0), probability_raw))
    return {
        "rho": rho,
        "gamma": gamma,
        "p1": p1,
        "p2": p2,
        "p3": p3,
        "lambda_raw": lambda_raw,
        "lambda_lb": lambda_lb,
        "error_ub": error_ub,
        "probability_raw": probability_raw,
        "probability": probability,
        "condition_ok": condition_ok,
    }


def rel_err(value, reference) -> float:
    """|value - reference| / max(|reference|, tiny), as a float."""
    reference = mp.mpf(reference)
    scale = max(abs(reference), mp.mpf("1e-300"))
    return float(abs(mp.mpf(value) - reference) / scale)


def random_guarantee_grid(count, seed):
    """Random parameter points spanning the experiment regimes.

    ``beta`` is tied to ``sigma`` through an ``alpha`` in [0.2, 4], the way
    an empirical worst-case estimate behaves, so derived quantities stay in
    numerically honest ranges.
    """
    import math
    import numpy as np

    rng = np.random.default_rng(seed)
    points = []
    for _ in range(count):
        m = 2 ** int(rng.integers(6, 13))
        n = 2 * m
        tau = int(rng.integers(1, 41))
        mu_max = float(rng.uniform(0.01, 0.35))
        s_min = float(rng.uniform(0.1, 1.0))
        s_max = s_min * float(1.0 + 3.0 * rng.uniform())
        sigma = float(10 ** rng.uniform(-4, -1.3))
        alpha = float(rng.uniform(0.2, 4.0))
        beta = sigma * math.sqrt(2.0 * (1.0 + alpha) * math.log(n))
        points.append(
            {
                "n": n,
                "tau": tau,
                "mu_max": mu_max,
                "s_min": s_min,
                "s_max": s_max,
                "sigma": sigma,
                "beta": beta,
                "alpha": alpha,
            }
        )
    return points
