"""Command-line front end: coherence/bound/beta calculators and sweep runner.

Sweep output is CSV with a fixed header; reals are printed in shortest
round-trip decimal and booleans as ``true``/``false``, so identical
configs and seeds produce byte-identical files at any parallelism level.
"""

import argparse
import math
import os
import sys
import tempfile

from .bounds import (
    GuaranteeInputs,
    alpha_from_beta,
    estimate_beta,
    thm1_condition,
    thm1_probability,
    thm2_bound,
)
from .dictionary import build_identity_hadamard
from .montecarlo import ExperimentConfig, run_sweep
from .signals import RngStream

CSV_HEADER = (
    "sweep,param_value,M,N,tau,s_min,s_max,sigma,beta,trials,successes,"
    "empirical_prob,mc_stderr,thm1_condition,thm1_prob,thm2_condition,thm2_prob"
)

CONFIG_KEYS = {
    "m": int,
    "sweep": str,
    "sweep_values": str,
    "tau": int,
    "s_min": float,
    "s_max": float,
    "sigma": float,
    "sigma_sq": float,
    "trials": int,
    "beta_draws": int,
}


def _fmt(x: float) -> str:
    return repr(float(x))


def _fmt_bool(b: bool) -> str:
    return "true" if b else "false"


def _parse_config_file(path: str) -> dict:
    values: dict = {}
    with open(path) as fh:
        for lineno, raw in enumerate(fh, start=1):
            line = raw.split("#", 1)[0].strip()
            if not line:
                continue
            if "=" not in line:
                raise ValueError(f"{path}:{lineno}: expected key=value, got {raw.strip()!r}")
            key, _, val = line.partition("=")
            values[key.strip()] = val.strip()
    return values


def _coerce_config(raw: dict, override_keys: frozenset = frozenset()) -> dict:
    out = {}
    for key, val in raw.items():
        if key not in CONFIG_KEYS:
            known = ", ".join(sorted(CONFIG_KEYS))
            raise ValueError(f"unknown config key {key!r} (known keys: {known})")
        out[key] = CONFIG_KEYS[key](val) if not isinstance(val, CONFIG_KEYS[key]) else val
    if "sigma" in out and "sigma_sq" in out:
        # The aliases name one knob, so an override of either supersedes
        # the file's value of the other; same-source duplicates conflict.
        if ("sigma" in override_keys) == ("sigma_sq" in override_keys):
            raise ValueError("give either sigma or sigma_sq, not both")
        out.pop("sigma" if "sigma_sq" in override_keys else "sigma_sq")
    if "sigma_sq" in out:
        sq = out.pop("sigma_sq")
        if sq < 0:
            raise ValueError(f"sigma_sq must be nonnegative, got {sq}")
        out["sigma"] = math.sqrt(sq)
    return out


def _build_experiment(raw: dict, seed: int, override_keys: frozenset = frozenset()) -> ExperimentConfig:
    cfg = _coerce_config(raw, override_keys)
    for key in ("m", "sweep", "sweep_values"):
        if key not in cfg:
            raise ValueError(f"missing required config key {key!r}")
    sweep = cfg["sweep"]
    tokens = [t for t in cfg["sweep_values"].split(",") if t.strip()]
    if sweep == "tau":
        values = tuple(int(t) for t in tokens)
    else:
        values = tuple(float(t) for t in tokens)
    # The swept parameter needs no separate fixed value; default it to the
    # first sweep point.  Everything else must be given explicitly.
    defaults = {}
    if sweep == "tau":
        defaults["tau"] = int(values[0]) if values else None
    elif sweep == "s_min":
        defaults["s_min"] = float(values[0]) if values else None
    elif sweep == "sigma":
        defaults["sigma"] = float(values[0]) if values else None
    for key in ("tau", "s_min", "s_max", "sigma"):
        if key not in cfg:
            if key in defaults and defaults[key] is not None:
                cfg[key] = defaults[key]
            else:
                raise ValueError(f"missing required config key {key!r}")
    return ExperimentConfig(
        m=cfg["m"],
        sweep=sweep,
        sweep_values=values,
        tau=cfg["tau"],
        s_min=cfg["s_min"],
        s_max=cfg["s_max"],
        sigma=cfg["sigma"],
        trials=cfg.get("trials", 5000),
        beta_draws=cfg.get("beta_draws", 10_000),
        master_seed=seed,
    )


def _write_atomic(path: str, text: str) -> None:
    """Write via a temp file in the target directory plus rename."""
    directory = os.path.dirname(os.path.abspath(path))
    fd, tmp = tempfile.mkstemp(dir=directory, prefix=".ompbounds-", suffix=".tmp")
    try:
        with os.fdopen(fd, "w") as fh:
            fh.write(text)
        os.replace(tmp, path)
    except BaseException:
        if os.path.exists(tmp):
            os.unlink(tmp)
        raise


def _sweep_csv(cfg: ExperimentConfig, results) -> str:
    lines = [CSV_HEADER]
    for r in results:
        tau, s_min, sigma = cfg.tau, cfg.s_min, cfg.sigma
        if cfg.sweep == "tau":
            tau = int(r.param_value)
        elif cfg.sweep == "s_min":
            s_min = r.param_value
        else:
            sigma = r.param_value
        lines.append(
            ",".join(
                [
                    cfg.sweep,
                    _fmt(r.param_value),
                    str(cfg.m),
                    str(2 * cfg.m),
                    str(tau),
                    _fmt(s_min),
                    _fmt(cfg.s_max),
                    _fmt(sigma),
                    _fmt(r.beta),
                    str(r.trials),
                    str(r.successes),
                    _fmt(r.empirical_prob),
                    _fmt(r.mc_stderr),
                    _fmt_bool(r.thm1_condition),
                    _fmt(r.thm1_prob),
                    _fmt_bool(r.thm2_condition),
                    _fmt(r.thm2_prob),
                ]
            )
        )
    return "\n".join(lines) + "\n"


def _plot_script(csv_path: str, sweep: str) -> str:
    return "\n".join(
        [
            "# Line plot of sweep results (gnuplot).",
            "set datafile separator ','",
            f"set xlabel '{sweep}'",
            "set ylabel 'probability of support recovery'",
            "set yrange [-0.05:1.05]",
            "set key bottom left",
            f"plot '{csv_path}' using 'param_value':'empirical_prob' "
            "with linespoints title 'empirical', \\",
            "     '' using 'param_value':'thm1_prob' with linespoints title 'thm1', \\",
            "     '' using 'param_value':'thm2_prob' with linespoints title 'thm2'",
            "",
        ]
    )


def _cmd_coherence(args) -> int:
    d = build_identity_hadamard(args.m)
    print(f"M={d.m}")
    print(f"N={d.n}")
    print(f"mu_max={d.mutual_coherence():.6f}")
    return 0


def _cmd_bound(args) -> int:
    g = GuaranteeInputs(
        n=args.n,
        tau=args.tau,
        mu_max=args.mu_max,
        s_min=args.s_min,
        s_max=args.s_max,
        sigma=args.sigma,
        beta=args.beta,
    )
    if args.alpha is not None:
        alpha, alpha_note = args.alpha, "given"
    elif g.sigma > 0 and g.beta > 0:
        ab = alpha_from_beta(g.beta, g.sigma, g.n)
        alpha, alpha_note = ab.alpha, "derived" if ab.valid else "derived, invalid"
    else:
        alpha, alpha_note = None, "undefined"

    cond1 = thm1_condition(g)
    if alpha is not None and alpha > 0:
        prob1 = thm1_probability(g, alpha)
    elif alpha is None:
        prob1 = 1.0 if cond1 else 0.0
    else:
        prob1 = 0.0
    b = thm2_bound(g, tight_lambda=args.tight_lambda)

    print(f"thm1_condition={_fmt_bool(cond1)}")
    print(f"thm1_prob={_fmt(prob1)}")
    alpha_text = "undefined" if alpha is None else f"{_fmt(alpha)} ({alpha_note})"
    print(f"alpha={alpha_text}")
    print(f"thm2_condition={_fmt_bool(b.condition_ok)}")
    print(f"thm2_prob={_fmt(b.probability)}")
    for name in (
        "rho",
        "gamma",
        "p1",
        "p2",
        "p3",
        "lambda_raw",
        "lambda_lb",
        "error_ub",
        "probability_raw",
        "probability",
    ):
        print(f"{name}={_fmt(getattr(b, name))}")
    return 0


def _cmd_beta(args) -> int:
    d = build_identity_hadamard(args.m)
    beta = estimate_beta(d, args.sigma, args.draws, RngStream(args.seed, 0))
    print(f"m={d.m}")
    print(f"n={d.n}")
    print(f"sigma={_fmt(args.sigma)}")
    print(f"draws={args.draws}")
    print(f"beta={_fmt(beta)}")
    if args.sigma > 0 and beta > 0:
        ab = alpha_from_beta(beta, args.sigma, d.n)
        print(f"alpha={_fmt(ab.alpha)}")
        print(f"alpha_valid={_fmt_bool(ab.valid)}")
    else:
        print("alpha=undefined")
    return 0


def _cmd_sweep(args) -> int:
    raw: dict = {}
    if args.config is not None:
        raw.update(_parse_config_file(args.config))
    override_keys = set()
    for item in args.set or []:
        if "=" not in item:
            raise ValueError(f"--set expects key=value, got {item!r}")
        key, _, val = item.partition("=")
        raw[key.strip()] = val.strip()
        override_keys.add(key.strip())
    cfg = _build_experiment(raw, args.seed, frozenset(override_keys))
    results = run_sweep(cfg, workers=args.workers)
    _write_atomic(args.out, _sweep_csv(cfg, results))
    if args.plot_script is not None:
        _write_atomic(args.plot_script, _plot_script(args.out, cfg.sweep))
    return 0


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="ompbounds",
        description="OMP support recovery: coherence, probability bounds, Monte Carlo sweeps.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("coherence", help="mutual coherence of the identity-Hadamard dictionary")
    p.add_argument("-m", "--m", type=int, required=True, help="ambient dimension (power of two)")
    p.set_defaults(func=_cmd_coherence)

    p = sub.add_parser("bound", help="evaluate both recovery bounds at one parameter point")
    p.add_argument("--n", type=int, required=True, help="number of atoms N")
    p.add_argument("--tau", type=int, required=True, help="sparsity")
    p.add_argument("--mu-max", type=float, required=True, help="mutual coherence in (0,1)")
    p.add_argument("--s-min", type=float, required=True, help="smallest nonzero magnitude")
    p.add_argument("--s-max", type=float, required=True, help="largest nonzero magnitude")
    p.add_argument("--sigma", type=float, required=True, help="noise standard deviation")
    p.add_argument("--beta", type=float, required=True, help="worst-case noise correlation")
    p.add_argument("--alpha", type=float, default=None, help="override the derived alpha")
    p.add_argument(
        "--tight-lambda",
        action="store_true",
        help="use the sharper (1-P3)^N lower bound on lambda",
    )
    p.set_defaults(func=_cmd_bound)

    p = sub.add_parser("beta", help="estimate the worst-case noise correlation empirically")
    p.add_argument("-m", "--m", type=int, required=True, help="ambient dimension (power of two)")
    p.add_argument("--sigma", type=float, required=True, help="noise standard deviation")
    p.add_argument("--draws", type=int, default=10_000, help="number of noise draws")
    p.add_argument("--seed", type=int, default=0, help="master seed")
    p.set_defaults(func=_cmd_beta)

    p = sub.add_parser("sweep", help="run a parameter sweep and write CSV results")
    p.add_argument("--config", default=None, help="key=value config file")
    p.add_argument(
        "--set",
        action="append",
        metavar="KEY=VALUE",
        help="override a config key (repeatable)",
    )
    p.add_argument("--out", required=True, help="output CSV path")
    p.add_argument("--plot-script", default=None, help="also write a gnuplot script here")
    p.add_argument("--workers", type=int, default=1, help="parallel worker processes")
    p.add_argument("--seed", type=int, default=0, help="master seed (all randomness)")
    p.set_defaults(func=_cmd_sweep)
    return parser


def main(argv=None) -> int:
    args = _build_parser().parse_args(argv)
    try:
        return args.func(args)
    except (ValueError, OSError) as err:
        print(f"error: {err}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
