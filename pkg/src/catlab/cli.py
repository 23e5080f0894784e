"""Command-line front end: simulate, theory, verify, clt, oracle.

Option precedence is flags > config file (``key=value`` lines, ``--config``)
> environment (``CATLAB_SEED``) > built-in defaults.  Exit codes: 0 success,
1 verification failure, 2 usage or domain error, 3 resource guard exceeded.
All emitted data files are byte-identical across runs for a fixed
configuration; the manifest sidecar carries the wall-clock timestamp.
"""

from __future__ import annotations

import argparse
import datetime
import json
import os
import sys
from dataclasses import dataclass, field
from fractions import Fraction
from pathlib import Path

from . import __version__, theory
from .caterpillar import Caterpillar, RngSeed, sample_direct_counts, simulate_counts
from .errors import DomainError, ResourceLimitError, ValidityError
from .experiments import (
    DEFAULT_SEED,
    ExperimentConfig,
    jarque_bera,
    ks_normality,
    run_mc,
    standardize_zagreb,
)
from .indices import IndexSpec, compute_index
from .oracle import choose_method, enumerate_exact
from .svg import histogram_kde_svg
from .verify import SUITES, render_table, report_json, run_suite

__all__ = ["main"]

DEFAULT_INDICES = "gini_degree,hoover,zagreb,randic:1,wiener,hyper_wiener"


def _default_threads() -> int:
    return min(8, os.cpu_count() or 1)


def _fmt_value(v) -> str:
    if isinstance(v, int):
        return str(v)
    return format(float(v), ".17g")


@dataclass
class RunManifest:
    """Reproducibility sidecar: everything needed to regenerate an output."""

    command: str
    config: dict
    verdicts: list | None = None
    tool: str = "catlab"
    version: str = __version__
    timestamp: str = field(
        default_factory=lambda: datetime.datetime.now(datetime.timezone.utc).isoformat()
    )

    def to_json(self) -> str:
        payload = {
            "tool": self.tool,
            "version": self.version,
            "command": self.command,
            "config": self.config,
            "timestamp": self.timestamp,
            "verdicts": self.verdicts,
        }
        return json.dumps(payload, indent=2, sort_keys=True) + "\n"


def _write_text(path: str, text: str) -> None:
    with open(path, "w", encoding="utf-8", newline="") as fh:
        fh.write(text)


def _write_manifest(out_path: str, manifest: RunManifest) -> None:
    _write_text(out_path + ".manifest.json", manifest.to_json())


def _read_config_file(path: str) -> dict[str, str]:
    values: dict[str, str] = {}
    for raw in Path(path).read_text(encoding="utf-8").splitlines():
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if "=" not in line:
            raise DomainError(f"bad config line (expected key=value): {raw!r}")
        key, _, value = line.partition("=")
        values[key.strip()] = value.strip()
    return values


class _Resolver:
    """Implements the flag > config > env > default precedence."""

    def __init__(self, args: argparse.Namespace):
        self.config = _read_config_file(args.config) if getattr(args, "config", None) else {}
        self.args = args

    def get(self, name: str, default, cast):
        flag = getattr(self.args, name, None)
        if flag is not None:
            return flag
        if name in self.config:
            return cast(self.config[name])
        return default

    def seed(self) -> int:
        flag = getattr(self.args, "seed", None)
        if flag is not None:
            return flag
        if "seed" in self.config:
            return int(self.config["seed"])
        env = os.environ.get("CATLAB_SEED")
        if env is not None:
            return int(env)
        return DEFAULT_SEED


def _parse_indices(text: str) -> tuple[IndexSpec, ...]:
    specs = tuple(IndexSpec.parse(part) for part in text.split(",") if part.strip())
    if not specs:
        raise DomainError("no indices requested")
    return specs


def cmd_simulate(args: argparse.Namespace) -> int:
    res = _Resolver(args)
    m = res.get("m", None, int)
    n = res.get("n", None, int)
    if m is None or n is None:
        raise DomainError("simulate requires --m and --n")
    seed = res.seed()
    replications = res.get("replications", 1, int)
    sampler = res.get("sampler", "sequential", str)
    fmt = res.get("format", "csv", str)
    indices = _parse_indices(res.get("indices", DEFAULT_INDICES, str))
    if sampler not in ("sequential", "direct"):
        raise DomainError(f"unknown sampler {sampler!r}")
    if fmt not in ("csv", "json"):
        raise DomainError(f"unknown format {fmt!r}")
    if m < 2:
        raise DomainError(f"spine too short: m must be >= 2, got {m}")
    if n < 0 or replications < 1:
        raise DomainError("need n >= 0 and replications >= 1")

    draw = simulate_counts if sampler == "sequential" else sample_direct_counts
    columns = ["replicate_id"] + [str(spec) for spec in indices]

    def one_row(r: int) -> list:
        rng = RngSeed(seed, r).generator()
        c = Caterpillar(m=m, leaf_counts=tuple(draw(m, n, rng)))
        return [r] + [compute_index(c, spec) for spec in indices]

    threads = res.get("threads", _default_threads(), int)
    if threads > 1:
        from concurrent.futures import ThreadPoolExecutor

        with ThreadPoolExecutor(max_workers=threads) as pool:
            rows = list(pool.map(one_row, range(replications)))
    else:
        rows = [one_row(r) for r in range(replications)]

    if fmt == "csv":
        lines = [",".join(columns)]
        lines += [",".join(_fmt_value(v) for v in row) for row in rows]
        text = "\n".join(lines) + "\n"
    else:
        text = json.dumps(
            {"columns": columns, "rows": [[_json_number(v) for v in row] for row in rows]},
            indent=2,
            sort_keys=True,
        ) + "\n"

    config = {
        "m": m, "n": n, "seed": seed, "replications": replications,
        "sampler": sampler, "indices": [str(s) for s in indices], "format": fmt,
    }
    if args.out:
        _write_text(args.out, text)
        _write_manifest(args.out, RunManifest(command="simulate", config=config))
    else:
        sys.stdout.write(text)
    return 0


def _json_number(v):
    if isinstance(v, bool):  # pragma: no cover - defensive
        return v
    if isinstance(v, int):
        return v
    return float(v)


def cmd_theory(args: argparse.Namespace) -> int:
    res = _Resolver(args)
    m = res.get("m", None, int)
    n = res.get("n", None, int)
    if m is None or n is None:
        raise DomainError("theory requires --m and --n")
    value = theory.evaluate(args.index, m, n)
    scaled = res.get("scaled", "none", str)
    if scaled not in ("none", "n2"):
        raise DomainError(f"unknown scaling {scaled!r} (use none or n2)")
    if scaled == "n2":
        if n == 0:
            raise DomainError("cannot scale by n^2 at n = 0")
        value = value.scaled(Fraction(n * n))
    payload = {
        "index": args.index,
        "m": m,
        "n": n,
        "scaled": scaled,
        "value": float(value.value),
        "numerator": str(value.numerator),
        "denominator": str(value.denominator),
        "validity": value.validity.value,
        "source": value.source,
    }
    if args.exact:
        payload["exact"] = f"{value.numerator}/{value.denominator}"
    sys.stdout.write(json.dumps(payload, indent=2, sort_keys=True) + "\n")
    return 0


def cmd_verify(args: argparse.Namespace) -> int:
    res = _Resolver(args)
    suite = res.get("suite", "all", str)
    profile = res.get("tolerance_profile", "default", str)
    threads = res.get("threads", _default_threads(), int)
    seed = res.seed()
    results = run_suite(suite, seed=seed, profile=profile, threads=threads)
    sys.stdout.write(render_table(results) + "\n")
    passed = sum(r.passed for r in results)
    sys.stdout.write(f"{passed}/{len(results)} criteria passed\n")
    report = report_json(suite, seed, profile, results)
    if args.report:
        with open(args.report, "wb") as fh:
            fh.write(report)
        _write_manifest(
            args.report,
            RunManifest(
                command="verify",
                config={"suite": suite, "seed": seed, "tolerance_profile": profile},
                verdicts=[
                    {"criterion": r.cid, "verdict": r.verdict} for r in results
                ],
            ),
        )
    return 0 if passed == len(results) else 1


def cmd_clt(args: argparse.Namespace) -> int:
    res = _Resolver(args)
    m = res.get("m", 200, int)
    n = res.get("n", 5000, int)
    replications = res.get("replications", 500, int)
    bins = res.get("bins", 20, int)
    seed = res.seed()
    out = args.out or "clt_sample.csv"
    summary = run_mc(
        ExperimentConfig(
            m=m, n=n, replications=replications, seed=seed,
            indices=(IndexSpec("zagreb"),),
        )
    )
    z = standardize_zagreb(summary.sample("zagreb"), m, n)
    ks = ks_normality(z)
    jb = jarque_bera(z)

    lines = ["replicate_id,standardized_zagreb"]
    lines += [f"{r},{format(v, '.17g')}" for r, v in enumerate(z)]
    _write_text(out, "\n".join(lines) + "\n")
    config = {"m": m, "n": n, "seed": seed, "replications": replications, "bins": bins}
    _write_manifest(out, RunManifest(command="clt", config=config))

    if args.plot:
        svg = histogram_kde_svg(z, bins=bins)
        _write_text(args.plot, svg)
        _write_manifest(args.plot, RunManifest(command="clt", config=config))

    payload = {
        "m": m,
        "n": n,
        "replications": replications,
        "seed": seed,
        "bins": bins,
        "sample_csv": out,
        "plot_svg": args.plot,
        "sample_mean": float(z.mean()),
        "sample_variance": float(z.var(ddof=1)),
        "ks": {
            "statistic": ks.statistic,
            "critical": ks.critical,
            "alpha": ks.alpha,
            "decision": ks.decision,
        },
        "jarque_bera": {
            "statistic": jb.statistic,
            "critical": jb.critical,
            "alpha": jb.alpha,
            "decision": jb.decision,
        },
    }
    sys.stdout.write(json.dumps(payload, indent=2, sort_keys=True) + "\n")
    return 0


def cmd_oracle(args: argparse.Namespace) -> int:
    res = _Resolver(args)
    m = res.get("m", None, int)
    n = res.get("n", None, int)
    if m is None or n is None:
        raise DomainError("oracle requires --m and --n")
    method = res.get("method", "auto", str)
    resolved = choose_method(m, n, method)
    moments = enumerate_exact(m, n, args.index, method=method)
    payload = {
        "m": m,
        "n": n,
        "index": args.index,
        "method": resolved,
        "mean": f"{moments.mean.numerator}/{moments.mean.denominator}",
        "mean_float": float(moments.mean),
        "second_moment": f"{moments.second_moment.numerator}/{moments.second_moment.denominator}",
        "variance": f"{moments.variance.numerator}/{moments.variance.denominator}",
        "variance_float": float(moments.variance),
        "support_size": moments.support_size,
        "history_count": moments.history_count,
    }
    sys.stdout.write(json.dumps(payload, indent=2, sort_keys=True) + "\n")
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="catlab",
        description="simulation and verification laboratory for random caterpillars",
    )
    parser.add_argument("--version", action="version", version=f"catlab {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p):
        p.add_argument("--config", help="key=value config file")
        p.add_argument("--seed", type=int, help=f"RNG seed (default {DEFAULT_SEED})")

    p_sim = sub.add_parser("simulate", help="sample caterpillars and print index values")
    common(p_sim)
    p_sim.add_argument("--m", type=int, help="spine size (>= 2)")
    p_sim.add_argument("--n", type=int, help="number of leaves to attach")
    p_sim.add_argument("--replications", type=int, help="independent replicates (default 1)")
    p_sim.add_argument("--indices", help=f"comma list (default {DEFAULT_INDICES})")
    p_sim.add_argument("--sampler", choices=["sequential", "direct"])
    p_sim.add_argument("--threads", type=int, help="worker threads (results identical)")
    p_sim.add_argument("--out", help="output file (default stdout)")
    p_sim.add_argument("--format", choices=["csv", "json"])
    p_sim.set_defaults(func=cmd_simulate)

    p_th = sub.add_parser("theory", help="evaluate a closed-form mean/variance/limit")
    common(p_th)
    p_th.add_argument("--index", required=True, choices=sorted(theory.EVALUATORS))
    p_th.add_argument("--m", type=int, required=True)
    p_th.add_argument("--n", type=int, required=True)
    p_th.add_argument("--scaled", choices=["none", "n2"])
    p_th.add_argument("--exact", action="store_true", help="include p/q string")
    p_th.set_defaults(func=cmd_theory)

    p_ver = sub.add_parser("verify", help="run an acceptance-criteria suite")
    common(p_ver)
    p_ver.add_argument("--suite", choices=list(SUITES))
    p_ver.add_argument("--tolerance-profile", dest="tolerance_profile",
                       choices=["default", "strict"])
    p_ver.add_argument("--threads", type=int)
    p_ver.add_argument("--report", help="write the JSON report here")
    p_ver.set_defaults(func=cmd_verify)

    p_clt = sub.add_parser("clt", help="standardized-Zagreb sample, tests, figure")
    common(p_clt)
    p_clt.add_argument("--m", type=int)
    p_clt.add_argument("--n", type=int)
    p_clt.add_argument("--replications", type=int)
    p_clt.add_argument("--bins", type=int)
    p_clt.add_argument("--plot", help="write histogram+KDE SVG here")
    p_clt.add_argument("--out", help="standardized sample CSV (default clt_sample.csv)")
    p_clt.set_defaults(func=cmd_clt)

    p_or = sub.add_parser("oracle", help="exact enumeration moments of an index")
    common(p_or)
    p_or.add_argument("--m", type=int, required=True)
    p_or.add_argument("--n", type=int, required=True)
    p_or.add_argument("--index", required=True)
    p_or.add_argument("--method", choices=["auto", "histories", "compositions"])
    p_or.set_defaults(func=cmd_oracle)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except (DomainError, ValidityError, ValueError) as exc:
        print(f"catlab: error: {exc}", file=sys.stderr)
        return 2
    except ResourceLimitError as exc:
        print(f"catlab: resource guard: {exc}", file=sys.stderr)
        return 3


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
