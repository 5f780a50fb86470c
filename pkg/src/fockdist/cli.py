"""Command-line front end: single distances, distance tables, verification suites.

Exit codes: 0 all good, 1 usage or configuration error, 2 a verification
check or cross-method comparison failed.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import os
import sys
import warnings
from dataclasses import asdict, dataclass

import numpy as np

from . import distance as dist
from . import spectral
from .exceptions import ConfigurationError
from .fock import FockIndex, build_basis

__all__ = ["RunConfig", "main"]

EXIT_OK = 0
EXIT_USAGE = 1
EXIT_CHECK_FAILED = 2

# pairwise tolerances for --method all
METHOD_TOLERANCES = {
    frozenset(("closed", "ansatz")): 1e-6,
    frozenset(("closed", "numeric")): 1e-4,
    frozenset(("ansatz", "numeric")): 1e-4,
}


@dataclass
class RunConfig:
    hbar: float = 1.0
    cutoff: int = 10
    support_pad: int = 2
    seed: int = 42
    output_format: str = "text"

    def ensure_cutoff(self, max_index: int) -> "RunConfig":
        """Raise the cutoff when it cannot hold the padded window, with a warning."""
        needed = max_index + self.support_pad + 2
        if self.cutoff < needed:
            warnings.warn(
                f"cutoff {self.cutoff} too small for states up to {max_index}; "
                f"raising to {needed}",
                stacklevel=2,
            )
            return RunConfig(self.hbar, needed, self.support_pad, self.seed,
                             self.output_format)
        return self


def _parse_state(text: str) -> FockIndex:
    parts = text.split(",")
    if len(parts) != 2:
        raise ValueError(f"state must be 'n1,n2', got {text!r}")
    try:
        n1, n2 = int(parts[0]), int(parts[1])
    except ValueError as exc:
        raise ValueError(f"state must be two integers, got {text!r}") from exc
    return FockIndex(n1, n2)


def _result_record(pair: dist.StatePair, res: dist.DistanceResult) -> dict:
    rec = {
        "first": [pair.first.n1, pair.first.n2],
        "second": [pair.second.n1, pair.second.n2],
        "value": res.value,
        "method": res.method,
        "coefficients": list(res.coefficients) if res.coefficients else None,
        "saturated": res.saturated,
        "truncation_safe": res.truncation_safe,
        "seed": res.seed,
    }
    return rec


def _emit_json(config: RunConfig, results: list[dict], checks: list[dict], out) -> None:
    doc = {"config": asdict(config), "results": results, "checks": checks}
    json.dump(doc, out, sort_keys=True, indent=2)
    out.write("\n")


def cmd_distance(args, config: RunConfig, out) -> int:
    try:
        a = _parse_state(args.a)
        b = _parse_state(args.b)
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        print("usage: distance --a N1,N2 --b N1,N2 [--method closed|ansatz|numeric|all]",
              file=sys.stderr)
        return EXIT_USAGE
    pair = dist.StatePair(a, b)
    config = config.ensure_cutoff(pair.max_index)

    methods = ["closed", "ansatz", "numeric"] if args.method == "all" else [args.method]
    results: dict[str, dist.DistanceResult] = {}
    for method in methods:
        if method == "closed":
            results[method] = dist.closed_form_distance(pair, config.hbar)
        elif method == "ansatz":
            if pair.identical:
                results[method] = dist.DistanceResult(0.0, "ansatz")
            else:
                results[method] = dist.ansatz_distance(pair, config.hbar)
        else:
            if pair.identical:
                results[method] = dist.DistanceResult(0.0, "numeric")
            else:
                basis = build_basis(config.cutoff)
                results[method] = dist.numeric_distance(
                    pair, config.hbar, basis, config.support_pad, seed=config.seed)

    checks = []
    exit_code = EXIT_OK
    names = list(results)
    for i, mi in enumerate(names):
        for mj in names[i + 1:]:
            tol = METHOD_TOLERANCES[frozenset((mi, mj))]
            dev = abs(results[mi].value - results[mj].value)
            ok = dev <= tol
            checks.append({
                "name": f"{mi}_vs_{mj}",
                "pass": ok,
                "detail": f"deviation {dev:.3e} (tolerance {tol:.0e})",
            })
            if not ok:
                exit_code = EXIT_CHECK_FAILED

    records = [_result_record(pair, results[m]) for m in names]
    if config.output_format == "json":
        _emit_json(config, records, checks, out)
    else:
        for m in names:
            out.write(f"{m:8s} {results[m].value:.10f}\n")
        for c in checks:
            status = "ok" if c["pass"] else "FAIL"
            out.write(f"{c['name']:20s} {status:4s} {c['detail']}\n")
    return exit_code


def cmd_table(args, config: RunConfig, out) -> int:
    if args.max_level < 1:
        print("error: --max-level must be >= 1", file=sys.stderr)
        return EXIT_USAGE
    states = [
        FockIndex(n1, n2)
        for n1 in range(args.max_level + 1)
        for n2 in range(args.max_level + 1 - n1)
    ]
    config = config.ensure_cutoff(max(max(s.n1, s.n2) for s in states))
    basis = build_basis(config.cutoff) if args.method == "numeric" else None

    rows = []
    for i, s1 in enumerate(states):
        for s2 in states[i + 1:]:
            pair = dist.StatePair(s1, s2)
            if args.method == "closed":
                value = dist.closed_form_distance(pair, config.hbar).value
            else:
                value = dist.numeric_distance(
                    pair, config.hbar, basis, config.support_pad, seed=config.seed).value
            rows.append((s1.n1, s1.n2, s2.n1, s2.n2, value, pair.branch()))
    rows.sort(key=lambda r: r[:4])

    if config.output_format == "json":
        records = [
            {"first": [r[0], r[1]], "second": [r[2], r[3]], "value": r[4],
             "method": args.method, "coefficients": None, "saturated": None,
             "truncation_safe": True, "seed": config.seed, "branch": r[5]}
            for r in rows
        ]
        _emit_json(config, records, [], out)
    else:
        writer = csv.writer(out, lineterminator="\n")
        writer.writerow(["k", "l", "m", "n", "distance", "branch"])
        for r in rows:
            writer.writerow([r[0], r[1], r[2], r[3], f"{r[4]:.12f}", r[5]])
    return EXIT_OK


def _suite_metric(config: RunConfig) -> list[dict]:
    checks = []
    states = [FockIndex(a, b) for a in range(6) for b in range(6)]
    worst_sym = 0.0
    for s1 in states:
        for s2 in states:
            d12 = dist.closed_form_distance(dist.StatePair(s1, s2), config.hbar).value
            d21 = dist.closed_form_distance(dist.StatePair(s2, s1), config.hbar).value
            worst_sym = max(worst_sym, abs(d12 - d21))
    checks.append({"name": "symmetry", "pass": worst_sym == 0.0,
                   "detail": f"max |d(x,y)-d(y,x)| = {worst_sym:.3e} over indices <= 5"})

    identity_ok = all(
        (dist.closed_form_distance(dist.StatePair(s1, s2), config.hbar).value == 0.0)
        == (s1 == s2)
        for s1 in states for s2 in states
    )
    checks.append({"name": "identity", "pass": identity_ok,
                   "detail": "d = 0 exactly when states coincide"})

    violations = 0
    for s1 in states:
        for s2 in states:
            for s3 in states:
                d13 = dist.closed_form_distance(dist.StatePair(s1, s3), config.hbar).value
                d12 = dist.closed_form_distance(dist.StatePair(s1, s2), config.hbar).value
                d23 = dist.closed_form_distance(dist.StatePair(s2, s3), config.hbar).value
                if d13 > d12 + d23 + 1e-12:
                    violations += 1
    checks.append({"name": "triangle", "pass": violations == 0,
                   "detail": f"{violations} violations over {len(states) ** 3} triples"})
    return checks


def _suite_saturation(config: RunConfig) -> list[dict]:
    checks = []
    basis = build_basis(max(config.cutoff, 4 + 2 + 1))
    worst_adj = 0.0
    for m in range(4):
        for n in range(5):
            e = dist.optimal_element_adjacent(m, n, config.hbar, basis)
            worst_adj = max(worst_adj, abs(e.ball_norm(config.hbar) - 1.0))
    checks.append({
        "name": "saturation_adjacent", "pass": worst_adj <= 1e-8,
        "detail": f"max |ball_norm - 1| = {worst_adj:.6f} over adjacent elements, indices <= 4",
    })
    worst_far = 0.0
    states = [FockIndex(a, b) for a in range(5) for b in range(5)]
    for i, s1 in enumerate(states):
        for s2 in states[i + 1:]:
            pair = dist.StatePair(s1, s2)
            if pair.separation < 2:
                continue
            e = dist.optimal_element_far(pair, config.hbar, basis)
            worst_far = max(worst_far, abs(e.ball_norm(config.hbar) - 1.0))
    checks.append({
        "name": "saturation_far", "pass": worst_far <= 1e-8,
        "detail": f"max |ball_norm - 1| = {worst_far:.6f} over far elements, indices <= 4",
    })
    return checks


def _suite_oracle(config: RunConfig) -> list[dict]:
    states = [FockIndex(a, b) for a in range(4) for b in range(4)]
    basis = build_basis(max(config.cutoff, 3 + config.support_pad + 2))
    worst = 0.0
    worst_pair = None
    for i, s1 in enumerate(states):
        for s2 in states[i + 1:]:
            pair = dist.StatePair(s1, s2)
            closed = dist.closed_form_distance(pair, config.hbar).value
            numeric = dist.numeric_distance(
                pair, config.hbar, basis, config.support_pad, seed=config.seed).value
            dev = abs(closed - numeric)
            if dev > worst:
                worst, worst_pair = dev, pair
    return [{
        "name": "oracle_vs_closed_form", "pass": worst <= 1e-4,
        "detail": f"max |numeric - closed| = {worst:.6f} at {worst_pair}",
    }]


def _suite_asymptotic(config: RunConfig) -> list[dict]:
    ratios = [dist.asymptotic_check(n, config.hbar) for n in (10, 100, 1000, 10000)]
    monotone = all(r2 > r1 for r1, r2 in zip(ratios, ratios[1:]))
    inside = 0.99 <= ratios[-1] <= 1.0
    return [
        {"name": "asymptotic_window", "pass": inside,
         "detail": f"ratio at n=1e4 is {ratios[-1]:.6f}"},
        {"name": "asymptotic_monotone", "pass": monotone,
         "detail": "ratios " + ", ".join(f"{r:.6f}" for r in ratios)},
    ]


def _suite_cliff(config: RunConfig) -> list[dict]:
    g = spectral.build_gammas().as_tuple()
    eye = np.eye(4)
    worst = 0.0
    for k in range(4):
        for l in range(4):
            anti = g[k] @ g[l] + g[l] @ g[k]
            target = 2 * eye if k == l else np.zeros((4, 4))
            worst = max(worst, float(np.max(np.abs(anti - target))))
    return [{"name": "clifford", "pass": worst == 0.0,
             "detail": f"max deviation over 16 anticommutators = {worst:.3e}"}]


def _suite_phase_rep(config: RunConfig) -> list[dict]:
    basis = build_basis(min(config.cutoff, 4))  # superoperators scale as dim^2
    checks = []
    for mu, nu in ((config.hbar, config.hbar), (config.hbar / 2, config.hbar / 2)):
        params = spectral.PhaseSpaceParams(config.hbar, mu, nu)
        report = spectral.verify_phase_space_rep(basis, params)
        checks.append({
            "name": f"phase_rep_mu_{mu}_nu_{nu}",
            "pass": report.passed(1e-12),
            "detail": f"max deviation {report.max_deviation:.3e}",
        })
    return checks


SUITES = {
    "metric": _suite_metric,
    "saturation": _suite_saturation,
    "oracle": _suite_oracle,
    "asymptotic": _suite_asymptotic,
    "cliff": _suite_cliff,
    "phase_rep": _suite_phase_rep,
}


def cmd_verify(args, config: RunConfig, out) -> int:
    if args.suite not in SUITES:
        print(f"error: unknown suite {args.suite!r}; choose from {', '.join(SUITES)}",
              file=sys.stderr)
        return EXIT_USAGE
    checks = SUITES[args.suite](config)
    if config.output_format == "json":
        _emit_json(config, [], checks, out)
    else:
        for c in checks:
            status = "PASS" if c["pass"] else "FAIL"
            out.write(f"[{status}] {c['name']}: {c['detail']}\n")
    return EXIT_OK if all(c["pass"] for c in checks) else EXIT_CHECK_FAILED


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="fockdist",
        description="Distances between two-mode oscillator Fock states",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def add_common(p):
        p.add_argument("--hbar", type=float, default=1.0)
        p.add_argument("--cutoff", type=int, default=10)
        p.add_argument("--pad", type=int, default=2)
        p.add_argument("--seed", type=int, default=None)
        p.add_argument("--format", choices=("json", "csv", "text"), default="text")
        p.add_argument("--out", default=None, help="output path (default stdout)")

    p_dist = sub.add_parser("distance", help="distance between two states")
    p_dist.add_argument("--a", required=True, help="first state as n1,n2")
    p_dist.add_argument("--b", required=True, help="second state as n1,n2")
    p_dist.add_argument("--method", choices=("closed", "ansatz", "numeric", "all"),
                        default="closed")
    add_common(p_dist)

    p_table = sub.add_parser("table", help="all pairwise distances up to a level")
    p_table.add_argument("--max-level", type=int, required=True)
    p_table.add_argument("--method", choices=("closed", "numeric"), default="closed")
    add_common(p_table)

    p_verify = sub.add_parser("verify", help="run a verification suite")
    p_verify.add_argument("--suite", required=True)
    add_common(p_verify)

    return parser


def main(argv=None) -> int:
    parser = _build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_USAGE if exc.code not in (0, None) else EXIT_OK

    seed = args.seed
    if seed is None:
        env = os.environ.get("SDK_SEED")
        seed = int(env) if env is not None else 42

    config = RunConfig(
        hbar=args.hbar,
        cutoff=args.cutoff,
        support_pad=args.pad,
        seed=seed,
        output_format=args.format,
    )
    if config.hbar <= 0:
        print("error: --hbar must be positive", file=sys.stderr)
        return EXIT_USAGE
    if config.cutoff < 1:
        print("error: --cutoff must be >= 1", file=sys.stderr)
        return EXIT_USAGE

    handlers = {"distance": cmd_distance, "table": cmd_table, "verify": cmd_verify}
    try:
        if args.out:
            try:
                stream = open(args.out, "w")
            except OSError as exc:
                print(f"error: cannot write {args.out}: {exc}", file=sys.stderr)
                return EXIT_USAGE
            with stream:
                return handlers[args.command](args, config, stream)
        return handlers[args.command](args, config, sys.stdout)
    except ConfigurationError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
