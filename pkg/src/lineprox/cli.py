"""Command-line front-end.

Modes:

* ``solve``        read a points file, print optimal weights, Q and the
                   optimality certificate (text or JSON);
* ``pieces-stats`` piece-count statistics of the explicit chain over random
                   instances (average / maximum of the per-trial peak);
* ``bench``        wall-clock scaling of both backends over a size ladder;
* ``generate``     write a random points file.

Gap distributions follow the experiment setup: ``small-uniform`` draws
integer gaps from {1..50}, ``large-uniform`` from {1..10000}, ``gaussian``
from N(100, 30) redrawn until >= 1.  All randomness comes from
``numpy.random.default_rng`` seeded per trial via ``SeedSequence.spawn``,
so a (seed, config) pair reproduces bit-identical outputs everywhere.

Exit codes: 0 success, 1 usage error, 2 parse error, 3 internal invariant
violation (for example an invalid certificate).
"""

from __future__ import annotations

import argparse
import json
import sys
import time
from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from .explicit_chain import build_chain
from .instance import Instance, build_instance, instance_from_gaps
from .oracle import oracle_consecutive
from .solver import SolveResult, solve

DISTRIBUTIONS = ("small-uniform", "large-uniform", "gaussian")


class ParseError(ValueError):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):  # usage errors exit 1, not argparse's 2
        self.print_usage(sys.stderr)
        print(f"{self.prog}: error: {message}", file=sys.stderr)
        raise SystemExit(1)


def parse_points(path: str, exact: bool = False) -> list:
    """One coordinate per line; blank lines and '#' comments are skipped.

    Accepts decimal literals and 'p/q' rationals.  In exact mode every
    token becomes a Fraction (decimals convert exactly).
    """
    points = []
    with open(path) as fh:
        for lineno, raw in enumerate(fh, start=1):
            tok = raw.split("#", 1)[0].strip()
            if not tok:
                continue
            try:
                val = Fraction(tok) if exact else float(Fraction(tok))
            except (ValueError, ZeroDivisionError) as exc:
                raise ParseError(f"{path}:{lineno}: cannot parse {tok!r}") from exc
            points.append(val)
    if len(points) < 2:
        raise ParseError(f"{path}: need at least 2 points")
    return points


def generate_gaps(n: int, dist: str, rng: np.random.Generator, exact: bool) -> list:
    """Draw n-1 gaps i.i.d. from the named distribution."""
    if dist == "small-uniform":
        draws = [int(v) for v in rng.integers(1, 51, size=n - 1)]
    elif dist == "large-uniform":
        draws = [int(v) for v in rng.integers(1, 10001, size=n - 1)]
    elif dist == "gaussian":
        draws = []
        while len(draws) < n - 1:
            v = float(rng.normal(100.0, 30.0))
            if v >= 1.0:  # redraw nonpositive/small tail (~4.3 sigma)
                draws.append(v)
    else:
        raise ValueError(f"unknown distribution {dist!r}")
    if exact:
        return [Fraction(v) for v in draws]
    return [float(v) for v in draws]


def generate_instance(n: int, dist: str, seed: int, exact: bool = False) -> Instance:
    rng = np.random.default_rng(seed)
    return instance_from_gaps(generate_gaps(n, dist, rng, exact), exact=exact)


def trial_rngs(seed: int, trials: int) -> list:
    return [np.random.default_rng(s) for s in np.random.SeedSequence(seed).spawn(trials)]


@dataclass(frozen=True)
class PieceStats:
    n: int
    dist: str
    trials: int
    counts: tuple
    avg: float
    max: int


def run_pieces_stats(n: int, dist: str, trials: int, seed: int) -> PieceStats:
    """Peak piece count of the explicit chain, per trial."""
    counts = []
    for rng in trial_rngs(seed, trials):
        inst = instance_from_gaps(generate_gaps(n, dist, rng, exact=False))
        counts.append(build_chain(inst).max_pieces)
    return PieceStats(
        n=n,
        dist=dist,
        trials=trials,
        counts=tuple(counts),
        avg=sum(counts) / len(counts),
        max=max(counts),
    )


def run_bench(
    n_max: int, dist: str, seed: int, backends=("explicit", "implicit")
) -> list:
    """Time solve() (without certification) over a doubling ladder of n.

    Returns rows (backend, n, seconds).  Instance generation is excluded
    from the timed region.
    """
    sizes = []
    n = 100
    while n <= n_max:
        sizes.append(n)
        n *= 2
    rows = []
    for size in sizes:
        inst = generate_instance(size, dist, seed)
        for backend in backends:
            t0 = time.perf_counter()
            solve(inst, backend=backend, certify=False)
            rows.append((backend, size, time.perf_counter() - t0))
    return rows


def _fmt(v, exact: bool) -> str:
    return str(v) if exact else repr(float(v))


def emit_result(res: SolveResult, fmt: str, exact: bool) -> str:
    cert = res.certificate
    if fmt == "json":
        def jval(v):
            return str(v) if exact else float(v)

        payload = {
            "weights": [jval(w) for w in res.weights],
            "q": jval(res.q_value),
            "certificate": {
                "valid": cert.valid,
                "stationarity_residual": jval(cert.stationarity_residual),
                "max_complementarity_violation": jval(
                    cert.max_complementarity_violation
                ),
                "min_multiplier": jval(cert.min_multiplier),
                "multipliers": [jval(v) for v in cert.multipliers],
            },
            "backend": res.backend,
        }
        if res.max_pieces is not None:
            payload["max_pieces"] = res.max_pieces
        return json.dumps(payload)
    lines = [f"w[{i + 1}] = {_fmt(w, exact)}" for i, w in enumerate(res.weights)]
    lines.append(f"Q = {_fmt(res.q_value, exact)}")
    lines.append(
        f"certificate: {'VALID' if cert.valid else 'INVALID'} "
        f"(stationarity {_fmt(cert.stationarity_residual, exact)}, "
        f"complementarity {_fmt(cert.max_complementarity_violation, exact)}, "
        f"min multiplier {_fmt(cert.min_multiplier, exact)})"
    )
    return "\n".join(lines)


def _write_output(text: str, out: str | None) -> None:
    if out:
        with open(out, "w") as fh:
            fh.write(text if text.endswith("\n") else text + "\n")
    else:
        print(text)


def _stats_output(stats: PieceStats, out: str | None) -> None:
    if out and out.endswith(".csv"):
        lines = ["n,dist,trials,avg,max"]
        lines.append(f"{stats.n},{stats.dist},{stats.trials},{stats.avg},{stats.max}")
        _write_output("\n".join(lines), out)
        return
    text = (
        f"{'n':>8} {'dist':>14} {'trials':>7} {'avg':>9} {'max':>5}\n"
        f"{stats.n:>8} {stats.dist:>14} {stats.trials:>7} {stats.avg:>9.3f} {stats.max:>5}"
    )
    _write_output(text, out)


def _bench_output(rows: list, out: str | None) -> None:
    if out and out.endswith(".csv"):
        lines = ["backend,n,seconds"]
        lines += [f"{b},{n},{t:.6f}" for b, n, t in rows]
        _write_output("\n".join(lines), out)
        return
    lines = [f"{'backend':>9} {'n':>7} {'seconds':>10}"]
    lines += [f"{b:>9} {n:>7} {t:>10.4f}" for b, n, t in rows]
    _write_output("\n".join(lines), out)


def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="lineprox", description=__doc__.splitlines()[0])
    p.add_argument("--mode", choices=("solve", "pieces-stats", "bench", "generate"),
                   default="solve")
    p.add_argument("--backend", choices=("explicit", "implicit"), default="explicit")
    p.add_argument("--arith", choices=("float", "exact"), default="float")
    p.add_argument("--n", type=int, default=100, help="points per instance")
    p.add_argument("--trials", type=int, default=1000)
    p.add_argument("--dist", choices=DISTRIBUTIONS, default="small-uniform")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--in", dest="infile", metavar="PATH", help="points file to solve")
    p.add_argument("--out", metavar="PATH", help="output file (.csv for CSV tables)")
    p.add_argument("--format", choices=("text", "json"), default="text")
    p.add_argument("--dump-plf", action="store_true",
                   help="dump the explicit chain pieces before the result")
    p.add_argument("--oracle", action="store_true",
                   help="cross-check against the brute-force oracle (n <= 10)")
    return p


def _cmd_solve(args) -> int:
    if not args.infile:
        print("lineprox: error: --mode solve requires --in", file=sys.stderr)
        return 1
    exact = args.arith == "exact"
    points = parse_points(args.infile, exact=exact)
    inst = build_instance(points, exact=exact)
    if args.dump_plf:
        if args.backend != "explicit":
            print("lineprox: error: --dump-plf needs --backend explicit",
                  file=sys.stderr)
            return 1
        if inst.n_points >= 3:
            chain = build_chain(inst)
            for f in chain.functions:
                print(f"# R_{f.level}")
                print(f.dump())
    res = solve(inst, backend=args.backend)
    if args.oracle:
        ref = oracle_consecutive(inst)
        print(f"# oracle Q = {_fmt(ref.q_value, exact)}", file=sys.stderr)
    _write_output(emit_result(res, args.format, exact), args.out)
    if not res.certificate.valid:
        print("lineprox: error: optimality certificate is INVALID", file=sys.stderr)
        return 3
    return 0


def _cmd_generate(args) -> int:
    if args.n < 2:
        print("lineprox: error: --n must be at least 2", file=sys.stderr)
        return 1
    exact = args.arith == "exact"
    rng = np.random.default_rng(args.seed)
    gaps = generate_gaps(args.n, args.dist, rng, exact)
    coords = [gaps[0] - gaps[0]]
    for g in gaps:
        coords.append(coords[-1] + g)
    _write_output("\n".join(_fmt(c, exact) for c in coords), args.out)
    return 0


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        if args.mode == "solve":
            return _cmd_solve(args)
        if args.mode == "generate":
            return _cmd_generate(args)
        if args.mode == "pieces-stats":
            if args.n < 3:
                print("lineprox: error: pieces-stats needs --n >= 3", file=sys.stderr)
                return 1
            _stats_output(
                run_pieces_stats(args.n, args.dist, args.trials, args.seed), args.out
            )
            return 0
        if args.mode == "bench":
            _bench_output(run_bench(args.n, args.dist, args.seed), args.out)
            return 0
        raise AssertionError(args.mode)
    except ParseError as exc:
        print(f"lineprox: parse error: {exc}", file=sys.stderr)
        return 2
    except (ValueError, OSError) as exc:
        print(f"lineprox: error: {exc}", file=sys.stderr)
        return 1
    except RuntimeError as exc:
        print(f"lineprox: internal error: {exc}", file=sys.stderr)
        return 3


if __name__ == "__main__":
    sys.exit(main())
