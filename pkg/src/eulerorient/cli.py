"""Command-line driver: ``compute``, ``oracle`` and ``analyze``."""
from __future__ import annotations

import argparse
import logging
import sys
from pathlib import Path

from . import __version__
from .engine import MODELS, IntegerSeries, compute_exact, compute_series, write_manifest
from .residues import PRIME_LIMIT

log = logging.getLogger("eulerorient")

EXIT_OK = 0
EXIT_CONFIG = 2
EXIT_MISMATCH = 3
EXIT_NUMERIC = 4


class ConfigError(ValueError):
    pass


def _orders(text: str) -> tuple[int, ...]:
    try:
        out = tuple(int(t) for t in text.split(","))
    except ValueError:
        raise argparse.ArgumentTypeError(f"bad order list {text!r}")
    if not out or any(k < 1 for k in out):
        raise argparse.ArgumentTypeError("orders must be positive integers")
    return out


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="eulerorient", description=__doc__)
    ap.add_argument("--version", action="version", version=__version__)
    ap.add_argument("-v", "--verbose", action="store_true")
    sub = ap.add_subparsers(dest="command", required=True)

    c = sub.add_parser("compute", help="exact series coefficients via per-prime runs and CRT")
    c.add_argument("--model", choices=MODELS, default="general")
    c.add_argument("--terms", type=int, required=True,
                   help="highest index: edges (general) or vertices (fourvalent)")
    c.add_argument("--primes", type=int, default=None, help="prime count (default from a size bound)")
    c.add_argument("--prime-bound", type=int, default=PRIME_LIMIT,
                   help="use the largest primes below this bound")
    c.add_argument("--exact", action="store_true", help="integer arithmetic instead of primes")
    c.add_argument("--slack", type=int, default=1, help="extra catalytic degree headroom")
    c.add_argument("--out", type=Path, default=Path("."))
    c.add_argument("--no-dumps", action="store_true", help="skip per-prime residue files")
    c.add_argument("--manifest", action="store_true", help="write manifest.json with hashes")

    o = sub.add_parser("oracle", help="compare the engine with brute-force enumeration")
    o.add_argument("--model", choices=MODELS + ("eulerian",), default="general")
    o.add_argument("--oracle-max", type=int, default=None,
                   help="largest n (edges) or v (vertices) to check")

    a = sub.add_parser("analyze", help="asymptotic analysis of a series file")
    a.add_argument("series", nargs="?", type=Path, help="IntegerSeries JSON")
    a.add_argument("--test-series", action="store_true", help="analyse the built-in test series")
    a.add_argument("--terms", type=int, default=None,
                   help="coefficients to use (test series length, or a prefix of the file)")
    a.add_argument("--mu", default="4pi", help="4pi, 4sqrt3pi or a decimal")
    a.add_argument("--extend", type=int, default=None, metavar="HORIZON")
    a.add_argument("--orders", type=_orders, default=(2, 3))
    a.add_argument("--precision", type=int, default=250)
    a.add_argument("--window", type=int, default=100, help="tail length for intercept extrapolation")
    a.add_argument("--out", type=Path, default=Path("analysis"))
    a.add_argument("--manifest", action="store_true")
    return ap


def cmd_compute(args) -> int:
    if args.terms < 1:
        raise ConfigError("--terms must be at least 1")
    args.out.mkdir(parents=True, exist_ok=True)
    if args.exact:
        series = compute_exact(args.model, args.terms, args.slack)
    else:
        dumps = None if args.no_dumps else args.out / "residues"
        series = compute_series(args.model, args.terms, args.primes, args.prime_bound,
                                dump_dir=dumps, slack=args.slack)
    path = series.write(args.out / f"{args.model}.json")
    print(f"wrote {path} ({series.n_max + 1} coefficients)")
    if args.manifest:
        outputs = [path]
        if not args.exact and not args.no_dumps:
            outputs += sorted((args.out / "residues").glob(f"{args.model}_*.txt"))
        config = {"command": "compute", "model": args.model, "terms": args.terms,
                  "primes": series.primes, "prime_bound": args.prime_bound,
                  "exact": args.exact, "slack": args.slack, "version": __version__}
        print(f"wrote {write_manifest(args.out / 'manifest.json', config, outputs)}")
    return EXIT_OK


def cmd_oracle(args) -> int:
    from . import oracle

    model = args.model
    limit = args.oracle_max
    if model == "general":
        limit = 5 if limit is None else limit
        engine = compute_exact("general", limit).coefficients
        rows = [(n, engine[n], oracle.oracle_U(n)) for n in range(1, limit + 1)]
    elif model == "fourvalent":
        limit = 2 if limit is None else limit
        engine = compute_exact("fourvalent", limit).coefficients
        rows = [(v, engine[v], oracle.oracle_A(v)) for v in range(1, limit + 1)]
    else:
        from .analysis import eulerian_map_series
        limit = 4 if limit is None else limit
        closed = eulerian_map_series(limit)
        rows = [(n, closed[n], oracle.oracle_eulerian_maps(n)) for n in range(limit + 1)]
    print("n\tengine\toracle")
    bad = 0
    for n, e, o in rows:
        flag = "" if e == o else "\tMISMATCH"
        bad += e != o
        print(f"{n}\t{e}\t{o}{flag}")
    return EXIT_MISMATCH if bad else EXIT_OK


def cmd_analyze(args) -> int:
    from .analysis import parse_mu, set_precision, test_series
    from .analysis.report import analyze

    set_precision(args.precision)
    mu = parse_mu(args.mu)
    if args.test_series:
        coeffs = test_series(mu, (args.terms or 50) - 1)
    elif args.series is not None:
        coeffs = IntegerSeries.read(args.series).coefficients
        if args.terms:
            coeffs = coeffs[: args.terms]
    else:
        raise ConfigError("give a series file or --test-series")
    res = analyze(coeffs, mu, args.out, extend=args.extend, orders=args.orders,
                  window=args.window)
    sys.stdout.write(res.summary())
    if args.manifest:
        config = {"command": "analyze", "series": str(args.series), "test_series": args.test_series,
                  "terms": args.terms, "mu": args.mu, "extend": args.extend,
                  "orders": list(args.orders), "precision": args.precision,
                  "window": args.window, "version": __version__}
        write_manifest(args.out / "manifest.json", config, res.files)
    return EXIT_OK


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    logging.basicConfig(level=logging.DEBUG if args.verbose else logging.WARNING,
                        format="%(levelname)s %(name)s: %(message)s")
    handlers = {"compute": cmd_compute, "oracle": cmd_oracle, "analyze": cmd_analyze}
    try:
        return handlers[args.command](args)
    except (ValueError, FileNotFoundError, KeyError) as exc:
        # bad parameters surface as ValueError (incl. ConfigError, JSON errors)
        print(f"configuration error: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    except ArithmeticError as exc:
        print(f"numeric failure ({type(exc).__name__}): {exc}", file=sys.stderr)
        return EXIT_NUMERIC


if __name__ == "__main__":
    sys.exit(main())
