"""Command-line front end.

Exit codes: 0 all consistent, 1 something refuted, 2 inconclusive or over
budget, 3 usage/parse error or rejected preconditions.
"""

from __future__ import annotations

import argparse
import logging
import os
import sys
import time
import warnings

from .corpus import read_corpus, run_corpus
from .experiments import EXIT_CODES, Options, run_experiment
from .field import FieldError, FieldSpec
from .report import build_report, render
from .ringfile import RingSpecError, parse_ring_string, read_ring_file

USAGE_EXIT = 3
U64 = 2**64


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(USAGE_EXIT, f"{self.prog}: error: {message}\n")


def _seed(text: str) -> int:
    try:
        v = int(text, 0)
    except ValueError:
        raise argparse.ArgumentTypeError(f"seed must be an unsigned 64-bit integer, got {text!r}")
    if not 0 <= v < U64:
        raise argparse.ArgumentTypeError("seed out of u64 range")
    return v


def _field(text: str) -> FieldSpec:
    try:
        return FieldSpec.parse(text)
    except FieldError as exc:
        raise argparse.ArgumentTypeError(str(exc))


def _primes(text: str):
    try:
        return tuple(int(p) for p in text.split(",") if p.strip())
    except ValueError:
        raise argparse.ArgumentTypeError(f"bad prime list {text!r}")


def _common() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(add_help=False)
    g = p.add_argument_group("global options")
    g.add_argument("--field", type=_field, default=None, help="q or p=<prime> (default p=32003)")
    default_seed = os.environ.get("CORELAB_SEED", "0")
    g.add_argument("--seed", type=_seed, default=None,
                   help=f"master seed (default $CORELAB_SEED or 0; now {default_seed})")
    g.add_argument("--samples", type=int, default=16, help="minimum Monte-Carlo samples")
    g.add_argument("--window", type=int, default=8, help="stabilization window")
    g.add_argument("--max-samples", type=int, default=256)
    g.add_argument("--rmax", type=int, default=20, help="reduction-number budget")
    g.add_argument("--degree-cap", type=int, default=None)
    g.add_argument("--jobs", type=int, default=1, help="worker processes for sampling")
    g.add_argument("--stats", action="store_true", help="include timings in the report")
    g.add_argument("--out", default=None, help="write the report here instead of stdout")
    g.add_argument("--format", choices=("json", "text"), default="json")
    g.add_argument("-v", "--verbose", action="store_true")
    return p


def _ring_args(p: argparse.ArgumentParser, need_N: bool = False):
    src = p.add_mutually_exclusive_group(required=True)
    src.add_argument("--ring", help='ring string, e.g. "k[a:2,b:3]/(b^2-a^3)"')
    src.add_argument("--ring-file", help="ring file (field/vars/rels or recipe)")
    p.add_argument("--N", type=int, required=need_N, default=None)


def build_parser() -> argparse.ArgumentParser:
    common = _common()
    ap = _Parser(prog="corelab", description="Cores and graded cores of ideals, computed exactly.")
    ap.add_argument("--version", action="version", version=f"corelab {__import__('corelab').__version__}")
    sub = ap.add_subparsers(dest="command", required=True, parser_class=_Parser)

    p = sub.add_parser("gb", parents=[common], help="reduced Groebner basis of (polys) + relations")
    _ring_args(p)
    p.add_argument("polys", nargs="*")

    for name, text in (("hilbert", "Hilbert series and invariants from it"),
                       ("invariants", "a-invariant, CM, Gorenstein and level certificates")):
        p = sub.add_parser(name, parents=[common], help=text)
        _ring_args(p)

    p = sub.add_parser("core", parents=[common], help="Monte-Carlo core of m^N or of --ideal")
    _ring_args(p)
    p.add_argument("--ideal", nargs="+", default=(), help="equal-degree generators")

    p = sub.add_parser("grcore", parents=[common], help="Monte-Carlo graded core of S_{>=N}")
    _ring_args(p, need_N=True)

    p = sub.add_parser("verify", help="check a core formula")
    vsub = p.add_subparsers(dest="which", required=True, parser_class=_Parser)
    for name in ("standard", "sandwich", "dim1"):
        q = vsub.add_parser(name, parents=[common])
        _ring_args(q, need_N=True)

    p = sub.add_parser("charscan", parents=[common], help="standard formula across characteristics")
    _ring_args(p, need_N=True)
    p.add_argument("--primes", type=_primes, default=(5, 97, 32003))
    p.add_argument("--no-rationals", action="store_true")

    p = sub.add_parser("corpus", help="corpus files")
    csub = p.add_subparsers(dest="action", required=True, parser_class=_Parser)
    q = csub.add_parser("run", parents=[common])
    q.add_argument("file")
    q = csub.add_parser("json", help="canonical JSON rendering of a corpus file")
    q.add_argument("file")
    return ap


def _load_ring(args):
    if args.ring_file:
        decl = read_ring_file(args.ring_file)
        return decl.build(args.field, args.seed)
    return parse_ring_string(args.ring, args.field or FieldSpec())


def _options(args) -> Options:
    return Options(
        N=getattr(args, "N", None),
        seed=args.seed,
        samples=args.samples,
        window=args.window,
        max_samples=args.max_samples,
        rmax=args.rmax,
        degree_cap=args.degree_cap,
        jobs=args.jobs,
        primes=getattr(args, "primes", (5, 97, 32003)),
        ideal=tuple(getattr(args, "ideal", ()) or getattr(args, "polys", ()) or ()),
        rationals=not getattr(args, "no_rationals", False),
    )


def _emit(text: str, out: str | None):
    if out:
        with open(out, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def main(argv=None) -> int:
    ap = build_parser()
    args = ap.parse_args(argv)
    logging.basicConfig(
        level=logging.INFO if getattr(args, "verbose", False) else logging.WARNING,
        format="%(levelname)s %(name)s: %(message)s",
    )
    if args.command == "corpus" and args.action == "json":
        try:
            sys.stdout.write(read_corpus(args.file).to_json())
        except (OSError, RingSpecError) as exc:
            print(f"corelab: {exc}", file=sys.stderr)
            return USAGE_EXIT
        return 0
    if args.seed is None:
        try:
            args.seed = _seed(os.environ.get("CORELAB_SEED", "0"))
        except argparse.ArgumentTypeError as exc:
            print(f"corelab: CORELAB_SEED: {exc}", file=sys.stderr)
            return USAGE_EXIT

    t0 = time.perf_counter()
    try:
        with warnings.catch_warnings():
            if not args.verbose:
                warnings.simplefilter("ignore")
            if args.command == "corpus":
                corpus = read_corpus(args.file)
                records = run_corpus(corpus, seed=args.seed, field_override=args.field,
                                     defaults=_options(args), stats=args.stats)
                command = f"corpus run {os.path.basename(args.file)}"
            else:
                R = _load_ring(args)
                kind = args.which if args.command == "verify" else args.command
                opts = _options(args)
                records = [run_experiment(kind, R, opts, stats=args.stats)]
                command = kind if args.command != "verify" else f"verify {kind}"
    except (OSError, RingSpecError, FieldError) as exc:
        print(f"corelab: {exc}", file=sys.stderr)
        return USAGE_EXIT
    timings = {"total_seconds": round(time.perf_counter() - t0, 6)} if args.stats else None
    report = build_report(records, command=command, seed=args.seed, stats=args.stats, timings=timings)
    _emit(render(report, args.format), args.out)
    verdict = report["verdict"]
    if verdict != "consistent":
        print(f"corelab: verdict {verdict}", file=sys.stderr)
    return EXIT_CODES[verdict]


if __name__ == "__main__":
    sys.exit(main())
