"""Experiment runners shared by the command line and corpus files.

Each runner takes a ring plus options and returns a JSON-ready record with a
``verdict`` in {consistent, refuted, inconclusive, rejected}.
"""

from __future__ import annotations

import time
from dataclasses import dataclass

from . import __version__
from .core import (
    PreconditionError,
    char_scan,
    core_monte_carlo,
    grcore_monte_carlo,
    verify_dim1,
    verify_sandwich,
    verify_standard_formula,
)
from .groebner import BudgetExceeded, buchberger
from .ideal import PresentedRing, power
from .invariants import HsopError, NotCohenMacaulay, ZeroRingError, graded_invariants, hilbert_series
from .reductions import NotMPrimary, ReductionError, derived_rng

VERDICTS = ("consistent", "refuted", "inconclusive", "rejected")


@dataclass
class Options:
    N: int | None = None
    seed: int = 0
    samples: int = 16
    window: int = 8
    max_samples: int = 256
    rmax: int = 20
    degree_cap: int | None = None
    jobs: int = 1
    primes: tuple = (5, 97, 32003)
    ideal: tuple = ()
    rationals: bool = True

    def mc(self) -> dict:
        return {
            "min_samples": self.samples,
            "window": self.window,
            "max_samples": max(self.max_samples, self.samples),
            "r_max": self.rmax,
            "jobs": self.jobs,
        }


def ring_record(R: PresentedRing) -> dict:
    return {
        "name": R.name,
        "field": str(R.field),
        "variables": list(R.names),
        "weights": list(R.weights),
        "relations": [str(r) for r in R.relations],
    }


def _need_N(opts: Options) -> int:
    if opts.N is None:
        raise PreconditionError("--N is required")
    return opts.N


def run_gb(R: PresentedRing, opts: Options) -> dict:
    gens = [R.parse(g) for g in opts.ideal] + list(R.relations)
    gb = buchberger(gens, degree_cap=opts.degree_cap) if gens else None
    return {
        "verdict": "consistent",
        "basis": [str(g) for g in gb.generators] if gb else [],
        "truncated": bool(gb and gb.truncated),
        "degree_cap": opts.degree_cap,
    }


def run_hilbert(R: PresentedRing, opts: Options) -> dict:
    H = hilbert_series(R, verify_up_to=10)
    return {
        "verdict": "consistent",
        "series": H.render(),
        "numerator": list(H.numerator),
        "weights": list(H.weights),
        "coefficients": H.coefficients(12),
        "dimension": H.krull_dimension(),
        "multiplicity": str(H.multiplicity()),
        "a_invariant": H.a_invariant(),
    }


def run_invariants(R: PresentedRing, opts: Options) -> dict:
    out = graded_invariants(R, derived_rng(f"{opts.seed}:cm", 0)).as_dict()
    out.pop("ring", None)
    out["verdict"] = "consistent"
    return out


def run_core(R: PresentedRing, opts: Options) -> dict:
    if opts.ideal:
        I = R.ideal(list(opts.ideal))
        target = f"core({', '.join(opts.ideal)})"
    else:
        N = _need_N(opts)
        I = power(R.maximal_ideal(), N)
        target = f"core(m^{N})"
    rep = core_monte_carlo(I, seed=opts.seed, target=target, **opts.mc())
    rep.verdict = "consistent" if rep.stabilized else "inconclusive"
    return rep.as_dict()


def run_grcore(R: PresentedRing, opts: Options) -> dict:
    rep = grcore_monte_carlo(R, _need_N(opts), seed=opts.seed, **opts.mc())
    rep.verdict = "consistent" if rep.stabilized else "inconclusive"
    return rep.as_dict()


def run_standard(R: PresentedRing, opts: Options) -> dict:
    return verify_standard_formula(R, _need_N(opts), seed=opts.seed, **opts.mc()).as_dict()


def run_sandwich(R: PresentedRing, opts: Options) -> dict:
    return verify_sandwich(R, _need_N(opts), seed=opts.seed, **opts.mc()).as_dict()


def run_dim1(R: PresentedRing, opts: Options) -> dict:
    res = verify_dim1(R, _need_N(opts), seed=opts.seed, **opts.mc())
    out = res.as_dict()
    out["verdict"] = res.verdict
    return out


def run_charscan(R: PresentedRing, opts: Options) -> dict:
    rows, same = char_scan(
        R, _need_N(opts), opts.primes, rationals=opts.rationals, seed=opts.seed, **opts.mc()
    )
    verdicts = {r.verdict for r in rows}
    if not same or "refuted" in verdicts:
        verdict = "refuted"
    elif "inconclusive" in verdicts:
        verdict = "inconclusive"
    else:
        verdict = "consistent"
    return {"verdict": verdict, "same": same, "rows": [r.as_dict() for r in rows]}


RUNNERS = {
    "gb": run_gb,
    "hilbert": run_hilbert,
    "invariants": run_invariants,
    "core": run_core,
    "grcore": run_grcore,
    "standard": run_standard,
    "sandwich": run_sandwich,
    "dim1": run_dim1,
    "charscan": run_charscan,
}

EXPECTED_ERRORS = (
    PreconditionError,
    NotCohenMacaulay,
    NotMPrimary,
    HsopError,
    ZeroRingError,
)


def run_experiment(kind: str, R: PresentedRing, opts: Options, *, stats: bool = False) -> dict:
    """Run one experiment; precondition failures become ``rejected`` records
    and budget overruns ``inconclusive`` ones instead of exceptions."""
    t0 = time.perf_counter()
    rec = {
        "experiment": kind,
        "ring": ring_record(R),
        "N": opts.N,
        "seed": opts.seed,
        "engine": f"corelab {__version__}",
    }
    try:
        result = RUNNERS[kind](R, opts)
    except EXPECTED_ERRORS as exc:
        result = {"verdict": "rejected", "reason": f"{type(exc).__name__}: {exc}"}
    except (BudgetExceeded, ReductionError) as exc:
        result = {"verdict": "inconclusive", "reason": f"{type(exc).__name__}: {exc}"}
    rec["verdict"] = result.pop("verdict")
    rec["result"] = result
    if stats:
        rec["timing_seconds"] = round(time.perf_counter() - t0, 6)
    return rec


def overall_verdict(records) -> str:
    vs = {r["verdict"] for r in records}
    for v in ("refuted", "inconclusive", "rejected"):
        if v in vs:
            return v
    return "consistent"


EXIT_CODES = {"consistent": 0, "refuted": 1, "inconclusive": 2, "rejected": 3}
