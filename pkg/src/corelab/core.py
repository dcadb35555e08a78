"""Core and graded core: Monte-Carlo intersection of sampled reductions, the
colon formula, and verifiers for the closed formulas.

The Monte-Carlo intersection of finitely many certified reductions always
contains the true core, so "x is not in some reduction" is a proof that x is
not in the core, while agreement with a formula is evidence only.
"""

from __future__ import annotations

import logging
import warnings
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field

from .field import SMALL_PRIME_WARNING, FieldSpec
from .ideal import (
    Ideal,
    PresentedRing,
    colon,
    colon_element,
    equal_degree_ideal,
    ideal_from_degrees,
    intersect,
    power,
    truncation_ideal,
)
from .invariants import (
    NotCohenMacaulay,
    cm_certificate,
    hilbert_series,
    random_combination,
    socle_profile,
)
from .reductions import (
    R_MAX,
    NotMPrimary,
    ReductionCertificate,
    derived_rng,
    reduction_number,
    sample_minimal_reduction,
)

log = logging.getLogger(__name__)

MIN_SAMPLES = 16
WINDOW = 8
MAX_SAMPLES = 256


class PreconditionError(ValueError):
    """A verifier's hypotheses do not hold for the given ring."""


@dataclass
class Witness:
    polynomial: str
    containment: str  # the containment that fails, e.g. "f in lower, f not in J[3]"

    def as_dict(self):
        return {"polynomial": self.polynomial, "violated": self.containment}


@dataclass
class CoreReport:
    target: str
    mode: str  # "monte-carlo" | "colon"
    ideal: Ideal | None
    samples: int = 0
    certificates: list = field(default_factory=list)
    stabilization: list = field(default_factory=list)
    stabilized: bool = False
    candidate: Ideal | None = None
    candidate_text: str = ""
    verdict: str = "inconclusive"
    witness: Witness | None = None
    notes: list = field(default_factory=list)
    checks: dict = field(default_factory=dict)
    degree_bound: int = 0
    extra: dict = field(default_factory=dict)

    def dimension_table(self) -> list[int]:
        if self.ideal is None:
            return []
        return self.ideal.dimension_table(self.degree_bound)

    def as_dict(self) -> dict:
        out = {
            "target": self.target,
            "mode": self.mode,
            "verdict": self.verdict,
            "ideal": [str(g) for g in self.ideal.reduced_basis()] if self.ideal is not None else None,
            "dimension_table": self.dimension_table(),
            "degree_bound": self.degree_bound,
            "samples": self.samples,
            "stabilized": self.stabilized,
            "stabilization": self.stabilization,
            "candidate": self.candidate_text or None,
            "checks": self.checks,
            "witness": self.witness.as_dict() if self.witness else None,
            "certificates": [c.as_dict() for c in self.certificates],
            "notes": list(self.notes),
        }
        out.update(self.extra)
        return out


# ---------------------------------------------------------------- helpers


def _top_degree(J: Ideal) -> int:
    """Top degree of the Artinian quotient R/J."""
    R = J.ring
    top, n, empty = 0, 0, 0
    while empty < R.max_weight:
        if J.standard_monomials(n):
            top, empty = n, 0
        else:
            empty += 1
        n += 1
    return top


def _first_outside(gens, J: Ideal):
    for g in gens:
        if not J.contains_poly(g):
            return g
    return None


def _sample(args):
    I, master, i, r_max, d = args
    return sample_minimal_reduction(
        I, derived_rng(master, i), seed_label=f"{master}:{i}", r_max=r_max, d=d
    )


def _certificates(I: Ideal, master, start: int, count: int, r_max: int, d: int, pool):
    args = [(I, master, i, r_max, d) for i in range(start, start + count)]
    if pool is None:
        return [_sample(a) for a in args]
    return list(pool.map(_sample, args))


# ---------------------------------------------------------------- Monte-Carlo


def core_monte_carlo(
    I: Ideal,
    *,
    min_samples: int = MIN_SAMPLES,
    window: int = WINDOW,
    max_samples: int = MAX_SAMPLES,
    seed=0,
    r_max: int = R_MAX,
    jobs: int = 1,
    target: str = "",
) -> CoreReport:
    """Running intersection of sampled minimal reductions of an equal-degree
    m-primary ideal, stopped once the reduced basis has not changed for
    ``window`` consecutive samples after at least ``min_samples``."""
    from .invariants import krull_dimension

    R = I.ring
    if not I.generators or not I.is_artinian_quotient():
        raise NotMPrimary("ideal is not m-primary")
    d = krull_dimension(R)
    report = CoreReport(target or f"core({I})", "monte-carlo", None)
    K = None
    key = None
    run = 0
    top = 0
    dims_prev = None
    pool = ProcessPoolExecutor(jobs) if jobs and jobs > 1 else None
    batch = max(1, jobs) * 2 if pool else 1
    try:
        i = 0
        while i < max_samples:
            certs = _certificates(I, seed, i, min(batch, max_samples - i), r_max, d, pool)
            for cert in certs:
                J = cert.reduction
                report.certificates.append(cert)
                top = max(top, _top_degree(J))
                cap = top + R.max_weight
                K = J if K is None else intersect(K, J, degree_cap=cap)
                new_key = K.key()
                changed = new_key != key
                run = 0 if changed else run + 1
                key = new_key
                dims = K.dimension_table(cap)
                if dims_prev is not None:
                    for a, b in zip(dims, dims_prev):
                        if a > b:
                            raise AssertionError("Monte-Carlo intersection grew")
                dims_prev = dims
                report.stabilization.append({"sample": i, "changed": changed, "dims": dims})
                i += 1
                if i >= min_samples and run >= window:
                    report.stabilized = True
                    break
            if report.stabilized:
                break
    finally:
        if pool is not None:
            pool.shutdown()
    report.ideal = K
    report.samples = len(report.certificates)
    report.degree_bound = top + R.max_weight
    if not report.stabilized:
        report.notes.append(f"not stabilized within {max_samples} samples")
    # every reduction contains I^(r+1), hence so does the intersection
    rmax = max(c.r for c in report.certificates)
    if not K.contains(power(I, rmax + 1)):
        raise AssertionError("intersection misses a power of I")
    return report


def grcore_monte_carlo(R: PresentedRing, N: int, **kw) -> CoreReport:
    """Graded core of S_{>=N}, computed as the core of S_N·S."""
    I = equal_degree_ideal(R, N)
    if not I.generators or not I.is_artinian_quotient():
        from .reductions import smallest_m_primary_degree

        raise NotMPrimary(
            f"S_{N}·S is not m-primary in {R.name} (N too small; smallest usable N is "
            f"{smallest_m_primary_degree(R)})"
        )
    kw.setdefault("target", f"grcore(S_>={N})")
    return core_monte_carlo(I, **kw)


# ---------------------------------------------------------------- colon formula


def _require_gorenstein_char0(R: PresentedRing, rng=None):
    if not R.field.is_rational:
        raise PreconditionError("the colon formula is used only over the rationals")
    cert = cm_certificate(R, rng)
    if not cert.is_cm:
        raise PreconditionError(f"{R.name} is not certified Cohen-Macaulay")
    if not socle_profile(R, cert.hsop).is_gorenstein:
        raise PreconditionError(f"{R.name} is not Gorenstein")
    return cert


def core_colon(
    R: PresentedRing,
    I: Ideal,
    J: ReductionCertificate | Ideal,
    r: int | None = None,
    *,
    r_max: int = R_MAX,
    check: bool = True,
) -> tuple[Ideal, int]:
    """core(I) = J^(r+1) : I^r for a reduction J and r large.

    Starts at r (default: J's reduction number w.r.t. I, at least 1) and raises
    r until the colon is unchanged from r to r+1.  Returns ``(core, r)``.
    """
    if check:
        _require_gorenstein_char0(R)
    Jid = J.reduction if isinstance(J, ReductionCertificate) else J
    rJ = reduction_number(Jid, I, r_max)
    if rJ is None:
        raise PreconditionError("J is not a reduction of I within r_max")
    r = max(r if r is not None else rJ, rJ, 1)
    prev = colon(power(Jid, r + 1), power(I, r))
    while r < r_max:
        nxt = colon(power(Jid, r + 2), power(I, r + 1))
        if nxt.equals(prev):
            return prev, r
        prev, r = nxt, r + 1
    raise PreconditionError(f"colon formula not stable by r = {r_max}")


# ---------------------------------------------------------------- verifiers


def find_nilpotent(R: PresentedRing):
    """Look for a nilpotent element among cheap candidates: p-th roots of
    relations in characteristic p and radicals of monomial relations.
    Returns the element or None (None is not a proof of reducedness)."""
    gb = R.q_basis
    if gb is None:
        return None
    p = R.field.p
    cands = []
    for f in list(R.relations) + list(gb.generators):
        exps = list(f.coeffs)
        if p and all(x % p == 0 for e in exps for x in e):
            cands.append((f.ring.from_dict({tuple(x // p for x in e): c for e, c in f.coeffs.items()}), p))
        if len(exps) == 1:
            e = exps[0]
            rad = tuple(1 if x else 0 for x in e)
            if rad != e:
                cands.append((f.ring.monomial(rad), max(e)))
    for g, k in cands:
        if R.reduce(g) and not R.reduce(g**k):
            return g
    return None


def _check_reduced(R: PresentedRing, report: CoreReport):
    if R.reduced is False:
        raise PreconditionError(f"{R.name} is flagged not reduced")
    nil = find_nilpotent(R)
    if nil is not None:
        raise PreconditionError(f"{R.name} is not reduced: {nil} is nilpotent")
    if R.reduced is None:
        report.notes.append("reducedness assumed (caller's responsibility)")


def _field_notes(R: PresentedRing, report: CoreReport):
    if R.field.p is not None and R.field.p < SMALL_PRIME_WARNING:
        report.notes.append(
            f"small field F_{R.field.p}: generic choices may fail, sampled reductions are not generic"
        )


def _cm(R: PresentedRing, seed):
    cert = cm_certificate(R, derived_rng(f"{seed}:cm", 0))
    if not cert.is_cm:
        raise PreconditionError(f"{R.name} is not certified Cohen-Macaulay")
    return cert


def verify_standard_formula(R: PresentedRing, N: int, seed=0, **kw) -> CoreReport:
    """core(m^N) against m^(Nd+a+1) for standard graded reduced CM rings."""
    pre = CoreReport(f"core(m^{N})", "monte-carlo", None)
    if not R.is_standard_graded:
        raise PreconditionError("ring is not standard graded")
    _check_reduced(R, pre)
    cert = _cm(R, seed)
    H = hilbert_series(R)
    d, a = H.krull_dimension(), H.a_invariant()
    e = N * d + a + 1
    m = R.maximal_ideal()
    C = power(m, e) if e > 0 else R.unit_ideal()
    kw.setdefault("target", f"core(m^{N})")
    report = core_monte_carlo(power(m, N), seed=seed, **kw)
    report.notes[:0] = pre.notes
    _field_notes(R, report)
    report.candidate = C
    report.candidate_text = f"m^{e}"
    report.degree_bound = max(report.degree_bound, e + R.max_weight + 2)
    report.extra.update({"d": d, "a": a, "N": N, "hsop": [str(t) for t in cert.hsop]})
    # (i) the candidate lies in every sampled reduction: failures are proofs
    for k, c in enumerate(report.certificates):
        f = _first_outside(C.generators, c.reduction)
        if f is not None:
            report.verdict = "refuted"
            report.witness = Witness(str(f), f"{f} in m^{e} but not in reduction #{k}")
            report.checks["candidate_in_every_reduction"] = False
            return report
    report.checks["candidate_in_every_reduction"] = True
    # (ii) the stabilized intersection lies in the candidate
    f = _first_outside(report.ideal.generators, C)
    report.checks["intersection_in_candidate"] = f is None
    if f is not None:
        report.verdict = "inconclusive"
        report.notes.append(f"intersection contains {f}, not in m^{e}")
        return report
    report.verdict = "consistent" if report.stabilized else "inconclusive"
    return report


def gap_set(R: PresentedRing, bound: int) -> list[int]:
    H = hilbert_series(R)
    c = H.coefficients(bound)
    return [i for i in range(1, bound + 1) if c[i] == 0]


def verify_sandwich(R: PresentedRing, N: int, seed=0, **kw) -> CoreReport:
    """S_{>=Nd+a+1} ⊆ grcore(S_{>=N}) ⊆ sum over gaps i of S_{Nd+a-i}, with
    equality tested when the socle is concentrated in one degree."""
    cert = _cm(R, seed)
    H = hilbert_series(R)
    d, a = H.krull_dimension(), H.a_invariant()
    w = R.max_weight
    base = N * d + a
    bound = 2 * (N * d + abs(a) + w)
    gaps = gap_set(R, bound)
    lower = ideal_from_degrees(R, range(max(base + 1, 0), base + w + 1))
    upper_degrees = [base - i for i in gaps if base - i >= 0]
    upper = lower + ideal_from_degrees(R, upper_degrees)
    level = socle_profile(R, cert.hsop).is_level
    kw.setdefault("target", f"grcore(S_>={N})")
    report = grcore_monte_carlo(R, N, seed=seed, **kw)
    report.candidate = upper
    report.candidate_text = (
        f"S_>={base + 1}" + "".join(f" + S_{k}·S" for k in sorted(set(upper_degrees)))
    )
    report.degree_bound = max(report.degree_bound, base + w + 2)
    exploratory = not R.is_standard_graded
    report.extra.update(
        {
            "d": d,
            "a": a,
            "N": N,
            "gaps": gaps,
            "lower_degrees": list(range(max(base + 1, 0), base + w + 1)),
            "upper_gap_degrees": sorted(set(upper_degrees)),
            "level": level,
            "lower_dimension_table": lower.dimension_table(report.degree_bound),
            "upper_dimension_table": upper.dimension_table(report.degree_bound),
        }
    )
    for k, c in enumerate(report.certificates):
        f = _first_outside(lower.generators, c.reduction)
        if f is not None:
            report.verdict = "refuted"
            report.witness = Witness(str(f), f"{f} in lower bound but not in reduction #{k}")
            report.checks["lower_in_grcore"] = False
            return report
    report.checks["lower_in_grcore"] = True
    f = _first_outside(report.ideal.generators, upper)
    report.checks["grcore_in_upper"] = f is None
    if f is not None:
        report.verdict = "inconclusive"
        report.notes.append(f"intersection contains {f}, outside the upper bound")
        return report
    if level:
        eq = report.ideal.equals(upper)
        report.checks["grcore_equals_upper"] = eq
        if exploratory:
            report.notes.append("equality with the upper bound is exploratory for this ring")
        elif not eq:
            g = _first_outside(upper.generators, report.ideal)
            for k, c in enumerate(report.certificates):
                if not c.reduction.contains_poly(g):
                    report.verdict = "refuted"
                    report.witness = Witness(str(g), f"{g} in upper bound but not in reduction #{k}")
                    return report
            report.verdict = "inconclusive"
            return report
    report.verdict = "consistent" if report.stabilized else "inconclusive"
    return report


@dataclass
class Dim1Result:
    equal: bool
    nzd_degree_one: bool
    nzd: str | None
    core: Ideal
    grcore: Ideal
    r: int
    witness: Witness | None
    theorem_violation: bool
    grcore_report: CoreReport
    grcore_colon_agrees: bool
    notes: list = field(default_factory=list)

    @property
    def verdict(self) -> str:
        return "refuted" if self.theorem_violation else "consistent"

    def as_dict(self) -> dict:
        return {
            "equal": self.equal,
            "nzd_degree_one": self.nzd_degree_one,
            "nzd": self.nzd,
            "core": [str(g) for g in self.core.reduced_basis()],
            "grcore": [str(g) for g in self.grcore.reduced_basis()],
            "r": self.r,
            "witness": self.witness.as_dict() if self.witness else None,
            "theorem_violation": self.theorem_violation,
            "grcore_colon_agrees": self.grcore_colon_agrees,
            "grcore_report": self.grcore_report.as_dict(),
            "notes": self.notes,
        }


def degree_one_nzd(R: PresentedRing, rng, tries: int = 5):
    """A random degree-one non-zero-divisor, or None."""
    from .ideal import degree_piece_basis

    basis = degree_piece_basis(R, 1)
    if not basis:
        return None
    zero = R.zero_ideal()
    for _ in range(tries):
        x = random_combination(basis, R.field, rng)
        if not R.reduce(x):
            continue
        if colon_element(zero, x).is_zero:
            return x
    return None


def homogeneous_difference(big: Ideal, small: Ideal, up_to: int):
    """Lowest-degree basis element of ``big`` outside ``small``."""
    for n in range(up_to + 1):
        for f in big.piece_basis(n):
            if not small.contains_poly(f):
                return f
    return None


def verify_dim1(R: PresentedRing, N: int, seed=0, **kw) -> Dim1Result:
    """Compare core and graded core of S_{>=N} in a one-dimensional ring and
    check the answer against the existence of a degree-one non-zero-divisor."""
    from .invariants import krull_dimension

    if krull_dimension(R) != 1:
        raise PreconditionError("ring is not one-dimensional")
    _require_gorenstein_char0(R, derived_rng(f"{seed}:cm", 0))
    x = degree_one_nzd(R, derived_rng(f"{seed}:nzd", 0))
    I = truncation_ideal(R, N)
    Ip = equal_degree_ideal(R, N)
    gr = grcore_monte_carlo(R, N, seed=seed, **kw)
    J = gr.certificates[0]
    core, r = core_colon(R, I, J, check=False)
    grcore = gr.ideal
    # graded core via the colon formula with I' in place of I
    gr_colon, _ = core_colon(R, Ip, J, check=False)
    equal = core.equals(grcore)
    bound = N * 2 + 2 * R.max_weight + max(0, hilbert_series(R).a_invariant())
    witness = None
    if not equal:
        f = homogeneous_difference(grcore, core, bound + N * (r + 2))
        if f is not None:
            # recheck from scratch with fresh ideal objects
            g2 = Ideal(R, grcore.generators, check=False)
            c2 = Ideal(R, core.generators, check=False)
            assert g2.contains_poly(f) and not c2.contains_poly(f)
            witness = Witness(str(f), f"{f} in grcore but not in core")
    nzd = x is not None
    return Dim1Result(
        equal=equal,
        nzd_degree_one=nzd,
        nzd=str(x) if x is not None else None,
        core=core,
        grcore=grcore,
        r=r,
        witness=witness,
        theorem_violation=equal != nzd,
        grcore_report=gr,
        grcore_colon_agrees=gr_colon.equals(grcore),
    )


@dataclass
class CharScanRow:
    field: str
    verdict: str
    core: list
    dims: list
    note: str = ""

    def as_dict(self):
        return dict(self.__dict__)


def char_scan(R: PresentedRing, N: int, primes, *, rationals: bool = True, seed=0, **kw):
    """Run the standard-formula verifier over several characteristics."""
    fields = [FieldSpec(p, warn=False) for p in primes]
    if rationals:
        fields.append(FieldSpec(None))
    rows = []
    for F in fields:
        Rf = R.with_field(F)
        note = ""
        if F.p is not None and F.p < SMALL_PRIME_WARNING:
            note = f"small prime {F.p}: genericity risk"
        try:
            with warnings.catch_warnings():
                warnings.simplefilter("ignore")
                rep = verify_standard_formula(Rf, N, seed=seed, **kw)
        except (PreconditionError, NotCohenMacaulay, NotMPrimary) as exc:
            rows.append(CharScanRow(str(F), "rejected", [], [], f"{note}; {exc}".strip("; ")))
            continue
        rows.append(
            CharScanRow(
                str(F),
                rep.verdict,
                [str(g) for g in rep.ideal.reduced_basis()],
                rep.dimension_table(),
                note,
            )
        )
    accepted = [r for r in rows if r.verdict != "rejected"]
    same = len({(tuple(r.core), tuple(r.dims)) for r in accepted}) <= 1
    return rows, same
