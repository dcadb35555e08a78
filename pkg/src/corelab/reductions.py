"""Minimal reductions with random field coefficients and reduction numbers."""

from __future__ import annotations

import random
from dataclasses import dataclass

from .ideal import Ideal, PresentedRing, equal_degree_ideal, power, product
from .invariants import krull_dimension, random_combination

R_MAX = 20
RESAMPLE = 20


class ReductionError(RuntimeError):
    pass


class NotSubideal(ValueError):
    pass


class NotMPrimary(ValueError):
    pass


def derived_rng(master, index) -> random.Random:
    """Per-sample generator; depends only on ``(master, index)``."""
    return random.Random(f"corelab:{master}:{index}")


def reduction_number(J: Ideal, I: Ideal, r_max: int = R_MAX, *, check_subideal: bool = True):
    """Smallest r <= r_max with J I^r = I^(r+1), or None."""
    if check_subideal and not I.contains(J):
        raise NotSubideal("J is not contained in I")
    if I.generators and I.is_artinian_quotient() and not J.is_artinian_quotient():
        return None
    Ir = I.ring.unit_ideal()
    for r in range(r_max + 1):
        Ir1 = product(Ir, I) if r else I
        JIr = product(J, Ir) if r else J
        # J I^r is always inside I^(r+1); only the reverse needs checking
        if JIr.contains(Ir1):
            return r
        Ir = Ir1
    return None


@dataclass
class ReductionCertificate:
    base: Ideal
    reduction: Ideal
    r: int
    hsop: bool
    seed: str
    attempts: int = 1

    def as_dict(self) -> dict:
        return {
            "generators": [str(g) for g in self.reduction.generators],
            "reduction_number": self.r,
            "hsop": self.hsop,
            "seed": self.seed,
            "attempts": self.attempts,
        }

    def verify(self, r_max: int | None = None) -> bool:
        """Recheck J ⊆ I and J I^r = I^(r+1) from scratch."""
        R = self.base.ring
        I = Ideal(R, self.base.generators, check=False)
        J = Ideal(R, self.reduction.generators, check=False)
        if not I.contains(J):
            return False
        lhs = product(J, power(I, self.r))
        rhs = power(I, self.r + 1)
        return lhs.contains(rhs) and rhs.contains(lhs)


def _single_degree(I: Ideal) -> int:
    degs = set(I.gen_degrees())
    if len(degs) != 1:
        raise ValueError(f"ideal is not generated in a single degree (degrees {sorted(degs)})")
    return degs.pop()


def sample_minimal_reduction(
    I: Ideal, rng, *, seed_label: str = "", r_max: int = R_MAX, d: int | None = None
) -> ReductionCertificate:
    """J = (b_1..b_d), each b_h a random field combination of I's generators,
    resampled until J is an hsop and a reduction of I."""
    _single_degree(I)
    R = I.ring
    if not I.is_artinian_quotient():
        raise NotMPrimary("ideal is not m-primary")
    if d is None:
        d = krull_dimension(R)
    gens = list(I.generators)
    for attempt in range(1, RESAMPLE + 1):
        combos = [random_combination(gens, R.field, rng) for _ in range(d)]
        J = Ideal(R, combos, check=False)
        if len(J.generators) < d or not J.is_artinian_quotient():
            continue
        r = reduction_number(J, I, r_max, check_subideal=False)
        if r is None:
            continue
        return ReductionCertificate(I, J, r, True, seed_label, attempt)
    raise ReductionError(f"no minimal reduction found in {RESAMPLE} samples")


def smallest_m_primary_degree(R: PresentedRing, up_to: int = 32):
    """Smallest N for which S_N generates an m-primary ideal (or None)."""
    for N in range(1, up_to + 1):
        I = equal_degree_ideal(R, N)
        if I.generators and I.is_artinian_quotient():
            return N
    return None


def graded_reduction_stream(R: PresentedRing, N: int, master_seed=0, *, r_max: int = R_MAX):
    """Seeded endless stream of certified minimal reductions of S_N·S.

    Sample ``i`` depends only on ``(master_seed, i)``.
    """
    I = equal_degree_ideal(R, N)
    if not I.generators or not I.is_artinian_quotient():
        raise NotMPrimary(
            f"S_{N}·S is not m-primary in {R.name}; smallest usable N is "
            f"{smallest_m_primary_degree(R)}"
        )
    d = krull_dimension(R)
    i = 0
    while True:
        yield sample_minimal_reduction(
            I, derived_rng(master_seed, i), seed_label=f"{master_seed}:{i}", r_max=r_max, d=d
        )
        i += 1
