"""Ring constructions: Veronese subrings, numerical semigroup rings, Rees
algebra presentations and complete intersections."""

from __future__ import annotations

import string
from dataclasses import dataclass, field
from math import gcd

from .field import FieldSpec
from .groebner import eliminate
from .ideal import Ideal, PresentedRing, RingError, degree_piece_basis
from .invariants import _rng, hilbert_series, one_minus_t_power, random_combination, tpoly_mul
from .poly import PolyRing


class ConstructionError(ValueError):
    pass


def _fresh_names(pool, k: int, taken=()):
    taken = set(taken)
    out = [c for c in pool if c not in taken][:k]
    i = 1
    while len(out) < k:
        cand = f"y{i}"
        if cand not in taken:
            out.append(cand)
        i += 1
    return out


def _clean(polys):
    """Drop zeros and make leading coefficients one, for stable output."""
    return [p.monic() for p in polys if p]


def veronese(R: PresentedRing, n: int) -> PresentedRing:
    """The n-th Veronese subring, re-graded so that every new variable has
    degree one."""
    if n < 1:
        raise ConstructionError("n must be at least 1")
    if not R.is_standard_graded:
        raise ConstructionError("veronese needs a standard graded ring")
    if n == 1:
        return R
    basis = degree_piece_basis(R, n)
    k = len(basis)
    names = _fresh_names(string.ascii_uppercase, k, R.names)
    big = R.ambient.extend(names, [n] * k)
    nv = R.nvars
    ident = {i: i for i in range(nv)}
    lifted = [p.change_ring(big, ident) for p in R.relations]
    for j, m in enumerate(basis):
        lifted.append(big.gen(nv + j) - m.change_ring(big, ident))
    sub, rels = eliminate(lifted, list(range(nv)))
    out = PolyRing(R.field, names, [1] * k)
    regraded = [p.change_ring(out, {i: i for i in range(k)}) for p in rels]
    return PresentedRing(
        R.field,
        names,
        [1] * k,
        _clean(regraded),
        reduced=R.reduced,
        name=f"veronese({R.name}, {n})",
        note=f"degree-{n} Veronese of {R.name}, re-graded standard",
    )


def semigroup_ring(generators, field_: FieldSpec | None = None) -> PresentedRing:
    """k[t^a_1, ..., t^a_k] as k[x_1..x_k] modulo its toric kernel."""
    gens = [int(a) for a in generators]
    if not gens or any(a <= 0 for a in gens):
        raise ConstructionError("semigroup generators must be positive")
    g = 0
    for a in gens:
        g = gcd(g, a)
    if g != 1:
        raise ConstructionError(f"generators have common divisor {g}")
    F = field_ or FieldSpec()
    names = _fresh_names(string.ascii_lowercase.replace("t", ""), len(gens))
    big = PolyRing(F, ["t"] + names, [1] + gens)
    t = big.gen(0)
    lifted = [big.gen(i + 1) - t ** a for i, a in enumerate(gens)]
    _, rels = eliminate(lifted, [0])
    label = ",".join(map(str, gens))
    return PresentedRing(
        F,
        names,
        gens,
        _clean(rels),
        reduced=True,
        name=f"semigroup<{label}>",
        note=f"numerical semigroup ring k[t^{{{label}}}]",
    )


@dataclass
class ReesPresentation:
    ring: PresentedRing
    new_variables: tuple
    bidegrees: dict  # variable name -> (weight, rees degree)


def rees_presentation(R: PresentedRing, I: Ideal) -> ReesPresentation:
    """R[It] as R[y_1..y_m] modulo the kernel of y_i -> f_i t."""
    fs = list(I.generators)
    if not fs:
        raise ConstructionError("Rees algebra of the zero ideal")
    m = len(fs)
    names = _fresh_names("uvwpqrs", m, set(R.names) | {"t"})
    degs = I.gen_degrees()
    big = PolyRing(R.field, ["t"] + list(R.names) + names, [0] + list(R.weights) + degs)
    nv = R.nvars
    shift = {i: i + 1 for i in range(nv)}
    t = big.gen(0)
    lifted = [p.change_ring(big, shift) for p in R.relations]
    for j, f in enumerate(fs):
        lifted.append(big.gen(1 + nv + j) - t * f.change_ring(big, shift))
    sub, rels = eliminate(lifted, [0])
    allnames = list(R.names) + names
    weights = list(R.weights) + degs
    out = PolyRing(R.field, allnames, weights)
    rels = [p.change_ring(out, {i: i for i in range(len(allnames))}) for p in rels]
    ring = PresentedRing(
        R.field,
        allnames,
        weights,
        _clean(rels),
        reduced=R.reduced,
        name=f"rees({R.name}, {I})",
        note="second grading: original variables 0, new variables 1",
    )
    bideg = {v: (w, 0) for v, w in zip(R.names, R.weights)}
    bideg.update({v: (w, 1) for v, w in zip(names, degs)})
    return ReesPresentation(ring, tuple(names), bideg)


def _ci_numerator(degrees):
    num = [1]
    for d in degrees:
        num = tpoly_mul(num, one_minus_t_power(d))
    return tuple(num)


def is_regular_sequence_quotient(R: PresentedRing, degrees) -> bool:
    """Hilbert-series test: R = k[x]/(f_1..f_c) with the f_i a regular
    sequence of the given degrees iff the numerator is prod (1 - t^d_i)."""
    return hilbert_series(R).numerator == _ci_numerator(degrees)


def complete_intersection(
    n: int,
    degrees,
    rng=None,
    forms=None,
    field_: FieldSpec | None = None,
    names=None,
    retries: int = 20,
) -> PresentedRing:
    """Quotient of k[x_1..x_n] by c generic forms (or the given forms) of
    the given degrees, certified to be a regular sequence."""
    degrees = [int(d) for d in degrees]
    if len(degrees) > n:
        raise ConstructionError("more forms than variables")
    F = field_ or FieldSpec()
    if names is None:
        names = list("xyzw")[:n] if n <= 4 else [f"x{i + 1}" for i in range(n)]
    base = PresentedRing(F, names)
    rng = _rng(rng)
    label = f"ci({n}; {', '.join(map(str, degrees))})"
    if forms is not None:
        R = PresentedRing(F, names, None, forms, name=label)
        if not is_regular_sequence_quotient(R, degrees):
            raise ConstructionError("given forms are not a regular sequence of those degrees")
        return R
    for _ in range(retries):
        fs = [random_combination(degree_piece_basis(base, d), F, rng) for d in degrees]
        try:
            R = PresentedRing(F, names, None, _clean(fs), name=label)
        except RingError:
            continue
        if is_regular_sequence_quotient(R, degrees):
            return R
    raise ConstructionError(f"no regular sequence found in {retries} attempts")


@dataclass
class RingRecipe:
    """Declarative description of a ring; ``build`` elaborates it."""

    kind: str
    params: dict = field(default_factory=dict)
    note: str = ""

    KINDS = ("polynomial", "quotient", "veronese", "semigroup", "rees", "complete-intersection")

    def build(self, field_: FieldSpec, seed=0, resolve=None) -> PresentedRing:
        p = self.params
        if self.kind in ("polynomial", "quotient"):
            return PresentedRing(field_, p["names"], p.get("weights"), p.get("relations", ()))
        if self.kind == "veronese":
            return veronese(resolve(p["base"]), int(p["n"]))
        if self.kind == "semigroup":
            return semigroup_ring(p["generators"], field_)
        if self.kind == "rees":
            base = resolve(p["base"])
            return rees_presentation(base, base.ideal(list(p["ideal"]))).ring
        if self.kind == "complete-intersection":
            return complete_intersection(
                int(p["n"]), p["degrees"], rng=_rng(seed), forms=p.get("forms"), field_=field_
            )
        raise ConstructionError(f"unknown recipe kind {self.kind!r}")


def monomial_count_check(R: PresentedRing, up_to: int = 10) -> bool:
    """Hilbert series coefficients against direct standard-monomial counts."""
    try:
        hilbert_series(R, verify_up_to=up_to)
    except AssertionError:
        return False
    return True


__all__ = [
    "ConstructionError",
    "veronese",
    "semigroup_ring",
    "rees_presentation",
    "ReesPresentation",
    "complete_intersection",
    "is_regular_sequence_quotient",
    "RingRecipe",
    "monomial_count_check",
]

