"""Presented graded rings R = k[x]/Q and homogeneous ideals in them.

All ideal operations run in the ambient polynomial ring with the defining
ideal Q adjoined, then the answers are read back modulo Q.
"""

from __future__ import annotations

import logging
from functools import cached_property

from .field import FieldSpec
from .groebner import GroebnerBasis, buchberger, eliminate, normal_form
from .linalg import Subspace, ideal_piece, monomials_of_degree, nullspace
from .poly import MonomialOrder, PolyRing, Polynomial, mono_degree, mono_divides

log = logging.getLogger(__name__)

AUX = "_t"


class RingError(ValueError):
    pass


class PresentedRing:
    """A weighted polynomial ring over a field modulo a homogeneous ideal."""

    def __init__(
        self,
        field: FieldSpec,
        names,
        weights=None,
        relations=(),
        *,
        reduced: bool | None = None,
        name: str | None = None,
        note: str = "",
    ):
        self.ambient = PolyRing(field, names, weights)
        if any(w <= 0 for w in self.ambient.weights):
            raise RingError("weights must be strictly positive")
        rels = []
        for r in relations:
            p = self.ambient.parse(r) if isinstance(r, str) else r
            if p.ring != self.ambient:
                p = p.change_ring(self.ambient, {i: i for i in range(self.ambient.nvars)})
            if not p:
                continue
            ok, deg = p.is_homogeneous()
            if not ok:
                raise RingError(f"relation {p} is not homogeneous for weights {self.weights}")
            if deg == 0:
                raise RingError("defining ideal contains a unit")
            rels.append(p)
        self.relations = tuple(rels)
        self.reduced = reduced
        self.name = name or self._default_name()
        self.note = note

    def _default_name(self):
        vs = ",".join(
            n if w == 1 else f"{n}:{w}" for n, w in zip(self.ambient.names, self.ambient.weights)
        )
        s = f"k[{vs}]"
        if self.relations:
            s += "/(" + ", ".join(str(r) for r in self.relations) + ")"
        return s

    # basic data

    @property
    def field(self) -> FieldSpec:
        return self.ambient.field

    @property
    def names(self):
        return self.ambient.names

    @property
    def weights(self):
        return self.ambient.weights

    @property
    def nvars(self) -> int:
        return self.ambient.nvars

    @property
    def max_weight(self) -> int:
        return max(self.weights)

    @property
    def is_quotient(self) -> bool:
        return bool(self.relations)

    @property
    def is_standard_graded(self) -> bool:
        return all(w == 1 for w in self.weights)

    def __repr__(self):
        return f"PresentedRing({self.name}, {self.field})"

    def __getstate__(self):
        state = dict(self.__dict__)
        state.pop("q_basis", None)
        return state

    @cached_property
    def q_basis(self) -> GroebnerBasis | None:
        if not self.relations:
            return None
        return buchberger(self.relations)

    @property
    def q_leading_monomials(self):
        return [] if self.q_basis is None else self.q_basis.leading_monomials

    def parse(self, text: str) -> Polynomial:
        return self.ambient.parse(text)

    def reduce(self, f: Polynomial) -> Polynomial:
        """Normal form modulo Q."""
        if self.q_basis is None:
            return f
        return self.q_basis.normal_form(f)

    def gens(self):
        return self.ambient.gens()

    def ideal(self, *gens) -> Ideal:
        if len(gens) == 1 and isinstance(gens[0], (list, tuple)):
            gens = gens[0]
        return Ideal(self, [self.parse(g) if isinstance(g, str) else g for g in gens])

    def maximal_ideal(self) -> Ideal:
        return Ideal(self, self.ambient.gens())

    def unit_ideal(self) -> Ideal:
        return Ideal(self, [self.ambient.one()])

    def zero_ideal(self) -> Ideal:
        return Ideal(self, [])

    def with_field(self, field: FieldSpec) -> PresentedRing:
        """The same presentation read over another field (integer or
        rational relation coefficients are reinterpreted)."""
        rels = [str(r) for r in self.relations] if self.field.is_rational else [
            _signed_text(r) for r in self.relations
        ]
        return PresentedRing(
            field, self.names, self.weights, rels, reduced=self.reduced, name=self.name, note=self.note
        )

    def standard_monomials(self, n: int):
        lms = self.q_leading_monomials
        return [
            m for m in monomials_of_degree(self.weights, n) if not any(mono_divides(l, m) for l in lms)
        ]


def _signed_text(p: Polynomial) -> str:
    from .poly import render

    return render(p)


def degree_piece_basis(R: PresentedRing, n: int) -> list[Polynomial]:
    """Standard-monomial basis of the degree-``n`` piece of ``R``."""
    if n < 0:
        return []
    return [R.ambient.monomial(m) for m in R.standard_monomials(n)]


# ---------------------------------------------------------------- ideals


def _ambient_intersection(F, G, ring: PolyRing, degree_cap=None):
    """(F) ∩ (G) in the polynomial ring ``ring``; lists of polynomials."""
    F = [f for f in F if f]
    G = [g for g in G if g]
    if not F or not G:
        return []
    T = ring.extend([AUX], [0], front=True)
    shift = {i: i + 1 for i in range(ring.nvars)}
    t = T.gen(0)
    lifted = [t * f.change_ring(T, shift) for f in F]
    lifted += [(1 - t) * g.change_ring(T, shift) for g in G]
    _, out = eliminate(lifted, [0], degree_cap=degree_cap)
    # eliminate returns polys in a ring equal to ``ring``
    return [p.change_ring(ring, {i: i for i in range(ring.nvars)}) for p in out]


class Ideal:
    """A homogeneous ideal of a :class:`PresentedRing`."""

    def __init__(self, ring: PresentedRing, generators, *, check: bool = True):
        self.ring = ring
        gens = []
        for g in generators:
            if isinstance(g, str):
                g = ring.parse(g)
            if g.ring != ring.ambient:
                raise RingError("generator from a different ring")
            g = ring.reduce(g)
            if not g:
                continue
            if check:
                ok, _ = g.is_homogeneous()
                if not ok:
                    raise RingError(f"generator {g} is not homogeneous")
            gens.append(g)
        self.generators = tuple(gens)
        self._gb = None
        self._trunc = {}

    def __repr__(self):
        return "Ideal(" + ", ".join(str(g) for g in self.generators) + ")"

    def __getstate__(self):
        return {"ring": self.ring, "generators": self.generators, "_gb": self._gb, "_trunc": {}}

    def _all_gens(self):
        return list(self.generators) + list(self.ring.relations)

    def gen_degrees(self):
        w = self.ring.weights
        return [mono_degree(next(iter(g.coeffs)), w) for g in self.generators]

    @property
    def is_zero(self) -> bool:
        return not self.generators

    # Groebner data

    def gb(self, degree_cap: int | None = None) -> GroebnerBasis | None:
        """Reduced basis of generators + Q in the ambient ring.

        A degree-capped basis is correct in degrees up to the cap and cached
        separately from the full one.
        """
        gens = self._all_gens()
        if not gens:
            return None
        if self._gb is not None:
            return self._gb
        if degree_cap is None:
            self._gb = buchberger(gens)
            return self._gb
        if degree_cap not in self._trunc:
            gb = buchberger(gens, degree_cap=degree_cap)
            if not gb.truncated:
                self._gb = gb
            self._trunc[degree_cap] = gb
        return self._trunc[degree_cap]

    def leading_monomials(self):
        gb = self.gb()
        return [] if gb is None else gb.leading_monomials

    def normal_form(self, f: Polynomial, degree_cap=None) -> Polynomial:
        gb = self.gb(degree_cap)
        return f if gb is None else gb.normal_form(f)

    def reduced_basis(self) -> tuple:
        """Reduced GB elements not already in Q's basis (canonical form)."""
        gb = self.gb()
        if gb is None:
            return ()
        qlms = set(self.ring.q_leading_monomials)
        return tuple(g for g in gb if g.lm() not in qlms)

    def key(self) -> tuple:
        """Hashable canonical form: the reduced basis as sorted term tuples."""
        return tuple(tuple(sorted(g.coeffs.items())) for g in self.reduced_basis())

    # predicates

    def contains_poly(self, f: Polynomial) -> bool:
        if f.ring != self.ring.ambient:
            raise RingError("polynomial from a different ring")
        if not f:
            return True
        if not self._all_gens():
            return False
        ok, deg = f.is_homogeneous()
        cap = deg if ok and self._gb is None else None
        return not self.normal_form(f, cap)

    __contains__ = contains_poly

    def contains(self, other: Ideal) -> bool:
        _same(self, other)
        if not other.generators:
            return True
        if not self.generators:
            return False
        cap = None if self._gb is not None else max(other.gen_degrees())
        return all(not self.normal_form(g, cap) for g in other.generators)

    def equals(self, other: Ideal) -> bool:
        _same(self, other)
        return self.key() == other.key()

    def __eq__(self, other):
        if not isinstance(other, Ideal):
            return NotImplemented
        return self.ring is other.ring and self.equals(other)

    def __hash__(self):
        return hash(self.key())

    def is_unit(self) -> bool:
        # a proper homogeneous ideal has no degree-0 element
        return any(d == 0 for d in self.gen_degrees())

    def is_artinian_quotient(self) -> bool:
        """dim R/I = 0: every variable has a pure power among the LMs."""
        lms = self.leading_monomials() if self.generators else self.ring.q_leading_monomials
        n = self.ring.nvars
        for i in range(n):
            if not any(m[i] > 0 and sum(m) == m[i] for m in lms):
                return False
        return True

    is_m_primary = is_artinian_quotient

    def quotient_dimension(self) -> int:
        from .invariants import hilbert_series_of_ideal

        return hilbert_series_of_ideal(self).krull_dimension()

    # per-degree data

    def standard_monomials(self, n: int):
        lms = self.leading_monomials() if self.generators else self.ring.q_leading_monomials
        return [
            m for m in monomials_of_degree(self.ring.weights, n) if not any(mono_divides(l, m) for l in lms)
        ]

    def piece_dimension(self, n: int) -> int:
        """dim_k of the degree-``n`` piece of I (inside R)."""
        return len(self.ring.standard_monomials(n)) - len(self.standard_monomials(n))

    def dimension_table(self, up_to: int) -> list[int]:
        return [self.piece_dimension(n) for n in range(up_to + 1)]

    def piece_basis(self, n: int) -> list[Polynomial]:
        """A basis of I_n as normal forms modulo Q (echelonized)."""
        S = Subspace(self.ring.ambient)
        for f in ideal_piece(self._all_gens(), n, self.ring.ambient).basis():
            f = self.ring.reduce(f)
            if f:
                S.add(f)
        return S.basis()

    # algebra

    def __add__(self, other):
        return ideal_sum(self, other)

    def __mul__(self, other):
        return product(self, other)

    def __pow__(self, k):
        return power(self, k)

    def __and__(self, other):
        return intersect(self, other)


def _same(I: Ideal, J: Ideal):
    if I.ring is not J.ring and (
        I.ring.ambient != J.ring.ambient or I.ring.relations != J.ring.relations
    ):
        raise RingError("ideals live in different rings")


def membership(f: Polynomial, I: Ideal) -> bool:
    return I.contains_poly(f)


def prune_generators(R: PresentedRing, gens) -> list[Polynomial]:
    """Linearly independent spanning set per degree (after reduction mod Q)."""
    by_deg: dict = {}
    w = R.weights
    for g in gens:
        g = R.reduce(g)
        if g:
            by_deg.setdefault(mono_degree(next(iter(g.coeffs)), w), []).append(g)
    out = []
    for deg in sorted(by_deg):
        S = Subspace(R.ambient)
        for g in by_deg[deg]:
            S.add(g)
        out.extend(S.basis())
    return out


def ideal_sum(I: Ideal, J: Ideal) -> Ideal:
    _same(I, J)
    return Ideal(I.ring, list(I.generators) + list(J.generators), check=False)


def product(I: Ideal, J: Ideal) -> Ideal:
    _same(I, J)
    gens = [f * g for f in I.generators for g in J.generators]
    return Ideal(I.ring, prune_generators(I.ring, gens), check=False)


def power(I: Ideal, k: int) -> Ideal:
    if k < 0:
        raise ValueError("negative power")
    if k == 0:
        return I.ring.unit_ideal()
    out = I
    for _ in range(k - 1):
        out = product(out, I)
    return out


def intersect(I: Ideal, J: Ideal, degree_cap: int | None = None) -> Ideal:
    """I ∩ J by eliminating an auxiliary variable t from t·I + (1-t)·J.

    With ``degree_cap`` the result is correct (generated) in degrees up to the
    cap; callers use this when both ideals are known to contain every element
    of degree above the cap minus the maximal weight.
    """
    _same(I, J)
    R = I.ring
    if I.is_unit():
        return Ideal(R, J.generators, check=False)
    if J.is_unit():
        return Ideal(R, I.generators, check=False)
    if not I.generators or not J.generators:
        return R.zero_ideal()
    rels = list(R.relations)
    out = _ambient_intersection(
        list(I.generators) + rels, list(J.generators) + rels, R.ambient, degree_cap
    )
    return Ideal(R, prune_generators(R, out), check=False)


class ColonError(ArithmeticError):
    pass


def colon_element(I: Ideal, g: Polynomial) -> Ideal:
    """I : g, from ((I + Q) ∩ (g)) / g computed in the ambient polynomial ring."""
    R = I.ring
    g = R.reduce(g)
    if not g:
        return R.unit_ideal()
    if I.contains_poly(g):
        return R.unit_ideal()
    if not I._all_gens():
        return R.zero_ideal()
    inter = _ambient_intersection(I._all_gens(), [g], R.ambient)
    quots = []
    for h in inter:
        try:
            quots.append(h.exact_divide(g))
        except ArithmeticError as exc:  # h lies in the principal ideal (g)
            raise ColonError(f"inexact division of {h} by {g}") from exc
    return Ideal(R, prune_generators(R, quots), check=False)


def colon(I: Ideal, J: Ideal) -> Ideal:
    """I : J as the intersection of I : g over generators g of J."""
    _same(I, J)
    if not J.generators:
        raise ValueError("colon by the zero ideal")
    out = None
    for g in J.generators:
        c = colon_element(I, g)
        out = c if out is None else intersect(out, c)
        if out.is_zero:
            break
    return out


def colon_degreewise(I: Ideal, J: Ideal, up_to: int) -> list[list[Polynomial]]:
    """Pieces of I : J in degrees 0..up_to by linear algebra.

    Independent of the Buchberger kernel apart from normal forms modulo Q;
    used as an oracle.
    """
    R = I.ring
    out = []
    for n in range(up_to + 1):
        basis = degree_piece_basis(R, n)
        if not basis:
            out.append([])
            continue
        # columns: coefficients of f*g reduced modulo I_{n+deg g} for all g
        rows_by_col = []
        for g, dg in zip(J.generators, J.gen_degrees()):
            piece = ideal_piece(I._all_gens(), n + dg, R.ambient)
            images = [piece.reduce((b * g).coeffs) for b in basis]
            mons = sorted({m for im in images for m in im})
            for m in mons:
                rows_by_col.append([im.get(m, 0) for im in images])
        kernel = nullspace(rows_by_col, len(basis), R.field)
        piece_n = []
        for v in kernel:
            f = R.ambient.zero()
            for c, b in zip(v, basis):
                if c:
                    f = f + b.scale(c)
            piece_n.append(f)
        out.append(piece_n)
    return out


def contains(I: Ideal, J: Ideal) -> bool:
    return I.contains(J)


def equals(I: Ideal, J: Ideal) -> bool:
    return I.equals(J)


def truncation_ideal(R: PresentedRing, N: int) -> Ideal:
    """S_{>=N}: generated by the graded pieces of degrees N .. N+max(w)-1."""
    if N < 1:
        raise ValueError("N must be positive")
    kept: list = []
    for n in range(N, N + R.max_weight):
        piece = ideal_piece(kept + list(R.relations), n, R.ambient) if kept else None
        for b in degree_piece_basis(R, n):
            if piece is not None and piece.contains(b):
                continue
            kept.append(b)
            if piece is None:
                piece = ideal_piece(kept + list(R.relations), n, R.ambient)
            else:
                piece.add(b)
    return Ideal(R, kept, check=False)


def equal_degree_ideal(R: PresentedRing, N: int) -> Ideal:
    """S_N·S: generated by every element of degree exactly N."""
    if N < 1:
        raise ValueError("N must be positive")
    basis = degree_piece_basis(R, N)
    if not basis:
        log.info("S_%d = 0 in %s; equal-degree ideal is zero", N, R.name)
    return Ideal(R, basis, check=False)


def ideal_from_degrees(R: PresentedRing, degrees) -> Ideal:
    """Ideal generated by the full graded pieces of the given degrees."""
    gens = []
    for n in sorted(set(degrees)):
        gens.extend(degree_piece_basis(R, n))
    return Ideal(R, gens, check=False)


def eliminate_ideal(I: Ideal, front_vars):
    """Generators of (I + Q) ∩ k[remaining variables] in the ambient ring."""
    return eliminate(I._all_gens(), front_vars)


__all__ = [
    "PresentedRing",
    "Ideal",
    "RingError",
    "ColonError",
    "MonomialOrder",
    "degree_piece_basis",
    "membership",
    "ideal_sum",
    "product",
    "power",
    "intersect",
    "colon",
    "colon_element",
    "colon_degreewise",
    "contains",
    "equals",
    "truncation_ideal",
    "equal_degree_ideal",
    "ideal_from_degrees",
    "eliminate_ideal",
    "normal_form",
]
