"""Buchberger kernel: normal forms, reduced Groebner bases, elimination.

The kernel works on raw ``{exponents: coeff}`` dicts for speed and wraps
results back into :class:`~corelab.poly.Polynomial`.  Pairs are managed with
the Gebauer-Moeller update, which subsumes Buchberger's coprime and chain
criteria, and are selected by the normal strategy (smallest lcm degree first).
"""

from __future__ import annotations

import heapq
from dataclasses import dataclass, field

from .poly import (
    MonomialOrder,
    PolyRing,
    Polynomial,
    check_exponents,
    mono_degree,
    mono_divides,
    mono_lcm,
)

MAX_PAIRS = 200_000
MAX_DEGREE = 64


class BudgetExceeded(RuntimeError):
    """A Groebner computation ran past its pair or degree budget."""

    def __init__(self, msg, stats=None):
        super().__init__(msg)
        self.stats = dict(stats or {})


@dataclass
class GBStats:
    pairs_processed: int = 0
    pairs_skipped: int = 0
    pairs_truncated: int = 0
    reductions_to_zero: int = 0
    max_degree: int = 0

    def as_dict(self):
        return dict(self.__dict__)


@dataclass(frozen=True)
class GroebnerBasis:
    generators: tuple
    order: MonomialOrder
    reduced: bool = True
    degree_cap: int | None = None
    truncated: bool = False
    stats: dict = field(default_factory=dict, compare=False, hash=False)

    def __iter__(self):
        return iter(self.generators)

    def __len__(self):
        return len(self.generators)

    def __getitem__(self, i):
        return self.generators[i]

    @property
    def leading_monomials(self):
        return [g.lm(self.order) for g in self.generators]

    def normal_form(self, f: Polynomial) -> Polynomial:
        return normal_form(f, self.generators, self.order)

    def reduces_to_zero(self, f: Polynomial) -> bool:
        return not self.normal_form(f)


# ---------------------------------------------------------------- reduction


def _nkey(key, e):
    return tuple(-x for x in key(e))


def _reduce(p: dict, basis, key, red, inv, full=True) -> dict:
    """Reduce dict ``p`` by ``basis``: a list of ``(lm, lc_inv, dict)``.

    Reduction always uses the first basis element (in list order) whose
    leading monomial divides the current term, so results are deterministic.
    """
    p = dict(p)
    heap = [(_nkey(key, e), e) for e in p]
    heapq.heapify(heap)
    rem = {}
    while heap:
        _, e = heapq.heappop(heap)
        c = p.pop(e, None)
        if c is None:
            continue
        for lm, lcinv, g in basis:
            if mono_divides(lm, e):
                break
        else:
            rem[e] = c
            if not full:
                rem.update(p)
                return rem
            continue
        q = red(c * lcinv)
        shift = tuple(x - y for x, y in zip(e, lm))
        for e2, c2 in g.items():
            if e2 == lm:
                continue
            e3 = tuple(x + y for x, y in zip(e2, shift))
            old = p.get(e3)
            v = red((old or 0) - q * c2)
            if v:
                if old is None:
                    heapq.heappush(heap, (_nkey(key, e3), e3))
                p[e3] = v
            elif old is not None:
                del p[e3]
    return rem


def _prep(polys, order, field):
    out = []
    for g in polys:
        d = g.coeffs if isinstance(g, Polynomial) else g
        if not d:
            continue
        lm = max(d, key=order.key)
        out.append((lm, field.inv(d[lm]), d))
    return out


def normal_form(f: Polynomial, G, order: MonomialOrder | None = None) -> Polynomial:
    """Fully reduced remainder of ``f`` modulo the sequence ``G``."""
    order = order or f.ring.order
    G = list(G)
    if not G:
        return f
    field_ = f.ring.field
    basis = _prep(G, order, field_)
    return Polynomial(f.ring, _reduce(f.coeffs, basis, order.key, field_.reduce, field_.inv))


def divide_with_remainder(f: Polynomial, G, order: MonomialOrder | None = None):
    """Multivariate division: ``f = sum q_i g_i + r``; returns ``(q, r)``."""
    order = order or f.ring.order
    ring = f.ring
    red = ring.field.reduce
    basis = _prep(G, order, ring.field)
    quots = [dict() for _ in G]
    idx = [i for i, g in enumerate(G) if g]
    p = dict(f.coeffs)
    rem = {}
    while p:
        e = max(p, key=order.key)
        c = p[e]
        for (lm, lcinv, g), i in zip(basis, idx):
            if mono_divides(lm, e):
                q = red(c * lcinv)
                shift = tuple(x - y for x, y in zip(e, lm))
                quots[i][shift] = red(quots[i].get(shift, 0) + q)
                for e2, c2 in g.items():
                    e3 = tuple(x + y for x, y in zip(e2, shift))
                    v = red(p.get(e3, 0) - q * c2)
                    if v:
                        p[e3] = v
                    else:
                        p.pop(e3, None)
                break
        else:
            rem[e] = c
            del p[e]
    return [ring.from_dict(q) for q in quots], Polynomial(ring, rem)


# ---------------------------------------------------------------- Buchberger


def _spoly(a, b, red):
    (lma, ia, da), (lmb, ib, db) = a, b
    L = mono_lcm(lma, lmb)
    sa = tuple(x - y for x, y in zip(L, lma))
    sb = tuple(x - y for x, y in zip(L, lmb))
    out = {}
    for e, c in da.items():
        e3 = check_exponents(tuple(x + y for x, y in zip(e, sa)))
        out[e3] = red(c * ia)
    for e, c in db.items():
        e3 = check_exponents(tuple(x + y for x, y in zip(e, sb)))
        v = red(out.get(e3, 0) - c * ib)
        if v:
            out[e3] = v
        else:
            out.pop(e3, None)
    return out


def _disjoint(a, b):
    return all(not (x and y) for x, y in zip(a, b))


def buchberger(
    gens,
    order: MonomialOrder | None = None,
    *,
    degree_cap: int | None = None,
    max_pairs: int = MAX_PAIRS,
    max_degree: int = MAX_DEGREE,
    reduced: bool = True,
) -> GroebnerBasis:
    """Reduced Groebner basis of the ideal generated by ``gens``.

    With ``degree_cap`` set, S-pairs whose lcm has weighted degree above the
    cap are discarded; for homogeneous input the result is then a Groebner
    basis in degrees up to the cap and is flagged ``truncated``.
    """
    gens = [g for g in gens if g]
    if not gens:
        raise ValueError("buchberger needs at least one polynomial to fix the ring")
    ring: PolyRing = gens[0].ring
    for g in gens:
        if g.ring != ring:
            from .poly import RingMismatch

            raise RingMismatch("generators live in different rings")
    order = order or ring.order
    key = order.key
    field_ = ring.field
    red, inv = field_.reduce, field_.inv
    w = ring.weights
    stats = GBStats()

    G: list = []  # (lm, lc_inv, dict), monic
    active: list = []  # indices into G that are not redundant
    pairs: list = []  # (deg, key(lcm), i, j, lcm)
    truncated = False

    def update(h_idx):
        nonlocal pairs
        th = G[h_idx][0]
        C = [(i, mono_lcm(G[i][0], th)) for i in active]
        D = []
        while C:
            i, L = C.pop(0)
            if _disjoint(G[i][0], th):
                D.append((i, L))
                continue
            if any(mono_divides(L2, L) for _, L2 in C) or any(mono_divides(L2, L) for _, L2 in D):
                stats.pairs_skipped += 1
                continue
            D.append((i, L))
        E = []
        for i, L in D:
            if _disjoint(G[i][0], th):
                stats.pairs_skipped += 1
            else:
                E.append((i, L))
        newpairs = []
        for p in pairs:
            _, _, i, j, L = p
            if (
                mono_divides(th, L)
                and mono_lcm(G[i][0], th) != L
                and mono_lcm(G[j][0], th) != L
            ):
                stats.pairs_skipped += 1
                continue
            newpairs.append(p)
        for i, L in E:
            newpairs.append((mono_degree(L, w), key(L), i, h_idx, L))
        pairs = newpairs
        active[:] = [i for i in active if not mono_divides(th, G[i][0])] + [h_idx]

    def add(d):
        lm = max(d, key=key)
        c = inv(d[lm])
        d = {e: red(v * c) for e, v in d.items()}
        G.append((lm, field_.one, d))
        stats.max_degree = max(stats.max_degree, mono_degree(lm, w))
        update(len(G) - 1)

    for g in sorted(gens, key=lambda g: key(g.lm(order))):
        d = _reduce(g.coeffs, [G[i] for i in active], key, red, inv)
        if d:
            add(d)

    while pairs:
        best = min(range(len(pairs)), key=lambda k: (pairs[k][0], pairs[k][1]))
        deg, _, i, j, L = pairs.pop(best)
        if degree_cap is not None and deg > degree_cap:
            truncated = True
            stats.pairs_truncated += 1 + len(pairs)
            break  # normal strategy: every remaining pair is at least this degree
        if degree_cap is None and deg > max_degree:
            raise BudgetExceeded(f"S-pair degree {deg} exceeds cap {max_degree}", stats.as_dict())
        stats.pairs_processed += 1
        if stats.pairs_processed > max_pairs:
            raise BudgetExceeded(f"more than {max_pairs} S-pairs", stats.as_dict())
        s = _spoly(G[i], G[j], red)
        h = _reduce(s, [G[k] for k in active], key, red, inv)
        if not h:
            stats.reductions_to_zero += 1
            continue
        add(h)

    basis = [G[i] for i in active]
    if reduced:
        basis = _interreduce(basis, key, red, inv)
    polys = [Polynomial(ring, d) for _, _, d in basis]
    polys.sort(key=lambda p: key(p.lm(order)), reverse=True)
    return GroebnerBasis(
        tuple(polys),
        order,
        reduced=reduced,
        degree_cap=degree_cap,
        truncated=truncated,
        stats=stats.as_dict(),
    )


def _interreduce(basis, key, red, inv):
    # minimal basis: drop elements whose lm is divisible by another's
    basis = sorted(basis, key=lambda b: key(b[0]))
    minimal = []
    for b in basis:
        if not any(mono_divides(m[0], b[0]) for m in minimal):
            minimal.append(b)
    out = []
    for k, (lm, lcinv, d) in enumerate(minimal):
        others = minimal[:k] + minimal[k + 1 :]
        tail = {e: c for e, c in d.items() if e != lm}
        tail = _reduce(tail, others, key, red, inv)
        tail[lm] = red(d[lm] * lcinv)
        out.append((lm, inv(tail[lm]), tail))
    return out


def is_groebner(G, order: MonomialOrder | None = None) -> bool:
    """Buchberger's criterion, checked exhaustively over all pairs."""
    G = [g for g in G if g]
    if not G:
        return True
    order = order or G[0].ring.order
    field_ = G[0].ring.field
    basis = _prep(G, order, field_)
    for a in range(len(basis)):
        for b in range(a + 1, len(basis)):
            s = _spoly(basis[a], basis[b], field_.reduce)
            if _reduce(s, basis, order.key, field_.reduce, field_.inv):
                return False
    return True


def eliminate(gens, front_vars, *, degree_cap: int | None = None):
    """Generators of ``(gens) ∩ k[remaining variables]``.

    Returns ``(subring, polys)``: the x-free members of a block-order reduced
    basis, moved into the polynomial ring on the remaining variables.
    """
    gens = list(gens)
    ring = gens[0].ring
    front = [ring.names.index(v) if isinstance(v, str) else v for v in front_vars]
    order = MonomialOrder(ring.weights, front)
    gb = buchberger(gens, order, degree_cap=degree_cap)
    keep = [i for i in range(ring.nvars) if i not in front]
    sub = PolyRing(ring.field, [ring.names[i] for i in keep], [ring.weights[i] for i in keep])
    index_map = {i: k for k, i in enumerate(keep)}
    out = []
    for g in gb:
        if all(e[i] == 0 for e in g.coeffs for i in front):
            out.append(g.change_ring(sub, {i: index_map.get(i, 0) for i in range(ring.nvars)}))
    return sub, out
