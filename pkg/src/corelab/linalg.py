"""Exact linear algebra over a FieldSpec and degreewise (Macaulay-matrix)
helpers for homogeneous ideals.

These routines are deliberately independent of the Buchberger kernel so they
can serve as oracles for it.
"""

from __future__ import annotations

import heapq
from functools import lru_cache

from .field import FieldSpec
from .poly import PolyRing, Polynomial, mono_degree


def rref(rows, field: FieldSpec):
    """Reduced row echelon form of a dense matrix; returns ``(rows, pivots)``."""
    red, inv = field.reduce, field.inv
    m = [[red(x) for x in r] for r in rows]
    pivots = []
    if not m:
        return m, pivots
    ncols = len(m[0])
    r = 0
    for c in range(ncols):
        piv = next((i for i in range(r, len(m)) if m[i][c]), None)
        if piv is None:
            continue
        m[r], m[piv] = m[piv], m[r]
        s = inv(m[r][c])
        m[r] = [red(x * s) for x in m[r]]
        for i in range(len(m)):
            if i != r and m[i][c]:
                f = m[i][c]
                m[i] = [red(a - f * b) for a, b in zip(m[i], m[r])]
        pivots.append(c)
        r += 1
        if r == len(m):
            break
    return m[:r], pivots


def rank(rows, field: FieldSpec) -> int:
    return len(rref(rows, field)[1])


def nullspace(rows, ncols: int, field: FieldSpec):
    """Basis of ``{v : M v = 0}`` for the matrix with the given rows."""
    if not rows:
        return [[field.one if i == j else field.zero for i in range(ncols)] for j in range(ncols)]
    R, pivots = rref(rows, field)
    free = [c for c in range(ncols) if c not in pivots]
    basis = []
    for fc in free:
        v = [field.zero] * ncols
        v[fc] = field.one
        for row, pc in zip(R, pivots):
            v[pc] = field.neg(row[fc])
        basis.append(v)
    return basis


@lru_cache(maxsize=4096)
def monomials_of_degree(weights: tuple, n: int) -> tuple:
    """All exponent vectors of weighted degree exactly ``n``."""
    if n < 0:
        return ()
    k = len(weights)
    if k == 0:
        return ((),) if n == 0 else ()
    out = []
    w0 = weights[0]
    if w0 == 0:
        raise ValueError("weight-zero variables have infinitely many monomials per degree")
    for a in range(n // w0, -1, -1):
        for rest in monomials_of_degree(weights[1:], n - a * w0):
            out.append((a,) + rest)
    return tuple(out)


class Subspace:
    """A subspace of polynomials kept in echelon form.

    Each stored row is a ``{monomial: coeff}`` dict whose leading monomial
    (under the ring order) is its pivot and is absent from every other row's
    pivot set.
    """

    def __init__(self, ring: PolyRing):
        self.ring = ring
        self.rows = {}  # pivot -> monic dict
        self._key = ring.order.key

    def __len__(self):
        return len(self.rows)

    def reduce(self, d: dict) -> dict:
        red = self.ring.field.reduce
        key = self._key
        p = dict(d)
        heap = [tuple(-x for x in key(e)) + (e,) for e in p]
        heapq.heapify(heap)
        out = {}
        while heap:
            e = heapq.heappop(heap)[-1]
            c = p.pop(e, None)
            if c is None:
                continue
            row = self.rows.get(e)
            if row is None:
                out[e] = c
                continue
            for e2, c2 in row.items():
                if e2 == e:
                    continue
                old = p.get(e2)
                v = red((old or 0) - c * c2)
                if v:
                    if old is None:
                        heapq.heappush(heap, tuple(-x for x in key(e2)) + (e2,))
                    p[e2] = v
                elif old is not None:
                    del p[e2]
        return out

    def add(self, f) -> bool:
        """Insert a vector; returns True when it enlarged the span."""
        d = f.coeffs if isinstance(f, Polynomial) else f
        r = self.reduce(d)
        if not r:
            return False
        piv = max(r, key=self._key)
        s = self.ring.field.inv(r[piv])
        red = self.ring.field.reduce
        self.rows[piv] = {e: red(c * s) for e, c in r.items()}
        return True

    def contains(self, f) -> bool:
        d = f.coeffs if isinstance(f, Polynomial) else f
        return not self.reduce(d)

    def basis(self) -> list[Polynomial]:
        return [Polynomial(self.ring, dict(r)) for _, r in sorted(self.rows.items(), key=lambda kv: self._key(kv[0]), reverse=True)]


def ideal_piece(gens, n: int, ring: PolyRing | None = None) -> Subspace:
    """Degree-``n`` piece of the ideal generated by homogeneous ``gens``
    (in the ambient ring), as spanned by monomial multiples."""
    gens = [g for g in gens if g]
    ring = ring or gens[0].ring
    w = ring.weights
    S = Subspace(ring)
    for g in gens:
        dg = mono_degree(next(iter(g.coeffs)), w)
        if dg > n:
            continue
        for m in monomials_of_degree(w, n - dg):
            S.add(g.mul_monomial(m))
    return S


def macaulay_member(f: Polynomial, gens) -> bool:
    """Membership of a homogeneous ``f`` via degreewise linear algebra."""
    if not f:
        return True
    ok, n = f.is_homogeneous()
    if not ok:
        return all(macaulay_member(f.graded_component(k), gens) for k in f.degrees())
    if not [g for g in gens if g]:
        return False
    return ideal_piece(gens, n, f.ring).contains(f)
