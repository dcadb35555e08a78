"""Weighted monomials, monomial orders and multivariate polynomials.

Monomials are exponent tuples.  A :class:`Polynomial` keeps its terms in a
``{exponents: coefficient}`` mapping with no zero coefficients; the ordered
view ``terms`` is produced on demand under the ring's monomial order.
"""

from __future__ import annotations

import re
from fractions import Fraction
from functools import cached_property

from .field import FieldSpec

MAX_EXPONENT = 2**16


class RingMismatch(ValueError):
    pass


class ExponentOverflow(ArithmeticError):
    pass


# ---------------------------------------------------------------- monomials


def mono_degree(e, weights) -> int:
    return sum(a * w for a, w in zip(e, weights))


def mono_mul(a, b):
    return tuple(x + y for x, y in zip(a, b))


def mono_divides(a, b) -> bool:
    """True when monomial ``a`` divides ``b``."""
    return all(x <= y for x, y in zip(a, b))


def mono_div(a, b):
    return tuple(x - y for x, y in zip(a, b))


def mono_lcm(a, b):
    return tuple(x if x > y else y for x, y in zip(a, b))


def check_exponents(e):
    for x in e:
        if x >= MAX_EXPONENT:
            raise ExponentOverflow(f"exponent {x} exceeds cap {MAX_EXPONENT}")
    return e


class MonomialOrder:
    """Weighted degree-reverse-lexicographic order, optionally with an
    elimination block in front.

    With ``front`` a set of variable indices, monomials are compared first on
    the front block (ordinary degree, then reverse lex), then on the remaining
    variables by weighted grevlex.  Any monomial involving a front variable is
    therefore larger than every monomial free of them.
    """

    __slots__ = ("weights", "front", "_rest")

    def __init__(self, weights, front=()):
        self.weights = tuple(weights)
        self.front = tuple(sorted(set(front)))
        self._rest = tuple(i for i in range(len(self.weights)) if i not in self.front)

    @property
    def kind(self) -> str:
        return "block-elimination" if self.front else "grevlex"

    def key(self, e):
        if not self.front:
            w = self.weights
            deg = 0
            for a, b in zip(e, w):
                deg += a * b
            return (deg,) + tuple(-x for x in reversed(e))
        f = [e[i] for i in self.front]
        r = [e[i] for i in self._rest]
        rdeg = sum(e[i] * self.weights[i] for i in self._rest)
        return (sum(f),) + tuple(-x for x in reversed(f)) + (rdeg,) + tuple(-x for x in reversed(r))

    def __eq__(self, other):
        return (
            isinstance(other, MonomialOrder)
            and other.weights == self.weights
            and other.front == self.front
        )

    def __hash__(self):
        return hash((self.weights, self.front))

    def __repr__(self):
        if self.front:
            return f"MonomialOrder(block{list(self.front)}, w={list(self.weights)})"
        return f"MonomialOrder(grevlex, w={list(self.weights)})"


# ---------------------------------------------------------------- rings


class PolyRing:
    """Ambient weighted polynomial ring k[x_1..x_n]."""

    def __init__(self, field: FieldSpec, names, weights=None):
        names = tuple(names)
        if len(set(names)) != len(names):
            raise ValueError(f"duplicate variable names in {names}")
        for nm in names:
            if not re.fullmatch(r"[A-Za-z_][A-Za-z0-9_]*", nm):
                raise ValueError(f"bad variable name {nm!r}")
        weights = tuple(int(w) for w in (weights if weights is not None else [1] * len(names)))
        if len(weights) != len(names):
            raise ValueError("weights and variables differ in length")
        if any(w < 0 for w in weights):
            raise ValueError("weights must be nonnegative")
        self.field = field
        self.names = names
        self.weights = weights
        self.order = MonomialOrder(weights)

    @property
    def nvars(self) -> int:
        return len(self.names)

    def __eq__(self, other):
        return (
            isinstance(other, PolyRing)
            and other.field == self.field
            and other.names == self.names
            and other.weights == self.weights
        )

    def __hash__(self):
        return hash((self.field, self.names, self.weights))

    def __repr__(self):
        vs = ",".join(f"{n}:{w}" if w != 1 else n for n, w in zip(self.names, self.weights))
        return f"PolyRing({self.field}, [{vs}])"

    def zero(self) -> Polynomial:
        return Polynomial(self, {})

    def one(self) -> Polynomial:
        return self.const(1)

    def const(self, c) -> Polynomial:
        c = self.field(c)
        return Polynomial(self, {(0,) * self.nvars: c} if c else {})

    def gen(self, i) -> Polynomial:
        if isinstance(i, str):
            i = self.names.index(i)
        e = [0] * self.nvars
        e[i] = 1
        return Polynomial(self, {tuple(e): self.field.one})

    def gens(self) -> list[Polynomial]:
        return [self.gen(i) for i in range(self.nvars)]

    def monomial(self, e, c=1) -> Polynomial:
        c = self.field(c)
        return Polynomial(self, {tuple(e): c} if c else {})

    def from_dict(self, d) -> Polynomial:
        """Build from a mapping that may contain unreduced or zero coefficients."""
        red = self.field.reduce
        out = {}
        for e, c in d.items():
            c = red(c)
            if c:
                out[tuple(e)] = c
        return Polynomial(self, out)

    def parse(self, text: str) -> Polynomial:
        return _Parser(self, text).parse()

    def extend(self, names, weights, front=False) -> PolyRing:
        """A ring with extra variables appended (or prepended when ``front``)."""
        if front:
            return PolyRing(self.field, tuple(names) + self.names, tuple(weights) + self.weights)
        return PolyRing(self.field, self.names + tuple(names), self.weights + tuple(weights))

    def with_field(self, field: FieldSpec) -> PolyRing:
        return PolyRing(field, self.names, self.weights)


# ---------------------------------------------------------------- polynomials


class Polynomial:
    """Immutable polynomial over a :class:`PolyRing`."""

    __slots__ = ("ring", "_d", "__dict__")

    def __init__(self, ring: PolyRing, d: dict):
        self.ring = ring
        self._d = d

    # structure

    @property
    def coeffs(self) -> dict:
        return self._d

    @cached_property
    def terms(self) -> list:
        """``(coefficient, exponents)`` pairs, strictly descending."""
        key = self.ring.order.key
        return [(self._d[e], e) for e in sorted(self._d, key=key, reverse=True)]

    def is_zero(self) -> bool:
        return not self._d

    def __bool__(self):
        return bool(self._d)

    def __len__(self):
        return len(self._d)

    def lm(self, order: MonomialOrder | None = None):
        key = (order or self.ring.order).key
        return max(self._d, key=key)

    def lc(self, order: MonomialOrder | None = None):
        return self._d[self.lm(order)]

    def degrees(self) -> set:
        w = self.ring.weights
        return {mono_degree(e, w) for e in self._d}

    def degree(self) -> int:
        """Largest weighted degree of a term; -1 for zero."""
        return max(self.degrees(), default=-1)

    def is_homogeneous(self, weights=None):
        """``(True, degree)`` when every term has the same weighted degree.

        The zero polynomial counts as homogeneous of every degree; its degree
        slot is ``None``.
        """
        w = self.ring.weights if weights is None else tuple(weights)
        degs = {mono_degree(e, w) for e in self._d}
        if not degs:
            return True, None
        if len(degs) == 1:
            return True, degs.pop()
        return False, None

    def graded_component(self, n: int, weights=None) -> Polynomial:
        w = self.ring.weights if weights is None else tuple(weights)
        return Polynomial(self.ring, {e: c for e, c in self._d.items() if mono_degree(e, w) == n})

    def monic(self, order: MonomialOrder | None = None) -> Polynomial:
        if not self._d:
            return self
        return self.scale(self.ring.field.inv(self.lc(order)))

    # arithmetic

    def _coerce(self, other):
        if isinstance(other, Polynomial):
            if other.ring != self.ring:
                raise RingMismatch(f"{self.ring!r} vs {other.ring!r}")
            return other
        if isinstance(other, (int, Fraction)):
            return self.ring.const(other)
        return NotImplemented

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        d = dict(self._d)
        red = self.ring.field.reduce
        for e, c in other._d.items():
            v = red(d.get(e, 0) + c)
            if v:
                d[e] = v
            else:
                d.pop(e, None)
        return Polynomial(self.ring, d)

    __radd__ = __add__

    def __neg__(self):
        neg = self.ring.field.neg
        return Polynomial(self.ring, {e: neg(c) for e, c in self._d.items()})

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return other - self

    def __mul__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return multiply(self, other)

    __rmul__ = __mul__

    def __pow__(self, k: int):
        if k < 0:
            raise ValueError("negative power")
        out = self.ring.one()
        base = self
        while k:
            if k & 1:
                out = out * base
            base = base * base
            k >>= 1
        return out

    def scale(self, c) -> Polynomial:
        red = self.ring.field.reduce
        c = red(c)
        if not c:
            return self.ring.zero()
        return Polynomial(self.ring, {e: red(v * c) for e, v in self._d.items()})

    def mul_monomial(self, m, c=1) -> Polynomial:
        red = self.ring.field.reduce
        return Polynomial(
            self.ring, {check_exponents(mono_mul(e, m)): red(v * c) for e, v in self._d.items()}
        )

    def exact_divide(self, g: Polynomial) -> Polynomial:
        """Quotient ``self / g``; raises ``ArithmeticError`` if not exact."""
        from .groebner import divide_with_remainder

        q, r = divide_with_remainder(self, [g])
        if r:
            raise ArithmeticError("inexact polynomial division")
        return q[0]

    def substitute(self, images: list[Polynomial]) -> Polynomial:
        """Evaluate at polynomials ``images`` (one per variable)."""
        target = images[0].ring if images else self.ring
        out = target.zero()
        for e, c in self._d.items():
            t = target.const(c) if not target.field.is_rational else target.const(c)
            for img, a in zip(images, e):
                if a:
                    t = t * img**a
            out = out + t
        return out

    def change_ring(self, ring: PolyRing, index_map) -> Polynomial:
        """Move to ``ring``; variable ``i`` goes to ``index_map[i]``."""
        n = ring.nvars
        d = {}
        for e, c in self._d.items():
            f = [0] * n
            for i, a in enumerate(e):
                if a:
                    f[index_map[i]] = a
            d[tuple(f)] = c
        return ring.from_dict(d)

    # comparison / hashing

    def __eq__(self, other):
        if isinstance(other, (int, Fraction)):
            other = self.ring.const(other)
        if not isinstance(other, Polynomial):
            return NotImplemented
        return self.ring == other.ring and self._d == other._d

    def __hash__(self):
        return hash((self.ring, frozenset(self._d.items())))

    def __repr__(self):
        return f"Polynomial({render(self)!r})"

    def __str__(self):
        return render(self)


def multiply(f: Polynomial, g: Polynomial) -> Polynomial:
    """Exact product of two polynomials over the same ring."""
    if f.ring != g.ring:
        raise RingMismatch(f"{f.ring!r} vs {g.ring!r}")
    red = f.ring.field.reduce
    d: dict = {}
    for e1, c1 in f._d.items():
        for e2, c2 in g._d.items():
            e = tuple(x + y for x, y in zip(e1, e2))
            d[e] = d.get(e, 0) + c1 * c2
    out = {}
    for e, c in d.items():
        c = red(c)
        if c:
            out[check_exponents(e)] = c
    return Polynomial(f.ring, out)


def graded_component(f: Polynomial, n: int, weights=None) -> Polynomial:
    return f.graded_component(n, weights)


def is_homogeneous(f: Polynomial, weights=None):
    return f.is_homogeneous(weights)


# ---------------------------------------------------------------- text format


def _render_coeff(c) -> str:
    if isinstance(c, Fraction):
        return str(c.numerator) if c.denominator == 1 else f"{c.numerator}/{c.denominator}"
    return str(c)


def render(f: Polynomial) -> str:
    """Render in the ``b^2 - a^3`` syntax accepted by :meth:`PolyRing.parse`."""
    if not f._d:
        return "0"
    names = f.ring.names
    field = f.ring.field
    parts = []
    for c, e in f.terms:
        c = field.to_signed(c)
        neg = c < 0
        a = -c if neg else c
        mono = "*".join(
            (names[i] if x == 1 else f"{names[i]}^{x}") for i, x in enumerate(e) if x
        )
        if not mono:
            body = _render_coeff(a)
        elif a == 1:
            body = mono
        else:
            body = f"{_render_coeff(a)}*{mono}"
        if not parts:
            parts.append(f"-{body}" if neg else body)
        else:
            parts.append(f"- {body}" if neg else f"+ {body}")
    return " ".join(parts)


class PolyParseError(ValueError):
    pass


_TOKEN = re.compile(r"\s*(?:(\d+)|([A-Za-z_][A-Za-z0-9_]*)|(\^|\*\*|[-+*/()]))")


class _Parser:
    def __init__(self, ring: PolyRing, text: str):
        self.ring = ring
        self.text = text
        self.toks = []
        pos = 0
        text = text.rstrip()
        while pos < len(text):
            m = _TOKEN.match(text, pos)
            if not m or m.end() == pos:
                raise PolyParseError(f"unexpected character at {pos} in {text!r}")
            num, ident, op = m.groups()
            if num is not None:
                self.toks.append(("num", int(num)))
            elif ident is not None:
                self.toks.append(("var", ident))
            else:
                self.toks.append(("op", "^" if op == "**" else op))
            pos = m.end()
        self.i = 0

    def peek(self):
        return self.toks[self.i] if self.i < len(self.toks) else (None, None)

    def take(self):
        t = self.peek()
        self.i += 1
        return t

    def parse(self) -> Polynomial:
        if not self.toks:
            raise PolyParseError("empty polynomial")
        f = self.expr()
        if self.i != len(self.toks):
            raise PolyParseError(f"trailing input in {self.text!r}")
        return f

    def expr(self):
        sign = 1
        kind, val = self.peek()
        if (kind, val) in (("op", "-"), ("op", "+")):
            self.take()
            sign = -1 if val == "-" else 1
        acc = self.term()
        if sign < 0:
            acc = -acc
        while True:
            kind, val = self.peek()
            if kind == "op" and val in "+-":
                self.take()
                t = self.term()
                acc = acc + t if val == "+" else acc - t
            else:
                return acc

    def term(self):
        acc = self.power()
        while True:
            kind, val = self.peek()
            if kind == "op" and val == "*":
                self.take()
                acc = acc * self.power()
            elif kind == "op" and val == "/":
                self.take()
                k2, v2 = self.take()
                if k2 != "num" or not v2:
                    raise PolyParseError("division only by nonzero integer constants")
                acc = acc.scale(self.ring.field.inv(self.ring.field(v2)))
            elif kind in ("num", "var") or (kind == "op" and val == "("):
                acc = acc * self.power()
            else:
                return acc

    def power(self):
        base = self.atom()
        kind, val = self.peek()
        if kind == "op" and val == "^":
            self.take()
            k2, v2 = self.take()
            if k2 != "num":
                raise PolyParseError("exponent must be a nonnegative integer")
            if v2 >= MAX_EXPONENT:
                raise ExponentOverflow(f"exponent {v2} exceeds cap")
            return base**v2
        return base

    def atom(self):
        kind, val = self.take()
        if kind == "num":
            return self.ring.const(val)
        if kind == "var":
            if val not in self.ring.names:
                raise PolyParseError(f"unknown variable {val!r}")
            return self.ring.gen(val)
        if kind == "op" and val == "(":
            f = self.expr()
            k2, v2 = self.take()
            if (k2, v2) != ("op", ")"):
                raise PolyParseError("missing ')'")
            return f
        raise PolyParseError(f"unexpected token {val!r} in {self.text!r}")
