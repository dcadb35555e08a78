"""Coefficient fields: prime fields F_p and the rationals."""

from __future__ import annotations

import warnings
from fractions import Fraction

DEFAULT_PRIME = 32003
SMALL_PRIME_WARNING = 101


class FieldError(ValueError):
    pass


class SmallFieldWarning(UserWarning):
    pass


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    if n % 2 == 0:
        return n == 2
    i = 3
    while i * i <= n:
        if n % i == 0:
            return False
        i += 2
    return True


class FieldSpec:
    """An exact coefficient field.

    ``FieldSpec(p)`` is the prime field F_p (p an odd prime below 2^31) and
    ``FieldSpec(None)`` is Q.  Elements are plain Python ints reduced into
    ``[0, p)`` for F_p, and ``Fraction`` instances for Q, so polynomial code can
    use the native ``+ - *`` operators and only calls :meth:`reduce` and
    :meth:`inv`.
    """

    __slots__ = ("p",)

    def __init__(self, p: int | None = DEFAULT_PRIME, *, warn: bool = True):
        if p is not None:
            p = int(p)
            if p % 2 == 0 or not is_prime(p) or p >= 2**31:
                raise FieldError(f"{p} is not an odd prime below 2^31")
            if warn and p < SMALL_PRIME_WARNING:
                warnings.warn(
                    f"F_{p} is small; generic choices may fail", SmallFieldWarning, stacklevel=2
                )
        self.p = p

    @classmethod
    def rationals(cls) -> FieldSpec:
        return cls(None)

    @classmethod
    def parse(cls, text: str, *, warn: bool = True) -> FieldSpec:
        """Parse ``q`` / ``Q`` or ``p=<prime>``."""
        t = text.strip()
        if t.lower() in ("q", "qq", "rationals"):
            return cls(None)
        if t.lower().startswith("p="):
            try:
                return cls(int(t[2:]), warn=warn)
            except ValueError as exc:
                raise FieldError(f"bad field {text!r}: {exc}") from None
        raise FieldError(f"bad field {text!r}; expected 'q' or 'p=<prime>'")

    @property
    def is_rational(self) -> bool:
        return self.p is None

    @property
    def characteristic(self) -> int:
        return 0 if self.p is None else self.p

    def __eq__(self, other):
        return isinstance(other, FieldSpec) and other.p == self.p

    def __hash__(self):
        return hash(("FieldSpec", self.p))

    def __repr__(self):
        return "FieldSpec(Q)" if self.p is None else f"FieldSpec(F_{self.p})"

    def __str__(self):
        return "q" if self.p is None else f"p={self.p}"

    def __reduce__(self):
        return (_field_from_p, (self.p,))

    # element operations

    def __call__(self, value) -> int | Fraction:
        """Coerce an int, Fraction or ``"a/b"`` string into the field."""
        if isinstance(value, str):
            value = Fraction(value)
        if self.p is None:
            return Fraction(value)
        if isinstance(value, Fraction):
            return value.numerator * pow(value.denominator, -1, self.p) % self.p
        return int(value) % self.p

    def reduce(self, c):
        return c if self.p is None else c % self.p

    def inv(self, c):
        if not c:
            raise ZeroDivisionError("inverse of zero")
        if self.p is None:
            return 1 / Fraction(c)
        return pow(c, -1, self.p)

    def neg(self, c):
        return -c if self.p is None else (-c) % self.p

    @property
    def zero(self):
        return Fraction(0) if self.p is None else 0

    @property
    def one(self):
        return Fraction(1) if self.p is None else 1

    def random_element(self, rng, box: int = 50):
        """Uniform in F_p, or uniform in the integer box [-box, box] over Q."""
        if self.p is None:
            return Fraction(rng.randint(-box, box))
        return rng.randrange(self.p)

    def to_signed(self, c):
        """Symmetric representative for display (F_p) or the fraction itself."""
        if self.p is None:
            return c
        return c - self.p if c > self.p // 2 else c


def _field_from_p(p):
    return FieldSpec(p, warn=False)
