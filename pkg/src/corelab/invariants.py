"""Hilbert series and the graded invariants read from them: dimension,
multiplicity, a-invariant, Cohen-Macaulay and Gorenstein/level certificates,
and top local cohomology dimensions via graded duality."""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from math import prod

from .ideal import Ideal, PresentedRing, degree_piece_basis
from .linalg import nullspace
from .poly import Polynomial, mono_degree, mono_divides

# ---------------------------------------------------------------- t-polynomials
# integer polynomials in t as lists, index = exponent


def _trim(a):
    a = list(a)
    while a and a[-1] == 0:
        a.pop()
    return a


def tpoly_add(a, b):
    n = max(len(a), len(b))
    return _trim([(a[i] if i < len(a) else 0) + (b[i] if i < len(b) else 0) for i in range(n)])


def tpoly_mul(a, b):
    if not a or not b:
        return []
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                out[i + j] += x * y
    return _trim(out)


def tpoly_shift(a, k):
    return _trim([0] * k + list(a)) if a else []


def one_minus_t_power(k):
    out = [0] * (k + 1)
    out[0] += 1
    out[k] -= 1
    return _trim(out)


def tpoly_divide_one_minus_t(a):
    """Exact division by (1 - t); returns None if (1 - t) does not divide."""
    if sum(a) != 0:
        return None
    # a = (1 - t) q  =>  q_i = a_0 + ... + a_i
    q, s = [], 0
    for x in a[:-1]:
        s += x
        q.append(s)
    return _trim(q)


def tpoly_eval(a, x):
    return sum(c * x**i for i, c in enumerate(a))


def render_tpoly(a) -> str:
    if not a:
        return "0"
    parts = []
    for i, c in enumerate(a):
        if not c:
            continue
        mono = "" if i == 0 else ("t" if i == 1 else f"t^{i}")
        mag = abs(c)
        body = str(mag) if not mono else (mono if mag == 1 else f"{mag}*{mono}")
        if not parts:
            parts.append(f"-{body}" if c < 0 else body)
        else:
            parts.append(f"- {body}" if c < 0 else f"+ {body}")
    return " ".join(parts)


# ---------------------------------------------------------------- monomial ideals


def _minimalize(gens):
    gens = sorted(set(gens), key=sum)
    out = []
    for m in gens:
        if not any(mono_divides(g, m) for g in out):
            out.append(m)
    return out


def monomial_hilbert_numerator(gens, weights) -> list:
    """Numerator K(t) with H_{k[x]/I}(t) = K(t) / prod(1 - t^w_i).

    Pivot recursion: K(I) = K(I + (p)) + t^deg(p) K(I : p).
    """
    return list(_numerator(tuple(_minimalize(gens)), tuple(weights)))


@lru_cache(maxsize=20000)
def _numerator(gens, weights):
    if not gens:
        return (1,)
    n = len(weights)
    # base case: pairwise coprime generators
    used = [0] * n
    coprime = True
    for m in gens:
        for i, x in enumerate(m):
            if x:
                if used[i]:
                    coprime = False
                used[i] += 1
    if coprime:
        out = [1]
        for m in gens:
            out = tpoly_mul(out, one_minus_t_power(mono_degree(m, weights)))
        return tuple(out)
    # pivot on the most shared variable, at the median positive exponent
    i = max(range(n), key=lambda k: used[k])
    exps = sorted(m[i] for m in gens if m[i])
    e = exps[len(exps) // 2]
    pure = [m[i] for m in gens if m[i] and sum(m) == m[i]]
    if pure:
        e = min(e, min(pure) - 1)
    p = tuple(e if k == i else 0 for k in range(n))
    plus = _minimalize([m for m in gens if not mono_divides(p, m)] + [p])
    colon = _minimalize([tuple(max(a - b, 0) for a, b in zip(m, p)) for m in gens])
    left = _numerator(tuple(plus), weights)
    right = _numerator(tuple(colon), weights)
    return tuple(tpoly_add(list(left), tpoly_shift(list(right), mono_degree(p, weights))))


# ---------------------------------------------------------------- Hilbert series


class ZeroRingError(ValueError):
    pass


@lru_cache(maxsize=4096)
def _count_monomials(weights, k):
    """Coefficient of t^k in 1 / prod(1 - t^w)."""
    if k < 0:
        return 0
    c = [0] * (k + 1)
    c[0] = 1
    for w in weights:
        for j in range(w, k + 1):
            c[j] += c[j - w]
    return c[k]


@dataclass(frozen=True)
class HilbertSeries:
    """``numerator / prod(1 - t^w for w in weights)``."""

    numerator: tuple
    weights: tuple

    def coefficients(self, up_to: int) -> list[int]:
        c = [self.numerator[i] if i < len(self.numerator) else 0 for i in range(up_to + 1)]
        for w in self.weights:
            for j in range(w, up_to + 1):
                c[j] += c[j - w]
        return c

    def coefficient(self, n: int) -> int:
        return self.coefficients(n)[n] if n >= 0 else 0

    @property
    def is_zero(self) -> bool:
        return not self.numerator

    def _canceled(self):
        if self.is_zero:
            raise ZeroRingError("the zero ring has no Hilbert invariants")
        a, k = list(self.numerator), 0
        while True:
            q = tpoly_divide_one_minus_t(a)
            if q is None:
                return a, k
            a, k = q, k + 1

    @property
    def canceled_numerator(self) -> list:
        """numerator' with H = numerator' / ((1-t)^d prod [w_i]_t)."""
        return self._canceled()[0]

    def krull_dimension(self) -> int:
        return len(self.weights) - self._canceled()[1]

    def multiplicity(self) -> Fraction:
        """lim (1-t)^d H(t); equals numerator'(1) for standard grading."""
        num, _ = self._canceled()
        return Fraction(tpoly_eval(num, 1), prod(self.weights))

    def a_invariant(self) -> int:
        if self.is_zero:
            raise ZeroRingError("the zero ring has no a-invariant")
        return len(self.numerator) - 1 - sum(self.weights)

    def dual_coefficient(self, m: int) -> int:
        """Coefficient of t^m in (-1)^d H(1/t), the canonical module's series
        for a Cohen-Macaulay ring."""
        d = self.krull_dimension()
        n = len(self.weights)
        sw = sum(self.weights)
        total = 0
        for j, c in enumerate(self.numerator):
            if c:
                total += c * _count_monomials(self.weights, m - sw + j)
        return (-1) ** (d + n) * total

    def render(self) -> str:
        den = "".join(f"(1-t^{w})" if w != 1 else "(1-t)" for w in self.weights) or "1"
        return f"({render_tpoly(self.numerator)}) / {den}"

    def __str__(self):
        return self.render()


def hilbert_series_from_lms(lms, weights) -> HilbertSeries:
    return HilbertSeries(tuple(monomial_hilbert_numerator(lms, weights)), tuple(weights))


def hilbert_series(R: PresentedRing, verify_up_to: int | None = None) -> HilbertSeries:
    """Hilbert series of R from the leading-term ideal of Q's reduced basis.

    With ``verify_up_to`` the coefficients are checked against direct
    standard-monomial counts.
    """
    H = hilbert_series_from_lms(R.q_leading_monomials, R.weights)
    if verify_up_to is not None:
        coeffs = H.coefficients(verify_up_to)
        for n in range(verify_up_to + 1):
            if coeffs[n] != len(R.standard_monomials(n)):
                raise AssertionError(f"Hilbert series mismatch in degree {n}")
    return H


def hilbert_series_of_ideal(I: Ideal) -> HilbertSeries:
    """Hilbert series of R / I."""
    lms = I.leading_monomials() if I.generators else I.ring.q_leading_monomials
    return hilbert_series_from_lms(lms, I.ring.weights)


def krull_dimension(R: PresentedRing) -> int:
    return hilbert_series(R).krull_dimension()


def multiplicity(R: PresentedRing) -> Fraction:
    return hilbert_series(R).multiplicity()


def a_invariant(R: PresentedRing) -> int:
    return hilbert_series(R).a_invariant()


# ---------------------------------------------------------------- hsop / CM


class HsopError(RuntimeError):
    pass


class EmptyPieceError(HsopError):
    pass


def _rng(rng):
    if rng is None:
        return random.Random(0)
    if isinstance(rng, int):
        return random.Random(rng)
    return rng


def random_combination(basis, field_, rng) -> Polynomial:
    ring = basis[0].ring
    out = ring.zero()
    for b in basis:
        c = field_.random_element(rng)
        if c:
            out = out + b.scale(c)
    return out


def generic_hsop(R: PresentedRing, degrees, rng=None, retries: int = 20) -> list[Polynomial]:
    """``len(degrees)`` random homogeneous elements of the given degrees with
    Artinian quotient."""
    rng = _rng(rng)
    bases = []
    for D in degrees:
        b = degree_piece_basis(R, D)
        if not b:
            raise EmptyPieceError(f"S_{D} = 0 in {R.name}")
        bases.append(b)
    last = None
    for _ in range(retries):
        theta = [random_combination(b, R.field, rng) for b in bases]
        if any(not R.reduce(t) for t in theta):
            continue
        I = Ideal(R, theta, check=False)
        if I.is_artinian_quotient():
            return theta
        last = theta
    raise HsopError(
        f"no hsop of degrees {list(degrees)} after {retries} tries"
        + (f"; last: {[str(t) for t in last]}" if last else "")
    )


def find_hsop(R: PresentedRing, rng=None, d: int | None = None, max_degree: int | None = None):
    """Generic hsop of one uniform degree D, searching D from max(w) upward
    (from 1 for standard grading).  Returns ``(D, theta)``."""
    rng = _rng(rng)
    if d is None:
        d = krull_dimension(R)
    if d == 0:
        return 0, []
    start = 1 if R.is_standard_graded else R.max_weight
    stop = max_degree or (start + 4 * prod(R.weights) + 8)
    for D in range(start, stop + 1):
        if len(degree_piece_basis(R, D)) == 0:
            continue
        try:
            return D, generic_hsop(R, [D] * d, rng, retries=5 if D < stop else 20)
        except HsopError:
            continue
    raise HsopError(f"no uniform-degree hsop found up to degree {stop}")


@dataclass
class CMCertificate:
    is_cm: bool
    hsop: list
    hsop_degree: int
    trials: int
    proof: bool  # CM verdicts are proofs; negative ones are Monte-Carlo

    @property
    def verdict(self) -> str:
        return "CM" if self.is_cm else "probably-not-CM"


def cm_certificate(R: PresentedRing, rng=None, trials: int = 3) -> CMCertificate:
    """Certify Cohen-Macaulayness: a generic hsop theta of degree D is a
    regular sequence iff H(R/theta) = H(R) (1 - t^D)^d."""
    rng = _rng(rng)
    H = hilbert_series(R)
    if H.is_zero:
        raise ZeroRingError("zero ring")
    d = H.krull_dimension()
    if d == 0:
        return CMCertificate(True, [], 0, 0, True)
    last = None
    for k in range(trials):
        D, theta = find_hsop(R, rng, d)
        target = list(H.numerator)
        for _ in range(d):
            target = tpoly_mul(target, one_minus_t_power(D))
        got = hilbert_series_of_ideal(Ideal(R, theta, check=False))
        if list(got.numerator) == target:
            return CMCertificate(True, theta, D, k + 1, True)
        last = (D, theta)
    return CMCertificate(False, last[1], last[0], trials, False)


# ---------------------------------------------------------------- socle


class NotArtinianError(ValueError):
    pass


@dataclass
class SocleProfile:
    degrees: dict  # degree -> dimension of the socle in that degree
    top_degree: int  # top nonzero degree of the Artinian reduction
    hsop_degrees: list = field(default_factory=list)

    @property
    def dimension(self) -> int:
        return sum(self.degrees.values())

    @property
    def is_gorenstein(self) -> bool:
        return self.dimension == 1

    @property
    def is_level(self) -> bool:
        return len(self.degrees) == 1

    @property
    def a_invariant(self) -> int:
        """a(R) = a(A) - sum of hsop degrees (valid for CM rings)."""
        return self.top_degree - sum(self.hsop_degrees)


def artinian_socle(I: Ideal) -> SocleProfile:
    """Socle of the Artinian ring R/I by per-degree kernels of multiplication
    by the variables."""
    R = I.ring
    if not I.is_artinian_quotient():
        raise NotArtinianError("quotient is not Artinian")
    gb = I.gb()
    top = 0
    bases = {}
    n = 0
    empty_run = 0
    while empty_run < R.max_weight + 1 or n <= top:
        mons = I.standard_monomials(n)
        if mons:
            bases[n] = mons
            top = n
            empty_run = 0
        else:
            empty_run += 1
        n += 1
    socle = {}
    amb = R.ambient
    for deg, mons in bases.items():
        rows = []
        for i, w in enumerate(R.weights):
            target = bases.get(deg + w)
            if not target:
                continue
            images = []
            for m in mons:
                e = list(m)
                e[i] += 1
                nf = gb.normal_form(amb.monomial(tuple(e)))
                images.append(nf.coeffs)
            for m in target:
                rows.append([im.get(m, 0) for im in images])
        ker = nullspace(rows, len(mons), R.field)
        if ker:
            socle[deg] = len(ker)
    return SocleProfile(socle, top)


def socle_profile(R: PresentedRing, hsop) -> SocleProfile:
    theta = list(hsop)
    prof = artinian_socle(Ideal(R, theta, check=False))
    w = R.weights
    prof.hsop_degrees = [mono_degree(next(iter(t.coeffs)), w) for t in theta]
    return prof


class NotCohenMacaulay(ValueError):
    pass


def is_gorenstein(R: PresentedRing, rng=None) -> bool:
    cert = cm_certificate(R, rng)
    if not cert.is_cm:
        raise NotCohenMacaulay(f"{R.name} is not certified CM")
    return socle_profile(R, cert.hsop).is_gorenstein


def is_level(R: PresentedRing, rng=None) -> bool:
    cert = cm_certificate(R, rng)
    if not cert.is_cm:
        raise NotCohenMacaulay(f"{R.name} is not certified CM")
    return socle_profile(R, cert.hsop).is_level


def h_top_dims(R: PresentedRing, i: int, cert: CMCertificate | None = None) -> int:
    """dim_k [H^d_m(R)]_i = dim_k [omega_R]_{-i} for CM rings."""
    if cert is None:
        cert = cm_certificate(R)
    if not cert.is_cm:
        raise NotCohenMacaulay(f"{R.name} is not certified CM")
    return hilbert_series(R).dual_coefficient(-i)


# ---------------------------------------------------------------- summary


@dataclass
class GradedInvariants:
    ring: str
    hilbert: HilbertSeries
    dimension: int
    multiplicity: Fraction
    weighted_multiplicity: bool
    a_invariant: int
    a_certified: bool
    cm: CMCertificate
    socle: SocleProfile | None
    gorenstein: bool | None
    level: bool | None

    def as_dict(self) -> dict:
        return {
            "ring": self.ring,
            "hilbert_series": self.hilbert.render(),
            "hilbert_numerator": list(self.hilbert.numerator),
            "hilbert_weights": list(self.hilbert.weights),
            "hilbert_coefficients": self.hilbert.coefficients(12),
            "dimension": self.dimension,
            "multiplicity": str(self.multiplicity),
            "weighted_multiplicity": self.weighted_multiplicity,
            "a_invariant": self.a_invariant,
            "a_certified": self.a_certified,
            "cohen_macaulay": self.cm.verdict,
            "hsop": [str(t) for t in self.cm.hsop],
            "socle_degrees": (
                {str(k): v for k, v in sorted(self.socle.degrees.items())} if self.socle else None
            ),
            "gorenstein": self.gorenstein,
            "level": self.level,
        }


def graded_invariants(R: PresentedRing, rng=None) -> GradedInvariants:
    rng = _rng(rng)
    H = hilbert_series(R)
    cert = cm_certificate(R, rng)
    socle = socle_profile(R, cert.hsop) if cert.is_cm else None
    if socle is not None and socle.a_invariant != H.a_invariant():
        raise AssertionError(
            f"duality check failed: series a={H.a_invariant()} vs socle a={socle.a_invariant}"
        )
    return GradedInvariants(
        ring=R.name,
        hilbert=H,
        dimension=H.krull_dimension(),
        multiplicity=H.multiplicity(),
        weighted_multiplicity=not R.is_standard_graded,
        a_invariant=H.a_invariant(),
        a_certified=cert.is_cm,
        cm=cert,
        socle=socle,
        gorenstein=socle.is_gorenstein if socle else None,
        level=socle.is_level if socle else None,
    )
