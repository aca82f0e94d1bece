"""Exact rational arithmetic at every place of Q.

Rationals are :class:`fractions.Fraction` throughout; finite-place quantities
only depend on valuations and residues, so nothing here rounds.
"""

from __future__ import annotations

import re
from fractions import Fraction
from functools import lru_cache
from typing import Union

from .errors import InvalidArgument

RationalLike = Union[Fraction, int]

_RATIONAL_RE = re.compile(r"^\s*(-?\d+)(?:\s*/\s*(\d+))?\s*$")


class _Infinity:
    """Valuation of zero; larger than every integer."""

    _instance: _Infinity | None = None

    def __new__(cls) -> _Infinity:
        if cls._instance is None:
            cls._instance = super().__new__(cls)
        return cls._instance

    def __repr__(self) -> str:
        return "INFINITY"

    def __eq__(self, other: object) -> bool:
        return other is self

    def __hash__(self) -> int:
        return hash("tatezeta.INFINITY")

    def __lt__(self, other: object) -> bool:
        return False

    def __le__(self, other: object) -> bool:
        return other is self

    def __gt__(self, other: object) -> bool:
        return other is not self

    def __ge__(self, other: object) -> bool:
        return True

    def __add__(self, other: object) -> _Infinity:
        return self

    __radd__ = __add__


INFINITY = _Infinity()
ExtendedValuation = Union[int, _Infinity]


@lru_cache(maxsize=4096)
def is_prime(n: int) -> bool:
    """Deterministic Miller-Rabin for n < 3.3e24."""
    if n < 2:
        return False
    small = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41)
    for q in small:
        if n % q == 0:
            return n == q
    d, r = n - 1, 0
    while d % 2 == 0:
        d //= 2
        r += 1
    for a in small:
        x = pow(a, d, n)
        if x in (1, n - 1):
            continue
        for _ in range(r - 1):
            x = x * x % n
            if x == n - 1:
                break
        else:
            return False
    return True


def _check_prime(p: int) -> None:
    if not isinstance(p, int) or not is_prime(p):
        raise InvalidArgument(f"{p!r} is not a prime")


def prime_factors(n: int) -> list[int]:
    """Distinct prime factors of |n| in increasing order (trial division)."""
    n = abs(n)
    out = []
    d = 2
    while d * d <= n:
        if n % d == 0:
            out.append(d)
            while n % d == 0:
                n //= d
        d += 1 if d == 2 else 2
    if n > 1:
        out.append(n)
    return out


def rational_primes(q: Fraction) -> list[int]:
    """Primes where the rational q is not a unit (q != 0)."""
    return sorted(set(prime_factors(q.numerator)) | set(prime_factors(q.denominator)))


def to_rational(x: RationalLike | str) -> Fraction:
    if isinstance(x, Fraction):
        return x
    if isinstance(x, int):
        return Fraction(x)
    if isinstance(x, str):
        return parse_rational(x)
    raise InvalidArgument(f"cannot interpret {x!r} as a rational")


def parse_rational(text: str) -> Fraction:
    """Parse ``"a/b"`` or ``"a"`` with an optional leading minus."""
    m = _RATIONAL_RE.match(text)
    if m is None:
        raise InvalidArgument(f"malformed rational literal {text!r}")
    num = int(m.group(1))
    den = int(m.group(2)) if m.group(2) is not None else 1
    if den == 0:
        raise InvalidArgument(f"zero denominator in {text!r}")
    return Fraction(num, den)


def _int_valuation(n: int, p: int) -> int:
    v = 0
    while n % p == 0:
        n //= p
        v += 1
    return v


def valuation(x: RationalLike, p: int) -> ExtendedValuation:
    """Exponent of ``p`` in ``x``; :data:`INFINITY` for zero."""
    _check_prime(p)
    x = to_rational(x)
    if x == 0:
        return INFINITY
    return _int_valuation(x.numerator, p) - _int_valuation(x.denominator, p)


def abs_at_place(x: RationalLike, place) -> Fraction:
    """Normalized absolute value of ``x`` at ``place``.

    ``place`` is a :class:`~tatezeta.places.Place`, a prime, or ``"real"``.
    """
    x = to_rational(x)
    p = _place_prime(place)
    if p is None:
        return abs(x)
    if x == 0:
        return Fraction(0)
    v = valuation(x, p)
    return Fraction(1, p**v) if v >= 0 else Fraction(p ** (-v))


def _place_prime(place) -> int | None:
    if place == "real" or place is None:
        return None
    if isinstance(place, int):
        _check_prime(place)
        return place
    prime = getattr(place, "prime", None)
    if prime is None and getattr(place, "is_real", False):
        return None
    if prime is None:
        raise InvalidArgument(f"unrecognized place {place!r}")
    return prime


def frac_p(x: RationalLike, p: int) -> Fraction:
    """The p-adic fractional part: r in [0, 1) with p-power denominator and v_p(x - r) >= 0."""
    _check_prime(p)
    x = to_rational(x)
    if x == 0:
        return Fraction(0)
    v = valuation(x, p)
    if v >= 0:
        return Fraction(0)
    pk = p ** (-v)
    # x = a / (b * p^k) with p not dividing a*b
    a = x.numerator
    b = x.denominator // pk
    return Fraction(a * pow(b, -1, pk) % pk, pk)


def unit_part(x: RationalLike, p: int) -> Fraction:
    """x / p^{v_p(x)} for nonzero x."""
    x = to_rational(x)
    if x == 0:
        raise InvalidArgument("zero has no unit part")
    v = valuation(x, p)
    return x / Fraction(p) ** v


def residue_mod(x: RationalLike, p: int, k: int) -> int:
    """Integer in [0, p^k) congruent to the p-integral rational ``x`` mod p^k."""
    x = to_rational(x)
    m = p**k
    if x.denominator % p == 0:
        raise InvalidArgument(f"{x} is not p-integral at {p}")
    return x.numerator * pow(x.denominator, -1, m) % m
