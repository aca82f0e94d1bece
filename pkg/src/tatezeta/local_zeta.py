"""Local zeta integrals at a single place.

Finite places use the multiplicative measure d*x = c_p dx/|x| with
c_p = p/(p - 1), so Vol(Z_p^x) = 1.  A step function's integral against
u^{v(x)} |x|^s splits over the shells v(x) = n; shell masses are exact up to
the root-of-unity factors carried by twisted terms, and all shells beyond a
finite level carry f(0).  The result is a rational function of X = p^{-s}.

The real place uses dx/|x| and the closed form pi^{-s/2} Gamma(s/2) (even) or
pi^{-(s+1)/2} Gamma((s+1)/2) (odd), scaled per Gaussian term.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Mapping, Sequence

import numpy as np

from .errors import NonConvergence, OutOfDomain, Pole, SingularPoint
from .exact import INFINITY, _check_prime, to_rational, valuation
from .places import additive_character
from .schwartz import ArchFunction, TwistedStepFunction, local_ft
from .special import adaptive_integrate, gamma, gamma_residue, is_gamma_pole


def _trim(coeffs: Sequence[complex]) -> tuple[complex, ...]:
    c = [complex(x) for x in coeffs]
    while len(c) > 1 and c[-1] == 0:
        c.pop()
    return tuple(c) if c else (0j,)


def _poly_mul(a: Sequence[complex], b: Sequence[complex]) -> tuple[complex, ...]:
    out = [0j] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        for j, y in enumerate(b):
            out[i + j] += x * y
    return _trim(out)


def _poly_eval(c: Sequence[complex], x: complex) -> complex:
    acc = 0j
    for coef in reversed(c):
        acc = acc * x + coef
    return acc


@dataclass(frozen=True)
class RationalFunction:
    """numerator(X) / denominator(X), coefficients listed from X^0 upward."""

    numerator: tuple[complex, ...]
    denominator: tuple[complex, ...] = (1 + 0j,)

    def __post_init__(self) -> None:
        num, den = _trim(self.numerator), _trim(self.denominator)
        if all(c == 0 for c in den):
            raise ValueError("denominator is identically zero")
        object.__setattr__(self, "numerator", num)
        object.__setattr__(self, "denominator", den)

    def __call__(self, x: complex) -> complex:
        d = _poly_eval(self.denominator, x)
        if d == 0:
            raise SingularPoint(f"denominator vanishes at X = {x}")
        return _poly_eval(self.numerator, x) / d

    def equals(self, other: RationalFunction) -> bool:
        """Exact equality of the represented functions (cross multiplication)."""
        return _poly_mul(self.numerator, other.denominator) == _poly_mul(other.numerator, self.denominator)

    def __mul__(self, other: RationalFunction) -> RationalFunction:
        return RationalFunction(
            _poly_mul(self.numerator, other.numerator),
            _poly_mul(self.denominator, other.denominator),
        )

    def at_s(self, p: int, s: complex) -> complex:
        return self(cmath.exp(-complex(s) * math.log(p)))

    def __str__(self) -> str:
        def fmt(c: Sequence[complex]) -> str:
            parts = []
            for i, z in enumerate(c):
                if z == 0:
                    continue
                coef = f"{z.real:g}" if z.imag == 0 else f"({z.real:g}{z.imag:+g}i)"
                parts.append(coef if i == 0 else f"{coef}*X" + (f"^{i}" if i > 1 else ""))
            return " + ".join(parts) or "0"

        return f"[{fmt(self.numerator)}] / [{fmt(self.denominator)}]"


def c_factor(p: int) -> Fraction:
    return Fraction(p, p - 1)


def shell_measure(a: Fraction | int, n: int, p: int, shell: int | None = None) -> Fraction:
    """d*x-volume of (a + p^n Z_p) intersected with a shell.

    If the coset avoids 0 it lies inside the shell v = v_p(a) and ``shell``
    may be omitted.  For the coset p^n Z_p the caller names the shell
    (n <= shell); each such shell is a full translate of Z_p^x and has volume 1.
    """
    _check_prime(p)
    a = to_rational(a)
    va = valuation(a, p)
    if va < n:
        if shell is not None and shell != va:
            return Fraction(0)
        return c_factor(p) * Fraction(p) ** va * Fraction(p) ** -n
    if shell is None:
        raise ValueError("coset contains 0: name the shell")
    return Fraction(1) if shell >= n else Fraction(0)


@dataclass(frozen=True)
class ShellDecomposition:
    """Masses of the shells v(x) = n below ``tail_start``; every later shell has mass f0."""

    p: int
    masses: Mapping[int, complex]
    tail_start: int
    f0: complex

    def mass(self, n: int) -> complex:
        if n >= self.tail_start:
            return self.f0
        return self.masses.get(n, 0j)

    @property
    def lowest(self) -> int:
        return min([*self.masses, self.tail_start])


def shell_decomposition(f: TwistedStepFunction) -> ShellDecomposition:
    p = f.p
    cp = c_factor(p)
    masses: dict[int, complex] = {}
    tail_terms: list[tuple[complex, int]] = []

    def add(n: int, m: complex) -> None:
        masses[n] = masses.get(n, 0j) + m

    for t in f.terms:
        va = valuation(t.a, p)
        vb = valuation(t.b, p)
        if va < t.n:
            # coset sits inside the shell v = va
            if vb >= -t.n:
                vol = cp * Fraction(p) ** va * Fraction(p) ** -t.n
                add(va, t.c * float(vol) * additive_character(p, t.a * t.b))
            continue
        # coset is p^n Z_p: shells n, n+1, ...
        start = t.n if vb is INFINITY else max(t.n, -vb)
        if start > t.n:
            # shells below -v(b) - 1 cancel; the shell -v(b) - 1 carries -c/(p-1)
            add(start - 1, -t.c / (p - 1))
        tail_terms.append((t.c, start))
    tail_start = max([s for _, s in tail_terms] + [n + 1 for n in masses] or [0])
    f0 = sum((c for c, _ in tail_terms), 0j)
    for c, start in tail_terms:
        for n in range(start, tail_start):
            add(n, c)
    masses = {n: m for n, m in sorted(masses.items()) if n < tail_start}
    return ShellDecomposition(p, masses, tail_start, f0)


def local_zeta_factor(f: TwistedStepFunction, u: complex = 1.0) -> RationalFunction:
    """Z_p(f, u, s) as a rational function of X = p^{-s}.

    Sum over shells of mass_n u^n X^n; the tail contributes
    f0 u^M X^M / (1 - u X).  Negative shells are cleared into a power of X
    in the denominator.
    """
    dec = shell_decomposition(f)
    u = complex(u)
    low = min(dec.lowest, 0)
    M = dec.tail_start
    # finite part, shifted by -low so all exponents are >= 0
    poly = [0j] * (M - low)
    for n, m in dec.masses.items():
        poly[n - low] += m * u**n
    tail = [0j] * (M - low) + [dec.f0 * u**M]
    num = [a - b for a, b in zip(poly + [0j], [0j] + [u * c for c in poly])]
    num = [x + y for x, y in zip(num, tail)]
    den = [0j] * (-low) + [1 + 0j, -u]
    return RationalFunction(tuple(num), tuple(den))


def local_ratio_polynomial(f: TwistedStepFunction, u: complex = 1.0) -> tuple[int, tuple[complex, ...]]:
    """Z_p(f, u, s) * (1 - u X) as a Laurent polynomial (shift, coefficients).

    The value at X = p^{-s} is the ratio of f's local factor to the
    unramified Euler factor; it is entire in s.
    """
    dec = shell_decomposition(f)
    u = complex(u)
    low = min(dec.lowest, 0)
    M = dec.tail_start
    poly = [0j] * (M - low)
    for n, m in dec.masses.items():
        poly[n - low] += m * u**n
    out = [a - b for a, b in zip(poly + [0j], [0j] + [u * c for c in poly])]
    out[M - low] += dec.f0 * u**M
    return low, _trim(out)


def eval_laurent(shift: int, coeffs: Sequence[complex], x: complex) -> complex:
    return _poly_eval(coeffs, x) * x**shift


def shell_sum_oracle(
    f: TwistedStepFunction,
    u: complex,
    s: complex,
    tol: float = 1e-13,
    max_shells: int = 100_000,
) -> complex:
    """Brute-force evaluation of the same integral.

    Shell masses come from enumerating f on coset representatives of each
    shell (no use of the closed-form decomposition); shells are summed until
    the geometric tail bound drops below ``tol``.
    """
    p = f.p
    s = complex(s)
    u = complex(u)
    L = max(f.constancy_level, f.support_level + 1)
    N = f.support_level
    X = cmath.exp(-s * math.log(p))
    ratio = abs(u * X)
    f0 = f(0)
    if f0 != 0 and ratio >= 1:
        raise NonConvergence("shell sum diverges for Re(s) <= 0 with f(0) != 0")
    cp = float(c_factor(p))
    total = 0j
    n = N
    while True:
        if n < L:
            count = p ** (L - n)
            vals = f.grid_values(n, count)
            k = np.arange(count)
            unit = k % p != 0
            # each representative p^n k stands for a coset of volume p^-L
            mass = cp * p**n * p ** (-L) * complex(np.sum(vals[unit]))
        else:
            mass = f(Fraction(p) ** n)
        total += mass * (u * X) ** n
        if n >= L:
            bound = abs(f0) * ratio ** (n + 1) / (1 - ratio) if f0 != 0 else 0.0
            if bound < tol:
                return total
        n += 1
        if n - N > max_shells:
            raise NonConvergence("shell sum did not converge")


# --- real place ---------------------------------------------------------------


def _arch_pole(s: complex, parity: int) -> int | None:
    z = (complex(s) + parity) / 2
    if is_gamma_pole(z):
        return -round(z.real)
    return None


def arch_zeta(f: ArchFunction, parity: int, s: complex) -> complex | Pole:
    """Integral of f(x) sign(x)^a |x|^s dx/|x| over R^x, continued in s.

    A term c x^k exp(-pi b x^2) contributes only when k = a; it gives
    c (pi b)^{-(s+a)/2} Gamma((s+a)/2).
    """
    if parity not in (0, 1):
        raise ValueError("parity must be 0 or 1")
    s = complex(s)
    weight = arch_ratio(f, parity, s)
    k = _arch_pole(s, parity)
    if k is not None:
        # residue in s of pi^{-z} Gamma(z), z = (s + a)/2, is 2 pi^{k} (-1)^k / k!
        return Pole(s, weight * 2 * math.pi**k * gamma_residue(k))
    z = (s + parity) / 2
    return weight * cmath.exp(-z * math.log(math.pi)) * gamma(z)


def arch_ratio(f: ArchFunction, parity: int, s: complex) -> complex:
    """arch_zeta(f) divided by the value for x^a exp(-pi x^2); entire in s."""
    z = (complex(s) + parity) / 2
    return sum((t.c * cmath.exp(-z * math.log(t.a)) for t in f.terms if t.k == parity), 0j)


def arch_zeta_quadrature(f: ArchFunction, parity: int, s: complex, tol: float = 1e-12) -> complex:
    """Quadrature oracle for :func:`arch_zeta` (requires Re(s) > 0).

    Substituting x = e^w turns the integral into
    int (f(e^w) + (-1)^a f(-e^w)) e^{s w} dw, which is integrated by panel
    doubling on a window outside of which both tails are below tol/10.
    """
    s = complex(s)
    sigma = s.real
    if sigma <= 0:
        raise OutOfDomain("quadrature oracle needs Re(s) > 0")
    amax = sum(abs(t.c) for t in f.terms) or 1.0
    # left tail: |integrand| <= amax e^{sigma w}
    w_lo = math.log(tol / (10 * amax) * sigma) / sigma
    bmin = f.min_scale
    # right tail: exp(-pi b e^{2w}) e^{(sigma+1) w} below tol/10
    w_hi = 0.5 * math.log(max(1.0, (math.log(10 * amax / tol) + 5 * (sigma + 1)) / (math.pi * bmin)))
    w_hi += 0.5 * math.log(max(1.0, (sigma + 1)))
    sign = (-1) ** parity

    def integrand(w: np.ndarray) -> np.ndarray:
        x = np.exp(w)
        return (f(x) + sign * f(-x)) * np.exp(s * w)

    pieces = max(1, int(math.ceil((w_hi - w_lo) / 4)))
    edges = np.linspace(w_lo, w_hi, pieces + 1)
    return sum(
        (adaptive_integrate(integrand, a, b, tol / (2 * pieces)) for a, b in zip(edges[:-1], edges[1:])),
        0j,
    )


# --- local functional-equation ratio -----------------------------------------------


@dataclass(frozen=True)
class FinitePlaceData:
    p: int
    u: complex = 1.0


@dataclass(frozen=True)
class RealPlaceData:
    parity: int = 0


def local_zeta_value(f, place, s: complex) -> complex | Pole:
    if isinstance(place, RealPlaceData):
        return arch_zeta(f, place.parity, s)
    X = cmath.exp(-complex(s) * math.log(place.p))
    return local_zeta_factor(f, place.u)(X)


def local_gamma_ratio(f, place: FinitePlaceData | RealPlaceData, s: complex) -> complex:
    """Z(f^, chi^{-1} |.|^{1-s}) / Z(f, chi |.|^s) at one place.

    For an unramified finite place the character value at p is ``place.u``
    and its inverse is 1/u.
    """
    s = complex(s)
    fhat = local_ft(f)
    if isinstance(place, RealPlaceData):
        num = arch_zeta(fhat, place.parity, 1 - s)
        den = arch_zeta(f, place.parity, s)
    else:
        dual = FinitePlaceData(place.p, 1 / complex(place.u))
        num = local_zeta_value(fhat, dual, 1 - s)
        den = local_zeta_value(f, place, s)
    if isinstance(num, Pole) or isinstance(den, Pole):
        raise SingularPoint(f"local factor has a pole at s = {s}")
    if abs(den) == 0:
        raise SingularPoint(f"local factor vanishes at s = {s}")
    return num / den
