"""Schwartz-Bruhat test functions with closed-form Fourier transforms.

Real place: finite sums of c * x^k * exp(-pi a x^2), k in {0, 1}.
Finite place p: finite sums of c * psi_p(b x) * 1[x in a + p^n Z_p].
Both classes are closed under the Fourier transform for the characters
psi_real(x) = exp(-2 pi i x), psi_p(x) = exp(2 pi i frac_p(x)) and the
self-dual measures (Lebesgue, Vol(Z_p) = 1).
"""

from __future__ import annotations

import math
import re
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Mapping, Sequence

import numpy as np

from .errors import InvalidArgument
from .exact import (
    INFINITY,
    _check_prime,
    frac_p,
    parse_rational,
    residue_mod,
    to_rational,
    valuation,
)
from .places import AdelePoint, additive_character


@dataclass(frozen=True)
class ArchTerm:
    c: complex
    k: int
    a: float

    def __post_init__(self) -> None:
        if self.k not in (0, 1):
            raise InvalidArgument("archimedean degree must be 0 or 1")
        if not self.a > 0:
            raise InvalidArgument("Gaussian scale must be positive")
        object.__setattr__(self, "c", complex(self.c))
        object.__setattr__(self, "a", float(self.a))


@dataclass(frozen=True)
class ArchFunction:
    terms: tuple[ArchTerm, ...] = ()

    def __post_init__(self) -> None:
        object.__setattr__(self, "terms", tuple(self.terms))

    @classmethod
    def gaussian(cls, a: float = 1.0, k: int = 0, c: complex = 1.0) -> ArchFunction:
        return cls((ArchTerm(c, k, a),))

    def __call__(self, x):
        x = np.asarray(x, dtype=float) if not np.isscalar(x) else float(x)
        out = 0j
        for t in self.terms:
            out = out + t.c * (x if t.k else 1.0) * np.exp(-math.pi * t.a * np.square(x))
        return out

    def __add__(self, other: ArchFunction) -> ArchFunction:
        return ArchFunction(self.terms + other.terms)

    def scale(self, alpha: complex) -> ArchFunction:
        return ArchFunction(tuple(ArchTerm(alpha * t.c, t.k, t.a) for t in self.terms))

    @property
    def min_scale(self) -> float:
        return min((t.a for t in self.terms), default=math.inf)


@dataclass(frozen=True)
class StepTerm:
    """c * psi_p(b x) * 1[v_p(x - a) >= n]."""

    c: complex
    b: Fraction
    a: Fraction
    n: int

    def __post_init__(self) -> None:
        object.__setattr__(self, "c", complex(self.c))
        object.__setattr__(self, "b", to_rational(self.b))
        object.__setattr__(self, "a", to_rational(self.a))
        object.__setattr__(self, "n", int(self.n))


@dataclass(frozen=True)
class TwistedStepFunction:
    p: int
    terms: tuple[StepTerm, ...] = ()

    def __post_init__(self) -> None:
        _check_prime(self.p)
        object.__setattr__(self, "terms", tuple(self.terms))

    @classmethod
    def indicator(cls, p: int, a: Fraction | int = 0, n: int = 0, c: complex = 1.0) -> TwistedStepFunction:
        """c times the indicator of a + p^n Z_p."""
        return cls(p, (StepTerm(c, Fraction(0), to_rational(a), n),))

    @classmethod
    def units(cls, p: int) -> TwistedStepFunction:
        """Indicator of Z_p^x as 1_{Z_p} - 1_{p Z_p}."""
        return cls(p, (StepTerm(1, 0, 0, 0), StepTerm(-1, 0, 0, 1)))

    def __call__(self, x) -> complex:
        x = to_rational(x)
        total = 0j
        for t in self.terms:
            if valuation(x - t.a, self.p) >= t.n:
                total += t.c * additive_character(self.p, t.b * x)
        return total

    def __add__(self, other: TwistedStepFunction) -> TwistedStepFunction:
        if other.p != self.p:
            raise InvalidArgument("cannot add step functions at different primes")
        return TwistedStepFunction(self.p, self.terms + other.terms)

    def scale(self, alpha: complex) -> TwistedStepFunction:
        return TwistedStepFunction(self.p, tuple(StepTerm(alpha * t.c, t.b, t.a, t.n) for t in self.terms))

    @property
    def support_level(self) -> int:
        """Largest N with supp f inside p^N Z_p (0 for the zero function)."""
        levels = [min(t.n, valuation(t.a, self.p)) for t in self.terms]
        return min(levels) if levels else 0

    @property
    def constancy_level(self) -> int:
        """A level L such that f is constant on cosets of p^L Z_p."""
        levels = []
        for t in self.terms:
            vb = valuation(t.b, self.p)
            levels.append(t.n if vb is INFINITY else max(t.n, -vb))
        return max(levels) if levels else 0

    def is_standard(self) -> bool:
        return self.terms == (StepTerm(1, 0, 0, 0),)

    def grid_values(self, base: int, count: int) -> np.ndarray:
        """Values f(p^base * k) for k = 0, ..., count - 1, vectorized."""
        p = self.p
        k = np.arange(count, dtype=np.int64)
        out = np.zeros(count, dtype=complex)
        scale = Fraction(p) ** base
        for t in self.terms:
            mask = _coset_mask(k, p, base, t.a, t.n)
            if not mask.any():
                continue
            beta = frac_p(t.b * scale, p)
            if beta == 0:
                phase = np.ones(count, dtype=complex)
            else:
                num, den = beta.numerator, beta.denominator
                turns = (k % den) * num % den
                phase = np.exp(2j * math.pi * turns / den)
            out += t.c * phase * mask
        return out


def _coset_mask(k: np.ndarray, p: int, base: int, a: Fraction, n: int) -> np.ndarray:
    """Mask of k with p^base * k in a + p^n Z_p."""
    va = valuation(a, p)
    if va >= n:  # coset is p^n Z_p
        if base >= n:
            return np.ones(k.shape, dtype=bool)
        return k % (p ** (n - base)) == 0
    if va < base:
        return np.zeros(k.shape, dtype=bool)
    shifted = a / Fraction(p) ** base  # p-integral
    m = p ** (n - base)
    return k % m == residue_mod(shifted, p, n - base)


@dataclass(frozen=True)
class GlobalTestFunction:
    """Factorizable adelic test function; unlisted primes carry 1_{Z_p}."""

    arch: ArchFunction = field(default_factory=ArchFunction.gaussian)
    finite: Mapping[int, TwistedStepFunction] = field(default_factory=dict)

    def __post_init__(self) -> None:
        comps = dict(sorted(dict(self.finite).items()))
        for p, f in comps.items():
            if f.p != p:
                raise InvalidArgument(f"finite part keyed {p} lives at prime {f.p}")
        object.__setattr__(self, "finite", comps)

    @classmethod
    def standard(cls) -> GlobalTestFunction:
        return cls()

    def local(self, p: int) -> TwistedStepFunction:
        return self.finite.get(p) or TwistedStepFunction.indicator(p)

    def __call__(self, x: AdelePoint) -> complex:
        return global_eval(self, x)


STANDARD = GlobalTestFunction()


# --- evaluation and transforms ------------------------------------------------


def local_eval(f: ArchFunction | TwistedStepFunction, x) -> complex:
    return complex(f(x))


def arch_ft(f: ArchFunction) -> ArchFunction:
    terms = []
    for t in f.terms:
        if t.k == 0:
            terms.append(ArchTerm(t.c * t.a**-0.5, 0, 1.0 / t.a))
        else:
            terms.append(ArchTerm(-1j * t.c * t.a**-1.5, 1, 1.0 / t.a))
    return ArchFunction(tuple(terms))


def step_ft(f: TwistedStepFunction) -> TwistedStepFunction:
    """Term rule (c, b, a, n) -> (c p^{-n} psi_p(ab), a, -b, -n)."""
    p = f.p
    terms = tuple(
        StepTerm(t.c * float(Fraction(p) ** -t.n) * additive_character(p, t.a * t.b), t.a, -t.b, -t.n)
        for t in f.terms
    )
    return TwistedStepFunction(p, terms)


def local_ft(f: ArchFunction | TwistedStepFunction) -> ArchFunction | TwistedStepFunction:
    if isinstance(f, ArchFunction):
        return arch_ft(f)
    return step_ft(f)


def global_eval(f: GlobalTestFunction, x: AdelePoint) -> complex:
    value = complex(f.arch(float(x.real)))
    if value == 0:
        return 0j
    for p in sorted(set(f.finite) | set(x.finite)):
        comp = x.component(p)
        if p in f.finite:
            value *= f.finite[p](comp)
        elif valuation(comp, p) < 0:
            return 0j
        if value == 0:
            return 0j
    return value


def global_ft(f: GlobalTestFunction) -> GlobalTestFunction:
    return GlobalTestFunction(arch_ft(f.arch), {p: step_ft(g) for p, g in f.finite.items()})


def local_integral(f: ArchFunction | TwistedStepFunction) -> complex:
    """Additive-measure integral, i.e. the Fourier transform at 0."""
    if isinstance(f, ArchFunction):
        return sum((t.c * t.a**-0.5 for t in f.terms if t.k == 0), 0j)
    return step_ft(f)(0)


# --- literal mini-language ------------------------------------------------------

_COMPLEX_RE = re.compile(
    r"^\s*(?:(?P<re>[+-]?(?:\d+\.?\d*|\.\d+)(?:[eE][+-]?\d+)?)(?P<im>[+-](?:\d+\.?\d*|\.\d+)?(?:[eE][+-]?\d+)?)i"
    r"|(?P<only_im>[+-]?(?:\d+\.?\d*|\.\d+)?(?:[eE][+-]?\d+)?)i"
    r"|(?P<only_re>[+-]?(?:\d+\.?\d*|\.\d+)(?:[eE][+-]?\d+)?))\s*$"
)


def parse_complex(text: str) -> complex:
    """Parse ``"<float>[+|-]<float>i"``, ``"<float>"`` or ``"<float>i"``."""
    m = _COMPLEX_RE.match(text)
    if m is None:
        raise InvalidArgument(f"malformed complex literal {text!r}")

    def _im(s: str) -> float:
        return float(s + "1") if s in ("", "+", "-") else float(s)

    if m.group("only_re") is not None:
        return complex(float(m.group("only_re")), 0.0)
    if m.group("only_im") is not None:
        return complex(0.0, _im(m.group("only_im")))
    return complex(float(m.group("re")), _im(m.group("im")))


_TERM_RE = re.compile(r"^\(\s*(.*)\s*\)$")


def _kv(text: str) -> dict[str, str]:
    out = {}
    for item in filter(None, (s.strip() for s in text.split(","))):
        if "=" not in item:
            raise InvalidArgument(f"expected key=value, got {item!r}")
        k, v = item.split("=", 1)
        out[k.strip()] = v.strip()
    return out


def parse_test_function(text: str) -> GlobalTestFunction:
    """Parse the CLI test-function literal.

    Parts are separated by ``|``::

        gauss:a=<rational>,k=<0|1>[,c=<cplx>]
        step:p=<prime>;(c=<cplx>,b=<rat>,a=<rat>,n=<int>);...

    Several ``gauss`` parts add up; omitted parts default to the standard
    components (the unit Gaussian and 1_{Z_p}).
    """
    arch_terms: list[ArchTerm] = []
    finite: dict[int, TwistedStepFunction] = {}
    for part in filter(None, (s.strip() for s in text.split("|"))):
        kind, _, body = part.partition(":")
        kind = kind.strip()
        if kind == "gauss":
            kv = _kv(body)
            unknown = set(kv) - {"a", "k", "c"}
            if unknown:
                raise InvalidArgument(f"unknown gauss keys {sorted(unknown)}")
            a = float(parse_rational(kv.get("a", "1")))
            k = int(kv.get("k", "0"))
            c = parse_complex(kv["c"]) if "c" in kv else 1.0
            arch_terms.append(ArchTerm(c, k, a))
        elif kind == "step":
            pieces = [s.strip() for s in body.split(";") if s.strip()]
            if not pieces or not pieces[0].startswith("p="):
                raise InvalidArgument("step part must start with p=<prime>")
            p = int(pieces[0][2:])
            terms = []
            for piece in pieces[1:]:
                m = _TERM_RE.match(piece)
                if m is None:
                    raise InvalidArgument(f"malformed step term {piece!r}")
                kv = _kv(m.group(1))
                if set(kv) - {"c", "b", "a", "n"}:
                    raise InvalidArgument(f"unknown step keys in {piece!r}")
                terms.append(
                    StepTerm(
                        parse_complex(kv.get("c", "1")),
                        parse_rational(kv.get("b", "0")),
                        parse_rational(kv.get("a", "0")),
                        int(kv.get("n", "0")),
                    )
                )
            g = TwistedStepFunction(p, tuple(terms))
            finite[p] = finite[p] + g if p in finite else g
        else:
            raise InvalidArgument(f"unknown test-function part {kind!r}")
    arch = ArchFunction(tuple(arch_terms)) if arch_terms else ArchFunction.gaussian()
    return GlobalTestFunction(arch, finite)
