"""Adelic Poisson summation and Riemann-Roch, checked numerically.

The sum over gamma in Q of f(gamma x) is finite-dimensional: the finite
components of f and x confine gamma to finitely many progressions r + mZ, on
each of which the finite part of f is constant.  What remains is a Gaussian
lattice sum at the real place, truncated with a certified tail.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from .errors import InvalidArgument
from .exact import valuation
from .global_zeta import DEFAULT_TOL, theta
from .places import IdelePoint, idele_norm
from .schwartz import GlobalTestFunction, TwistedStepFunction, global_ft


@dataclass(frozen=True)
class LatticeProgression:
    """gamma in residue + modulus * Z, on which f's finite part equals ``weight``."""

    modulus: Fraction
    residue: Fraction
    arch_scale: float
    weight: complex = 1 + 0j

    def __contains__(self, gamma: Fraction) -> bool:
        k = (Fraction(gamma) - self.residue) / self.modulus
        return k.denominator == 1


def support_progression(f: GlobalTestFunction, x: IdelePoint) -> list[LatticeProgression]:
    """Progressions covering {gamma in Q : f_fin(gamma x) != 0}, pairwise disjoint.

    At a prime p with f_p supported in p^N Z_p and constant on p^L cosets,
    gamma x_p in supp f_p forces gamma in p^{N - v(x_p)} Z_p, and the value only
    depends on gamma mod p^{L - v(x_p)}.  CRT glues the admissible residues.
    An empty list means the sum vanishes.
    """
    primes = sorted(set(f.finite) | set(x.finite))
    base = Fraction(1)
    local_choices: list[list[tuple[int, complex]]] = []
    moduli: list[int] = []
    for p in primes:
        fp = f.local(p)
        vx = valuation(x.component(p), p)
        N = fp.support_level
        L = max(fp.constancy_level, N)
        base *= Fraction(p) ** (N - vx)
        moduli.append(p ** (L - N))
        local_choices.append([])
    # gamma = base * k, k an integer; f_p(gamma x_p) depends on k mod p^{L - N}
    for i, p in enumerate(primes):
        fp = f.local(p)
        step = base * x.component(p)
        choices = []
        for k in range(moduli[i]):
            val = fp(step * k)
            if val != 0:
                choices.append((k, val))
        if not choices:
            return []
        local_choices[i] = choices
    big = math.prod(moduli)
    arch_scale = abs(float(x.real))
    out = []
    for combo in itertools.product(*local_choices):
        k0 = 0
        weight = 1 + 0j
        for (k, val), m in zip(combo, moduli):
            rest = big // m
            if m > 1:
                k0 += k * rest * pow(rest, -1, m)
            weight *= val
        out.append(LatticeProgression(base * big, base * (k0 % big), arch_scale, weight))
    return out


def _arch_lattice_sum(f: GlobalTestFunction, prog: LatticeProgression, real: float, tol: float) -> complex:
    cmin = f.arch.min_scale
    if not math.isfinite(cmin):
        return 0j
    amax = sum(abs(t.c) for t in f.arch.terms)
    # |y| > B makes every term below tol * e^{-pi cmin y^2 / 2}-ish; two guard steps
    B = math.sqrt(max(1.0, (math.log(max(amax, 1.0) / tol) + 2) / (math.pi * cmin))) * 1.5
    m = float(prog.modulus)
    r = float(prog.residue)
    X = abs(real)
    lo = math.floor((-B / X - r) / m) - 2
    hi = math.ceil((B / X - r) / m) + 2
    j = np.arange(lo, hi + 1, dtype=float)
    gammas = r + m * j
    vals = f.arch(gammas * real)
    return complex(np.sum(vals))


def adelic_average(f: GlobalTestFunction, x: IdelePoint, tol: float = DEFAULT_TOL) -> complex:
    """sum_{gamma in Q} f(gamma x)."""
    total = 0j
    real = float(x.real)
    for prog in support_progression(f, x):
        total += prog.weight * _arch_lattice_sum(f, prog, real, tol)
    return total


def riemann_roch_defect(f: GlobalTestFunction, x: IdelePoint, tol: float = DEFAULT_TOL) -> float:
    """|sum f(gamma x) - |x|^{-1} sum f^(gamma x^{-1})|."""
    lhs = adelic_average(f, x, tol)
    rhs = adelic_average(global_ft(f), x.inverse(), tol) / float(idele_norm(x))
    return abs(lhs - rhs)


def theta_identity_defect(t: float, tol: float = 1e-16) -> float:
    """|theta(1/t) - sqrt(t) theta(t)|."""
    if t <= 0:
        raise InvalidArgument("theta identity needs t > 0")
    if t == 1:
        return 0.0
    return abs(theta(1.0 / t, tol) - math.sqrt(t) * theta(t, tol))
