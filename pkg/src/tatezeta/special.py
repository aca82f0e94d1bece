"""Numerical kernels: complex gamma, panel-doubling quadrature, Bernoulli numbers."""

from __future__ import annotations

import cmath
import math
import sys
from fractions import Fraction
from functools import lru_cache
from typing import Callable

import numpy as np

from .errors import NonConvergence

# Lanczos approximation, g = 7, nine coefficients.
_LANCZOS_G = 7.0
_LANCZOS_COEF = (
    0.99999999999980993,
    676.5203681218851,
    -1259.1392167224028,
    771.32342877765313,
    -176.61502916214059,
    12.507343278686905,
    -0.13857109526572012,
    9.9843695780195716e-6,
    1.5056327351493116e-7,
)
_HALF_LOG_2PI = 0.5 * math.log(2.0 * math.pi)

EPS = sys.float_info.epsilon


def is_gamma_pole(z: complex, atol: float = 0.0) -> bool:
    z = complex(z)
    if abs(z.imag) > atol:
        return False
    n = round(z.real)
    return n <= 0 and abs(z.real - n) <= atol


def gamma(z: complex) -> complex:
    """Complex Gamma function; raises ZeroDivisionError at non-positive integers."""
    z = complex(z)
    if is_gamma_pole(z):
        raise ZeroDivisionError(f"Gamma has a pole at {z}")
    if z.real < 0.5:
        return cmath.pi / (cmath.sin(cmath.pi * z) * gamma(1.0 - z))
    return cmath.exp(_lanczos_log_gamma(z))


def _lanczos_log_gamma(z: complex) -> complex:
    z -= 1.0
    series = _LANCZOS_COEF[0]
    for k in range(1, len(_LANCZOS_COEF)):
        series += _LANCZOS_COEF[k] / (z + k)
    t = z + _LANCZOS_G + 0.5
    return _HALF_LOG_2PI + (z + 0.5) * cmath.log(t) - t + cmath.log(series)


def gamma_residue(n: int) -> float:
    """Residue of Gamma at the pole -n."""
    return (-1) ** n / math.factorial(n)


# --- quadrature ---------------------------------------------------------

_GL_NODES, _GL_WEIGHTS = np.polynomial.legendre.leggauss(20)


def _panel_sum(func: Callable[[np.ndarray], np.ndarray], a: float, b: float, panels: int):
    edges = np.linspace(a, b, panels + 1)
    half = 0.5 * (edges[1:] - edges[:-1])
    mid = 0.5 * (edges[1:] + edges[:-1])
    x = (mid[:, None] + half[:, None] * _GL_NODES[None, :]).ravel()
    w = (half[:, None] * _GL_WEIGHTS[None, :]).ravel()
    vals = np.asarray(func(x))
    return complex(np.sum(w * vals)), float(np.sum(w * np.abs(vals)))


def adaptive_integrate(
    func: Callable[[np.ndarray], np.ndarray],
    a: float,
    b: float,
    tol: float,
    max_panels: int = 1 << 12,
) -> complex:
    """Integrate a smooth vectorized ``func`` over [a, b] to absolute error ``tol``.

    Composite 20-point Gauss-Legendre; the panel count doubles until two
    successive estimates differ by less than ``tol``.  A tolerance below the
    rounding floor of the sum raises :class:`NonConvergence` instead of
    returning an uncertified number.
    """
    panels = 1
    prev, scale = _panel_sum(func, a, b, panels)
    floor = 64 * EPS * max(scale, 1e-300)
    if tol < floor:
        raise NonConvergence(
            f"tolerance {tol:g} is below the double-precision floor {floor:.1e}"
        )
    while panels < max_panels:
        panels *= 2
        cur, _ = _panel_sum(func, a, b, panels)
        if abs(cur - prev) < tol:
            return cur
        prev = cur
    raise NonConvergence(f"quadrature did not reach {tol:g} with {max_panels} panels")


# --- Bernoulli numbers ----------------------------------------------------


@lru_cache(maxsize=None)
def bernoulli(n: int) -> Fraction:
    """Bernoulli number B_n with B_1 = -1/2."""
    if n == 0:
        return Fraction(1)
    total = Fraction(0)
    for k in range(n):
        total += math.comb(n + 1, k) * bernoulli(k)
    return -total / (n + 1)
