"""Global zeta integrals over Q and their continuation.

For a factorizable f and chi = mu |.|^s the global integral factors as
R_f(s) * Lambda_mu(s): R_f is the product of local ratios (f's local factor
over the standard one), entire in s, and Lambda_mu is the completed zeta or
Dirichlet L-function of the standard test function.  Lambda is computed from
the split of the t-integral at t = 1 with the real place doing the scaling:

    Lambda(s) = 1/(s(s-1)) + int_1^inf (t^{s/2} + t^{(1-s)/2}) omega(t) dt/t,

where the rational part is the error term E for kappa = f(0) = f^(0) = 1.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass, field
from enum import Enum
from fractions import Fraction
from typing import Callable

import numpy as np

from .errors import InvalidArgument, NonConvergence, OutOfDomain, Pole, SingularPoint
from .local_zeta import arch_ratio, eval_laurent, local_ratio_polynomial
from .places import (
    AdelePoint,
    DirichletCharacter,
    NormTwist,
    QuasiCharacter,
    TRIVIAL,
    TrivialUnitary,
    Unitary,
    _factor,
    gauss_sum,
    root_number,
)
from .schwartz import STANDARD, GlobalTestFunction, global_eval, global_ft
from .special import adaptive_integrate, bernoulli

DEFAULT_TOL = 1e-12

# Volume of the norm-one idele class group of Q for Vol(Z_p^x) = 1 and dx/|x|.
KAPPA = 1.0

_LOG_PI = math.log(math.pi)


class PolePoint(Enum):
    ZERO_POINT = 0
    ONE_POINT = 1


# --- theta sums ---------------------------------------------------------------


def _theta_terms(tmin: float, rate: float, tol: float) -> int:
    """Smallest N whose tail sum_{n >= N} exp(-rate n^2 t) is below tol for t >= tmin."""
    N = 1
    while math.exp(-rate * N * N * tmin) >= tol * (1 - math.exp(-rate * (2 * N + 1) * tmin)):
        N += 1
    return N


def theta_omega(t, tol: float = DEFAULT_TOL):
    """omega(t) = sum_{n >= 1} exp(-pi n^2 t); accepts scalars or arrays with t > 0."""
    t_arr = np.asarray(t, dtype=float)
    if np.any(t_arr <= 0):
        raise OutOfDomain("theta needs t > 0")
    N = _theta_terms(float(t_arr.min()), math.pi, tol)
    n = np.arange(1, N, dtype=float)
    out = np.exp(-math.pi * np.multiply.outer(t_arr, n * n)).sum(axis=-1)
    return float(out) if np.ndim(t) == 0 else out


def theta(t, tol: float = DEFAULT_TOL):
    """theta(t) = sum_{n in Z} exp(-pi n^2 t) = 1 + 2 omega(t)."""
    return 1 + 2 * theta_omega(t, tol)


def _tail_cutoff(power: float, rate: float, tol: float) -> float:
    """T >= 1 with int_T^inf t^power exp(-rate t) dt < tol (crude monotone bound)."""
    T = 2.0
    while True:
        slope = rate - max(power, 0.0) / T
        if slope > 0 and 1.1 * T ** power * math.exp(-rate * T) / slope < tol:
            return T
        T += 0.5


# --- error term ------------------------------------------------------------------


@dataclass(frozen=True)
class ErrorTerm:
    """E(s) = kappa (fhat0/(s' - 1) - f0/s') with s' = s + i tau."""

    kappa: float
    f0: complex
    fhat0: complex
    tau: float = 0.0

    def shifted(self, s: complex) -> complex:
        return complex(s) + 1j * self.tau

    def __call__(self, s: complex) -> complex:
        sp = self.shifted(s)
        return self.kappa * (self.fhat0 / (sp - 1) - self.f0 / sp)

    def residue(self, which: PolePoint) -> complex:
        if which is PolePoint.ONE_POINT:
            return self.kappa * self.fhat0
        return -self.kappa * self.f0

    def pole_location(self, which: PolePoint) -> complex:
        return complex(which.value, -self.tau)


# --- completed zeta -------------------------------------------------------------------


def _lambda_integral(s: complex, tol: float) -> complex:
    s = complex(s)
    e1, e2 = s / 2 - 1, (1 - s) / 2 - 1
    T = _tail_cutoff(max(e1.real, e2.real), math.pi, tol / 10)

    def integrand(t: np.ndarray) -> np.ndarray:
        logt = np.log(t)
        return (np.exp(e1 * logt) + np.exp(e2 * logt)) * theta_omega(t, tol / 100)

    return adaptive_integrate(integrand, 1.0, T, tol / 2)


def completed_lambda(s: complex, tol: float = DEFAULT_TOL) -> complex | Pole:
    """Lambda(s) = pi^{-s/2} Gamma(s/2) zeta(s), continued to C minus {0, 1}."""
    s = complex(s)
    if s == 0:
        return Pole(0j, -KAPPA)
    if s == 1:
        return Pole(1 + 0j, KAPPA)
    return 1 / (s * (s - 1)) + _lambda_integral(s, tol)


# --- Dirichlet L-functions ------------------------------------------------------------


def _check_dirichlet(chi: DirichletCharacter) -> None:
    if chi.is_principal:
        raise InvalidArgument("completed L-function needs a nonprincipal character")
    if not chi.is_primitive:
        raise InvalidArgument(f"character mod {chi.modulus} is imprimitive (conductor {chi.conductor})")


def _dirichlet_integral(chi: DirichletCharacter, s: complex, tol: float) -> complex:
    """int_1^inf theta_chi(t) t^{(s+a)/2} dt/t with theta_chi(t) = sum chi(n) n^a exp(-pi n^2 t / q)."""
    q, a = chi.modulus, chi.parity
    rate = math.pi / q
    power = (complex(s) + a) / 2 - 1
    T = _tail_cutoff(power.real + a / 2 + 1, rate, tol / 10)
    N = _theta_terms(1.0, rate, tol / 100) + 1
    n = np.arange(1, N + 1)
    coeff = np.array([chi(int(k)) for k in n]) * n.astype(float) ** a

    def integrand(t: np.ndarray) -> np.ndarray:
        th = np.exp(-rate * np.multiply.outer(t, (n * n).astype(float))) @ coeff
        return th * np.exp(power * np.log(t))

    return adaptive_integrate(integrand, 1.0, T, tol / 2)


def completed_dirichlet_L(chi: DirichletCharacter, s: complex, tol: float = DEFAULT_TOL) -> complex:
    """Lambda(s, chi) = (q/pi)^{(s+a)/2} Gamma((s+a)/2) L(s, chi), entire.

    Split at t = 1 and fold the lower half with theta_chi(1/t) =
    eps(chi) t^{a + 1/2} theta_{conj chi}(t), eps(chi) = tau(chi)/(i^a sqrt q):

        Lambda(s, chi) = I(s, chi) + eps(chi) I(1 - s, conj chi).
    """
    _check_dirichlet(chi)
    s = complex(s)
    eps = root_number(chi)
    return _dirichlet_integral(chi, s, tol / 2) + eps * _dirichlet_integral(chi.conj(), 1 - s, tol / 2)


def _rising(s: complex, k: int) -> complex:
    out = 1 + 0j
    for j in range(k):
        out *= s + j
    return out


def dirichlet_series_oracle(
    chi: DirichletCharacter | None, s: complex, tol: float = DEFAULT_TOL, terms: int = 12
) -> complex:
    """sum chi(n) n^{-s} for Re(s) > 1, by partial sums plus an Euler-Maclaurin tail.

    Each residue class r mod q is summed as sum_m (r + q m)^{-s}: direct terms
    for m < M, then the integral tail, the boundary half-term and ``terms``
    Bernoulli corrections.  M grows until the first omitted correction (times
    the usual |s + 2K + 1| / (Re s + 2K + 1) factor) is below tol.
    """
    s = complex(s)
    if s.real <= 1:
        raise OutOfDomain("Dirichlet series oracle needs Re(s) > 1")
    q = 1 if chi is None else chi.modulus
    residues = [(r, 1 + 0j if chi is None else chi(r)) for r in range(1, q + 1) if math.gcd(r, q) == 1]
    K = terms
    M = max(10, int(abs(s)) + 10)
    for _ in range(60):
        total = 0j
        worst = 0.0
        for r, w in residues:
            x0 = r + q * M
            direct = sum(cmath.exp(-s * math.log(r + q * m)) for m in range(M))
            tail = cmath.exp((1 - s) * math.log(x0)) / (q * (s - 1)) + 0.5 * cmath.exp(-s * math.log(x0))
            for j in range(1, K + 1):
                k = 2 * j - 1
                deriv = (-1) ** k * _rising(s, k) * q**k * cmath.exp(-(s + k) * math.log(x0))
                tail -= float(bernoulli(2 * j)) / math.factorial(2 * j) * deriv
            k = 2 * K + 1
            nxt = abs(float(bernoulli(2 * K + 2)) / math.factorial(2 * K + 2) * _rising(s, k) * q**k * x0 ** (-(s.real + k)))
            worst = max(worst, nxt * abs(s + k) / (s.real + k))
            total += w * (direct + tail)
        if worst * len(residues) < tol:
            return total
        M *= 2
    raise NonConvergence("Euler-Maclaurin tail did not reach the requested tolerance")


# --- global zeta ------------------------------------------------------------------------


def _unitary_key(mu: Unitary) -> Unitary:
    if isinstance(mu, DirichletCharacter) and mu.modulus == 1:
        return TRIVIAL
    return mu


@dataclass(frozen=True)
class ZetaEvaluator:
    """Z(f, mu |.|^s) as a function of s for fixed f and unitary part mu.

    Immutable after construction; local ratio polynomials are precomputed.
    """

    f: GlobalTestFunction
    unitary: Unitary = TRIVIAL
    tol: float = DEFAULT_TOL
    _local: dict = field(init=False, repr=False, compare=False)

    def __post_init__(self) -> None:
        mu = _unitary_key(self.unitary)
        object.__setattr__(self, "unitary", mu)
        local = {}
        if isinstance(mu, DirichletCharacter):
            _check_dirichlet(mu)
            ramified = {p for p, _ in _factor(mu.modulus)}
            for p, fp in self.f.finite.items():
                if p in ramified:
                    if not fp.is_standard():
                        raise InvalidArgument(
                            f"nonstandard component at ramified prime {p} is outside the supported class"
                        )
                    continue
                local[p] = local_ratio_polynomial(fp, mu(p))
        else:
            for p, fp in self.f.finite.items():
                local[p] = local_ratio_polynomial(fp, 1.0)
        object.__setattr__(self, "_local", local)

    @property
    def parity(self) -> int:
        return self.unitary.parity if isinstance(self.unitary, DirichletCharacter) else 0

    @property
    def tau(self) -> float:
        return self.unitary.tau if isinstance(self.unitary, NormTwist) else 0.0

    @property
    def entire(self) -> bool:
        return isinstance(self.unitary, DirichletCharacter)

    def ratio(self, s: complex) -> complex:
        """R_f at the effective exponent s (already shifted for norm twists)."""
        s = complex(s)
        value = arch_ratio(self.f.arch, self.parity, s)
        for p, (shift, coeffs) in self._local.items():
            value *= eval_laurent(shift, coeffs, cmath.exp(-s * math.log(p)))
        return value

    def error_term(self) -> ErrorTerm:
        if self.entire:
            return ErrorTerm(KAPPA, 0j, 0j, 0.0)
        zero = AdelePoint(0)
        return ErrorTerm(KAPPA, global_eval(self.f, zero), global_eval(global_ft(self.f), zero), self.tau)

    def base(self, s: complex) -> complex | Pole:
        if isinstance(self.unitary, DirichletCharacter):
            return completed_dirichlet_L(self.unitary, s, self.tol)
        return completed_lambda(s, self.tol)

    def __call__(self, s: complex) -> complex | Pole:
        s = complex(s)
        sp = s + 1j * self.tau
        base = self.base(sp)
        r = self.ratio(sp)
        if isinstance(base, Pole):
            return Pole(s, r * base.residue)
        return r * base


def global_zeta_eval(f: GlobalTestFunction, chi: QuasiCharacter, tol: float = DEFAULT_TOL) -> complex | Pole:
    """Z(f, chi) for chi = mu |.|^s, continued meromorphically."""
    return ZetaEvaluator(f, chi.unitary, tol)(chi.s)


def residue_at(f: GlobalTestFunction, unitary: Unitary, which: PolePoint) -> complex:
    """Residue at s' = 0 or 1, read off the error term; 0 in the entire case."""
    ev = ZetaEvaluator(f, unitary)
    if ev.entire:
        return 0j
    return ev.error_term().residue(which)


def pole_location(unitary: Unitary, which: PolePoint) -> complex:
    tau = unitary.tau if isinstance(unitary, NormTwist) else 0.0
    return complex(which.value, -tau)


def extract_kappa(f: GlobalTestFunction = STANDARD) -> float:
    """kappa = Res_{s=1} Z(f, |.|^s) / f^(0)."""
    fhat0 = global_eval(global_ft(f), AdelePoint(0))
    if fhat0 == 0:
        raise SingularPoint("f^(0) = 0: kappa cannot be read off this test function")
    return (residue_at(f, TRIVIAL, PolePoint.ONE_POINT) / fhat0).real


def numeric_residue(func: Callable[[complex], complex], point: complex, radius: float = 1e-7) -> list[complex]:
    """(s - point) func(s) sampled at four points around ``point``."""
    out = []
    for d in (1, 1j, -1, -1j):
        s = complex(point) + radius * d
        out.append((s - point) * func(s))
    return out


def dual_factor(unitary: Unitary) -> complex:
    """Factor c with Z(f, chi) = c Z(f^, chi-check) under the supported normalizations.

    1 for unitary parts trivial on norm-one ideles; tau(chi)/sqrt(q) for a
    Dirichlet character, whose ramified local components are fixed to the
    normalized (new)vector on both sides.
    """
    mu = _unitary_key(unitary)
    if isinstance(mu, DirichletCharacter):
        return gauss_sum(mu) / math.sqrt(mu.modulus)
    return 1 + 0j


def functional_equation_defect(f: GlobalTestFunction, chi: QuasiCharacter, tol: float = DEFAULT_TOL) -> float | Pole:
    """|Z(f, chi) - c Z(f^, chi-check)| with the two sides assembled independently."""
    lhs = global_zeta_eval(f, chi, tol)
    if isinstance(lhs, Pole):
        return lhs
    rhs = global_zeta_eval(global_ft(f), chi.dual(), tol)
    if isinstance(rhs, Pole):
        return rhs
    return abs(lhs - dual_factor(chi.unitary) * rhs)
