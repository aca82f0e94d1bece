"""Named verification suites behind ``tatezeta verify``."""

from __future__ import annotations

import math
import random
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable

from .global_zeta import (
    KAPPA,
    PolePoint,
    completed_dirichlet_L,
    completed_lambda,
    dirichlet_series_oracle,
    functional_equation_defect,
    numeric_residue,
    residue_at,
    root_number,
)
from .local_zeta import local_zeta_factor, shell_sum_oracle, RationalFunction
from .places import (
    TRIVIAL,
    QuasiCharacter,
    diagonal,
    diagonal_adele,
    dirichlet_character,
    global_character_exponent,
    idele_norm,
)
from .poisson import riemann_roch_defect, theta_identity_defect
from .places import IdelePoint
from .schwartz import STANDARD, GlobalTestFunction, StepTerm, TwistedStepFunction, ArchFunction


@dataclass(frozen=True)
class Check:
    name: str
    passed: bool
    detail: str = ""

    def line(self) -> str:
        return f"{'PASS' if self.passed else 'FAIL'} {self.name}" + (f"  {self.detail}" if self.detail else "")


def _random_rational(rng: random.Random, bound: int = 10**6) -> Fraction:
    num = 0
    while num == 0:
        num = rng.randint(-bound, bound)
    return Fraction(num, rng.randint(1, bound))


def random_step_function(
    rng: random.Random, p: int, max_level: int = 2, terms: int = 3, min_level: int | None = None
) -> TwistedStepFunction:
    """Random twisted step function with levels and center/twist valuations >= min_level."""
    lo = -max_level if min_level is None else min_level
    out = []
    for _ in range(rng.randint(1, terms)):
        n = rng.randint(lo, max_level)
        a = Fraction(rng.randint(-p**3, p**3), p ** rng.randint(0, max(0, -lo)))
        b = Fraction(rng.randint(-p**2, p**2), p ** rng.randint(0, max_level)) if rng.random() < 0.6 else Fraction(0)
        c = complex(round(rng.uniform(-2, 2), 3), round(rng.uniform(-2, 2), 3))
        out.append(StepTerm(c, b, a, n))
    return TwistedStepFunction(p, tuple(out))


def suite_artin(count: int) -> list[Check]:
    rng = random.Random(0)
    bad = [q for q in (_random_rational(rng) for _ in range(count)) if idele_norm(diagonal(q)) != 1]
    bad_psi = [q for q in (_random_rational(rng) for _ in range(count)) if global_character_exponent(diagonal_adele(q)) != 0]
    return [
        Check("artin product formula", not bad, f"{count} rationals, {len(bad)} failures"),
        Check("global character trivial on Q", not bad_psi, f"{count} rationals, {len(bad_psi)} failures"),
    ]


def suite_theta(count: int) -> list[Check]:
    ts = [0.1, 0.25, 1.0, 4.0, 10.0]
    worst = max(theta_identity_defect(t) for t in ts)
    return [Check("theta transformation", worst < 1e-12, f"max defect {worst:.2e}")]


def suite_poisson(count: int) -> list[Check]:
    f2 = GlobalTestFunction(finite={2: TwistedStepFunction.indicator(2, 0, 1)})
    f3 = GlobalTestFunction(finite={3: TwistedStepFunction.indicator(3, 1, 1)})
    ideles = [
        IdelePoint(r, {2: Fraction(a), 3: Fraction(b)})
        for r in (0.5, 1.0, 1.7)
        for a in (1, 2, Fraction(1, 2))
        for b in (1, 3)
    ]
    worst = max(riemann_roch_defect(f, x) for f in (STANDARD, f2, f3) for x in ideles)
    return [Check("riemann-roch", worst < 1e-10, f"max defect {worst:.2e} over {len(ideles)} ideles")]


def suite_fe(count: int) -> list[Check]:
    rng = random.Random(1)
    pts = []
    while len(pts) < max(count, 1):
        s = complex(rng.uniform(-2, 3), rng.uniform(-20, 20))
        if abs(s) > 0.05 and abs(s - 1) > 0.05:
            pts.append(s)
    worst = max(abs(completed_lambda(s) - completed_lambda(1 - s)) for s in pts)
    f2 = GlobalTestFunction(finite={2: TwistedStepFunction.indicator(2, 0, 1)})
    worst_f = max(functional_equation_defect(f2, QuasiCharacter(TRIVIAL, s)) for s in pts[:10])
    chi4 = dirichlet_character(4, 1)
    worst_d = max(
        abs(completed_dirichlet_L(chi4, s) - root_number(chi4) * completed_dirichlet_L(chi4.conj(), 1 - s))
        for s in pts[:5]
    )
    return [
        Check("lambda(s) = lambda(1-s)", worst < 1e-10, f"max defect {worst:.2e} on {len(pts)} points"),
        Check("Z(f,chi) = Z(f^,chi-check), f_2 = 1_{2Z_2}", worst_f < 1e-10, f"max defect {worst_f:.2e}"),
        Check("dirichlet chi_4 functional equation", worst_d < 1e-10, f"max defect {worst_d:.2e}"),
    ]


def suite_residues(count: int) -> list[Check]:
    r1 = residue_at(STANDARD, TRIVIAL, PolePoint.ONE_POINT)
    r0 = residue_at(STANDARD, TRIVIAL, PolePoint.ZERO_POINT)
    n1 = numeric_residue(completed_lambda, 1)
    n0 = numeric_residue(completed_lambda, 0)
    d1 = max(abs(v - r1) for v in n1)
    d0 = max(abs(v - r0) for v in n0)
    chi4 = dirichlet_character(4, 1)
    return [
        Check("closed-form residues (-1, +1)", r0 == -KAPPA and r1 == KAPPA, f"res0={r0.real:g} res1={r1.real:g}"),
        Check("numeric limits agree", max(d0, d1) < 1e-6, f"max defect {max(d0, d1):.2e}"),
        Check("entire branch chi_4", residue_at(STANDARD, chi4, PolePoint.ONE_POINT) == 0, ""),
    ]


def suite_local_oracle(count: int) -> list[Check]:
    rng = random.Random(2)
    worst = 0.0
    for p in (2, 3, 5):
        for _ in range(max(1, count // 3)):
            f = random_step_function(rng, p, min_level=-1)
            s = complex(rng.uniform(0.5, 3), rng.uniform(-10, 10))
            worst = max(worst, abs(local_zeta_factor(f).at_s(p, s) - shell_sum_oracle(f, 1, s, 1e-15)))
    euler = all(
        local_zeta_factor(TwistedStepFunction.indicator(p)).equals(RationalFunction((1,), (1, -1)))
        for p in (2, 3, 5)
    )
    return [
        Check("local zeta closed form vs shell sum", worst < 1e-12, f"max defect {worst:.2e}"),
        Check("euler factor of 1_{Z_p}", euler, ""),
    ]


SUITES: dict[str, Callable[[int], list[Check]]] = {
    "artin": suite_artin,
    "poisson": suite_poisson,
    "fe": suite_fe,
    "residues": suite_residues,
    "theta": suite_theta,
    "local-oracle": suite_local_oracle,
}

DEFAULT_COUNTS = {"artin": 1000, "poisson": 1, "fe": 200, "residues": 1, "theta": 1, "local-oracle": 30}
