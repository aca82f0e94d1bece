"""Adelic zeta integrals over Q, computed.

Exact p-adic arithmetic, Schwartz-Bruhat test functions and their Fourier
transforms, local zeta integrals, the continued global zeta integral with
its functional equation and residues, and adelic Poisson summation.
"""

from __future__ import annotations

from .errors import InvalidArgument, NonConvergence, OutOfDomain, Pole, SingularPoint
from .global_zeta import (
    KAPPA,
    PolePoint,
    ZetaEvaluator,
    completed_dirichlet_L,
    completed_lambda,
    dirichlet_series_oracle,
    functional_equation_defect,
    global_zeta_eval,
    residue_at,
)
from .local_zeta import arch_zeta, local_gamma_ratio, local_zeta_factor, shell_sum_oracle
from .places import (
    AdelePoint,
    DirichletCharacter,
    IdelePoint,
    NormTwist,
    QuasiCharacter,
    TRIVIAL,
    diagonal,
    dirichlet_character,
    gauss_sum,
    idele_norm,
)
from .poisson import adelic_average, riemann_roch_defect, theta_identity_defect
from .schwartz import STANDARD, ArchFunction, GlobalTestFunction, TwistedStepFunction, global_ft, local_ft

__version__ = "0.1.0"
