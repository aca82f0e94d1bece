import cmath
import math
import random
from fractions import Fraction

import mpmath
import pytest

from tatezeta.errors import NonConvergence, Pole
from tatezeta.local_zeta import (
    FinitePlaceData,
    RationalFunction,
    RealPlaceData,
    arch_zeta,
    arch_zeta_quadrature,
    c_factor,
    local_gamma_ratio,
    local_zeta_factor,
    shell_decomposition,
    shell_measure,
    shell_sum_oracle,
)
from tatezeta.schwartz import ArchFunction, ArchTerm, StepTerm, TwistedStepFunction, local_integral
from tatezeta.verify import random_step_function

GEOMETRIC = RationalFunction((1,), (1, -1))


def test_shell_measure_examples():
    for p in (2, 3, 5, 7):
        assert shell_measure(0, 0, p, shell=0) == 1  # Z_p^x
        assert c_factor(p) * (1 - Fraction(1, p)) == 1
    assert shell_measure(1, 1, 3) == Fraction(1, 2)
    assert shell_measure(0, 1, 2, shell=1) == 1
    assert shell_measure(0, 1, 2, shell=0) == 0


def test_local_zeta_factor_examples():
    for p in (2, 3, 5):
        assert local_zeta_factor(TwistedStepFunction.indicator(p)).equals(GEOMETRIC)
        assert local_zeta_factor(TwistedStepFunction.units(p)).equals(RationalFunction((1,)))
    assert local_zeta_factor(TwistedStepFunction.indicator(3, 1, 1)).equals(RationalFunction((0.5,)))


def test_shell_sum_oracle_examples():
    assert abs(shell_sum_oracle(TwistedStepFunction.indicator(2), 1, 2, 1e-14) - 4 / 3) < 1e-12
    assert abs(shell_sum_oracle(TwistedStepFunction.units(3), 1, 0.5 + 1j) - 1) < 1e-15
    assert abs(shell_sum_oracle(TwistedStepFunction.indicator(5), 1, 1, 1e-14) - 5 / 4) < 1e-12


def test_shell_sum_oracle_diverges():
    with pytest.raises(NonConvergence):
        shell_sum_oracle(TwistedStepFunction.indicator(2), 1, -0.5)


def test_euler_factor_values():
    for p in (2, 3, 5):
        for s in (2, 0.7 + 3j, 1.5 - 8j):
            X = cmath.exp(-s * math.log(p))
            assert abs(local_zeta_factor(TwistedStepFunction.indicator(p)).at_s(p, s) - 1 / (1 - X)) < 1e-15


def test_shell_decomposition_twisted():
    # psi(x/8) on Z_2: shells 0, 1 cancel, shell 2 carries -1, shells >= 3 carry 1
    f = TwistedStepFunction(2, (StepTerm(1, Fraction(1, 8), 0, 0),))
    dec = shell_decomposition(f)
    assert dec.tail_start == 3 and dec.f0 == 1
    assert dec.mass(0) == 0 and dec.mass(1) == 0 and dec.mass(2) == -1


def test_closed_form_vs_oracle_random():
    rng = random.Random(21)
    for p in (2, 3, 5):
        for _ in range(10):
            f = random_step_function(rng, p, min_level=-1)
            u = cmath.exp(2j * math.pi * rng.random())
            s = complex(rng.uniform(0.5, 3), rng.uniform(-10, 10))
            assert abs(local_zeta_factor(f, u).at_s(p, s) - shell_sum_oracle(f, u, s, 1e-15)) < 1e-12


def test_value_at_one_bridge():
    rng = random.Random(22)
    for p in (2, 3, 5):
        for _ in range(5):
            f = random_step_function(rng, p, min_level=-1)
            at_one = local_zeta_factor(f).at_s(p, 1)
            assert abs(at_one - float(c_factor(p)) * local_integral(f)) < 1e-12
            standard = local_zeta_factor(TwistedStepFunction.indicator(p)).at_s(p, 1)
            assert abs(at_one / standard - local_integral(f)) < 1e-12


def test_arch_zeta_examples():
    g = ArchFunction.gaussian()
    assert abs(arch_zeta(g, 0, 1) - 1) < 1e-12
    assert abs(arch_zeta(g, 0, 2) - 1 / math.pi) < 1e-15
    assert abs(arch_zeta(ArchFunction.gaussian(k=1), 1, 1) - 1 / math.pi) < 1e-15
    assert arch_zeta(ArchFunction.gaussian(k=1), 0, 1.3) == 0


def test_arch_zeta_poles():
    pole = arch_zeta(ArchFunction.gaussian(), 0, 0)
    assert isinstance(pole, Pole) and pole.residue == 2
    pole = arch_zeta(ArchFunction.gaussian(), 0, -2)
    # pi^{-s/2} Gamma(s/2) near s = -2: residue 2 pi (-1)
    assert isinstance(pole, Pole) and abs(pole.residue + 2 * math.pi) < 1e-14


@pytest.mark.parametrize("s", [0.5, 1 + 3j, 2.2 - 7j, 3.9 + 10j])
def test_arch_zeta_against_mpmath(s):
    f = ArchFunction((ArchTerm(1.5, 0, 2.0), ArchTerm(-0.5j, 1, 0.6)))
    for a in (0, 1):
        b = 2.0 if a == 0 else 0.6
        c = 1.5 if a == 0 else -0.5j
        z = (s + a) / 2
        ref = c * complex(mpmath.power(mpmath.pi * b, -z) * mpmath.gamma(z))
        assert abs(arch_zeta(f, a, s) - ref) < 1e-13 * max(1, abs(ref))
        assert abs(arch_zeta_quadrature(f, a, s) - ref) < 1e-10


def test_local_gamma_ratio_examples():
    p2 = FinitePlaceData(2)
    assert abs(local_gamma_ratio(TwistedStepFunction.indicator(2), p2, 2) + 0.75) < 1e-15
    assert abs(local_gamma_ratio(TwistedStepFunction.units(2), p2, 2) + 0.75) < 1e-15
    expected = math.pi ** 1.5 * complex(mpmath.gamma(-0.5))
    assert abs(local_gamma_ratio(ArchFunction.gaussian(), RealPlaceData(0), 2) - expected) < 1e-12
    assert abs(expected + 2 * math.pi**2) < 1e-12


def test_local_gamma_ratio_independent_of_f():
    rng = random.Random(23)
    pts = [0.3 + 2j, 1.7 - 1j, 2.5, -0.4 + 5j, 0.8 + 0.1j]
    for p in (2, 3, 5):
        u = cmath.exp(2j * math.pi * rng.random())
        fs = [TwistedStepFunction.indicator(p)] + [random_step_function(rng, p, min_level=-1) for _ in range(3)]
        for s in pts:
            vals = [local_gamma_ratio(f, FinitePlaceData(p, u), s) for f in fs]
            assert max(abs(v - vals[0]) for v in vals) < 1e-10 * max(1, abs(vals[0]))
    for parity in (0, 1):
        fs = [ArchFunction((ArchTerm(1, parity, a),)) for a in (1.0, 0.5, 3.0)]
        fs.append(ArchFunction((ArchTerm(1, parity, 0.7), ArchTerm(2, parity, 1.9))))
        for s in (0.3 + 2j, 1.7 - 1j, 2.5):
            vals = [local_gamma_ratio(f, RealPlaceData(parity), s) for f in fs]
            assert max(abs(v - vals[0]) for v in vals) < 1e-10 * max(1, abs(vals[0]))
