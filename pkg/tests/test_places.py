import cmath
import math
from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from tatezeta.errors import InvalidArgument
from tatezeta.places import (
    REAL,
    TRIVIAL,
    AdelePoint,
    IdelePoint,
    NormTwist,
    Place,
    QuasiCharacter,
    additive_character,
    characters,
    diagonal,
    diagonal_adele,
    dirichlet_character,
    dirichlet_conductor,
    gauss_sum,
    global_additive_character,
    global_character_exponent,
    idele_norm,
    parse_idele,
    primitive_characters,
    quasichar_eval,
    unitary_eval,
)

nonzero_rationals = st.builds(
    Fraction, st.integers(-10**6, 10**6).filter(bool), st.integers(1, 10**6)
)


def test_idele_norm_examples():
    assert idele_norm(IdelePoint(Fraction(-6), {2: Fraction(-6), 3: Fraction(-6)})) == 1
    assert idele_norm(IdelePoint(2)) == 2
    assert idele_norm(IdelePoint(1.7, {2: Fraction(1, 2), 3: Fraction(3)})) == pytest.approx(1.7 * 2 / 3, abs=1e-12)


def test_idele_rejects_zero_components():
    with pytest.raises(InvalidArgument):
        IdelePoint(0.0)
    with pytest.raises(InvalidArgument):
        IdelePoint(1.0, {2: Fraction(0)})


def test_fill_must_be_standard_at_unlisted_primes():
    with pytest.raises(InvalidArgument):
        IdelePoint(1.0, {}, Fraction(2))
    with pytest.raises(InvalidArgument):
        IdelePoint(1.0, {2: Fraction(1)}, Fraction(6, 5))
    assert IdelePoint(1.0, {2: Fraction(1), 5: Fraction(1)}, Fraction(-4, 5)).component(3) == Fraction(-4, 5)
    with pytest.raises(InvalidArgument):
        AdelePoint(1.0, {}, Fraction(1, 3))


def test_additive_character_examples():
    assert additive_character(Place(2), Fraction(1, 2)) == -1
    assert additive_character(Place(5), 7) == 1
    assert additive_character(REAL, Fraction(1, 4)) == -1j


def test_global_character_examples():
    # exact exponent: -7/6 + frac_2(7/6) + frac_3(7/6) = -7/6 + 1/2 + 2/3 = 0
    x = diagonal_adele(Fraction(7, 6))
    assert set(x.support) == {2, 3}
    assert global_character_exponent(x) == 0
    assert global_additive_character(x) == 1
    assert global_additive_character(AdelePoint(Fraction(1, 4))) == -1j


@given(nonzero_rationals)
def test_artin_product_formula(q):
    assert idele_norm(diagonal(q)) == 1


@given(st.builds(Fraction, st.integers(-10**6, 10**6), st.integers(1, 10**6)))
def test_global_character_trivial_on_Q(q):
    assert global_character_exponent(diagonal_adele(q)) == 0


@given(nonzero_rationals, nonzero_rationals)
def test_norm_multiplicative(a, b):
    x = IdelePoint(a, {2: a, 3: b})
    y = IdelePoint(b, {3: a, 5: b * 7})
    assert idele_norm(x * y) == idele_norm(x) * idele_norm(y)


@given(st.floats(-50, 50, allow_nan=False), st.sampled_from([2, 3, 5, 7]), nonzero_rationals)
def test_characters_unitary(t, p, q):
    assert abs(abs(additive_character(REAL, t)) - 1) < 1e-15
    assert abs(abs(additive_character(Place(p), q)) - 1) < 1e-15
    chi = dirichlet_character(12, 3)
    assert abs(abs(unitary_eval(chi, IdelePoint(t or 1.0, {p: q}))) - 1) < 1e-15


def test_quasichar_examples():
    x = IdelePoint(1.3, {2: Fraction(4, 3)})
    assert quasichar_eval(QuasiCharacter(TRIVIAL, 0), x) == 1
    assert quasichar_eval(QuasiCharacter(TRIVIAL, 2), IdelePoint(2)) == 4
    v = quasichar_eval(QuasiCharacter(NormTwist(math.pi), 0), IdelePoint(math.e))
    assert abs(v - cmath.exp(1j * math.pi * math.log(math.e))) < 1e-15
    assert abs(v + 1) < 1e-15


@pytest.mark.parametrize("q", [3, 4, 5, 7, 8, 9, 12, 15, 16, 20])
def test_dirichlet_lift_is_idele_class_character(q):
    for chi in characters(q):
        for r in (Fraction(2), Fraction(-3), Fraction(5, 7), Fraction(-12, 35), Fraction(11, 6), Fraction(-1)):
            assert abs(unitary_eval(chi, diagonal(r)) - 1) < 1e-12


def test_dirichlet_lift_unramified_orientation():
    # chi(p)^{v_p(x)} at p not dividing q
    chi = dirichlet_character(5, 1)
    x = IdelePoint(1.0, {3: Fraction(9)})
    assert abs(unitary_eval(chi, x) - chi(3) ** 2) < 1e-15


def test_finite_ramification():
    # changing components at unramified places by units leaves the value unchanged
    chi = dirichlet_character(5, 1)
    x = IdelePoint(2.0, {5: Fraction(10), 7: Fraction(1, 7)})
    y = IdelePoint(2.0, {5: Fraction(10), 7: Fraction(3, 7), 11: Fraction(2)})
    assert abs(unitary_eval(chi, x) - unitary_eval(chi, y)) < 1e-15


def test_character_enumeration():
    assert len(characters(8)) == 4
    assert dirichlet_character(4, 0).is_principal
    chi4 = dirichlet_character(4, 1)
    assert [chi4(n) for n in range(4)] == [0, 1, 0, -1]
    assert chi4.parity == 1
    with pytest.raises(InvalidArgument):
        dirichlet_character(4, 2)


def _brute_conductor(vals: dict[int, complex], q: int) -> int:
    for f in range(1, q + 1):
        if q % f:
            continue
        if all(abs(v - 1) < 1e-12 for n, v in vals.items() if n % f == 1 % f):
            return f
    return q


def test_conductor_examples():
    principal = {1: 1, 3: 1}
    nontrivial = {1: 1, 3: -1}
    induced = {1: 1, 3: -1, 5: 1, 7: -1}
    assert dirichlet_conductor(principal, 4) == 1
    assert dirichlet_conductor(nontrivial, 4) == _brute_conductor(nontrivial, 4) == 4
    assert dirichlet_conductor(induced, 8) == _brute_conductor(induced, 8) == 4


def test_conductor_rejects_non_multiplicative():
    with pytest.raises(InvalidArgument):
        dirichlet_conductor({1: 1, 2: 1j, 3: 1, 4: 1}, 5)


def test_conductor_matches_brute_force():
    for q in range(1, 40):
        for chi in characters(q):
            vals = {n: chi(n) for n in range(q) if math.gcd(n, q) == 1}
            assert chi.conductor == _brute_conductor(vals, q)


def test_gauss_sum_examples():
    chi4 = dirichlet_character(4, 1)
    assert abs(gauss_sum(chi4) - 2j) < 1e-14
    chi3 = dirichlet_character(3, 1)
    assert abs(gauss_sum(chi3) - 1j * math.sqrt(3)) < 1e-14
    imprim = next(c for c in characters(8) if not c.is_primitive and not c.is_principal)
    with pytest.raises(InvalidArgument):
        gauss_sum(imprim)


def test_gauss_sum_modulus():
    for q in range(1, 51):
        for chi in primitive_characters(q):
            assert abs(abs(gauss_sum(chi)) - math.sqrt(q)) < 1e-10


def test_parse_idele():
    x = parse_idele("real=1.5;2=1/2;3=9")
    assert x.real == 1.5
    assert x.finite == {2: Fraction(1, 2), 3: Fraction(9)}
    assert idele_norm(x) == pytest.approx(1.5 * 2 / 9, abs=1e-15)
    # rational literals keep the real place exact
    assert idele_norm(parse_idele("real=-6;2=-6;3=-6")) == 1
