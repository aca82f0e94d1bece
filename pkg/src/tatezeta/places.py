"""Places of Q, adele and idele points, characters.

Adele/idele points list finitely many finite components explicitly.  Every
other finite component equals ``fill``, which must be integral (adeles) or a
unit (ideles) at every unlisted prime; :func:`diagonal` uses ``fill = q`` so
that the image of a rational is represented at every place.
"""

from __future__ import annotations

import cmath
import itertools
import math
import re
from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property, lru_cache
from typing import Iterable, Mapping, Union

from .errors import InvalidArgument
from .exact import (
    RationalLike,
    _check_prime,
    abs_at_place,
    frac_p,
    parse_rational,
    prime_factors,
    rational_primes,
    residue_mod,
    to_rational,
    unit_part,
    valuation,
)

Real = Union[float, Fraction]

TWO_PI = 2.0 * math.pi


@dataclass(frozen=True)
class Place:
    prime: int | None = None

    def __post_init__(self) -> None:
        if self.prime is not None:
            _check_prime(self.prime)

    @property
    def is_real(self) -> bool:
        return self.prime is None

    def __str__(self) -> str:
        return "real" if self.prime is None else str(self.prime)


REAL = Place()


def finite(p: int) -> Place:
    return Place(p)


def _as_real(x: Real | int | str) -> Real:
    if isinstance(x, (Fraction, float)):
        return x
    if isinstance(x, int):
        return Fraction(x)
    if isinstance(x, str):
        try:
            return parse_rational(x)
        except InvalidArgument:
            return float(x)
    return float(x)


@dataclass(frozen=True)
class AdelePoint:
    real: Real
    finite: Mapping[int, Fraction] = field(default_factory=dict)
    fill: Fraction = Fraction(0)

    def __post_init__(self) -> None:
        object.__setattr__(self, "real", _as_real(self.real))
        comps = {int(p): to_rational(v) for p, v in dict(self.finite).items()}
        for p in comps:
            _check_prime(p)
        fill = to_rational(self.fill)
        for p in prime_factors(fill.denominator):
            if p not in comps:
                raise InvalidArgument(
                    f"fill {fill} is not integral at unlisted prime {p}"
                )
        object.__setattr__(self, "finite", dict(sorted(comps.items())))
        object.__setattr__(self, "fill", fill)

    def component(self, p: int) -> Fraction:
        return self.finite.get(p, self.fill)

    @property
    def support(self) -> tuple[int, ...]:
        return tuple(self.finite)


@dataclass(frozen=True)
class IdelePoint:
    real: Real
    finite: Mapping[int, Fraction] = field(default_factory=dict)
    fill: Fraction = Fraction(1)

    def __post_init__(self) -> None:
        object.__setattr__(self, "real", _as_real(self.real))
        if self.real == 0:
            raise InvalidArgument("idele real component must be nonzero")
        comps = {int(p): to_rational(v) for p, v in dict(self.finite).items()}
        for p, v in comps.items():
            _check_prime(p)
            if v == 0:
                raise InvalidArgument(f"idele component at {p} is zero")
        fill = to_rational(self.fill)
        if fill == 0:
            raise InvalidArgument("idele fill must be nonzero")
        rest = [fill.numerator, fill.denominator]
        for p in comps:
            for i in (0, 1):
                while rest[i] % p == 0:
                    rest[i] //= p
        if abs(rest[0]) != 1 or rest[1] != 1:
            raise InvalidArgument(f"fill {fill} is not a unit at every unlisted prime")
        object.__setattr__(self, "finite", dict(sorted(comps.items())))
        object.__setattr__(self, "fill", fill)

    def component(self, p: int) -> Fraction:
        return self.finite.get(p, self.fill)

    @property
    def support(self) -> tuple[int, ...]:
        return tuple(self.finite)

    def __mul__(self, other: IdelePoint) -> IdelePoint:
        primes = set(self.finite) | set(other.finite)
        return IdelePoint(
            self.real * other.real,
            {p: self.component(p) * other.component(p) for p in primes},
            self.fill * other.fill,
        )

    def inverse(self) -> IdelePoint:
        real = 1 / self.real if isinstance(self.real, Fraction) else 1.0 / self.real
        return IdelePoint(real, {p: 1 / v for p, v in self.finite.items()}, 1 / self.fill)

    def scaled(self, gamma: RationalLike) -> AdelePoint:
        """The adele gamma * x for a rational gamma (diagonally embedded)."""
        g = to_rational(gamma)
        primes = set(self.finite)
        if g != 0:
            primes |= set(rational_primes(g))
        real = g * self.real if isinstance(self.real, Fraction) else float(g) * self.real
        return AdelePoint(real, {p: g * self.component(p) for p in primes}, g * self.fill)


def diagonal(q: RationalLike, extra_primes: Iterable[int] = ()) -> IdelePoint | AdelePoint:
    """Diagonal image of a rational; an idele when q != 0, else the zero adele."""
    q = to_rational(q)
    primes = set(extra_primes)
    if q == 0:
        return AdelePoint(Fraction(0), {p: Fraction(0) for p in primes}, Fraction(0))
    primes |= set(rational_primes(q))
    return IdelePoint(q, {p: q for p in primes}, q)


def diagonal_adele(q: RationalLike, extra_primes: Iterable[int] = ()) -> AdelePoint:
    q = to_rational(q)
    primes = set(extra_primes) | set(prime_factors(q.denominator))
    return AdelePoint(q, {p: q for p in primes}, q)


_LITERAL_ITEM = re.compile(r"^\s*(real|\d+)\s*=\s*(\S+)\s*$")


def _parse_point_items(text: str) -> tuple[Real, dict[int, Fraction]]:
    real: Real = Fraction(1)
    comps: dict[int, Fraction] = {}
    for item in filter(None, (s.strip() for s in text.split(";"))):
        m = _LITERAL_ITEM.match(item)
        if m is None:
            raise InvalidArgument(f"malformed point component {item!r}")
        key, val = m.groups()
        if key == "real":
            try:
                real = _as_real(val)
            except ValueError as exc:
                raise InvalidArgument(f"bad real component {val!r}") from exc
        else:
            comps[int(key)] = parse_rational(val)
    return real, comps


def parse_idele(text: str) -> IdelePoint:
    """Parse ``"real=<float>;2=<rational>;3=<rational>"``; omitted real part is 1."""
    real, comps = _parse_point_items(text)
    return IdelePoint(real, comps)


def parse_adele(text: str) -> AdelePoint:
    real, comps = _parse_point_items(text)
    return AdelePoint(real, comps)


# --- norm and additive characters ------------------------------------------


def idele_norm(x: IdelePoint) -> Real:
    """Product of normalized absolute values; exact when the real part is rational."""
    finite_part = Fraction(1)
    for p, v in x.finite.items():
        finite_part *= abs_at_place(v, p)
    if isinstance(x.real, Fraction):
        return abs(x.real) * finite_part
    return abs(x.real) * float(finite_part)


def _expi(turns: Fraction | float) -> complex:
    if isinstance(turns, Fraction):
        turns = turns - math.floor(turns)
        # exact values at quarter turns keep identities like psi(1/2) = -1 clean
        exact = {Fraction(0): 1 + 0j, Fraction(1, 4): 1j, Fraction(1, 2): -1 + 0j, Fraction(3, 4): -1j}
        if turns in exact:
            return exact[turns]
    return cmath.exp(1j * TWO_PI * float(turns))


def additive_character(place: Place | int | str, x: RationalLike | float) -> complex:
    """psi_real(x) = exp(-2 pi i x); psi_p(x) = exp(2 pi i frac_p(x))."""
    if isinstance(place, int):
        place = Place(place)
    if place == "real" or (isinstance(place, Place) and place.is_real):
        if isinstance(x, float):
            return _expi(-x)
        return _expi(-to_rational(x))
    return _expi(frac_p(x, place.prime))


def global_character_exponent(x: AdelePoint) -> Fraction:
    """Exact exponent (in turns) of the global additive character, reduced to [0, 1)."""
    if not isinstance(x.real, Fraction):
        raise InvalidArgument("exact exponent needs a rational real component")
    total = -x.real
    for p, v in x.finite.items():
        total += frac_p(v, p)
    return total - math.floor(total)


def global_additive_character(x: AdelePoint) -> complex:
    if isinstance(x.real, Fraction):
        return _expi(global_character_exponent(x))
    total = sum((frac_p(v, p) for p, v in x.finite.items()), Fraction(0))
    return cmath.exp(1j * TWO_PI * (float(total - math.floor(total)) - x.real))


# --- Dirichlet characters ----------------------------------------------------


def _factor(q: int) -> list[tuple[int, int]]:
    out = []
    for p in prime_factors(q):
        e = 0
        while q % p == 0:
            q //= p
            e += 1
        out.append((p, e))
    return out


def _crt_lift(residue: int, pe: int, q: int) -> int:
    """n with n = residue mod pe and n = 1 mod q/pe."""
    rest = q // pe
    if rest == 1:
        return residue % q
    return (residue * rest * pow(rest, -1, pe) + pe * pow(pe, -1, rest)) % q


def _multiplicative_order(g: int, m: int) -> int:
    k, x = 1, g % m
    while x != 1:
        x = x * g % m
        k += 1
    return k


@lru_cache(maxsize=None)
def unit_group_generators(q: int) -> tuple[tuple[int, int], ...]:
    """Generators (g, order) of (Z/q)^x, ordered by prime; 2^e (e >= 3) gives -1 then 5."""
    gens: list[tuple[int, int]] = []
    for p, e in _factor(q):
        pe = p**e
        if p == 2:
            if e == 2:
                gens.append((_crt_lift(-1, pe, q), 2))
            elif e >= 3:
                gens.append((_crt_lift(-1, pe, q), 2))
                gens.append((_crt_lift(5, pe, q), 2 ** (e - 2)))
            continue
        phi = pe - pe // p
        g = next(g for g in range(2, pe + 1) if math.gcd(g, p) == 1 and _multiplicative_order(g, pe) == phi)
        gens.append((_crt_lift(g, pe, q), phi))
    return tuple(gens)


@lru_cache(maxsize=None)
def _discrete_logs(q: int) -> dict[int, tuple[int, ...]]:
    gens = unit_group_generators(q)
    table: dict[int, tuple[int, ...]] = {}
    for exps in itertools.product(*(range(o) for _, o in gens)):
        n = 1 % q
        for (g, _), k in zip(gens, exps):
            n = n * pow(g, k, q) % q
        table[n] = exps
    return table


def character_count(q: int) -> int:
    return math.prod(o for _, o in unit_group_generators(q)) if q > 1 else 1


@dataclass(frozen=True)
class DirichletCharacter:
    """A character of (Z/q)^x stored as exact angles (in turns) per residue.

    ``angles[n]`` is the value's argument divided by 2 pi, in [0, 1), for each
    residue 0 <= n < q coprime to q.
    """

    modulus: int
    angles: Mapping[int, Fraction]

    def __post_init__(self) -> None:
        if self.modulus < 1:
            raise InvalidArgument("modulus must be positive")
        q = self.modulus
        units = {n for n in range(q) if math.gcd(n, q) == 1}
        if set(self.angles) != units:
            raise InvalidArgument("angle table must cover exactly the units mod q")
        angles = {n: Fraction(a) % 1 for n, a in sorted(self.angles.items())}
        for a in units:
            for b in units:
                if angles[a * b % q] != (angles[a] + angles[b]) % 1:
                    raise InvalidArgument("character table is not multiplicative")
        object.__setattr__(self, "angles", angles)

    def angle(self, n: int) -> Fraction:
        return self.angles[n % self.modulus]

    def __call__(self, n: int) -> complex:
        if math.gcd(n, self.modulus) != 1:
            return 0j
        return _expi(self.angle(n))

    @property
    def parity(self) -> int:
        return 0 if self.angle(-1) == 0 else 1

    @cached_property
    def conductor(self) -> int:
        return _conductor_from_angles(self.modulus, self.angles)

    @property
    def is_primitive(self) -> bool:
        return self.conductor == self.modulus

    @property
    def is_principal(self) -> bool:
        return all(a == 0 for a in self.angles.values())

    def conj(self) -> DirichletCharacter:
        return DirichletCharacter(self.modulus, {n: (-a) % 1 for n, a in self.angles.items()})

    def inverse(self) -> DirichletCharacter:
        return self.conj()

    def local_angle(self, p: int, u: Fraction) -> Fraction:
        """Angle of the p-component chi_p at a p-adic unit u (p | modulus)."""
        pe = p ** valuation(self.modulus, p)
        n = _crt_lift(residue_mod(u, p, valuation(self.modulus, p)), pe, self.modulus)
        return self.angle(n)

    def __repr__(self) -> str:
        return f"DirichletCharacter(modulus={self.modulus}, conductor={self.conductor}, parity={self.parity})"


def dirichlet_character(modulus: int, index: int) -> DirichletCharacter:
    """Character number ``index`` mod ``modulus``.

    Characters are enumerated lexicographically by the tuple (k_1, ..., k_r)
    with chi(g_i) = exp(2 pi i k_i / ord(g_i)) on the generators returned by
    :func:`unit_group_generators`.  Index 0 is the principal character.
    """
    if modulus < 1:
        raise InvalidArgument("modulus must be positive")
    gens = unit_group_generators(modulus)
    count = character_count(modulus)
    if not 0 <= index < count:
        raise InvalidArgument(f"index {index} out of range for modulus {modulus} ({count} characters)")
    ks = next(itertools.islice(itertools.product(*(range(o) for _, o in gens)), index, None)) if gens else ()
    angles = {}
    for n, exps in _discrete_logs(modulus).items():
        angles[n] = sum((Fraction(k * e, o) for (_, o), k, e in zip(gens, ks, exps)), Fraction(0)) % 1
    if modulus == 1:
        angles = {0: Fraction(0)}
    return DirichletCharacter(modulus, angles)


def characters(modulus: int) -> list[DirichletCharacter]:
    return [dirichlet_character(modulus, i) for i in range(character_count(modulus))]


def primitive_characters(modulus: int) -> list[DirichletCharacter]:
    return [chi for chi in characters(modulus) if chi.is_primitive]


def _conductor_from_angles(q: int, angles: Mapping[int, Fraction]) -> int:
    for f in sorted(d for d in range(1, q + 1) if q % d == 0):
        if all(a == 0 for n, a in angles.items() if n % f == 1 % f):
            return f
    return q


def dirichlet_conductor(table: DirichletCharacter | Mapping[int, complex], modulus: int | None = None, tol: float = 1e-9) -> int:
    """Smallest f | q through which the character factors.

    ``table`` maps each unit residue mod q to its (complex) value; a table that
    is not a character of (Z/q)^x raises :class:`InvalidArgument`.
    """
    if isinstance(table, DirichletCharacter):
        return table.conductor
    if modulus is None:
        raise InvalidArgument("modulus required for a raw value table")
    q = modulus
    units = [n for n in range(q) if math.gcd(n, q) == 1]
    vals = {n % q: complex(v) for n, v in table.items()}
    if set(vals) != set(units):
        raise InvalidArgument("value table must cover exactly the units mod q")
    if abs(vals[1 % q] - 1) > tol or any(abs(abs(v) - 1) > tol for v in vals.values()):
        raise InvalidArgument("values must be roots of unity with chi(1) = 1")
    for a in units:
        for b in units:
            if abs(vals[a * b % q] - vals[a] * vals[b]) > tol:
                raise InvalidArgument("value table is not multiplicative")
    for f in sorted(d for d in range(1, q + 1) if q % d == 0):
        if all(abs(v - 1) <= tol for n, v in vals.items() if n % f == 1 % f):
            return f
    return q


def gauss_sum(chi: DirichletCharacter) -> complex:
    """tau(chi) = sum_{n mod q} chi(n) exp(2 pi i n / q), for primitive chi."""
    if not chi.is_primitive:
        raise InvalidArgument("Gauss sum requires a primitive character")
    q = chi.modulus
    return sum(
        (_expi(chi.angle(n) + Fraction(n, q)) for n in range(q) if math.gcd(n, q) == 1),
        0j,
    )


def root_number(chi: DirichletCharacter) -> complex:
    """epsilon(chi) = tau(chi) / (i^a sqrt(q))."""
    return gauss_sum(chi) / ((1j) ** chi.parity * math.sqrt(chi.modulus))


# --- quasi-characters ----------------------------------------------------------


@dataclass(frozen=True)
class TrivialUnitary:
    def inverse(self) -> TrivialUnitary:
        return self


TRIVIAL = TrivialUnitary()


@dataclass(frozen=True)
class NormTwist:
    """The unitary character |x|^{i tau}."""

    tau: float

    def inverse(self) -> NormTwist:
        return NormTwist(-self.tau)


Unitary = Union[TrivialUnitary, NormTwist, DirichletCharacter]


@dataclass(frozen=True)
class QuasiCharacter:
    """chi = mu |.|^s with unitary part ``mu`` and complex exponent ``s``."""

    unitary: Unitary = TRIVIAL
    s: complex = 0j

    @property
    def effective_exponent(self) -> complex:
        """s' with chi = |.|^{s'} when mu is a norm twist (s' = s + i tau)."""
        if isinstance(self.unitary, NormTwist):
            return complex(self.s) + 1j * self.unitary.tau
        return complex(self.s)

    @property
    def trivial_on_norm_one(self) -> bool:
        if isinstance(self.unitary, DirichletCharacter):
            return self.unitary.is_principal
        return True

    def dual(self) -> QuasiCharacter:
        """chi^{-1} |.|: invert the unitary part and send s to 1 - s."""
        return QuasiCharacter(self.unitary.inverse(), 1 - complex(self.s))


def _dirichlet_idele_angle(chi: DirichletCharacter, x: IdelePoint) -> Fraction:
    """Angle of the idele-class lift of chi at x.

    Unramified p: chi(p)^{v_p(x_p)}.  Ramified p | q: the unit part u maps to
    chi_p(u)^{-1} and p itself to prod_{p' != p} chi_{p'}(p).  Real place:
    sign^a.  The product is trivial on the diagonal image of Q^x.
    """
    q = chi.modulus
    ramified = [p for p, _ in _factor(q)]
    angle = Fraction(chi.parity, 2) if x.real < 0 else Fraction(0)
    for p in sorted(set(x.finite) | set(ramified)):
        comp = x.component(p)
        v = valuation(comp, p)
        if p in ramified:
            u = unit_part(comp, p)
            angle -= chi.local_angle(p, u)
            if v:
                angle += v * sum((chi.local_angle(r, Fraction(p)) for r in ramified if r != p), Fraction(0))
        elif v:
            angle += v * chi.angle(p)
    return angle % 1


def unitary_eval(mu: Unitary, x: IdelePoint) -> complex:
    if isinstance(mu, TrivialUnitary):
        return 1 + 0j
    if isinstance(mu, NormTwist):
        return cmath.exp(1j * mu.tau * math.log(float(idele_norm(x))))
    return _expi(_dirichlet_idele_angle(mu, x))


def quasichar_eval(chi: QuasiCharacter, x: IdelePoint) -> complex:
    """mu(x) |x|^s."""
    norm = idele_norm(x)
    s = complex(chi.s)
    if s == 0:
        power = 1 + 0j
    elif isinstance(norm, Fraction) and s.imag == 0 and s.real == int(s.real):
        power = complex(norm ** int(s.real))
    else:
        power = cmath.exp(s * math.log(float(norm)))
    return unitary_eval(chi.unitary, x) * power
