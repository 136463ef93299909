"""Exact arithmetic in Q(xi), xi a primitive l-th root of unity, and the
q-combinatorics (q-integers, q-factorials, Gaussian binomials) evaluated there.

Elements are stored as an integer numerator vector of length phi(l) over a
positive common denominator, reduced modulo the l-th cyclotomic polynomial.
That form is canonical, so equality and zero tests are structural.
"""

from __future__ import annotations

from dataclasses import dataclass, field as dc_field
from fractions import Fraction
from functools import lru_cache
from math import gcd

from .errors import EngineError, InvalidRootOfUnity

__all__ = [
    "RootOfUnityConfig",
    "CyclotomicField",
    "CycScalar",
    "cyclotomic_polynomial",
    "qint",
    "qfact",
    "qbinom",
    "cartan_binom_eval",
    "gaussian_poly",
]


def _poly_divexact(num, den):
    """Exact division of integer polynomials (coefficient lists, low degree first)."""
    num = list(num)
    out = [0] * (len(num) - len(den) + 1)
    lead = den[-1]
    for k in range(len(out) - 1, -1, -1):
        c, r = divmod(num[k + len(den) - 1], lead)
        if r:
            raise EngineError("inexact polynomial division")
        out[k] = c
        if c:
            for j, dj in enumerate(den):
                num[k + j] -= c * dj
    if any(num[: len(den) - 1]):
        raise EngineError("inexact polynomial division")
    return out


@lru_cache(maxsize=None)
def cyclotomic_polynomial(n: int) -> tuple[int, ...]:
    """Coefficients of Phi_n, lowest degree first."""
    poly = [-1] + [0] * (n - 1) + [1]
    for d in range(1, n):
        if n % d == 0:
            poly = _poly_divexact(poly, cyclotomic_polynomial(d))
    return tuple(poly)


class CyclotomicField:
    """The field Q(xi) for a fixed odd order l; use :func:`CyclotomicField.of`."""

    def __init__(self, l: int):
        self.l = l
        self.modulus = cyclotomic_polynomial(l)
        self.phi = phi = len(self.modulus) - 1
        self._tail = [(i, p) for i, p in enumerate(self.modulus[:phi]) if p]
        # xi^k mod Phi_l for 0 <= k < l
        pows = []
        vec = [1] + [0] * (phi - 1)
        for _ in range(l):
            pows.append(tuple(vec))
            vec = self._reduce([0] + vec)
        self._pow_vecs = pows
        self.units = tuple(k for k in range(2, l) if gcd(k, l) == 1)
        self.zero = CycScalar._raw(self, (0,) * phi, 1)
        self.one = CycScalar._raw(self, (1,) + (0,) * (phi - 1), 1)
        self._pow_cache = [CycScalar._raw(self, v, 1) for v in pows]
        self.xi = self._pow_cache[1 % l]

    @staticmethod
    @lru_cache(maxsize=None)
    def of(l: int) -> "CyclotomicField":
        return CyclotomicField(l)

    def _reduce(self, coeffs):
        phi = self.phi
        coeffs = list(coeffs)
        for k in range(len(coeffs) - 1, phi - 1, -1):
            c = coeffs[k]
            if c:
                base = k - phi
                for i, p in self._tail:
                    coeffs[base + i] -= c * p
        coeffs = coeffs[:phi]
        if len(coeffs) < phi:
            coeffs += [0] * (phi - len(coeffs))
        return coeffs

    def xi_pow(self, k: int) -> "CycScalar":
        return self._pow_cache[k % self.l]

    def __call__(self, value) -> "CycScalar":
        if isinstance(value, CycScalar):
            if value.field is not self:
                raise ValueError("element of a different cyclotomic field")
            return value
        if isinstance(value, int):
            return CycScalar(self, (value,) + (0,) * (self.phi - 1))
        if isinstance(value, Fraction):
            return CycScalar(
                self, (value.numerator,) + (0,) * (self.phi - 1), value.denominator
            )
        raise TypeError(f"cannot coerce {value!r} into Q(xi)")

    def from_exponents(self, counts: dict[int, int]) -> "CycScalar":
        """Sum of c * xi^k over a mapping k -> c (k any integer)."""
        acc = [0] * self.phi
        for k, c in counts.items():
            if c:
                for j, v in enumerate(self._pow_vecs[k % self.l]):
                    if v:
                        acc[j] += c * v
        return CycScalar(self, acc)

    def __repr__(self):
        return f"CyclotomicField({self.l})"


class CycScalar:
    """Immutable element of Q(xi)."""

    __slots__ = ("field", "num", "den", "_hash")

    def __init__(self, field: CyclotomicField, num, den: int = 1):
        num = tuple(num)
        if len(num) != field.phi:
            num = tuple(field._reduce(num))
        if den == 0:
            raise ZeroDivisionError("zero denominator")
        if den < 0:
            num = tuple(-c for c in num)
            den = -den
        g = gcd(den, *num)
        if g > 1:
            num = tuple(c // g for c in num)
            den //= g
        self.field = field
        self.num = num
        self.den = den
        self._hash = None

    @classmethod
    def _raw(cls, field, num, den):
        obj = object.__new__(cls)
        obj.field = field
        obj.num = num
        obj.den = den
        obj._hash = None
        return obj

    @classmethod
    def _norm(cls, field, num, den):
        g = gcd(den, *num)
        if g > 1:
            num = [c // g for c in num]
            den //= g
        elif g == 0:
            return field.zero
        return cls._raw(field, tuple(num), den)

    # -- predicates -----------------------------------------------------------
    def is_zero(self) -> bool:
        return not any(self.num)

    def __bool__(self):
        return any(self.num)

    def is_rational(self) -> bool:
        return not any(self.num[1:])

    def to_fraction(self) -> Fraction:
        if not self.is_rational():
            raise ValueError(f"{self} is not rational")
        return Fraction(self.num[0], self.den)

    def coefficients(self) -> list[Fraction]:
        return [Fraction(c, self.den) for c in self.num]

    # -- arithmetic -----------------------------------------------------------
    def _coerce(self, other):
        if other.__class__ is CycScalar:
            if other.field is not self.field:
                raise ValueError("mixing elements of different cyclotomic fields")
            return other
        return self.field(other)

    def __add__(self, other):
        other = self._coerce(other)
        if self.den == other.den:
            num = [a + b for a, b in zip(self.num, other.num)]
            return CycScalar._norm(self.field, num, self.den)
        d1, d2 = self.den, other.den
        num = [a * d2 + b * d1 for a, b in zip(self.num, other.num)]
        return CycScalar._norm(self.field, num, d1 * d2)

    __radd__ = __add__

    def __neg__(self):
        return CycScalar._raw(self.field, tuple(-c for c in self.num), self.den)

    def __sub__(self, other):
        other = self._coerce(other)
        if self.den == other.den:
            num = [a - b for a, b in zip(self.num, other.num)]
            return CycScalar._norm(self.field, num, self.den)
        d1, d2 = self.den, other.den
        num = [a * d2 - b * d1 for a, b in zip(self.num, other.num)]
        return CycScalar._norm(self.field, num, d1 * d2)

    def __rsub__(self, other):
        return self._coerce(other) - self

    def __mul__(self, other):
        if other.__class__ is not CycScalar:
            if isinstance(other, int):
                if other == 0:
                    return self.field.zero
                return CycScalar._norm(
                    self.field, [c * other for c in self.num], self.den
                )
            other = self._coerce(other)
        elif other.field is not self.field:
            raise ValueError("mixing elements of different cyclotomic fields")
        field = self.field
        phi = field.phi
        a = self.num
        b = other.num
        prod = [0] * (2 * phi - 1)
        for i in range(phi):
            ai = a[i]
            if ai:
                for j in range(phi):
                    bj = b[j]
                    if bj:
                        prod[i + j] += ai * bj
        tail = field._tail
        for k in range(2 * phi - 2, phi - 1, -1):
            c = prod[k]
            if c:
                base = k - phi
                for i, p in tail:
                    prod[base + i] -= c * p
        del prod[phi:]
        return CycScalar._norm(field, prod, self.den * other.den)

    __rmul__ = __mul__

    def conjugate(self, k: int) -> "CycScalar":
        """Image under the Galois automorphism xi -> xi^k."""
        field = self.field
        l = field.l
        acc = [0] * field.phi
        for j, c in enumerate(self.num):
            if c:
                for t, v in enumerate(field._pow_vecs[(j * k) % l]):
                    if v:
                        acc[t] += c * v
        return CycScalar._norm(field, acc, self.den)

    def inverse(self) -> "CycScalar":
        if not any(self.num):
            raise ZeroDivisionError("inverse of zero in Q(xi)")
        if self.is_rational():
            return CycScalar(self.field, (self.den,) + (0,) * (self.field.phi - 1), self.num[0])
        others = self.field.one
        for k in self.field.units:
            others = others * self.conjugate(k)
        norm = self * others
        if not norm.is_rational():
            raise EngineError("norm is not rational")
        q = norm.to_fraction()
        return CycScalar(self.field, [c * q.denominator for c in others.num], others.den * q.numerator)

    def __truediv__(self, other):
        other = self._coerce(other)
        return self * other.inverse()

    def __rtruediv__(self, other):
        return self._coerce(other) * self.inverse()

    def __pow__(self, n: int):
        if n < 0:
            return self.inverse() ** (-n)
        acc = self.field.one
        base = self
        while n:
            if n & 1:
                acc = acc * base
            base = base * base
            n >>= 1
        return acc

    def __eq__(self, other):
        if other.__class__ is CycScalar:
            return self.field is other.field and self.num == other.num and self.den == other.den
        if isinstance(other, (int, Fraction)):
            return self == self.field(other)
        return NotImplemented

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.field.l, self.num, self.den))
        return self._hash

    # -- printing -------------------------------------------------------------
    def __str__(self):
        parts = []
        for k, c in enumerate(self.num):
            if not c:
                continue
            q = Fraction(c, self.den)
            if k == 0:
                body = str(abs(q))
            else:
                mono = "ξ" if k == 1 else f"ξ^{k}"
                mag = abs(q)
                if mag == 1:
                    body = mono
                elif mag.denominator == 1:
                    body = f"{mag}{mono}"
                else:
                    body = f"({mag}){mono}"
            parts.append(("-" if q < 0 else "+", body))
        if not parts:
            return "0"
        out = ("-" if parts[0][0] == "-" else "") + parts[0][1]
        for sign, body in parts[1:]:
            out += f" {sign} {body}"
        return out

    def is_atomic(self) -> bool:
        """True when printing needs no parentheses as a factor."""
        return sum(1 for c in self.num if c) <= 1

    def __repr__(self):
        return f"CycScalar({self})"


@dataclass(frozen=True)
class RootOfUnityConfig:
    """Order of xi and the fixed type-B2 data (d_1 = 1, d_2 = 2)."""

    l: int
    d: tuple[int, int] = (1, 2)
    cartan: tuple[tuple[int, int], tuple[int, int]] = ((2, -2), (-1, 2))
    field: CyclotomicField = dc_field(init=False, repr=False, compare=False)

    def __post_init__(self):
        if not isinstance(self.l, int) or self.l < 5 or self.l % 2 == 0:
            raise InvalidRootOfUnity(f"invalid l: {self.l!r} (need an odd integer >= 5)")
        object.__setattr__(self, "field", CyclotomicField.of(self.l))

    @property
    def l_i(self) -> tuple[int, int]:
        """Orders of xi^(2 d_i); both equal l for odd l."""
        l = self.l
        return tuple(l // gcd(l, 2 * di) for di in self.d)

    def a(self, i: int, j: int) -> int:
        return self.cartan[i - 1][j - 1]


# -- Gaussian polynomials (generic in v) ----------------------------------------


@lru_cache(maxsize=None)
def gaussian_poly(n: int, k: int) -> tuple[int, ...]:
    """Coefficients in q of the ordinary Gaussian binomial (n choose k)_q, n >= 0."""
    if k < 0 or k > n:
        return (0,)
    if k == 0 or k == n:
        return (1,)
    # (n,k) = (n-1,k-1) + q^k (n-1,k)
    a = gaussian_poly(n - 1, k - 1)
    b = gaussian_poly(n - 1, k)
    out = [0] * (k * (n - k) + 1)
    for i, c in enumerate(a):
        out[i] += c
    for i, c in enumerate(b):
        out[i + k] += c
    return tuple(out)


def _config_field(config) -> CyclotomicField:
    if isinstance(config, RootOfUnityConfig):
        return config.field
    if isinstance(config, CyclotomicField):
        return config
    return RootOfUnityConfig(config).field


def qint(a: int, i: int, config) -> CycScalar:
    """(xi^(ia) - xi^(-ia)) / (xi^i - xi^(-i))."""
    field = _config_field(config)
    sign = 1
    if a < 0:
        a, sign = -a, -1
    counts: dict[int, int] = {}
    for k in range(a):
        e = i * (a - 1 - 2 * k)
        counts[e] = counts.get(e, 0) + sign
    return field.from_exponents(counts)


def qfact(a: int, i: int, config) -> CycScalar:
    field = _config_field(config)
    acc = field.one
    for h in range(1, a + 1):
        acc = acc * qint(h, i, field)
        if not acc:
            break
    return acc


@lru_cache(maxsize=None)
def _qbinom_cached(field, b, a, i):
    if a < 0:
        return field.zero
    if a == 0:
        return field.one
    sign = 1
    if b < 0:
        # symmetric Gaussian binomials: [b, a] = (-1)^a [a - b - 1, a]
        b, sign = a - b - 1, (-1) ** a
    if a > b:
        return field.zero
    # [b, a]_v = v^(-a(b-a)) (b choose a)_{v^2}, evaluated at v = xi^i
    shift = -a * (b - a)
    counts: dict[int, int] = {}
    l = field.l
    for j, c in enumerate(gaussian_poly(b, a)):
        if c:
            e = (i * (shift + 2 * j)) % l
            counts[e] = counts.get(e, 0) + sign * c
    return field.from_exponents(counts)


def qbinom(b: int, a: int, i: int, config) -> CycScalar:
    """Gaussian binomial [b over a] at v = xi^i, for any integer b and a >= 0."""
    return _qbinom_cached(_config_field(config), b, a, i)


def cartan_binom_eval(mu, c: int, a: int, i: int, config) -> CycScalar:
    """Scalar by which [k_i; c over a] acts on a vector of weight mu."""
    return qbinom(mu[i - 1] + c, a, i, config)
