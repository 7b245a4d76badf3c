"""Exact arithmetic in cyclotomic fields Q(zeta_m).

An element is stored as an integer polynomial in zeta_m reduced modulo the
m-th cyclotomic polynomial, together with a single positive denominator.
Values built at different orders are lifted to the lcm order before they are
combined; no attempt is made to find the smallest hosting field.
"""

from __future__ import annotations

import cmath
import math
import threading
from fractions import Fraction
from functools import lru_cache, reduce

__all__ = [
    "Cyclotomic",
    "cyclotomic_polynomial",
    "root_of_unity",
    "euler_phi",
    "ZERO",
    "ONE",
]

MAX_ORDER = 10000

_phi_lock = threading.Lock()
_phi_memo: dict[int, tuple[int, ...]] = {1: (-1, 1)}


def euler_phi(m: int) -> int:
    result, n, p = m, m, 2
    while p * p <= n:
        if n % p == 0:
            while n % p == 0:
                n //= p
            result -= result // p
        p += 1
    if n > 1:
        result -= result // n
    return result


def _mobius(n: int) -> int:
    result, p = 1, 2
    while p * p <= n:
        if n % p == 0:
            n //= p
            if n % p == 0:
                return 0
            result = -result
        p += 1
    if n > 1:
        result = -result
    return result


def _poly_divexact(num: list[int], den: tuple[int, ...]) -> list[int]:
    # den is monic; coefficients low -> high
    num = list(num)
    dn = len(den) - 1
    out = [0] * (len(num) - dn)
    for i in range(len(out) - 1, -1, -1):
        c = num[i + dn]
        out[i] = c
        if c:
            for j, d in enumerate(den):
                num[i + j] -= c * d
    if any(num[:dn]):
        raise ArithmeticError("inexact polynomial division")
    return out


def cyclotomic_polynomial(m: int) -> tuple[int, ...]:
    """Integer coefficients of Phi_m, lowest degree first."""
    if not 1 <= m <= MAX_ORDER:
        raise ValueError(f"order {m} outside 1..{MAX_ORDER}")
    cached = _phi_memo.get(m)
    if cached is not None:
        return cached
    divisors = [d for d in range(1, m) if m % d == 0]
    factors = [cyclotomic_polynomial(d) for d in divisors]
    poly = [-1] + [0] * (m - 1) + [1]
    for f in factors:
        poly = _poly_divexact(poly, f)
    result = tuple(poly)
    with _phi_lock:
        _phi_memo.setdefault(m, result)
    return _phi_memo[m]


@lru_cache(maxsize=None)
def _power_table(m: int) -> tuple[tuple[int, ...], ...]:
    """Row j holds x^j mod Phi_m for 0 <= j < m."""
    phi = cyclotomic_polynomial(m)
    d = len(phi) - 1
    rows = []
    cur = [0] * d
    cur[0] = 1
    for _ in range(m):
        rows.append(tuple(cur))
        # multiply by x and reduce the overflow coefficient
        top = cur[-1]
        cur = [0] + cur[:-1]
        if top:
            for i in range(d):
                cur[i] -= top * phi[i]
    return tuple(rows)


@lru_cache(maxsize=None)
def _units(m: int) -> tuple[int, ...]:
    return tuple(k for k in range(1, m + 1) if math.gcd(k, m) == 1)


@lru_cache(maxsize=None)
def _trace_of_powers(m: int) -> tuple[int, ...]:
    # Ramanujan sums: trace of zeta_m^i down to Q
    d = euler_phi(m)
    out = []
    for i in range(d):
        g = math.gcd(i, m)
        q = m // g
        out.append(_mobius(q) * d // euler_phi(q))
    return tuple(out)


def _reduce(m: int, poly: list[int]) -> tuple[int, ...]:
    table = _power_table(m)
    d = len(table[0])
    if len(poly) <= d:
        return tuple(poly) + (0,) * (d - len(poly))
    out = poly[:d]
    for j in range(d, len(poly)):
        c = poly[j]
        if c:
            row = table[j % m]
            for i in range(d):
                if row[i]:
                    out[i] += c * row[i]
    return tuple(out)


def _normalize(num: tuple[int, ...], den: int) -> tuple[tuple[int, ...], int]:
    if den < 0:
        num, den = tuple(-c for c in num), -den
    g = reduce(math.gcd, num, den)
    if g == 0:
        return num, 1
    if g != 1:
        num = tuple(c // g for c in num)
        den //= g
    if not any(num):
        den = 1
    return num, den


class Cyclotomic:
    """Immutable element of Q(zeta_order)."""

    __slots__ = ("order", "num", "den", "_hash")

    def __init__(self, order: int, num, den: int = 1, *, _normalized: bool = False):
        if _normalized:
            self.order, self.num, self.den = order, num, den
        else:
            d = euler_phi(order)
            num = tuple(int(c) for c in num)
            if len(num) != d:
                num = _reduce(order, list(num)) if len(num) > d else num + (0,) * (d - len(num))
            if den == 0:
                raise ZeroDivisionError("zero denominator")
            self.num, self.den = _normalize(num, int(den))
            self.order = order
        self._hash = None

    # -- constructors ------------------------------------------------------
    @classmethod
    def from_rational(cls, q, order: int = 1) -> Cyclotomic:
        q = Fraction(q)
        d = euler_phi(order)
        num = (q.numerator,) + (0,) * (d - 1)
        return cls(order, num, q.denominator)

    @classmethod
    def from_coefficients(cls, order: int, coeffs) -> Cyclotomic:
        """Build sum_i coeffs[i] * zeta_order^i from rationals (any length)."""
        fr = [Fraction(c) for c in coeffs]
        den = reduce(lambda a, b: a * b // math.gcd(a, b), (f.denominator for f in fr), 1)
        poly = [int(f * den) for f in fr]
        out = _reduce(order, poly + [0] * max(0, euler_phi(order) - len(poly)))
        return cls(order, out, den)

    @classmethod
    def from_exponents(cls, order: int, exponents) -> Cyclotomic:
        """Sum of zeta_order^k over the given exponents (with repetition)."""
        poly = [0] * order
        for k in exponents:
            poly[k % order] += 1
        return cls(order, _reduce(order, poly), 1)

    # -- coercion ----------------------------------------------------------
    def lift(self, order: int) -> Cyclotomic:
        """The same value expressed in Q(zeta_order); order must be a multiple."""
        if order == self.order:
            return self
        if order % self.order:
            raise ValueError(f"cannot lift order {self.order} to {order}")
        step = order // self.order
        table = _power_table(order)
        d = euler_phi(order)
        out = [0] * d
        for i, c in enumerate(self.num):
            if c:
                row = table[i * step % order]
                for j in range(d):
                    if row[j]:
                        out[j] += c * row[j]
        return Cyclotomic(order, tuple(out), self.den, _normalized=True)

    @staticmethod
    def _coerce(other) -> Cyclotomic | None:
        if isinstance(other, Cyclotomic):
            return other
        if isinstance(other, (int, Fraction)):
            return Cyclotomic.from_rational(other)
        return None

    def _common(self, other: Cyclotomic) -> tuple[Cyclotomic, Cyclotomic]:
        if self.order == other.order:
            return self, other
        if other.is_rational():
            return self, Cyclotomic.from_rational(other.to_fraction(), self.order)
        if self.is_rational():
            return Cyclotomic.from_rational(self.to_fraction(), other.order), other
        m = self.order * other.order // math.gcd(self.order, other.order)
        return self.lift(m), other.lift(m)

    # -- predicates --------------------------------------------------------
    def is_zero(self) -> bool:
        return not any(self.num)

    def is_rational(self) -> bool:
        return not any(self.num[1:])

    def is_one(self) -> bool:
        return self.den == 1 and self.num[0] == 1 and not any(self.num[1:])

    def to_fraction(self) -> Fraction:
        if not self.is_rational():
            raise ValueError(f"{self!r} is not rational")
        return Fraction(self.num[0], self.den)

    def coefficients(self) -> tuple[Fraction, ...]:
        return tuple(Fraction(c, self.den) for c in self.num)

    # -- arithmetic --------------------------------------------------------
    def __add__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        a, b = self._common(other)
        if a.den == b.den:
            num = tuple(x + y for x, y in zip(a.num, b.num))
            den = a.den
        else:
            num = tuple(x * b.den + y * a.den for x, y in zip(a.num, b.num))
            den = a.den * b.den
        num, den = _normalize(num, den)
        return Cyclotomic(a.order, num, den, _normalized=True)

    __radd__ = __add__

    def __neg__(self):
        return Cyclotomic(self.order, tuple(-c for c in self.num), self.den, _normalized=True)

    def __sub__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return other + (-self)

    def _scale(self, q: Fraction) -> Cyclotomic:
        num, den = _normalize(tuple(c * q.numerator for c in self.num), self.den * q.denominator)
        return Cyclotomic(self.order, num, den, _normalized=True)

    def __mul__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        if other.is_rational():
            if other.is_one():
                return self
            return self._scale(other.to_fraction())
        if self.is_rational():
            if self.is_one():
                return other
            return other._scale(self.to_fraction())
        a, b = self._common(other)
        d = len(a.num)
        prod = [0] * (2 * d - 1)
        for i, x in enumerate(a.num):
            if x:
                for j, y in enumerate(b.num):
                    if y:
                        prod[i + j] += x * y
        num, den = _normalize(_reduce(a.order, prod), a.den * b.den)
        return Cyclotomic(a.order, num, den, _normalized=True)

    __rmul__ = __mul__

    def galois(self, k: int) -> Cyclotomic:
        """Apply the automorphism zeta -> zeta^k (gcd(k, order) = 1)."""
        m = self.order
        if math.gcd(k, m) != 1:
            raise ValueError(f"{k} is not a unit modulo {m}")
        if self.is_rational():
            return self
        poly = [0] * m
        for i, c in enumerate(self.num):
            if c:
                poly[i * k % m] += c
        return Cyclotomic(m, _reduce(m, poly), self.den, _normalized=True)

    def conj(self) -> Cyclotomic:
        return self.galois(-1 % self.order if self.order > 1 else 1)

    def norm(self) -> Fraction:
        prod = self
        for k in _units(self.order):
            if k != 1:
                prod = prod * self.galois(k)
        return prod.to_fraction()

    def inv(self) -> Cyclotomic:
        if self.is_zero():
            raise ZeroDivisionError("inverse of zero in a cyclotomic field")
        if self.is_rational():
            return Cyclotomic.from_rational(1 / self.to_fraction(), self.order)
        # product of the nontrivial Galois conjugates divided by the norm
        others = None
        for k in _units(self.order):
            if k != 1:
                c = self.galois(k)
                others = c if others is None else others * c
        n = (self * others).to_fraction()
        return others._scale(1 / n)

    def __truediv__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return self * other.inv()

    def __rtruediv__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return other * self.inv()

    def __pow__(self, k: int):
        if k < 0:
            return self.inv() ** (-k)
        result = Cyclotomic.from_rational(1, self.order)
        base = self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    # -- comparison / hashing ---------------------------------------------
    def __eq__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        a, b = self._common(other)
        return a.den == b.den and a.num == b.num

    def __hash__(self):
        # normalized trace is independent of the hosting field
        if self._hash is None:
            tr = _trace_of_powers(self.order)
            t = Fraction(sum(c * w for c, w in zip(self.num, tr)), self.den * euler_phi(self.order))
            self._hash = hash(t)
        return self._hash

    def sort_key(self, order: int | None = None) -> tuple:
        v = self.lift(order) if order else self
        return tuple(Fraction(c, v.den) for c in v.num)

    # -- output ------------------------------------------------------------
    def embed_complex(self) -> complex:
        m = self.order
        z = sum(c * cmath.exp(2j * math.pi * i / m) for i, c in enumerate(self.num))
        return complex(z) / self.den

    __complex__ = embed_complex

    def to_json(self) -> dict:
        return {
            "order": self.order,
            "coeffs": [[f.numerator, f.denominator] for f in self.coefficients()],
        }

    @classmethod
    def from_json(cls, data: dict) -> Cyclotomic:
        coeffs = [Fraction(n, d) for n, d in data["coeffs"]]
        if len(coeffs) != euler_phi(data["order"]):
            raise ValueError("coefficient vector length must equal euler_phi(order)")
        return cls.from_coefficients(data["order"], coeffs)

    def __repr__(self):
        if self.is_rational():
            return str(self.to_fraction())
        terms = []
        for i, c in enumerate(self.coefficients()):
            if c:
                mono = "1" if i == 0 else (f"z{self.order}" if i == 1 else f"z{self.order}^{i}")
                terms.append(f"{c}*{mono}" if c != 1 else mono)
        return " + ".join(terms)

    def __bool__(self):
        return not self.is_zero()


@lru_cache(maxsize=65536)
def _root(m: int, k: int) -> Cyclotomic:
    poly = [0] * m
    poly[k] = 1
    return Cyclotomic(m, _reduce(m, poly), 1, _normalized=True)


def root_of_unity(m: int, k: int = 1) -> Cyclotomic:
    """zeta_m^k in canonical form."""
    if m < 1:
        raise ValueError("order must be positive")
    return _root(m, k % m)


ZERO = Cyclotomic.from_rational(0)
ONE = Cyclotomic.from_rational(1)
