"""Exact arithmetic in cyclotomic fields Q(zeta_N).

An element is a rational-coordinate vector in the power basis
1, zeta, ..., zeta^(phi(N)-1), reduced modulo the N-th cyclotomic polynomial
Phi_N. zeta_N denotes the distinguished primitive root exp(2*pi*i/N) and the
complex embedding maps it there. Elements are immutable; binary operations
require equal orders (use lift_to / common_order to move into a larger field).

Galois automorphisms of Q(zeta_N) are the maps zeta |-> zeta^k with
gcd(k, N) = 1; k = -1 is complex conjugation.
"""

from __future__ import annotations

import cmath
import math
from fractions import Fraction
from typing import Iterable, Optional, Union

from .errors import InvalidExponent, NotASubfield, OrderMismatch, SchemaError

_ZERO = Fraction(0)
_ONE = Fraction(1)


def euler_phi(n: int) -> int:
    """Euler totient by trial-division factorization (orders here are small)."""
    if n < 1:
        raise ValueError("order must be positive")
    result, m, p = 1, n, 2
    while p * p <= m:
        if m % p == 0:
            k = 0
            while m % p == 0:
                m //= p
                k += 1
            result *= (p - 1) * p ** (k - 1)
        p += 1
    if m > 1:
        result *= m - 1
    return result


def _poly_trim(c: list[Fraction]) -> list[Fraction]:
    while c and c[-1] == 0:
        c.pop()
    return c


def _poly_divmod(a: list[Fraction], b: list[Fraction]) -> tuple[list[Fraction], list[Fraction]]:
    """Quotient and remainder in Q[x]; coefficients low to high."""
    a = list(a)
    q = [_ZERO] * max(0, len(a) - len(b) + 1)
    inv_lead = 1 / b[-1]
    for i in range(len(a) - len(b), -1, -1):
        coef = a[i + len(b) - 1] * inv_lead
        if coef:
            q[i] = coef
            for j, bj in enumerate(b):
                a[i + j] -= coef * bj
    return q, _poly_trim(a)


def _poly_mul(a: list[Fraction], b: list[Fraction]) -> list[Fraction]:
    if not a or not b:
        return []
    out = [_ZERO] * (len(a) + len(b) - 1)
    for i, ai in enumerate(a):
        if ai:
            for j, bj in enumerate(b):
                out[i + j] += ai * bj
    return _poly_trim(out)


def _poly_sub(a: list[Fraction], b: list[Fraction]) -> list[Fraction]:
    out = [_ZERO] * max(len(a), len(b))
    for i, ai in enumerate(a):
        out[i] += ai
    for i, bi in enumerate(b):
        out[i] -= bi
    return _poly_trim(out)


_CYCLO_CACHE: dict[int, tuple[Fraction, ...]] = {}


def cyclotomic_polynomial(n: int) -> tuple[Fraction, ...]:
    """Phi_n as monic coefficients low to high, via (x^n - 1) / prod Phi_d."""
    cached = _CYCLO_CACHE.get(n)
    if cached is not None:
        return cached
    poly = [-_ONE] + [_ZERO] * (n - 1) + [_ONE]  # x^n - 1
    for d in range(1, n):
        if n % d == 0:
            poly, rem = _poly_divmod(poly, list(cyclotomic_polynomial(d)))
            assert not rem, "cyclotomic division must be exact"
    result = tuple(poly)
    _CYCLO_CACHE[n] = result
    return result


_POWER_CACHE: dict[int, tuple[tuple[Fraction, ...], ...]] = {}


def _power_table(n: int) -> tuple[tuple[Fraction, ...], ...]:
    """x^k mod Phi_n for 0 <= k < max(n, 2*phi(n) - 1), as phi(n)-vectors."""
    cached = _POWER_CACHE.get(n)
    if cached is not None:
        return cached
    phi = euler_phi(n)
    modulus = cyclotomic_polynomial(n)
    rows: list[tuple[Fraction, ...]] = []
    current = [_ONE] + [_ZERO] * (phi - 1)
    for _ in range(max(n, 2 * phi - 1)):
        rows.append(tuple(current))
        nxt = [_ZERO] + current[:-1]
        lead = current[-1]
        if lead:
            for j in range(phi):
                nxt[j] -= lead * modulus[j]
        current = nxt
    table = tuple(rows)
    _POWER_CACHE[n] = table
    return table


Scalar = Union[int, Fraction]


class CyclotomicElement:
    """An element of Q(zeta_N) in power-basis coordinates."""

    __slots__ = ("order", "coords")

    def __init__(self, order: int, coords: Iterable[Scalar]):
        phi = euler_phi(order)
        tup = tuple(Fraction(c) for c in coords)
        if len(tup) != phi:
            raise ValueError(f"expected {phi} coordinates for order {order}, got {len(tup)}")
        object.__setattr__(self, "order", order)
        object.__setattr__(self, "coords", tup)

    def __setattr__(self, *_):
        raise AttributeError("CyclotomicElement is immutable")

    # constructors -------------------------------------------------------
    @classmethod
    def zero(cls, order: int) -> "CyclotomicElement":
        return cls(order, [_ZERO] * euler_phi(order))

    @classmethod
    def one(cls, order: int) -> "CyclotomicElement":
        return cls.from_rational(_ONE, order)

    @classmethod
    def from_rational(cls, value: Scalar, order: int) -> "CyclotomicElement":
        coords = [_ZERO] * euler_phi(order)
        coords[0] = Fraction(value)
        return cls(order, coords)

    @classmethod
    def zeta(cls, order: int, power: int = 1) -> "CyclotomicElement":
        """zeta_order ** power."""
        return cls(order, _power_table(order)[power % order])

    # helpers ------------------------------------------------------------
    def _coerce(self, other) -> Optional["CyclotomicElement"]:
        if isinstance(other, CyclotomicElement):
            if other.order != self.order:
                raise OrderMismatch(f"orders {self.order} and {other.order} differ; lift first")
            return other
        if isinstance(other, (int, Fraction)):
            return CyclotomicElement.from_rational(other, self.order)
        return None

    def is_zero(self) -> bool:
        return all(c == 0 for c in self.coords)

    def is_one(self) -> bool:
        return self.coords[0] == 1 and all(c == 0 for c in self.coords[1:])

    def is_rational(self) -> bool:
        return all(c == 0 for c in self.coords[1:])

    def as_rational(self) -> Fraction:
        if not self.is_rational():
            raise ValueError("element is not rational")
        return self.coords[0]

    # arithmetic ---------------------------------------------------------
    def __add__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return CyclotomicElement(self.order, [a + b for a, b in zip(self.coords, o.coords)])

    __radd__ = __add__

    def __neg__(self):
        return CyclotomicElement(self.order, [-a for a in self.coords])

    def __sub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return CyclotomicElement(self.order, [a - b for a, b in zip(self.coords, o.coords)])

    def __rsub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return o - self

    def __mul__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        phi = len(self.coords)
        prod = [_ZERO] * (2 * phi - 1)
        for i, a in enumerate(self.coords):
            if a:
                for j, b in enumerate(o.coords):
                    if b:
                        prod[i + j] += a * b
        table = _power_table(self.order)
        out = list(prod[:phi])
        for k in range(phi, 2 * phi - 1):
            c = prod[k]
            if c:
                row = table[k]
                for j in range(phi):
                    out[j] += c * row[j]
        return CyclotomicElement(self.order, out)

    __rmul__ = __mul__

    def inverse(self) -> "CyclotomicElement":
        if self.is_zero():
            raise ZeroDivisionError("division by zero in cyclotomic field")
        # extended Euclid in Q[x] against Phi_N (irreducible, so the gcd is a unit)
        r0 = list(cyclotomic_polynomial(self.order))
        r1 = _poly_trim(list(self.coords))
        s0, s1 = [], [_ONE]
        while len(r1) > 1:
            q, r = _poly_divmod(r0, r1)
            r0, r1, s0, s1 = r1, r, s1, _poly_sub(s0, _poly_mul(q, s1))
        unit = r1[0]
        phi = len(self.coords)
        inv = [c / unit for c in s1] + [_ZERO] * (phi - len(s1))
        return CyclotomicElement(self.order, inv)

    def __truediv__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return self * o.inverse()

    def __rtruediv__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return o * self.inverse()

    def __pow__(self, exponent: int):
        if not isinstance(exponent, int):
            return NotImplemented
        base = self if exponent >= 0 else self.inverse()
        e = abs(exponent)
        result = CyclotomicElement.one(self.order)
        while e:
            if e & 1:
                result = result * base
            base = base * base
            e >>= 1
        return result

    def __eq__(self, other):
        if isinstance(other, (int, Fraction)):
            return self.is_rational() and self.coords[0] == other
        if not isinstance(other, CyclotomicElement):
            return NotImplemented
        return self.order == other.order and self.coords == other.coords

    def __hash__(self):
        return hash((self.order, self.coords))

    def __repr__(self):
        return f"CyclotomicElement(order={self.order}, coords={[str(c) for c in self.coords]})"

    # field structure ----------------------------------------------------
    def galois(self, exponent: int) -> "CyclotomicElement":
        """Apply zeta |-> zeta^exponent; requires gcd(exponent, order) = 1."""
        n = self.order
        k = exponent % n
        if math.gcd(k, n) != 1:
            raise InvalidExponent(f"exponent {exponent} is not invertible modulo {n}")
        table = _power_table(n)
        out = [_ZERO] * len(self.coords)
        for i, c in enumerate(self.coords):
            if c:
                row = table[(i * k) % n]
                for j in range(len(out)):
                    out[j] += c * row[j]
        return CyclotomicElement(n, out)

    def conjugate(self) -> "CyclotomicElement":
        return self.galois(-1)

    def abs2(self) -> "CyclotomicElement":
        """|self|^2 = self * conj(self); exact, used for |a| = |b| tests."""
        return self * self.conjugate()

    def lift_to(self, order: int) -> "CyclotomicElement":
        """Rewrite in Q(zeta_order); requires self.order | order."""
        if order == self.order:
            return self
        if order % self.order != 0:
            raise NotASubfield(f"Q(zeta_{self.order}) does not embed in Q(zeta_{order}): {self.order} does not divide {order}")
        step = order // self.order
        table = _power_table(order)
        out = [_ZERO] * euler_phi(order)
        for i, c in enumerate(self.coords):
            if c:
                row = table[(i * step) % order]
                for j in range(len(out)):
                    out[j] += c * row[j]
        return CyclotomicElement(order, out)

    def root_of_unity_log(self) -> Optional[tuple[int, int]]:
        """Return (sign, j) with self = sign * zeta^j, or None.

        Roots of unity in Q(zeta_N) are exactly +/- zeta_N^j, so comparison
        against the finite candidate set decides membership.
        """
        table = _power_table(self.order)
        for j in range(self.order):
            if self.coords == table[j]:
                return (1, j)
        for j in range(self.order):
            if all(a == -b for a, b in zip(self.coords, table[j])):
                return (-1, j)
        return None

    def to_complex(self) -> complex:
        n = self.order
        return sum(float(c) * cmath.exp(2j * cmath.pi * i / n) for i, c in enumerate(self.coords))

    # serialization ------------------------------------------------------
    def to_dict(self) -> dict:
        return {"order": self.order, "coords": [str(c) for c in self.coords]}

    @classmethod
    def from_dict(cls, obj: dict) -> "CyclotomicElement":
        if not isinstance(obj, dict) or "order" not in obj or "coords" not in obj:
            raise SchemaError("cyclotomic element needs 'order' and 'coords'")
        order = obj["order"]
        if not isinstance(order, int) or order < 1:
            raise SchemaError(f"bad cyclotomic order: {order!r}")
        coords = obj["coords"]
        if not isinstance(coords, list) or len(coords) != euler_phi(order):
            raise SchemaError(f"expected {euler_phi(order)} coordinates for order {order}")
        try:
            return cls(order, [Fraction(c) for c in coords])
        except (ValueError, ZeroDivisionError) as exc:
            raise SchemaError(f"bad rational coordinate: {exc}") from exc


class GaloisElement:
    """The automorphism zeta_N |-> zeta_N^k of Q(zeta_N)."""

    __slots__ = ("order", "exponent")

    def __init__(self, order: int, exponent: int):
        k = exponent % order
        if math.gcd(k, order) != 1:
            raise InvalidExponent(f"exponent {exponent} is not invertible modulo {order}")
        object.__setattr__(self, "order", order)
        object.__setattr__(self, "exponent", k)

    def __setattr__(self, *_):
        raise AttributeError("GaloisElement is immutable")

    def apply(self, element: CyclotomicElement) -> CyclotomicElement:
        if element.order != self.order:
            raise OrderMismatch(f"element of order {element.order} under Galois group of order {self.order}")
        return element.galois(self.exponent)

    def compose(self, other: "GaloisElement") -> "GaloisElement":
        if other.order != self.order:
            raise OrderMismatch("cannot compose Galois elements over different fields")
        return GaloisElement(self.order, (self.exponent * other.exponent) % self.order)

    def is_identity(self) -> bool:
        return self.exponent == 1 % self.order

    def is_conjugation(self) -> bool:
        return self.exponent == (-1) % self.order

    def __eq__(self, other):
        if not isinstance(other, GaloisElement):
            return NotImplemented
        return self.order == other.order and self.exponent == other.exponent

    def __hash__(self):
        return hash((self.order, self.exponent))

    def __repr__(self):
        return f"GaloisElement(order={self.order}, exponent={self.exponent})"


def conjugation(order: int) -> GaloisElement:
    return GaloisElement(order, -1)


def common_order(*orders: int) -> int:
    return math.lcm(*orders) if orders else 1


def lift_all(elements: Iterable[CyclotomicElement], order: Optional[int] = None) -> list[CyclotomicElement]:
    """Lift a collection into a single field Q(zeta_M), M = lcm of all orders."""
    elems = list(elements)
    target = common_order(*(e.order for e in elems), *( [order] if order else [] ))
    return [e.lift_to(target) for e in elems]
