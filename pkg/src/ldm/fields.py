"""Exact scalars over prime fields F_p and cyclotomic fields Q(zeta_N).

Both backends share one element type, :class:`FieldElement`, so that the
geometry and construction code never needs to know which one it runs on.

Prime-field elements store a residue in ``[0, p)``.  Cyclotomic elements store
integer numerators of the coefficients of ``1, zeta, ..., zeta^(d-1)`` together
with one positive common denominator, kept in lowest terms, where ``d`` is the
degree of the N-th cyclotomic polynomial.
"""
from __future__ import annotations

import math
import random
from dataclasses import dataclass
from fractions import Fraction
from functools import cache, cached_property
from typing import Union

from .errors import DivisionByZero, MixedFields, NoSuchRoot, NotPrime

Scalar = Union["FieldElement", int, Fraction]


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    if n < 4:
        return True
    if n % 2 == 0:
        return False
    i = 3
    while i * i <= n:
        if n % i == 0:
            return False
        i += 2
    return True


def prime_factors(n: int) -> list[int]:
    out = []
    d = 2
    while d * d <= n:
        if n % d == 0:
            out.append(d)
            while n % d == 0:
                n //= d
        d += 1
    if n > 1:
        out.append(n)
    return out


def _polydiv_exact(num: list[int], den: list[int]) -> list[int]:
    # integer polynomials, coefficients constant-first, den monic
    num = list(num)
    dd = len(den) - 1
    q = [0] * (len(num) - dd)
    for i in range(len(num) - 1, dd - 1, -1):
        c = num[i]
        if c:
            q[i - dd] = c
            for j in range(dd + 1):
                num[i - dd + j] -= c * den[j]
    assert not any(num[:dd]), "inexact cyclotomic division"
    return q


@cache
def cyclotomic_polynomial(n: int) -> tuple[int, ...]:
    """Integer coefficients of Phi_n, constant term first."""
    poly = [-1] + [0] * (n - 1) + [1]
    for d in range(1, n):
        if n % d == 0:
            poly = _polydiv_exact(poly, list(cyclotomic_polynomial(d)))
    return tuple(poly)


@dataclass(frozen=True)
class Field:
    """Descriptor of a supported field; use :func:`make_prime_field` or
    :func:`make_cyclotomic_field` to build one."""

    kind: str
    modulus: int = 0
    conductor: int = 0

    def __str__(self):
        if self.kind == "prime":
            return f"F{self.modulus}"
        return f"Q(zeta_{self.conductor})"

    @property
    def is_prime(self) -> bool:
        return self.kind == "prime"

    @property
    def characteristic(self) -> int:
        return self.modulus if self.kind == "prime" else 0

    @cached_property
    def phi(self) -> tuple[int, ...]:
        return cyclotomic_polynomial(self.conductor)

    @cached_property
    def degree(self) -> int:
        return 1 if self.kind == "prime" else len(self.phi) - 1

    def __call__(self, value: Scalar) -> FieldElement:
        if isinstance(value, FieldElement):
            if value.field != self:
                raise MixedFields(f"{value.field} element used in {self}")
            return value
        if self.kind == "prime":
            if isinstance(value, Fraction):
                return FieldElement(self, value.numerator % self.modulus) / value.denominator
            return FieldElement(self, int(value) % self.modulus)
        q = Fraction(value)
        nums = [0] * self.degree
        nums[0] = q.numerator
        return FieldElement(self, (tuple(nums), q.denominator))

    def zero(self) -> FieldElement:
        return self(0)

    def one(self) -> FieldElement:
        return self(1)

    def gen(self) -> FieldElement:
        """The canonical generator zeta of a cyclotomic field."""
        if self.kind != "cyclotomic":
            raise TypeError("prime fields have no canonical generator")
        if self.conductor <= 2:
            return self(1 if self.conductor == 1 else -1)
        nums = [0] * self.degree
        nums[1] = 1
        return FieldElement(self, (tuple(nums), 1))

    def from_coefficients(self, coeffs) -> FieldElement:
        """Cyclotomic element from rational coefficients of 1, zeta, ...; shorter
        lists are zero-padded, longer ones are reduced modulo Phi_N."""
        coeffs = [Fraction(c) for c in coeffs]
        den = math.lcm(*(c.denominator for c in coeffs)) if coeffs else 1
        nums = [int(c * den) for c in coeffs]
        return FieldElement(self, _cyc_normalize(self, nums, den))

    def random_element(self, rng: random.Random) -> FieldElement:
        if self.kind == "prime":
            return self(rng.randrange(self.modulus))
        return self.from_coefficients([rng.randint(-9, 9) for _ in range(self.degree)])

    def random_nonzero(self, rng: random.Random) -> FieldElement:
        while True:
            x = self.random_element(rng)
            if x:
                return x

    def elements(self):
        """All elements of a prime field, in residue order."""
        if self.kind != "prime":
            raise TypeError("only prime fields are enumerable")
        return [FieldElement(self, v) for v in range(self.modulus)]

    def to_json(self) -> dict:
        if self.kind == "prime":
            return {"kind": "prime", "modulus": self.modulus}
        return {"kind": "cyclotomic", "conductor": self.conductor}

    @classmethod
    def from_json(cls, data: dict) -> Field:
        if data.get("kind") == "prime":
            return make_prime_field(int(data["modulus"]))
        if data.get("kind") == "cyclotomic":
            return make_cyclotomic_field(int(data["conductor"]))
        raise ValueError(f"unknown field kind {data.get('kind')!r}")

    def element_from_json(self, data) -> FieldElement:
        if self.kind == "prime":
            if not isinstance(data, int) or not 0 <= data < self.modulus:
                raise ValueError(f"bad residue {data!r} for {self}")
            return FieldElement(self, data)
        if not isinstance(data, list) or len(data) != self.degree:
            raise ValueError(f"expected {self.degree} coefficients, got {data!r}")
        return self.from_coefficients([Fraction(s) for s in data])


@cache
def make_prime_field(p: int) -> Field:
    if p < 2 or not is_prime(p):
        raise NotPrime(p)
    return Field("prime", modulus=p)


@cache
def make_cyclotomic_field(n: int) -> Field:
    if n < 1:
        raise ValueError("conductor must be positive")
    return Field("cyclotomic", conductor=n)


def parse_field(text: str) -> Field:
    """Parse ``prime:P`` or ``cyclotomic:N``."""
    kind, _, arg = text.partition(":")
    try:
        value = int(arg)
    except ValueError:
        raise ValueError(f"bad field specification {text!r}") from None
    if kind == "prime":
        return make_prime_field(value)
    if kind == "cyclotomic":
        return make_cyclotomic_field(value)
    raise ValueError(f"bad field specification {text!r}")


def _cyc_normalize(field: Field, nums: list[int], den: int) -> tuple[tuple[int, ...], int]:
    phi = field.phi
    d = len(phi) - 1
    if len(nums) > d:
        nums = list(nums)
        for i in range(len(nums) - 1, d - 1, -1):
            c = nums[i]
            if c:
                for j in range(d + 1):
                    nums[i - d + j] -= c * phi[j]
        nums = nums[:d]
    elif len(nums) < d:
        nums = list(nums) + [0] * (d - len(nums))
    if den < 0:
        nums = [-c for c in nums]
        den = -den
    g = math.gcd(den, *nums)
    if g > 1:
        nums = [c // g for c in nums]
        den //= g
    if not any(nums):
        den = 1
    return tuple(nums), den


def _solve_rational(matrix: list[list[Fraction]], rhs: list[Fraction]) -> list[Fraction]:
    n = len(matrix)
    aug = [row[:] + [b] for row, b in zip(matrix, rhs)]
    for col in range(n):
        piv = next((r for r in range(col, n) if aug[r][col]), None)
        if piv is None:
            raise DivisionByZero("singular multiplication matrix")
        aug[col], aug[piv] = aug[piv], aug[col]
        inv = 1 / aug[col][col]
        aug[col] = [v * inv for v in aug[col]]
        for r in range(n):
            if r != col and aug[r][col]:
                f = aug[r][col]
                aug[r] = [a - f * b for a, b in zip(aug[r], aug[col])]
    return [aug[r][n] for r in range(n)]


class FieldElement:
    """An exact scalar.  Immutable; hashable; compares equal only within one field."""

    __slots__ = ("field", "_v")

    def __init__(self, field: Field, value):
        self.field = field
        self._v = value

    # -- coercion ---------------------------------------------------------
    def _coerce(self, other) -> FieldElement | None:
        if isinstance(other, FieldElement):
            if other.field != self.field:
                raise MixedFields(f"cannot combine {self.field} and {other.field}")
            return other
        if isinstance(other, (int, Fraction)):
            return self.field(other)
        return None

    # -- arithmetic -------------------------------------------------------
    def __add__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        f = self.field
        if f.kind == "prime":
            return FieldElement(f, (self._v + o._v) % f.modulus)
        (a, da), (b, db) = self._v, o._v
        return FieldElement(f, _cyc_normalize(f, [x * db + y * da for x, y in zip(a, b)], da * db))

    __radd__ = __add__

    def __neg__(self):
        f = self.field
        if f.kind == "prime":
            return FieldElement(f, -self._v % f.modulus)
        a, da = self._v
        return FieldElement(f, (tuple(-x for x in a), da))

    def __sub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return self + (-o)

    def __rsub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return o + (-self)

    def __mul__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        f = self.field
        if f.kind == "prime":
            return FieldElement(f, self._v * o._v % f.modulus)
        (a, da), (b, db) = self._v, o._v
        prod = [0] * (2 * len(a) - 1)
        for i, x in enumerate(a):
            if x:
                for j, y in enumerate(b):
                    if y:
                        prod[i + j] += x * y
        return FieldElement(f, _cyc_normalize(f, prod, da * db))

    __rmul__ = __mul__

    def inverse(self) -> FieldElement:
        f = self.field
        if not self:
            raise DivisionByZero(f"zero has no inverse in {f}")
        if f.kind == "prime":
            return FieldElement(f, pow(self._v, -1, f.modulus))
        a, da = self._v
        d = f.degree
        # column j holds the coefficients of a * zeta^j
        cols = [list(a)]
        for _ in range(d - 1):
            cols.append(_shift_exact(f, cols[-1]))
        matrix = [[Fraction(cols[j][i]) for j in range(d)] for i in range(d)]
        sol = _solve_rational(matrix, [Fraction(1)] + [Fraction(0)] * (d - 1))
        return f.from_coefficients([c * da for c in sol])

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

    def __pow__(self, e: int):
        if not isinstance(e, int):
            return NotImplemented
        if e < 0:
            return self.inverse() ** (-e)
        f = self.field
        if f.kind == "prime":
            return FieldElement(f, pow(self._v, e, f.modulus))
        result, base = f.one(), self
        while e:
            if e & 1:
                result = result * base
            base = base * base
            e >>= 1
        return result

    # -- comparison -------------------------------------------------------
    def __eq__(self, other):
        if isinstance(other, FieldElement):
            if other.field != self.field:
                raise MixedFields(f"cannot compare {self.field} and {other.field}")
            return self._v == other._v
        if isinstance(other, (int, Fraction)):
            return self._v == self.field(other)._v
        return NotImplemented

    def __hash__(self):
        return hash((self.field, self._v))

    def __bool__(self):
        if self.field.kind == "prime":
            return self._v != 0
        return any(self._v[0])

    def is_zero(self) -> bool:
        return not self

    def is_one(self) -> bool:
        return self == 1

    # -- views ------------------------------------------------------------
    @property
    def residue(self) -> int:
        if self.field.kind != "prime":
            raise TypeError("residue is only defined in prime fields")
        return self._v

    def coefficients(self) -> tuple[Fraction, ...]:
        if self.field.kind == "prime":
            return (Fraction(self._v),)
        nums, den = self._v
        return tuple(Fraction(c, den) for c in nums)

    def sort_key(self):
        if self.field.kind == "prime":
            return (self._v,)
        return self.coefficients()

    def multiplicative_order(self, limit: int | None = None) -> int:
        if not self:
            raise DivisionByZero("zero has no multiplicative order")
        limit = limit or (self.field.modulus if self.field.kind == "prime" else 10 ** 4)
        x = self
        for k in range(1, limit + 1):
            if x == 1:
                return k
            x = x * self
        raise ValueError("element has no finite order below the search limit")

    def to_json(self):
        if self.field.kind == "prime":
            return self._v
        return [f"{c.numerator}/{c.denominator}" for c in self.coefficients()]

    def __repr__(self):
        if self.field.kind == "prime":
            return f"{self._v} (mod {self.field.modulus})"
        terms = []
        for i, c in enumerate(self.coefficients()):
            if c:
                terms.append(f"{c}" if i == 0 else f"{c}*z^{i}")
        return " + ".join(terms) or "0"


def _shift_exact(field: Field, nums) -> list[int]:
    # multiply an integer coefficient vector by zeta without gcd reduction
    phi = field.phi
    d = len(phi) - 1
    out = [0] + list(nums)
    c = out[d]
    if c:
        for j in range(d + 1):
            out[j] -= c * phi[j]
    return out[:d]


def find_primitive_root_of_unity(field: Field, order: int) -> FieldElement:
    """Deterministic element of exact multiplicative order ``order``.

    Prime fields: the smallest residue with that order.  Cyclotomic fields:
    ``zeta ** (conductor // order)``.
    """
    if order < 1:
        raise NoSuchRoot(order, field)
    if field.kind == "prime":
        p = field.modulus
        if (p - 1) % order:
            raise NoSuchRoot(order, field)
        if order == 1:
            return field.one()
        qs = prime_factors(order)
        for g in range(2, p):
            if pow(g, order, p) == 1 and all(pow(g, order // q, p) != 1 for q in qs):
                return field(g)
        raise NoSuchRoot(order, field)  # unreachable for prime p
    if field.conductor % order:
        raise NoSuchRoot(order, field)
    return field.gen() ** (field.conductor // order)


def field_arith(a: FieldElement, b: FieldElement | None, op: str):
    """Dispatch table form of the element operators."""
    ops = {
        "add": lambda: a + b,
        "sub": lambda: a - b,
        "mul": lambda: a * b,
        "div": lambda: a / b,
        "neg": lambda: -a,
        "inv": lambda: a.inverse(),
        "eq": lambda: a == b,
    }
    if b is not None and isinstance(b, FieldElement) and b.field != a.field:
        raise MixedFields(f"cannot combine {a.field} and {b.field}")
    return ops[op]()
