"""Modular arithmetic, primality, and the monic integer polynomial domain.

Everything downstream works with a monic polynomial

    f(x) = x^n + a1*x^(n-1) + a2*x^(n-2) + ... + an

stored as the coefficient tuple (a1, ..., an) with the leading 1 implicit.
This sign convention is canonical throughout the package: the recurrence
attached to f is U_i = -(a1*U_{i-1} + ... + an*U_{i-n}).
"""

from __future__ import annotations

import math
import re
from dataclasses import dataclass
from enum import Enum
from typing import Iterator

MODULUS_CAP = 1 << 62  # residues must fit a machine word with headroom for products

# Deterministic Miller-Rabin witnesses: the first 12 primes decide primality
# exactly for all n < 3317044064679887385961981 (> 2^64).
_MR_WITNESSES = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37)

_SMALL_PRIMES = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37)


class ParseError(ValueError):
    """Polynomial text could not be parsed; carries the offending position."""

    def __init__(self, message: str, position: int = -1):
        self.position = position
        if position >= 0:
            message = f"{message} (at position {position})"
        super().__init__(message)


class NotMonic(ParseError):
    """Input polynomial's leading coefficient is not 1."""


class NotInvertible(ArithmeticError):
    """mod_inv was asked for an inverse that does not exist."""


def is_prime(v: int) -> bool:
    """Exact primality test for 0 <= v < 2^64 (deterministic witness set)."""
    if v >= 1 << 64:
        raise ValueError("is_prime supports values below 2^64 only")
    if v < 2:
        return False
    for p in _SMALL_PRIMES:
        if v % p == 0:
            return v == p
    d = v - 1
    s = 0
    while d % 2 == 0:
        d //= 2
        s += 1
    for a in _MR_WITNESSES:
        x = pow(a, d, v)
        if x == 1 or x == v - 1:
            continue
        for _ in range(s - 1):
            x = x * x % v
            if x == v - 1:
                break
        else:
            return False
    return True


def _simple_sieve(limit: int) -> list[int]:
    if limit < 2:
        return []
    sieve = bytearray((limit + 1) * b"\x01")
    sieve[0] = sieve[1] = 0
    for p in range(2, math.isqrt(limit) + 1):
        if sieve[p]:
            start = p * p
            sieve[start : limit + 1 : p] = bytes(len(range(start, limit + 1, p)))
    return [i for i in range(2, limit + 1) if sieve[i]]


# Above this the base-prime sieve gets expensive; fall back to per-candidate
# Miller-Rabin, which stays exact for the whole supported range.
_SIEVE_HI_CAP = 10**12
_SEGMENT = 1 << 16


def primes_in(lo: int, hi: int) -> Iterator[int]:
    """Yield the primes in [lo, hi] in ascending order."""
    if lo > hi:
        raise ValueError("range requires lo <= hi")
    lo = max(lo, 2)
    if lo > hi:
        return
    if hi > _SIEVE_HI_CAP:
        if lo <= 2 <= hi:
            yield 2
        start = lo + (lo % 2 == 0) if lo > 2 else 3
        for v in range(start, hi + 1, 2):
            if is_prime(v):
                yield v
        return
    base = _simple_sieve(math.isqrt(hi))
    for seg_lo in range(lo, hi + 1, _SEGMENT):
        seg_hi = min(seg_lo + _SEGMENT - 1, hi)
        size = seg_hi - seg_lo + 1
        mask = bytearray(size * b"\x01")
        for p in base:
            start = max(p * p, ((seg_lo + p - 1) // p) * p)
            if start > seg_hi:
                continue
            mask[start - seg_lo : size : p] = bytes(len(range(start, seg_hi + 1, p)))
        for i in range(size):
            if mask[i]:
                yield seg_lo + i


class Modulus:
    """A validated modulus m with 2 <= m < 2^62, primality decided up front."""

    __slots__ = ("value", "is_prime")

    def __init__(self, value: int):
        if not 2 <= value < MODULUS_CAP:
            raise ValueError(f"modulus must satisfy 2 <= m < 2^62, got {value}")
        self.value = value
        self.is_prime = is_prime(value)

    def __int__(self) -> int:
        return self.value

    def __eq__(self, other: object) -> bool:
        if isinstance(other, Modulus):
            return self.value == other.value
        if isinstance(other, int):
            return self.value == other
        return NotImplemented

    def __hash__(self) -> int:
        return hash(self.value)

    def __repr__(self) -> str:
        return f"Modulus({self.value})"


def _mod_value(m: "Modulus | int") -> int:
    v = int(m)
    if not 2 <= v < MODULUS_CAP:
        raise ValueError(f"modulus must satisfy 2 <= m < 2^62, got {v}")
    return v


class Residue:
    """An integer fully reduced mod m; arithmetic requires matching moduli."""

    __slots__ = ("value", "modulus")

    def __init__(self, value: int, modulus: Modulus | int):
        self.modulus = modulus if isinstance(modulus, Modulus) else Modulus(modulus)
        self.value = value % self.modulus.value

    def _coerce(self, other: "Residue | int") -> int:
        if isinstance(other, Residue):
            if other.modulus.value != self.modulus.value:
                raise ValueError("residues have different moduli")
            return other.value
        return other % self.modulus.value

    def __add__(self, other: "Residue | int") -> "Residue":
        return Residue(self.value + self._coerce(other), self.modulus)

    __radd__ = __add__

    def __sub__(self, other: "Residue | int") -> "Residue":
        return Residue(self.value - self._coerce(other), self.modulus)

    def __rsub__(self, other: "Residue | int") -> "Residue":
        return Residue(self._coerce(other) - self.value, self.modulus)

    def __mul__(self, other: "Residue | int") -> "Residue":
        return Residue(self.value * self._coerce(other), self.modulus)

    __rmul__ = __mul__

    def __neg__(self) -> "Residue":
        return Residue(-self.value, self.modulus)

    def __pow__(self, exp: int) -> "Residue":
        return Residue(mod_pow(self.value, exp, self.modulus), self.modulus)

    def inverse(self) -> "Residue":
        return Residue(mod_inv(self.value, self.modulus), self.modulus)

    def __eq__(self, other: object) -> bool:
        if isinstance(other, Residue):
            return (self.modulus.value, self.value) == (other.modulus.value, other.value)
        if isinstance(other, int):
            return self.value == other % self.modulus.value
        return NotImplemented

    def __hash__(self) -> int:
        return hash((self.value, self.modulus.value))

    def __int__(self) -> int:
        return self.value

    def __repr__(self) -> str:
        return f"Residue({self.value} mod {self.modulus.value})"


def mod_pow(base: "Residue | int", exp: int, m: Modulus | int) -> int:
    """base^exp reduced mod m; exp = 0 yields 1."""
    if exp < 0:
        raise ValueError("exponent must be non-negative")
    mv = _mod_value(m)
    return pow(int(base), exp, mv)


def mod_inv(a: "Residue | int", m: Modulus | int) -> int:
    """The b with a*b == 1 (mod m); raises NotInvertible when gcd(a, m) > 1."""
    mv = _mod_value(m)
    try:
        return pow(int(a), -1, mv)
    except ValueError:
        raise NotInvertible(f"{int(a)} has no inverse mod {mv}") from None


class QrClass(Enum):
    RESIDUE = "residue"
    NONRESIDUE = "nonresidue"
    ZERO = "zero"


def euler_qr(a: int, p: int) -> QrClass:
    """Euler's criterion: classify a as QR, non-QR, or divisible by odd prime p."""
    if p < 3 or p % 2 == 0:
        raise ValueError("euler_qr requires an odd prime")
    e = pow(a % p, (p - 1) // 2, p)
    if e == 0:
        return QrClass.ZERO
    return QrClass.RESIDUE if e == 1 else QrClass.NONRESIDUE


@dataclass(frozen=True)
class MonicIntPoly:
    """f(x) = x^n + a1*x^(n-1) + ... + an, held as coeffs = (a1, ..., an)."""

    coeffs: tuple[int, ...]

    def __post_init__(self):
        if len(self.coeffs) < 1:
            raise ValueError("polynomial degree must be at least 1")
        object.__setattr__(self, "coeffs", tuple(int(a) for a in self.coeffs))

    @property
    def degree(self) -> int:
        return len(self.coeffs)

    def render(self) -> str:
        """Canonical text form, e.g. 'x^3 - x^2 - x + 2'."""
        n = self.degree
        parts = [_term_text(1, n)]
        for i, a in enumerate(self.coeffs, start=1):
            if a == 0:
                continue
            parts.append("- " if a < 0 else "+ ")
            parts.append(_term_text(abs(a), n - i))
        return " ".join("".join(parts).split())

    def __str__(self) -> str:
        return self.render()


def _term_text(coeff: int, power: int) -> str:
    if power == 0:
        return str(coeff)
    x = "x" if power == 1 else f"x^{power}"
    return x if coeff == 1 else f"{coeff}{x}"


_TOKEN = re.compile(r"(?P<int>\d+)|(?P<x>x)|(?P<caret>\^)|(?P<op>[+-])|(?P<bad>\S)")


def parse_poly(text: str) -> MonicIntPoly:
    """Parse 'x^3 - x^2 - x + 2' style text into a MonicIntPoly.

    Grammar: poly := term (('+'|'-') term)*, term := int | [int] 'x' ['^' uint].
    Whitespace is insignificant. The highest power must carry coefficient 1.
    """
    tokens = []
    for mo in _TOKEN.finditer(text):
        kind = mo.lastgroup
        if kind == "bad":
            raise ParseError(f"unexpected character {mo.group()!r}", mo.start())
        tokens.append((kind, mo.group(), mo.start()))
    if not tokens:
        raise ParseError("empty polynomial", 0)

    powers: dict[int, int] = {}
    pos = 0

    def peek(kind):
        return pos < len(tokens) and tokens[pos][0] == kind

    first = True
    while pos < len(tokens):
        sign = 1
        if peek("op"):
            sign = -1 if tokens[pos][1] == "-" else 1
            pos += 1
        elif not first:
            raise ParseError("expected '+' or '-' between terms", tokens[pos][2])
        first = False
        if pos >= len(tokens):
            raise ParseError("dangling operator", tokens[-1][2])

        coeff = 1
        have_number = False
        if peek("int"):
            coeff = int(tokens[pos][1])
            have_number = True
            pos += 1
        if peek("x"):
            pos += 1
            power = 1
            if peek("caret"):
                caret_at = tokens[pos][2]
                pos += 1
                if not peek("int"):
                    raise ParseError("expected exponent after '^'", caret_at)
                power = int(tokens[pos][1])
                pos += 1
        elif have_number:
            power = 0
        else:
            raise ParseError("expected a term", tokens[pos][2])
        powers[power] = powers.get(power, 0) + sign * coeff

    degree = max(powers)
    if degree < 1:
        raise ParseError("polynomial must contain x", 0)
    if powers[degree] != 1:
        raise NotMonic(f"leading coefficient must be 1, got {powers[degree]}")
    return MonicIntPoly(tuple(powers.get(degree - i, 0) for i in range(1, degree + 1)))


def poly_from_coeffs(text: str) -> MonicIntPoly:
    """Build a MonicIntPoly from the comma-separated list 'a1,a2,...,an'."""
    items = [s.strip() for s in text.split(",")]
    if items == [""]:
        raise ParseError("empty coefficient list", 0)
    coeffs = []
    for i, s in enumerate(items):
        try:
            coeffs.append(int(s))
        except ValueError:
            raise ParseError(f"bad coefficient {s!r}", i) from None
    return MonicIntPoly(tuple(coeffs))


def eval_mod(f: MonicIntPoly, x: "Residue | int", m: Modulus | int) -> int:
    """Horner evaluation of f at x, reduced mod m."""
    mv = _mod_value(m)
    acc = 1 % mv
    xv = int(x) % mv
    for a in f.coeffs:
        acc = (acc * xv + a) % mv
    return acc
