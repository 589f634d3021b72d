"""The U series, its partial sums, the V rows, and the binomial T matrix.

The U series of a monic polynomial f(x) = x^n + a1*x^(n-1) + ... + an is

    U_0 = 1,  U_i = 0 for i < 0,  U_i = -(a1*U_{i-1} + ... + an*U_{i-n}).

With f = x^2 - x - 1 this is the Fibonacci sequence shifted by one
(U_i = F_{i+1}); the V_{i,1} row entries are then the Lucas numbers.
U_i also equals the complete homogeneous symmetric sum of degree i in the
roots of f, and V_{i,h} is the part of that sum using exactly h distinct
roots; both facts are exploited here as independent enumeration oracles.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from itertools import combinations
from typing import Iterator, Sequence

from .core import Modulus, MonicIntPoly, _mod_value

ORACLE_BUDGET = 10**7  # max exponent tuples an enumeration oracle may visit


class DimensionMismatch(ValueError):
    """Vector length does not match the matrix dimension."""


class BudgetExceeded(RuntimeError):
    """An enumeration oracle was asked to visit too many exponent tuples."""


@dataclass(frozen=True)
class SequenceWindow:
    """A contiguous run of U values starting at index `start`.

    Values are exact integers when `modulus` is None, residues otherwise.
    """

    start: int
    values: tuple[int, ...]
    modulus: int | None = None

    def value_at(self, index: int) -> int:
        if not self.start <= index < self.start + len(self.values):
            raise IndexError(f"index {index} outside window")
        return self.values[index - self.start]

    def __iter__(self):
        return iter(self.values)

    def __len__(self) -> int:
        return len(self.values)


@dataclass(frozen=True)
class VRow:
    """The vector (V_{i,1}, ..., V_{i,n}) for a fixed index i."""

    i: int
    entries: tuple[int, ...]
    modulus: int | None = None


@dataclass(frozen=True)
class TMatrix:
    """Upper-triangular involution with entry (a,b) = (-1)^a * C(b,a), 1-indexed."""

    n: int
    rows: tuple[tuple[int, ...], ...]


@dataclass(frozen=True)
class RootSet:
    """Roots of f, exact integers or residues mod `modulus`."""

    roots: tuple[int, ...]
    modulus: int | None = None


def u_series_exact(f: MonicIntPoly, count: int) -> SequenceWindow:
    """Exact U_0..U_count by direct iteration of the recurrence."""
    if count < 0:
        raise ValueError("count must be non-negative")
    a = f.coeffs
    n = f.degree
    values = [1]
    for i in range(1, count + 1):
        acc = 0
        for j in range(1, n + 1):
            if i - j < 0:
                break
            acc += a[j - 1] * values[i - j]
        values.append(-acc)
    return SequenceWindow(start=0, values=tuple(values))


def _companion_rows(f: MonicIntPoly, m: int) -> list[list[int]]:
    n = f.degree
    rows = [[(-a) % m for a in f.coeffs]]
    for k in range(n - 1):
        rows.append([1 if c == k else 0 for c in range(n)])
    return rows


def _mat_mul(x: list[list[int]], y: list[list[int]], m: int) -> list[list[int]]:
    n = len(x)
    cols = list(zip(*y))
    return [[sum(xr[k] * yc[k] for k in range(n)) % m for yc in cols] for xr in x]


def _mat_pow(mat: list[list[int]], e: int, m: int) -> list[list[int]]:
    n = len(mat)
    result = [[1 % m if i == j else 0 for j in range(n)] for i in range(n)]
    base = mat
    while e:
        if e & 1:
            result = _mat_mul(result, base, m)
        base = _mat_mul(base, base, m)
        e >>= 1
    return result


def _u_state_mod(f: MonicIntPoly, i: int, m: int) -> list[int]:
    """State vector (U_i, U_{i-1}, ..., U_{i-n+1}) mod m for i >= 0.

    Companion-matrix exponentiation: O(n^3 log i) modular multiplications.
    """
    power = _mat_pow(_companion_rows(f, m), i, m)
    return [row[0] for row in power]  # power @ (1, 0, ..., 0)


def u_at_mod(f: MonicIntPoly, i: int, m: Modulus | int) -> int:
    """U_i mod m via the companion-matrix jump; agrees with direct iteration."""
    if i < 0:
        return 0
    return _u_state_mod(f, i, _mod_value(m))[0]


def u_window_mod(f: MonicIntPoly, start: int, length: int, m: Modulus | int) -> SequenceWindow:
    """Residues U_start..U_{start+length-1} mod m.

    The window is seeded with one companion-matrix jump, then iterated.
    """
    if length < 1:
        raise ValueError("window length must be at least 1")
    mv = _mod_value(m)
    a = f.coeffs
    n = f.degree
    end = start + length - 1
    values = [0] * max(0, min(end + 1, 0) - start)  # indices < 0 are all zero
    if end >= 0:
        first = max(start, 0)
        state = _u_state_mod(f, first, mv)
        values.append(state[0])
        for _ in range(first + 1, end + 1):
            nxt = -sum(a[j] * state[j] for j in range(n)) % mv
            state = [nxt] + state[:-1]
            values.append(nxt)
    return SequenceWindow(start=start, values=tuple(values), modulus=mv)


def partial_sum_U(f: MonicIntPoly, j: int, idx: int) -> int:
    """The tail sum a_j*U_{idx-j} + a_{j+1}*U_{idx-j-1} + ... + a_n*U_{idx-n}, exact.

    Satisfies partial_sum_U(f, n, idx) = a_n*U_{idx-n} and
    partial_sum_U(f, j+1, idx) + a_j*U_{idx-j} = partial_sum_U(f, j, idx);
    at j = 1 it collapses to -U_idx by the recurrence.
    """
    n = f.degree
    if not 1 <= j <= n:
        raise ValueError("need 1 <= j <= degree")
    top = idx - j
    series = u_series_exact(f, top).values if top >= 0 else ()
    total = 0
    for t in range(j, n + 1):
        k = idx - t
        if k >= 0:
            total += f.coeffs[t - 1] * series[k]
    return total


def t_matrix(n: int) -> TMatrix:
    """The n-by-n signed binomial matrix; an involution whose columns sum to -1."""
    if not 1 <= n <= 64:
        raise ValueError("t_matrix supports 1 <= n <= 64")
    sign = [(-1) ** a for a in range(1, n + 1)]
    rows = tuple(
        tuple(sign[a - 1] * math.comb(b, a) if a <= b else 0 for b in range(1, n + 1))
        for a in range(1, n + 1)
    )
    return TMatrix(n=n, rows=rows)


def t_apply(t: TMatrix, v: Sequence[int]) -> tuple[int, ...]:
    """Exact matrix-vector product; applying twice gives back v."""
    if len(v) != t.n:
        raise DimensionMismatch(f"expected length {t.n}, got {len(v)}")
    return tuple(sum(row[k] * v[k] for k in range(t.n)) for row in t.rows)


def _u_values_ending_at(f: MonicIntPoly, i: int, m: int | None) -> list[int]:
    """U_{i-n}..U_{i-1} (n values), exact or mod m; negative indices are 0."""
    n = f.degree
    if m is not None:
        return list(u_window_mod(f, i - n, n, m).values)
    series = u_series_exact(f, max(i - 1, 0)).values
    return [series[k] if k >= 0 else 0 for k in range(i - n, i)]


def v_row(f: MonicIntPoly, i: int, m: Modulus | int | None = None) -> VRow:
    """(V_{i,1}, ..., V_{i,n}) from a U window via the closed binomial formula.

    V_{i,j} = (-1)^j * sum_{t=j..n} C(t,j) * a_t * U_{i-t}.
    """
    if i < 1:
        raise ValueError("v_row requires i >= 1")
    mv = _mod_value(m) if m is not None else None
    n = f.degree
    window = _u_values_ending_at(f, i, mv)  # window[k] = U_{i-n+k}
    entries = []
    for j in range(1, n + 1):
        acc = 0
        for t in range(j, n + 1):
            acc += math.comb(t, j) * f.coeffs[t - 1] * window[n - t]
        val = -acc if j % 2 else acc
        entries.append(val % mv if mv is not None else val)
    return VRow(i=i, entries=tuple(entries), modulus=mv)


def _compositions(total: int, parts: int) -> Iterator[tuple[int, ...]]:
    """All tuples of `parts` non-negative integers summing to `total`."""
    if parts == 1:
        yield (total,)
        return
    for head in range(total + 1):
        for rest in _compositions(total - head, parts - 1):
            yield (head,) + rest


def _monomial(roots: Sequence[int], exps: Sequence[int], m: int | None) -> int:
    acc = 1
    for r, e in zip(roots, exps):
        if e:
            acc *= pow(r, e, m) if m is not None else r**e
    return acc % m if m is not None else acc


def hsym_oracle(roots: RootSet, i: int, budget: int = ORACLE_BUDGET) -> int:
    """Complete homogeneous symmetric sum of degree i in the roots, by enumeration.

    Independent oracle for U_i: every exponent tuple with sum i is visited.
    """
    if i < 0:
        raise ValueError("i must be non-negative")
    n = len(roots.roots)
    if math.comb(i + n - 1, n - 1) > budget:
        raise BudgetExceeded(f"{math.comb(i + n - 1, n - 1)} tuples exceed budget {budget}")
    m = roots.modulus
    total = sum(_monomial(roots.roots, e, m) for e in _compositions(i, n))
    return total % m if m is not None else total


def v_oracle(roots: RootSet, i: int, h: int, budget: int = ORACLE_BUDGET) -> int:
    """The V_{i,h} sum by enumeration: exactly h of the exponents are non-zero."""
    n = len(roots.roots)
    if not 1 <= h <= n:
        raise ValueError("need 1 <= h <= number of roots")
    if i < h:
        return 0 if roots.modulus is None else 0 % roots.modulus
    if math.comb(n, h) * math.comb(i - 1, h - 1) > budget:
        raise BudgetExceeded("enumeration exceeds budget")
    m = roots.modulus
    total = 0
    for support in combinations(range(n), h):
        chosen = [roots.roots[k] for k in support]
        # positive compositions of i into h parts
        for e in _compositions(i - h, h):
            total += _monomial(chosen, [x + 1 for x in e], m)
    return total % m if m is not None else total
