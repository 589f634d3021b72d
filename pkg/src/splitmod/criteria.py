"""Splitting criteria for f(x) = 0 (mod p) having deg(f) distinct roots.

The workhorse test: f of degree n splits into n distinct linear factors mod p
(with p >= n+2 and p not dividing the constant term) if and only if

    U_{p-n} = ... = U_{p-2} = 0  and  U_{p-1} = 1   (mod p).

An equivalent V-row test, the quadratic-discriminant specialisation, two
always-true congruence identities, and a rank/minor property of a circulant
coefficient matrix are implemented alongside, each with a brute-force oracle.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from itertools import product

import numpy as np

from .core import MonicIntPoly, QrClass, euler_qr, is_prime, primes_in
from .sequences import _u_state_mod, u_window_mod, v_row

ORACLE_PRIME_CAP = 10**6  # brute force walks all of (0, p)
KONIG_PRIME_CAP = 101  # the matrix A is dense with (p-1)^2 entries


class NotApplicable(ValueError):
    """The criterion's hypotheses exclude this (f, p) pair."""

    def __init__(self, reason: str):
        self.reason = reason
        super().__init__(reason)


class CounterexampleFound(AssertionError):
    """A sweep found criterion and oracle disagreeing: an implementation bug."""

    def __init__(self, f: MonicIntPoly, p: int, criterion: bool, root_count: int):
        self.f, self.p, self.criterion, self.root_count = f, p, criterion, root_count
        super().__init__(
            f"criterion={criterion} but {root_count} roots for {f} at p={p}"
        )


@dataclass(frozen=True)
class SplitReport:
    """Outcome of the U-series criterion at one prime."""

    p: int
    applicable: bool
    reason: str | None = None  # set when not applicable
    window: tuple[int, ...] | None = None  # (U_{p-n}, ..., U_{p-1}) mod p
    splits: bool | None = None
    oracle_roots: tuple[int, ...] | None = None
    agreement: bool | None = None
    note: str | None = None


@dataclass(frozen=True)
class KonigCheck:
    p: int
    rank_A: int
    det_B1_mod_p: int
    bound_ok: bool  # rank_A <= p - n - 1


@dataclass(frozen=True)
class QuadraticEquivalence:
    p: int
    splits: bool
    qr_class: QrClass  # of the discriminant a1^2 - 4*a2
    p_divides_a2: bool
    agree: bool


@dataclass(frozen=True)
class SweepReport:
    pairs_checked: int
    splits_found: int
    split_pairs: tuple[tuple[MonicIntPoly, int], ...]


def _require_prime(p: int):
    if not is_prime(p):
        raise ValueError(f"{p} is not prime")


def splits_by_useries(f: MonicIntPoly, p: int, oracle: bool = False) -> SplitReport:
    """Decide splitting of f mod p from the window (U_{p-n}, ..., U_{p-1}).

    Inapplicable pairs (p < n+2, or p | a_n) are reported, not raised, so
    scans can record them without poisoning density counts.
    """
    _require_prime(p)
    n = f.degree
    if p < n + 2:
        return SplitReport(p=p, applicable=False, reason=f"p too small (need p >= {n + 2})")
    if f.coeffs[-1] % p == 0:
        return SplitReport(p=p, applicable=False, reason="p divides constant term")
    state = _u_state_mod(f, p - 1, p)  # (U_{p-1}, ..., U_{p-n})
    window = tuple(reversed(state))
    splits = all(w == 0 for w in window[:-1]) and window[-1] == 1 % p
    note = None
    if n == 1:
        note = "degree-1 criterion is an extension beyond the theorem's n >= 2"
    roots = agreement = None
    if oracle:
        roots = root_count_bruteforce(f, p)
        agreement = splits == (len(roots) == n)
    return SplitReport(
        p=p,
        applicable=True,
        window=window,
        splits=splits,
        oracle_roots=roots,
        agreement=agreement,
        note=note,
    )


def root_count_bruteforce(f: MonicIntPoly, p: int) -> tuple[int, ...]:
    """All distinct x in (0, p) with f(x) = 0 mod p, by exhaustive evaluation."""
    if p > ORACLE_PRIME_CAP:
        raise ValueError(f"brute-force oracle capped at p <= {ORACLE_PRIME_CAP}")
    coeffs = [a % p for a in f.coeffs]
    roots = []
    for x in range(1, p):
        acc = 1
        for a in coeffs:
            acc = (acc * x + a) % p
        if acc == 0:
            roots.append(x)
    return tuple(roots)


def splits_by_vseries(f: MonicIntPoly, p: int) -> bool:
    """The V-row form of the criterion: V_{p,i} = 0 mod p for i = 2..n.

    (V_{1,i} vanishes for i >= 2, so congruence to V_{1,i} is congruence to 0.)
    Requires p not dividing any coefficient a_1..a_n.
    """
    _require_prime(p)
    n = f.degree
    if p < n + 2:
        raise NotApplicable(f"p too small (need p >= {n + 2})")
    for idx, a in enumerate(f.coeffs, start=1):
        if a % p == 0:
            raise NotApplicable(f"p divides a_{idx}")
    row = v_row(f, p, p)
    return all(e == 0 for e in row.entries[1:])


def quadratic_equivalence(f: MonicIntPoly, p: int) -> QuadraticEquivalence:
    """Both sides of the n = 2 equivalence: window condition vs discriminant QR.

    The window condition (U_{p-2} = 0, U_{p-1} = 1) is evaluated raw, without
    the applicability gate: the discriminant side already encodes p | a_2.
    """
    if f.degree != 2:
        raise ValueError("quadratic_equivalence requires degree 2")
    _require_prime(p)
    if p < 5:
        raise ValueError("need p >= n + 2 = 4, so p >= 5")
    a1, a2 = f.coeffs
    state = _u_state_mod(f, p - 1, p)  # (U_{p-1}, U_{p-2})
    splits = state[1] == 0 and state[0] == 1
    qr = euler_qr(a1 * a1 - 4 * a2, p)
    divides = a2 % p == 0
    agree = splits == (qr is QrClass.RESIDUE and not divides)
    return QuadraticEquivalence(p=p, splits=splits, qr_class=qr, p_divides_a2=divides, agree=agree)


def euler_power_check(f: MonicIntPoly, p: int) -> bool:
    """Check U_{p-1} = (a1^2 - 4*a2)^((p-1)/2) mod p; holds for every valid input."""
    if f.degree != 2:
        raise ValueError("euler_power_check requires degree 2")
    _require_prime(p)
    if p == 2:
        raise ValueError("p must be odd")
    a1, a2 = f.coeffs
    lhs = _u_state_mod(f, p - 1, p)[0]
    rhs = pow(a1 * a1 - 4 * a2, (p - 1) // 2, p)
    return lhs == rhs


def thm29_residual(f: MonicIntPoly, p: int) -> int:
    """a1*(U_{p-1} - 1) + 2*a2*U_{p-2} + ... + n*an*U_{p-n} mod p; always 0."""
    _require_prime(p)
    n = f.degree
    if p <= n:
        raise ValueError("requires p > degree")
    state = _u_state_mod(f, p - 1, p)  # state[j-1] = U_{p-j}
    total = -f.coeffs[0]
    for j in range(1, n + 1):
        total += j * f.coeffs[j - 1] * state[j - 1]
    return total % p


def thm28_check(f: MonicIntPoly, p: int) -> bool:
    """Power-sum congruence V_{p,1} = V_{1,1} mod p; always true."""
    _require_prime(p)
    if p <= f.degree:
        raise ValueError("requires p > degree")
    row = v_row(f, p, p)
    return row.entries[0] == (-f.coeffs[0]) % p


# --- König-theorem machinery -------------------------------------------------
#
# A is the (p-1) x (p-1) matrix whose rows are the coefficient vectors of
# x^j * f(x) mod (x^(p-1) - 1), j = 0..p-2, in the basis (x^(p-2), ..., x^0).
# Row order does not affect rank; rows are built in ascending j.
#
# B1 is the (p-n) x (p-n) minor singled out in the source display.  Matching
# its first rows (0 ... 0 1 a1 / 0 ... 1 a1 a2 / ...) and last rows
# (1 a1 ... an 0 ... / a1 ... an 0 ...) forces the cyclic row order
# j = p-n, ..., p-2, 0, 1, ..., p-2n, i.e. row r encodes the relation
# y_r + a1*y_{r-1} + ... truncated at y_0 (rows r < n wrap and lose their
# leading coefficients to the deleted first n-1 columns).


def _matrix_A(f: MonicIntPoly, p: int) -> np.ndarray:
    n = f.degree
    size = p - 1
    A = np.zeros((size, size), dtype=np.int64)
    coeffs = (1,) + f.coeffs
    for j in range(size):
        for t, a in enumerate(coeffs):
            power = (n + j - t) % size
            A[j, size - 1 - power] += a % p
    return A % p


def _matrix_B1(f: MonicIntPoly, p: int) -> np.ndarray:
    n = f.degree
    q = p - n
    B = np.zeros((q, q), dtype=np.int64)
    coeffs = (1,) + f.coeffs
    for row in range(q):
        r = row + 1
        for t, a in enumerate(coeffs):
            col = q - 1 - r + t
            if 0 <= col < q:
                B[row, col] = a % p
    return B


def _echelon_rank_det(mat: np.ndarray, p: int) -> tuple[int, int]:
    """Row-reduce mod p; returns (rank, det mod p) (det meaningful iff square)."""
    A = mat.copy() % p
    rows, cols = A.shape
    rank = 0
    det = 1
    for c in range(cols):
        if rank == rows:
            break
        pivots = np.nonzero(A[rank:, c])[0]
        if pivots.size == 0:
            det = 0
            continue
        r = rank + int(pivots[0])
        if r != rank:
            A[[rank, r]] = A[[r, rank]]
            det = -det
        pivot = int(A[rank, c])
        det = det * pivot % p
        inv = pow(pivot, -1, p)
        A[rank] = A[rank] * inv % p
        below = A[rank + 1 :, c]
        if below.any():
            A[rank + 1 :] = (A[rank + 1 :] - np.outer(below, A[rank])) % p
        rank += 1
    if rank < min(rows, cols):
        det = 0
    return rank, det % p


def konig_check(f: MonicIntPoly, p: int) -> KonigCheck:
    """Rank of A over F_p and det(B1) mod p.

    When f splits mod p, rank(A) <= p-n-1 and det(B1) = 0; the implication
    is one-directional, so non-splitting pairs only record the rank.
    """
    _require_prime(p)
    n = f.degree
    if not n + 2 <= p <= KONIG_PRIME_CAP:
        raise NotApplicable(f"konig_check requires {n + 2} <= p <= {KONIG_PRIME_CAP}")
    rank, _ = _echelon_rank_det(_matrix_A(f, p), p)
    _, det_b1 = _echelon_rank_det(_matrix_B1(f, p), p)
    return KonigCheck(p=p, rank_A=rank, det_B1_mod_p=det_b1, bound_ok=rank <= p - n - 1)


def galois_sanity_sweep(
    n_max: int = 3, coeff_bound: int = 3, p_max: int = 100
) -> SweepReport:
    """Criterion vs brute force over every small (f, p); raises on any mismatch.

    Covers degrees 1..n_max, all coefficient tuples in [-coeff_bound, coeff_bound],
    and every applicable prime p <= p_max.
    """
    primes = list(primes_in(2, p_max))
    checked = 0
    split_pairs = []
    span = range(-coeff_bound, coeff_bound + 1)
    for n in range(1, n_max + 1):
        for coeffs in product(span, repeat=n):
            f = MonicIntPoly(coeffs)
            for p in primes:
                rep = splits_by_useries(f, p)
                if not rep.applicable:
                    continue
                roots = root_count_bruteforce(f, p)
                if rep.splits != (len(roots) == n):
                    raise CounterexampleFound(f, p, rep.splits, len(roots))
                checked += 1
                if rep.splits:
                    split_pairs.append((f, p))
    return SweepReport(
        pairs_checked=checked,
        splits_found=len(split_pairs),
        split_pairs=tuple(split_pairs),
    )
