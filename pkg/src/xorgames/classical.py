"""Classical strategies, refutations, and exact classical values.

The classical side of an XOR game is pure GF(2) linear algebra: a
deterministic strategy is a 0/1 answer vector, it wins everything iff
A eta = s_hat over GF(2), and exactly one of {perfect strategy, classical
refutation} exists. The exact value comes from enumerating the achievable
output set, which is the GF(2) column space of A (2^sigma2 vectors), far
smaller than the 2^kn strategy space.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

from .errors import GuardExceededError
from .games import Game
from .linalg import F2Matrix, f2_solve

Mask = int  # bit-packed GF(2) vector


@dataclass(frozen=True)
class ClassicalStrategy:
    """Answer bits, entry (a-1)*n + (j-1) = player a's bit on question j."""

    bits: tuple[int, ...]


@dataclass(frozen=True)
class ClassicalRefutation:
    """Clause subset y with A^T y = 0 and s_hat . y = 1 over GF(2)."""

    y: tuple[int, ...]


def _packed_rows(game: Game) -> list[Mask]:
    """Rows of the game matrix as kn-bit masks."""
    n = game.n
    rows = []
    for c in game.clauses:
        acc = 0
        for a, q in enumerate(c.query):
            acc |= 1 << (a * n + (q - 1))
        rows.append(acc)
    return rows


def _s_hat(game: Game) -> list[int]:
    return [0 if c.sign == 1 else 1 for c in game.clauses]


def classical_value1(game: Game) -> ClassicalStrategy | None:
    """A perfect deterministic strategy, or None when the value is < 1."""
    mat = F2Matrix(tuple(_packed_rows(game)), game.k * game.n)
    x = f2_solve(mat, _s_hat(game))
    return None if x is None else ClassicalStrategy(tuple(x))


def classical_refutation(game: Game) -> ClassicalRefutation | None:
    """Clause subset certifying value < 1, or None when a perfect strategy exists."""
    kn = game.k * game.n
    rows = _packed_rows(game)
    # columns of A as m-bit masks, stacked with s_hat as one extra row
    cols = []
    for j in range(kn):
        acc = 0
        for i, row in enumerate(rows):
            if (row >> j) & 1:
                acc |= 1 << i
        cols.append(acc)
    s_mask = 0
    for i, bit in enumerate(_s_hat(game)):
        if bit:
            s_mask |= 1 << i
    mat = F2Matrix(tuple(cols + [s_mask]), game.m)
    y = f2_solve(mat, [0] * kn + [1])
    return None if y is None else ClassicalRefutation(tuple(y))


def classical_strategy_value(game: Game, strategy: ClassicalStrategy) -> Fraction:
    """Fraction of clauses a deterministic strategy satisfies."""
    bits = strategy.bits
    if len(bits) != game.k * game.n:
        raise ValueError(f"strategy length {len(bits)} != kn = {game.k * game.n}")
    n = game.n
    hits = 0
    for c in game.clauses:
        parity = 0
        for a, q in enumerate(c.query):
            parity ^= bits[a * n + (q - 1)] & 1
        if parity == (0 if c.sign == 1 else 1):
            hits += 1
    return Fraction(hits, game.m)


def _column_space_basis(game: Game) -> tuple[list[Mask], list[int]]:
    """Echelon basis of the GF(2) column space of A, as m-bit masks.

    Returns (basis, pivot positions); each basis vector's lowest set bit is
    its pivot and pivots are distinct.
    """
    kn = game.k * game.n
    rows = _packed_rows(game)
    cols = []
    for j in range(kn):
        acc = 0
        for i, row in enumerate(rows):
            if (row >> j) & 1:
                acc |= 1 << i
        cols.append(acc)
    basis: list[Mask] = []
    pivots: list[int] = []
    for vec in cols:
        for b, p in zip(basis, pivots):
            if (vec >> p) & 1:
                vec ^= b
        if vec:
            p = (vec & -vec).bit_length() - 1
            # keep echelon: eliminate p from existing basis vectors
            for idx in range(len(basis)):
                if (basis[idx] >> p) & 1:
                    basis[idx] ^= vec
            basis.append(vec)
            pivots.append(p)
    order = sorted(range(len(basis)), key=lambda i: pivots[i])
    return [basis[i] for i in order], sorted(pivots)


def sigma2(game: Game) -> int:
    """GF(2) rank of the game matrix; the achievable output set has size 2^sigma2."""
    basis, _ = _column_space_basis(game)
    return len(basis)


def _enumerate_span(basis: list[Mask]) -> list[Mask]:
    """All 2^r vectors in the span (Gray-code walk)."""
    out = [0]
    cur = 0
    for i in range(1, 1 << len(basis)):
        cur ^= basis[(i & -i).bit_length() - 1]
        out.append(cur)
    return out


def classical_value_exact(game: Game) -> Fraction:
    """Exact classical value via achievable-output enumeration.

    Guarded to sigma2 <= 24; larger ranks raise rather than approximate.
    """
    basis, _ = _column_space_basis(game)
    if len(basis) > 24:
        raise GuardExceededError(
            f"classical_value_exact guard: sigma2 = {len(basis)} > 24"
        )
    s_mask = 0
    for i, bit in enumerate(_s_hat(game)):
        if bit:
            s_mask |= 1 << i
    best = min((y ^ s_mask).bit_count() for y in _enumerate_span(basis))
    return Fraction(game.m - best, game.m)


def adversarial_signs(a: list[list[int]]) -> tuple[list[int], Fraction]:
    """Sign vector maximising Hamming distance to the achievable output set.

    Returns (s_hat, exact classical value of the resulting game). Ties are
    broken by the lexicographically smallest s_hat (position 1 most
    significant). Guarded to sigma2 <= 24 and m - sigma2 <= 24.
    """
    m = len(a)
    kn = len(a[0]) if a else 0
    cols = []
    for j in range(kn):
        acc = 0
        for i in range(m):
            if a[i][j] & 1:
                acc |= 1 << i
        cols.append(acc)
    basis: list[Mask] = []
    pivots: list[int] = []
    for vec in cols:
        for b, p in zip(basis, pivots):
            if (vec >> p) & 1:
                vec ^= b
        if vec:
            basis.append(vec)
            pivots.append((vec & -vec).bit_length() - 1)
    r = len(basis)
    if r > 24:
        raise GuardExceededError(f"adversarial_signs guard: sigma2 = {r} > 24")
    if m - r > 24:
        raise GuardExceededError(f"adversarial_signs guard: m - sigma2 = {m - r} > 24")

    span = _enumerate_span(basis)
    free = [p for p in range(m) if p not in set(pivots)]
    best_dist = -1
    best_bits: tuple[int, ...] | None = None
    for combo in range(1 << len(free)):
        # canonical coset member: zero at every pivot position (lex-min)
        rep = 0
        cbits = combo
        while cbits:
            low = cbits & -cbits
            rep |= 1 << free[low.bit_length() - 1]
            cbits ^= low
        dist = min((rep ^ y).bit_count() for y in span)
        if dist > best_dist:
            bits = tuple((rep >> i) & 1 for i in range(m))
            best_dist, best_bits = dist, bits
        elif dist == best_dist:
            bits = tuple((rep >> i) & 1 for i in range(m))
            if bits < best_bits:
                best_bits = bits
    assert best_bits is not None
    return list(best_bits), Fraction(m - best_dist, m)


def existence_bound(game: Game) -> float:
    """Report-only bound 1/2 + sqrt(sigma2 / 2m) on the best adversarial value."""
    return 0.5 + math.sqrt(sigma2(game) / (2 * game.m))
