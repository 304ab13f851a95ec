"""Shared independent oracles for the test suite.

These deliberately avoid the library's own linear algebra: brute-force
enumeration and cofactor expansion keep the checks independent of the code
paths they judge.
"""

from __future__ import annotations

import itertools
from fractions import Fraction

from xorgames import Game
from xorgames.linalg import hnf


def brute_force_classical_value(game: Game) -> Fraction:
    """Exact classical value by enumerating all 2^(kn) answer vectors."""
    n = game.n
    best = 0
    for bits in itertools.product((0, 1), repeat=game.k * game.n):
        hits = 0
        for c in game.clauses:
            parity = 0
            for a, q in enumerate(c.query):
                parity ^= bits[a * n + (q - 1)]
            if parity == (0 if c.sign == 1 else 1):
                hits += 1
        best = max(best, hits)
    return Fraction(best, game.m)


def det_cofactor(mat) -> int:
    """Determinant by cofactor expansion (fine up to ~7x7)."""
    size = len(mat)
    if size == 0:
        return 1
    if size == 1:
        return mat[0][0]
    total = 0
    for j in range(size):
        if mat[0][j]:
            minor = [row[:j] + row[j + 1 :] for row in mat[1:]]
            total += (-1) ** j * mat[0][j] * det_cofactor(minor)
    return total


def in_lattice(basis: list[list[int]], vec: list[int]) -> bool:
    """Is vec an integer combination of the basis vectors?"""
    if not basis:
        return all(v == 0 for v in vec)
    dim = len(vec)
    cols = [[b[i] for b in basis] for i in range(dim)]  # dim x r
    h, u = hnf(cols)
    residual = list(vec)
    for j in range(len(basis)):
        pivot_row = next((i for i in range(dim) if h[i][j] != 0), None)
        if pivot_row is None:
            continue
        if residual[pivot_row] % h[pivot_row][j] != 0:
            return False
        q = residual[pivot_row] // h[pivot_row][j]
        for i in range(dim):
            residual[i] -= q * h[i][j]
    return all(v == 0 for v in residual)


def mat_vec(mat, vec):
    return [sum(a * b for a, b in zip(row, vec)) for row in mat]


def transpose(mat, ncols: int):
    return [[row[j] for row in mat] for j in range(ncols)]
