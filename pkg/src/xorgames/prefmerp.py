"""Perfect-value decisions: integer refutation certificates vs phase strategies.

A game either admits an integer vector z with A^T z = 0 and odd signed
weight (a parity-permuted refutation witness, so the entangled value is
below 1 for symmetric games) or a rational phase vector theta with
A theta = s_hat (mod 2), which drives a perfect rotate-and-measure
strategy on the shared cat state. Exactly one side ever exists; both
directions are computed from the same saturated kernel lattices.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass
from fractions import Fraction

from .errors import GameFormatError, NotSymmetricError
from .games import Game, game_matrix, is_symmetric
from .linalg import F2Matrix, f2_solve, integer_kernel_basis, rational_solve
from .words import verify_pref


@dataclass(frozen=True)
class PrefSpecification:
    """Integer clause counts z with A^T z = 0 over Z and s_hat . z odd."""

    z: tuple[int, ...]

    def to_json(self) -> str:
        return json.dumps({"type": "pref", "z": list(self.z)})

    @classmethod
    def from_json(cls, text: str) -> "PrefSpecification":
        payload = json.loads(text)
        if payload.get("type") != "pref":
            raise GameFormatError(f"not a pref certificate: type={payload.get('type')!r}")
        return cls(tuple(int(v) for v in payload["z"]))


@dataclass(frozen=True)
class MerpStrategy:
    """Rational angle vector; entry (a-1)*n + (j-1) is player a's angle on
    question j, in units of pi."""

    theta: tuple[Fraction, ...]

    def angle(self, player: int, question: int, n: int) -> Fraction:
        """Angle in units of pi for 1-based (player, question)."""
        return self.theta[(player - 1) * n + (question - 1)]

    def to_json(self) -> str:
        return json.dumps({"type": "merp", "theta": [str(t) for t in self.theta]})

    @classmethod
    def from_json(cls, text: str) -> "MerpStrategy":
        payload = json.loads(text)
        if payload.get("type") != "merp":
            raise GameFormatError(f"not a merp certificate: type={payload.get('type')!r}")
        return cls(tuple(Fraction(t) for t in payload["theta"]))


def _transpose(mat: list[list[int]], ncols: int) -> list[list[int]]:
    return [[row[j] for row in mat] for j in range(ncols)]


def _kernel_of_game_matrix_transpose(game: Game) -> list[list[int]]:
    a, _ = game_matrix(game)
    at = _transpose(a, game.k * game.n)
    return integer_kernel_basis(at, ncols=game.m)


def find_pref(game: Game) -> PrefSpecification | None:
    """First saturated-kernel basis vector of A^T with odd signed weight.

    The parity of s_hat . z is GF(2)-linear in the integer coefficients of
    a kernel combination, so the kernel lattice reaches odd parity iff one
    of its basis vectors does; no search is needed. The returned z is the
    basis vector exactly as found (rescaling by even factors would break
    the parity, so no gcd normalisation is applied).
    """
    s_hat = [0 if c.sign == 1 else 1 for c in game.clauses]
    for vec in _kernel_of_game_matrix_transpose(game):
        if sum(b * v for b, v in zip(s_hat, vec)) % 2 == 1:
            return PrefSpecification(tuple(vec))
    return None


def pref_to_multisets(game: Game, pref: PrefSpecification) -> tuple[list[int], list[int]]:
    """Clause-index multisets (O, E): z_i > 0 lands i in O with multiplicity
    z_i, z_i < 0 in E with multiplicity |z_i|. Always |O| = |E|."""
    if not verify_pref(game, pref.z):
        raise ValueError("not a valid PREF specification for this game")
    odd: list[int] = []
    even: list[int] = []
    for i, zi in enumerate(pref.z, start=1):
        if zi > 0:
            odd.extend([i] * zi)
        elif zi < 0:
            even.extend([i] * (-zi))
    assert len(odd) == len(even)  # block sums of A^T z = 0 force this
    return odd, even


def find_merp(game: Game) -> MerpStrategy | None:
    """Rational theta with A theta = s_hat (mod 2), or None.

    Route: the integer points of the rational column space of A form a
    lattice (the kernel of the kernel); s_hat is reachable mod 2 iff it is
    an GF(2) combination of that lattice's basis. The 0/1 lift of the
    combination is an integer vector congruent to s_hat that rational
    elimination can hit exactly.
    """
    m = game.m
    kn = game.k * game.n
    a, s_hat = game_matrix(game)

    kern = _kernel_of_game_matrix_transpose(game)
    lattice = integer_kernel_basis(kern, ncols=m)

    # rows of the GF(2) system: one row per clause, one column per lattice vector
    rows = []
    for i in range(m):
        acc = 0
        for j, vec in enumerate(lattice):
            if vec[i] & 1:
                acc |= 1 << j
        rows.append(acc)
    coeffs = f2_solve(F2Matrix(tuple(rows), len(lattice)), s_hat)
    if coeffs is None:
        return None

    y = [0] * m
    for c, vec in zip(coeffs, lattice):
        if c:
            for i in range(m):
                y[i] += vec[i]
    theta = rational_solve(a, y, ncols=kn)
    if theta is None:  # cannot happen: y was built inside the column space
        raise AssertionError("lattice vector escaped the column space")
    strategy = MerpStrategy(tuple(theta))
    ok, _ = merp_value(game, strategy)
    if not ok:  # would falsify the construction
        raise AssertionError("constructed strategy fails the exact parity check")
    return strategy


def merp_value(game: Game, strategy: MerpStrategy) -> tuple[bool, float]:
    """(exact value-1 boolean, float value) for a phase strategy.

    The boolean is the contract: A theta - s_hat must be an even integer
    vector, checked in exact rational arithmetic. The float evaluates
    1/2 + (1/2m) sum cos(pi [(A theta)_i - s_hat_i]) and is advisory.
    """
    kn = game.k * game.n
    if len(strategy.theta) != kn:
        raise ValueError(f"theta length {len(strategy.theta)} != kn = {kn}")
    n = game.n
    exact = True
    total = 0.0
    for c in game.clauses:
        residue = sum(
            (strategy.theta[a * n + (q - 1)] for a, q in enumerate(c.query)),
            start=Fraction(0),
        )
        residue -= 0 if c.sign == 1 else 1
        if residue.denominator != 1 or residue.numerator % 2 != 0:
            exact = False
        total += math.cos(math.pi * float(residue))
    return exact, 0.5 + total / (2 * game.m)


def duality_check(game: Game) -> PrefSpecification | MerpStrategy:
    """Return whichever of {PREF witness, perfect phase strategy} exists.

    Exactly one side always exists; seeing both or neither would falsify
    the alternative theorem, so that is an assertion failure, not an error.
    """
    pref = find_pref(game)
    merp = find_merp(game)
    assert (pref is None) != (merp is None), "duality violated: both or neither side"
    return pref if pref is not None else merp


@dataclass(frozen=True)
class Value1:
    merp: MerpStrategy


@dataclass(frozen=True)
class LessThanOne:
    pref: PrefSpecification


def decide_symmetric(game: Game) -> Value1 | LessThanOne:
    """Decide a symmetric game's perfect entangled value, with certificate.

    For symmetric games the PREF criterion is complete: a PREF witness
    means value < 1 (a refutation can be built from it), no PREF means a
    perfect phase strategy exists. Total time is polynomial in (n, m).
    """
    if not is_symmetric(game):
        raise NotSymmetricError("decide_symmetric requires a symmetric game")
    pref = find_pref(game)
    if pref is not None:
        assert verify_pref(game, pref.z)
        return LessThanOne(pref)
    merp = find_merp(game)
    assert merp is not None, "duality violated: neither side"
    return Value1(merp)
