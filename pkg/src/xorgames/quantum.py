"""State-vector checks for concrete strategies (confirmatory, double precision).

The exact value-1 contract lives in the rational parity test of prefmerp;
this module independently confirms strategies by applying single-qubit
observables to explicit shared states. Observables are applied qubit-wise
to the amplitude vector, never materialized as 2^k x 2^k matrices.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from .errors import GameFormatError
from .games import Game, game_123
from .prefmerp import MerpStrategy

EIGEN_TOL = 1e-12
VALUE_TOL = 1e-9

_PAULI = {
    "X": np.array([[0, 1], [1, 0]], dtype=complex),
    "Y": np.array([[0, -1j], [1j, 0]], dtype=complex),
    "Z": np.array([[1, 0], [0, -1]], dtype=complex),
}


@dataclass(frozen=True)
class Rotation:
    """Rotate-by-angle-then-measure-X observable; angle stored in units of pi."""

    pi_units: Fraction

    @property
    def radians(self) -> float:
        return math.pi * float(self.pi_units)

    def matrix(self) -> np.ndarray:
        phase = complex(math.cos(self.radians), math.sin(self.radians))
        return np.array([[0, phase.conjugate()], [phase, 0]], dtype=complex)


@dataclass(frozen=True)
class Pauli:
    kind: str  # 'X', 'Y', or 'Z'

    def matrix(self) -> np.ndarray:
        return _PAULI[self.kind]


@dataclass(frozen=True)
class ObservableAssignment:
    """Observable per (player, question), both 1-based."""

    entries: dict[tuple[int, int], Rotation | Pauli]

    def observable(self, player: int, question: int) -> Rotation | Pauli:
        try:
            return self.entries[(player, question)]
        except KeyError:
            raise KeyError(f"no observable assigned for player {player}, question {question}") from None

    def to_json(self) -> str:
        entries = []
        for (player, question), op in sorted(self.entries.items()):
            if isinstance(op, Pauli):
                op_json: object = op.kind
            else:
                op_json = {"rot": str(op.pi_units)}
            entries.append({"player": player, "question": question, "op": op_json})
        return json.dumps({"type": "observables", "entries": entries})

    @classmethod
    def from_json(cls, text: str) -> "ObservableAssignment":
        try:
            payload = json.loads(text)
            if payload.get("type") != "observables":
                raise ValueError(f"type={payload.get('type')!r}")
            entries: dict[tuple[int, int], Rotation | Pauli] = {}
            for e in payload["entries"]:
                op = e["op"]
                if isinstance(op, str):
                    if op not in _PAULI:
                        raise ValueError(f"unknown Pauli {op!r}")
                    parsed: Rotation | Pauli = Pauli(op)
                else:
                    parsed = Rotation(Fraction(op["rot"]))
                entries[(int(e["player"]), int(e["question"]))] = parsed
            return cls(entries)
        except (KeyError, TypeError, ValueError) as exc:
            raise GameFormatError(f"bad observables JSON: {exc}") from exc


def merp_assignment(game: Game, strategy: MerpStrategy) -> ObservableAssignment:
    """Rotation observables for every (player, question) pair of the game."""
    entries: dict[tuple[int, int], Rotation | Pauli] = {}
    for player in range(1, game.k + 1):
        for question in range(1, game.n + 1):
            entries[(player, question)] = Rotation(strategy.angle(player, question, game.n))
    return ObservableAssignment(entries)


def merp_state(k: int) -> np.ndarray:
    """The shared k-qubit cat state (|0..0> + |1..1>)/sqrt(2)."""
    if not 1 <= k <= 20:
        raise ValueError(f"k must be in 1..20, got {k}")
    state = np.zeros(2**k, dtype=complex)
    state[0] = state[-1] = 1 / math.sqrt(2)
    return state


def _apply_single(state: np.ndarray, k: int, player: int, mat: np.ndarray) -> np.ndarray:
    """Apply a one-qubit operator on the given player's qubit (1 = leftmost)."""
    psi = state.reshape((2,) * k)
    psi = np.moveaxis(psi, player - 1, 0)
    psi = np.tensordot(mat, psi, axes=(1, 0))
    psi = np.moveaxis(psi, 0, player - 1)
    return np.ascontiguousarray(psi).reshape(-1)


def apply_query(
    state: np.ndarray, game: Game, clause_index: int, assignment: ObservableAssignment
) -> np.ndarray:
    """Apply the joint observable of the 1-based clause to the state."""
    if len(state) != 2**game.k:
        raise ValueError(f"state dimension {len(state)} != 2^k = {2**game.k}")
    out = state
    for player, question in enumerate(game.clauses[clause_index - 1].query, start=1):
        out = _apply_single(out, game.k, player, assignment.observable(player, question).matrix())
    return out


def clause_expectation(
    state: np.ndarray, game: Game, clause_index: int, assignment: ObservableAssignment
) -> float:
    """<state| (tensor of per-player observables) |state>, asserted real."""
    value = complex(np.vdot(state, apply_query(state, game, clause_index, assignment)))
    assert abs(value.imag) <= EIGEN_TOL, f"expectation has imaginary residue {value.imag}"
    return value.real


def simulate_strategy_value(
    game: Game, assignment: ObservableAssignment, state: np.ndarray
) -> float:
    """Mean clause win probability (1 + sign * expectation) / 2."""
    total = 0.0
    for i, c in enumerate(game.clauses, start=1):
        total += (1 + c.sign * clause_expectation(state, game, i, assignment)) / 2
    return total / game.m


def max_constraint_residual(
    game: Game, assignment: ObservableAssignment, state: np.ndarray
) -> float:
    """max_i || Q_i |state> - s_i |state> ||_inf over all clauses."""
    worst = 0.0
    for i, c in enumerate(game.clauses, start=1):
        residual = apply_query(state, game, i, assignment) - c.sign * state
        worst = max(worst, float(np.max(np.abs(residual))))
    return worst


# ---------------------------------------------------------------------------
# The 123 game's Pauli strategy


def psi_123() -> np.ndarray:
    """Six-qubit state: +1/sqrt(8) on 000000 and 111111, -1/sqrt(8) on the
    six strings 100100, 001010, 010001, 011011, 110101, 101110."""
    state = np.zeros(64, dtype=complex)
    amp = 1 / math.sqrt(8)
    state[0b000000] = state[0b111111] = amp
    for bits in ("100100", "001010", "010001", "011011", "110101", "101110"):
        state[int(bits, 2)] = -amp
    return state


def assignment_123() -> ObservableAssignment:
    """All six players measure Z on question 1, X on 2, Y on 3."""
    ops = {1: Pauli("Z"), 2: Pauli("X"), 3: Pauli("Y")}
    return ObservableAssignment(
        {(player, q): ops[q] for player in range(1, 7) for q in (1, 2, 3)}
    )


def verify_123() -> bool:
    """Check the Pauli strategy satisfies every clause constraint exactly."""
    return max_constraint_residual(game_123(), assignment_123(), psi_123()) <= EIGEN_TOL
