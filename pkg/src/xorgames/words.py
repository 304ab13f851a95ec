"""Combinatorial words over game queries, and the independent verifiers.

A word is one letter string ("wire") per player, built by concatenating
queries coordinate-wise. Letters are order-2 generators: adjacent equal
letters on a wire cancel, distinct wires are independent. That makes the
per-wire stack reduction a canonical normal form, so checking a refutation
is just "reduce to empty everywhere, signs multiply to -1".

Everything here is deliberately independent of the lattice machinery in
prefmerp/builder; these are the verifiers the constructions are judged by.
"""

from __future__ import annotations

import json
from collections import deque
from dataclasses import dataclass, field

from .errors import GameFormatError, SearchCapExceededError
from .games import Game, game_hash


@dataclass(frozen=True)
class Word:
    """k wires of letters; the identity word has every wire empty."""

    wires: tuple[tuple[int, ...], ...]

    @classmethod
    def identity(cls, k: int) -> "Word":
        return cls(tuple(() for _ in range(k)))

    @property
    def k(self) -> int:
        return len(self.wires)

    def is_identity(self) -> bool:
        return all(not w for w in self.wires)

    def concat(self, other: "Word") -> "Word":
        if self.k != other.k:
            raise ValueError("wire-count mismatch")
        return Word(tuple(a + b for a, b in zip(self.wires, other.wires)))

    def reverse(self) -> "Word":
        return Word(tuple(w[::-1] for w in self.wires))


def reduce_wire(letters) -> tuple[int, ...]:
    """Stack-cancel adjacent equal letters until none remain."""
    stack: list[int] = []
    for letter in letters:
        if stack and stack[-1] == letter:
            stack.pop()
        else:
            stack.append(letter)
    return tuple(stack)


def reduce_word(word: Word) -> Word:
    """Normal form of a word: per-wire stack cancellation (idempotent)."""
    return Word(tuple(reduce_wire(w) for w in word.wires))


def word_from_indices(game: Game, indices) -> tuple[Word, int]:
    """Concatenate the given 1-based clauses; returns (word, sign product)."""
    wires: list[list[int]] = [[] for _ in range(game.k)]
    sign = 1
    for i in indices:
        if not 1 <= i <= game.m:
            raise IndexError(f"clause index {i} out of range 1..{game.m}")
        c = game.clauses[i - 1]
        for a, q in enumerate(c.query):
            wires[a].append(q)
        sign *= c.sign
    return Word(tuple(tuple(w) for w in wires)), sign


def is_refutation(game: Game, indices) -> bool:
    """True iff the index word reduces to identity on every wire with sign -1."""
    indices = list(indices)
    if len(indices) % 2:  # order-2 letters: odd words cannot reach identity
        return False
    word, sign = word_from_indices(game, indices)
    return sign == -1 and reduce_word(word).is_identity()


def pseudo_expectation(game: Game, indices) -> int:
    """Sign product of the given clauses.

    This is a consistent function of the reduced word (and hence a valid
    pseudoexpectation of the corresponding operator product) as long as the
    game has no refutation up to twice the word length.
    """
    sign = 1
    for i in indices:
        if not 1 <= i <= game.m:
            raise IndexError(f"clause index {i} out of range 1..{game.m}")
        sign *= game.clauses[i - 1].sign
    return sign


def verify_pref(game: Game, z) -> bool:
    """Check an integer clause-count vector as a parity-permuted refutation.

    Counting-only check, independent of any linear algebra: the positive
    and negative parts of z must select multisets of clauses in which every
    (player, question) pair occurs equally often, and the signs over both
    multisets must multiply to -1.
    """
    z = list(z)
    if len(z) != game.m:
        raise ValueError(f"z has length {len(z)}, expected m={game.m}")
    counts: dict[tuple[int, int], int] = {}
    neg_signs = 0
    for zi, c in zip(z, game.clauses):
        if zi == 0:
            continue
        for a, q in enumerate(c.query):
            counts[(a, q)] = counts.get((a, q), 0) + zi
        if c.sign == -1:
            neg_signs += abs(zi)
    if any(v != 0 for v in counts.values()):
        return False
    return neg_signs % 2 == 1


def induced_pref_vector(game: Game, indices) -> list[int]:
    """Signed clause counts of a word: +1 per odd position, -1 per even."""
    z = [0] * game.m
    for pos, i in enumerate(indices, start=1):
        z[i - 1] += 1 if pos % 2 == 1 else -1
    return z


# ---------------------------------------------------------------------------
# Bounded breadth-first refutation search (exact oracle for small games)


def min_refutation_bfs(
    game: Game, max_len: int = 12, state_cap: int = 10**7
) -> tuple[int, tuple[int, ...]] | None:
    """Shortest refutation of length <= max_len, or None if there is none.

    States are (reduced wires, sign parity); appending a clause updates each
    wire in O(1). Raises SearchCapExceededError if the deduplicated state
    set outgrows state_cap before the bounded search is complete.
    """
    start = (tuple(() for _ in range(game.k)), 1)
    parents: dict[tuple, tuple | None] = {start: None}
    frontier = deque([start])
    depth = 0
    while frontier and depth < max_len:
        depth += 1
        next_frontier: deque = deque()
        while frontier:
            state = frontier.popleft()
            wires, sign = state
            for idx in range(1, game.m + 1):
                c = game.clauses[idx - 1]
                new_wires = []
                for wire, letter in zip(wires, c.query):
                    if wire and wire[-1] == letter:
                        new_wires.append(wire[:-1])
                    else:
                        new_wires.append(wire + (letter,))
                new_state = (tuple(new_wires), sign * c.sign)
                if new_state in parents:
                    continue
                parents[new_state] = (state, idx)
                if len(parents) > state_cap:
                    raise SearchCapExceededError(len(parents), max_len)
                if new_state[1] == -1 and all(not w for w in new_state[0]):
                    indices: list[int] = []
                    cur: tuple | None = new_state
                    while parents[cur] is not None:
                        cur, i = parents[cur]
                        indices.append(i)
                    indices.reverse()
                    return depth, tuple(indices)
                next_frontier.append(new_state)
        frontier = next_frontier
    return None


# ---------------------------------------------------------------------------
# Refutation certificates


@dataclass(frozen=True)
class RefutationCertificate:
    """Clause-index sequence claimed to be a refutation, plus provenance.

    annotations is free-form audit metadata (the builder records each
    gadget's type, wires, letter pair, and stage); the verifier ignores it.
    """

    indices: tuple[int, ...]
    game_ref: str = ""
    annotations: tuple = field(default_factory=tuple)

    def to_json(self) -> str:
        payload = {"type": "refutation", "game": self.game_ref, "indices": list(self.indices)}
        if self.annotations:
            payload["annotations"] = list(self.annotations)
        return json.dumps(payload)

    @classmethod
    def from_json(cls, text: str) -> "RefutationCertificate":
        try:
            payload = json.loads(text)
            if payload.get("type") != "refutation":
                raise ValueError(f"not a refutation certificate: type={payload.get('type')!r}")
            return cls(
                indices=tuple(int(i) for i in payload["indices"]),
                game_ref=str(payload.get("game", "")),
                annotations=tuple(payload.get("annotations", ())),
            )
        except (KeyError, TypeError, ValueError) as exc:
            raise GameFormatError(f"bad refutation certificate JSON: {exc}") from exc


def certificate_for(game: Game, indices, annotations=()) -> RefutationCertificate:
    return RefutationCertificate(tuple(indices), game_hash(game), tuple(annotations))
