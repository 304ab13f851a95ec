"""Constructive pipeline from a PREF witness to a verified refutation.

For a symmetric game the witness z is turned into an explicit clause-index
sequence whose word cancels on every wire with sign -1:

  1. interleave the positive/negative multisets of z into a word,
  2. reorder it (cycle layout of a greedy letter matching) so wires 1 and 2
     cancel outright, with wire 2 in the pattern x1 x1 x2 x2 ...,
  3. for every remaining wire, rearrange its letter pairs into a cancelling
     order through save/load shift gadgets, staged along a riffle-style
     decomposition of the required pair permutation.

The emitted certificate is checked by the word engine, never by this
module's own bookkeeping.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .errors import NotSymmetricError
from .games import Clause, Game, is_symmetric
from .prefmerp import PrefSpecification
from .words import (
    RefutationCertificate,
    certificate_for,
    reduce_wire,
    verify_pref,
    word_from_indices,
)


# ---------------------------------------------------------------------------
# Pair-level permutations


@dataclass(frozen=True)
class PairPermutation:
    """Reordering of letter pairs: new pair j is old pair order[j] (0-based)."""

    order: tuple[int, ...]

    def unpacked(self) -> tuple[int, ...]:
        """Action on letter positions; keeps each pair intact and in order."""
        out = []
        for o in self.order:
            out.append(2 * o)
            out.append(2 * o + 1)
        return tuple(out)


def _greedy_match(targets: list[int], sources: list[int]) -> list[int]:
    """match[i] = first unused j with sources[j] == targets[i] (left to right)."""
    free: dict[int, list[int]] = {}
    for j in range(len(sources) - 1, -1, -1):
        free.setdefault(sources[j], []).append(j)
    match = []
    for t in targets:
        stack = free.get(t)
        if not stack:
            raise AssertionError(f"unmatched letter {t}: input word is not balanced")
        match.append(stack.pop())
    return match


def _cycle_layout(f: list[int]) -> list[int]:
    """Concatenated cycles of permutation f, each starting at its least element.

    Laying out pairs in this order makes the wire cancel: inside a cycle
    each pair's trailing letter meets its match at the head of the next
    pair, and the cycle's two loose ends meet as the outermost nesting.
    """
    seen = [False] * len(f)
    layout = []
    for start in range(len(f)):
        if seen[start]:
            continue
        x = start
        while not seen[x]:
            seen[x] = True
            layout.append(x)
            x = f[x]
    return layout


def pair_canceling_permutation(wire) -> PairPermutation:
    """Pair reordering after which a balanced single wire cancels to empty.

    Precondition: even length and every letter occurring equally often at
    odd and even positions. Greedy matching of each pair's second letter to
    a later-unused pair's first letter gives a permutation; its cycles glued
    end to end cancel in a nested pattern.
    """
    letters = list(wire)
    if len(letters) % 2:
        raise ValueError("wire length must be even")
    heads = letters[0::2]
    tails = letters[1::2]
    if sorted(heads) != sorted(tails):
        raise ValueError("letters are not balanced between odd and even positions")
    f = _greedy_match(tails, heads)  # tail of pair i cancels head of pair f[i]
    order = _cycle_layout(f)
    return PairPermutation(tuple(order))


# ---------------------------------------------------------------------------
# Shuffles


@dataclass(frozen=True)
class ShuffleFunction:
    """Permutation applying as out[x] = in[perm[x]], realizable as one riffle.

    The witness partition splits the input labels into two sets that land
    in increasing order; part_a is routed to wire 1 piles, part_b to wire 2.
    """

    perm: tuple[int, ...]
    part_a: tuple[int, ...]
    part_b: tuple[int, ...]

    def is_valid(self) -> bool:
        n = len(self.perm)
        if sorted(self.part_a + self.part_b) != list(range(n)):
            return False
        inv = [0] * n
        for x, v in enumerate(self.perm):
            inv[v] = x
        for part in (self.part_a, self.part_b):
            if any(inv[part[i]] >= inv[part[i + 1]] for i in range(len(part) - 1)):
                return False
        return True


def shuffle_decompose(perm) -> list[ShuffleFunction]:
    """Factor a permutation into at most ceil(log2 L) shuffles.

    Radix passes: stable-partition the running arrangement by successive
    bits of each element's destination, least significant first. Each pass
    keeps two blocks in relative order, so it is a single riffle; after all
    bits the arrangement is sorted by destination. Applying the factors in
    list order to the identity arrangement yields `perm`. Identity passes
    are dropped (so the identity permutation gives an empty list).
    """
    perm = list(perm)
    length = len(perm)
    if sorted(perm) != list(range(length)):
        raise ValueError("not a permutation of 0..L-1")
    dest = [0] * length
    for x, v in enumerate(perm):
        dest[v] = x
    cur = list(range(length))
    factors: list[ShuffleFunction] = []
    for t in range(max(length - 1, 0).bit_length()):
        if cur == perm:
            break
        zeros = [v for v in cur if not (dest[v] >> t) & 1]
        ones = [v for v in cur if (dest[v] >> t) & 1]
        new = zeros + ones
        if new == cur:
            continue
        pos = {v: i for i, v in enumerate(cur)}
        factors.append(
            ShuffleFunction(
                perm=tuple(pos[v] for v in new),
                part_a=tuple(pos[v] for v in zeros),
                part_b=tuple(pos[v] for v in ones),
            )
        )
        cur = new
    assert cur == perm, "radix passes failed to reach the target arrangement"
    return factors


def compose_shuffles(factors, length: int) -> tuple[int, ...]:
    """Arrangement after applying the factors in order to the identity."""
    cur = list(range(length))
    for f in factors:
        cur = [cur[f.perm[x]] for x in range(length)]
    return tuple(cur)


# ---------------------------------------------------------------------------
# Shift gadgets (symmetric games)


@dataclass(frozen=True)
class GadgetSeq:
    """Clause indices realizing a gadget, with its declared semantic."""

    indices: tuple[int, ...]
    kind: str  # "shift" or "shuffle-stage"
    wire: int  # source wire (1-based)
    target: int | None  # destination wire for shift gadgets
    pair: tuple[int, int] | None
    steps: tuple = ()  # audit entries for compound gadgets


def _swap(query: tuple[int, ...], a: int, b: int) -> tuple[int, ...]:
    q = list(query)
    q[a], q[b] = q[b], q[a]
    return tuple(q)


def _clause_index_map(game: Game) -> dict[tuple[tuple[int, ...], int], int]:
    out: dict[tuple[tuple[int, ...], int], int] = {}
    for i, c in enumerate(game.clauses, start=1):
        out.setdefault((c.query, c.sign), i)
    return out


def _locate(game: Game, index_map, clause: Clause) -> int:
    idx = index_map.get((clause.query, clause.sign))
    if idx is None:
        raise NotSymmetricError(
            f"clause {clause.query} (sign {clause.sign:+d}) missing: "
            "game is not closed under query permutations"
        )
    return idx


def shift_gadget_symmetric(
    game: Game, q_left_idx: int, q_right_idx: int, wire: int, target: int
) -> GadgetSeq:
    """Four clauses moving a letter pair from `wire` onto wire `target`.

    The two source clauses must agree on wire 2 (which the cancelling
    layout guarantees for adjacent pairs). Appended to a word whose wire
    ends with the pair (y1, y2), the gadget erases it there and deposits a
    4-letter saved form on the target wire; the reversed gadget loads it
    back. Sign product is +1 by construction.
    """
    if target not in (1, 2):
        raise ValueError("target wire must be 1 or 2")
    if not 3 <= wire <= game.k:
        raise ValueError(f"source wire must be in 3..k, got {wire}")
    c_left = game.clauses[q_left_idx - 1]
    c_right = game.clauses[q_right_idx - 1]
    if c_left.query[1] != c_right.query[1]:
        raise ValueError("source clauses do not share their wire-2 question")

    w = wire - 1
    seq = [
        c_right.query,
        _swap(c_right.query, 1, w),
        _swap(c_left.query, 1, w),
        c_left.query,
    ]
    signs = [c_right.sign, c_right.sign, c_left.sign, c_left.sign]
    if target == 1:
        seq = [_swap(q, 0, 1) for q in seq]

    index_map = _clause_index_map(game)
    indices = tuple(
        _locate(game, index_map, Clause(q, s)) for q, s in zip(seq, signs)
    )
    y1 = c_left.query[w]
    y2 = c_right.query[w]
    gadget = GadgetSeq(indices, "shift", wire, target, (y1, y2))
    _check_shift_shape(game, gadget)
    return gadget


def _check_shift_shape(game: Game, gadget: GadgetSeq) -> None:
    word, sign = word_from_indices(game, gadget.indices)
    assert sign == 1, "shift gadget sign must be +1"
    y1, y2 = gadget.pair
    expected_pair = () if y1 == y2 else (y2, y1)
    for wire_no, letters in enumerate(word.wires, start=1):
        red = reduce_wire(letters)
        if wire_no == gadget.wire:
            assert red == expected_pair, f"wire {wire_no} reduces to {red}"
        elif wire_no != gadget.target:
            assert red == (), f"wire {wire_no} should cancel, got {red}"


# ---------------------------------------------------------------------------
# Shuffle stages


@dataclass(frozen=True)
class _Pair:
    """A letter pair on one wire, remembering its two source clauses."""

    left_idx: int
    right_idx: int
    y1: int
    y2: int

    @property
    def silent(self) -> bool:
        return self.y1 == self.y2  # cancels by itself; gadget may be empty


def shuffle_gadget(game: Game, pairs, f: ShuffleFunction, wire: int) -> GadgetSeq:
    """One stage: unload the current pair arrangement, reload it f-permuted.

    Saves run over the arrangement right to left (so the wire cancels as
    they are appended), routing each pair to wire 1 or 2 by f's witness
    partition. Loads run over output slots left to right; because f's
    inverse is increasing on each partition class, every load pops exactly
    the top of its pile. Identical-letter pairs need no gadget at all.
    """
    pairs = list(pairs)
    if not f.is_valid():
        raise ValueError("invalid shuffle function")
    if len(f.perm) != len(pairs):
        raise ValueError("shuffle length mismatch")
    in_a = set(f.part_a)
    piles: dict[int, list[tuple[int, GadgetSeq | None]]] = {1: [], 2: []}
    indices: list[int] = []
    steps = []
    for x in range(len(pairs) - 1, -1, -1):
        pair = pairs[x]
        target = 1 if x in in_a else 2
        if pair.silent:
            gadget = None
        else:
            gadget = shift_gadget_symmetric(game, pair.left_idx, pair.right_idx, wire, target)
            indices.extend(gadget.indices)
            steps.append(
                {"type": "save", "wire": wire, "target": target,
                 "pair": [pair.y1, pair.y2], "clauses": list(gadget.indices)}
            )
        piles[target].append((x, gadget))
    for x in range(len(pairs)):
        v = f.perm[x]
        target = 1 if v in in_a else 2
        top, gadget = piles[target].pop()
        assert top == v, "pile order broken: shuffle witness partition is wrong"
        if gadget is not None:
            loaded = gadget.indices[::-1]
            indices.extend(loaded)
            steps.append(
                {"type": "load", "wire": wire, "target": target,
                 "pair": [pairs[v].y1, pairs[v].y2], "clauses": list(loaded)}
            )
    assert not piles[1] and not piles[2]
    stage = GadgetSeq(tuple(indices), "shuffle-stage", wire, None, None, tuple(steps))
    _check_stage_shape(game, stage, pairs, f, wire)
    return stage


def _check_stage_shape(game, stage, pairs, f, wire) -> None:
    if not stage.indices:
        return
    word, sign = word_from_indices(game, stage.indices)
    assert sign == 1
    before = [letter for p in pairs for letter in (p.y1, p.y2)]
    after = [letter for x in range(len(pairs)) for p in (pairs[f.perm[x]],) for letter in (p.y1, p.y2)]
    want = reduce_wire(before[::-1] + after)
    for wire_no, letters in enumerate(word.wires, start=1):
        red = reduce_wire(letters)
        if wire_no == wire:
            assert red == want, f"stage wire {wire_no}: {red} != {want}"
        elif wire_no > 2:
            assert red == (), f"stage should cancel on wire {wire_no}"
        # wires 1 and 2 also cancel (balanced piles), checked end to end


# ---------------------------------------------------------------------------
# End-to-end construction


def build_word_from_pref(game: Game, z) -> list[int]:
    """Interleave the positive multiset of z (odd slots) with the negative
    one (even slots); the result is a sign -1 word, cancellable wire by
    wire after reordering."""
    z = list(getattr(z, "z", z))
    if not verify_pref(game, z):
        raise ValueError("not a valid PREF specification for this game")
    odd: list[int] = []
    even: list[int] = []
    for i, zi in enumerate(z, start=1):
        if zi > 0:
            odd.extend([i] * zi)
        elif zi < 0:
            even.extend([i] * (-zi))
    assert len(odd) == len(even)
    out = []
    for o, e in zip(odd, even):
        out.append(o)
        out.append(e)
    return out


def cancel_first_two_wires(game: Game, indices) -> list[int]:
    """Permute a balanced word so wires 1 and 2 cancel to identity.

    Greedy matchings pair each even-slot clause with an odd-slot clause
    sharing its wire-1 letter (and another sharing its wire-2 letter);
    walking the cycles of the combined correspondence lays the clauses out
    as (odd, even) pairs with equal wire-2 letters, wire 1 nesting shut
    around each cycle.
    """
    indices = list(indices)
    if len(indices) % 2:
        raise ValueError("word length must be even")
    if game.k < 2:
        raise ValueError("needs at least two wires")
    odd_slots = indices[0::2]
    even_slots = indices[1::2]
    wire1 = lambda i: game.clauses[i - 1].query[0]
    wire2 = lambda i: game.clauses[i - 1].query[1]
    # f1[j]: odd slot whose wire-1 letter matches even slot j; f2 for wire 2
    f1 = _greedy_match([wire1(i) for i in even_slots], [wire1(i) for i in odd_slots])
    f2 = _greedy_match([wire2(i) for i in even_slots], [wire2(i) for i in odd_slots])
    # combined map on slots: odd i -> even (via inverse of f2) -> odd (via f1)
    t = len(odd_slots)
    f2_inv = [0] * t
    for j, i in enumerate(f2):
        f2_inv[i] = j
    out: list[int] = []
    seen = [False] * t
    for start in range(t):
        if seen[start]:
            continue
        x = start
        while not seen[x]:
            seen[x] = True
            e = f2_inv[x]  # even slot sharing wire-2 letter with odd slot x
            out.append(odd_slots[x])
            out.append(even_slots[e])
            x = f1[e]  # odd slot sharing wire-1 letter with that even slot
    return out


def build_refutation_symmetric(game: Game, z) -> RefutationCertificate:
    """Emit a refutation certificate for a symmetric game with PREF witness z.

    Pipeline: interleave, cancel wires 1-2, then per remaining wire emit
    save/load shuffle stages realizing the pair permutation that cancels
    it. Certificate length is O(k |z|_1 log |z|_1); soundness is judged by
    words.is_refutation, not by this builder.
    """
    z = list(getattr(z, "z", z))
    if not is_symmetric(game):
        raise NotSymmetricError("refutation construction needs a symmetric game")
    if not verify_pref(game, z):
        raise ValueError("not a valid PREF specification for this game")

    base = build_word_from_pref(game, z)
    if game.k == 1:
        order = pair_canceling_permutation([game.query(i)[0] for i in base])
        indices = []
        for o in order.order:
            indices.extend((base[2 * o], base[2 * o + 1]))
        return certificate_for(game, indices)

    laid = cancel_first_two_wires(game, base)
    indices = list(laid)
    annotations: list[dict] = []
    t = len(laid) // 2
    for wire in range(3, game.k + 1):
        letters = [game.clauses[i - 1].query[wire - 1] for i in laid]
        pairs = [
            _Pair(laid[2 * p], laid[2 * p + 1], letters[2 * p], letters[2 * p + 1])
            for p in range(t)
        ]
        order = pair_canceling_permutation(letters).order
        arrangement = list(pairs)
        for stage_no, f in enumerate(shuffle_decompose(list(order))):
            stage = shuffle_gadget(game, arrangement, f, wire)
            indices.extend(stage.indices)
            annotations.append(
                {"wire": wire, "stage": stage_no, "type": stage.kind,
                 "gadgets": list(stage.steps)}
            )
            arrangement = [arrangement[f.perm[x]] for x in range(t)]
        assert arrangement == [pairs[o] for o in order]
    return certificate_for(game, indices, annotations)


def value_upper_bound_from_refutation(m: int, length: int) -> float:
    """Upper bound 1 - pi^2 / (4 m length^2) on the entangled value."""
    if m < 1 or length < 1:
        raise ValueError("need m >= 1 and length >= 1")
    return 1.0 - math.pi**2 / (4 * m * length * length)
