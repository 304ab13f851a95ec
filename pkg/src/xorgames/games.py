"""XOR games: representation, canonical families, random generation, I/O.

A k-player XOR game is an ordered list of clauses. Each clause pairs a
query (one question per player, questions 1..n) with a sign in {+1, -1};
the players win when the product of their +/-1 answers equals the sign.
Clause order matters: refutation certificates refer to 1-based clause
indices, and questions are 1-based everywhere at the API surface.
"""

from __future__ import annotations

import hashlib
import itertools
import json
import random
import re
from dataclasses import dataclass

from .errors import GameFormatError, GuardExceededError


@dataclass(frozen=True)
class Clause:
    """One clause: a query (question per player) and its target sign."""

    query: tuple[int, ...]
    sign: int

    def __post_init__(self):
        if self.sign not in (1, -1):
            raise ValueError(f"clause sign must be +1 or -1, got {self.sign}")


@dataclass(frozen=True)
class Game:
    """k-player XOR game over questions 1..n with an ordered clause list."""

    k: int
    n: int
    clauses: tuple[Clause, ...]

    def __post_init__(self):
        if self.k < 1 or self.n < 1:
            raise ValueError("need k >= 1 and n >= 1")
        if not self.clauses:
            raise ValueError("need at least one clause")
        for c in self.clauses:
            if len(c.query) != self.k:
                raise ValueError(f"query {c.query} has length {len(c.query)}, expected k={self.k}")
            for q in c.query:
                if not 1 <= q <= self.n:
                    raise ValueError(f"question {q} out of range 1..{self.n}")

    @property
    def m(self) -> int:
        return len(self.clauses)

    def query(self, i: int) -> tuple[int, ...]:
        """Query of 1-based clause index i."""
        return self.clauses[i - 1].query

    def sign(self, i: int) -> int:
        return self.clauses[i - 1].sign


def make_game(k: int, n: int, clauses) -> Game:
    """Build a Game from (query, sign) pairs or (q1..qk, sign) flat tuples."""
    out = []
    for c in clauses:
        if isinstance(c, Clause):
            out.append(c)
        elif len(c) == 2 and isinstance(c[0], (tuple, list)):
            out.append(Clause(tuple(c[0]), c[1]))
        else:
            out.append(Clause(tuple(c[:-1]), c[-1]))
    return Game(k, n, tuple(out))


# ---------------------------------------------------------------------------
# Linear-algebra image


def game_matrix(game: Game) -> tuple[list[list[int]], list[int]]:
    """(A, s_hat): the m x kn incidence matrix and the 0/1 sign vector.

    A[i][(a-1)*n + (j-1)] = 1 iff clause i sends question j to player a,
    so every row has exactly one 1 per player block. s_hat[i] = 0 for
    sign +1, 1 for sign -1. The pair determines the game exactly.
    """
    n = game.n
    rows = []
    s_hat = []
    for c in game.clauses:
        row = [0] * (game.k * n)
        for a, q in enumerate(c.query):
            row[a * n + (q - 1)] = 1
        rows.append(row)
        s_hat.append(0 if c.sign == 1 else 1)
    return rows, s_hat


def game_from_matrix(a: list[list[int]], s_hat: list[int], k: int, n: int) -> Game:
    """Inverse of game_matrix (the map is bijective for fixed k, n)."""
    clauses = []
    for row, bit in zip(a, s_hat):
        query = []
        for alpha in range(k):
            block = row[alpha * n : (alpha + 1) * n]
            if sum(block) != 1:
                raise ValueError("row is not a valid one-question-per-player block")
            query.append(block.index(1) + 1)
        clauses.append(Clause(tuple(query), 1 if bit == 0 else -1))
    return Game(k, n, tuple(clauses))


# ---------------------------------------------------------------------------
# Canonical families


def ghz() -> Game:
    """The 3-player GHZ game; question labels x -> 1, y -> 2."""
    return make_game(3, 2, [
        ((1, 1, 1), +1),
        ((2, 2, 1), -1),
        ((2, 1, 2), -1),
        ((1, 2, 2), -1),
    ])


def capped_ghz(n: int) -> Game:
    """Capped GHZ family: 3 players, alphabet n, 3n-1 clauses.

    Layout: cap (1,1,1,-1), then for i = 1..n-1 the three arrangements of
    {i, i+1, i+1} with sign +1, then cap (n,n,n,+1).
    """
    if n < 2:
        raise ValueError(f"capped_ghz needs n >= 2, got {n}")
    clauses: list[tuple] = [((1, 1, 1), -1)]
    for i in range(1, n):
        clauses.append(((i, i + 1, i + 1), +1))
        clauses.append(((i + 1, i, i + 1), +1))
        clauses.append(((i + 1, i + 1, i), +1))
    clauses.append(((n, n, n), +1))
    return make_game(3, n, clauses)


def apd_b_matrix(K: int) -> list[list[int]]:
    """The 2^K x 2^K 0/1 matrix driving the APD query layout.

    B(0) = [[1]]; B(K+1) = [[~B(K), B(K)], [B(K), B(K)]] with ~ flipping
    every bit.
    """
    if K < 0:
        raise ValueError("K must be >= 0")
    b = [[1]]
    for _ in range(K):
        size = len(b)
        top = [[1 - v for v in row] + row for row in b]
        bot = [row + row for row in b]
        b = top + bot
    return b


def apd(K: int, sign_mode: str = "all_plus", seed: int | None = None) -> Game:
    """Asymptotically-Perfect-Difference game: k = 2^K - 1 players, n = 2.

    Queries come from the first 2^K - 1 columns of apd_b_matrix(K), with a
    1-entry meaning question 1 (this matches the displayed game matrix of
    the K=2 instance, which is the GHZ matrix up to column swaps).

    sign_mode: 'all_plus' (default), 'random' (uniform signs from `seed`),
    or 'adversarial' (exact classical-value minimisation; K <= 3 only,
    since the coset search scans 2^(m - rank) cosets).
    """
    if K < 1:
        raise ValueError("apd needs K >= 1")
    b = apd_b_matrix(K)
    m = 2 ** K
    k = m - 1
    queries = [tuple(2 - b[i][a] for a in range(k)) for i in range(m)]

    if sign_mode == "all_plus":
        signs = [1] * m
    elif sign_mode == "random":
        rng = random.Random(seed)
        signs = [rng.choice((1, -1)) for _ in range(m)]
    elif sign_mode == "adversarial":
        if K > 3:
            raise GuardExceededError(
                f"adversarial signs for K={K} would scan 2^(m - sigma2) = "
                f"2^{m - (K + 1)} cosets; guarded to K <= 3"
            )
        from .classical import adversarial_signs

        a = [[0] * (2 * k) for _ in range(m)]
        for i, query in enumerate(queries):
            for alpha, q in enumerate(query):
                a[i][alpha * 2 + (q - 1)] = 1
        s_hat, _value = adversarial_signs(a)
        signs = [1 if bit == 0 else -1 for bit in s_hat]
    else:
        raise ValueError(f"unknown sign_mode {sign_mode!r}")

    return make_game(k, 2, list(zip(queries, signs)))


def game_123() -> Game:
    """The 6-player, 3-question game whose only negative clause is all-3s."""
    return make_game(6, 3, [
        ((1, 1, 1, 1, 1, 1), +1),
        ((2, 2, 2, 2, 2, 2), +1),
        ((3, 3, 3, 3, 3, 3), -1),
        ((1, 2, 3, 1, 2, 3), +1),
        ((2, 3, 1, 3, 1, 2), +1),
        ((3, 1, 2, 2, 3, 1), +1),
    ])


def small_123() -> Game:
    """3-player version of the 123 game; its printed order is a refutation."""
    return make_game(3, 3, [
        ((1, 1, 1), +1),
        ((1, 2, 3), +1),
        ((3, 3, 3), -1),
        ((2, 3, 1), +1),
        ((2, 2, 2), +1),
        ((3, 1, 2), +1),
    ])


# ---------------------------------------------------------------------------
# Random generation and symmetry


def random_game(k: int, n: int, m: int, seed: int | None = None) -> Game:
    """m clauses i.i.d. uniform over queries x signs, from a private stream."""
    if m < 1:
        raise ValueError("need m >= 1")
    rng = random.Random(seed)
    clauses = []
    for _ in range(m):
        query = tuple(rng.randint(1, n) for _ in range(k))
        sign = 1 if rng.random() < 0.5 else -1
        clauses.append(Clause(query, sign))
    return Game(k, n, tuple(clauses))


def random_symmetric_game(k: int, n: int, m_base: int, seed: int | None = None) -> Game:
    """Generate m_base clauses, then close under all query permutations."""
    return symmetrize(random_game(k, n, m_base, seed))


def symmetrize(game: Game) -> Game:
    """Close the clause list under query permutations (signs unchanged).

    Identical (query, sign) pairs are kept once; ordering follows the
    source clause order, permutations in itertools order.
    """
    seen: set[tuple[tuple[int, ...], int]] = set()
    out = []
    for c in game.clauses:
        for perm in itertools.permutations(c.query):
            key = (perm, c.sign)
            if key not in seen:
                seen.add(key)
                out.append(Clause(perm, c.sign))
    return Game(game.k, game.n, tuple(out))


def is_symmetric(game: Game) -> bool:
    present = {(c.query, c.sign) for c in game.clauses}
    for query, sign in present:
        for perm in itertools.permutations(query):
            if (perm, sign) not in present:
                return False
    return True


# ---------------------------------------------------------------------------
# Text and JSON formats

_HEADER_RE = re.compile(r"^k=(\d+)\s+n=(\d+)\s+m=(\d+)$")


def serialize_game(game: Game) -> str:
    """Canonical text form (UTF-8, LF: header lines then one clause per line)."""
    lines = ["xorgame v1", f"k={game.k} n={game.n} m={game.m}"]
    for c in game.clauses:
        lines.append(" ".join(str(q) for q in c.query) + (" +" if c.sign == 1 else " -"))
    return "\n".join(lines) + "\n"


def parse_game(text: str) -> Game:
    """Parse the text form; raises GameFormatError with a line number."""
    lines = text.split("\n")
    if not lines or lines[0].strip() != "xorgame v1":
        raise GameFormatError("expected header 'xorgame v1'", 1)
    if len(lines) < 2:
        raise GameFormatError("missing dimension line 'k=.. n=.. m=..'", 2)
    match = _HEADER_RE.match(lines[1].strip())
    if not match:
        raise GameFormatError(f"bad dimension line {lines[1]!r}", 2)
    k, n, m = (int(g) for g in match.groups())

    clauses = []
    lineno = 2
    for raw in lines[2:]:
        lineno += 1
        if not raw.strip():
            continue
        if len(clauses) == m:
            raise GameFormatError(f"more than m={m} clause lines", lineno)
        parts = raw.split()
        if len(parts) != k + 1:
            raise GameFormatError(f"expected {k} questions and a sign, got {len(parts)} tokens", lineno)
        try:
            query = tuple(int(p) for p in parts[:k])
        except ValueError:
            raise GameFormatError(f"non-integer question in {raw!r}", lineno) from None
        for q in query:
            if not 1 <= q <= n:
                raise GameFormatError(f"question {q} out of range 1..{n}", lineno)
        if parts[k] == "+":
            sign = 1
        elif parts[k] == "-":
            sign = -1
        else:
            raise GameFormatError(f"bad sign token {parts[k]!r} (want + or -)", lineno)
        clauses.append(Clause(query, sign))
    if len(clauses) != m:
        raise GameFormatError(f"expected m={m} clauses, found {len(clauses)}", lineno)
    return Game(k, n, tuple(clauses))


def game_to_json(game: Game) -> str:
    payload = {
        "k": game.k,
        "n": game.n,
        "clauses": [{"q": list(c.query), "s": c.sign} for c in game.clauses],
    }
    return json.dumps(payload)


def game_from_json(text: str) -> Game:
    try:
        payload = json.loads(text)
        clauses = [Clause(tuple(c["q"]), c["s"]) for c in payload["clauses"]]
        return Game(payload["k"], payload["n"], tuple(clauses))
    except (KeyError, TypeError, ValueError) as exc:
        raise GameFormatError(f"bad game JSON: {exc}") from exc


def game_hash(game: Game) -> str:
    """Short content hash used to bind certificates to a game."""
    return hashlib.sha256(serialize_game(game).encode()).hexdigest()[:12]
