import math
import random

import pytest

from xorgames import (
    Clause,
    Game,
    GameFormatError,
    GuardExceededError,
    apd,
    capped_ghz,
    game_123,
    game_from_json,
    game_from_matrix,
    game_matrix,
    game_to_json,
    ghz,
    is_symmetric,
    make_game,
    parse_game,
    random_game,
    random_symmetric_game,
    serialize_game,
    small_123,
    symmetrize,
)
from xorgames.games import apd_b_matrix

A_GHZ = [
    [1, 0, 1, 0, 1, 0],
    [0, 1, 0, 1, 1, 0],
    [0, 1, 1, 0, 0, 1],
    [1, 0, 0, 1, 0, 1],
]


# ---------------------------------------------------------------------------
# Types


def test_clause_validation():
    with pytest.raises(ValueError):
        Clause((1, 2), 0)
    with pytest.raises(ValueError):
        Game(2, 2, (Clause((1, 2, 1), 1),))  # wrong arity
    with pytest.raises(ValueError):
        Game(2, 2, (Clause((1, 3), 1),))  # question out of range
    with pytest.raises(ValueError):
        Game(2, 2, ())


# ---------------------------------------------------------------------------
# Game matrix


def test_ghz_matrix_and_signs():
    a, s_hat = game_matrix(ghz())
    assert a == A_GHZ
    assert s_hat == [0, 1, 1, 1]


def test_single_clause_matrix():
    g = make_game(3, 2, [((1, 1, 1), 1)])
    a, s_hat = game_matrix(g)
    assert a == [[1, 0, 1, 0, 1, 0]]
    assert s_hat == [0]


def test_matrix_row_block_structure():
    rng = random.Random(1)
    for _ in range(20):
        g = random_game(rng.randint(1, 4), rng.randint(1, 5), rng.randint(1, 8), rng.random())
        a, _ = game_matrix(g)
        for row in a:
            assert sum(row) == g.k
            for alpha in range(g.k):
                assert sum(row[alpha * g.n : (alpha + 1) * g.n]) == 1


def test_matrix_roundtrip_bijective():
    rng = random.Random(2)
    for seed in range(30):
        g = random_game(rng.randint(1, 4), rng.randint(1, 4), rng.randint(1, 6), seed)
        a, s_hat = game_matrix(g)
        assert game_from_matrix(a, s_hat, g.k, g.n) == g


# ---------------------------------------------------------------------------
# Families


def test_ghz_family_facts():
    g = ghz()
    assert (g.k, g.n, g.m) == (3, 2, 4)
    assert sum(1 for c in g.clauses if c.sign == 1) == 1
    assert is_symmetric(g)


def test_capped_ghz_cg3_clause_list():
    g = capped_ghz(3)
    expected = [
        ((1, 1, 1), -1),
        ((1, 2, 2), +1), ((2, 1, 2), +1), ((2, 2, 1), +1),
        ((2, 3, 3), +1), ((3, 2, 3), +1), ((3, 3, 2), +1),
        ((3, 3, 3), +1),
    ]
    assert [(c.query, c.sign) for c in g.clauses] == expected


def test_capped_ghz_sizes_and_symmetry():
    assert capped_ghz(2).m == 5
    for n in range(2, 7):
        g = capped_ghz(n)
        assert g.m == 3 * n - 1
        assert is_symmetric(g)
    with pytest.raises(ValueError):
        capped_ghz(1)


def test_apd_b_matrix_base_and_recursion():
    assert apd_b_matrix(0) == [[1]]
    assert apd_b_matrix(1) == [[0, 1], [1, 1]]
    for K in range(8):  # entrywise recursion up to B(8)
        b = apd_b_matrix(K)
        nxt = apd_b_matrix(K + 1)
        size = len(b)
        for i in range(size):
            for j in range(size):
                assert nxt[i][j] == 1 - b[i][j]
                assert nxt[i][size + j] == b[i][j]
                assert nxt[size + i][j] == b[i][j]
                assert nxt[size + i][size + j] == b[i][j]


def test_apd_dimensions():
    for K in range(1, 7):
        g = apd(K)
        assert (g.k, g.n, g.m) == (2**K - 1, 2, 2**K)


def test_apd2_matrix_is_ghz_after_column_swaps():
    a, _ = game_matrix(apd(2))
    swapped = []
    for row in a:
        row = list(row)
        row[2], row[5] = row[5], row[2]
        row[3], row[4] = row[4], row[3]
        swapped.append(row)
    assert swapped == A_GHZ


def test_apd_sign_modes():
    assert all(c.sign == 1 for c in apd(3).clauses)
    r1 = apd(3, "random", seed=9)
    r2 = apd(3, "random", seed=9)
    assert r1 == r2
    with pytest.raises(GuardExceededError, match="coset"):
        apd(4, "adversarial")
    with pytest.raises(ValueError):
        apd(3, "bogus")
    with pytest.raises(ValueError):
        apd(0)


def test_123_games():
    g = game_123()
    assert (g.k, g.n, g.m) == (6, 3, 6)
    negatives = [c for c in g.clauses if c.sign == -1]
    assert len(negatives) == 1 and negatives[0].query == (3,) * 6
    assert not is_symmetric(g)

    s = small_123()
    assert (s.k, s.n, s.m) == (3, 3, 6)


# ---------------------------------------------------------------------------
# Random generation and symmetry


def test_random_game_deterministic():
    assert random_game(3, 2, 5, seed=123) == random_game(3, 2, 5, seed=123)
    assert random_game(3, 2, 5, seed=123) != random_game(3, 2, 5, seed=124)


def test_random_symmetric_game_is_symmetric():
    for seed in range(10):
        assert is_symmetric(random_symmetric_game(3, 3, 4, seed))


def test_random_game_marginals():
    # one long stream; every (player, question) count within 3 sigma of m/n
    n = 4
    m = 100_000
    g = random_game(3, n, m, seed=2024)
    sigma = math.sqrt(m * (1 / n) * (1 - 1 / n))
    for alpha in range(3):
        for q in range(1, n + 1):
            count = sum(1 for c in g.clauses if c.query[alpha] == q)
            assert abs(count - m / n) <= 3 * sigma


def test_symmetrize_ghz_fixed_point():
    assert symmetrize(ghz()) == ghz()


def test_symmetrize_single_clause_orbit():
    g = make_game(3, 3, [((1, 2, 3), -1)])
    sym = symmetrize(g)
    assert sym.m == 6
    assert is_symmetric(sym)
    g2 = make_game(3, 3, [((1, 1, 2), 1)])
    assert symmetrize(g2).m == 3  # orbit size divides k!


def test_symmetrize_idempotent():
    for seed in range(10):
        g = random_game(3, 3, 4, seed)
        sym = symmetrize(g)
        assert is_symmetric(sym)
        assert symmetrize(sym) == sym


def test_symmetrize_deduplicates():
    g = make_game(2, 2, [((1, 2), 1), ((1, 2), 1), ((2, 1), 1)])
    assert symmetrize(g).m == 2


# ---------------------------------------------------------------------------
# Text and JSON formats


def test_serialize_ghz():
    text = serialize_game(ghz())
    lines = text.splitlines()
    assert lines[0] == "xorgame v1"
    assert lines[1] == "k=3 n=2 m=4"
    assert lines[2] == "1 1 1 +"
    assert lines[3] == "2 2 1 -"
    assert len(lines) == 6


def test_parse_clause_line():
    g = parse_game("xorgame v1\nk=3 n=3 m=1\n1 2 3 -\n")
    assert g.clauses[0] == Clause((1, 2, 3), -1)


def test_parse_errors_carry_line_numbers():
    with pytest.raises(GameFormatError) as err:
        parse_game("xorgame v1\nk=3 n=3 m=1\n4 1 1 +\n")
    assert err.value.line == 3 and "out of range" in str(err.value)
    with pytest.raises(GameFormatError) as err:
        parse_game("xorgame v1\nk=2 n=2 m=1\n1 1 *\n")
    assert err.value.line == 3 and "sign" in str(err.value)
    with pytest.raises(GameFormatError) as err:
        parse_game("not a game\n")
    assert err.value.line == 1
    with pytest.raises(GameFormatError) as err:
        parse_game("xorgame v1\nk=2 n=2\n1 1 +\n")
    assert err.value.line == 2
    with pytest.raises(GameFormatError):
        parse_game("xorgame v1\nk=2 n=2 m=2\n1 1 +\n")  # missing clause
    with pytest.raises(GameFormatError):
        parse_game("xorgame v1\nk=2 n=2 m=1\n1 1 +\n2 2 -\n")  # extra clause


def test_text_roundtrip_families_and_random():
    games = [ghz(), game_123(), small_123(), capped_ghz(4), apd(3)]
    for seed in range(1000):
        games.append(random_game(seed % 4 + 1, seed % 5 + 1, seed % 7 + 1, seed))
    for g in games:
        assert parse_game(serialize_game(g)) == g


def test_text_roundtrip_whitespace_normalization():
    text = "xorgame v1\nk=2  n=2  m=1\n 1   2  + \n\n"
    g = parse_game(text)
    assert serialize_game(g) == "xorgame v1\nk=2 n=2 m=1\n1 2 +\n"


def test_json_roundtrip():
    for g in [ghz(), capped_ghz(3), random_game(4, 3, 9, seed=5)]:
        assert game_from_json(game_to_json(g)) == g
    with pytest.raises(GameFormatError):
        game_from_json('{"k": 2}')
