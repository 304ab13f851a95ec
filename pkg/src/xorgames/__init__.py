"""Exact toolkit for perfect entangled values of k-player XOR games."""

from .classical import (
    ClassicalRefutation,
    ClassicalStrategy,
    adversarial_signs,
    classical_refutation,
    classical_strategy_value,
    classical_value1,
    classical_value_exact,
    existence_bound,
    sigma2,
)
from .errors import (
    GameFormatError,
    GuardExceededError,
    NotSymmetricError,
    SearchCapExceededError,
    XorGamesError,
)
from .games import (
    Clause,
    Game,
    apd,
    apd_b_matrix,
    capped_ghz,
    game_123,
    game_from_json,
    game_from_matrix,
    game_hash,
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
from .prefmerp import (
    LessThanOne,
    MerpStrategy,
    PrefSpecification,
    Value1,
    decide_symmetric,
    duality_check,
    find_merp,
    find_pref,
    merp_value,
    pref_to_multisets,
)
from .words import (
    RefutationCertificate,
    Word,
    certificate_for,
    induced_pref_vector,
    is_refutation,
    min_refutation_bfs,
    pseudo_expectation,
    reduce_word,
    verify_pref,
    word_from_indices,
)

__all__ = [name for name in dir() if not name.startswith("_")]
