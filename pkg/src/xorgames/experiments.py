"""Random-game experiment harness with seed-deterministic CSV output.

Each experiment maps a config to schema-stable rows. Trial t of any cell
draws from its own stream seeded with (seed + t), so results do not depend
on thread count or evaluation order; rows contain only deterministic
fields (timing goes to the caller's log, never into the CSV).
"""

from __future__ import annotations

import csv
import io
import math
import os
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass

from .builder import build_refutation_symmetric, value_upper_bound_from_refutation
from .errors import SearchCapExceededError
from .games import capped_ghz, random_game
from .classical import classical_value1
from .prefmerp import find_pref
from .words import min_refutation_bfs


@dataclass(frozen=True)
class ExperimentConfig:
    name: str
    k: int = 3
    n_values: tuple[int, ...] = (30,)
    densities: tuple[float, ...] = (3.3,)
    trials: int = 20
    seed: int = 0
    threads: int = 1
    bfs_max_n: int = 2
    bfs_state_cap: int = 2_000_000

    def __post_init__(self):
        if self.trials < 1:
            raise ValueError("trials must be >= 1")
        if any(c <= 0 for c in self.densities):
            raise ValueError("densities must be > 0")


def effective_threads(config: ExperimentConfig) -> int:
    cap = os.environ.get("XORGAMES_THREADS")
    threads = config.threads
    if cap is not None:
        threads = min(threads, max(1, int(cap)))
    return max(1, threads)


def _map_trials(config: ExperimentConfig, fn, trials: int) -> list:
    """fn(trial_index) for each trial; order-stable regardless of threads."""
    threads = effective_threads(config)
    if threads == 1:
        return [fn(t) for t in range(trials)]
    with ThreadPoolExecutor(max_workers=threads) as pool:
        return list(pool.map(fn, range(trials)))


def _fmt(value) -> str:
    if isinstance(value, float):
        return f"{value:.6g}"
    return str(value)


def rows_to_csv(rows: list[dict], columns: list[str]) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(columns)
    for row in rows:
        writer.writerow([_fmt(row[c]) for c in columns])
    return buf.getvalue()


PREF_THRESHOLD_COLUMNS = [
    "experiment", "k", "n", "m", "density", "trials", "seed", "found", "fraction",
]


def experiment_pref_threshold(config: ExperimentConfig) -> list[dict]:
    """Fraction of random k-XOR games admitting a PREF, per (n, density)."""
    rows = []
    for n in config.n_values:
        for density in config.densities:
            m = round(density * n)

            def trial(t: int, n=n, m=m) -> bool:
                game = random_game(config.k, n, m, seed=config.seed + t)
                return find_pref(game) is not None

            outcomes = _map_trials(config, trial, config.trials)
            found = sum(outcomes)
            rows.append({
                "experiment": "pref_threshold",
                "k": config.k, "n": n, "m": m, "density": density,
                "trials": config.trials, "seed": config.seed,
                "found": found, "fraction": found / config.trials,
            })
    return rows


CLASSICAL_SAT_COLUMNS = [
    "experiment", "k", "n", "m", "density", "trials", "seed",
    "satisfiable", "fraction", "csp_satisfiable", "csp_fraction",
]


def _shared_assignment_satisfiable(game) -> bool:
    """Satisfiability when all players must answer from one assignment.

    This is the constraint-satisfaction view of the game (n shared
    variables); its random ensemble shows the sharp SAT threshold. The
    per-player game relaxation is satisfiable whenever this is.
    """
    from .linalg import F2Matrix, f2_solve

    rows = []
    rhs = []
    for c in game.clauses:
        acc = 0
        for q in c.query:
            acc ^= 1 << (q - 1)  # question multiplicity mod 2
        rows.append(acc)
        rhs.append(0 if c.sign == 1 else 1)
    return f2_solve(F2Matrix(tuple(rows), game.n), rhs) is not None


def experiment_classical_sat(config: ExperimentConfig) -> list[dict]:
    """Fractions of random instances with perfect classical value, per cell.

    Reports both the game value (independent per-player answers, via
    classical_value1) and the shared-assignment CSP value. The sharp
    crossover lives in the CSP column; the game column stays satisfiable
    to much higher densities because each player brings fresh variables.
    Fractions are reported, never asserted against the asymptotic
    threshold constant.
    """
    rows = []
    for n in config.n_values:
        for density in config.densities:
            m = max(1, round(density * n))

            def trial(t: int, n=n, m=m) -> tuple[bool, bool]:
                game = random_game(config.k, n, m, seed=config.seed + t)
                return (
                    classical_value1(game) is not None,
                    _shared_assignment_satisfiable(game),
                )

            outcomes = _map_trials(config, trial, config.trials)
            sat = sum(1 for o in outcomes if o[0])
            csp_sat = sum(1 for o in outcomes if o[1])
            rows.append({
                "experiment": "classical_sat",
                "k": config.k, "n": n, "m": m, "density": density,
                "trials": config.trials, "seed": config.seed,
                "satisfiable": sat, "fraction": sat / config.trials,
                "csp_satisfiable": csp_sat, "csp_fraction": csp_sat / config.trials,
            })
    return rows


SHIFT_GADGET_COLUMNS = ["experiment", "n", "m", "density", "trial", "seed", "coverage"]


def wire_coverage(n: int, edges: list[tuple[int, int]]) -> float:
    """Largest-component coverage of the wire-3 side of the bipartite graph.

    Vertices are (letter, wire-3) and (letter, wire-2); each edge joins the
    wire-3 and wire-2 letters of one query. With no edges every vertex is a
    singleton and the coverage is 1/n.
    """
    parent = list(range(2 * n))  # 0..n-1: wire-3 side, n..2n-1: wire-2 side

    def find(x: int) -> int:
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for a, b in edges:
        ra, rb = find(a - 1), find(n + b - 1)
        if ra != rb:
            parent[ra] = rb
    counts: dict[int, int] = {}
    for v in range(n):  # count only wire-3 vertices per component
        r = find(v)
        counts[r] = counts.get(r, 0) + 1
    return max(counts.values()) / n


def experiment_shift_gadget_graph(config: ExperimentConfig) -> list[dict]:
    """Per-trial giant-component coverage of the wire-3/wire-2 letter graph."""
    rows = []
    for n in config.n_values:
        for density in config.densities:
            m = math.ceil(density * n)

            def trial(t: int, n=n, m=m) -> float:
                game = random_game(3, n, m, seed=config.seed + t)
                edges = [(c.query[2], c.query[1]) for c in game.clauses]
                return wire_coverage(n, edges)

            coverages = _map_trials(config, trial, config.trials)
            for t, coverage in enumerate(coverages):
                rows.append({
                    "experiment": "shift_gadget_graph",
                    "n": n, "m": m, "density": density,
                    "trial": t, "seed": config.seed + t,
                    "coverage": coverage,
                })
    return rows


CG_SCALING_COLUMNS = [
    "experiment", "n", "m", "z_norm1", "cert_length", "value_bound",
    "bfs_min_length", "bfs_status",
]


def experiment_cg_scaling(config: ExperimentConfig) -> list[dict]:
    """Witness weight, built-certificate length, value bound, and (small n)
    exact BFS minimum for the capped GHZ family."""
    rows = []
    for n in config.n_values:
        game = capped_ghz(n)
        pref = find_pref(game)
        assert pref is not None
        cert = build_refutation_symmetric(game, pref.z)
        length = len(cert.indices)
        bfs_len: int | str = ""
        if n <= config.bfs_max_n:
            try:
                found = min_refutation_bfs(
                    game, max_len=2 ** (n + 1) - 2, state_cap=config.bfs_state_cap
                )
                bfs_len, status = (found[0], "exact") if found else ("", "none-within-bound")
            except SearchCapExceededError:
                status = "cap-exceeded"
        else:
            status = "skipped"
        rows.append({
            "experiment": "cg_scaling",
            "n": n, "m": game.m,
            "z_norm1": sum(abs(v) for v in pref.z),
            "cert_length": length,
            "value_bound": value_upper_bound_from_refutation(game.m, length),
            "bfs_min_length": bfs_len, "bfs_status": status,
        })
    return rows


EXPERIMENTS = {
    "pref-threshold": (experiment_pref_threshold, PREF_THRESHOLD_COLUMNS),
    "classical-sat": (experiment_classical_sat, CLASSICAL_SAT_COLUMNS),
    "shift-gadget-graph": (experiment_shift_gadget_graph, SHIFT_GADGET_COLUMNS),
    "cg-scaling": (experiment_cg_scaling, CG_SCALING_COLUMNS),
}
