"""Command-line interface.

Exit codes: 0 success / verified / positive decision, 1 not verified /
negative decision, 2 usage error (argparse default).
"""

from __future__ import annotations

import argparse
import json
import sys
import time
from pathlib import Path

from . import builder, classical, experiments, prefmerp, quantum, words
from .errors import XorGamesError
from .games import (
    Game,
    apd,
    capped_ghz,
    game_123,
    game_from_json,
    game_hash,
    game_to_json,
    ghz,
    parse_game,
    random_game,
    random_symmetric_game,
    serialize_game,
    small_123,
)

FAMILIES = "ghz | 123 | small123 | cg:<n> | apd:<K>[:all_plus|random[:seed]|adversarial]"


def resolve_family(name: str) -> Game | None:
    token = name.lower().replace("-", ":")
    if token == "ghz":
        return ghz()
    if token in ("123", "game123"):
        return game_123()
    if token in ("small123", "small:123"):
        return small_123()
    if token.startswith("cg"):
        digits = token[2:].lstrip(":")
        if digits.isdigit():
            return capped_ghz(int(digits))
    if token.startswith("apd"):
        parts = token[3:].lstrip(":").split(":")
        if parts and parts[0].isdigit():
            k_scale = int(parts[0])
            mode = parts[1] if len(parts) > 1 else "all_plus"
            seed = int(parts[2]) if len(parts) > 2 else None
            return apd(k_scale, sign_mode=mode, seed=seed)
    return None


def load_game(spec: str) -> Game:
    path = Path(spec)
    if path.exists():
        text = path.read_text(encoding="utf-8")
        if text.lstrip().startswith("{"):
            return game_from_json(text)
        return parse_game(text)
    game = resolve_family(spec)
    if game is None:
        raise XorGamesError(
            f"{spec!r} is neither a readable file nor a family name ({FAMILIES})"
        )
    return game


def _emit(text: str, out: str | None) -> None:
    if out:
        Path(out).write_text(text, encoding="utf-8")
    else:
        sys.stdout.write(text if text.endswith("\n") else text + "\n")


def _report(payload: dict, fmt: str) -> None:
    if fmt == "json":
        print(json.dumps(payload))
    else:
        for key, value in payload.items():
            print(f"{key}: {value}")


# ---------------------------------------------------------------------------
# Subcommands


def cmd_gen(args) -> int:
    if args.mode == "family":
        game = resolve_family(args.name)
        if game is None:
            print(f"unknown family {args.name!r}; known: {FAMILIES}", file=sys.stderr)
            return 2
    else:
        if args.symmetric:
            game = random_symmetric_game(args.k, args.n, args.m, args.seed)
        else:
            game = random_game(args.k, args.n, args.m, args.seed)
    _emit(game_to_json(game) if args.json else serialize_game(game), args.out)
    return 0


def cmd_decide(args) -> int:
    game = load_game(args.game)
    fmt = args.format
    if args.kind == "classical":
        strategy = classical.classical_value1(game)
        if strategy is not None:
            _report({"decision": "value-1", "strategy_bits": list(strategy.bits)}, fmt)
            return 0
        refutation = classical.classical_refutation(game)
        _report({"decision": "value<1", "refutation_y": list(refutation.y)}, fmt)
        return 1
    if args.kind == "pref":
        pref = prefmerp.find_pref(game)
        if pref is None:
            _report({"decision": "no-pref"}, fmt)
            return 1
        if args.cert_out:
            Path(args.cert_out).write_text(pref.to_json(), encoding="utf-8")
        _report({"decision": "pref", "z": list(pref.z)}, fmt)
        return 0
    if args.kind == "merp":
        merp = prefmerp.find_merp(game)
        if merp is None:
            _report({"decision": "no-merp"}, fmt)
            return 1
        if args.cert_out:
            Path(args.cert_out).write_text(merp.to_json(), encoding="utf-8")
        _report({"decision": "merp-value-1", "theta": [str(t) for t in merp.theta]}, fmt)
        return 0
    # symmetric
    outcome = prefmerp.decide_symmetric(game)
    if isinstance(outcome, prefmerp.Value1):
        if args.cert_out:
            Path(args.cert_out).write_text(outcome.merp.to_json(), encoding="utf-8")
        _report(
            {"decision": "value-1", "theta": [str(t) for t in outcome.merp.theta]}, fmt
        )
        return 0
    if args.cert_out:
        Path(args.cert_out).write_text(outcome.pref.to_json(), encoding="utf-8")
    _report({"decision": "value<1", "z": list(outcome.pref.z)}, fmt)
    return 1


def cmd_refute(args) -> int:
    game = load_game(args.game)
    if args.mode == "build":
        pref = prefmerp.find_pref(game)
        if pref is None:
            print("game has no PREF specification; nothing to build", file=sys.stderr)
            return 1
        cert = builder.build_refutation_symmetric(game, pref.z)
        verified = words.is_refutation(game, cert.indices)
        _emit(cert.to_json(), args.out)
        print(f"length={len(cert.indices)} verified={verified}", file=sys.stderr)
        return 0 if verified else 1
    cert = words.RefutationCertificate.from_json(Path(args.cert).read_text(encoding="utf-8"))
    if cert.game_ref and cert.game_ref != game_hash(game):
        print(f"certificate bound to game {cert.game_ref}, not this one", file=sys.stderr)
        return 1
    ok = words.is_refutation(game, cert.indices)
    print("verified" if ok else "NOT a refutation")
    return 0 if ok else 1


def cmd_value(args) -> int:
    game = load_game(args.game)
    if args.mode == "exact":
        value = classical.classical_value_exact(game)
        _report(
            {"classical_value": str(value), "sigma2": classical.sigma2(game),
             "adversarial_value_bound": classical.existence_bound(game)},
            args.format,
        )
        return 0
    length = args.length
    if length is None and args.cert:
        cert = words.RefutationCertificate.from_json(Path(args.cert).read_text(encoding="utf-8"))
        length = len(cert.indices)
    if length is None:
        print("value bound needs --length or --cert", file=sys.stderr)
        return 2
    bound = builder.value_upper_bound_from_refutation(game.m, length)
    _report({"m": game.m, "refutation_length": length, "entangled_value_bound": bound}, args.format)
    return 0


def cmd_simulate(args) -> int:
    if args.mode == "game123":
        ok = quantum.verify_123()
        print("verified" if ok else "FAILED")
        return 0 if ok else 1
    if not args.game:
        print(f"simulate {args.mode} needs --game", file=sys.stderr)
        return 2
    if args.mode == "custom" and not args.strategy:
        print("simulate custom needs --strategy", file=sys.stderr)
        return 2
    game = load_game(args.game)
    if args.mode == "merp":
        if args.strategy:
            merp = prefmerp.MerpStrategy.from_json(Path(args.strategy).read_text(encoding="utf-8"))
        else:
            found = prefmerp.find_merp(game)
            if found is None:
                print("no perfect MERP strategy exists for this game", file=sys.stderr)
                return 1
            merp = found
        exact, closed = prefmerp.merp_value(game, merp)
        simulated = quantum.simulate_strategy_value(
            game, quantum.merp_assignment(game, merp), quantum.merp_state(game.k)
        )
        _report(
            {"exact_value_1": exact, "closed_form": closed, "simulated": simulated},
            args.format,
        )
        return 0 if exact else 1
    # custom observables
    assignment = quantum.ObservableAssignment.from_json(
        Path(args.strategy).read_text(encoding="utf-8")
    )
    state = quantum.merp_state(game.k)
    value = quantum.simulate_strategy_value(game, assignment, state)
    residual = quantum.max_constraint_residual(game, assignment, state)
    _report({"simulated": value, "max_constraint_residual": residual}, args.format)
    return 0


def cmd_experiment(args) -> int:
    runner, columns = experiments.EXPERIMENTS[args.name]
    config = experiments.ExperimentConfig(
        name=args.name,
        k=args.k,
        n_values=tuple(args.n),
        densities=tuple(args.density),
        trials=args.trials,
        seed=args.seed,
        threads=args.threads,
        bfs_max_n=args.bfs_max_n,
    )
    start = time.perf_counter()
    rows = runner(config)
    elapsed = time.perf_counter() - start
    text = experiments.rows_to_csv(rows, columns)
    _emit(text, args.out)
    print(f"{args.name}: {len(rows)} rows in {elapsed:.2f}s", file=sys.stderr)
    return 0


# ---------------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="xorgames",
        description="Decide, certify, and experiment with entangled XOR games.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p_gen = sub.add_parser("gen", help="emit a game file")
    gen_sub = p_gen.add_subparsers(dest="mode", required=True)
    g_fam = gen_sub.add_parser("family", help=f"named family: {FAMILIES}")
    g_fam.add_argument("--name", required=True)
    g_rand = gen_sub.add_parser("random", help="uniform random game")
    g_rand.add_argument("--k", type=int, required=True)
    g_rand.add_argument("--n", type=int, required=True)
    g_rand.add_argument("--m", type=int, required=True)
    g_rand.add_argument("--seed", type=int, default=0)
    g_rand.add_argument("--symmetric", action="store_true",
                        help="treat --m as base clauses and close under permutations")
    for p in (g_fam, g_rand):
        p.add_argument("--out", default=None)
        p.add_argument("--json", action="store_true", help="emit JSON instead of text")

    p_dec = sub.add_parser("decide", help="decide game properties")
    p_dec.add_argument("kind", choices=["classical", "pref", "merp", "symmetric"])
    p_dec.add_argument("--game", required=True)
    p_dec.add_argument("--format", choices=["text", "json"], default="text")
    p_dec.add_argument("--cert-out", default=None)

    p_ref = sub.add_parser("refute", help="build or verify refutation certificates")
    ref_sub = p_ref.add_subparsers(dest="mode", required=True)
    r_build = ref_sub.add_parser("build")
    r_build.add_argument("--game", required=True)
    r_build.add_argument("--out", default=None)
    r_verify = ref_sub.add_parser("verify")
    r_verify.add_argument("--game", required=True)
    r_verify.add_argument("--cert", required=True)

    p_val = sub.add_parser("value", help="exact classical value / entangled bound")
    p_val.add_argument("mode", choices=["exact", "bound"])
    p_val.add_argument("--game", required=True)
    p_val.add_argument("--length", type=int, default=None, help="refutation length for the bound")
    p_val.add_argument("--cert", default=None)
    p_val.add_argument("--format", choices=["text", "json"], default="text")

    p_sim = sub.add_parser("simulate", help="state-vector strategy checks")
    p_sim.add_argument("mode", choices=["merp", "game123", "custom"])
    p_sim.add_argument("--game", default=None)
    p_sim.add_argument("--strategy", default=None, help="strategy JSON path")
    p_sim.add_argument("--format", choices=["text", "json"], default="text")

    p_exp = sub.add_parser("experiment", help="random-game experiments (CSV)")
    p_exp.add_argument("name", choices=sorted(experiments.EXPERIMENTS))
    p_exp.add_argument("--k", type=int, default=3)
    p_exp.add_argument("--n", type=int, nargs="+", default=[30])
    p_exp.add_argument("--density", type=float, nargs="+", default=[3.3])
    p_exp.add_argument("--trials", type=int, default=20)
    p_exp.add_argument("--seed", type=int, default=0)
    p_exp.add_argument("--threads", type=int, default=1)
    p_exp.add_argument("--bfs-max-n", type=int, default=2)
    p_exp.add_argument("--out", default=None)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    handlers = {
        "gen": cmd_gen,
        "decide": cmd_decide,
        "refute": cmd_refute,
        "value": cmd_value,
        "simulate": cmd_simulate,
        "experiment": cmd_experiment,
    }
    try:
        return handlers[args.command](args)
    except XorGamesError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except FileNotFoundError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
