"""Command-line front end.

Exit codes: 0 when the command succeeded and every check passed, 1 when a
verified property FAILED (the witness is printed), 2 on input or usage
errors.  All indices in flags and output are 1-based; orbits are written in
brackets, by a member vertex name or the 1-based folded column ([2a] or [2]).
Timing goes to stderr so stdout stays canonical.
"""

from __future__ import annotations

import argparse
import sys
import time

from .errors import ClusterError
from .exchange import parse_sequence, read_matrix, write_matrix
from .seed import g_vector, initial_seed, mutate_seed_sequence, write_seed
from .unfolding import (Covering, orbit_mutate, orbit_sequences,
                        parse_orbit_sequence, read_quiver, standard_covering,
                        verify_covering, verify_projection, write_quiver)
from .verify import (CHECK_NAMES, DEFAULT_BUDGET, DEFAULT_DEPTH, explore,
                     run_checks, to_dot, verify_corpus)


def _read(path: str) -> str:
    with open(path, "r", encoding="utf-8") as fh:
        return fh.read()


def _load_covering(path: str) -> Covering:
    quiver, action = read_quiver(_read(path))
    return Covering.build(quiver, action)


def _parse_checks(text: str):
    if text == "all":
        return CHECK_NAMES
    names = tuple(t for t in text.replace(",", " ").split() if t)
    unknown = set(names) - set(CHECK_NAMES)
    if unknown:
        raise ValueError(f"unknown checks {sorted(unknown)}; choose from {', '.join(CHECK_NAMES)}")
    return names


def cmd_mutate(args) -> int:
    M = read_matrix(_read(args.matrix))
    seq = parse_sequence(args.seq or "", M.n)
    s = mutate_seed_sequence(initial_seed(M), seq, args.budget)
    sys.stdout.write(write_seed(s))
    return 0


def cmd_gvectors(args) -> int:
    M = read_matrix(_read(args.matrix))
    seq = parse_sequence(args.seq or "", M.n)
    s = mutate_seed_sequence(initial_seed(M), seq, args.budget)
    for p in range(1, s.n + 1):
        sys.stdout.write(f"g {p} = " + " ".join(str(c) for c in g_vector(s, p)) + "\n")
    return 0


def cmd_explore(args) -> int:
    M = read_matrix(_read(args.matrix))
    t0 = time.perf_counter()
    res = explore(M, args.depth, args.budget, args.threads)
    if args.dot:
        sys.stdout.write(to_dot(res))
    else:
        sys.stdout.write(f"seeds {len(res.seeds)}\n")
        sys.stdout.write(f"truncated {len(res.truncated)}\n")
        for i, s in enumerate(res.seeds):
            sys.stdout.write((f"seed {i} hist " + " ".join(str(k) for k in s.history)).rstrip() + "\n")
    sys.stderr.write(f"timing: {time.perf_counter() - t0:.3f}s\n")
    return 0


def cmd_verify(args) -> int:
    checks = _parse_checks(args.checks)
    t0 = time.perf_counter()
    if args.matrix:
        matrices = [read_matrix(_read(args.matrix))]
    else:
        matrices = None  # default corpus
    text, stats = verify_corpus(matrices, args.depth, checks, args.budget, args.threads)
    sys.stdout.write(text)
    sys.stderr.write(f"timing: {time.perf_counter() - t0:.3f}s\n")
    return 0 if stats.failed == 0 else 1


def cmd_fold(args) -> int:
    cov = _load_covering(args.quiver)
    sys.stdout.write(write_matrix(cov.folded))
    return 0


def cmd_orbit_mutate(args) -> int:
    quiver, action = read_quiver(_read(args.quiver))
    seq = parse_orbit_sequence(args.seq or "", action)
    for orb in seq:
        quiver = orbit_mutate(quiver, action, orb[0])
    sys.stdout.write(write_quiver(quiver, action))
    return 0


def cmd_verify_covering(args) -> int:
    cov = _load_covering(args.quiver)
    if args.seq:
        sequences = [parse_orbit_sequence(args.seq, cov.action)]
    else:
        sequences = list(orbit_sequences(cov.action, args.depth))
    bad = None
    for seq in sequences:
        repc = verify_covering(cov, seq)
        if not repc.ok:
            bad = repc
            break
    if bad is None:
        sys.stdout.write(f"CHECK covering-commutation PASS\nSEQUENCES {len(sequences)}\n")
        return 0
    witness = " ".join(f"[{o[0]}]" for o in bad.sequence)
    sys.stdout.write(f"CHECK covering-commutation FAIL witness={witness}\n  {bad.message()}\n")
    return 1


def cmd_verify_projection(args) -> int:
    cov = _load_covering(args.quiver)
    seq = parse_orbit_sequence(args.seq or "", cov.action)
    fails = 0
    for v in cov.action.vertices:
        if v in cov.action.frozen:
            continue
        repp = verify_projection(cov, seq, v, args.budget)
        if repp.ok:
            sys.stdout.write(f"CHECK projection PASS witness={_seq_witness(seq)} vertex={v}\n")
        else:
            fails += 1
            sys.stdout.write(f"CHECK projection FAIL witness={_seq_witness(seq)} vertex={v}\n"
                             f"  {repp.message()}\n")
    return 0 if fails == 0 else 1


def _seq_witness(seq) -> str:
    return " ".join(f"[{o[0]}]" for o in seq) if seq else "-"


def cmd_standard_cover(args) -> int:
    M = read_matrix(_read(args.matrix))
    cov = standard_covering(M)
    sys.stdout.write(write_quiver(cov.quiver, cov.action))
    return 0


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(
        prog="clusteralg",
        description="Exact mutation engine and theorem checks for acyclic "
                    "sign-skew-symmetric cluster algebras.")
    sub = ap.add_subparsers(dest="command", required=True)

    def common(p, matrix=False, quiver=False, seq=False, depth=False,
               checks=False, budget=True, threads=False):
        if matrix:
            p.add_argument("--matrix", required=matrix == "required", help="exchange matrix file")
        if quiver:
            p.add_argument("--quiver", required=True, help="quiver file")
        if seq:
            p.add_argument("--seq", default="", help="mutation sequence, e.g. \"1 2 1\" or \"[2] [1]\"")
        if depth:
            p.add_argument("--depth", type=int, default=DEFAULT_DEPTH, help="max sequence length")
        if checks:
            p.add_argument("--checks", default="all",
                           help="comma-separated subset of: " + ", ".join(CHECK_NAMES))
        if budget:
            p.add_argument("--budget", type=int, default=DEFAULT_BUDGET,
                           help="per-seed Laurent term budget")
        if threads:
            p.add_argument("--threads", type=int, default=1, help="frontier workers")

    p = sub.add_parser("mutate", help="mutate the principal seed along --seq and print it")
    common(p, matrix="required", seq=True)
    p.set_defaults(func=cmd_mutate)

    p = sub.add_parser("gvectors", help="print the g-vectors of the seed after --seq")
    common(p, matrix="required", seq=True)
    p.set_defaults(func=cmd_gvectors)

    p = sub.add_parser("explore", help="enumerate seeds up to --depth")
    common(p, matrix="required", depth=True, threads=True)
    p.add_argument("--dot", action="store_true", help="print the exchange graph as DOT text")
    p.set_defaults(func=cmd_explore)

    p = sub.add_parser("verify", help="run checks on --matrix or the default corpus")
    common(p, matrix=True, depth=True, checks=True, threads=True)
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("fold", help="fold a group-acted quiver to its exchange matrix")
    common(p, quiver=True, budget=False)
    p.set_defaults(func=cmd_fold)

    p = sub.add_parser("orbit-mutate", help="apply orbit mutations and print the quiver")
    common(p, quiver=True, seq=True, budget=False)
    p.set_defaults(func=cmd_orbit_mutate)

    p = sub.add_parser("verify-covering",
                       help="check fold commutes with orbit mutation (--seq or all up to --depth)")
    common(p, quiver=True, seq=True, depth=True, budget=False)
    p.set_defaults(func=cmd_verify_covering)

    p = sub.add_parser("verify-projection",
                       help="check covering-side mutation projects onto folded-side mutation")
    common(p, quiver=True, seq=True)
    p.set_defaults(func=cmd_verify_projection)

    p = sub.add_parser("standard-cover", help="build the blow-up covering of --matrix")
    common(p, matrix="required", budget=False)
    p.set_defaults(func=cmd_standard_cover)

    return ap


def main(argv=None) -> int:
    ap = build_parser()
    args = ap.parse_args(argv)
    try:
        return args.func(args)
    except (ClusterError, ValueError, OSError) as exc:
        sys.stderr.write(f"error: {exc}\n")
        return 2


if __name__ == "__main__":
    sys.exit(main())
