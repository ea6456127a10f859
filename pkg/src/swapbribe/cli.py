"""Command-line front end.

Verbs: winners, solve, approx, gen, reduce-pw, check.  Exit codes:
0 feasible/success, 1 infeasible within budget, 2 input error,
3 enumeration cap exceeded, 4 approximation inconclusive.
"""

from __future__ import annotations

import argparse
import random
import sys

from . import reductions, rules, solvers
from .bribery import BriberyInstance
from .elections import winners as compute_winners
from .errors import CapacityError, ParseError, SwapBribeError
from .serialize import (
    parse_instance,
    parse_pw,
    parse_solution,
    parse_source,
    serialize_instance,
    serialize_solution,
)

EXIT_OK = 0
EXIT_INFEASIBLE = 1
EXIT_INPUT = 2
EXIT_CAPACITY = 3
EXIT_INCONCLUSIVE = 4

SOLVE_METHODS = {
    "exact": lambda inst: solvers.exact_oracle(inst),
    "fixed-candidates": lambda inst: solvers.solve_fixed_candidates(inst),
    "fixed-voters": lambda inst: rules.solve_kapproval_fixed_voters(inst),
    "plurality-veto": lambda inst: rules.solve_plurality_veto_swap(inst),
    "kapproval-shift": lambda inst: rules.solve_kapproval_shift(inst),
}


def _read(path: str) -> str:
    if path == "-":
        return sys.stdin.read()
    with open(path, encoding="utf-8") as handle:
        return handle.read()


def _write(path: str | None, text: str) -> None:
    if path is None or path == "-":
        sys.stdout.write(text)
    else:
        with open(path, "w", encoding="utf-8") as handle:
            handle.write(text)


def _load_instance(path: str) -> BriberyInstance:
    return parse_instance(_read(path))


def cmd_winners(args) -> int:
    instance = _load_instance(args.instance)
    cset = instance.election.candidates
    outcome = sorted(compute_winners(instance.election, instance.rule))
    print(" ".join(cset.name(c) for c in outcome))
    return EXIT_OK


def cmd_solve(args) -> int:
    instance = _load_instance(args.instance)
    solution = SOLVE_METHODS[args.method](instance)
    if solution is None:
        print("infeasible within budget", file=sys.stderr)
        return EXIT_INFEASIBLE
    _write(args.out, serialize_solution(solution, instance, solver=args.method))
    return EXIT_OK


def cmd_approx(args) -> int:
    instance = _load_instance(args.instance)
    solution = rules.borda_shift_2approx(instance)
    if solution is None:
        print("approximation inconclusive: no winning bribery found within "
              "budget (an optimum below half the budget would have been "
              "found)", file=sys.stderr)
        return EXIT_INCONCLUSIVE
    _write(args.out, serialize_solution(solution, instance,
                                        solver=args.algorithm))
    return EXIT_OK


def cmd_gen(args) -> int:
    if args.source:
        source = parse_source(_read(args.source))
    else:
        rng = random.Random(args.seed)
        if args.reduction == "bb-kapproval":
            source = reductions.random_bb(args.size, args.cover, rng)
        else:
            source = reductions.random_x3c(args.cover, args.sets, rng)
    if args.reduction == "bb-kapproval":
        if not isinstance(source, reductions.BBInstance):
            raise ParseError(1, "bb-kapproval needs a bb source")
        reduction = reductions.gen_bb_kapproval(source)
    else:
        if not isinstance(source, reductions.X3CInstance):
            raise ParseError(1, f"{args.reduction} needs an x3c source")
        if args.reduction == "x3c-3approval":
            reduction = reductions.gen_x3c_3approval(source, args.kapproval)
        else:
            reduction = reductions.GENERATORS[args.reduction](source)
    label = {True: "yes", False: "no", None: "unknown"}[reduction.expected_feasible]
    header = (f"# reduction: {reduction.kind}\n"
              f"# expected-feasible: {label}\n")
    _write(args.out, header + serialize_instance(reduction.instance))
    return EXIT_OK


def cmd_reduce_pw(args) -> int:
    pw = parse_pw(_read(args.pw))
    instance = solvers.reduce_possible_winner(pw)
    _write(args.out, serialize_instance(instance))
    return EXIT_OK


def cmd_check(args) -> int:
    instance = _load_instance(args.instance)
    solution = parse_solution(_read(args.solution), instance)
    cset = instance.election.candidates
    print(f"replay ok: cost {solution.total_cost}, winners "
          + " ".join(cset.name(c) for c in sorted(solution.resulting_winners)))
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="swapbribe",
        description="Swap/shift bribery solvers and reduction generators",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p_win = sub.add_parser("winners", help="print the winner set")
    p_win.add_argument("instance")
    p_win.set_defaults(func=cmd_winners)

    p_solve = sub.add_parser("solve", help="solve a bribery instance")
    p_solve.add_argument("instance")
    p_solve.add_argument("--method", choices=sorted(SOLVE_METHODS),
                         default="exact")
    p_solve.add_argument("-o", "--out")
    p_solve.set_defaults(func=cmd_solve)

    p_approx = sub.add_parser("approx", help="run an approximation algorithm")
    p_approx.add_argument("instance")
    p_approx.add_argument("--algorithm", choices=["borda-shift-2approx"],
                          default="borda-shift-2approx")
    p_approx.add_argument("-o", "--out")
    p_approx.set_defaults(func=cmd_approx)

    p_gen = sub.add_parser("gen", help="materialize a labeled reduction")
    p_gen.add_argument("--reduction", required=True,
                       choices=sorted(reductions.GENERATORS))
    p_gen.add_argument("--source", help="x3c/bb source document")
    p_gen.add_argument("--cover", type=int, default=2,
                       help="x3c k (or bb biclique size) for random sources")
    p_gen.add_argument("--sets", type=int, default=4,
                       help="number of random x3c sets")
    p_gen.add_argument("--size", type=int, default=3,
                       help="bb side size for random sources")
    p_gen.add_argument("--kapproval", type=int, default=3,
                       help="approval width for x3c-3approval")
    p_gen.add_argument("--seed", type=int, default=0,
                       help="seed for random source generation")
    p_gen.add_argument("-o", "--out")
    p_gen.set_defaults(func=cmd_gen)

    p_pw = sub.add_parser("reduce-pw",
                          help="rewrite possible-winner as zero-budget bribery")
    p_pw.add_argument("pw")
    p_pw.add_argument("-o", "--out")
    p_pw.set_defaults(func=cmd_reduce_pw)

    p_check = sub.add_parser("check", help="replay a solution document")
    p_check.add_argument("instance")
    p_check.add_argument("solution")
    p_check.set_defaults(func=cmd_check)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except ParseError as exc:
        print(f"input error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except CapacityError as exc:
        print(f"capacity exceeded: {exc}", file=sys.stderr)
        return EXIT_CAPACITY
    except FileNotFoundError as exc:
        print(f"input error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except SwapBribeError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())
