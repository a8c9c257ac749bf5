"""Command-line front end.

Exit codes: 0 success, 2 a checked claim did not hold, 3 usage error,
4 enumeration budget exceeded.
"""

import argparse
import json
import os
import sys

from . import claims, serialize
from .algorithms import (
    SEEDERS,
    few_chores_efx,
    framework_run,
    three_agent_2efx,
    ttece,
)
from .constructions import (
    partition_reduction,
    random_instance,
    ranking_gap_instance,
    six_chore_instance,
    three_partition_reduction,
)
from .costs import as_cost, cost_to_json, fmt
from .errors import BudgetExceeded, ChoreFairError, ImplementationFault, UsageError
from .fairness import report
from .model import ranking
from .solver import best_efx_ratio

EXIT_OK, EXIT_MISMATCH, EXIT_USAGE, EXIT_BUDGET = 0, 2, 3, 4


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        raise UsageError(message)


def _ints(text):
    try:
        return [int(x) for x in text.split(",") if x.strip()]
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated integers, got {text!r}") from None


def _cost_arg(text):
    try:
        return as_cost(text)
    except (TypeError, ValueError):
        raise argparse.ArgumentTypeError(f"not a non-negative number: {text!r}") from None


def build_parser():
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--seed", type=int, default=argparse.SUPPRESS, help="RNG seed (default 0)")
    common.add_argument("--budget", type=int, default=argparse.SUPPRESS,
                        help="max allocations to enumerate (default $CHOREFAIR_BUDGET or 10^7)")
    common.add_argument("--format", choices=("json", "table"), default=argparse.SUPPRESS)

    p = _Parser(prog="chorefair", description="EFX allocations of indivisible chores.", parents=[common])
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    c = sub.add_parser("check", parents=[common], help="fairness report for an allocation")
    c.add_argument("--instance", required=True)
    c.add_argument("--allocation", required=True)
    c.add_argument("--mms", action="store_true", help="also compute maximin shares")

    s = sub.add_parser("solve", parents=[common], help="exhaustive search for EFX and the best ratio")
    s.add_argument("--exact", action="store_true", help="exhaustive search (the only mode)")
    s.add_argument("--instance", required=True)
    s.add_argument("--workers", type=int, default=1)

    r = sub.add_parser("run", parents=[common], help="run an allocation algorithm")
    r.add_argument("--alg", required=True,
                   help="ttece | framework:<seeder> | few-chores | three-agent; seeders: " + ", ".join(SEEDERS))
    r.add_argument("--instance", required=True)
    r.add_argument("--order", default=None,
                   help="ttece/framework chore order: index, desc:<agent>, or a comma list")
    r.add_argument("--sink", default="lex", choices=("lex",))

    g = sub.add_parser("gen", parents=[common], help="generate an instance")
    g.add_argument("--family", required=True,
                   help="theorem1 | npc | strong-np | observation_cntr | random_additive | "
                        "random_monotone_table | random_ido")
    g.add_argument("--k", type=_cost_arg, default=None)
    g.add_argument("--variant", choices=("literal", "packing"), default="literal",
                   help="theorem1 cost reading; 'packing' is superadditive")
    g.add_argument("--ints", type=_ints, default=None)
    g.add_argument("--n", type=int, default=None)
    g.add_argument("--m", type=int, default=None)
    g.add_argument("--big", default=None, help="finite stand-in for the infinite cost, or 'auto'")
    g.add_argument("--eps", type=_cost_arg, default=None)
    g.add_argument("--as-table", action="store_true", help="expand every cost model to a full table")
    g.add_argument("-o", "--output", default=None)

    v = sub.add_parser("verify-paper", parents=[common], help="re-check the reproducible claims")
    v.add_argument("selector", choices=claims.SELECTORS + ("all",))
    v.add_argument("--k", type=_cost_arg, action="append", default=None)
    v.add_argument("--ints", type=_ints, default=None)
    v.add_argument("--n", type=int, default=2)
    v.add_argument("--trials", type=int, default=None)

    b = sub.add_parser("bench", parents=[common], help="achieved ratios over random instances")
    b.add_argument("--alg", default="three-agent", choices=("three-agent", "few-chores", "framework", "ttece"))
    b.add_argument("--trials", type=int, default=100)
    return p


def _settings(args):
    budget = getattr(args, "budget", None)
    if budget is None and os.environ.get("CHOREFAIR_BUDGET"):
        budget = int(os.environ["CHOREFAIR_BUDGET"])
    return getattr(args, "seed", 0), budget, getattr(args, "format", "json")


def _emit(obj, fmt_name, table_text):
    if fmt_name == "table":
        print(table_text)
    else:
        print(serialize.dumps(obj))


def _order(instance, start, text):
    if text is None or text == "index":
        return None
    rest = start.unallocated(instance.m)
    if text.startswith("desc:"):
        agent = int(text[5:])
        if not 0 <= agent < instance.n:
            raise UsageError(f"no agent {agent}")
        return ranking(instance, agent, rest)
    return _ints(text)


def cmd_check(args, seed, budget, out_format):
    inst = serialize.read_instance(args.instance)
    alloc = serialize.read_allocation(args.allocation, inst)
    rep = report(inst, alloc, with_mms=args.mms, budget=budget)
    _emit(rep.to_json(), out_format, rep.table())
    return EXIT_OK


def cmd_solve(args, seed, budget, out_format):
    inst = serialize.read_instance(args.instance)
    res = best_efx_ratio(inst, budget=budget, workers=args.workers)
    text = "\n".join([
        f"EFX exists: {'YES' if res.efx_allocation is not None else 'NO'}",
        f"best ratio: {fmt(res.best_ratio)}",
        f"argmin allocation: {res.argmin_allocation.to_lists()}",
        f"explored: {res.explored}",
    ])
    _emit(res.to_json(), out_format, text)
    return EXIT_OK


def cmd_run(args, seed, budget, out_format):
    inst = serialize.read_instance(args.instance)
    alg = args.alg
    factor = None
    if alg == "ttece":
        from .model import Allocation

        start = Allocation.empty(inst.n)
        alloc = ttece(inst, start, _order(inst, start, args.order), args.sink)
    elif alg.startswith("framework:"):
        name = alg.split(":", 1)[1]
        if name not in SEEDERS:
            raise UsageError(f"unknown seeder {name!r}; choose from {', '.join(SEEDERS)}")
        seeded = SEEDERS[name](inst)
        res = framework_run(inst, seeded, _order(inst, seeded.partial, args.order), args.sink)
        alloc, factor = res.allocation, res.factor
    elif alg == "few-chores":
        alloc, factor = few_chores_efx(inst), 1
    elif alg == "three-agent":
        alloc, factor = three_agent_2efx(inst), 2
    else:
        raise UsageError(f"unknown algorithm {alg!r}")
    rep = report(inst, alloc)
    obj = {"allocation": serialize.allocation_to_json(alloc), "report": rep.to_json()}
    if factor is not None:
        obj["certified_factor"] = cost_to_json(factor)
    text = f"allocation: {alloc.to_lists()}\n" + rep.table()
    if factor is not None:
        text += f"\ncertified factor: {fmt(factor)}"
    _emit(obj, out_format, text)
    return EXIT_OK


def _need(value, flag, family):
    if value is None:
        raise UsageError(f"--family {family} needs {flag}")
    return value


def cmd_gen(args, seed, budget, out_format):
    fam = args.family
    extra = None
    if fam == "theorem1":
        inst = six_chore_instance(_need(args.k, "--k", fam), args.variant)
    elif fam == "npc":
        inst = partition_reduction(_need(args.ints, "--ints", fam), big=args.big)
    elif fam == "strong-np":
        ints = _need(args.ints, "--ints", fam)
        inst = three_partition_reduction(ints, args.n or len(ints) // 3, big=args.big)
    elif fam == "observation_cntr":
        inst, partial = ranking_gap_instance(
            _need(args.n, "--n", fam), int(_need(args.k, "--k", fam)), _need(args.m, "--m", fam),
            args.big or 100, args.eps if args.eps is not None else as_cost("1/10"))
        extra = serialize.allocation_to_json(partial)
    else:
        params = {"n": _need(args.n, "--n", fam), "m": _need(args.m, "--m", fam)}
        inst = random_instance(fam, seed, **params)
    if args.as_table:
        inst = serialize.as_table_instance(inst)
    obj = serialize.instance_to_json(inst)
    if args.output:
        serialize.write_json(obj, args.output)
        if extra is not None:
            root, ext = os.path.splitext(args.output)
            serialize.write_json(extra, f"{root}.allocation{ext or '.json'}")
    else:
        print(serialize.dumps(obj if extra is None else {"instance": obj, "allocation": extra}))
    return EXIT_OK


def cmd_verify(args, seed, budget, out_format):
    results = claims.verify(args.selector, ks=args.k, ints=args.ints, n=args.n,
                            trials=args.trials, seed=seed, budget=budget)
    failed = sum(not c.ok for c in results)
    text = "\n".join(c.line() for c in results)
    text += f"\n{len(results) - failed} of {len(results)} claims hold"
    _emit({"claims": [c.to_json() for c in results], "failed": failed}, out_format, text)
    return EXIT_MISMATCH if failed else EXIT_OK


def cmd_bench(args, seed, budget, out_format):
    if args.trials <= 0:
        stats = []
    elif args.alg == "three-agent":
        stats = claims.three_agent_suite(args.trials, seed, budget=budget)
    elif args.alg == "few-chores":
        stats = claims.few_chores_suite(args.trials, seed=seed)
    elif args.alg == "framework":
        stats = claims.framework_suite(args.trials, seed)
    else:
        stats = claims.ttece_suite(args.trials, seed)
    rows = [s.to_json() for s in stats]
    text = "\n".join(
        f"{r['name']:<36} trials={r['trials']:<6} failures={r['failures']:<4} "
        f"worst={fmt(as_cost(r['worst_ratio'])):<8} seconds={r['seconds']}"
        for r in rows) or "no trials"
    _emit({"results": rows}, out_format, text)
    return EXIT_OK


COMMANDS = {
    "check": cmd_check,
    "solve": cmd_solve,
    "run": cmd_run,
    "gen": cmd_gen,
    "verify-paper": cmd_verify,
    "bench": cmd_bench,
}


def main(argv=None):
    try:
        args = build_parser().parse_args(argv)
        seed, budget, out_format = _settings(args)
        return COMMANDS[args.command](args, seed, budget, out_format)
    except BudgetExceeded as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_BUDGET
    except ImplementationFault as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_MISMATCH
    except (UsageError, ChoreFairError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except (ValueError, TypeError, json.JSONDecodeError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
