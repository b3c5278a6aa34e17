"""Command-line entry point (``itl``).

Exit codes: 0 success, 1 a verification failed, 2 bad usage or input,
3 a budget ran out before the answer was exact.
"""

from __future__ import annotations

import argparse
import json
import os
import sys

from . import checks
from .constructions import CONSTRUCTIONS, build
from .extremal import Budget, ex_exact, fractional_cover_number, genupper_exponent
from .graphs import GraphError, contract, format_graph, is_sunflower, load_graph
from .inverse import COMPRESSIONS, SearchSpace, default_threads, finiteness_check, inverse_search, verify_host
from .oneuniform import c_constant, reduction_chain_check
from .patterns import Finite, PatternError, parse_pattern

EXIT_OK, EXIT_FAIL, EXIT_USAGE, EXIT_BUDGET = 0, 1, 2, 3


class UsageError(Exception):
    pass


def _budget(args) -> Budget:
    seconds = args.budget_seconds
    if seconds is None and os.environ.get("ITL_BUDGET_SECONDS"):
        try:
            seconds = float(os.environ["ITL_BUDGET_SECONDS"])
        except ValueError:
            raise UsageError("ITL_BUDGET_SECONDS must be a number") from None
    return Budget(max_nodes=args.budget_nodes, max_seconds=seconds)


def _ints(text: str) -> list[int]:
    try:
        return [int(x) for x in text.replace(" ", "").split(",") if x]
    except ValueError:
        raise UsageError(f"expected comma-separated integers, got {text!r}") from None


# -- commands -----------------------------------------------------------------


def cmd_ex(args):
    G = load_graph(args.graph)
    P = parse_pattern(args.pattern)
    res = ex_exact(G, P, _budget(args), fast=not args.generic)
    out = {"graph": args.graph, "pattern": P.literal(), "e": G.e}
    out.update(res.to_json())
    return out, EXIT_OK if res.complete else EXIT_BUDGET


def cmd_inverse(args):
    P = parse_pattern(args.pattern)
    simple = not args.multi
    mult = 1 if simple else args.multmax
    space = SearchSpace(
        simple_only=simple,
        n_max=args.nmax,
        m_max=args.mmax,
        mult_max=mult,
        compression=args.compress,
        require_no_isolated=not args.allow_isolated,
    )
    verdict = finiteness_check(P)
    res = inverse_search(P, args.k, space, _budget(args), threads=args.threads)
    out = res.to_json(timing=args.timing)
    out["finiteness"] = verdict.reason
    code = EXIT_BUDGET if res.status == "budget-exhausted" else EXIT_OK
    return out, code


def cmd_construct(args):
    c = build(args.name, args.params)
    if args.verify:
        if c.pattern is None or c.ex_below is None:
            raise UsageError(f"construction {args.name!r} has no pattern to verify against")
        rep = verify_host(parse_pattern(c.pattern), c.ex_below, c.graph, _budget(args))
    else:
        rep = None
    if args.fmt == "text":
        return format_graph(c.graph), EXIT_OK if rep is None or rep.passed else EXIT_FAIL
    out = {"name": c.name, "params": args.params, "n": c.graph.n, "e": c.graph.e, "expected_e": c.expected_e}
    if c.pattern:
        out["pattern"] = c.pattern
    if rep is not None:
        out["k"] = c.ex_below
        out["ex"] = rep.ex
        out["pass"] = rep.passed and c.graph.e == c.expected_e
    out["graph"] = format_graph(c.graph)
    return out, EXIT_FAIL if rep is not None and not out["pass"] else EXIT_OK


def cmd_ch(args):
    d = _ints(args.seq)
    r = c_constant(d)
    out = r.to_json()
    lo, hi = r.bounds()
    out["bounds"] = [str(lo), str(hi)]
    code = EXIT_OK
    if args.chain is not None:
        rep = reduction_chain_check(d, args.chain)
        out["chain"] = rep.to_json()
        code = EXIT_OK if rep.ok else EXIT_FAIL
    return out, code


def cmd_sunflower(args):
    G = load_graph(args.graph)
    core = is_sunflower(G)
    v = finiteness_check(Finite((G,)))
    out = {
        "graph": args.graph,
        "sunflower": core is not None,
        "core": None if core is None else list(core),
        "infinite_from": v.infinite_from,
        "reason": v.reason,
    }
    return out, EXIT_OK


def cmd_contract(args):
    G = load_graph(args.graph)
    I = _ints(args.vertices)
    C = contract(G, I)
    out = {"graph": args.graph, "I": I, "e": C.e, "contracted": format_graph(C)}
    return out, EXIT_OK


def cmd_rho_star(args):
    H = load_graph(args.graph)
    rho = fractional_cover_number(H)
    out = {"graph": args.graph, "e": H.e, "rho_star": str(rho)}
    try:
        out["exponent"] = str(genupper_exponent(H))
    except ValueError as exc:
        out["exponent"] = None
        out["note"] = str(exc)
    return out, EXIT_OK


def cmd_verify(args):
    profile = "full" if args.full else "quick"
    results = checks.verify_suite(profile, frozenset(args.inject_fault or ()), args.only)
    passed = all(r.passed for r in results)
    out = {
        "profile": profile,
        "pass": passed,
        "checks": [r.to_json(timing=args.timing) for r in results],
    }
    return out, EXIT_OK if passed else EXIT_FAIL


# -- output ------------------------------------------------------------------


def _pretty(obj, indent: int = 0) -> str:
    pad = "  " * indent
    if isinstance(obj, dict):
        if not obj:
            return pad + "{}"
        width = max(len(str(k)) for k in obj)
        lines = []
        for k, v in obj.items():
            if isinstance(v, (dict, list)) and v and any(isinstance(x, (dict, list)) for x in
                                                         (v.values() if isinstance(v, dict) else v)):
                lines.append(f"{pad}{str(k):<{width}} :")
                lines.append(_pretty(v, indent + 1))
            elif isinstance(v, str) and "\n" in v:
                lines.append(f"{pad}{str(k):<{width}} :")
                lines.extend(pad + "  " + ln for ln in v.rstrip("\n").splitlines())
            else:
                lines.append(f"{pad}{str(k):<{width}} : {_scalar(v)}")
        return "\n".join(lines)
    if isinstance(obj, list):
        if not obj:
            return pad + "[]"
        parts = []
        for x in obj:
            if isinstance(x, dict):
                parts.append(_pretty(x, indent))
            elif isinstance(x, list) and any(isinstance(y, dict) for y in x):
                parts.append(_pretty(x, indent + 1))
            else:
                parts.append(pad + _scalar(x))
        # blank line between records so lists of checks or hosts stay readable
        sep = "\n\n" if any(isinstance(x, dict) for x in obj) else "\n"
        return sep.join(parts)
    return pad + _scalar(obj)


def _scalar(v) -> str:
    if isinstance(v, (list, dict)):
        return json.dumps(v)
    if v is None:
        return "-"
    return str(v)


def emit(obj, pretty: bool) -> None:
    if isinstance(obj, str):
        sys.stdout.write(obj)
    elif pretty:
        print(_pretty(obj))
    else:
        print(json.dumps(obj, ensure_ascii=False, separators=(",", ":")))


# -- parser ------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    fmt = argparse.ArgumentParser(add_help=False)
    g = fmt.add_mutually_exclusive_group()
    g.add_argument("--json", dest="pretty", action="store_false", help="JSON output (default)")
    g.add_argument("--pretty", dest="pretty", action="store_true", help="aligned text output")
    fmt.set_defaults(pretty=False)

    budget = argparse.ArgumentParser(add_help=False)
    budget.add_argument("--budget-seconds", type=float, default=None,
                        help="wall-clock budget (default: $ITL_BUDGET_SECONDS, else unlimited)")
    budget.add_argument("--budget-nodes", type=int, default=None, help="search-node budget")

    p = argparse.ArgumentParser(prog="itl", description="Exact Turán and inverse Turán numbers of small (hyper)graphs.")
    sub = p.add_subparsers(dest="command", required=True)

    s = sub.add_parser("ex", parents=[fmt, budget], help="ex(G, P) with a witness")
    s.add_argument("graph", help="graph file or literal such as K5, K3,3, 2K7")
    s.add_argument("pattern", help="K3, P3, cycles, even-cycles, P1uP2, P3K3, dumbbell, oneuniform:2,2, ...")
    s.add_argument("--generic", action="store_true", help="skip closed-form solvers")
    s.set_defaults(func=cmd_ex)

    s = sub.add_parser("inverse", parents=[fmt, budget], help="E_P(k) by host enumeration")
    s.add_argument("pattern")
    s.add_argument("k", type=int)
    s.add_argument("--nmax", type=int, default=8)
    s.add_argument("--mmax", type=int, default=12)
    s.add_argument("--multmax", type=int, default=3, help="multiplicity cap with --multi")
    s.add_argument("--compress", choices=COMPRESSIONS, default=None)
    mode = s.add_mutually_exclusive_group()
    mode.add_argument("--simple", dest="multi", action="store_false", help="simple hosts (default)")
    mode.add_argument("--multi", dest="multi", action="store_true", help="multigraph hosts")
    s.set_defaults(multi=False)
    s.add_argument("--allow-isolated", action="store_true", help="also report hosts padded with isolated vertices")
    s.add_argument("--threads", type=int, default=default_threads())
    s.add_argument("--timing", action="store_true", help="include seconds and ex-call counts (output is then not reproducible)")
    s.set_defaults(func=cmd_inverse)

    s = sub.add_parser("construct", parents=[fmt, budget], help="generate a named host")
    s.add_argument("name", choices=CONSTRUCTIONS)
    s.add_argument("params", nargs="*", type=int)
    s.add_argument("--text", dest="fmt", action="store_const", const="text", default="report",
                   help="print only the graph in the text format")
    s.add_argument("--verify", action="store_true", help="check ex against the construction's pattern")
    s.set_defaults(func=cmd_construct)

    s = sub.add_parser("ch", parents=[fmt], help="c_H for a 1-uniform pattern d_1,...,d_t")
    s.add_argument("seq")
    s.add_argument("--chain", type=int, metavar="K", help="also evaluate the reduction chain at k = K")
    s.set_defaults(func=cmd_ch)

    s = sub.add_parser("sunflower", parents=[fmt], help="sunflower test and finiteness of E_G(k)")
    s.add_argument("graph")
    s.set_defaults(func=cmd_sunflower)

    s = sub.add_parser("contract", parents=[fmt], help="merge a vertex set into one vertex")
    s.add_argument("graph")
    s.add_argument("vertices", help="comma-separated vertex indices")
    s.set_defaults(func=cmd_contract)

    s = sub.add_parser("rho-star", parents=[fmt], help="fractional cover number and copy-count exponent")
    s.add_argument("graph")
    s.set_defaults(func=cmd_rho_star)

    s = sub.add_parser("verify-paper", parents=[fmt], help="run the regression battery")
    prof = s.add_mutually_exclusive_group()
    prof.add_argument("--quick", action="store_true", help="trimmed ranges (default)")
    prof.add_argument("--full", action="store_true", help="the whole battery")
    s.add_argument("--only", nargs="+", choices=list(checks.CHECKS), metavar="TAG")
    s.add_argument("--inject-fault", action="append", choices=checks.FAULTS,
                   help="corrupt a formula to confirm the battery notices")
    s.add_argument("--timing", action="store_true")
    s.set_defaults(func=cmd_verify)
    return p


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        out, code = args.func(args)
    except (UsageError, GraphError, PatternError, ValueError, KeyError, OSError) as exc:
        msg = exc.args[0] if isinstance(exc, KeyError) and exc.args else exc
        print(f"itl {args.command}: error: {msg}", file=sys.stderr)
        return EXIT_USAGE
    emit(out, args.pretty)
    return code


if __name__ == "__main__":
    sys.exit(main())
