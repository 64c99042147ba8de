"""Batch command-line front end with stable, machine-parsable output.

Exit codes: 0 = success / feasible / classified, 2 = infeasible,
1 = usage or validation error.
"""

from __future__ import annotations

import argparse
import re
import sys

from . import classify as cls
from . import io as fmt
from .birep import bg, is_proper_interval_bigraph
from .digraph import Digraph, GraphError, make_cycle, make_tt, make_tt_minus
from .minmax import FIND_GUARD, Ordering, find_minmax, verify_minmax
from .minmax import make_rc_k12, make_rc_k21
from .solver import (BRUTE_BUDGET, solve_auto, solve_bruteforce, solve_cycle,
                     solve_minmax, _as_cycle)

EXIT_OK = 0
EXIT_ERROR = 1
EXIT_INFEASIBLE = 2


def resolve_target(spec: str) -> Digraph:
    """Expand a built-in target name, or read a digraph file."""
    m = re.fullmatch(r"rc_tt(\d+)", spec)
    if m:
        return make_tt(int(m.group(1))).reflexive_closure()
    m = re.fullmatch(r"rc_ttminus(\d+)", spec)
    if m:
        return make_tt_minus(int(m.group(1))).reflexive_closure()
    if spec == "rc_k12":
        return make_rc_k12()
    if spec == "rc_k21":
        return make_rc_k21()
    m = re.fullmatch(r"cycle(\d+)", spec)
    if m:
        return make_cycle(int(m.group(1)))
    m = re.fullmatch(r"t5_(none|(?:11|22|33|44)+)", spec)
    if m:
        return cls.build_theorem5_digraph(_parse_b(m.group(1)))
    try:
        with open(spec, encoding="utf-8") as handle:
            return fmt.parse_digraph(handle.read())
    except OSError as exc:
        raise GraphError(f"cannot read target {spec!r}: {exc}") from exc


def _parse_b(text: str) -> frozenset[str]:
    if text in ("", "none"):
        return frozenset()
    toks = text.split(",") if "," in text else re.findall(r"\d\d", text)
    return cls.t5_config(toks)


def _read(path: str, parser):
    try:
        with open(path, encoding="utf-8") as handle:
            return parser(handle.read())
    except OSError as exc:
        raise GraphError(f"cannot read {path!r}: {exc}") from exc


def _emit_structure(fs) -> str:
    pairs = " ".join(f"{lab}={v}" for lab, v in fs.embedding)
    return f"{fs.kind} {pairs}"


def _emit_classification(c: cls.Classification, out) -> None:
    print(f"verdict {c.verdict}", file=out)
    print(f"rule {c.rule}", file=out)
    if c.ordering is not None:
        print(f"ordering {c.ordering.serialize()}", file=out)
    if c.witness is not None:
        w = c.witness
        if isinstance(w, cls.ReflexiveCycleWitness):
            print(f"witness reflexive-cycle {' '.join(w.cycle)}", file=out)
            print(f"loop {w.looped}", file=out)
        else:
            print(f"witness bg-forbidden {' '.join(w.subset)}", file=out)
            print(f"structure {_emit_structure(w.structure)}", file=out)
    for note in c.notes:
        print(f"note {note}", file=out)


def _emit_solve(res, out) -> int:
    if not res.feasible:
        print("infeasible", file=out)
        return EXIT_INFEASIBLE
    print(f"cost {res.cost}", file=out)
    for u, i in res.homomorphism.mapping.items():
        print(f"map {u} {i}", file=out)
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="minhom",
        description="Minimum cost homomorphism solving and target classification",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def add(name, **flags):
        p = sub.add_parser(name)
        for flag, kwargs in flags.items():
            p.add_argument(f"--{flag}", **kwargs)
        return p

    add("solve",
        target={"required": True},
        input={"required": True},
        costs={"required": False},
        method={"default": "auto",
                "choices": ("auto", "minmax", "cycle", "brute")},
        ordering={"required": False},
        guard={"type": int, "default": FIND_GUARD})
    add("classify-rmpt", target={"required": True})
    add("classify-tournament", target={"required": True})
    add("classify-t5", b={"required": True})
    add("classify-general", target={"required": True},
        guard={"type": int, "default": FIND_GUARD})
    add("bg", target={"required": True})
    add("pib-check", target={"required": False}, input={"required": False},
        guard={"type": int, "default": 16})
    add("minmax-verify", target={"required": True}, ordering={"required": True})
    add("minmax-find", target={"required": True},
        guard={"type": int, "default": FIND_GUARD})
    add("witness", target={"required": True})
    add("enumerate-rmpt", n={"type": int, "required": True})
    return parser


def run(argv, out=None) -> int:
    out = out or sys.stdout
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_ERROR if exc.code else EXIT_OK
    try:
        return _dispatch(args, out)
    except GraphError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_ERROR


def _dispatch(args, out) -> int:
    cmd = args.command

    if cmd == "solve":
        h = resolve_target(args.target)
        d = _read(args.input, fmt.parse_digraph)
        costs = _read(args.costs, fmt.parse_costs) if args.costs else \
            fmt.parse_costs("")
        if args.method == "auto":
            res = solve_auto(d, h, costs, guard=args.guard)
        elif args.method == "brute":
            res = solve_bruteforce(d, h, costs)
        elif args.method == "cycle":
            cycle_map = _as_cycle(h)
            if cycle_map is None:
                raise GraphError("target is not a directed cycle")
            if any(i != cycle_map[i] for i in h.vertices):
                raise GraphError("cycle method requires canonical vertex names 1..k")
            res = solve_cycle(d, len(h.vertices), costs)
        else:
            if args.ordering:
                ordering = Ordering.parse(args.ordering)
            else:
                ordering = find_minmax(h, guard=args.guard)
                if ordering is None:
                    raise GraphError("target has no Min-Max ordering")
            res = solve_minmax(d, h, ordering, costs)
        return _emit_solve(res, out)

    if cmd == "classify-rmpt":
        _emit_classification(cls.classify_reflexive_mpt(resolve_target(args.target)), out)
        return EXIT_OK

    if cmd == "classify-tournament":
        _emit_classification(cls.classify_tournament_wpl(resolve_target(args.target)), out)
        return EXIT_OK

    if cmd == "classify-t5":
        _emit_classification(cls.classify_theorem5(_parse_b(args.b)), out)
        return EXIT_OK

    if cmd == "classify-general":
        _emit_classification(
            cls.classify_general(resolve_target(args.target), guard=args.guard), out)
        return EXIT_OK

    if cmd == "bg":
        print(fmt.format_bipartite(bg(resolve_target(args.target))), end="", file=out)
        return EXIT_OK

    if cmd == "pib-check":
        if args.input:
            g = _read(args.input, fmt.parse_bipartite)
        elif args.target:
            g = bg(resolve_target(args.target))
        else:
            raise GraphError("pib-check needs --input (bipartite) or --target (digraph)")
        ok, fs = is_proper_interval_bigraph(g, guard=args.guard)
        print(f"verdict {'true' if ok else 'false'}", file=out)
        if fs is not None:
            print(f"witness {_emit_structure(fs)}", file=out)
        return EXIT_OK

    if cmd == "minmax-verify":
        h = resolve_target(args.target)
        ok, pair = verify_minmax(h, Ordering.parse(args.ordering))
        print(f"verdict {'true' if ok else 'false'}", file=out)
        if pair is not None:
            print(f"violating-pair {pair.e[0]}->{pair.e[1]} {pair.f[0]}->{pair.f[1]}",
                  file=out)
        return EXIT_OK

    if cmd == "minmax-find":
        ordering = find_minmax(resolve_target(args.target), guard=args.guard)
        print("none" if ordering is None else f"ordering {ordering.serialize()}",
              file=out)
        return EXIT_OK

    if cmd == "witness":
        w = cls.find_witness(resolve_target(args.target))
        if w is None:
            print("none", file=out)
        elif isinstance(w, cls.ReflexiveCycleWitness):
            print(f"witness reflexive-cycle {' '.join(w.cycle)}", file=out)
            print(f"loop {w.looped}", file=out)
        else:
            print(f"witness bg-forbidden {' '.join(w.subset)}", file=out)
            print(f"structure {_emit_structure(w.structure)}", file=out)
        return EXIT_OK

    if cmd == "enumerate-rmpt":
        graphs = cls.enumerate_rmpt(args.n)
        for idx, h in enumerate(graphs):
            verdict = cls.classify_reflexive_mpt(h).verdict
            arcs = ";".join(f"{t}>{head}" for t, head in h.sorted_arcs())
            print(f"rmpt {idx} arcs={arcs} verdict={verdict}", file=out)
        return EXIT_OK

    raise GraphError(f"unknown command {cmd!r}")


def main() -> None:
    sys.exit(run(sys.argv[1:]))


if __name__ == "__main__":
    main()
