"""Command-line front end: ``eqtc <subcommand> ...``.

Exit status: 0 success, 1 input error, 2 budget exceeded, 3 the bounds
session found an inconsistency.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from . import __version__
from .bounds import (DEFAULT_CEILING, DEFAULT_MAX_N, Session, cat_g, load_facts, parse_quantity,
                     rule_registry, tc, tc_g, tc_inv)
from .errors import BudgetError, EqtcError, InputError, InvalidActionError
from .linalg import Field
from .moment_angle import profile
from .orbit import (DEFAULT_MAX_ORDER, action_facts, is_g_connected, load_action, orbit_classes,
                    quotient_complex)
from .ring import DEFAULT_MAX_TENSOR_DIM, build_ring, cup_length, cup_length_bound, zcl, zcl_fact
from .simplicial import load_complex, reduced_cohomology


EXIT_OK, EXIT_INPUT, EXIT_BUDGET, EXIT_INCONSISTENT = 0, 1, 2, 3


def _read(path: str) -> str:
    try:
        return sys.stdin.read() if path == "-" else Path(path).read_text()
    except OSError as exc:
        raise InputError(f"cannot read {path}: {exc.strerror}") from None


def _json(text: str, path: str):
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise InputError(f"{path}: line {exc.lineno}, column {exc.colno}: {exc.msg}") from None


def _dump(doc) -> str:
    return json.dumps(doc, indent=2, sort_keys=False) + "\n"


def _is_action(text: str) -> bool:
    s = text.lstrip()
    return s.startswith("{") and "generators" in _json(text, "input")


# -- fact emission shared by `bounds` and `report` ---------------------------------


def complex_judgments(K, field: Field, args, space: str = "Z_K") -> tuple[list, list]:
    """Module emissions for Z_K and the quantities worth querying."""
    prof = profile(K, field, space, args.max_vertices)
    judgments = list(prof.facts())
    R = build_ring(K, field, args.max_vertices)
    judgments.append(cup_length_bound(space, R))
    for n in range(2, args.max_n + 1):
        try:
            judgments.append(zcl_fact(space, n, zcl(R, n, args.max_tensor_dim)))
        except BudgetError as exc:
            # fewer facts only widens intervals, so skipping stays sound
            print(f"eqtc: ring: zcl_{n} skipped: {exc}", file=sys.stderr)
            break
    G = prof.group
    queries = [cat_g(space, G)] + [tc_g(space, G, n) for n in range(2, args.max_n + 1)]
    return judgments, queries


def action_judgments(action, space: str, group: str, args, quotient_name=None) -> tuple[list, list]:
    facts = action_facts(action, space, group, args.strict_g_connected, quotient_name)
    queries = [cat_g(space, group)]
    for n in range(2, args.max_n + 1):
        queries += [tc_g(space, group, n), tc_inv(space, group, n)]
    return facts, queries


def _session(args) -> Session:
    return Session(ceiling=args.ceiling, max_n=args.max_n, sharp_zcl=args.sharp_zcl)


def _finish_session(s: Session, args, out: list[str]) -> int:
    s.saturate()
    out.append(s.report("json" if args.out == "json" else "markdown"))
    for q in args.explain or []:
        out.append(s.explain(parse_quantity(q)).render())
    if args.save_facts:
        Path(args.save_facts).write_text(_dump(s.to_json()))
    return EXIT_INCONSISTENT if s.inconsistencies else EXIT_OK


# -- subcommands ---------------------------------------------------------------------


def cmd_analyze_complex(args, out: list[str]) -> int:
    K = load_complex(_read(args.path))
    f = Field.parse(args.field)
    cb = reduced_cohomology(K, f)
    ranks = {d: cb.rank(d) for d in cb.nonzero_degrees()}
    if args.out == "json":
        out.append(_dump({
            "complex": K.to_json(), "dim": K.dim, "vertices": list(K.vertices), "ghosts": list(K.ghosts),
            "f_vector": K.f_vector(), "euler_characteristic": K.euler_characteristic(),
            "field": f.name, "reduced_cohomology": {str(d): r for d, r in ranks.items()},
        }))
        return EXIT_OK
    lines = [
        f"# Complex `{K.to_text()}`", "",
        f"- m = {K.m}, dim = {K.dim}",
        f"- ghost vertices: {list(K.ghosts) or 'none'}",
        f"- f-vector (from dim 0): {K.f_vector()}",
        f"- Euler characteristic: {K.euler_characteristic()}",
        f"- reduced cohomology over {f.name}:",
    ]
    lines += [f"  - rank H~^{d} = {r}" for d, r in ranks.items()] or ["  - all zero"]
    out.append("\n".join(lines) + "\n")
    return EXIT_OK


def cmd_moment_angle(args, out: list[str]) -> int:
    K = load_complex(_read(args.path))
    prof = profile(K, Field.parse(args.field), max_vertices=args.max_vertices)
    out.append(_dump(prof.to_json()) if args.out == "json" else prof.to_markdown())
    return EXIT_OK


def cmd_ring(args, out: list[str]) -> int:
    K = load_complex(_read(args.path))
    R = build_ring(K, Field.parse(args.field), args.max_vertices).check()
    zcls: dict[int, int | None] = {}
    for n in range(2, args.max_n + 1):
        try:
            zcls[n] = zcl(R, n, args.max_tensor_dim)
        except BudgetError:
            if n == 2:
                raise
            zcls[n] = None
    cl = cup_length(R)
    if args.out == "json":
        doc = R.to_json()
        doc.update(cup_length=cl, zcl={str(n): v for n, v in zcls.items()})
        out.append(_dump(doc))
        return EXIT_OK
    lines = [f"# Cohomology ring of Z_K for `{K.to_text()}`", "", R.to_markdown(), f"cup length: {cl}", ""]
    for n, v in zcls.items():
        lines.append(f"zcl_{n}: {v if v is not None else 'over budget'}")
    out.append("\n".join(lines) + "\n")
    return EXIT_OK


def cmd_orbit(args, out: list[str]) -> int:
    data = _json(_read(args.path), args.path)
    action, space, group = load_action(data, args.max_order)
    qname = data.get("quotient")
    diagram = orbit_classes(action, space, group)
    facts, queries = action_judgments(action, space, group, args, qname)
    s = _session(args).extend(facts)
    for q in queries:
        s.query(q)
    s.saturate()
    derived = [f"{q} {s.interval(q)}" for q in queries if not s.interval(q).is_top]
    if args.out == "dot":
        out.append(diagram.to_dot([str(f) for f in facts] + derived))
    elif args.out == "json":
        doc = diagram.to_json()
        doc.update(subdivisions=action.subdivisions, group_order=action.group.order,
                   facts=[f.to_json() for f in facts], bounds=derived)
        try:
            doc["quotient"] = quotient_complex(action).to_json()
        except InvalidActionError:
            doc["quotient"] = None
        out.append(_dump(doc))
    else:
        conn = is_g_connected(action, args.strict_g_connected)
        lines = [f"# Orbit diagram of {group} on {space}", "",
                 f"- group order {action.group.order}, barycentric subdivisions applied: {action.subdivisions}",
                 f"- {group}-connected: {'yes' if conn.connected else 'no'}",
                 f"- orbit classes: {len(diagram.classes)}, minimal: {len(diagram.minimal)}",
                 "- Hasse edges: " + (", ".join(f"{a} > {b}" for a, b in diagram.edges) or "none"),
                 "", "Facts:"]
        lines += [f"- {f}" for f in facts] + ["", "Bounds:"] + [f"- {d}" for d in derived]
        out.append("\n".join(lines) + "\n")
    if args.save_facts:
        Path(args.save_facts).write_text(_dump(s.to_json()))
    return EXIT_INCONSISTENT if s.inconsistencies else EXIT_OK


def cmd_bounds(args, out: list[str]) -> int:
    s = _session(args)
    for path in args.facts:
        data = _json(_read(path), path)
        if isinstance(data, dict):
            s.extend(load_facts(data.get("facts", [])))
            for q in data.get("queries", []):
                s.query(q)
        else:
            s.extend(load_facts(data))
    if args.complex:
        judgments, queries = complex_judgments(load_complex(_read(args.complex)), Field.parse(args.field), args)
        s.extend(judgments)
        for q in queries:
            s.query(q)
    if args.action:
        data = _json(_read(args.action), args.action)
        action, space, group = load_action(data, args.max_order)
        facts, queries = action_judgments(action, space, group, args, data.get("quotient"))
        s.extend(facts)
        for q in queries:
            s.query(q)
    for q in args.query or []:
        s.query(q)
    return _finish_session(s, args, out)


def cmd_report(args, out: list[str]) -> int:
    text = _read(args.path)
    s = _session(args)
    f = Field.parse(args.field)
    action_paths = [args.action] if args.action else []
    if _is_action(text):
        action_paths.insert(0, args.path)
        K = load_action(_json(text, args.path), args.max_order)[0].original
    else:
        K = load_complex(text)
    judgments, queries = complex_judgments(K, f, args)
    s.extend(judgments)
    for q in queries:
        s.query(q)
    for n in range(2, args.max_n + 1):
        s.query(tc("Z_K", n))
    for path in action_paths:
        data = _json(text if path == args.path else _read(path), path)
        action, space, group = load_action(data, args.max_order)
        facts, qs = action_judgments(action, space, group, args, data.get("quotient"))
        s.extend(facts)
        for q in qs:
            s.query(q)
    return _finish_session(s, args, out)


# -- parser ----------------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--field", default="Q", help="Q (default) or F_p for a prime p <= 97")
    common.add_argument("--out", choices=["markdown", "json", "dot"], default="markdown")
    common.add_argument("--strict-g-connected", action="store_true",
                        help="treat empty fixed sets as failing G-connectedness")
    common.add_argument("--sharp-zcl", action="store_true", help="enable rule R18b (zcl + 1 <= TC_n)")
    common.add_argument("--ceiling", type=int, default=DEFAULT_CEILING, help="largest finite interval endpoint")
    common.add_argument("--max-n", type=int, default=DEFAULT_MAX_N, help="instantiate n-indexed rules for n = 2..N")
    common.add_argument("--max-vertices", type=int, default=12, help="budget for 2^m subset enumerations")
    common.add_argument("--max-tensor-dim", type=int, default=DEFAULT_MAX_TENSOR_DIM, help="budget for dim(H)^n in zcl")
    common.add_argument("--max-order", type=int, default=DEFAULT_MAX_ORDER, help="largest group order accepted")
    common.add_argument("--save-facts", metavar="FILE", help="write the asserted judgments as a facts file")
    common.add_argument("--explain", action="append", metavar="QUANTITY",
                        help="print the derivation tree of a quantity, e.g. 'TC_{S1,3}(S3)'")

    p = argparse.ArgumentParser(prog="eqtc", description="Equivariant category and topological complexity bounds.")
    p.add_argument("--version", action="store_true", help="print the version and the rule registry")
    sub = p.add_subparsers(dest="command")

    for name, func, helptext in [
        ("analyze-complex", cmd_analyze_complex, "simplicial statistics and reduced cohomology"),
        ("moment-angle", cmd_moment_angle, "cat, k-matrix bound and Betti numbers of Z_K"),
        ("ring", cmd_ring, "multiplication table of H*(Z_K), cup length and zcl"),
        ("orbit", cmd_orbit, "orbit diagram and facts of a group action (JSON input)"),
        ("report", cmd_report, "complex [+ action] to saturated bounds"),
    ]:
        sp = sub.add_parser(name, parents=[common], help=helptext)
        sp.add_argument("path", help="input file, or - for stdin")
        if name == "report":
            sp.add_argument("--action", help="action JSON on the same complex")
        sp.set_defaults(func=func)

    sp = sub.add_parser("bounds", parents=[common], help="saturate facts files and report intervals")
    sp.add_argument("facts", nargs="*", help="facts files (JSON list or saved session)")
    sp.add_argument("--complex", help="add moment-angle and ring judgments for this complex")
    sp.add_argument("--action", help="add orbit judgments for this action")
    sp.add_argument("--query", action="append", metavar="QUANTITY", help="always report this quantity")
    sp.set_defaults(func=cmd_bounds)
    return p


def _origin(exc: BaseException) -> str:
    """Name of the innermost package module the exception passed through."""
    mod, tb = "cli", exc.__traceback__
    while tb is not None:
        name = tb.tb_frame.f_globals.get("__name__", "")
        if name.startswith("eqtc."):
            mod = name.split(".", 1)[1]
        tb = tb.tb_next
    return mod


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    if args.version:
        sys.stdout.write(f"eqtc {__version__}\n\nRules:\n{rule_registry()}")
        return EXIT_OK
    if not args.command:
        parser.print_help(sys.stderr)
        return EXIT_INPUT
    out: list[str] = []
    try:
        Field.parse(args.field)
        if args.out == "dot" and args.command != "orbit":
            raise InputError("--out dot is only available for the orbit subcommand")
        status = args.func(args, out)
    except BudgetError as exc:
        print(f"eqtc: {_origin(exc)}: budget exceeded: {exc}", file=sys.stderr)
        return EXIT_BUDGET
    except EqtcError as exc:
        print(f"eqtc: {_origin(exc)}: {exc}", file=sys.stderr)
        return EXIT_INPUT
    sys.stdout.write("".join(out))
    if status == EXIT_INCONSISTENT:
        print("eqtc: bounds: inconsistent judgments (see report)", file=sys.stderr)
    return status


if __name__ == "__main__":
    sys.exit(main())
