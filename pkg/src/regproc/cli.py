"""Command-line interface.

Exit status: 0 for affirmative results, 1 for negative verdicts (not
bisimilar, no LEE, not expressible, proof rejected), 2 for usage and input
errors. JSON output is canonical (sorted keys) so repeated runs are
byte-identical.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from . import graph as graphs
from .bisim import bisimilar, collapse, distinguishing_word
from .chart import EXPRESSION_FIXTURES, chart
from .express import decide_expressible_us1f, extract
from .graph import GraphFormatError, ProcessGraph, to_dot, to_json_obj
from .lee import decide_lee, decide_llee
from .mil import SCRIPT_FIXTURES, ProofError, ProofScript, check_proof, load_script_fixture
from .regex import RegexSyntaxError, classify, parse, render

EXIT_OK, EXIT_NEGATIVE, EXIT_USAGE = 0, 1, 2
INPUT_FIXTURES = tuple(graphs.GRAPH_FIXTURES) + tuple(EXPRESSION_FIXTURES)


class UsageError(Exception):
    pass


class _AddInput(argparse.Action):
    # keeps --expr/--graph/--fixture in command-line order
    def __call__(self, parser, namespace, value, option_string=None):
        items = list(getattr(namespace, self.dest) or [])
        items.append((option_string.lstrip("-"), value))
        setattr(namespace, self.dest, items)


def _add_inputs(p: argparse.ArgumentParser) -> None:
    p.add_argument("--expr", dest="inputs", action=_AddInput, metavar="E", help="regular expression, taken through its chart")
    p.add_argument("--graph", dest="inputs", action=_AddInput, metavar="FILE", help="process graph JSON file")
    p.add_argument("--fixture", dest="inputs", action=_AddInput, metavar="NAME", help=f"built-in input: {', '.join(INPUT_FIXTURES)}")


def _add_format(p: argparse.ArgumentParser, dot: bool = False) -> None:
    g = p.add_mutually_exclusive_group()
    g.add_argument("--json", dest="fmt", action="store_const", const="json", help="JSON output (default)")
    g.add_argument("--pretty", dest="fmt", action="store_const", const="pretty", help="short human-readable summary")
    if dot:
        g.add_argument("--dot", dest="fmt", action="store_const", const="dot", help="Graphviz DOT output")
    p.set_defaults(fmt="json")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="regproc", description="Process semantics of regular expressions.")
    sub = parser.add_subparsers(dest="command", required=True, metavar="COMMAND")

    def command(name, help, inputs=True, dot=False):
        p = sub.add_parser(name, help=help, description=help)
        if inputs:
            _add_inputs(p)
        _add_format(p, dot)
        return p

    command("chart", "chart of an expression (or a graph, passed through)", dot=True)
    command("bisim", "decide bisimilarity of two inputs")
    command("collapse", "bisimulation collapse of an input", dot=True)
    command("langeq", "decide language equivalence of two inputs")
    command("lee", "decide loop existence and elimination (LEE)", dot=True)
    command("llee", "decide layered LEE", dot=True)
    command("express", "decide expressibility by an under-star-1-free expression")
    command("extract", "read an expression off a graph with LLEE")
    p = command("prove", "check a proof script", inputs=False)
    p.add_argument("--script", required=True, metavar="FILE", help=f"JSON proof script (or one of {', '.join(SCRIPT_FIXTURES)})")
    p = sub.add_parser("fixtures", help="list or print built-in fixtures")
    g = p.add_mutually_exclusive_group(required=True)
    g.add_argument("--list", action="store_true")
    g.add_argument("--emit", metavar="NAME")
    command("selftest", "check all built-in fixtures", inputs=False)
    return parser


# -- inputs -----------------------------------------------------------------------


def _load_input(kind: str, value: str) -> tuple[ProcessGraph, str]:
    if kind == "expr":
        e = parse(value)
        return chart(e), render(e)
    if kind == "graph":
        return graphs.load(Path(value).read_bytes()), value
    if value in graphs.GRAPH_FIXTURES:
        return graphs.load_fixture(value), value
    if value in EXPRESSION_FIXTURES:
        return chart(parse(EXPRESSION_FIXTURES[value])), value
    raise UsageError(f"unknown fixture {value!r} (choose from {', '.join(INPUT_FIXTURES)})")


def _inputs(args, count: int) -> list[tuple[ProcessGraph, str]]:
    given = args.inputs or []
    if len(given) != count:
        raise UsageError(f"{args.command} takes {count} input(s) via --expr/--graph/--fixture, got {len(given)}")
    return [_load_input(k, v) for k, v in given]


def _load_script(path: str) -> ProofScript:
    p = Path(path)
    if not p.exists():
        name = p.name.removesuffix(".json")
        if name in SCRIPT_FIXTURES:
            return load_script_fixture(name)
    return ProofScript.loads(p.read_bytes())


# -- output -----------------------------------------------------------------------


def _emit(doc) -> None:
    sys.stdout.write(json.dumps(doc, indent=2, sort_keys=True) + "\n")


def _say(line: str) -> None:
    sys.stdout.write(line + "\n")


def _trace_dot(trace) -> str:
    parts = []
    for i, step in enumerate(trace.steps):
        parts.append(to_dot(step.host, f"step{i}", highlight=step.candidate.entries))
    parts.append(to_dot(trace.final, "final"))
    return "".join(parts)


# -- commands -----------------------------------------------------------------------


def _cmd_chart(args) -> int:
    (g, name), = _inputs(args, 1)
    if args.fmt == "dot":
        sys.stdout.write(to_dot(g))
    elif args.fmt == "pretty":
        _say(f"{name}: {len(g.vertices)} vertices, {len(g.transitions)} transitions, {len(g.terminating)} terminating")
    else:
        _emit(to_json_obj(g))
    return EXIT_OK


def _cmd_bisim(args) -> int:
    (g1, n1), (g2, n2) = _inputs(args, 2)
    verdict = bisimilar(g1, g2)
    if args.fmt == "pretty":
        _say(f"{n1} and {n2}: {'bisimilar' if verdict else 'not bisimilar'}")
    elif verdict:
        _emit({"bisimilar": True, "relation": verdict.to_json_obj()})
    else:
        _emit({"bisimilar": False, "verdict": "not bisimilar", "witness": list(verdict.witness), "rounds": verdict.rounds})
    return EXIT_OK if verdict else EXIT_NEGATIVE


def _cmd_collapse(args) -> int:
    (g, name), = _inputs(args, 1)
    g0, proj = collapse(g)
    if args.fmt == "dot":
        sys.stdout.write(to_dot(g0))
    elif args.fmt == "pretty":
        _say(f"{name}: {len(g.vertices)} vertices collapse to {len(g0.vertices)}")
    else:
        _emit({"collapse": to_json_obj(g0), "projection": dict(sorted(proj.items()))})
    return EXIT_OK


def _cmd_langeq(args) -> int:
    (g1, n1), (g2, n2) = _inputs(args, 2)
    word = distinguishing_word(g1, g2)
    if args.fmt == "pretty":
        _say(f"{n1} and {n2}: " + ("same language" if word is None else f"differ on {' '.join(word) or '(empty word)'}"))
    else:
        _emit({"lang_equiv": word is None, "distinguishing_word": None if word is None else list(word)})
    return EXIT_OK if word is None else EXIT_NEGATIVE


def _cmd_elim(args) -> int:
    (g, name), = _inputs(args, 1)
    layered = args.command == "llee"
    trace = (decide_llee if layered else decide_lee)(g)
    prop = "LLEE" if layered else "LEE"
    if trace is None:
        if args.fmt == "pretty":
            _say(f"{name}: No{prop}")
        elif args.fmt == "dot":
            sys.stdout.write(to_dot(g))
        else:
            _emit({prop.lower(): False, "verdict": f"No{prop}"})
        return EXIT_NEGATIVE
    if args.fmt == "pretty":
        _say(f"{name}: {prop} in {len(trace.steps)} step(s)")
    elif args.fmt == "dot":
        sys.stdout.write(_trace_dot(trace))
    else:
        _emit({prop.lower(): True, "trace": trace.to_json_obj()})
    return EXIT_OK


def _cmd_express(args) -> int:
    (g, name), = _inputs(args, 1)
    verdict = decide_expressible_us1f(g)
    if args.fmt == "pretty":
        _say(f"{name}: " + (f"expressible as {render(verdict.witness)}" if verdict else "not expressible"))
    else:
        _emit(verdict.to_json_obj())
    return EXIT_OK if verdict else EXIT_NEGATIVE


def _cmd_extract(args) -> int:
    (g, name), = _inputs(args, 1)
    trace = decide_llee(g)
    if trace is None:
        if args.fmt == "pretty":
            _say(f"{name}: NoLLEE, nothing to extract")
        else:
            _emit({"expression": None, "verdict": "NoLLEE"})
        return EXIT_NEGATIVE
    e = extract(g, trace)
    if args.fmt == "pretty":
        _say(render(e))
    else:
        _emit({"expression": render(e), "fragment": vars(classify(e))})
    return EXIT_OK


def _cmd_prove(args) -> int:
    script = _load_script(args.script)
    try:
        eq = check_proof(script)
    except ProofError as exc:
        if args.fmt == "pretty":
            _say(f"rejected at {exc.step_id}: {exc.reason}")
        else:
            _emit({"ok": False, "step": exc.step_id, "reason": exc.reason})
        return EXIT_NEGATIVE
    if args.fmt == "pretty":
        _say(f"ok: {eq}")
    else:
        _emit({"ok": True, "lhs": render(eq.lhs), "rhs": render(eq.rhs), "steps": len(script.steps)})
    return EXIT_OK


def _cmd_fixtures(args) -> int:
    if args.list:
        _emit(
            {
                "graphs": list(graphs.GRAPH_FIXTURES),
                "expressions": dict(EXPRESSION_FIXTURES),
                "proof_scripts": list(SCRIPT_FIXTURES),
            }
        )
        return EXIT_OK
    name = args.emit.removesuffix(".json")
    if name in graphs.GRAPH_FIXTURES:
        sys.stdout.write(graphs.fixture_text(name))
    elif name in EXPRESSION_FIXTURES:
        _say(EXPRESSION_FIXTURES[name])
    elif name in SCRIPT_FIXTURES:
        _emit(load_script_fixture(name).to_json_obj())
    else:
        raise UsageError(f"unknown fixture {args.emit!r}")
    return EXIT_OK


def selftest_checks() -> list[tuple[str, bool]]:
    """Fixture checks run by ``selftest``: (description, passed)."""
    fx = {n: graphs.load_fixture(n) for n in graphs.GRAPH_FIXTURES}
    ex = {n: chart(parse(t)) for n, t in EXPRESSION_FIXTURES.items()}
    checks = []
    for n in ("g1ne", "g2ne"):
        checks.append((f"{n}: no LEE", decide_lee(fx[n]) is None))
        checks.append((f"{n}: no LLEE", decide_llee(fx[n]) is None))
        checks.append((f"{n}: not expressible", not decide_expressible_us1f(fx[n])))
    lee3 = decide_llee(fx["lee3"])
    checks.append(("lee3: layered elimination in 3 steps", lee3 is not None and len(lee3.steps) == 3))
    checks.append(("procsemeq1 ~ procsemeq2", bool(bisimilar(ex["procsemeq1"], ex["procsemeq2"]))))
    c1, c2 = collapse(ex["procsemeq1"])[0], collapse(ex["procsemeq2"])[0]
    checks.append(("procsemeq collapse has 3 vertices", len(c1.vertices) == len(c2.vertices) == 3))
    checks.append(("procsemeq collapse ~ witness", bool(bisimilar(c1, ex["procsemeq0"]))))
    checks.append(("rdistr: same language", distinguishing_word(ex["rdistr_left"], ex["rdistr_right"]) is None))
    checks.append(("rdistr: not bisimilar", not bisimilar(ex["rdistr_left"], ex["rdistr_right"])))
    for n in SCRIPT_FIXTURES:
        try:
            eq = check_proof(load_script_fixture(n))
            passed = n == "rspstar_astarb" and bool(bisimilar(chart(eq.lhs), chart(eq.rhs)))
        except ProofError:
            passed = n != "rspstar_astarb"
        checks.append((f"proof script {n}: {'accepted' if n == 'rspstar_astarb' else 'rejected'}", passed))
    return checks


def _cmd_selftest(args) -> int:
    checks = selftest_checks()
    if args.fmt == "pretty":
        for desc, ok in checks:
            _say(f"{'PASS' if ok else 'FAIL'}  {desc}")
    else:
        _emit({"checks": [{"check": d, "passed": ok} for d, ok in checks], "passed": all(ok for _, ok in checks)})
    return EXIT_OK if all(ok for _, ok in checks) else EXIT_NEGATIVE


COMMANDS = {
    "chart": _cmd_chart,
    "bisim": _cmd_bisim,
    "collapse": _cmd_collapse,
    "langeq": _cmd_langeq,
    "lee": _cmd_elim,
    "llee": _cmd_elim,
    "express": _cmd_express,
    "extract": _cmd_extract,
    "prove": _cmd_prove,
    "fixtures": _cmd_fixtures,
    "selftest": _cmd_selftest,
}


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_USAGE if exc.code else EXIT_OK
    try:
        return COMMANDS[args.command](args)
    except (UsageError, RegexSyntaxError, GraphFormatError, OSError) as exc:
        sys.stderr.write(f"regproc {args.command}: {exc}\n")
        return EXIT_USAGE
    except ProofError as exc:
        # malformed script (bad JSON shape or expression), not a rejected proof
        sys.stderr.write(f"regproc {args.command}: malformed script: {exc}\n")
        return EXIT_USAGE
    except json.JSONDecodeError as exc:
        sys.stderr.write(f"regproc {args.command}: invalid JSON: {exc}\n")
        return EXIT_USAGE


run = main

if __name__ == "__main__":
    sys.exit(main())
