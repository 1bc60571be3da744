"""Command line interface.

Exit codes: 0 on success, 1 when the input is well formed but refused
(graph not undecided, verification failed, graph unavailable), 2 when the
input cannot be read or parsed.
"""
from __future__ import annotations

import argparse
import json
import sys
from dataclasses import dataclass
from pathlib import Path

from . import formats
from .config_graph import Unsupported, classify, configuration_graph, is_undecided
from .generators import (
    DEFAULT_MAX_EXT,
    Answer,
    enumerate_basic,
    left_tail_equivalent,
    right_tail_equivalent,
)
from .letter_graphs import (
    DEFAULT_POWER_BOUND,
    DEFAULT_SEG_BOUND,
    NoSubfixingPower,
    NotSegregating,
    Side,
    is_subfixed,
    least_segregating,
    ll_graph,
    ls_graph,
    rl_graph,
    rs_graph,
    subfixing_power,
)
from .words import Substitution, SubstitutionError, is_postfix_free, is_prefix_free, is_primitive
from .zorro import realize, verify_roundtrip

EXIT_OK, EXIT_REFUSED, EXIT_BAD_INPUT = 0, 1, 2
GRAPH_NAMES = ("ll", "rl", "ls", "rs", "config")


@dataclass(frozen=True)
class RunConfig:
    command: str
    path: Path
    power_bound: int = DEFAULT_POWER_BOUND
    seg_bound: int = DEFAULT_SEG_BOUND
    max_ext: int = DEFAULT_MAX_EXT
    output: str = "text"
    which: str = "config"
    trace: bool = False

    def __post_init__(self):
        for name in ("power_bound", "seg_bound"):
            if getattr(self, name) < 1:
                raise ValueError(f"{name} must be positive")
        if self.max_ext < 0:
            raise ValueError("max_ext must be non-negative")


class Refused(Exception):
    pass


def _read(path: Path) -> str:
    try:
        return Path(path).read_text()
    except OSError as exc:
        raise formats.ParseError(f"cannot read {path}: {exc.strerror}") from None


def load_substitution(path: Path) -> Substitution:
    try:
        return formats.parse_substitution(_read(path))
    except SubstitutionError as exc:
        raise formats.ParseError(str(exc)) from None


def load_graph(path: Path):
    return formats.parse_graph(_read(path))


def analyze(sub: Substitution, power_bound: int = DEFAULT_POWER_BOUND,
            seg_bound: int = DEFAULT_SEG_BOUND, max_ext: int = DEFAULT_MAX_EXT) -> dict:
    """Everything the library can say about one substitution, as plain data."""
    prim = is_primitive(sub)
    pre, post = is_prefix_free(sub), is_postfix_free(sub)
    report: dict = {
        "primitive": {"primitive": prim.primitive, "exponent": prim.exponent,
                      "reason": prim.reason},
        "prefix_free": {"free": pre.free, "counterexample": pre.counterexample},
        "postfix_free": {"free": post.free, "counterexample": post.counterexample},
    }
    seg = {}
    reports = {}
    for side in Side:
        r = least_segregating(sub, side, seg_bound)
        reports[side] = r
        adv = r.advisory
        seg[side.value] = {
            "least": r.least, "bound": r.bound,
            "advisory": None if adv is None else {
                "s": adv.s, "P": adv.P, "Q": adv.Q, "value": adv.value, "caveat": adv.caveat},
        }
    report["segregating"] = seg

    graphs: dict = {}
    for name, g in (("ll", ll_graph(sub)), ("rl", rl_graph(sub))):
        graphs[name] = dict(formats.endpoint_map_json(g), subfixed=is_subfixed(g))
    for name, side, build in (("ls", Side.LEFT, ls_graph), ("rs", Side.RIGHT, rs_graph)):
        r = reports[side]
        if r.found:
            g = build(sub, r)
            graphs[name] = dict(formats.endpoint_map_json(g), subfixed=is_subfixed(g), n=r.least)
        else:
            graphs[name] = None
    report["graphs"] = graphs

    try:
        report["subfixing_power"] = {"power": subfixing_power(sub, power_bound, seg_bound)}
    except (NoSubfixingPower, NotSegregating) as exc:
        report["subfixing_power"] = {"power": None, "reason": str(exc)}

    if prim:
        basics = enumerate_basic(sub)
        right_pairs, left_pairs = [], []
        for i, g in enumerate(basics):
            for h in basics[i + 1:]:
                for bucket, test in ((right_pairs, right_tail_equivalent),
                                     (left_pairs, left_tail_equivalent)):
                    verdict = test(g, h, max_ext)
                    if verdict.answer is not Answer.NO:
                        bucket.append({"pair": [str(g), str(h)],
                                       "answer": verdict.answer.value})
        report["basic_generators"] = {
            "generators": [formats.generator_json(g) for g in basics],
            "right_tail_pairs": right_pairs, "left_tail_pairs": left_pairs}
    else:
        report["basic_generators"] = None

    try:
        cg = configuration_graph(sub, power_bound, seg_bound)
        report["configuration_graph"] = formats.configuration_json(cg)
    except Unsupported as exc:
        report["configuration_graph"] = {"unsupported": exc.reason, "detail": exc.detail}
    verdict = classify(sub, power_bound, seg_bound)
    report["verdict"] = {"kind": verdict.kind.value, "text": str(verdict),
                         "certificate": [str(g) for g in verdict.certificate],
                         "reason": verdict.reason}
    return report


def _analysis_text(report: dict) -> str:
    out = []
    p = report["primitive"]
    out.append(f"primitive: {'yes (exponent %d)' % p['exponent'] if p['primitive'] else 'no, ' + p['reason']}")
    for key in ("prefix_free", "postfix_free"):
        r = report[key]
        extra = "" if r["free"] else f" (counterexample {r['counterexample'][0]} / {r['counterexample'][1]})"
        out.append(f"{key.replace('_', '-')}: {'yes' if r['free'] else 'no'}{extra}")
    for side, r in report["segregating"].items():
        least = r["least"] if r["least"] is not None else f"not found up to {r['bound']}"
        line = f"least {side} segregating number: {least}"
        if r["advisory"]:
            a = r["advisory"]
            line += f"  [advisory s={a['s']} P={a['P']} Q={a['Q']} -> {a['value']}; {a['caveat']}]"
        out.append(line)
    for name in ("ll", "rl", "ls", "rs"):
        g = report["graphs"][name]
        if g is None:
            out.append(f"{name}: unavailable")
            continue
        edges = ", ".join(f"{a}->{b}" for a, b in g["edges"])
        out.append(f"{name}{' (n=%d)' % g['n'] if 'n' in g else ''}: {edges}"
                   f"  subfixed={'yes' if g['subfixed'] else 'no'}")
    sp = report["subfixing_power"]
    out.append(f"subfixing power: {sp['power'] if sp['power'] else sp['reason']}")
    bg = report["basic_generators"]
    if bg is not None:
        out.append("basic generators: " + (" ".join(g["text"] for g in bg["generators"]) or "none"))
    cg = report["configuration_graph"]
    if "unsupported" in cg:
        out.append(f"configuration graph: Unsupported({cg['unsupported']})")
    else:
        out.append(f"configuration graph (power {cg['power']}): "
                   f"{len(cg['left'])} left, {len(cg['right'])} right, {len(cg['edges'])} edges")
        for (l, r), gen in zip(cg["edges"], cg["edge_generators"]):
            out.append(f"  {l} -- {r}   {gen}")
    out.append(f"verdict: {report['verdict']['text']}")
    return "\n".join(out) + "\n"


def cmd_analyze(cfg: RunConfig) -> tuple:
    sub = load_substitution(cfg.path)
    report = analyze(sub, cfg.power_bound, cfg.seg_bound, cfg.max_ext)
    if cfg.output == "json":
        return EXIT_OK, json.dumps(report, indent=2) + "\n"
    return EXIT_OK, _analysis_text(report)


def _refuse_decided(g) -> None:
    check = is_undecided(g)
    if not check:
        raise Refused(f"NotUndecided: clause ({check.clause}) fails: {check.detail}")


def cmd_realize(cfg: RunConfig) -> tuple:
    g = load_graph(cfg.path)
    _refuse_decided(g)
    sub, trace = realize(g)
    if cfg.output == "json":
        data = {"substitution": formats.render_substitution(sub), "case": trace.case.value}
        if cfg.trace:
            data["trace"] = trace.lines()
        return EXIT_OK, json.dumps(data, indent=2) + "\n"
    text = formats.render_substitution(sub)
    if cfg.trace:
        text += "".join(f"# {line}\n" for line in trace.lines())
    return EXIT_OK, text


def cmd_verify(cfg: RunConfig) -> tuple:
    g = load_graph(cfg.path)
    _refuse_decided(g)
    report = verify_roundtrip(g, cfg.power_bound)
    if cfg.output == "json":
        data = {"ok": report.ok, "checks": report.checks,
                "substitution": formats.render_substitution(report.substitution),
                "witness": None if report.witness is None else {
                    "left": report.witness.left, "right": report.witness.right}}
        return (EXIT_OK if report.ok else EXIT_REFUSED), json.dumps(data, indent=2) + "\n"
    if not report.ok:
        raise Refused(f"verification failed: {report.first_failure}")
    lines = [f"{name}: ok" for name in report.checks]
    for l, t in report.witness.left.items():
        lines.append(f"left {l} -> {t}")
    for r, t in report.witness.right.items():
        lines.append(f"right {r} -> {t}")
    return EXIT_OK, "\n".join(lines) + "\n"


def cmd_graphs(cfg: RunConfig) -> tuple:
    sub = load_substitution(cfg.path)
    if cfg.which == "config":
        try:
            cg = configuration_graph(sub, cfg.power_bound, cfg.seg_bound)
        except Unsupported as exc:
            raise Refused(f"Unsupported({exc.reason})") from None
        if cfg.output == "json":
            return EXIT_OK, json.dumps(formats.configuration_json(cg), indent=2) + "\n"
        return EXIT_OK, formats.configuration_dot(cg)
    if cfg.which in ("ll", "rl"):
        g = (ll_graph if cfg.which == "ll" else rl_graph)(sub)
    else:
        side = Side.LEFT if cfg.which == "ls" else Side.RIGHT
        r = least_segregating(sub, side, cfg.seg_bound)
        if not r.found:
            raise Refused(f"Unsupported(no {side.value} segregating number up to {cfg.seg_bound})")
        g = (ls_graph if side is Side.LEFT else rs_graph)(sub, r)
    if cfg.output == "json":
        return EXIT_OK, json.dumps(dict(formats.endpoint_map_json(g), subfixed=is_subfixed(g)),
                                   indent=2) + "\n"
    return EXIT_OK, formats.endpoint_map_dot(g, cfg.which)


COMMANDS = {"analyze": cmd_analyze, "realize": cmd_realize,
            "verify": cmd_verify, "graphs": cmd_graphs}


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--power-bound", type=int, default=DEFAULT_POWER_BOUND)
    common.add_argument("--seg-bound", type=int, default=DEFAULT_SEG_BOUND)
    common.add_argument("--max-ext", type=int, default=DEFAULT_MAX_EXT)
    common.add_argument("--format", dest="output", choices=("text", "json", "dot"), default=None)

    parser = argparse.ArgumentParser(
        prog="subgraphs",
        description="Analyze substitutions and realize bipartite graphs as configuration graphs.")
    sub = parser.add_subparsers(dest="command", required=True)
    p = sub.add_parser("analyze", parents=[common], help="analyze a substitution file")
    p.add_argument("path", type=Path)
    p = sub.add_parser("realize", parents=[common], help="build a substitution realizing a graph file")
    p.add_argument("path", type=Path)
    p.add_argument("--trace", action="store_true", help="print the construction steps")
    p = sub.add_parser("verify", parents=[common], help="realize a graph and check the result")
    p.add_argument("path", type=Path)
    p = sub.add_parser("graphs", parents=[common], help="emit one of the graphs of a substitution")
    p.add_argument("path", type=Path)
    p.add_argument("which", choices=GRAPH_NAMES)
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    output = args.output or ("dot" if args.command == "graphs" else "text")
    try:
        cfg = RunConfig(args.command, args.path, args.power_bound, args.seg_bound,
                        args.max_ext, output, getattr(args, "which", "config"),
                        getattr(args, "trace", False))
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_BAD_INPUT
    try:
        code, text = COMMANDS[cfg.command](cfg)
    except formats.ParseError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_BAD_INPUT
    except Refused as exc:
        print(f"refused: {exc}", file=sys.stderr)
        return EXIT_REFUSED
    sys.stdout.write(text)
    return code


if __name__ == "__main__":
    sys.exit(main())
