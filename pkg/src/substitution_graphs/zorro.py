"""The Zorro construction: from an undecided bipartite multigraph to a
primitive aperiodic substitution whose configuration graph is that graph.

Every undecided graph contains one of three small graphs:

    Z: 1-2, 3-2, 3-4        W: 1-2, 1-3, 5-4, 6-4        E: 1=2 (double edge)

Each has a frozen initial substitution realizing it. Remaining vertices get
fresh letters whose images follow a left or right pattern, missing first
edges become two-letter words at the insertion point, and missing parallel
edges become fresh one-letter generators.
"""
from __future__ import annotations

from collections import Counter
from dataclasses import dataclass, field
from enum import Enum

from .config_graph import (
    LEFT,
    RIGHT,
    BipartiteMultigraph,
    ConfigurationGraph,
    Isomorphism,
    Periodicity,
    PeriodicityVerdict,
    Unsupported,
    classify,
    configuration_graph,
    is_undecided,
    isomorphic,
)
from .letter_graphs import DEFAULT_POWER_BOUND, NotSegregating, l2_fast, letter_graphs
from .words import (
    Substitution,
    is_postfix_free,
    is_prefix_free,
    is_primitive,
    language_n,
    letter_token,
)


class NotUndecided(ValueError):
    def __init__(self, check):
        super().__init__(f"graph is not undecided: clause ({check.clause}) fails, {check.detail}")
        self.clause = check.clause
        self.detail = check.detail


class Case(Enum):
    Z = "Z"
    W = "W"
    E = "E"


@dataclass(frozen=True)
class CaseData:
    case: Case
    images: dict          # letter id -> image letter ids, insertion letter without its split
    insertion_letter: int
    insertion_offset: int
    left_roles: tuple
    right_roles: tuple
    role_edges: tuple     # (left role, right role) with repetition for multiplicity
    left_pattern: tuple   # (prefix, repeated letter, suffix)
    right_pattern: tuple
    base_count: int
    bridge: int | None = None

    def left_word(self, count: int) -> list:
        pre, rep, suf = self.left_pattern
        return list(pre) + [rep] * count + list(suf)

    def right_word(self, count: int) -> list:
        pre, rep, suf = self.right_pattern
        return list(pre) + [rep] * count + list(suf)


def _case(case, table, insertion, left_roles, right_roles, role_edges,
          left_pattern, right_pattern, base, bridge=None):
    images = {}
    offset = None
    for letter, text in table.items():
        if letter == insertion:
            offset = text.index("|")
            text = text.replace("|", "")
        images[letter] = tuple(int(c) for c in text)
    lp = (tuple(map(int, left_pattern[0])), int(left_pattern[1]), tuple(map(int, left_pattern[2])))
    rp = (tuple(map(int, right_pattern[0])), int(right_pattern[1]), tuple(map(int, right_pattern[2])))
    return CaseData(case, images, insertion, offset, left_roles, right_roles,
                    role_edges, lp, rp, base, bridge)


CASES = {
    Case.Z: _case(
        Case.Z,
        {1: "22451", 2: "245133", 3: "2224513", 4: "451333", 5: "222245|13333"},
        insertion=5, left_roles=(1, 3), right_roles=(2, 4),
        role_edges=((1, 2), (3, 2), (3, 4)),
        left_pattern=("", "2", "45"), right_pattern=("51", "3", ""), base=5),
    Case.W: _case(
        Case.W,
        {1: "423761", 2: "237651", 3: "376551", 4: "43765551",
         5: "4223765", 6: "4222376", 7: "223747|17655"},
        insertion=7, left_roles=(1, 5, 6), right_roles=(2, 3, 4),
        role_edges=((1, 2), (1, 3), (5, 4), (6, 4)),
        left_pattern=("4", "2", "37"), right_pattern=("76", "5", "1"), base=4, bridge=7),
    Case.E: _case(
        Case.E,
        {1: "2534251", 2: "2513451", 3: "2534253", 4: "4513451", 5: "251134|342251"},
        insertion=5, left_roles=(1,), right_roles=(2,),
        role_edges=((1, 2), (1, 2)),
        left_pattern=("25", "1", "34"), right_pattern=("34", "2", "51"), base=3),
}


def detect_case(g: BipartiteMultigraph) -> tuple:
    """Pick the case and embed its roles into ``g``; precedence Z, E, W.

    Returns ``(CaseData, embedding)`` where the embedding maps role letters
    to vertex ids of ``g``.
    """
    check = is_undecided(g)
    if not check:
        raise NotUndecided(check)
    for r2 in g.right:
        lefts = g.left_neighbors(r2)
        if len(lefts) < 2:
            continue
        for l3 in lefts:
            others = [r for r in g.right_neighbors(l3) if r != r2]
            if others:
                l1 = next(l for l in lefts if l != l3)
                return CASES[Case.Z], {1: l1, 2: r2, 3: l3, 4: others[0]}
    seen = set()
    for e in g.edges:
        if e in seen:
            return CASES[Case.E], {1: e[0], 2: e[1]}
        seen.add(e)
    l1 = next(l for l in g.left if len(g.right_neighbors(l)) >= 2)
    r4 = next(r for r in g.right if len(g.left_neighbors(r)) >= 2)
    r2, r3 = g.right_neighbors(l1)[:2]
    l5, l6 = g.left_neighbors(r4)[:2]
    return CASES[Case.W], {1: l1, 2: r2, 3: r3, 4: r4, 5: l5, 6: l6}


@dataclass
class ZorroTrace:
    case: Case
    embedding: dict
    vertex_letters: dict = field(default_factory=dict)   # (side, vertex id) -> letter id
    new_vertices: list = field(default_factory=list)     # (side, vertex id, letter, count)
    insertions: list = field(default_factory=list)       # inserted words, bridge included
    parallel: list = field(default_factory=list)         # ((a, b), letter, image)

    def lines(self) -> list:
        tok = letter_token
        out = [f"case {self.case.value}"]
        data = CASES[self.case]
        for role in data.left_roles + data.right_roles:
            side = "left" if role in data.left_roles else "right"
            out.append(f"role {tok(role)} = {side} {self.embedding[role]}")
        for side, v, letter, count in self.new_vertices:
            out.append(f"step2 {side} {v} -> letter {tok(letter)} (pattern count {count})")
        for w in self.insertions:
            out.append("insert " + "".join(tok(a) for a in w))
        for (a, b), c, image in self.parallel:
            out.append(f"step4 edge {tok(a)}-{tok(b)} -> letter {tok(c)} = "
                       + "".join(tok(x) for x in image))
        return out


def replay(trace: ZorroTrace) -> Substitution:
    """Rebuild the output substitution from a trace."""
    data = CASES[trace.case]
    images = {k: list(v) for k, v in data.images.items()}
    for side, _, letter, count in trace.new_vertices:
        if side == LEFT:
            images[letter] = data.left_word(count) + [letter]
        else:
            images[letter] = [letter] + data.right_word(count)
    for _, c, image in trace.parallel:
        images[c] = list(image)
    inserted = [a for w in trace.insertions for a in w]
    host = data.images[data.insertion_letter]
    images[data.insertion_letter] = (
        list(host[:data.insertion_offset]) + inserted + list(host[data.insertion_offset:]))
    return _to_substitution(images)


def _to_substitution(images: dict) -> Substitution:
    return Substitution(tuple(
        (letter_token(k), tuple(letter_token(x) for x in images[k])) for k in sorted(images)))


def realize(g: BipartiteMultigraph) -> tuple:
    """Run the construction; returns ``(substitution, trace)``."""
    data, embedding = detect_case(g)
    trace = ZorroTrace(data.case, dict(embedding))
    letters = trace.vertex_letters
    for role, v in embedding.items():
        letters[(LEFT if role in data.left_roles else RIGHT, v)] = role
    images = {k: list(v) for k, v in data.images.items()}
    next_letter = max(images) + 1

    counts = {LEFT: data.base_count, RIGHT: data.base_count}
    for side, v in g.order:
        if (side, v) in letters:
            continue
        c = next_letter
        next_letter += 1
        letters[(side, v)] = c
        if side == LEFT:
            images[c] = data.left_word(counts[side]) + [c]
        else:
            images[c] = [c] + data.right_word(counts[side])
        trace.new_vertices.append((side, v, c, counts[side]))
        counts[side] += 1

    tail = [data.bridge] if data.bridge is not None else []
    have = Counter(data.role_edges)
    want = Counter((letters[(LEFT, l)], letters[(RIGHT, r)]) for l, r in g.edges)
    assert all(want[e] >= k for e, k in have.items()), "embedding lost a role edge"
    inserted: list = []
    for a, b in sorted(want):
        if have[(a, b)] == 0:
            trace.insertions.append((a, b, *tail))
            inserted += [a, b, *tail]
            have[(a, b)] = 1
    for a, b in sorted(want):
        for _ in range(want[(a, b)] - have[(a, b)]):
            c = next_letter
            next_letter += 1
            images[c] = images[a][:-1] + [c] + images[b][1:]
            trace.parallel.append(((a, b), c, tuple(images[c])))
            trace.insertions.append((c, *tail))
            inserted += [c, *tail]
    host = images[data.insertion_letter]
    images[data.insertion_letter] = (
        host[:data.insertion_offset] + inserted + host[data.insertion_offset:])
    return _to_substitution(images), trace


@dataclass
class RoundTripReport:
    graph: BipartiteMultigraph
    substitution: Substitution | None = None
    trace: ZorroTrace | None = None
    configuration: ConfigurationGraph | None = None
    verdict: PeriodicityVerdict | None = None
    witness: Isomorphism | None = None
    checks: dict = field(default_factory=dict)

    @property
    def ok(self) -> bool:
        return bool(self.checks) and all(self.checks.values())

    @property
    def first_failure(self) -> str | None:
        return next((name for name, passed in self.checks.items() if not passed), None)


def verify_roundtrip(g: BipartiteMultigraph, power_bound: int = DEFAULT_POWER_BOUND) -> RoundTripReport:
    """Realize ``g`` and check every property the construction promises."""
    check = is_undecided(g)
    report = RoundTripReport(g)
    report.checks["undecided"] = check.ok
    if not check:
        return report
    sub, trace = realize(g)
    report.substitution, report.trace = sub, trace
    report.checks["replay"] = replay(trace) == sub
    report.checks["primitive"] = bool(is_primitive(sub))
    report.checks["prefix_free"] = bool(is_prefix_free(sub))
    report.checks["postfix_free"] = bool(is_postfix_free(sub))
    try:
        graphs = letter_graphs(sub)
        report.checks["segregating_1"] = graphs.left.least == 1 and graphs.right.least == 1
        report.checks["subfixed"] = graphs.all_subfixed()
        report.checks["l2_audit"] = l2_fast(sub) == language_n(sub, 2)
    except (NotSegregating, ValueError):
        report.checks["subfixed"] = False
    verdict = classify(sub, power_bound)
    report.verdict = verdict
    report.checks["aperiodic"] = verdict.kind is Periodicity.APERIODIC
    try:
        report.configuration = configuration_graph(sub, power_bound)
    except Unsupported:
        report.checks["isomorphic"] = False
        return report
    report.witness = isomorphic(report.configuration.graph, g)
    report.checks["isomorphic"] = report.witness is not None
    return report
