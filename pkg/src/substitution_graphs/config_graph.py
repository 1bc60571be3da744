"""Bipartite multigraphs, configuration graphs and the periodicity verdict."""
from __future__ import annotations

from collections import Counter
from dataclasses import dataclass, field
from enum import Enum

from .generators import Generator, enumerate_basic
from .letter_graphs import (
    DEFAULT_POWER_BOUND,
    DEFAULT_SEG_BOUND,
    NoSubfixingPower,
    NotSegregating,
    subfixing_power,
)
from .words import Substitution, is_postfix_free, is_prefix_free, is_primitive, power, render

LEFT = "left"
RIGHT = "right"


class GraphError(ValueError):
    pass


@dataclass(frozen=True)
class BipartiteMultigraph:
    """Left and right vertex ids plus an edge list; repeated edges are parallel.

    ``order`` records the declaration order across both sides as
    ``(side, id)`` pairs. It defaults to all left vertices, then all right.
    """

    left: tuple
    right: tuple
    edges: tuple
    order: tuple = ()

    def __post_init__(self):
        left, right = tuple(self.left), tuple(self.right)
        edges = tuple((l, r) for l, r in self.edges)
        if len(set(left)) != len(left) or len(set(right)) != len(right):
            raise GraphError("vertex ids must be unique per side")
        ls, rs = set(left), set(right)
        for l, r in edges:
            if l not in ls:
                raise GraphError(f"edge ({l}, {r}): {l!r} is not a left vertex")
            if r not in rs:
                raise GraphError(f"edge ({l}, {r}): {r!r} is not a right vertex")
        order = tuple(self.order) or tuple((LEFT, v) for v in left) + tuple((RIGHT, v) for v in right)
        order = tuple((side, v) for side, v in order)
        if Counter(order) != Counter([(LEFT, v) for v in left] + [(RIGHT, v) for v in right]):
            raise GraphError("declaration order must list every vertex exactly once")
        object.__setattr__(self, "left", left)
        object.__setattr__(self, "right", right)
        object.__setattr__(self, "edges", edges)
        object.__setattr__(self, "order", order)

    def multiplicity(self) -> Counter:
        return Counter(self.edges)

    def degree(self, side: str, v) -> int:
        pos = 0 if side == LEFT else 1
        return sum(1 for e in self.edges if e[pos] == v)

    def right_neighbors(self, l) -> list:
        """Distinct right neighbors of ``l`` in declaration order."""
        adj = {r for x, r in self.edges if x == l}
        return [r for r in self.right if r in adj]

    def left_neighbors(self, r) -> list:
        adj = {l for l, x in self.edges if x == r}
        return [l for l in self.left if l in adj]


@dataclass(frozen=True)
class UndecidedCheck:
    ok: bool
    clause: str = ""
    detail: str = ""

    def __bool__(self) -> bool:
        return self.ok


def is_undecided(g: BipartiteMultigraph) -> UndecidedCheck:
    deg = Counter()
    for l, r in g.edges:
        deg[(LEFT, l)] += 1
        deg[(RIGHT, r)] += 1
    for key in g.order:
        if deg[key] == 0:
            return UndecidedCheck(False, "i", f"{key[0]} vertex {key[1]} has no edges")
    for l, r in g.edges:
        if deg[(LEFT, l)] < 2 and deg[(RIGHT, r)] < 2:
            return UndecidedCheck(False, "ii", f"edge ({l}, {r}) is lonely")
    if not any(deg[(LEFT, v)] >= 2 for v in g.left):
        return UndecidedCheck(False, "iii", "no left vertex has two edges")
    if not any(deg[(RIGHT, v)] >= 2 for v in g.right):
        return UndecidedCheck(False, "iv", "no right vertex has two edges")
    return UndecidedCheck(True)


@dataclass(frozen=True)
class Isomorphism:
    left: dict
    right: dict


def _row(mult: Counter, l, rights) -> tuple:
    return tuple(sorted(mult[(l, r)] for r in rights))


def isomorphic(g1: BipartiteMultigraph, g2: BipartiteMultigraph) -> Isomorphism | None:
    """Side-preserving bijection carrying the edge multiset of ``g1`` onto ``g2``.

    Backtracks over the left vertices; after each choice the partial column
    profiles of the right vertices must agree as multisets, which at full
    depth is exactly the condition for a matching right bijection.
    """
    if (len(g1.left), len(g1.right), len(g1.edges)) != (len(g2.left), len(g2.right), len(g2.edges)):
        return None
    m1, m2 = g1.multiplicity(), g2.multiplicity()
    sig1 = {l: _row(m1, l, g1.right) for l in g1.left}
    sig2 = {l: _row(m2, l, g2.right) for l in g2.left}
    if Counter(sig1.values()) != Counter(sig2.values()):
        return None
    csig1 = Counter(tuple(sorted(m1[(l, r)] for l in g1.left)) for r in g1.right)
    csig2 = Counter(tuple(sorted(m2[(l, r)] for l in g2.left)) for r in g2.right)
    if csig1 != csig2:
        return None

    # most constrained first: rarest signature
    freq = Counter(sig1.values())
    lefts = sorted(g1.left, key=lambda l: (freq[sig1[l]], g1.left.index(l)))
    assigned: list = []
    used: set = set()

    def columns(mult, graph, rows):
        return {r: tuple(mult[(l, r)] for l in rows) for r in graph.right}

    def consistent() -> bool:
        rows1 = [a for a, _ in assigned]
        rows2 = [b for _, b in assigned]
        c1 = columns(m1, g1, rows1)
        c2 = columns(m2, g2, rows2)
        return Counter(c1.values()) == Counter(c2.values())

    def search(depth: int) -> bool:
        if depth == len(lefts):
            return True
        l = lefts[depth]
        for cand in g2.left:
            if cand in used or sig2[cand] != sig1[l]:
                continue
            assigned.append((l, cand))
            used.add(cand)
            if consistent() and search(depth + 1):
                return True
            assigned.pop()
            used.discard(cand)
        return False

    if not search(0):
        return None
    left_map = dict(assigned)
    rows1 = [l for l in g1.left]
    rows2 = [left_map[l] for l in rows1]
    pool: dict = {}
    for r in g2.right:
        pool.setdefault(tuple(m2[(l, r)] for l in rows2), []).append(r)
    right_map = {}
    for r in g1.right:
        right_map[r] = pool[tuple(m1[(l, r)] for l in rows1)].pop(0)
    return Isomorphism(left_map, right_map)


class Unsupported(Exception):
    """The substitution lies outside the class the pipeline can decide."""

    def __init__(self, reason: str, detail: str = ""):
        super().__init__(f"{reason}: {detail}" if detail else reason)
        self.reason = reason
        self.detail = detail


@dataclass(frozen=True)
class ConfigurationGraph:
    graph: BipartiteMultigraph
    left_labels: dict
    right_labels: dict
    provenance: tuple
    power: int
    basics: tuple = field(default=(), compare=False)


def _special_basics(basics) -> list:
    lw = Counter(g.v for g in basics)
    rw = Counter(g.w for g in basics)
    return [g for g in basics if lw[g.v] > 1 or rw[g.w] > 1]


def _pipeline(sub: Substitution, power_bound: int, seg_bound: int) -> tuple:
    if len(sub) == 1:
        raise Unsupported("TrivialAlphabet", "a one-letter substitution is never aperiodic")
    verdict = is_primitive(sub)
    if not verdict:
        raise Unsupported("NotPrimitive", verdict.reason)
    for check, name in ((is_prefix_free, "NotPrefixFree"), (is_postfix_free, "NotPostfixFree")):
        rep = check(sub)
        if not rep:
            a, b = rep.counterexample
            raise Unsupported(name, f"images of {a} and {b}")
    try:
        p = subfixing_power(sub, power_bound, seg_bound)
    except NoSubfixingPower as exc:
        raise Unsupported("NoSubfixingPower", str(exc)) from None
    except NotSegregating as exc:
        raise Unsupported("NotSegregating", str(exc)) from None
    sp = power(sub, p)
    for check, name in ((is_prefix_free, "NotPrefixFree"), (is_postfix_free, "NotPostfixFree")):
        if not check(sp):
            raise Unsupported(name, f"power {p} lost the property")
    return p, sp, enumerate_basic(sp)


def configuration_graph(sub: Substitution, power_bound: int = DEFAULT_POWER_BOUND,
                        seg_bound: int = DEFAULT_SEG_BOUND) -> ConfigurationGraph:
    p, sp, basics = _pipeline(sub, power_bound, seg_bound)
    special = _special_basics(basics)
    left_ids: dict = {}
    right_ids: dict = {}
    for g in special:
        left_ids.setdefault(g.v, render(g.v))
        right_ids.setdefault(g.w, render(g.w))
    graph = BipartiteMultigraph(
        tuple(left_ids.values()), tuple(right_ids.values()),
        tuple((left_ids[g.v], right_ids[g.w]) for g in special))
    return ConfigurationGraph(
        graph,
        {i: wing for wing, i in left_ids.items()},
        {i: wing for wing, i in right_ids.items()},
        tuple(special), p, tuple(basics))


class Periodicity(Enum):
    PERIODIC = "periodic"
    APERIODIC = "aperiodic"
    UNSUPPORTED = "unsupported"


@dataclass(frozen=True)
class PeriodicityVerdict:
    kind: Periodicity
    certificate: tuple = ()
    reason: str = ""

    def __str__(self) -> str:
        if self.kind is Periodicity.APERIODIC:
            return f"Aperiodic({self.certificate[0]}, {self.certificate[1]})"
        if self.kind is Periodicity.UNSUPPORTED:
            return f"Unsupported({self.reason})"
        return "Periodic"


def classify(sub: Substitution, power_bound: int = DEFAULT_POWER_BOUND,
             seg_bound: int = DEFAULT_SEG_BOUND) -> PeriodicityVerdict:
    try:
        _, _, basics = _pipeline(sub, power_bound, seg_bound)
    except Unsupported as exc:
        return PeriodicityVerdict(Periodicity.UNSUPPORTED, reason=exc.reason)
    for i, g in enumerate(basics):
        for h in basics[i + 1:]:
            if g.v == h.v or g.w == h.w:
                return PeriodicityVerdict(Periodicity.APERIODIC, (g, h))
    return PeriodicityVerdict(Periodicity.PERIODIC)


def certificate_is_valid(verdict: PeriodicityVerdict) -> bool:
    if verdict.kind is not Periodicity.APERIODIC:
        return False
    g, h = verdict.certificate
    return isinstance(g, Generator) and g != h and g.sub == h.sub and (g.v == h.v or g.w == h.w)
