"""Leftmost/rightmost letter graphs, segregating numbers and the ls/rs graphs."""
from __future__ import annotations

from dataclasses import dataclass
from enum import Enum
from typing import Hashable

from .words import (
    LanguageSlice,
    Substitution,
    apply,
    common_prefix_len,
    common_suffix_len,
    factors,
    language_n,
)

DEFAULT_SEG_BOUND = 8
DEFAULT_POWER_BOUND = 64


class Side(Enum):
    LEFT = "left"
    RIGHT = "right"


class NotSegregating(Exception):
    pass


class NoSubfixingPower(Exception):
    pass


@dataclass(frozen=True)
class EndpointMap:
    """A functional graph: every vertex has exactly one outgoing edge."""

    vertices: tuple
    next: dict

    def __post_init__(self):
        verts = set(self.vertices)
        if set(self.next) != verts:
            raise ValueError("successor map must be total on the vertex set")
        for v, t in self.next.items():
            if t not in verts:
                raise ValueError(f"edge from {v!r} leaves the vertex set: {t!r}")

    def __getitem__(self, v: Hashable):
        return self.next[v]

    def edges(self) -> list:
        return [(v, self.next[v]) for v in self.vertices]

    def iterate(self, k: int) -> "EndpointMap":
        nxt = {}
        for v in self.vertices:
            t = v
            for _ in range(k):
                t = self.next[t]
            nxt[v] = t
        return EndpointMap(self.vertices, nxt)


def ll_graph(sub: Substitution) -> EndpointMap:
    return EndpointMap(sub.alphabet, {a: img[0] for a, img in sub.rules})


def rl_graph(sub: Substitution) -> EndpointMap:
    return EndpointMap(sub.alphabet, {a: img[-1] for a, img in sub.rules})


def is_subfixed(g: EndpointMap) -> bool:
    return all(g.next[g.next[v]] == g.next[v] for v in g.vertices)


@dataclass(frozen=True)
class AdvisoryBound:
    """Candidate segregating number ``s * (P - |A| + Q - 1)``.

    Only meaningful for the class of substitutions the underlying estimate
    was proven for; never used for decisions.
    """

    s: int
    P: int
    Q: int
    value: int
    caveat: str = "assumes regularity, which is not checked"


@dataclass(frozen=True)
class SegregationReport:
    side: Side
    least: int | None
    bound: int
    advisory: AdvisoryBound | None = None

    @property
    def found(self) -> bool:
        return self.least is not None


def _differ_at_edge(u, v, side: Side) -> bool:
    return u[0] != v[0] if side is Side.LEFT else u[-1] != v[-1]


def _common_len(x, y, side: Side) -> int:
    return common_prefix_len(x, y) if side is Side.LEFT else common_suffix_len(x, y)


def is_segregating_number(sub: Substitution, n: int, side: Side,
                          lang: LanguageSlice | None = None) -> bool:
    lang = lang if lang is not None else language_n(sub, n)
    words = list(lang)
    for i, u in enumerate(words):
        tu = apply(sub, u)
        for v in words[i + 1:]:
            if not _differ_at_edge(u, v, side):
                continue
            tv = apply(sub, v)
            if _common_len(tu, tv, side) > min(len(tu), len(tv)) - n:
                return False
    return True


def advisory_bound(sub: Substitution, bound: int) -> AdvisoryBound | None:
    growing = {a for a, img in sub.rules if len(img) > 1}
    if not growing:
        return None
    P = sum(len(img) for _, img in sub.rules)
    Q = max(len(img) for _, img in sub.rules)
    for s in range(1, bound + 1):
        if all(growing & set(u) for u in language_n(sub, s)):
            return AdvisoryBound(s, P, Q, s * (P - len(sub) + Q - 1))
    return None


def least_segregating(sub: Substitution, side: Side,
                      bound: int = DEFAULT_SEG_BOUND) -> SegregationReport:
    if bound < 1:
        raise ValueError("bound must be positive")
    least = None
    for n in range(1, bound + 1):
        if is_segregating_number(sub, n, side):
            least = n
            break
    return SegregationReport(side, least, bound, advisory_bound(sub, bound))


def segregating_graph(sub: Substitution, n: int, side: Side) -> EndpointMap:
    """The ls (``Side.LEFT``) or rs (``Side.RIGHT``) graph at segregating number ``n``."""
    lang = language_n(sub, n)
    words = sub.sorted_words(lang)
    vertices = tuple((u, v) for u in words for v in words
                     if u != v and _differ_at_edge(u, v, side))
    nxt = {}
    for u, v in vertices:
        tu, tv = apply(sub, u), apply(sub, v)
        k = _common_len(tu, tv, side)
        if side is Side.LEFT:
            ru, rv = tu[k:], tv[k:]
            target = (ru[:n], rv[:n])
        else:
            ru, rv = tu[:len(tu) - k], tv[:len(tv) - k]
            target = (ru[len(ru) - n:], rv[len(rv) - n:])
        if len(ru) < n or len(rv) < n:
            raise NotSegregating(
                f"{n} is not a {side.value} segregating number: pair {(u, v)} leaves "
                f"remainders of lengths {len(ru)}, {len(rv)}")
        nxt[(u, v)] = target
    return EndpointMap(vertices, nxt)


def ls_graph(sub: Substitution, report: SegregationReport) -> EndpointMap:
    if report.side is not Side.LEFT or not report.found:
        raise NotSegregating("ls graph needs a found left segregating number")
    return segregating_graph(sub, report.least, Side.LEFT)


def rs_graph(sub: Substitution, report: SegregationReport) -> EndpointMap:
    if report.side is not Side.RIGHT or not report.found:
        raise NotSegregating("rs graph needs a found right segregating number")
    return segregating_graph(sub, report.least, Side.RIGHT)


@dataclass(frozen=True)
class LetterGraphs:
    ll: EndpointMap
    rl: EndpointMap
    ls: EndpointMap
    rs: EndpointMap
    left: SegregationReport
    right: SegregationReport

    def subfixed(self) -> dict:
        return {name: is_subfixed(getattr(self, name)) for name in ("ll", "rl", "ls", "rs")}

    def all_subfixed(self) -> bool:
        return all(self.subfixed().values())


def letter_graphs(sub: Substitution, seg_bound: int = DEFAULT_SEG_BOUND) -> LetterGraphs:
    left = least_segregating(sub, Side.LEFT, seg_bound)
    right = least_segregating(sub, Side.RIGHT, seg_bound)
    if not left.found or not right.found:
        missing = "left" if not left.found else "right"
        raise NotSegregating(f"no {missing} segregating number up to {seg_bound}")
    return LetterGraphs(ll_graph(sub), rl_graph(sub), ls_graph(sub, left),
                        rs_graph(sub, right), left, right)


def subfixing_power(sub: Substitution, max_power: int = DEFAULT_POWER_BOUND,
                    seg_bound: int = DEFAULT_SEG_BOUND) -> int:
    """Least ``p <= max_power`` with all four graphs of ``sub^p`` subfixed."""
    current = sub
    for p in range(1, max_power + 1):
        if p > 1:
            current = Substitution(tuple((a, apply(sub, img)) for a, img in current.rules))
        if letter_graphs(current, seg_bound).all_subfixed():
            return p
    raise NoSubfixingPower(f"no subfixing power up to {max_power}")


def l2_fast(sub: Substitution) -> LanguageSlice:
    """Two-letter language from in-image pairs plus one boundary pass.

    Requires subfixed ll and rl graphs.
    """
    ll, rl = ll_graph(sub), rl_graph(sub)
    if not (is_subfixed(ll) and is_subfixed(rl)):
        raise ValueError("l2_fast needs subfixed ll and rl graphs")
    inside = {f for _, img in sub.rules for f in factors(img, 2)}
    boundary = {(rl[a], ll[b]) for a, b in inside}
    return LanguageSlice(2, frozenset(inside | boundary))


def language_2(sub: Substitution) -> LanguageSlice:
    """``l2_fast`` when applicable, the closure computation otherwise."""
    if is_subfixed(ll_graph(sub)) and is_subfixed(rl_graph(sub)):
        return l2_fast(sub)
    return language_n(sub, 2)

