"""Generators ``(v, u, w)`` with ``sub(u) = v u w``, their extensions and completions.

The completion of ``(v, u, w)`` is the two-sided sequence

    ... sub^2(v) sub(v) v u . w sub(w) sub^2(w) ...

with index 0 at the first letter of ``w``. It is only ever materialized as a
finite window.
"""
from __future__ import annotations

from dataclasses import dataclass
from enum import Enum

from .letter_graphs import language_2
from .words import (
    Substitution,
    Word,
    apply,
    in_language,
    is_postfix_free,
    is_prefix_free,
    is_primitive,
    mirror,
    render,
)

DEFAULT_MAX_EXT = 32


class GeneratorError(ValueError):
    pass


class EquationFails(GeneratorError):
    pass


class CenterNotInLanguage(GeneratorError):
    pass


class NotPrimitive(ValueError):
    pass


@dataclass(frozen=True)
class Generator:
    sub: Substitution
    v: Word
    u: Word
    w: Word

    def __post_init__(self):
        for name in ("v", "u", "w"):
            value = tuple(getattr(self, name))
            if not value:
                raise GeneratorError(f"{name} must be nonempty")
            object.__setattr__(self, name, value)
        if apply(self.sub, self.u) != self.v + self.u + self.w:
            raise EquationFails(
                f"sub({render(self.u)}) = {render(apply(self.sub, self.u))} "
                f"is not {render(self.v)}.{render(self.u)}.{render(self.w)}")

    @property
    def triple(self) -> tuple:
        return (self.v, self.u, self.w)

    def __len__(self) -> int:
        return len(self.u)

    def __str__(self) -> str:
        return f"({render(self.v)},{render(self.u)},{render(self.w)})"

    __repr__ = __str__


def validate_generator(sub: Substitution, v, u, w) -> Generator:
    g = Generator(sub, tuple(v), tuple(u), tuple(w))
    if not in_language(sub, g.u):
        raise CenterNotInLanguage(f"{render(g.u)} is not in the language")
    return g


def extend_right(g: Generator) -> Generator:
    a, rest = g.w[0], g.w[1:]
    return Generator(g.sub, g.v, g.u + (a,), rest + g.sub.image(a))


def extend_left(g: Generator) -> Generator:
    rest, a = g.v[:-1], g.v[-1]
    return Generator(g.sub, g.sub.image(a) + rest, (a,) + g.u, g.w)


def is_basic(g: Generator) -> bool:
    if len(g.u) == 1:
        return True
    first, last = g.u[0], g.u[-1]
    return len(g.sub.image(first)) > len(g.v) and len(g.sub.image(last)) > len(g.w)


def reduce_to_basic(g: Generator) -> Generator:
    """Undo extensions until the generator is basic."""
    sub = g.sub
    v, u, w = g.triple
    while len(u) > 1:
        head, tail = sub.image(u[0]), sub.image(u[-1])
        if len(head) <= len(v):
            # v = sub(a) v'  ->  (v' a, u[1:], w)
            v, u = v[len(head):] + u[:1], u[1:]
        elif len(tail) <= len(w):
            w, u = u[-1:] + w[:len(w) - len(tail)], u[:-1]
        else:
            break
    return Generator(sub, v, u, w)


def g_related(g1: Generator, g2: Generator) -> bool:
    if g1.sub != g2.sub:
        raise GeneratorError("generators belong to different substitutions")
    return reduce_to_basic(g1) == reduce_to_basic(g2)


def enumerate_basic(sub: Substitution) -> list:
    """All basic generators of a primitive substitution.

    Only one- and two-letter centers can be basic. Output order: one-letter
    generators by letter and position, then two-letter ones by center.
    """
    if not is_primitive(sub):
        raise NotPrimitive("basic generators are only enumerated for primitive substitutions")
    found = []
    for a, img in sub.rules:
        for i in range(1, len(img) - 1):
            if img[i] == a:
                found.append(Generator(sub, img[:i], (a,), img[i + 1:]))
    enders = [a for a, img in sub.rules if len(img) >= 2 and img[-1] == a]
    starters = [b for b, img in sub.rules if len(img) >= 2 and img[0] == b]
    lang2 = language_2(sub)
    for a in enders:
        for b in starters:
            if (a, b) in lang2:
                found.append(Generator(sub, sub.image(a)[:-1], (a, b), sub.image(b)[1:]))
    return found


@dataclass(frozen=True)
class CompletionWindow:
    lo: int
    hi: int
    letters: Word

    def __getitem__(self, i: int):
        if not self.lo <= i < self.hi:
            raise IndexError(i)
        return self.letters[i - self.lo]

    def slice(self, lo: int, hi: int) -> Word:
        return self.letters[lo - self.lo:hi - self.lo]

    def __str__(self) -> str:
        return f"[{self.lo},{self.hi}) {render(self.letters)}"


def _right_half(sub: Substitution, w: Word, length: int) -> Word:
    out = list(w)
    block = w
    while len(out) < length:
        block = apply(sub, block)
        out.extend(block)
    return tuple(out[:length])


def _left_half(sub: Substitution, v: Word, u: Word, length: int) -> Word:
    """The ``length`` letters just left of index 0, in reading order."""
    rev = list(reversed(u))
    block = v
    rev.extend(reversed(v))
    while len(rev) < length:
        block = apply(sub, block)
        rev.extend(reversed(block))
    return tuple(reversed(rev[:length]))


def completion_window(g: Generator, lo: int, hi: int) -> CompletionWindow:
    if lo >= hi:
        raise ValueError("empty window")
    # every image is nonempty, so both halves grow by at least one letter per round
    letters: Word = ()
    if lo < 0:
        left = _left_half(g.sub, g.v, g.u, -lo)
        letters += left[:len(left) - max(0, -hi)]
    if hi > 0:
        letters += _right_half(g.sub, g.w, hi)[max(0, lo):]
    return CompletionWindow(lo, hi, letters)


def mirror_generator(g: Generator) -> Generator:
    rev = lambda x: tuple(reversed(x))  # noqa: E731
    return Generator(mirror(g.sub), rev(g.w), rev(g.u), rev(g.v))


class Answer(Enum):
    YES = "yes"
    NO = "no"
    INDETERMINATE = "indeterminate"


@dataclass(frozen=True)
class TailVerdict:
    answer: Answer
    evidence: str = ""

    def __bool__(self) -> bool:
        return self.answer is Answer.YES


def _wing_search(g1: Generator, g2: Generator, max_ext: int) -> tuple | None:
    chain1 = [g1]
    chain2 = [g2]
    for _ in range(max_ext):
        chain1.append(extend_right(chain1[-1]))
        chain2.append(extend_right(chain2[-1]))
    by_wing = {}
    for i, g in enumerate(chain1):
        by_wing.setdefault(g.w, i)
    for j, g in enumerate(chain2):
        if g.w in by_wing:
            return by_wing[g.w], j, g.w
    return None


def right_tail_equivalent(g1: Generator, g2: Generator,
                          max_ext: int = DEFAULT_MAX_EXT) -> TailVerdict:
    """Decide whether the completions of ``g1`` and ``g2`` share a right tail up to shift."""
    if g1.sub != g2.sub:
        raise GeneratorError("generators belong to different substitutions")
    b1, b2 = reduce_to_basic(g1), reduce_to_basic(g2)
    if b1 == b2:
        return TailVerdict(Answer.YES, f"both reduce to {b1}")
    if is_postfix_free(g1.sub):
        if b1.w == b2.w:
            return TailVerdict(Answer.YES, f"basics {b1} and {b2} share the right wing")
        return TailVerdict(Answer.NO, f"basics {b1} and {b2} have different right wings")
    hit = _wing_search(b1, b2, max_ext)
    if hit is not None:
        i, j, wing = hit
        return TailVerdict(Answer.YES, f"{i} and {j} right extensions meet at wing {render(wing)}")
    return TailVerdict(Answer.INDETERMINATE, f"no common right wing within {max_ext} extensions")


def left_tail_equivalent(g1: Generator, g2: Generator,
                         max_ext: int = DEFAULT_MAX_EXT) -> TailVerdict:
    if g1.sub != g2.sub:
        raise GeneratorError("generators belong to different substitutions")
    # prefix freeness of the original is postfix freeness of the mirror
    assert bool(is_prefix_free(g1.sub)) == bool(is_postfix_free(mirror(g1.sub)))
    return right_tail_equivalent(mirror_generator(g1), mirror_generator(g2), max_ext)
