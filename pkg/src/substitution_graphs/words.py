"""Words, substitutions and factor languages.

Letters are plain string tokens and a word is a tuple of tokens. Letters
created from integer ids use the digit rendering ``1``..``9``, ``0`` for the
tenth letter and decimal tokens beyond that.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Iterator, Mapping, Sequence

import numpy as np

Letter = str
Word = tuple  # tuple[Letter, ...]


class SubstitutionError(ValueError):
    pass


def letter_token(ident: int) -> Letter:
    if ident < 1:
        raise ValueError(f"letter ids are positive, got {ident}")
    if ident <= 9:
        return str(ident)
    if ident == 10:
        return "0"
    return str(ident)


def token_id(token: Letter) -> int:
    """Inverse of :func:`letter_token`."""
    if token == "0":
        return 10
    ident = int(token)
    if ident < 1 or str(ident) != token or ident == 10:
        raise ValueError(f"not a canonical letter token: {token!r}")
    return ident


def word(text: str | Iterable[Letter]) -> Word:
    """Build a word; a plain string is split into single-character letters."""
    if isinstance(text, str):
        return tuple(text)
    return tuple(text)


def render(w: Sequence[Letter], sep: str | None = None) -> str:
    """Join tokens; without an explicit separator, multi-character tokens get spaces."""
    if sep is None:
        sep = "" if all(len(a) == 1 for a in w) else " "
    return sep.join(w)


def factors(w: Sequence[Letter], n: int) -> Iterator[Word]:
    for i in range(len(w) - n + 1):
        yield tuple(w[i:i + n])


def is_factor(u: Sequence[Letter], v: Sequence[Letter]) -> bool:
    u = tuple(u)
    return any(f == u for f in factors(v, len(u)))


def common_prefix_len(u: Sequence[Letter], v: Sequence[Letter]) -> int:
    n = 0
    for a, b in zip(u, v):
        if a != b:
            break
        n += 1
    return n


def common_suffix_len(u: Sequence[Letter], v: Sequence[Letter]) -> int:
    return common_prefix_len(tuple(reversed(u)), tuple(reversed(v)))


@dataclass(frozen=True)
class Substitution:
    """A map from letters to nonempty words.

    ``rules`` is the ordered tuple of ``(letter, image)`` pairs; the order
    of the letters is the alphabet order. Equality is equality of the
    ordered rule lists.
    """

    rules: tuple

    def __post_init__(self):
        seen = set()
        rules = []
        for letter, image in self.rules:
            if letter in seen:
                raise SubstitutionError(f"duplicate rule for letter {letter!r}")
            seen.add(letter)
            rules.append((letter, tuple(image)))
        for letter, image in rules:
            if not image:
                raise SubstitutionError(f"empty image for letter {letter!r}")
            for b in image:
                if b not in seen:
                    raise SubstitutionError(
                        f"unknown letter {b!r} in the image of {letter!r}")
        if not rules:
            raise SubstitutionError("empty alphabet")
        object.__setattr__(self, "rules", tuple(rules))
        object.__setattr__(self, "_images", dict(rules))
        object.__setattr__(self, "_index", {a: i for i, (a, _) in enumerate(rules)})

    @classmethod
    def from_mapping(cls, images: Mapping[Letter, Iterable[Letter] | str]) -> "Substitution":
        return cls(tuple((a, word(img)) for a, img in images.items()))

    @property
    def alphabet(self) -> tuple:
        return tuple(a for a, _ in self.rules)

    def __len__(self) -> int:
        return len(self.rules)

    def image(self, letter: Letter) -> Word:
        try:
            return self._images[letter]
        except KeyError:
            raise SubstitutionError(f"letter {letter!r} is not in the alphabet") from None

    def __call__(self, u: Iterable[Letter]) -> Word:
        return apply(self, u)

    def index(self, letter: Letter) -> int:
        return self._index[letter]

    def sort_key(self, u: Sequence[Letter]) -> tuple:
        """Lexicographic key with respect to the alphabet order."""
        return tuple(self._index[a] for a in u)

    def sorted_words(self, words: Iterable[Sequence[Letter]]) -> list:
        return sorted((tuple(u) for u in words), key=lambda u: (len(u), self.sort_key(u)))

    def __str__(self) -> str:
        return "; ".join(f"{a} -> {render(img, ' ')}" for a, img in self.rules)


def apply(sub: Substitution, u: Iterable[Letter]) -> Word:
    out: list = []
    for a in u:
        out.extend(sub.image(a))
    return tuple(out)


def iterate(sub: Substitution, u: Iterable[Letter], k: int) -> Word:
    u = tuple(u)
    for _ in range(k):
        u = apply(sub, u)
    return u


def power(sub: Substitution, k: int) -> Substitution:
    if k < 1:
        raise ValueError(f"power must be at least 1, got {k}")
    result = sub
    for _ in range(k - 1):
        result = Substitution(tuple((a, apply(sub, img)) for a, img in result.rules))
    return result


def mirror(sub: Substitution) -> Substitution:
    """The substitution with every image reversed."""
    return Substitution(tuple((a, tuple(reversed(img))) for a, img in sub.rules))


@dataclass(frozen=True)
class LanguageSlice:
    n: int
    words: frozenset

    def __contains__(self, u) -> bool:
        return tuple(u) in self.words

    def __iter__(self):
        return iter(self.words)

    def __len__(self) -> int:
        return len(self.words)


def language_n(sub: Substitution, n: int) -> LanguageSlice:
    """All length ``n`` factors of the iterates ``sub^k(a)``, ``k >= 1``.

    Closure over words of length at most ``n``: a short factor of an image
    of a long word is a factor of the image of some short factor, because
    no letter maps to the empty word.
    """
    if n < 1:
        raise ValueError(f"n must be positive, got {n}")
    seen: set = set()
    todo: list = []

    def add_factors_of(w: Word) -> None:
        for m in range(1, min(n, len(w)) + 1):
            for f in factors(w, m):
                if f not in seen:
                    seen.add(f)
                    todo.append(f)

    for _, img in sub.rules:
        add_factors_of(img)
    while todo:
        add_factors_of(apply(sub, todo.pop()))
    return LanguageSlice(n, frozenset(u for u in seen if len(u) == n))


def in_language(sub: Substitution, u: Sequence[Letter]) -> bool:
    return len(u) > 0 and tuple(u) in language_n(sub, len(u))


def incidence_matrix(sub: Substitution) -> np.ndarray:
    m = np.zeros((len(sub), len(sub)), dtype=bool)
    for i, (_, img) in enumerate(sub.rules):
        for b in img:
            m[i, sub.index(b)] = True
    return m


@dataclass(frozen=True)
class PrimitivityVerdict:
    primitive: bool
    exponent: int | None = None
    reason: str = ""

    def __bool__(self) -> bool:
        return self.primitive


def is_primitive(sub: Substitution) -> PrimitivityVerdict:
    """Test primitivity; the exponent is the least ``n`` with ``M^n > 0``."""
    size = len(sub)
    if size == 1:
        if len(sub.rules[0][1]) >= 2:
            return PrimitivityVerdict(True, 1)
        return PrimitivityVerdict(False, reason="single letter mapped to itself has bounded growth")
    m = incidence_matrix(sub).astype(np.int64)
    bound = (size - 1) ** 2 + 1
    current = m.copy()
    for k in range(1, bound + 1):
        if current.all():
            return PrimitivityVerdict(True, k)
        current = np.minimum(current @ m, 1)
    return PrimitivityVerdict(
        False, reason=f"no power up to {bound} has every letter inside every image")


@dataclass(frozen=True)
class FreenessReport:
    free: bool
    counterexample: tuple | None = None

    def __bool__(self) -> bool:
        return self.free


def _freeness(sub: Substitution, suffix: bool) -> FreenessReport:
    for a, ia in sub.rules:
        for b, ib in sub.rules:
            if a == b or len(ia) > len(ib):
                continue
            part = ib[len(ib) - len(ia):] if suffix else ib[:len(ia)]
            if part == ia:
                return FreenessReport(False, (a, b))
    return FreenessReport(True)


def is_prefix_free(sub: Substitution) -> FreenessReport:
    """Counterexample ``(a, b)`` means the image of ``a`` is a prefix of that of ``b``."""
    return _freeness(sub, suffix=False)


def is_postfix_free(sub: Substitution) -> FreenessReport:
    return _freeness(sub, suffix=True)
