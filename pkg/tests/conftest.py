from __future__ import annotations

import itertools
import random
from pathlib import Path

import pytest
from hypothesis import strategies as st

from substitution_graphs.config_graph import BipartiteMultigraph, is_undecided
from substitution_graphs.formats import parse_graph, parse_substitution
from substitution_graphs.words import Substitution, factors

FIXTURES = Path(__file__).parent / "fixtures"


def sub(images: dict) -> Substitution:
    return Substitution.from_mapping(images)


TAU4 = sub({"0": "10", "1": "0"})
TAU_D = sub({"1": "2", "2": "3", "3": "3"})
TAU_E = sub({"a": "c", "b": "c", "c": "db", "d": "ca"})
FIG = sub({"1": "121", "2": "2112"})
FOUR = sub({"0": "042", "1": "142", "2": "042", "3": "043", "4": "01432"})
Z_INIT = sub({"1": "22451", "2": "245133", "3": "2224513", "4": "451333", "5": "22224513333"})
E_INIT = sub({"1": "2534251", "2": "2513451", "3": "2534253", "4": "4513451", "5": "251134342251"})
W_INIT = sub({"1": "423761", "2": "237651", "3": "376551", "4": "43765551",
              "5": "4223765", "6": "4222376", "7": "22374717655"})
PERIODIC = sub({"a": "aba", "b": "bab"})
FIB = sub({"a": "ab", "b": "a"})
THUE_MORSE = sub({"a": "ab", "b": "ba"})

PRIMITIVE_FIXTURES = [TAU4, TAU_E, FIG, FOUR, Z_INIT, E_INIT, W_INIT, PERIODIC, FIB, THUE_MORSE]


def load_sub(name: str) -> Substitution:
    return parse_substitution((FIXTURES / name).read_text())


def load_graph(name: str) -> BipartiteMultigraph:
    return parse_graph((FIXTURES / name).read_text())


def w(text: str) -> tuple:
    return tuple(text)


# --- independent oracles -------------------------------------------------

def language_by_expansion(s: Substitution, n: int, max_len: int = 4000) -> set:
    """Length-``n`` factors of ``s^k(a)``, expanding each letter until the
    factor set stops changing for several rounds or the word gets long."""
    found: set = set()
    for a in s.alphabet:
        cur = (a,)
        stale = 0
        while stale < len(s) + 3 and len(cur) < max_len:
            cur = tuple(x for b in cur for x in s.image(b))
            new = set(factors(cur, n)) - found
            found |= new
            stale = 0 if new else stale + 1
    return found


def primitive_exponent_by_sets(s: Substitution) -> int | None:
    """Least k <= (|A|-1)^2+1 where every letter's k-th iterate contains
    every letter, using letter sets only."""
    alphabet = set(s.alphabet)
    bound = (len(s) - 1) ** 2 + 1
    reach = {a: set(s.image(a)) for a in s.alphabet}
    for k in range(1, bound + 1):
        if all(reach[a] == alphabet for a in s.alphabet):
            return k
        reach = {a: set().union(*(set(s.image(b)) for b in reach[a])) for a in s.alphabet}
    return None


def brute_isomorphic(g1: BipartiteMultigraph, g2: BipartiteMultigraph) -> bool:
    if (len(g1.left), len(g1.right)) != (len(g2.left), len(g2.right)):
        return False
    m1, m2 = g1.multiplicity(), g2.multiplicity()
    for pl in itertools.permutations(g2.left):
        lm = dict(zip(g1.left, pl))
        for pr in itertools.permutations(g2.right):
            rm = dict(zip(g1.right, pr))
            if all(m1[(l, r)] == m2[(lm[l], rm[r])] for l in g1.left for r in g1.right):
                return True
    return False


# --- graph generation ------------------------------------------------------

def graph_from_matrix(matrix) -> BipartiteMultigraph:
    nl, nr = len(matrix), len(matrix[0])
    left = tuple(f"l{i}" for i in range(nl))
    right = tuple(f"r{j}" for j in range(nr))
    edges = tuple((left[i], right[j]) for i in range(nl) for j in range(nr)
                  for _ in range(matrix[i][j]))
    return BipartiteMultigraph(left, right, edges)


def small_undecided_graphs(max_side: int = 3, max_edges: int = 6) -> list:
    """Every undecided multiplicity matrix up to the given size."""
    out = []
    for nl in range(1, max_side + 1):
        for nr in range(1, max_side + 1):
            for flat in itertools.product(range(max_edges + 1), repeat=nl * nr):
                if sum(flat) > max_edges:
                    continue
                g = graph_from_matrix([flat[i * nr:(i + 1) * nr] for i in range(nl)])
                if is_undecided(g):
                    out.append(g)
    return out


def random_undecided(rng: random.Random, max_side: int = 8, max_edges: int = 16) -> BipartiteMultigraph:
    """Random undecided graph with shuffled declaration order."""
    while True:
        nl = rng.randint(1, max_side)
        nr = rng.randint(1, max_side)
        if max(nl, nr) > max_edges:
            continue
        left = [f"a{i}" for i in range(nl)]
        right = [f"b{j}" for j in range(nr)]
        edges = []
        # cover every vertex, then sprinkle extra edges
        for i, l in enumerate(left):
            edges.append((l, rng.choice(right)))
        for r in right:
            if not any(e[1] == r for e in edges):
                edges.append((rng.choice(left), r))
        if len(edges) > max_edges:
            continue
        for _ in range(rng.randint(0, max_edges - len(edges))):
            edges.append((rng.choice(left), rng.choice(right)))
        rng.shuffle(edges)
        order = [("left", v) for v in left] + [("right", v) for v in right]
        rng.shuffle(order)
        g = BipartiteMultigraph(tuple(left), tuple(right), tuple(edges), tuple(order))
        if is_undecided(g):
            return g


@st.composite
def substitutions(draw, min_letters=1, max_letters=4, max_image=4):
    k = draw(st.integers(min_letters, max_letters))
    alphabet = "abcdef"[:k]
    images = {a: draw(st.text(alphabet, min_size=1, max_size=max_image)) for a in alphabet}
    return sub(images)


def words_over(s: Substitution, max_size: int = 6):
    return st.lists(st.sampled_from(s.alphabet), max_size=max_size).map(tuple)


@pytest.fixture
def fixtures_dir() -> Path:
    return FIXTURES
