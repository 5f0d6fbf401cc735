"""Builtin test groups, all solvable, of order at most 100."""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from functools import lru_cache
from typing import Callable, Sequence

from bpi.groups import PermGroup, group_from_generators
from bpi.perm import Permutation, parse_cycles

__all__ = ["CorpusEntry", "builtin_corpus", "corpus_entry", "corpus_names", "builtin_group", "regular_permutations"]


@dataclass(frozen=True)
class CorpusEntry:
    name: str
    degree: int
    generators: tuple[str, ...]
    expected_order: int
    solvable: bool = True

    def permutations(self) -> list[Permutation]:
        return [parse_cycles(g, self.degree) for g in self.generators]

    def build(self) -> PermGroup:
        G = group_from_generators(self.degree, self.permutations(), name=self.name)
        if G.order != self.expected_order:
            raise AssertionError(f"{self.name}: built order {G.order}, expected {self.expected_order}")
        return G


def _cycles(perm: Permutation) -> str:
    return str(perm)


def _from_action(name: str, points: Sequence, maps: Sequence[Callable], order: int) -> CorpusEntry:
    """Entry for the group generated by ``maps`` acting on ``points``."""
    where = {p: i for i, p in enumerate(points)}
    gens = tuple(_cycles(Permutation(tuple(where[f(p)] for p in points))) for f in maps)
    return CorpusEntry(name, len(points), gens, order)


def regular_permutations(elements: Sequence, mul: Callable) -> list[Permutation]:
    """Right regular representation ``x -> x*g`` of each element."""
    where = {e: i for i, e in enumerate(elements)}
    return [Permutation(tuple(where[mul(x, g)] for x in elements)) for g in elements]


# Quaternion units 1, i, j, k as 0..3; products u*v = sign * unit.
_QUNIT = [[0, 1, 2, 3], [1, 0, 3, 2], [2, 3, 0, 1], [3, 2, 1, 0]]
_QSIGN = [[1, 1, 1, 1], [1, -1, 1, -1], [1, -1, -1, 1], [1, 1, -1, -1]]


def _qmul(a, b):
    (sa, ua), (sb, ub) = a, b
    return (sa * sb * _QSIGN[ua][ub], _QUNIT[ua][ub])


def _q8() -> CorpusEntry:
    elements = [(s, u) for s in (1, -1) for u in range(4)]
    regular = regular_permutations(elements, _qmul)
    i, j = elements.index((1, 1)), elements.index((1, 2))
    return CorpusEntry("Q8", 8, (_cycles(regular[i]), _cycles(regular[j])), 8)


def _matrix_entry(name: str, gens: Sequence[tuple[int, int, int, int]], order: int) -> CorpusEntry:
    vectors = [v for v in itertools.product(range(3), repeat=2) if v != (0, 0)]

    def act(m):
        a, b, c, d = m
        return lambda v: ((a * v[0] + b * v[1]) % 3, (c * v[0] + d * v[1]) % 3)

    return _from_action(name, vectors, [act(m) for m in gens], order)


def _gf2_mul(a: int, b: int, bits: int, modulus: int) -> int:
    out = 0
    while b:
        if b & 1:
            out ^= a
        b >>= 1
        a <<= 1
        if a >> bits:
            a ^= modulus
    return out


def _gf2_affine(name: str, bits: int, modulus: int, mult: int, order: int) -> CorpusEntry:
    """``x -> x + 1`` and ``x -> mult * x`` on GF(2^bits)."""
    pts = list(range(1 << bits))
    return _from_action(name, pts, [lambda x: x ^ 1, lambda x: _gf2_mul(mult, x, bits, modulus)], order)


def _f3_affine(name: str, linear: Sequence[tuple[int, int, int, int]], order: int) -> CorpusEntry:
    """Translations of F_3^2 extended by the given matrices."""
    pts = list(itertools.product(range(3), repeat=2))

    def act(m):
        a, b, c, d = m
        return lambda v: ((a * v[0] + b * v[1]) % 3, (c * v[0] + d * v[1]) % 3)

    return _from_action(name, pts, [lambda v: ((v[0] + 1) % 3, v[1])] + [act(m) for m in linear], order)


def _dihedral(n: int) -> CorpusEntry:
    rot = "(" + " ".join(str(i) for i in range(1, n + 1)) + ")"
    refl = "".join(f"({i} {n + 2 - i})" for i in range(2, n // 2 + (n % 2) + 1) if i != n + 2 - i) or "()"
    return CorpusEntry(f"D{2 * n}", n, (rot, refl), 2 * n)


def _cyclic(n: int) -> CorpusEntry:
    if n == 1:
        return CorpusEntry("C1", 1, ("()",), 1)
    return CorpusEntry(f"C{n}", n, ("(" + " ".join(str(i) for i in range(1, n + 1)) + ")",), n)


def _affine(name: str, p: int, mult: int, order: int) -> CorpusEntry:
    pts = list(range(p))
    return _from_action(name, pts, [lambda x: (x + 1) % p, lambda x: (mult * x) % p], order)


@lru_cache(maxsize=None)
def builtin_corpus() -> tuple[CorpusEntry, ...]:
    """Corpus entries ordered by group order, then name."""
    heis_pts = list(itertools.product(range(3), repeat=2))
    entries = [_cyclic(n) for n in range(1, 13)]
    entries += [
        CorpusEntry("S3", 3, ("(1 2 3)", "(1 2)"), 6),
        CorpusEntry("S4", 4, ("(1 2 3 4)", "(1 2)"), 24),
        CorpusEntry("A4", 4, ("(1 2 3)", "(1 2)(3 4)"), 12),
        _dihedral(4),
        _dihedral(5),
        _dihedral(6),
        _q8(),
        CorpusEntry("C3:C4", 7, ("(1 2 3)", "(1 2)(4 5 6 7)"), 12),
        _matrix_entry("SL(2,3)", [(1, 1, 0, 1), (1, 0, 1, 1)], 24),
        CorpusEntry("C7:C3", 7, ("(1 2 3 4 5 6 7)", "(2 3 5)(4 7 6)"), 21),
        _from_action(
            "3^1+2_exp3", heis_pts, [lambda v: ((v[0] + 1) % 3, v[1]), lambda v: (v[0], (v[1] + v[0]) % 3)], 27
        ),
        _affine("3^1+2_exp9", 9, 4, 27),
        CorpusEntry("C2xC2xC3", 7, ("(1 2)", "(3 4)", "(5 6 7)"), 12),
        CorpusEntry("F20", 5, ("(1 2 3 4 5)", "(2 3 5 4)"), 20),
        # larger extras
        CorpusEntry("C2xC2xC2", 6, ("(1 2)", "(3 4)", "(5 6)"), 8),
        CorpusEntry("C4xC2", 6, ("(1 2 3 4)", "(5 6)"), 8),
        _dihedral(7),
        _dihedral(8),
        _dihedral(9),
        _dihedral(10),
        CorpusEntry("C3xS3", 6, ("(1 2 3)", "(1 2)", "(4 5 6)"), 18),
        CorpusEntry("C3^2:C2", 6, ("(1 2 3)", "(4 5 6)", "(1 2)(4 5)"), 18),
        CorpusEntry("A4xC2", 6, ("(1 2 3)", "(1 2)(3 4)", "(5 6)"), 24),
        CorpusEntry("S3xS3", 6, ("(1 2 3)", "(1 2)", "(4 5 6)", "(4 5)"), 36),
        CorpusEntry("C3^2:C4", 6, ("(1 2 3)", "(4 5 6)", "(1 4 2 5)(3 6)"), 36),
        _affine("F42", 7, 3, 42),
        _matrix_entry("GL(2,3)", [(1, 1, 0, 1), (1, 0, 1, 1), (2, 0, 0, 1)], 48),
        CorpusEntry("S4xC2", 6, ("(1 2 3 4)", "(1 2)", "(5 6)"), 48),
        _affine("C11:C5", 11, 3, 55),
        _gf2_affine("C2^3:C7", 3, 0b1011, 0b10, 56),
        CorpusEntry("A4xC2xC2", 8, ("(1 2 3)", "(1 2)(3 4)", "(5 6)", "(7 8)"), 48),
        CorpusEntry("S3xC2^3", 9, ("(1 2 3)", "(1 2)", "(4 5)", "(6 7)", "(8 9)"), 48),
        _affine("C13:C4", 13, 5, 52),
        CorpusEntry("C5xA4", 9, ("(1 2 3)", "(1 2)(3 4)", "(5 6 7 8 9)"), 60),
        CorpusEntry("A4xC3", 7, ("(1 2 3)", "(1 2)(3 4)", "(5 6 7)"), 36),
        _gf2_affine("C2^4:C5", 4, 0b10011, 0b1000, 80),
        CorpusEntry("S4xC3", 7, ("(1 2 3 4)", "(1 2)", "(5 6 7)"), 72),
        _f3_affine("C3^2:Q8", [(0, 2, 1, 0), (1, 1, 1, 2)], 72),
        CorpusEntry("C4wrC2", 8, ("(1 2 3 4)", "(1 5)(2 6)(3 7)(4 8)"), 32),
        CorpusEntry("D8xS3", 7, ("(1 2 3 4)", "(1 3)", "(5 6 7)", "(5 6)"), 48),
        CorpusEntry("C2wrC4", 8, ("(1 2)", "(1 3 5 7)(2 4 6 8)"), 64),
        _f3_affine("C3^2:C8", [(1, 2, 1, 1)], 72),
        CorpusEntry("C3wrC3", 9, ("(1 2 3)", "(1 4 7)(2 5 8)(3 6 9)"), 81),
        CorpusEntry("S4xC2xC2", 8, ("(1 2 3 4)", "(1 2)", "(5 6)", "(7 8)"), 96),
    ]
    return tuple(sorted(entries, key=lambda e: (e.expected_order, e.name)))


def corpus_names() -> list[str]:
    return [e.name for e in builtin_corpus()]


def corpus_entry(name: str) -> CorpusEntry:
    for e in builtin_corpus():
        if e.name.lower() == name.lower():
            return e
    raise KeyError(f"no builtin group named {name!r}; known: {', '.join(corpus_names())}")


def builtin_group(name: str) -> PermGroup:
    return corpus_entry(name).build()
