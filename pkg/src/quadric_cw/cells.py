"""Cellular chains: degrees, the boundary operator, grouped cells, cube
chains and the explicit homology generators."""
from __future__ import annotations

from dataclasses import dataclass, field
from functools import lru_cache
from typing import Iterable, Iterator, Mapping

from .combinatorics import (
    Cell,
    Rel,
    enumerate_group,
    full_mask,
    group_sign,
    labels_of,
    mask_of,
    position_in_complement,
    size,
    tau_sign,
)


def cell_degree(c: Cell) -> int:
    d = (c.k - 1) + size(c.j_all) + abs(c.tau)
    return d if c.rel == Rel.LE else d - 1


class IntChain:
    """Finitely supported integer combination of cells of one degree."""

    __slots__ = ("degree", "terms")

    def __init__(self, degree: int, terms: Mapping[Cell, int] | Iterable[tuple[Cell, int]] = ()):
        self.degree = degree
        self.terms: dict[Cell, int] = {}
        items = terms.items() if isinstance(terms, Mapping) else terms
        for c, v in items:
            self._add(c, v)

    def _add(self, c: Cell, v: int) -> None:
        if not v:
            return
        if cell_degree(c) != self.degree:
            raise ValueError(f"cell of degree {cell_degree(c)} in a degree {self.degree} chain")
        w = self.terms.get(c, 0) + v
        if w:
            self.terms[c] = w
        else:
            del self.terms[c]

    @classmethod
    def of(cls, c: Cell, coeff: int = 1) -> "IntChain":
        return cls(cell_degree(c), [(c, coeff)])

    def copy(self) -> "IntChain":
        out = IntChain(self.degree)
        out.terms = dict(self.terms)
        return out

    def __iter__(self) -> Iterator[tuple[Cell, int]]:
        return iter(sorted(self.terms.items(), key=lambda t: t[0].sort_key()))

    def __len__(self) -> int:
        return len(self.terms)

    def __bool__(self) -> bool:
        return bool(self.terms)

    def __getitem__(self, c: Cell) -> int:
        return self.terms.get(c, 0)

    def _check(self, other: "IntChain") -> None:
        if self.degree != other.degree and self.terms and other.terms:
            raise ValueError(f"degree mismatch {self.degree} vs {other.degree}")

    def __add__(self, other: "IntChain") -> "IntChain":
        self._check(other)
        out = self.copy() if self.terms else IntChain(other.degree)
        if not self.terms:
            out.terms = dict(other.terms)
            return out
        for c, v in other.terms.items():
            out._add(c, v)
        return out

    def __neg__(self) -> "IntChain":
        return IntChain(self.degree, {c: -v for c, v in self.terms.items()})

    def __sub__(self, other: "IntChain") -> "IntChain":
        return self + (-other)

    def __mul__(self, s: int) -> "IntChain":
        if not isinstance(s, int):
            return NotImplemented
        return IntChain(self.degree, {c: s * v for c, v in self.terms.items()})

    __rmul__ = __mul__

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, IntChain):
            return NotImplemented
        if not self.terms and not other.terms:
            return True
        return self.degree == other.degree and self.terms == other.terms

    def __repr__(self) -> str:
        return f"IntChain(degree={self.degree}, {len(self.terms)} terms)"


def _sign(e: int) -> int:
    return -1 if e % 2 else 1


@lru_cache(maxsize=None)
def boundary_terms(c: Cell) -> tuple[tuple[Cell, int], ...]:
    """Signed faces of one cell. Faces that are empty cells and flag
    removals that would empty the flag are dropped."""
    jn = size(c.j_all)
    at = abs(c.tau)
    le = 1 if c.rel == Rel.LE else 0
    out: dict[Cell, int] = {}

    def put(face: Cell, s: int) -> None:
        if face.is_empty():
            return
        w = out.get(face, 0) + s
        if w:
            out[face] = w
        else:
            del out[face]

    if at == 1:
        put(c._replace(tau=0), _sign(jn))
    if le:
        put(c._replace(rel=Rel.EQ), _sign(jn + at))
    for j in labels_of(c.j_all):
        bit = 1 << (j - 1)
        put(c._replace(j_le=c.j_le & ~bit, j_ge=c.j_ge & ~bit),
            _sign(position_in_complement(c, j) - 1))
    if c.k > 1:
        s = _sign(jn + at + le - 1)
        for idx in range(c.k):
            flag = c.flag[:idx] + c.flag[idx + 1:]
            put(c._replace(flag=flag), s * _sign(idx))
    return tuple(sorted(out.items(), key=lambda t: t[0].sort_key()))


def boundary_cell(c: Cell) -> IntChain:
    return IntChain(cell_degree(c) - 1, boundary_terms(c))


def boundary(ch: IntChain) -> IntChain:
    out = IntChain(ch.degree - 1)
    for c, v in ch.terms.items():
        for f, w in boundary_terms(c):
            out._add(f, v * w)
    return out


def grouped_cell(flag: tuple[int, ...], j_le: int, j_ge: int, rel: Rel) -> IntChain:
    """e^{+1} - e^{-1}, expanded over the partitions A | B of j_le & j_ge
    with weight (-1)^{|A|-1}."""
    overlap = j_le & j_ge
    base_le = j_le & ~overlap
    base_ge = j_ge & ~overlap
    labs = labels_of(overlap)
    terms = []
    for bits in range(1 << len(labs)):
        a = mask_of(j for t, j in enumerate(labs) if bits >> t & 1)
        b = overlap & ~a
        w = _sign(size(a) - 1)
        for tau in (1, -1):
            terms.append((Cell(tuple(flag), base_le | a, base_ge | b, Rel(rel), tau), w * tau))
    degree = cell_degree(terms[0][0])
    return IntChain(degree, terms)


def cube_degree(k1: int, k2: int, rel: Rel, n: int) -> int:
    """Degree of the cube chain e_{k1,k2,rel}: n + 2 - |k1| for LE, one less for EQ."""
    d = n + 2 - size(k1)
    return d if rel == Rel.LE else d - 1


def cube_chain(k1: int, k2: int, rel: Rel, n: int) -> IntChain:
    out = IntChain(cube_degree(k1, k2, rel, n))
    for g in enumerate_group(k1, k2, rel, n):
        out = out + group_sign(g) * grouped_cell(g.flag, g.j_le, g.j_ge, g.rel)
    return out


def _level_terms(I: list[int], level: int) -> list[tuple[int, int]]:
    """(tau sign, k1 mask) pairs of the level sum; level = m - j."""
    m = len(I)
    j = m - level
    if not 1 <= level <= m:
        raise ValueError(f"level {level} out of range 1..{m}")
    prefix = I[: m - j - 1]
    return [(tau_sign(I, j, k), mask_of(prefix + [I[k - 1]])) for k in range(m - j, m + 1)]


def generator_level(I: Iterable[int], level: int, rel: Rel, n: int) -> IntChain:
    """e_{I,level} (rel EQ) or its relative lift (rel LE)."""
    I = sorted(I)
    k2 = mask_of(I)
    out = IntChain(cube_degree(mask_of(I[:level]), k2, rel, n))
    for s, k1 in _level_terms(I, level):
        out = out + s * cube_chain(k1, k2, rel, n)
    return out


def split_uv(I: Iterable[int], level: int, n: int) -> tuple[IntChain, IntChain]:
    """The u + v splitting of e_{I,level} with u supported in one sphere block."""
    I = sorted(I)
    k2 = mask_of(I)
    if level >= len(I):
        raise ValueError("splitting needs level < |I|")
    terms = _level_terms(I, level)
    s, k1 = terms[0]
    u = s * cube_chain(k1, k2, Rel.EQ, n)
    v = IntChain(u.degree)
    for s, k1 in terms[1:]:
        v = v + s * cube_chain(k1, k2, Rel.EQ, n)
    return u, v


def part_in_sphere(ch: IntChain, j: int) -> IntChain:
    bit = 1 << (j - 1)
    return IntChain(ch.degree, {c: v for c, v in ch.terms.items() if c.flag[0] & bit})


def iterated_boundary(ch: IntChain, I: Iterable[int]) -> IntChain:
    """Take the boundary and keep the part in S_{i_1}, then S_{i_2}, ..."""
    for j in sorted(I):
        ch = part_in_sphere(boundary(ch), j)
    return ch


def generator_prefactor(I: Iterable[int]) -> int:
    return _sign(min(I) - 1)


@dataclass
class GeneratorSet:
    n: int
    e: dict[int, IntChain] = field(default_factory=dict)
    E: dict[int, IntChain] = field(default_factory=dict)


def top_generators(n: int) -> GeneratorSet:
    if n < 0:
        raise ValueError("generators need n >= 0")
    gs = GeneratorSet(n)
    for I in range(1, full_mask(n) + 1):
        labs = labels_of(I)
        s = generator_prefactor(labs)
        gs.e[I] = s * generator_level(labs, 1, Rel.EQ, n)
        gs.E[I] = s * generator_level(labs, 1, Rel.LE, n)
    return gs
