"""Index sets of the cell complex and the sign calculus built on them.

Subsets of sphere labels {1, ..., n+1} are plain ints used as bitmasks:
label ``j`` lives in bit ``j - 1``.
"""
from __future__ import annotations

from enum import IntEnum
from functools import lru_cache
from itertools import combinations, permutations
from typing import Iterable, NamedTuple, Sequence


class Rel(IntEnum):
    """Relation tag of a cell: inside the sphere (LE) or on it (EQ)."""
    LE = 0
    EQ = 1


def mask_of(labels: Iterable[int]) -> int:
    m = 0
    for j in labels:
        if j < 1:
            raise ValueError(f"labels are 1-based, got {j}")
        m |= 1 << (j - 1)
    return m


def labels_of(mask: int) -> list[int]:
    out = []
    j = 1
    while mask:
        if mask & 1:
            out.append(j)
        mask >>= 1
        j += 1
    return out


def full_mask(n: int) -> int:
    return (1 << (n + 1)) - 1


def size(mask: int) -> int:
    return bin(mask).count("1")


def check_mask(mask: int, n: int) -> None:
    if mask < 0 or mask & ~full_mask(n):
        raise ValueError(f"mask {mask:#b} has labels outside 1..{n + 1}")


class Cell(NamedTuple):
    """One cell e_i^tau: a flag I_1 < ... < I_k, the two real-direction
    sets, the relation tag and the sign tau of the v-direction."""
    flag: tuple[int, ...]
    j_le: int
    j_ge: int
    rel: Rel
    tau: int

    @property
    def k(self) -> int:
        return len(self.flag)

    @property
    def top(self) -> int:
        return self.flag[-1]

    @property
    def j_all(self) -> int:
        return self.j_le | self.j_ge

    @property
    def m(self) -> int:
        """Number of real cone directions."""
        return size(self.j_all) + abs(self.tau)

    def sort_key(self) -> tuple:
        return (len(self.flag), self.flag, self.j_le, self.j_ge, int(self.rel), self.tau)

    def is_empty(self) -> bool:
        # (z - a)^2 = 1 with Re z = 0 and Im z in the flag simplex has no solution
        return self.rel == Rel.EQ and self.m == 0

    def validate(self, n: int) -> None:
        if not self.flag:
            raise ValueError("flag must be nonempty")
        prev = 0
        for s in self.flag:
            check_mask(s, n)
            if s == 0 or (s & prev) != prev or s == prev:
                raise ValueError(f"flag {self.flag} is not strictly increasing")
            prev = s
        if self.j_le & self.j_ge:
            raise ValueError("j_le and j_ge must be disjoint")
        if self.j_all & self.top:
            raise ValueError("j_le, j_ge must avoid the top set of the flag")
        check_mask(self.j_all, n)
        if self.tau not in (-1, 0, 1):
            raise ValueError(f"tau must be -1, 0 or 1, got {self.tau}")


def format_cell(c: Cell) -> str:
    fl = ",".join("{" + ",".join(map(str, labels_of(s))) + "}" for s in c.flag)
    rel = "<=" if c.rel == Rel.LE else "="
    return f"e[({fl}), le={labels_of(c.j_le)}, ge={labels_of(c.j_ge)}, {rel}, tau={c.tau}]"


def _chains_above(start: int, universe: int) -> list[tuple[int, ...]]:
    out = [(start,)]
    rest = universe & ~start
    subs = []
    r = rest
    while r:
        subs.append(r)
        r = (r - 1) & rest
    for extra in subs:
        for tail in _chains_above(start | extra, universe):
            out.append((start,) + tail)
    return out


@lru_cache(maxsize=None)
def enumerate_flags(n: int) -> tuple[tuple[int, ...], ...]:
    """All strictly increasing chains of nonempty subsets of {1..n+1},
    sorted by (length, masks)."""
    if n < 0:
        raise ValueError("n must be >= 0")
    full = full_mask(n)
    flags = []
    for start in range(1, full + 1):
        flags.extend(_chains_above(start, full))
    flags.sort(key=lambda f: (len(f), f))
    return tuple(flags)


def _split_three(mask: int):
    """All (a, b) with a, b disjoint and a | b inside mask."""
    labs = labels_of(mask)
    for choice in range(3 ** len(labs)):
        a = b = 0
        c = choice
        for j in labs:
            c, r = divmod(c, 3)
            if r == 1:
                a |= 1 << (j - 1)
            elif r == 2:
                b |= 1 << (j - 1)
        yield a, b


@lru_cache(maxsize=None)
def enumerate_cells(n: int) -> tuple[Cell, ...]:
    """Every cell (i, tau), i in the base index set, both relations, all tau;
    canonical order. Empty EQ cells (no real directions) are included."""
    full = full_mask(n)
    cells = []
    for flag in enumerate_flags(n):
        for a, b in _split_three(full & ~flag[-1]):
            for rel in (Rel.LE, Rel.EQ):
                for tau in (-1, 0, 1):
                    cells.append(Cell(flag, a, b, rel, tau))
    cells.sort(key=Cell.sort_key)
    return tuple(cells)


class GroupIndex(NamedTuple):
    """Element of the group index set: a flag starting at k1 that grows one
    label at a time inside k2. Real directions are implied."""
    n: int
    k1: int
    k2: int
    rel: Rel
    flag: tuple[int, ...]

    @property
    def j_le(self) -> int:
        return full_mask(self.n) & ~self.k2

    @property
    def j_ge(self) -> int:
        return full_mask(self.n) & ~self.flag[-1]

    @property
    def added(self) -> list[int]:
        """Labels added at each growth step, in order."""
        return [labels_of(b & ~a)[0] for a, b in zip(self.flag, self.flag[1:])]


def enumerate_group(k1: int, k2: int, rel: Rel, n: int) -> list[GroupIndex]:
    check_mask(k1, n)
    check_mask(k2, n)
    if k1 == 0 or k2 == 0 or (k1 & ~k2):
        return []
    free = labels_of(k2 & ~k1)
    out = []
    for length in range(len(free) + 1):
        for order in permutations(free, length):
            flag = [k1]
            for j in order:
                flag.append(flag[-1] | (1 << (j - 1)))
            out.append(GroupIndex(n, k1, k2, Rel(rel), tuple(flag)))
    return out


def position_in_complement(c: Cell, j: int) -> int:
    """1-based rank of j inside j_le | j_ge."""
    labs = labels_of(c.j_all)
    if j not in labs:
        raise ValueError(f"label {j} not among the real directions {labs}")
    return labs.index(j) + 1


def count_smaller(k1: int, j: int, n: int) -> int:
    """Number of labels outside k1 that are smaller than j."""
    if k1 & (1 << (j - 1)):
        raise ValueError(f"label {j} lies in k1")
    return sum(1 for x in range(1, j) if not k1 & (1 << (x - 1)))


class SignedPermutation(NamedTuple):
    images: tuple[int, ...]
    parity: int


def permutation_parity(images: Sequence[int]) -> int:
    inv = sum(1 for a, b in combinations(images, 2) if a > b)
    return -1 if inv % 2 else 1


def group_permutation(g: GroupIndex) -> SignedPermutation:
    """Ordering of the labels outside k1: the labels outside the top set in
    increasing order, then the grown labels in the order they were added."""
    images = tuple(labels_of(full_mask(g.n) & ~g.flag[-1])) + tuple(g.added)
    return SignedPermutation(images, permutation_parity(images))


def group_sign(g: GroupIndex) -> int:
    """Sign attached to a member of a group index set.

    (-1)^{[LE](|J|+1)} * (-1)^{|k2 - k1|} * parity of group_permutation(g).
    """
    e = size(g.k2 & ~g.k1)
    if g.rel == Rel.LE:
        e += size(full_mask(g.n) & ~g.flag[-1]) + 1
    s = -1 if e % 2 else 1
    return s * group_permutation(g).parity


def literal_group_sign(g: GroupIndex) -> int:
    """The variant that sorts the complement of the grown part (k1 included)
    and weights by (-1)^{(k-1)|k1|}. Kept for comparison only: it violates
    the append and shift identities (see tests)."""
    grown = g.flag[-1] & ~g.k1
    images = tuple(labels_of(full_mask(g.n) & ~grown)) + tuple(g.added)
    e = (len(g.flag) - 1) * size(g.k1)
    if g.rel == Rel.LE:
        e += size(full_mask(g.n) & ~g.flag[-1]) + 1
    return (-1 if e % 2 else 1) * permutation_parity(images)


def tau_sign(I: Sequence[int], j: int, k: int) -> int:
    """tau_k^{m,j} for the sorted label list I (k is 1-based)."""
    m = len(I)
    if list(I) != sorted(set(I)) or m == 0:
        raise ValueError("I must be a nonempty sorted list of distinct labels")
    if not 0 <= j <= m - 1:
        raise ValueError(f"level j={j} out of range for m={m}")
    if not m - j <= k <= m:
        raise ValueError(f"index k={k} out of range for m={m}, j={j}")
    e = I[k - 1] + sum(I[l - 1] for l in range(m - j, m + 1)) - j * m + j * (j + 1) // 2
    return -1 if e % 2 else 1
