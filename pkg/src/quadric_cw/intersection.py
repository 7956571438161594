"""Intersection indices: orientation determinants, the pairing of relative
classes with the imaginary plane (i*R)^{n+1}, sphere self-intersections and
the pairing of vanishing spheres with the relative generators.

Pairing with the imaginary plane is computed by a transverse count: shift
the plane by a small generic real vector eps*w. The shifted plane misses
every sphere for eps*|w| < 1, so the count equals the index. It only meets
cells whose real cone is full dimensional, i.e. cells with flag ({j}),
tau != 0 and real directions all labels but j, at the point a_j + eps*w.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from functools import lru_cache

import numpy as np

from .cells import IntChain, iterated_boundary, top_generators
from .combinatorics import Cell, Rel, full_mask, labels_of, mask_of, size
from .homology import bareiss_det


def _sign(e: int) -> int:
    return -1 if e % 2 else 1


def cone_frame(n: int, j: int) -> list[list[int]]:
    """Columns v_l (l != j, increasing) then v, as an integer matrix."""
    N = n + 1
    cols = [[1 - int(r == l - 1) for r in range(N)] for l in range(1, N + 1) if l != j]
    cols.append([1] * N)
    return [[col[r] for col in cols] for r in range(N)]


def basis_change_det(n: int, k: int) -> int:
    """Exact determinant of [v_1, ..., v_k omitted, ..., v_{n+1}, v]."""
    if not 1 <= k <= n + 1:
        raise ValueError(f"k must lie in 1..{n + 1}")
    return bareiss_det(cone_frame(n, k))


def _simplex_orientation(c: Cell) -> int:
    """Orientation of a full-dimensional cone cell relative to its frame
    (v_l for l in j_le|j_ge increasing, v), in the ordered-simplex convention
    that the boundary operator is built on. Real coordinates d_l carry the
    sign -1 on j_le, the v coordinate carries tau; the simplex [e_1..e_m, 0]
    contributes (-1)^m."""
    return _sign(c.m) * c.tau * _sign(size(c.j_le))


@lru_cache(maxsize=None)
def declared_orientation_sign() -> int:
    """Global factor that turns the ordered-simplex convention into the
    declared one: the disk e_{{1},{1},<=} at n = 0 is positive w.r.t. v.
    The uniformity of this factor over all n, k is checked in the tests."""
    return disk_orientation(0, 1, 1)


def disk_orientation(n: int, k: int, omega: int = 1) -> int:
    """Orientation of the top disk e_{{k},{k},<=} relative to the frame
    (v_1..v_k omitted..v_{n+1}, v), read off one of its full cells."""
    from .cells import cube_chain
    ch = cube_chain(1 << (k - 1), 1 << (k - 1), Rel.LE, n)
    full = full_mask(n) & ~(1 << (k - 1))
    c = Cell((1 << (k - 1),), 0, full, Rel.LE, 1)
    return omega * ch[c] * _simplex_orientation(c)


def cone_coordinates(n: int, j: int, w: tuple[int, ...]) -> tuple[int, list[int]]:
    """Coordinates of the real vector w in the frame (v, v_l for l != j):
    d_l = w_j - w_l and d = w_j - sum d_l. Exact."""
    wj = w[j - 1]
    dl = [wj - w[l - 1] for l in range(1, n + 2) if l != j]
    return wj - sum(dl), dl


def shift_vectors(n: int, count: int, seed: int) -> list[tuple[int, ...]]:
    """Deterministic integer shifts in general position: every cone
    coordinate at every center is nonzero."""
    rng = np.random.default_rng(seed)
    out = []
    while len(out) < count:
        w = tuple(int(x) for x in rng.integers(-1000, 1001, size=n + 1))
        if all(d and all(cone_coordinates(n, j, w)[1]) for j in range(1, n + 2)
               for d in [cone_coordinates(n, j, w)[0]]):
            out.append(w)
    return out


@dataclass
class TransversePoint:
    cell: Cell
    coefficient: int
    frame_det: int
    local_sign: int


@dataclass
class OrientationCertificate:
    """Evidence for an index value: the frame determinants used, the signed
    transverse points for each shift, and the outcome of the disjointness
    witness search (a label outside I with a nonnegative cone coefficient on
    every cell that meets the plane). The witness only applies to |I| >= 2,
    where the plane is claimed to miss the class; otherwise it is None."""
    label: str
    determinant: int
    index: int
    shifts: list[tuple[int, ...]] = field(default_factory=list)
    counts: list[int] = field(default_factory=list)
    points: list[list[TransversePoint]] = field(default_factory=list)
    witness_found: bool | None = None
    witness_failures: list[Cell] = field(default_factory=list)

    @property
    def shift_invariant(self) -> bool:
        return len(set(self.counts)) == 1


def transverse_count(ch: IntChain, n: int, w: tuple[int, ...], omega: int | None = None) -> tuple[int, list[TransversePoint]]:
    """Signed count of (i*R)^{n+1} + eps*w against the chain. The local sign
    is the orientation of the cell's real frame in R^{n+1}."""
    if omega is None:
        omega = declared_orientation_sign()
    N = n + 1
    total = 0
    pts = []
    for c, coef in ch:
        if c.k != 1 or c.tau == 0 or c.m != N or size(c.flag[0]) != 1:
            continue
        j = labels_of(c.flag[0])[0]
        d, dl = cone_coordinates(n, j, w)
        if (d > 0) != (c.tau > 0):
            continue
        others = [l for l in range(1, N + 1) if l != j]
        if not all((x < 0) == bool(c.j_le >> (l - 1) & 1) for x, l in zip(dl, others)):
            continue
        det = bareiss_det(cone_frame(n, j))
        s = omega * _simplex_orientation(c) * det
        total += coef * s
        pts.append(TransversePoint(c, coef, det, s))
    return total, pts


def _witness(c: Cell, I: int) -> bool:
    """A label outside I whose coefficient is constrained nonnegative."""
    return bool(c.j_ge & ~I)


def chain_index(ch: IntChain, n: int, label: str = "", shifts: int = 8, seed: int = 0,
                I: int | None = None) -> OrientationCertificate:
    ws = shift_vectors(n, shifts, seed)
    cert = OrientationCertificate(label, 0, 0, ws)
    for w in ws:
        t, pts = transverse_count(ch, n, w)
        cert.counts.append(t)
        cert.points.append(pts)
    if not cert.shift_invariant:
        raise ArithmeticError(f"transverse count depends on the shift: {cert.counts}; not a relative cycle")
    cert.index = cert.counts[0]
    dets = {p.frame_det for pts in cert.points for p in pts}
    cert.determinant = dets.pop() if len(dets) == 1 else 0
    if I is not None:
        bad = sorted({p.cell for pts in cert.points for p in pts if not _witness(p.cell, I)},
                     key=Cell.sort_key)
        cert.witness_failures = bad
        cert.witness_found = not bad
    return cert


@lru_cache(maxsize=None)
def _generators(n: int):
    return top_generators(n)


def index_with_imaginary(I, n: int, shifts: int = 8, seed: int = 0) -> tuple[int, OrientationCertificate]:
    """<(i*R)^{n+1} | E_I> by the certified transverse count."""
    I = mask_of(I) if not isinstance(I, int) else I
    if I == 0 or I & ~full_mask(n):
        raise ValueError("I must be a nonempty subset of 1..n+1")
    cert = chain_index(_generators(n).E[I], n, "E" + str(labels_of(I)), shifts, seed,
                       I if size(I) >= 2 else None)
    return cert.index, cert


def sphere_self_intersection(k: int) -> int:
    if k < 0:
        raise ValueError("k must be >= 0")
    return 0 if k % 2 else 2 * _sign(k // 2)


def pl_sign(n: int, m: int) -> int:
    return _sign((n - m) * (n - m + 1) // 2)


def duality_sign(N: int, k: int) -> int:
    return _sign(N * k + N * (N + 1) // 2)


def vanishing_closed_form(J, I, n: int) -> int:
    J = mask_of(J) if not isinstance(J, int) else J
    I = mask_of(I) if not isinstance(I, int) else I
    if I != J or (n + 1 - size(I)) % 2:
        return 0
    return 2 * _sign((n + 1) * (n + 2) // 2)


@dataclass
class VanishingChain:
    """Steps of the pairing of the vanishing sphere of J with E_I."""
    m: int
    k: int
    duality: int
    multiplicity: int
    self_intersection: int
    value: int


@lru_cache(maxsize=None)
def _vanishing_cycle(J: int, n: int) -> IntChain:
    cyc = iterated_boundary(_generators(n).E[J], labels_of(J))
    if not cyc:
        raise ArithmeticError("iterated boundary of the generator vanishes")
    return cyc


def vanishing_multiplicity(J: int, I: int, n: int) -> int:
    """Multiple of the vanishing cycle of J inside the iterated boundary of
    E_I along J. Only I = J reaches the pinch; other I are supported away
    from it and contribute 0."""
    if I != J:
        return 0
    e = _vanishing_cycle(J, n)
    r = iterated_boundary(_generators(n).E[I], labels_of(J))
    c, v = next(iter(e))
    lam = r[c] // v
    if r != lam * e:
        raise ArithmeticError("iterated boundary is not a multiple of the vanishing cycle")
    return lam


def vanishing_pair_index(sphere_I, cell_I, n: int) -> tuple[int, VanishingChain]:
    """<e~_J | E_I> = duality(m, k) * <e | d^m E_I> with the vanishing cycle e
    oriented as the iterated boundary of E_J, and <e|e> the self-intersection
    of a real k-sphere in its complex sphere."""
    J = mask_of(sphere_I) if not isinstance(sphere_I, int) else sphere_I
    I = mask_of(cell_I) if not isinstance(cell_I, int) else cell_I
    for s in (I, J):
        if s == 0 or s & ~full_mask(n):
            raise ValueError("subsets must be nonempty inside 1..n+1")
    m = size(J)
    k = n + 1 - m
    lam = vanishing_multiplicity(J, I, n)
    d = duality_sign(m, k)
    si = sphere_self_intersection(k)
    return d * lam * si, VanishingChain(m, k, d, lam, si, d * lam * si)
