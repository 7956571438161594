"""Exhaustive checks of the chain-level identities. Each check returns a
CheckResult with a count of cases and the failing cases (as strings)."""
from __future__ import annotations

from dataclasses import dataclass, field
from itertools import combinations
from typing import Callable

import numpy as np

from .cells import (
    boundary,
    boundary_cell,
    cube_chain,
    generator_level,
    iterated_boundary,
    split_uv,
    top_generators,
)
from .combinatorics import (
    GroupIndex,
    Rel,
    count_smaller,
    enumerate_cells,
    enumerate_group,
    format_cell,
    full_mask,
    group_sign,
    labels_of,
    mask_of,
    size,
    tau_sign,
)
from .homology import Filter, class_rank, is_cycle

MAX_SHOWN = 5


@dataclass
class CheckResult:
    name: str
    cases: int = 0
    failures: list[str] = field(default_factory=list)
    info: str = ""

    @property
    def ok(self) -> bool:
        return not self.failures

    def fail(self, msg: str) -> None:
        self.failures.append(msg)

    def line(self) -> str:
        status = "PASS" if self.ok else "FAIL"
        extra = f" {self.info}" if self.info else ""
        out = f"{status} {self.name}: {self.cases} cases, {len(self.failures)} failures{extra}"
        for f in self.failures[:MAX_SHOWN]:
            out += f"\n    counterexample: {f}"
        return out


def _sign(e: int) -> int:
    return -1 if e % 2 else 1


def check_boundary_squared(n: int) -> CheckResult:
    res = CheckResult(f"boundary squared n={n}")
    for c in enumerate_cells(n):
        if c.is_empty():
            continue
        res.cases += 1
        if boundary(boundary_cell(c)):
            res.fail(format_cell(c))
    return res


def _subset_pairs(n: int):
    full = full_mask(n)
    for k2 in range(1, full + 1):
        k1 = k2
        while k1:
            yield k1, k2
            k1 = (k1 - 1) & k2


SignFn = Callable[[GroupIndex], int]


def check_sign_identities(n: int, sgn: SignFn = group_sign) -> list[CheckResult]:
    """The four identities of the sign map on the group index sets."""
    r1 = CheckResult(f"sign identity 1 (LE vs EQ) n={n}")
    r2 = CheckResult(f"sign identity 2 (swap) n={n}")
    r3 = CheckResult(f"sign identity 3 (append) n={n}")
    r4 = CheckResult(f"sign identity 4 (shift) n={n}")
    full = full_mask(n)
    for k1, k2 in _subset_pairs(n):
        for rel in (Rel.LE, Rel.EQ):
            le = int(rel == Rel.LE)
            members = {g.flag: g for g in enumerate_group(k1, k2, rel, n)}
            for g in members.values():
                k = len(g.flag)
                J = full & ~g.flag[-1]
                if rel == Rel.LE:
                    r1.cases += 1
                    if sgn(g) != _sign(size(J) + 1) * sgn(g._replace(rel=Rel.EQ)):
                        r1.fail(f"{g}")
                for j in range(2, k):
                    r2.cases += 1
                    a, b = g.flag[j - 1] & ~g.flag[j - 2], g.flag[j] & ~g.flag[j - 1]
                    swapped = list(g.flag)
                    swapped[j - 1] = (g.flag[j - 1] | b) & ~a
                    other = members[tuple(swapped)]
                    if sgn(g) != -sgn(other):
                        r2.fail(f"{g} position {j}")
                for j in labels_of(k2 & J):
                    r3.cases += 1
                    grown = members[g.flag + (g.flag[-1] | 1 << (j - 1),)]
                    n_ij = labels_of(J).index(j) + 1
                    e = size(J) - 1 + le + k - n_ij
                    if sgn(grown) != _sign(e) * sgn(g):
                        r3.fail(f"{g} append {j}")
                if k > 1:
                    r4.cases += 1
                    j = labels_of(g.flag[1] & ~g.flag[0])[0]
                    shifted = GroupIndex(n, g.flag[1], k2, rel, g.flag[1:])
                    e = size(J) + count_smaller(k1, j, n) - 1
                    if sgn(g) != _sign(e) * sgn(shifted):
                        r4.fail(f"{g}")
    return [r1, r2, r3, r4]


def check_tau_relations(max_m: int = 6, pad: int = 2) -> list[CheckResult]:
    """The three tau relations over all label sets of size m <= max_m inside
    1..m+pad, for 1 <= j <= m-1 and k, l in m-j+1..m."""
    rs = [CheckResult(f"tau relation {i} m<={max_m}") for i in (1, 2, 3)]
    for m in range(1, max_m + 1):
        for I in combinations(range(1, m + pad + 1), m):
            I = list(I)
            for j in range(1, m):
                lo = m - j + 1
                for k in range(lo, m + 1):
                    rs[0].cases += 1
                    if _sign(I[k - 1] - m + j) * tau_sign(I, j, m - j) != tau_sign(I, j - 1, k):
                        rs[0].fail(f"I={I} j={j} k={k}")
                    rs[1].cases += 1
                    if _sign(I[m - j - 1] - m + j) * tau_sign(I, j, k) != tau_sign(I, j - 1, k):
                        rs[1].fail(f"I={I} j={j} k={k}")
                    for l in range(lo, m + 1):
                        rs[2].cases += 1
                        if _sign(I[k - 1]) * tau_sign(I, j, l) != _sign(I[l - 1]) * tau_sign(I, j, k):
                            rs[2].fail(f"I={I} j={j} k={k} l={l}")
    return rs


def check_cube_lemma(n: int) -> CheckResult:
    res = CheckResult(f"cube lemma n={n}")
    for k1, k2 in _subset_pairs(n):
        for rel in (Rel.LE, Rel.EQ):
            le = int(rel == Rel.LE)
            res.cases += 1
            lhs = boundary(cube_chain(k1, k2, rel, n))
            rhs = cube_chain(k1, k2, Rel.EQ, n) * le
            for j in labels_of(k2 & ~k1):
                e = count_smaller(k1, j, n) + le - 1
                rhs = rhs + _sign(e) * cube_chain(k1 | 1 << (j - 1), k2, rel, n)
            if lhs != rhs:
                res.fail(f"K1={labels_of(k1)} K2={labels_of(k2)} rel={rel.name}")
    return res


def check_generators(n: int) -> list[CheckResult]:
    g = top_generators(n)
    cyc = CheckResult(f"generator e_I is a cycle n={n}")
    lift = CheckResult(f"boundary of E_I equals e_I n={n}")
    mv = CheckResult(f"Mayer-Vietoris splitting n={n}")
    it = CheckResult(f"iterated boundary of E_I equals e_(I,I,=) n={n}")
    rel = CheckResult(f"relative generator E_I is a relative cycle n={n}")
    for I in range(1, full_mask(n) + 1):
        labs = labels_of(I)
        tag = f"I={labs}"
        cyc.cases += 1
        if boundary(g.e[I]) or not is_cycle(g.e[I], n, Filter.EQ_ONLY):
            cyc.fail(tag)
        lift.cases += 1
        if boundary(g.E[I]) != g.e[I]:
            lift.fail(tag)
        rel.cases += 1
        if not is_cycle(g.E[I], n, Filter.RELATIVE):
            rel.fail(tag)
        m = len(labs)
        for level in range(1, m):
            mv.cases += 1
            u, v = split_uv(labs, level, n)
            target = generator_level(labs, level + 1, Rel.EQ, n)
            if boundary(u) != target or boundary(v) != -target:
                mv.fail(f"{tag} level={level}")
        it.cases += 1
        if iterated_boundary(g.E[I], labs) != cube_chain(I, I, Rel.EQ, n):
            it.fail(tag)
    return [cyc, lift, mv, it, rel]


def check_generator_ranks(n: int) -> list[CheckResult]:
    g = top_generators(n)
    want = 2 ** (n + 1) - 1
    out = []
    for name, chains, f in (("e_I", g.e, Filter.EQ_ONLY), ("E_I", g.E, Filter.RELATIVE)):
        r = CheckResult(f"class rank of {name} n={n}", cases=1)
        got = class_rank(list(chains.values()), n, f)
        r.info = f"rank {got}"
        if got != want:
            r.fail(f"rank {got} != {want}")
        out.append(r)
    return out


def check_geometry(n: int, samples: int, seed: int = 0) -> list[CheckResult]:
    from . import geometry as geo
    rng = np.random.default_rng(seed)
    rt = CheckResult(f"corner map round trips dims<=6 seed={seed}")
    for dim in range(1, 7):
        for _ in range(samples):
            signs = rng.choice([-1.0, 1.0], size=dim)
            x = rng.dirichlet(np.ones(dim + 1))[:dim]
            rt.cases += 1
            y = geo.corner_map_inverse(x, signs)
            if np.abs(geo.corner_map(y, signs) - x).max() > geo.TOL:
                rt.fail(f"simplex point {x}")
            if abs(np.abs(x).sum() - np.linalg.norm(y)) > geo.TOL:
                rt.fail(f"norm identity at {x}")
    mem = CheckResult(f"parametrized points lie in their cells n={n} seed={seed}")
    ortho = CheckResult(f"(z - a_j0)^2 is real on cells n={n} seed={seed}")
    cells = [c for c in enumerate_cells(n) if not c.is_empty()]
    per_cell = -(-samples // len(cells))
    for c in cells:
        j0 = labels_of(c.flag[0])[0]
        for _ in range(per_cell):
            z = geo.random_interior_point(c, n, rng)
            mem.cases += 1
            if not geo.cell_membership(z, c, n):
                mem.fail(format_cell(c))
            ortho.cases += 1
            if abs(np.sum((z - geo.sphere_center(j0, n)) ** 2).imag) > geo.TOL:
                ortho.fail(format_cell(c))
    gp = CheckResult(f"general position n={n} seed={seed}")
    worst = np.inf
    for I in range(1, full_mask(n) + 1):
        gp.cases += 1
        ok, s = geo.check_general_position(I, n, 100, seed)
        worst = min(worst, s)
        if not ok:
            gp.fail(f"I={labels_of(I)} smallest singular value {s:.3e}")
    gp.info = f"min singular value {worst:.6f}"
    return [rt, mem, ortho, gp]


def check_intersection(n: int) -> list[CheckResult]:
    from .intersection import (
        basis_change_det,
        index_with_imaginary,
        vanishing_closed_form,
        vanishing_pair_index,
    )
    det = CheckResult("basis change determinant n+1<=9")
    for N in range(1, 10):
        for k in range(1, N + 1):
            det.cases += 1
            if basis_change_det(N - 1, k) != _sign(k - 1):
                det.fail(f"n={N - 1} k={k}")
    idx = CheckResult(f"index with imaginary plane is 1 for |I|=1, 0 otherwise n={n}")
    vals = []
    for I in range(1, full_mask(n) + 1):
        idx.cases += 1
        v, cert = index_with_imaginary(I, n)
        want = 1 if size(I) == 1 else 0
        vals.append(f"{labels_of(I)}:{v}")
        if v != want:
            idx.fail(f"I={labels_of(I)} index {v} (shift-invariant over {len(cert.counts)} shifts)")
    idx.info = "values " + " ".join(vals)
    van = CheckResult(f"vanishing pairings match the closed form n={n}")
    for J in range(1, full_mask(n) + 1):
        for I in range(1, full_mask(n) + 1):
            van.cases += 1
            if vanishing_pair_index(J, I, n)[0] != vanishing_closed_form(J, I, n):
                van.fail(f"J={labels_of(J)} I={labels_of(I)}")
    return [det, idx, van]


SUITES = ("boundary", "signs", "cube", "generators", "geometry", "intersection")


def run_suite(suite: str, n: int, seed: int = 0) -> list[CheckResult]:
    if suite == "boundary":
        return [check_boundary_squared(n)]
    if suite == "signs":
        return check_sign_identities(n) + check_tau_relations()
    if suite == "cube":
        return [check_cube_lemma(n)]
    if suite == "generators":
        return check_generators(n) + check_generator_ranks(n)
    if suite == "geometry":
        return check_geometry(n, 1000, seed)
    if suite == "intersection":
        return check_intersection(n)
    if suite == "all":
        out = []
        for s in SUITES:
            out += run_suite(s, n, seed)
        return out
    raise ValueError(f"unknown suite {suite!r}")
