"""Exact integer linear algebra on the cellular chain complex.

Smith normal form with unimodular certificates, boundary matrices for the
EQ subcomplex / relative quotient / full complex, homology groups and class
ranks of cycles.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from enum import Enum
from functools import lru_cache
from typing import Iterable, Sequence

from .cells import IntChain, boundary_terms, cell_degree
from .combinatorics import Cell, Rel, enumerate_cells


class Filter(Enum):
    EQ_ONLY = "eq"
    RELATIVE = "relative"
    ALL = "all"


def _keep(c: Cell, f: Filter) -> bool:
    if c.is_empty():
        return False
    if f == Filter.EQ_ONLY:
        return c.rel == Rel.EQ
    if f == Filter.RELATIVE:
        return c.rel == Rel.LE
    return True


@dataclass
class SparseIntMatrix:
    rows: int
    cols: int
    entries: list[tuple[int, int, int]] = field(default_factory=list)

    def __post_init__(self):
        seen = set()
        for r, c, v in self.entries:
            if not (0 <= r < self.rows and 0 <= c < self.cols):
                raise ValueError(f"entry ({r}, {c}) outside {self.rows}x{self.cols}")
            if (r, c) in seen:
                raise ValueError(f"duplicate entry at ({r}, {c})")
            seen.add((r, c))
        self.entries = sorted((r, c, v) for r, c, v in self.entries if v)

    @classmethod
    def from_dense(cls, a: Sequence[Sequence[int]]) -> "SparseIntMatrix":
        rows = len(a)
        cols = len(a[0]) if rows else 0
        return cls(rows, cols, [(i, j, int(x)) for i, row in enumerate(a) for j, x in enumerate(row) if x])

    def to_dense(self) -> list[list[int]]:
        out = [[0] * self.cols for _ in range(self.rows)]
        for r, c, v in self.entries:
            out[r][c] = v
        return out

    def to_text(self) -> str:
        lines = [f"{self.rows} {self.cols} {len(self.entries)}"]
        lines += [f"{r + 1} {c + 1} {v}" for r, c, v in self.entries]
        return "\n".join(lines) + "\n"

    @classmethod
    def from_text(cls, text: str) -> "SparseIntMatrix":
        lines = text.strip().splitlines()
        rows, cols, nnz = map(int, lines[0].split())
        entries = []
        for ln in lines[1:1 + nnz]:
            r, c, v = map(int, ln.split())
            entries.append((r - 1, c - 1, v))
        if len(entries) != nnz:
            raise ValueError("truncated sparse matrix")
        return cls(rows, cols, entries)


def bareiss_det(a: Sequence[Sequence[int]]) -> int:
    """Exact determinant by fraction-free elimination."""
    m = [list(map(int, row)) for row in a]
    k = len(m)
    if k == 0:
        return 1
    sign = 1
    prev = 1
    for i in range(k - 1):
        if m[i][i] == 0:
            for r in range(i + 1, k):
                if m[r][i]:
                    m[i], m[r] = m[r], m[i]
                    sign = -sign
                    break
            else:
                return 0
        for r in range(i + 1, k):
            for c in range(i + 1, k):
                m[r][c] = (m[r][c] * m[i][i] - m[r][i] * m[i][c]) // prev
        prev = m[i][i]
    return sign * m[k - 1][k - 1]


def bareiss_rank(a: Sequence[Sequence[int]]) -> int:
    """Rank by fraction-free Gaussian elimination (independent of the SNF)."""
    m = [list(map(int, row)) for row in a]
    if not m:
        return 0
    rows, cols = len(m), len(m[0])
    r = 0
    prev = 1
    for c in range(cols):
        piv = next((i for i in range(r, rows) if m[i][c]), None)
        if piv is None:
            continue
        m[r], m[piv] = m[piv], m[r]
        for i in range(r + 1, rows):
            for j in range(c + 1, cols):
                m[i][j] = (m[i][j] * m[r][c] - m[i][c] * m[r][j]) // prev
            m[i][c] = 0
        prev = m[r][c]
        r += 1
        if r == rows:
            break
    return r


Sparse = dict[int, dict[int, int]]


@dataclass
class SnfResult:
    """u * a * v = diag(d) with u, v unimodular; u_inv, v_inv certify that.
    Transforms are sparse: a dict of rows, each a dict col -> value."""
    rows: int
    cols: int
    d: list[int]
    u: Sparse
    v: Sparse
    u_inv: Sparse
    v_inv: Sparse

    @property
    def rank(self) -> int:
        return sum(1 for x in self.d if x)


def _axpy(dst: dict[int, int], src: dict[int, int], q: int) -> None:
    for k, x in src.items():
        w = dst.get(k, 0) + q * x
        if w:
            dst[k] = w
        else:
            dst.pop(k, None)


def _ident(k: int) -> Sparse:
    return {i: {i: 1} for i in range(k)}


def _transpose(m: Sparse, size_: int) -> Sparse:
    out: Sparse = {i: {} for i in range(size_)}
    for i, row in m.items():
        for j, x in row.items():
            out[j][i] = x
    return out


def sparse_matmul(a: Sparse, b: Sparse) -> Sparse:
    out: Sparse = {}
    for i, row in a.items():
        acc: dict[int, int] = {}
        for k, x in row.items():
            if k in b:
                _axpy(acc, b[k], x)
        out[i] = acc
    return out


def smith_normal_form(m: "SparseIntMatrix | Sequence[Sequence[int]]", certify: bool = True) -> SnfResult:
    """Smith normal form over Z by sparse elimination.

    Pivot: least absolute value, ties broken by Markowitz cost. Entries that
    the pivot does not divide are reduced Euclid-style until it does. The
    transforms and their inverses are tracked; with certify=True the result
    is verified (u*a*v = diag(d), u*u_inv = 1, v*v_inv = 1, divisor chain)
    before returning.
    """
    if not isinstance(m, SparseIntMatrix):
        m = SparseIntMatrix.from_dense(m)
    rows, cols = m.rows, m.cols
    a: Sparse = {i: {} for i in range(rows)}
    colidx: dict[int, set[int]] = {j: set() for j in range(cols)}
    for r, c, x in m.entries:
        a[r][c] = x
        colidx[c].add(r)
    u = _ident(rows)            # rows of u
    ui_cols = _ident(rows)      # columns of u_inv
    v_cols = _ident(cols)       # columns of v
    vi = _ident(cols)           # rows of v_inv

    def row_add(i, j, q):       # row_i += q row_j
        before = set(a[i])
        _axpy(a[i], a[j], q)
        after = set(a[i])
        for c in before - after:
            colidx[c].discard(i)
        for c in after - before:
            colidx[c].add(i)
        _axpy(u[i], u[j], q)
        _axpy(ui_cols[j], ui_cols[i], -q)

    def col_add(i, j, q):       # col_i += q col_j
        for r in list(colidx[j]):
            w = a[r].get(i, 0) + q * a[r][j]
            if w:
                a[r][i] = w
                colidx[i].add(r)
            else:
                a[r].pop(i, None)
                colidx[i].discard(r)
        _axpy(v_cols[i], v_cols[j], q)
        _axpy(vi[j], vi[i], -q)

    def row_swap(i, j):
        if i == j:
            return
        for c in a[i]:
            colidx[c].discard(i)
        for c in a[j]:
            colidx[c].discard(j)
        a[i], a[j] = a[j], a[i]
        for c in a[i]:
            colidx[c].add(i)
        for c in a[j]:
            colidx[c].add(j)
        u[i], u[j] = u[j], u[i]
        ui_cols[i], ui_cols[j] = ui_cols[j], ui_cols[i]

    def col_swap(i, j):
        if i == j:
            return
        for r in colidx[i] | colidx[j]:
            row = a[r]
            x, y = row.pop(i, 0), row.pop(j, 0)
            if x:
                row[j] = x
            if y:
                row[i] = y
        colidx[i], colidx[j] = colidx[j], colidx[i]
        v_cols[i], v_cols[j] = v_cols[j], v_cols[i]
        vi[i], vi[j] = vi[j], vi[i]

    def row_neg(i):
        a[i] = {c: -x for c, x in a[i].items()}
        u[i] = {c: -x for c, x in u[i].items()}
        ui_cols[i] = {c: -x for c, x in ui_cols[i].items()}

    live_rows = set(range(rows))
    d: list[int] = []
    t = 0
    while t < min(rows, cols):
        best = None
        for r in live_rows:
            nr = len(a[r])
            for c, x in a[r].items():
                key = (abs(x), (nr - 1) * (len(colidx[c]) - 1), r, c)
                if best is None or key < best:
                    best = key
        if best is None:
            break
        _, _, r, c = best
        row_swap(r, t)
        col_swap(c, t)
        live_rows.discard(t)
        while True:
            p = a[t][t]
            dirty = False
            for r in sorted(colidx[t] - {t}):
                q = a[r][t] // p
                row_add(r, t, -q)
                if a[r].get(t):
                    dirty = True
            for c in sorted(set(a[t]) - {t}):
                q = a[t][c] // p
                col_add(c, t, -q)
                if a[t].get(c):
                    dirty = True
            if not dirty and abs(p) > 1:
                bad = next((r for r in sorted(live_rows) for x in a[r].values() if x % p), None)
                if bad is not None:
                    row_add(t, bad, 1)
                    dirty = True
            if not dirty:
                break
            cand = [(abs(a[r][t]), r, t) for r in colidx[t]]
            cand += [(abs(x), t, c) for c, x in a[t].items()]
            _, r, c = min(cand)
            if r != t:
                live_rows.add(t)
                row_swap(r, t)
                live_rows.discard(t)
            if c != t:
                col_swap(c, t)
        if a[t][t] < 0:
            row_neg(t)
        d.append(a[t][t])
        t += 1
    d += [0] * (min(rows, cols) - len(d))
    res = SnfResult(rows, cols, d, u, _transpose(v_cols, cols), _transpose(ui_cols, rows), vi)
    if certify:
        check_snf(m, res)
    return res


def check_snf(m: SparseIntMatrix, res: SnfResult) -> None:
    a: Sparse = {i: {} for i in range(m.rows)}
    for r, c, x in m.entries:
        a[r][c] = x
    prod = sparse_matmul(sparse_matmul(res.u, a), res.v)
    for i, row in prod.items():
        for j, x in row.items():
            if i != j or x != res.d[i]:
                raise AssertionError("SNF certificate u*a*v != diag(d) failed")
    for i, x in enumerate(res.d):
        if x and prod.get(i, {}).get(i, 0) != x:
            raise AssertionError("SNF certificate u*a*v != diag(d) failed")
    for t, tinv, k in ((res.u, res.u_inv, m.rows), (res.v, res.v_inv, m.cols)):
        if sparse_matmul(t, tinv) != _ident(k):
            raise AssertionError("SNF transform inverse check failed")
    nz = [x for x in res.d if x]
    if any(x < 0 for x in res.d) or any(nz[i + 1] % nz[i] for i in range(len(nz) - 1)):
        raise AssertionError("SNF divisor chain property failed")
    if any(res.d[i] == 0 and any(res.d[i + 1:]) for i in range(len(res.d))):
        raise AssertionError("SNF zeros must trail")


def dense(m: Sparse, rows: int, cols: int) -> list[list[int]]:
    return [[m.get(i, {}).get(j, 0) for j in range(cols)] for i in range(rows)]


@lru_cache(maxsize=None)
def cells_of_degree(n: int, degree: int, f: Filter) -> tuple[Cell, ...]:
    return tuple(c for c in enumerate_cells(n) if _keep(c, f) and cell_degree(c) == degree)


def max_degree(n: int) -> int:
    return n + 1


@lru_cache(maxsize=None)
def _index(n: int, degree: int, f: Filter) -> dict[Cell, int]:
    return {c: i for i, c in enumerate(cells_of_degree(n, degree, f))}


@lru_cache(maxsize=None)
def boundary_matrix(n: int, degree: int, f: Filter = Filter.ALL) -> SparseIntMatrix:
    """Matrix of the boundary from `degree` to `degree - 1` in canonical order.
    RELATIVE drops the faces that land on EQ cells (quotient complex)."""
    if not 0 <= degree <= max_degree(n) + 1:
        raise ValueError(f"degree {degree} out of range 0..{max_degree(n) + 1}")
    src = cells_of_degree(n, degree, f)
    tgt = _index(n, degree - 1, f) if degree > 0 else {}
    entries = []
    for col, c in enumerate(src):
        for face, w in boundary_terms(c):
            row = tgt.get(face)
            if row is not None:
                entries.append((row, col, w))
    return SparseIntMatrix(len(tgt), len(src), entries)


@dataclass
class HomologyGroup:
    free_rank: int
    torsion: list[int]


@lru_cache(maxsize=None)
def _snf_of(n: int, degree: int, f: Filter) -> SnfResult:
    return smith_normal_form(boundary_matrix(n, degree, f))


def homology_group(n: int, degree: int, f: Filter = Filter.ALL) -> HomologyGroup:
    """Unreduced H_degree of the filtered complex."""
    dim = len(cells_of_degree(n, degree, f))
    out_rank = _snf_of(n, degree, f).rank if degree > 0 else 0
    inc = _snf_of(n, degree + 1, f)
    in_rank = inc.rank
    torsion = [x for x in inc.d if x > 1]
    return HomologyGroup(dim - out_rank - in_rank, torsion)


def chain_vector(ch: IntChain, n: int, f: Filter) -> list[int]:
    idx = _index(n, ch.degree, f)
    vec = [0] * len(idx)
    for c, v in ch.terms.items():
        if c not in idx:
            raise ValueError(f"cell outside the {f.value} complex")
        vec[idx[c]] = v
    return vec


def filtered_boundary(ch: IntChain, n: int, f: Filter) -> list[int]:
    if ch.degree == 0:
        return []
    m = boundary_matrix(n, ch.degree, f)
    vec = chain_vector(ch, n, f)
    out = [0] * m.rows
    for r, c, w in m.entries:
        out[r] += w * vec[c]
    return out


def is_cycle(ch: IntChain, n: int, f: Filter = Filter.ALL) -> bool:
    return not any(filtered_boundary(ch, n, f))


def is_boundary(ch: IntChain, n: int, f: Filter = Filter.ALL) -> bool:
    """Decide whether ch = boundary(x) for an integer chain x, using the SNF
    of the incoming boundary matrix: with u*B*v = D, solve D y = u c."""
    if not is_cycle(ch, n, f):
        raise ValueError("is_boundary needs a cycle")
    c = chain_vector(ch, n, f)
    if not any(c):
        return True
    snf = _snf_of(n, ch.degree + 1, f)
    uc = [sum(x * c[j] for j, x in snf.u[i].items()) for i in range(snf.rows)]
    for i, val in enumerate(uc):
        d = snf.d[i] if i < len(snf.d) else 0
        if d == 0:
            if val:
                return False
        elif val % d:
            return False
    return True


def class_rank(cycles: Sequence[IntChain], n: int, f: Filter = Filter.ALL) -> int:
    """Rank of the span of the classes: rank[B | C] - rank[B]."""
    if not cycles:
        return 0
    degs = {c.degree for c in cycles}
    if len(degs) != 1:
        raise ValueError("class_rank needs cycles of a single degree")
    degree = degs.pop()
    for c in cycles:
        if not is_cycle(c, n, f):
            raise ValueError("class_rank needs cycles")
    b = boundary_matrix(n, degree + 1, f)
    entries = list(b.entries)
    for t, c in enumerate(cycles):
        entries += [(i, b.cols + t, x) for i, x in enumerate(chain_vector(c, n, f)) if x]
    aug = SparseIntMatrix(b.rows, b.cols + len(cycles), entries)
    return smith_normal_form(aug, certify=False).rank - _snf_of(n, degree + 1, f).rank


def connected_components(n: int, f: Filter = Filter.EQ_ONLY) -> int:
    """Union-find over 0- and 1-cells; an oracle for H_0 independent of the SNF."""
    verts = cells_of_degree(n, 0, f)
    parent = {c: c for c in verts}

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for e in cells_of_degree(n, 1, f):
        ends = [c for c, _ in boundary_terms(e) if c in parent]
        for a, b in zip(ends, ends[1:]):
            parent[find(a)] = find(b)
    return len({find(c) for c in verts})
