"""Numeric realization of the cells in C^{n+1}.

Spheres S_j = {(z - a_j)^2 = 1} with a_j = i*e_j. A cell is the set of z with
Im z in the simplex spanned by the centers of its flag, Re z in a signed cone
spanned by v = (1,..,1) and v_j = v - e_j, and (z - a_{j0})^2 <= 1 (or = 1),
j0 the least label of the first flag set.
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .combinatorics import Cell, Rel, full_mask, labels_of, size

TOL = 1e-9
RANK_TOL = 1e-6


def center(I: int, n: int) -> np.ndarray:
    """Center of the intersection of the spheres in I: i/|I| on I, 0 off I."""
    if I == 0:
        raise ValueError("center needs a nonempty subset")
    if I & ~full_mask(n):
        raise ValueError("subset has labels outside 1..n+1")
    z = np.zeros(n + 1, dtype=complex)
    for j in labels_of(I):
        z[j - 1] = 1j / size(I)
    return z


def sphere_center(j: int, n: int) -> np.ndarray:
    return center(1 << (j - 1), n)


def cone_basis(n: int) -> tuple[np.ndarray, list[np.ndarray]]:
    v = np.ones(n + 1)
    return v, [v - np.eye(n + 1)[j] for j in range(n + 1)]


@dataclass(frozen=True)
class ConeSpec:
    j_le: int
    j_ge: int
    tau: int

    def __post_init__(self):
        if self.j_le & self.j_ge:
            raise ValueError("j_le and j_ge must be disjoint")
        if self.tau not in (-1, 0, 1):
            raise ValueError("tau must be -1, 0 or 1")

    @property
    def labels(self) -> list[int]:
        return labels_of(self.j_le | self.j_ge)

    @property
    def signs(self) -> np.ndarray:
        s = [-1.0 if self.j_le >> (j - 1) & 1 else 1.0 for j in self.labels]
        if self.tau:
            s.append(float(self.tau))
        return np.array(s)

    def frame(self, n: int) -> np.ndarray:
        """Columns v_{j_1}, ..., v_{j_|J|} and v (if tau != 0)."""
        v, vs = cone_basis(n)
        cols = [vs[j - 1] for j in self.labels]
        if self.tau:
            cols.append(v)
        return np.array(cols).T.reshape(n + 1, len(cols))


def cone_of(c: Cell) -> ConeSpec:
    return ConeSpec(c.j_le, c.j_ge, c.tau)


def gram_factor(c: Cell, n: int) -> np.ndarray:
    """Upper-triangular M with M^T M = Gram matrix of the cone frame, so that
    |x|^2 = |M d|^2 for x = frame @ d."""
    if c.m == 0:
        raise ValueError("gram_factor needs at least one real direction")
    f = cone_of(c).frame(n)
    return np.linalg.cholesky(f.T @ f).T


def corner_map(x: np.ndarray, signs: np.ndarray) -> np.ndarray:
    """Signed orthant part of the unit disk -> corner simplex."""
    x = np.asarray(x, dtype=float)
    signs = np.asarray(signs, dtype=float)
    if np.any(x * signs < -TOL) or np.linalg.norm(x) > 1 + TOL:
        raise ValueError("input outside the signed orthant of the unit disk")
    n1 = np.abs(x).sum()
    if n1 == 0:
        return np.zeros_like(x)
    return np.linalg.norm(x) / n1 * signs * x


def corner_map_inverse(x: np.ndarray, signs: np.ndarray) -> np.ndarray:
    x = np.asarray(x, dtype=float)
    signs = np.asarray(signs, dtype=float)
    if np.any(x < -TOL) or x.sum() > 1 + TOL:
        raise ValueError("input outside the corner simplex")
    n2 = np.linalg.norm(x)
    if n2 == 0:
        return np.zeros_like(x)
    return np.abs(x).sum() / n2 * signs * x


def modified_radius(y: np.ndarray, j0: int) -> float:
    e = np.zeros_like(y)
    e[j0 - 1] = 1.0
    return float(np.sqrt(1 + np.dot(y - e, y - e)))


def _flag_centers(c: Cell, n: int) -> np.ndarray:
    return np.array([center(s, n).imag for s in c.flag]).T


def param_point(c: Cell, n: int, simplex_coords: np.ndarray, bary: np.ndarray) -> np.ndarray:
    """Point of the cell for corner-simplex coordinates of the real part and
    barycentric coordinates over the flag centers.

    The cone coordinates are d = r * |u| * u / |M u| with u = h^{-1}(x) and r
    the modified radius, i.e. the corner map is followed by a radial rescaling
    that puts the face |x|_1 = 1 on the sphere. The rescaling keeps d in the
    signed orthant."""
    c.validate(n)
    bary = np.asarray(bary, dtype=float)
    if bary.shape != (c.k,) or np.any(bary < -TOL) or abs(bary.sum() - 1) > TOL:
        raise ValueError("barycentric coordinates outside the flag simplex")
    y = _flag_centers(c, n) @ bary
    j0 = labels_of(c.flag[0])[0]
    x = np.asarray(simplex_coords, dtype=float)
    if x.shape != (c.m,):
        raise ValueError(f"need {c.m} simplex coordinates")
    if c.rel == Rel.EQ and c.m and abs(x.sum() - 1) > TOL:
        raise ValueError("EQ cells live on the face |x|_1 = 1")
    if c.m == 0:
        return 1j * y
    cone = cone_of(c)
    u = corner_map_inverse(x, cone.signs)
    nu = np.linalg.norm(u)
    if nu == 0:
        return 1j * y.astype(complex)
    M = gram_factor(c, n)
    d = modified_radius(y, j0) * nu * u / np.linalg.norm(M @ u)
    return cone.frame(n) @ d + 1j * y


def _solve(a: np.ndarray, b: np.ndarray) -> tuple[np.ndarray, float]:
    if a.shape[1] == 0:
        return np.zeros(0), float(np.linalg.norm(b))
    sol, *_ = np.linalg.lstsq(a, b, rcond=None)
    return sol, float(np.linalg.norm(a @ sol - b))


def cell_coordinates(z: np.ndarray, c: Cell, n: int):
    """Barycentric flag coordinates, cone coordinates and residuals."""
    y, x = z.imag, z.real
    P = _flag_centers(c, n)
    A = np.vstack([P, np.ones((1, c.k))])
    bary, r1 = _solve(A, np.append(y, 1.0))
    d, r2 = _solve(cone_of(c).frame(n), x)
    return bary, d, max(r1, r2)


def cell_membership(z: np.ndarray, c: Cell, n: int, tol: float = TOL, strict: bool = False) -> bool:
    """Closed-cell membership; strict=True tests the relative interior."""
    z = np.asarray(z, dtype=complex)
    bary, d, res = cell_coordinates(z, c, n)
    if res > tol:
        return False
    cone = cone_of(c)
    sd = d * cone.signs if len(d) else d
    if strict:
        if np.any(bary <= tol) or np.any(sd <= tol):
            return False
    elif np.any(bary < -tol) or np.any(sd < -tol):
        return False
    j0 = labels_of(c.flag[0])[0]
    q = np.sum((z - sphere_center(j0, n)) ** 2)
    if abs(q.imag) > tol:
        return False
    if c.rel == Rel.EQ:
        return abs(q.real - 1) <= tol
    return q.real < 1 - tol if strict else q.real <= 1 + tol


def retraction_step(z: np.ndarray, t: float) -> np.ndarray:
    """Deformation retraction of the complex unit sphere onto the real one."""
    z = np.asarray(z, dtype=complex)
    if abs(np.sum(z * z) - 1) > TOL:
        raise ValueError("point is not on the complex unit sphere")
    if not 0 <= t <= 1:
        raise ValueError("t must lie in [0, 1]")
    re, im = z.real, z.imag
    f = np.sqrt((1 + (1 - t) ** 2 * np.dot(im, im)) / np.dot(re, re))
    return f * re + 1j * (1 - t) * im


def sample_intersection(I: int, n: int, rng: np.random.Generator) -> np.ndarray:
    """Random point of the intersection of the spheres in I. Subtracting
    the equations forces z_i = z_{j0} on I; what remains is a quadratic in
    the common value w: |I| w^2 - 2i w + (S - 1) - 1 = 0 with S the sum of
    squares of the free coordinates."""
    labs = labels_of(I)
    z = rng.normal(size=n + 1) + 1j * rng.normal(size=n + 1)
    free = [l for l in range(1, n + 2) if l not in labs]
    S = sum(z[l - 1] ** 2 for l in free)
    roots = np.roots([len(labs), -2j, S - 2])
    w = roots[rng.integers(len(roots))]
    for l in labs:
        z[l - 1] = w
    return z


def check_general_position(I: int, n: int, samples: int = 100, seed: int = 0) -> tuple[bool, float]:
    """Smallest singular value of the gradients 2(z - a_i), i in I, over
    sampled points of the intersection; general position iff all > 1e-6."""
    if I == 0 or I & ~full_mask(n):
        raise ValueError("I must be a nonempty subset of 1..n+1")
    rng = np.random.default_rng(seed)
    worst = np.inf
    for _ in range(samples):
        z = sample_intersection(I, n, rng)
        for i in labels_of(I):
            if abs(np.sum((z - sphere_center(i, n)) ** 2) - 1) > 1e-6:
                raise ArithmeticError("sampled point is off the sphere")
        grads = np.array([2 * (z - sphere_center(i, n)) for i in labels_of(I)])
        worst = min(worst, float(np.linalg.svd(grads, compute_uv=False).min()))
    return worst > RANK_TOL, worst


def random_interior_point(c: Cell, n: int, rng: np.random.Generator) -> np.ndarray:
    bary = rng.dirichlet(np.ones(c.k))
    if c.m == 0:
        x = np.zeros(0)
    elif c.rel == Rel.EQ:
        x = rng.dirichlet(np.ones(c.m))
    else:
        x = rng.dirichlet(np.ones(c.m + 1))[: c.m]
    return param_point(c, n, x, bary)
