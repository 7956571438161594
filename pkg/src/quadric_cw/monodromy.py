"""Picard-Lefschetz action on Borel-Moore classes in the complement of the
spheres, written over the relative generators, and the one-loop bubble.

A Borel-Moore class is an integer multiple of the imaginary plane plus
integer multiples of vanishing spheres. A sphere is stored with the
orientation fixed by its pinch: orientation o means o times the sphere
obtained as the iterated coboundary of the iterated boundary of E_J. Spheres
of different pinches are different classes even for the same J.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from enum import Enum
from typing import Callable, Mapping

from .combinatorics import full_mask, labels_of, mask_of, size
from .intersection import index_with_imaginary, pl_sign, vanishing_closed_form, vanishing_pair_index

BaseIndex = Callable[[int, int], int]


def computed_base_index(I: int, n: int) -> int:
    return index_with_imaginary(I, n)[0]


def stated_base_index(I: int, n: int) -> int:
    """The case split 1 if |I| = 1 else 0, as a lookup. Diagnostic only:
    it lets the loop algebra be checked independently of the index values."""
    return 1 if size(I) == 1 else 0


@dataclass
class RelClass:
    n: int
    coeffs: dict[int, int] = field(default_factory=dict)

    def __post_init__(self):
        for I in self.coeffs:
            if I == 0 or I & ~full_mask(self.n):
                raise ValueError(f"generator key {I:#b} is not a nonempty subset of 1..{self.n + 1}")
        self.coeffs = {I: v for I, v in self.coeffs.items() if v}

    @classmethod
    def of(cls, n: int, terms: Mapping[tuple[int, ...], int]) -> "RelClass":
        return cls(n, {mask_of(k): v for k, v in terms.items()})

    def __neg__(self) -> "RelClass":
        return RelClass(self.n, {I: -v for I, v in self.coeffs.items()})

    def __repr__(self) -> str:
        parts = [f"{v:+d}*E{labels_of(I)}" for I, v in sorted(self.coeffs.items())]
        return " ".join(parts) or "0"


SphereKey = tuple[str, int, int]


@dataclass
class BMClass:
    n: int
    base: int = 1
    spheres: dict[SphereKey, int] = field(default_factory=dict)

    def __post_init__(self):
        for (_, J, o) in self.spheres:
            if J == 0 or J & ~full_mask(self.n) or o not in (-1, 1):
                raise ValueError("sphere keys are (pinch, nonempty subset, orientation +-1)")
        self.spheres = {k: v for k, v in self.spheres.items() if v}

    def __add__(self, other: "BMClass") -> "BMClass":
        _same_n(self.n, other.n)
        sp = dict(self.spheres)
        for k, v in other.spheres.items():
            sp[k] = sp.get(k, 0) + v
        return BMClass(self.n, self.base + other.base, sp)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, BMClass):
            return NotImplemented
        return (self.n, self.base, self.spheres) == (other.n, other.base, other.spheres)

    def to_json(self) -> dict:
        return {"n": self.n, "base": self.base,
                "spheres": [{"pinch": name, "set": labels_of(J), "orientation": o, "coeff": v}
                            for (name, J, o), v in sorted(self.spheres.items())]}


def _same_n(a: int, b: int) -> None:
    if a != b:
        raise ValueError(f"dimension mismatch: {a} vs {b}")


@dataclass(frozen=True)
class Pinch:
    name: str
    I: int
    cell: RelClass
    sphere_orient: int

    @property
    def m(self) -> int:
        return size(self.I)

    @property
    def sphere(self) -> SphereKey:
        return (self.name, self.I, self.sphere_orient)

    def unit(self) -> BMClass:
        return BMClass(self.cell.n, 0, {self.sphere: 1})


def sphere_pairing(J: int, r: RelClass) -> int:
    """Pairing of the standard vanishing sphere of J with a relative class."""
    return sum(v * vanishing_pair_index(J, I, r.n)[0] for I, v in r.coeffs.items())


def make_pinch(name: str, I: int, cell: RelClass) -> Pinch:
    """Fix the sphere orientation so that the sphere pairs with its own
    vanishing cell as the closed form for <e~|e> says. The sphere is the
    coboundary side of the iterated boundary of the cell, which only sees
    the E_I coefficient, so the orientation is the sign of that coefficient."""
    c = cell.coeffs.get(I, 0)
    if c == 0:
        raise ValueError("vanishing cell must contain the generator of the pinching set")
    o = 1 if c > 0 else -1
    p = Pinch(name, I, cell, o)
    want = vanishing_closed_form(I, I, cell.n) * abs(c) * abs(c)
    got = o * sphere_pairing(I, cell)
    if got != want:
        raise ArithmeticError(f"self-pairing {got} != {want} for pinch {name}")
    return p


def pairing(b: BMClass, r: RelClass, base_index: BaseIndex = computed_base_index) -> int:
    _same_n(b.n, r.n)
    total = 0
    if b.base:
        total += b.base * sum(v * base_index(I, r.n) for I, v in r.coeffs.items())
    for (_, J, o), c in b.spheres.items():
        total += c * o * sphere_pairing(J, r)
    return total


def loop_action(g: BMClass, p: Pinch, base_index: BaseIndex = computed_base_index) -> BMClass:
    """g + pl_sign(n, m) * <g | cell> * sphere."""
    _same_n(g.n, p.cell.n)
    x = pl_sign(g.n, p.m) * pairing(g, p.cell, base_index)
    return g + BMClass(g.n, 0, {p.sphere: x})


def run_loops(D: int, word: list[str], variant: "MinusVariant", base_index: BaseIndex = computed_base_index) -> BMClass:
    plus, minus = bubble_pinches(D, variant)
    g = BMClass(D - 1)
    for w in word:
        if w not in ("+", "-"):
            raise ValueError(f"loop word letters are + or -, got {w!r}")
        g = loop_action(g, plus if w == "+" else minus, base_index)
    return g


class MinusVariant(Enum):
    A = "A"     # -E12
    B = "B"     # -(E1 - E2 + E12)


def bubble_pinches(D: int, variant: MinusVariant = MinusVariant.A) -> tuple[Pinch, Pinch]:
    """Pinches of the bubble in C^D at the normal threshold (+) and the
    pseudo threshold (-). The plus cell is E1 - E12. The minus cell carries
    the overall sign -1; that choice makes the second-loop coefficient of
    the minus sphere read as in the reference table for D even."""
    if D < 2:
        raise ValueError("D must be >= 2")
    n = D - 1
    plus = make_pinch("+", 0b11, RelClass.of(n, {(1,): 1, (1, 2): -1}))
    if variant == MinusVariant.A:
        cell = RelClass.of(n, {(1, 2): -1})
    else:
        cell = RelClass.of(n, {(1,): -1, (2,): 1, (1, 2): -1})
    return plus, make_pinch("-", 0b11, cell)


def bubble_sign(D: int) -> int:
    return -1 if ((D + 1) * (D + 2) // 2) % 2 else 1


def kallen(a: float, b: float, c: float) -> float:
    return a * a + b * b + c * c - 2 * a * b - 2 * b * c - 2 * c * a


def discontinuity_value(D: int, p2: float, m1: float, m2: float) -> float:
    """Jump of the bubble integral across the normal threshold; p2 is p^2
    in Euclidean signature, so the physical region has -p2 >= (m1+m2)^2."""
    if D < 2:
        raise ValueError("D must be >= 2")
    s = -p2
    if s < (m1 + m2) ** 2:
        raise ValueError("kinematics below the normal threshold")
    lam = kallen(s, m1 * m1, m2 * m2)
    lam = max(lam, 0.0)
    if lam == 0.0 and D < 3:
        raise ValueError("the closed form diverges at threshold for D < 3")
    pref = bubble_sign(D) * math.pi ** ((D + 3) / 2) / (2.0 ** (D - 4) * math.gamma((D - 1) / 2))
    return pref * lam ** ((D - 3) / 2) / s ** ((D - 2) / 2)
