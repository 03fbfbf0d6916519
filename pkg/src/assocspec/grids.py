"""Subgroups of Z x Z: canonical forms, membership and lattice operations.

Every subgroup is one of

* the zero subgroup,
* a line ``Z * content * (g1, g2)`` with a primitive direction
  ``(g1, g2)`` normalized so that ``g2 > 0`` or ``g2 == 0 and g1 > 0``,
* a parallelogram grid ``Z(u, v) + Z(w, 0)`` with ``0 <= u < w`` and ``v > 0``.

The two-dimensional form is unique, so grids compare by value.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import product
from math import gcd, lcm
from typing import Iterable, Optional, Sequence

from sympy import isprime

from .trees import BinaryTree, depth_differences, tree_from_left_depths

Point = tuple[int, int]


class GridError(ValueError):
    pass


def _egcd(a: int, b: int) -> tuple[int, int, int]:
    """Return ``(g, x, y)`` with ``a*x + b*y == g == gcd(a, b) >= 0``."""
    x0, y0, x1, y1 = 1, 0, 0, 1
    while b:
        q, a, b = a // b, b, a % b
        x0, x1 = x1, x0 - q * x1
        y0, y1 = y1, y0 - q * y1
    if a < 0:
        return -a, -x0, -y0
    return a, x0, y0


@dataclass(frozen=True)
class Grid:
    dim: int
    u: int = 0
    v: int = 0
    w: int = 0
    direction: Point = (0, 0)
    content: int = 0

    @classmethod
    def zero(cls) -> "Grid":
        return cls(0)

    @classmethod
    def full(cls) -> "Grid":
        return cls(2, 0, 1, 1)

    @classmethod
    def parallelogram(cls, u: int, v: int, w: int) -> "Grid":
        """The grid ``Z(u, v) + Z(w, 0)``; ``(u, v, w)`` need not be canonical."""
        return canonical_grid([(u, v), (w, 0)])

    @property
    def index(self) -> Optional[int]:
        return self.v * self.w if self.dim == 2 else None

    def generators(self) -> list[Point]:
        if self.dim == 2:
            return [(self.u, self.v), (self.w, 0)]
        if self.dim == 1:
            g1, g2 = self.direction
            return [(self.content * g1, self.content * g2)]
        return []

    def __contains__(self, point: Point) -> bool:
        return contains(self, point)

    def __str__(self) -> str:
        return format_grid(self)


def canonical_grid(generators: Iterable[Sequence[int]]) -> Grid:
    """Canonical form of the subgroup spanned by ``generators``.

    Row reduction on the second coordinate: a running pivot holds the gcd of
    all second coordinates seen so far; each unimodular combination step
    leaves behind a vector on the x-axis whose first coordinate is folded
    into ``w``.
    """
    pivot: Optional[Point] = None
    w = 0
    for r, s in generators:
        r, s = int(r), int(s)
        if s == 0:
            w = gcd(w, r)
            continue
        if pivot is None:
            pivot = (r, s) if s > 0 else (-r, -s)
            continue
        pr, ps = pivot
        g, x, y = _egcd(ps, s)
        pivot = (x * pr + y * r, g)
        w = gcd(w, (s // g) * pr - (ps // g) * r)
    if pivot is None:
        return Grid(1, direction=(1, 0), content=w) if w else Grid.zero()
    pr, ps = pivot
    if w == 0:
        c = gcd(pr, ps)
        return Grid(1, direction=(pr // c, ps // c), content=c)
    return Grid(2, pr % w, ps, w)


def contains(grid: Grid, point: Point) -> bool:
    r, s = point
    if grid.dim == 0:
        return r == 0 and s == 0
    if grid.dim == 1:
        g1, g2 = grid.direction
        if r * g2 != s * g1:
            return False
        t = r // g1 if g1 else s // g2
        return t % grid.content == 0
    v, w = grid.v, grid.w
    return s % v == 0 and (v * r - grid.u * s) % (v * w) == 0


def contains_grid(outer: Grid, inner: Grid) -> bool:
    return all(contains(outer, g) for g in inner.generators())


def dimension(grid: Grid) -> int:
    return grid.dim


def index(grid: Grid) -> Optional[int]:
    """Index in Z x Z; ``None`` stands for infinite index."""
    return grid.index


def join(g1: Grid, g2: Grid) -> Grid:
    return canonical_grid(g1.generators() + g2.generators())


def _line_meet(line: Grid, other: Grid) -> Grid:
    g1, g2 = line.direction
    if other.dim == 0:
        return Grid.zero()
    if other.dim == 1:
        if other.direction != line.direction:
            return Grid.zero()
        return Grid(1, direction=line.direction, content=lcm(line.content, other.content))
    # the direction has finite order in the quotient, bounded by the index
    for t in range(1, other.index + 1):
        if contains(other, (t * g1, t * g2)):
            return Grid(1, direction=line.direction, content=lcm(line.content, t))
    raise AssertionError("unreachable: index * g lies in every grid")


def meet(g1: Grid, g2: Grid) -> Grid:
    if g1.dim == 0 or g2.dim == 0:
        return Grid.zero()
    if g1.dim == 1:
        return _line_meet(g1, g2)
    if g2.dim == 1:
        return _line_meet(g2, g1)
    # second coordinates of the meet are multiples of lcm(v1, v2); for
    # s = j * L the first coordinate is pinned modulo w1 and modulo w2, and
    # the two congruences agree iff j * (a1 - a2) == 0 mod gcd(w1, w2)
    L = lcm(g1.v, g2.v)
    a1 = g1.u * (L // g1.v)
    a2 = g2.u * (L // g2.v)
    g = gcd(g1.w, g2.w)
    j0 = g // gcd(a1 - a2, g)
    s = j0 * L
    r = _crt(a1 * j0, g1.w, a2 * j0, g2.w)
    return canonical_grid([(r, s), (lcm(g1.w, g2.w), 0)])


def _crt(r1: int, m1: int, r2: int, m2: int) -> int:
    g, p, _ = _egcd(m1, m2)
    if (r2 - r1) % g:
        raise AssertionError("inconsistent congruences")
    return (r1 + (r2 - r1) // g * p * m1) % lcm(m1, m2)


def coset_key(grid: Grid, point: Point) -> Point:
    """Canonical representative of ``point + grid`` in ``[0, w) x [0, v)``."""
    if grid.dim != 2:
        raise GridError("coset keys need a two-dimensional grid")
    r, s = point
    s0 = s % grid.v
    k = (s - s0) // grid.v
    return (r - k * grid.u) % grid.w, s0


def quotient_invariants(grid: Grid) -> tuple[int, int]:
    """Smith invariants ``(d1, d2)`` with ``(Z x Z) / grid = Z_d1 x Z_d2``."""
    if grid.dim != 2:
        raise GridError("quotient invariants need a two-dimensional grid")
    d1 = gcd(grid.u, grid.v, grid.w)
    return d1, grid.v * grid.w // d1


def coatoms(p: int) -> list[Grid]:
    if not isprime(p):
        raise GridError(f"{p} is not prime")
    out = [canonical_grid([(p, 0), (0, 1)]), canonical_grid([(1, 0), (0, p)])]
    out += [canonical_grid([(p, 0), (u, 1)]) for u in range(1, p)]
    return out


# --- trees and grids ---------------------------------------------------------

def span_difference(t1: BinaryTree, t2: BinaryTree) -> Grid:
    return canonical_grid(depth_differences(t1, t2))


def is_treealisable(grid: Grid) -> bool:
    return grid.dim in (0, 2)


def treealise(grid: Grid) -> tuple[BinaryTree, BinaryTree]:
    """Two trees whose per-leaf depth differences span ``grid``.

    Both trees have ``p + q + r + s + 1`` leaves with ``p = v``, ``q = v*w``,
    ``r = w`` and ``s = w - u``; they are built from their left depth
    sequences.
    """
    if grid.dim != 2:
        raise GridError("only two-dimensional grids are realized by distinct trees")
    p, q, r, s = grid.v, grid.v * grid.w, grid.w, grid.w - grid.u
    tail = list(range(r, 0, -1)) + list(range(s, -1, -1))
    first = [2] * p + [r + 1] * q + tail
    second = ([2] * p + [1] + [s + 1] * (q - 1)
              + list(range(r + s, s, -1)) + list(range(s, -1, -1)))
    return tree_from_left_depths(first), tree_from_left_depths(second)


# --- kernels of abelian pair actions -----------------------------------------

@dataclass(frozen=True)
class AbelianPairAction:
    """Two elements of a finite abelian group, in one of two presentations.

    ``additive``: ``a`` and ``b`` are vectors in ``Z_m1 x ... x Z_mt``.
    ``multiplicative``: ``a`` and ``b`` are units modulo a single ``m``.
    """
    kind: str
    moduli: tuple[int, ...]
    a: tuple[int, ...]
    b: tuple[int, ...]

    @classmethod
    def additive(cls, moduli, a, b) -> "AbelianPairAction":
        moduli, a, b = tuple(moduli), tuple(a), tuple(b)
        if not len(moduli) == len(a) == len(b) or not moduli:
            raise GridError("moduli and element vectors must have equal nonzero length")
        for m, x, y in zip(moduli, a, b):
            if m < 1 or not (0 <= x < m and 0 <= y < m):
                raise GridError(f"element out of range for Z_{m}")
        return cls("additive", moduli, a, b)

    @classmethod
    def multiplicative(cls, m: int, a: int, b: int) -> "AbelianPairAction":
        if m < 1 or gcd(a, m) != 1 or gcd(b, m) != 1:
            raise GridError(f"{a} and {b} must be units modulo {m}")
        return cls("multiplicative", (m,), (a % m,), (b % m,))

    def is_trivial(self, r: int, s: int) -> bool:
        if self.kind == "additive":
            return all((r * x + s * y) % m == 0
                       for m, x, y in zip(self.moduli, self.a, self.b))
        (m,), (x,), (y,) = self.moduli, self.a, self.b
        return pow(x, r, m) * pow(y, s, m) % m == 1 % m

    def orders(self) -> tuple[int, int]:
        if self.kind == "additive":
            oa = lcm(*(m // gcd(x, m) for m, x in zip(self.moduli, self.a)))
            ob = lcm(*(m // gcd(y, m) for m, y in zip(self.moduli, self.b)))
            return oa, ob
        m = self.moduli[0]
        return _mult_order(self.a[0], m), _mult_order(self.b[0], m)


def _mult_order(x: int, m: int) -> int:
    if m == 1:
        return 1
    k, y = 1, x % m
    while y != 1:
        y = y * x % m
        k += 1
    return k


def kernel_of_pair(action: AbelianPairAction) -> Grid:
    """The grid of ``(r, s)`` with ``a^r b^s`` trivial, by bounded brute force."""
    oa, ob = action.orders()
    pts = [(r, s) for r, s in product(range(oa + 1), range(ob + 1))
           if action.is_trivial(r, s)]
    return canonical_grid(pts + [(oa, 0), (0, ob)])


# --- text form ---------------------------------------------------------------

def format_grid(grid: Grid) -> str:
    if grid.dim == 2:
        return f"Z({grid.u},{grid.v})+Z({grid.w},0)"
    if grid.dim == 1:
        (x, y), = grid.generators()
        return f"Z({x},{y})"
    return "0"


def parse_generators(text: str) -> list[Point]:
    """Parse ``"r1,s1;r2,s2;..."``; an empty string or ``"0"`` gives no generators."""
    text = text.strip()
    if text in ("", "0"):
        return []
    out = []
    for chunk in text.split(";"):
        parts = chunk.split(",")
        if len(parts) != 2:
            raise GridError(f"bad generator {chunk!r}; expected 'r,s'")
        out.append((int(parts[0]), int(parts[1])))
    return out


def parse_grid(text: str) -> Grid:
    return canonical_grid(parse_generators(text))


__all__ = [
    "AbelianPairAction", "Grid", "GridError", "canonical_grid", "coatoms", "contains",
    "contains_grid", "coset_key", "dimension", "format_grid", "index", "is_treealisable",
    "join", "kernel_of_pair", "meet", "parse_generators", "parse_grid", "quotient_invariants",
    "span_difference", "treealise",
]
