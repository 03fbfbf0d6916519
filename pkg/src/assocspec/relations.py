"""Congruence-style equivalence relations on the trees with ``n`` leaves.

Each relation compares two trees leaf by leaf through their left and right
depths.  All of them are of the form "the difference vector
``(ld_T(i) - ld_T'(i), rd_T(i) - rd_T'(i))`` lies in a fixed subgroup of
Z x Z for every leaf ``i``", so every relation normalizes to a grid, or to
plain tree equality when the subgroup has rank below two.
"""

from __future__ import annotations

from dataclasses import dataclass
from math import comb, gcd
from typing import Optional, Union

import numpy as np

from .counting import class_ids, count_grid_classes
from .grids import Grid, canonical_grid, coset_key, format_grid, parse_grid
from .trees import (DEFAULT_MAX_LEAVES, BinaryTree, GuardExceeded, TreeError,
                    depth_profile, enumerate_trees)

TAGS = ("D", "L", "R", "LR", "ABM", "GRID")
CLASSES_MAX_LEAVES = 8


class RelationError(ValueError):
    pass


@dataclass(frozen=True)
class RelationSpec:
    tag: str
    params: tuple[int, ...] = ()
    grid: Optional[Grid] = None

    def __post_init__(self):
        arity = {"D": 1, "L": 1, "R": 1, "LR": 2, "ABM": 3, "GRID": 0}
        if self.tag not in arity:
            raise RelationError(f"unknown relation tag {self.tag!r}")
        if len(self.params) != arity[self.tag]:
            raise RelationError(f"{self.tag} takes {arity[self.tag]} parameter(s)")
        if self.tag in ("D", "L", "R", "LR") and any(k < 0 for k in self.params):
            raise RelationError("moduli must be nonnegative")
        if self.tag == "GRID" and self.grid is None:
            raise RelationError("GRID relation needs a grid")

    @classmethod
    def depth(cls, k: int) -> "RelationSpec":
        return cls("D", (k,))

    @classmethod
    def left(cls, k: int) -> "RelationSpec":
        return cls("L", (k,))

    @classmethod
    def right(cls, k: int) -> "RelationSpec":
        return cls("R", (k,))

    @classmethod
    def left_right(cls, k: int, l: int) -> "RelationSpec":
        return cls("LR", (k, l))

    @classmethod
    def abm(cls, a: int, b: int, m: int) -> "RelationSpec":
        return cls("ABM", (a, b, m))

    @classmethod
    def from_grid(cls, grid: Grid) -> "RelationSpec":
        return cls("GRID", (), grid)

    def __str__(self) -> str:
        if self.tag == "GRID":
            return f"GRID:{format_grid(self.grid)}"
        return f"{self.tag}:" + ",".join(map(str, self.params))


def parse_relation(text: str) -> RelationSpec:
    """Parse ``"D:2"``, ``"LR:2,3"``, ``"ABM:1,2,3"`` or ``"GRID:1,2;2,0"``."""
    tag, sep, rest = text.partition(":")
    tag = tag.strip().upper()
    if not sep:
        raise RelationError(f"bad relation {text!r}; expected TAG:params")
    if tag == "GRID":
        return RelationSpec.from_grid(parse_grid(rest))
    try:
        params = tuple(int(x) for x in rest.split(","))
    except ValueError:
        raise RelationError(f"bad parameters in {text!r}") from None
    return RelationSpec(tag, params)


def reduce_abm(a: int, b: int, m: int) -> tuple[int, int, int]:
    """Canonical parameters for the relation ``m | a*dl + b*dr``.

    Divides out ``gcd(a, b, m)`` and then picks the smallest ``(l*a, l*b)``
    modulo ``m`` over units ``l``; neither step changes the relation.
    """
    m = abs(m)
    g = gcd(a, b, m)
    if g:
        a, b, m = a // g, b // g, m // g
    if m == 0:
        if a < 0 or (a == 0 and b < 0):
            a, b = -a, -b
        return a, b, 0
    best = min(((l * a) % m, (l * b) % m) for l in range(1, m + 1) if gcd(l, m) == 1)
    return best[0], best[1], m


def _abm_grid(a: int, b: int, m: int) -> Grid:
    """Kernel of ``(r, s) -> a*r + b*s`` modulo ``m`` (over Z when ``m == 0``)."""
    if m == 0:
        if a == 0 and b == 0:
            return Grid.full()
        g = gcd(a, b)
        return canonical_grid([(b // g, -a // g)])
    ga = gcd(a, m)
    # solvable second coordinates are the multiples of s1
    s1 = ga // gcd(ga, b)
    mod = m // ga
    r1 = (-(b * s1 // ga) * pow(a // ga, -1, mod)) % mod if mod > 1 else 0
    return canonical_grid([(r1, s1), (mod, 0)])


def normalize_relation(spec: RelationSpec) -> Optional[Grid]:
    """The grid of a relation, or ``None`` when the relation is tree equality."""
    tag, p = spec.tag, spec.params
    if tag == "D":
        g = canonical_grid([(p[0], 0), (-1, 1)])
    elif tag == "L":
        g = canonical_grid([(p[0], 0), (0, 1)])
    elif tag == "R":
        g = canonical_grid([(1, 0), (0, p[0])])
    elif tag == "LR":
        g = canonical_grid([(p[0], 0), (0, p[1])])
    elif tag == "ABM":
        g = _abm_grid(*reduce_abm(*p))
    else:
        g = spec.grid
    return g if g.dim == 2 else None


def leaf_key(tree: BinaryTree, spec: RelationSpec) -> tuple:
    """Per-leaf tokens; two trees are related iff their keys are equal."""
    prof = depth_profile(tree)
    if normalize_relation(spec) is None:
        return prof.pairs
    tag, p = spec.tag, spec.params
    if tag == "D":
        return tuple(d % p[0] for d in prof.total_depths)
    if tag == "L":
        return tuple(d % p[0] for d in prof.left_depths)
    if tag == "R":
        return tuple(d % p[0] for d in prof.right_depths)
    if tag == "LR":
        return tuple((x % p[0], y % p[1]) for x, y in prof.pairs)
    if tag == "ABM":
        a, b, m = reduce_abm(*p)
        if m == 0:
            # only ABM(0,0,0) keeps rank 2 here, and it relates everything
            return (0,) * tree.leaf_count
        return tuple((a * x + b * y) % m for x, y in prof.pairs)
    return tuple(coset_key(spec.grid, pt) for pt in prof.pairs)


def equivalent(t1: BinaryTree, t2: BinaryTree, spec: RelationSpec) -> bool:
    if t1.leaf_count != t2.leaf_count:
        raise TreeError("trees must have the same number of leaves")
    return leaf_key(t1, spec) == leaf_key(t2, spec)


def count_classes(n: int, spec: RelationSpec, threads: int = 1,
                  max_leaves: int = DEFAULT_MAX_LEAVES) -> int:
    """Exact number of classes among the trees with ``n`` leaves."""
    return count_grid_classes(n, normalize_relation(spec), threads=threads,
                              max_leaves=max_leaves)


def count_classes_keyed(n: int, spec: RelationSpec, max_leaves: int = 12) -> int:
    """Slow reference count built directly from :func:`leaf_key`."""
    return len({leaf_key(t, spec) for t in enumerate_trees(n, max_leaves)})


def classes(n: int, spec: RelationSpec,
            max_leaves: int = CLASSES_MAX_LEAVES) -> list[list[BinaryTree]]:
    """Classes in enumeration order, ordered by first member."""
    if n > max_leaves:
        raise GuardExceeded(f"n={n} exceeds class listing guard {max_leaves}")
    groups: dict[tuple, list[BinaryTree]] = {}
    for t in enumerate_trees(n, max_leaves):
        groups.setdefault(leaf_key(t, spec), []).append(t)
    return list(groups.values())


def same_partition(n: int, s1: Union[RelationSpec, Grid, None],
                   s2: Union[RelationSpec, Grid, None]) -> bool:
    """Whether two relations agree on every pair of trees with ``n`` leaves."""
    def grid_of(s):
        return normalize_relation(s) if isinstance(s, RelationSpec) else s
    return bool(np.array_equal(class_ids(n, grid_of(s1)), class_ids(n, grid_of(s2))))


def modular_catalan(k: int, n: int) -> int:
    """Number of classes of trees with ``n + 1`` leaves under left depth mod ``k``."""
    if k < 1:
        raise ValueError("k must be positive")
    if n <= 1:
        return 1
    total = sum((-1) ** j * comb(n, j) * comb(2 * n - j * k, n + 1)
                for j in range((n - 1) // k + 1))
    q, rem = divmod(total, n)
    if rem:
        raise ArithmeticError(f"inexact division for k={k}, n={n}")
    return q
