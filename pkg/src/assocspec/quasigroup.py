"""Linear quasigroups over products of cyclic groups.

A quasigroup here is a list of components ``(m, a, b)`` with operation
``x o y = a*x + b*y (mod m)`` in each component; ``a`` and ``b`` must be
units so that both translations are bijections.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import reduce
from math import gcd, prod
from typing import Sequence, Union

import numpy as np

from .grids import (AbelianPairAction, Grid, contains, contains_grid, kernel_of_pair, meet,
                    span_difference)
from .relations import RelationSpec, count_classes
from .trees import (Bracketing, BinaryTree, TreeError, depth_differences, depth_profile,
                    format_bracketing, parse_bracketing)

DEFAULT_BUDGET = 10 ** 7

Component = tuple[int, int, int]
TermLike = Union[Bracketing, BinaryTree, str]


class QuasigroupError(ValueError):
    pass


class BudgetExceeded(RuntimeError):
    pass


class OracleMismatch(AssertionError):
    pass


@dataclass(frozen=True)
class LinearQuasigroup:
    components: tuple[Component, ...]

    @property
    def order(self) -> int:
        return prod(m for m, _, _ in self.components)

    def op(self, x: Sequence[int], y: Sequence[int]) -> tuple[int, ...]:
        return tuple((a * xi + b * yi) % m
                     for (m, a, b), xi, yi in zip(self.components, x, y))

    def __str__(self) -> str:
        return ";".join(f"{m}:{a},{b}" for m, a, b in self.components)


def make_quasigroup(components: Sequence[Sequence[int]]) -> LinearQuasigroup:
    comps = []
    for comp in components:
        m, a, b = (int(x) for x in comp)
        if m < 2:
            raise QuasigroupError(f"modulus {m} must be at least 2")
        for coef in (a, b):
            if gcd(coef, m) != 1:
                raise QuasigroupError(f"{coef} is not a unit modulo {m}")
        comps.append((m, a % m, b % m))
    if not comps:
        raise QuasigroupError("a quasigroup needs at least one component")
    return LinearQuasigroup(tuple(comps))


def parse_quasigroup(text: str) -> LinearQuasigroup:
    """Parse ``"m:a,b"`` components separated by ``;``, e.g. ``"5:1,4;3:2,2"``."""
    comps = []
    for chunk in text.split(";"):
        mod, sep, coefs = chunk.partition(":")
        parts = coefs.split(",")
        if not sep or len(parts) != 2:
            raise QuasigroupError(f"bad component {chunk!r}; expected 'm:a,b'")
        try:
            comps.append((int(mod), int(parts[0]), int(parts[1])))
        except ValueError:
            raise QuasigroupError(f"bad component {chunk!r}") from None
    return make_quasigroup(comps)


def is_latin_square(q: LinearQuasigroup) -> bool:
    """Every row and column of each component's table is a permutation."""
    for m, a, b in q.components:
        table = (a * np.arange(m)[:, None] + b * np.arange(m)[None, :]) % m
        full = np.arange(m)
        if not all((np.sort(row) == full).all() for row in table):
            return False
        if not all((np.sort(col) == full).all() for col in table.T):
            return False
    return True


def _tree(t: TermLike) -> BinaryTree:
    if isinstance(t, BinaryTree):
        return t
    if isinstance(t, Bracketing):
        return t.tree
    return parse_bracketing(t).tree


# --- evaluation --------------------------------------------------------------

def _eval_recursive(tree: BinaryTree, q: LinearQuasigroup, xs: list, pos: int):
    if tree.is_leaf:
        return xs[pos], pos + 1
    left, right = tree.children()
    lv, pos = _eval_recursive(left, q, xs, pos)
    rv, pos = _eval_recursive(right, q, xs, pos)
    return q.op(lv, rv), pos


def _eval_closed(tree: BinaryTree, q: LinearQuasigroup, xs: list) -> tuple[int, ...]:
    prof = depth_profile(tree)
    return tuple(
        sum(pow(a, l, m) * pow(b, r, m) * x[c] for (l, r), x in zip(prof.pairs, xs)) % m
        for c, (m, a, b) in enumerate(q.components))


def evaluate(t: TermLike, q: LinearQuasigroup, assignment: Sequence):
    """Value of a term; plain ints are accepted for one-component quasigroups."""
    tree = _tree(t)
    if len(assignment) != tree.leaf_count:
        raise TreeError(f"term has {tree.leaf_count} variables, got {len(assignment)} values")
    scalar = all(isinstance(x, int) for x in assignment)
    if scalar and len(q.components) != 1:
        raise QuasigroupError("multi-component elements must be tuples")
    xs = [((x,) if scalar else tuple(x)) for x in assignment]
    xs = [tuple(xi % m for xi, (m, _, _) in zip(x, q.components)) for x in xs]
    value, _ = _eval_recursive(tree, q, xs, 0)
    if value != _eval_closed(tree, q, xs):
        raise OracleMismatch(f"recursive and closed-form values differ for {t}")
    return value[0] if scalar else value


# --- identities --------------------------------------------------------------

@dataclass(frozen=True)
class IdentitySpec:
    lhs: Bracketing
    rhs: Bracketing

    @property
    def size(self) -> int:
        return self.lhs.size

    @property
    def trivial(self) -> bool:
        return self.lhs.tree == self.rhs.tree

    def __str__(self) -> str:
        return f"{format_bracketing(self.lhs.tree)} = {format_bracketing(self.rhs.tree)}"


def make_identity(lhs: TermLike, rhs: TermLike) -> IdentitySpec:
    def as_bracketing(t):
        if isinstance(t, Bracketing):
            return t
        if isinstance(t, BinaryTree):
            return Bracketing(format_bracketing(t), t)
        return parse_bracketing(t)
    left, right = as_bracketing(lhs), as_bracketing(rhs)
    if left.size != right.size:
        raise TreeError("both sides of an identity need the same variables")
    return IdentitySpec(left, right)


def difference_grid(identity: IdentitySpec) -> Grid:
    return span_difference(identity.lhs.tree, identity.rhs.tree)


def _closed_form(q: LinearQuasigroup, identity: IdentitySpec) -> bool:
    p1 = depth_profile(identity.lhs.tree).pairs
    p2 = depth_profile(identity.rhs.tree).pairs
    return all(pow(a, l1, m) * pow(b, r1, m) % m == pow(a, l2, m) * pow(b, r2, m) % m
               for m, a, b in q.components for (l1, r1), (l2, r2) in zip(p1, p2))


def cayley_table(q: LinearQuasigroup) -> np.ndarray:
    """Operation table on elements encoded in mixed radix (first component most significant)."""
    elems = np.indices([m for m, _, _ in q.components]).reshape(len(q.components), -1).T
    codes = np.zeros((len(elems), len(elems)), dtype=np.int64)
    for (m, a, b), x, y in zip(q.components, elems.T[:, :, None], elems.T[:, None, :]):
        codes = codes * m + (a * x + b * y) % m
    return codes


def _eval_table(tree: BinaryTree, table: np.ndarray, leaves: list, pos: int):
    if tree.is_leaf:
        return leaves[pos], pos + 1
    left, right = tree.children()
    lv, pos = _eval_table(left, table, leaves, pos)
    rv, pos = _eval_table(right, table, leaves, pos)
    return table[lv, rv], pos


def _both_sides(q: LinearQuasigroup, identity: IdentitySpec, budget: int):
    """Both sides evaluated on every assignment, plus the per-variable value arrays."""
    size, n = q.order, identity.size
    total = size ** n
    if total > budget:
        raise BudgetExceeded(f"{size}^{n} = {total} assignments exceed budget {budget}")
    table = cayley_table(q)
    idx = np.arange(total, dtype=np.int64)
    leaves = [(idx // size ** (n - 1 - i)) % size for i in range(n)]
    lv, _ = _eval_table(identity.lhs.tree, table, leaves, 0)
    rv, _ = _eval_table(identity.rhs.tree, table, leaves, 0)
    return lv, rv, leaves


def satisfies(q: LinearQuasigroup, identity: IdentitySpec, method: str = "closed_form",
              budget: int = DEFAULT_BUDGET) -> bool:
    """Whether ``q`` satisfies the identity, by ``closed_form``, ``brute_force`` or ``grid``."""
    if method == "closed_form":
        return _closed_form(q, identity)
    if method == "brute_force":
        lv, rv, _ = _both_sides(q, identity, budget)
        return bool(np.array_equal(lv, rv))
    if method == "grid":
        g = fine_spectrum_grid(q)
        return contains_grid(g, difference_grid(identity))
    raise ValueError(f"unknown method {method!r}")


def counterexample(q: LinearQuasigroup, identity: IdentitySpec,
                   budget: int = DEFAULT_BUDGET):
    """First assignment (lexicographic, elements as mixed-radix codes) where the sides differ."""
    lv, rv, leaves = _both_sides(q, identity, budget)
    bad = np.flatnonzero(lv != rv)
    if not len(bad):
        return None
    return tuple(int(x[bad[0]]) for x in leaves)


# --- spectra -----------------------------------------------------------------

def fine_spectrum_grid(q: LinearQuasigroup) -> Grid:
    """Grid of depth differences tolerated by ``q``: the meet of per-component kernels."""
    kernels = [kernel_of_pair(AbelianPairAction.multiplicative(m, a, b))
               for m, a, b in q.components]
    return reduce(meet, kernels)


def spectrum(q: LinearQuasigroup, n: int, threads: int = 1) -> int:
    """Number of distinct term operations of the size-``n`` bracketings."""
    return count_classes(n, RelationSpec.from_grid(fine_spectrum_grid(q)), threads=threads)


@dataclass(frozen=True)
class Classification:
    associative: bool
    grid: Grid

    def __str__(self) -> str:
        return "associative" if self.associative else f"nonassociative {self.grid}"


def classify(q: LinearQuasigroup) -> Classification:
    g = fine_spectrum_grid(q)
    # unit orders are finite, so the grid always has rank two
    assert g.dim == 2, "finite quasigroups always have a rank two spectrum grid"
    return Classification(g == Grid.full(), g)


def consequence(premise: IdentitySpec, conclusion: IdentitySpec) -> bool:
    """Whether every linear quasigroup satisfying ``premise`` also satisfies ``conclusion``."""
    return contains_grid(difference_grid(premise), difference_grid(conclusion))


def all_diffs_in(grid: Grid, identity: IdentitySpec) -> bool:
    return all(contains(grid, d) for d in depth_differences(identity.lhs.tree, identity.rhs.tree))


__all__ = [
    "BudgetExceeded", "Classification", "IdentitySpec", "LinearQuasigroup", "OracleMismatch",
    "QuasigroupError", "all_diffs_in", "cayley_table", "classify",
    "consequence", "counterexample", "difference_grid", "evaluate", "fine_spectrum_grid",
    "is_latin_square", "make_identity", "make_quasigroup", "parse_quasigroup", "satisfies",
    "spectrum",
]
