"""Binary trees with ordered leaves, bracketings, and depth machinery.

A tree is stored as its preorder structure word: ``'1'`` marks an internal
vertex and ``'0'`` a leaf.  The word for a tree with ``n`` leaves has length
``2n - 1`` and is self-delimiting, which makes it a cheap hashable key.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from math import comb
from typing import Iterator, Optional, Sequence

DEFAULT_MAX_LEAVES = 16


class TreeError(ValueError):
    """Malformed tree data (bad depth sequence, mismatched sizes, ...)."""


class BracketingSyntaxError(ValueError):
    def __init__(self, message: str, position: int):
        super().__init__(f"{message} at position {position}")
        self.position = position


class NotRealizableError(ValueError):
    """Leaf probabilities that no binary tree produces."""


class GuardExceeded(ValueError):
    """A leaf count above the configured enumeration guard."""


@dataclass(frozen=True, order=True)
class BinaryTree:
    bits: str

    def __post_init__(self):
        if not _valid_bits(self.bits):
            raise TreeError(f"not a preorder structure word: {self.bits!r}")

    @classmethod
    def leaf(cls) -> "BinaryTree":
        return cls("0")

    @property
    def leaf_count(self) -> int:
        return self.bits.count("0")

    @property
    def is_leaf(self) -> bool:
        return self.bits == "0"

    def children(self) -> tuple["BinaryTree", "BinaryTree"]:
        if self.is_leaf:
            raise TreeError("a leaf has no children")
        cut = _subtree_end(self.bits, 1)
        return BinaryTree(self.bits[1:cut]), BinaryTree(self.bits[cut:])

    def __str__(self) -> str:
        return format_bracketing(self)


def _valid_bits(bits: str) -> bool:
    need = 1
    for pos, ch in enumerate(bits):
        if need == 0:
            return False
        if ch == "1":
            need += 1
        elif ch == "0":
            need -= 1
        else:
            return False
    return need == 0 and len(bits) > 0


def _subtree_end(bits: str, start: int) -> int:
    need = 1
    pos = start
    while need:
        need += 1 if bits[pos] == "1" else -1
        pos += 1
    return pos


@dataclass(frozen=True)
class DepthProfile:
    left_depths: tuple[int, ...]
    right_depths: tuple[int, ...]
    total_depths: tuple[int, ...]
    addresses: tuple[str, ...]

    @property
    def pairs(self) -> tuple[tuple[int, int], ...]:
        return tuple(zip(self.left_depths, self.right_depths))


@dataclass(frozen=True)
class Bracketing:
    text: str
    tree: BinaryTree

    @property
    def size(self) -> int:
        return self.tree.leaf_count


def wedge(left: BinaryTree, right: BinaryTree) -> BinaryTree:
    return BinaryTree("1" + left.bits + right.bits)


def opposite(tree: BinaryTree) -> BinaryTree:
    """Mirror image of ``tree``."""
    if tree.is_leaf:
        return tree
    # Reading the preorder word backwards visits right subtree, left
    # subtree, root; each stack entry is an already mirrored subtree.
    stack: list[str] = []
    for ch in reversed(tree.bits):
        if ch == "0":
            stack.append("0")
        else:
            left = stack.pop()
            right = stack.pop()
            stack.append("1" + right + left)
    return BinaryTree(stack[0])


def depth_profile(tree: BinaryTree) -> DepthProfile:
    addresses: list[str] = []
    path: list[str] = []
    pending: list[int] = []  # per open internal vertex: children still to visit
    for ch in tree.bits:
        if ch == "1":
            pending.append(2)
            path.append("0")
            continue
        addresses.append("".join(path))
        # climb out of finished vertices, then step into the next right child
        while pending:
            pending[-1] -= 1
            if pending[-1] == 1:
                path[-1] = "1"
                break
            pending.pop()
            path.pop()
    ld = tuple(a.count("0") for a in addresses)
    rd = tuple(a.count("1") for a in addresses)
    return DepthProfile(ld, rd, tuple(x + y for x, y in zip(ld, rd)), tuple(addresses))


def left_depths(tree: BinaryTree) -> tuple[int, ...]:
    return depth_profile(tree).left_depths


def right_depths(tree: BinaryTree) -> tuple[int, ...]:
    return depth_profile(tree).right_depths


def is_left_depth_sequence(seq: Sequence[int]) -> bool:
    if not seq or seq[-1] != 0:
        return False
    for i in range(len(seq) - 1):
        if not 1 <= seq[i] <= seq[i + 1] + 1:
            return False
    return True


def addresses_from_left_depths(seq: Sequence[int]) -> tuple[str, ...]:
    """Reconstruct leaf addresses from the left depth sequence.

    Consecutive leaves have addresses ``u01^p`` and ``u10^q``; ``u`` comes
    from the previous address and ``q = ld(i+1) - ld(i) + 1``.
    """
    if not is_left_depth_sequence(seq):
        raise TreeError(f"not a left depth sequence: {tuple(seq)}")
    out = ["0" * seq[0]]
    for i in range(len(seq) - 1):
        prev = out[-1]
        cut = prev.rfind("0")
        q = seq[i + 1] - seq[i] + 1
        out.append(prev[:cut] + "1" + "0" * q)
    return tuple(out)


def tree_from_left_depths(seq: Sequence[int]) -> BinaryTree:
    return tree_from_addresses(addresses_from_left_depths(seq))


def tree_from_addresses(addresses: Sequence[str]) -> BinaryTree:
    def build(words: Sequence[str]) -> str:
        if len(words) == 1:
            if words[0]:
                raise TreeError("addresses do not form a complete prefix code")
            return "0"
        split = sum(1 for w in words if w.startswith("0"))
        if not 0 < split < len(words) or any(not w for w in words):
            raise TreeError("addresses do not form a complete prefix code")
        return ("1" + build([w[1:] for w in words[:split]])
                + build([w[1:] for w in words[split:]]))

    return BinaryTree(build(list(addresses)))


# --- bracketing text -------------------------------------------------------

def format_bracketing(tree: BinaryTree, style: str = "variables") -> str:
    if style == "structure_bits":
        return tree.bits
    if style != "variables":
        raise ValueError(f"unknown style {style!r}")
    counter = iter(range(1, tree.leaf_count + 1))

    def emit(t: BinaryTree, outer: bool) -> str:
        if t.is_leaf:
            return f"x{next(counter)}"
        left, right = t.children()
        body = emit(left, False) + emit(right, False)
        return body if outer else f"({body})"

    return emit(tree, True)


class _Parser:
    def __init__(self, text: str):
        self.text = text
        self.pos = 0
        self.seen = 0

    def skip(self):
        while self.pos < len(self.text) and self.text[self.pos].isspace():
            self.pos += 1

    def peek(self) -> str:
        self.skip()
        return self.text[self.pos] if self.pos < len(self.text) else ""

    def term(self) -> str:
        ch = self.peek()
        if ch == "(":
            start = self.pos
            self.pos += 1
            left = self.term()
            if self.peek() in ("", ")"):
                raise BracketingSyntaxError("parentheses must enclose exactly two terms", start)
            right = self.term()
            if self.peek() != ")":
                raise BracketingSyntaxError("expected ')'", self.pos)
            self.pos += 1
            return "1" + left + right
        if ch == "x":
            return self.variable()
        if ch == "":
            raise BracketingSyntaxError("unexpected end of input", self.pos)
        raise BracketingSyntaxError(f"unexpected character {ch!r}", self.pos)

    def variable(self) -> str:
        start = self.pos
        self.pos += 1
        end = self.pos
        while end < len(self.text) and self.text[end].isdigit():
            end += 1
        if end == self.pos:
            raise BracketingSyntaxError("variable needs an index", start)
        index = int(self.text[self.pos:end])
        self.pos = end
        self.seen += 1
        if index != self.seen:
            raise BracketingSyntaxError(
                f"variable x{index} out of order (expected x{self.seen})", start)
        return "0"


def parse_bracketing(text: str) -> Bracketing:
    p = _Parser(text)
    first = p.term()
    if p.peek():
        if p.peek() == ")":
            raise BracketingSyntaxError("unbalanced ')'", p.pos)
        second = p.term()
        if p.peek():
            raise BracketingSyntaxError("juxtaposition must be parenthesized", p.pos)
        bits = "1" + first + second
    else:
        bits = first
    return Bracketing(text, BinaryTree(bits))


def parse_tree(text: str) -> BinaryTree:
    """Accept a bracketing, a structure word, or comma-separated left depths."""
    text = text.strip()
    if text and set(text) <= {"0", "1"}:
        return BinaryTree(text)
    if text and text[0].isdigit():
        return tree_from_left_depths([int(x) for x in text.split(",")])
    return parse_bracketing(text).tree


# --- enumeration -------------------------------------------------------------

def catalan(n: int) -> int:
    if n < 0:
        raise ValueError("n must be nonnegative")
    return comb(2 * n, n) // (n + 1)


@lru_cache(maxsize=None)
def _words(n: int) -> tuple[str, ...]:
    if n == 1:
        return ("0",)
    return tuple("1" + a + b
                 for k in range(1, n)
                 for a in _words(k)
                 for b in _words(n - k))


def enumerate_trees(n: int, max_leaves: int = DEFAULT_MAX_LEAVES) -> Iterator[BinaryTree]:
    """All binary trees with ``n`` leaves, ordered by left-subtree size first."""
    if n < 1:
        raise ValueError("n must be positive")
    if n > max_leaves:
        raise GuardExceeded(f"n={n} exceeds leaf guard {max_leaves}")
    if n <= 12:
        for bits in _words(n):
            yield BinaryTree(bits)
        return
    for k in range(1, n):
        for left in enumerate_trees(k, max_leaves):
            for right in enumerate_trees(n - k, max_leaves):
                yield wedge(left, right)


# --- divergence --------------------------------------------------------------

def _diffs(t1: BinaryTree, t2: BinaryTree) -> list[tuple[int, int]]:
    if t1.leaf_count != t2.leaf_count:
        raise TreeError(f"leaf counts differ: {t1.leaf_count} vs {t2.leaf_count}")
    p, q = depth_profile(t1), depth_profile(t2)
    return [(a - c, b - d) for (a, b), (c, d) in zip(p.pairs, q.pairs)]


def depth_differences(t1: BinaryTree, t2: BinaryTree) -> list[tuple[int, int]]:
    """Per-leaf ``(ld diff, rd diff)`` vectors of two equal-size trees."""
    return _diffs(t1, t2)


def first_divergence(t1: BinaryTree, t2: BinaryTree) -> Optional[tuple[int, tuple[int, int]]]:
    for i, d in enumerate(_diffs(t1, t2), 1):
        if d != (0, 0):
            return i, d
    return None


def last_divergence(t1: BinaryTree, t2: BinaryTree) -> Optional[tuple[int, tuple[int, int]]]:
    diffs = _diffs(t1, t2)
    for i in range(len(diffs), 0, -1):
        if diffs[i - 1] != (0, 0):
            return i, diffs[i - 1]
    return None


# --- random walk -------------------------------------------------------------

def _check_p(p: Fraction) -> Fraction:
    p = Fraction(p)
    if not 0 < p < 1:
        raise ValueError(f"p must lie strictly between 0 and 1, got {p}")
    return p


def leaf_probabilities(tree: BinaryTree, p) -> tuple[Fraction, ...]:
    p = _check_p(p)
    prof = depth_profile(tree)
    return tuple(p ** l * (1 - p) ** r for l, r in prof.pairs)


def tree_from_leaf_probabilities(probs: Sequence, p) -> BinaryTree:
    """Invert :func:`leaf_probabilities` by splitting where the prefix sum hits ``p``."""
    p = _check_p(p)
    probs = [Fraction(x) for x in probs]
    if sum(probs) != 1 or any(not 0 < x <= 1 for x in probs):
        raise NotRealizableError("probabilities must lie in (0,1] and sum to 1")

    def build(ps: list[Fraction]) -> str:
        if len(ps) == 1:
            if ps[0] != 1:
                raise NotRealizableError("single leaf must carry probability 1")
            return "0"
        acc = Fraction(0)
        for k in range(1, len(ps)):
            acc += ps[k - 1]
            if acc == p:
                return ("1" + build([x / p for x in ps[:k]])
                        + build([x / (1 - p) for x in ps[k:]]))
            if acc > p:
                break
        raise NotRealizableError(f"no prefix of {ps} sums to {p}")

    return BinaryTree(build(probs))
