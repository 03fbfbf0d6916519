import random
from itertools import product
from math import gcd, lcm

import pytest
from hypothesis import given, settings, strategies as st
from sympy import Matrix
from sympy.matrices.normalforms import smith_normal_form

from assocspec.grids import (AbelianPairAction, Grid, GridError, canonical_grid, coatoms,
                             contains, contains_grid, coset_key, dimension, format_grid, index,
                             is_treealisable, join, kernel_of_pair, meet, parse_generators,
                             parse_grid, quotient_invariants, span_difference, treealise)
from assocspec.trees import TreeError, enumerate_trees

import oracles
from five_leaf import TREES

G6310 = Grid(2, 6, 3, 10)
L3 = canonical_grid([(3, 0), (0, 1)])
R3 = canonical_grid([(1, 0), (0, 3)])
FULL = Grid.full()


def canonical_triples(limit):
    return [(u, v, w) for w in range(1, limit + 1) for v in range(1, limit + 1) for u in range(w)]


# --- canonical form -----------------------------------------------------------

def test_canonical_examples():
    assert canonical_grid([(6, 3), (10, 0), (0, 15)]) == G6310
    assert canonical_grid([(0, 15), (2, 6)]) == G6310
    assert canonical_grid([]) == Grid.zero()
    assert canonical_grid([(0, 0)]) == Grid.zero()


def test_line_sign_convention():
    assert canonical_grid([(-2, -3)]) == Grid(1, direction=(2, 3), content=1)
    assert canonical_grid([(4, -6)]) == Grid(1, direction=(-2, 3), content=2)
    assert canonical_grid([(-5, 0)]) == Grid(1, direction=(1, 0), content=5)
    assert canonical_grid([(2, 4), (-1, -2)]).generators() == [(1, 2)]


def test_format_and_parse():
    assert format_grid(G6310) == "Z(6,3)+Z(10,0)"
    assert format_grid(canonical_grid([(2, 3)])) == "Z(2,3)"
    assert format_grid(Grid.zero()) == "0"
    assert parse_generators("0") == [] and parse_generators("") == []
    assert parse_grid("6,3;10,0") == G6310
    with pytest.raises(GridError):
        parse_generators("1,2,3")


# --- membership, dimension, index ---------------------------------------------

def test_contains_examples():
    assert contains(G6310, (2, 6))
    assert contains(G6310, (10, 0))
    assert not contains(G6310, (1, 3))
    assert (2, 6) in G6310


def test_contains_lower_dimensions():
    assert contains(Grid.zero(), (0, 0)) and not contains(Grid.zero(), (1, 0))
    line = canonical_grid([(2, 3)])
    assert contains(line, (-4, -6)) and not contains(line, (1, 1)) and contains(line, (0, 0))
    axis = canonical_grid([(0, 4)])
    assert contains(axis, (0, -8)) and not contains(axis, (0, 2))


def test_dimension_and_index():
    assert (dimension(FULL), index(FULL)) == (2, 1)
    assert (dimension(G6310), index(G6310)) == (2, 30)
    line = canonical_grid([(2, 3)])
    assert dimension(line) == 1 and index(line) is None


# --- lattice ------------------------------------------------------------------

def test_meet_join_examples():
    assert meet(L3, R3) == Grid(2, 0, 3, 3)
    assert join(L3, R3) == FULL
    assert meet(G6310, FULL) == G6310


def test_meet_with_lines():
    line = canonical_grid([(1, 1)])
    assert meet(line, canonical_grid([(1, 0), (0, 2)])) == canonical_grid([(2, 2)])
    assert meet(line, canonical_grid([(2, 3)])) == Grid.zero()
    assert meet(line, canonical_grid([(3, 3)])) == canonical_grid([(3, 3)])
    assert meet(Grid.zero(), FULL) == Grid.zero()


def random_grid(rng, limit=6):
    w = rng.randint(1, limit)
    return Grid(2, rng.randrange(w), rng.randint(1, limit), w)


def test_meet_join_membership_on_box():
    rng = random.Random(7)
    box = list(product(range(-12, 13), repeat=2))
    for _ in range(60):
        g1, g2 = random_grid(rng), random_grid(rng)
        m, j = meet(g1, g2), join(g1, g2)
        for pt in box:
            assert contains(m, pt) == (contains(g1, pt) and contains(g2, pt))
        gens = g1.generators() + g2.generators()
        for pt in box[::7]:
            assert contains(j, pt) == oracles.span_member(gens, pt)


def test_lattice_laws():
    rng = random.Random(11)
    for _ in range(100):
        a, b, c = (random_grid(rng) for _ in range(3))
        assert meet(a, b) == meet(b, a) and join(a, b) == join(b, a)
        assert meet(meet(a, b), c) == meet(a, meet(b, c))
        assert join(join(a, b), c) == join(a, join(b, c))
        assert meet(a, join(a, b)) == a and join(a, meet(a, b)) == a
        assert contains_grid(a, meet(a, b)) and contains_grid(join(a, b), a)


gen = st.tuples(st.integers(-12, 12), st.integers(-12, 12))


@given(st.lists(gen, max_size=5), st.randoms(use_true_random=False))
def test_canonical_idempotent_and_order_free(gens, rnd):
    g = canonical_grid(gens)
    assert canonical_grid(g.generators()) == g
    shuffled = list(gens)
    rnd.shuffle(shuffled)
    assert canonical_grid(shuffled) == g
    if g.dim == 2:
        assert 0 <= g.u < g.w and g.v > 0


@settings(max_examples=40)
@given(st.lists(gen, min_size=1, max_size=3))
def test_canonical_contains_small_combinations(gens):
    g = canonical_grid(gens)
    for coefs in product(range(-2, 3), repeat=len(gens)):
        pt = (sum(c * x for c, (x, _) in zip(coefs, gens)),
              sum(c * y for c, (_, y) in zip(coefs, gens)))
        assert contains(g, pt)


@settings(max_examples=40)
@given(st.lists(gen, min_size=1, max_size=3), gen)
def test_membership_matches_hermite_oracle(gens, pt):
    assert contains(canonical_grid(gens), pt) == oracles.span_member(gens, pt)


# --- coset keys and quotient --------------------------------------------------

def test_coset_key_examples():
    assert coset_key(G6310, (6, 3)) == (0, 0)
    assert coset_key(G6310, (2, 6)) == (0, 0)
    assert coset_key(G6310, (1, 3)) == (5, 0)
    with pytest.raises(GridError):
        coset_key(Grid.zero(), (0, 0))


@pytest.mark.parametrize("u,v,w", canonical_triples(5))
def test_coset_key_separates_cosets(u, v, w):
    g = Grid(2, u, v, w)
    pts = list(product(range(-10, 11), repeat=2))
    keys = {pt: coset_key(g, pt) for pt in pts}
    assert len(set(keys.values())) == v * w
    assert all(0 <= r < w and 0 <= s < v for r, s in keys.values())
    origin = (0, 0)
    for pt in pts[::3]:
        for q in pts[::11]:
            diff = (pt[0] - q[0], pt[1] - q[1])
            assert (keys[pt] == keys[q]) == contains(g, diff)
        assert (keys[pt] == keys[origin]) == contains(g, pt)


def test_quotient_examples():
    assert quotient_invariants(G6310) == (1, 30)
    for k in range(1, 7):
        assert quotient_invariants(canonical_grid([(k, 0), (0, 1)])) == (1, k)
        for l in range(1, 7):
            assert quotient_invariants(canonical_grid([(k, 0), (0, l)])) == (gcd(k, l), lcm(k, l))


@pytest.mark.parametrize("u,v,w", [t for t in canonical_triples(6) if t[1] * t[2] <= 36])
def test_quotient_matches_smith_form(u, v, w):
    d1, d2 = quotient_invariants(Grid(2, u, v, w))
    snf = smith_normal_form(Matrix([[u, w], [v, 0]]))
    assert sorted(abs(x) for x in (snf[0, 0], snf[1, 1])) == [d1, d2]
    assert d2 % d1 == 0 and d1 * d2 == v * w
    # exponent of the quotient group is d2
    g = Grid(2, u, v, w)
    exponent = lcm(*(next(t for t in range(1, v * w + 1) if contains(g, (t * r, t * s)))
                     for r, s in product(range(w), range(v))))
    assert exponent == d2


# --- coatoms ------------------------------------------------------------------

def test_coatoms():
    assert coatoms(2) == [Grid(2, 0, 1, 2), Grid(2, 0, 2, 1), Grid(2, 1, 1, 2)]
    c3 = coatoms(3)
    assert len(c3) == 4 and Grid(2, 1, 1, 3) in c3 and Grid(2, 2, 1, 3) in c3
    for p in (2, 3, 5, 7, 11):
        cs = coatoms(p)
        assert len(set(cs)) == p + 1 and all(index(c) == p for c in cs)
    # these are all the index-p grids
    assert set(coatoms(5)) == {Grid(2, u, v, w) for u, v, w in canonical_triples(5) if v * w == 5}
    with pytest.raises(GridError):
        coatoms(4)


# --- trees and grids ----------------------------------------------------------

def test_span_difference_examples():
    assert span_difference(TREES[5], TREES[8]) == Grid(2, 0, 1, 3)
    assert span_difference(TREES[4], TREES[4]) == Grid.zero()
    assert span_difference(TREES[1], TREES[12]) == Grid(2, 0, 3, 1)
    with pytest.raises(TreeError):
        span_difference(TREES[1], enumerate_trees(4).__next__())


def test_is_treealisable_examples():
    assert is_treealisable(Grid.zero())
    assert not is_treealisable(canonical_grid([(2, 3)]))
    assert is_treealisable(G6310)


def test_treealise_examples():
    t1, t2 = treealise(G6310)
    assert t1.leaf_count == t2.leaf_count == 48
    assert span_difference(t1, t2) == G6310
    t1, t2 = treealise(Grid(2, 0, 1, 2))
    assert t1.leaf_count == 8 and span_difference(t1, t2) == Grid(2, 0, 1, 2)
    t1, t2 = treealise(FULL)
    assert t1.leaf_count == 5 and span_difference(t1, t2) == FULL
    with pytest.raises(GridError):
        treealise(canonical_grid([(1, 1)]))


@pytest.mark.parametrize("u,v,w", canonical_triples(6))
def test_treealise_round_trip(u, v, w):
    g = Grid(2, u, v, w)
    t1, t2 = treealise(g)
    assert span_difference(t1, t2) == g


@pytest.mark.parametrize("n", range(2, 8))
def test_distinct_trees_span_rank_two(n):
    trees = list(enumerate_trees(n))
    for i, a in enumerate(trees):
        for b in trees[i + 1:]:
            assert span_difference(a, b).dim == 2


# --- kernels ------------------------------------------------------------------

def test_kernel_examples():
    for k, l in product(range(1, 6), repeat=2):
        act = AbelianPairAction.additive((k, l), (1 % k, 0), (0, 1 % l))
        assert kernel_of_pair(act) == canonical_grid([(k, 0), (0, l)])
    assert kernel_of_pair(AbelianPairAction.multiplicative(5, 2, 3)) == Grid(2, 1, 1, 4)
    assert kernel_of_pair(AbelianPairAction.multiplicative(9, 1, 1)) == FULL
    assert kernel_of_pair(AbelianPairAction.additive((4, 6), (0, 0), (0, 0))) == FULL


def test_kernel_validation():
    with pytest.raises(GridError):
        AbelianPairAction.multiplicative(6, 2, 1)
    with pytest.raises(GridError):
        AbelianPairAction.additive((3,), (3,), (0,))
    with pytest.raises(GridError):
        AbelianPairAction.additive((3, 4), (1,), (0,))


@pytest.mark.parametrize("m", range(2, 10))
def test_multiplicative_kernel_matches_definition(m):
    units = [x for x in range(1, m) if gcd(x, m) == 1]
    for a, b in product(units, repeat=2):
        g = kernel_of_pair(AbelianPairAction.multiplicative(m, a, b))
        for r, s in product(range(-8, 9), repeat=2):
            lhs = pow(a, r, m) * pow(b, s, m) % m
            assert contains(g, (r, s)) == (lhs == 1 % m)
