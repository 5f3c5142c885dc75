from __future__ import annotations

import itertools

import pytest
from hypothesis import given
from hypothesis import strategies as st
from sympy import Rational

from glider.errors import DimensionMismatch, InvalidRank
from glider.root_system import (
    AlgebraKind,
    build_for,
    cartan_matrix,
    coroot_values,
    dot,
    dot_action,
    is_antidominant,
    is_dominant_integral,
    pairing,
    positive_functional,
    reflect,
    simple_predecessor,
    vadd,
    vscale,
    vsub,
    weight,
    weight_from_coroot_values,
    weight_leq,
)

KINDS = [(f, n) for f in "ABCD" for n in range(1, 9) if not (f == "D" and n < 2)]


@pytest.mark.parametrize("family,rank", KINDS)
def test_positive_root_counts(family, rank):
    sys = build_for(family, rank)
    expected = {"A": rank * (rank + 1) // 2, "B": rank**2, "C": rank**2, "D": rank * (rank - 1)}[family]
    assert len(sys.positive_roots) == expected
    assert len(sys.simple_roots) == rank
    for root in sys.positive_roots:
        coefficients = sys.simple_coefficients(root)
        assert all(c >= 0 and c.q == 1 for c in coefficients)


def test_build_examples():
    assert len(build_for("A", 3).positive_roots) == 6
    assert (0, 0, 0, 2) in build_for("C", 4).simple_roots
    d = build_for("D", 4).simple_roots
    assert (0, 0, 1, -1) in d and (0, 0, 1, 1) in d


def test_rank_one_d_is_rejected():
    with pytest.raises(InvalidRank):
        AlgebraKind.of("D", 1)
    with pytest.raises(InvalidRank):
        AlgebraKind.of("E", 6)


def test_positive_roots_sorted_by_height():
    sys = build_for("B", 3)
    heights = [sys.heights[r] for r in sys.positive_roots]
    assert heights == sorted(heights)
    assert sys.positive_roots[: sys.rank] == sorted(sys.simple_roots)


def test_pairing_examples():
    alpha = (0, 1, -1)
    assert pairing(alpha, alpha) == 2
    sl3 = build_for("A", 2)
    assert pairing(vadd(alpha, sl3.rho), alpha) == 3
    sl4 = build_for("A", 3)
    lam3 = weight_from_coroot_values([2, 0, 0], sl4)
    assert pairing(lam3, (0, 0, 1, -1)) == 0
    with pytest.raises(DimensionMismatch):
        pairing((1, 0), (1, -1, 0))


def test_reflection_examples():
    alpha = (1, -1, 0)
    assert reflect(alpha, alpha) == weight(-1, 1, 0)
    assert reflect(alpha, (1, 1, 5)) == weight(1, 1, 5)


@pytest.mark.parametrize("family,rank", [("A", 3), ("B", 3), ("C", 3), ("D", 4)])
def test_weyl_closure_of_roots(family, rank):
    sys = build_for(family, rank)
    for a, b in itertools.product(sys.roots, repeat=2):
        image = reflect(a, b)
        assert sys.is_root(tuple(int(c) for c in image))


fractions = st.fractions(min_value=-5, max_value=5, max_denominator=4)


@given(st.lists(fractions, min_size=3, max_size=3))
def test_reflection_and_dot_action_are_involutions(coords):
    sys = build_for("B", 3)
    beta = weight(*[Rational(c.numerator, c.denominator) for c in coords])
    for alpha in sys.positive_roots:
        assert reflect(alpha, reflect(alpha, beta)) == beta
        assert dot_action(alpha, dot_action(alpha, beta, sys), sys) == beta


def test_dot_action_examples():
    sl3 = build_for("A", 2)
    minus_rho = sl3.canonical(vscale(-1, sl3.rho))
    assert dot_action((1, -1, 0), minus_rho, sl3) == minus_rho
    sl2 = build_for("A", 1)
    lam = weight_from_coroot_values([5], sl2)
    assert coroot_values(dot_action((1, -1), lam, sl2), sl2) == (-7,)


def test_antidominance_examples():
    sl3 = build_for("A", 2)
    assert is_antidominant(vscale(-1, sl3.rho), sl3)
    sl2 = build_for("A", 1)
    assert is_antidominant(sl2.canonical(weight(Rational(-1, 2), Rational(1, 2))), sl2)
    assert not is_antidominant(sl3.canonical((0, 1, -1)), sl3)


def test_dominant_integral_examples():
    sl3 = build_for("A", 2)
    assert is_dominant_integral(weight(0, 0, 0), sl3)
    assert is_dominant_integral(sl3.rho, sl3)
    lam = sl3.canonical((0, 3, -3))
    assert pairing(lam, (1, -1, 0)) == -3
    assert not is_dominant_integral(lam, sl3)


def test_weight_leq_examples():
    sys = build_for("C", 3)
    lam = weight(2, 1, Rational(1, 2))
    assert weight_leq(lam, lam, sys)
    assert weight_leq(vsub(lam, (0, 0, 2)), lam, sys)
    assert not weight_leq(vadd(lam, (0, 1, -1)), lam, sys)
    sl3 = build_for("A", 2)
    assert weight_leq(sl3.canonical((0, 0, 1)), sl3.canonical((1, 0, 0)), sl3)


def test_cartan_matrix_of_c3():
    assert cartan_matrix(build_for("C", 3)) == [[2, -1, 0], [-1, 2, -1], [0, -2, 2]]


@pytest.mark.parametrize("family,rank", [("A", 3), ("B", 2), ("C", 3), ("D", 4)])
def test_coroot_values_round_trip_on_fundamental_weights(family, rank):
    sys = build_for(family, rank)
    for i in range(rank):
        values = [1 if j == i else 0 for j in range(rank)]
        assert list(coroot_values(weight_from_coroot_values(values, sys), sys)) == values


@pytest.mark.parametrize("family,rank", [("A", 4), ("B", 4), ("C", 4), ("D", 5)])
def test_positive_functional_on_independent_roots(family, rank):
    sys = build_for(family, rank)
    roots = sys.positive_roots
    chosen = [roots[-1]]
    for root in roots:
        candidate = chosen + [root]
        if len(chosen) < rank - 1 and build_rank(candidate) == len(candidate):
            chosen = candidate
    gamma = positive_functional(chosen)
    assert all(dot(gamma, r) > 0 for r in chosen)


def build_rank(vectors):
    from sympy import Matrix
    return Matrix([list(v) for v in vectors]).rank()


@pytest.mark.parametrize("family,rank", KINDS[:20])
def test_every_nonsimple_positive_root_has_simple_predecessor(family, rank):
    sys = build_for(family, rank)
    for alpha in sys.positive_roots:
        beta = simple_predecessor(alpha, sys)
        if alpha in sys.simple_roots:
            assert beta is None
        else:
            assert sys.is_positive(tuple(a - b for a, b in zip(alpha, beta)))
