from __future__ import annotations

import itertools

import pytest
from sympy import ImmutableMatrix, zeros

from glider.errors import DimensionMismatch, NotInAlgebra
from glider.exact_linalg import to_matrix, unit
from glider.matrix_realization import (
    bracket,
    expand_in_basis,
    is_member,
    realize_for,
    verify_triples,
)

SMALL_KINDS = [("A", 1), ("A", 3), ("B", 1), ("B", 2), ("B", 3), ("C", 1), ("C", 2), ("C", 3), ("D", 2), ("D", 3), ("D", 4)]


@pytest.mark.parametrize("family,rank", SMALL_KINDS)
def test_triples_satisfy_sl2_relations(family, rank):
    assert verify_triples(realize_for(family, rank)) == []


def test_sl4_uses_elementary_matrices():
    sl4 = realize_for("A", 3)
    assert sl4.x((1, -1, 0, 0)) == unit(4, 0, 1)


def test_so4_block_conventions():
    so4 = realize_for("D", 2)
    assert so4.x((1, -1)) == unit(4, 0, 1) - unit(4, 3, 2)
    assert so4.x((1, 1)) == unit(4, 0, 3) - unit(4, 1, 2)
    assert so4.cartan_basis[0] == unit(4, 0, 0) - unit(4, 1, 1) - unit(4, 2, 2) + unit(4, 3, 3)
    # normalized so that [x, y] = h
    assert so4.y((1, 1)) == unit(4, 3, 0) - unit(4, 2, 1)


def test_bracket_examples():
    sl4 = realize_for("A", 3)
    x = sl4.x((1, -1, 0, 0))
    assert bracket(x, x).is_zero_matrix
    assert bracket(unit(4, 0, 1), unit(4, 1, 2)) == unit(4, 0, 2)
    sl2 = realize_for("A", 1)
    assert bracket(sl2.x((1, -1)), sl2.y((1, -1))) == sl2.h((1, -1))
    with pytest.raises(DimensionMismatch):
        bracket(unit(3, 0, 1), unit(4, 0, 1))


def test_expand_in_basis_examples():
    sl4 = realize_for("A", 3)
    alpha = (1, -1, 0, 0)
    coefficients = expand_in_basis(sl4, sl4.h(alpha))
    assert all(label[0] == "h" for label in coefficients)
    assert expand_in_basis(sl4, 3 * sl4.x(alpha)) == {("x", alpha): 3}
    commutator = bracket(sl4.x(alpha), sl4.x((0, 1, -1, 0)))
    assert expand_in_basis(sl4, commutator) == {("x", (1, 0, -1, 0)): 1}
    with pytest.raises(NotInAlgebra):
        expand_in_basis(sl4, ImmutableMatrix.eye(4))


def test_membership_examples():
    sl3 = realize_for("A", 2)
    assert is_member(sl3, ImmutableMatrix(zeros(3, 3)))
    assert not is_member(sl3, ImmutableMatrix.eye(3))
    sp4 = realize_for("C", 2)
    for x, y, h in sp4.triples.values():
        assert is_member(sp4, x) and is_member(sp4, y) and is_member(sp4, h)
    assert not is_member(sp4, unit(4, 0, 1))


@pytest.mark.parametrize("family,rank", [("A", 2), ("B", 2), ("C", 2), ("D", 3)])
def test_jacobi_identity_on_basis(family, rank):
    alg = realize_for(family, rank)
    for a, b, c in itertools.combinations(alg.elements, 3):
        total = bracket(bracket(a, b), c) + bracket(bracket(b, c), a) + bracket(bracket(c, a), b)
        assert total.is_zero_matrix


@pytest.mark.parametrize("family,rank", [("A", 3), ("B", 3), ("C", 3), ("D", 4)])
def test_root_space_brackets_respect_weights(family, rank):
    alg = realize_for(family, rank)
    sys = alg.sys
    for alpha, beta in itertools.product(sys.roots, repeat=2):
        coefficients = expand_in_basis(alg, bracket(alg.root_vector(alpha), alg.root_vector(beta)))
        total = tuple(a + b for a, b in zip(alpha, beta))
        for label in coefficients:
            if all(c == 0 for c in total):
                assert label[0] == "h"
            else:
                assert alg.label_weight(label) == total


def test_type_b_short_roots_touch_first_row():
    so7 = realize_for("B", 3)
    for alpha, (x, _, _) in so7.triples.items():
        touches = any(x[0, j] != 0 for j in range(7)) or any(x[i, 0] != 0 for i in range(7))
        assert touches == (sum(abs(c) for c in alpha) == 1)


def test_expand_rejects_wrong_size():
    with pytest.raises(DimensionMismatch):
        realize_for("A", 1).expand_indices(to_matrix([[0]]))


def test_basis_order_is_y_h_x():
    sp4 = realize_for("C", 2)
    labels = [label for label, _ in sp4.basis()]
    assert len(labels) == sp4.dimension == 10
    assert [kind for kind, _ in labels] == ["y"] * 4 + ["h"] * 2 + ["x"] * 4
    assert dict(sp4.basis())[("x", (2, 0))] == sp4.x((2, 0))
