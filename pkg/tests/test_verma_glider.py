from __future__ import annotations

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st
from sympy import Rational

from glider.embedding import canonical_for, compose
from glider.errors import AlgebraMismatch, DimensionMismatch, InvalidRank, RankOrder
from glider.root_system import dot_action, vadd, vsub, weight_from_coroot_values
from glider.uea import UEAElement, push_forward, y_monomial, y_power
from glider.verma_glider import (
    VermaGliderSpec,
    chain_from_kinds,
    classify_irreducible,
    domint_obstruction,
    solve_lambda_down,
    subfragment_witness,
    verify_glider,
    verma_embedding_exists,
)

CHAIN_234 = chain_from_kinds("A", [1, 2, 3])
SL2, SL3, SL4 = CHAIN_234.algebras
CHAIN_23 = chain_from_kinds("A", [1, 2])


def coroots(alg, *values):
    return weight_from_coroot_values(values, alg.sys)


def sl234_spec(lambda_1=3, **kwargs):
    return VermaGliderSpec(
        chain=CHAIN_234,
        weights=[coroots(SL2, lambda_1), coroots(SL3, 2, 1), coroots(SL4, 2, 0, 0)],
        monomials=[y_power(SL3, (0, 1, -1)), y_power(SL4, (0, 0, 1, -1))],
        name="sl234",
        **kwargs,
    )


def two_step(lam_2, z):
    e = CHAIN_23.embeddings[0]
    return VermaGliderSpec(chain=CHAIN_23, weights=[solve_lambda_down(lam_2, z, e), lam_2], monomials=[z])


# ============================================================================
# solve_lambda_down
# ============================================================================

def test_solve_lambda_down_examples():
    e = CHAIN_234.embeddings[0]
    lam_2 = coroots(SL3, 2, 1)
    assert solve_lambda_down(lam_2, UEAElement.one(SL3), e) == e.restrict(lam_2)
    assert solve_lambda_down(lam_2, y_power(SL3, (0, 1, -1)), e) == coroots(SL2, 3)
    zero = coroots(SL3, 0, 0)
    assert solve_lambda_down(zero, y_power(SL3, (1, -1, 0)), e) == e.restrict((-1, 1, 0))


@settings(max_examples=20)
@given(
    st.tuples(*[st.integers(min_value=-3, max_value=3)] * 3),
    st.sampled_from(SL3.sys.positive_roots),
    st.sampled_from(SL4.sys.positive_roots),
)
def test_cond1_composes_along_the_chain(values, root_1, root_2):
    e1, e2 = CHAIN_234.embeddings
    lam_3 = coroots(SL4, *values)
    z1, z2 = y_power(SL3, root_1), y_power(SL4, root_2)
    stepwise = solve_lambda_down(solve_lambda_down(lam_3, z2, e2), z1, e1)
    direct = solve_lambda_down(lam_3, push_forward(e2, z1) * z2, compose(e1, e2))
    assert stepwise == direct


# ============================================================================
# verify_glider
# ============================================================================

def test_sl234_glider_verifies():
    report = verify_glider(sl234_spec())
    assert report.cond1_ok == [True, True]
    assert report.cond2_ok == [True, True]
    assert report.composition_ok
    assert all(c.holds for c in report.containment)
    assert report.ok
    assert report.essential_length == 2


def test_sl234_with_printed_lambda_fails_cond1():
    report = verify_glider(sl234_spec(lambda_1=-1))
    assert report.cond1_ok == [False, True]
    assert report.levels[0].restricted_weight == coroots(SL2, 3)
    assert not report.ok


def test_perturbed_lambda_fails_cond1():
    assert verify_glider(sl234_spec(lambda_1=4)).cond1_ok[0] is False


def test_trivial_chain_verifies():
    e1, e2 = CHAIN_234.embeddings
    lam_3 = coroots(SL4, 1, 2, 3)
    lam_2 = e2.restrict(lam_3)
    lam_1 = e1.restrict(lam_2)
    spec = VermaGliderSpec(
        chain=CHAIN_234,
        weights=[lam_1, lam_2, lam_3],
        monomials=[UEAElement.one(SL3), UEAElement.one(SL4)],
    )
    report = verify_glider(spec, degree_bound=2)
    assert report.ok
    assert report.essential_length == 2


def test_coefficient_other_than_one_breaks_composition():
    spec = sl234_spec()
    scaled = VermaGliderSpec(chain=spec.chain, weights=spec.weights, monomials=[2 * spec.monomials[0], spec.monomials[1]])
    report = verify_glider(scaled, degree_bound=2)
    assert report.cond1_ok == [True, True]
    assert not report.composition_ok
    assert any("coefficient 2" in note for note in report.notes)


def test_extra_generators_are_checked_for_containment():
    inside = y_monomial(SL4, [((1, 0, -1, 0), 1), ((0, 0, 1, -1), 1)])
    report = verify_glider(sl234_spec(extra_generators={2: [inside]}), degree_bound=2)
    assert report.ok
    outside = y_power(SL4, (1, 0, 0, -1))
    report = verify_glider(sl234_spec(extra_generators={2: [outside]}), degree_bound=2)
    assert not report.containment[1].holds
    assert report.containment[0].holds


def test_containment_applies_degree_one_elements_only():
    report = verify_glider(sl234_spec(), degree_bound=2)
    assert [c.level for c in report.containment] == [1, 2]
    assert all(c.degree_bound == 2 for c in report.containment)
    # each generator plus one image per root vector of sl3 (level 1), then sl3 and sl4 (level 2)
    level_1, level_2 = (c.checked for c in report.containment)
    assert 1 <= level_1 <= 1 + 6
    assert 2 <= level_2 <= (1 + 6) + (1 + 12)


def test_malformed_specs_are_rejected():
    spec = sl234_spec()
    with pytest.raises(DimensionMismatch):
        VermaGliderSpec(chain=CHAIN_234, weights=spec.weights, monomials=spec.monomials[:1]).validate_spec()
    with pytest.raises(AlgebraMismatch):
        VermaGliderSpec(chain=CHAIN_234, weights=spec.weights, monomials=list(reversed(spec.monomials))).validate_spec()


def test_chain_from_kinds_errors():
    with pytest.raises(RankOrder):
        chain_from_kinds("A", [2, 2])
    with pytest.raises(InvalidRank):
        chain_from_kinds("D", [1, 2])


# ============================================================================
# classify_irreducible
# ============================================================================

GRID = [Rational(p, q) for p in range(-12, 13) for q in (1, 2, 3) if q == 1 or p % q]


@pytest.mark.parametrize("c", GRID)
def test_trivial_glider_is_irreducible_exactly_when_antidominant(c):
    spec = two_step(coroots(SL3, c, 0), UEAElement.one(SL3))
    expected = "NotIrreducible" if c.is_integer and c >= 0 else "Irreducible"
    assert classify_irreducible(spec).verdict == expected


def test_minus_rho_glider_is_irreducible():
    spec = two_step(tuple(-c for c in SL3.sys.rho), UEAElement.one(SL3))
    assert spec.weights[0] == SL2.sys.canonical((Rational(-1, 2), Rational(1, 2)))
    assert classify_irreducible(spec).verdict == "Irreducible"


def test_non_dominant_top_weight_is_outside_the_criterion():
    spec = two_step(SL3.sys.canonical((0, 3, -3)), y_power(SL3, (0, 1, -1), 2))
    result = classify_irreducible(spec)
    assert result.verdict == "CriterionInapplicable"
    assert "λ_2 is not dominant integral" in result.reasons
    witnesses = subfragment_witness(spec, 8)
    assert [(w.kind, w.root, w.exponent) for w in witnesses] == [("top", (0, 1, -1), 7)]


def test_dominant_chain_with_large_power_is_not_irreducible():
    spec = two_step(coroots(SL3, 1, 1), y_power(SL3, (0, 1, -1)))
    assert spec.weights[0] == coroots(SL2, 2)
    result = classify_irreducible(spec)
    assert result.verdict == "NotIrreducible"
    assert "λ_1 is not antidominant" in result.reasons
    found = {(w.kind, w.root, w.exponent) for w in subfragment_witness(spec)}
    assert ("bottom", (1, -1, 0), 3) in found
    assert ("top", (0, 1, -1), 2) in found


def test_symplectic_chain_is_outside_the_criterion():
    chain = chain_from_kinds("C", [1, 2])
    sp4 = chain.algebras[1]
    z = y_power(sp4, (1, -1))
    lam_2 = (Rational(0), Rational(0))
    spec = VermaGliderSpec(chain=chain, weights=[solve_lambda_down(lam_2, z, chain.embeddings[0]), lam_2], monomials=[z])
    assert verify_glider(spec, degree_bound=2).cond2_ok == [True]
    result = classify_irreducible(spec)
    assert result.verdict == "CriterionInapplicable"
    assert result.reasons == ["family C is outside A, B, D"]


def test_failed_conditions_make_the_criterion_inapplicable():
    result = classify_irreducible(sl234_spec(lambda_1=-1))
    assert result.verdict == "CriterionInapplicable"
    assert result.reasons == ["cond1 fails at level 1"]


# ============================================================================
# Obstructions and Verma embeddings
# ============================================================================

def test_domint_obstruction():
    e = canonical_for("A", 1, 2)
    rho = SL3.sys.rho
    assert domint_obstruction(e.restrict(rho), rho, e) is None
    report = domint_obstruction(coroots(SL2, -1), coroots(SL3, 1, 1), e)
    assert report is not None
    assert report.difference == coroots(SL2, 2)
    assert set(type(report).model_fields) == {"lambda_1", "lambda_2", "restricted_lambda_2", "difference", "reason"}
    assert report.lambda_1 == coroots(SL2, -1)
    assert report.restricted_lambda_2 == e.restrict(coroots(SL3, 1, 1))
    assert "dominant integral" in report.reason
    assert domint_obstruction(coroots(SL2, -1), coroots(SL3, -1, 1), e) is None


def test_verma_embedding_exists():
    sys = SL4.sys
    lam = coroots(SL4, 2, 0, 0)
    alpha = (0, 0, 1, -1)
    mu = dot_action(alpha, lam, sys)
    assert mu == sys.canonical(vsub(lam, alpha))
    assert verma_embedding_exists(mu, lam, sys)
    assert verma_embedding_exists(lam, lam, sys)
    assert not verma_embedding_exists(vadd(lam, alpha), lam, sys)
