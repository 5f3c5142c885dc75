from __future__ import annotations

import pytest
from sympy import Rational

from glider.embedding import canonical_for, diagonal_sl2_in_so4
from glider.errors import FamilyMismatch, InadmissibleLabel, RankOrder
from glider.exact_linalg import Partition, jordan_block, jordan_partition
from glider.matrix_realization import realize_for
from glider.models import OrbitLabel
from glider.nilpotent_orbits import (
    embedded_orbit,
    exponent_label,
    hasse,
    hasse_dot,
    is_admissible,
    is_very_even,
    label_of,
    partition_total,
    orbit_labels,
    reachability_report,
    reachable_orbits_empirical,
    reachable_orbits_predicted,
    representative,
    very_even_tag,
)


def label(family, *parts, tag=None):
    return OrbitLabel(family=family, partition=Partition.of(*parts), tag=tag)


def partitions_in(labels):
    return {l.partition.parts for l in labels}


# ============================================================================
# Classification
# ============================================================================

@pytest.mark.parametrize(
    "family,rank,expected",
    [("A", 2, 3), ("A", 3, 5), ("B", 1, 2), ("B", 2, 4), ("C", 2, 4), ("C", 3, 8), ("D", 2, 4), ("D", 3, 5)],
)
def test_label_counts(family, rank, expected):
    assert len(orbit_labels(family, rank)) == expected


def test_sl3_labels_in_order():
    assert [str(l) for l in orbit_labels("A", 2)] == ["[3]", "[2,1]", "[1,1,1]"]


def test_admissibility_rules():
    assert is_admissible("C", Partition.of(2, 1, 1))
    assert not is_admissible("C", Partition.of(3, 1))
    assert is_admissible("B", Partition.of(3, 1, 1))
    assert not is_admissible("D", Partition.of(2, 1, 1))
    assert is_very_even(Partition.of(2, 2))
    assert not is_very_even(Partition.of(4, 2))
    assert [partition_total(f, 2) for f in "ABCD"] == [3, 5, 4, 4]


def test_very_even_type_d_labels_are_doubled():
    tagged = [l for l in orbit_labels("D", 2) if l.tag]
    assert [str(l) for l in tagged] == ["[2,2]I", "[2,2]II"]


# ============================================================================
# Hasse diagrams
# ============================================================================

def test_sl3_hasse_is_a_chain():
    poset = hasse("A", 2)
    assert [(str(a), str(b)) for a, b in poset.covers] == [("[3]", "[2,1]"), ("[2,1]", "[1,1,1]")]


def test_so4_hasse_has_incomparable_very_even_pair():
    poset = hasse("D", 2)
    assert len(poset.nodes) == 4
    assert len(poset.covers) == 4
    assert (label("D", 2, 2, tag="I"), label("D", 2, 2, tag="II")) not in poset.covers


@pytest.mark.parametrize("family,rank", [("A", 3), ("B", 3), ("C", 3), ("D", 4)])
def test_hasse_has_unique_top_and_bottom(family, rank):
    poset = hasse(family, rank)
    sources = {a for a, _ in poset.covers}
    targets = {b for _, b in poset.covers}
    assert len([n for n in poset.nodes if n not in targets]) == 1
    assert len([n for n in poset.nodes if n not in sources]) == 1


def test_hasse_dot_uses_exponent_labels():
    source = hasse_dot(hasse("A", 2))
    assert source.count("->") == 2
    assert "[1³]" in source
    assert exponent_label(label("B", 3, 2, 2, 1, 1, 1, 1)) == "[3,2²,1⁴]"
    assert exponent_label(label("D", 2, 2, tag="II")) == "[2²]ᴵᴵ"


# ============================================================================
# Representatives
# ============================================================================

SMALL = [("A", 1), ("A", 3), ("B", 1), ("B", 2), ("B", 3), ("B", 4), ("C", 2), ("C", 3), ("D", 2), ("D", 3), ("D", 4)]


@pytest.mark.parametrize("family,rank", SMALL)
def test_representatives_have_their_label(family, rank):
    alg = realize_for(family, rank)
    for orbit in orbit_labels(family, rank):
        assert label_of(representative(orbit, alg), alg) == orbit


def test_representative_examples():
    assert representative(label("A", 3), realize_for("A", 2)) == jordan_block(3)
    sp4 = realize_for("C", 2)
    assert representative(label("C", 2, 1, 1), sp4) == sp4.x((2, 0))


def test_so4_tags_of_root_vectors():
    so4 = realize_for("D", 2)
    assert very_even_tag(so4.x((1, -1)), so4) == "II"
    assert very_even_tag(so4.x((1, 1)), so4) == "I"
    assert very_even_tag(so4.x((1, -1)) + so4.x((1, 1)), so4) is None


def test_representative_rejects_bad_labels():
    so5 = realize_for("B", 2)
    with pytest.raises(InadmissibleLabel):
        representative(label("B", 4, 1), so5)
    with pytest.raises(InadmissibleLabel):
        representative(label("B", 3, 1), so5)
    with pytest.raises(InadmissibleLabel):
        representative(label("C", 2, 2, 1), so5)
    with pytest.raises(InadmissibleLabel):
        representative(label("D", 2, 2), realize_for("D", 2))


# ============================================================================
# Embedded orbits
# ============================================================================

def test_embedded_orbit_pads_with_ones():
    assert embedded_orbit(label("A", 2, 1), canonical_for("A", 2, 4)) == label("A", 2, 1, 1, 1)
    assert embedded_orbit(label("D", 2, 2, 2, 2, tag="I"), canonical_for("D", 4, 5)) == label("D", 2, 2, 2, 2, 1, 1)
    assert embedded_orbit(label("C", 2, 1, 1), canonical_for("C", 2, 3)) == label("C", 2, 1, 1, 1, 1)


def test_embedded_orbit_matches_image_of_representative():
    e = canonical_for("B", 2, 3)
    for orbit in orbit_labels("B", 2):
        image = e.map_matrix(representative(orbit, e.source))
        assert jordan_partition(image) == embedded_orbit(orbit, e).partition


def test_embedded_orbit_errors():
    with pytest.raises(FamilyMismatch):
        embedded_orbit(label("A", 2), diagonal_sl2_in_so4())
    with pytest.raises(InadmissibleLabel):
        embedded_orbit(label("A", 2, 2), canonical_for("A", 2, 3))


# ============================================================================
# Reachability
# ============================================================================

def test_predicted_sets():
    assert partitions_in(reachable_orbits_predicted("A", 2, 4)) == {(3, 1, 1), (2, 1, 1, 1), (1,) * 5}
    assert partitions_in(reachable_orbits_predicted("A", 1, 3)) == {(3, 1), (2, 1, 1), (1,) * 4}
    c_even = partitions_in(reachable_orbits_predicted("C", 1, 3))
    assert (3, 3) in c_even and (4, 1, 1) in c_even
    assert (2, 2, 2) not in c_even
    assert all(p[:2] != (4, 4) for p in partitions_in(reachable_orbits_predicted("C", 1, 4)))
    b_set = partitions_in(reachable_orbits_predicted("B", 2, 5))
    assert (3, 2, 2, 1, 1, 1, 1) not in b_set
    assert (7, 1, 1, 1, 1) not in b_set
    assert (5, 1, 1, 1, 1, 1, 1) in b_set
    with pytest.raises(RankOrder):
        reachable_orbits_predicted("A", 3, 2)


def test_predicted_very_even_orbits_for_sl2_in_so8():
    tagged = [l for l in reachable_orbits_predicted("D", 1, 4) if l.tag]
    assert [str(l) for l in tagged] == ["[4,4]I", "[2,2,2,2]I"]


@pytest.mark.parametrize("n,m", [(1, 3), (2, 4), (1, 4)])
def test_type_a_reachability_is_exact(n, m):
    report = reachability_report("A", n, m)
    assert report.mode == "exhaustive"
    assert report.agrees
    assert report.predicted == reachable_orbits_predicted("A", n, m)


def test_zero_coefficients_reach_only_the_zero_orbit():
    e = canonical_for("C", 1, 3)
    assert reachable_orbits_empirical(e, coefficients=[0]) == [label("C", 1, 1, 1, 1, 1, 1)]


@pytest.mark.parametrize(
    "family,n,m,extra",
    [
        ("C", 1, 3, (2, 2, 2)),
        ("C", 2, 4, None),
        ("B", 2, 4, (3, 3, 1, 1, 1)),
        ("D", 3, 5, (3, 3, 1, 1, 1, 1)),
    ],
)
def test_predicted_sets_are_reached_and_extras_are_pinned(family, n, m, extra):
    report = reachability_report(family, n, m)
    assert report.mode == "exhaustive"
    assert not report.predicted_only
    if extra is not None:
        assert extra in partitions_in(report.empirical_only)


def test_half_coefficients_reach_the_same_orbits_as_ones():
    e = canonical_for("A", 1, 3)
    halves = reachable_orbits_empirical(e, coefficients=[Rational(1, 2)])
    assert halves == reachable_orbits_empirical(e, coefficients=[1])
    assert label("A", 3, 1) in halves


def test_reports_keep_fractional_coefficients():
    report = reachability_report("A", 1, 3, coefficients=["-1/2", "0", "1/2", Rational(1, 2)])
    assert report.coefficients == [Rational(-1, 2), 0, Rational(1, 2)]
    assert report.agrees


def test_sampling_is_seeded(monkeypatch):
    monkeypatch.setenv("GLIDER_EXHAUSTIVE_LIMIT", "10")
    monkeypatch.setenv("GLIDER_SAMPLE_SIZE", "50")
    first = reachability_report("C", 1, 3, seed=7)
    assert first.mode == "sampled"
    assert first.samples >= 2 ** 6
    assert first == reachability_report("C", 1, 3, seed=7)


@pytest.mark.slow
def test_so5_in_so11_misses_the_large_hook():
    report = reachability_report("B", 2, 5, coefficients=[-1, 0, 1])
    assert report.mode == "exhaustive"
    found = partitions_in(report.empirical)
    assert (7, 1, 1, 1, 1) not in found
    assert (3, 2, 2, 1, 1, 1, 1) in found
    assert not report.predicted_only
