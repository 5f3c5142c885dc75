from __future__ import annotations

import json
from pathlib import Path

import pytest
from sympy import Rational

from glider.embedding import canonical_for, diagonal_sl2_in_so4
from glider.errors import SpecError
from glider.exact_linalg import Partition
from glider.models import Classification, OrbitLabel
from glider.root_system import weight_from_coroot_values
from glider.serialization import (
    GliderSpecDoc,
    WeightDoc,
    build_embedding,
    dump_document,
    embedding_document,
    jsonable,
    load_embedding_spec,
    load_glider_document,
    load_glider_spec,
    uea_from_jsonable,
)
from glider.matrix_realization import realize_for
from glider.uea import UEAElement, y_power

SPECS = Path(__file__).resolve().parent.parent / "specs"


def test_sl234_spec_file_loads(sl234_spec_path):
    spec = load_glider_spec(sl234_spec_path)
    sl2, sl3, sl4 = spec.chain.algebras
    assert spec.weights[0] == weight_from_coroot_values([3], sl2.sys)
    assert spec.weights[2] == weight_from_coroot_values([2, 0, 0], sl4.sys)
    assert spec.monomials[1] == y_power(sl4, (0, 0, 1, -1))


def test_glider_documents_round_trip(sl234_spec_path):
    doc = load_glider_document(sl234_spec_path)
    assert GliderSpecDoc.model_validate_json(dump_document(doc)) == doc


def test_rationals_are_normalized():
    assert WeightDoc(coords=[1, "6/4", " -0 "]).coords == ["1", "3/2", "0"]


def _write(tmp_path, document) -> Path:
    path = tmp_path / "spec.json"
    path.write_text(json.dumps(document), encoding="utf-8")
    return path


def _sl23(weights, factors):
    return {
        "chain": {"family": "A", "ranks": [1, 2]},
        "weights": weights,
        "monomials": [[{"factors": factors}]],
    }


def test_spec_errors(tmp_path):
    good_weights = [{"basis": "coroot", "coords": ["-1"]}, {"coords": ["0", "3", "-3"]}]
    with pytest.raises(SpecError):
        load_glider_spec(_write(tmp_path, _sl23(good_weights, [{"root": ["1", "1", "0"]}])))
    with pytest.raises(SpecError):
        load_glider_spec(_write(tmp_path, _sl23(good_weights[:1], [])))
    with pytest.raises(SpecError):
        load_glider_spec(_write(tmp_path, _sl23([{"coords": ["x"]}, good_weights[1]], [])))
    with pytest.raises(SpecError):
        load_glider_spec(_write(tmp_path, {"chain": {"family": "E", "ranks": [6]}}))
    broken = tmp_path / "broken.json"
    broken.write_text("{", encoding="utf-8")
    with pytest.raises(SpecError):
        load_glider_spec(broken)
    with pytest.raises(SpecError):
        load_glider_spec(tmp_path / "missing.json")


def test_diagonal_embedding_file_matches_builtin():
    loaded = load_embedding_spec(SPECS / "diagonal_sl2_so4.json")
    assert loaded.generator_images == diagonal_sl2_in_so4().generator_images


def test_embedding_documents_rebuild_the_embedding():
    e = canonical_for("C", 1, 2)
    assert build_embedding(embedding_document(e)).generator_images == e.generator_images


def test_jsonable_uses_exact_strings():
    label = OrbitLabel(family="D", partition=Partition.of(2, 2), tag="I")
    data = {
        (1, -1): [Rational(3, 2), 4, True],
        "label": label,
        "verdict": Classification(verdict="Irreducible", reasons=["ok"]),
    }
    assert jsonable(data) == {
        "1,-1": ["3/2", "4", True],
        "label": "[2,2]I",
        "verdict": {"verdict": "Irreducible", "reasons": ["ok"]},
    }


def test_enveloping_elements_encode_as_exponent_terms():
    sl3 = realize_for("A", 2)
    z = y_power(sl3, (1, -1, 0)) * Rational(3, 2) + UEAElement.generator(sl3, ("h", 0))
    data = json.loads(json.dumps(jsonable({"z": z})))["z"]
    assert sorted(term["coeff"] for term in data) == ["1", "3/2"]
    assert all(len(term["y"]) == 3 and len(term["h"]) == 2 and len(term["x"]) == 3 for term in data)
    assert uea_from_jsonable(sl3, data) == z
    assert jsonable(UEAElement(sl3)) == []


def test_malformed_enveloping_terms_are_spec_errors():
    sl3 = realize_for("A", 2)
    with pytest.raises(SpecError):
        uea_from_jsonable(sl3, [{"y": [1, 0, 0], "coeff": "1"}])
    with pytest.raises(SpecError):
        uea_from_jsonable(sl3, [{"y": [1, 0, 0], "h": [0, 0], "x": [0, 0, 0], "coeff": "half"}])
