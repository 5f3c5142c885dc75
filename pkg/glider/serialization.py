"""
JSON documents for glider specs, embedding specs and reports
Rationals travel as strings ("3/2", "-1"); roots as lists of integer strings
"""

import json
import logging
from pathlib import Path
from typing import Any, Dict, List, Literal, Sequence, Union

from pydantic import BaseModel, Field, ValidationError, field_validator
from sympy import Basic, ImmutableMatrix, Rational

from .embedding import Embedding, embedding_from_images
from .errors import GliderError, SpecError
from .exact_linalg import Partition
from .matrix_realization import ClassicalAlgebra
from .models import OrbitLabel
from .root_system import AlgebraKind, Weight, weight_from_coroot_values
from .uea import UEAElement, from_exponents, y_monomial
from .verma_glider import VermaGliderSpec, chain_from_kinds

logger = logging.getLogger(__name__)


def rational_string(value: Any) -> str:
    """Canonical string of an exact rational"""
    try:
        return str(Rational(str(value).strip()))
    except (TypeError, ValueError, SyntaxError) as exc:
        raise ValueError(f"not an exact rational: {value!r}") from exc


def _root_strings(value: Sequence) -> List[str]:
    out = []
    for c in value:
        q = Rational(rational_string(c))
        if not q.is_integer:
            raise ValueError(f"root coordinate {c!r} is not an integer")
        out.append(str(q))
    return out


# ============================================================================
# Glider Spec Documents
# ============================================================================

class ChainDoc(BaseModel):
    """Canonical chain descriptor"""
    family: Literal["A", "B", "C", "D"]
    ranks: List[int]
    anchor: Literal["head", "tail"] = "head"


class WeightDoc(BaseModel):
    """Weight with a basis tag: "L" coordinates or values on the simple coroots"""
    basis: Literal["L", "coroot"] = "L"
    coords: List[str]

    @field_validator("coords", mode="before")
    @classmethod
    def _rationals(cls, value):
        return [rational_string(c) for c in value]


class FactorDoc(BaseModel):
    """y_root^exponent"""
    root: List[str]
    exponent: int = Field(default=1, ge=1)

    @field_validator("root", mode="before")
    @classmethod
    def _integers(cls, value):
        return _root_strings(value)


class MonomialDoc(BaseModel):
    """coefficient · Π factors in the order given; no factors means the scalar"""
    coefficient: str = "1"
    factors: List[FactorDoc] = Field(default_factory=list)

    @field_validator("coefficient", mode="before")
    @classmethod
    def _rational(cls, value):
        return rational_string(value)


ElementDoc = List[MonomialDoc]  # sum of monomials


class GliderSpecDoc(BaseModel):
    """
    Glider spec file

    weights run from g_1 up to g_n; monomials[i] is z_{i+1} in U(g_{i+2});
    extra_generators maps a level to elements of U(g_n)
    """
    name: str = ""
    chain: ChainDoc
    weights: List[WeightDoc]
    monomials: List[ElementDoc]
    extra_generators: Dict[int, List[ElementDoc]] = Field(default_factory=dict)


def _weight(doc: WeightDoc, alg: ClassicalAlgebra) -> Weight:
    coords = [Rational(c) for c in doc.coords]
    if doc.basis == "coroot":
        if len(coords) != alg.sys.rank:
            raise SpecError(f"{alg.kind.label} needs {alg.sys.rank} coroot values, got {len(coords)}")
        return weight_from_coroot_values(coords, alg.sys)
    if len(coords) != alg.sys.dim:
        raise SpecError(f"{alg.kind.label} needs {alg.sys.dim} L-coordinates, got {len(coords)}")
    return alg.sys.canonical(coords)


def _element(doc: ElementDoc, alg: ClassicalAlgebra) -> UEAElement:
    if not doc:
        raise SpecError("an element needs at least one monomial; use a monomial without factors for 1")
    total = UEAElement.zero(alg)
    for monomial in doc:
        factors = []
        for factor in monomial.factors:
            root = tuple(int(c) for c in factor.root)
            if root not in alg.sys.positive_roots:
                raise SpecError(f"{root} is not a positive root of {alg.kind.label}")
            factors.append((root, factor.exponent))
        total = total + Rational(monomial.coefficient) * y_monomial(alg, factors)
    return total


def build_glider_spec(doc: GliderSpecDoc) -> VermaGliderSpec:
    """
    Turn a validated document into a VermaGliderSpec

    Raises:
        SpecError: the document does not describe a well-formed glider spec
    """
    try:
        chain = chain_from_kinds(doc.chain.family, doc.chain.ranks, doc.chain.anchor)
        if len(doc.weights) != chain.length or len(doc.monomials) != chain.length - 1:
            raise SpecError(
                f"a chain of {chain.length} algebras needs {chain.length} weights and "
                f"{chain.length - 1} monomials, got {len(doc.weights)} and {len(doc.monomials)}"
            )
        weights = [_weight(w, alg) for w, alg in zip(doc.weights, chain.algebras)]
        monomials = [_element(m, alg) for m, alg in zip(doc.monomials, chain.algebras[1:])]
        extras = {
            level: [_element(e, chain.top) for e in elements]
            for level, elements in doc.extra_generators.items()
        }
        spec = VermaGliderSpec(chain=chain, weights=weights, monomials=monomials,
                               extra_generators=extras, name=doc.name)
        spec.validate_spec()
    except SpecError:
        raise
    except GliderError as exc:
        raise SpecError(str(exc)) from exc
    return spec


# ============================================================================
# Embedding Spec Documents
# ============================================================================

class KindDoc(BaseModel):
    family: Literal["A", "B", "C", "D"]
    rank: int

    def kind(self) -> AlgebraKind:
        return AlgebraKind.of(self.family, self.rank)


class ImageDoc(BaseModel):
    """Images of x and y for one source simple root, as matrices of rational strings"""
    root: List[str]
    x: List[List[str]]
    y: List[List[str]]

    @field_validator("root", mode="before")
    @classmethod
    def _integers(cls, value):
        return _root_strings(value)

    @field_validator("x", "y", mode="before")
    @classmethod
    def _matrix(cls, value):
        return [[rational_string(c) for c in row] for row in value]


class EmbeddingSpecDoc(BaseModel):
    name: str = ""
    source: KindDoc
    target: KindDoc
    images: List[ImageDoc]


def _matrix(rows: List[List[str]], size: int) -> ImmutableMatrix:
    if len(rows) != size or any(len(r) != size for r in rows):
        raise SpecError(f"image matrices must be {size}x{size}")
    return ImmutableMatrix([[Rational(c) for c in r] for r in rows])


def build_embedding(doc: EmbeddingSpecDoc) -> Embedding:
    """
    Raises:
        SpecError: bad kinds, shapes or images
    """
    try:
        source, target = doc.source.kind(), doc.target.kind()
        size = target.matrix_size
        images = {
            tuple(int(c) for c in image.root): (_matrix(image.x, size), _matrix(image.y, size))
            for image in doc.images
        }
        return embedding_from_images(source, target, images, name=doc.name)
    except SpecError:
        raise
    except GliderError as exc:
        raise SpecError(str(exc)) from exc


def embedding_document(e: Embedding) -> EmbeddingSpecDoc:
    """Document listing the simple-root images of an embedding"""
    return EmbeddingSpecDoc(
        name=e.name,
        source=KindDoc(family=e.source.kind.family, rank=e.source.kind.rank),
        target=KindDoc(family=e.target.kind.family, rank=e.target.kind.rank),
        images=[
            ImageDoc(root=list(alpha), x=x.tolist(), y=y.tolist())
            for alpha, (x, y, _) in e.generator_images.items()
        ],
    )


# ============================================================================
# Loaders
# ============================================================================

DocT = Union[GliderSpecDoc, EmbeddingSpecDoc]


def _load(path: Union[str, Path], model) -> Any:
    path = Path(path)
    try:
        text = path.read_text(encoding="utf-8")
    except OSError as exc:
        raise SpecError(f"cannot read {path}: {exc}") from exc
    try:
        return model.model_validate_json(text)
    except ValidationError as exc:
        raise SpecError(f"{path.name}: {exc.error_count()} validation errors: {exc.errors()[0]['msg']}") from exc


def load_glider_document(path: Union[str, Path]) -> GliderSpecDoc:
    return _load(path, GliderSpecDoc)


def load_glider_spec(path: Union[str, Path]) -> VermaGliderSpec:
    """Read and build a glider spec file (SpecError on any problem)"""
    doc = load_glider_document(path)
    logger.debug("loaded glider spec %s from %s", doc.name, path)
    return build_glider_spec(doc)


def load_embedding_spec(path: Union[str, Path]) -> Embedding:
    return build_embedding(_load(path, EmbeddingSpecDoc))


def dump_document(doc: DocT) -> str:
    """Normalized JSON text; loading it back gives an equal document"""
    return doc.model_dump_json(indent=2)


# ============================================================================
# Report Encoding
# ============================================================================

def _key(value: Any) -> str:
    if isinstance(value, tuple):
        return ",".join(str(c) for c in value)
    return str(value)


def jsonable(value: Any) -> Any:
    """
    Plain JSON data for reports: numbers become exact strings, tuples lists,
    orbit labels and partitions their printed form
    """
    if isinstance(value, (OrbitLabel, Partition)):
        return str(value)
    if isinstance(value, UEAElement):
        return [{**exps, "coeff": str(c)} for exps, c in value.exponents()]
    if isinstance(value, BaseModel):
        return {name: jsonable(getattr(value, name)) for name in type(value).model_fields}
    if isinstance(value, bool) or value is None:
        return value
    if isinstance(value, str):
        return value
    if isinstance(value, (int, Basic)):
        return str(value)
    if isinstance(value, dict):
        return {_key(k): jsonable(v) for k, v in value.items()}
    if isinstance(value, (list, tuple, set, frozenset)):
        return [jsonable(v) for v in value]
    return str(value)


def uea_from_jsonable(alg: ClassicalAlgebra, data: Sequence[Dict[str, Any]]) -> UEAElement:
    """
    Inverse of jsonable on a UEAElement

    Raises:
        SpecError: a term lacks an exponent list or has a malformed coefficient
    """
    try:
        terms = [({part: term[part] for part in ("y", "h", "x")}, Rational(term["coeff"])) for term in data]
        return from_exponents(alg, terms)
    except (KeyError, TypeError, ValueError) as exc:
        raise SpecError(f"bad enveloping algebra element: {exc}") from exc


def dumps(value: Any) -> str:
    return json.dumps(jsonable(value), indent=2, ensure_ascii=False)
