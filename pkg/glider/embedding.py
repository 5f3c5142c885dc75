"""
Embeddings g1 ⊂ g2 of classical Lie algebras

Canonical subdiagram inclusions, explicit generator-image inclusions (such as the
diagonal sl2 in so4), restriction of roots, condition (1), the star map and
embedding elements.
"""

import logging
from collections import defaultdict
from typing import Dict, List, Literal, Optional, Sequence, Tuple

from sympy import ImmutableMatrix, Rational, zeros

from .errors import (
    AlgebraMismatch,
    AssumptionViolated,
    ConditionOneFails,
    DimensionMismatch,
    FamilyMismatch,
    NotInAlgebra,
    RankOrder,
)
from .exact_linalg import RationalMatrix, rank
from .matrix_realization import BasisLabel, ClassicalAlgebra, bracket, expand_in_basis, is_member, realize
from .models import Collision, ConditionOneReport, StarData
from .root_system import AlgebraKind, Root, Weight, pairing, simple_predecessor, weight_from_coroot_values

logger = logging.getLogger(__name__)

Anchor = Literal["head", "tail"]


# ============================================================================
# Embedding
# ============================================================================

class Embedding:
    """
    Inclusion of a source algebra in a target algebra

    Attributes:
        source, target: Matrix models
        generator_images: source simple root -> target (x, y, h)
        cartan_image: images of the source simple coroots, diagonal in the target
        restriction: R[i][k] = L_k(cartan_image[i]), the matrix of π
    """

    def __init__(
        self,
        source: ClassicalAlgebra,
        target: ClassicalAlgebra,
        generator_images: Dict[Root, Tuple[RationalMatrix, RationalMatrix, RationalMatrix]],
        name: str = "",
    ):
        self.source = source
        self.target = target
        self.generator_images = dict(generator_images)
        self.name = name or f"{source.kind.label} in {target.kind.label}"
        self.cartan_image: List[RationalMatrix] = [self.generator_images[a][2] for a in source.sys.simple_roots]
        offset = 1 if target.kind.family == "B" else 0
        for h in self.cartan_image:
            if not h.is_diagonal():
                raise AssumptionViolated("source Cartan must map into the diagonal Cartan of the target")
        self.restriction: List[List[Rational]] = [
            [h[k + offset, k + offset] for k in range(target.sys.dim)] for h in self.cartan_image
        ]
        if self.cartan_image and rank(ImmutableMatrix(self.restriction)) != source.sys.rank:
            raise AssumptionViolated("restriction map is not surjective")
        self._images: Dict[BasisLabel, RationalMatrix] = {}
        self._restricted: Dict[Tuple, Weight] = {}

    def __repr__(self) -> str:
        return f"Embedding({self.name})"

    # ------------------------------------------------------------ restriction

    def restrict(self, beta: Sequence) -> Weight:
        """
        π(β): evaluate β on the embedded coroots and read off a source weight

        Raises:
            DimensionMismatch: β does not have one coordinate per target L-basis vector
        """
        if len(beta) != self.target.sys.dim:
            raise DimensionMismatch(f"{self.name}: expected {self.target.sys.dim} coordinates, got {len(beta)}")
        key = tuple(Rational(c) for c in beta)
        if key not in self._restricted:
            values = [sum((c * r for c, r in zip(key, row)), Rational(0)) for row in self.restriction]
            self._restricted[key] = weight_from_coroot_values(values, self.source.sys)
        return self._restricted[key]

    # ---------------------------------------------------------- full basis map

    def image_of(self, label: BasisLabel) -> RationalMatrix:
        """Image of a source basis element, built from generators by brackets"""
        if label in self._images:
            return self._images[label]
        kind, key = label
        sys = self.source.sys
        if kind == "h":
            image = self.cartan_image[key]
        elif key in self.generator_images:
            x, y, _ = self.generator_images[key]
            image = x if kind == "x" else y
        else:
            beta = simple_predecessor(key, sys)
            delta = tuple(a - b for a, b in zip(key, beta))
            # x_β, x_δ bracket to a nonzero multiple of x_α in the source
            source_bracket = bracket(self.source.element((kind, beta)), self.source.element((kind, delta)))
            scale = expand_in_basis(self.source, source_bracket)[(kind, key)]
            image = bracket(self.image_of((kind, beta)), self.image_of((kind, delta))) / scale
            image = ImmutableMatrix(image)
        self._images[label] = image
        return image

    def map_matrix(self, m: RationalMatrix) -> RationalMatrix:
        """Image of an arbitrary source element"""
        total = zeros(self.target.matrix_size, self.target.matrix_size)
        for label, c in expand_in_basis(self.source, m).items():
            total += c * self.image_of(label)
        return ImmutableMatrix(total)

    def image_coefficients(self, label: BasisLabel) -> Dict[int, Rational]:
        """Image of a source basis element expanded on the target basis indices"""
        return self.target.expand_indices(self.image_of(label))


# ============================================================================
# Constructors
# ============================================================================

def canonical_embedding(src_kind: AlgebraKind, tgt_kind: AlgebraKind, anchor: Anchor = "head") -> Embedding:
    """
    Subdiagram inclusion

    Type A uses an end point of the chain: "head" embeds on the first nodes
    (top-left block), "tail" on the last nodes. Types B, C, D always use the
    tail containing the double bond or fork.

    Raises:
        FamilyMismatch: families differ
        RankOrder: source rank is not smaller than target rank
    """
    if src_kind.family != tgt_kind.family:
        raise FamilyMismatch(f"cannot embed {src_kind} canonically in {tgt_kind}")
    if src_kind.rank >= tgt_kind.rank:
        raise RankOrder(f"source rank {src_kind.rank} must be below target rank {tgt_kind.rank}")
    source, target = realize(src_kind), realize(tgt_kind)
    shift = 0 if (src_kind.family == "A" and anchor == "head") else tgt_kind.rank - src_kind.rank
    images = {
        alpha: target.triples[target.sys.simple_roots[i + shift]]
        for i, alpha in enumerate(source.sys.simple_roots)
    }
    name = f"{source.kind.label} in {target.kind.label}"
    if src_kind.family == "A":
        name += f" ({anchor})"
    logger.debug("canonical embedding %s", name)
    return Embedding(source, target, images, name=name)


def canonical_for(family: str, n: int, m: int, anchor: Anchor = "head") -> Embedding:
    return canonical_embedding(AlgebraKind.of(family, n), AlgebraKind.of(family, m), anchor)


def embedding_from_images(
    source_kind: AlgebraKind,
    target_kind: AlgebraKind,
    images: Dict[Root, Tuple[RationalMatrix, RationalMatrix]],
    name: str = "",
) -> Embedding:
    """
    Embedding from explicit images (x, y) of the source simple root vectors

    Raises:
        NotInAlgebra: an image is not in the target
        AlgebraMismatch: images violate the Chevalley relations on simple pairs
    """
    source, target = realize(source_kind), realize(target_kind)
    triples = {}
    for alpha in source.sys.simple_roots:
        if tuple(alpha) not in images:
            raise AlgebraMismatch(f"missing image for simple root {alpha}")
        x, y = images[tuple(alpha)]
        for m in (x, y):
            if not is_member(target, m):
                raise NotInAlgebra(f"image of {alpha} is not in {target.kind.label}")
        triples[tuple(alpha)] = (x, y, bracket(x, y))
    simple = source.sys.simple_roots
    for a in simple:
        xa, ya, ha = triples[a]
        for b in simple:
            xb, yb, _ = triples[b]
            a_ba = pairing(b, a)
            if bracket(ha, xb) != a_ba * xb or bracket(ha, yb) != -a_ba * yb:
                raise AlgebraMismatch(f"[h_{a}, x_{b}] relation fails")
            if a != b and not bracket(xa, yb).is_zero_matrix:
                raise AlgebraMismatch(f"[x_{a}, y_{b}] must vanish")
    return Embedding(source, target, triples, name=name)


def diagonal_sl2_in_so4() -> Embedding:
    """sl2 embedded diagonally: x = x_{L1-L2} + x_{L1+L2}, image Cartan spanned by 2H1"""
    so4 = realize(AlgebraKind.of("D", 2))
    x = so4.x((1, -1)) + so4.x((1, 1))
    y = so4.y((1, -1)) + so4.y((1, 1))
    return embedding_from_images(AlgebraKind.of("A", 1), so4.kind, {(1, -1): (x, y)}, name="diagonal sl2 in so4")


# ============================================================================
# Condition (1), star map, embedding elements
# ============================================================================

def check_condition_one(e: Embedding) -> ConditionOneReport:
    """Every source root must have exactly one target root restricting to it"""
    preimages: Dict[Weight, List[Root]] = defaultdict(list)
    for beta in e.target.sys.roots:
        preimages[e.restrict(beta)].append(beta)
    collisions = []
    for alpha in e.source.sys.roots:
        key = e.source.sys.canonical(alpha)
        betas = preimages.get(key, [])
        if len(betas) != 1:
            collisions.append(Collision(alpha=key, betas=betas))
    if collisions:
        logger.info("%s: condition (1) fails on %d roots", e.name, len(collisions))
    return ConditionOneReport(holds=not collisions, collisions=collisions)


def star_map(e: Embedding) -> StarData:
    """
    α ↦ α*, the unique target root restricting to α

    Raises:
        ConditionOneFails: condition (1) does not hold
    """
    report = check_condition_one(e)
    if not report.holds:
        raise ConditionOneFails(f"{e.name}: condition (1) fails at {len(report.collisions)} roots")
    lookup = {e.restrict(beta): beta for beta in e.target.sys.roots}
    star = {alpha: lookup[e.source.sys.canonical(alpha)] for alpha in e.source.sys.roots}
    positive = sorted(
        {b for b in star.values() if e.target.sys.is_positive(b)},
        key=e.target.sys.positive_roots.index,
    )
    return StarData(star=star, positive_star=positive)


def check_standing_assumption(e: Embedding, data: StarData) -> None:
    """
    Raises AssumptionViolated when a starred simple root is negative or a positive
    starred root splits as a sum of two non-starred positive roots
    """
    tgt = e.target.sys
    for alpha in e.source.sys.simple_roots:
        if not tgt.is_positive(data.star[alpha]):
            raise AssumptionViolated(f"{alpha}* = {data.star[alpha]} is not a positive root")
    starred = set(data.positive_star)
    others = [b for b in tgt.positive_roots if b not in starred]
    other_set = set(others)
    for target_root in data.positive_star:
        for beta in others:
            rest = tuple(t - b for t, b in zip(target_root, beta))
            if rest in other_set:
                raise AssumptionViolated(f"{target_root} = {beta} + {rest} with both summands unstarred")


def embedding_elements(e: Embedding) -> List[Root]:
    """
    Positive target roots γ ∉ Φ₁* with [x_{α*}, y_γ] = 0 for every simple α

    Raises:
        ConditionOneFails, AssumptionViolated
    """
    data = star_map(e)
    check_standing_assumption(e, data)
    starred = set(data.positive_star)
    generators = [e.generator_images[alpha][0] for alpha in e.source.sys.simple_roots]
    found = []
    for gamma in e.target.sys.positive_roots:
        if gamma in starred:
            continue
        y = e.target.y(gamma)
        if all(bracket(x, y).is_zero_matrix for x in generators):
            found.append(gamma)
    logger.info("%s: %d embedding elements", e.name, len(found))
    return found


def embedding_element_count_formula(family: str, n: int, m: int) -> int:
    """Closed-form number of embedding elements for a canonical inclusion of rank n in rank m"""
    if n >= m:
        raise RankOrder(f"source rank {n} must be below target rank {m}")
    k = m - n
    return {"A": (k * k + k) // 2, "B": k * k, "C": k * k + k, "D": k * k}[family.upper()]


def eigenvector_criterion(e: Embedding) -> bool:
    """
    Condition (1) via eigenvectors: every source root vector maps into a single
    target root space and the source Cartan maps into the target Cartan
    """
    for label in e.source.labels:
        coefficients = e.image_coefficients(label)
        weights = {e.target.label_weight(e.target.labels[k]) for k in coefficients}
        kinds = {e.target.labels[k][0] for k in coefficients}
        if label[0] == "h":
            if kinds - {"h"}:
                return False
        elif len(weights) != 1 or "h" in kinds:
            return False
    return True


def homomorphism_defects(e: Embedding) -> List[str]:
    """Bracket relations on all pairs of source basis elements"""
    defects = []
    labels = e.source.labels
    for i, a in enumerate(labels):
        for b in labels[i + 1:]:
            expected = e.map_matrix(bracket(e.source.element(a), e.source.element(b)))
            if bracket(e.image_of(a), e.image_of(b)) != expected:
                defects.append(f"[{a}, {b}]")
    return defects


def compose(first: Embedding, second: Embedding) -> Embedding:
    """g1 ⊂ g2 followed by g2 ⊂ g3, as an inclusion g1 ⊂ g3"""
    if first.target.kind != second.source.kind:
        raise AlgebraMismatch(f"cannot compose {first.name} with {second.name}")
    images = {
        alpha: (second.map_matrix(x), second.map_matrix(y), second.map_matrix(h))
        for alpha, (x, y, h) in first.generator_images.items()
    }
    return Embedding(first.source, second.target, images, name=f"{first.source.kind.label} in {second.target.kind.label}")
