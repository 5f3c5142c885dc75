"""
Root systems of the classical families A, B, C, D

Roots are integer tuples and weights are tuples of sympy Rationals, both in the
L-basis (L_i = i-th coordinate functional on the diagonal Cartan subalgebra).
"""

import logging
from functools import lru_cache
from typing import Dict, List, Literal, Optional, Sequence, Tuple

from pydantic import BaseModel, ConfigDict
from sympy import ImmutableMatrix, Matrix, Rational, GramSchmidt

from .errors import DimensionMismatch, InvalidRank
from .exact_linalg import solve_linear

logger = logging.getLogger(__name__)

Root = Tuple[int, ...]
Weight = Tuple[Rational, ...]
Family = Literal["A", "B", "C", "D"]

MAX_RANK = 64


# ============================================================================
# Algebra kinds
# ============================================================================

class AlgebraKind(BaseModel):
    """Family and Dynkin rank of a classical simple Lie algebra"""
    model_config = ConfigDict(frozen=True)

    family: Family
    rank: int

    @classmethod
    def of(cls, family: str, rank: int) -> "AlgebraKind":
        """
        Validated constructor

        Raises:
            InvalidRank: rank < 1, rank 1 in type D, or family unknown
        """
        family = str(family).upper()
        if family not in ("A", "B", "C", "D"):
            raise InvalidRank(f"unknown family {family!r}")
        rank = int(rank)
        if rank < 1 or rank > MAX_RANK:
            raise InvalidRank(f"rank {rank} out of range for type {family}")
        if family == "D" and rank < 2:
            raise InvalidRank("type D needs rank >= 2 (so2 has no roots)")
        return cls(family=family, rank=rank)

    @property
    def ambient_dim(self) -> int:
        return self.rank + 1 if self.family == "A" else self.rank

    @property
    def matrix_size(self) -> int:
        return {"A": self.rank + 1, "B": 2 * self.rank + 1, "C": 2 * self.rank, "D": 2 * self.rank}[self.family]

    @property
    def label(self) -> str:
        prefix = {"A": "sl", "B": "so", "C": "sp", "D": "so"}[self.family]
        return f"{prefix}{self.matrix_size}"

    def __str__(self) -> str:
        return f"{self.family}{self.rank}"


# ============================================================================
# Vector helpers
# ============================================================================

def weight(*coords) -> Weight:
    return tuple(Rational(c) for c in coords)


def vadd(a: Sequence, b: Sequence) -> Weight:
    _check_dims(a, b)
    return tuple(Rational(x) + y for x, y in zip(a, b))


def vsub(a: Sequence, b: Sequence) -> Weight:
    _check_dims(a, b)
    return tuple(Rational(x) - y for x, y in zip(a, b))


def vscale(c, a: Sequence) -> Weight:
    return tuple(Rational(c) * x for x in a)


def dot(a: Sequence, b: Sequence) -> Rational:
    _check_dims(a, b)
    return sum((Rational(x) * y for x, y in zip(a, b)), Rational(0))


def _check_dims(a: Sequence, b: Sequence) -> None:
    if len(a) != len(b):
        raise DimensionMismatch(f"vectors of length {len(a)} and {len(b)}")


def is_integer(q) -> bool:
    return Rational(q).q == 1


# ============================================================================
# Root systems
# ============================================================================

class RootSystem:
    """
    Standard positive system of a classical root system

    positive_roots are ordered by height, ties broken lexicographically on
    coordinates; that order is the PBW order used by the enveloping algebra.
    """

    def __init__(self, kind: AlgebraKind):
        self.kind = kind
        self.simple_roots: List[Root] = _simple_roots(kind)
        self._simple_matrix = ImmutableMatrix([list(r) for r in self.simple_roots]).T
        self._coefficients: Dict[Tuple, Optional[Tuple[int, ...]]] = {}
        candidates = _positive_roots(kind)
        self.heights: Dict[Root, int] = {r: sum(self.simple_coefficients(r)) for r in candidates}
        self.positive_roots: List[Root] = sorted(candidates, key=lambda r: (self.heights[r], r))
        self.negative_roots: List[Root] = [tuple(-c for c in r) for r in self.positive_roots]
        self.roots: List[Root] = self.positive_roots + self.negative_roots
        self._root_set = set(self.roots)
        self._positive_set = set(self.positive_roots)
        n = kind.rank
        expected = {"A": n * (n + 1) // 2, "B": n * n, "C": n * n, "D": n * (n - 1)}[kind.family]
        if len(self.positive_roots) != expected:
            raise InvalidRank(f"{kind}: built {len(self.positive_roots)} positive roots, expected {expected}")
        half_sum = [Rational(0)] * kind.ambient_dim
        for r in self.positive_roots:
            half_sum = [h + Rational(c, 2) for h, c in zip(half_sum, r)]
        self.rho: Weight = self.canonical(half_sum)

    @property
    def rank(self) -> int:
        return self.kind.rank

    @property
    def dim(self) -> int:
        return self.kind.ambient_dim

    def is_root(self, v: Sequence) -> bool:
        return tuple(v) in self._root_set

    def is_positive(self, v: Sequence) -> bool:
        return tuple(v) in self._positive_set

    def canonical(self, v: Sequence) -> Weight:
        """Type A weights modulo the all-ones vector, stored with last coordinate 0"""
        v = tuple(Rational(c) for c in v)
        if len(v) != self.dim:
            raise DimensionMismatch(f"{self.kind} weights have {self.dim} coordinates, got {len(v)}")
        if self.kind.family == "A":
            return tuple(c - v[-1] for c in v)
        return v

    def traceless(self, v: Sequence) -> Weight:
        v = tuple(Rational(c) for c in v)
        if self.kind.family != "A":
            return v
        mean = sum(v, Rational(0)) / len(v)
        return tuple(c - mean for c in v)

    def simple_coefficients(self, v: Sequence) -> Optional[Tuple[Rational, ...]]:
        """Coordinates of v in the simple roots, or None outside their span"""
        key = tuple(Rational(c) for c in v)
        if key not in self._coefficients:
            solution = solve_linear(self._simple_matrix, ImmutableMatrix(len(key), 1, list(key)))
            self._coefficients[key] = None if solution is None else tuple(solution)
        return self._coefficients[key]

    def height(self, v: Sequence) -> Rational:
        coefficients = self.simple_coefficients(self.traceless(v))
        if coefficients is None:
            raise DimensionMismatch(f"{tuple(v)} is not in the span of the simple roots")
        return sum(coefficients, Rational(0))

    def __repr__(self) -> str:
        return f"RootSystem({self.kind})"


def _unit(dim: int, *pairs) -> Root:
    v = [0] * dim
    for index, value in pairs:
        v[index] += value
    return tuple(v)


def _simple_roots(kind: AlgebraKind) -> List[Root]:
    n, dim = kind.rank, kind.ambient_dim
    chain = [_unit(dim, (i, 1), (i + 1, -1)) for i in range(dim - 1)]
    if kind.family == "A":
        return chain
    if kind.family == "B":
        return chain + [_unit(dim, (n - 1, 1))]
    if kind.family == "C":
        return chain + [_unit(dim, (n - 1, 2))]
    return chain + [_unit(dim, (n - 2, 1), (n - 1, 1))]


def _positive_roots(kind: AlgebraKind) -> List[Root]:
    dim = kind.ambient_dim
    roots = [_unit(dim, (i, 1), (j, -1)) for i in range(dim) for j in range(i + 1, dim)]
    if kind.family == "A":
        return roots
    roots += [_unit(dim, (i, 1), (j, 1)) for i in range(dim) for j in range(i + 1, dim)]
    if kind.family == "B":
        roots += [_unit(dim, (i, 1)) for i in range(dim)]
    elif kind.family == "C":
        roots += [_unit(dim, (i, 2)) for i in range(dim)]
    return roots


@lru_cache(maxsize=None)
def build(kind: AlgebraKind) -> RootSystem:
    """
    Build the standard positive system for a classical kind

    Args:
        kind: Validated AlgebraKind (see AlgebraKind.of)

    Returns:
        RootSystem with simple roots per the labelled Dynkin diagram
    """
    logger.debug("building root system %s", kind)
    return RootSystem(kind)


def build_for(family: str, rank: int) -> RootSystem:
    return build(AlgebraKind.of(family, rank))


# ============================================================================
# Pairings, reflections, dominance
# ============================================================================

def pairing(lam: Sequence, alpha: Sequence) -> Rational:
    """⟨λ, α∨⟩ = 2⟨λ,α⟩/⟨α,α⟩ under the coordinate inner product"""
    return 2 * dot(lam, alpha) / dot(alpha, alpha)


def reflect(alpha: Sequence, beta: Sequence) -> Weight:
    """s_α(β) = β − ⟨β,α∨⟩α"""
    return vsub(beta, vscale(pairing(beta, alpha), alpha))


def dot_action(alpha: Sequence, lam: Sequence, sys: RootSystem) -> Weight:
    """Shifted action s_α·λ = s_α(λ+ρ) − ρ"""
    return sys.canonical(vsub(reflect(alpha, vadd(lam, sys.rho)), sys.rho))


def is_antidominant(lam: Sequence, sys: RootSystem) -> bool:
    shifted = vadd(lam, sys.rho)
    for alpha in sys.positive_roots:
        value = pairing(shifted, alpha)
        if value > 0 and is_integer(value):
            return False
    return True


def is_dominant_integral(lam: Sequence, sys: RootSystem) -> bool:
    for alpha in sys.simple_roots:
        value = pairing(lam, alpha)
        if value < 0 or not is_integer(value):
            return False
    return True


def weight_leq(mu: Sequence, lam: Sequence, sys: RootSystem) -> bool:
    """True iff λ − μ is a nonnegative integer combination of simple roots"""
    coefficients = sys.simple_coefficients(sys.traceless(vsub(lam, mu)))
    if coefficients is None:
        return False
    return all(c >= 0 and is_integer(c) for c in coefficients)


def cartan_matrix(sys: RootSystem) -> List[List[int]]:
    """Integer matrix of ⟨α_i, α_j∨⟩ over the simple roots"""
    return [[int(pairing(a, b)) for b in sys.simple_roots] for a in sys.simple_roots]


def coroot_values(lam: Sequence, sys: RootSystem) -> Tuple[Rational, ...]:
    """Values ⟨λ, α_i∨⟩ on the simple coroots"""
    return tuple(pairing(lam, alpha) for alpha in sys.simple_roots)


def weight_from_coroot_values(values: Sequence, sys: RootSystem) -> Weight:
    """
    Weight with prescribed values on the simple coroots

    Args:
        values: One rational per simple root, the dual-basis notation "(2 1)"
        sys: Root system

    Returns:
        The unique (canonical, for type A) weight λ with ⟨λ, α_i∨⟩ = values[i]
    """
    if len(values) != sys.rank:
        raise DimensionMismatch(f"{sys.kind} needs {sys.rank} coroot values, got {len(values)}")
    rows = [[Rational(2 * c, dot(alpha, alpha)) for c in alpha] for alpha in sys.simple_roots]
    rhs = [Rational(v) for v in values]
    if sys.kind.family == "A":
        rows.append([0] * (sys.dim - 1) + [1])
        rhs.append(Rational(0))
    solution = solve_linear(ImmutableMatrix(rows), ImmutableMatrix(len(rhs), 1, rhs))
    if solution is None:
        raise DimensionMismatch(f"no weight with coroot values {tuple(values)}")
    return sys.canonical(tuple(solution))


def simple_predecessor(alpha: Sequence, sys: RootSystem) -> Optional[Root]:
    """A simple β with α − β ∈ Φ⁺, or None when α is simple"""
    alpha = tuple(alpha)
    if alpha in sys.simple_roots:
        return None
    for beta in sys.simple_roots:
        if sys.is_positive(tuple(a - b for a, b in zip(alpha, beta))):
            return beta
    raise DimensionMismatch(f"{alpha} is not a positive root of {sys.kind}")


def positive_functional(roots: Sequence[Sequence]) -> Weight:
    """
    Rational vector with strictly positive inner product against each root

    Built one root at a time: the current vector is moved along the component of
    the next root orthogonal to the previous ones, which leaves earlier inner
    products unchanged.

    Raises:
        DimensionMismatch: roots are linearly dependent
    """
    if not roots:
        raise DimensionMismatch("positive functional of an empty family")
    vectors = [Matrix([Rational(c) for c in r]) for r in roots]
    if Matrix.hstack(*vectors).rank() != len(vectors):
        raise DimensionMismatch("roots are linearly dependent")
    orthogonal = GramSchmidt(vectors)
    gamma = vectors[0]
    for root, perp in zip(vectors[1:], orthogonal[1:]):
        current = gamma.dot(root)
        if current <= 0:
            gamma = gamma + ((1 - current) / perp.dot(perp)) * perp
    result = tuple(Rational(c) for c in gamma)
    if any(dot(result, r) <= 0 for r in roots):
        raise DimensionMismatch("positivity check failed")
    return result
