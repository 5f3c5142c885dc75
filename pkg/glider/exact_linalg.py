"""
Exact rational linear algebra for the glider toolkit

Matrices are sympy ImmutableMatrix values with Rational entries. Rank and
echelon work goes through DomainMatrix over QQ; nothing here touches floats.
"""

import logging
from typing import Iterable, List, Optional, Sequence, Tuple

from pydantic import BaseModel, ConfigDict, field_validator
from sympy import ImmutableMatrix, Rational, diag, zeros
from sympy.polys.domains import QQ
from sympy.polys.matrices import DomainMatrix

from .errors import DimensionMismatch, NotNilpotent

logger = logging.getLogger(__name__)

RationalMatrix = ImmutableMatrix


# ============================================================================
# Partitions
# ============================================================================

class Partition(BaseModel):
    """Non-increasing tuple of positive parts"""
    model_config = ConfigDict(frozen=True)

    parts: Tuple[int, ...]

    @field_validator("parts", mode="before")
    @classmethod
    def _sort_parts(cls, value):
        parts = tuple(sorted((int(p) for p in value), reverse=True))
        if any(p <= 0 for p in parts):
            raise ValueError(f"partition parts must be positive: {parts}")
        return parts

    @classmethod
    def of(cls, *parts: int) -> "Partition":
        return cls(parts=parts)

    @property
    def total(self) -> int:
        return sum(self.parts)

    def multiplicities(self) -> List[Tuple[int, int]]:
        """Multiplicity view [(d₁, i₁), …] with d decreasing"""
        view: List[Tuple[int, int]] = []
        for part in self.parts:
            if view and view[-1][0] == part:
                view[-1] = (part, view[-1][1] + 1)
            else:
                view.append((part, 1))
        return view

    def multiplicity(self, part: int) -> int:
        return self.parts.count(part)

    def conjugate(self) -> "Partition":
        if not self.parts:
            return Partition(parts=())
        return Partition(parts=[sum(1 for p in self.parts if p > k) for k in range(self.parts[0])])

    def dominates(self, other: "Partition") -> bool:
        """Dominance order: every prefix sum of self is at least that of other"""
        if self.total != other.total:
            return False
        mine = theirs = 0
        for k in range(max(len(self.parts), len(other.parts))):
            mine += self.parts[k] if k < len(self.parts) else 0
            theirs += other.parts[k] if k < len(other.parts) else 0
            if mine < theirs:
                return False
        return True

    def padded(self, ones: int) -> "Partition":
        return Partition(parts=self.parts + (1,) * ones)

    def __str__(self) -> str:
        return "[" + ",".join(str(p) for p in self.parts) + "]"


# ============================================================================
# Construction helpers
# ============================================================================

def to_matrix(rows: Sequence[Sequence]) -> RationalMatrix:
    """Build an exact matrix; strings such as "3/2" are accepted"""
    return ImmutableMatrix([[Rational(entry) for entry in row] for row in rows])


def column(values: Iterable) -> RationalMatrix:
    values = [Rational(v) for v in values]
    return ImmutableMatrix(len(values), 1, values)


def unit(n: int, i: int, j: int) -> RationalMatrix:
    """Elementary matrix E_ij (0-based)"""
    m = zeros(n, n)
    m[i, j] = 1
    return ImmutableMatrix(m)


def jordan_block(size: int) -> RationalMatrix:
    """Elementary nilpotent Jordan block with ones on the superdiagonal"""
    m = zeros(size, size)
    for i in range(size - 1):
        m[i, i + 1] = 1
    return ImmutableMatrix(m)


def direct_sum(*blocks: RationalMatrix) -> RationalMatrix:
    return ImmutableMatrix(diag(*blocks)) if blocks else ImmutableMatrix(0, 0, [])


def _domain(m: RationalMatrix) -> DomainMatrix:
    return DomainMatrix.from_Matrix(m).convert_to(QQ)


# ============================================================================
# Core operations
# ============================================================================

def rank(m: RationalMatrix) -> int:
    """Rank over the rationals"""
    if m.rows == 0 or m.cols == 0:
        return 0
    return _domain(m).rank()


def rref(m: RationalMatrix) -> Tuple[RationalMatrix, Tuple[int, ...]]:
    """
    Reduced row echelon form with deterministic pivoting

    Returns:
        (reduced matrix, pivot column indices)
    """
    if m.rows == 0 or m.cols == 0:
        return m, ()
    reduced, pivots = _domain(m).rref()
    return ImmutableMatrix(reduced.to_Matrix()), tuple(pivots)


def inverse(m: RationalMatrix) -> RationalMatrix:
    if m.rows != m.cols:
        raise DimensionMismatch(f"inverse of non-square {m.rows}x{m.cols} matrix")
    return ImmutableMatrix(_domain(m).inv().to_Matrix())


def is_nilpotent(x: RationalMatrix) -> bool:
    if x.rows != x.cols:
        return False
    return (x ** x.rows).is_zero_matrix if x.rows else True


def jordan_partition(x: RationalMatrix) -> Partition:
    """
    Jordan type of a nilpotent matrix from the rank sequence of its powers

    Args:
        x: Square nilpotent matrix

    Returns:
        Partition of size(x) listing the Jordan block sizes

    Raises:
        NotNilpotent: if x^rows is not zero
    """
    if x.rows != x.cols:
        raise DimensionMismatch(f"Jordan type of non-square {x.rows}x{x.cols} matrix")
    n = x.rows
    ranks = [n]
    power = ImmutableMatrix.eye(n)
    while ranks[-1] > 0 and len(ranks) <= n:
        power = power * x
        ranks.append(rank(power))
    if ranks[-1] != 0:
        raise NotNilpotent(f"matrix of size {n} is not nilpotent")
    # at_least[k] = number of blocks of size > k
    at_least = [ranks[k] - ranks[k + 1] for k in range(len(ranks) - 1)]
    return Partition(parts=Partition(parts=[c for c in at_least if c > 0]).conjugate().parts)


def nullspace(m: RationalMatrix) -> List[RationalMatrix]:
    """Basis of the right kernel, one vector per free column of the echelon form"""
    reduced, pivots = rref(m)
    basis: List[RationalMatrix] = []
    for free in (c for c in range(m.cols) if c not in pivots):
        vector = [Rational(0)] * m.cols
        vector[free] = Rational(1)
        for row, pivot in enumerate(pivots):
            vector[pivot] = -reduced[row, free]
        basis.append(column(vector))
    return basis


def solve_linear(a: RationalMatrix, b: RationalMatrix) -> Optional[RationalMatrix]:
    """
    Solve a·c = b exactly

    Returns:
        A coefficient column (free variables set to zero), or None when b is
        outside the column span of a
    """
    if a.rows != b.rows:
        raise DimensionMismatch(f"{a.rows} equations but right-hand side has {b.rows} rows")
    if a.cols == 0:
        return column([]) if b.is_zero_matrix else None
    reduced, pivots = rref(a.row_join(b))
    if a.cols in pivots:
        return None
    solution = [Rational(0)] * a.cols
    for row, pivot in enumerate(pivots):
        solution[pivot] = reduced[row, a.cols]
    return column(solution)


def column_space(m: RationalMatrix) -> List[RationalMatrix]:
    """Pivot columns of m, a basis of its image"""
    _, pivots = rref(m)
    return [m[:, c] for c in pivots]


def intersection_dimension(a: Sequence[RationalMatrix], b: Sequence[RationalMatrix]) -> int:
    """dim(span a ∩ span b) via dim a + dim b − dim(a + b)"""
    if not a or not b:
        return 0
    span_a = rank(ImmutableMatrix.hstack(*a))
    span_b = rank(ImmutableMatrix.hstack(*b))
    return span_a + span_b - rank(ImmutableMatrix.hstack(*a, *b))


def kernel_image_intersection(x: RationalMatrix, power: int) -> List[RationalMatrix]:
    """Basis of im(x^power) ∩ ker(x^power)"""
    p = x ** power
    image = column_space(p)
    if not image:
        return []
    # vectors p·v with p·p·v = 0
    combos = nullspace(p * ImmutableMatrix.hstack(*image))
    return column_space(ImmutableMatrix.hstack(*[ImmutableMatrix.hstack(*image) * c for c in combos])) if combos else []


def insert_zero_lines(x: RationalMatrix, positions: Sequence[int]) -> RationalMatrix:
    """
    Insert zero rows and columns so that they land at the given final indices

    Args:
        x: Square matrix
        positions: Indices (in the enlarged matrix) of the new zero lines
    """
    size = x.rows + len(positions)
    keep = [i for i in range(size) if i not in set(positions)]
    out = zeros(size, size)
    for a, i in enumerate(keep):
        for b, j in enumerate(keep):
            out[i, j] = x[a, b]
    return ImmutableMatrix(out)
