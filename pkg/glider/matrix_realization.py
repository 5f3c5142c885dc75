"""
Matrix realizations of sl_{n+1}, so_{2n+1}, sp_{2n}, so_{2n}

Index conventions (0-based): e_1..e_n occupy indices 0..n-1 and f_i sits at
n+i. Type B puts the extra basis vector e_0 first and shifts everything by one.
"""

import logging
from functools import lru_cache
from typing import Dict, List, Optional, Sequence, Tuple

from sympy import ImmutableMatrix, Rational, zeros

from .errors import DimensionMismatch, NotInAlgebra
from .exact_linalg import RationalMatrix, inverse, rref
from .root_system import AlgebraKind, Root, RootSystem, build

logger = logging.getLogger(__name__)

# basis labels: ("y", root), ("h", i), ("x", root)
BasisLabel = Tuple[str, object]
Triple = Tuple[RationalMatrix, RationalMatrix, RationalMatrix]


# ============================================================================
# Matrix helpers
# ============================================================================

def bracket(a: RationalMatrix, b: RationalMatrix) -> RationalMatrix:
    """Commutator ab − ba"""
    if a.shape != b.shape or a.rows != a.cols:
        raise DimensionMismatch(f"bracket of {a.rows}x{a.cols} and {b.rows}x{b.cols}")
    return a * b - b * a


def _matrix(size: int, entries: Sequence[Tuple[int, int, int]]) -> RationalMatrix:
    m = zeros(size, size)
    for i, j, value in entries:
        m[i, j] += value
    return ImmutableMatrix(m)


# ============================================================================
# Classical algebra
# ============================================================================

class ClassicalAlgebra:
    """
    Matrix model with a full table of root-vector triples

    Attributes:
        kind: Family and rank
        sys: Root system with the shared positive-root order
        matrix_size: Size of the defining representation
        cartan_basis: Simple coroots h_{α_i} as diagonal matrices
        triples: Positive root α -> (x_α, y_α, h_α)
        defining_form: J with XᵀJ + JX = 0 (None for type A)
    """

    def __init__(self, kind: AlgebraKind):
        self.kind = kind
        self.sys: RootSystem = build(kind)
        self.matrix_size = kind.matrix_size
        self.defining_form: Optional[RationalMatrix] = _defining_form(kind)
        self.triples: Dict[Root, Triple] = {alpha: _triple(kind, alpha) for alpha in self.sys.positive_roots}
        self.cartan_basis: List[RationalMatrix] = [self.triples[alpha][2] for alpha in self.sys.simple_roots]
        self.labels: List[BasisLabel] = (
            [("y", alpha) for alpha in self.sys.positive_roots]
            + [("h", i) for i in range(self.sys.rank)]
            + [("x", alpha) for alpha in self.sys.positive_roots]
        )
        self.index: Dict[BasisLabel, int] = {label: k for k, label in enumerate(self.labels)}
        self.elements: List[RationalMatrix] = [self.element(label) for label in self.labels]
        self._prepare_expansion()

    # ------------------------------------------------------------------ basis

    @property
    def dimension(self) -> int:
        return len(self.labels)

    def basis(self) -> List[Tuple[BasisLabel, RationalMatrix]]:
        """(label, matrix) pairs in the order y, h, x"""
        return list(zip(self.labels, self.elements))

    def element(self, label: BasisLabel) -> RationalMatrix:
        kind, key = label
        if kind == "h":
            return self.cartan_basis[key]
        x, y, _ = self.triples[key]
        return x if kind == "x" else y

    def x(self, alpha: Sequence[int]) -> RationalMatrix:
        return self.triples[tuple(alpha)][0]

    def y(self, alpha: Sequence[int]) -> RationalMatrix:
        return self.triples[tuple(alpha)][1]

    def h(self, alpha: Sequence[int]) -> RationalMatrix:
        return self.triples[tuple(alpha)][2]

    def root_vector(self, gamma: Sequence[int]) -> RationalMatrix:
        """x_γ for positive γ, y_{−γ} for negative γ"""
        gamma = tuple(gamma)
        if self.sys.is_positive(gamma):
            return self.x(gamma)
        return self.y(tuple(-c for c in gamma))

    def label_weight(self, label: BasisLabel) -> Tuple[int, ...]:
        kind, key = label
        if kind == "x":
            return key
        if kind == "y":
            return tuple(-c for c in key)
        return (0,) * self.sys.dim

    def evaluate(self, lam: Sequence, h: RationalMatrix) -> Rational:
        """λ(h) for a diagonal Cartan element h"""
        offset = 1 if self.kind.family == "B" else 0
        return sum((Rational(c) * h[k + offset, k + offset] for k, c in enumerate(lam)), Rational(0))

    # -------------------------------------------------------------- expansion

    def _prepare_expansion(self) -> None:
        size = self.matrix_size
        columns = ImmutableMatrix([list(m.reshape(1, size * size)) for m in self.elements])
        _, pivots = rref(columns)
        if len(pivots) != self.dimension:
            raise NotInAlgebra(f"{self.kind}: basis matrices are not independent")
        self._pivots = [divmod(p, size) for p in pivots]
        square = ImmutableMatrix([[m[i, j] for m in self.elements] for i, j in self._pivots])
        self._solver = inverse(square)

    def expand_indices(self, m: RationalMatrix) -> Dict[int, Rational]:
        """Coefficients of m on the basis, keyed by basis index"""
        if m.shape != (self.matrix_size, self.matrix_size):
            raise DimensionMismatch(f"{self.kind} expects {self.matrix_size}x{self.matrix_size}, got {m.rows}x{m.cols}")
        rhs = ImmutableMatrix(len(self._pivots), 1, [m[i, j] for i, j in self._pivots])
        solution = self._solver * rhs
        coefficients = {k: Rational(c) for k, c in enumerate(solution) if c != 0}
        if self.combine_indices(coefficients) != m:
            raise NotInAlgebra(f"matrix is not an element of {self.kind.label}")
        return coefficients

    def combine_indices(self, coefficients: Dict[int, Rational]) -> RationalMatrix:
        total = zeros(self.matrix_size, self.matrix_size)
        for k, c in coefficients.items():
            total += c * self.elements[k]
        return ImmutableMatrix(total)

    def __repr__(self) -> str:
        return f"ClassicalAlgebra({self.kind.label})"


def _defining_form(kind: AlgebraKind) -> Optional[RationalMatrix]:
    n = kind.rank
    if kind.family == "A":
        return None
    if kind.family == "B":
        return _matrix(2 * n + 1, [(0, 0, 1)] + [(i, n + i, 1) for i in range(1, n + 1)] + [(n + i, i, 1) for i in range(1, n + 1)])
    sign = -1 if kind.family == "C" else 1
    return _matrix(2 * n, [(i, n + i, 1) for i in range(n)] + [(n + i, i, sign) for i in range(n)])


def _triple(kind: AlgebraKind, alpha: Root) -> Triple:
    size, n = kind.matrix_size, kind.rank
    support = [(k, c) for k, c in enumerate(alpha) if c != 0]
    if kind.family == "A":
        (i, _), (j, _) = support
        x = _matrix(size, [(i, j, 1)])
        y = _matrix(size, [(j, i, 1)])
        return x, y, bracket(x, y)
    shift = 1 if kind.family == "B" else 0
    e = lambda k: k + shift
    f = lambda k: n + k + shift
    if len(support) == 2 and support[1][1] == -1:
        (i, _), (j, _) = support
        x = _matrix(size, [(e(i), e(j), 1), (f(j), f(i), -1)])
        y = _matrix(size, [(e(j), e(i), 1), (f(i), f(j), -1)])
    elif len(support) == 2:
        (i, _), (j, _) = support
        s = 1 if kind.family == "C" else -1
        x = _matrix(size, [(e(i), f(j), 1), (e(j), f(i), s)])
        y = _matrix(size, [(f(j), e(i), 1), (f(i), e(j), s)])
    elif kind.family == "C":
        ((i, _),) = support
        x = _matrix(size, [(i, f(i), 1)])
        y = _matrix(size, [(f(i), i, 1)])
    else:
        ((i, _),) = support
        x = _matrix(size, [(0, f(i), 1), (e(i), 0, -1)])
        y = _matrix(size, [(f(i), 0, 2), (0, e(i), -2)])
    return x, y, bracket(x, y)


@lru_cache(maxsize=None)
def realize(kind: AlgebraKind) -> ClassicalAlgebra:
    """
    Build the matrix model of a classical algebra with all triples populated

    Args:
        kind: Validated AlgebraKind

    Returns:
        ClassicalAlgebra whose so/sp blocks make the so4 formulas
        x_{L1-L2} = E12 - E43 and x_{L1+L2} = E14 - E23 hold verbatim
    """
    logger.debug("realizing %s", kind.label)
    return ClassicalAlgebra(kind)


def realize_for(family: str, rank: int) -> ClassicalAlgebra:
    return realize(AlgebraKind.of(family, rank))


# ============================================================================
# Membership and expansion
# ============================================================================

def is_member(alg: ClassicalAlgebra, m: RationalMatrix) -> bool:
    if m.shape != (alg.matrix_size, alg.matrix_size):
        return False
    if alg.defining_form is None:
        return m.trace() == 0
    j = alg.defining_form
    return (m.T * j + j * m).is_zero_matrix


def expand_in_basis(alg: ClassicalAlgebra, m: RationalMatrix) -> Dict[BasisLabel, Rational]:
    """
    Coefficients of m over {y_α} ∪ {h_{α_i}} ∪ {x_α}

    Raises:
        NotInAlgebra: m does not belong to the algebra
    """
    if not is_member(alg, m):
        raise NotInAlgebra(f"matrix is not an element of {alg.kind.label}")
    return {alg.labels[k]: c for k, c in alg.expand_indices(m).items()}


def verify_triples(alg: ClassicalAlgebra) -> List[str]:
    """Defects in the triple table; empty when every sl2 relation holds"""
    defects: List[str] = []
    for alpha, (x, y, h) in alg.triples.items():
        if bracket(x, y) != h:
            defects.append(f"[x,y] != h for {alpha}")
        if bracket(h, x) != 2 * x or bracket(h, y) != -2 * y:
            defects.append(f"h does not act by +-2 for {alpha}")
        for matrix in (x, y, h):
            if not is_member(alg, matrix):
                defects.append(f"triple of {alpha} leaves {alg.kind.label}")
        for i, cartan in enumerate(alg.cartan_basis):
            if bracket(cartan, x) != alg.evaluate(alpha, cartan) * x:
                defects.append(f"x_{alpha} is not an eigenvector of H_{i}")
    return defects
