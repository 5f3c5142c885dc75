"""
Universal enveloping algebra arithmetic over a matrix model

A PBW monomial is stored as a non-decreasing word of basis indices of the
ClassicalAlgebra (y's in root order, then the coroots h_i, then x's), which is
the normal form y^r h^s x^t. Structure constants come from expand_in_basis on
matrix commutators.
"""

import logging
from collections import defaultdict
from functools import lru_cache
from typing import Dict, Iterable, List, Optional, Sequence, Tuple

from sympy import ImmutableMatrix, Matrix, Rational

from .config import get_config
from .errors import AlgebraMismatch, NotHomogeneous
from .exact_linalg import RationalMatrix, rank
from .matrix_realization import ClassicalAlgebra, bracket
from .root_system import Weight, vadd

logger = logging.getLogger(__name__)

Word = Tuple[int, ...]
Terms = Dict[Word, Rational]


def _accumulate(into: Dict, terms: Dict, scale=1) -> None:
    for key, c in terms.items():
        value = into.get(key, 0) + scale * c
        if value == 0:
            into.pop(key, None)
        else:
            into[key] = value


# ============================================================================
# Straightening engine
# ============================================================================

class Enveloping:
    """Structure constants and memoized PBW normal forms for one algebra"""

    def __init__(self, alg: ClassicalAlgebra):
        self.alg = alg
        self._structure: Dict[Tuple[int, int], Dict[int, Rational]] = {}
        self._normal: Dict[Word, Terms] = {}
        self.cache_limit: int = get_config()["normal_form_cache_size"]
        dim = alg.sys.dim
        self.weights: List[Tuple[int, ...]] = [alg.label_weight(label) for label in alg.labels]
        self.kinds: List[str] = [label[0] for label in alg.labels]
        self.zero: Tuple[int, ...] = (0,) * dim

    def structure(self, a: int, b: int) -> Dict[int, Rational]:
        """[g_a, g_b] expanded on basis indices"""
        key = (a, b)
        if key not in self._structure:
            m = bracket(self.alg.elements[a], self.alg.elements[b])
            self._structure[key] = self.alg.expand_indices(m) if not m.is_zero_matrix else {}
        return self._structure[key]

    def normal_form(self, word: Word) -> Terms:
        """Rewrite a word into PBW normal form by uv = vu + [u, v] at the first inversion"""
        cached = self._normal.get(word)
        if cached is not None:
            return cached
        for i in range(len(word) - 1):
            if word[i] > word[i + 1]:
                break
        else:
            result = {word: Rational(1)}
            self._remember(word, result)
            return result
        a, b = word[i], word[i + 1]
        result: Terms = {}
        _accumulate(result, self.normal_form(word[:i] + (b, a) + word[i + 2:]))
        for k, c in self.structure(a, b).items():
            _accumulate(result, self.normal_form(word[:i] + (k,) + word[i + 2:]), c)
        self._remember(word, result)
        return result

    def _remember(self, word: Word, result: Terms) -> None:
        # memo is dropped wholesale once it reaches the configured size
        if len(self._normal) >= self.cache_limit:
            logger.debug("%s: clearing %d cached normal forms", self.alg.kind.label, len(self._normal))
            self._normal.clear()
        self._normal[word] = result

    def word_weight(self, word: Word) -> Tuple[int, ...]:
        total = self.zero
        for k in word:
            total = tuple(t + w for t, w in zip(total, self.weights[k]))
        return total

    def word_degree(self, word: Word) -> int:
        """Σ(t_i − r_i): number of x factors minus number of y factors"""
        return sum(1 if self.kinds[k] == "x" else -1 if self.kinds[k] == "y" else 0 for k in word)


@lru_cache(maxsize=32)
def _enveloping(alg: ClassicalAlgebra) -> Enveloping:
    return Enveloping(alg)


def enveloping(alg: ClassicalAlgebra) -> Enveloping:
    return _enveloping(alg)


def clear_caches() -> None:
    """Drop every memoized straightening engine and Verma module"""
    _enveloping.cache_clear()
    _verma_module.cache_clear()


# ============================================================================
# Elements
# ============================================================================

class UEAElement:
    """Finite rational combination of PBW monomials"""

    __slots__ = ("alg", "terms")

    def __init__(self, alg: ClassicalAlgebra, terms: Optional[Dict[Word, object]] = None):
        self.alg = alg
        self.terms: Terms = {}
        for word, c in (terms or {}).items():
            c = Rational(c)
            if c != 0:
                self.terms[tuple(word)] = c

    # ----------------------------------------------------------- constructors

    @classmethod
    def one(cls, alg: ClassicalAlgebra) -> "UEAElement":
        return cls(alg, {(): 1})

    @classmethod
    def zero(cls, alg: ClassicalAlgebra) -> "UEAElement":
        return cls(alg, {})

    @classmethod
    def generator(cls, alg: ClassicalAlgebra, label) -> "UEAElement":
        return cls(alg, {(alg.index[label],): 1})

    # -------------------------------------------------------------- arithmetic

    def _check(self, other: "UEAElement") -> None:
        if self.alg.kind != other.alg.kind:
            raise AlgebraMismatch(f"{self.alg.kind.label} element combined with {other.alg.kind.label} element")

    def __add__(self, other: "UEAElement") -> "UEAElement":
        self._check(other)
        terms = dict(self.terms)
        _accumulate(terms, other.terms)
        return UEAElement(self.alg, terms)

    def __neg__(self) -> "UEAElement":
        return UEAElement(self.alg, {w: -c for w, c in self.terms.items()})

    def __sub__(self, other: "UEAElement") -> "UEAElement":
        return self + (-other)

    def __mul__(self, other):
        if isinstance(other, UEAElement):
            return multiply(self, other)
        return UEAElement(self.alg, {w: c * Rational(other) for w, c in self.terms.items()})

    def __rmul__(self, scalar):
        return UEAElement(self.alg, {w: Rational(scalar) * c for w, c in self.terms.items()})

    def __pow__(self, n: int) -> "UEAElement":
        if n < 0:
            raise ValueError("negative powers are not defined in U(g)")
        result = UEAElement.one(self.alg)
        for _ in range(n):
            result = multiply(result, self)
        return result

    def __eq__(self, other) -> bool:
        if not isinstance(other, UEAElement):
            return NotImplemented
        return self.alg.kind == other.alg.kind and self.terms == other.terms

    def __hash__(self) -> int:
        return hash((self.alg.kind, frozenset(self.terms.items())))

    def is_zero(self) -> bool:
        return not self.terms

    def is_y_only(self) -> bool:
        env = enveloping(self.alg)
        return all(env.kinds[k] == "y" for word in self.terms for k in word)

    def exponents(self) -> List[Tuple[Dict, Rational]]:
        """Terms as ({"y": [...], "h": [...], "x": [...]}, coefficient)"""
        return [(word_exponents(self.alg, w), c) for w, c in sorted(self.terms.items())]

    def __repr__(self) -> str:
        if not self.terms:
            return "0"
        parts = []
        for word, c in sorted(self.terms.items()):
            factors = "".join(_factor_name(self.alg, k) for k in word) or "1"
            parts.append(f"{c}*{factors}")
        return " + ".join(parts)


def _factor_name(alg: ClassicalAlgebra, k: int) -> str:
    kind, key = alg.labels[k]
    return f"{kind}{list(key)}" if kind != "h" else f"h{key}"


def word_exponents(alg: ClassicalAlgebra, word: Word) -> Dict[str, List[int]]:
    roots = len(alg.sys.positive_roots)
    counts = [0] * alg.dimension
    for k in word:
        counts[k] += 1
    return {"y": counts[:roots], "h": counts[roots:roots + alg.sys.rank], "x": counts[roots + alg.sys.rank:]}


def from_exponents(alg: ClassicalAlgebra, terms: Iterable[Tuple[Dict[str, Sequence[int]], object]]) -> UEAElement:
    """Inverse of UEAElement.exponents"""
    result = {}
    for exps, c in terms:
        counts = list(exps.get("y", [])) + list(exps.get("h", [])) + list(exps.get("x", []))
        counts += [0] * (alg.dimension - len(counts))
        if len(counts) != alg.dimension:
            raise AlgebraMismatch(f"exponent vector of length {len(counts)} for {alg.kind.label}")
        word = tuple(k for k, e in enumerate(counts) for _ in range(int(e)))
        result[word] = result.get(word, 0) + Rational(c)
    return UEAElement(alg, result)


def y_power(alg: ClassicalAlgebra, root: Sequence[int], power: int = 1) -> UEAElement:
    return UEAElement(alg, {(alg.index[("y", tuple(root))],) * power: 1})


def y_monomial(alg: ClassicalAlgebra, factors: Sequence[Tuple[Sequence[int], int]]) -> UEAElement:
    """Product of y_root^exponent in the given order, normalized"""
    result = UEAElement.one(alg)
    for root, power in factors:
        result = multiply(result, y_power(alg, root, power))
    return result


def lie_element(alg: ClassicalAlgebra, m: RationalMatrix) -> UEAElement:
    """A matrix of the algebra viewed as a degree-one element of U(g)"""
    return UEAElement(alg, {(k,): c for k, c in alg.expand_indices(m).items()})


# ============================================================================
# Operations
# ============================================================================

def multiply(a: UEAElement, b: UEAElement) -> UEAElement:
    """
    Product in PBW normal form

    Raises:
        AlgebraMismatch: operands live in different algebras
    """
    a._check(b)
    env = enveloping(a.alg)
    result: Terms = {}
    for wa, ca in a.terms.items():
        for wb, cb in b.terms.items():
            _accumulate(result, env.normal_form(wa + wb), ca * cb)
    return UEAElement(a.alg, result)


def weight_of(z: UEAElement) -> Tuple[int, ...]:
    """
    Common weight Σ(t_i − r_i)α_i of the monomials of z, in L-coordinates

    Raises:
        NotHomogeneous: monomials of z have different weights
    """
    env = enveloping(z.alg)
    weights = {env.word_weight(w) for w in z.terms}
    if len(weights) > 1:
        raise NotHomogeneous(f"element has monomials of weights {sorted(weights)}")
    return weights.pop() if weights else env.zero


def degree_components(z: UEAElement) -> Dict[int, UEAElement]:
    """Split z by PBW degree Σ(t_i − r_i)"""
    env = enveloping(z.alg)
    parts: Dict[int, Terms] = defaultdict(dict)
    for w, c in z.terms.items():
        parts[env.word_degree(w)][w] = c
    return {d: UEAElement(z.alg, t) for d, t in sorted(parts.items())}


def ad_generator(x, z: UEAElement) -> UEAElement:
    """xz − zx for a Lie element x given as a matrix or a degree-one UEAElement"""
    if not isinstance(x, UEAElement):
        x = lie_element(z.alg, x)
    return multiply(x, z) - multiply(z, x)


def in_centralizer(z: UEAElement, e) -> bool:
    """True iff z commutes with the image of every simple root vector of the source"""
    if z.alg.kind != e.target.kind:
        raise AlgebraMismatch(f"element of {z.alg.kind.label}, embedding into {e.target.kind.label}")
    for alpha in e.source.sys.simple_roots:
        if not ad_generator(e.generator_images[alpha][0], z).is_zero():
            return False
    return True


def push_forward(e, z: UEAElement) -> UEAElement:
    """Image of a source element in the target enveloping algebra"""
    if z.alg.kind != e.source.kind:
        raise AlgebraMismatch(f"element of {z.alg.kind.label}, embedding from {e.source.kind.label}")
    images = [lie_element(e.target, e.image_of(label)) for label in e.source.labels]
    result = UEAElement.zero(e.target)
    for word, c in z.terms.items():
        product = UEAElement.one(e.target)
        for k in word:
            product = multiply(product, images[k])
        result = result + c * product
    return result


# ============================================================================
# Verma modules
# ============================================================================

class VermaModule:
    """M(λ) with basis the y-only PBW words applied to v⁺"""

    def __init__(self, alg: ClassicalAlgebra, lam: Weight):
        self.alg = alg
        self.lam: Weight = alg.sys.canonical(lam)
        self.env = enveloping(alg)
        self._cache: Dict[Tuple[int, Word], Terms] = {}

    def vector_weight(self, word: Word) -> Weight:
        return self.alg.sys.canonical(vadd(self.lam, self.env.word_weight(word)))

    def act_basis(self, k: int, word: Word) -> Terms:
        """g_k · (word v⁺) expanded on y-words"""
        key = (k, word)
        cached = self._cache.get(key)
        if cached is not None:
            return cached
        kind = self.env.kinds[k]
        if kind == "y":
            result = dict(self.env.normal_form((k,) + word))
        elif kind == "h":
            scalar = self.alg.evaluate(self.vector_weight(word), self.alg.elements[k])
            result = {word: scalar} if scalar != 0 else {}
        elif not word:
            result = {}
        else:
            # x y₁·rest = y₁ (x·rest) + [x, y₁]·rest
            first, rest = word[0], word[1:]
            result = {}
            for w, c in self.act_basis(k, rest).items():
                _accumulate(result, self.act_basis(first, w), c)
            for j, c in self.env.structure(k, first).items():
                _accumulate(result, self.act_basis(j, rest), c)
        self._cache[key] = result
        return result

    def act_word(self, word: Word, terms: Terms) -> Terms:
        current = terms
        for k in reversed(word):
            step: Terms = {}
            for w, c in current.items():
                _accumulate(step, self.act_basis(k, w), c)
            current = step
            if not current:
                break
        return current

    def act(self, u: UEAElement, terms: Terms) -> Terms:
        result: Terms = {}
        for word, c in u.terms.items():
            _accumulate(result, self.act_word(word, terms), c)
        return result


@lru_cache(maxsize=256)
def _verma_module(alg: ClassicalAlgebra, lam: Weight) -> VermaModule:
    return VermaModule(alg, lam)


def verma_module(alg: ClassicalAlgebra, lam: Sequence) -> VermaModule:
    return _verma_module(alg, alg.sys.canonical(lam))


class VermaVector:
    """Element of M(λ) stored as y-word coordinates"""

    __slots__ = ("module", "terms")

    def __init__(self, module: VermaModule, terms: Optional[Terms] = None):
        self.module = module
        self.terms: Terms = {w: Rational(c) for w, c in (terms or {}).items() if c != 0}

    @classmethod
    def highest(cls, alg: ClassicalAlgebra, lam: Sequence) -> "VermaVector":
        return cls(verma_module(alg, lam), {(): 1})

    @property
    def highest_weight(self) -> Weight:
        return self.module.lam

    @property
    def element(self) -> UEAElement:
        return UEAElement(self.module.alg, self.terms)

    def is_zero(self) -> bool:
        return not self.terms

    def weight(self) -> Weight:
        weights = {self.module.vector_weight(w) for w in self.terms}
        if len(weights) > 1:
            raise NotHomogeneous("Verma vector is not a weight vector")
        return weights.pop() if weights else self.module.lam

    def __add__(self, other: "VermaVector") -> "VermaVector":
        terms = dict(self.terms)
        _accumulate(terms, other.terms)
        return VermaVector(self.module, terms)

    def __eq__(self, other) -> bool:
        if not isinstance(other, VermaVector):
            return NotImplemented
        return self.module.lam == other.module.lam and self.module.alg.kind == other.module.alg.kind and self.terms == other.terms

    def __repr__(self) -> str:
        return f"({UEAElement(self.module.alg, self.terms)!r}) v+"


def verma_act(u: UEAElement, v: VermaVector) -> VermaVector:
    """
    u·v in M(λ)

    Raises:
        AlgebraMismatch: u and v live over different algebras
    """
    if u.alg.kind != v.module.alg.kind:
        raise AlgebraMismatch(f"{u.alg.kind.label} element acting on a {v.module.alg.kind.label} Verma module")
    return VermaVector(v.module, v.module.act(u, v.terms))


def annihilates_highest(z: UEAElement, lam: Sequence, e) -> bool:
    """True iff every embedded simple root vector kills z·v⁺ in M(λ) over the target"""
    v = verma_act(z, VermaVector.highest(e.target, lam))
    for alpha in e.source.sys.simple_roots:
        x = lie_element(e.target, e.generator_images[alpha][0])
        if not verma_act(x, v).is_zero():
            return False
    return True


# ============================================================================
# Span membership
# ============================================================================

def subalgebra_elements(alg: ClassicalAlgebra, e=None, lowering_only: bool = False) -> List[UEAElement]:
    """
    Root vectors spanning the acting algebra, as degree-one elements

    Without an embedding the whole algebra acts; with one, the images of the
    source root vectors act. Cartan elements are left out since they act on
    weight vectors by scalars. lowering_only keeps the y part (U(n⁻) action).
    """
    kinds = {"y"} if lowering_only else {"x", "y"}
    if e is None:
        return [UEAElement.generator(alg, label) for label in alg.labels if label[0] in kinds]
    if e.target.kind != alg.kind:
        raise AlgebraMismatch(f"embedding into {e.target.kind.label}, module over {alg.kind.label}")
    return [lie_element(alg, e.image_of(label)) for label in e.source.labels if label[0] in kinds]


class _WeightSpace:
    """Independent vectors of one weight space, kept as matrix columns"""

    def __init__(self):
        self.keys: Dict[Word, int] = {}
        self.vectors: List[Terms] = []

    def _matrix(self, extra: Optional[Terms] = None) -> ImmutableMatrix:
        vectors = self.vectors + ([extra] if extra is not None else [])
        for v in vectors:
            for w in v:
                self.keys.setdefault(w, len(self.keys))
        m = Matrix.zeros(max(len(self.keys), 1), len(vectors))
        for j, v in enumerate(vectors):
            for w, c in v.items():
                m[self.keys[w], j] = c
        return ImmutableMatrix(m)

    def add(self, v: Terms) -> bool:
        if not v:
            return False
        if rank(self._matrix(v)) > len(self.vectors):
            self.vectors.append(v)
            return True
        return False

    def contains(self, v: Terms) -> bool:
        if not v:
            return True
        if not self.vectors:
            return False
        return rank(self._matrix(v)) == len(self.vectors)


def graded_membership(
    target: VermaVector,
    generators: Sequence[VermaVector],
    action: Sequence[UEAElement],
    degree_bound: int,
) -> bool:
    """
    Is target in the span of U_{≤degree_bound}(action)·generators?

    Works breadth first: level d holds the new independent vectors reached by
    exactly d action factors, grouped by weight. Branches that cannot get back
    to the target weight within the remaining steps are pruned.

    Args:
        target: Weight vector of M(λ)
        generators: Weight vectors of the same M(λ)
        action: Degree-one weight vectors spanning the acting Lie algebra
        degree_bound: Maximal number of action factors

    Raises:
        NotHomogeneous: target, a generator or an action element is not a weight vector
    """
    if target.is_zero():
        return True
    module = target.module
    sys = module.alg.sys
    goal = target.weight()
    steps = [(a, weight_of(a)) for a in action if not a.is_zero()]
    reach = max((abs(sys.height(w)) for _, w in steps), default=0)
    spaces: Dict[Weight, _WeightSpace] = defaultdict(_WeightSpace)

    def distance(w: Weight) -> Rational:
        return abs(sys.height(tuple(a - b for a, b in zip(w, goal))))

    frontier: List[Tuple[Weight, Terms]] = []
    for g in generators:
        if g.module.lam != module.lam:
            raise AlgebraMismatch("generators live in a different Verma module")
        if g.is_zero():
            continue
        w = g.weight()
        if spaces[w].add(g.terms):
            frontier.append((w, g.terms))
    if spaces[goal].contains(target.terms):
        return True
    for level in range(1, degree_bound + 1):
        remaining = degree_bound - level
        next_frontier: List[Tuple[Weight, Terms]] = []
        for w, v in frontier:
            for a, shift in steps:
                new_weight = sys.canonical(vadd(w, shift))
                if distance(new_weight) > reach * remaining:
                    continue
                image = module.act(a, v)
                if image and spaces[new_weight].add(image):
                    next_frontier.append((new_weight, image))
        logger.debug("graded membership level %d: %d new vectors", level, len(next_frontier))
        if spaces[goal].contains(target.terms):
            return True
        if not next_frontier:
            return False
        frontier = next_frontier
    return False
