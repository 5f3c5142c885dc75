"""
Verma gliders over a chain g_1 ⊂ … ⊂ g_n

A spec fixes highest weights λ_1 … λ_n and y-only elements z_1 … z_{n−1} with
z_i ∈ U(g_{i+1}). The glider is M = U(g_n)v⁺ ⊃ U(g_{n−1})z_{n−1}v⁺ ⊃ … inside
M(λ_n); this module verifies the defining conditions level by level, runs
containment spot checks, classifies irreducibility and searches for singular
vectors that witness a proper subfragment.

Indexing: algebras[0] is g_1, embeddings[i] is g_{i+1} ⊂ g_{i+2},
monomials[i] is z_{i+1} and weights[i] is λ_{i+1}. Reported levels are 1-based.
"""

import logging
from typing import Dict, List, Optional, Sequence

from pydantic import BaseModel, ConfigDict, Field, field_validator
from sympy import Rational

from .config import get_config
from .embedding import Embedding, canonical_embedding, check_condition_one, compose, star_map
from .errors import AlgebraMismatch, ConditionOneFails, DimensionMismatch, RankOrder
from .matrix_realization import ClassicalAlgebra, realize
from .models import (
    Classification,
    ContainmentCheck,
    GliderReport,
    LevelCheck,
    ObstructionReport,
    Witness,
)
from .root_system import (
    AlgebraKind,
    Root,
    RootSystem,
    Weight,
    dot_action,
    is_antidominant,
    is_dominant_integral,
    is_integer,
    pairing,
    vadd,
    vsub,
    weight_leq,
)
from .uea import (
    UEAElement,
    VermaVector,
    annihilates_highest,
    graded_membership,
    lie_element,
    push_forward,
    subalgebra_elements,
    verma_act,
    weight_of,
    y_power,
)

logger = logging.getLogger(__name__)


# ============================================================================
# Specs
# ============================================================================

class ChainSpec(BaseModel):
    """
    Chain of same-family algebras joined by consecutive embeddings

    Attributes:
        algebras: Matrix models g_1 … g_n, strictly increasing ranks
        embeddings: embeddings[i] joins algebras[i] and algebras[i+1]
    """
    model_config = ConfigDict(arbitrary_types_allowed=True)

    algebras: List[ClassicalAlgebra]
    embeddings: List[Embedding]

    @property
    def length(self) -> int:
        return len(self.algebras)

    @property
    def top(self) -> ClassicalAlgebra:
        return self.algebras[-1]

    def validate_chain(self) -> None:
        """
        Raises:
            DimensionMismatch: wrong number of embeddings
            AlgebraMismatch: an embedding does not join its neighbours
            ConditionOneFails: an embedding breaks condition (1)
        """
        if len(self.embeddings) != len(self.algebras) - 1:
            raise DimensionMismatch(
                f"{len(self.algebras)} algebras need {len(self.algebras) - 1} embeddings, got {len(self.embeddings)}"
            )
        for i, e in enumerate(self.embeddings):
            if e.source.kind != self.algebras[i].kind or e.target.kind != self.algebras[i + 1].kind:
                raise AlgebraMismatch(f"embedding {i + 1} is {e.name}, expected "
                                      f"{self.algebras[i].kind.label} in {self.algebras[i + 1].kind.label}")
            report = check_condition_one(e)
            if not report.holds:
                raise ConditionOneFails(f"{e.name}: condition (1) fails at {len(report.collisions)} roots")

    def into_top(self) -> List[Optional[Embedding]]:
        """Composite embedding of each algebra into g_n, None for g_n itself"""
        composites: List[Optional[Embedding]] = [None] * self.length
        current: Optional[Embedding] = None
        for i in range(self.length - 2, -1, -1):
            current = self.embeddings[i] if current is None else compose(self.embeddings[i], current)
            composites[i] = current
        return composites


def chain_from_kinds(family: str, ranks: Sequence[int], anchor: str = "head") -> ChainSpec:
    """
    Chain of canonical embeddings through the given ranks

    Raises:
        InvalidRank, RankOrder, FamilyMismatch
    """
    kinds = [AlgebraKind.of(family, r) for r in ranks]
    if not kinds:
        raise RankOrder("a chain needs at least one algebra")
    for low, high in zip(kinds, kinds[1:]):
        if low.rank >= high.rank:
            raise RankOrder(f"ranks must increase strictly, got {list(ranks)}")
    embeddings = [canonical_embedding(low, high, anchor) for low, high in zip(kinds, kinds[1:])]
    chain = ChainSpec(algebras=[realize(k) for k in kinds], embeddings=embeddings)
    chain.validate_chain()
    return chain


class VermaGliderSpec(BaseModel):
    """
    Weights and monomials of a Verma glider

    Attributes:
        chain: The chain g_1 ⊂ … ⊂ g_n
        weights: λ_1 … λ_n in L-coordinates of each level
        monomials: z_1 … z_{n−1}, z_i ∈ U(g_{i+1})
        extra_generators: optional extra generators of M_μ, as elements of U(g_n) applied to v⁺
        name: label used in reports
    """
    model_config = ConfigDict(arbitrary_types_allowed=True)

    chain: ChainSpec
    weights: List[Weight]
    monomials: List[UEAElement]
    extra_generators: Dict[int, List[UEAElement]] = Field(default_factory=dict)
    name: str = ""

    @field_validator("weights", mode="before")
    @classmethod
    def _rational_weights(cls, value):
        return [tuple(Rational(c) for c in lam) for lam in value]

    def validate_spec(self) -> None:
        """
        Raises:
            DimensionMismatch: wrong number or length of weights or monomials
            AlgebraMismatch: a monomial or extra generator lives on the wrong algebra
        """
        self.chain.validate_chain()
        n = self.chain.length
        if len(self.weights) != n:
            raise DimensionMismatch(f"expected {n} weights, got {len(self.weights)}")
        if len(self.monomials) != n - 1:
            raise DimensionMismatch(f"expected {n - 1} monomials, got {len(self.monomials)}")
        for i, (lam, alg) in enumerate(zip(self.weights, self.chain.algebras)):
            if len(lam) != alg.sys.dim:
                raise DimensionMismatch(f"λ_{i + 1} has {len(lam)} coordinates, {alg.kind.label} needs {alg.sys.dim}")
        for i, z in enumerate(self.monomials):
            expected = self.chain.algebras[i + 1].kind
            if z.alg.kind != expected:
                raise AlgebraMismatch(f"z_{i + 1} lives in U({z.alg.kind.label}), expected U({expected.label})")
        for level, extras in self.extra_generators.items():
            if not 1 <= level <= n - 1:
                raise DimensionMismatch(f"extra generators given for level {level}, valid levels are 1..{n - 1}")
            for u in extras:
                if u.alg.kind != self.chain.top.kind:
                    raise AlgebraMismatch(f"extra generator lives in U({u.alg.kind.label}), expected U({self.chain.top.kind.label})")


# ============================================================================
# Conditions
# ============================================================================

def solve_lambda_down(lam_up: Sequence, z: UEAElement, e: Embedding) -> Weight:
    """
    λ_down = π(λ_up + wt(z)), the only weight cond1 allows below λ_up

    Raises:
        NotHomogeneous: z is not a weight vector
    """
    return e.restrict(vadd(lam_up, weight_of(z)))


def _single_coefficient(z: UEAElement):
    if len(z.terms) == 1:
        return next(iter(z.terms.values()))
    return None


def _level_generator(spec: VermaGliderSpec, composites, level: int) -> VermaVector:
    """w_μ = z_{n−μ} ⋯ z_{n−1} v⁺ in M(λ_n), pushed into U(g_n)"""
    n = spec.chain.length
    top = spec.chain.top
    product = UEAElement.one(top)
    for i in range(n - 1 - level, n - 1):
        z = spec.monomials[i]
        pushed = z if composites[i + 1] is None else push_forward(composites[i + 1], z)
        product = product * pushed
    return verma_act(product, VermaVector.highest(top, spec.weights[-1]))


def _action(spec: VermaGliderSpec, composites, index: int) -> List[UEAElement]:
    """Root vectors of algebras[index] acting on M(λ_n)"""
    return subalgebra_elements(spec.chain.top, composites[index])


def _check_composition(spec: VermaGliderSpec, composites, notes: List[str]) -> bool:
    n = spec.chain.length
    top = spec.chain.top
    lam_top = spec.weights[-1]
    ok = True
    for i, z in enumerate(spec.monomials):
        c = _single_coefficient(z)
        if c is not None and c != 1:
            notes.append(f"z_{i + 1} is a single monomial with coefficient {c}, expected 1")
            ok = False
    for i in range(n - 1):
        e = composites[i]
        level = n - 1 - i
        w = _level_generator(spec, composites, level)
        if w.is_zero():
            notes.append(f"generator of level {level} vanishes")
            ok = False
            continue
        product_weight = vsub(w.weight(), w.highest_weight)
        restricted = e.restrict(vadd(lam_top, product_weight))
        if restricted != e.source.sys.canonical(spec.weights[i]):
            notes.append(f"product down to g_{i + 1} restricts to {restricted}, not λ_{i + 1}")
            ok = False
        for alpha in e.source.sys.simple_roots:
            x = lie_element(top, e.generator_images[alpha][0])
            if not verma_act(x, w).is_zero():
                notes.append(f"x_{alpha} of g_{i + 1} does not kill the level {level} generator")
                ok = False
    return ok


def _check_containment(spec: VermaGliderSpec, composites, degree_bound: int) -> List[ContainmentCheck]:
    """
    Spot checks F_j·M_μ ⊆ M_{μ−j} with F_j = U(g_{j+1})

    Only degree-one elements of F_j are applied: the root vectors of g_{j+1}
    generate U(g_{j+1}) as an algebra, and M_{μ−j} is a module over an algebra
    containing g_{j+1}, so closure under longer words follows. degree_bound
    caps the PBW degree searched when deciding membership in M_{μ−j}.
    """
    n = spec.chain.length
    top = spec.chain.top
    highest = VermaVector.highest(top, spec.weights[-1])
    generators: Dict[int, List[VermaVector]] = {0: [highest]}
    for level in range(1, n):
        own = [_level_generator(spec, composites, level)]
        own += [verma_act(u, highest) for u in spec.extra_generators.get(level, [])]
        generators[level] = [g for g in own if not g.is_zero()]
    checks = []
    for level in range(1, n):
        failures: List[str] = []
        checked = 0
        for j in range(1, level + 1):
            lower = level - j
            action = _action(spec, composites, n - 1 - lower)
            filtration = _action(spec, composites, j)
            for g in generators[level]:
                candidates = [g] + [verma_act(a, g) for a in filtration]
                for v in candidates:
                    if v.is_zero():
                        continue
                    checked += 1
                    # M_0 is all of M(λ_n)
                    if lower == 0:
                        continue
                    if not graded_membership(v, generators[lower], action, degree_bound):
                        failures.append(f"F_{j}·M_{level} leaves M_{lower} within degree {degree_bound}")
                        break
                if failures:
                    break
        checks.append(ContainmentCheck(
            level=level, degree_bound=degree_bound, holds=not failures, checked=checked, failures=failures,
        ))
        if failures:
            logger.info("containment fails at level %d: %s", level, failures[0])
    return checks


def verify_glider(spec: VermaGliderSpec, degree_bound: Optional[int] = None) -> GliderReport:
    """
    Check cond1 and cond2 at every level, composition of the z's and bounded containments

    Args:
        spec: Glider spec
        degree_bound: Bound for the containment spot checks (config default when None)

    Returns:
        GliderReport; failures are report fields, never exceptions

    Raises:
        DimensionMismatch, AlgebraMismatch, ConditionOneFails: malformed spec
    """
    spec.validate_spec()
    bound = get_config(degree_bound=degree_bound)["degree_bound"]
    chain = spec.chain
    n = chain.length
    levels: List[LevelCheck] = []
    for i, e in enumerate(chain.embeddings):
        lam_up, lam_down, z = spec.weights[i + 1], spec.weights[i], spec.monomials[i]
        notes = []
        if not z.is_y_only():
            notes.append(f"z_{i + 1} contains non-lowering factors")
        restricted = solve_lambda_down(lam_up, z, e)
        cond1 = restricted == e.source.sys.canonical(lam_down)
        cond2 = annihilates_highest(z, lam_up, e)
        if not cond1:
            notes.append(f"π(λ_{i + 2} + wt z_{i + 1}) = {restricted}, λ_{i + 1} = {e.source.sys.canonical(lam_down)}")
        if not cond2:
            notes.append(f"image of n⁺ of g_{i + 1} does not kill z_{i + 1}v⁺")
        levels.append(LevelCheck(level=i + 1, cond1=cond1, cond2=cond2, restricted_weight=restricted, notes=notes))

    report_notes: List[str] = []
    composites = chain.into_top()
    conditions_hold = all(c.cond1 and c.cond2 for c in levels)
    composition_ok = _check_composition(spec, composites, report_notes) if n > 1 else True
    containment = _check_containment(spec, composites, bound) if conditions_hold else []
    if not conditions_hold:
        report_notes.append("containment checks skipped: a level condition fails")

    essential = 0
    for check in reversed(levels):
        if not (check.cond1 and check.cond2):
            break
        essential += 1
    if not (composition_ok and all(c.holds for c in containment)):
        essential = min(essential, n - 2) if n > 1 else 0
    logger.info("glider %s: %d of %d levels verified", spec.name or chain.top.kind.label, essential, n - 1)
    return GliderReport(
        cond1_ok=[c.cond1 for c in levels],
        cond2_ok=[c.cond2 for c in levels],
        levels=levels,
        composition_ok=composition_ok,
        containment=containment,
        essential_length=essential,
        notes=report_notes,
    )


# ============================================================================
# Irreducibility
# ============================================================================

def _additional_simple_root(e: Embedding) -> Optional[Root]:
    starred = {star_map(e).star[a] for a in e.source.sys.simple_roots}
    extra = [b for b in e.target.sys.simple_roots if b not in starred]
    return extra[0] if len(extra) == 1 else None


def _power_of(z: UEAElement, root: Root) -> Optional[int]:
    """k with z = y_root^k, or None"""
    if len(z.terms) != 1:
        return None
    word, c = next(iter(z.terms.items()))
    if c != 1:
        return None
    k = z.alg.index[("y", root)]
    if any(letter != k for letter in word):
        return None
    return len(word)


def classify_irreducible(spec: VermaGliderSpec) -> Classification:
    """
    Irreducibility verdict for a verified spec

    Branch (a): every z is 1, verdict by antidominance of λ_1.
    Branch (b): families A, B, D, rank steps of one, λ_2 … λ_n dominant integral and
    z_i = y_{α_i}^{k_i} for the unique added simple root α_i; irreducible iff λ_1
    is antidominant and every k_i < ⟨λ_{i+1}, α_i∨⟩.
    Anything else is CriterionInapplicable.
    """
    spec.validate_spec()
    chain = spec.chain
    first = chain.algebras[0].sys
    reasons: List[str] = []
    for i, e in enumerate(chain.embeddings):
        if solve_lambda_down(spec.weights[i + 1], spec.monomials[i], e) != e.source.sys.canonical(spec.weights[i]):
            reasons.append(f"cond1 fails at level {i + 1}")
        if not annihilates_highest(spec.monomials[i], spec.weights[i + 1], e):
            reasons.append(f"cond2 fails at level {i + 1}")
    if reasons:
        return Classification(verdict="CriterionInapplicable", reasons=reasons)

    antidominant = is_antidominant(spec.weights[0], first)
    if all(z == UEAElement.one(z.alg) for z in spec.monomials):
        reasons.append("all z are 1")
        reasons.append("λ_1 is antidominant" if antidominant else "λ_1 is not antidominant")
        return Classification(verdict="Irreducible" if antidominant else "NotIrreducible", reasons=reasons)

    family = chain.top.kind.family
    if family not in ("A", "B", "D"):
        return Classification(verdict="CriterionInapplicable", reasons=[f"family {family} is outside A, B, D"])
    for i, e in enumerate(chain.embeddings):
        if e.target.kind.rank - e.source.kind.rank != 1:
            return Classification(verdict="CriterionInapplicable", reasons=[f"rank step at level {i + 1} is not one"])
    for i in range(1, chain.length):
        if not is_dominant_integral(spec.weights[i], chain.algebras[i].sys):
            return Classification(
                verdict="CriterionInapplicable", reasons=[f"λ_{i + 1} is not dominant integral"],
            )

    verdict_ok = antidominant
    reasons.append("λ_1 is antidominant" if antidominant else "λ_1 is not antidominant")
    for i, e in enumerate(chain.embeddings):
        alpha = _additional_simple_root(e)
        k = _power_of(spec.monomials[i], alpha) if alpha is not None else None
        if k is None:
            return Classification(
                verdict="CriterionInapplicable",
                reasons=[f"z_{i + 1} is not a power of the added simple root"],
            )
        m = pairing(spec.weights[i + 1], alpha)
        if k < m:
            reasons.append(f"k_{i + 1} = {k} < {m}")
        else:
            reasons.append(f"k_{i + 1} = {k} ≥ {m}")
            verdict_ok = False
    return Classification(verdict="Irreducible" if verdict_ok else "NotIrreducible", reasons=reasons)


def subfragment_witness(spec: VermaGliderSpec, degree_bound: Optional[int] = None) -> List[Witness]:
    """
    Singular vectors showing that a level is reducible

    A top witness is y_α^k v⁺ in M(λ_{i+1}) with k = ⟨λ_{i+1}+ρ, α∨⟩ a positive
    integer, reached from z_i v⁺ under g_{i+1}. A bottom witness is
    y_{β*}^k z_i v⁺ killed by the image of n⁺ of g_i, k = ⟨λ_i+ρ, β∨⟩.
    An empty result certifies nothing.
    """
    spec.validate_spec()
    bound = get_config(witness_degree_bound=degree_bound)["witness_degree_bound"]
    found: List[Witness] = []
    for i, e in enumerate(spec.chain.embeddings):
        upper, lower = e.target, e.source
        lam_up, lam_down, z = spec.weights[i + 1], spec.weights[i], spec.monomials[i]
        v = VermaVector.highest(upper, lam_up)
        zv = verma_act(z, v)
        raising = [lie_element(upper, upper.x(a)) for a in upper.sys.simple_roots]
        action = subalgebra_elements(upper)
        for alpha in upper.sys.simple_roots:
            k = pairing(vadd(lam_up, upper.sys.rho), alpha)
            if not (is_integer(k) and 0 < k <= bound):
                continue
            candidate = verma_act(y_power(upper, alpha, int(k)), v)
            if any(not verma_act(x, candidate).is_zero() for x in raising):
                continue
            if graded_membership(candidate, [zv], action, bound):
                found.append(Witness(
                    level=i + 1, kind="top", root=alpha, exponent=int(k),
                    description=f"y_{alpha}^{int(k)} v⁺ is singular and lies in U({upper.kind.label}) z_{i + 1} v⁺",
                ))
        star = star_map(e).star
        embedded = [lie_element(upper, e.generator_images[b][0]) for b in lower.sys.simple_roots]
        for beta in lower.sys.simple_roots:
            k = pairing(vadd(lam_down, lower.sys.rho), beta)
            if not (is_integer(k) and 0 < k <= bound):
                continue
            candidate = verma_act(y_power(upper, star[beta], int(k)), zv)
            if candidate.is_zero() or any(not verma_act(x, candidate).is_zero() for x in embedded):
                continue
            found.append(Witness(
                level=i + 1, kind="bottom", root=star[beta], exponent=int(k),
                description=f"y_{star[beta]}^{int(k)} z_{i + 1} v⁺ is {lower.kind.label}-singular",
            ))
    logger.info("found %d subfragment witnesses", len(found))
    return found


def domint_obstruction(lam_1: Sequence, lam_2: Sequence, e: Embedding) -> Optional[ObstructionReport]:
    """
    λ_2 dominant integral with λ_1 not: M(λ_1) sits in the maximal submodule N(λ_2)
    and the glider is never irreducible
    """
    src, tgt = e.source.sys, e.target.sys
    if not is_dominant_integral(lam_2, tgt) or is_dominant_integral(lam_1, src):
        return None
    restricted = e.restrict(lam_2)
    lam_1 = src.canonical(lam_1)
    return ObstructionReport(
        lambda_1=lam_1,
        lambda_2=tgt.canonical(lam_2),
        restricted_lambda_2=restricted,
        difference=src.canonical(vsub(restricted, lam_1)),
        reason=f"λ_2 is dominant integral on {e.target.kind.label} and λ_1 is not on {e.source.kind.label}; "
               "M_1 lies in N(λ_2), so the glider is never irreducible",
    )


def verma_embedding_exists(mu: Sequence, lam: Sequence, sys: RootSystem) -> bool:
    """M(μ) ⊂ M(λ) via a single reflection s_α·λ = μ ≤ λ, or μ = λ"""
    mu = sys.canonical(mu)
    if mu == sys.canonical(lam):
        return True
    for alpha in sys.positive_roots:
        if dot_action(alpha, lam, sys) == mu and weight_leq(mu, lam, sys):
            return True
    return False
