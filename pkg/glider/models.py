"""
Pydantic models for glider reports and command results
In-memory reports carry sympy Rationals; serialization.py turns them into strings
"""

from typing import Any, Dict, List, Literal, Optional, Tuple

from pydantic import BaseModel, ConfigDict, Field
from sympy import Rational

from .exact_linalg import Partition

RootT = Tuple[int, ...]
WeightT = Tuple[Rational, ...]


class ReportModel(BaseModel):
    model_config = ConfigDict(frozen=True, arbitrary_types_allowed=True)


# ============================================================================
# Embedding Models
# ============================================================================

class Collision(ReportModel):
    """A source root whose preimage count under restriction is not one"""
    alpha: WeightT
    betas: List[RootT]


class ConditionOneReport(ReportModel):
    holds: bool
    collisions: List[Collision] = Field(default_factory=list)


class StarData(ReportModel):
    """α ↦ α* and the positive starred roots"""
    star: Dict[RootT, RootT]
    positive_star: List[RootT]


# ============================================================================
# Glider Models
# ============================================================================

class LevelCheck(ReportModel):
    """Per-level condition results, level i joins g_i and g_{i+1}"""
    level: int
    cond1: bool
    cond2: bool
    restricted_weight: WeightT
    notes: List[str] = Field(default_factory=list)


class ContainmentCheck(ReportModel):
    level: int
    degree_bound: int
    holds: bool
    checked: int
    failures: List[str] = Field(default_factory=list)


class GliderReport(ReportModel):
    cond1_ok: List[bool]
    cond2_ok: List[bool]
    levels: List[LevelCheck]
    composition_ok: bool
    containment: List[ContainmentCheck]
    essential_length: int
    notes: List[str] = Field(default_factory=list)

    @property
    def ok(self) -> bool:
        return (
            all(self.cond1_ok)
            and all(self.cond2_ok)
            and self.composition_ok
            and all(c.holds for c in self.containment)
        )


Verdict = Literal["Irreducible", "NotIrreducible", "CriterionInapplicable"]


class Classification(ReportModel):
    verdict: Verdict
    reasons: List[str] = Field(default_factory=list)


class ObstructionReport(ReportModel):
    """
    Why λ₁ and λ₂ cannot sit together in one Verma glider

    Attributes:
        lambda_1: Weight of the smaller algebra, not dominant integral
        lambda_2: Weight of the larger algebra, dominant integral
        restricted_lambda_2: π(λ₂) in the smaller algebra
        difference: π(λ₂) − λ₁
        reason: Human-readable statement of the obstruction
    """
    lambda_1: WeightT
    lambda_2: WeightT
    restricted_lambda_2: WeightT
    difference: WeightT
    reason: str


class Witness(ReportModel):
    """Singular vector witnessing a proper subfragment"""
    level: int
    kind: Literal["top", "bottom"]
    root: RootT
    exponent: int
    description: str


# ============================================================================
# Orbit Models
# ============================================================================

class OrbitLabel(ReportModel):
    family: Literal["A", "B", "C", "D"]
    partition: Partition
    tag: Optional[Literal["I", "II"]] = None

    @property
    def total(self) -> int:
        return self.partition.total

    def sort_key(self) -> Tuple:
        """Larger partitions first, tag I before II"""
        return tuple(-d for d in self.partition.parts), self.tag or ""

    def __str__(self) -> str:
        return str(self.partition) + (self.tag or "")


class OrbitPoset(ReportModel):
    family: Literal["A", "B", "C", "D"]
    rank: int
    nodes: List[OrbitLabel]
    covers: List[Tuple[OrbitLabel, OrbitLabel]]


class ReachabilityReport(ReportModel):
    family: Literal["A", "B", "C", "D"]
    source_rank: int
    target_rank: int
    predicted: List[OrbitLabel]
    empirical: List[OrbitLabel]
    predicted_only: List[OrbitLabel]
    empirical_only: List[OrbitLabel]
    mode: str
    coefficients: List[Rational]
    samples: int

    @property
    def agrees(self) -> bool:
        return not self.predicted_only and not self.empirical_only


# ============================================================================
# Command Models
# ============================================================================

class CommandResult(BaseModel):
    """Envelope printed by every CLI command"""
    command: str
    status: Literal["ok", "error"]
    payload: Dict[str, Any] = Field(default_factory=dict)
    diagnostics: List[str] = Field(default_factory=list)
