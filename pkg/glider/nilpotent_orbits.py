"""
Nilpotent orbits of the classical algebras, labelled by partitions

Covers the admissible-partition classification, dominance Hasse diagrams
(networkx, DOT through graphviz), representatives built from positive root
vectors, images under canonical embeddings, and the reachability question:
which orbits meet the span of the embedding elements. The closed-form answer
is reachable_orbits_predicted; reachable_orbits_empirical enumerates
coefficient vectors over the embedding-element matrices.
"""

import itertools
import logging
from concurrent.futures import ProcessPoolExecutor
from typing import Dict, Iterable, Iterator, List, Optional, Sequence, Set, Tuple

import networkx as nx
import numpy as np
from graphviz import Digraph
from sympy import ImmutableMatrix, Rational, zeros
from sympy.utilities.iterables import partitions

from .config import get_config
from .embedding import Embedding, canonical_for, embedding_elements
from .errors import FamilyMismatch, InadmissibleLabel, RankOrder
from .exact_linalg import (
    Partition,
    RationalMatrix,
    column,
    column_space,
    direct_sum,
    intersection_dimension,
    jordan_block,
    jordan_partition,
    kernel_image_intersection,
    unit,
)
from .matrix_realization import ClassicalAlgebra, realize_for
from .models import OrbitLabel, OrbitPoset, ReachabilityReport
from .root_system import AlgebraKind

logger = logging.getLogger(__name__)

TAGS = ("I", "II")


# ============================================================================
# Classification
# ============================================================================

def partition_total(family: str, rank: int) -> int:
    """Size N of the defining representation, the number partitioned"""
    return AlgebraKind.of(family, rank).matrix_size


def is_very_even(p: Partition) -> bool:
    return bool(p.parts) and all(d % 2 == 0 and i % 2 == 0 for d, i in p.multiplicities())


def is_admissible(family: str, p: Partition) -> bool:
    """B, D: even parts with even multiplicity. C: odd parts with even multiplicity."""
    family = family.upper()
    if family == "A":
        return True
    bad_parity = 0 if family in ("B", "D") else 1
    return all(i % 2 == 0 for d, i in p.multiplicities() if d % 2 == bad_parity)


def partitions_of(total: int) -> Iterator[Partition]:
    if total == 0:
        yield Partition(parts=())
        return
    for counts in partitions(total):
        yield Partition(parts=[d for d, i in counts.items() for _ in range(i)])


def orbit_labels(family: str, rank: int) -> List[OrbitLabel]:
    """All orbit labels, very even type-D partitions doubled"""
    kind = AlgebraKind.of(family, rank)
    labels = []
    for p in partitions_of(kind.matrix_size):
        if not is_admissible(kind.family, p):
            continue
        if kind.family == "D" and is_very_even(p):
            labels.extend(OrbitLabel(family=kind.family, partition=p, tag=t) for t in TAGS)
        else:
            labels.append(OrbitLabel(family=kind.family, partition=p))
    return sorted(labels, key=OrbitLabel.sort_key)


def _check_label(label: OrbitLabel, kind: AlgebraKind) -> None:
    if label.family != kind.family:
        raise InadmissibleLabel(f"{label} is a type {label.family} label, algebra is {kind.label}")
    if label.total != kind.matrix_size:
        raise InadmissibleLabel(f"{label} does not partition {kind.matrix_size}")
    if not is_admissible(kind.family, label.partition):
        raise InadmissibleLabel(f"{label} is not the Jordan type of a nilpotent in {kind.label}")
    needs_tag = kind.family == "D" and is_very_even(label.partition)
    if needs_tag != (label.tag is not None):
        raise InadmissibleLabel(f"{label}: a tag is required exactly for very even type D partitions")


# ============================================================================
# Hasse diagrams
# ============================================================================

def hasse_graph(family: str, rank: int) -> nx.DiGraph:
    """Covering relations of the dominance order, edges from larger to smaller"""
    labels = orbit_labels(family, rank)
    graph = nx.DiGraph()
    graph.add_nodes_from(labels)
    for a, b in itertools.permutations(labels, 2):
        if a.partition != b.partition and a.partition.dominates(b.partition):
            graph.add_edge(a, b)
    return nx.transitive_reduction(graph)


def hasse(family: str, rank: int) -> OrbitPoset:
    labels = orbit_labels(family, rank)
    position = {label: k for k, label in enumerate(labels)}
    graph = hasse_graph(family, rank)
    covers = sorted(graph.edges(), key=lambda edge: (position[edge[0]], position[edge[1]]))
    kind = AlgebraKind.of(family, rank)
    return OrbitPoset(family=kind.family, rank=rank, nodes=labels, covers=covers)


_SUPERSCRIPT = str.maketrans("0123456789", "⁰¹²³⁴⁵⁶⁷⁸⁹")


def exponent_label(label: OrbitLabel) -> str:
    """Multiplicities as exponents, e.g. [3,2²,1⁴], with the tag as a suffix ᴵ or ᴵᴵ"""
    pieces = [str(d) if i == 1 else f"{d}{str(i).translate(_SUPERSCRIPT)}" for d, i in label.partition.multiplicities()]
    suffix = {"I": "ᴵ", "II": "ᴵᴵ"}.get(label.tag or "", "")
    return "[" + ",".join(pieces) + "]" + suffix


def hasse_dot(poset: OrbitPoset) -> str:
    """DOT source of the Hasse diagram, no layout hints"""
    kind = AlgebraKind.of(poset.family, poset.rank)
    dot = Digraph(name=f"H_{kind.label}")
    names = {label: f"n{k}" for k, label in enumerate(poset.nodes)}
    for label in poset.nodes:
        dot.node(names[label], exponent_label(label))
    for a, b in poset.covers:
        dot.edge(names[a], names[b])
    return dot.source


# ============================================================================
# Representatives
# ============================================================================

def _root(dim: int, entries: Dict[int, int]) -> Tuple[int, ...]:
    r = [0] * dim
    for i, c in entries.items():
        r[i] += c
    return tuple(r)


class _Builder:
    """Sum of positive root vectors, with optional sign slots for folded pairs"""

    def __init__(self, alg: ClassicalAlgebra):
        self.alg = alg
        self.dim = alg.sys.dim
        self.base: RationalMatrix = ImmutableMatrix(zeros(alg.matrix_size, alg.matrix_size))
        self.slots: List[RationalMatrix] = []
        self.next_index = 0

    def take(self, count: int) -> List[int]:
        block = list(range(self.next_index, self.next_index + count))
        self.next_index += count
        return block

    def x(self, entries: Dict[int, int]) -> RationalMatrix:
        return self.alg.x(_root(self.dim, entries))

    def chain(self, block: Sequence[int]) -> None:
        """x_{L_a − L_b} along consecutive indices: Jordan type [k, k] on k indices"""
        for a, b in zip(block, block[1:]):
            self.base = self.base + self.x({a: 1, b: -1})

    def fold(self, j: int, p: int) -> None:
        """x_{L_j − L_p} ± x_{L_j + L_p}, the sign decided later"""
        self.base = self.base + self.x({j: 1, p: -1})
        self.slots.append(self.x({j: 1, p: 1}))

    def candidates(self) -> Iterator[RationalMatrix]:
        for signs in itertools.product((1, -1), repeat=len(self.slots)):
            m = self.base
            for s, slot in zip(signs, self.slots):
                m = m + s * slot
            yield m


def _paired_parts(p: Partition) -> Tuple[List[int], List[int]]:
    """Equal pairs {d, d} and the leftover parts, leftovers descending"""
    pairs, leftover = [], []
    for d, i in p.multiplicities():
        pairs.extend([d] * (i // 2))
        if i % 2:
            leftover.append(d)
    return pairs, leftover


def _orthogonal_builder(alg: ClassicalAlgebra, p: Partition) -> _Builder:
    builder = _Builder(alg)
    pairs, leftover = _paired_parts(p)
    for d in pairs:
        builder.chain(builder.take(d))
    if alg.kind.family == "B":
        # one odd part runs through e0 via the short root L_j
        u = leftover.pop() // 2
        block = builder.take(u)
        builder.chain(block)
        if block:
            builder.base = builder.base + builder.x({block[-1]: 1})
    for a, b in zip(leftover[0::2], leftover[1::2]):
        s, t = a // 2, b // 2
        first, second, (shared,) = builder.take(s), builder.take(t), builder.take(1)
        builder.chain(first)
        builder.chain(second)
        builder.fold(first[-1], shared)
        if second:
            builder.fold(second[-1], shared)
    return builder


def _symplectic_builder(alg: ClassicalAlgebra, p: Partition) -> _Builder:
    builder = _Builder(alg)
    for d, i in p.multiplicities():
        if d % 2 == 0:
            for _ in range(i):
                block = builder.take(d // 2)
                builder.chain(block)
                builder.base = builder.base + builder.x({block[-1]: 2})
        else:
            for _ in range(i // 2):
                builder.chain(builder.take(d))
    return builder


def _swap_last_pair(alg: ClassicalAlgebra) -> RationalMatrix:
    """Permutation e_m ↔ f_m, an isometry outside SO"""
    size, m = alg.matrix_size, alg.sys.rank
    swap = ImmutableMatrix.eye(size) - unit(size, m - 1, m - 1) - unit(size, 2 * m - 1, 2 * m - 1)
    return swap + unit(size, m - 1, 2 * m - 1) + unit(size, 2 * m - 1, m - 1)


def representative(label: OrbitLabel, alg: ClassicalAlgebra) -> RationalMatrix:
    """
    Nilpotent element of alg with Jordan type label.partition

    Type A uses Jordan blocks. Type C sums attached positive root vectors:
    a chain ending in x_{2L_j} for each even part, a type-A chain for each pair
    of equal odd parts. Types B and D chain equal pairs and fold pairs of distinct
    odd parts through one shared index; type B sends one odd part through e0.

    Raises:
        InadmissibleLabel: label does not name an orbit of alg
    """
    kind = alg.kind
    _check_label(label, kind)
    if kind.family == "A":
        return direct_sum(*[jordan_block(d) for d in label.partition.parts])
    if kind.family == "C":
        builder = _symplectic_builder(alg, label.partition)
    else:
        builder = _orthogonal_builder(alg, label.partition)
    for x in builder.candidates():
        if jordan_partition(x) == label.partition:
            break
    else:
        raise InadmissibleLabel(f"no root-vector representative of {label} in {kind.label}")
    if label.tag is not None and very_even_tag(x, alg) != label.tag:
        swap = _swap_last_pair(alg)
        x = swap * x * swap
    return x


def very_even_tag(x: RationalMatrix, alg: ClassicalAlgebra) -> Optional[str]:
    """
    Tag of a very even type-D nilpotent, None otherwise

    L_X = Σ_j (im X^j ∩ ker X^j) is Lagrangian; tag I iff
    dim(L_X ∩ span{e_1..e_m}) ≡ m (mod 2).
    """
    if alg.kind.family != "D":
        return None
    p = jordan_partition(x)
    if not is_very_even(p):
        return None
    m = alg.sys.rank
    spanning = []
    for j in range(1, p.parts[0]):
        spanning.extend(kernel_image_intersection(x, j))
    lagrangian = column_space(ImmutableMatrix.hstack(*spanning))
    standard = [column(1 if k == i else 0 for k in range(alg.matrix_size)) for i in range(m)]
    d = intersection_dimension(lagrangian, standard)
    return "I" if d % 2 == m % 2 else "II"


def label_of(x: RationalMatrix, alg: ClassicalAlgebra) -> OrbitLabel:
    return OrbitLabel(family=alg.kind.family, partition=jordan_partition(x), tag=very_even_tag(x, alg))


# ============================================================================
# Embedded orbits and reachability
# ============================================================================

def embedded_orbit(label: OrbitLabel, e: Embedding) -> OrbitLabel:
    """
    Orbit of the image of a source nilpotent under a canonical embedding:
    the partition padded with ones

    Raises:
        FamilyMismatch, InadmissibleLabel
    """
    source, target = e.source.kind, e.target.kind
    if not (label.family == source.family == target.family):
        raise FamilyMismatch(f"{label} cannot move along {e.name}")
    _check_label(label, source)
    padded = label.partition.padded(target.matrix_size - source.matrix_size)
    tag = label.tag if target.matrix_size == source.matrix_size else None
    return OrbitLabel(family=target.family, partition=padded, tag=tag)


def _padded_labels(family: str, k_total: int, target: AlgebraKind, extra_filter=None) -> Set[OrbitLabel]:
    found = set()
    for p in partitions_of(k_total):
        if not is_admissible(family, p) or (extra_filter and not extra_filter(p)):
            continue
        padded = p.padded(target.matrix_size - k_total)
        tag = "I" if family == "D" and is_very_even(padded) else None
        found.add(OrbitLabel(family=family, partition=padded, tag=tag))
    return found


def reachable_orbits_predicted(family: str, n: int, m: int) -> List[OrbitLabel]:
    """
    Closed-form reachable orbits for the canonical inclusion of rank n in rank m

    A: partitions of m−n+1, padded. C: admissible partitions of 2(m−n), padded,
    plus [(m−n+1)², 1^{2(n−1)}] when m−n is even. B: admissible partitions of
    2(m−n)+1 with a part 1, padded. D: admissible partitions of 2(m−n), padded,
    plus the tag-I orbit of each very even partition of 2m when n = 1 and m is even.
    """
    family = family.upper()
    if n > m:
        raise RankOrder(f"source rank {n} exceeds target rank {m}")
    target = AlgebraKind.of(family, m)
    k = m - n
    if family == "A":
        found = _padded_labels("A", k + 1, target)
    elif family == "C":
        found = _padded_labels("C", 2 * k, target)
        if k % 2 == 0:
            found.add(OrbitLabel(family="C", partition=Partition(parts=[k + 1, k + 1] + [1] * (2 * (n - 1)))))
    elif family == "B":
        found = _padded_labels("B", 2 * k + 1, target, extra_filter=lambda p: 1 in p.parts)
    else:
        found = _padded_labels("D", 2 * k, target)
        if n == 1 and m % 2 == 0:
            for label in orbit_labels("D", m):
                if label.tag == "I":
                    found.add(label)
    return sorted(found, key=OrbitLabel.sort_key)


def _labels_for_chunk(args) -> Set[Tuple[Tuple[int, ...], Optional[str]]]:
    """Process-pool worker: labels of Σ c_i Y_i for a chunk of coefficient vectors"""
    family, rank, stack, vectors = args
    alg = realize_for(family, rank)
    found = set()
    for c in vectors:
        # object arrays keep the Rational entries exact
        combined = np.tensordot(np.array(c, dtype=object), stack, axes=1)
        label = label_of(ImmutableMatrix(combined.tolist()), alg)
        found.add((label.partition.parts, label.tag))
    return found


def _chunks(vectors: Iterable[Tuple[Rational, ...]], size: int) -> Iterator[List[Tuple[Rational, ...]]]:
    iterator = iter(vectors)
    while True:
        chunk = list(itertools.islice(iterator, size))
        if not chunk:
            return
        yield chunk


def _coefficient_vectors(
    count: int,
    coefficients: Sequence[Rational],
    sample_coefficients: Sequence[Rational],
    seed: int,
    sample_size: int,
    exhaustive_limit: int,
) -> Tuple[Iterable[Tuple[Rational, ...]], str, int]:
    """All vectors when the grid is small, else seeded samples plus 0/1 indicator vectors"""
    total = len(coefficients) ** count
    if total <= exhaustive_limit:
        return itertools.product(coefficients, repeat=count), "exhaustive", total
    rng = np.random.default_rng(seed)
    values = [Rational(c) for c in sample_coefficients]
    drawn = rng.integers(0, len(values), size=(sample_size, count))
    vectors = {tuple(values[k] for k in row) for row in drawn}
    vectors.update(itertools.product((Rational(0), Rational(1)), repeat=count))
    ordered = sorted(vectors)
    return ordered, "sampled", len(ordered)


def _empirical(
    e: Embedding,
    coefficients: Optional[Sequence] = None,
    seed: Optional[int] = None,
    jobs: Optional[int] = None,
    sample_size: Optional[int] = None,
) -> Tuple[List[OrbitLabel], str, List[Rational], int]:
    config = get_config(seed=seed, jobs=jobs, sample_size=sample_size)
    raw = coefficients if coefficients is not None else config["default_coefficients"]
    coefficients = tuple(dict.fromkeys(Rational(c) for c in raw))
    target = e.target
    matrices = [target.y(gamma) for gamma in embedding_elements(e)]
    size = target.matrix_size
    stack = np.array([y.tolist() for y in matrices], dtype=object).reshape(len(matrices), size, size)
    vectors, mode, count = _coefficient_vectors(
        len(matrices), coefficients, config["sample_coefficients"], config["seed"],
        config["sample_size"], config["exhaustive_limit"],
    )
    logger.info("%s: %d embedding elements, %s enumeration of %d vectors", e.name, len(matrices), mode, count)
    family, rank = target.kind.family, target.kind.rank
    tasks = ((family, rank, stack, chunk) for chunk in _chunks(vectors, 2048))
    found: Set[Tuple[Tuple[int, ...], Optional[str]]] = set()
    if config["jobs"] > 1:
        with ProcessPoolExecutor(max_workers=config["jobs"]) as pool:
            for part in pool.map(_labels_for_chunk, tasks):
                found |= part
    else:
        for task in tasks:
            found |= _labels_for_chunk(task)
    labels = [OrbitLabel(family=family, partition=Partition(parts=parts), tag=tag) for parts, tag in found]
    return sorted(labels, key=OrbitLabel.sort_key), mode, list(coefficients), count


def reachable_orbits_empirical(
    e: Embedding,
    coefficients: Optional[Sequence] = None,
    seed: Optional[int] = None,
    jobs: Optional[int] = None,
) -> List[OrbitLabel]:
    """
    Orbits met by Σ c_γ y_γ over the embedding elements γ, c_γ from the coefficient set

    Exhaustive when |coefficients|^count stays under the configured limit,
    otherwise seeded samples from the sample coefficients plus every 0/1 vector.
    """
    return _empirical(e, coefficients, seed, jobs)[0]


def reachability_report(
    family: str,
    n: int,
    m: int,
    coefficients: Optional[Sequence] = None,
    seed: Optional[int] = None,
    jobs: Optional[int] = None,
    anchor: str = "head",
) -> ReachabilityReport:
    """Predicted and empirical orbit sets of a canonical inclusion with both differences"""
    predicted = reachable_orbits_predicted(family, n, m)
    e = canonical_for(family, n, m, anchor)
    empirical, mode, used, count = _empirical(e, coefficients, seed, jobs)
    predicted_set, empirical_set = set(predicted), set(empirical)
    report = ReachabilityReport(
        family=e.target.kind.family,
        source_rank=n,
        target_rank=m,
        predicted=predicted,
        empirical=empirical,
        predicted_only=sorted(predicted_set - empirical_set, key=OrbitLabel.sort_key),
        empirical_only=sorted(empirical_set - predicted_set, key=OrbitLabel.sort_key),
        mode=mode,
        coefficients=used,
        samples=count,
    )
    if not report.agrees:
        logger.info("%s: predicted and empirical orbit sets differ", e.name)
    return report
