"""Clone/variant algebra over property score vectors.

Two snippets with equal scores on every property of interest are clones.
When they differ, the pair is a simple variant if one side weakly dominates
(at least as good everywhere, better somewhere) and a complex variant when
each side wins on some property; complex pairs need a weight function to
pick a side. Dominance (`stronger_than`) forms a strict partial order, and
check_strict_partial_order verifies its laws over a sample of vectors.

Vectors are plain dicts mapping property name to integer score; missing
entries count as 0 so vectors over different key sets stay comparable.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass

from .errors import ConfigurationError
from .lexicon import ScoreVector


class PairKind(str, enum.Enum):
    CLONE = "clone"
    SIMPLE_VARIANT = "simple_variant"
    COMPLEX_VARIANT = "complex_variant"


class Side(str, enum.Enum):
    FIRST = "first"
    SECOND = "second"


@dataclass(frozen=True)
class PairClassification:
    kind: PairKind
    stronger: Side | None = None

    def __post_init__(self) -> None:
        if (self.stronger is not None) != (self.kind is PairKind.SIMPLE_VARIANT):
            raise ValueError(
                "stronger side is set exactly when kind is simple_variant"
            )


@dataclass(frozen=True)
class ContextDescriptor:
    intent: str | None = None
    dependencies: frozenset[str] = frozenset()
    io_signature: str | None = None
    state: str | None = None

    def is_empty(self) -> bool:
        return not (
            self.intent or self.dependencies or self.io_signature or self.state
        )


def _require_properties(properties) -> tuple[str, ...]:
    props = tuple(properties)
    if not props:
        raise ConfigurationError(
            "comparison needs at least one property of interest"
        )
    return props


def _components(s1: ScoreVector, s2: ScoreVector, props) -> list[tuple[int, int]]:
    return [(s1.get(p, 0), s2.get(p, 0)) for p in props]


def is_clone(s1: ScoreVector, s2: ScoreVector, properties) -> bool:
    """True iff the vectors agree on every property of interest."""
    props = _require_properties(properties)
    return all(a == b for a, b in _components(s1, s2, props))


def stronger_than(s1: ScoreVector, s2: ScoreVector, properties) -> bool:
    """Strict dominance: s1 at least as good everywhere and better somewhere."""
    props = _require_properties(properties)
    pairs = _components(s1, s2, props)
    return all(a >= b for a, b in pairs) and any(a > b for a, b in pairs)


def classify_pair(s1: ScoreVector, s2: ScoreVector, properties) -> PairClassification:
    """Trichotomy: clone, simple variant (with the stronger side), or complex."""
    props = _require_properties(properties)
    pairs = _components(s1, s2, props)
    if all(a == b for a, b in pairs):
        return PairClassification(PairKind.CLONE)
    first_wins = any(a > b for a, b in pairs)
    second_wins = any(b > a for a, b in pairs)
    if first_wins and second_wins:
        return PairClassification(PairKind.COMPLEX_VARIANT)
    stronger = Side.FIRST if first_wins else Side.SECOND
    return PairClassification(PairKind.SIMPLE_VARIANT, stronger)


def weighted_preference(
    s1: ScoreVector,
    s2: ScoreVector,
    weights: dict[str, float],
) -> Side | None:
    """Compare weighted score sums; None means an exact tie.

    Weights must cover every property appearing in either vector, be
    nonnegative, and not all be zero.
    """
    if not weights:
        raise ConfigurationError("weighted_preference needs weights")
    uncovered = (set(s1) | set(s2)) - set(weights)
    if uncovered:
        raise ConfigurationError(
            f"weights missing for properties: {sorted(uncovered)}"
        )
    negative = [p for p, w in weights.items() if w < 0]
    if negative:
        raise ConfigurationError(f"negative weights for: {sorted(negative)}")
    if all(w == 0 for w in weights.values()):
        raise ConfigurationError("all weights are zero; preference undefined")
    total1 = sum(w * s1.get(p, 0) for p, w in weights.items())
    total2 = sum(w * s2.get(p, 0) for p, w in weights.items())
    if total1 > total2:
        return Side.FIRST
    if total2 > total1:
        return Side.SECOND
    return None


def check_strict_partial_order(vectors, properties) -> list[str]:
    """Verify irreflexivity, antisymmetry, and transitivity of stronger_than.

    Returns human-readable violation descriptions (empty on success). The
    transitivity check composes out-neighbor sets of the distinct vectors
    instead of enumerating all triples, which keeps large samples fast: for
    a transitive relation, everything dominated by j must already be
    dominated by any i that dominates j.
    """
    vecs = list(vectors)
    if not vecs:
        raise ValueError("need at least one vector to check")
    props = _require_properties(properties)
    violations: list[str] = []

    distinct: list[ScoreVector] = []
    keys: list[tuple[int, ...]] = []
    seen: set[tuple[int, ...]] = set()
    for v in vecs:
        key = tuple(v.get(p, 0) for p in props)
        if key not in seen:
            seen.add(key)
            keys.append(key)
            distinct.append(dict(zip(props, key)))

    for v in distinct:
        if stronger_than(v, v, props):
            violations.append(f"irreflexivity: {v} > itself")

    # Out-neighbor sets from the key tuples; the inlined dominance test
    # matches stronger_than (missing properties already default to 0 in the
    # keys) but avoids a function call per pair on large samples.
    n = len(keys)
    dim = len(props)
    out: list[set[int]] = [set() for _ in range(n)]
    for i in range(n):
        a = keys[i]
        row = out[i]
        for j in range(n):
            if i == j:
                continue
            b = keys[j]
            ge = True
            gt = False
            for k in range(dim):
                if a[k] < b[k]:
                    ge = False
                    break
                if a[k] > b[k]:
                    gt = True
            if ge and gt:
                row.add(j)
    for i in range(n):
        for j in out[i]:
            if i in out[j]:
                violations.append(
                    f"antisymmetry: {distinct[i]} and {distinct[j]} dominate "
                    f"each other"
                )
            if not out[j] <= out[i]:
                missing = next(iter(out[j] - out[i]))
                violations.append(
                    f"transitivity: {distinct[i]} > {distinct[j]} > "
                    f"{distinct[missing]} but not {distinct[i]} > "
                    f"{distinct[missing]}"
                )
    return violations


def filter_by_context(
    candidates: list[tuple[object, ContextDescriptor]],
    query_context: ContextDescriptor,
) -> list[tuple[object, ContextDescriptor]]:
    """Keep candidates compatible with the query context.

    Dependency sets must intersect the query's allowed set (queries with no
    dependency constraints allow everything); populated text fields match
    on case-insensitive token overlap. Context extraction itself is out of
    scope — this is only the filtering skeleton.
    """
    if query_context.is_empty():
        raise ValueError("query context must populate at least one field")
    kept = []
    for candidate, descriptor in candidates:
        if _compatible(descriptor, query_context):
            kept.append((candidate, descriptor))
    return kept


def _compatible(candidate: ContextDescriptor, query: ContextDescriptor) -> bool:
    if query.dependencies:
        if candidate.dependencies and not (
            {d.lower() for d in candidate.dependencies}
            & {d.lower() for d in query.dependencies}
        ):
            return False
    for cand_text, query_text in (
        (candidate.intent, query.intent),
        (candidate.io_signature, query.io_signature),
        (candidate.state, query.state),
    ):
        if query_text and cand_text and not _tokens(cand_text) & _tokens(query_text):
            return False
    return True


def _tokens(text: str) -> set[str]:
    return {t for t in "".join(
        c.lower() if c.isalnum() else " " for c in text
    ).split()}
