"""Ordered evaluation-point sets with a registry of repair lines.

Node indices are 1-based everywhere in the public API, matching the [N]
index convention of the constructions; node i stores the evaluation at
``points[i-1]``.  Lines record base point, direction, the parameter value
of every member node, and the member node indices, so that repair can
interpolate along any registered line without recomputing geometry.
"""

from __future__ import annotations

from dataclasses import dataclass, field as dc_field
from typing import Iterable, Mapping, Sequence

from .errors import (
    DegenerateDirection,
    DimensionMismatch,
    LengthMismatch,
    UncoveredIndex,
)
from .gf import PrimeField
from .mpoly import interpolate_univariate
from .gf import FieldElement

Point = tuple[int, ...]


@dataclass(frozen=True)
class PairSet:
    """Ordered index pairs (i, j) with i < j, 1-based.

    Every index the pairs touch is expected to gain at least one repair
    line; coverage of the full index range is checked at construction of a
    code, not here.
    """

    pairs: tuple[tuple[int, int], ...]

    def __post_init__(self):
        seen = set()
        for i, j in self.pairs:
            if i == j:
                raise DegenerateDirection(f"pair ({i}, {i}) has no direction")
            if i > j or i < 1:
                raise ValueError(f"pair ({i}, {j}) must satisfy 1 <= i < j")
            if (i, j) in seen:
                raise ValueError(f"duplicate pair ({i}, {j})")
            seen.add((i, j))

    @classmethod
    def of(cls, pairs: Iterable[Sequence[int]]) -> "PairSet":
        return cls(tuple(sorted((int(i), int(j)) for i, j in pairs)))

    @classmethod
    def chain(cls, n: int) -> "PairSet":
        """Disjoint consecutive pairs (1,2), (3,4), ...; n must be even."""
        if n % 2:
            raise ValueError(f"chain pairing needs an even index count, got {n}")
        return cls(tuple((i, i + 1) for i in range(1, n, 2)))

    @classmethod
    def all_pairs(cls, n: int) -> "PairSet":
        return cls(tuple((i, j) for i in range(1, n + 1) for j in range(i + 1, n + 1)))

    def covered(self) -> set[int]:
        out: set[int] = set()
        for i, j in self.pairs:
            out.add(i)
            out.add(j)
        return out

    def max_index(self) -> int:
        return max((j for _, j in self.pairs), default=0)

    def __len__(self) -> int:
        return len(self.pairs)

    def __iter__(self):
        return iter(self.pairs)


@dataclass(frozen=True)
class Line:
    """A registered repair line: points[nodes[k]-1] == base + ts[k]*direction."""

    base: Point
    direction: Point
    ts: tuple[int, ...]
    nodes: tuple[int, ...]

    def t_of(self, node: int) -> int:
        return self.ts[self.nodes.index(node)]


class EvaluationSet:
    """Deduplicated ordered points plus the line registry."""

    def __init__(self, field: PrimeField, points: Sequence[Point],
                 lines: Sequence[Line]):
        self.field = field
        self.points = tuple(points)
        self.lines = tuple(lines)
        self.index: dict[Point, int] = {}
        for i, p in enumerate(self.points, start=1):
            if p in self.index:
                raise ValueError(f"duplicate point {p} in evaluation set")
            self.index[p] = i
        node_lines: dict[int, list[int]] = {}
        for li, line in enumerate(self.lines):
            for node, t in zip(line.nodes, line.ts):
                expect = tuple(
                    (b + t * d) % field.q for b, d in zip(line.base, line.direction)
                )
                if self.points[node - 1] != expect:
                    raise ValueError(
                        f"line {li} claims node {node} at t={t}, geometry disagrees"
                    )
                node_lines.setdefault(node, []).append(li)
        self.node_lines = {n: tuple(ls) for n, ls in node_lines.items()}

    def __len__(self) -> int:
        return len(self.points)

    def node_point(self, node: int) -> Point:
        if not 1 <= node <= len(self.points):
            raise KeyError(f"node {node} outside 1..{len(self.points)}")
        return self.points[node - 1]

    def node_of(self, point: Point) -> int:
        return self.index[tuple(point)]

    def lines_through(self, node: int) -> tuple[Line, ...]:
        return tuple(self.lines[i] for i in self.node_lines.get(node, ()))

    def check_coverage(self, allow_uncovered: bool) -> None:
        uncovered = [
            n for n in range(1, len(self.points) + 1) if n not in self.node_lines
        ]
        if uncovered and not allow_uncovered:
            raise UncoveredIndex(
                f"nodes {uncovered} lie on no repair line; "
                "pass allow_uncovered=True to accept this"
            )


class _Builder:
    """Accumulates points (dedup keep-first) and line records."""

    def __init__(self, field: PrimeField):
        self.field = field
        self.points: list[Point] = []
        self.index: dict[Point, int] = {}
        self.lines: list[Line] = []

    def add_point(self, point: Sequence[int]) -> int:
        p = tuple(int(x) % self.field.q for x in point)
        node = self.index.get(p)
        if node is None:
            self.points.append(p)
            node = len(self.points)
            self.index[p] = node
        return node

    def add_line(self, base: Sequence[int], direction: Sequence[int],
                 ts: Sequence[int], nodes: Sequence[int]) -> None:
        q = self.field.q
        b = tuple(int(x) % q for x in base)
        d = tuple(int(x) % q for x in direction)
        if all(x == 0 for x in d):
            raise DegenerateDirection("line direction is zero")
        self.lines.append(Line(b, d, tuple(ts), tuple(nodes)))

    def build(self) -> EvaluationSet:
        return EvaluationSet(self.field, self.points, self.lines)


@dataclass(frozen=True)
class Codeword:
    """Symbols aligned with the evaluation-set node order (1-based access)."""

    symbols: tuple[int, ...]

    def symbol(self, node: int) -> int:
        return self.symbols[node - 1]

    def __len__(self) -> int:
        return len(self.symbols)

    def as_list(self) -> list[int]:
        return list(self.symbols)


@dataclass(frozen=True)
class RepairResult:
    """Outcome of a single-node repair: the symbol and who was contacted."""

    value: int
    contacts: tuple[int, ...]
    line_index: int


def check_lengths(eval_set: EvaluationSet, codeword: Codeword) -> None:
    if len(codeword) != len(eval_set):
        raise LengthMismatch(
            f"codeword length {len(codeword)} != node count {len(eval_set)}"
        )


def interpolate_line_value(field: PrimeField, samples: Sequence[tuple[int, int]],
                           degree: int, t_target: int) -> int:
    """Fit g(t) of the given degree through (t, value) samples and evaluate."""
    poly = interpolate_univariate(
        [(FieldElement(t, field), FieldElement(v, field)) for t, v in samples],
        degree,
    )
    return int(poly.evaluate(t_target))


def line_repair(eval_set: EvaluationSet, line: Line, line_index: int,
                failed: int, available: Mapping[int, int],
                contacts_needed: int, degree: int) -> RepairResult | None:
    """Repair one node along one line, or None if survivors are short.

    Contacts the lowest-indexed survivors; determinism matters more than
    contact choice since any ``degree+1`` points pin the restriction.
    """
    survivors = sorted(
        n for n in line.nodes if n != failed and n in available
    )
    if len(survivors) < contacts_needed:
        return None
    chosen = survivors[:contacts_needed]
    samples = [(line.t_of(n), available[n]) for n in chosen]
    value = interpolate_line_value(eval_set.field, samples, degree,
                                   line.t_of(failed))
    return RepairResult(value=value, contacts=tuple(chosen), line_index=line_index)
