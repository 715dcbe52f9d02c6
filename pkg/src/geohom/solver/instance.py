"""List-homomorphism instances, results, and the instance text format."""
from __future__ import annotations

import time
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Mapping, Sequence

from ..graph import Graph
from ..target import TargetGraph, iter_bits, popcount


class InstanceFormatError(ValueError):
    pass


class SearchTimeout(Exception):
    """Raised inside a solver when its node or time budget runs out."""


@dataclass(frozen=True)
class ListInstance:
    """(G, L) for a fixed target; ``lists[v]`` is a color bitmask."""

    target: TargetGraph
    graph: Graph
    lists: tuple[int, ...]

    def __post_init__(self):
        if len(self.lists) != self.graph.n:
            raise ValueError("one list per vertex required")
        full = self.target.full_mask
        for m in self.lists:
            if m & ~full:
                raise ValueError("list mentions a color outside V(H)")

    @classmethod
    def from_labels(cls, H: TargetGraph, g: Graph, lists: Sequence[Iterable]) -> "ListInstance":
        return cls(H, g, tuple(H.mask_of(L) for L in lists))

    @classmethod
    def full(cls, H: TargetGraph, g: Graph) -> "ListInstance":
        return cls(H, g, (H.full_mask,) * g.n)

    @property
    def n(self) -> int:
        return self.graph.n

    def list_labels(self, v: int) -> frozenset[str]:
        return self.target.labels_of(self.lists[v])

    def with_lists(self, lists: Sequence[int]) -> "ListInstance":
        return ListInstance(self.target, self.graph, tuple(lists))

    def induced(self, vertices: Sequence[int]) -> tuple["ListInstance", list[int]]:
        sub, order = self.graph.induced(vertices)
        return ListInstance(self.target, sub, tuple(self.lists[v] for v in order)), order

    def max_list_size(self) -> int:
        return max((popcount(m) for m in self.lists), default=0)


@dataclass
class Stats:
    """Search counters; ``merge`` adds another run's counters in."""

    nodes: int = 0
    max_depth: int = 0
    separators: int = 0
    node_limit: int = 0
    deadline: float | None = None

    def tick(self, k: int = 1) -> None:
        self.nodes += k
        if self.node_limit and self.nodes > self.node_limit:
            raise SearchTimeout("node limit")
        if self.deadline is not None and time.monotonic() > self.deadline:
            raise SearchTimeout("time limit")

    def depth(self, d: int) -> None:
        if d > self.max_depth:
            self.max_depth = d

    def merge(self, other: "Stats") -> None:
        self.nodes += other.nodes
        self.separators += other.separators
        self.max_depth = max(self.max_depth, other.max_depth)

    def remaining_nodes(self) -> int:
        if not self.node_limit:
            return 0
        return max(1, self.node_limit - self.nodes)

    @classmethod
    def with_limits(cls, node_limit: int = 0, time_limit: float | None = None) -> "Stats":
        deadline = None if not time_limit else time.monotonic() + time_limit
        return cls(node_limit=node_limit, deadline=deadline)


@dataclass
class SolveResult:
    """``answer`` is True/False, or None when the search timed out."""

    answer: bool | None
    witness: tuple[int, ...] | None = None
    stats: Stats = field(default_factory=Stats)
    method: str = ""

    @property
    def verdict(self) -> str:
        return {True: "YES", False: "NO", None: "TIMEOUT"}[self.answer]

    def witness_labels(self, H: TargetGraph) -> list[str] | None:
        if self.witness is None:
            return None
        return [H.labels[c] for c in self.witness]


def verify_homomorphism(inst: ListInstance, f: Sequence[int] | Mapping[int, int]) -> bool:
    """True iff ``f`` (color index per vertex) respects lists and edges."""
    H = inst.target
    if isinstance(f, Mapping):
        if set(f) != set(range(inst.n)):
            return False
        f = [f[v] for v in range(inst.n)]
    if len(f) != inst.n:
        return False
    for v in range(inst.n):
        c = f[v]
        if not (0 <= c < H.size) or not (inst.lists[v] >> c) & 1:
            return False
    return all(H.adjacent(f[u], f[v]) for u, v in inst.graph.edges())


def verify_labels(inst: ListInstance, labels: Sequence[str]) -> bool:
    try:
        return verify_homomorphism(inst, [inst.target.index(x) for x in labels])
    except KeyError:
        return False


def colors_of(mask: int) -> list[int]:
    return list(iter_bits(mask))


# ---------------------------------------------------------------- file format


def parse_rational(tok: str) -> Fraction:
    try:
        return Fraction(tok)
    except (ValueError, ZeroDivisionError):
        raise InstanceFormatError(f"bad rational {tok!r}") from None


def format_rational(q: Fraction) -> str:
    q = Fraction(q)
    return str(q.numerator) if q.denominator == 1 else f"{q.numerator}/{q.denominator}"


@dataclass
class InstanceFile:
    """Parsed instance file, still keyed by H labels.

    Vertices without an ``l`` line get the full vertex set of H.
    """

    n: int
    edges: list[tuple[int, int]] = field(default_factory=list)
    lists: dict[int, list[str]] = field(default_factory=dict)
    scene: str | None = None
    vcost: dict[tuple[int, str], Fraction] = field(default_factory=dict)
    ecost: dict[tuple[int, int, str, str], Fraction] = field(default_factory=dict)
    budget: Fraction | None = None
    separators: list[list[int]] = field(default_factory=list)

    @property
    def weighted(self) -> bool:
        return bool(self.vcost or self.ecost or self.budget is not None)

    def graph(self) -> Graph:
        return Graph.from_edges(self.n, self.edges)

    def bind(self, H: TargetGraph) -> ListInstance:
        full = sorted(H.labels, key=H.index)
        try:
            return ListInstance.from_labels(
                H, self.graph(), [self.lists.get(v, full) for v in range(self.n)]
            )
        except KeyError as exc:
            raise InstanceFormatError(str(exc)) from None

    def dumps(self) -> str:
        lines = [f"G {self.n}"]
        if self.scene is not None:
            lines.append(f"scene {self.scene}")
        lines += [f"e {u} {v}" for u, v in self.edges]
        for v in sorted(self.lists):
            lines.append(" ".join(["l", str(v), *self.lists[v]]))
        for (v, c), q in sorted(self.vcost.items()):
            lines.append(f"wv {v} {c} {format_rational(q)}")
        for (u, v, a, b), q in sorted(self.ecost.items()):
            lines.append(f"we {u} {v} {a} {b} {format_rational(q)}")
        if self.budget is not None:
            lines.append(f"budget {format_rational(self.budget)}")
        for sep in self.separators:
            lines.append(" ".join(["sep", "clique", *map(str, sep)]))
        return "\n".join(lines) + "\n"

    @classmethod
    def loads(cls, text: str) -> "InstanceFile":
        out: InstanceFile | None = None

        def vertex(tok: str, lineno: int) -> int:
            try:
                v = int(tok)
            except ValueError:
                raise InstanceFormatError(f"line {lineno}: bad vertex {tok!r}") from None
            if out is None or not 0 <= v < out.n:
                raise InstanceFormatError(f"line {lineno}: vertex {v} out of range")
            return v

        for lineno, raw in enumerate(text.splitlines(), 1):
            line = raw.split("#", 1)[0].strip()
            if not line:
                continue
            p = line.split()
            tag = p[0]
            if tag == "G":
                if out is not None or len(p) != 2:
                    raise InstanceFormatError(f"line {lineno}: bad header")
                try:
                    n = int(p[1])
                except ValueError:
                    raise InstanceFormatError(f"line {lineno}: bad vertex count") from None
                if n < 0:
                    raise InstanceFormatError(f"line {lineno}: negative vertex count")
                out = cls(n)
                continue
            if out is None:
                raise InstanceFormatError(f"line {lineno}: data before 'G <n>' header")
            if tag == "e" and len(p) == 3:
                u, v = vertex(p[1], lineno), vertex(p[2], lineno)
                if u == v:
                    raise InstanceFormatError(f"line {lineno}: self-loop in instance graph")
                out.edges.append((u, v))
            elif tag == "l" and len(p) >= 2:
                v = vertex(p[1], lineno)
                if v in out.lists:
                    raise InstanceFormatError(f"line {lineno}: second list for vertex {v}")
                out.lists[v] = p[2:]
            elif tag == "scene" and len(p) == 2:
                out.scene = p[1]
            elif tag == "wv" and len(p) == 4:
                out.vcost[(vertex(p[1], lineno), p[2])] = parse_rational(p[3])
            elif tag == "we" and len(p) == 6:
                u, v = vertex(p[1], lineno), vertex(p[2], lineno)
                out.ecost[(u, v, p[3], p[4])] = parse_rational(p[5])
            elif tag == "budget" and len(p) == 2:
                out.budget = parse_rational(p[1])
            elif tag == "sep" and len(p) >= 2 and p[1] == "clique":
                out.separators.append([vertex(t, lineno) for t in p[2:]])
            else:
                raise InstanceFormatError(f"line {lineno}: cannot parse {raw!r}")
        if out is None:
            raise InstanceFormatError("missing 'G <n>' header")
        return out

    @classmethod
    def from_instance(cls, inst: ListInstance) -> "InstanceFile":
        H = inst.target
        out = cls(inst.n, inst.graph.edges())
        for v in range(inst.n):
            out.lists[v] = [H.labels[c] for c in iter_bits(inst.lists[v])]
        return out
