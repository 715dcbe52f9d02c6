"""The fixed target graph H (loops allowed) and its structural invariants.

Colors are addressed by index internally; a list of colors is an ``int``
bitmask over those indices.  Public helpers return label sets.
"""
from __future__ import annotations

import enum
import itertools
from dataclasses import dataclass, field
from typing import Iterable, Iterator, Sequence

MRC_MAX_VERTICES = 24


class TargetFormatError(ValueError):
    pass


def iter_bits(mask: int) -> Iterator[int]:
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


def popcount(mask: int) -> int:
    return bin(mask).count("1")


@dataclass(frozen=True)
class TargetGraph:
    """Pattern graph H.  ``adj[i]`` is the neighbourhood bitmask of vertex i
    (bit i set iff i carries a loop)."""

    labels: tuple[str, ...]
    adj: tuple[int, ...]
    _index: dict = field(default=None, repr=False, compare=False, hash=False)

    def __post_init__(self):
        if len(set(self.labels)) != len(self.labels):
            raise ValueError("target labels must be unique")
        if len(self.adj) != len(self.labels):
            raise ValueError("adjacency length mismatch")
        for i, row in enumerate(self.adj):
            for j in iter_bits(row):
                if j >= len(self.labels) or not (self.adj[j] >> i) & 1:
                    raise ValueError("target adjacency must be symmetric")
        object.__setattr__(self, "_index", {lab: i for i, lab in enumerate(self.labels)})

    @classmethod
    def from_edges(cls, labels: Sequence, edges: Iterable[tuple]) -> "TargetGraph":
        labels = tuple(str(x) for x in labels)
        index = {lab: i for i, lab in enumerate(labels)}
        adj = [0] * len(labels)
        for a, b in edges:
            i, j = index[str(a)], index[str(b)]
            adj[i] |= 1 << j
            adj[j] |= 1 << i
        return cls(labels, tuple(adj))

    @property
    def size(self) -> int:
        return len(self.labels)

    @property
    def full_mask(self) -> int:
        return (1 << len(self.labels)) - 1

    def index(self, label) -> int:
        try:
            return self._index[str(label)]
        except KeyError:
            raise KeyError(f"unknown target vertex {label!r}") from None

    def mask_of(self, labels: Iterable) -> int:
        m = 0
        for lab in labels:
            m |= 1 << self.index(lab)
        return m

    def labels_of(self, mask: int) -> frozenset[str]:
        return frozenset(self.labels[i] for i in iter_bits(mask))

    def adjacent(self, i: int, j: int) -> bool:
        return bool((self.adj[i] >> j) & 1)

    def has_loop(self, i: int) -> bool:
        return bool((self.adj[i] >> i) & 1)

    @property
    def reflexive_mask(self) -> int:
        return sum(1 << i for i in range(self.size) if self.has_loop(i))

    def support(self, mask: int) -> int:
        """Union of neighbourhoods of the colors in ``mask``."""
        out = 0
        for i in iter_bits(mask):
            out |= self.adj[i]
        return out

    def edges(self) -> list[tuple[str, str]]:
        """Edges as label pairs, loops included, each listed once (i <= j)."""
        return [
            (self.labels[i], self.labels[j])
            for i in range(self.size)
            for j in range(i, self.size)
            if self.adjacent(i, j)
        ]

    # text format: "H <n>", "v <label>" lines, "e <a> <b>" lines
    def dumps(self) -> str:
        lines = [f"H {self.size}"]
        lines += [f"v {lab}" for lab in self.labels]
        lines += [f"e {a} {b}" for a, b in self.edges()]
        return "\n".join(lines) + "\n"

    @classmethod
    def loads(cls, text: str) -> "TargetGraph":
        declared = None
        labels: list[str] = []
        edges: list[tuple[str, str]] = []
        for lineno, raw in enumerate(text.splitlines(), 1):
            line = raw.split("#", 1)[0].strip()
            if not line:
                continue
            parts = line.split()
            tag = parts[0]
            if tag == "H" and len(parts) == 2 and declared is None:
                try:
                    declared = int(parts[1])
                except ValueError:
                    raise TargetFormatError(f"line {lineno}: bad vertex count") from None
            elif tag == "v" and len(parts) == 2:
                labels.append(parts[1])
            elif tag == "e" and len(parts) == 3:
                edges.append((parts[1], parts[2]))
            else:
                raise TargetFormatError(f"line {lineno}: cannot parse {raw!r}")
        if declared is None:
            raise TargetFormatError("missing 'H <n>' header")
        if declared != len(labels):
            raise TargetFormatError(f"header declares {declared} vertices, found {len(labels)}")
        if len(set(labels)) != len(labels):
            raise TargetFormatError("duplicate vertex label")
        known = set(labels)
        for a, b in edges:
            if a not in known or b not in known:
                raise TargetFormatError(f"edge {a} {b} uses an undeclared vertex")
        return cls.from_edges(labels, edges)


def reflexive_partition(H: TargetGraph) -> tuple[frozenset[str], frozenset[str]]:
    """Return (R(H), I(H)): looped and loopless vertices."""
    R = frozenset(H.labels[i] for i in range(H.size) if H.has_loop(i))
    return R, frozenset(H.labels) - R


def _reflexive_cliques_idx(H: TargetGraph) -> list[int]:
    refl = [i for i in range(H.size) if H.has_loop(i)]
    out = []
    for r in range(len(refl) + 1):
        for combo in itertools.combinations(refl, r):
            if all(H.adjacent(a, b) for a, b in itertools.combinations(combo, 2)):
                out.append(sum(1 << i for i in combo))
    return out


def reflexive_cliques(H: TargetGraph) -> list[int]:
    """All reflexive cliques of H (as masks), the empty one included."""
    if H.size > MRC_MAX_VERTICES:
        raise ValueError(f"target graph too large for subset search (> {MRC_MAX_VERTICES})")
    return _reflexive_cliques_idx(H)


def maximal_reflexive_cliques(H: TargetGraph) -> list[int]:
    cliques = reflexive_cliques(H)
    maximal = [c for c in cliques if c and not any(c != d and c & d == c for d in cliques)]
    return sorted(maximal, key=lambda m: sorted(iter_bits(m)))


def max_reflexive_clique(H: TargetGraph) -> tuple[int, frozenset[str]]:
    """mrc(H) with a witness clique, by exhaustive subset search over R(H)."""
    best = 0
    for c in reflexive_cliques(H):
        if popcount(c) > popcount(best):
            best = c
    return popcount(best), H.labels_of(best)


class Comparison(enum.Enum):
    A_LE_B = "a<=b"
    B_LE_A = "b<=a"
    EQUAL = "equal"
    INCOMPARABLE = "incomparable"


def compare_idx(H: TargetGraph, a: int, b: int) -> Comparison:
    na, nb = H.adj[a], H.adj[b]
    if na == nb:
        return Comparison.EQUAL
    if na & nb == na:
        return Comparison.A_LE_B
    if na & nb == nb:
        return Comparison.B_LE_A
    return Comparison.INCOMPARABLE


def comparability(H: TargetGraph, a, b) -> Comparison:
    """Classify a, b by containment of their neighbourhoods (loops count)."""
    i, j = H.index(a), H.index(b)
    if i == j:
        raise ValueError("comparability needs two distinct vertices")
    return compare_idx(H, i, j)


def find_predator_idx(H: TargetGraph) -> tuple[int, int, int, int] | None:
    pairs = [
        (a1, a2)
        for a1, a2 in itertools.combinations(range(H.size), 2)
        if compare_idx(H, a1, a2) is Comparison.INCOMPARABLE
    ]
    for a1, a2 in pairs:
        common = H.adj[a1] & H.adj[a2]
        for b1, b2 in pairs:
            if (common >> b1) & 1 and (common >> b2) & 1:
                return a1, a2, b1, b2
    return None


def find_predator(H: TargetGraph) -> tuple[str, str, str, str] | None:
    """Two incomparable pairs {a1,a2}, {b1,b2} of H complete to each other.

    Only H itself is inspected; factors of H are not constructed.
    """
    hit = find_predator_idx(H)
    return None if hit is None else tuple(H.labels[i] for i in hit)


def is_strong_split(H: TargetGraph) -> bool:
    R = [i for i in range(H.size) if H.has_loop(i)]
    I = [i for i in range(H.size) if not H.has_loop(i)]
    return all(H.adjacent(a, b) for a, b in itertools.combinations(R, 2)) and not any(
        H.adjacent(a, b) for a, b in itertools.combinations(I, 2)
    )


@dataclass(frozen=True)
class BipartiteAssociate:
    """H* together with the side map and the origin of each H* vertex."""

    hstar: TargetGraph
    side_of: dict[str, str]
    origin: dict[str, tuple[str, str]]

    @property
    def x_mask(self) -> int:
        return self.hstar.mask_of(v for v, s in self.side_of.items() if s == "X")

    @property
    def y_mask(self) -> int:
        return self.hstar.mask_of(v for v, s in self.side_of.items() if s == "Y")


def prime(label: str) -> str:
    return f"{label}'"


def dprime(label: str) -> str:
    return f"{label}''"


def build_associated_bipartite(H: TargetGraph) -> BipartiteAssociate:
    labels = [prime(a) for a in H.labels] + [dprime(a) for a in H.labels]
    edges = [
        (prime(H.labels[i]), dprime(H.labels[j]))
        for i in range(H.size)
        for j in range(H.size)
        if H.adjacent(i, j)
    ]
    hstar = TargetGraph.from_edges(labels, edges)
    side_of = {prime(a): "X" for a in H.labels} | {dprime(a): "Y" for a in H.labels}
    origin = {prime(a): (a, "'") for a in H.labels} | {dprime(a): (a, "''") for a in H.labels}
    return BipartiteAssociate(hstar, side_of, origin)
