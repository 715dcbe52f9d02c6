"""3-SAT to list homomorphism on intersection graphs of equilateral triangles.

Gadget triangles live on a triangular lattice.  A lattice cell ``(a, b, k, t)``
is a triangle of side k: pointing up (t = 0) with corners (a, b), (a+k, b),
(a, b+k), or down (t = 1) with corners (a+k, b), (a, b+k), (a+k, b+k), in the
affine frame (a, b) -> (a + b/2, b * sqrt(3)/2) scaled by ``SCALE``.  The
square root is replaced by a close rational, so triangles are equilateral up
to a relative error below 1e-12.

Variable v is true when its x triangle takes color 5.  A literal is wired by a
large connector triangle with list {1, 2} from the clause's z triangle to the
y triangle (positive literal) or the x triangle (negative literal) of its
variable; the connector forces both ends to the same color in {3, 5}, and a
clause is satisfied when one of its z triangles takes color 3.
"""
from __future__ import annotations

import functools
import itertools
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from .geometry import Point, Scene, Triangle, intersection_graph
from .graph import Graph
from .solver.bruteforce import enumerate_homomorphisms
from .solver.instance import ListInstance
from .target import TargetGraph

# rational stand-in for sqrt(3), error about 1e-13
SQRT3 = Fraction(3650401, 2107560)
SCALE = Fraction(3)  # a unit cell then holds the disk of radius sqrt(2)/2
PITCH = 10  # lattice columns reserved per gadget
EQUILATERAL_TOL = Fraction(1, 10**9)
MAX_TEMPLATE_VERTICES = 16


class CnfFormatError(ValueError):
    pass


@dataclass(frozen=True)
class CnfFormula:
    """Clauses of exactly three nonzero literals over variables 1..num_vars."""

    num_vars: int
    clauses: tuple[tuple[int, int, int], ...]

    def __post_init__(self):
        if self.num_vars < 0:
            raise ValueError("negative variable count")
        for c in self.clauses:
            if len(c) != 3:
                raise ValueError("clauses must have exactly three literals")
            for lit in c:
                if lit == 0 or abs(lit) > self.num_vars:
                    raise ValueError(f"literal {lit} out of range")

    def satisfied_by(self, assignment: Sequence[bool]) -> bool:
        """``assignment[i]`` is the value of variable i + 1."""
        return all(any(assignment[abs(l) - 1] == (l > 0) for l in c) for c in self.clauses)

    def brute_force_sat(self) -> bool:
        return any(
            self.satisfied_by(a) for a in itertools.product((False, True), repeat=self.num_vars)
        )

    def dumps(self) -> str:
        out = [f"p cnf {self.num_vars} {len(self.clauses)}"]
        out += [" ".join(map(str, c)) + " 0" for c in self.clauses]
        return "\n".join(out) + "\n"


def pad_clause(lits: Sequence[int]) -> tuple[int, int, int]:
    """Repeat the last literal until the clause has three."""
    if not lits:
        raise CnfFormatError("empty clause")
    if len(lits) > 3:
        raise CnfFormatError(f"clause {list(lits)} has more than three literals")
    lits = list(lits)
    while len(lits) < 3:
        lits.append(lits[-1])
    return tuple(lits)  # type: ignore[return-value]


def parse_dimacs(text: str) -> CnfFormula:
    """DIMACS CNF with clauses of one to three literals, each ended by 0."""
    header = None
    clauses = []
    cur: list[int] = []
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.strip()
        if not line or line.startswith("c") or line.startswith("%"):
            continue
        if line.startswith("p"):
            parts = line.split()
            if header is not None or len(parts) != 4 or parts[1] != "cnf":
                raise CnfFormatError(f"line {lineno}: bad header {line!r}")
            try:
                header = (int(parts[2]), int(parts[3]))
            except ValueError:
                raise CnfFormatError(f"line {lineno}: bad header {line!r}") from None
            if min(header) < 0:
                raise CnfFormatError(f"line {lineno}: negative count")
            continue
        if header is None:
            raise CnfFormatError(f"line {lineno}: clause before header")
        for tok in line.split():
            try:
                lit = int(tok)
            except ValueError:
                raise CnfFormatError(f"line {lineno}: bad literal {tok!r}") from None
            if lit == 0:
                clauses.append(pad_clause(cur))
                cur = []
            elif abs(lit) > header[0]:
                raise CnfFormatError(f"line {lineno}: variable {abs(lit)} out of range")
            else:
                cur.append(lit)
    if header is None:
        raise CnfFormatError("missing header")
    if cur:
        raise CnfFormatError("last clause not terminated by 0")
    if len(clauses) != header[1]:
        raise CnfFormatError(f"header declares {header[1]} clauses, found {len(clauses)}")
    return CnfFormula(header[0], tuple(clauses))


# ------------------------------------------------------------------ targets


def h5_target() -> TargetGraph:
    """C5 on 1..5 with loops on the adjacent vertices 1 and 2."""
    labels = ["1", "2", "3", "4", "5"]
    edges = [("1", "2"), ("2", "3"), ("3", "4"), ("4", "5"), ("5", "1"), ("1", "1"), ("2", "2")]
    return TargetGraph.from_edges(labels, edges)


# ---------------------------------------------------------------- lattice


def lattice_point(a: int, b: int) -> Point:
    return Point(SCALE * (Fraction(a) + Fraction(b, 2)), SCALE * b * SQRT3 / 2)


def cell_corners(cell: tuple[int, int, int, int]) -> list[tuple[int, int]]:
    a, b, k, t = cell
    if t == 0:
        return [(a, b), (a + k, b), (a, b + k)]
    return [(a + k, b), (a, b + k), (a + k, b + k)]


def _centroid(p: Point, q: Point, r: Point) -> Point:
    return Point((p.x + q.x + r.x) / 3, (p.y + q.y + r.y) / 3)


def _triangle(p: Point, q: Point, r: Point) -> Triangle:
    return Triangle(p, q, r, anchor=_centroid(p, q, r))


def cell_triangle(cell: tuple[int, int, int, int], shift: Point = Point(0, 0)) -> Triangle:
    p, q, r = (lattice_point(a, b) + shift for a, b in cell_corners(cell))
    return _triangle(p, q, r)


@dataclass(frozen=True)
class GadgetTemplate:
    """Lattice cells with lists; ``interface`` names the vertices a contract
    talks about, ``ports`` the lattice corner where a connector attaches."""

    name: str
    cells: tuple[tuple[int, int, int, int], ...]
    lists: tuple[frozenset[str], ...]
    interface: tuple[int, ...]
    ports: tuple[tuple[int, int], ...]
    contract: str

    @property
    def n(self) -> int:
        return len(self.cells)

    def scene(self) -> Scene:
        return Scene(tuple(cell_triangle(c) for c in self.cells))

    def graph(self) -> Graph:
        return _template_graph(self)

    def instance(self, H: TargetGraph) -> ListInstance:
        return ListInstance.from_labels(H, self.graph(), self.lists)


@functools.lru_cache(maxsize=None)
def _template_graph(t: GadgetTemplate) -> Graph:
    return intersection_graph(t.scene())


def _lists(*items: str) -> tuple[frozenset[str], ...]:
    return tuple(frozenset(s) for s in items)


# x, a, b1, c1, b2, c2, y: paths x-a-b1-c1-y and x-a-b2-c2-y.  The tips of x
# and y are the lowest lattice points of the gadget and lie in no other cell.
VARIABLE_TEMPLATE = GadgetTemplate(
    name="variable",
    cells=(
        (4, 0, 2, 1),
        (1, 2, 3, 0),
        (0, 2, 1, 0),
        (0, 1, 1, 0),
        (2, 1, 1, 1),
        (2, 0, 1, 1),
        (1, 0, 1, 1),
    ),
    lists=_lists("35", "12", "15", "14", "13", "24", "35"),
    interface=(0, 6),
    ports=((6, 0), (2, 0)),
    contract="variable",
)

# center c, then legs z-p1-p2-p3 rising up lattice columns 0, 2, 4 from the
# top edge of c.  Leg j forbids c = 1, 3, 5 respectively when its z is 5.
CLAUSE_TEMPLATE = GadgetTemplate(
    name="clause",
    cells=(
        (1, 0, 3, 1),
        (0, 6, 1, 0), (0, 5, 1, 0), (0, 4, 1, 0), (0, 3, 1, 0),
        (2, 6, 1, 0), (2, 5, 1, 0), (2, 4, 1, 0), (2, 3, 1, 0),
        (4, 6, 1, 0), (4, 5, 1, 0), (4, 4, 1, 0), (4, 3, 1, 0),
    ),
    lists=_lists(
        "135",
        "35", "12", "35", "24",
        "35", "12", "13", "14",
        "35", "12", "13", "24",
    ),
    interface=(1, 5, 9),
    ports=((0, 7), (2, 7), (4, 7)),
    contract="clause",
)

# p - q - r with the connector list on q
CONNECTOR_TEMPLATE = GadgetTemplate(
    name="connector",
    cells=((0, 0, 1, 0), (1, 0, 1, 0), (2, 0, 1, 0)),
    lists=_lists("35", "12", "35"),
    interface=(0, 2),
    ports=(),
    contract="connector",
)

TEMPLATES = (VARIABLE_TEMPLATE, CLAUSE_TEMPLATE, CONNECTOR_TEMPLATE)


def verify_gadget_contract(t: GadgetTemplate, H: TargetGraph) -> bool:
    """Enumerate all list homomorphisms of the fragment and check its contract."""
    if t.n > MAX_TEMPLATE_VERTICES:
        raise ValueError(f"template {t.name} has {t.n} > {MAX_TEMPLATE_VERTICES} vertices")
    inst = t.instance(H)
    proj = {tuple(H.labels[f[v]] for v in t.interface) for f in enumerate_homomorphisms(inst)}
    if t.contract == "variable":
        return proj == {("5", "3"), ("3", "5")}
    if t.contract == "clause":
        # every {3,5} pattern on the z's must be allowed by the z lists
        if any(t.lists[v] != frozenset("35") for v in t.interface):
            return False
        want = set(itertools.product("35", repeat=len(t.interface))) - {("5",) * len(t.interface)}
        return proj == want
    if t.contract == "connector":
        return proj == {("3", "3"), ("5", "5")}
    raise ValueError(f"unknown contract {t.contract!r}")


# ------------------------------------------------------------------ generator


@dataclass(frozen=True)
class ConvexFatLayout:
    """Vertex index bookkeeping of a generated instance."""

    num_vars: int
    num_clauses: int

    def var_vertex(self, v: int, role: int) -> int:
        """Vertex of role ``role`` (template index) of variable v (0-based)."""
        return 7 * v + role

    def clause_vertex(self, j: int, role: int) -> int:
        return 7 * self.num_vars + 13 * j + role

    def connector_vertex(self, j: int, i: int) -> int:
        return 7 * self.num_vars + 13 * self.num_clauses + 3 * j + i

    @property
    def n(self) -> int:
        return 7 * self.num_vars + 16 * self.num_clauses


def _rot60(v: Point) -> Point:
    """Counterclockwise turn by sixty degrees (rational cosine and sine)."""
    c, s = Fraction(1, 2), SQRT3 / 2
    return Point(c * v.x - s * v.y, s * v.x + c * v.y)


def connector_triangle(top: Point, bottom: Point) -> Triangle:
    """Equilateral triangle on the segment top-bottom, bulging to the right."""
    r = top + _rot60(bottom - top)
    return _triangle(top, bottom, r)


def _template_edges(t: GadgetTemplate, offset: int) -> list[tuple[int, int]]:
    return [(u + offset, v + offset) for u, v in t.graph().edges()]


def gen_convexfat_3sat(f: CnfFormula) -> tuple[Scene, ListInstance]:
    """Scene of triangles and the H5 list instance, satisfiable iff f is.

    Variables sit in a row above, clauses in a row below; the gap between the
    rows is 8 (N + M) gadget pitches, so every connector is nearly vertical and
    meets the gadget rows only at its two ports.  Connectors all overlap each
    other, which is harmless since {1, 2} is a looped clique of H5.
    """
    H = h5_target()
    N, M = f.num_vars, len(f.clauses)
    lay = ConvexFatLayout(N, M)
    pitch = SCALE * PITCH
    gap = 8 * max(1, N + M) * pitch
    # clause row: the z apexes (lattice row 7) land on y = -gap
    clause_drop = Point(0, -gap) - Point(0, lattice_point(0, 7).y)
    objs: list[Triangle] = []
    lists: list[frozenset[str]] = []
    edges: list[tuple[int, int]] = []
    for v in range(N):
        shift = Point(v * pitch, 0)
        objs += [cell_triangle(c, shift) for c in VARIABLE_TEMPLATE.cells]
        lists += VARIABLE_TEMPLATE.lists
        edges += _template_edges(VARIABLE_TEMPLATE, lay.var_vertex(v, 0))
    for j in range(M):
        shift = Point(j * pitch, 0) + clause_drop
        objs += [cell_triangle(c, shift) for c in CLAUSE_TEMPLATE.cells]
        lists += CLAUSE_TEMPLATE.lists
        edges += _template_edges(CLAUSE_TEMPLATE, lay.clause_vertex(j, 0))
    for j, clause in enumerate(f.clauses):
        for i, lit in enumerate(clause):
            var = abs(lit) - 1
            side = 1 if lit > 0 else 0  # y port for a positive literal
            role = VARIABLE_TEMPLATE.interface[side]
            top = lattice_point(*VARIABLE_TEMPLATE.ports[side]) + Point(var * pitch, 0)
            bottom = (
                lattice_point(*CLAUSE_TEMPLATE.ports[i]) + Point(j * pitch, 0) + clause_drop
            )
            objs.append(connector_triangle(top, bottom))
            lists.append(frozenset("12"))
            q = lay.connector_vertex(j, i)
            edges.append((lay.var_vertex(var, role), q))
            edges.append((lay.clause_vertex(j, CLAUSE_TEMPLATE.interface[i]), q))
    qs = [lay.connector_vertex(j, i) for j in range(M) for i in range(3)]
    edges += list(itertools.combinations(qs, 2))
    g = Graph.from_edges(lay.n, edges)
    return Scene(tuple(objs)), ListInstance.from_labels(H, g, lists)


# --------------------------------------------------------------------- audit


@dataclass(frozen=True)
class AuditReport:
    ok: bool
    missing: tuple[tuple[int, int], ...]  # declared edges without intersection
    extra: tuple[tuple[int, int], ...]  # intersections not declared
    not_equilateral: tuple[int, ...]
    count_mismatch: bool = False

    def __bool__(self) -> bool:
        return self.ok


def is_equilateral(o, tol: Fraction = EQUILATERAL_TOL) -> bool:
    if not isinstance(o, Triangle):
        return False
    pts = [o.a, o.b, o.c]
    sides = [(p.x - q.x) ** 2 + (p.y - q.y) ** 2 for p, q in zip(pts, pts[1:] + pts[:1])]
    return max(sides) - min(sides) <= tol * max(sides)


def geometry_audit(scene: Scene, inst: ListInstance) -> AuditReport:
    """Compare the scene's intersection graph with the declared graph edge by
    edge and check that every object is an equilateral triangle."""
    bad = tuple(i for i, o in enumerate(scene.objects) if not is_equilateral(o))
    if len(scene) != inst.n:
        return AuditReport(False, (), (), bad, True)
    got = set(intersection_graph(scene).edges())
    want = set(inst.graph.edges())
    missing = tuple(sorted(want - got))
    extra = tuple(sorted(got - want))
    return AuditReport(not (missing or extra or bad), missing, extra, bad)
