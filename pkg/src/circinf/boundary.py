"""Dual graphs of boundary divisors and their blow-up calculus.

A boundary is a connected configuration of curves at infinity: each curve
carries its self-intersection, geometric genus and number of nodes, and
pairs of distinct curves meet with a positive multiplicity. A node of a
single curve is a loop of the dual graph; it counts as an edge in ``e`` and
adds one to the arithmetic genus of its curve.
"""

from __future__ import annotations

import enum
import re
from collections import deque
from dataclasses import dataclass, field, replace
from functools import cached_property
from typing import Iterable

from .errors import (
    Disconnected,
    InvalidPoint,
    NotACycle,
    NotContractible,
    ParseError,
)
from .lattice import Inertia, SymForm, dual_basis, inertia


@dataclass(frozen=True, order=True)
class Curve:
    id: str
    self_int: int
    genus: int = 0
    nodes: int = 0

    @property
    def arithmetic_genus(self) -> int:
        return self.genus + self.nodes


def _edge_key(a: str, b: str) -> tuple[str, str]:
    return (a, b) if a <= b else (b, a)


@dataclass(frozen=True)
class BoundaryGraph:
    curves: tuple[Curve, ...]
    meets: tuple[tuple[str, str, int], ...] = ()

    def __post_init__(self):
        curves = tuple(sorted(self.curves, key=lambda c: c.id))
        ids = [c.id for c in curves]
        if len(set(ids)) != len(ids):
            raise ValueError("curve ids must be unique")
        for c in curves:
            if c.genus < 0 or c.nodes < 0:
                raise ValueError(f"curve {c.id}: genus and nodes must be nonnegative")
        known = set(ids)
        acc: dict[tuple[str, str], int] = {}
        for a, b, m in self.meets:
            if a == b:
                raise ValueError(f"curve {a} cannot meet itself; use nodes")
            if a not in known or b not in known:
                raise ValueError(f"meet {a} {b} refers to an unknown curve")
            if m < 1:
                raise ValueError("meet multiplicities must be >= 1")
            key = _edge_key(a, b)
            acc[key] = acc.get(key, 0) + m
        object.__setattr__(self, "curves", curves)
        object.__setattr__(self, "meets", tuple((a, b, m) for (a, b), m in sorted(acc.items())))

    # -- accessors -------------------------------------------------------

    @cached_property
    def ids(self) -> tuple[str, ...]:
        return tuple(c.id for c in self.curves)

    @cached_property
    def _by_id(self) -> dict[str, Curve]:
        return {c.id: c for c in self.curves}

    def curve(self, cid: str) -> Curve:
        try:
            return self._by_id[cid]
        except KeyError:
            raise InvalidPoint(f"no curve named {cid!r}") from None

    def index(self, cid: str) -> int:
        return self.ids.index(cid)

    def mult(self, a: str, b: str) -> int:
        if a == b:
            return 0
        key = _edge_key(a, b)
        return next((m for x, y, m in self.meets if (x, y) == key), 0)

    def neighbors(self, cid: str) -> dict[str, int]:
        out = {}
        for a, b, m in self.meets:
            if a == cid:
                out[b] = m
            elif b == cid:
                out[a] = m
        return out

    def degree(self, cid: str) -> int:
        """Valence in the dual graph; a node counts twice."""
        return sum(self.neighbors(cid).values()) + 2 * self.curve(cid).nodes

    @property
    def total_meets(self) -> int:
        return sum(m for _, _, m in self.meets) + sum(c.nodes for c in self.curves)

    def is_connected(self) -> bool:
        if not self.curves:
            return False
        seen = {self.ids[0]}
        todo = deque(seen)
        while todo:
            for nb in self.neighbors(todo.popleft()):
                if nb not in seen:
                    seen.add(nb)
                    todo.append(nb)
        return len(seen) == len(self.curves)

    def require_connected(self):
        if not self.is_connected():
            raise Disconnected("boundary graph is not connected")

    def intersection_form(self) -> SymForm:
        ids = self.ids
        pos = {c: i for i, c in enumerate(ids)}
        m = [[0] * len(ids) for _ in ids]
        for c in self.curves:
            m[pos[c.id]][pos[c.id]] = c.self_int
        for a, b, k in self.meets:
            m[pos[a]][pos[b]] = m[pos[b]][pos[a]] = k
        return SymForm(tuple(map(tuple, m)))

    def with_curves(self, curves: Iterable[Curve], meets: Iterable[tuple[str, str, int]]) -> "BoundaryGraph":
        return BoundaryGraph(tuple(curves), tuple(meets))

    def fresh_id(self, stem: str = "G") -> str:
        k = 1
        while f"{stem}{k}" in self._by_id:
            k += 1
        return f"{stem}{k}"

    def __str__(self):
        parts = [f"{c.id}({c.self_int})" for c in self.curves]
        edges = [f"{a}-{b}" + (f"x{m}" if m > 1 else "") for a, b, m in self.meets]
        return f"[{' '.join(parts)} | {' '.join(edges)}]"


# -- the invariant e and log canonical sections ---------------------------

def euler_invariant(g: BoundaryGraph) -> int:
    """``1 - #curves + #edges`` of the dual graph, loops included."""
    g.require_connected()
    return 1 - len(g.curves) + g.total_meets


def h0_log_canonical(g: BoundaryGraph) -> int:
    """``h^0(K + D)`` for a connected SNC boundary on a rational surface."""
    return sum(c.genus for c in g.curves) + euler_invariant(g)


class Shape(enum.Enum):
    CYCLE = "Cycle"
    TREE = "Tree"
    ZIGZAG = "Zigzag"
    OTHER = "Other"


def classify_shape(g: BoundaryGraph) -> Shape:
    e = euler_invariant(g)
    if any(c.genus for c in g.curves):
        return Shape.OTHER
    if e == 0:
        if all(g.degree(c) <= 2 for c in g.ids):
            return Shape.ZIGZAG
        return Shape.TREE
    if e == 1 and all(g.degree(c) == 2 for c in g.ids):
        return Shape.CYCLE
    return Shape.OTHER


def is_nodal_cycle(g: BoundaryGraph) -> bool:
    """The single-curve cycle: one rational curve with one node."""
    return len(g.curves) == 1 and g.curves[0].nodes == 1 and classify_shape(g) is Shape.CYCLE


# -- blow-ups and contractions -------------------------------------------

@dataclass(frozen=True)
class Satellite:
    """Intersection point of two boundary curves (a node when both agree)."""

    first: str
    second: str

    @property
    def edge(self) -> tuple[str, str]:
        return _edge_key(self.first, self.second)


@dataclass(frozen=True)
class Free:
    """A general point lying on a single boundary curve."""

    curve: str


BoundaryPoint = Satellite | Free


def blow_up(g: BoundaryGraph, p: BoundaryPoint, new_id: str | None = None) -> BoundaryGraph:
    new_id = new_id or g.fresh_id()
    if new_id in g.ids:
        raise InvalidPoint(f"curve id {new_id!r} already in use")
    if isinstance(p, Free):
        e = g.curve(p.curve)
        curves = [replace(c, self_int=c.self_int - 1) if c.id == e.id else c for c in g.curves]
        curves.append(Curve(new_id, -1))
        return g.with_curves(curves, list(g.meets) + [(e.id, new_id, 1)])
    if not isinstance(p, Satellite):
        raise InvalidPoint(f"unknown point type {p!r}")
    a, b = p.first, p.second
    if a == b:
        e = g.curve(a)
        if e.nodes < 1:
            raise InvalidPoint(f"curve {a} has no node")
        curves = [replace(c, self_int=c.self_int - 4, nodes=c.nodes - 1) if c.id == a else c
                  for c in g.curves]
        curves.append(Curve(new_id, -1))
        return g.with_curves(curves, list(g.meets) + [(a, new_id, 2)])
    g.curve(a), g.curve(b)
    if g.mult(a, b) < 1:
        raise InvalidPoint(f"curves {a} and {b} do not meet")
    curves = [replace(c, self_int=c.self_int - 1) if c.id in (a, b) else c for c in g.curves]
    curves.append(Curve(new_id, -1))
    meets = []
    for x, y, m in g.meets:
        if (x, y) == p.edge:
            m -= 1
        if m:
            meets.append((x, y, m))
    meets += [(a, new_id, 1), (new_id, b, 1)]
    return g.with_curves(curves, meets)


def contract(g: BoundaryGraph, cid: str) -> BoundaryGraph:
    """Blow down the (-1)-curve ``cid``; the inverse of :func:`blow_up`."""
    c = g.curve(cid)
    nbrs = g.neighbors(cid)
    if c.self_int != -1 or c.genus or c.nodes:
        raise NotContractible(f"{cid} is not a smooth rational (-1)-curve")
    if sum(nbrs.values()) > 2:
        raise NotContractible(f"{cid} meets the rest of the boundary in more than two points")
    if len(g.curves) == 1:
        raise NotContractible("cannot contract the whole boundary")
    bump = {nb: m * m for nb, m in nbrs.items()}
    curves = []
    for x in g.curves:
        if x.id == cid:
            continue
        if x.id in bump:
            extra_nodes = 1 if nbrs[x.id] == 2 else 0
            x = replace(x, self_int=x.self_int + bump[x.id], nodes=x.nodes + extra_nodes)
        curves.append(x)
    meets = [(x, y, m) for x, y, m in g.meets if cid not in (x, y)]
    if len(nbrs) == 2:
        n1, n2 = sorted(nbrs)
        meets.append((n1, n2, 1))
    return g.with_curves(curves, meets)


# -- adjunction -----------------------------------------------------------

def k_delta_pairing(g: BoundaryGraph) -> tuple[int, ...]:
    """``(K + Delta) . E_i`` for every boundary curve, by adjunction.

    ``K.E = 2 p_a(E) - 2 - E^2`` and ``Delta.E = E^2 + sum_j E.E_j``, so the
    self-intersection cancels.
    """
    return tuple(-2 + 2 * g.curve(i).arithmetic_genus + sum(g.neighbors(i).values())
                 for i in g.ids)


# -- minimal cyclic models and the classification -------------------------

def _contractible(g: BoundaryGraph, cid: str) -> bool:
    c = g.curve(cid)
    return (c.self_int == -1 and not c.genus and not c.nodes
            and sum(g.neighbors(cid).values()) <= 2 and len(g.curves) > 1)


def _nondegenerate(g: BoundaryGraph) -> bool:
    return inertia(g.intersection_form()).zero == 0


def minimize_cycle(g: BoundaryGraph) -> BoundaryGraph:
    """Contract (-1)-curves of a cyclic boundary, lowest id first.

    Contraction stops once three or fewer curves remain with a nondegenerate
    intersection form, so the triangle of (-1)-curves is a fixed point.
    """
    if classify_shape(g) is not Shape.CYCLE:
        raise NotACycle(f"boundary {g} is not a cycle of rational curves")
    while not (len(g.curves) <= 3 and _nondegenerate(g)):
        for cid in g.ids:
            if _contractible(g, cid):
                h = contract(g, cid)
                if classify_shape(h) is Shape.CYCLE:
                    g = h
                    break
        else:
            break
    return g


class Verdict(enum.Enum):
    MARKOV_TYPE = "MarkovType"
    TORUS_LIKE = "TorusLike"
    TREE_CASE = "TreeCase"
    INCONCLUSIVE = "Inconclusive"


@dataclass(frozen=True)
class Classification:
    verdict: Verdict
    shape: Shape
    checks: dict = field(default_factory=dict)
    failed: tuple[str, ...] = ()
    minimized: BoundaryGraph | None = None
    inertia: Inertia | None = None


def classify_surface(g: BoundaryGraph) -> Classification:
    shape = classify_shape(g)
    if shape in (Shape.TREE, Shape.ZIGZAG):
        return Classification(Verdict.TREE_CASE, shape)
    if shape is not Shape.CYCLE:
        return Classification(Verdict.INCONCLUSIVE, shape, failed=("cycle_shape",))
    form = g.intersection_form()
    inert = inertia(form)
    if inert.zero:
        # a nonconstant invertible function shows up as a null class at infinity
        return Classification(Verdict.TORUS_LIKE, shape, {"nondegenerate": False}, inertia=inert)
    duals = dual_basis(form)
    n = len(duals)
    minimized = minimize_cycle(g)
    checks = {
        "nondegenerate": True,
        "minkowski": inert.is_minkowski,
        "k_delta_zero": all(x == 0 for x in k_delta_pairing(minimized)),
        "dual_square_zero": all(form.pair(d, d) == 0 for d in duals),
        "dual_pairing_positive": all(form.pair(duals[i], duals[j]) > 0
                                     for i in range(n) for j in range(i + 1, n)),
    }
    failed = tuple(k for k, ok in checks.items() if not ok)
    verdict = Verdict.INCONCLUSIVE if failed else Verdict.MARKOV_TYPE
    return Classification(verdict, shape, checks, failed, minimized, inert)


# -- text format ----------------------------------------------------------

_LINE = re.compile(r"\s+")


def _int(value: str, key: str, lineno: int) -> int:
    if not re.fullmatch(r"[+-]?\d+", value):
        raise ParseError(f"{key} must be an integer, got {value!r}", lineno)
    return int(value)


def parse_boundary(text: str) -> BoundaryGraph:
    """Read the line-oriented boundary format.

    ::

        curve <id> self=<int> [genus=<int>] [nodes=<int>]
        meet <id> <id> [mult=<int>]

    Everything after ``#`` is a comment.
    """
    curves, meets, seen = [], [], {}
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        words = _LINE.split(line)
        kind = words[0]
        if kind == "curve":
            if len(words) < 2:
                raise ParseError("curve needs an id", lineno)
            cid, opts = words[1], _options(words[2:], {"self", "genus", "nodes"}, lineno)
            if "self" not in opts:
                raise ParseError(f"curve {cid} lacks self=", lineno)
            if cid in seen:
                raise ParseError(f"curve {cid} defined twice (first on line {seen[cid]})", lineno)
            seen[cid] = lineno
            curves.append(Curve(cid, opts["self"], opts.get("genus", 0), opts.get("nodes", 0)))
            if curves[-1].genus < 0 or curves[-1].nodes < 0:
                raise ParseError("genus and nodes must be nonnegative", lineno)
        elif kind == "meet":
            if len(words) < 3:
                raise ParseError("meet needs two curve ids", lineno)
            a, b = words[1], words[2]
            opts = _options(words[3:], {"mult"}, lineno)
            for x in (a, b):
                if x not in seen:
                    raise ParseError(f"meet refers to undefined curve {x}", lineno)
            if a == b:
                raise ParseError("a curve cannot meet itself; use nodes=", lineno)
            m = opts.get("mult", 1)
            if m < 1:
                raise ParseError("mult must be >= 1", lineno)
            meets.append((a, b, m))
        else:
            raise ParseError(f"unknown directive {kind!r}", lineno)
    if not curves:
        raise ParseError("no curves defined")
    return BoundaryGraph(tuple(curves), tuple(meets))


def _options(words, allowed, lineno) -> dict[str, int]:
    out = {}
    for w in words:
        key, sep, value = w.partition("=")
        if not sep:
            raise ParseError(f"expected key=value, got {w!r}", lineno)
        if key not in allowed:
            raise ParseError(f"unknown key {key!r}", lineno)
        if key in out:
            raise ParseError(f"duplicate key {key!r}", lineno)
        out[key] = _int(value, key, lineno)
    return out


def format_boundary(g: BoundaryGraph) -> str:
    lines = []
    for c in g.curves:
        line = f"curve {c.id} self={c.self_int}"
        if c.genus:
            line += f" genus={c.genus}"
        if c.nodes:
            line += f" nodes={c.nodes}"
        lines.append(line)
    for a, b, m in g.meets:
        lines.append(f"meet {a} {b}" + (f" mult={m}" if m != 1 else ""))
    return "\n".join(lines) + "\n"


def load_boundary(path) -> BoundaryGraph:
    with open(path, encoding="utf-8") as fh:
        return parse_boundary(fh.read())


# -- standard configurations ----------------------------------------------

def cycle(self_ints: Iterable[int], prefix: str = "E") -> BoundaryGraph:
    """Cycle of rational curves ``E1 - E2 - ... - Er - E1`` (``r >= 2``)."""
    s = list(self_ints)
    r = len(s)
    if r == 1:
        return BoundaryGraph((Curve(f"{prefix}1", s[0], nodes=1),))
    ids = [f"{prefix}{i + 1}" for i in range(r)]
    curves = tuple(Curve(i, v) for i, v in zip(ids, s))
    if r == 2:
        return BoundaryGraph(curves, ((ids[0], ids[1], 2),))
    return BoundaryGraph(curves, tuple((ids[i], ids[(i + 1) % r], 1) for i in range(r)))


def chain(self_ints: Iterable[int], prefix: str = "E") -> BoundaryGraph:
    s = list(self_ints)
    ids = [f"{prefix}{i + 1}" for i in range(len(s))]
    return BoundaryGraph(tuple(Curve(i, v) for i, v in zip(ids, s)),
                         tuple((ids[i], ids[i + 1], 1) for i in range(len(s) - 1)))


def triangle() -> BoundaryGraph:
    """Three (-1)-lines at infinity of a smooth cubic surface."""
    return cycle([-1, -1, -1])


def torus_square() -> BoundaryGraph:
    """Boundary of P^1 x P^1 minus the four coordinate lines."""
    return cycle([0, 0, 0, 0])


def nodal_cubic_boundary() -> BoundaryGraph:
    """P^2 minus a nodal cubic, after blowing up the node."""
    return BoundaryGraph((Curve("E1", 5), Curve("E2", -1)), (("E1", "E2", 2),))
