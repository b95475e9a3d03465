"""Valuations on the circle at infinity of a cyclic boundary.

Points of the circle are either divisorial (a boundary curve) or monomial
valuations ``v_{1,s}`` at the intersection point ``p = E n F``: in local
coordinates ``x, y`` at ``p`` with ``E = {x=0}`` and ``F = {y=0}`` they give
``x`` weight 1 and ``y`` weight ``s``. The class ``Z_v`` of such a point is
computed from the dual basis of the boundary lattice.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

from .boundary import BoundaryGraph, Satellite, Shape, blow_up, classify_shape, k_delta_pairing
from .errors import InvalidPoint, InvalidWeight, NotACycle
from .lattice import dot, dual_basis


@dataclass(frozen=True)
class Vertex:
    curve: str


@dataclass(frozen=True)
class EdgePoint:
    first: str
    second: str
    s: Fraction

    def __post_init__(self):
        s = Fraction(self.s)
        if s <= 0:
            raise InvalidWeight(f"edge weight must be positive, got {s}")
        object.__setattr__(self, "s", s)

    def flipped(self) -> "EdgePoint":
        """The same ray seen from the other chart, ``(F, E, 1/s)``."""
        return EdgePoint(self.second, self.first, 1 / self.s)


CirclePoint = Vertex | EdgePoint


@dataclass(frozen=True)
class DivClass:
    """An element of Div_inf(X) tensor Q, coefficients in ``graph.ids`` order."""

    graph: BoundaryGraph
    coeffs: tuple

    def __getitem__(self, cid: str) -> Fraction:
        return self.coeffs[self.graph.index(cid)]

    def _check(self, other: "DivClass"):
        if other.graph != self.graph:
            raise ValueError("classes live on different completions")

    def __add__(self, other: "DivClass") -> "DivClass":
        self._check(other)
        return DivClass(self.graph, tuple(a + b for a, b in zip(self.coeffs, other.coeffs)))

    def __sub__(self, other: "DivClass") -> "DivClass":
        return self + (-1) * other

    def __mul__(self, c) -> "DivClass":
        return DivClass(self.graph, tuple(Fraction(c) * a for a in self.coeffs))

    __rmul__ = __mul__

    def pairings(self) -> tuple:
        """Intersection numbers with each boundary curve."""
        return self.graph.intersection_form().apply(self.coeffs)

    def dot(self, other: "DivClass") -> Fraction:
        self._check(other)
        return dot(self.coeffs, other.pairings())

    def square(self) -> Fraction:
        return self.dot(self)

    def pushforward(self, target: BoundaryGraph) -> "DivClass":
        """Push down along a blow-down: forget the contracted curves."""
        missing = set(target.ids) - set(self.graph.ids)
        if missing:
            raise ValueError(f"target has curves unknown here: {sorted(missing)}")
        return DivClass(target, tuple(self[c] for c in target.ids))

    def is_effective(self) -> bool:
        return all(a >= 0 for a in self.coeffs)


@lru_cache(maxsize=1024)
def dual_classes(g: BoundaryGraph) -> dict[str, DivClass]:
    """``E -> E^`` with ``E^ . F = delta_{EF}``; raises DegenerateForm."""
    basis = dual_basis(g.intersection_form())
    return {cid: DivClass(g, vec) for cid, vec in zip(g.ids, basis)}


def _validate(g: BoundaryGraph, v: CirclePoint):
    if isinstance(v, Vertex):
        g.curve(v.curve)
    elif isinstance(v, EdgePoint):
        g.curve(v.first), g.curve(v.second)
        if g.mult(v.first, v.second) < 1:
            raise InvalidPoint(f"{v.first} and {v.second} do not meet")
    else:
        raise InvalidPoint(f"not a circle point: {v!r}")


def z_class(g: BoundaryGraph, v: CirclePoint) -> DivClass:
    _validate(g, v)
    duals = dual_classes(g)
    if isinstance(v, Vertex):
        return duals[v.curve]
    return duals[v.first] + v.s * duals[v.second]


def z_pairing_check(g: BoundaryGraph, v: CirclePoint) -> tuple:
    return z_class(g, v).pairings()


def z_self_intersection(g: BoundaryGraph, v: CirclePoint) -> Fraction:
    """``Z_v^2``; for monomial points the local correction ``-s`` is included."""
    z = z_class(g, v)
    if isinstance(v, Vertex):
        return z.square()
    return z.square() - v.s


def z_kdelta(g: BoundaryGraph, v: CirclePoint) -> Fraction:
    return dot(z_class(g, v).coeffs, k_delta_pairing(g))


# -- refinement -----------------------------------------------------------

@dataclass(frozen=True)
class Transported:
    graph: BoundaryGraph
    point: CirclePoint
    scale: Fraction
    new_curve: str

    def z_class(self) -> DivClass:
        return self.scale * z_class(self.graph, self.point)


def transport(g: BoundaryGraph, v: CirclePoint, edge: tuple[str, str],
              new_id: str | None = None) -> Transported:
    """Follow ``v`` through the blow-up of the satellite point on ``edge``.

    With ``G`` the new curve, a monomial point on that edge moves to
    ``(E, G)`` with weight ``s/(1-s)`` (and the valuation rescaled by ``1-s``)
    if ``s < 1``, becomes ``ord_G`` if ``s = 1``, and moves to ``(G, F)`` with
    weight ``s - 1`` if ``s > 1``. All other points keep their coordinates.
    """
    _validate(g, v)
    a, b = edge
    y = blow_up(g, Satellite(a, b), new_id)
    gid = next(c for c in y.ids if c not in g.ids)
    one = Fraction(1)
    if isinstance(v, EdgePoint) and {v.first, v.second} == {a, b}:
        e, f, s = v.first, v.second, v.s
        if s < 1:
            return Transported(y, EdgePoint(e, gid, s / (1 - s)), 1 - s, gid)
        if s == 1:
            return Transported(y, Vertex(gid), one, gid)
        return Transported(y, EdgePoint(gid, f, s - 1), one, gid)
    return Transported(y, v, one, gid)


def is_nef_at_level(g: BoundaryGraph, v: CirclePoint) -> bool:
    """Effectivity of ``Z_v`` on ``g`` and after one refinement of each edge."""
    if not z_class(g, v).is_effective():
        return False
    for a, b, _ in g.meets:
        if not transport(g, v, (a, b)).z_class().is_effective():
            return False
    return True


def refine_consistency(g: BoundaryGraph, edge: tuple[str, str], s=1) -> bool:
    """Check that ``v_{1,1}`` on ``edge`` and ``ord_G`` one level up agree.

    Both the incarnation on ``g`` (push-forward of ``G^``) and the
    self-intersection have to match.
    """
    if Fraction(s) != 1:
        raise InvalidWeight("only s = 1 is reached by a single blow-up")
    if classify_shape(g) is not Shape.CYCLE:
        raise NotACycle(f"boundary {g} is not a cycle")
    e, f = edge
    v = EdgePoint(e, f, Fraction(1))
    t = transport(g, v, edge)
    g_hat = dual_classes(t.graph)[t.new_curve]
    return (g_hat.pushforward(g) == z_class(g, v)
            and g_hat.square() == z_self_intersection(g, v))


def sample_weights(n: int, scale=1) -> list[Fraction]:
    """Deterministic grid ``scale * k / (n + 1 - k)`` for ``k = 1..n``."""
    return [Fraction(scale) * Fraction(k, n + 1 - k) for k in range(1, n + 1)]


def circle_table(g: BoundaryGraph, edge: tuple[str, str], samples: int, scale=1) -> list[dict]:
    """Rows ``(point, Z^2, Z.(K+D), nef)`` along one edge of the circle."""
    if classify_shape(g) is not Shape.CYCLE:
        raise NotACycle(f"boundary {g} is not a cycle")
    e, f = edge
    points: list[CirclePoint] = [Vertex(e)]
    points += [EdgePoint(e, f, s) for s in sample_weights(samples, scale)]
    points.append(Vertex(f))
    rows = []
    for p in points:
        rows.append({
            "point": p.curve if isinstance(p, Vertex) else f"{p.first},{p.second}",
            "s": None if isinstance(p, Vertex) else p.s,
            "z_squared": z_self_intersection(g, p),
            "z_kdelta": z_kdelta(g, p),
            "nef": is_nef_at_level(g, p),
        })
    return rows
