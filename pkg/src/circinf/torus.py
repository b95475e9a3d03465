"""Monomial maps of the two-dimensional torus.

A map is stored as an integer matrix ``M`` whose columns are the exponent
vectors of ``f^*x`` and ``f^*y``. Pulling back acts on exponents by ``M``, so a
monomial valuation with weight ``w`` is pushed forward to weight ``M^T w``.
Valuations at infinity of the torus are the nonzero weights up to positive
scaling, i.e. the rays of the plane.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import gcd
from typing import Sequence

from .errors import NotLoxodromic, SingularMatrix, StartsAtRepeller
from .lattice import QuadraticInteger
from .quadratic import QuadNum


@dataclass(frozen=True)
class MonomialMap:
    a: int
    b: int
    c: int
    d: int

    def __post_init__(self):
        for v in (self.a, self.b, self.c, self.d):
            if not isinstance(v, int):
                raise TypeError("monomial maps have integer entries")
        if self.det == 0:
            raise SingularMatrix(f"matrix {self.rows} is singular")

    @classmethod
    def from_rows(cls, rows: Sequence[Sequence[int]]) -> "MonomialMap":
        (a, b), (c, d) = rows
        return cls(a, b, c, d)

    @property
    def rows(self) -> tuple:
        return ((self.a, self.b), (self.c, self.d))

    @property
    def det(self) -> int:
        return self.a * self.d - self.b * self.c

    @property
    def trace(self) -> int:
        return self.a + self.d

    @property
    def is_automorphism(self) -> bool:
        return abs(self.det) == 1

    def matmul(self, other: "MonomialMap") -> "MonomialMap":
        """Plain matrix product ``self . other``."""
        return MonomialMap(self.a * other.a + self.b * other.c, self.a * other.b + self.b * other.d,
                           self.c * other.a + self.d * other.c, self.c * other.b + self.d * other.d)

    def compose(self, g: "MonomialMap") -> "MonomialMap":
        """The map ``self o g``; its exponent matrix is ``M_g M_self``."""
        return g.matmul(self)

    def __pow__(self, n: int) -> "MonomialMap":
        if n < 0:
            return self.inverse() ** (-n)
        out = MonomialMap(1, 0, 0, 1)
        for _ in range(n):
            out = out.matmul(self)
        return out

    def inverse(self) -> "MonomialMap":
        if not self.is_automorphism:
            raise SingularMatrix("only unimodular maps are invertible")
        s = self.det
        return MonomialMap(self.d * s, -self.b * s, -self.c * s, self.a * s)

    def char_poly(self) -> tuple[int, int, int]:
        """``(1, -trace, det)``: coefficients of ``x^2 - tr x + det``."""
        return (1, -self.trace, self.det)


def pushforward(f: MonomialMap, w: Sequence) -> tuple[Fraction, Fraction]:
    w1, w2 = (Fraction(x) for x in w)
    if w1 == 0 and w2 == 0:
        raise ValueError("the zero weight is not a valuation at infinity")
    return (f.a * w1 + f.c * w2, f.b * w1 + f.d * w2)


def dynamical_degree(f: MonomialMap) -> QuadraticInteger:
    """Spectral radius of ``M`` as the larger root of an integer quadratic.

    Real eigenvalues give ``x^2 - |tr| x + det``; a complex pair has modulus
    ``sqrt(det)``, the larger root of ``x^2 - det``.
    """
    t, det = f.trace, f.det
    if t * t - 4 * det >= 0:
        return QuadraticInteger(abs(t), -det)
    return QuadraticInteger(0, det)


def _cross(u, v):
    return u[0] * v[1] - u[1] * v[0]


@dataclass(frozen=True)
class EigenData:
    lam: QuadraticInteger
    mu_plus: QuadNum        # signed eigenvalue of largest modulus
    mu_minus: QuadNum
    ray_plus: tuple         # (QuadNum, QuadNum)
    ray_minus: tuple

    def verify(self, f: MonomialMap) -> bool:
        """``M^T v = mu v`` for both eigenrays, exactly."""
        ok = True
        for mu, (x, y) in ((self.mu_plus, self.ray_plus), (self.mu_minus, self.ray_minus)):
            ok &= f.a * x + f.c * y == mu * x and f.b * x + f.d * y == mu * y
        return ok


def _eigenray(f: MonomialMap, mu: QuadNum) -> tuple:
    # kernel of M^T - mu, M^T = [[a, c], [b, d]]
    v = (QuadNum(f.c), mu - f.a)
    if v[0] == 0 and v[1] == 0:
        v = (mu - f.d, QuadNum(f.b))
    if v[1] != 0:
        return (v[0] / v[1], QuadNum(1))
    return (QuadNum(1), QuadNum(0))


def is_loxodromic(f: MonomialMap) -> bool:
    t, det = f.trace, f.det
    disc = t * t - 4 * det
    return disc > 0 and t != 0 and dynamical_degree(f).value > 1


def eigenvaluations(f: MonomialMap) -> EigenData:
    if not is_loxodromic(f):
        raise NotLoxodromic(f"matrix {f.rows} has no dominant real eigenvalue > 1")
    lam = dynamical_degree(f)
    mu_plus = lam.value if f.trace > 0 else -lam.value
    mu_minus = f.trace - mu_plus
    data = EigenData(lam, mu_plus, mu_minus, _eigenray(f, mu_plus), _eigenray(f, mu_minus))
    assert data.verify(f)
    return data


@dataclass(frozen=True)
class AttractionReport:
    weights: list
    ratios: list        # |w_k ^ v+| / |w_k|_1 in Q(sqrt(disc))
    monotone: bool


def attraction_check(f: MonomialMap, v0: Sequence, n: int) -> AttractionReport:
    """Iterate ``f_*`` on ``v0`` and measure the distance to the attracting ray."""
    eig = eigenvaluations(f)
    w = tuple(Fraction(x) for x in v0)
    if _cross(w, eig.ray_minus) == 0:
        raise StartsAtRepeller("start weight lies on the repelling eigenray")
    weights, ratios = [], []
    for _ in range(n + 1):
        weights.append(w)
        ratios.append(abs(_cross(w, eig.ray_plus)) / (abs(w[0]) + abs(w[1])))
        w = pushforward(f, w)
    monotone = all(b < a for a, b in zip(ratios, ratios[1:]))
    return AttractionReport(weights, ratios, monotone)


_COORDINATE_RAYS = ((1, 0), (0, 1), (-1, 0), (0, -1))


@dataclass(frozen=True)
class RayImage:
    ray: tuple
    image: tuple            # primitive integer vector
    multiplicity: int
    new_divisor: bool


def boundary_ray_images(f: MonomialMap) -> list[RayImage]:
    """Push the four coordinate divisors of ``P^1 x P^1`` forward."""
    out = []
    for r in _COORDINATE_RAYS:
        x, y = (int(v) for v in pushforward(f, r))
        m = gcd(x, y)
        prim = (x // m, y // m)
        out.append(RayImage(r, prim, m, prim not in _COORDINATE_RAYS))
    return out


def proper_pushforward_check(f: MonomialMap, test_range: int = 3) -> bool:
    """Check ``f_* Z_v = Z_{f_* v}`` on the divisorial boundary valuations.

    Every boundary valuation must stay centered at infinity (nonzero weight),
    and its image must evaluate every test monomial ``x^i y^j`` exactly as
    ``v`` evaluates the pulled back monomial.
    """
    exps = [(i, j) for i in range(-test_range, test_range + 1) for j in range(-test_range, test_range + 1)]
    for img in boundary_ray_images(f):
        w = img.ray
        pushed = pushforward(f, w)
        if pushed == (0, 0):
            return False
        if tuple(img.multiplicity * c for c in img.image) != pushed:
            return False
        for i, j in exps:
            pulled = (f.a * i + f.b * j, f.c * i + f.d * j)
            if pushed[0] * i + pushed[1] * j != w[0] * pulled[0] + w[1] * pulled[1]:
                return False
    return True
