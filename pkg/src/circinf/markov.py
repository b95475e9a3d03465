"""Cubic surfaces of Markov type and their Vieta involutions.

The family is ``x^2 + y^2 + z^2 = xyz + A x + B y + C z + D``. Read as a
quadratic in ``x`` the two roots sum to ``yz + A``; swapping them is the
involution ``s_x``, and likewise for ``y`` and ``z``. Words are read as
compositions, so the rightmost letter acts first.
"""

from __future__ import annotations

import warnings
from dataclasses import dataclass, field
from fractions import Fraction
from typing import NamedTuple, Sequence

import flint
import sympy

from .errors import DegreeOverflow, InvalidPoint, InvalidWord
from .lattice import QuadraticInteger, Recurrence, dominant_quadratic, fit_recurrence

LETTERS = "xyz"
_IDX = {c: i for i, c in enumerate(LETTERS)}


@dataclass(frozen=True)
class MarkovSurface:
    A: Fraction = Fraction(0)
    B: Fraction = Fraction(0)
    C: Fraction = Fraction(0)
    D: Fraction = Fraction(0)

    def __post_init__(self):
        for name in "ABCD":
            object.__setattr__(self, name, Fraction(getattr(self, name)))

    @property
    def linear(self) -> tuple[Fraction, Fraction, Fraction]:
        return (self.A, self.B, self.C)

    def level(self, p: Sequence) -> Fraction:
        """``x^2 + y^2 + z^2 - xyz - Ax - By - Cz``; preserved by every involution."""
        x, y, z = (Fraction(t) for t in p)
        return x * x + y * y + z * z - x * y * z - self.A * x - self.B * y - self.C * z

    def residual(self, p: Sequence) -> Fraction:
        return self.level(p) - self.D

    def contains(self, p: Sequence) -> bool:
        return self.residual(p) == 0

    def __str__(self):
        from .lattice import frac_str
        return "(" + ",".join(frac_str(v) for v in (self.A, self.B, self.C, self.D)) + ")"


CAYLEY = MarkovSurface(0, 0, 0, 4)
GENERIC = MarkovSurface(1, 2, 3, 5)


class OrbitPoint(NamedTuple):
    x: Fraction
    y: Fraction
    z: Fraction
    residual: Fraction


class DegreeState(NamedTuple):
    dx: int
    dy: int
    dz: int


def _check_word(word: str) -> str:
    word = str(word)
    bad = set(word) - set(LETTERS)
    if bad:
        raise InvalidWord(f"words use the letters x, y, z only (got {''.join(sorted(bad))!r})")
    return word


def is_reduced(word: str) -> bool:
    return all(a != b for a, b in zip(word, word[1:]))


def reduce_word(word: str) -> str:
    """Cancel adjacent repeated letters until none remain."""
    out: list[str] = []
    for c in _check_word(word):
        if out and out[-1] == c:
            out.pop()
        else:
            out.append(c)
    return "".join(out)


def cyclic_reduce(word: str) -> str:
    w = reduce_word(word)
    while len(w) >= 2 and w[0] == w[-1]:
        w = w[1:-1]
    return w


def vieta(letter: str, S: MarkovSurface, p: Sequence) -> tuple[Fraction, Fraction, Fraction]:
    q = [Fraction(t) for t in p]
    i = _IDX[letter]
    j, k = (m for m in range(3) if m != i)
    q[i] = q[j] * q[k] + S.linear[i] - q[i]
    return tuple(q)


def apply_word(word: str, S: MarkovSurface, p: Sequence) -> tuple[Fraction, Fraction, Fraction]:
    for c in reversed(_check_word(word)):
        p = vieta(c, S, p)
    return tuple(Fraction(t) for t in p)


def orbit(S: MarkovSurface, word: str, start: Sequence, steps: int,
          per_letter: bool = False) -> list[OrbitPoint]:
    """Points after each of ``steps`` applications of the word map.

    With ``per_letter`` every single involution is recorded instead, so
    ``steps`` then counts letters (the word is read right to left, cyclically).
    """
    word = _check_word(word)
    if not word:
        raise InvalidWord("empty word")
    p = tuple(Fraction(t) for t in start)
    out = []
    letters = word[::-1]
    for n in range(steps):
        if per_letter:
            p = vieta(letters[n % len(letters)], S, p)
        else:
            p = apply_word(word, S, p)
        out.append(OrbitPoint(*p, S.residual(p)))
    return out


# -- degree growth --------------------------------------------------------

@dataclass(frozen=True)
class MaxPlusRun:
    word: str
    states: list
    reduced_from: str | None = None

    @property
    def max_sequence(self) -> list[int]:
        """Maximal degree before the first and after each application."""
        return [1] + [max(s) for s in self.states]


def _maxplus(word: str) -> DegreeState:
    d = [1, 1, 1]
    for c in reversed(word):
        i = _IDX[c]
        j, k = (m for m in range(3) if m != i)
        d[i] = max(d[i], d[j] + d[k])
    return DegreeState(*d)


def maxplus_degrees(word: str, applications: int, reduce: bool = True) -> MaxPlusRun:
    """Tropical degree bookkeeping: ``s_x`` sends ``d_x`` to ``max(d_x, d_y + d_z)``.

    The rule only predicts degrees of reduced words, so with ``reduce`` the
    n-th state is computed on the reduced form of ``word**n`` (a word like
    ``xyx`` cancels against its own square). ``reduce=False`` runs the raw
    word n times.
    """
    word = _check_word(word)
    original = None
    if reduce and not is_reduced(word):
        original, word = word, reduce_word(word)
        warnings.warn(f"word {original!r} reduced to {word!r}", stacklevel=2)
    if reduce:
        states = [_maxplus(reduce_word(word * n)) for n in range(1, applications + 1)]
    else:
        states = [_maxplus(word * n) for n in range(1, applications + 1)]
    return MaxPlusRun(word, states, original)


def composition_oracle(word: str, applications: int, S: MarkovSurface = GENERIC,
                       budget: int = 100) -> list[DegreeState]:
    """Exact total degrees of the coordinate polynomials of ``f^n``.

    The word map is composed symbolically with FLINT multivariate
    polynomials over QQ: applying ``s_x`` on the left of a map ``(X, Y, Z)``
    gives ``(Y Z + A - X, Y, Z)``. Raises DegreeOverflow (with the degrees
    computed so far) before an application whose max-plus bound exceeds
    ``budget``.
    """
    word = _check_word(word)
    ctx = flint.fmpq_mpoly_ctx.get(("x", "y", "z"), "deglex")
    lin = [flint.fmpq(a.numerator, a.denominator) for a in S.linear]
    polys = list(ctx.gens())
    degs = [1, 1, 1]
    out: list[DegreeState] = []
    for _ in range(applications):
        # max-plus from the current exact degrees bounds this application
        bound = list(degs)
        for c in reversed(word):
            i = _IDX[c]
            j, k = (m for m in range(3) if m != i)
            bound[i] = max(bound[i], bound[j] + bound[k])
        if max(bound) > budget:
            raise DegreeOverflow(f"degree budget {budget} exceeded", out)
        for c in reversed(word):
            i = _IDX[c]
            j, k = (m for m in range(3) if m != i)
            polys[i] = polys[j] * polys[k] + lin[i] - polys[i]
            degs[i] = polys[i].total_degree()
        out.append(DegreeState(*degs))
    return out


@dataclass(frozen=True)
class WordLambda:
    word: str                 # the cyclically reduced word actually used
    given: str
    sequence: list
    recurrence: Recurrence
    lam: QuadraticInteger
    notes: list = field(default_factory=list)

    @property
    def loxodromic(self) -> bool:
        return self.lam.value > 1


def lambda_of_word(word: str, depth: int = 8) -> WordLambda:
    """Dynamical degree of a Vieta word from its max-plus degree growth.

    The word is first cyclically reduced (conjugation does not change the
    dynamical degree). The maximal degrees over ``depth`` applications are
    fitted by a minimal integer recurrence whose dominant root is certified
    as a quadratic integer.
    """
    given = _check_word(word)
    w = cyclic_reduce(given)
    notes = []
    if w != given:
        notes.append(f"cyclically reduced {given!r} to {w!r}")
    if len(w) < 2:
        raise InvalidWord(f"word {given!r} reduces to {w!r}; need length >= 2")
    if depth < 6:
        raise InvalidWord("depth must be at least 6")
    seq = maxplus_degrees(w, depth).max_sequence
    rec = fit_recurrence(seq)
    lam = dominant_quadratic(rec)
    notes.append("lambda from ambient degree growth in affine 3-space")
    return WordLambda(w, given, seq, rec, lam, notes)


# -- singular points ------------------------------------------------------

@dataclass(frozen=True)
class SmoothnessVerdict:
    kind: str                   # "SmoothAffine", "SingularAt" or "Unknown"
    points: tuple = ()
    detail: str = ""


def _rational_roots(poly: sympy.Poly) -> list[Fraction]:
    out = []
    for factor, _ in poly.factor_list()[1]:
        if factor.degree() == 1:
            a, b = factor.all_coeffs()
            r = sympy.Rational(-b, a)
            out.append(Fraction(int(r.p), int(r.q)))
    return sorted(set(out))


def smoothness_screen(S: MarkovSurface) -> SmoothnessVerdict:
    """Rational singular points of the affine surface.

    ``dF/dx = 2x - yz - A`` is linear in ``x``; after substituting ``x`` the
    two remaining partials are eliminated with a resultant in ``z``. A
    Groebner basis equal to ``[1]`` certifies smoothness over the algebraic
    closure.
    """
    x, y, z = sympy.symbols("x y z")
    A, B, C, D = (sympy.Rational(v.numerator, v.denominator) for v in (S.A, S.B, S.C, S.D))
    F = x**2 + y**2 + z**2 - x*y*z - A*x - B*y - C*z - D
    grads = [sympy.diff(F, v) for v in (x, y, z)]
    gb = sympy.groebner([F, *grads], x, y, z, domain="QQ")
    if list(gb.exprs) == [1]:
        return SmoothnessVerdict("SmoothAffine", (), "no singular point over the algebraic closure")
    x_of = (y * z + A) / 2
    gy = sympy.expand(grads[1].subs(x, x_of))
    gz = sympy.expand(grads[2].subs(x, x_of))
    res = sympy.Poly(sympy.resultant(gy, gz, z), y)
    if res.is_zero:
        return SmoothnessVerdict("Unknown", (), "resultant vanishes identically")
    points = []
    for y0 in _rational_roots(res):
        yq = sympy.Rational(y0.numerator, y0.denominator)
        py = sympy.Poly(gy.subs(y, yq), z)
        pz = sympy.Poly(gz.subs(y, yq), z)
        common = sympy.gcd(py, pz)
        if common.is_zero:
            return SmoothnessVerdict("Unknown", (), f"one-parameter family of critical points at y = {y0}")
        for z0 in _rational_roots(common):
            zq = sympy.Rational(z0.numerator, z0.denominator)
            xq = x_of.subs({y: yq, z: zq})
            if F.subs({x: xq, y: yq, z: zq}) == 0:
                points.append((Fraction(int(xq.p), int(xq.q)), y0, z0))
    if points:
        return SmoothnessVerdict("SingularAt", tuple(sorted(points)))
    return SmoothnessVerdict("Unknown", (), "singular, but no rational singular point")


# -- the Cayley cubic as a torus quotient ---------------------------------

def cayley_point(u, v) -> tuple[Fraction, Fraction, Fraction]:
    u, v = Fraction(u), Fraction(v)
    if u == 0 or v == 0:
        raise InvalidPoint("torus coordinates must be nonzero")
    return (u + 1 / u, v + 1 / v, u * v + 1 / (u * v))


def cayley_quotient_check(samples: Sequence[Sequence]) -> bool:
    """``(u, v) -> (u + 1/u, v + 1/v, uv + 1/uv)`` lands on the Cayley cubic
    and identifies ``(u, v)`` with ``(1/u, 1/v)``."""
    for u, v in samples:
        p = cayley_point(u, v)
        if not CAYLEY.contains(p) or p != cayley_point(1 / Fraction(u), 1 / Fraction(v)):
            return False
    return True


def cayley_samples(n: int) -> list[tuple[Fraction, Fraction]]:
    """Deterministic nonzero rational grid of ``n`` torus points."""
    out = []
    k = 1
    while len(out) < n:
        u = Fraction((-1) ** k * k, k % 5 + 1)
        v = Fraction(k + 2, (-1) ** (k // 2) * (2 * k + 1))
        out.append((u, v))
        k += 1
    return out
