"""Exact rational linear algebra for boundary lattices.

All scalars are :class:`fractions.Fraction`. Matrices are tuples of tuples,
vectors are tuples; nothing here mutates its inputs.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction

import flint
from math import lcm
from typing import NamedTuple, Sequence

import mpmath
import sympy

from .errors import DegenerateForm, NoRecurrence, NotQuadratic
from .quadratic import QuadNum

Vector = tuple  # tuple[Fraction, ...]


def frac_str(x) -> str:
    """Render an exact rational as ``"p"`` or ``"p/q"``."""
    x = Fraction(x)
    return str(x.numerator) if x.denominator == 1 else f"{x.numerator}/{x.denominator}"


def dot(u: Sequence, v: Sequence) -> Fraction:
    return Fraction(sum(a * b for a, b in zip(u, v)))


@dataclass(frozen=True)
class SymForm:
    """A symmetric bilinear form on Q^n given by its Gram matrix."""

    entries: tuple

    def __post_init__(self):
        rows = tuple(tuple(Fraction(x) for x in row) for row in self.entries)
        n = len(rows)
        if any(len(r) != n for r in rows):
            raise ValueError("Gram matrix must be square")
        for i in range(n):
            for j in range(i):
                if rows[i][j] != rows[j][i]:
                    raise ValueError(f"Gram matrix not symmetric at ({i}, {j})")
        object.__setattr__(self, "entries", rows)

    @property
    def n(self) -> int:
        return len(self.entries)

    def apply(self, v: Sequence) -> Vector:
        return tuple(dot(row, v) for row in self.entries)

    def pair(self, u: Sequence, v: Sequence) -> Fraction:
        return dot(u, self.apply(v))

    def congruent(self, p: Sequence[Sequence]) -> "SymForm":
        """The form ``P^T M P``."""
        n = self.n
        mp = [[dot(self.entries[i], [p[k][j] for k in range(n)]) for j in range(n)] for i in range(n)]
        return SymForm(tuple(tuple(dot([p[k][i] for k in range(n)], [mp[k][j] for k in range(n)])
                                   for j in range(n)) for i in range(n)))


class Inertia(NamedTuple):
    plus: int
    minus: int
    zero: int

    @property
    def is_minkowski(self) -> bool:
        return self.zero == 0 and self.plus == 1


def inertia(form: SymForm) -> Inertia:
    """Sylvester inertia by symmetric Gaussian elimination.

    Pivots are taken on the diagonal, first nonzero entry by index. When the
    remaining diagonal vanishes but an off-diagonal entry ``a_ij`` does not,
    row/column ``i`` is replaced by ``i + j`` which creates the pivot ``2 a_ij``.
    """
    a = [list(row) for row in form.entries]
    n = len(a)
    plus = minus = 0
    active = list(range(n))
    while active:
        piv = next((i for i in active if a[i][i] != 0), None)
        if piv is None:
            pair = next(((i, j) for i in active for j in active if j > i and a[i][j] != 0), None)
            if pair is None:
                break
            i, j = pair
            for k in range(n):
                a[i][k] += a[j][k]
            for k in range(n):
                a[k][i] += a[k][j]
            piv = i
        p = a[piv][piv]
        if p > 0:
            plus += 1
        else:
            minus += 1
        active.remove(piv)
        for r in active:
            if a[r][piv] == 0:
                continue
            f = a[r][piv] / p
            for c in range(n):
                a[r][c] -= f * a[piv][c]
        for r in active:
            a[piv][r] = a[r][piv] = Fraction(0)
    return Inertia(plus, minus, n - plus - minus)


def _fmpq(x) -> flint.fmpq:
    if isinstance(x, int):
        return flint.fmpq(x)
    x = Fraction(x)
    return flint.fmpq(x.numerator, x.denominator)


def solve(matrix: Sequence[Sequence], rhs: Sequence[Sequence]) -> list[list[Fraction]]:
    """Solve ``M X = B`` exactly (columns of ``rhs`` are right-hand sides).

    Raises DegenerateForm if ``M`` is singular.
    """
    n = len(matrix)
    m = len(rhs[0]) if n else 0
    a = flint.fmpq_mat(n, n, [_fmpq(x) for row in matrix for x in row])
    b = flint.fmpq_mat(n, m, [_fmpq(x) for row in rhs for x in row])
    try:
        x = a.solve(b)
    except ZeroDivisionError:
        raise DegenerateForm("singular matrix") from None
    return [[Fraction(int(x[i, j].p), int(x[i, j].q)) for j in range(m)] for i in range(n)]


def dual_basis(form: SymForm) -> tuple[Vector, ...]:
    """Vectors ``D_i`` with ``form . D_i = e_i``.

    These are the coefficient vectors of the dual classes; since the form is
    symmetric they are the rows of its inverse.
    """
    n = form.n
    if n == 0:
        return ()
    ident = [[Fraction(int(i == j)) for j in range(n)] for i in range(n)]
    try:
        inv = solve(form.entries, ident)
    except DegenerateForm:
        nullity = inertia(form).zero
        raise DegenerateForm(f"intersection form has nullity {nullity}") from None
    return tuple(tuple(inv[k][i] for k in range(n)) for i in range(n))


# -- positive feasibility --------------------------------------------------

SEARCH_HEIGHT = 64
SEARCH_BUDGET = 50_000


def _is_positive_solution(form: SymForm, h) -> bool:
    return all(x > 0 for x in h) and all(x > 0 for x in form.apply(h))


def feasible_positive(form: SymForm) -> Vector | None:
    """Find ``H > 0`` with ``form . H > 0`` coordinatewise, or return None.

    Small integer vectors are tried first (all ones, then increasing height up
    to 64 within a fixed candidate budget). If none works the strict system is
    decided exactly by Fourier-Motzkin elimination.
    """
    n = form.n
    if n == 0:
        return None
    # a positive multiple of the form has the same answer; search in integers
    den = lcm(*(x.denominator for row in form.entries for x in row))
    rows = [[int(x * den) for x in row] for row in form.entries]
    count = 0
    for height in range(1, SEARCH_HEIGHT + 1):
        if height ** n - (height - 1) ** n + count > SEARCH_BUDGET:
            break
        for h in itertools.product(range(1, height + 1), repeat=n):
            if height not in h:
                continue
            count += 1
            if all(sum(a * b for a, b in zip(row, h)) > 0 for row in rows):
                return tuple(Fraction(x) for x in h)
    return _fourier_motzkin_positive(form)


def _normalize(row: tuple, rhs: Fraction):
    lead = next((abs(x) for x in row if x != 0), None)
    if lead is None:
        return row, rhs
    return tuple(x / lead for x in row), rhs / lead


def _fourier_motzkin_positive(form: SymForm) -> Vector | None:
    n = form.n
    # H >= 1 and M H >= 1 is equivalent to the strict homogeneous system.
    cons = {_normalize(tuple(Fraction(int(i == j)) for j in range(n)), Fraction(1)) for i in range(n)}
    cons |= {_normalize(row, Fraction(1)) for row in form.entries}
    systems = [cons]
    for var in range(n - 1, -1, -1):
        pos, neg, rest = [], [], set()
        for row, b in cons:
            c = row[var]
            if c > 0:
                pos.append((row, b))
            elif c < 0:
                neg.append((row, b))
            else:
                rest.add((row, b))
        for (rp, bp), (rn, bn) in itertools.product(pos, neg):
            fp, fn = -rn[var], rp[var]
            row = tuple(fp * x + fn * y for x, y in zip(rp, rn))
            b = fp * bp + fn * bn
            if all(x == 0 for x in row):
                if b > 0:
                    return None
                continue
            rest.add(_normalize(row, b))
        cons = rest
        systems.append(cons)
    if any(all(x == 0 for x in row) and b > 0 for row, b in cons):
        return None
    # back substitution: systems[n - k] involves only x_0..x_{k-1}
    values: list[Fraction] = []
    for k in range(n):
        lo, hi = None, None
        for row, b in systems[n - 1 - k]:
            c = row[k]
            if c == 0:
                continue
            bound = (b - dot(row[:k], values)) / c
            if c > 0:
                lo = bound if lo is None else max(lo, bound)
            else:
                hi = bound if hi is None else min(hi, bound)
        if lo is not None and hi is not None and lo > hi:
            return None
        values.append(lo if lo is not None else (hi if hi is not None else Fraction(1)))
    scale = lcm(*(v.denominator for v in values))
    h = tuple(v * scale for v in values)
    return h if _is_positive_solution(form, h) else None


# -- recurrences -----------------------------------------------------------

@dataclass(frozen=True)
class Recurrence:
    """``a_n = c_1 a_{n-1} + ... + c_k a_{n-k}`` for every ``n >= k``."""

    order: int
    coeffs: tuple

    def next_term(self, history: Sequence) -> Fraction:
        return sum((c * history[-i] for i, c in enumerate(self.coeffs, 1)), Fraction(0))

    def reproduces(self, seq: Sequence) -> bool:
        k = self.order
        return all(self.next_term(seq[:n]) == seq[n] for n in range(k, len(seq)))

    @property
    def is_integral(self) -> bool:
        return all(Fraction(c).denominator == 1 for c in self.coeffs)

    def char_poly(self) -> list[Fraction]:
        """Coefficients, highest degree first, of ``x^k - c_1 x^{k-1} - ... - c_k``."""
        return [Fraction(1)] + [-Fraction(c) for c in self.coeffs]

    def __str__(self):
        out = ""
        for i, c in enumerate(self.coeffs, 1):
            if c == 0:
                continue
            mag = abs(Fraction(c))
            term = f"a[n-{i}]" if mag == 1 else f"{frac_str(mag)}*a[n-{i}]"
            if not out:
                out = term if c > 0 else f"-{term}"
            else:
                out += f" + {term}" if c > 0 else f" - {term}"
        return "a[n] = " + (out or "0")


def fit_recurrence(seq: Sequence) -> Recurrence:
    """Minimal linear recurrence through ``seq`` (Berlekamp-Massey over Q).

    Only recurrences of order at most ``len(seq) // 2`` are accepted, since
    beyond that every sequence fits and the answer says nothing.
    """
    s = [Fraction(x) for x in seq]
    if len(s) < 4:
        raise ValueError("need at least 4 terms to fit a recurrence")
    conn = [Fraction(1)]   # connection polynomial C(x)
    prev = [Fraction(1)]   # B(x)
    length, shift, prev_disc = 0, 1, Fraction(1)
    for n in range(len(s)):
        disc = s[n] + sum(conn[i] * s[n - i] for i in range(1, length + 1))
        if disc == 0:
            shift += 1
            continue
        factor = disc / prev_disc
        update = [Fraction(0)] * shift + [factor * b for b in prev]
        new = conn + [Fraction(0)] * max(0, len(update) - len(conn))
        for i, u in enumerate(update):
            new[i] -= u
        if 2 * length <= n:
            prev, prev_disc = conn, disc
            length, shift = n + 1 - length, 1
        else:
            shift += 1
        conn = new
    if 2 * length > len(s):
        raise NoRecurrence(f"no recurrence of order <= {len(s) // 2} fits {len(s)} terms")
    order = max(length, 1)
    conn = conn + [Fraction(0)] * (order + 1 - len(conn))
    rec = Recurrence(order, tuple(-conn[i] for i in range(1, order + 1)))
    assert rec.reproduces(s)
    return rec


# -- quadratic integers ----------------------------------------------------

@dataclass(frozen=True)
class QuadraticInteger:
    """The larger root of ``x^2 - t x - n`` (real, at least 1)."""

    t: int
    n: int

    @property
    def disc(self) -> int:
        return self.t * self.t + 4 * self.n

    @property
    def value(self) -> QuadNum:
        return (self.t + QuadNum.sqrt(self.disc)) / 2

    @property
    def conjugate(self) -> QuadNum:
        return (self.t - QuadNum.sqrt(self.disc)) / 2

    @property
    def is_rational(self) -> bool:
        return self.value.is_rational

    def char_poly_str(self) -> str:
        t, n = self.t, self.n
        s = "x^2"
        if t:
            mono = "x" if abs(t) == 1 else f"{abs(t)}x"
            s += f" - {mono}" if t > 0 else f" + {mono}"
        if n:
            s += f" - {n}" if n > 0 else f" + {-n}"
        return s

    def __str__(self):
        return str(self.value)


def dominant_quadratic(rec: Recurrence) -> QuadraticInteger:
    """Certify the dominant root of ``rec`` as a quadratic integer.

    Orders 1 and 2 are read off directly. For higher orders the characteristic
    polynomial is factored over Z and the irreducible factor carrying the
    dominant root must have degree at most 2.
    """
    if not rec.is_integral:
        raise NotQuadratic(f"recurrence {rec} has non-integer coefficients")
    c = [int(x) for x in rec.coeffs]
    if rec.order == 1:
        if c[0] < 1:
            raise NotQuadratic(f"dominant root {c[0]} is below 1")
        return QuadraticInteger(c[0], 0)
    if rec.order == 2:
        q = QuadraticInteger(c[0], c[1])
        if q.disc < 0:
            raise NotQuadratic("complex characteristic roots, no real dominant root")
        if q.value < 1 or abs(q.conjugate) > q.value:
            raise NotQuadratic(f"root {q.value} does not dominate")
        return q
    return _search_quadratic_factor(rec)


def _search_quadratic_factor(rec: Recurrence) -> QuadraticInteger:
    x = sympy.Symbol("x")
    poly = sympy.Poly([int(c) for c in rec.char_poly()], x)
    sqf = sympy.Poly(sympy.sqf_part(poly.as_expr()), x)
    with mpmath.workdps(50):
        try:
            roots = mpmath.polyroots([int(c) for c in sqf.all_coeffs()], maxsteps=400, extraprec=300)
        except mpmath.libmp.NoConvergence:
            raise NotQuadratic("root isolation did not converge") from None
        top = max(abs(r) for r in roots)
        tol = mpmath.mpf(10) ** -25
        dominant = [r for r in roots if abs(abs(r) - top) < tol]
        # a tie with -lambda still gives growth rate lambda; a complex tie does not
        positive = [r for r in dominant if abs(mpmath.im(r)) < tol and mpmath.re(r) > 0]
        if (any(abs(mpmath.im(r)) > tol for r in dominant) or len(positive) != 1
                or mpmath.re(positive[0]) < 1 - tol):
            raise NotQuadratic("characteristic polynomial has no real dominant root >= 1")
        lam = mpmath.re(positive[0])
        # Gauss's lemma: the monic integer divisors are products of these factors
        for factor, _ in poly.factor_list()[1]:
            coeffs = [int(c) for c in factor.monic().all_coeffs()]
            if len(coeffs) > 3:
                continue
            if not any(abs(r - lam) < tol for r in mpmath.polyroots(coeffs, extraprec=100)):
                continue
            if len(coeffs) == 2:
                return QuadraticInteger(-coeffs[1], 0)
            return QuadraticInteger(-coeffs[1], -coeffs[2])
    raise NotQuadratic("dominant root is not a quadratic integer")
