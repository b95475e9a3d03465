from fractions import Fraction

import numpy as np
import pytest
import sympy
from hypothesis import assume, given, settings, strategies as st
from scipy.optimize import linprog

from circinf.errors import DegenerateForm, NoRecurrence, NotQuadratic
from circinf.lattice import (QuadraticInteger, Recurrence, SymForm, dominant_quadratic, dual_basis,
                             feasible_positive, fit_recurrence, inertia)
from circinf.quadratic import QuadNum

TRIANGLE = [[-1, 1, 1], [1, -1, 1], [1, 1, -1]]
SQUARE = [[0, 1, 0, 1], [1, 0, 1, 0], [0, 1, 0, 1], [1, 0, 1, 0]]
NODAL = [[5, 2], [2, -1]]


def descartes_inertia(m):
    """Oracle: sign changes of the characteristic polynomial of a symmetric
    matrix count its positive roots exactly (all roots are real)."""
    x = sympy.Symbol("x")
    p = sympy.Matrix(m).charpoly(x)
    coeffs = p.all_coeffs()
    zero = 0
    while coeffs and coeffs[-1] == 0:
        coeffs.pop()
        zero += 1

    def changes(cs):
        cs = [c for c in cs if c != 0]
        return sum(1 for a, b in zip(cs, cs[1:]) if (a > 0) != (b > 0))

    neg = [c * (-1) ** (len(coeffs) - 1 - i) for i, c in enumerate(coeffs)]
    return changes(coeffs), changes(neg), zero


@st.composite
def sym_matrices(draw, max_n=6, lo=-4, hi=4):
    n = draw(st.integers(1, max_n))
    m = [[0] * n for _ in range(n)]
    for i in range(n):
        for j in range(i, n):
            m[i][j] = m[j][i] = draw(st.integers(lo, hi))
    return m


@st.composite
def unimodular(draw, n):
    p = sympy.eye(n)
    for _ in range(draw(st.integers(0, 8))):
        i, j = draw(st.integers(0, n - 1)), draw(st.integers(0, n - 1))
        if i != j:
            e = sympy.eye(n)
            e[i, j] = draw(st.integers(-3, 3))
            p = p * e
    scale = [draw(st.sampled_from([1, 2, Fraction(1, 3), -1])) for _ in range(n)]
    return [[Fraction(int(p[i, j])) * scale[j] for j in range(n)] for i in range(n)]


def test_symform_checks_symmetry():
    with pytest.raises(ValueError):
        SymForm(((1, 2), (3, 4)))
    with pytest.raises(ValueError):
        SymForm(((1, 2),))


@pytest.mark.parametrize("m, expected", [
    (TRIANGLE, (1, 2, 0)),
    ([[0] * 3] * 3, (0, 0, 3)),
    (SQUARE, (1, 1, 2)),
    (NODAL, (1, 1, 0)),
    ([[0, 1], [1, 0]], (1, 1, 0)),
])
def test_inertia_examples(m, expected):
    assert tuple(inertia(SymForm(m))) == expected
    assert descartes_inertia(m) == expected


@settings(max_examples=200)
@given(sym_matrices())
def test_inertia_matches_descartes(m):
    assert tuple(inertia(SymForm(m))) == descartes_inertia(m)


@given(st.data())
def test_inertia_congruence_invariant(data):
    m = data.draw(sym_matrices(max_n=5))
    p = data.draw(unimodular(len(m)))
    assert inertia(SymForm(m).congruent(p)) == inertia(SymForm(m))


def test_dual_basis_triangle():
    half = Fraction(1, 2)
    assert dual_basis(SymForm(TRIANGLE)) == ((0, half, half), (half, 0, half), (half, half, 0))


def test_dual_basis_nodal_frozen():
    # frozen from sympy's Matrix.inv on [[5,2],[2,-1]]
    assert dual_basis(SymForm(NODAL)) == ((Fraction(1, 9), Fraction(2, 9)), (Fraction(2, 9), Fraction(-5, 9)))


def test_dual_basis_identity_and_degenerate():
    assert dual_basis(SymForm([[1, 0], [0, 1]])) == ((1, 0), (0, 1))
    with pytest.raises(DegenerateForm, match="nullity 2"):
        dual_basis(SymForm(SQUARE))


@settings(max_examples=200)
@given(sym_matrices())
def test_dual_basis_is_inverse(m):
    form = SymForm(m)
    assume(sympy.Matrix(m).det() != 0)
    basis = dual_basis(form)
    n = form.n
    for i, d in enumerate(basis):
        assert form.apply(d) == tuple(int(i == j) for j in range(n))
    inv = sympy.Matrix(m).inv()
    assert all(basis[i][j] == Fraction(int(inv[i, j].p), int(inv[i, j].q)) for i in range(n) for j in range(n))


def test_feasible_examples():
    assert feasible_positive(SymForm(TRIANGLE)) == (1, 1, 1)
    h = feasible_positive(SymForm(NODAL))
    assert h == (1, 1) and SymForm(NODAL).apply(h) == (7, 1)
    assert feasible_positive(SymForm([[-2]])) is None


def test_feasible_falls_back_to_elimination():
    # h2/h1 must lie in (1000/1999, 1999/3995): no fraction of height <= 64 does
    m = [[-1000, 1999], [1999, -3995]]
    h = feasible_positive(SymForm(m))
    assert h is not None and all(x > 0 for x in h) and all(x > 0 for x in SymForm(m).apply(h))


def lp_feasible(m) -> bool:
    n = len(m)
    a = -np.vstack([np.eye(n), np.array(m, dtype=float)])
    res = linprog(np.zeros(n), A_ub=a, b_ub=-np.ones(2 * n), bounds=[(None, None)] * n, method="highs")
    return res.status == 0


@settings(max_examples=150)
@given(sym_matrices(max_n=4))
def test_feasible_agrees_with_lp(m):
    h = feasible_positive(SymForm(m))
    if h is not None:
        assert all(x > 0 for x in h) and all(x > 0 for x in SymForm(m).apply(h))
    assert (h is not None) == lp_feasible(m)


@pytest.mark.parametrize("seq, order, coeffs", [
    ([1, 5, 21, 89], 2, (4, 1)),
    ([1, 1, 1, 1], 1, (1,)),
    ([1, 2, 4, 8, 16], 1, (2,)),
    ([1, 3, 5, 7, 9], 2, (2, -1)),
    ([0, 0, 0, 0], 1, (0,)),
])
def test_fit_recurrence_examples(seq, order, coeffs):
    rec = fit_recurrence(seq)
    assert (rec.order, rec.coeffs) == (order, coeffs)


def test_fit_recurrence_errors():
    with pytest.raises(ValueError):
        fit_recurrence([1, 2, 3])
    with pytest.raises(NoRecurrence):
        fit_recurrence([1, 0, 0, 0, 0, 1])


def has_recurrence_of_order(seq, k) -> bool:
    """Brute force: is the linear system for order-k coefficients consistent?"""
    if k == 0:
        return all(x == 0 for x in seq)
    rows = [seq[n - k:n][::-1] for n in range(k, len(seq))]
    if not rows:
        return True
    a = sympy.Matrix(rows)
    b = sympy.Matrix(seq[k:])
    return a.rank() == a.row_join(b).rank()


@given(st.integers(1, 3), st.data())
def test_fit_recurrence_minimal(k, data):
    coeffs = data.draw(st.lists(st.integers(-3, 3), min_size=k, max_size=k))
    seq = data.draw(st.lists(st.integers(-5, 5), min_size=k, max_size=k))
    while len(seq) < 2 * k + 4:
        seq.append(sum(c * seq[-i] for i, c in enumerate(coeffs, 1)))
    rec = fit_recurrence(seq)
    assert rec.reproduces([Fraction(x) for x in seq])
    assert rec.order <= k
    if rec.order > 1:
        assert not has_recurrence_of_order(seq, rec.order - 1)


@pytest.mark.parametrize("coeffs, value, disc", [
    ((4, 1), QuadNum(2, 1, 5), 20),
    ((2,), QuadNum(2), 4),
    ((1, 1), QuadNum(Fraction(1, 2), Fraction(1, 2), 5), 5),
    ((2, -1), QuadNum(1), 0),
])
def test_dominant_quadratic_examples(coeffs, value, disc):
    q = dominant_quadratic(Recurrence(len(coeffs), coeffs))
    assert q.value == value and q.disc == disc


@pytest.mark.parametrize("poly_roots_expr, expected", [
    ("(x-1)*(x**2-4*x-1)", QuadNum(2, 1, 5)),
    ("(x-1)**3", QuadNum(1)),
    ("(x-2)**2*(x-3)", QuadNum(3)),
    ("(x+1)*(x**2-6*x+1)", QuadNum(3, 2, 2)),
])
def test_dominant_quadratic_higher_order(poly_roots_expr, expected):
    x = sympy.Symbol("x")
    cs = sympy.Poly(sympy.sympify(poly_roots_expr), x).all_coeffs()
    rec = Recurrence(len(cs) - 1, tuple(-int(c) for c in cs[1:]))
    q = dominant_quadratic(rec)
    assert q.value == expected
    # the certificate divides the characteristic polynomial
    quad = sympy.Poly(x ** 2 - q.t * x - q.n, x) if q.n or q.disc != q.t ** 2 else sympy.Poly(x - q.t, x)
    assert sympy.rem(sympy.Poly(cs, x), quad).is_zero


def test_dominant_quadratic_rejections():
    with pytest.raises(NotQuadratic):
        dominant_quadratic(Recurrence(2, (0, -1)))          # complex roots
    with pytest.raises(NotQuadratic):
        dominant_quadratic(Recurrence(1, (Fraction(1, 2),)))
    with pytest.raises(NotQuadratic):
        dominant_quadratic(Recurrence(3, (0, 0, 2)))        # cube root of 2
    with pytest.raises(NotQuadratic):
        dominant_quadratic(Recurrence(3, (0, 0, 8)))        # 2 ties with a complex pair


def test_dominant_quadratic_sign_tie():
    # roots +-2 both have modulus 2; the growth rate is still 2
    assert dominant_quadratic(Recurrence(2, (0, 4))).value == 2
    assert dominant_quadratic(Recurrence(3, (1, 4, -4))).value == 2


@given(st.integers(1, 30), st.integers(-10, 30))
def test_quadratic_integer_relation(t, n):
    q = QuadraticInteger(t, n)
    assume(q.disc >= 0)
    lam = q.value
    assert lam * lam == t * lam + n


def test_char_poly_strings():
    assert QuadraticInteger(4, 1).char_poly_str() == "x^2 - 4x - 1"
    assert QuadraticInteger(1, 1).char_poly_str() == "x^2 - x - 1"
    assert QuadraticInteger(3, -1).char_poly_str() == "x^2 - 3x + 1"
    assert str(Recurrence(2, (4, 1))) == "a[n] = 4*a[n-1] + a[n-2]"
    assert str(Recurrence(2, (2, -1))) == "a[n] = 2*a[n-1] - a[n-2]"
