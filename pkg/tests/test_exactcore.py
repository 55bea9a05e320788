"""Exact scalar domains and the pinned-pivot linear algebra kernel."""

from fractions import Fraction

import pytest
import sympy
from hypothesis import given, settings, strategies as st

import flatunitary._univar as up
from flatunitary.exactcore import (
    DomainMismatchError,
    Jet,
    JetSystemSolver,
    LiftInconsistencyError,
    LinearSolver,
    Matrix,
    PrecisionExhaustedError,
    RatFun,
    full_column_rank_certificate,
    kernel_basis,
    lift_solve,
    rref,
)
from oracles import naive_rref, naive_solve

t = sympy.Symbol("t")

fractions_st = st.fractions(min_value=-5, max_value=5, max_denominator=6)


def poly_st(max_deg, allow_zero=True):
    return st.lists(fractions_st, min_size=0 if allow_zero else 1, max_size=max_deg + 1)


def _sym_poly(coeffs):
    return sum(sympy.Rational(c) * t**k for k, c in enumerate(coeffs))


def _ratfun_to_sym(r):
    return _sym_poly(r.num) / _sym_poly(r.den)


# ---------------------------------------------------------------------------
# rational functions in t


class TestRatFun:
    def test_denominator_is_monic_and_coprime(self):
        r = RatFun((0, 2), (8, 0, -2))  # 2t / (8 - 2t^2)
        assert r.den[-1] == 1
        # gcd(num, den) = 1: multiplying both by (t - 3) must cancel back
        h = (-3, 1)
        assert RatFun(up.pmul(r.num, h), up.pmul(r.den, h)) == r

    def test_zero_denominator_rejected(self):
        with pytest.raises(ZeroDivisionError):
            RatFun(up.ONE, up.ZERO)
        with pytest.raises(ZeroDivisionError):
            RatFun(up.ONE) / RatFun(up.ZERO)

    @settings(max_examples=60, deadline=None)
    @given(poly_st(3), poly_st(2, allow_zero=False), poly_st(3), poly_st(2, allow_zero=False))
    def test_field_ops_match_sympy(self, n1, d1, n2, d2):
        if not any(d1) or not any(d2):
            return
        a = RatFun(tuple(n1), tuple(d1))
        b = RatFun(tuple(n2), tuple(d2))
        for result, expected in [
            (a + b, _ratfun_to_sym(a) + _ratfun_to_sym(b)),
            (a - b, _ratfun_to_sym(a) - _ratfun_to_sym(b)),
            (a * b, _ratfun_to_sym(a) * _ratfun_to_sym(b)),
        ]:
            assert sympy.simplify(_ratfun_to_sym(result) - expected) == 0

    @settings(max_examples=30, deadline=None)
    @given(poly_st(3), poly_st(2, allow_zero=False))
    def test_derivative_matches_sympy(self, num, den):
        if not any(den):
            return
        r = RatFun(tuple(num), tuple(den))
        got = _ratfun_to_sym(r.derivative())
        want = sympy.diff(_ratfun_to_sym(r), t)
        assert sympy.simplify(got - want) == 0

    def test_evaluation(self):
        r = RatFun((0, 1), (4, 0, -1))  # t / (4 - t^2)
        assert r.evaluate(Fraction(1)) == Fraction(1, 3)
        assert r.evaluate(Fraction(-3)) == Fraction(3, 5)
        with pytest.raises(ZeroDivisionError):
            r.evaluate(Fraction(2))


# ---------------------------------------------------------------------------
# jets


class TestJet:
    def test_strict_precision(self):
        with pytest.raises(DomainMismatchError):
            Jet((1, 2)) + Jet((1, 2, 3))
        assert Jet((1, 2)) != Jet((1, 2, 0))

    def test_rationals_broadcast(self):
        assert Jet((1, 2, 3)) + 1 == Jet((2, 2, 3))
        assert 2 * Jet((1, 2, 3)) == Jet((2, 4, 6))

    @settings(max_examples=60, deadline=None)
    @given(st.lists(fractions_st, min_size=1, max_size=5), st.data())
    def test_product_matches_truncated_series(self, a, data):
        b = data.draw(st.lists(fractions_st, min_size=len(a), max_size=len(a)))
        n = len(a)
        prod = Jet(a) * Jet(b)
        s = sympy.Symbol("s")
        sym = sympy.expand(_sym_poly(a).subs(t, s) * _sym_poly(b).subs(t, s))
        want = [sympy.Rational(sym.coeff(s, k)) for k in range(n)]
        assert list(prod.coeffs) == [Fraction(w.p, w.q) for w in want]

    def test_derivative_drops_one_order(self):
        j = Jet((Fraction(5), Fraction(1, 2), Fraction(7), Fraction(-2)))
        assert j.derivative() == Jet((Fraction(1, 2), 14, -6))
        with pytest.raises(PrecisionExhaustedError):
            Jet((1,)).derivative()

    def test_truncate(self):
        j = Jet((1, 2, 3))
        assert j.truncate(2) == Jet((1, 2))
        with pytest.raises(ValueError):
            j.truncate(4)
        with pytest.raises(ValueError):
            j.truncate(0)


# ---------------------------------------------------------------------------
# elimination over Q, cross-checked against a textbook implementation


matrix_st = st.integers(min_value=1, max_value=5).flatmap(
    lambda n: st.integers(min_value=1, max_value=5).flatmap(
        lambda m: st.lists(
            st.lists(fractions_st, min_size=m, max_size=m), min_size=n, max_size=n
        )
    )
)


class TestRationalElimination:
    def test_known_full_rank_matrix(self):
        m = Matrix([[Fraction(1, 2), Fraction(1, 3)], [Fraction(1, 5), Fraction(1, 7)]])
        res = rref(m)
        assert res.rank == 2
        assert res.pivots == (0, 1)
        assert [list(r) for r in res.matrix.rows] == [[1, 0], [0, 1]]

    @settings(max_examples=80, deadline=None)
    @given(matrix_st)
    def test_rref_matches_naive(self, rows):
        res = rref(Matrix(rows))
        want_rows, want_pivots = naive_rref(rows)
        assert res.pivots == want_pivots
        assert res.rank == len(want_pivots)
        assert [list(r) for r in res.matrix.rows] == want_rows

    @settings(max_examples=80, deadline=None)
    @given(matrix_st, st.data())
    def test_solver_matches_naive(self, rows, data):
        rhs = data.draw(
            st.lists(fractions_st, min_size=len(rows), max_size=len(rows))
        )
        solver = LinearSolver(Matrix(rows))
        got = solver.try_solve(tuple(rhs))
        assert got == naive_solve(rows, rhs)
        if got is not None:
            residual = [
                sum(r * x for r, x in zip(row, got)) - b for row, b in zip(rows, rhs)
            ]
            assert all(v == 0 for v in residual)

    @settings(max_examples=60, deadline=None)
    @given(matrix_st)
    def test_kernel_dimension_and_membership(self, rows):
        m = Matrix(rows)
        basis = kernel_basis(m)
        assert len(basis) == m.ncols - rref(m).rank
        for v in basis:
            assert all(
                sum(r * x for r, x in zip(row, v)) == 0 for row in rows
            )

    def test_certificate_detects_column_rank(self):
        assert full_column_rank_certificate(
            Matrix([[1, 0], [0, 1], [1, 1]])
        )
        assert not full_column_rank_certificate(Matrix([[1, 2], [2, 4]]))


# ---------------------------------------------------------------------------
# elimination over Q(t)


def _ratfun_matrix(entries):
    return Matrix(
        [[RatFun(tuple(e)) if isinstance(e, tuple) else RatFun((e,)) for e in row]
         for row in entries]
    )


class TestRatFunElimination:
    def test_solve_with_parameter_denominators(self):
        # rows mix constants and polynomials in t; solution needs 1/(t^2-4)
        m = _ratfun_matrix([[(0, 1), 2], [1, (2, 1)]])
        b = (RatFun((1,)), RatFun((0,)))
        x = LinearSolver(m).try_solve(b)
        assert x is not None
        for row, want in zip(m.rows, b):
            acc = RatFun(up.ZERO)
            for r, xi in zip(row, x):
                acc = acc + r * xi
            assert acc == want

    @settings(max_examples=40, deadline=None)
    @given(
        st.lists(
            st.lists(
                st.tuples(fractions_st, fractions_st), min_size=3, max_size=3
            ),
            min_size=2,
            max_size=4,
        ),
        st.data(),
    )
    def test_random_linear_systems_verify_exactly(self, raw, data):
        rows = [[RatFun(pair) for pair in row] for row in raw]
        m = Matrix(rows, ncols=3)
        rhs = data.draw(
            st.lists(
                st.tuples(fractions_st, fractions_st),
                min_size=len(rows),
                max_size=len(rows),
            )
        )
        b = tuple(RatFun(pair) for pair in rhs)
        x = LinearSolver(m).try_solve(b)
        if x is None:
            # inconsistency must be genuine: rank of [M|b] exceeds rank of M
            aug = Matrix(
                [list(row) + [bi] for row, bi in zip(rows, b)], ncols=4
            )
            assert rref(aug).rank == rref(m).rank + 1
            return
        for row, want in zip(rows, b):
            acc = RatFun(up.ZERO)
            for r, xi in zip(row, x):
                acc = acc + r * xi
            assert acc == want

    def test_kernel_over_ratfun(self):
        # t * col0 - col1 = 0 by construction
        rows = [[RatFun((1,)), RatFun((0, 1))], [RatFun((0, 1)), RatFun((0, 0, 1))]]
        basis = kernel_basis(Matrix(rows))
        assert len(basis) == 1
        v = basis[0]
        for row in rows:
            acc = RatFun(up.ZERO)
            for r, xi in zip(row, v):
                acc = acc + r * xi
            assert acc.is_zero


# ---------------------------------------------------------------------------
# jet systems solved order by order


class TestJetSystems:
    def test_geometric_series_inverse(self):
        m = Matrix([[Jet((1, 1, 0))]])  # (1 + s) x = 1
        sol = lift_solve(m, (Jet((1, 0, 0)),))
        assert sol.particular == (Jet((1, -1, 1)),)
        assert sol.homogeneous == ()

    def test_upper_triangular_system(self):
        m = Matrix([[Jet((2, 0)), Jet((0, 1))], [Jet((0, 0)), Jet((1, 0))]])
        sol = lift_solve(m, (Jet((2, 1)), Jet((1, 0))))
        assert sol.particular == (Jet((1, 0)), Jet((1, 0)))

    def test_order0_kernel_is_lifted(self):
        # column 2 = 2 * column 1 at every order
        m = Matrix([[Jet((1, 1)), Jet((2, 2))]])
        sol = lift_solve(m, (Jet((0, 0)),))
        assert len(sol.homogeneous) == 1

    def test_first_obstructed_order_is_reported(self):
        # s * x = s has the solution x = 1, but the order-0 pass pins the
        # free variable to zero, so the obstruction surfaces at order one
        m = Matrix([[Jet((0, 1))]])
        solver = JetSystemSolver(m)
        got, fail = solver.try_solve((Jet((0, 1)),))
        assert got is None and fail == 1
        with pytest.raises(LiftInconsistencyError) as exc:
            lift_solve(m, (Jet((0, 1)),))
        assert exc.value.order == 1

    def test_prescribed_order0_value(self):
        # extending a chosen order-0 kernel vector through one more order
        m = Matrix([[Jet((0, 1)), Jet((0, 2))]])
        solver = JetSystemSolver(m)
        got, fail = solver.try_solve(
            (Jet((0, 0)),), order0_value=[Fraction(2), Fraction(-1)]
        )
        assert fail is None
        assert got[0].order0 == 2 and got[1].order0 == -1

    def test_field_matrix_rejected(self):
        with pytest.raises(DomainMismatchError):
            JetSystemSolver(Matrix([[Fraction(1)]]))
        with pytest.raises(DomainMismatchError):
            LinearSolver(Matrix([[Jet((1, 0))]]))
