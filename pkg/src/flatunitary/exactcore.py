"""Exact scalar domains and deterministic linear algebra.

Three scalar domains, all exact: arbitrary-precision rationals
(fractions.Fraction), rational functions of one variable t with rational
coefficients (RatFun, kept coprime with monic denominator at every step),
and truncated power-series jets in s with a fixed precision (Jet; a jet of
precision N stores exactly N coefficients).

Linear algebra is pinned down to the last bit:

* rref scans columns left to right, picks the first nonzero entry at or
  below the next pivot position, swaps it up and never reorders otherwise;
  leading entries are normalized to 1.
* Internally, elimination over the rationals clears denominators row by row
  and runs a fraction-free (integer-preserving) Gauss-Jordan, normalizing
  only at the end; rational-function matrices do the same over polynomial
  entries. This keeps intermediate entries polynomial-sized instead of
  letting gcd-heavy fraction arithmetic dominate.
* kernel_basis emits one vector per free column, in increasing column
  order, with 1 at that free column and 0 at the other free columns.
* lift_solve solves M(s) x(s) = b(s) over jets order by order via the RREF
  of the order-0 matrix, reporting the first inconsistent order on failure.

Identical inputs give identical outputs regardless of the compiled-kernel
backend in use.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Optional, Sequence

from . import _univar as up
from ._kernels import ff_gauss_jordan_int, ff_gauss_jordan_ring


class ExactCoreError(Exception):
    """Base class for exact-arithmetic errors."""


class DomainMismatchError(ExactCoreError, TypeError):
    """Scalars from different domains (or different jet precisions) mixed."""


class InconsistentSystemError(ExactCoreError, ValueError):
    """A field linear system has no solution."""


class LiftInconsistencyError(ExactCoreError, ValueError):
    """A jet system became unsolvable at some order."""

    def __init__(self, order: int, detail: str = ""):
        self.order = order
        msg = f"jet system inconsistent at order {order}"
        if detail:
            msg += f" ({detail})"
        super().__init__(msg)


class PrecisionExhaustedError(ExactCoreError, ValueError):
    """An operation needed more jet precision than is available."""


# ---------------------------------------------------------------------------
# scalars


class RatFun:
    """Rational function in t over the rationals.

    Stored as coprime dense numerator/denominator coefficient tuples with a
    monic denominator, so equal values have equal representations. The gcd
    is taken eagerly after every operation.
    """

    __slots__ = ("num", "den")

    def __init__(self, num, den=up.ONE, *, _trusted=False):
        if _trusted:
            self.num = num
            self.den = den
            return
        num = up.pnorm(num)
        den = up.pnorm(den)
        if not den:
            raise ZeroDivisionError("rational function with zero denominator")
        if num:
            g = up.pgcd(num, den)
            if up.pdeg(g) > 0:
                num = up.pdivexact(num, g)
                den = up.pdivexact(den, g)
            lc = up.plc(den)
            if lc != 1:
                num = tuple(c / lc for c in num)
                den = up.pmonic(den)
        else:
            den = up.ONE
        self.num = num
        self.den = den

    @classmethod
    def from_fraction(cls, q) -> "RatFun":
        return cls(up.pconst(q), up.ONE, _trusted=True)

    @classmethod
    def from_poly(cls, coeffs) -> "RatFun":
        return cls(up.pnorm(coeffs), up.ONE, _trusted=True)

    @property
    def is_zero(self) -> bool:
        return not self.num

    def __add__(self, other):
        other = _as_ratfun(other)
        if other is NotImplemented:
            return NotImplemented
        num = up.padd(up.pmul(self.num, other.den), up.pmul(other.num, self.den))
        return RatFun(num, up.pmul(self.den, other.den))

    __radd__ = __add__

    def __neg__(self):
        return RatFun(up.pneg(self.num), self.den, _trusted=True)

    def __sub__(self, other):
        other = _as_ratfun(other)
        if other is NotImplemented:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        other = _as_ratfun(other)
        if other is NotImplemented:
            return NotImplemented
        return other + (-self)

    def __mul__(self, other):
        other = _as_ratfun(other)
        if other is NotImplemented:
            return NotImplemented
        return RatFun(up.pmul(self.num, other.num), up.pmul(self.den, other.den))

    __rmul__ = __mul__

    def __truediv__(self, other):
        other = _as_ratfun(other)
        if other is NotImplemented:
            return NotImplemented
        if other.is_zero:
            raise ZeroDivisionError("division by zero rational function")
        return RatFun(up.pmul(self.num, other.den), up.pmul(self.den, other.num))

    def __rtruediv__(self, other):
        other = _as_ratfun(other)
        if other is NotImplemented:
            return NotImplemented
        return other / self

    def derivative(self) -> "RatFun":
        num = up.psub(
            up.pmul(up.pderiv(self.num), self.den),
            up.pmul(self.num, up.pderiv(self.den)),
        )
        return RatFun(num, up.pmul(self.den, self.den))

    def evaluate(self, t0) -> Fraction:
        d = up.peval(self.den, t0)
        if d == 0:
            raise ZeroDivisionError(f"pole at t = {t0}")
        return up.peval(self.num, t0) / d

    def __eq__(self, other):
        other = _as_ratfun(other)
        if other is NotImplemented:
            return NotImplemented
        return self.num == other.num and self.den == other.den

    def __hash__(self):
        return hash((self.num, self.den))

    def __repr__(self):
        return f"RatFun({_poly_repr(self.num)} / {_poly_repr(self.den)})"


RATFUN_T = RatFun(up.VAR, up.ONE, _trusted=True)


def _poly_repr(coeffs) -> str:
    if not coeffs:
        return "0"
    parts = []
    for i, c in enumerate(coeffs):
        if c == 0:
            continue
        if i == 0:
            parts.append(str(c))
        elif i == 1:
            parts.append(f"{c}*t")
        else:
            parts.append(f"{c}*t^{i}")
    return " + ".join(parts)


def _as_ratfun(x):
    if isinstance(x, RatFun):
        return x
    if isinstance(x, (int, Fraction)):
        return RatFun.from_fraction(Fraction(x))
    return NotImplemented


class Jet:
    """Truncated power series in s: exactly `precision` coefficients.

    Binary operations require matching precision; rationals broadcast to
    constant jets. Arithmetic truncates at the shared precision.
    """

    __slots__ = ("coeffs",)

    def __init__(self, coeffs):
        cs = tuple(Fraction(c) for c in coeffs)
        if not cs:
            raise ValueError("jet needs at least one coefficient")
        self.coeffs = cs

    @classmethod
    def from_fraction(cls, q, precision: int) -> "Jet":
        if precision < 1:
            raise ValueError("jet precision must be >= 1")
        return cls((Fraction(q),) + (Fraction(0),) * (precision - 1))

    @property
    def precision(self) -> int:
        return len(self.coeffs)

    @property
    def order0(self) -> Fraction:
        return self.coeffs[0]

    @property
    def is_zero(self) -> bool:
        return all(c == 0 for c in self.coeffs)

    def _match(self, other) -> "Jet":
        if isinstance(other, Jet):
            if other.precision != self.precision:
                raise DomainMismatchError(
                    f"jet precision mismatch: {self.precision} vs {other.precision}"
                )
            return other
        if isinstance(other, (int, Fraction)):
            return Jet.from_fraction(other, self.precision)
        return NotImplemented

    def __add__(self, other):
        other = self._match(other)
        if other is NotImplemented:
            return NotImplemented
        return Jet(tuple(a + b for a, b in zip(self.coeffs, other.coeffs)))

    __radd__ = __add__

    def __neg__(self):
        return Jet(tuple(-a for a in self.coeffs))

    def __sub__(self, other):
        other = self._match(other)
        if other is NotImplemented:
            return NotImplemented
        return Jet(tuple(a - b for a, b in zip(self.coeffs, other.coeffs)))

    def __rsub__(self, other):
        other = self._match(other)
        if other is NotImplemented:
            return NotImplemented
        return other - self

    def __mul__(self, other):
        other = self._match(other)
        if other is NotImplemented:
            return NotImplemented
        n = self.precision
        out = [Fraction(0)] * n
        for i, a in enumerate(self.coeffs):
            if a == 0:
                continue
            for j in range(n - i):
                b = other.coeffs[j]
                if b != 0:
                    out[i + j] += a * b
        return Jet(out)

    __rmul__ = __mul__

    def derivative(self) -> "Jet":
        """d/ds, dropping the precision by exactly one."""
        if self.precision == 1:
            raise PrecisionExhaustedError("cannot differentiate a precision-1 jet")
        return Jet(tuple(Fraction(k) * self.coeffs[k] for k in range(1, self.precision)))

    def truncate(self, n: int) -> "Jet":
        if not 1 <= n <= self.precision:
            raise ValueError(f"cannot truncate precision {self.precision} jet to {n}")
        return Jet(self.coeffs[:n])

    def __eq__(self, other):
        if isinstance(other, (int, Fraction)):
            other = Jet.from_fraction(other, self.precision)
        if not isinstance(other, Jet):
            return NotImplemented
        return self.coeffs == other.coeffs

    def __hash__(self):
        return hash(self.coeffs)

    def __repr__(self):
        return f"Jet({list(self.coeffs)})"


# ---------------------------------------------------------------------------
# domains


@dataclass(frozen=True)
class RationalDomain:
    name = "rational"

    def zero(self):
        return Fraction(0)

    def one(self):
        return Fraction(1)

    def coerce(self, x):
        if isinstance(x, (int, Fraction)):
            return Fraction(x)
        raise DomainMismatchError(f"cannot place {x!r} in the rational domain")


@dataclass(frozen=True)
class RatFunDomain:
    name = "ratfun"

    def zero(self):
        return RatFun.from_fraction(0)

    def one(self):
        return RatFun.from_fraction(1)

    def coerce(self, x):
        if isinstance(x, RatFun):
            return x
        if isinstance(x, (int, Fraction)):
            return RatFun.from_fraction(Fraction(x))
        raise DomainMismatchError(f"cannot place {x!r} in the rational-function domain")


@dataclass(frozen=True)
class JetDomain:
    precision: int
    name = "jet"

    def zero(self):
        return Jet.from_fraction(0, self.precision)

    def one(self):
        return Jet.from_fraction(1, self.precision)

    def coerce(self, x):
        if isinstance(x, Jet):
            if x.precision != self.precision:
                raise DomainMismatchError(
                    f"jet precision mismatch: expected {self.precision}, got {x.precision}"
                )
            return x
        if isinstance(x, (int, Fraction)):
            return Jet.from_fraction(Fraction(x), self.precision)
        raise DomainMismatchError(f"cannot place {x!r} in the jet domain")


RATIONAL = RationalDomain()
RATFUN = RatFunDomain()


def domain_of(x):
    if isinstance(x, (int, Fraction)):
        return RATIONAL
    if isinstance(x, RatFun):
        return RATFUN
    if isinstance(x, Jet):
        return JetDomain(x.precision)
    raise DomainMismatchError(f"{x!r} is not a supported scalar")


def _infer_domain(entries):
    domain = RATIONAL
    for e in entries:
        d = domain_of(e)
        if isinstance(d, RationalDomain):
            continue
        if isinstance(domain, RationalDomain):
            domain = d
        elif domain != d:
            raise DomainMismatchError(f"mixed scalar domains: {domain} vs {d}")
    return domain


# ---------------------------------------------------------------------------
# matrices


class Matrix:
    """Immutable rectangular matrix over one scalar domain.

    Integers and Fractions are coerced into the matrix domain; genuinely
    mixed domains (or mixed jet precisions) are rejected.
    """

    __slots__ = ("nrows", "ncols", "domain", "rows")

    def __init__(self, rows, *, ncols: Optional[int] = None, domain=None):
        rows = [tuple(r) for r in rows]
        if rows:
            width = len(rows[0])
            if any(len(r) != width for r in rows):
                raise ValueError("ragged rows")
            if ncols is not None and ncols != width:
                raise ValueError(f"ncols={ncols} but rows have width {width}")
            ncols = width
        elif ncols is None:
            raise ValueError("empty matrix needs an explicit ncols")
        flat = [e for r in rows for e in r]
        if domain is None:
            domain = _infer_domain(flat) if flat else RATIONAL
        self.domain = domain
        self.rows = tuple(tuple(domain.coerce(e) for e in r) for r in rows)
        self.nrows = len(rows)
        self.ncols = ncols

    def mul_vec(self, v: Sequence):
        if len(v) != self.ncols:
            raise ValueError("vector length does not match ncols")
        zero = self.domain.zero()
        out = []
        for row in self.rows:
            acc = zero
            for a, b in zip(row, v):
                acc = acc + a * b
            out.append(acc)
        return tuple(out)

    def __eq__(self, other):
        if not isinstance(other, Matrix):
            return NotImplemented
        return (
            self.nrows == other.nrows
            and self.ncols == other.ncols
            and self.rows == other.rows
        )

    def __hash__(self):
        return hash((self.nrows, self.ncols, self.rows))

    def __repr__(self):
        return f"Matrix({self.nrows}x{self.ncols}, {self.domain.name})"


@dataclass(frozen=True)
class RrefResult:
    matrix: Matrix
    pivots: tuple
    rank: int


def _clear_rational_rows(rows, scales=None):
    """Scale each Fraction row to integers (row scaling preserves the RREF).

    When `scales` is a list, the per-row multipliers are appended to it;
    solvers need them to express results against the original matrix."""
    out = []
    for row in rows:
        lcm = 1
        for e in row:
            d = e.denominator
            if d != 1:
                lcm = lcm * d // _gcd(lcm, d)
        if scales is not None:
            scales.append(lcm)
        out.append([int(e * lcm) for e in row])
    return out


def _gcd(a, b):
    while b:
        a, b = b, a % b
    return a


def _clear_ratfun_rows(rows, scales=None):
    """Scale each RatFun row to polynomial entries (tuples of Fractions).

    When `scales` is a list, the per-row multiplier polynomials are
    appended to it."""
    out = []
    for row in rows:
        lcm = up.ONE
        for e in row:
            if up.pdeg(e.den) > 0:
                g = up.pgcd(lcm, e.den)
                lcm = up.pmonic(up.pmul(lcm, up.pdivexact(e.den, g)))
        if scales is not None:
            scales.append(lcm)
        out.append([up.pmul(e.num, up.pdivexact(lcm, e.den)) for e in row])
    return out


def _jordan_int(rows, pivot_width):
    pivots = ff_gauss_jordan_int(rows, pivot_width)
    return pivots


def _jordan_poly(rows, pivot_width):
    return ff_gauss_jordan_ring(
        rows,
        pivot_width,
        up.pmul,
        up.psub,
        up.pdivexact,
        lambda a: not a,
    )


def rref(matrix: Matrix) -> RrefResult:
    """Reduced row echelon form over a field domain (rationals or t-rational
    functions). Same shape, zero rows at the bottom, leading entries 1."""
    if isinstance(matrix.domain, JetDomain):
        raise DomainMismatchError("rref over jets is not defined; use lift_solve")
    if isinstance(matrix.domain, RationalDomain):
        work = _clear_rational_rows(matrix.rows)
        pivots = _jordan_int(work, matrix.ncols)
        out = []
        for k, c in enumerate(pivots):
            pv = work[k][c]
            out.append(tuple(Fraction(x, pv) for x in work[k]))
        zero_row = (Fraction(0),) * matrix.ncols
    else:
        work = _clear_ratfun_rows(matrix.rows)
        pivots = _jordan_poly(work, matrix.ncols)
        out = []
        for k, c in enumerate(pivots):
            pv = work[k][c]
            out.append(tuple(RatFun(x, pv) for x in work[k]))
        zero_row = (RatFun.from_fraction(0),) * matrix.ncols
    out.extend([zero_row] * (matrix.nrows - len(pivots)))
    reduced = Matrix(out, ncols=matrix.ncols, domain=matrix.domain)
    return RrefResult(matrix=reduced, pivots=tuple(pivots), rank=len(pivots))


def kernel_basis(matrix: Matrix):
    """Right-kernel basis, one vector per free column in increasing column
    order, normalized to 1 at its own free column and 0 at the others."""
    res = rref(matrix)
    return _kernel_from_rref(res, matrix.domain, matrix.ncols)


def _kernel_from_rref(res: RrefResult, domain, ncols):
    pivots = res.pivots
    pivot_set = set(pivots)
    free = [c for c in range(ncols) if c not in pivot_set]
    zero = domain.zero()
    one = domain.one()
    basis = []
    rows = res.matrix.rows
    for f in free:
        v = [zero] * ncols
        v[f] = one
        for k, c in enumerate(pivots):
            coeff = rows[k][f]
            if not _is_zero(coeff):
                v[c] = -coeff
        basis.append(tuple(v))
    return tuple(basis)


def _is_zero(x) -> bool:
    if isinstance(x, Fraction):
        return x == 0
    return x.is_zero


# ---------------------------------------------------------------------------
# field solver


class LinearSolver:
    """Reusable exact solver for one field matrix M.

    Runs one fraction-free Gauss-Jordan pass on [M | I] and answers any
    number of solve/kernel queries. Particular solutions set every free
    variable to zero, which (with the pinned pivot rule) makes results
    deterministic.
    """

    def __init__(self, matrix: Matrix):
        if isinstance(matrix.domain, JetDomain):
            raise DomainMismatchError("LinearSolver needs a field domain")
        self.domain = matrix.domain
        self.nrows = matrix.nrows
        self.ncols = matrix.ncols
        rational = isinstance(matrix.domain, RationalDomain)
        scales = []
        if rational:
            work = _clear_rational_rows(matrix.rows, scales)
            for i, row in enumerate(work):
                row.extend(1 if j == i else 0 for j in range(matrix.nrows))
            pivots = _jordan_int(work, matrix.ncols)
        else:
            work = _clear_ratfun_rows(matrix.rows, scales)
            zero, one = up.ZERO, up.ONE
            for i, row in enumerate(work):
                row.extend(one if j == i else zero for j in range(matrix.nrows))
            pivots = _jordan_poly(work, matrix.ncols)
        self.pivots = tuple(pivots)
        self.rank = len(pivots)
        n = matrix.ncols
        # the elimination ran on the row-scaled matrix D M, so the identity
        # block holds combinations against D M; fold D back in so transform
        # and residual rows apply to the caller's b directly
        rref_rows = []
        transform = []
        for k, c in enumerate(pivots):
            pv = work[k][c]
            if rational:
                rref_rows.append(tuple(Fraction(x, pv) for x in work[k][:n]))
                transform.append(
                    tuple(
                        Fraction(x * scales[i], pv)
                        for i, x in enumerate(work[k][n:])
                    )
                )
            else:
                rref_rows.append(tuple(RatFun(x, pv) for x in work[k][:n]))
                transform.append(
                    tuple(
                        RatFun(up.pmul(x, scales[i]), pv)
                        for i, x in enumerate(work[k][n:])
                    )
                )
        # residual rows: combinations proving inconsistency when row.b != 0
        residual = []
        for k in range(self.rank, matrix.nrows):
            if rational:
                residual.append(
                    tuple(
                        Fraction(x * scales[i])
                        for i, x in enumerate(work[k][n:])
                    )
                )
            else:
                residual.append(
                    tuple(
                        RatFun(up.pmul(x, scales[i]))
                        for i, x in enumerate(work[k][n:])
                    )
                )
        self._rref_rows = tuple(rref_rows)
        self._transform = tuple(transform)
        self._residual = tuple(residual)

    def try_solve(self, b: Sequence):
        """Particular solution of M x = b with free variables 0, or None."""
        if len(b) != self.nrows:
            raise ValueError("rhs length does not match nrows")
        zero = self.domain.zero()
        b = [self.domain.coerce(e) for e in b]
        for row in self._residual:
            if not _is_zero(_dot(row, b, zero)):
                return None
        x = [zero] * self.ncols
        for k, c in enumerate(self.pivots):
            x[c] = _dot(self._transform[k], b, zero)
        return tuple(x)

    def solve(self, b: Sequence):
        x = self.try_solve(b)
        if x is None:
            raise InconsistentSystemError("linear system has no solution")
        return x

    def kernel(self):
        res = RrefResult(
            matrix=Matrix(self._rref_rows, ncols=self.ncols, domain=self.domain),
            pivots=self.pivots,
            rank=self.rank,
        )
        return _kernel_from_rref(res, self.domain, self.ncols)


def _dot(row, vec, zero):
    acc = zero
    for a, b in zip(row, vec):
        acc = acc + a * b
    return acc


# ---------------------------------------------------------------------------
# jet systems


@dataclass(frozen=True)
class LiftSolution:
    """Affine description of the jet solution set: one particular solution
    plus the order-0 kernel basis lifted to full precision."""

    particular: tuple
    homogeneous: tuple


class JetSystemSolver:
    """Order-by-order solver for M(s) x(s) = b(s), M over one jet domain.

    Splits M into rational coefficient blocks M_0..M_{N-1}, prepares the
    order-0 solver once, and then answers jet solves in N back-substitution
    rounds each.
    """

    def __init__(self, matrix: Matrix):
        if not isinstance(matrix.domain, JetDomain):
            raise DomainMismatchError("JetSystemSolver needs a jet matrix")
        self.precision = matrix.domain.precision
        self.nrows = matrix.nrows
        self.ncols = matrix.ncols
        blocks = []
        for k in range(self.precision):
            blocks.append(
                [[e.coeffs[k] for e in row] for row in matrix.rows]
            )
        self._blocks = blocks
        self.order0 = LinearSolver(
            Matrix(blocks[0], ncols=matrix.ncols, domain=RATIONAL)
        )

    def _conv_rhs(self, order, xs, b_orders):
        rhs = list(b_orders[order])
        for i in range(1, order + 1):
            block = self._blocks[i]
            xprev = xs[order - i]
            for r in range(self.nrows):
                row = block[r]
                acc = rhs[r]
                for j in range(self.ncols):
                    m = row[j]
                    if m != 0:
                        acc -= m * xprev[j]
                rhs[r] = acc
        return rhs

    def try_solve(self, b: Sequence, order0_value=None):
        """Solve to full precision. b: jets of the matrix precision.

        order0_value, when given, is used as the order-0 solution instead of
        solving (the caller asserting M_0 * order0_value = b_0); used for
        lifting prescribed kernel vectors. Returns (solution, None) on
        success, (None, failing_order) on failure.
        """
        n = self.precision
        b_orders = [[Fraction(e.coeffs[k]) for e in b] for k in range(n)]
        xs = []
        for order in range(n):
            rhs = self._conv_rhs(order, xs, b_orders)
            if order == 0 and order0_value is not None:
                xs.append([Fraction(v) for v in order0_value])
                continue
            x = self.order0.try_solve(rhs)
            if x is None:
                return None, order
            xs.append(list(x))
        jets = tuple(
            Jet(tuple(xs[k][j] for k in range(n))) for j in range(self.ncols)
        )
        return jets, None


def lift_solve(matrix: Matrix, rhs: Sequence) -> LiftSolution:
    """Solve a jet linear system order by order.

    Returns a particular solution (free variables 0 at every order) plus
    the order-0 kernel basis lifted to full precision. Raises
    LiftInconsistencyError carrying the first failing order.
    """
    solver = JetSystemSolver(matrix)
    dom = JetDomain(solver.precision)
    rhs = [dom.coerce(e) for e in rhs]
    if len(rhs) != matrix.nrows:
        raise ValueError("rhs length does not match nrows")
    particular, fail = solver.try_solve(rhs)
    if particular is None:
        raise LiftInconsistencyError(fail, "particular solution")
    zero_rhs = [dom.zero()] * matrix.nrows
    lifted = []
    for j, h0 in enumerate(solver.order0.kernel()):
        h, fail = solver.try_solve(zero_rhs, order0_value=h0)
        if h is None:
            raise LiftInconsistencyError(fail, f"lift of kernel vector {j}")
        lifted.append(h)
    return LiftSolution(particular=particular, homogeneous=tuple(lifted))


# ---------------------------------------------------------------------------
# sound one-sided full-rank certificates

_CERT_PRIMES = ((1 << 61) - 1, 2305843009213693907)
_CERT_POINTS = (Fraction(1), Fraction(-1), Fraction(2), Fraction(-2), Fraction(3))


def _rank_modp(int_rows, ncols, p):
    rows = [[x % p for x in row] for row in int_rows]
    rank = 0
    for c in range(ncols):
        if rank == len(rows):
            break
        r = rank
        while r < len(rows) and rows[r][c] == 0:
            r += 1
        if r == len(rows):
            continue
        rows[r], rows[rank] = rows[rank], rows[r]
        inv = pow(rows[rank][c], p - 2, p)
        prow = rows[rank]
        for i in range(rank + 1, len(rows)):
            f = rows[i][c]
            if f:
                f = f * inv % p
                row = rows[i]
                for j in range(c, ncols):
                    row[j] = (row[j] - f * prow[j]) % p
        rank += 1
    return rank


def full_column_rank_certificate(matrix: Matrix) -> bool:
    """True certifies that the matrix has full column rank (exactly: rank
    over the fraction field never falls below rank after reduction mod p or
    specialization of t). False means "inconclusive": fall back to exact
    elimination. Never wrong when True.
    """
    if matrix.ncols == 0:
        return True
    if matrix.nrows < matrix.ncols:
        return False
    if isinstance(matrix.domain, RationalDomain):
        int_rows = _clear_rational_rows(matrix.rows)
        for p in _CERT_PRIMES:
            if _rank_modp(int_rows, matrix.ncols, p) == matrix.ncols:
                return True
        return False
    if isinstance(matrix.domain, RatFunDomain):
        for a in _CERT_POINTS:
            try:
                spec = Matrix(
                    [[e.evaluate(a) for e in row] for row in matrix.rows],
                    ncols=matrix.ncols,
                    domain=RATIONAL,
                )
            except ZeroDivisionError:
                continue
            if full_column_rank_certificate(spec):
                return True
        return False
    raise DomainMismatchError("certificate needs a field domain")
