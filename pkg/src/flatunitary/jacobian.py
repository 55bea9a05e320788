"""Artinian Jacobian rings of plane curves, one graded degree at a time.

For a degree-d form F in Y0, Y1, Y2 with partial derivatives F0, F1, F2,
the degree-k piece of the Jacobian ideal is spanned by the monomial
multiples Y^m * F_i with deg m = k - (d-1); the quotient R_k is presented
by the non-pivot monomials (the cobasis) of the reduced echelon form of
that span. The construction is gated by an exact smoothness certificate:
dim R_{3d-5} = 0, which holds exactly when the partials share no projective
zero. On a smooth fibre dim R_{d-3} = dim R_{2d-3} = (d-1)(d-2)/2 and
dim R_{3d-6} = 1; the one-dimensional top piece carries the socle pairing.

Fibres work over the rationals, over rational functions of t (the generic
fibre of a family), or over jets at a basepoint. Over jets, every reduction
reuses the order-0 echelon data order by order, so only rational
elimination ever runs.
"""

from __future__ import annotations

from dataclasses import dataclass

from .exactcore import (
    RATIONAL,
    DomainMismatchError,
    ExactCoreError,
    JetDomain,
    JetSystemSolver,
    LinearSolver,
    Matrix,
    full_column_rank_certificate,
    rref,
    _is_zero,
)
from .polyring import HomPoly, graded_basis, monomial_count, poly_mul, poly_partial


class SingularFibreError(ExactCoreError, ValueError):
    """The smoothness certificate failed; carries the offending degree."""

    def __init__(self, degree: int, detail: str = ""):
        self.degree = degree
        msg = f"singular fibre: certificate failed in degree {degree}"
        if detail:
            msg += f" ({detail})"
        super().__init__(msg)


class DegreeNotPreparedError(ExactCoreError, KeyError):
    """A graded degree was used without being requested at construction."""

    def __init__(self, degree: int):
        self.degree = degree
        super().__init__(f"degree {degree} was not prepared for this fibre")


@dataclass(frozen=True)
class RingElement:
    """Coordinates of a residue class over the cobasis of its degree."""

    degree: int
    coords: tuple

    @property
    def is_zero(self) -> bool:
        return all(_is_zero(c) for c in self.coords)


def genus_of_degree(d: int) -> int:
    return (d - 1) * (d - 2) // 2


def standard_degrees(d: int):
    """The degrees the Hodge-theoretic pipeline needs prepared."""
    return (d - 3, d, 2 * d - 3, 3 * d - 6)


class _DegreeData:
    """Echelon data of one graded piece over a field domain."""

    __slots__ = ("degree", "rref_rows", "pivots", "cobasis_idx", "dim")

    def __init__(self, degree, rref_rows, pivots, ncols):
        self.degree = degree
        self.rref_rows = rref_rows
        self.pivots = pivots
        pivot_set = set(pivots)
        self.cobasis_idx = tuple(c for c in range(ncols) if c not in pivot_set)
        self.dim = len(self.cobasis_idx)


class JacobianFiber:
    """One fibre (or jet/generic-fibre thickening) of a Jacobian ring."""

    def __init__(self, F: HomPoly, degrees, *, _cert_mode=None):
        if F.degree < 3:
            raise ValueError(f"curve degree must be >= 3, got {F.degree}")
        if F.is_zero:
            raise ValueError("zero polynomial does not define a curve")
        self.F = F
        self.d = F.degree
        self.genus = genus_of_degree(self.d)
        self.domain = F.domain
        self.partials = tuple(poly_partial(F, i) for i in range(3))
        self._degree_data = {}
        self._column_solvers = {}
        self._jet_stacked = {}
        self._order0 = None
        if isinstance(self.domain, JetDomain):
            F0 = F.map_coefficients(lambda c: c.order0, domain=RATIONAL)
            self._order0 = JacobianFiber(F0, degrees, _cert_mode=_cert_mode)
            self.certificate = self._order0.certificate
            self.dims = dict(self._order0.dims)
            return
        cert_degree = 3 * self.d - 5
        self.certificate = self._smoothness_certificate(cert_degree, _cert_mode)
        self.dims = {}
        for k in sorted(set(degrees)):
            self.dims[k] = self._prepare_degree(k).dim

    # -- construction internals ------------------------------------------

    def _generators(self, k: int):
        """Ideal generators of degree k as (i, m) pairs, F0 block first,
        multiplier monomials in graded order inside each block."""
        mult_deg = k - (self.d - 1)
        if mult_deg < 0:
            return ()
        return tuple(
            (i, m) for i in range(3) for m in graded_basis(mult_deg)
        )

    def _generator_vectors(self, k: int):
        vecs = []
        for i, m in self._generators(k):
            prod = poly_mul(HomPoly.monomial(m, 1, domain=self.domain), self.partials[i])
            vecs.append(prod.to_vector())
        return vecs

    def _smoothness_certificate(self, cert_degree: int, mode):
        ncols = monomial_count(cert_degree)
        gen_matrix = Matrix(
            self._generator_vectors(cert_degree), ncols=ncols, domain=self.domain
        )
        if mode != "exact" and full_column_rank_certificate(gen_matrix):
            return {"degree": cert_degree, "dim": 0, "method": "reduction"}
        rank = rref(gen_matrix).rank
        if rank != ncols:
            raise SingularFibreError(cert_degree, f"dim R_{cert_degree} = {ncols - rank}")
        return {"degree": cert_degree, "dim": 0, "method": "exact"}

    def _prepare_degree(self, k: int) -> _DegreeData:
        if k in self._degree_data:
            return self._degree_data[k]
        if k < 0:
            data = _DegreeData(k, (), (), 0)
        else:
            ncols = monomial_count(k)
            vecs = self._generator_vectors(k)
            if vecs:
                res = rref(Matrix(vecs, ncols=ncols, domain=self.domain))
                data = _DegreeData(k, res.matrix.rows[: res.rank], res.pivots, ncols)
            else:
                data = _DegreeData(k, (), (), ncols)
        self._degree_data[k] = data
        return data

    def _data(self, k: int) -> _DegreeData:
        base = self._order0 if self._order0 is not None else self
        if k not in base.dims and k >= 0:
            raise DegreeNotPreparedError(k)
        return base._prepare_degree(k)

    # -- public queries ---------------------------------------------------

    def dim(self, k: int) -> int:
        return self._data(k).dim

    def cobasis(self, k: int):
        """Exponent triples of the representing monomials of R_k."""
        data = self._data(k)
        basis = graded_basis(k)
        return tuple(basis[i] for i in data.cobasis_idx)

    def normal_form(self, p: HomPoly) -> RingElement:
        """Canonical cobasis coordinates of p's residue class."""
        if p.domain != self.domain:
            raise DomainMismatchError(
                f"polynomial domain {p.domain} does not match fibre domain {self.domain}"
            )
        data = self._data(p.degree)
        if self._order0 is not None:
            return self._jet_normal_form(p, data)
        v = list(p.to_vector())
        for row_idx, c in enumerate(data.pivots):
            coef = v[c]
            if not _is_zero(coef):
                row = data.rref_rows[row_idx]
                for j in range(c, len(v)):
                    v[j] = v[j] - coef * row[j]
        return RingElement(p.degree, tuple(v[i] for i in data.cobasis_idx))

    def _jet_stacked_solver(self, k: int):
        if k in self._jet_stacked:
            return self._jet_stacked[k]
        data = self._data(k)
        ncols = monomial_count(k)
        gen_cols = self._generator_vectors(k)
        n = self.domain.precision
        one = self.domain.one()
        zero = self.domain.zero()
        rows = []
        for r in range(ncols):
            row = [col[r] for col in gen_cols]
            row.extend(one if i == r else zero for i in data.cobasis_idx)
            rows.append(row)
        solver = JetSystemSolver(
            Matrix(rows, ncols=len(gen_cols) + data.dim, domain=self.domain)
        )
        self._jet_stacked[k] = (solver, len(gen_cols))
        return self._jet_stacked[k]

    def _jet_normal_form(self, p: HomPoly, data: _DegreeData) -> RingElement:
        solver, ngens = self._jet_stacked_solver(p.degree)
        x, fail = solver.try_solve(p.to_vector())
        if x is None:
            raise ExactCoreError(
                f"jet reduction unexpectedly failed at order {fail} in degree {p.degree}"
            )
        return RingElement(p.degree, tuple(x[ngens:]))

    def representative(self, elt: RingElement) -> HomPoly:
        """The canonical polynomial representative, supported on the cobasis."""
        cob = self.cobasis(elt.degree)
        if len(cob) != len(elt.coords):
            raise ValueError("coordinate length does not match the cobasis")
        return HomPoly(
            elt.degree, dict(zip(cob, elt.coords)), domain=self.domain
        )

    def column_solver(self, k: int):
        """Solver for expressing degree-k vectors in the ideal generators.

        Columns are the generators in the fixed (i, m) order; the solver is
        a LinearSolver over field domains and a JetSystemSolver over jets.
        Degree k does not need to be prepared (no cobasis involved).
        """
        if k in self._column_solvers:
            return self._column_solvers[k]
        ncols = monomial_count(k)
        gen_cols = self._generator_vectors(k)
        rows = [[col[r] for col in gen_cols] for r in range(ncols)]
        m = Matrix(rows, ncols=len(gen_cols), domain=self.domain)
        solver = (
            JetSystemSolver(m)
            if isinstance(self.domain, JetDomain)
            else LinearSolver(m)
        )
        self._column_solvers[k] = solver
        return solver

    def delta_class(self, p: HomPoly) -> RingElement:
        """Image of a degree-d form in R_d: the first-order deformation
        class of the fibre in the direction of p."""
        if p.degree != self.d:
            raise ValueError(f"delta_class needs degree {self.d}, got {p.degree}")
        return self.normal_form(p)

    def higgs_matrix(self, xi: RingElement) -> Matrix:
        """Multiplication by xi in R_d as a map R_{d-3} -> R_{2d-3}.

        Columns follow the cobasis of R_{d-3}, rows the cobasis of
        R_{2d-3}."""
        if xi.degree != self.d:
            raise ValueError(f"higgs_matrix needs a degree-{self.d} class")
        rep = self.representative(xi)
        cols = []
        for m in self.cobasis(self.d - 3):
            prod = poly_mul(HomPoly.monomial(m, 1, domain=self.domain), rep)
            cols.append(self.normal_form(prod).coords)
        nrows = self.dim(2 * self.d - 3)
        rows = [tuple(col[r] for col in cols) for r in range(nrows)]
        return Matrix(rows, ncols=len(cols), domain=self.domain)

    def socle_pair(self, p: RingElement, q: RingElement):
        """Pairing R_{d-3} x R_{2d-3} -> scalars: the coefficient of the
        last cobasis monomial of degree 3d-6 in the product's normal form.
        Canonical up to one global nonzero scalar."""
        if p.degree != self.d - 3 or q.degree != 2 * self.d - 3:
            raise ValueError(
                f"socle_pair needs degrees ({self.d - 3}, {2 * self.d - 3}), "
                f"got ({p.degree}, {q.degree})"
            )
        prod = poly_mul(self.representative(p), self.representative(q))
        nf = self.normal_form(prod)
        if not nf.coords:
            raise SingularFibreError(3 * self.d - 6, "socle is trivial")
        return nf.coords[-1]


def make_fiber(F: HomPoly, degrees=None) -> JacobianFiber:
    """Build a fibre with the given degrees prepared (plus the certificate
    degree 3d-5, which is always checked). Raises SingularFibreError when
    the smoothness certificate fails."""
    if degrees is None:
        degrees = standard_degrees(F.degree)
    return JacobianFiber(F, degrees)


def normal_form(fiber: JacobianFiber, p: HomPoly) -> RingElement:
    return fiber.normal_form(p)


def delta_class(fiber: JacobianFiber, p: HomPoly) -> RingElement:
    return fiber.delta_class(p)


def higgs_matrix(fiber: JacobianFiber, xi: RingElement) -> Matrix:
    return fiber.higgs_matrix(xi)


def socle_pair(fiber: JacobianFiber, p: RingElement, q: RingElement):
    return fiber.socle_pair(p, q)
