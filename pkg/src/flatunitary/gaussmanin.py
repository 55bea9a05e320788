"""Differentiating cohomology classes along the parameter.

A degree-d fibre F presents the curve's primitive cohomology through its
Jacobian ring: forms with a pole of order one along the curve give the
holomorphic part (degree d-3 residues), order two gives the rest (degree
2d-3). Differentiating a family of such forms in t raises the pole order
by one, and the pole drops back after writing the numerator in the ideal
of partial derivatives of F:

    [sum_i A_i * dF/dY_i] at pole order k+1  =  (1/k) [sum_i dA_i/dY_i]
                                                at pole order k.

Everything here is that bookkeeping, done exactly: ideal-membership
witnesses, the Higgs action of the deformation class F_T, the full
connection on mixed classes, and the derivative of a section that stays
inside the Higgs kernel. Scalars may be rationals, rational functions in
t, or jets in s = t - t0; jet inputs lose one order of s-precision per
derivative, which is the honest amount of information present.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .exactcore import ExactCoreError, JetDomain, RATFUN, RATIONAL
from .jacobian import JacobianFiber, RingElement
from .polyring import HomPoly, monomial_count, poly_mul, poly_partial


class NotKernelSectionError(ExactCoreError, ValueError):
    """The form is not in the ideal of partial derivatives.

    Over jets, `order` is the first s-order at which membership fails;
    over field scalars it is None.
    """

    def __init__(self, detail: str, order=None):
        self.order = order
        where = "" if order is None else f" at jet order {order}"
        super().__init__(f"{detail}{where}")


@dataclass(frozen=True)
class Witness:
    """Coefficients (A_0, A_1, A_2) expressing a form in the partials.

    parts[i] has degree (k - d + 1) and q = sum_i parts[i] * dF/dY_i.
    `unique` records whether the expressing system had full column rank
    (true in degrees below the first relations among the partials)."""

    degree: int
    parts: tuple
    unique: bool

    def divergence(self) -> HomPoly:
        """sum_i d(parts[i])/dY_i, the pole-reduction numerator."""
        out = poly_partial(self.parts[0], 0)
        out = out + poly_partial(self.parts[1], 1)
        out = out + poly_partial(self.parts[2], 2)
        return out


@dataclass(frozen=True)
class CohomClass:
    """A cohomology class split by pole order.

    p1 lives in degree d-3 (pole one, the holomorphic part), p2 in degree
    2d-3 (pole two). Either part may be zero."""

    p1: RingElement
    p2: RingElement


def membership_witness(fiber: JacobianFiber, q: HomPoly) -> Witness:
    """Write q = sum_i A_i * dF/dY_i, or raise NotKernelSectionError.

    The generator order is fixed (dF/dY_0 block, then dF/dY_1, then
    dF/dY_2, multiplier monomials in graded order) and free variables are
    set to zero, so the witness is deterministic. In degrees where the
    multipliers sit below degree d-1 the partials admit no relations and
    the witness is the only one; `unique` reports this.
    """
    k = q.degree
    d = fiber.d
    mult_deg = k - (d - 1)
    if mult_deg < 0:
        raise ValueError(f"degree {k} is below the generator degree {d - 1}")
    solver = fiber.column_solver(k)
    b = q.to_vector()
    if isinstance(fiber.domain, JetDomain):
        x, fail = solver.try_solve(b)
        if x is None:
            raise NotKernelSectionError(
                f"degree-{k} form is not in the partials ideal", order=fail
            )
        rank = solver.order0.rank
    else:
        x = solver.try_solve(b)
        if x is None:
            raise NotKernelSectionError(
                f"degree-{k} form is not in the partials ideal"
            )
        rank = solver.rank
    block = monomial_count(mult_deg)
    parts = tuple(
        HomPoly.from_vector(mult_deg, x[i * block : (i + 1) * block], fiber.domain)
        for i in range(3)
    )
    return Witness(degree=k, parts=parts, unique=(rank == solver.ncols))


def theta_eval(fiber: JacobianFiber, Ft: HomPoly, p) -> RingElement:
    """Higgs action of the deformation class: the class of F_T * p.

    p may be a degree-(d-3) polynomial or a RingElement in that degree;
    the result lives in degree 2d-3."""
    if isinstance(p, RingElement):
        p = fiber.representative(p)
    if p.degree != fiber.d - 3:
        raise ValueError(f"theta_eval needs degree {fiber.d - 3}, got {p.degree}")
    if Ft.degree != fiber.d:
        raise ValueError(f"deformation form must have degree {fiber.d}")
    return fiber.normal_form(poly_mul(Ft, p))


def _coeff_derivative(p: HomPoly) -> HomPoly:
    """d/dt on coefficients. Rationals are t-constant; jets differentiate
    in s = t - t0 and lose one order of precision."""
    dom = p.domain
    if dom is RATIONAL:
        return HomPoly.zero(p.degree, RATIONAL)
    if dom is RATFUN:
        return p.map_coefficients(lambda r: r.derivative(), RATFUN)
    if isinstance(dom, JetDomain):
        return p.map_coefficients(
            lambda j: j.derivative(), JetDomain(dom.precision - 1)
        )
    raise ExactCoreError(f"no derivative on domain {dom!r}")


def _truncate_poly(p: HomPoly, n) -> HomPoly:
    if n is None or not isinstance(p.domain, JetDomain) or p.domain.precision == n:
        return p
    return p.map_coefficients(lambda j: j.truncate(n), JetDomain(n))


def gm_derivative(fiber: JacobianFiber, Ft: HomPoly, p: HomPoly) -> HomPoly:
    """Derivative along t of a holomorphic section killed by the Higgs
    action: dp/dt - sum_i dA_i/dY_i where F_T * p = sum_i A_i * dF/dY_i.

    Requires F_T * p to lie in the partials ideal (that is what theta = 0
    means); raises NotKernelSectionError otherwise. Over jets the result
    carries one order less of s-precision than the input.
    """
    if p.degree != fiber.d - 3:
        raise ValueError(f"gm_derivative needs degree {fiber.d - 3}, got {p.degree}")
    w = membership_witness(fiber, poly_mul(Ft, p))
    out_prec = (
        fiber.domain.precision - 1
        if isinstance(fiber.domain, JetDomain)
        else None
    )
    div = _truncate_poly(w.divergence(), out_prec)
    return _coeff_derivative(p) - div


def reduce_pole(fiber: JacobianFiber, q: HomPoly):
    """Drop a pole-three numerator (degree 3d-3) to pole two.

    Returns (class of (1/2) * divergence in degree 2d-3, the witness
    used). Degree 3d-3 is past the top of the ring, so membership always
    holds; witnesses there are not unique, but any two differ by relations
    whose divergences land in the ideal, so the class is well defined."""
    if q.degree != 3 * fiber.d - 3:
        raise ValueError(f"reduce_pole needs degree {3 * fiber.d - 3}, got {q.degree}")
    w = membership_witness(fiber, q)
    cls = fiber.normal_form(w.divergence().scale(Fraction(1, 2)))
    return cls, w


def connection_class(
    fiber: JacobianFiber,
    Ft: HomPoly,
    cls: CohomClass,
    out_fiber: JacobianFiber = None,
) -> CohomClass:
    """Gauss-Manin derivative of a mixed class.

    The pole-one part contributes dp1/dt - divergence(A) at pole one
    (where F_T * p1 splits as sum A_i dF/dY_i plus its class remainder)
    and minus that remainder at pole two; the pole-two part contributes
    dp2/dt - divergence(B) with F_T * p2 = sum B_i dF/dY_i, the
    pole-three constant 1/2 cancelling half of the -2 from d/dt(1/F^2).

    Over jets both output parts lose one order of s-precision, so the
    reductions of the results happen in `out_fiber`, the same fibre one
    jet order down; field domains ignore it.
    """
    jet = isinstance(fiber.domain, JetDomain)
    out_prec = fiber.domain.precision - 1 if jet else None
    if jet:
        if out_fiber is None:
            raise ValueError("jet connection needs out_fiber one order down")
        if not isinstance(out_fiber.domain, JetDomain) or (
            out_fiber.domain.precision != out_prec
        ):
            raise ValueError(f"out_fiber must have jet precision {out_prec}")
        rf = out_fiber
    else:
        rf = fiber

    p1rep = fiber.representative(cls.p1)
    p2rep = fiber.representative(cls.p2)

    # pole-one input: split F_T * p1 into ideal part and class remainder
    q1 = poly_mul(Ft, p1rep)
    r1 = fiber.normal_form(q1)
    wa = membership_witness(fiber, q1 - fiber.representative(r1))
    new_p1_poly = _coeff_derivative(p1rep) - _truncate_poly(wa.divergence(), out_prec)
    new_p1 = rf.normal_form(new_p1_poly)

    # pole-two input: fully reducible one degree past the socle
    q2 = poly_mul(Ft, p2rep)
    wb = membership_witness(fiber, q2)
    new_p2_poly = _coeff_derivative(p2rep) - _truncate_poly(wb.divergence(), out_prec)
    new_p2 = rf.normal_form(new_p2_poly)
    minus_r1 = [-c for c in r1.coords]
    if jet:
        minus_r1 = [c.truncate(out_prec) for c in minus_r1]
    new_p2 = RingElement(
        new_p2.degree,
        tuple(a + b for a, b in zip(new_p2.coords, minus_r1)),
    )
    return CohomClass(p1=new_p1, p2=new_p2)
