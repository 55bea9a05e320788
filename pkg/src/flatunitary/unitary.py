"""The flat unitary piece of the weight-one Hodge bundle.

For a one-parameter family of smooth plane curves the holomorphic forms
that stay holomorphic under repeated differentiation along the parameter
cut out a descending chain of subspaces of the degree-(d-3) part of the
Jacobian ring:

    V_1 = ker(theta),    V_{r+1} = { P in V_r : theta(D^r P) = 0 },

where theta multiplies by the deformation class F_T and D is the
parameter derivative corrected by pole reduction. The chain stabilizes
by level g and its stable rank is the rank of the flat unitary
subbundle. Conditions at level r+1 are linear over the scalar field
because every lower theta-condition vanishes on V_r, so each level is
one exact kernel computation.

Two computation modes share the level logic. Over the rational-function
field the kernels are taken over Q(t) and the answer is the generic
(bundle) rank directly. In jet mode everything happens at a chosen
rational basepoint t0 in truncated power series in s = t - t0: each
level solves the block-triangular rational system coupling all s-orders
at once, the level rank is the dimension of order-0 values of solutions,
and one order of s-precision is spent per level. Jet answers are
certified by recomputing at a higher order and at a second basepoint.

The second-order data lives here too: the pairing on the pointwise
Higgs kernel obtained by differentiating kernel vectors once (eta2), the
principal part given by the second T-derivative of the family (mu), and
the report comparing them.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .exactcore import (
    ExactCoreError,
    Jet,
    JetSystemSolver,
    Matrix,
    PrecisionExhaustedError,
    RATIONAL,
    kernel_basis,
)
from .family import (
    FamilySpec,
    generic_fibre,
    iter_basepoints,
    jet_expand,
    pick_basepoint,
    specialize,
    t_derivative,
)
from .gaussmanin import gm_derivative, theta_eval
from .jacobian import JacobianFiber, RingElement, make_fiber
from .polyring import HomPoly, poly_mul


def default_jet_order(genus: int) -> int:
    """Default s-precision: comfortably past the stabilization depth."""
    return 2 * genus + 4


# ---------------------------------------------------------------------------
# pointwise kernel data


@dataclass(frozen=True)
class PointKernel:
    """The Higgs kernel at one certified-smooth rational basepoint."""

    t0: Fraction
    fiber: JacobianFiber
    Ft: HomPoly
    basis: tuple  # rational coordinate vectors over the degree-(d-3) cobasis
    rejected: tuple


def pointwise_kernel(fam: FamilySpec, t0=None, seed: int = 0) -> PointKernel:
    """Kernel of the Higgs matrix at a single fibre, over the rationals.

    This is the pointwise kernel K(t0); on a jumping parameter value it
    can be strictly larger than the rank of the kernel bundle nearby.
    """
    if t0 is None:
        bp = pick_basepoint(fam, seed)
        t0, fiber, rejected = bp.t0, bp.fiber, bp.rejected
    else:
        t0 = Fraction(t0)
        fiber = make_fiber(specialize(fam, t0))
        rejected = ()
    Ft = specialize(t_derivative(fam), t0)
    H = fiber.higgs_matrix(fiber.delta_class(Ft))
    basis = kernel_basis(H)
    return PointKernel(t0=t0, fiber=fiber, Ft=Ft, basis=basis, rejected=rejected)


# ---------------------------------------------------------------------------
# stacked jet kernels


def _rank_increases(reduced_rows, vec) -> bool:
    """Incremental rational Gaussian step; appends when vec adds rank."""
    v = list(vec)
    for lead, row in reduced_rows:
        if v[lead] != 0:
            f = v[lead]
            v = [a - f * b for a, b in zip(v, row)]
    for i, a in enumerate(v):
        if a != 0:
            reduced_rows.append((i, [x / a for x in v]))
            return True
    return False


def _stacked_kernel(cols, m: int):
    """Extendable kernel of a jet column system, solved over Q exactly.

    cols: J coordinate vectors of jets (precision m). Couples all jet
    orders of Sum_j c_j(s) cols_j(s) = 0 (mod s^m) into one rational
    system; returns (rank, picks) where rank is the dimension of the
    order-0 values of solutions and picks are kernel vectors c (tuples of
    precision-m jets) with independent order-0 parts, chosen greedily
    from the deterministic kernel basis.
    """
    J = len(cols)
    if J == 0:
        return 0, []
    nrows = len(cols[0])
    big = []
    for a in range(m):
        for r in range(nrows):
            row = []
            for b in range(m):
                k = a - b
                for j in range(J):
                    row.append(cols[j][r].coeffs[k] if k >= 0 else Fraction(0))
            big.append(row)
    kb = kernel_basis(Matrix(big, ncols=m * J, domain=RATIONAL))
    reduced = []
    picks = []
    for v in kb:
        if _rank_increases(reduced, v[:J]):
            picks.append(
                tuple(Jet(tuple(v[b * J + j] for b in range(m))) for j in range(J))
            )
    return len(picks), picks


# ---------------------------------------------------------------------------
# the filtration engine


@dataclass(frozen=True)
class FiltrationResult:
    """Ranks of the kernel chain and a basis of its stable part.

    ranks[r-1] is the rank of the level-r subspace; rank_u is the last
    entry, the flat unitary rank once the chain has stabilized. sections
    are the final basis sections (polynomials over the mode's scalars).
    """

    mode: str
    degree: int
    genus: int
    t0: Fraction | None
    order: int | None
    max_level: int
    ranks: tuple
    sections: tuple

    @property
    def rank_u(self) -> int:
        return self.ranks[-1]


def _chain_trajectory(fibers, Fts, p: HomPoly, depth: int):
    """[p, D p, D^2 p, ...] up to D^depth, re-deriving every step.

    Each gm_derivative step proves the previous element is killed by
    theta, so a completed chain certifies the filtration conditions up
    through level `depth` for this section."""
    out = [p]
    for k in range(depth):
        out.append(gm_derivative(fibers[k], Fts[k], out[-1]))
    return out


def filtration_ranks(
    fam: FamilySpec,
    mode: str = None,
    t0=None,
    order: int = None,
    max_level: int = None,
    seed: int = 0,
    verify: bool = True,
) -> FiltrationResult:
    """Compute the kernel chain ranks down to max_level (default: genus).

    mode "ratfun" works over Q(t) and gives generic ranks; mode "jet"
    works at the basepoint t0 (picked by seed when not given) with jets
    of the given order (default 2*genus + 4). The chain never stops
    early except on hitting rank zero, so stabilization is observed
    rather than assumed.
    """
    d = fam.degree
    g = fam.genus
    if mode is None:
        mode = "ratfun" if d <= 5 else "jet"
    if mode not in ("ratfun", "jet"):
        raise ValueError(f"unknown mode {mode!r}")
    rmax = g if max_level is None else max_level
    if rmax < 1:
        raise ValueError("max_level must be >= 1")

    if mode == "ratfun":
        fiber = make_fiber(generic_fibre(fam))
        Ft = generic_fibre(t_derivative(fam))

        def level_env(r):
            # one fibre serves every depth over Q(t)
            return fiber, Ft

        t0_used = None
        order_used = None
    else:
        if order is None:
            order = default_jet_order(g)
        if order < 1:
            raise ValueError("jet order must be >= 1")
        if order - (rmax - 1) < 1:
            raise PrecisionExhaustedError(
                f"jet order {order} cannot support {rmax} levels; "
                f"need at least {rmax}"
            )
        if t0 is None:
            t0 = pick_basepoint(fam, seed).t0
        else:
            t0 = Fraction(t0)
            make_fiber(specialize(fam, t0))  # certify before any jet work
        Ftfam = t_derivative(fam)
        cache = {}

        def env(prec):
            if prec not in cache:
                cache[prec] = (
                    make_fiber(jet_expand(fam, t0, prec)),
                    jet_expand(Ftfam, t0, prec),
                )
            return cache[prec]

        def level_env(r):
            return env(order - r)

        t0_used = t0
        order_used = order

    # level 1: the Higgs kernel itself
    fiber0, Ft0 = level_env(0)
    xi = fiber0.delta_class(Ft0)
    H = fiber0.higgs_matrix(xi)
    if mode == "ratfun":
        combos = kernel_basis(H)
        rank = len(combos)
    else:
        hcols = [
            tuple(H.rows[r][j] for r in range(H.nrows)) for j in range(H.ncols)
        ]
        rank, combos = _stacked_kernel(hcols, order)
    cob = fiber0.cobasis(d - 3)
    dom = fiber0.domain
    unit_sections = [HomPoly.monomial(e, dom.one(), domain=dom) for e in cob]
    sections = [_combine(unit_sections, c) for c in combos]
    ranks = [rank]

    for r in range(1, rmax):
        if ranks[-1] == 0:
            ranks.extend([0] * (rmax - len(ranks)))
            sections = []
            break
        # depth-r trajectories for the current basis
        fibers = []
        Fts = []
        for k in range(r):
            fb, ft = level_env(k)
            fibers.append(fb)
            Fts.append(ft)
        level_fiber, level_Ft = level_env(r)
        wcols = []
        for p in sections:
            traj = _chain_trajectory(fibers, Fts, p, r)
            wcols.append(theta_eval(level_fiber, level_Ft, traj[r]).coords)
        if mode == "ratfun":
            nrows = len(wcols[0])
            M = Matrix(
                [[wc[i] for wc in wcols] for i in range(nrows)],
                ncols=len(wcols),
                domain=fiber0.domain,
            )
            combos = kernel_basis(M)
            rank = len(combos)
        else:
            m = order_used - r
            trunc = [tuple(c.truncate(m) for c in wc) for wc in wcols]
            rank, combos = _stacked_kernel(trunc, m)
            combos = [
                tuple(
                    Jet(c.coeffs + (Fraction(0),) * (order_used - m)) for c in cv
                )
                for cv in combos
            ]
        sections = [_combine(sections, c) for c in combos]
        ranks.append(rank)

    result = FiltrationResult(
        mode=mode,
        degree=d,
        genus=g,
        t0=t0_used,
        order=order_used,
        max_level=rmax,
        ranks=tuple(ranks),
        sections=tuple(sections),
    )
    if verify and sections:
        _verify_chain(result, level_env)
    return result


def _combine(sections, coeffs):
    out = None
    for c, p in zip(coeffs, sections):
        term = p.scale(c)
        out = term if out is None else out + term
    if out is None:
        raise ExactCoreError("empty combination")
    return out


def _verify_chain(result: FiltrationResult, level_env):
    """Re-derive every section's trajectory and check the final condition.

    The chain raises if any lower theta-condition fails; the last theta
    is checked explicitly, so all max_level conditions are certified."""
    depth = result.max_level - 1
    fibers = []
    Fts = []
    for k in range(depth):
        fb, ft = level_env(k)
        fibers.append(fb)
        Fts.append(ft)
    last_fiber, last_Ft = level_env(depth)
    for p in result.sections:
        traj = _chain_trajectory(fibers, Fts, p, depth)
        th = theta_eval(last_fiber, last_Ft, traj[depth])
        if not th.is_zero:
            raise ExactCoreError(
                "filtration invariant violated: final theta-condition nonzero"
            )


# ---------------------------------------------------------------------------
# certified rank with diagnostics


@dataclass(frozen=True)
class UnitaryRank:
    """A filtration run plus the agreement checks behind it.

    In jet mode the primary run is recomputed with two extra orders and
    at a second basepoint; `stable` records whether all rank sequences
    agree. Over Q(t) the computation is generic and stable by fiat.
    """

    primary: FiltrationResult
    checks: tuple
    stable: bool

    @property
    def rank_u(self) -> int:
        return self.primary.rank_u

    @property
    def ranks(self) -> tuple:
        return self.primary.ranks


def _second_basepoint(fam: FamilySpec, seed: int, avoid: Fraction) -> Fraction:
    for bp in iter_basepoints(fam, seed):
        if bp.t0 != avoid:
            return bp.t0
    raise ExactCoreError("no second basepoint available")


def unitary_rank(
    fam: FamilySpec,
    mode: str = None,
    t0=None,
    order: int = None,
    max_level: int = None,
    seed: int = 0,
) -> UnitaryRank:
    """Rank of the flat unitary subbundle, with stability diagnostics."""
    if mode is None:
        mode = "ratfun" if fam.degree <= 5 else "jet"
    primary = filtration_ranks(
        fam, mode=mode, t0=t0, order=order, max_level=max_level, seed=seed
    )
    if mode == "ratfun":
        return UnitaryRank(primary=primary, checks=(), stable=True)
    higher = filtration_ranks(
        fam,
        mode="jet",
        t0=primary.t0,
        order=primary.order + 2,
        max_level=max_level,
        seed=seed,
    )
    t0b = _second_basepoint(fam, seed, primary.t0)
    other = filtration_ranks(
        fam,
        mode="jet",
        t0=t0b,
        order=primary.order,
        max_level=max_level,
        seed=seed,
    )
    stable = primary.ranks == higher.ranks == other.ranks
    return UnitaryRank(primary=primary, checks=(higher, other), stable=stable)


# ---------------------------------------------------------------------------
# second-order pairings on the pointwise kernel


@dataclass(frozen=True)
class Eta2Result:
    """The derivative pairing on the pointwise Higgs kernel.

    matrix[i][j] pairs the order-0 theta-value of the derivative of the
    extended kernel vector i against kernel vector j (sign: minus the
    theta of the derivative). Rows of non-extendable vectors are None and
    their indices are listed in flags."""

    t0: Fraction
    basis: tuple
    matrix: tuple
    flags: tuple


def eta2_on_K(
    fam: FamilySpec,
    t0=None,
    seed: int = 0,
    extension_tweaks=None,
    _pk: PointKernel = None,
) -> Eta2Result:
    """Second-order pairing via first-order extensions of kernel vectors.

    Each pointwise kernel vector is extended to a kernel section of the
    Higgs matrix mod s^2 (order-0 part prescribed); the extension can
    fail exactly on jumping parameter values, and such rows are flagged.
    The pairing does not depend on the choice of extension; the optional
    extension_tweaks map {row index: rational kernel vector} adds s times
    the given pointwise kernel vector to that row's extension, which
    exercises exactly that freedom.
    """
    pk = _pk if _pk is not None else pointwise_kernel(fam, t0, seed)
    k = len(pk.basis)
    d = fam.degree
    if k == 0:
        return Eta2Result(t0=pk.t0, basis=(), matrix=(), flags=())

    fib2 = make_fiber(jet_expand(fam, pk.t0, 2))
    Ftfam = t_derivative(fam)
    Ft2 = jet_expand(Ftfam, pk.t0, 2)
    fib1 = make_fiber(jet_expand(fam, pk.t0, 1))
    Ft1 = jet_expand(Ftfam, pk.t0, 1)
    H0 = pk.fiber.higgs_matrix(pk.fiber.delta_class(pk.Ft))
    H2 = fib2.higgs_matrix(fib2.delta_class(Ft2))
    solver = JetSystemSolver(H2)
    zero_b = [Jet.from_fraction(0, 2) for _ in range(H2.nrows)]

    tweaks = dict(extension_tweaks or {})
    for i, gamma in tweaks.items():
        if any(x != 0 for x in H0.mul_vec(gamma)):
            raise ValueError(
                f"extension tweak {i} is not a pointwise kernel vector"
            )

    basis_elts = [
        RingElement(d - 3, tuple(Fraction(x) for x in v)) for v in pk.basis
    ]
    rows = []
    flags = []
    for i, v in enumerate(pk.basis):
        x, fail = solver.try_solve(zero_b, order0_value=list(v))
        if x is None:
            flags.append(i)
            rows.append(None)
            continue
        if i in tweaks:
            gamma = tweaks[i]
            x = tuple(
                Jet((c.coeffs[0], c.coeffs[1] + Fraction(gamma[j])))
                for j, c in enumerate(x)
            )
        ext = fib2.representative(RingElement(d - 3, x))
        dext = gm_derivative(fib2, Ft2, ext)
        th = theta_eval(fib1, Ft1, dext)
        minus_th0 = RingElement(
            2 * d - 3, tuple(-c.coeffs[0] for c in th.coords)
        )
        rows.append(
            tuple(
                pk.fiber.socle_pair(alpha_j, minus_th0)
                for alpha_j in basis_elts
            )
        )
    return Eta2Result(
        t0=pk.t0, basis=pk.basis, matrix=tuple(rows), flags=tuple(flags)
    )


def mu_principal(fam: FamilySpec, t0=None, seed: int = 0, _pk: PointKernel = None):
    """Pairing of kernel vectors through the second T-derivative of the
    family: entry (i, j) is the socle coefficient of a_i * F_TT * a_j."""
    pk = _pk if _pk is not None else pointwise_kernel(fam, t0, seed)
    k = len(pk.basis)
    d = fam.degree
    if k == 0:
        return pk, ()
    Ftt = specialize(t_derivative(fam, 2), pk.t0)
    if Ftt.is_zero:
        zero = Fraction(0)
        return pk, tuple(tuple(zero for _ in range(k)) for _ in range(k))
    reps = [
        pk.fiber.representative(RingElement(d - 3, tuple(v)))
        for v in pk.basis
    ]
    rows = []
    for ri in reps:
        left = poly_mul(ri, Ftt)
        row = []
        for rj in reps:
            nf = pk.fiber.normal_form(poly_mul(left, rj))
            row.append(nf.coords[-1] if nf.coords else Fraction(0))
        rows.append(tuple(row))
    return pk, tuple(rows)


# ---------------------------------------------------------------------------
# the comparison report


@dataclass(frozen=True)
class MuReport:
    """Second-order pairings at one basepoint, compared.

    c is the least-squares multiple of the principal pairing closest to
    the derivative pairing over the usable (extendable) rows; residual
    is what remains. inclusion_ok records that the computed flat unitary
    rank does not exceed the kernel dimension of the derivative pairing
    restricted to extendable rows and columns."""

    t0: Fraction
    degree: int
    genus: int
    kernel_dim: int
    basis: tuple
    eta2: tuple
    eta2_flags: tuple
    principal: tuple
    c: Fraction | None
    residual: tuple | None
    residual_zero: bool
    eta2_kernel_dim: int
    rank_u: int
    ranks: tuple
    rank_stable: bool
    inclusion_ok: bool


def mu_report(
    fam: FamilySpec,
    t0=None,
    seed: int = 0,
    mode: str = None,
    order: int = None,
    max_level: int = None,
) -> MuReport:
    """Assemble the second-order comparison at one basepoint."""
    pk = pointwise_kernel(fam, t0, seed)
    eta = eta2_on_K(fam, _pk=pk)
    _, principal = mu_principal(fam, _pk=pk)
    k = len(pk.basis)

    usable = [i for i in range(k) if i not in eta.flags]
    # best rational multiple of the principal pairing, Frobenius sense
    num = Fraction(0)
    den = Fraction(0)
    for i in usable:
        for j in range(k):
            pij = principal[i][j]
            num += eta.matrix[i][j] * pij
            den += pij * pij
    c = num / den if den != 0 else None
    residual = None
    residual_zero = True
    if k and usable:
        cc = c if c is not None else Fraction(0)
        residual = tuple(
            tuple(eta.matrix[i][j] - cc * principal[i][j] for j in range(k))
            for i in usable
        )
        residual_zero = all(all(x == 0 for x in row) for row in residual)

    # kernel of the derivative pairing on the extendable part
    if usable:
        sub = Matrix(
            [[eta.matrix[i][j] for j in usable] for i in usable],
            ncols=len(usable),
            domain=RATIONAL,
        )
        eta2_kernel_dim = len(kernel_basis(sub))
    else:
        eta2_kernel_dim = 0

    rk = unitary_rank(
        fam, mode=mode, t0=pk.t0 if mode != "ratfun" else None,
        order=order, max_level=max_level, seed=seed,
    )
    inclusion_ok = rk.rank_u <= eta2_kernel_dim

    return MuReport(
        t0=pk.t0,
        degree=fam.degree,
        genus=fam.genus,
        kernel_dim=k,
        basis=pk.basis,
        eta2=eta.matrix,
        eta2_flags=eta.flags,
        principal=principal,
        c=c,
        residual=residual,
        residual_zero=residual_zero,
        eta2_kernel_dim=eta2_kernel_dim,
        rank_u=rk.rank_u,
        ranks=rk.ranks,
        rank_stable=rk.stable,
        inclusion_ok=inclusion_ok,
    )
