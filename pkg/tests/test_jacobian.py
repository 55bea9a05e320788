"""Graded Jacobian-ring fibres: dimensions, normal forms, duality."""

import random
from fractions import Fraction

import pytest

from flatunitary.exactcore import Jet
from flatunitary.family import generic_fibre, jet_expand, parse_family, specialize, t_derivative
from flatunitary.jacobian import (
    DegreeNotPreparedError,
    SingularFibreError,
    genus_of_degree,
    make_fiber,
    standard_degrees,
)
from flatunitary.polyring import HomPoly, graded_basis, poly_mul, poly_partial
from oracles import jacobian_quotient_dims, sym_trivariate


def _fermat(d):
    one = Fraction(1)
    return HomPoly(d, {(d, 0, 0): one, (0, d, 0): one, (0, 0, d): one})


def _random_hompoly(rng, degree, bound=3):
    basis = graded_basis(degree)
    terms = {e: Fraction(rng.randint(-bound, bound)) for e in basis}
    if all(c == 0 for c in terms.values()):
        terms[basis[0]] = Fraction(1)
    return HomPoly(degree, terms)


class TestBasicInvariants:
    def test_genus_formula(self):
        assert [genus_of_degree(d) for d in (3, 4, 5, 6)] == [1, 3, 6, 10]

    def test_standard_degrees(self):
        assert standard_degrees(4) == (1, 4, 5, 6)
        assert standard_degrees(3) == (0, 3, 3, 3)

    def test_fermat_quartic_dimensions(self):
        # Hilbert series of the quotient is ((1 - q^3)/(1 - q))^3
        # = 1 + 3q + 6q^2 + 7q^3 + 6q^4 + 3q^5 + q^6
        fiber = make_fiber(_fermat(4), degrees=(1, 4, 5, 6, 7))
        assert fiber.dim(1) == 3
        assert fiber.dim(4) == 6
        assert fiber.dim(5) == 3
        assert fiber.dim(6) == 1
        assert fiber.dim(7) == 0

    def test_unprepared_degree_raises(self):
        fiber = make_fiber(_fermat(4))
        with pytest.raises(DegreeNotPreparedError):
            fiber.dim(7)

    def test_dimensions_match_groebner_oracle(self):
        rng = random.Random(11)
        for _ in range(3):
            p = _random_hompoly(rng, 4)
            try:
                fiber = make_fiber(p, degrees=(1, 4, 5, 6, 7))
            except SingularFibreError:
                continue
            want = jacobian_quotient_dims(sym_trivariate(p), (1, 4, 5, 6, 7))
            got = {k: fiber.dim(k) for k in (1, 4, 5, 6, 7)}
            assert got == want


class TestSingularityDetection:
    def test_cuspidal_cubic_rejected(self):
        p = HomPoly(3, {(0, 2, 1): Fraction(1), (3, 0, 0): Fraction(-1)})
        with pytest.raises(SingularFibreError):
            make_fiber(p)

    def test_mix_family_singular_values(self, mix):
        # the discriminant of the deformed Fermat quartic vanishes at t = 2
        for t0 in (Fraction(2), Fraction(-2)):
            with pytest.raises(SingularFibreError):
                make_fiber(specialize(mix, t0))
        make_fiber(specialize(mix, Fraction(1)))  # and not at t = 1


class TestNormalForm:
    def test_ideal_members_reduce_to_zero(self, mix):
        rng = random.Random(5)
        fiber = make_fiber(specialize(mix, Fraction(1)))
        partials = [poly_partial(fiber.F, i) for i in range(3)]
        for _ in range(20):
            combo = HomPoly.zero(5)
            for i in range(3):
                combo = combo + poly_mul(_random_hompoly(rng, 2), partials[i].scale(
                    Fraction(rng.randint(-2, 2))
                ))
            assert fiber.normal_form(combo).is_zero

    def test_normal_form_is_ideal_invariant(self, mix):
        rng = random.Random(6)
        fiber = make_fiber(specialize(mix, Fraction(1)))
        partials = [poly_partial(fiber.F, i) for i in range(3)]
        p = _random_hompoly(rng, 5)
        shifted = p
        for i in range(3):
            shifted = shifted + poly_mul(_random_hompoly(rng, 2), partials[i])
        assert fiber.normal_form(shifted).coords == fiber.normal_form(p).coords

    def test_representative_round_trip(self, mix):
        fiber = make_fiber(specialize(mix, Fraction(1)))
        for k in (1, 4, 5, 6):
            for idx in range(fiber.dim(k)):
                coords = tuple(
                    Fraction(1) if i == idx else Fraction(0)
                    for i in range(fiber.dim(k))
                )
                from flatunitary.jacobian import RingElement

                e = RingElement(k, coords)
                assert fiber.normal_form(fiber.representative(e)).coords == coords

    def test_jet_normal_form_specializes_at_order_zero(self, mix):
        t0 = Fraction(1)
        jfiber = make_fiber(jet_expand(mix, t0, 3))
        rfiber = make_fiber(specialize(mix, t0))
        p = HomPoly(5, {(2, 2, 1): Fraction(1)})
        jp = p.map_coefficients(lambda c: Jet.from_fraction(c, 3), domain=jfiber.F.domain)
        jnf = jfiber.normal_form(jp)
        rnf = rfiber.normal_form(p)
        assert tuple(c.order0 for c in jnf.coords) == rnf.coords


class TestSoclePairing:
    def test_bilinear_in_both_slots(self, mix):
        from flatunitary.jacobian import RingElement

        rng = random.Random(7)
        fiber = make_fiber(specialize(mix, Fraction(1)))
        d = 4
        for _ in range(10):
            p = fiber.normal_form(_random_hompoly(rng, d - 3))
            p2 = fiber.normal_form(_random_hompoly(rng, d - 3))
            q = fiber.normal_form(_random_hompoly(rng, 2 * d - 3))
            r = fiber.normal_form(_random_hompoly(rng, 2 * d - 3))
            lam = Fraction(rng.randint(1, 5), rng.randint(1, 5))
            q_plus = RingElement(
                2 * d - 3,
                tuple(a + lam * b for a, b in zip(q.coords, r.coords)),
            )
            assert fiber.socle_pair(p, q_plus) == fiber.socle_pair(
                p, q
            ) + lam * fiber.socle_pair(p, r)
            p_plus = RingElement(
                d - 3,
                tuple(a + lam * b for a, b in zip(p.coords, p2.coords)),
            )
            assert fiber.socle_pair(p_plus, q) == fiber.socle_pair(
                p, q
            ) + lam * fiber.socle_pair(p2, q)
            with pytest.raises(ValueError):
                fiber.socle_pair(q, p)

    def test_pairing_is_nondegenerate_on_fermat(self):
        # monomial bases of R_1 and R_5 pair into the socle Y0^2 Y1^2 Y2^2
        fiber = make_fiber(_fermat(4))
        kernel_rows = []
        for e1 in fiber.cobasis(1):
            row = []
            p = fiber.normal_form(HomPoly.monomial(e1, Fraction(1)))
            for e5 in fiber.cobasis(5):
                q = fiber.normal_form(HomPoly.monomial(e5, Fraction(1)))
                row.append(fiber.socle_pair(p, q))
            kernel_rows.append(row)
        from oracles import naive_kernel_dim

        assert naive_kernel_dim(kernel_rows, fiber.dim(5)) == 0


class TestHiggsField:
    def test_mix_generic_kernel(self, mix):
        from flatunitary.exactcore import kernel_basis

        fiber = make_fiber(generic_fibre(mix))
        Ft = generic_fibre(t_derivative(mix))
        H = fiber.higgs_matrix(fiber.delta_class(Ft))
        basis = kernel_basis(H)
        assert len(basis) == 2
        # the kernel is spanned by the first two coordinate directions
        order0 = sorted(tuple(1 if x == 1 else 0 for x in v) for v in basis)
        assert order0 == [(0, 1, 0), (1, 0, 0)]

    def test_degree_mismatch_rejected(self, mix):
        fiber = make_fiber(generic_fibre(mix))
        with pytest.raises(ValueError):
            fiber.delta_class(HomPoly.zero(3, domain=fiber.F.domain))
