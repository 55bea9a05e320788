"""Kernel-chain ranks, second-order pairings, and their diagnostics."""

import random
from fractions import Fraction

import pytest

from flatunitary.exactcore import PrecisionExhaustedError
from flatunitary.family import parse_family
from flatunitary.unitary import (
    default_jet_order,
    eta2_on_K,
    filtration_ranks,
    mu_principal,
    mu_report,
    pointwise_kernel,
    unitary_rank,
)


class TestPointwiseKernel:
    def test_mix_kernel_at_smooth_point(self, mix):
        pk = pointwise_kernel(mix, t0=Fraction(1))
        assert sorted(pk.basis) == [
            (0, 1, 0),
            (1, 0, 0),
        ]

    def test_jumping_point_has_larger_kernel(self, mix_tt):
        # at t0 = 0 both deformation terms vanish to first order in two
        # directions, so the pointwise kernel exceeds the generic one
        pk = pointwise_kernel(mix_tt, t0=Fraction(0))
        assert len(pk.basis) == 2
        generic = filtration_ranks(mix_tt, mode="ratfun")
        assert generic.ranks[0] == 0

    def test_seeded_search(self, mix):
        pk = pointwise_kernel(mix, seed=0)
        assert pk.t0 == Fraction(52)


class TestFiltrationRanks:
    def test_mix_over_function_field(self, mix):
        res = filtration_ranks(mix, mode="ratfun")
        assert res.ranks == (2, 2, 2)
        assert res.rank_u == 2
        assert res.mode == "ratfun"
        assert res.t0 is None and res.order is None
        # the stable sections are spanned by Y0 and Y1
        spans = sorted(tuple(sorted(p.terms)) for p in res.sections)
        assert spans == [(((0, 1, 0)),), (((1, 0, 0)),)]

    def test_mix_in_jets_agrees(self, mix):
        res = filtration_ranks(mix, mode="jet", seed=0)
        assert res.ranks == (2, 2, 2)
        assert res.order == default_jet_order(3) == 10
        assert res.t0 == Fraction(52)

    def test_t_free_family_is_fully_flat(self, tfree):
        res = filtration_ranks(tfree, mode="ratfun")
        assert res.ranks == (3, 3, 3)
        jet = filtration_ranks(tfree, mode="jet", seed=0)
        assert jet.ranks == (3, 3, 3)

    def test_cubic_pencil_has_empty_kernel(self, hesse):
        res = filtration_ranks(hesse, mode="ratfun")
        assert res.ranks == (0,)
        assert res.sections == ()

    def test_rank_zero_short_circuits(self, hesse):
        res = filtration_ranks(hesse, mode="jet", seed=0, max_level=1)
        assert res.ranks == (0,)

    def test_jumping_point_ranks_stay_generic(self, mix_tt):
        # pointwise kernel is two-dimensional at t0 = 0, yet no direction
        # extends to a flat section: the chain collapses to zero
        res = filtration_ranks(mix_tt, mode="jet", t0=Fraction(0))
        assert res.ranks == (0, 0, 0)

    def test_chain_through_jumping_point(self, path_family):
        res = filtration_ranks(path_family, mode="jet", t0=Fraction(0))
        assert res.ranks == (2, 2, 2)

    def test_max_level_validation(self, mix):
        with pytest.raises(ValueError):
            filtration_ranks(mix, mode="ratfun", max_level=0)

    def test_order_must_cover_levels(self, mix):
        with pytest.raises(PrecisionExhaustedError):
            filtration_ranks(mix, mode="jet", t0=Fraction(1), order=2, max_level=3)

    def test_unknown_mode_rejected(self, mix):
        with pytest.raises(ValueError):
            filtration_ranks(mix, mode="symbolic")


class TestUnitaryRank:
    def test_function_field_mode_is_stable_by_construction(self, mix):
        rk = unitary_rank(mix, mode="ratfun")
        assert rk.stable and rk.checks == ()
        assert rk.rank_u == 2

    def test_jet_mode_runs_agreement_checks(self, mix):
        rk = unitary_rank(mix, mode="jet", seed=0)
        assert rk.stable
        assert len(rk.checks) == 2
        higher, other = rk.checks
        assert higher.t0 == rk.primary.t0
        assert higher.order == rk.primary.order + 2
        assert other.t0 != rk.primary.t0
        assert other.order == rk.primary.order
        assert higher.ranks == other.ranks == rk.primary.ranks

    def test_default_mode_tracks_degree(self, mix):
        assert unitary_rank(mix).primary.mode == "ratfun"


class TestEta2:
    def test_obstructed_extensions_are_flagged(self, mix_tt):
        eta = eta2_on_K(mix_tt, t0=Fraction(0))
        assert eta.flags == (0, 1)
        assert eta.matrix == (None, None)

    def test_partial_obstruction(self, path_family):
        eta = eta2_on_K(path_family, t0=Fraction(0))
        assert eta.flags == (2,)
        assert eta.matrix[0] == (0, 0, 0)
        assert eta.matrix[1] == (0, 0, 0)
        assert eta.matrix[2] is None

    def test_extension_choice_does_not_matter(self, path_family):
        base = eta2_on_K(path_family, t0=Fraction(0))
        rng = random.Random(17)
        pk = pointwise_kernel(path_family, t0=Fraction(0))
        k = len(pk.basis)
        for _ in range(5):
            tweaks = {}
            for i in range(k):
                if rng.random() < 0.5:
                    continue
                gamma = [Fraction(0)] * k
                coeffs = [Fraction(rng.randint(-3, 3)) for _ in range(k)]
                vec = [
                    sum(c * v[j] for c, v in zip(coeffs, pk.basis))
                    for j in range(len(pk.basis[0]))
                ]
                tweaks[i] = tuple(vec)
            got = eta2_on_K(path_family, t0=Fraction(0), extension_tweaks=tweaks)
            assert got.matrix == base.matrix
            assert got.flags == base.flags

    def test_non_kernel_tweak_rejected(self, mix):
        pk = pointwise_kernel(mix, t0=Fraction(1))
        bad = tuple(
            Fraction(1) if e == (0, 0, 1) else Fraction(0)
            for e in pk.fiber.cobasis(1)
        )
        with pytest.raises(ValueError):
            eta2_on_K(mix, t0=Fraction(1), extension_tweaks={0: bad})

    def test_empty_kernel_gives_empty_result(self, hesse):
        eta = eta2_on_K(hesse, t0=Fraction(1))
        assert eta.basis == () and eta.matrix == () and eta.flags == ()


class TestMuPrincipal:
    def test_second_derivative_pairing_on_jumping_kernel(self, mix_tt):
        _, rows = mu_principal(mix_tt, t0=Fraction(0))
        assert rows == ((0, 2), (2, 0))

    def test_zero_when_family_is_linear_in_t(self, mix):
        _, rows = mu_principal(mix, t0=Fraction(1))
        assert all(all(x == 0 for x in row) for row in rows)

    def test_partial_jump_pairing(self, path_family):
        _, rows = mu_principal(path_family, t0=Fraction(0))
        assert rows == ((0, 0, 0), (0, 0, 0), (0, 0, 2))


class TestMuReport:
    def test_jumping_point_report(self, mix_tt):
        rep = mu_report(mix_tt, t0=Fraction(0))
        assert rep.kernel_dim == 2
        assert rep.eta2_flags == (0, 1)
        assert rep.principal == ((0, 2), (2, 0))
        assert rep.c is None and rep.residual is None
        assert rep.eta2_kernel_dim == 0
        assert rep.rank_u == 0 and rep.ranks == (0, 0, 0)
        assert rep.rank_stable and rep.inclusion_ok

    def test_partial_jump_report(self, path_family):
        rep = mu_report(path_family, t0=Fraction(0))
        assert rep.kernel_dim == 3
        assert rep.eta2_flags == (2,)
        # the principal form vanishes on the usable rows, leaving no
        # scale to fit, and the residual is exactly zero
        assert rep.c is None and rep.residual_zero
        assert rep.eta2_kernel_dim == 2
        assert rep.rank_u == 2
        assert rep.inclusion_ok

    def test_smooth_point_report(self, mix):
        rep = mu_report(mix, t0=Fraction(1))
        assert rep.kernel_dim == 2
        assert rep.eta2_flags == ()
        assert rep.eta2 == ((0, 0), (0, 0))
        assert rep.principal == ((0, 0), (0, 0))
        assert rep.c is None  # zero principal pairing leaves no scale to fit
        assert rep.residual_zero
        assert rep.eta2_kernel_dim == 2
        assert rep.rank_u == 2 and rep.inclusion_ok
