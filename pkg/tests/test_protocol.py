import numpy as np
import pytest

from twowayqkd import (AttackParams, ProtocolParams, UnphysicalStateError, attack_from_class,
                       asymptotic_total_spectrum, bob_cm, conditional_cm,
                       conditional_entropy_asymptotic, conditional_spectrum_asymptotic,
                       conditioning_deviation, heterodyne_condition,
                       holevo_asymptotic, keyrate_asymptotic, keyrate_report,
                       mutual_information_asymptotic, partial_trace, symplectic_spectrum,
                       total_cm, total_cm_circuit, total_entropy_asymptotic,
                       von_neumann_entropy)

from _util import random_physical_attack


def random_protocol_params(rng):
    return ProtocolParams(T=float(rng.uniform(0.05, 0.95)),
                          eta=float(rng.uniform(0.05, 0.95)),
                          mu_B=float(rng.uniform(1.0, 20.0)),
                          mu_A=float(rng.uniform(1.0, 20.0)))


class TestProtocolParams:
    @pytest.mark.parametrize("kwargs", [
        dict(T=0.0, eta=0.5, mu_B=2.0, mu_A=2.0),
        dict(T=1.0, eta=0.5, mu_B=2.0, mu_A=2.0),
        dict(T=0.5, eta=1.0, mu_B=2.0, mu_A=2.0),
        dict(T=0.5, eta=0.5, mu_B=0.5, mu_A=2.0),
        dict(T=0.5, eta=0.5, mu_B=2.0, mu_A=0.0),
    ])
    def test_rejects_out_of_range(self, kwargs):
        with pytest.raises(ValueError):
            ProtocolParams(**kwargs)

    def test_displacement_limit_coupling(self):
        p = ProtocolParams.displacement_limit(0.7, mu=10.0, eta=0.9)
        assert p.mu_B == 11.0
        assert p.mu_A == pytest.approx(10.0 / 0.1 + 1.0, rel=1e-15)


class TestTotalCm:
    def test_lossless_vacuum_is_identity(self):
        p = ProtocolParams(T=1.0 - 1e-12, eta=0.5, mu_B=1.0, mu_A=1.0)
        a = AttackParams(1.0, 0.0, 0.0)
        np.testing.assert_allclose(total_cm(p, a), np.eye(8), atol=1e-6)

    def test_b1_block_is_bob_variance(self):
        rng = np.random.default_rng(17)
        for _ in range(5):
            p = random_protocol_params(rng)
            a = random_physical_attack(rng)
            V = total_cm(p, a)
            np.testing.assert_allclose(V[:2, :2], p.mu_B * np.eye(2), atol=1e-12)

    def test_matches_circuit_on_random_draws(self):
        rng = np.random.default_rng(23)
        for _ in range(25):
            p = random_protocol_params(rng)
            a = random_physical_attack(rng)
            np.testing.assert_allclose(total_cm(p, a), total_cm_circuit(p, a), atol=1e-10)

    def test_circuit_returned_mode_variance_anchor(self):
        # direct evaluation: T^2 eta mu_B + T(1-eta) mu_A + (T eta + 1)(1-T) omega
        p = ProtocolParams(T=0.5, eta=0.5, mu_B=3.0, mu_A=3.0)
        a = AttackParams(2.0, 0.0, 0.0)
        eps = 0.25 * 0.5 * 3.0 + 0.5 * 0.5 * 3.0 + (0.25 + 1.0) * 0.5 * 2.0
        assert eps == 2.375
        np.testing.assert_allclose(total_cm_circuit(p, a)[6:, 6:], eps * np.eye(2), atol=1e-12)

    def test_trivial_sources_give_pure_output(self):
        p = ProtocolParams(T=0.5, eta=0.5, mu_B=1.0, mu_A=1.0)
        a = AttackParams(1.0, 0.0, 0.0)
        nu = symplectic_spectrum(total_cm_circuit(p, a))
        np.testing.assert_allclose(nu, np.ones(4), atol=1e-9)


class TestBobAndConditionalCm:
    def test_bob_cm_is_partial_trace_of_total(self):
        rng = np.random.default_rng(31)
        for _ in range(10):
            p = random_protocol_params(rng)
            a = random_physical_attack(rng)
            np.testing.assert_allclose(
                bob_cm(p, a), partial_trace(total_cm(p, a), keep=(0, 3)), atol=1e-12)

    def test_correlation_block_structure(self):
        p = ProtocolParams(T=0.6, eta=0.99, mu_B=10.0, mu_A=10.0)
        a = AttackParams(2.0, 1.0, 1.0)
        V = bob_cm(p, a)
        theta = p.T * np.sqrt(p.eta * (p.mu_B ** 2 - 1.0))
        np.testing.assert_allclose(V[:2, 2:], theta * np.diag([1.0, -1.0]), atol=1e-12)
        eps = (p.T ** 2 * p.eta * p.mu_B + p.T * (1 - p.eta) * p.mu_A
               + (p.T * p.eta + 1.0) * (1.0 - p.T) * a.omega)
        g_eps = 2.0 * (1.0 - p.T) * np.sqrt(p.eta * p.T)
        np.testing.assert_allclose(V[2:, 2:], (eps + g_eps) * np.eye(2), atol=1e-12)

    def test_conditional_cm_idempotent_at_mu_a_one(self):
        p = ProtocolParams(T=0.7, eta=0.9, mu_B=5.0, mu_A=1.0)
        a = AttackParams(1.5, 0.3, -0.2)
        np.testing.assert_array_equal(conditional_cm(p, a), bob_cm(p, a))

    def test_conditioning_deviation_small_in_limit(self):
        p = ProtocolParams(T=0.65, eta=1.0 - 1e-6, mu_B=1e6, mu_A=1e6)
        a = attack_from_class("sep-sym-", 2.0)
        dev, residual = conditioning_deviation(p, a)
        assert dev < 1e-3
        assert abs(residual - 1.0) < 1e-3

    def test_exact_conditioning_differs_at_finite_eta(self):
        # away from the displacement limit the substitution is only approximate
        p = ProtocolParams(T=0.65, eta=0.7, mu_B=20.0, mu_A=20.0)
        a = attack_from_class("sep-sym-", 2.0)
        dev, _ = conditioning_deviation(p, a)
        assert dev > 1e-3


class TestAsymptoticSpectra:
    def test_collective_reduction_is_exact(self):
        for w in (1.0, 1.1, 1.7, 2.3, 5.0):
            nu1, nu2, _ = asymptotic_total_spectrum(0.6, AttackParams(w, 0.0, 0.0), 1e6)
            assert nu1 == w and nu2 == w
            nb1, _ = conditional_spectrum_asymptotic(0.6, AttackParams(w, 0.0, 0.0), 1e6)
            assert nb1 == w

    def test_epr_attack_hides_thermal_noise(self):
        a = attack_from_class("epr+", 2.0)
        nu1, nu2, product = asymptotic_total_spectrum(0.5, a, 1e6)
        assert abs(nu1 - 1.0) < 1e-12 and abs(nu2 - 1.0) < 1e-12
        assert product == pytest.approx(0.25e12)

    def test_symmetric_separable_attack_values(self):
        a = attack_from_class("sep-sym-", 2.0)
        nu1, nu2, product = asymptotic_total_spectrum(0.5, a, 1e6)
        assert {round(nu1, 12), round(nu2, 12)} == {3.0, 1.0}
        assert product == pytest.approx(0.25e12)

    def test_conditional_values(self):
        a = attack_from_class("sep-sym-", 2.0)
        nb1, nb2 = conditional_spectrum_asymptotic(0.65, a, 1e6)
        expected = 2.0 - 2.0 * np.sqrt(0.65) / 1.65
        assert nb1 == pytest.approx(expected, rel=1e-12)
        assert nb2 == pytest.approx((1.0 - 0.65 ** 2) * 1e6, rel=1e-15)

    def test_conditional_limit_toward_full_transmission(self):
        a = attack_from_class("sep-sym-", 2.0)
        nb1, _ = conditional_spectrum_asymptotic(1.0 - 1e-9, a, 1e6)
        assert nb1 == pytest.approx(1.0, abs=1e-4)

    def test_numeric_conditional_spectrum_converges(self):
        for label in ("collective", "epr+", "sep-sym-", "sep-anti+"):
            a = attack_from_class(label, 2.0)
            p = ProtocolParams.displacement_limit(0.65, mu=1e6, eta=1.0 - 1e-6)
            numeric = symplectic_spectrum(conditional_cm(p, a))
            nb1, nb2 = conditional_spectrum_asymptotic(0.65, a, 1e6)
            expected = np.sort([nb1, nb2])[::-1]
            np.testing.assert_allclose(numeric, expected, rtol=1e-3)

    def test_numeric_total_entropy_converges(self):
        # mu and eta chosen so the displacement limit stays representable in float64
        for label in ("collective", "sep-sym+", "sep-sym-", "sep-anti+", "epr+"):
            for T in (0.5, 0.9):
                a = attack_from_class(label, 2.0)
                p = ProtocolParams.displacement_limit(T, mu=1e5, eta=1.0 - 1e-2)
                s_num = von_neumann_entropy(total_cm(p, a))
                s_asy = total_entropy_asymptotic(T, a, 1e5)
                assert abs(s_num - s_asy) < 1e-2

    def test_unphysical_regime_raises(self):
        with pytest.raises(UnphysicalStateError):
            asymptotic_total_spectrum(0.5, AttackParams(2.0, 1.9, 1.9), 1e6)


class TestInformationQuantities:
    def test_holevo_pure_loss(self):
        T, mu = 0.7, 1e6
        chi = holevo_asymptotic(T, AttackParams(1.0, 0.0, 0.0), mu)
        assert chi == pytest.approx(np.log2(0.5 * np.e * (1 - T) / (1 + T) * mu), rel=1e-14)

    def test_holevo_is_entropy_difference(self):
        rng = np.random.default_rng(37)
        for _ in range(20):
            a = random_physical_attack(rng)
            T, mu = float(rng.uniform(0.1, 0.95)), 1e6
            chi = holevo_asymptotic(T, a, mu)
            diff = total_entropy_asymptotic(T, a, mu) - conditional_entropy_asymptotic(T, a, mu)
            assert abs(chi - diff) < 1e-12

    def test_mutual_information_near_full_transmission(self):
        mu = 1e6
        iab, sigma, sigma_p, _ = mutual_information_asymptotic(
            1.0 - 1e-9, AttackParams(2.0, 0.5, -0.5), mu)
        assert sigma == pytest.approx(2.0, abs=1e-6)
        assert sigma_p == pytest.approx(2.0, abs=1e-6)
        assert iab == pytest.approx(np.log2(mu / 2.0), abs=1e-6)

    def test_mutual_information_pure_loss_value(self):
        iab, sigma, sigma_p, delta = mutual_information_asymptotic(
            0.9, AttackParams(1.0, 0.0, 0.0), 1e6)
        assert sigma == 2.0 and sigma_p == 2.0 and delta == 2.0
        assert iab == pytest.approx(0.5 * np.log2(0.81e12 / 4.0), rel=1e-14)

    def test_mutual_information_decreases_with_noise(self):
        vals = [mutual_information_asymptotic(0.65, attack_from_class("sep-sym-", w), 1e6)[0]
                for w in (1.0, 1.5, 2.0, 3.0, 5.0)]
        assert all(b < a for a, b in zip(vals, vals[1:]))


class TestKeyRate:
    def test_pure_loss_spot_value(self):
        r = keyrate_asymptotic(0.9, AttackParams(1.0, 0.0, 0.0))
        assert abs(r - np.log2(0.9 * 1.9 / (np.e * 0.1))) < 1e-12

    def test_epr_signs_equivalent(self):
        for T in (0.3, 0.65, 0.9):
            for w in (1.2, 2.0, 4.0):
                r_pos = keyrate_asymptotic(T, attack_from_class("epr+", w))
                r_neg = keyrate_asymptotic(T, attack_from_class("epr-", w))
                assert abs(r_pos - r_neg) <= 1e-9

    def test_rate_equals_information_difference(self):
        rng = np.random.default_rng(43)
        for _ in range(25):
            a = random_physical_attack(rng)
            T = float(rng.uniform(0.1, 0.95))
            r = keyrate_asymptotic(T, a)
            iab = mutual_information_asymptotic(T, a, 1e6)[0]
            chi = holevo_asymptotic(T, a, 1e6)
            assert abs(r - (iab - chi)) < 1e-9

    def test_modulation_independence(self):
        rng = np.random.default_rng(47)
        for _ in range(25):
            a = random_physical_attack(rng)
            T = float(rng.uniform(0.1, 0.95))
            r5 = (mutual_information_asymptotic(T, a, 1e5)[0] - holevo_asymptotic(T, a, 1e5))
            r7 = (mutual_information_asymptotic(T, a, 1e7)[0] - holevo_asymptotic(T, a, 1e7))
            assert abs(r5 - r7) <= 1e-9

    def test_quadrature_swap_symmetry(self):
        rng = np.random.default_rng(53)
        for _ in range(20):
            a = random_physical_attack(rng)
            swapped = AttackParams(a.omega, a.g_prime, a.g)
            T = float(rng.uniform(0.1, 0.95))
            assert keyrate_asymptotic(T, a) == pytest.approx(
                keyrate_asymptotic(T, swapped), abs=1e-12)

    def test_report_fields_and_invariants(self):
        a = attack_from_class("sep-sym-", 2.0)
        rep = keyrate_report(0.65, a, mu=1e6)
        assert abs(rep.R - (rep.I_AB - rep.chi_EA)) <= 1e-10
        assert rep.chi_EA >= -1e-9
        assert list(rep.to_dict()) == [
            "nu1", "nu2", "nu3nu4_product", "nubar1", "nubar2", "S_E", "S_E_cond",
            "I_AB", "chi_EA", "R", "sigma", "sigma_prime", "Delta"]
        assert rep.nu1 == pytest.approx(3.0, rel=1e-12)
        assert rep.nu2 == pytest.approx(1.0, abs=1e-12)


class TestExactEntanglementBasedOracle:
    """Recompute the rate from the total covariance matrix alone.

    Mutual information from exact heterodyne conditioning (the returned mode
    given Bob's reference measurement, with and without Alice's), the Holevo
    bound from exact conditional entropies.  At a finite displacement limit
    the closed forms must agree up to the O(1-eta) bias, and the bias must
    shrink as eta approaches 1.
    """

    @staticmethod
    def _exact_rate(T, a, mu, eta):
        p = ProtocolParams.displacement_limit(T, mu=mu, eta=eta)
        V = total_cm(p, a)
        chi = (von_neumann_entropy(V)
               - von_neumann_entropy(heterodyne_condition(V, measured=1)))
        v_b = heterodyne_condition(V, measured=0)        # modes A, A'', B2
        v_ba = heterodyne_condition(V, measured={0, 1})  # modes A'', B2
        iab = (0.5 * np.log2((v_b[4, 4] + 1.0) / (v_ba[2, 2] + 1.0))
               + 0.5 * np.log2((v_b[5, 5] + 1.0) / (v_ba[3, 3] + 1.0)))
        return iab - chi

    def test_closed_form_agrees_with_exact_simulation(self):
        worst = 0.0
        for label in ("collective", "sep-sym-", "sep-anti+", "epr+"):
            for T in (0.5, 0.65, 0.9):
                a = attack_from_class(label, 2.0)
                gap = abs(self._exact_rate(T, a, 1e4, 1.0 - 1e-2) - keyrate_asymptotic(T, a))
                worst = max(worst, gap)
        assert worst < 5e-2

    def test_bias_shrinks_toward_displacement_limit(self):
        a = attack_from_class("sep-sym-", 2.0)
        r = keyrate_asymptotic(0.65, a)
        far = abs(self._exact_rate(0.65, a, 1e4, 1.0 - 3e-2) - r)
        near = abs(self._exact_rate(0.65, a, 1e4, 1.0 - 1e-2) - r)
        assert near < far
