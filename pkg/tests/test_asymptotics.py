"""Mellin-Parseval machinery and the three growth regimes.

Frozen references were computed once with 40-digit arithmetic
(transform formulas, closed forms) or converged high-resolution
quadrature and are hard-coded here.
"""

import numpy as np
import pytest

from btescan.asymptotics import (airy_regime_prediction, airy_tail_integral,
                                 comparable_regime_limit, i3_direct, i3_limit,
                                 k_dominant_prediction,
                                 log_growth_decomposition, mellin_j_squared,
                                 mellin_j_squared_direct, mellin_weight,
                                 n_dominant_probe, parseval_direct,
                                 parseval_eval)
from btescan.btefun import bte_value
from btescan.errors import (DomainViolation, PoleHit, TruncationInsufficient)
from btescan.types import MellinConfig, ModeSpec, QuadratureConfig

I3_D2_EPS_HALF = 0.30634896253003312212  # arccosh(1.5) / pi
I3_D3_EPS_HALF = 0.42053433528396512789  # arccos(2/3) / 2


class TestMellinWeight:
    def test_d2_at_z1_is_log_ratio(self):
        # removable singularity: value is ln((1+eps)/(1-eps))
        eps = 0.3
        assert abs(mellin_weight(1.0, eps, 2)
                   - np.log(1.3 / 0.7)) < 1e-12

    def test_d3_at_z0(self):
        eps = 0.3
        assert abs(mellin_weight(0.0, eps, 3)
                   - np.log(1.3 / 0.7)) < 1e-12

    def test_series_continuity(self):
        # the local series must join the closed form smoothly
        for d, z0 in ((2, 1.0), (3, 0.0)):
            inner = mellin_weight(z0 + 5e-7, 0.4, d)
            outer = mellin_weight(z0 + 2e-6, 0.4, d)
            assert abs(inner - outer) < 1e-5 * abs(outer)

    def test_eps_domain(self):
        with pytest.raises(DomainViolation):
            mellin_weight(0.5, 1.5, 2)


class TestMellinJSquared:
    def test_frozen_oracle(self):
        assert abs(mellin_j_squared(0.5, 1.0)
                   - 0.82312989008935857551) < 1e-13

    def test_matches_direct_integral(self):
        for z, nu in ((0.5, 1.0), (0.3 + 2.0j, 0.5), (0.7, 2.5)):
            formula = mellin_j_squared(z, nu)
            direct = mellin_j_squared_direct(z, nu)
            assert abs(formula - direct) < 1e-6 * abs(formula)

    def test_pole_hit(self):
        with pytest.raises(PoleHit):
            mellin_j_squared(1.0, 1.0)  # Gamma(1-z) pole
        with pytest.raises(PoleHit):
            mellin_j_squared(-2.0, 1.0)  # Gamma(nu + z/2) pole

    def test_direct_strip_domain(self):
        with pytest.raises(DomainViolation):
            mellin_j_squared_direct(1.5, 1.0)


class TestParseval:
    def test_matches_frozen_direct_value(self):
        # int_{0.5}^{1.5} J_1^2(10 t) dt
        val = parseval_eval(10.0, 1.0, 0.5, 2)
        assert abs(val - 0.03798269858160625635) < 1e-9

    def test_contour_abscissa_invariance(self):
        a = parseval_eval(10.0, 1.0, 0.5, 2, MellinConfig(c=0.3))
        b = parseval_eval(10.0, 1.0, 0.5, 2, MellinConfig(c=0.7))
        assert abs(a - b) <= 1e-8 * abs(b)

    def test_doubling_y_max_changes_little(self):
        base = MellinConfig(y_max=20000.0)
        doubled = MellinConfig(y_max=40000.0)
        a = parseval_eval(10.0, 1.0, 0.5, 2, base)
        b = parseval_eval(10.0, 1.0, 0.5, 2, doubled)
        # the change must be below the enforced tail bound (quad_tol)
        assert abs(a - b) <= base.quad_tol

    def test_truncation_insufficient(self):
        with pytest.raises(TruncationInsufficient):
            parseval_eval(10.0, 1.0, 0.5, 2, MellinConfig(y_max=50.0))

    def test_d3_weight(self):
        val = parseval_eval(8.0, 1.5, 0.4, 3)
        ref = parseval_direct(8.0, 1.5, 0.4, 3)
        assert abs(val - ref) < 1e-6 * abs(ref)

    def test_domain(self):
        with pytest.raises(DomainViolation):
            parseval_eval(-1.0, 1.0, 0.5, 2)


class TestI3Limit:
    def test_d2_closed_form(self):
        cfg = MellinConfig(y_max=5e5, quad_tol=1e-6)
        val = i3_limit(0.5, 2, cfg)
        assert abs(val - I3_D2_EPS_HALF) < 1e-8

    def test_d3_closed_form(self):
        cfg = MellinConfig(y_max=5e5, quad_tol=1e-6)
        val = i3_limit(0.5, 3, cfg)
        assert abs(val - I3_D3_EPS_HALF) < 1e-8

    def test_vanishes_with_eps(self):
        cfg = MellinConfig(y_max=2e5, quad_tol=1e-4)
        vals = [i3_limit(eps, 2, cfg).real for eps in (0.4, 0.2, 0.1)]
        assert vals[0] > vals[1] > vals[2] > 0

    @pytest.mark.xfail(
        strict=True,
        reason="along n = k/10 the n/k ratio is pinned at 0.1, so the "
               "weight factor f(nu t / k) contributes a constant ~10% "
               "bias and the probe cannot converge below it")
    def test_direct_probe_protocol_d2(self):
        cfg = QuadratureConfig(max_panels=262144)
        diffs = []
        for k in (200.0, 400.0, 800.0):
            n = int(k // 10)
            diffs.append(abs(i3_direct(n, k, 0.5, 2, cfg).real
                             / I3_D2_EPS_HALF - 1.0))
        assert diffs[0] > diffs[1] > diffs[2]
        assert diffs[-1] <= 0.10

    def test_direct_probe_converges_as_ratio_shrinks(self):
        # with n fixed and k doubling, n/k -> 0 and the probe converges
        cfg = QuadratureConfig(max_panels=262144)
        diffs = [abs(i3_direct(20, k, 0.5, 2, cfg).real
                     / I3_D2_EPS_HALF - 1.0)
                 for k in (800.0, 3200.0, 12800.0)]
        assert diffs[0] > diffs[1] > diffs[2]
        assert diffs[-1] <= 0.01
        diffs3 = [abs(i3_direct(80, k, 0.5, 3, cfg).real
                      / I3_D3_EPS_HALF - 1.0)
                  for k in (800.0, 3200.0, 12800.0)]
        assert diffs3[0] > diffs3[1] > diffs3[2]
        assert diffs3[-1] <= 0.01


class TestRegimePredictions:
    def test_k_dominant_formulas(self):
        k = 100.0 + 2.0j
        assert abs(k_dominant_prediction(4, k, 2)
                   - np.log(k / 4) / (np.pi * k)) < 1e-15
        assert abs(k_dominant_prediction(4, k, 3)
                   - np.pi / (4 * 4 * k)) < 1e-16

    def test_comparable_d2_closed_form(self):
        assert abs(comparable_regime_limit(2.0, 2)
                   - 0.69486516598987875811) < 1e-13

    def test_comparable_d3_quadrature(self):
        assert abs(comparable_regime_limit(2.0, 3)
                   - 1.3985840750068168891) < 1e-11

    def test_comparable_domain(self):
        with pytest.raises(DomainViolation):
            comparable_regime_limit(1.0, 2)

    def test_airy_tail_identity(self):
        # cross-checked against quadrature in the verification suite;
        # here: the identity is exact at a = 0 against frozen Ai values
        ai0, aip0 = 0.35502805388781723926, -0.25881940379280679841
        assert abs(airy_tail_integral(0.0) - aip0 ** 2) < 1e-15
        assert airy_tail_integral(-2.0) > airy_tail_integral(0.0) > \
            airy_tail_integral(3.0) > 0
        assert abs(airy_regime_prediction(0.0, 2)
                   - 2.0 ** (1.0 / 3.0) * 2.0 * airy_tail_integral(0.0)) < 1e-15

    def test_n_dominant_probe_d2(self):
        measured, predicted = n_dominant_probe(60, 10.0, 2)
        assert predicted > 0
        assert 0.9 <= measured.real / predicted <= 1.1
        assert abs(measured.imag) <= 0.05 * abs(measured)

    def test_n_dominant_predicted_positive(self):
        _, predicted = n_dominant_probe(60, 10.0 + 0.001j, 2)
        assert predicted > 0

    def test_n_dominant_converges(self):
        errs = [abs(n_dominant_probe(n, 10.0, 2)[0].real
                    / n_dominant_probe(n, 10.0, 2)[1] - 1.0)
                for n in (40, 80, 160)]
        assert errs[0] > errs[1] > errs[2]

    def test_n_dominant_ratio_guard(self):
        with pytest.raises(DomainViolation):
            n_dominant_probe(5, 10.0, 2)


class TestLogGrowth:
    def test_i2_closed_form(self):
        _, i2, _ = log_growth_decomposition(100.0 + 0.0j, 3, 10.0)
        assert abs(i2 - (np.log(100.0) + 1.0 - 0.1 - np.log(10.0))) < 1e-14

    def test_reconstruction(self):
        cfg = QuadratureConfig(max_panels=16384)
        for k in (100.0 + 0.0j, 50.0 + 2.0j):
            i1, i2, i3 = log_growth_decomposition(k, 3, 1.0, cfg)
            ref = np.pi * k * bte_value(k, ModeSpec(2, 3), cfg)
            assert abs(i1 + i2 + i3 - ref) <= 1e-10 * abs(ref)

    def test_domain(self):
        with pytest.raises(DomainViolation):
            log_growth_decomposition(0.5 + 0.0j, 3, 1.0)
