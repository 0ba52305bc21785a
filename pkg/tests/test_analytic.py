import math

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from rabispec.analytic import (
    RabiProfile,
    Regime,
    classify_regime,
    extreme_coupling_period,
    profile_height,
    rwa_population,
    rwa_prediction,
    transfer_period,
)
from rabispec.core import Drive, LevelSystem, transition_params
from rabispec.exceptions import ConfigError

FIG3 = RabiProfile(1.0, 0.05)


@pytest.mark.parametrize(
    "omega, expected, tol",
    [
        (1.050, 0.5, 1e-12),
        (0.850, 0.1, 1e-12),
        (0.503, 0.01, 2e-5),
        (2.580, 0.001, 1e-6),
        (1.0, 1.0, 0.0),
    ],
)
def test_profile_heights_of_the_four_probe_frequencies(omega, expected, tol):
    assert profile_height(FIG3, omega) == pytest.approx(expected, abs=tol)


def test_profile_vectorized():
    w = np.array([0.95, 1.0, 1.05])
    np.testing.assert_allclose(profile_height(FIG3, w), [0.5, 1.0, 0.5], rtol=1e-12)


def test_profile_rejects_bad_parameters():
    with pytest.raises(ConfigError):
        RabiProfile(1.0, 0.0)
    with pytest.raises(ConfigError):
        RabiProfile(-1.0, 0.1)


def test_transfer_period_values():
    assert transfer_period(RabiProfile(1.0, 0.04), 1.0) == pytest.approx(math.pi / 0.04, rel=1e-15)
    assert transfer_period(RabiProfile(1.0, 0.04), 1.0) == pytest.approx(78.5398163397, rel=1e-11)
    # case a: P = 0.5
    assert transfer_period(FIG3, 1.05) == pytest.approx(math.pi * math.sqrt(0.5) / 0.05, rel=1e-12)
    assert transfer_period(FIG3, 1.05) == pytest.approx(44.4288293816, rel=1e-10)
    assert transfer_period(RabiProfile(3.0, math.pi), 3.0) == pytest.approx(1.0)


def _params(d, omega, w_ij=1.0):
    s = LevelSystem.from_arrays([0.0, w_ij], [[0, 1], [1, 0]])
    return transition_params(s, Drive(d, omega), 0, 1)


def test_rwa_population_anchors():
    p = _params(0.04, 1.0)
    period = transfer_period(RabiProfile(1.0, 0.04), 1.0)
    assert rwa_population(p, 0.0) == 0.0
    assert rwa_population(p, period) == pytest.approx(1.0, abs=1e-15)
    pb = _params(0.05, 0.85)
    assert rwa_population(pb, transfer_period(FIG3, 0.85)) == pytest.approx(0.1, abs=1e-12)


@pytest.mark.parametrize(
    "gamma, regime",
    [(50, Regime.RWA_VALID), (20, Regime.RWA_VALID), (5, Regime.MARGINAL), (2, Regime.BROKEN),
     (1, Regime.BROKEN), (0.2, Regime.EXTREME), (0.1, Regime.EXTREME), (-50, Regime.RWA_VALID)],
)
def test_classify_regime(gamma, regime):
    assert classify_regime(gamma) is regime


def test_classify_custom_thresholds():
    assert classify_regime(15, (10, 0.5)) is Regime.RWA_VALID
    assert classify_regime(0.4, (10, 0.5)) is Regime.EXTREME


def test_rwa_prediction_fields():
    pred = rwa_prediction(_params(0.04, 1.0))
    assert pred.amplitude == 1.0
    assert pred.gamma == pytest.approx(50)
    assert pred.bloch_siegert_amplitude == 1 / pred.gamma
    assert pred.regime is Regime.RWA_VALID
    assert pred.gridlines(3 * pred.transfer_period + 1e-9) == pytest.approx(
        [k * math.pi / 0.04 for k in range(4)]
    )


def test_extreme_coupling_period():
    assert extreme_coupling_period(0.0, 0.0, 0.1) == pytest.approx(math.pi / 2)
    # 2 (delta + gamma) tau = pi
    assert extreme_coupling_period(math.pi / 0.2, 0.0, 0.1) == math.inf
    # 2 (delta + gamma) tau = pi / 2
    assert extreme_coupling_period(math.pi / 0.4, 0.0, 0.1) == pytest.approx(math.pi)


centers = st.floats(1e-3, 1e3)
widths = st.floats(1e-4, 1e2)


@given(centers, widths, st.floats(0, 50))
def test_profile_symmetry_and_range(center, width, k):
    p = RabiProfile(center, width)
    d = k * width
    assert profile_height(p, center + d) == pytest.approx(profile_height(p, center - d), rel=1e-12)
    assert 0 < profile_height(p, center + d) <= 1


@given(centers, st.floats(1e-3, 10))
def test_center_and_halfwidth_identities(center, ratio):
    # width/center bounded so that center + width is representable to ~1e-13
    width = center * ratio
    p = RabiProfile(center, width)
    assert profile_height(p, center) == 1.0
    assert profile_height(p, center + width) == pytest.approx(0.5, abs=1e-12)
    assert profile_height(p, center - width) == pytest.approx(0.5, abs=1e-12)


@given(centers, widths, st.floats(0, 2e3))
def test_period_amplitude_identity(center, width, omega):
    p = RabiProfile(center, width)
    period = transfer_period(p, omega)
    assert period**2 * width**2 / math.pi**2 == pytest.approx(profile_height(p, omega), rel=1e-12, abs=1e-300)


@given(st.floats(1e-3, 0.5), st.floats(0.1, 3), st.floats(0, 1e4))
def test_rwa_population_bounded(d, omega, t):
    p = _params(d, omega)
    amp = profile_height(RabiProfile(1.0, d), omega)
    pop = rwa_population(p, t)
    assert -1e-15 <= pop <= amp * (1 + 1e-12)
    # source holds the rest within the two-level RWA picture
    assert (1 - pop) + pop == pytest.approx(1.0)


@given(st.floats(1e-3, 0.5), st.floats(0.1, 3), st.sampled_from([0.25, 2.0, 8.0]))
def test_regime_invariant_under_rescaling(d, omega, c):
    a = _params(d, omega)
    b = _params(c * d, c * omega, c * 1.0)
    assert classify_regime(a) is classify_regime(b)
