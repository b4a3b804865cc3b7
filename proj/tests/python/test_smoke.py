"""Smoke tests for the python bindings (run against the build tree)."""

import math
import os

import pytest

import yeastlink as yl

ROOT = os.environ.get("YEASTLINK_ROOT", os.path.join(os.path.dirname(__file__), "..", ".."))
RX_PARAMS = os.path.join(ROOT, "params", "rx_default.params")
TX_PARAMS = os.path.join(ROOT, "params", "tx_default.params")


def test_version():
    assert yl.__version__


def test_stimulus_profile():
    p = yl.StimulusProfile.pulse_train(10000.0, 1.0, 120.0, 3)
    assert p.level_at(0.5) == 10000.0
    assert p.level_at(60.0) == 0.0
    assert p.breakpoints() == [0.0, 1.0, 121.0, 122.0, 242.0, 243.0]


def test_impulse_response_matches_closed_form():
    ch = yl.ChannelParams()
    ch.D = 1e-10
    ch.k_alpha = 0.0
    t, alpha0 = 0.4, 1e-18
    expected = alpha0 / (4.0 * math.pi * ch.D * t) ** 1.5
    assert yl.impulse_response(0.0, t, ch, alpha0) == pytest.approx(expected)
    # peak lag at 10 um is r^2 / (6 D)
    assert yl.peak_time(1e-5, ch) == pytest.approx(1e-10 / (6.0 * ch.D), rel=1e-5)


def test_mc_estimate_reproducible():
    ch = yl.ChannelParams()
    ch.D = 1e-10
    ch.k_alpha = 0.05
    kwargs = dict(
        alpha0_mol=1e-18,
        r_m=1e-5,
        probe_radius_m=5e-6,
        sample_times_s=[0.1, 0.2],
        n_particles=5000,
        seed=11,
    )
    a = yl.mc_estimate(ch, **kwargs)
    b = yl.mc_estimate(ch, **kwargs)
    assert a["estimate_mol_m3"] == b["estimate_mol_m3"]
    assert all(v >= 0 for v in a["estimate_mol_m3"])


def test_receiver_pulse_response():
    stim = yl.StimulusProfile.pulse_train(10000.0, 1.0, 120.0, 1)
    out = yl.simulate_receiver(RX_PARAMS, yl.Strain.bar1_delta, stim, horizon_min=60.0)
    assert out["basal_Fus1_mRNA"] > 0
    fold = [v / out["basal_Fus1_mRNA"] for v in out["Fus1_mRNA"]]
    assert max(fold) >= 10.0
    t_peak = out["time_min"][fold.index(max(fold))]
    assert 1.0 <= t_peak <= 5.0


def test_transmitter_induction():
    gal = yl.StimulusProfile.pulse_train(1e5, 120.0, 0.1, 1)
    out = yl.simulate_transmitter(TX_PARAMS, gal, horizon_min=120.0, settle_min=1500.0)
    assert out["MFalpha1"][-1] > 2.0 * out["MFalpha1"][0]


def test_detect_events_on_synthetic_series():
    t = [0.5 * i for i in range(0, 800)]
    v = [
        sum(math.exp(-((x - c) ** 2) / 450.0) for c in (60.0, 180.0, 300.0))
        for x in t
    ]
    ev = yl.detect_events(t, v)
    assert ev["event_count"] == 3
    assert ev["rate_per_hour"] == pytest.approx(3.0 / (t[-1] / 60.0))
