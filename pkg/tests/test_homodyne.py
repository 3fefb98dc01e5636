# Copyright 2026 The wgsq-lib Authors. All rights reserved.
#
# Licensed under the Apache License, Version 2.0 (the "License");
# you may not use this file except in compliance with the License.
# You may obtain a copy of the License at
#
#    http://www.apache.org/licenses/LICENSE-2.0
#
# Unless required by applicable law or agreed to in writing, software
# distributed under the License is distributed on an "AS IS" BASIS,
# WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
# See the License for the specific language governing permissions and
# limitations under the License.

import numpy as np
import pytest
from pydantic import ValidationError

from wgsq.detectors import ConstantCircuitNoise, FlatResponse, TabulatedResponse, TwoPoleResponse
from wgsq.exceptions import RangeError, SettingsError
from wgsq.homodyne import (
    AnalyzerSettings,
    FrequencySweep,
    ScanSettings,
    expected_trace,
    lo_phase,
    measured_ratio,
    measured_squeezing_vs_frequency,
    phase_scan_trace,
    quadrature_variance,
    threshold_frequency,
    video_filter,
)
from wgsq.squeezer import SqueezerParams, squeeze_levels
from wgsq.units import dbm_to_watts

DEVICE_PARAMS = SqueezerParams(eta=0.79, a=12.1)
PUMP = 0.304


def test_quadrature_variance_extremes():
    r_minus, r_plus = squeeze_levels(DEVICE_PARAMS, PUMP)

    assert quadrature_variance(DEVICE_PARAMS, PUMP, 0.0) == pytest.approx(r_minus)
    assert quadrature_variance(DEVICE_PARAMS, PUMP, np.pi / 2) == pytest.approx(r_plus)
    assert quadrature_variance(DEVICE_PARAMS, PUMP, np.pi) == pytest.approx(r_minus)


def test_lo_phase_is_a_triangle():
    scan = ScanSettings(scan_frequency=1.0, phase_excursion=np.pi)
    time = np.array([0.0, 0.25, 0.5, 0.75])

    np.testing.assert_allclose(lo_phase(scan, time), [0.0, np.pi / 2, np.pi, np.pi / 2], atol=1e-12)


def test_video_filter_starts_in_steady_state():
    flat = np.full(50, 3.0)
    np.testing.assert_allclose(video_filter(flat, 100.0, 1000.0), flat)

    step = np.concatenate([np.zeros(10), np.ones(200)])
    out = video_filter(step, 100.0, 1000.0)
    assert np.all(np.diff(out) >= 0)
    assert out[-1] == pytest.approx(1.0, rel=1e-6)


@pytest.mark.parametrize(
    "kwargs",
    [
        pytest.param({"duration": -1.0}, id="negative_duration"),
        pytest.param({"sample_rate": 0.0}, id="zero_rate"),
        pytest.param({"scan_waveform": "sine"}, id="unknown_waveform"),
        pytest.param({"unknown": 1}, id="extra_field"),
    ],
)
def test_scan_settings_validation(kwargs):
    with pytest.raises(ValidationError):
        ScanSettings(**kwargs)


@pytest.mark.parametrize(
    "kwargs",
    [
        pytest.param({"rbw": 1e3, "vbw": 3e3}, id="vbw_above_rbw"),
        pytest.param({"shot_level_dbm": -60.0}, id="shot_below_circuit"),
    ],
)
def test_analyzer_settings_validation(kwargs):
    with pytest.raises(ValidationError):
        AnalyzerSettings(**kwargs)


def test_default_analyzer_scatter_is_a_tenth_of_a_db():
    analyzer = AnalyzerSettings()

    assert analyzer.relative_sigma == pytest.approx(np.sqrt(3e3 / 5e6))
    assert 10 * np.log10(1 + analyzer.relative_sigma) == pytest.approx(0.1, abs=0.01)
    assert analyzer.circuit_ratio == pytest.approx(0.01)


def test_undersampled_scan_rejected():
    scan = ScanSettings(sample_rate=3.0)

    with pytest.raises(SettingsError):
        phase_scan_trace(DEVICE_PARAMS, PUMP, scan, AnalyzerSettings(), seed=0)


def test_expected_trace_levels():
    trace = expected_trace(DEVICE_PARAMS, PUMP, ScanSettings(), AnalyzerSettings())

    assert len(trace.time) == 4000
    assert trace.power_dbm.min() == pytest.approx(-36.25, abs=0.01)
    assert trace.power_dbm.max() == pytest.approx(-14.34, abs=0.01)
    assert trace.relative_db().min() == pytest.approx(-6.25, abs=0.01)


def test_trace_is_deterministic_for_a_seed():
    scan = ScanSettings(duration=0.5)
    first = phase_scan_trace(DEVICE_PARAMS, PUMP, scan, AnalyzerSettings(), seed=42)
    second = phase_scan_trace(DEVICE_PARAMS, PUMP, scan, AnalyzerSettings(), seed=42)
    other = phase_scan_trace(DEVICE_PARAMS, PUMP, scan, AnalyzerSettings(), seed=43)

    assert np.array_equal(first.power_dbm, second.power_dbm)
    assert not np.array_equal(first.power_dbm, other.power_dbm)
    assert first.seed == 42


def test_trace_average_recovers_expectation():
    scan = ScanSettings(duration=0.5)
    analyzer = AnalyzerSettings()
    n_traces = 100

    traces = [
        dbm_to_watts(phase_scan_trace(DEVICE_PARAMS, PUMP, scan, analyzer, seed=s).power_dbm)
        for s in range(n_traces)
    ]
    mean = np.mean(traces, axis=0)
    expected = dbm_to_watts(expected_trace(DEVICE_PARAMS, PUMP, scan, analyzer).power_dbm)

    bound = 3.0 * analyzer.relative_sigma * expected / np.sqrt(n_traces)
    within = np.abs(mean - expected) <= bound
    assert np.mean(within) >= 0.99


def test_trace_never_falls_below_circuit_noise():
    analyzer = AnalyzerSettings(circuit_level_dbm=-37.0)
    trace = phase_scan_trace(DEVICE_PARAMS, PUMP, ScanSettings(), analyzer, seed=1)

    assert trace.power_dbm.min() >= -37.0 - 1e-9


def test_measured_ratio():
    r_minus, _ = squeeze_levels(DEVICE_PARAMS, PUMP)

    assert measured_ratio(r_minus, 1.0, 0.0) == pytest.approx(r_minus)
    assert 10 * np.log10(measured_ratio(r_minus, 1.0, 0.01)) == pytest.approx(-6.29, abs=0.005)
    # with no optical gain only circuit noise is left
    assert measured_ratio(r_minus, 0.0, 0.01) == pytest.approx(1.0)


def test_flat_detector_sweep():
    frequencies = np.linspace(10e6, 500e6, 50)
    sweep = measured_squeezing_vs_frequency(
        DEVICE_PARAMS, PUMP, FlatResponse(), ConstantCircuitNoise(0.0), frequencies
    )

    np.testing.assert_allclose(sweep.squeezing_db, -6.4387, atol=1e-3)
    np.testing.assert_allclose(sweep.shot_dbm, -30.0)
    assert np.all(np.isneginf(sweep.circuit_dbm))
    assert threshold_frequency(sweep) == pytest.approx(500e6)


def test_roll_off_degrades_squeezing():
    frequencies = np.linspace(10e6, 500e6, 50)
    sweep = measured_squeezing_vs_frequency(
        DEVICE_PARAMS,
        PUMP,
        TwoPoleResponse(400e6),
        ConstantCircuitNoise.from_clearance_db(20.0),
        frequencies,
    )

    assert np.all(np.diff(sweep.squeezing_db) > 0)
    assert np.all(np.diff(sweep.antisqueezing_db) < 0)
    assert np.all(np.diff(sweep.shot_dbm) < 0)
    assert sweep.squeezing_db[0] == pytest.approx(-6.29, abs=0.01)
    np.testing.assert_allclose(sweep.circuit_dbm, -50.0)


def test_tabulated_response_outside_table():
    detector = TabulatedResponse([1e6, 100e6], [1.0, 0.8])

    with pytest.raises(RangeError) as excinfo:
        measured_squeezing_vs_frequency(
            DEVICE_PARAMS, PUMP, detector, ConstantCircuitNoise(0.01), [50e6, 200e6]
        )

    assert "missing" in str(excinfo.value)


@pytest.mark.parametrize(
    "squeezing_db,expected",
    [
        pytest.param([-6.0, -5.0, -4.0], 2.5e6, id="crossing"),
        pytest.param([-6.0, -5.5, -5.0], 3e6, id="never_fails"),
        pytest.param([-4.0, -5.0, -6.0], None, id="fails_at_start"),
    ],
)
def test_threshold_frequency(squeezing_db, expected):
    sweep = FrequencySweep(
        frequencies=np.array([1e6, 2e6, 3e6]),
        squeezing_db=np.array(squeezing_db),
        antisqueezing_db=np.zeros(3),
        shot_dbm=np.zeros(3),
        circuit_dbm=np.zeros(3),
    )

    if expected is None:
        assert threshold_frequency(sweep, 4.5) is None
    else:
        assert threshold_frequency(sweep, 4.5) == pytest.approx(expected)


@pytest.mark.parametrize(
    "pump,scan_frequency,phase_excursion",
    [
        pytest.param(0.304, 0.5, 2.0 * np.pi, id="device_default_scan"),
        pytest.param(0.100, 0.5, np.pi, id="half_fringe"),
        pytest.param(0.304, 1.0, 3.0 * np.pi, id="fast_wide_scan"),
        pytest.param(0.050, 2.0, 2.0 * np.pi, id="low_pump"),
    ],
)
def test_trace_is_mirror_symmetric_about_the_apex(pump, scan_frequency, phase_excursion):
    scan = ScanSettings(
        scan_frequency=scan_frequency,
        phase_excursion=phase_excursion,
        duration=1.0 / scan_frequency,
    )
    power = expected_trace(DEVICE_PARAMS, pump, scan, AnalyzerSettings()).power_dbm
    apex = scan.n_samples // 2

    rising = power[1:apex]
    falling = power[apex + 1:][::-1]
    assert np.corrcoef(rising, falling)[0, 1] > 0.99
    np.testing.assert_allclose(rising, falling, atol=0.05)


@pytest.mark.parametrize("seed", range(5))
def test_zero_pump_trace_is_flat_at_shot_plus_circuit(seed):
    analyzer = AnalyzerSettings()
    scan = ScanSettings()
    level = dbm_to_watts(analyzer.shot_level_dbm) + dbm_to_watts(analyzer.circuit_level_dbm)

    expected = dbm_to_watts(expected_trace(DEVICE_PARAMS, 0.0, scan, analyzer).power_dbm)
    np.testing.assert_allclose(expected, level, rtol=1e-9)

    trace = phase_scan_trace(DEVICE_PARAMS, 0.0, scan, analyzer, seed=seed)
    relative = dbm_to_watts(trace.power_dbm) / level - 1.0
    sigma = analyzer.relative_sigma
    assert np.all(np.abs(relative) <= 6.0 * sigma)
    assert abs(np.mean(relative)) <= 5.0 * sigma / np.sqrt(len(relative))


def test_circuit_noise_ceiling_over_random_samples():
    rng = np.random.default_rng(7)
    r = rng.uniform(1e-3, 1.0, 1000)
    gain = rng.uniform(1e-3, 1.0, 1000)
    circuit = rng.uniform(0.0, 0.1, 1000)

    measured_db = 10 * np.log10(measured_ratio(r, gain, circuit))
    ceiling_db = 10 * np.log10((1.0 + circuit) / (r + circuit))

    assert np.all(measured_db <= 0.0)
    assert np.all(np.abs(measured_db) <= ceiling_db + 1e-12)


@pytest.mark.parametrize("clearance_db", [10.0, 20.0, 30.0])
def test_sweep_respects_circuit_noise_ceiling(clearance_db):
    noise = ConstantCircuitNoise.from_clearance_db(clearance_db)
    frequencies = np.linspace(10e6, 1e9, 100)
    sweep = measured_squeezing_vs_frequency(
        DEVICE_PARAMS, PUMP, TwoPoleResponse(400e6), noise, frequencies
    )
    r_minus, _ = squeeze_levels(DEVICE_PARAMS, PUMP)
    c = noise.ratio(frequencies)

    ceiling_db = 10 * np.log10((1.0 + c) / (r_minus + c))
    assert np.all(np.abs(sweep.squeezing_db) <= ceiling_db + 1e-12)


@pytest.mark.parametrize(
    "gain,circuit",
    [
        pytest.param(1.0, 0.0, id="ideal"),
        pytest.param(1.0, 0.01, id="device_clearance"),
        pytest.param(0.2, 0.01, id="rolled_off"),
        pytest.param(0.01, 0.1, id="circuit_dominated"),
    ],
)
def test_measured_ratio_is_monotone_in_true_ratio(gain, circuit):
    r = np.sort(np.random.default_rng(3).uniform(1e-3, 50.0, 1000))
    r = np.unique(r)

    measured = measured_ratio(r, gain, circuit)

    assert np.all(np.diff(measured) > 0)


@pytest.mark.parametrize(
    "corner_mhz,clearance_db",
    [
        pytest.param(200.0, 20.0, id="slow_detector"),
        pytest.param(400.0, 20.0, id="device"),
        pytest.param(800.0, 15.0, id="fast_noisy"),
        pytest.param(400.0, 30.0, id="quiet"),
    ],
)
def test_squeezing_clears_threshold_wherever_shot_noise_clears_circuit(corner_mhz, clearance_db):
    detector = TwoPoleResponse(corner_mhz * 1e6)
    noise = ConstantCircuitNoise.from_clearance_db(clearance_db)
    frequencies = np.linspace(10e6, 1e9, 200)

    sweep = measured_squeezing_vs_frequency(DEVICE_PARAMS, PUMP, detector, noise, frequencies)
    clearance = 10 * np.log10(detector.gain(frequencies) / noise.ratio(frequencies))
    clear = clearance >= 13.0

    assert np.any(clear)
    assert np.all(sweep.squeezing_db[clear] <= -4.5)


def test_trace_determinism_over_random_parameters():
    rng = np.random.default_rng(2024)
    analyzer = AnalyzerSettings()

    for _ in range(1000):
        params = SqueezerParams(eta=rng.uniform(0.3, 1.0), a=rng.uniform(1.0, 20.0))
        pump = rng.uniform(0.0, 0.5)
        scan = ScanSettings(
            scan_frequency=rng.uniform(0.5, 2.0),
            phase_excursion=rng.uniform(0.5 * np.pi, 3.0 * np.pi),
            duration=0.1,
        )
        seed = int(rng.integers(0, 2 ** 31))

        first = phase_scan_trace(params, pump, scan, analyzer, seed=seed)
        second = phase_scan_trace(params, pump, scan, analyzer, seed=seed)

        assert first.power_dbm.tobytes() == second.power_dbm.tobytes()
