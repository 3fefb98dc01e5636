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

"""Balanced-homodyne measurement of the squeezed vacuum.

Zero-span traces: the local-oscillator phase follows a triangle wave, the
expected noise power is ``shot·V(θ) + circuit`` and the analyzer adds a
Gaussian relative fluctuation of standard deviation ``sqrt(vbw/rbw)`` before
a first-order video low-pass at ``vbw``. With 5 MHz RBW and 3 kHz VBW this
is 0.1 dB of scatter on the shot-noise level.

Sideband sweeps: a detector response G(f) attenuates the optical noise while
the circuit noise c(f) does not, so the measured ratio to the measured shot
level is ``(G·R + c) / (G + c)``.
"""

import logging
from dataclasses import dataclass
from typing import Literal, Optional

import numpy as np
from pydantic import BaseModel, ConfigDict, field_validator, model_validator
from scipy import signal

from wgsq.exceptions import SettingsError
from wgsq.squeezer import CLUSTER_STATE_THRESHOLD_DB, squeeze_levels
from wgsq.units import db, dbm_to_watts, watts_to_dbm

logger = logging.getLogger(__name__)


class ScanSettings(BaseModel):
    model_config = ConfigDict(frozen=True, extra="forbid")

    scan_waveform: Literal["triangle"] = "triangle"
    scan_frequency: float = 0.5
    # LO phase swept per half-period of the triangle, radians
    phase_excursion: float = 2.0 * np.pi
    phase_offset: float = 0.0
    duration: float = 2.0
    sample_rate: float = 2000.0

    @field_validator("scan_frequency", "phase_excursion", "duration", "sample_rate")
    @classmethod
    def check_positive(cls, value):
        if not value > 0:
            raise ValueError("must be positive")
        return value

    @property
    def fringe_rate(self):
        """Rate of noise extrema in Hz: V(θ) is π-periodic"""
        return 2.0 * self.scan_frequency * self.phase_excursion / np.pi

    @property
    def n_samples(self):
        return int(round(self.duration * self.sample_rate))

    def check_sampling(self):
        if not self.sample_rate > 2.0 * self.fringe_rate:
            raise SettingsError(
                "sample rate {} Hz aliases {:.3g} Hz noise fringes; need more than "
                "{:.3g} Hz".format(self.sample_rate, self.fringe_rate, 2 * self.fringe_rate)
            )
        if self.n_samples < 2:
            raise SettingsError("scan holds fewer than two samples")


class AnalyzerSettings(BaseModel):
    model_config = ConfigDict(frozen=True, extra="forbid")

    center_frequency: float = 20e6
    rbw: float = 5e6
    vbw: float = 3e3
    shot_level_dbm: float = -30.0
    circuit_level_dbm: float = -50.0

    @model_validator(mode="after")
    def check_ordering(self):
        if not (self.rbw > self.vbw > 0):
            raise ValueError("need rbw > vbw > 0")
        if not self.circuit_level_dbm < self.shot_level_dbm:
            raise ValueError("circuit level must be below the shot level")
        return self

    @property
    def relative_sigma(self):
        return float(np.sqrt(self.vbw / self.rbw))

    @property
    def circuit_ratio(self):
        """Circuit noise over shot noise, linear"""
        return float(
            dbm_to_watts(self.circuit_level_dbm) / dbm_to_watts(self.shot_level_dbm)
        )


@dataclass(eq=False)
class HomodyneTrace:
    time: np.ndarray
    power_dbm: np.ndarray
    scan: ScanSettings
    analyzer: AnalyzerSettings
    seed: Optional[int] = None

    def relative_db(self):
        """Trace relative to the shot-noise level"""
        return self.power_dbm - self.analyzer.shot_level_dbm


@dataclass(eq=False)
class FrequencySweep:
    frequencies: np.ndarray
    squeezing_db: np.ndarray
    antisqueezing_db: np.ndarray
    shot_dbm: np.ndarray
    circuit_dbm: np.ndarray


def quadrature_variance(params, pump_power, lo_phase):
    """V(θ) = R−·cos²θ + R+·sin²θ, relative to shot noise"""
    r_minus, r_plus = squeeze_levels(params, pump_power)
    theta = np.asarray(lo_phase, dtype=float)
    variance = r_minus * np.cos(theta) ** 2 + r_plus * np.sin(theta) ** 2
    return float(variance) if np.ndim(lo_phase) == 0 else variance


def lo_phase(scan, time):
    """Triangle-wave LO phase, rising from the offset at t = 0"""
    ramp = 0.5 * (signal.sawtooth(2.0 * np.pi * scan.scan_frequency * time, 0.5) + 1.0)
    return scan.phase_offset + scan.phase_excursion * ramp


def video_filter(power, vbw, sample_rate):
    """First-order low-pass at ``vbw``, started in steady state"""
    alpha = 1.0 - np.exp(-2.0 * np.pi * vbw / sample_rate)
    b, a = [alpha], [1.0, alpha - 1.0]
    zi = signal.lfilter_zi(b, a) * power[0]
    filtered, _ = signal.lfilter(b, a, power, zi=zi)
    return filtered


def _expected_watts(params, pump_power, scan, analyzer):
    scan.check_sampling()
    time = np.arange(scan.n_samples) / scan.sample_rate
    variance = quadrature_variance(params, pump_power, lo_phase(scan, time))
    shot = dbm_to_watts(analyzer.shot_level_dbm)
    circuit = dbm_to_watts(analyzer.circuit_level_dbm)
    return time, shot * variance + circuit, circuit


def expected_trace(params, pump_power, scan, analyzer):
    """Noise-free trace: the expectation of phase_scan_trace"""
    time, expected, circuit = _expected_watts(params, pump_power, scan, analyzer)
    filtered = video_filter(expected, analyzer.vbw, scan.sample_rate)
    return HomodyneTrace(
        time=time,
        power_dbm=watts_to_dbm(np.maximum(filtered, circuit)),
        scan=scan,
        analyzer=analyzer,
    )


def phase_scan_trace(params, pump_power, scan, analyzer, seed):
    """
    Simulated zero-span analyzer trace while the LO phase is scanned.

    Raises:
        SettingsError: the sample rate cannot resolve the noise fringes

    """
    time, expected, circuit = _expected_watts(params, pump_power, scan, analyzer)

    rng = np.random.default_rng(seed)
    noisy = expected * (1.0 + analyzer.relative_sigma * rng.standard_normal(len(time)))
    filtered = video_filter(noisy, analyzer.vbw, scan.sample_rate)

    logger.debug(
        "Trace of %d samples, relative sigma %.4f, seed %s",
        len(time),
        analyzer.relative_sigma,
        seed,
    )
    return HomodyneTrace(
        time=time,
        power_dbm=watts_to_dbm(np.maximum(filtered, circuit)),
        scan=scan,
        analyzer=analyzer,
        seed=seed,
    )


def measured_ratio(r, gain, circuit_ratio):
    """Noise over the measured shot level when only the optical part is attenuated"""
    return (gain * r + circuit_ratio) / (gain + circuit_ratio)


def measured_squeezing_vs_frequency(
    params, pump_power, detector, circuit_noise, frequencies, analyzer=None
):
    """
    Args:
        params: SqueezerParams
        pump_power: W
        detector: DetectorResponse giving G(f)
        circuit_noise: CircuitNoise giving c(f)
        frequencies: sideband frequencies in Hz
        analyzer: supplies the shot level for the dBm columns

    Returns:
        FrequencySweep

    Raises:
        RangeError: a tabulated model has no data at a requested frequency

    """
    if analyzer is None:
        analyzer = AnalyzerSettings()

    f = np.asarray(frequencies, dtype=float)
    gain = detector.gain(f)
    circuit = circuit_noise.ratio(f)
    r_minus, r_plus = squeeze_levels(params, pump_power)

    return FrequencySweep(
        frequencies=f,
        squeezing_db=db(measured_ratio(r_minus, gain, circuit)),
        antisqueezing_db=db(measured_ratio(r_plus, gain, circuit)),
        shot_dbm=analyzer.shot_level_dbm + db(gain),
        circuit_dbm=np.where(
            circuit > 0, analyzer.shot_level_dbm + db(np.maximum(circuit, 1e-300)), -np.inf
        ),
    )


def threshold_frequency(sweep, threshold_db=CLUSTER_STATE_THRESHOLD_DB):
    """
    Highest frequency up to which the measured squeezing stays at least
    ``threshold_db`` below shot noise, interpolated linearly at the crossing.

    Returns None when the first frequency already misses the threshold.
    """
    f = sweep.frequencies
    depth = -np.asarray(sweep.squeezing_db)
    failing = np.nonzero(depth < threshold_db)[0]

    if len(failing) == 0:
        return float(f[-1])
    first = failing[0]
    if first == 0:
        return None

    f0, f1 = f[first - 1], f[first]
    d0, d1 = depth[first - 1], depth[first]
    return float(f0 + (d0 - threshold_db) * (f1 - f0) / (d0 - d1))
