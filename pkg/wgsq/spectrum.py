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

"""Sideband spectrum of the single-pass parametric process.

Signal and idler at ν₀ ± Ω/2π see the phase mismatch

    Δk(Ω) = β₂Ω² + β₄Ω⁴/12

(odd orders cancel for the degenerate pair). With the total gain
g₀ = sqrt(a·P) spread uniformly over the device and s = sqrt(g₀² − (ΔkL/2)²),
the Bogoliubov magnitudes are |ν| = g₀·|sinh(s)/s| and |μ|² = 1 + |ν|². For
imaginary s the sinh turns into a sine, so the low-gain limit is the
familiar g₀²·sinc²(ΔkL/2).
"""

import logging
from dataclasses import dataclass
from typing import Optional

import numpy as np
from scipy.constants import c as SPEED_OF_LIGHT
from scipy.ndimage import uniform_filter1d
from scipy.optimize import brentq

from wgsq.exceptions import NumericalError, RangeError

logger = logging.getLogger(__name__)

CENTER_FREQUENCY = 193.4e12
DEFAULT_MAX_DETUNING = 20e12
DEFAULT_OSA_RESOLUTION_NM = 0.05

# |s| below this uses the series sinh(s)/s ≈ 1 + s²/6
_SERIES_LIMIT = 1e-6


@dataclass(frozen=True)
class DispersionLocal:
    beta2: float
    length: float
    beta4: float = 0.0
    center_frequency: float = CENTER_FREQUENCY
    # Largest |detuning| in Hz for which the quartic expansion is trusted
    max_detuning: float = DEFAULT_MAX_DETUNING

    def __post_init__(self):
        if not self.length > 0:
            raise RangeError("device length must be positive, got {}".format(self.length))
        if not np.isfinite(self.beta2) or not np.isfinite(self.beta4):
            raise RangeError("dispersion coefficients must be finite")
        if not self.center_frequency > 0 or not self.max_detuning > 0:
            raise RangeError("center frequency and max detuning must be positive")


@dataclass(eq=False)
class GainSpectrum:
    detunings: np.ndarray
    mu_abs: np.ndarray
    nu_abs: np.ndarray
    g0: float
    dispersion: DispersionLocal

    @property
    def photon_flux(self):
        return self.nu_abs ** 2


@dataclass(eq=False)
class FluorescenceSpectrum:
    optical_frequencies: np.ndarray
    psd: np.ndarray
    center_frequency: float


def phase_mismatch(disp, detuning):
    """Δk in 1/m at detuning(s) in Hz"""
    f = np.asarray(detuning, dtype=float)
    if np.any(np.abs(f) > disp.max_detuning):
        raise RangeError(
            "detuning beyond ±{:g} Hz where the dispersion expansion holds".format(
                disp.max_detuning
            ),
            name="detuning",
            bounds=(-disp.max_detuning, disp.max_detuning),
        )
    omega2 = (2.0 * np.pi * f) ** 2
    dk = disp.beta2 * omega2 + disp.beta4 * omega2 ** 2 / 12.0
    return float(dk) if np.ndim(detuning) == 0 else dk


def sinhc_magnitude(g0, mismatch):
    """|sinh(s)/s| with s² = g0² − mismatch², continued through s² < 0"""
    s2 = g0 ** 2 - np.asarray(mismatch, dtype=float) ** 2
    root = np.sqrt(np.abs(s2))
    with np.errstate(over="ignore", invalid="ignore", divide="ignore"):
        hyperbolic = np.where(root < _SERIES_LIMIT, 1.0 + s2 / 6.0, np.sinh(root) / root)
    # sin(t)/t for imaginary s
    oscillating = np.abs(np.sinc(root / np.pi))
    return np.where(s2 >= 0, hyperbolic, oscillating)


def bogoliubov_gain(g0, disp, detunings):
    if not g0 >= 0:
        raise RangeError("total gain must be non-negative, got {}".format(g0), name="g0")

    f = np.asarray(detunings, dtype=float)
    half_mismatch = 0.5 * phase_mismatch(disp, f) * disp.length
    nu = g0 * sinhc_magnitude(g0, half_mismatch)
    mu = np.sqrt(1.0 + nu ** 2)
    return GainSpectrum(detunings=f, mu_abs=mu, nu_abs=nu, g0=float(g0), dispersion=disp)


def fluorescence_spectrum(gain, osa_resolution_nm=None):
    """
    Photon flux |ν|² placed at ν₀ + detuning, sorted by optical frequency.

    Args:
        gain: GainSpectrum
        osa_resolution_nm: when set, smooth with an analyzer window of this
            width (see osa_smoothing)

    """
    order = np.argsort(gain.detunings, kind="stable")
    frequencies = gain.dispersion.center_frequency + gain.detunings[order]
    spectrum = FluorescenceSpectrum(
        optical_frequencies=frequencies,
        psd=gain.photon_flux[order],
        center_frequency=gain.dispersion.center_frequency,
    )
    if osa_resolution_nm:
        spectrum = osa_smoothing(spectrum, osa_resolution_nm)
    return spectrum


def osa_smoothing(spectrum, resolution_nm=DEFAULT_OSA_RESOLUTION_NM):
    """Moving average over the analyzer resolution, converted to Hz at ν₀"""
    step = np.median(np.diff(spectrum.optical_frequencies))
    width_hz = spectrum.center_frequency ** 2 * resolution_nm * 1e-9 / SPEED_OF_LIGHT
    # odd window keeps the average centered
    size = 2 * int(round(0.5 * width_hz / step)) + 1
    logger.debug("OSA window %.3g GHz spans %d grid points", width_hz * 1e-9, size)
    return FluorescenceSpectrum(
        optical_frequencies=spectrum.optical_frequencies,
        psd=uniform_filter1d(spectrum.psd, size=size, mode="nearest"),
        center_frequency=spectrum.center_frequency,
    )


def _half_crossing(offsets, values, half):
    """Offset where a decreasing run first drops to ``half``"""
    below = np.nonzero(values < half)[0]
    if len(below) == 0:
        return None
    i = below[0]
    x0, x1 = offsets[i - 1], offsets[i]
    y0, y1 = values[i - 1], values[i]
    return brentq(lambda x: y0 + (y1 - y0) * (x - x0) / (x1 - x0) - half, x0, x1)


def hwhm_bandwidth(spectrum):
    """
    One-sided half width at half maximum in Hz, averaged over both sides.

    Raises:
        NumericalError: the spectrum has no positive peak
        RangeError: the grid ends before the spectrum falls to half maximum

    """
    freqs = spectrum.optical_frequencies
    psd = spectrum.psd
    peak = int(np.argmax(psd))
    if not psd[peak] > 0:
        raise NumericalError("spectrum has no positive peak")

    half = 0.5 * psd[peak]
    upper = _half_crossing(freqs[peak:] - freqs[peak], psd[peak:], half)
    lower = _half_crossing(freqs[peak] - freqs[peak::-1], psd[peak::-1], half)
    if upper is None or lower is None:
        raise RangeError(
            "grid too narrow: spectrum does not fall to half maximum within "
            "[{:g}, {:g}] Hz".format(freqs[0], freqs[-1]),
            name="detunings",
        )
    return float(0.5 * (upper + lower))


def half_max_mismatch(g0=0.0):
    """
    ΔkL/2 at which |ν|² falls to half its peak for total gain g0.

    For g0 → 0 this is the half-maximum point of sinc², 1.39156.
    """
    peak = sinhc_magnitude(g0, 0.0) ** 2

    def excess(x):
        return float(sinhc_magnitude(g0, x) ** 2 - 0.5 * peak)

    upper = max(2.0, 2.0 * g0)
    while excess(upper) > 0:
        upper *= 2.0
    return brentq(excess, 0.0, upper, xtol=1e-14)


def beta2_for_hwhm(hwhm, length, g0=0.0):
    """β₂ (s²/m) that puts the HWHM of the β₄ = 0 spectrum at ``hwhm`` Hz"""
    if not hwhm > 0 or not length > 0:
        raise RangeError("bandwidth and length must be positive")
    return 2.0 * half_max_mismatch(g0) / (length * (2.0 * np.pi * hwhm) ** 2)


def detuning_grid(span, points):
    """Symmetric detuning grid in Hz including zero"""
    if points < 3 or points % 2 == 0:
        raise RangeError("detuning grid needs an odd number of points, at least 3")
    return np.linspace(-span, span, points)


@dataclass(eq=False)
class PumpSeriesEntry:
    pump_power: float
    spectrum: FluorescenceSpectrum
    hwhm: Optional[float]


def pump_series(a, pump_powers, disp, detunings, osa_resolution_nm=None):
    """Fluorescence spectra and HWHM for several coupled pump powers (W)"""
    entries = []
    for power in pump_powers:
        gain = bogoliubov_gain(np.sqrt(a * power), disp, detunings)
        spectrum = fluorescence_spectrum(gain, osa_resolution_nm)
        hwhm = hwhm_bandwidth(spectrum) if power > 0 else None
        entries.append(PumpSeriesEntry(pump_power=power, spectrum=spectrum, hwhm=hwhm))
    return entries


def dispersion_from_material(model, length, center_frequency=CENTER_FREQUENCY, **kwargs):
    """DispersionLocal with β₂ taken from a bulk material model at ν₀"""
    wavelength = SPEED_OF_LIGHT / center_frequency * 1e6
    _, beta2 = model.group_index_and_gvd(wavelength)
    return DispersionLocal(
        beta2=beta2, length=length, center_frequency=center_frequency, **kwargs
    )
