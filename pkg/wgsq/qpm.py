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

import logging
from dataclasses import dataclass

import numpy as np
from scipy.optimize import brentq

from wgsq.exceptions import DispersionError, RangeError
from wgsq.modesolver import (
    DEFAULT_PADDING,
    DEFAULT_RESOLUTION,
    DispersionTable,
    fundamental_mode,
)
from wgsq.units import percent_per_watt

logger = logging.getLogger(__name__)

# Above this SH/fundamental power ratio the undepleted-pump formula is
# no longer a good description
LOW_GAIN_LIMIT = 0.1


@dataclass(frozen=True)
class PhaseMatchSpec:
    fundamental_wavelength: float
    device_length: float
    poling_period: float
    n_eff_fundamental: float
    n_eff_second_harmonic: float

    def __post_init__(self):
        if not self.device_length > 0:
            raise RangeError(
                "device length must be positive, got {}".format(self.device_length),
                name="device_length",
            )
        if not self.poling_period > 0:
            raise RangeError(
                "poling period must be positive, got {}".format(self.poling_period),
                name="poling_period",
            )

    @property
    def second_harmonic_wavelength(self):
        return 0.5 * self.fundamental_wavelength


@dataclass(frozen=True)
class ShEfficiency:
    per_watt: float

    @property
    def percent_per_watt(self):
        return percent_per_watt(self.per_watt)


def poling_period(n_eff_fund, n_eff_sh, fundamental_wavelength):
    """First-order QPM period Λ = λ / (2·(n_SH − n_F)), in μm"""
    if not fundamental_wavelength > 0:
        raise RangeError("wavelength must be positive", name="wavelength")
    delta = n_eff_sh - n_eff_fund
    if not delta > 0:
        raise DispersionError(
            "second-harmonic index {} does not exceed fundamental index {}".format(
                n_eff_sh, n_eff_fund
            )
        )
    return fundamental_wavelength / (2.0 * delta)


def phase_matched_spec(
    geometry,
    wavelength,
    device_length,
    resolution=DEFAULT_RESOLUTION,
    padding=DEFAULT_PADDING,
):
    """Solve the fundamental modes at λ and λ/2 and derive the poling period"""
    n_fund = fundamental_mode(geometry, wavelength, resolution, padding).effective_index
    n_sh = fundamental_mode(geometry, 0.5 * wavelength, resolution, padding).effective_index
    period = poling_period(n_fund, n_sh, wavelength)
    logger.info(
        "Poling period %.4f μm for %.4f μm (n_F=%.6f, n_SH=%.6f)",
        period,
        wavelength,
        n_fund,
        n_sh,
    )
    return PhaseMatchSpec(
        fundamental_wavelength=float(wavelength),
        device_length=float(device_length),
        poling_period=period,
        n_eff_fundamental=n_fund,
        n_eff_second_harmonic=n_sh,
    )


def spec_from_tables(fundamental, second_harmonic, wavelength, device_length):
    """PhaseMatchSpec from dispersion tables covering λ and λ/2"""
    n_fund = fundamental.interpolate(wavelength)
    n_sh = second_harmonic.interpolate(0.5 * wavelength)
    return PhaseMatchSpec(
        fundamental_wavelength=float(wavelength),
        device_length=float(device_length),
        poling_period=poling_period(n_fund, n_sh, wavelength),
        n_eff_fundamental=n_fund,
        n_eff_second_harmonic=n_sh,
    )


def _tables(dispersion):
    if isinstance(dispersion, DispersionTable):
        return dispersion, dispersion
    fundamental, second_harmonic = dispersion
    return fundamental, second_harmonic


def phase_mismatch(spec, dispersion, wavelengths):
    """Δk(λ) in 1/m; dispersion is one table or a (fundamental, SH) pair"""
    fundamental, second_harmonic = _tables(dispersion)
    lam = np.asarray(wavelengths, dtype=float)
    n_f = fundamental.interpolate(lam)
    n_sh = second_harmonic.interpolate(0.5 * lam)
    dk_um = 4.0 * np.pi * (n_sh - n_f) / lam - 2.0 * np.pi / spec.poling_period
    return dk_um * 1e6


def sinc2(x):
    """sin²(x)/x² with the x = 0 limit"""
    return np.sinc(np.asarray(x, dtype=float) / np.pi) ** 2


def tuning_curve(spec, dispersion, wavelengths):
    """
    Normalized SH efficiency sinc²(Δk·L/2) at each fundamental wavelength.

    Effective indices come from linear interpolation in the dispersion
    table(s); the SH index is read at λ/2.
    """
    dk = phase_mismatch(spec, dispersion, wavelengths)
    return sinc2(0.5 * dk * spec.device_length)


def sinc2_half_width():
    """x > 0 with sinc²(x) = 1/2"""
    return brentq(lambda x: sinc2(x) - 0.5, 1.0, 2.0, xtol=1e-15)


def curve_fwhm(wavelengths, curve):
    """Full width at half maximum of a sampled single-peaked curve"""
    lam = np.asarray(wavelengths, dtype=float)
    values = np.asarray(curve, dtype=float)
    peak = int(np.argmax(values))
    half = 0.5 * values[peak]

    def crossing(indices):
        for prev, idx in zip(indices[:-1], indices[1:]):
            if values[idx] < half:
                return np.interp(half, [values[idx], values[prev]], [lam[idx], lam[prev]])
        raise RangeError("curve does not fall to half maximum inside the grid")

    right = crossing(list(range(peak, len(lam))))
    left = crossing(list(range(peak, -1, -1)))
    return float(right - left)


def sh_efficiency_normalized(p_fundamental_in, p_sh_out):
    """a = P_SH / P_in² in the undepleted-pump regime"""
    if not p_fundamental_in > 0:
        raise RangeError("input power must be positive", name="p_fundamental_in")
    if not p_sh_out >= 0:
        raise RangeError("SH power must be non-negative", name="p_sh_out")
    if p_sh_out > LOW_GAIN_LIMIT * p_fundamental_in:
        logger.warning(
            "SH power %.3g W is not small against %.3g W input; "
            "pump depletion is ignored",
            p_sh_out,
            p_fundamental_in,
        )
    return ShEfficiency(per_watt=p_sh_out / p_fundamental_in ** 2)


def predicted_sh_power(a, p_fundamental_in):
    """SH power in W for normalized efficiency ``a`` in W⁻¹"""
    return a * np.asarray(p_fundamental_in, dtype=float) ** 2
