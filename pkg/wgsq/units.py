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

"""Unit conversions at the I/O boundary.

Everything inside the package is SI (W, W⁻¹, m, Hz, s) except wavelengths,
which are carried in μm to match the Sellmeier tables. The helpers below are
the only places where %/W, mW, nm, THz and dBm are converted.
"""

import numpy as np

from wgsq.exceptions import DomainError


def _shaped(value, out):
    return float(out) if np.ndim(value) == 0 else out


def percent_per_watt(a_per_watt):
    return a_per_watt * 100.0


def per_watt(a_percent_per_watt):
    return a_percent_per_watt / 100.0


def mw_to_w(p_mw):
    return _shaped(p_mw, np.asarray(p_mw, dtype=float) * 1e-3)


def w_to_mw(p_w):
    return _shaped(p_w, np.asarray(p_w, dtype=float) * 1e3)


def hz_to_thz(f_hz):
    return _shaped(f_hz, np.asarray(f_hz, dtype=float) * 1e-12)


def um_to_nm(wavelength_um):
    return _shaped(wavelength_um, np.asarray(wavelength_um, dtype=float) * 1e3)


def db(ratio):
    """Linear power ratio to dB; rejects non-positive ratios."""
    arr = np.asarray(ratio, dtype=float)
    if np.any(~(arr > 0)):
        raise DomainError(
            "dB conversion requires a positive ratio, got {}".format(ratio)
        )
    return _shaped(ratio, 10.0 * np.log10(arr))


def from_db(value_db):
    return _shaped(value_db, np.power(10.0, np.asarray(value_db, dtype=float) / 10.0))


def dbm_to_watts(p_dbm):
    return _shaped(p_dbm, 1e-3 * np.power(10.0, np.asarray(p_dbm, dtype=float) / 10.0))


def watts_to_dbm(p_w):
    return _shaped(p_w, db(np.asarray(p_w, dtype=float) * 1e3))
