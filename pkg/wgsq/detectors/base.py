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


from abc import ABC, abstractmethod

import numpy as np

from wgsq.exceptions import RangeError


class DetectorResponse(ABC):
    """Power response G(f) of the homodyne detector, normalized to 1 at DC"""

    # Key used by detector configuration blocks
    response_type = None

    # Linear power gain in (0, 1] at each frequency in Hz
    @abstractmethod
    def gain(self, frequencies):
        pass


class CircuitNoise(ABC):
    """Circuit-noise power as a fraction c(f) of the unattenuated shot noise"""

    noise_type = None

    @abstractmethod
    def ratio(self, frequencies):
        pass


class FrequencyTable:
    """Linear interpolation over a sorted frequency table, no extrapolation"""

    def __init__(self, frequencies, values, name):
        frequencies = np.asarray(frequencies, dtype=float)
        values = np.asarray(values, dtype=float)
        if frequencies.ndim != 1 or frequencies.shape != values.shape or len(frequencies) < 2:
            raise RangeError(
                "{} table needs at least two matching frequency/value rows".format(name),
                name=name,
            )

        order = np.argsort(frequencies)
        self.frequencies = frequencies[order]
        self.values = values[order]
        self.name = name

    def __call__(self, frequencies):
        f = np.asarray(frequencies, dtype=float)
        low, high = self.frequencies[0], self.frequencies[-1]
        outside = (f < low) | (f > high)
        if np.any(outside):
            raise RangeError(
                "missing {} data at {} Hz (table covers {:g} to {:g} Hz)".format(
                    self.name, f[outside][0] if f.ndim else float(f), low, high
                ),
                name=self.name,
                bounds=(low, high),
            )
        return np.interp(f, self.frequencies, self.values)
