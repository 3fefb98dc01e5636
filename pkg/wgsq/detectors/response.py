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

from wgsq.exceptions import RangeError

from .base import DetectorResponse, FrequencyTable


class FlatResponse(DetectorResponse):
    response_type = "flat"

    def gain(self, frequencies):
        return np.ones_like(np.asarray(frequencies, dtype=float))


class TwoPoleResponse(DetectorResponse):
    """G(f) = 1 / (1 + (f/f_c)²)², two coincident real poles in amplitude"""

    response_type = "two_pole"

    def __init__(self, corner_hz):
        if not corner_hz > 0:
            raise RangeError(
                "corner frequency must be positive, got {}".format(corner_hz),
                name="corner_hz",
            )
        self.corner_hz = float(corner_hz)

    def gain(self, frequencies):
        f = np.asarray(frequencies, dtype=float)
        return 1.0 / (1.0 + (f / self.corner_hz) ** 2) ** 2


class TabulatedResponse(DetectorResponse):
    response_type = "table"

    def __init__(self, frequencies, gains):
        gains = np.asarray(gains, dtype=float)
        if np.any((gains <= 0) | (gains > 1)):
            raise RangeError("detector gains must lie in (0, 1]", name="gain")
        self.table = FrequencyTable(frequencies, gains, "detector response")

    def gain(self, frequencies):
        return self.table(frequencies)
