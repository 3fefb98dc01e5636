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
from wgsq.units import from_db

from .base import CircuitNoise, FrequencyTable


class ConstantCircuitNoise(CircuitNoise):
    noise_type = "constant"

    def __init__(self, ratio):
        if not ratio >= 0:
            raise RangeError(
                "circuit-noise ratio must be non-negative, got {}".format(ratio),
                name="ratio",
            )
        self.value = float(ratio)

    @classmethod
    def from_clearance_db(cls, clearance_db):
        """Circuit noise ``clearance_db`` below the shot-noise level"""
        return cls(from_db(-clearance_db))

    def ratio(self, frequencies):
        return np.full(np.shape(frequencies), self.value)


class TabulatedCircuitNoise(CircuitNoise):
    noise_type = "table"

    def __init__(self, frequencies, ratios):
        ratios = np.asarray(ratios, dtype=float)
        if np.any(ratios < 0):
            raise RangeError("circuit-noise ratios must be non-negative", name="ratio")
        self.table = FrequencyTable(frequencies, ratios, "circuit noise")

    def ratio(self, frequencies):
        return self.table(frequencies)
