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

from wgsq.exceptions import DispersionError

from .base import MaterialModel


class SellmeierModel(MaterialModel):
    """n² = 1 + Σ Bᵢλ² / (λ² − Cᵢ)

    coefficients are ``[B1, C1, B2, C2, ...]`` with Cᵢ in μm².
    """

    form = "sellmeier"

    def check_coefficients(self):
        if len(self.coefficients) < 2 or len(self.coefficients) % 2:
            raise DispersionError(
                "{}: sellmeier form needs (B, C) pairs, got {} values".format(
                    self.name, len(self.coefficients)
                )
            )

    def index_squared(self, wavelength):
        lam2 = np.asarray(wavelength, dtype=float) ** 2
        terms = np.reshape(self.coefficients, (-1, 2))
        n2 = np.ones_like(lam2)
        for b, c in terms:
            n2 = n2 + b * lam2 / (lam2 - c)
        return n2


class PoleModel(MaterialModel):
    """n² = A + Σ Bᵢ / (λ² − Cᵢ²) + D·λ²

    coefficients are ``[A, B1, C1, B2, C2, ..., D]`` with Cᵢ in μm. This is
    the layout used for the temperature-dependent lithium tantalate fits,
    with the temperature terms already folded into B1 and C1.
    """

    form = "pole"

    def check_coefficients(self):
        if len(self.coefficients) < 4 or len(self.coefficients) % 2:
            raise DispersionError(
                "{}: pole form needs A, (B, C) pairs and D, got {} values".format(
                    self.name, len(self.coefficients)
                )
            )

    def index_squared(self, wavelength):
        lam2 = np.asarray(wavelength, dtype=float) ** 2
        a, d = self.coefficients[0], self.coefficients[-1]
        terms = np.reshape(self.coefficients[1:-1], (-1, 2))
        n2 = a + d * lam2
        for b, c in terms:
            n2 = n2 + b / (lam2 - c ** 2)
        return n2


class ConstantIndexModel(MaterialModel):
    """Dispersionless medium; coefficients are ``[n]``."""

    form = "constant"

    def check_coefficients(self):
        if len(self.coefficients) != 1:
            raise DispersionError(
                "{}: constant form takes exactly one value".format(self.name)
            )

    def index_squared(self, wavelength):
        return np.full(np.shape(wavelength), self.coefficients[0] ** 2)


def constant_index(name, n, valid_range=(0.2, 20.0)):
    return ConstantIndexModel(name=name, coefficients=(n,), valid_range=valid_range)
