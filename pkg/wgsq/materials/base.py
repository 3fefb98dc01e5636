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

"""Bulk refractive-index models.

Wavelengths are vacuum wavelengths in μm. Each model knows its own validity
range and refuses to extrapolate. Dispersion (group index and GVD) is taken
from the propagation constant β(ω) = n(ω)·ω/c by central differences in
angular frequency with a relative step of ``DEFAULT_RELATIVE_STEP``.
"""

import enum
from abc import ABC, abstractmethod
from dataclasses import dataclass
from typing import ClassVar, Optional, Tuple

import numpy as np
from scipy.constants import c as SPEED_OF_LIGHT

from wgsq.exceptions import DispersionError, RangeError

# Relative angular-frequency step used by the dispersion derivatives. Halving
# it changes β₂ by far less than 1% for all built-in models.
DEFAULT_RELATIVE_STEP = 1e-3


class Axis(str, enum.Enum):
    ordinary = "ordinary"
    extraordinary = "extraordinary"


def angular_frequency(wavelength_um):
    return 2.0 * np.pi * SPEED_OF_LIGHT / (np.asarray(wavelength_um, dtype=float) * 1e-6)


def wavelength_um(omega):
    return 2.0 * np.pi * SPEED_OF_LIGHT / np.asarray(omega, dtype=float) * 1e6


@dataclass(frozen=True)
class MaterialModel(ABC):
    name: str
    coefficients: Tuple[float, ...]
    valid_range: Tuple[float, float]
    axis: Axis = Axis.extraordinary
    temperature_c: Optional[float] = None
    reference: str = ""
    # added to n after the form is evaluated; dopant shifts on a host crystal
    index_offset: float = 0.0

    # Coefficient layout identifier used by coefficient files
    form: ClassVar[str] = None

    def __post_init__(self):
        object.__setattr__(
            self, "coefficients", tuple(float(v) for v in self.coefficients)
        )
        object.__setattr__(
            self, "valid_range", tuple(float(v) for v in self.valid_range)
        )
        object.__setattr__(self, "axis", Axis(self.axis))
        object.__setattr__(self, "index_offset", float(self.index_offset))

        low, high = self.valid_range
        if not (0 < low < high):
            raise DispersionError(
                "{}: invalid wavelength range {}".format(self.name, self.valid_range)
            )

        self.check_coefficients()

        samples = self.index_squared(np.linspace(low, high, 64))
        if (
            not np.all(np.isfinite(samples))
            or np.any(samples < 0.0)
            or np.any(np.sqrt(np.abs(samples)) + self.index_offset < 1.0)
        ):
            raise DispersionError(
                "{}: index is not real and at least 1 over {}".format(
                    self.name, self.valid_range
                )
            )

    @classmethod
    def subclass_by_form(cls, form):
        mapper = {}
        pending = list(cls.__subclasses__())
        while pending:
            model_cls = pending.pop()
            pending.extend(model_cls.__subclasses__())
            if model_cls.form is not None:
                mapper[model_cls.form] = model_cls

        try:
            return mapper[form]
        except KeyError:
            raise DispersionError("Unrecognized dispersion form: {}".format(form))

    @classmethod
    def from_coefficient_data(cls, *, form, **coefficient_data):
        model_cls = cls.subclass_by_form(form)
        return model_cls(**coefficient_data)

    # Raises DispersionError when the coefficient list does not fit the form
    @abstractmethod
    def check_coefficients(self):
        pass

    # n² evaluated without range checks; wavelength in μm, array in and out
    @abstractmethod
    def index_squared(self, wavelength):
        pass

    def check_range(self, wavelength):
        low, high = self.valid_range
        arr = np.asarray(wavelength, dtype=float)
        if np.any(~((arr >= low) & (arr <= high))):
            raise RangeError(
                "{}: wavelength {} μm outside valid range [{}, {}] μm".format(
                    self.name, wavelength, low, high
                ),
                name=self.name,
                bounds=self.valid_range,
            )

    def refractive_index(self, wavelength):
        self.check_range(wavelength)
        n = np.sqrt(self.index_squared(np.asarray(wavelength, dtype=float)))
        n = n + self.index_offset
        return float(n) if np.ndim(wavelength) == 0 else n

    def propagation_constant(self, omega):
        """β(ω) = n·ω/c in 1/m."""
        omega = np.asarray(omega, dtype=float)
        return self.refractive_index(wavelength_um(omega)) * omega / SPEED_OF_LIGHT

    def group_index_and_gvd(self, wavelength, relative_step=DEFAULT_RELATIVE_STEP):
        """
        Args:
            wavelength: vacuum wavelength in μm
            relative_step: angular-frequency step as a fraction of ω

        Returns:
            (n_g, β₂) with β₂ in s²/m

        """
        omega = float(angular_frequency(wavelength))
        h = relative_step * omega

        # the stencil must stay inside the table, checked at both ends
        self.check_range([wavelength_um(omega + h), wavelength_um(omega - h)])

        beta_lo, beta_0, beta_hi = self.propagation_constant(
            [omega - h, omega, omega + h]
        )
        n_g = SPEED_OF_LIGHT * (beta_hi - beta_lo) / (2.0 * h)
        beta2 = (beta_hi - 2.0 * beta_0 + beta_lo) / h ** 2
        return float(n_g), float(beta2)


def refractive_index(model, wavelength):
    return model.refractive_index(wavelength)


def group_index_and_gvd(model, wavelength, relative_step=DEFAULT_RELATIVE_STEP):
    return model.group_index_and_gvd(wavelength, relative_step=relative_step)
