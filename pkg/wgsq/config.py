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

"""Run configuration.

A run config is a JSON document with one section per subcommand plus shared
``geometry``, ``squeezer`` and ``analyzer`` blocks that a section inherits
when it does not carry its own::

    {
      "seed": 0,
      "geometry": {"core_thickness_um": 5.0, "sidewall_angle_deg": 73.5},
      "squeezer": {"eta": 0.79, "a_percent_per_watt": 1210},
      "trace": {"pump_mw": 304}
    }

Command-line flags override config values; every value is validated before
any computation starts and errors name the offending key.
"""

import json
import logging
from dataclasses import dataclass
from typing import List, Literal, Optional

import jmespath
from pydantic import (
    BaseModel,
    ConfigDict,
    Field,
    ValidationError,
    field_validator,
    model_validator,
)

from wgsq.detectors import build_circuit_noise, build_response
from wgsq.exceptions import ConfigError, ParseError
from wgsq.homodyne import AnalyzerSettings, ScanSettings
from wgsq.materials import get_material, load_materials
from wgsq.modesolver import DEFAULT_PADDING, DEFAULT_RESOLUTION, WaveguideGeometry
from wgsq.squeezer import CLUSTER_STATE_THRESHOLD_DB, LossBudget, SqueezerParams

logger = logging.getLogger(__name__)

SHARED_SECTIONS = ("geometry", "squeezer", "analyzer")


class _Section(BaseModel):
    model_config = ConfigDict(extra="forbid")


class GeometryConfig(_Section):
    core_thickness_um: float = Field(5.0, gt=0.0)
    top_width_um: float = Field(6.0, gt=0.0)
    sidewall_angle_deg: float = Field(73.5, gt=0.0, le=90.0)
    core_material: str = "zno_lithium_niobate_e"
    substrate_material: str = "lithium_tantalate_e"
    cladding_index: float = Field(1.0, ge=1.0)
    resolution: float = Field(DEFAULT_RESOLUTION, ge=4.0)
    padding_um: float = Field(DEFAULT_PADDING, ge=2.0)

    def build(self, materials_file=None):
        extra = load_materials(materials_file) if materials_file else None
        return WaveguideGeometry(
            core_thickness=self.core_thickness_um,
            top_width=self.top_width_um,
            sidewall_angle=self.sidewall_angle_deg,
            core_material=get_material(self.core_material, extra),
            substrate_material=get_material(self.substrate_material, extra),
            cladding_index=self.cladding_index,
        )


class SqueezerConfig(_Section):
    eta: float = Field(0.79, gt=0.0, le=1.0)
    a_percent_per_watt: float = Field(1210.0, ge=0.0)

    def params(self):
        return SqueezerParams.from_percent_per_watt(self.eta, self.a_percent_per_watt)


class BudgetConfig(_Section):
    l_wg: float = Field(0.16, ge=0.0, lt=1.0)
    l_hd: Optional[float] = Field(None, ge=0.0, lt=1.0)
    quantum_efficiency: Optional[float] = Field(None, ge=0.0, le=1.0)
    transmittance: Optional[float] = Field(None, ge=0.0, le=1.0)
    visibility: Optional[float] = Field(None, ge=0.0, le=1.0)
    visibility_exponent: int = Field(2, ge=1, le=2)

    def budget(self):
        return LossBudget(**self.model_dump())


class ModesConfig(_Section):
    geometry: GeometryConfig = GeometryConfig()
    wavelength_um: float = Field(1.55, gt=0.0)
    widths_um: List[float] = [float(w) for w in range(3, 13)]
    n_modes: int = Field(4, ge=1)
    field_dir: Optional[str] = None
    workers: int = Field(1, ge=1)


class QpmConfig(_Section):
    geometry: GeometryConfig = GeometryConfig()
    wavelength_um: float = Field(1.55, gt=0.0)
    device_length_m: float = Field(0.045, gt=0.0)
    span_nm: float = Field(2.0, gt=0.0)
    points: int = Field(401, ge=3)
    table_points: int = Field(3, ge=2)
    sh_power_uw: Optional[float] = Field(None, ge=0.0)
    fundamental_power_mw: float = Field(3.0, gt=0.0)


class SqueezeConfig(_Section):
    squeezer: SqueezerConfig = SqueezerConfig()
    budget: Optional[BudgetConfig] = None
    pump_mw: List[float] = [304.0]


class FitConfig(_Section):
    sweep_csv: Optional[str] = None
    l_hd: float = Field(0.06, ge=0.0, lt=1.0)
    max_iterations: int = Field(200, ge=1)
    curve_max_mw: float = Field(350.0, gt=0.0)
    curve_points: int = Field(351, ge=2)


class TraceConfig(_Section):
    squeezer: SqueezerConfig = SqueezerConfig()
    pump_mw: float = Field(304.0, ge=0.0)
    scan: ScanSettings = ScanSettings()
    analyzer: AnalyzerSettings = AnalyzerSettings()


def _check_built(builder, block):
    # file-backed tables are checked by their extractor when built
    if block.path is not None:
        return
    try:
        builder(block.model_dump(exclude_none=True))
    except ConfigError as err:
        raise ValueError(str(err))


class DetectorConfig(_Section):
    type: Literal["flat", "two_pole", "table"] = "two_pole"
    corner_hz: Optional[float] = Field(None, gt=0.0)
    path: Optional[str] = None
    frequencies_hz: Optional[List[float]] = None
    gains: Optional[List[float]] = None

    @model_validator(mode="after")
    def _buildable(self):
        _check_built(build_response, self)
        return self

    def build(self):
        return build_response(self.model_dump(exclude_none=True))


class CircuitNoiseConfig(_Section):
    type: Literal["constant", "table"] = "constant"
    ratio: Optional[float] = Field(None, ge=0.0)
    clearance_db: Optional[float] = None
    path: Optional[str] = None
    frequencies_hz: Optional[List[float]] = None
    ratios: Optional[List[float]] = None

    @model_validator(mode="after")
    def _buildable(self):
        _check_built(build_circuit_noise, self)
        return self

    def build(self):
        return build_circuit_noise(self.model_dump(exclude_none=True))


class FreqSweepConfig(_Section):
    squeezer: SqueezerConfig = SqueezerConfig()
    pump_mw: float = Field(304.0, ge=0.0)
    detector: DetectorConfig = DetectorConfig(corner_hz=400e6)
    circuit_noise: CircuitNoiseConfig = CircuitNoiseConfig(clearance_db=20.0)
    analyzer: AnalyzerSettings = AnalyzerSettings()
    start_mhz: float = Field(10.0, gt=0.0)
    stop_mhz: float = Field(500.0, gt=0.0)
    points: int = Field(50, ge=2)
    threshold_db: float = Field(CLUSTER_STATE_THRESHOLD_DB, gt=0.0)

    @field_validator("stop_mhz")
    @classmethod
    def _above_start(cls, value, info):
        start = info.data.get("start_mhz")
        if start is not None and not value > start:
            raise ValueError(
                "stop frequency {} MHz must exceed start frequency {} MHz".format(
                    value, start
                )
            )
        return value


class SpectrumConfig(_Section):
    squeezer: SqueezerConfig = SqueezerConfig()
    pump_mw: float = Field(304.0, ge=0.0)
    length_m: float = Field(0.045, gt=0.0)
    beta2: Optional[float] = None
    beta4: float = 0.0
    target_hwhm_thz: Optional[float] = Field(2.5, gt=0.0)
    material: str = "lithium_niobate_e"
    center_thz: float = Field(193.4, gt=0.0)
    span_thz: float = Field(8.0, gt=0.0)
    points: int = Field(4001, ge=3)
    osa_resolution_nm: Optional[float] = Field(None, gt=0.0)


SECTION_MODELS = {
    "modes": ModesConfig,
    "qpm": QpmConfig,
    "squeeze": SqueezeConfig,
    "fit": FitConfig,
    "trace": TraceConfig,
    "freqsweep": FreqSweepConfig,
    "spectrum": SpectrumConfig,
}


@dataclass
class RunConfig:
    """A validated section plus the run-wide settings"""

    subcommand: str
    section: BaseModel
    seed: int = 0
    materials_file: Optional[str] = None


def read_config(path):
    """Parse a JSON run config; syntax errors carry the line number"""
    if path is None:
        return {}

    with open(path, encoding="utf-8") as f:
        text = f.read()

    try:
        doc = json.loads(text)
    except json.JSONDecodeError as err:
        raise ParseError(err.msg, line=err.lineno, source=path)

    if not isinstance(doc, dict):
        raise ParseError("config must be a JSON object", line=1, source=path)
    return doc


def _set_dotted(data, key, value):
    parts = key.split(".")
    for part in parts[:-1]:
        data = data.setdefault(part, {})
    data[parts[-1]] = value


def _section_data(doc, subcommand):
    data = jmespath.search(subcommand, doc)
    if data is None:
        data = {}
    if not isinstance(data, dict):
        raise ConfigError("section must be an object", key=subcommand)

    fields = SECTION_MODELS[subcommand].model_fields
    data = dict(data)
    for shared in SHARED_SECTIONS:
        value = jmespath.search(shared, doc)
        if shared in fields and shared not in data and value is not None:
            data[shared] = value
    # overrides must not leak back into the parsed document
    return json.loads(json.dumps(data))


def build_run_config(subcommand, doc, overrides=None, seed=None):
    """
    Args:
        subcommand: one of SECTION_MODELS
        doc: parsed config document (may be empty)
        overrides: mapping of dotted keys to values, e.g. ``{"squeezer.eta": 0.8}``
        seed: replaces the document seed when given

    Returns:
        RunConfig

    Raises:
        ConfigError: naming the first offending key

    """
    data = _section_data(doc, subcommand)
    for key, value in (overrides or {}).items():
        if value is not None:
            _set_dotted(data, key, value)

    try:
        section = SECTION_MODELS[subcommand].model_validate(data)
    except ValidationError as err:
        first = err.errors()[0]
        key = ".".join([subcommand] + [str(part) for part in first["loc"]])
        raise ConfigError(first["msg"], key=key)

    if seed is None:
        seed = doc.get("seed", 0)
    if not isinstance(seed, int) or isinstance(seed, bool):
        raise ConfigError("seed must be an integer", key="seed")

    materials_file = doc.get("materials_file")
    logger.debug("Config for %s: %s", subcommand, section.model_dump())
    return RunConfig(
        subcommand=subcommand,
        seed=seed,
        materials_file=materials_file,
        section=section,
    )
