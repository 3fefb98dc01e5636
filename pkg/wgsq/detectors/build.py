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

from wgsq.exceptions import ConfigError

from .noise import ConstantCircuitNoise, TabulatedCircuitNoise
from .response import FlatResponse, TabulatedResponse, TwoPoleResponse


def _table_columns(config, value_key, kind):
    if "path" in config:
        from wgsq.extractors.tables import FrequencyTableCsv

        extracted = FrequencyTableCsv.extract(config["path"], kind=kind)
        return (
            [row.frequency for row in extracted.records],
            [row.value for row in extracted.records],
        )

    try:
        return config["frequencies_hz"], config[value_key]
    except KeyError as err:
        raise ConfigError(
            "table needs 'path' or 'frequencies_hz' and '{}'".format(value_key),
            key=str(err.args[0]),
        )


def build_response(config):
    """
    Args:
        config: mapping with a ``type`` of ``flat``, ``two_pole`` (with
            ``corner_hz``) or ``table`` (with ``path`` or inline
            ``frequencies_hz``/``gains``)

    Returns:
        a DetectorResponse

    """
    response_type = config.get("type")
    if response_type == FlatResponse.response_type:
        return FlatResponse()
    elif response_type == TwoPoleResponse.response_type:
        if "corner_hz" not in config:
            raise ConfigError("two_pole response needs corner_hz", key="corner_hz")
        return TwoPoleResponse(config["corner_hz"])
    elif response_type == TabulatedResponse.response_type:
        return TabulatedResponse(*_table_columns(config, "gains", "gain"))

    raise ConfigError(
        "Unrecognized detector response type: {}".format(response_type), key="type"
    )


def build_circuit_noise(config):
    """``constant`` (``ratio`` or ``clearance_db``) or ``table``"""
    noise_type = config.get("type")
    if noise_type == ConstantCircuitNoise.noise_type:
        if "ratio" in config:
            return ConstantCircuitNoise(config["ratio"])
        if "clearance_db" in config:
            return ConstantCircuitNoise.from_clearance_db(config["clearance_db"])
        raise ConfigError(
            "constant circuit noise needs ratio or clearance_db", key="ratio"
        )
    elif noise_type == TabulatedCircuitNoise.noise_type:
        return TabulatedCircuitNoise(*_table_columns(config, "ratios", "circuit"))

    raise ConfigError(
        "Unrecognized circuit noise type: {}".format(noise_type), key="type"
    )
