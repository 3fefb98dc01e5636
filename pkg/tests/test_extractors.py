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

import pytest

from tests import get_test_path
from wgsq.exceptions import ParseError
from wgsq.extractors.coefficients import MaterialCoefficientFile
from wgsq.extractors.pump_sweep import PumpSweepCsv
from wgsq.extractors.tables import FrequencyTableCsv
from wgsq.materials import ConstantIndexModel, SellmeierModel


def test_pump_sweep_extract():
    extracted = PumpSweepCsv.extract(get_test_path("sweep_synthetic.csv"))
    first = extracted.records[0]

    assert len(extracted.records) == 12
    assert first.pump_power == pytest.approx(0.025)
    assert first.squeezing_db == pytest.approx(-3.251681)
    assert first.uncertainty_db is None
    assert extracted.metadata.columns == ["pump_mw", "squeezing_db", "antisqueezing_db"]
    assert extracted.metadata.source.endswith("sweep_synthetic.csv")
    assert len(extracted.metadata.sha256) == 64


def test_pump_sweep_with_uncertainties():
    extracted = PumpSweepCsv.extract(get_test_path("sweep_weighted.csv"))

    assert [point.uncertainty_db for point in extracted.records] == [0.1] * 6
    assert extracted.metadata.columns[-1] == "sigma_db"


@pytest.mark.parametrize(
    "filename,line",
    [
        pytest.param("sweep_bad_value.csv", 3, id="non_numeric"),
        pytest.param("sweep_bad_header.csv", 1, id="bad_header"),
        pytest.param("sweep_wrong_sign.csv", 3, id="positive_squeezing"),
        pytest.param("sweep_short_row.csv", 4, id="short_row"),
    ],
)
def test_pump_sweep_errors_carry_line(filename, line):
    with pytest.raises(ParseError) as excinfo:
        PumpSweepCsv.extract(get_test_path(filename))

    assert excinfo.value.line == line
    assert "(line {})".format(line) in str(excinfo.value)
    assert filename in str(excinfo.value)


def test_missing_file_is_an_os_error():
    with pytest.raises(OSError):
        PumpSweepCsv.extract(get_test_path("no_such_sweep.csv"))


def test_coefficient_file():
    extracted = MaterialCoefficientFile.extract(get_test_path("coefficients_custom.json"))
    models = {model.name: model for model in extracted.records}

    assert isinstance(models["test_slab_core"], ConstantIndexModel)
    assert isinstance(models["fused_silica"], SellmeierModel)
    assert models["fused_silica"].temperature_c == 20.0
    assert extracted.metadata.format == "wgsq-coefficients"
    assert extracted.metadata.version == 1


def test_single_model_document():
    extracted = MaterialCoefficientFile.extract(get_test_path("coefficients_single.json"))

    assert [model.name for model in extracted.records] == ["test_constant"]
    assert extracted.metadata.format is None


@pytest.mark.parametrize(
    "filename,line,message",
    [
        pytest.param("coefficients_bad_form.json", 9, "cauchy", id="unknown_form"),
        pytest.param("coefficients_bad_count.json", 3, "pairs", id="odd_coefficients"),
        pytest.param("coefficients_syntax.json", 4, "", id="json_syntax"),
        pytest.param("coefficients_duplicate.json", 4, "twin", id="duplicate_names"),
    ],
)
def test_coefficient_file_errors(filename, line, message):
    with pytest.raises(ParseError) as excinfo:
        MaterialCoefficientFile.extract(get_test_path(filename))

    assert excinfo.value.line == line
    assert message in str(excinfo.value)


def test_frequency_table():
    extracted = FrequencyTableCsv.extract(get_test_path("circuit_db.csv"), kind="circuit")

    assert [row.frequency for row in extracted.records] == [1e6, 600e6]
    assert extracted.records[0].value == pytest.approx(0.01)
    assert extracted.metadata.column == "circuit_db"


def test_frequency_table_wrong_kind():
    with pytest.raises(ParseError) as excinfo:
        FrequencyTableCsv.extract(get_test_path("detector_gain.csv"), kind="circuit")

    assert excinfo.value.line == 1
