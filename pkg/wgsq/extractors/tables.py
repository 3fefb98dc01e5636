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

"""Frequency tables for detector response and circuit noise.

Two-column CSV with header ``freq_hz,<value>``. Accepted value columns:

    gain             linear power response in (0, 1]
    gain_db          the same in dB (≤ 0)
    circuit_ratio    circuit noise over shot noise, linear
    circuit_db       the same in dB, e.g. -20 for a 20 dB clearance
"""

import csv
import io
from dataclasses import dataclass

from wgsq.exceptions import ParseError
from wgsq.extractors import Extractor
from wgsq.extractors.models import ExtractedMetadata, ExtractedRecords
from wgsq.extractors.source_metadata import (
    SourceFileMetadata,
    get_source_file_metadata,
    read_source,
)
from wgsq.units import from_db

VALUE_COLUMNS = {
    "gain": ("gain", False),
    "gain_db": ("gain", True),
    "circuit_ratio": ("circuit", False),
    "circuit_db": ("circuit", True),
}


@dataclass(frozen=True)
class FrequencyRow:
    frequency: float
    value: float


class FrequencyTableMetadata(SourceFileMetadata, ExtractedMetadata):
    column: str


class FrequencyTableCsv(Extractor):
    @classmethod
    def extract(cls, path, kind=None):
        """
        Args:
            path: CSV file
            kind: ``gain`` or ``circuit`` to reject the other table kind

        """
        text = read_source(path)
        reader = csv.reader(io.StringIO(text))

        header = None
        rows = []
        for row in reader:
            if not row or row[0].lstrip().startswith("#"):
                continue
            row = [cell.strip() for cell in row]
            if header is None:
                header = row
                if len(header) != 2 or header[0] != "freq_hz" or header[1] not in VALUE_COLUMNS:
                    raise ParseError(
                        "expected header freq_hz,<{}>".format("|".join(VALUE_COLUMNS)),
                        line=reader.line_num,
                        source=path,
                    )
                table_kind, in_db = VALUE_COLUMNS[header[1]]
                if kind is not None and table_kind != kind:
                    raise ParseError(
                        "expected a {} table, got column {}".format(kind, header[1]),
                        line=reader.line_num,
                        source=path,
                    )
                continue

            if len(row) != 2:
                raise ParseError(
                    "expected 2 columns, got {}".format(len(row)),
                    line=reader.line_num,
                    source=path,
                )
            try:
                frequency, value = float(row[0]), float(row[1])
            except ValueError as err:
                raise ParseError(str(err), line=reader.line_num, source=path)

            rows.append(FrequencyRow(frequency, from_db(value) if in_db else value))

        if header is None or not rows:
            raise ParseError("table has no data rows", source=path)

        metadata = FrequencyTableMetadata(
            column=header[1], **get_source_file_metadata(path, text).model_dump()
        )
        return ExtractedRecords(records=rows, metadata=metadata)
