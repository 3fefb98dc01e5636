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

"""Measured pump-power sweeps.

CSV with a header row ``pump_mw,squeezing_db,antisqueezing_db`` and an
optional fourth column ``sigma_db`` (1σ uncertainty in dB). Lines starting
with ``#`` are comments. Pump powers are coupled powers in mW and are converted to W.
"""

import csv
import io

from wgsq.exceptions import ParseError, RangeError
from wgsq.extractors import Extractor
from wgsq.extractors.models import ExtractedMetadata, ExtractedRecords
from wgsq.extractors.source_metadata import (
    SourceFileMetadata,
    get_source_file_metadata,
    read_source,
)
from wgsq.squeezer import PumpSweepPoint
from wgsq.units import mw_to_w

REQUIRED_COLUMNS = ["pump_mw", "squeezing_db", "antisqueezing_db"]
OPTIONAL_COLUMNS = ["sigma_db"]


class PumpSweepMetadata(SourceFileMetadata, ExtractedMetadata):
    columns: list


def _data_rows(text):
    reader = csv.reader(io.StringIO(text))
    for row in reader:
        if not row or not "".join(row).strip():
            continue
        if row[0].lstrip().startswith("#"):
            continue
        yield reader.line_num, [cell.strip() for cell in row]


class PumpSweepCsv(Extractor):
    @classmethod
    def extract(cls, path):
        text = read_source(path)
        rows = _data_rows(text)

        try:
            header_line, header = next(rows)
        except StopIteration:
            raise ParseError("empty sweep file", line=1, source=path)

        if (
            header[: len(REQUIRED_COLUMNS)] != REQUIRED_COLUMNS
            or header[len(REQUIRED_COLUMNS):] not in ([], OPTIONAL_COLUMNS)
        ):
            raise ParseError(
                "expected header {}, got {}".format(
                    ",".join(REQUIRED_COLUMNS), ",".join(header)
                ),
                line=header_line,
                source=path,
            )

        points = []
        for line, row in rows:
            if len(row) != len(header):
                raise ParseError(
                    "expected {} columns, got {}".format(len(header), len(row)),
                    line=line,
                    source=path,
                )
            try:
                values = [float(cell) for cell in row]
            except ValueError as err:
                raise ParseError(str(err), line=line, source=path)

            try:
                points.append(
                    PumpSweepPoint(
                        pump_power=mw_to_w(values[0]),
                        squeezing_db=values[1],
                        antisqueezing_db=values[2],
                        uncertainty_db=values[3] if len(values) > 3 else None,
                    )
                )
            except RangeError as err:
                raise ParseError(str(err), line=line, source=path)

        if not points:
            raise ParseError("sweep file has no data rows", source=path)

        metadata = PumpSweepMetadata(
            columns=header, **get_source_file_metadata(path, text).model_dump()
        )
        return ExtractedRecords(records=points, metadata=metadata)
