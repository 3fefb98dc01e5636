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

"""Material coefficient files.

A coefficient file is JSON holding either a single model or a list of them
under ``materials``::

    {
      "materials": [
        {
          "name": "lithium_niobate_e",
          "form": "sellmeier",
          "axis": "extraordinary",
          "coefficients": [2.9804, 0.02047, 0.5981, 0.0666, 8.9543, 416.08],
          "valid_range": [0.4, 5.0],
          "temperature_c": 21.0,
          "reference": "..."
        }
      ]
    }

``form`` selects the coefficient layout (``sellmeier``, ``pole`` or
``constant``, see wgsq.materials.sellmeier). Errors name the file and the
line of the offending entry.
"""

import json
import re
from typing import List, Optional, Tuple

import jmespath
from pydantic import BaseModel, ConfigDict, Field, ValidationError

from wgsq.exceptions import DispersionError, ParseError
from wgsq.extractors import Extractor
from wgsq.extractors.models import ExtractedMetadata, ExtractedRecords
from wgsq.extractors.source_metadata import (
    SourceFileMetadata,
    get_source_file_metadata,
    read_source,
)
from wgsq.materials.base import Axis, MaterialModel
import wgsq.materials.sellmeier  # noqa: F401  registers the forms

_NAME_KEY = re.compile(r'"name"\s*:')


class CoefficientEntry(BaseModel):
    model_config = ConfigDict(extra="forbid")

    name: str
    form: str
    axis: Axis = Axis.extraordinary
    coefficients: List[float] = Field(min_length=1)
    valid_range: Tuple[float, float]
    temperature_c: Optional[float] = None
    reference: str = ""
    index_offset: float = 0.0


class CoefficientFileMetadata(SourceFileMetadata, ExtractedMetadata):
    format: Optional[str] = None
    version: Optional[int] = None


def _entry_line(text, index, key=None):
    """Best-effort line number of entry ``index`` (or of ``key`` within it)"""
    starts = [m.start() for m in _NAME_KEY.finditer(text)]
    if index >= len(starts):
        return None

    pos = text.rfind("{", 0, starts[index])
    pos = max(pos, 0)
    if key is not None:
        end = starts[index + 1] if index + 1 < len(starts) else len(text)
        key_pos = text.find('"{}"'.format(key), pos, end)
        if key_pos >= 0:
            pos = key_pos
    return text.count("\n", 0, pos) + 1


class MaterialCoefficientFile(Extractor):
    @classmethod
    def extract(cls, path):
        text = read_source(path)

        try:
            doc = json.loads(text)
        except json.JSONDecodeError as err:
            raise ParseError(err.msg, line=err.lineno, source=path)

        if not isinstance(doc, dict):
            raise ParseError("expected a JSON object", line=1, source=path)

        entries = jmespath.search("materials", doc)
        if entries is None and "name" in doc:
            entries = [doc]
        if not isinstance(entries, list) or not entries:
            raise ParseError("no material entries found", line=1, source=path)

        models = []
        for index, raw in enumerate(entries):
            try:
                entry = CoefficientEntry.model_validate(raw)
            except ValidationError as err:
                first = err.errors()[0]
                key = first["loc"][0] if first["loc"] else None
                raise ParseError(
                    "entry {}: {}: {}".format(index, key, first["msg"]),
                    line=_entry_line(text, index, key),
                    source=path,
                )

            try:
                model = MaterialModel.from_coefficient_data(**entry.model_dump())
            except DispersionError as err:
                raise ParseError(
                    str(err), line=_entry_line(text, index), source=path
                )
            models.append(model)

        seen = set()
        for index, model in enumerate(models):
            if model.name in seen:
                raise ParseError(
                    "duplicate material name: {}".format(model.name),
                    line=_entry_line(text, index),
                    source=path,
                )
            seen.add(model.name)

        metadata = get_source_file_metadata(path, text).model_dump()
        metadata.update(
            jmespath.search("{format: format, version: version}", doc) or {}
        )
        return ExtractedRecords(
            records=models, metadata=CoefficientFileMetadata(**metadata)
        )
